//! Dense univariate polynomials over a prime field F_p, stored as ascending
//! coefficient vectors of residues in `0..p`. Used for field moduli and
//! irreducibility tests; the zero polynomial is the empty vector.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push((x + p - y) % p);
    }
    trim(&mut out);
    out
}

/// Number of products below p² that a u64 accumulator absorbs before it
/// needs reducing.
fn lazy_budget(p: u32) -> usize {
    let sq = (p as u64 - 1).pow(2).max(1);
    (u64::MAX / sq - 1).min(usize::MAX as u64) as usize
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let budget = lazy_budget(p);
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    let mut pending = 0;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if pending == budget {
            acc.iter_mut().for_each(|c| *c %= p64);
            pending = 0;
        }
        pending += 1;
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += x as u64 * y as u64;
        }
    }
    let mut out: Vec<u32> = acc.into_iter().map(|c| (c % p64) as u32).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut a = a.to_vec();
    trim(&mut a);
    let mut b = b.to_vec();
    trim(&mut b);
    if a.len() < b.len() {
        return (Vec::new(), a);
    }
    let p64 = p as u64;
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p) as u64;
    // the lower terms of b, skipping zeros; a sparse divisor costs O(nnz) per step
    let lower: Vec<(usize, u64)> = b[..db]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c as u64))
        .collect();
    let budget = lazy_budget(p);
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let mut q = vec![0u32; r.len() - db];
    let mut pending = 0;
    for i in (db..r.len()).rev() {
        if pending == budget {
            r[..i + 1].iter_mut().for_each(|c| *c %= p64);
            pending = 0;
        }
        let c = r[i] % p64 * lead_inv % p64;
        r[i] = 0;
        if c == 0 {
            continue;
        }
        pending += 1;
        q[i - db] = c as u32;
        let neg = p64 - c;
        for &(j, bj) in &lower {
            r[i - db + j] += neg * bj;
        }
    }
    let mut r: Vec<u32> = r[..db].iter().map(|&c| (c % p64) as u32).collect();
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    divrem(a, b, p).1
}

pub(crate) fn make_monic(mut a: Vec<u32>, p: u32) -> Vec<u32> {
    trim(&mut a);
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p) as u64;
        for c in a.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    a
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(x, p)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
pub(crate) fn ext_gcd(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<u32> = Vec::new();
    let mut s1: Vec<u32> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let lead = *r0.last().expect("gcd of zero polynomials");
    let inv = inv_mod(lead, p) as u64;
    let scale = |v: Vec<u32>| -> Vec<u32> {
        v.into_iter()
            .map(|c| (c as u64 * inv % p as u64) as u32)
            .collect()
    };
    (scale(r0), scale(s0))
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = mulmod(&b, &b, m, p);
        }
    }
    acc
}

/// Whether h ↦ h^p mod f is cheaper by spreading coefficients (h(x)^p =
/// h(x^p) over F_p) than by squaring.
pub(crate) fn spread_is_cheap(f: &[u32], p: u32) -> bool {
    let s = f.len() - 1;
    let nnz = f.iter().filter(|&&c| c != 0).count();
    (p as usize).saturating_mul(nnz) <= 4 * s
}

/// h^p mod f for h already reduced mod f.
pub(crate) fn frobenius_mod(h: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if !spread_is_cheap(f, p) {
        return powmod(h, p as u64, f, p);
    }
    if h.is_empty() {
        return Vec::new();
    }
    let mut spread = vec![0u32; (h.len() - 1) * p as usize + 1];
    for (i, &c) in h.iter().enumerate() {
        spread[i * p as usize] = c;
    }
    rem(&spread, f, p)
}

/// f mod (x^m − x): x^a ≡ x^(1 + (a−1) mod (m−1)) for a ≥ 1.
fn rem_frobenius_fixed(f: &[u32], m: usize, p: u32) -> Vec<u32> {
    let mut out = vec![0u32; m];
    for (a, &c) in f.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let k = if a == 0 { 0 } else { 1 + (a - 1) % (m - 1) };
        out[k] = (out[k] + c) % p;
    }
    trim(&mut out);
    out
}

/// Irreducibility of a monic `f` of degree `s ≥ 1`. Factors of degree i
/// with p^i ≤ s are screened first by Ben-Or's criterion gcd(x^(p^i) − x, f)
/// = 1, where f mod (x^(p^i) − x) is cheap; survivors go through Rabin's
/// test: f | x^(p^s) − x and gcd(x^(p^(s/ℓ)) − x, f) = 1 for primes ℓ | s.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let s = f.len() - 1;
    if s == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let mut i = 1;
    let mut pi = p as usize;
    while i <= s / 2 && pi <= s {
        let mut fixed = vec![0u32; pi + 1];
        fixed[pi] = 1;
        fixed[1] = p - 1;
        if gcd(&fixed, &rem_frobenius_fixed(f, pi, p), p) != vec![1] {
            return false;
        }
        i += 1;
        pi = pi.saturating_mul(p as usize);
    }
    if i > s / 2 {
        return true;
    }

    let checkpoints: Vec<usize> = prime_factors(s as u64)
        .into_iter()
        .map(|l| s / l as usize)
        .collect();
    let x = rem(&[0, 1], f, p);
    let mut h = x.clone();
    let mut saved = Vec::new();
    for j in 1..=s {
        h = frobenius_mod(&h, f, p);
        if checkpoints.contains(&j) {
            saved.push(h.clone());
        }
    }
    h == x
        && saved
            .iter()
            .all(|hj| gcd(&sub(hj, &x, p), f, p) == vec![1])
}

/// Irreducibility by trial division against every monic polynomial of
/// degree `1..=deg/2`. Exponential; intended as a test oracle.
#[cfg(test)]
pub(crate) fn is_irreducible_by_trial_division(f: &[u32], p: u32) -> bool {
    let s = f.len() - 1;
    for d in 1..=s / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                g.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            g.push(1);
            if rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ben_or_agrees_with_trial_division() {
        for p in [2u32, 3, 5] {
            for s in 1..=6usize {
                let total = (p as u64).pow(s as u32);
                for idx in 0..total.min(800) {
                    let mut f = Vec::new();
                    let mut rest = idx;
                    for _ in 0..s {
                        f.push((rest % p as u64) as u32);
                        rest /= p as u64;
                    }
                    f.push(1);
                    assert_eq!(
                        is_irreducible(&f, p),
                        is_irreducible_by_trial_division(&f, p),
                        "p={p} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn ext_gcd_inverts() {
        let p = 3;
        let m = vec![1, 2, 0, 1]; // irreducible cubic x^3 + 2x + 1
        assert!(is_irreducible(&m, p));
        let a = vec![2, 1];
        let (g, s) = ext_gcd(&a, &m, p);
        assert_eq!(g, vec![1]);
        assert_eq!(mulmod(&a, &s, &m, p), vec![1]);
    }
}

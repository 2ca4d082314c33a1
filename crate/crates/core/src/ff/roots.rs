//! Root finding for polynomials over F_p that split in an extension, by
//! equal-degree splitting with deterministically chosen shifts.

use super::{FieldElement, FieldRef};
use crate::error::{Error, Result};

// dense polynomial over the target field, ascending, no trailing zeros
type LPoly = Vec<FieldElement>;

fn trim(a: &mut LPoly) {
    while a.last().is_some_and(FieldElement::is_zero) {
        a.pop();
    }
}

fn degree(a: &LPoly) -> usize {
    a.len().saturating_sub(1)
}

fn sub(a: &LPoly, b: &LPoly, field: &FieldRef) -> LPoly {
    let mut out: LPoly = (0..a.len().max(b.len()))
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x - y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => -y,
            (None, None) => field.zero(),
        })
        .collect();
    trim(&mut out);
    out
}

fn mul(a: &LPoly, b: &LPoly, field: &FieldRef) -> LPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn divrem(a: &LPoly, m: &LPoly) -> (LPoly, LPoly) {
    let field = m[0].field().clone();
    let mut rem = a.clone();
    if rem.len() < m.len() {
        return (Vec::new(), rem);
    }
    let dm = degree(m);
    let lead_inv = m[dm].inv().expect("nonzero leading coefficient");
    let mut quot = vec![field.zero(); rem.len() - dm];
    for k in (0..rem.len() - dm).rev() {
        if rem[k + dm].is_zero() {
            continue;
        }
        let c = &rem[k + dm] * &lead_inv;
        for (j, mj) in m.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &(&c * mj);
        }
        quot[k] = c;
    }
    rem.truncate(dm);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn mulmod(a: &LPoly, b: &LPoly, m: &LPoly, field: &FieldRef) -> LPoly {
    divrem(&mul(a, b, field), m).1
}

fn powmod(base: &LPoly, mut exp: u128, m: &LPoly, field: &FieldRef) -> LPoly {
    let mut acc = divrem(&vec![field.one()], m).1;
    let mut b = divrem(base, m).1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &b, m, field);
        }
        b = mulmod(&b, &b, m, field);
        exp >>= 1;
    }
    acc
}

fn monic_gcd(a: &LPoly, b: &LPoly) -> LPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = divrem(&x, &y).1;
        x = y;
        y = r;
    }
    let inv = x.last().expect("gcd of nonzero input").inv().unwrap();
    x.iter().map(|c| c * &inv).collect()
}

/// One root in `target` of the monic polynomial `f` over F_p, given that all
/// roots of `f` are distinct and lie in the subfield spanned over F_p by
/// `subfield_basis` (whose size is p^s with s = subfield_basis.len()).
pub(super) fn find_root(
    f: &[u32],
    target: &FieldRef,
    subfield_basis: &[FieldElement],
) -> Result<FieldElement> {
    let p = target.characteristic();
    let s = subfield_basis.len() as u32;
    let subfield_size = (p as u128)
        .checked_pow(s)
        .ok_or_else(|| Error::FieldTooLarge(format!("subfield of size {p}^{s}")))?;
    let lift = |c: u32| {
        let mut e = target.zero();
        e.coeffs[0] = c;
        e
    };
    let mut g: LPoly = f.iter().map(|&c| lift(c)).collect();
    trim(&mut g);
    let subfield_element = |mut idx: u128| {
        let mut acc = target.zero();
        for b in subfield_basis {
            let c = (idx % p as u128) as u32;
            idx /= p as u128;
            if c != 0 {
                acc = &acc + &(b * &lift(c));
            }
        }
        acc
    };
    let mut idx: u128 = 0;
    while degree(&g) > 1 {
        if idx >= subfield_size {
            return Err(Error::Internal("root splitting did not terminate".into()));
        }
        let c = subfield_element(idx);
        idx += 1;
        let h = if p == 2 {
            // x ↦ Tr(c·x) from the subfield down to F_2
            let cx = vec![target.zero(), c];
            let mut term = divrem(&cx, &g).1;
            let mut acc = term.clone();
            for _ in 1..s {
                term = mulmod(&term, &term, &g, target);
                acc = sub(&acc, &term.iter().map(|t| -t).collect(), target);
            }
            acc
        } else {
            let shifted = vec![c, target.one()];
            let pw = powmod(&shifted, (subfield_size - 1) / 2, &g, target);
            sub(&pw, &vec![target.one()], target)
        };
        if h.is_empty() {
            continue;
        }
        let d = monic_gcd(&g, &h);
        let dd = degree(&d);
        if dd == 0 || dd == degree(&g) {
            continue;
        }
        g = if 2 * dd <= degree(&g) { d } else { divrem(&g, &d).0 };
    }
    let inv = g[1].inv().expect("linear factor");
    Ok(-&(&g[0] * &inv))
}

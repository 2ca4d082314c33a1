//! Finite fields F_{p^s} as quotients F_p[x]/(f) by a canonical irreducible
//! modulus, with canonical embeddings between them and the q-power map.

pub(crate) mod fp_poly;
mod roots;
mod small;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

pub use small::{prime_power_parts, Fq, MAX_BASE_FIELD};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polyring::Poly;

/// Subfields are found by exhaustion; their size is capped at this many bits.
pub const MAX_EXHAUSTIVE_BITS: u32 = 24;

pub struct FieldDescriptor {
    p: u32,
    degree: usize,
    modulus: Vec<u32>,
    // whether x ↦ x^p is computed by spreading coefficients
    sparse_frobenius: bool,
    // Column j holds the coefficients of (θ^j)^p.
    frobenius: OnceLock<Vec<Vec<u32>>>,
}

pub type FieldRef = Arc<FieldDescriptor>;

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={},s={},mod={}", self.p, self.degree, join(&self.modulus))
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FieldDescriptor {}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

static FIELDS: OnceLock<Mutex<HashMap<(u32, usize), FieldRef>>> = OnceLock::new();

/// The canonical field F_{p^s}.
///
/// The modulus is the first monic irreducible of degree `s` when candidates
/// are ordered by their lower coefficients read as a base-p integer (constant
/// term least significant). Degree one uses the modulus `x`. Descriptors are
/// cached, so equal `(p, s)` always yield the same `Arc`.
pub fn make_extension(p: u32, s: usize) -> Result<FieldRef> {
    if !fp_poly::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if s == 0 {
        return Err(Error::ZeroDegree);
    }
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, s)) {
        return Ok(f.clone());
    }
    let modulus = canonical_modulus(p, s);
    let field = Arc::new(FieldDescriptor {
        p,
        degree: s,
        sparse_frobenius: fp_poly::spread_is_cheap(&modulus, p),
        modulus,
        frobenius: OnceLock::new(),
    });
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry((p, s)).or_insert(field).clone())
}

fn canonical_modulus(p: u32, s: usize) -> Vec<u32> {
    if s == 1 {
        return vec![0, 1];
    }
    let mut lower = vec![0u32; s];
    loop {
        // increment the base-p counter formed by the lower coefficients
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < s, "no irreducible polynomial of degree {s} over F_{p}");
        }
        if lower[0] == 0 {
            continue;
        }
        let mut f = lower.clone();
        f.push(1);
        if fp_poly::is_irreducible(&f, p) {
            return f;
        }
    }
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Degree `s` over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Ascending, monic, length `s + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// log2 of the number of elements.
    pub fn size_bits(&self) -> f64 {
        self.degree as f64 * (self.p as f64).log2()
    }

    /// Number of elements, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.degree as u32)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        let mut x = self.zero();
        x.coeffs[0] = 1;
        x
    }

    /// The class of `x`, i.e. the root of the modulus defining the field.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        if self.degree == 1 {
            // x mod x
            return self.zero();
        }
        let mut x = self.zero();
        x.coeffs[1] = 1;
        x
    }

    /// Builds an element from prime-field coefficients (reduced mod p and
    /// modulo the field modulus; missing entries are zero).
    pub fn element(self: &Arc<Self>, coeffs: &[u32]) -> FieldElement {
        let mut v: Vec<u32> = coeffs.iter().map(|c| c % self.p).collect();
        fp_poly::trim(&mut v);
        let mut v = if v.len() > self.degree {
            fp_poly::rem(&v, &self.modulus, self.p)
        } else {
            v
        };
        v.resize(self.degree, 0);
        FieldElement {
            field: self.clone(),
            coeffs: v,
        }
    }

    /// The element whose coefficient sequence, read as a base-p integer, is `idx`.
    pub fn element_from_index(self: &Arc<Self>, mut idx: u64) -> FieldElement {
        let mut coeffs = vec![0u32; self.degree];
        for c in coeffs.iter_mut() {
            *c = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// All elements in canonical order. Panics if the field has more than
    /// 2^MAX_EXHAUSTIVE_BITS elements.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        let size = self
            .size()
            .filter(|&n| n <= 1u64 << MAX_EXHAUSTIVE_BITS)
            .expect("field too large to enumerate");
        (0..size).map(move |i| self.element_from_index(i))
    }

    fn frobenius_columns(self: &Arc<Self>) -> &Vec<Vec<u32>> {
        self.frobenius.get_or_init(|| {
            let theta_p = self.generator().pow(self.p as u64);
            let mut cols = Vec::with_capacity(self.degree);
            let mut acc = self.one();
            for _ in 0..self.degree {
                cols.push(acc.coeffs.clone());
                acc = &acc * &theta_p;
            }
            cols
        })
    }

    /// Matrix (over F_p, in the power basis) of x ↦ x^p.
    #[cfg(test)]
    pub(crate) fn frobenius_matrix(self: &Arc<Self>) -> Matrix {
        Matrix::from_columns(self.degree, self.frobenius_columns())
    }

    fn mul_coeffs(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let s = self.degree;
        let p = self.p as u64;
        let mut acc = vec![0u64; 2 * s - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
            if i % 64 == 63 {
                for c in acc.iter_mut() {
                    *c %= p;
                }
            }
        }
        for c in acc.iter_mut() {
            *c %= p;
        }
        for i in (s..acc.len()).rev() {
            let c = acc[i];
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for (j, &m) in self.modulus[..s].iter().enumerate() {
                if m != 0 {
                    let k = i - s + j;
                    acc[k] = (acc[k] + neg * m as u64) % p;
                }
            }
            acc[i] = 0;
        }
        acc.truncate(s);
        acc.into_iter().map(|c| c as u32).collect()
    }
}

#[derive(Clone)]
pub struct FieldElement {
    field: FieldRef,
    coeffs: Vec<u32>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.p == other.field.p
            && self.field.degree == other.field.degree
            && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Comma-separated prime-field coefficients, ascending: "1,1" is z+1 in F_4.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.coeffs))
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Prime-field coefficients in the power basis, length `s`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Coefficient sequence read as a base-p integer. Saturates for fields
    /// with more than 2^64 elements; use [`FieldElement::canonical_cmp`] there.
    pub fn index(&self) -> u64 {
        self.coeffs.iter().rev().fold(0u64, |acc, &c| {
            acc.saturating_mul(self.field.p as u64)
                .saturating_add(c as u64)
        })
    }

    /// Order by the base-p integer formed from the coefficients.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }

    /// Parses the textual form produced by `Display`.
    pub fn parse(field: &FieldRef, text: &str) -> Result<FieldElement> {
        let coeffs = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if coeffs.len() > field.degree() || coeffs.iter().any(|&c| c >= field.p) {
            return Err(Error::Parse(format!("{text:?} is not an element of {field}")));
        }
        Ok(field.element(&coeffs))
    }

    fn check_same_field(&self, other: &Self) {
        assert!(
            self.field.p == other.field.p && self.field.degree == other.field.degree,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let mut a = self.coeffs.clone();
        fp_poly::trim(&mut a);
        let (_, s) = fp_poly::ext_gcd(&a, &self.field.modulus, self.field.p);
        Some(self.field.element(&s))
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// x^(p^k). Over F_p, h(θ)^p = h(θ^p), so a sparse modulus makes each
    /// step a spread and a cheap reduction; otherwise the cached Frobenius
    /// matrix is applied.
    pub fn frobenius(&self, k: usize) -> FieldElement {
        let s = self.field.degree;
        let k = k % s;
        if k == 0 || s == 1 {
            return self.clone();
        }
        let p = self.field.p;
        let mut cur = self.coeffs.clone();
        if self.field.sparse_frobenius {
            for _ in 0..k {
                fp_poly::trim(&mut cur);
                cur = fp_poly::frobenius_mod(&cur, &self.field.modulus, p);
                cur.resize(s, 0);
            }
        } else {
            let cols = self.field.frobenius_columns();
            for _ in 0..k {
                let mut acc = vec![0u64; s];
                for (j, &x) in cur.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (a, &c) in acc.iter_mut().zip(cols[j].iter()) {
                        *a += x as u64 * c as u64;
                    }
                }
                cur = acc.into_iter().map(|c| (c % p as u64) as u32).collect();
            }
        }
        FieldElement {
            field: self.field.clone(),
            coeffs: cur,
        }
    }

    /// a^q for q a power of the characteristic.
    pub fn pow_q(&self, q: u64) -> Result<FieldElement> {
        let k = log_p(q, self.field.p)?;
        Ok(self.frobenius(k as usize))
    }
}

/// `k` with `q = p^k`, `k ≥ 1`.
pub(crate) fn log_p(q: u64, p: u32) -> Result<u32> {
    let mut k = 0;
    let mut rest = q;
    while rest > 1 && rest.is_multiple_of(p as u64) {
        rest /= p as u64;
        k += 1;
    }
    if rest != 1 || k == 0 {
        return Err(Error::NotPowerOfCharacteristic { q, p: p as u64 });
    }
    Ok(k)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.check_same_field(rhs);
                let f: fn(&FieldElement, &FieldElement) -> Vec<u32> = $body;
                FieldElement {
                    field: self.field.clone(),
                    coeffs: f(self, rhs),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    let p = a.field.p;
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(&x, &y)| (x + y) % p)
        .collect()
});
forward_binop!(Sub, sub, |a, b| {
    let p = a.field.p;
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(&x, &y)| (x + p - y) % p)
        .collect()
});
forward_binop!(Mul, mul, |a, b| a.field.mul_coeffs(&a.coeffs, &b.coeffs));

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p;
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Evaluates a polynomial with prime-field coefficients at `x`.
fn eval_prime_poly(coeffs: &[u32], x: &FieldElement) -> FieldElement {
    let field = x.field();
    let mut acc = field.zero();
    for &c in coeffs.iter().rev() {
        acc = &acc * x;
        acc.coeffs[0] = (acc.coeffs[0] + c) % field.p;
    }
    acc
}

static ROOTS: OnceLock<Mutex<HashMap<(u32, usize, usize), FieldElement>>> = OnceLock::new();

/// The canonical image of the generator of `source` in `target`: the least
/// root (in canonical order) of the source modulus.
fn canonical_root(source: &FieldRef, target: &FieldRef) -> Result<FieldElement> {
    let key = (source.p, source.degree, target.degree);
    let cache = ROOTS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let root = find_canonical_root(source, target)?;
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry(key).or_insert(root).clone())
}

fn find_canonical_root(source: &FieldRef, target: &FieldRef) -> Result<FieldElement> {
    let s = source.degree;
    if s == 1 {
        return Ok(target.zero());
    }
    let prime = Fq::prime(target.p)?;
    // The copy of F_{p^s} inside the target is the fixed space of x ↦ x^(p^s).
    let big = target.degree;
    let mut fixed = Matrix::zeros(big, big);
    for j in 0..big {
        let mut unit = target.zero();
        unit.coeffs[j] = 1;
        let image = &unit.frobenius(s) - &unit;
        for i in 0..big {
            fixed.set(i, j, image.coeffs[i]);
        }
    }
    let basis: Vec<FieldElement> = fixed
        .kernel(&prime)
        .into_iter()
        .map(|v| target.element(&v))
        .collect();
    if basis.len() != s {
        return Err(Error::Internal(format!(
            "fixed space of Frobenius^{s} has dimension {} in {target}",
            basis.len()
        )));
    }
    let any_root = roots::find_root(&source.modulus, target, &basis)?;
    // all roots are the Frobenius conjugates of this one
    Ok((0..s)
        .map(|k| any_root.frobenius(k))
        .min_by(|a, b| a.canonical_cmp(b))
        .unwrap())
}

/// Canonical embedding of `a ∈ F_{p^s}` into `target = F_{p^{st}}`.
///
/// The generator of the source maps to the least root of the source modulus
/// in the target. A field embeds into itself by the identity.
pub fn embed(a: &FieldElement, target: &FieldRef) -> Result<FieldElement> {
    let source = a.field();
    if source.p != target.p {
        return Err(Error::FieldMismatch(format!(
            "characteristic {} vs {}",
            source.p, target.p
        )));
    }
    if !target.degree.is_multiple_of(source.degree) {
        return Err(Error::DegreeMismatch {
            sub: source.degree,
            target: target.degree,
        });
    }
    if source.degree == target.degree {
        return Ok(FieldElement {
            field: target.clone(),
            coeffs: a.coeffs.clone(),
        });
    }
    if source.degree == 1 {
        let mut out = target.zero();
        out.coeffs[0] = a.coeffs[0];
        return Ok(out);
    }
    let root = canonical_root(source, target)?;
    Ok(eval_prime_poly(&a.coeffs, &root))
}

/// Writes `x`, an element of the subfield F_q of its field, as an index of
/// the table field `fq`. Returns `None` if `x` is not in that subfield.
pub fn subfield_index(x: &FieldElement, fq: &Fq) -> Result<Option<u32>> {
    let field = x.field();
    let e = fq.degree() as usize;
    if !field.degree.is_multiple_of(e) || field.p != fq.characteristic() {
        return Err(Error::DegreeMismatch {
            sub: e,
            target: field.degree,
        });
    }
    if e == 1 {
        let rest_zero = x.coeffs[1..].iter().all(|&c| c == 0);
        return Ok(rest_zero.then_some(x.coeffs[0]));
    }
    let zeta = embed(&fq.descriptor().generator(), field)?;
    let mut cols = Vec::with_capacity(e);
    let mut acc = field.one();
    for _ in 0..e {
        cols.push(acc.coeffs.clone());
        acc = &acc * &zeta;
    }
    let prime = Fq::prime(field.p)?;
    let m = Matrix::from_columns(field.degree, &cols);
    Ok(m.solve(&x.coeffs, &prime).map(|digits| {
        digits
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * field.p + d)
    }))
}

/// Minimal polynomial of `a` over the subfield with `q` elements.
pub fn minpoly_over_subfield(a: &FieldElement, q: u64) -> Result<Poly> {
    let field = a.field();
    let k = log_p(q, field.p)? as usize;
    if !field.degree.is_multiple_of(k) {
        return Err(Error::DegreeMismatch {
            sub: k,
            target: field.degree,
        });
    }
    let fq = Fq::get(q)?;
    // product of (x - c) over the distinct conjugates c = a^(q^i)
    let mut conjugates = vec![a.clone()];
    loop {
        let next = conjugates.last().unwrap().frobenius(k);
        if &next == a {
            break;
        }
        conjugates.push(next);
    }
    let mut prod: Vec<FieldElement> = vec![field.one()];
    for c in &conjugates {
        let mut next = vec![field.zero(); prod.len() + 1];
        for (i, coef) in prod.iter().enumerate() {
            next[i + 1] = &next[i + 1] + coef;
            next[i] = &next[i] - &(coef * c);
        }
        prod = next;
    }
    let coeffs = prod
        .iter()
        .map(|c| {
            subfield_index(c, &fq)?.ok_or_else(|| {
                Error::Internal("minimal polynomial coefficient outside F_q".into())
            })
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(Poly::from_coeffs(&fq, coeffs))
}

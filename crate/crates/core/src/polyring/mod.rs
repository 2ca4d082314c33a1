//! A = F_q[T]: polynomial arithmetic, the place at infinity, enumeration of
//! monic irreducibles, CRT reconstruction and Smith normal form.

mod irreducibles;
mod snf;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

pub use irreducibles::{irreducibles, Irreducibles};
pub use snf::{invariant_factors, InvariantFactors};
pub(crate) use snf::smith_form;

use crate::error::{Error, Result};
use crate::ff::Fq;

/// A polynomial in T over F_q; coefficients ascending, no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Arc<Fq>,
    coeffs: Vec<u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.size() == other.field.size() && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.size().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Ascending comma-separated coefficients, "1,1,0,1" = 1+T+T³; zero is "0".
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Poly {
    pub fn from_coeffs(field: &Arc<Fq>, mut coeffs: Vec<u32>) -> Poly {
        assert!(
            coeffs.iter().all(|&c| c < field.size()),
            "coefficient outside F_{}",
            field.size()
        );
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<Fq>) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Arc<Fq>) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn constant(field: &Arc<Fq>, c: u32) -> Poly {
        Poly::from_coeffs(field, vec![c])
    }

    /// The variable T.
    pub fn t(field: &Arc<Fq>) -> Poly {
        Poly::monomial(field, 1, 1)
    }

    pub fn monomial(field: &Arc<Fq>, c: u32, k: usize) -> Poly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(field, coeffs)
    }

    pub fn parse(field: &Arc<Fq>, text: &str) -> Result<Poly> {
        let coeffs = text
            .split(',')
            .map(|t| {
                let c: u32 = t
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))?;
                if c >= field.size() {
                    return Err(Error::Parse(format!("{c} is not in F_{}", field.size())));
                }
                Ok(c)
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(Poly::from_coeffs(field, coeffs))
    }

    pub fn field(&self) -> &Arc<Fq> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Nonzero constants (the units of A).
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lead) => self.scale(self.field.inv(lead)),
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    fn check_field(&self, other: &Poly) {
        assert_eq!(
            self.field.size(),
            other.field.size(),
            "polynomials over different fields"
        );
    }

    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(d);
        let Some(dd) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(d.coeffs[dd]);
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], lead_inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            let neg = f.neg(c);
            for (j, &b) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = f.add(r[k], f.mul(neg, b));
            }
        }
        Ok((Poly::from_coeffs(f, q), Poly::from_coeffs(f, r)))
    }

    /// Remainder modulo a nonzero polynomial; panics on zero.
    pub fn rem(&self, d: &Poly) -> Poly {
        self.divmod(d).expect("remainder by zero polynomial").1
    }

    /// Exact quotient if `d` divides `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divmod(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s·self + t·other` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lead) => {
                let inv = f.inv(lead);
                (r0.scale(inv), s0.scale(inv), t0.scale(inv))
            }
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Exponent of the exact power of `prime` dividing `self` (nonzero).
    pub fn valuation_at(&self, prime: &Poly) -> usize {
        assert!(!self.is_zero(), "valuation of zero");
        assert!(prime.degree().unwrap_or(0) > 0, "valuation at a unit");
        let mut v = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(prime) {
            cur = q;
            v += 1;
        }
        v
    }

    /// Irreducibility by trial division against monic polynomials of degree
    /// at most half the degree.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        let q = self.field.size() as u64;
        for k in 1..=d / 2 {
            for idx in 0..q.pow(k as u32) {
                let mut c = Vec::with_capacity(k + 1);
                let mut rest = idx;
                for _ in 0..k {
                    c.push((rest % q) as u32);
                    rest /= q;
                }
                c.push(1);
                if self.rem(&Poly::from_coeffs(&self.field, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.check_field(rhs);
                $imp(self, rhs)
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

fn add_impl(a: &Poly, b: &Poly) -> Poly {
    let f = &a.field;
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|i| f.add(a.coeff(i), b.coeff(i))).collect();
    Poly::from_coeffs(f, coeffs)
}

fn sub_impl(a: &Poly, b: &Poly) -> Poly {
    let f = &a.field;
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|i| f.sub(a.coeff(i), b.coeff(i))).collect();
    Poly::from_coeffs(f, coeffs)
}

fn mul_impl(a: &Poly, b: &Poly) -> Poly {
    let f = &a.field;
    if a.is_zero() || b.is_zero() {
        return Poly::zero(f);
    }
    let mut out = vec![0u32; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    Poly::from_coeffs(f, out)
}

poly_binop!(Add, add, add_impl);
poly_binop!(Sub, sub, sub_impl);
poly_binop!(Mul, mul, mul_impl);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// A value of v_∞, with a distinguished +∞ for the zero function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// v_∞(f/g) = deg g − deg f.
pub fn v_inf(numerator: &Poly, denominator: &Poly) -> Result<Valuation> {
    let Some(dg) = denominator.degree() else {
        return Err(Error::DivisionByZero);
    };
    Ok(match numerator.degree() {
        None => Valuation::Infinity,
        Some(df) => Valuation::Finite(dg as i64 - df as i64),
    })
}

/// The unique polynomial of degree < Σ deg(mᵢ) congruent to each residue.
pub fn crt_reconstruct(residues: &[(Poly, Poly)]) -> Result<Poly> {
    let Some((first_r, first_m)) = residues.first() else {
        return Err(Error::EmptyInput);
    };
    if first_m.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut acc = first_r.rem(first_m);
    let mut modulus = first_m.clone();
    for (r, m) in &residues[1..] {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = modulus.ext_gcd(m);
        if !g.is_one() {
            return Err(Error::NotCoprime);
        }
        // acc + modulus·((r − acc)·modulus⁻¹ mod m)
        let lift = (&(r - &acc) * &s).rem(m);
        acc = &acc + &(&modulus * &lift);
        modulus = &modulus * m;
        acc = acc.rem(&modulus);
    }
    Ok(acc)
}

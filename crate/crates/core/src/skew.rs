//! The skew polynomial ring k{τ} with τα = α^q τ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{embed, log_p, FieldElement, FieldRef};

/// An element Σ cᵢτⁱ of k{τ}, coefficients ascending in τ.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    q: u64,
    // q = p^frob_step
    frob_step: usize,
    field: FieldRef,
    coeffs: Vec<FieldElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TauProfile {
    pub deg_tau: usize,
    /// τ-adic valuation: index of the lowest nonzero coefficient.
    pub height: usize,
    pub separable: bool,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

/// τ-coefficients ascending, ";"-separated: "1;1;1" is τ²+τ+1 over F_2.
impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "{}", self.field.zero());
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl SkewPoly {
    pub fn new(q: u64, field: &FieldRef, mut coeffs: Vec<FieldElement>) -> Result<SkewPoly> {
        let frob_step = log_p(q, field.characteristic())? as usize;
        if !field.degree().is_multiple_of(frob_step) {
            return Err(Error::DegreeMismatch {
                sub: frob_step,
                target: field.degree(),
            });
        }
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(format!(
                "coefficient in {} but ring over {field}",
                c.field()
            )));
        }
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Ok(SkewPoly {
            q,
            frob_step,
            field: field.clone(),
            coeffs,
        })
    }

    pub fn zero(q: u64, field: &FieldRef) -> Result<SkewPoly> {
        SkewPoly::new(q, field, Vec::new())
    }

    pub fn one(q: u64, field: &FieldRef) -> Result<SkewPoly> {
        SkewPoly::new(q, field, vec![field.one()])
    }

    /// cτⁱ
    pub fn monomial(q: u64, c: FieldElement, i: usize) -> Result<SkewPoly> {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); i];
        coeffs.push(c);
        SkewPoly::new(q, &field, coeffs)
    }

    /// τⁱ
    pub fn tau_power(q: u64, field: &FieldRef, i: usize) -> Result<SkewPoly> {
        SkewPoly::monomial(q, field.one(), i)
    }

    fn like(&self, mut coeffs: Vec<FieldElement>) -> SkewPoly {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        SkewPoly {
            q: self.q,
            frob_step: self.frob_step,
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn parse(q: u64, field: &FieldRef, text: &str) -> Result<SkewPoly> {
        let coeffs = text
            .split(';')
            .map(|t| FieldElement::parse(field, t))
            .collect::<Result<Vec<_>>>()?;
        SkewPoly::new(q, field, coeffs)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// deg_τ, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// c^(q^i), the coefficient twist produced by moving c past τⁱ.
    fn twist(&self, c: &FieldElement, i: usize) -> FieldElement {
        c.frobenius(self.frob_step * i)
    }

    fn compatible(&self, other: &SkewPoly) -> Result<()> {
        if self.q != other.q || self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "k{{τ}} over {} with q={} vs {} with q={}",
                self.field, self.q, other.field, other.q
            )));
        }
        Ok(())
    }

    /// The product self·other, using (ατⁱ)(βτʲ) = α·β^(q^i)·τ^(i+j).
    pub fn checked_mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.like(Vec::new()));
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        let mut twisted: Vec<FieldElement> = other.coeffs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                twisted = twisted.iter().map(|b| self.twist(b, 1)).collect();
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in twisted.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(self.like(out))
    }

    /// c·self for c ∈ k (left multiplication).
    pub fn scale_left(&self, c: &FieldElement) -> SkewPoly {
        self.like(self.coeffs.iter().map(|a| c * a).collect())
    }

    pub fn pow(&self, k: usize) -> SkewPoly {
        let mut acc = self.like(vec![self.field.one()]);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Right Euclidean division: `self = quotient·d + remainder` with
    /// deg_τ(remainder) < deg_τ(d).
    pub fn right_divmod(&self, d: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.compatible(d)?;
        let Some(dd) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((self.like(Vec::new()), self.clone()));
        }
        let lead_inv = d.coeffs[dd].inv().expect("leading coefficient is nonzero");
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..rem.len() - dd).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            // c τ^k · d has leading coefficient c·lead^(q^k)
            let c = &rem[k + dd] * &self.twist(&lead_inv, k);
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&c * &self.twist(dj, k));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((self.like(quot), self.like(rem)))
    }

    /// Evaluates the q-polynomial Σ cᵢ x^(q^i) at `x` in an extension of k.
    pub fn evaluate(&self, x: &FieldElement) -> Result<FieldElement> {
        let target = x.field();
        if target.characteristic() != self.field.characteristic()
            || !target.degree().is_multiple_of(self.field.degree())
        {
            return Err(Error::FieldMismatch(format!(
                "{target} does not contain {}",
                self.field
            )));
        }
        let mut acc = target.zero();
        let mut power = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.frobenius(self.frob_step);
            }
            if !c.is_zero() {
                acc = &acc + &(&embed(c, target)? * &power);
            }
        }
        Ok(acc)
    }

    pub fn tau_profile(&self) -> Result<TauProfile> {
        let deg_tau = self.degree().ok_or(Error::ZeroSkewPoly)?;
        let height = self.height().expect("nonzero");
        Ok(TauProfile {
            deg_tau,
            height,
            separable: height == 0,
        })
    }

    /// Index of the lowest nonzero coefficient, `None` for zero.
    pub fn height(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops the first `h` coefficients: for `self = s·τ^h` returns `s`.
    pub(crate) fn strip_tau_power(&self, h: usize) -> SkewPoly {
        debug_assert!(self.coeffs.iter().take(h).all(FieldElement::is_zero));
        self.like(self.coeffs.iter().skip(h).cloned().collect())
    }
}

impl Add<&SkewPoly> for &SkewPoly {
    type Output = SkewPoly;
    fn add(self, rhs: &SkewPoly) -> SkewPoly {
        self.compatible(rhs).expect("skew ring mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        self.like((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&SkewPoly> for &SkewPoly {
    type Output = SkewPoly;
    fn sub(self, rhs: &SkewPoly) -> SkewPoly {
        self.compatible(rhs).expect("skew ring mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        self.like((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Neg for &SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        self.like(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Panics on mismatched rings; see [`SkewPoly::checked_mul`].
impl Mul<&SkewPoly> for &SkewPoly {
    type Output = SkewPoly;
    fn mul(self, rhs: &SkewPoly) -> SkewPoly {
        self.checked_mul(rhs).expect("skew ring mismatch")
    }
}

//! Drinfeld modules φ: F_q[T] → k{τ} over k = F_{qⁿ}, determined by
//! φ_T = g₀ + g₁τ + … + g_rτ^r.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{embed, make_extension, minpoly_over_subfield, FieldElement, FieldRef, Fq};
use crate::polyring::Poly;
use crate::skew::SkewPoly;

#[derive(Clone)]
pub struct DrinfeldModule {
    fq: Arc<Fq>,
    n: usize,
    field: FieldRef,
    phi_t: SkewPoly,
    characteristic: Poly,
    // image of each F_q index in k
    scalars: Arc<Vec<FieldElement>>,
}

impl fmt::Debug for DrinfeldModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DrinfeldModule({self})")
    }
}

/// "q=2,n=1,g=1;1;1" with g₀…g_r ascending.
impl fmt::Display for DrinfeldModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={},n={},g={}", self.q(), self.n, self.phi_t)
    }
}

impl PartialEq for DrinfeldModule {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.phi_t == other.phi_t
    }
}

impl Eq for DrinfeldModule {}

impl DrinfeldModule {
    /// The module with φ_T = Σ gᵢτⁱ; every gᵢ must lie in F_{qⁿ} and g_r ≠ 0
    /// with r ≥ 1.
    pub fn new(q: u64, n: usize, g: Vec<FieldElement>) -> Result<DrinfeldModule> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let fq = Fq::get(q)?;
        let field = make_extension(fq.characteristic(), fq.degree() as usize * n)?;
        if g.len() < 2 {
            return Err(Error::InvalidModule("rank must be at least 1".into()));
        }
        if g.last().unwrap().is_zero() {
            return Err(Error::InvalidModule("leading coefficient g_r is zero".into()));
        }
        let phi_t = SkewPoly::new(q, &field, g)?;
        let characteristic = minpoly_over_subfield(&phi_t.coeff(0), q)?;
        let d = characteristic.degree().expect("minimal polynomial is nonzero");
        if !n.is_multiple_of(d) {
            return Err(Error::InvalidModule(format!(
                "characteristic degree {d} does not divide n = {n}"
            )));
        }
        let scalars = (0..fq.size())
            .map(|c| embed(&fq.to_element(c), &field))
            .collect::<Result<Vec<_>>>()?;
        Ok(DrinfeldModule {
            fq,
            n,
            field,
            phi_t,
            characteristic,
            scalars: Arc::new(scalars),
        })
    }

    /// The module with φ_T = `u`, viewing `u`'s coefficient field as F_{qⁿ}.
    pub fn from_skew(u: &SkewPoly) -> Result<DrinfeldModule> {
        let e = crate::ff::log_p(u.q(), u.field().characteristic())? as usize;
        DrinfeldModule::new(u.q(), u.field().degree() / e, u.coeffs().to_vec())
    }

    pub fn parse(text: &str) -> Result<DrinfeldModule> {
        let bad = || Error::Parse(format!("expected q=..,n=..,g=.., got {text:?}"));
        let (head, g_text) = text.split_once(",g=").ok_or_else(bad)?;
        let (q_text, n_text) = head.split_once(',').ok_or_else(bad)?;
        let q: u64 = q_text
            .strip_prefix("q=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(bad)?;
        let n: usize = n_text
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(bad)?;
        let fq = Fq::get(q)?;
        let field = make_extension(fq.characteristic(), fq.degree() as usize * n)?;
        let g = g_text
            .split(';')
            .map(|t| FieldElement::parse(&field, t))
            .collect::<Result<Vec<_>>>()?;
        DrinfeldModule::new(q, n, g)
    }

    pub fn q(&self) -> u64 {
        self.fq.size() as u64
    }

    pub fn fq(&self) -> &Arc<Fq> {
        &self.fq
    }

    /// n = [k : F_q].
    pub fn n(&self) -> usize {
        self.n
    }

    /// k = F_{qⁿ}.
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.phi_t.degree().expect("rank ≥ 1")
    }

    pub fn phi_t(&self) -> &SkewPoly {
        &self.phi_t
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        self.phi_t.coeffs()
    }

    /// The characteristic 𝔭 (monic irreducible) and d = deg 𝔭.
    pub fn characteristic(&self) -> (&Poly, usize) {
        let d = self.characteristic.degree().expect("nonzero");
        (&self.characteristic, d)
    }

    /// The image of c ∈ F_q in k.
    pub fn scalar(&self, c: u32) -> &FieldElement {
        &self.scalars[c as usize]
    }

    /// The Frobenius π = τⁿ.
    pub fn frobenius(&self) -> SkewPoly {
        SkewPoly::tau_power(self.q(), &self.field, self.n).expect("valid ring")
    }

    pub fn one(&self) -> SkewPoly {
        SkewPoly::one(self.q(), &self.field).expect("valid ring")
    }

    fn check_poly(&self, a: &Poly) -> Result<()> {
        if a.field().size() != self.fq.size() {
            return Err(Error::FieldMismatch(format!(
                "polynomial over F_{} for a module over F_{}",
                a.field().size(),
                self.fq.size()
            )));
        }
        Ok(())
    }

    /// φ_a.
    pub fn phi_of(&self, a: &Poly) -> Result<SkewPoly> {
        self.check_poly(a)?;
        let mut acc = SkewPoly::zero(self.q(), &self.field)?;
        for &c in a.coeffs().iter().rev() {
            acc = &acc * &self.phi_t;
            if c != 0 {
                let constant = SkewPoly::monomial(self.q(), self.scalar(c).clone(), 0)?;
                acc = &acc + &constant;
            }
        }
        Ok(acc)
    }

    /// γ(a) = a(g₀), the constant τ-coefficient of φ_a.
    pub fn gamma(&self, a: &Poly) -> Result<FieldElement> {
        self.check_poly(a)?;
        let g0 = self.phi_t.coeff(0);
        let mut acc = self.field.zero();
        for &c in a.coeffs().iter().rev() {
            acc = &(&acc * &g0) + self.scalar(c);
        }
        Ok(acc)
    }

    /// H(φ) = h(φ_𝔭) / deg 𝔭.
    pub fn height(&self) -> usize {
        let (p, d) = self.characteristic();
        let h = self
            .phi_of(p)
            .expect("same field")
            .height()
            .expect("φ is injective");
        debug_assert_eq!(h % d, 0, "height of φ_𝔭 is a multiple of deg 𝔭");
        h / d
    }

    /// Coordinates c₀(T), …, c_{r−1}(T) ∈ k[T] of `u` in the Anderson motive,
    /// i.e. u = Σᵢ cᵢ(T) ∗ τⁱ where T acts by right multiplication by φ_T.
    pub fn motive_coordinates(&self, u: &SkewPoly) -> Result<Vec<KPoly>> {
        let r = self.rank();
        let mut columns: Vec<Vec<FieldElement>> = vec![Vec::new(); r];
        let mut cur = u.clone();
        while !cur.is_zero() {
            let (quot, rem) = cur.right_divmod(&self.phi_t)?;
            for (i, col) in columns.iter_mut().enumerate() {
                col.push(rem.coeff(i));
            }
            cur = quot;
        }
        Ok(columns
            .into_iter()
            .map(|c| KPoly::new(&self.field, c))
            .collect())
    }

    /// Inverse of [`DrinfeldModule::motive_coordinates`]: Σᵢ Σⱼ cᵢⱼ τⁱ φ_T^j.
    pub fn from_motive_coordinates(&self, coords: &[KPoly]) -> Result<SkewPoly> {
        let q = self.q();
        let mut acc = SkewPoly::zero(q, &self.field)?;
        for (i, c) in coords.iter().enumerate() {
            let mut phi_power = self.one();
            for cij in c.coeffs() {
                if !cij.is_zero() {
                    let term = SkewPoly::monomial(q, cij.clone(), i)?;
                    acc = &acc + &(&term * &phi_power);
                }
                phi_power = &phi_power * &self.phi_t;
            }
        }
        Ok(acc)
    }

    /// a(T)·c(T) for a ∈ A and c ∈ k[T].
    pub fn scale_coordinate(&self, a: &Poly, c: &KPoly) -> KPoly {
        if a.is_zero() || c.coeffs.is_empty() {
            return KPoly::new(&self.field, Vec::new());
        }
        let mut out = vec![self.field.zero(); a.coeffs().len() + c.coeffs.len() - 1];
        for (i, &ai) in a.coeffs().iter().enumerate() {
            for (j, cj) in c.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(self.scalar(ai) * cj);
            }
        }
        KPoly::new(&self.field, out)
    }
}

/// A polynomial in T with coefficients in k (a motive coordinate).
#[derive(Clone, PartialEq, Eq)]
pub struct KPoly {
    field: FieldRef,
    coeffs: Vec<FieldElement>,
}

impl KPoly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<FieldElement>) -> KPoly {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        KPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KPoly({self})")
    }
}

/// T-coefficients ascending, ";"-separated field elements.
impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "{}", self.field.zero());
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

#[cfg(test)]
mod tests;

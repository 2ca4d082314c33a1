//! Endomorphisms of a Drinfeld module and their minimal and characteristic
//! polynomials, computed by an exact F_p-linear relation search in k{τ}.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::ff::{FieldElement, Fq};
use crate::linalg::Matrix;
use crate::polyring::Poly;
use crate::skew::SkewPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CharPolyKind {
    /// m(T, x).
    Minimal,
    /// P(T, x), with the power r/deg_x m when it was obtained from m.
    Characteristic { power: Option<usize> },
}

/// A polynomial in x, monic, with coefficients in A = F_q[T] (ascending in x).
/// Equality compares coefficients only.
#[derive(Clone)]
pub struct CharPoly {
    coeffs: Vec<Poly>,
    kind: CharPolyKind,
}

impl PartialEq for CharPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for CharPoly {}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharPoly({self})")
    }
}

/// x-coefficients ascending separated by "|": "1,1|1|1" = (T+1) + x + x².
impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(Poly::to_string).collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl CharPoly {
    pub fn new(coeffs: Vec<Poly>, kind: CharPolyKind) -> Result<CharPoly> {
        if !coeffs.last().is_some_and(Poly::is_one) {
            return Err(Error::Internal("polynomial is not monic in x".into()));
        }
        Ok(CharPoly { coeffs, kind })
    }

    pub fn parse(field: &Arc<Fq>, text: &str, kind: CharPolyKind) -> Result<CharPoly> {
        let coeffs = text
            .split('|')
            .map(|t| Poly::parse(field, t))
            .collect::<Result<Vec<_>>>()?;
        CharPoly::new(coeffs, kind)
            .map_err(|_| Error::Parse(format!("{text:?} is not monic in x")))
    }

    /// a₀(T), …, a_{deg−1}(T), 1.
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn kind(&self) -> CharPolyKind {
        self.kind
    }

    /// Degree in x.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant_term(&self) -> &Poly {
        &self.coeffs[0]
    }

    /// Coefficients reduced modulo `modulus`.
    pub fn reduce_mod(&self, modulus: &Poly) -> Vec<Poly> {
        self.coeffs.iter().map(|c| c.rem(modulus)).collect()
    }

    /// Σ φ_{aᵢ} uⁱ ∈ k{τ}; zero exactly when `u` is a root.
    pub fn evaluate_at(&self, phi: &DrinfeldModule, u: &SkewPoly) -> Result<SkewPoly> {
        let mut acc = SkewPoly::zero(phi.q(), phi.field())?;
        for a in self.coeffs.iter().rev() {
            acc = &acc.checked_mul(u)? + &phi.phi_of(a)?;
        }
        Ok(acc)
    }

    /// Nonzero coefficients keyed by (T-degree, x-degree).
    pub fn bivariate_terms(&self) -> BTreeMap<(usize, usize), u32> {
        let mut out = BTreeMap::new();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (t, &c) in a.coeffs().iter().enumerate() {
                if c != 0 {
                    out.insert((t, i), c);
                }
            }
        }
        out
    }

    fn power(&self, k: usize, kind: CharPolyKind) -> CharPoly {
        let field = self.coeffs[0].field().clone();
        let mut acc = vec![Poly::one(&field)];
        for _ in 0..k {
            acc = mul_x_polys(&acc, &self.coeffs);
        }
        CharPoly { coeffs: acc, kind }
    }
}

fn mul_x_polys(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let field = a[0].field().clone();
    let mut out = vec![Poly::zero(&field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

pub fn is_endomorphism(phi: &DrinfeldModule, u: &SkewPoly) -> Result<bool> {
    let left = phi.phi_t().checked_mul(u)?;
    let right = u.checked_mul(phi.phi_t())?;
    Ok(left == right)
}

fn flatten_into(u: &SkewPoly, rows: usize, out: &mut [u32]) {
    let s = u.field().degree();
    for (t, c) in u.coeffs().iter().enumerate() {
        out[t * s..(t + 1) * s].copy_from_slice(c.coeffs());
    }
    debug_assert!(u.coeffs().len() * s <= rows);
}

/// The monic minimal polynomial m(T, x) of the endomorphism `u`.
///
/// For s = 1, 2, … and T-degree budgets D = 0, 1, …, deg_τ(u), solves the
/// F_p-linear system Σ_{i<s} φ_{aᵢ} uⁱ = −uˢ with deg aᵢ ≤ D and returns the
/// first solution. The budget suffices because deg det(v) = deg_τ(v).
pub fn minimal_polynomial(phi: &DrinfeldModule, u: &SkewPoly) -> Result<CharPoly> {
    if !is_endomorphism(phi, u)? {
        return Err(Error::NotEndomorphism);
    }
    let fq = phi.fq().clone();
    if u.is_zero() {
        return CharPoly::new(
            vec![Poly::zero(&fq), Poly::one(&fq)],
            CharPolyKind::Minimal,
        );
    }
    let p = fq.characteristic();
    let e = fq.degree() as usize;
    let prime = Fq::prime(p)?;
    let r = phi.rank();
    let deg_u = u.degree().expect("nonzero");
    let s_k = phi.field().degree();

    // embedded F_p-basis 1, z, …, z^{e−1} of F_q
    let zeta: Vec<FieldElement> = (0..e)
        .map(|l| phi.scalar(p.pow(l as u32)).clone())
        .collect();
    let mut phi_pows = vec![phi.one()];
    for j in 1..=deg_u {
        let next = &phi_pows[j - 1] * phi.phi_t();
        phi_pows.push(next);
    }
    let mut u_pows = vec![phi.one()];
    for i in 1..=r {
        let next = &u_pows[i - 1] * u;
        u_pows.push(next);
    }
    // products[i][j] = φ_T^j · u^i
    let products: Vec<Vec<SkewPoly>> = (0..r)
        .map(|i| phi_pows.iter().map(|pj| pj * &u_pows[i]).collect())
        .collect();

    for s in 1..=r {
        for budget in 0..=deg_u {
            let mut terms: Vec<SkewPoly> = Vec::with_capacity(s * (budget + 1) * e);
            for row in products.iter().take(s) {
                for pj in row.iter().take(budget + 1) {
                    for z in &zeta {
                        terms.push(pj.scale_left(z));
                    }
                }
            }
            let target = -&u_pows[s];
            let max_len = terms
                .iter()
                .chain(std::iter::once(&target))
                .map(|t| t.coeffs().len())
                .max()
                .unwrap_or(0);
            let rows = max_len * s_k;
            let mut m = Matrix::zeros(rows, terms.len());
            let mut col = vec![0u32; rows];
            for (c, t) in terms.iter().enumerate() {
                col.iter_mut().for_each(|x| *x = 0);
                flatten_into(t, rows, &mut col);
                for (i, &v) in col.iter().enumerate() {
                    if v != 0 {
                        m.set(i, c, v);
                    }
                }
            }
            let mut rhs = vec![0u32; rows];
            flatten_into(&target, rows, &mut rhs);
            let Some(x) = m.solve(&rhs, &prime) else {
                continue;
            };
            let mut coeffs = Vec::with_capacity(s + 1);
            for i in 0..s {
                let mut a = Vec::with_capacity(budget + 1);
                for j in 0..=budget {
                    let base = (i * (budget + 1) + j) * e;
                    let idx = x[base..base + e]
                        .iter()
                        .rev()
                        .fold(0u32, |acc, &d| acc * p + d);
                    a.push(idx);
                }
                coeffs.push(Poly::from_coeffs(&fq, a));
            }
            coeffs.push(Poly::one(&fq));
            return CharPoly::new(coeffs, CharPolyKind::Minimal);
        }
    }
    Err(Error::RelationSearchExhausted(deg_u))
}

/// P(T, x) = m(T, x)^{r/deg_x m} and det(u) = (−1)^r P(T, 0).
pub fn char_polynomial(phi: &DrinfeldModule, u: &SkewPoly) -> Result<(CharPoly, Poly)> {
    let m = minimal_polynomial(phi, u)?;
    char_polynomial_from_minimal(phi, &m)
}

pub fn char_polynomial_from_minimal(phi: &DrinfeldModule, m: &CharPoly) -> Result<(CharPoly, Poly)> {
    let r = phi.rank();
    let s = m.degree();
    if !r.is_multiple_of(s) {
        return Err(Error::Internal(format!(
            "minimal polynomial degree {s} does not divide rank {r}"
        )));
    }
    let power = r / s;
    let p = m.power(power, CharPolyKind::Characteristic { power: Some(power) });
    let det = if r.is_multiple_of(2) {
        p.constant_term().clone()
    } else {
        -p.constant_term()
    };
    Ok((p, det))
}

/// The minimal polynomial of φ_T as an endomorphism of ψ with ψ_x = `u`
/// (x the variable of ψ's coefficient ring, T the endomorphism variable).
pub fn swapped_minimal_polynomial(phi: &DrinfeldModule, u: &SkewPoly) -> Result<CharPoly> {
    if u.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidModule(
            "swapping needs deg_τ(u) ≥ 1".into(),
        ));
    }
    let psi = DrinfeldModule::from_skew(u)?;
    minimal_polynomial(&psi, phi.phi_t())
}

/// If `swapped` equals c·m with the roles of T and x exchanged, returns c.
pub fn swap_scalar(m: &CharPoly, swapped: &CharPoly) -> Option<u32> {
    let field = m.coeffs[0].field().clone();
    let original = m.bivariate_terms();
    let exchanged: BTreeMap<(usize, usize), u32> = swapped
        .bivariate_terms()
        .into_iter()
        .map(|((t, x), c)| ((x, t), c))
        .collect();
    if original.len() != exchanged.len() {
        return None;
    }
    let (key, &first) = original.iter().next()?;
    let c = field.div(*exchanged.get(key)?, first);
    original
        .iter()
        .all(|(k, &v)| exchanged.get(k) == Some(&field.mul(c, v)))
        .then_some(c)
}

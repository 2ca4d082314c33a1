//! Explicit torsion spaces φ[a] inside finite extensions of k, their A-module
//! structure, and the action of endomorphisms on them.
//!
//! Every kernel here is computed as the kernel of an F_p-linear map on an
//! extension field L ⊇ k: the q-polynomial x ↦ f(x) for f ∈ k{τ}. The field
//! L = F_{q^m} is the least one (m a multiple of n) containing all roots,
//! found from the right remainders of τ^{nj} modulo the separable part of f.

use serde::Serialize;

use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::ff::{embed, make_extension, FieldElement, FieldRef, Fq};
use crate::linalg::{ColumnSolver, Matrix};
use crate::polyring::{smith_form, InvariantFactors, Poly};
use crate::skew::SkewPoly;

/// Limits on the extension fields built for torsion computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// The ambient field has at most 2^max_field_bits elements.
    pub max_field_bits: u32,
    /// The ambient field is F_{q^m} with m ≤ max_ext_multiple·n.
    pub max_ext_multiple: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_field_bits: 24,
            max_ext_multiple: 24,
        }
    }
}

impl Caps {
    /// Whether F_{p^degree} has at most 2^max_field_bits elements.
    pub fn allows_field(&self, p: u32, degree: usize) -> bool {
        let limit = if self.max_field_bits >= 128 {
            None
        } else {
            Some(1u128 << self.max_field_bits)
        };
        let mut size: u128 = 1;
        for _ in 0..degree {
            match size.checked_mul(p as u128) {
                Some(v) => size = v,
                None => return limit.is_none(),
            }
        }
        limit.is_none_or(|l| size <= l)
    }
}

/// The least j ≥ 1 with τ^{nj} ≡ 1 modulo `f` on the right, i.e. the least
/// j such that every root of the separable q-polynomial `f` lies in
/// F_{q^{nj}}. Since τⁿ is central, the remainders can be stepped.
fn splitting_multiple(f: &SkewPoly, n: usize, cap: usize) -> Result<usize> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(1);
    }
    let pi = SkewPoly::tau_power(f.q(), f.field(), n)?;
    let mut rem = pi.right_divmod(f)?.1;
    for j in 1..=cap {
        if rem.is_one() {
            return Ok(j);
        }
        rem = rem.checked_mul(&pi)?.right_divmod(f)?.1;
    }
    Err(Error::CapExceeded {
        what: "extension multiple".into(),
        reached: cap * n,
    })
}

/// Σ cᵢ x^(q^i) with the cᵢ already embedded in x's field.
fn eval_embedded(coeffs: &[FieldElement], step: usize, x: &FieldElement) -> FieldElement {
    let mut acc = x.field().zero();
    let mut power = x.clone();
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            power = power.frobenius(step);
        }
        if !c.is_zero() {
            acc = &acc + &(c * &power);
        }
    }
    acc
}

/// Evaluates x ↦ Σ cᵢ x^(q^i) on an extension L of k. Writing
/// cᵢ = Σ_l c_{il} w^l in the power basis of k's generator w, the value is
/// Σ_l w^l·S_l(x) with S_l(x) = Σᵢ c_{il} x^(q^i), taken by Horner in w:
/// the q-powers are Frobenius steps and only deg_{F_p} k − 1 products in L
/// remain.
struct QPolyEvaluator {
    field: FieldRef,
    w: FieldElement,
    // F_p-digits of each cᵢ
    digits: Vec<Vec<u32>>,
    step: usize,
}

impl QPolyEvaluator {
    fn new(f: &SkewPoly, field: &FieldRef, step: usize) -> Result<QPolyEvaluator> {
        let k = f.field();
        let digits = f
            .coeffs()
            .iter()
            .map(|c| {
                let mut d = c.coeffs().to_vec();
                d.resize(k.degree(), 0);
                d
            })
            .collect();
        Ok(QPolyEvaluator {
            field: field.clone(),
            w: embed(&k.generator(), field)?,
            digits,
            step,
        })
    }

    fn eval(&self, x: &FieldElement) -> FieldElement {
        let dim_p = self.field.degree();
        let p = self.field.characteristic() as u64;
        let width = self.digits.first().map_or(1, Vec::len);
        let mut partial = vec![vec![0u64; dim_p]; width];
        let mut power = x.clone();
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                power = power.frobenius(self.step);
            }
            for (acc, &c) in partial.iter_mut().zip(d) {
                if c != 0 {
                    for (a, &v) in acc.iter_mut().zip(power.coeffs()) {
                        *a += c as u64 * v as u64;
                    }
                }
            }
            // keep the accumulators far from overflow
            if i % 1024 == 1023 {
                partial.iter_mut().flatten().for_each(|a| *a %= p);
            }
        }
        let to_element = |acc: &[u64]| {
            let v: Vec<u32> = acc.iter().map(|&a| (a % p) as u32).collect();
            self.field.element(&v)
        };
        let mut value = to_element(&partial[width - 1]);
        for acc in partial[..width - 1].iter().rev() {
            value = &(&value * &self.w) + &to_element(acc);
        }
        value
    }
}

/// a(M) for a ∈ F_q[T] and a square matrix M over F_q.
fn poly_at_matrix(a: &Poly, m: &Matrix, f: &Fq) -> Matrix {
    let dim = m.rows();
    let mut acc = Matrix::zeros(dim, dim);
    for &c in a.coeffs().iter().rev() {
        acc = acc.mul(m, f);
        for i in 0..dim {
            acc.set(i, i, f.add(acc.get(i, i), c));
        }
    }
    acc
}

/// An F_q-subspace of an extension L of k given as the kernel of a
/// q-polynomial, together with the φ_T action on it.
#[derive(Clone, Debug)]
struct KernelSpace {
    field: FieldRef,
    ext_degree: usize,
    // ζ^l ∈ L for the F_p-basis 1, ζ, …, ζ^{e−1} of F_q
    zeta: Vec<FieldElement>,
    basis: Vec<FieldElement>,
    solver: ColumnSolver,
    action: Matrix,
}

impl KernelSpace {
    fn new(phi: &DrinfeldModule, f: &SkewPoly, caps: &Caps) -> Result<KernelSpace> {
        let fq = phi.fq();
        let p = fq.characteristic();
        let e = fq.degree() as usize;
        let n = phi.n();
        let h = f.height().ok_or(Error::ZeroSkewPoly)?;
        let separable = f.strip_tau_power(h);
        let expected = separable.degree().expect("nonzero");
        let j = splitting_multiple(&separable, n, caps.max_ext_multiple)?;
        let m = n * j;
        if !caps.allows_field(p, e * m) {
            return Err(Error::FieldTooLarge(format!(
                "F_{{{p}^{}}} exceeds 2^{}",
                e * m,
                caps.max_field_bits
            )));
        }
        let field = make_extension(p, e * m)?;
        let prime = Fq::prime(p)?;
        let dim_p = e * m;
        let step = e;
        // F_q always reaches L through k, so scalars agree with φ's
        let zeta = (0..e)
            .map(|l| embed(phi.scalar(p.pow(l as u32)), &field))
            .collect::<Result<Vec<_>>>()?;

        // f = g·τ^h with g separable. τ^m − 1 is central and right-divisible
        // by g, so τ^m − 1 = g·Q as well: Q maps L onto ker g (ker Q ⊆ L has
        // q^(m−deg g) elements). The images of θ⁰, θ¹, … span ker g, and
        // ker f is ker g under the inverse Frobenius x ↦ x^(q^−h).
        let period = &SkewPoly::tau_power(f.q(), f.field(), m)? - &SkewPoly::one(f.q(), f.field())?;
        let (cofactor, rest) = period.right_divmod(&separable)?;
        if !rest.is_zero() {
            return Err(Error::Internal("τ^m − 1 is not divisible by the separable part".into()));
        }
        let onto_kernel = QPolyEvaluator::new(&cofactor, &field, step)?;
        let undo_height = (dim_p - (e * h) % dim_p) % dim_p;

        let mut basis: Vec<FieldElement> = Vec::new();
        let mut expanded: Vec<Vec<u32>> = Vec::new();
        for t in 0..dim_p {
            if basis.len() == expected {
                break;
            }
            let mut unit = vec![0u32; dim_p];
            unit[t] = 1;
            let x = onto_kernel.eval(&field.element(&unit)).frobenius(undo_height);
            if x.is_zero() {
                continue;
            }
            let mut trial = expanded.clone();
            trial.push(x.coeffs().to_vec());
            if Matrix::from_columns(dim_p, &trial).rank(&prime) == trial.len() {
                for z in &zeta {
                    expanded.push((z * &x).coeffs().to_vec());
                }
                basis.push(x);
            }
        }
        if basis.len() != expected {
            return Err(Error::Internal(format!(
                "kernel has F_q-dimension {} but {expected} was expected",
                basis.len()
            )));
        }
        let solver = ColumnSolver::new(dim_p, &expanded, &prime)
            .ok_or_else(|| Error::Internal("dependent kernel basis".into()))?;
        let mut space = KernelSpace {
            field,
            ext_degree: m,
            zeta,
            basis,
            solver,
            action: Matrix::zeros(expected, expected),
        };
        let phi_t = phi
            .phi_t()
            .coeffs()
            .iter()
            .map(|c| embed(c, &space.field))
            .collect::<Result<Vec<_>>>()?;
        let mut action = Matrix::zeros(expected, expected);
        for (jdx, b) in space.basis.iter().enumerate() {
            let image = eval_embedded(&phi_t, step, b);
            let coords = space.coordinates(&image).ok_or_else(|| {
                Error::Internal("kernel is not stable under φ_T".into())
            })?;
            for (i, c) in coords.into_iter().enumerate() {
                action.set(i, jdx, c);
            }
        }
        space.action = action;
        Ok(space)
    }

    fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// F_q-coordinates of `x`, or `None` if `x` lies outside the space.
    fn coordinates(&self, x: &FieldElement) -> Option<Vec<u32>> {
        let e = self.zeta.len();
        let p = self.field.characteristic();
        let prime = Fq::prime(p).expect("prime");
        let digits = self.solver.coordinates(x.coeffs(), &prime)?;
        Some(
            digits
                .chunks(e)
                .map(|c| c.iter().rev().fold(0u32, |acc, &d| acc * p + d))
                .collect(),
        )
    }

    fn element(&self, coords: &[u32]) -> FieldElement {
        let p = self.field.characteristic();
        let mut acc = self.field.zero();
        for (b, &c) in self.basis.iter().zip(coords) {
            let mut rest = c;
            for z in &self.zeta {
                let digit = self.field.element(&[rest % p]);
                rest /= p;
                acc = &acc + &(&(z * b) * &digit);
            }
        }
        acc
    }
}

/// φ[a] as an explicit F_q-subspace of an extension field, with its
/// A-module structure.
#[derive(Clone, Debug)]
pub struct TorsionModule {
    phi: DrinfeldModule,
    level: Poly,
    space: KernelSpace,
    factors: InvariantFactors,
    // cyclic generators (F_q-coordinates) paired with their orders
    generators: Vec<(Vec<u32>, Poly)>,
}

impl TorsionModule {
    /// φ[a] for a nonzero non-unit `level`.
    pub fn new(phi: &DrinfeldModule, level: &Poly, caps: &Caps) -> Result<TorsionModule> {
        match level.degree() {
            None => return Err(Error::InvalidModule("zero torsion level".into())),
            Some(0) => return Err(Error::UnitLevel),
            _ => {}
        }
        let fq = phi.fq().clone();
        let space = KernelSpace::new(phi, &phi.phi_of(level)?, caps)?;
        let dim = space.dimension();
        // T·I − Φ presents φ[a] as a quotient of A^dim
        let presentation: Vec<Vec<Poly>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let c = fq.neg(space.action.get(i, j));
                        if i == j {
                            Poly::from_coeffs(&fq, vec![c, 1])
                        } else {
                            Poly::constant(&fq, c)
                        }
                    })
                    .collect()
            })
            .collect();
        let form = smith_form(&presentation, &fq);
        let mut generators = Vec::new();
        for (i, d) in form.diagonal.iter().enumerate() {
            if d.is_unit() {
                continue;
            }
            // column i of U⁻¹, w ↦ Σ_j w_j(Φ) e_j
            let mut coords = vec![0u32; dim];
            for (j, row) in form.left_inverse.iter().enumerate() {
                let m = poly_at_matrix(&row[i], &space.action, &fq);
                for (k, c) in coords.iter_mut().enumerate() {
                    *c = fq.add(*c, m.get(k, j));
                }
            }
            generators.push((coords, d.clone()));
        }
        let factors = InvariantFactors::new(form.diagonal).strip_units();
        Ok(TorsionModule {
            phi: phi.clone(),
            level: level.clone(),
            space,
            factors,
            generators,
        })
    }

    pub fn module(&self) -> &DrinfeldModule {
        &self.phi
    }

    pub fn level(&self) -> &Poly {
        &self.level
    }

    /// m with ambient field F_{q^m}.
    pub fn ext_degree(&self) -> usize {
        self.space.ext_degree
    }

    pub fn field(&self) -> &FieldRef {
        &self.space.field
    }

    /// F_q-basis of φ[a].
    pub fn basis(&self) -> &[FieldElement] {
        &self.space.basis
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    /// Matrix of φ_T over F_q in [`TorsionModule::basis`] (column j is the
    /// image of basis element j).
    pub fn action(&self) -> &Matrix {
        &self.space.action
    }

    /// Invariant factors of φ[a] as an A-module, units removed.
    pub fn module_structure(&self) -> &InvariantFactors {
        &self.factors
    }

    /// F_q-coordinates of `x` in the basis, or `None` if x ∉ φ[a].
    pub fn coordinates(&self, x: &FieldElement) -> Option<Vec<u32>> {
        if x.field() != &self.space.field {
            return None;
        }
        self.space.coordinates(x)
    }

    pub fn element(&self, coords: &[u32]) -> FieldElement {
        self.space.element(coords)
    }

    /// Cyclic generators in F_q-coordinates and their annihilators.
    pub fn generators(&self) -> impl Iterator<Item = (FieldElement, &Poly)> + '_ {
        self.generators
            .iter()
            .map(|(c, d)| (self.space.element(c), d))
    }

    /// det(x·I − U) over A/(level) where U is the matrix of `u` on the free
    /// A/(level)-module φ[level], returned as reduced x-coefficients
    /// (ascending, monic). The level must be a power of a prime other than
    /// the characteristic.
    pub fn endo_charpoly_mod(&self, u: &SkewPoly) -> Result<Vec<Poly>> {
        let fq = self.phi.fq().clone();
        let (char_prime, _) = self.phi.characteristic();
        if !self.level.gcd(char_prime).is_one() {
            return Err(Error::LevelNotCoprime);
        }
        if !crate::endo::is_endomorphism(&self.phi, u)? {
            return Err(Error::NotEndomorphism);
        }
        let r = self.generators.len();
        let level = self.level.monic();
        if self.generators.iter().any(|(_, d)| d != &level)
            || r * self.level.degree().unwrap() != self.dimension()
        {
            return Err(Error::NotPrimePower);
        }
        let dim = self.dimension();
        let deg = self.level.degree().unwrap();
        // F_q-basis {Φ^k g_j}, ordered j-major
        let mut cols = Vec::with_capacity(dim);
        for (g, _) in &self.generators {
            let mut v = g.clone();
            for _ in 0..deg {
                cols.push(v.clone());
                v = self.space.action.mul_vec(&v, &fq);
            }
        }
        let change = Matrix::from_columns(dim, &cols);
        let u_coeffs = u
            .coeffs()
            .iter()
            .map(|c| embed(c, &self.space.field))
            .collect::<Result<Vec<_>>>()?;
        let step = fq.degree() as usize;
        let mut matrix = vec![vec![Poly::zero(&fq); r]; r];
        for (i, (g, _)) in self.generators.iter().enumerate() {
            let image = eval_embedded(&u_coeffs, step, &self.space.element(g));
            let coords = self
                .space
                .coordinates(&image)
                .ok_or_else(|| Error::Internal("u does not preserve φ[a]".into()))?;
            let local = change
                .solve(&coords, &fq)
                .ok_or_else(|| Error::Internal("generators do not span".into()))?;
            for (j, row) in matrix.iter_mut().enumerate() {
                row[i] = Poly::from_coeffs(&fq, local[j * deg..(j + 1) * deg].to_vec());
            }
        }
        Ok(charpoly_mod(&matrix, &self.level))
    }
}

/// det(x·I − M) over A/(modulus) by Berkowitz's division-free algorithm;
/// ascending coefficients.
fn charpoly_mod(m: &[Vec<Poly>], modulus: &Poly) -> Vec<Poly> {
    let field = modulus.field().clone();
    let zero = Poly::zero(&field);
    let mul = |a: &Poly, b: &Poly| (a * b).rem(modulus);
    // descending coefficients of the leading principal charpoly
    let mut current = vec![Poly::one(&field)];
    for k in 0..m.len() {
        let a = &m[k][k];
        let row: Vec<&Poly> = (0..k).map(|j| &m[k][j]).collect();
        let mut col: Vec<Poly> = (0..k).map(|i| m[i][k].clone()).collect();
        // first column of the Toeplitz matrix: 1, −a, −R·C, −R·M·C, …
        let mut toeplitz = vec![Poly::one(&field), (-a).rem(modulus)];
        for _ in 0..k {
            let rc = row
                .iter()
                .zip(&col)
                .fold(zero.clone(), |acc, (r, c)| &acc + &mul(r, c));
            toeplitz.push((-&rc).rem(modulus));
            col = (0..k)
                .map(|i| {
                    (0..k).fold(zero.clone(), |acc, j| &acc + &mul(&m[i][j], &col[j]))
                })
                .collect();
        }
        let mut next = vec![zero.clone(); current.len() + 1];
        for (i, out) in next.iter_mut().enumerate() {
            for (j, c) in current.iter().enumerate() {
                if i >= j {
                    *out = &*out + &mul(&toeplitz[i - j], c);
                }
            }
        }
        current = next;
    }
    current.reverse();
    current
}

/// The stabilized intersection of ker u with the 𝔩-power torsion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KernelData {
    /// The least e with φ[𝔩ᵉ] ∩ ker u = φ[𝔩^{e+1}] ∩ ker u.
    pub exponent: usize,
    /// dim_{F_q} of that intersection.
    pub dimension: usize,
}

/// Dimension of U_𝔩 = φ[𝔩^∞] ∩ ker u, computed inside the splitting field of
/// ker u (which is φ_T-stable since u is an endomorphism).
pub fn kernel_data(
    phi: &DrinfeldModule,
    u: &SkewPoly,
    prime: &Poly,
    caps: &Caps,
) -> Result<KernelData> {
    if u.is_zero() {
        return Err(Error::ZeroSkewPoly);
    }
    if prime.degree().unwrap_or(0) == 0 {
        return Err(Error::UnitLevel);
    }
    if !crate::endo::is_endomorphism(phi, u)? {
        return Err(Error::NotEndomorphism);
    }
    let (char_prime, _) = phi.characteristic();
    if &prime.monic() == char_prime && u.height() != Some(0) {
        return Err(Error::LevelNotCoprime);
    }
    let fq = phi.fq();
    let space = KernelSpace::new(phi, u, caps)?;
    let dim_of = |e: u32| {
        let m = poly_at_matrix(&prime.pow(e), &space.action, fq);
        space.dimension() - m.rank(fq)
    };
    let mut e = 1;
    let mut current = dim_of(1);
    loop {
        let next = dim_of(e as u32 + 1);
        if next == current {
            return Ok(KernelData {
                exponent: e,
                dimension: current,
            });
        }
        e += 1;
        current = next;
    }
}

#[cfg(test)]
mod tests;

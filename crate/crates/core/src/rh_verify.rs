//! The Riemann hypothesis checks on a Frobenius characteristic polynomial:
//! coefficient degree bounds, the ideal of the constant term, the absolute
//! value of the roots, and the Newton polygon at ∞.

use num_rational::Ratio;
use serde::Serialize;

use crate::drinfeld::DrinfeldModule;
use crate::endo::CharPoly;
use crate::error::{Error, Result};
use crate::polyring::{v_inf, Poly, Valuation};

/// ρ = deg m(T, 0) / deg_x m, so that |α|_* = q^ρ for every root α of m.
pub fn abs_star_exponent(m: &CharPoly) -> Result<Ratio<i64>> {
    let m0 = m.constant_term();
    let deg = m0.degree().ok_or(Error::ZeroConstantTerm)?;
    Ok(Ratio::new(deg as i64, m.degree() as i64))
}

/// One segment of a Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonSegment {
    #[serde(serialize_with = "serialize_ratio")]
    pub slope: Ratio<i64>,
    pub length: usize,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// Lower convex hull of the points (i, v_∞(aᵢ)) over the nonzero
/// x-coefficients of `p`, as segments with ascending slopes.
pub fn newton_slopes(p: &CharPoly) -> Vec<NewtonSegment> {
    let one = Poly::one(p.constant_term().field());
    let points: Vec<(i64, i64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| match v_inf(a, &one).expect("nonzero denominator") {
            Valuation::Finite(v) => Some((i as i64, v)),
            Valuation::Infinity => None,
        })
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
            if cross > 0 {
                break;
            }
            hull.pop();
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| NewtonSegment {
            slope: Ratio::new(w[1].1 - w[0].1, w[1].0 - w[0].0),
            length: (w[1].0 - w[0].0) as usize,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub pass: bool,
    pub witness: String,
}

impl CheckItem {
    fn new(pass: bool, witness: impl Into<String>) -> CheckItem {
        CheckItem {
            pass,
            witness: witness.into(),
        }
    }
}

/// Results of the Riemann hypothesis checks for one module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhReport {
    pub module: String,
    pub charpoly: String,
    pub minpoly: String,
    /// deg aᵢ ≤ ⌊(r − i)n/r⌋ for all i < r.
    pub bounds: CheckItem,
    /// (a₀) = (𝔭^{n/d}).
    pub a0: CheckItem,
    /// r·deg m(T, 0) = n·deg_x m.
    pub abs: CheckItem,
    /// One Newton segment of slope n/r and length r.
    pub newton: CheckItem,
    #[serde(serialize_with = "serialize_ratio")]
    pub rho: Ratio<i64>,
    pub slopes: Vec<NewtonSegment>,
    /// The Newton verdict equals the joint verdict of `bounds` and `abs`.
    pub forms_agree: bool,
}

impl RhReport {
    pub fn pass(&self) -> bool {
        self.items().all(|(_, item)| item.pass) && self.forms_agree
    }

    pub fn items(&self) -> impl Iterator<Item = (&'static str, &CheckItem)> {
        [
            ("bounds", &self.bounds),
            ("a0", &self.a0),
            ("abs", &self.abs),
            ("newton", &self.newton),
        ]
        .into_iter()
    }
}

/// Checks P = Σ aᵢxⁱ and its minimal polynomial m against the Riemann
/// hypothesis statements for φ over k = F_{qⁿ} of rank r.
pub fn check_rh(phi: &DrinfeldModule, p: &CharPoly, m: &CharPoly) -> Result<RhReport> {
    let n = phi.n();
    let r = phi.rank();
    let (char_prime, d) = phi.characteristic();
    if !n.is_multiple_of(d) {
        return Err(Error::Internal(format!("deg 𝔭 = {d} does not divide n = {n}")));
    }
    if p.degree() != r {
        return Err(Error::Internal(format!(
            "characteristic polynomial has x-degree {} for rank {r}",
            p.degree()
        )));
    }

    let violation = (0..r).find_map(|i| {
        let deg = p.coeff(i).degree()?;
        (deg * r > (r - i) * n).then(|| {
            format!("i={i}: deg a_{i} = {deg} > {}", (r - i) * n / r)
        })
    });
    let bounds = match violation {
        Some(w) => CheckItem::new(false, w),
        None => CheckItem::new(true, format!("deg a_i <= floor((r-i)*{n}/{r}) for all i")),
    };

    let target = char_prime.pow((n / d) as u32);
    let a0 = p.constant_term();
    let a0 = match a0.exact_div(&target) {
        Some(c) if c.degree() == Some(0) => {
            CheckItem::new(true, format!("a0 = {} * p^{}", c.coeff(0), n / d))
        }
        _ => CheckItem::new(false, format!("a0 = {a0} is not a unit times ({char_prime})^{}", n / d)),
    };

    let rho = abs_star_exponent(m)?;
    let expected = Ratio::new(n as i64, r as i64);
    let abs = CheckItem::new(rho == expected, format!("rho = {rho}, n/r = {expected}"));

    let slopes = newton_slopes(p);
    let single = slopes.len() == 1 && slopes[0].slope == expected && slopes[0].length == r;
    let described: Vec<String> = slopes
        .iter()
        .map(|s| format!("{}x{}", s.slope, s.length))
        .collect();
    let newton = CheckItem::new(single, format!("slopes [{}]", described.join(",")));
    let forms_agree = newton.pass == (bounds.pass && abs.pass);

    Ok(RhReport {
        module: phi.to_string(),
        charpoly: p.to_string(),
        minpoly: m.to_string(),
        bounds,
        a0,
        abs,
        newton,
        rho,
        slopes,
        forms_agree,
    })
}

//! The characteristic polynomial of the Frobenius π = τⁿ, computed directly
//! by relation search and independently by CRT over torsion modules.

use serde::Serialize;

use crate::drinfeld::DrinfeldModule;
use crate::endo::{char_polynomial, CharPoly, CharPolyKind};
use crate::error::{Error, Result};
use crate::polyring::{crt_reconstruct, irreducibles, Poly};
use crate::torsion::{Caps, TorsionModule};

/// P_{φ,π}(T, x) via the minimal polynomial of π in k{τ}.
pub fn frobenius_charpoly_direct(phi: &DrinfeldModule) -> Result<CharPoly> {
    Ok(char_polynomial(phi, &phi.frobenius())?.0)
}

/// A prime level that was passed over because of the caps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedPrime {
    pub prime: Poly,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtOutcome {
    pub charpoly: CharPoly,
    /// The primes used, in canonical order, with P mod each.
    pub residues: Vec<(Poly, Vec<Poly>)>,
    pub skipped: Vec<SkippedPrime>,
}

/// P_{φ,π}(T, x) reconstructed coefficient-wise from the characteristic
/// polynomials of π on φ[𝔩] for primes 𝔩 ≠ 𝔭 in canonical order, until
/// Σ deg 𝔩 ≥ n + 1. Primes whose torsion exceeds `caps` are skipped; no prime
/// of degree above n + 1 is tried.
pub fn frobenius_charpoly_crt(phi: &DrinfeldModule, caps: &Caps) -> Result<CrtOutcome> {
    let (char_prime, _) = phi.characteristic();
    let n = phi.n();
    let pi = phi.frobenius();
    let mut residues: Vec<(Poly, Vec<Poly>)> = Vec::new();
    let mut skipped = Vec::new();
    let mut total = 0;
    for ell in irreducibles(phi.fq()) {
        if total > n {
            break;
        }
        let deg = ell.degree().expect("irreducible");
        if deg > n + 1 {
            return Err(Error::CapExceeded {
                what: "CRT prime budget".into(),
                reached: total,
            });
        }
        if &ell == char_prime {
            continue;
        }
        let attempt = TorsionModule::new(phi, &ell, caps).and_then(|tm| tm.endo_charpoly_mod(&pi));
        match attempt {
            Ok(res) => {
                total += deg;
                residues.push((ell, res));
            }
            Err(e) if e.is_cap() => skipped.push(SkippedPrime {
                prime: ell,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    let r = phi.rank();
    let coeffs = (0..=r)
        .map(|i| {
            let pairs: Vec<(Poly, Poly)> = residues
                .iter()
                .map(|(ell, res)| (res[i].clone(), ell.clone()))
                .collect();
            crt_reconstruct(&pairs)
        })
        .collect::<Result<Vec<_>>>()?;
    let charpoly = CharPoly::new(coeffs, CharPolyKind::Characteristic { power: None })?;
    Ok(CrtOutcome {
        charpoly,
        residues,
        skipped,
    })
}

#[cfg(test)]
mod tests;

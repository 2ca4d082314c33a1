//! Exact arithmetic for Drinfeld modules over finite fields.
//!
//! The crate computes the characteristic polynomial of the Frobenius
//! endomorphism π = τⁿ of a Drinfeld module φ over k = F_{qⁿ} in two
//! independent ways (a relation search in k{τ} and CRT over explicit torsion
//! modules) and checks the Riemann hypothesis statements on the result:
//! the degree bounds on its coefficients, the ideal of the constant term,
//! and the absolute value of its roots through the Newton polygon at ∞.
//!
//! Layout, bottom-up:
//!
//! * [`ff`]: finite fields F_{p^s}, canonical moduli and embeddings.
//! * [`polyring`]: A = F_q[T], CRT, v_∞ and Smith normal form.
//! * [`skew`]: the skew polynomial ring k{τ}.
//! * [`drinfeld`]: Drinfeld modules and Anderson motive coordinates.
//! * [`endo`]: endomorphisms, minimal and characteristic polynomials.
//! * [`torsion`]: explicit a-torsion spaces and their A-module structure.
//! * [`frobenius`]: the two Frobenius characteristic polynomial algorithms.
//! * [`rh_verify`]: the checks themselves.

pub mod drinfeld;
pub mod endo;
pub mod error;
pub mod ff;
pub mod frobenius;
pub mod linalg;
pub mod polyring;
pub mod rh_verify;
pub mod skew;
pub mod torsion;

pub use drinfeld::{DrinfeldModule, KPoly};
pub use endo::{
    char_polynomial, char_polynomial_from_minimal, is_endomorphism, minimal_polynomial, swap_scalar,
    swapped_minimal_polynomial, CharPoly, CharPolyKind,
};
pub use error::{Error, Result};
pub use ff::{embed, make_extension, minpoly_over_subfield, FieldDescriptor, FieldElement, FieldRef, Fq};
pub use frobenius::{frobenius_charpoly_crt, frobenius_charpoly_direct, CrtOutcome, SkippedPrime};
pub use polyring::{crt_reconstruct, invariant_factors, irreducibles, v_inf, InvariantFactors, Poly, Valuation};
pub use rh_verify::{abs_star_exponent, check_rh, newton_slopes, CheckItem, NewtonSegment, RhReport};
pub use skew::{SkewPoly, TauProfile};
pub use torsion::{kernel_data, Caps, KernelData, TorsionModule};

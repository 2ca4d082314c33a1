//! The per-module checks run by the harness.

use std::fmt;
use std::str::FromStr;

use drinfeld_core::{
    char_polynomial, check_rh, frobenius_charpoly_crt, irreducibles, kernel_data, swap_scalar,
    swapped_minimal_polynomial, Caps, CharPoly, DrinfeldModule, Error, Poly, SkewPoly,
    TorsionModule,
};
use serde::{Deserialize, Serialize};

use crate::sample::{random_poly, sample_rng, Purpose};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Bounds,
    A0,
    Abs,
    Newton,
    Agreement,
    TorsionStructure,
    Prop32,
    Prop33,
    Degdet,
    Switch,
}

impl Check {
    /// Every check, in report order.
    pub const ALL: [Check; 10] = [
        Check::Bounds,
        Check::A0,
        Check::Abs,
        Check::Newton,
        Check::Agreement,
        Check::TorsionStructure,
        Check::Prop32,
        Check::Prop33,
        Check::Degdet,
        Check::Switch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Bounds => "bounds",
            Check::A0 => "a0",
            Check::Abs => "abs",
            Check::Newton => "newton",
            Check::Agreement => "agreement",
            Check::TorsionStructure => "torsion-structure",
            Check::Prop32 => "prop32",
            Check::Prop33 => "prop33",
            Check::Degdet => "degdet",
            Check::Switch => "switch",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Check, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    pub witness: String,
}

impl Verdict {
    pub fn pass(witness: impl Into<String>) -> Verdict {
        Verdict { pass: true, skipped: false, witness: witness.into() }
    }

    pub fn fail(witness: impl Into<String>) -> Verdict {
        Verdict { pass: false, skipped: false, witness: witness.into() }
    }

    pub fn skip(reason: impl fmt::Display) -> Verdict {
        Verdict { pass: false, skipped: true, witness: format!("skipped: {reason}") }
    }

    /// A verdict for an error raised while checking: skipped on caps,
    /// failed otherwise.
    pub fn from_error(e: &Error) -> Verdict {
        if e.is_cap() {
            Verdict::skip(e)
        } else {
            Verdict::fail(format!("error: {e}"))
        }
    }
}

/// Collects the outcomes of the sub-checks of one check: the first failure
/// wins, then the first skip, then the pass summary.
struct Tally {
    failure: Option<String>,
    skip: Option<String>,
    passed: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally { failure: None, skip: None, passed: Vec::new() }
    }

    fn record(&mut self, label: String, outcome: Result<Result<String, String>, Error>) {
        match outcome {
            Ok(Ok(w)) => self.passed.push(format!("{label}: {w}")),
            Ok(Err(w)) => {
                self.failure.get_or_insert(format!("{label}: {w}"));
            }
            Err(e) if e.is_cap() => {
                self.skip.get_or_insert(format!("{label}: {e}"));
            }
            Err(e) => {
                self.failure.get_or_insert(format!("{label}: error: {e}"));
            }
        }
    }

    fn verdict(self) -> Verdict {
        if let Some(w) = self.failure {
            Verdict::fail(w)
        } else if let Some(w) = self.skip {
            Verdict::skip(w)
        } else {
            Verdict::pass(self.passed.join("; "))
        }
    }
}

/// Everything the checks of one sample share.
pub struct Subject<'a> {
    pub phi: &'a DrinfeldModule,
    pub charpoly: &'a CharPoly,
    pub minpoly: &'a CharPoly,
    pub caps: &'a Caps,
    pub seed: u64,
    pub index: usize,
}

fn expect(ok: bool, witness: String) -> Result<String, String> {
    if ok {
        Ok(witness)
    } else {
        Err(witness)
    }
}

fn show_degree(d: Option<usize>) -> String {
    d.map_or_else(|| "-inf".into(), |v| v.to_string())
}

fn primes_up_to(phi: &DrinfeldModule, degree: usize) -> Vec<Poly> {
    let (char_prime, _) = phi.characteristic();
    irreducibles(phi.fq())
        .take_while(|l| l.degree() <= Some(degree))
        .filter(|l| l != char_prime)
        .collect()
}

impl Subject<'_> {
    fn rng(&self, purpose: Purpose) -> rand_chacha::ChaCha8Rng {
        sample_rng(self.seed, self.phi.q(), self.phi.n(), self.phi.rank(), self.index, purpose)
    }

    /// Runs the selected checks, in report order.
    pub fn run(&self, selected: &[Check]) -> Vec<(Check, Verdict)> {
        let needs_rh = selected
            .iter()
            .any(|c| matches!(c, Check::Bounds | Check::A0 | Check::Abs | Check::Newton));
        let rh = needs_rh.then(|| check_rh(self.phi, self.charpoly, self.minpoly));
        selected
            .iter()
            .map(|&check| {
                let verdict = match (check, &rh) {
                    (Check::Bounds | Check::A0 | Check::Abs | Check::Newton, Some(Err(e))) => {
                        Verdict::from_error(e)
                    }
                    (Check::Newton, Some(Ok(report))) => {
                        let item = &report.newton;
                        if report.forms_agree {
                            Verdict { pass: item.pass, skipped: false, witness: item.witness.clone() }
                        } else {
                            Verdict::fail(format!(
                                "{}; newton verdict disagrees with bounds and abs",
                                item.witness
                            ))
                        }
                    }
                    (Check::Bounds | Check::A0 | Check::Abs, Some(Ok(report))) => {
                        let (_, item) = report
                            .items()
                            .find(|(name, _)| *name == check.name())
                            .expect("report item");
                        Verdict { pass: item.pass, skipped: false, witness: item.witness.clone() }
                    }
                    (Check::Agreement, _) => self.agreement(),
                    (Check::TorsionStructure, _) => self.torsion_structure(),
                    (Check::Prop32, _) => self.prop32(),
                    (Check::Prop33, _) => self.prop33(),
                    (Check::Degdet, _) => self.degdet(),
                    (Check::Switch, _) => self.switch(),
                    (_, None) => unreachable!("rh report computed for rh checks"),
                };
                (check, verdict)
            })
            .collect()
    }

    fn agreement(&self) -> Verdict {
        match frobenius_charpoly_crt(self.phi, self.caps) {
            Ok(out) => {
                let primes: Vec<String> = out.residues.iter().map(|(l, _)| l.to_string()).collect();
                let mut witness = format!("primes [{}]", primes.join(" "));
                if !out.skipped.is_empty() {
                    let skipped: Vec<String> = out.skipped.iter().map(|s| s.prime.to_string()).collect();
                    witness.push_str(&format!(", skipped [{}]", skipped.join(" ")));
                }
                if &out.charpoly == self.charpoly {
                    Verdict::pass(witness)
                } else {
                    Verdict::fail(format!("{witness}: crt gives {}", out.charpoly))
                }
            }
            Err(e) => Verdict::from_error(&e),
        }
    }

    /// φ[𝔩] ≅ (A/𝔩)^r for 𝔩 ≠ 𝔭 of degree 1, dim φ[𝔭] = (r − H)·d, and
    /// h(φ_a) = H·v_𝔭(a)·d for a random a with v_𝔭(a) ≤ 2.
    fn torsion_structure(&self) -> Verdict {
        let phi = self.phi;
        let r = phi.rank();
        let (char_prime, d) = phi.characteristic();
        let height = phi.height();
        let mut tally = Tally::new();
        for ell in primes_up_to(phi, 1) {
            let outcome = TorsionModule::new(phi, &ell, self.caps).map(|tm| {
                let found = tm.module_structure().strip_units();
                let ok = found.len() == r && found.factors().iter().all(|f| f == &ell);
                expect(ok, format!("invariant factors ({found})"))
            });
            tally.record(format!("phi[{ell}]"), outcome);
        }
        let outcome = TorsionModule::new(phi, char_prime, self.caps).map(|tm| {
            let dim = tm.dimension();
            expect(dim == (r - height) * d, format!("dim {dim}, (r-H)d = {}", (r - height) * d))
        });
        tally.record(format!("phi[{char_prime}]"), outcome);

        let mut rng = self.rng(Purpose::Height);
        let b = random_poly(&mut rng, phi.fq(), 1);
        let v = rand::Rng::gen_range(&mut rng, 0..=2u32);
        let a = &b * &char_prime.pow(v);
        let outcome = phi.phi_of(&a).map(|u| {
            let expected = height * a.valuation_at(char_prime) * d;
            let h = u.height();
            expect(h == Some(expected), format!("h = {}, H v(a) d = {expected}", show_degree(h)))
        });
        tally.record(format!("a={a}"), outcome);
        tally.verdict()
    }

    /// The characteristic polynomial of π on φ[𝔩] is P mod 𝔩 for every
    /// 𝔩 ≠ 𝔭 of degree at most 2.
    fn prop32(&self) -> Verdict {
        let pi = self.phi.frobenius();
        let mut tally = Tally::new();
        for ell in primes_up_to(self.phi, 2) {
            let outcome = TorsionModule::new(self.phi, &ell, self.caps)
                .and_then(|tm| tm.endo_charpoly_mod(&pi))
                .map(|found| {
                    let expected = self.charpoly.reduce_mod(&ell);
                    let show = |v: &[Poly]| v.iter().map(Poly::to_string).collect::<Vec<_>>().join("|");
                    expect(found == expected, format!("torsion {} vs P mod l {}", show(&found), show(&expected)))
                });
            tally.record(format!("l={ell}"), outcome);
        }
        tally.verdict()
    }

    /// v_𝔩(det u)·deg 𝔩 = dim U_𝔩 for u ∈ {φ_𝔩, φ_𝔩², π} and 𝔩 ≠ 𝔭 of degree 1.
    fn prop33(&self) -> Verdict {
        let phi = self.phi;
        let mut tally = Tally::new();
        for ell in primes_up_to(phi, 1) {
            let det_pi = if phi.rank().is_multiple_of(2) {
                self.charpoly.constant_term().clone()
            } else {
                -self.charpoly.constant_term()
            };
            let cases: [(&str, Result<(SkewPoly, Poly), Error>); 3] = [
                ("phi_l", phi.phi_of(&ell).and_then(|u| Ok((u.clone(), char_polynomial(phi, &u)?.1)))),
                (
                    "phi_l^2",
                    phi.phi_of(&ell.pow(2)).and_then(|u| Ok((u.clone(), char_polynomial(phi, &u)?.1))),
                ),
                ("pi", Ok((phi.frobenius(), det_pi))),
            ];
            for (name, case) in cases {
                let outcome = case.and_then(|(u, det)| {
                    let data = kernel_data(phi, &u, &ell, self.caps)?;
                    let lhs = det.valuation_at(&ell) * ell.degree().unwrap_or(0);
                    Ok(expect(
                        lhs == data.dimension,
                        format!("v(det) deg l = {lhs}, dim = {}", data.dimension),
                    ))
                });
                tally.record(format!("l={ell} u={name}"), outcome);
            }
        }
        tally.verdict()
    }

    /// deg_T det u = deg_τ u for u ∈ {φ_a, π, π + φ_a, φ_a·π} with a random
    /// of degree at most 2.
    fn degdet(&self) -> Verdict {
        let phi = self.phi;
        let mut rng = self.rng(Purpose::Degdet);
        let a = random_poly(&mut rng, phi.fq(), 2);
        let mut tally = Tally::new();
        let pi = phi.frobenius();
        let phi_a = match phi.phi_of(&a) {
            Ok(u) => u,
            Err(e) => return Verdict::from_error(&e),
        };
        let cases = [
            ("phi_a", phi_a.clone()),
            ("pi", pi.clone()),
            ("pi+phi_a", &pi + &phi_a),
            ("phi_a*pi", &phi_a * &pi),
        ];
        for (name, u) in cases {
            // π + φ_a vanishes when φ_a = −π; det 0 has no degree
            if u.is_zero() {
                continue;
            }
            let outcome = char_polynomial(phi, &u).map(|(_, det)| {
                let (lhs, rhs) = (det.degree(), u.degree());
                expect(lhs == rhs, format!("deg det {}, deg tau {}", show_degree(lhs), show_degree(rhs)))
            });
            tally.record(format!("a={a} u={name}"), outcome);
        }
        tally.verdict()
    }

    /// The minimal polynomial of φ_T over ψ with ψ_x = π is c·m(x, T).
    fn switch(&self) -> Verdict {
        let pi = self.phi.frobenius();
        match swapped_minimal_polynomial(self.phi, &pi) {
            Ok(swapped) => match swap_scalar(self.minpoly, &swapped) {
                Some(c) => Verdict::pass(format!("swapped = {c} * m")),
                None => Verdict::fail(format!("swapped {swapped} is not a multiple of m = {}", self.minpoly)),
            },
            Err(e) => Verdict::from_error(&e),
        }
    }
}

use std::sync::Arc;

use super::Poly;
use crate::ff::Fq;

/// Monic irreducibles of F_q[T] in canonical order: ascending degree, then
/// ascending lower coefficients read as a base-q integer (constant term
/// least significant). Infinite.
pub fn irreducibles(field: &Arc<Fq>) -> Irreducibles {
    Irreducibles {
        field: field.clone(),
        found: Vec::new(),
        degree: 1,
        counter: 0,
    }
}

pub struct Irreducibles {
    field: Arc<Fq>,
    found: Vec<Poly>,
    degree: usize,
    counter: u64,
}

impl Irreducibles {
    fn candidate(&self) -> Poly {
        let q = self.field.size() as u64;
        let mut coeffs = Vec::with_capacity(self.degree + 1);
        let mut rest = self.counter;
        for _ in 0..self.degree {
            coeffs.push((rest % q) as u32);
            rest /= q;
        }
        coeffs.push(1);
        Poly::from_coeffs(&self.field, coeffs)
    }
}

impl Iterator for Irreducibles {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        let q = self.field.size() as u64;
        loop {
            if self.counter == q.pow(self.degree as u32) {
                self.degree += 1;
                self.counter = 0;
            }
            let cand = self.candidate();
            self.counter += 1;
            let half = self.degree / 2;
            let reducible = self
                .found
                .iter()
                .take_while(|f| f.degree().unwrap() <= half)
                .any(|f| cand.rem(f).is_zero());
            if !reducible {
                self.found.push(cand.clone());
                return Some(cand);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_trial_division_through_degree_four() {
        for q in [2u64, 3, 4] {
            let f = Fq::get(q).unwrap();
            let listed: Vec<Poly> = irreducibles(&f)
                .take_while(|p| p.degree().unwrap() <= 4)
                .collect();
            let mut brute = Vec::new();
            for d in 1..=4usize {
                for idx in 0..q.pow(d as u32) {
                    let mut c = Vec::new();
                    let mut rest = idx;
                    for _ in 0..d {
                        c.push((rest % q) as u32);
                        rest /= q;
                    }
                    c.push(1);
                    let p = Poly::from_coeffs(&f, c);
                    if p.is_irreducible() {
                        brute.push(p);
                    }
                }
            }
            assert_eq!(listed, brute, "q={q}");
        }
    }
}

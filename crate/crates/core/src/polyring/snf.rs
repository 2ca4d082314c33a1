use std::fmt;
use std::sync::Arc;

use super::Poly;
use crate::ff::Fq;

/// Monic invariant factors d₁ | d₂ | … of a matrix over F_q[T]. Unit factors
/// are kept, so the count equals the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    factors: Vec<Poly>,
}

impl InvariantFactors {
    pub fn new(factors: Vec<Poly>) -> InvariantFactors {
        InvariantFactors { factors }
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The same chain with the constant factors removed.
    pub fn strip_units(&self) -> InvariantFactors {
        InvariantFactors {
            factors: self
                .factors
                .iter()
                .filter(|f| !f.is_unit())
                .cloned()
                .collect(),
        }
    }

    /// Generator of the fitting ideal.
    pub fn product(&self, field: &Arc<Fq>) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(field), |acc, f| &acc * f)
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.factors.windows(2).all(|w| w[0].divides(&w[1]))
    }
}

/// Factors separated by ";", e.g. "0,1;0,1" for (T, T).
impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(Poly::to_string).collect();
        write!(f, "{}", parts.join(";"))
    }
}

pub(crate) struct SmithForm {
    /// Diagonal entries a[t][t], t < min(rows, cols); zero past the rank.
    pub diagonal: Vec<Poly>,
    /// Inverse of the accumulated row transform U (U·M·V = diag).
    pub left_inverse: Vec<Vec<Poly>>,
}

pub fn invariant_factors(m: &[Vec<Poly>]) -> InvariantFactors {
    let Some(field) = m.iter().flatten().next().map(|p| p.field().clone()) else {
        return InvariantFactors::new(Vec::new());
    };
    let form = smith_form(m, &field);
    InvariantFactors::new(
        form.diagonal
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect(),
    )
}

/// Smith normal form. The pivot is always a nonzero entry of least degree in
/// the remaining block, ties broken by least (row, column).
pub(crate) fn smith_form(m: &[Vec<Poly>], field: &Arc<Fq>) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut uinv: Vec<Vec<Poly>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| {
                    if i == j {
                        Poly::one(field)
                    } else {
                        Poly::zero(field)
                    }
                })
                .collect()
        })
        .collect();

    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let mut pivot: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, e) in row.iter().enumerate().skip(t) {
                    if let Some(d) = e.degree() {
                        if pivot.is_none_or(|(_, _, best)| d < best) {
                            pivot = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else {
                let diagonal = (0..steps).map(|k| a[k][k].clone()).collect();
                return SmithForm {
                    diagonal,
                    left_inverse: uinv,
                };
            };
            a.swap(t, pi);
            for row in uinv.iter_mut() {
                row.swap(t, pi);
            }
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].divmod(&a[t][t]).expect("pivot is nonzero");
                for j in t..cols {
                    let sub = &q * &a[t][j];
                    a[i][j] = &a[i][j] - &sub;
                }
                for row in uinv.iter_mut() {
                    let add = &q * &row[i];
                    row[t] = &row[t] + &add;
                }
                clean &= r.is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].divmod(&a[t][t]).expect("pivot is nonzero");
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] = &row[j] - &sub;
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[t][t].divides(&a[i][j])));
            if let Some(i) = offender {
                // row_t += row_i; in U⁻¹ column i -= column t
                for j in t..cols {
                    let add = a[i][j].clone();
                    a[t][j] = &a[t][j] + &add;
                }
                for row in uinv.iter_mut() {
                    let sub = row[t].clone();
                    row[i] = &row[i] - &sub;
                }
                continue;
            }
            break;
        }
        let lead = a[t][t].leading().expect("pivot is nonzero");
        if lead != 1 {
            let inv = field.inv(lead);
            for j in t..cols {
                a[t][j] = a[t][j].scale(inv);
            }
            for row in uinv.iter_mut() {
                row[t] = row[t].scale(lead);
            }
        }
    }
    let diagonal = (0..steps).map(|k| a[k][k].clone()).collect();
    SmithForm {
        diagonal,
        left_inverse: uinv,
    }
}

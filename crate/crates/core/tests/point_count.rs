//! Independent oracle: the F_q[T]-module k under φ has Fitting ideal generated
//! by P(T, 1). For prime q the characteristic polynomial of φ_T acting on k as
//! an F_q-matrix is computed here by Berkowitz and compared with P(T, 1) made monic.

use drinfeld_core::{frobenius_charpoly_crt, frobenius_charpoly_direct, Caps, DrinfeldModule, FieldElement, Poly};
use proptest::prelude::*;

/// Coefficients of det(xI − a) mod p, lowest degree first (division free).
fn berkowitz(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut v = vec![1u64];
    for k in 0..n {
        // column of the Toeplitz factor: 1, −a_kk, −R C, −R A C, …
        let mut col = vec![1, (p - a[k][k]) % p];
        let mut w: Vec<u64> = (0..k).map(|i| a[i][k]).collect();
        for _ in 0..k {
            let rc = (0..k).map(|j| a[k][j] * w[j] % p).sum::<u64>() % p;
            col.push((p - rc) % p);
            w = (0..k).map(|i| (0..k).map(|j| a[i][j] * w[j] % p).sum::<u64>() % p).collect();
        }
        v = (0..k + 2)
            .map(|i| (0..=i.min(k)).map(|j| col[i - j] * v[j] % p).sum::<u64>() % p)
            .collect();
    }
    v.reverse();
    v
}

fn phi_t_matrix(phi: &DrinfeldModule) -> Vec<Vec<u64>> {
    let field = phi.field();
    let (p, n) = (phi.q(), field.degree());
    let image = |x: &FieldElement| {
        let mut acc = field.zero();
        for (i, g) in phi.coefficients().iter().enumerate() {
            acc = &acc + &(g * &x.pow(p.pow(i as u32)));
        }
        acc
    };
    let mut rows = vec![vec![0u64; n]; n];
    for j in 0..n {
        let mut unit = vec![0u32; n];
        unit[j] = 1;
        let y = image(&field.element(&unit));
        for (i, &c) in y.coeffs().iter().enumerate() {
            rows[i][j] = u64::from(c);
        }
    }
    rows
}

fn module_strategy() -> impl Strategy<Value = DrinfeldModule> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=3, 1usize..=3)
        .prop_flat_map(|(q, n, r)| (Just(q), Just(n), prop::collection::vec(any::<u64>(), r + 1)))
        .prop_map(|(q, n, raw)| {
            let probe = DrinfeldModule::parse(&format!("q={q},n={n},g=0;1")).unwrap();
            let field = probe.field().clone();
            let size = field.size().unwrap();
            let last = raw.len() - 1;
            let g = raw
                .iter()
                .enumerate()
                .map(|(i, &s)| {
                    let idx = if i == last { 1 + s % (size - 1) } else { s % size };
                    field.element_from_index(idx)
                })
                .collect();
            DrinfeldModule::new(q, n, g).unwrap()
        })
}

fn value_at_one(phi: &DrinfeldModule, coeffs: &[Poly]) -> Poly {
    let p = phi.q() as u32;
    let len = coeffs.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let summed = (0..len)
        .map(|i| coeffs.iter().map(|c| c.coeff(i)).sum::<u32>() % p)
        .collect();
    Poly::from_coeffs(phi.fq(), summed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn fitting_ideal_of_rational_points(phi in module_strategy()) {
        let p = phi.q();
        let charpoly = frobenius_charpoly_direct(&phi).unwrap();
        let at_one = value_at_one(&phi, charpoly.coeffs());
        let oracle: Vec<u32> = berkowitz(&phi_t_matrix(&phi), p).into_iter().map(|c| c as u32).collect();
        prop_assert_eq!(at_one.monic(), Poly::from_coeffs(phi.fq(), oracle), "{}", phi);
    }

    #[test]
    fn methods_agree(phi in module_strategy()) {
        let direct = frobenius_charpoly_direct(&phi).unwrap();
        let caps = Caps { max_field_bits: 4096, max_ext_multiple: 800 };
        let crt = frobenius_charpoly_crt(&phi, &caps).unwrap();
        prop_assert!(crt.skipped.is_empty());
        prop_assert!(crt.charpoly == direct, "{}: {} vs {}", phi, crt.charpoly, direct);
    }
}

#[test]
fn berkowitz_small_cases() {
    // det(xI − [[1,2],[3,4]]) = x² − 5x − 2 over F_7
    assert_eq!(berkowitz(&[vec![1, 2], vec![3, 4]], 7), vec![5, 2, 1]);
    assert_eq!(berkowitz(&[vec![2]], 3), vec![1, 1]);
}

#[test]
fn frozen_fixtures() {
    // values cross-checked by the point-count oracle above, then frozen
    for (text, expected) in [
        ("q=2,n=1,g=1;1;1", "1,1|1|1"),
        ("q=2,n=2,g=1;1", "1,0,1|1"),
        ("q=3,n=1,g=1;1", "1,2|1"),
    ] {
        let phi = DrinfeldModule::parse(text).unwrap();
        assert_eq!(frobenius_charpoly_direct(&phi).unwrap().to_string(), expected, "{text}");
    }
}

use proptest::prelude::*;

use super::*;
use crate::endo::char_polynomial;
use crate::ff::make_extension;

fn module(text: &str) -> DrinfeldModule {
    DrinfeldModule::parse(text).unwrap()
}

fn poly(phi: &DrinfeldModule, text: &str) -> Poly {
    Poly::parse(phi.fq(), text).unwrap()
}

fn factors(tm: &TorsionModule) -> Vec<String> {
    tm.module_structure()
        .factors()
        .iter()
        .map(Poly::to_string)
        .collect()
}

fn random_module(q: u64, n: usize, r: usize, seeds: &[u64]) -> DrinfeldModule {
    let fq = Fq::get(q).unwrap();
    let k = make_extension(fq.characteristic(), fq.degree() as usize * n).unwrap();
    let size = k.size().unwrap();
    let mut g: Vec<FieldElement> = (0..=r)
        .map(|i| k.element_from_index(seeds[i] % size))
        .collect();
    if g[r].is_zero() {
        g[r] = k.one();
    }
    DrinfeldModule::new(q, n, g).unwrap()
}

#[test]
fn t_torsion_lives_in_f8() {
    let phi = module("q=2,n=1,g=1;1;1");
    let tm = TorsionModule::new(&phi, &poly(&phi, "0,1"), &Caps::default()).unwrap();
    assert_eq!(tm.ext_degree(), 3);
    assert_eq!(tm.dimension(), 2);
    // the nonzero elements are exactly the roots of x³ + x + 1
    let f8 = tm.field().clone();
    let mut roots: Vec<FieldElement> = f8
        .elements()
        .filter(|x| (&(&x.pow(3) + x) + &f8.one()).is_zero())
        .collect();
    let mut torsion: Vec<FieldElement> = (1..4).map(|i| tm.element(&[i & 1, i >> 1])).collect();
    roots.sort_by(|a, b| a.canonical_cmp(b));
    torsion.sort_by(|a, b| a.canonical_cmp(b));
    assert_eq!(roots, torsion);
    assert_eq!(factors(&tm), ["0,1", "0,1"]);
}

#[test]
fn characteristic_torsion_is_one_dimensional() {
    let phi = module("q=2,n=1,g=1;1;1");
    let tm = TorsionModule::new(&phi, &poly(&phi, "1,1"), &Caps::default()).unwrap();
    assert_eq!(tm.dimension(), 1);
    assert!(tm.basis()[0].is_one());
    assert_eq!(factors(&tm), ["1,1"]);
}

#[test]
fn t_squared_torsion_structure() {
    let phi = module("q=2,n=1,g=1;1;1");
    let tm = TorsionModule::new(&phi, &poly(&phi, "0,0,1"), &Caps::default()).unwrap();
    assert_eq!(tm.dimension(), 4);
    assert_eq!(factors(&tm), ["0,0,1", "0,0,1"]);
}

#[test]
fn unit_and_zero_levels_are_rejected() {
    let phi = module("q=2,n=1,g=1;1;1");
    let caps = Caps::default();
    assert_eq!(
        TorsionModule::new(&phi, &poly(&phi, "1"), &caps).unwrap_err(),
        Error::UnitLevel
    );
    assert!(TorsionModule::new(&phi, &poly(&phi, "0"), &caps).is_err());
}

#[test]
fn frobenius_on_t_torsion() {
    let phi = module("q=2,n=1,g=1;1;1");
    let tm = TorsionModule::new(&phi, &poly(&phi, "0,1"), &Caps::default()).unwrap();
    let res = tm.endo_charpoly_mod(&phi.frobenius()).unwrap();
    let text: Vec<String> = res.iter().map(Poly::to_string).collect();
    assert_eq!(text, ["1", "1", "1"]);
}

#[test]
fn identity_and_phi_t_on_t_torsion() {
    let phi = module("q=2,n=1,g=1;1;1");
    let tm = TorsionModule::new(&phi, &poly(&phi, "0,1"), &Caps::default()).unwrap();
    let id: Vec<String> = tm
        .endo_charpoly_mod(&phi.one())
        .unwrap()
        .iter()
        .map(Poly::to_string)
        .collect();
    // (x − 1)² = x² + 1 over F_2
    assert_eq!(id, ["1", "0", "1"]);
    let t: Vec<String> = tm
        .endo_charpoly_mod(phi.phi_t())
        .unwrap()
        .iter()
        .map(Poly::to_string)
        .collect();
    assert_eq!(t, ["0", "0", "1"]);
}

#[test]
fn charpoly_mod_rejects_the_characteristic() {
    let phi = module("q=2,n=1,g=1;1;1");
    let tm = TorsionModule::new(&phi, &poly(&phi, "1,1"), &Caps::default()).unwrap();
    assert_eq!(
        tm.endo_charpoly_mod(&phi.frobenius()),
        Err(Error::LevelNotCoprime)
    );
}

#[test]
fn kernel_data_examples() {
    let phi = module("q=2,n=1,g=1;1;1");
    let caps = Caps::default();
    let t = poly(&phi, "0,1");
    assert_eq!(
        kernel_data(&phi, phi.phi_t(), &t, &caps).unwrap(),
        KernelData { exponent: 1, dimension: 2 }
    );
    assert_eq!(
        kernel_data(&phi, &phi.frobenius(), &t, &caps).unwrap(),
        KernelData { exponent: 1, dimension: 0 }
    );
    let ell = poly(&phi, "1,1,1");
    let phi_ell = phi.phi_of(&ell).unwrap();
    assert_eq!(
        kernel_data(&phi, &phi_ell, &ell, &caps).unwrap(),
        KernelData { exponent: 1, dimension: 4 }
    );
}

#[test]
fn kernel_data_of_a_square_stabilizes_later() {
    let phi = module("q=2,n=1,g=1;1;1");
    let t = poly(&phi, "0,1");
    let u = phi.phi_of(&t.pow(2)).unwrap();
    let data = kernel_data(&phi, &u, &t, &Caps::default()).unwrap();
    assert_eq!(data, KernelData { exponent: 2, dimension: 4 });
}

#[test]
fn caps_are_reported() {
    let phi = module("q=2,n=1,g=1;1;1");
    let tight = Caps {
        max_field_bits: 2,
        max_ext_multiple: 24,
    };
    let err = TorsionModule::new(&phi, &poly(&phi, "0,1"), &tight).unwrap_err();
    assert!(err.is_cap(), "{err}");
    let short = Caps {
        max_field_bits: 24,
        max_ext_multiple: 2,
    };
    let err = TorsionModule::new(&phi, &poly(&phi, "0,1"), &short).unwrap_err();
    assert!(matches!(err, Error::CapExceeded { .. }), "{err}");
}

#[test]
fn allows_field_counts_exactly() {
    let caps = Caps::default();
    assert!(caps.allows_field(2, 24));
    assert!(!caps.allows_field(2, 25));
    assert!(caps.allows_field(3, 15));
    assert!(!caps.allows_field(3, 16));
}

#[test]
fn frobenius_fixes_rational_torsion() {
    let phi = module("q=3,n=2,g=1;2;1");
    let (char_prime, _) = phi.characteristic();
    let caps = Caps::default();
    for ell in crate::polyring::irreducibles(phi.fq()).take(4) {
        if &ell == char_prime {
            continue;
        }
        let tm = TorsionModule::new(&phi, &ell, &caps).unwrap();
        // x ∈ k exactly when x^(qⁿ) = x, i.e. x^(p^{2}) = x for k = F_9
        for x in tm.basis().iter().filter(|x| &x.frobenius(2) == *x) {
            assert_eq!(&phi.frobenius().evaluate(x).unwrap(), x);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn torsion_dimension_and_structure_laws(
        q in prop::sample::select(vec![2u64, 3]),
        n in 1usize..=2,
        r in 1usize..=2,
        seeds in prop::collection::vec(any::<u64>(), 3),
    ) {
        let phi = random_module(q, n, r, &seeds);
        let caps = Caps { max_field_bits: 64, max_ext_multiple: 64 };
        let (char_prime, d) = phi.characteristic();
        let height = phi.height();
        let tp = TorsionModule::new(&phi, char_prime, &caps).unwrap();
        prop_assert_eq!(tp.dimension(), (r - height) * d);

        let (p, _) = char_polynomial(&phi, &phi.frobenius()).unwrap();
        for ell in crate::polyring::irreducibles(phi.fq()).take(3) {
            if &ell == char_prime {
                continue;
            }
            let tm = match TorsionModule::new(&phi, &ell, &caps) {
                Ok(tm) => tm,
                Err(e) if e.is_cap() => continue,
                Err(e) => panic!("{e}"),
            };
            prop_assert_eq!(tm.dimension(), r * ell.degree().unwrap());
            prop_assert_eq!(tm.module_structure().factors().to_vec(), vec![ell.clone(); r]);
            let phi_ell = phi.phi_of(&ell).unwrap();
            for b in tm.basis() {
                prop_assert!(phi_ell.evaluate(b).unwrap().is_zero());
            }
            let zero = poly_at_matrix(&ell, tm.action(), phi.fq());
            prop_assert!(zero.is_zero());
            prop_assert_eq!(tm.endo_charpoly_mod(&phi.frobenius()).unwrap(), p.reduce_mod(&ell));
        }
    }

    #[test]
    fn torsion_of_coprime_product_splits(
        n in 1usize..=2,
        seeds in prop::collection::vec(any::<u64>(), 3),
    ) {
        let phi = random_module(2, n, 2, &seeds);
        let caps = Caps { max_field_bits: 64, max_ext_multiple: 64 };
        let (char_prime, _) = phi.characteristic();
        let primes: Vec<Poly> = crate::polyring::irreducibles(phi.fq())
            .filter(|l| l != char_prime)
            .take(2)
            .collect();
        let product = &primes[0] * &primes[1];
        let combined = TorsionModule::new(&phi, &product, &caps);
        prop_assume!(combined.is_ok());
        let combined = combined.unwrap();
        // φ[ab] ≅ φ[a] ⊕ φ[b] ≅ (A/ab)^r
        prop_assert_eq!(combined.dimension(), 2 * product.degree().unwrap());
        prop_assert_eq!(combined.module_structure().factors().to_vec(), vec![product.clone(); 2]);
    }
}

use proptest::prelude::*;

use super::*;

fn module(text: &str) -> DrinfeldModule {
    DrinfeldModule::parse(text).unwrap()
}

fn poly(phi: &DrinfeldModule, text: &str) -> Poly {
    Poly::parse(phi.fq(), text).unwrap()
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

fn random_poly(fq: &Arc<Fq>, seeds: &[u32]) -> Poly {
    Poly::from_coeffs(fq, seeds.iter().map(|c| c % fq.size()).collect())
}

#[test]
fn text_round_trip_and_validation() {
    let phi = module("q=2,n=1,g=1;1;1");
    assert_eq!(phi.to_string(), "q=2,n=1,g=1;1;1");
    assert_eq!(phi.rank(), 2);
    assert!(DrinfeldModule::parse("q=2,n=1,g=1;1;0").is_err());
    assert!(DrinfeldModule::parse("q=2,n=1,g=1").is_err());
    assert!(DrinfeldModule::parse("q=6,n=1,g=1;1").is_err());
    assert!(DrinfeldModule::parse("q=2,g=1;1").is_err());
    // g₀ = z generates F_4 over F_2, which does not fit in n = 1
    let f4 = make_extension(2, 2).unwrap();
    let err = DrinfeldModule::new(2, 1, vec![f4.generator(), f4.one()]);
    assert!(err.is_err());
}

#[test]
fn phi_of_examples() {
    let phi = module("q=2,n=1,g=1;1;1");
    assert_eq!(&phi.phi_of(&poly(&phi, "0,1")).unwrap(), phi.phi_t());
    assert_eq!(phi.phi_of(&poly(&phi, "0,0,1")).unwrap().to_string(), "1;0;1;0;1");
    assert!(phi.phi_of(&poly(&phi, "1")).unwrap().is_one());
    let other = Poly::parse(&Fq::get(3).unwrap(), "0,1").unwrap();
    assert!(phi.phi_of(&other).is_err());
}

#[test]
fn characteristic_examples() {
    let phi = module("q=2,n=1,g=1;1;1");
    let (p, d) = phi.characteristic();
    assert_eq!((p.to_string(), d), ("1,1".to_string(), 1));
    let phi = module("q=2,n=2,g=0,1;1");
    let (p, d) = phi.characteristic();
    assert_eq!((p.to_string(), d), ("1,1,1".to_string(), 2));
    let phi = module("q=3,n=2,g=0;1;1");
    let (p, d) = phi.characteristic();
    assert_eq!((p.to_string(), d), ("0,1".to_string(), 1));
    assert!(phi.gamma(p).unwrap().is_zero());
}

#[test]
fn gamma_examples() {
    let phi = module("q=3,n=2,g=1,1;2;1");
    let g0 = phi.coefficients()[0].clone();
    assert_eq!(phi.gamma(&poly(&phi, "0,1")).unwrap(), g0);
    assert_eq!(phi.gamma(&poly(&phi, "0,0,1")).unwrap(), &g0 * &g0);
    assert_eq!(phi.gamma(&poly(&phi, "2")).unwrap(), phi.scalar(2).clone());
}

#[test]
fn height_examples() {
    assert_eq!(module("q=2,n=1,g=1;1;1").height(), 1);
    assert_eq!(module("q=2,n=1,g=0;0;1").height(), 2);
    assert_eq!(module("q=3,n=2,g=1,2;2,1").height(), 1);
}

#[test]
fn motive_examples() {
    let phi = module("q=2,n=1,g=1;1;1");
    let show = |u: &SkewPoly| -> Vec<String> {
        phi.motive_coordinates(u)
            .unwrap()
            .iter()
            .map(KPoly::to_string)
            .collect()
    };
    let tau = SkewPoly::tau_power(2, phi.field(), 1).unwrap();
    assert_eq!(show(&tau), ["0", "1"]);
    assert_eq!(show(phi.phi_t()), ["0;1", "0"]);
    let tau3 = SkewPoly::tau_power(2, phi.field(), 3).unwrap();
    assert_eq!(show(&tau3), ["1;1", "0;1"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn phi_is_a_ring_homomorphism(
        q in prop::sample::select(vec![2u64, 3, 4]),
        n in 1usize..=3,
        r in 1usize..=3,
        seeds in prop::collection::vec(any::<u64>(), 4),
        a in prop::collection::vec(any::<u32>(), 0..4),
        b in prop::collection::vec(any::<u32>(), 0..4),
    ) {
        let phi = random_module(q, n, r, &seeds);
        let a = random_poly(phi.fq(), &a);
        let b = random_poly(phi.fq(), &b);
        let (pa, pb) = (phi.phi_of(&a).unwrap(), phi.phi_of(&b).unwrap());
        prop_assert_eq!(phi.phi_of(&(&a + &b)).unwrap(), &pa + &pb);
        prop_assert_eq!(phi.phi_of(&(&a * &b)).unwrap(), &pa * &pb);
        if let Some(d) = a.degree() {
            prop_assert_eq!(pa.degree(), Some(r * d));
            prop_assert_eq!(pa.coeff(0), phi.gamma(&a).unwrap());
        }
    }

    #[test]
    fn height_law(
        q in prop::sample::select(vec![2u64, 3]),
        n in 1usize..=3,
        r in 1usize..=3,
        seeds in prop::collection::vec(any::<u64>(), 4),
        b in prop::collection::vec(any::<u32>(), 1..4),
        v in 0u32..=2,
    ) {
        let phi = random_module(q, n, r, &seeds);
        let (char_prime, d) = phi.characteristic();
        let b = random_poly(phi.fq(), &b);
        prop_assume!(!b.is_zero());
        let a = &b * &char_prime.pow(v);
        let expected = phi.height() * a.valuation_at(char_prime) * d;
        prop_assert_eq!(phi.phi_of(&a).unwrap().height(), Some(expected));
        prop_assert!(phi.height() >= 1 && phi.height() <= r);
    }

    #[test]
    fn motive_round_trip_and_linearity(
        q in prop::sample::select(vec![2u64, 3]),
        n in 1usize..=2,
        r in 1usize..=3,
        seeds in prop::collection::vec(any::<u64>(), 4),
        u_seeds in prop::collection::vec(any::<u64>(), 0..8),
        a in prop::collection::vec(any::<u32>(), 1..3),
    ) {
        let phi = random_module(q, n, r, &seeds);
        let k = phi.field().clone();
        let size = k.size().unwrap();
        let coeffs: Vec<FieldElement> = u_seeds.iter().map(|s| k.element_from_index(s % size)).collect();
        let u = SkewPoly::new(q, &k, coeffs).unwrap();
        let coords = phi.motive_coordinates(&u).unwrap();
        prop_assert_eq!(coords.len(), r);
        prop_assert_eq!(phi.from_motive_coordinates(&coords).unwrap(), u.clone());
        // T acts by right multiplication by φ_T, so a ∗ u = u·φ_a
        let a = random_poly(phi.fq(), &a);
        let moved = phi.motive_coordinates(&(&u * &phi.phi_of(&a).unwrap())).unwrap();
        let scaled: Vec<KPoly> = coords.iter().map(|c| phi.scale_coordinate(&a, c)).collect();
        prop_assert_eq!(moved, scaled);
    }
}

use super::*;

fn module(text: &str) -> DrinfeldModule {
    DrinfeldModule::parse(text).unwrap()
}

#[test]
fn direct_examples() {
    let cases = [
        ("q=2,n=1,g=1;1;1", "1,1|1|1"),
        ("q=2,n=2,g=1;1", "1,0,1|1"),
        ("q=2,n=1,g=0;1", "0,1|1"),
    ];
    for (text, expected) in cases {
        let p = frobenius_charpoly_direct(&module(text)).unwrap();
        assert_eq!(p.to_string(), expected, "{text}");
    }
}

#[test]
fn crt_reconstructs_rank_two_example() {
    let phi = module("q=2,n=1,g=1;1;1");
    let out = frobenius_charpoly_crt(&phi, &Caps::default()).unwrap();
    assert_eq!(out.charpoly.to_string(), "1,1|1|1");
    let primes: Vec<String> = out.residues.iter().map(|(l, _)| l.to_string()).collect();
    // T + 1 is the characteristic and is passed over
    assert_eq!(primes, ["0,1", "1,1,1"]);
    let mod_t: Vec<String> = out.residues[0].1.iter().map(Poly::to_string).collect();
    assert_eq!(mod_t, ["1", "1", "1"]);
    assert!(out.skipped.is_empty());
}

#[test]
fn crt_reconstructs_rank_one_example() {
    let phi = module("q=2,n=2,g=1;1");
    let out = frobenius_charpoly_crt(&phi, &Caps::default()).unwrap();
    assert_eq!(out.charpoly.to_string(), "1,0,1|1");
    let primes: Vec<String> = out.residues.iter().map(|(l, _)| l.to_string()).collect();
    assert_eq!(primes, ["0,1", "1,1,1"]);
}

#[test]
fn crt_skips_capped_primes() {
    let phi = module("q=2,n=1,g=1;1;1");
    let caps = Caps {
        max_field_bits: 2,
        max_ext_multiple: 24,
    };
    let err = frobenius_charpoly_crt(&phi, &caps).unwrap_err();
    assert!(err.is_cap(), "{err}");
}

#[test]
fn methods_agree_on_small_modules() {
    for text in [
        "q=3,n=1,g=1;1;2",
        "q=3,n=2,g=0,1;1;1",
        "q=4,n=1,g=0,1;1;1,1",
        "q=2,n=3,g=1,1;0;1;1",
    ] {
        let phi = module(text);
        let direct = frobenius_charpoly_direct(&phi).unwrap();
        let caps = Caps {
            max_field_bits: 64,
            max_ext_multiple: 64,
        };
        let crt = frobenius_charpoly_crt(&phi, &caps).unwrap();
        assert_eq!(direct, crt.charpoly, "{text}");
        assert_eq!(direct.constant_term().degree(), Some(phi.n()));
    }
}

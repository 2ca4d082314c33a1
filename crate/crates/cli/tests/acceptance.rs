//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use drinfeld_core::torsion::TorsionModule;
use drinfeld_core::{
    abs_star_exponent, check_rh, frobenius_charpoly_crt, frobenius_charpoly_direct, minimal_polynomial, Caps,
    CharPoly, CharPolyKind, DrinfeldModule, Poly,
};
use drinfeld_rh::{run, Check, Outcome, ReportRecord, RunConfig};

type Verdict = Result<String, String>;

/// Caps large enough that no torsion computation of the random suite is skipped.
const SUITE_CAPS: Caps = Caps {
    max_field_bits: 4096,
    max_ext_multiple: 800,
};
const SUITE_SAMPLES: usize = 50;
const SUITE_SEED: u64 = 42;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn charpoly(phi: &DrinfeldModule, text: &str) -> Result<CharPoly, String> {
    CharPoly::parse(phi.fq(), text, CharPolyKind::Characteristic { power: None }).map_err(err)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let phi = DrinfeldModule::parse("q=2,n=1,g=1;1;1").map_err(err)?;
    let expected = charpoly(&phi, "1,1|1|1")?;
    // oracle: π² + π + φ_{T+1} = τ² + τ + (τ² + τ) = 0 in k{τ}
    ensure(
        expected.evaluate_at(&phi, &phi.frobenius()).map_err(err)?.is_zero(),
        "x²+x+(T+1) does not annihilate π",
    )?;
    let direct = frobenius_charpoly_direct(&phi).map_err(err)?;
    ensure(direct == expected, format!("direct gives {direct}"))?;
    let crt = frobenius_charpoly_crt(&phi, &Caps::default()).map_err(err)?;
    ensure(crt.charpoly == expected, format!("crt gives {}", crt.charpoly))?;
    let m = minimal_polynomial(&phi, &phi.frobenius()).map_err(err)?;
    let report = check_rh(&phi, &direct, &m).map_err(err)?;
    ensure(report.pass(), format!("check_rh fails: {report:?}"))?;
    let t = Poly::parse(phi.fq(), "0,1").map_err(err)?;
    let residue = TorsionModule::new(&phi, &t, &Caps::default())
        .and_then(|tm| tm.endo_charpoly_mod(&phi.frobenius()))
        .map_err(err)?;
    let shown: Vec<String> = residue.iter().map(Poly::to_string).collect();
    ensure(shown == ["1", "1", "1"], format!("P on φ[T] is {shown:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("P = x^2+x+(T+1) by both methods, P mod T = x^2+x+1, {elapsed:.2?}"))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let phi = DrinfeldModule::parse("q=2,n=2,g=1;1").map_err(err)?;
    let direct = frobenius_charpoly_direct(&phi).map_err(err)?;
    let expected = charpoly(&phi, "1,0,1|1")?;
    ensure(direct == expected, format!("P = {direct}"))?;
    let (char_prime, d) = phi.characteristic();
    let a0_target = char_prime.pow((phi.n() / d) as u32);
    ensure(
        direct.constant_term() == &a0_target && a0_target.to_string() == "1,0,1",
        format!("a0 = {}, p^(n/d) = {a0_target}", direct.constant_term()),
    )?;
    let m = minimal_polynomial(&phi, &phi.frobenius()).map_err(err)?;
    let rho = abs_star_exponent(&m).map_err(err)?;
    ensure(*rho.numer() == 2 && *rho.denom() == 1, format!("rho = {rho}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("P = x-(T^2+1), a0 = (T+1)^2, rho = 2, {elapsed:.2?}"))
}

/// Runs the seeded grid once and returns its records.
fn random_suite() -> Result<(Vec<ReportRecord>, Duration), String> {
    let start = Instant::now();
    let mut records = Vec::new();
    for q in [2u64, 3] {
        let config = RunConfig {
            q,
            n: 1..=3,
            r: 1..=3,
            samples: SUITE_SAMPLES,
            seed: SUITE_SEED,
            checks: Check::ALL.to_vec(),
            caps: SUITE_CAPS,
            timing: false,
            ..RunConfig::default()
        };
        let mut out = Vec::new();
        run(&config, &mut out).map_err(err)?;
        for line in String::from_utf8(out).map_err(err)?.lines() {
            records.push(serde_json::from_str::<ReportRecord>(line).map_err(err)?);
        }
    }
    Ok((records, start.elapsed()))
}

/// Per-check tallies over the suite: (passed, failed, skipped, first failure).
fn tally(records: &[ReportRecord], check: Check) -> (usize, usize, usize, Option<String>) {
    let (mut pass, mut fail, mut skip, mut first) = (0, 0, 0, None);
    for rec in records {
        match rec.checks.get(&check) {
            Some(v) if v.skipped => skip += 1,
            Some(v) if v.pass => pass += 1,
            Some(v) => {
                fail += 1;
                first.get_or_insert_with(|| format!("q={},n={},g={}: {}", rec.q, rec.n, rec.g, v.witness));
            }
            None => {
                fail += 1;
                first.get_or_insert_with(|| format!("{check} missing for g={}", rec.g));
            }
        }
    }
    (pass, fail, skip, first)
}

/// Every check passes on every record, none skipped unless `skips_allowed`.
fn all_pass(records: &[ReportRecord], checks: &[Check], skips_allowed: bool) -> Verdict {
    let mut parts = Vec::new();
    for &check in checks {
        let (pass, fail, skip, first) = tally(records, check);
        if let Some(w) = first {
            return Err(format!("{check}: {fail} failed, e.g. {w}"));
        }
        if skip > 0 && !skips_allowed {
            return Err(format!("{check}: {skip} skipped by caps"));
        }
        parts.push(if skip > 0 {
            format!("{check} {pass}/{} ({skip} skipped by caps)", pass + skip)
        } else {
            format!("{check} {pass}/{pass}")
        });
    }
    Ok(parts.join(", "))
}

fn cell_counts(records: &[ReportRecord]) -> BTreeMap<(u64, usize, usize), usize> {
    let mut cells = BTreeMap::new();
    for rec in records {
        *cells.entry((rec.q, rec.n, rec.r)).or_insert(0) += 1;
    }
    cells
}

fn criterion_3(records: &[ReportRecord], elapsed: Duration) -> Verdict {
    let cells = cell_counts(records);
    ensure(cells.len() == 18, format!("{} cells", cells.len()))?;
    if let Some((cell, count)) = cells.iter().find(|(_, &c)| c < SUITE_SAMPLES) {
        return Err(format!("cell {cell:?} has {count} samples"));
    }
    let summary = all_pass(
        records,
        &[Check::Bounds, Check::A0, Check::Abs, Check::Newton, Check::Agreement],
        false,
    )?;
    ensure(elapsed <= Duration::from_secs(600), format!("suite took {elapsed:?}"))?;
    Ok(format!("18 cells x {SUITE_SAMPLES}: {summary}, {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_9() -> Verdict {
    let phi = DrinfeldModule::parse("q=2,n=1,g=1;1;1").map_err(err)?;
    let bad = charpoly(&phi, "1,1|0,1|1")?;
    let report = check_rh(&phi, &bad, &bad).map_err(err)?;
    ensure(!report.bounds.pass, "bounds check accepted x^2+Tx+(T+1)")?;
    ensure(
        report.bounds.witness == "i=1: deg a_1 = 1 > 0",
        format!("witness {:?}", report.bounds.witness),
    )?;

    let bin = env!("CARGO_BIN_EXE_drinfeld-rh");
    let cases: [(&str, Vec<&str>, Outcome); 5] = [
        ("all-pass run", vec!["verify", "--q", "2", "--n", "1", "--r", "1:2", "--samples", "3"], Outcome::Pass),
        (
            "bad claimed P",
            vec!["check", "--module", "q=2,n=1,g=1;1;1", "--charpoly", "1,1|0,1|1"],
            Outcome::Fail,
        ),
        ("malformed flag", vec!["verify", "--q", "2", "--n", "1", "--r", "1", "--bogus"], Outcome::Usage),
        ("q not a prime power", vec!["verify", "--q", "6", "--n", "1", "--r", "1"], Outcome::Usage),
        (
            "tiny caps",
            vec!["verify", "--q", "2", "--n", "1", "--r", "2", "--samples", "2", "--max-field-bits", "1"],
            Outcome::Skipped,
        ),
    ];
    for (name, args, want) in cases {
        let out = Command::new(bin).args(&args).output().map_err(err)?;
        let code = out.status.code();
        ensure(code == Some(want.code()), format!("{name}: exit {code:?}, expected {}", want.code()))?;
        if want == Outcome::Usage {
            ensure(!out.stderr.is_empty(), format!("{name}: nothing on stderr"))?;
        }
    }
    Ok("bounds rejects x^2+Tx+(T+1) at i=1; exit codes 0/1/2/2/3 on crafted configs".into())
}

fn main() {
    let mut failed = false;
    let mut report = |number: u32, verdict: Verdict| {
        match verdict {
            Ok(detail) => println!("criterion {number}: PASS  {detail}"),
            Err(detail) => {
                failed = true;
                println!("criterion {number}: FAIL  {detail}");
            }
        }
    };
    report(1, criterion_1());
    report(2, criterion_2());
    match random_suite() {
        Ok((records, elapsed)) => {
            report(3, criterion_3(&records, elapsed));
            report(4, all_pass(&records, &[Check::Degdet], false));
            report(5, all_pass(&records, &[Check::Prop32], true));
            report(6, all_pass(&records, &[Check::Prop33], false));
            report(7, all_pass(&records, &[Check::TorsionStructure], false));
            let cells = cell_counts(&records);
            let few = cells.values().any(|&c| c < 10);
            report(
                8,
                if few {
                    Err("fewer than 10 samples in some cell".into())
                } else {
                    all_pass(&records, &[Check::Switch], false)
                },
            );
        }
        Err(e) => {
            for number in 3..=8 {
                report(number, Err(format!("random suite did not run: {e}")));
            }
        }
    }
    report(9, criterion_9());
    if failed {
        std::process::exit(1);
    }
}

//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Horizons, ranges, sample counts and wall-clock limits are pinned below.
//! All comparisons are exact, so there is no numeric tolerance.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use wordperm_core::doubling::{collision_census, DoublingContext, Restriction};
use wordperm_core::lab::{verify_suite, SuiteConfig, SuiteName, SuiteReport, Verdict};
use wordperm_core::WordSpec;

const H15: usize = 1 << 15;
const H17: usize = 1 << 17;
const SAMPLES: usize = 1000;
const SEED: u64 = 0x5eed;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn suite(
    name: SuiteName,
    spec: &WordSpec,
    lengths: RangeInclusive<usize>,
    horizon: usize,
) -> Result<SuiteReport, String> {
    let cfg = SuiteConfig {
        lengths,
        horizon,
        samples: SAMPLES,
        seed: SEED,
        ..SuiteConfig::default()
    };
    verify_suite(name, spec, &cfg).map_err(|e| format!("{name} on {spec}: {e}"))
}

fn require_pass(rep: &SuiteReport) -> Result<(), String> {
    if rep.outcome() == Verdict::Pass {
        return Ok(());
    }
    let bad: Vec<String> = rep
        .rows
        .iter()
        .filter(|r| r.verdict != Verdict::Pass && r.verdict != Verdict::Info)
        .take(3)
        .map(|r| format!("n={} {} {}", r.n, r.verdict, r.detail))
        .collect();
    Err(format!(
        "{} on {}: {} [{}]",
        rep.suite,
        rep.word,
        rep.outcome(),
        bad.join("; ")
    ))
}

fn pass_suites(
    name: SuiteName,
    words: &[WordSpec],
    lengths: RangeInclusive<usize>,
    horizon: usize,
) -> Check {
    let mut rows = 0;
    for w in words {
        let rep = suite(name, w, lengths.clone(), horizon)?;
        require_pass(&rep)?;
        rows += rep.rows.len();
    }
    Ok(format!("{rows} rows"))
}

fn words() -> [WordSpec; 3] {
    [
        WordSpec::fibonacci(),
        WordSpec::thue_morse(),
        WordSpec::period_doubling(),
    ]
}

fn c1() -> Check {
    let words = [
        WordSpec::fibonacci(),
        WordSpec::sturmian(vec![2, 1, 1, 1]).unwrap(),
    ];
    pass_suites(SuiteName::SturmianTau, &words, 2..=24, H15)
}

fn c2() -> Check {
    let fib = WordSpec::fibonacci();
    let ctx = DoublingContext::new(fib.clone(), H15).map_err(|e| e.to_string())?;
    if ctx.k() != 2 {
        return Err(format!("scanned k = {}, expected 2", ctx.k()));
    }
    let two_n = 2 * ctx.threshold().window;
    let rep = suite(SuiteName::DoubledSturmian, &fib, 2..=64, H15)?;
    require_pass(&rep)?;
    let mut checked = 0;
    for n in two_n..=64 {
        let row = rep
            .rows
            .iter()
            .find(|r| r.n == n)
            .ok_or(format!("no row for n = {n}"))?;
        if row.verdict != Verdict::Pass || row.tau != Some(n + 5) {
            return Err(format!("n = {n}: tau {:?}, expected {}", row.tau, n + 5));
        }
        checked += 1;
    }
    Ok(format!(
        "tau = n + 5 for n = {two_n}..64 ({checked} lengths)"
    ))
}

fn c3() -> Check {
    pass_suites(SuiteName::TmRho, &[WordSpec::thue_morse()], 3..=64, H17)
}

fn c4() -> Check {
    pass_suites(SuiteName::TmTau, &[WordSpec::thue_morse()], 6..=40, H15)
}

fn c5() -> Check {
    let rep = suite(SuiteName::DoubledTm, &WordSpec::thue_morse(), 9..=24, H15)?;
    require_pass(&rep)?;
    for (m, want) in [(17, 68), (18, 70), (31, 96), (32, 100)] {
        let got = rep.rows.iter().find(|r| r.n == m).and_then(|r| r.tau);
        if got != Some(want) {
            return Err(format!("tau({m}) = {got:?}, expected {want}"));
        }
    }
    Ok(format!(
        "{} lengths, spot values 68 70 96 100",
        rep.rows.len()
    ))
}

fn cli(args: &[&str]) -> Result<String, String> {
    let dir = std::env::temp_dir();
    let out = wordperm_cli::run(
        std::iter::once("wordperm").chain(args.iter().copied()),
        &dir,
    );
    if out.code != 0 {
        return Err(format!("{args:?} exited {}: {}", out.code, out.stderr));
    }
    Ok(out.stdout)
}

fn c6() -> Check {
    let expect = |got: &str, want: &str| {
        if got == want {
            Ok(())
        } else {
            Err(format!("expected {want:?}, got {got:?}"))
        }
    };
    expect(
        &cli(&["perm", "thue-morse", "--at", "0", "--len", "9"])?,
        "(4 9 7 2 6 1 3 8 5)\n",
    )?;
    expect(
        &cli(&["perm", "thue-morse", "--at", "12", "--len", "9"])?,
        "(5 9 7 2 6 1 3 8 4)\n",
    )?;
    let image = "(5 8 14 13 12 10 3 6 11 9 1 2 4 7)";
    for (at, input) in [("0", "(4 9 7 2 6 1 3 8 5)"), ("12", "(5 9 7 2 6 1 3 8 4)")] {
        let out = cli(&["delta", "thue-morse", "--at", at, "--len", "7"])?;
        let field = |key: &str| {
            out.lines()
                .find_map(|l| l.strip_prefix(key).map(|v| v.trim_start().to_string()))
                .unwrap_or_default()
        };
        expect(&field("input "), input)?;
        expect(&field("image "), image)?;
        expect(&field("cross-check "), "ok")?;
    }
    Ok("perm and delta output byte-exact".into())
}

fn c7() -> Check {
    pass_suites(SuiteName::DeltaOracle, &words(), 2..=24, H15)
        .map(|_| format!("{} samples per word", SAMPLES))
}

fn c8() -> Check {
    pass_suites(SuiteName::Restrictions, &words(), 2..=24, H15)
        .map(|_| format!("{} triples per word", SAMPLES))
}

fn c9() -> Check {
    pass_suites(SuiteName::Complement, &words(), 1..=24, H15)
}

fn c10() -> Check {
    pass_suites(SuiteName::Bounds, &words(), 2..=24, H15)
}

fn c11() -> Check {
    let a = pass_suites(SuiteName::Type1Exclusion, &words(), 2..=24, H15)?;
    let b = pass_suites(SuiteName::RestrictionEquivalence, &words(), 2..=24, H15)?;
    Ok(format!("type-1 exclusion {a}, restriction equivalence {b}"))
}

fn c12() -> Check {
    const RANGE: RangeInclusive<usize> = 9..=24;
    let mut ctx = DoublingContext::new(WordSpec::thue_morse(), H15).map_err(|e| e.to_string())?;
    let mut collide = |r: Restriction| -> Result<BTreeSet<usize>, String> {
        let mut hits = BTreeSet::new();
        for n in RANGE {
            let c = collision_census(&mut ctx, n, H15, r).map_err(|e| format!("n = {n}: {e}"))?;
            if !c.converged {
                return Err(format!("{} census at n = {n} did not converge", r.name()));
            }
            if !c.is_injective() {
                hits.insert(n);
            }
        }
        Ok(hits)
    };
    let full = collide(Restriction::Full)?;
    let middle = collide(Restriction::Middle)?;
    let full_want: BTreeSet<usize> = [15, 16].into();
    let middle_want: BTreeSet<usize> = [9, 15, 16, 17].into();
    if (10..=12).any(|n| full.contains(&n)) || full != full_want {
        return Err(format!(
            "full collisions at {full:?}, expected {full_want:?}"
        ));
    }
    if middle != middle_want {
        return Err(format!(
            "middle collisions at {middle:?}, expected {middle_want:?}"
        ));
    }
    Ok(format!("full {full:?}, middle {middle:?} over n = 9..24"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("sturmian tau(n) = n", c1, 30),
        ("doubled sturmian tau = n + 2k + 1", c2, 120),
        ("thue-morse factor complexity", c3, 60),
        ("thue-morse permutation complexity", c4, 120),
        ("doubled thue-morse permutation complexity", c5, 300),
        ("worked vectors in cli output", c6, 30),
        ("delta formula against extraction", c7, 300),
        ("restriction formulas against extraction", c8, 300),
        ("complement bijection", c9, 300),
        ("doubling bounds", c10, 300),
        ("type-1 exclusion and restriction equivalence", c11, 300),
        ("thue-morse collision regimes", c12, 300),
    ];
    let mut failed = 0;
    for (i, (title, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > Duration::from_secs(limit) => {
                Err(format!("{msg}; took {took:.1?} > {limit} s"))
            }
            r => r,
        };
        match result {
            Ok(msg) => println!("PASS {:>2} {title}: {msg} ({took:.1?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {msg} ({took:.1?})", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

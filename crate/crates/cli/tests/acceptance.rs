//! Acceptance suite: one line per criterion, each checked at its stated time
//! limit. Exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::ops::RangeInclusive;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use addend_core::constructions::{
    realize_pair_general, realize_triple_general, realize_triple_with_two,
};
use addend_core::{
    addendization_set, catalog_length_sets, check_realization, enumerate_semigroups,
    factorizations, length_set_fast, minimal_realization, realize, sweep_verify, verify_atoms,
    Construction, LengthSet, MinimalOrder, NumericalSemigroup, SearchSpace, Verdict,
};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

type Check = Result<Outcome, String>;

struct Outcome {
    detail: String,
    /// The duration compared against the limit. Setup that the criterion does
    /// not measure (spawning processes, building oracles) is excluded.
    timed: Duration,
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sigma(s: &str) -> LengthSet {
    s.parse().expect("valid length set")
}

fn semigroup(gens: &[u64]) -> NumericalSemigroup {
    NumericalSemigroup::from_generators(gens).expect("valid generators")
}

fn range_map(entries: &[(&str, RangeInclusive<u64>)]) -> BTreeMap<String, RangeInclusive<u64>> {
    entries.iter().map(|(k, r)| (k.to_string(), r.clone())).collect()
}

fn addend(args: &[&str], input: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_addend"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn addend");
    let mut stdin = child.stdin.take().unwrap();
    if let Some(input) = input {
        stdin.write_all(input.as_bytes()).unwrap();
    }
    drop(stdin);
    child.wait_with_output().unwrap()
}

fn catalog_table() -> Check {
    let expected = "AS(2) = {1}\nAS(3) = {1}\nAS(4) = {2}\nAS(5) = {2}\nAS(6) = {2,3}\n\
                    AS(7) = {3}\nAS(8) = {3,4}\nAS(9) = {3,4}\nAS(10) = {4,5}\n";
    let argv = ["addend", "catalog", "--gens", "2,3", "--to", "10"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    // Warm-up run, so one-time allocator and page-fault costs stay out of the measurement.
    addend_cli::run(argv, &mut Vec::new(), &mut Vec::new());
    let start = Instant::now();
    let code = addend_cli::run(argv, &mut out, &mut err);
    let timed = start.elapsed();
    let text = String::from_utf8(out).unwrap();
    ensure(code == 0, || format!("exit {code}: {}", String::from_utf8_lossy(&err)))?;
    ensure(text == expected, || format!("table differs:\n{text}"))?;

    let spawned = addend(&argv[1..], None);
    ensure(String::from_utf8_lossy(&spawned.stdout) == expected, || {
        "binary output differs from the in-process run".into()
    })?;
    Ok(Outcome { detail: "9 rows exact".into(), timed })
}

fn least_by_cardinality() -> Check {
    let start = Instant::now();
    let s = semigroup(&[3, 7, 8]);
    let table = catalog_length_sets(&s, 30).map_err(|e| e.to_string())?;
    let least = |k: usize| table.iter().find(|(_, a)| a.len() == k).map(|(&x, _)| x);
    let found = [least(1), least(2), least(3)];
    let as21 = table.get(&21).cloned();
    let timed = start.elapsed();
    ensure(found == [Some(3), Some(14), Some(21)], || format!("least x: {found:?}"))?;
    ensure(as21 == Some(sigma("3,4,7")), || format!("AS(21) = {as21:?}"))?;
    Ok(Outcome { detail: "least x = 3, 14, 21; AS(21) = {3,4,7}".into(), timed })
}

fn printed_realizations() -> Check {
    let cases: [(&str, &[u64], u64, &[&str]); 4] = [
        ("2,3", &[7, 10, 11], 21, &["10 + 11", "3*7"]),
        ("3,4", &[36, 39, 49], 147, &["3*49", "3*36 + 39"]),
        ("2,3,4", &[36, 39, 49, 52, 95], 147, &["52 + 95", "3*49", "3*36 + 39"]),
        ("3,5,7", &[350, 360, 492, 502, 979], 2460, &["5*492", "6*350 + 360", "502 + 2*979"]),
    ];
    let start = Instant::now();
    let mut reports = Vec::new();
    for (target, ..) in &cases {
        let r = realize(&sigma(target)).map_err(|e| e.to_string())?;
        reports.push(check_realization(&r, None).map_err(|e| e.to_string())?);
    }
    let timed = start.elapsed();

    for ((target, atoms, x, sums), report) in cases.iter().zip(&reports) {
        let r = &report.subject;
        ensure(r.semigroup.atoms() == *atoms, || format!("{target}: atoms {}", r.generators))?;
        ensure(r.element == *x, || format!("{target}: x = {}", r.element))?;
        ensure(report.computed_as == sigma(target), || {
            format!("{target}: AS = {}", report.computed_as)
        })?;
        let got: BTreeSet<String> =
            report.factorizations.iter().map(|f| f.display_with(atoms)).collect();
        let want: BTreeSet<String> = sums.iter().map(|s| s.to_string()).collect();
        ensure(got == want, || format!("{target}: factorizations {got:?}"))?;
        ensure(report.verdict == Verdict::Pass, || format!("{target}: {:?}", report.details))?;

        let o = addend(&["realize", "--sigma", target, "--json"], None);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
        ensure(v["x"] == *x && v["atoms"] == serde_json::json!(atoms), || {
            format!("{target}: `realize` printed {v}")
        })?;
    }
    Ok(Outcome { detail: "4 realizations, atoms, x, AS and factorizations exact".into(), timed })
}

fn pair_with_two_sweep() -> Check {
    let start = Instant::now();
    let outcome = sweep_verify(
        Construction::PairWithTwo,
        &range_map(&[("n", 3..=10), ("k", 7..=25)]),
    )
    .map_err(|e| e.to_string())?;
    let timed = start.elapsed();
    for rep in &outcome.reports {
        let n = rep.subject.param("n").unwrap();
        ensure(rep.verdict == Verdict::Pass, || format!("{:?}: {:?}", rep.subject.params, rep.details))?;
        ensure(rep.computed_as == LengthSet::new([2, n]).unwrap(), || {
            format!("{:?}: AS = {}", rep.subject.params, rep.computed_as)
        })?;
        ensure(rep.factorization_count == 2, || {
            format!("{:?}: {} factorizations", rep.subject.params, rep.factorization_count)
        })?;
    }
    let coprime = (3..=10u64)
        .flat_map(|n| (7..=25u64).map(move |k| (n, k)))
        .filter(|&(n, k)| addend_core::semigroup::gcd(n, k) == 1)
        .count();
    ensure(outcome.reports.len() == coprime, || {
        format!("{} tuples checked, {coprime} coprime", outcome.reports.len())
    })?;
    Ok(Outcome {
        detail: format!("{} passed, {} non-coprime skipped", outcome.passed(), outcome.skipped.len()),
        timed,
    })
}

fn triple_with_two_sweep() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=6u64 {
        for t in n + 1..=n + 4 {
            let r = realize_triple_with_two(n, t).map_err(|e| e.to_string())?;
            let rep = check_realization(&r, Some(3)).map_err(|e| e.to_string())?;
            ensure(rep.verdict == Verdict::Pass, || format!("n={n} t={t}: {:?}", rep.details))?;
            ensure(rep.computed_as == LengthSet::new([2, n, t]).unwrap(), || {
                format!("n={n} t={t}: AS = {}", rep.computed_as)
            })?;
            ensure(rep.factorization_count == 3, || {
                format!("n={n} t={t}: {} factorizations", rep.factorization_count)
            })?;
            let minimal = verify_atoms(&r.generators).map_err(|e| e.to_string())?;
            ensure(minimal, || format!("n={n} t={t}: {} are not exactly the atoms", r.generators))?;
            checked += 1;
        }
    }
    Ok(Outcome { detail: format!("{checked} tuples, all 5 generators atoms"), timed: start.elapsed() })
}

fn pair_general_sweep() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=6u64 {
        for t in n + 1..=n + 4 {
            let r = realize_pair_general(n, t).map_err(|e| e.to_string())?;
            let rep = check_realization(&r, Some(2)).map_err(|e| e.to_string())?;
            ensure(rep.verdict == Verdict::Pass, || format!("n={n} t={t}: {:?}", rep.details))?;
            ensure(rep.computed_as == LengthSet::new([n, t]).unwrap(), || {
                format!("n={n} t={t}: AS = {}", rep.computed_as)
            })?;
            ensure(rep.factorization_count == 2, || {
                format!("n={n} t={t}: {} factorizations", rep.factorization_count)
            })?;
            checked += 1;
        }
    }
    Ok(Outcome { detail: format!("{checked} tuples"), timed: start.elapsed() })
}

fn triple_general_sweep() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for r in 1..=3u64 {
        for n in r + 2..=r + 4 {
            for t in n + 1..=n + 3 {
                let real = realize_triple_general(r, n, t).map_err(|e| e.to_string())?;
                let rep = check_realization(&real, Some(3)).map_err(|e| e.to_string())?;
                let tuple = format!("r={r} n={n} t={t}");
                ensure(rep.verdict == Verdict::Pass, || format!("{tuple}: {:?}", rep.details))?;
                ensure(rep.computed_as == LengthSet::new([r + 1, n, t]).unwrap(), || {
                    format!("{tuple}: AS = {}", rep.computed_as)
                })?;
                ensure(rep.factorization_count == 3, || {
                    format!("{tuple}: {} factorizations", rep.factorization_count)
                })?;
                checked += 1;
            }
        }
    }
    Ok(Outcome { detail: format!("{checked} tuples"), timed: start.elapsed() })
}

fn minimal_realizations() -> Check {
    let start = Instant::now();
    let small = minimal_realization(
        &sigma("2,3"),
        &SearchSpace::new(10, 10, 10, 10).unwrap(),
        MinimalOrder::Element,
    )
    .map_err(|e| e.to_string())?
    .ok_or("no realization of {2,3}")?;
    ensure(small.semigroup.atoms() == [2, 3] && small.element == 6, || {
        format!("{{2,3}}: {} x {}", small.semigroup, small.element)
    })?;

    let target = sigma("2,3,4");
    let best = minimal_realization(
        &target,
        &SearchSpace::new(23, 23, 23, 36).unwrap(),
        MinimalOrder::Element,
    )
    .map_err(|e| e.to_string())?
    .ok_or("no realization of {2,3,4}")?;
    let timed = start.elapsed();

    // Brute-force verdict: the suggested (<9,12,13,23>, 36) is a realization,
    // but not the x-minimal one.
    ensure(best.semigroup.atoms() == [4, 6, 7, 9] && best.element == 16, || {
        format!("{{2,3,4}}: {} x {}", best.semigroup, best.element)
    })?;
    ensure(addendization_set(&best.semigroup, best.element).ok() == Some(target.clone()), || {
        "minimal result does not realize {2,3,4}".into()
    })?;
    let suggested = semigroup(&[9, 12, 13, 23]);
    ensure(addendization_set(&suggested, 36).ok() == Some(target), || {
        "<9,12,13,23> does not realize {2,3,4} at 36".into()
    })?;
    Ok(Outcome {
        detail: format!(
            "{{2,3}} -> <2,3> x 6; {{2,3,4}} -> {} x {} (smaller than <9,12,13,23> x 36)",
            best.semigroup, best.element
        ),
        timed,
    })
}

fn property_suite() -> Check {
    const X_MAX: u64 = 60;
    const PAIRS: usize = 1000;
    let start = Instant::now();
    let space = SearchSpace::new(6, 20, 4, X_MAX).unwrap();
    let mut tables = Vec::new();
    let mut elements = 0u64;
    for s in enumerate_semigroups(&space) {
        let mut sets = Vec::with_capacity(X_MAX as usize + 1);
        sets.push(LengthSet::empty());
        for x in 1..=X_MAX {
            if !s.contains(x) {
                sets.push(LengthSet::empty());
                continue;
            }
            let fast = length_set_fast(&s, x).map_err(|e| e.to_string())?;
            let full = addendization_set(&s, x).map_err(|e| e.to_string())?;
            ensure(fast == full, || format!("{s} x {x}: fast {fast} vs enumeration {full}"))?;
            for f in factorizations(&s, x).map_err(|e| e.to_string())? {
                ensure(f.evaluate(s.atoms()) == Ok(x), || format!("{s}: {f:?} does not sum to {x}"))?;
            }
            let singleton = full.as_slice() == [1];
            ensure(singleton == s.is_atom(x), || format!("{s} x {x}: AS {full}, is_atom {}", s.is_atom(x)))?;
            sets.push(full);
            elements += 1;
        }
        tables.push((s, sets));
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut sampled = 0;
    while sampled < PAIRS {
        let (s, sets) = &tables[rng.random_range(0..tables.len())];
        let x = rng.random_range(1..=X_MAX);
        let y = rng.random_range(1..=X_MAX);
        if !s.contains(x) || !s.contains(y) {
            continue;
        }
        let sum = addendization_set(s, x + y).map_err(|e| e.to_string())?;
        for &a in sets[x as usize].as_slice() {
            for &b in sets[y as usize].as_slice() {
                ensure(sum.contains(a + b), || {
                    format!("{s}: {a} in AS({x}), {b} in AS({y}) but {} not in AS({})", a + b, x + y)
                })?;
            }
        }
        sampled += 1;
    }
    Ok(Outcome {
        detail: format!("{} semigroups, {elements} elements, {PAIRS} sums", tables.len()),
        timed: start.elapsed(),
    })
}

fn negative_controls() -> Check {
    let start = Instant::now();
    let o = addend(&["realize", "--sigma", "1,2"], None);
    ensure(o.status.code() == Some(2), || format!("{{1,2}} exited {:?}", o.status.code()))?;

    let o = addend(&["realize", "--sigma", "2,3,4,5"], None);
    let err = String::from_utf8_lossy(&o.stderr);
    ensure(o.status.code() == Some(2) && err.contains("search"), || {
        format!("{{2,3,4,5}} exited {:?}: {err}", o.status.code())
    })?;

    let json = addend(&["realize", "--sigma", "3,5,7", "--json"], None);
    let json = String::from_utf8(json.stdout).unwrap();
    let corrupted = json.replace("\"x\":2460", "\"x\":2461");
    ensure(corrupted != json, || "could not corrupt the record".into())?;
    let o = addend(&["verify", "--input", "-", "--json"], Some(&corrupted));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
    ensure(o.status.code() == Some(1) && v["verification"]["verdict"] == "Fail", || {
        format!("corrupted record exited {:?}: {v}", o.status.code())
    })?;
    Ok(Outcome { detail: "exit 2, exit 2 with search hint, Fail with exit 1".into(), timed: start.elapsed() })
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: "AC1", title: "length sets of <2,3> up to 10", limit: Some(Duration::from_millis(1)), run: catalog_table },
    Criterion { id: "AC2", title: "least x per |AS| in <3,7,8>", limit: Some(Duration::from_millis(10)), run: least_by_cardinality },
    Criterion { id: "AC3", title: "four printed realizations", limit: Some(Duration::from_millis(100)), run: printed_realizations },
    Criterion { id: "AC4", title: "pair-with-two sweep", limit: Some(Duration::from_secs(5)), run: pair_with_two_sweep },
    Criterion { id: "AC5", title: "triple-with-two sweep and atoms", limit: Some(Duration::from_secs(60)), run: triple_with_two_sweep },
    Criterion { id: "AC6", title: "pair-general sweep", limit: Some(Duration::from_secs(30)), run: pair_general_sweep },
    Criterion { id: "AC7", title: "triple-general sweep", limit: Some(Duration::from_secs(120)), run: triple_general_sweep },
    Criterion { id: "AC8", title: "minimal realizations", limit: Some(Duration::from_secs(600)), run: minimal_realizations },
    Criterion { id: "AC9", title: "oracle equivalence properties", limit: Some(Duration::from_secs(300)), run: property_suite },
    Criterion { id: "AC10", title: "negative controls", limit: None, run: negative_controls },
];

fn fmt_duration(d: Duration) -> String {
    if d < Duration::from_millis(10) {
        format!("{:.3} ms", d.as_secs_f64() * 1e3)
    } else {
        format!("{:.2} s", d.as_secs_f64())
    }
}

fn main() {
    let mut failures = 0;
    for c in &CRITERIA {
        let (pass, detail) = match (c.run)() {
            Ok(o) => {
                let within = c.limit.is_none_or(|l| o.timed <= l);
                let limit = c.limit.map_or(String::new(), |l| format!(" / {}", fmt_duration(l)));
                let timing = format!("{}{limit}", fmt_duration(o.timed));
                if within {
                    (true, format!("{timing}; {}", o.detail))
                } else {
                    (false, format!("too slow: {timing}; {}", o.detail))
                }
            }
            Err(e) => (false, e),
        };
        if !pass {
            failures += 1;
        }
        println!("{} {:<5} {:<34} {detail}", if pass { "PASS" } else { "FAIL" }, c.id, c.title);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

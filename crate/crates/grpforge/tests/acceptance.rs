//! One line per acceptance criterion; exits non-zero if any fails.

use std::time::{Duration, Instant};

use grpforge::report::Report;
use grpforge::suites::{self, Ctx, Options};
use grpforge::Failure;
use grpforge_core::aut::{isomorphic, SearchLimits};
use grpforge_core::constructions::cayley_color_autos;
use grpforge_core::group::{parse_group_spec, realize, subgroup_closure, ConcreteGroup, Elem};
use serde_json::json;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn run(opts: Options, f: impl FnOnce(&Ctx, &mut Report) -> Result<(), Failure>) -> Result<Report, String> {
    let ctx = Ctx::new(opts);
    let mut r = Report::new(vec![]);
    f(&ctx, &mut r).map_err(|e| e.to_string())?;
    if r.passed {
        Ok(r)
    } else {
        let failed: Vec<String> = r
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        Err(failed.join("; "))
    }
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < budget, format!("took {t:.1?}, budget {budget:?}"))
}

fn sizes() -> Outcome {
    let start = Instant::now();
    let w = run(Options::default(), |c, r| suites::witt(c, 3, 3, r))?;
    ensure(
        w.values["total"] == json!(14),
        format!("witt total {}", w.values["total"]),
    )?;
    let h = run(Options::default(), |c, r| suites::construct_cornulier(c, Some("C3"), r))?;
    for (name, want) in [("F̄", "5^14"), ("P", "5^11"), ("H", "2^6·5^11")] {
        ensure(
            h.orders[name].text == want,
            format!("|{name}| = {}", h.orders[name].text),
        )?;
    }
    within(start, Duration::from_secs(30))?;
    Ok("witt 3 3 total 14; |F̄| = 5^14, |P| = 5^11, |H| = 2^6·5^11".into())
}

fn wrapped() -> Outcome {
    let start = Instant::now();
    let r = run(Options::default(), suites::verify_lie)?;
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "solutions {} and {}; matrix witnesses reject the rest",
        r.values["n=3 p=5: solutions"], r.values["n=4 p=5: solutions"]
    ))
}

fn outer_holomorph() -> Outcome {
    let start = Instant::now();
    let r = run(Options::default(), suites::verify_outhol)?;
    within(start, Duration::from_secs(300))?;
    let outs: Vec<&str> = ["p=3 n=1", "p=5 n=1", "p=3 n=2", "p=5 n=2"]
        .iter()
        .map(|c| r.orders[&format!("{c}: Out")].text.as_str())
        .collect();
    Ok(format!("|Out| = {} ≅ S_n", outs.join(", ")))
}

fn pettet() -> Outcome {
    let start = Instant::now();
    let r = run(Options::default(), |c, r| suites::verify_pettet_full(c, Some("C2"), r))?;
    ensure(r.orders["Ĝ"].value() == Some(2646), "order")?;
    ensure(r.primes["p"] == 3 && r.primes["q"] == 7, "primes")?;
    within(start, Duration::from_secs(900))?;
    Ok(format!(
        "|Aut(Ĝ)| = {}, all normalize Q and N and fix Ĝ/N",
        r.orders["Aut(Ĝ)"].text
    ))
}

fn order_p3() -> Outcome {
    let start = Instant::now();
    let r = run(Options::default(), suites::verify_p3)?;
    ensure(r.values["p=2 types"] == json!({"D8": 3, "Q8": 1}), "p = 2 parity split")?;
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} presentations certified",
        r.values["presentations classified"]
    ))
}

fn generator_relations() -> Outcome {
    let start = Instant::now();
    let r = run(Options::default(), suites::verify_genrel)?;
    let cases = r.checks.iter().filter(|c| c.name.contains("order p^")).count();
    ensure(cases == 15, format!("{cases} random presentations"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{cases} random presentations, {} checks", r.checks.len()))
}

fn multilinear() -> Outcome {
    let start = Instant::now();
    let r = run(Options::default(), suites::verify_multilinear)?;
    ensure(r.checks.len() == 4, "four (group, k) cases")?;
    within(start, Duration::from_secs(60))?;
    Ok("200 instances each in F̄(3,3,5) and UT(4,5), k = 2, 3".into())
}

fn cornulier_structure() -> Outcome {
    let start = Instant::now();
    run(Options::default(), |c, r| {
        suites::verify_cornulier_struct(c, Some("C3"), r)
    })?;
    within(start, Duration::from_secs(120))?;
    let start = Instant::now();
    let opts = Options {
        p: Some(7),
        big: true,
        ..Options::default()
    };
    let r = run(opts, |c, r| suites::verify_cornulier_struct(c, Some("S3"), r))?;
    within(start, Duration::from_secs(1800))?;
    Ok(format!(
        "C3 full suite; S3 at p = 7 ideal rank {} over {} coordinates",
        r.values["S3: ideal rank"], r.values["S3: word coordinates"]
    ))
}

fn cross_oracle() -> Outcome {
    let start = Instant::now();
    let r = run(Options::default(), suites::verify_genrel)?;
    let agree = r.checks.iter().filter(|c| c.name.contains("free nilpotent")).count();
    ensure(agree == 2, format!("{agree} comparisons"))?;
    within(start, Duration::from_secs(60))?;
    Ok("n = 2, p = 3 and 5 agree elementwise".into())
}

fn cyclic_extensions() -> Outcome {
    let start = Instant::now();
    let r = run(Options::default(), |c, r| suites::verify_lemma_aut(c, None, r))?;
    ensure(r.checks.len() == 3, "three instances")?;
    within(start, Duration::from_secs(60))?;
    Ok("(7, C3), (5, C4), (9, C3)".into())
}

fn group(s: &str) -> ConcreteGroup {
    realize(&parse_group_spec(s).unwrap()).unwrap()
}

fn two_generating_sets(g: &ConcreteGroup) -> [Vec<Elem>; 2] {
    let order = |k: usize| g.elements().filter(move |&x| g.element_order(x) == k);
    let full = |s: &[Elem]| subgroup_closure(g, s).len() == g.order();
    let first = g.generators().to_vec();
    let elements: Vec<Elem> = g.elements().filter(|&x| x != 0).collect();
    // a second set that differs from the first: the largest-order generator
    // paired with the first element completing it, or all of G
    let top = (1..=g.order()).rev().find(|&k| order(k).next().is_some()).unwrap();
    let x = order(top).last().unwrap();
    let second = if full(&[x]) {
        vec![x, g.inv(x)]
    } else {
        let y = elements.iter().copied().rfind(|&y| full(&[x, y])).unwrap();
        vec![x, y]
    };
    let second = if second == first { elements } else { second };
    [first, second]
}

fn cayley() -> Outcome {
    let start = Instant::now();
    for name in ["C3", "C4", "S3", "D8"] {
        let g = group(name).tabulate();
        let sets = two_generating_sets(&g);
        ensure(sets[0] != sets[1], format!("{name}: generating sets coincide"))?;
        for gens in sets {
            let autos = cayley_color_autos(&g, &gens).map_err(|e| e.to_string())?;
            let iso = isomorphic(&autos.group, &g, SearchLimits::default()).map_err(|e| e.to_string())?;
            ensure(
                iso.is_some() && autos.iso_is_isomorphism(&g),
                format!("{name} with {gens:?}"),
            )?;
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok("C3, C4, S3, D8 with two generating sets each".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Witt dimensions and the orders of F̄, P, H for C3", sizes),
        ("wrapped commutator congruence, n = 3, 4", wrapped),
        ("Out of holomorph powers is S_n", outer_holomorph),
        ("tower Ĝ for C2, full Aut", pettet),
        ("order p³ classification", order_p3),
        ("class-2 generator/relation groups", generator_relations),
        ("commutator multilinearity", multilinear),
        ("structural suite on H", cornulier_structure),
        ("class-2 vs free nilpotent engine", cross_oracle),
        ("cyclic extension automorphisms", cyclic_extensions),
        ("Cayley color automorphisms", cayley),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}; {t:.2} s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name} ({why}; {t:.2} s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

//! Every construction and verification the CLI can run. Each suite fills a
//! [`Report`]; failed checks are recorded, not returned as errors.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use grpforge_core::aut::{
    automorphism_group, check_cyclic_extension_autos, isomorphic, AutOptions, SearchLimits, DEFAULT_SEARCH_BOUND,
};
use grpforge_core::class2::{compare_with_free_nilpotent, generator_relation_group, num_pairs, order_p3_group, P3Type};
use grpforge_core::constructions::{
    cayley_color_autos, cayley_color_autos_exhaustive, cornulier_or_reduction, holomorph_power,
    outer_of_holomorph_power, pettet_construct, pettet_full_check, CornulierGroup, CornulierOutcome,
};
use grpforge_core::freenil::{
    multilinearity_check, wrapped_commutator_cases, FreeNilpotent, HallBasis, LcsGroup, DEFAULT_MAX_COORDINATES,
};
use grpforge_core::group::{
    center, centralizer_order, derived_subgroup, parse_group_spec, realize_with_bound, subgroup_closure, ConcreteGroup,
    GroupSpec, NamedAction, DEFAULT_ENUMERATION_BOUND,
};
use grpforge_core::number::{is_prime, witt_dim, witt_total};
use grpforge_core::unitri::{unitriangular_group, wrapped_commutator_witness, UnitriGroup};
use grpforge_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::cache::{table_key, AutEntry, Cache};
use crate::report::{Enumeration, FactoredOrder, Report};
use crate::Failure;

pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(15 * 60);
/// Random power words drawn per `(n, p)` by the generator/relation suite.
pub const DEFAULT_GENREL_WORDS: usize = 5;
/// Largest Out that `aut` tries to name.
const IDENTIFY_OUT_UP_TO: u64 = 120;

#[derive(Clone, Debug)]
pub struct Options {
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub n: Option<usize>,
    pub c: Option<usize>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub bound: Option<usize>,
    pub timeout: Duration,
    pub big: bool,
    pub cache: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            p: None,
            q: None,
            n: None,
            c: None,
            seed: 0,
            samples: None,
            bound: None,
            timeout: DEFAULT_TIMEOUT,
            big: false,
            cache: None,
        }
    }
}

/// Options plus the deadline derived from them.
pub struct Ctx {
    pub opts: Options,
    deadline: Instant,
    abort: Box<dyn Fn() -> bool>,
}

impl Ctx {
    pub fn new(opts: Options) -> Self {
        let deadline = Instant::now() + opts.timeout;
        Self {
            opts,
            deadline,
            abort: Box::new(move || Instant::now() >= deadline),
        }
    }

    fn enum_bound(&self) -> usize {
        self.opts.bound.unwrap_or(DEFAULT_ENUMERATION_BOUND)
    }

    fn limits(&self) -> SearchLimits<'_> {
        SearchLimits {
            bound: self.opts.bound.unwrap_or(DEFAULT_SEARCH_BOUND),
            abort: Some(self.abort.as_ref()),
        }
    }

    fn samples(&self) -> usize {
        self.opts.samples.unwrap_or(DEFAULT_SAMPLES)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.opts.seed)
    }

    fn tick(&self) -> Result<(), Failure> {
        if Instant::now() >= self.deadline {
            return Err(Error::Timeout.into());
        }
        Ok(())
    }

    fn prime(&self, p: u32) -> Result<u32, Failure> {
        if is_prime(p) {
            Ok(p)
        } else {
            Err(Error::NotPrime(p).into())
        }
    }

    fn group(&self, spec: &str) -> Result<ConcreteGroup, Failure> {
        let parsed = parse_group_spec(spec)?;
        Ok(realize_with_bound(&parsed, self.enum_bound())?)
    }
}

fn timed<T>(report: &mut Report, phase: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    report.timing(phase, start.elapsed());
    out
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn power_order(p: u32, e: u64) -> FactoredOrder {
    FactoredOrder::from_factors(&[(p as u64, e as u32)])
}

fn truncate(mut s: String, max: usize) -> String {
    if s.len() > max {
        let mut cut = max;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push('…');
    }
    s
}

pub fn witt(ctx: &Ctx, n: usize, c: usize, report: &mut Report) -> Result<(), Failure> {
    if n == 0 || c == 0 {
        return Err(Failure::Usage("witt needs n ≥ 1 and c ≥ 1".into()));
    }
    let degrees: Vec<u64> = (1..=c as u32).map(|k| witt_dim(n as u64, k)).collect();
    let total = witt_total(n as u64, c as u32);
    report.value("n", n);
    report.value("c", c);
    report.value("degrees", json!(degrees));
    report.value("total", total);
    report.check(
        "degrees sum to the total",
        degrees.iter().sum::<u64>() == total,
        format!("total {total}"),
    );
    // Hall enumeration is exponential in c, so only cross-check small cases.
    if (n as f64).powi(c as i32) <= 1e5 {
        let hall = timed(report, "hall", || HallBasis::new(n, c, 2));
        let counts: Vec<u64> = (1..=c).map(|k| hall.count(k) as u64).collect();
        report.check(
            "Hall basis counts match",
            counts == degrees,
            format!("Hall counts {counts:?}"),
        );
    }
    if let Some(p) = ctx.opts.p {
        let p = ctx.prime(p)?;
        report.prime("p", p);
        report.order("F̄", power_order(p, total));
    }
    Ok(())
}

pub fn construct_holomorph(ctx: &Ctx, report: &mut Report) -> Result<(), Failure> {
    let p = ctx.prime(ctx.opts.p.ok_or_else(|| Failure::Usage("holomorph needs --p".into()))?)?;
    let n = ctx.opts.n.unwrap_or(1);
    report.prime("p", p);
    report.value("n", n);
    let h = timed(report, "construct", || holomorph_power(p, n, ctx.enum_bound()))?;
    let g = &h.group;
    let expected = ((p as u64) * (p as u64 - 1)).pow(n as u32);
    report.order("G", FactoredOrder::of(g.order() as u64));
    report.enumeration.push(Enumeration::of(g));
    report.check(
        "order (p(p−1))^n",
        g.order() as u64 == expected,
        format!("{} vs {expected}", g.order()),
    );
    report.check(
        "generators generate",
        g.generators_generate(),
        format!("{} generators", g.generators().len()),
    );
    let axioms = g.check_axioms(&mut ctx.rng(), ctx.samples());
    report.check(
        "group axioms",
        axioms.is_ok(),
        axioms.err().unwrap_or_else(|| "hold".into()),
    );
    if p > 2 {
        let z = center(g).len();
        report.check("trivial center", z == 1, format!("|Z| = {z}"));
    }
    if let Some(&x) = h.x.first() {
        let want = (p as usize).pow(n as u32) * (p as usize - 1).pow(n as u32 - 1);
        let got = centralizer_order(g, x);
        report.check("|C(x_1)| = p^n (p−1)^{n−1}", got == want, format!("{got}"));
    }
    Ok(())
}

fn pettet_inputs(ctx: &Ctx, spec: Option<&str>, report: &mut Report) -> Result<ConcreteGroup, Failure> {
    let spec = spec.unwrap_or("C2");
    report.spec = Some(spec.to_string());
    let g = ctx.group(spec)?.tabulate().minimal_generators();
    report.order("G", FactoredOrder::of(g.order() as u64));
    Ok(g)
}

pub fn construct_pettet(ctx: &Ctx, spec: Option<&str>, report: &mut Report) -> Result<(), Failure> {
    let g = pettet_inputs(ctx, spec, report)?;
    let gens = g.generators().to_vec();
    let t = timed(report, "construct", || {
        pettet_construct(&g, &gens, ctx.opts.p, ctx.opts.q, ctx.enum_bound())
    })?;
    report.prime("p", t.p);
    report.prime("q", t.q);
    let formula = t.order_formula();
    report.order("Ĝ", FactoredOrder::of(formula as u64));
    report.order("N", FactoredOrder::of(t.n_mask().iter().filter(|&&b| b).count() as u64));
    report.order("Q", FactoredOrder::of(t.q_mask().iter().filter(|&&b| b).count() as u64));
    report.enumeration.push(Enumeration::of(&t.hat));
    report.check(
        "|Ĝ| matches the order formula",
        t.hat.order() as u128 == formula,
        format!("{} vs {formula}", t.hat.order()),
    );
    ctx.tick()?;
    let checks = timed(report, "checks", || t.checks())?;
    report.push_checks("", checks);
    Ok(())
}

pub fn verify_pettet_full(ctx: &Ctx, spec: Option<&str>, report: &mut Report) -> Result<(), Failure> {
    let g = pettet_inputs(ctx, spec, report)?;
    let gens = g.generators().to_vec();
    let t = timed(report, "construct", || {
        pettet_construct(&g, &gens, ctx.opts.p, ctx.opts.q, ctx.enum_bound())
    })?;
    report.prime("p", t.p);
    report.prime("q", t.q);
    report.order("Ĝ", FactoredOrder::of(t.hat.order() as u64));
    report.enumeration.push(Enumeration::of(&t.hat));
    let r = timed(report, "aut", || pettet_full_check(&t, ctx.limits()))?;
    report.order("Aut(Ĝ)", FactoredOrder::of(r.aut_order));
    report.order("Inn(Ĝ)", FactoredOrder::of(r.inn_order));
    report.order("Out(Ĝ)", FactoredOrder::of(r.out_order));
    report.value("search nodes", r.nodes);
    let n = r.aut_order;
    let mut detail = format!("{}/{n}", r.normalizes_q);
    if let Some(w) = &r.witness {
        detail.push_str(&format!(", first failure {w}"));
    }
    report.check("every automorphism normalizes Q", r.normalizes_q == n, detail);
    report.check(
        "every automorphism normalizes N",
        r.normalizes_n == n,
        format!("{}/{n}", r.normalizes_n),
    );
    report.check(
        "every automorphism induces the identity on Ĝ/N",
        r.identity_on_quotient == n,
        format!("{}/{n}", r.identity_on_quotient),
    );
    report.check("|Aut| = |Inn|·|Out|", n == r.inn_order * r.out_order, format!("{n}"));
    Ok(())
}

fn cornulier_max_coordinates(ctx: &Ctx) -> usize {
    if ctx.opts.big {
        usize::MAX
    } else {
        DEFAULT_MAX_COORDINATES
    }
}

fn big_hint(e: Error, ctx: &Ctx) -> Failure {
    match e {
        Error::BoundExceeded { .. } if !ctx.opts.big => Failure::Resource(format!("{e}; rerun with --big")),
        other => other.into(),
    }
}

fn cornulier_outcome(
    ctx: &Ctx,
    spec: &str,
    p: Option<u32>,
    prefix: &str,
    report: &mut Report,
) -> Result<CornulierOutcome, Failure> {
    let g = ctx.group(spec)?;
    report.enumeration.push(Enumeration::of(&g));
    report.order(format!("{prefix}G"), FactoredOrder::of(g.order() as u64));
    timed(report, &format!("{prefix}construct"), || {
        cornulier_or_reduction(&g, p, cornulier_max_coordinates(ctx))
    })
    .map_err(|e| big_hint(e, ctx))
}

fn cornulier_sizes(h: &CornulierGroup, prefix: &str, report: &mut Report) {
    report.prime(format!("{prefix}p"), h.p);
    report.value(format!("{prefix}n"), h.n);
    report.value(format!("{prefix}word coordinates"), h.f.dimension());
    report.value(format!("{prefix}ideal rank"), h.ideal.rank());
    report.order(format!("{prefix}F̄"), power_order(h.p, h.free_exponent()));
    report.order(format!("{prefix}P"), power_order(h.p, h.p_exponent()));
    report.order(format!("{prefix}H"), FactoredOrder::from_factors(&h.order_factors()));
}

/// Full structural suite when the free group fits the default coordinate
/// budget, rank and ideal checks otherwise.
fn cornulier_checks(ctx: &Ctx, h: &CornulierGroup, prefix: &str, report: &mut Report) -> Result<(), Failure> {
    ctx.tick()?;
    let checks = if h.f.dimension() <= DEFAULT_MAX_COORDINATES {
        let mut rng = ctx.rng();
        timed(report, &format!("{prefix}checks"), || {
            h.structural_checks(&mut rng, ctx.samples())
        })?
    } else {
        report.value(format!("{prefix}suite"), "rank and ideal checks only");
        timed(report, &format!("{prefix}checks"), || h.ideal_checks())
    };
    report.push_checks(prefix.trim_end_matches(": "), checks);
    Ok(())
}

fn cornulier_small(ctx: &Ctx, outcome: &CornulierOutcome, prefix: &str, report: &mut Report) -> Result<(), Failure> {
    let (h, want) = match outcome {
        CornulierOutcome::Trivial(h) => (h, 1),
        CornulierOutcome::CyclicThree(h) => (h, 2),
        CornulierOutcome::Constructed(_) => unreachable!(),
    };
    report.value(format!("{prefix}H"), h.name());
    let r = automorphism_group(h, AutOptions::default(), ctx.limits())?;
    report.order(format!("{prefix}H"), FactoredOrder::of(h.order() as u64));
    report.order(format!("{prefix}Out(H)"), FactoredOrder::of(r.out_order));
    report.check(
        format!("{prefix}|Out(H)| = |G|"),
        r.out_order == want,
        format!("{}", r.out_order),
    );
    Ok(())
}

pub fn construct_cornulier(ctx: &Ctx, spec: Option<&str>, report: &mut Report) -> Result<(), Failure> {
    let spec = spec.unwrap_or("C3");
    report.spec = Some(spec.to_string());
    match cornulier_outcome(ctx, spec, ctx.opts.p, "", report)? {
        CornulierOutcome::Constructed(h) => {
            cornulier_sizes(&h, "", report);
            cornulier_checks(ctx, &h, "", report)
        }
        small => cornulier_small(ctx, &small, "", report),
    }
}

pub fn verify_cornulier_struct(ctx: &Ctx, spec: Option<&str>, report: &mut Report) -> Result<(), Failure> {
    let cases: Vec<(String, Option<u32>)> = match spec {
        Some(s) => {
            report.spec = Some(s.to_string());
            vec![(s.to_string(), ctx.opts.p)]
        }
        None if ctx.opts.big => vec![("C3".into(), None), ("S3".into(), Some(7))],
        None => vec![("C3".into(), None)],
    };
    for (s, p) in cases {
        let prefix = format!("{s}: ");
        match cornulier_outcome(ctx, &s, p, &prefix, report)? {
            CornulierOutcome::Constructed(h) => {
                cornulier_sizes(&h, &prefix, report);
                cornulier_checks(ctx, &h, &prefix, report)?;
            }
            small => cornulier_small(ctx, &small, &prefix, report)?,
        }
    }
    Ok(())
}

pub fn construct_cayley(ctx: &Ctx, spec: Option<&str>, report: &mut Report) -> Result<(), Failure> {
    let spec = spec.ok_or_else(|| Failure::Usage("cayley needs a group spec".into()))?;
    report.spec = Some(spec.to_string());
    let g = ctx.group(spec)?.tabulate();
    let gens = g.generators().to_vec();
    report.order("G", FactoredOrder::of(g.order() as u64));
    report.value("colors", json!(gens.iter().map(|&x| g.label(x)).collect::<Vec<_>>()));
    report.enumeration.push(Enumeration::of(&g));
    let autos = timed(report, "color automorphisms", || cayley_color_autos(&g, &gens))?;
    report.order("color automorphisms", FactoredOrder::of(autos.group.order() as u64));
    report.check(
        "as many color automorphisms as elements",
        autos.group.order() == g.order(),
        format!("{}", autos.group.order()),
    );
    report.check(
        "translations form an isomorphism",
        autos.iso_is_isomorphism(&g),
        "g ↦ left translation by g",
    );
    let iso = isomorphic(&autos.group, &g, ctx.limits())?;
    report.check("isomorphic to G (independent search)", iso.is_some(), "");
    if g.order() <= 64 {
        let brute = cayley_color_autos_exhaustive(&g, &gens)?;
        report.check(
            "exhaustive search agrees",
            brute.perms.len() == autos.perms.len(),
            format!("{} maps", brute.perms.len()),
        );
    }
    Ok(())
}

/// `C_m ⋊{powK} A` read as a cyclic extension instance.
fn cyclic_extension_spec(ctx: &Ctx, spec: &str) -> Result<(u32, ConcreteGroup, Vec<u32>), Failure> {
    match parse_group_spec(spec)? {
        GroupSpec::Semidirect {
            normal,
            acting,
            action: NamedAction::Power(k),
        } => match *normal {
            GroupSpec::Cyclic(m) => {
                let a = realize_with_bound(&acting, ctx.enum_bound())?;
                let powers = vec![k; a.generators().len()];
                Ok((m, a, powers))
            }
            _ => Err(Failure::Usage("lemma-aut needs a cyclic normal factor C_m".into())),
        },
        _ => Err(Failure::Usage("lemma-aut expects C_m ⋊{powK} A".into())),
    }
}

pub fn verify_lemma_aut(ctx: &Ctx, spec: Option<&str>, report: &mut Report) -> Result<(), Failure> {
    let cases: Vec<(String, u32, ConcreteGroup, Vec<u32>)> = match spec {
        Some(s) => {
            report.spec = Some(s.to_string());
            let (m, a, powers) = cyclic_extension_spec(ctx, s)?;
            vec![(s.to_string(), m, a, powers)]
        }
        None => vec![
            ("C7 ⋊{pow2} C3".into(), 7, ConcreteGroup::cyclic(3), vec![2]),
            ("C5 ⋊{pow2} C4".into(), 5, ConcreteGroup::cyclic(4), vec![2]),
            ("C9 ⋊{pow4} C3".into(), 9, ConcreteGroup::cyclic(3), vec![4]),
        ],
    };
    for (name, m, a, powers) in cases {
        ctx.tick()?;
        let r = timed(report, &name, || {
            check_cyclic_extension_autos(m, &a, &powers, ctx.limits())
        })?;
        report.order(format!("{name}: G"), FactoredOrder::of(r.group_order as u64));
        report.order(format!("{name}: Aut"), FactoredOrder::of(r.aut_order));
        report.check(
            format!("{name}: automorphisms normalizing C_{m} act trivially on the quotient"),
            r.passed() && r.normalizing > 0,
            match r.witness {
                Some(w) => w,
                None => format!("{}/{} normalizing automorphisms", r.centralizing, r.normalizing),
            },
        );
    }
    Ok(())
}

pub fn verify_p3(ctx: &Ctx, report: &mut Report) -> Result<(), Failure> {
    let primes = match ctx.opts.p {
        Some(p) => vec![ctx.prime(p)?],
        None => vec![2, 3, 5],
    };
    if let [p] = primes[..] {
        report.prime("p", p);
    } else {
        report.value("primes", json!(primes));
    }
    let mut classified = 0;
    for p in primes {
        let references: Vec<(P3Type, ConcreteGroup)> = if p == 2 {
            vec![
                (P3Type::Dihedral8, ctx.group("D8")?),
                (P3Type::Quaternion8, ctx.group("Q8")?),
            ]
        } else {
            vec![
                (
                    P3Type::ExtraspecialExponentP,
                    unitriangular_group(3, p, ctx.enum_bound())?,
                ),
                (
                    P3Type::CyclicExtension,
                    ctx.group(&format!("C{} ⋊{{pow{}}} C{p}", p * p, p + 1))?,
                ),
            ]
        };
        let mut counts = std::collections::BTreeMap::<&str, usize>::new();
        for a in 0..p {
            for b in 0..p {
                ctx.tick()?;
                let (g, ty) = order_p3_group(p, a, b)?;
                let expected = match (p, a * b % 2, a % p == 0 && b % p == 0) {
                    (2, 0, _) => P3Type::Dihedral8,
                    (2, _, _) => P3Type::Quaternion8,
                    (_, _, true) => P3Type::ExtraspecialExponentP,
                    _ => P3Type::CyclicExtension,
                };
                let size_ok = g.order() == (p as usize).pow(3) && !g.is_abelian();
                let (_, reference) = references
                    .iter()
                    .find(|(t, _)| *t == ty)
                    .expect("every type has a reference");
                let certified = timed(report, "isomorphism", || isomorphic(&g, reference, ctx.limits()))?.is_some();
                let others = references
                    .iter()
                    .filter(|(t, _)| *t != ty)
                    .map(|(_, r)| isomorphic(&g, r, ctx.limits()).map(|x| x.is_none()))
                    .collect::<Result<Vec<_>, _>>()?;
                report.check(
                    format!("p={p} (a,b)=({a},{b})"),
                    size_ok && ty == expected && certified && others.iter().all(|&x| x),
                    format!("{}, order {}", ty.name(), g.order()),
                );
                *counts.entry(ty.name()).or_default() += 1;
                classified += 1;
            }
        }
        report.value(format!("p={p} types"), json!(counts));
    }
    report.value("presentations classified", classified);
    Ok(())
}

pub fn verify_genrel(ctx: &Ctx, report: &mut Report) -> Result<(), Failure> {
    let cases: Vec<(usize, u32)> = match (ctx.opts.n, ctx.opts.p) {
        (None, None) => vec![(2, 3), (2, 5), (3, 3)],
        (n, p) => vec![(n.unwrap_or(2), ctx.prime(p.unwrap_or(3))?)],
    };
    let words = ctx.opts.samples.unwrap_or(DEFAULT_GENREL_WORDS);
    let mut rng = ctx.rng();
    report.seed = Some(ctx.opts.seed);
    for (n, p) in cases {
        let pairs = num_pairs(n);
        let order = (p as u128).pow((n * (n + 1) / 2) as u32);
        for trial in 0..words {
            ctx.tick()?;
            let c: Vec<Vec<u32>> = (0..n)
                .map(|_| (0..pairs).map(|_| rng.random_range(0..p)).collect())
                .collect();
            let name = format!("n={n} p={p} #{trial}");
            let (_, g) = timed(report, "enumerate", || {
                generator_relation_group(n, p, c.clone(), ctx.enum_bound())
            })?;
            report.check(
                format!("{name}: order p^{{n(n+1)/2}}"),
                g.order() as u128 == order,
                format!("{} for c = {c:?}", g.order()),
            );
            let d = derived_subgroup(&g);
            let z = center(&g);
            let elementary = d.iter().all(|&x| g.pow(x, p as i64) == 0) && d.iter().all(|x| z.contains(x));
            report.check(
                format!("{name}: derived subgroup central of exponent p"),
                elementary,
                format!("|G'| = {}", d.len()),
            );
            let xs = g.generators();
            let comms: Vec<_> = (0..n)
                .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
                .map(|(j, k)| g.commutator(xs[j], xs[k]))
                .collect();
            let span = subgroup_closure(&g, &comms).len();
            let want = (p as usize).pow(pairs as u32);
            report.check(
                format!("{name}: the {pairs} commutators [x_j,x_k] are independent"),
                span == want && d.len() == want,
                format!("span {span}"),
            );
        }
        if n == 2 {
            let cmp = timed(report, "cross-oracle", || {
                compare_with_free_nilpotent(2, p, ctx.enum_bound())
            })?;
            report.check(
                format!("n=2 p={p}: agrees with the free nilpotent engine"),
                cmp.is_none(),
                cmp.unwrap_or_else(|| format!("all {} elements", order)),
            );
        }
    }
    Ok(())
}

fn multilinear_in<G: LcsGroup>(
    ctx: &Ctx,
    name: &str,
    group: &G,
    ks: &[usize],
    report: &mut Report,
) -> Result<(), Failure> {
    let samples = ctx.samples();
    for &k in ks {
        ctx.tick()?;
        let mut rng = ctx.rng();
        let r = timed(report, name, || multilinearity_check(group, k, samples, &mut rng));
        report.check(
            format!("{name}: k={k}"),
            r.is_ok(),
            match r {
                Ok(()) => format!("{samples} instances"),
                Err(w) => truncate(format!("slot {} fails: {:?}", w.position, w.entries), 400),
            },
        );
    }
    Ok(())
}

pub fn verify_multilinear(ctx: &Ctx, report: &mut Report) -> Result<(), Failure> {
    let n = ctx.opts.n.unwrap_or(3);
    let c = ctx.opts.c.unwrap_or(3);
    let p = ctx.prime(ctx.opts.p.unwrap_or(5))?;
    report.prime("p", p);
    report.seed = Some(ctx.opts.seed);
    report.samples = Some(ctx.samples());
    let f = FreeNilpotent::new(n, c, p)?;
    let ks: Vec<usize> = (2..=3).filter(|&k| k <= c).collect();
    multilinear_in(ctx, &format!("F̄({n},{c},{p})"), &f, &ks, report)?;
    let m = n + 1;
    let ks: Vec<usize> = (2..=3).filter(|&k| k < m).collect();
    multilinear_in(ctx, &format!("UT({m},{p})"), &UnitriGroup { m, p }, &ks, report)
}

pub fn verify_lie(ctx: &Ctx, report: &mut Report) -> Result<(), Failure> {
    let cases: Vec<(usize, u32)> = match ctx.opts.n {
        Some(n) => vec![(n, ctx.prime(ctx.opts.p.unwrap_or(5))?)],
        None => vec![
            (3, ctx.prime(ctx.opts.p.unwrap_or(5))?),
            (4, ctx.prime(ctx.opts.p.unwrap_or(5))?),
        ],
    };
    for (n, p) in cases {
        ctx.tick()?;
        let all = timed(report, &format!("n={n}"), || wrapped_commutator_cases(n, p))?;
        let id: Vec<u32> = (0..n as u32 - 1).collect();
        let solutions: Vec<String> = all
            .iter()
            .filter(|c| c.holds)
            .map(|c| format!("({:?}, {})", c.pi, c.a))
            .collect();
        let want = factorial(n - 1) * p as u64;
        report.value(format!("n={n} p={p}: pairs"), all.len());
        report.value(format!("n={n} p={p}: solutions"), json!(solutions));
        report.check(
            format!("n={n} p={p}: every (π, a) classified"),
            all.len() as u64 == want,
            format!("{} of {want}", all.len()),
        );
        let only_identity = all.iter().all(|c| c.holds == (c.pi == id && c.a == 1));
        report.check(
            format!("n={n} p={p}: exactly (id, 1) holds"),
            only_identity,
            solutions.join(" "),
        );
        let mut unrejected = Vec::new();
        for case in &all {
            let w = timed(report, "matrix witnesses", || {
                wrapped_commutator_witness(n, p, &case.pi, case.a)
            })?;
            let is_solution = case.pi == id && case.a == 1;
            if is_solution != (w[0] && w[1]) {
                unrejected.push(format!("({:?}, {})", case.pi, case.a));
            }
        }
        report.check(
            format!("n={n} p={p}: UT({},{p}) witnesses reject every other pair", n + 1),
            unrejected.is_empty(),
            if unrejected.is_empty() {
                format!("{} rejected", all.len() - 1)
            } else {
                unrejected.join(" ")
            },
        );
    }
    Ok(())
}

pub fn verify_outhol(ctx: &Ctx, report: &mut Report) -> Result<(), Failure> {
    let cases: Vec<(u32, usize)> = match (ctx.opts.p, ctx.opts.n) {
        (None, None) => vec![(3, 1), (5, 1), (3, 2), (5, 2)],
        (p, n) => vec![(ctx.prime(p.unwrap_or(3))?, n.unwrap_or(1))],
    };
    for (p, n) in cases {
        ctx.tick()?;
        let name = format!("p={p} n={n}");
        let r = timed(report, &name, || outer_of_holomorph_power(p, n, ctx.limits()))?;
        report.order(format!("{name}: G"), FactoredOrder::of(r.group_order as u64));
        report.order(format!("{name}: Aut"), FactoredOrder::of(r.aut_order));
        report.order(format!("{name}: Out"), FactoredOrder::of(r.out_order));
        report.check(
            format!("{name}: |Out| = n!"),
            r.out_order == factorial(n),
            format!("{}", r.out_order),
        );
        report.check(format!("{name}: Out ≅ S_{n}"), r.out_is_symmetric, "");
        report.check(
            format!("{name}: |Aut| = |Inn|·|Out|"),
            r.aut_order == r.inn_order * r.out_order,
            format!("{} = {}·{}", r.aut_order, r.inn_order, r.out_order),
        );
    }
    Ok(())
}

const OUT_CANDIDATES: &[&str] = &[
    "C2 x C2",
    "S3",
    "C2 x C4",
    "C2 x C2 x C2",
    "D8",
    "Q8",
    "D10",
    "C2 x C2 x C3",
    "D12",
    "perm[(1 2 3), (1 2)(3 4)]",
    "C2 x S3",
    "C4 x C4",
    "C2 x D8",
    "C2 x C2 x C2 x C2",
    "C5 ⋊ C4",
    "C3 x S3",
    "S4",
    "C2 x C2 x S3",
    "C2 x S4",
    "S5",
];

/// A name for a small group, when one of the usual suspects fits.
fn identify(g: &ConcreteGroup, ctx: &Ctx) -> Result<Option<String>, Failure> {
    let n = g.order();
    if n == 1 {
        return Ok(Some("1".into()));
    }
    if g.elements().any(|x| g.element_order(x) == n) {
        return Ok(Some(format!("C{n}")));
    }
    for spec in OUT_CANDIDATES {
        let h = ctx.group(spec)?;
        if h.order() == n && isomorphic(g, &h, ctx.limits())?.is_some() {
            let name = if spec.starts_with("perm") {
                "A4".to_string()
            } else {
                spec.to_string()
            };
            return Ok(Some(name));
        }
    }
    Ok(None)
}

pub fn aut(ctx: &Ctx, spec: &str, report: &mut Report) -> Result<(), Failure> {
    report.spec = Some(spec.to_string());
    let g = timed(report, "realize", || ctx.group(spec))?.tabulate();
    report.order("G", FactoredOrder::of(g.order() as u64));
    report.enumeration.push(Enumeration::of(&g));
    let key = table_key(&g);
    let cache = ctx.opts.cache.as_deref().map(Cache::open).transpose()?;
    let cached = cache.as_ref().map(|c| c.load(&key));
    if let Some((status, _)) = &cached {
        report.value("cache", status.as_str());
    }
    let entry = match cached.and_then(|(_, e)| e) {
        Some(e) if e.group_order == g.order() => e,
        _ => {
            let options = AutOptions {
                store_images: false,
                out_structure: true,
            };
            let r = timed(report, "search", || automorphism_group(&g, options, ctx.limits()))?;
            report.value("search nodes", r.nodes);
            let structure = match &r.out_group {
                Some(out) if r.out_order <= IDENTIFY_OUT_UP_TO => identify(out, ctx)?,
                _ => None,
            };
            let e = AutEntry::new(key, g.order(), r.aut_order, r.inn_order, r.out_order, structure);
            if let Some(c) = &cache {
                c.store(&e)?;
            }
            e
        }
    };
    report.order("Aut", FactoredOrder::of(entry.aut_order));
    report.order("Inn", FactoredOrder::of(entry.inn_order));
    report.order("Out", FactoredOrder::of(entry.out_order));
    report.value("aut", entry.aut_order);
    report.value("inn", entry.inn_order);
    report.value("out", entry.out_order);
    if let Some(s) = &entry.out_structure {
        report.value("Out ≅", s.as_str());
    }
    report.check(
        "|Aut| = |Inn|·|Out|",
        entry.aut_order == entry.inn_order * entry.out_order,
        format!("{} = {}·{}", entry.aut_order, entry.inn_order, entry.out_order),
    );
    let z = center(&g).len();
    report.check(
        "|Inn| = |G|/|Z(G)|",
        entry.inn_order * z as u64 == g.order() as u64,
        format!("|Z| = {z}"),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(f: impl FnOnce(&Ctx, &mut Report) -> Result<(), Failure>, opts: Options) -> Report {
        let ctx = Ctx::new(opts);
        let mut r = Report::new(vec![]);
        f(&ctx, &mut r).unwrap();
        r
    }

    #[test]
    fn witt_examples() {
        let r = run(|c, r| witt(c, 3, 3, r), Options::default());
        assert_eq!(r.values["degrees"], json!([3, 3, 8]));
        assert_eq!(r.values["total"], json!(14));
        assert!(r.passed);
        let r = run(|c, r| witt(c, 1, 4, r), Options::default());
        assert_eq!(r.values["total"], json!(1));
        let r = run(
            |c, r| witt(c, 2, 3, r),
            Options {
                p: Some(5),
                ..Options::default()
            },
        );
        assert_eq!(r.values["degrees"], json!([2, 1, 2]));
        assert_eq!(r.orders["F̄"].text, "5^5");
    }

    #[test]
    fn aut_examples() {
        for (spec, want, out) in [
            ("S3", (6, 6, 1), "1"),
            ("C3", (2, 1, 2), "C2"),
            ("Q8", (24, 4, 6), "S3"),
        ] {
            let r = run(|c, r| aut(c, spec, r), Options::default());
            let got = (
                r.values["aut"].as_u64().unwrap(),
                r.values["inn"].as_u64().unwrap(),
                r.values["out"].as_u64().unwrap(),
            );
            assert_eq!(got, want, "{spec}");
            assert_eq!(r.values["Out ≅"], json!(out), "{spec}");
            assert!(r.passed);
        }
    }

    #[test]
    fn holomorph_and_pettet_orders() {
        let r = run(
            construct_holomorph,
            Options {
                p: Some(3),
                n: Some(2),
                ..Options::default()
            },
        );
        assert_eq!(r.orders["G"].value(), Some(36));
        assert!(r.passed, "{}", r.render());
        let r = run(|c, r| construct_pettet(c, Some("C2"), r), Options::default());
        assert_eq!(r.orders["Ĝ"].value(), Some(2646));
        assert!(r.passed, "{}", r.render());
    }

    #[test]
    fn missing_prime_is_usage() {
        let ctx = Ctx::new(Options::default());
        let e = construct_holomorph(&ctx, &mut Report::new(vec![])).unwrap_err();
        assert_eq!(e.exit_code(), crate::EXIT_USAGE);
    }

    #[test]
    fn expired_deadline_times_out() {
        let ctx = Ctx::new(Options {
            timeout: Duration::ZERO,
            ..Options::default()
        });
        let e = verify_outhol(&ctx, &mut Report::new(vec![])).unwrap_err();
        assert_eq!(e.exit_code(), crate::EXIT_RESOURCE);
    }

    #[test]
    fn lemma_aut_spec_form() {
        let r = run(|c, r| verify_lemma_aut(c, Some("C7 ⋊{pow2} C3"), r), Options::default());
        assert!(r.passed);
        let ctx = Ctx::new(Options::default());
        let e = verify_lemma_aut(&ctx, Some("S3"), &mut Report::new(vec![])).unwrap_err();
        assert_eq!(e.exit_code(), crate::EXIT_USAGE);
    }
}

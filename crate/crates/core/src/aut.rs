//! Automorphism groups, inner automorphisms and isomorphism tests for
//! enumerable groups, by backtracking over generator images.
//!
//! Candidate images are filtered by an invariant signature (element order,
//! class size, membership in the derived subgroup and the center, and class
//! sizes of prime powers). Each partial assignment is checked as an
//! injective homomorphism on the subgroup generated so far, so a leaf that
//! survives is a verified bijective homomorphism on the whole group.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::group::{
    center, conjugacy_classes, derived_subgroup, quotient, subgroup_closure, ConcreteGroup, Elem, TableLaw,
};
use crate::number::prime_factors;

/// Default cap on the order of groups searched.
pub const DEFAULT_SEARCH_BOUND: usize = 5000;

/// Caller-side resource limits. `abort` is polled during the search; when
/// it returns `true` the search stops with [`Error::Timeout`].
#[derive(Clone, Copy)]
pub struct SearchLimits<'a> {
    pub bound: usize,
    pub abort: Option<&'a dyn Fn() -> bool>,
}

impl Default for SearchLimits<'_> {
    fn default() -> Self {
        Self {
            bound: DEFAULT_SEARCH_BOUND,
            abort: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Signature {
    order: u32,
    class_size: u32,
    in_derived: bool,
    in_center: bool,
    /// Class size of `x^r` for each prime `r` dividing `|G|`.
    powers: Vec<u32>,
}

/// A tabulated group with per-element invariants.
struct Prepared {
    group: ConcreteGroup,
    signatures: Vec<Signature>,
    by_signature: HashMap<Signature, Vec<Elem>>,
}

impl Prepared {
    fn new(g: &ConcreteGroup, limits: &SearchLimits<'_>) -> Result<Self> {
        if g.order() > limits.bound {
            return Err(Error::BoundExceeded {
                order: g.order() as u128,
                bound: limits.bound,
            });
        }
        let group = g.tabulate();
        let classes = conjugacy_classes(&group);
        let mut derived = vec![false; group.order()];
        for x in derived_subgroup(&group) {
            derived[x as usize] = true;
        }
        let mut central = vec![false; group.order()];
        for x in center(&group) {
            central[x as usize] = true;
        }
        let primes = prime_factors(group.order() as u64);
        let signatures: Vec<Signature> = group
            .elements()
            .map(|x| Signature {
                order: group.element_order(x) as u32,
                class_size: classes.class_size(x) as u32,
                in_derived: derived[x as usize],
                in_center: central[x as usize],
                powers: primes
                    .iter()
                    .map(|&r| classes.class_size(group.pow(x, r as i64)) as u32)
                    .collect(),
            })
            .collect();
        let mut by_signature: HashMap<Signature, Vec<Elem>> = HashMap::new();
        for (x, s) in signatures.iter().enumerate() {
            by_signature.entry(s.clone()).or_default().push(x as Elem);
        }
        Ok(Self {
            group,
            signatures,
            by_signature,
        })
    }

    fn candidates(&self, sig: &Signature) -> &[Elem] {
        self.by_signature.get(sig).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Greedy generating set: elements with few candidates first, then
    /// redundant ones dropped.
    fn search_generators(&self) -> Vec<Elem> {
        let g = &self.group;
        let n = g.order();
        let mut gens: Vec<Elem> = Vec::new();
        let mut sub = vec![0 as Elem];
        while sub.len() < n {
            let mut member = vec![false; n];
            for &x in &sub {
                member[x as usize] = true;
            }
            let mut outside: Vec<Elem> = g.elements().filter(|&x| !member[x as usize]).collect();
            outside.sort_by_key(|&x| (self.candidates(&self.signatures[x as usize]).len(), x));
            let best_score = self.candidates(&self.signatures[outside[0] as usize]).len();
            let mut best: Option<(Elem, Vec<Elem>)> = None;
            for &x in outside
                .iter()
                .take_while(|&&x| self.candidates(&self.signatures[x as usize]).len() == best_score)
                .take(16)
            {
                let mut trial = gens.clone();
                trial.push(x);
                let s = subgroup_closure(g, &trial);
                if best.as_ref().is_none_or(|b| s.len() > b.1.len()) {
                    best = Some((x, s));
                }
            }
            let (x, s) = best.expect("at least one element outside the subgroup");
            gens.push(x);
            sub = s;
        }
        let mut i = 0;
        while i < gens.len() {
            let mut rest = gens.clone();
            rest.remove(i);
            if subgroup_closure(g, &rest).len() == n {
                gens = rest;
            } else {
                i += 1;
            }
        }
        gens
    }
}

#[derive(Clone, Copy)]
enum Edge {
    /// `map[to] = map[from] · image[gen]`.
    Tree { from: Elem, gen: usize, to: Elem },
    /// `map[to] == map[from] · image[gen]`.
    Check { from: Elem, gen: usize, to: Elem },
}

/// For each prefix `gens[..=k]`, the edges of a breadth-first traversal of
/// the generated subgroup, covering every (element, generator) pair.
fn level_edges(g: &ConcreteGroup, gens: &[Elem]) -> Vec<Vec<Edge>> {
    let n = g.order();
    let mut out = Vec::with_capacity(gens.len());
    for k in 0..gens.len() {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = vec![0 as Elem];
        let mut head = 0;
        let mut edges = Vec::new();
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (j, &s) in gens[..=k].iter().enumerate() {
                let y = g.mul(x, s);
                if seen[y as usize] {
                    edges.push(Edge::Check { from: x, gen: j, to: y });
                } else {
                    seen[y as usize] = true;
                    queue.push(y);
                    edges.push(Edge::Tree { from: x, gen: j, to: y });
                }
            }
        }
        out.push(edges);
    }
    out
}

/// Backtracking search for injective homomorphisms `src → dst` that send
/// each search generator to an element with the same signature. `visit`
/// receives the generator images and the full map; returning `false` stops.
struct HomSearch<'a> {
    src: &'a Prepared,
    dst: &'a Prepared,
    gens: Vec<Elem>,
    edges: Vec<Vec<Edge>>,
    limits: SearchLimits<'a>,
    nodes: u64,
}

impl<'a> HomSearch<'a> {
    fn new(src: &'a Prepared, dst: &'a Prepared, limits: SearchLimits<'a>) -> Self {
        let gens = src.search_generators();
        let edges = level_edges(&src.group, &gens);
        Self {
            src,
            dst,
            gens,
            edges,
            limits,
            nodes: 0,
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Elem], &[Elem]) -> bool) -> Result<()> {
        let n = self.dst.group.order();
        let mut images = Vec::with_capacity(self.gens.len());
        let mut map = vec![Elem::MAX; n];
        let mut stamp = vec![0u32; n];
        let mut epoch = 0u32;
        if self.gens.is_empty() {
            visit(&[], &[0]);
            return Ok(());
        }
        self.descend(0, &mut images, &mut map, &mut stamp, &mut epoch, visit)
            .map(|_| ())
    }

    /// Returns `Ok(false)` when the visitor asked to stop.
    fn descend(
        &mut self,
        level: usize,
        images: &mut Vec<Elem>,
        map: &mut [Elem],
        stamp: &mut [u32],
        epoch: &mut u32,
        visit: &mut dyn FnMut(&[Elem], &[Elem]) -> bool,
    ) -> Result<bool> {
        let sig = &self.src.signatures[self.gens[level] as usize];
        let cands: Vec<Elem> = self.dst.candidates(sig).to_vec();
        for c in cands {
            self.nodes += 1;
            if self.nodes.is_multiple_of(1024) {
                if let Some(abort) = self.limits.abort {
                    if abort() {
                        return Err(Error::Timeout);
                    }
                }
            }
            images.push(c);
            if self.consistent(level, images, map, stamp, epoch) {
                if level + 1 == self.gens.len() {
                    if !visit(images, map) {
                        return Ok(false);
                    }
                } else if !self.descend(level + 1, images, map, stamp, epoch, visit)? {
                    return Ok(false);
                }
            }
            images.pop();
        }
        Ok(true)
    }

    fn consistent(&self, level: usize, images: &[Elem], map: &mut [Elem], stamp: &mut [u32], epoch: &mut u32) -> bool {
        let dst = &self.dst.group;
        *epoch = epoch.wrapping_add(1);
        if *epoch == 0 {
            stamp.iter_mut().for_each(|s| *s = 0);
            *epoch = 1;
        }
        map[0] = 0;
        stamp[0] = *epoch;
        for e in &self.edges[level] {
            match *e {
                Edge::Tree { from, gen, to } => {
                    let y = dst.mul(map[from as usize], images[gen]);
                    if stamp[y as usize] == *epoch {
                        return false;
                    }
                    stamp[y as usize] = *epoch;
                    map[to as usize] = y;
                }
                Edge::Check { from, gen, to } => {
                    if dst.mul(map[from as usize], images[gen]) != map[to as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A full element map of an automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub map: Vec<Elem>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n as Elem).collect(),
        }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            map: other.map.iter().map(|&x| self.map[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as Elem;
        }
        Self { map: inv }
    }

    /// Conjugation `x ↦ h x h⁻¹`.
    pub fn conjugation(g: &ConcreteGroup, h: Elem) -> Self {
        Self {
            map: g.elements().map(|x| g.conjugate(h, x)).collect(),
        }
    }

    /// Whether this is a bijective homomorphism of `g`.
    pub fn is_automorphism(&self, g: &ConcreteGroup) -> bool {
        crate::group::validate_automorphism(g, &self.map).is_ok()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AutOptions {
    /// Keep the generator images of every automorphism.
    pub store_images: bool,
    /// Compute Out as a group (coset representatives and multiplication).
    pub out_structure: bool,
}

#[derive(Clone, Debug)]
pub struct AutGroupResult {
    pub group_order: usize,
    /// Generators whose images determine an automorphism.
    pub search_generators: Vec<Elem>,
    pub aut_order: u64,
    pub inn_order: u64,
    pub out_order: u64,
    /// Generator images of every automorphism, when requested.
    pub images: Vec<Vec<Elem>>,
    /// One automorphism per Inn-coset, when requested; the first is the identity.
    pub out_representatives: Vec<Automorphism>,
    /// Out as a table group on the representatives, when requested.
    pub out_group: Option<ConcreteGroup>,
    pub nodes: u64,
}

/// Elements representing the distinct inner automorphisms (one per coset
/// of the center).
pub fn inner_automorphisms(g: &ConcreteGroup) -> Vec<Elem> {
    let z = center(g);
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for h in g.elements() {
        if seen[h as usize] {
            continue;
        }
        reps.push(h);
        for &c in &z {
            seen[g.mul(h, c) as usize] = true;
        }
    }
    reps
}

/// Canonical key of the Inn-coset of an automorphism with the given
/// generator images: the least conjugate tuple.
fn out_key(g: &ConcreteGroup, inner: &[Elem], inner_inv: &[Elem], images: &[Elem]) -> Vec<Elem> {
    let mut best: Option<Vec<Elem>> = None;
    let mut cur = Vec::with_capacity(images.len());
    for (&h, &hi) in inner.iter().zip(inner_inv) {
        cur.clear();
        cur.extend(images.iter().map(|&y| g.mul(g.mul(h, y), hi)));
        if best.as_ref().is_none_or(|b| cur < *b) {
            best = Some(cur.clone());
        }
    }
    best.unwrap_or_default()
}

/// `Aut(G)` with `|Inn|` and `|Out|`; `visit` sees the full map of every
/// automorphism (return `false` to abort the enumeration, which is then
/// reported as incomplete through [`Error::Precondition`]).
pub fn automorphism_group_with(
    g: &ConcreteGroup,
    options: AutOptions,
    limits: SearchLimits<'_>,
    visit: &mut dyn FnMut(&Automorphism) -> bool,
) -> Result<AutGroupResult> {
    let prep = Prepared::new(g, &limits)?;
    let tg = prep.group.clone();
    let inner = inner_automorphisms(&tg);
    let inner_inv: Vec<Elem> = inner.iter().map(|&h| tg.inv(h)).collect();
    let mut search = HomSearch::new(&prep, &prep, limits);
    let gens = search.gens.clone();
    let mut aut_order = 0u64;
    let mut images_out = Vec::new();
    let mut keys: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut reps: Vec<Automorphism> = Vec::new();
    let mut stopped = false;
    let mut scratch = Automorphism { map: Vec::new() };
    search.run(&mut |images, map| {
        aut_order += 1;
        scratch.map.clear();
        scratch.map.extend_from_slice(map);
        if options.store_images {
            images_out.push(images.to_vec());
        }
        if options.out_structure {
            let key = out_key(&tg, &inner, &inner_inv, images);
            if !keys.contains_key(&key) {
                keys.insert(key, reps.len());
                reps.push(scratch.clone());
            }
        }
        if !visit(&scratch) {
            stopped = true;
            return false;
        }
        true
    })?;
    if stopped {
        return Err(Error::Precondition(
            "automorphism enumeration stopped by visitor".into(),
        ));
    }
    let inn_order = inner.len() as u64;
    let nodes = search.nodes;
    let mut out_group = None;
    if options.out_structure {
        // identity first
        let id_key = out_key(&tg, &inner, &inner_inv, &gens);
        let id_idx = keys[&id_key];
        reps.swap(0, id_idx);
        let mut index: HashMap<Vec<Elem>, Elem> = HashMap::new();
        for (i, r) in reps.iter().enumerate() {
            let imgs: Vec<Elem> = gens.iter().map(|&y| r.apply(y)).collect();
            index.insert(out_key(&tg, &inner, &inner_inv, &imgs), i as Elem);
        }
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for a in &reps {
            for b in &reps {
                let imgs: Vec<Elem> = gens.iter().map(|&y| a.apply(b.apply(y))).collect();
                table.push(index[&out_key(&tg, &inner, &inner_inv, &imgs)]);
            }
        }
        let labels: Vec<String> = (0..k).map(|i| alloc::format!("o{i}")).collect();
        let law = TableLaw::from_table(k, table, labels)?;
        let all: Vec<Elem> = (1..k as Elem).collect();
        out_group =
            Some(ConcreteGroup::new(Arc::new(law), all, alloc::format!("Out({})", g.name())).minimal_generators());
    }
    let out_order = aut_order / inn_order;
    Ok(AutGroupResult {
        group_order: g.order(),
        search_generators: gens,
        aut_order,
        inn_order,
        out_order,
        images: images_out,
        out_representatives: reps,
        out_group,
        nodes,
    })
}

pub fn automorphism_group(g: &ConcreteGroup, options: AutOptions, limits: SearchLimits<'_>) -> Result<AutGroupResult> {
    automorphism_group_with(g, options, limits, &mut |_| true)
}

/// An isomorphism `a → b` as a full element map, or `None`.
pub fn isomorphic(a: &ConcreteGroup, b: &ConcreteGroup, limits: SearchLimits<'_>) -> Result<Option<Vec<Elem>>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    let pa = Prepared::new(a, &limits)?;
    let pb = Prepared::new(b, &limits)?;
    let mut sa: Vec<&Signature> = pa.signatures.iter().collect();
    let mut sb: Vec<&Signature> = pb.signatures.iter().collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let mut found = None;
    HomSearch::new(&pa, &pb, limits).run(&mut |_, map| {
        found = Some(map.to_vec());
        false
    })?;
    Ok(found)
}

/// The automorphism of `G/N` induced by `alpha`, together with whether it
/// is inner.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub quotient: ConcreteGroup,
    /// Image of every coset.
    pub map: Vec<Elem>,
    pub is_inner: bool,
    pub is_identity: bool,
}

pub fn induced_on_quotient(g: &ConcreteGroup, alpha: &Automorphism, normal: &[Elem]) -> Result<InducedMap> {
    let mut member = vec![false; g.order()];
    for &x in normal {
        member[x as usize] = true;
    }
    if normal.iter().any(|&x| !member[alpha.apply(x) as usize]) {
        return Err(Error::NotNormalizing);
    }
    let q = quotient(g, normal)?;
    let map: Vec<Elem> = q
        .representatives
        .iter()
        .map(|&r| q.coset_of[alpha.apply(r) as usize])
        .collect();
    let qg = &q.group;
    let is_identity = map.iter().enumerate().all(|(i, &y)| i as Elem == y);
    let is_inner = qg
        .elements()
        .any(|c| qg.elements().all(|x| qg.conjugate(c, x) == map[x as usize]));
    Ok(InducedMap {
        quotient: q.group,
        map,
        is_inner,
        is_identity,
    })
}

impl ConcreteGroup {
    /// Same group with a greedily shortened generator list.
    pub fn minimal_generators(self) -> Self {
        let mut gens = self.generators().to_vec();
        let n = self.order();
        let mut i = 0;
        while i < gens.len() {
            let mut rest = gens.clone();
            rest.remove(i);
            if subgroup_closure(&self, &rest).len() == n {
                gens = rest;
            } else {
                i += 1;
            }
        }
        self.with_generators(gens)
    }
}

/// Outcome of checking that automorphisms of `C_m ⋊ A` normalizing `C_m`
/// act trivially on the quotient `A`.
#[derive(Clone, Debug, Default)]
pub struct CyclicExtensionReport {
    pub group_order: usize,
    pub aut_order: u64,
    /// Automorphisms mapping `C_m` to itself.
    pub normalizing: u64,
    /// Of those, the ones inducing the identity on the quotient.
    pub centralizing: u64,
    pub witness: Option<String>,
}

impl CyclicExtensionReport {
    pub fn passed(&self) -> bool {
        self.normalizing == self.centralizing
    }
}

/// Builds `C_m ⋊ A` where acting generator `j` sends `x ↦ x^{powers[j]}`,
/// requires the action to be faithful, and checks every automorphism that
/// normalizes `C_m`.
pub fn check_cyclic_extension_autos(
    m: u32,
    acting: &ConcreteGroup,
    powers: &[u32],
    limits: SearchLimits<'_>,
) -> Result<CyclicExtensionReport> {
    let cm = ConcreteGroup::cyclic(m);
    let action = crate::group::ActionMap::from_fn(&cm, powers.len(), |j, x| {
        ((x as u64 * powers[j] as u64) % m as u64) as Elem
    });
    let table = action.extend(&cm, acting)?;
    let nm = m as usize;
    if let Some(a) = (1..acting.order()).find(|&a| (0..nm).all(|x| table[a * nm + x] as usize == x)) {
        return Err(Error::InvalidAction(alloc::format!(
            "action is not faithful: {} acts trivially",
            acting.label(a as Elem)
        )));
    }
    let hat = crate::group::semidirect(&cm, acting, &action, limits.bound)?;
    let na = acting.order() as Elem;
    let in_n = |x: Elem| x.is_multiple_of(na);
    let n_gen: Elem = hat.generators().first().copied().unwrap_or(0);
    let quotient_gens: Vec<Elem> = acting.generators().to_vec();
    let mut report = CyclicExtensionReport {
        group_order: hat.order(),
        ..Default::default()
    };
    let mut visit = |alpha: &Automorphism| {
        if !in_n(alpha.apply(n_gen)) {
            return true;
        }
        report.normalizing += 1;
        // t = (1, a) has index a; α(t)·t⁻¹ ∈ N iff the acting components agree
        if quotient_gens.iter().all(|&a| alpha.apply(a) % na == a) {
            report.centralizing += 1;
        } else if report.witness.is_none() {
            let imgs: Vec<String> = hat.generators().iter().map(|&x| hat.label(alpha.apply(x))).collect();
            report.witness = Some(imgs.join(", "));
        }
        true
    };
    let r = automorphism_group_with(&hat, AutOptions::default(), limits, &mut visit)?;
    report.aut_order = r.aut_order;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_group_spec, realize};

    fn group(s: &str) -> ConcreteGroup {
        realize(&parse_group_spec(s).unwrap()).unwrap()
    }

    fn aut(s: &str) -> AutGroupResult {
        automorphism_group(
            &group(s),
            AutOptions {
                store_images: true,
                out_structure: true,
            },
            SearchLimits::default(),
        )
        .unwrap()
    }

    #[test]
    fn small_automorphism_groups() {
        let r = aut("C3");
        assert_eq!((r.aut_order, r.inn_order, r.out_order), (2, 1, 2));
        let r = aut("S3");
        assert_eq!((r.aut_order, r.inn_order, r.out_order), (6, 6, 1));
        let r = aut("Q8");
        assert_eq!((r.aut_order, r.inn_order, r.out_order), (24, 4, 6));
        assert!(!r.out_group.unwrap().is_abelian());
        let r = aut("C2 x C2");
        assert_eq!(r.aut_order, 6);
    }

    #[test]
    fn isomorphism_tests() {
        assert!(isomorphic(&group("S3"), &group("D6"), SearchLimits::default())
            .unwrap()
            .is_some());
        assert!(isomorphic(&group("C6"), &group("S3"), SearchLimits::default())
            .unwrap()
            .is_none());
        assert!(isomorphic(&group("D8"), &group("Q8"), SearchLimits::default())
            .unwrap()
            .is_none());
        let m = isomorphic(&group("C2 x C3"), &group("C6"), SearchLimits::default()).unwrap();
        assert!(m.is_some());
    }

    #[test]
    fn cyclic_extensions() {
        let r = check_cyclic_extension_autos(7, &ConcreteGroup::cyclic(3), &[2], SearchLimits::default()).unwrap();
        assert_eq!(r.aut_order, 42);
        assert!(r.passed() && r.normalizing == 42);
        let r = check_cyclic_extension_autos(5, &ConcreteGroup::trivial(), &[], SearchLimits::default()).unwrap();
        assert!(r.passed());
        let bad = check_cyclic_extension_autos(7, &ConcreteGroup::cyclic(6), &[2], SearchLimits::default());
        assert!(matches!(bad, Err(Error::InvalidAction(_))));
    }

    #[test]
    fn timeout_is_reported() {
        let abort = || true;
        let limits = SearchLimits {
            bound: 5000,
            abort: Some(&abort),
        };
        let err = automorphism_group(&group("C2 x C2 x C2 x C2 x C2"), AutOptions::default(), limits);
        assert!(matches!(err, Err(Error::Timeout)));
    }
}

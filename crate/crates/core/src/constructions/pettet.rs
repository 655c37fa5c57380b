//! The tower `Ĝ = (Q ⋊ P) ⋊ G`: `P` is the class-2 group on `v_g` with
//! `v_g^p = Π_i [v_g, v_{g·x_i}]^i`, `Q` is elementary abelian of exponent
//! `q` on `w_g`, `v_g` scales `w_g` by `ζ` (order `p`) and fixes the other
//! `w_h`, and `G` permutes both families regularly.
//!
//! Elements are triples `(w, v, g)` multiplied by
//! `(w,v,g)(w′,v′,g′) = (w·γ_v(ψ_g(w′)), v·φ_g(v′), g g′)`, and indexed by
//! `(qidx·|P| + pidx)·|G| + g` with `qidx` mixed radix (first coordinate most
//! significant) and `pidx` the class-2 encoding. This is also the indexing
//! of the nested generic semidirect product, which the tests compare against.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::Check;
use crate::aut::{automorphism_group_with, AutOptions, Automorphism, SearchLimits};
use crate::class2::{cayley_power_group, CayleyPowerGroup, Class2Presentation};
use crate::error::{Error, Result};
use crate::group::{
    check_bound, derived_subgroup, semidirect, subgroup_closure, ActionMap, ConcreteGroup, Elem, GroupLaw,
};
use crate::number::{find_prime_q, is_prime, next_prime, primitive_root};

struct TowerLaw {
    m: usize,
    q: u32,
    q_order: usize,
    p_order: usize,
    g: ConcreteGroup,
    p_mul: Vec<Elem>,
    p_inv: Vec<Elem>,
    /// `phi[g·|P| + v]`.
    phi: Vec<Elem>,
    /// Exponents of `v_h` in the abelianization of each `v`.
    p_abel: Vec<Vec<u32>>,
    /// `zeta_pow[k] = ζ^k mod q`.
    zeta_pow: Vec<u32>,
    p: u32,
}

impl TowerLaw {
    fn split(&self, x: Elem) -> (usize, usize, Elem) {
        let m = self.g.order();
        let x = x as usize;
        let g = x % m;
        let rest = x / m;
        (rest / self.p_order, rest % self.p_order, g as Elem)
    }

    fn join(&self, qi: usize, pi: usize, g: Elem) -> Elem {
        ((qi * self.p_order + pi) * self.g.order() + g as usize) as Elem
    }

    fn digits(&self, mut qi: usize) -> Vec<u32> {
        let mut d = vec![0u32; self.m];
        for slot in d.iter_mut().rev() {
            *slot = (qi % self.q as usize) as u32;
            qi /= self.q as usize;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> usize {
        d.iter().fold(0usize, |acc, &x| acc * self.q as usize + x as usize)
    }

    /// `ψ_g`: coordinate `h` moves to `g·h`.
    fn psi(&self, g: Elem, w: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.m];
        for (h, &c) in w.iter().enumerate() {
            out[self.g.mul(g, h as Elem) as usize] = c;
        }
        out
    }

    /// `γ_v` raised to `sign`: coordinate `h` scaled by `ζ^{±a_h}`.
    fn gamma(&self, v: usize, w: &mut [u32], inverse: bool) {
        for (h, c) in w.iter_mut().enumerate() {
            let a = self.p_abel[v][h];
            let e = if inverse { (self.p - a) % self.p } else { a };
            *c = ((*c as u64 * self.zeta_pow[e as usize] as u64) % self.q as u64) as u32;
        }
    }
}

impl GroupLaw for TowerLaw {
    fn order(&self) -> usize {
        self.q_order * self.p_order * self.g.order()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (qa, pa, ga) = self.split(a);
        let (qb, pb, gb) = self.split(b);
        let mut w = self.psi(ga, &self.digits(qb));
        self.gamma(pa, &mut w, false);
        for (x, y) in w.iter_mut().zip(self.digits(qa)) {
            *x = (*x + y) % self.q;
        }
        let pv = self.p_mul[pa * self.p_order + self.phi[ga as usize * self.p_order + pb] as usize];
        self.join(self.undigits(&w), pv as usize, self.g.mul(ga, gb))
    }

    fn inv(&self, a: Elem) -> Elem {
        let (qa, pa, ga) = self.split(a);
        let gi = self.g.inv(ga);
        let v2 = self.phi[gi as usize * self.p_order + self.p_inv[pa] as usize];
        let mut w: Vec<u32> = self.digits(qa).iter().map(|&x| (self.q - x) % self.q).collect();
        self.gamma(pa, &mut w, true);
        let w2 = self.psi(gi, &w);
        self.join(self.undigits(&w2), v2 as usize, gi)
    }

    fn label(&self, a: Elem) -> String {
        let (qa, pa, ga) = self.split(a);
        format!("({:?}; p{}; {})", self.digits(qa), pa, self.g.label(ga))
    }
}

#[derive(Clone, Debug)]
pub struct PettetTower {
    /// The input group (tabulated).
    pub g: ConcreteGroup,
    pub generating_set: Vec<Elem>,
    pub p: u32,
    pub q: u32,
    /// Element of order `p` in `F_q^×`.
    pub zeta: u32,
    pub p_group: CayleyPowerGroup,
    /// `Ĝ`, with generators `w_h`, then `v_h`, then the generating set of `G`.
    pub hat: ConcreteGroup,
    p_order: usize,
}

/// Assembles the tower. Defaults: `p` the least prime above `|G|`, `q` the
/// least prime `≡ 1 (mod p)`.
pub fn pettet_construct(
    g: &ConcreteGroup,
    generating_set: &[Elem],
    p: Option<u32>,
    q: Option<u32>,
    bound: usize,
) -> Result<PettetTower> {
    let m = g.order();
    if m == 1 {
        return Err(Error::Precondition("the trivial group is excluded".into()));
    }
    if generating_set.contains(&0) || subgroup_closure(g, generating_set).len() != m {
        return Err(Error::Precondition(
            "generating set must generate and must not contain the identity".into(),
        ));
    }
    let p = p.unwrap_or_else(|| next_prime(m as u32));
    if !is_prime(p) || p as usize <= m {
        return Err(Error::Precondition(format!("need a prime p > |G| = {m}, got {p}")));
    }
    let q = match q {
        Some(q) => q,
        None => find_prime_q(p)?,
    };
    if !is_prime(q) || q % p != 1 {
        return Err(Error::Precondition(format!("need a prime q ≡ 1 (mod {p}), got {q}")));
    }
    let pres_exp = m + m * (m - 1) / 2;
    let total = (q as u128)
        .checked_pow(m as u32)
        .and_then(|x| x.checked_mul((p as u128).checked_pow(pres_exp as u32)?))
        .and_then(|x| x.checked_mul(m as u128))
        .unwrap_or(u128::MAX);
    check_bound(total, bound)?;
    let g = g.tabulate();
    let pg = cayley_power_group(&g, p, generating_set)?;
    let pres = &pg.presentation;
    let p_order = pres.order() as usize;
    let q_order = (q as usize).pow(m as u32);
    let pgroup = pres.to_group(bound)?;
    let p_mul = pgroup.multiplication_table();
    let p_inv: Vec<Elem> = pgroup.elements().map(|x| pgroup.inv(x)).collect();
    let mut phi = Vec::with_capacity(m * p_order);
    for h in g.elements() {
        let images = pg.translation_images(&g, h);
        for x in 0..p_order as Elem {
            phi.push(pres.encode(&pres.substitute(&images, &pres.decode(x))?));
        }
    }
    let p_abel: Vec<Vec<u32>> = (0..p_order as Elem).map(|x| pres.decode(x).a).collect();
    let zeta = primitive_root(q)?.pow(((q - 1) / p) as u64).value();
    let zeta_pow: Vec<u32> = (0..p as u64)
        .map(|k| crate::fp::Residue::new(zeta as u64, q).pow(k).value())
        .collect();
    let law = TowerLaw {
        m,
        q,
        q_order,
        p_order,
        g: g.clone(),
        p_mul,
        p_inv,
        phi,
        p_abel,
        zeta_pow,
        p,
    };
    let mut gens = Vec::new();
    for h in 0..m {
        let mut d = vec![0u32; m];
        d[h] = 1;
        gens.push(law.join(law.undigits(&d), 0, 0));
    }
    for h in 0..m {
        gens.push(law.join(0, pres.encode(&pres.generator(h)) as usize, 0));
    }
    for &s in generating_set {
        gens.push(law.join(0, 0, s));
    }
    let hat = ConcreteGroup::new(Arc::new(law), gens, format!("tower({}, p={p}, q={q})", g.name())).tabulate();
    Ok(PettetTower {
        g,
        generating_set: generating_set.to_vec(),
        p,
        q,
        zeta,
        p_group: pg,
        hat,
        p_order,
    })
}

impl PettetTower {
    fn m(&self) -> usize {
        self.g.order()
    }

    fn pres(&self) -> &Class2Presentation {
        &self.p_group.presentation
    }

    pub fn index(&self, qi: usize, pi: usize, g: Elem) -> Elem {
        ((qi * self.p_order + pi) * self.m() + g as usize) as Elem
    }

    /// `(qidx, pidx, g)`.
    pub fn split(&self, x: Elem) -> (usize, usize, Elem) {
        let m = self.m();
        let x = x as usize;
        ((x / m) / self.p_order, (x / m) % self.p_order, (x % m) as Elem)
    }

    pub fn w(&self, h: Elem) -> Elem {
        self.hat.generators()[h as usize]
    }

    pub fn v(&self, h: Elem) -> Elem {
        self.hat.generators()[self.m() + h as usize]
    }

    /// `G` embedded as `(1, 1, g)`.
    pub fn t(&self, g: Elem) -> Elem {
        self.index(0, 0, g)
    }

    /// `w_h^k`.
    pub fn w_pow(&self, h: Elem, k: u32) -> Elem {
        self.hat.pow(self.w(h), k as i64)
    }

    /// `q^{|G|} · p^{|G|(|G|+1)/2} · |G|`.
    pub fn order_formula(&self) -> u128 {
        let m = self.m() as u32;
        (self.q as u128).pow(m) * (self.p as u128).pow(m * (m + 1) / 2) * m as u128
    }

    /// Membership masks of `Q` and `N = Q ⋊ P`.
    pub fn q_mask(&self) -> Vec<bool> {
        self.hat
            .elements()
            .map(|x| {
                let (_, pi, g) = self.split(x);
                pi == 0 && g == 0
            })
            .collect()
    }

    pub fn n_mask(&self) -> Vec<bool> {
        self.hat.elements().map(|x| self.split(x).2 == 0).collect()
    }

    /// `P′` embedded in `Ĝ`.
    pub fn p_derived(&self) -> Result<Vec<Elem>> {
        let pgroup = self.pres().to_group(usize::MAX)?;
        let mut d: Vec<Elem> = derived_subgroup(&pgroup)
            .into_iter()
            .map(|x| self.index(0, x as usize, 0))
            .collect();
        d.sort_unstable();
        Ok(d)
    }

    /// The same group assembled generically as `(Q ⋊_γ P) ⋊_{φψ} G`.
    pub fn generic_assembly(&self, bound: usize) -> Result<ConcreteGroup> {
        let m = self.m();
        let q = self.q;
        let cq = ConcreteGroup::cyclic(q);
        let qgroup = crate::group::direct_product(&vec![cq; m], bound)?;
        let pgroup = self.pres().to_group(bound)?;
        let digits = |mut x: usize| {
            let mut d = vec![0u32; m];
            for slot in d.iter_mut().rev() {
                *slot = (x % q as usize) as u32;
                x /= q as usize;
            }
            d
        };
        let undigits = |d: &[u32]| d.iter().fold(0usize, |a, &x| a * q as usize + x as usize) as Elem;
        let gamma = ActionMap::from_fn(&qgroup, m, |h, x| {
            let mut d = digits(x as usize);
            d[h] = ((d[h] as u64 * self.zeta as u64) % q as u64) as u32;
            undigits(&d)
        });
        let n = semidirect(&qgroup, &pgroup, &gamma, bound)?;
        let pres = self.pres();
        let act = ActionMap::new(
            self.g
                .generators()
                .iter()
                .map(|&s| {
                    let images = self.p_group.translation_images(&self.g, s);
                    n.elements()
                        .map(|x| {
                            let (qi, pi) = (x as usize / self.p_order, x as usize % self.p_order);
                            let d = digits(qi);
                            let mut moved = vec![0u32; m];
                            for (h, &c) in d.iter().enumerate() {
                                moved[self.g.mul(s, h as Elem) as usize] = c;
                            }
                            let v = pres
                                .substitute(&images, &pres.decode(pi as Elem))
                                .expect("presentation shape");
                            (undigits(&moved) as usize * self.p_order + pres.encode(&v) as usize) as Elem
                        })
                        .collect()
                })
                .collect(),
        );
        semidirect(&n, &self.g, &act, bound)
    }

    /// Structural checks on the assembled group. The center of `N` is
    /// computed exhaustively.
    pub fn checks(&self) -> Result<Vec<Check>> {
        let hat = &self.hat;
        let m = self.m() as Elem;
        let mut out = Vec::new();
        let formula = self.order_formula();
        let closure = subgroup_closure(
            hat,
            &[self.v(0), self.w(0)]
                .into_iter()
                .chain(self.generating_set.iter().map(|&s| self.t(s)))
                .collect::<Vec<_>>(),
        )
        .len();
        out.push(Check::new(
            "order",
            formula == hat.order() as u128 && closure == hat.order(),
            format!(
                "formula {formula}, enumeration {}, closure of v_1, w_1 and G {closure}",
                hat.order()
            ),
        ));

        let mut bad = None;
        'conj: for g in 0..m {
            for h in 0..m {
                let gh = self.g.mul(g, h);
                if hat.conjugate(self.t(g), self.v(h)) != self.v(gh) {
                    bad = Some(format!("g v_h g⁻¹ ≠ v_gh at g={g}, h={h}"));
                    break 'conj;
                }
                if hat.conjugate(self.t(g), self.w(h)) != self.w(gh) {
                    bad = Some(format!("g w_h g⁻¹ ≠ w_gh at g={g}, h={h}"));
                    break 'conj;
                }
                let expect = if g == h { self.w_pow(h, self.zeta) } else { self.w(h) };
                if hat.conjugate(self.v(g), self.w(h)) != expect {
                    bad = Some(format!("v_g w_h v_g⁻¹ ≠ γ_g(w_h) at g={g}, h={h}"));
                    break 'conj;
                }
            }
        }
        out.push(Check::new(
            "conjugation identities",
            bad.is_none(),
            bad.unwrap_or_else(|| format!("all {} pairs", m * m)),
        ));

        // γ_v trivial exactly on P′
        let derived = self.p_derived()?;
        let mut in_derived = vec![false; self.p_order];
        for &d in &derived {
            in_derived[self.split(d).1] = true;
        }
        let kernel_ok = (0..self.p_order).all(|pi| {
            let v = self.index(0, pi, 0);
            let trivial = (0..m).all(|h| hat.conjugate(v, self.w(h)) == self.w(h));
            trivial == in_derived[pi]
        });
        out.push(Check::new(
            "kernel of γ is P′",
            kernel_ok,
            format!("|P′| = {}", derived.len()),
        ));

        let n_gens: Vec<Elem> = (0..m).flat_map(|h| [self.w(h), self.v(h)]).collect();
        let center: Vec<Elem> = hat
            .elements()
            .filter(|&x| self.split(x).2 == 0)
            .filter(|&x| n_gens.iter().all(|&s| hat.mul(x, s) == hat.mul(s, x)))
            .collect();
        out.push(Check::new(
            "Z(N) = P′",
            center == derived,
            format!("|Z(N)| = {}", center.len()),
        ));
        Ok(out)
    }
}

#[derive(Clone, Debug, Default)]
pub struct PettetAutReport {
    pub aut_order: u64,
    pub inn_order: u64,
    pub out_order: u64,
    pub normalizes_q: u64,
    pub normalizes_n: u64,
    pub identity_on_quotient: u64,
    pub nodes: u64,
    /// First failing automorphism, described by its generator images.
    pub witness: Option<String>,
}

impl PettetAutReport {
    pub fn passed(&self) -> bool {
        self.aut_order > 0
            && self.normalizes_q == self.aut_order
            && self.normalizes_n == self.aut_order
            && self.identity_on_quotient == self.aut_order
    }
}

/// Enumerates `Aut(Ĝ)` and checks that every automorphism normalizes `Q`
/// and `N` and induces the identity on `Ĝ/N ≅ G`.
pub fn pettet_full_check(tower: &PettetTower, limits: SearchLimits<'_>) -> Result<PettetAutReport> {
    let hat = &tower.hat;
    let qmask = tower.q_mask();
    let nmask = tower.n_mask();
    let m = tower.g.order() as Elem;
    let q_gens: Vec<Elem> = (0..m).map(|h| tower.w(h)).collect();
    let n_gens: Vec<Elem> = (0..m).flat_map(|h| [tower.w(h), tower.v(h)]).collect();
    let g_gens: Vec<Elem> = tower.generating_set.clone();
    let mut report = PettetAutReport::default();
    let mut witness = None;
    let mut visit = |a: &Automorphism| {
        let nq = q_gens.iter().all(|&x| qmask[a.apply(x) as usize]);
        let nn = n_gens.iter().all(|&x| nmask[a.apply(x) as usize]);
        let id = g_gens.iter().all(|&s| tower.split(a.apply(tower.t(s))).2 == s);
        report.normalizes_q += nq as u64;
        report.normalizes_n += nn as u64;
        report.identity_on_quotient += (nn && id) as u64;
        if witness.is_none() && !(nq && nn && id) {
            let imgs: Vec<String> = hat.generators().iter().map(|&x| hat.label(a.apply(x))).collect();
            witness = Some(imgs.join(", "));
        }
        true
    };
    let r = automorphism_group_with(hat, AutOptions::default(), limits, &mut visit)?;
    report.aut_order = r.aut_order;
    report.inn_order = r.inn_order;
    report.out_order = r.out_order;
    report.nodes = r.nodes;
    report.witness = witness;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ENUMERATION_BOUND;

    #[test]
    fn order_two_tower() {
        let g = ConcreteGroup::cyclic(2);
        let t = pettet_construct(&g, &[1], None, None, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!((t.p, t.q), (3, 7));
        assert_eq!(t.hat.order(), 2646);
        for c in t.checks().unwrap() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn identity_in_generating_set_rejected() {
        let g = ConcreteGroup::cyclic(2);
        assert!(pettet_construct(&g, &[0, 1], None, None, DEFAULT_ENUMERATION_BOUND).is_err());
        assert!(pettet_construct(&ConcreteGroup::trivial(), &[], None, None, DEFAULT_ENUMERATION_BOUND).is_err());
    }
}

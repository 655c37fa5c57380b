use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::group::{all_permutations, subgroup_closure, ConcreteGroup, Elem, Permutation, TableLaw};

/// Color-preserving automorphisms of the Cayley color graph of `(G, gens)`.
#[derive(Clone, Debug)]
pub struct CayleyAutos {
    /// The automorphisms as a group; element `k` is `perms[k]`.
    pub group: ConcreteGroup,
    /// Vertex permutations (vertex `v_g` is the index of `g`).
    pub perms: Vec<Permutation>,
    /// `iso[g]`: the automorphism corresponding to `g`, namely left
    /// translation `v_h ↦ v_{gh}`.
    pub iso: Vec<Elem>,
}

fn preserves_colors(g: &ConcreteGroup, gens: &[Elem], f: &[u32]) -> bool {
    g.elements()
        .all(|v| gens.iter().all(|&x| f[g.mul(v, x) as usize] == g.mul(f[v as usize], x)))
}

fn check_input(g: &ConcreteGroup, gens: &[Elem]) -> Result<()> {
    if g.order() == 1 {
        return Err(Error::Precondition("the trivial group is excluded".into()));
    }
    if subgroup_closure(g, gens).len() != g.order() {
        return Err(Error::Precondition("colors do not generate the group".into()));
    }
    Ok(())
}

/// A color-preserving map is determined by the image of `v_1`; each choice
/// is propagated along arrows and kept when consistent and bijective.
pub fn cayley_color_autos(g: &ConcreteGroup, gens: &[Elem]) -> Result<CayleyAutos> {
    check_input(g, gens)?;
    let n = g.order();
    let mut perms = Vec::new();
    for c in g.elements() {
        let mut f = vec![u32::MAX; n];
        f[0] = c;
        let mut queue = vec![0];
        let mut head = 0;
        let mut ok = true;
        while ok && head < queue.len() {
            let v = queue[head];
            head += 1;
            for &x in gens {
                let w = g.mul(v, x);
                let img = g.mul(f[v as usize], x);
                if f[w as usize] == u32::MAX {
                    f[w as usize] = img;
                    queue.push(w);
                } else if f[w as usize] != img {
                    ok = false;
                    break;
                }
            }
        }
        if let Some(perm) = ok.then(|| Permutation::from_images(f)).flatten() {
            perms.push(perm);
        }
    }
    assemble(g, perms)
}

/// Same group found by filtering all `|G|!` vertex permutations.
pub fn cayley_color_autos_exhaustive(g: &ConcreteGroup, gens: &[Elem]) -> Result<CayleyAutos> {
    check_input(g, gens)?;
    if g.order() > 9 {
        return Err(Error::BoundExceeded {
            order: g.order() as u128,
            bound: 9,
        });
    }
    let perms = all_permutations(g.order())
        .into_iter()
        .filter(|f| preserves_colors(g, gens, f))
        .map(|f| Permutation::from_images(f).expect("a permutation"))
        .collect();
    assemble(g, perms)
}

fn assemble(g: &ConcreteGroup, mut perms: Vec<Permutation>) -> Result<CayleyAutos> {
    let n = g.order();
    perms.sort_by(|a, b| a.images().cmp(b.images()));
    let index: HashMap<Vec<u32>, Elem> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.images().to_vec(), i as Elem))
        .collect();
    let k = perms.len();
    let mut table = Vec::with_capacity(k * k);
    for a in &perms {
        for b in &perms {
            let c = a.compose(b);
            table.push(
                *index.get(c.images()).ok_or_else(|| {
                    Error::Precondition("color-preserving maps are not closed under composition".into())
                })?,
            );
        }
    }
    let labels: Vec<String> = perms.iter().map(Permutation::cycle_string).collect();
    let law = TableLaw::from_table(k, table, labels)?;
    let mut iso = Vec::with_capacity(n);
    for h in g.elements() {
        let translation: Vec<u32> = g.elements().map(|v| g.mul(h, v)).collect();
        iso.push(*index.get(&translation).ok_or_else(|| {
            Error::Precondition(format!("left translation by {} is not color-preserving", g.label(h)))
        })?);
    }
    let gens: Vec<Elem> = g.generators().iter().map(|&s| iso[s as usize]).collect();
    let group = ConcreteGroup::new(Arc::new(law), gens, format!("ColorAut({})", g.name()));
    Ok(CayleyAutos { group, perms, iso })
}

impl CayleyAutos {
    /// Whether `iso` is a bijective homomorphism from `g`.
    pub fn iso_is_isomorphism(&self, g: &ConcreteGroup) -> bool {
        if self.group.order() != g.order() {
            return false;
        }
        let mut seen = vec![false; g.order()];
        for &k in &self.iso {
            if core::mem::replace(&mut seen[k as usize], true) {
                return false;
            }
        }
        g.elements().all(|a| {
            g.elements()
                .all(|b| self.iso[g.mul(a, b) as usize] == self.group.mul(self.iso[a as usize], self.iso[b as usize]))
        })
    }
}

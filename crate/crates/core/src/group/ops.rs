use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{ConcreteGroup, Elem, TableLaw};
use crate::error::{Error, Result};

/// Smallest subgroup containing `seeds`, as a sorted element list.
pub fn subgroup_closure(g: &ConcreteGroup, seeds: &[Elem]) -> Vec<Elem> {
    let mut member = vec![false; g.order()];
    member[0] = true;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in seeds {
            let y = g.mul(x, s);
            if !member[y as usize] {
                member[y as usize] = true;
                queue.push(y);
            }
        }
    }
    queue.sort_unstable();
    queue
}

/// Smallest normal subgroup containing `seeds`.
pub fn normal_closure(g: &ConcreteGroup, seeds: &[Elem]) -> Vec<Elem> {
    let mut gens: Vec<Elem> = seeds.to_vec();
    loop {
        let h = subgroup_closure(g, &gens);
        let mut member = vec![false; g.order()];
        for &x in &h {
            member[x as usize] = true;
        }
        let mut grew = false;
        for &x in &gens.clone() {
            for &s in g.generators() {
                let y = g.conjugate(s, x);
                if !member[y as usize] {
                    gens.push(y);
                    member[y as usize] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            return h;
        }
    }
}

/// `[G, G]`.
pub fn derived_subgroup(g: &ConcreteGroup) -> Vec<Elem> {
    let gens = g.generators();
    let mut seeds = Vec::new();
    for &a in gens {
        for &b in gens {
            let c = g.commutator(a, b);
            if c != 0 {
                seeds.push(c);
            }
        }
    }
    normal_closure(g, &seeds)
}

/// Number of elements commuting with `x`.
pub fn centralizer_order(g: &ConcreteGroup, x: Elem) -> usize {
    g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).count()
}

/// `Z(G)` as a sorted element list.
pub fn center(g: &ConcreteGroup) -> Vec<Elem> {
    g.elements()
        .filter(|&x| g.generators().iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect()
}

/// Partition of a group into conjugacy classes.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub classes: Vec<Vec<Elem>>,
    /// Class index of every element.
    pub class_of: Vec<u32>,
}

impl ClassPartition {
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    pub fn class_size(&self, x: Elem) -> usize {
        self.classes[self.class_of[x as usize] as usize].len()
    }
}

/// Conjugacy classes as orbits under conjugation by the designated generators.
pub fn conjugacy_classes(g: &ConcreteGroup) -> ClassPartition {
    let n = g.order();
    let gens: Vec<(Elem, Elem)> = g.generators().iter().map(|&s| (s, g.inv(s))).collect();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n as Elem {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        class_of[x as usize] = id;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for &(s, si) in &gens {
                let z = g.mul(g.mul(s, y), si);
                if class_of[z as usize] == u32::MAX {
                    class_of[z as usize] = id;
                    orbit.push(z);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    ClassPartition { classes, class_of }
}

/// A quotient group with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: ConcreteGroup,
    /// Coset index of every element of the parent group.
    pub coset_of: Vec<Elem>,
    /// A representative of every coset.
    pub representatives: Vec<Elem>,
}

/// `G/N` for a normal subgroup `N` (given as an element list).
pub fn quotient(g: &ConcreteGroup, normal: &[Elem]) -> Result<Quotient> {
    let n = g.order();
    let mut member = vec![false; n];
    for &x in normal {
        member[x as usize] = true;
    }
    if !member[0] {
        return Err(Error::Precondition("subgroup must contain the identity".into()));
    }
    for &x in normal {
        for &s in g.generators() {
            if !member[g.conjugate(s, x) as usize] {
                return Err(Error::Precondition("subgroup is not normal".into()));
            }
        }
    }
    let mut coset_of = vec![Elem::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n as Elem {
        if coset_of[x as usize] != Elem::MAX {
            continue;
        }
        let id = reps.len() as Elem;
        reps.push(x);
        for &m in normal {
            coset_of[g.mul(x, m) as usize] = id;
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul(a, b) as usize]);
        }
    }
    let labels: Vec<String> = reps.iter().map(|&r| alloc::format!("{}N", g.label(r))).collect();
    let law = TableLaw::from_table(k, table, labels)?;
    let mut gens: Vec<Elem> = g
        .generators()
        .iter()
        .map(|&s| coset_of[s as usize])
        .filter(|&c| c != 0)
        .collect();
    gens.dedup();
    let group = ConcreteGroup::new(Arc::new(law), gens, alloc::format!("{}/N", g.name()));
    Ok(Quotient {
        group,
        coset_of,
        representatives: reps,
    })
}

/// Extends generator images to a homomorphism `src → dst`, where `images[i]`
/// is the image of `src.generators()[i]`. Returns the full element map, or
/// `None` when the images do not define a homomorphism.
pub fn extend_homomorphism(src: &ConcreteGroup, dst: &ConcreteGroup, images: &[Elem]) -> Option<Vec<Elem>> {
    let gens = src.generators();
    if images.len() != gens.len() {
        return None;
    }
    let mut map = vec![Elem::MAX; src.order()];
    map[0] = 0;
    let mut queue = vec![0 as Elem];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = src.mul(x, s);
            let fy = dst.mul(map[x as usize], t);
            let slot = &mut map[y as usize];
            if *slot == Elem::MAX {
                *slot = fy;
                queue.push(y);
            } else if *slot != fy {
                return None;
            }
        }
    }
    if queue.len() != src.order() {
        return None;
    }
    Some(map)
}

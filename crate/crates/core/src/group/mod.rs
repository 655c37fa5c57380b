//! Enumerable finite groups.
//!
//! Every group element is an index in `0..order`, with `0` the identity.
//! The index is the element's canonical form: products and semidirect
//! products use mixed-radix indices of their components, so equality and
//! hashing never depend on how an element was reached.

mod laws;
mod ops;
mod perm;
mod spec;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

pub use laws::{validate_automorphism, ActionMap, ClosureLaw, CyclicLaw, ProductLaw, SemidirectLaw, TableLaw};
pub use ops::{
    center, centralizer_order, conjugacy_classes, derived_subgroup, extend_homomorphism, normal_closure, quotient,
    subgroup_closure, ClassPartition, Quotient,
};
pub use perm::{all_permutations, Permutation};
pub use spec::{parse_group_spec, realize, realize_with_bound, GroupSpec, NamedAction};

use crate::error::{Error, Result};

/// Element handle: index into a group's enumeration.
pub type Elem = u32;

/// Default cap on enumerated group orders.
pub const DEFAULT_ENUMERATION_BOUND: usize = 1_000_000;

/// The multiplication law of an enumerable group on `0..order`.
pub trait GroupLaw: Send + Sync {
    fn order(&self) -> usize;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn inv(&self, a: Elem) -> Elem;
    /// Human-readable form of an element.
    fn label(&self, a: Elem) -> String;
    /// True when `mul` is a table lookup.
    fn is_table(&self) -> bool {
        false
    }
}

/// A finite group with a designated generator list.
#[derive(Clone)]
pub struct ConcreteGroup {
    law: Arc<dyn GroupLaw>,
    gens: Vec<Elem>,
    name: String,
}

impl fmt::Debug for ConcreteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConcreteGroup")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("gens", &self.gens)
            .finish()
    }
}

pub fn check_bound(order: u128, bound: usize) -> Result<usize> {
    if order > bound as u128 {
        Err(Error::BoundExceeded { order, bound })
    } else {
        Ok(order as usize)
    }
}

impl ConcreteGroup {
    pub fn new(law: Arc<dyn GroupLaw>, gens: Vec<Elem>, name: impl Into<String>) -> Self {
        let order = law.order();
        assert!(gens.iter().all(|&g| (g as usize) < order));
        Self {
            law,
            gens,
            name: name.into(),
        }
    }

    pub fn cyclic(n: u32) -> Self {
        assert!(n >= 1);
        let gens = if n > 1 { alloc::vec![1] } else { Vec::new() };
        Self::new(Arc::new(CyclicLaw::new(n)), gens, alloc::format!("C{n}"))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn law(&self) -> &Arc<dyn GroupLaw> {
        &self.law
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same law, different designated generators.
    pub fn with_generators(&self, gens: Vec<Elem>) -> Self {
        Self::new(self.law.clone(), gens, self.name.clone())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.law.order()
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order() as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.law.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.law.inv(a)
    }

    pub fn label(&self, a: Elem) -> String {
        self.law.label(a)
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut e = e.unsigned_abs();
        let mut acc = 0;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(ab, self.inv(ba))
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Materializes the full multiplication table.
    pub fn tabulate(&self) -> Self {
        if self.law.is_table() {
            return self.clone();
        }
        let law = TableLaw::from_law(self.law.as_ref());
        Self::new(Arc::new(law), self.gens.clone(), self.name.clone())
    }

    /// Multiplication table as a flat row-major vector.
    pub fn multiplication_table(&self) -> Vec<Elem> {
        let n = self.order() as Elem;
        let mut t = Vec::with_capacity((n as usize) * (n as usize));
        for a in 0..n {
            for b in 0..n {
                t.push(self.mul(a, b));
            }
        }
        t
    }

    /// Checks the group axioms: identity and inverses exhaustively,
    /// associativity exhaustively when `|G|³ ≤ 10⁶` and on `samples`
    /// random triples otherwise. Returns a witness description on failure.
    pub fn check_axioms<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> Result<(), String> {
        let n = self.order() as Elem;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(alloc::format!("identity law fails at {}", self.label(a)));
            }
            let ai = self.inv(a);
            if self.mul(a, ai) != 0 || self.mul(ai, a) != 0 {
                return Err(alloc::format!("inverse law fails at {}", self.label(a)));
            }
        }
        let assoc = |a: Elem, b: Elem, c: Elem| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if (n as u64).pow(3) <= 1_000_000 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(alloc::format!("associativity fails at ({a}, {b}, {c})"));
                        }
                    }
                }
            }
        } else {
            for _ in 0..samples {
                let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if !assoc(a, b, c) {
                    return Err(alloc::format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
        Ok(())
    }

    /// Whether the designated generators generate the whole group.
    pub fn generators_generate(&self) -> bool {
        subgroup_closure(self, &self.gens).len() == self.order()
    }
}

/// Direct product of a list of groups; generators are the embedded factor generators.
pub fn direct_product(factors: &[ConcreteGroup], bound: usize) -> Result<ConcreteGroup> {
    let order: u128 = factors.iter().map(|f| f.order() as u128).product();
    check_bound(order, bound)?;
    let law = ProductLaw::new(factors.iter().map(|f| f.law.clone()).collect());
    let mut gens = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for &g in &f.gens {
            gens.push(law.embed(i, g));
        }
    }
    let name = factors.iter().map(|f| f.name.clone()).collect::<Vec<_>>().join(" x ");
    Ok(ConcreteGroup::new(Arc::new(law), gens, name))
}

/// Semidirect product `normal ⋊ acting`; elements are pairs `(n, a)` with
/// `(n, a)(n', a') = (n · action(a)(n'), a a')`.
pub fn semidirect(
    normal: &ConcreteGroup,
    acting: &ConcreteGroup,
    action: &ActionMap,
    bound: usize,
) -> Result<ConcreteGroup> {
    check_bound(normal.order() as u128 * acting.order() as u128, bound)?;
    let table = action.extend(normal, acting)?;
    let law = SemidirectLaw::new(normal.law.clone(), acting.law.clone(), table);
    let mut gens: Vec<Elem> = normal.gens.iter().map(|&g| law.pair(g, 0)).collect();
    gens.extend(acting.gens.iter().map(|&a| law.pair(0, a)));
    let name = alloc::format!("({}) ⋊ ({})", normal.name, acting.name);
    Ok(ConcreteGroup::new(Arc::new(law), gens, name))
}

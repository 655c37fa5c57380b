use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::hash::Hash;

use hashbrown::HashMap;

use super::{check_bound, ConcreteGroup, Elem, GroupLaw};
use crate::error::{Error, Result};

/// `Z/n` under addition.
pub struct CyclicLaw {
    n: u32,
}

impl CyclicLaw {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1);
        Self { n }
    }
}

impl GroupLaw for CyclicLaw {
    fn order(&self) -> usize {
        self.n as usize
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }
    fn inv(&self, a: Elem) -> Elem {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }
    fn label(&self, a: Elem) -> String {
        format!("{a}")
    }
}

/// Explicit Cayley table.
pub struct TableLaw {
    n: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    labels: Vec<String>,
}

impl TableLaw {
    pub fn from_law(law: &dyn GroupLaw) -> Self {
        let n = law.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n as Elem {
            for b in 0..n as Elem {
                table.push(law.mul(a, b));
            }
        }
        let inverse = (0..n as Elem).map(|a| law.inv(a)).collect();
        let labels = (0..n as Elem).map(|a| law.label(a)).collect();
        Self {
            n,
            table,
            inverse,
            labels,
        }
    }

    /// Builds from a raw table; element `0` must be the identity.
    pub fn from_table(n: usize, table: Vec<Elem>, labels: Vec<String>) -> Result<Self> {
        if table.len() != n * n || labels.len() != n {
            return Err(Error::Shape("table size does not match order".into()));
        }
        let mut inverse = vec![Elem::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as Elem;
                }
            }
        }
        if inverse.contains(&Elem::MAX) {
            return Err(Error::Shape("table has an element without inverse".into()));
        }
        Ok(Self {
            n,
            table,
            inverse,
            labels,
        })
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }
}

impl GroupLaw for TableLaw {
    fn order(&self) -> usize {
        self.n
    }
    #[inline]
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.n + b as usize]
    }
    fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }
    fn label(&self, a: Elem) -> String {
        self.labels[a as usize].clone()
    }
    fn is_table(&self) -> bool {
        true
    }
}

type BinOp<T> = Box<dyn Fn(&T, &T) -> T + Send + Sync>;
type UnOp<T> = Box<dyn Fn(&T) -> T + Send + Sync>;
type LabelFn<T> = Box<dyn Fn(&T) -> String + Send + Sync>;

/// A group enumerated as the closure of generators inside some ambient
/// structure (permutations, matrices, ...).
pub struct ClosureLaw<T> {
    elements: Vec<T>,
    index: HashMap<T, Elem>,
    mul: BinOp<T>,
    inv: UnOp<T>,
    label: LabelFn<T>,
}

impl<T: Clone + Eq + Hash + Send + Sync + 'static> ClosureLaw<T> {
    /// Enumerates `⟨gens⟩` breadth-first from `identity`. Returns the law
    /// and the generator indices.
    pub fn generate(
        identity: T,
        gens: &[T],
        mul: impl Fn(&T, &T) -> T + Send + Sync + 'static,
        inv: impl Fn(&T) -> T + Send + Sync + 'static,
        label: impl Fn(&T) -> String + Send + Sync + 'static,
        bound: usize,
    ) -> Result<(Self, Vec<Elem>)> {
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in gens {
                let y = mul(&x, g);
                if !index.contains_key(&y) {
                    check_bound(elements.len() as u128 + 1, bound)?;
                    index.insert(y.clone(), elements.len() as Elem);
                    elements.push(y);
                }
            }
        }
        let gen_idx = gens.iter().map(|g| index[g]).collect();
        Ok((
            Self {
                elements,
                index,
                mul: Box::new(mul),
                inv: Box::new(inv),
                label: Box::new(label),
            },
            gen_idx,
        ))
    }

    pub fn element(&self, a: Elem) -> &T {
        &self.elements[a as usize]
    }

    pub fn index_of(&self, x: &T) -> Option<Elem> {
        self.index.get(x).copied()
    }
}

impl<T: Clone + Eq + Hash + Send + Sync + 'static> GroupLaw for ClosureLaw<T> {
    fn order(&self) -> usize {
        self.elements.len()
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let c = (self.mul)(&self.elements[a as usize], &self.elements[b as usize]);
        self.index[&c]
    }
    fn inv(&self, a: Elem) -> Elem {
        let c = (self.inv)(&self.elements[a as usize]);
        self.index[&c]
    }
    fn label(&self, a: Elem) -> String {
        (self.label)(&self.elements[a as usize])
    }
}

/// Direct product; index is mixed radix with the first factor most significant.
pub struct ProductLaw {
    factors: Vec<Arc<dyn GroupLaw>>,
    strides: Vec<usize>,
    order: usize,
}

impl ProductLaw {
    pub fn new(factors: Vec<Arc<dyn GroupLaw>>) -> Self {
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].order();
        }
        let order = factors.iter().map(|f| f.order()).product();
        Self {
            factors,
            strides,
            order,
        }
    }

    pub fn embed(&self, factor: usize, g: Elem) -> Elem {
        (g as usize * self.strides[factor]) as Elem
    }

    pub fn component(&self, a: Elem, factor: usize) -> Elem {
        ((a as usize / self.strides[factor]) % self.factors[factor].order()) as Elem
    }

    pub fn compose(&self, parts: &[Elem]) -> Elem {
        parts
            .iter()
            .zip(&self.strides)
            .map(|(&x, &s)| x as usize * s)
            .sum::<usize>() as Elem
    }
}

impl GroupLaw for ProductLaw {
    fn order(&self) -> usize {
        self.order
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let mut out = 0usize;
        for (i, f) in self.factors.iter().enumerate() {
            let x = self.component(a, i);
            let y = self.component(b, i);
            out += f.mul(x, y) as usize * self.strides[i];
        }
        out as Elem
    }
    fn inv(&self, a: Elem) -> Elem {
        let mut out = 0usize;
        for (i, f) in self.factors.iter().enumerate() {
            out += f.inv(self.component(a, i)) as usize * self.strides[i];
        }
        out as Elem
    }
    fn label(&self, a: Elem) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.label(self.component(a, i)))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Pairs `(n, a)` with index `n·|A| + a`.
pub struct SemidirectLaw {
    normal: Arc<dyn GroupLaw>,
    acting: Arc<dyn GroupLaw>,
    /// `act[a·|N| + n]` is the image of `n` under `a`.
    act: Vec<Elem>,
}

impl SemidirectLaw {
    pub(crate) fn new(normal: Arc<dyn GroupLaw>, acting: Arc<dyn GroupLaw>, act: Vec<Elem>) -> Self {
        assert_eq!(act.len(), normal.order() * acting.order());
        Self { normal, acting, act }
    }

    #[inline]
    pub fn pair(&self, n: Elem, a: Elem) -> Elem {
        n * self.acting.order() as Elem + a
    }

    #[inline]
    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        let na = self.acting.order() as Elem;
        (x / na, x % na)
    }

    #[inline]
    pub fn act(&self, a: Elem, n: Elem) -> Elem {
        self.act[a as usize * self.normal.order() + n as usize]
    }
}

impl GroupLaw for SemidirectLaw {
    fn order(&self) -> usize {
        self.normal.order() * self.acting.order()
    }
    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let (n, a) = self.split(x);
        let (m, b) = self.split(y);
        self.pair(self.normal.mul(n, self.act(a, m)), self.acting.mul(a, b))
    }
    fn inv(&self, x: Elem) -> Elem {
        let (n, a) = self.split(x);
        let ai = self.acting.inv(a);
        self.pair(self.act(ai, self.normal.inv(n)), ai)
    }
    fn label(&self, x: Elem) -> String {
        let (n, a) = self.split(x);
        format!("({}; {})", self.normal.label(n), self.acting.label(a))
    }
}

/// A homomorphism from an acting group into the automorphisms of a target,
/// given by the images of the acting group's designated generators. Each
/// image is a full permutation of the target's elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMap {
    images: Vec<Vec<Elem>>,
}

impl ActionMap {
    pub fn new(images: Vec<Vec<Elem>>) -> Self {
        Self { images }
    }

    /// Trivial action for `generators` acting generators on a target of
    /// order `target_order`.
    pub fn trivial(generators: usize, target_order: usize) -> Self {
        Self {
            images: vec![(0..target_order as Elem).collect(); generators],
        }
    }

    /// Builds generator images from a function on target elements.
    pub fn from_fn(target: &ConcreteGroup, generators: usize, f: impl Fn(usize, Elem) -> Elem) -> Self {
        Self {
            images: (0..generators)
                .map(|j| target.elements().map(|x| f(j, x)).collect())
                .collect(),
        }
    }

    pub fn images(&self) -> &[Vec<Elem>] {
        &self.images
    }

    /// Validates every image as an automorphism of `target`, then extends
    /// the generator images to the whole acting group, checking that the
    /// extension is well defined (the homomorphism property). Returns the
    /// table `act[a·|target| + x]`.
    pub fn extend(&self, target: &ConcreteGroup, acting: &ConcreteGroup) -> Result<Vec<Elem>> {
        let nt = target.order();
        if self.images.len() != acting.generators().len() {
            return Err(Error::InvalidAction(format!(
                "{} generator images for {} acting generators",
                self.images.len(),
                acting.generators().len()
            )));
        }
        if !target.generators_generate() {
            return Err(Error::InvalidAction("target generators do not generate".into()));
        }
        for (j, img) in self.images.iter().enumerate() {
            validate_automorphism(target, img)
                .map_err(|w| Error::InvalidAction(format!("image of acting generator {j}: {w}")))?;
        }
        let na = acting.order();
        let mut act = vec![Elem::MAX; na * nt];
        act[..nt].iter_mut().enumerate().for_each(|(x, v)| *v = x as Elem);
        let mut queue = vec![0 as Elem];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for (j, &s) in acting.generators().iter().enumerate() {
                let b = acting.mul(a, s) as usize;
                let fresh = act[b * nt] == Elem::MAX;
                for x in 0..nt {
                    let y = act[a as usize * nt + self.images[j][x] as usize];
                    let slot = &mut act[b * nt + x];
                    if fresh {
                        *slot = y;
                    } else if *slot != y {
                        return Err(Error::InvalidAction(format!(
                            "not a homomorphism: two words for acting element {} disagree",
                            acting.label(b as Elem)
                        )));
                    }
                }
                if fresh {
                    queue.push(b as Elem);
                }
            }
        }
        if queue.len() != na {
            return Err(Error::InvalidAction("acting generators do not generate".into()));
        }
        Ok(act)
    }
}

/// Checks that a full element map is a bijective homomorphism of `g`, using
/// `f(x·s) = f(x)·f(s)` for all `x` and generators `s`.
pub fn validate_automorphism(g: &ConcreteGroup, map: &[Elem]) -> core::result::Result<(), String> {
    let n = g.order();
    if map.len() != n {
        return Err("map has the wrong length".into());
    }
    if map[0] != 0 {
        return Err("identity not fixed".into());
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y as usize >= n || core::mem::replace(&mut seen[y as usize], true) {
            return Err("map is not a bijection".into());
        }
    }
    for x in g.elements() {
        for &s in g.generators() {
            if map[g.mul(x, s) as usize] != g.mul(map[x as usize], map[s as usize]) {
                return Err(format!(
                    "f({} * {}) != f({}) * f({})",
                    g.label(x),
                    g.label(s),
                    g.label(x),
                    g.label(s)
                ));
            }
        }
    }
    Ok(())
}

//! Central ideals in the top degree and the quotients they define.
//!
//! A subspace `I` of the degree-`c` Lie component is central and normal, and
//! for `ι ∈ I` we have `g·exp(ι) = g + ι` because every product of `ι` with a
//! positive-degree word is truncated away. Reducing the top-degree word
//! coordinates of `g` modulo `I` therefore yields a canonical coset
//! representative.

use alloc::vec;
use alloc::vec::Vec;

use super::{FreeNilpotent, GroupLike, Series, Substitution};
use crate::error::{Error, Result};
use crate::fp::{sub_mod, FpMatrix};
use crate::number::witt_total;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralIdeal {
    degree: usize,
    /// Row-reduced basis in degree-`c` word coordinates.
    words: FpMatrix,
    /// Row-reduced basis in degree-`c` Hall coordinates.
    hall: FpMatrix,
}

impl CentralIdeal {
    pub fn zero(f: &FreeNilpotent) -> Self {
        let c = f.class();
        Self {
            degree: c,
            words: FpMatrix::new(f.prime(), f.degree_width(c)),
            hall: FpMatrix::new(f.prime(), f.hall().count(c)),
        }
    }

    /// Ideal spanned by the images of `gens` in `F̄^{[c]}`; every generator
    /// must lie in the top lower-central term.
    pub fn from_elements(f: &FreeNilpotent, gens: &[GroupLike]) -> Result<Self> {
        let c = f.class();
        let mut rows = Vec::with_capacity(gens.len());
        for g in gens {
            rows.push(f.lcs_component(g, c)?);
        }
        Ok(Self::from_hall_rows(f, rows))
    }

    /// Ideal spanned by degree-`c` Lie elements given in Hall coordinates.
    pub fn from_hall_rows(f: &FreeNilpotent, rows: Vec<Vec<u32>>) -> Self {
        let c = f.class();
        let p = f.prime();
        let mut words = FpMatrix::new(p, f.degree_width(c));
        for r in &rows {
            words.push_row(f.hall().to_words(c, r));
        }
        words.rref();
        let mut hall = FpMatrix::from_rows(p, f.hall().count(c), rows);
        hall.rref();
        Self { degree: c, words, hall }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.hall.nrows()
    }

    pub fn word_basis(&self) -> &FpMatrix {
        &self.words
    }

    pub fn hall_basis(&self) -> &FpMatrix {
        &self.hall
    }

    fn check_shape(&self, f: &FreeNilpotent) -> Result<()> {
        if f.class() != self.degree || f.degree_width(self.degree) != self.words.cols() {
            return Err(Error::Shape(
                "ideal does not belong to this free nilpotent group".into(),
            ));
        }
        Ok(())
    }

    /// Canonical representative of `g·I`.
    pub fn reduce(&self, f: &FreeNilpotent, g: &GroupLike) -> Result<GroupLike> {
        let r = self.reduce_unchecked(f, g)?;
        f.lie_coordinates(&f.log(&r))?;
        Ok(r)
    }

    /// [`reduce`](Self::reduce) without re-checking that the result is
    /// group-like.
    pub fn reduce_unchecked(&self, f: &FreeNilpotent, g: &GroupLike) -> Result<GroupLike> {
        self.check_shape(f)?;
        let mut s = g.0.clone();
        self.reduce_top(f, &mut s);
        Ok(GroupLike(s))
    }

    fn reduce_top(&self, f: &FreeNilpotent, s: &mut Series) {
        let c = self.degree;
        let top = f.degree_mut(s, c);
        self.words.reduce(top);
    }

    /// Reduces the top-degree part of a Lie element.
    pub fn reduce_lie(&self, f: &FreeNilpotent, l: &Series) -> Result<Series> {
        self.check_shape(f)?;
        let mut s = l.clone();
        self.reduce_top(f, &mut s);
        Ok(s)
    }

    /// Whether the substitution maps the ideal into itself.
    pub fn is_invariant(&self, f: &FreeNilpotent, endo: &Substitution) -> bool {
        let c = self.degree;
        self.words
            .rows()
            .iter()
            .all(|r| self.words.contains(&endo.apply_homogeneous(f, c, r)))
    }

    /// Membership of a degree-`c` Hall-coordinate vector.
    pub fn contains_hall(&self, v: &[u32]) -> bool {
        self.hall.contains(v)
    }
}

/// `e` with `|F̄(n, c, p) / I| = p^e`.
pub fn group_order_exponent(n: usize, c: usize, ideal_rank: usize) -> u64 {
    witt_total(n as u64, c as u32) - ideal_rank as u64
}

/// Per degree `k = 1..=c` (index 0 empty), the Hall-coordinate basis of
/// `{ℓ : endo(ℓ) ≡ ℓ mod I}`. In the top degree the result contains `I`.
pub fn fixed_subspace(f: &FreeNilpotent, endo: &Substitution, ideal: &CentralIdeal) -> Result<Vec<FpMatrix>> {
    ideal.check_shape(f)?;
    if !ideal.is_invariant(f, endo) {
        return Err(Error::IdealNotPreserved);
    }
    let p = f.prime();
    let hall = f.hall();
    let mut out = vec![FpMatrix::new(p, 0)];
    for k in 1..=f.class() {
        let range = hall.degree_range(k);
        let dim = range.len();
        // row i: (endo - 1) applied to the i-th Hall element
        let mut m = FpMatrix::new(p, dim);
        for (i, idx) in range.enumerate() {
            let mut unit = vec![0u32; dim];
            unit[i] = 1;
            let words = hall.to_words(k, &unit);
            let image = endo.apply_homogeneous(f, k, &words);
            let mut row = hall.coordinates(k, &image)?;
            row[i] = sub_mod(row[i], 1, p);
            debug_assert_eq!(hall.elements()[idx].degree(), k);
            m.push_row(row);
        }
        let fixed = if k == f.class() {
            let stacked = m.stack(ideal.hall_basis());
            let ker = stacked.left_kernel();
            let mut fixed = FpMatrix::new(p, dim);
            for r in ker.rows() {
                fixed.push_row(r[..dim].to_vec());
            }
            let mut fixed = fixed.stack(ideal.hall_basis());
            fixed.rref();
            fixed
        } else {
            m.left_kernel()
        };
        out.push(fixed);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_ideal_quotient_is_free() {
        let f = FreeNilpotent::new(3, 3, 5).unwrap();
        let i = CentralIdeal::zero(&f);
        assert_eq!(group_order_exponent(3, 3, i.rank()), 14);
        let g = f.word(&[(0, 1), (1, 2)]);
        assert_eq!(i.reduce(&f, &g).unwrap(), g);
    }

    #[test]
    fn identity_fixes_everything() {
        let f = FreeNilpotent::new(2, 3, 5).unwrap();
        let i = CentralIdeal::zero(&f);
        let fixed = fixed_subspace(&f, &Substitution::identity(2), &i).unwrap();
        for (k, m) in fixed.iter().enumerate().skip(1) {
            assert_eq!(m.nrows(), f.hall().count(k));
        }
    }

    #[test]
    fn non_central_generator_rejected() {
        let f = FreeNilpotent::new(2, 3, 5).unwrap();
        let c = f.commutator(&f.generator(0), &f.generator(1));
        assert!(CentralIdeal::from_elements(&f, &[c]).is_err());
    }
}

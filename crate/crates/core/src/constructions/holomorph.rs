use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::aut::{automorphism_group, isomorphic, AutOptions, SearchLimits};
use crate::error::{Error, Result};
use crate::group::{
    check_bound, direct_product, parse_group_spec, realize, semidirect, ActionMap, ConcreteGroup, Elem, ProductLaw,
};
use crate::number::{is_prime, primitive_root};

/// `(C_p ⋊ C_{p−1})ⁿ` with `y_i` acting on `⟨x_i⟩` by a primitive root and
/// centralizing the other factors.
#[derive(Clone, Debug)]
pub struct HolomorphPower {
    pub group: ConcreteGroup,
    pub p: u32,
    pub n: usize,
    pub x: Vec<Elem>,
    pub y: Vec<Elem>,
}

pub fn holomorph_power(p: u32, n: usize, bound: usize) -> Result<HolomorphPower> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::Precondition("need at least one factor".into()));
    }
    let factor_order = p as u128 * (p as u128 - 1);
    check_bound(factor_order.checked_pow(n as u32).unwrap_or(u128::MAX), bound)?;
    let zeta = primitive_root(p)?.value();
    let cp = ConcreteGroup::cyclic(p);
    let cq = ConcreteGroup::cyclic(p - 1);
    let action = ActionMap::from_fn(&cp, cq.generators().len(), |_, x| {
        ((x as u64 * zeta as u64) % p as u64) as Elem
    });
    let hol = semidirect(&cp, &cq, &action, bound)?;
    // generators of one factor: x first, then y unless p = 2
    let x1 = hol.generators()[0];
    let y1 = hol.generators().get(1).copied().unwrap_or(0);
    let factors = vec![hol.clone(); n];
    let power = direct_product(&factors, bound)?;
    let law = ProductLaw::new(vec![hol.law().clone(); n]);
    let x: Vec<Elem> = (0..n).map(|i| law.embed(i, x1)).collect();
    let y: Vec<Elem> = (0..n).map(|i| law.embed(i, y1)).collect();
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(x[i]);
        if p > 2 {
            gens.push(y[i]);
        }
    }
    let group = power
        .with_generators(gens)
        .with_name(format!("(C{p} ⋊ C{})^{n}", p - 1));
    Ok(HolomorphPower { group, p, n, x, y })
}

#[derive(Clone, Debug)]
pub struct OuterReport {
    pub group_order: usize,
    pub aut_order: u64,
    pub inn_order: u64,
    pub out_order: u64,
    /// Whether Out is isomorphic to the symmetric group on the factors.
    pub out_is_symmetric: bool,
}

/// Brute-force Out of a holomorph power and its comparison with `S_n`.
pub fn outer_of_holomorph_power(p: u32, n: usize, limits: SearchLimits<'_>) -> Result<OuterReport> {
    let h = holomorph_power(p, n, limits.bound)?;
    let r = automorphism_group(
        &h.group,
        AutOptions {
            store_images: false,
            out_structure: true,
        },
        limits,
    )?;
    let out = r.out_group.as_ref().expect("Out structure requested");
    let sym = realize(&parse_group_spec(&format!("S{n}"))?)?;
    let out_is_symmetric = isomorphic(out, &sym, SearchLimits::default())?.is_some();
    Ok(OuterReport {
        group_order: h.group.order(),
        aut_order: r.aut_order,
        inn_order: r.inn_order,
        out_order: r.out_order,
        out_is_symmetric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ENUMERATION_BOUND;

    #[test]
    fn orders_and_actions() {
        let h = holomorph_power(3, 1, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(h.group.order(), 6);
        assert!(!h.group.is_abelian());
        let h = holomorph_power(5, 2, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(h.group.order(), 400);
        let g = &h.group;
        // y_1 acts on x_1 with order 4 and centralizes x_2
        let c = g.conjugate(h.y[0], h.x[0]);
        assert_ne!(c, h.x[0]);
        assert_eq!(g.element_order(h.y[0]), 4);
        assert_eq!(g.conjugate(h.y[0], h.x[1]), h.x[1]);
        assert!(g.generators_generate());
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            holomorph_power(7, 5, 10_000),
            Err(Error::BoundExceeded { .. })
        ));
    }
}

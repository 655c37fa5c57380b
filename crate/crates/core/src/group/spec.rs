//! Group-spec grammar and realization.
//!
//! ```text
//! spec    := term (op term)* ;            left associative
//! op      := "x" | "×" | ("⋊" | "><") ("{" name "}")? ;
//! term    := "C" int | "S" int | "D" int | "Q8" | "perm[" cycles ("," cycles)* "]" | "(" spec ")" ;
//! cycles  := ("(" int+ ")")+ ;
//! ```
//!
//! Semidirect actions come from a small named table (`hol` by default).

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{
    check_bound, direct_product, semidirect, ActionMap, ClosureLaw, ConcreteGroup, Elem, Permutation,
    DEFAULT_ENUMERATION_BOUND,
};
use crate::error::{Error, Result};
use crate::number::{gcd, is_prime, primitive_root};

/// Built-in semidirect actions of a cyclic group on a cyclic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedAction {
    /// Generator acts by `x ↦ x^r`, `r` a power of the primitive root of
    /// largest order dividing the acting order (requires prime normal order).
    Holomorph,
    Trivial,
    /// Generator acts by inversion.
    Inversion,
    /// Generator acts by `x ↦ x^k`.
    Power(u32),
}

impl NamedAction {
    fn parse(name: &str) -> Option<Self> {
        match name {
            "hol" => Some(Self::Holomorph),
            "triv" => Some(Self::Trivial),
            "inv" => Some(Self::Inversion),
            _ => name.strip_prefix("pow")?.parse().ok().map(Self::Power),
        }
    }
}

impl fmt::Display for NamedAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Holomorph => f.write_str("hol"),
            Self::Trivial => f.write_str("triv"),
            Self::Inversion => f.write_str("inv"),
            Self::Power(k) => write!(f, "pow{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u32),
    Symmetric(u32),
    /// Dihedral group of the given order.
    Dihedral(u32),
    Quaternion8,
    /// Generators, each a list of 1-based cycles.
    Perm(Vec<Vec<Vec<u32>>>),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: NamedAction,
    },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cyclic(n) => write!(f, "C{n}"),
            Self::Symmetric(n) => write!(f, "S{n}"),
            Self::Dihedral(n) => write!(f, "D{n}"),
            Self::Quaternion8 => f.write_str("Q8"),
            Self::Perm(gens) => {
                f.write_str("perm[")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    for c in g {
                        let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                f.write_str("]")
            }
            Self::Direct(a, b) => write!(f, "({a} x {b})"),
            Self::Semidirect { normal, acting, action } => write!(f, "({normal} ⋊{{{action}}} {acting})"),
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (mut line, mut column) = (1, 1);
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        let _ = self.src;
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    /// Integer immediately following an atom letter (no whitespace allowed).
    fn atom_param(&mut self) -> Result<u32> {
        if self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            let v = self.int()?;
            if v == 0 {
                return Err(self.error("atom parameter must be at least 1"));
            }
            Ok(v)
        } else {
            Err(self.error("expected an integer parameter"))
        }
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('x') | Some('×') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = GroupSpec::Direct(Box::new(lhs), Box::new(rhs));
                }
                Some('⋊') | Some('>') => {
                    if !(self.eat('⋊') || self.eat_str("><")) {
                        return Err(self.error("expected '⋊' or '><'"));
                    }
                    let action = if self.chars.get(self.pos) == Some(&'{') {
                        self.pos += 1;
                        let start = self.pos;
                        while self.pos < self.chars.len() && self.chars[self.pos] != '}' {
                            self.pos += 1;
                        }
                        let name: String = self.chars[start..self.pos].iter().collect();
                        self.expect('}')?;
                        NamedAction::parse(name.trim())
                            .ok_or_else(|| Error::Semantic(format!("unknown action name '{}'", name.trim())))?
                    } else {
                        NamedAction::Holomorph
                    };
                    let rhs = self.term()?;
                    lhs = GroupSpec::Semidirect {
                        normal: Box::new(lhs),
                        acting: Box::new(rhs),
                        action,
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<GroupSpec> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let s = self.spec()?;
                self.expect(')')?;
                Ok(s)
            }
            Some('C') => {
                self.pos += 1;
                Ok(GroupSpec::Cyclic(self.atom_param()?))
            }
            Some('S') => {
                self.pos += 1;
                Ok(GroupSpec::Symmetric(self.atom_param()?))
            }
            Some('D') => {
                self.pos += 1;
                let n = self.atom_param()?;
                if n % 2 != 0 {
                    return Err(Error::Semantic(format!("dihedral order {n} must be even")));
                }
                Ok(GroupSpec::Dihedral(n))
            }
            Some('Q') => {
                if self.eat_str("Q8") {
                    Ok(GroupSpec::Quaternion8)
                } else {
                    Err(self.error("expected 'Q8'"))
                }
            }
            Some('p') => {
                if !self.eat_str("perm[") {
                    return Err(self.error("expected 'perm['"));
                }
                let mut gens = vec![self.cycles()?];
                while self.eat(',') {
                    gens.push(self.cycles()?);
                }
                self.expect(']')?;
                for g in &gens {
                    let mut seen = Vec::new();
                    for &x in g.iter().flatten() {
                        if seen.contains(&x) {
                            return Err(Error::Semantic(format!("point {x} occurs twice in one permutation")));
                        }
                        seen.push(x);
                    }
                }
                Ok(GroupSpec::Perm(gens))
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn cycles(&mut self) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        while self.peek() == Some('(') {
            self.pos += 1;
            let mut cycle = vec![self.int()?];
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                cycle.push(self.int()?);
            }
            self.expect(')')?;
            if cycle.contains(&0) {
                return Err(Error::Semantic("permutation points are 1-based".into()));
            }
            out.push(cycle);
        }
        if out.is_empty() {
            return Err(self.error("expected a cycle '(' ... ')'"));
        }
        Ok(out)
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser::new(text);
    let s = p.spec()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(s)
}

/// Realizes a spec with the default enumeration bound.
pub fn realize(spec: &GroupSpec) -> Result<ConcreteGroup> {
    realize_with_bound(spec, DEFAULT_ENUMERATION_BOUND)
}

pub fn realize_with_bound(spec: &GroupSpec, bound: usize) -> Result<ConcreteGroup> {
    let g = match spec {
        GroupSpec::Cyclic(n) => {
            check_bound(*n as u128, bound)?;
            ConcreteGroup::cyclic(*n)
        }
        GroupSpec::Symmetric(m) => {
            let fact: u128 = (1..=*m as u128)
                .try_fold(1u128, |a, b| a.checked_mul(b))
                .unwrap_or(u128::MAX);
            check_bound(fact, bound)?;
            let m = *m as usize;
            let mut gens = Vec::new();
            if m >= 2 {
                gens.push(vec![vec![1, 2]]);
            }
            if m >= 3 {
                gens.push(vec![(1..=m as u32).collect()]);
            }
            perm_group(m.max(1), &gens, bound)?
        }
        GroupSpec::Dihedral(n) => dihedral(*n, bound)?,
        GroupSpec::Quaternion8 => quaternion8(),
        GroupSpec::Perm(gens) => {
            let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1) as usize;
            perm_group(degree, gens, bound)?
        }
        GroupSpec::Direct(a, b) => {
            let a = realize_with_bound(a, bound)?;
            let b = realize_with_bound(b, bound)?;
            direct_product(&[a, b], bound)?
        }
        GroupSpec::Semidirect { normal, acting, action } => {
            let n = realize_with_bound(normal, bound)?;
            let a = realize_with_bound(acting, bound)?;
            let map = named_action(normal, &n, &a, *action)?;
            semidirect(&n, &a, &map, bound)?
        }
    };
    Ok(g.with_name(spec.to_string()))
}

fn named_action(
    normal_spec: &GroupSpec,
    normal: &ConcreteGroup,
    acting: &ConcreteGroup,
    action: NamedAction,
) -> Result<ActionMap> {
    if action == NamedAction::Trivial {
        return Ok(ActionMap::trivial(acting.generators().len(), normal.order()));
    }
    let GroupSpec::Cyclic(n) = *normal_spec else {
        return Err(Error::Semantic(format!(
            "action '{action}' needs a cyclic normal factor"
        )));
    };
    if acting.generators().len() != 1 {
        return Err(Error::Semantic(format!(
            "action '{action}' needs a cyclic acting factor"
        )));
    }
    let m = acting.order() as u64;
    let r = match action {
        NamedAction::Holomorph => {
            if !is_prime(n) {
                return Err(Error::Semantic(format!("'hol' needs a prime normal order, got {n}")));
            }
            let z = primitive_root(n)?;
            z.pow((n as u64 - 1) / gcd(m, n as u64 - 1)).value()
        }
        NamedAction::Inversion => n - 1,
        NamedAction::Power(k) => {
            if gcd(k as u64, n as u64) != 1 {
                return Err(Error::Semantic(format!("x -> x^{k} is not an automorphism of C{n}")));
            }
            k % n
        }
        NamedAction::Trivial => unreachable!(),
    };
    Ok(cyclic_power_action(n, r))
}

/// Generator image `x ↦ r·x` on `Z/n`.
pub(crate) fn cyclic_power_action(n: u32, r: u32) -> ActionMap {
    ActionMap::new(vec![(0..n)
        .map(|x| ((x as u64 * r as u64) % n as u64) as Elem)
        .collect()])
}

pub(crate) fn perm_group(degree: usize, gens: &[Vec<Vec<u32>>], bound: usize) -> Result<ConcreteGroup> {
    let perms: Vec<Permutation> = gens
        .iter()
        .map(|cycles| {
            let zero_based: Vec<Vec<u32>> = cycles.iter().map(|c| c.iter().map(|&x| x - 1).collect()).collect();
            Permutation::from_cycles(degree, &zero_based)
                .ok_or_else(|| Error::Semantic("permutation cycles overlap".into()))
        })
        .collect::<Result<_>>()?;
    from_permutations(degree, &perms, bound)
}

pub(crate) fn from_permutations(degree: usize, perms: &[Permutation], bound: usize) -> Result<ConcreteGroup> {
    let (law, gen_idx) = ClosureLaw::generate(
        Permutation::identity(degree),
        perms,
        |a: &Permutation, b: &Permutation| a.compose(b),
        Permutation::inverse,
        Permutation::cycle_string,
        bound,
    )?;
    Ok(ConcreteGroup::new(Arc::new(law), gen_idx, "perm"))
}

fn dihedral(n: u32, bound: usize) -> Result<ConcreteGroup> {
    check_bound(n as u128, bound)?;
    let m = n / 2;
    let rot = ConcreteGroup::cyclic(m);
    let refl = ConcreteGroup::cyclic(2);
    let action = ActionMap::new(vec![(0..m).map(|x| (m - x) % m).collect()]);
    semidirect(&rot, &refl, &action, bound)
}

/// Units `±1, ±i, ±j, ±k` as (sign, unit) with unit 0..4 = 1, i, j, k.
fn quaternion8() -> ConcreteGroup {
    type Q = (bool, u8);
    fn mul(a: &Q, b: &Q) -> Q {
        // sign and unit of e_a * e_b for e ∈ {1, i, j, k}
        const TABLE: [[(bool, u8); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let (s, u) = TABLE[a.1 as usize][b.1 as usize];
        (a.0 ^ b.0 ^ s, u)
    }
    fn inv(a: &Q) -> Q {
        if a.1 == 0 {
            *a
        } else {
            (!a.0, a.1)
        }
    }
    fn label(a: &Q) -> String {
        let u = ["1", "i", "j", "k"][a.1 as usize];
        if a.0 {
            format!("-{u}")
        } else {
            u.into()
        }
    }
    let (law, gens) =
        ClosureLaw::generate((false, 0), &[(false, 1), (false, 2)], mul, inv, label, 8).expect("Q8 has order 8");
    ConcreteGroup::new(Arc::new(law), gens, "Q8")
}

//! Monomials, minimal generating sets, and cells of the Taylor simplex.
//!
//! Generators are indexed `1..=n` and variables `1..=N` throughout, matching
//! the usual `m_1, …, m_n` and `x_1, …, x_N` conventions. A [`Cell`] is a
//! subset of generator indices, stored as a bitmask; the empty cell stands
//! for the rank-one free module in homological degree 0.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::Result;

/// A monomial as a dense exponent vector over `N` ambient variables.
///
/// Equality and ordering are those of the exponent vectors. Squarefree inputs
/// get no special representation; the combinatorics only ever needs lcm,
/// divisibility and exact division.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial `1` in `N` variables.
    pub fn one(num_vars: usize) -> Self {
        Monomial { exps: alloc::vec![0; num_vars] }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of variable `x_var` (1-based).
    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var - 1]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    /// 1-based indices of the variables dividing the monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::LengthMismatch {
                expected: self.exps.len(),
                found: other.exps.len(),
            });
        }
        Ok(())
    }

    /// True iff `self` divides `other` componentwise.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b))
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        })
    }

    /// Exact division `self / other`; errors when `other` does not divide.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if b > a {
                return Err(Error::IndivisibleMonomial);
            }
            exps.push(a - b);
        }
        Ok(Monomial { exps })
    }
}

impl fmt::Display for Monomial {
    /// Prints `x1*x2^2*x5`; the constant monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal presented by its minimal generating set.
///
/// Construction goes through [`MonomialIdeal::minimalize`], which removes
/// duplicates and generators divisible by another, preserving the order in
/// which the survivors first occur. The zero ideal (no generators) is legal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    num_vars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, discarding redundant generators.
    ///
    /// Returns the ideal together with the discarded monomials (duplicates
    /// and generators divisible by a surviving one). An empty input yields
    /// the zero ideal. The constant monomial is rejected: the unit ideal has
    /// no meaningful resolution data.
    pub fn minimalize(num_vars: usize, gens: Vec<Monomial>) -> Result<(Self, Vec<Monomial>)> {
        for g in &gens {
            if g.num_vars() != num_vars {
                return Err(Error::LengthMismatch { expected: num_vars, found: g.num_vars() });
            }
            if g.is_one() {
                return Err(Error::ConstantGenerator);
            }
        }
        let mut kept: Vec<Monomial> = Vec::new();
        let mut dropped: Vec<Monomial> = Vec::new();
        for g in gens {
            // Dropped by an earlier survivor, or a duplicate.
            if kept.iter().any(|k| k.divides(&g).unwrap_or(false)) {
                dropped.push(g);
                continue;
            }
            // A new generator may retroactively kill earlier survivors.
            let mut still_kept = Vec::with_capacity(kept.len() + 1);
            for k in kept {
                if g.divides(&k).unwrap_or(false) {
                    dropped.push(k);
                } else {
                    still_kept.push(k);
                }
            }
            still_kept.push(g);
            kept = still_kept;
        }
        Ok((MonomialIdeal { num_vars, gens: kept }, dropped))
    }

    /// Like [`minimalize`](Self::minimalize) but asserts nothing was dropped.
    /// Intended for generator lists already known to be minimal.
    pub fn from_minimal_gens(num_vars: usize, gens: Vec<Monomial>) -> Result<Self> {
        let (ideal, dropped) = Self::minimalize(num_vars, gens)?;
        if !dropped.is_empty() {
            return Err(Error::Internal("generator list was not minimal"));
        }
        Ok(ideal)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    /// Generator `m_i`, 1-based.
    pub fn generator(&self, i: usize) -> &Monomial {
        &self.gens[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Cell containing every generator.
    pub fn full_cell(&self) -> Cell {
        Cell::full(self.gens.len())
    }

    pub(crate) fn check_cell(&self, cell: Cell) -> Result<()> {
        match cell.max_member() {
            Some(i) if i > self.gens.len() => {
                Err(Error::IndexOutOfRange { index: i, limit: self.gens.len() })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// A subset of generator indices; a vertex of the Taylor-simplex digraph.
///
/// Backed by a `u64` bitmask (bit `i-1` ⇔ generator `i` is a member), which
/// caps ideals at 64 generators — far beyond what full cell enumeration can
/// reach anyway. Derived `Ord` is the mask order and is only used for map
/// keys; user-facing listings sort by cardinality then index sequence via
/// [`Cell::cmp_card_lex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cell(u64);

impl Cell {
    pub const EMPTY: Cell = Cell(0);

    pub fn singleton(i: usize) -> Cell {
        Cell(1u64 << (i - 1))
    }

    /// Cell `{1, …, n}`.
    pub fn full(n: usize) -> Cell {
        if n == 0 {
            Cell(0)
        } else {
            Cell(u64::MAX >> (64 - n))
        }
    }

    /// Builds a cell from strictly increasing 1-based member indices.
    pub fn from_members(members: &[usize]) -> Result<Cell> {
        let mut mask = 0u64;
        let mut prev = 0usize;
        for &i in members {
            if i == 0 || i > 64 {
                return Err(Error::IndexOutOfRange { index: i, limit: 64 });
            }
            if i <= prev {
                return Err(Error::UnsortedMembers);
            }
            prev = i;
            mask |= 1 << (i - 1);
        }
        Ok(Cell(mask))
    }

    pub(crate) fn from_mask(mask: u64) -> Cell {
        Cell(mask)
    }

    pub(crate) fn mask(self) -> u64 {
        self.0
    }

    pub fn members(self) -> Vec<usize> {
        self.iter_members().collect()
    }

    /// 1-based member indices in increasing order.
    pub fn iter_members(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        core::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let i = mask.trailing_zeros() as usize + 1;
                mask &= mask - 1;
                Some(i)
            }
        })
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= 64 && self.0 & (1 << (i - 1)) != 0
    }

    /// The cell with generator `i` added.
    pub fn with(self, i: usize) -> Cell {
        Cell(self.0 | 1 << (i - 1))
    }

    /// The cell with generator `i` removed.
    pub fn without(self, i: usize) -> Cell {
        Cell(self.0 & !(1 << (i - 1)))
    }

    pub fn union(self, other: Cell) -> Cell {
        Cell(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Cell) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn max_member(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Position (0-based) of member `i` in the increasing member sequence.
    /// Used for simplicial incidence signs.
    pub fn position_of(self, i: usize) -> Option<usize> {
        if !self.contains(i) {
            return None;
        }
        Some((self.0 & ((1 << (i - 1)) - 1)).count_ones() as usize)
    }

    /// Cardinality first, then lexicographic on the index sequences.
    pub fn cmp_card_lex(a: &Cell, b: &Cell) -> core::cmp::Ordering {
        a.cardinality()
            .cmp(&b.cardinality())
            .then_with(|| a.members().cmp(&b.members()))
    }

    /// Renders as `{m1, m4, m6}`.
    pub fn display(self) -> String {
        use core::fmt::Write;
        let mut s = String::from("{");
        for (k, i) in self.iter_members().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "m{i}");
        }
        s.push('}');
        s
    }
}

/// Least common multiple of the member generators; the empty cell gives `1`.
pub fn lcm_of_cell(ideal: &MonomialIdeal, cell: Cell) -> Result<Monomial> {
    ideal.check_cell(cell)?;
    let mut exps = alloc::vec![0u32; ideal.num_vars()];
    for i in cell.iter_members() {
        for (e, g) in exps.iter_mut().zip(ideal.generator(i).exponents()) {
            *e = (*e).max(*g);
        }
    }
    Ok(Monomial::new(exps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path_family::path_ideal;
    use alloc::vec;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn lcm_of_cell_spans_all_variables() {
        // 3-path ideal of an 8-path: {m1, m2, m5, m6} has lcm x1*…*x8.
        let ideal = path_ideal(3, 8).unwrap();
        let cell = Cell::from_members(&[1, 2, 5, 6]).unwrap();
        assert_eq!(lcm_of_cell(&ideal, cell).unwrap(), m(&[1; 8]));
    }

    #[test]
    fn lcm_of_singleton_and_empty() {
        let ideal = path_ideal(2, 5).unwrap();
        for i in 1..=ideal.num_generators() {
            let got = lcm_of_cell(&ideal, Cell::singleton(i)).unwrap();
            assert_eq!(&got, ideal.generator(i));
        }
        assert!(lcm_of_cell(&ideal, Cell::EMPTY).unwrap().is_one());
    }

    #[test]
    fn lcm_rejects_out_of_range_members() {
        let ideal = path_ideal(2, 3).unwrap();
        let bad = Cell::from_members(&[1, 5]).unwrap();
        assert!(matches!(
            lcm_of_cell(&ideal, bad),
            Err(Error::IndexOutOfRange { index: 5, limit: 2 })
        ));
    }

    #[test]
    fn divides_basics() {
        let a = m(&[0, 1, 1]);
        let b = m(&[1, 1, 1]);
        assert!(a.divides(&b).unwrap());
        assert!(a.divides(&a).unwrap());
        assert!(!m(&[2, 0]).divides(&m(&[1, 0])).unwrap());
        assert!(m(&[1]).divides(&m(&[1, 2])).is_err());
    }

    #[test]
    fn minimalize_drops_multiples_and_duplicates() {
        let (ideal, dropped) =
            MonomialIdeal::minimalize(3, vec![m(&[1, 1, 0]), m(&[1, 1, 1])]).unwrap();
        assert_eq!(ideal.generators(), &[m(&[1, 1, 0])]);
        assert_eq!(dropped, vec![m(&[1, 1, 1])]);

        let (ideal, dropped) =
            MonomialIdeal::minimalize(2, vec![m(&[1, 1]), m(&[1, 1])]).unwrap();
        assert_eq!(ideal.num_generators(), 1);
        assert_eq!(dropped.len(), 1);

        // A later generator can evict an earlier one.
        let (ideal, _) =
            MonomialIdeal::minimalize(2, vec![m(&[2, 1]), m(&[1, 1])]).unwrap();
        assert_eq!(ideal.generators(), &[m(&[1, 1])]);
    }

    #[test]
    fn minimalize_keeps_already_minimal_sets() {
        let ideal = path_ideal(3, 8).unwrap();
        let (again, dropped) =
            MonomialIdeal::minimalize(8, ideal.generators().to_vec()).unwrap();
        assert_eq!(again, ideal);
        assert!(dropped.is_empty());
        assert_eq!(again.num_generators(), 6);
    }

    #[test]
    fn minimalize_empty_gives_zero_ideal() {
        let (ideal, _) = MonomialIdeal::minimalize(4, vec![]).unwrap();
        assert!(ideal.is_zero());
    }

    #[test]
    fn minimalize_rejects_constant_generator() {
        assert!(matches!(
            MonomialIdeal::minimalize(2, vec![m(&[0, 0])]),
            Err(Error::ConstantGenerator)
        ));
    }

    #[test]
    fn cell_member_roundtrip_and_positions() {
        let c = Cell::from_members(&[2, 3, 7]).unwrap();
        assert_eq!(c.members(), vec![2, 3, 7]);
        assert_eq!(c.cardinality(), 3);
        assert_eq!(c.position_of(2), Some(0));
        assert_eq!(c.position_of(7), Some(2));
        assert_eq!(c.position_of(4), None);
        assert!(Cell::from_members(&[3, 2]).is_err());
        assert!(Cell::from_members(&[0]).is_err());
    }

    #[test]
    fn monomial_pretty_printing() {
        assert_eq!(alloc::format!("{}", m(&[1, 2, 0, 0, 1])), "x1*x2^2*x5");
        assert_eq!(alloc::format!("{}", m(&[0, 0])), "1");
    }
}

//! Total orders on the generators, and per-lcm-class order maps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::ideal::Monomial;
use crate::Result;

/// A total order `≻` on the generators `m_1, …, m_n`.
///
/// Stored as a rank per generator: rank 0 is the greatest element, and
/// `m_a ≻ m_b` iff `rank(a) < rank(b)`. The "standard" order is
/// `m_1 ≻ m_2 ≻ ⋯ ≻ m_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TotalOrder {
    ranks: Vec<usize>,
}

impl TotalOrder {
    /// `m_1 ≻ m_2 ≻ ⋯ ≻ m_n`.
    pub fn standard(n: usize) -> Self {
        TotalOrder { ranks: (0..n).collect() }
    }

    /// Builds an order from the generator indices listed greatest-first.
    pub fn from_ranking(ranking: &[usize]) -> Result<Self> {
        let n = ranking.len();
        let mut ranks = alloc::vec![usize::MAX; n];
        for (rank, &g) in ranking.iter().enumerate() {
            if g == 0 || g > n {
                return Err(Error::InvalidOrder(format!(
                    "index {g} out of range 1..={n}"
                )));
            }
            if ranks[g - 1] != usize::MAX {
                return Err(Error::InvalidOrder(format!("index {g} listed twice")));
            }
            ranks[g - 1] = rank;
        }
        Ok(TotalOrder { ranks })
    }

    pub fn num_generators(&self) -> usize {
        self.ranks.len()
    }

    /// Rank of generator `i` (1-based); rank 0 is the `≻`-greatest.
    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i - 1]
    }

    /// True iff `m_a ≻ m_b`.
    pub fn dominates(&self, a: usize, b: usize) -> bool {
        self.rank(a) < self.rank(b)
    }

    /// The `≻`-smallest of the given generators (the one of maximal rank).
    pub fn smallest<I: IntoIterator<Item = usize>>(&self, items: I) -> Option<usize> {
        items.into_iter().max_by_key(|&i| self.rank(i))
    }

    /// Generator indices listed greatest-first.
    pub fn ranking(&self) -> Vec<usize> {
        let mut by_rank: Vec<(usize, usize)> =
            self.ranks.iter().enumerate().map(|(i, &r)| (r, i + 1)).collect();
        by_rank.sort_unstable();
        by_rank.into_iter().map(|(_, i)| i).collect()
    }
}

/// One total order per lcm value, with a default for unlisted values.
///
/// The generalized Barile-Macchia algorithm runs independently on each
/// lcm class of cells; this map supplies the order used within each class.
/// A constant map makes the generalized algorithm coincide with the plain one.
#[derive(Debug, Clone)]
pub struct OrderMap {
    default_order: TotalOrder,
    overrides: BTreeMap<Monomial, TotalOrder>,
}

impl OrderMap {
    pub fn new(default_order: TotalOrder, overrides: BTreeMap<Monomial, TotalOrder>) -> Self {
        OrderMap { default_order, overrides }
    }

    /// The same order for every lcm class.
    pub fn constant(order: TotalOrder) -> Self {
        OrderMap { default_order: order, overrides: BTreeMap::new() }
    }

    /// The order used for cells whose lcm is `u`.
    pub fn order_for(&self, u: &Monomial) -> &TotalOrder {
        self.overrides.get(u).unwrap_or(&self.default_order)
    }

    pub fn default_order(&self) -> &TotalOrder {
        &self.default_order
    }

    pub fn overrides(&self) -> &BTreeMap<Monomial, TotalOrder> {
        &self.overrides
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_order_ranks_and_domination() {
        let o = TotalOrder::standard(4);
        assert!(o.dominates(1, 2));
        assert!(o.dominates(1, 4));
        assert!(!o.dominates(3, 2));
        assert_eq!(o.ranking(), alloc::vec![1, 2, 3, 4]);
    }

    #[test]
    fn smallest_picks_maximal_rank() {
        let o = TotalOrder::from_ranking(&[2, 3, 1, 4]).unwrap();
        // m2 ≻ m3 ≻ m1 ≻ m4
        assert_eq!(o.smallest([2, 3, 1]), Some(1));
        assert_eq!(o.smallest([2, 4]), Some(4));
        assert_eq!(o.smallest([]), None);
    }

    #[test]
    fn from_ranking_rejects_non_permutations() {
        assert!(TotalOrder::from_ranking(&[1, 1, 2]).is_err());
        assert!(TotalOrder::from_ranking(&[0, 1]).is_err());
        assert!(TotalOrder::from_ranking(&[1, 5]).is_err());
    }
}

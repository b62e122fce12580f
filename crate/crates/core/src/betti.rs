//! Multigraded and graded Betti tables.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::ideal::Monomial;

/// Multigraded Betti numbers: `(homological degree, multidegree) → rank`.
///
/// Zero entries are never stored. The graded table is the fiber sum over
/// multidegrees of equal total degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Monomial), u64>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, degree: usize, multidegree: Monomial, count: u64) {
        if count > 0 {
            *self.entries.entry((degree, multidegree)).or_insert(0) += count;
        }
    }

    pub fn get(&self, degree: usize, multidegree: &Monomial) -> u64 {
        self.entries
            .get(&(degree, multidegree.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Monomial, u64)> {
        self.entries.iter().map(|((i, m), &r)| (*i, m, r))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological degree with a nonzero entry.
    pub fn pdim(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Total Betti number in one homological degree.
    pub fn total(&self, degree: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i == degree)
            .map(|(_, &r)| r)
            .sum()
    }

    /// Total Betti numbers `β_0, …, β_pdim`.
    pub fn totals(&self) -> Vec<u64> {
        (0..=self.pdim()).map(|i| self.total(i)).collect()
    }

    /// Collapses multidegrees to total degrees.
    pub fn graded(&self) -> GradedBettiTable {
        let mut out = GradedBettiTable::new();
        for ((i, m), &r) in &self.entries {
            out.add(*i, m.total_degree(), r);
        }
        out
    }
}

/// Graded Betti numbers: `(homological degree, total degree) → rank`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedBettiTable {
    entries: BTreeMap<(usize, u64), u64>,
}

impl GradedBettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, degree: usize, total_degree: u64, count: u64) {
        if count > 0 {
            *self.entries.entry((degree, total_degree)).or_insert(0) += count;
        }
    }

    pub fn get(&self, degree: usize, total_degree: u64) -> u64 {
        self.entries.get(&(degree, total_degree)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64, u64)> + '_ {
        self.entries.iter().map(|(&(i, d), &r)| (i, d, r))
    }

    pub fn pdim(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    pub fn total(&self, degree: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i == degree)
            .map(|(_, &r)| r)
            .sum()
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..=self.pdim()).map(|i| self.total(i)).collect()
    }
}

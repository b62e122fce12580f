//! Taylor and Morse resolutions with exact integer differentials.
//!
//! The Taylor resolution has one basis element per cell; a homogeneous
//! acyclic matching cuts it down to the critical cells, with differentials
//! given by signed gradient-path sums in the partially reversed Taylor
//! digraph. Coefficients are arbitrary-precision integers and every entry
//! carries the monomial `lcm(column) / lcm(row)` exactly, so ∂∘∂ = 0 and
//! minimality are decidable by inspection.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::betti::BettiTable;
use crate::error::Error;
use crate::ideal::{lcm_of_cell, Cell, Monomial, MonomialIdeal};
use crate::matching::{all_cells, verify_matching, Guard, Matching};
use crate::Result;

/// A basis element of one homological degree: a cell and its multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub cell: Cell,
    pub lcm: Monomial,
}

/// A differential entry: integer coefficient times a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffEntry {
    pub coeff: BigInt,
    pub monomial: Monomial,
}

/// Sparse matrix of differential entries, keyed `(column, row)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), DiffEntry>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn insert(&mut self, col: usize, row: usize, entry: DiffEntry) {
        debug_assert!(row < self.rows && col < self.cols);
        debug_assert!(!entry.coeff.is_zero());
        self.entries.insert((col, row), entry);
    }

    pub fn get(&self, col: usize, row: usize) -> Option<&DiffEntry> {
        self.entries.get(&(col, row))
    }

    /// Entries in `(column, row)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &DiffEntry)> {
        self.entries.iter().map(|(&(c, r), e)| (c, r, e))
    }

    /// Entries of one column, in row order.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, &DiffEntry)> {
        self.entries
            .range((col, 0)..(col + 1, 0))
            .map(|(&(_, r), e)| (r, e))
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }
}

/// A free resolution presented by graded bases and sparse differentials.
///
/// `basis(r)` lists the degree-`r` basis cells (all of cardinality `r`;
/// degree 0 is the empty cell) and `differential(r)` maps degree `r` to
/// degree `r − 1` for `1 ≤ r ≤ max_degree()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseResolution {
    num_vars: usize,
    basis: Vec<Vec<BasisElement>>,
    diffs: Vec<SparseMatrix>,
}

impl MorseResolution {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self, degree: usize) -> &[BasisElement] {
        &self.basis[degree]
    }

    pub fn differential(&self, degree: usize) -> Option<&SparseMatrix> {
        if degree == 0 || degree > self.max_degree() {
            None
        } else {
            Some(&self.diffs[degree - 1])
        }
    }

    /// Ranks of the free modules by homological degree.
    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }
}

fn incidence_sign(cell: Cell, member: usize) -> BigInt {
    let pos = cell.position_of(member).expect("member of cell");
    if pos % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Sorts cells into per-cardinality bases and returns index lookup maps.
fn graded_basis(
    ideal: &MonomialIdeal,
    cells: Vec<Cell>,
) -> Result<(Vec<Vec<BasisElement>>, BTreeMap<Cell, (usize, usize)>)> {
    let max_card = cells.iter().map(|c| c.cardinality()).max().unwrap_or(0);
    let mut basis: Vec<Vec<BasisElement>> = alloc::vec![Vec::new(); max_card + 1];
    let mut sorted = cells;
    sorted.sort_by(Cell::cmp_card_lex);
    let mut index: BTreeMap<Cell, (usize, usize)> = BTreeMap::new();
    for cell in sorted {
        let r = cell.cardinality();
        index.insert(cell, (r, basis[r].len()));
        basis[r].push(BasisElement { cell, lcm: lcm_of_cell(ideal, cell)? });
    }
    Ok((basis, index))
}

/// The Taylor resolution: every cell is a basis element and the differential
/// of a cell is the signed, lcm-scaled sum of its facets.
pub fn taylor_resolution(ideal: &MonomialIdeal, guard: Guard) -> Result<MorseResolution> {
    guard.check(ideal)?;
    let cells: Vec<Cell> = all_cells(ideal.num_generators()).collect();
    let (basis, index) = graded_basis(ideal, cells)?;
    let mut diffs = Vec::new();
    for r in 1..basis.len() {
        let mut mat = SparseMatrix::new(basis[r - 1].len(), basis[r].len());
        for (col, elt) in basis[r].iter().enumerate() {
            for j in elt.cell.iter_members() {
                let facet = elt.cell.without(j);
                let (_, row) = index[&facet];
                let monomial = elt.lcm.checked_div(&basis[r - 1][row].lcm)?;
                mat.insert(col, row, DiffEntry { coeff: incidence_sign(elt.cell, j), monomial });
            }
        }
        diffs.push(mat);
    }
    Ok(MorseResolution { num_vars: ideal.num_vars(), basis, diffs })
}

/// The partially reversed Taylor digraph `G_X^A` of a matching: matched
/// edges point upward from target to source, all other containment edges
/// point downward from a cell to its facets.
pub struct MatchedGraph<'a> {
    ideal: &'a MonomialIdeal,
    /// source → target for each matching edge
    target_of: BTreeMap<Cell, Cell>,
    /// target → source for each matching edge
    source_of: BTreeMap<Cell, Cell>,
}

impl<'a> MatchedGraph<'a> {
    pub fn new(ideal: &'a MonomialIdeal, matching: &Matching) -> Result<Self> {
        let mut target_of = BTreeMap::new();
        let mut source_of = BTreeMap::new();
        for e in matching.edges() {
            if target_of.insert(e.source, e.target).is_some()
                || source_of.insert(e.target, e.source).is_some()
            {
                return Err(Error::InvalidMatching(format!(
                    "cell {} appears in two edges",
                    e.source.display()
                )));
            }
        }
        Ok(MatchedGraph { ideal, target_of, source_of })
    }

    /// Weight of a single edge of `G_X^A`: the incidence sign for a downward
    /// edge, and minus the incidence sign of the reversal for a matched edge.
    fn edge_weight(&self, from: Cell, to: Cell) -> BigInt {
        if to.is_subset_of(from) {
            let j = from.mask() & !to.mask();
            incidence_sign(from, (j.trailing_zeros() + 1) as usize)
        } else {
            let j = to.mask() & !from.mask();
            -incidence_sign(to, (j.trailing_zeros() + 1) as usize)
        }
    }

    /// Signed sum of `m(𝒫)` over all directed paths `from → to` in `G_X^A`,
    /// by memoized recursion over the acyclic graph. Identical endpoints give
    /// 1 (the empty path); unreachable targets give 0.
    pub fn path_weight(&self, from: Cell, to: Cell) -> Result<BigInt> {
        self.ideal.check_cell(from)?;
        self.ideal.check_cell(to)?;
        let mut memo: BTreeMap<Cell, BigInt> = BTreeMap::new();
        let mut visiting: BTreeSet<Cell> = BTreeSet::new();
        self.weight_rec(from, to, &mut memo, &mut visiting)
    }

    fn weight_rec(
        &self,
        at: Cell,
        to: Cell,
        memo: &mut BTreeMap<Cell, BigInt>,
        visiting: &mut BTreeSet<Cell>,
    ) -> Result<BigInt> {
        if at == to {
            return Ok(BigInt::one());
        }
        if let Some(w) = memo.get(&at) {
            return Ok(w.clone());
        }
        if !visiting.insert(at) {
            return Err(Error::CycleDetected);
        }
        let mut acc = BigInt::zero();
        for j in at.iter_members() {
            let down = at.without(j);
            if self.target_of.get(&at) == Some(&down) {
                continue; // reversed in A
            }
            acc += self.edge_weight(at, down) * self.weight_rec(down, to, memo, visiting)?;
        }
        if let Some(&up) = self.source_of.get(&at) {
            acc += self.edge_weight(at, up) * self.weight_rec(up, to, memo, visiting)?;
        }
        visiting.remove(&at);
        memo.insert(at, acc.clone());
        Ok(acc)
    }
}

/// Per-column gradient-path accumulator for the Morse differential.
///
/// For a fixed critical cell σ of cardinality `r`, `psi(τ)` is the signed
/// sum over gradient paths from the facets of σ (seeded with the incidence
/// signs `[σ:σ′]`) to τ. Paths can never climb above cardinality `r` —
/// upward steps land on matched sources, which only step down — and anything
/// whose lcm does not divide `lcm(σ)` is unreachable, so both prunings are
/// exact.
struct PathAccumulator<'a> {
    sigma: Cell,
    degree: usize,
    sigma_lcm: &'a Monomial,
    num_generators: usize,
    lcms: &'a BTreeMap<Cell, Monomial>,
    target_of: &'a BTreeMap<Cell, Cell>,
    source_of: &'a BTreeMap<Cell, Cell>,
    memo: BTreeMap<Cell, BigInt>,
    visiting: BTreeSet<Cell>,
}

impl<'a> PathAccumulator<'a> {
    fn psi(&mut self, tau: Cell) -> Result<BigInt> {
        if tau.cardinality() > self.degree {
            return Ok(BigInt::zero());
        }
        if !self.lcms[&tau].divides(self.sigma_lcm)? {
            return Ok(BigInt::zero());
        }
        if let Some(w) = self.memo.get(&tau) {
            return Ok(w.clone());
        }
        if !self.visiting.insert(tau) {
            return Err(Error::CycleDetected);
        }
        let mut acc = BigInt::zero();
        if tau.cardinality() + 1 == self.degree && tau.is_subset_of(self.sigma) {
            let j = self.sigma.mask() & !tau.mask();
            acc += incidence_sign(self.sigma, (j.trailing_zeros() + 1) as usize);
        }
        // Downward edges into τ from its cofaces.
        for j in 1..=self.num_generators {
            if tau.contains(j) {
                continue;
            }
            let alpha = tau.with(j);
            if self.source_of.get(&tau) == Some(&alpha) {
                continue; // that containment edge is reversed
            }
            acc += self.psi(alpha)? * incidence_sign(alpha, j);
        }
        // Reversed edge into τ exists when τ is a matched source.
        if let Some(&t) = self.target_of.get(&tau) {
            let j = tau.mask() & !t.mask();
            let sign = incidence_sign(tau, (j.trailing_zeros() + 1) as usize);
            acc += self.psi(t)? * -sign;
        }
        self.visiting.remove(&tau);
        self.memo.insert(tau, acc.clone());
        Ok(acc)
    }
}

/// The Morse resolution induced by a homogeneous acyclic matching: basis the
/// critical cells, differential the gradient-path sums scaled by
/// `lcm(σ)/lcm(σ″)`. The matching is verified first and rejected if any
/// axiom fails.
pub fn morse_resolution(
    ideal: &MonomialIdeal,
    matching: &Matching,
    guard: Guard,
) -> Result<MorseResolution> {
    let report = verify_matching(ideal, matching, guard)?;
    if !report.all_ok() {
        return Err(Error::InvalidMatching(format!("{report:?}")));
    }
    let mut lcms: BTreeMap<Cell, Monomial> = BTreeMap::new();
    for cell in all_cells(ideal.num_generators()) {
        lcms.insert(cell, lcm_of_cell(ideal, cell)?);
    }
    let target_of: BTreeMap<Cell, Cell> =
        matching.edges().iter().map(|e| (e.source, e.target)).collect();
    let source_of: BTreeMap<Cell, Cell> =
        matching.edges().iter().map(|e| (e.target, e.source)).collect();

    let (basis, _) = graded_basis(ideal, matching.critical_cells())?;
    let mut diffs = Vec::new();
    for r in 1..basis.len() {
        let rows: BTreeMap<Cell, usize> = basis[r - 1]
            .iter()
            .enumerate()
            .map(|(i, e)| (e.cell, i))
            .collect();
        let mut mat = SparseMatrix::new(basis[r - 1].len(), basis[r].len());
        for (col, elt) in basis[r].iter().enumerate() {
            let mut acc = PathAccumulator {
                sigma: elt.cell,
                degree: r,
                sigma_lcm: &elt.lcm,
                num_generators: ideal.num_generators(),
                lcms: &lcms,
                target_of: &target_of,
                source_of: &source_of,
                memo: BTreeMap::new(),
                visiting: BTreeSet::new(),
            };
            for (critical, &row) in &rows {
                let w = acc.psi(*critical)?;
                if !w.is_zero() {
                    let monomial = elt.lcm.checked_div(&basis[r - 1][row].lcm)?;
                    mat.insert(col, row, DiffEntry { coeff: w, monomial });
                }
            }
        }
        diffs.push(mat);
    }
    Ok(MorseResolution { num_vars: ideal.num_vars(), basis, diffs })
}

/// Location of an invertible differential entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitEntry {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
}

/// First unit entry (monomial part 1) in the differentials, if any.
/// A resolution is minimal exactly when there is none.
pub fn minimality(res: &MorseResolution) -> Option<UnitEntry> {
    for r in 1..=res.max_degree() {
        let mat = res.differential(r).expect("degree in range");
        for (col, row, entry) in mat.iter() {
            if entry.monomial.is_one() && !entry.coeff.is_zero() {
                return Some(UnitEntry { degree: r, row, col });
            }
        }
    }
    None
}

pub fn is_minimal(res: &MorseResolution) -> bool {
    minimality(res).is_none()
}

/// Verifies ∂_{r−1} ∘ ∂_r = 0 for all degrees, multiplying monomials
/// exactly: products are accumulated per (row, column, monomial) so no
/// accidental cancellation across different multidegrees can hide a defect.
pub fn compose_check(res: &MorseResolution) -> Result<()> {
    for r in 2..=res.max_degree() {
        let upper = res.differential(r).expect("in range");
        let lower = res.differential(r - 1).expect("in range");
        let mut acc: BTreeMap<(usize, usize, Monomial), BigInt> = BTreeMap::new();
        for (col, mid, e1) in upper.iter() {
            for (row, e2) in lower.column(mid) {
                let key = (col, row, e1.monomial.mul(&e2.monomial)?);
                let slot = acc.entry(key).or_insert_with(BigInt::zero);
                *slot += &e1.coeff * &e2.coeff;
            }
        }
        for ((col, row, _), v) in acc {
            if !v.is_zero() {
                return Err(Error::ComposeFailed { degree: r, row, col });
            }
        }
    }
    Ok(())
}

/// Reads the Betti numbers off a minimal resolution: `β_{i,m}` counts the
/// degree-`i` basis cells of multidegree `m`. Non-minimal input is rejected,
/// since its ranks overcount.
pub fn betti_from_resolution(res: &MorseResolution) -> Result<BettiTable> {
    if let Some(unit) = minimality(res) {
        return Err(Error::NonMinimalResolution {
            degree: unit.degree,
            row: unit.row,
            col: unit.col,
        });
    }
    let mut table = BettiTable::new();
    for r in 0..=res.max_degree() {
        for elt in res.basis(r) {
            table.add(r, elt.lcm.clone(), 1);
        }
    }
    Ok(table)
}

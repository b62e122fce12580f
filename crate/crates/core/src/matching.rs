//! Bridges, gaps, true gaps, and (generalized) Barile-Macchia matchings.
//!
//! The Barile-Macchia algorithm walks the cells of the Taylor simplex in
//! decreasing cardinality, matching each cell that has a bridge with the cell
//! obtained by removing its smallest bridge, and then refines the edge set so
//! that no two edges share a target. The generalized variant runs the same
//! procedure independently inside every lcm class of cells, with a possibly
//! different total order per class. Both produce homogeneous acyclic
//! matchings; [`verify_matching`] checks the three axioms independently.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::ideal::{lcm_of_cell, Cell, Monomial, MonomialIdeal};
use crate::order::{OrderMap, TotalOrder};
use crate::Result;

/// Cap on the number of generators for operations that enumerate all `2^n`
/// cells. The default refuses more than 24 generators; raise it explicitly
/// for bigger (and much slower) runs. Cells are 64-bit masks, so 64 is a
/// hard limit regardless.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    pub max_generators: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { max_generators: 24 }
    }
}

impl Guard {
    pub fn new(max_generators: usize) -> Self {
        Guard { max_generators }
    }

    pub fn check(&self, ideal: &MonomialIdeal) -> Result<()> {
        let n = ideal.num_generators();
        if n > 64 {
            return Err(Error::TooManyGenerators { generators: n });
        }
        if n > self.max_generators {
            return Err(Error::GuardExceeded { generators: n, guard: self.max_generators });
        }
        Ok(())
    }
}

/// Iterates every subset of `{1, …, n}` as a [`Cell`].
pub(crate) fn all_cells(n: usize) -> impl Iterator<Item = Cell> {
    (0..(1u128 << n)).map(|m| Cell::from_mask(m as u64))
}

/// Members whose removal leaves the lcm unchanged.
///
/// A member is a bridge exactly when every variable exponent it attains
/// maximally in the cell is also attained by another member.
pub fn bridges(ideal: &MonomialIdeal, cell: Cell) -> Result<Vec<usize>> {
    ideal.check_cell(cell)?;
    let lcm = lcm_of_cell(ideal, cell)?;
    let nvars = ideal.num_vars();
    // Number of members attaining the max exponent of each variable.
    let mut attain = alloc::vec![0u32; nvars];
    for i in cell.iter_members() {
        let g = ideal.generator(i).exponents();
        for v in 0..nvars {
            if g[v] == lcm.exponents()[v] && g[v] > 0 {
                attain[v] += 1;
            }
        }
    }
    let mut out = Vec::new();
    for i in cell.iter_members() {
        let g = ideal.generator(i).exponents();
        let sole_attainer = (0..nvars)
            .any(|v| g[v] == lcm.exponents()[v] && g[v] > 0 && attain[v] == 1);
        if !sole_attainer {
            out.push(i);
        }
    }
    Ok(out)
}

/// The `≻`-smallest bridge, if the cell has any.
pub fn sbridge(ideal: &MonomialIdeal, cell: Cell, order: &TotalOrder) -> Result<Option<usize>> {
    Ok(order.smallest(bridges(ideal, cell)?))
}

/// Non-members whose insertion leaves the lcm unchanged, i.e. the
/// non-members dividing the cell's lcm.
pub fn gaps(ideal: &MonomialIdeal, cell: Cell) -> Result<Vec<usize>> {
    ideal.check_cell(cell)?;
    let lcm = lcm_of_cell(ideal, cell)?;
    let mut out = Vec::new();
    for i in 1..=ideal.num_generators() {
        if !cell.contains(i) && ideal.generator(i).divides(&lcm)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Gaps `m` of the cell such that every bridge of `cell ∪ m` dominated by
/// `m` is already a bridge of the cell.
pub fn true_gaps(ideal: &MonomialIdeal, cell: Cell, order: &TotalOrder) -> Result<Vec<usize>> {
    let old_bridges: BTreeSet<usize> = bridges(ideal, cell)?.into_iter().collect();
    let mut out = Vec::new();
    'gaps: for g in gaps(ideal, cell)? {
        for b in bridges(ideal, cell.with(g))? {
            if order.dominates(g, b) && !old_bridges.contains(&b) {
                continue 'gaps;
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// Decides whether a cell of cardinality ≥ 3 would be matched as a source by
/// the algorithm before refinement: true exactly when the `≻`-smallest of
/// its bridges and true gaps exists and is a bridge. Returns the witnessing
/// smallest bridge.
pub fn classify_potentially_type2(
    ideal: &MonomialIdeal,
    cell: Cell,
    order: &TotalOrder,
) -> Result<Option<usize>> {
    if cell.cardinality() < 3 {
        return Err(Error::CardinalityTooSmall { needed: 3, found: cell.cardinality() });
    }
    let bridge_set = bridges(ideal, cell)?;
    let mut pool: Vec<usize> = bridge_set.clone();
    pool.extend(true_gaps(ideal, cell, order)?);
    match order.smallest(pool) {
        Some(least) if bridge_set.contains(&least) => {
            debug_assert_eq!(order.smallest(bridge_set), Some(least));
            Ok(Some(least))
        }
        _ => Ok(None),
    }
}

/// Role of a cell relative to the final matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CellLabel {
    /// Target of a surviving edge.
    Type1,
    /// Source of a surviving edge.
    Type2,
    /// Source of an edge evicted during refinement; critical.
    FortunatelyCritical,
    /// Never touched by any edge; critical.
    AbsolutelyCritical,
}

impl CellLabel {
    pub fn is_critical(self) -> bool {
        matches!(self, CellLabel::FortunatelyCritical | CellLabel::AbsolutelyCritical)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CellLabel::Type1 => "type-1",
            CellLabel::Type2 => "type-2",
            CellLabel::FortunatelyCritical => "fortunately-critical",
            CellLabel::AbsolutelyCritical => "absolutely-critical",
        }
    }
}

/// A directed matching edge `(source, target)` with `target ⊂ source`,
/// `|target| = |source| − 1` and equal lcms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchEdge {
    pub source: Cell,
    pub target: Cell,
}

/// A set of matching edges together with a role label for every cell of
/// cardinality ≥ 1. The empty cell is always critical and carries no label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<MatchEdge>,
    labels: BTreeMap<Cell, CellLabel>,
}

impl Matching {
    /// Wraps a hand-built edge set; no axioms are checked here — run the
    /// result through [`verify_matching`].
    pub fn new(edges: Vec<MatchEdge>, labels: BTreeMap<Cell, CellLabel>) -> Self {
        Matching { edges, labels }
    }

    pub fn edges(&self) -> &[MatchEdge] {
        &self.edges
    }

    pub fn labels(&self) -> &BTreeMap<Cell, CellLabel> {
        &self.labels
    }

    pub fn label(&self, cell: Cell) -> Option<CellLabel> {
        self.labels.get(&cell).copied()
    }

    /// The empty cell and singletons are always critical; other cells are
    /// critical when labeled so.
    pub fn is_critical(&self, cell: Cell) -> bool {
        if cell.is_empty() {
            return true;
        }
        self.label(cell).map(CellLabel::is_critical).unwrap_or(true)
    }

    /// All critical cells, sorted by cardinality then index sequence.
    pub fn critical_cells(&self) -> Vec<Cell> {
        let mut out = alloc::vec![Cell::EMPTY];
        out.extend(
            self.labels
                .iter()
                .filter(|(_, l)| l.is_critical())
                .map(|(c, _)| *c),
        );
        out.sort_by(Cell::cmp_card_lex);
        out
    }

    /// Cells that were added as sources at some point: the type-2 cells plus
    /// the fortunately critical ones.
    pub fn potentially_type2_cells(&self) -> Vec<Cell> {
        let mut out: Vec<Cell> = self
            .labels
            .iter()
            .filter(|(_, l)| matches!(l, CellLabel::Type2 | CellLabel::FortunatelyCritical))
            .map(|(c, _)| *c)
            .collect();
        out.sort_by(Cell::cmp_card_lex);
        out
    }
}

/// Raw edge before refinement, remembering the removed bridge.
#[derive(Debug, Clone, Copy)]
struct RawEdge {
    source: Cell,
    target: Cell,
    bridge: usize,
}

/// Decreasing cardinality, lexicographic on index sequences within a level.
fn processing_order(a: &Cell, b: &Cell) -> core::cmp::Ordering {
    b.cardinality()
        .cmp(&a.cardinality())
        .then_with(|| a.members().cmp(&b.members()))
}

/// One pass of the matching loop over the given cells (already restricted to
/// a class for the generalized algorithm). Cells of cardinality ≤ 2 are never
/// picked; targets leave the pool when their edge is added, but an edge whose
/// target was already removed is still recorded — refinement arbitrates.
fn matching_pass(
    ideal: &MonomialIdeal,
    cells: &mut [Cell],
    order: &TotalOrder,
) -> Result<Vec<RawEdge>> {
    cells.sort_by(processing_order);
    let mut removed: BTreeSet<Cell> = BTreeSet::new();
    let mut edges = Vec::new();
    for &sigma in cells.iter() {
        if sigma.cardinality() < 3 || removed.contains(&sigma) {
            continue;
        }
        removed.insert(sigma);
        if let Some(b) = sbridge(ideal, sigma, order)? {
            let target = sigma.without(b);
            removed.insert(target);
            edges.push(RawEdge { source: sigma, target, bridge: b });
        }
    }
    Ok(edges)
}

/// Keeps, among edges sharing a target, the one whose removed bridge is
/// `≻`-smallest; returns (kept, evicted). A tie would force two equal
/// sources, so it is reported as an internal error.
fn refine(edges: Vec<RawEdge>, order: &TotalOrder) -> Result<(Vec<RawEdge>, Vec<RawEdge>)> {
    let mut by_target: BTreeMap<Cell, Vec<RawEdge>> = BTreeMap::new();
    for e in edges {
        by_target.entry(e.target).or_default().push(e);
    }
    let mut kept = Vec::new();
    let mut evicted = Vec::new();
    for (_, group) in by_target {
        let best = group
            .iter()
            .map(|e| order.rank(e.bridge))
            .max()
            .expect("nonempty group");
        let mut winner: Option<RawEdge> = None;
        for e in group {
            if order.rank(e.bridge) == best {
                if winner.is_some() {
                    return Err(Error::Internal("refinement tie between distinct sources"));
                }
                winner = Some(e);
            } else {
                evicted.push(e);
            }
        }
        kept.push(winner.expect("winner exists"));
    }
    Ok((kept, evicted))
}

/// Builds the final [`Matching`]: surviving sources are type-2, their targets
/// type-1, evicted sources fortunately critical, everything else absolutely
/// critical. Also asserts that no 2-cell of a minimally generated ideal has a
/// bridge (removal of either member must lose that member's private support).
fn assemble(
    ideal: &MonomialIdeal,
    kept: Vec<RawEdge>,
    evicted: Vec<RawEdge>,
) -> Result<Matching> {
    let n = ideal.num_generators();
    let mut labels: BTreeMap<Cell, CellLabel> = BTreeMap::new();
    for e in &kept {
        if labels.insert(e.source, CellLabel::Type2).is_some()
            || labels.insert(e.target, CellLabel::Type1).is_some()
        {
            return Err(Error::Internal("cell used by two surviving edges"));
        }
    }
    for e in &evicted {
        if labels.contains_key(&e.source) {
            return Err(Error::Internal("evicted source also in a surviving edge"));
        }
        labels.insert(e.source, CellLabel::FortunatelyCritical);
    }
    for cell in all_cells(n) {
        if cell.cardinality() == 0 {
            continue;
        }
        if cell.cardinality() == 2 && !bridges(ideal, cell)?.is_empty() {
            return Err(Error::Internal("2-cell with a bridge under minimal generation"));
        }
        labels.entry(cell).or_insert(CellLabel::AbsolutelyCritical);
    }
    let mut edges: Vec<MatchEdge> = kept
        .into_iter()
        .map(|e| MatchEdge { source: e.source, target: e.target })
        .collect();
    edges.sort_by(|a, b| Cell::cmp_card_lex(&a.source, &b.source));
    Ok(Matching { edges, labels })
}

/// The Barile-Macchia matching of the ideal with respect to one total order:
/// all cells of cardinality ≥ 3 are processed in decreasing cardinality, each
/// cell with a bridge is matched against the removal of its smallest bridge,
/// and edges sharing a target are refined down to one.
pub fn barile_macchia(
    ideal: &MonomialIdeal,
    order: &TotalOrder,
    guard: Guard,
) -> Result<Matching> {
    guard.check(ideal)?;
    let n = ideal.num_generators();
    if order.num_generators() != n {
        return Err(Error::InvalidOrder(format!(
            "order covers {} generators, ideal has {n}",
            order.num_generators()
        )));
    }
    let mut cells: Vec<Cell> = all_cells(n).collect();
    let edges = matching_pass(ideal, &mut cells, order)?;
    let (kept, evicted) = refine(edges, order)?;
    assemble(ideal, kept, evicted)
}

/// Cells grouped by the exact value of their lcm, classes sorted by the lcm
/// exponent vector.
pub(crate) fn cells_by_lcm_class(
    ideal: &MonomialIdeal,
    guard: Guard,
) -> Result<BTreeMap<Monomial, Vec<Cell>>> {
    guard.check(ideal)?;
    let mut classes: BTreeMap<Monomial, Vec<Cell>> = BTreeMap::new();
    for cell in all_cells(ideal.num_generators()) {
        classes.entry(lcm_of_cell(ideal, cell)?).or_default().push(cell);
    }
    Ok(classes)
}

/// The generalized Barile-Macchia matching: the matching pass and refinement
/// run independently inside every lcm class, under the class's own order,
/// and the per-class edge sets are unioned. With a constant [`OrderMap`] the
/// result is identical to [`barile_macchia`], edge for edge.
pub fn generalized_barile_macchia(
    ideal: &MonomialIdeal,
    orders: &OrderMap,
    guard: Guard,
) -> Result<Matching> {
    let n = ideal.num_generators();
    let mut kept = Vec::new();
    let mut evicted = Vec::new();
    for (u, mut cells) in cells_by_lcm_class(ideal, guard)? {
        let order = orders.order_for(&u);
        if order.num_generators() != n {
            return Err(Error::InvalidOrder(format!(
                "order for {u} covers {} generators, ideal has {n}",
                order.num_generators()
            )));
        }
        let edges = matching_pass(ideal, &mut cells, order)?;
        let (k, e) = refine(edges, order)?;
        kept.extend(k);
        evicted.extend(e);
    }
    assemble(ideal, kept, evicted)
}

/// Outcome of checking the three matching axioms independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingReport {
    /// Every cell appears in at most one edge.
    pub is_matching: bool,
    /// A cell appearing in two edges, if any.
    pub matching_witness: Option<Cell>,
    /// Every edge removes one member and preserves the lcm.
    pub is_homogeneous: bool,
    /// An offending edge, if any.
    pub homogeneity_witness: Option<MatchEdge>,
    /// The modified Taylor digraph has no directed cycle.
    pub is_acyclic: bool,
    /// The cells of a directed cycle, if one exists.
    pub cycle_witness: Option<Vec<Cell>>,
}

impl MatchingReport {
    pub fn all_ok(&self) -> bool {
        self.is_matching && self.is_homogeneous && self.is_acyclic
    }
}

/// Checks the matching, homogeneity and acyclicity axioms.
///
/// Acyclicity is decided per lcm class: down-edges never enlarge the lcm and
/// homogeneous reversed edges preserve it, so any directed cycle stays inside
/// one class. When homogeneity already failed, that argument is void and the
/// full digraph is searched instead.
pub fn verify_matching(
    ideal: &MonomialIdeal,
    matching: &Matching,
    guard: Guard,
) -> Result<MatchingReport> {
    guard.check(ideal)?;
    let mut report = MatchingReport {
        is_matching: true,
        matching_witness: None,
        is_homogeneous: true,
        homogeneity_witness: None,
        is_acyclic: true,
        cycle_witness: None,
    };

    let mut seen: BTreeSet<Cell> = BTreeSet::new();
    for e in matching.edges() {
        for cell in [e.source, e.target] {
            if !seen.insert(cell) && report.is_matching {
                report.is_matching = false;
                report.matching_witness = Some(cell);
            }
        }
    }

    for e in matching.edges() {
        ideal.check_cell(e.source)?;
        ideal.check_cell(e.target)?;
        let shape_ok = e.target.is_subset_of(e.source)
            && e.target.cardinality() + 1 == e.source.cardinality();
        let lcm_ok = shape_ok
            && lcm_of_cell(ideal, e.source)? == lcm_of_cell(ideal, e.target)?;
        if !lcm_ok {
            report.is_homogeneous = false;
            report.homogeneity_witness = Some(*e);
            break;
        }
    }

    let reversed: BTreeMap<Cell, Cell> =
        matching.edges().iter().map(|e| (e.source, e.target)).collect();
    if report.is_homogeneous {
        let matched: BTreeSet<Cell> = reversed.keys().copied().collect();
        for (_, cells) in cells_by_lcm_class(ideal, guard)? {
            if !cells.iter().any(|c| matched.contains(c)) {
                // No reversed edge in the class: down-edges alone cannot cycle.
                continue;
            }
            if let Some(cycle) = find_cycle(&cells, &reversed) {
                report.is_acyclic = false;
                report.cycle_witness = Some(cycle);
                break;
            }
        }
    } else {
        let cells: Vec<Cell> = all_cells(ideal.num_generators()).collect();
        if let Some(cycle) = find_cycle(&cells, &reversed) {
            report.is_acyclic = false;
            report.cycle_witness = Some(cycle);
        }
    }
    Ok(report)
}

/// Searches the modified digraph restricted to `cells` for a directed cycle
/// by depth-first search with a three-color marking.
fn find_cycle(cells: &[Cell], reversed: &BTreeMap<Cell, Cell>) -> Option<Vec<Cell>> {
    let cell_set: BTreeSet<Cell> = cells.iter().copied().collect();
    let successors = |c: Cell| -> Vec<Cell> {
        let mut out = Vec::new();
        for j in c.iter_members() {
            let down = c.without(j);
            if reversed.get(&c) == Some(&down) {
                continue; // this down-edge is reversed
            }
            if cell_set.contains(&down) {
                out.push(down);
            }
        }
        // Reversed edge out of a target cell.
        for (source, target) in reversed.iter() {
            if *target == c && cell_set.contains(source) {
                out.push(*source);
            }
        }
        out
    };

    // 0 = white, 1 = on stack, 2 = done.
    let mut color: BTreeMap<Cell, u8> = BTreeMap::new();
    for &start in cells {
        if color.get(&start).copied().unwrap_or(0) != 0 {
            continue;
        }
        // Iterative DFS keeping the current path for the witness.
        let mut stack: Vec<(Cell, Vec<Cell>, usize)> = alloc::vec![(start, successors(start), 0)];
        color.insert(start, 1);
        let mut path = alloc::vec![start];
        while let Some((_, succs, idx)) = stack.last_mut() {
            if *idx >= succs.len() {
                let (done, _, _) = stack.pop().expect("nonempty");
                color.insert(done, 2);
                path.pop();
                continue;
            }
            let next = succs[*idx];
            *idx += 1;
            match color.get(&next).copied().unwrap_or(0) {
                0 => {
                    color.insert(next, 1);
                    path.push(next);
                    stack.push((next, successors(next), 0));
                }
                1 => {
                    // Found a back edge; slice the cycle out of the path.
                    let pos = path.iter().position(|&c| c == next).expect("on path");
                    return Some(path[pos..].to_vec());
                }
                _ => {}
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path_family::{cycle_ideal, path_ideal};
    use alloc::vec;

    fn cell(members: &[usize]) -> Cell {
        Cell::from_members(members).unwrap()
    }

    #[test]
    fn bridges_of_worked_cells() {
        let i3l8 = path_ideal(3, 8).unwrap();
        assert_eq!(bridges(&i3l8, cell(&[1, 4, 6])).unwrap(), Vec::<usize>::new());

        let i2l5 = path_ideal(2, 5).unwrap();
        assert_eq!(bridges(&i2l5, cell(&[1, 2, 3])).unwrap(), vec![2]);
        assert_eq!(bridges(&i2l5, cell(&[1])).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn sbridge_picks_smallest_bridge() {
        let i2l5 = path_ideal(2, 5).unwrap();
        let order = TotalOrder::standard(4);
        // {m1,m2,m3,m4} has bridges m2, m3; the ≻-smallest is m3.
        assert_eq!(sbridge(&i2l5, cell(&[1, 2, 3, 4]), &order).unwrap(), Some(3));

        let i3l8 = path_ideal(3, 8).unwrap();
        let order = TotalOrder::standard(6);
        assert_eq!(sbridge(&i3l8, cell(&[1, 4, 6]), &order).unwrap(), None);

        // {m1,m2,m5,m6} is bridgeless: removing any member changes the lcm.
        let sigma = cell(&[1, 2, 5, 6]);
        let full = lcm_of_cell(&i3l8, sigma).unwrap();
        for i in sigma.iter_members() {
            assert_ne!(lcm_of_cell(&i3l8, sigma.without(i)).unwrap(), full);
        }
        assert_eq!(sbridge(&i3l8, sigma, &order).unwrap(), None);
    }

    #[test]
    fn gaps_of_worked_cells() {
        let i3l8 = path_ideal(3, 8).unwrap();
        assert_eq!(gaps(&i3l8, cell(&[1, 4, 6])).unwrap(), vec![2, 3, 5]);
        assert_eq!(gaps(&i3l8, i3l8.full_cell()).unwrap(), Vec::<usize>::new());

        // In a cycle, any cell with full lcm has every non-member as a gap.
        let c5 = cycle_ideal(2, 5).unwrap();
        let sigma = cell(&[1, 2, 3, 4]);
        assert!(lcm_of_cell(&c5, sigma).unwrap().exponents().iter().all(|&e| e == 1));
        assert_eq!(gaps(&c5, sigma).unwrap(), vec![5]);
    }

    #[test]
    fn true_gaps_of_worked_cell() {
        let i3l8 = path_ideal(3, 8).unwrap();
        let order = TotalOrder::standard(6);
        // Gaps of {m1,m4,m6} are m2, m3, m5; m3 fails because m6 is a member.
        assert_eq!(true_gaps(&i3l8, cell(&[1, 4, 6]), &order).unwrap(), vec![2, 5]);
        assert_eq!(
            true_gaps(&i3l8, cell(&[1]), &order).unwrap(),
            Vec::<usize>::new()
        );
    }

    #[test]
    fn barile_macchia_on_small_path_matches_known_critical_cells() {
        let ideal = path_ideal(2, 5).unwrap();
        let order = TotalOrder::standard(4);
        let matching = barile_macchia(&ideal, &order, Guard::default()).unwrap();
        let expected = vec![
            Cell::EMPTY,
            cell(&[1]),
            cell(&[2]),
            cell(&[3]),
            cell(&[4]),
            cell(&[1, 2]),
            cell(&[1, 4]),
            cell(&[2, 3]),
            cell(&[3, 4]),
            cell(&[1, 3, 4]),
        ];
        assert_eq!(matching.critical_cells(), expected);
    }

    #[test]
    fn barile_macchia_on_principal_ideal() {
        let ideal = path_ideal(2, 2).unwrap();
        let matching = barile_macchia(&ideal, &TotalOrder::standard(1), Guard::default()).unwrap();
        assert!(matching.edges().is_empty());
        assert_eq!(matching.critical_cells(), vec![Cell::EMPTY, cell(&[1])]);
    }

    #[test]
    fn path_ideal_critical_cells_are_bridgeless_and_true_gapless() {
        // Exhaustive over the 2^6 cells of the 3-path ideal of the 8-path.
        let ideal = path_ideal(3, 8).unwrap();
        let order = TotalOrder::standard(6);
        let matching = barile_macchia(&ideal, &order, Guard::default()).unwrap();
        for c in matching.critical_cells() {
            assert!(bridges(&ideal, c).unwrap().is_empty(), "{}", c.display());
            assert!(true_gaps(&ideal, c, &order).unwrap().is_empty(), "{}", c.display());
            if !c.is_empty() && c.cardinality() > 1 {
                assert_eq!(matching.label(c), Some(CellLabel::AbsolutelyCritical));
            }
        }
    }

    #[test]
    fn classify_potentially_type2_examples() {
        let i2l5 = path_ideal(2, 5).unwrap();
        let order = TotalOrder::standard(4);
        assert_eq!(
            classify_potentially_type2(&i2l5, cell(&[1, 2, 3]), &order).unwrap(),
            Some(2)
        );

        let i3l8 = path_ideal(3, 8).unwrap();
        let order6 = TotalOrder::standard(6);
        assert_eq!(
            classify_potentially_type2(&i3l8, cell(&[1, 4, 6]), &order6).unwrap(),
            None
        );
        assert!(matches!(
            classify_potentially_type2(&i2l5, cell(&[1, 2]), &order),
            Err(Error::CardinalityTooSmall { .. })
        ));
    }

    #[test]
    fn generalized_with_constant_map_equals_plain() {
        for ideal in [path_ideal(3, 8).unwrap(), cycle_ideal(2, 5).unwrap()] {
            let n = ideal.num_generators();
            let order = TotalOrder::standard(n);
            let plain = barile_macchia(&ideal, &order, Guard::default()).unwrap();
            let gen = generalized_barile_macchia(
                &ideal,
                &OrderMap::constant(order),
                Guard::default(),
            )
            .unwrap();
            assert_eq!(plain, gen);
        }
    }

    #[test]
    fn tie_breaking_within_a_cardinality_level_is_immaterial() {
        // Same-cardinality picks never interfere, so reversing the processing
        // order within each level must reproduce the edge set exactly.
        let ideal = path_ideal(2, 6).unwrap();
        let n = ideal.num_generators();
        let order = TotalOrder::standard(n);
        let mut cells: Vec<Cell> = all_cells(n).collect();
        let forward = matching_pass(&ideal, &mut cells, &order).unwrap();

        let mut removed: BTreeSet<Cell> = BTreeSet::new();
        let mut reversed_edges = Vec::new();
        cells.sort_by(|a, b| {
            b.cardinality()
                .cmp(&a.cardinality())
                .then_with(|| b.members().cmp(&a.members()))
        });
        for &sigma in &cells {
            if sigma.cardinality() < 3 || removed.contains(&sigma) {
                continue;
            }
            removed.insert(sigma);
            if let Some(b) = sbridge(&ideal, sigma, &order).unwrap() {
                let target = sigma.without(b);
                removed.insert(target);
                reversed_edges.push((sigma, target, b));
            }
        }
        let mut fw: Vec<(Cell, Cell, usize)> =
            forward.iter().map(|e| (e.source, e.target, e.bridge)).collect();
        fw.sort();
        reversed_edges.sort();
        assert_eq!(fw, reversed_edges);
    }

    #[test]
    fn verify_matching_accepts_algorithm_output() {
        for ideal in [path_ideal(3, 8).unwrap(), cycle_ideal(2, 6).unwrap()] {
            let n = ideal.num_generators();
            let order = TotalOrder::standard(n);
            let m = barile_macchia(&ideal, &order, Guard::default()).unwrap();
            let report = verify_matching(&ideal, &m, Guard::default()).unwrap();
            assert!(report.all_ok(), "{report:?}");
        }
    }

    #[test]
    fn verify_matching_flags_duplicate_cells() {
        let ideal = path_ideal(2, 5).unwrap();
        let edges = vec![
            MatchEdge { source: cell(&[1, 2, 3]), target: cell(&[1, 3]) },
            MatchEdge { source: cell(&[1, 2, 3]), target: cell(&[2, 3]) },
        ];
        let m = Matching::new(edges, BTreeMap::new());
        let report = verify_matching(&ideal, &m, Guard::default()).unwrap();
        assert!(!report.is_matching);
        assert_eq!(report.matching_witness, Some(cell(&[1, 2, 3])));
    }

    #[test]
    fn verify_matching_flags_inhomogeneous_edge() {
        let ideal = path_ideal(2, 5).unwrap();
        // Removing m2 from {m1,m2} changes the lcm.
        let edges = vec![MatchEdge { source: cell(&[1, 2]), target: cell(&[1]) }];
        let m = Matching::new(edges, BTreeMap::new());
        let report = verify_matching(&ideal, &m, Guard::default()).unwrap();
        assert!(report.is_matching);
        assert!(!report.is_homogeneous);
        assert_eq!(report.homogeneity_witness.map(|e| e.source), Some(cell(&[1, 2])));
    }

    #[test]
    fn verify_matching_finds_directed_cycle() {
        // Five homogeneous edges inside the full-lcm class of the edge ideal
        // of a 5-cycle, arranged so the reversals close up a directed cycle.
        let ideal = cycle_ideal(2, 5).unwrap();
        let edges = vec![
            MatchEdge { source: cell(&[1, 2, 3, 4]), target: cell(&[1, 2, 4]) },
            MatchEdge { source: cell(&[1, 3, 4, 5]), target: cell(&[1, 3, 4]) },
            MatchEdge { source: cell(&[1, 2, 3, 5]), target: cell(&[1, 3, 5]) },
            MatchEdge { source: cell(&[2, 3, 4, 5]), target: cell(&[2, 3, 5]) },
            MatchEdge { source: cell(&[1, 2, 4, 5]), target: cell(&[2, 4, 5]) },
        ];
        let m = Matching::new(edges, BTreeMap::new());
        let report = verify_matching(&ideal, &m, Guard::default()).unwrap();
        assert!(report.is_matching);
        assert!(report.is_homogeneous);
        assert!(!report.is_acyclic);
        let witness = report.cycle_witness.expect("cycle witness");
        assert!(witness.len() >= 2);
    }

    #[test]
    fn guard_refuses_oversized_enumeration() {
        let ideal = path_ideal(2, 8).unwrap(); // 7 generators
        let order = TotalOrder::standard(7);
        let err = barile_macchia(&ideal, &order, Guard::new(6)).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { generators: 7, guard: 6 }));
    }
}

//! `p`-path ideals of paths and cycles, and their closed-form combinatorics.
//!
//! For the path ideal `I_p(L_N)` under the standard order, bridges, gaps and
//! true gaps of a cell reduce to window conditions on member indices, every
//! critical cell is reconstructible from its multidegree via the σ-sequence,
//! and the projective dimension and graded Betti numbers have closed or
//! recursive forms. For cycles, the generators of each proper lcm class live
//! on an induced path, which fixes a per-class rotation order; the critical
//! cells of the full-support class are classified explicitly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::betti::GradedBettiTable;
use crate::error::Error;
use crate::homology::{LabeledComplex, LabeledFace};
use crate::ideal::{lcm_of_cell, Cell, Monomial, MonomialIdeal};
use crate::matching::{
    barile_macchia, bridges, cells_by_lcm_class, true_gaps, CellLabel, Guard,
};
use crate::morse::{betti_from_resolution, morse_resolution};
use crate::order::{OrderMap, TotalOrder};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Path,
    Cycle,
}

/// Descriptor of a `p`-path ideal of a path `L_N` or a cycle `C_n`.
///
/// Generator `m_i` is `x_i ⋯ x_{i+p−1}`, indices taken modulo `n` for
/// cycles. A path on `N` vertices has `n = N − p + 1` generators; a cycle
/// has `n` nominal generators (which collapse to one when `p = n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathFamilySpec {
    pub kind: FamilyKind,
    pub p: usize,
    pub num_vertices: usize,
}

impl PathFamilySpec {
    pub fn path(p: usize, num_vertices: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidFamily(format!("path length p = {p} must be ≥ 2")));
        }
        if num_vertices < p {
            return Err(Error::InvalidFamily(format!(
                "a path on {num_vertices} vertices has no {p}-paths"
            )));
        }
        Ok(PathFamilySpec { kind: FamilyKind::Path, p, num_vertices })
    }

    pub fn cycle(p: usize, num_vertices: usize) -> Result<Self> {
        if p < 2 || p > num_vertices {
            return Err(Error::InvalidFamily(format!(
                "cycle requires 2 ≤ p ≤ n, got p = {p}, n = {num_vertices}"
            )));
        }
        Ok(PathFamilySpec { kind: FamilyKind::Cycle, p, num_vertices })
    }

    /// Number of generators before minimalization (`N − p + 1` for paths,
    /// `n` for cycles).
    pub fn num_generators(&self) -> usize {
        match self.kind {
            FamilyKind::Path => self.num_vertices - self.p + 1,
            FamilyKind::Cycle => self.num_vertices,
        }
    }

    pub fn ideal(&self) -> Result<MonomialIdeal> {
        match self.kind {
            FamilyKind::Path => path_ideal(self.p, self.num_vertices),
            FamilyKind::Cycle => cycle_ideal(self.p, self.num_vertices),
        }
    }
}

/// The `p`-path ideal of the path on `N` vertices:
/// `(x_1⋯x_p, x_2⋯x_{p+1}, …, x_{N−p+1}⋯x_N)`.
pub fn path_ideal(p: usize, num_vertices: usize) -> Result<MonomialIdeal> {
    let spec = PathFamilySpec::path(p, num_vertices)?;
    let mut gens = Vec::with_capacity(spec.num_generators());
    for i in 0..spec.num_generators() {
        let mut exps = alloc::vec![0u32; num_vertices];
        for v in i..i + p {
            exps[v] = 1;
        }
        gens.push(Monomial::new(exps));
    }
    MonomialIdeal::from_minimal_gens(num_vertices, gens)
}

/// The `p`-path ideal of the cycle on `n` vertices, indices modulo `n`.
/// For `p = n` all rotations coincide and the ideal is principal.
pub fn cycle_ideal(p: usize, num_vertices: usize) -> Result<MonomialIdeal> {
    PathFamilySpec::cycle(p, num_vertices)?;
    let n = num_vertices;
    let mut gens = Vec::with_capacity(n);
    for i in 0..n {
        let mut exps = alloc::vec![0u32; n];
        for k in 0..p {
            exps[(i + k) % n] = 1;
        }
        gens.push(Monomial::new(exps));
    }
    let (ideal, _) = MonomialIdeal::minimalize(n, gens)?;
    Ok(ideal)
}

fn require_path(spec: &PathFamilySpec) -> Result<()> {
    if spec.kind != FamilyKind::Path {
        return Err(Error::InvalidFamily("operation requires a path family".into()));
    }
    Ok(())
}

fn require_cycle(spec: &PathFamilySpec) -> Result<()> {
    if spec.kind != FamilyKind::Cycle {
        return Err(Error::InvalidFamily("operation requires a cycle family".into()));
    }
    Ok(())
}

fn check_gen_index(spec: &PathFamilySpec, i: usize) -> Result<()> {
    let n = spec.num_generators();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, limit: n });
    }
    Ok(())
}

/// The window condition shared by path bridges and gaps: some member `m_j`
/// with `i−p+1 ≤ j < i` and some member `m_k` with `i < k ≤ i+p−1` exist
/// with `k − j ≤ p`. Closest members decide.
fn path_window_condition(spec: &PathFamilySpec, cell: Cell, i: usize) -> bool {
    let p = spec.p;
    let n = spec.num_generators();
    let j_lo = i.saturating_sub(p - 1).max(1);
    let best_j = (j_lo..i).rev().find(|&j| cell.contains(j));
    let k_hi = (i + p - 1).min(n);
    let best_k = (i + 1..=k_hi).find(|&k| cell.contains(k));
    match (best_j, best_k) {
        (Some(j), Some(k)) => k - j <= p,
        _ => false,
    }
}

/// Closed-form bridge test for path ideals: `m_i` is a bridge of the cell
/// iff it is a member, `1 < i < n`, and the window condition holds.
pub fn path_bridge_predicate(spec: &PathFamilySpec, cell: Cell, i: usize) -> Result<bool> {
    require_path(spec)?;
    check_gen_index(spec, i)?;
    let n = spec.num_generators();
    if i == 1 || i == n || !cell.contains(i) {
        return Ok(false);
    }
    Ok(path_window_condition(spec, cell, i))
}

/// Closed-form gap test for path ideals: same window condition, for a
/// non-member.
pub fn path_gap_predicate(spec: &PathFamilySpec, cell: Cell, i: usize) -> Result<bool> {
    require_path(spec)?;
    check_gen_index(spec, i)?;
    let n = spec.num_generators();
    if i == 1 || i == n || cell.contains(i) {
        return Ok(false);
    }
    Ok(path_window_condition(spec, cell, i))
}

/// Closed-form true-gap test for path ideals, valid when `m_i` dominates no
/// bridge of the cell: `m_i` must be a gap, exactly one member may be
/// divisible by `x_{i+p−1}`, and `m_{i+p}` (when it exists) must be absent.
/// When some bridge with larger index exists the closed form does not apply
/// and the generic [`true_gaps`] computation decides.
pub fn path_true_gap_predicate(spec: &PathFamilySpec, cell: Cell, i: usize) -> Result<bool> {
    require_path(spec)?;
    check_gen_index(spec, i)?;
    let p = spec.p;
    let n = spec.num_generators();
    if i == 1 || i == n {
        return Ok(false);
    }
    let dominates_a_bridge = (i + 1..n).any(|b| {
        path_bridge_predicate(spec, cell, b).expect("index in range")
    });
    if dominates_a_bridge {
        let ideal = spec.ideal()?;
        let order = TotalOrder::standard(n);
        return Ok(true_gaps(&ideal, cell, &order)?.contains(&i));
    }
    if !path_gap_predicate(spec, cell, i)? {
        return Ok(false);
    }
    let k_hi = (i + p - 1).min(n);
    let hits = (i + 1..=k_hi).filter(|&k| cell.contains(k)).count();
    if hits != 1 {
        return Ok(false);
    }
    if i + p <= n && cell.contains(i + p) {
        return Ok(false);
    }
    Ok(true)
}

/// The σ-sequence of a squarefree multidegree: the strictly decreasing
/// index sequence `b_1 > b_2 > ⋯` picked greedily by
/// `b_j = max { i : x_i divides m and i ≤ b_{j−1} − p − 1 }` from `b_0 = ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSequence {
    entries: Vec<usize>,
}

impl SigmaSequence {
    pub fn new(entries: Vec<usize>, p: usize) -> Result<Self> {
        for w in entries.windows(2) {
            if w[1] + p + 1 > w[0] {
                return Err(Error::InvalidFamily(format!(
                    "σ-sequence entries must drop by more than p: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(SigmaSequence { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Computes the σ-sequence of a multidegree for a path family. The constant
/// monomial yields the empty sequence.
pub fn sigma_sequence(spec: &PathFamilySpec, m: &Monomial) -> Result<SigmaSequence> {
    require_path(spec)?;
    if m.num_vars() != spec.num_vertices {
        return Err(Error::LengthMismatch { expected: spec.num_vertices, found: m.num_vars() });
    }
    if !m.is_squarefree() {
        return Err(Error::InvalidFamily("σ-sequence requires a squarefree multidegree".into()));
    }
    let mut entries = Vec::new();
    let mut bound = usize::MAX; // b_0 = ∞
    loop {
        let next = (1..=spec.num_vertices)
            .filter(|&i| m.exponent(i) > 0 && i <= bound)
            .max();
        match next {
            Some(b) => {
                entries.push(b);
                if b <= spec.p + 1 {
                    break; // no positive index ≤ b − p − 1 can exist
                }
                bound = b - spec.p - 1;
            }
            None => break,
        }
    }
    SigmaSequence::new(entries, spec.p)
}

/// Reconstructs the unique candidate critical cell with the given lcm:
/// for each σ-sequence entry `b_j` the member `m_{b_j−p+1}`, plus
/// `m_{b_j−p}` whenever `x_{b_j−p}` divides the multidegree. Returns `None`
/// unless the candidate exists, has exactly this lcm, and is bridgeless and
/// true-gapless under the standard order.
pub fn critical_cell_from_multidegree(
    spec: &PathFamilySpec,
    m: &Monomial,
) -> Result<Option<Cell>> {
    require_path(spec)?;
    if m.num_vars() != spec.num_vertices {
        return Err(Error::LengthMismatch { expected: spec.num_vertices, found: m.num_vars() });
    }
    if !m.is_squarefree() {
        return Ok(None); // squarefree ideal: no cell has such an lcm
    }
    let p = spec.p;
    let mut cell = Cell::EMPTY;
    for &b in sigma_sequence(spec, m)?.entries() {
        if b < p {
            return Ok(None); // no generator ends at x_b
        }
        cell = cell.with(b - p + 1);
        if b > p && m.exponent(b - p) > 0 {
            cell = cell.with(b - p);
        }
    }
    let ideal = spec.ideal()?;
    if &lcm_of_cell(&ideal, cell)? != m {
        return Ok(None);
    }
    let order = TotalOrder::standard(spec.num_generators());
    if !bridges(&ideal, cell)?.is_empty() || !true_gaps(&ideal, cell, &order)?.is_empty() {
        return Ok(None);
    }
    Ok(Some(cell))
}

/// Projective dimension of `R/I_p(L_{n+p−1})` with an explicit critical cell
/// of maximal cardinality. Writing `n = (p+1)q + s`, the value is `2q`,
/// `2q+1`, or `2q+2` according to `s = 0`, `s = 1`, or `s ≥ 2`; the witness
/// packs pairs of adjacent generators `p+1` apart, with a leading singleton
/// when `s = 1`.
pub fn pdim_path(p: usize, n: usize) -> Result<(usize, Cell)> {
    if p < 2 {
        return Err(Error::InvalidFamily(format!("path length p = {p} must be ≥ 2")));
    }
    if n == 0 {
        return Err(Error::InvalidFamily("need at least one generator".into()));
    }
    let q = n / (p + 1);
    let s = n % (p + 1);
    let (value, witness) = match s {
        0 => {
            let mut cell = Cell::EMPTY;
            for j in 0..q {
                cell = cell.with(p + j * (p + 1)).with(p + 1 + j * (p + 1));
            }
            (2 * q, cell)
        }
        1 => {
            let mut cell = Cell::singleton(1);
            for j in 0..q {
                cell = cell.with((j + 1) * (p + 1)).with((j + 1) * (p + 1) + 1);
            }
            (2 * q + 1, cell)
        }
        _ => {
            let mut cell = Cell::EMPTY;
            for j in 0..=q {
                cell = cell.with(s - 1 + j * (p + 1)).with(s + j * (p + 1));
            }
            (2 * q + 2, cell)
        }
    };
    debug_assert_eq!(witness.cardinality(), value);
    debug_assert_eq!(witness.max_member().unwrap_or(0), n);
    Ok((value, witness))
}

/// Graded Betti numbers of `R/I_p(L_n)` (here `n` counts vertices) by the
/// three-term recursion
/// `β_{r,d}(L_n) = β_{r,d}(L_{n−1}) + β_{r−1,d−p}(L_{n−p−1}) + β_{r−2,d−p−1}(L_{n−p−1})`,
/// splitting the critical cells by whether they use the last one or two
/// generators. Vertex counts below `p` give the zero ideal; counts up to
/// `2p − 1` are computed directly from the matching.
pub fn betti_recursive(p: usize, num_vertices: usize, guard: Guard) -> Result<GradedBettiTable> {
    if p < 2 {
        return Err(Error::InvalidFamily(format!("path length p = {p} must be ≥ 2")));
    }
    let mut memo: BTreeMap<usize, GradedBettiTable> = BTreeMap::new();
    betti_recursive_memo(p, num_vertices, guard, &mut memo)
}

fn betti_recursive_memo(
    p: usize,
    v: usize,
    guard: Guard,
    memo: &mut BTreeMap<usize, GradedBettiTable>,
) -> Result<GradedBettiTable> {
    if let Some(t) = memo.get(&v) {
        return Ok(t.clone());
    }
    let table = if v < p {
        let mut t = GradedBettiTable::new();
        t.add(0, 0, 1);
        t
    } else if v <= 2 * p - 1 {
        let ideal = path_ideal(p, v)?;
        let order = TotalOrder::standard(ideal.num_generators());
        let matching = barile_macchia(&ideal, &order, guard)?;
        let res = morse_resolution(&ideal, &matching, guard)?;
        betti_from_resolution(&res)?.graded()
    } else {
        let shorter = betti_recursive_memo(p, v - 1, guard, memo)?;
        let clipped = betti_recursive_memo(p, v - p - 1, guard, memo)?;
        let mut t = GradedBettiTable::new();
        for (r, d, k) in shorter.iter() {
            t.add(r, d, k);
        }
        for (r, d, k) in clipped.iter() {
            t.add(r + 1, d + p as u64, k);
            t.add(r + 2, d + p as u64 + 1, k);
        }
        t
    };
    memo.insert(v, table.clone());
    Ok(table)
}

/// Per-lcm-class total orders that make the generalized matching of a cycle
/// ideal minimal. The full-support class keeps the standard order; any other
/// class misses some variable, and the smallest missing index `i0` fixes the
/// rotation `m_{i0+1} ≻ m_{i0+2} ≻ ⋯`, so the class's generators are ordered
/// exactly as on the induced path that avoids `x_{i0}`.
pub fn cycle_order_map(spec: &PathFamilySpec, guard: Guard) -> Result<OrderMap> {
    require_cycle(spec)?;
    let ideal = spec.ideal()?;
    let n = ideal.num_generators();
    let default_order = TotalOrder::standard(n);
    if n < spec.num_vertices {
        // p = n collapsed to a principal ideal; one class, any order.
        return Ok(OrderMap::constant(default_order));
    }
    let mut overrides = BTreeMap::new();
    for u in cells_by_lcm_class(&ideal, guard)?.into_keys() {
        if u.is_one() {
            continue;
        }
        let missing = (1..=spec.num_vertices).find(|&v| u.exponent(v) == 0);
        let Some(i0) = missing else {
            continue; // full support: standard order
        };
        let mut ranking = Vec::with_capacity(n);
        for step in 1..=n {
            ranking.push((i0 + step - 1) % n + 1);
        }
        overrides.insert(u, TotalOrder::from_ranking(&ranking)?);
    }
    Ok(OrderMap::new(default_order, overrides))
}

/// The critical cells of the full-support lcm class of `I_p(C_n)` under the
/// rotation order map, with their criticality kind. Writing
/// `n = (p+1)q + r`:
///
/// * `r = 0`: the `p` cells `{m_j : j ≡ i or 0 (mod p+1)}`, `1 ≤ i ≤ p`,
///   all absolutely critical, each of cardinality `2q`;
/// * `r ≠ 0`: the single cell `{m_j : j ≥ r, j ≡ r or 2r (mod p+1)}` of
///   cardinality `2q + 1`, absolutely critical exactly when `2r > p`.
///
/// The degenerate `p = n` family is refused.
pub fn cycle_top_critical(spec: &PathFamilySpec) -> Result<Vec<(Cell, CellLabel)>> {
    require_cycle(spec)?;
    let (p, n) = (spec.p, spec.num_vertices);
    if p == n {
        return Err(Error::InvalidFamily(
            "p = n collapses to a principal ideal; no full-support class to classify".into(),
        ));
    }
    let q = n / (p + 1);
    let r = n % (p + 1);
    let mut out = Vec::new();
    if r == 0 {
        for i in 1..=p {
            let mut cell = Cell::EMPTY;
            for j in 1..=n {
                if j % (p + 1) == i % (p + 1) || j % (p + 1) == 0 {
                    cell = cell.with(j);
                }
            }
            debug_assert_eq!(cell.cardinality(), 2 * q);
            out.push((cell, CellLabel::AbsolutelyCritical));
        }
    } else {
        let mut cell = Cell::EMPTY;
        for j in r..=n {
            if j % (p + 1) == r % (p + 1) || j % (p + 1) == (2 * r) % (p + 1) {
                cell = cell.with(j);
            }
        }
        debug_assert_eq!(cell.cardinality(), 2 * q + 1);
        let label = if 2 * r > p {
            CellLabel::AbsolutelyCritical
        } else {
            CellLabel::FortunatelyCritical
        };
        out.push((cell, label));
    }
    out.sort_by(|a, b| Cell::cmp_card_lex(&a.0, &b.0));
    Ok(out)
}

/// The polygon that supports the minimal resolution in the projective-
/// dimension-2 cases: for the path family `I_p(L_{2p+1})` the `(p+2)`-gon
/// whose 2-cell is labeled `{m_1, m_{p+1}, m_{p+2}}`, and for a cycle with
/// `n = p + 1 + r`, `1 ≤ r ≤ p`, the `n`-gon whose 2-cell is labeled
/// `{m_r, m_{2r}, m_n}`.
pub fn polygon_support_complex(spec: &PathFamilySpec) -> Result<LabeledComplex> {
    let (sides, top_label) = match spec.kind {
        FamilyKind::Path => {
            let n = spec.num_generators();
            if n != spec.p + 2 {
                return Err(Error::InvalidFamily(format!(
                    "polygon support requires n = p + 2 generators, got {n}"
                )));
            }
            (n, Cell::EMPTY.with(1).with(spec.p + 1).with(spec.p + 2))
        }
        FamilyKind::Cycle => {
            let n = spec.num_vertices;
            let r = n.checked_sub(spec.p + 1).unwrap_or(0);
            if r == 0 || r > spec.p {
                return Err(Error::InvalidFamily(format!(
                    "polygon support requires n = p + 1 + r with 1 ≤ r ≤ p, got n = {n}"
                )));
            }
            (n, Cell::EMPTY.with(r).with(2 * r).with(n))
        }
    };
    let mut faces = Vec::new();
    for i in 1..=sides {
        faces.push(LabeledFace {
            dimension: 0,
            label: Cell::singleton(i),
            boundary: Vec::new(),
        });
    }
    // Edge i joins vertices i and i+1 (the last one wraps), oriented so the
    // polygon boundary telescopes to zero.
    for i in 1..=sides {
        let (a, b) = if i < sides { (i, i + 1) } else { (1, sides) };
        faces.push(LabeledFace {
            dimension: 1,
            label: Cell::EMPTY.with(a).with(b),
            boundary: alloc::vec![(b - 1, 1), (a - 1, -1)],
        });
    }
    let mut boundary: Vec<(usize, i64)> =
        (1..sides).map(|i| (sides + i - 1, 1)).collect();
    boundary.push((2 * sides - 1, -1));
    faces.push(LabeledFace { dimension: 2, label: top_label, boundary });
    LabeledComplex::new(faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{gaps, generalized_barile_macchia, Matching};
    use alloc::vec;

    fn cell(members: &[usize]) -> Cell {
        Cell::from_members(members).unwrap()
    }

    #[test]
    fn path_ideal_generators() {
        let ideal = path_ideal(3, 8).unwrap();
        assert_eq!(ideal.num_generators(), 6);
        assert_eq!(ideal.generator(1), &Monomial::new(vec![1, 1, 1, 0, 0, 0, 0, 0]));
        assert_eq!(ideal.generator(6), &Monomial::new(vec![0, 0, 0, 0, 0, 1, 1, 1]));

        let principal = path_ideal(2, 2).unwrap();
        assert_eq!(principal.num_generators(), 1);

        let ex = path_ideal(2, 5).unwrap();
        assert_eq!(ex.num_generators(), 4);
        assert!(path_ideal(3, 2).is_err());
    }

    #[test]
    fn cycle_ideal_generators() {
        let c9 = cycle_ideal(2, 9).unwrap();
        assert_eq!(c9.num_generators(), 9);
        assert_eq!(c9.generator(9), &Monomial::new(vec![1, 0, 0, 0, 0, 0, 0, 0, 1]));

        let triangle = cycle_ideal(2, 3).unwrap();
        assert_eq!(triangle.num_generators(), 3);

        // p = n: every rotation is x1⋯xn, so the ideal is principal.
        let degenerate = cycle_ideal(4, 4).unwrap();
        assert_eq!(degenerate.num_generators(), 1);
        assert!(cycle_ideal(5, 4).is_err());
    }

    #[test]
    fn window_predicates_on_worked_example() {
        let spec = PathFamilySpec::path(3, 8).unwrap();
        let sigma = cell(&[1, 4, 6]);
        // m2 is a gap via the pair (m1, m4): 4 − 1 ≤ 3.
        assert!(path_gap_predicate(&spec, sigma, 2).unwrap());
        assert!(!path_bridge_predicate(&spec, sigma, 2).unwrap());
        // Endpoints are never bridges or gaps.
        for i in [1, 6] {
            assert!(!path_bridge_predicate(&spec, sigma, i).unwrap());
            assert!(!path_gap_predicate(&spec, sigma, i).unwrap());
        }
    }

    #[test]
    fn window_predicates_agree_with_generic_computation() {
        for (p, nv) in [(3, 8), (4, 11)] {
            let spec = PathFamilySpec::path(p, nv).unwrap();
            let ideal = spec.ideal().unwrap();
            let n = ideal.num_generators();
            for mask in 0..(1u64 << n) {
                let c = Cell::from_mask(mask);
                let b = bridges(&ideal, c).unwrap();
                let g = gaps(&ideal, c).unwrap();
                for i in 1..=n {
                    assert_eq!(
                        path_bridge_predicate(&spec, c, i).unwrap(),
                        b.contains(&i),
                        "bridge p={p} cell={} i={i}",
                        c.display()
                    );
                    assert_eq!(
                        path_gap_predicate(&spec, c, i).unwrap(),
                        g.contains(&i),
                        "gap p={p} cell={} i={i}",
                        c.display()
                    );
                }
            }
        }
    }

    #[test]
    fn true_gap_predicate_on_worked_example() {
        let spec = PathFamilySpec::path(3, 8).unwrap();
        let sigma = cell(&[1, 4, 6]);
        assert!(path_true_gap_predicate(&spec, sigma, 2).unwrap());
        assert!(!path_true_gap_predicate(&spec, sigma, 3).unwrap()); // m6 ∈ σ
        assert!(path_true_gap_predicate(&spec, sigma, 5).unwrap());
        assert!(!path_true_gap_predicate(&spec, sigma, 6).unwrap()); // last index
    }

    #[test]
    fn true_gap_predicate_agrees_with_generic_computation() {
        let spec = PathFamilySpec::path(3, 8).unwrap();
        let ideal = spec.ideal().unwrap();
        let n = ideal.num_generators();
        let order = TotalOrder::standard(n);
        for mask in 0..(1u64 << n) {
            let c = Cell::from_mask(mask);
            let tg = true_gaps(&ideal, c, &order).unwrap();
            for i in 1..=n {
                assert_eq!(
                    path_true_gap_predicate(&spec, c, i).unwrap(),
                    tg.contains(&i),
                    "cell={} i={i}",
                    c.display()
                );
            }
        }
    }

    #[test]
    fn sigma_sequence_of_worked_multidegrees() {
        let spec = PathFamilySpec::path(3, 8).unwrap();
        let full = Monomial::new(vec![1; 8]);
        assert_eq!(sigma_sequence(&spec, &full).unwrap().entries(), &[8, 4]);

        let ideal = spec.ideal().unwrap();
        let m1 = ideal.generator(1);
        assert_eq!(sigma_sequence(&spec, m1).unwrap().entries(), &[3]);

        assert!(sigma_sequence(&spec, &Monomial::one(8)).unwrap().is_empty());
    }

    #[test]
    fn critical_cell_reconstruction_on_worked_example() {
        let spec = PathFamilySpec::path(3, 8).unwrap();
        let full = Monomial::new(vec![1; 8]);
        assert_eq!(
            critical_cell_from_multidegree(&spec, &full).unwrap(),
            Some(cell(&[1, 2, 5, 6]))
        );
        let ideal = spec.ideal().unwrap();
        for i in 1..=ideal.num_generators() {
            assert_eq!(
                critical_cell_from_multidegree(&spec, ideal.generator(i)).unwrap(),
                Some(Cell::singleton(i))
            );
        }
        // x4*x5 is not the lcm of any critical cell.
        let not_a_multidegree = Monomial::new(vec![0, 0, 0, 1, 1, 0, 0, 0]);
        assert_eq!(critical_cell_from_multidegree(&spec, &not_a_multidegree).unwrap(), None);
    }

    #[test]
    fn pdim_values_and_witnesses() {
        let (pd, witness) = pdim_path(3, 6).unwrap();
        assert_eq!(pd, 4);
        assert_eq!(witness, cell(&[1, 2, 5, 6]));

        let (pd, witness) = pdim_path(2, 4).unwrap();
        assert_eq!(pd, 3);
        assert_eq!(witness, cell(&[1, 3, 4]));

        let (pd, witness) = pdim_path(2, 1).unwrap();
        assert_eq!(pd, 1);
        assert_eq!(witness, cell(&[1]));
    }

    #[test]
    fn betti_recursion_small_values() {
        let t = betti_recursive(2, 5, Guard::default()).unwrap();
        assert_eq!(t.get(3, 5), 1);
        assert_eq!(t.get(1, 2), 4);
        assert_eq!(t.get(2, 3), 3);
        assert_eq!(t.get(2, 4), 1);
        assert_eq!(t.get(0, 0), 1);

        for p in [2, 3, 4] {
            for v in 1..=9 {
                let t = betti_recursive(p, v, Guard::default()).unwrap();
                assert_eq!(t.get(0, 0), 1, "p={p} v={v}");
            }
        }
    }

    #[test]
    fn cycle_order_map_orders() {
        let spec = PathFamilySpec::cycle(2, 9).unwrap();
        let ideal = spec.ideal().unwrap();
        let orders = cycle_order_map(&spec, Guard::default()).unwrap();

        let full = Monomial::new(vec![1; 9]);
        assert_eq!(orders.order_for(&full), &TotalOrder::standard(9));

        // A class missing x1 ranks m2 ≻ m3 ≻ ⋯ ≻ m9 ≻ m1.
        let missing_x1 = lcm_of_cell(&ideal, cell(&[2, 3, 4, 5, 6, 7, 8])).unwrap();
        assert_eq!(missing_x1.exponent(1), 0);
        let order = orders.order_for(&missing_x1);
        assert_eq!(order.ranking(), vec![2, 3, 4, 5, 6, 7, 8, 9, 1]);
    }

    #[test]
    fn top_class_critical_cells_match_generalized_matching_on_c9() {
        let spec = PathFamilySpec::cycle(2, 9).unwrap();
        let ideal = spec.ideal().unwrap();
        let orders = cycle_order_map(&spec, Guard::default()).unwrap();
        let matching =
            generalized_barile_macchia(&ideal, &orders, Guard::default()).unwrap();
        let full = Monomial::new(vec![1; 9]);
        let from_matching: Vec<Cell> = matching
            .critical_cells()
            .into_iter()
            .filter(|c| lcm_of_cell(&ideal, *c).unwrap() == full)
            .collect();
        let classified: Vec<Cell> =
            cycle_top_critical(&spec).unwrap().into_iter().map(|(c, _)| c).collect();
        assert_eq!(from_matching, classified);
        assert_eq!(classified, vec![cell(&[1, 3, 4, 6, 7, 9]), cell(&[2, 3, 5, 6, 8, 9])]);
    }

    #[test]
    fn top_class_classification_examples() {
        let spec = PathFamilySpec::cycle(2, 6).unwrap();
        let cells = cycle_top_critical(&spec).unwrap();
        assert_eq!(
            cells,
            vec![
                (cell(&[1, 3, 4, 6]), CellLabel::AbsolutelyCritical),
                (cell(&[2, 3, 5, 6]), CellLabel::AbsolutelyCritical),
            ]
        );

        let spec = PathFamilySpec::cycle(2, 7).unwrap();
        let cells = cycle_top_critical(&spec).unwrap();
        assert_eq!(cells, vec![(cell(&[1, 2, 4, 5, 7]), CellLabel::FortunatelyCritical)]);

        let spec = PathFamilySpec::cycle(3, 10).unwrap();
        let cells = cycle_top_critical(&spec).unwrap();
        assert_eq!(cells, vec![(cell(&[2, 4, 6, 8, 10]), CellLabel::AbsolutelyCritical)]);

        let degenerate = PathFamilySpec::cycle(4, 4).unwrap();
        assert!(cycle_top_critical(&degenerate).is_err());
    }

    #[test]
    fn betti_recursive_matches_resolution_on_an_instance() {
        let p = 3;
        let nv = 9; // 7 generators
        let ideal = path_ideal(p, nv).unwrap();
        let order = TotalOrder::standard(ideal.num_generators());
        let matching: Matching = barile_macchia(&ideal, &order, Guard::default()).unwrap();
        let res = morse_resolution(&ideal, &matching, Guard::default()).unwrap();
        let from_res = betti_from_resolution(&res).unwrap().graded();
        let from_rec = betti_recursive(p, nv, Guard::default()).unwrap();
        assert_eq!(from_res, from_rec);
    }
}

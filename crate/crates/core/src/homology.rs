//! Independent Betti-number oracle via reduced simplicial homology.
//!
//! For each multidegree `m` in the lcm lattice, `β_{i,m}(R/I)` with `i ≥ 1`
//! is the rank of the reduced `(i−2)`-nd homology of the complex of cells
//! whose lcm strictly divides `m`. Ranks are computed exactly: over the
//! rationals by division-controlled integer elimination, or over a prime
//! field. None of this shares a code path with the Morse construction, which
//! is the point — it is the ground truth the resolutions are checked against.
//! A second, independent oracle cancels unit entries of a resolution until
//! none remain ([`minimalize_by_pruning`]).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::betti::BettiTable;
use crate::error::Error;
use crate::ideal::{lcm_of_cell, Cell, Monomial, MonomialIdeal};
use crate::matching::{cells_by_lcm_class, Guard};
use crate::morse::{compose_check, MorseResolution};
use crate::Result;

/// Coefficient field for homology ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// 0 means the rationals; any prime selects the corresponding field.
    pub fn from_characteristic(c: u64) -> Result<Field> {
        if c == 0 {
            Ok(Field::Rationals)
        } else if is_prime(c) {
            Ok(Field::Prime(c))
        } else {
            Err(Error::NotAPrime(c))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Sparse integer matrix with entries keyed `(column, row)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn insert(&mut self, col: usize, row: usize, value: i64) {
        debug_assert!(row < self.rows && col < self.cols && value != 0);
        self.entries.insert((col, row), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|(&(c, r), &v)| (c, r, v))
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }
}

/// The chain complex of a finite simplicial complex on generator indices,
/// graded by cardinality: level 0 holds the empty face, level ℓ the faces
/// of cardinality ℓ. `boundary_from(ℓ)` maps level ℓ to level ℓ − 1; the
/// level-1 boundary is the augmentation onto the empty face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrixStack {
    faces: Vec<Vec<Cell>>,
    boundaries: Vec<SparseIntMatrix>,
}

impl BoundaryMatrixStack {
    /// Builds the stack from a downward-closed face set (checked). Faces in
    /// each level are sorted by their index sequences.
    pub fn from_faces(face_set: &BTreeSet<Cell>) -> Result<Self> {
        if face_set.is_empty() {
            return Ok(BoundaryMatrixStack { faces: Vec::new(), boundaries: Vec::new() });
        }
        let max_level = face_set.iter().map(|c| c.cardinality()).max().unwrap_or(0);
        let mut faces: Vec<Vec<Cell>> = alloc::vec![Vec::new(); max_level + 1];
        for &f in face_set {
            for j in f.iter_members() {
                if !face_set.contains(&f.without(j)) {
                    return Err(Error::InvalidComplex(format!(
                        "face {} present without its facet {}",
                        f.display(),
                        f.without(j).display()
                    )));
                }
            }
            faces[f.cardinality()].push(f);
        }
        for level in &mut faces {
            level.sort_by(Cell::cmp_card_lex);
        }
        let mut boundaries = Vec::new();
        for level in 1..=max_level {
            let index: BTreeMap<Cell, usize> =
                faces[level - 1].iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let mut mat = SparseIntMatrix::new(faces[level - 1].len(), faces[level].len());
            for (col, &f) in faces[level].iter().enumerate() {
                for j in f.iter_members() {
                    let row = index[&f.without(j)];
                    let sign = if f.position_of(j).expect("member") % 2 == 0 { 1 } else { -1 };
                    mat.insert(col, row, sign);
                }
            }
            boundaries.push(mat);
        }
        Ok(BoundaryMatrixStack { faces, boundaries })
    }

    pub fn num_levels(&self) -> usize {
        self.faces.len()
    }

    pub fn faces_of_cardinality(&self, level: usize) -> &[Cell] {
        &self.faces[level]
    }

    /// Boundary map out of level ℓ (ℓ ≥ 1).
    pub fn boundary_from(&self, level: usize) -> &SparseIntMatrix {
        &self.boundaries[level - 1]
    }

    /// Consecutive boundaries compose to zero; used as a sanity check.
    pub fn verify_composition(&self) -> bool {
        for level in 2..self.num_levels() {
            let upper = self.boundary_from(level);
            let lower = self.boundary_from(level - 1);
            let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for (c, mid, v1) in upper.iter() {
                for (c2, r, v2) in lower.iter() {
                    if c2 == mid {
                        *acc.entry((c, r)).or_insert(0) += v1 * v2;
                    }
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Exact rank computation
// ---------------------------------------------------------------------------

/// Sparse elimination state: alive rows plus a column-to-rows index.
struct Elimination<T> {
    rows: Vec<Option<BTreeMap<usize, T>>>,
    col_rows: BTreeMap<usize, BTreeSet<usize>>,
}

impl<T: Clone> Elimination<T> {
    fn from_matrix(mat: &SparseIntMatrix, lift: impl Fn(i64) -> T) -> Self {
        let mut rows: Vec<Option<BTreeMap<usize, T>>> =
            (0..mat.rows()).map(|_| Some(BTreeMap::new())).collect();
        let mut col_rows: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (c, r, v) in mat.iter() {
            rows[r].as_mut().expect("alive").insert(c, lift(v));
            col_rows.entry(c).or_default().insert(r);
        }
        Elimination { rows, col_rows }
    }

    /// Pivot with the given preference; tie-break on smallest (row, col).
    fn pick_pivot(&self, prefer_unit: impl Fn(&T) -> bool) -> Option<(usize, usize)> {
        let mut best: Option<(bool, usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            let Some(row) = row else { continue };
            let row_nnz = row.len();
            for (&c, v) in row {
                let unit = prefer_unit(v);
                let cost = (row_nnz - 1) * (self.col_rows[&c].len() - 1);
                let key = (!unit, cost, r, c);
                if best.map(|b| key < b).unwrap_or(true) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn remove_row(&mut self, r: usize) -> BTreeMap<usize, T> {
        let row = self.rows[r].take().expect("alive row");
        for c in row.keys() {
            if let Some(set) = self.col_rows.get_mut(c) {
                set.remove(&r);
                if set.is_empty() {
                    self.col_rows.remove(c);
                }
            }
        }
        row
    }

    fn set_row(&mut self, r: usize, row: BTreeMap<usize, T>) {
        for c in row.keys() {
            self.col_rows.entry(*c).or_default().insert(r);
        }
        self.rows[r] = Some(row);
    }
}

/// Rank over the rationals by integer-preserving elimination: rows are
/// combined as `a·row − b·pivot` (plain subtraction when the pivot is ±1)
/// and divided by their content, so no fractions ever appear.
fn rank_over_q(mat: &SparseIntMatrix) -> usize {
    let mut elim = Elimination::from_matrix(mat, BigInt::from);
    let mut rank = 0;
    while let Some((pr, pc)) = elim.pick_pivot(|v: &BigInt| v.magnitude().is_one()) {
        rank += 1;
        let pivot_row = elim.remove_row(pr);
        let a = pivot_row[&pc].clone();
        let touched: Vec<usize> =
            elim.col_rows.get(&pc).map(|s| s.iter().copied().collect()).unwrap_or_default();
        for r in touched {
            let mut row = elim.remove_row(r);
            let b = row.remove(&pc).expect("indexed entry");
            if a.magnitude().is_one() {
                // row ← row − (b/a)·pivot_row, exact since a = ±1.
                let factor = &b * &a;
                for (c, v) in &pivot_row {
                    if *c == pc {
                        continue;
                    }
                    let slot = row.entry(*c).or_insert_with(BigInt::zero);
                    *slot -= &factor * v;
                    if slot.is_zero() {
                        row.remove(c);
                    }
                }
            } else {
                for v in row.values_mut() {
                    *v *= &a;
                }
                for (c, v) in &pivot_row {
                    if *c == pc {
                        continue;
                    }
                    let slot = row.entry(*c).or_insert_with(BigInt::zero);
                    *slot -= &b * v;
                    if slot.is_zero() {
                        row.remove(c);
                    }
                }
                let mut content = BigInt::zero();
                for v in row.values() {
                    content = content.gcd(v);
                }
                if content > BigInt::one() {
                    for v in row.values_mut() {
                        *v /= &content;
                    }
                }
            }
            if !row.is_empty() {
                elim.set_row(r, row);
            }
        }
    }
    rank
}

/// Rank over `F_p` by ordinary sparse Gaussian elimination.
fn rank_over_fp(mat: &SparseIntMatrix, p: u64) -> usize {
    let lift = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let mut elim = Elimination::from_matrix(mat, lift);
    // Entries of boundary matrices are ±1, never 0 mod p, but keep it safe.
    for row in elim.rows.iter_mut().flatten() {
        row.retain(|_, v| *v != 0);
    }
    elim.col_rows.clear();
    let mut col_rows: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (r, row) in elim.rows.iter().enumerate() {
        for c in row.as_ref().expect("alive").keys() {
            col_rows.entry(*c).or_default().insert(r);
        }
    }
    elim.col_rows = col_rows;

    let mulp = |a: u64, b: u64| -> u64 { ((a as u128 * b as u128) % p as u128) as u64 };
    let powp = |mut a: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulp(acc, a);
            }
            a = mulp(a, a);
            e >>= 1;
        }
        acc
    };

    let mut rank = 0;
    while let Some((pr, pc)) = elim.pick_pivot(|&v: &u64| v == 1 || v == p - 1) {
        rank += 1;
        let pivot_row = elim.remove_row(pr);
        let inv = powp(pivot_row[&pc], p - 2);
        let touched: Vec<usize> =
            elim.col_rows.get(&pc).map(|s| s.iter().copied().collect()).unwrap_or_default();
        for r in touched {
            let mut row = elim.remove_row(r);
            let b = row.remove(&pc).expect("indexed entry");
            let factor = mulp(b, inv);
            for (c, v) in &pivot_row {
                if *c == pc {
                    continue;
                }
                let slot = row.entry(*c).or_insert(0);
                *slot = (*slot + p - mulp(factor, *v)) % p;
                if *slot == 0 {
                    row.remove(c);
                }
            }
            if !row.is_empty() {
                elim.set_row(r, row);
            }
        }
    }
    rank
}

fn matrix_rank(mat: &SparseIntMatrix, field: Field) -> usize {
    match field {
        Field::Rationals => rank_over_q(mat),
        Field::Prime(p) => rank_over_fp(mat, p),
    }
}

/// Reduced Betti numbers of a chain complex given by level dimensions and
/// the boundary maps out of levels `1, 2, …`. Index `ℓ` of the result is
/// the reduced homology in dimension `ℓ − 1` (index 0 is `H̃_{−1}`).
fn reduced_ranks_from_chain(
    level_dims: &[usize],
    boundaries: &[SparseIntMatrix],
    field: Field,
) -> Result<Vec<u64>> {
    if level_dims.is_empty() {
        return Ok(Vec::new());
    }
    let mut rank_out = alloc::vec![0usize; level_dims.len() + 1];
    for (k, mat) in boundaries.iter().enumerate() {
        rank_out[k + 1] = matrix_rank(mat, field);
    }
    let mut out = Vec::with_capacity(level_dims.len());
    for (l, &dim) in level_dims.iter().enumerate() {
        let killed = rank_out[l] + rank_out[l + 1];
        let h = dim
            .checked_sub(killed)
            .ok_or(Error::Internal("boundary ranks exceed chain dimension"))?;
        out.push(h as u64);
    }
    Ok(out)
}

/// Reduced homology ranks of the stack over the given field; index 0 of the
/// result is `H̃_{−1}`, index `d + 1` is `H̃_d`.
pub fn reduced_homology_ranks(stack: &BoundaryMatrixStack, field: Field) -> Result<Vec<u64>> {
    let dims: Vec<usize> = stack.faces.iter().map(Vec::len).collect();
    reduced_ranks_from_chain(&dims, &stack.boundaries, field)
}

/// Multigraded Betti numbers of `R/I` from scratch: for every multidegree
/// `m` in the lcm lattice, `β_{i,m}` is the reduced `(i−2)`-nd homology rank
/// of the complex of cells whose lcm strictly divides `m`, plus the constant
/// `β_{0,1} = 1`.
pub fn betti_oracle(ideal: &MonomialIdeal, guard: Guard, field: Field) -> Result<BettiTable> {
    guard.check(ideal)?;
    let mut table = BettiTable::new();
    table.add(0, Monomial::one(ideal.num_vars()), 1);
    if ideal.is_zero() {
        return Ok(table);
    }
    for m in cells_by_lcm_class(ideal, guard)?.into_keys() {
        if m.is_one() {
            continue;
        }
        let relevant: Vec<usize> = (1..=ideal.num_generators())
            .filter(|&i| ideal.generator(i).divides(&m).expect("same ring"))
            .collect();
        let mut faces: BTreeSet<Cell> = BTreeSet::new();
        for mask in 0..(1u64 << relevant.len()) {
            let mut cell = Cell::EMPTY;
            for (bit, &gen) in relevant.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    cell = cell.with(gen);
                }
            }
            if lcm_of_cell(ideal, cell)? != m {
                faces.insert(cell);
            }
        }
        let stack = BoundaryMatrixStack::from_faces(&faces)?;
        let ranks = reduced_homology_ranks(&stack, field)?;
        for (level, &rank) in ranks.iter().enumerate() {
            // level ℓ holds H̃_{ℓ−1} = β_{ℓ+1, m}
            table.add(level + 1, m.clone(), rank);
        }
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// Labeled CW complexes and the BPS support criterion
// ---------------------------------------------------------------------------

/// A face of a labeled regular CW complex: its dimension, the cell of the
/// ideal labeling it, and its boundary as signed references to lower faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledFace {
    pub dimension: usize,
    pub label: Cell,
    pub boundary: Vec<(usize, i64)>,
}

/// A finite labeled CW complex with integer incidence coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledComplex {
    faces: Vec<LabeledFace>,
}

impl LabeledComplex {
    /// Validates dimensions, boundary references and ∂∘∂ = 0.
    pub fn new(faces: Vec<LabeledFace>) -> Result<Self> {
        for (i, f) in faces.iter().enumerate() {
            if f.dimension == 0 && !f.boundary.is_empty() {
                return Err(Error::InvalidComplex(format!("vertex {i} has a boundary")));
            }
            let mut seen = BTreeSet::new();
            for &(b, coeff) in &f.boundary {
                if b >= faces.len() {
                    return Err(Error::InvalidComplex(format!("face {i} references {b}")));
                }
                if faces[b].dimension + 1 != f.dimension {
                    return Err(Error::InvalidComplex(format!(
                        "face {i} of dimension {} has boundary face of dimension {}",
                        f.dimension, faces[b].dimension
                    )));
                }
                if coeff == 0 || !seen.insert(b) {
                    return Err(Error::InvalidComplex(format!(
                        "face {i} has a zero or duplicate boundary coefficient"
                    )));
                }
            }
        }
        for (i, f) in faces.iter().enumerate() {
            if f.dimension < 2 {
                continue;
            }
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(e, c1) in &f.boundary {
                for &(v, c2) in &faces[e].boundary {
                    *acc.entry(v).or_insert(0) += c1 * c2;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(Error::InvalidComplex(format!("∂∘∂ ≠ 0 at face {i}")));
            }
        }
        Ok(LabeledComplex { faces })
    }

    pub fn faces(&self) -> &[LabeledFace] {
        &self.faces
    }

    /// Removes a face together with every face whose boundary chain reaches
    /// it, and reindexes. Used to build deliberately broken complexes.
    pub fn remove_face(&self, idx: usize) -> Result<Self> {
        if idx >= self.faces.len() {
            return Err(Error::IndexOutOfRange { index: idx, limit: self.faces.len() });
        }
        let mut removed: BTreeSet<usize> = BTreeSet::new();
        removed.insert(idx);
        loop {
            let mut grew = false;
            for (i, f) in self.faces.iter().enumerate() {
                if removed.contains(&i) {
                    continue;
                }
                if f.boundary.iter().any(|(b, _)| removed.contains(b)) {
                    removed.insert(i);
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut faces = Vec::new();
        for (i, f) in self.faces.iter().enumerate() {
            if removed.contains(&i) {
                continue;
            }
            remap.insert(i, faces.len());
            faces.push(f.clone());
        }
        for f in &mut faces {
            for (b, _) in &mut f.boundary {
                *b = remap[b];
            }
        }
        LabeledComplex::new(faces)
    }
}

/// Support criterion for a labeled complex: every multidegree-restricted
/// subcomplex (faces whose label-lcm divides `m`, for `m` in the lcm
/// lattice of the ideal) must be empty or acyclic over the rationals.
/// Acyclicity stands in for contractibility, which is what the conclusion
/// "the complex supports a resolution" needs at this scale.
pub fn bps_support_check(
    ideal: &MonomialIdeal,
    complex: &LabeledComplex,
    guard: Guard,
) -> Result<bool> {
    let mut label_lcms = Vec::with_capacity(complex.faces().len());
    for f in complex.faces() {
        label_lcms.push(lcm_of_cell(ideal, f.label)?);
    }
    // Labels must shrink along boundaries or restriction would not be closed.
    for (i, f) in complex.faces().iter().enumerate() {
        for &(b, _) in &f.boundary {
            if !label_lcms[b].divides(&label_lcms[i])? {
                return Err(Error::InvalidComplex(format!(
                    "label of boundary face {b} does not divide label of face {i}"
                )));
            }
        }
    }
    for m in cells_by_lcm_class(ideal, guard)?.into_keys() {
        let selected: Vec<usize> = (0..complex.faces().len())
            .filter(|&i| label_lcms[i].divides(&m).expect("same ring"))
            .collect();
        if selected.is_empty() {
            continue;
        }
        if !restricted_subcomplex_is_acyclic(complex, &selected)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reduced rational homology of the CW subcomplex on the selected faces,
/// with the empty-face augmentation; true when all ranks vanish.
fn restricted_subcomplex_is_acyclic(
    complex: &LabeledComplex,
    selected: &[usize],
) -> Result<bool> {
    let max_dim = selected.iter().map(|&i| complex.faces()[i].dimension).max().unwrap_or(0);
    // Level 0 is the augmentation target; level ℓ holds dimension ℓ−1 faces.
    let mut level_of: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut level_dims = alloc::vec![0usize; max_dim + 2];
    level_dims[0] = 1;
    for &i in selected {
        let level = complex.faces()[i].dimension + 1;
        level_of.insert(i, (level, level_dims[level]));
        level_dims[level] += 1;
    }
    let mut boundaries: Vec<SparseIntMatrix> = (1..level_dims.len())
        .map(|l| SparseIntMatrix::new(level_dims[l - 1], level_dims[l]))
        .collect();
    for &i in selected {
        let (level, col) = level_of[&i];
        let face = &complex.faces()[i];
        if face.dimension == 0 {
            boundaries[0].insert(col, 0, 1); // augmentation
        } else {
            for &(b, coeff) in &face.boundary {
                let (blevel, row) = *level_of
                    .get(&b)
                    .ok_or(Error::InvalidComplex("restriction is not closed".into()))?;
                debug_assert_eq!(blevel + 1, level);
                boundaries[level - 1].insert(col, row, coeff);
            }
        }
    }
    let ranks = reduced_ranks_from_chain(&level_dims, &boundaries, Field::Rationals)?;
    Ok(ranks.iter().all(|&r| r == 0))
}

// ---------------------------------------------------------------------------
// Minimalization by unit-entry pruning
// ---------------------------------------------------------------------------

/// Pivot scan direction for [`minimalize_by_pruning_with`]. The final ranks
/// are independent of the order; tests re-run small instances reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotOrder {
    Forward,
    Reverse,
}

/// Ranks after exhaustively cancelling invertible entries of the
/// differentials, as a multigraded Betti table. This is Gaussian elimination
/// on the chain complex over the rationals and never consults the matching
/// machinery, so it serves as a second oracle. The input must be a genuine
/// complex (∂∘∂ = 0 is re-checked).
pub fn minimalize_by_pruning(res: &MorseResolution) -> Result<BettiTable> {
    minimalize_by_pruning_with(res, PivotOrder::Forward)
}

pub fn minimalize_by_pruning_with(
    res: &MorseResolution,
    order: PivotOrder,
) -> Result<BettiTable> {
    compose_check(res)?;
    let max_degree = res.max_degree();
    let mut multidegrees: Vec<Vec<Monomial>> = Vec::with_capacity(max_degree + 1);
    let mut alive: Vec<Vec<bool>> = Vec::with_capacity(max_degree + 1);
    for r in 0..=max_degree {
        multidegrees.push(res.basis(r).iter().map(|e| e.lcm.clone()).collect());
        alive.push(alloc::vec![true; res.basis(r).len()]);
    }
    // cols[r−1][col] : row → coefficient, for the degree-r differential.
    let mut cols: Vec<Vec<BTreeMap<usize, BigRational>>> = Vec::with_capacity(max_degree);
    let mut row_cols: Vec<Vec<BTreeSet<usize>>> = Vec::with_capacity(max_degree);
    let mut units: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for r in 1..=max_degree {
        let mat = res.differential(r).expect("in range");
        let mut degree_cols = alloc::vec![BTreeMap::new(); mat.cols()];
        let mut degree_rows = alloc::vec![BTreeSet::new(); mat.rows()];
        for (c, row, entry) in mat.iter() {
            degree_cols[c].insert(row, BigRational::from_integer(entry.coeff.clone()));
            degree_rows[row].insert(c);
            if entry.monomial.is_one() {
                units.insert((r, row, c));
            }
        }
        cols.push(degree_cols);
        row_cols.push(degree_rows);
    }

    let is_unit = |multidegrees: &Vec<Vec<Monomial>>, r: usize, row: usize, col: usize| {
        multidegrees[r][col] == multidegrees[r - 1][row]
    };

    // Writes (or erases) one entry, maintaining the indexes and the unit set.
    macro_rules! set_entry {
        ($r:expr, $row:expr, $col:expr, $value:expr) => {{
            let (r, row, col) = ($r, $row, $col);
            match $value {
                Some(v) => {
                    cols[r - 1][col].insert(row, v);
                    row_cols[r - 1][row].insert(col);
                    if is_unit(&multidegrees, r, row, col) {
                        units.insert((r, row, col));
                    }
                }
                None => {
                    cols[r - 1][col].remove(&row);
                    row_cols[r - 1][row].remove(&col);
                    units.remove(&(r, row, col));
                }
            }
        }};
    }

    while let Some(&(r, prow, pcol)) = match order {
        PivotOrder::Forward => units.iter().next(),
        PivotOrder::Reverse => units.iter().next_back(),
    } {
        let pivot = cols[r - 1][pcol][&prow].clone();
        let row_entries: Vec<(usize, BigRational)> = row_cols[r - 1][prow]
            .iter()
            .filter(|&&c| c != pcol)
            .map(|&c| (c, cols[r - 1][c][&prow].clone()))
            .collect();
        let col_entries: Vec<(usize, BigRational)> = cols[r - 1][pcol]
            .iter()
            .filter(|&(&row, _)| row != prow)
            .map(|(&row, v)| (row, v.clone()))
            .collect();
        for (c, b) in &row_entries {
            for (row, a) in &col_entries {
                let delta = a * b / &pivot;
                let current = cols[r - 1][*c].get(row).cloned().unwrap_or_else(BigRational::zero);
                let next = current - delta;
                if next.is_zero() {
                    set_entry!(r, *row, *c, None::<BigRational>);
                } else {
                    set_entry!(r, *row, *c, Some(next));
                }
            }
        }
        // Clear the pivot row and column in degree r.
        for (c, _) in row_entries {
            set_entry!(r, prow, c, None::<BigRational>);
        }
        for (row, _) in col_entries {
            set_entry!(r, row, pcol, None::<BigRational>);
        }
        set_entry!(r, prow, pcol, None::<BigRational>);
        // The cancelled basis elements disappear from the adjacent degrees.
        if r >= 2 {
            let rows_below: Vec<usize> = cols[r - 2][prow].keys().copied().collect();
            for row in rows_below {
                set_entry!(r - 1, row, prow, None::<BigRational>);
            }
        }
        if r < max_degree {
            let cols_above: Vec<usize> = row_cols[r][pcol].iter().copied().collect();
            for c in cols_above {
                set_entry!(r + 1, pcol, c, None::<BigRational>);
            }
        }
        alive[r][pcol] = false;
        alive[r - 1][prow] = false;
    }

    let mut table = BettiTable::new();
    for r in 0..=max_degree {
        for (i, &a) in alive[r].iter().enumerate() {
            if a {
                table.add(r, multidegrees[r][i].clone(), 1);
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::barile_macchia;
    use crate::morse::{betti_from_resolution, morse_resolution, taylor_resolution};
    use crate::order::TotalOrder;
    use crate::path_family::{cycle_ideal, path_ideal, polygon_support_complex, PathFamilySpec};
    use alloc::vec;

    fn faces_from(members: &[&[usize]]) -> BTreeSet<Cell> {
        members.iter().map(|m| Cell::from_members(m).unwrap()).collect()
    }

    #[test]
    fn field_validation() {
        assert_eq!(Field::from_characteristic(0).unwrap(), Field::Rationals);
        assert_eq!(Field::from_characteristic(32003).unwrap(), Field::Prime(32003));
        assert!(matches!(Field::from_characteristic(32001), Err(Error::NotAPrime(32001))));
    }

    #[test]
    fn triangle_boundary_is_a_circle() {
        // Vertices and edges of a triangle without the 2-face.
        let faces = faces_from(&[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3]]);
        let stack = BoundaryMatrixStack::from_faces(&faces).unwrap();
        assert!(stack.verify_composition());
        let ranks = reduced_homology_ranks(&stack, Field::Rationals).unwrap();
        // H̃_{−1} = 0, H̃_0 = 0, H̃_1 = 1.
        assert_eq!(ranks, vec![0, 0, 1]);
    }

    #[test]
    fn full_simplex_is_contractible() {
        let mut faces = BTreeSet::new();
        for mask in 0..(1u64 << 4) {
            faces.insert(Cell::from_mask(mask));
        }
        let stack = BoundaryMatrixStack::from_faces(&faces).unwrap();
        for field in [Field::Rationals, Field::Prime(2), Field::Prime(32003)] {
            let ranks = reduced_homology_ranks(&stack, field).unwrap();
            assert!(ranks.iter().all(|&r| r == 0), "{field:?}");
        }
    }

    #[test]
    fn stack_rejects_non_closed_face_sets() {
        let faces = faces_from(&[&[], &[1], &[1, 2]]);
        assert!(matches!(
            BoundaryMatrixStack::from_faces(&faces),
            Err(Error::InvalidComplex(_))
        ));
    }

    #[test]
    fn oracle_on_principal_ideal() {
        let ideal = path_ideal(3, 3).unwrap();
        let t = betti_oracle(&ideal, Guard::default(), Field::Rationals).unwrap();
        assert_eq!(t.totals(), vec![1, 1]);
    }

    #[test]
    fn oracle_on_small_path_ideal() {
        let ideal = path_ideal(2, 5).unwrap();
        let t = betti_oracle(&ideal, Guard::default(), Field::Rationals).unwrap();
        assert_eq!(t.totals(), vec![1, 4, 4, 1]);
        let graded = t.graded();
        assert_eq!(graded.get(2, 3), 3);
        assert_eq!(graded.get(2, 4), 1);
        assert_eq!(graded.get(3, 5), 1);
    }

    #[test]
    fn oracle_characteristics_agree_on_path_ideal() {
        let ideal = path_ideal(3, 8).unwrap();
        let q = betti_oracle(&ideal, Guard::default(), Field::Rationals).unwrap();
        let fp = betti_oracle(&ideal, Guard::default(), Field::Prime(32003)).unwrap();
        assert_eq!(q, fp);
    }

    #[test]
    fn oracle_on_nine_cycle_edge_ideal() {
        let ideal = cycle_ideal(2, 9).unwrap();
        let t = betti_oracle(&ideal, Guard::default(), Field::Rationals).unwrap();
        assert_eq!(t.pdim(), 6);
        assert_eq!(t.get(6, &Monomial::new(vec![1; 9])), 2);
    }

    #[test]
    fn polygon_support_complexes_pass_bps() {
        let path = PathFamilySpec::path(2, 5).unwrap();
        let complex = polygon_support_complex(&path).unwrap();
        let ideal = path.ideal().unwrap();
        assert!(bps_support_check(&ideal, &complex, Guard::default()).unwrap());

        let cycle = PathFamilySpec::cycle(2, 5).unwrap();
        let complex = polygon_support_complex(&cycle).unwrap();
        let ideal = cycle.ideal().unwrap();
        assert!(bps_support_check(&ideal, &complex, Guard::default()).unwrap());
    }

    #[test]
    fn broken_polygon_fails_bps() {
        let path = PathFamilySpec::path(2, 5).unwrap();
        let ideal = path.ideal().unwrap();
        let complex = polygon_support_complex(&path).unwrap();
        // Deleting one edge also removes the 2-cell whose boundary uses it;
        // the subcomplex at that edge's multidegree becomes two bare points.
        let edge_idx = complex
            .faces()
            .iter()
            .position(|f| f.dimension == 1)
            .expect("polygon has edges");
        let broken = complex.remove_face(edge_idx).unwrap();
        assert!(!bps_support_check(&ideal, &broken, Guard::default()).unwrap());
    }

    #[test]
    fn pruning_leaves_minimal_resolutions_alone() {
        let ideal = path_ideal(2, 5).unwrap();
        let order = TotalOrder::standard(4);
        let matching = barile_macchia(&ideal, &order, Guard::default()).unwrap();
        let res = morse_resolution(&ideal, &matching, Guard::default()).unwrap();
        let direct = betti_from_resolution(&res).unwrap();
        let pruned = minimalize_by_pruning(&res).unwrap();
        assert_eq!(direct, pruned);
    }

    #[test]
    fn pruning_taylor_of_small_path_ideal() {
        let ideal = path_ideal(2, 5).unwrap();
        let res = taylor_resolution(&ideal, Guard::default()).unwrap();
        let pruned = minimalize_by_pruning(&res).unwrap();
        assert_eq!(pruned.totals(), vec![1, 4, 4, 1]);
    }

    #[test]
    fn pruning_agrees_with_oracle_and_is_order_independent() {
        let ideal = cycle_ideal(2, 5).unwrap();
        let res = taylor_resolution(&ideal, Guard::default()).unwrap();
        let forward = minimalize_by_pruning_with(&res, PivotOrder::Forward).unwrap();
        let reverse = minimalize_by_pruning_with(&res, PivotOrder::Reverse).unwrap();
        let oracle = betti_oracle(&ideal, Guard::default(), Field::Rationals).unwrap();
        assert_eq!(forward, reverse);
        assert_eq!(forward, oracle);
    }
}

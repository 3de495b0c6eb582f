//! The catalog of concrete projectors with closed forms: sum-constraint
//! hyperplanes over index selections, rank-matching permutation multisets,
//! fixed-entry masks, fixed-count binary floors, prefix-of-ones pillars,
//! standard-basis nearest vectors, and general affine hyperplanes.
//!
//! Every set-valued tie is broken the same way: among equally near members,
//! the earlier reading-order position receives the larger value (equivalently,
//! the lexicographically greatest minimizer wins). This keeps all projections
//! single-valued and deterministic.

use crate::error::Error;
use crate::point::{Point, Shape};
use crate::projector::Projector;

/// Ordered, distinct coordinate positions within a point of a given shape.
#[derive(Debug, Clone)]
pub struct IndexSelection {
    indices: Vec<usize>,
}

impl IndexSelection {
    /// Validates distinctness and range against `shape`.
    pub fn new(indices: Vec<usize>, shape: Shape) -> Result<Self, Error> {
        let len = shape.len();
        let mut seen = vec![false; len];
        for &i in &indices {
            if i >= len {
                return Err(Error::InvalidSelection(format!(
                    "index {i} out of range for shape {shape}"
                )));
            }
            if seen[i] {
                return Err(Error::InvalidSelection(format!("duplicate index {i}")));
            }
            seen[i] = true;
        }
        Ok(IndexSelection { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Every coordinate of `shape`, in reading order.
    pub fn all(shape: Shape) -> Self {
        IndexSelection {
            indices: (0..shape.len()).collect(),
        }
    }

    /// Row `i` of an `n x n` matrix.
    pub fn matrix_row(n: usize, i: usize) -> Self {
        assert!(i < n);
        IndexSelection {
            indices: (0..n).map(|j| i * n + j).collect(),
        }
    }

    /// Column `j` of an `n x n` matrix.
    pub fn matrix_col(n: usize, j: usize) -> Self {
        assert!(j < n);
        IndexSelection {
            indices: (0..n).map(|i| i * n + j).collect(),
        }
    }

    /// Main diagonal of an `n x n` matrix.
    pub fn matrix_diag(n: usize) -> Self {
        IndexSelection {
            indices: (0..n).map(|i| i * n + i).collect(),
        }
    }

    /// Anti-diagonal of an `n x n` matrix (entries `(i, n-1-i)`).
    pub fn matrix_anti_diag(n: usize) -> Self {
        IndexSelection {
            indices: (0..n).map(|i| i * n + (n - 1 - i)).collect(),
        }
    }

    /// All of slab `(i, :, :)` of an `n x n x depth` cube.
    pub fn cube_row_slab(n: usize, depth: usize, i: usize) -> Self {
        assert!(i < n);
        let shape = Shape::Cube { n, depth };
        IndexSelection {
            indices: (0..n)
                .flat_map(|j| (0..depth).map(move |k| shape.idx3(i, j, k)))
                .collect(),
        }
    }

    /// All of slab `(:, j, :)`.
    pub fn cube_col_slab(n: usize, depth: usize, j: usize) -> Self {
        assert!(j < n);
        let shape = Shape::Cube { n, depth };
        IndexSelection {
            indices: (0..n)
                .flat_map(|i| (0..depth).map(move |k| shape.idx3(i, j, k)))
                .collect(),
        }
    }

    /// The diagonal slab `(i, i, :)` for all `i`.
    pub fn cube_diag_slab(n: usize, depth: usize) -> Self {
        let shape = Shape::Cube { n, depth };
        IndexSelection {
            indices: (0..n)
                .flat_map(|i| (0..depth).map(move |k| shape.idx3(i, i, k)))
                .collect(),
        }
    }

    /// The anti-diagonal slab `(i, n-1-i, :)` for all `i`.
    pub fn cube_anti_diag_slab(n: usize, depth: usize) -> Self {
        let shape = Shape::Cube { n, depth };
        IndexSelection {
            indices: (0..n)
                .flat_map(|i| (0..depth).map(move |k| shape.idx3(i, n - 1 - i, k)))
                .collect(),
        }
    }

    /// Pillar `(i, j, :)` of a cube.
    pub fn cube_pillar(n: usize, depth: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n);
        let shape = Shape::Cube { n, depth };
        IndexSelection {
            indices: (0..depth).map(|k| shape.idx3(i, j, k)).collect(),
        }
    }

    /// Floor `(:, :, k)` of a cube, in reading order over `(i, j)`.
    pub fn cube_floor(n: usize, depth: usize, k: usize) -> Self {
        assert!(k < depth);
        let shape = Shape::Cube { n, depth };
        IndexSelection {
            indices: (0..n)
                .flat_map(|i| (0..n).map(move |j| shape.idx3(i, j, k)))
                .collect(),
        }
    }
}

/// A fixed collection of real values, with multiplicity.
#[derive(Debug, Clone)]
pub struct Multiset {
    sorted_desc: Vec<f64>,
}

impl Multiset {
    pub fn new(mut values: Vec<f64>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::InvalidMultiset("must hold at least one value".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMultiset("values must be finite".into()));
        }
        values.sort_unstable_by(|a, b| b.total_cmp(a));
        Ok(Multiset {
            sorted_desc: values,
        })
    }

    /// The multiset `{1, 2, ..., m}`.
    pub fn one_to(m: usize) -> Self {
        Multiset {
            sorted_desc: (1..=m).rev().map(|v| v as f64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sorted_desc.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Values in descending order.
    pub fn values_desc(&self) -> &[f64] {
        &self.sorted_desc
    }
}

/// `(position, required value)` pairs pinning coordinates of a point.
#[derive(Debug, Clone)]
pub struct PrefillMask {
    entries: Vec<(usize, f64)>,
}

impl PrefillMask {
    /// Validates distinct, in-range positions. An empty mask is the identity.
    pub fn new(entries: Vec<(usize, f64)>, shape: Shape) -> Result<Self, Error> {
        let len = shape.len();
        let mut seen = vec![false; len];
        for &(pos, _) in &entries {
            if pos >= len {
                return Err(Error::InvalidSelection(format!(
                    "mask position {pos} out of range for shape {shape}"
                )));
            }
            if seen[pos] {
                return Err(Error::InvalidSelection(format!(
                    "duplicate mask position {pos}"
                )));
            }
            seen[pos] = true;
        }
        Ok(PrefillMask { entries })
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

// ---------------------------------------------------------------------------
// slice-level projections
// ---------------------------------------------------------------------------

fn sum_shift(data: &mut [f64], indices: &[usize], target: f64) {
    let sum: f64 = indices.iter().map(|&i| data[i]).sum();
    let shift = (target - sum) / indices.len() as f64;
    for &i in indices {
        data[i] += shift;
    }
}

/// Ranks `0..len` by `(value descending, position ascending)`. The position
/// tie-break realizes "earlier reading-order position gets the larger value".
fn ranked_positions(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    order
}

fn rank_match(values_desc: &[f64], slice: &mut [f64]) {
    debug_assert_eq!(values_desc.len(), slice.len());
    let order = ranked_positions(slice);
    for (rank, &pos) in order.iter().enumerate() {
        slice[pos] = values_desc[rank];
    }
}

fn basis_match(slice: &mut [f64]) {
    if slice.is_empty() {
        return;
    }
    let mut best = 0;
    for (i, &v) in slice.iter().enumerate().skip(1) {
        if v > slice[best] {
            best = i;
        }
    }
    for v in slice.iter_mut() {
        *v = 0.0;
    }
    slice[best] = 1.0;
}

/// Index of the best prefix length `t` in `1..=m` minimizing the squared
/// distance of `pillar` to `[1; t] ++ [0; m-t]`, preferring longer prefixes
/// on ties. Works off the telescoped distance `d^2(t) = C + sum_{k<t}(1-2x_k)`.
fn best_prefix_len(pillar: &[f64]) -> usize {
    let mut acc = 0.0;
    let mut best = f64::INFINITY;
    let mut best_t = 1;
    for (k, &v) in pillar.iter().enumerate() {
        acc += 1.0 - 2.0 * v;
        if acc <= best {
            best = acc;
            best_t = k + 1;
        }
    }
    best_t
}

// ---------------------------------------------------------------------------
// spec-level operations
// ---------------------------------------------------------------------------

/// Shifts the selected coordinates uniformly so that they sum to `c`; all
/// other coordinates are untouched.
pub fn project_sum_hyperplane(
    sel: &IndexSelection,
    c: f64,
    x: &Point,
) -> Result<Point, Error> {
    if sel.is_empty() {
        return Err(Error::EmptySelection);
    }
    if let Some(&max) = sel.indices().iter().max() {
        if max >= x.len() {
            return Err(Error::InvalidSelection(format!(
                "index {max} out of range for shape {}",
                x.shape()
            )));
        }
    }
    let mut y = x.clone();
    sum_shift(y.data_mut(), sel.indices(), c);
    Ok(y)
}

/// Nearest rearrangement of the multiset: the i-th largest value lands at the
/// position of the i-th largest entry, ties by earlier position.
pub fn project_permutation(vals: &Multiset, slice: &[f64]) -> Result<Vec<f64>, Error> {
    if slice.len() != vals.len() {
        return Err(Error::SliceLength {
            expected: vals.len(),
            len: slice.len(),
        });
    }
    let mut out = slice.to_vec();
    rank_match(vals.values_desc(), &mut out);
    Ok(out)
}

/// Pins the masked coordinates to their required values.
pub fn project_fixed_entries(mask: &PrefillMask, x: &Point) -> Point {
    let mut y = x.clone();
    for &(pos, v) in mask.entries() {
        y.data_mut()[pos] = v;
    }
    y
}

/// Independently per floor `k` of an `n x n x n^2` cube, zeroes the `k`
/// smallest entries (0-based `k`) and sets the rest to one, so floor `k`
/// holds exactly `n^2 - k` ones. Ties keep the one at the earlier position.
pub fn project_floor_counts(n: usize, x: &Point) -> Result<Point, Error> {
    let shape = Shape::Cube { n, depth: n * n };
    if x.shape() != shape {
        return Err(Error::ShapeMismatch {
            expected: shape,
            actual: x.shape(),
        });
    }
    let mut y = x.clone();
    floor_counts_in_place(n, &mut y);
    Ok(y)
}

fn floor_counts_in_place(n: usize, x: &mut Point) {
    let depth = n * n;
    let shape = x.shape();
    let data = x.data_mut();
    let mut values = vec![0.0; n * n];
    for k in 0..depth {
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = data[shape.idx3(i, j, k)];
            }
        }
        let order = ranked_positions(&values);
        let ones = depth - k;
        for (rank, &pos) in order.iter().enumerate() {
            let (i, j) = (pos / n, pos % n);
            data[shape.idx3(i, j, k)] = if rank < ones { 1.0 } else { 0.0 };
        }
    }
}

/// Replaces each pillar `(i, j, :)` of an `n x n x n^2` cube by the nearest
/// prefix-of-ones vector with at least one leading one, preferring the longer
/// prefix on ties.
pub fn project_pillars(n: usize, x: &Point) -> Result<Point, Error> {
    let shape = Shape::Cube { n, depth: n * n };
    if x.shape() != shape {
        return Err(Error::ShapeMismatch {
            expected: shape,
            actual: x.shape(),
        });
    }
    let mut y = x.clone();
    pillars_in_place(n, &mut y);
    Ok(y)
}

fn pillars_in_place(n: usize, x: &mut Point) {
    let depth = n * n;
    let data = x.data_mut();
    for pillar in data.chunks_mut(depth) {
        let t = best_prefix_len(pillar);
        for (k, v) in pillar.iter_mut().enumerate() {
            *v = if k < t { 1.0 } else { 0.0 };
        }
    }
}

/// Nearest standard basis vector: the one at the position of the maximum
/// entry, ties to the lowest index.
pub fn project_basis(slice: &[f64]) -> Vec<f64> {
    let mut out = slice.to_vec();
    basis_match(&mut out);
    out
}

// ---------------------------------------------------------------------------
// projector catalog
// ---------------------------------------------------------------------------

fn check_disjoint(selections: &[IndexSelection], shape: Shape) -> Result<(), Error> {
    let mut seen = vec![false; shape.len()];
    for sel in selections {
        for &i in sel.indices() {
            if i >= shape.len() {
                return Err(Error::InvalidSelection(format!(
                    "index {i} out of range for shape {shape}"
                )));
            }
            if seen[i] {
                return Err(Error::InvalidSelection(format!(
                    "selections overlap at index {i}"
                )));
            }
            seen[i] = true;
        }
    }
    Ok(())
}

/// One or more disjoint selections, each shifted to meet a common target sum.
/// Because the selections are disjoint, projecting them simultaneously is the
/// exact projection onto the intersection of the individual hyperplanes.
pub struct SumProjector {
    label: String,
    domain: Shape,
    selections: Vec<IndexSelection>,
    target: f64,
}

impl SumProjector {
    pub fn new(
        label: impl Into<String>,
        domain: Shape,
        selections: Vec<IndexSelection>,
        target: f64,
    ) -> Result<Self, Error> {
        if selections.is_empty() || selections.iter().any(IndexSelection::is_empty) {
            return Err(Error::EmptySelection);
        }
        check_disjoint(&selections, domain)?;
        Ok(SumProjector {
            label: label.into(),
            domain,
            selections,
            target,
        })
    }

    pub fn target(&self) -> f64 {
        self.target
    }
}

impl Projector for SumProjector {
    fn label(&self) -> &str {
        &self.label
    }

    fn domain(&self) -> Shape {
        self.domain
    }

    fn project_in_place(&self, x: &mut Point) {
        for sel in &self.selections {
            sum_shift(x.data_mut(), sel.indices(), self.target);
        }
    }
}

/// Disjoint selections, each rank-matched to the same multiset.
pub struct RankProjector {
    label: String,
    domain: Shape,
    selections: Vec<IndexSelection>,
    multiset: Multiset,
}

impl RankProjector {
    pub fn new(
        label: impl Into<String>,
        domain: Shape,
        selections: Vec<IndexSelection>,
        multiset: Multiset,
    ) -> Result<Self, Error> {
        if selections.is_empty() {
            return Err(Error::EmptySelection);
        }
        for sel in &selections {
            if sel.len() != multiset.len() {
                return Err(Error::SliceLength {
                    expected: multiset.len(),
                    len: sel.len(),
                });
            }
        }
        check_disjoint(&selections, domain)?;
        Ok(RankProjector {
            label: label.into(),
            domain,
            selections,
            multiset,
        })
    }
}

impl Projector for RankProjector {
    fn label(&self) -> &str {
        &self.label
    }

    fn domain(&self) -> Shape {
        self.domain
    }

    fn project_in_place(&self, x: &mut Point) {
        let data = x.data_mut();
        let mut slice = vec![0.0; self.multiset.len()];
        for sel in &self.selections {
            for (s, &i) in slice.iter_mut().zip(sel.indices()) {
                *s = data[i];
            }
            rank_match(self.multiset.values_desc(), &mut slice);
            for (&s, &i) in slice.iter().zip(sel.indices()) {
                data[i] = s;
            }
        }
    }
}

/// Disjoint selections, each snapped to the nearest standard basis vector.
pub struct BasisProjector {
    label: String,
    domain: Shape,
    selections: Vec<IndexSelection>,
}

impl BasisProjector {
    pub fn new(
        label: impl Into<String>,
        domain: Shape,
        selections: Vec<IndexSelection>,
    ) -> Result<Self, Error> {
        if selections.is_empty() || selections.iter().any(IndexSelection::is_empty) {
            return Err(Error::EmptySelection);
        }
        check_disjoint(&selections, domain)?;
        Ok(BasisProjector {
            label: label.into(),
            domain,
            selections,
        })
    }
}

impl Projector for BasisProjector {
    fn label(&self) -> &str {
        &self.label
    }

    fn domain(&self) -> Shape {
        self.domain
    }

    fn project_in_place(&self, x: &mut Point) {
        let data = x.data_mut();
        for sel in &self.selections {
            let indices = sel.indices();
            let mut best = 0;
            for (r, &i) in indices.iter().enumerate().skip(1) {
                if data[i] > data[indices[best]] {
                    best = r;
                }
            }
            for (r, &i) in indices.iter().enumerate() {
                data[i] = if r == best { 1.0 } else { 0.0 };
            }
        }
    }
}

/// Pins masked coordinates to fixed values; everything else passes through.
pub struct MaskProjector {
    label: String,
    domain: Shape,
    mask: PrefillMask,
}

impl MaskProjector {
    pub fn new(label: impl Into<String>, domain: Shape, mask: PrefillMask) -> Self {
        MaskProjector {
            label: label.into(),
            domain,
            mask,
        }
    }
}

impl Projector for MaskProjector {
    fn label(&self) -> &str {
        &self.label
    }

    fn domain(&self) -> Shape {
        self.domain
    }

    fn project_in_place(&self, x: &mut Point) {
        let data = x.data_mut();
        for &(pos, v) in self.mask.entries() {
            data[pos] = v;
        }
    }
}

/// Per-floor fixed counts of ones for an `n x n x n^2` cube.
pub struct FloorCountProjector {
    n: usize,
}

impl FloorCountProjector {
    pub fn new(n: usize) -> Self {
        FloorCountProjector { n }
    }
}

impl Projector for FloorCountProjector {
    fn label(&self) -> &str {
        "floor-counts"
    }

    fn domain(&self) -> Shape {
        Shape::Cube {
            n: self.n,
            depth: self.n * self.n,
        }
    }

    fn project_in_place(&self, x: &mut Point) {
        floor_counts_in_place(self.n, x);
    }
}

/// Prefix-of-ones pillars for an `n x n x n^2` cube.
pub struct PillarProjector {
    n: usize,
}

impl PillarProjector {
    pub fn new(n: usize) -> Self {
        PillarProjector { n }
    }
}

impl Projector for PillarProjector {
    fn label(&self) -> &str {
        "pillars"
    }

    fn domain(&self) -> Shape {
        Shape::Cube {
            n: self.n,
            depth: self.n * self.n,
        }
    }

    fn project_in_place(&self, x: &mut Point) {
        pillars_in_place(self.n, x);
    }
}

/// General affine hyperplane `{x : <a, x> = b}` with nonzero normal `a`.
pub struct Hyperplane {
    label: String,
    normal: Point,
    offset: f64,
    inv_norm_sq: f64,
}

impl Hyperplane {
    pub fn new(label: impl Into<String>, normal: Point, offset: f64) -> Result<Self, Error> {
        if !normal.is_finite() || !offset.is_finite() {
            return Err(Error::NonFinite);
        }
        let norm_sq: f64 = normal.data().iter().map(|v| v * v).sum();
        if norm_sq == 0.0 {
            return Err(Error::InvalidSelection("hyperplane normal is zero".into()));
        }
        Ok(Hyperplane {
            label: label.into(),
            inv_norm_sq: 1.0 / norm_sq,
            normal,
            offset,
        })
    }
}

impl Projector for Hyperplane {
    fn label(&self) -> &str {
        &self.label
    }

    fn domain(&self) -> Shape {
        self.normal.shape()
    }

    fn project_in_place(&self, x: &mut Point) {
        let dot: f64 = self
            .normal
            .data()
            .iter()
            .zip(x.data())
            .map(|(a, v)| a * v)
            .sum();
        let step = (self.offset - dot) * self.inv_norm_sq;
        for (v, a) in x.data_mut().iter_mut().zip(self.normal.data()) {
            *v += step * a;
        }
    }
}

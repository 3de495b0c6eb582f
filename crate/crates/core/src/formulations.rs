//! Turnkey constraint bundles for the four problem families: magic squares
//! (integer and binary pillar encodings, with optional completion) and Sudoku
//! (integer and binary one-hot encodings), plus exact verifiers and the grid
//! file format.

use serde::{Deserialize, Serialize};

use crate::constraints::{
    BasisProjector, FloorCountProjector, IndexSelection, MaskProjector, Multiset, PillarProjector,
    PrefillMask, RankProjector, SumProjector,
};
use crate::error::Error;
use crate::point::{Point, Shape};
use crate::projector::Projector;

/// An `n x n` integer grid; `0` marks a blank cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntGrid {
    n: usize,
    cells: Vec<i64>,
}

impl IntGrid {
    /// Validates `0 <= cell <= n^2`.
    pub fn new(n: usize, cells: Vec<i64>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidGrid("order must be at least 1".into()));
        }
        if cells.len() != n * n {
            return Err(Error::InvalidGrid(format!(
                "expected {} cells for order {n}, got {}",
                n * n,
                cells.len()
            )));
        }
        let max = (n * n) as i64;
        for &c in &cells {
            if c < 0 || c > max {
                return Err(Error::InvalidGrid(format!(
                    "cell value {c} outside 0..={max}"
                )));
            }
        }
        Ok(IntGrid { n, cells })
    }

    pub fn blank(n: usize) -> Self {
        IntGrid {
            n,
            cells: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[i64] {
        &self.cells
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cells[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.cells[i * self.n + j] = v;
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|&c| c != 0)
    }
}

/// The magic constant `n (n^2 + 1) / 2`.
pub fn magic_constant(n: usize) -> i64 {
    let n = n as i64;
    n * (n * n + 1) / 2
}

/// Exactly checks a complete grid for magicness: entries are `1..=n^2` with
/// no repeats and every row, column, and both main diagonals sum to the magic
/// constant. A blank cell is an error, not a failure.
pub fn verify_magic(g: &IntGrid) -> Result<bool, Error> {
    if !g.is_complete() {
        return Err(Error::IncompleteGrid);
    }
    let n = g.n();
    let mut seen = vec![false; n * n + 1];
    for &c in g.cells() {
        if c < 1 || c > (n * n) as i64 || seen[c as usize] {
            return Ok(false);
        }
        seen[c as usize] = true;
    }
    let c = magic_constant(n);
    for i in 0..n {
        if (0..n).map(|j| g.get(i, j)).sum::<i64>() != c {
            return Ok(false);
        }
        if (0..n).map(|j| g.get(j, i)).sum::<i64>() != c {
            return Ok(false);
        }
    }
    if (0..n).map(|i| g.get(i, i)).sum::<i64>() != c {
        return Ok(false);
    }
    if (0..n).map(|i| g.get(i, n - 1 - i)).sum::<i64>() != c {
        return Ok(false);
    }
    Ok(true)
}

/// Exactly checks a complete 9x9 grid: every row, column, and 3x3 subgrid
/// holds the digits 1 through 9 once each.
pub fn verify_sudoku(g: &IntGrid) -> Result<bool, Error> {
    if g.n() != 9 {
        return Err(Error::InvalidGrid(format!(
            "sudoku grids have order 9, got {}",
            g.n()
        )));
    }
    if !g.is_complete() {
        return Err(Error::IncompleteGrid);
    }
    let digits = |cells: &mut dyn Iterator<Item = i64>| -> bool {
        let mut seen = [false; 10];
        for c in cells {
            if !(1..=9).contains(&c) || seen[c as usize] {
                return false;
            }
            seen[c as usize] = true;
        }
        true
    };
    for i in 0..9 {
        if !digits(&mut (0..9).map(|j| g.get(i, j))) {
            return Ok(false);
        }
        if !digits(&mut (0..9).map(|j| g.get(j, i))) {
            return Ok(false);
        }
    }
    for bi in 0..3 {
        for bj in 0..3 {
            if !digits(&mut (0..9).map(|t| g.get(bi * 3 + t / 3, bj * 3 + t % 3))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which of the four problem families a [`Formulation`] encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulationKind {
    MagicInteger,
    MagicBinary,
    SudokuInteger,
    SudokuBinary,
}

/// A named constraint bundle: the projector list, the point shape, the
/// encode/decode maps between integer grids and solver points, and the exact
/// verifier. Immutable once built and safe to share across threads.
pub struct Formulation {
    kind: FormulationKind,
    n: usize,
    shape: Shape,
    sets: Vec<Box<dyn Projector>>,
    prefill: Option<IntGrid>,
}

impl Formulation {
    pub fn kind(&self) -> FormulationKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            FormulationKind::MagicInteger => "magic-int",
            FormulationKind::MagicBinary => "magic-bin",
            FormulationKind::SudokuInteger => "sudoku-int",
            FormulationKind::SudokuBinary => "sudoku-bin",
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn sets(&self) -> &[Box<dyn Projector>] {
        &self.sets
    }

    pub fn into_sets(self) -> Vec<Box<dyn Projector>> {
        self.sets
    }

    pub fn prefill(&self) -> Option<&IntGrid> {
        self.prefill.as_ref()
    }

    /// Maps a grid to a solver point. Blank cells encode as zero.
    pub fn encode(&self, g: &IntGrid) -> Result<Point, Error> {
        if g.n() != self.n {
            return Err(Error::InvalidGrid(format!(
                "grid order {} does not match formulation order {}",
                g.n(),
                self.n
            )));
        }
        let mut p = Point::zeros(self.shape);
        match self.kind {
            FormulationKind::MagicInteger | FormulationKind::SudokuInteger => {
                for (v, &c) in p.data_mut().iter_mut().zip(g.cells()) {
                    *v = c as f64;
                }
            }
            FormulationKind::MagicBinary => {
                // pillar encoding: B[i][j][k] = 1 iff A[i][j] >= k+1
                let depth = self.n * self.n;
                for (pillar, &c) in p.data_mut().chunks_mut(depth).zip(g.cells()) {
                    for (k, v) in pillar.iter_mut().enumerate() {
                        *v = if c >= (k + 1) as i64 { 1.0 } else { 0.0 };
                    }
                }
            }
            FormulationKind::SudokuBinary => {
                // one-hot encoding: B[i][j][k] = 1 iff A[i][j] = k+1
                for (pillar, &c) in p.data_mut().chunks_mut(9).zip(g.cells()) {
                    if c >= 1 {
                        pillar[(c - 1) as usize] = 1.0;
                    }
                }
            }
        }
        Ok(p)
    }

    /// Maps a solver point back to an integer grid. Values are clamped into
    /// the grid's legal range so that near-feasible iterates always decode;
    /// verification stays exact and is unaffected.
    pub fn decode(&self, p: &Point) -> IntGrid {
        let n = self.n;
        let mut grid = IntGrid::blank(n);
        match self.kind {
            FormulationKind::MagicInteger | FormulationKind::SudokuInteger => {
                let hi = if self.kind == FormulationKind::MagicInteger {
                    (n * n) as i64
                } else {
                    9
                };
                for (cell, &v) in grid.cells.iter_mut().zip(p.data()) {
                    *cell = (v.round() as i64).clamp(0, hi);
                }
            }
            FormulationKind::MagicBinary => {
                let depth = n * n;
                for (cell, pillar) in grid.cells.iter_mut().zip(p.data().chunks(depth)) {
                    let sum: f64 = pillar.iter().sum();
                    *cell = (sum.round() as i64).clamp(1, depth as i64);
                }
            }
            FormulationKind::SudokuBinary => {
                for (cell, pillar) in grid.cells.iter_mut().zip(p.data().chunks(9)) {
                    let mut best = 0;
                    for (k, &v) in pillar.iter().enumerate().skip(1) {
                        if v > pillar[best] {
                            best = k;
                        }
                    }
                    *cell = (best + 1) as i64;
                }
            }
        }
        grid
    }

    /// Exact integer verification, including agreement with any prefill.
    pub fn verify(&self, g: &IntGrid) -> bool {
        let sound = match self.kind {
            FormulationKind::MagicInteger | FormulationKind::MagicBinary => {
                verify_magic(g).unwrap_or(false)
            }
            FormulationKind::SudokuInteger | FormulationKind::SudokuBinary => {
                verify_sudoku(g).unwrap_or(false)
            }
        };
        if !sound {
            return false;
        }
        match &self.prefill {
            None => true,
            Some(pre) => pre
                .cells()
                .iter()
                .zip(g.cells())
                .all(|(&want, &got)| want == 0 || want == got),
        }
    }
}

fn check_magic_order(n: usize) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::InvalidGrid("order must be at least 1".into()));
    }
    if n == 2 {
        return Err(Error::InfeasibleOrder);
    }
    Ok(())
}

/// Validated `(i, j, value)` list of the filled cells of a magic prefill.
fn magic_prefill_entries(n: usize, prefill: &IntGrid) -> Result<Vec<(usize, usize, i64)>, Error> {
    if prefill.n() != n {
        return Err(Error::InvalidPrefill(format!(
            "prefill order {} does not match {n}",
            prefill.n()
        )));
    }
    let max = (n * n) as i64;
    let mut seen = vec![false; n * n + 1];
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = prefill.get(i, j);
            if v == 0 {
                continue;
            }
            if v < 1 || v > max {
                return Err(Error::InvalidPrefill(format!(
                    "value {v} at ({i}, {j}) outside 1..={max}"
                )));
            }
            if seen[v as usize] {
                return Err(Error::InvalidPrefill(format!("value {v} appears twice")));
            }
            seen[v as usize] = true;
            entries.push((i, j, v));
        }
    }
    Ok(entries)
}

/// The integer magic-square formulation: row sums, column sums, both diagonal
/// sums, and the permutation constraint over `{1, ..., n^2}`; a sixth
/// fixed-entry set when a prefill is supplied.
pub fn build_magic_integer(n: usize, prefill: Option<&IntGrid>) -> Result<Formulation, Error> {
    check_magic_order(n)?;
    let shape = Shape::Matrix(n);
    let c = magic_constant(n) as f64;
    let mut sets: Vec<Box<dyn Projector>> = vec![
        Box::new(SumProjector::new(
            "row-sums",
            shape,
            (0..n).map(|i| IndexSelection::matrix_row(n, i)).collect(),
            c,
        )?),
        Box::new(SumProjector::new(
            "column-sums",
            shape,
            (0..n).map(|j| IndexSelection::matrix_col(n, j)).collect(),
            c,
        )?),
        Box::new(SumProjector::new(
            "diagonal-sum",
            shape,
            vec![IndexSelection::matrix_diag(n)],
            c,
        )?),
        Box::new(SumProjector::new(
            "anti-diagonal-sum",
            shape,
            vec![IndexSelection::matrix_anti_diag(n)],
            c,
        )?),
        Box::new(RankProjector::new(
            "permutation",
            shape,
            vec![IndexSelection::all(shape)],
            Multiset::one_to(n * n),
        )?),
    ];
    let prefill = match prefill {
        None => None,
        Some(pre) => {
            let entries = magic_prefill_entries(n, pre)?;
            let mask = PrefillMask::new(
                entries
                    .iter()
                    .map(|&(i, j, v)| (shape.idx2(i, j), v as f64))
                    .collect(),
                shape,
            )?;
            sets.push(Box::new(MaskProjector::new("prefill", shape, mask)));
            Some(pre.clone())
        }
    };
    Ok(Formulation {
        kind: FormulationKind::MagicInteger,
        n,
        shape,
        sets,
        prefill,
    })
}

/// The binary pillar formulation of a magic square over an `n x n x n^2`
/// zero-one cube: four slab-sum sets, per-floor one counts, and
/// prefix-of-ones pillars; a seventh fixed-entry set when a prefill is
/// supplied (a prefilled value `v` pins its pillar to `v` leading ones).
pub fn build_magic_binary(n: usize, prefill: Option<&IntGrid>) -> Result<Formulation, Error> {
    check_magic_order(n)?;
    let depth = n * n;
    let shape = Shape::Cube { n, depth };
    let c = magic_constant(n) as f64;
    let mut sets: Vec<Box<dyn Projector>> = vec![
        Box::new(SumProjector::new(
            "row-slab-sums",
            shape,
            (0..n)
                .map(|i| IndexSelection::cube_row_slab(n, depth, i))
                .collect(),
            c,
        )?),
        Box::new(SumProjector::new(
            "column-slab-sums",
            shape,
            (0..n)
                .map(|j| IndexSelection::cube_col_slab(n, depth, j))
                .collect(),
            c,
        )?),
        Box::new(SumProjector::new(
            "diagonal-slab-sum",
            shape,
            vec![IndexSelection::cube_diag_slab(n, depth)],
            c,
        )?),
        Box::new(SumProjector::new(
            "anti-diagonal-slab-sum",
            shape,
            vec![IndexSelection::cube_anti_diag_slab(n, depth)],
            c,
        )?),
        Box::new(FloorCountProjector::new(n)),
        Box::new(PillarProjector::new(n)),
    ];
    let prefill = match prefill {
        None => None,
        Some(pre) => {
            let entries = magic_prefill_entries(n, pre)?;
            let mut mask_entries = Vec::new();
            for (i, j, v) in entries {
                for k in 0..depth {
                    let bit = if (k + 1) as i64 <= v { 1.0 } else { 0.0 };
                    mask_entries.push((shape.idx3(i, j, k), bit));
                }
            }
            let mask = PrefillMask::new(mask_entries, shape)?;
            sets.push(Box::new(MaskProjector::new("prefill", shape, mask)));
            Some(pre.clone())
        }
    };
    Ok(Formulation {
        kind: FormulationKind::MagicBinary,
        n,
        shape,
        sets,
        prefill,
    })
}

/// Validated `(i, j, value)` clue list for a Sudoku grid; rejects values
/// outside `0..=9` and duplicates within a row, column, or subgrid.
fn sudoku_clue_entries(s: &IntGrid) -> Result<Vec<(usize, usize, i64)>, Error> {
    if s.n() != 9 {
        return Err(Error::InvalidPuzzle(format!(
            "sudoku grids have order 9, got {}",
            s.n()
        )));
    }
    let mut entries = Vec::new();
    let mut rows = [[false; 10]; 9];
    let mut cols = [[false; 10]; 9];
    let mut boxes = [[false; 10]; 9];
    for i in 0..9 {
        for j in 0..9 {
            let v = s.get(i, j);
            if v == 0 {
                continue;
            }
            if !(1..=9).contains(&v) {
                return Err(Error::InvalidPuzzle(format!(
                    "clue {v} at ({i}, {j}) outside 1..=9"
                )));
            }
            let b = (i / 3) * 3 + j / 3;
            let d = v as usize;
            if rows[i][d] || cols[j][d] || boxes[b][d] {
                return Err(Error::InvalidPuzzle(format!(
                    "clue {v} at ({i}, {j}) conflicts with another clue"
                )));
            }
            rows[i][d] = true;
            cols[j][d] = true;
            boxes[b][d] = true;
            entries.push((i, j, v));
        }
    }
    Ok(entries)
}

/// Column-major reading of subgrid `(bi, bj)` of a 9x9 matrix.
fn subgrid_selection(shape: Shape, bi: usize, bj: usize) -> IndexSelection {
    let mut indices = Vec::with_capacity(9);
    for dj in 0..3 {
        for di in 0..3 {
            indices.push(shape.idx2(bi * 3 + di, bj * 3 + dj));
        }
    }
    IndexSelection::new(indices, shape).expect("subgrid indices are valid")
}

/// The integer Sudoku formulation: rows, columns, and subgrids each
/// rank-matched to permutations of `1..=9`, plus the clue mask.
pub fn build_sudoku_integer(s: &IntGrid) -> Result<Formulation, Error> {
    let entries = sudoku_clue_entries(s)?;
    let shape = Shape::Matrix(9);
    let digits = Multiset::one_to(9);
    let mut blocks = Vec::new();
    for bi in 0..3 {
        for bj in 0..3 {
            blocks.push(subgrid_selection(shape, bi, bj));
        }
    }
    let mask = PrefillMask::new(
        entries
            .iter()
            .map(|&(i, j, v)| (shape.idx2(i, j), v as f64))
            .collect(),
        shape,
    )?;
    let sets: Vec<Box<dyn Projector>> = vec![
        Box::new(RankProjector::new(
            "rows",
            shape,
            (0..9).map(|i| IndexSelection::matrix_row(9, i)).collect(),
            digits.clone(),
        )?),
        Box::new(RankProjector::new(
            "columns",
            shape,
            (0..9).map(|j| IndexSelection::matrix_col(9, j)).collect(),
            digits.clone(),
        )?),
        Box::new(RankProjector::new("subgrids", shape, blocks, digits)?),
        Box::new(MaskProjector::new("clues", shape, mask)),
    ];
    Ok(Formulation {
        kind: FormulationKind::SudokuInteger,
        n: 9,
        shape,
        sets,
        prefill: Some(s.clone()),
    })
}

/// The binary Sudoku formulation over a 9x9x9 one-hot cube: basis constraints
/// along rows, columns, and subgrids per digit, the clue mask, and basis
/// constraints along cell pillars.
pub fn build_sudoku_binary(s: &IntGrid) -> Result<Formulation, Error> {
    let entries = sudoku_clue_entries(s)?;
    let shape = Shape::Cube { n: 9, depth: 9 };
    let mut row_sels = Vec::new();
    let mut col_sels = Vec::new();
    let mut box_sels = Vec::new();
    let mut pillar_sels = Vec::new();
    for k in 0..9 {
        for i in 0..9 {
            row_sels.push(
                IndexSelection::new((0..9).map(|j| shape.idx3(i, j, k)).collect(), shape)
                    .expect("row slice indices are valid"),
            );
        }
        for j in 0..9 {
            col_sels.push(
                IndexSelection::new((0..9).map(|i| shape.idx3(i, j, k)).collect(), shape)
                    .expect("column slice indices are valid"),
            );
        }
        for bi in 0..3 {
            for bj in 0..3 {
                let mut indices = Vec::with_capacity(9);
                for dj in 0..3 {
                    for di in 0..3 {
                        indices.push(shape.idx3(bi * 3 + di, bj * 3 + dj, k));
                    }
                }
                box_sels.push(
                    IndexSelection::new(indices, shape).expect("subgrid slice indices are valid"),
                );
            }
        }
    }
    for i in 0..9 {
        for j in 0..9 {
            pillar_sels.push(IndexSelection::cube_pillar(9, 9, i, j));
        }
    }
    let mask = PrefillMask::new(
        entries
            .iter()
            .map(|&(i, j, v)| (shape.idx3(i, j, (v - 1) as usize), 1.0))
            .collect(),
        shape,
    )?;
    let sets: Vec<Box<dyn Projector>> = vec![
        Box::new(BasisProjector::new("row-basis", shape, row_sels)?),
        Box::new(BasisProjector::new("column-basis", shape, col_sels)?),
        Box::new(BasisProjector::new("subgrid-basis", shape, box_sels)?),
        Box::new(MaskProjector::new("clues", shape, mask)),
        Box::new(BasisProjector::new("cell-basis", shape, pillar_sels)?),
    ];
    Ok(Formulation {
        kind: FormulationKind::SudokuBinary,
        n: 9,
        shape,
        sets,
        prefill: Some(s.clone()),
    })
}

// ---------------------------------------------------------------------------
// grid file format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GridDoc {
    kind: String,
    n: usize,
    cells: Vec<Vec<i64>>,
}

/// Parses either grid encoding: plain text (first line `n`, then `n` rows of
/// whitespace-separated integers, `0` = blank) or a JSON document with fields
/// `{kind, n, cells}`.
pub fn parse_grid(text: &str) -> Result<IntGrid, Error> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: GridDoc =
            serde_json::from_str(trimmed).map_err(|e| Error::GridParse(e.to_string()))?;
        if doc.kind != "magic" && doc.kind != "sudoku" {
            return Err(Error::GridParse(format!(
                "unknown grid kind {:?} (expected \"magic\" or \"sudoku\")",
                doc.kind
            )));
        }
        if doc.cells.len() != doc.n || doc.cells.iter().any(|row| row.len() != doc.n) {
            return Err(Error::GridParse(format!(
                "cells must form an {0}x{0} array",
                doc.n
            )));
        }
        return IntGrid::new(doc.n, doc.cells.concat());
    }
    let mut tokens = text.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or_else(|| Error::GridParse("empty grid file".into()))?
        .parse()
        .map_err(|_| Error::GridParse("first token must be the order".into()))?;
    let cells: Vec<i64> = tokens
        .map(|t| {
            t.parse()
                .map_err(|_| Error::GridParse(format!("bad cell value {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    if cells.len() != n * n {
        return Err(Error::GridParse(format!(
            "expected {} cells after the order, got {}",
            n * n,
            cells.len()
        )));
    }
    IntGrid::new(n, cells)
}

/// Plain-text grid encoding, parseable by [`parse_grid`].
pub fn format_grid_text(g: &IntGrid) -> String {
    let n = g.n();
    let width = (n * n).to_string().len();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format!("{:>width$}", g.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// JSON grid encoding with fields `{kind, n, cells}`.
pub fn format_grid_json(kind: &str, g: &IntGrid) -> String {
    let doc = GridDoc {
        kind: kind.to_string(),
        n: g.n(),
        cells: (0..g.n())
            .map(|i| (0..g.n()).map(|j| g.get(i, j)).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("grid document serializes")
}

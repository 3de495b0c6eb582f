//! Shared test oracles, independent of the library's projection code paths:
//! exhaustive nearest-member search over small finite sets, the closed-form
//! projection matrices, and small numeric helpers.

// not every test binary uses every oracle
#![allow(dead_code)]

use std::cmp::Ordering;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Random draw from a small dyadic grid; exact in f64, so distance ties are
/// exact and the tie-break rules get exercised for real.
pub fn dyadic(rng: &mut ChaCha8Rng) -> f64 {
    let steps = [0.0, 0.25, 0.5, 0.75, 1.0];
    steps[rng.random_range(0..steps.len())]
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Exhaustive nearest member of `candidates`; among equally near candidates
/// the lexicographically greatest wins, which is the library's documented
/// "earlier position gets the larger value" rule seen from the value side.
pub fn brute_force_nearest(candidates: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let mut best: Option<(&Vec<f64>, f64)> = None;
    for c in candidates {
        let d2: f64 = c.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
        best = match best {
            None => Some((c, d2)),
            Some((bc, bd)) => {
                if d2 < bd || (d2 == bd && lex_cmp(c, bc) == Ordering::Greater) {
                    Some((c, d2))
                } else {
                    Some((bc, bd))
                }
            }
        };
    }
    best.expect("at least one candidate").0.clone()
}

/// All arrangements of `values` (Heap's algorithm; repeated values simply
/// produce repeated candidates, which the argmin does not mind).
pub fn all_permutations(values: &[f64]) -> Vec<Vec<f64>> {
    fn heap(k: usize, a: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a = values.to_vec();
    let mut out = Vec::new();
    let len = a.len();
    heap(len, &mut a, &mut out);
    out
}

/// All 0/1 vectors of length `m` holding exactly `ones` ones.
pub fn all_binary_with_count(m: usize, ones: usize) -> Vec<Vec<f64>> {
    assert!(m <= 20);
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize == ones {
            out.push((0..m).map(|i| ((mask >> i) & 1) as f64).collect());
        }
    }
    out
}

/// The prefix-of-ones vectors of length `m` with at least one leading one.
pub fn all_prefix_vectors(m: usize) -> Vec<Vec<f64>> {
    (1..=m)
        .map(|t| (0..m).map(|k| if k < t { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// The `m` standard basis vectors.
pub fn all_basis_vectors(m: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|i| (0..m).map(|k| if k == i { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Golden-section minimizer of a unimodal function on `[lo, hi]`.
pub fn golden_section_min(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// closed-form projection displays, kept textbook-shaped as an independent
// route against the generic selection-based implementation
// ---------------------------------------------------------------------------

/// Row-sums projection of an `n x n` matrix: add `(c - rowsum_i) / n` to every
/// entry of row `i`.
pub fn closed_form_rows(a: &[f64], n: usize, c: f64) -> Vec<f64> {
    let mut out = a.to_vec();
    for i in 0..n {
        let rowsum: f64 = (0..n).map(|j| a[i * n + j]).sum();
        let shift = (c - rowsum) / n as f64;
        for j in 0..n {
            out[i * n + j] += shift;
        }
    }
    out
}

/// Column-sums projection.
pub fn closed_form_cols(a: &[f64], n: usize, c: f64) -> Vec<f64> {
    let mut out = a.to_vec();
    for j in 0..n {
        let colsum: f64 = (0..n).map(|i| a[i * n + j]).sum();
        let shift = (c - colsum) / n as f64;
        for i in 0..n {
            out[i * n + j] += shift;
        }
    }
    out
}

/// Main-diagonal projection: add `(c - trace) / n` times the identity.
pub fn closed_form_diag(a: &[f64], n: usize, c: f64) -> Vec<f64> {
    let mut out = a.to_vec();
    let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
    let shift = (c - trace) / n as f64;
    for i in 0..n {
        out[i * n + i] += shift;
    }
    out
}

/// Anti-diagonal projection: the correction lands on the entries `(i, n-1-i)`.
pub fn closed_form_anti_diag(a: &[f64], n: usize, c: f64) -> Vec<f64> {
    let mut out = a.to_vec();
    let sum: f64 = (0..n).map(|i| a[i * n + (n - 1 - i)]).sum();
    let shift = (c - sum) / n as f64;
    for i in 0..n {
        out[i * n + (n - 1 - i)] += shift;
    }
    out
}

fn cube_idx(n: usize, depth: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * depth + k
}

/// Row-slab sums projection of an `n x n x n^2` cube: the whole slab
/// `(i, :, :)` receives the constant correction `(c - slabsum_i) / n^3`.
pub fn closed_form_cube_rows(b: &[f64], n: usize, c: f64) -> Vec<f64> {
    let depth = n * n;
    let mut out = b.to_vec();
    for i in 0..n {
        let mut slab = 0.0;
        for j in 0..n {
            for k in 0..depth {
                slab += b[cube_idx(n, depth, i, j, k)];
            }
        }
        let shift = (c - slab) / (n * n * n) as f64;
        for j in 0..n {
            for k in 0..depth {
                out[cube_idx(n, depth, i, j, k)] += shift;
            }
        }
    }
    out
}

/// Column-slab sums projection.
pub fn closed_form_cube_cols(b: &[f64], n: usize, c: f64) -> Vec<f64> {
    let depth = n * n;
    let mut out = b.to_vec();
    for j in 0..n {
        let mut slab = 0.0;
        for i in 0..n {
            for k in 0..depth {
                slab += b[cube_idx(n, depth, i, j, k)];
            }
        }
        let shift = (c - slab) / (n * n * n) as f64;
        for i in 0..n {
            for k in 0..depth {
                out[cube_idx(n, depth, i, j, k)] += shift;
            }
        }
    }
    out
}

/// Diagonal-slab projection: all `(i, i, k)` entries receive the correction.
pub fn closed_form_cube_diag(b: &[f64], n: usize, c: f64) -> Vec<f64> {
    let depth = n * n;
    let mut out = b.to_vec();
    let mut slab = 0.0;
    for i in 0..n {
        for k in 0..depth {
            slab += b[cube_idx(n, depth, i, i, k)];
        }
    }
    let shift = (c - slab) / (n * n * n) as f64;
    for i in 0..n {
        for k in 0..depth {
            out[cube_idx(n, depth, i, i, k)] += shift;
        }
    }
    out
}

/// Anti-diagonal-slab projection over the entries `(i, n-1-i, k)`.
pub fn closed_form_cube_anti_diag(b: &[f64], n: usize, c: f64) -> Vec<f64> {
    let depth = n * n;
    let mut out = b.to_vec();
    let mut slab = 0.0;
    for i in 0..n {
        for k in 0..depth {
            slab += b[cube_idx(n, depth, i, n - 1 - i, k)];
        }
    }
    let shift = (c - slab) / (n * n * n) as f64;
    for i in 0..n {
        for k in 0..depth {
            out[cube_idx(n, depth, i, n - 1 - i, k)] += shift;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// grid fixtures
// ---------------------------------------------------------------------------

pub const LUOSHU: [i64; 9] = [4, 9, 2, 3, 5, 7, 8, 1, 6];

pub const SUDOKU_PUZZLE: [[i64; 9]; 9] = [
    [0, 2, 0, 5, 0, 1, 0, 9, 0],
    [8, 0, 0, 2, 0, 3, 0, 0, 6],
    [0, 3, 0, 0, 6, 0, 0, 7, 0],
    [0, 0, 1, 0, 0, 0, 6, 0, 0],
    [5, 4, 0, 0, 0, 0, 0, 1, 9],
    [0, 0, 2, 0, 0, 0, 7, 0, 0],
    [0, 9, 0, 0, 3, 0, 0, 8, 0],
    [2, 0, 0, 8, 0, 4, 0, 0, 7],
    [0, 1, 0, 9, 0, 7, 0, 6, 0],
];

pub const SUDOKU_SOLUTION: [[i64; 9]; 9] = [
    [4, 2, 6, 5, 7, 1, 3, 9, 8],
    [8, 5, 7, 2, 9, 3, 1, 4, 6],
    [1, 3, 9, 4, 6, 8, 2, 7, 5],
    [9, 7, 1, 3, 8, 5, 6, 2, 4],
    [5, 4, 3, 7, 2, 6, 8, 1, 9],
    [6, 8, 2, 1, 4, 9, 7, 5, 3],
    [7, 9, 4, 6, 3, 2, 5, 8, 1],
    [2, 6, 5, 8, 1, 4, 9, 3, 7],
    [3, 1, 8, 9, 5, 7, 4, 6, 2],
];

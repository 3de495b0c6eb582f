//! Ambient-space elements: flat vectors of `f64` with shape metadata, and
//! tuples of them forming the lifted product space.

use std::fmt;

use crate::error::Error;

/// Dimension descriptor of a [`Point`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// A flat vector in `R^m`.
    Vector(usize),
    /// A square `n x n` matrix, stored row-major.
    Matrix(usize),
    /// An `n x n x depth` array, stored row-major with the depth axis fastest
    /// (so a pillar `(i, j, :)` is contiguous).
    Cube { n: usize, depth: usize },
}

impl Shape {
    /// Number of coordinates a point of this shape holds.
    pub fn len(&self) -> usize {
        match *self {
            Shape::Vector(m) => m,
            Shape::Matrix(n) => n * n,
            Shape::Cube { n, depth } => n * n * depth,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of matrix entry `(i, j)`.
    pub fn idx2(&self, i: usize, j: usize) -> usize {
        match *self {
            Shape::Matrix(n) => {
                debug_assert!(i < n && j < n);
                i * n + j
            }
            _ => panic!("idx2 on non-matrix shape {self}"),
        }
    }

    /// Flat index of cube entry `(i, j, k)`.
    pub fn idx3(&self, i: usize, j: usize, k: usize) -> usize {
        match *self {
            Shape::Cube { n, depth } => {
                debug_assert!(i < n && j < n && k < depth);
                (i * n + j) * depth + k
            }
            _ => panic!("idx3 on non-cube shape {self}"),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Shape::Vector(m) => write!(f, "{m}-vector"),
            Shape::Matrix(n) => write!(f, "{n}x{n}"),
            Shape::Cube { n, depth } => write!(f, "{n}x{n}x{depth}"),
        }
    }
}

/// An element of the ambient space: a finite real vector plus its shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    shape: Shape,
    data: Vec<f64>,
}

impl Point {
    /// Wraps raw coordinates; fails when the length does not match the shape.
    pub fn new(shape: Shape, data: Vec<f64>) -> Result<Self, Error> {
        if data.len() != shape.len() {
            return Err(Error::LengthMismatch {
                shape,
                len: data.len(),
            });
        }
        Ok(Point { shape, data })
    }

    pub fn zeros(shape: Shape) -> Self {
        Point {
            shape,
            data: vec![0.0; shape.len()],
        }
    }

    /// A plain vector in `R^m`.
    pub fn from_vec(data: Vec<f64>) -> Self {
        Point {
            shape: Shape::Vector(data.len()),
            data,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Euclidean distance to another point of the same shape.
    pub fn distance(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.shape, other.shape);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Componentwise nearest integer, halves away from zero.
    pub fn rounded(&self) -> Point {
        self.rounded_by(f64::round)
    }

    /// Componentwise rounding with a caller-supplied rule.
    pub fn rounded_by(&self, round: fn(f64) -> f64) -> Point {
        Point {
            shape: self.shape,
            data: self.data.iter().map(|&v| round(v)).collect(),
        }
    }

    /// `a * x + b * y` for same-shape points.
    pub fn combine(a: f64, x: &Point, b: f64, y: &Point) -> Point {
        debug_assert_eq!(x.shape, y.shape);
        Point {
            shape: x.shape,
            data: x
                .data
                .iter()
                .zip(&y.data)
                .map(|(xv, yv)| a * xv + b * yv)
                .collect(),
        }
    }
}

/// An element of the lifted space `H^N`: an ordered tuple of equal-shape blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint {
    blocks: Vec<Point>,
}

impl ProductPoint {
    /// Builds from blocks; needs at least two and all shapes equal.
    pub fn new(blocks: Vec<Point>) -> Result<Self, Error> {
        if blocks.len() < 2 {
            return Err(Error::TooFewBlocks(blocks.len()));
        }
        let shape = blocks[0].shape();
        for b in &blocks[1..] {
            if b.shape() != shape {
                return Err(Error::ShapeMismatch {
                    expected: shape,
                    actual: b.shape(),
                });
            }
        }
        Ok(ProductPoint { blocks })
    }

    /// Lifts `x` onto the diagonal: `(x, x, ..., x)` with `n` copies.
    pub fn lift(x: &Point, n: usize) -> Result<Self, Error> {
        ProductPoint::new(vec![x.clone(); n])
    }

    pub fn blocks(&self) -> &[Point] {
        &self.blocks
    }

    pub fn blocks_mut(&mut self) -> &mut [Point] {
        &mut self.blocks
    }

    pub fn into_blocks(self) -> Vec<Point> {
        self.blocks
    }

    /// Number of blocks `N`.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_shape(&self) -> Shape {
        self.blocks[0].shape()
    }

    /// Arithmetic mean of the blocks (the diagonal-projection block).
    pub fn mean_block(&self) -> Point {
        let shape = self.block_shape();
        let mut mean = vec![0.0; shape.len()];
        for b in &self.blocks {
            for (m, v) in mean.iter_mut().zip(b.data()) {
                *m += v;
            }
        }
        let inv = 1.0 / self.blocks.len() as f64;
        for m in &mut mean {
            *m *= inv;
        }
        Point { shape, data: mean }
    }

    /// Norm in `H^N` (sum of blockwise squared norms).
    pub fn norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let n = b.norm();
                n * n
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.blocks.iter().all(Point::is_finite)
    }
}

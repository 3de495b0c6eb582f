//! The projector abstraction and the operators built from it: reflections,
//! the two-set Douglas-Rachford step, its cyclic composition, and the
//! product-space projections.

use crate::error::Error;
use crate::point::{Point, ProductPoint, Shape};

/// A constraint set exposed solely through its nearest-point map.
///
/// Where the underlying set-valued projection has ties, implementations must
/// break them deterministically (each concrete family documents its rule), so
/// `project` is an ordinary function and repeated calls agree bit for bit.
pub trait Projector: Send + Sync {
    /// Name of the constraint family, for diagnostics.
    fn label(&self) -> &str;

    /// Shape of the points this projector accepts.
    fn domain(&self) -> Shape;

    /// Replaces `x` with its projection. Callers must pass a point whose
    /// shape equals `domain()`.
    fn project_in_place(&self, x: &mut Point);

    /// Projection as a value.
    fn project(&self, x: &Point) -> Point {
        let mut y = x.clone();
        self.project_in_place(&mut y);
        y
    }
}

fn check_domain(set: &dyn Projector, x: &Point) -> Result<(), Error> {
    if set.domain() != x.shape() {
        return Err(Error::ShapeMismatch {
            expected: set.domain(),
            actual: x.shape(),
        });
    }
    Ok(())
}

/// Reflection `R_C(x) = 2 P_C(x) - x`.
pub fn reflect(set: &dyn Projector, x: &Point) -> Result<Point, Error> {
    check_domain(set, x)?;
    let p = set.project(x);
    Ok(Point::combine(2.0, &p, -1.0, x))
}

/// One Douglas-Rachford step `T_{A,B}(x) = (x + R_B(R_A(x))) / 2`.
///
/// `A` is reflected through first.
pub fn dr_step(a: &dyn Projector, b: &dyn Projector, x: &Point) -> Result<Point, Error> {
    check_domain(a, x)?;
    let ra = reflect(a, x)?;
    let rba = reflect(b, &ra)?;
    Ok(Point::combine(0.5, x, 0.5, &rba))
}

/// One sweep of the cyclic Douglas-Rachford composition: applies
/// `T_{C_1,C_2}`, then `T_{C_2,C_3}`, ..., finishing with `T_{C_N,C_1}`.
pub fn cyclic_dr_step(sets: &[Box<dyn Projector>], x: &Point) -> Result<Point, Error> {
    if sets.len() < 2 {
        return Err(Error::TooFewSets(sets.len()));
    }
    let mut y = x.clone();
    for i in 0..sets.len() {
        let next = (i + 1) % sets.len();
        y = dr_step(sets[i].as_ref(), sets[next].as_ref(), &y)?;
    }
    Ok(y)
}

/// Projection onto the diagonal `D = {(x, ..., x)}`: every block becomes the
/// arithmetic mean of the input blocks.
pub fn project_diagonal(x: &ProductPoint) -> ProductPoint {
    let mean = x.mean_block();
    ProductPoint::new(vec![mean; x.num_blocks()]).expect("diagonal keeps block count")
}

/// Projection onto the product set `C = C_1 x ... x C_N`: block `i` is
/// projected onto set `i`.
pub fn project_product(
    sets: &[Box<dyn Projector>],
    x: &ProductPoint,
) -> Result<ProductPoint, Error> {
    if sets.len() != x.num_blocks() {
        return Err(Error::BlockCountMismatch {
            sets: sets.len(),
            blocks: x.num_blocks(),
        });
    }
    let mut blocks = Vec::with_capacity(sets.len());
    for (set, block) in sets.iter().zip(x.blocks()) {
        check_domain(set.as_ref(), block)?;
        blocks.push(set.project(block));
    }
    ProductPoint::new(blocks)
}

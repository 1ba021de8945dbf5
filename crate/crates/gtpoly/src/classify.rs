//! The integrality classifier for skew shapes at weight one, and generators
//! for the explicit families of non-integral vertices.
//!
//! A normalized shape has an integral weight-one polytope exactly when it is
//! a disjoint union of rows, the 2x2 box, a hook, or a reverse hook (each
//! hook possibly missing its corner box); everything else contains one of
//! ten finite forbidden subdiagrams, and the classifier returns a concrete
//! embedding of one of them as the witness.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::pattern::GTPattern;
use crate::rational::{rat, rat_int, Rational};
use crate::shape::{contains_subdiagram, Embedding, SkewShape};
use crate::tiling;
use serde::Serialize;

/// Classification of a skew shape by the integrality of its weight-one
/// polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ShapeClass {
    EmptyShape,
    UnionOfRows,
    TwoByTwoBox,
    Hook,
    HookCornerMissing,
    ReverseHook,
    ReverseHookCornerMissing,
    /// The shape contains a forbidden subdiagram; the embedding (into the
    /// normalized shape) certifies it.
    NonIntegralWitness {
        forbidden_index: usize,
        embedding: Embedding,
    },
}

impl ShapeClass {
    /// Whether the class implies an integral weight-one polytope.
    pub fn is_integral_family(&self) -> bool {
        !matches!(self, ShapeClass::NonIntegralWitness { .. })
    }
}

/// The ten forbidden diagrams: seven sporadic ones plus the three four-box
/// staircase diagrams that generate the infinite three-column families
/// (their taller members all contain the four-box one, so these suffice).
pub fn forbidden_diagrams() -> Vec<SkewShape> {
    let mk = |l: &[u64], m: &[u64]| SkewShape::from_parts(l.to_vec(), m.to_vec()).unwrap();
    vec![
        mk(&[3, 2], &[1]),
        mk(&[2, 2, 1], &[1]),
        mk(&[3, 2, 1], &[2]),
        mk(&[3, 2, 1], &[1, 1]),
        mk(&[3, 2, 2], &[2, 1]),
        mk(&[3, 3, 1], &[2, 1]),
        mk(&[2, 2, 1, 1], &[1, 1]),
        mk(&[3, 2, 1, 1], &[2, 1]),
        mk(&[3, 2, 2, 1], &[2, 1, 1]),
        mk(&[3, 3, 2, 1], &[2, 2, 1]),
    ]
}

/// Classifies a shape (normalizing it first). The integral families take
/// precedence in a fixed order, so degenerate cases tag deterministically:
/// single rows are unions of rows, single columns are hooks.
pub fn classify_shape(s: &SkewShape) -> ShapeClass {
    let (shape, _) = s.normalize();
    if shape.boxes() == 0 {
        return ShapeClass::EmptyShape;
    }
    if shape.is_union_of_rows() {
        return ShapeClass::UnionOfRows;
    }
    if shape == SkewShape::from_parts(vec![2, 2], vec![]).unwrap() {
        return ShapeClass::TwoByTwoBox;
    }
    if is_hook(&shape) {
        return ShapeClass::Hook;
    }
    if is_hook_corner_missing(&shape) {
        return ShapeClass::HookCornerMissing;
    }
    if is_reverse_hook(&shape) {
        return ShapeClass::ReverseHook;
    }
    if is_reverse_hook_corner_missing(&shape) {
        return ShapeClass::ReverseHookCornerMissing;
    }
    for (forbidden_index, diagram) in forbidden_diagrams().iter().enumerate() {
        if let Some(embedding) = contains_subdiagram(&shape, diagram) {
            return ShapeClass::NonIntegralWitness {
                forbidden_index,
                embedding,
            };
        }
    }
    unreachable!("a shape avoiding all forbidden diagrams lies in an integral family: {shape}")
}

/// `(h, 1, 1, ..., 1)`, including single rows and single columns.
fn is_hook(s: &SkewShape) -> bool {
    s.mu.is_empty() && s.lambda.parts().iter().skip(1).all(|&p| p == 1)
}

/// A hook with the corner box removed: `(h, 1, ..., 1)/(1)`, `h >= 2`.
fn is_hook_corner_missing(s: &SkewShape) -> bool {
    s.mu.parts() == [1]
        && s.lambda.part(0) >= 2
        && s.lambda.len() >= 2
        && s.lambda.parts().iter().skip(1).all(|&p| p == 1)
}

/// `(h, ..., h)/(h-1, ..., h-1)` with one fewer part in the inner shape.
fn is_reverse_hook(s: &SkewShape) -> bool {
    let h = s.lambda.part(0);
    let l = s.lambda.len();
    h >= 1
        && s.lambda.parts().iter().all(|&p| p == h)
        && s.mu.len() == l.saturating_sub(1)
        && s.mu.parts().iter().all(|&p| p == h - 1)
}

/// A reverse hook with the corner box removed:
/// `(h, ..., h, h-1)/((h-1), ..., (h-1))`.
fn is_reverse_hook_corner_missing(s: &SkewShape) -> bool {
    let h = s.lambda.part(0);
    let l = s.lambda.len();
    if h < 2 || l < 2 {
        return false;
    }
    s.lambda.parts()[..l - 1].iter().all(|&p| p == h)
        && s.lambda.part(l - 1) == h - 1
        && s.mu.len() == l - 1
        && s.mu.parts().iter().all(|&p| p == h - 1)
}

/// The five explicit half-integral vertices of the small non-integral
/// shapes, with their shapes. Each is a certified vertex of the weight-one
/// polytope.
pub fn gen_six_shape_vertices() -> Vec<(SkewShape, GTPattern)> {
    let mk = |l: &[u64], m: &[u64]| SkewShape::from_parts(l.to_vec(), m.to_vec()).unwrap();
    let half = |n: i64| rat(n, 2);
    let int = rat_int;
    vec![
        (
            mk(&[3, 2], &[1]),
            GTPattern::new(vec![
                vec![int(1), int(0)],
                vec![half(3), half(1)],
                vec![half(3), half(3)],
                vec![half(5), half(3)],
                vec![int(3), int(2)],
            ])
            .unwrap(),
        ),
        (
            mk(&[2, 2, 1], &[1]),
            GTPattern::new(vec![
                vec![int(1), int(0), int(0)],
                vec![half(3), half(1), int(0)],
                vec![int(2), half(1), half(1)],
                vec![int(2), half(3), half(1)],
                vec![int(2), int(2), int(1)],
            ])
            .unwrap(),
        ),
        (
            mk(&[3, 2, 1], &[2]),
            GTPattern::new(vec![
                vec![int(2), int(0), int(0)],
                vec![half(5), half(1), int(0)],
                vec![int(3), half(1), half(1)],
                vec![int(3), half(3), half(1)],
                vec![int(3), int(2), int(1)],
            ])
            .unwrap(),
        ),
        (
            mk(&[3, 2, 2], &[2, 1]),
            GTPattern::new(vec![
                vec![int(2), int(1), int(0)],
                vec![int(2), half(3), half(1)],
                vec![int(2), half(3), half(3)],
                vec![half(5), int(2), half(3)],
                vec![int(3), int(2), int(2)],
            ])
            .unwrap(),
        ),
        (
            mk(&[2, 2, 1, 1], &[1, 1]),
            GTPattern::new(vec![
                vec![int(1), int(1), int(0), int(0)],
                vec![half(3), int(1), half(1), int(0)],
                vec![int(2), int(1), half(1), half(1)],
                vec![int(2), half(3), int(1), half(1)],
                vec![int(2), int(2), int(1), int(1)],
            ])
            .unwrap(),
        ),
    ]
}

/// The parametric non-integral vertex of the three-column family
/// `(3, 2, 1, ..., 1)/(2, 1)` with `k >= 2` boxes in the first-column tail
/// (so `k + 2` boxes in total). `k = 2` is the four-box instance whose
/// diagram has four rows.
pub fn gen_three_column_vertex(k: u64) -> Result<(SkewShape, GTPattern)> {
    if k < 2 {
        return Err(Error::domain("the three-column family needs a tail of at least two boxes"));
    }
    let b = (k + 2) as usize; // boxes = columns; rows = b + 1
    let mut lambda = vec![3u64, 2];
    lambda.extend(std::iter::repeat(1).take(b - 2));
    let shape = SkewShape::from_parts(lambda, vec![2, 1])?;
    let m = b + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut bottom = vec![rat_int(2), rat_int(1)];
    bottom.extend(std::iter::repeat(rat_int(0)).take(b - 2));
    rows.push(bottom);
    let mut second = vec![rat(5, 2), rat_int(1), rat(1, 2)];
    second.extend(std::iter::repeat(rat_int(0)).take(b - 3));
    rows.push(second);
    for i in 3..=m - 2 {
        // (3, 1^{i-2}, 1/2, 1/2, 0^{b-i-1})
        let mut row = vec![rat_int(3)];
        row.extend(std::iter::repeat(rat_int(1)).take(i - 2));
        row.push(rat(1, 2));
        row.push(rat(1, 2));
        row.extend(std::iter::repeat(rat_int(0)).take(b - i - 1));
        rows.push(row);
    }
    let mut next_to_top = vec![rat_int(3), rat(3, 2)];
    next_to_top.extend(std::iter::repeat(rat_int(1)).take(b - 3));
    next_to_top.push(rat(1, 2));
    rows.push(next_to_top);
    let mut top = vec![rat_int(3), rat_int(2)];
    top.extend(std::iter::repeat(rat_int(1)).take(b - 2));
    rows.push(top);
    let p = GTPattern::new(rows)?;
    debug_assert!(p.validate().is_ok());
    Ok((shape, p))
}

/// How to grow a non-integral vertex by one box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowMode {
    /// Add a box to `lambda` in the given 1-based row; the pattern gains a
    /// duplicated top row with that part increased.
    AddBoxToLambda { row: usize },
    /// Remove a box from `mu` in the given 1-based row; the pattern gains a
    /// duplicated bottom row with that part decreased.
    RemoveBoxFromMu { row: usize },
}

/// Grows a certified non-integral vertex of a weight-one polytope by one box
/// while preserving the certificate.
pub fn extend_nonintegral(
    shape: &SkewShape,
    vertex: &GTPattern,
    mode: GrowMode,
) -> Result<(SkewShape, GTPattern)> {
    let spec = crate::polytope::PolytopeSpec::weighted(
        shape.clone(),
        crate::partition::Composition::ones(vertex.num_rows() - 1),
        1,
    )?
    .with_cols(vertex.num_cols())?;
    if vertex.is_integral() || !tiling::is_vertex(vertex, &spec)? {
        return Err(Error::domain(
            "input must be a non-integral vertex of the weight-one polytope",
        ));
    }
    let n = vertex.num_cols();
    let (new_shape, new_pattern) = match mode {
        GrowMode::AddBoxToLambda { row } => {
            if row < 1 || row > n {
                return Err(Error::domain(format!("row {row} out of range")));
            }
            let mut lam = shape.lambda.padded(n);
            lam[row - 1] += 1;
            let new_shape = SkewShape::new(
                Partition::new(lam.clone())
                    .map_err(|_| Error::domain("adding the box does not give a partition"))?,
                shape.mu.clone(),
            )?;
            let mut rows = vertex.rows().to_vec();
            let mut new_top: Vec<Rational> = vertex.top_row().to_vec();
            new_top[row - 1] += rat_int(1);
            rows.push(new_top);
            (new_shape, GTPattern::new(rows)?)
        }
        GrowMode::RemoveBoxFromMu { row } => {
            if row < 1 || row > n {
                return Err(Error::domain(format!("row {row} out of range")));
            }
            let mut mu = shape.mu.padded(n);
            if mu[row - 1] == 0 {
                return Err(Error::domain("no box to remove in that row"));
            }
            mu[row - 1] -= 1;
            let new_shape = SkewShape::new(
                shape.lambda.clone(),
                Partition::new(mu)
                    .map_err(|_| Error::domain("removing the box does not give a partition"))?,
            )?;
            let mut new_bottom: Vec<Rational> = vertex.bottom_row().to_vec();
            new_bottom[row - 1] -= rat_int(1);
            let mut rows = vec![new_bottom];
            rows.extend(vertex.rows().to_vec());
            (new_shape, GTPattern::new(rows)?)
        }
    };
    if new_pattern.validate().is_err() {
        return Err(Error::domain("grown pattern violates the GT inequalities"));
    }
    let new_spec = crate::polytope::PolytopeSpec::weighted(
        new_shape.clone(),
        crate::partition::Composition::ones(new_pattern.num_rows() - 1),
        1,
    )?
    .with_cols(new_pattern.num_cols())?;
    debug_assert!(new_spec.contains(&new_pattern)?);
    if !tiling::is_vertex(&new_pattern, &new_spec)? {
        return Err(Error::domain("grown pattern lost the vertex certificate"));
    }
    Ok((new_shape, new_pattern))
}

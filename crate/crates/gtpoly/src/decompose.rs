//! Constructive decomposition witnesses: peeling a standard tableau off a
//! dilated hook (or reverse hook), splitting a weightless tableau by column
//! blocks, and the correspondence between union-of-rows patterns and
//! contingency matrices with fixed margins.

use crate::classify::{classify_shape, ShapeClass};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::pattern::GTPattern;
use crate::rational::Rational;
use crate::shape::SkewShape;
use crate::tableau::{concat_tableaux, SkewTableau};
use serde::{Deserialize, Serialize};

/// Splits a tableau of shape `k * lambda` (lambda a hook, weight `k * 1`)
/// into a standard tableau of shape `lambda` and the remainder of shape
/// `(k-1) * lambda`, recombining under row-wise concatenation.
pub fn hook_decompose(t: &SkewTableau, k: u64) -> Result<(SkewTableau, SkewTableau)> {
    if k == 0 {
        return Err(Error::domain("dilation must be positive"));
    }
    let base = t
        .shape()
        .unscale(k)
        .ok_or_else(|| Error::domain("tableau shape is not a k-fold dilation"))?;
    if !base.mu.is_empty() || !base.lambda.parts().iter().skip(1).all(|&p| p == 1) {
        return Err(Error::domain(format!("{base} is not a hook shape")));
    }
    let boxes = base.boxes();
    let counts = t.content_counts(boxes as u32);
    if t.max_content() as u64 > boxes || counts.iter().any(|&c| c != k) {
        return Err(Error::domain("tableau weight is not k copies of each content"));
    }
    if k == 1 {
        return Ok((t.clone(), SkewTableau::empty(Partition::empty())));
    }
    let l = base.lambda.len(); // leg length
    let h = base.lambda.part(0); // arm length
    let kh = (h * k) as usize;
    let kk = k as usize;
    // first column: rows 1..=l, one box each
    let first_column: Vec<u32> = (0..l).map(|i| t.rows()[i][0]).collect();
    let mut present = vec![false; boxes as usize + 1];
    for &c in &first_column {
        present[c as usize] = true;
    }
    // single-box columns are the columns beyond the leg block (col > k)
    let row1 = &t.rows()[0];
    let mut removed_row1_cols: Vec<usize> = vec![0]; // 0-based indices into row 1
    let mut recorded: Vec<u32> = Vec::new();
    for content in 1..=boxes as u32 {
        if present[content as usize] {
            continue;
        }
        let found = (kk..kh)
            .find(|&c| row1[c] == content && !removed_row1_cols.contains(&c))
            .ok_or_else(|| {
                Error::domain(format!("no single-box column with content {content}"))
            })?;
        removed_row1_cols.push(found);
        recorded.push(content);
    }
    // the peeled standard tableau: first column plus the recorded boxes
    let mut peeled_rows: Vec<Vec<u32>> = Vec::with_capacity(l);
    let mut first_row = vec![first_column[0]];
    first_row.extend(&recorded);
    first_row.sort_unstable();
    peeled_rows.push(first_row);
    for i in 1..l {
        peeled_rows.push(vec![first_column[i]]);
    }
    let peeled = SkewTableau::new(SkewShape::straight(base.lambda.clone()), peeled_rows)?;
    // the remainder: drop the removed columns
    let mut rest_rows: Vec<Vec<u32>> = Vec::with_capacity(l);
    rest_rows.push(
        row1.iter()
            .enumerate()
            .filter(|(c, _)| !removed_row1_cols.contains(c))
            .map(|(_, &v)| v)
            .collect(),
    );
    for i in 1..l {
        rest_rows.push(t.rows()[i][1..].to_vec());
    }
    let rest = SkewTableau::new(
        SkewShape::straight(base.lambda.scale(k - 1)),
        rest_rows,
    )?;
    debug_assert!(peeled.is_standard());
    debug_assert_eq!(concat_tableaux(&peeled, &rest)?, *t);
    Ok((peeled, rest))
}

/// Full `k`-term decomposition by repeated peeling.
pub fn hook_decompose_all(t: &SkewTableau, k: u64) -> Result<Vec<SkewTableau>> {
    let mut parts = Vec::new();
    let mut rest = t.clone();
    for step in (1..=k).rev() {
        let (peeled, next) = hook_decompose(&rest, step)?;
        parts.push(peeled);
        rest = next;
    }
    Ok(parts)
}

/// Mirror of [`hook_decompose`] for reverse hooks
/// `(h, ..., h)/(h-1, ..., h-1)`, carried out through the half-turn rotation
/// that exchanges hooks and reverse hooks.
pub fn reverse_hook_decompose(t: &SkewTableau, k: u64) -> Result<(SkewTableau, SkewTableau)> {
    if k == 0 {
        return Err(Error::domain("dilation must be positive"));
    }
    let base = t
        .shape()
        .unscale(k)
        .ok_or_else(|| Error::domain("tableau shape is not a k-fold dilation"))?;
    if !is_reverse_hook_shape(&base) {
        return Err(Error::domain(format!("{base} is not a reverse hook")));
    }
    let boxes = base.boxes() as u32;
    if k == 1 {
        return Ok((t.clone(), SkewTableau::empty(Partition::empty())));
    }
    let rotated = rotate_half_turn(t, boxes)?;
    let (peeled_rot, rest_rot) = hook_decompose(&rotated, k)?;
    let peeled = rotate_half_turn(&peeled_rot, boxes)?;
    let rest = rotate_half_turn(&rest_rot, boxes)?;
    debug_assert_eq!(concat_tableaux(&peeled, &rest)?, *t);
    Ok((peeled, rest))
}

fn is_reverse_hook_shape(s: &SkewShape) -> bool {
    let h = s.lambda.part(0);
    let l = s.lambda.len();
    h >= 1
        && s.lambda.parts().iter().all(|&p| p == h)
        && s.mu.len() == l.saturating_sub(1)
        && s.mu.parts().iter().all(|&p| p == h - 1)
}

/// Rotates a skew tableau by a half turn, complementing contents in
/// `1..=max_content`. An involution that swaps hook and reverse-hook shapes
/// and commutes with row-wise concatenation.
pub fn rotate_half_turn(t: &SkewTableau, max_content: u32) -> Result<SkewTableau> {
    let shape = t.shape();
    if shape.boxes() == 0 {
        return Ok(t.clone());
    }
    let rows = shape.rows();
    let width = shape.lambda.part(0);
    let lambda: Vec<u64> = (0..rows)
        .map(|i| width - shape.mu.part(rows - 1 - i))
        .collect();
    let mu: Vec<u64> = (0..rows)
        .map(|i| width - shape.lambda.part(rows - 1 - i))
        .collect();
    let new_shape = SkewShape::from_parts(lambda, mu)?;
    let new_rows: Vec<Vec<u32>> = (0..rows)
        .map(|i| {
            let mut row: Vec<u32> = t.rows()[rows - 1 - i]
                .iter()
                .map(|&c| max_content + 1 - c)
                .collect();
            row.reverse();
            row
        })
        .collect();
    SkewTableau::new(new_shape, new_rows)
}

/// Splits a tableau of shape `k * (lambda/mu)` into `k` tableaux of shape
/// `lambda/mu` by selecting the `j`-th column of each block of `k`
/// consecutive columns. The row-wise concatenation of the parts recovers the
/// input.
pub fn column_split(t: &SkewTableau, k: u64) -> Result<Vec<SkewTableau>> {
    if k == 0 {
        return Err(Error::domain("dilation must be positive"));
    }
    let base = t
        .shape()
        .unscale(k)
        .ok_or_else(|| Error::malformed("tableau shape is not a k-fold dilation"))?;
    let rows = base.rows();
    let kk = k as usize;
    let mut parts = Vec::with_capacity(kk);
    for j in 0..kk {
        let mut part_rows: Vec<Vec<u32>> = Vec::with_capacity(rows);
        for (i, row) in t.rows().iter().enumerate() {
            let start = (t.shape().mu.part(i)) as usize; // global col offset
            let selected: Vec<u32> = row
                .iter()
                .enumerate()
                .filter(|(idx, _)| (start + idx) % kk == j)
                .map(|(_, &v)| v)
                .collect();
            part_rows.push(selected);
        }
        parts.push(SkewTableau::new(base.clone(), part_rows)?);
    }
    debug_assert_eq!(
        parts[1..]
            .iter()
            .try_fold(parts[0].clone(), |acc, p| concat_tableaux(&acc, p))?,
        *t
    );
    Ok(parts)
}

/// Non-negative integer matrix with the margins of the union-of-rows
/// correspondence: row `i` sums to `k * (lambda_i - mu_i)` and every column
/// sums to the dilation `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencyMatrix {
    pub entries: Vec<Vec<u64>>,
}

impl ContingencyMatrix {
    pub fn num_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn num_cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.num_cols())
            .map(|j| self.entries.iter().map(|r| r[j]).sum())
            .collect()
    }
}

/// The contingency matrix of an integral pattern over a union-of-rows shape
/// at weight `k * 1`: entry `(i, j)` counts the boxes of content `j` in
/// diagram row `i`.
pub fn to_contingency(p: &GTPattern) -> Result<ContingencyMatrix> {
    if !p.is_integral() {
        return Err(Error::domain(
            "the integral correspondence needs an integral pattern (see contingency_profile)",
        ));
    }
    let profile = contingency_profile(p)?;
    let entries = profile
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| u64::try_from(x.numer().clone()).map_err(|_| Error::domain("negative count")))
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContingencyMatrix { entries })
}

/// Rational content counts per diagram row, defined for any valid pattern
/// over a union-of-rows shape (fractional boxes allowed).
pub fn contingency_profile(p: &GTPattern) -> Result<Vec<Vec<Rational>>> {
    p.validate().map_err(Error::Validation)?;
    let shape = p.boundary_shape()?;
    if !matches!(
        classify_shape(&shape),
        ShapeClass::UnionOfRows | ShapeClass::EmptyShape
    ) {
        return Err(Error::domain(format!(
            "{shape} is not a disjoint union of rows"
        )));
    }
    let rows = shape.rows();
    let m = p.num_rows();
    Ok((1..=rows)
        .map(|i| {
            (1..m)
                .map(|j| p.entry(j + 1, i) - p.entry(j, i))
                .collect()
        })
        .collect())
}

/// Rebuilds the pattern of a contingency matrix over the (undilated) base
/// shape: the inverse integral affine map of [`to_contingency`].
pub fn from_contingency(
    matrix: &ContingencyMatrix,
    base: &SkewShape,
    k: u64,
) -> Result<GTPattern> {
    let n = base.rows().max(1);
    if matrix.num_rows() > n {
        return Err(Error::dimension(format!(
            "matrix has {} rows, shape {base} has {n}",
            matrix.num_rows()
        )));
    }
    let m = matrix.num_cols() + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let bottom: Vec<Rational> = (0..n)
        .map(|i| Rational::from_integer((base.mu.part(i) * k).into()))
        .collect();
    rows.push(bottom);
    for j in 0..matrix.num_cols() {
        let prev = rows.last().expect("nonempty").clone();
        let next: Vec<Rational> = (0..n)
            .map(|i| {
                let a = matrix.entries.get(i).map_or(0, |r| r[j]);
                &prev[i] + Rational::from_integer(a.into())
            })
            .collect();
        rows.push(next);
    }
    let p = GTPattern::new(rows)?;
    p.validate().map_err(Error::Validation)?;
    let expected_top: Vec<Rational> = (0..n)
        .map(|i| Rational::from_integer((base.lambda.part(i) * k).into()))
        .collect();
    if p.top_row() != expected_top.as_slice() {
        return Err(Error::domain("matrix margins do not match the shape"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Composition;
    use crate::polytope::PolytopeSpec;
    use crate::tableau::pattern_to_tableau;

    fn shape(l: &[u64], m: &[u64]) -> SkewShape {
        SkewShape::from_parts(l.to_vec(), m.to_vec()).unwrap()
    }

    fn tab(l: &[u64], m: &[u64], rows: Vec<Vec<u32>>) -> SkewTableau {
        SkewTableau::new(shape(l, m), rows).unwrap()
    }

    #[test]
    fn hook_peel_on_worked_instance() {
        // lambda = (2,1), k = 2: rows (1,1,2,3)/(2,3)
        let t = tab(&[4, 2], &[], vec![vec![1, 1, 2, 3], vec![2, 3]]);
        let (peeled, rest) = hook_decompose(&t, 2).unwrap();
        assert_eq!(peeled, tab(&[2, 1], &[], vec![vec![1, 3], vec![2]]));
        assert_eq!(rest, tab(&[2, 1], &[], vec![vec![1, 2], vec![3]]));
        assert_eq!(concat_tableaux(&peeled, &rest).unwrap(), t);
    }

    #[test]
    fn hook_peel_k1_is_identity() {
        let t = tab(&[2, 1], &[], vec![vec![1, 3], vec![2]]);
        let (peeled, rest) = hook_decompose(&t, 1).unwrap();
        assert_eq!(peeled, t);
        assert_eq!(rest.num_boxes(), 0);
    }

    #[test]
    fn hook_peel_rejects_non_hooks() {
        let t = tab(&[2, 2], &[], vec![vec![1, 1], vec![2, 2]]);
        assert!(hook_decompose(&t, 1).is_err());
    }

    #[test]
    fn every_small_hook_point_decomposes() {
        // all lattice points of dilated hooks with h <= 3, at most 5 boxes,
        // k <= 3 peel completely
        for lambda in [vec![2, 1], vec![3, 1], vec![3, 1, 1], vec![2, 1, 1], vec![2, 1, 1, 1]] {
            let s = shape(&lambda, &[]);
            let boxes = s.boxes() as usize;
            for k in 2..=3u64 {
                let spec = PolytopeSpec::weighted(s.clone(), Composition::ones(boxes), 1)
                    .unwrap()
                    .dilate(k)
                    .unwrap();
                for p in spec.lattice_points() {
                    let t = pattern_to_tableau(&p).unwrap();
                    let parts = hook_decompose_all(&t, k).unwrap();
                    assert_eq!(parts.len(), k as usize);
                    let sum = parts[1..]
                        .iter()
                        .try_fold(parts[0].clone(), |acc, q| concat_tableaux(&acc, q))
                        .unwrap();
                    assert_eq!(sum, t);
                    for part in &parts {
                        assert!(part.is_standard());
                    }
                }
            }
        }
    }

    #[test]
    fn reverse_hook_decomposition_small_cases() {
        // (2,2)/(1) and (2,2,2)/(1,1), k <= 3
        for (l, m) in [(vec![2u64, 2], vec![1u64]), (vec![2, 2, 2], vec![1, 1])] {
            let s = shape(&l, &m);
            let boxes = s.boxes() as usize;
            for k in 1..=3u64 {
                let spec = PolytopeSpec::weighted(s.clone(), Composition::ones(boxes), 1)
                    .unwrap()
                    .dilate(k)
                    .unwrap();
                for p in spec.lattice_points() {
                    let t = pattern_to_tableau(&p).unwrap();
                    let (peeled, rest) = reverse_hook_decompose(&t, k).unwrap();
                    if k == 1 {
                        assert_eq!(peeled, t);
                        continue;
                    }
                    assert_eq!(concat_tableaux(&peeled, &rest).unwrap(), t);
                    assert!(peeled.is_standard());
                    assert_eq!(peeled.shape(), &s);
                }
            }
        }
    }

    #[test]
    fn rotation_is_an_involution() {
        let t = tab(&[4, 2], &[1], vec![vec![1, 2, 2], vec![1, 3]]);
        let n = t.max_content();
        let r = rotate_half_turn(&t, n).unwrap();
        assert_eq!(rotate_half_turn(&r, n).unwrap(), t);
    }

    #[test]
    fn column_split_matches_worked_display() {
        // shape (4,3,3,1)/(2,1), k = 3
        let t = tab(
            &[12, 9, 9, 3],
            &[6, 3],
            vec![
                vec![1, 1, 1, 1, 1, 5],
                vec![1, 1, 1, 3, 3, 3],
                vec![1, 2, 2, 2, 2, 2, 4, 4, 5],
                vec![2, 4, 5],
            ],
        );
        let parts = column_split(&t, 3).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(
            parts[0],
            tab(&[4, 3, 3, 1], &[2, 1], vec![vec![1, 1], vec![1, 3], vec![1, 2, 4], vec![2]])
        );
        assert_eq!(
            parts[1],
            tab(&[4, 3, 3, 1], &[2, 1], vec![vec![1, 1], vec![1, 3], vec![2, 2, 4], vec![4]])
        );
        assert_eq!(
            parts[2],
            tab(&[4, 3, 3, 1], &[2, 1], vec![vec![1, 5], vec![1, 3], vec![2, 2, 5], vec![5]])
        );
    }

    #[test]
    fn column_split_k1_is_singleton() {
        let t = tab(&[2, 1], &[1], vec![vec![1], vec![1]]);
        let parts = column_split(&t, 1).unwrap();
        assert_eq!(parts, vec![t]);
    }

    #[test]
    fn column_split_rejects_bad_dilation() {
        let t = tab(&[3, 1], &[1], vec![vec![1, 1], vec![1]]);
        assert!(matches!(column_split(&t, 2), Err(Error::Malformed(_))));
    }

    #[test]
    fn contingency_of_two_row_shape() {
        // shape (3,1)/(1), weight 1^3, tableau rows {1,3},{2}
        let t = tab(&[3, 1], &[1], vec![vec![1, 3], vec![2]]);
        let p = crate::tableau::tableau_to_pattern(&t, 4).unwrap();
        let matrix = to_contingency(&p).unwrap();
        assert_eq!(matrix.entries, vec![vec![1, 0, 1], vec![0, 1, 0]]);
        assert_eq!(matrix.row_sums(), vec![2, 1]);
        assert_eq!(matrix.col_sums(), vec![1, 1, 1]);
        let back = from_contingency(&matrix, &shape(&[3, 1], &[1]), 1).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn birkhoff_three_by_three() {
        // staircase (3,2,1)/(2,1): lattice points at weight 1^3 are the six
        // 3x3 permutation matrices
        let s = shape(&[3, 2, 1], &[2, 1]);
        let spec = PolytopeSpec::weighted(s.clone(), Composition::ones(3), 1).unwrap();
        let points = spec.lattice_points();
        assert_eq!(points.len(), 6);
        let mut seen = Vec::new();
        for p in &points {
            let m = to_contingency(p).unwrap();
            assert_eq!(m.row_sums(), vec![1, 1, 1]);
            assert_eq!(m.col_sums(), vec![1, 1, 1]);
            assert!(m
                .entries
                .iter()
                .all(|row| row.iter().all(|&x| x == 0 || x == 1)));
            assert_eq!(from_contingency(&m, &s, 1).unwrap(), *p);
            assert!(!seen.contains(&m));
            seen.push(m);
        }
    }

    #[test]
    fn contingency_rejects_non_union_shapes() {
        let p = GTPattern::from_i64(vec![vec![0, 0], vec![1, 0], vec![2, 1], vec![2, 2]]).unwrap();
        assert!(to_contingency(&p).is_err());
    }

    #[test]
    fn empty_shape_gives_empty_matrix() {
        let p = GTPattern::from_i64(vec![vec![0], vec![0]]).unwrap();
        let m = to_contingency(&p).unwrap();
        assert_eq!(m.num_rows(), 0);
    }
}

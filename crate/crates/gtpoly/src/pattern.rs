//! Gelfand-Tsetlin patterns with exact rational entries.
//!
//! A pattern is an `m x n` rectangle of non-negative rationals. Row 1 is the
//! bottom row and row `m` the top row, so for a pattern cut out by a skew
//! shape the bottom row is `mu` and the top row is `lambda`; `Display`
//! renders it the other way up, in the usual staggered maths layout.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{format_rational, is_integer, rational_from_json, rational_to_json, Rational};
use crate::shape::SkewShape;
use num::{Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTPattern {
    rows: Vec<Vec<Rational>>, // rows[0] = bottom row
}

/// First violated constraint found by [`GTPattern::validate`]. Rows are
/// 1-based from the bottom, columns 1-based from the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Entry `(row, col)` is negative.
    Negative { row: usize, col: usize },
    /// Row `row` increases between columns `col` and `col + 1`.
    RowOrder { row: usize, col: usize },
    /// Column constraint `x^{row+1}_col >= x^row_col` fails.
    ColumnOrder { row: usize, col: usize },
    /// Diagonal constraint `x^row_col >= x^{row+1}_{col+1}` fails.
    Diagonal { row: usize, col: usize },
}

impl Violation {
    /// The upper of the two pattern rows the violated constraint touches.
    pub fn upper_row(&self) -> usize {
        match *self {
            Violation::Negative { row, .. } | Violation::RowOrder { row, .. } => row,
            Violation::ColumnOrder { row, .. } | Violation::Diagonal { row, .. } => row + 1,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Negative { row, col } => write!(f, "negative entry at row {row}, column {col}"),
            Violation::RowOrder { row, col } => {
                write!(f, "row {row} increases between columns {col} and {}", col + 1)
            }
            Violation::ColumnOrder { row, col } => write!(
                f,
                "column {col} decreases from row {row} to row {}",
                row + 1
            ),
            Violation::Diagonal { row, col } => write!(
                f,
                "diagonal violation: entry (row {row}, col {col}) < entry (row {}, col {})",
                row + 1,
                col + 1
            ),
        }
    }
}

impl GTPattern {
    /// Builds a pattern from rows given bottom first. Rejects ragged or
    /// empty input as malformed; does not check the GT inequalities.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::malformed("pattern needs at least one row"));
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::malformed("ragged pattern rows"));
        }
        Ok(GTPattern { rows })
    }

    pub fn from_i64(rows: Vec<Vec<i64>>) -> Result<Self> {
        GTPattern::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(crate::rational::rat_int).collect())
                .collect(),
        )
    }

    /// Number of rows `m`.
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns `n`.
    pub fn num_cols(&self) -> usize {
        self.rows[0].len()
    }

    /// Entry `x^row_col`, 1-based, row 1 = bottom.
    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.rows[row - 1][col - 1]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: Rational) {
        self.rows[row - 1][col - 1] = value;
    }

    /// Row `i`, 1-based from the bottom.
    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i - 1]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn bottom_row(&self) -> &[Rational] {
        &self.rows[0]
    }

    pub fn top_row(&self) -> &[Rational] {
        &self.rows[self.rows.len() - 1]
    }

    pub fn row_sum(&self, i: usize) -> Rational {
        self.rows[i - 1].iter().sum()
    }

    /// Checks the defining inequalities: entries non-negative, rows weakly
    /// decreasing, columns weakly increasing upwards, and down-right
    /// diagonals weakly decreasing. Returns the first violation found.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let m = self.num_rows();
        let n = self.num_cols();
        for i in 1..=m {
            for j in 1..=n {
                if self.entry(i, j).is_negative() {
                    return Err(Violation::Negative { row: i, col: j });
                }
            }
        }
        for i in 1..=m {
            for j in 1..n {
                if self.entry(i, j) < self.entry(i, j + 1) {
                    return Err(Violation::RowOrder { row: i, col: j });
                }
            }
        }
        for i in 1..m {
            for j in 1..=n {
                if self.entry(i + 1, j) < self.entry(i, j) {
                    return Err(Violation::ColumnOrder { row: i, col: j });
                }
            }
            for j in 1..n {
                if self.entry(i, j) < self.entry(i + 1, j + 1) {
                    return Err(Violation::Diagonal { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// All entries integral.
    pub fn is_integral(&self) -> bool {
        self.rows.iter().flatten().all(is_integer)
    }

    /// Row-sum increments bottom to top; rational for rational patterns.
    pub fn weight(&self) -> Vec<Rational> {
        (1..self.num_rows())
            .map(|i| self.row_sum(i + 1) - self.row_sum(i))
            .collect()
    }

    /// The skew shape cut out by the top and bottom rows. Fails if they are
    /// not integral weakly decreasing vectors with bottom contained in top.
    pub fn boundary_shape(&self) -> Result<SkewShape> {
        let to_partition = |row: &[Rational]| -> Result<Partition> {
            let parts: Result<Vec<u64>> = row
                .iter()
                .map(|x| {
                    if is_integer(x) && !x.is_negative() {
                        Ok(x.numer().try_into().unwrap_or(u64::MAX))
                    } else {
                        Err(Error::domain(format!(
                            "boundary row entry {} is not a non-negative integer",
                            format_rational(x)
                        )))
                    }
                })
                .collect();
            Partition::new(parts?)
        };
        SkewShape::new(to_partition(self.top_row())?, to_partition(self.bottom_row())?)
    }

    /// Entrywise sum (the pattern side of row-wise tableau concatenation).
    pub fn add(&self, other: &GTPattern) -> Result<GTPattern> {
        if self.num_rows() != other.num_rows() || self.num_cols() != other.num_cols() {
            return Err(Error::dimension(format!(
                "cannot add a {}x{} pattern to a {}x{} pattern",
                self.num_rows(),
                self.num_cols(),
                other.num_rows(),
                other.num_cols()
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        GTPattern::new(rows)
    }

    pub fn scale(&self, k: &Rational) -> GTPattern {
        GTPattern {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x * k).collect())
                .collect(),
        }
    }

    /// Appends `count` zero columns on the right.
    pub fn pad_cols(&self, count: usize) -> GTPattern {
        GTPattern {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    r.extend(std::iter::repeat(Rational::zero()).take(count));
                    r
                })
                .collect(),
        }
    }

    /// Flattened coordinates, bottom row first: the canonical ordering used
    /// for lexicographic comparisons and ambient-space vectors.
    pub fn flatten(&self) -> Vec<Rational> {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rows
                .iter()
                .map(|r| serde_json::Value::Array(r.iter().map(rational_to_json).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GTPattern> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::malformed("pattern JSON must be an array of rows"))?;
        let rows: Result<Vec<Vec<Rational>>> = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::malformed("pattern row must be an array"))?
                    .iter()
                    .map(rational_from_json)
                    .collect()
            })
            .collect();
        GTPattern::new(rows?)
    }
}

impl fmt::Debug for GTPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GTPattern{}", self.to_json())
    }
}

impl fmt::Display for GTPattern {
    /// Staggered layout, top row first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.num_rows();
        let cells: Vec<Vec<String>> = (1..=m)
            .rev()
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|s| s.len())
            .max()
            .unwrap_or(1);
        for (k, row) in cells.iter().enumerate() {
            let pad = " ".repeat(k * (width + 1) / 2);
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "{pad}{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    /// The five-row pattern with top row (4,3,2,1) and bottom row (2,1,1,0)
    /// used across the bijection tests.
    pub(crate) fn skew_display_pattern() -> GTPattern {
        GTPattern::from_i64(vec![
            vec![2, 1, 1, 0],
            vec![3, 2, 1, 0],
            vec![3, 3, 1, 1],
            vec![4, 3, 1, 1],
            vec![4, 3, 2, 1],
        ])
        .unwrap()
    }

    #[test]
    fn display_pattern_validates() {
        assert!(skew_display_pattern().validate().is_ok());
    }

    #[test]
    fn all_zero_pattern_validates() {
        let p = GTPattern::from_i64(vec![vec![0; 3]; 3]).unwrap();
        assert!(p.validate().is_ok());
    }

    #[test]
    fn swapped_entries_violate_at_row_two() {
        let mut p = skew_display_pattern();
        let a = p.entry(2, 1).clone();
        let b = p.entry(2, 2).clone();
        p.set_entry(2, 1, b);
        p.set_entry(2, 2, a);
        let v = p.validate().unwrap_err();
        assert_eq!(v.upper_row(), 2);
    }

    #[test]
    fn ragged_rows_are_malformed_not_invalid() {
        let err = GTPattern::new(vec![vec![rat_int(1)], vec![rat_int(1), rat_int(2)]]).unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
    }

    #[test]
    fn weight_of_display_pattern() {
        // row sums 4, 6, 8, 9, 10
        let w = skew_display_pattern().weight();
        assert_eq!(w, vec![rat_int(2), rat_int(2), rat_int(1), rat_int(1)]);
    }

    #[test]
    fn weight_of_constant_rows_is_zero() {
        let p = GTPattern::from_i64(vec![vec![3, 1]; 4]).unwrap();
        assert!(p.weight().iter().all(|w| w.is_zero()));
    }

    #[test]
    fn addition_display() {
        // elementwise sum, checked against the independent per-entry oracle
        let a = GTPattern::from_i64(vec![
            vec![2, 1, 0],
            vec![3, 2, 0],
            vec![3, 3, 1],
            vec![4, 3, 1],
            vec![4, 3, 2],
        ])
        .unwrap();
        let b = GTPattern::from_i64(vec![
            vec![4, 2, 0],
            vec![7, 3, 0],
            vec![7, 4, 3],
            vec![7, 6, 3],
            vec![8, 6, 4],
        ])
        .unwrap();
        let s = a.add(&b).unwrap();
        let expected = GTPattern::from_i64(vec![
            vec![6, 3, 0],
            vec![10, 5, 0],
            vec![10, 7, 4],
            vec![11, 9, 4],
            vec![12, 9, 6],
        ])
        .unwrap();
        assert_eq!(s, expected);
        // oracle: independent elementwise addition
        for i in 1..=a.num_rows() {
            for j in 1..=a.num_cols() {
                assert_eq!(s.entry(i, j), &(a.entry(i, j) + b.entry(i, j)));
            }
        }
        // weights add
        let wsum: Vec<Rational> = a
            .weight()
            .iter()
            .zip(b.weight())
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(s.weight(), wsum);
        // doubling
        assert_eq!(a.add(&a).unwrap(), a.scale(&rat_int(2)));
    }

    #[test]
    fn addition_dimension_mismatch() {
        let a = GTPattern::from_i64(vec![vec![1]]).unwrap();
        let b = GTPattern::from_i64(vec![vec![1, 0]]).unwrap();
        assert!(matches!(a.add(&b), Err(Error::Dimension(_))));
    }

    #[test]
    fn validation_invariant_under_zero_column_padding() {
        let p = skew_display_pattern();
        assert_eq!(p.validate().is_ok(), p.pad_cols(2).validate().is_ok());
        let mut bad = skew_display_pattern();
        bad.set_entry(5, 1, rat_int(0));
        assert_eq!(bad.validate().is_ok(), bad.pad_cols(1).validate().is_ok());
    }

    #[test]
    fn json_round_trip_preserves_rationals() {
        let p = GTPattern::new(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat(3, 2), rat(1, 2)],
            vec![rat_int(3), rat_int(2)],
        ])
        .unwrap();
        let v = p.to_json();
        assert_eq!(v, serde_json::json!([[1, 0], ["3/2", "1/2"], [3, 2]]));
        assert_eq!(GTPattern::from_json(&v).unwrap(), p);
    }

    #[test]
    fn boundary_shape_of_display_pattern() {
        let s = skew_display_pattern().boundary_shape().unwrap();
        assert_eq!(s, SkewShape::from_parts(vec![4, 3, 2, 1], vec![2, 1, 1, 0]).unwrap());
    }
}

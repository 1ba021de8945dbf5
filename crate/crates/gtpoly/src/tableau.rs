//! Semi-standard skew Young tableaux and their correspondence with integral
//! GT-patterns: row `j` of the tableau holds `x^{i+1}_j - x^i_j` boxes of
//! content `i`, so the pattern determines the tableau and vice versa.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::pattern::GTPattern;
use crate::rational::{rat_int, Rational};
use crate::shape::SkewShape;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewTableau {
    shape: SkewShape,
    /// `rows[i]` = contents of the boxes of row `i+1`, left to right.
    rows: Vec<Vec<u32>>,
}

impl SkewTableau {
    /// Builds and checks a tableau: row lengths match the shape, rows weakly
    /// increase, columns strictly increase, contents are positive.
    pub fn new(shape: SkewShape, rows: Vec<Vec<u32>>) -> Result<Self> {
        let nrows = shape.rows();
        if rows.len() != nrows {
            return Err(Error::malformed(format!(
                "tableau has {} rows but shape {shape} has {nrows}",
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            let expect = (shape.lambda.part(i) - shape.mu.part(i)) as usize;
            if row.len() != expect {
                return Err(Error::malformed(format!(
                    "row {} has {} boxes, shape {shape} wants {expect}",
                    i + 1,
                    row.len()
                )));
            }
        }
        let t = SkewTableau { shape, rows };
        t.check_semistandard()?;
        Ok(t)
    }

    fn check_semistandard(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.iter().any(|&c| c == 0) {
                return Err(Error::domain(format!("row {} has content 0", i + 1)));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::domain(format!("row {} is not weakly increasing", i + 1)));
            }
        }
        for i in 1..self.shape.rows() {
            // compare row i and row i+1 (1-based) in every shared column
            for j in 1..=self.shape.cols() {
                if self.shape.has_box(i, j) && self.shape.has_box(i + 1, j) {
                    if self.content_at(i, j) >= self.content_at(i + 1, j) {
                        return Err(Error::domain(format!(
                            "column {j} is not strictly increasing between rows {i} and {}",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty(shape_of_both: Partition) -> Self {
        let rows = vec![Vec::new(); shape_of_both.len()];
        SkewTableau {
            shape: SkewShape::new(shape_of_both.clone(), shape_of_both)
                .expect("lambda/lambda is a valid shape"),
            rows,
        }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Content of the box at 1-based `(row, col)`; the box must exist.
    pub fn content_at(&self, row: usize, col: usize) -> u32 {
        let off = self.shape.mu.part(row - 1) as usize;
        self.rows[row - 1][col - 1 - off]
    }

    pub fn num_boxes(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn max_content(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// How many boxes hold each content `1..=max`: the tableau weight.
    pub fn content_counts(&self, max: u32) -> Vec<u64> {
        let mut counts = vec![0u64; max as usize];
        for &c in self.rows.iter().flatten() {
            if c >= 1 && c <= max {
                counts[c as usize - 1] += 1;
            }
        }
        counts
    }

    /// All distinct contents appear exactly once, i.e. a standard tableau.
    pub fn is_standard(&self) -> bool {
        let n = self.num_boxes() as u32;
        self.content_counts(n).iter().all(|&c| c == 1)
            && self.rows.iter().flatten().all(|&c| c >= 1 && c <= n)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "shape": {"lambda": self.shape.lambda, "mu": self.shape.mu},
            "rows": self.rows,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SkewTableau> {
        let shape = v
            .get("shape")
            .ok_or_else(|| Error::malformed("tableau JSON needs a \"shape\" field"))?;
        let shape: SkewShape = serde_json::from_value(shape.clone())?;
        let rows: Vec<Vec<u32>> = serde_json::from_value(
            v.get("rows")
                .ok_or_else(|| Error::malformed("tableau JSON needs a \"rows\" field"))?
                .clone(),
        )?;
        SkewTableau::new(shape, rows)
    }
}

impl fmt::Debug for SkewTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewTableau{}", self.to_json())
    }
}

impl fmt::Display for SkewTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.shape.rows() {
            let skip = self.shape.mu.part(i - 1) as usize;
            write!(f, "{}", ". ".repeat(skip))?;
            let row: Vec<String> = self.rows[i - 1].iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Tableau of a validated integral pattern: row `j` receives
/// `x^{i+1}_j - x^i_j` boxes of content `i`.
pub fn pattern_to_tableau(p: &GTPattern) -> Result<SkewTableau> {
    if !p.is_integral() {
        return Err(Error::domain("pattern with fractional entries has no tableau"));
    }
    p.validate().map_err(Error::Validation)?;
    let shape = p.boundary_shape()?;
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); shape.rows()];
    for j in 1..=p.num_cols() {
        if j > shape.rows() {
            break;
        }
        for i in 1..p.num_rows() {
            let diff = p.entry(i + 1, j) - p.entry(i, j);
            let count: u64 = diff
                .numer()
                .try_into()
                .map_err(|_| Error::domain("negative box count"))?;
            rows[j - 1].extend(std::iter::repeat(i as u32).take(count as usize));
        }
    }
    SkewTableau::new(shape, rows)
}

/// Pattern of a tableau: `m` rows, `n` columns (defaults to the shape width
/// via [`tableau_to_pattern`]); requires every content `< m`.
pub fn tableau_to_pattern_padded(t: &SkewTableau, m: usize, n: usize) -> Result<GTPattern> {
    if m < 1 {
        return Err(Error::domain("pattern needs at least one row"));
    }
    if t.max_content() as usize > m - 1 {
        return Err(Error::domain(format!(
            "content {} too large for a {m}-row pattern",
            t.max_content()
        )));
    }
    let rows_needed = t.shape().rows();
    if n < rows_needed {
        return Err(Error::dimension(format!(
            "{n} columns cannot hold a shape with {rows_needed} rows"
        )));
    }
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let bottom: Vec<Rational> = (0..n)
        .map(|j| rat_int(t.shape().mu.part(j) as i64))
        .collect();
    let mut prev = bottom.clone();
    rows.push(bottom);
    for content in 1..m {
        let mut next = prev.clone();
        for j in 1..=rows_needed.min(n) {
            let count = t.rows()[j - 1]
                .iter()
                .filter(|&&c| c as usize == content)
                .count();
            next[j - 1] = &prev[j - 1] + rat_int(count as i64);
        }
        rows.push(next.clone());
        prev = next;
    }
    let p = GTPattern::new(rows)?;
    p.validate().map_err(Error::Validation)?;
    Ok(p)
}

/// Pattern of a tableau with the default width (the number of shape rows,
/// which also accommodates the top row).
pub fn tableau_to_pattern(t: &SkewTableau, m: usize) -> Result<GTPattern> {
    tableau_to_pattern_padded(t, m, t.shape().rows())
}

/// Row-wise concatenation: row `i` of the result is the sorted multiset
/// union of the rows. Shapes must be dilations `k1 * (lambda/mu)` and
/// `k2 * (lambda/mu)` of a common base (an all-zero shape is compatible
/// with anything).
pub fn concat_tableaux(a: &SkewTableau, b: &SkewTableau) -> Result<SkewTableau> {
    if a.num_boxes() == 0 && a.shape().boxes() == 0 && a.shape().lambda.is_empty() {
        return Ok(b.clone());
    }
    if b.num_boxes() == 0 && b.shape().boxes() == 0 && b.shape().lambda.is_empty() {
        return Ok(a.clone());
    }
    if !commensurable(a.shape(), b.shape()) {
        return Err(Error::domain(format!(
            "shapes {} and {} are not dilations of a common shape",
            a.shape(),
            b.shape()
        )));
    }
    let rows_n = a.shape().rows().max(b.shape().rows());
    let lambda: Vec<u64> = (0..rows_n)
        .map(|i| a.shape().lambda.part(i) + b.shape().lambda.part(i))
        .collect();
    let mu: Vec<u64> = (0..rows_n)
        .map(|i| a.shape().mu.part(i) + b.shape().mu.part(i))
        .collect();
    let shape = SkewShape::from_parts(lambda, mu)?;
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(rows_n);
    for i in 0..rows_n {
        let mut row: Vec<u32> = Vec::new();
        if i < a.rows().len() {
            row.extend(&a.rows()[i]);
        }
        if i < b.rows().len() {
            row.extend(&b.rows()[i]);
        }
        row.sort_unstable();
        rows.push(row);
    }
    SkewTableau::new(shape, rows)
}

/// True when the shapes are positive rational multiples of one another.
fn commensurable(a: &SkewShape, b: &SkewShape) -> bool {
    let n = a.rows().max(b.rows());
    let parts = |s: &SkewShape| -> Vec<u64> {
        let mut v = s.lambda.padded(n);
        v.extend(s.mu.padded(n));
        v
    };
    let pa = parts(a);
    let pb = parts(b);
    // find the cross ratio from the first nonzero coordinate
    let Some(i0) = (0..pa.len()).find(|&i| pa[i] != 0 || pb[i] != 0) else {
        return true; // both all-zero
    };
    if pa[i0] == 0 || pb[i0] == 0 {
        return false;
    }
    (0..pa.len()).all(|i| pa[i] as u128 * pb[i0] as u128 == pb[i] as u128 * pa[i0] as u128)
}

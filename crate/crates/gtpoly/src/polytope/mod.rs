//! Weight-restricted (and weightless) GT-polytopes.
//!
//! A [`PolytopeSpec`] is the H-description handle `(lambda/mu, w, k)`: the
//! polytope of all patterns with bottom row `k*mu`, top row `k*lambda`, and,
//! when a weight is present, prescribed row-sum increments `k*w_i`. Dilation
//! is literal: the `k`-dilation is the polytope of `(k*lambda/k*mu, k*w)`.

mod dd;
mod idp;
mod triangulation;

pub use idp::{decompose_point, idp_check, IdpVerdict};
pub use triangulation::{
    face_of, has_facet_width_one, is_unimodular_simplex, lattice_dimension, normalized_volume,
    pulling_triangulation, pulling_triangulation_streaming, FaceDescriptor, Simplex,
    TriangulationBudget, VertexOrder,
};

use crate::error::{Error, Result};
use crate::partition::Composition;
use crate::pattern::GTPattern;
use crate::rational::{rat_int, Rational};
use crate::shape::SkewShape;
use num::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeSpec {
    shape: SkewShape,
    weight: Option<Composition>,
    dilation: u64,
    rows: usize,
    cols: usize,
}

impl PolytopeSpec {
    /// Weight-restricted polytope; the pattern has `w.num_parts() + 1` rows.
    pub fn weighted(shape: SkewShape, weight: Composition, dilation: u64) -> Result<Self> {
        if dilation == 0 {
            return Err(Error::domain("dilation must be positive"));
        }
        let rows = weight.num_parts() + 1;
        let cols = shape.rows().max(1);
        Ok(PolytopeSpec {
            shape,
            weight: Some(weight),
            dilation,
            rows,
            cols,
        })
    }

    /// Polytope with fixed top and bottom rows only (no row-sum equalities).
    pub fn weightless(shape: SkewShape, rows: usize, dilation: u64) -> Result<Self> {
        if dilation == 0 {
            return Err(Error::domain("dilation must be positive"));
        }
        if rows < 2 {
            return Err(Error::domain("weightless polytope needs at least two rows"));
        }
        let cols = shape.rows().max(1);
        Ok(PolytopeSpec {
            shape,
            weight: None,
            dilation,
            rows,
            cols,
        })
    }

    /// Widens the patterns to `cols` columns (padding columns are pinned to
    /// zero by the inequalities, so the polytope is unchanged).
    pub fn with_cols(mut self, cols: usize) -> Result<Self> {
        if cols < self.shape.rows() {
            return Err(Error::dimension(format!(
                "{cols} columns cannot hold shape {}",
                self.shape
            )));
        }
        self.cols = cols.max(1);
        Ok(self)
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn weight(&self) -> Option<&Composition> {
        self.weight.as_ref()
    }

    pub fn dilation(&self) -> u64 {
        self.dilation
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// The same handle dilated `k`-fold further.
    pub fn dilate(&self, k: u64) -> Result<PolytopeSpec> {
        let mut spec = self.clone();
        if k == 0 {
            return Err(Error::domain("dilation must be positive"));
        }
        spec.dilation *= k;
        Ok(spec)
    }

    /// Bottom row `k * mu`, padded.
    pub fn bottom_row(&self) -> Vec<u64> {
        (0..self.cols)
            .map(|j| self.shape.mu.part(j) * self.dilation)
            .collect()
    }

    /// Top row `k * lambda`, padded.
    pub fn top_row(&self) -> Vec<u64> {
        (0..self.cols)
            .map(|j| self.shape.lambda.part(j) * self.dilation)
            .collect()
    }

    /// Prescribed row sums bottom to top, when a weight is present.
    pub fn row_sums(&self) -> Option<Vec<u64>> {
        let w = self.weight.as_ref()?;
        let base: u64 = self.bottom_row().iter().sum();
        let mut sums = vec![base];
        for i in 0..w.num_parts() {
            sums.push(sums[i] + w.part(i) * self.dilation);
        }
        Some(sums)
    }

    /// Exact membership test. Errors on dimension mismatch; an invalid or
    /// mismatching pattern is simply not a member.
    pub fn contains(&self, p: &GTPattern) -> Result<bool> {
        if p.num_rows() != self.rows || p.num_cols() != self.cols {
            return Err(Error::dimension(format!(
                "pattern is {}x{}, polytope wants {}x{}",
                p.num_rows(),
                p.num_cols(),
                self.rows,
                self.cols
            )));
        }
        if p.validate().is_err() {
            return Ok(false);
        }
        let eq = |row: &[Rational], want: &[u64]| {
            row.iter()
                .zip(want)
                .all(|(x, &w)| *x == rat_int(w as i64))
        };
        if !eq(p.bottom_row(), &self.bottom_row()) || !eq(p.top_row(), &self.top_row()) {
            return Ok(false);
        }
        if let Some(sums) = self.row_sums() {
            for (i, want) in sums.iter().enumerate() {
                if p.row_sum(i + 1) != rat_int(*want as i64) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All integral points, duplicate-free, ordered lexicographically by
    /// flattened rows (bottom row first). The count is the (skew) Kostka
    /// number when a weight is present.
    pub fn lattice_points(&self) -> Vec<GTPattern> {
        let mut out = Vec::new();
        self.for_each_lattice_point(&mut |p| out.push(p));
        out.sort();
        out
    }

    /// Number of lattice points without materializing them.
    pub fn count_lattice_points(&self) -> u64 {
        let mut count = 0;
        self.for_each_lattice_point(&mut |_| count += 1);
        count
    }

    /// Streams every integral point (in depth-first construction order,
    /// which is already lexicographic by flattened rows).
    pub fn for_each_lattice_point(&self, visit: &mut dyn FnMut(GTPattern)) {
        let bottom = self.bottom_row();
        let top = self.top_row();
        let sums = self.row_sums();
        if let Some(sums) = &sums {
            let top_sum: u64 = top.iter().sum();
            if *sums.last().expect("at least one row") != top_sum {
                return;
            }
        }
        if self.rows == 1 {
            if bottom == top {
                visit(int_pattern(vec![bottom]));
            }
            return;
        }
        let mut rows: Vec<Vec<u64>> = vec![bottom.clone()];
        self.extend_rows(&mut rows, &top, sums.as_deref(), visit);
    }

    fn extend_rows(
        &self,
        rows: &mut Vec<Vec<u64>>,
        top: &[u64],
        sums: Option<&[u64]>,
        out: &mut dyn FnMut(GTPattern),
    ) {
        let level = rows.len(); // building row `level + 1`
        if level == self.rows - 1 {
            let prev = rows.last().expect("nonempty");
            if interlaces(top, prev) {
                if let Some(sums) = sums {
                    let t: u64 = top.iter().sum();
                    if t != sums[self.rows - 1] {
                        return;
                    }
                }
                let mut all = rows.clone();
                all.push(top.to_vec());
                out(int_pattern(all));
            }
            return;
        }
        let prev = rows.last().expect("nonempty").clone();
        let n = self.cols;
        let rows_above = self.rows - (level + 1);
        // bounds: prev_j <= z_j <= min(prev_{j-1}, top_j), plus the
        // look-ahead z_j >= top_{j + rows_above}
        let lo: Vec<u64> = (0..n)
            .map(|j| {
                let look = top.get(j + rows_above).copied().unwrap_or(0);
                prev[j].max(look)
            })
            .collect();
        let hi: Vec<u64> = (0..n)
            .map(|j| {
                if j == 0 {
                    top[0]
                } else {
                    prev[j - 1].min(top[j])
                }
            })
            .collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return;
        }
        let target = sums.map(|s| s[level]);
        let mut z = lo.clone();
        // iterate all rows in the box [lo, hi] satisfying z_j <= z_{j-1}
        // and the optional sum target, in lexicographic order
        fn fill(
            j: usize,
            n: usize,
            z: &mut Vec<u64>,
            lo: &[u64],
            hi: &[u64],
            target: Option<u64>,
            partial: u64,
            spec: &PolytopeSpec,
            rows: &mut Vec<Vec<u64>>,
            top: &[u64],
            sums: Option<&[u64]>,
            out: &mut dyn FnMut(GTPattern),
        ) {
            if j == n {
                if target.map_or(true, |t| partial == t) {
                    rows.push(z.clone());
                    spec.extend_rows(rows, top, sums, out);
                    rows.pop();
                }
                return;
            }
            let cap = if j == 0 { hi[0] } else { hi[j].min(z[j - 1]) };
            if lo[j] > cap {
                return;
            }
            // sum pruning
            let (mut lo_rest, mut hi_rest) = (0u64, 0u64);
            for jj in j + 1..n {
                lo_rest += lo[jj];
                hi_rest += hi[jj]; // loose (ignores the chain z_j decreasing)
            }
            for v in lo[j]..=cap {
                if let Some(t) = target {
                    let now = partial + v;
                    if now + lo_rest > t || now + hi_rest < t {
                        continue;
                    }
                }
                z[j] = v;
                fill(j + 1, n, z, lo, hi, target, partial + v, spec, rows, top, sums, out);
            }
        }
        fill(
            0,
            n,
            &mut z,
            &lo,
            &hi,
            target,
            0,
            self,
            rows,
            top,
            sums,
            out,
        );
    }

    /// Exact vertex set, duplicate-free and canonically ordered. Every
    /// output satisfies the full-column-rank tiling certificate.
    pub fn vertices(&self) -> Result<Vec<GTPattern>> {
        dd::enumerate_vertices(self)
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.vertices()?.is_empty())
    }

    /// Non-empty with every vertex integral.
    pub fn is_integral(&self) -> Result<bool> {
        let v = self.vertices()?;
        Ok(!v.is_empty() && v.iter().all(GTPattern::is_integral))
    }

    /// Vertices with at least one fractional coordinate.
    pub fn nonintegral_vertices(&self) -> Result<Vec<GTPattern>> {
        Ok(self
            .vertices()?
            .into_iter()
            .filter(|v| !v.is_integral())
            .collect())
    }
}

/// Integral patterns with fixed top and bottom rows only. `bound` must be at
/// least `lambda_1` (entries never exceed the top row anyway).
pub fn weightless_points(shape: &SkewShape, rows: usize, bound: u64) -> Result<Vec<GTPattern>> {
    if bound < shape.lambda.part(0) {
        return Err(Error::domain(format!(
            "bound {bound} is below lambda_1 = {}",
            shape.lambda.part(0)
        )));
    }
    Ok(PolytopeSpec::weightless(shape.clone(), rows, 1)?.lattice_points())
}

fn interlaces(upper: &[u64], lower: &[u64]) -> bool {
    let n = upper.len();
    (0..n).all(|j| upper[j] >= lower[j] && (j + 1 >= n || lower[j] >= upper[j + 1]))
}

fn int_pattern(rows: Vec<Vec<u64>>) -> GTPattern {
    GTPattern::new(
        rows.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| Rational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect(),
    )
    .expect("rectangular rows")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    fn shape(l: &[u64], m: &[u64]) -> SkewShape {
        SkewShape::from_parts(l.to_vec(), m.to_vec()).unwrap()
    }

    fn spec(l: &[u64], m: &[u64], w: &[u64]) -> PolytopeSpec {
        PolytopeSpec::weighted(shape(l, m), Composition::new(w.to_vec()), 1).unwrap()
    }

    #[test]
    fn kostka_count_via_hook_lengths() {
        // standard tableaux of straight shape (4,3,1): 8! divided by the
        // product of hook lengths 6*4*3*1*4*2*1*1 = 576 gives 70
        let hooks: u64 = [6, 4, 3, 1, 4, 2, 1, 1].iter().product();
        let expected = (1..=8u64).product::<u64>() / hooks;
        assert_eq!(expected, 70);
        let pts = spec(&[4, 3, 1], &[], &[1; 8]).lattice_points();
        assert_eq!(pts.len(), 70);
        for p in &pts {
            assert!(p.validate().is_ok() && p.is_integral());
        }
    }

    #[test]
    fn two_standard_fillings_of_small_skew_shape() {
        let pts = spec(&[2, 2], &[1], &[1, 1, 1]).lattice_points();
        assert_eq!(pts.len(), 2);
    }

    #[test]
    fn weight_sum_mismatch_gives_no_points() {
        let pts = spec(&[4, 3, 1], &[], &[8]).lattice_points();
        assert!(pts.is_empty());
    }

    #[test]
    fn membership_of_enumerated_points() {
        let s = spec(&[4, 3, 1], &[], &[4, 2, 2]);
        for p in s.lattice_points() {
            assert!(s.contains(&p).unwrap());
        }
    }

    #[test]
    fn membership_dimension_mismatch_errors() {
        let s = spec(&[2, 1], &[], &[1, 1, 1]);
        let p = GTPattern::from_i64(vec![vec![0], vec![1]]).unwrap();
        assert!(s.contains(&p).is_err());
    }

    #[test]
    fn minkowski_sum_of_members() {
        let s1 = spec(&[2, 1], &[], &[1, 1, 1]);
        let s2 = s1.dilate(2).unwrap();
        let s3 = s1.dilate(3).unwrap();
        for a in s1.lattice_points() {
            for b in s2.lattice_points() {
                assert!(s3.contains(&a.add(&b).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn weight_permutation_invariance_of_counts() {
        // |points| is invariant under permuting the weight
        let shapes = [shape(&[3, 2], &[]), shape(&[3, 2, 1], &[1]), shape(&[2, 2], &[])];
        for s in shapes {
            let b = s.boxes();
            for w in Partition::all_of(b) {
                let base = PolytopeSpec::weighted(s.clone(), Composition::from(&w), 1)
                    .unwrap()
                    .lattice_points()
                    .len();
                for perm in permutations(w.parts()) {
                    let count = PolytopeSpec::weighted(s.clone(), Composition::new(perm), 1)
                        .unwrap()
                        .lattice_points()
                        .len();
                    assert_eq!(count, base, "shape {s}, weight {w}");
                }
            }
        }
    }

    fn permutations(parts: &[u64]) -> Vec<Vec<u64>> {
        if parts.len() <= 1 {
            return vec![parts.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..parts.len() {
            let mut rest = parts.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn weightless_points_match_brute_force_for_small_shape() {
        let s = shape(&[2, 1], &[]);
        let pts = weightless_points(&s, 3, 2).unwrap();
        // brute force: middle row (a, b) interlacing (0,0) below, (2,1) above
        let mut count = 0;
        for a in 0..=2u64 {
            for b in 0..=a {
                if interlaces(&[2, 1], &[a, b]) && interlaces(&[a, b], &[0, 0]) {
                    count += 1;
                }
            }
        }
        assert_eq!(pts.len(), count);
        for p in &pts {
            assert!(p.validate().is_ok());
        }
        assert!(weightless_points(&s, 3, 1).is_err());
    }

    #[test]
    fn single_box_weightless_is_one_pattern() {
        let s = shape(&[1], &[]);
        let pts = weightless_points(&s, 2, 1).unwrap();
        assert_eq!(pts.len(), 1);
    }

    #[test]
    fn point_polytope_single_row() {
        let s = PolytopeSpec::weighted(shape(&[2, 1], &[2, 1]), Composition::new(vec![]), 1)
            .unwrap();
        assert_eq!(s.lattice_points().len(), 1);
    }
}

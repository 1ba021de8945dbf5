//! Exact linear algebra over the rationals and the integers: rank, kernel,
//! solving, Bareiss determinants, and saturated integer kernels (the lattice
//! computations behind normalized volumes).

use num::{BigInt, BigRational, One, Signed, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;

fn pivot_weight(x: &BigRational) -> BigInt {
    x.numer().abs() * x.denom()
}

/// Row echelon form in place via exact Gaussian elimination, choosing in each
/// column the pivot with the smallest `|numerator| * denominator` to keep the
/// fractions small. Returns the pivot column of each echelon row.
pub fn row_echelon(mat: &mut QMatrix) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot_row = (r..rows)
            .filter(|&i| !mat[i][c].is_zero())
            .min_by_key(|&i| pivot_weight(&mat[i][c]));
        let Some(p) = pivot_row else { continue };
        mat.swap(r, p);
        let pivot = mat[r][c].clone();
        for j in c..cols {
            mat[r][j] = &mat[r][j] / &pivot;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let factor = mat[i][c].clone();
                for j in c..cols {
                    mat[i][j] = &mat[i][j] - &factor * &mat[r][j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(mat: &QMatrix) -> usize {
    let mut m = mat.clone();
    row_echelon(&mut m).len()
}

/// Basis of the right kernel `{v : M v = 0}`, one vector per free column,
/// in free-column order. Vectors are scaled to primitive integer form with
/// the free coordinate positive.
pub fn kernel_basis(mat: &QMatrix) -> Vec<Vec<BigRational>> {
    let cols = if mat.is_empty() { 0 } else { mat[0].len() };
    let mut m = mat.clone();
    let pivots = row_echelon(&mut m);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(primitive_integer_vector(&v));
    }
    basis
}

/// Scales a rational vector to integer entries with gcd one, keeping the
/// sign of the first nonzero entry... positive.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigRational> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = num::integer::gcd(gcd, x.abs());
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for x in &mut ints {
            *x = &*x / &gcd;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -&*x;
            }
        }
    }
    ints.into_iter().map(BigRational::from_integer).collect()
}

/// One solution of `M x = b`, or `None` if inconsistent.
pub fn solve(mat: &QMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut aug: QMatrix = mat
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_echelon(&mut aug);
    if pivots.last() == Some(&cols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// `rows x cols` integer matrix as a flat vector, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        IMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn to_rational(&self) -> QMatrix {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| BigRational::from_integer(self.at(r, c).clone()))
                    .collect()
            })
            .collect()
    }
}

/// Determinant of a square integer matrix by fraction-free Bareiss
/// elimination.
pub fn bareiss_determinant(m: &IMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.data.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i * n + k].is_zero());
            let Some(s) = swap else {
                return BigInt::zero();
            };
            for c in 0..n {
                a.swap(k * n + c, s * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    sign * a[(n - 1) * n + (n - 1)].clone()
}

/// All `size x size` minors have determinant in `{-1, 0, 1}`.
pub fn minors_in_unit_range(m: &IMatrix, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if size > m.rows || size > m.cols {
        return true; // vacuous
    }
    let row_sets = combinations(m.rows, size);
    let col_sets = combinations(m.cols, size);
    let one = BigInt::one();
    for rs in &row_sets {
        for cs in &col_sets {
            let sub = IMatrix::from_rows(
                rs.iter()
                    .map(|&r| cs.iter().map(|&c| m.at(r, c).clone()).collect())
                    .collect(),
            );
            let d = bareiss_determinant(&sub);
            if d.abs() > one {
                return false;
            }
        }
    }
    true
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let needed = k - cur.len();
        for v in start..=n.saturating_sub(needed) {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Basis of the integer kernel `{x in Z^cols : M x = 0}`, computed by
/// unimodular column operations. The result is a saturated lattice basis:
/// every integer kernel vector is an integer combination of it.
pub fn integer_kernel(m: &IMatrix) -> Vec<Vec<BigInt>> {
    let rows = m.rows;
    let cols = m.cols;
    // work = copy of m; u = identity tracking column ops
    let mut work = m.data.clone();
    let mut u: Vec<BigInt> = vec![BigInt::zero(); cols * cols];
    for i in 0..cols {
        u[i * cols + i] = BigInt::one();
    }
    let col_swap = |a: &mut Vec<BigInt>, w: usize, c1: usize, h: usize, c2: usize| {
        for r in 0..h {
            a.swap(r * w + c1, r * w + c2);
        }
    };
    // add q * source column to target column
    let col_addmul = |a: &mut Vec<BigInt>, w: usize, h: usize, tgt: usize, src: usize, q: &BigInt| {
        for r in 0..h {
            let v = &a[r * w + tgt] + q * &a[r * w + src];
            a[r * w + tgt] = v;
        }
    };
    let mut lead = 0usize; // next column to place a pivot in
    for r in 0..rows {
        if lead == cols {
            break;
        }
        loop {
            // find nonzero entries in row r among columns lead..cols
            let nz: Vec<usize> = (lead..cols).filter(|&c| !work[r * cols + c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                let c = nz[0];
                if c != lead {
                    col_swap(&mut work, cols, c, rows, lead);
                    col_swap(&mut u, cols, c, cols, lead);
                }
                lead += 1;
                break;
            }
            // reduce: pick the column with the smallest nonzero |entry| and
            // subtract multiples of it from the others
            let cmin = *nz
                .iter()
                .min_by_key(|&&c| work[r * cols + c].abs())
                .expect("nonempty");
            let pivot = work[r * cols + cmin].clone();
            for &c in &nz {
                if c == cmin {
                    continue;
                }
                let q = -(&work[r * cols + c] / &pivot); // truncated quotient
                if !q.is_zero() {
                    col_addmul(&mut work, cols, rows, c, cmin, &q);
                    col_addmul(&mut u, cols, cols, c, cmin, &q);
                }
            }
        }
    }
    // columns lead..cols of u span the kernel
    (lead..cols)
        .map(|c| (0..cols).map(|r| u[r * cols + c].clone()).collect())
        .collect()
}

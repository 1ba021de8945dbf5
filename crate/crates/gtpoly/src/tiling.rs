//! Tilings of GT-patterns and the linear-algebra certificates built on them.
//!
//! The tiling is the finest partition of the entries in which equal,
//! diagonally adjacent entries share a tile; the neighbours of `x^i_j` are
//! exactly `x^{i+1}_j`, `x^{i+1}_{j+1}`, `x^{i-1}_j` and `x^{i-1}_{j-1}`
//! (NW, NE, SE, SW - entries in the same row are *not* adjacent). Tiles
//! touching the bottom or top row are fixed; the others are free. The tiling
//! matrix counts free-tile cells per row, and its kernel dimension equals the
//! dimension of the minimal face of the ambient polytope containing the
//! pattern: nullity zero certifies a vertex.

use crate::error::{Error, Result};
use crate::linalg;
use crate::pattern::GTPattern;
use crate::polytope::PolytopeSpec;
use crate::rational::Rational;
use num::{BigInt, BigRational, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    /// Cells as 1-based `(row, col)` with row 1 the bottom row.
    pub cells: Vec<(usize, usize)>,
    pub content: Rational,
    pub fixed: bool,
}

#[derive(Clone, Debug)]
pub struct Tiling {
    /// `tile_id[i][j]` = tile index of cell `(i+1, j+1)`.
    pub tile_id: Vec<Vec<usize>>,
    /// Tiles in numbering order: first-encountered cell scanning the top row
    /// first, left to right.
    pub tiles: Vec<Tile>,
    rows: usize,
    cols: usize,
}

impl Tiling {
    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn tile_of(&self, row: usize, col: usize) -> usize {
        self.tile_id[row - 1][col - 1]
    }

    /// Indices of the free tiles, in numbering order.
    pub fn free_tiles(&self) -> Vec<usize> {
        (0..self.tiles.len()).filter(|&t| !self.tiles[t].fixed).collect()
    }

    /// Whether every tile of `self` is contained in a single tile of
    /// `coarser` (cellwise refinement of partitions).
    pub fn refines(&self, coarser: &Tiling) -> bool {
        if self.rows != coarser.rows || self.cols != coarser.cols {
            return false;
        }
        self.tiles.iter().all(|tile| {
            let mut cells = tile.cells.iter();
            let Some(&(r0, c0)) = cells.next() else {
                return true;
            };
            let host = coarser.tile_of(r0, c0);
            cells.all(|&(r, c)| coarser.tile_of(r, c) == host)
        })
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(size: usize) -> Self {
        Dsu {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Connected components of equal entries under the four diagonal
/// adjacencies.
pub fn compute_tiling(p: &GTPattern) -> Tiling {
    let m = p.num_rows();
    let n = p.num_cols();
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut dsu = Dsu::new(m * n);
    for i in 1..m {
        for j in 1..=n {
            // up-left neighbour x^{i+1}_j
            if p.entry(i, j) == p.entry(i + 1, j) {
                dsu.union(idx(i, j), idx(i + 1, j));
            }
            // up-right neighbour x^{i+1}_{j+1}
            if j < n && p.entry(i, j) == p.entry(i + 1, j + 1) {
                dsu.union(idx(i, j), idx(i + 1, j + 1));
            }
        }
    }
    // number tiles scanning the top row first, left to right
    let mut tile_id = vec![vec![usize::MAX; n]; m];
    let mut tiles: Vec<Tile> = Vec::new();
    let mut root_to_tile = vec![usize::MAX; m * n];
    for i in (1..=m).rev() {
        for j in 1..=n {
            let root = dsu.find(idx(i, j));
            let t = if root_to_tile[root] == usize::MAX {
                tiles.push(Tile {
                    cells: Vec::new(),
                    content: p.entry(i, j).clone(),
                    fixed: false,
                });
                root_to_tile[root] = tiles.len() - 1;
                tiles.len() - 1
            } else {
                root_to_tile[root]
            };
            tile_id[i - 1][j - 1] = t;
            tiles[t].cells.push((i, j));
            if i == 1 || i == m {
                tiles[t].fixed = true;
            }
        }
    }
    Tiling {
        tile_id,
        tiles,
        rows: m,
        cols: n,
    }
}

/// Per-row cell counts of the free tiles: matrix row `i` counts pattern row
/// `m - i + 1` (so the first and last matrix rows are always zero), one
/// column per free tile in numbering order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingMatrix {
    /// `entries[i][j]` = cells of free tile `j` in pattern row `m - i`.
    pub entries: Vec<Vec<u64>>,
    /// Tile indices (into [`Tiling::tiles`]) behind each column.
    pub free_tile_ids: Vec<usize>,
}

impl TilingMatrix {
    pub fn num_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn num_cols(&self) -> usize {
        self.free_tile_ids.len()
    }

    pub fn to_rational(&self) -> linalg::QMatrix {
        self.entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect()
    }

    pub fn to_integer(&self) -> linalg::IMatrix {
        linalg::IMatrix::from_rows(
            self.entries
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }
}

pub fn tiling_matrix(t: &Tiling) -> TilingMatrix {
    let free_tile_ids = t.free_tiles();
    let m = t.num_rows();
    let mut entries = vec![vec![0u64; free_tile_ids.len()]; m];
    for (col, &tid) in free_tile_ids.iter().enumerate() {
        for &(row, _) in &t.tiles[tid].cells {
            entries[m - row][col] += 1;
        }
    }
    TilingMatrix {
        entries,
        free_tile_ids,
    }
}

/// Exact nullity of the tiling matrix over the rationals.
pub fn kernel_dimension(m: &TilingMatrix) -> usize {
    m.num_cols() - linalg::rank(&m.to_rational())
}

/// Exact rational kernel basis, one vector per free column of the echelon
/// form, scaled to primitive integers.
pub fn kernel_basis(m: &TilingMatrix) -> Vec<Vec<Rational>> {
    linalg::kernel_basis(&m.to_rational())
}

/// Dimension of the minimal face of the polytope containing `p`.
pub fn minimal_face_dimension(p: &GTPattern, spec: &PolytopeSpec) -> Result<usize> {
    if !spec.contains(p)? {
        return Err(Error::domain("pattern is not a point of the polytope"));
    }
    Ok(kernel_dimension(&tiling_matrix(&compute_tiling(p))))
}

/// A point of the polytope is a vertex iff the tiling matrix has full
/// column rank.
pub fn is_vertex(p: &GTPattern, spec: &PolytopeSpec) -> Result<bool> {
    Ok(minimal_face_dimension(p, spec)? == 0)
}

/// Vertex certificate without a polytope handle: full column rank of the
/// tiling matrix. Meaningful when `p` is known to lie in its polytope.
pub fn has_full_rank_tiling(p: &GTPattern) -> bool {
    kernel_dimension(&tiling_matrix(&compute_tiling(p))) == 0
}

/// True iff every maximal-rank minor of the tiling matrix has determinant
/// -1, 0 or +1. For a vertex this certifies integrality.
pub fn unimodular_minor_certificate(m: &TilingMatrix) -> bool {
    let im = m.to_integer();
    let r = linalg::rank(&m.to_rational());
    linalg::minors_in_unit_range(&im, r)
}

/// Walks from `p` to a vertex of the minimal face containing it: repeatedly
/// takes the first kernel-basis vector of the tiling matrix and moves the
/// free-tile contents maximally in the `+` direction (falling back to `-`),
/// until the tiling matrix has full column rank. Fixed tiles never move.
pub fn push_to_vertex(p: &GTPattern, spec: &PolytopeSpec) -> Result<GTPattern> {
    if !spec.contains(p)? {
        return Err(Error::domain("pattern is not a point of the polytope"));
    }
    let mut current = p.clone();
    loop {
        let tiling = compute_tiling(&current);
        let matrix = tiling_matrix(&tiling);
        let kernel = kernel_basis(&matrix);
        let Some(direction) = kernel.first() else {
            return Ok(current);
        };
        // content delta per cell: direction is indexed by free-tile column
        let mut delta = vec![vec![Rational::zero(); current.num_cols()]; current.num_rows()];
        for (col, &tid) in matrix.free_tile_ids.iter().enumerate() {
            if direction[col].is_zero() {
                continue;
            }
            for &(r, c) in &tiling.tiles[tid].cells {
                delta[r - 1][c - 1] = direction[col].clone();
            }
        }
        let step = max_feasible_step(&current, &delta);
        let stepped = apply_delta(&current, &delta, &step);
        debug_assert!(stepped.validate().is_ok());
        current = stepped;
    }
}

/// Largest `t` (positive if possible, otherwise the most negative) keeping
/// `p + t * delta` inside the GT inequalities. The pattern is bounded, so a
/// finite optimum exists in at least one direction.
fn max_feasible_step(p: &GTPattern, delta: &[Vec<Rational>]) -> Rational {
    let m = p.num_rows();
    let n = p.num_cols();
    let mut upper: Option<Rational> = None; // max t >= 0
    let mut lower: Option<Rational> = None; // min t <= 0
    let mut constrain = |lhs_val: &Rational, lhs_d: &Rational, rhs_val: &Rational, rhs_d: &Rational| {
        // need lhs_val + t lhs_d >= rhs_val + t rhs_d
        let slope = lhs_d - rhs_d;
        if slope.is_zero() {
            return;
        }
        let gap = lhs_val - rhs_val; // >= 0 at the current point
        let bound = -&gap / &slope;
        if slope.is_negative() {
            // t <= -gap/slope
            if upper.as_ref().map_or(true, |u| bound < *u) {
                upper = Some(bound);
            }
        } else {
            // t >= -gap/slope
            if lower.as_ref().map_or(true, |l| bound > *l) {
                lower = Some(bound);
            }
        }
    };
    let zero_d = Rational::zero();
    for i in 1..=m {
        for j in 1..=n {
            // non-negativity: entry + t d >= 0
            constrain(p.entry(i, j), &delta[i - 1][j - 1], &Rational::zero(), &zero_d);
            if i < m {
                // column: x^{i+1}_j >= x^i_j
                constrain(
                    p.entry(i + 1, j),
                    &delta[i][j - 1],
                    p.entry(i, j),
                    &delta[i - 1][j - 1],
                );
                // diagonal: x^i_j >= x^{i+1}_{j+1}
                if j < n {
                    constrain(
                        p.entry(i, j),
                        &delta[i - 1][j - 1],
                        p.entry(i + 1, j + 1),
                        &delta[i][j],
                    );
                }
            }
        }
    }
    match (upper, lower) {
        (Some(u), _) if u.is_positive() => u,
        (_, Some(l)) if l.is_negative() => l,
        (Some(u), _) => u, // degenerate: no strict move possible
        (None, Some(l)) => l,
        (None, None) => Rational::zero(),
    }
}

fn apply_delta(p: &GTPattern, delta: &[Vec<Rational>], t: &Rational) -> GTPattern {
    let rows = p
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| x + t * &delta[i][j])
                .collect()
        })
        .collect();
    GTPattern::new(rows).expect("same dimensions as a valid pattern")
}

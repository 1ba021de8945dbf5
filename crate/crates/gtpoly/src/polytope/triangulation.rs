//! Pulling triangulations, normalized volumes, and the facet-width-one
//! certificate.
//!
//! The pulling triangulation of a polytope under a total vertex order is
//! defined recursively: if the face's vertices are affinely independent they
//! form the single simplex; otherwise the last vertex in the order is pulled
//! and joined with the recursive triangulations of the facets avoiding it.
//! Normalized volumes are measured in the lattice of integer points of the
//! affine hull, obtained by an exact integer kernel computation.

use super::PolytopeSpec;
use crate::error::{Error, Result};
use crate::linalg::{self, IMatrix, QMatrix};
use crate::pattern::GTPattern;
use num::{BigInt, BigRational, One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use std::collections::HashMap;

/// A face handle: the inequality indices forced to equality and the exact
/// affine dimension of the face they cut out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub tight: Vec<usize>,
    pub dimension: usize,
}

/// A full-dimensional simplex of the triangulation with its normalized
/// volume (1 = unimodular).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<GTPattern>,
    pub normalized_volume: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexOrder {
    /// Ascending lexicographic order on flattened coordinates; the
    /// lexicographically largest vertex is pulled first.
    Lex,
    /// The reverse of `Lex`: the smallest vertex is pulled first.
    RevLex,
    /// Deterministic shuffle of the lexicographic order.
    Shuffled { seed: u64 },
    /// An explicit permutation of the vertex set; the last listed vertex is
    /// pulled first.
    Explicit(Vec<GTPattern>),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TriangulationBudget {
    /// Abort after this many simplices (`None` = unbounded).
    pub max_simplices: Option<u64>,
}

/// Collects the full pulling triangulation. Errors if the polytope is empty
/// or has a fractional vertex.
pub fn pulling_triangulation(spec: &PolytopeSpec, order: &VertexOrder) -> Result<Vec<Simplex>> {
    let mut out = Vec::new();
    let complete = pulling_triangulation_streaming(
        spec,
        order,
        TriangulationBudget::default(),
        &mut |s: &Simplex| out.push(s.clone()),
    )?;
    debug_assert!(complete);
    Ok(out)
}

/// Streams the pulling simplices into `visit`; returns `Ok(false)` when the
/// simplex budget ran out before the triangulation was complete.
pub fn pulling_triangulation_streaming(
    spec: &PolytopeSpec,
    order: &VertexOrder,
    budget: TriangulationBudget,
    visit: &mut dyn FnMut(&Simplex),
) -> Result<bool> {
    let ctx = FaceCtx::build(spec, order)?;
    let all: Vec<u32> = (0..ctx.verts.len() as u32).collect();
    let mut state = PullState {
        ctx,
        emitted: 0,
        budget: budget.max_simplices,
        visit,
    };
    let complete = state.pull(&all, &mut Vec::new());
    Ok(complete)
}

/// Sum of the normalized volumes of the pulling simplices (independent of
/// the order).
pub fn normalized_volume(spec: &PolytopeSpec) -> Result<BigInt> {
    let mut total = BigInt::zero();
    pulling_triangulation_streaming(
        spec,
        &VertexOrder::Lex,
        TriangulationBudget::default(),
        &mut |s| total += &s.normalized_volume,
    )?;
    Ok(total)
}

/// Integral, vertex count = dimension + 1, and normalized volume one.
pub fn is_unimodular_simplex(spec: &PolytopeSpec) -> Result<bool> {
    let verts = spec.vertices()?;
    if verts.is_empty() || !verts.iter().all(GTPattern::is_integral) {
        return Ok(false);
    }
    let flat: Vec<Vec<BigRational>> = verts.iter().map(GTPattern::flatten).collect();
    let dim = affine_dimension(&flat);
    if verts.len() != dim + 1 {
        return Ok(false);
    }
    let chart = LatticeChart::build(&flat)?;
    let vol = simplex_volume(&chart, &flat, &(0..verts.len() as u32).collect::<Vec<_>>());
    Ok(vol.is_one())
}

/// Dimension of the affine hull of the vertex set.
pub fn lattice_dimension(spec: &PolytopeSpec) -> Result<usize> {
    let verts = spec.vertices()?;
    if verts.is_empty() {
        return Err(Error::domain("empty polytope has no affine hull"));
    }
    let flat: Vec<Vec<BigRational>> = verts.iter().map(GTPattern::flatten).collect();
    Ok(affine_dimension(&flat))
}

/// Facet-width-one certificate: for every facet-defining inequality, the
/// primitive functional (with respect to the lattice of integer points of
/// the affine hull) takes exactly the values 0 and 1 on the polytope. An
/// integral polytope has this property iff every pulling triangulation, for
/// every vertex order, is unimodular.
pub fn has_facet_width_one(spec: &PolytopeSpec) -> Result<bool> {
    let ctx = FaceCtx::build(spec, &VertexOrder::Lex)?;
    let all: Vec<u32> = (0..ctx.verts.len() as u32).collect();
    let dim = ctx.dim_of(&all);
    if dim == 0 {
        return Ok(true);
    }
    for (i, ineq) in ctx.ineqs.iter().enumerate() {
        let tight: Vec<u32> = all
            .iter()
            .copied()
            .filter(|&v| ctx.tight[v as usize][i])
            .collect();
        if tight.is_empty() || tight.len() == all.len() {
            continue;
        }
        if ctx.dim_of(&tight) != dim - 1 {
            continue; // not facet-defining
        }
        // primitive functional on the lattice
        let w: Vec<BigInt> = ctx
            .chart
            .basis
            .iter()
            .map(|b| ineq.apply_int(b))
            .collect();
        let mut g = BigInt::zero();
        for x in &w {
            g = num::integer::gcd(g, x.abs());
        }
        if g.is_zero() {
            continue; // constant on the affine hull
        }
        let values: Vec<BigInt> = ctx.verts_int.iter().map(|v| ineq.apply_int(v)).collect();
        let max = values.iter().max().expect("nonempty").clone();
        let min = values.iter().min().expect("nonempty").clone();
        if (max - min) != g {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A homogeneous linear functional over flattened pattern coordinates.
struct LinearForm {
    terms: Vec<(usize, i64)>,
}

impl LinearForm {
    fn apply_int(&self, x: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for &(c, s) in &self.terms {
            if s == 1 {
                acc += &x[c];
            } else {
                acc -= &x[c];
            }
        }
        acc
    }
}

struct LatticeChart {
    origin: Vec<BigInt>,
    /// Basis of the saturated lattice of integer points of the affine hull,
    /// written in ambient coordinates.
    basis: Vec<Vec<BigInt>>,
    /// Columns of `basis` as a rational system for coordinate solving.
    solver: QMatrix,
}

impl LatticeChart {
    fn build(flat_vertices: &[Vec<BigRational>]) -> Result<Self> {
        let origin_q = &flat_vertices[0];
        let n = origin_q.len();
        let origin: Vec<BigInt> = origin_q
            .iter()
            .map(|x| {
                if x.denom().is_one() {
                    Ok(x.numer().clone())
                } else {
                    Err(Error::domain("triangulation needs integral vertices"))
                }
            })
            .collect::<Result<_>>()?;
        let edges: Vec<Vec<BigRational>> = flat_vertices[1..]
            .iter()
            .map(|v| v.iter().zip(origin_q).map(|(a, b)| a - b).collect())
            .collect();
        let basis: Vec<Vec<BigInt>> = if edges.is_empty() || linalg::rank(&edges) == 0 {
            Vec::new()
        } else {
            let annihilator = linalg::kernel_basis(&edges); // basis of U-perp
            if annihilator.is_empty() {
                (0..n)
                    .map(|k| {
                        let mut e = vec![BigInt::zero(); n];
                        e[k] = BigInt::one();
                        e
                    })
                    .collect()
            } else {
                let c = IMatrix::from_rows(
                    annihilator
                        .iter()
                        .map(|row| row.iter().map(|x| x.numer().clone()).collect())
                        .collect(),
                );
                linalg::integer_kernel(&c)
            }
        };
        let d = basis.len();
        let solver: QMatrix = (0..n)
            .map(|coord| {
                (0..d)
                    .map(|k| BigRational::from_integer(basis[k][coord].clone()))
                    .collect()
            })
            .collect();
        Ok(LatticeChart {
            origin,
            basis,
            solver,
        })
    }

    /// Integer coordinates of a lattice point of the affine hull.
    fn coords(&self, v: &[BigRational]) -> Vec<BigInt> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        let rhs: Vec<BigRational> = v
            .iter()
            .zip(&self.origin)
            .map(|(x, o)| x - BigRational::from_integer(o.clone()))
            .collect();
        let sol = linalg::solve(&self.solver, &rhs)
            .expect("lattice point lies in the affine hull");
        sol.into_iter()
            .map(|c| {
                debug_assert!(c.denom().is_one(), "saturated basis gives integer coords");
                c.numer().clone()
            })
            .collect()
    }
}

fn affine_dimension(flat_vertices: &[Vec<BigRational>]) -> usize {
    if flat_vertices.len() <= 1 {
        return 0;
    }
    let edges: QMatrix = flat_vertices[1..]
        .iter()
        .map(|v| {
            v.iter()
                .zip(&flat_vertices[0])
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    linalg::rank(&edges)
}

fn simplex_volume(chart: &LatticeChart, flat: &[Vec<BigRational>], idx: &[u32]) -> BigInt {
    let d = idx.len() - 1;
    if d == 0 {
        return BigInt::one();
    }
    let base = chart.coords(&flat[idx[0] as usize]);
    let rows: Vec<Vec<BigInt>> = idx[1..]
        .iter()
        .map(|&v| {
            chart
                .coords(&flat[v as usize])
                .iter()
                .zip(&base)
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    debug_assert!(rows.iter().all(|r| r.len() == d), "simplex of full dimension");
    linalg::bareiss_determinant(&IMatrix::from_rows(rows)).abs()
}

struct FaceCtx {
    verts: Vec<GTPattern>,
    flat: Vec<Vec<BigRational>>,
    verts_int: Vec<Vec<BigInt>>,
    /// Rank in the pull order; the face's maximum rank is pulled.
    rank: Vec<usize>,
    ineqs: Vec<LinearForm>,
    /// `tight[v][i]` = inequality `i` is an equality at vertex `v`.
    tight: Vec<Vec<bool>>,
    chart: LatticeChart,
    dim_memo: std::cell::RefCell<HashMap<Vec<u32>, usize>>,
    facet_memo: std::cell::RefCell<HashMap<Vec<u32>, Vec<Vec<u32>>>>,
}

impl FaceCtx {
    fn build(spec: &PolytopeSpec, order: &VertexOrder) -> Result<FaceCtx> {
        let verts = spec.vertices()?;
        if verts.is_empty() {
            return Err(Error::domain("cannot triangulate an empty polytope"));
        }
        if !verts.iter().all(GTPattern::is_integral) {
            return Err(Error::domain(
                "pulling triangulation is defined here for integral polytopes",
            ));
        }
        let flat: Vec<Vec<BigRational>> = verts.iter().map(GTPattern::flatten).collect();
        let verts_int: Vec<Vec<BigInt>> = flat
            .iter()
            .map(|v| v.iter().map(|x| x.numer().clone()).collect())
            .collect();
        let rank = order_ranks(&verts, order)?;
        let m = spec.num_rows();
        let n = spec.num_cols();
        let coord = |i: usize, j: usize| (i - 1) * n + (j - 1);
        let mut ineqs = Vec::new();
        for i in 1..m {
            for j in 1..=n {
                ineqs.push(LinearForm {
                    terms: vec![(coord(i + 1, j), 1), (coord(i, j), -1)],
                });
                if j < n {
                    ineqs.push(LinearForm {
                        terms: vec![(coord(i, j), 1), (coord(i + 1, j + 1), -1)],
                    });
                }
            }
        }
        let tight: Vec<Vec<bool>> = verts_int
            .iter()
            .map(|v| ineqs.iter().map(|f| f.apply_int(v).is_zero()).collect())
            .collect();
        let chart = LatticeChart::build(&flat)?;
        Ok(FaceCtx {
            verts,
            flat,
            verts_int,
            rank,
            ineqs,
            tight,
            chart,
            dim_memo: Default::default(),
            facet_memo: Default::default(),
        })
    }

    fn dim_of(&self, face: &[u32]) -> usize {
        if face.len() <= 1 {
            return 0;
        }
        if let Some(&d) = self.dim_memo.borrow().get(face) {
            return d;
        }
        let pts: Vec<Vec<BigRational>> =
            face.iter().map(|&v| self.flat[v as usize].clone()).collect();
        let d = affine_dimension(&pts);
        self.dim_memo.borrow_mut().insert(face.to_vec(), d);
        d
    }

    /// Facets of the face spanned by `face` (vertex sets, deduplicated).
    fn facets_of(&self, face: &[u32]) -> Vec<Vec<u32>> {
        if let Some(f) = self.facet_memo.borrow().get(face) {
            return f.clone();
        }
        let dface = self.dim_of(face);
        let mut seen: Vec<Vec<u32>> = Vec::new();
        for i in 0..self.ineqs.len() {
            let tight_verts: Vec<u32> = face
                .iter()
                .copied()
                .filter(|&v| self.tight[v as usize][i])
                .collect();
            if tight_verts.is_empty() || tight_verts.len() == face.len() {
                continue;
            }
            if self.dim_of(&tight_verts) + 1 != dface {
                continue;
            }
            if !seen.contains(&tight_verts) {
                seen.push(tight_verts);
            }
        }
        self.facet_memo
            .borrow_mut()
            .insert(face.to_vec(), seen.clone());
        seen
    }

    /// The face descriptor for a vertex set: all inequalities tight on the
    /// whole face, plus its exact dimension.
    fn describe(&self, face: &[u32]) -> FaceDescriptor {
        let tight = (0..self.ineqs.len())
            .filter(|&i| face.iter().all(|&v| self.tight[v as usize][i]))
            .collect();
        FaceDescriptor {
            tight,
            dimension: self.dim_of(face),
        }
    }
}

struct PullState<'a> {
    ctx: FaceCtx,
    emitted: u64,
    budget: Option<u64>,
    visit: &'a mut dyn FnMut(&Simplex),
}

impl PullState<'_> {
    /// Returns false when the budget ran out.
    fn pull(&mut self, face: &[u32], pulled: &mut Vec<u32>) -> bool {
        let d = self.ctx.dim_of(face);
        if face.len() == d + 1 {
            if let Some(max) = self.budget {
                if self.emitted >= max {
                    return false;
                }
            }
            self.emitted += 1;
            let mut all: Vec<u32> = pulled.clone();
            all.extend_from_slice(face);
            let volume = simplex_volume(&self.ctx.chart, &self.ctx.flat, &all);
            let simplex = Simplex {
                vertices: all
                    .iter()
                    .map(|&v| self.ctx.verts[v as usize].clone())
                    .collect(),
                normalized_volume: volume,
            };
            (self.visit)(&simplex);
            return true;
        }
        let &p = face
            .iter()
            .max_by_key(|&&v| self.ctx.rank[v as usize])
            .expect("nonempty face");
        pulled.push(p);
        for facet in self.ctx.facets_of(face) {
            if facet.contains(&p) {
                continue;
            }
            if !self.pull(&facet, pulled) {
                pulled.pop();
                return false;
            }
        }
        pulled.pop();
        true
    }
}

fn order_ranks(verts: &[GTPattern], order: &VertexOrder) -> Result<Vec<usize>> {
    let n = verts.len();
    match order {
        VertexOrder::Lex => Ok((0..n).collect()),
        VertexOrder::RevLex => Ok((0..n).rev().collect()),
        VertexOrder::Shuffled { seed } => {
            let mut idx: Vec<usize> = (0..n).collect();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            idx.shuffle(&mut rng);
            let mut rank = vec![0; n];
            for (pos, &v) in idx.iter().enumerate() {
                rank[v] = pos;
            }
            Ok(rank)
        }
        VertexOrder::Explicit(list) => {
            if list.len() != n {
                return Err(Error::domain(format!(
                    "explicit order lists {} vertices, polytope has {n}",
                    list.len()
                )));
            }
            let mut rank = vec![usize::MAX; n];
            for (pos, p) in list.iter().enumerate() {
                let Some(v) = verts.iter().position(|q| q == p) else {
                    return Err(Error::domain(
                        "explicit order contains a pattern that is not a vertex",
                    ));
                };
                if rank[v] != usize::MAX {
                    return Err(Error::domain("explicit order repeats a vertex"));
                }
                rank[v] = pos;
            }
            Ok(rank)
        }
    }
}

/// Public wrapper around the face machinery: descriptor of the smallest face
/// containing a set of vertices of the polytope.
pub fn face_of(spec: &PolytopeSpec, members: &[GTPattern]) -> Result<FaceDescriptor> {
    let ctx = FaceCtx::build(spec, &VertexOrder::Lex)?;
    let idx: Result<Vec<u32>> = members
        .iter()
        .map(|p| {
            ctx.verts
                .iter()
                .position(|q| q == p)
                .map(|i| i as u32)
                .ok_or_else(|| Error::domain("pattern is not a vertex of the polytope"))
        })
        .collect();
    Ok(ctx.describe(&idx?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Composition;
    use crate::shape::SkewShape;

    fn spec(l: &[u64], m: &[u64], w: &[u64]) -> PolytopeSpec {
        PolytopeSpec::weighted(
            SkewShape::from_parts(l.to_vec(), m.to_vec()).unwrap(),
            Composition::new(w.to_vec()),
            1,
        )
        .unwrap()
    }

    #[test]
    fn segment_gives_one_unimodular_simplex() {
        let s = spec(&[2, 2], &[], &[1; 4]);
        let tri = pulling_triangulation(&s, &VertexOrder::Lex).unwrap();
        assert_eq!(tri.len(), 1);
        assert_eq!(tri[0].vertices.len(), 2);
        assert!(tri[0].normalized_volume.is_one());
    }

    #[test]
    fn simplex_polytope_triangulates_to_itself() {
        let s = spec(&[4, 3, 1], &[], &[4, 2, 2]);
        assert!(is_unimodular_simplex(&s).unwrap());
        let tri = pulling_triangulation(&s, &VertexOrder::Lex).unwrap();
        assert_eq!(tri.len(), 1);
        assert!(tri[0].normalized_volume.is_one());
    }

    #[test]
    fn integral_non_simplex_node() {
        let s = spec(&[4, 3, 1], &[], &[2, 2, 2, 2]);
        assert!(s.is_integral().unwrap());
        assert!(!is_unimodular_simplex(&s).unwrap());
    }

    #[test]
    fn point_polytope_is_unimodular_simplex() {
        let s = spec(&[2, 1], &[2, 1], &[0, 0]);
        assert!(is_unimodular_simplex(&s).unwrap());
    }

    #[test]
    fn volume_is_order_independent_and_counts_match() {
        let s = spec(&[3, 1, 1], &[], &[1; 5]);
        let orders = [
            VertexOrder::Lex,
            VertexOrder::RevLex,
            VertexOrder::Shuffled { seed: 7 },
        ];
        let volumes: Vec<BigInt> = orders
            .iter()
            .map(|o| {
                pulling_triangulation(&s, o)
                    .unwrap()
                    .iter()
                    .map(|s| s.normalized_volume.clone())
                    .sum()
            })
            .collect();
        assert_eq!(volumes[0], volumes[1]);
        assert_eq!(volumes[0], volumes[2]);
    }

    #[test]
    fn weight_one_triangulations_are_unimodular() {
        // an integral weight-1 polytope: all pulled simplices have volume 1
        let s = spec(&[3, 1], &[], &[1; 4]);
        for order in [VertexOrder::Lex, VertexOrder::RevLex, VertexOrder::Shuffled { seed: 1 }] {
            for simplex in pulling_triangulation(&s, &order).unwrap() {
                assert!(simplex.normalized_volume.is_one());
            }
        }
        assert!(has_facet_width_one(&s).unwrap());
    }

    #[test]
    fn general_weight_polytope_can_fail_facet_width() {
        // two disjoint rows of two boxes at weight (2,2): a segment from
        // (4,0) to (2,2) in the middle row, with (3,1) a lattice non-vertex,
        // so the facet functional has width 2
        let s = spec(&[4, 2], &[2], &[2, 2]);
        let verts = s.vertices().unwrap();
        assert_eq!(verts.len(), 2);
        assert!(verts.iter().all(GTPattern::is_integral));
        let points = s.lattice_points();
        assert_eq!(points.len(), 3);
        assert!(!has_facet_width_one(&s).unwrap());
    }

    #[test]
    fn budget_stops_streaming() {
        let s = spec(&[3, 1, 1], &[], &[1; 5]);
        let mut count = 0u64;
        let complete = pulling_triangulation_streaming(
            &s,
            &VertexOrder::Lex,
            TriangulationBudget {
                max_simplices: Some(1),
            },
            &mut |_| count += 1,
        )
        .unwrap();
        assert!(!complete);
        assert_eq!(count, 1);
    }

    #[test]
    fn explicit_order_must_be_a_permutation() {
        let s = spec(&[2, 2], &[], &[1; 4]);
        let verts = s.vertices().unwrap();
        assert!(pulling_triangulation(&s, &VertexOrder::Explicit(vec![verts[0].clone()])).is_err());
        let mut order = verts.clone();
        order.reverse();
        assert!(pulling_triangulation(&s, &VertexOrder::Explicit(order)).is_ok());
    }

    #[test]
    fn face_descriptor_of_whole_polytope() {
        let s = spec(&[2, 2], &[], &[1; 4]);
        let verts = s.vertices().unwrap();
        let f = face_of(&s, &verts).unwrap();
        assert_eq!(f.dimension, 1);
        let v0 = face_of(&s, &verts[..1]).unwrap();
        assert_eq!(v0.dimension, 0);
        assert!(v0.tight.len() > f.tight.len());
    }
}

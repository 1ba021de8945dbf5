//! Exact vertex enumeration by the double description method.
//!
//! The H-description uses only the interior rows as variables; boundary rows
//! and row sums are equalities. The equalities are eliminated by an affine
//! parameterization of their solution set, the remaining inequality system is
//! homogenized to a pointed cone in one extra dimension, and the extreme rays
//! are built up one halfspace at a time starting from a full lineality basis.
//! Rays with a positive homogenizing coordinate are the vertices.

use super::PolytopeSpec;
use crate::error::{Error, Result};
use crate::linalg;
use crate::pattern::GTPattern;
use crate::rational::Rational;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Inequality system `rows * x >= 0` over homogenized coordinates
/// `(u_1..u_d, t)`.
struct ConeSystem {
    rows: Vec<Vec<BigInt>>,
    dim: usize, // d + 1
}

/// Affine map `x = origin + basis * u` from parameter space back to the
/// interior-entry coordinates.
struct AffineChart {
    origin: Vec<BigRational>,
    basis: Vec<Vec<BigRational>>, // basis[k] = direction of u_k
}

pub fn enumerate_vertices(spec: &PolytopeSpec) -> Result<Vec<GTPattern>> {
    let m = spec.num_rows();
    let n = spec.num_cols();
    let bottom: Vec<BigRational> = spec
        .bottom_row()
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    let top: Vec<BigRational> = spec
        .top_row()
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect();

    // No interior rows: the polytope is a single point or empty.
    if m <= 2 {
        let candidate = if m == 1 {
            GTPattern::new(vec![bottom.clone()])?
        } else {
            GTPattern::new(vec![bottom.clone(), top.clone()])?
        };
        return Ok(if spec.contains(&candidate)? {
            vec![candidate]
        } else {
            Vec::new()
        });
    }

    let vars = (m - 2) * n;
    let vidx = |i: usize, j: usize| (i - 2) * n + (j - 1); // i in 2..=m-1

    // Inequalities A x >= b over the interior variables.
    let mut ineq_a: Vec<Vec<BigRational>> = Vec::new();
    let mut ineq_b: Vec<BigRational> = Vec::new();
    let mut push = |coeffs: Vec<(usize, i64)>, rhs: BigRational| {
        let mut row = vec![BigRational::zero(); vars];
        for (v, c) in coeffs {
            row[v] += BigRational::from_integer(BigInt::from(c));
        }
        ineq_a.push(row);
        ineq_b.push(rhs);
    };
    // Boundary constraints first (they carry the constants that bound the
    // cone early), then the interior adjacencies.
    for j in 1..=n {
        // row 2 against the bottom row: x_{2,j} >= mu_j and mu_j >= x_{2,j+1}
        push(vec![(vidx(2, j), 1)], bottom[j - 1].clone());
        if j < n {
            push(vec![(vidx(2, j + 1), -1)], -bottom[j - 1].clone());
        }
        // top row against row m-1: lambda_j >= x_{m-1,j} and x_{m-1,j} >= lambda_{j+1}
        push(vec![(vidx(m - 1, j), -1)], -top[j - 1].clone());
        if j < n {
            push(vec![(vidx(m - 1, j), 1)], top[j].clone());
        }
    }
    for i in 2..m - 1 {
        for j in 1..=n {
            push(
                vec![(vidx(i + 1, j), 1), (vidx(i, j), -1)],
                BigRational::zero(),
            );
            if j < n {
                push(
                    vec![(vidx(i, j), 1), (vidx(i + 1, j + 1), -1)],
                    BigRational::zero(),
                );
            }
        }
    }

    // Row-sum equalities when a weight is present.
    let mut eq_a: Vec<Vec<BigRational>> = Vec::new();
    let mut eq_b: Vec<BigRational> = Vec::new();
    if let Some(sums) = spec.row_sums() {
        let top_sum: BigRational = top.iter().sum();
        if top_sum != BigRational::from_integer(BigInt::from(sums[m - 1])) {
            return Ok(Vec::new());
        }
        let bottom_sum: BigRational = bottom.iter().sum();
        if bottom_sum != BigRational::from_integer(BigInt::from(sums[0])) {
            return Ok(Vec::new());
        }
        for i in 2..m {
            let mut row = vec![BigRational::zero(); vars];
            for j in 1..=n {
                row[vidx(i, j)] = BigRational::one();
            }
            eq_a.push(row);
            eq_b.push(BigRational::from_integer(BigInt::from(sums[i - 1])));
        }
    }

    // Parameterize the equality set: x = origin + basis * u.
    let chart = if eq_a.is_empty() {
        AffineChart {
            origin: vec![BigRational::zero(); vars],
            basis: (0..vars)
                .map(|k| {
                    let mut e = vec![BigRational::zero(); vars];
                    e[k] = BigRational::one();
                    e
                })
                .collect(),
        }
    } else {
        let Some(origin) = linalg::solve(&eq_a, &eq_b) else {
            return Ok(Vec::new()); // inconsistent equalities
        };
        AffineChart {
            origin,
            basis: linalg::kernel_basis(&eq_a),
        }
    };
    let d = chart.basis.len();

    // Homogenized cone rows: [A * basis | A * origin - b] acting on (u, t),
    // plus t >= 0.
    let mut cone_rows: Vec<Vec<BigInt>> = Vec::new();
    for (arow, brhs) in ineq_a.iter().zip(&ineq_b) {
        let mut row_q: Vec<BigRational> = Vec::with_capacity(d + 1);
        for dir in &chart.basis {
            row_q.push(dot_q(arow, dir));
        }
        row_q.push(dot_q(arow, &chart.origin) - brhs);
        cone_rows.push(clear_denominators(&row_q));
    }
    let mut t_row = vec![BigInt::zero(); d + 1];
    t_row[d] = BigInt::one();
    cone_rows.push(t_row);

    let cone = ConeSystem {
        rows: cone_rows,
        dim: d + 1,
    };
    let rays = double_description(&cone);

    // Map rays back to patterns. A bounded polytope yields no t = 0 rays.
    let mut vertices = Vec::new();
    for ray in rays {
        let t = &ray[d];
        if t.is_zero() {
            return Err(Error::domain(
                "unbounded direction found; the GT system should be bounded",
            ));
        }
        debug_assert!(t.is_positive());
        let t_q = BigRational::from_integer(t.clone());
        let mut x = chart.origin.clone();
        for (k, dir) in chart.basis.iter().enumerate() {
            let coeff = BigRational::from_integer(ray[k].clone()) / &t_q;
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi += &coeff * di;
            }
        }
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        rows.push(bottom.clone());
        for i in 2..m {
            rows.push((1..=n).map(|j| x[vidx(i, j)].clone()).collect());
        }
        rows.push(top.clone());
        let p = GTPattern::new(rows)?;
        debug_assert!(p.validate().is_ok(), "DD produced an invalid pattern");
        vertices.push(p);
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let mut ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = num::integer::gcd(gcd, x.abs());
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for x in &mut ints {
            *x = &*x / &gcd;
        }
    }
    ints
}

/// Dense bitset over inequality indices.
#[derive(Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersection_into(&self, other: &BitSet, out: &mut BitSet) {
        for ((o, a), b) in out.words.iter_mut().zip(&self.words).zip(&other.words) {
            *o = a & b;
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    vector: Vec<BigInt>,
    zero_set: BitSet,
}

fn dot_i(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reduce_primitive(v: &mut [BigInt]) {
    let mut gcd = BigInt::zero();
    for x in v.iter() {
        gcd = num::integer::gcd(gcd, x.abs());
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &gcd;
        }
    }
}

/// Incremental double description with explicit lineality handling.
fn double_description(cone: &ConeSystem) -> Vec<Vec<BigInt>> {
    let dim = cone.dim;
    let total = cone.rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|k| {
            let mut e = vec![BigInt::zero(); dim];
            e[k] = BigInt::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, a) in cone.rows.iter().enumerate() {
        // Use up a lineality direction if one is not orthogonal to `a`.
        let hit = lineality.iter().position(|l| !dot_i(a, l).is_zero());
        if let Some(pos) = hit {
            let mut pivot = lineality.swap_remove(pos);
            let dp = dot_i(a, &pivot);
            if dp.is_negative() {
                for x in pivot.iter_mut() {
                    *x = -&*x;
                }
            }
            let dp = dot_i(a, &pivot); // now positive
            for l in lineality.iter_mut() {
                let dl = dot_i(a, l);
                if dl.is_zero() {
                    continue;
                }
                let mut new_l: Vec<BigInt> = l
                    .iter()
                    .zip(&pivot)
                    .map(|(x, p)| x * &dp - p * &dl)
                    .collect();
                reduce_primitive(&mut new_l);
                *l = new_l;
            }
            for r in rays.iter_mut() {
                let dr = dot_i(a, &r.vector);
                if dr.is_zero() {
                    r.zero_set.insert(idx);
                    continue;
                }
                let mut new_v: Vec<BigInt> = r
                    .vector
                    .iter()
                    .zip(&pivot)
                    .map(|(x, p)| x * &dp - p * &dr)
                    .collect();
                reduce_primitive(&mut new_v);
                r.vector = new_v;
                r.zero_set.insert(idx); // lands on the hyperplane
            }
            let zero_set = {
                // lineality was orthogonal to all earlier halfspaces
                let mut z = BitSet::new(total);
                for earlier in 0..idx {
                    z.insert(earlier);
                }
                z
            };
            rays.push(Ray {
                vector: pivot,
                zero_set,
            });
            continue;
        }

        // Ordinary insertion: split rays by sign.
        let mut pos: Vec<usize> = Vec::new();
        let mut neg: Vec<usize> = Vec::new();
        let mut values: Vec<BigInt> = Vec::with_capacity(rays.len());
        for (k, r) in rays.iter_mut().enumerate() {
            let v = dot_i(a, &r.vector);
            if v.is_zero() {
                r.zero_set.insert(idx);
            } else if v.is_positive() {
                pos.push(k);
            } else {
                neg.push(k);
            }
            values.push(v);
        }
        if neg.is_empty() {
            continue;
        }
        let needed = dim - lineality.len();
        let mut new_rays: Vec<Ray> = Vec::new();
        let mut common = BitSet::new(total);
        for &p in &pos {
            for &q in &neg {
                rays[p].zero_set.intersection_into(&rays[q].zero_set, &mut common);
                if common.count() + 2 < needed {
                    continue;
                }
                // adjacency: no other ray's zero set contains the common set
                let adjacent = rays.iter().enumerate().all(|(k, r)| {
                    k == p || k == q || !common.is_subset_of(&r.zero_set)
                });
                if !adjacent {
                    continue;
                }
                let alpha = -values[q].clone(); // > 0
                let beta = values[p].clone(); // > 0
                let mut v: Vec<BigInt> = rays[p]
                    .vector
                    .iter()
                    .zip(&rays[q].vector)
                    .map(|(xp, xq)| xp * &alpha + xq * &beta)
                    .collect();
                reduce_primitive(&mut v);
                let mut z = common.clone();
                z.insert(idx);
                new_rays.push(Ray { vector: v, zero_set: z });
            }
        }
        let mut drop = vec![false; rays.len()];
        for &q in &neg {
            drop[q] = true;
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() - neg.len() + new_rays.len());
        for (k, r) in rays.into_iter().enumerate() {
            if !drop[k] {
                kept.push(r);
            }
        }
        if std::env::var_os("GTPOLY_DD_TRACE").is_some() {
            eprintln!(
                "dd: ineq {idx}/{total}: pos {} neg {} kept {} new {}",
                pos.len(),
                neg.len(),
                kept.len(),
                new_rays.len()
            );
        }
        kept.extend(new_rays);
        rays = kept;
    }

    debug_assert!(
        lineality.is_empty(),
        "GT cone should be pointed (leftover lineality)"
    );
    if std::env::var_os("GTPOLY_DD_TRACE").is_some() {
        eprintln!("dd: final {} rays", rays.len());
    }
    rays.into_iter().map(|r| r.vector).collect()
}

/// Test-support oracle: brute-force vertex enumeration by solving all
/// maximal tight subsets of the inequality system. Exponential; only for
/// tiny instances inside tests.
#[cfg(test)]
pub fn brute_force_vertices(spec: &PolytopeSpec) -> Vec<GTPattern> {
    use crate::linalg::combinations;
    let m = spec.num_rows();
    let n = spec.num_cols();
    if m <= 2 {
        return enumerate_vertices(spec).unwrap();
    }
    let vars = (m - 2) * n;
    // rebuild the same system (A x >= b, E x = c) in x-space
    let mut a_rows: Vec<Vec<BigRational>> = Vec::new();
    let mut b_vals: Vec<BigRational> = Vec::new();
    let vidx = |i: usize, j: usize| (i - 2) * n + (j - 1);
    let bottom: Vec<BigRational> = spec
        .bottom_row()
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    let top: Vec<BigRational> = spec
        .top_row()
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    let mut push = |coeffs: Vec<(usize, i64)>, rhs: BigRational| {
        let mut row = vec![BigRational::zero(); vars];
        for (v, c) in coeffs {
            row[v] += BigRational::from_integer(BigInt::from(c));
        }
        a_rows.push(row);
        b_vals.push(rhs);
    };
    for j in 1..=n {
        push(vec![(vidx(2, j), 1)], bottom[j - 1].clone());
        if j < n {
            push(vec![(vidx(2, j + 1), -1)], -bottom[j - 1].clone());
        }
        push(vec![(vidx(m - 1, j), -1)], -top[j - 1].clone());
        if j < n {
            push(vec![(vidx(m - 1, j), 1)], top[j].clone());
        }
    }
    for i in 2..m - 1 {
        for j in 1..=n {
            push(vec![(vidx(i + 1, j), 1), (vidx(i, j), -1)], BigRational::zero());
            if j < n {
                push(vec![(vidx(i, j), 1), (vidx(i + 1, j + 1), -1)], BigRational::zero());
            }
        }
    }
    let mut eq_a: Vec<Vec<BigRational>> = Vec::new();
    let mut eq_b: Vec<BigRational> = Vec::new();
    if let Some(sums) = spec.row_sums() {
        for i in 2..m {
            let mut row = vec![BigRational::zero(); vars];
            for j in 1..=n {
                row[vidx(i, j)] = BigRational::one();
            }
            eq_a.push(row);
            eq_b.push(BigRational::from_integer(BigInt::from(sums[i - 1])));
        }
    }
    let feasible = |x: &[BigRational]| -> bool {
        a_rows
            .iter()
            .zip(&b_vals)
            .all(|(row, b)| dot_q(row, x) >= *b)
            && eq_a.iter().zip(&eq_b).all(|(row, c)| dot_q(row, x) == *c)
    };
    let mut found: Vec<Vec<BigRational>> = Vec::new();
    let free_dim = vars - linalg::rank(&eq_a);
    for subset in combinations(a_rows.len(), free_dim.min(a_rows.len())) {
        let mut sys: Vec<Vec<BigRational>> = eq_a.clone();
        let mut rhs: Vec<BigRational> = eq_b.clone();
        for &s in &subset {
            sys.push(a_rows[s].clone());
            rhs.push(b_vals[s].clone());
        }
        if linalg::rank(&sys) != vars {
            continue;
        }
        if let Some(x) = linalg::solve(&sys, &rhs) {
            if feasible(&x) && !found.contains(&x) {
                found.push(x);
            }
        }
    }
    let mut out: Vec<GTPattern> = found
        .into_iter()
        .map(|x| {
            let mut rows: Vec<Vec<Rational>> = vec![bottom.clone()];
            for i in 2..m {
                rows.push((1..=n).map(|j| x[vidx(i, j)].clone()).collect());
            }
            rows.push(top.clone());
            GTPattern::new(rows).unwrap()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Composition;
    use crate::shape::SkewShape;
    use crate::tiling;

    fn spec(l: &[u64], m: &[u64], w: &[u64]) -> PolytopeSpec {
        PolytopeSpec::weighted(
            SkewShape::from_parts(l.to_vec(), m.to_vec()).unwrap(),
            Composition::new(w.to_vec()),
            1,
        )
        .unwrap()
    }

    #[test]
    fn two_by_two_box_is_a_segment() {
        let s = spec(&[2, 2], &[], &[1, 1, 1, 1]);
        let v = s.vertices().unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(GTPattern::is_integral));
    }

    #[test]
    fn point_polytope_has_one_vertex() {
        let s = spec(&[2, 1], &[2, 1], &[0, 0]);
        let v = s.vertices().unwrap();
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn first_half_integral_vertex_is_found() {
        // shape (3,2)/(1) at weight 1: the vertex with entries
        // (1,0),(3/2,1/2),(3/2,3/2),(5/2,3/2),(3,2) appears in the list
        use crate::rational::{rat, rat_int};
        let s = spec(&[3, 2], &[1], &[1, 1, 1, 1]);
        let v = s.vertices().unwrap();
        let expected = GTPattern::new(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat(3, 2), rat(1, 2)],
            vec![rat(3, 2), rat(3, 2)],
            vec![rat(5, 2), rat(3, 2)],
            vec![rat_int(3), rat_int(2)],
        ])
        .unwrap();
        assert!(v.contains(&expected));
        for p in &v {
            assert!(tiling::is_vertex(p, &s).unwrap());
        }
    }

    #[test]
    fn dd_matches_brute_force_on_tiny_instances() {
        let cases = [
            spec(&[2, 2], &[], &[1, 1, 1, 1]),
            spec(&[3, 2], &[1], &[1, 1, 1, 1]),
            spec(&[2, 1], &[], &[1, 1, 1]),
            spec(&[3, 1], &[1], &[1, 1, 1]),
            spec(&[2, 2, 1], &[1], &[1, 1, 1, 1]),
        ];
        for s in cases {
            let dd = s.vertices().unwrap();
            let bf = brute_force_vertices(&s);
            assert_eq!(dd, bf, "vertex sets differ for {:?}", s.shape());
        }
    }

    #[test]
    fn integrality_pair_for_two_row_shape() {
        let integral = spec(&[5, 3], &[], &[2, 2, 2, 1, 1]);
        assert!(integral.is_integral().unwrap());
        let nonintegral = spec(&[5, 3], &[], &[2, 2, 1, 2, 1]);
        assert!(!nonintegral.is_integral().unwrap());
        assert!(!nonintegral.is_empty().unwrap());
        assert!(!nonintegral.nonintegral_vertices().unwrap().is_empty());
    }

    #[test]
    fn empty_polytope_has_no_vertices() {
        // weight (4,4) cannot be reached inside shape (4,3,1)
        let s = spec(&[4, 3, 1], &[], &[4, 4]);
        assert!(s.is_empty().unwrap());
        assert!(!s.is_integral().unwrap());
    }

    #[test]
    fn weight_one_lattice_points_are_exactly_the_integral_vertices() {
        let s = spec(&[3, 1, 1], &[], &[1, 1, 1, 1, 1]);
        let verts = s.vertices().unwrap();
        let points = s.lattice_points();
        let integral: Vec<&GTPattern> = verts.iter().filter(|v| v.is_integral()).collect();
        assert_eq!(integral.len(), points.len());
        for p in &points {
            assert!(verts.contains(p));
        }
    }
}

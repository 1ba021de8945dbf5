//! The weight-refinement order and its constructions: splitting one weight
//! entry by inserting a pattern row (preserving the tiles that cross the
//! split), lifting non-integral vertices to refined weights, and the
//! box-refinement transformation on tableaux.

use crate::error::{Error, Result};
use crate::partition::Composition;
use crate::pattern::GTPattern;
use crate::polytope::PolytopeSpec;
use crate::rational::{rat_int, rational_gcd, Rational};

use crate::tableau::SkewTableau;
use crate::tiling::{self, compute_tiling};


/// One covering split of a weight entry: `w_position = first + second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefinementStep {
    /// 1-based index into the weight composition.
    pub position: usize,
    pub first: u64,
    pub second: u64,
}

/// `finer <=_ref coarser`: the finer composition splits into consecutive
/// blocks whose sums are the coarser parts, in order.
pub fn is_refinement(finer: &Composition, coarser: &Composition) -> bool {
    let f = finer.parts();
    let c = coarser.parts();
    // reachable[i] = f[..i] matches a prefix of c ending exactly at block j
    // (dynamic programming over block boundaries to stay correct with zeros)
    let mut reachable = vec![false; f.len() + 1];
    reachable[0] = true;
    for &part in c {
        let mut next = vec![false; f.len() + 1];
        for start in 0..=f.len() {
            if !reachable[start] {
                continue;
            }
            let mut sum = 0u64;
            for end in start..=f.len() {
                if sum == part {
                    next[end] = true;
                }
                if end < f.len() {
                    sum += f[end];
                    if sum > part {
                        break;
                    }
                } else {
                    break;
                }
            }
        }
        reachable = next;
    }
    reachable[f.len()]
}

/// Inserts a middle row of sum `t` between an interlacing pair of rows,
/// keeping every linked `(top index, bottom index)` pair inside one tile of
/// the resulting three-row pattern. Links come from tiles of the original
/// pattern that cross this row boundary.
///
/// The walk starts at the bottom row and repeatedly increases one entry by
/// the largest step `delta` for which all entries and `t` stay integer
/// multiples: first any entry strictly between its bounds, then an entry
/// equal to the bottom that is free of the top row, then the first entry
/// whose increase provably keeps all links connected.
pub fn insert_row(
    top: &[Rational],
    bottom: &[Rational],
    t: &Rational,
    tile_links: &[(usize, usize)],
) -> Result<Vec<Rational>> {
    let n = top.len();
    if bottom.len() != n {
        return Err(Error::dimension("top and bottom rows differ in length"));
    }
    let pair = GTPattern::new(vec![bottom.to_vec(), top.to_vec()])?;
    pair.validate().map_err(Error::Validation)?;
    let bottom_sum: Rational = bottom.iter().sum();
    let top_sum: Rational = top.iter().sum();
    if *t < bottom_sum || *t > top_sum {
        return Err(Error::domain(format!(
            "target sum {t} outside [{bottom_sum}, {top_sum}]"
        )));
    }
    for &(ti, bj) in tile_links {
        if ti < 1 || ti > n || bj < 1 || bj > n {
            return Err(Error::domain("tile link index out of range"));
        }
        if top[ti - 1] != bottom[bj - 1] {
            return Err(Error::domain(
                "tile link connects entries with different values",
            ));
        }
    }
    let mut all: Vec<Rational> = top.iter().chain(bottom.iter()).cloned().collect();
    all.push(t.clone());
    let Some(delta) = rational_gcd(all.iter()) else {
        return Ok(bottom.to_vec()); // everything zero
    };
    let mut nu: Vec<Rational> = bottom.to_vec();
    let mut sum = bottom_sum;
    while sum < *t {
        let idx = choose_increase_index(top, bottom, &nu, &delta, tile_links).ok_or_else(|| {
            Error::domain("no entry can be increased without breaking a linked tile")
        })?;
        nu[idx] += &delta;
        sum += &delta;
    }
    Ok(nu)
}

fn choose_increase_index(
    top: &[Rational],
    bottom: &[Rational],
    nu: &[Rational],
    delta: &Rational,
    links: &[(usize, usize)],
) -> Option<usize> {
    let n = top.len();
    // strictly between its bounds: increasing cannot break any tile
    for i in 0..n {
        if top[i] > nu[i] && nu[i] > bottom[i] && increase_is_safe(top, bottom, nu, delta, links, i)
        {
            return Some(i);
        }
    }
    // equal to the bottom but strictly above the next top entry: not part of
    // any tile that touches the top row
    for i in 0..n.saturating_sub(1) {
        if top[i] > nu[i]
            && nu[i] == bottom[i]
            && nu[i] > top[i + 1]
            && increase_is_safe(top, bottom, nu, delta, links, i)
        {
            return Some(i);
        }
    }
    // remaining configurations: take the first provably safe index
    (0..n).find(|&i| increase_is_safe(top, bottom, nu, delta, links, i))
}

/// Whether `nu[i] += delta` keeps the three-row pattern valid and every
/// linked pair in one tile.
fn increase_is_safe(
    top: &[Rational],
    bottom: &[Rational],
    nu: &[Rational],
    delta: &Rational,
    links: &[(usize, usize)],
    i: usize,
) -> bool {
    let n = top.len();
    let mut cand = nu.to_vec();
    cand[i] += delta;
    // interlacing: top >=_int cand >=_int bottom
    for j in 0..n {
        if cand[j] > top[j] || cand[j] < bottom[j] {
            return false;
        }
        if j + 1 < n && (cand[j + 1] > bottom[j] || top[j + 1] > cand[j]) {
            return false;
        }
    }
    if links.is_empty() {
        return true;
    }
    let three = GTPattern::new(vec![bottom.to_vec(), cand, top.to_vec()])
        .expect("rectangular rows");
    if three.validate().is_err() {
        return false;
    }
    let tiling = compute_tiling(&three);
    links
        .iter()
        .all(|&(ti, bj)| tiling.tile_of(3, ti) == tiling.tile_of(1, bj))
}

/// Splits `w_position = first + second` on a certified non-integral vertex:
/// inserts the connecting row, then walks to a vertex of the refined
/// polytope. The result is again a certified non-integral vertex, and the
/// free tiles of the original pattern keep their contents.
pub fn lift_nonintegral_vertex(
    spec: &PolytopeSpec,
    vertex: &GTPattern,
    step: RefinementStep,
) -> Result<(PolytopeSpec, GTPattern)> {
    let Some(weight) = spec.weight() else {
        return Err(Error::domain("lifting needs a weight-restricted polytope"));
    };
    let i = step.position;
    if i < 1 || i > weight.num_parts() {
        return Err(Error::domain(format!("split position {i} out of range")));
    }
    if step.first == 0 || step.second == 0 || step.first + step.second != weight.part(i - 1) {
        return Err(Error::domain(format!(
            "split {} + {} does not partition w_{i} = {}",
            step.first,
            step.second,
            weight.part(i - 1)
        )));
    }
    if !spec.contains(vertex)? || vertex.is_integral() || !tiling::is_vertex(vertex, spec)? {
        return Err(Error::domain(
            "input must be a non-integral vertex of the polytope",
        ));
    }
    let bottom = vertex.row(i).to_vec();
    let top = vertex.row(i + 1).to_vec();
    let t = vertex.row_sum(i) + rat_int((step.first * spec.dilation()) as i64);
    // tiles crossing the boundary become link constraints
    let tiling = compute_tiling(vertex);
    let mut links: Vec<(usize, usize)> = Vec::new();
    for tile in &tiling.tiles {
        let tops: Vec<usize> = tile
            .cells
            .iter()
            .filter(|&&(r, _)| r == i + 1)
            .map(|&(_, c)| c)
            .collect();
        let bots: Vec<usize> = tile
            .cells
            .iter()
            .filter(|&&(r, _)| r == i)
            .map(|&(_, c)| c)
            .collect();
        for &tc in &tops {
            for &bc in &bots {
                links.push((tc, bc));
            }
        }
    }
    let nu = insert_row(&top, &bottom, &t, &links)?;
    let mut rows: Vec<Vec<Rational>> = vertex.rows()[..i].to_vec();
    rows.push(nu);
    rows.extend_from_slice(&vertex.rows()[i..]);
    let inserted = GTPattern::new(rows)?;

    let mut new_parts: Vec<u64> = weight.parts()[..i - 1].to_vec();
    new_parts.push(step.first);
    new_parts.push(step.second);
    new_parts.extend_from_slice(&weight.parts()[i..]);
    let refined_spec = PolytopeSpec::weighted(
        spec.shape().clone(),
        Composition::new(new_parts),
        spec.dilation(),
    )?
    .with_cols(vertex.num_cols())?;
    if !refined_spec.contains(&inserted)? {
        return Err(Error::domain("inserted pattern left the refined polytope"));
    }
    let lifted = tiling::push_to_vertex(&inserted, &refined_spec)?;
    if lifted.is_integral() {
        return Err(Error::domain(
            "lift unexpectedly reached an integral vertex",
        ));
    }
    Ok((refined_spec, lifted))
}

/// The tableau transformation behind weight splitting: add one to every
/// content `>= position + 1`, then add one to the `k * second` rightmost
/// boxes of content `position`. The boxes of one content always sit in
/// distinct columns, which makes "rightmost" well defined.
pub fn box_refine_tableau(
    t: &SkewTableau,
    k: u64,
    step: RefinementStep,
) -> Result<SkewTableau> {
    let i = step.position as u32;
    if i == 0 {
        return Err(Error::domain("content positions are 1-based"));
    }
    let cells = cells_with_columns(t);
    let count_i = cells.iter().filter(|c| c.content == i).count() as u64;
    if count_i != k * (step.first + step.second) {
        return Err(Error::domain(format!(
            "tableau has {count_i} boxes of content {i}, expected k*(a+b) = {}",
            k * (step.first + step.second)
        )));
    }
    let mut cols_seen: Vec<usize> = cells
        .iter()
        .filter(|c| c.content == i)
        .map(|c| c.col)
        .collect();
    cols_seen.sort_unstable();
    if cols_seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::domain(format!(
            "boxes of content {i} share a column; the split is undefined"
        )));
    }
    let promote_from = cols_seen.len() - (k * step.second) as usize;
    let promoted: &[usize] = &cols_seen[promote_from..];
    let rows = rebuild_rows(t, |cell| {
        if cell.content > i {
            cell.content + 1
        } else if cell.content == i && promoted.contains(&cell.col) {
            i + 1
        } else {
            cell.content
        }
    });
    SkewTableau::new(t.shape().clone(), rows)
}

/// Inverse transformation: merge contents `position` and `position + 1`,
/// shifting everything above down by one. Errors when the merge breaks
/// column strictness (the precondition of the split).
pub fn box_unrefine_tableau(t: &SkewTableau, step: RefinementStep) -> Result<SkewTableau> {
    let i = step.position as u32;
    let rows = rebuild_rows(t, |cell| {
        if cell.content >= i + 1 {
            cell.content - 1
        } else {
            cell.content
        }
    });
    SkewTableau::new(t.shape().clone(), rows)
}

struct Cell {
    row: usize,
    col: usize,
    content: u32,
}

fn cells_with_columns(t: &SkewTableau) -> Vec<Cell> {
    let mut out = Vec::new();
    for (r, row) in t.rows().iter().enumerate() {
        let off = t.shape().mu.part(r) as usize;
        for (k, &content) in row.iter().enumerate() {
            out.push(Cell {
                row: r + 1,
                col: off + k + 1,
                content,
            });
        }
    }
    out
}

fn rebuild_rows(t: &SkewTableau, f: impl Fn(&Cell) -> u32) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); t.shape().rows()];
    for cell in cells_with_columns(t) {
        rows[cell.row - 1].push(f(&cell));
    }
    for row in &mut rows {
        row.sort_unstable();
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::shape::SkewShape;

    fn comp(parts: &[u64]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn refinement_of_compositions() {
        assert!(is_refinement(&comp(&[2, 2, 2, 2]), &comp(&[4, 2, 2])));
        assert!(is_refinement(&comp(&[1, 1]), &comp(&[1, 1])));
        assert!(!is_refinement(&comp(&[3, 3]), &comp(&[4, 2])));
        assert!(is_refinement(&comp(&[1, 2, 2, 1, 3]), &comp(&[3, 3, 3])));
        assert!(!is_refinement(&comp(&[2, 2]), &comp(&[2, 1, 1])));
        // zeros split into empty blocks
        assert!(is_refinement(&comp(&[2, 0, 1]), &comp(&[2, 0, 1])));
        assert!(is_refinement(&comp(&[0, 2]), &comp(&[2])));
    }

    #[test]
    fn insert_row_endpoints() {
        let top = vec![rat_int(4), rat(5, 2), rat(3, 2), rat_int(0), rat_int(0)];
        let bottom = vec![rat(5, 2), rat(5, 2), rat_int(0), rat_int(0), rat_int(0)];
        let links = vec![(2, 1), (2, 2)];
        let b_sum: Rational = bottom.iter().sum();
        let t_sum: Rational = top.iter().sum();
        assert_eq!(insert_row(&top, &bottom, &b_sum, &links).unwrap(), bottom);
        assert_eq!(insert_row(&top, &bottom, &t_sum, &links).unwrap(), top);
        assert!(insert_row(&top, &bottom, &rat_int(100), &links).is_err());
    }

    #[test]
    fn insert_row_produces_the_lift_row() {
        // the rows around the split in the worked lift: inserting sum 7
        // between (5/2,5/2,0,0,0) and (4,5/2,3/2,0,0) with the crossing
        // 5/2- and 0-tiles linked gives (4, 5/2, 1/2, 0, 0)
        let top = vec![rat_int(4), rat(5, 2), rat(3, 2), rat_int(0), rat_int(0)];
        let bottom = vec![rat(5, 2), rat(5, 2), rat_int(0), rat_int(0), rat_int(0)];
        let links = vec![(2, 1), (2, 2), (4, 3), (4, 4), (4, 5), (5, 3), (5, 4), (5, 5)];
        let nu = insert_row(&top, &bottom, &rat_int(7), &links).unwrap();
        assert_eq!(
            nu,
            vec![rat_int(4), rat(5, 2), rat(1, 2), rat_int(0), rat_int(0)]
        );
    }

    #[test]
    fn insert_row_rejects_non_interlacing_input() {
        // bottom entry below the top entry two columns later breaks the
        // interlacing precondition
        let top = vec![rat_int(4), rat(5, 2), rat(3, 2), rat_int(0)];
        let bottom = vec![rat(5, 2), rat_int(0), rat_int(0), rat_int(0)];
        assert!(insert_row(&top, &bottom, &rat_int(7), &[]).is_err());
    }

    #[test]
    fn insert_row_interlaces_for_all_targets() {
        let top = vec![rat_int(4), rat(5, 2), rat(3, 2), rat_int(0)];
        let bottom = vec![rat(5, 2), rat(5, 2), rat_int(0), rat_int(0)];
        let links = vec![(2, 1), (2, 2)];
        // every admissible multiple of delta = 1/2 between the sums
        let mut t = rat_int(5);
        while t <= rat_int(8) {
            let nu = insert_row(&top, &bottom, &t, &links).unwrap();
            let sum: Rational = nu.iter().sum();
            assert_eq!(sum, t);
            let p = GTPattern::new(vec![bottom.clone(), nu, top.clone()]).unwrap();
            assert!(p.validate().is_ok(), "t = {t}");
            t += rat(1, 2);
        }
    }

    #[test]
    fn lift_reproduces_worked_example_exactly() {
        // lambda = (4,4,2,1,0), w = (1,2,2,3,3), split w_4 = 2 + 1; the lift
        // inserts (4, 5/2, 1/2, 0, 0, 0) and is already a vertex there
        let shape = SkewShape::from_parts(vec![4, 4, 2, 1], vec![]).unwrap();
        let spec = PolytopeSpec::weighted(shape, comp(&[1, 2, 2, 3, 3]), 1)
            .unwrap()
            .with_cols(6)
            .unwrap();
        let z = rat_int;
        let g = GTPattern::new(vec![
            vec![z(0), z(0), z(0), z(0), z(0), z(0)],
            vec![z(1), z(0), z(0), z(0), z(0), z(0)],
            vec![rat(5, 2), rat(1, 2), z(0), z(0), z(0), z(0)],
            vec![rat(5, 2), rat(5, 2), z(0), z(0), z(0), z(0)],
            vec![z(4), rat(5, 2), rat(3, 2), z(0), z(0), z(0)],
            vec![z(4), z(4), z(2), z(1), z(0), z(0)],
        ])
        .unwrap();
        assert!(spec.contains(&g).unwrap());
        assert!(tiling::is_vertex(&g, &spec).unwrap());
        let (refined, lifted) = lift_nonintegral_vertex(
            &spec,
            &g,
            RefinementStep {
                position: 4,
                first: 2,
                second: 1,
            },
        )
        .unwrap();
        assert_eq!(refined.weight().unwrap().parts(), &[1, 2, 2, 2, 1, 3]);
        let expected = GTPattern::new(vec![
            vec![z(0), z(0), z(0), z(0), z(0), z(0)],
            vec![z(1), z(0), z(0), z(0), z(0), z(0)],
            vec![rat(5, 2), rat(1, 2), z(0), z(0), z(0), z(0)],
            vec![rat(5, 2), rat(5, 2), z(0), z(0), z(0), z(0)],
            vec![z(4), rat(5, 2), rat(1, 2), z(0), z(0), z(0)],
            vec![z(4), rat(5, 2), rat(3, 2), z(0), z(0), z(0)],
            vec![z(4), z(4), z(2), z(1), z(0), z(0)],
        ])
        .unwrap();
        assert_eq!(lifted, expected);
        assert!(tiling::is_vertex(&lifted, &refined).unwrap());
        // the free-tile contents of the original pattern survive
        assert!(!lifted.is_integral());
    }

    #[test]
    fn chained_splits_preserve_nonintegrality() {
        let shape = SkewShape::from_parts(vec![4, 4, 2, 1], vec![]).unwrap();
        let mut spec = PolytopeSpec::weighted(shape, comp(&[1, 2, 2, 3, 3]), 1).unwrap();
        let z = rat_int;
        let mut vertex = GTPattern::new(vec![
            vec![z(0), z(0), z(0), z(0)],
            vec![z(1), z(0), z(0), z(0)],
            vec![rat(5, 2), rat(1, 2), z(0), z(0)],
            vec![rat(5, 2), rat(5, 2), z(0), z(0)],
            vec![z(4), rat(5, 2), rat(3, 2), z(0)],
            vec![z(4), z(4), z(2), z(1)],
        ])
        .unwrap();
        // split the leftmost part > 1 until the weight is all ones
        loop {
            let w = spec.weight().unwrap().clone();
            let Some(pos) = w.parts().iter().position(|&p| p > 1) else {
                break;
            };
            let (next_spec, next_vertex) = lift_nonintegral_vertex(
                &spec,
                &vertex,
                RefinementStep {
                    position: pos + 1,
                    first: w.part(pos) - 1,
                    second: 1,
                },
            )
            .unwrap();
            spec = next_spec;
            vertex = next_vertex;
            assert!(!vertex.is_integral());
            assert!(tiling::is_vertex(&vertex, &spec).unwrap());
        }
        assert_eq!(spec.weight().unwrap().parts(), &[1u64; 11][..]);
    }

    #[test]
    fn box_refine_matches_figure() {
        // k = 3, weight (2,3,4,1,1), split w_3 = 2 + 2
        let shape = SkewShape::from_parts(vec![12, 12, 9, 6], vec![3, 3]).unwrap();
        let t = SkewTableau::new(
            shape.clone(),
            vec![
                vec![1, 1, 1, 1, 1, 1, 2, 2, 3],
                vec![2, 2, 2, 2, 2, 3, 3, 3, 4],
                vec![2, 2, 3, 3, 3, 3, 3, 3, 4],
                vec![3, 3, 4, 5, 5, 5],
            ],
        )
        .unwrap();
        let refined = box_refine_tableau(
            &t,
            3,
            RefinementStep {
                position: 3,
                first: 2,
                second: 2,
            },
        )
        .unwrap();
        let expected = SkewTableau::new(
            shape,
            vec![
                vec![1, 1, 1, 1, 1, 1, 2, 2, 4],
                vec![2, 2, 2, 2, 2, 4, 4, 4, 5],
                vec![2, 2, 3, 3, 3, 3, 4, 4, 5],
                vec![3, 3, 5, 6, 6, 6],
            ],
        )
        .unwrap();
        assert_eq!(refined, expected);
        // and the inverse recovers the original
        let back = box_unrefine_tableau(
            &refined,
            RefinementStep {
                position: 3,
                first: 2,
                second: 2,
            },
        )
        .unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn box_refine_with_empty_second_block_only_shifts() {
        // a split where the second part absorbs zero boxes in this tableau
        // cannot happen with first+second = w_i; instead check a split whose
        // promoted boxes all sit in one row
        let shape = SkewShape::from_parts(vec![2], vec![]).unwrap();
        let t = SkewTableau::new(shape.clone(), vec![vec![1, 1]]).unwrap();
        let refined = box_refine_tableau(
            &t,
            1,
            RefinementStep {
                position: 1,
                first: 1,
                second: 1,
            },
        )
        .unwrap();
        assert_eq!(refined, SkewTableau::new(shape, vec![vec![1, 2]]).unwrap());
    }

    #[test]
    fn unrefine_commutes_with_concatenation() {
        use crate::tableau::concat_tableaux;
        let shape = SkewShape::from_parts(vec![2, 1], vec![]).unwrap();
        let a = SkewTableau::new(shape.clone(), vec![vec![1, 2], vec![3]]).unwrap();
        let b = SkewTableau::new(shape.clone(), vec![vec![2, 2], vec![3]]).unwrap();
        let step = RefinementStep {
            position: 1,
            first: 1,
            second: 1,
        };
        let merged = concat_tableaux(&a, &b).unwrap();
        let lhs = box_unrefine_tableau(&merged, step).unwrap();
        let rhs = concat_tableaux(
            &box_unrefine_tableau(&a, step).unwrap(),
            &box_unrefine_tableau(&b, step).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unrefine_rejects_column_clash() {
        // merging contents 1 and 2 in a column with both breaks strictness
        let shape = SkewShape::from_parts(vec![1, 1], vec![]).unwrap();
        let t = SkewTableau::new(shape, vec![vec![1], vec![2]]).unwrap();
        assert!(box_unrefine_tableau(
            &t,
            RefinementStep {
                position: 1,
                first: 1,
                second: 1
            }
        )
        .is_err());
    }
}

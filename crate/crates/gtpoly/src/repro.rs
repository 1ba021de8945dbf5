//! Replays the stored reference fixtures and diffs the recomputed results
//! against them. Every check is exact; a mismatch reports the fixture name.

use crate::classify::{classify_shape, forbidden_diagrams, gen_three_column_vertex, ShapeClass};
use crate::decompose::{column_split, from_contingency, to_contingency};
use crate::error::Result;
use crate::partition::{Composition, Partition};
use crate::pattern::GTPattern;
use crate::polytope::{idp_check, is_unimodular_simplex, pulling_triangulation, PolytopeSpec, VertexOrder};
use crate::poset::{build_poset, PosetOptions};
use crate::rational::rat_int;
use crate::refinement::{box_refine_tableau, lift_nonintegral_vertex, RefinementStep};
use crate::shape::SkewShape;
use crate::tableau::{concat_tableaux, pattern_to_tableau, tableau_to_pattern_padded, SkewTableau};
use crate::tiling::{self, compute_tiling, kernel_dimension, tiling_matrix};
use num::One;
use serde_json::Value;

pub struct FixtureOutcome {
    pub name: &'static str,
    pub result: std::result::Result<(), String>,
}

macro_rules! check {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Runs every fixture; the command line front end prints one line per entry.
pub fn run_all() -> Vec<FixtureOutcome> {
    let fixtures: Vec<(&'static str, fn() -> std::result::Result<(), String>)> = vec![
        ("bijection-skew", bijection_skew),
        ("bijection-triangular", bijection_triangular),
        ("pattern-addition", pattern_addition),
        ("tilings", tilings),
        ("six-shape-vertices", six_shape_vertices),
        ("three-column-family", three_column_family),
        ("integrality-pair", integrality_pair),
        ("vertex-lift", vertex_lift),
        ("column-split", column_split_fixture),
        ("box-refine", box_refine_fixture),
        ("refinement-poset", refinement_poset),
        ("birkhoff", birkhoff),
        ("classification", classification),
        ("small-polytopes", small_polytopes),
    ];
    fixtures
        .into_iter()
        .map(|(name, f)| FixtureOutcome { name, result: f() })
        .collect()
}

fn load(raw: &str) -> Value {
    serde_json::from_str(raw).expect("fixtures ship with the crate and parse")
}

fn pattern_of(v: &Value) -> std::result::Result<GTPattern, String> {
    GTPattern::from_json(v).map_err(fail)
}

fn tableau_of(v: &Value) -> std::result::Result<SkewTableau, String> {
    SkewTableau::from_json(v).map_err(fail)
}

fn weights_of(v: &Value) -> Vec<u64> {
    v.as_array()
        .expect("weight array")
        .iter()
        .map(|x| x.as_u64().expect("weight entry"))
        .collect()
}

fn weighted_spec(lambda: &[u64], mu: &[u64], w: &[u64]) -> Result<PolytopeSpec> {
    PolytopeSpec::weighted(
        SkewShape::from_parts(lambda.to_vec(), mu.to_vec())?,
        Composition::new(w.to_vec()),
        1,
    )
}

fn bijection_skew() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/bijection_skew.json"));
    let p = pattern_of(&fx["pattern"])?;
    check!(p.validate().is_ok(), "display pattern fails validation");
    let t = pattern_to_tableau(&p).map_err(fail)?;
    let expected = tableau_of(&fx["tableau"])?;
    check!(t == expected, "pattern gave a different tableau");
    let back = tableau_to_pattern_padded(&t, p.num_rows(), p.num_cols()).map_err(fail)?;
    check!(back == p, "round trip changed the pattern");
    let w: Vec<_> = weights_of(&fx["weight"]).iter().map(|&x| rat_int(x as i64)).collect();
    check!(p.weight() == w, "weight mismatch");
    Ok(())
}

fn bijection_triangular() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/bijection_triangular.json"));
    let p = pattern_of(&fx["pattern"])?;
    let t = pattern_to_tableau(&p).map_err(fail)?;
    let expected = tableau_of(&fx["tableau"])?;
    check!(t == expected, "pattern gave a different tableau");
    let back = tableau_to_pattern_padded(&t, p.num_rows(), p.num_cols()).map_err(fail)?;
    check!(back == p, "round trip changed the pattern");
    let w: Vec<_> = weights_of(&fx["weight"]).iter().map(|&x| rat_int(x as i64)).collect();
    check!(p.weight() == w, "weight mismatch");
    // the weight records the content multiplicities of the tableau
    let counts = t.content_counts(t.max_content());
    check!(
        counts.iter().map(|&c| rat_int(c as i64)).collect::<Vec<_>>() == w,
        "content multiplicities disagree with the weight"
    );
    Ok(())
}

fn pattern_addition() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/addition.json"));
    let a = pattern_of(&fx["a"])?;
    let b = pattern_of(&fx["b"])?;
    let sum = a.add(&b).map_err(fail)?;
    check!(sum == pattern_of(&fx["sum"])?, "pattern sum mismatch");
    let ta = tableau_of(&fx["tableau_a"])?;
    let tb = tableau_of(&fx["tableau_b"])?;
    check!(
        pattern_to_tableau(&a).map_err(fail)? == ta,
        "first summand tableau mismatch"
    );
    check!(
        pattern_to_tableau(&b).map_err(fail)? == tb,
        "second summand tableau mismatch"
    );
    let concat = concat_tableaux(&ta, &tb).map_err(fail)?;
    check!(
        concat == tableau_of(&fx["tableau_sum"])?,
        "concatenation mismatch"
    );
    check!(
        pattern_to_tableau(&sum).map_err(fail)? == concat,
        "concatenation disagrees with the pattern sum"
    );
    Ok(())
}

fn tilings() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/tilings.json"));
    for key in ["half_integral", "integral"] {
        let case = &fx[key];
        let p = pattern_of(&case["pattern"])?;
        check!(p.validate().is_ok(), "{key}: pattern invalid");
        let tiling = compute_tiling(&p);
        let matrix = tiling_matrix(&tiling);
        let contents: Vec<Value> = matrix
            .free_tile_ids
            .iter()
            .map(|&id| crate::rational::rational_to_json(&tiling.tiles[id].content))
            .collect();
        check!(
            Value::Array(contents.clone()) == case["free_contents"],
            "{key}: free tile contents differ: got {contents:?}"
        );
        let entries: Vec<Vec<u64>> = matrix.entries.clone();
        let expected: Vec<Vec<u64>> = serde_json::from_value(case["matrix"].clone()).unwrap();
        check!(entries == expected, "{key}: tiling matrix differs");
        let nullity = kernel_dimension(&matrix) as u64;
        check!(
            Some(nullity) == case["nullity"].as_u64(),
            "{key}: nullity {nullity} differs"
        );
    }
    Ok(())
}

fn six_shape_vertices() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/six_vertices.json"));
    let entries = fx["entries"].as_array().unwrap();
    let generated = crate::classify::gen_six_shape_vertices();
    check!(generated.len() == entries.len(), "wrong number of vertices");
    for (i, entry) in entries.iter().enumerate() {
        let lambda = weights_of(&entry["lambda"]);
        let mu = weights_of(&entry["mu"]);
        let expected = pattern_of(&entry["pattern"])?;
        let (shape, pattern) = &generated[i];
        check!(
            *shape == SkewShape::from_parts(lambda.clone(), mu.clone()).map_err(fail)?,
            "entry {i}: shape mismatch"
        );
        check!(*pattern == expected, "entry {i}: pattern mismatch");
        check!(!pattern.is_integral(), "entry {i}: not half-integral");
        let spec = weighted_spec(&lambda, &mu, &vec![1; pattern.num_rows() - 1]).map_err(fail)?;
        check!(
            tiling::is_vertex(pattern, &spec).map_err(fail)?,
            "entry {i}: not a vertex"
        );
        // the first one appears in the enumerated vertex set
        if i == 0 {
            let verts = spec.vertices().map_err(fail)?;
            check!(verts.contains(pattern), "entry 0 missing from vertex enumeration");
        }
    }
    Ok(())
}

fn three_column_family() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/three_column.json"));
    for display in fx["displays"].as_array().unwrap() {
        let tail = display["tail"].as_u64().unwrap();
        let (shape, pattern) = gen_three_column_vertex(tail).map_err(fail)?;
        check!(
            shape
                == SkewShape::from_parts(weights_of(&display["lambda"]), weights_of(&display["mu"]))
                    .map_err(fail)?,
            "tail {tail}: shape mismatch"
        );
        check!(
            pattern == pattern_of(&display["pattern"])?,
            "tail {tail}: pattern mismatch"
        );
    }
    for tail in fx["certify_tails"].as_array().unwrap() {
        let tail = tail.as_u64().unwrap();
        let (shape, pattern) = gen_three_column_vertex(tail).map_err(fail)?;
        let spec = PolytopeSpec::weighted(shape, Composition::ones(pattern.num_rows() - 1), 1)
            .map_err(fail)?;
        check!(!pattern.is_integral(), "tail {tail}: integral");
        check!(
            tiling::is_vertex(&pattern, &spec).map_err(fail)?,
            "tail {tail}: not a vertex"
        );
    }
    Ok(())
}

fn integrality_pair() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/integrality_pair.json"));
    let lambda = weights_of(&fx["lambda"]);
    let good = weighted_spec(&lambda, &[], &weights_of(&fx["integral_weight"])).map_err(fail)?;
    check!(good.is_integral().map_err(fail)?, "integral case reported non-integral");
    let bad = weighted_spec(&lambda, &[], &weights_of(&fx["nonintegral_weight"])).map_err(fail)?;
    check!(!bad.is_integral().map_err(fail)?, "non-integral case reported integral");
    check!(
        !bad.nonintegral_vertices().map_err(fail)?.is_empty(),
        "missing rational vertex witness"
    );
    Ok(())
}

fn vertex_lift() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/lift.json"));
    let lambda = weights_of(&fx["lambda"]);
    let weight = weights_of(&fx["weight"]);
    let cols = fx["cols"].as_u64().unwrap() as usize;
    let spec = weighted_spec(&lambda, &[], &weight)
        .map_err(fail)?
        .with_cols(cols)
        .map_err(fail)?;
    let vertex = pattern_of(&fx["vertex"])?;
    check!(spec.contains(&vertex).map_err(fail)?, "input not in the polytope");
    let step = RefinementStep {
        position: fx["split"]["position"].as_u64().unwrap() as usize,
        first: fx["split"]["first"].as_u64().unwrap(),
        second: fx["split"]["second"].as_u64().unwrap(),
    };
    let (refined, lifted) = lift_nonintegral_vertex(&spec, &vertex, step).map_err(fail)?;
    check!(
        refined.weight().map(|w| w.parts().to_vec()) == Some(weights_of(&fx["lifted_weight"])),
        "refined weight mismatch"
    );
    check!(lifted == pattern_of(&fx["lifted"])?, "lifted vertex mismatch");
    check!(
        tiling::is_vertex(&lifted, &refined).map_err(fail)?,
        "lift lost the vertex certificate"
    );
    Ok(())
}

fn column_split_fixture() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/column_split.json"));
    let t = tableau_of(&fx["tableau"])?;
    let k = fx["k"].as_u64().unwrap();
    let parts = column_split(&t, k).map_err(fail)?;
    let expected: std::result::Result<Vec<SkewTableau>, String> =
        fx["parts"].as_array().unwrap().iter().map(tableau_of).collect();
    check!(parts == expected?, "column split parts differ");
    let sum = parts[1..]
        .iter()
        .try_fold(parts[0].clone(), |acc, p| concat_tableaux(&acc, p))
        .map_err(fail)?;
    check!(sum == t, "parts do not recombine");
    Ok(())
}

fn box_refine_fixture() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/box_refine.json"));
    let t = tableau_of(&fx["input"])?;
    let step = RefinementStep {
        position: fx["position"].as_u64().unwrap() as usize,
        first: fx["first"].as_u64().unwrap(),
        second: fx["second"].as_u64().unwrap(),
    };
    let refined = box_refine_tableau(&t, fx["k"].as_u64().unwrap(), step).map_err(fail)?;
    check!(refined == tableau_of(&fx["output"])?, "refined tableau differs");
    let back = crate::refinement::box_unrefine_tableau(&refined, step).map_err(fail)?;
    check!(back == t, "inverse did not recover the input");
    Ok(())
}

fn refinement_poset() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/poset_431.json"));
    let lambda = Partition::new(weights_of(&fx["lambda"])).map_err(fail)?;
    let poset = build_poset(&lambda, &Partition::empty(), &PosetOptions::default())
        .map_err(fail)?;
    let labels = |k: &str| -> Vec<String> {
        fx[k].as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect()
    };
    let solid = labels("solid");
    let dashed = labels("dashed");
    let dotted = labels("dotted");
    check!(
        poset.nodes.len() == solid.len() + dashed.len() + dotted.len(),
        "node count {} differs",
        poset.nodes.len()
    );
    for node in &poset.nodes {
        let want = if solid.contains(&node.label) {
            (true, true)
        } else if dashed.contains(&node.label) {
            (true, false)
        } else if dotted.contains(&node.label) {
            (false, false)
        } else {
            return Err(format!("unexpected node {}", node.label));
        };
        check!(
            (node.status.integral, node.status.unimodular_simplex) == want,
            "node {} has the wrong style",
            node.label
        );
    }
    let mut got_edges: Vec<(String, String)> = poset
        .edges
        .iter()
        .map(|&(c, f)| (poset.nodes[c].label.clone(), poset.nodes[f].label.clone()))
        .collect();
    let mut want_edges: Vec<(String, String)> = fx["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e[0].as_str().unwrap().to_string(),
                e[1].as_str().unwrap().to_string(),
            )
        })
        .collect();
    got_edges.sort();
    want_edges.sort();
    check!(got_edges == want_edges, "edge sets differ");
    Ok(())
}

fn birkhoff() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/birkhoff.json"));
    let lambda = weights_of(&fx["lambda"]);
    let mu = weights_of(&fx["mu"]);
    let spec = weighted_spec(&lambda, &mu, &[1, 1, 1]).map_err(fail)?;
    let points = spec.lattice_points();
    check!(
        points.len() as u64 == fx["count"].as_u64().unwrap(),
        "expected six lattice points, got {}",
        points.len()
    );
    let base = SkewShape::from_parts(lambda, mu).map_err(fail)?;
    let mut matrices = Vec::new();
    for p in &points {
        let m = to_contingency(p).map_err(fail)?;
        check!(m.row_sums() == vec![1, 1, 1], "row sums are not all one");
        check!(m.col_sums() == vec![1, 1, 1], "column sums are not all one");
        check!(
            from_contingency(&m, &base, 1).map_err(fail)? == *p,
            "round trip failed"
        );
        check!(!matrices.contains(&m), "correspondence is not injective");
        matrices.push(m);
    }
    Ok(())
}

fn classification() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/classify.json"));
    for case in fx["cases"].as_array().unwrap() {
        let shape = SkewShape::from_parts(weights_of(&case["lambda"]), weights_of(&case["mu"]))
            .map_err(fail)?;
        let class = classify_shape(&shape);
        let tag = case["tag"].as_str().unwrap();
        let ok = match &class {
            ShapeClass::NonIntegralWitness {
                forbidden_index,
                embedding,
            } => {
                tag == "NonIntegralWitness"
                    && Some(*forbidden_index as u64) == case["forbidden_index"].as_u64()
                    && embedding.verify(&shape.normalize().0, &forbidden_diagrams()[*forbidden_index])
            }
            other => format!("{other:?}") == tag,
        };
        check!(ok, "shape {shape} classified as {class:?}, wanted {tag}");
    }
    Ok(())
}

fn small_polytopes() -> std::result::Result<(), String> {
    let fx = load(include_str!("../fixtures/small_polytopes.json"));
    // the 2x2 box: a segment with two integral vertices, one pulling simplex
    let case = &fx["two_by_two"];
    let spec = weighted_spec(&weights_of(&case["lambda"]), &[], &weights_of(&case["weight"]))
        .map_err(fail)?;
    let verts = spec.vertices().map_err(fail)?;
    check!(
        verts.len() as u64 == case["num_vertices"].as_u64().unwrap(),
        "2x2 box vertex count {}",
        verts.len()
    );
    check!(
        verts.iter().all(GTPattern::is_integral) == case["all_integral"].as_bool().unwrap(),
        "2x2 box integrality"
    );
    let tri = pulling_triangulation(&spec, &VertexOrder::Lex).map_err(fail)?;
    check!(
        tri.len() as u64 == case["pulling_simplices"].as_u64().unwrap(),
        "2x2 box should triangulate into one segment"
    );
    check!(tri[0].normalized_volume.is_one(), "segment is not unimodular");
    // unimodular-simplex flags on the two named weights
    for key in ["simplex_weight", "non_simplex_weight"] {
        let case = &fx[key];
        let spec =
            weighted_spec(&weights_of(&case["lambda"]), &[], &weights_of(&case["weight"]))
                .map_err(fail)?;
        check!(
            is_unimodular_simplex(&spec).map_err(fail)?
                == case["unimodular_simplex"].as_bool().unwrap(),
            "{key}: unimodular-simplex flag differs"
        );
    }
    // the hook decomposition property at bounded dilation
    let case = &fx["hook_idp"];
    let spec = weighted_spec(&weights_of(&case["lambda"]), &[], &weights_of(&case["weight"]))
        .map_err(fail)?;
    let verdict = idp_check(&spec, case["max_k"].as_u64().unwrap()).map_err(fail)?;
    check!(verdict.holds(), "hook decomposition property failed");
    Ok(())
}

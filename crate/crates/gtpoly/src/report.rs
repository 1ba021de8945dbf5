//! The analysis report emitted by the command line front end.

use crate::error::Result;
use crate::polytope::{idp_check, is_unimodular_simplex, PolytopeSpec};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub lambda: Vec<u64>,
    pub mu: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<u64>>,
    pub rows: usize,
    pub k: u64,
    pub empty: bool,
    pub integral: bool,
    pub unimodular_simplex: bool,
    pub num_lattice_points: u64,
    pub num_vertices: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idp_up_to: Option<u64>,
    pub nonintegral_vertices: Vec<serde_json::Value>,
    /// Populated only when timing was requested; omitting it keeps the
    /// output byte-for-byte deterministic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Runs the full analysis of one polytope handle. `max_k` of zero skips the
/// decomposition check.
pub fn analyze(spec: &PolytopeSpec, max_k: u64, with_timing: bool) -> Result<AnalysisReport> {
    let start = std::time::Instant::now();
    let vertices = spec.vertices()?;
    let empty = vertices.is_empty();
    let integral = !empty && vertices.iter().all(crate::pattern::GTPattern::is_integral);
    let unimodular_simplex = integral && is_unimodular_simplex(spec)?;
    let num_lattice_points = spec.lattice_points().len() as u64;
    let idp_up_to = if integral && max_k >= 2 && spec.dilation() == 1 {
        idp_check(spec, max_k)?.holds().then_some(max_k)
    } else {
        None
    };
    let nonintegral_vertices: Vec<serde_json::Value> = vertices
        .iter()
        .filter(|v| !v.is_integral())
        .map(|v| v.to_json())
        .collect();
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION.to_string(),
        lambda: spec.shape().lambda.parts().to_vec(),
        mu: spec.shape().mu.parts().to_vec(),
        weight: spec.weight().map(|w| w.parts().to_vec()),
        rows: spec.num_rows(),
        k: spec.dilation(),
        empty,
        integral,
        unimodular_simplex,
        num_lattice_points,
        num_vertices: vertices.len() as u64,
        idp_up_to,
        nonintegral_vertices,
        timing_ms: with_timing.then(|| start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Composition;
    use crate::shape::SkewShape;

    #[test]
    fn report_is_internally_consistent() {
        for (l, w) in [
            (vec![5u64, 3], vec![2u64, 2, 2, 1, 1]),
            (vec![5, 3], vec![2, 2, 1, 2, 1]),
            (vec![4, 3, 1], vec![4, 2, 2]),
        ] {
            let spec = PolytopeSpec::weighted(
                SkewShape::from_parts(l, vec![]).unwrap(),
                Composition::new(w),
                1,
            )
            .unwrap();
            let r = analyze(&spec, 2, false).unwrap();
            if r.unimodular_simplex {
                assert!(r.integral);
            }
            if r.integral {
                assert!(r.nonintegral_vertices.is_empty());
            } else {
                assert!(r.idp_up_to.is_none());
            }
            assert!(r.timing_ms.is_none());
        }
    }

    #[test]
    fn integrality_pair_reports() {
        let mk = |w: Vec<u64>| {
            PolytopeSpec::weighted(
                SkewShape::from_parts(vec![5, 3], vec![]).unwrap(),
                Composition::new(w),
                1,
            )
            .unwrap()
        };
        let good = analyze(&mk(vec![2, 2, 2, 1, 1]), 0, false).unwrap();
        assert!(good.integral && !good.empty);
        let bad = analyze(&mk(vec![2, 2, 1, 2, 1]), 0, false).unwrap();
        assert!(!bad.integral && !bad.empty);
        assert!(!bad.nonintegral_vertices.is_empty());
    }
}

use gtpoly::partition::Partition;
use gtpoly::poset::{build_poset, PosetOptions};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let p = build_poset(
        &Partition::new(vec![4, 3, 1]).unwrap(),
        &Partition::empty(),
        &PosetOptions { max_k_for_idp: 2, permutations: false, threads: 4 },
    )
    .unwrap();
    println!("built in {:.2?}; {} nodes, {} edges", t0.elapsed(), p.nodes.len(), p.edges.len());
    for n in &p.nodes {
        let style = if n.status.unimodular_simplex { "solid" } else if n.status.integral { "dashed" } else { "dotted" };
        println!("{:>10} {style:>7} points={} vertices={} idp={:?}", n.label, n.status.num_lattice_points, n.status.num_vertices, n.status.idp_up_to);
    }
    for (c, f) in &p.edges {
        println!("edge {} -> {}", p.nodes[*c].label, p.nodes[*f].label);
    }
}

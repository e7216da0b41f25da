//! Fill the boundary of a rotated triangle equivariantly.

use std::collections::BTreeSet;

use drtoolkit::builders::standard_action;
use drtoolkit::complex::{embedded_paths, Cell};
use drtoolkit::construct::{equivariant_filling, orbit_graph};
use drtoolkit::diagram::FillBounds;

fn main() {
    let bounds = FillBounds::default();
    let (a, _) = standard_action("cyclic_rotation:3").unwrap().remove_inversions().unwrap();
    let x = a.complex().clone();
    let boundary: BTreeSet<Cell> = x
        .one_skeleton()
        .cells()
        .into_iter()
        .filter(|c| match c {
            Cell::Vertex(v) => !v.as_str().starts_with("b."),
            Cell::Edge(e) => e.as_str().starts_with('h'),
            Cell::Face(_) => false,
        })
        .collect();
    let y0 = x.subcomplex(&boundary).unwrap();
    let ef = equivariant_filling(&a, &y0, &bounds).unwrap();
    println!("Y0: {} vertices, {} edges", y0.num_vertices(), y0.num_edges());
    println!("Y: {} faces in {} orbit(s), euler {}", ef.y.num_faces(), ef.orbits.len(), ef.y.euler_characteristic());
    for o in &ef.orbits {
        println!("  orbit of {} with {} translates, filling area {}", o.representative, o.cosets.len(), o.filling.area());
    }
    println!("verified: {:?}", ef.verify(&a, &bounds));

    let (m, _) = standard_action("reflection:4").unwrap().remove_inversions().unwrap();
    let fixed: Vec<_> = m.fixed_set().unwrap().vertices().cloned().collect();
    let (u, v) = (&fixed[0], &fixed[fixed.len() - 1]);
    let alpha = embedded_paths(m.complex(), u, v, 4).into_iter().min_by_key(|p| p.len()).unwrap();
    let g = orbit_graph(&m, &alpha).unwrap();
    println!("orbit graph of {alpha} under a reflection: {} vertices, {} edges", g.num_vertices(), g.num_edges());
}

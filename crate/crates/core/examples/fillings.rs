//! Minimal van Kampen diagrams, all reduced fillings, and a reduced sphere.

use std::sync::Arc;

use drtoolkit::builders::{bigon_sphere, standard};
use drtoolkit::complex::{parse_letters, Cycle};
use drtoolkit::diagram::{enumerate_fillings, fill_cycle, glue_to_sphere, FillBounds};

fn main() {
    let x = Arc::new(standard("two_triangles").unwrap());
    let outer = Cycle::from_letters(&x, parse_letters("p+ q+ t- r-").unwrap()).unwrap();
    let d = fill_cycle(&x, &outer, &FillBounds::default()).unwrap().unwrap();
    println!("minimal filling of {outer} has area {}:", d.area());
    print!("{}", d.to_text());

    let b = Arc::new(bigon_sphere());
    let gamma = Cycle::from_letters(&b, parse_letters("e1+ e2-").unwrap()).unwrap();
    let found = enumerate_fillings(&b, &gamma, 5).unwrap();
    let areas: Vec<usize> = found.fillings.iter().map(|f| f.area()).collect();
    println!("reduced fillings of {gamma} in the bigon sphere, areas {areas:?}");
    let s = glue_to_sphere(&found.fillings[0], &found.fillings[1]).unwrap();
    println!("gluing the first two: sphere {}, area {}, near-immersion {}", s.diagram.is_sphere(), s.area(), s.is_near_immersion());
}

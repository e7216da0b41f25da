//! Build a complex from text, inspect it and collapse it.

use drtoolkit::complex::{barycentric_subdivision, Id, TwoComplex};

fn main() {
    let x = TwoComplex::from_text(
        "vertex a\nvertex b\nvertex c\nvertex d\n\
         edge s a b\nedge p b c\nedge q c a\nedge r b d\nedge t d a\n\
         face f1 s+ p+ q+\nface f2 s- t- r-\n",
    )
    .expect("well-formed");
    println!("{} vertices, {} edges, {} faces, euler {}", x.num_vertices(), x.num_edges(), x.num_faces(), x.euler_characteristic());
    println!("free pairs: {:?}", x.free_edges());

    let once = x.collapse(&Id::new("p"), &Id::new("f1")).unwrap();
    println!("after collapsing p into f1: {} faces, euler {}", once.num_faces(), once.euler_characteristic());

    let sd = barycentric_subdivision(&x);
    println!("subdivision: {} faces, euler {}", sd.complex.num_faces(), sd.complex.euler_characteristic());
    print!("{}", x.to_text());
}

//! Integral homology through Smith normal form.

use drtoolkit::builders::{corpus, parse_presentation};
use drtoolkit::homotopy::{homology, smith_normal_form, ChainData};

fn main() {
    for entry in corpus() {
        println!("{:<28} {}", entry.name, homology(&entry.complex));
    }
    for p in ["a | a a a", "a, b | a b A B", "a, b | a a, b b b"] {
        let x = parse_presentation(p).unwrap();
        println!("<{p}>: {}", homology(&x));
    }
    let x = parse_presentation("a, b | a a b b").unwrap();
    let chains = ChainData::new(&x);
    let snf = smith_normal_form(&chains.d2);
    println!("d2 of <a, b | a a b b> has factors {:?} after {} operations, replay ok: {}", snf.factors, snf.ops.len(), snf.verify(&chains.d2));
}

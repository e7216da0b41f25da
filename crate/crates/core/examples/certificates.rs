//! Emit certificates, verify them, and watch a tampered one fail.

use drtoolkit::builders::standard;
use drtoolkit::certificate::{emit_dr, emit_homology, verify, verify_json, Bounds, Witness};
use drtoolkit::dr::{decide_dr, DrBounds};

fn main() {
    let x = standard("subdivided:triangle_disk:1").unwrap();
    let cert = emit_dr(&x, &decide_dr(&x, &DrBounds::default()), Bounds::default()).unwrap();
    let json = cert.to_json();
    println!("DR certificate: {} bytes, input sha256 {}", json.len(), cert.input_sha256);
    println!("verifies: {:?}", verify_json(&json).map(|_| ()));

    let mut bad = cert.clone();
    if let Witness::FreeFaceOrder { order, .. } = &mut bad.witness {
        order.reverse();
    }
    println!("reversed collapse order: {:?}", verify(&bad));

    let h = emit_homology(&standard("projective_plane").unwrap(), Bounds::default());
    println!("homology claim {:?}: {:?}", h.claim, verify(&h));
    let mut bad = h.clone();
    bad.bounds.max_area = 1;
    println!("edited bounds: {:?}", verify(&bad));
}

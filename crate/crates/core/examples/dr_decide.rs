//! Decide diagrammatic reducibility for a few complexes.

use drtoolkit::builders::standard;
use drtoolkit::dr::{brute_force_core_oracle, decide_dr, greedy_core, DrBounds, DrCertificate};

fn main() {
    let bounds = DrBounds::default();
    for name in ["triangle_disk", "two_triangles", "bigon_sphere", "presentation_sphere", "torus", "projective_plane", "subdivided:two_triangles:1"] {
        let x = standard(name).unwrap();
        let v = decide_dr(&x, &bounds);
        let cert = match &v.certificate {
            DrCertificate::Core(c) if c.is_collapsible() => "collapse order".to_string(),
            DrCertificate::Core(c) => format!("core {c:?}"),
            DrCertificate::Sphere(s) => format!("reduced sphere of area {}", s.area()),
            DrCertificate::None => "none".into(),
        };
        let oracle = brute_force_core_oracle(&x, 12).unwrap();
        println!("{name:<28} {:<8} {cert}", v.status.to_string());
        println!("{:<28} greedy collapsible {}, oracle core {:?}", "", greedy_core(&x).is_collapsible(), oracle);
        for a in &v.assumptions {
            println!("{:<28} assuming {a}", "");
        }
    }
}

//! The acceptance suite: one line per criterion, non-zero exit on failure.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use drtoolkit::action::GroupAction;
use drtoolkit::builders::{
    action_corpus, bigon_sphere, corpus, n_gon_disk, parse_presentation, random_complex, standard, standard_action,
    torus, triangle_disk, Requirement,
};
use drtoolkit::certificate::{self, verify_json, Bounds, Certificate, CertificateError};
use drtoolkit::complex::{barycentric_subdivision, embedded_cycles, embedded_paths, Cell, DirectedEdge, Id, TwoComplex};
use drtoolkit::construct::equivariant_filling;
use drtoolkit::diagram::{enumerate_fillings, fill_cycle, FillBounds};
use drtoolkit::dr::{brute_force_core_oracle, decide_dr, greedy_core, sphere_search, DrBounds, DrStatus};
use drtoolkit::homotopy::{certify_simply_connected, collapsible, contractibility_verdict, homology, Contractibility};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Actions without inversions: subdivided when necessary.
fn prepared_actions() -> Vec<(String, GroupAction)> {
    action_corpus()
        .into_iter()
        .map(|(name, a)| {
            if a.has_inversions().is_empty() {
                (name, a)
            } else {
                (name, a.remove_inversions().expect("subdivision lifts").0)
            }
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let mut complexes: Vec<(String, TwoComplex)> = corpus()
        .into_iter()
        .filter(|e| e.complex.num_faces() <= 12)
        .map(|e| (e.name, e.complex))
        .collect();
    for seed in 0..200u64 {
        let require = if seed % 2 == 0 { Requirement::Any } else { Requirement::SimplyConnectedDr };
        complexes.push((format!("random {seed}"), random_complex(seed, 6, 4, require)));
    }
    let mut cores = 0;
    for (name, x) in &complexes {
        let greedy = greedy_core(x);
        let oracle = brute_force_core_oracle(x, 12).map_err(|e| format!("{name}: {e}"))?;
        ensure(greedy.is_collapsible() == oracle.is_none(), || format!("{name}: greedy and oracle disagree"))?;
        greedy.verify(x).map_err(|e| format!("{name}: {e}"))?;
        cores += usize::from(oracle.is_some());
    }
    Ok(format!("{} complexes agree, {cores} with a core", complexes.len()))
}

fn fixed_sets_contractible() -> Outcome {
    let pairs = prepared_actions();
    ensure(pairs.len() >= 10, || "fewer than 10 pairs".into())?;
    for (name, a) in &pairs {
        ensure(decide_dr(a.complex(), &DrBounds::default()).status == DrStatus::Dr, || format!("{name}: complex not DR"))?;
        let fixed = a.fixed_set().map_err(|e| format!("{name}: {e}"))?;
        ensure(fixed.num_vertices() > 0, || format!("{name}: empty fixed set"))?;
        ensure(fixed.is_connected(), || format!("{name}: fixed set disconnected"))?;
        let v = contractibility_verdict(&fixed, &FillBounds::default()).verdict;
        ensure(v == Contractibility::Contractible, || format!("{name}: fixed set {v}"))?;
    }
    Ok(format!("{} pairs, every fixed set non-empty and contractible", pairs.len()))
}

fn fixed_sets_simply_connected() -> Outcome {
    let pairs = prepared_actions();
    for (name, a) in &pairs {
        let fixed = a.fixed_set().map_err(|e| format!("{name}: {e}"))?;
        ensure(fixed.is_connected(), || format!("{name}: fixed set disconnected"))?;
        let sc = certify_simply_connected(&fixed, &FillBounds::default());
        ensure(sc.is_certified(), || format!("{name}: fixed set simple connectivity {}", sc.label()))?;
    }
    Ok(format!("{} pairs connected, {} simply connected", pairs.len(), pairs.len()))
}

fn filling_uniqueness() -> Outcome {
    let mut cycles = 0;
    let mut complexes = 0;
    for e in corpus().into_iter().filter(|e| e.expected.dr == DrStatus::Dr) {
        let x = Arc::new(e.complex);
        complexes += 1;
        for gamma in embedded_cycles(&x.one_skeleton()).into_iter().filter(|c| c.len() <= 8) {
            let found = enumerate_fillings(&x, &gamma, 6).map_err(|err| format!("{}: {err}", e.name))?;
            ensure(!found.truncated, || format!("{}: enumeration of {gamma} truncated", e.name))?;
            if found.fillings.is_empty() {
                let min = fill_cycle(&x, &gamma, &FillBounds::default()).map_err(|err| format!("{}: {err}", e.name))?;
                let area = min.map(|d| d.area());
                ensure(area.is_some_and(|a| a > 6), || format!("{}: {gamma} has no filling but minimal area {area:?}", e.name))?;
                continue;
            }
            ensure(found.fillings.len() == 1, || {
                format!("{}: {gamma} has {} isomorphism classes", e.name, found.fillings.len())
            })?;
            cycles += 1;
        }
    }
    Ok(format!("{cycles} cycles in {complexes} DR complexes, one class each"))
}

fn non_dr_certificate() -> Outcome {
    let x = bigon_sphere();
    let s = sphere_search(&x, 2).sphere.ok_or("no sphere of area 2")?;
    ensure(s.area() == 2, || format!("area {}", s.area()))?;
    let c = certificate::emit_sphere(&x, &s, Bounds::default());
    verify_json(&c.to_json()).map_err(|e| e.to_string())?;
    let replayed = drtoolkit::diagram::text::parse_diagram(&s.to_text(), Arc::new(x)).map_err(|e| e.to_string())?;
    ensure(replayed.is_near_immersion() && replayed.diagram.is_sphere(), || "replayed sphere folds".into())?;
    Ok("reduced sphere of area 2, certificate verified".into())
}

fn fixed_point_construction() -> Outcome {
    let pairs = prepared_actions();
    for (name, a) in &pairs {
        let v = a.find_fixed_point(&FillBounds::default()).map_err(|e| format!("{name}: {e}"))?;
        let fixed = a.fixed_set().map_err(|e| format!("{name}: {e}"))?;
        ensure(fixed.has_vertex(&v), || format!("{name}: {v} not in the fixed set"))?;
        let (w, _) = a.equivariant_collapse().map_err(|e| format!("{name}: {e}"))?;
        ensure(w.complex().is_tree(), || format!("{name}: collapse is not a tree"))?;
    }
    let mut trees = 0;
    for e in corpus().into_iter().filter(|e| e.expected.dr == DrStatus::Dr) {
        let a = GroupAction::trivial(Arc::new(e.complex));
        let (w, _) = a.equivariant_collapse().map_err(|err| format!("{}: {err}", e.name))?;
        ensure(w.complex().is_tree(), || format!("{}: collapse is not a tree", e.name))?;
        trees += 1;
    }
    Ok(format!("{} actions agree, {} collapses end in trees", pairs.len(), pairs.len() + trees))
}

fn homology_regression() -> Outcome {
    let exact = [
        ("torus", homology(&torus()).betti, [1, 2, 1]),
        ("bigon_sphere", homology(&bigon_sphere()).betti, [1, 0, 1]),
        ("triangle_disk", homology(&triangle_disk()).betti, [1, 0, 0]),
    ];
    for (name, got, want) in exact {
        ensure(got == want, || format!("{name}: betti {got:?}, expected {want:?}"))?;
    }
    let rp2 = homology(&parse_presentation("a | a a").map_err(|e| e.to_string())?);
    ensure(rp2.torsion1 == vec![BigInt::from(2)], || format!("<a | aa>: torsion {:?}", rp2.torsion1))?;
    let entries = corpus();
    for e in &entries {
        let h = homology(&e.complex);
        ensure(h.euler_characteristic() == e.complex.euler_characteristic(), || format!("{}: alternating sum", e.name))?;
        ensure(h.betti == e.expected.betti, || format!("{}: betti {:?}", e.name, h.betti))?;
        let torsion: Vec<BigInt> = e.expected.torsion1.iter().map(|&t| BigInt::from(t)).collect();
        ensure(h.torsion1 == torsion, || format!("{}: torsion {:?}", e.name, h.torsion1))?;
    }
    Ok(format!("regressions exact, alternating sum holds on {} complexes", entries.len()))
}

fn subdivision_invariance() -> Outcome {
    let mut complexes: Vec<(String, TwoComplex)> = corpus().into_iter().map(|e| (e.name, e.complex)).collect();
    complexes.extend((0..20).map(|s| (format!("random {s}"), random_complex(s, 4, 4, Requirement::Any))));
    for (name, x) in &complexes {
        let sd = barycentric_subdivision(x);
        ensure(sd.complex.euler_characteristic() == x.euler_characteristic(), || format!("{name}: euler changed"))?;
        ensure(homology(&sd.complex) == homology(x), || format!("{name}: homology changed"))?;
    }
    let actions = action_corpus();
    let mut extra = vec![("face_swap".to_string(), standard_action("face_swap").map_err(|e| e.to_string())?)];
    extra.extend(actions);
    for (name, a) in &extra {
        let (b, _) = a.remove_inversions().map_err(|e| format!("{name}: {e}"))?;
        ensure(b.has_inversions().is_empty(), || format!("{name}: inversions remain"))?;
        b.validate().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} complexes invariant, {} actions free of inversions", complexes.len(), extra.len()))
}

/// Counts embedded walks by trying every letter sequence.
fn brute_paths(x: &TwoComplex, u: &Id, n: usize) -> BTreeMap<(Id, usize), usize> {
    let letters: Vec<DirectedEdge> =
        x.edge_ids().flat_map(|e| [DirectedEdge::plus(e.clone()), DirectedEdge::minus(e.clone())]).collect();
    let mut counts = BTreeMap::new();
    for len in 0..=n {
        let total = letters.len().pow(len as u32);
        for mut code in 0..total {
            let mut word = Vec::with_capacity(len);
            for _ in 0..len {
                word.push(letters[code % letters.len()].clone());
                code /= letters.len();
            }
            let mut seen = vec![u.clone()];
            let mut at = u.clone();
            let mut ok = true;
            for l in &word {
                if x.tail(l) != Some(&at) {
                    ok = false;
                    break;
                }
                at = x.head(l).unwrap().clone();
                if seen.contains(&at) {
                    ok = false;
                    break;
                }
                seen.push(at.clone());
            }
            if ok {
                *counts.entry((at, len)).or_default() += 1;
            }
        }
    }
    counts
}

fn random_graph(seed: u64) -> TwoComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = TwoComplex::new();
    let nv = rng.gen_range(1..=5);
    for i in 0..nv {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    for i in 0..rng.gen_range(0..=8) {
        let (a, b) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        g.add_edge(format!("e{i}"), format!("v{a}"), format!("v{b}")).unwrap();
    }
    g
}

fn path_enumeration() -> Outcome {
    let mut graphs: Vec<TwoComplex> = corpus()
        .into_iter()
        .map(|e| e.complex.one_skeleton())
        .filter(|g| g.num_edges() <= 8)
        .collect();
    graphs.extend((0..60).map(random_graph));
    let mut checked = 0;
    for (i, g) in graphs.iter().enumerate() {
        for u in g.vertices() {
            let brute = brute_paths(g, u, 4);
            for v in g.vertices() {
                for n in 0..=4 {
                    let got = embedded_paths(g, u, v, n);
                    let want: usize = brute.iter().filter(|((w, len), _)| w == v && *len <= n).map(|(_, c)| c).sum();
                    ensure(got.len() == want, || format!("graph {i}: {u}->{v} n={n}: {} vs {want}", got.len()))?;
                    ensure(got.iter().all(|p| p.is_embedded(g) && p.end(g).as_ref() == Some(v)), || {
                        format!("graph {i}: non-embedded path")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{} graphs, {checked} counts exact", graphs.len()))
}

fn boundary_of(a: &GroupAction) -> TwoComplex {
    let x = a.complex();
    let interior: BTreeSet<&Id> = x.vertices().filter(|v| v.as_str().starts_with("b.")).collect();
    let cells: BTreeSet<Cell> = x
        .one_skeleton()
        .cells()
        .into_iter()
        .filter(|c| match c {
            Cell::Vertex(v) => !interior.contains(v),
            Cell::Edge(e) => {
                let ends = x.edge(e).unwrap();
                !interior.contains(&ends.tail) && !interior.contains(&ends.head)
            }
            Cell::Face(_) => false,
        })
        .collect();
    x.one_skeleton().subcomplex(&cells).unwrap()
}

fn equivariant_filling_checks() -> Outcome {
    let bounds = FillBounds::default();
    let mut instances: Vec<(String, GroupAction, TwoComplex)> = Vec::new();
    for name in ["cyclic_rotation:3", "cyclic_rotation:4", "reflection:4"] {
        let (b, _) = standard_action(name).unwrap().remove_inversions().map_err(|e| e.to_string())?;
        let y0 = boundary_of(&b);
        instances.push((name.to_string(), b, y0));
    }
    let square = GroupAction::trivial(Arc::new(n_gon_disk(4)));
    let y0 = square.complex().one_skeleton();
    instances.push(("trivial:n_gon_disk:4".into(), square, y0));
    let swap = standard_action("triangle_swap").unwrap();
    let y0 = swap.complex().one_skeleton();
    instances.push(("triangle_swap".into(), swap, y0));
    for (name, a, y0) in &instances {
        let ef = equivariant_filling(a, y0, &bounds).map_err(|e| format!("{name}: {e}"))?;
        ef.verify(a, &bounds).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} instances verified", instances.len()))
}

/// Every kind of certificate the toolkit emits, over the corpus.
fn emitted_certificates() -> Result<Vec<(String, Certificate)>, String> {
    let b = Bounds::default();
    let mut out = Vec::new();
    for e in corpus() {
        let x = &e.complex;
        out.push((format!("homology {}", e.name), certificate::emit_homology(x, b)));
        let verdict = decide_dr(x, &DrBounds::default());
        if verdict.status != DrStatus::Unknown {
            out.push((format!("dr {}", e.name), certificate::emit_dr(x, &verdict, b).map_err(|err| err.to_string())?));
        }
        if let Some(steps) = collapsible(x) {
            out.push((format!("collapse {}", e.name), certificate::emit_collapse(x, &steps, b)));
        }
        if let drtoolkit::homotopy::SimpleConnectivity::Certified(sc) = certify_simply_connected(x, &b.fill()) {
            out.push((format!("simply connected {}", e.name), certificate::emit_simply_connected(x, &sc, b)));
        }
    }
    let bigon = bigon_sphere();
    let s = sphere_search(&bigon, 2).sphere.ok_or("no sphere")?;
    out.push(("sphere bigon_sphere".into(), certificate::emit_sphere(&bigon, &s, b)));
    let x = Arc::new(standard("two_triangles").unwrap());
    for gamma in embedded_cycles(&x.one_skeleton()) {
        if let Ok(Some(d)) = fill_cycle(&x, &gamma, &b.fill()) {
            out.push((format!("filling {gamma}"), certificate::emit_filling(&x, &gamma, &d, b)));
        }
    }
    for (name, a) in prepared_actions() {
        let v = a.find_fixed_point(&b.fill()).map_err(|e| format!("{name}: {e}"))?;
        out.push((format!("fixed point {name}"), certificate::emit_fixed_point(&a, &v, b)));
    }
    Ok(out)
}

fn edit(doc: &Value, f: impl FnOnce(&mut Value)) -> String {
    let mut v = doc.clone();
    f(&mut v);
    serde_json::to_string_pretty(&v).unwrap()
}

fn set_str(v: &mut Value, path: &[&str], new: &str) {
    let mut cur = v;
    for p in path {
        cur = &mut cur[*p];
    }
    *cur = Value::String(new.into());
}

/// Twenty single-field edits, each of which must be rejected.
fn tamper_battery() -> Result<Vec<(String, String)>, String> {
    let find = |kind: &str| -> Result<Value, String> {
        let all = emitted_certificates()?;
        let (_, c) = all.into_iter().find(|(n, _)| n.starts_with(kind)).ok_or(format!("no {kind} certificate"))?;
        Ok(serde_json::from_str(&c.to_json()).unwrap())
    };
    let dr = find("dr n_gon_disk:4")?;
    let core = find("dr bigon_sphere")?;
    let sphere = find("sphere")?;
    let hom = find("homology projective_plane")?;
    let snf = find("homology subdivided:triangle_disk:1")?;
    let fixed = find("fixed point cyclic_rotation:3")?;
    let filling = find("filling")?;
    let collapse = find("collapse triangle_disk")?;
    let sc = find("simply connected subdivided:triangle_disk:1")?;
    let t = |name: &str, text: String| (name.to_string(), text);
    Ok(vec![
        t("format", edit(&dr, |v| set_str(v, &["format"], "drtoolkit-certificate/0"))),
        t("input hash", edit(&dr, |v| set_str(v, &["input_sha256"], &"0".repeat(64)))),
        t("input text", edit(&dr, |v| {
            let s = v["input"].as_str().unwrap().replace("vertex v0", "vertex w0");
            v["input"] = Value::String(s);
        })),
        t("claim kind", edit(&dr, |v| set_str(v, &["claim", "kind"], "not_dr"))),
        t("collapse edge", edit(&dr, |v| v["witness"]["order"][0][0] = Value::String("e9".into()))),
        t("collapse face", edit(&dr, |v| v["witness"]["order"][0][1] = Value::String("g".into()))),
        t("dropped collapse", edit(&collapse, |v| v["witness"]["steps"].as_array_mut().unwrap().pop().map(|_| ()).unwrap())),
        t("spanning tree", edit(&sc, |v| v["witness"]["loops"]["tree"].as_array_mut().unwrap().truncate(1))),
        t("loop root", edit(&sc, |v| set_str(v, &["witness", "loops", "root"], "nowhere"))),
        t("core face", edit(&core, |v| v["witness"]["faces"].as_array_mut().unwrap().truncate(1))),
        t("sphere area", edit(&sphere, |v| v["witness"]["area"] = Value::from(3))),
        t("sphere diagram", edit(&sphere, |v| {
            let s = v["witness"]["diagram"].as_str().unwrap().replacen(" f2 rot=", " f1 rot=", 1);
            v["witness"]["diagram"] = Value::String(s);
        })),
        t("betti", edit(&hom, |v| v["claim"]["betti"][1] = Value::from(1))),
        t("torsion", edit(&hom, |v| v["claim"]["torsion1"] = serde_json::json!([]))),
        t("snf op", edit(&snf, |v| v["witness"]["d2"].as_array_mut().unwrap().pop().map(|_| ()).unwrap())),
        t("fixed vertex", edit(&fixed, |v| set_str(v, &["claim", "vertex"], "v.x"))),
        t("filling area", edit(&filling, |v| v["claim"]["area"] = Value::from(5))),
        t("filling cycle", edit(&filling, |v| set_str(v, &["claim", "cycle"], "s+ p+ q+ q- s-"))),
        t("bounds", edit(&dr, |v| v["bounds"]["max_area"] = Value::from(99))),
        t("seal", edit(&dr, |v| set_str(v, &["seal"], &"f".repeat(64)))),
    ])
}

fn certificate_integrity() -> Outcome {
    let certs = emitted_certificates()?;
    for (name, c) in &certs {
        verify_json(&c.to_json()).map_err(|e| format!("{name}: {e}"))?;
    }
    let battery = tamper_battery()?;
    ensure(battery.len() == 20, || format!("battery has {} tampers", battery.len()))?;
    let mut reasons: BTreeMap<&str, usize> = BTreeMap::new();
    for (name, text) in &battery {
        let kind = match verify_json(text) {
            Ok(_) => return Err(format!("tamper {name:?} accepted")),
            Err(CertificateError::Malformed(_)) => "malformed",
            Err(CertificateError::HashMismatch { .. }) => "hash",
            Err(CertificateError::ReplayFailure { .. }) => "replay",
            Err(CertificateError::SealMismatch) => "seal",
            Err(CertificateError::Unsupported(_)) => "unsupported",
        };
        *reasons.entry(kind).or_default() += 1;
    }
    Ok(format!("{} certificates verified, {}/20 tampers rejected {reasons:?}", certs.len(), battery.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence", oracle_equivalence),
        ("fixed sets contractible", fixed_sets_contractible),
        ("fixed sets connected and simply connected", fixed_sets_simply_connected),
        ("filling uniqueness", filling_uniqueness),
        ("non-DR certificate", non_dr_certificate),
        ("fixed-point construction", fixed_point_construction),
        ("homology regression", homology_regression),
        ("subdivision invariance", subdivision_invariance),
        ("path enumeration", path_enumeration),
        ("equivariant filling", equivariant_filling_checks),
        ("certificate integrity", certificate_integrity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{ms} ms]", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

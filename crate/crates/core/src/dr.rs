//! Diagrammatic reducibility.
//!
//! A simply-connected finite 2-complex is DR exactly when every subcomplex
//! with a face has a free edge, so repeatedly removing faces with a free edge
//! either empties the complex or leaves a core witnessing non-reducibility.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{embedded_cycles, Id, TwoComplex};
use crate::diagram::{enumerate_fillings, glue_to_sphere, DiagramInX, FillBounds};
use crate::homotopy::{certify_simply_connected, SimpleConnectivity};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoreResult {
    /// Free pairs `(edge, face)` whose successive collapses remove every face.
    Collapsible(Vec<(Id, Id)>),
    /// A non-empty set of faces none of which has a free edge among them.
    Core(Vec<Id>),
}

impl CoreResult {
    pub fn is_collapsible(&self) -> bool {
        matches!(self, CoreResult::Collapsible(_))
    }

    /// Re-checks the result against `x` without trusting how it was produced.
    pub fn verify(&self, x: &TwoComplex) -> Result<(), String> {
        match self {
            CoreResult::Collapsible(order) => {
                let mut cur = x.clone();
                for (i, (e, f)) in order.iter().enumerate() {
                    cur = cur.collapse(e, f).map_err(|err| format!("step {i}: {err}"))?;
                }
                if cur.num_faces() == 0 {
                    Ok(())
                } else {
                    Err(format!("{} faces remain after the collapse order", cur.num_faces()))
                }
            }
            CoreResult::Core(faces) => {
                if faces.is_empty() {
                    return Err("empty core".into());
                }
                if let Some(f) = faces.iter().find(|f| x.face(*f).is_none()) {
                    return Err(format!("unknown face {f}"));
                }
                match x.with_faces(faces).free_edges().first() {
                    Some((e, f)) => Err(format!("edge {e} is free in face {f} of the core")),
                    None => Ok(()),
                }
            }
        }
    }
}

/// A free edge of `face` relative to the faces in `remaining`.
fn free_edge_in(x: &TwoComplex, face: &Id, remaining: &BTreeSet<Id>) -> Option<Id> {
    let word = x.face(face)?;
    let mut counts: BTreeMap<&Id, usize> = BTreeMap::new();
    for f in remaining {
        for l in x.face(f).map(|w| w.letters()).unwrap_or_default() {
            *counts.entry(&l.edge).or_default() += 1;
        }
    }
    word.letters().iter().map(|l| &l.edge).filter(|e| counts[e] == 1).min().cloned()
}

/// Removes faces with a free edge, always taking the first removable face in
/// `order`, until none is removable.
pub fn greedy_core_ordered(x: &TwoComplex, order: &[Id]) -> CoreResult {
    let mut remaining: BTreeSet<Id> = x.face_ids().cloned().collect();
    let mut steps = Vec::new();
    'outer: while !remaining.is_empty() {
        for f in order.iter().filter(|f| remaining.contains(*f)) {
            if let Some(e) = free_edge_in(x, f, &remaining) {
                remaining.remove(f);
                steps.push((e, f.clone()));
                continue 'outer;
            }
        }
        return CoreResult::Core(remaining.into_iter().collect());
    }
    CoreResult::Collapsible(steps)
}

/// [`greedy_core_ordered`] with least face id first.
pub fn greedy_core(x: &TwoComplex) -> CoreResult {
    let order: Vec<Id> = x.face_ids().cloned().collect();
    greedy_core_ordered(x, &order)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrError {
    #[error("{faces} faces exceed the oracle limit of {limit}")]
    TooLarge { faces: usize, limit: usize },
}

pub const ORACLE_FACE_LIMIT: usize = 12;

/// Tries every non-empty set of faces, smallest first, and returns one with
/// no free edge relative to itself.
pub fn brute_force_core_oracle(x: &TwoComplex, limit: usize) -> Result<Option<Vec<Id>>, DrError> {
    let faces: Vec<&Id> = x.face_ids().collect();
    let n = faces.len();
    if n > limit {
        return Err(DrError::TooLarge { faces: n, limit });
    }
    let words: Vec<Vec<&Id>> =
        faces.iter().map(|f| x.face(*f).unwrap().letters().iter().map(|l| &l.edge).collect()).collect();
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let mut counts: BTreeMap<&Id, usize> = BTreeMap::new();
        for (i, w) in words.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for e in w {
                    *counts.entry(*e).or_default() += 1;
                }
            }
        }
        let has_free = (0..n).any(|i| mask >> i & 1 == 1 && words[i].iter().any(|e| counts[e] == 1));
        if !has_free {
            return Ok(Some((0..n).filter(|i| mask >> i & 1 == 1).map(|i| faces[i].clone()).collect()));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DrStatus {
    Dr,
    NotDr,
    Unknown,
}

impl std::fmt::Display for DrStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DrStatus::Dr => "DR",
            DrStatus::NotDr => "NotDR",
            DrStatus::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub enum DrCertificate {
    Core(CoreResult),
    Sphere(DiagramInX),
    None,
}

#[derive(Clone, Debug)]
pub struct DrVerdict {
    pub status: DrStatus,
    pub certificate: DrCertificate,
    pub assumptions: Vec<String>,
    pub simple_connectivity: SimpleConnectivity,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DrBounds {
    pub fill: FillBounds,
    pub sphere_area: usize,
}

impl Default for DrBounds {
    fn default() -> DrBounds {
        DrBounds { fill: FillBounds::default(), sphere_area: 4 }
    }
}

pub fn decide_dr(x: &TwoComplex, bounds: &DrBounds) -> DrVerdict {
    let sc = certify_simply_connected(x, &bounds.fill);
    if let SimpleConnectivity::Certified(c) = &sc {
        let assumptions = vec![format!("simply connected: {} generator loops filled", c.loops.len())];
        let core = greedy_core(x);
        let status = if core.is_collapsible() { DrStatus::Dr } else { DrStatus::NotDr };
        return DrVerdict { status, certificate: DrCertificate::Core(core), assumptions, simple_connectivity: sc };
    }
    let reason = match &sc {
        SimpleConnectivity::NotSimplyConnected(r) => format!("not simply connected: {r}"),
        _ => "simple connectivity not certified within bounds".to_string(),
    };
    let search = sphere_search(x, bounds.sphere_area);
    match search.sphere {
        Some(s) => DrVerdict {
            status: DrStatus::NotDr,
            certificate: DrCertificate::Sphere(s),
            assumptions: vec![reason, "reduced spherical diagram found".into()],
            simple_connectivity: sc,
        },
        None => DrVerdict {
            status: DrStatus::Unknown,
            certificate: DrCertificate::None,
            assumptions: vec![reason, format!("no reduced sphere of area at most {}", bounds.sphere_area)],
            simple_connectivity: sc,
        },
    }
}

#[derive(Clone, Debug)]
pub struct SphereSearch {
    pub sphere: Option<DiagramInX>,
    /// Set when some enumeration was cut short.
    pub exhausted: bool,
}

/// Glues pairs of non-isomorphic near-immersed fillings of embedded cycles
/// and returns the first gluing that is itself a near-immersion.
pub fn sphere_search(x: &TwoComplex, max_area: usize) -> SphereSearch {
    let mut exhausted = false;
    if !x.is_valid() || max_area < 2 {
        return SphereSearch { sphere: None, exhausted };
    }
    let shared = Arc::new(x.clone());
    let longest = x.faces().map(|(_, w)| w.len()).max().unwrap_or(0);
    for gamma in embedded_cycles(&x.one_skeleton()) {
        if gamma.len() > longest * (max_area - 1) {
            continue;
        }
        let Ok(found) = enumerate_fillings(&shared, &gamma, max_area - 1) else { continue };
        exhausted |= found.truncated;
        let disks: Vec<&DiagramInX> = found.fillings.iter().filter(|d| !d.diagram.is_singular()).collect();
        for (i, d1) in disks.iter().enumerate() {
            for d2 in &disks[i + 1..] {
                if d1.area() + d2.area() > max_area {
                    continue;
                }
                if let Ok(s) = glue_to_sphere(d1, d2) {
                    if s.is_near_immersion() {
                        return SphereSearch { sphere: Some(s), exhausted };
                    }
                }
            }
        }
    }
    SphereSearch { sphere: None, exhausted }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(s: &str) -> TwoComplex {
        TwoComplex::from_text(s).unwrap()
    }

    fn torus() -> TwoComplex {
        cx("vertex v\nedge a v v\nedge b v v\nface f a+ b+ a- b-\n")
    }

    fn bigon_sphere() -> TwoComplex {
        cx("vertex p\nvertex q\nedge e1 p q\nedge e2 p q\nface f1 e1+ e2-\nface f2 e1+ e2-\n")
    }

    fn triangle() -> TwoComplex {
        cx("vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\nedge e3 z x\nface f e1+ e2+ e3+\n")
    }

    #[test]
    fn cores() {
        let t = greedy_core(&triangle());
        assert_eq!(t, CoreResult::Collapsible(vec![(Id::new("e1"), Id::new("f"))]));
        assert!(t.verify(&triangle()).is_ok());
        let b = greedy_core(&bigon_sphere());
        assert_eq!(b, CoreResult::Core(vec![Id::new("f1"), Id::new("f2")]));
        assert!(b.verify(&bigon_sphere()).is_ok());
        assert_eq!(greedy_core(&torus()), CoreResult::Core(vec![Id::new("f")]));
        assert!(CoreResult::Core(vec![Id::new("f")]).verify(&triangle()).is_err());
    }

    #[test]
    fn oracle() {
        assert_eq!(brute_force_core_oracle(&triangle(), 12).unwrap(), None);
        assert_eq!(brute_force_core_oracle(&bigon_sphere(), 12).unwrap(), Some(vec![Id::new("f1"), Id::new("f2")]));
        assert!(brute_force_core_oracle(&bigon_sphere(), 1).is_err());
    }

    #[test]
    fn verdicts() {
        let b = DrBounds::default();
        assert_eq!(decide_dr(&triangle(), &b).status, DrStatus::Dr);
        let v = decide_dr(&bigon_sphere(), &b);
        assert_eq!(v.status, DrStatus::NotDr);
        assert!(matches!(v.certificate, DrCertificate::Core(CoreResult::Core(_))));
        assert_eq!(decide_dr(&torus(), &b).status, DrStatus::Unknown);
    }

    #[test]
    fn spheres() {
        let s = sphere_search(&bigon_sphere(), 2).sphere.unwrap();
        assert_eq!(s.area(), 2);
        assert!(s.diagram.is_sphere());
        assert!(s.is_near_immersion());
        assert!(sphere_search(&triangle(), 6).sphere.is_none());
        assert!(sphere_search(&torus(), 4).sphere.is_none());
    }
}

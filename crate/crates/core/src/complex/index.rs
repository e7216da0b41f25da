use std::collections::HashMap;

use super::{ComplexError, DirectedEdge, Id, Sign, TwoComplex};

/// A directed edge packed as `2 * edge_index + (1 if reversed)`.
pub type Letter = u32;

pub fn inverse(l: Letter) -> Letter {
    l ^ 1
}

/// Dense integer view of a valid complex, used by the search routines.
#[derive(Clone, Debug)]
pub struct IndexedComplex {
    vertex_ids: Vec<Id>,
    edge_ids: Vec<Id>,
    face_ids: Vec<Id>,
    vertex_index: HashMap<Id, u32>,
    edge_index: HashMap<Id, u32>,
    face_index: HashMap<Id, u32>,
    ends: Vec<(u32, u32)>,
    faces: Vec<Vec<Letter>>,
}

impl IndexedComplex {
    pub fn new(x: &TwoComplex) -> Result<IndexedComplex, ComplexError> {
        let report = x.validate();
        if !report.is_valid() {
            return Err(ComplexError::Invalid(report.violations[0].to_string()));
        }
        let vertex_ids: Vec<Id> = x.vertices().cloned().collect();
        let edge_ids: Vec<Id> = x.edge_ids().cloned().collect();
        let face_ids: Vec<Id> = x.face_ids().cloned().collect();
        let vertex_index: HashMap<Id, u32> =
            vertex_ids.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        let edge_index: HashMap<Id, u32> =
            edge_ids.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        let face_index: HashMap<Id, u32> =
            face_ids.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        let ends = x.edges().map(|(_, e)| (vertex_index[&e.tail], vertex_index[&e.head])).collect();
        let faces = x
            .faces()
            .map(|(_, w)| {
                w.letters()
                    .iter()
                    .map(|l| 2 * edge_index[&l.edge] + u32::from(l.sign == Sign::Minus))
                    .collect()
            })
            .collect();
        Ok(IndexedComplex { vertex_ids, edge_ids, face_ids, vertex_index, edge_index, face_index, ends, faces })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn num_faces(&self) -> usize {
        self.face_ids.len()
    }

    pub fn vertex_id(&self, v: u32) -> &Id {
        &self.vertex_ids[v as usize]
    }

    pub fn edge_id(&self, e: u32) -> &Id {
        &self.edge_ids[e as usize]
    }

    pub fn face_id(&self, f: u32) -> &Id {
        &self.face_ids[f as usize]
    }

    pub fn vertex(&self, id: &Id) -> Option<u32> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge(&self, id: &Id) -> Option<u32> {
        self.edge_index.get(id).copied()
    }

    pub fn face(&self, id: &Id) -> Option<u32> {
        self.face_index.get(id).copied()
    }

    pub fn letter(&self, d: &DirectedEdge) -> Option<Letter> {
        Some(2 * self.edge(&d.edge)? + u32::from(d.sign == Sign::Minus))
    }

    pub fn directed(&self, l: Letter) -> DirectedEdge {
        let sign = if l & 1 == 0 { Sign::Plus } else { Sign::Minus };
        DirectedEdge::new(self.edge_ids[(l >> 1) as usize].clone(), sign)
    }

    pub fn tail(&self, l: Letter) -> u32 {
        let (t, h) = self.ends[(l >> 1) as usize];
        if l & 1 == 0 {
            t
        } else {
            h
        }
    }

    pub fn head(&self, l: Letter) -> u32 {
        self.tail(inverse(l))
    }

    pub fn face_word(&self, f: u32) -> &[Letter] {
        &self.faces[f as usize]
    }

    pub fn max_face_length(&self) -> usize {
        self.faces.iter().map(Vec::len).max().unwrap_or(0)
    }
}

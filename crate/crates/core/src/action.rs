//! Finite groups of automorphisms of a complex.
//!
//! A cell counts as fixed pointwise by an element when it is mapped to
//! itself with positive sign (edges) or with the identity witness (faces).

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use thiserror::Error;

use crate::complex::text::{tokenized_lines, MapEntries, ParseError};
use crate::complex::{barycentric_subdivision, compose, Cell, CellularMap, Id, MapError, Sign, Subdivision, TwoComplex};
use crate::diagram::FillBounds;
use crate::dr::greedy_core;
use crate::homotopy::{certify_simply_connected, contractibility_verdict, Contractibility};

/// Free pairs of one orbit, collapsed together.
pub type OrbitCollapse = Vec<(Id, Id)>;

#[derive(Debug, Error, Clone)]
pub enum ActionError {
    #[error("generator {0} is not an automorphism: {1}")]
    NotAutomorphism(String, String),
    #[error("group has more than {0} elements")]
    LimitExceeded(usize),
    #[error("action has inversions ({0}); subdivide first")]
    HasInversions(InversionReport),
    #[error("orbit collapse clash: {0}")]
    OrbitClash(String),
    #[error("preconditions not certified: {0}")]
    PreconditionsNotCertified(String),
    #[error("no element with index {0}")]
    UnknownElement(usize),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Debug)]
pub struct GroupAction {
    complex: Arc<TwoComplex>,
    elements: Vec<CellularMap>,
    table: Vec<Vec<usize>>,
    generators: Vec<(String, usize)>,
}

/// Whether `phi` fixes `cell` pointwise.
pub fn fixes_pointwise(phi: &CellularMap, cell: &Cell) -> bool {
    match cell {
        Cell::Vertex(v) => phi.vertex(v) == Some(v),
        Cell::Edge(e) => phi.edge(e) == Some(&(e.clone(), Sign::Plus)),
        Cell::Face(f) => match (phi.face(f), phi.source().face(f)) {
            (Some((g, w)), Some(word)) => g == f && w.is_identity(word.len()),
            _ => false,
        },
    }
}

fn check_automorphism(x: &Arc<TwoComplex>, name: &str, g: &CellularMap) -> Result<(), ActionError> {
    let bad = |m: String| ActionError::NotAutomorphism(name.to_string(), m);
    if **g.source() != **x || **g.target() != **x {
        return Err(bad("wrong source or target".into()));
    }
    g.check().map_err(|e| bad(e.to_string()))?;
    if !g.is_bijective() {
        return Err(bad("not bijective on cells".into()));
    }
    Ok(())
}

/// Closes a set of generators under composition.
pub fn close_group(x: Arc<TwoComplex>, generators: Vec<(String, CellularMap)>, limit: usize) -> Result<GroupAction, ActionError> {
    for (name, g) in &generators {
        check_automorphism(&x, name, g)?;
    }
    let mut elements = vec![CellularMap::identity(x.clone())];
    let find = |elements: &[CellularMap], m: &CellularMap| elements.iter().position(|e| e.same_cells(m));
    let mut gen_index = Vec::new();
    for (name, g) in &generators {
        let i = match find(&elements, g) {
            Some(i) => i,
            None => {
                elements.push(g.clone());
                elements.len() - 1
            }
        };
        gen_index.push((name.clone(), i));
    }
    let mut next = 0;
    while next < elements.len() {
        for (_, g) in &generators {
            let prod = compose(&elements[next], g)?;
            if find(&elements, &prod).is_none() {
                if elements.len() >= limit {
                    return Err(ActionError::LimitExceeded(limit));
                }
                elements.push(prod);
            }
        }
        next += 1;
    }
    if elements.len() > limit {
        return Err(ActionError::LimitExceeded(limit));
    }
    let mut table = vec![vec![0; elements.len()]; elements.len()];
    for i in 0..elements.len() {
        for j in 0..elements.len() {
            let prod = compose(&elements[j], &elements[i])?;
            table[i][j] = find(&elements, &prod).ok_or_else(|| ActionError::OrbitClash("product outside the group".into()))?;
        }
    }
    Ok(GroupAction { complex: x, elements, table, generators: gen_index })
}

impl GroupAction {
    pub fn trivial(x: Arc<TwoComplex>) -> GroupAction {
        GroupAction { elements: vec![CellularMap::identity(x.clone())], complex: x, table: vec![vec![0]], generators: Vec::new() }
    }

    /// Assembles an action from explicit elements and table, then validates it.
    pub fn from_parts(
        complex: Arc<TwoComplex>,
        elements: Vec<CellularMap>,
        table: Vec<Vec<usize>>,
        generators: Vec<(String, usize)>,
    ) -> Result<GroupAction, ActionError> {
        let n = elements.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
            return Err(ActionError::OrbitClash("malformed multiplication table".into()));
        }
        if let Some((_, i)) = generators.iter().find(|(_, i)| *i >= n) {
            return Err(ActionError::UnknownElement(*i));
        }
        let a = GroupAction { complex, elements, table, generators };
        a.validate()?;
        Ok(a)
    }

    pub fn complex(&self) -> &Arc<TwoComplex> {
        &self.complex
    }

    pub fn elements(&self) -> &[CellularMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Option<&CellularMap> {
        self.elements.get(i)
    }

    /// `table[i][j]` is the index of `e_i ∘ e_j`.
    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn inverse_of(&self, i: usize) -> usize {
        (0..self.order()).find(|&j| self.table[i][j] == 0).expect("group inverse")
    }

    /// Re-checks that every element is an automorphism and that the table
    /// agrees with composition.
    pub fn validate(&self) -> Result<(), ActionError> {
        if !self.elements.first().is_some_and(CellularMap::is_identity) {
            return Err(ActionError::OrbitClash("element 0 is not the identity".into()));
        }
        for (i, g) in self.elements.iter().enumerate() {
            check_automorphism(&self.complex, &format!("#{i}"), g)?;
        }
        for i in 0..self.order() {
            for j in 0..self.order() {
                let prod = compose(&self.elements[j], &self.elements[i])?;
                let k = self.table[i][j];
                if !self.elements.get(k).is_some_and(|e| e.same_cells(&prod)) {
                    return Err(ActionError::OrbitClash(format!("table entry ({i}, {j}) is wrong")));
                }
            }
        }
        Ok(())
    }

    /// The subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[usize]) -> Result<BTreeSet<usize>, ActionError> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= self.order()) {
            return Err(ActionError::UnknownElement(bad));
        }
        let mut out = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let p = self.table[a][g];
                if out.insert(p) {
                    frontier.push(p);
                }
            }
        }
        Ok(out)
    }

    /// Every subgroup, each as a sorted element set.
    pub fn all_subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::from([BTreeSet::from([0])]);
        let mut frontier = vec![BTreeSet::from([0])];
        while let Some(k) = frontier.pop() {
            for g in 0..self.order() {
                if k.contains(&g) {
                    continue;
                }
                let mut gens: Vec<usize> = k.iter().copied().collect();
                gens.push(g);
                let bigger = self.subgroup(&gens).expect("valid indices");
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn has_inversions(&self) -> InversionReport {
        let mut entries = Vec::new();
        for (i, g) in self.elements.iter().enumerate() {
            for (e, (img, s)) in g.edge_map() {
                if img == e && *s == Sign::Minus {
                    entries.push(Inversion { element: i, cell: Cell::Edge(e.clone()), kind: InversionKind::EdgeFlip });
                }
            }
            for (f, (img, w)) in g.face_map() {
                let n = self.complex.face(f).map_or(1, |w| w.len());
                if img == f && !w.is_identity(n) {
                    entries.push(Inversion { element: i, cell: Cell::Face(f.clone()), kind: InversionKind::FaceSymmetry });
                }
            }
        }
        InversionReport { entries }
    }

    /// The induced action on the barycentric subdivision, which has no inversions.
    pub fn remove_inversions(&self) -> Result<(GroupAction, Subdivision), ActionError> {
        let sd = barycentric_subdivision(&self.complex);
        let elements = self.elements.iter().map(|g| sd.lift(&sd, g)).collect::<Result<Vec<_>, _>>()?;
        let out = GroupAction { complex: sd.complex.clone(), elements, table: self.table.clone(), generators: self.generators.clone() };
        let report = out.has_inversions();
        if !report.is_empty() {
            return Err(ActionError::HasInversions(report));
        }
        Ok((out, sd))
    }

    fn require_no_inversions(&self, members: &BTreeSet<usize>) -> Result<(), ActionError> {
        let report = self.has_inversions();
        let entries: Vec<Inversion> = report.entries.into_iter().filter(|e| members.contains(&e.element)).collect();
        if entries.is_empty() {
            Ok(())
        } else {
            Err(ActionError::HasInversions(InversionReport { entries }))
        }
    }

    /// Cells fixed pointwise by the subgroup generated by `gens`.
    pub fn fixed_subcomplex(&self, gens: &[usize]) -> Result<TwoComplex, ActionError> {
        let members = self.subgroup(gens)?;
        self.require_no_inversions(&members)?;
        let cells: BTreeSet<Cell> = self
            .complex
            .cells()
            .into_iter()
            .filter(|c| members.iter().all(|&h| fixes_pointwise(&self.elements[h], c)))
            .collect();
        Ok(self.complex.subcomplex(&cells).expect("fixed cells form a subcomplex"))
    }

    /// The fixed subcomplex of the whole group.
    pub fn fixed_set(&self) -> Result<TwoComplex, ActionError> {
        let all: Vec<usize> = (0..self.order()).collect();
        self.fixed_subcomplex(&all)
    }

    pub fn image(&self, h: usize, cell: &Cell) -> Cell {
        self.elements[h].cell(cell).expect("automorphism is total")
    }

    /// Orbits of all cells, each sorted, in order of their least cell.
    pub fn orbits(&self) -> Vec<Vec<Cell>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in self.complex.cells() {
            if seen.contains(&c) {
                continue;
            }
            let orbit: BTreeSet<Cell> = (0..self.order()).map(|h| self.image(h, &c)).collect();
            seen.extend(orbit.iter().cloned());
            out.push(orbit.into_iter().collect());
        }
        out
    }

    /// Elements fixing `cell` pointwise.
    pub fn stabilizer(&self, cell: &Cell) -> Vec<usize> {
        (0..self.order()).filter(|&h| fixes_pointwise(&self.elements[h], cell)).collect()
    }

    /// `|orbit| * |stabilizer| = |H|` for every cell.
    pub fn orbit_stabilizer_holds(&self) -> bool {
        self.orbits().iter().all(|orbit| orbit.iter().all(|c| orbit.len() * self.stabilizer(c).len() == self.order()))
    }

    /// Restricts every element to an invariant subcomplex.
    pub fn restrict(&self, sub: Arc<TwoComplex>) -> Result<GroupAction, ActionError> {
        let mut elements = Vec::new();
        for g in &self.elements {
            let vertices = sub.vertices().map(|v| (v.clone(), g.vertex(v).cloned().unwrap())).collect();
            let edges = sub.edge_ids().map(|e| (e.clone(), g.edge(e).cloned().unwrap())).collect();
            let faces = sub.face_ids().map(|f| (f.clone(), g.face(f).cloned().unwrap())).collect();
            elements.push(CellularMap::new(sub.clone(), sub.clone(), vertices, edges, faces)?);
        }
        Ok(GroupAction { complex: sub, elements, table: self.table.clone(), generators: self.generators.clone() })
    }

    /// Collapses whole orbits of free pairs (least free edge first) until no
    /// free edge is left.
    pub fn equivariant_collapse(&self) -> Result<(GroupAction, Vec<OrbitCollapse>), ActionError> {
        self.require_no_inversions(&(0..self.order()).collect())?;
        let mut cur = (*self.complex).clone();
        let mut log = Vec::new();
        while let Some((e, f)) = cur.free_edges().into_iter().next() {
            let pairs: BTreeSet<(Id, Id)> = self
                .elements
                .iter()
                .map(|g| (g.edge(&e).unwrap().0.clone(), g.face(&f).unwrap().0.clone()))
                .collect();
            let orbit_edges: BTreeSet<&Id> = pairs.iter().map(|p| &p.0).collect();
            let orbit_faces: BTreeSet<&Id> = pairs.iter().map(|p| &p.1).collect();
            if orbit_edges.len() != pairs.len() || orbit_faces.len() != pairs.len() {
                return Err(ActionError::OrbitClash(format!("orbit of ({e}, {f}) pairs edges and faces ambiguously")));
            }
            for (ge, gf) in &pairs {
                let word = cur.face(gf).ok_or_else(|| ActionError::OrbitClash(format!("face {gf} already gone")))?;
                let hits = word.letters().iter().filter(|l| orbit_edges.contains(&l.edge)).count();
                if hits != 1 {
                    return Err(ActionError::OrbitClash(format!("face {gf} meets the orbit of {e} {hits} times")));
                }
                cur = cur.collapse(ge, gf).map_err(|err| ActionError::OrbitClash(err.to_string()))?;
            }
            log.push(pairs.into_iter().collect());
        }
        let restricted = self.restrict(Arc::new(cur))?;
        Ok((restricted, log))
    }

    /// A vertex fixed by the whole group: the center of the tree left by
    /// equivariant collapsing.
    pub fn find_fixed_point(&self, bounds: &FillBounds) -> Result<Id, ActionError> {
        let x = &*self.complex;
        if !certify_simply_connected(x, bounds).is_certified() {
            return Err(ActionError::PreconditionsNotCertified("simple connectivity".into()));
        }
        if !greedy_core(x).is_collapsible() {
            return Err(ActionError::PreconditionsNotCertified("diagrammatic reducibility".into()));
        }
        let (w, _) = self.equivariant_collapse()?;
        let tree = w.complex();
        if !tree.is_tree() {
            return Err(ActionError::OrbitClash("collapsed complex is not a tree".into()));
        }
        let center = tree_center(tree);
        if !(0..self.order()).all(|h| fixes_pointwise(&self.elements[h], &Cell::Vertex(center.clone()))) {
            return Err(ActionError::OrbitClash(format!("tree center {center} is not fixed")));
        }
        Ok(center)
    }

    /// Checks both conditions of a model for the classifying space of the
    /// family of subgroups of cell stabilizers.
    pub fn verify_classifying_model(&self, limit: usize, bounds: &FillBounds) -> Result<ClassifyingReport, ActionError> {
        if self.order() > limit {
            return Err(ActionError::LimitExceeded(limit));
        }
        let stabilizers: BTreeSet<BTreeSet<usize>> =
            self.complex.cells().iter().map(|c| self.stabilizer(c).into_iter().collect()).collect();
        let family: Vec<BTreeSet<usize>> =
            self.all_subgroups().into_iter().filter(|k| stabilizers.iter().any(|s| k.is_subset(s))).collect();
        let mut checks = Vec::new();
        for k in &family {
            let gens: Vec<usize> = k.iter().copied().collect();
            let fixed = self.fixed_subcomplex(&gens)?;
            let nonempty = fixed.num_vertices() > 0;
            let verdict =
                if nonempty { contractibility_verdict(&fixed, bounds).verdict } else { Contractibility::NotContractible };
            checks.push(SubgroupCheck { elements: gens, fixed_cells: fixed.cells().len(), nonempty, verdict });
        }
        Ok(ClassifyingReport { stabilizers: stabilizers.into_iter().map(|s| s.into_iter().collect()).collect(), checks })
    }
}

/// Repeatedly strips leaves; on a two-vertex center the least id wins.
pub fn tree_center(tree: &TwoComplex) -> Id {
    let mut cur = tree.clone();
    while cur.num_vertices() > 2 {
        let degrees = cur.degrees();
        let leaves: Vec<(Id, Id)> = cur
            .edges()
            .filter_map(|(e, ends)| {
                [&ends.tail, &ends.head].into_iter().find(|v| degrees[v] == 1).map(|v| (e.clone(), v.clone()))
            })
            .collect();
        for (e, v) in leaves {
            cur = cur.prune_leaf(&e, &v).expect("leaf");
        }
    }
    let center = cur.vertices().next().expect("non-empty tree").clone();
    center
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InversionKind {
    EdgeFlip,
    FaceSymmetry,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Inversion {
    pub element: usize,
    pub cell: Cell,
    pub kind: InversionKind,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct InversionReport {
    pub entries: Vec<Inversion>,
}

impl InversionReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for InversionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                let kind = match e.kind {
                    InversionKind::EdgeFlip => "edge-flip",
                    InversionKind::FaceSymmetry => "face-symmetry",
                };
                format!("#{} {kind} {}", e.element, e.cell)
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupCheck {
    pub elements: Vec<usize>,
    pub fixed_cells: usize,
    pub nonempty: bool,
    pub verdict: Contractibility,
}

impl SubgroupCheck {
    pub fn passes(&self) -> bool {
        self.nonempty && self.verdict == Contractibility::Contractible
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyingReport {
    pub stabilizers: Vec<Vec<usize>>,
    pub checks: Vec<SubgroupCheck>,
}

impl ClassifyingReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(SubgroupCheck::passes)
    }
}

/// Reads `generator <name>` blocks of `vmap`/`emap`/`fmap` lines.
pub fn parse_generators(x: &Arc<TwoComplex>, s: &str) -> Result<Vec<(String, CellularMap)>, ActionError> {
    let mut blocks: Vec<(String, MapEntries)> = Vec::new();
    for (line, tokens) in tokenized_lines(s) {
        if tokens[0] == "generator" {
            let [_, name] = tokens[..] else {
                return Err(ParseError::new(line, "expected `generator <name>`").into());
            };
            blocks.push((name.to_string(), MapEntries::default()));
            continue;
        }
        let Some((_, entries)) = blocks.last_mut() else {
            return Err(ParseError::new(line, "map line before any `generator`").into());
        };
        if !entries.parse_line(line, &tokens)? {
            return Err(ParseError::new(line, format!("unknown declaration {:?}", tokens[0])).into());
        }
    }
    blocks
        .into_iter()
        .map(|(name, entries)| Ok((name, CellularMap::from_entries(x.clone(), x.clone(), &entries)?)))
        .collect()
}

pub fn parse_action(x: Arc<TwoComplex>, s: &str, limit: usize) -> Result<GroupAction, ActionError> {
    let gens = parse_generators(&x, s)?;
    close_group(x, gens, limit)
}

/// Writes the generators in the action text format.
pub fn write_action(a: &GroupAction) -> String {
    let mut out = String::new();
    for (name, i) in &a.generators {
        writeln!(out, "generator {name}").unwrap();
        crate::complex::text::write_map_entries(&mut out, &a.elements[*i].entries());
    }
    out
}

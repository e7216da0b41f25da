use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{format_letters, DirectedEdge, Id, TwoComplex};

/// A combinatorial path: a start vertex and a composable letter sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Path {
    pub start: Id,
    pub letters: Vec<DirectedEdge>,
}

impl Path {
    pub fn new(start: impl Into<Id>, letters: Vec<DirectedEdge>) -> Path {
        Path { start: start.into(), letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The visited vertices `v_0, ..., v_len`, or `None` if not a walk in `x`.
    pub fn vertices(&self, x: &TwoComplex) -> Option<Vec<Id>> {
        if !x.has_vertex(&self.start) {
            return None;
        }
        let mut out = vec![self.start.clone()];
        for l in &self.letters {
            if x.tail(l)? != out.last().unwrap() {
                return None;
            }
            out.push(x.head(l)?.clone());
        }
        Some(out)
    }

    pub fn end(&self, x: &TwoComplex) -> Option<Id> {
        x.walk_end(&self.start, &self.letters)
    }

    /// No vertex visited twice (which also rules out repeated edges).
    pub fn is_embedded(&self, x: &TwoComplex) -> bool {
        match self.vertices(x) {
            Some(vs) => vs.iter().collect::<BTreeSet<_>>().len() == vs.len(),
            None => false,
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "@{}", self.start)
        } else {
            write!(f, "@{} {}", self.start, format_letters(&self.letters))
        }
    }
}

/// A closed walk regarded up to rotation and reversal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cycle {
    pub path: Path,
}

impl Cycle {
    pub fn new(start: impl Into<Id>, letters: Vec<DirectedEdge>) -> Cycle {
        Cycle { path: Path::new(start, letters) }
    }

    /// A closed walk given by letters only; the start is the tail of the first letter.
    pub fn from_letters(x: &TwoComplex, letters: Vec<DirectedEdge>) -> Option<Cycle> {
        let start = x.tail(letters.first()?)?.clone();
        let c = Cycle::new(start, letters);
        c.is_closed_walk(x).then_some(c)
    }

    pub fn letters(&self) -> &[DirectedEdge] {
        &self.path.letters
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn is_closed_walk(&self, x: &TwoComplex) -> bool {
        self.path.end(x).as_ref() == Some(&self.path.start)
    }

    /// No repeated vertex and no repeated edge.
    pub fn is_embedded(&self, x: &TwoComplex) -> bool {
        let Some(vs) = self.path.vertices(x) else { return false };
        if vs.first() != vs.last() {
            return false;
        }
        let inner = &vs[..vs.len() - 1];
        let distinct_vertices = inner.iter().collect::<BTreeSet<_>>().len() == inner.len();
        let edges: BTreeSet<&Id> = self.letters().iter().map(|l| &l.edge).collect();
        distinct_vertices && edges.len() == self.len()
    }

    pub fn rotated(&self, x: &TwoComplex, k: usize) -> Cycle {
        if self.is_empty() {
            return self.clone();
        }
        let n = self.len();
        let letters: Vec<DirectedEdge> = (0..n).map(|i| self.letters()[(k + i) % n].clone()).collect();
        let start = x.tail(&letters[0]).cloned().unwrap_or_else(|| self.path.start.clone());
        Cycle::new(start, letters)
    }

    pub fn reversed(&self) -> Cycle {
        let letters = self.letters().iter().rev().map(DirectedEdge::inverse).collect();
        Cycle::new(self.path.start.clone(), letters)
    }

    /// Lexicographically least rotation or reflection of the letter sequence.
    pub fn canonical(&self, x: &TwoComplex) -> Cycle {
        if self.is_empty() {
            return self.clone();
        }
        let letters = self.letters();
        let n = letters.len();
        let reversed: Vec<DirectedEdge> = letters.iter().rev().map(DirectedEdge::inverse).collect();
        let mut best: Option<Vec<DirectedEdge>> = None;
        for seq in [letters, &reversed[..]] {
            for k in 0..n {
                let cand: Vec<DirectedEdge> = (0..n).map(|i| seq[(k + i) % n].clone()).collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        let letters = best.unwrap();
        let start = x.tail(&letters[0]).cloned().unwrap_or_else(|| self.path.start.clone());
        Cycle::new(start, letters)
    }

    pub fn same_cycle(&self, other: &Cycle, x: &TwoComplex) -> bool {
        self.canonical(x) == other.canonical(x)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.path.fmt(f)
    }
}

/// All embedded paths of length at most `n` from `u` to `v`, sorted by their
/// letter sequences.
pub fn embedded_paths(x: &TwoComplex, u: &Id, v: &Id, n: usize) -> Vec<Path> {
    if !x.has_vertex(u) || !x.has_vertex(v) {
        return Vec::new();
    }
    let adjacency = x.adjacency();
    let mut out = Vec::new();
    let mut letters = Vec::new();
    let mut visited: BTreeSet<&Id> = BTreeSet::from([u]);
    extend_paths(&adjacency, u, v, n, &mut letters, &mut visited, &mut out);
    out.sort();
    out.into_iter().map(|letters| Path::new(u.clone(), letters)).collect()
}

fn extend_paths<'a>(
    adjacency: &BTreeMap<&'a Id, Vec<(DirectedEdge, &'a Id)>>,
    at: &'a Id,
    target: &Id,
    budget: usize,
    letters: &mut Vec<DirectedEdge>,
    visited: &mut BTreeSet<&'a Id>,
    out: &mut Vec<Vec<DirectedEdge>>,
) {
    if at == target {
        out.push(letters.clone());
        return;
    }
    if budget == 0 {
        return;
    }
    for (letter, next) in &adjacency[at] {
        if visited.contains(next) {
            continue;
        }
        visited.insert(next);
        letters.push(letter.clone());
        extend_paths(adjacency, next, target, budget - 1, letters, visited, out);
        letters.pop();
        visited.remove(next);
    }
}

/// One canonical representative per embedded cycle of the 1-skeleton, sorted.
pub fn embedded_cycles(g: &TwoComplex) -> Vec<Cycle> {
    let adjacency = g.adjacency();
    let mut found: BTreeSet<Cycle> = BTreeSet::new();
    for start in g.vertices() {
        let mut letters = Vec::new();
        let mut visited = BTreeSet::from([start]);
        cycle_search(g, &adjacency, start, start, &mut letters, &mut visited, &mut found);
    }
    found.into_iter().collect()
}

fn cycle_search<'a>(
    g: &TwoComplex,
    adjacency: &BTreeMap<&'a Id, Vec<(DirectedEdge, &'a Id)>>,
    root: &'a Id,
    at: &'a Id,
    letters: &mut Vec<DirectedEdge>,
    visited: &mut BTreeSet<&'a Id>,
    found: &mut BTreeSet<Cycle>,
) {
    for (letter, next) in &adjacency[at] {
        if *next == root {
            if letters.iter().any(|l| l.edge == letter.edge) {
                continue;
            }
            letters.push(letter.clone());
            found.insert(Cycle::new(root.clone(), letters.clone()).canonical(g));
            letters.pop();
            continue;
        }
        // The root is the least vertex of every cycle it discovers.
        if visited.contains(next) || *next < root {
            continue;
        }
        visited.insert(next);
        letters.push(letter.clone());
        cycle_search(g, adjacency, root, next, letters, visited, found);
        letters.pop();
        visited.remove(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> TwoComplex {
        TwoComplex::from_text("vertex u\nvertex v\nedge a u v\nedge b u v\nedge c u v\n").unwrap()
    }

    #[test]
    fn theta_paths() {
        let g = theta();
        let (u, v) = (Id::new("u"), Id::new("v"));
        assert_eq!(embedded_paths(&g, &u, &v, 1).len(), 3);
        let back = embedded_paths(&g, &u, &u, 2);
        assert_eq!(back, vec![Path::new("u", vec![])]);
    }

    #[test]
    fn loops_are_not_embedded_paths() {
        let g = TwoComplex::from_text("vertex v\nedge a v v\nedge b v v\n").unwrap();
        let v = Id::new("v");
        assert_eq!(embedded_paths(&g, &v, &v, 1), vec![Path::new("v", vec![])]);
    }

    #[test]
    fn theta_cycles() {
        let cycles = embedded_cycles(&theta());
        assert_eq!(cycles.len(), 3);
        for c in &cycles {
            assert!(c.is_embedded(&theta()));
            assert_eq!(c.len(), 2);
        }
    }

    #[test]
    fn tree_has_no_cycles() {
        let g = TwoComplex::from_text("vertex a\nvertex b\nvertex c\nedge x a b\nedge y a c\n").unwrap();
        assert!(embedded_cycles(&g).is_empty());
    }

    #[test]
    fn single_loop_cycle() {
        let g = TwoComplex::from_text("vertex v\nedge a v v\n").unwrap();
        let cycles = embedded_cycles(&g);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 1);
    }

    #[test]
    fn canonical_is_rotation_and_reflection_invariant() {
        let x = TwoComplex::from_text(
            "vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\nedge e3 z x\n",
        )
        .unwrap();
        let c = Cycle::from_letters(&x, parse(&["e2+", "e3+", "e1+"])).unwrap();
        let r = c.reversed();
        assert_eq!(c.canonical(&x), r.canonical(&x));
        assert_eq!(c.canonical(&x).letters(), &parse(&["e1+", "e2+", "e3+"])[..]);
        assert!(c.is_embedded(&x));
    }

    fn parse(tokens: &[&str]) -> Vec<DirectedEdge> {
        tokens.iter().map(|t| DirectedEdge::parse(t).unwrap()).collect()
    }
}

//! Filling search.
//!
//! States are boundary words. A splice removes one boundary letter `x` and
//! the face `x s` it borders, leaving `s^-1` in its place; free cancellation
//! removes spurs. Diagrams are rebuilt by replaying the moves backwards.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use crate::complex::{Cycle, IndexedComplex, Letter, TwoComplex, Witness};

use super::planar::Planar;
use super::{diagram_isomorphic, BoundaryCorrespondence, DiagramError, DiagramInX};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FillBounds {
    pub max_area: usize,
    pub max_perimeter: usize,
    pub max_states: usize,
}

impl Default for FillBounds {
    fn default() -> FillBounds {
        FillBounds { max_area: 12, max_perimeter: 24, max_states: 250_000 }
    }
}

struct Context {
    ix: IndexedComplex,
    occurrences: Vec<Vec<(u32, usize)>>,
    max_face_norm: i64,
}

impl Context {
    fn new(x: &TwoComplex) -> Result<Context, DiagramError> {
        let ix = IndexedComplex::new(x).map_err(|e| DiagramError::Invalid(e.to_string()))?;
        let mut occurrences = vec![Vec::new(); ix.num_edges()];
        let mut max_face_norm = 0;
        for f in 0..ix.num_faces() as u32 {
            let word = ix.face_word(f);
            for (t, l) in word.iter().enumerate() {
                occurrences[(l >> 1) as usize].push((f, t));
            }
            max_face_norm = max_face_norm.max(chain_norm(word, ix.num_edges()));
        }
        Ok(Context { ix, occurrences, max_face_norm })
    }

    /// Least number of faces whose boundary chains can sum to the chain of
    /// `word`. Cyclically reduced non-empty words need at least one face.
    fn lower_bound(&self, word: &[Letter], reduced: bool) -> Option<usize> {
        let norm = chain_norm(word, self.ix.num_edges());
        let floor = usize::from(reduced && !word.is_empty());
        if norm == 0 {
            Some(floor)
        } else if self.max_face_norm == 0 {
            None
        } else {
            Some((((norm + self.max_face_norm - 1) / self.max_face_norm) as usize).max(floor))
        }
    }

    /// The letters replacing `w[p]` when it is spliced across occurrence `t`
    /// of `face`, and the witness of the new face.
    fn splice(&self, x: Letter, face: u32, t: usize) -> (Vec<Letter>, Witness) {
        let r = self.ix.face_word(face);
        let n = r.len();
        let (rel, reflected): (Vec<Letter>, bool) = if r[t] == x {
            ((0..n).map(|j| r[(t + j) % n]).collect(), false)
        } else {
            ((0..n).map(|j| r[(t + n - j) % n] ^ 1).collect(), true)
        };
        let s_inv = (1..n).rev().map(|j| rel[j] ^ 1).collect();
        (s_inv, Witness::new(t, reflected))
    }
}

fn chain_norm(word: &[Letter], edges: usize) -> i64 {
    let mut net = vec![0i64; edges];
    for &l in word {
        net[(l >> 1) as usize] += if l & 1 == 0 { 1 } else { -1 };
    }
    net.iter().map(|c| c.abs()).sum()
}

#[derive(Clone, Debug)]
struct Cancel {
    pos: usize,
    letter: Letter,
    wrap: bool,
}

/// Cyclic free reduction, recording each cancellation so it can be undone
/// by adding a spur.
fn reduce(ix: &IndexedComplex, mut w: Vec<Letter>, mut base: u32) -> (Vec<Letter>, Vec<Cancel>, u32) {
    let mut steps = Vec::new();
    loop {
        let len = w.len();
        if len < 2 {
            break;
        }
        if let Some(i) = (0..len - 1).find(|&i| w[i + 1] == w[i] ^ 1) {
            steps.push(Cancel { pos: i, letter: w[i], wrap: false });
            if len == 2 {
                base = ix.tail(w[i]);
            }
            w.drain(i..i + 2);
        } else if w[len - 1] == w[0] ^ 1 {
            steps.push(Cancel { pos: len - 1, letter: w[0], wrap: true });
            w.pop();
            w.remove(0);
        } else {
            break;
        }
    }
    if let Some(&first) = w.first() {
        base = ix.tail(first);
    }
    (w, steps, base)
}

fn undo(planar: &mut Planar, ix: &IndexedComplex, steps: &[Cancel]) {
    for c in steps.iter().rev() {
        if c.wrap {
            planar.add_wrap(ix, c.letter);
        } else {
            planar.add_spur(ix, c.pos, c.letter);
        }
    }
}

fn least_rotation(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    (0..n)
        .map(|k| w[k..].iter().chain(&w[..k]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

fn cycle_letters(ix: &IndexedComplex, x: &TwoComplex, gamma: &Cycle) -> Result<(Vec<Letter>, u32), DiagramError> {
    if !gamma.is_closed_walk(x) {
        return Err(DiagramError::NotACycle);
    }
    let letters = gamma.letters().iter().map(|l| ix.letter(l)).collect::<Option<Vec<_>>>().ok_or(DiagramError::NotACycle)?;
    let base = ix.vertex(&gamma.path.start).ok_or(DiagramError::NotACycle)?;
    Ok((letters, base))
}

#[derive(Clone, Debug)]
struct Step {
    pos: usize,
    letter: Letter,
    face: u32,
    witness: Witness,
    cancels: Vec<Cancel>,
    offset: usize,
}

struct Node {
    word: Vec<Letter>,
    base: u32,
    g: usize,
    parent: Option<(usize, Step)>,
    closed: bool,
}

/// Positions that some minimal filling must splice: occurrences of one edge
/// with non-zero net count (stalk edges contribute zero), or every position.
fn branch_positions(ctx: &Context, w: &[Letter]) -> Vec<usize> {
    let edges = ctx.ix.num_edges();
    let mut net = vec![0i64; edges];
    let mut count = vec![0usize; edges];
    for &l in w {
        let e = (l >> 1) as usize;
        net[e] += if l & 1 == 0 { 1 } else { -1 };
        count[e] += 1;
    }
    let best = (0..edges).filter(|&e| net[e] != 0).min_by_key(|&e| (count[e] * ctx.occurrences[e].len(), e));
    match best {
        Some(e) => (0..w.len()).filter(|&p| (w[p] >> 1) as usize == e).collect(),
        None => (0..w.len()).collect(),
    }
}

/// Searches a minimal-area disk diagram with boundary `gamma`.
///
/// `Ok(None)` means the search space was exhausted without meeting any bound;
/// running into a bound is [`DiagramError::BoundsExhausted`].
pub fn fill_cycle(x: &Arc<TwoComplex>, gamma: &Cycle, bounds: &FillBounds) -> Result<Option<DiagramInX>, DiagramError> {
    let ctx = Context::new(x)?;
    let ix = &ctx.ix;
    let (w0, base0) = cycle_letters(ix, x, gamma)?;
    let (r0, root_steps, rbase) = reduce(ix, w0.clone(), base0);

    let mut nodes = vec![Node { word: r0.clone(), base: rbase, g: 0, parent: None, closed: false }];
    let mut index: HashMap<Vec<Letter>, usize> = HashMap::from([(least_rotation(&r0), 0)]);
    let mut heap = BinaryHeap::new();
    let mut exhausted = false;
    match ctx.lower_bound(&r0, true) {
        Some(h) if h <= bounds.max_area && r0.len() <= bounds.max_perimeter => heap.push(Reverse((h, r0.len(), 0usize))),
        Some(_) => exhausted = true,
        None => {}
    }
    let mut goal = None;
    while let Some(Reverse((_, _, idx))) = heap.pop() {
        if nodes[idx].closed {
            continue;
        }
        nodes[idx].closed = true;
        if nodes[idx].word.is_empty() {
            goal = Some(idx);
            break;
        }
        if nodes.len() > bounds.max_states {
            exhausted = true;
            break;
        }
        let word = nodes[idx].word.clone();
        let g = nodes[idx].g + 1;
        for p in branch_positions(&ctx, &word) {
            let xl = word[p];
            for &(face, t) in &ctx.occurrences[(xl >> 1) as usize] {
                let (s_inv, witness) = ctx.splice(xl, face, t);
                let mut raw = word[..p].to_vec();
                raw.extend_from_slice(&s_inv);
                raw.extend_from_slice(&word[p + 1..]);
                let base = raw.first().map_or(ix.tail(xl), |&l| ix.tail(l));
                let (c, cancels, cbase) = reduce(ix, raw, base);
                if c.len() > bounds.max_perimeter {
                    exhausted = true;
                    continue;
                }
                let h = match ctx.lower_bound(&c, true) {
                    Some(h) if g + h <= bounds.max_area => h,
                    Some(_) => {
                        exhausted = true;
                        continue;
                    }
                    None => continue,
                };
                let key = least_rotation(&c);
                let step = Step { pos: p, letter: xl, face, witness, cancels, offset: 0 };
                match index.get(&key) {
                    None => {
                        let id = nodes.len();
                        index.insert(key, id);
                        heap.push(Reverse((g + h, c.len(), id)));
                        nodes.push(Node { word: c, base: cbase, g, parent: Some((idx, step)), closed: false });
                    }
                    Some(&id) => {
                        if nodes[id].closed || g >= nodes[id].g {
                            continue;
                        }
                        let stored = &nodes[id].word;
                        let len = stored.len();
                        let offset = (0..len.max(1))
                            .find(|&t| (0..len).all(|i| stored[i] == c[(i + t) % len]))
                            .expect("same rotation class");
                        nodes[id].g = g;
                        nodes[id].parent = Some((idx, Step { offset, ..step }));
                        heap.push(Reverse((g + h, len, id)));
                    }
                }
            }
        }
    }
    let Some(goal) = goal else {
        return if exhausted { Err(DiagramError::BoundsExhausted) } else { Ok(None) };
    };

    let mut planar = Planar::trivial(nodes[goal].base);
    let mut cur = goal;
    while let Some((parent, step)) = &nodes[cur].parent {
        let len = planar.outer.len();
        if len > 0 {
            planar.rotate_outer((len - step.offset % len) % len);
        }
        undo(&mut planar, ix, &step.cancels);
        let n = ix.face_word(step.face).len();
        planar.add_face(step.pos, n - 1, step.letter, step.face, step.witness);
        debug_assert_eq!(planar.outer_labels(), nodes[*parent].word);
        cur = *parent;
    }
    undo(&mut planar, ix, &root_steps);
    debug_assert_eq!(planar.outer_labels(), w0);
    let d = planar.into_diagram(ix, x)?;
    Ok(Some(d))
}

/// Near-immersed fillings, one per isomorphism class.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub fillings: Vec<DiagramInX>,
    /// Set when an internal cap cut the search short.
    pub truncated: bool,
}

const NO_SIDE: u64 = u64::MAX;

fn side(face: u32, pos: usize) -> u64 {
    (u64::from(face) << 32) | pos as u64
}

type Annotated = Vec<(Letter, u64)>;

struct Enumerator<'a> {
    ctx: &'a Context,
    memo: HashMap<(u32, Annotated, usize), Rc<Vec<Planar>>>,
    truncated: bool,
}

const MAX_MEMO: usize = 200_000;
const MAX_RESULTS: usize = 4_096;

impl Enumerator<'_> {
    /// Every near-immersed diagram of area at most `budget` whose outer walk
    /// reads `word` from `base`. Each letter carries the target side of the
    /// face beyond it, if any. The first letter decides the case: it either
    /// borders a face, which is removed, or it is a bridge whose reverse
    /// appears later in the walk.
    fn solve(&mut self, base: u32, word: &[(Letter, u64)], budget: usize) -> Rc<Vec<Planar>> {
        if word.is_empty() {
            return Rc::new(vec![Planar::trivial(base)]);
        }
        let letters: Vec<Letter> = word.iter().map(|w| w.0).collect();
        match self.ctx.lower_bound(&letters, false) {
            Some(h) if h <= budget => {}
            _ => return Rc::new(Vec::new()),
        }
        let key = (base, word.to_vec(), budget);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        if self.memo.len() >= MAX_MEMO {
            self.truncated = true;
            return Rc::new(Vec::new());
        }
        let ix = &self.ctx.ix;
        let (x, beyond) = word[0];
        let mut out = Vec::new();
        if budget > 0 {
            for &(face, t) in &self.ctx.occurrences[(x >> 1) as usize] {
                if beyond == side(face, t) {
                    continue;
                }
                let (s_inv, witness) = self.ctx.splice(x, face, t);
                let n = s_inv.len() + 1;
                let mut next: Annotated = s_inv
                    .iter()
                    .enumerate()
                    .map(|(k, &l)| (l, side(face, witness.position(n - 1 - k, n))))
                    .collect();
                next.extend_from_slice(&word[1..]);
                let nbase = next.first().map_or(ix.tail(x), |w| ix.tail(w.0));
                for sub in self.solve(nbase, &next, budget - 1).iter() {
                    let mut d = sub.clone();
                    d.add_face(0, n - 1, x, face, witness);
                    out.push(d);
                }
            }
        }
        for q in 1..word.len() {
            let (y, other) = word[q];
            if y != x ^ 1 || (beyond != NO_SIDE && beyond == other) {
                continue;
            }
            let inner = self.solve(ix.head(x), &word[1..q], budget);
            for d1 in inner.iter() {
                let rest = self.solve(ix.tail(x), &word[q + 1..], budget - d1.area());
                for d2 in rest.iter() {
                    out.push(Planar::bridge(d1, d2, x));
                }
            }
        }
        if out.len() > MAX_RESULTS {
            self.truncated = true;
            out.truncate(MAX_RESULTS);
        }
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }
}

/// All near-immersed fillings of the embedded cycle `gamma` with area at most
/// `max_area`, up to isomorphism, sorted by area.
pub fn enumerate_fillings(x: &Arc<TwoComplex>, gamma: &Cycle, max_area: usize) -> Result<Enumeration, DiagramError> {
    if !gamma.is_closed_walk(x) {
        return Err(DiagramError::NotACycle);
    }
    if !gamma.is_embedded(x) {
        return Err(DiagramError::NotEmbedded);
    }
    let ctx = Context::new(x)?;
    let (w, base) = cycle_letters(&ctx.ix, x, gamma)?;
    let word: Annotated = w.iter().map(|&l| (l, NO_SIDE)).collect();
    let mut e = Enumerator { ctx: &ctx, memo: HashMap::new(), truncated: false };
    let found = e.solve(base, &word, max_area);
    let mut planars: Vec<Planar> = found.iter().cloned().collect();
    planars.sort_by_key(Planar::area);
    let mut fillings: Vec<DiagramInX> = Vec::new();
    for p in planars {
        let d = p.into_diagram(&ctx.ix, x)?;
        debug_assert!(d.is_near_immersion());
        if !fillings.iter().any(|f| diagram_isomorphic(f, &d, BoundaryCorrespondence::IDENTITY).is_some()) {
            fillings.push(d);
        }
    }
    Ok(Enumeration { fillings, truncated: e.truncated })
}

//! Steps, step sets and lattice paths.
//!
//! A [`Path`] is an immutable word over a [`StepSet`] together with its vertex
//! sequence `P_0 = (0,0), P_1, ..., P_m`. Vertex `i` is the point before step `i`,
//! and the x-coordinate of a step's initial vertex is its position.

use std::fmt;
use std::sync::Arc;

use crate::error::{CfError, Result};

/// A single step vector with positive horizontal advance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub dx: u32,
    pub dy: i64,
}

impl Step {
    pub fn new(dx: u32, dy: i64) -> Result<Step> {
        if dx == 0 {
            return Err(CfError::InvalidStepSet("step with dx = 0".into()));
        }
        Ok(Step { dx, dy })
    }

    pub fn is_up(&self) -> bool {
        self.dy > 0
    }

    pub fn is_down(&self) -> bool {
        self.dy < 0
    }

    pub fn is_flat(&self) -> bool {
        self.dy == 0
    }
}

/// Ordered list of labelled steps. Labels are distinct characters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepSet {
    steps: Vec<Step>,
    labels: Vec<char>,
}

impl StepSet {
    pub fn new(entries: &[(char, Step)]) -> Result<StepSet> {
        if entries.is_empty() {
            return Err(CfError::InvalidStepSet("empty step set".into()));
        }
        if entries.len() > u8::MAX as usize {
            return Err(CfError::InvalidStepSet("too many steps".into()));
        }
        let mut labels = Vec::with_capacity(entries.len());
        let mut steps = Vec::with_capacity(entries.len());
        for &(c, s) in entries {
            if labels.contains(&c) {
                return Err(CfError::InvalidStepSet(format!("duplicate label {c:?}")));
            }
            if s.dx == 0 {
                return Err(CfError::InvalidStepSet(format!("step {c:?} has dx = 0")));
            }
            labels.push(c);
            steps.push(s);
        }
        Ok(StepSet { steps, labels })
    }

    /// `U = (1,1)`, `D = (1,-r)`.
    pub fn up_down(r: u32) -> StepSet {
        StepSet {
            steps: vec![Step { dx: 1, dy: 1 }, Step { dx: 1, dy: -(r as i64) }],
            labels: vec!['U', 'D'],
        }
    }

    /// The Dyck step set `{U = (1,1), D = (1,-1)}`.
    pub fn dyck() -> StepSet {
        StepSet::up_down(1)
    }

    /// `U = (1,1)`, `F = (s,0)`, `D = (1,-r)`.
    pub fn with_flat(r: u32, s: u32) -> Result<StepSet> {
        StepSet::new(&[
            ('U', Step::new(1, 1)?),
            ('F', Step::new(s, 0)?),
            ('D', Step::new(1, -(r as i64))?),
        ])
    }

    /// `U = (1,r)`, `D = (1,-1)`: the mirror image of [`StepSet::up_down`].
    pub fn star(r: u32) -> StepSet {
        StepSet {
            steps: vec![Step { dx: 1, dy: r as i64 }, Step { dx: 1, dy: -1 }],
            labels: vec!['U', 'D'],
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn labels(&self) -> &[char] {
        &self.labels
    }

    pub fn step(&self, i: usize) -> Step {
        self.steps[i]
    }

    pub fn label(&self, i: usize) -> char {
        self.labels[i]
    }

    pub fn index_of(&self, label: char) -> Option<usize> {
        self.labels.iter().position(|&c| c == label)
    }

    pub fn has_flat(&self) -> bool {
        self.steps.iter().any(Step::is_flat)
    }

    /// Step set obtained by reflecting every vector in the x-axis.
    ///
    /// The reflected vector of a step labelled `U` is labelled `D` and vice
    /// versa; other labels keep their names. Entries are listed in the order of
    /// the original labels, so the mirror of the Dyck set is the Dyck set.
    pub fn mirror(&self) -> StepSet {
        let mut entries: Vec<(char, Step)> = self
            .labels
            .iter()
            .zip(&self.steps)
            .map(|(&c, s)| (mirror_label(c), Step { dx: s.dx, dy: -s.dy }))
            .collect();
        entries.sort_by_key(|(c, _)| self.index_of(*c).unwrap_or(usize::MAX));
        StepSet {
            labels: entries.iter().map(|e| e.0).collect(),
            steps: entries.iter().map(|e| e.1).collect(),
        }
    }
}

fn mirror_label(c: char) -> char {
    match c {
        'U' => 'D',
        'D' => 'U',
        other => other,
    }
}

/// Immutable lattice path over a step set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Path {
    set: Arc<StepSet>,
    seq: Vec<u8>,
    xs: Vec<i64>,
    ys: Vec<i64>,
}

impl Path {
    /// Path from raw step indices. Panics if an index is out of range.
    pub fn from_indices(set: Arc<StepSet>, seq: Vec<u8>) -> Path {
        let mut xs = Vec::with_capacity(seq.len() + 1);
        let mut ys = Vec::with_capacity(seq.len() + 1);
        let (mut x, mut y) = (0i64, 0i64);
        xs.push(0);
        ys.push(0);
        for &i in &seq {
            let s = set.steps[i as usize];
            x += s.dx as i64;
            y += s.dy;
            xs.push(x);
            ys.push(y);
        }
        Path { set, seq, xs, ys }
    }

    pub fn parse(set: &Arc<StepSet>, word: &str) -> Result<Path> {
        let mut seq = Vec::with_capacity(word.len());
        for (pos, c) in word.chars().enumerate() {
            match set.index_of(c) {
                Some(i) => seq.push(i as u8),
                None => return Err(CfError::UnknownLabel { label: c, position: pos + 1 }),
            }
        }
        Ok(Path::from_indices(Arc::clone(set), seq))
    }

    pub fn step_set(&self) -> &Arc<StepSet> {
        &self.set
    }

    pub fn indices(&self) -> &[u8] {
        &self.seq
    }

    pub fn step_count(&self) -> usize {
        self.seq.len()
    }

    /// x-coordinate of the endpoint.
    pub fn length(&self) -> i64 {
        *self.xs.last().unwrap()
    }

    pub fn end_height(&self) -> i64 {
        *self.ys.last().unwrap()
    }

    pub fn step(&self, i: usize) -> Step {
        self.set.steps[self.seq[i] as usize]
    }

    pub fn label(&self, i: usize) -> char {
        self.set.labels[self.seq[i] as usize]
    }

    pub fn steps(&self) -> impl Iterator<Item = Step> + '_ {
        self.seq.iter().map(move |&i| self.set.steps[i as usize])
    }

    /// Height of vertex `i`, for `i` in `0..=step_count()`.
    pub fn height(&self, i: usize) -> i64 {
        self.ys[i]
    }

    /// x-coordinate of vertex `i`.
    pub fn x(&self, i: usize) -> i64 {
        self.xs[i]
    }

    pub fn heights(&self) -> &[i64] {
        &self.ys
    }

    pub fn vertices(&self) -> Vec<(i64, i64)> {
        self.xs.iter().copied().zip(self.ys.iter().copied()).collect()
    }

    pub fn word(&self) -> String {
        self.seq.iter().map(|&i| self.set.labels[i as usize]).collect()
    }

    /// The conjugate `σ^i`: rotate the word left by `i` and re-anchor at the origin.
    pub fn conjugate(&self, i: usize) -> Result<Path> {
        let m = self.seq.len();
        if i > m {
            return Err(CfError::OutOfRange { what: "rotation", value: i as i64, max: m as i64 });
        }
        let mut seq = Vec::with_capacity(m);
        seq.extend_from_slice(&self.seq[i..]);
        seq.extend_from_slice(&self.seq[..i]);
        Ok(Path::from_indices(Arc::clone(&self.set), seq))
    }

    /// Mirror image in the x-axis, expressed over [`StepSet::mirror`].
    pub fn reflect(&self) -> Path {
        let target = Arc::new(self.set.mirror());
        self.reflect_into(&target).expect("mirror set contains every reflected step")
    }

    /// Mirror image in the x-axis over a caller-declared step set.
    pub fn reflect_into(&self, target: &Arc<StepSet>) -> Result<Path> {
        let mut map = Vec::with_capacity(self.set.len());
        for s in &self.set.steps {
            let want = Step { dx: s.dx, dy: -s.dy };
            let j = target.steps.iter().position(|t| *t == want).ok_or_else(|| {
                CfError::StepSetMismatch(format!("no step ({}, {}) in the mirror set", want.dx, want.dy))
            })?;
            map.push(j as u8);
        }
        let seq = self.seq.iter().map(|&i| map[i as usize]).collect();
        Ok(Path::from_indices(Arc::clone(target), seq))
    }

    /// Sub-path made of steps `from..to`, re-anchored at the origin.
    pub fn slice(&self, from: usize, to: usize) -> Path {
        Path::from_indices(Arc::clone(&self.set), self.seq[from..to].to_vec())
    }

    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.set != other.set {
            return Err(CfError::StepSetMismatch("concatenating paths over different step sets".into()));
        }
        let mut seq = self.seq.clone();
        seq.extend_from_slice(&other.seq);
        Ok(Path::from_indices(Arc::clone(&self.set), seq))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path({})", self.word())
    }
}

/// Build a path from a word of step labels.
pub fn build_path(set: &Arc<StepSet>, word: &str) -> Result<Path> {
    Path::parse(set, word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeKind {
    Positive,
    Negative,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactor {
    pub kind: PrimeKind,
    pub sub_path: Path,
    pub start_height: i64,
}

/// Cut a path that starts and ends on the x-axis at every interior visit to height 0.
///
/// A factor is positive when its interior stays above the axis, negative when it
/// stays below, and mixed when a down step jumps from above to below (only
/// possible when down steps have depth greater than one).
pub fn factor_primes(p: &Path) -> Result<Vec<PrimeFactor>> {
    if p.end_height() != 0 {
        return Err(CfError::EndHeight { expected: 0, found: p.end_height(), hint: "" });
    }
    let mut out = Vec::new();
    let mut start = 0usize;
    for i in 1..=p.step_count() {
        if p.height(i) != 0 {
            continue;
        }
        let interior = &p.heights()[start + 1..i];
        let kind = if interior.iter().all(|&y| y > 0) {
            PrimeKind::Positive
        } else if interior.iter().all(|&y| y < 0) {
            PrimeKind::Negative
        } else {
            PrimeKind::Mixed
        };
        out.push(PrimeFactor { kind, sub_path: p.slice(start, i), start_height: p.height(start) });
        start = i;
    }
    Ok(out)
}

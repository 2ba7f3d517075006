//! Constructive maps: Schröder flatten/elevate, the Motzkin class moves, the
//! pair-to-two-colored conversion and block grouping.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{CfError, Result};
use crate::family::{enumerate_family, FamilySpec};
use crate::path::{Path, StepSet};
use crate::stats::{count_on_or_below, Selector};

fn err(msg: impl Into<String>) -> CfError {
    CfError::Bijection(msg.into())
}

/// Indices of the up, flat and down steps of a `{U, F, D}` step set.
fn ufd(set: &StepSet) -> Result<(u8, u8, u8)> {
    let find = |pred: fn(&crate::path::Step) -> bool, what: &str| {
        set.steps().iter().position(pred).map(|i| i as u8).ok_or_else(|| err(format!("step set has no {what} step")))
    };
    Ok((find(|s| s.dy == 1, "unit up")?, find(|s| s.dy == 0, "flat")?, find(|s| s.dy == -1, "unit down")?))
}

fn rebuild(p: &Path, seq: Vec<u8>) -> Path {
    Path::from_indices(Arc::clone(p.step_set()), seq)
}

fn axis_flats(p: &Path) -> Vec<usize> {
    (0..p.step_count()).filter(|&i| p.step(i).is_flat() && p.height(i) == 0).collect()
}

fn is_schroder(p: &Path) -> bool {
    p.end_height() == 0 && p.heights().iter().all(|&h| h >= 0)
}

/// `U a D rest -> a F rest`, where `U a D` is the first return to the axis.
pub fn schroder_flatten(p: &Path) -> Result<Path> {
    let (u, f, _) = ufd(p.step_set())?;
    if p.step_count() == 0 || !is_schroder(p) || !axis_flats(p).is_empty() {
        return Err(err(format!("{p} is not a nonempty Schröder path without axis flats")));
    }
    if p.indices()[0] != u {
        return Err(err(format!("{p} does not start with an up step")));
    }
    let ret = (1..=p.step_count()).find(|&i| p.height(i) == 0).expect("path ends on the axis");
    let mut seq = p.indices()[1..ret - 1].to_vec();
    seq.push(f);
    seq.extend_from_slice(&p.indices()[ret..]);
    Ok(rebuild(p, seq))
}

/// `b F c -> U b D c`, where `F` is the last flat step on the axis.
pub fn schroder_elevate(p: &Path) -> Result<Path> {
    let (u, _, d) = ufd(p.step_set())?;
    let Some(&last) = axis_flats(p).last().filter(|_| is_schroder(p)) else {
        return Err(err(format!("{p} is not a Schröder path with a flat step on the axis")));
    };
    let mut seq = vec![u];
    seq.extend_from_slice(&p.indices()[..last]);
    seq.push(d);
    seq.extend_from_slice(&p.indices()[last + 1..]);
    Ok(rebuild(p, seq))
}

/// Schröder paths of semi-length `n`, split by whether a flat step lies on the axis.
pub fn schroder_paths(n: u32, with_axis_flat: bool) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    for l in 0..=n {
        for p in enumerate_family(&FamilySpec::q(n - l, l, 1, 2, 0).nonnegative())? {
            if axis_flats(&p).is_empty() != with_axis_flat {
                out.push(p);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MotzkinCase {
    LeadingFlat,
    LeadingDu,
}

impl fmt::Display for MotzkinCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MotzkinCase::LeadingFlat => "leading-flat",
            MotzkinCase::LeadingDu => "leading-du",
        })
    }
}

impl FromStr for MotzkinCase {
    type Err = CfError;

    fn from_str(s: &str) -> Result<MotzkinCase> {
        match s {
            "leading-flat" => Ok(MotzkinCase::LeadingFlat),
            "leading-du" => Ok(MotzkinCase::LeadingDu),
            _ => Err(CfError::Unknown { kind: "motzkin case", name: s.to_string() }),
        }
    }
}

/// The class of `q`: a Motzkin-step path ending at height 1 with exactly one
/// flat-or-down step starting on or below the axis. `None` when outside both classes.
pub fn motzkin_class_of(q: &Path) -> Result<Option<MotzkinCase>> {
    let (u, f, d) = ufd(q.step_set())?;
    if q.end_height() != 1 || count_on_or_below(q, Selector::DownOrFlatStart)? != 1 {
        return Ok(None);
    }
    Ok(match q.indices() {
        [x, ..] if *x == f => Some(MotzkinCase::LeadingFlat),
        [x, y, ..] if *x == d && *y == u => Some(MotzkinCase::LeadingDu),
        _ => None,
    })
}

/// Drop the leading `F` (or `DU`) and append `D`, giving a Motzkin path with no axis flat.
pub fn motzkin_class_map(q: &Path, case: MotzkinCase) -> Result<Path> {
    let (_, _, d) = ufd(q.step_set())?;
    let found = motzkin_class_of(q)?;
    if found != Some(case) {
        return Err(err(format!("{q} is not in class {case}")));
    }
    let skip = match case {
        MotzkinCase::LeadingFlat => 1,
        MotzkinCase::LeadingDu => 2,
    };
    let mut seq = q.indices()[skip..].to_vec();
    seq.push(d);
    Ok(rebuild(q, seq))
}

/// Inverse of [`motzkin_class_map`] on nonempty Motzkin paths with no axis flat.
pub fn motzkin_class_inverse(m: &Path, case: MotzkinCase) -> Result<Path> {
    let (u, f, d) = ufd(m.step_set())?;
    if m.step_count() == 0 || !is_schroder(m) || !axis_flats(m).is_empty() {
        return Err(err(format!("{m} is not a nonempty Motzkin path without axis flats")));
    }
    let mut seq = match case {
        MotzkinCase::LeadingFlat => vec![f],
        MotzkinCase::LeadingDu => vec![d, u],
    };
    seq.extend_from_slice(&m.indices()[..m.step_count() - 1]);
    Ok(rebuild(m, seq))
}

/// All length `n + 1` paths of the given class.
pub fn motzkin_class_paths(n: u32, case: MotzkinCase) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    for k in 0..=n / 2 {
        for q in enumerate_family(&FamilySpec::q(k, n - 2 * k, 1, 1, 1))? {
            if motzkin_class_of(&q)? == Some(case) {
                out.push(q);
            }
        }
    }
    Ok(out)
}

/// Motzkin paths of length `n` with no flat step on the axis.
pub fn riordan_paths(n: u32) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    for k in 0..=n / 2 {
        for p in enumerate_family(&FamilySpec::q(k, n - 2 * k, 1, 1, 0).nonnegative())? {
            if axis_flats(&p).is_empty() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepKind {
    Up,
    Down,
    Flat,
}

/// A step of a colored free Motzkin path. For two colors, flat 0 is solid and flat 1 dashed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColoredStep {
    pub kind: StepKind,
    pub color: u8,
}

impl ColoredStep {
    pub const UP: ColoredStep = ColoredStep { kind: StepKind::Up, color: 0 };
    pub const DOWN: ColoredStep = ColoredStep { kind: StepKind::Down, color: 0 };
    pub const SOLID: ColoredStep = ColoredStep { kind: StepKind::Flat, color: 0 };
    pub const DASHED: ColoredStep = ColoredStep { kind: StepKind::Flat, color: 1 };

    pub fn dy(&self) -> i64 {
        match self.kind {
            StepKind::Up => 1,
            StepKind::Down => -1,
            StepKind::Flat => 0,
        }
    }
}

impl fmt::Display for ColoredStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.color) {
            (StepKind::Up, _) => f.write_str("U"),
            (StepKind::Down, _) => f.write_str("D"),
            (StepKind::Flat, 0) => f.write_str("F"),
            (StepKind::Flat, 1) => f.write_str("f"),
            (StepKind::Flat, c) => write!(f, "F{c}"),
        }
    }
}

pub fn colored_word(steps: &[ColoredStep]) -> String {
    steps.iter().map(ToString::to_string).collect()
}

/// Read two steps at a time: `UU -> U`, `DD -> D`, `UD -> dashed`, `DU -> solid`.
pub fn pair_to_two_colored(p: &Path) -> Result<Vec<ColoredStep>> {
    if p.step_count() % 2 != 0 {
        return Err(err(format!("{p} has an odd number of steps")));
    }
    if p.steps().any(|s| s.dy.abs() != 1) {
        return Err(err(format!("{p} has a step that is not a unit up or down")));
    }
    Ok((0..p.step_count() / 2)
        .map(|b| match (p.step(2 * b).is_up(), p.step(2 * b + 1).is_up()) {
            (true, true) => ColoredStep::UP,
            (false, false) => ColoredStep::DOWN,
            (true, false) => ColoredStep::DASHED,
            (false, true) => ColoredStep::SOLID,
        })
        .collect())
}

/// Inverse of [`pair_to_two_colored`], over a step set with unit up and down steps.
pub fn two_colored_to_pair(steps: &[ColoredStep], set: &Arc<StepSet>) -> Result<Path> {
    let find = |dy: i64| set.steps().iter().position(|s| s.dy == dy).map(|i| i as u8);
    let (Some(u), Some(d)) = (find(1), find(-1)) else {
        return Err(err("step set needs unit up and down steps"));
    };
    let mut seq = Vec::with_capacity(2 * steps.len());
    for s in steps {
        seq.extend_from_slice(&match (s.kind, s.color) {
            (StepKind::Up, _) => [u, u],
            (StepKind::Down, _) => [d, d],
            (StepKind::Flat, 1) => [u, d],
            (StepKind::Flat, 0) => [d, u],
            _ => return Err(err(format!("flat color {} has no two-step form", s.color))),
        });
    }
    Ok(Path::from_indices(Arc::clone(set), seq))
}

/// Height change of each block of `m` consecutive steps, divided by `m`.
pub fn block_group(p: &Path, m: usize) -> Result<Vec<i64>> {
    if m == 0 || p.step_count() % m != 0 {
        return Err(err(format!("{} steps do not split into blocks of {m}", p.step_count())));
    }
    (0..p.step_count() / m)
        .map(|b| {
            let change = p.height((b + 1) * m) - p.height(b * m);
            if change % m as i64 != 0 {
                return Err(err(format!("block {b} of {p} changes height by {change}, not a multiple of {m}")));
            }
            Ok(change / m as i64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{eval, Args, Family, FormId};
    use std::collections::HashSet;

    fn sch() -> Arc<StepSet> {
        Arc::new(StepSet::with_flat(1, 2).unwrap())
    }

    fn word(p: Result<Path>) -> String {
        p.unwrap().word()
    }

    fn form(f: Family, n: i64) -> usize {
        eval(FormId::canonical(f), &Args::n(n)).unwrap().try_into().unwrap()
    }

    #[test]
    fn schroder_examples() {
        let s = sch();
        assert_eq!(word(schroder_flatten(&Path::parse(&s, "UD").unwrap())), "F");
        assert_eq!(word(schroder_flatten(&Path::parse(&s, "UUDDUD").unwrap())), "UDFUD");
        assert_eq!(word(schroder_elevate(&Path::parse(&s, "F").unwrap())), "UD");
        assert_eq!(word(schroder_elevate(&Path::parse(&s, "UDFUD").unwrap())), "UUDDUD");
        assert!(schroder_flatten(&Path::parse(&s, "FUD").unwrap()).is_err());
        assert!(schroder_elevate(&Path::parse(&s, "UFD").unwrap()).is_err());
    }

    #[test]
    fn schroder_bijection() {
        for n in 1..=5u32 {
            let without = schroder_paths(n, false).unwrap();
            let with = schroder_paths(n, true).unwrap();
            assert_eq!(without.len(), form(Family::SmallSchroder, n as i64));
            assert_eq!(with.len(), without.len());
            let image: HashSet<Path> = without.iter().map(|p| schroder_flatten(p).unwrap()).collect();
            assert_eq!(image, with.iter().cloned().collect());
            for p in &without {
                assert_eq!(&schroder_elevate(&schroder_flatten(p).unwrap()).unwrap(), p);
            }
        }
        assert_eq!(schroder_paths(5, false).unwrap().len(), 197);
    }

    #[test]
    fn motzkin_classes() {
        for n in 1..=6u32 {
            for (case, len) in [(MotzkinCase::LeadingFlat, n + 1), (MotzkinCase::LeadingDu, n)] {
                let dom = motzkin_class_paths(n, case).unwrap();
                let target: HashSet<Path> = riordan_paths(len).unwrap().into_iter().collect();
                let image: HashSet<Path> = dom.iter().map(|q| motzkin_class_map(q, case).unwrap()).collect();
                assert_eq!(image.len(), dom.len());
                assert_eq!(image, target, "n={n} {case}");
                for m in &target {
                    assert_eq!(motzkin_class_map(&motzkin_class_inverse(m, case).unwrap(), case).unwrap(), *m);
                }
            }
        }
        let m = Arc::new(StepSet::with_flat(1, 1).unwrap());
        let q = Path::parse(&m, "FU").unwrap();
        assert_eq!(word(motzkin_class_map(&q, MotzkinCase::LeadingFlat)), "UD");
        assert_eq!(word(motzkin_class_map(&Path::parse(&m, "DUUFDU").unwrap(), MotzkinCase::LeadingDu)), "UFDUD");
        assert!(motzkin_class_map(&q, MotzkinCase::LeadingDu).is_err());
    }

    #[test]
    fn two_colored_examples() {
        let s = Arc::new(StepSet::dyck());
        let p = Path::parse(&s, "UDDU").unwrap();
        assert_eq!(pair_to_two_colored(&p).unwrap(), vec![ColoredStep::DASHED, ColoredStep::SOLID]);
        assert_eq!(colored_word(&pair_to_two_colored(&Path::parse(&s, "UUDD").unwrap()).unwrap()), "UD");
        assert!(pair_to_two_colored(&Path::parse(&s, "UUD").unwrap()).is_err());
        assert_eq!(two_colored_to_pair(&pair_to_two_colored(&p).unwrap(), &s).unwrap(), p);
    }

    #[test]
    fn blocks() {
        let s = Arc::new(StepSet::dyck());
        assert_eq!(block_group(&Path::parse(&s, "UDDU").unwrap(), 2).unwrap(), vec![0, 0]);
        assert_eq!(block_group(&Path::parse(&s, "UUDD").unwrap(), 2).unwrap(), vec![1, -1]);
        assert!(block_group(&Path::parse(&s, "UUD").unwrap(), 2).is_err());
        assert!(block_group(&Path::parse(&s, "UUUD").unwrap(), 3).is_err());
        for r in 1..=3u32 {
            for n in 1..=4u32 {
                for p in enumerate_family(&FamilySpec::p(n - 1, r, r as i64 + 1)).unwrap() {
                    let b = block_group(&p, r as usize + 1).unwrap();
                    assert_eq!(b.iter().sum::<i64>(), 1, "{p}");
                }
            }
        }
    }
}

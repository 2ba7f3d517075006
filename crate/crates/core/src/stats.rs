//! Vertex selectors and path statistics.

use std::fmt;
use std::str::FromStr;

use crate::error::{CfError, Result};
use crate::path::{Path, Step};

/// Rule choosing the special vertices of a path.
///
/// `*-start` selectors pick the initial vertex of matching steps. Pattern
/// selectors (peak, valley, double rise/fall) pick the vertex between the two
/// steps. Only [`Selector::CircularPeak`] looks across the wraparound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Selector {
    UpStart,
    DownStart,
    FlatStart,
    AllStarts,
    Peak,
    Valley,
    DoubleRise,
    DoubleFall,
    CircularPeak,
    UpStartMod { m: u32, res: u32 },
    DownStartMod { m: u32, res: u32 },
    UpOrFlatStart,
    DownOrFlatStart,
    UpOrDownStart,
}

impl Selector {
    fn needs_flat(&self) -> bool {
        matches!(self, Selector::FlatStart | Selector::UpOrFlatStart | Selector::DownOrFlatStart)
    }

    fn start_matches(&self, s: Step, x: i64) -> Option<bool> {
        Some(match *self {
            Selector::UpStart => s.is_up(),
            Selector::DownStart => s.is_down(),
            Selector::FlatStart => s.is_flat(),
            Selector::AllStarts => true,
            Selector::UpOrFlatStart => !s.is_down(),
            Selector::DownOrFlatStart => !s.is_up(),
            Selector::UpOrDownStart => !s.is_flat(),
            Selector::UpStartMod { m, res } => s.is_up() && x.rem_euclid(m as i64) == res as i64,
            Selector::DownStartMod { m, res } => s.is_down() && x.rem_euclid(m as i64) == res as i64,
            _ => return None,
        })
    }

    fn pattern_matches(&self, before: Step, after: Step) -> bool {
        match self {
            Selector::Peak | Selector::CircularPeak => before.is_up() && after.is_down(),
            Selector::Valley => before.is_down() && after.is_up(),
            Selector::DoubleRise => before.is_up() && after.is_up(),
            Selector::DoubleFall => before.is_down() && after.is_down(),
            _ => false,
        }
    }

    fn check(&self, p: &Path) -> Result<()> {
        if self.needs_flat() && !p.step_set().has_flat() {
            return Err(CfError::Selector {
                selector: self.to_string(),
                reason: "step set has no flat step".into(),
            });
        }
        if let Selector::UpStartMod { m, res } | Selector::DownStartMod { m, res } = *self {
            if m == 0 || res >= m {
                return Err(CfError::Selector {
                    selector: self.to_string(),
                    reason: "need m >= 1 and residue < m".into(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::UpStart => f.write_str("up-start"),
            Selector::DownStart => f.write_str("down-start"),
            Selector::FlatStart => f.write_str("flat-start"),
            Selector::AllStarts => f.write_str("all-starts"),
            Selector::Peak => f.write_str("peak"),
            Selector::Valley => f.write_str("valley"),
            Selector::DoubleRise => f.write_str("double-rise"),
            Selector::DoubleFall => f.write_str("double-fall"),
            Selector::CircularPeak => f.write_str("circular-peak"),
            Selector::UpStartMod { m, res } => write!(f, "up-start-mod:{m}:{res}"),
            Selector::DownStartMod { m, res } => write!(f, "down-start-mod:{m}:{res}"),
            Selector::UpOrFlatStart => f.write_str("up-or-flat-start"),
            Selector::DownOrFlatStart => f.write_str("down-or-flat-start"),
            Selector::UpOrDownStart => f.write_str("up-or-down-start"),
        }
    }
}

impl FromStr for Selector {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Selector> {
        let simple = match s {
            "up-start" => Some(Selector::UpStart),
            "down-start" => Some(Selector::DownStart),
            "flat-start" => Some(Selector::FlatStart),
            "all-starts" => Some(Selector::AllStarts),
            "peak" => Some(Selector::Peak),
            "valley" => Some(Selector::Valley),
            "double-rise" => Some(Selector::DoubleRise),
            "double-fall" => Some(Selector::DoubleFall),
            "circular-peak" => Some(Selector::CircularPeak),
            "up-or-flat-start" => Some(Selector::UpOrFlatStart),
            "down-or-flat-start" => Some(Selector::DownOrFlatStart),
            "up-or-down-start" => Some(Selector::UpOrDownStart),
            _ => None,
        };
        if let Some(sel) = simple {
            return Ok(sel);
        }
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() == 3 {
            let num = |t: &str| t.parse::<u32>().map_err(|_| CfError::Parse(format!("bad number {t:?} in selector {s:?}")));
            let (m, res) = (num(parts[1])?, num(parts[2])?);
            match parts[0] {
                "up-start-mod" => return Ok(Selector::UpStartMod { m, res }),
                "down-start-mod" => return Ok(Selector::DownStartMod { m, res }),
                _ => {}
            }
        }
        Err(CfError::Unknown { kind: "selector", name: s.to_string() })
    }
}

/// Selected vertices together with their on/below and on/above counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatReport {
    pub selected_indices: Vec<usize>,
    pub on_or_below: usize,
    pub on_or_above: usize,
}

/// Sorted indices of the vertices chosen by `sel`. The last vertex is never chosen.
pub fn select_vertices(p: &Path, sel: Selector) -> Result<Vec<usize>> {
    sel.check(p)?;
    let m = p.step_count();
    let mut out = Vec::new();
    if sel.start_matches(p.step_set().step(0), 0).is_some() {
        for i in 0..m {
            if sel.start_matches(p.step(i), p.x(i)) == Some(true) {
                out.push(i);
            }
        }
        return Ok(out);
    }
    if sel == Selector::CircularPeak && m > 0 && p.step(0).is_down() && p.step(m - 1).is_up() {
        out.push(0);
    }
    for i in 1..m {
        if sel.pattern_matches(p.step(i - 1), p.step(i)) {
            out.push(i);
        }
    }
    Ok(out)
}

/// Like [`select_vertices`], but pattern selectors also test vertex 0 against
/// the wraparound pair (last step, first step). This is the selection the cycle
/// method transports along conjugation.
pub fn select_cyclic(p: &Path, sel: Selector) -> Result<Vec<usize>> {
    let mut out = select_vertices(p, sel)?;
    let m = p.step_count();
    let is_pattern = sel.start_matches(p.step_set().step(0), 0).is_none();
    if is_pattern && m > 0 && out.first() != Some(&0) && sel.pattern_matches(p.step(m - 1), p.step(0)) {
        out.insert(0, 0);
    }
    Ok(out)
}

pub fn count_selected(p: &Path, sel: Selector) -> Result<usize> {
    Ok(select_vertices(p, sel)?.len())
}

/// Selected vertices with `y <= 0`.
pub fn count_on_or_below(p: &Path, sel: Selector) -> Result<usize> {
    Ok(select_vertices(p, sel)?.into_iter().filter(|&i| p.height(i) <= 0).count())
}

/// Selected vertices with `y >= 0`.
pub fn count_on_or_above(p: &Path, sel: Selector) -> Result<usize> {
    Ok(select_vertices(p, sel)?.into_iter().filter(|&i| p.height(i) >= 0).count())
}

/// Selected vertices with `y < 0`.
pub fn count_below(p: &Path, sel: Selector) -> Result<usize> {
    Ok(select_vertices(p, sel)?.into_iter().filter(|&i| p.height(i) < 0).count())
}

/// Selected vertices with `y > 0`.
pub fn count_above(p: &Path, sel: Selector) -> Result<usize> {
    Ok(select_vertices(p, sel)?.into_iter().filter(|&i| p.height(i) > 0).count())
}

pub fn stat_report(p: &Path, sel: Selector) -> Result<StatReport> {
    let selected_indices = select_vertices(p, sel)?;
    let on_or_below = selected_indices.iter().filter(|&&i| p.height(i) <= 0).count();
    let on_or_above = selected_indices.iter().filter(|&&i| p.height(i) >= 0).count();
    Ok(StatReport { selected_indices, on_or_below, on_or_above })
}

/// Number of maximal blocks of consecutive down steps.
pub fn descending_runs(p: &Path) -> usize {
    let mut runs = 0;
    let mut prev_down = false;
    for s in p.steps() {
        if s.is_down() && !prev_down {
            runs += 1;
        }
        prev_down = s.is_down();
    }
    runs
}

/// Smallest vertex index attaining the maximum height.
pub fn leftmost_highest_index(p: &Path) -> usize {
    let h = p.heights();
    let max = *h.iter().max().unwrap();
    h.iter().position(|&y| y == max).unwrap()
}

/// Vertices, endpoint included, lying strictly above the x-axis.
pub fn positive_vertex_count(p: &Path) -> usize {
    p.heights().iter().filter(|&&y| y > 0).count()
}

//! Path families, exhaustive generation and distribution tables.
//!
//! Families are written `P:n=3,r=1,h=1`, `Q:k=2,l=1,r=1,s=2,h=0` or
//! `Pstar:n=2,r=2,h=1`, optionally followed by `+constraint` suffixes such as
//! `+nonneg`, `+first=UF` or `+peaks=2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{CfError, Result};
use crate::path::{Path, StepSet};
use crate::stats::{self, Selector};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Upper bound on the number of paths a single enumeration may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Budget {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// The default budget, overridden by `CF_MAX_PATHS` when it parses.
    pub fn from_env() -> Budget {
        std::env::var("CF_MAX_PATHS")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `rn+h` steps `(1,1)` and `n` steps `(1,-r)`.
    P { n: u32, r: u32, h: i64 },
    /// `rk+h` steps `(1,1)`, `k` steps `(1,-r)` and `l` steps `(s,0)`.
    Q { k: u32, l: u32, r: u32, s: u32, h: i64 },
    /// `n` steps `(1,r)` and `rn-h` steps `(1,-1)`; the mirror of `P(n,r,-h)`.
    Pstar { n: u32, r: u32, h: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    Nonnegative,
    StrictlyPositiveInterior,
    NoFlatOnAxis,
    FirstStep(String),
    LastStep(String),
    PeakCount(usize),
    ValleyCount(usize),
    CircularPeakCount(usize),
    DescendingRuns(usize),
    EvenUpCount(usize),
    EvenDownCount(usize),
    /// Up steps per position class modulo the vector length.
    ModClassUpCounts(Vec<usize>),
    /// Down steps per position class modulo the vector length.
    ModClassDownCounts(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub constraints: Vec<Constraint>,
}

impl FamilySpec {
    pub fn p(n: u32, r: u32, h: i64) -> FamilySpec {
        FamilySpec { kind: FamilyKind::P { n, r, h }, constraints: Vec::new() }
    }

    pub fn q(k: u32, l: u32, r: u32, s: u32, h: i64) -> FamilySpec {
        FamilySpec { kind: FamilyKind::Q { k, l, r, s, h }, constraints: Vec::new() }
    }

    pub fn pstar(n: u32, r: u32, h: i64) -> FamilySpec {
        FamilySpec { kind: FamilyKind::Pstar { n, r, h }, constraints: Vec::new() }
    }

    pub fn with(mut self, c: Constraint) -> FamilySpec {
        self.constraints.push(c);
        self
    }

    pub fn first(self, labels: &str) -> FamilySpec {
        self.with(Constraint::FirstStep(labels.to_string()))
    }

    pub fn last(self, labels: &str) -> FamilySpec {
        self.with(Constraint::LastStep(labels.to_string()))
    }

    pub fn nonnegative(self) -> FamilySpec {
        self.with(Constraint::Nonnegative)
    }

    /// Step set and the number of times each step is used.
    pub fn step_budget(&self) -> Result<(StepSet, Vec<usize>)> {
        let count = |v: i64, what: &str| -> Result<usize> {
            usize::try_from(v).map_err(|_| CfError::Family(format!("{what} step count {v} is negative")))
        };
        match self.kind {
            FamilyKind::P { n, r, h } => {
                if r == 0 {
                    return Err(CfError::Family("r must be positive".into()));
                }
                let ups = count(r as i64 * n as i64 + h, "up")?;
                Ok((StepSet::up_down(r), vec![ups, n as usize]))
            }
            FamilyKind::Q { k, l, r, s, h } => {
                if r == 0 || s == 0 {
                    return Err(CfError::Family("r and s must be positive".into()));
                }
                let ups = count(r as i64 * k as i64 + h, "up")?;
                Ok((StepSet::with_flat(r, s)?, vec![ups, l as usize, k as usize]))
            }
            FamilyKind::Pstar { n, r, h } => {
                if r == 0 {
                    return Err(CfError::Family("r must be positive".into()));
                }
                let downs = count(r as i64 * n as i64 - h, "down")?;
                Ok((StepSet::star(r), vec![n as usize, downs]))
            }
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::P { n, r, h } => write!(f, "P:n={n},r={r},h={h}"),
            FamilyKind::Q { k, l, r, s, h } => write!(f, "Q:k={k},l={l},r={r},s={s},h={h}"),
            FamilyKind::Pstar { n, r, h } => write!(f, "Pstar:n={n},r={r},h={h}"),
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(":")
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Nonnegative => f.write_str("nonneg"),
            Constraint::StrictlyPositiveInterior => f.write_str("strict"),
            Constraint::NoFlatOnAxis => f.write_str("noaxisflat"),
            Constraint::FirstStep(s) => write!(f, "first={s}"),
            Constraint::LastStep(s) => write!(f, "last={s}"),
            Constraint::PeakCount(c) => write!(f, "peaks={c}"),
            Constraint::ValleyCount(c) => write!(f, "valleys={c}"),
            Constraint::CircularPeakCount(c) => write!(f, "cpeaks={c}"),
            Constraint::DescendingRuns(c) => write!(f, "runs={c}"),
            Constraint::EvenUpCount(c) => write!(f, "evenup={c}"),
            Constraint::EvenDownCount(c) => write!(f, "evendown={c}"),
            Constraint::ModClassUpCounts(v) => write!(f, "modup={}", join(v)),
            Constraint::ModClassDownCounts(v) => write!(f, "moddown={}", join(v)),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for c in &self.constraints {
            write!(f, "+{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Constraint {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Constraint> {
        let (key, val) = match s.split_once('=') {
            Some((k, v)) => (k, Some(v)),
            None => (s, None),
        };
        let num = || -> Result<usize> {
            val.ok_or_else(|| CfError::Parse(format!("constraint {key} needs a value")))?
                .parse()
                .map_err(|_| CfError::Parse(format!("bad value in constraint {s:?}")))
        };
        let vec = || -> Result<Vec<usize>> {
            val.ok_or_else(|| CfError::Parse(format!("constraint {key} needs a value")))?
                .split(':')
                .map(|t| t.parse().map_err(|_| CfError::Parse(format!("bad value in constraint {s:?}"))))
                .collect()
        };
        let labels = || -> Result<String> {
            match val {
                Some(v) if !v.is_empty() => Ok(v.to_string()),
                _ => Err(CfError::Parse(format!("constraint {key} needs step labels"))),
            }
        };
        Ok(match key {
            "nonneg" => Constraint::Nonnegative,
            "strict" => Constraint::StrictlyPositiveInterior,
            "noaxisflat" => Constraint::NoFlatOnAxis,
            "first" => Constraint::FirstStep(labels()?),
            "last" => Constraint::LastStep(labels()?),
            "peaks" => Constraint::PeakCount(num()?),
            "valleys" => Constraint::ValleyCount(num()?),
            "cpeaks" => Constraint::CircularPeakCount(num()?),
            "runs" => Constraint::DescendingRuns(num()?),
            "evenup" => Constraint::EvenUpCount(num()?),
            "evendown" => Constraint::EvenDownCount(num()?),
            "modup" => Constraint::ModClassUpCounts(vec()?),
            "moddown" => Constraint::ModClassDownCounts(vec()?),
            _ => return Err(CfError::Unknown { kind: "constraint", name: key.to_string() }),
        })
    }
}

impl FromStr for FamilySpec {
    type Err = CfError;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let mut parts = s.split('+');
        let head = parts.next().unwrap_or_default();
        let (name, params) = head
            .split_once(':')
            .ok_or_else(|| CfError::Parse(format!("family {head:?} needs the form NAME:key=value,...")))?;
        let mut map = BTreeMap::new();
        for kv in params.split(',').filter(|t| !t.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| CfError::Parse(format!("bad parameter {kv:?}")))?;
            let v: i64 = v.trim().parse().map_err(|_| CfError::Parse(format!("bad parameter {kv:?}")))?;
            map.insert(k.trim().to_string(), v);
        }
        let get = |k: &str, default: Option<i64>| -> Result<i64> {
            map.get(k).copied().or(default).ok_or_else(|| CfError::Parse(format!("missing parameter {k} in {head:?}")))
        };
        let nat = |k: &str, default: Option<i64>| -> Result<u32> {
            let v = get(k, default)?;
            u32::try_from(v).map_err(|_| CfError::Parse(format!("parameter {k} = {v} must be nonnegative")))
        };
        let allowed: &[&str] = match name {
            "P" | "Pstar" => &["n", "r", "h"],
            "Q" => &["k", "l", "r", "s", "h"],
            _ => return Err(CfError::Unknown { kind: "family", name: name.to_string() }),
        };
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(CfError::Parse(format!("unknown parameter {k} for family {name}")));
        }
        let kind = match name {
            "P" => FamilyKind::P { n: nat("n", None)?, r: nat("r", Some(1))?, h: get("h", Some(0))? },
            "Pstar" => FamilyKind::Pstar { n: nat("n", None)?, r: nat("r", Some(1))?, h: get("h", Some(0))? },
            _ => FamilyKind::Q {
                k: nat("k", None)?,
                l: nat("l", None)?,
                r: nat("r", Some(1))?,
                s: nat("s", Some(1))?,
                h: get("h", Some(0))?,
            },
        };
        let constraints = parts.map(str::parse).collect::<Result<Vec<_>>>()?;
        let spec = FamilySpec { kind, constraints };
        spec.step_budget()?;
        Ok(spec)
    }
}

/// Depth-first generator over the words of a family, in label order.
pub struct FamilyIter {
    set: Arc<StepSet>,
    order: Vec<u8>,
    remaining: Vec<usize>,
    total: usize,
    word: Vec<u8>,
    heights: Vec<i64>,
    xs: Vec<i64>,
    choice: Vec<usize>,
    first_mask: Option<Vec<bool>>,
    last_mask: Option<Vec<bool>>,
    nonneg: bool,
    strict: bool,
    no_axis_flat: bool,
    mod_up: Option<Vec<usize>>,
    mod_down: Option<Vec<usize>>,
    leaf: Vec<Constraint>,
    class_up: Vec<usize>,
    class_down: Vec<usize>,
    done: bool,
}

fn label_mask(set: &StepSet, labels: &str) -> Result<Vec<bool>> {
    let mut mask = vec![false; set.len()];
    for c in labels.chars() {
        let i = set
            .index_of(c)
            .ok_or_else(|| CfError::Family(format!("label {c:?} is not in the step set")))?;
        mask[i] = true;
    }
    Ok(mask)
}

fn intersect(a: Option<Vec<bool>>, b: Vec<bool>) -> Vec<bool> {
    match a {
        None => b,
        Some(a) => a.iter().zip(&b).map(|(x, y)| *x && *y).collect(),
    }
}

impl FamilyIter {
    fn new(spec: &FamilySpec) -> Result<FamilyIter> {
        let (set, remaining) = spec.step_budget()?;
        let mut order: Vec<u8> = (0..set.len() as u8).collect();
        order.sort_by_key(|&i| set.label(i as usize));
        let total = remaining.iter().sum();
        let mut it = FamilyIter {
            order,
            remaining,
            total,
            word: Vec::with_capacity(total),
            heights: vec![0],
            xs: vec![0],
            choice: vec![0; total + 1],
            first_mask: None,
            last_mask: None,
            nonneg: false,
            strict: false,
            no_axis_flat: false,
            mod_up: None,
            mod_down: None,
            leaf: Vec::new(),
            class_up: Vec::new(),
            class_down: Vec::new(),
            done: false,
            set: Arc::new(set),
        };
        for c in &spec.constraints {
            match c {
                Constraint::Nonnegative => it.nonneg = true,
                Constraint::StrictlyPositiveInterior => it.strict = true,
                Constraint::NoFlatOnAxis => it.no_axis_flat = true,
                Constraint::FirstStep(l) => it.first_mask = Some(intersect(it.first_mask.take(), label_mask(&it.set, l)?)),
                Constraint::LastStep(l) => it.last_mask = Some(intersect(it.last_mask.take(), label_mask(&it.set, l)?)),
                Constraint::ModClassUpCounts(v) | Constraint::ModClassDownCounts(v) if v.is_empty() => {
                    return Err(CfError::Family("mod-class vector must be non-empty".into()));
                }
                Constraint::ModClassUpCounts(v) => {
                    it.class_up = vec![0; v.len()];
                    it.mod_up = Some(v.clone());
                }
                Constraint::ModClassDownCounts(v) => {
                    it.class_down = vec![0; v.len()];
                    it.mod_down = Some(v.clone());
                }
                other => it.leaf.push(other.clone()),
            }
        }
        Ok(it)
    }

    fn feasible(&self, idx: usize) -> bool {
        if self.remaining[idx] == 0 {
            return false;
        }
        let d = self.word.len();
        if d == 0 {
            if let Some(m) = &self.first_mask {
                if !m[idx] {
                    return false;
                }
            }
        }
        if d + 1 == self.total {
            if let Some(m) = &self.last_mask {
                if !m[idx] {
                    return false;
                }
            }
        }
        let s = self.set.step(idx);
        let y0 = *self.heights.last().unwrap();
        let y1 = y0 + s.dy;
        if self.nonneg && y1 < 0 {
            return false;
        }
        if self.strict && d + 1 < self.total && y1 <= 0 {
            return false;
        }
        if self.no_axis_flat && s.is_flat() && y0 == 0 {
            return false;
        }
        let x = *self.xs.last().unwrap();
        if let Some(target) = &self.mod_up {
            if s.is_up() {
                let c = x.rem_euclid(target.len() as i64) as usize;
                if self.class_up[c] + 1 > target[c] {
                    return false;
                }
            }
        }
        if let Some(target) = &self.mod_down {
            if s.is_down() {
                let c = x.rem_euclid(target.len() as i64) as usize;
                if self.class_down[c] + 1 > target[c] {
                    return false;
                }
            }
        }
        true
    }

    fn push(&mut self, idx: usize) {
        let s = self.set.step(idx);
        let x = *self.xs.last().unwrap();
        if s.is_up() && self.mod_up.is_some() {
            let n = self.class_up.len() as i64;
            self.class_up[x.rem_euclid(n) as usize] += 1;
        }
        if s.is_down() && self.mod_down.is_some() {
            let n = self.class_down.len() as i64;
            self.class_down[x.rem_euclid(n) as usize] += 1;
        }
        self.remaining[idx] -= 1;
        self.word.push(idx as u8);
        self.heights.push(self.heights.last().unwrap() + s.dy);
        self.xs.push(x + s.dx as i64);
    }

    fn pop(&mut self) {
        let idx = self.word.pop().unwrap() as usize;
        self.heights.pop();
        self.xs.pop();
        self.remaining[idx] += 1;
        let s = self.set.step(idx);
        let x = *self.xs.last().unwrap();
        if s.is_up() && self.mod_up.is_some() {
            let n = self.class_up.len() as i64;
            self.class_up[x.rem_euclid(n) as usize] -= 1;
        }
        if s.is_down() && self.mod_down.is_some() {
            let n = self.class_down.len() as i64;
            self.class_down[x.rem_euclid(n) as usize] -= 1;
        }
    }

    fn leaf_ok(&self, p: &Path) -> bool {
        if let Some(t) = &self.mod_up {
            if &self.class_up != t {
                return false;
            }
        }
        if let Some(t) = &self.mod_down {
            if &self.class_down != t {
                return false;
            }
        }
        let count = |sel| stats::count_selected(p, sel).unwrap_or(usize::MAX);
        let even_up = Selector::UpStartMod { m: 2, res: 0 };
        let even_down = Selector::DownStartMod { m: 2, res: 0 };
        self.leaf.iter().all(|c| match c {
            Constraint::PeakCount(n) => count(Selector::Peak) == *n,
            Constraint::ValleyCount(n) => count(Selector::Valley) == *n,
            Constraint::CircularPeakCount(n) => count(Selector::CircularPeak) == *n,
            Constraint::DescendingRuns(n) => stats::descending_runs(p) == *n,
            Constraint::EvenUpCount(n) => count(even_up) == *n,
            Constraint::EvenDownCount(n) => count(even_down) == *n,
            _ => true,
        })
    }
}

impl Iterator for FamilyIter {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        if self.done {
            return None;
        }
        loop {
            let d = self.word.len();
            if d == self.total {
                let p = Path::from_indices(Arc::clone(&self.set), self.word.clone());
                let ok = self.leaf_ok(&p);
                if d == 0 {
                    self.done = true;
                } else {
                    self.pop();
                    self.choice[d - 1] += 1;
                }
                if ok {
                    return Some(p);
                }
                if self.done {
                    return None;
                }
                continue;
            }
            let mut c = self.choice[d];
            while c < self.order.len() && !self.feasible(self.order[c] as usize) {
                c += 1;
            }
            if c < self.order.len() {
                self.choice[d] = c;
                self.push(self.order[c] as usize);
                self.choice[d + 1] = 0;
            } else if d == 0 {
                self.done = true;
                return None;
            } else {
                self.pop();
                self.choice[d - 1] += 1;
            }
        }
    }
}

/// Every path of the family exactly once, in lexicographic word order.
pub fn enumerate_family(spec: &FamilySpec) -> Result<FamilyIter> {
    FamilyIter::new(spec)
}

/// Run `f` on every path of the family, failing once more than `budget` paths appear.
pub fn for_each_path(spec: &FamilySpec, budget: Budget, mut f: impl FnMut(&Path) -> Result<()>) -> Result<u64> {
    let mut n = 0u64;
    for p in enumerate_family(spec)? {
        n += 1;
        if n > budget.0 {
            return Err(CfError::Budget { limit: budget.0 });
        }
        f(&p)?;
    }
    Ok(n)
}

pub fn count_family(spec: &FamilySpec, budget: Budget) -> Result<u64> {
    for_each_path(spec, budget, |_| Ok(()))
}

/// Integer statistic evaluated on each path of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    OnOrBelow(Selector),
    OnOrAbove(Selector),
    Below(Selector),
    Above(Selector),
    Selected(Selector),
    LeftmostHighest,
    PositiveVertices,
    DescendingRuns,
}

impl Statistic {
    pub fn eval(&self, p: &Path) -> Result<i64> {
        let v = match *self {
            Statistic::OnOrBelow(s) => stats::count_on_or_below(p, s)?,
            Statistic::OnOrAbove(s) => stats::count_on_or_above(p, s)?,
            Statistic::Below(s) => stats::count_below(p, s)?,
            Statistic::Above(s) => stats::count_above(p, s)?,
            Statistic::Selected(s) => stats::count_selected(p, s)?,
            Statistic::LeftmostHighest => stats::leftmost_highest_index(p),
            Statistic::PositiveVertices => stats::positive_vertex_count(p),
            Statistic::DescendingRuns => stats::descending_runs(p),
        };
        Ok(v as i64)
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::OnOrBelow(s) => write!(f, "on-or-below:{s}"),
            Statistic::OnOrAbove(s) => write!(f, "on-or-above:{s}"),
            Statistic::Below(s) => write!(f, "below:{s}"),
            Statistic::Above(s) => write!(f, "above:{s}"),
            Statistic::Selected(s) => write!(f, "count:{s}"),
            Statistic::LeftmostHighest => f.write_str("leftmost-highest"),
            Statistic::PositiveVertices => f.write_str("positive-vertices"),
            Statistic::DescendingRuns => f.write_str("descending-runs"),
        }
    }
}

impl FromStr for Statistic {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Statistic> {
        match s {
            "leftmost-highest" => return Ok(Statistic::LeftmostHighest),
            "positive-vertices" => return Ok(Statistic::PositiveVertices),
            "descending-runs" => return Ok(Statistic::DescendingRuns),
            _ => {}
        }
        let (kind, sel) = s
            .split_once(':')
            .ok_or_else(|| CfError::Unknown { kind: "statistic", name: s.to_string() })?;
        let sel: Selector = sel.parse()?;
        Ok(match kind {
            "on-or-below" => Statistic::OnOrBelow(sel),
            "on-or-above" => Statistic::OnOrAbove(sel),
            "below" => Statistic::Below(sel),
            "above" => Statistic::Above(sel),
            "count" => Statistic::Selected(sel),
            _ => return Err(CfError::Unknown { kind: "statistic", name: s.to_string() }),
        })
    }
}

/// Exact histogram of a statistic over a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub spec: FamilySpec,
    pub statistic: Statistic,
    pub counts: BTreeMap<i64, u64>,
    pub total: u64,
    /// Admissible statistic values; a value in range with no paths counts as 0.
    pub domain: Option<(i64, i64)>,
}

impl DistributionTable {
    pub fn count(&self, v: i64) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    /// The shared count when the table is uniform over its domain.
    pub fn common_count(&self) -> Option<u64> {
        match self.domain {
            Some((lo, hi)) => {
                if lo > hi || self.counts.keys().any(|&v| v < lo || v > hi) {
                    return None;
                }
                let c = self.count(lo);
                (lo..=hi).all(|v| self.count(v) == c).then_some(c)
            }
            None => {
                let mut it = self.counts.values();
                let c = *it.next()?;
                it.all(|&x| x == c).then_some(c)
            }
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.common_count().is_some()
    }

    pub fn merge(&mut self, other: &DistributionTable) {
        for (&v, &c) in &other.counts {
            *self.counts.entry(v).or_insert(0) += c;
        }
        self.total += other.total;
    }
}

pub fn distribution_table(
    spec: &FamilySpec,
    statistic: Statistic,
    domain: Option<RangeInclusive<i64>>,
    budget: Budget,
) -> Result<DistributionTable> {
    let mut counts = BTreeMap::new();
    let total = for_each_path(spec, budget, |p| {
        *counts.entry(statistic.eval(p)?).or_insert(0u64) += 1;
        Ok(())
    })?;
    Ok(DistributionTable {
        spec: spec.clone(),
        statistic,
        counts,
        total,
        domain: domain.map(|r| (*r.start(), *r.end())),
    })
}

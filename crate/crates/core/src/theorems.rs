//! Registry of equidistribution theorems, each checked by exhaustive counting.

use num_bigint::BigInt;

use crate::error::{CfError, Result};
use crate::family::{distribution_table, Budget, Constraint, DistributionTable, FamilySpec, Statistic};
use crate::forms::{eval, Args, FormId};
use crate::stats::Selector;

pub const THEOREMS: &[&str] = &[
    "t5.1", "t5.2", "t5.3",
    "t6.1", "t6.2", "t6.3", "t6.4", "t6.5", "t6.6",
    "narayana-cf", "circular",
    "t8.1", "t8.2", "t8.3", "t8.4", "t8.5", "t8.6", "t8.7",
    "th91.1", "th91.2",
    "th11.1", "th11.2", "th11.3", "cf-corollary-r",
    "th12.1", "th12.2", "th12.3",
    "nr-nara-forms.1", "nr-nara-forms.2", "nr-nara-forms.3",
    "nr-nara-forms.4", "nr-nara-forms.5", "nr-nara-forms.6",
    "nrnara.1", "nrnara.2",
    "sparre-andersen", "leftmost-highest",
];

/// Size limits. For the Motzkin-type families `max_n` bounds `k + l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_n: i64,
    pub max_r: i64,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { max_n: 6, max_r: 3 }
    }
}

/// One parameter tuple of a theorem.
#[derive(Clone, Debug)]
pub struct Case {
    pub label: String,
    pub spec: FamilySpec,
    pub statistic: Statistic,
    pub domain: (i64, i64),
    pub expected: BigInt,
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub case: Case,
    pub table: DistributionTable,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub id: String,
    pub results: Vec<CaseResult>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        !self.results.is_empty() && self.results.iter().all(|r| r.passed)
    }
}

struct Builder {
    out: Vec<Case>,
}

impl Builder {
    /// Adds the case unless the closed form is undefined or zero, or the range is empty.
    fn push(&mut self, label: String, spec: FamilySpec, statistic: Statistic, lo: i64, hi: i64, form: &str, args: Args) -> Result<()> {
        if hi < lo {
            return Ok(());
        }
        let form: FormId = form.parse()?;
        let expected = match eval(form, &args) {
            Ok(v) => v,
            Err(CfError::Domain { .. }) => return Ok(()),
            Err(e) => return Err(e),
        };
        if expected == BigInt::from(0) {
            return Ok(());
        }
        self.out.push(Case { label, spec, statistic, domain: (lo, hi), expected });
        Ok(())
    }
}

/// Every parameter tuple the theorem covers within `b`.
pub fn cases(id: &str, b: Bounds) -> Result<Vec<Case>> {
    use Constraint::*;
    use Selector::*;
    use Statistic::*;
    let mut bl = Builder { out: Vec::new() };
    let (base, part) = id.rsplit_once('.').unwrap_or((id, ""));
    let n_max = b.max_n;
    match (base, part) {
        ("t5", p @ ("1" | "2" | "3")) => {
            for n in 1..=n_max {
                let spec = FamilySpec::p(n as u32, 1, 1);
                let label = format!("n={n}");
                match p {
                    "1" => bl.push(label, spec.first("U"), OnOrBelow(UpStart), 1, n + 1, "catalan#1", Args::n(n))?,
                    "2" => bl.push(label, spec.first("D"), OnOrBelow(DownStart), 1, n, "catalan#3", Args::n(n))?,
                    _ => bl.push(label, spec, OnOrBelow(AllStarts), 1, 2 * n + 1, "catalan#2", Args::n(n))?,
                }
            }
        }
        ("t6", p @ ("1" | "2" | "3" | "4" | "5" | "6")) => {
            for n in 1..=n_max {
                for k in 1..=n {
                    let spec = FamilySpec::p(n as u32, 1, 1);
                    let label = format!("n={n} k={k}");
                    let a = Args::nk(n, k);
                    let ku = k as usize;
                    match p {
                        "1" => bl.push(label, spec.first("D").last("U").with(PeakCount(ku - 1)), OnOrBelow(Peak), 0, k - 1, "narayana#2", a)?,
                        "2" => bl.push(label, spec.first("U").last("D").with(ValleyCount(ku - 1)), OnOrBelow(Valley), 0, k - 1, "narayana#2", a)?,
                        "3" => bl.push(label, spec.first("U").last("U").with(PeakCount(ku)), OnOrBelow(DoubleRise), 0, n - k, "narayana#3", a)?,
                        "4" => bl.push(label, spec.first("D").last("D").with(ValleyCount(ku)), OnOrBelow(DoubleFall), 0, n - k - 1, "narayana#6", a)?,
                        "5" => bl.push(label, spec.first("U").with(PeakCount(ku)), OnOrBelow(UpStart), 1, n + 1, "narayana#4", a)?,
                        _ => bl.push(label, spec.first("D").with(ValleyCount(ku)), OnOrBelow(DownStart), 1, n, "narayana#1", a)?,
                    }
                }
            }
        }
        ("narayana-cf", "") => {
            for n in 1..=n_max {
                for k in 1..=n {
                    let spec = FamilySpec::p(n as u32, 1, 0).with(Constraint::DescendingRuns(k as usize));
                    bl.push(format!("n={n} k={k}"), spec, Below(UpStart), 0, n, "narayana#4", Args::nk(n, k))?;
                }
            }
        }
        ("circular", "") => {
            for n in 1..=n_max {
                for k in 1..=n {
                    let spec = FamilySpec::p(n as u32, 1, 1).with(CircularPeakCount(k as usize));
                    bl.push(format!("n={n} k={k}"), spec, OnOrBelow(AllStarts), 1, 2 * n + 1, "narayana-circular", Args::nk(n, k))?;
                }
            }
        }
        ("t8", p @ ("1" | "2" | "3" | "4" | "5" | "6" | "7")) => {
            for s in 1..=2u32 {
                for k in 0..=n_max {
                    for l in 0..=n_max - k {
                        let spec = FamilySpec::q(k as u32, l as u32, 1, s, 1);
                        let label = format!("k={k} l={l} s={s}");
                        let a = Args::kl(k, l);
                        match p {
                            "1" => bl.push(label, spec.first("U"), OnOrBelow(UpStart), 1, k + 1, "t#1", a)?,
                            "2" => bl.push(label, spec.first("D"), OnOrBelow(DownStart), 1, k, "t#2", a)?,
                            "3" => bl.push(label, spec.first("F"), OnOrBelow(FlatStart), 1, l, "t#6", a)?,
                            "4" => bl.push(label, spec.first("UF"), OnOrBelow(UpOrFlatStart), 1, k + l + 1, "t#3", a)?,
                            "5" => bl.push(label, spec.first("DF"), OnOrBelow(DownOrFlatStart), 1, k + l, "t#4", a)?,
                            "6" => bl.push(label, spec.first("UD"), OnOrBelow(UpOrDownStart), 1, 2 * k + 1, "t#5", a)?,
                            _ => bl.push(label, spec, OnOrBelow(AllStarts), 1, 2 * k + l + 1, "t#7", a)?,
                        }
                    }
                }
            }
        }
        ("th91", p @ ("1" | "2")) => {
            for n in 2..=n_max {
                let spec = FamilySpec::p(n as u32 - 1, 1, 2);
                for k in 1..=n {
                    let label = format!("n={n} k={k}");
                    let a = Args::nk(n, k);
                    let ku = k as usize;
                    if p == "1" {
                        if k >= 2 {
                            let sel = DownStartMod { m: 2, res: 0 };
                            bl.push(label, spec.clone().first("D").with(EvenDownCount(ku - 1)), OnOrBelow(sel), 1, k - 1, "narayana#5", a)?;
                        }
                    } else {
                        let sel = UpStartMod { m: 2, res: 0 };
                        bl.push(label, spec.clone().first("U").with(EvenUpCount(ku)), OnOrBelow(sel), 1, k, "narayana#2", a)?;
                    }
                }
            }
        }
        ("th11", p @ ("1" | "2" | "3")) => {
            for r in 1..=b.max_r {
                for n in 1..=n_max {
                    let spec = FamilySpec::p(n as u32, r as u32, 1);
                    let label = format!("n={n} r={r}");
                    let a = Args::nr(n, r);
                    match p {
                        "1" => bl.push(label, spec.first("U"), OnOrBelow(UpStart), 1, r * n + 1, "fuss-catalan#3", a)?,
                        "2" => bl.push(label, spec.first("D"), OnOrBelow(DownStart), 1, n, "fuss-catalan#2", a)?,
                        _ => bl.push(label, spec, OnOrBelow(AllStarts), 1, (r + 1) * n + 1, "fuss-catalan#1", a)?,
                    }
                }
            }
        }
        ("cf-corollary-r", "") => {
            for r in 1..=b.max_r {
                for n in 1..=n_max {
                    let spec = FamilySpec::p(n as u32, r as u32, 0);
                    bl.push(format!("n={n} r={r}"), spec, Below(UpStart), 0, r * n, "fuss-catalan#3", Args::nr(n, r))?;
                }
            }
        }
        ("th12", p @ ("1" | "2" | "3")) => {
            for r in 1..=b.max_r {
                for n in 1..=n_max {
                    let spec = FamilySpec::p(n as u32, r as u32, -1);
                    let label = format!("n={n} r={r}");
                    let a = Args::nr(n, r);
                    match p {
                        "1" => bl.push(label, spec.first("U"), OnOrAbove(UpStart), 1, r * n - 1, "fuss-catalan-2nd#3", a)?,
                        "2" => bl.push(label, spec.first("D"), OnOrAbove(DownStart), 1, n, "fuss-catalan-2nd#2", a)?,
                        _ => bl.push(label, spec, OnOrAbove(AllStarts), 1, (r + 1) * n - 1, "fuss-catalan-2nd#1", a)?,
                    }
                }
            }
        }
        ("nr-nara-forms", p @ ("1" | "2" | "3" | "4" | "5" | "6")) => {
            for r in 1..=b.max_r {
                for n in 1..=n_max {
                    for k in 1..=n {
                        let spec = FamilySpec::p(n as u32, r as u32, 1);
                        let label = format!("n={n} k={k} r={r}");
                        let a = Args::nkr(n, k, r);
                        let ku = k as usize;
                        match p {
                            "1" => bl.push(label, spec.first("D").last("U").with(PeakCount(ku - 1)), OnOrBelow(Peak), 0, k - 1, "gen-narayana-r#3", a)?,
                            "2" => bl.push(label, spec.first("U").last("D").with(ValleyCount(ku - 1)), OnOrBelow(Valley), 0, k - 1, "gen-narayana-r#3", a)?,
                            "3" => bl.push(label, spec.first("U").last("U").with(PeakCount(ku)), OnOrBelow(DoubleRise), 0, r * n - k, "gen-narayana-r#2", a)?,
                            "4" => bl.push(label, spec.first("D").last("D").with(ValleyCount(ku)), OnOrBelow(DoubleFall), 0, n - k - 1, "gen-narayana-r#5", a)?,
                            "5" => bl.push(label, spec.first("U").with(PeakCount(ku)), OnOrBelow(UpStart), 1, r * n + 1, "gen-narayana-r#4", a)?,
                            _ => bl.push(label, spec.first("D").with(ValleyCount(ku)), OnOrBelow(DownStart), 1, n, "gen-narayana-r#1", a)?,
                        }
                    }
                }
            }
        }
        ("nrnara", p @ ("1" | "2")) => {
            for r in 1..=b.max_r {
                let m = (r + 1) as u32;
                for n in 1..=n_max {
                    let spec = FamilySpec::p(n as u32 - 1, r as u32, r + 1);
                    if p == "2" {
                        for parts in compositions(n * r + 1, r as usize + 1, 0, n) {
                            if parts[0] < 1 {
                                continue;
                            }
                            let label = format!("n={n} r={r} parts={parts:?}");
                            let counts = parts.iter().map(|&x| x as usize).collect();
                            let s = spec.clone().first("U").with(ModClassUpCounts(counts));
                            bl.push(label, s, OnOrBelow(UpStartMod { m, res: 0 }), 1, parts[0], "multi-narayana#2", Args::multi(n, &parts))?;
                        }
                    } else {
                        for parts in compositions(n + r, r as usize + 1, 1, n + 1) {
                            if parts[0] < 2 {
                                continue;
                            }
                            let label = format!("n={n} r={r} parts={parts:?}");
                            let counts = parts.iter().map(|&x| x as usize - 1).collect();
                            let s = spec.clone().first("D").with(ModClassDownCounts(counts));
                            let dual: Vec<i64> = parts.iter().map(|&x| n - x + 1).collect();
                            bl.push(label, s, OnOrBelow(DownStartMod { m, res: 0 }), 1, parts[0] - 1, "multi-narayana#1", Args::multi(n, &dual))?;
                        }
                    }
                }
            }
        }
        ("sparre-andersen", "") => {
            for n in 1..=n_max {
                let spec = FamilySpec::p(n as u32, 1, 1);
                bl.push(format!("n={n} positive"), spec.clone(), PositiveVertices, 1, 2 * n + 1, "catalan", Args::n(n))?;
                bl.push(format!("n={n} leftmost"), spec, LeftmostHighest, 1, 2 * n + 1, "catalan", Args::n(n))?;
            }
        }
        ("leftmost-highest", "") => {
            for n in 1..=n_max {
                bl.push(format!("n={n}"), FamilySpec::p(n as u32, 1, 1), LeftmostHighest, 1, 2 * n + 1, "catalan", Args::n(n))?;
            }
        }
        _ => return Err(CfError::Unknown { kind: "theorem", name: id.to_string() }),
    }
    Ok(bl.out)
}

/// Vectors of `len` integers in `lo..=hi` summing to `total`.
fn compositions(total: i64, len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn go(rest: i64, len: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if len == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in lo..=hi.min(rest) {
            cur.push(v);
            go(rest - v, len - 1, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, len, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// Uniformity and closed-form agreement for every tuple of the theorem.
pub fn verify_theorem(id: &str, bounds: Bounds, budget: Budget) -> Result<TheoremReport> {
    let mut results = Vec::new();
    for case in cases(id, bounds)? {
        let table = distribution_table(&case.spec, case.statistic, Some(case.domain.0..=case.domain.1), budget)?;
        let passed = table.common_count().map(BigInt::from) == Some(case.expected.clone());
        results.push(CaseResult { case, table, passed });
    }
    if id == "sparre-andersen" {
        for pair in results.chunks_mut(2) {
            if let [a, b] = pair {
                let same = a.table.counts == b.table.counts;
                a.passed &= same;
                b.passed &= same;
            }
        }
    }
    Ok(TheoremReport { id: id.to_string(), results })
}

//! Exact closed forms for the counting numbers, their sequences and relations.
//!
//! Every form is a quotient `numerator / denominator` of binomial products.
//! A non-positive denominator is a domain error and a non-zero remainder is an
//! [`CfError::InexactDivision`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{CfError, Result};

/// `C(n, k)`, zero when `k < 0`, `k > n` or `n < 0`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Catalan,
    Narayana,
    NarayanaCircular,
    T,
    Z,
    Motzkin,
    MotzkinNk,
    Riordan,
    RiordanNk,
    Schroder,
    SchroderNk,
    SmallSchroder,
    SmallSchroderNk,
    Ballot,
    FussCatalan,
    FussCatalan2nd,
    GenNarayanaR,
    MultiNarayana,
}

pub const FAMILIES: [Family; 18] = [
    Family::Catalan,
    Family::Narayana,
    Family::NarayanaCircular,
    Family::T,
    Family::Z,
    Family::Motzkin,
    Family::MotzkinNk,
    Family::Riordan,
    Family::RiordanNk,
    Family::Schroder,
    Family::SchroderNk,
    Family::SmallSchroder,
    Family::SmallSchroderNk,
    Family::Ballot,
    Family::FussCatalan,
    Family::FussCatalan2nd,
    Family::GenNarayanaR,
    Family::MultiNarayana,
];

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Catalan => "catalan",
            Family::Narayana => "narayana",
            Family::NarayanaCircular => "narayana-circular",
            Family::T => "t",
            Family::Z => "z",
            Family::Motzkin => "motzkin",
            Family::MotzkinNk => "motzkin-nk",
            Family::Riordan => "riordan",
            Family::RiordanNk => "riordan-nk",
            Family::Schroder => "schroder",
            Family::SchroderNk => "schroder-nk",
            Family::SmallSchroder => "small-schroder",
            Family::SmallSchroderNk => "small-schroder-nk",
            Family::Ballot => "ballot",
            Family::FussCatalan => "fuss-catalan",
            Family::FussCatalan2nd => "fuss-catalan-2nd",
            Family::GenNarayanaR => "gen-narayana-r",
            Family::MultiNarayana => "multi-narayana",
        }
    }

    /// Number of equivalent algebraic forms.
    pub fn variants(self) -> usize {
        match self {
            Family::Catalan => 3,
            Family::Narayana => 6,
            Family::T => 7,
            Family::Z => 5,
            Family::FussCatalan | Family::FussCatalan2nd => 3,
            Family::GenNarayanaR => 5,
            Family::MultiNarayana => 2,
            _ => 1,
        }
    }

    /// Argument names the family reads; `multi-narayana` also reads `n0..nr`.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::Catalan
            | Family::Motzkin
            | Family::Riordan
            | Family::Schroder
            | Family::SmallSchroder => &["n"],
            Family::Narayana
            | Family::NarayanaCircular
            | Family::MotzkinNk
            | Family::RiordanNk
            | Family::SchroderNk
            | Family::SmallSchroderNk => &["n", "k"],
            Family::T | Family::Z => &["k", "l"],
            Family::Ballot => &["n", "r", "h"],
            Family::FussCatalan | Family::FussCatalan2nd => &["n", "r"],
            Family::GenNarayanaR => &["n", "k", "r"],
            Family::MultiNarayana => &["n", "r"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Family> {
        FAMILIES
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| CfError::Unknown { kind: "family", name: s.to_string() })
    }
}

/// A family together with a 1-based variant index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormId {
    pub family: Family,
    pub variant: usize,
}

impl FormId {
    pub fn new(family: Family, variant: usize) -> Result<FormId> {
        if variant == 0 || variant > family.variants() {
            return Err(CfError::OutOfRange { what: "variant", value: variant as i64, max: family.variants() as i64 });
        }
        Ok(FormId { family, variant })
    }

    pub fn canonical(family: Family) -> FormId {
        let variant = if family == Family::Z { 2 } else { 1 };
        FormId { family, variant }
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.family, self.variant)
    }
}

/// `family` or `family#variant`.
impl FromStr for FormId {
    type Err = CfError;

    fn from_str(s: &str) -> Result<FormId> {
        match s.split_once('#') {
            None => Ok(FormId::canonical(s.parse()?)),
            Some((f, v)) => {
                let v = v.parse().map_err(|_| CfError::Parse(format!("bad variant in {s:?}")))?;
                FormId::new(f.parse()?, v)
            }
        }
    }
}

/// Named integer arguments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Args(pub BTreeMap<String, i64>);

impl Args {
    pub fn new() -> Args {
        Args::default()
    }

    pub fn set(mut self, key: &str, v: i64) -> Args {
        self.0.insert(key.to_string(), v);
        self
    }

    pub fn get(&self, key: &str) -> Result<i64> {
        self.0.get(key).copied().ok_or_else(|| CfError::InvalidArgument(format!("missing argument {key}")))
    }

    pub fn n(n: i64) -> Args {
        Args::new().set("n", n)
    }

    pub fn nk(n: i64, k: i64) -> Args {
        Args::new().set("n", n).set("k", k)
    }

    pub fn kl(k: i64, l: i64) -> Args {
        Args::new().set("k", k).set("l", l)
    }

    pub fn nr(n: i64, r: i64) -> Args {
        Args::new().set("n", n).set("r", r)
    }

    pub fn nkr(n: i64, k: i64, r: i64) -> Args {
        Args::new().set("n", n).set("k", k).set("r", r)
    }

    /// `n`, `r` and the class counts `n0..nr`.
    pub fn multi(n: i64, parts: &[i64]) -> Args {
        let mut a = Args::new().set("n", n).set("r", parts.len() as i64 - 1);
        for (i, &p) in parts.iter().enumerate() {
            a = a.set(&format!("n{i}"), p);
        }
        a
    }
}

/// `key=value,key=value`.
impl FromStr for Args {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Args> {
        let mut a = Args::new();
        for kv in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| CfError::Parse(format!("bad argument {kv:?}")))?;
            let v = v.trim().parse().map_err(|_| CfError::Parse(format!("bad argument {kv:?}")))?;
            a = a.set(k.trim(), v);
        }
        Ok(a)
    }
}

fn quotient(form: FormId, num: BigInt, den: i64) -> Result<BigInt> {
    if den <= 0 {
        return Err(CfError::Domain { form: form.to_string(), denominator: den.to_string() });
    }
    let (q, r) = num.div_rem(&BigInt::from(den));
    if !r.is_zero() {
        return Err(CfError::InexactDivision { form: form.to_string(), numerator: num.to_string(), denominator: den.to_string() });
    }
    Ok(q)
}

fn edge(form: FormId, a: &Args) -> Result<Option<BigInt>> {
    let v = match form.family {
        Family::Catalan | Family::FussCatalan if a.get("n")? == 0 => Some(1),
        Family::Narayana | Family::GenNarayanaR => {
            let (n, k) = (a.get("n")?, a.get("k")?);
            match (n, k) {
                (0, 0) => Some(1),
                (0, _) | (_, 0) => Some(0),
                _ => None,
            }
        }
        Family::T if a.get("k")? == 0 && a.get("l")? == 0 => Some(1),
        Family::Z if a.get("k")? == 0 => Some(i64::from(a.get("l")? == 0)),
        Family::Ballot if a.get("n")? == 0 => Some(1),
        _ => None,
    };
    Ok(v.map(BigInt::from))
}

/// Exact value of a form.
pub fn eval(form: FormId, a: &Args) -> Result<BigInt> {
    if let Some(v) = edge(form, a)? {
        return Ok(v);
    }
    let q = |num: BigInt, den: i64| quotient(form, num, den);
    let b = binom;
    match form.family {
        Family::Catalan => {
            let n = a.get("n")?;
            match form.variant {
                1 => q(b(2 * n, n), n + 1),
                2 => q(b(2 * n + 1, n), 2 * n + 1),
                _ => q(b(2 * n, n - 1), n),
            }
        }
        Family::Narayana => {
            let (n, k) = (a.get("n")?, a.get("k")?);
            match form.variant {
                1 => q(b(n, k) * b(n, k - 1), n),
                2 => q(b(n, k - 1) * b(n - 1, k - 1), k),
                3 => q(b(n, k) * b(n - 1, k - 1), n - k + 1),
                4 => q(b(n + 1, k) * b(n - 1, k - 1), n + 1),
                5 => q(b(n, k) * b(n - 1, k - 2), k - 1),
                _ => q(b(n, k - 1) * b(n - 1, k), n - k),
            }
        }
        Family::NarayanaCircular => {
            let (n, k) = (a.get("n")?, a.get("k")?);
            q(b(n, k - 1) * b(n, k) + b(n + 1, k) * b(n - 1, k - 1), 2 * n + 1)
        }
        Family::T => {
            let (k, l) = (a.get("k")?, a.get("l")?);
            match form.variant {
                1 => q(b(2 * k + l, 2 * k) * b(2 * k, k), k + 1),
                2 => q(b(2 * k + l, 2 * k) * b(2 * k, k - 1), k),
                3 => q(b(2 * k + l, k) * b(k + l + 1, k + 1), k + l + 1),
                4 => q(b(2 * k + l, k + 1) * b(k + l, k), k + l),
                5 => q(b(2 * k + l, 2 * k) * b(2 * k + 1, k), 2 * k + 1),
                6 => q(b(2 * k + l, k) * b(k + l, k + 1), l),
                _ => q(b(2 * k + l + 1, 2 * k + 1) * b(2 * k + 1, k), 2 * k + l + 1),
            }
        }
        Family::Z => {
            let (k, l) = (a.get("k")?, a.get("l")?);
            match form.variant {
                1 => q(b(k + l, k) * b(2 * k + l, k - 1), k + l),
                2 => q(b(k + l - 1, k - 1) * b(2 * k + l, k - 1), k),
                3 => q(b(2 * k + l, k) * b(k + l - 1, k - 1), k + l + 1),
                4 => q(b(2 * k + l, k - 1) * b(k + l - 1, k), l),
                _ => q(b(2 * k + l + 1, k) * b(k + l - 1, k - 1), 2 * k + l + 1),
            }
        }
        Family::MotzkinNk => {
            let (n, k) = (a.get("n")?, a.get("k")?);
            q(b(n, 2 * k) * b(2 * k, k), k + 1)
        }
        Family::SchroderNk => {
            let (n, k) = (a.get("n")?, a.get("k")?);
            q(b(n + k, 2 * k) * b(2 * k, k), k + 1)
        }
        Family::RiordanNk => {
            let (n, k) = (a.get("n")?, a.get("k")?);
            if k == 0 {
                return Ok(BigInt::from(i64::from(n == 0)));
            }
            q(b(n - k - 1, k - 1) * b(n, k - 1), k)
        }
        Family::SmallSchroderNk => {
            let (n, k) = (a.get("n")?, a.get("k")?);
            if k == 0 {
                return Ok(BigInt::from(i64::from(n == 0)));
            }
            q(b(n - 1, k - 1) * b(n + k, k - 1), k)
        }
        Family::Motzkin => aggregate(Family::MotzkinNk, a.get("n")?),
        Family::Riordan => aggregate(Family::RiordanNk, a.get("n")?),
        Family::Schroder => aggregate(Family::SchroderNk, a.get("n")?),
        Family::SmallSchroder => aggregate(Family::SmallSchroderNk, a.get("n")?),
        Family::Ballot => {
            let (n, r, h) = (a.get("n")?, a.get("r")?, a.get("h")?);
            let m = (r + 1) * n + h;
            q(BigInt::from(h) * b(m, n), m)
        }
        Family::FussCatalan => {
            let (n, r) = (a.get("n")?, a.get("r")?);
            match form.variant {
                1 => q(b((r + 1) * n + 1, n), (r + 1) * n + 1),
                2 => q(b((r + 1) * n, n - 1), n),
                _ => q(b((r + 1) * n, n), r * n + 1),
            }
        }
        Family::FussCatalan2nd => {
            let (n, r) = (a.get("n")?, a.get("r")?);
            match form.variant {
                1 => q(b((r + 1) * n - 1, n), (r + 1) * n - 1),
                2 => q(b((r + 1) * n - 2, n - 1), n),
                _ => q(b((r + 1) * n - 2, n), r * n - 1),
            }
        }
        Family::GenNarayanaR => {
            let (n, k, r) = (a.get("n")?, a.get("k")?, a.get("r")?);
            let rn = r * n;
            match form.variant {
                1 => q(b(rn, k - 1) * b(n, k), n),
                2 => q(b(rn, k) * b(n - 1, k - 1), rn - k + 1),
                3 => q(b(rn, k - 1) * b(n - 1, k - 1), k),
                4 => q(b(rn + 1, k) * b(n - 1, k - 1), rn + 1),
                _ => q(b(rn, k - 1) * b(n - 1, k), n - k),
            }
        }
        Family::MultiNarayana => {
            let (n, r) = (a.get("n")?, a.get("r")?);
            if r < 1 {
                return Err(CfError::InvalidArgument("multi-narayana needs r >= 1".into()));
            }
            let parts = (0..=r).map(|i| a.get(&format!("n{i}"))).collect::<Result<Vec<_>>>()?;
            let sum: i64 = parts.iter().sum();
            if sum != n * r + 1 {
                return Err(CfError::InvalidArgument(format!("n0 + ... + nr = {sum}, expected nr + 1 = {}", n * r + 1)));
            }
            let rest: BigInt = parts[1..].iter().map(|&p| b(n, p)).product();
            match form.variant {
                1 => q(b(n, parts[0]) * rest, n),
                _ => q(b(n - 1, parts[0] - 1) * rest, parts[0]),
            }
        }
    }
}

fn aggregate(kernel: Family, n: i64) -> Result<BigInt> {
    let form = FormId::canonical(kernel);
    match kernel {
        Family::RiordanNk | Family::SmallSchroderNk if n == 0 => return Ok(BigInt::one()),
        _ => {}
    }
    let start = match kernel {
        Family::RiordanNk | Family::SmallSchroderNk => 1,
        _ => 0,
    };
    let top = match kernel {
        Family::MotzkinNk | Family::RiordanNk => n / 2,
        _ => n,
    };
    let mut acc = BigInt::zero();
    for k in start..=top {
        acc += eval(form, &Args::nk(n, k))?;
    }
    Ok(acc)
}

/// Families accepted by [`sequence`].
pub const SEQUENCES: [&str; 6] = ["catalan", "motzkin", "riordan", "schroder", "small-schroder", "fuss-catalan"];

/// First `count` terms. Riordan numbers start at `J_1`, the others at index 0.
pub fn sequence(family: Family, count: usize, r: i64) -> Result<Vec<BigInt>> {
    let start = if family == Family::Riordan { 1 } else { 0 };
    (start..start + count as i64)
        .map(|n| match family {
            Family::Catalan => eval(FormId::canonical(family), &Args::n(n)),
            Family::FussCatalan => eval(FormId::canonical(family), &Args::nr(n, r)),
            Family::Motzkin | Family::Riordan | Family::Schroder | Family::SmallSchroder => {
                eval(FormId::canonical(family), &Args::n(n))
            }
            _ => Err(CfError::Unknown { kind: "sequence", name: family.name().to_string() }),
        })
        .collect()
}

/// Which coordinates a T or Z table uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableLayout {
    /// Rows and columns as printed in the published tables.
    Published,
    /// Row `k`, column `l` holds the formula value at `(k, l)`.
    Formula,
}

/// Published T table entry: the formula with its arguments exchanged.
pub fn t_table(k: i64, l: i64) -> Result<BigInt> {
    eval(FormId::canonical(Family::T), &Args::kl(l, k))
}

/// Published Z table entry (rows and columns start at 1).
pub fn z_table(k: i64, l: i64) -> Result<BigInt> {
    eval(FormId::canonical(Family::Z), &Args::kl(l, k - 1))
}

/// Rows `kmin..=kmax` by columns `lmin..=lmax`.
pub fn table(family: Family, layout: TableLayout, k: (i64, i64), l: (i64, i64)) -> Result<Vec<Vec<BigInt>>> {
    let cell = |a: i64, b: i64| -> Result<BigInt> {
        match (family, layout) {
            (Family::T, TableLayout::Published) => t_table(a, b),
            (Family::Z, TableLayout::Published) => z_table(a, b),
            (Family::T | Family::Z, TableLayout::Formula) => eval(FormId::canonical(family), &Args::kl(a, b)),
            _ => Err(CfError::Unknown { kind: "table", name: family.name().to_string() }),
        }
    };
    (k.0..=k.1).map(|a| (l.0..=l.1).map(|b| cell(a, b)).collect()).collect()
}

pub const RELATIONS: [&str; 8] = ["M-R", "J-S", "R-2S", "M-JJ", "T-Z", "nara-sum", "Nr-sum", "circ-sum"];

/// Outcome of a relation or variant check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Check an identity for all parameters up to `bound`.
pub fn relation_check(id: &str, bound: i64) -> Result<CheckReport> {
    let ev = |f: Family, a: Args| eval(FormId::canonical(f), &a);
    let mut rep = CheckReport { checked: 0, failures: Vec::new() };
    match id {
        "M-R" => {
            for n in 0..=bound {
                for k in 0..=n {
                    let (l, r) = (ev(Family::MotzkinNk, Args::nk(n + k, k))?, ev(Family::SchroderNk, Args::nk(n, k))?);
                    rep.record(l == r, || format!("n={n} k={k}: M={l} R={r}"));
                }
            }
        }
        "J-S" => {
            for n in 1..=bound {
                for k in 1..=n {
                    let (l, r) = (ev(Family::RiordanNk, Args::nk(n + k, k))?, ev(Family::SmallSchroderNk, Args::nk(n, k))?);
                    rep.record(l == r, || format!("n={n} k={k}: J={l} S={r}"));
                }
            }
        }
        "R-2S" => {
            for n in 1..=bound {
                let (l, r) = (ev(Family::Schroder, Args::n(n))?, ev(Family::SmallSchroder, Args::n(n))?);
                rep.record(l == &r * 2, || format!("n={n}: R={l} S={r}"));
            }
        }
        "M-JJ" => {
            for n in 0..=bound {
                let m = ev(Family::Motzkin, Args::n(n))?;
                let j = ev(Family::Riordan, Args::n(n))? + ev(Family::Riordan, Args::n(n + 1))?;
                rep.record(m == j, || format!("n={n}: M={m} J+J={j}"));
            }
        }
        "T-Z" => {
            for k in 1..=bound {
                for l in 1..=bound {
                    let t = t_table(k, l)?;
                    let z = z_table(k + 1, l)? + z_table(k, l + 1)?;
                    rep.record(t == z, || format!("k={k} l={l}: T={t} Z+Z={z}"));
                }
            }
        }
        "nara-sum" => {
            for n in 1..=bound {
                let s: BigInt = (1..=n).map(|k| ev(Family::Narayana, Args::nk(n, k))).sum::<Result<BigInt>>()?;
                let c = ev(Family::Catalan, Args::n(n))?;
                rep.record(s == c, || format!("n={n}: sum={s} C={c}"));
            }
        }
        "Nr-sum" => {
            for r in 1..=bound.min(4) {
                for n in 1..=bound {
                    let s: BigInt = (1..=n).map(|k| ev(Family::GenNarayanaR, Args::nkr(n, k, r))).sum::<Result<BigInt>>()?;
                    let c = ev(Family::FussCatalan, Args::nr(n, r))?;
                    rep.record(s == c, || format!("r={r} n={n}: sum={s} fuss={c}"));
                }
            }
        }
        "circ-sum" => {
            for n in 1..=bound {
                for k in 1..=n {
                    let lhs = binom(n, k - 1) * binom(n, k) + binom(n + 1, k) * binom(n - 1, k - 1);
                    let rhs = ev(Family::Narayana, Args::nk(n, k))? * (2 * n + 1);
                    let circ = ev(Family::NarayanaCircular, Args::nk(n, k))? * (2 * n + 1);
                    rep.record(lhs == rhs && circ == rhs, || format!("n={n} k={k}: {lhs} vs {rhs}"));
                }
            }
        }
        _ => return Err(CfError::Unknown { kind: "relation", name: id.to_string() }),
    }
    Ok(rep)
}

/// Argument grids used by [`variant_agreement`].
fn grid(family: Family, bound: i64) -> Vec<Args> {
    let mut out = Vec::new();
    let r_max = bound.clamp(1, 5);
    match family.params() {
        ["n"] => out.extend((0..=bound).map(Args::n)),
        ["n", "k"] => {
            for n in 0..=bound {
                for k in 0..=n + 1 {
                    out.push(Args::nk(n, k));
                }
            }
        }
        ["k", "l"] => {
            for k in 0..=bound {
                for l in 0..=bound {
                    out.push(Args::kl(k, l));
                }
            }
        }
        ["n", "r"] => {
            for r in 1..=r_max {
                for n in 0..=bound {
                    out.push(Args::nr(n, r));
                }
            }
        }
        ["n", "k", "r"] => {
            for r in 1..=r_max {
                for n in 0..=bound {
                    for k in 0..=n + 1 {
                        out.push(Args::nkr(n, k, r));
                    }
                }
            }
        }
        _ => {}
    }
    if family == Family::MultiNarayana {
        out.clear();
        for n in 1..=bound.min(8) {
            for n0 in 1..=n {
                let n1 = n + 1 - n0;
                out.push(Args::multi(n, &[n0, n1]));
                for n2 in 0..=n {
                    let n1 = 2 * n + 1 - n0 - n2;
                    if (0..=n).contains(&n1) {
                        out.push(Args::multi(n, &[n0, n1, n2]));
                    }
                }
            }
        }
    }
    out
}

/// All variants of `family` agree wherever two or more are defined.
pub fn variant_agreement(family: Family, bound: i64) -> Result<CheckReport> {
    let mut rep = CheckReport { checked: 0, failures: Vec::new() };
    for a in grid(family, bound) {
        let mut seen: Option<BigInt> = None;
        for v in 1..=family.variants() {
            match eval(FormId { family, variant: v }, &a) {
                Ok(x) => match &seen {
                    None => seen = Some(x),
                    Some(y) => rep.record(&x == y, || format!("{family}#{v} at {:?}: {x} vs {y}", a.0)),
                },
                Err(CfError::Domain { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(rep)
}

pub fn is_nonnegative(v: &BigInt) -> bool {
    !v.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str, a: Args) -> i64 {
        i64::try_from(eval(s.parse().unwrap(), &a).unwrap()).unwrap()
    }

    fn ints(v: Vec<BigInt>) -> Vec<i64> {
        v.into_iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn binomial_policy() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(5, -1), BigInt::zero());
        assert_eq!(binom(5, 6), BigInt::zero());
        assert_eq!(binom(-1, 0), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
    }

    #[test]
    fn point_values() {
        assert_eq!(v("narayana", Args::nk(4, 2)), 6);
        assert_eq!(v("fuss-catalan", Args::nr(2, 2)), 3);
        assert_eq!(v("multi-narayana", Args::multi(4, &[2, 3])), 6);
        for var in 1..=3 {
            assert_eq!(v(&format!("catalan#{var}"), Args::n(0)), 1);
        }
        assert_eq!(v("t", Args::kl(0, 0)), 1);
        assert_eq!(v("narayana", Args::nk(3, 0)), 0);
    }

    #[test]
    fn published_tables() {
        assert_eq!(t_table(3, 4).unwrap(), BigInt::from(2310));
        assert_eq!(t_table(2, 2).unwrap(), BigInt::from(30));
        assert_eq!(z_table(5, 5).unwrap(), BigInt::from(14014));
        assert_eq!(z_table(6, 6).unwrap(), BigInt::from(259896));
        assert_eq!(v("t", Args::kl(3, 4)), 1050);
    }

    #[test]
    fn domain_errors_name_denominator() {
        let e = eval("t#6".parse().unwrap(), &Args::kl(2, 0)).unwrap_err();
        assert!(matches!(e, CfError::Domain { ref denominator, .. } if denominator == "0"));
        assert!(matches!(eval("narayana#5".parse().unwrap(), &Args::nk(3, 1)), Err(CfError::Domain { .. })));
        assert!(matches!(eval("catalan".parse().unwrap(), &Args::new()), Err(CfError::InvalidArgument(_))));
    }

    #[test]
    fn sequences() {
        assert_eq!(ints(sequence(Family::Motzkin, 12, 1).unwrap()), vec![1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798]);
        assert_eq!(ints(sequence(Family::Schroder, 6, 1).unwrap()), vec![1, 2, 6, 22, 90, 394]);
        assert_eq!(ints(sequence(Family::Riordan, 8, 1).unwrap()), vec![0, 1, 1, 3, 6, 15, 36, 91]);
        assert_eq!(ints(sequence(Family::SmallSchroder, 6, 1).unwrap()), vec![1, 1, 3, 11, 45, 197]);
        assert_eq!(ints(sequence(Family::Catalan, 6, 1).unwrap()), vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(ints(sequence(Family::FussCatalan, 5, 2).unwrap()), vec![1, 1, 3, 12, 55]);
    }

    #[test]
    fn relations_hold() {
        for id in RELATIONS {
            let rep = relation_check(id, 8).unwrap();
            assert!(rep.passed(), "{id}: {:?}", rep.failures);
            assert!(rep.checked > 0);
        }
        assert!(relation_check("X", 3).is_err());
    }

    #[test]
    fn variants_agree() {
        for f in FAMILIES {
            let rep = variant_agreement(f, 20).unwrap();
            assert!(rep.passed(), "{f}: {:?}", rep.failures);
        }
    }

    #[test]
    fn form_ids_parse() {
        assert_eq!("t#7".parse::<FormId>().unwrap(), FormId { family: Family::T, variant: 7 });
        assert!("t#8".parse::<FormId>().is_err());
        assert!("nope".parse::<FormId>().is_err());
    }
}

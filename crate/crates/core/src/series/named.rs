//! Fixed-point solving, the registry of named series, and identity checks.

use std::fmt;

use num_traits::One;

use super::{q, Q, Series};
use crate::error::{CfError, Result};
use crate::forms::CheckReport;

/// Maps whose unique power-series fixed point defines a generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedPointMap {
    /// `c = 1/(1 - x c)` over `(x)`.
    Catalan,
    /// `f = 1 + x f^(r+1)` over `(x)`.
    FussCatalan { r: u32 },
    /// `F = 1 + x F^r (F - 1 + t)` over `(x, t)`.
    PeaksF { r: u32 },
    /// `G = x (1 + G)^r (t + G)` over `(x, t)`.
    PeaksG { r: u32 },
    /// `E = x (1 + E)(1 + s E)` over `(x, s)`.
    NarayanaE,
    /// `M(x,s,t) = 1/(1 - x t M(x,t,s))` over `(x, s, t)`.
    Motzkin,
    /// `F = x (a_0 + F)...(a_r + F)` over `(x, a_0, ..., a_r)`.
    ModClass { r: u32 },
}

impl FixedPointMap {
    pub fn vars(&self) -> Vec<String> {
        match self {
            FixedPointMap::Catalan | FixedPointMap::FussCatalan { .. } => vec!["x".into()],
            FixedPointMap::PeaksF { .. } | FixedPointMap::PeaksG { .. } => vec!["x".into(), "t".into()],
            FixedPointMap::NarayanaE => vec!["x".into(), "s".into()],
            FixedPointMap::Motzkin => vec!["x".into(), "s".into(), "t".into()],
            FixedPointMap::ModClass { r } => {
                let mut v = vec!["x".to_string()];
                v.extend((0..=*r).map(|i| format!("a{i}")));
                v
            }
        }
    }

    fn seed(&self, orders: &[usize]) -> Series {
        match self {
            FixedPointMap::Catalan | FixedPointMap::FussCatalan { .. } | FixedPointMap::PeaksF { .. } | FixedPointMap::Motzkin => {
                Series::one(orders)
            }
            _ => Series::zero(orders),
        }
    }

    pub fn apply(&self, s: &Series) -> Result<Series> {
        let o = s.orders().to_vec();
        let x = Series::var(&o, 0);
        let one = Series::one(&o);
        Ok(match *self {
            FixedPointMap::Catalan => (&one - &(&x * s)).recip()?,
            FixedPointMap::FussCatalan { r } => &one + &(&x * &s.pow(r + 1)),
            FixedPointMap::PeaksF { r } => {
                let t = Series::var(&o, 1);
                let inner = &(s - &one) + &t;
                &one + &(&(&x * &s.pow(r)) * &inner)
            }
            FixedPointMap::PeaksG { r } => {
                let t = Series::var(&o, 1);
                &(&x * &(&one + s).pow(r)) * &(&t + s)
            }
            FixedPointMap::NarayanaE => {
                let sv = Series::var(&o, 1);
                &(&x * &(&one + s)) * &(&one + &(&sv * s))
            }
            FixedPointMap::Motzkin => {
                let t = Series::var(&o, 2);
                (&one - &(&(&x * &t) * &s.swap_vars(1, 2))).recip()?
            }
            FixedPointMap::ModClass { r } => {
                let mut acc = x;
                for i in 0..=r as usize {
                    acc = &acc * &(&Series::var(&o, i + 1) + s);
                }
                acc
            }
        })
    }
}

/// Iterate `f` from `seed` until one more application changes nothing.
pub fn iterate_to_fixed_point(seed: Series, f: impl Fn(&Series) -> Result<Series>) -> Result<Series> {
    let cap = seed.orders().iter().sum::<usize>() + 2;
    let mut cur = seed;
    for _ in 0..cap {
        let next = f(&cur)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(CfError::NonContractive { iterations: cap })
}

pub fn solve_fixed_point_orders(map: FixedPointMap, orders: &[usize]) -> Result<Series> {
    if orders.len() != map.vars().len() {
        return Err(CfError::InvalidArgument(format!("{map:?} needs {} orders", map.vars().len())));
    }
    iterate_to_fixed_point(map.seed(orders), |s| map.apply(s))
}

/// The fixed point with every variable truncated at `order`.
pub fn solve_fixed_point(map: FixedPointMap, order: usize) -> Result<Series> {
    solve_fixed_point_orders(map, &vec![order; map.vars().len()])
}

fn catalan(order: usize) -> Result<Series> {
    solve_fixed_point(FixedPointMap::Catalan, order)
}

fn fuss(r: u32, order: usize) -> Result<Series> {
    solve_fixed_point(FixedPointMap::FussCatalan { r }, order)
}

/// `E(x, s)` with the given orders in `x` and `s`.
fn narayana_e(ox: usize, os: usize) -> Result<Series> {
    solve_fixed_point_orders(FixedPointMap::NarayanaE, &[ox, os])
}

/// `u(x_var^k)` as a series over `orders`.
fn at_power(u: &Series, orders: &[usize], var: usize, k: usize) -> Result<Series> {
    let mut e = vec![0; orders.len()];
    e[var] = k;
    u.compose(&[Series::monomial(orders, &e, Q::one())])
}

fn lift(u: &Series, orders: &[usize], var: usize) -> Result<Series> {
    at_power(u, orders, var, 1)
}

/// `M(x, b, 1)`-style slices of `M(x, s, t)`: pins one of `s`, `t` to 1 and
/// moves the other to position `to` of a series over `orders`.
fn m_slice(m: &Series, pin: usize, orders: &[usize], to: usize) -> Series {
    m.set_var(pin, &Q::one()).embed(orders, &[0, to])
}

/// A series with named variables.
#[derive(Clone, Debug)]
pub struct Named {
    pub name: String,
    pub vars: Vec<String>,
    pub series: Series,
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in self.series.terms() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
            writeln!(f, "{mono}\t{c}")?;
        }
        Ok(())
    }
}

pub const NAMED_SERIES: [&str; 16] = [
    "c", "f", "E", "f_upper", "g_lower", "h_all", "P_lh", "M", "G_even", "L_pk", "L_v", "L_dr", "L_df", "Cg", "G1U", "G1D",
];

fn vars(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// `E(x,s)` and `E(x,t)` over `(x, s, t)`.
fn e_pair(order: usize) -> Result<(Series, Series)> {
    let o = [order; 3];
    let e = narayana_e(order, order)?;
    Ok((e.embed(&o, &[0, 1]), e.embed(&o, &[0, 2])))
}

/// `F_n` and `F_{p+m}` for the given weights and `C_g` factors.
fn prime_series(r: u32, s: &Series, t: &Series, cs: &Series, ct: &Series, x: &Series, y: &Series) -> (Series, Series) {
    let sc = s * cs;
    let tc = t * ct;
    let f_n = x * &sc.pow(r);
    let mut f_pm = Series::zero(s.orders());
    for i in 0..r {
        let term = &(&(&(s * ct) * &tc.pow(r - 1 - i)) * y) * &sc.pow(i);
        f_pm = &f_pm + &term;
    }
    (f_n, f_pm)
}

/// The series registered under `name`, every variable truncated at `order`.
/// `r` is used by `f`, `Cg`, `G1U` and `G1D`.
pub fn named_series(name: &str, order: usize, r: u32) -> Result<Named> {
    if r == 0 {
        return Err(CfError::InvalidArgument("r must be positive".into()));
    }
    let n = order;
    let o2 = [n, n];
    let o3 = [n, n, n];
    let (v, series) = match name {
        "c" => (vars(&["x"]), catalan(n)?),
        "f" => (vars(&["x"]), fuss(r, n)?),
        "E" => (vars(&["x", "s"]), narayana_e(n, n)?),
        "f_upper" | "g_lower" => {
            let c = catalan(n)?;
            let (cx, cy) = (lift(&c, &o2, 0)?, lift(&c, &o2, 1)?);
            let (x, y) = (Series::var(&o2, 0), Series::var(&o2, 1));
            let den = &(&Series::one(&o2) - &(&x * &cx)) - &(&y * &cy);
            let num = if name == "f_upper" { Series::one(&o2) } else { &cx * &cy };
            (vars(&["x", "y"]), num.div(&den)?)
        }
        "h_all" | "P_lh" => {
            let c = catalan(n)?;
            let (cx2, cy2) = (at_power(&c, &o2, 0, 2)?, at_power(&c, &o2, 1, 2)?);
            let (x, y) = (Series::var(&o2, 0), Series::var(&o2, 1));
            let cc = &cx2 * &cy2;
            let den = &Series::one(&o2) - &(&(&x * &y) * &cc);
            let num = if name == "h_all" { cc } else { &x * &cc };
            (vars(&["x", "y"]), num.div(&den)?)
        }
        "M" => (vars(&["x", "s", "t"]), solve_fixed_point(FixedPointMap::Motzkin, n)?),
        "G_even" => {
            let m = solve_fixed_point(FixedPointMap::Motzkin, n)?;
            let m_b1 = m_slice(&m, 2, &o3, 2);
            let m_a1 = m_slice(&m, 2, &o3, 1);
            let m_1a = m_slice(&m, 1, &o3, 1);
            let (x, b) = (Series::var(&o3, 0), Series::var(&o3, 2));
            let num = &(&(&(&b * &x.pow(2)) * &m_b1) * &m_a1) * &m_1a;
            let den = &(&Series::one(&o3) - &(&x * &m_1a)) - &(&(&b * &x) * &m_b1);
            (vars(&["x", "a", "b"]), num.div(&den)?)
        }
        "L_pk" | "L_v" | "L_dr" | "L_df" => {
            let (es, et) = e_pair(n)?;
            let one = Series::one(&o3);
            let (s, t) = (Series::var(&o3, 1), Series::var(&o3, 2));
            let ee = &es * &et;
            let series = match name {
                "L_pk" => (&one + &et).div(&(&one - &(&s * &ee)))?,
                "L_v" => (&one + &es).div(&(&one - &(&t * &ee)))?,
                "L_dr" => (&es * &(&one + &(&t * &et))).div(&(&one - &(&t * &ee)))?,
                _ => (&ee * &(&one + &es)).div(&(&one - &(&t * &ee)))?,
            };
            (vars(&["x", "s", "t"]), series)
        }
        "Cg" => (vars(&["y", "t"]), cg(r, n)?),
        "G1U" => {
            // x = y = 1, so C_g(1, u) = f(u^r).
            let f = fuss(r, n)?;
            let cs = at_power(&f, &o2, 0, r as usize)?;
            let ct = at_power(&f, &o2, 1, r as usize)?;
            let (s, t) = (Series::var(&o2, 0), Series::var(&o2, 1));
            let one = Series::one(&o2);
            let (f_n, f_pm) = prime_series(r, &s, &t, &cs, &ct, &one, &one);
            let num = &(&(&one - &f_n) * &s) * &ct;
            let den = &(&one - &f_n) - &f_pm;
            (vars(&["s", "t"]), num.div(&den)?)
        }
        "G1D" => {
            // s = t = 1, so C_g(u, 1) = f(u).
            let f = fuss(r, n)?;
            let (fx, fy) = (lift(&f, &o2, 0)?, lift(&f, &o2, 1)?);
            let (x, y) = (Series::var(&o2, 0), Series::var(&o2, 1));
            let one = Series::one(&o2);
            let (f_n, f_pm) = prime_series(r, &one, &one, &fx, &fy, &x, &y);
            let num = &fy * &f_n;
            let den = &(&one - &f_n) - &f_pm;
            (vars(&["x", "y"]), num.div(&den)?)
        }
        _ => return Err(CfError::Unknown { kind: "series", name: name.to_string() }),
    };
    Ok(Named { name: name.to_string(), vars: v, series })
}

/// `C_g(y, t) = f(y t^r)`.
fn cg(r: u32, n: usize) -> Result<Series> {
    let o2 = [n, n];
    fuss(r, n)?.compose(&[Series::monomial(&o2, &[1, r as usize], Q::one())])
}

pub const IDENTITIES: [&str; 13] = [
    "e13a", "id-chain", "id2", "id3", "sqrt-1", "sqrt-2", "E-c", "E-M", "E-closed", "M-closed", "G-even", "G1U-closed", "G1D-closed",
];

fn compare(rep: &mut CheckReport, label: &str, a: &Series, b: &Series) {
    rep.checked += a.orders().iter().zip(b.orders()).map(|(x, y)| x.min(y) + 1).product::<usize>();
    if let Some((e, x, y)) = a.first_difference(b) {
        rep.failures.push(format!("{label}: coefficient at {e:?} is {x} vs {y}"));
    }
}

/// `(1 - 4x)^(-1/2)`.
fn inv_sqrt_1_4x(n: usize) -> Result<Series> {
    Series::from_ints(n, &[1, -4]).sqrt()?.recip()
}

/// Expand both sides of identity `id` to `order` and compare every coefficient.
pub fn identity_check(id: &str, order: usize) -> Result<CheckReport> {
    let n = order;
    let wide = 2 * n + 1;
    let o2 = [n, n];
    let o3 = [n, n, n];
    let mut rep = CheckReport { checked: 0, failures: Vec::new() };
    match id {
        "e13a" => {
            let xc = &Series::var(&[wide], 0) * &catalan(wide)?;
            compare(&mut rep, id, &xc.divided_difference(0), &named_series("f_upper", n, 1)?.series);
        }
        "id-chain" | "id2" | "G-even" => {
            let e_wide = narayana_e(n, wide)?;
            let (es, et) = e_pair(n)?;
            let one = Series::one(&o3);
            let (x, s, t) = (Series::var(&o3, 0), Series::var(&o3, 1), Series::var(&o3, 2));
            let ee = &es * &et;
            let den_t = &one - &(&t * &ee);
            match id {
                "id-chain" => {
                    let sv = Series::var(&[n, wide], 1);
                    let a = (&sv * &e_wide).divided_difference(1).add_const(&Q::one());
                    let b = (&es * &(&one + &(&t * &et))).div(&den_t)?.add_const(&Q::one());
                    let c = (&one + &et).div(&(&one - &(&s * &ee)))?;
                    let d = (&one + &es).div(&den_t)?;
                    compare(&mut rep, "id-chain first = second", &a, &b);
                    compare(&mut rep, "id-chain first = third", &a, &c);
                    compare(&mut rep, "id-chain first = fourth", &a, &d);
                }
                "id2" => {
                    let a = e_wide.divided_difference(1);
                    let b = (&(&(&one + &es) * &es) * &et).div(&den_t)?;
                    let den = &(&one - &(&x * &(&one + &(&s * &es)))) - &(&(&x * &t) * &(&one + &et));
                    let c = (&(&x * &(&one + &et)) * &es).div(&den)?;
                    compare(&mut rep, "id2 first = second", &a, &b);
                    compare(&mut rep, "id2 first = third", &a, &c);
                }
                _ => {
                    let g = named_series("G_even", n, 1)?.series;
                    let dd = &t * &e_wide.divided_difference(1);
                    compare(&mut rep, id, &g, &dd);
                }
            }
        }
        "id3" => {
            let c = catalan(wide)?;
            let xc2 = &Series::var(&[wide], 0) * &at_power(&c, &[wide], 0, 2)?;
            compare(&mut rep, id, &xc2.divided_difference(0), &named_series("h_all", n, 1)?.series);
        }
        "sqrt-1" | "sqrt-2" => {
            let c = catalan(n)?;
            let x = Series::var(&[n], 0);
            let one = Series::one(&[n]);
            let lhs = if id == "sqrt-1" {
                (&one - &(&x * &c).scale(&q(2))).recip()?
            } else {
                c.div(&(&one - &(&x * &c.pow(2))))?
            };
            compare(&mut rep, id, &lhs, &inv_sqrt_1_4x(n)?);
        }
        "E-c" => {
            let e1 = narayana_e(n, n)?.set_var(1, &Q::one());
            compare(&mut rep, id, &e1, &catalan(n)?.add_const(&q(-1)));
        }
        "E-M" => {
            let m = solve_fixed_point(FixedPointMap::Motzkin, n)?;
            let e = narayana_e(n, n)?;
            let (one, s) = (Series::one(&o2), Series::var(&o2, 1));
            let m_1s = m.set_var(1, &Q::one());
            let m_t1 = m.set_var(2, &Q::one());
            compare(&mut rep, "M(x,1,s) = 1 + s E(x,s)", &m_1s, &(&one + &(&s * &e)));
            compare(&mut rep, "M(x,t,1) = 1 + E(x,t)", &m_t1, &(&one + &e));
            let x = Series::var(&o2, 0);
            compare(&mut rep, "E(x,y) = x M(x,y,1) M(x,1,y)", &e, &(&(&x * &m_t1) * &m_1s));
        }
        "E-closed" => {
            let e = narayana_e(n + 1, n + 1)?;
            let o = [n + 1, n + 1];
            let (one, x, s) = (Series::one(&o), Series::var(&o, 0), Series::var(&o, 1));
            let xs = &x * &s;
            let lhs = &e * &xs.scale(&q(2));
            let printed = &(&one - &x) + &xs;
            let printed = &(&printed * &printed) - &xs.scale(&q(4));
            let standard = &(&one - &x) - &xs;
            let standard = &(&standard * &standard) - &(&x * &xs).scale(&q(4));
            let base = &(&one - &x) - &xs;
            compare(&mut rep, "E with printed radicand", &lhs, &(&base - &printed.sqrt()?));
            compare(&mut rep, "E with standard radicand", &lhs, &(&base - &standard.sqrt()?));
        }
        "M-closed" => {
            let o = [n + 1, n + 1, n + 1];
            let m = solve_fixed_point(FixedPointMap::Motzkin, n + 1)?;
            let (one, x, s, t) = (Series::one(&o), Series::var(&o, 0), Series::var(&o, 1), Series::var(&o, 2));
            let sx = &s * &x;
            let lhs = &(&m - &one) * &sx.scale(&q(2));
            let rad = &(&one - &(&t * &x)) + &sx;
            let rad = &(&rad * &rad) - &sx.scale(&q(4));
            let rhs = &(&(&one - &(&t * &x)) - &sx) - &rad.sqrt()?;
            compare(&mut rep, id, &lhs, &rhs);
        }
        "G1U-closed" | "G1D-closed" => {
            for r in 1..=3u32 {
                let f = fuss(r, wide)?;
                if id == "G1U-closed" {
                    let u = Series::var(&[wide], 0);
                    let uc = &u * &at_power(&f, &[wide], 0, r as usize)?;
                    let rhs = &Series::var(&o2, 0) * &uc.divided_difference(0);
                    compare(&mut rep, &format!("{id} r={r}"), &named_series("G1U", n, r)?.series, &rhs);
                } else {
                    let rhs = &Series::var(&o2, 0) * &f.divided_difference(0);
                    compare(&mut rep, &format!("{id} r={r}"), &named_series("G1D", n, r)?.series, &rhs);
                }
            }
        }
        _ => return Err(CfError::Unknown { kind: "identity", name: id.to_string() }),
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{for_each_path, Budget, FamilySpec};
    use crate::forms::{binom, eval, Args, FormId};
    use crate::series::lagrange::scalar;
    use crate::series::{lagrange_coeff, lagrange_phi_coeff, Laurent};
    use crate::stats::{count_above, count_on_or_below, Selector};
    use num_bigint::BigInt;
    use std::collections::BTreeMap;

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs_1d().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    fn catalan_n(n: i64) -> Q {
        Q::from_integer(eval(FormId::canonical(crate::forms::Family::Catalan), &Args::n(n)).unwrap())
    }

    fn fuss_n(n: i64, r: i64) -> Q {
        Q::from_integer(binom((r + 1) * n, n) / BigInt::from(r * n + 1))
    }

    fn narayana(n: i64, k: i64) -> Q {
        Q::from_integer(eval("narayana".parse().unwrap(), &Args::nk(n, k)).unwrap())
    }

    #[test]
    fn fixed_points() {
        assert_eq!(ints(&catalan(5).unwrap()), vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(ints(&fuss(2, 4).unwrap()), vec![1, 1, 3, 12, 55]);
        let e = narayana_e(4, 4).unwrap();
        assert_eq!(ints(&e.slice(0, 4)), vec![1, 6, 6, 1, 0]);
        let mut more = FixedPointMap::Motzkin.apply(&solve_fixed_point(FixedPointMap::Motzkin, 4).unwrap()).unwrap();
        more = more.truncate(&[4, 4, 4]);
        assert_eq!(more, solve_fixed_point(FixedPointMap::Motzkin, 4).unwrap());
        let bad = iterate_to_fixed_point(Series::one(&[3]), |s| Ok(s.add_const(&Q::one())));
        assert!(matches!(bad, Err(CfError::NonContractive { iterations: 5 })));
    }

    #[test]
    fn narayana_coefficients() {
        let e = narayana_e(10, 10).unwrap();
        for n in 1..=10i64 {
            for m in 1..=n {
                assert_eq!(e.coeff(&[n as usize, m as usize - 1]), narayana(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn peaks_maps_match_forms() {
        for r in 1..=3u32 {
            let f = solve_fixed_point(FixedPointMap::PeaksF { r }, 5).unwrap();
            let g = solve_fixed_point(FixedPointMap::PeaksG { r }, 5).unwrap();
            for n in 1..=5i64 {
                for k in 1..=n {
                    let want = Q::from_integer(eval("gen-narayana-r".parse().unwrap(), &Args::nkr(n, k, r as i64)).unwrap());
                    assert_eq!(g.coeff(&[n as usize, k as usize]), want, "G r={r} n={n} k={k}");
                    assert_eq!(f.coeff(&[n as usize, k as usize]), want, "F r={r} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn mod_class_map() {
        // [x^n a_0^e_0 ... a_r^e_r] = (1/n) prod binom(n, e_i), with sum e_i = rn + 1
        let r = 2u32;
        let f = solve_fixed_point_orders(FixedPointMap::ModClass { r }, &[4, 4, 4, 4]).unwrap();
        let mut seen = 0;
        for (e, c) in f.terms() {
            let n = e[0] as i64;
            assert_eq!(e[1..].iter().sum::<usize>() as i64, r as i64 * n + 1, "{e:?}");
            let prod: BigInt = e[1..].iter().map(|&k| binom(n, k as i64)).product();
            assert_eq!(c, Q::from_integer(prod) / q(n), "{e:?}");
            seen += 1;
        }
        assert!(seen > 10);
    }

    #[test]
    fn lagrange_matches_iteration() {
        for r in 1..=3u32 {
            let f = fuss(r, 10).unwrap();
            for h in 1..=3u32 {
                let fh = f.pow(h);
                for n in 0..=10u32 {
                    let m = (r + 1) * n + h;
                    let ballot = Q::new(BigInt::from(h) * binom(m as i64, n as i64), BigInt::from(m));
                    assert_eq!(fh.coeff(&[n as usize]), ballot, "r={r} h={h} n={n}");
                    let o = [m as usize, n as usize + 1];
                    let mut g = Series::one(&o);
                    g.set_coeff(&[r as usize + 1, 1], q(1));
                    assert_eq!(lagrange_coeff(&g, h, m).unwrap().coeff(&[n as usize]), ballot);
                    // f = 1 + F with F = x (1 + F)^(r+1), so f^h = phi(F) with phi = (1+u)^h.
                    let w = n as usize + 1;
                    let one_u = Series::from_ints(w, &[1, 1]);
                    let phi = Laurent { valuation: 0, series: one_u.pow(h) };
                    assert_eq!(scalar(&lagrange_phi_coeff(&one_u.pow(r + 1), &phi, n).unwrap()), ballot);
                }
            }
        }
    }

    #[test]
    fn theorem_e13_patterns() {
        let f = named_series("f_upper", 8, 1).unwrap().series;
        let g = named_series("g_lower", 8, 1).unwrap().series;
        let h = named_series("h_all", 8, 1).unwrap().series;
        let p = named_series("P_lh", 8, 1).unwrap().series;
        for n in 0..=8usize {
            for i in 0..=n {
                assert_eq!(f.coeff(&[i, n - i]), catalan_n(n as i64));
                assert_eq!(g.coeff(&[i, n - i]), catalan_n(n as i64 + 1));
            }
        }
        for i in 0..=8usize {
            for j in 0..=8usize {
                let hv = if (i + j) % 2 == 0 { catalan_n(((i + j) / 2) as i64) } else { q(0) };
                assert_eq!(h.coeff(&[i, j]), hv, "h {i} {j}");
                let pv = if i >= 1 && (i + j) % 2 == 1 { catalan_n(((i + j - 1) / 2) as i64) } else { q(0) };
                assert_eq!(p.coeff(&[i, j]), pv, "P {i} {j}");
            }
        }
    }

    #[test]
    fn g_even_pattern() {
        let g = named_series("G_even", 8, 1).unwrap().series;
        for (e, c) in g.terms() {
            let (n, i, j) = (e[0] as i64, e[1] as i64, e[2] as i64);
            assert!(j >= 1, "{e:?}");
            let k = i + j + 1;
            let want = Q::from_integer(binom(n - 1, k - 2) * binom(n, k)) / q(k - 1);
            assert_eq!(c, want, "{e:?}");
            assert_eq!(c, narayana(n, k));
        }
        assert_eq!(g.coeff(&[4, 1, 1]), narayana(4, 3));
    }

    #[test]
    fn g1_patterns() {
        for r in 1..=3u32 {
            let u = named_series("G1U", 9, r).unwrap().series;
            for (e, c) in u.terms() {
                let (a, b) = (e[0], e[1]);
                assert!(a >= 1 && (a - 1 + b) % r as usize == 0, "r={r} {e:?}");
                assert_eq!(c, fuss_n(((a - 1 + b) / r as usize) as i64, r as i64), "r={r} {e:?}");
            }
            let d = named_series("G1D", 9, r).unwrap().series;
            for i in 0..9usize {
                for j in 0..=8 - i {
                    assert_eq!(d.coeff(&[i + 1, j]), fuss_n((i + j + 1) as i64, r as i64), "r={r}");
                }
            }
        }
    }

    /// `(above, on-or-below)` peak counts over a family, keyed by semi-length.
    fn peak_grid(spec: &FamilySpec, sel: Selector) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for_each_path(spec, Budget::default(), |p| {
            let key = (count_above(p, sel)?, count_on_or_below(p, sel)?);
            *out.entry(key).or_default() += 1;
            Ok(())
        })
        .unwrap();
        out
    }

    #[test]
    fn l_pk_counts_paths() {
        let l = named_series("L_pk", 6, 1).unwrap().series;
        for n in 1..=5u32 {
            let grid = peak_grid(&FamilySpec::p(n, 1, 1).first("D").last("U"), Selector::Peak);
            let mut total = 0u64;
            for ((i, j), c) in &grid {
                assert_eq!(l.coeff(&[n as usize, *i, *j]), q(*c as i64), "n={n} s^{i} t^{j}");
                total += c;
            }
            let from_series: Q = l.slice(0, n as usize).terms().into_iter().map(|(_, c)| c).sum();
            assert_eq!(from_series, q(total as i64));
        }
    }

    #[test]
    fn named_registry() {
        for name in NAMED_SERIES {
            named_series(name, 4, 2).unwrap();
        }
        assert!(matches!(named_series("nope", 3, 1), Err(CfError::Unknown { .. })));
        let cg = named_series("Cg", 6, 2).unwrap().series;
        assert_eq!(cg.coeff(&[2, 4]), q(3));
        assert_eq!(cg.coeff(&[1, 1]), q(0));
        let text = named_series("c", 2, 1).unwrap().to_string();
        assert_eq!(text, "1\t1\nx\t1\nx^2\t2\n");
    }

    #[test]
    fn identities_hold() {
        for id in IDENTITIES {
            let rep = identity_check(id, 6).unwrap();
            assert!(rep.passed(), "{id}: {:?}", rep.failures);
            assert!(rep.checked > 0);
        }
        assert!(identity_check("nope", 3).is_err());
    }
}

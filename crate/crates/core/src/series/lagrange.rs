//! Lagrange inversion for `f = x g(f)`.
//!
//! In both functions `g` is a series whose first variable is `u`; any further
//! variables are parameters and carry through to the result.

use num_traits::Zero;

use super::{Q, Series};
use crate::error::{CfError, Result};

/// `u^valuation * series`, a Laurent series in the first variable.
#[derive(Clone, Debug)]
pub struct Laurent {
    pub valuation: i64,
    pub series: Series,
}

fn need(g: &Series, deg: i64) -> Result<()> {
    let have = g.orders()[0] as i64;
    if have < deg {
        return Err(CfError::InsufficientOrder { needed: deg, have });
    }
    Ok(())
}

/// `[x^n] f^k = (k/n) [u^(n-k)] g(u)^n`, for `n >= k >= 1`.
pub fn lagrange_coeff(g: &Series, k: u32, n: u32) -> Result<Series> {
    if k == 0 || n < k {
        return Err(CfError::InvalidArgument(format!("lagrange_coeff needs n >= k >= 1, got k={k}, n={n}")));
    }
    let deg = (n - k) as i64;
    need(g, deg)?;
    let mut orders = g.orders().to_vec();
    orders[0] = deg as usize;
    let gn = g.truncate(&orders).pow(n);
    Ok(gn.slice(0, deg as usize).scale(&Q::new(k.into(), n.into())))
}

/// `[x^n] phi(f) = [u^n] (1 - u g'/g) phi(u) g(u)^n`, computed as
/// `[u^n] phi * g^(n-1) * (g - u g')` so that `g` need not be invertible.
pub fn lagrange_phi_coeff(g: &Series, phi: &Laurent, n: u32) -> Result<Series> {
    let deg = n as i64 - phi.valuation;
    let mut params = g.orders().to_vec();
    params.remove(0);
    if deg < 0 {
        return Ok(Series::zero(&params));
    }
    need(g, deg)?;
    need(&phi.series, deg)?;
    if phi.series.nvars() != g.nvars() {
        return Err(CfError::Series("phi and g must share variables".into()));
    }
    let mut orders: Vec<usize> = g.orders().iter().zip(phi.series.orders()).map(|(a, b)| *a.min(b)).collect();
    orders[0] = deg as usize;
    let g = g.truncate(&orders);
    let kernel = &g - &g.euler(0);
    let body = if n == 0 {
        // g^(n-1) (g - u g') = (1 - u g'/g) when n = 0.
        kernel.div(&g)?
    } else {
        &g.pow(n - 1) * &kernel
    };
    let prod = &phi.series.truncate(&orders) * &body;
    Ok(prod.slice(0, deg as usize))
}

/// The rational value of a parameter-free result.
pub fn scalar(s: &Series) -> Q {
    if s.nvars() == 0 {
        s.constant_term().clone()
    } else if s.is_zero() {
        Q::zero()
    } else {
        s.coeff(&vec![0; s.nvars()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::q;
    use crate::forms::{binom, eval, Args, FormId};
    use num_bigint::BigInt;

    /// `(1+u)^a (t+u)^b` over variables `(u, t)`.
    fn poly(order: usize, a: u32, b: u32) -> Series {
        let o = [order, order];
        let u = Series::var(&o, 0);
        let t = Series::var(&o, 1);
        let one = Series::one(&o);
        let x = (&one + &u).pow(a);
        &x * &(&t + &u).pow(b)
    }

    #[test]
    fn catalan_by_inversion() {
        let g = Series::from_ints(6, &[1, 2, 1]);
        assert_eq!(scalar(&lagrange_coeff(&g, 1, 3).unwrap()), q(5));
        // k = n picks out g_0^n
        let g = Series::from_ints(2, &[3, 1]);
        assert_eq!(scalar(&lagrange_coeff(&g, 4, 4).unwrap()), q(81));
        assert!(matches!(lagrange_coeff(&Series::from_ints(1, &[1, 1]), 1, 4), Err(CfError::InsufficientOrder { .. })));
    }

    #[test]
    fn ballot_by_inversion() {
        // f = z (1 + x f^(r+1)): [z^m] f^h = (h/m) [u^(m-h)] (1 + x u^(r+1))^m
        for r in 1..=3i64 {
            for h in 1..=3i64 {
                for n in 0..=5i64 {
                    let m = (r + 1) * n + h;
                    let o = [m as usize, n as usize + 1];
                    let mut g = Series::one(&o);
                    g.set_coeff(&[(r + 1) as usize, 1], q(1));
                    let c = lagrange_coeff(&g, h as u32, m as u32).unwrap();
                    let want = eval(FormId::canonical(crate::forms::Family::Ballot), &Args::new().set("n", n).set("r", r).set("h", h)).unwrap();
                    assert_eq!(c.coeff(&[n as usize]), Q::from_integer(want), "r={r} h={h} n={n}");
                    assert_eq!(Q::from_integer(BigInt::from(h) * binom(m, n)) / q(m), c.coeff(&[n as usize]));
                }
            }
        }
    }

    #[test]
    fn phi_form_matches_plain_form() {
        let g = Series::from_ints(8, &[1, 2, 1]);
        let phi = Laurent { valuation: 1, series: Series::one(&[8]) };
        for n in 1..=6 {
            let a = scalar(&lagrange_phi_coeff(&g, &phi, n).unwrap());
            let b = scalar(&lagrange_coeff(&g, 1, n).unwrap());
            assert_eq!(a, b, "n={n}");
        }
    }

    #[test]
    fn peak_counts_by_phi_form() {
        for r in 1..=3u32 {
            for n in 1..=5u32 {
                let g = poly(n as usize + 1, r, 1);
                let phi = Laurent { valuation: 0, series: poly(n as usize + 1, 1, 0) };
                let c = lagrange_phi_coeff(&g, &phi, n).unwrap();
                for k in 1..=n {
                    let want = eval("gen-narayana-r".parse().unwrap(), &Args::nkr(n as i64, k as i64, r as i64)).unwrap();
                    assert_eq!(c.coeff(&[k as usize]), Q::from_integer(want), "r={r} n={n} k={k}");
                }
            }
        }
        let c = lagrange_phi_coeff(&poly(4, 1, 1), &Laurent { valuation: 0, series: poly(4, 1, 0) }, 3).unwrap();
        assert_eq!(c.coeff(&[2]), q(3));
    }

    #[test]
    fn phi_order_is_checked() {
        let g = Series::from_ints(8, &[1, 1]);
        let phi = Laurent { valuation: 0, series: Series::from_ints(2, &[1, 1]) };
        assert!(matches!(lagrange_phi_coeff(&g, &phi, 5), Err(CfError::InsufficientOrder { needed: 5, have: 2 })));
    }
}

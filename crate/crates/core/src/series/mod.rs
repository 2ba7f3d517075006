//! Truncated multivariate formal power series with exact rational coefficients.
//!
//! A [`Series`] stores every coefficient `x_0^e_0 ... x_{v-1}^e_{v-1}` with
//! `e_i <= orders[i]` in a dense row-major array. Binary operations truncate
//! to the smaller order in each variable.

mod lagrange;
mod named;

pub use lagrange::{lagrange_coeff, lagrange_phi_coeff, scalar, Laurent};
pub use named::{
    identity_check, named_series, solve_fixed_point, FixedPointMap, Named, IDENTITIES, NAMED_SERIES,
};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{CfError, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    orders: Vec<usize>,
    strides: Vec<usize>,
    coeffs: Vec<Q>,
}

fn strides_for(orders: &[usize]) -> Vec<usize> {
    let mut s = vec![1; orders.len()];
    for i in (0..orders.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * (orders[i + 1] + 1);
    }
    s
}

impl Series {
    pub fn zero(orders: &[usize]) -> Series {
        let len = orders.iter().map(|o| o + 1).product();
        Series { orders: orders.to_vec(), strides: strides_for(orders), coeffs: vec![Q::zero(); len] }
    }

    pub fn constant(orders: &[usize], c: Q) -> Series {
        let mut s = Series::zero(orders);
        s.coeffs[0] = c;
        s
    }

    pub fn one(orders: &[usize]) -> Series {
        Series::constant(orders, Q::one())
    }

    pub fn monomial(orders: &[usize], exps: &[usize], c: Q) -> Series {
        let mut s = Series::zero(orders);
        s.set_coeff(exps, c);
        s
    }

    /// The variable `x_i`.
    pub fn var(orders: &[usize], i: usize) -> Series {
        let mut e = vec![0; orders.len()];
        e[i] = 1;
        Series::monomial(orders, &e, Q::one())
    }

    /// Univariate series from integer coefficients.
    pub fn from_ints(order: usize, coeffs: &[i64]) -> Series {
        let mut s = Series::zero(&[order]);
        for (i, &c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[i] = q(c);
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    fn index(&self, e: &[usize]) -> Option<usize> {
        if e.len() != self.orders.len() {
            return None;
        }
        let mut idx = 0;
        for ((&x, &o), &s) in e.iter().zip(&self.orders).zip(&self.strides) {
            if x > o {
                return None;
            }
            idx += x * s;
        }
        Some(idx)
    }

    fn exps(&self, idx: usize) -> Vec<usize> {
        self.strides.iter().zip(&self.orders).map(|(&s, &o)| (idx / s) % (o + 1)).collect()
    }

    /// Coefficient of the monomial with exponents `e`; zero outside the grid.
    pub fn coeff(&self, e: &[usize]) -> Q {
        self.index(e).map(|i| self.coeffs[i].clone()).unwrap_or_else(Q::zero)
    }

    /// Coefficient required to be an integer.
    pub fn coeff_int(&self, e: &[usize]) -> Result<BigInt> {
        let c = self.coeff(e);
        if !c.is_integer() {
            return Err(CfError::Series(format!("coefficient at {e:?} is {c}, not an integer")));
        }
        Ok(c.to_integer())
    }

    pub fn set_coeff(&mut self, e: &[usize], c: Q) {
        if let Some(i) = self.index(e) {
            self.coeffs[i] = c;
        }
    }

    pub fn constant_term(&self) -> &Q {
        &self.coeffs[0]
    }

    /// Nonzero terms in row-major order.
    pub fn terms(&self) -> Vec<(Vec<usize>, Q)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exps(i), c.clone()))
            .collect()
    }

    /// Univariate coefficients `c_0..c_N`.
    pub fn coeffs_1d(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn assert_compatible(&self, o: &Series) {
        assert_eq!(self.nvars(), o.nvars(), "series over different numbers of variables");
    }

    fn min_orders(&self, o: &Series) -> Vec<usize> {
        self.orders.iter().zip(&o.orders).map(|(a, b)| *a.min(b)).collect()
    }

    /// Drop every coefficient beyond `orders` (which are capped at the current orders).
    pub fn truncate(&self, orders: &[usize]) -> Series {
        let orders: Vec<usize> = orders.iter().zip(&self.orders).map(|(a, b)| *a.min(b)).collect();
        let mut out = Series::zero(&orders);
        for i in 0..out.coeffs.len() {
            let e = out.exps(i);
            out.coeffs[i] = self.coeff(&e);
        }
        out
    }

    /// Whether both series agree on their common grid.
    pub fn agrees_with(&self, o: &Series) -> bool {
        self.nvars() == o.nvars() && {
            let m = self.min_orders(o);
            self.truncate(&m) == o.truncate(&m)
        }
    }

    /// First exponent vector, in row-major order, where the series differ.
    pub fn first_difference(&self, o: &Series) -> Option<(Vec<usize>, Q, Q)> {
        let m = self.min_orders(o);
        let (a, b) = (self.truncate(&m), o.truncate(&m));
        (0..a.coeffs.len()).find(|&i| a.coeffs[i] != b.coeffs[i]).map(|i| (a.exps(i), a.coeffs[i].clone(), b.coeffs[i].clone()))
    }

    pub fn scale(&self, c: &Q) -> Series {
        Series { coeffs: self.coeffs.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn add_const(&self, c: &Q) -> Series {
        let mut s = self.clone();
        s.coeffs[0] += c;
        s
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut acc = Series::one(&self.orders);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn recip(&self) -> Result<Series> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return Err(CfError::Series("reciprocal of a series with zero constant term".into()));
        }
        let inv0 = a0.recip();
        let terms: Vec<(Vec<usize>, Q)> = self.terms().into_iter().filter(|(e, _)| e.iter().any(|&x| x > 0)).collect();
        let mut out = Series::zero(&self.orders);
        for i in 0..out.coeffs.len() {
            let e = out.exps(i);
            let mut acc = if i == 0 { Q::one() } else { Q::zero() };
            for (f, c) in &terms {
                if f.iter().zip(&e).all(|(a, b)| a <= b) {
                    let d: Vec<usize> = e.iter().zip(f).map(|(a, b)| a - b).collect();
                    let bd = &out.coeffs[out.index(&d).unwrap()];
                    if !bd.is_zero() {
                        acc -= c * bd;
                    }
                }
            }
            out.coeffs[i] = acc * &inv0;
        }
        Ok(out)
    }

    pub fn div(&self, o: &Series) -> Result<Series> {
        Ok(self * &o.recip()?)
    }

    /// Square root with constant term 1; needs constant term 1.
    pub fn sqrt(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(CfError::Series("square root needs constant term 1".into()));
        }
        let mut out = Series::zero(&self.orders);
        out.coeffs[0] = Q::one();
        let mut known: Vec<(Vec<usize>, Q)> = Vec::new();
        let half = Q::new(BigInt::one(), BigInt::from(2));
        for i in 1..out.coeffs.len() {
            let e = out.exps(i);
            let mut acc = self.coeffs[i].clone();
            for (f, c) in &known {
                if f.iter().zip(&e).all(|(a, b)| a <= b) {
                    let d: Vec<usize> = e.iter().zip(f).map(|(a, b)| a - b).collect();
                    if d.iter().any(|&x| x > 0) {
                        let bd = &out.coeffs[out.index(&d).unwrap()];
                        acc -= c * bd;
                    }
                }
            }
            let v = acc * &half;
            if !v.is_zero() {
                known.push((e, v.clone()));
            }
            out.coeffs[i] = v;
        }
        Ok(out)
    }

    pub fn derivative(&self, var: usize) -> Series {
        let mut orders = self.orders.clone();
        orders[var] = orders[var].saturating_sub(1);
        let mut out = Series::zero(&orders);
        for (mut e, c) in self.terms() {
            if e[var] > 0 {
                let k = e[var];
                e[var] -= 1;
                out.set_coeff(&e, c * q(k as i64));
            }
        }
        out
    }

    /// `x_var * d/dx_var`, which keeps the orders.
    pub fn euler(&self, var: usize) -> Series {
        let mut out = self.clone();
        for i in 0..out.coeffs.len() {
            let k = out.exps(i)[var];
            out.coeffs[i] *= q(k as i64);
        }
        out
    }

    /// Substitute `images[i]` for variable `i`. Images share one variable set and
    /// must have zero constant term; the result takes their common orders.
    pub fn compose(&self, images: &[Series]) -> Result<Series> {
        if images.len() != self.nvars() {
            return Err(CfError::Series(format!("compose needs {} images, got {}", self.nvars(), images.len())));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let mut orders = first.orders.clone();
        for im in images {
            if im.nvars() != first.nvars() {
                return Err(CfError::Series("compose images over different variables".into()));
            }
            if !im.constant_term().is_zero() {
                return Err(CfError::Series("compose needs inner series with zero constant term".into()));
            }
            orders = orders.iter().zip(&im.orders).map(|(a, b)| *a.min(b)).collect();
        }
        let images: Vec<Series> = images.iter().map(|im| im.truncate(&orders)).collect();
        let powers: Vec<Vec<Series>> = images
            .iter()
            .zip(&self.orders)
            .map(|(im, &o)| {
                let mut v = vec![Series::one(&orders)];
                for k in 1..=o {
                    let next = &v[k - 1] * im;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Series::zero(&orders);
        for (e, c) in self.terms() {
            let mut t = Series::constant(&orders, c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    if powers[i][k].is_zero() {
                        t = Series::zero(&orders);
                        break;
                    }
                    t = &t * &powers[i][k];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Evaluate variable `var` at `value`, removing it. Exact when every retained
    /// coefficient is a polynomial in `var` of degree at most `orders[var]`.
    pub fn set_var(&self, var: usize, value: &Q) -> Series {
        let mut orders = self.orders.clone();
        orders.remove(var);
        let mut out = Series::zero(&orders);
        let mut powers = vec![Q::one()];
        for k in 1..=self.orders[var] {
            let p = &powers[k - 1] * value;
            powers.push(p);
        }
        for (mut e, c) in self.terms() {
            let k = e.remove(var);
            let i = out.index(&e).unwrap();
            out.coeffs[i] += c * &powers[k];
        }
        out
    }

    /// The coefficient of `var^degree`, as a series in the remaining variables.
    pub fn slice(&self, var: usize, degree: usize) -> Series {
        let mut orders = self.orders.clone();
        orders.remove(var);
        let mut out = Series::zero(&orders);
        for (mut e, c) in self.terms() {
            if e.remove(var) == degree {
                out.set_coeff(&e, c);
            }
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Series {
        let mut orders = self.orders.clone();
        orders.swap(i, j);
        let mut out = Series::zero(&orders);
        for (mut e, c) in self.terms() {
            e.swap(i, j);
            out.set_coeff(&e, c);
        }
        out
    }

    /// Re-home variable `i` as variable `positions[i]` of a series with `orders`.
    pub fn embed(&self, orders: &[usize], positions: &[usize]) -> Series {
        let mut out = Series::zero(orders);
        for (e, c) in self.terms() {
            let mut f = vec![0; orders.len()];
            for (i, &k) in e.iter().enumerate() {
                f[positions[i]] += k;
            }
            out.set_coeff(&f, c);
        }
        out
    }

    /// Exact division by variable `var`; every term must contain it.
    pub fn div_by_var(&self, var: usize) -> Result<Series> {
        let mut orders = self.orders.clone();
        orders[var] = orders[var].saturating_sub(1);
        let mut out = Series::zero(&orders);
        for (mut e, c) in self.terms() {
            if e[var] == 0 {
                return Err(CfError::Series(format!("term at {e:?} is not divisible by variable {var}")));
            }
            e[var] -= 1;
            out.set_coeff(&e, c);
        }
        Ok(out)
    }

    /// `(F(..v..) - F(..w..)) / (v - w)` with `w` appended as a new last variable,
    /// expanded on monomials as `sum_i v^i w^(d-1-i)`. Both `v` and `w` get order
    /// `(orders[var] - 1) / 2`, on which every coefficient is exact.
    pub fn divided_difference(&self, var: usize) -> Series {
        let m = self.orders[var].saturating_sub(1) / 2;
        let mut orders = self.orders.clone();
        orders[var] = m;
        orders.push(m);
        let mut out = Series::zero(&orders);
        for (e, c) in self.terms() {
            let d = e[var];
            for i in 0..d {
                let mut f = e.clone();
                f[var] = i;
                f.push(d - 1 - i);
                if let Some(ix) = out.index(&f) {
                    out.coeffs[ix] += &c;
                }
            }
        }
        out
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, o: &Series) -> Series {
        self.assert_compatible(o);
        let m = self.min_orders(o);
        let (mut a, b) = (self.truncate(&m), o.truncate(&m));
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, o: &Series) -> Series {
        self + &(-o)
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, o: &Series) -> Series {
        self.assert_compatible(o);
        let m = self.min_orders(o);
        let mut out = Series::zero(&m);
        let a = self.truncate(&m).terms();
        let b = o.truncate(&m).terms();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                if !m.is_empty() && ea[0] + eb[0] > m[0] {
                    break;
                }
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if let Some(i) = out.index(&e) {
                    out.coeffs[i] += ca * cb;
                }
            }
        }
        out
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series{:?}{{", self.orders)?;
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e:?}: {c}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs_1d().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn sqrt_squares_back() {
        let a = Series::from_ints(12, &[1, -4]);
        let r = a.sqrt().unwrap();
        assert_eq!(&r * &r, a);
    }

    #[test]
    fn recip_round_trip() {
        let a = Series::from_ints(10, &[2, 3, -1, 5]);
        let b = Series::from_ints(10, &[1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(&a.div(&b).unwrap() * &b, a);
        assert!(Series::from_ints(3, &[0, 1]).recip().is_err());
    }

    #[test]
    fn catalan_functional_equation() {
        let c = Series::from_ints(12, &[1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012]);
        let x = Series::var(&[12], 0);
        let lhs = &(&Series::one(&[12]) - &(&x * &c)) * &c;
        assert_eq!(lhs, Series::one(&[12]));
    }

    #[test]
    fn derivative_and_compose() {
        let a = Series::from_ints(4, &[1, 1, 1, 1, 1]);
        assert_eq!(ints(&a.derivative(0)), vec![1, 2, 3, 4]);
        let x2 = Series::from_ints(8, &[0, 0, 1]);
        assert_eq!(ints(&a.compose(&[x2]).unwrap()), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert!(a.compose(&[Series::from_ints(4, &[1, 1])]).is_err());
    }

    #[test]
    fn divided_difference_of_powers() {
        // (x^3 - y^3)/(x - y) = x^2 + xy + y^2
        let a = Series::from_ints(5, &[0, 0, 0, 1]);
        let d = a.divided_difference(0);
        assert_eq!(d.orders(), &[2, 2]);
        let want: Vec<(Vec<usize>, Q)> = vec![(vec![0, 2], q(1)), (vec![1, 1], q(1)), (vec![2, 0], q(1))];
        assert_eq!(d.terms(), want);
    }

    #[test]
    fn set_swap_embed_slice() {
        let o = [2, 2];
        let mut s = Series::zero(&o);
        s.set_coeff(&[1, 2], q(3));
        s.set_coeff(&[0, 1], q(2));
        assert_eq!(s.swap_vars(0, 1).coeff(&[2, 1]), q(3));
        let at1 = s.set_var(1, &q(1));
        assert_eq!(at1.coeffs_1d()[..2], [q(2), q(3)]);
        assert_eq!(s.slice(0, 1).coeffs_1d(), &[q(0), q(0), q(3)]);
        let e = s.embed(&[2, 2, 2], &[0, 2]);
        assert_eq!(e.coeff(&[1, 0, 2]), q(3));
        assert_eq!(s.div_by_var(1).unwrap().coeff(&[1, 1]), q(3));
        assert!(s.div_by_var(0).is_err());
    }
}

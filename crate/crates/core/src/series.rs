//! Truncated formal power series with exact rational coefficients.
//!
//! A series of order `N` holds `c_0 ..= c_N`. Binary operations are exact
//! through the smaller of the two orders and never extend past it.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{big, factorial, int, Rational};
use crate::seq::{Offset, Sequence};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Builds a series of order `coeffs.len() - 1`. Empty input gives the
    /// zero series of order 0.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        PowerSeries::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        PowerSeries::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::from_fn(order, |_| Rational::zero())
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::monomial(order, 0, Rational::one())
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        PowerSeries::monomial(order, 1, Rational::one())
    }

    /// `c·x^k`, truncated.
    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        let mut s = PowerSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `e^{rx} = Σ r^n x^n / n!`.
    pub fn exp_linear(order: usize, r: i64) -> Self {
        let r = int(r);
        let mut c = Rational::one();
        PowerSeries::from_fn(order, |n| {
            if n > 0 {
                c = &c * &r / int(n as i64);
            }
            c.clone()
        })
    }

    pub fn sin(order: usize) -> Self {
        PowerSeries::from_fn(order, |n| match n % 4 {
            1 => Rational::new(BigInt::one(), factorial(n)),
            3 => Rational::new(-BigInt::one(), factorial(n)),
            _ => Rational::zero(),
        })
    }

    pub fn cos(order: usize) -> Self {
        PowerSeries::from_fn(order, |n| match n % 4 {
            0 => Rational::new(BigInt::one(), factorial(n)),
            2 => Rational::new(-BigInt::one(), factorial(n)),
            _ => Rational::zero(),
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries::new(self.coeffs.iter().take(order + 1).cloned().collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        PowerSeries::from_fn(order, |n| &self.coeffs[n] + &other.coeffs[n])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        PowerSeries::from_fn(order, |n| &self.coeffs[n] - &other.coeffs[n])
    }

    pub fn neg(&self) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = PowerSeries::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        PowerSeries::from_fn(self.order(), |n| {
            if n >= k {
                self.coeffs[n - k].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Quotient `self / divisor`, requiring a nonzero constant term in the
    /// divisor.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let g0 = &divisor.coeffs[0];
        if g0.is_zero() {
            return Err(Error::Series("divisor has zero constant term"));
        }
        let order = self.order().min(divisor.order());
        let mut q: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for (k, qk) in q.iter().enumerate() {
                acc -= qk * &divisor.coeffs[n - k];
            }
            q.push(acc / g0);
        }
        Ok(PowerSeries::new(q))
    }

    pub fn recip(&self) -> Result<Self> {
        PowerSeries::one(self.order()).div(self)
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return PowerSeries::zero(0);
        }
        PowerSeries::from_fn(self.order() - 1, |n| {
            &self.coeffs[n + 1] * int(n as i64 + 1)
        })
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integral(&self) -> Self {
        PowerSeries::from_fn(self.order() + 1, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                &self.coeffs[n - 1] / int(n as i64)
            }
        })
    }

    /// `self(inner)`, requiring `inner` to have zero constant term. The
    /// result has the smaller of the two orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Series("inner series has nonzero constant term"));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner in the series ring.
        let mut acc = PowerSeries::zero(order);
        for c in self.coeffs.iter().take(order + 1).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `exp(self)`, requiring zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("exp needs zero constant term"));
        }
        // n h_n = Σ_{k=1}^{n} k f_k h_{n-k}
        let order = self.order();
        let mut h: Vec<Rational> = vec![Rational::one()];
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * int(k as i64) * &h[n - k];
                }
            }
            h.push(acc / int(n as i64));
        }
        Ok(PowerSeries::new(h))
    }

    /// `log(self)`, requiring constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series("log needs constant term 1"));
        }
        // n g_n = n f_n - Σ_{k=1}^{n-1} k g_k f_{n-k}
        let order = self.order();
        let mut g: Vec<Rational> = vec![Rational::zero()];
        for n in 1..=order {
            let mut acc = &self.coeffs[n] * int(n as i64);
            for (k, gk) in g.iter().enumerate().skip(1) {
                acc -= gk * int(k as i64) * &self.coeffs[n - k];
            }
            g.push(acc / int(n as i64));
        }
        Ok(PowerSeries::new(g))
    }

    /// `self^{1/2}` with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        self.log()?.scale(&Rational::new(1.into(), 2.into())).exp()
    }

    /// Compositional inverse `g` with `self(g(y)) = y`, for series of the
    /// form `x + c_2 x^2 + ...`.
    ///
    /// Solved order by order: the degree-`n` coefficients of every power
    /// `g^k` with `k >= 2` only involve `g_1 .. g_{n-1}`, so each `g_n` falls
    /// out of one linear equation.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("reversion needs zero constant term"));
        }
        let order = self.order();
        if order >= 1 && !self.coeffs[1].is_one() {
            return Err(Error::Series("reversion needs linear coefficient 1"));
        }
        // powers[k][m] = [y^m] g^k, for k >= 1.
        let mut powers: Vec<Vec<Rational>> = vec![vec![Rational::zero(); order + 1]; order + 1];
        let mut g = vec![Rational::zero(); order + 1];
        for n in 1..=order {
            let mut rest = Rational::zero();
            for k in 2..=n {
                let mut acc = Rational::zero();
                for j in 1..=n + 1 - k {
                    if !g[j].is_zero() {
                        acc += &g[j] * &powers[k - 1][n - j];
                    }
                }
                if !self.coeffs[k].is_zero() {
                    rest += &self.coeffs[k] * &acc;
                }
                powers[k][n] = acc;
            }
            let target = if n == 1 {
                Rational::one()
            } else {
                Rational::zero()
            };
            g[n] = target - rest;
            powers[1][n] = g[n].clone();
        }
        Ok(PowerSeries::new(g))
    }

    /// `f'/f`, of order one less than `self`.
    pub fn logderiv(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Series(
                "logarithmic derivative needs nonzero constant term",
            ));
        }
        self.derivative()
            .div(&self.truncate(self.order().saturating_sub(1)))
    }
}

/// `Σ a_n x^n` over the logical indices of `a`, through degree `order`.
pub fn ogf_of(a: &Sequence, order: usize) -> Result<PowerSeries> {
    gf_of(a, order, |_| Rational::one())
}

/// `Σ a_n x^n / n!` over the logical indices of `a`, through degree `order`.
pub fn egf_of(a: &Sequence, order: usize) -> Result<PowerSeries> {
    gf_of(a, order, |n| Rational::new(BigInt::one(), factorial(n)))
}

fn gf_of(a: &Sequence, order: usize, weight: impl Fn(usize) -> Rational) -> Result<PowerSeries> {
    if a.end() <= order {
        return Err(Error::InsufficientTerms {
            needed: order + 1 - a.offset().index(),
            have: a.len(),
        });
    }
    Ok(PowerSeries::from_fn(order, |n| match a.get(n) {
        Some(t) => t * weight(n),
        None => Rational::zero(),
    }))
}

/// Recovers terms `offset ..= order` from an o.g.f.
pub fn seq_of_ogf(f: &PowerSeries, offset: Offset) -> Sequence {
    Sequence::new(offset, f.coeffs[offset.index()..].to_vec())
}

/// Recovers terms `offset ..= order` from an e.g.f.
pub fn seq_of_egf(f: &PowerSeries, offset: Offset) -> Sequence {
    let terms = (offset.index()..=f.order())
        .map(|n| &f.coeffs[n] * big(factorial(n)))
        .collect();
    Sequence::new(offset, terms)
}

/// Bernoulli number `B_n` with `B_1 = -1/2`, read off `x/(e^x - 1)`.
pub fn bernoulli(n: usize) -> Rational {
    bernoulli_upto(n).pop().expect("nonempty")
}

/// `B_0 ..= B_n`.
pub fn bernoulli_upto(n: usize) -> Vec<Rational> {
    // (e^x - 1)/x = Σ x^k/(k+1)!
    let denom = PowerSeries::from_fn(n, |k| Rational::new(BigInt::one(), factorial(k + 1)));
    let gf = denom.recip().expect("constant term is 1");
    seq_of_egf(&gf, Offset::Zero).into_terms()
}

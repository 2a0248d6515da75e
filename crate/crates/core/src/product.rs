//! Transforms defined through products and compositions of generating
//! functions: WEIGH, EULER, PARTITION, INVERT, EXP and REVERT. All act on
//! offset-1 sequences and are causal: output `n` only reads inputs `<= n`
//! (PARTITION reads values rather than positions; see [`partition_xform`]).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, mobius_mu};
use crate::rational::{int, Rational};
use crate::seq::{Offset, Sequence};
use crate::series::{egf_of, ogf_of, seq_of_egf, PowerSeries};

/// Given `c_1, c_2, ...` with `log(1 + B) = Σ c_m x^m / m`, recovers `b` from
/// `n b_n = c_n + Σ_{k=1}^{n-1} c_k b_{n-k}`.
fn from_log_coefficients(c: &[Rational]) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(c.len());
    for n in 1..=c.len() {
        let mut acc = c[n - 1].clone();
        for k in 1..n {
            acc += &c[k - 1] * &b[n - k - 1];
        }
        b.push(acc / int(n as i64));
    }
    b
}

/// `1 + Σ b_n x^n = Π (1 + x^n)^{a_n}`.
///
/// With `c_m = Σ_{d|m} (-1)^{m/d+1} d a_d` the logarithm of the product is
/// `Σ c_m x^m / m`.
pub fn weigh_xform(a: &Sequence) -> Result<Sequence> {
    a.require_offset(Offset::One)?;
    let t = a.terms();
    let c: Vec<Rational> = (1..=t.len())
        .map(|m| {
            divisors(m).into_iter().fold(Rational::zero(), |acc, d| {
                let term = &t[d - 1] * int(d as i64);
                if (m / d) % 2 == 1 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    Ok(Sequence::new(Offset::One, from_log_coefficients(&c)))
}

/// `1 + Σ b_n x^n = Π (1 - x^n)^{-a_n}`, through `c_n = Σ_{d|n} d a_d`.
pub fn euler_xform(a: &Sequence) -> Result<Sequence> {
    a.require_offset(Offset::One)?;
    let t = a.terms();
    let c: Vec<Rational> = (1..=t.len())
        .map(|n| {
            divisors(n)
                .into_iter()
                .fold(Rational::zero(), |acc, d| acc + &t[d - 1] * int(d as i64))
        })
        .collect();
    Ok(Sequence::new(Offset::One, from_log_coefficients(&c)))
}

/// Inverse of [`euler_xform`], failing with [`Error::NonIntegral`] when the
/// preimage is not integral.
pub fn euler_inv(b: &Sequence) -> Result<Sequence> {
    let a = euler_inv_rational(b)?;
    if let Some((i, v)) = a.terms().iter().enumerate().find(|(_, v)| !v.is_integer()) {
        return Err(Error::NonIntegral {
            index: i + 1,
            value: v.clone(),
        });
    }
    Ok(a)
}

/// Inverse of [`euler_xform`] over the rationals:
/// `c_n = n b_n - Σ_{k<n} c_k b_{n-k}`, `a_n = (1/n) Σ_{d|n} μ(n/d) c_d`.
pub fn euler_inv_rational(b: &Sequence) -> Result<Sequence> {
    b.require_offset(Offset::One)?;
    let t = b.terms();
    let mut c: Vec<Rational> = Vec::with_capacity(t.len());
    for n in 1..=t.len() {
        let mut acc = &t[n - 1] * int(n as i64);
        for k in 1..n {
            acc -= &c[k - 1] * &t[n - k - 1];
        }
        c.push(acc);
    }
    let terms = (1..=t.len())
        .map(|n| {
            let s = divisors(n).into_iter().fold(Rational::zero(), |acc, d| {
                match mobius_mu(n / d).expect("n/d >= 1") {
                    0 => acc,
                    1 => acc + &c[d - 1],
                    _ => acc - &c[d - 1],
                }
            });
            s / int(n as i64)
        })
        .collect();
    Ok(Sequence::new(Offset::One, terms))
}

/// `Σ_j C(alpha, j) (sign · x^step)^j` through degree `order`, with the
/// generalised binomial coefficient.
fn binomial_series(alpha: &Rational, step: usize, negate: bool, order: usize) -> PowerSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut c = Rational::one();
    let mut j = 0usize;
    while j * step <= order {
        let sign_flip = negate && j % 2 == 1;
        coeffs[j * step] = if sign_flip { -c.clone() } else { c.clone() };
        c = c * (alpha - int(j as i64)) / int(j as i64 + 1);
        j += 1;
    }
    PowerSeries::new(coeffs)
}

fn expand_product(
    a: &Sequence,
    factor: impl Fn(&Rational, usize, usize) -> PowerSeries,
) -> Result<Sequence> {
    a.require_offset(Offset::One)?;
    let order = a.len();
    let mut acc = PowerSeries::one(order);
    for (i, an) in a.terms().iter().enumerate() {
        if !an.is_zero() {
            acc = acc.mul(&factor(an, i + 1, order));
        }
    }
    Ok(Sequence::new(Offset::One, acc.coeffs()[1..].to_vec()))
}

/// WEIGH by multiplying out `Π (1 + x^n)^{a_n}` term by term.
pub fn weigh_xform_by_product(a: &Sequence) -> Result<Sequence> {
    expand_product(a, |an, n, order| binomial_series(an, n, false, order))
}

/// EULER by multiplying out `Π (1 - x^n)^{-a_n}` term by term.
pub fn euler_xform_by_product(a: &Sequence) -> Result<Sequence> {
    expand_product(a, |an, n, order| binomial_series(&-an, n, true, order))
}

/// Checks the PARTITION domain `1 <= a_1 <= a_2 <= ...` over the integers.
fn partition_parts(a: &Sequence) -> Result<Vec<usize>> {
    let mut parts: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    for (i, t) in a.terms().iter().enumerate() {
        let index = i + 1;
        if !t.is_integer() {
            return Err(Error::Domain {
                index,
                reason: format!("{t} is not an integer"),
            });
        }
        let v = t.to_integer();
        if !v.is_positive() {
            return Err(Error::Domain {
                index,
                reason: format!("{v} is not positive"),
            });
        }
        if v < prev {
            return Err(Error::Domain {
                index,
                reason: format!("{v} breaks the nondecreasing order"),
            });
        }
        // Parts larger than the prefix length never contribute.
        if v <= BigInt::from(a.len()) {
            let p: usize = (&v).try_into().expect("bounded by length");
            if parts.last() != Some(&p) {
                parts.push(p);
            }
        }
        prev = v;
    }
    Ok(parts)
}

/// `1 + Σ b_n x^n = Π 1/(1 - x^{c_n})` where `c` is `a` without duplicates.
///
/// `b_n` counts partitions of `n` into parts drawn from the values of `a`.
/// The output has one term per input term and treats the prefix's values as
/// the whole part set, so it is exact whenever every unseen term exceeds the
/// prefix length; [`partition_exact_len`] gives the guaranteed length.
pub fn partition_xform(a: &Sequence) -> Result<Sequence> {
    a.require_offset(Offset::One)?;
    let parts = partition_parts(a)?;
    let len = a.len();
    let mut counts = vec![BigInt::zero(); len + 1];
    counts[0] = BigInt::one();
    for p in parts {
        for n in p..=len {
            let add = counts[n - p].clone();
            counts[n] += add;
        }
    }
    Ok(Sequence::from_bigints(Offset::One, counts.split_off(1)))
}

/// Number of leading PARTITION outputs fixed by the prefix alone: terms past
/// the prefix are at least its last value `a_L`, so `b_n` is exact for
/// `n <= min(L, a_L)`.
pub fn partition_exact_len(a: &Sequence) -> usize {
    match a.terms().last() {
        Some(last) if last.is_integer() && last.is_positive() => {
            let last = last.to_integer();
            if last >= BigInt::from(a.len()) {
                a.len()
            } else {
                last.try_into().unwrap_or(0)
            }
        }
        _ => 0,
    }
}

/// `1 + Σ b_n x^n = 1 / (1 - Σ a_n x^n)`.
pub fn invert_xform(a: &Sequence) -> Result<Sequence> {
    a.require_offset(Offset::One)?;
    let t = a.terms();
    let mut b: Vec<Rational> = Vec::with_capacity(t.len());
    for n in 1..=t.len() {
        let mut acc = t[n - 1].clone();
        for k in 1..n {
            acc += &t[k - 1] * &b[n - k - 1];
        }
        b.push(acc);
    }
    Ok(Sequence::new(Offset::One, b))
}

/// Inverse of [`invert_xform`]: `A = B / (1 + B)`.
pub fn invert_inv(b: &Sequence) -> Result<Sequence> {
    b.require_offset(Offset::One)?;
    let t = b.terms();
    let mut a: Vec<Rational> = Vec::with_capacity(t.len());
    for n in 1..=t.len() {
        let mut acc = t[n - 1].clone();
        for k in 1..n {
            acc -= &a[k - 1] * &t[n - k - 1];
        }
        a.push(acc);
    }
    Ok(Sequence::new(Offset::One, a))
}

/// `1 + 𝓑(x) = exp 𝓐(x)` on exponential generating functions.
pub fn exp_xform(a: &Sequence) -> Result<Sequence> {
    a.require_offset(Offset::One)?;
    if a.is_empty() {
        return Ok(a.clone());
    }
    let f = egf_of(a, a.len())?;
    Ok(seq_of_egf(&f.exp()?, Offset::One))
}

/// Inverse of [`exp_xform`]: `𝓐 = log(1 + 𝓑)`.
pub fn log_xform(b: &Sequence) -> Result<Sequence> {
    b.require_offset(Offset::One)?;
    if b.is_empty() {
        return Ok(b.clone());
    }
    let f = egf_of(b, b.len())?.add(&PowerSeries::one(b.len()));
    Ok(seq_of_egf(&f.log()?, Offset::One))
}

/// For `y = Σ a_n x^n` with `a_1 = 1`, the `b` with
/// `x = Σ (-1)^{n+1} b_n y^n`.
pub fn revert_xform(a: &Sequence) -> Result<Sequence> {
    a.require_offset(Offset::One)?;
    if a.is_empty() {
        return Ok(a.clone());
    }
    if !a.terms()[0].is_one() {
        return Err(Error::Domain {
            index: 1,
            reason: format!("REVERT needs a_1 = 1, got {}", a.terms()[0]),
        });
    }
    let g = ogf_of(a, a.len())?.reversion()?;
    let terms = (1..=a.len())
        .map(|n| {
            let c = g.coeff(n);
            if n % 2 == 1 {
                c
            } else {
                -c
            }
        })
        .collect();
    Ok(Sequence::new(Offset::One, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s1(t: &[i64]) -> Sequence {
        Sequence::from_ints(Offset::One, t)
    }

    fn e1(len: usize) -> Sequence {
        let mut v = vec![0; len];
        v[0] = 1;
        s1(&v)
    }

    /// Oracle: partitions of n into distinct parts, by enumeration.
    fn distinct_partitions(n: usize, max_part: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n))
            .map(|p| distinct_partitions(n - p, p - 1))
            .sum()
    }

    /// Oracle: unrestricted partitions of n, parts at most `max_part`.
    fn partitions(n: usize, max_part: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).map(|p| partitions(n - p, p)).sum()
    }

    #[test]
    fn weigh_examples() {
        let expected: Vec<i64> = (1..=8).map(|n| distinct_partitions(n, n) as i64).collect();
        assert_eq!(expected, vec![1, 1, 2, 2, 3, 4, 5, 6]);
        assert_eq!(weigh_xform(&s1(&[1; 8])).unwrap(), s1(&expected));
        assert_eq!(
            weigh_xform(&s1(&[1, 1, 1, 2, 3, 6, 12])).unwrap(),
            s1(&[1, 1, 2, 3, 6, 12, 25])
        );
        assert_eq!(weigh_xform(&e1(5)).unwrap(), e1(5));
    }

    #[test]
    fn euler_examples() {
        let p: Vec<i64> = (1..=6).map(|n| partitions(n, n) as i64).collect();
        assert_eq!(p, vec![1, 2, 3, 5, 7, 11]);
        assert_eq!(euler_xform(&s1(&[1; 6])).unwrap(), s1(&p));
        assert_eq!(
            euler_xform(&s1(&[1, 1, 2, 4, 9, 20, 48])).unwrap(),
            s1(&[1, 2, 4, 9, 20, 48, 115])
        );
        assert_eq!(euler_xform(&e1(6)).unwrap(), s1(&[1; 6]));
    }

    #[test]
    fn euler_inverse_examples() {
        assert_eq!(euler_inv(&s1(&[1, 2, 3, 5, 7, 11])).unwrap(), s1(&[1; 6]));
        assert_eq!(euler_inv(&s1(&[1, 1])).unwrap(), s1(&[1, 0]));
        let half = Sequence::new(Offset::One, vec![int(1), Rational::new(1.into(), 2.into())]);
        assert!(matches!(
            euler_inv(&half),
            Err(Error::NonIntegral { index: 2, .. })
        ));
        let r = euler_inv_rational(&half).unwrap();
        assert_eq!(r.terms()[1], Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn partition_examples() {
        let s34 = s1(&[1, 2, 2, 4, 5, 7, 9, 12, 16, 20, 25, 32]);
        assert_eq!(partition_xform(&s34).unwrap(), s34);
        assert_eq!(partition_xform(&s1(&[1; 12])).unwrap(), s1(&[1; 12]));
        let naturals: Vec<i64> = (1..=12).collect();
        let p: Vec<i64> = (1..=12).map(|n| partitions(n, n) as i64).collect();
        assert_eq!(p, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        assert_eq!(partition_xform(&s1(&naturals)).unwrap(), s1(&p));
    }

    #[test]
    fn partition_domain() {
        assert!(matches!(
            partition_xform(&s1(&[0, 1])),
            Err(Error::Domain { index: 1, .. })
        ));
        assert!(matches!(
            partition_xform(&s1(&[1, 3, 2])),
            Err(Error::Domain { index: 3, .. })
        ));
        // a_1 > 1 yields b_1 = 0, which is rejected on the next application.
        let out = partition_xform(&s1(&[2, 2, 3])).unwrap();
        assert_eq!(out, s1(&[0, 1, 1]));
        assert!(partition_xform(&out).is_err());
    }

    #[test]
    fn partition_exact_lengths() {
        assert_eq!(partition_exact_len(&s1(&[1, 2, 2, 4, 5])), 5);
        assert_eq!(partition_exact_len(&s1(&[1; 12])), 1);
        assert_eq!(partition_exact_len(&s1(&[1, 2, 3])), 3);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(
            invert_xform(&s1(&[1, 1, 2, 5, 14])).unwrap(),
            s1(&[1, 2, 5, 14, 42])
        );
        assert_eq!(
            invert_xform(&s1(&[1, 1, 3, 11, 45])).unwrap(),
            s1(&[1, 2, 6, 22, 90])
        );
    }

    #[test]
    fn invert_matches_series_division() {
        let a = s1(&[2, -1, 3, 0, 5, 7]);
        let f = ogf_of(&a, 6).unwrap();
        let g = f.div(&PowerSeries::one(6).sub(&f)).unwrap();
        assert_eq!(invert_xform(&a).unwrap().terms(), &g.coeffs()[1..]);
    }

    #[test]
    fn exp_examples() {
        assert_eq!(exp_xform(&s1(&[1; 5])).unwrap(), s1(&[1, 2, 5, 15, 52]));
        assert_eq!(
            exp_xform(&s1(&[1, 1, 2, 6, 24])).unwrap(),
            s1(&[1, 2, 6, 24, 120])
        );
    }

    #[test]
    fn revert_examples() {
        assert_eq!(revert_xform(&e1(6)).unwrap(), e1(6));
        let alt = s1(&[1, -1, 1, -1, 1]);
        assert_eq!(revert_xform(&alt).unwrap(), alt);
        let s44 = s1(&[1, 2, 4, 7, 10, 12, 18, 40, 44, 45]);
        assert_eq!(revert_xform(&s44).unwrap(), s44);
        assert!(revert_xform(&s1(&[2, 1])).is_err());
    }

    fn arb_ints(len: usize) -> impl Strategy<Value = Sequence> {
        prop::collection::vec(-6i64..7, len).prop_map(|v| s1(&v))
    }

    proptest! {
        #[test]
        fn euler_routes_agree(a in arb_ints(12)) {
            prop_assert_eq!(euler_xform(&a).unwrap(), euler_xform_by_product(&a).unwrap());
        }

        #[test]
        fn weigh_routes_agree(a in arb_ints(12)) {
            prop_assert_eq!(weigh_xform(&a).unwrap(), weigh_xform_by_product(&a).unwrap());
        }

        #[test]
        fn roundtrips(a in arb_ints(12)) {
            prop_assert_eq!(euler_inv(&euler_xform(&a).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(invert_inv(&invert_xform(&a).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(log_xform(&exp_xform(&a).unwrap()).unwrap(), a);
        }

        #[test]
        fn revert_is_an_involution(v in prop::collection::vec(-9i64..10, 11)) {
            let mut t = vec![1];
            t.extend(v);
            let a = s1(&t);
            let b = revert_xform(&a).unwrap();
            prop_assert!(b.is_integral());
            prop_assert_eq!(revert_xform(&b).unwrap(), a);
        }

        #[test]
        fn forward_transforms_preserve_integrality(a in arb_ints(12)) {
            for f in [weigh_xform, euler_xform, invert_xform, exp_xform] {
                prop_assert!(f(&a).unwrap().is_integral());
            }
        }
    }
}

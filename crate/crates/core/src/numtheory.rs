//! MÖBIUS and its inverse, the divisor-sum transform, on offset-1 sequences.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::seq::{Offset, Sequence};
use crate::series::{ogf_of, PowerSeries};

/// Divisors of `n` in increasing order, by trial division.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Möbius function.
pub fn mobius_mu(n: usize) -> Result<i32> {
    if n == 0 {
        return Err(Error::Domain {
            index: 0,
            reason: "Möbius function is defined for n >= 1".into(),
        });
    }
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

fn mu(n: usize) -> i32 {
    mobius_mu(n).expect("n >= 1")
}

/// `b_n = Σ_{d|n} μ(n/d) a_d`.
pub fn mobius_xform(a: &Sequence) -> Result<Sequence> {
    a.require_offset(Offset::One)?;
    let t = a.terms();
    let terms = (1..=t.len())
        .map(|n| {
            divisors(n)
                .into_iter()
                .fold(Rational::zero(), |acc, d| match mu(n / d) {
                    0 => acc,
                    1 => acc + &t[d - 1],
                    _ => acc - &t[d - 1],
                })
        })
        .collect();
    Ok(Sequence::new(Offset::One, terms))
}

/// `a_n = Σ_{d|n} b_d`, the inverse of [`mobius_xform`].
pub fn divisor_xform(b: &Sequence) -> Result<Sequence> {
    b.require_offset(Offset::One)?;
    let t = b.terms();
    let terms = (1..=t.len())
        .map(|n| {
            divisors(n)
                .into_iter()
                .fold(Rational::zero(), |acc, d| acc + &t[d - 1])
        })
        .collect();
    Ok(Sequence::new(Offset::One, terms))
}

/// Checks `Σ a_n x^n = Σ b_n x^n / (1 - x^n)` through degree `order`, with
/// the right side expanded as a sum of power series quotients.
pub fn lambert_check(a: &Sequence, b: &Sequence, order: usize) -> bool {
    if a.offset() != Offset::One || b.offset() != Offset::One || a.len() < order || b.len() < order
    {
        return false;
    }
    let Ok(lhs) = ogf_of(a, order) else {
        return false;
    };
    let mut rhs = PowerSeries::zero(order);
    for n in 1..=order {
        let bn = b.get(n).expect("length checked");
        if bn.is_zero() {
            continue;
        }
        let numer = PowerSeries::monomial(order, n, bn.clone());
        let denom = PowerSeries::one(order).sub(&PowerSeries::monomial(
            order,
            n,
            Rational::from_integer(1.into()),
        ));
        match numer.div(&denom) {
            Ok(q) => rhs = rhs.add(&q),
            Err(_) => return false,
        }
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s1(t: &[i64]) -> Sequence {
        Sequence::from_ints(Offset::One, t)
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius_mu(1).unwrap(), 1);
        assert_eq!(mobius_mu(4).unwrap(), 0);
        assert_eq!(mobius_mu(6).unwrap(), 1);
        assert_eq!(mobius_mu(30).unwrap(), -1);
        assert!(mobius_mu(0).is_err());
    }

    #[test]
    fn mobius_of_divisor_counts_is_ones() {
        assert_eq!(mobius_xform(&s1(&[1, 2, 2, 3, 2, 4])).unwrap(), s1(&[1; 6]));
        assert_eq!(
            divisor_xform(&s1(&[1; 6])).unwrap(),
            s1(&[1, 2, 2, 3, 2, 4])
        );
    }

    #[test]
    fn unit_vector_gives_mobius_function() {
        let e1 = s1(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            mobius_xform(&e1).unwrap(),
            s1(&[1, -1, -1, 0, -1, 1, -1, 0, 0, 1])
        );
        assert_eq!(divisor_xform(&e1).unwrap(), s1(&[1; 10]));
    }

    #[test]
    fn rejects_offset_zero() {
        let a = Sequence::from_ints(Offset::Zero, &[1, 2]);
        assert!(mobius_xform(&a).is_err());
        assert!(divisor_xform(&a).is_err());
    }

    #[test]
    fn lambert_series() {
        let d = s1(&[1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6, 2, 4, 4, 5, 2, 6, 2, 6]);
        assert!(lambert_check(&d, &s1(&[1; 20]), 20));
        // S23 satisfies a_{n+1} = Σ_{d|n} a_d, so its shift is the divisor
        // transform of the sequence itself.
        let mut t = vec![Rational::from_integer(1.into())];
        for n in 1..16 {
            let next = divisors(n)
                .into_iter()
                .fold(Rational::zero(), |acc, d| acc + &t[d - 1]);
            t.push(next);
        }
        let s23 = Sequence::new(Offset::One, t);
        assert_eq!(
            s23.truncated(11),
            s1(&[1, 1, 2, 3, 5, 6, 10, 11, 16, 19, 26])
        );
        let shifted = Sequence::new(Offset::One, s23.terms()[1..].to_vec());
        assert!(lambert_check(&shifted, &s23, 15));
        assert!(!lambert_check(&s1(&[1, 2, 2, 3]), &s1(&[1, 1, 1, 2]), 4));
    }

    proptest! {
        #[test]
        fn mobius_and_divisor_invert(v in prop::collection::vec((-50i64..50, 1i64..7), 30)) {
            let a = Sequence::new(Offset::One, v.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect());
            prop_assert_eq!(mobius_xform(&divisor_xform(&a).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(divisor_xform(&mobius_xform(&a).unwrap()).unwrap(), a);
        }

        #[test]
        fn lambert_holds_for_random_sequences(v in prop::collection::vec(-50i64..50, 20)) {
            let a = s1(&v);
            let b = mobius_xform(&a).unwrap();
            prop_assert!(lambert_check(&a, &b, 20));
        }
    }
}

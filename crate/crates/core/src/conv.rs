//! CONV, EXP-CONV and the F-CONV family. All act on offset-0 sequences.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{big, Rational};
use crate::seq::{Offset, Sequence};

/// The binary function of an F-CONV transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Lcm,
    Gcd,
    And,
    Or,
    Xor,
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 5] = [
        BinaryOp::Lcm,
        BinaryOp::Gcd,
        BinaryOp::And,
        BinaryOp::Or,
        BinaryOp::Xor,
    ];

    /// `GCD(0, x) = x`, `LCM(0, x) = 0`; bitwise ops act on the binary
    /// representation of nonnegative integers.
    pub fn apply(self, x: &BigUint, y: &BigUint) -> BigUint {
        match self {
            BinaryOp::Lcm => x.lcm(y),
            BinaryOp::Gcd => x.gcd(y),
            BinaryOp::And => x & y,
            BinaryOp::Or => x | y,
            BinaryOp::Xor => x ^ y,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BinaryOp::Lcm => "LCM",
            BinaryOp::Gcd => "GCD",
            BinaryOp::And => "AND",
            BinaryOp::Or => "OR",
            BinaryOp::Xor => "XOR",
        }
    }
}

impl fmt::Display for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `b_n = Σ_{k=0}^n a_k a_{n-k}`, i.e. `B = A^2`.
pub fn conv_xform(a: &Sequence) -> Result<Sequence> {
    a.require_offset(Offset::Zero)?;
    let t = a.terms();
    let terms = (0..t.len())
        .map(|n| (0..=n).fold(Rational::zero(), |acc, k| acc + &t[k] * &t[n - k]))
        .collect();
    Ok(Sequence::new(Offset::Zero, terms))
}

/// `b_n = Σ_{k=0}^n C(n,k) a_k a_{n-k}`, i.e. `𝓑 = 𝓐^2`.
pub fn expconv_xform(a: &Sequence) -> Result<Sequence> {
    a.require_offset(Offset::Zero)?;
    let t = a.terms();
    let mut row = vec![BigInt::from(1)];
    let mut terms = Vec::with_capacity(t.len());
    for n in 0..t.len() {
        if n > 0 {
            let mut next = vec![BigInt::from(1); n + 1];
            for k in 1..n {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        let b = (0..=n).fold(Rational::zero(), |acc, k| {
            acc + big(row[k].clone()) * &t[k] * &t[n - k]
        });
        terms.push(b);
    }
    Ok(Sequence::new(Offset::Zero, terms))
}

fn nonnegative_integers(a: &Sequence) -> Result<Vec<BigUint>> {
    a.terms()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let index = a.offset().index() + i;
            if !t.is_integer() {
                return Err(Error::Domain {
                    index,
                    reason: format!("{t} is not an integer"),
                });
            }
            let n = t.to_integer();
            match n.sign() {
                Sign::Minus => Err(Error::Domain {
                    index,
                    reason: format!("{t} is negative"),
                }),
                _ => Ok(n.magnitude().clone()),
            }
        })
        .collect()
}

/// `b_n = Σ_{k=0}^n F(a_k, a_{n-k})` over nonnegative integers.
pub fn fconv_xform(a: &Sequence, op: BinaryOp) -> Result<Sequence> {
    a.require_offset(Offset::Zero)?;
    let t = nonnegative_integers(a)?;
    let terms = (0..t.len())
        .map(|n| {
            let sum = (0..=n).fold(BigUint::zero(), |acc, k| acc + op.apply(&t[k], &t[n - k]));
            Rational::from_integer(BigInt::from(sum))
        })
        .collect();
    Ok(Sequence::new(Offset::Zero, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{egf_of, ogf_of, seq_of_egf, seq_of_ogf};
    use num_traits::Signed;
    use proptest::prelude::*;

    fn s0(t: &[i64]) -> Sequence {
        Sequence::from_ints(Offset::Zero, t)
    }

    #[test]
    fn conv_examples() {
        assert_eq!(conv_xform(&s0(&[1, 1, 2, 5])).unwrap(), s0(&[1, 2, 5, 14]));
        assert_eq!(conv_xform(&s0(&[1])).unwrap(), s0(&[1]));
        assert_eq!(conv_xform(&s0(&[1, 2, 3])).unwrap(), s0(&[1, 4, 10]));
        assert!(conv_xform(&Sequence::from_ints(Offset::One, &[1])).is_err());
    }

    #[test]
    fn expconv_examples() {
        assert_eq!(
            expconv_xform(&s0(&[1, 1, 2, 6])).unwrap(),
            s0(&[1, 2, 6, 24])
        );
        assert_eq!(expconv_xform(&s0(&[1, 0, 0])).unwrap(), s0(&[1, 0, 0]));
        assert_eq!(expconv_xform(&s0(&[1, 1, 1])).unwrap(), s0(&[1, 2, 4]));
    }

    #[test]
    fn fconv_examples() {
        let xor = fconv_xform(&s0(&[0, 1, 2]), BinaryOp::Xor).unwrap();
        assert_eq!(xor.terms()[2], Rational::from_integer(4.into()));
        let and = fconv_xform(&s0(&[1, 1, 2, 1]), BinaryOp::And).unwrap();
        assert_eq!(and, s0(&[1, 2, 1, 2]));
        let gcd = fconv_xform(&s0(&[1, 1, 2, 3, 4]), BinaryOp::Gcd).unwrap();
        assert_eq!(gcd.terms()[4], Rational::from_integer(6.into()));
    }

    #[test]
    fn fconv_zero_conventions() {
        let z = BigUint::zero();
        let five = BigUint::from(5u8);
        assert_eq!(BinaryOp::Gcd.apply(&z, &five), five);
        assert_eq!(BinaryOp::Lcm.apply(&z, &five), z);
    }

    #[test]
    fn fconv_rejects_bad_terms() {
        assert!(matches!(
            fconv_xform(&s0(&[1, -2]), BinaryOp::Or),
            Err(Error::Domain { index: 1, .. })
        ));
        let half = Sequence::new(Offset::Zero, vec![Rational::new(1.into(), 2.into())]);
        assert!(fconv_xform(&half, BinaryOp::Lcm).is_err());
    }

    proptest! {
        #[test]
        fn conv_is_ogf_square(v in prop::collection::vec(-20i64..20, 16)) {
            let a = s0(&v);
            let f = ogf_of(&a, 15).unwrap();
            prop_assert_eq!(conv_xform(&a).unwrap(), seq_of_ogf(&f.mul(&f), Offset::Zero));
        }

        #[test]
        fn expconv_is_egf_square(v in prop::collection::vec(-20i64..20, 16)) {
            let a = s0(&v);
            let f = egf_of(&a, 15).unwrap();
            prop_assert_eq!(expconv_xform(&a).unwrap(), seq_of_egf(&f.mul(&f), Offset::Zero));
        }

        #[test]
        fn fconv_outputs_nonnegative_integers(v in prop::collection::vec(0i64..200, 1..14)) {
            for op in BinaryOp::ALL {
                let b = fconv_xform(&s0(&v), op).unwrap();
                prop_assert!(b.is_integral());
                prop_assert!(b.terms().iter().all(|t| !t.is_negative()));
            }
        }
    }
}

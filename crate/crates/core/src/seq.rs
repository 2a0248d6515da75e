//! Finite sequence prefixes and the auxiliary operators R, L, N, M.
//!
//! A [`Sequence`] is an exact prefix `[a_o, a_{o+1}, ...]` where the offset
//! `o` is 0 or 1. All operators return new values.
//!
//! N and M are stated for offset-0 sequences; for offset-1 sequences the same
//! rule is applied at the sequence's own first index:
//!
//! ```text
//! N∘[a_1, a_2, a_3, ...] = [a_1, -a_2, -a_3, ...]
//! M∘[a_1, a_2, a_3, ...] = [a_2, 2a_2, 2a_3, ...]
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, ParseError, Result};
use crate::rational::{parse_rational, Rational};

/// Logical index of the first stored term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Offset {
    Zero,
    One,
}

impl Offset {
    pub fn index(self) -> usize {
        match self {
            Offset::Zero => 0,
            Offset::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Offset> {
        match i {
            0 => Some(Offset::Zero),
            1 => Some(Offset::One),
            _ => None,
        }
    }
}

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    offset: Offset,
    terms: Vec<Rational>,
}

impl Sequence {
    pub fn new(offset: Offset, terms: Vec<Rational>) -> Self {
        Sequence { offset, terms }
    }

    pub fn from_ints(offset: Offset, terms: &[i64]) -> Self {
        Sequence::new(
            offset,
            terms
                .iter()
                .map(|&t| Rational::from_integer(t.into()))
                .collect(),
        )
    }

    pub fn from_bigints(offset: Offset, terms: Vec<BigInt>) -> Self {
        Sequence::new(
            offset,
            terms.into_iter().map(Rational::from_integer).collect(),
        )
    }

    /// Parses a comma-separated list of integers and reduced fractions `p/q`.
    /// Whitespace and newlines are accepted as separators too.
    pub fn parse(text: &str, offset: Offset) -> Result<Self, ParseError> {
        let mut terms = Vec::new();
        let mut position = 1;
        for piece in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if !piece.is_empty() {
                let term =
                    parse_rational(piece).map_err(|e| ParseError::new(position, e.message))?;
                terms.push(term);
            }
            position += piece.chars().count() + 1;
        }
        Ok(Sequence::new(offset, terms))
    }

    pub fn offset(&self) -> Offset {
        self.offset
    }

    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Rational> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term at logical index `i`.
    pub fn get(&self, i: usize) -> Option<&Rational> {
        i.checked_sub(self.offset.index())
            .and_then(|pos| self.terms.get(pos))
    }

    /// One past the last logical index held.
    pub fn end(&self) -> usize {
        self.offset.index() + self.terms.len()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|t| t.is_integer())
    }

    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.terms
            .iter()
            .map(|t| t.is_integer().then(|| t.to_integer()))
            .collect()
    }

    pub fn truncated(&self, n: usize) -> Sequence {
        Sequence::new(self.offset, self.terms.iter().take(n).cloned().collect())
    }

    pub fn with_offset(self, offset: Offset) -> Sequence {
        Sequence::new(offset, self.terms)
    }

    pub fn push(&mut self, term: Rational) {
        self.terms.push(term);
    }

    pub(crate) fn require_len(&self, needed: usize) -> Result<()> {
        if self.terms.len() < needed {
            return Err(Error::InsufficientTerms {
                needed,
                have: self.terms.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_offset(&self, expected: Offset) -> Result<()> {
        if self.offset != expected {
            return Err(Error::OffsetMismatch {
                expected,
                found: self.offset,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// R: prepend 1 at the first logical index.
pub fn prepend_one(a: &Sequence) -> Sequence {
    let mut terms = Vec::with_capacity(a.len() + 1);
    terms.push(Rational::one());
    terms.extend(a.terms.iter().cloned());
    Sequence::new(a.offset, terms)
}

/// L: drop the first term.
pub fn drop_first(a: &Sequence) -> Result<Sequence> {
    a.require_len(1)?;
    Ok(Sequence::new(a.offset, a.terms[1..].to_vec()))
}

/// N: keep the first term and negate the rest.
pub fn negate_tail(a: &Sequence) -> Result<Sequence> {
    a.require_len(1)?;
    let terms = a
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| if i == 0 { t.clone() } else { -t })
        .collect();
    Ok(Sequence::new(a.offset, terms))
}

/// M: `[a_o, a_{o+1}, a_{o+2}, ...] -> [a_{o+1}, 2a_{o+1}, 2a_{o+2}, ...]`.
///
/// The output has the same length as the input.
pub fn lead_and_double(a: &Sequence) -> Result<Sequence> {
    a.require_len(2)?;
    let two = Rational::from_integer(2.into());
    let mut terms = Vec::with_capacity(a.len());
    terms.push(a.terms[1].clone());
    terms.extend(a.terms[1..].iter().map(|t| t * &two));
    Ok(Sequence::new(a.offset, terms))
}

/// True iff both sequences share an offset and agree on the first `n` terms.
pub fn prefix_eq(a: &Sequence, b: &Sequence, n: usize) -> Result<bool> {
    a.require_len(n)?;
    b.require_len(n)?;
    Ok(a.offset == b.offset && a.terms[..n] == b.terms[..n])
}

/// `n` zero terms.
pub fn zeros(offset: Offset, n: usize) -> Sequence {
    Sequence::new(offset, vec![Rational::zero(); n])
}

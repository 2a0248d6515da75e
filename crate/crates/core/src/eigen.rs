//! Eigen-sequence solvers.
//!
//! An operator expression names the equation a sequence satisfies:
//!
//! - `R^s∘T` means `a = R^s∘T∘a`. The first `s` terms are 1 and
//!   `a_{o+n+s} = (T∘a)_{o+n}`, so the sequence bootstraps from its prefix
//!   whenever `T` is causal.
//! - `M^-1∘T` means `T∘a = M∘a` with `a_o = 1`.
//! - `N^-1∘T` means `T∘a = N∘a` with `a_o = 1`.
//! - a bare `T` means `T∘a = a`.
//!
//! The doubling and sign equations are solved one term at a time. Once the
//! earlier terms are fixed, `(T∘a)_n = α + β a_n` for a causal transform
//! that is affine in its newest input, and [`affine_probe`] recovers `α` and
//! `β` by evaluating `T` at three values of `a_n`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::conv::{conv_xform, expconv_xform, fconv_xform, BinaryOp};
use crate::error::{Error, Result};
use crate::expr::{Factor, OpName, TransformExpr};
use crate::linear::{binomial_xform, stirling_xform_pow};
use crate::numtheory::{divisor_xform, mobius_xform};
use crate::product::{
    euler_inv, euler_xform, exp_xform, invert_inv, invert_xform, log_xform, partition_exact_len,
    partition_xform, revert_xform, weigh_xform,
};
use crate::rational::{int, Rational};
use crate::seq::{drop_first, lead_and_double, negate_tail, prepend_one, Offset, Sequence};

fn repeat(a: &Sequence, times: u32, f: impl Fn(&Sequence) -> Result<Sequence>) -> Result<Sequence> {
    let mut cur = a.clone();
    for _ in 0..times {
        cur = f(&cur)?;
    }
    Ok(cur)
}

/// Applies one factor, power included.
pub fn apply_factor(factor: Factor, a: &Sequence) -> Result<Sequence> {
    let p = factor.power;
    let k = p.unsigned_abs();
    let not_invertible = || Error::NotInvertible(factor.name.to_string());
    match factor.name {
        OpName::R if p > 0 => repeat(a, k, |s| Ok(prepend_one(s))),
        OpName::L if p > 0 => repeat(a, k, drop_first),
        OpName::N => {
            if k % 2 == 1 {
                negate_tail(a)
            } else {
                Ok(a.clone())
            }
        }
        OpName::M if p > 0 => repeat(a, k, lead_and_double),
        OpName::Binomial => binomial_xform(a, p),
        OpName::Stirling => stirling_xform_pow(a, p),
        OpName::Conv if p > 0 => repeat(a, k, conv_xform),
        OpName::ExpConv if p > 0 => repeat(a, k, expconv_xform),
        OpName::FConv(op) if p > 0 => repeat(a, k, |s| fconv_xform(s, op)),
        OpName::Mobius if p > 0 => repeat(a, k, mobius_xform),
        OpName::Mobius => repeat(a, k, divisor_xform),
        OpName::Weigh if p > 0 => repeat(a, k, weigh_xform),
        OpName::Euler if p > 0 => repeat(a, k, euler_xform),
        OpName::Euler => repeat(a, k, euler_inv),
        OpName::Partition if p > 0 => repeat(a, k, partition_xform),
        OpName::Invert if p > 0 => repeat(a, k, invert_xform),
        OpName::Invert => repeat(a, k, invert_inv),
        OpName::Revert => repeat(a, k, revert_xform),
        OpName::Exp if p > 0 => repeat(a, k, exp_xform),
        OpName::Exp => repeat(a, k, log_xform),
        _ => Err(not_invertible()),
    }
}

/// Applies the factors right to left. Failures name the 1-based factor
/// position in written order.
pub fn apply_expr(e: &TransformExpr, a: &Sequence) -> Result<Sequence> {
    let mut cur = a.clone();
    for (i, factor) in e.factors().iter().enumerate().rev() {
        cur = apply_factor(*factor, &cur).map_err(|source| Error::InFactor {
            factor: i + 1,
            name: factor.to_string(),
            source: Box::new(source),
        })?;
    }
    Ok(cur)
}

/// A normalised eigen-equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigenProblem {
    /// `a = R^shift∘inner∘a`.
    Shift { shift: usize, inner: TransformExpr },
    /// `inner∘a = M∘a`.
    Doubling(TransformExpr),
    /// `inner∘a = N∘a`.
    Sign(TransformExpr),
    /// `inner∘a = a`.
    Fixed(TransformExpr),
}

impl EigenProblem {
    pub fn from_expr(e: &TransformExpr) -> Result<Self> {
        let unsupported = || Error::UnsupportedEigen(e.to_string());
        let factors = e.factors();
        let lead = factors.iter().take_while(|f| f.name == OpName::R).count();
        let rest = |from: usize| {
            TransformExpr::from_factors(factors[from..].to_vec())
                .filter(TransformExpr::is_pure)
                .ok_or_else(unsupported)
        };
        if lead > 0 {
            let shift = factors[..lead].iter().map(|f| f.power as usize).sum();
            return Ok(EigenProblem::Shift {
                shift,
                inner: rest(lead)?,
            });
        }
        match factors[0] {
            Factor {
                name: OpName::M,
                power: -1,
            } => Ok(EigenProblem::Doubling(rest(1)?)),
            Factor {
                name: OpName::N,
                power,
            } if power % 2 != 0 => Ok(EigenProblem::Sign(rest(1)?)),
            _ => Ok(EigenProblem::Fixed(rest(0)?)),
        }
    }

    pub fn inner(&self) -> &TransformExpr {
        match self {
            EigenProblem::Shift { inner, .. } => inner,
            EigenProblem::Doubling(t) | EigenProblem::Sign(t) | EigenProblem::Fixed(t) => t,
        }
    }

    /// Solves for `n_terms` terms starting at `offset`. A bare `REVERT`
    /// runs [`revert_lex_search`] with [`DEFAULT_REVERT_CAP`].
    pub fn solve(&self, n_terms: usize, offset: Offset) -> Result<Sequence> {
        match self {
            EigenProblem::Shift { shift, inner } => {
                solve_shift_eigen(inner, *shift, n_terms, offset)
            }
            EigenProblem::Doubling(t) => solve_m_eigen(t, n_terms, offset),
            EigenProblem::Sign(t) => solve_n_eigen(t, n_terms, offset),
            EigenProblem::Fixed(t) => match t.factors() {
                [Factor {
                    name: OpName::Revert,
                    power,
                }] if power % 2 != 0 => {
                    revert_lex_search(n_terms, DEFAULT_REVERT_CAP).map(|r| r.terms)
                }
                _ => Err(Error::UnsupportedEigen(t.to_string())),
            },
        }
    }

    /// Whether `a` satisfies the equation on every index both sides define.
    pub fn holds_for(&self, a: &Sequence) -> Result<bool> {
        let (lhs, rhs) = match self {
            EigenProblem::Shift { shift, inner } => {
                let b = apply_expr(inner, a)?;
                (
                    a.clone(),
                    apply_factor(Factor::new(OpName::R, *shift as i32), &b)?,
                )
            }
            EigenProblem::Doubling(t) => (apply_expr(t, a)?, lead_and_double(a)?),
            EigenProblem::Sign(t) => (apply_expr(t, a)?, negate_tail(a)?),
            EigenProblem::Fixed(t) => (apply_expr(t, a)?, a.clone()),
        };
        let n = lhs.len().min(rhs.len());
        Ok(n > 0 && lhs.truncated(n) == rhs.truncated(n))
    }
}

/// `a = R^shift∘T∘a`: `shift` leading ones, then `a_{o+n+shift} = (T∘a)_{o+n}`.
pub fn solve_shift_eigen(
    t: &TransformExpr,
    shift: usize,
    n_terms: usize,
    offset: Offset,
) -> Result<Sequence> {
    let mut a = Sequence::new(offset, vec![Rational::one(); shift.min(n_terms)]);
    while a.len() < n_terms {
        let b = apply_expr(t, &a)?;
        let k = a.len() - shift;
        let next = b.terms().get(k).cloned().ok_or(Error::InsufficientTerms {
            needed: k + 1,
            have: b.len(),
        })?;
        a.push(next);
    }
    Ok(a)
}

/// `(α, β)` with `(T∘a)_n = α + β a_n`, where `prefix` holds the terms
/// before index `n`. A third evaluation confirms the fit.
pub fn affine_probe(
    t: &TransformExpr,
    prefix: &Sequence,
    n: usize,
) -> Result<(Rational, Rational)> {
    if prefix.end() != n {
        return Err(Error::InsufficientTerms {
            needed: n - prefix.offset().index(),
            have: prefix.len(),
        });
    }
    let at = |v: i64| -> Result<Rational> {
        let mut a = prefix.clone();
        a.push(int(v));
        let b = apply_expr(t, &a)?;
        b.get(n).cloned().ok_or(Error::InsufficientTerms {
            needed: a.len(),
            have: b.len(),
        })
    };
    let alpha = at(0)?;
    let beta = at(1)? - &alpha;
    if at(2)? != &alpha + &beta * int(2) {
        return Err(Error::Nonlinear { index: n });
    }
    Ok((alpha, beta))
}

/// `T∘a = M∘a` with `a_o = 1`. The equation at `o` forces `a_{o+1}`, the one
/// at `o+1` is a consistency check, and each later index gives
/// `a_n = α / (2 - β)`.
pub fn solve_m_eigen(t: &TransformExpr, n_terms: usize, offset: Offset) -> Result<Sequence> {
    let o = offset.index();
    let mut a = Sequence::new(offset, vec![Rational::one()]);
    if n_terms <= 1 {
        return Ok(a.truncated(n_terms));
    }
    let b = apply_expr(t, &a)?;
    a.push(b.terms()[0].clone());
    let b = apply_expr(t, &a)?;
    if b.terms()[1] != &a.terms()[1] * int(2) {
        return Err(Error::Inconsistent { index: o + 1 });
    }
    while a.len() < n_terms {
        let n = a.end();
        let (alpha, beta) = affine_probe(t, &a, n)?;
        let denom = int(2) - beta;
        if denom.is_zero() {
            return Err(Error::Singular { index: n });
        }
        a.push(alpha / denom);
    }
    Ok(a)
}

/// `T∘a = N∘a` with `a_o = 1`, each later index giving `a_n = -α / (1 + β)`.
pub fn solve_n_eigen(t: &TransformExpr, n_terms: usize, offset: Offset) -> Result<Sequence> {
    let o = offset.index();
    let mut a = Sequence::new(offset, vec![Rational::one()]);
    if n_terms == 0 {
        return Ok(a.truncated(0));
    }
    if apply_expr(t, &a)?.terms()[0] != a.terms()[0] {
        return Err(Error::Inconsistent { index: o });
    }
    while a.len() < n_terms {
        let n = a.end();
        let (alpha, beta) = affine_probe(t, &a, n)?;
        let denom = int(1) + beta;
        if denom.is_zero() {
            return Err(Error::Singular { index: n });
        }
        a.push(-alpha / denom);
    }
    Ok(a)
}

/// The sequence `[0, 1, a_2, ...]` that XOR-CONV maps to `[0, a_2, a_3, ...]`,
/// built from `a_{n+1} = Σ_k XOR(a_k, a_{n-k})`.
pub fn solve_xor_special(n_terms: usize) -> Result<Sequence> {
    let mut a = Sequence::from_ints(Offset::Zero, &[0, 1]).truncated(n_terms);
    while a.len() < n_terms {
        let b = fconv_xform(&a, BinaryOp::Xor)?;
        a.push(b.terms()[a.len() - 1].clone());
    }
    if !xor_special_holds(&a)? {
        return Err(Error::Inconsistent { index: 0 });
    }
    Ok(a)
}

/// Checks `XOR-CONV∘a = [0, a_2, a_3, ...]` on the comparable prefix.
pub fn xor_special_holds(a: &Sequence) -> Result<bool> {
    if a.offset() != Offset::Zero
        || a.len() < 2
        || !a.terms()[0].is_zero()
        || !a.terms()[1].is_one()
    {
        return Ok(false);
    }
    let b = fconv_xform(a, BinaryOp::Xor)?;
    let t = a.terms();
    Ok(b.terms()[0].is_zero() && (1..t.len() - 1).all(|n| b.terms()[n] == t[n + 1]))
}

/// Iterates of PARTITION on a fixed-length prefix up to the first repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    /// Start first; the last iterate is the first repeated one.
    pub iterates: Vec<Sequence>,
    /// Index of the first cycle member.
    pub tail: usize,
    pub period: usize,
    /// Leading terms of each cycle member fixed by the prefix alone.
    pub exact: usize,
}

impl OrbitReport {
    pub fn cycle(&self) -> &[Sequence] {
        &self.iterates[self.tail..self.tail + self.period]
    }

    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }
}

pub fn partition_orbit(start: &Sequence, n_terms: usize, max_iter: usize) -> Result<OrbitReport> {
    start.require_len(n_terms)?;
    let first = start.truncated(n_terms);
    let mut seen: HashMap<Sequence, usize> = HashMap::new();
    seen.insert(first.clone(), 0);
    let mut iterates = vec![first];
    for i in 1..=max_iter {
        let next = partition_xform(iterates.last().expect("nonempty")).map_err(|source| {
            Error::OrbitDomain {
                iterate: i,
                source: Box::new(source),
            }
        })?;
        let found = seen.get(&next).copied();
        iterates.push(next.clone());
        if let Some(tail) = found {
            let period = i - tail;
            let exact = iterates[tail..i]
                .iter()
                .map(partition_exact_len)
                .min()
                .unwrap_or(0);
            return Ok(OrbitReport {
                iterates,
                tail,
                period,
                exact,
            });
        }
        seen.insert(next, i);
    }
    Err(Error::NoCycle(max_iter))
}

pub const DEFAULT_REVERT_CAP: u64 = 1000;

/// Result of [`revert_lex_search`]. Minimality holds among sequences whose
/// terms stay at or below `cap`, judged over the first `horizon` indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevertSearch {
    pub terms: Sequence,
    pub cap: u64,
    pub horizon: usize,
}

/// Lexicographically first strictly increasing `[1, a_2, ...]` with
/// `REVERT∘a = a` through `n_terms` terms.
///
/// At odd `n` the equation forces `a_n`; at even `n` it does not involve
/// `a_n` and instead constrains the earlier terms, leaving `a_n` free.
pub fn revert_lex_search(n_terms: usize, cap: u64) -> Result<RevertSearch> {
    let revert = TransformExpr::single(OpName::Revert, 1);
    let mut deepest = Sequence::new(Offset::One, vec![]);
    let start = Sequence::new(Offset::One, vec![Rational::one()]).truncated(n_terms);
    let cap_r = Rational::from_integer(cap.into());
    let found = extend(&revert, start, n_terms, &cap_r, &mut deepest)?;
    match found {
        Some(terms) => Ok(RevertSearch {
            terms,
            cap,
            horizon: n_terms,
        }),
        None => Err(Error::SearchExhausted {
            cap,
            deepest: deepest.to_string(),
        }),
    }
}

fn extend(
    revert: &TransformExpr,
    a: Sequence,
    n_terms: usize,
    cap: &Rational,
    deepest: &mut Sequence,
) -> Result<Option<Sequence>> {
    if a.len() > deepest.len() {
        *deepest = a.clone();
    }
    if a.len() >= n_terms {
        return Ok(Some(a));
    }
    let n = a.end();
    let last = a.terms().last().cloned().expect("a_1 present");
    let (alpha, beta) = affine_probe(revert, &a, n)?;
    // (REVERT∘a)_n - a_n = alpha + (beta - 1) a_n
    let slope = beta - Rational::one();
    if !slope.is_zero() {
        let v = -alpha / slope;
        if !v.is_integer() || v <= last || &v > cap {
            return Ok(None);
        }
        let mut next = a;
        next.push(v);
        return extend(revert, next, n_terms, cap, deepest);
    }
    if !alpha.is_zero() {
        return Ok(None);
    }
    let mut v = last + Rational::one();
    while &v <= cap {
        let mut next = a.clone();
        next.push(v.clone());
        if let Some(done) = extend(revert, next, n_terms, cap, deepest)? {
            return Ok(Some(done));
        }
        v += Rational::one();
    }
    Ok(None)
}

/// Applies `e` until the first `n_terms` terms repeat. Each iterate is cut
/// to `n_terms`; the count includes the application that confirmed the
/// fixed prefix.
pub fn converge(
    e: &TransformExpr,
    start: &Sequence,
    n_terms: usize,
    max_iter: usize,
) -> Result<(Sequence, usize)> {
    let mut cur = start.truncated(n_terms);
    for i in 1..=max_iter {
        let next = apply_expr(e, &cur)?.truncated(n_terms);
        if next == cur && cur.len() == n_terms {
            return Ok((cur, i));
        }
        cur = next;
    }
    Err(Error::NoConvergence(max_iter))
}

/// Whether `a` satisfies the eigen-equation `e` names, falling back to
/// `e∘a = a` for expressions without an eigen form. Errors count as `false`.
pub fn verify_eigen(a: &Sequence, e: &TransformExpr) -> bool {
    match EigenProblem::from_expr(e) {
        Ok(problem) => problem.holds_for(a).unwrap_or(false),
        Err(_) => match apply_expr(e, a) {
            Ok(b) => {
                let n = a.len().min(b.len());
                n > 0 && a.truncated(n) == b.truncated(n)
            }
            Err(_) => false,
        },
    }
}

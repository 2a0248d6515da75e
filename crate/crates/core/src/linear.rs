//! Triangle transforms: BINOMIAL, STIRLING, their inverses and powers, and
//! difference tables.
//!
//! A [`Triangle`] holds `D_{n,k}` for `base <= k <= n <= max_n` and acts on a
//! sequence by `b_n = Σ_k D_{n,k} a_k`. Its base must equal the offset of the
//! sequence it is applied to.
//!
//! Indexing conventions:
//!
//! - Binomial triangles at base 1 are the shifted Pascal triangle
//!   `C(n-1, k-1)`, so BINOMIAL acts on the stored list the same way at
//!   either offset.
//! - Stirling triangles use the logical index directly: `S(n, k)` for
//!   `n, k >= base`. Because `S(n, 0) = [n = 0]`, the offset-0 transform
//!   passes `a_0` through unchanged and otherwise agrees with the offset-1
//!   transform.
//!
//! With these conventions the composition identity
//! `STIRLING∘R = R∘BINOMIAL∘STIRLING` holds exactly on offset-0 sequences,
//! the zeroth term being the prepended 1 that `S(n, 0)` passes through.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::rational::{big, binomial, Rational};
use crate::seq::{Offset, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    Binomial,
    BinomialInverse,
    Stirling,
    StirlingInverse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    base: Offset,
    rows: Vec<Vec<Rational>>,
}

impl Triangle {
    /// Builds a triangle from `f(n, k)` over `base <= k <= n <= max_n`.
    pub fn from_fn(
        base: Offset,
        max_n: usize,
        mut f: impl FnMut(usize, usize) -> Rational,
    ) -> Self {
        let b = base.index();
        let rows = (b..=max_n)
            .map(|n| (b..=n).map(|k| f(n, k)).collect())
            .collect();
        Triangle { base, rows }
    }

    pub fn base(&self) -> Offset {
        self.base
    }

    /// Largest row index held, or `None` when empty.
    pub fn max_n(&self) -> Option<usize> {
        (!self.rows.is_empty()).then(|| self.base.index() + self.rows.len() - 1)
    }

    /// Number of rows.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, n: usize, k: usize) -> Rational {
        let b = self.base.index();
        if n < b || k < b || k > n {
            return Rational::zero();
        }
        self.rows
            .get(n - b)
            .map(|row| row[k - b].clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Row `n`, from column `base` to `n`.
    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n - self.base.index()]
    }

    pub fn has_unit_diagonal(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.last().is_some_and(|d| d.is_one()))
    }

    pub fn mul(&self, other: &Triangle) -> Triangle {
        assert_eq!(self.base, other.base, "triangle bases differ");
        let size = self.size().min(other.size());
        let b = self.base.index();
        Triangle::from_fn(self.base, b + size - 1, |n, k| {
            (k..=n).fold(Rational::zero(), |acc, j| {
                acc + &self.rows[n - b][j - b] * &other.rows[j - b][k - b]
            })
        })
    }

    /// Restricts to the first `size` rows.
    pub fn truncated(&self, size: usize) -> Triangle {
        Triangle {
            base: self.base,
            rows: self.rows.iter().take(size).cloned().collect(),
        }
    }
}

/// Stirling numbers of the second kind, `S(n,k)` for `n, k <= max_n`.
fn stirling2_table(max_n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); max_n + 1]; max_n + 1];
    t[0][0] = BigInt::one();
    for n in 1..=max_n {
        for k in 1..=n {
            t[n][k] = BigInt::from(k) * &t[n - 1][k] + &t[n - 1][k - 1];
        }
    }
    t
}

/// Signed Stirling numbers of the first kind.
fn stirling1_table(max_n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); max_n + 1]; max_n + 1];
    t[0][0] = BigInt::one();
    for n in 1..=max_n {
        for k in 1..=n {
            t[n][k] = &t[n - 1][k - 1] - BigInt::from(n - 1) * &t[n - 1][k];
        }
    }
    t
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling2_table(n).swap_remove(n).swap_remove(k)
}

pub fn stirling1(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling1_table(n).swap_remove(n).swap_remove(k)
}

fn build(kind: TriangleKind, max_n: usize, base: Offset) -> Triangle {
    let shift = base.index();
    match kind {
        TriangleKind::Binomial => {
            Triangle::from_fn(base, max_n, |n, k| big(binomial(n - shift, k - shift)))
        }
        TriangleKind::BinomialInverse => Triangle::from_fn(base, max_n, |n, k| {
            let c = big(binomial(n - shift, k - shift));
            if (n - k) % 2 == 0 {
                c
            } else {
                -c
            }
        }),
        TriangleKind::Stirling => {
            let t = stirling2_table(max_n);
            Triangle::from_fn(base, max_n, |n, k| big(t[n][k].clone()))
        }
        TriangleKind::StirlingInverse => {
            let t = stirling1_table(max_n);
            Triangle::from_fn(base, max_n, |n, k| big(t[n][k].clone()))
        }
    }
}

type CacheKey = (TriangleKind, usize, Offset);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Triangle>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Triangle>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Triangle of the named transform with rows `base ..= max_n`. Results are
/// memoised; callers only ever see immutable shared values.
pub fn triangle_of(kind: TriangleKind, max_n: usize, base: Offset) -> Arc<Triangle> {
    let key = (kind, max_n, base);
    if let Some(t) = cache().lock().expect("triangle cache poisoned").get(&key) {
        return Arc::clone(t);
    }
    let t = Arc::new(build(kind, max_n, base));
    cache()
        .lock()
        .expect("triangle cache poisoned")
        .entry(key)
        .or_insert(t)
        .clone()
}

/// Exact matrix power `D^r` for `r >= 1`, by repeated squaring.
pub fn triangle_pow(d: &Triangle, r: u32) -> Triangle {
    assert!(r >= 1, "triangle power must be at least 1");
    let mut result: Option<Triangle> = None;
    let mut square = d.clone();
    let mut e = r;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                None => square.clone(),
                Some(acc) => acc.mul(&square),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        square = square.mul(&square);
    }
    result.expect("r >= 1")
}

/// `b_n = Σ_k D_{n,k} a_k`, one output per input term.
pub fn triangle_apply(d: &Triangle, a: &Sequence) -> Result<Sequence> {
    a.require_offset(d.base)?;
    let len = a.len();
    if d.size() < len {
        return Err(crate::Error::InsufficientTerms {
            needed: len,
            have: d.size(),
        });
    }
    let terms = (0..len)
        .map(|i| {
            d.rows[i]
                .iter()
                .zip(a.terms())
                .fold(Rational::zero(), |acc, (dk, ak)| acc + dk * ak)
        })
        .collect();
    Ok(Sequence::new(a.offset(), terms))
}

fn kind_power(
    a: &Sequence,
    forward: TriangleKind,
    inverse: TriangleKind,
    r: i32,
) -> Result<Sequence> {
    if r == 0 || a.is_empty() {
        return Ok(a.clone());
    }
    let kind = if r > 0 { forward } else { inverse };
    let max_n = a.end() - 1;
    let base = triangle_of(kind, max_n, a.offset());
    let d = triangle_pow(&base, r.unsigned_abs());
    triangle_apply(&d, a)
}

/// BINOMIAL^r for any integer `r`; negative powers use the inverse triangle.
pub fn binomial_xform(a: &Sequence, r: i32) -> Result<Sequence> {
    kind_power(a, TriangleKind::Binomial, TriangleKind::BinomialInverse, r)
}

/// STIRLING^r for any integer `r`.
pub fn stirling_xform_pow(a: &Sequence, r: i32) -> Result<Sequence> {
    kind_power(a, TriangleKind::Stirling, TriangleKind::StirlingInverse, r)
}

pub fn stirling_xform(a: &Sequence, inverse: bool) -> Result<Sequence> {
    stirling_xform_pow(a, if inverse { -1 } else { 1 })
}

/// Rows of the difference table of `c`: row 0 is `c`, each following row the
/// forward differences of the previous one.
pub fn difference_table(c: &[Rational]) -> Vec<Vec<Rational>> {
    let mut rows = vec![c.to_vec()];
    while rows.last().is_some_and(|r| r.len() > 1) {
        let prev = rows.last().expect("nonempty");
        let next = prev.windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(next);
    }
    rows
}

/// Leading diagonal of the difference table of depth `depth`: the depth-1
/// diagonal of the depth-(r-1) diagonal, and so on.
pub fn diff_table_diagonal(a: &Sequence, depth: u32) -> Sequence {
    let mut current = a.terms().to_vec();
    for _ in 0..depth {
        current = difference_table(&current)
            .into_iter()
            .filter_map(|row| row.first().cloned())
            .collect();
    }
    Sequence::new(a.offset(), current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn s0(t: &[i64]) -> Sequence {
        Sequence::from_ints(Offset::Zero, t)
    }

    fn s1(t: &[i64]) -> Sequence {
        Sequence::from_ints(Offset::One, t)
    }

    /// Oracle: Σ_k s(n,k) S(k,m) from independently built tables.
    #[test]
    fn stirling_numbers() {
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(3, 1), BigInt::from(1));
        assert_eq!(stirling2(6, 6), BigInt::from(1));
        assert_eq!(stirling1(3, 2), BigInt::from(-3));
        assert_eq!(stirling1(5, 5), BigInt::from(1));
        let sum: BigInt = (0..=4).map(|k| stirling1(4, k) * stirling2(k, 2)).sum();
        assert_eq!(sum, BigInt::zero());
        for n in 0..8 {
            for m in 0..8 {
                let s: BigInt = (0..8).map(|k| stirling1(n, k) * stirling2(k, m)).sum();
                assert_eq!(s, BigInt::from((n == m) as i32));
            }
        }
    }

    #[test]
    fn named_triangles() {
        let b = triangle_of(TriangleKind::Binomial, 5, Offset::Zero);
        assert_eq!(b.row(3), &[int(1), int(3), int(3), int(1)]);
        let s = triangle_of(TriangleKind::Stirling, 5, Offset::One);
        assert_eq!(s.row(4), &[int(1), int(7), int(6), int(1)]);
        let bi = triangle_of(TriangleKind::BinomialInverse, 5, Offset::Zero);
        assert_eq!(bi.row(2), &[int(1), int(-2), int(1)]);
        assert!(s.has_unit_diagonal());
        assert_eq!(s.max_n(), Some(5));
        assert_eq!(s.entry(4, 0), int(0));
    }

    #[test]
    fn cache_returns_equal_values() {
        let a = triangle_of(TriangleKind::StirlingInverse, 7, Offset::Zero);
        let b = triangle_of(TriangleKind::StirlingInverse, 7, Offset::Zero);
        assert_eq!(*a, *b);
        assert_eq!(*a, build(TriangleKind::StirlingInverse, 7, Offset::Zero));
    }

    #[test]
    fn powers_match_repeated_multiplication() {
        let b = triangle_of(TriangleKind::Binomial, 6, Offset::Zero);
        let sq = triangle_pow(&b, 2);
        for n in 0..=6 {
            for k in 0..=n {
                let expected = big(binomial(n, k) * BigInt::from(2).pow((n - k) as u32));
                assert_eq!(sq.entry(n, k), expected);
            }
        }
        assert_eq!(triangle_pow(&b, 1), *b);
        let naive = b.mul(&b).mul(&b).mul(&b).mul(&b);
        assert_eq!(triangle_pow(&b, 5), naive);
        assert!(
            triangle_pow(&triangle_of(TriangleKind::Stirling, 6, Offset::One), 3)
                .has_unit_diagonal()
        );
    }

    #[test]
    fn applying_triangles() {
        let ones = s0(&[1, 1, 1, 1]);
        assert_eq!(binomial_xform(&ones, 1).unwrap(), s0(&[1, 2, 4, 8]));
        assert_eq!(binomial_xform(&ones, 2).unwrap(), s0(&[1, 3, 9, 27]));
        let bell = stirling_xform(&s1(&[1, 1, 1, 1, 1]), false).unwrap();
        assert_eq!(bell, s1(&[1, 2, 5, 15, 52]));
        let d = triangle_of(TriangleKind::Stirling, 4, Offset::One);
        assert!(triangle_apply(&d, &s0(&[1, 1])).is_err());
    }

    #[test]
    fn table_rows_shift_under_their_operators() {
        let bell = s0(&[1, 1, 2, 5, 15]);
        assert_eq!(binomial_xform(&bell, 1).unwrap(), s0(&[1, 2, 5, 15, 52]));
        let s7 = s1(&[1, 1, 2, 6, 26, 152]);
        assert_eq!(
            stirling_xform(&s7, false).unwrap(),
            s1(&[1, 2, 6, 26, 152, 1144])
        );
        assert_eq!(
            binomial_xform(&binomial_xform(&bell, -1).unwrap(), 1).unwrap(),
            bell
        );
    }

    #[test]
    fn offset_zero_stirling_passes_term_zero_through() {
        let a = s0(&[7, 1, 1, 1]);
        let b = stirling_xform(&a, false).unwrap();
        assert_eq!(b, s0(&[7, 1, 2, 5]));
    }

    #[test]
    fn difference_tables() {
        assert_eq!(
            diff_table_diagonal(&s0(&[1, 3, 9, 27]), 1),
            s0(&[1, 2, 4, 8])
        );
        assert_eq!(
            diff_table_diagonal(&s0(&[1, 2, 4, 8]), 1),
            s0(&[1, 1, 1, 1])
        );
        assert_eq!(
            diff_table_diagonal(&s0(&[1, 3, 9, 27]), 2),
            s0(&[1, 1, 1, 1])
        );
        let rows = difference_table(&[int(1), int(3), int(9), int(27)]);
        assert_eq!(rows[1], vec![int(2), int(6), int(18)]);
        assert_eq!(rows[3], vec![int(8)]);
    }

    mod props {
        use super::*;
        use crate::seq::prepend_one;
        use proptest::prelude::*;

        fn arb_rationals(len: usize) -> impl Strategy<Value = Vec<Rational>> {
            prop::collection::vec((-30i64..30, 1i64..5), len).prop_map(|v| {
                v.into_iter()
                    .map(|(p, q)| Rational::new(p.into(), q.into()))
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn binomial_powers_invert(t in arb_rationals(16), r in -4i32..5) {
                let a = Sequence::new(Offset::Zero, t);
                let there = binomial_xform(&a, r).unwrap();
                prop_assert_eq!(binomial_xform(&there, -r).unwrap(), a);
            }

            /// Closed form of BINOMIAL^r: entries C(n,k)·r^(n-k), any sign of r.
            #[test]
            fn binomial_power_closed_form(t in arb_rationals(10), r in -3i32..4) {
                let a = Sequence::new(Offset::Zero, t);
                let b = binomial_xform(&a, r).unwrap();
                for n in 0..a.len() {
                    let mut acc = Rational::zero();
                    for k in 0..=n {
                        let coeff = big(binomial(n, k)) * Rational::from_integer(BigInt::from(r).pow((n - k) as u32));
                        acc += coeff * &a.terms()[k];
                    }
                    prop_assert_eq!(&b.terms()[n], &acc);
                }
            }

            #[test]
            fn stirling_inverts(v in prop::collection::vec(-40i64..40, 1..12), one in any::<bool>()) {
                let a = Sequence::from_ints(if one { Offset::One } else { Offset::Zero }, &v);
                let there = stirling_xform(&a, false).unwrap();
                prop_assert!(there.is_integral());
                prop_assert_eq!(stirling_xform(&there, true).unwrap(), a);
            }

            #[test]
            fn diagonal_inverts_repeated_binomial(t in arb_rationals(10), r in 1u32..4) {
                let a = Sequence::new(Offset::Zero, t);
                let d = diff_table_diagonal(&a, r);
                prop_assert_eq!(binomial_xform(&d, r as i32).unwrap(), a.clone());
                prop_assert_eq!(diff_table_diagonal(&binomial_xform(&a, r as i32).unwrap(), r), a);
            }

            #[test]
            fn stirling_r_identity(v in prop::collection::vec(-40i64..40, 12)) {
                let a = Sequence::from_ints(Offset::Zero, &v);
                let lhs = stirling_xform(&prepend_one(&a), false).unwrap();
                let rhs = prepend_one(&binomial_xform(&stirling_xform(&a, false).unwrap(), 1).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

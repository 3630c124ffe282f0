//! Rational-tangle calculus for 2-bridge knots.
//!
//! A Conway list `C(p1, ..., pk)` evaluates to the continued fraction
//!
//! ```text
//!   pk + 1/(p(k-1) + 1/( ... + 1/p1))
//! ```
//!
//! computed projectively on (numerator, denominator) pairs so zero and
//! negative entries never divide by zero. The resulting [`Fraction`]
//! classifies the knot: `|p| = 1` is the unknot, and two fractions give the
//! same unoriented knot exactly when the Schubert condition holds
//! (same `|p|`, and `q' ≡ q^{±1} mod p`).
//!
//! The convention above is pinned by four identities that must all hold
//! (see the unit tests): `C(1,2k) = C(2k+1)`, `C(p,0)` is trivial,
//! `C(3,-1,2)` is trivial, and `C(2i-1,0,2,1,2) = C(2i+1,1,2)`.
//!
//! Mirror images are modeled by negating every entry of the list.
//! Crossing changes are modeled at notation level: one crossing change in a
//! twist band moves that band's entry by ±2.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalError {
    #[error("the unknot has no 2-bridge crossing number")]
    UnknotInput,
    #[error("band index {0} out of range for a {1}-entry Conway list")]
    BadBandIndex(usize, usize),
    #[error("Conway list {0:?} is outside the supported braid-index families")]
    OutsideBraidFamilies(Vec<i64>),
    #[error("fraction {num}/{den} has even numerator: a 2-component link, not a knot")]
    NotAKnot { num: i64, den: i64 },
}

/// Exact p/q value of a rational tangle, kept in lowest terms.
///
/// The denominator of a closed 2-bridge form is only meaningful modulo the
/// numerator, but the raw pair is kept so callers can still see the direct
/// continued-fraction value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: i64,
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Self {
        let g = gcd(num, den);
        if g == 0 {
            // 0/0 cannot arise from a continued fraction; keep it visible.
            return Fraction { num: 0, den: 0 };
        }
        let (mut num, mut den) = (num / g, den / g);
        if num < 0 || (num == 0 && den < 0) {
            num = -num;
            den = -den;
        }
        Fraction { num, den }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    /// `|p| = 1` detects the trivial knot among 2-bridge forms.
    pub fn is_unknot(&self) -> bool {
        self.num.abs() == 1
    }

    /// Knots have odd `p`; even `p` means a 2-component link.
    pub fn is_knot(&self) -> bool {
        self.num.abs() % 2 == 1
    }

    /// The mirror fraction, matching entrywise negation of the Conway list.
    pub fn mirror(&self) -> Fraction {
        Fraction::new(self.num, -self.den)
    }
}

/// Evaluate a Conway list to its continued fraction.
///
/// Projective pair arithmetic: starting from `p1/1`, each further entry `p`
/// sends `n/d` to `(p*n + d)/n`. Empty lists denote the 0-tangle whose
/// numerator closure is the unknot, reported here as 1/0.
pub fn fraction(entries: &[i64]) -> Fraction {
    let (mut num, mut den) = (1i64, 0i64);
    for &p in entries {
        (num, den) = (p * num + den, num);
    }
    Fraction::new(num, den)
}

pub fn is_unknot(f: Fraction) -> bool {
    f.is_unknot()
}

fn normalized_pq(f: Fraction) -> (i64, i64) {
    let p = f.num.abs();
    let q = f.den.rem_euclid(p);
    (p, q)
}

/// Schubert's classification of unoriented 2-bridge knots:
/// same `p` and `q' ≡ q^{±1} (mod p)`.
pub fn two_bridge_equivalent(f1: Fraction, f2: Fraction) -> bool {
    if f1.is_unknot() || f2.is_unknot() {
        return f1.is_unknot() && f2.is_unknot();
    }
    let (p1, q1) = normalized_pq(f1);
    let (p2, q2) = normalized_pq(f2);
    if p1 != p2 {
        return false;
    }
    q1 == q2 || mul_mod(q1, q2, p1) == 1
}

/// Mirror variant of [`two_bridge_equivalent`]: is `f2` the mirror of `f1`?
pub fn two_bridge_mirror_equivalent(f1: Fraction, f2: Fraction) -> bool {
    two_bridge_equivalent(f1.mirror(), f2)
}

fn mul_mod(a: i64, b: i64, m: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(m as i128)) as i64
}

/// Crossing number of a knotted 2-bridge fraction: re-expand into an
/// all-positive continued fraction and sum the entries. Mirrors are
/// normalized first since crossing number is mirror-invariant.
pub fn crossing_number_two_bridge(f: Fraction) -> Result<u64, RationalError> {
    if f.is_unknot() {
        return Err(RationalError::UnknotInput);
    }
    let (p, q) = normalized_pq(f);
    // q = 0 only for |p| = 1, excluded above; p = 0 cannot be knotted.
    debug_assert!(p > 1 && q > 0);
    Ok(positive_expansion(p, q).iter().map(|&e| e as u64).sum())
}

/// All-positive continued fraction of p/q (0 < q < p) in list order, i.e.
/// `fraction(&positive_expansion(p,q))` returns p/q again up to the
/// Schubert equivalence.
pub fn positive_expansion(p: i64, q: i64) -> Vec<i64> {
    // Euclid's quotients, collected outermost-first, then reversed so the
    // innermost entry comes first as in a Conway list.
    let (mut a, mut b) = (p, q);
    let mut quotients = Vec::new();
    while b != 0 {
        quotients.push(a / b);
        (a, b) = (b, a % b);
    }
    quotients.reverse();
    quotients
}

/// Braid index of the two 2-bridge families used by the geography module.
///
/// `C(2a, 2b-1)` has braid index `b + 1`; `C(-2, -2a+1, -2b+1)` has braid
/// index `a + 2` (both for `a, b >= 1`). Entrywise-negated (mirror) forms
/// are accepted since braid index is mirror-invariant. Anything else is an
/// error: callers fall back to the MFW/diagram channel.
pub fn braid_index_family(entries: &[i64]) -> Result<u64, RationalError> {
    let matches_family = |e: &[i64]| -> Option<u64> {
        match *e {
            [two, odd] if two >= 2 && two % 2 == 0 && odd >= 1 && odd % 2 == 1 => {
                let b = (odd + 1) / 2;
                Some(b as u64 + 1)
            }
            [m2, o1, o2]
                if m2 == -2 && o1 <= -1 && o1 % 2 != 0 && o2 <= -1 && o2 % 2 != 0 =>
            {
                let a = (-o1 + 1) / 2;
                Some(a as u64 + 2)
            }
            _ => None,
        }
    };
    let mirrored: Vec<i64> = entries.iter().map(|&e| -e).collect();
    matches_family(entries)
        .or_else(|| matches_family(&mirrored))
        .ok_or_else(|| RationalError::OutsideBraidFamilies(entries.to_vec()))
}

/// Notation-level crossing changes: each change in a twist band moves that
/// band's entry by ±2, so `count` changes move it by `2 * count`.
pub fn apply_crossing_changes(
    entries: &[i64],
    band: usize,
    count: i64,
) -> Result<Vec<i64>, RationalError> {
    if band >= entries.len() {
        return Err(RationalError::BadBandIndex(band, entries.len()));
    }
    let mut out = entries.to_vec();
    out[band] += 2 * count;
    Ok(out)
}

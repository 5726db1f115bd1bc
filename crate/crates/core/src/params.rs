//! Validated, normalized parameter pairs for the groups `BS(m, n)`.
//!
//! `BS(m, n)`, `BS(n, m)`, `BS(-m, -n)` and `BS(-n, -m)` are isomorphic, so
//! every pair is normalized to the unique equivalent pair with
//! `1 <= |m| <= n`. All other modules require normalized parameters; this is
//! the single coordinate system used everywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Sign of a stable-letter occurrence, `t` or `t^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TSign {
    Plus,
    Minus,
}

impl TSign {
    pub fn as_i64(self) -> i64 {
        match self {
            TSign::Plus => 1,
            TSign::Minus => -1,
        }
    }

    pub fn opposite(self) -> TSign {
        match self {
            TSign::Plus => TSign::Minus,
            TSign::Minus => TSign::Plus,
        }
    }
}

/// A normalized parameter pair `(m, n)` with its derived invariants.
///
/// Invariants established at construction:
/// - `1 <= |m| <= n`
/// - `d = gcd(|m|, n)`, `m0 * d = |m|`, `n0 * d = n`, `gcd(m0, n0) = 1`
/// - `amenable` iff `|m| = 1`
/// - `discrete_completion` iff `|m| = n`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BsParams {
    m: i64,
    n: i64,
    d: i64,
    m0: i64,
    n0: i64,
    amenable: bool,
    discrete_completion: bool,
}

impl BsParams {
    /// Builds normalized parameters from an arbitrary nonzero pair.
    ///
    /// Applies the isomorphism moves (swap and joint negation) to reach the
    /// unique equivalent pair with `1 <= |m| <= n`.
    pub fn new(m: i64, n: i64) -> Result<Self> {
        // i64::MIN has no absolute value; reject it with the zero case.
        if m == 0 || n == 0 || m == i64::MIN || n == i64::MIN {
            return Err(Error::InvalidParameters { m, n });
        }
        let candidates = [(m, n), (n, m), (-m, -n), (-n, -m)];
        let mut normalized = None;
        for (a, b) in candidates {
            if b >= 1 && a.abs() <= b {
                match normalized {
                    None => normalized = Some((a, b)),
                    Some(prev) => debug_assert_eq!(prev, (a, b), "normal form must be unique"),
                }
            }
        }
        let (m, n) = normalized.expect("one of the four parameter moves is normalized");

        let d = m.abs().gcd(&n);
        Ok(BsParams {
            m,
            n,
            d,
            m0: m.abs() / d,
            n0: n / d,
            amenable: m.abs() == 1,
            discrete_completion: m.abs() == n,
        })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// `gcd(|m|, n)`.
    pub fn d(&self) -> i64 {
        self.d
    }

    /// `|m| / d`; coprime to `n0`.
    pub fn m0(&self) -> i64 {
        self.m0
    }

    /// `n / d`; coprime to `m0`.
    pub fn n0(&self) -> i64 {
        self.n0
    }

    pub fn m_abs(&self) -> i64 {
        self.m.abs()
    }

    /// True iff `|m| = 1`; these groups are solvable.
    pub fn is_amenable(&self) -> bool {
        self.amenable
    }

    /// True iff `|m| = n`, the case where the completion is a discrete group.
    pub fn has_discrete_completion(&self) -> bool {
        self.discrete_completion
    }

    pub(crate) fn check_same(&self, other: &BsParams) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamsMismatch(self.m, self.n, other.m, other.n))
        }
    }

    /// Exponent image of `a^k` under conjugation by a single `t`-letter.
    ///
    /// For `TSign::Plus` this is `t a^k t^-1`, defined iff `m | k`, with image
    /// exponent `n * (k / m)`; for `TSign::Minus` it is `t^-1 a^k t`, defined
    /// iff `n | k`, with image `m * (k / n)`. `None` means the conjugate left
    /// the cyclic subgroup generated by `a`.
    pub fn conjugate_by_t(&self, k: &BigInt, direction: TSign) -> Option<BigInt> {
        let (divisor, factor) = match direction {
            TSign::Plus => (BigInt::from(self.m), BigInt::from(self.n)),
            TSign::Minus => (BigInt::from(self.n), BigInt::from(self.m)),
        };
        if k.is_multiple_of(&divisor) {
            Some(factor * (k / divisor))
        } else {
            None
        }
    }

    /// Residue of `k` in `{0, ..., |m| - 1}` and the exact cofactor `q` with
    /// `k = r + m * q`.
    pub(crate) fn split_mod_m(&self, k: &BigInt) -> (u64, BigInt) {
        split_with(k, self.m_abs(), self.m)
    }

    /// Residue of `k` in `{0, ..., n - 1}` and the exact cofactor `q` with
    /// `k = r + n * q`.
    pub(crate) fn split_mod_n(&self, k: &BigInt) -> (u64, BigInt) {
        split_with(k, self.n, self.n)
    }
}

fn split_with(k: &BigInt, modulus: i64, divisor: i64) -> (u64, BigInt) {
    let modulus_big = BigInt::from(modulus);
    let r = k.mod_floor(&modulus_big);
    debug_assert!(!r.is_negative() && r < modulus_big);
    let q = (k - &r) / BigInt::from(divisor);
    let r_small = u64::try_from(&r).expect("residue fits u64");
    (r_small, q)
}

impl std::fmt::Display for BsParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

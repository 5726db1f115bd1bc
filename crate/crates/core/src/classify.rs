//! Isomorphism classification.
//!
//! Three layers of decision procedures, each exact:
//!
//! - `bs_isomorphic`: the discrete groups `BS(m, n)` and `BS(p, q)` are
//!   isomorphic iff `{m, n} = {ep, eq}` for a sign `e`.
//! - `g_isomorphic`: the completions `G(m, n)` and `G(p, q)` (for
//!   non-amenable parameters `2 <= |m| <= n`) are isomorphic iff either both
//!   are discrete with the same torsion order (`|m| = n`, `|p| = q`,
//!   `|m| = |p|`), or neither is and `(m, n) = (p, q)` on the nose. The
//!   separating invariants are, in order: discreteness, the scale-function
//!   image `(m0, n0)`, the minimal coset index `|m|`, and the sign of `m`.
//! - `product_isomorphic`: products of completions are isomorphic iff the
//!   factor counts agree and a permutation matches factors pairwise; since
//!   factor isomorphism is an equivalence, a greedy match in index order is
//!   complete and yields the lexicographically smallest witness.
//!
//! `soe_conclusion` exposes the same verdict as the parameter conclusion
//! for stably orbit equivalent actions whose canonical cyclic subgroups act
//! aperiodically: such an equivalence forces an isomorphism of the products
//! of relative profinite completions, so the classification above applies.

use std::fmt;


use crate::error::{Error, Result};
use crate::invariants::scale_set;
use crate::params::BsParams;

/// Why a classification query succeeded or failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoReason {
    /// Both completions are the discrete group `Z/mZ * Z` with equal `|m|`.
    DiscreteSameTorsion { order: u64 },
    /// Non-discrete completions with identical normalized parameters.
    IdenticalParameters { m: i64, n: i64 },
    /// Exactly one side has a discrete completion (`|m| = n`).
    DiscretenessMismatch,
    /// Discrete on both sides but with different maximal torsion orders.
    TorsionOrderMismatch { left: u64, right: u64 },
    /// The scale-function images `(m0, n0)` differ.
    ScaleSetMismatch { left: (u64, u64), right: (u64, u64) },
    /// The minimal index `|m|` of a compact-open intersection differs.
    MinIndexMismatch { left: u64, right: u64 },
    /// Same `(|m|, n)` but opposite signs of `m`; the completions still
    /// differ (conjugation twists the compact subgroup incompatibly).
    SignMismatch,
    /// Product factor counts differ.
    FactorCountMismatch { left: usize, right: usize },
    /// No remaining right factor is isomorphic to the given left factor
    /// (1-based index).
    UnmatchedFactor { index: usize },
    /// Every factor matched under the recorded permutation.
    ProductMatch,
    /// Verdict transported through stable orbit equivalence: the orbit
    /// relation determines the product of relative profinite completions,
    /// which the product classification then separates or matches.
    SoeParameterConclusion(Box<IsoReason>),
}

impl fmt::Display for IsoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoReason::DiscreteSameTorsion { order } => {
                write!(f, "both discrete with maximal torsion order {order}")
            }
            IsoReason::IdenticalParameters { m, n } => {
                write!(f, "identical normalized parameters ({m}, {n})")
            }
            IsoReason::DiscretenessMismatch => {
                write!(f, "one completion is discrete (|m| = n), the other is not")
            }
            IsoReason::TorsionOrderMismatch { left, right } => {
                write!(f, "maximal torsion orders differ: {left} vs {right}")
            }
            IsoReason::ScaleSetMismatch { left, right } => write!(
                f,
                "scale sets differ: {{{}^k}} u {{{}^k}} vs {{{}^k}} u {{{}^k}}",
                left.0, left.1, right.0, right.1
            ),
            IsoReason::MinIndexMismatch { left, right } => {
                write!(f, "minimal coset indices |m| differ: {left} vs {right}")
            }
            IsoReason::SignMismatch => {
                write!(f, "parameters differ only by the sign of m; the completions are not isomorphic")
            }
            IsoReason::FactorCountMismatch { left, right } => {
                write!(f, "factor counts differ: {left} vs {right}")
            }
            IsoReason::UnmatchedFactor { index } => {
                write!(f, "left factor {index} matches no unused right factor")
            }
            IsoReason::ProductMatch => write!(f, "factorwise matching found"),
            IsoReason::SoeParameterConclusion(inner) => write!(
                f,
                "stable orbit equivalence with aperiodic cyclic subgroups forces an isomorphism \
                 of the products of relative profinite completions; {inner}"
            ),
        }
    }
}

/// Outcome of a classification query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// 1-based permutation sending left factor `i` to right factor
    /// `witness[i - 1]`; present whenever `isomorphic` is true.
    pub witness: Option<Vec<usize>>,
    pub reason: IsoReason,
}

impl IsoVerdict {
    fn yes(witness: Vec<usize>, reason: IsoReason) -> Self {
        IsoVerdict {
            isomorphic: true,
            witness: Some(witness),
            reason,
        }
    }

    fn no(reason: IsoReason) -> Self {
        IsoVerdict {
            isomorphic: false,
            witness: None,
            reason,
        }
    }
}

/// Moldavanskii's criterion for the discrete groups: `BS(m, n) = BS(p, q)`
/// iff `{m, n} = {ep, eq}` as multisets for some sign `e`.
pub fn bs_isomorphic(p1: (i64, i64), p2: (i64, i64)) -> Result<bool> {
    for (m, n) in [p1, p2] {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameters { m, n });
        }
    }
    let same_multiset = |(a, b): (i64, i64), (c, d): (i64, i64)| (a, b) == (c, d) || (a, b) == (d, c);
    Ok([1, -1]
        .iter()
        .any(|&e| same_multiset(p1, (e * p2.0, e * p2.1))))
}

fn require_hypothesis(p: &BsParams) -> Result<()> {
    if p.is_amenable() {
        Err(Error::OutOfHypothesis { m: p.m(), n: p.n() })
    } else {
        Ok(())
    }
}

/// Classification of the completions `G(m, n)`; both sides must satisfy
/// `2 <= |m| <= n`.
pub fn g_isomorphic(p1: &BsParams, p2: &BsParams) -> Result<IsoVerdict> {
    require_hypothesis(p1)?;
    require_hypothesis(p2)?;
    Ok(g_isomorphic_unchecked(p1, p2))
}

fn g_isomorphic_unchecked(p1: &BsParams, p2: &BsParams) -> IsoVerdict {
    let id = vec![1];
    match (p1.has_discrete_completion(), p2.has_discrete_completion()) {
        (true, true) => {
            let (left, right) = (p1.m_abs() as u64, p2.m_abs() as u64);
            if left == right {
                IsoVerdict::yes(id, IsoReason::DiscreteSameTorsion { order: left })
            } else {
                IsoVerdict::no(IsoReason::TorsionOrderMismatch { left, right })
            }
        }
        (true, false) | (false, true) => IsoVerdict::no(IsoReason::DiscretenessMismatch),
        (false, false) => {
            let (s1, s2) = (scale_set(p1), scale_set(p2));
            if s1 != s2 {
                return IsoVerdict::no(IsoReason::ScaleSetMismatch {
                    left: (s1.m0(), s1.n0()),
                    right: (s2.m0(), s2.n0()),
                });
            }
            if p1.m_abs() != p2.m_abs() {
                return IsoVerdict::no(IsoReason::MinIndexMismatch {
                    left: p1.m_abs() as u64,
                    right: p2.m_abs() as u64,
                });
            }
            // Equal scale set and |m| force equal d = |m|/m0 and n = d n0.
            debug_assert_eq!(p1.n(), p2.n());
            if p1.m() != p2.m() {
                return IsoVerdict::no(IsoReason::SignMismatch);
            }
            IsoVerdict::yes(
                id,
                IsoReason::IdenticalParameters {
                    m: p1.m(),
                    n: p1.n(),
                },
            )
        }
    }
}

/// Classification of products of completions. Returns the lexicographically
/// smallest witness permutation when the products are isomorphic.
pub fn product_isomorphic(left: &[BsParams], right: &[BsParams]) -> Result<IsoVerdict> {
    for p in left.iter().chain(right) {
        require_hypothesis(p)?;
    }
    if left.len() != right.len() {
        return Ok(IsoVerdict::no(IsoReason::FactorCountMismatch {
            left: left.len(),
            right: right.len(),
        }));
    }
    if let ([l], [r]) = (left, right) {
        // Single factors: surface the pairwise reason, which names the
        // separating invariant.
        return Ok(g_isomorphic_unchecked(l, r));
    }
    let mut used = vec![false; right.len()];
    let mut sigma = Vec::with_capacity(left.len());
    for (i, l) in left.iter().enumerate() {
        let matched = right.iter().enumerate().find(|(j, r)| {
            !used[*j] && g_isomorphic_unchecked(l, r).isomorphic
        });
        match matched {
            Some((j, _)) => {
                used[j] = true;
                sigma.push(j + 1);
            }
            None => {
                return Ok(IsoVerdict::no(IsoReason::UnmatchedFactor { index: i + 1 }));
            }
        }
    }
    Ok(IsoVerdict::yes(sigma, IsoReason::ProductMatch))
}

/// Parameter conclusion for stably orbit equivalent free ergodic actions of
/// the two products whose canonical cyclic subgroups act aperiodically: the
/// verdict coincides with `product_isomorphic`, and the reason records the
/// reduction through the product of relative profinite completions.
pub fn soe_conclusion(left: &[BsParams], right: &[BsParams]) -> Result<IsoVerdict> {
    let mut verdict = product_isomorphic(left, right)?;
    verdict.reason = IsoReason::SoeParameterConclusion(Box::new(verdict.reason));
    Ok(verdict)
}

/// Parses the product syntax `(m,n)x(p,q)x...`: `(m,n)` factors joined by
/// `x`, whitespace-tolerant. Raw pairs are normalized via the parameter
/// moves before classification.
pub fn parse_product(text: &str) -> Result<Vec<BsParams>> {
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let mut factors = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() || bytes[i] != b'(' {
            return Err(err(i, "expected '(' starting a factor"));
        }
        let open = i;
        let close = text[i..]
            .find(')')
            .map(|off| i + off)
            .ok_or_else(|| err(open, "unclosed '('"))?;
        let inner = &text[i + 1..close];
        let comma = inner
            .find(',')
            .ok_or_else(|| err(open, "expected 'm,n' inside parentheses"))?;
        let parse_int = |s: &str, at: usize| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| err(at, &format!("invalid integer {:?}", s.trim())))
        };
        let m = parse_int(&inner[..comma], open + 1)?;
        let n = parse_int(&inner[comma + 1..], open + 1 + comma + 1)?;
        factors.push(BsParams::new(m, n)?);
        i = close + 1;
        skip_ws(&mut i);
        if i >= bytes.len() {
            return Ok(factors);
        }
        if bytes[i] != b'x' {
            return Err(err(i, "expected 'x' between factors"));
        }
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: i64, n: i64) -> BsParams {
        BsParams::new(m, n).unwrap()
    }

    #[test]
    fn discrete_group_isomorphism() {
        assert!(bs_isomorphic((2, 3), (-2, -3)).unwrap());
        assert!(bs_isomorphic((2, 3), (3, 2)).unwrap());
        assert!(!bs_isomorphic((2, 3), (2, 4)).unwrap());
        assert!(!bs_isomorphic((2, 2), (-2, 2)).unwrap());
        assert!(matches!(
            bs_isomorphic((0, 3), (2, 3)),
            Err(Error::InvalidParameters { .. })
        ));
    }

    #[test]
    fn completions_in_the_discrete_case() {
        let v = g_isomorphic(&p(2, 2), &p(-2, 2)).unwrap();
        assert!(v.isomorphic);
        assert_eq!(v.reason, IsoReason::DiscreteSameTorsion { order: 2 });
        let v = g_isomorphic(&p(2, 2), &p(3, 3)).unwrap();
        assert!(!v.isomorphic);
        let v = g_isomorphic(&p(2, 2), &p(2, 4)).unwrap();
        assert_eq!(v.reason, IsoReason::DiscretenessMismatch);
    }

    #[test]
    fn sign_of_m_separates_completions() {
        let v = g_isomorphic(&p(2, 3), &p(-2, 3)).unwrap();
        assert!(!v.isomorphic);
        assert_eq!(v.reason, IsoReason::SignMismatch);
    }

    #[test]
    fn scale_sets_separate_completions() {
        let v = g_isomorphic(&p(2, 4), &p(2, 6)).unwrap();
        assert!(!v.isomorphic);
        assert!(matches!(v.reason, IsoReason::ScaleSetMismatch { .. }));
    }

    #[test]
    fn min_index_separates_same_scale_set() {
        // (2,4) and (4,8) share the scale set {1} u {2^k} but differ in |m|.
        let v = g_isomorphic(&p(2, 4), &p(4, 8)).unwrap();
        assert!(!v.isomorphic);
        assert_eq!(v.reason, IsoReason::MinIndexMismatch { left: 2, right: 4 });
    }

    #[test]
    fn amenable_parameters_are_out_of_hypothesis() {
        assert!(matches!(
            g_isomorphic(&p(1, 5), &p(2, 3)),
            Err(Error::OutOfHypothesis { .. })
        ));
    }

    #[test]
    fn product_matching_with_witness() {
        let v = product_isomorphic(&[p(2, 3), p(4, 4)], &[p(-4, 4), p(2, 3)]).unwrap();
        assert!(v.isomorphic);
        assert_eq!(v.witness, Some(vec![2, 1]));

        let v = product_isomorphic(&[p(2, 3)], &[p(2, 3), p(2, 3)]).unwrap();
        assert!(!v.isomorphic);
        assert_eq!(v.reason, IsoReason::FactorCountMismatch { left: 1, right: 2 });

        let v = product_isomorphic(&[p(2, 4), p(3, 6)], &[p(3, 6), p(2, 4)]).unwrap();
        assert!(v.isomorphic);
        assert_eq!(v.witness, Some(vec![2, 1]));
    }

    #[test]
    fn identical_factors_get_the_identity_witness() {
        let v = product_isomorphic(&[p(2, 3), p(2, 3)], &[p(2, 3), p(2, 3)]).unwrap();
        assert_eq!(v.witness, Some(vec![1, 2]));
    }

    #[test]
    fn soe_conclusion_wraps_the_product_verdict() {
        let v = soe_conclusion(&[p(2, 3)], &[p(2, 3)]).unwrap();
        assert!(v.isomorphic);
        assert_eq!(v.witness, Some(vec![1]));
        assert!(matches!(v.reason, IsoReason::SoeParameterConclusion(_)));

        let v = soe_conclusion(&[p(2, 3)], &[p(-2, 3)]).unwrap();
        assert!(!v.isomorphic);

        let v = soe_conclusion(&[p(2, 2), p(2, 3)], &[p(-2, 2), p(2, 3)]).unwrap();
        assert!(v.isomorphic);
    }

    #[test]
    fn product_syntax_parsing() {
        let factors = parse_product("(2,3)x(-4,4)").unwrap();
        assert_eq!(factors, vec![p(2, 3), p(-4, 4)]);
        let factors = parse_product(" (2, 3) x (4, 6) ").unwrap();
        assert_eq!(factors, vec![p(2, 3), p(4, 6)]);
        assert!(parse_product("").is_err());
        assert!(parse_product("(2,3)y(4,4)").is_err());
        assert!(parse_product("(2 3)").is_err());
        assert!(parse_product("(2,3").is_err());
        assert!(parse_product("(0,3)").is_err());
    }
}

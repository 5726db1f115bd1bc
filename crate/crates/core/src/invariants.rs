//! Invariants of the relative profinite completion `G(m, n)`.
//!
//! `G(m, n)` is the closure of the image of `BS(m, n)` in the permutation
//! group of `BS(m, n)/<a>`, a totally disconnected locally compact group
//! with compact open subgroup `K(m, n)`, the closure of the image of `<a>`.
//! Nothing profinite is materialized here; only exactly computable shadows
//! appear: the modular function from the signed `t`-letter count, the image
//! of the scale function, the indices of the closures of `<a^m>` and `<a^n>`,
//! the HNN structure descriptor, and conjugation on mod-N residues.

use std::fmt;
use std::num::NonZeroU64;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::params::{BsParams, TSign};
use crate::word::{Letter, Word};

/// The image of the scale function: `{m0^k : k >= 0} u {n0^k : k >= 0}`
/// for the coprime pair `(m0, n0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaleSet {
    m0: u64,
    n0: u64,
}

impl ScaleSet {
    pub fn m0(&self) -> u64 {
        self.m0
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    /// True iff `v` is a power of `m0` or a power of `n0` (1 always is).
    pub fn contains(&self, v: u64) -> bool {
        is_power_of(v, self.m0) || is_power_of(v, self.n0)
    }
}

impl fmt::Display for ScaleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}^k}} u {{{}^k}}", self.m0, self.n0)
    }
}

fn is_power_of(v: u64, base: u64) -> bool {
    if v == 1 {
        return true;
    }
    if base <= 1 {
        return false;
    }
    let mut cur = v;
    while cur.is_multiple_of(base) {
        cur /= base;
    }
    cur == 1
}

/// The scale-function image of `G(m, n)`. For `|m| = n` this is `{1}`.
pub fn scale_set(params: &BsParams) -> ScaleSet {
    ScaleSet {
        m0: params.m0() as u64,
        n0: params.n0() as u64,
    }
}

/// A value of the modular function, a reduced positive rational
/// `(n/|m|)^e` where `e` is the signed `t`-letter count of the input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModularValue {
    numerator: BigUint,
    denominator: BigUint,
}

impl ModularValue {
    pub fn one() -> Self {
        ModularValue {
            numerator: BigUint::one(),
            denominator: BigUint::one(),
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn is_one(&self) -> bool {
        self.numerator == self.denominator
    }

    /// Product of two values; stays reduced because both sides are powers of
    /// the same reduced base.
    pub fn times(&self, other: &ModularValue) -> ModularValue {
        let num = &self.numerator * &other.numerator;
        let den = &self.denominator * &other.denominator;
        let g = num.gcd(&den);
        ModularValue {
            numerator: num / &g,
            denominator: den / &g,
        }
    }

    pub fn inverse(&self) -> ModularValue {
        ModularValue {
            numerator: self.denominator.clone(),
            denominator: self.numerator.clone(),
        }
    }
}

impl fmt::Display for ModularValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Modular function of `G(m, n)` evaluated on (the image of) `g`:
/// `(n/|m|)^e` as a reduced fraction, with `e` the `t`-exponent sum of `g`.
/// The sum is a word-problem invariant, so equal words get equal values,
/// and the map is multiplicative.
///
/// Errors only when the expanded fraction is unrepresentable, i.e. the
/// exponent magnitude exceeds `u32::MAX` while the reduced base is not 1.
pub fn modular_delta(g: &Word) -> Result<ModularValue> {
    let params = g.params();
    // Reduced base n/|m| = n0/m0.
    let base_num = BigUint::from(params.n0() as u64);
    let base_den = BigUint::from(params.m0() as u64);
    if base_num == base_den {
        return Ok(ModularValue::one());
    }
    let e = g.t_exponent_sum();
    if e.is_zero() {
        return Ok(ModularValue::one());
    }
    let magnitude = u32::try_from(e.magnitude())
        .map_err(|_| Error::Overflow("t-exponent sum too large to expand".into()))?;
    let (numerator, denominator) = if e.is_positive() {
        (base_num.pow(magnitude), base_den.pow(magnitude))
    } else {
        (base_den.pow(magnitude), base_num.pow(magnitude))
    };
    Ok(ModularValue {
        numerator,
        denominator,
    })
}

/// The two compact open subgroups whose index in `K(m, n)` is pinned by the
/// parameters: the closures of `<a^m>` and `<a^n>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompactSubgroup {
    /// `mK(m, n)`, the closure of `<a^m>`; index `|m|`.
    MK,
    /// `nK(m, n)`, the closure of `<a^n>`; index `n`.
    NK,
}

/// `[K : mK] = |m|` and `[K : nK] = n`. Cross-validated in tests against
/// the orbit counts of the coset action.
pub fn subgroup_index(params: &BsParams, which: CompactSubgroup) -> u64 {
    match which {
        CompactSubgroup::MK => params.m_abs() as u64,
        CompactSubgroup::NK => params.n() as u64,
    }
}

/// Base group of the HNN splitting of `G(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HnnBase {
    /// `K(m, n)`, a profinite completion of the integers determined by the
    /// parameter pair.
    ProfiniteIntegers { m: i64, n: i64 },
    /// The finite cyclic group of the given order; arises exactly when
    /// `|m| = n`, where the completion is the discrete group `Z/mZ * Z`.
    FiniteCyclic { order: u64 },
}

/// Structure record: `G(m, n)` is the HNN extension of its compact open
/// subgroup over the embedded copy of index `|m|`, carried by the stable
/// letter onto the copy of index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HnnDescriptor {
    pub base: HnnBase,
    /// Index in the base of the associated subgroup, `[K : mK] = |m|`.
    pub embedded_index: u64,
    /// Index in the base of its image under the stable letter, `[K : nK] = n`.
    pub image_index: u64,
    pub stable_letter: char,
}

pub fn hnn_descriptor(params: &BsParams) -> HnnDescriptor {
    let base = if params.has_discrete_completion() {
        HnnBase::FiniteCyclic {
            order: params.m_abs() as u64,
        }
    } else {
        HnnBase::ProfiniteIntegers {
            m: params.m(),
            n: params.n(),
        }
    };
    HnnDescriptor {
        base,
        embedded_index: subgroup_index(params, CompactSubgroup::MK),
        image_index: subgroup_index(params, CompactSubgroup::NK),
        stable_letter: 't',
    }
}

/// Residue class mod `modulus` of the exponent image of `a^k` under
/// conjugation by `g`, computed letter by letter from the right on the
/// pinch-free spelling of `g`. `None` when some intermediate conjugate
/// leaves `<a>`, i.e. a divisibility step fails; on the reduced spelling
/// this happens exactly when `g a^k g^-1` itself leaves `<a>`, so the result
/// depends only on the group element. This is the finite-quotient shadow of
/// conjugation inside `K(m, n)`.
pub fn residue_action(k: &BigInt, modulus: NonZeroU64, g: &Word) -> Option<u64> {
    let params = *g.params();
    let g = crate::britton::britton_reduce(g);
    let mut current = k.clone();
    for syl in g.syllables().iter().rev() {
        if syl.letter == Letter::A || current.is_zero() {
            continue;
        }
        let direction = if syl.exponent.is_positive() {
            TSign::Plus
        } else {
            TSign::Minus
        };
        let mut steps = syl.exponent.magnitude().clone();
        while !steps.is_zero() && !current.is_zero() {
            current = params.conjugate_by_t(&current, direction)?;
            steps -= 1u32;
        }
    }
    let residue = current.mod_floor(&BigInt::from(modulus.get()));
    Some(u64::try_from(&residue).expect("residue below a u64 modulus"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: i64, n: i64) -> BsParams {
        BsParams::new(m, n).unwrap()
    }

    fn w(text: &str, params: BsParams) -> Word {
        Word::parse(text, params).unwrap()
    }

    fn delta_str(text: &str, params: BsParams) -> String {
        modular_delta(&w(text, params)).unwrap().to_string()
    }

    #[test]
    fn delta_of_the_stable_letter() {
        assert_eq!(delta_str("t", p(2, 3)), "3/2");
        assert_eq!(delta_str("t", p(2, 4)), "2/1");
        assert_eq!(delta_str("t", p(-2, 3)), "3/2");
        assert_eq!(delta_str("t", p(2, 2)), "1/1");
    }

    #[test]
    fn delta_is_trivial_on_a_powers() {
        assert_eq!(delta_str("a^9", p(2, 3)), "1/1");
        assert_eq!(delta_str("", p(2, 3)), "1/1");
    }

    #[test]
    fn delta_follows_the_exponent_sum() {
        assert_eq!(delta_str("t^-2", p(2, 3)), "4/9");
        assert_eq!(delta_str("t^3 a t^-1 a^5 t^-2", p(2, 3)), "1/1");
        let d = modular_delta(&w("t", p(2, 3))).unwrap();
        assert_eq!(d.times(&d.inverse()), ModularValue::one());
    }

    #[test]
    fn delta_overflow_is_reported_not_expanded() {
        let g = w("t^5000000000", p(2, 3));
        assert!(matches!(modular_delta(&g), Err(Error::Overflow(_))));
        // The discrete case stays representable whatever the exponent.
        let g = w("t^5000000000", p(2, 2));
        assert!(modular_delta(&g).unwrap().is_one());
    }

    #[test]
    fn scale_sets() {
        let s = scale_set(&p(4, 6));
        assert_eq!((s.m0(), s.n0()), (2, 3));
        let s = scale_set(&p(2, 3));
        assert_eq!((s.m0(), s.n0()), (2, 3));
        let s = scale_set(&p(2, 2));
        assert_eq!((s.m0(), s.n0()), (1, 1));
    }

    #[test]
    fn scale_membership() {
        let s = scale_set(&p(4, 6));
        assert!(s.contains(8));
        assert!(s.contains(9));
        assert!(!s.contains(6));
        assert!(s.contains(1));
        // Trivial scale image in the discrete case: only 1.
        let s = scale_set(&p(2, 2));
        assert!(s.contains(1));
        assert!(!s.contains(2));
    }

    #[test]
    fn compact_subgroup_indices() {
        assert_eq!(subgroup_index(&p(2, 3), CompactSubgroup::MK), 2);
        assert_eq!(subgroup_index(&p(2, 3), CompactSubgroup::NK), 3);
        assert_eq!(subgroup_index(&p(1, 1), CompactSubgroup::MK), 1);
        assert_eq!(subgroup_index(&p(-3, 6), CompactSubgroup::MK), 3);
    }

    #[test]
    fn hnn_descriptors() {
        let d = hnn_descriptor(&p(2, 3));
        assert_eq!(d.base, HnnBase::ProfiniteIntegers { m: 2, n: 3 });
        assert_eq!((d.embedded_index, d.image_index), (2, 3));
        assert_eq!(d.stable_letter, 't');

        let d = hnn_descriptor(&p(2, 2));
        assert_eq!(d.base, HnnBase::FiniteCyclic { order: 2 });
        let d = hnn_descriptor(&p(3, 3));
        assert_eq!(d.base, HnnBase::FiniteCyclic { order: 3 });
    }

    #[test]
    fn residue_action_matches_the_relation() {
        let params = p(2, 3);
        let modulus = NonZeroU64::new(12).unwrap();
        let t = w("t", params);
        assert_eq!(residue_action(&BigInt::from(4), modulus, &t), Some(6));
        assert_eq!(residue_action(&BigInt::from(3), modulus, &t), None);
        let e = Word::identity(params);
        assert_eq!(residue_action(&BigInt::from(7), modulus, &e), Some(7));

        // t a^(m^2 n^2) t^-1 = a^(m n^3): 36 -> 54.
        let big = NonZeroU64::new(1000).unwrap();
        assert_eq!(residue_action(&BigInt::from(36), big, &t), Some(54));
    }

    #[test]
    fn residue_action_through_longer_conjugators() {
        let params = p(2, 3);
        let modulus = NonZeroU64::new(100).unwrap();
        // t^2 a^4 t^-2 = a^9.
        let g = w("t^2", params);
        assert_eq!(residue_action(&BigInt::from(4), modulus, &g), Some(9));
        assert_eq!(residue_action(&BigInt::from(2), modulus, &g), None);
        // a-letters conjugate trivially.
        let g = w("a^5 t a^-2", params);
        assert_eq!(residue_action(&BigInt::from(4), modulus, &g), Some(6));
        // Zero passes through everything.
        assert_eq!(residue_action(&BigInt::zero(), modulus, &g), Some(0));
    }
}

//! Shared test oracles and generators.
//!
//! The oracles here are deliberately independent of the library's reduction
//! path:
//!
//! - `Affine` evaluates words in the affine representation `a -> x + 1`,
//!   `t -> (n/m) x` over exact rationals. The defining relation maps to a
//!   true identity there, so a correct rewrite never changes the value.
//! - `is_pinch_free` re-implements the pinch definition directly over the
//!   stored syllables.
//! - `traced_reduce` re-runs pinch elimination step by step, checking each
//!   single rewrite against the affine representation before applying it.

#![allow(dead_code)]

use bs_core::{BsParams, Letter, TSign, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// The parameter sets exercised throughout the suite: generic, common
/// divisor, scaled, negative `m`, and the discrete-completion case.
pub const PARAM_SETS: [(i64, i64); 5] = [(2, 3), (2, 4), (3, 6), (-2, 3), (2, 2)];

pub fn params(m: i64, n: i64) -> BsParams {
    BsParams::new(m, n).unwrap()
}

/// An affine map `x -> slope * x + offset` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub slope: BigRational,
    pub offset: BigRational,
}

impl Affine {
    pub fn identity() -> Self {
        Affine {
            slope: BigRational::one(),
            offset: BigRational::zero(),
        }
    }

    /// `self` after `inner`: `(self o inner)(x) = self(inner(x))`.
    pub fn compose(&self, inner: &Affine) -> Affine {
        Affine {
            slope: &self.slope * &inner.slope,
            offset: &self.slope * &inner.offset + &self.offset,
        }
    }

    /// Evaluates the representation `a -> x + 1`, `t -> (n/m) x`. This is a
    /// homomorphism (the relation `t a^m t^-1 = a^n` holds on the nose), so
    /// it is a sound one-sided oracle: words equal in the group evaluate
    /// equally.
    pub fn of_word(w: &Word) -> Affine {
        let p = w.params();
        let ratio = BigRational::new(BigInt::from(p.n()), BigInt::from(p.m()));
        let mut acc = Affine::identity();
        for syl in w.syllables() {
            let exp = i32::try_from(&syl.exponent).expect("test exponents stay small");
            let step = match syl.letter {
                Letter::A => Affine {
                    slope: BigRational::one(),
                    offset: BigRational::from_integer(syl.exponent.clone()),
                },
                Letter::T => Affine {
                    slope: ratio.pow(exp),
                    offset: BigRational::zero(),
                },
            };
            acc = acc.compose(&step);
        }
        acc
    }
}

/// Locates the leftmost pinch as a syllable triple: `(t-block, a-block,
/// t-block)` with facing letters of opposite sign and inner exponent
/// divisible by `m` (facing `t ... t^-1`) or `n` (facing `t^-1 ... t`).
/// Returns the triple index and the rewritten inner exponent.
pub fn leftmost_pinch(w: &Word) -> Option<(usize, BigInt)> {
    let p = w.params();
    let syls = w.syllables();
    for i in 0..syls.len().saturating_sub(2) {
        let (l, mid, r) = (&syls[i], &syls[i + 1], &syls[i + 2]);
        if l.letter != Letter::T || mid.letter != Letter::A || r.letter != Letter::T {
            continue;
        }
        let facing = match (l.exponent.is_positive(), r.exponent.is_positive()) {
            (true, false) => TSign::Plus,
            (false, true) => TSign::Minus,
            _ => continue,
        };
        if let Some(inner) = p.conjugate_by_t(&mid.exponent, facing) {
            return Some((i, inner));
        }
    }
    None
}

/// The pinch definition, applied directly to the stored word.
pub fn is_pinch_free(w: &Word) -> bool {
    leftmost_pinch(w).is_none()
}

/// Pinch elimination re-implemented step by step. Before each rewrite the
/// replaced subword `t^s a^old t^-s` and its replacement `a^new` are checked
/// to agree in the affine representation, certifying the step as an instance
/// of the defining relation.
pub fn traced_reduce(w: &Word) -> Word {
    let p = *w.params();
    let mut cur = w.clone();
    let mut fuel = 10_000;
    while let Some((i, inner)) = leftmost_pinch(&cur) {
        assert!(fuel > 0, "reduction did not terminate");
        fuel -= 1;
        let syls = cur.syllables();
        let sign = if syls[i].exponent.is_positive() { 1 } else { -1 };
        let lhs = Word::from_syllables(
            p,
            [
                (Letter::T, BigInt::from(sign)),
                (Letter::A, syls[i + 1].exponent.clone()),
                (Letter::T, BigInt::from(-sign)),
            ],
        );
        let rhs = Word::from_syllables(p, [(Letter::A, inner.clone())]);
        assert_eq!(
            Affine::of_word(&lhs),
            Affine::of_word(&rhs),
            "rewrite is not a relation instance: {lhs} -> {rhs}"
        );
        let mut pairs: Vec<(Letter, BigInt)> = Vec::new();
        for (j, s) in syls.iter().enumerate() {
            let exponent = if j == i {
                &s.exponent - BigInt::from(sign)
            } else if j == i + 1 {
                inner.clone()
            } else if j == i + 2 {
                &s.exponent + BigInt::from(sign)
            } else {
                s.exponent.clone()
            };
            pairs.push((s.letter, exponent));
        }
        cur = Word::from_syllables(p, pairs);
    }
    cur
}

/// A random word with at most `max_syllables` alternating syllables and
/// exponents in `[-max_exp, max_exp] \ {0}`.
pub fn random_word<R: Rng>(p: BsParams, rng: &mut R, max_syllables: usize, max_exp: i64) -> Word {
    let len = rng.gen_range(0..=max_syllables);
    let mut letter = if rng.gen_bool(0.5) { Letter::A } else { Letter::T };
    let mut pairs = Vec::with_capacity(len);
    for _ in 0..len {
        pairs.push((letter, nonzero_exp(rng, max_exp)));
        letter = match letter {
            Letter::A => Letter::T,
            Letter::T => Letter::A,
        };
    }
    Word::from_syllables(p, pairs)
}

fn nonzero_exp<R: Rng>(rng: &mut R, max_exp: i64) -> i64 {
    loop {
        let e = rng.gen_range(-max_exp..=max_exp);
        if e != 0 {
            return e;
        }
    }
}

/// A freely reduced, pinch-free word with at least one `t`-letter, built
/// directly from the pinch definition: interior `a`-exponents between
/// opposite `t`-signs avoid the forbidden divisibility. Requires `|m| >= 2`.
pub fn random_pinch_free_with_t<R: Rng>(p: BsParams, rng: &mut R, max_t: usize) -> Word {
    assert!(p.m_abs() >= 2, "pinch-free generation needs |m| >= 2");
    let t_count = rng.gen_range(1..=max_t.max(1));
    let signs: Vec<i64> = (0..t_count)
        .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
        .collect();
    let mut pairs: Vec<(Letter, i64)> = Vec::new();
    let head = rng.gen_range(-20..=20);
    pairs.push((Letter::A, head));
    for (i, &s) in signs.iter().enumerate() {
        pairs.push((Letter::T, s));
        if i + 1 < signs.len() {
            let next = signs[i + 1];
            let interior = if s != next {
                // Facing opposite signs: avoid the divisor that would pinch.
                let divisor = if s > 0 { p.m_abs() } else { p.n() };
                loop {
                    let e = rng.gen_range(-20i64..=20);
                    if e.rem_euclid(divisor) != 0 {
                        break e;
                    }
                }
            } else {
                rng.gen_range(-20..=20)
            };
            pairs.push((Letter::A, interior));
        }
    }
    pairs.push((Letter::A, rng.gen_range(-20..=20)));
    let w = Word::from_syllables(p, pairs);
    debug_assert!(is_pinch_free(&w));
    debug_assert!(w.t_letter_count() > BigInt::zero());
    w
}

/// The relation word `a^-n t a^m t^-1`, the identity of the group.
pub fn relation_word(p: BsParams) -> Word {
    Word::from_syllables(
        p,
        [
            (Letter::A, -p.n()),
            (Letter::T, 1),
            (Letter::A, p.m()),
            (Letter::T, -1),
        ],
    )
}

/// A pair of words equal in the group: the second is the first multiplied
/// by conjugated relation words on either side.
pub fn random_equal_pair<R: Rng>(p: BsParams, rng: &mut R) -> (Word, Word) {
    let u = random_word(p, rng, 5, 12);
    let mut v = u.clone();
    for _ in 0..rng.gen_range(1..=2) {
        let c = random_word(p, rng, 2, 4);
        let rel = if rng.gen_bool(0.5) {
            relation_word(p)
        } else {
            relation_word(p).invert()
        };
        let gadget = c.multiply(&rel).unwrap().multiply(&c.invert()).unwrap();
        v = if rng.gen_bool(0.5) {
            v.multiply(&gadget).unwrap()
        } else {
            gadget.multiply(&v).unwrap()
        };
    }
    (u, v)
}

/// Cumulative ball sizes of the `(|m| + n)`-regular tree for radii
/// `0..=radius`.
pub fn closed_form_ball_sizes(p: BsParams, radius: u32) -> Vec<usize> {
    let degree = (p.m_abs() + p.n()) as usize;
    let mut sizes = vec![1usize];
    let mut sphere = 1usize;
    for r in 1..=radius {
        sphere = if r == 1 { degree } else { sphere * (degree - 1) };
        sizes.push(sizes.last().unwrap() + sphere);
    }
    sizes
}

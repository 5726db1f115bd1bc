//! Word-problem solver: pinch elimination after Britton.
//!
//! A pinch is a subword `t a^s t^-1` with `m | s` or `t^-1 a^s t` with
//! `n | s`. Rewriting `t a^mk t^-1 -> a^nk` and `t^-1 a^nk t -> a^mk` until
//! no pinch remains yields a freely reduced, pinch-free word; such a word
//! represents the neutral element only if it is empty. Every rewrite removes
//! two `t`-letters, so reduction always terminates.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::params::{BsParams, TSign};
use crate::word::{Letter, Syllable, Word};

/// Returns the pinch-free word equal to `w`, rewriting leftmost pinches
/// first. `t`-powers of magnitude greater than one are stored whole but
/// split logically: a pinch may consume the boundary letter of a block.
pub fn britton_reduce(w: &Word) -> Word {
    let params = *w.params();
    let mut word = w.clone();
    while let Some((i, inner)) = find_pinch(&params, word.syllables()) {
        word = apply_pinch(&params, word.syllables(), i, inner);
    }
    word
}

/// True iff `w` represents the neutral element.
pub fn is_identity(w: &Word) -> bool {
    britton_reduce(w).is_empty_word()
}

/// True iff `u` and `v` represent the same group element.
pub fn are_equal(u: &Word, v: &Word) -> Result<bool> {
    Ok(is_identity(&u.multiply(&v.invert())?))
}

/// If `w` lies in the cyclic subgroup generated by `a`, returns the exponent
/// `k` with `w = a^k` (`0` for the identity).
pub fn a_subgroup_exponent(w: &Word) -> Option<BigInt> {
    let reduced = britton_reduce(w);
    match reduced.syllables() {
        [] => Some(BigInt::zero()),
        [s] if s.letter == Letter::A => Some(s.exponent.clone()),
        _ => None,
    }
}

/// Locates the leftmost pinch: a syllable triple `(t-block, a-block,
/// t-block)` whose facing letters have opposite signs and whose inner
/// exponent is divisible by the matching parameter. Returns the triple's
/// start index and the rewritten inner exponent.
fn find_pinch(params: &BsParams, syls: &[Syllable]) -> Option<(usize, BigInt)> {
    for i in 0..syls.len().saturating_sub(2) {
        let (left, mid, right) = (&syls[i], &syls[i + 1], &syls[i + 2]);
        if left.letter != Letter::T || mid.letter != Letter::A || right.letter != Letter::T {
            continue;
        }
        let facing = match (left.exponent.is_positive(), right.exponent.is_positive()) {
            (true, false) => TSign::Plus,
            (false, true) => TSign::Minus,
            _ => continue,
        };
        if let Some(inner) = params.conjugate_by_t(&mid.exponent, facing) {
            return Some((i, inner));
        }
    }
    None
}

/// Rewrites the pinch at `i`, shrinking both `t`-blocks by one letter, and
/// re-reduces the result.
fn apply_pinch(params: &BsParams, syls: &[Syllable], i: usize, inner: BigInt) -> Word {
    let step = if syls[i].exponent.is_positive() { 1 } else { -1 };
    let mut out = Word::identity(*params);
    for (j, s) in syls.iter().enumerate() {
        let exponent = if j == i {
            &s.exponent - BigInt::from(step)
        } else if j == i + 1 {
            inner.clone()
        } else if j == i + 2 {
            &s.exponent + BigInt::from(step)
        } else {
            s.exponent.clone()
        };
        out.push_reduced(s.letter, exponent);
    }
    out
}

//! Canonical normal form for group elements.
//!
//! Every element is written uniquely as
//!
//! ```text
//!     a^{r_1} t^{s_1} a^{r_2} t^{s_2} ... a^{r_k} t^{s_k} a^{tail}
//! ```
//!
//! where each residue `r_i` precedes the sign `s_i` and lies in the
//! transversal `{0, ..., |m|-1}` when `s_i = -1` and `{0, ..., n-1}` when
//! `s_i = +1`, the sign pattern is pinch-free (a residue sitting between
//! opposite signs is nonzero), and the tail exponent is unconstrained. The
//! form is computed left-greedily: excess `a`-powers are pushed rightward
//! through each `t`-letter via `a^n t = t a^m` and `a^m t^-1 = t^-1 a^n`.
//! Two elements are equal in the group iff their normal forms are identical
//! as data; this canonicity is property-tested against the word-problem
//! oracle rather than assumed.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::britton::britton_reduce;
use crate::params::{BsParams, TSign};
use crate::word::{Letter, Word};

/// One `a^residue t^sign` segment of a normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrefixEntry {
    pub sign: TSign,
    pub residue: u64,
}

/// The canonical form of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    params: BsParams,
    prefix: Vec<PrefixEntry>,
    tail: BigInt,
}

impl NormalForm {
    /// Computes the normal form of `w`.
    pub fn of_word(w: &Word) -> Self {
        let params = *w.params();
        let reduced = britton_reduce(w);
        let mut prefix = Vec::new();
        let mut carry = BigInt::zero();
        for syl in reduced.syllables() {
            match syl.letter {
                Letter::A => carry += &syl.exponent,
                Letter::T => {
                    let sign = if syl.exponent > BigInt::zero() {
                        TSign::Plus
                    } else {
                        TSign::Minus
                    };
                    let mut count = syl.exponent.magnitude().clone();
                    while !count.is_zero() {
                        let (residue, carried) = match sign {
                            TSign::Plus => {
                                let (r, q) = params.split_mod_n(&carry);
                                (r, BigInt::from(params.m()) * q)
                            }
                            TSign::Minus => {
                                let (r, q) = params.split_mod_m(&carry);
                                (r, BigInt::from(params.n()) * q)
                            }
                        };
                        prefix.push(PrefixEntry { sign, residue });
                        carry = carried;
                        count -= 1u32;
                    }
                }
            }
        }
        NormalForm::from_parts(params, prefix, carry)
    }

    /// Assembles a normal form from already-canonical parts.
    pub(crate) fn from_parts(params: BsParams, prefix: Vec<PrefixEntry>, tail: BigInt) -> Self {
        let nf = NormalForm {
            params,
            prefix,
            tail,
        };
        debug_assert!(nf.is_canonical(), "non-canonical normal form: {nf:?}");
        nf
    }

    fn is_canonical(&self) -> bool {
        let mut prev_sign: Option<TSign> = None;
        for entry in &self.prefix {
            let range = match entry.sign {
                TSign::Plus => self.params.n() as u64,
                TSign::Minus => self.params.m_abs() as u64,
            };
            if entry.residue >= range {
                return false;
            }
            if prev_sign == Some(entry.sign.opposite()) && entry.residue == 0 {
                return false;
            }
            prev_sign = Some(entry.sign);
        }
        true
    }

    pub fn params(&self) -> &BsParams {
        &self.params
    }

    pub fn prefix(&self) -> &[PrefixEntry] {
        &self.prefix
    }

    pub fn tail(&self) -> &BigInt {
        &self.tail
    }

    /// Number of `t`-letters in the form; equals the Bass-Serre tree depth
    /// of the coset the form represents.
    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    /// The same form with the tail exponent replaced.
    pub(crate) fn with_tail(&self, tail: BigInt) -> Self {
        NormalForm::from_parts(self.params, self.prefix.clone(), tail)
    }

    /// Materializes the canonical word `a^{r_1} t^{s_1} ... a^{tail}`.
    pub fn to_word(&self) -> Word {
        let mut pairs: Vec<(Letter, BigInt)> = Vec::with_capacity(2 * self.prefix.len() + 1);
        for entry in &self.prefix {
            pairs.push((Letter::A, BigInt::from(entry.residue)));
            pairs.push((Letter::T, BigInt::from(entry.sign.as_i64())));
        }
        pairs.push((Letter::A, self.tail.clone()));
        Word::from_syllables(self.params, pairs)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

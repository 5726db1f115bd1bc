//! Words over the generators `a` and `t`, stored freely reduced.
//!
//! A word is an alternating sequence of `a`-power and `t`-power syllables
//! with nonzero arbitrary-precision exponents; the empty sequence is the
//! neutral element. Free reduction (merging adjacent same-letter syllables
//! and dropping zero exponents) is applied on every construction, so the
//! stored form is always minimal as a free word.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::params::BsParams;

/// Generator letter of a syllable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    T,
}

/// A maximal power of a single letter, `a^e` or `t^e` with `e != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub letter: Letter,
    pub exponent: BigInt,
}

impl Syllable {
    pub fn new(letter: Letter, exponent: impl Into<BigInt>) -> Self {
        let exponent = exponent.into();
        debug_assert!(!exponent.is_zero(), "syllable exponent must be nonzero");
        Syllable { letter, exponent }
    }
}

/// An element of `BS(m, n)` as a freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    params: BsParams,
    syllables: Vec<Syllable>,
}

impl Word {
    /// The neutral element.
    pub fn identity(params: BsParams) -> Self {
        Word {
            params,
            syllables: Vec::new(),
        }
    }

    /// `a^k`; the identity when `k = 0`.
    pub fn a_power(params: BsParams, k: impl Into<BigInt>) -> Self {
        Word::from_syllables(params, [(Letter::A, k.into())])
    }

    /// `t^k`; the identity when `k = 0`.
    pub fn t_power(params: BsParams, k: impl Into<BigInt>) -> Self {
        Word::from_syllables(params, [(Letter::T, k.into())])
    }

    /// Builds a word from letter/exponent pairs, freely reducing as it goes.
    pub fn from_syllables<I, E>(params: BsParams, pairs: I) -> Self
    where
        I: IntoIterator<Item = (Letter, E)>,
        E: Into<BigInt>,
    {
        let mut w = Word::identity(params);
        for (letter, exponent) in pairs {
            w.push_reduced(letter, exponent.into());
        }
        w
    }

    /// Parses the word grammar: tokens `a` or `t`, optionally followed by
    /// `^` and a signed decimal integer, separated by whitespace. Empty or
    /// all-whitespace input is the neutral element; a literal exponent `0`
    /// is rejected.
    pub fn parse(text: &str, params: BsParams) -> Result<Self> {
        let mut w = Word::identity(params);
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let token = &text[start..i];
            let (letter, exponent) = parse_token(token, start)?;
            w.push_reduced(letter, exponent);
        }
        Ok(w)
    }

    pub fn params(&self) -> &BsParams {
        &self.params
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty_word(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Sum of all `t`-exponents; invariant under the defining relation.
    pub fn t_exponent_sum(&self) -> BigInt {
        self.syllables
            .iter()
            .filter(|s| s.letter == Letter::T)
            .map(|s| &s.exponent)
            .sum()
    }

    /// Total number of `t`-letters, counted with multiplicity.
    pub fn t_letter_count(&self) -> BigInt {
        self.syllables
            .iter()
            .filter(|s| s.letter == Letter::T)
            .map(|s| s.exponent.abs())
            .sum()
    }

    /// Group multiplication: concatenation followed by free reduction.
    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.params.check_same(&other.params)?;
        let mut out = self.clone();
        for s in &other.syllables {
            out.push_reduced(s.letter, s.exponent.clone());
        }
        Ok(out)
    }

    /// Group inverse: syllables reversed with negated exponents.
    pub fn invert(&self) -> Word {
        Word {
            params: self.params,
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.letter, -&s.exponent))
                .collect(),
        }
    }

    /// Appends one syllable, maintaining free reduction of the stored form.
    pub(crate) fn push_reduced(&mut self, letter: Letter, exponent: BigInt) {
        if exponent.is_zero() {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.letter == letter => {
                last.exponent += exponent;
                if last.exponent.is_zero() {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(Syllable { letter, exponent }),
        }
    }
}

fn parse_token(token: &str, position: usize) -> Result<(Letter, BigInt)> {
    let err = |message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let mut chars = token.chars();
    let letter = match chars.next() {
        Some('a') => Letter::A,
        Some('t') => Letter::T,
        _ => return Err(err(&format!("expected token 'a' or 't', found {token:?}"))),
    };
    let rest = chars.as_str();
    if rest.is_empty() {
        return Ok((letter, BigInt::one()));
    }
    let Some(digits) = rest.strip_prefix('^') else {
        return Err(err(&format!("expected '^' after letter in {token:?}")));
    };
    let exponent: BigInt = digits
        .parse()
        .map_err(|_| err(&format!("invalid exponent {digits:?}")))?;
    if exponent.is_zero() {
        return Err(err("exponent 0 is not allowed"));
    }
    Ok((letter, exponent))
}

impl fmt::Display for Word {
    /// Minimal freely reduced serialization; exponent 1 prints as the bare
    /// letter, the empty word prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let letter = match s.letter {
                Letter::A => 'a',
                Letter::T => 't',
            };
            if s.exponent.is_one() {
                write!(f, "{letter}")?;
            } else {
                write!(f, "{letter}^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

//! Exact computation in Baumslag-Solitar groups `BS(m, n)` and their
//! relative profinite completions `G(m, n)`.
//!
//! `BS(m, n)` is the two-generator one-relator group with presentation
//! `< a, t | t a^m t^-1 = a^n >`. The crate provides:
//!
//! - the word problem, via pinch elimination and a canonical normal form
//!   ([`britton_reduce`], [`NormalForm`]);
//! - the Bass-Serre tree, whose vertices are cosets `g<a>` and positive
//!   edges cosets `g<a^m>`, with the left-multiplication action
//!   ([`tree`]);
//! - orbit combinatorics of the coset action: ball-restricted permutations,
//!   subgroup indices as orbit lengths, commensuration exponents
//!   ([`dynamics`]);
//! - invariants of the completion `G(m, n)`: modular function, scale-set
//!   image, compact-open subgroup indices, HNN structure ([`invariants`]);
//! - the full isomorphism classification of the groups, their completions,
//!   and finite direct products of completions, with witness permutations
//!   ([`classify`]).
//!
//! All exponents are arbitrary precision, every value is immutable after
//! construction, and every operation is a pure function, so everything is
//! safe to share across threads.
//!
//! ```
//! use bs_core::{BsParams, Word, britton_reduce};
//!
//! let params = BsParams::new(2, 3).unwrap();
//! let w = Word::parse("t a^2 t^-1", params).unwrap();
//! assert_eq!(britton_reduce(&w).to_string(), "a^3");
//! ```

mod britton;
mod error;
mod normal_form;
mod params;
mod word;

pub mod classify;
pub mod dynamics;
pub mod invariants;
pub mod tree;

pub use britton::{a_subgroup_exponent, are_equal, britton_reduce, is_identity};
pub use error::{Error, Result};
pub use normal_form::{NormalForm, PrefixEntry};
pub use params::{BsParams, TSign};
pub use word::{Letter, Syllable, Word};

/// Default cap on ball enumerations; regular trees grow exponentially.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// Default cap on orbit and commensuration searches.
pub const DEFAULT_ORBIT_CAP: u64 = 100_000;

//! Dynamics of the left-multiplication action on the coset space `BS(m,n)/<a>`.
//!
//! The permutation action restricted to finite balls, orbit-counted subgroup
//! indices, commensuration exponents certifying the Hecke-pair property of
//! `<a>`, and kernel detection. Indices are computed as orbit lengths rather
//! than by subgroup arithmetic, which keeps them independently checkable.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::britton::a_subgroup_exponent;
use crate::error::{Error, Result};
use crate::normal_form::{NormalForm, PrefixEntry};
use crate::params::{BsParams, TSign};
use crate::tree::{ball, Vertex};
use crate::word::Word;

/// The restriction of left multiplication by a fixed element to a ball; a
/// finite partial bijection on canonical coset representatives.
#[derive(Debug, Clone)]
pub struct PartialPermutation {
    domain_radius: u32,
    entries: Vec<(Vertex, Vertex)>,
    index: HashMap<Vertex, usize>,
}

impl PartialPermutation {
    fn new(domain_radius: u32, entries: Vec<(Vertex, Vertex)>) -> Self {
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, (v, _))| (v.clone(), i))
            .collect::<HashMap<_, _>>();
        debug_assert_eq!(index.len(), entries.len(), "domain must be duplicate-free");
        debug_assert_eq!(
            entries
                .iter()
                .map(|(_, img)| img)
                .collect::<std::collections::HashSet<_>>()
                .len(),
            entries.len(),
            "left multiplication must be injective"
        );
        PartialPermutation {
            domain_radius,
            entries,
            index,
        }
    }

    pub fn domain_radius(&self) -> u32 {
        self.domain_radius
    }

    /// Domain/image pairs in breadth-first domain order.
    pub fn entries(&self) -> &[(Vertex, Vertex)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Image of `v`, if `v` lies in the domain ball.
    pub fn get(&self, v: &Vertex) -> Option<&Vertex> {
        self.index.get(v).map(|&i| &self.entries[i].1)
    }

    pub fn is_identity_map(&self) -> bool {
        self.entries.iter().all(|(v, img)| v == img)
    }
}

/// Outcome of an orbit count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitIndex {
    Finite(u64),
    ExceededCap { cap: u64 },
}

/// Result of the orbit computation behind a subgroup index.
#[derive(Debug, Clone)]
pub struct IndexReport {
    pub element: Word,
    pub index: OrbitIndex,
    /// The orbit `{a^j . (g<a>)}` in iteration order; when the index is
    /// finite its length equals the index.
    pub orbit_witness: Vec<Vertex>,
}

/// Restriction of left multiplication by `g` to `ball(radius)`.
pub fn tau_on_ball(g: &Word, radius: u32, ball_cap: usize) -> Result<PartialPermutation> {
    let domain = ball(*g.params(), radius, ball_cap)?;
    let entries = domain
        .into_iter()
        .map(|v| {
            let image = v.act(g)?;
            Ok((v, image))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PartialPermutation::new(radius, entries))
}

/// Size of the orbit of the coset `g<a>` under the cyclic subgroup generated
/// by `a`, found by iterating `a^j . (g<a>)` until the starting coset
/// repeats. This equals the index of `<a> /\ g<a>g^-1` in `<a>`.
pub fn orbit_index(g: &Word, cap: u64) -> IndexReport {
    let params = *g.params();
    let a = Word::a_power(params, 1);
    let start = Vertex::from_word(g);
    let mut orbit = vec![start.clone()];
    let mut current = start.clone();
    for j in 1..=cap {
        current = current.act(&a).expect("same params");
        if current == start {
            return IndexReport {
                element: g.clone(),
                index: OrbitIndex::Finite(j),
                orbit_witness: orbit,
            };
        }
        orbit.push(current.clone());
    }
    IndexReport {
        element: g.clone(),
        index: OrbitIndex::ExceededCap { cap },
        orbit_witness: Vec::new(),
    }
}

/// All canonical coset representatives `g<a>` with at most `max_prefix_len`
/// `t`-letters, i.e. every tail-zero normal form over the transversal
/// residues, each coset exactly once. Deterministic order: by length, then
/// sign `t` before `t^-1`, then ascending residue at each position.
pub fn coset_representatives(params: &BsParams, max_prefix_len: u32) -> Vec<NormalForm> {
    let mut out = Vec::new();
    let mut prefix: Vec<PrefixEntry> = Vec::new();
    fn visit(
        params: &BsParams,
        prefix: &mut Vec<PrefixEntry>,
        remaining: u32,
        out: &mut Vec<NormalForm>,
    ) {
        out.push(NormalForm::from_parts(
            *params,
            prefix.clone(),
            BigInt::zero(),
        ));
        if remaining == 0 {
            return;
        }
        let prev_sign = prefix.last().map(|e| e.sign);
        for sign in [TSign::Plus, TSign::Minus] {
            let range = match sign {
                TSign::Plus => params.n() as u64,
                TSign::Minus => params.m_abs() as u64,
            };
            for residue in 0..range {
                // A zero residue between opposite signs would be a pinch.
                if residue == 0 && prev_sign == Some(sign.opposite()) {
                    continue;
                }
                prefix.push(PrefixEntry { sign, residue });
                visit(params, prefix, remaining - 1, out);
                prefix.pop();
            }
        }
    }
    visit(params, &mut prefix, max_prefix_len, &mut out);
    out
}

/// Minimum of `orbit_index` over all cosets `g<a>` with `g` outside `<a>`
/// and at most `max_prefix_len` `t`-letters in normal form. Enumerating
/// normal-form prefixes visits each coset once; the index only depends on
/// the coset.
pub fn min_index_over_words(params: &BsParams, max_prefix_len: u32, cap: u64) -> Result<u64> {
    if max_prefix_len == 0 {
        return Err(Error::InvalidArgument(
            "max prefix length must be at least 1".into(),
        ));
    }
    let mut min: Option<u64> = None;
    for rep in coset_representatives(params, max_prefix_len) {
        if rep.prefix_len() == 0 {
            continue;
        }
        match orbit_index(&rep.to_word(), cap).index {
            OrbitIndex::Finite(k) => min = Some(min.map_or(k, |m| m.min(k))),
            OrbitIndex::ExceededCap { cap } => return Err(Error::OrbitCapExceeded { cap }),
        }
    }
    Ok(min.expect("prefix length >= 1 yields at least one coset"))
}

/// Minimal `k > 0` with `g a^k g^-1` back inside `<a>`, found by testing
/// `k = 1, 2, ...` through Britton reduction. Certifies that `<a>` is
/// commensurated: `<a> /\ g^-1 <a> g` is generated by `a^k` up to sign.
pub fn commensuration_exponent(g: &Word, cap: u64) -> Result<u64> {
    let params = *g.params();
    let inverse = g.invert();
    for k in 1..=cap {
        let conjugate = g
            .multiply(&Word::a_power(params, BigInt::from(k)))
            .and_then(|w| w.multiply(&inverse))
            .expect("same params");
        if a_subgroup_exponent(&conjugate).is_some() {
            return Ok(k);
        }
    }
    Err(Error::OrbitCapExceeded { cap })
}

/// Positive generator `k` of the intersection of the conjugates
/// `g_i <a> g_i^-1` with `<a>`: the least common multiple of the per-element
/// exponents of the inverses. The empty intersection convention is the whole
/// subgroup, generator 1.
pub fn finite_index_intersection(reps: &[Word], cap: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for g in reps {
        let k = commensuration_exponent(&g.invert(), cap)?;
        let wide = (u128::from(acc) / u128::from(gcd(acc, k))) * u128::from(k);
        acc = u64::try_from(wide)
            .map_err(|_| Error::Overflow("intersection generator exceeds u64".into()))?;
    }
    Ok(acc)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// True iff left multiplication by `g` fixes every vertex of `ball(radius)`.
/// For `|m| != n` only the identity acts trivially on large balls; for
/// `|m| = n` the whole normal subgroup generated by `a^m` does.
pub fn acts_trivially_on_ball(g: &Word, radius: u32, ball_cap: usize) -> Result<bool> {
    for v in ball(*g.params(), radius, ball_cap)? {
        if v.act(g)? != v {
            return Ok(false);
        }
    }
    Ok(true)
}

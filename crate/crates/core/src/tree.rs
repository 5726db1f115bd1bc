//! The Bass-Serre tree of `BS(m, n)`.
//!
//! Vertices are the cosets `g<a>` and positively oriented edges the cosets
//! `g<a^m>`, with source `s(g<a^m>) = g<a>` and range `r(g<a^m>) = g t^-1 <a>`.
//! Both are identified with normal forms: quotienting by `<a>` on the right
//! kills the tail exponent, and by `<a^m>` reduces it modulo `|m|`, so coset
//! equality is syntactic equality of canonical forms. The group acts by left
//! multiplication; the tree is `(|m| + n)`-regular.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::normal_form::NormalForm;
use crate::params::BsParams;
use crate::word::Word;

/// A vertex `g<a>`, held as the normal form of `g` with zero tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    rep: NormalForm,
}

/// Orientation of an edge relative to a chosen endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrientation {
    /// The endpoint is the edge's source.
    Outgoing,
    /// The endpoint is the edge's range.
    Incoming,
}

impl Vertex {
    /// The canonical vertex of the coset `w<a>`.
    pub fn from_word(w: &Word) -> Self {
        Vertex {
            rep: NormalForm::of_word(w).with_tail(BigInt::zero()),
        }
    }

    /// The vertex `<a>` fixed by the compact subgroup.
    pub fn base(params: BsParams) -> Self {
        Vertex::from_word(&Word::identity(params))
    }

    pub fn params(&self) -> &BsParams {
        self.rep.params()
    }

    pub fn rep(&self) -> &NormalForm {
        &self.rep
    }

    /// Shortest coset representative; also a witness moving the base vertex
    /// here.
    pub fn rep_word(&self) -> Word {
        self.rep.to_word()
    }

    /// Tree distance to the base vertex.
    pub fn depth(&self) -> usize {
        self.rep.prefix_len()
    }

    /// Left translation `g . v`.
    pub fn act(&self, g: &Word) -> Result<Vertex> {
        g.params().check_same(self.params())?;
        Ok(Vertex::from_word(&g.multiply(&self.rep_word())?))
    }

    /// The `|m| + n` adjacent vertices in canonical order: ranges of the
    /// outgoing edges `g a^j <a^m>` for `j` in `0..|m|`, then sources of the
    /// incoming edges, `g a^i t <a>` for `i` in `0..n`. Duplicates cannot
    /// occur in a tree; deduplication guards implementation bugs.
    pub fn neighbors(&self) -> Vec<(Vertex, EdgeOrientation)> {
        let params = *self.params();
        let rep = self.rep_word();
        let mut out = Vec::with_capacity((params.m_abs() + params.n()) as usize);
        let mut seen = HashSet::new();
        let mut push = |neighbor: Vertex, orientation| {
            if seen.insert(neighbor.clone()) {
                out.push((neighbor, orientation));
            }
        };
        for j in 0..params.m_abs() {
            let w = append_generators(&rep, j, -1);
            push(Vertex::from_word(&w), EdgeOrientation::Outgoing);
        }
        for i in 0..params.n() {
            let w = append_generators(&rep, i, 1);
            push(Vertex::from_word(&w), EdgeOrientation::Incoming);
        }
        debug_assert_eq!(out.len(), (params.m_abs() + params.n()) as usize);
        out
    }

    /// The `|m|` positive edges with this vertex as source.
    pub fn outgoing_edges(&self) -> Vec<OrientedEdge> {
        let rep = self.rep_word();
        (0..self.params().m_abs())
            .map(|j| {
                let w = rep
                    .multiply(&Word::a_power(*self.params(), j))
                    .expect("same params");
                OrientedEdge::from_word(&w)
            })
            .collect()
    }
}

fn append_generators(rep: &Word, a_exp: i64, t_exp: i64) -> Word {
    let params = *rep.params();
    rep.multiply(&Word::a_power(params, a_exp))
        .and_then(|w| w.multiply(&Word::t_power(params, t_exp)))
        .expect("same params")
}

/// A positively oriented edge `g<a^m>`, held as the normal form of `g` with
/// tail reduced into `{0, ..., |m|-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedEdge {
    rep: NormalForm,
}

impl OrientedEdge {
    /// The canonical edge of the coset `w<a^m>`.
    pub fn from_word(w: &Word) -> Self {
        let form = NormalForm::of_word(w);
        let modulus = BigInt::from(form.params().m_abs());
        let tail = form.tail().mod_floor(&modulus);
        OrientedEdge {
            rep: form.with_tail(tail),
        }
    }

    /// The edge `<a^m>` from the base vertex.
    pub fn base(params: BsParams) -> Self {
        OrientedEdge::from_word(&Word::identity(params))
    }

    pub fn params(&self) -> &BsParams {
        self.rep.params()
    }

    pub fn rep(&self) -> &NormalForm {
        &self.rep
    }

    pub fn rep_word(&self) -> Word {
        self.rep.to_word()
    }

    /// Source vertex `g<a>`.
    pub fn source(&self) -> Vertex {
        Vertex::from_word(&self.rep_word())
    }

    /// Range vertex `g t^-1 <a>`.
    pub fn range(&self) -> Vertex {
        let params = *self.params();
        let w = self
            .rep_word()
            .multiply(&Word::t_power(params, -1))
            .expect("same params");
        Vertex::from_word(&w)
    }

    /// Left translation `g . e`; preserves orientation.
    pub fn act(&self, g: &Word) -> Result<OrientedEdge> {
        g.params().check_same(self.params())?;
        Ok(OrientedEdge::from_word(&g.multiply(&self.rep_word())?))
    }
}

/// All vertices at tree distance at most `radius` from the base vertex, in
/// breadth-first discovery order. Fails once more than `cap` vertices are
/// found.
pub fn ball(params: BsParams, radius: u32, cap: usize) -> Result<Vec<Vertex>> {
    if cap == 0 {
        return Err(Error::BallCapExceeded { cap });
    }
    let base = Vertex::base(params);
    let mut order = vec![base.clone()];
    let mut seen: HashSet<Vertex> = order.iter().cloned().collect();
    let mut queue = VecDeque::from([(base, 0u32)]);
    while let Some((v, depth)) = queue.pop_front() {
        if depth == radius {
            continue;
        }
        for (u, _) in v.neighbors() {
            if seen.insert(u.clone()) {
                if order.len() >= cap {
                    return Err(Error::BallCapExceeded { cap });
                }
                order.push(u.clone());
                queue.push_back((u, depth + 1));
            }
        }
    }
    Ok(order)
}

/// Tree distance between two vertices, computed exactly from the depth of
/// the relative coset `u^-1 v <a>`; no enumeration is involved.
pub fn distance(u: &Vertex, v: &Vertex) -> Result<u64> {
    u.params().check_same(v.params())?;
    let relative = u.rep_word().invert().multiply(&v.rep_word())?;
    Ok(Vertex::from_word(&relative).depth() as u64)
}

/// DOT rendering of a ball: arrows follow the positive edge orientation
/// (source to range) and vertex labels are canonical word serializations.
pub fn ball_dot(params: BsParams, radius: u32, cap: usize) -> Result<String> {
    let vertices = ball(params, radius, cap)?;
    let index: std::collections::HashMap<&Vertex, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut dot = String::from("digraph bass_serre_ball {\n");
    for (i, v) in vertices.iter().enumerate() {
        writeln!(dot, "  v{i} [label=\"{}\"];", v.rep_word()).expect("write to string");
    }
    for (i, v) in vertices.iter().enumerate() {
        for edge in v.outgoing_edges() {
            debug_assert_eq!(&edge.source(), v);
            if let Some(&j) = index.get(&edge.range()) {
                writeln!(dot, "  v{i} -> v{j};").expect("write to string");
            }
        }
    }
    dot.push_str("}\n");
    Ok(dot)
}

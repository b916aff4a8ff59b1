//! Counting and decoding, built on the chart engine.
//!
//! Counting fills the chart with exact big-integer weights; decoding fills
//! it with max-plus weights and backpointers, then realizes the backtraced
//! derivation. Single-vertex inputs short-circuit: every family contains
//! exactly the edgeless one-vertex graph, counted as 1 and decoded with
//! score 0.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::digraph::{Digraph, GraphClass};
use crate::engine::{backtrace, fill_chart, goal_value, realize};
use crate::families::{family, FamilyName, ItemKind};
use crate::semiring::{CountWeight, LexMaxPlusWeight, Semiring};
use crate::{Error, Result};

/// Edge scores for decoding: a finite score per ordered pair, defaulting
/// to 0 for pairs not listed.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreTable {
    n: usize,
    scores: BTreeMap<(usize, usize), f64>,
}

impl ScoreTable {
    /// Builds a table over vertices `1..=n`. Entries must name distinct
    /// in-range ordered pairs with finite scores.
    pub fn new(n: usize, entries: impl IntoIterator<Item = ((usize, usize), f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::VertexCount { min: 1, got: 0 });
        }
        let mut scores = BTreeMap::new();
        for ((src, dst), score) in entries {
            if src == 0 || dst == 0 || src > n || dst > n {
                return Err(Error::InvalidScoreTable(format!(
                    "arc ({src}, {dst}): endpoints must lie in 1..={n}"
                )));
            }
            if src == dst {
                return Err(Error::InvalidScoreTable(format!(
                    "arc ({src}, {dst}): `src` and `dst` must differ"
                )));
            }
            if !score.is_finite() {
                return Err(Error::InvalidScoreTable(format!(
                    "arc ({src}, {dst}): `score` must be finite"
                )));
            }
            if scores.insert((src, dst), score).is_some() {
                return Err(Error::InvalidScoreTable(format!(
                    "duplicate arc ({src}, {dst})"
                )));
            }
        }
        Ok(ScoreTable { n, scores })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn score(&self, src: usize, dst: usize) -> f64 {
        self.scores.get(&(src, dst)).copied().unwrap_or(0.0)
    }

    /// Total score of a graph under this table. The empty sum is reported as
    /// plain zero rather than IEEE negative zero.
    pub fn total(&self, graph: &Digraph) -> f64 {
        let score: f64 = graph.arcs().map(|(s, d)| self.score(s, d)).sum();
        if score == 0.0 {
            0.0
        } else {
            score
        }
    }
}

/// A decoded graph and its total score.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    pub graph: Digraph,
    pub score: f64,
}

/// Counts the members of `name` on `n >= 1` vertices, exactly.
pub fn count(name: FamilyName, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::VertexCount { min: 1, got: 0 });
    }
    if n == 1 {
        return Ok(BigUint::one());
    }
    let f = family(name);
    let chart = fill_chart(&f, n, |_, _| CountWeight::one(), false)?;
    Ok(goal_value(&chart, &f).0)
}

/// Per-class member counts at `n >= 2`. Classes outside the family's goal
/// set map to zero (the family has no members of that class), so the values
/// always sum to [`count`].
pub fn count_by_class(name: FamilyName, n: usize) -> Result<BTreeMap<GraphClass, BigUint>> {
    if n < 2 {
        return Err(Error::VertexCount { min: 2, got: n });
    }
    let f = family(name);
    let chart = fill_chart(&f, n, |_, _| CountWeight::one(), false)?;
    let mut out = BTreeMap::new();
    for class in GraphClass::ALL {
        let kind = ItemKind::from(class);
        let value = if f.goal_kinds.contains(&kind) {
            chart.value(1, n, kind).0.clone()
        } else {
            BigUint::ZERO
        };
        out.insert(class, value);
    }
    Ok(out)
}

/// Finds a member of `name` maximizing the sum of its arc scores.
///
/// Equal-score optima are disambiguated twice over: the weights carry a
/// negated arc count as a secondary key, so the sparsest optimum wins (an
/// all-zero table decodes to the empty graph), and any remaining ties fall
/// to the backtrace order. Equal inputs therefore always decode to the same
/// graph. The reported score is recomputed from the returned graph's arcs.
pub fn decode(name: FamilyName, scores: &ScoreTable) -> Result<DecodeResult> {
    let n = scores.n();
    if n == 1 {
        return Ok(DecodeResult {
            graph: Digraph::empty(1)?,
            score: 0.0,
        });
    }
    let f = family(name);
    let chart = fill_chart(
        &f,
        n,
        |src, dst| LexMaxPlusWeight::finite(scores.score(src, dst), -1),
        true,
    )?;
    let graph = realize(&backtrace(&chart, &f)?);
    let score = scores.total(&graph);
    Ok(DecodeResult { graph, score })
}

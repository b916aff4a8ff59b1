//! Brute-force enumeration over all per-pair arc states.
//!
//! This module deliberately shares nothing with the chart engine: it walks
//! the full state space (four states per unordered vertex pair for directed
//! families, two for undirected) and keeps the graphs that pass the
//! structural predicates. Tests and the `verify` subcommand use it as
//! ground truth for counts, member sets, and best scores.

use crate::analyses::{DecodeResult, ScoreTable};
use crate::digraph::{is_acyclic, is_noncrossing, is_weakly_connected, Digraph};
use crate::families::FamilyName;
use crate::{Error, Result};

/// Largest `n` the oracle will enumerate for directed families (4^10 states
/// at n = 5 is the practical limit).
pub const DIRECTED_ORACLE_CAP: usize = 5;
/// Largest `n` for the undirected families (2 states per pair).
pub const UNDIRECTED_ORACLE_CAP: usize = 6;

pub fn oracle_cap(family: FamilyName) -> usize {
    match family {
        FamilyName::Undirected | FamilyName::ConnectedUndirected => UNDIRECTED_ORACLE_CAP,
        _ => DIRECTED_ORACLE_CAP,
    }
}

/// A family and vertex count the oracle agrees to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    family: FamilyName,
    n: usize,
}

impl OracleConfig {
    pub fn new(family: FamilyName, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::VertexCount { min: 1, got: 0 });
        }
        let cap = oracle_cap(family);
        if n > cap {
            return Err(Error::OracleCap {
                family,
                cap,
                got: n,
            });
        }
        Ok(OracleConfig { family, n })
    }

    pub fn family(self) -> FamilyName {
        self.family
    }

    pub fn n(self) -> usize {
        self.n
    }
}

/// Membership predicate for a family, written directly against the
/// structural predicates rather than the rule tables.
pub fn is_member(family: FamilyName, g: &Digraph) -> bool {
    match family {
        FamilyName::Acyclic => is_noncrossing(g) && is_acyclic(g),
        FamilyName::ConnectedAcyclic => {
            is_noncrossing(g) && is_acyclic(g) && is_weakly_connected(g)
        }
        FamilyName::Digraph => is_noncrossing(g),
        FamilyName::Undirected => is_noncrossing(g) && g.arcs().all(|(s, d)| s < d),
        FamilyName::ConnectedUndirected => {
            is_noncrossing(g) && g.arcs().all(|(s, d)| s < d) && is_weakly_connected(g)
        }
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for u in 1..=n {
        for v in (u + 1)..=n {
            out.push((u, v));
        }
    }
    out
}

/// Every member of the family, in canonical order: the per-pair state
/// vector read lexicographically, pairs sorted by `(min, max)` and states
/// ordered none, forward, backward, both (none then edge for undirected).
pub fn oracle_enumerate(cfg: &OracleConfig) -> Vec<Digraph> {
    let directed = !matches!(
        cfg.family,
        FamilyName::Undirected | FamilyName::ConnectedUndirected
    );
    let base: u64 = if directed { 4 } else { 2 };
    let pairs = pairs(cfg.n);
    let total = base.pow(pairs.len() as u32);

    let mut members = Vec::new();
    let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(pairs.len() * 2);
    for code in 0..total {
        arcs.clear();
        let mut rest = code;
        // Most significant digit first, so ascending codes are ascending
        // state vectors.
        for (idx, &(u, v)) in pairs.iter().enumerate() {
            let place = base.pow((pairs.len() - 1 - idx) as u32);
            let state = rest / place;
            rest %= place;
            match (directed, state) {
                (_, 0) => {}
                (true, 1) | (false, 1) => arcs.push((u, v)),
                (true, 2) => arcs.push((v, u)),
                (true, 3) => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
                _ => unreachable!(),
            }
        }
        let g = Digraph::new(cfg.n, arcs.iter().copied()).expect("pairs are in range");
        if is_member(cfg.family, &g) {
            members.push(g);
        }
    }
    members
}

pub fn oracle_count(cfg: &OracleConfig) -> u64 {
    oracle_enumerate(cfg).len() as u64
}

/// Exhaustive best: scores every member and keeps the first maximum in
/// canonical order.
pub fn oracle_best(cfg: &OracleConfig, scores: &ScoreTable) -> Result<DecodeResult> {
    if scores.n() != cfg.n {
        return Err(Error::InvalidScoreTable(format!(
            "score table is for n = {}, oracle config for n = {}",
            scores.n(),
            cfg.n
        )));
    }
    oracle_best_among(&oracle_enumerate(cfg), scores)
}

/// Best over an already-enumerated member list. Callers that score many
/// tables against one family should enumerate once and use this, since the
/// enumeration dwarfs the scoring.
pub fn oracle_best_among(members: &[Digraph], scores: &ScoreTable) -> Result<DecodeResult> {
    let mut best: Option<DecodeResult> = None;
    for g in members {
        let score = scores.total(g);
        if best.as_ref().is_none_or(|b| score > b.score) {
            best = Some(DecodeResult {
                graph: g.clone(),
                score,
            });
        }
    }
    best.ok_or(Error::NoMember)
}

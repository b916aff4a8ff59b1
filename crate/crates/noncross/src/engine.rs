//! Semiring-generic chart engine.
//!
//! [`fill_chart`] tabulates one cell per span and item kind, bottom-up by
//! span width. Within a span the order is fixed: concatenations first (they
//! only read strictly smaller spans), then max-to-min covers, then
//! min-to-max covers, so the antiparallel cover rule can read the finished
//! max-to-min cell of its own span. Elementary cells are axioms at width 1.
//!
//! On top of the filled chart sit [`goal_value`] (fold of the goal cells),
//! [`backtrace`] (argmax derivation of a selective chart), and
//! [`derivations`] (lazy enumeration of every derivation by unranking
//! against a counting chart).

use crate::digraph::Digraph;
use crate::families::{Direction, Family, ItemKind};
use crate::semiring::Semiring;
use crate::{Error, Result};

/// Largest `n` accepted by [`derivations`]. Derivation counts fit u64
/// comfortably below this bound; the brute-force growth makes larger spans
/// impractical to stream anyway.
pub const ENUMERATION_CAP: usize = 8;

/// Counters collected while filling a chart.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FillStats {
    /// Number of semiring `times` applications performed.
    pub times_applications: u64,
}

/// How a cell's selected value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backpointer {
    /// Elementary axiom at a width-1 span.
    Axiom,
    /// Cover rule (index into the family's cover table) at the same span.
    Cover { rule: usize },
    /// Concat rule (index into the concat table) with the split vertex.
    Concat { rule: usize, split: usize },
}

/// A filled chart over spans `(i, k)` with `1 <= i < k <= n`, seven cells
/// per span (one per kind).
#[derive(Clone, Debug)]
pub struct Chart<S> {
    n: usize,
    cells: Vec<S>,
    backpointers: Option<Vec<Option<Backpointer>>>,
    stats: FillStats,
}

const KINDS: usize = 7;

fn span_index(n: usize, i: usize, k: usize) -> usize {
    debug_assert!(1 <= i && i < k && k <= n);
    let row_offset = (i - 1) * n - (i - 1) * i / 2;
    row_offset + (k - i - 1)
}

fn cell_index(n: usize, i: usize, k: usize, kind: ItemKind) -> usize {
    span_index(n, i, k) * KINDS + kind.index()
}

impl<S> Chart<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of allocated cells: `7 * n * (n - 1) / 2`.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn stats(&self) -> FillStats {
        self.stats
    }

    pub fn has_backpointers(&self) -> bool {
        self.backpointers.is_some()
    }

    pub fn value(&self, i: usize, k: usize, kind: ItemKind) -> &S {
        &self.cells[cell_index(self.n, i, k, kind)]
    }
}

/// Accumulates `plus` over candidates and, for selective semirings, tracks
/// which candidate is currently selected. Candidates arrive in tie-break
/// order (rule position, then split), and only a strict improvement moves
/// the backpointer, so the first of equals wins.
struct Accum<S> {
    value: S,
    bp: Option<Backpointer>,
    record: bool,
}

impl<S: Semiring> Accum<S> {
    fn new(record: bool) -> Self {
        Accum {
            value: S::zero(),
            bp: None,
            record,
        }
    }

    fn fold(&mut self, candidate: S, bp: Backpointer) {
        let folded = self.value.plus(&candidate);
        if self.record && folded != self.value {
            self.bp = Some(bp);
        }
        self.value = folded;
    }
}

/// Fills the chart for `family` over `n >= 2` vertices.
///
/// `weights` maps an arc `(src, dst)` to the semiring value a cover rule
/// multiplies in when it adds that arc; counting passes use the constant
/// `one`. Backpointers are recorded only when requested and the semiring is
/// selective.
pub fn fill_chart<S: Semiring>(
    family: &Family,
    n: usize,
    weights: impl Fn(usize, usize) -> S,
    record_backpointers: bool,
) -> Result<Chart<S>> {
    if n < 2 {
        return Err(Error::VertexCount { min: 2, got: n });
    }
    let span_count = n * (n - 1) / 2;
    let mut cells = vec![S::zero(); span_count * KINDS];
    let record = record_backpointers && S::SELECTIVE;
    let mut bps: Option<Vec<Option<Backpointer>>> = record.then(|| vec![None; span_count * KINDS]);
    let mut stats = FillStats::default();

    let write = |cells: &mut Vec<S>,
                 bps: &mut Option<Vec<Option<Backpointer>>>,
                 idx: usize,
                 acc: Accum<S>| {
        cells[idx] = acc.value;
        if let Some(bps) = bps.as_mut() {
            bps[idx] = acc.bp;
        }
    };

    for width in 1..n {
        for i in 1..=(n - width) {
            let k = i + width;

            if width == 1 {
                let idx = cell_index(n, i, k, ItemKind::Elementary);
                cells[idx] = S::one();
                if let Some(bps) = bps.as_mut() {
                    bps[idx] = Some(Backpointer::Axiom);
                }
            } else {
                let mut accums: [Accum<S>; KINDS] = std::array::from_fn(|_| Accum::new(record));
                for (ri, rule) in family.concat_rules.iter().enumerate() {
                    for j in (i + 1)..k {
                        let left = &cells[cell_index(n, i, j, rule.left)];
                        if left.is_zero() {
                            continue;
                        }
                        let right = &cells[cell_index(n, j, k, rule.right)];
                        if right.is_zero() {
                            continue;
                        }
                        stats.times_applications += 1;
                        accums[rule.out.index()].fold(
                            left.times(right),
                            Backpointer::Concat { rule: ri, split: j },
                        );
                    }
                }
                let mut it = accums.into_iter();
                for kind in ItemKind::ALL {
                    let acc = it.next().expect("seven accumulators");
                    if !kind.is_covered() && kind != ItemKind::Elementary {
                        write(&mut cells, &mut bps, cell_index(n, i, k, kind), acc);
                    }
                }
            }

            // Max-to-min covers first: the antiparallel rule reads this
            // span's finished max-to-min cell when building the min-to-max
            // one.
            for target in [ItemKind::MaxMinCovered, ItemKind::MinMaxCovered] {
                let mut acc = Accum::new(record);
                for (ri, rule) in family.cover_rules.iter().enumerate() {
                    if rule.out != target {
                        continue;
                    }
                    let input = &cells[cell_index(n, i, k, rule.input)];
                    if input.is_zero() {
                        continue;
                    }
                    let (src, dst) = match rule.direction {
                        Direction::MinToMax => (i, k),
                        Direction::MaxToMin => (k, i),
                    };
                    let weight = weights(src, dst);
                    if weight.is_zero() {
                        continue;
                    }
                    stats.times_applications += 1;
                    acc.fold(input.times(&weight), Backpointer::Cover { rule: ri });
                }
                write(&mut cells, &mut bps, cell_index(n, i, k, target), acc);
            }
        }
    }

    Ok(Chart {
        n,
        cells,
        backpointers: bps,
        stats,
    })
}

/// Folds the goal-kind cells at span `(1, n)` with `plus`.
pub fn goal_value<S: Semiring>(chart: &Chart<S>, family: &Family) -> S {
    let mut acc = S::zero();
    for kind in ItemKind::ALL {
        if family.goal_kinds.contains(&kind) {
            acc = acc.plus(chart.value(1, chart.n, kind));
        }
    }
    acc
}

/// One complete derivation: axiom leaves, cover and concat nodes.
#[derive(Clone, Debug, PartialEq)]
pub enum Derivation {
    /// Elementary item over `(i, i + 1)`.
    Axiom { span: (usize, usize) },
    Cover {
        rule: &'static str,
        kind: ItemKind,
        span: (usize, usize),
        direction: Direction,
        child: Box<Derivation>,
    },
    Concat {
        rule: &'static str,
        kind: ItemKind,
        span: (usize, usize),
        split: usize,
        left: Box<Derivation>,
        right: Box<Derivation>,
    },
}

impl Derivation {
    pub fn span(&self) -> (usize, usize) {
        match self {
            Derivation::Axiom { span }
            | Derivation::Cover { span, .. }
            | Derivation::Concat { span, .. } => *span,
        }
    }

    pub fn kind(&self) -> ItemKind {
        match self {
            Derivation::Axiom { .. } => ItemKind::Elementary,
            Derivation::Cover { kind, .. } | Derivation::Concat { kind, .. } => *kind,
        }
    }
}

/// The digraph a derivation builds: exactly the arcs its cover nodes add.
/// The root span must start at vertex 1; its right end is the vertex count.
pub fn realize(d: &Derivation) -> Digraph {
    let (start, end) = d.span();
    assert_eq!(start, 1, "realize expects a derivation rooted at vertex 1");
    let mut arcs = Vec::new();
    collect_arcs(d, &mut arcs);
    Digraph::new(end, arcs).expect("rule tables only add valid, distinct arcs")
}

fn collect_arcs(d: &Derivation, arcs: &mut Vec<(usize, usize)>) {
    match d {
        Derivation::Axiom { .. } => {}
        Derivation::Cover {
            span: (i, k),
            direction,
            child,
            ..
        } => {
            arcs.push(match direction {
                Direction::MinToMax => (*i, *k),
                Direction::MaxToMin => (*k, *i),
            });
            collect_arcs(child, arcs);
        }
        Derivation::Concat { left, right, .. } => {
            collect_arcs(left, arcs);
            collect_arcs(right, arcs);
        }
    }
}

/// Extracts the derivation behind the selected goal value.
///
/// The chart must have been filled with backpointers under a selective
/// semiring. Goal kinds are scanned in canonical order and only strict
/// improvements switch the pick, so ties fall to the earliest kind; within
/// cells the recorded backpointers already carry the rule-then-split
/// tie-break.
pub fn backtrace<S: Semiring>(chart: &Chart<S>, family: &Family) -> Result<Derivation> {
    let bps = chart
        .backpointers
        .as_ref()
        .expect("backtrace needs a chart filled with record_backpointers");
    let n = chart.n;
    let mut best = S::zero();
    let mut best_kind = None;
    for kind in ItemKind::ALL {
        if !family.goal_kinds.contains(&kind) {
            continue;
        }
        let folded = best.plus(chart.value(1, n, kind));
        if folded != best {
            best = folded;
            best_kind = Some(kind);
        }
    }
    let Some(kind) = best_kind else {
        return Err(Error::NoMember);
    };
    Ok(follow(family, bps, n, 1, n, kind))
}

fn follow(
    family: &Family,
    bps: &[Option<Backpointer>],
    n: usize,
    i: usize,
    k: usize,
    kind: ItemKind,
) -> Derivation {
    let bp = bps[cell_index(n, i, k, kind)]
        .expect("selected cell has no backpointer; chart and family disagree");
    match bp {
        Backpointer::Axiom => Derivation::Axiom { span: (i, k) },
        Backpointer::Cover { rule } => {
            let r = family.cover_rules[rule];
            Derivation::Cover {
                rule: r.id,
                kind: r.out,
                span: (i, k),
                direction: r.direction,
                child: Box::new(follow(family, bps, n, i, k, r.input)),
            }
        }
        Backpointer::Concat { rule, split } => {
            let r = family.concat_rules[rule];
            Derivation::Concat {
                rule: r.id,
                kind: r.out,
                span: (i, k),
                split,
                left: Box::new(follow(family, bps, n, i, split, r.left)),
                right: Box::new(follow(family, bps, n, split, k, r.right)),
            }
        }
    }
}

/// Counting semiring over u64 with loud overflow, used only for unranking
/// under [`ENUMERATION_CAP`], where totals stay far below the limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Count64(u64);

impl Semiring for Count64 {
    fn zero() -> Self {
        Count64(0)
    }

    fn one() -> Self {
        Count64(1)
    }

    fn plus(&self, rhs: &Self) -> Self {
        Count64(
            self.0
                .checked_add(rhs.0)
                .expect("derivation count overflow"),
        )
    }

    fn times(&self, rhs: &Self) -> Self {
        Count64(
            self.0
                .checked_mul(rhs.0)
                .expect("derivation count overflow"),
        )
    }
}

/// Lazy stream over every complete derivation of `family` at `n`, in a
/// fixed order: goal kinds canonically, and within a cell by producing
/// rule, then split vertex, then left and right sub-ranks.
pub struct Derivations<'a> {
    family: &'a Family,
    n: usize,
    counts: Vec<u64>,
    kind_pos: usize,
    rank: u64,
}

/// Streams the derivations of every goal item at `(1, n)`.
///
/// Enumeration works by unranking: a counting chart fixes how many
/// derivations each cell has, and each index below that total maps back to
/// one derivation. Nothing is materialized, so the stream is cheap to drop.
pub fn derivations(family: &Family, n: usize) -> Result<Derivations<'_>> {
    if n < 2 {
        return Err(Error::VertexCount { min: 2, got: n });
    }
    if n > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            cap: ENUMERATION_CAP,
            got: n,
        });
    }
    let chart = fill_chart::<Count64>(family, n, |_, _| Count64(1), false)?;
    Ok(Derivations {
        family,
        n,
        counts: chart.cells.into_iter().map(|c| c.0).collect(),
        kind_pos: 0,
        rank: 0,
    })
}

impl Derivations<'_> {
    fn count_at(&self, i: usize, k: usize, kind: ItemKind) -> u64 {
        self.counts[cell_index(self.n, i, k, kind)]
    }

    fn unrank(&self, i: usize, k: usize, kind: ItemKind, mut rank: u64) -> Derivation {
        match kind {
            ItemKind::Elementary => {
                debug_assert_eq!(k, i + 1);
                debug_assert_eq!(rank, 0);
                Derivation::Axiom { span: (i, k) }
            }
            ItemKind::MinMaxCovered | ItemKind::MaxMinCovered => {
                for rule in self.family.cover_rules.iter().filter(|r| r.out == kind) {
                    let block = self.count_at(i, k, rule.input);
                    if rank < block {
                        return Derivation::Cover {
                            rule: rule.id,
                            kind: rule.out,
                            span: (i, k),
                            direction: rule.direction,
                            child: Box::new(self.unrank(i, k, rule.input, rank)),
                        };
                    }
                    rank -= block;
                }
                unreachable!("cover rank out of range for {kind} at ({i}, {k})")
            }
            _ => {
                for rule in self.family.concat_rules.iter().filter(|r| r.out == kind) {
                    for j in (i + 1)..k {
                        let left_count = self.count_at(i, j, rule.left);
                        let right_count = self.count_at(j, k, rule.right);
                        let block = left_count * right_count;
                        if rank < block {
                            return Derivation::Concat {
                                rule: rule.id,
                                kind: rule.out,
                                span: (i, k),
                                split: j,
                                left: Box::new(self.unrank(i, j, rule.left, rank / right_count)),
                                right: Box::new(self.unrank(j, k, rule.right, rank % right_count)),
                            };
                        }
                        rank -= block;
                    }
                }
                unreachable!("concat rank out of range for {kind} at ({i}, {k})")
            }
        }
    }

    fn remaining(&self) -> u64 {
        let mut total = 0u64;
        for (pos, kind) in ItemKind::ALL.into_iter().enumerate() {
            if pos < self.kind_pos || !self.family.goal_kinds.contains(&kind) {
                continue;
            }
            total += self.count_at(1, self.n, kind);
            if pos == self.kind_pos {
                total -= self.rank;
            }
        }
        total
    }
}

impl Iterator for Derivations<'_> {
    type Item = Derivation;

    fn next(&mut self) -> Option<Derivation> {
        while self.kind_pos < ItemKind::ALL.len() {
            let kind = ItemKind::ALL[self.kind_pos];
            if self.family.goal_kinds.contains(&kind) {
                let total = self.count_at(1, self.n, kind);
                if self.rank < total {
                    let d = self.unrank(1, self.n, kind, self.rank);
                    self.rank += 1;
                    return Some(d);
                }
            }
            self.kind_pos += 1;
            self.rank = 0;
        }
        None
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.remaining() as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family, FamilyName};
    use crate::semiring::{CountWeight, MaxPlusWeight};

    fn count_chart(name: FamilyName, n: usize) -> Chart<CountWeight> {
        fill_chart(&family(name), n, |_, _| CountWeight::one(), false).unwrap()
    }

    #[test]
    fn rejects_single_vertex() {
        let f = family(FamilyName::Acyclic);
        assert!(matches!(
            fill_chart::<CountWeight>(&f, 1, |_, _| CountWeight::one(), false),
            Err(Error::VertexCount { min: 2, got: 1 })
        ));
    }

    #[test]
    fn two_vertex_acyclic_cells() {
        let chart = count_chart(FamilyName::Acyclic, 2);
        let one = CountWeight::from_u64(1);
        let zero = CountWeight::zero();
        assert_eq!(*chart.value(1, 2, ItemKind::Elementary), one);
        assert_eq!(*chart.value(1, 2, ItemKind::MinMaxCovered), one);
        assert_eq!(*chart.value(1, 2, ItemKind::MaxMinCovered), one);
        for kind in [
            ItemKind::MinMaxConnected,
            ItemKind::MaxMinConnected,
            ItemKind::MixConnected,
            ItemKind::Unconnected,
        ] {
            assert_eq!(*chart.value(1, 2, kind), zero);
        }
    }

    #[test]
    fn three_vertex_goal_totals() {
        let f = family(FamilyName::Acyclic);
        let chart = count_chart(FamilyName::Acyclic, 3);
        assert_eq!(goal_value(&chart, &f), CountWeight::from_u64(25));

        let f = family(FamilyName::Undirected);
        let chart = count_chart(FamilyName::Undirected, 3);
        assert_eq!(goal_value(&chart, &f), CountWeight::from_u64(8));
    }

    #[test]
    fn cell_count_is_quadratic_and_exact() {
        for n in [2, 3, 7, 12] {
            let chart = count_chart(FamilyName::Acyclic, n);
            assert_eq!(chart.cell_count(), 7 * n * (n - 1) / 2);
        }
    }

    #[test]
    fn times_applications_stay_cubic() {
        let f = family(FamilyName::Acyclic);
        for n in [4usize, 8, 16] {
            let chart = count_chart(FamilyName::Acyclic, n);
            let triples = (n * (n - 1) * (n - 2) / 6) as u64;
            let spans = (n * (n - 1) / 2) as u64;
            let bound = f.concat_rules.len() as u64 * triples + f.cover_rules.len() as u64 * spans;
            assert!(chart.stats().times_applications <= bound);
        }
    }

    #[test]
    fn backtrace_prefers_the_better_cover() {
        let f = family(FamilyName::Acyclic);
        let scores = |src: usize, dst: usize| {
            MaxPlusWeight::finite(match (src, dst) {
                (1, 2) => 5.0,
                (2, 1) => 1.0,
                _ => 0.0,
            })
        };
        let chart = fill_chart(&f, 2, scores, true).unwrap();
        assert_eq!(goal_value(&chart, &f).value(), Some(5.0));
        let d = backtrace(&chart, &f).unwrap();
        match &d {
            Derivation::Cover { rule, child, .. } => {
                assert_eq!(*rule, "27e");
                assert!(matches!(**child, Derivation::Axiom { span: (1, 2) }));
            }
            other => panic!("unexpected derivation {other:?}"),
        }
        let g = realize(&d);
        assert!(g.contains_arc(1, 2));
        assert_eq!(g.arc_count(), 1);
    }

    #[test]
    fn backtrace_falls_back_to_the_empty_graph_when_arcs_cost() {
        let f = family(FamilyName::Acyclic);
        let chart = fill_chart(&f, 2, |_, _| MaxPlusWeight::finite(-2.0), true).unwrap();
        let d = backtrace(&chart, &f).unwrap();
        assert_eq!(d, Derivation::Axiom { span: (1, 2) });
        assert_eq!(realize(&d).arc_count(), 0);
        assert_eq!(goal_value(&chart, &f).value(), Some(0.0));
    }

    #[test]
    fn realize_collects_cover_arcs() {
        let leaf = |i: usize| Derivation::Axiom { span: (i, i + 1) };
        let covered = |i: usize| Derivation::Cover {
            rule: "27e",
            kind: ItemKind::MinMaxCovered,
            span: (i, i + 1),
            direction: Direction::MinToMax,
            child: Box::new(leaf(i)),
        };
        let d = Derivation::Concat {
            rule: "01",
            kind: ItemKind::MinMaxConnected,
            span: (1, 3),
            split: 2,
            left: Box::new(covered(1)),
            right: Box::new(covered(2)),
        };
        let g = realize(&d);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);

        assert_eq!(realize(&leaf(1)).vertex_count(), 2);
    }

    #[test]
    fn derivation_stream_is_deterministic_and_complete() {
        let f = family(FamilyName::Acyclic);
        let graphs: Vec<_> = derivations(&f, 2).unwrap().map(|d| realize(&d)).collect();
        assert_eq!(graphs.len(), 3);
        // Canonical kind order: min-to-max covered, max-to-min covered,
        // then the elementary (edgeless) graph.
        assert!(graphs[0].contains_arc(1, 2));
        assert!(graphs[1].contains_arc(2, 1));
        assert_eq!(graphs[2].arc_count(), 0);

        let again: Vec<_> = derivations(&f, 2).unwrap().map(|d| realize(&d)).collect();
        assert_eq!(graphs, again);
    }

    #[test]
    fn derivation_stream_length_matches_the_count() {
        let f = family(FamilyName::Undirected);
        let stream = derivations(&f, 3).unwrap();
        assert_eq!(stream.size_hint(), (8, Some(8)));
        assert_eq!(stream.count(), 8);
    }

    #[test]
    fn derivation_cap_is_enforced() {
        let f = family(FamilyName::Acyclic);
        assert!(matches!(
            derivations(&f, 9),
            Err(Error::EnumerationCap { cap: 8, got: 9 })
        ));
        assert!(matches!(
            derivations(&f, 1),
            Err(Error::VertexCount { min: 2, got: 1 })
        ));
    }
}

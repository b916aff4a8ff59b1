//! Deduction-rule tables for the five noncrossing graph families.
//!
//! Chart items pair a span `(i, k)` with an [`ItemKind`]. Two rule shapes
//! build larger items: concatenation glues items over `(i, j)` and `(j, k)`
//! at the shared vertex `j` without adding arcs, and covering keeps the span
//! but adds one extremal arc over it. Every member graph of a family has
//! exactly one derivation from elementary axioms, which is what lets a
//! single chart pass count, enumerate, or optimize over the whole family.

use std::collections::BTreeSet;
use std::fmt;

use crate::digraph::GraphClass;

/// The kind of a chart item; mirrors [`GraphClass`] span by span.
///
/// Width constraints (`width = k - i`): covered kinds need width >= 1,
/// `Elementary` exactly 1, everything else width >= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ItemKind {
    MinMaxCovered,
    MaxMinCovered,
    MinMaxConnected,
    MaxMinConnected,
    MixConnected,
    Elementary,
    Unconnected,
}

impl ItemKind {
    pub const ALL: [ItemKind; 7] = [
        ItemKind::MinMaxCovered,
        ItemKind::MaxMinCovered,
        ItemKind::MinMaxConnected,
        ItemKind::MaxMinConnected,
        ItemKind::MixConnected,
        ItemKind::Elementary,
        ItemKind::Unconnected,
    ];

    /// Position in the canonical order, used for chart indexing and for
    /// deterministic iteration everywhere.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_covered(self) -> bool {
        matches!(self, ItemKind::MinMaxCovered | ItemKind::MaxMinCovered)
    }

    pub fn admits_width(self, width: usize) -> bool {
        match self {
            ItemKind::MinMaxCovered | ItemKind::MaxMinCovered => width >= 1,
            ItemKind::Elementary => width == 1,
            _ => width >= 2,
        }
    }
}

impl From<ItemKind> for GraphClass {
    fn from(kind: ItemKind) -> GraphClass {
        match kind {
            ItemKind::MinMaxCovered => GraphClass::MinMaxCovered,
            ItemKind::MaxMinCovered => GraphClass::MaxMinCovered,
            ItemKind::MinMaxConnected => GraphClass::MinMaxConnected,
            ItemKind::MaxMinConnected => GraphClass::MaxMinConnected,
            ItemKind::MixConnected => GraphClass::MixConnected,
            ItemKind::Elementary => GraphClass::Elementary,
            ItemKind::Unconnected => GraphClass::Unconnected,
        }
    }
}

impl From<GraphClass> for ItemKind {
    fn from(class: GraphClass) -> ItemKind {
        match class {
            GraphClass::MinMaxCovered => ItemKind::MinMaxCovered,
            GraphClass::MaxMinCovered => ItemKind::MaxMinCovered,
            GraphClass::MinMaxConnected => ItemKind::MinMaxConnected,
            GraphClass::MaxMinConnected => ItemKind::MaxMinConnected,
            GraphClass::MixConnected => ItemKind::MixConnected,
            GraphClass::Elementary => ItemKind::Elementary,
            GraphClass::Unconnected => ItemKind::Unconnected,
        }
    }
}

impl fmt::Display for ItemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(GraphClass::from(*self).as_str())
    }
}

/// Orientation of the arc a cover rule adds over its span `(i, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Adds the arc `(i, k)`.
    MinToMax,
    /// Adds the arc `(k, i)`.
    MaxToMin,
}

/// Concatenation: `left` over `(i, j)` and `right` over `(j, k)` yield
/// `out` over `(i, k)`. No arcs are added.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConcatRule {
    pub id: &'static str,
    pub left: ItemKind,
    pub right: ItemKind,
    pub out: ItemKind,
}

/// Covering: `input` over `(i, k)` plus one extremal arc yields `out` over
/// the same span.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverRule {
    pub id: &'static str,
    pub input: ItemKind,
    pub direction: Direction,
    pub out: ItemKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum FamilyName {
    /// Noncrossing acyclic digraphs.
    Acyclic,
    /// Noncrossing acyclic digraphs that are weakly connected.
    ConnectedAcyclic,
    /// All noncrossing digraphs, cycles and antiparallel pairs included.
    Digraph,
    /// Noncrossing undirected graphs, reported with arcs `(u, v)`, `u < v`.
    Undirected,
    /// Connected noncrossing undirected graphs.
    ConnectedUndirected,
}

impl FamilyName {
    pub const ALL: [FamilyName; 5] = [
        FamilyName::Acyclic,
        FamilyName::ConnectedAcyclic,
        FamilyName::Digraph,
        FamilyName::Undirected,
        FamilyName::ConnectedUndirected,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Acyclic => "acyclic",
            FamilyName::ConnectedAcyclic => "connected-acyclic",
            FamilyName::Digraph => "digraph",
            FamilyName::Undirected => "undirected",
            FamilyName::ConnectedUndirected => "connected-undirected",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FamilyName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// A family's complete rule inventory plus its goal kinds at span `(1, n)`.
#[derive(Clone, Debug)]
pub struct Family {
    pub name: FamilyName,
    pub kinds: BTreeSet<ItemKind>,
    pub concat_rules: Vec<ConcatRule>,
    pub cover_rules: Vec<CoverRule>,
    pub goal_kinds: BTreeSet<ItemKind>,
    /// Goal kinds that the table can never derive, by design. The undirected
    /// tables keep all seven goal kinds, but nothing produces the max-to-min
    /// or mixed kinds once every arc points rightward.
    pub sanctioned_unreachable: BTreeSet<ItemKind>,
}

use ItemKind::{
    Elementary as E, MaxMinConnected as B, MaxMinCovered as L, MinMaxConnected as A,
    MinMaxCovered as R, MixConnected as M, Unconnected as U,
};

const fn concat(id: &'static str, left: ItemKind, right: ItemKind, out: ItemKind) -> ConcatRule {
    ConcatRule {
        id,
        left,
        right,
        out,
    }
}

const fn cover(
    id: &'static str,
    input: ItemKind,
    direction: Direction,
    out: ItemKind,
) -> CoverRule {
    CoverRule {
        id,
        input,
        direction,
        out,
    }
}

/// The base concatenation table for acyclic graphs. Rules 01-20 pair every
/// kind that can stand left of a split with a covered or elementary right
/// part; rule 20e is rule 20 with an elementary left part, the case that
/// grows an edgeless graph by one vertex.
const BASE_CONCAT: [ConcatRule; 21] = [
    concat("01", R, R, A),
    concat("02", L, L, B),
    concat("03", R, L, M),
    concat("04", L, R, M),
    concat("05", R, E, U),
    concat("06", E, R, U),
    concat("07", L, E, U),
    concat("08", E, L, U),
    concat("09", A, R, A),
    concat("10", A, L, M),
    concat("11", B, R, M),
    concat("12", B, L, B),
    concat("13", M, R, M),
    concat("14", M, L, M),
    concat("15", A, E, U),
    concat("16", B, E, U),
    concat("17", M, E, U),
    concat("18", U, R, U),
    concat("19", U, L, U),
    concat("20", U, E, U),
    concat("20e", E, E, U),
];

/// The base cover table. Rules 21-23 cover min-to-max, 24-26 max-to-min;
/// 27e and 28e are the elementary-input counterparts that produce the two
/// single-arc graphs on two vertices.
const BASE_COVER: [CoverRule; 8] = [
    cover("21", A, Direction::MinToMax, R),
    cover("22", M, Direction::MinToMax, R),
    cover("23", U, Direction::MinToMax, R),
    cover("24", B, Direction::MaxToMin, L),
    cover("25", M, Direction::MaxToMin, L),
    cover("26", U, Direction::MaxToMin, L),
    cover("27e", E, Direction::MinToMax, R),
    cover("28e", E, Direction::MaxToMin, L),
];

/// Covering a max-to-min covered graph with the antiparallel min-to-max arc.
/// Only the unrestricted digraph family uses it, and only in this direction,
/// so each antiparallel extremal pair still has a unique derivation.
const ANTIPARALLEL_COVER: CoverRule = cover("29a", L, Direction::MinToMax, R);

/// Builds the rule table for `name`.
///
/// The connected variants drop the two rules that concatenate an elementary
/// graph onto the right end (20 and 20e) together with the unconnected and
/// elementary goals. The unrestricted digraph family merges the directed
/// connected kinds into the mixed kind and adds the antiparallel cover. The
/// undirected families keep min-to-max covers only.
pub fn family(name: FamilyName) -> Family {
    let all: BTreeSet<ItemKind> = ItemKind::ALL.into_iter().collect();
    match name {
        FamilyName::Acyclic => Family {
            name,
            kinds: all.clone(),
            concat_rules: BASE_CONCAT.to_vec(),
            cover_rules: BASE_COVER.to_vec(),
            goal_kinds: all,
            sanctioned_unreachable: BTreeSet::new(),
        },
        FamilyName::ConnectedAcyclic => Family {
            name,
            kinds: all.clone(),
            concat_rules: without_concat(&["20", "20e"]),
            cover_rules: BASE_COVER.to_vec(),
            goal_kinds: all.into_iter().filter(|k| *k != U && *k != E).collect(),
            sanctioned_unreachable: BTreeSet::new(),
        },
        FamilyName::Digraph => {
            let kinds: BTreeSet<ItemKind> = ItemKind::ALL
                .into_iter()
                .filter(|k| *k != A && *k != B)
                .collect();
            let concat_rules = without_concat(&["09", "10", "11", "12", "15", "16"])
                .into_iter()
                .map(|r| match r.id {
                    // With the directed connected kinds gone, chaining two
                    // covered graphs lands in the mixed kind.
                    "01" | "02" => ConcatRule { out: M, ..r },
                    _ => r,
                })
                .collect();
            let mut cover_rules = without_cover(&["21", "24"]);
            cover_rules.push(ANTIPARALLEL_COVER);
            Family {
                name,
                kinds: kinds.clone(),
                concat_rules,
                cover_rules,
                goal_kinds: kinds,
                sanctioned_unreachable: BTreeSet::new(),
            }
        }
        FamilyName::Undirected => Family {
            name,
            kinds: all.clone(),
            concat_rules: BASE_CONCAT.to_vec(),
            cover_rules: without_cover(&["24", "25", "26", "28e"]),
            goal_kinds: all,
            sanctioned_unreachable: [L, B, M].into_iter().collect(),
        },
        FamilyName::ConnectedUndirected => Family {
            name,
            kinds: all.clone(),
            concat_rules: without_concat(&["20", "20e"]),
            cover_rules: without_cover(&["24", "25", "26", "28e"]),
            goal_kinds: all.into_iter().filter(|k| *k != U && *k != E).collect(),
            sanctioned_unreachable: [L, B, M].into_iter().collect(),
        },
    }
}

fn without_concat(ids: &[&str]) -> Vec<ConcatRule> {
    BASE_CONCAT
        .into_iter()
        .filter(|r| !ids.contains(&r.id))
        .collect()
}

fn without_cover(ids: &[&str]) -> Vec<CoverRule> {
    BASE_COVER
        .into_iter()
        .filter(|r| !ids.contains(&r.id))
        .collect()
}

/// Structural diagnostics for a rule table. Returns one message per problem
/// found; an empty list means the table is well formed and every goal kind
/// not sanctioned as unreachable is actually derivable for some `n <= 6`.
pub fn validate_family(f: &Family) -> Vec<String> {
    let mut diags = Vec::new();

    let mut ids = BTreeSet::new();
    for id in f
        .concat_rules
        .iter()
        .map(|r| r.id)
        .chain(f.cover_rules.iter().map(|r| r.id))
    {
        if !ids.insert(id) {
            diags.push(format!("duplicate rule id `{id}`"));
        }
    }

    for r in &f.concat_rules {
        for (role, kind) in [("left", r.left), ("right", r.right), ("out", r.out)] {
            if !f.kinds.contains(&kind) {
                diags.push(format!(
                    "concat rule `{}` uses {role} kind {kind} outside the family's kinds",
                    r.id
                ));
            }
        }
        if r.out.is_covered() {
            diags.push(format!(
                "concat rule `{}` outputs covered kind {}; concatenation never adds the covering arc",
                r.id, r.out
            ));
        }
    }

    for r in &f.cover_rules {
        for (role, kind) in [("input", r.input), ("out", r.out)] {
            if !f.kinds.contains(&kind) {
                diags.push(format!(
                    "cover rule `{}` uses {role} kind {kind} outside the family's kinds",
                    r.id
                ));
            }
        }
        if !r.out.is_covered() {
            diags.push(format!(
                "cover rule `{}` outputs non-covered kind {}",
                r.id, r.out
            ));
        }
        let expected = match r.direction {
            Direction::MinToMax => R,
            Direction::MaxToMin => L,
        };
        if r.out != expected {
            diags.push(format!(
                "cover rule `{}` adds a {:?} arc but outputs {}",
                r.id, r.direction, r.out
            ));
        }
    }

    for kind in &f.goal_kinds {
        if !f.kinds.contains(kind) {
            diags.push(format!("goal kind {kind} outside the family's kinds"));
        }
    }

    // Reachability: every goal kind should show up at some small goal span,
    // except the ones the family sanctions as unreachable.
    let mut reached: BTreeSet<ItemKind> = BTreeSet::new();
    for n in 2..=6 {
        let chart = crate::engine::fill_chart::<crate::semiring::BoolWeight>(
            f,
            n,
            |_, _| crate::semiring::BoolWeight(true),
            false,
        )
        .expect("n is in range");
        for &kind in &f.goal_kinds {
            if chart.value(1, n, kind).0 {
                reached.insert(kind);
            }
        }
    }
    for &kind in &f.goal_kinds {
        if !reached.contains(&kind) && !f.sanctioned_unreachable.contains(&kind) {
            diags.push(format!("goal kind {kind} is never derivable for n <= 6"));
        }
    }

    diags
}

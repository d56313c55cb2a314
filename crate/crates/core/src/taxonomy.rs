// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Classification of complexes into admissible and the inadmissible classes.
//!
//! Precedence is omitted points, then isolated trees, then cycle structure,
//! which makes the labels a partition of all complexes. Once a complex
//! covers every point and has no tree component, the 8 lines on 8 points
//! force every component to be unicyclic, so the multiset of cycle lengths
//! decides the class.

pub mod formulas;
pub mod lemmas;

use std::fmt;
use std::str::FromStr;

use crate::checker::{ComponentKind, ComponentSummary, Graph};
use crate::error::{Error, Result};
use crate::geometry::{Complex, NUM_POINTS};

pub use formulas::{formula_ledger, FormulaResult};
pub use lemmas::{verify_lemmas, LemmaCheck, LemmaReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TaxonomyLabel {
    Admissible,
    /// Number of omitted points, 1..=3.
    OmitsPoints(u8),
    TreeIsolatedLine,
    Tree3Point,
    Tree4Point,
    Cycle8,
    Cycle6,
    TwoFourCycles,
    UniqueFourCycleDisconnected,
    /// Number of 4-cycle vertices of valence above 2, 1..=4.
    UniqueFourCycleConnected(u8),
}

pub const NUM_LABELS: usize = 15;

impl TaxonomyLabel {
    pub const ALL: [TaxonomyLabel; NUM_LABELS] = [
        TaxonomyLabel::Admissible,
        TaxonomyLabel::OmitsPoints(1),
        TaxonomyLabel::OmitsPoints(2),
        TaxonomyLabel::OmitsPoints(3),
        TaxonomyLabel::TreeIsolatedLine,
        TaxonomyLabel::Tree3Point,
        TaxonomyLabel::Tree4Point,
        TaxonomyLabel::Cycle8,
        TaxonomyLabel::Cycle6,
        TaxonomyLabel::TwoFourCycles,
        TaxonomyLabel::UniqueFourCycleDisconnected,
        TaxonomyLabel::UniqueFourCycleConnected(1),
        TaxonomyLabel::UniqueFourCycleConnected(2),
        TaxonomyLabel::UniqueFourCycleConnected(3),
        TaxonomyLabel::UniqueFourCycleConnected(4),
    ];

    /// Dense index into [`TaxonomyLabel::ALL`].
    pub fn index(self) -> usize {
        match self {
            TaxonomyLabel::Admissible => 0,
            TaxonomyLabel::OmitsPoints(k) => k as usize,
            TaxonomyLabel::TreeIsolatedLine => 4,
            TaxonomyLabel::Tree3Point => 5,
            TaxonomyLabel::Tree4Point => 6,
            TaxonomyLabel::Cycle8 => 7,
            TaxonomyLabel::Cycle6 => 8,
            TaxonomyLabel::TwoFourCycles => 9,
            TaxonomyLabel::UniqueFourCycleDisconnected => 10,
            TaxonomyLabel::UniqueFourCycleConnected(j) => 10 + j as usize,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TaxonomyLabel::Admissible => "ADMISSIBLE",
            TaxonomyLabel::OmitsPoints(1) => "OMITS_POINTS_1",
            TaxonomyLabel::OmitsPoints(2) => "OMITS_POINTS_2",
            TaxonomyLabel::OmitsPoints(_) => "OMITS_POINTS_3",
            TaxonomyLabel::TreeIsolatedLine => "TREE_ISOLATED_LINE",
            TaxonomyLabel::Tree3Point => "TREE_3POINT",
            TaxonomyLabel::Tree4Point => "TREE_4POINT",
            TaxonomyLabel::Cycle8 => "CYCLE_8",
            TaxonomyLabel::Cycle6 => "CYCLE_6",
            TaxonomyLabel::TwoFourCycles => "TWO_4CYCLES",
            TaxonomyLabel::UniqueFourCycleDisconnected => "UNIQUE_4CYCLE_DISCONNECTED",
            TaxonomyLabel::UniqueFourCycleConnected(1) => "UNIQUE_4CYCLE_CONNECTED_1",
            TaxonomyLabel::UniqueFourCycleConnected(2) => "UNIQUE_4CYCLE_CONNECTED_2",
            TaxonomyLabel::UniqueFourCycleConnected(3) => "UNIQUE_4CYCLE_CONNECTED_3",
            TaxonomyLabel::UniqueFourCycleConnected(_) => "UNIQUE_4CYCLE_CONNECTED_4",
        }
    }

    pub fn is_admissible(self) -> bool {
        self == TaxonomyLabel::Admissible
    }

    pub fn description(self) -> String {
        match self {
            TaxonomyLabel::Admissible => "admissible: covers every point, every component has an odd cycle".into(),
            TaxonomyLabel::OmitsPoints(k) => format!("omits exactly {k} point(s)"),
            TaxonomyLabel::TreeIsolatedLine => "covers every point, has an isolated line".into(),
            TaxonomyLabel::Tree3Point => "covers every point, has an isolated 3-point tree".into(),
            TaxonomyLabel::Tree4Point => "covers every point, has an isolated 4-point tree".into(),
            TaxonomyLabel::Cycle8 => "proper, contains an 8-cycle".into(),
            TaxonomyLabel::Cycle6 => "proper, contains a 6-cycle".into(),
            TaxonomyLabel::TwoFourCycles => "proper, contains two disjoint 4-cycles".into(),
            TaxonomyLabel::UniqueFourCycleDisconnected => "proper, disconnected, unique 4-cycle".into(),
            TaxonomyLabel::UniqueFourCycleConnected(j) => {
                format!("proper, connected, unique 4-cycle with {j} vertex(es) of valence > 2")
            }
        }
    }
}

impl fmt::Display for TaxonomyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TaxonomyLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TaxonomyLabel::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown label {s:?}"),
            })
    }
}

/// Everything the sweep and the classifier need to know about one complex.
#[derive(Debug, Clone)]
pub struct ComplexProfile {
    pub complex: Complex,
    pub omitted_mask: u8,
    pub degrees: [u8; NUM_POINTS],
    pub components: Vec<ComponentSummary>,
    /// Number of uncovered points plus bipartite covered components.
    pub bipartite_components: usize,
}

impl ComplexProfile {
    pub fn new(c: Complex) -> Self {
        let g = Graph::from_complex(c);
        let components = g.components();
        let omitted_mask = !(g.covered() as u8);
        let degrees = std::array::from_fn(|v| g.degree(v) as u8);
        let bipartite_components =
            omitted_mask.count_ones() as usize + components.iter().filter(|s| s.bipartite).count();
        ComplexProfile {
            complex: c,
            omitted_mask,
            degrees,
            components,
            bipartite_components,
        }
    }

    pub fn omitted_count(&self) -> u8 {
        self.omitted_mask.count_ones() as u8
    }

    pub fn isolated_lines(&self) -> u8 {
        self.trees_of_size(2)
    }

    pub fn trees_of_size(&self, size: u8) -> u8 {
        self.components
            .iter()
            .filter(|s| s.kind == ComponentKind::Tree && s.vertex_count() == size)
            .count() as u8
    }

    pub fn has_tree(&self) -> bool {
        self.components.iter().any(|s| s.kind == ComponentKind::Tree)
    }

    /// Number of distinct tree classes (line, 3-point, 4-point, larger) present.
    pub fn tree_class_count(&self) -> usize {
        let mut sizes = 0u16;
        for s in &self.components {
            if s.kind == ComponentKind::Tree {
                sizes |= 1 << s.vertex_count().min(5);
            }
        }
        sizes.count_ones() as usize
    }

    pub fn graph_admissible(&self) -> bool {
        self.bipartite_components == 0
    }

    pub fn is_proper(&self) -> bool {
        self.omitted_mask == 0 && !self.has_tree()
    }

    pub fn all_unicyclic(&self) -> bool {
        self.components.iter().all(|s| s.kind.is_unicyclic())
    }

    /// Structure theorem: covered and every component unicyclic with odd cycle.
    pub fn all_odd_unicyclic(&self) -> bool {
        self.omitted_mask == 0
            && self
                .components
                .iter()
                .all(|s| s.kind == ComponentKind::UnicyclicOdd)
    }

    fn four_cycle_components(&self) -> impl Iterator<Item = &ComponentSummary> {
        self.components.iter().filter(|s| s.cycle_length == Some(4))
    }

    pub fn label(&self) -> TaxonomyLabel {
        let omitted = self.omitted_count();
        if omitted > 0 {
            return TaxonomyLabel::OmitsPoints(omitted);
        }
        if self.has_tree() {
            return if self.trees_of_size(2) > 0 {
                TaxonomyLabel::TreeIsolatedLine
            } else if self.trees_of_size(3) > 0 {
                TaxonomyLabel::Tree3Point
            } else {
                debug_assert!(self.trees_of_size(4) > 0);
                TaxonomyLabel::Tree4Point
            };
        }
        if self.graph_admissible() {
            return TaxonomyLabel::Admissible;
        }
        let has = |len: u8| self.components.iter().any(|s| s.cycle_length == Some(len));
        if has(8) {
            return TaxonomyLabel::Cycle8;
        }
        if has(6) {
            return TaxonomyLabel::Cycle6;
        }
        let fours: Vec<&ComponentSummary> = self.four_cycle_components().collect();
        if fours.len() >= 2 {
            return TaxonomyLabel::TwoFourCycles;
        }
        if self.components.len() > 1 {
            return TaxonomyLabel::UniqueFourCycleDisconnected;
        }
        let cycle = fours.first().map_or(0, |s| s.cycle_vertices);
        let heavy = (0..NUM_POINTS)
            .filter(|&v| cycle & (1 << v) != 0 && self.degrees[v] > 2)
            .count();
        TaxonomyLabel::UniqueFourCycleConnected(heavy as u8)
    }
}

pub fn classify(c: Complex) -> TaxonomyLabel {
    ComplexProfile::new(c).label()
}

/// Every 4-cycle of the complex's graph as a vertex mask, found by brute
/// force over the 3 cyclic orders of every 4-point set, in ascending mask
/// order. Two distinct 4-cycles on the same 4 points both appear (same mask).
pub fn brute_force_four_cycles(c: Complex) -> Vec<u8> {
    let adj = c.adjacency();
    let edge = |a: usize, b: usize| adj[a] & (1 << b) != 0;
    let mut out = Vec::new();
    for a in 0..NUM_POINTS {
        for b in a + 1..NUM_POINTS {
            for x in b + 1..NUM_POINTS {
                for d in x + 1..NUM_POINTS {
                    let mask = (1u8 << a) | (1 << b) | (1 << x) | (1 << d);
                    // a-b-x-d, a-b-d-x, a-x-b-d
                    for [p, q, r] in [[b, x, d], [b, d, x], [x, b, d]] {
                        if edge(a, p) && edge(p, q) && edge(q, r) && edge(r, a) {
                            out.push(mask);
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

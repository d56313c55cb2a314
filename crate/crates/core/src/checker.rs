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

//! Graph-theoretic admissibility.
//!
//! A complex is admissible iff every point is covered and no connected
//! component is bipartite. The rank of a graph's vertex-edge incidence matrix
//! over the rationals is `#vertices - #bipartite components` (isolated
//! vertices count as bipartite), so this is exactly the maximal-rank test.
//! For 8 lines on 8 covered points it reduces to "every component is
//! unicyclic with an odd cycle".

use crate::error::{Error, Result};
use crate::geometry::{Complex, PointId, NUM_POINTS};

pub const MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Tree,
    UnicyclicOdd,
    UnicyclicEven,
    Multicyclic,
}

impl ComponentKind {
    pub fn is_unicyclic(self) -> bool {
        matches!(self, ComponentKind::UnicyclicOdd | ComponentKind::UnicyclicEven)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComponentSummary {
    /// Vertex set as a bitmask.
    pub vertices: u16,
    pub edge_count: u8,
    pub kind: ComponentKind,
    /// Present iff the component is unicyclic.
    pub cycle_length: Option<u8>,
    /// Vertices of the unique cycle (unicyclic components only).
    pub cycle_vertices: u16,
    pub bipartite: bool,
}

impl ComponentSummary {
    pub fn vertex_count(&self) -> u8 {
        self.vertices.count_ones() as u8
    }

    pub fn points(&self) -> Vec<PointId> {
        (0..NUM_POINTS as u8)
            .filter(|&v| self.vertices & (1 << v) != 0)
            .map(|v| PointId::new(v).expect("vertex below 8"))
            .collect()
    }
}

/// Simple undirected graph on at most 16 vertices, stored as adjacency masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Graph {
    n: u8,
    adj: [u16; MAX_VERTICES],
}

impl Graph {
    pub fn new(n: usize, edges: &[(u8, u8)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::OutOfRange {
                what: "vertex count",
                value: n as u64,
                bound: MAX_VERTICES as u64 + 1,
            });
        }
        let mut adj = [0u16; MAX_VERTICES];
        for &(a, b) in edges {
            for v in [a, b] {
                if v as usize >= n {
                    return Err(Error::OutOfRange {
                        what: "vertex",
                        value: v as u64,
                        bound: n as u64,
                    });
                }
            }
            if a == b {
                return Err(Error::DegenerateLine(a));
            }
            if adj[a as usize] & (1 << b) != 0 {
                return Err(Error::DuplicateLine(a.min(b), a.max(b)));
            }
            adj[a as usize] |= 1 << b;
            adj[b as usize] |= 1 << a;
        }
        Ok(Graph { n: n as u8, adj })
    }

    pub fn from_complex(c: Complex) -> Self {
        let mut adj = [0u16; MAX_VERTICES];
        for (dst, src) in adj.iter_mut().zip(c.adjacency()) {
            *dst = src as u16;
        }
        Graph {
            n: NUM_POINTS as u8,
            adj,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn neighbours(&self, v: usize) -> u16 {
        self.adj[v]
    }

    pub fn edges(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            let mut higher = self.adj[a as usize] & !((2u16 << a) - 1);
            while higher != 0 {
                let b = higher.trailing_zeros() as u8;
                higher &= higher - 1;
                out.push((a, b));
            }
        }
        out
    }

    /// Vertices with at least one incident edge.
    pub fn covered(&self) -> u16 {
        (0..self.n as usize)
            .filter(|&v| self.adj[v] != 0)
            .fold(0, |m, v| m | 1 << v)
    }

    fn all_vertices(&self) -> u16 {
        ((1u32 << self.n) - 1) as u16
    }

    fn neighbourhood(&self, set: u16) -> u16 {
        let mut out = 0;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.adj[v];
        }
        out
    }

    fn component_of(&self, v: usize) -> u16 {
        let mut comp = 1u16 << v;
        loop {
            let grown = comp | self.neighbourhood(comp);
            if grown == comp {
                return comp;
            }
            comp = grown;
        }
    }

    /// Proper 2-colouring test by breadth-first layering from the lowest vertex.
    fn is_bipartite(&self, comp: u16) -> bool {
        let start = comp.trailing_zeros() as usize;
        let mut even = 1u16 << start;
        let mut odd = 0u16;
        let mut frontier = even;
        let mut seen = even;
        let mut depth = 0usize;
        while frontier != 0 {
            let next = self.neighbourhood(frontier) & !seen;
            depth += 1;
            if depth % 2 == 1 {
                odd |= next;
            } else {
                even |= next;
            }
            seen |= next;
            frontier = next;
        }
        let mut rest = comp;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let side = if even & (1 << v) != 0 { even } else { odd };
            if self.adj[v] & side != 0 {
                return false;
            }
        }
        true
    }

    /// Repeatedly strips vertices of degree <= 1 inside `comp`; what remains
    /// of a unicyclic component is its cycle.
    fn core(&self, comp: u16) -> u16 {
        let mut alive = comp;
        loop {
            let mut leaves = 0u16;
            let mut rest = alive;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (self.adj[v] & alive).count_ones() <= 1 {
                    leaves |= 1 << v;
                }
            }
            if leaves == 0 {
                return alive;
            }
            alive &= !leaves;
        }
    }

    fn summarize(&self, comp: u16) -> ComponentSummary {
        let mut degree_sum = 0u32;
        let mut rest = comp;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            degree_sum += self.adj[v].count_ones();
        }
        let edges = degree_sum / 2;
        let verts = comp.count_ones();
        let bipartite = self.is_bipartite(comp);
        let (kind, cycle_length, cycle_vertices) = if edges + 1 == verts {
            (ComponentKind::Tree, None, 0)
        } else if edges == verts {
            let cycle = self.core(comp);
            let len = cycle.count_ones() as u8;
            let kind = if len.is_multiple_of(2) {
                ComponentKind::UnicyclicEven
            } else {
                ComponentKind::UnicyclicOdd
            };
            (kind, Some(len), cycle)
        } else {
            (ComponentKind::Multicyclic, None, 0)
        };
        ComponentSummary {
            vertices: comp,
            edge_count: edges as u8,
            kind,
            cycle_length,
            cycle_vertices,
            bipartite,
        }
    }

    /// Connected components among covered vertices, ordered by lowest vertex.
    pub fn components(&self) -> Vec<ComponentSummary> {
        let mut out = Vec::new();
        let mut rest = self.covered();
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let comp = self.component_of(v);
            rest &= !comp;
            out.push(self.summarize(comp));
        }
        out
    }

    /// Bipartite components, counting uncovered vertices as singletons.
    pub fn bipartite_component_count(&self) -> usize {
        let isolated = (self.all_vertices() & !self.covered()).count_ones() as usize;
        isolated + self.components().iter().filter(|c| c.bipartite).count()
    }

    pub fn verdict(&self) -> AdmissibilityVerdict {
        let uncovered = self.all_vertices() & !self.covered();
        let bipartite_components = self.bipartite_component_count();
        AdmissibilityVerdict {
            admissible: uncovered == 0 && bipartite_components == 0,
            omitted_points: (0..self.n).filter(|&v| uncovered & (1 << v) != 0).collect(),
            bipartite_components,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityVerdict {
    pub admissible: bool,
    pub omitted_points: Vec<u8>,
    /// Includes omitted points as singleton components.
    pub bipartite_components: usize,
}

impl AdmissibilityVerdict {
    pub fn diagnosis(&self) -> String {
        if self.admissible {
            return "admissible".to_string();
        }
        let mut parts = Vec::new();
        if !self.omitted_points.is_empty() {
            let pts: Vec<String> = self.omitted_points.iter().map(u8::to_string).collect();
            parts.push(format!("omits points {}", pts.join(",")));
        }
        let covered_bipartite = self.bipartite_components - self.omitted_points.len();
        if covered_bipartite > 0 {
            parts.push(format!(
                "{covered_bipartite} bipartite component(s) (isolated tree or even cycle)"
            ));
        }
        parts.join("; ")
    }
}

pub fn covered_points(c: Complex) -> Vec<PointId> {
    let mask = c.adjacency().iter().enumerate().fold(0u8, |m, (v, &a)| {
        if a != 0 {
            m | 1 << v
        } else {
            m
        }
    });
    PointId::all().filter(|p| mask & (1 << p.value()) != 0).collect()
}

pub fn components(c: Complex) -> Vec<ComponentSummary> {
    Graph::from_complex(c).components()
}

pub fn is_admissible_graph(c: Complex) -> AdmissibilityVerdict {
    Graph::from_complex(c).verdict()
}

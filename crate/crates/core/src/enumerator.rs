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

//! Exhaustive sweep over all C(28,8) complexes.
//!
//! Work is split into half-open rank ranges. Each range is walked with the
//! colex successor (the first complex is unranked once), producing a value
//! type [`CountLedger`]. Ledgers merge by componentwise addition, so the
//! result of a full sweep is independent of how the range was split and of
//! how many threads ran it.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{rank_complex, unrank_complex, Complex, NUM_COMPLEXES};
use crate::linalg::{incidence_determinant, incidence_rank};
use crate::taxonomy::{brute_force_four_cycles, ComplexProfile, TaxonomyLabel, NUM_LABELS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SweepPartition {
    start: u64,
    end: u64,
}

impl SweepPartition {
    pub fn new(start: u64, end: u64) -> Result<Self> {
        if start > end || end > NUM_COMPLEXES {
            return Err(Error::InvalidPartition { start, end });
        }
        Ok(SweepPartition { start, end })
    }

    pub fn full() -> Self {
        SweepPartition {
            start: 0,
            end: NUM_COMPLEXES,
        }
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> u64 {
        self.end
    }

    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Splits into `parts` contiguous ranges of near-equal size.
    pub fn split(&self, parts: usize) -> Vec<SweepPartition> {
        let parts = parts.max(1) as u64;
        let len = self.len();
        (0..parts)
            .map(|i| SweepPartition {
                start: self.start + len * i / parts,
                end: self.start + len * (i + 1) / parts,
            })
            .collect()
    }
}

/// Which admissibility oracles run on each complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepMode {
    /// Graph criterion and exact determinant on every complex.
    #[default]
    DualOracle,
    /// Graph criterion only. Not authoritative.
    GraphOnly,
}

/// Multiplicity-weighted tallies and invariant-violation counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepStats {
    pub omitted_point_incidences: u64,
    pub omitted_pair_incidences: u64,
    pub isolated_line_incidences: u64,
    pub with_isolated_line: u64,
    pub with_two_isolated_lines: u64,
    pub with_three_plus_isolated_lines: u64,
    /// Sum over complexes of (#isolated lines x #omitted points).
    pub isolated_line_omitted_point_pairs: u64,
    pub with_isolated_line_and_omitted_point: u64,
    pub isolated_line_and_two_omitted_points: u64,
    pub two_isolated_lines_and_omitted_point: u64,
    pub covering: u64,
    pub proper: u64,
    pub determinants_checked: u64,
    /// Admissible complexes with |det| != 2^(#components).
    pub determinant_power_violations: u64,
    /// Complexes with rank != 8 - (#bipartite components).
    pub rank_identity_violations: u64,
    /// Graph verdict differs from "covered and every component odd-unicyclic".
    pub structure_violations: u64,
    /// Proper complexes with a component that is not unicyclic.
    pub unicyclic_violations: u64,
    /// Complexes hosting more than one tree class.
    pub tree_class_overlaps: u64,
    /// Proper complexes whose brute-force 4-cycles overlap or disagree with
    /// the component analysis.
    pub four_cycle_violations: u64,
}

impl SweepStats {
    fn fields(&self) -> [(&'static str, u64); 19] {
        [
            ("covering", self.covering),
            ("determinant_power_violations", self.determinant_power_violations),
            ("determinants_checked", self.determinants_checked),
            ("four_cycle_violations", self.four_cycle_violations),
            ("isolated_line_and_two_omitted_points", self.isolated_line_and_two_omitted_points),
            ("isolated_line_incidences", self.isolated_line_incidences),
            ("isolated_line_omitted_point_pairs", self.isolated_line_omitted_point_pairs),
            ("omitted_pair_incidences", self.omitted_pair_incidences),
            ("omitted_point_incidences", self.omitted_point_incidences),
            ("proper", self.proper),
            ("rank_identity_violations", self.rank_identity_violations),
            ("structure_violations", self.structure_violations),
            ("tree_class_overlaps", self.tree_class_overlaps),
            ("two_isolated_lines_and_omitted_point", self.two_isolated_lines_and_omitted_point),
            ("unicyclic_violations", self.unicyclic_violations),
            ("with_isolated_line", self.with_isolated_line),
            ("with_isolated_line_and_omitted_point", self.with_isolated_line_and_omitted_point),
            ("with_three_plus_isolated_lines", self.with_three_plus_isolated_lines),
            ("with_two_isolated_lines", self.with_two_isolated_lines),
        ]
    }

    fn merge(&self, o: &Self) -> Self {
        SweepStats {
            omitted_point_incidences: self.omitted_point_incidences + o.omitted_point_incidences,
            omitted_pair_incidences: self.omitted_pair_incidences + o.omitted_pair_incidences,
            isolated_line_incidences: self.isolated_line_incidences + o.isolated_line_incidences,
            with_isolated_line: self.with_isolated_line + o.with_isolated_line,
            with_two_isolated_lines: self.with_two_isolated_lines + o.with_two_isolated_lines,
            with_three_plus_isolated_lines: self.with_three_plus_isolated_lines
                + o.with_three_plus_isolated_lines,
            isolated_line_omitted_point_pairs: self.isolated_line_omitted_point_pairs
                + o.isolated_line_omitted_point_pairs,
            with_isolated_line_and_omitted_point: self.with_isolated_line_and_omitted_point
                + o.with_isolated_line_and_omitted_point,
            isolated_line_and_two_omitted_points: self.isolated_line_and_two_omitted_points
                + o.isolated_line_and_two_omitted_points,
            two_isolated_lines_and_omitted_point: self.two_isolated_lines_and_omitted_point
                + o.two_isolated_lines_and_omitted_point,
            covering: self.covering + o.covering,
            proper: self.proper + o.proper,
            determinants_checked: self.determinants_checked + o.determinants_checked,
            determinant_power_violations: self.determinant_power_violations
                + o.determinant_power_violations,
            rank_identity_violations: self.rank_identity_violations + o.rank_identity_violations,
            structure_violations: self.structure_violations + o.structure_violations,
            unicyclic_violations: self.unicyclic_violations + o.unicyclic_violations,
            tree_class_overlaps: self.tree_class_overlaps + o.tree_class_overlaps,
            four_cycle_violations: self.four_cycle_violations + o.four_cycle_violations,
        }
    }

    pub fn violations(&self) -> u64 {
        self.determinant_power_violations
            + self.rank_identity_violations
            + self.structure_violations
            + self.unicyclic_violations
            + self.tree_class_overlaps
            + self.four_cycle_violations
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountLedger {
    per_label: [u64; NUM_LABELS],
    pub total: u64,
    pub admissible: u64,
    pub oracle_disagreements: u64,
    pub stats: SweepStats,
    /// Rank of the first complex where the oracles disagreed, if any.
    pub first_disagreement: Option<u64>,
}

impl Default for CountLedger {
    fn default() -> Self {
        Self::zero()
    }
}

impl CountLedger {
    pub fn zero() -> Self {
        CountLedger {
            per_label: [0; NUM_LABELS],
            total: 0,
            admissible: 0,
            oracle_disagreements: 0,
            stats: SweepStats::default(),
            first_disagreement: None,
        }
    }

    pub fn count(&self, label: TaxonomyLabel) -> u64 {
        self.per_label[label.index()]
    }

    pub fn per_label(&self) -> impl Iterator<Item = (TaxonomyLabel, u64)> + '_ {
        TaxonomyLabel::ALL.into_iter().map(|l| (l, self.count(l)))
    }

    pub fn label_sum(&self) -> u64 {
        self.per_label.iter().sum()
    }

    pub fn inadmissible(&self) -> u64 {
        self.total - self.admissible
    }

    pub fn merge(&self, other: &CountLedger) -> CountLedger {
        let mut per_label = self.per_label;
        for (a, b) in per_label.iter_mut().zip(other.per_label) {
            *a += b;
        }
        CountLedger {
            per_label,
            total: self.total + other.total,
            admissible: self.admissible + other.admissible,
            oracle_disagreements: self.oracle_disagreements + other.oracle_disagreements,
            stats: self.stats.merge(&other.stats),
            first_disagreement: match (self.first_disagreement, other.first_disagreement) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }

    fn record(&mut self, rank: u64, c: Complex, mode: SweepMode) {
        let profile = ComplexProfile::new(c);
        let label = profile.label();
        self.per_label[label.index()] += 1;
        self.total += 1;

        let graph_ok = profile.graph_admissible();
        if graph_ok {
            self.admissible += 1;
        }
        if graph_ok != label.is_admissible() {
            self.stats.structure_violations += 1;
        }
        if graph_ok != profile.all_odd_unicyclic() {
            self.stats.structure_violations += 1;
        }

        let s = &mut self.stats;
        let omitted = profile.omitted_count() as u64;
        let isolated = profile.isolated_lines() as u64;
        s.omitted_point_incidences += omitted;
        s.omitted_pair_incidences += omitted * omitted.saturating_sub(1) / 2;
        s.isolated_line_incidences += isolated;
        s.with_isolated_line += (isolated >= 1) as u64;
        s.with_two_isolated_lines += (isolated == 2) as u64;
        s.with_three_plus_isolated_lines += (isolated >= 3) as u64;
        s.isolated_line_omitted_point_pairs += isolated * omitted;
        s.with_isolated_line_and_omitted_point += (isolated >= 1 && omitted >= 1) as u64;
        s.isolated_line_and_two_omitted_points += (isolated >= 1 && omitted >= 2) as u64;
        s.two_isolated_lines_and_omitted_point += (isolated >= 2 && omitted >= 1) as u64;
        s.tree_class_overlaps += (profile.tree_class_count() > 1) as u64;
        if omitted == 0 {
            s.covering += 1;
            if profile.is_proper() {
                s.proper += 1;
                if !profile.all_unicyclic() {
                    s.unicyclic_violations += 1;
                }
                check_four_cycles(&profile, s);
            }
        }

        if mode == SweepMode::DualOracle {
            s.determinants_checked += 1;
            let det = incidence_determinant(c);
            if (det != 0) != graph_ok {
                self.oracle_disagreements += 1;
                if self.first_disagreement.is_none() {
                    self.first_disagreement = Some(rank);
                }
            }
            if graph_ok {
                let expected = 1i64 << profile.components.len();
                if det.abs() != expected {
                    s.determinant_power_violations += 1;
                }
            } else {
                // rank 8 is implied by det != 0 and checked by the oracle comparison
                let rank = incidence_rank(c);
                if rank + profile.bipartite_components != 8 {
                    s.rank_identity_violations += 1;
                }
            }
        }
    }

    /// Sorted-key JSON object.
    pub fn to_json(&self) -> Value {
        let labels: BTreeMap<&str, u64> = self.per_label().map(|(l, n)| (l.name(), n)).collect();
        let stats: BTreeMap<&str, u64> = self.stats.fields().into_iter().collect();
        json!({
            "admissible": self.admissible,
            "first_disagreement": self.first_disagreement,
            "inadmissible": self.inadmissible(),
            "oracle_disagreements": self.oracle_disagreements,
            "per_label": labels,
            "stats": stats,
            "total": self.total,
        })
    }

    /// `(key, value)` rows sorted by key, for the delimited formats.
    pub fn rows(&self) -> Vec<(String, String)> {
        let mut rows = vec![
            ("admissible".to_string(), self.admissible.to_string()),
            (
                "first_disagreement".to_string(),
                self.first_disagreement.map_or(String::new(), |r| r.to_string()),
            ),
            ("inadmissible".to_string(), self.inadmissible().to_string()),
            ("oracle_disagreements".to_string(), self.oracle_disagreements.to_string()),
            ("total".to_string(), self.total.to_string()),
        ];
        rows.extend(
            self.per_label()
                .map(|(l, n)| (format!("per_label.{}", l.name()), n.to_string())),
        );
        rows.extend(
            self.stats
                .fields()
                .into_iter()
                .map(|(k, v)| (format!("stats.{k}"), v.to_string())),
        );
        rows.sort();
        rows
    }
}

fn check_four_cycles(profile: &ComplexProfile, s: &mut SweepStats) {
    let from_components: Vec<u8> = profile
        .components
        .iter()
        .filter(|c| c.cycle_length == Some(4))
        .map(|c| c.cycle_vertices as u8)
        .collect();
    if from_components.is_empty() {
        return;
    }
    let found = brute_force_four_cycles(profile.complex);
    let disjoint = found
        .iter()
        .enumerate()
        .all(|(i, a)| found[i + 1..].iter().all(|b| a & b == 0));
    let mut sorted = from_components;
    sorted.sort_unstable();
    if !disjoint || found != sorted {
        s.four_cycle_violations += 1;
    }
}

/// Classifies every complex with rank in `partition`.
pub fn sweep(partition: SweepPartition, mode: SweepMode) -> CountLedger {
    let mut ledger = CountLedger::zero();
    if partition.is_empty() {
        return ledger;
    }
    let mut c = unrank_complex(partition.start).expect("start below NUM_COMPLEXES");
    let mut rank = partition.start;
    loop {
        ledger.record(rank, c, mode);
        rank += 1;
        if rank == partition.end {
            break;
        }
        c = c.successor().expect("rank below NUM_COMPLEXES has a successor");
    }
    debug_assert_eq!(rank_complex(c) + 1, partition.end);
    ledger
}

pub fn merge(a: &CountLedger, b: &CountLedger) -> CountLedger {
    a.merge(b)
}

/// Sweeps `partition` on `jobs` threads. Chunks are merged in rank order, so
/// the result does not depend on scheduling.
pub fn sweep_parallel(partition: SweepPartition, jobs: usize, mode: SweepMode) -> CountLedger {
    let jobs = jobs.max(1);
    if jobs == 1 {
        return sweep(partition, mode);
    }
    let chunks = partition.split(jobs * 4);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut results: Vec<Option<CountLedger>> = vec![None; chunks.len()];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(&chunk) = chunks.get(i) else {
                            return done;
                        };
                        done.push((i, sweep(chunk, mode)));
                    }
                })
            })
            .collect();
        for h in handles {
            for (i, ledger) in h.join().expect("sweep worker panicked") {
                results[i] = Some(ledger);
            }
        }
    });
    results
        .into_iter()
        .map(|r| r.expect("every chunk swept"))
        .fold(CountLedger::zero(), |acc, l| acc.merge(&l))
}

/// Full dual-oracle sweep; returns the number of admissible complexes.
pub fn count_admissible() -> u64 {
    full_sweep(1).admissible
}

pub fn full_sweep(jobs: usize) -> CountLedger {
    sweep_parallel(SweepPartition::full(), jobs, SweepMode::DualOracle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_partition_is_zero() {
        let p = SweepPartition::new(100, 100).unwrap();
        assert_eq!(sweep(p, SweepMode::DualOracle), CountLedger::zero());
    }

    #[test]
    fn invalid_partitions() {
        assert!(SweepPartition::new(5, 4).is_err());
        assert!(SweepPartition::new(0, NUM_COMPLEXES + 1).is_err());
    }

    #[test]
    fn split_covers_range() {
        let p = SweepPartition::new(10, 1_000_003).unwrap();
        let parts = p.split(7);
        assert_eq!(parts.first().unwrap().start(), 10);
        assert_eq!(parts.last().unwrap().end(), 1_000_003);
        for w in parts.windows(2) {
            assert_eq!(w[0].end(), w[1].start());
        }
    }

    #[test]
    fn merge_identity_and_commutativity() {
        let a = sweep(SweepPartition::new(0, 5_000).unwrap(), SweepMode::DualOracle);
        let b = sweep(SweepPartition::new(2_000_000, 2_004_000).unwrap(), SweepMode::DualOracle);
        assert_eq!(merge(&a, &CountLedger::zero()), a);
        assert_eq!(merge(&a, &b), merge(&b, &a));
    }

    #[test]
    fn partition_invariance_on_subrange() {
        let whole = SweepPartition::new(1_500_000, 1_560_000).unwrap();
        let direct = sweep(whole, SweepMode::DualOracle);
        let pieces = whole
            .split(5)
            .into_iter()
            .map(|p| sweep(p, SweepMode::DualOracle))
            .fold(CountLedger::zero(), |acc, l| acc.merge(&l));
        assert_eq!(direct, pieces);
        assert_eq!(sweep_parallel(whole, 3, SweepMode::DualOracle), direct);
        assert_eq!(direct.total, 60_000);
        assert_eq!(direct.label_sum(), 60_000);
        assert_eq!(direct.oracle_disagreements, 0);
    }

    #[test]
    fn graph_only_skips_determinants() {
        let p = SweepPartition::new(0, 1_000).unwrap();
        let fast = sweep(p, SweepMode::GraphOnly);
        let full = sweep(p, SweepMode::DualOracle);
        assert_eq!(fast.stats.determinants_checked, 0);
        assert_eq!(full.stats.determinants_checked, 1_000);
        assert_eq!(fast.admissible, full.admissible);
    }

    #[test]
    fn json_keys_sorted() {
        let l = sweep(SweepPartition::new(0, 100).unwrap(), SweepMode::DualOracle);
        let text = serde_json::to_string(&l.to_json()).unwrap();
        let a = text.find("\"admissible\"").unwrap();
        let t = text.find("\"total\"").unwrap();
        assert!(a < t);
        let rows = l.rows();
        let mut sorted = rows.clone();
        sorted.sort();
        assert_eq!(rows, sorted);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn merge_is_associative(x in 0u64..3_000_000, y in 0u64..3_000_000, z in 0u64..3_000_000) {
            let l = |s: u64| sweep(SweepPartition::new(s, s + 300).unwrap(), SweepMode::DualOracle);
            let (a, b, c) = (l(x), l(y), l(z));
            prop_assert_eq!(a.merge(&b).merge(&c), a.merge(&b.merge(&c)));
        }
    }
}

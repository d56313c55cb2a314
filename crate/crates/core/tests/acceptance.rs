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


//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. All tolerances are exact.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use admissible::enumerator::{sweep_parallel, CountLedger, SweepMode, SweepPartition};
use admissible::scrapbook::{build_scrapbook, parse_cplx};
use admissible::taxonomy::{formulas::formula_value, verify_lemmas, TaxonomyLabel as L};
use admissible::transform::round_trip_suite;
use admissible::{classify, NUM_COMPLEXES};

const SEED: u64 = 0x5eed_0008;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn full(jobs: usize) -> CountLedger {
    sweep_parallel(SweepPartition::full(), jobs, SweepMode::DualOracle)
}

fn criterion_1(l: &CountLedger) -> Outcome {
    outcome(l.total == 3_108_105, format!("total = {}", l.total))
}

fn criterion_2(runs: &[(usize, CountLedger)]) -> Outcome {
    let json: Vec<String> = runs.iter().map(|(_, l)| l.to_json().to_string()).collect();
    let identical = json.windows(2).all(|w| w[0] == w[1]);
    let counts: Vec<String> = runs
        .iter()
        .map(|(j, l)| format!("jobs={j}:{}", l.admissible))
        .collect();
    outcome(
        identical && runs.iter().all(|(_, l)| l.admissible == 937_440),
        format!("admissible {}; ledgers identical = {identical}", counts.join(" ")),
    )
}

fn criterion_3(l: &CountLedger) -> Outcome {
    outcome(
        l.oracle_disagreements == 0 && l.stats.determinants_checked == NUM_COMPLEXES,
        format!(
            "disagreements = {}, determinants evaluated = {}",
            l.oracle_disagreements, l.stats.determinants_checked
        ),
    )
}

/// (name, sweep statistic, reference value, formula id, formula scale)
fn lemma_table(l: &CountLedger) -> Vec<(&'static str, u64, u64, Option<&'static str>, u64)> {
    let s = &l.stats;
    let n = |x: L| l.count(x);
    vec![
        ("omitted-point incidences", s.omitted_point_incidences, 1_627_920, Some("omitted_point_incidences"), 1),
        ("omitted-pair incidences", s.omitted_pair_incidences, 180_180, Some("omitted_pair_incidences"), 1),
        ("exactly three omitted", n(L::OmitsPoints(3)), 2_520, Some("omits_three_points"), 1),
        (
            "distinct omitting complexes",
            n(L::OmitsPoints(1)) + n(L::OmitsPoints(2)) + n(L::OmitsPoints(3)),
            1_450_260,
            Some("omits_some_point"),
            1,
        ),
        ("isolated-line incidences", s.isolated_line_incidences, 180_180, Some("isolated_line_incidences"), 1),
        ("two isolated lines", s.with_two_isolated_lines, 210, Some("two_isolated_lines"), 1),
        ("distinct isolated-line complexes", s.with_isolated_line, 179_970, Some("some_isolated_line"), 1),
        (
            "isolated line + omitted point",
            s.with_isolated_line_and_omitted_point,
            20_160,
            Some("isolated_line_and_omitted_point"),
            1,
        ),
        ("isolated line + two omitted points", s.isolated_line_and_two_omitted_points, 0, None, 1),
        ("two isolated lines + omitted point", s.two_isolated_lines_and_omitted_point, 0, None, 1),
        (
            "covering with tree",
            n(L::TreeIsolatedLine) + n(L::Tree3Point) + n(L::Tree4Point),
            200_970,
            Some("covering_with_tree"),
            1,
        ),
        ("TREE_ISOLATED_LINE", n(L::TreeIsolatedLine), 159_810, Some("covering_isolated_line"), 1),
        ("TREE_3POINT", n(L::Tree3Point), 34_440, Some("covering_three_point_tree"), 1),
        ("TREE_4POINT", n(L::Tree4Point), 6_720, Some("covering_four_point_tree"), 1),
        ("proper", s.proper, 1_456_875, Some("proper"), 1),
        ("CYCLE_8", n(L::Cycle8), 2_520, Some("eight_cycle"), 1),
        ("CYCLE_6", n(L::Cycle6), 80_640, Some("six_cycle"), 1),
        ("TWO_4CYCLES", n(L::TwoFourCycles), 315, Some("two_four_cycles"), 1),
        (
            "UNIQUE_4CYCLE_DISCONNECTED",
            n(L::UniqueFourCycleDisconnected),
            5_880,
            Some("unique_four_cycle_disconnected"),
            1,
        ),
        (
            "UNIQUE_4CYCLE_CONNECTED_1",
            n(L::UniqueFourCycleConnected(1)),
            105_000,
            Some("fixed_four_cycle_valence_1"),
            210,
        ),
        (
            "UNIQUE_4CYCLE_CONNECTED_2",
            n(L::UniqueFourCycleConnected(2)),
            229_320,
            Some("fixed_four_cycle_valence_2"),
            210,
        ),
        (
            "UNIQUE_4CYCLE_CONNECTED_3",
            n(L::UniqueFourCycleConnected(3)),
            90_720,
            Some("fixed_four_cycle_valence_3"),
            210,
        ),
        (
            "UNIQUE_4CYCLE_CONNECTED_4",
            n(L::UniqueFourCycleConnected(4)),
            5_040,
            Some("fixed_four_cycle_valence_4"),
            210,
        ),
    ]
}

fn criterion_4(l: &CountLedger) -> Outcome {
    let mut bad = Vec::new();
    let table = lemma_table(l);
    for &(name, observed, reference, id, scale) in &table {
        let formula = id.map(|id| formula_value(id).expect("known formula") * scale);
        if observed != reference || formula.is_some_and(|f| f != reference) {
            bad.push(format!("{name}: sweep {observed}, reference {reference}, formula {formula:?}"));
        }
    }
    let report = verify_lemmas(l);
    bad.extend(report.failures().map(|c| format!("lemma check {} failed", c.id)));
    if bad.is_empty() {
        outcome(true, format!("{} rows, sweep = reference = formula", table.len()))
    } else {
        outcome(false, bad.join("; "))
    }
}

fn criterion_5(l: &CountLedger) -> Outcome {
    let (one, two) = (l.count(L::OmitsPoints(1)), l.count(L::OmitsPoints(2)));
    // inclusion-exclusion from the three omitted-point counts
    let n3 = formula_value("omits_three_points").unwrap();
    let n2 = formula_value("omitted_pair_incidences").unwrap() - 3 * n3;
    let n1 = formula_value("omitted_point_incidences").unwrap() - 2 * n2 - 3 * n3;
    outcome(
        one == 1_275_120 && two == 172_620 && n1 == one && n2 == two,
        format!("OMITS_POINTS_1 = {one}, OMITS_POINTS_2 = {two}"),
    )
}

fn criterion_6() -> (Outcome, Outcome) {
    let r = round_trip_suite(SEED, 1000, 1000, 10_000);
    let six = outcome(
        r.round_trip_failures == 0 && r.kernel_failures == 0 && r.cycle8_kernel_alternating,
        format!(
            "{} round trips ({} failures), {} kernels ({} failures), 8-cycle kernel alternating = {}",
            r.admissible_sampled,
            r.round_trip_failures,
            r.inadmissible_sampled,
            r.kernel_failures,
            r.cycle8_kernel_alternating
        ),
    );
    let dims = outcome(
        r.kernel_dim_failures == 0,
        format!("kernel dimension checked on {} ({} failures)", r.kernel_dim_sampled, r.kernel_dim_failures),
    );
    (six, dims)
}

fn criterion_7(l: &CountLedger, dims: Outcome) -> Outcome {
    let partition = l.label_sum() == l.total;
    let det = l.stats.determinant_power_violations;
    let violations = l.stats.violations();
    outcome(
        partition && det == 0 && violations == 0 && dims.passed,
        format!(
            "labels partition = {partition}, |det| = 2^components violations = {det}, \
             all invariant violations = {violations}; {}",
            dims.detail
        ),
    )
}

fn snapshot(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).expect("readable dir") {
            let path = entry.expect("dir entry").path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let key = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(key, fs::read(&path).expect("readable file"));
            }
        }
    }
    out
}

fn criterion_8(l: &CountLedger) -> Outcome {
    let a = tempfile::tempdir().expect("tempdir");
    let b = tempfile::tempdir().expect("tempdir");
    build_scrapbook(a.path(), 3).expect("first build");
    build_scrapbook(b.path(), 3).expect("second build");
    let (sa, sb) = (snapshot(a.path()), snapshot(b.path()));
    let identical = sa == sb;

    let mut problems = Vec::new();
    for label in L::ALL {
        let expected = l.count(label).min(3) as usize;
        let cplx: Vec<&String> = sa
            .keys()
            .filter(|k| k.starts_with(&format!("{}/", label.name())) && k.ends_with(".cplx"))
            .collect();
        if cplx.len() != expected || expected == 0 {
            problems.push(format!("{label}: {} entries", cplx.len()));
        }
        for key in cplx {
            let doc = parse_cplx(std::str::from_utf8(&sa[key]).unwrap()).expect("parses");
            if classify(doc.complex) != label || doc.label != Some(label) {
                problems.push(format!("{key} does not re-classify"));
            }
            for ext in ["dot", "tex"] {
                if !sa.contains_key(&key.replace(".cplx", &format!(".{ext}"))) {
                    problems.push(format!("{key}: missing .{ext}"));
                }
            }
        }
    }
    let index = String::from_utf8(sa["index.tsv"].clone()).unwrap();
    let populations: BTreeMap<&str, u64> = index
        .lines()
        .skip(1)
        .map(|row| {
            let f: Vec<&str> = row.split('\t').collect();
            (f[0], f[1].parse().unwrap())
        })
        .collect();
    for label in L::ALL {
        if populations.get(label.name()) != Some(&l.count(label)) {
            problems.push(format!("index population for {label}"));
        }
    }
    outcome(
        identical && problems.is_empty(),
        format!(
            "{} files, {} labels, builds identical = {identical}{}",
            sa.len(),
            populations.len(),
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
        ),
    )
}

fn main() -> ExitCode {
    let mut runs = Vec::new();
    for jobs in [1, 2, 8, 1, 8] {
        runs.push((jobs, full(jobs)));
    }
    let ledger = &runs[0].1;
    let (six, dims) = criterion_6();
    let results = [
        criterion_1(ledger),
        criterion_2(&runs),
        criterion_3(ledger),
        criterion_4(ledger),
        criterion_5(ledger),
        six,
        criterion_7(ledger, dims),
        criterion_8(ledger),
    ];
    let mut all = true;
    for (i, r) in results.iter().enumerate() {
        println!("{} criterion {}: {}", if r.passed { "PASS" } else { "FAIL" }, i + 1, r.detail);
        all &= r.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

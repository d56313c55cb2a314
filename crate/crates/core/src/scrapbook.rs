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

//! Representative complexes for every class, exported as Graphviz, TikZ and
//! a plain line-oriented description.
//!
//! Representatives are the smallest colex ranks carrying a label, so the
//! whole output tree is a pure function of `k`.
//!
//! The `.cplx` description is
//!
//! ```text
//! points: 8
//! line: 0 1
//! ...            (one per line, ascending line index)
//! label: CYCLE_8
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{rank_complex, Complex, NUM_COMPLEXES, NUM_POINTS};
use crate::taxonomy::{classify, TaxonomyLabel, NUM_LABELS};

pub type Layout = [(f64, f64); NUM_POINTS];

/// Two rows of four, points 0..=3 below and 4..=7 above.
pub const DEFAULT_LAYOUT: Layout = [
    (0.0, 0.0),
    (2.0, 0.0),
    (4.0, 0.0),
    (6.0, 0.0),
    (0.0, 2.0),
    (2.0, 2.0),
    (4.0, 2.0),
    (6.0, 2.0),
];

#[derive(Debug, Clone, PartialEq)]
pub struct ScrapbookEntry {
    pub label: TaxonomyLabel,
    pub complex: Complex,
    pub layout_hint: Option<Layout>,
    pub caption: String,
}

impl ScrapbookEntry {
    pub fn new(complex: Complex) -> Self {
        let label = classify(complex);
        ScrapbookEntry {
            label,
            complex,
            layout_hint: None,
            caption: format!("{} (rank {})", label.description(), rank_complex(complex)),
        }
    }

    pub fn with_layout(mut self, layout: Layout) -> Self {
        self.layout_hint = Some(layout);
        self
    }

    pub fn rank(&self) -> u64 {
        rank_complex(self.complex)
    }
}

fn for_each_complex(mut f: impl FnMut(Complex) -> bool) {
    let mut c = Complex::from_mask_unchecked(0xff);
    loop {
        if !f(c) {
            return;
        }
        match c.successor() {
            Some(next) => c = next,
            None => return,
        }
    }
}

/// The first `k` complexes in rank order carrying `label`.
pub fn representative(label: TaxonomyLabel, k: usize) -> Result<Vec<ScrapbookEntry>> {
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "representative count",
            value: 0,
            bound: 0,
        });
    }
    let mut out = Vec::with_capacity(k);
    for_each_complex(|c| {
        if classify(c) == label {
            out.push(ScrapbookEntry::new(c));
        }
        out.len() < k
    });
    if out.len() < k {
        return Err(Error::InsufficientPopulation {
            label,
            population: out.len() as u64,
            requested: k,
        });
    }
    Ok(out)
}

/// Populations of every label and the first `k` representatives of each, in
/// one pass.
pub fn census(k: usize) -> ([u64; NUM_LABELS], Vec<Vec<ScrapbookEntry>>) {
    let mut populations = [0u64; NUM_LABELS];
    let mut reps: Vec<Vec<ScrapbookEntry>> = vec![Vec::new(); NUM_LABELS];
    let mut seen = 0u64;
    for_each_complex(|c| {
        let i = classify(c).index();
        populations[i] += 1;
        if reps[i].len() < k {
            reps[i].push(ScrapbookEntry::new(c));
        }
        seen += 1;
        true
    });
    debug_assert_eq!(seen, NUM_COMPLEXES);
    (populations, reps)
}

pub fn export_dot(e: &ScrapbookEntry) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "// label: {}", e.label);
    let _ = writeln!(s, "// rank: {}", e.rank());
    let _ = writeln!(s, "// {}", e.caption);
    s.push_str("graph complex {\n");
    s.push_str("    node [shape=circle, style=filled, fillcolor=gray70, label=\"\", width=0.25];\n");
    for p in 0..NUM_POINTS {
        match e.layout_hint {
            Some(layout) => {
                let (x, y) = layout[p];
                let _ = writeln!(s, "    p{p} [pos=\"{x},{y}!\"];");
            }
            None => {
                let _ = writeln!(s, "    p{p};");
            }
        }
    }
    for (a, b) in e.complex.pairs() {
        let _ = writeln!(s, "    p{a} -- p{b};");
    }
    s.push_str("}\n");
    s
}

pub fn export_tikz(e: &ScrapbookEntry) -> String {
    let layout = e.layout_hint.unwrap_or(DEFAULT_LAYOUT);
    let mut s = String::new();
    let _ = writeln!(s, "% label: {}", e.label);
    let _ = writeln!(s, "% rank: {}", e.rank());
    let _ = writeln!(s, "% {}", e.caption);
    s.push_str("\\begin{tikzpicture}\n");
    for (p, (x, y)) in layout.iter().enumerate() {
        let _ = writeln!(
            s,
            "  \\node[circle, ball color=gray!60, inner sep=3pt] (p{p}) at ({x},{y}) {{}};"
        );
    }
    for (a, b) in e.complex.pairs() {
        let _ = writeln!(s, "  \\draw (p{a}) -- (p{b});");
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}

pub fn export_cplx(e: &ScrapbookEntry) -> String {
    let mut s = format!("points: {NUM_POINTS}\n");
    for (a, b) in e.complex.pairs() {
        let _ = writeln!(s, "line: {a} {b}");
    }
    let _ = writeln!(s, "label: {}", e.label);
    s
}

/// A parsed `.cplx` description. The label line is optional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CplxDocument {
    pub complex: Complex,
    pub label: Option<TaxonomyLabel>,
}

pub fn parse_cplx(text: &str) -> Result<CplxDocument> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut points = None;
    let mut pairs = Vec::new();
    let mut label = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, format!("expected `key: value`, got {line:?}")))?;
        let value = value.trim();
        match key.trim() {
            "points" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad point count {value:?}")))?;
                if n != NUM_POINTS {
                    return Err(err(line_no, format!("expected 8 points, got {n}")));
                }
                points = Some(n);
            }
            "line" => {
                let ends: Vec<&str> = value.split_whitespace().collect();
                let [a, b] = ends[..] else {
                    return Err(err(line_no, format!("expected two endpoints, got {value:?}")));
                };
                let parse = |t: &str| {
                    t.parse::<u8>()
                        .map_err(|_| err(line_no, format!("bad endpoint {t:?}")))
                };
                pairs.push((parse(a)?, parse(b)?, line_no));
            }
            "label" => {
                label = Some(
                    value
                        .parse::<TaxonomyLabel>()
                        .map_err(|_| err(line_no, format!("unknown label {value:?}")))?,
                );
            }
            other => return Err(err(line_no, format!("unknown key {other:?}"))),
        }
    }
    if points.is_none() {
        return Err(err(last_line.max(1), "missing `points: 8` line".into()));
    }
    // validate pair by pair so errors carry the offending line number
    let mut seen = Vec::new();
    for &(a, b, line_no) in &pairs {
        let l = crate::geometry::line_index(
            crate::geometry::PointId::new(a).map_err(|e| err(line_no, e.to_string()))?,
            crate::geometry::PointId::new(b).map_err(|e| err(line_no, e.to_string()))?,
        )
        .map_err(|e| err(line_no, e.to_string()))?;
        if seen.contains(&l) {
            return Err(err(line_no, format!("line {a} {b} appears more than once")));
        }
        seen.push(l);
    }
    let complex =
        Complex::from_lines(seen).map_err(|e| err(last_line.max(1), e.to_string()))?;
    Ok(CplxDocument { complex, label })
}

/// Parses the inline syntax `"0 1,1 2,..."`.
pub fn parse_inline(text: &str) -> Result<Complex> {
    let pairs = text
        .split(',')
        .enumerate()
        .map(|(i, part)| {
            let ends: Vec<&str> = part.split_whitespace().collect();
            let [a, b] = ends[..] else {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("pair {} ({part:?}) must have two endpoints", i + 1),
                });
            };
            let p = |t: &str| {
                t.parse::<u8>().map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("bad endpoint {t:?}"),
                })
            };
            Ok((p(a)?, p(b)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Complex::from_pairs(&pairs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrapbookSummary {
    pub populations: Vec<(TaxonomyLabel, u64)>,
    pub emitted: Vec<(TaxonomyLabel, usize)>,
    /// Labels whose population is below the requested count.
    pub truncated: Vec<(TaxonomyLabel, u64)>,
}

pub fn index_tsv(summary: &ScrapbookSummary) -> String {
    let mut s = String::from("label\tpopulation\trepresentatives\n");
    let mut rows: Vec<(TaxonomyLabel, u64, usize)> = summary
        .populations
        .iter()
        .zip(&summary.emitted)
        .map(|(&(l, p), &(_, e))| (l, p, e))
        .collect();
    rows.sort_by_key(|(l, _, _)| l.name());
    for (l, p, e) in rows {
        let _ = writeln!(s, "{l}\t{p}\t{e}");
    }
    s
}

/// Writes `<label>/<rank>.{dot,tex,cplx}` for the first `k_per_label`
/// representatives of every label, plus `index.tsv`.
pub fn build_scrapbook(out_dir: &Path, k_per_label: usize) -> Result<ScrapbookSummary> {
    if k_per_label == 0 {
        return Err(Error::OutOfRange {
            what: "representatives per label",
            value: 0,
            bound: 0,
        });
    }
    let (populations, reps) = census(k_per_label);
    fs::create_dir_all(out_dir)?;
    let mut summary = ScrapbookSummary {
        populations: Vec::new(),
        emitted: Vec::new(),
        truncated: Vec::new(),
    };
    for label in TaxonomyLabel::ALL {
        let i = label.index();
        let dir = out_dir.join(label.name());
        fs::create_dir_all(&dir)?;
        for e in &reps[i] {
            let stem = e.rank().to_string();
            fs::write(dir.join(format!("{stem}.dot")), export_dot(e))?;
            fs::write(dir.join(format!("{stem}.tex")), export_tikz(e))?;
            fs::write(dir.join(format!("{stem}.cplx")), export_cplx(e))?;
        }
        summary.populations.push((label, populations[i]));
        summary.emitted.push((label, reps[i].len()));
        if (populations[i] as usize) < k_per_label {
            summary.truncated.push((label, populations[i]));
        }
    }
    fs::write(out_dir.join("index.tsv"), index_tsv(&summary))?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> ScrapbookEntry {
        ScrapbookEntry::new(
            Complex::from_pairs(&[(0, 1), (1, 2), (0, 2), (2, 3), (4, 5), (5, 6), (4, 6), (6, 7)])
                .unwrap(),
        )
    }

    #[test]
    fn dot_has_edges() {
        let e = two_triangles();
        let dot = export_dot(&e);
        assert!(dot.contains("p0 -- p1;"));
        assert_eq!(dot.matches(" -- ").count(), 8);
        assert_eq!(dot, export_dot(&e));
        assert!(dot.starts_with("// label: ADMISSIBLE\n"));
    }

    #[test]
    fn tikz_echoes_layout() {
        let mut layout = DEFAULT_LAYOUT;
        layout[3] = (2.3, 2.0);
        layout[4] = (3.2, 3.0);
        let e = two_triangles().with_layout(layout);
        let tex = export_tikz(&e);
        assert!(tex.contains("(p3) at (2.3,2)"));
        assert!(tex.contains("(p4) at (3.2,3)"));
        assert_eq!(tex.matches("\\draw").count(), 8);
        assert!(tex.contains("\\begin{tikzpicture}") && tex.ends_with("\\end{tikzpicture}\n"));
    }

    #[test]
    fn cplx_round_trip() {
        let e = two_triangles();
        let doc = parse_cplx(&export_cplx(&e)).unwrap();
        assert_eq!(doc.complex, e.complex);
        assert_eq!(doc.label, Some(TaxonomyLabel::Admissible));
    }

    #[test]
    fn cplx_errors_carry_line_numbers() {
        let bad = "points: 8\nline: 0 1\nline: 0 x\n";
        assert_eq!(
            parse_cplx(bad).unwrap_err(),
            Error::Parse {
                line: 3,
                message: "bad endpoint \"x\"".into()
            }
        );
        let dup = "points: 8\nline: 0 1\nline: 1 0\n";
        assert!(matches!(parse_cplx(dup), Err(Error::Parse { line: 3, .. })));
        let range = "points: 8\nline: 0 9\n";
        assert!(matches!(parse_cplx(range), Err(Error::Parse { line: 2, .. })));
        let short = "points: 8\nline: 0 1\n";
        assert!(matches!(parse_cplx(short), Err(Error::Parse { .. })));
        assert!(matches!(parse_cplx("line: 0 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_cplx("points: 8\nfoo: 1"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn inline_syntax() {
        let c = parse_inline("0 1,1 2,2 3,3 4,4 5,5 6,6 7,0 7").unwrap();
        assert_eq!(classify(c), TaxonomyLabel::Cycle8);
        assert!(parse_inline("0 1,1 2").is_err());
        assert!(parse_inline("0 1,0 1,2 3,3 4,4 5,5 6,6 7,0 7").is_err());
        assert!(parse_inline("0 1 2,1 2").is_err());
    }

    #[test]
    fn representatives_classify_correctly() {
        let reps = representative(TaxonomyLabel::Cycle8, 2).unwrap();
        assert_eq!(reps.len(), 2);
        assert!(reps[0].rank() < reps[1].rank());
        for r in &reps {
            assert_eq!(classify(r.complex), TaxonomyLabel::Cycle8);
        }
        let adm = representative(TaxonomyLabel::Admissible, 1).unwrap();
        assert_ne!(crate::linalg::incidence_determinant(adm[0].complex), 0);
    }

    #[test]
    fn representative_zero_is_error() {
        assert!(representative(TaxonomyLabel::Admissible, 0).is_err());
    }
}

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

//! Points, lines and line complexes of the 8-point space.
//!
//! A point is a 3-bit vector, a line is an unordered pair of distinct points
//! (every pair is a line), and a line complex is a set of exactly 8 lines.
//! Lines are numbered in colexicographic order of their endpoint pairs, so
//! `{i, j}` with `i < j` has index `j(j-1)/2 + i`. A complex is stored as a
//! 28-bit mask over line indices; colex order of 8-subsets coincides with the
//! numeric order of these masks, which is what makes the sweep cheap.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;

pub const NUM_POINTS: usize = 8;
pub const NUM_LINES: usize = 28;
pub const LINES_PER_COMPLEX: usize = 8;
/// C(28, 8).
pub const NUM_COMPLEXES: u64 = 3_108_105;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(u8);

impl PointId {
    pub fn new(value: u8) -> Result<Self> {
        if (value as usize) < NUM_POINTS {
            Ok(PointId(value))
        } else {
            Err(Error::OutOfRange {
                what: "point",
                value: value as u64,
                bound: NUM_POINTS as u64,
            })
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Coordinates in F_2^3, bit `i` is coordinate `i`.
    pub fn coordinates(self) -> [u8; 3] {
        [self.0 & 1, (self.0 >> 1) & 1, (self.0 >> 2) & 1]
    }

    pub fn all() -> impl Iterator<Item = PointId> {
        (0..NUM_POINTS as u8).map(PointId)
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineId(u8);

/// Endpoints of every line, indexed by colex rank.
const ENDPOINTS: [(u8, u8); NUM_LINES] = {
    let mut table = [(0u8, 0u8); NUM_LINES];
    let mut j = 1;
    while j < NUM_POINTS {
        let mut i = 0;
        while i < j {
            table[j * (j - 1) / 2 + i] = (i as u8, j as u8);
            i += 1;
        }
        j += 1;
    }
    table
};

impl LineId {
    pub fn new(value: u8) -> Result<Self> {
        if (value as usize) < NUM_LINES {
            Ok(LineId(value))
        } else {
            Err(Error::OutOfRange {
                what: "line",
                value: value as u64,
                bound: NUM_LINES as u64,
            })
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn endpoints(self) -> (PointId, PointId) {
        let (a, b) = ENDPOINTS[self.0 as usize];
        (PointId(a), PointId(b))
    }

    pub fn all() -> impl Iterator<Item = LineId> {
        (0..NUM_LINES as u8).map(LineId)
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.endpoints();
        write!(f, "{{{a},{b}}}")
    }
}

/// Colex index of the line through `a` and `b`.
pub fn line_index(a: PointId, b: PointId) -> Result<LineId> {
    let (lo, hi) = match a.0.cmp(&b.0) {
        std::cmp::Ordering::Less => (a.0, b.0),
        std::cmp::Ordering::Greater => (b.0, a.0),
        std::cmp::Ordering::Equal => return Err(Error::DegenerateLine(a.0)),
    };
    Ok(LineId(hi * (hi - 1) / 2 + lo))
}

/// Endpoints of line `l` in ascending order.
pub fn line_endpoints(l: u8) -> Result<(PointId, PointId)> {
    Ok(LineId::new(l)?.endpoints())
}

/// A set of exactly 8 distinct lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Complex(u32);

impl Complex {
    pub fn from_mask(mask: u32) -> Result<Self> {
        if mask >> NUM_LINES != 0 {
            return Err(Error::OutOfRange {
                what: "line mask",
                value: mask as u64,
                bound: 1 << NUM_LINES,
            });
        }
        let n = mask.count_ones() as usize;
        if n != LINES_PER_COMPLEX {
            return Err(Error::WrongLineCount(n));
        }
        Ok(Complex(mask))
    }

    /// Caller guarantees the mask has exactly 8 of the low 28 bits set.
    pub(crate) fn from_mask_unchecked(mask: u32) -> Self {
        debug_assert!(mask >> NUM_LINES == 0 && mask.count_ones() == 8);
        Complex(mask)
    }

    pub fn from_lines<I: IntoIterator<Item = LineId>>(lines: I) -> Result<Self> {
        let mut mask = 0u32;
        let mut n = 0usize;
        for l in lines {
            let bit = 1u32 << l.0;
            if mask & bit != 0 {
                let (a, b) = l.endpoints();
                return Err(Error::DuplicateLine(a.0, b.0));
            }
            mask |= bit;
            n += 1;
        }
        if n != LINES_PER_COMPLEX {
            return Err(Error::WrongLineCount(n));
        }
        Ok(Complex(mask))
    }

    /// Builds a complex from raw endpoint pairs, validating every pair.
    pub fn from_pairs(pairs: &[(u8, u8)]) -> Result<Self> {
        let lines = pairs
            .iter()
            .map(|&(a, b)| line_index(PointId::new(a)?, PointId::new(b)?))
            .collect::<Result<Vec<_>>>()?;
        Self::from_lines(lines)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    /// Lines in ascending index order.
    pub fn lines(self) -> impl Iterator<Item = LineId> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let l = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            Some(LineId(l))
        })
    }

    pub fn pairs(self) -> Vec<(u8, u8)> {
        self.lines()
            .map(|l| {
                let (a, b) = l.endpoints();
                (a.0, b.0)
            })
            .collect()
    }

    pub fn contains(self, l: LineId) -> bool {
        self.0 & (1 << l.0) != 0
    }

    /// Adjacency masks of the complex viewed as a graph on the 8 points.
    pub fn adjacency(self) -> [u8; NUM_POINTS] {
        let mut adj = [0u8; NUM_POINTS];
        for l in self.lines() {
            let (a, b) = ENDPOINTS[l.0 as usize];
            adj[a as usize] |= 1 << b;
            adj[b as usize] |= 1 << a;
        }
        adj
    }

    pub fn successor(self) -> Option<Complex> {
        let next = colex_successor(self.0);
        (next >> NUM_LINES == 0).then_some(Complex(next))
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .pairs()
            .iter()
            .map(|(a, b)| format!("{a} {b}"))
            .collect::<Vec<_>>()
            .join(",");
        f.write_str(&body)
    }
}

/// Next integer with the same popcount (Gosper's hack). Enumerates k-subsets
/// in colex order.
#[inline]
pub fn colex_successor(x: u32) -> u32 {
    let low = x & x.wrapping_neg();
    let ripple = x.wrapping_add(low);
    (((ripple ^ x) >> 2) / low) | ripple
}

/// Binomial coefficients C(n, k) for n <= 28.
const BINOM: [[u64; NUM_LINES + 1]; NUM_LINES + 1] = {
    let mut t = [[0u64; NUM_LINES + 1]; NUM_LINES + 1];
    let mut n = 0;
    while n <= NUM_LINES {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
};

pub(crate) fn small_binomial(n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else {
        BINOM[n][k]
    }
}

/// The `r`-th 8-subset of the 28 lines in colex order.
pub fn unrank_complex(r: u64) -> Result<Complex> {
    if r >= NUM_COMPLEXES {
        return Err(Error::OutOfRange {
            what: "complex rank",
            value: r,
            bound: NUM_COMPLEXES,
        });
    }
    let mut rest = r;
    let mut mask = 0u32;
    let mut top = NUM_LINES;
    for k in (1..=LINES_PER_COMPLEX).rev() {
        // largest c < top with C(c, k) <= rest
        let mut c = top - 1;
        while small_binomial(c, k) > rest {
            c -= 1;
        }
        rest -= small_binomial(c, k);
        mask |= 1 << c;
        top = c;
    }
    Ok(Complex(mask))
}

pub fn rank_complex(c: Complex) -> u64 {
    c.lines()
        .enumerate()
        .map(|(i, l)| small_binomial(l.0 as usize, i + 1))
        .sum()
}

/// The 8x8 0/1 incidence submatrix: row k is the k-th smallest line of the
/// complex, column c is point c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix {
    entries: [[u8; NUM_POINTS]; LINES_PER_COMPLEX],
}

impl IncidenceMatrix {
    pub fn entries(&self) -> &[[u8; NUM_POINTS]; LINES_PER_COMPLEX] {
        &self.entries
    }

    pub fn row_sums(&self) -> [u8; LINES_PER_COMPLEX] {
        self.entries.map(|row| row.iter().sum())
    }

    pub fn column_sums(&self) -> [u8; NUM_POINTS] {
        let mut sums = [0u8; NUM_POINTS];
        for row in &self.entries {
            for (s, &e) in sums.iter_mut().zip(row) {
                *s += e;
            }
        }
        sums
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let data = self
            .entries
            .iter()
            .flat_map(|row| row.iter().map(|&e| e as i64))
            .collect();
        ExactMatrix::new(LINES_PER_COMPLEX, NUM_POINTS, data)
            .expect("8x8 incidence matrix has 64 entries")
    }

    pub(crate) fn write_i64(&self, out: &mut [i64; 64]) {
        for (r, row) in self.entries.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                out[r * NUM_POINTS + c] = e as i64;
            }
        }
    }
}

pub fn incidence_submatrix(c: Complex) -> IncidenceMatrix {
    let mut entries = [[0u8; NUM_POINTS]; LINES_PER_COMPLEX];
    for (row, l) in entries.iter_mut().zip(c.lines()) {
        let (a, b) = ENDPOINTS[l.0 as usize];
        row[a as usize] = 1;
        row[b as usize] = 1;
    }
    IncidenceMatrix { entries }
}

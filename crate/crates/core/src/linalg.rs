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

//! Exact integer determinant and rank for small matrices.
//!
//! No floating point is involved anywhere: the determinant uses Bareiss
//! fraction-free elimination (every division is exact), and the rank uses
//! division-free row reduction with gcd normalisation of each row.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::geometry::{incidence_submatrix, Complex};

pub const MAX_DET_DIM: usize = 12;
pub const MAX_RANK_DIM: usize = 32;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        ExactMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Returns a copy with rows reordered so that row `i` of the result is
    /// row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rows {
            return Err(Error::Shape("permutation length mismatch".into()));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for &p in perm {
            if p >= self.rows {
                return Err(Error::Shape(format!("row index {p} out of range")));
            }
            entries.extend_from_slice(self.row(p));
        }
        Self::new(self.rows, self.cols, entries)
    }
}

/// Bareiss elimination in place on an `n x n` row-major buffer.
pub(crate) fn bareiss_determinant(a: &mut [i64], n: usize) -> Result<i64> {
    debug_assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                return Ok(0);
            };
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let t = a[i * n + j]
                    .checked_mul(pivot)
                    .and_then(|x| x.checked_sub(lead.checked_mul(a[k * n + j])?))
                    .ok_or(Error::Overflow)?;
                debug_assert_eq!(t % prev, 0);
                a[i * n + j] = t / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    Ok(sign * a[n * n - 1])
}

pub fn determinant_exact(m: &ExactMatrix) -> Result<i64> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!(
            "determinant of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if m.rows > MAX_DET_DIM {
        return Err(Error::Shape(format!(
            "dimension {} exceeds {MAX_DET_DIM}",
            m.rows
        )));
    }
    let mut work = m.entries.clone();
    bareiss_determinant(&mut work, m.rows)
}

/// Rank over the rationals.
pub fn rank_exact(m: &ExactMatrix) -> Result<usize> {
    if m.rows > MAX_RANK_DIM || m.cols > MAX_RANK_DIM {
        return Err(Error::Shape(format!(
            "{}x{} exceeds {MAX_RANK_DIM}x{MAX_RANK_DIM}",
            m.rows, m.cols
        )));
    }
    let mut a = m.entries.clone();
    rank_in_place(&mut a, m.rows, m.cols)
}

pub(crate) fn rank_in_place(a: &mut [i64], rows: usize, cols: usize) -> Result<usize> {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + c];
        for i in rank + 1..rows {
            let lead = a[i * cols + c];
            if lead == 0 {
                continue;
            }
            let mut g = 0i64;
            for j in c..cols {
                let v = a[i * cols + j]
                    .checked_mul(pivot)
                    .and_then(|x| x.checked_sub(lead.checked_mul(a[rank * cols + j])?))
                    .ok_or(Error::Overflow)?;
                a[i * cols + j] = v;
                g = g.gcd(&v);
            }
            if g > 1 {
                for j in c..cols {
                    a[i * cols + j] /= g;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Determinant of the complex's incidence submatrix without heap allocation.
pub fn incidence_determinant(c: Complex) -> i64 {
    let mut buf = [0i64; 64];
    incidence_submatrix(c).write_i64(&mut buf);
    bareiss_determinant(&mut buf, 8).expect("0/1 8x8 minors fit in i64")
}

pub fn incidence_rank(c: Complex) -> usize {
    let mut buf = [0i64; 64];
    incidence_submatrix(c).write_i64(&mut buf);
    rank_in_place(&mut buf, 8, 8).expect("0/1 8x8 elimination fits in i64")
}

/// Linear-algebra admissibility test: the incidence submatrix is invertible.
pub fn is_admissible_rank(c: Complex) -> bool {
    incidence_determinant(c) != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Laplace expansion along the first row. Exponential, test-only.
    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * cofactor_det(&minor)
            })
            .sum()
    }

    fn star_plus_edge() -> Complex {
        Complex::from_pairs(&[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (1, 2)])
            .unwrap()
    }

    fn eight_cycle() -> Complex {
        Complex::from_pairs(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (0, 7)])
            .unwrap()
    }

    #[test]
    fn identity_determinant_and_rank() {
        let id = ExactMatrix::identity(8);
        assert_eq!(determinant_exact(&id).unwrap(), 1);
        assert_eq!(rank_exact(&id).unwrap(), 8);
        assert_eq!(rank_exact(&ExactMatrix::zeros(8, 8)).unwrap(), 0);
    }

    #[test]
    fn equal_rows_give_zero() {
        let m = ExactMatrix::from_rows(&[[1, 2, 3], [4, 5, 6], [1, 2, 3]]).unwrap();
        assert_eq!(determinant_exact(&m).unwrap(), 0);
        assert_eq!(rank_exact(&m).unwrap(), 2);
    }

    #[test]
    fn non_square_is_shape_error() {
        let m = ExactMatrix::zeros(2, 3);
        assert!(matches!(determinant_exact(&m), Err(Error::Shape(_))));
        assert!(ExactMatrix::new(2, 2, vec![1, 2, 3]).is_err());
    }

    #[test]
    fn star_determinant_matches_cofactor_oracle() {
        let inc = incidence_submatrix(star_plus_edge()).to_exact();
        let rows: Vec<Vec<i64>> = (0..8).map(|r| inc.row(r).to_vec()).collect();
        let oracle = cofactor_det(&rows);
        assert_eq!(oracle.abs(), 2);
        assert_eq!(determinant_exact(&inc).unwrap(), oracle);
        assert!(is_admissible_rank(star_plus_edge()));
    }

    #[test]
    fn eight_cycle_rank_seven() {
        let inc = incidence_submatrix(eight_cycle()).to_exact();
        assert_eq!(rank_exact(&inc).unwrap(), 7);
        assert_eq!(determinant_exact(&inc).unwrap(), 0);
        assert!(!is_admissible_rank(eight_cycle()));
    }

    #[test]
    fn omitted_point_is_singular() {
        // every line avoids point 7
        let c = Complex::from_pairs(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5), (5, 6)])
            .unwrap();
        assert!(!is_admissible_rank(c));
        assert_eq!(incidence_rank(c), 6);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), n)
        })
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_cofactor(m in small_matrix()) {
            let em = ExactMatrix::from_rows(&m).unwrap();
            prop_assert_eq!(determinant_exact(&em).unwrap(), cofactor_det(&m));
        }

        #[test]
        fn full_rank_iff_nonzero_det(m in small_matrix()) {
            let em = ExactMatrix::from_rows(&m).unwrap();
            let n = em.rows();
            let det = determinant_exact(&em).unwrap();
            prop_assert_eq!(rank_exact(&em).unwrap() == n, det != 0);
        }

        #[test]
        fn row_permutation_invariance(m in small_matrix(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let em = ExactMatrix::from_rows(&m).unwrap();
            let mut perm: Vec<usize> = (0..em.rows()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let pm = em.permute_rows(&perm).unwrap();
            let d0 = determinant_exact(&em).unwrap();
            let d1 = determinant_exact(&pm).unwrap();
            prop_assert_eq!(d0.abs(), d1.abs());
            prop_assert_eq!(rank_exact(&em).unwrap(), rank_exact(&pm).unwrap());
        }

        #[test]
        fn rank_bounded(rows in 1usize..=7, cols in 1usize..=7, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let data = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
            let m = ExactMatrix::new(rows, cols, data).unwrap();
            prop_assert!(rank_exact(&m).unwrap() <= rows.min(cols));
        }
    }
}

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

//! The finite X-ray transform restricted to a line complex.
//!
//! Forward: a function on the 8 points maps to its sum over the two endpoints
//! of every line. Inversion is an exact rational linear solve, which only
//! succeeds on admissible complexes; on inadmissible ones the null space of
//! the incidence submatrix describes exactly what the line sums cannot see.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::checker::{is_admissible_graph, Graph};
use crate::error::{Error, Result};
use crate::geometry::{incidence_submatrix, unrank_complex, Complex, NUM_COMPLEXES, NUM_POINTS};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointFunction {
    pub values: [Rational; NUM_POINTS],
}

impl PointFunction {
    pub fn new(values: [Rational; NUM_POINTS]) -> Self {
        PointFunction { values }
    }

    pub fn from_integers(values: [i64; NUM_POINTS]) -> Self {
        PointFunction {
            values: values.map(integer),
        }
    }

    pub fn zero() -> Self {
        PointFunction {
            values: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn indicator(point: u8) -> Self {
        let mut f = Self::zero();
        f.values[point as usize] = Rational::one();
        f
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// Line sums of some function over the lines of `complex`, ascending line order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSums {
    pub sums: [Rational; NUM_POINTS],
    pub complex: Complex,
}

pub fn xray_forward(f: &PointFunction, c: Complex) -> LineSums {
    let mut lines = c.lines();
    let sums = std::array::from_fn(|_| {
        let (a, b) = lines.next().expect("complex has 8 lines").endpoints();
        &f.values[a.value() as usize] + &f.values[b.value() as usize]
    });
    LineSums { sums, complex: c }
}

type Row = [Rational; NUM_POINTS];

fn incidence_rows(c: Complex) -> Vec<Row> {
    incidence_submatrix(c)
        .entries()
        .iter()
        .map(|row| row.map(|e| integer(e as i64)))
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut [Row], rhs: Option<&mut [Rational]>) -> Vec<usize> {
    let mut rhs = rhs;
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..NUM_POINTS {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(b) = rhs.as_deref_mut() {
            b.swap(r, p);
        }
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        if let Some(b) = rhs.as_deref_mut() {
            b[r] *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            let pivot_row = rows[r].clone();
            for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
            if let Some(b) = rhs.as_deref_mut() {
                let delta = &factor * &b[r];
                b[i] -= delta;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Recovers the unique function with the given line sums.
pub fn reconstruct(s: &LineSums) -> Result<PointFunction> {
    let verdict = is_admissible_graph(s.complex);
    if !verdict.admissible {
        return Err(Error::NotInvertible {
            diagnosis: verdict.diagnosis(),
        });
    }
    let mut rows = incidence_rows(s.complex);
    let mut rhs = s.sums.to_vec();
    let pivots = rref(&mut rows, Some(&mut rhs));
    if pivots.len() != NUM_POINTS {
        // graph verdict and elimination disagree; should be unreachable
        return Err(Error::NotInvertible {
            diagnosis: format!("incidence rank {} < 8", pivots.len()),
        });
    }
    let mut values = PointFunction::zero().values;
    for (r, &col) in pivots.iter().enumerate() {
        values[col] = rhs[r].clone();
    }
    Ok(PointFunction { values })
}

/// Basis of the null space of the incidence submatrix, each vector scaled to
/// coprime integers with a positive leading entry.
pub fn kernel_basis(c: Complex) -> Vec<PointFunction> {
    let mut rows = incidence_rows(c);
    let pivots = rref(&mut rows, None);
    let free: Vec<usize> = (0..NUM_POINTS).filter(|col| !pivots.contains(col)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = PointFunction::zero().values;
            v[fc] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][fc].clone();
            }
            normalize(v)
        })
        .collect()
}

fn normalize(mut v: Row) -> PointFunction {
    use num_integer::Integer;
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    for x in v.iter_mut() {
        *x *= BigRational::from_integer(lcm.clone());
    }
    let gcd = v
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()));
    if !gcd.is_zero() {
        let g = BigRational::from_integer(gcd);
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    if let Some(lead) = v.iter().find(|x| !x.is_zero()) {
        if lead.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    PointFunction { values: v }
}

/// Outcome of [`round_trip_suite`]. Every `*_failures` count is zero on a
/// correct build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripReport {
    pub seed: u64,
    pub admissible_sampled: usize,
    pub round_trip_failures: usize,
    pub inadmissible_sampled: usize,
    pub kernel_failures: usize,
    pub kernel_dim_sampled: usize,
    pub kernel_dim_failures: usize,
    pub cycle8_kernel_alternating: bool,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.round_trip_failures == 0
            && self.kernel_failures == 0
            && self.kernel_dim_failures == 0
            && self.cycle8_kernel_alternating
    }
}

fn random_complex<R: rand::Rng>(rng: &mut R) -> Complex {
    unrank_complex(rng.gen_range(0..NUM_COMPLEXES)).expect("rank in range")
}

/// Seeded property suite:
/// * `admissible` random admissible complexes, each with a random function
///   valued in [-100, 100], reconstruct exactly;
/// * `inadmissible` random inadmissible complexes have a non-empty kernel
///   mapping to zero sums, and refuse reconstruction;
/// * `kernel_dim` random complexes have kernel dimension equal to the
///   bipartite component count.
pub fn round_trip_suite(
    seed: u64,
    admissible: usize,
    inadmissible: usize,
    kernel_dim: usize,
) -> RoundTripReport {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    let mut round_trip_failures = 0;
    let mut found = 0;
    while found < admissible {
        let c = random_complex(&mut rng);
        if !is_admissible_graph(c).admissible {
            continue;
        }
        found += 1;
        let f = PointFunction::from_integers(std::array::from_fn(|_| rng.gen_range(-100..=100)));
        match reconstruct(&xray_forward(&f, c)) {
            Ok(g) if g == f => {}
            _ => round_trip_failures += 1,
        }
    }

    let mut kernel_failures = 0;
    let mut found = 0;
    while found < inadmissible {
        let c = random_complex(&mut rng);
        if is_admissible_graph(c).admissible {
            continue;
        }
        found += 1;
        let basis = kernel_basis(c);
        let annihilated = basis.iter().all(|v| {
            xray_forward(v, c).sums.iter().all(Zero::is_zero)
        });
        let refused = reconstruct(&xray_forward(&PointFunction::zero(), c)).is_err();
        if basis.is_empty() || !annihilated || !refused {
            kernel_failures += 1;
        }
    }

    let mut kernel_dim_failures = 0;
    for _ in 0..kernel_dim {
        let c = random_complex(&mut rng);
        let bipartite = Graph::from_complex(c).bipartite_component_count();
        if kernel_basis(c).len() != bipartite {
            kernel_dim_failures += 1;
        }
    }

    let cycle8 = Complex::from_pairs(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (0, 7)])
        .expect("valid 8-cycle");
    let alternating = PointFunction::from_integers([1, -1, 1, -1, 1, -1, 1, -1]);
    let cycle8_kernel_alternating = kernel_basis(cycle8) == vec![alternating];

    RoundTripReport {
        seed,
        admissible_sampled: admissible,
        round_trip_failures,
        inadmissible_sampled: inadmissible,
        kernel_failures,
        kernel_dim_sampled: kernel_dim,
        kernel_dim_failures,
        cycle8_kernel_alternating,
    }
}

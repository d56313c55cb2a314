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


//! Exhaustive enumeration, verification and classification of admissible
//! line complexes for the finite X-ray transform on the 8 points of F_2^3.
//!
//! A line complex is a set of 8 of the 28 two-point lines. It is admissible
//! when the line sums of every function on the points determine that
//! function, equivalently when its 8x8 incidence matrix is invertible.
//!
//! ```
//! use admissible::{classify, is_admissible_graph, Complex, TaxonomyLabel};
//!
//! let c = Complex::from_pairs(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (0, 7)])?;
//! assert!(!is_admissible_graph(c).admissible);
//! assert_eq!(classify(c), TaxonomyLabel::Cycle8);
//! # Ok::<(), admissible::Error>(())
//! ```

pub mod checker;
pub mod cli;
pub mod enumerator;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod scrapbook;
pub mod taxonomy;
pub mod transform;

pub use checker::{
    components, covered_points, is_admissible_graph, AdmissibilityVerdict, ComponentKind,
    ComponentSummary, Graph,
};
pub use enumerator::{
    count_admissible, full_sweep, merge, sweep, sweep_parallel, CountLedger, SweepMode,
    SweepPartition, SweepStats,
};
pub use error::{Error, Result};
pub use geometry::{
    incidence_submatrix, line_endpoints, line_index, rank_complex, unrank_complex, Complex,
    IncidenceMatrix, LineId, PointId, NUM_COMPLEXES, NUM_LINES, NUM_POINTS,
};
pub use linalg::{determinant_exact, is_admissible_rank, rank_exact, ExactMatrix};
pub use scrapbook::{build_scrapbook, representative, ScrapbookEntry};
pub use taxonomy::{classify, formula_ledger, verify_lemmas, TaxonomyLabel};
pub use transform::{kernel_basis, reconstruct, xray_forward, LineSums, PointFunction};

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


//! Sampled reconstruction and kernel properties.

use admissible::checker::Graph;
use admissible::linalg::incidence_rank;
use admissible::transform::{kernel_basis, reconstruct, round_trip_suite, xray_forward, PointFunction};
use admissible::{is_admissible_graph, unrank_complex, NUM_COMPLEXES};
use rand::{Rng, SeedableRng};

#[test]
fn round_trip_suite_passes() {
    let r = round_trip_suite(11, 1000, 1000, 10_000);
    assert!(r.passed(), "{r:?}");
}

#[test]
fn rational_round_trip() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < 200 {
        let c = unrank_complex(rng.gen_range(0..NUM_COMPLEXES)).unwrap();
        if !is_admissible_graph(c).admissible {
            continue;
        }
        done += 1;
        let f = PointFunction::new(std::array::from_fn(|_| {
            admissible::transform::rational(rng.gen_range(-100..=100), rng.gen_range(1..=12))
        }));
        assert_eq!(reconstruct(&xray_forward(&f, c)).unwrap(), f);
    }
}

#[test]
fn kernel_dimension_matches_rank_and_bipartite_count() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let c = unrank_complex(rng.gen_range(0..NUM_COMPLEXES)).unwrap();
        let k = kernel_basis(c).len();
        assert_eq!(k, 8 - incidence_rank(c));
        assert_eq!(k, Graph::from_complex(c).bipartite_component_count());
        assert_eq!(k == 0, is_admissible_graph(c).admissible);
    }
}

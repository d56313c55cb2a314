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

use thiserror::Error;

use crate::taxonomy::TaxonomyLabel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate line: both endpoints are point {0}")]
    DegenerateLine(u8),

    #[error("{what} {value} out of range (must be < {bound})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("a line complex needs exactly 8 distinct lines, got {0}")]
    WrongLineCount(usize),

    #[error("line {{{0}, {1}}} appears more than once")]
    DuplicateLine(u8, u8),

    #[error("matrix shape error: {0}")]
    Shape(String),

    #[error("integer overflow during exact elimination")]
    Overflow,

    #[error("complex is not admissible ({diagnosis}); line sums do not determine the function")]
    NotInvertible { diagnosis: String },

    #[error("label {label} has only {population} complexes, {requested} requested")]
    InsufficientPopulation {
        label: TaxonomyLabel,
        population: u64,
        requested: usize,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid sweep partition [{start}, {end})")]
    InvalidPartition { start: u64, end: u64 },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

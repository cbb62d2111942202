//! Built-in examples with frozen expected values.
//!
//! Every number below was confirmed by the dense Hilbert-function oracle
//! in the test suite (`tests/corpus_oracle.rs`), which shares no code with
//! the Gröbner route.

use crate::dsl::{parse_spec, ProblemSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub d: usize,
    pub colength: u64,
    pub fitting_colength: u64,
    pub e0: i64,
    pub coefficients: Vec<i64>,
    /// `(t, [ℓ(H_0), ℓ(H_1), ...])` over the default t range.
    pub h_lengths: Vec<(i64, Vec<u64>)>,
    pub cohen_macaulay: bool,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub expected: Expected,
}

impl CorpusEntry {
    pub fn spec(&self) -> ProblemSpec {
        parse_spec(self.source).expect("corpus sources parse")
    }
}

fn same_h(ts: std::ops::RangeInclusive<i64>, h: &[u64]) -> Vec<(i64, Vec<u64>)> {
    ts.map(|t| (t, h.to_vec())).collect()
}

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "E1",
            source: "ring { p = 101 vars = [x, y] } module { rank = 1 matrix = [[x^2, y^3]] }",
            expected: Expected {
                d: 2,
                colength: 6,
                fitting_colength: 6,
                e0: 6,
                coefficients: vec![6, 0, 0],
                h_lengths: same_h(-1..=2, &[6, 0, 0]),
                cohen_macaulay: true,
            },
        },
        CorpusEntry {
            name: "E2",
            source: "ring { p = 101 vars = [x, y] ideal = [x^2, x*y] } module { rank = 1 matrix = [[y]] }",
            expected: Expected {
                d: 1,
                colength: 2,
                fitting_colength: 2,
                e0: 1,
                coefficients: vec![1, -1],
                h_lengths: same_h(-1..=1, &[2, 1]),
                cohen_macaulay: false,
            },
        },
        CorpusEntry {
            name: "E3",
            source: "ring { p = 101 vars = [x] } module { rank = 2 matrix = [[x, 0], [0, x]] }",
            expected: Expected {
                d: 1,
                colength: 2,
                fitting_colength: 2,
                e0: 2,
                coefficients: vec![2, 0, 0],
                h_lengths: same_h(-1..=1, &[2, 0]),
                cohen_macaulay: true,
            },
        },
        CorpusEntry {
            name: "E4",
            source: "ring { p = 101 vars = [x, y] ideal = [x^2, x*y] } module { rank = 2 matrix = [[y, 0], [0, y]] }",
            expected: Expected {
                d: 1,
                colength: 4,
                fitting_colength: 3,
                e0: 2,
                coefficients: vec![2, -1, 1],
                h_lengths: vec![(-1, vec![4, 2]), (0, vec![3, 1]), (1, vec![4, 2])],
                cohen_macaulay: false,
            },
        },
        CorpusEntry {
            name: "E5",
            source: "ring { p = 101 vars = [x, y] } module { rank = 2 matrix = [[x, y, 0], [0, x, y]] }",
            expected: Expected {
                d: 2,
                colength: 3,
                fitting_colength: 3,
                e0: 3,
                coefficients: vec![3, 0, 0, 0],
                h_lengths: same_h(-1..=2, &[3, 0, 0]),
                cohen_macaulay: true,
            },
        },
        CorpusEntry {
            name: "E6",
            source: "ring { p = 101 vars = [x, y] } module { rank = 1 matrix = [[x^2, x*y, y^2]] }",
            expected: Expected {
                d: 2,
                colength: 3,
                fitting_colength: 3,
                e0: 4,
                coefficients: vec![4, 1, 0],
                h_lengths: same_h(-1..=2, &[3, 3, 0, 0]),
                cohen_macaulay: true,
            },
        },
    ]
}

/// Expected-record fields that `--tamper` can perturb.
pub const TAMPERABLE: [&str; 6] = [
    "d",
    "F_mod_N",
    "A_mod_IN",
    "e0",
    "coefficients",
    "H_lengths",
];

impl Expected {
    /// Shifts one field by one, for showing that mismatches are caught.
    pub fn tamper(&mut self, field: &str) -> Result<(), String> {
        match field {
            "d" => self.d += 1,
            "F_mod_N" => self.colength += 1,
            "A_mod_IN" => self.fitting_colength += 1,
            "e0" => self.e0 += 1,
            "coefficients" => self.coefficients[0] += 1,
            "H_lengths" => self.h_lengths[0].1[0] += 1,
            _ => {
                return Err(format!(
                    "unknown field '{field}' (expected one of {})",
                    TAMPERABLE.join(", ")
                ))
            }
        }
        Ok(())
    }
}

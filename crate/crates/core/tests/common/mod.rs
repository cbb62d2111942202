#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use brimlab_core::{FreeComplex, GradedRing, ModuleMatrix, Monomial, Poly, PrimeField};
use oracle::{OComplex, OPoly, ORing};

pub const P: u64 = 101;

/// Sparse polynomial from `(exponents, coefficient)` pairs; coefficients may
/// be negative.
pub fn op(terms: &[(&[u32], i64)]) -> OPoly {
    let mut out = OPoly::new();
    for (e, c) in terms {
        let c = c.rem_euclid(P as i64) as u64;
        let slot = out.entry(e.to_vec()).or_insert(0);
        *slot = (*slot + c) % P;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn to_core(f: &OPoly) -> Poly {
    let field = PrimeField::new(P).unwrap();
    let terms = f
        .iter()
        .map(|(e, c)| (Monomial::from_exponents(e).unwrap(), *c as u32))
        .collect();
    Poly::from_terms(&field, terms)
}

pub fn from_core(f: &Poly, nvars: usize) -> OPoly {
    f.terms()
        .iter()
        .map(|(m, c)| ((0..nvars).map(|i| m.exponent(i)).collect(), *c as u64))
        .collect()
}

/// A module `coker(A^n -> A^r)` described with plain data, so the oracle and
/// the library can each build their own view.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub nvars: usize,
    pub ideal: Vec<OPoly>,
    pub rows: Vec<Vec<OPoly>>,
}

impl Fixture {
    pub fn oracle_ring(&self) -> ORing {
        ORing {
            p: P,
            nvars: self.nvars,
            ideal: self.ideal.clone(),
        }
    }

    pub fn core_ring(&self) -> Arc<GradedRing> {
        let vars = (0..self.nvars).map(|i| format!("x{i}")).collect();
        Arc::new(GradedRing::new(P, vars, self.ideal.iter().map(to_core).collect()).unwrap())
    }

    pub fn matrix_over(&self, ring: Arc<GradedRing>) -> ModuleMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(to_core).collect())
            .collect();
        ModuleMatrix::new(ring, rows).unwrap()
    }

    pub fn matrix(&self) -> ModuleMatrix {
        self.matrix_over(self.core_ring())
    }

    pub fn r(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn columns(&self) -> Vec<Vec<OPoly>> {
        (0..self.n())
            .map(|j| self.rows.iter().map(|row| row[j].clone()).collect())
            .collect()
    }

    /// Degree of column `j`, or 1 for a zero column.
    pub fn column_degree(&self, j: usize) -> u32 {
        self.rows
            .iter()
            .find_map(|row| oracle::degree_of(&row[j]))
            .unwrap_or(1)
    }
}

/// Oracle view of a complex built by the library. A basis element
/// `e_E ⊗ f^μ` sits in degree `Σ_{j ∈ E} deg(column j)`.
pub fn oracle_complex(fx: &Fixture, c: &FreeComplex) -> OComplex {
    let degrees = (0..=c.top())
        .map(|p| {
            c.basis(p)
                .iter()
                .map(|b| b.wedge.0.iter().map(|&j| fx.column_degree(j)).sum())
                .collect()
        })
        .collect();
    let diffs = (1..=c.top())
        .map(|p| {
            let d = c.differential(p);
            (0..d.rows())
                .map(|i| {
                    (0..d.cols())
                        .map(|j| from_core(d.get(i, j), fx.nvars))
                        .collect()
                })
                .collect()
        })
        .collect();
    OComplex { degrees, diffs }
}

/// Runs the oracle with growing degree bounds until it certifies a value.
pub fn certify<T>(mut f: impl FnMut(u32) -> Option<T>) -> T {
    let mut bound = 8;
    loop {
        if let Some(v) = f(bound) {
            return v;
        }
        bound *= 2;
        assert!(bound <= 96, "oracle could not certify within degree 96");
    }
}

pub fn oracle_lambda(fx: &Fixture, n: u32) -> u64 {
    let ring = fx.oracle_ring();
    let cols = fx.columns();
    if n == 0 {
        return 0;
    }
    certify(|b| oracle::lambda(&ring, &cols, n, b))
}

pub fn oracle_colength(fx: &Fixture) -> u64 {
    oracle_lambda(fx, 1)
}

pub fn oracle_fitting_colength(fx: &Fixture) -> u64 {
    let ring = fx.oracle_ring();
    let minors: Vec<Vec<OPoly>> = oracle::maximal_minors(&fx.rows, fx.nvars, P)
        .into_iter()
        .map(|m| vec![m])
        .collect();
    certify(|b| oracle::quotient_length(&ring, 1, &minors, b))
}

pub fn oracle_homology(fx: &Fixture, c: &FreeComplex) -> Vec<u64> {
    let ring = fx.oracle_ring();
    let oc = oracle_complex(fx, c);
    let base = oc.degrees.iter().flatten().copied().max().unwrap_or(0);
    certify(|b| oracle::homology_lengths(&ring, &oc, base + b))
}

/// Multiplicity and coefficient vector read off oracle values of λ: the
/// `D`-th difference once `D+1`-st differences vanish three times running.
pub fn oracle_multiplicity(fx: &Fixture, dim: usize) -> (i64, Vec<i64>) {
    let deg = dim + fx.r() - 1;
    let mut values: Vec<i64> = vec![0];
    let mut n = 1;
    loop {
        values.push(oracle_lambda(fx, n) as i64);
        let diffs = |k: usize, at: usize| -> i64 {
            (0..=k)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * binom(k as i64, i as i64) * values[at - i]
                })
                .sum()
        };
        let at = n as usize;
        if at >= deg + 4 && (0..3).all(|s| diffs(deg + 1, at - s) == 0) {
            let e0 = diffs(deg, at);
            let coeffs = fit(&values[at - deg..=at], at - deg, deg);
            assert_eq!(coeffs[0], e0);
            return (e0, coeffs);
        }
        n += 1;
        assert!(n <= 40, "oracle λ did not stabilize");
    }
}

/// `C(n, k)` by the falling factorial, so negative `n` is allowed.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// Solves `Σ_i (-1)^i e_i C(n + D - 1 - i, D - i) = λ(n)` on `deg+1` consecutive
/// points by exact rational elimination.
fn fit(values: &[i64], first: usize, deg: usize) -> Vec<i64> {
    let m = deg + 1;
    let mut a: Vec<Vec<i128>> = (0..m)
        .map(|row| {
            let n = (first + row) as i64;
            let mut r: Vec<i128> = (0..m)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * binom(n + (deg - i) as i64 - 1, (deg - i) as i64) as i128
                })
                .collect();
            r.push(values[row] as i128);
            r
        })
        .collect();
    // fraction-free Gaussian elimination
    for c in 0..m {
        let piv = (c..m).find(|&r| a[r][c] != 0).expect("nonsingular");
        a.swap(c, piv);
        for r in 0..m {
            if r != c && a[r][c] != 0 {
                let (f, g) = (a[c][c], a[r][c]);
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = *x * f - y * g;
                }
            }
        }
    }
    (0..m)
        .map(|i| {
            assert_eq!(a[i][m] % a[i][i], 0, "non-integral coefficient");
            (a[i][m] / a[i][i]) as i64
        })
        .collect()
}

const X: &[u32] = &[1, 0];
const Y: &[u32] = &[0, 1];

pub fn fixtures() -> Vec<Fixture> {
    let mono = |e: &[u32]| op(&[(e, 1)]);
    let e2_ideal = vec![mono(&[2, 0]), mono(&[1, 1])];
    vec![
        Fixture {
            name: "E1",
            nvars: 2,
            ideal: vec![],
            rows: vec![vec![mono(&[2, 0]), mono(&[0, 3])]],
        },
        Fixture {
            name: "E2",
            nvars: 2,
            ideal: e2_ideal.clone(),
            rows: vec![vec![mono(Y)]],
        },
        Fixture {
            name: "E3",
            nvars: 1,
            ideal: vec![],
            rows: vec![
                vec![mono(&[1]), OPoly::new()],
                vec![OPoly::new(), mono(&[1])],
            ],
        },
        Fixture {
            name: "E4",
            nvars: 2,
            ideal: e2_ideal,
            rows: vec![vec![mono(Y), OPoly::new()], vec![OPoly::new(), mono(Y)]],
        },
        Fixture {
            name: "E5",
            nvars: 2,
            ideal: vec![],
            rows: vec![
                vec![mono(X), mono(Y), OPoly::new()],
                vec![OPoly::new(), mono(X), mono(Y)],
            ],
        },
        Fixture {
            name: "E6",
            nvars: 2,
            ideal: vec![],
            rows: vec![vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]],
        },
    ]
}

/// Krull dimension from the Hilbert function: one more than the degree of
/// the polynomial it agrees with in high degree.
pub fn oracle_dim(ring: &ORing) -> usize {
    let start = 12;
    let h: Vec<i64> = (start..start + ring.nvars as u32 + 2)
        .map(|k| ring.hilbert(k) as i64)
        .collect();
    let mut row = h;
    for m in 0..=ring.nvars {
        if row.iter().all(|&v| v == 0) {
            return m;
        }
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
    }
    ring.nvars
}

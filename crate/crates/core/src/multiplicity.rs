//! Buchsbaum–Rim function `λ(n) = ℓ(S_n(F) / R_n(M))`, its multiplicity
//! `e_0` and coefficients, the combined check report, and the sampling
//! experiment on `ℓ(F/N) - e(F/N)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{AlgebraError, Error, Result};
use crate::groebner::Length;
use crate::homology::{all_homology, annihilation_violations, EulerTable};
use crate::koszul::{
    binomial, build_koszul, fitting_ideal, verify_complex, FreeComplex, ModuleMatrix, SymIndex,
};
use crate::monomial::monomials_of_degree;
use crate::poly::Poly;
use crate::ring::{GradedRing, ParameterVerdict};
use crate::vector::VecPoly;

/// Cap on the number of column multisets expanded for one `R_n(M)`.
pub const MAX_REES_GENERATORS: u64 = 50_000;

/// Consecutive vanishing `(D+1)`-th differences required before `λ` is
/// treated as polynomial.
pub const STABILITY_WINDOW: usize = 3;

/// Default `n_max = 4 (d + r)`.
pub fn default_n_max(d: usize, r: usize) -> usize {
    4 * (d + r)
}

/// Coordinates of `S_n(F) ≅ A^C(n+r-1, r-1)`.
#[derive(Clone, Debug)]
pub struct SymPowerBasis {
    pub n: u32,
    pub basis: Vec<SymIndex>,
}

impl SymPowerBasis {
    pub fn new(r: usize, n: u32) -> Self {
        Self {
            n,
            basis: SymIndex::all(r, n),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// One generator of `R_n(M)` per multiset of `n` columns, expanded in the
/// [`SymPowerBasis`] coordinates and reduced modulo `I`.
pub fn rees_power_generators(matrix: &ModuleMatrix, n: u32) -> Result<Vec<VecPoly>> {
    assert!(n >= 1, "R_0(M) = A is not a submodule of interest");
    let (r, cols) = (matrix.r(), matrix.n());
    let count = binomial(n as u64 + cols as u64 - 1, n as u64);
    if count > MAX_REES_GENERATORS {
        return Err(AlgebraError::BudgetExceeded {
            what: "Rees power generators",
            limit: MAX_REES_GENERATORS,
        }
        .into());
    }
    let ring = matrix.ring();
    let f = *ring.field();
    type Expansion = HashMap<SymIndex, Poly>;

    // multisets of size k, each tagged with its largest column
    let mut level: Vec<(usize, Expansion)> = vec![(
        0,
        HashMap::from([(SymIndex(vec![0; r]), Poly::constant(1))]),
    )];
    for _ in 0..n {
        let mut next = Vec::with_capacity(level.len() * cols);
        for (last, prod) in &level {
            for j in *last..cols {
                let mut out: Expansion = HashMap::new();
                for (mu, c) in prod {
                    for i in 0..r {
                        let a = matrix.entry(i, j);
                        if a.is_zero() {
                            continue;
                        }
                        let mut nu = mu.clone();
                        nu.0[i] += 1;
                        let term = ring.reduce(&c.mul(a.poly(), &f));
                        let slot = out.entry(nu).or_default();
                        *slot = slot.add(&term, &f);
                    }
                }
                out.retain(|_, c| !c.is_zero());
                next.push((j, out));
            }
        }
        level = next;
    }

    let basis = SymPowerBasis::new(r, n);
    let index: HashMap<&SymIndex, usize> = basis
        .basis
        .iter()
        .enumerate()
        .map(|(k, b)| (b, k))
        .collect();
    Ok(level
        .into_iter()
        .map(|(_, prod)| {
            let mut comps = vec![Poly::zero(); basis.rank()];
            for (mu, c) in prod {
                comps[index[&mu]] = c;
            }
            VecPoly::from_components(&comps)
        })
        .filter(|v| !v.is_zero())
        .collect())
}

/// `λ(n)`, with `λ(0) = 0`.
pub fn lambda(matrix: &ModuleMatrix, n: u32) -> Result<Length> {
    if n == 0 {
        return Ok(Length::Finite(0));
    }
    let rank = SymPowerBasis::new(matrix.r(), n).rank();
    let gens = rees_power_generators(matrix, n)?;
    Ok(matrix.ring().submodule_basis(rank, &gens)?.colength())
}

fn finite_lambda(matrix: &ModuleMatrix, n: u32) -> Result<u64> {
    lambda(matrix, n)?
        .finite()
        .ok_or_else(|| Error::InfiniteLength(format!("S_{n}(F) / R_{n}(M)")))
}

/// Values of `λ` and their backward differences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BRFunctionTable {
    /// `D = d + r - 1`, the degree of the eventual polynomial.
    pub degree: usize,
    /// `values[k] = λ(k + 1)`
    pub values: Vec<u64>,
    /// `differences[k][i] = Δ^k λ(k + 1 + i)`; row 0 is `λ` itself.
    pub differences: Vec<Vec<i64>>,
    /// First `n` of the window on which `λ` agrees with a polynomial.
    pub stable_from: usize,
}

impl BRFunctionTable {
    fn from_values(degree: usize, values: Vec<u64>) -> Self {
        let mut differences = vec![values.iter().map(|&v| v as i64).collect::<Vec<i64>>()];
        for _ in 0..=degree {
            let prev = differences.last().unwrap();
            let row: Vec<i64> = prev.windows(2).map(|w| w[1] - w[0]).collect();
            differences.push(row);
        }
        Self {
            degree,
            values,
            differences,
            stable_from: 0,
        }
    }

    pub fn n_last(&self) -> usize {
        self.values.len()
    }

    /// `Δ^k λ(n)`, defined for `n >= k + 1`.
    pub fn difference(&self, k: usize, n: usize) -> Option<i64> {
        self.differences.get(k)?.get(n.checked_sub(k + 1)?).copied()
    }

    pub fn lambda(&self, n: usize) -> Option<u64> {
        if n == 0 {
            return Some(0);
        }
        self.values.get(n - 1).copied()
    }

    /// First `n` closing a window of vanishing `(D+1)`-th differences.
    fn stable_end(&self) -> Option<usize> {
        let k = self.degree + 1;
        let zeros: Vec<usize> = (k + 1..=self.n_last())
            .filter(|&n| self.difference(k, n) == Some(0))
            .collect();
        zeros
            .windows(STABILITY_WINDOW)
            .find(|w| w[STABILITY_WINDOW - 1] - w[0] == STABILITY_WINDOW - 1)
            .map(|w| w[STABILITY_WINDOW - 1])
    }

    pub fn e0(&self) -> i64 {
        self.difference(self.degree, self.n_last())
            .expect("table is stabilized")
    }

    /// `(e_0, ..., e_D)` with `P(n) = Σ (-1)^i e_i C(n + D - 1 - i, D - i)`.
    pub fn coefficients(&self) -> Vec<i64> {
        let d = self.degree as i64;
        let n = self.n_last() as i64;
        let mut e = vec![0i64; self.degree + 1];
        for k in (0..=self.degree).rev() {
            let target = self.difference(k, n as usize).expect("table is stabilized");
            let k = k as i64;
            let mut known = 0i64;
            for i in 0..(d - k) {
                known += sign(i) * e[i as usize] * binom(n + d - 1 - i - k, d - i - k);
            }
            let i = d - k;
            e[i as usize] = sign(i) * (target - known);
        }
        e
    }

    /// Value of the fitted polynomial.
    pub fn polynomial_at(coefficients: &[i64], n: i64) -> i64 {
        let d = coefficients.len() as i64 - 1;
        coefficients
            .iter()
            .enumerate()
            .map(|(i, &e)| sign(i as i64) * e * binom(n + d - 1 - i as i64, d - i as i64))
            .sum()
    }
}

fn sign(i: i64) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `C(a, b)` for integer `a` and `b >= 0`, extended by the falling-factorial
/// formula so that negative `a` is allowed.
fn binom(a: i64, b: i64) -> i64 {
    if b < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..b as i128 {
        acc = acc * (a as i128 - i) / (i + 1);
    }
    acc as i64
}

/// Evaluates `λ(1..)` until the `(D+1)`-th differences vanish on a window of
/// [`STABILITY_WINDOW`] consecutive `n`, then checks that the fitted
/// polynomial reproduces every value from the window start on.
pub fn br_function_table(matrix: &ModuleMatrix, n_max: Option<usize>) -> Result<BRFunctionTable> {
    let ring = matrix.ring();
    let degree = ring.dim() + matrix.r() - 1;
    let n_max = n_max.unwrap_or_else(|| default_n_max(ring.dim(), matrix.r()));
    // the first window cannot close before this
    let first = (degree + 1 + STABILITY_WINDOW).min(n_max);
    let mut values: Vec<u64> = (1..=first as u32)
        .into_par_iter()
        .map(|n| finite_lambda(matrix, n))
        .collect::<Result<_>>()?;
    loop {
        let mut table = BRFunctionTable::from_values(degree, values.clone());
        if let Some(end) = table.stable_end() {
            table.values.truncate(end);
            table = BRFunctionTable::from_values(degree, table.values);
            table.stable_from = end + 1 - STABILITY_WINDOW - degree - 1;
            let coefficients = table.coefficients();
            for n in table.stable_from..=end {
                let fitted = BRFunctionTable::polynomial_at(&coefficients, n as i64);
                let observed = table.values[n - 1] as i64;
                if fitted != observed {
                    return Err(Error::RefitMismatch {
                        n,
                        fitted,
                        observed,
                    });
                }
            }
            return Ok(table);
        }
        if values.len() >= n_max {
            let last_differences = table.differences[degree + 1]
                .iter()
                .rev()
                .take(STABILITY_WINDOW)
                .rev()
                .copied()
                .collect();
            return Err(Error::NoStabilization {
                n_max,
                last_differences,
            });
        }
        values.push(finite_lambda(matrix, values.len() as u32 + 1)?);
    }
}

pub fn br_multiplicity(matrix: &ModuleMatrix, n_max: Option<usize>) -> Result<i64> {
    Ok(br_function_table(matrix, n_max)?.e0())
}

pub fn br_coefficients(matrix: &ModuleMatrix, n_max: Option<usize>) -> Result<Vec<i64>> {
    Ok(br_function_table(matrix, n_max)?.coefficients())
}

/// Supported `t` values for a matrix: `[-1, n - r + 1]`.
pub fn supported_t_range(matrix: &ModuleMatrix) -> (i64, i64) {
    (-1, matrix.complex_length() as i64)
}

/// Default analysis range `[-1, min(d, n - r + 1)]`.
pub fn default_t_range(matrix: &ModuleMatrix) -> (i64, i64) {
    (
        -1,
        (matrix.ring().dim() as i64).min(matrix.complex_length() as i64),
    )
}

/// Homological data of `K(a; t)` for one `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSlice {
    pub t: i64,
    pub ranks: Vec<usize>,
    /// Empty when the complex failed verification.
    pub euler: EulerTable,
    pub complex_ok: bool,
    pub annihilation_ok: bool,
}

impl TSlice {
    pub fn h0(&self) -> u64 {
        self.euler.lengths.first().copied().unwrap_or(0)
    }

    pub fn acyclic(&self) -> bool {
        self.complex_ok && self.euler.lengths.iter().skip(1).all(|&l| l == 0)
    }
}

/// Outcomes of the checks. `None` means the check was skipped because the
/// module is not a parameter module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdicts {
    pub parameter_module: bool,
    pub complexes_ok: bool,
    pub annihilation_ok: bool,
    pub chi_nonnegative: bool,
    pub chi0_t_independent: bool,
    /// `χ_0 = e_0` when `n = d + r - 1`, `χ_0 = 0` when `n > d + r - 1`.
    pub chi0_expected: bool,
    pub h0_t1_is_colength: bool,
    pub h0_t0_is_fitting_colength: bool,
    pub colength_ge_e: Option<bool>,
    pub fitting_colength_ge_e: Option<bool>,
    pub h0_ge_e: Option<bool>,
    /// Equality witnesses; expected exactly when the ring is Cohen–Macaulay.
    pub colength_eq_e: Option<bool>,
    pub fitting_colength_eq_e: Option<bool>,
}

impl Verdicts {
    /// Every check that holds unconditionally. Equality flags are excluded.
    pub fn all_hold(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let checks = [
            ("complexes_ok", Some(self.complexes_ok)),
            ("annihilation_ok", Some(self.annihilation_ok)),
            ("chi_nonnegative", Some(self.chi_nonnegative)),
            ("chi0_t_independent", Some(self.chi0_t_independent)),
            ("chi0_expected", Some(self.chi0_expected)),
            ("h0_t1_is_colength", Some(self.h0_t1_is_colength)),
            (
                "h0_t0_is_fitting_colength",
                Some(self.h0_t0_is_fitting_colength),
            ),
            ("colength_ge_e", self.colength_ge_e),
            ("fitting_colength_ge_e", self.fitting_colength_ge_e),
            ("h0_ge_e", self.h0_ge_e),
        ];
        for (name, v) in checks {
            if v == Some(false) {
                out.push(name);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct BRReport {
    pub ring: Arc<GradedRing>,
    pub r: usize,
    pub n: usize,
    pub d: usize,
    pub colength: u64,
    pub fitting_colength: u64,
    pub parameter: ParameterVerdict,
    pub table: BRFunctionTable,
    pub e0: i64,
    pub coefficients: Vec<i64>,
    pub slices: Vec<TSlice>,
    pub verdicts: Verdicts,
}

fn t_slice(matrix: &ModuleMatrix, t: i64) -> Result<TSlice> {
    slice_of(&build_koszul(matrix, t)?)
}

fn slice_of(c: &FreeComplex) -> Result<TSlice> {
    let complex_ok = verify_complex(c).is_empty();
    if !complex_ok {
        // homology of a non-complex means nothing
        return Ok(TSlice {
            t: c.t(),
            ranks: c.ranks(),
            euler: EulerTable::from_lengths(c.t(), Vec::new()),
            complex_ok,
            annihilation_ok: false,
        });
    }
    let hs = all_homology(c)?;
    let annihilation_ok = annihilation_violations(c, &hs).is_empty();
    let lengths = hs
        .iter()
        .map(|h| {
            h.length
                .finite()
                .ok_or(Error::InfiniteHomology { p: h.p, t: c.t() })
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(TSlice {
        t: c.t(),
        ranks: c.ranks(),
        euler: EulerTable::from_lengths(c.t(), lengths),
        complex_ok,
        annihilation_ok,
    })
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub t_range: Option<(i64, i64)>,
    pub n_max: Option<usize>,
    /// Negates the first nonzero entry of `d_2` before verification, on
    /// complexes long enough to have one. Exists to show the checks catch a
    /// broken build.
    pub inject_sign_flip: bool,
}

/// Computes every length, multiplicity and Euler characteristic attached to
/// the module and evaluates the checks.
pub fn theorem_check(matrix: &ModuleMatrix, opts: &CheckOptions) -> Result<BRReport> {
    let ring = matrix.ring().clone();
    let (r, n, d) = (matrix.r(), matrix.n(), ring.dim());
    let (lo, hi) = supported_t_range(matrix);
    let (t_lo, t_hi) = opts.t_range.unwrap_or_else(|| default_t_range(matrix));
    for t in [t_lo, t_hi] {
        if t < lo || t > hi {
            return Err(Error::TOutOfRange {
                t,
                min: lo,
                max: hi,
            });
        }
    }

    let module = matrix.submodule();
    let parameter = ring.is_parameter_module(r, &module)?;
    let colength = parameter
        .colength
        .finite()
        .ok_or_else(|| Error::InfiniteLength(format!("F / N with F = A^{r}")))?;
    let fitting_colength = ring
        .ideal_colength(&fitting_ideal(matrix))?
        .finite()
        .expect("finite colength of F/N forces an m-primary Fitting ideal");

    let table = br_function_table(matrix, opts.n_max)?;
    let e0 = table.e0();
    let coefficients = table.coefficients();

    let slices: Vec<TSlice> = (t_lo..=t_hi)
        .into_par_iter()
        .map(|t| {
            if opts.inject_sign_flip {
                let mut c = build_koszul(matrix, t)?;
                if c.top() >= 2 {
                    let first = c
                        .differential(2)
                        .nonzero_entries()
                        .next()
                        .map(|(i, j, _)| (i, j));
                    if let Some((row, col)) = first {
                        c.flip_sign(2, row, col);
                    }
                }
                slice_of(&c)
            } else {
                t_slice(matrix, t)
            }
        })
        .collect::<Result<_>>()?;

    // homological checks only make sense on slices that are complexes
    let sound: Vec<&TSlice> = slices.iter().filter(|s| s.complex_ok).collect();
    let chi0s: Vec<i64> = sound.iter().map(|s| s.euler.chi(0)).collect();
    let expected_chi0 = if n == d + r - 1 { e0 } else { 0 };
    let is_param = parameter.is_parameter;
    let param_only = |v: bool| if is_param { Some(v) } else { None };
    let slice_at = |t: i64| sound.iter().find(|s| s.t == t);
    let ue = e0.max(0) as u64;
    let verdicts = Verdicts {
        parameter_module: is_param,
        complexes_ok: slices.iter().all(|s| s.complex_ok),
        annihilation_ok: sound.iter().all(|s| s.annihilation_ok),
        chi_nonnegative: sound.iter().all(|s| s.euler.chis.iter().all(|&c| c >= 0)),
        chi0_t_independent: chi0s.windows(2).all(|w| w[0] == w[1]),
        chi0_expected: chi0s.iter().all(|&c| c == expected_chi0),
        h0_t1_is_colength: slice_at(1).is_none_or(|s| s.h0() == colength),
        h0_t0_is_fitting_colength: slice_at(0).is_none_or(|s| s.h0() == fitting_colength),
        colength_ge_e: param_only(e0 >= 0 && colength >= ue),
        fitting_colength_ge_e: param_only(e0 >= 0 && fitting_colength >= ue),
        h0_ge_e: param_only(sound.iter().all(|s| s.h0() >= ue)),
        colength_eq_e: param_only(colength == ue),
        fitting_colength_eq_e: param_only(fitting_colength == ue),
    };

    Ok(BRReport {
        ring,
        r,
        n,
        d,
        colength,
        fitting_colength,
        parameter,
        table,
        e0,
        coefficients,
        slices,
        verdicts,
    })
}

/// How `buchsbaum_spread` draws modules.
#[derive(Clone, Debug)]
pub struct SamplingSpec {
    pub samples: usize,
    pub seed: u64,
    /// Degree of the random homogeneous entries.
    pub degree: u32,
    /// Draws per sample before giving up.
    pub max_attempts: usize,
    pub n_max: Option<usize>,
}

impl Default for SamplingSpec {
    fn default() -> Self {
        Self {
            samples: 20,
            seed: 0,
            degree: 1,
            max_attempts: 50,
            n_max: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadSample {
    pub matrix: Vec<Vec<Poly>>,
    pub colength: u64,
    pub e0: i64,
    pub attempts: usize,
}

impl SpreadSample {
    pub fn difference(&self) -> i64 {
        self.colength as i64 - self.e0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadReport {
    pub r: usize,
    pub columns: usize,
    pub samples: Vec<SpreadSample>,
}

impl SpreadReport {
    pub fn differences(&self) -> Vec<i64> {
        self.samples.iter().map(SpreadSample::difference).collect()
    }

    /// difference -> count
    pub fn histogram(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for d in self.differences() {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }
}

/// Random `r x (d + r - 1)` matrix of homogeneous forms of the given degree.
pub fn random_matrix(
    ring: &Arc<GradedRing>,
    r: usize,
    columns: usize,
    degree: u32,
    rng: &mut ChaCha8Rng,
) -> Result<ModuleMatrix> {
    let monos = monomials_of_degree(ring.nvars(), degree);
    let f = *ring.field();
    let p = f.modulus();
    let rows: Vec<Vec<Poly>> = (0..r)
        .map(|_| {
            (0..columns)
                .map(|_| {
                    let terms = monos
                        .iter()
                        .map(|m| (*m, rng.gen_range(0..p) as u32))
                        .collect();
                    Poly::from_terms(&f, terms)
                })
                .collect()
        })
        .collect();
    ModuleMatrix::new(ring.clone(), rows)
}

/// Sample `i` draws from its own ChaCha stream, so results do not depend on
/// scheduling or on the other samples.
pub fn sample_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

/// Draws random parameter modules and records `ℓ(F/N) - e(F/N)` for each.
pub fn buchsbaum_spread(
    ring: &Arc<GradedRing>,
    r: usize,
    spec: &SamplingSpec,
) -> Result<SpreadReport> {
    let columns = ring.dim() + r - 1;
    let samples = (0..spec.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(spec.seed, i);
            for attempt in 1..=spec.max_attempts {
                let m = random_matrix(ring, r, columns, spec.degree, &mut rng)?;
                let verdict = ring.is_parameter_module(r, &m.submodule())?;
                if !verdict.is_parameter {
                    continue;
                }
                let e0 = br_multiplicity(&m, spec.n_max)?;
                return Ok(SpreadSample {
                    matrix: m.rows(),
                    colength: verdict
                        .colength
                        .finite()
                        .expect("parameter modules have finite colength"),
                    e0,
                    attempts: attempt,
                });
            }
            Err(Error::SamplingExhausted {
                attempts: spec.max_attempts,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpreadReport {
        r,
        columns,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn mono(e: &[u32]) -> Poly {
        Poly::monomial(1, Monomial::from_exponents(e).unwrap())
    }

    fn ring(vars: &[&str], ideal: Vec<Poly>) -> Arc<GradedRing> {
        Arc::new(GradedRing::new(101, vars.iter().map(|s| s.to_string()).collect(), ideal).unwrap())
    }

    fn e2_ring() -> Arc<GradedRing> {
        ring(&["x", "y"], vec![mono(&[2, 0]), mono(&[1, 1])])
    }

    fn e1() -> ModuleMatrix {
        ModuleMatrix::new(
            ring(&["x", "y"], vec![]),
            vec![vec![mono(&[2, 0]), mono(&[0, 3])]],
        )
        .unwrap()
    }

    fn e2() -> ModuleMatrix {
        ModuleMatrix::new(e2_ring(), vec![vec![mono(&[0, 1])]]).unwrap()
    }

    fn e3() -> ModuleMatrix {
        let x = mono(&[1]);
        ModuleMatrix::new(
            ring(&["x"], vec![]),
            vec![vec![x.clone(), Poly::zero()], vec![Poly::zero(), x]],
        )
        .unwrap()
    }

    fn e4() -> ModuleMatrix {
        let y = mono(&[0, 1]);
        ModuleMatrix::new(
            e2_ring(),
            vec![vec![y.clone(), Poly::zero()], vec![Poly::zero(), y]],
        )
        .unwrap()
    }

    #[test]
    fn rees_generators() {
        let m = e3();
        assert_eq!(rees_power_generators(&m, 1).unwrap(), m.columns());
        let x2 = mono(&[2]);
        let z = Poly::zero();
        // basis f1^2, f1 f2, f2^2
        let got = rees_power_generators(&m, 2).unwrap();
        assert_eq!(
            got,
            vec![
                VecPoly::from_components(&[x2.clone(), z.clone(), z.clone()]),
                VecPoly::from_components(&[z.clone(), x2.clone(), z.clone()]),
                VecPoly::from_components(&[z.clone(), z, x2]),
            ]
        );
        let got = rees_power_generators(&e1(), 2).unwrap();
        let as_polys: Vec<Poly> = got.iter().map(|v| v.component(0)).collect();
        assert_eq!(as_polys, vec![mono(&[4, 0]), mono(&[2, 3]), mono(&[0, 6])]);
    }

    #[test]
    fn lambda_values() {
        let m = e1();
        let vals: Vec<Length> = (0..=3).map(|n| lambda(&m, n).unwrap()).collect();
        assert_eq!(
            vals,
            vec![
                Length::Finite(0),
                Length::Finite(6),
                Length::Finite(18),
                Length::Finite(36)
            ]
        );
        assert_eq!(lambda(&e4(), 2).unwrap(), Length::Finite(9));
        for n in 1..=4u64 {
            assert_eq!(
                lambda(&e3(), n as u32).unwrap(),
                Length::Finite(n * (n + 1))
            );
            assert_eq!(lambda(&e2(), n as u32).unwrap(), Length::Finite(n + 1));
        }
    }

    #[test]
    fn multiplicities_and_coefficients() {
        assert_eq!(br_multiplicity(&e1(), None).unwrap(), 6);
        assert_eq!(br_coefficients(&e1(), None).unwrap(), vec![6, 0, 0]);
        assert_eq!(br_coefficients(&e2(), None).unwrap(), vec![1, -1]);
        assert_eq!(br_coefficients(&e3(), None).unwrap(), vec![2, 0, 0]);
        assert_eq!(br_coefficients(&e4(), None).unwrap(), vec![2, -1, 1]);
    }

    #[test]
    fn table_bookkeeping() {
        let t = br_function_table(&e4(), None).unwrap();
        assert_eq!(t.degree, 2);
        for n in 1..=t.n_last() {
            assert_eq!(t.lambda(n), Some(((n + 1) * (n + 1)) as u64));
        }
        assert_eq!(t.difference(2, 5), Some(2));
        assert_eq!(t.difference(3, 5), Some(0));
        assert_eq!(t.stable_from, 1);
        for n in 1..=t.n_last() {
            assert_eq!(
                BRFunctionTable::polynomial_at(&t.coefficients(), n as i64),
                t.lambda(n).unwrap() as i64
            );
        }
    }

    #[test]
    fn n_max_too_small() {
        let err = br_function_table(&e1(), Some(3)).unwrap_err();
        assert!(
            matches!(err, Error::NoStabilization { n_max: 3, .. }),
            "{err:?}"
        );
        assert!(err.is_budget());
    }

    #[test]
    fn non_parameter_module_is_only_partly_checked() {
        let m = ModuleMatrix::new(
            ring(&["x", "y"], vec![]),
            vec![vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]],
        )
        .unwrap();
        let rep = theorem_check(&m, &CheckOptions::default()).unwrap();
        assert!(!rep.verdicts.parameter_module);
        assert_eq!((rep.colength, rep.fitting_colength, rep.e0), (3, 3, 4));
        assert_eq!(rep.coefficients, vec![4, 1, 0]);
        assert_eq!(rep.verdicts.colength_ge_e, None);
        assert!(rep.verdicts.all_hold(), "{:?}", rep.verdicts.failures());
        for s in &rep.slices {
            assert_eq!(s.euler.chi(0), 0);
        }
    }

    #[test]
    fn theorem_check_e4() {
        let rep = theorem_check(&e4(), &CheckOptions::default()).unwrap();
        assert_eq!((rep.colength, rep.fitting_colength, rep.e0), (4, 3, 2));
        assert!(rep.verdicts.all_hold(), "{:?}", rep.verdicts.failures());
        assert_eq!(rep.verdicts.colength_eq_e, Some(false));
        assert_eq!(rep.verdicts.fitting_colength_eq_e, Some(false));
        let ts: Vec<i64> = rep.slices.iter().map(|s| s.t).collect();
        assert_eq!(ts, vec![-1, 0, 1]);
    }

    #[test]
    fn theorem_check_e1() {
        let rep = theorem_check(&e1(), &CheckOptions::default()).unwrap();
        assert_eq!((rep.colength, rep.fitting_colength, rep.e0), (6, 6, 6));
        assert!(rep.verdicts.all_hold());
        assert_eq!(rep.verdicts.colength_eq_e, Some(true));
        assert!(rep.slices.iter().all(TSlice::acyclic));
    }

    #[test]
    fn sign_flip_is_caught() {
        let opts = CheckOptions {
            inject_sign_flip: true,
            ..Default::default()
        };
        let rep = theorem_check(&e1(), &opts).unwrap();
        assert!(!rep.verdicts.complexes_ok);
        assert_eq!(rep.verdicts.failures(), vec!["complexes_ok"]);
    }

    #[test]
    fn t_range_is_validated() {
        let opts = CheckOptions {
            t_range: Some((-2, 1)),
            ..Default::default()
        };
        assert!(matches!(
            theorem_check(&e1(), &opts),
            Err(Error::TOutOfRange { .. })
        ));
    }

    #[test]
    fn infinite_colength_is_an_error() {
        let m = ModuleMatrix::new(ring(&["x", "y"], vec![]), vec![vec![mono(&[1, 0])]]).unwrap();
        assert!(matches!(
            theorem_check(&m, &CheckOptions::default()),
            Err(Error::InfiniteLength(_))
        ));
    }

    #[test]
    fn spread_on_regular_ring_is_zero() {
        let a = ring(&["x", "y"], vec![]);
        let spec = SamplingSpec {
            samples: 4,
            seed: 7,
            ..Default::default()
        };
        let rep = buchsbaum_spread(&a, 2, &spec).unwrap();
        assert_eq!(rep.differences(), vec![0; 4]);
        assert_eq!(rep, buchsbaum_spread(&a, 2, &spec).unwrap());
    }

    #[test]
    fn spread_on_e2_ring() {
        let spec = SamplingSpec {
            samples: 5,
            seed: 1,
            ..Default::default()
        };
        let rep = buchsbaum_spread(&e2_ring(), 1, &spec).unwrap();
        assert_eq!(rep.histogram(), BTreeMap::from([(1, 5)]));
        let sq = ModuleMatrix::new(e2_ring(), vec![vec![mono(&[0, 2])]]).unwrap();
        let rep = theorem_check(&sq, &CheckOptions::default()).unwrap();
        assert_eq!((rep.colength, rep.e0), (3, 2));
    }
}

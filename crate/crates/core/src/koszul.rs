//! Generalized Koszul complexes `K(a; t)` of an `r x n` matrix.
//!
//! With `F = A^r` (basis `f_1..f_r`) and `G = A^n` (basis `e_1..e_n`):
//!
//! ```text
//! K_p = Λ^(r+p-1) G ⊗ S_(p-t-1) F    for p >= t + 1
//! K_p = Λ^p G ⊗ S_(t-p) F            for p <= t
//! ```
//!
//! and `d_(p+1) : K_(p+1) -> K_p` is `Σ_j δ_j ⊗ f_j^-1` above `t`,
//! `δ_r ∘ ... ∘ δ_1 ⊗ 1` at `t`, and `Σ_j δ_j ⊗ f_j` below `t`, where
//! `δ_i` contracts a wedge product against row `i` of the matrix.
//! `t = 0` gives the Eagon–Northcott complex, `t = 1` the Buchsbaum–Rim
//! complex, and `r = 1` the ordinary Koszul complex.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{GradedRing, RingElement, SubmoduleOfFree};
use crate::vector::VecPoly;

/// An `r x n` matrix over `A` whose columns generate `M ⊆ m F`.
#[derive(Clone, Debug)]
pub struct ModuleMatrix {
    ring: Arc<GradedRing>,
    r: usize,
    n: usize,
    entries: Vec<RingElement>,
}

impl ModuleMatrix {
    /// Rows of polynomials; every entry must be zero or homogeneous of
    /// positive degree, and `n >= r >= 1`.
    pub fn new(ring: Arc<GradedRing>, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidMatrix("matrix has no rows".into()));
        }
        let n = rows[0].len();
        if rows.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMatrix("rows have different lengths".into()));
        }
        if n < r {
            return Err(Error::InvalidMatrix(format!(
                "{r} x {n} matrix: at least as many columns as rows are required"
            )));
        }
        let mut entries = Vec::with_capacity(r * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                ring.poly_ring().check(p)?;
                match p.homogeneous_degree() {
                    Some(None) => {}
                    Some(Some(d)) if d > 0 => {}
                    _ => {
                        return Err(Error::NonHomogeneous(format!(
                            "entry ({}, {}) = {}",
                            i + 1,
                            j + 1,
                            ring.display_poly(p)
                        )))
                    }
                }
                entries.push(ring.element(p));
            }
        }
        Ok(Self {
            ring,
            r,
            n,
            entries,
        })
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    /// Rank of `F`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of columns.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.r)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.entry(i, j).poly().clone())
                    .collect()
            })
            .collect()
    }

    /// Column `c_j = Σ_i a_ij f_i`.
    pub fn column(&self, j: usize) -> VecPoly {
        let comps: Vec<Poly> = (0..self.r)
            .map(|i| self.entry(i, j).poly().clone())
            .collect();
        VecPoly::from_components(&comps)
    }

    pub fn columns(&self) -> Vec<VecPoly> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    pub fn submodule(&self) -> SubmoduleOfFree {
        SubmoduleOfFree::new(&self.ring, self.r, self.columns()).expect("columns already validated")
    }

    /// Length of `K(a; t)` for `t` in the supported range.
    pub fn complex_length(&self) -> usize {
        self.n - self.r + 1
    }
}

/// Basis element `e_(j_1) ∧ ... ∧ e_(j_q)` of `Λ^q G`, indices strictly
/// increasing and 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExteriorIndex(pub Vec<usize>);

impl ExteriorIndex {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// All `q`-subsets of `0..n` in lexicographic order.
    pub fn all(n: usize, q: usize) -> Vec<ExteriorIndex> {
        fn rec(
            start: usize,
            n: usize,
            q: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<ExteriorIndex>,
        ) {
            if cur.len() == q {
                out.push(ExteriorIndex(cur.clone()));
                return;
            }
            for j in start..n {
                if n - j < q - cur.len() {
                    break;
                }
                cur.push(j);
                rec(j + 1, n, q, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if q <= n {
            rec(0, n, q, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for ExteriorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|j| format!("e{}", j + 1)).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// Basis monomial `f_1^μ_1 ... f_r^μ_r` of `S_l F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymIndex(pub Vec<u32>);

impl SymIndex {
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All multidegrees of size `l` in `r` slots, descending
    /// lexicographically (`f_1^l` first).
    pub fn all(r: usize, l: u32) -> Vec<SymIndex> {
        fn rec(slot: usize, r: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<SymIndex>) {
            if slot + 1 == r {
                cur.push(left);
                out.push(SymIndex(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                rec(slot + 1, r, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, r, l, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for SymIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("f{}", i + 1)
                } else {
                    format!("f{}^{e}", i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// `δ_i(e_(j_1) ∧ ... ∧ e_(j_q)) = Σ_k (-1)^(k-1) a_(i j_k) e_(j_1) ∧ ..^.. ∧ e_(j_q)`,
/// with `i` 0-based. Zero coefficients are dropped.
pub fn contraction(
    matrix: &ModuleMatrix,
    i: usize,
    idx: &ExteriorIndex,
) -> Vec<(ExteriorIndex, RingElement)> {
    assert!(i < matrix.r(), "row index out of range");
    let f = matrix.ring().field();
    let mut out = Vec::with_capacity(idx.size());
    for (k, &j) in idx.0.iter().enumerate() {
        let a = matrix.entry(i, j);
        if a.is_zero() {
            continue;
        }
        let mut rest = idx.0.clone();
        rest.remove(k);
        let coeff = if k % 2 == 0 {
            a.clone()
        } else {
            matrix.ring().element(&a.poly().neg(f))
        };
        out.push((ExteriorIndex(rest), coeff));
    }
    out
}

/// `f_i^-1`: lowers `μ_i` by one, or returns `None` (zero) when `μ_i = 0`.
pub fn division_map(i: usize, mu: &SymIndex) -> Option<SymIndex> {
    let mut out = mu.clone();
    if out.0[i] == 0 {
        return None;
    }
    out.0[i] -= 1;
    Some(out)
}

/// Multiplication by `f_i`.
pub fn multiplication_map(i: usize, mu: &SymIndex) -> SymIndex {
    let mut out = mu.clone();
    out.0[i] += 1;
    out
}

/// Shape `(q, l)` of `K_p = Λ^q G ⊗ S_l F`, or `None` when the term is zero.
pub fn term_shape(r: usize, n: usize, t: i64, p: i64) -> Option<(usize, u32)> {
    let (q, l) = if p > t {
        (r as i64 + p - 1, p - t - 1)
    } else {
        (p, t - p)
    };
    if q < 0 || l < 0 || q as usize > n {
        return None;
    }
    Some((q as usize, l as u32))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Closed-form rank of `K_p(a; t)`.
pub fn expected_rank(r: usize, n: usize, t: i64, p: i64) -> u64 {
    match term_shape(r, n, t, p) {
        None => 0,
        Some((q, l)) => {
            binomial(n as u64, q as u64) * binomial(l as u64 + r as u64 - 1, r as u64 - 1)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DifferentialKind {
    /// `Σ_j δ_j ⊗ f_j^-1`
    Division,
    /// `δ_r ∘ ... ∘ δ_1 ⊗ 1`
    Composite,
    /// `Σ_j δ_j ⊗ f_j`
    Multiplication,
}

/// Kind of `d_p : K_p -> K_(p-1)`.
pub fn differential_kind(t: i64, p: i64) -> DifferentialKind {
    let below = p - 1;
    match below.cmp(&t) {
        std::cmp::Ordering::Greater => DifferentialKind::Division,
        std::cmp::Ordering::Equal => DifferentialKind::Composite,
        std::cmp::Ordering::Less => DifferentialKind::Multiplication,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub wedge: ExteriorIndex,
    pub sym: SymIndex,
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.wedge, self.sym)
    }
}

/// Dense matrix over `A`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> VecPoly {
        let comps: Vec<Poly> = (0..self.rows).map(|i| self.get(i, j).clone()).collect();
        VecPoly::from_components(&comps)
    }

    pub fn columns(&self) -> Vec<VecPoly> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// `self * other`, entries reduced modulo the ideal of `ring`.
    pub fn mul(&self, other: &PolyMatrix, ring: &GradedRing) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let f = ring.field();
        let mut out = PolyMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b, f), f);
                    }
                }
                out.set(i, j, ring.reduce(&acc));
            }
        }
        out
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }
}

/// Location of a nonzero entry of `d_p ∘ d_(p+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub p: usize,
    pub row: usize,
    pub col: usize,
}

/// The complex `K(a; t)` restricted to its nonzero terms `0 <= p <= n-r+1`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    matrix: ModuleMatrix,
    t: i64,
    bases: Vec<Vec<BasisElement>>,
    differentials: Vec<PolyMatrix>,
}

impl FreeComplex {
    pub fn ring(&self) -> &Arc<GradedRing> {
        self.matrix.ring()
    }

    pub fn matrix(&self) -> &ModuleMatrix {
        &self.matrix
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    /// Highest homological degree with a nonzero term.
    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn rank(&self, p: usize) -> usize {
        self.bases.get(p).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, p: usize) -> &[BasisElement] {
        &self.bases[p]
    }

    /// `d_p : K_p -> K_(p-1)` for `1 <= p <= top`.
    pub fn differential(&self, p: usize) -> &PolyMatrix {
        assert!(p >= 1 && p <= self.top(), "no differential d_{p}");
        &self.differentials[p - 1]
    }

    /// Negates one differential entry. Exists so that verification can be
    /// shown to catch a corrupted complex.
    pub fn flip_sign(&mut self, p: usize, row: usize, col: usize) {
        let f = *self.ring().field();
        let d = &mut self.differentials[p - 1];
        let v = d.get(row, col).neg(&f);
        d.set(row, col, v);
    }

    /// Portable sparse export: one `p row col polynomial` line per nonzero
    /// entry (tab separated, 0-based indices), after a `#` header line.
    pub fn export_differentials(&self) -> String {
        let ring = self.ring();
        let mut out = format!(
            "# brimlab differentials r={} n={} t={} ranks={:?}\n",
            self.matrix.r(),
            self.matrix.n(),
            self.t,
            self.ranks()
        );
        for p in 1..=self.top() {
            for (i, j, e) in self.differential(p).nonzero_entries() {
                out.push_str(&format!("{p}\t{i}\t{j}\t{}\n", ring.display_poly(e)));
            }
        }
        out
    }
}

/// Builds `K(a; t)` for `-1 <= t <= n - r + 1`.
pub fn build_koszul(matrix: &ModuleMatrix, t: i64) -> Result<FreeComplex> {
    let (r, n) = (matrix.r(), matrix.n());
    let top = matrix.complex_length();
    if t < -1 || t > top as i64 {
        return Err(Error::TOutOfRange {
            t,
            min: -1,
            max: top as i64,
        });
    }
    let bases: Vec<Vec<BasisElement>> = (0..=top as i64)
        .map(|p| {
            let (q, l) = term_shape(r, n, t, p).expect("nonzero inside the supported range");
            let syms = SymIndex::all(r, l);
            ExteriorIndex::all(n, q)
                .into_iter()
                .flat_map(|wedge| {
                    syms.iter().map(move |sym| BasisElement {
                        wedge: wedge.clone(),
                        sym: sym.clone(),
                    })
                })
                .collect()
        })
        .collect();

    let ring = matrix.ring();
    let f = *ring.field();
    let mut differentials = Vec::with_capacity(top);
    for p in 1..=top {
        let index: HashMap<&BasisElement, usize> = bases[p - 1]
            .iter()
            .enumerate()
            .map(|(k, b)| (b, k))
            .collect();
        let mut d = PolyMatrix::zero(bases[p - 1].len(), bases[p].len());
        let add = |d: &mut PolyMatrix, target: BasisElement, col: usize, c: &Poly| {
            let row = *index.get(&target).expect("image lands in the target basis");
            let cur = d.get(row, col).add(c, &f);
            d.set(row, col, cur);
        };
        for (col, src) in bases[p].iter().enumerate() {
            match differential_kind(t, p as i64) {
                DifferentialKind::Division => {
                    for i in 0..r {
                        if let Some(sym) = division_map(i, &src.sym) {
                            for (wedge, c) in contraction(matrix, i, &src.wedge) {
                                add(
                                    &mut d,
                                    BasisElement {
                                        wedge,
                                        sym: sym.clone(),
                                    },
                                    col,
                                    c.poly(),
                                );
                            }
                        }
                    }
                }
                DifferentialKind::Multiplication => {
                    for i in 0..r {
                        let sym = multiplication_map(i, &src.sym);
                        for (wedge, c) in contraction(matrix, i, &src.wedge) {
                            add(
                                &mut d,
                                BasisElement {
                                    wedge,
                                    sym: sym.clone(),
                                },
                                col,
                                c.poly(),
                            );
                        }
                    }
                }
                DifferentialKind::Composite => {
                    // apply δ_1 first, δ_r last
                    let mut combo: Vec<(ExteriorIndex, Poly)> =
                        vec![(src.wedge.clone(), Poly::constant(1))];
                    for i in 0..r {
                        let mut next: HashMap<ExteriorIndex, Poly> = HashMap::new();
                        for (wedge, coeff) in &combo {
                            for (w, c) in contraction(matrix, i, wedge) {
                                let term = coeff.mul(c.poly(), &f);
                                let slot = next.entry(w).or_default();
                                *slot = slot.add(&term, &f);
                            }
                        }
                        combo = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                        combo.sort_by(|a, b| a.0.cmp(&b.0));
                    }
                    for (wedge, c) in combo {
                        add(
                            &mut d,
                            BasisElement {
                                wedge,
                                sym: src.sym.clone(),
                            },
                            col,
                            &c,
                        );
                    }
                }
            }
        }
        for e in d.entries.iter_mut() {
            *e = ring.reduce(e);
        }
        differentials.push(d);
    }

    let complex = FreeComplex {
        matrix: matrix.clone(),
        t,
        bases,
        differentials,
    };
    let violations = verify_complex(&complex);
    assert!(
        violations.is_empty(),
        "d∘d ≠ 0 in freshly built complex: {violations:?}"
    );
    Ok(complex)
}

/// Positions where `d_p ∘ d_(p+1)` is nonzero modulo the ideal.
pub fn verify_complex(c: &FreeComplex) -> Vec<Violation> {
    let mut out = Vec::new();
    for p in 1..c.top() {
        let prod = c.differential(p).mul(c.differential(p + 1), c.ring());
        for (row, col, _) in prod.nonzero_entries() {
            out.push(Violation { p, row, col });
        }
    }
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(ring: &GradedRing, m: &[Vec<Poly>]) -> Poly {
    let f = ring.field();
    match m.len() {
        0 => Poly::constant(1),
        1 => m[0][0].clone(),
        k => {
            let mut acc = Poly::zero();
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&determinant(ring, &minor), f);
                acc = if j % 2 == 0 {
                    acc.add(&term, f)
                } else {
                    acc.sub(&term, f)
                };
            }
            ring.reduce(&acc)
        }
    }
}

/// All `C(n, r)` maximal minors, columns chosen in lexicographic order.
/// They generate the 0-th Fitting ideal of `F / M`.
pub fn fitting_ideal(matrix: &ModuleMatrix) -> Vec<RingElement> {
    let ring = matrix.ring();
    ExteriorIndex::all(matrix.n(), matrix.r())
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<Poly>> = (0..matrix.r())
                .map(|i| {
                    cols.0
                        .iter()
                        .map(|&j| matrix.entry(i, j).poly().clone())
                        .collect()
                })
                .collect();
            ring.element(&determinant(ring, &sub))
        })
        .collect()
}

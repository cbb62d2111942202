//! Dense linear-algebra oracle for lengths of graded modules.
//!
//! Works degree by degree on explicit monomial bases with Gaussian
//! elimination over F_p. Nothing here touches Gröbner bases or the library's
//! polynomial types: polynomials are maps from exponent vectors to residues.

#![allow(dead_code)]

use std::collections::BTreeMap;

pub type OPoly = BTreeMap<Vec<u32>, u64>;

pub struct ORing {
    pub p: u64,
    pub nvars: usize,
    pub ideal: Vec<OPoly>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn degree_of(f: &OPoly) -> Option<u32> {
    f.keys().next().map(|e| e.iter().sum())
}

pub fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monomials(nvars - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn mul(f: &OPoly, g: &OPoly, p: u64) -> OPoly {
    let mut out = OPoly::new();
    for (a, ca) in f {
        for (b, cb) in g {
            let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert(0);
            *slot = (*slot + ca * cb) % p;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn add(f: &OPoly, g: &OPoly, p: u64) -> OPoly {
    let mut out = f.clone();
    for (e, c) in g {
        let slot = out.entry(e.clone()).or_insert(0);
        *slot = (*slot + c) % p;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn scale(f: &OPoly, c: u64, p: u64) -> OPoly {
    let mut out: OPoly = f.iter().map(|(e, v)| (e.clone(), v * c % p)).collect();
    out.retain(|_, c| *c != 0);
    out
}

fn term(e: &[u32]) -> OPoly {
    OPoly::from([(e.to_vec(), 1)])
}

/// Row-echelon span over F_p with on-the-fly insertion.
pub struct Echelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(p: u64) -> Self {
        Self {
            p,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [u64]) {
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + self.p - c * r % self.p) % self.p;
                }
            }
        }
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(v[piv], self.p);
        for x in v.iter_mut() {
            *x = *x * s % self.p;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = (*x + self.p - c * r % self.p) % self.p;
                }
            }
        }
        self.rows.push((piv, v));
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

impl ORing {
    /// `I_deg` as a span inside the monomials of degree `deg`.
    pub fn ideal_part(&self, deg: u32) -> (Vec<Vec<u32>>, Echelon) {
        let monos = monomials(self.nvars, deg);
        let mut ech = Echelon::new(self.p);
        for g in &self.ideal {
            let Some(dg) = degree_of(g) else { continue };
            if dg > deg {
                continue;
            }
            for m in monomials(self.nvars, deg - dg) {
                let prod = mul(g, &term(&m), self.p);
                ech.insert(coords(&monos, &prod));
            }
        }
        (monos, ech)
    }

    pub fn hilbert(&self, deg: u32) -> usize {
        let (monos, ech) = self.ideal_part(deg);
        monos.len() - ech.rank()
    }
}

fn coords(monos: &[Vec<u32>], f: &OPoly) -> Vec<u64> {
    let mut v = vec![0; monos.len()];
    for (e, c) in f {
        let i = monos
            .iter()
            .position(|m| m == e)
            .expect("homogeneous of the right degree");
        v[i] = *c;
    }
    v
}

/// `ℓ(A^rank / N)` for `N` generated by homogeneous vectors (all components
/// of one vector share a degree; the free basis sits in degree 0). Sums
/// Hilbert functions for degrees `0..=max_deg` and returns `None` unless the
/// quotient already vanishes at `max_deg`, which certifies vanishing beyond.
pub fn quotient_length(
    ring: &ORing,
    rank: usize,
    gens: &[Vec<OPoly>],
    max_deg: u32,
) -> Option<u64> {
    let mut total = 0u64;
    let mut last = usize::MAX;
    for deg in 0..=max_deg {
        let (monos, ideal) = ring.ideal_part(deg);
        let block = monos.len();
        let mut ech = Echelon::new(ring.p);
        for c in 0..rank {
            for (_, row) in &ideal.rows {
                let mut v = vec![0; block * rank];
                v[c * block..(c + 1) * block].copy_from_slice(row);
                ech.insert(v);
            }
        }
        for g in gens {
            let Some(dg) = g.iter().filter_map(degree_of).min() else {
                continue;
            };
            if dg > deg {
                continue;
            }
            for m in monomials(ring.nvars, deg - dg) {
                let mut v = vec![0; block * rank];
                for (c, comp) in g.iter().enumerate() {
                    let prod = mul(comp, &term(&m), ring.p);
                    v[c * block..(c + 1) * block].copy_from_slice(&coords(&monos, &prod));
                }
                ech.insert(v);
            }
        }
        last = block * rank - ech.rank();
        total += last as u64;
    }
    (last == 0).then_some(total)
}

/// All multidegrees of total size `n` in `r` slots.
fn multidegrees(r: usize, n: u32) -> Vec<Vec<u32>> {
    monomials(r, n)
}

/// Generators of `R_n(M)` in `S_n(F)`, one per multiset of columns.
pub fn rees_generators(ring: &ORing, columns: &[Vec<OPoly>], n: u32) -> (usize, Vec<Vec<OPoly>>) {
    let r = columns[0].len();
    let basis = multidegrees(r, n);
    let mut out = Vec::new();
    fn multisets(k: usize, n: u32, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n as usize {
            out.push(cur.clone());
            return;
        }
        for j in start..k {
            cur.push(j);
            multisets(k, n, j, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    multisets(columns.len(), n, 0, &mut Vec::new(), &mut sets);
    for set in sets {
        // expand Π_j (Σ_i a_ij f_i) as a map multidegree -> coefficient
        let mut prod: BTreeMap<Vec<u32>, OPoly> =
            BTreeMap::from([(vec![0; r], term(&vec![0; ring.nvars]))]);
        for &j in &set {
            let mut next: BTreeMap<Vec<u32>, OPoly> = BTreeMap::new();
            for (mu, c) in &prod {
                for i in 0..r {
                    if columns[j][i].is_empty() {
                        continue;
                    }
                    let mut nu = mu.clone();
                    nu[i] += 1;
                    let t = mul(c, &columns[j][i], ring.p);
                    let slot = next.entry(nu).or_default();
                    *slot = add(slot, &t, ring.p);
                }
            }
            prod = next;
        }
        let v: Vec<OPoly> = basis
            .iter()
            .map(|mu| prod.get(mu).cloned().unwrap_or_default())
            .collect();
        out.push(v);
    }
    (basis.len(), out)
}

pub fn lambda(ring: &ORing, columns: &[Vec<OPoly>], n: u32, max_deg: u32) -> Option<u64> {
    let (rank, gens) = rees_generators(ring, columns, n);
    quotient_length(ring, rank, &gens, max_deg)
}

/// Determinant by the permutation expansion.
pub fn determinant(m: &[Vec<OPoly>], nvars: usize, p: u64) -> OPoly {
    let r = m.len();
    let mut perm: Vec<usize> = (0..r).collect();
    let mut out = OPoly::new();
    fn permutations(k: usize, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permutations(k + 1, perm, f);
            perm.swap(k, i);
        }
    }
    permutations(0, &mut perm, &mut |s: &[usize]| {
        let inversions = (0..r)
            .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
            .filter(|&(i, j)| s[i] > s[j])
            .count();
        let mut t = term(&vec![0; nvars]);
        let mut zero = false;
        for (i, &j) in s.iter().enumerate() {
            if m[i][j].is_empty() {
                zero = true;
                break;
            }
            t = mul(&t, &m[i][j], p);
        }
        if !zero {
            let t = if inversions % 2 == 1 {
                scale(&t, p - 1, p)
            } else {
                t
            };
            out = add(&out, &t, p);
        }
    });
    out
}

/// Maximal minors of an `r x n` matrix given by rows.
pub fn maximal_minors(rows: &[Vec<OPoly>], nvars: usize, p: u64) -> Vec<OPoly> {
    let (r, n) = (rows.len(), rows[0].len());
    let mut out = Vec::new();
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            subsets(n, k, j + 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    subsets(n, r, 0, &mut Vec::new(), &mut sets);
    for cols in sets {
        let sub: Vec<Vec<OPoly>> = rows
            .iter()
            .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let d = determinant(&sub, nvars, p);
        if !d.is_empty() {
            out.push(d);
        }
    }
    out
}

/// A graded free complex: `diffs[p-1]` is `d_p` as rows x cols of entries,
/// `degrees[p]` the degrees of the basis of `K_p`.
pub struct OComplex {
    pub degrees: Vec<Vec<u32>>,
    pub diffs: Vec<Vec<Vec<OPoly>>>,
}

/// Coordinates of `A_k` elements modulo `I_k`: the non-pivot monomials.
struct Slice {
    monos: Vec<Vec<u32>>,
    ideal: Echelon,
    free: Vec<usize>,
}

impl Slice {
    fn new(ring: &ORing, k: u32) -> Self {
        let (monos, ideal) = ring.ideal_part(k);
        let piv = ideal.pivots();
        let free = (0..monos.len()).filter(|i| !piv.contains(i)).collect();
        Self { monos, ideal, free }
    }

    fn quotient_coords(&self, f: &OPoly) -> Vec<u64> {
        let mut v = coords(&self.monos, f);
        self.ideal.reduce(&mut v);
        self.free.iter().map(|&i| v[i]).collect()
    }
}

/// `(dim K_p, rank d_p)` in internal degree `deg`.
fn rank_in_degree(
    ring: &ORing,
    c: &OComplex,
    p: usize,
    deg: u32,
    slices: &[Slice],
) -> (usize, usize) {
    let width_of = |basis: &[u32]| -> Vec<usize> {
        basis
            .iter()
            .map(|&b| {
                if b <= deg {
                    slices[(deg - b) as usize].free.len()
                } else {
                    0
                }
            })
            .collect()
    };
    let src = width_of(&c.degrees[p]);
    let dim: usize = src.iter().sum();
    if p == 0 || dim == 0 {
        return (dim, 0);
    }
    let tgt = width_of(&c.degrees[p - 1]);
    let mut offsets = Vec::with_capacity(tgt.len());
    let mut width = 0;
    for w in &tgt {
        offsets.push(width);
        width += w;
    }
    let d = &c.diffs[p - 1];
    let mut ech = Echelon::new(ring.p);
    for (col, &b) in c.degrees[p].iter().enumerate() {
        if b > deg {
            continue;
        }
        let s = &slices[(deg - b) as usize];
        for &fi in &s.free {
            let m = term(&s.monos[fi]);
            let mut v = vec![0; width];
            for (row, &rb) in c.degrees[p - 1].iter().enumerate() {
                let entry = &d[row][col];
                if entry.is_empty() || rb > deg {
                    continue;
                }
                let q = slices[(deg - rb) as usize].quotient_coords(&mul(entry, &m, ring.p));
                v[offsets[row]..offsets[row] + q.len()].copy_from_slice(&q);
            }
            ech.insert(v);
        }
    }
    (dim, ech.rank())
}

/// `ℓ(H_p)` for every `p`, summing degrees `0..=max_deg`; `None` when some
/// homology is still nonzero in one of the last three degrees.
pub fn homology_lengths(ring: &ORing, c: &OComplex, max_deg: u32) -> Option<Vec<u64>> {
    let top = c.degrees.len() - 1;
    let slices: Vec<Slice> = (0..=max_deg).map(|k| Slice::new(ring, k)).collect();
    let mut totals = vec![0u64; top + 1];
    for deg in 0..=max_deg {
        let info: Vec<(usize, usize)> = (0..=top)
            .map(|p| rank_in_degree(ring, c, p, deg, &slices))
            .collect();
        for p in 0..=top {
            let out_rank = if p < top { info[p + 1].1 } else { 0 };
            let h = info[p].0 - info[p].1 - out_rank;
            if deg + 3 > max_deg && h != 0 {
                return None;
            }
            totals[p] += h as u64;
        }
    }
    Some(totals)
}

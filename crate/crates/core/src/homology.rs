//! Homology of `K(a; t)` over `A` and its partial Euler–Poincaré
//! characteristics.
//!
//! Everything is computed over `k[x]` with `I` carried along explicitly.
//! A homology module with a homogeneous `m`-primary annihilator has the same
//! length globally as after localizing at `m`, so no truncation is needed.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Length};
use crate::koszul::{fitting_ideal, FreeComplex, PolyMatrix};
use crate::ring::GradedRing;
use crate::vector::VecPoly;

/// `H_p ≅ A^k / J` where `k = kernel_gens.len()`.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    pub p: usize,
    /// Generators of `ker d_p`, already reduced modulo `im d_(p+1) + I K_p`
    /// and nonzero there.
    pub kernel_gens: Vec<VecPoly>,
    /// Gröbner basis of `im d_(p+1) + I K_p` inside `k[x]^(rank K_p)`.
    pub boundaries: GroebnerBasis,
    /// Gröbner basis of `J ⊆ k[x]^k`.
    pub relations: GroebnerBasis,
    pub length: Length,
}

/// Generators over `A` of the kernel of `d : A^a -> A^b`.
pub fn kernel_generators(ring: &GradedRing, d: &PolyMatrix) -> Result<Vec<VecPoly>> {
    let cols = d.columns();
    let target = ring.ideal_times_free(d.rows());
    let gb = ring.relations(d.rows(), &cols, &target, &[])?;
    Ok(gb
        .generators()
        .iter()
        .map(|g| ring.reduce_vec(g))
        .filter(|g| !g.is_zero())
        .collect())
}

pub fn homology(c: &FreeComplex, p: usize) -> Result<HomologyPresentation> {
    assert!(p <= c.top(), "no term K_{p}");
    let ring = c.ring();
    let a = c.rank(p);
    let w = if p < c.top() {
        c.differential(p + 1).columns()
    } else {
        Vec::new()
    };
    let boundaries = ring.submodule_basis(a, &w)?;

    let candidates = if p == 0 {
        (0..a).map(|i| VecPoly::unit(a, i)).collect()
    } else {
        kernel_generators(ring, c.differential(p))?
    };
    let mut kernel_gens: Vec<VecPoly> = Vec::new();
    for u in candidates {
        let u = boundaries.normal_form(&u);
        if !u.is_zero() && !kernel_gens.contains(&u) {
            kernel_gens.push(u);
        }
    }

    let relations = if kernel_gens.is_empty() {
        GroebnerBasis::from_reduced(*ring.poly_ring(), 0, Vec::new(), Vec::new(), 0)
    } else {
        let mut untagged = w;
        untagged.extend(ring.ideal_times_free(a));
        ring.relations(a, &kernel_gens, &untagged, &[])?
    };
    let length = relations.colength();
    Ok(HomologyPresentation {
        p,
        kernel_gens,
        boundaries,
        relations,
        length,
    })
}

/// Presentations of every `H_p`, `0 <= p <= top`, in order of `p`.
pub fn all_homology(c: &FreeComplex) -> Result<Vec<HomologyPresentation>> {
    (0..=c.top())
        .into_par_iter()
        .map(|p| homology(c, p))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTable {
    pub t: i64,
    /// `lengths[p] = ℓ(H_p)`
    pub lengths: Vec<u64>,
    /// `chis[q] = χ_q = Σ_(p >= q) (-1)^(p-q) ℓ(H_p)`
    pub chis: Vec<i64>,
}

impl EulerTable {
    pub fn from_lengths(t: i64, lengths: Vec<u64>) -> Self {
        let mut chis = vec![0i64; lengths.len()];
        let mut acc = 0i64;
        for q in (0..lengths.len()).rev() {
            acc = lengths[q] as i64 - acc;
            chis[q] = acc;
        }
        Self { t, lengths, chis }
    }

    pub fn chi(&self, q: usize) -> i64 {
        self.chis.get(q).copied().unwrap_or(0)
    }
}

fn finite_lengths(c: &FreeComplex, hs: &[HomologyPresentation]) -> Result<Vec<u64>> {
    hs.iter()
        .map(|h| {
            h.length
                .finite()
                .ok_or(Error::InfiniteHomology { p: h.p, t: c.t() })
        })
        .collect()
}

pub fn euler_characteristics(c: &FreeComplex) -> Result<EulerTable> {
    let hs = all_homology(c)?;
    Ok(EulerTable::from_lengths(c.t(), finite_lengths(c, &hs)?))
}

/// A maximal minor `g` and kernel generator `u` with `g u ∉ im d_(p+1) + I K_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnnihilationViolation {
    pub p: usize,
    pub minor: usize,
    pub generator: usize,
}

/// Checks that every maximal minor kills every homology module.
pub fn annihilation_violations(
    c: &FreeComplex,
    hs: &[HomologyPresentation],
) -> Vec<AnnihilationViolation> {
    let minors = fitting_ideal(c.matrix());
    let f = c.ring().field();
    let mut out = Vec::new();
    for h in hs {
        for (mi, g) in minors.iter().enumerate() {
            for (gi, u) in h.kernel_gens.iter().enumerate() {
                if !h.boundaries.normal_form(&u.mul_poly(g.poly(), f)).is_zero() {
                    out.push(AnnihilationViolation {
                        p: h.p,
                        minor: mi,
                        generator: gi,
                    });
                }
            }
        }
    }
    out
}

pub fn annihilation_check(c: &FreeComplex) -> Result<Vec<AnnihilationViolation>> {
    Ok(annihilation_violations(c, &all_homology(c)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    /// `(p, ℓ(H_p))` for `p >= 1`
    pub lengths: Vec<(usize, u64)>,
    pub acyclic: bool,
}

pub fn acyclicity_report(c: &FreeComplex) -> Result<AcyclicityReport> {
    let hs: Vec<HomologyPresentation> = (1..=c.top())
        .into_par_iter()
        .map(|p| homology(c, p))
        .collect::<Result<_>>()?;
    let lengths: Vec<(usize, u64)> = hs
        .iter()
        .map(|h| h.p)
        .zip(finite_lengths(c, &hs)?)
        .collect();
    let acyclic = lengths.iter().all(|&(_, l)| l == 0);
    Ok(AcyclicityReport { lengths, acyclic })
}

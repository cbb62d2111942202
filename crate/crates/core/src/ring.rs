//! Standard-graded quotient rings `A = F_p[x_1..x_m] / I` and lengths of
//! their finite-length modules.
//!
//! Every module handled here is homogeneous, so a quotient of finite length
//! is supported at the irrelevant ideal only and its global `k`-dimension
//! (a standard-monomial count) equals its length over the localization.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{buchberger, Budget, GroebnerBasis, Length};
use crate::monomial::{monomial_ideal_dimension, Monomial};
use crate::poly::{Poly, PolyRing};
use crate::syzygy::relation_basis;
use crate::vector::VecPoly;

/// Counters shared by every computation over one ring.
#[derive(Debug, Default)]
pub struct Telemetry {
    pairs: AtomicU64,
    bases: AtomicU64,
}

impl Telemetry {
    pub fn record(&self, gb: &GroebnerBasis) {
        self.pairs
            .fetch_add(gb.pairs_processed(), Ordering::Relaxed);
        self.bases.fetch_add(1, Ordering::Relaxed);
    }

    pub fn pairs(&self) -> u64 {
        self.pairs.load(Ordering::Relaxed)
    }

    pub fn bases(&self) -> u64 {
        self.bases.load(Ordering::Relaxed)
    }
}

/// Element of `A`, kept in normal form modulo the ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElement(Poly);

impl RingElement {
    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[derive(Debug)]
pub struct GradedRing {
    ring: PolyRing,
    vars: Vec<String>,
    ideal_gens: Vec<Poly>,
    gb: GroebnerBasis,
    dim: usize,
    budget: Budget,
    telemetry: Arc<Telemetry>,
}

impl GradedRing {
    /// Builds `F_p[vars] / (ideal_gens)` with the default budget.
    pub fn new(p: u64, vars: Vec<String>, ideal_gens: Vec<Poly>) -> Result<Self> {
        Self::with_budget(p, vars, ideal_gens, Budget::default())
    }

    pub fn with_budget(
        p: u64,
        vars: Vec<String>,
        ideal_gens: Vec<Poly>,
        budget: Budget,
    ) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let ring = PolyRing::new(field, vars.len())?;
        let mut gens = Vec::new();
        for (i, g) in ideal_gens.into_iter().enumerate() {
            ring.check(&g)?;
            match g.homogeneous_degree() {
                Some(None) => continue,
                Some(Some(d)) if d > 0 => gens.push(g),
                _ => {
                    return Err(Error::NonHomogeneous(format!(
                        "ideal generator {} = {}",
                        i + 1,
                        g.display(&vars, &field)
                    )))
                }
            }
        }
        let lifted: Vec<VecPoly> = gens.iter().map(|g| VecPoly::from_poly(1, 0, g)).collect();
        let gb = buchberger(&ring, 1, &lifted, &budget)?;
        let leads: Vec<Monomial> = gb.lead_terms().iter().map(|m| m.mono).collect();
        let dim = monomial_ideal_dimension(&leads, vars.len());
        if dim == 0 {
            return Err(Error::ZeroDimensional);
        }
        let telemetry = Arc::new(Telemetry::default());
        telemetry.record(&gb);
        Ok(Self {
            ring,
            vars,
            ideal_gens: gens,
            gb,
            dim,
            budget,
            telemetry,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.ring.field
    }

    pub fn poly_ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn ideal_gens(&self) -> &[Poly] {
        &self.ideal_gens
    }

    pub fn ideal_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Krull dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn telemetry(&self) -> &Telemetry {
        &self.telemetry
    }

    pub fn display_poly(&self, p: &Poly) -> String {
        p.display(&self.vars, self.field()).to_string()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        self.gb
            .normal_form(&VecPoly::from_poly(1, 0, p))
            .component(0)
    }

    pub fn element(&self, p: &Poly) -> RingElement {
        RingElement(self.reduce(p))
    }

    /// Componentwise normal form modulo `I`.
    pub fn reduce_vec(&self, v: &VecPoly) -> VecPoly {
        let comps: Vec<Poly> = v.components().iter().map(|c| self.reduce(c)).collect();
        VecPoly::from_components(&comps)
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.element(&a.0.mul(&b.0, self.field()))
    }

    /// Generators `g * e_j` of `I * k[x]^rank`, one per basis element of I.
    pub fn ideal_times_free(&self, rank: usize) -> Vec<VecPoly> {
        let mut out = Vec::with_capacity(rank * self.gb.generators().len());
        for j in 0..rank {
            for g in self.gb.generators() {
                out.push(VecPoly::from_poly(rank, j, &g.component(0)));
            }
        }
        out
    }

    /// Gröbner basis over `k[x]` of the preimage of the submodule of `A^rank`
    /// generated by `gens`.
    pub fn submodule_basis(&self, rank: usize, gens: &[VecPoly]) -> Result<GroebnerBasis> {
        let mut all: Vec<VecPoly> = gens.to_vec();
        all.extend(self.ideal_times_free(rank));
        self.groebner(rank, &all)
    }

    pub fn groebner(&self, rank: usize, gens: &[VecPoly]) -> Result<GroebnerBasis> {
        let gb = buchberger(&self.ring, rank, gens, &self.budget)?;
        self.telemetry.record(&gb);
        Ok(gb)
    }

    /// Relation module over `k[x]`, see [`relation_basis`].
    pub fn relations(
        &self,
        rank: usize,
        tagged: &[VecPoly],
        untagged: &[VecPoly],
        extra: &[VecPoly],
    ) -> Result<GroebnerBasis> {
        let gb = relation_basis(&self.ring, rank, tagged, untagged, extra, &self.budget)?;
        self.telemetry.record(&gb);
        Ok(gb)
    }

    /// `l_A(A / J)`.
    pub fn ideal_colength(&self, gens: &[RingElement]) -> Result<Length> {
        let lifted: Vec<VecPoly> = gens
            .iter()
            .map(|g| VecPoly::from_poly(1, 0, &g.0))
            .collect();
        Ok(self.submodule_basis(1, &lifted)?.colength())
    }

    /// `l_A(A^s / N)`.
    pub fn submodule_colength(&self, n: &SubmoduleOfFree) -> Result<Length> {
        Ok(self.submodule_basis(n.rank, &n.generators)?.colength())
    }

    /// Generators `x_i * c_j` of `m N`.
    pub fn maximal_ideal_times(&self, n: &SubmoduleOfFree) -> Vec<VecPoly> {
        let f = self.field();
        let mut out = Vec::new();
        for c in &n.generators {
            for i in 0..self.nvars() {
                out.push(self.reduce_vec(&c.mul_term(1, &Monomial::var(i), f)));
            }
        }
        out
    }

    /// Minimal number of generators `mu(N) = l(A^s / m N) - l(A^s / N)`.
    pub fn min_generators(&self, n: &SubmoduleOfFree) -> Result<usize> {
        let outer = self.submodule_colength(n)?;
        let Length::Finite(outer) = outer else {
            return Err(Error::InfiniteLength(format!("A^{} / N", n.rank)));
        };
        let inner = self
            .submodule_basis(n.rank, &self.maximal_ideal_times(n))?
            .colength();
        let inner = inner
            .finite()
            .expect("m N has finite colength whenever N does");
        Ok((inner - outer) as usize)
    }

    /// The three defining conditions of a parameter module in `A^r`.
    pub fn is_parameter_module(&self, r: usize, n: &SubmoduleOfFree) -> Result<ParameterVerdict> {
        if n.rank != r {
            return Err(Error::InvalidMatrix(format!(
                "module lives in rank {}, expected rank {r}",
                n.rank
            )));
        }
        let colength = self.submodule_colength(n)?;
        let inside_max = n.inside_maximal_ideal();
        let expected_generators = self.dim + r - 1;
        let min_generators = if colength.is_finite() {
            Some(self.min_generators(n)?)
        } else {
            None
        };
        Ok(ParameterVerdict {
            colength,
            finite_colength: colength.is_finite(),
            inside_max,
            min_generators,
            expected_generators,
            is_parameter: colength.is_finite()
                && inside_max
                && min_generators == Some(expected_generators),
        })
    }
}

/// A submodule of `A^rank` given by generating columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleOfFree {
    rank: usize,
    generators: Vec<VecPoly>,
}

impl SubmoduleOfFree {
    /// Columns are reduced modulo the ideal of `ring`.
    pub fn new(ring: &GradedRing, rank: usize, generators: Vec<VecPoly>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidMatrix("ambient rank must be positive".into()));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.rank() != rank {
                return Err(Error::InvalidMatrix(format!(
                    "generator of rank {} in A^{rank}",
                    g.rank()
                )));
            }
            for c in g.components() {
                ring.poly_ring().check(&c)?;
            }
            gens.push(ring.reduce_vec(&g));
        }
        Ok(Self {
            rank,
            generators: gens,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[VecPoly] {
        &self.generators
    }

    /// Number of given generators `n`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `N ⊆ m F`: every entry has positive degree in each of its terms.
    pub fn inside_maximal_ideal(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.terms().iter().all(|(m, _)| m.mono.degree() > 0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterVerdict {
    pub colength: Length,
    pub finite_colength: bool,
    pub inside_max: bool,
    pub min_generators: Option<usize>,
    pub expected_generators: usize,
    pub is_parameter: bool,
}

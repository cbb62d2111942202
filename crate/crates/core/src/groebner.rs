//! Buchberger's algorithm for submodules of `k[x]^s`, normal forms and
//! standard-monomial counting.

use std::fmt;

use crate::error::AlgebraError;
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::PolyRing;
use crate::vector::{sub_multiple, ModMonomial, MonomialOrder, VecPoly};

/// Resource limits for a single Gröbner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of S-pairs reduced.
    pub max_pairs: u64,
    /// Maximum total degree of an S-pair lcm or an input term.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_pairs: 200_000,
            max_degree: 60,
        }
    }
}

/// A length that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Reduced Gröbner basis of a submodule of `k[x]^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: PolyRing,
    rank: usize,
    order: MonomialOrder,
    generators: Vec<VecPoly>,
    source: Vec<VecPoly>,
    pairs_processed: u64,
}

impl GroebnerBasis {
    /// Wraps elements already known to form a reduced basis.
    pub(crate) fn from_reduced(
        ring: PolyRing,
        rank: usize,
        mut generators: Vec<VecPoly>,
        source: Vec<VecPoly>,
        pairs_processed: u64,
    ) -> Self {
        generators.sort_by_key(|g| g.lead().unwrap().0);
        Self {
            ring,
            rank,
            order: MonomialOrder::default(),
            generators,
            source,
            pairs_processed,
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &PrimeField {
        &self.ring.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Basis elements, monic, sorted ascending by leading term.
    pub fn generators(&self) -> &[VecPoly] {
        &self.generators
    }

    pub fn source(&self) -> &[VecPoly] {
        &self.source
    }

    pub fn pairs_processed(&self) -> u64 {
        self.pairs_processed
    }

    pub fn lead_terms(&self) -> Vec<ModMonomial> {
        self.generators
            .iter()
            .map(|g| g.lead().expect("nonzero").0)
            .collect()
    }

    pub fn normal_form(&self, v: &VecPoly) -> VecPoly {
        assert_eq!(v.rank(), self.rank, "ambient rank mismatch");
        let reducer = Reducer::new(
            &self.ring.field,
            self.rank,
            &self.generators,
            0..self.generators.len(),
        );
        reducer.reduce(v)
    }

    pub fn contains(&self, v: &VecPoly) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Checks Buchberger's criterion directly: every S-pair reduces to zero.
    pub fn all_spairs_reduce(&self) -> bool {
        let f = &self.ring.field;
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                if let Some(s) = spoly(&self.generators[i], &self.generators[j], f) {
                    if !self.normal_form(&s).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Number of standard module monomials `x^a e_c` outside the lead-term
    /// module, i.e. `dim_k k[x]^rank / M`.
    pub fn colength(&self) -> Length {
        let nvars = self.ring.nvars;
        let mut total = 0u64;
        for comp in 0..self.rank {
            let leads: Vec<Monomial> = self
                .generators
                .iter()
                .map(|g| g.lead().expect("nonzero").0)
                .filter(|m| m.comp as usize == comp)
                .map(|m| m.mono)
                .collect();
            match count_standard_monomials(&leads, nvars) {
                Length::Finite(n) => total += n,
                Length::Infinite => return Length::Infinite,
            }
        }
        Length::Finite(total)
    }
}

/// Counts monomials in `nvars` variables divisible by no element of `leads`.
pub fn count_standard_monomials(leads: &[Monomial], nvars: usize) -> Length {
    if leads.iter().any(|m| m.is_one()) {
        return Length::Finite(0);
    }
    let mut bounds = vec![u32::MAX; nvars];
    for m in leads {
        if let Some((i, e)) = m.pure_power() {
            if i < nvars {
                bounds[i] = bounds[i].min(e);
            }
        }
    }
    if bounds.contains(&u32::MAX) {
        return Length::Infinite;
    }
    fn rec(var: usize, exps: &mut Vec<u32>, bounds: &[u32], leads: &[Monomial]) -> u64 {
        if var == bounds.len() {
            return 1;
        }
        let mut count = 0;
        for e in 0..bounds[var] {
            exps[var] = e;
            let m = Monomial::from_exponents(exps).expect("bounded exponents");
            if leads.iter().any(|l| l.divides(&m)) {
                // later variables are zero here, so every extension is divisible
                break;
            }
            count += rec(var + 1, exps, bounds, leads);
        }
        exps[var] = 0;
        count
    }
    let mut exps = vec![0u32; nvars];
    Length::Finite(rec(0, &mut exps, &bounds, leads))
}

struct Reducer<'a> {
    field: &'a PrimeField,
    polys: &'a [VecPoly],
    by_comp: Vec<Vec<usize>>,
}

impl<'a> Reducer<'a> {
    fn new(
        field: &'a PrimeField,
        rank: usize,
        polys: &'a [VecPoly],
        active: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut by_comp = vec![Vec::new(); rank];
        for i in active {
            let lead = polys[i].lead().expect("reducers are nonzero").0;
            by_comp[lead.comp as usize].push(i);
        }
        Self {
            field,
            polys,
            by_comp,
        }
    }

    fn find(&self, m: &ModMonomial) -> Option<&VecPoly> {
        self.by_comp[m.comp as usize]
            .iter()
            .map(|&i| &self.polys[i])
            .find(|g| g.lead().expect("nonzero").0.mono.divides(&m.mono))
    }

    /// Full normal form; reducers are monic.
    fn reduce(&self, v: &VecPoly) -> VecPoly {
        let mut work: Vec<(ModMonomial, u32)> = v.terms().to_vec();
        let mut rem = Vec::new();
        let mut pos = 0;
        while pos < work.len() {
            let (m, c) = work[pos];
            match self.find(&m) {
                Some(g) => {
                    let q = g
                        .lead()
                        .expect("nonzero")
                        .0
                        .mono
                        .quotient_of(&m.mono)
                        .expect("divides");
                    work = sub_multiple(&work[pos..], g.terms(), c, &q, self.field);
                    pos = 0;
                }
                None => {
                    rem.push((m, c));
                    pos += 1;
                }
            }
        }
        VecPoly::from_sorted_terms(v.rank(), rem)
    }
}

/// S-vector of two monic elements with leading terms in the same component.
fn spoly(a: &VecPoly, b: &VecPoly, field: &PrimeField) -> Option<VecPoly> {
    let (la, _) = *a.lead()?;
    let (lb, _) = *b.lead()?;
    if la.comp != lb.comp {
        return None;
    }
    let l = la.mono.lcm(&lb.mono);
    let qa = la.mono.quotient_of(&l).expect("divides lcm");
    let qb = lb.mono.quotient_of(&l).expect("divides lcm");
    Some(
        a.mul_term(1, &qa, field)
            .sub(&b.mul_term(1, &qb, field), field),
    )
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ModMonomial,
}

struct Engine<'a> {
    field: &'a PrimeField,
    rank: usize,
    product_criterion: bool,
    polys: Vec<VecPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine<'_> {
    fn lead(&self, i: usize) -> ModMonomial {
        self.polys[i].lead().expect("nonzero").0
    }

    fn reduce(&self, v: &VecPoly) -> VecPoly {
        Reducer::new(
            self.field,
            self.rank,
            &self.polys,
            self.active.iter().copied(),
        )
        .reduce(v)
    }

    /// Gebauer–Möller installation of a new basis element.
    fn update(&mut self, h: VecPoly) {
        let hi = self.polys.len();
        self.polys.push(h);
        let hl = self.lead(hi);
        let disjoint = |g: ModMonomial| self.product_criterion && hl.mono.is_coprime(&g.mono);

        let cands: Vec<(usize, ModMonomial, bool)> = self
            .active
            .iter()
            .map(|&g| (g, self.lead(g)))
            .filter(|(_, gl)| gl.comp == hl.comp)
            .map(|(g, gl)| {
                (
                    g,
                    ModMonomial {
                        comp: hl.comp,
                        mono: hl.mono.lcm(&gl.mono),
                    },
                    disjoint(gl),
                )
            })
            .collect();

        let mut kept: Vec<(usize, ModMonomial, bool)> = Vec::new();
        for (k, &(g, l, dis)) in cands.iter().enumerate() {
            let dominated = cands[k + 1..]
                .iter()
                .any(|(_, l2, _)| l2.mono.divides(&l.mono))
                || kept.iter().any(|(_, l2, _)| l2.mono.divides(&l.mono));
            if dis || !dominated {
                kept.push((g, l, dis));
            }
        }

        let polys = &self.polys;
        let lead_of = |i: usize| polys[i].lead().expect("nonzero").0;
        self.pairs.retain(|p| {
            if !hl.divides(&p.lcm) {
                return true;
            }
            let li = lead_of(p.i).mono.lcm(&hl.mono);
            let lj = lead_of(p.j).mono.lcm(&hl.mono);
            li == p.lcm.mono || lj == p.lcm.mono
        });
        self.pairs.extend(
            kept.into_iter()
                .filter(|(_, _, dis)| !dis)
                .map(|(g, l, _)| Pair {
                    i: g,
                    j: hi,
                    lcm: l,
                }),
        );

        self.active.retain(|&g| !hl.divides(&lead_of(g)));
        self.active.push(hi);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .mono
                    .degree()
                    .cmp(&b.lcm.mono.degree())
                    .then_with(|| a.lcm.cmp(&b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens` under
/// position-over-term degrevlex.
pub fn buchberger(
    ring: &PolyRing,
    rank: usize,
    gens: &[VecPoly],
    budget: &Budget,
) -> Result<GroebnerBasis, AlgebraError> {
    let field = &ring.field;
    for g in gens {
        if g.rank() != rank {
            return Err(AlgebraError::ContextMismatch(format!(
                "generator of rank {} in ambient rank {rank}",
                g.rank()
            )));
        }
        if g.degree().unwrap_or(0) > budget.max_degree {
            return Err(AlgebraError::BudgetExceeded {
                what: "degree",
                limit: budget.max_degree as u64,
            });
        }
    }

    let mut inputs: Vec<&VecPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    inputs.sort_by(|a, b| {
        let (la, lb) = (a.lead().unwrap().0, b.lead().unwrap().0);
        la.mono
            .degree()
            .cmp(&lb.mono.degree())
            .then_with(|| la.cmp(&lb))
    });

    let mut engine = Engine {
        field,
        rank,
        product_criterion: rank == 1,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in inputs {
        let h = engine.reduce(g);
        if !h.is_zero() {
            engine.update(h.make_monic(field));
        }
    }

    let mut processed = 0u64;
    while let Some(pair) = engine.pop_pair() {
        processed += 1;
        if processed > budget.max_pairs {
            return Err(AlgebraError::BudgetExceeded {
                what: "S-pairs",
                limit: budget.max_pairs,
            });
        }
        if pair.lcm.mono.degree() > budget.max_degree {
            return Err(AlgebraError::BudgetExceeded {
                what: "degree",
                limit: budget.max_degree as u64,
            });
        }
        let s = spoly(&engine.polys[pair.i], &engine.polys[pair.j], field).expect("same component");
        let h = engine.reduce(&s);
        if !h.is_zero() {
            engine.update(h.make_monic(field));
        }
    }

    // interreduce tails against the minimal basis
    let reducer = Reducer::new(field, rank, &engine.polys, engine.active.iter().copied());
    let mut generators: Vec<VecPoly> = engine
        .active
        .iter()
        .map(|&i| {
            let g = &engine.polys[i];
            let (lm, lc) = *g.lead().unwrap();
            let tail = VecPoly::from_sorted_terms(rank, g.terms()[1..].to_vec());
            let mut terms = vec![(lm, lc)];
            terms.extend_from_slice(reducer.reduce(&tail).terms());
            VecPoly::from_sorted_terms(rank, terms)
        })
        .collect();
    generators.sort_by_key(|g| g.lead().unwrap().0);

    Ok(GroebnerBasis {
        ring: *ring,
        rank,
        order: MonomialOrder::default(),
        generators,
        source: gens.to_vec(),
        pairs_processed: processed,
    })
}

//! Syzygies and relation modules by elimination of tag components.
//!
//! Each tagged generator `g_i` is lifted to `g_i + eps_i` in
//! `k[x]^(s + k)`. Under position-over-term the original components
//! outrank the tags, so the basis elements that vanish on the original
//! components form a Gröbner basis of the relation module.

use crate::error::AlgebraError;
use crate::groebner::{buchberger, Budget, GroebnerBasis};
use crate::poly::PolyRing;
use crate::vector::VecPoly;

/// Gröbner basis (in `k[x]^k`, `k = tagged.len()`) of
/// `{ c : sum c_i tagged_i in <untagged> } + <extra>`.
///
/// `tagged` and `untagged` live in `k[x]^rank`; `extra` lives in `k[x]^k`
/// and is added to the relation module as-is.
pub fn relation_basis(
    ring: &PolyRing,
    rank: usize,
    tagged: &[VecPoly],
    untagged: &[VecPoly],
    extra: &[VecPoly],
    budget: &Budget,
) -> Result<GroebnerBasis, AlgebraError> {
    let k = tagged.len();
    let total = rank + k;
    let mut gens = Vec::with_capacity(k + untagged.len() + extra.len());
    for (i, g) in tagged.iter().enumerate() {
        check_rank(g, rank)?;
        gens.push(
            g.shifted(0, total)
                .add(&VecPoly::unit(total, rank + i), &ring.field),
        );
    }
    for g in untagged {
        check_rank(g, rank)?;
        gens.push(g.shifted(0, total));
    }
    for e in extra {
        check_rank(e, k)?;
        gens.push(e.shifted(rank, total));
    }
    let full = buchberger(ring, total, &gens, budget)?;
    let harvested: Vec<VecPoly> = full
        .generators()
        .iter()
        .filter(|g| g.lead().is_some_and(|(m, _)| m.comp as usize >= rank))
        .map(|g| g.project(rank, k))
        .collect();
    Ok(GroebnerBasis::from_reduced(
        *ring,
        k,
        harvested.clone(),
        harvested,
        full.pairs_processed(),
    ))
}

fn check_rank(v: &VecPoly, rank: usize) -> Result<(), AlgebraError> {
    if v.rank() != rank {
        return Err(AlgebraError::ContextMismatch(format!(
            "vector of rank {} where rank {rank} expected",
            v.rank()
        )));
    }
    Ok(())
}

/// Generators of the syzygy module `{ a : sum a_i gens_i = 0 }` in `k[x]^k`.
pub fn syzygy_basis(
    ring: &PolyRing,
    rank: usize,
    gens: &[VecPoly],
    budget: &Budget,
) -> Result<Vec<VecPoly>, AlgebraError> {
    Ok(relation_basis(ring, rank, gens, &[], &[], budget)?
        .generators()
        .to_vec())
}

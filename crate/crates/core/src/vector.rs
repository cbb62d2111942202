//! Elements of free modules `k[x]^s`.

use std::cmp::Ordering;
use std::fmt;

use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::Poly;

/// Term orders in use. Ring monomials are always compared by degrevlex;
/// module monomials are compared position-over-term with `e_1 > e_2 > ...`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    PositionOverDegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &ModMonomial, b: &ModMonomial) -> Ordering {
        match self {
            MonomialOrder::PositionOverDegRevLex => a.cmp(b),
        }
    }
}

/// A monomial `x^a * e_comp` of a free module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModMonomial {
    pub comp: u32,
    pub mono: Monomial,
}

impl ModMonomial {
    pub fn new(comp: usize, mono: Monomial) -> Self {
        Self {
            comp: comp as u32,
            mono,
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.comp == other.comp && self.mono.divides(&other.mono)
    }
}

impl Ord for ModMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .comp
            .cmp(&self.comp)
            .then_with(|| self.mono.cmp(&other.mono))
    }
}

impl PartialOrd for ModMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `k[x]^rank`, stored as one sorted list of module terms
/// (descending, no zero coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VecPoly {
    rank: usize,
    terms: Vec<(ModMonomial, u32)>,
}

impl VecPoly {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: Vec::new(),
        }
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        assert!(i < rank);
        Self {
            rank,
            terms: vec![(ModMonomial::new(i, Monomial::one()), 1)],
        }
    }

    /// `p * e_i`.
    pub fn from_poly(rank: usize, i: usize, p: &Poly) -> Self {
        assert!(i < rank);
        Self {
            rank,
            terms: p
                .terms()
                .iter()
                .map(|&(m, c)| (ModMonomial::new(i, m), c))
                .collect(),
        }
    }

    pub fn from_components(components: &[Poly]) -> Self {
        let rank = components.len();
        let mut terms = Vec::new();
        for (i, p) in components.iter().enumerate() {
            terms.extend(p.terms().iter().map(|&(m, c)| (ModMonomial::new(i, m), c)));
        }
        Self { rank, terms }
    }

    /// Canonicalizes arbitrary terms.
    pub fn from_terms(rank: usize, field: &PrimeField, mut terms: Vec<(ModMonomial, u32)>) -> Self {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(ModMonomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            assert!((m.comp as usize) < rank, "component out of range");
            let c = field.from_u64(c as u64);
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { rank, terms: out }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[(ModMonomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(ModMonomial, u32)> {
        self.terms.first()
    }

    pub fn component(&self, i: usize) -> Poly {
        // terms of one component are contiguous and already sorted
        Poly::from_sorted_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.comp as usize == i)
                .map(|&(m, c)| (m.mono, c))
                .collect(),
        )
    }

    pub fn components(&self) -> Vec<Poly> {
        let mut out = vec![Vec::new(); self.rank];
        for &(m, c) in &self.terms {
            out[m.comp as usize].push((m.mono, c));
        }
        out.into_iter().map(Poly::from_sorted_terms).collect()
    }

    /// Largest total degree among terms.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.mono.degree()).max()
    }

    /// `self + c * other`.
    pub fn combine(&self, other: &Self, field: &PrimeField, c: u32) -> Self {
        debug_assert_eq!(self.rank, other.rank);
        if c == 0 {
            return self.clone();
        }
        Self {
            rank: self.rank,
            terms: merge(&self.terms, &other.terms, field, c),
        }
    }

    pub fn add(&self, other: &Self, field: &PrimeField) -> Self {
        self.combine(other, field, 1)
    }

    pub fn sub(&self, other: &Self, field: &PrimeField) -> Self {
        self.combine(other, field, field.neg(1))
    }

    pub fn scale(&self, c: u32, field: &PrimeField) -> Self {
        if c == 0 {
            return Self::zero(self.rank);
        }
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|&(m, v)| (m, field.mul(c, v)))
                .collect(),
        }
    }

    pub fn mul_term(&self, c: u32, mono: &Monomial, field: &PrimeField) -> Self {
        if c == 0 {
            return Self::zero(self.rank);
        }
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|&(m, v)| {
                    (
                        ModMonomial {
                            comp: m.comp,
                            mono: m.mono.mul(mono),
                        },
                        field.mul(c, v),
                    )
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly, field: &PrimeField) -> Self {
        let mut acc = Self::zero(self.rank);
        for (m, c) in p.terms() {
            acc = acc.add(&self.mul_term(*c, m, field), field);
        }
        acc
    }

    pub fn make_monic(&self, field: &PrimeField) -> Self {
        match self.lead() {
            Some(&(_, c)) if c != 1 => self.scale(field.inv(c), field),
            _ => self.clone(),
        }
    }

    /// Re-embeds into rank `new_rank` with components shifted by `offset`.
    pub fn shifted(&self, offset: usize, new_rank: usize) -> Self {
        assert!(self.rank + offset <= new_rank);
        Self {
            rank: new_rank,
            terms: self
                .terms
                .iter()
                .map(|&(m, c)| {
                    (
                        ModMonomial {
                            comp: m.comp + offset as u32,
                            mono: m.mono,
                        },
                        c,
                    )
                })
                .collect(),
        }
    }

    /// Restriction to components `[start, start + len)`, renumbered from 0.
    pub fn project(&self, start: usize, len: usize) -> Self {
        Self {
            rank: len,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (m.comp as usize) >= start && (m.comp as usize) < start + len)
                .map(|&(m, c)| {
                    (
                        ModMonomial {
                            comp: m.comp - start as u32,
                            mono: m.mono,
                        },
                        c,
                    )
                })
                .collect(),
        }
    }

    pub fn display<'a>(&'a self, vars: &'a [String], field: &'a PrimeField) -> VecPolyDisplay<'a> {
        VecPolyDisplay {
            v: self,
            vars,
            field,
        }
    }
}

/// `a - c * mono * b` for descending term lists; multiplying by a monomial
/// keeps `b` sorted.
pub(crate) fn sub_multiple(
    a: &[(ModMonomial, u32)],
    b: &[(ModMonomial, u32)],
    c: u32,
    mono: &Monomial,
    field: &PrimeField,
) -> Vec<(ModMonomial, u32)> {
    let neg = field.neg(c);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |t: &(ModMonomial, u32)| ModMonomial {
        comp: t.0.comp,
        mono: t.0.mono.mul(mono),
    };
    while i < a.len() && j < b.len() {
        let bm = shifted(&b[j]);
        match a[i].0.cmp(&bm) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, field.mul(neg, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(a[i].1, field.mul(neg, b[j].1));
                if s != 0 {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|t| (shifted(t), field.mul(neg, t.1))));
    out
}

impl VecPoly {
    pub(crate) fn from_sorted_terms(rank: usize, terms: Vec<(ModMonomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Self { rank, terms }
    }
}

fn merge(
    a: &[(ModMonomial, u32)],
    b: &[(ModMonomial, u32)],
    field: &PrimeField,
    c: u32,
) -> Vec<(ModMonomial, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0, field.mul(c, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(a[i].1, field.mul(c, b[j].1));
                if s != 0 {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(m, v)| (m, field.mul(c, v))));
    out
}

impl fmt::Debug for VecPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VecPoly")
            .field("rank", &self.rank)
            .field("terms", &self.terms)
            .finish()
    }
}

pub struct VecPolyDisplay<'a> {
    v: &'a VecPoly,
    vars: &'a [String],
    field: &'a PrimeField,
}

impl fmt::Display for VecPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.v.components().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", p.display(self.vars, self.field))?;
        }
        write!(f, ")")
    }
}

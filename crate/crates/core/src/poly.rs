//! Sparse multivariate polynomials over a prime field.

use std::cmp::Ordering;
use std::fmt;

use crate::error::AlgebraError;
use crate::field::PrimeField;
use crate::monomial::{Monomial, MAX_VARS};

/// Canonical sparse polynomial: terms strictly descending in degrevlex,
/// no zero coefficients. The zero polynomial has no terms and no degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: u32) -> Self {
        Self::monomial(c, Monomial::one())
    }

    pub fn monomial(c: u32, m: Monomial) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a canonical polynomial from arbitrary terms, merging
    /// duplicates.
    pub fn from_terms(field: &PrimeField, mut terms: Vec<(Monomial, u32)>) -> Self {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = field.from_u64(c as u64);
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { terms: out }
    }

    /// Caller guarantees strictly descending monomials and nonzero
    /// coefficients.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Self { terms }
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
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

    pub fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Total degree; `None` is the sentinel for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Homogeneous of some degree; zero counts as homogeneous.
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => Some(None),
            Some(d) => degs.all(|e| e == d).then_some(Some(d)),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Number of variables actually referenced (highest index + 1).
    pub fn used_vars(&self) -> usize {
        self.terms
            .iter()
            .filter_map(|(m, _)| m.support().last())
            .map(|i| i + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self, field: &PrimeField) -> Self {
        self.combine(other, field, 1)
    }

    pub fn sub(&self, other: &Self, field: &PrimeField) -> Self {
        self.combine(other, field, field.neg(1))
    }

    /// `self + c * other`.
    pub fn combine(&self, other: &Self, field: &PrimeField, c: u32) -> Self {
        if c == 0 {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
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
        Self { terms: out }
    }

    pub fn neg(&self, field: &PrimeField) -> Self {
        self.scale(field.neg(1), field)
    }

    pub fn scale(&self, c: u32, field: &PrimeField) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|&(m, v)| (m, field.mul(c, v)))
                .collect(),
        }
    }

    /// `c * m * self`; multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, c: u32, m: &Monomial, field: &PrimeField) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|&(n, v)| (n.mul(m), field.mul(c, v)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self, field: &PrimeField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Self::zero();
        for (m, c) in &small.terms {
            acc = acc.add(&large.mul_term(*c, m, field), field);
        }
        acc
    }

    pub fn pow(&self, e: u32, field: &PrimeField) -> Self {
        let mut acc = Self::constant(1);
        for _ in 0..e {
            acc = acc.mul(self, field);
        }
        acc
    }

    pub fn display<'a>(&'a self, vars: &'a [String], field: &'a PrimeField) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            vars,
            field,
        }
    }
}

/// Variable context for polynomial arithmetic with checked inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub field: PrimeField,
    pub nvars: usize,
}

impl PolyRing {
    pub fn new(field: PrimeField, nvars: usize) -> Result<Self, AlgebraError> {
        if nvars > MAX_VARS {
            return Err(AlgebraError::TooManyVariables {
                requested: nvars,
                max: MAX_VARS,
            });
        }
        Ok(Self { field, nvars })
    }

    /// Checks that `a` lives in this ring: reduced coefficients and no
    /// variable beyond `nvars`.
    pub fn check(&self, a: &Poly) -> Result<(), AlgebraError> {
        if a.used_vars() > self.nvars {
            return Err(AlgebraError::ContextMismatch(format!(
                "polynomial uses {} variables, ring has {}",
                a.used_vars(),
                self.nvars
            )));
        }
        if let Some((_, c)) = a.terms.iter().find(|(_, c)| !self.field.contains(*c)) {
            return Err(AlgebraError::ContextMismatch(format!(
                "coefficient {c} not reduced modulo {}",
                self.field.modulus()
            )));
        }
        Ok(())
    }

    pub fn arith(&self, a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => a.add(b, &self.field),
            ArithOp::Sub => a.sub(b, &self.field),
            ArithOp::Mul => a.mul(b, &self.field),
        })
    }

    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.nvars);
        Poly::monomial(1, Monomial::var(i))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    vars: &'a [String],
    field: &'a PrimeField,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let c = self.field.to_signed(*c);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{}", m.display(self.vars))?;
            } else {
                write!(f, "{abs}*{}", m.display(self.vars))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> PolyRing {
        PolyRing::new(PrimeField::new(101).unwrap(), 2).unwrap()
    }

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring();
        let (x, y) = (r.var(0), r.var(1));
        let f = &r.field;
        let sum = r.arith(&x.add(&y, f), &x.sub(&y, f), ArithOp::Add).unwrap();
        assert_eq!(sum, x.scale(2, f));
        let sq = r.arith(&x.add(&y, f), &x.add(&y, f), ArithOp::Mul).unwrap();
        assert_eq!(sq.display(&names(), f).to_string(), "x^2 + 2*x*y + y^2");
        assert!(r.arith(&x, &Poly::zero(), ArithOp::Mul).unwrap().is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn context_mismatch() {
        let r = ring();
        let z = Poly::monomial(1, Monomial::var(2));
        assert!(matches!(
            r.arith(&z, &r.var(0), ArithOp::Add),
            Err(AlgebraError::ContextMismatch(_))
        ));
        let bad = Poly::monomial(500, Monomial::one());
        assert!(r.arith(&bad, &r.var(0), ArithOp::Add).is_err());
    }

    #[test]
    fn display_signs() {
        let f = PrimeField::new(101).unwrap();
        let p = Poly::from_terms(
            &f,
            vec![
                (Monomial::var(0), 100),
                (Monomial::one(), 3),
                (Monomial::var(1), 2),
            ],
        );
        assert_eq!(p.display(&names(), &f).to_string(), "-x + 2*y + 3");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0u32..4, 0u32..4), 0u32..101), 0..6).prop_map(|ts| {
            let f = PrimeField::new(101).unwrap();
            Poly::from_terms(
                &f,
                ts.into_iter()
                    .map(|((a, b), c)| (Monomial::from_exponents(&[a, b]).unwrap(), c))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let f = PrimeField::new(101).unwrap();
            prop_assert_eq!(a.add(&b, &f), b.add(&a, &f));
            prop_assert_eq!(a.mul(&b, &f), b.mul(&a, &f));
            prop_assert_eq!(a.add(&b, &f).add(&c, &f), a.add(&b.add(&c, &f), &f));
            prop_assert_eq!(a.mul(&b, &f).mul(&c, &f), a.mul(&b.mul(&c, &f), &f));
            prop_assert_eq!(
                a.mul(&b.add(&c, &f), &f),
                a.mul(&b, &f).add(&a.mul(&c, &f), &f)
            );
            prop_assert!(a.sub(&a, &f).is_zero());
        }
    }
}

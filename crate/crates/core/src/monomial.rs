//! Monomials in at most [`MAX_VARS`] variables under degrevlex.

use std::cmp::Ordering;
use std::fmt;

use crate::error::AlgebraError;

pub const MAX_VARS: usize = 12;

/// Exponent vector. Unused trailing slots stay zero, so comparisons never
/// need to know the number of variables in play.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const fn one() -> Self {
        Self {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS);
        let mut m = Self::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self, AlgebraError> {
        if exps.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables {
                requested: exps.len(),
                max: MAX_VARS,
            });
        }
        let mut m = Self::one();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).map_err(|_| AlgebraError::ExponentOverflow)?;
            m.deg += e;
        }
        Ok(m)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// The single variable index when this is a pure power `x_i^k`, k >= 1.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e as u32));
            }
        }
        found
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .ok_or(AlgebraError::ExponentOverflow)?;
        }
        m.deg = self.deg + other.deg;
        Ok(m)
    }

    /// Product; panics on exponent overflow, which budgets rule out.
    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m.deg += other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, vars }
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

/// Degree reverse lexicographic order with `x_1 > x_2 > ... > x_m`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in self.mono.support() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self.vars.get(i).map(String::as_str).unwrap_or("?");
            match self.mono.exps[i] {
                1 => write!(f, "{name}")?,
                e => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Krull dimension of `k[x_1..x_m] / (gens)` for monomial generators: the
/// largest set of variables containing the support of no generator.
pub fn monomial_ideal_dimension(gens: &[Monomial], nvars: usize) -> usize {
    assert!(nvars <= MAX_VARS);
    let supports: Vec<u32> = gens
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    if supports.contains(&0) {
        // unit ideal
        return 0;
    }
    let mut best = 0;
    for subset in 0u32..(1u32 << nvars) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !subset != 0) {
            best = size;
        }
    }
    best
}

/// All monomials of total degree `deg` in `nvars` variables, descending in
/// degrevlex.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(var: usize, nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var + 1 == nvars {
            cur.push(left);
            out.push(Monomial::from_exponents(cur).expect("degree within bounds"));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(var + 1, nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, nvars, deg, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

//! Exponent-vector monomials and the lex / graded-reverse-lex orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{HkError, Result};

pub type Exponents = SmallVec<[u16; 8]>;

/// A monomial `x^a` stored as its exponent vector, with the total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn from_slice(exps: &[u16]) -> Self {
        Self::new(Exponents::from_slice(exps))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
            deg: 0,
        }
    }

    /// The variable `x_i` in `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i mod 64` is set when variable `i` occurs; a cheap pre-filter for divisibility.
    pub fn divmask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    fn check_arity(&self, other: &Monomial) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(HkError::ArityMismatch(self.nvars(), other.nvars()));
        }
        Ok(())
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_arity(other)?;
        let mut exps = Exponents::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(HkError::ExponentOverflow)?);
        }
        Ok(Monomial {
            exps,
            deg: self.deg + other.deg,
        })
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`; fails unless `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Result<Monomial> {
        self.check_arity(other)?;
        if !other.divides(self) {
            return Err(HkError::NotDivisible);
        }
        Ok(self.quotient_unchecked(other))
    }

    #[inline]
    pub(crate) fn quotient_unchecked(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Monomial {
            exps,
            deg: self.deg - other.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect::<Exponents>(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect::<Exponents>(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Raises every exponent to the `k`-th multiple (the monomial's `k`-th power).
    pub fn pow(&self, k: u64) -> Result<Monomial> {
        let mut exps = Exponents::with_capacity(self.exps.len());
        for &e in &self.exps {
            let v = (e as u64).checked_mul(k).ok_or(HkError::ExponentOverflow)?;
            exps.push(u16::try_from(v).map_err(|_| HkError::ExponentOverflow)?);
        }
        Ok(Monomial::new(exps))
    }

    /// Re-embeds into `nvars` variables, placing the current ones starting at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        let mut exps: Exponents = smallvec::smallvec![0; nvars];
        exps[offset..offset + self.exps.len()].copy_from_slice(&self.exps);
        Monomial { exps, deg: self.deg }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrevLex,
}

/// A monomial order: lex or grevlex, optionally over a permuted variable ranking.
///
/// `rank[k]` is the index of the variable that is treated as the `k`-th largest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    rank: Option<Arc<[usize]>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::grevlex()
    }
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            rank: None,
        }
    }

    pub fn grevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            rank: None,
        }
    }

    /// Same kind, with variables ranked `rank[0] > rank[1] > ...`.
    pub fn with_ranking(kind: OrderKind, rank: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; rank.len()];
        for &r in &rank {
            if r >= rank.len() || std::mem::replace(&mut seen[r], true) {
                return Err(HkError::Invalid("variable ranking is not a permutation".into()));
            }
        }
        Ok(MonomialOrder {
            kind,
            rank: Some(rank.into()),
        })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn ranking(&self) -> Option<&[usize]> {
        self.rank.as_deref()
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::GrevLex => "grevlex",
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (&a.exps, &b.exps);
        match (&self.rank, self.kind) {
            (None, OrderKind::Lex) => ea.as_slice().cmp(eb.as_slice()),
            (None, OrderKind::GrevLex) => a.deg.cmp(&b.deg).then_with(|| {
                for i in (0..ea.len()).rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            }),
            (Some(rank), OrderKind::Lex) => {
                for &i in rank.iter() {
                    if ea[i] != eb[i] {
                        return ea[i].cmp(&eb[i]);
                    }
                }
                Ordering::Equal
            }
            (Some(rank), OrderKind::GrevLex) => a.deg.cmp(&b.deg).then_with(|| {
                for &i in rank.iter().rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Compares two monomials, checking that they live in the same number of variables.
pub fn monomial_cmp(order: &MonomialOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(HkError::ArityMismatch(a.nvars(), b.nvars()));
    }
    if let Some(rank) = order.ranking() {
        if rank.len() != a.nvars() {
            return Err(HkError::ArityMismatch(rank.len(), a.nvars()));
        }
    }
    Ok(order.cmp(a, b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOpResult {
    Monomial(Monomial),
    Bool(bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOp {
    Mul,
    /// `a` divides `b`
    Divides,
    /// `a / b`
    Quotient,
    Lcm,
}

pub fn monomial_ops(op: MonomialOp, a: &Monomial, b: &Monomial) -> Result<MonomialOpResult> {
    if a.nvars() != b.nvars() {
        return Err(HkError::ArityMismatch(a.nvars(), b.nvars()));
    }
    Ok(match op {
        MonomialOp::Mul => MonomialOpResult::Monomial(a.mul(b)?),
        MonomialOp::Divides => MonomialOpResult::Bool(a.divides(b)),
        MonomialOp::Quotient => MonomialOpResult::Monomial(a.quotient(b)?),
        MonomialOp::Lcm => MonomialOpResult::Monomial(a.lcm(b)),
    })
}

//! Sparse multivariate polynomials over GF(p).

use std::cmp::Ordering;

use crate::error::{HkError, Result};
use crate::field::{FieldElement, PrimeField};
use crate::monomial::{Monomial, MonomialOrder};

/// A polynomial as a list of terms sorted strictly descending in its monomial order.
///
/// Coefficients are stored as residues in `[0, p)` and are never zero; the zero
/// polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize, order: MonomialOrder) -> Self {
        Polynomial {
            field,
            nvars,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, order: MonomialOrder, c: i64) -> Self {
        Self::from_terms(field, nvars, order, vec![(Monomial::one(nvars), c)])
    }

    pub fn var(field: PrimeField, nvars: usize, order: MonomialOrder, i: usize) -> Self {
        Self::from_terms(field, nvars, order, vec![(Monomial::var(nvars, i), 1)])
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and drops zeros.
    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        order: MonomialOrder,
        terms: Vec<(Monomial, i64)>,
    ) -> Self {
        let terms = terms
            .into_iter()
            .map(|(m, c)| (m, field.reduce_i64(c)))
            .collect();
        Self::from_residues(field, nvars, order, terms)
    }

    pub(crate) fn from_residues(
        field: PrimeField,
        nvars: usize,
        order: MonomialOrder,
        mut terms: Vec<(Monomial, u32)>,
    ) -> Self {
        debug_assert!(terms.iter().all(|(m, _)| m.nvars() == nvars));
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial {
            field,
            nvars,
            order,
            terms: out,
        }
    }

    /// Wraps terms that are already strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(
        field: PrimeField,
        nvars: usize,
        order: MonomialOrder,
        terms: Vec<(Monomial, u32)>,
    ) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Polynomial {
            field,
            nvars,
            order,
            terms,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn term_elements(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> + '_ {
        self.terms
            .iter()
            .map(move |(m, c)| (m, self.field.element(*c as i64)))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(HkError::CharMismatch(
                self.field.characteristic(),
                other.field.characteristic(),
            ));
        }
        if self.nvars != other.nvars {
            return Err(HkError::ArityMismatch(self.nvars, other.nvars));
        }
        if self.order != other.order {
            return Err(HkError::Invalid("polynomials use different monomial orders".into()));
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let oc = |c: u32| if negate_other { f.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match self.order.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), oc(b.1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a.1, oc(b.1));
                    if c != 0 {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), oc(*c))));
        Polynomial::from_sorted(f, self.nvars, self.order.clone(), out)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            return Polynomial::zero(self.field, self.nvars, self.order.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.field.mul(*a, c)))
            .collect();
        Polynomial::from_sorted(self.field, self.nvars, self.order.clone(), terms)
    }

    /// `c * t * self` for a monomial `t`.
    pub fn mul_term(&self, t: &Monomial, c: u32) -> Result<Polynomial> {
        let c = c % self.field.characteristic();
        if c == 0 {
            return Ok(Polynomial::zero(self.field, self.nvars, self.order.clone()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, a) in &self.terms {
            terms.push((m.mul(t)?, self.field.mul(*a, c)));
        }
        Ok(Polynomial::from_sorted(
            self.field,
            self.nvars,
            self.order.clone(),
            terms,
        ))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(self.field, self.nvars, self.order.clone());
        for (m, c) in &small.terms {
            acc = acc.merge(&big.mul_term(m, *c)?, false);
        }
        Ok(acc)
    }

    /// Repeated-squaring power.
    pub fn pow(&self, mut k: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(self.field, self.nvars, self.order.clone(), 1);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The image under the `q`-th power Frobenius, `q` a power of the characteristic:
    /// every exponent is multiplied by `q` and coefficients are fixed (`c^q = c` in GF(p)).
    pub fn frobenius(&self, q: u64) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.pow(q)?, *c));
        }
        // scaling all exponents preserves lex and grevlex comparisons
        Ok(Polynomial::from_sorted(
            self.field,
            self.nvars,
            self.order.clone(),
            terms,
        ))
    }

    pub fn monic(&self) -> Polynomial {
        match self.lead_coefficient() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.field.inv(c).expect("nonzero lead coefficient")),
        }
    }

    pub fn with_order(&self, order: &MonomialOrder) -> Polynomial {
        Polynomial::from_residues(self.field, self.nvars, order.clone(), self.terms.clone())
    }

    /// Moves into a ring with `nvars` variables, the current ones sitting at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize, order: &MonomialOrder) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.embed(nvars, offset), *c))
            .collect();
        Polynomial::from_residues(self.field, nvars, order.clone(), terms)
    }

    /// Renders with the given variable names, printing coefficients in `(-p/2, p/2]`.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let p = self.field.characteristic();
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if p > 2 && *c > p / 2 {
                (true, p - c)
            } else {
                (false, *c)
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    s.push_str(&format!("{mag}*"));
                }
                s.push_str(&m.fmt_with(names));
            }
        }
        s
    }
}

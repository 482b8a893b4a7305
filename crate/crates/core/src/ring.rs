//! Quotient rings `GF(p)[x_1..x_n] / I` given by generators.

use std::sync::OnceLock;

use crate::error::{HkError, Result};
use crate::field::PrimeField;
use crate::groebner::{buchberger_in, GroebnerBasis};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::staircase;

/// A presentation `GF(p)[vars] / (generators)`.
///
/// The reduced Gröbner basis and the Krull dimension are computed on first use
/// and cached; the caches are write-once and safe to read from several threads.
#[derive(Debug)]
pub struct RingPresentation {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
    dim: OnceLock<usize>,
}

impl Clone for RingPresentation {
    fn clone(&self) -> Self {
        RingPresentation {
            field: self.field,
            names: self.names.clone(),
            order: self.order.clone(),
            generators: self.generators.clone(),
            gb: self.gb.clone(),
            dim: self.dim.clone(),
        }
    }
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.names == other.names
            && self.order == other.order
            && self.generators == other.generators
    }
}

impl RingPresentation {
    pub fn new(field: PrimeField, names: Vec<String>, generators: Vec<Polynomial>) -> Result<Self> {
        Self::with_order(field, names, generators, MonomialOrder::grevlex())
    }

    pub fn with_order(
        field: PrimeField,
        names: Vec<String>,
        generators: Vec<Polynomial>,
        order: MonomialOrder,
    ) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(HkError::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        let nvars = names.len();
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.field() != field {
                return Err(HkError::CharMismatch(
                    field.characteristic(),
                    g.field().characteristic(),
                ));
            }
            if g.nvars() != nvars {
                return Err(HkError::ArityMismatch(nvars, g.nvars()));
            }
            gens.push(if g.order() == &order { g } else { g.with_order(&order) });
        }
        Ok(RingPresentation {
            field,
            names,
            order,
            generators: gens,
            gb: OnceLock::new(),
            dim: OnceLock::new(),
        })
    }

    /// The polynomial ring itself (zero ideal).
    pub fn polynomial_ring(field: PrimeField, names: &[&str]) -> Result<Self> {
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), Vec::new())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.field, self.nvars(), self.order.clone())
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::constant(self.field, self.nvars(), self.order.clone(), c)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field, self.nvars(), self.order.clone(), i)
    }

    pub fn variables(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Reduced Gröbner basis of the defining ideal, computed once.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = buchberger_in(self.field, self.nvars(), &self.generators, &self.order)?;
        // a concurrent initializer may have won; both values are identical
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("initialized"))
    }

    /// Krull dimension, read off the lead-term ideal.
    pub fn dimension(&self) -> Result<usize> {
        if let Some(d) = self.dim.get() {
            return Ok(*d);
        }
        let gb = self.groebner()?;
        let d = staircase::krull_dimension(gb.lead_monomials(), self.nvars())?;
        let _ = self.dim.set(d);
        Ok(d)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.groebner()?.normal_form(f)
    }

    /// The ring with `extra` adjoined to the defining ideal.
    pub fn quotient_by(&self, extra: &[Polynomial]) -> Result<RingPresentation> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::with_order(self.field, self.names.clone(), gens, self.order.clone())
    }

    /// Rejects generators with a nonzero constant term.
    pub fn check_local(&self) -> Result<()> {
        check_local_generators(&self.generators, &self.names)
    }

    pub fn fmt_poly(&self, f: &Polynomial) -> String {
        f.fmt_with(&self.names)
    }
}

pub fn check_local_generators(gens: &[Polynomial], names: &[String]) -> Result<()> {
    for g in gens {
        if g.constant_term() != 0 {
            return Err(HkError::NotLocalInput(g.fmt_with(names)));
        }
    }
    Ok(())
}

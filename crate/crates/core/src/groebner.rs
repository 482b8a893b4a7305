//! Reduced Gröbner bases over GF(p): Buchberger's algorithm with the
//! Gebauer–Möller installation of the product and chain criteria, normal
//! strategy pair selection, and geobucket-based reduction.

use std::cmp::Ordering;

use crate::error::{HkError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

type Terms = Vec<(Monomial, u32)>;

/// Merges two ascending term lists.
fn merge_ascending(field: PrimeField, order: &MonomialOrder, a: Terms, b: Terms) -> Terms {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        let ord = match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(ia.next().unwrap()),
            Ordering::Greater => out.push(ib.next().unwrap()),
            Ordering::Equal => {
                let (m, c1) = ia.next().unwrap();
                let (_, c2) = ib.next().unwrap();
                let c = field.add(c1, c2);
                if c != 0 {
                    out.push((m, c));
                }
            }
        }
    }
    out
}

/// Geometric buckets: bucket `i` holds at most `4^(i+1)` terms, each sorted
/// ascending so that the leading term sits at the end.
struct GeoBucket<'a> {
    field: PrimeField,
    order: &'a MonomialOrder,
    buckets: Vec<Terms>,
}

impl<'a> GeoBucket<'a> {
    fn new(field: PrimeField, order: &'a MonomialOrder) -> Self {
        GeoBucket {
            field,
            order,
            buckets: Vec::new(),
        }
    }

    fn capacity(i: usize) -> usize {
        4usize.saturating_pow(i as u32 + 1)
    }

    /// Adds terms given in ascending order.
    fn add_ascending(&mut self, mut terms: Terms) {
        if terms.is_empty() {
            return;
        }
        let mut i = 0;
        while Self::capacity(i) < terms.len() {
            i += 1;
        }
        loop {
            if i >= self.buckets.len() {
                self.buckets.resize_with(i + 1, Vec::new);
            }
            let cur = std::mem::take(&mut self.buckets[i]);
            terms = merge_ascending(self.field, self.order, cur, terms);
            if terms.len() <= Self::capacity(i) {
                self.buckets[i] = terms;
                return;
            }
            i += 1;
        }
    }

    fn pop_lead(&mut self) -> Option<(Monomial, u32)> {
        loop {
            let mut best: Option<usize> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                if let Some((m, _)) = b.last() {
                    best = match best {
                        Some(j) if self.order.cmp(m, &self.buckets[j].last().unwrap().0) != Ordering::Greater => Some(j),
                        _ => Some(i),
                    };
                }
            }
            let j = best?;
            let (m, mut c) = self.buckets[j].pop().unwrap();
            for i in 0..self.buckets.len() {
                if i != j && self.buckets[i].last().is_some_and(|t| t.0 == m) {
                    c = self.field.add(c, self.buckets[i].pop().unwrap().1);
                }
            }
            if c != 0 {
                return Some((m, c));
            }
        }
    }
}

/// A monic reducer: lead monomial, its divisibility mask, and the tail in descending order.
#[derive(Clone, Debug)]
struct Reducer {
    lead: Monomial,
    mask: u64,
    tail: Terms,
}

impl Reducer {
    fn from_monic(g: &Polynomial) -> Self {
        let lead = g.lead_monomial().expect("nonzero reducer").clone();
        let mask = lead.divmask();
        Reducer {
            lead,
            mask,
            tail: g.terms()[1..].to_vec(),
        }
    }
}

/// Fully reduces `terms` (descending) against the reducers selected by `active`.
fn reduce_terms(
    field: PrimeField,
    order: &MonomialOrder,
    terms: Terms,
    reducers: &[Reducer],
    active: impl Fn(usize) -> bool,
) -> Result<Terms> {
    let mut bucket = GeoBucket::new(field, order);
    let mut terms = terms;
    terms.reverse();
    bucket.add_ascending(terms);
    let mut out = Vec::new();
    while let Some((m, c)) = bucket.pop_lead() {
        let mmask = m.divmask();
        let hit = reducers
            .iter()
            .enumerate()
            .find(|(i, r)| r.mask & !mmask == 0 && active(*i) && r.lead.divides(&m));
        match hit {
            Some((_, r)) => {
                let t = m.quotient_unchecked(&r.lead);
                let coef = field.neg(c);
                let mut prod = Vec::with_capacity(r.tail.len());
                for (tm, tc) in r.tail.iter().rev() {
                    prod.push((tm.mul(&t)?, field.mul(*tc, coef)));
                }
                bucket.add_ascending(prod);
            }
            None => out.push((m, c)),
        }
    }
    Ok(out)
}

/// A reduced, monic Gröbner basis sorted ascending by lead monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    field: PrimeField,
    nvars: usize,
    elements: Vec<Polynomial>,
    leads: Vec<Monomial>,
    reducers: Vec<Reducer>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.field == other.field
            && self.nvars == other.nvars
            && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn lead_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leads.iter().any(|m| m.is_one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether the monomial is outside the lead-term ideal.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }
}

/// Normal form of `f` with respect to `gb`: no term of the result is divisible
/// by a lead monomial of `gb`, and `f` minus the result lies in the ideal.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if f.field() != gb.field {
        return Err(HkError::CharMismatch(
            f.field().characteristic(),
            gb.field.characteristic(),
        ));
    }
    if f.nvars() != gb.nvars {
        return Err(HkError::ArityMismatch(f.nvars(), gb.nvars));
    }
    let f = if f.order() == &gb.order {
        f.clone()
    } else {
        f.with_order(&gb.order)
    };
    let terms = reduce_terms(gb.field, &gb.order, f.into_terms(), &gb.reducers, |_| true)?;
    Ok(Polynomial::from_sorted(gb.field, gb.nvars, gb.order.clone(), terms))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    field: PrimeField,
    nvars: usize,
    order: &'a MonomialOrder,
    reducers: Vec<Reducer>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn reduce(&self, terms: Terms) -> Result<Terms> {
        let active = &self.active;
        reduce_terms(self.field, self.order, terms, &self.reducers, |i| active[i])
    }

    fn make_monic(&self, mut terms: Terms) -> Terms {
        let inv = self.field.inv(terms[0].1).expect("nonzero lead");
        if inv != 1 {
            for t in terms.iter_mut() {
                t.1 = self.field.mul(t.1, inv);
            }
        }
        terms
    }

    fn insert(&mut self, terms: Terms) {
        let terms = self.make_monic(terms);
        let lead = terms[0].0.clone();
        let h = self.reducers.len();
        self.reducers.push(Reducer {
            mask: lead.divmask(),
            lead,
            tail: terms[1..].to_vec(),
        });
        self.active.push(false);
        self.update(h);
    }

    /// Gebauer–Möller update for a new basis element `h`.
    fn update(&mut self, h: usize) {
        let lh = self.reducers[h].lead.clone();
        let mut cands: Vec<(usize, Monomial, bool)> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lg = &self.reducers[g].lead;
                (g, lh.lcm(lg), lh.is_coprime(lg))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::with_capacity(cands.len());
        cands.reverse();
        while let Some((g, l, coprime)) = cands.pop() {
            let dominated = !coprime
                && (cands.iter().any(|(_, l2, _)| l2.divides(&l))
                    || kept.iter().any(|(_, l2, _)| l2.divides(&l)));
            if !dominated {
                kept.push((g, l, coprime));
            }
        }
        let reducers = &self.reducers;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && lh.lcm(&reducers[p.i].lead) != p.lcm
                && lh.lcm(&reducers[p.j].lead) != p.lcm)
        });
        self.pairs.extend(
            kept.into_iter()
                .filter(|(_, _, coprime)| !coprime)
                .map(|(g, lcm, _)| Pair { i: g, j: h, lcm }),
        );
        for g in 0..h {
            if self.active[g] && lh.divides(&self.reducers[g].lead) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let idx = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .cmp(&a.lcm, &b.lcm)
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })?
            .0;
        Some(self.pairs.swap_remove(idx))
    }

    fn spoly(&self, pair: &Pair) -> Result<Terms> {
        let (a, b) = (&self.reducers[pair.i], &self.reducers[pair.j]);
        let ta = pair.lcm.quotient_unchecked(&a.lead);
        let tb = pair.lcm.quotient_unchecked(&b.lead);
        let mut pa = Vec::with_capacity(a.tail.len());
        for (m, c) in a.tail.iter().rev() {
            pa.push((m.mul(&ta)?, *c));
        }
        let mut pb = Vec::with_capacity(b.tail.len());
        for (m, c) in b.tail.iter().rev() {
            pb.push((m.mul(&tb)?, self.field.neg(*c)));
        }
        let mut s = merge_ascending(self.field, self.order, pa, pb);
        s.reverse();
        Ok(s)
    }

    fn run(&mut self) -> Result<()> {
        while let Some(pair) = self.select_pair() {
            let s = self.spoly(&pair)?;
            if s.is_empty() {
                continue;
            }
            let h = self.reduce(s)?;
            if !h.is_empty() {
                self.insert(h);
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<GroebnerBasis> {
        let active_idx: Vec<usize> = (0..self.reducers.len()).filter(|&i| self.active[i]).collect();
        let minimal: Vec<Reducer> = active_idx.iter().map(|&i| self.reducers[i].clone()).collect();
        let mut elements = Vec::with_capacity(minimal.len());
        for r in &minimal {
            let tail = reduce_terms(self.field, self.order, r.tail.clone(), &minimal, |_| true)?;
            let mut terms = Vec::with_capacity(tail.len() + 1);
            terms.push((r.lead.clone(), 1));
            terms.extend(tail);
            elements.push(Polynomial::from_sorted(
                self.field,
                self.nvars,
                self.order.clone(),
                terms,
            ));
        }
        elements.sort_by(|a, b| {
            self.order
                .cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap())
        });
        let leads = elements
            .iter()
            .map(|g| g.lead_monomial().unwrap().clone())
            .collect();
        let reducers = elements.iter().map(Reducer::from_monic).collect();
        Ok(GroebnerBasis {
            order: self.order.clone(),
            field: self.field,
            nvars: self.nvars,
            elements,
            leads,
            reducers,
        })
    }
}

/// Context needed to describe an ideal even when its generator list is empty.
fn common_context(generators: &[Polynomial]) -> Result<(PrimeField, usize)> {
    let first = generators
        .first()
        .ok_or_else(|| HkError::Invalid("empty generator list".into()))?;
    for g in generators {
        if g.field() != first.field() {
            return Err(HkError::CharMismatch(
                first.field().characteristic(),
                g.field().characteristic(),
            ));
        }
        if g.nvars() != first.nvars() {
            return Err(HkError::ArityMismatch(first.nvars(), g.nvars()));
        }
    }
    Ok((first.field(), first.nvars()))
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn buchberger(generators: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    let (field, nvars) = common_context(generators)?;
    buchberger_in(field, nvars, generators, order)
}

/// As [`buchberger`], with the ambient ring given explicitly so that an empty
/// generator list (the zero ideal) is accepted.
pub fn buchberger_in(
    field: PrimeField,
    nvars: usize,
    generators: &[Polynomial],
    order: &MonomialOrder,
) -> Result<GroebnerBasis> {
    if !generators.is_empty() {
        let (f, n) = common_context(generators)?;
        if f != field {
            return Err(HkError::CharMismatch(field.characteristic(), f.characteristic()));
        }
        if n != nvars {
            return Err(HkError::ArityMismatch(nvars, n));
        }
    }
    let mut gens: Vec<Polynomial> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            if g.order() == order {
                g.clone()
            } else {
                g.with_order(order)
            }
        })
        .collect();
    gens.sort_by(|a, b| {
        order
            .cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap())
            .then_with(|| a.len().cmp(&b.len()))
    });
    let mut engine = Engine {
        field,
        nvars,
        order,
        reducers: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let h = engine.reduce(g.into_terms())?;
        if !h.is_empty() {
            engine.insert(h);
            engine.run()?;
        }
    }
    engine.run()?;
    engine.finish()
}

/// Whether two generator lists span the same ideal (reduced bases coincide).
pub fn ideal_equal(a: &[Polynomial], b: &[Polynomial], order: &MonomialOrder) -> Result<bool> {
    let ctx = common_context(&[a, b].concat());
    let (field, nvars) = match ctx {
        Ok(c) => c,
        // both lists empty: both are the zero ideal of an unspecified ring
        Err(_) => return Ok(true),
    };
    let ga = buchberger_in(field, nvars, a, order)?;
    let gb = buchberger_in(field, nvars, b, order)?;
    Ok(ga.elements == gb.elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn poly(field: PrimeField, order: &MonomialOrder, n: usize, terms: &[(&[u16], i64)]) -> Polynomial {
        Polynomial::from_terms(
            field,
            n,
            order.clone(),
            terms.iter().map(|(e, c)| (Monomial::from_slice(e), *c)).collect(),
        )
    }

    #[test]
    fn member_reduces_to_zero() {
        let o = MonomialOrder::grevlex();
        let xy = poly(f3(), &o, 2, &[(&[1, 1], 1)]);
        let gb = buchberger(&[xy.clone()], &o).unwrap();
        assert!(normal_form(&xy, &gb).unwrap().is_zero());
    }

    #[test]
    fn one_division_step_lex() {
        let f5 = PrimeField::new(5).unwrap();
        let o = MonomialOrder::lex();
        let g = poly(f5, &o, 2, &[(&[2, 0], 1), (&[0, 0], -1)]);
        let f = poly(f5, &o, 2, &[(&[2, 1], 1), (&[0, 1], 1)]);
        let gb = buchberger(&[g], &o).unwrap();
        assert_eq!(normal_form(&f, &gb).unwrap(), poly(f5, &o, 2, &[(&[0, 1], 2)]));
    }

    #[test]
    fn constant_is_irreducible_modulo_variables() {
        let o = MonomialOrder::grevlex();
        let gb = buchberger(
            &[poly(f3(), &o, 2, &[(&[1, 0], 1)]), poly(f3(), &o, 2, &[(&[0, 1], 1)])],
            &o,
        )
        .unwrap();
        let one = poly(f3(), &o, 2, &[(&[0, 0], 1)]);
        assert_eq!(normal_form(&one, &gb).unwrap(), one);
    }

    #[test]
    fn monomial_basis_is_already_reduced() {
        let o = MonomialOrder::grevlex();
        let x2 = poly(f3(), &o, 2, &[(&[2, 0], 1)]);
        let xy = poly(f3(), &o, 2, &[(&[1, 1], 1)]);
        let gb = buchberger(&[x2.clone(), xy.clone()], &o).unwrap();
        let mut want = vec![x2, xy];
        want.sort_by(|a, b| o.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
        assert_eq!(gb.elements(), want.as_slice());
    }

    #[test]
    fn unit_ideal() {
        let o = MonomialOrder::grevlex();
        let one = poly(f3(), &o, 2, &[(&[0, 0], 1)]);
        let gb = buchberger(&[one.clone()], &o).unwrap();
        assert_eq!(gb.elements(), &[one]);
        assert!(gb.is_unit_ideal());
        // x and x + 1 generate the unit ideal too
        let gb = buchberger(
            &[poly(f3(), &o, 2, &[(&[1, 0], 1)]), poly(f3(), &o, 2, &[(&[1, 0], 1), (&[0, 0], 1)])],
            &o,
        )
        .unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.elements().len(), 1);
    }

    #[test]
    fn twisted_cubic_lex() {
        // (y - x^2, z - x^3) in lex with z > y > x is already a GB with leads y, z
        // when variables are ranked z, y, x
        let f = PrimeField::new(7).unwrap();
        let o = MonomialOrder::with_ranking(crate::monomial::OrderKind::Lex, vec![2, 1, 0]).unwrap();
        let a = poly(f, &o, 3, &[(&[0, 1, 0], 1), (&[2, 0, 0], -1)]);
        let b = poly(f, &o, 3, &[(&[0, 0, 1], 1), (&[3, 0, 0], -1)]);
        let gb = buchberger(&[a, b], &o).unwrap();
        let leads: Vec<_> = gb.lead_monomials().to_vec();
        assert_eq!(
            leads,
            vec![Monomial::from_slice(&[0, 1, 0]), Monomial::from_slice(&[0, 0, 1])]
        );
        // grevlex basis of the same ideal has more elements (includes y^2 - xz etc.)
        let g = MonomialOrder::grevlex();
        let a = poly(f, &g, 3, &[(&[0, 1, 0], 1), (&[2, 0, 0], -1)]);
        let b = poly(f, &g, 3, &[(&[0, 0, 1], 1), (&[3, 0, 0], -1)]);
        let gb2 = buchberger(&[a.clone(), b.clone()], &g).unwrap();
        for e in gb2.elements() {
            assert!(normal_form(&e.with_order(&o), &gb).unwrap().is_zero());
        }
        assert!(normal_form(&a, &gb2).unwrap().is_zero());
    }

    #[test]
    fn ideal_equality() {
        let o = MonomialOrder::grevlex();
        let x2 = poly(f3(), &o, 2, &[(&[2, 0], 1)]);
        let xy = poly(f3(), &o, 2, &[(&[1, 1], 1)]);
        let x3 = poly(f3(), &o, 2, &[(&[3, 0], 1)]);
        let x = poly(f3(), &o, 2, &[(&[1, 0], 1)]);
        assert!(ideal_equal(&[x2.clone(), xy.clone()], &[x2.clone(), xy, x3], &o).unwrap());
        assert!(!ideal_equal(&[x], &[x2], &o).unwrap());
        let zero = Polynomial::zero(f3(), 2, o.clone());
        assert!(ideal_equal(&[zero], &[], &o).unwrap());
    }

    #[test]
    fn overflow_is_reported() {
        let o = MonomialOrder::grevlex();
        let a = poly(f3(), &o, 2, &[(&[40000, 1], 1), (&[0, 30000], 1)]);
        let b = poly(f3(), &o, 2, &[(&[1, 40000], 1), (&[30000, 0], 1)]);
        assert_eq!(buchberger(&[a, b], &o), Err(HkError::ExponentOverflow));
    }
}

//! Syzygies of a generator list, by lifting S-pair reductions.
//!
//! A Gröbner basis `G` of `(f_1..f_n)` is built while tracking cofactors
//! `g_l = sum_k C[l][k] f_k`. Every S-pair that reduces to zero gives a syzygy
//! of `G`, which maps to a syzygy of the `f`; together with the rows
//! `e_k - sum_l D[k][l] C[l]` from dividing each `f_k` by `G`, these generate
//! the full syzygy module.

use crate::error::{HkError, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Generators of the syzygy module of `n` polynomials; each row `(a_1..a_n)`
/// satisfies `sum_s a_s f_s = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyBasis {
    pub generator_count: usize,
    pub rows: Vec<Vec<Polynomial>>,
}

impl SyzygyBasis {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Checks `sum_s a_s f_s = 0` for every row.
    pub fn annihilates(&self, gens: &[Polynomial]) -> Result<bool> {
        for row in &self.rows {
            if !combine(row, gens)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `sum_s coeffs[s] * gens[s]`.
pub fn combine(coeffs: &[Polynomial], gens: &[Polynomial]) -> Result<Polynomial> {
    let mut acc = gens[0].mul(&coeffs[0])?;
    for (a, f) in coeffs.iter().zip(gens).skip(1) {
        acc = acc.add(&a.mul(f)?)?;
    }
    Ok(acc)
}

/// Multivariate division: returns quotients `q` and remainder `r` with
/// `f = sum q_l g_l + r`, the `g_l` monic.
pub(crate) fn divide(f: &Polynomial, basis: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
    let zero = Polynomial::zero(f.field(), f.nvars(), f.order().clone());
    let mut quotients = vec![zero.clone(); basis.len()];
    let mut rem_terms = Vec::new();
    let mut p = f.clone();
    while let Some(lm) = p.lead_monomial().cloned() {
        let c = p.lead_coefficient().unwrap();
        match basis
            .iter()
            .position(|g| g.lead_monomial().is_some_and(|l| l.divides(&lm)))
        {
            Some(l) => {
                let t = lm.quotient_unchecked(basis[l].lead_monomial().unwrap());
                let term = Polynomial::from_sorted(f.field(), f.nvars(), f.order().clone(), vec![(t.clone(), c)]);
                quotients[l] = quotients[l].add(&term)?;
                p = p.sub(&basis[l].mul_term(&t, c)?)?;
            }
            None => {
                rem_terms.push((lm, c));
                p = Polynomial::from_sorted(
                    f.field(),
                    f.nvars(),
                    f.order().clone(),
                    p.terms()[1..].to_vec(),
                );
            }
        }
    }
    let r = Polynomial::from_sorted(f.field(), f.nvars(), f.order().clone(), rem_terms);
    Ok((quotients, r))
}

fn vec_combine(
    coeffs: &[Polynomial],
    vectors: &[Vec<Polynomial>],
    zero: &Polynomial,
    n: usize,
) -> Result<Vec<Polynomial>> {
    let mut out = vec![zero.clone(); n];
    for (a, v) in coeffs.iter().zip(vectors) {
        if a.is_zero() {
            continue;
        }
        for k in 0..n {
            if !v[k].is_zero() {
                out[k] = out[k].add(&a.mul(&v[k])?)?;
            }
        }
    }
    Ok(out)
}

fn normalize_row(row: Vec<Polynomial>) -> Option<Vec<Polynomial>> {
    let lead = row.iter().find(|a| !a.is_zero())?;
    let c = lead.lead_coefficient().unwrap();
    let inv = lead.field().inv(c).expect("nonzero");
    Some(row.iter().map(|a| a.scale(inv)).collect())
}

/// Generators of the syzygy module of `generators`.
pub fn syzygy_basis(generators: &[Polynomial]) -> Result<SyzygyBasis> {
    let first = generators
        .first()
        .ok_or_else(|| HkError::Invalid("empty generator list".into()))?;
    let (field, nvars) = (first.field(), first.nvars());
    let order: MonomialOrder = first.order().clone();
    let n = generators.len();
    let gens: Vec<Polynomial> = generators
        .iter()
        .map(|g| {
            if g.field() != field {
                Err(HkError::CharMismatch(field.characteristic(), g.field().characteristic()))
            } else if g.nvars() != nvars {
                Err(HkError::ArityMismatch(nvars, g.nvars()))
            } else {
                Ok(g.with_order(&order))
            }
        })
        .collect::<Result<_>>()?;
    let zero = Polynomial::zero(field, nvars, order.clone());
    let one = Polynomial::constant(field, nvars, order.clone(), 1);
    let unit = |k: usize, c: u32| -> Vec<Polynomial> {
        let mut v = vec![zero.clone(); n];
        v[k] = one.scale(c);
        v
    };

    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut cof: Vec<Vec<Polynomial>> = Vec::new();
    for (k, f) in gens.iter().enumerate() {
        if f.is_zero() {
            rows.push(unit(k, 1));
            continue;
        }
        let inv = field.inv(f.lead_coefficient().unwrap())?;
        basis.push(f.scale(inv));
        cof.push(unit(k, inv));
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let lcm_of = |b: &[Polynomial], i: usize, j: usize| -> Monomial {
        b[i].lead_monomial().unwrap().lcm(b[j].lead_monomial().unwrap())
    };
    while !pairs.is_empty() {
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                let (la, lb) = (lcm_of(&basis, pairs[a].0, pairs[a].1), lcm_of(&basis, pairs[b].0, pairs[b].1));
                order.cmp(&la, &lb).then(pairs[a].cmp(&pairs[b]))
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        let l = lcm_of(&basis, i, j);
        let ti = l.quotient_unchecked(basis[i].lead_monomial().unwrap());
        let tj = l.quotient_unchecked(basis[j].lead_monomial().unwrap());
        let s = basis[i].mul_term(&ti, 1)?.sub(&basis[j].mul_term(&tj, 1)?)?;
        let (q, r) = divide(&s, &basis)?;
        // sigma = ti e_i - tj e_j - sum q_l e_l, a syzygy of the current basis
        let mut sigma: Vec<Polynomial> = q.iter().map(|x| x.neg()).collect();
        let ti_p = Polynomial::from_sorted(field, nvars, order.clone(), vec![(ti, 1)]);
        let tj_p = Polynomial::from_sorted(field, nvars, order.clone(), vec![(tj, 1)]);
        sigma[i] = sigma[i].add(&ti_p)?;
        sigma[j] = sigma[j].sub(&tj_p)?;
        let image = vec_combine(&sigma, &cof, &zero, n)?;
        if r.is_zero() {
            rows.push(image);
        } else {
            // r = sum sigma_l g_l, so its cofactor is the image of sigma
            let inv = field.inv(r.lead_coefficient().unwrap())?;
            let new = basis.len();
            basis.push(r.scale(inv));
            cof.push(image.iter().map(|a| a.scale(inv)).collect());
            for i in 0..new {
                pairs.push((i, new));
            }
        }
    }
    for (k, f) in gens.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let (d, r) = divide(f, &basis)?;
        debug_assert!(r.is_zero());
        let lifted = vec_combine(&d, &cof, &zero, n)?;
        let row: Vec<Polynomial> = (0..n)
            .map(|c| if c == k { one.sub(&lifted[c]) } else { Ok(lifted[c].neg()) })
            .collect::<Result<_>>()?;
        rows.push(row);
    }

    let mut out: Vec<Vec<Polynomial>> = Vec::new();
    for row in rows.into_iter().filter_map(normalize_row) {
        if !out.contains(&row) {
            out.push(row);
        }
    }
    Ok(SyzygyBasis {
        generator_count: n,
        rows: out,
    })
}

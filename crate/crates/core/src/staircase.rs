//! Combinatorics of monomial ideals: the Artinian test, standard-monomial
//! counting by pivot splitting, and Krull dimension by minimal variable covers.

use std::collections::HashMap;

use crate::error::{HkError, Result};
use crate::groebner::GroebnerBasis;
use crate::monomial::Monomial;

/// Minimal generators of the monomial ideal spanned by `gens`, sorted.
pub fn minimal_generators(gens: &[Vec<u16>]) -> Vec<Vec<u16>> {
    let mut v: Vec<Vec<u16>> = gens.to_vec();
    v.sort_by_key(|e| (e.iter().map(|&x| x as u32).sum::<u32>(), e.clone()));
    v.dedup();
    let mut out: Vec<Vec<u16>> = Vec::with_capacity(v.len());
    for e in v {
        if !out.iter().any(|d| d.iter().zip(&e).all(|(a, b)| a <= b)) {
            out.push(e);
        }
    }
    out.sort();
    out
}

/// True iff every variable has a pure power among the monomials.
pub fn is_artinian_monomials(leads: &[Monomial], nvars: usize) -> bool {
    (0..nvars).all(|i| {
        leads.iter().any(|m| {
            m.exponents()[i] > 0
                && m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| j == i || e == 0)
        })
    }) || leads.iter().any(|m| m.is_one())
}

/// Whether the quotient by the ideal of `gb` has finite length.
pub fn is_artinian(gb: &GroebnerBasis, nvars: usize) -> bool {
    is_artinian_monomials(gb.lead_monomials(), nvars)
}

fn pure_power_var(e: &[u16]) -> Option<usize> {
    let mut var = None;
    for (i, &x) in e.iter().enumerate() {
        if x > 0 {
            if var.is_some() {
                return None;
            }
            var = Some(i);
        }
    }
    var
}

struct Counter {
    memo: HashMap<Vec<Vec<u16>>, u128>,
}

impl Counter {
    fn count(&mut self, gens: Vec<Vec<u16>>) -> u128 {
        let gens = minimal_generators(&gens);
        if gens.iter().any(|e| e.iter().all(|&x| x == 0)) {
            return 0;
        }
        if let Some(&v) = self.memo.get(&gens) {
            return v;
        }
        let nvars = gens[0].len();
        let mixed: Vec<&Vec<u16>> = gens.iter().filter(|e| pure_power_var(e).is_none()).collect();
        let result = if mixed.is_empty() {
            let mut bounds = vec![0u128; nvars];
            for e in &gens {
                let i = pure_power_var(e).expect("pure power");
                bounds[i] = e[i] as u128;
            }
            bounds.iter().product()
        } else {
            // pivot on the variable occurring in most mixed generators, at the
            // median of its nonzero exponents there
            let var = (0..nvars)
                .max_by_key(|&i| (mixed.iter().filter(|e| e[i] > 0).count(), std::cmp::Reverse(i)))
                .unwrap();
            let mut exps: Vec<u16> = mixed.iter().map(|e| e[var]).filter(|&x| x > 0).collect();
            exps.sort_unstable();
            let a = exps[exps.len() / 2];
            let mut pivot = vec![0u16; nvars];
            pivot[var] = a;
            // #std(I) = #std(I + (x^a)) + #std(I : x^a)
            let mut with_pivot = gens.clone();
            with_pivot.push(pivot);
            let colon: Vec<Vec<u16>> = gens
                .iter()
                .map(|e| {
                    let mut c = e.clone();
                    c[var] = c[var].saturating_sub(a);
                    c
                })
                .collect();
            self.count(with_pivot) + self.count(colon)
        };
        self.memo.insert(gens, result);
        result
    }
}

/// Number of monomials outside the monomial ideal spanned by `leads`.
pub fn standard_monomial_count(leads: &[Monomial], nvars: usize) -> Result<u64> {
    if leads.iter().any(|m| m.nvars() != nvars) {
        return Err(HkError::ArityMismatch(nvars, leads[0].nvars()));
    }
    if leads.iter().any(|m| m.is_one()) {
        return Ok(0);
    }
    if nvars == 0 {
        return Ok(1);
    }
    if !is_artinian_monomials(leads, nvars) {
        return Err(HkError::InfiniteLength);
    }
    let gens: Vec<Vec<u16>> = leads.iter().map(|m| m.exponents().to_vec()).collect();
    let n = Counter { memo: HashMap::new() }.count(gens);
    u64::try_from(n).map_err(|_| HkError::ExponentOverflow)
}

/// Lists the standard monomials of an Artinian monomial ideal in ascending
/// exponent-vector order.
pub fn standard_monomials(leads: &[Monomial], nvars: usize) -> Result<Vec<Monomial>> {
    if leads.iter().any(|m| m.is_one()) {
        return Ok(Vec::new());
    }
    if !is_artinian_monomials(leads, nvars) {
        return Err(HkError::InfiniteLength);
    }
    let mut bounds = vec![u16::MAX; nvars];
    for m in leads {
        if let Some(i) = pure_power_var(m.exponents()) {
            bounds[i] = bounds[i].min(m.exponents()[i]);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(
        i: usize,
        cur: &mut Vec<u16>,
        bounds: &[u16],
        leads: &[Monomial],
        out: &mut Vec<Monomial>,
    ) {
        if i == cur.len() {
            out.push(Monomial::from_slice(cur));
            return;
        }
        for e in 0..bounds[i] {
            cur[i] = e;
            // prune: if the partial exponent (later ones zero) is already in the
            // ideal, so is every extension
            let probe = Monomial::from_slice(cur);
            if leads.iter().any(|l| l.divides(&probe)) {
                break;
            }
            rec(i + 1, cur, bounds, leads, out);
        }
        cur[i] = 0;
    }
    rec(0, &mut cur, &bounds, leads, &mut out);
    Ok(out)
}

/// Krull dimension of `k[x_1..x_n] / (leads)`: `n` minus the size of a minimum
/// set of variables meeting the support of every minimal generator.
pub fn krull_dimension(leads: &[Monomial], nvars: usize) -> Result<usize> {
    if leads.iter().any(|m| m.is_one()) {
        return Err(HkError::UnitIdeal);
    }
    if nvars > 64 {
        return Err(HkError::Invalid("dimension search supports at most 64 variables".into()));
    }
    let gens: Vec<Vec<u16>> = leads.iter().map(|m| m.exponents().to_vec()).collect();
    let mut supports: Vec<u64> = minimal_generators(&gens)
        .iter()
        .map(|e| {
            e.iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .fold(0u64, |s, (i, _)| s | 1 << i)
        })
        .collect();
    supports.sort_by_key(|s| s.count_ones());
    supports.dedup();
    // drop supports that contain another support: covering the smaller one suffices
    let sets: Vec<u64> = supports
        .iter()
        .filter(|&&s| !supports.iter().any(|&t| t != s && t & s == t))
        .copied()
        .collect();

    fn search(sets: &[u64], chosen: u64, size: u32, best: &mut u32) {
        if size >= *best {
            return;
        }
        match sets.iter().find(|&&s| s & chosen == 0) {
            None => *best = size,
            Some(&s) => {
                if size + 1 >= *best {
                    return;
                }
                let mut bits = s;
                while bits != 0 {
                    let v = bits.trailing_zeros();
                    bits &= bits - 1;
                    search(sets, chosen | 1 << v, size + 1, best);
                }
            }
        }
    }
    let mut best = nvars as u32 + 1;
    search(&sets, 0, 0, &mut best);
    Ok(nvars - best.min(nvars as u32) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mons(v: &[&[u16]]) -> Vec<Monomial> {
        v.iter().map(|e| Monomial::from_slice(e)).collect()
    }

    #[test]
    fn artinian_checks() {
        assert!(is_artinian_monomials(&mons(&[&[3, 0], &[0, 3], &[1, 1]]), 2));
        assert!(!is_artinian_monomials(&mons(&[&[1, 1]]), 2));
        assert!(is_artinian_monomials(&mons(&[&[1]]), 1));
    }

    #[test]
    fn staircase_counts() {
        assert_eq!(standard_monomial_count(&mons(&[&[3, 0], &[0, 3], &[1, 1]]), 2).unwrap(), 5);
        assert_eq!(standard_monomial_count(&mons(&[&[1, 0], &[0, 1]]), 2).unwrap(), 1);
        for (a, b) in [(1u16, 1u16), (4, 7), (13, 2)] {
            assert_eq!(
                standard_monomial_count(&mons(&[&[a, 0], &[0, b]]), 2).unwrap(),
                (a as u64) * (b as u64)
            );
        }
        assert_eq!(
            standard_monomial_count(&mons(&[&[1, 1]]), 2),
            Err(HkError::InfiniteLength)
        );
        assert_eq!(standard_monomial_count(&mons(&[&[0, 0]]), 2).unwrap(), 0);
    }

    #[test]
    fn listing_matches_count() {
        let leads = mons(&[&[3, 0, 0], &[0, 4, 0], &[0, 0, 2], &[1, 1, 1], &[2, 2, 0]]);
        let list = standard_monomials(&leads, 3).unwrap();
        assert_eq!(list.len() as u64, standard_monomial_count(&leads, 3).unwrap());
        assert!(list.iter().all(|m| !leads.iter().any(|l| l.divides(m))));
    }

    #[test]
    fn dimensions() {
        assert_eq!(krull_dimension(&mons(&[&[1, 1]]), 2).unwrap(), 1);
        assert_eq!(krull_dimension(&[], 3).unwrap(), 3);
        assert_eq!(
            krull_dimension(&mons(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]), 4).unwrap(),
            3
        );
        assert_eq!(krull_dimension(&mons(&[&[0, 0]]), 2), Err(HkError::UnitIdeal));
        // triangle xy, yz, xz needs two variables
        assert_eq!(
            krull_dimension(&mons(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]), 3).unwrap(),
            1
        );
    }
}

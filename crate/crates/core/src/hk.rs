//! Frobenius bracket powers and Hilbert–Kunz functions.
//!
//! For a ring `R = P / I` of dimension `d` and an ideal `J` primary to the
//! irrelevant maximal ideal, the `e`-th sample is `l(R / J^[q]) / q^d` with
//! `q = p^e`, the length being the number of standard monomials of a Gröbner
//! basis of `I + J^[q]`.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::constructions::{ConstructionKind, ConstructionReport};
use crate::error::{HkError, Result};
use crate::groebner::{buchberger_in, ideal_equal, GroebnerBasis};
use crate::linalg;
use crate::module::ModulePresentation;
use crate::poly::Polynomial;
use crate::ring::RingPresentation;
use crate::staircase;
use crate::Rational;

/// `e` with `q = p^e`, if any.
pub fn frobenius_exponent(q: u64, p: u32) -> Option<u32> {
    let mut e = 0;
    let mut v = 1u64;
    while v < q {
        v = v.checked_mul(p as u64)?;
        e += 1;
    }
    (v == q).then_some(e)
}

/// `p^e`, failing on overflow.
pub fn frobenius_power(p: u32, e: u32) -> Result<u64> {
    (p as u64).checked_pow(e).ok_or(HkError::ExponentOverflow)
}

/// `{g^q}` for the generators `g`; these generate `J^[q]` because `q`-th powers
/// are additive in characteristic `p`.
pub fn bracket_power(generators: &[Polynomial], q: u64) -> Result<Vec<Polynomial>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let p = first.field().characteristic();
    if q == 0 || frobenius_exponent(q, p).is_none() {
        return Err(HkError::NotFrobeniusPower { q, p });
    }
    generators.iter().map(|g| g.frobenius(q)).collect()
}

/// One value `length / q^d` of a Hilbert–Kunz function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkSample {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    pub dimension: usize,
    pub normalized: Rational,
}

impl HkSample {
    pub fn new(e: u32, q: u64, length: u64, dimension: usize) -> Self {
        let normalized = Rational::new(
            BigInt::from(length),
            BigInt::from(q).pow(dimension as u32),
        );
        HkSample {
            e,
            q,
            length,
            dimension,
            normalized,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EstimateMethod {
    LastSample,
    TwoPointFit,
}

impl EstimateMethod {
    pub fn name(self) -> &'static str {
        match self {
            EstimateMethod::LastSample => "last-sample",
            EstimateMethod::TwoPointFit => "two-point-fit",
        }
    }
}

/// An extrapolated multiplicity together with the samples behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkEstimate {
    pub value: Rational,
    pub method: EstimateMethod,
    pub samples: Vec<HkSample>,
    pub error_indicator: Rational,
}

impl HkEstimate {
    /// An estimate carrying a known exact value (no samples).
    pub fn exact(value: Rational) -> Self {
        HkEstimate {
            value,
            method: EstimateMethod::LastSample,
            samples: Vec::new(),
            error_indicator: Rational::zero(),
        }
    }
}

/// Solves `l_i = a q_i^d + b q_i^(d-1)` on two samples and returns `a`.
pub fn two_point_fit(s1: &HkSample, s2: &HkSample) -> Result<Rational> {
    if s1.dimension != s2.dimension {
        return Err(HkError::BadDims("samples disagree on the dimension".into()));
    }
    let d = s1.dimension as u32;
    if d == 0 {
        return Err(HkError::ZeroDimensionalRing);
    }
    if s1.q == s2.q {
        return Err(HkError::Invalid("two-point fit needs distinct q".into()));
    }
    let (q1, q2) = (BigInt::from(s1.q), BigInt::from(s2.q));
    let (l1, l2) = (BigInt::from(s1.length), BigInt::from(s2.length));
    let num = &l2 * q1.pow(d - 1) - &l1 * q2.pow(d - 1);
    let den = q2.pow(d) * q1.pow(d - 1) - q1.pow(d) * q2.pow(d - 1);
    Ok(Rational::new(num, den))
}

/// Estimates the multiplicity from samples ordered by increasing `e`.
///
/// The error indicator of the two-point fit is the gap between the fits on
/// the last two and on the two preceding samples, or, with exactly two
/// samples, the gap between the fit and the last normalized value.
pub fn hk_estimate(samples: &[HkSample], method: EstimateMethod) -> Result<HkEstimate> {
    let needed = match method {
        EstimateMethod::LastSample => 1,
        EstimateMethod::TwoPointFit => 2,
    };
    if samples.len() < needed {
        return Err(HkError::InsufficientSamples {
            needed,
            got: samples.len(),
        });
    }
    let n = samples.len();
    Ok(match method {
        EstimateMethod::LastSample => HkEstimate {
            value: samples[n - 1].normalized.clone(),
            method,
            samples: vec![samples[n - 1].clone()],
            error_indicator: Rational::zero(),
        },
        EstimateMethod::TwoPointFit => {
            let value = two_point_fit(&samples[n - 2], &samples[n - 1])?;
            let reference = if n >= 3 {
                two_point_fit(&samples[n - 3], &samples[n - 2])?
            } else {
                samples[n - 1].normalized.clone()
            };
            let error_indicator = (&value - reference).abs();
            HkEstimate {
                value,
                method,
                samples: samples[n - 2..].to_vec(),
                error_indicator,
            }
        }
    })
}

fn check_ideal(ring: &RingPresentation, j: &[Polynomial]) -> Result<Vec<Polynomial>> {
    j.iter()
        .map(|g| {
            if g.field() != ring.field() {
                Err(HkError::CharMismatch(ring.characteristic(), g.field().characteristic()))
            } else if g.nvars() != ring.nvars() {
                Err(HkError::ArityMismatch(ring.nvars(), g.nvars()))
            } else {
                Ok(g.with_order(ring.order()))
            }
        })
        .collect()
}

/// Gröbner basis of `I + J^[q]`.
pub fn frobenius_quotient_basis(ring: &RingPresentation, j: &[Polynomial], q: u64) -> Result<GroebnerBasis> {
    let mut gens = ring.generators().to_vec();
    gens.extend(bracket_power(j, q)?);
    buchberger_in(ring.field(), ring.nvars(), &gens, ring.order())
}

/// `f^k` in the quotient by `gb`, reducing after every product.
fn power_mod(f: &Polynomial, mut k: u64, gb: &GroebnerBasis) -> Result<Polynomial> {
    let mut acc = gb.normal_form(&Polynomial::constant(f.field(), f.nvars(), f.order().clone(), 1))?;
    let mut base = gb.normal_form(f)?;
    while k > 0 && !acc.is_zero() {
        if k & 1 == 1 {
            acc = gb.normal_form(&acc.mul(&base)?)?;
        }
        k >>= 1;
        if k > 0 {
            base = gb.normal_form(&base.mul(&base)?)?;
        }
    }
    Ok(acc)
}

/// Checks that `I + J` is primary to the irrelevant maximal ideal: the quotient
/// is Artinian and every variable is nilpotent in it.
pub fn check_primary(ring: &RingPresentation, j: &[Polynomial]) -> Result<()> {
    let j = check_ideal(ring, j)?;
    let mut gens = ring.generators().to_vec();
    gens.extend(j);
    let gb = buchberger_in(ring.field(), ring.nvars(), &gens, ring.order())?;
    if gb.is_unit_ideal() {
        return Err(HkError::UnitIdeal);
    }
    if !staircase::is_artinian(&gb, ring.nvars()) {
        return Err(HkError::NotPrimary);
    }
    // in an algebra of vector-space dimension L, x is nilpotent iff x^L = 0
    let len = staircase::standard_monomial_count(gb.lead_monomials(), ring.nvars())?;
    for x in ring.variables() {
        if !power_mod(&x, len, &gb)?.is_zero() {
            return Err(HkError::NotPrimary);
        }
    }
    Ok(())
}

fn positive_dimension(ring: &RingPresentation) -> Result<usize> {
    let d = ring.dimension()?;
    if d == 0 {
        return Err(HkError::ZeroDimensionalRing);
    }
    Ok(d)
}

/// Samples of the Hilbert–Kunz function of `ring` with respect to `j` for
/// `e = 1..=e_max`. Samples are computed in parallel on the current rayon pool
/// and returned in `e` order.
pub fn hk_function(ring: &RingPresentation, j: &[Polynomial], e_max: u32) -> Result<Vec<HkSample>> {
    Ok(hk_function_timed(ring, j, e_max)?.into_iter().map(|(s, _)| s).collect())
}

/// [`hk_function`] with the wall-clock time spent on each sample.
pub fn hk_function_timed(ring: &RingPresentation, j: &[Polynomial], e_max: u32) -> Result<Vec<(HkSample, Duration)>> {
    if e_max == 0 {
        return Err(HkError::Invalid("e_max must be at least 1".into()));
    }
    let d = positive_dimension(ring)?;
    let j = check_ideal(ring, j)?;
    check_primary(ring, &j)?;
    let p = ring.characteristic();
    (1..=e_max)
        .into_par_iter()
        .map(|e| {
            let start = Instant::now();
            let q = frobenius_power(p, e)?;
            let gb = frobenius_quotient_basis(ring, &j, q)?;
            let length = staircase::standard_monomial_count(gb.lead_monomials(), ring.nvars())?;
            Ok((HkSample::new(e, q, length, d), start.elapsed()))
        })
        .collect()
}

/// Length of `M / J^[q] M` for `M = coker(A)`: with `B = P / (I + J^[q])` of
/// vector-space dimension `L`, this is `n L` minus the rank of the map
/// `B^m -> B^n` given by `A`.
fn module_length(module: &ModulePresentation, j: &[Polynomial], q: u64) -> Result<u64> {
    let ring = module.ring();
    let gb = frobenius_quotient_basis(ring, j, q)?;
    let basis = staircase::standard_monomials(gb.lead_monomials(), ring.nvars())?;
    let l = basis.len();
    let n = module.generator_count();
    let m = module.relation_count();
    if m == 0 || l == 0 {
        return Ok((n * l) as u64);
    }
    let index: HashMap<_, usize> = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    let mut rows = Vec::with_capacity(m * l);
    for s in 0..m {
        for b in &basis {
            let mut v = vec![0u32; n * l];
            for i in 0..n {
                let a = module.entry(i, s);
                if a.is_zero() {
                    continue;
                }
                let prod = gb.normal_form(&a.mul_term(b, 1)?)?;
                for (mono, c) in prod.terms() {
                    v[i * l + index[mono]] = *c;
                }
            }
            rows.push(v);
        }
    }
    let r = linalg::rank(ring.field(), rows);
    Ok((n * l - r) as u64)
}

/// Samples of `l(M / J^[q] M) / q^d`, `d` the dimension of the base ring.
pub fn hk_module_function(module: &ModulePresentation, j: &[Polynomial], e_max: u32) -> Result<Vec<HkSample>> {
    Ok(hk_module_function_timed(module, j, e_max)?.into_iter().map(|(s, _)| s).collect())
}

/// [`hk_module_function`] with the wall-clock time spent on each sample.
pub fn hk_module_function_timed(
    module: &ModulePresentation,
    j: &[Polynomial],
    e_max: u32,
) -> Result<Vec<(HkSample, Duration)>> {
    if e_max == 0 {
        return Err(HkError::Invalid("e_max must be at least 1".into()));
    }
    let ring = module.ring();
    let d = positive_dimension(ring)?;
    let j = check_ideal(ring, j)?;
    check_primary(ring, &j)?;
    let p = ring.characteristic();
    (1..=e_max)
        .into_par_iter()
        .map(|e| {
            let start = Instant::now();
            let q = frobenius_power(p, e)?;
            let length = module_length(module, &j, q)?;
            Ok((HkSample::new(e, q, length, d), start.elapsed()))
        })
        .collect()
}

/// Compares the two sides of `(I ⋉ M)^[q] = I^[q] (R ⋉ M)` inside an
/// idealization: the left side brackets `I` together with every module
/// variable, the right side brackets `I` alone.
pub fn bracket_identity_check(report: &ConstructionReport, i_lift: &[Polynomial], q: u64) -> Result<bool> {
    if report.kind != ConstructionKind::Idealization {
        return Err(HkError::Invalid("bracket identity applies to idealizations".into()));
    }
    let ring = &report.result;
    let p = ring.characteristic();
    if q < p as u64 || frobenius_exponent(q, p).is_none() {
        return Err(HkError::NotFrobeniusPower { q, p });
    }
    let i_lift = check_ideal(ring, i_lift)?;
    let mut j = i_lift.clone();
    j.extend(report.module_variables().into_iter().map(|v| ring.var(v)));
    let mut lhs = ring.generators().to_vec();
    lhs.extend(bracket_power(&j, q)?);
    let mut rhs = ring.generators().to_vec();
    rhs.extend(bracket_power(&i_lift, q)?);
    if lhs.is_empty() && rhs.is_empty() {
        return Ok(true);
    }
    ideal_equal(&lhs, &rhs, ring.order())
}

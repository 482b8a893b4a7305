//! Closed-form Hilbert–Kunz values, lower bounds and the verdict engine.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{HkError, Result};
use crate::hk::HkEstimate;
use crate::linalg;
use crate::module::ModulePresentation;
use crate::series::zigzag_m;
use crate::Rational;

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Default relative tolerance for extrapolated estimates.
pub fn default_tolerance() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(20))
}

/// `e_HK` of a fiber product `R x_T S` from the components' values; dimensions
/// must satisfy `dim R >= dim S >= dim T`.
pub fn fiber_formula(
    ehk_r: &Rational,
    ehk_s: &Rational,
    ehk_t: &Rational,
    dim_r: usize,
    dim_s: usize,
    dim_t: usize,
) -> Result<Rational> {
    if !(dim_r >= dim_s && dim_s >= dim_t) {
        return Err(HkError::BadDims(format!(
            "need dim R >= dim S >= dim T, got ({dim_r}, {dim_s}, {dim_t})"
        )));
    }
    Ok(if dim_r == dim_t {
        ehk_r + ehk_s - ehk_t
    } else if dim_r == dim_s {
        ehk_r + ehk_s
    } else {
        ehk_r.clone()
    })
}

/// [`fiber_formula`] with the components put in dimension order first.
pub fn fiber_formula_normalized(
    a: (&Rational, usize),
    b: (&Rational, usize),
    t: (&Rational, usize),
) -> Result<Rational> {
    let (hi, lo) = if a.1 >= b.1 { (a, b) } else { (b, a) };
    fiber_formula(hi.0, lo.0, t.0, hi.1, lo.1, t.1)
}

/// Multi-factor fiber product over a common `T`.
pub fn multi_fiber_formula(ehks: &[Rational], dims: &[usize], ehk_t: &Rational, dim_t: usize) -> Result<Rational> {
    if ehks.len() < 2 || ehks.len() != dims.len() {
        return Err(HkError::BadDims("need r >= 2 components with one dimension each".into()));
    }
    let top = *dims.iter().max().unwrap();
    if dims.iter().any(|&d| d < dim_t) {
        return Err(HkError::BadDims("component dimension below dim T".into()));
    }
    let r = ehks.len() as i64;
    Ok(if top == dim_t {
        ehks.iter().sum::<Rational>() - int(r - 1) * ehk_t
    } else {
        ehks.iter()
            .zip(dims)
            .filter(|(_, &d)| d == top)
            .map(|(e, _)| e.clone())
            .sum()
    })
}

/// `e_HK(R ⋈ I)` from `e_HK(R)` and `e_HK(R/I)`.
pub fn duplication_formula(ehk_r: &Rational, dim_r: usize, ehk_quot: &Rational, dim_quot: usize) -> Result<Rational> {
    if dim_quot > dim_r {
        return Err(HkError::BadDims(format!("dim R/I = {dim_quot} exceeds dim R = {dim_r}")));
    }
    Ok(if dim_r == dim_quot {
        int(2) * ehk_r - ehk_quot
    } else {
        int(2) * ehk_r
    })
}

/// `e_HK(R ⋉ M) = e_HK(R) + e_HK(m, M)`.
pub fn idealization_formula(ehk_r: &Rational, ehk_m_module: &Rational) -> Result<Rational> {
    if ehk_r.is_negative() || ehk_m_module.is_negative() {
        return Err(HkError::Invalid("multiplicities are non-negative".into()));
    }
    Ok(ehk_r + ehk_m_module)
}

/// Idealization when `dim M < dim R`: the module contributes nothing.
pub fn idealization_small_module(ehk_r: &Rational) -> Rational {
    ehk_r.clone()
}

/// Idealization along a proper ideal `I` with `dim R/I < dim R`: `2 e_HK(R)`.
pub fn idealization_ideal(ehk_r: &Rational) -> Rational {
    int(2) * ehk_r
}

/// `(sum (-1)^i beta_i + 1) e_HK(I, R)` for a module of finite projective dimension.
pub fn betti_formula(betti: &[u64], ehk_ir: &Rational) -> Rational {
    let alt: i64 = betti
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    int(alt + 1) * ehk_ir
}

/// Checks `e_HK(I, R) <= e_HK(J) <= (1 + mu) e_HK(I, R)`.
pub fn mu_bound(mu: u64, ehk_ir: &Rational, ehk_j: &Rational) -> bool {
    ehk_ir <= ehk_j && *ehk_j <= int(1 + mu as i64) * ehk_ir
}

/// Minimal number of generators: `n` minus the rank of the relations matrix
/// with all variables set to zero.
pub fn minimal_generator_count(module: &ModulePresentation) -> usize {
    let n = module.generator_count();
    let m = module.relation_count();
    let rows: Vec<Vec<u32>> = (0..m)
        .map(|s| (0..n).map(|i| module.entry(i, s).constant_term()).collect())
        .collect();
    n - linalg::rank(module.ring().field(), rows)
}

fn factorial(d: usize) -> BigInt {
    (1..=d).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn require_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(HkError::BadDims(format!("bound needs d >= 2, got {d}")));
    }
    Ok(())
}

/// `delta(d) = 1 / (d (d! (d-1) + 1)^d)`.
pub fn delta(d: usize) -> Result<Rational> {
    require_d(d)?;
    let inner = factorial(d) * BigInt::from(d - 1) + BigInt::one();
    Ok(Rational::new(BigInt::one(), BigInt::from(d) * inner.pow(d as u32)))
}

/// Lower bound `1 + delta(d)` for non-regular unmixed rings of dimension `d`.
pub fn aberbach_enescu_bound(d: usize) -> Result<Rational> {
    Ok(Rational::one() + delta(d)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberCase {
    BothRegular,
    OneNonregular,
    BothNonregular,
    StrictDims,
}

impl FiberCase {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "both-regular" => FiberCase::BothRegular,
            "one-nonregular" => FiberCase::OneNonregular,
            "both-nonregular" => FiberCase::BothNonregular,
            "strict-dims" => FiberCase::StrictDims,
            _ => return None,
        })
    }
}

/// Lower bound (exact value for two regular components) for a `d`-dimensional
/// fiber product.
pub fn fiber_bound(case: FiberCase, d: usize) -> Result<Rational> {
    let delta = delta(d)?;
    Ok(match case {
        FiberCase::BothRegular => int(2),
        FiberCase::OneNonregular => int(2) + delta,
        FiberCase::BothNonregular => int(2) * (Rational::one() + delta),
        FiberCase::StrictDims => Rational::one() + delta,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultiFiberCase {
    EqualDimT,
    Strict,
}

/// Bound for an `r`-factor fiber product with `t` non-regular components of top
/// dimension.
pub fn multi_fiber_bound(r: usize, t: usize, d: usize, ehk_t: &Rational, case: MultiFiberCase) -> Result<Rational> {
    if r < 2 || t < 1 || t > r {
        return Err(HkError::BadDims(format!("need r >= 2 and 1 <= t <= r, got r={r}, t={t}")));
    }
    let base = aberbach_enescu_bound(d)?;
    Ok(match case {
        MultiFiberCase::EqualDimT => int(r as i64) * base - int(r as i64 - 1) * ehk_t,
        MultiFiberCase::Strict => int(t as i64) * base,
    })
}

/// `(1 + #Lambda)(1 + delta(d))` for idealizations.
pub fn idealization_bound(lambda_count: usize, d: usize) -> Result<Rational> {
    Ok(int(1 + lambda_count as i64) * aberbach_enescu_bound(d)?)
}

/// `(rank M + 1)(1 + delta(d))` for idealizations over a domain.
pub fn idealization_rank_bound(rank: usize, d: usize) -> Result<Rational> {
    Ok(int(rank as i64 + 1) * aberbach_enescu_bound(d)?)
}

/// `e_HK` of the `r`-th Veronese subring of a `d`-dimensional power series ring.
pub fn veronese_hk(r: usize, d: usize) -> Result<Rational> {
    if r < 1 || d < 1 {
        return Err(HkError::BadDims(format!("need r, d >= 1, got r={r}, d={d}")));
    }
    let c = binomial(BigInt::from(d + r - 1), BigInt::from(r - 1));
    Ok(Rational::new(c, BigInt::from(r)))
}

/// A comparison of a predicted value against an estimate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaVerdict {
    pub predicted: Rational,
    pub estimated: HkEstimate,
    pub absolute_gap: Rational,
    pub relative_gap: Rational,
    pub tolerance: Rational,
    pub pass: bool,
    pub citation: String,
    pub note: Option<String>,
}

/// Passes iff `|prediction - estimate| / max(prediction, 1) <= tolerance`.
pub fn verify(prediction: &Rational, estimate: &HkEstimate, tolerance: &Rational, citation: &str) -> Result<FormulaVerdict> {
    if tolerance.is_negative() {
        return Err(HkError::Invalid("tolerance must be non-negative".into()));
    }
    let absolute_gap = (prediction - &estimate.value).abs();
    let scale = if *prediction > Rational::one() {
        prediction.clone()
    } else {
        Rational::one()
    };
    let relative_gap = &absolute_gap / scale;
    Ok(FormulaVerdict {
        predicted: prediction.clone(),
        estimated: estimate.clone(),
        pass: relative_gap <= *tolerance,
        absolute_gap,
        relative_gap,
        tolerance: tolerance.clone(),
        citation: citation.to_string(),
        note: None,
    })
}

/// One-sided check `estimate >= threshold`; the relative gap records the
/// shortfall (zero when the estimate clears the threshold).
fn lower_bound_verdict(threshold: Rational, estimate: &HkEstimate, citation: &str, note: Option<String>) -> FormulaVerdict {
    let absolute_gap = (&estimate.value - &threshold).abs();
    let shortfall = if estimate.value < threshold {
        &threshold - &estimate.value
    } else {
        Rational::zero()
    };
    let scale = if threshold > Rational::one() {
        threshold.clone()
    } else {
        Rational::one()
    };
    let relative_gap = shortfall / scale;
    FormulaVerdict {
        pass: relative_gap.is_zero(),
        predicted: threshold,
        estimated: estimate.clone(),
        absolute_gap,
        relative_gap,
        tolerance: Rational::zero(),
        citation: citation.to_string(),
        note,
    }
}

/// Checks `estimate >= bound` exactly.
pub fn check_lower_bound(bound: &Rational, estimate: &HkEstimate, citation: &str) -> FormulaVerdict {
    lower_bound_verdict(bound.clone(), estimate, citation, None)
}

/// Checks the Watanabe–Yoshida property at dimension `d`: the estimate is at
/// least `1 + m_d` and, if a quadric estimate is supplied, at least that
/// estimate up to the default relative tolerance.
pub fn wy_check(estimate: &HkEstimate, d: usize, quadric: Option<&HkEstimate>) -> Result<FormulaVerdict> {
    if d < 1 {
        return Err(HkError::BadDims("dimension must be positive".into()));
    }
    let series_bound = Rational::one() + zigzag_m(d)?;
    let mut threshold = series_bound.clone();
    let mut citation = format!("WY1: e_HK >= 1 + m_{d} = {series_bound}");
    if let Some(qe) = quadric {
        let slack = Rational::one() - default_tolerance();
        let q_threshold = &qe.value * slack;
        citation.push_str(&format!("; quadric estimate {}", qe.value));
        if q_threshold > threshold {
            threshold = q_threshold;
        }
    }
    let note = (estimate.value <= Rational::one())
        .then(|| "estimate <= 1: regular rings are outside the hypothesis".to_string());
    Ok(lower_bound_verdict(threshold, estimate, &citation, note))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn fiber_formula_cases() {
        let v = fiber_formula(&(int(2) - q(1, 5)), &(int(2) - q(1, 8)), &int(1), 2, 2, 0).unwrap();
        assert_eq!(v, int(4) - q(13, 40));
        assert_eq!(fiber_formula(&int(1), &int(1), &int(1), 1, 1, 0).unwrap(), int(2));
        assert_eq!(fiber_formula(&int(1), &int(7), &int(1), 2, 1, 1).unwrap(), int(1));
        assert_eq!(fiber_formula(&q(3, 2), &q(5, 4), &int(1), 1, 1, 1).unwrap(), q(7, 4));
        assert!(matches!(fiber_formula(&int(1), &int(1), &int(1), 1, 2, 0), Err(HkError::BadDims(_))));
    }

    #[test]
    fn example_family_value() {
        // 4 - (5n-7)/(4(n+1)(n-2)) at n = 4
        let n = 4;
        assert_eq!(int(4) - q(5 * n - 7, 4 * (n + 1) * (n - 2)), q(147, 40));
    }

    #[test]
    fn multi_fiber_cases() {
        let ones = vec![int(1); 3];
        assert_eq!(multi_fiber_formula(&ones, &[1, 1, 1], &int(1), 0).unwrap(), int(3));
        assert_eq!(multi_fiber_formula(&[q(3, 2), q(5, 4)], &[1, 1], &q(9, 8), 1).unwrap(), q(3, 2) + q(5, 4) - q(9, 8));
        assert_eq!(multi_fiber_formula(&[int(2), int(5), int(5)], &[2, 1, 1], &int(1), 1).unwrap(), int(2));
        assert!(multi_fiber_formula(&[int(1)], &[1], &int(1), 0).is_err());
    }

    #[test]
    fn duplication_cases() {
        assert_eq!(duplication_formula(&int(1), 1, &int(0), 0).unwrap(), int(2));
        assert_eq!(duplication_formula(&int(1), 1, &int(1), 1).unwrap(), int(1));
        assert_eq!(duplication_formula(&int(2), 1, &int(0), 0).unwrap(), int(4));
        assert!(duplication_formula(&int(1), 1, &int(1), 2).is_err());
    }

    #[test]
    fn idealization_and_betti() {
        assert_eq!(idealization_formula(&int(2), &int(2)).unwrap(), int(4));
        assert_eq!(idealization_formula(&int(3), &int(0)).unwrap(), int(3));
        for n in 0..5 {
            assert_eq!(idealization_formula(&int(1), &int(n)).unwrap(), int(n + 1));
        }
        assert_eq!(idealization_small_module(&q(4, 3)), q(4, 3));
        assert_eq!(idealization_ideal(&q(4, 3)), q(8, 3));
        assert_eq!(betti_formula(&[3], &q(4, 3)), int(4) * q(4, 3));
        assert_eq!(betti_formula(&[1, 1], &q(4, 3)), q(4, 3));
        assert_eq!(betti_formula(&[2, 3, 1], &int(0)), int(0));
    }

    #[test]
    fn mu_bounds() {
        assert!(mu_bound(1, &int(1), &int(2)));
        assert!(!mu_bound(1, &int(1), &q(1, 2)));
        assert!(mu_bound(2, &int(2), &int(6)));
        assert!(!mu_bound(2, &int(2), &int(7)));
    }

    #[test]
    fn bound_values() {
        assert_eq!(aberbach_enescu_bound(2).unwrap(), q(19, 18));
        assert_eq!(aberbach_enescu_bound(3).unwrap(), int(1) + q(1, 6591));
        assert!(aberbach_enescu_bound(2).unwrap() < q(3, 2));
        assert!(aberbach_enescu_bound(1).is_err());
        assert_eq!(fiber_bound(FiberCase::BothRegular, 5).unwrap(), int(2));
        assert_eq!(fiber_bound(FiberCase::BothNonregular, 2).unwrap(), q(19, 9));
        assert_eq!(fiber_bound(FiberCase::OneNonregular, 2).unwrap(), int(2) + q(1, 18));
        assert_eq!(fiber_bound(FiberCase::StrictDims, 3).unwrap(), int(1) + q(1, 6591));
        assert_eq!(multi_fiber_bound(2, 2, 2, &int(0), MultiFiberCase::Strict).unwrap(), q(19, 9));
        assert_eq!(
            multi_fiber_bound(3, 3, 3, &int(0), MultiFiberCase::Strict).unwrap(),
            int(3) * (int(1) + q(1, 6591))
        );
        assert_eq!(multi_fiber_bound(2, 2, 2, &int(1), MultiFiberCase::EqualDimT).unwrap(), q(10, 9));
        assert!(multi_fiber_bound(2, 3, 2, &int(1), MultiFiberCase::Strict).is_err());
        assert_eq!(idealization_bound(1, 2).unwrap(), q(19, 9));
        assert_eq!(idealization_rank_bound(0, 3).unwrap(), int(1) + q(1, 6591));
        assert_eq!(idealization_bound(0, 4).unwrap(), aberbach_enescu_bound(4).unwrap());
    }

    #[test]
    fn bounds_decrease_with_dimension() {
        for d in 2..10 {
            assert!(aberbach_enescu_bound(d + 1).unwrap() < aberbach_enescu_bound(d).unwrap());
            for case in [FiberCase::OneNonregular, FiberCase::BothNonregular, FiberCase::StrictDims] {
                assert!(fiber_bound(case, d + 1).unwrap() < fiber_bound(case, d).unwrap());
            }
            assert!(idealization_bound(2, d + 1).unwrap() < idealization_bound(2, d).unwrap());
            assert!(
                multi_fiber_bound(3, 2, d + 1, &int(1), MultiFiberCase::Strict).unwrap()
                    < multi_fiber_bound(3, 2, d, &int(1), MultiFiberCase::Strict).unwrap()
            );
        }
    }

    #[test]
    fn veronese() {
        assert_eq!(veronese_hk(1, 4).unwrap(), int(1));
        assert_eq!(veronese_hk(2, 2).unwrap(), q(3, 2));
        assert_eq!(veronese_hk(2, 2).unwrap() + veronese_hk(2, 2).unwrap(), int(3));
        assert!(veronese_hk(0, 2).is_err());
    }

    #[test]
    fn verdicts() {
        let est = |v: Rational| HkEstimate::exact(v);
        assert!(verify(&int(2), &est(int(2)), &int(0), "exact").unwrap().pass);
        assert!(verify(&q(147, 40), &est(q(147, 40) * q(101, 100)), &q(1, 20), "x").unwrap().pass);
        let v = verify(&q(4, 3), &est(q(130, 100)), &q(1, 100), "x").unwrap();
        assert!(!v.pass);
        assert_eq!(v.relative_gap, q(1, 40));
        assert!(verify(&int(1), &est(int(1)), &q(-1, 2), "x").is_err());
    }

    #[test]
    fn wy_verdicts() {
        let est = |v: Rational| HkEstimate::exact(v);
        assert!(wy_check(&est(int(2)), 2, None).unwrap().pass);
        let tight = wy_check(&est(q(4, 3)), 3, None).unwrap();
        assert!(tight.pass);
        assert!(tight.absolute_gap.is_zero());
        let reg = wy_check(&est(int(1)), 2, None).unwrap();
        assert!(!reg.pass);
        assert!(reg.note.is_some());
        // a quadric estimate raises the threshold
        assert!(!wy_check(&est(q(3, 2)), 2, Some(&est(int(2)))).unwrap().pass);
        assert!(wy_check(&est(int(2)), 2, Some(&est(int(2)))).unwrap().pass);
        assert!(wy_check(&est(int(2)), 0, None).is_err());
    }
}

//! Closed-form comparison constants and radius bounds.
//!
//! Everything here is a pure function of integer dimensions and a real
//! exponent, evaluated through log-gamma arithmetic so that dimensions up
//! to 10⁶ stay far from overflow. The central quantity is
//!
//! ```text
//!   μ_{d,p} = (E ‖G‖₂^p)^{1/p} = √2 (Γ((d+p)/2) / Γ(d/2))^{1/p}
//! ```
//!
//! the L_p norm of the Euclidean length of a standard Gaussian d-vector;
//! μ_d = μ_{d,1} is the chi-distribution mean. The bounds exported here:
//!
//! * `lambda_min_upper_l1` / `lambda_min_upper`: no subspace of dimension d
//!   can have every unit vector with ℓ_p norm above this value (first-moment
//!   argument), so it caps λ_min.
//! * `lambda_max_lower`: the ℓ₁ norm maximum over the unit sphere of any
//!   d-dimensional subspace is at least √d (trace inequality argument).
//! * `volume_ratio_lower`: the weaker Meyer–Pajor volume comparison for the
//!   same quantity, valid for p ∈ [1,2].
//! * `sphere_mean_l1`: the exact average of ‖·‖₁ over the Euclidean unit
//!   sphere, N μ₁ / μ_N.

use crate::error::{Error, Result};
use crate::measure::{Field, Measure};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

const FRAC_LN_2_2: f64 = std::f64::consts::LN_2 / 2.0;

/// Stirling-series tail of ln Γ: ln Γ(y) = (y−½)ln y − y + ½ln 2π + corr(y).
fn stirling_corr(y: f64) -> f64 {
    // B_{2n} / (2n(2n−1) y^{2n−1}) for n = 1..7
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut s = 0.0;
    for &c in C.iter().rev() {
        s = s * inv2 + c;
    }
    s * inv
}

/// ln Γ(x + a) − ln Γ(x), computed without cancellation for large x.
///
/// Subtracting two ln Γ values of size ~x ln x loses ~x·ε absolutely,
/// which at x = 5·10⁵ already costs eight digits of the (order-one)
/// difference. Above the cutoff we instead expand the difference of the
/// Stirling forms directly:
///
/// ```text
///   ln Γ(x+a) − ln Γ(x) = (x−½)·ln1p(a/x) + a·ln(x+a) − a
///                         + corr(x+a) − corr(x)
/// ```
///
/// where every term is of the same order as the result.
pub(crate) fn ln_gamma_ratio(x: f64, a: f64) -> f64 {
    const CUTOFF: f64 = 12.0;
    if x >= CUTOFF {
        (x - 0.5) * (a / x).ln_1p() + a * (x + a).ln() - a + stirling_corr(x + a)
            - stirling_corr(x)
    } else {
        ln_gamma(x + a) - ln_gamma(x)
    }
}

/// μ_{d,p}: the L_p norm of the length of a standard Gaussian d-vector.
///
/// Relative accuracy is ~1e−14 across d ≤ 10⁶; exact values to check
/// against: μ_{1,1} = √(2/π), μ_{d,2} = √d.
pub fn gaussian_mean_norm(d: u64, p: f64) -> Result<f64> {
    if d < 1 {
        return Err(Error::Domain(format!("moment needs d ≥ 1, got {d}")));
    }
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::Domain(format!("moment needs p > 0, got {p}")));
    }
    let x = d as f64 / 2.0;
    Ok((ln_gamma_ratio(x, p / 2.0) / p + FRAC_LN_2_2).exp())
}

/// μ_d = E ‖G‖₂ = E χ_d, the chi-distribution mean.
pub fn chi_mean(d: u64) -> Result<f64> {
    gaussian_mean_norm(d, 1.0)
}

/// A frozen (d, p) ↦ μ_{d,p} evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianMoment {
    pub d: u64,
    pub p: f64,
    pub value: f64,
}

impl GaussianMoment {
    pub fn new(d: u64, p: f64) -> Result<Self> {
        Ok(GaussianMoment {
            d,
            p,
            value: gaussian_mean_norm(d, p)?,
        })
    }
}

fn check_dims(n: u64, d: u64) -> Result<()> {
    if d < 1 || d > n {
        return Err(Error::Domain(format!(
            "need 1 ≤ d ≤ N, got d = {d}, N = {n}"
        )));
    }
    Ok(())
}

fn check_p_range(p: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::Domain(format!("exponent p must lie in [1,2], got {p}")));
    }
    Ok(())
}

/// Upper bound √(2/π)·√N·√d/μ_d on λ_min for ℓ₁ under counting measure:
/// no d-dimensional subspace of ℝ^N satisfies λ‖x‖₂ ≤ ‖x‖₁ for a larger λ.
pub fn lambda_min_upper_l1(n: u64, d: u64) -> Result<f64> {
    check_dims(n, d)?;
    let mu_d = chi_mean(d)?;
    Ok((2.0 / std::f64::consts::PI).sqrt() * (n as f64).sqrt() * (d as f64).sqrt() / mu_d)
}

/// Upper bound on λ_min for ℓ_p, p ∈ [1,2], counting measure:
/// N^{1/p−1/2} √d · μ_{1,p}/μ_{d,p} (real) or μ_{2,p}/μ_{2d,p} (complex).
pub fn lambda_min_upper(n: u64, d: u64, p: f64, field: Field) -> Result<f64> {
    check_dims(n, d)?;
    check_p_range(p)?;
    let ratio = moment_ratio(d, p, field)?;
    Ok((n as f64).powf(1.0 / p - 0.5) * (d as f64).sqrt() * ratio)
}

/// The N-free factor μ_{1,p}/μ_{d,p} (or its complex analogue) times √d,
/// i.e. the λ_min upper bound under the normalized measure. Strictly
/// below 1 for all d ≥ 2 and p ∈ [1,2).
pub fn lambda_min_upper_normalized(d: u64, p: f64, field: Field) -> Result<f64> {
    if d < 1 {
        return Err(Error::Domain(format!("need d ≥ 1, got {d}")));
    }
    check_p_range(p)?;
    Ok((d as f64).sqrt() * moment_ratio(d, p, field)?)
}

fn moment_ratio(d: u64, p: f64, field: Field) -> Result<f64> {
    match field {
        Field::Real => Ok(gaussian_mean_norm(1, p)? / gaussian_mean_norm(d, p)?),
        Field::Complex => Ok(gaussian_mean_norm(2, p)? / gaussian_mean_norm(2 * d, p)?),
    }
}

/// The complex ℓ₁ upper bound written in its p = 1 closed form,
/// (√π/2)·√N·√(2d)/μ_{2d}. Identical to
/// `lambda_min_upper(n, d, 1, Complex)`; kept as an independent expression
/// so the two derivations can be cross-checked.
pub fn complex_l1_upper(n: u64, d: u64) -> Result<f64> {
    check_dims(n, d)?;
    let mu_2d = chi_mean(2 * d)?;
    Ok(std::f64::consts::PI.sqrt() / 2.0 * (n as f64).sqrt() * (2.0 * d as f64).sqrt() / mu_2d)
}

/// Lower bound √d on λ_max for ℓ₁: the maximum of ‖x‖₁ over the unit
/// sphere of any d-dimensional subspace is at least √d, with equality on
/// coordinate subspaces.
pub fn lambda_max_lower(d: u64) -> f64 {
    (d as f64).sqrt()
}

/// Volume-comparison lower bound (Vol B₂^d / Vol B_p^d)^{1/d} on λ_max,
/// valid for p ∈ [1,2] (Meyer–Pajor: coordinate sections of B_p^N maximize
/// volume). Weaker than `lambda_max_lower` at p = 1 but robust in p.
pub fn volume_ratio_lower(d: u64, p: f64) -> Result<f64> {
    if d < 1 {
        return Err(Error::Domain(format!("need d ≥ 1, got {d}")));
    }
    check_p_range(p)?;
    let df = d as f64;
    // ln Vol(B₂^d) = (d/2) ln π − ln Γ(1 + d/2)
    // ln Vol(B_p^d) = d (ln 2 + ln Γ(1 + 1/p)) − ln Γ(1 + d/p)
    // so the d-th root of the ratio is, in logs,
    //   ½ ln π − ln 2 − ln Γ(1+1/p) + (ln Γ(1+d/p) − ln Γ(1+d/2)) / d.
    // The ln Γ difference is divided by d before exponentiation, which
    // keeps the cancellation harmless even for large d.
    let ln_ratio = 0.5 * std::f64::consts::PI.ln()
        - std::f64::consts::LN_2
        - ln_gamma(1.0 + 1.0 / p)
        + (ln_gamma(1.0 + df / p) - ln_gamma(1.0 + df / 2.0)) / df;
    Ok(ln_ratio.exp())
}

/// Exact mean of ‖·‖₁ over the Euclidean unit sphere of ℝ^N: N μ₁ / μ_N.
/// Divided by √N it increases to √(2/π); it is the scaling constant the
/// classical concentration proofs produce.
pub fn sphere_mean_l1(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain(format!("need N ≥ 1, got {n}")));
    }
    Ok(n as f64 * chi_mean(1)? / chi_mean(n)?)
}

/// Every closed-form bound relevant to one (N, d, p, field, measure) cell.
///
/// All λ-type fields are expressed in the report's own measure: the
/// normalized measure multiplies each counting-measure constant by
/// N^{1/2−1/p}.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub d: u64,
    pub p: f64,
    pub field: Field,
    pub measure: Measure,
    /// Cap on λ_min (first-moment bound).
    pub lambda_min_upper: f64,
    /// Floor √d on λ_max; present only at p = 1 where it is proven.
    pub lambda_max_lower: Option<f64>,
    /// Floor on λ_max from volume comparison (all p ∈ [1,2]).
    pub volume_lower: f64,
    /// Mean of ‖·‖₁ over the sphere; present only at p = 1.
    pub sphere_mean: Option<f64>,
    /// The p = 1 complex bound in its dedicated closed form.
    pub complex_l1_upper: Option<f64>,
}

impl BoundReport {
    pub fn evaluate(n: u64, d: u64, p: f64, field: Field, measure: Measure) -> Result<Self> {
        check_dims(n, d)?;
        check_p_range(p)?;
        let scale = measure.lambda_scale(n as usize, p);
        let is_l1 = p == 1.0;
        Ok(BoundReport {
            n,
            d,
            p,
            field,
            measure,
            lambda_min_upper: lambda_min_upper(n, d, p, field)? * scale,
            lambda_max_lower: is_l1.then(|| lambda_max_lower(d) * scale),
            volume_lower: volume_ratio_lower(d, p)? * scale,
            sphere_mean: is_l1.then(|| sphere_mean_l1(n).unwrap() * scale),
            complex_l1_upper: (is_l1 && field == Field::Complex)
                .then(|| complex_l1_upper(n, d).unwrap() * scale),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
    }

    // Reference values computed with mpmath at 60 significant digits.
    const MU_ORACLE: &[(u64, f64, f64)] = &[
        (1, 1.0, 0.7978845608028653558799),
        (2, 1.0, 1.253314137315500251208),
        (3, 1.0, 1.59576912160573071176),
        (4, 1.0, 1.879971205973250376812),
        (10, 1.0, 3.084327759799863899457),
        (20, 1.0, 4.416605124547244346851),
        (128, 1.0, 11.29163320154519064451),
        (2000, 1.0, 44.71576972965600322311),
        (1_000_000, 1.0, 999.9997500000312500391),
        (1, 1.5, 0.904369199036620465681),
        (7, 1.5, 2.600132677887467861936),
        (1_000_000, 1.5, 999.999875000028645846),
        (17, 1.3, 4.081148111874068911888),
        (3, 0.5, 1.52095104015139064024),
        (5, 4.0, 2.43229927909778734995),
        (12, 2.0, 3.464101615137754587055),
    ];

    #[test]
    fn gaussian_moments_match_high_precision_reference() {
        for &(d, p, want) in MU_ORACLE {
            let got = gaussian_mean_norm(d, p).unwrap();
            assert!(
                rel_err(got, want) < 1e-12,
                "mu({d},{p}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn ln_gamma_ratio_matches_reference() {
        // (x, a, lnΓ(x+a) − lnΓ(x)) from mpmath
        let cases = [
            (0.5, 0.5, -0.5723649429247000870717),
            (1.0, 0.05, -0.02685307250226016946183),
            (5.0, 0.75, 1.18866220627434072423),
            (9.7, 0.65, 1.465220072602968220673),
            (10.5, 1.0, 2.351375257163477687083),
            (50.0, 0.5, 1.953511544375741212973),
            (500.0, 0.999, 6.208392491656104077375),
            (5e5, 0.5, 6.561181438702164397387),
            (5e5, 2.0, 26.24472875480665759205),
            (1e6, 0.05, 0.6907755041482101810513),
        ];
        for (x, a, want) in cases {
            let got = ln_gamma_ratio(x, a);
            assert!(
                rel_err(got, want) < 1e-13,
                "lngr({x},{a}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn second_moment_is_exactly_sqrt_d() {
        for d in [1u64, 2, 3, 7, 64, 1023, 65536] {
            let got = gaussian_mean_norm(d, 2.0).unwrap();
            assert!(rel_err(got, (d as f64).sqrt()) < 1e-14);
        }
    }

    #[test]
    fn moment_ratio_increases_to_one() {
        for p in [1.0, 1.5] {
            let mut prev = 0.0;
            for d in 1..=2000u64 {
                let ratio = gaussian_mean_norm(d, p).unwrap() / (d as f64).sqrt();
                assert!(ratio > prev, "mu_(d,{p})/sqrt(d) not increasing at d={d}");
                prev = ratio;
            }
            assert!(prev < 1.0);
        }
        let r2000 = gaussian_mean_norm(2000, 1.0).unwrap() / 2000f64.sqrt();
        assert!(r2000 > 0.999);
    }

    #[test]
    fn moment_rejects_bad_arguments() {
        assert!(gaussian_mean_norm(0, 1.0).is_err());
        assert!(gaussian_mean_norm(3, 0.0).is_err());
        assert!(gaussian_mean_norm(3, -1.0).is_err());
        assert!(gaussian_mean_norm(3, f64::INFINITY).is_err());
    }

    #[test]
    fn l1_upper_bound_values() {
        // d = 1: the μ factors cancel and any line satisfies λ ≤ √N.
        for n in [1u64, 5, 100] {
            let got = lambda_min_upper_l1(n, 1).unwrap();
            assert!(rel_err(got, (n as f64).sqrt()) < 1e-14);
        }
        // mpmath: 4√2/π and twice that.
        assert!(rel_err(lambda_min_upper_l1(4, 2).unwrap(), 1.80063263231421213911) < 1e-13);
        assert!(rel_err(lambda_min_upper_l1(16, 2).unwrap(), 3.601265264628424278221) < 1e-13);
        assert!(rel_err(lambda_min_upper_l1(12, 6).unwrap(), 2.881012211702739422577) < 1e-13);
        assert!(lambda_min_upper_l1(4, 5).is_err());
        assert!(lambda_min_upper_l1(4, 0).is_err());
    }

    #[test]
    fn l1_upper_bound_approaches_gaussian_limit_monotonically() {
        // λ/√N decreases with d toward √(2/π): assert monotone approach.
        let n = 4096u64;
        let target = (2.0 / std::f64::consts::PI).sqrt();
        let mut prev = f64::INFINITY;
        for d in 1..=n {
            let v = lambda_min_upper_l1(n, d).unwrap() / (n as f64).sqrt();
            assert!(v <= prev + 1e-15);
            assert!(v >= target - 1e-12);
            prev = v;
        }
        assert!(prev - target < 2e-4);
    }

    #[test]
    fn general_upper_bound_matches_l1_at_p_one() {
        for n in [2u64, 5, 13, 144] {
            for d in [1u64, 2, 3].iter().copied().filter(|&d| d <= n) {
                let a = lambda_min_upper(n, d, 1.0, Field::Real).unwrap();
                let b = lambda_min_upper_l1(n, d).unwrap();
                assert!(rel_err(a, b) < 1e-12);
            }
        }
    }

    #[test]
    fn general_upper_bound_is_sqrt_d_at_p_two() {
        for (n, d) in [(8u64, 3u64), (100, 40), (7, 7)] {
            for field in [Field::Real, Field::Complex] {
                let got = lambda_min_upper(n, d, 2.0, field).unwrap();
                assert!(rel_err(got, (d as f64).sqrt()) < 1e-13);
            }
        }
    }

    #[test]
    fn general_upper_bound_reference_values() {
        assert!(
            rel_err(
                lambda_min_upper(9, 3, 1.5, Field::Real).unwrap(),
                1.356149931882359184391
            ) < 1e-13
        );
        assert!(
            rel_err(
                lambda_min_upper(9, 3, 1.5, Field::Complex).unwrap(),
                1.391149746770234948708
            ) < 1e-13
        );
        assert!(
            rel_err(
                lambda_min_upper(16, 4, 1.0, Field::Complex).unwrap(),
                3.657142857142857142857
            ) < 1e-13
        );
    }

    #[test]
    fn complex_l1_closed_form_agrees_with_general_bound() {
        for n in [2u64, 3, 8, 64, 512] {
            for d in [1u64, 2, 3, 7, 32].iter().copied().filter(|&d| d <= n) {
                let via_general = lambda_min_upper(n, d, 1.0, Field::Complex).unwrap();
                let via_closed = complex_l1_upper(n, d).unwrap();
                assert!(rel_err(via_general, via_closed) < 1e-12);
            }
        }
    }

    #[test]
    fn normalized_upper_bound_values() {
        let sqrt8_over_pi = 8f64.sqrt() / std::f64::consts::PI;
        assert!(
            rel_err(
                lambda_min_upper_normalized(2, 1.0, Field::Real).unwrap(),
                sqrt8_over_pi
            ) < 1e-13
        );
        assert!(
            rel_err(lambda_min_upper_normalized(1, 1.0, Field::Real).unwrap(), 1.0) < 1e-14
        );
        // mpmath reference: √(2/π)·√10/μ₁₀.
        assert!(
            rel_err(
                lambda_min_upper_normalized(10, 1.0, Field::Real).unwrap(),
                0.8180494157935670456682
            ) < 1e-13
        );
        assert!(
            rel_err(
                lambda_min_upper_normalized(3, 1.0, Field::Real).unwrap(),
                3f64.sqrt() / 2.0
            ) < 1e-13
        );
        assert!(
            rel_err(
                lambda_min_upper_normalized(6, 1.75, Field::Real).unwrap(),
                0.9628933174884055440244
            ) < 1e-13
        );
    }

    #[test]
    fn normalized_upper_bound_below_one_for_d_at_least_two() {
        for p in [1.0, 1.25, 1.5, 1.75] {
            for d in 2..=64u64 {
                let v = lambda_min_upper_normalized(d, p, Field::Real).unwrap();
                assert!(v < 1.0, "factor not < 1 at d={d}, p={p}: {v}");
            }
        }
    }

    #[test]
    fn volume_lower_bound_values_and_inequalities() {
        assert!(rel_err(volume_ratio_lower(1, 1.0).unwrap(), 1.0) < 1e-14);
        assert!(
            rel_err(
                volume_ratio_lower(2, 1.0).unwrap(),
                (std::f64::consts::PI / 2.0).sqrt()
            ) < 1e-13
        );
        assert!(rel_err(volume_ratio_lower(3, 1.0).unwrap(), 1.46459188756152326302) < 1e-13);
        assert!(rel_err(volume_ratio_lower(10, 1.0).unwrap(), 2.486583911395462599521) < 1e-13);
        assert!(rel_err(volume_ratio_lower(100, 1.0).unwrap(), 7.628062249802704273102) < 1e-13);
        assert!(rel_err(volume_ratio_lower(5, 1.5).unwrap(), 1.20501268509969289657) < 1e-13);
        assert!(rel_err(volume_ratio_lower(12, 1.25).unwrap(), 1.79137349045651302082) < 1e-13);

        let floor = (std::f64::consts::PI / (2.0 * std::f64::consts::E)).sqrt();
        for d in 1..=100u64 {
            let v = volume_ratio_lower(d, 1.0).unwrap();
            // Weaker than the trace-inequality bound, stronger than √(π/2e)·√d.
            assert!(v <= lambda_max_lower(d) + 1e-12);
            assert!(v >= floor * (d as f64).sqrt() - 1e-12);
        }
    }

    #[test]
    fn sphere_mean_values() {
        assert!(rel_err(sphere_mean_l1(1).unwrap(), 1.0) < 1e-14);
        assert!(
            rel_err(sphere_mean_l1(2).unwrap(), 4.0 / std::f64::consts::PI) < 1e-13
        );
        assert!(rel_err(sphere_mean_l1(8).unwrap(), 2.328209453230011768962) < 1e-13);
        assert!(rel_err(sphere_mean_l1(100_000).unwrap(), 252.3138829859349789218) < 1e-12);
        // limit: divided by √N it tends to √(2/π); within 1e−3 at N = 10⁵.
        let scaled = sphere_mean_l1(100_000).unwrap() / (100_000f64).sqrt();
        assert!((scaled - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-3);
        // equals the d = N first-moment bound expression exactly.
        for n in [1u64, 2, 7, 33, 512] {
            let lhs = sphere_mean_l1(n).unwrap();
            let rhs = (2.0 / std::f64::consts::PI).sqrt() * n as f64 / chi_mean(n).unwrap();
            assert!(lhs <= rhs + 1e-12);
            assert!(rel_err(lhs, rhs) < 1e-12);
        }
    }

    #[test]
    fn bound_report_scales_with_measure() {
        let counting = BoundReport::evaluate(16, 2, 1.0, Field::Real, Measure::Counting).unwrap();
        let normalized =
            BoundReport::evaluate(16, 2, 1.0, Field::Real, Measure::Normalized).unwrap();
        let scale = 1.0 / 4.0; // N^{1/2−1} at N=16
        assert!(rel_err(normalized.lambda_min_upper, counting.lambda_min_upper * scale) < 1e-13);
        assert!(
            rel_err(
                normalized.lambda_max_lower.unwrap(),
                counting.lambda_max_lower.unwrap() * scale
            ) < 1e-13
        );
        // normalized d=2 p=1 bound is √8/π regardless of N
        assert!(
            rel_err(normalized.lambda_min_upper, 8f64.sqrt() / std::f64::consts::PI) < 1e-13
        );
        // counting-measure cap: μ-ratio factor ≤ 1
        let nf = 16f64;
        assert!(counting.lambda_min_upper <= nf.powf(1.0 - 0.5) * 2f64.sqrt() + 1e-12);
    }

    #[test]
    fn gaussian_moment_type_carries_value() {
        let m = GaussianMoment::new(2, 1.0).unwrap();
        assert!(rel_err(m.value, (std::f64::consts::PI / 2.0).sqrt()) < 1e-13);
        assert!(GaussianMoment::new(0, 1.0).is_err());
    }
}

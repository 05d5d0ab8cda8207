use super::matrix::{Matrix, Vector};
use crate::error::Result;
use crate::measure::Measure;

/// ℓ_p norm of a vector of moduli, max-rescaled so that large p and large
/// entries cannot overflow: m·(Σ (|x|/m)^p)^{1/p}.
fn lp_of_moduli(moduli: &[f64], p: f64, measure: Measure) -> f64 {
    assert!(p > 0.0, "lp_norm needs p > 0, got {p}");
    let n = moduli.len();
    if n == 0 {
        return 0.0;
    }
    let m = moduli.iter().copied().fold(0.0f64, f64::max);
    if p.is_infinite() {
        return m;
    }
    if m == 0.0 {
        return 0.0;
    }
    let mut s = 0.0;
    for &x in moduli {
        s += (x / m).powf(p);
    }
    if measure == Measure::Normalized {
        s /= n as f64;
    }
    m * s.powf(1.0 / p)
}

/// ℓ_p norm of a vector, p ∈ (0, ∞], complex entries through their moduli.
///
/// Counting measure: (Σ|x(k)|^p)^{1/p}. Normalized measure: the p-th
/// powers are averaged before the root, so the all-ones vector has norm 1;
/// p = ∞ is the max modulus under both measures.
pub fn lp_norm(v: &Vector, p: f64, measure: Measure) -> f64 {
    lp_norm_slice(&v.moduli(), p, measure)
}

/// Same as [`lp_norm`] on a pre-extracted modulus slice (hot-loop variant).
pub fn lp_norm_slice(moduli: &[f64], p: f64, measure: Measure) -> f64 {
    lp_of_moduli(moduli, p, measure)
}

/// Schatten r-norm: the r-norm of the singular value vector,
/// (Σ σ_i^r)^{1/r}, r ∈ (0, ∞]; r = ∞ is the operator (spectral) norm.
///
/// With `normalized` the trace is normalized by the domain dimension
/// (number of columns): (tr(A*A)^{r/2} / N)^{1/r}, which is the convention
/// that makes the identity have norm 1.
pub fn schatten_norm(a: &Matrix, r: f64, normalized: bool) -> Result<f64> {
    assert!(r > 0.0, "schatten_norm needs r > 0, got {r}");
    let sv = a.singular_values()?;
    if r.is_infinite() {
        return Ok(sv.first().copied().unwrap_or(0.0));
    }
    let measure = if normalized {
        Measure::Normalized
    } else {
        Measure::Counting
    };
    // Zero singular values beyond min(m,n) contribute nothing, but the
    // normalized trace divides by the full domain dimension.
    let mut moduli = sv;
    moduli.resize(a.ncols(), 0.0);
    Ok(lp_of_moduli(&moduli, r, measure))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Measure::{Counting, Normalized};
    use nalgebra::{DMatrix, DVector};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn rv(xs: &[f64]) -> Vector {
        Vector::Real(DVector::from_column_slice(xs))
    }

    #[test]
    fn lp_norm_basic_values() {
        let ones = rv(&[1.0; 7]);
        assert_eq!(lp_norm(&ones, 1.0, Counting), 7.0);
        assert_eq!(lp_norm(&ones, 1.0, Normalized), 1.0);
        let e1 = rv(&[1.0, 0.0, 0.0]);
        for p in [0.5, 1.0, 1.7, 2.0, 5.0] {
            assert_eq!(lp_norm(&e1, p, Counting), 1.0);
        }
        let x = rv(&[3.0, 4.0]);
        assert!((lp_norm(&x, 2.0, Counting) - 5.0).abs() < 1e-14);
        assert_eq!(lp_norm(&x, f64::INFINITY, Counting), 4.0);
        assert_eq!(lp_norm(&x, f64::INFINITY, Normalized), 4.0);
        assert_eq!(lp_norm(&rv(&[]), 1.0, Counting), 0.0);
        assert_eq!(lp_norm(&rv(&[0.0, 0.0]), 1.5, Counting), 0.0);
    }

    #[test]
    fn lp_norm_complex_uses_moduli() {
        let v = Vector::Complex(DVector::from_column_slice(&[
            Complex64::new(3.0, 4.0),
            Complex64::new(0.0, -2.0),
        ]));
        assert!((lp_norm(&v, 1.0, Counting) - 7.0).abs() < 1e-14);
        assert!((lp_norm(&v, f64::INFINITY, Counting) - 5.0).abs() < 1e-14);
    }

    #[test]
    fn lp_norm_survives_extreme_scales_and_exponents() {
        let v = rv(&[1e-200, 2e-200]);
        assert!(lp_norm(&v, 101.0, Counting) > 1.9e-200);
        let w = rv(&[1e200, 1e199]);
        assert!(lp_norm(&w, 50.0, Counting).is_finite());
    }

    #[test]
    fn schatten_basic_values() {
        let id = Matrix::identity(5);
        assert!((schatten_norm(&id, 2.0, false).unwrap() - 5f64.sqrt()).abs() < 1e-14);
        assert!((schatten_norm(&id, 2.0, true).unwrap() - 1.0).abs() < 1e-14);
        assert!((schatten_norm(&id, f64::INFINITY, false).unwrap() - 1.0).abs() < 1e-14);

        let diag = Matrix::Real(DMatrix::from_diagonal(&DVector::from_column_slice(&[
            3.0, 4.0,
        ])));
        assert!((schatten_norm(&diag, 2.0, false).unwrap() - 5.0).abs() < 1e-12);

        // rank-1 uvᵀ with unit factors has a single singular value 1
        let u = DVector::from_column_slice(&[0.6, 0.8, 0.0]);
        let v = DVector::from_column_slice(&[1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt()]);
        let rank1 = Matrix::Real(&u * v.transpose());
        for r in [0.7, 1.0, 2.0, 3.5] {
            assert!((schatten_norm(&rank1, r, false).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn counting_lp_norm_nonincreasing_in_p(
            xs in proptest::collection::vec(-10.0f64..10.0, 1..12)
        ) {
            let v = rv(&xs);
            let ps = [0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 8.0, f64::INFINITY];
            let mut prev = f64::INFINITY;
            for &p in &ps {
                let val = lp_norm(&v, p, Counting);
                prop_assert!(val <= prev * (1.0 + 1e-12) + 1e-12);
                prev = val;
            }
        }

        #[test]
        fn schatten_two_matches_frobenius(
            entries in proptest::collection::vec(-5.0f64..5.0, 16)
        ) {
            let m = DMatrix::from_column_slice(4, 4, &entries);
            let fro = m.norm();
            let s2 = schatten_norm(&Matrix::Real(m), 2.0, false).unwrap();
            prop_assert!((s2 - fro).abs() <= 1e-12 * (1.0 + fro));
        }
    }
}

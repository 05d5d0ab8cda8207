//! Operator norms between ℓ_q spaces.
//!
//! Exact values come from sign enumeration (‖·‖_{∞→1}, ‖·‖_{2→1}) or the
//! SVD (‖·‖_{2→2}); everything else is a multi-start duality-map power
//! iteration that returns a certified lower bound: the reported value is
//! re-evaluated at the returned witness, so it is always attained.

use super::matrix::{Matrix, Vector};
use super::norms::lp_norm_slice;
use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::seeding::mix_seed;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Default cap on exhaustive sign enumeration: 2^{cap−1} patterns.
pub const DEFAULT_ENUM_CAP: usize = 20;

/// A vector of ±1 signs. Enumerations pin the first entry to +1 since
/// antipodal patterns give the same value everywhere they are used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn all_plus(n: usize) -> Self {
        SignVector(vec![1; n])
    }

    /// Signs of the entries of a real vector; zeros map to +1.
    pub fn from_signs(v: &DVector<f64>) -> Self {
        SignVector(v.iter().map(|&x| if x < 0.0 { -1 } else { 1 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = -self.0[i];
    }

    pub fn to_f64(&self) -> DVector<f64> {
        DVector::from_iterator(self.0.len(), self.0.iter().map(|&s| s as f64))
    }

    /// Lexicographic order with +1 before −1; the all-plus pattern is
    /// minimal. Used as a deterministic tie-break between equal maximizers.
    fn lex_less(&self, other: &SignVector) -> bool {
        for (a, b) in self.0.iter().zip(&other.0) {
            if a != b {
                return *a > *b; // +1 (= 1) sorts before −1
            }
        }
        false
    }
}

/// Visit all sign patterns on n coordinates with the first pinned to +1,
/// in binary-reflected Gray order: `on_flip(j)` is called once per step
/// with the single coordinate that changed. 2^{n−1} patterns total
/// including the all-plus start state held by the caller.
fn for_each_gray_flip(n: usize, mut on_flip: impl FnMut(usize)) {
    if n <= 1 {
        return;
    }
    let steps: u64 = 1 << (n - 1);
    for k in 1..steps {
        on_flip(k.trailing_zeros() as usize + 1);
    }
}

/// Exact ‖A‖_{∞→1} = max ε′ᵀ A ε over sign vectors, with the maximizing
/// pair. The inner maximum over ε′ is ‖Aε‖₁, so only ε is enumerated.
#[derive(Debug, Clone, Serialize)]
pub struct InfToOneNorm {
    pub value: f64,
    /// Maximizing signs on the input (column) side.
    pub input_signs: SignVector,
    /// Maximizing signs on the output (row) side: the signs of A·ε.
    pub output_signs: SignVector,
}

pub fn opnorm_inf_to_1(a: &Matrix, cap: usize) -> Result<InfToOneNorm> {
    let m = a.as_real()?;
    let n = m.ncols();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "∞→1 sign enumeration (columns)",
            size: n,
            cap,
        });
    }
    let l1 = |v: &DVector<f64>| v.iter().map(|x| x.abs()).sum::<f64>();
    let apply = |eps: &SignVector| m * eps.to_f64();

    let mut eps = SignVector::all_plus(n);
    let mut y = apply(&eps);
    let mut best_val = l1(&y);
    let mut best_eps = eps.clone();

    for_each_gray_flip(n, |j| {
        eps.flip(j);
        let s = eps.get(j) as f64;
        y.axpy(2.0 * s, &m.column(j), 1.0);
        let val = l1(&y);
        if val > best_val {
            // Re-evaluate without the incremental drift before accepting.
            let exact = l1(&apply(&eps));
            if exact > best_val {
                best_val = exact;
                best_eps = eps.clone();
            }
        } else if val == best_val && eps.lex_less(&best_eps) {
            let exact = l1(&apply(&eps));
            if exact == best_val {
                best_eps = eps.clone();
            }
        }
    });

    let y_best = apply(&best_eps);
    Ok(InfToOneNorm {
        value: l1(&y_best),
        input_signs: best_eps,
        output_signs: SignVector::from_signs(&y_best),
    })
}

/// Whether a reported operator-norm value is exact or only attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NormKind {
    Exact,
    /// The value is achieved by the witness, hence a valid lower bound,
    /// but the maximization may not have found the global optimum.
    LowerBound,
}

#[derive(Debug, Clone)]
pub struct OpNormEstimate {
    pub value: f64,
    /// Input-side witness attaining `value` (unit in the domain norm).
    pub witness: Vector,
    pub kind: NormKind,
    /// False when a heuristic hit its iteration limit while still
    /// improving; the value is then best-so-far.
    pub converged: bool,
}

/// Mode selector for [`opnorm_2_to_p`].
#[derive(Debug, Clone, Copy)]
pub enum OpNormMode {
    /// Exact evaluation; available at p = 1 (row count ≤ cap) and p = 2.
    Exact { cap: usize },
    Heuristic {
        restarts: u32,
        max_iters: u32,
        seed: u64,
    },
}

/// ‖B : ℓ₂ → ℓ_p‖ = max { ‖Bx‖_p : ‖x‖₂ = 1 }, p ∈ [1, ∞).
pub fn opnorm_2_to_p(b: &Matrix, p: f64, mode: OpNormMode) -> Result<OpNormEstimate> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::Domain(format!("ℓ₂→ℓ_p norm needs p ∈ [1,∞), got {p}")));
    }
    match mode {
        OpNormMode::Exact { cap } => {
            if p == 2.0 {
                exact_2_to_2(b)
            } else if p == 1.0 {
                exact_2_to_1(b.as_real()?, cap)
            } else {
                Err(Error::Unsupported(format!(
                    "exact ℓ₂→ℓ_p norm is available only for p ∈ {{1, 2}}, got {p}"
                )))
            }
        }
        OpNormMode::Heuristic {
            restarts,
            max_iters,
            seed,
        } => Ok(match b {
            Matrix::Real(m) => boyd_real(m, p, restarts, max_iters, seed),
            Matrix::Complex(m) => boyd_complex(m, p, restarts, max_iters, seed),
        }),
    }
}

/// Exact ‖B : ℓ₂ → ℓ₁‖ = max_ε ‖Bᵀε‖₂ over row sign patterns.
fn exact_2_to_1(m: &DMatrix<f64>, cap: usize) -> Result<OpNormEstimate> {
    let nrows = m.nrows();
    if nrows > cap {
        return Err(Error::CapExceeded {
            what: "2→1 sign enumeration (rows)",
            size: nrows,
            cap,
        });
    }
    let mt = m.transpose();
    let apply = |eps: &SignVector| &mt * eps.to_f64();

    let mut eps = SignVector::all_plus(nrows);
    let mut z = apply(&eps);
    let mut best_val = z.norm();
    let mut best_eps = eps.clone();

    for_each_gray_flip(nrows, |j| {
        eps.flip(j);
        let s = eps.get(j) as f64;
        z.axpy(2.0 * s, &mt.column(j), 1.0);
        let val = z.norm();
        if val > best_val {
            let exact = apply(&eps).norm();
            if exact > best_val {
                best_val = exact;
                best_eps = eps.clone();
            }
        } else if val == best_val && eps.lex_less(&best_eps) {
            let exact = apply(&eps).norm();
            if exact == best_val {
                best_eps = eps.clone();
            }
        }
    });

    let z_best = apply(&best_eps);
    let norm = z_best.norm();
    let witness = if norm > 0.0 {
        z_best / norm
    } else {
        let mut e = DVector::zeros(m.ncols());
        e[0] = 1.0;
        e
    };
    Ok(OpNormEstimate {
        value: norm,
        witness: Vector::Real(witness),
        kind: NormKind::Exact,
        converged: true,
    })
}

fn exact_2_to_2(b: &Matrix) -> Result<OpNormEstimate> {
    match b {
        Matrix::Real(m) => {
            let svd = m
                .clone()
                .try_svd(false, true, f64::EPSILON, 1000)
                .ok_or_else(|| Error::Numeric("SVD did not converge".into()))?;
            let (mut arg, mut top) = (0usize, f64::NEG_INFINITY);
            for (i, &s) in svd.singular_values.iter().enumerate() {
                if s > top {
                    top = s;
                    arg = i;
                }
            }
            let v_t = svd.v_t.ok_or_else(|| Error::Numeric("SVD missing V".into()))?;
            let witness = v_t.row(arg).transpose();
            Ok(OpNormEstimate {
                value: top,
                witness: Vector::Real(witness),
                kind: NormKind::Exact,
                converged: true,
            })
        }
        Matrix::Complex(m) => {
            let svd = m
                .clone()
                .try_svd(false, true, f64::EPSILON, 1000)
                .ok_or_else(|| Error::Numeric("SVD did not converge".into()))?;
            let (mut arg, mut top) = (0usize, f64::NEG_INFINITY);
            for (i, &s) in svd.singular_values.iter().enumerate() {
                if s > top {
                    top = s;
                    arg = i;
                }
            }
            let v_t = svd.v_t.ok_or_else(|| Error::Numeric("SVD missing V".into()))?;
            // A = U Σ Vᴴ, so the maximizing input is the column of V,
            // i.e. the conjugated row of Vᴴ.
            let witness = v_t.row(arg).transpose().map(|z| z.conj());
            Ok(OpNormEstimate {
                value: top,
                witness: Vector::Complex(witness),
                kind: NormKind::Exact,
                converged: true,
            })
        }
    }
}

/// ℓ_p duality map: z with ⟨z, y⟩ = ‖y‖_p and ‖z‖_{p′} = 1,
/// z_k = sign(y_k)(|y_k|/‖y‖_p)^{p−1}; coordinates at zero get
/// subgradient 0. Returns None when y = 0.
fn dual_map_real(y: &DVector<f64>, p: f64) -> Option<DVector<f64>> {
    let moduli: Vec<f64> = y.iter().map(|x| x.abs()).collect();
    let norm = lp_norm_slice(&moduli, p, Measure::Counting);
    if norm == 0.0 {
        return None;
    }
    Some(DVector::from_iterator(
        y.len(),
        y.iter().map(|&x| {
            if x == 0.0 {
                0.0
            } else {
                x.signum() * (x.abs() / norm).powf(p - 1.0)
            }
        }),
    ))
}

fn dual_map_complex(y: &DVector<Complex64>, p: f64) -> Option<DVector<Complex64>> {
    let moduli: Vec<f64> = y.iter().map(|z| z.norm()).collect();
    let norm = lp_norm_slice(&moduli, p, Measure::Counting);
    if norm == 0.0 {
        return None;
    }
    Some(DVector::from_iterator(
        y.len(),
        y.iter().map(|&z| {
            let r = z.norm();
            if r == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (z / r) * (r / norm).powf(p - 1.0)
            }
        }),
    ))
}

fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_iterator(n, (0..n).map(|_| standard_normal(rng)))
}

fn gaussian_vec_complex(rng: &mut ChaCha8Rng, n: usize) -> DVector<Complex64> {
    DVector::from_iterator(
        n,
        (0..n).map(|_| {
            let re = standard_normal(rng);
            let im = standard_normal(rng);
            Complex64::new(re, im) / 2f64.sqrt()
        }),
    )
}

/// Box–Muller standard normal. Chosen over a ziggurat so the sampling is
/// pinned to elementary operations on the ChaCha8 stream and reproduces
/// bit-for-bit everywhere.
pub(crate) fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = loop {
        let v: f64 = rng.random();
        if v > 0.0 {
            break v;
        }
    };
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

const REL_TOL: f64 = 1e-14;

/// Power iteration for max ‖Bx‖_p over ‖x‖₂ = 1. Each step is monotone:
/// x ← Bᵀ z / ‖Bᵀ z‖₂ with z the duality map of Bx cannot decrease the
/// objective, so every restart converges to a critical value.
fn boyd_real(m: &DMatrix<f64>, p: f64, restarts: u32, max_iters: u32, seed: u64) -> OpNormEstimate {
    let (nrows, ncols) = (m.nrows(), m.ncols());
    let objective = |x: &DVector<f64>| {
        let y = m * x;
        lp_norm_slice(&y.iter().map(|v| v.abs()).collect::<Vec<_>>(), p, Measure::Counting)
    };

    let top_singular = m
        .clone()
        .try_svd(false, true, f64::EPSILON, 1000)
        .and_then(|svd| {
            let (mut arg, mut top) = (0usize, f64::NEG_INFINITY);
            for (i, &s) in svd.singular_values.iter().enumerate() {
                if s > top {
                    top = s;
                    arg = i;
                }
            }
            svd.v_t.map(|vt| vt.row(arg).transpose())
        });

    let mut best: Option<(f64, DVector<f64>, bool)> = None;
    for i in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(&[seed, i as u64]));
        let mut x = match i {
            0 => top_singular.clone().unwrap_or_else(|| gaussian_vec(&mut rng, ncols)),
            _ if i % 2 == 1 => gaussian_vec(&mut rng, ncols),
            _ => {
                // Image of a random sign pattern: good at p = 1 where the
                // optimum is a fixed point of sign patterns.
                let eps = DVector::from_iterator(
                    nrows,
                    (0..nrows).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }),
                );
                m.tr_mul(&eps)
            }
        };
        let norm = x.norm();
        if norm == 0.0 {
            x = gaussian_vec(&mut rng, ncols);
        }
        let norm = x.norm();
        if norm == 0.0 {
            continue;
        }
        x /= norm;

        let mut val = objective(&x);
        let mut converged = false;
        for _ in 0..max_iters {
            let y = m * &x;
            let Some(z) = dual_map_real(&y, p) else {
                converged = true;
                break;
            };
            let w = m.tr_mul(&z);
            let wn = w.norm();
            if wn <= f64::MIN_POSITIVE {
                converged = true;
                break;
            }
            let x_next = w / wn;
            let nv = objective(&x_next);
            x = x_next;
            if nv - val <= REL_TOL * val.max(1e-300) {
                val = val.max(nv);
                converged = true;
                break;
            }
            val = nv;
        }
        let final_val = objective(&x);
        match &best {
            Some((bv, _, _)) if *bv >= final_val => {}
            _ => best = Some((final_val, x, converged)),
        }
    }
    let (value, witness, converged) = best.expect("at least one restart ran");
    OpNormEstimate {
        value,
        witness: Vector::Real(witness),
        kind: NormKind::LowerBound,
        converged,
    }
}

fn boyd_complex(
    m: &DMatrix<Complex64>,
    p: f64,
    restarts: u32,
    max_iters: u32,
    seed: u64,
) -> OpNormEstimate {
    let ncols = m.ncols();
    let objective = |x: &DVector<Complex64>| {
        let y = m * x;
        lp_norm_slice(&y.iter().map(|z| z.norm()).collect::<Vec<_>>(), p, Measure::Counting)
    };

    let top_singular = m
        .clone()
        .try_svd(false, true, f64::EPSILON, 1000)
        .and_then(|svd| {
            let (mut arg, mut top) = (0usize, f64::NEG_INFINITY);
            for (i, &s) in svd.singular_values.iter().enumerate() {
                if s > top {
                    top = s;
                    arg = i;
                }
            }
            svd.v_t.map(|vt| vt.row(arg).transpose().map(|z| z.conj()))
        });

    let mut best: Option<(f64, DVector<Complex64>, bool)> = None;
    for i in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(&[seed, i as u64]));
        let mut x = match i {
            0 => top_singular
                .clone()
                .unwrap_or_else(|| gaussian_vec_complex(&mut rng, ncols)),
            _ => gaussian_vec_complex(&mut rng, ncols),
        };
        let norm = x.norm();
        if norm == 0.0 {
            continue;
        }
        x /= Complex64::new(norm, 0.0);

        let mut val = objective(&x);
        let mut converged = false;
        for _ in 0..max_iters {
            let y = m * &x;
            let Some(z) = dual_map_complex(&y, p) else {
                converged = true;
                break;
            };
            let w = m.adjoint() * z;
            let wn = w.norm();
            if wn <= f64::MIN_POSITIVE {
                converged = true;
                break;
            }
            let x_next = w / Complex64::new(wn, 0.0);
            let nv = objective(&x_next);
            x = x_next;
            if nv - val <= REL_TOL * val.max(1e-300) {
                val = val.max(nv);
                converged = true;
                break;
            }
            val = nv;
        }
        let final_val = objective(&x);
        match &best {
            Some((bv, _, _)) if *bv >= final_val => {}
            _ => best = Some((final_val, x, converged)),
        }
    }
    let (value, witness, converged) = best.expect("at least one restart ran");
    OpNormEstimate {
        value,
        witness: Vector::Complex(witness),
        kind: NormKind::LowerBound,
        converged,
    }
}

/// Heuristic lower bound for ‖A : ℓ_{p′} → ℓ_p‖ with p ∈ (1,2) and
/// p′ = p/(p−1): alternating duality maps between the two unit spheres.
/// Both half-steps are monotone in the objective ‖Ax‖_p / ‖x‖_{p′}.
pub fn opnorm_pprime_to_p(
    a: &Matrix,
    p: f64,
    restarts: u32,
    max_iters: u32,
    seed: u64,
) -> Result<OpNormEstimate> {
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::Domain(format!(
            "ℓ_p′→ℓ_p norm needs p strictly inside (1,2), got {p}"
        )));
    }
    let pprime = p / (p - 1.0);
    match a {
        Matrix::Real(m) => Ok(mixed_real(m, p, pprime, restarts, max_iters, seed)),
        Matrix::Complex(m) => Ok(mixed_complex(m, p, pprime, restarts, max_iters, seed)),
    }
}

fn normalize_pprime(x: &mut DVector<f64>, pprime: f64) -> bool {
    let moduli: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    let n = lp_norm_slice(&moduli, pprime, Measure::Counting);
    if n == 0.0 {
        return false;
    }
    *x /= n;
    true
}

fn normalize_pprime_complex(x: &mut DVector<Complex64>, pprime: f64) -> bool {
    let moduli: Vec<f64> = x.iter().map(|z| z.norm()).collect();
    let n = lp_norm_slice(&moduli, pprime, Measure::Counting);
    if n == 0.0 {
        return false;
    }
    *x /= Complex64::new(n, 0.0);
    true
}

fn mixed_real(
    m: &DMatrix<f64>,
    p: f64,
    pprime: f64,
    restarts: u32,
    max_iters: u32,
    seed: u64,
) -> OpNormEstimate {
    let ncols = m.ncols();
    let objective = |x: &DVector<f64>| {
        let y = m * x;
        lp_norm_slice(&y.iter().map(|v| v.abs()).collect::<Vec<_>>(), p, Measure::Counting)
    };
    let top_singular = m
        .clone()
        .try_svd(false, true, f64::EPSILON, 1000)
        .and_then(|svd| {
            let (mut arg, mut top) = (0usize, f64::NEG_INFINITY);
            for (i, &s) in svd.singular_values.iter().enumerate() {
                if s > top {
                    top = s;
                    arg = i;
                }
            }
            svd.v_t.map(|vt| vt.row(arg).transpose())
        });

    let mut best: Option<(f64, DVector<f64>, bool)> = None;
    for i in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(&[seed, i as u64]));
        let mut x = match i {
            // The all-ones vector maximizes the ratio for the identity and
            // is a strong start for near-diagonal inputs.
            0 => DVector::from_element(ncols, 1.0),
            1 => top_singular.clone().unwrap_or_else(|| gaussian_vec(&mut rng, ncols)),
            _ => gaussian_vec(&mut rng, ncols),
        };
        if !normalize_pprime(&mut x, pprime) {
            continue;
        }
        let mut val = objective(&x);
        let mut converged = false;
        for _ in 0..max_iters {
            let y = m * &x;
            let Some(z) = dual_map_real(&y, p) else {
                converged = true;
                break;
            };
            let w = m.tr_mul(&z);
            // Maximizer of ⟨w,·⟩ on the ℓ_{p′} sphere is the p-duality map
            // of w, which lands exactly on the unit sphere.
            let Some(x_next) = dual_map_real(&w, p) else {
                converged = true;
                break;
            };
            let nv = objective(&x_next);
            x = x_next;
            if nv - val <= REL_TOL * val.max(1e-300) {
                val = val.max(nv);
                converged = true;
                break;
            }
            val = nv;
        }
        let _ = normalize_pprime(&mut x, pprime);
        let final_val = objective(&x);
        match &best {
            Some((bv, _, _)) if *bv >= final_val => {}
            _ => best = Some((final_val, x, converged)),
        }
    }
    let (value, witness, converged) = best.expect("at least one restart ran");
    OpNormEstimate {
        value,
        witness: Vector::Real(witness),
        kind: NormKind::LowerBound,
        converged,
    }
}

fn mixed_complex(
    m: &DMatrix<Complex64>,
    p: f64,
    pprime: f64,
    restarts: u32,
    max_iters: u32,
    seed: u64,
) -> OpNormEstimate {
    let ncols = m.ncols();
    let objective = |x: &DVector<Complex64>| {
        let y = m * x;
        lp_norm_slice(&y.iter().map(|z| z.norm()).collect::<Vec<_>>(), p, Measure::Counting)
    };
    let mut best: Option<(f64, DVector<Complex64>, bool)> = None;
    for i in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(&[seed, i as u64]));
        let mut x = match i {
            0 => DVector::from_element(ncols, Complex64::new(1.0, 0.0)),
            _ => gaussian_vec_complex(&mut rng, ncols),
        };
        if !normalize_pprime_complex(&mut x, pprime) {
            continue;
        }
        let mut val = objective(&x);
        let mut converged = false;
        for _ in 0..max_iters {
            let y = m * &x;
            let Some(z) = dual_map_complex(&y, p) else {
                converged = true;
                break;
            };
            let w = m.adjoint() * z;
            let Some(x_next) = dual_map_complex(&w, p) else {
                converged = true;
                break;
            };
            let nv = objective(&x_next);
            x = x_next;
            if nv - val <= REL_TOL * val.max(1e-300) {
                val = val.max(nv);
                converged = true;
                break;
            }
            val = nv;
        }
        let _ = normalize_pprime_complex(&mut x, pprime);
        let final_val = objective(&x);
        match &best {
            Some((bv, _, _)) if *bv >= final_val => {}
            _ => best = Some((final_val, x, converged)),
        }
    }
    let (value, witness, converged) = best.expect("at least one restart ran");
    OpNormEstimate {
        value,
        witness: Vector::Complex(witness),
        kind: NormKind::LowerBound,
        converged,
    }
}

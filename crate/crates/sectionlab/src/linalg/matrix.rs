use crate::error::{Error, Result};
use crate::measure::Field;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

/// Dense real or complex matrix with a field tag.
///
/// The checked constructors reject NaN/Inf entries; everything downstream
/// assumes finite data.
#[derive(Debug, Clone, PartialEq)]
pub enum Matrix {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

impl Matrix {
    pub fn real(m: DMatrix<f64>) -> Result<Self> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Matrix::Real(m))
    }

    pub fn complex(m: DMatrix<Complex64>) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Matrix::Complex(m))
    }

    pub fn identity(n: usize) -> Self {
        Matrix::Real(DMatrix::identity(n, n))
    }

    /// Row-major construction from slices; rows must have equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Domain("matrix needs at least one row and column".into()));
        }
        let ncols = rows[0].len();
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Format("ragged rows in matrix construction".into()));
        }
        let m = DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]);
        Matrix::real(m)
    }

    pub fn nrows(&self) -> usize {
        match self {
            Matrix::Real(m) => m.nrows(),
            Matrix::Complex(m) => m.nrows(),
        }
    }

    pub fn ncols(&self) -> usize {
        match self {
            Matrix::Real(m) => m.ncols(),
            Matrix::Complex(m) => m.ncols(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Matrix::Real(_) => Field::Real,
            Matrix::Complex(_) => Field::Complex,
        }
    }

    pub fn as_real(&self) -> Result<&DMatrix<f64>> {
        match self {
            Matrix::Real(m) => Ok(m),
            Matrix::Complex(_) => Err(Error::Unsupported(
                "operation requires a real matrix".into(),
            )),
        }
    }

    pub fn as_complex(&self) -> Result<&DMatrix<Complex64>> {
        match self {
            Matrix::Complex(m) => Ok(m),
            Matrix::Real(_) => Err(Error::Unsupported(
                "operation requires a complex matrix".into(),
            )),
        }
    }

    /// Conjugate transpose (plain transpose in the real case).
    pub fn adjoint(&self) -> Matrix {
        match self {
            Matrix::Real(m) => Matrix::Real(m.transpose()),
            Matrix::Complex(m) => Matrix::Complex(m.adjoint()),
        }
    }

    /// Singular values, sorted in decreasing order.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let mut sv: Vec<f64> = match self {
            Matrix::Real(m) => m
                .clone()
                .try_svd(false, false, f64::EPSILON, 1000)
                .ok_or_else(|| Error::Numeric("SVD did not converge".into()))?
                .singular_values
                .iter()
                .copied()
                .collect(),
            Matrix::Complex(m) => m
                .clone()
                .try_svd(false, false, f64::EPSILON, 1000)
                .ok_or_else(|| Error::Numeric("SVD did not converge".into()))?
                .singular_values
                .iter()
                .copied()
                .collect(),
        };
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(sv)
    }

    pub fn frobenius_norm(&self) -> f64 {
        match self {
            Matrix::Real(m) => m.norm(),
            Matrix::Complex(m) => m.norm(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        match self {
            Matrix::Real(m) => m.iter().fold(0.0f64, |acc, x| acc.max(x.abs())),
            Matrix::Complex(m) => m.iter().fold(0.0f64, |acc, z| acc.max(z.norm())),
        }
    }

    /// Apply to a coordinate vector of matching field and length.
    pub fn mul_vector(&self, v: &Vector) -> Result<Vector> {
        match (self, v) {
            (Matrix::Real(m), Vector::Real(x)) => Ok(Vector::Real(m * x)),
            (Matrix::Complex(m), Vector::Complex(x)) => Ok(Vector::Complex(m * x)),
            _ => Err(Error::Unsupported(
                "matrix and vector fields do not match".into(),
            )),
        }
    }

    /// Euclidean norms of the rows.
    pub fn row_norms(&self) -> Vec<f64> {
        match self {
            Matrix::Real(m) => (0..m.nrows()).map(|k| m.row(k).norm()).collect(),
            Matrix::Complex(m) => (0..m.nrows()).map(|k| m.row(k).norm()).collect(),
        }
    }
}

/// Dense real or complex vector.
#[derive(Debug, Clone, PartialEq)]
pub enum Vector {
    Real(DVector<f64>),
    Complex(DVector<Complex64>),
}

impl Vector {
    pub fn real(v: DVector<f64>) -> Result<Self> {
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(Vector::Real(v))
    }

    pub fn from_slice(xs: &[f64]) -> Result<Self> {
        Vector::real(DVector::from_column_slice(xs))
    }

    pub fn len(&self) -> usize {
        match self {
            Vector::Real(v) => v.len(),
            Vector::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn field(&self) -> Field {
        match self {
            Vector::Real(_) => Field::Real,
            Vector::Complex(_) => Field::Complex,
        }
    }

    /// Modulus of the i-th entry.
    pub fn modulus(&self, i: usize) -> f64 {
        match self {
            Vector::Real(v) => v[i].abs(),
            Vector::Complex(v) => v[i].norm(),
        }
    }

    pub fn moduli(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.modulus(i)).collect()
    }

    pub fn l2(&self) -> f64 {
        match self {
            Vector::Real(v) => v.norm(),
            Vector::Complex(v) => v.norm(),
        }
    }

    pub fn scale(&self, s: f64) -> Vector {
        match self {
            Vector::Real(v) => Vector::Real(v * s),
            Vector::Complex(v) => Vector::Complex(v * Complex64::new(s, 0.0)),
        }
    }

    /// Flat IEEE-double encoding: real entries verbatim, complex entries
    /// interleaved as re, im pairs. This is the witness wire format.
    pub fn to_flat_f64(&self) -> Vec<f64> {
        match self {
            Vector::Real(v) => v.iter().copied().collect(),
            Vector::Complex(v) => v.iter().flat_map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// How a subspace was produced: generator name, its parameters, and the
/// seed when randomness was involved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub generator: String,
    pub detail: String,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(generator: &str, detail: impl Into<String>, seed: Option<u64>) -> Self {
        Provenance {
            generator: generator.to_string(),
            detail: detail.into(),
            seed,
        }
    }
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({})", self.generator, self.detail)?;
        if let Some(s) = self.seed {
            write!(f, " seed={s}")?;
        }
        Ok(())
    }
}

/// A d-dimensional subspace of ℝ^N or ℂ^N, stored as an N×d matrix with
/// orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: Matrix,
    provenance: Provenance,
}

impl Subspace {
    /// Maximum allowed deviation of BᴴB from the identity.
    pub const ORTHONORMALITY_TOL: f64 = 1e-10;

    pub fn new(basis: Matrix, provenance: Provenance) -> Result<Self> {
        let (n, d) = (basis.nrows(), basis.ncols());
        if d < 1 || d > n {
            return Err(Error::Domain(format!(
                "subspace needs 1 ≤ d ≤ N, got d = {d}, N = {n}"
            )));
        }
        let s = Subspace { basis, provenance };
        let res = s.orthonormality_residual();
        if res > Self::ORTHONORMALITY_TOL {
            return Err(Error::Domain(format!(
                "basis is not orthonormal: max |BᴴB − I| = {res:.3e}"
            )));
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// max |BᴴB − I|.
    pub fn orthonormality_residual(&self) -> f64 {
        match &self.basis {
            Matrix::Real(b) => {
                let g = b.transpose() * b;
                let d = b.ncols();
                let mut worst = 0.0f64;
                for i in 0..d {
                    for j in 0..d {
                        let target = if i == j { 1.0 } else { 0.0 };
                        worst = worst.max((g[(i, j)] - target).abs());
                    }
                }
                worst
            }
            Matrix::Complex(b) => {
                let g = b.adjoint() * b;
                let d = b.ncols();
                let mut worst = 0.0f64;
                for i in 0..d {
                    for j in 0..d {
                        let target = if i == j {
                            Complex64::new(1.0, 0.0)
                        } else {
                            Complex64::new(0.0, 0.0)
                        };
                        worst = worst.max((g[(i, j)] - target).norm());
                    }
                }
                worst
            }
        }
    }

    /// Map coefficient vectors to ambient vectors: y ↦ B y.
    pub fn embed(&self, y: &Vector) -> Result<Vector> {
        self.basis.mul_vector(y)
    }

    /// Euclidean norms of the basis rows; row k is the image of the k-th
    /// coordinate functional restricted to the subspace.
    pub fn row_norms(&self) -> Vec<f64> {
        self.basis.row_norms()
    }
}

/// Orthonormalize the columns of `raw` (Householder QR), preserving the
/// column span. Columns of the result are sign-normalized so the entry of
/// largest modulus in each column is real and positive, which makes the
/// output canonical. Fails if some column is numerically dependent on the
/// previous ones (residual below 1e−8 of the largest column norm).
pub fn orthonormalize(raw: &Matrix, provenance: Provenance) -> Result<Subspace> {
    let (n, d) = (raw.nrows(), raw.ncols());
    if d < 1 || d > n {
        return Err(Error::Domain(format!(
            "orthonormalize needs 1 ≤ cols ≤ rows, got {d}×{n}"
        )));
    }
    const REL_TOL: f64 = 1e-8;
    match raw {
        Matrix::Real(m) => {
            let max_col = (0..d).map(|j| m.column(j).norm()).fold(0.0f64, f64::max);
            let qr = m.clone().qr();
            let r = qr.r();
            for j in 0..d {
                let resid = r[(j, j)].abs();
                if resid < REL_TOL * max_col {
                    return Err(Error::RankDeficient {
                        column: j,
                        residual: resid,
                    });
                }
            }
            let mut q = qr.q();
            for j in 0..d {
                let col = q.column(j);
                let (mut arg, mut best) = (0usize, 0.0f64);
                for (i, x) in col.iter().enumerate() {
                    if x.abs() > best {
                        best = x.abs();
                        arg = i;
                    }
                }
                if q[(arg, j)] < 0.0 {
                    q.column_mut(j).neg_mut();
                }
            }
            Subspace::new(Matrix::Real(q), provenance)
        }
        Matrix::Complex(m) => {
            let max_col = (0..d).map(|j| m.column(j).norm()).fold(0.0f64, f64::max);
            let qr = m.clone().qr();
            let r = qr.r();
            for j in 0..d {
                let resid = r[(j, j)].norm();
                if resid < REL_TOL * max_col {
                    return Err(Error::RankDeficient {
                        column: j,
                        residual: resid,
                    });
                }
            }
            let mut q = qr.q();
            for j in 0..d {
                let col = q.column(j);
                let (mut arg, mut best) = (0usize, 0.0f64);
                for (i, z) in col.iter().enumerate() {
                    if z.norm() > best {
                        best = z.norm();
                        arg = i;
                    }
                }
                let z = q[(arg, j)];
                let phase = z.conj() / z.norm();
                for i in 0..n {
                    q[(i, j)] *= phase;
                }
            }
            Subspace::new(Matrix::Complex(q), provenance)
        }
    }
}

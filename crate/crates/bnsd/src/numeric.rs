//! Dense complex matrices and the small linear-algebra kit the rest of the
//! crate is built on.
//!
//! `ComplexMatrix` is a dynamically sized `nalgebra` matrix over `Complex64`.
//! Products, sums, adjoints, traces and Kronecker products come straight from
//! `nalgebra`; this module adds the two operations with physics-facing
//! contracts: `expectation` and `hermitian_eigenvalues`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type ComplexMatrix = DMatrix<Complex64>;

/// Complex unit shorthand used when building operators.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Real number as a Complex64.
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// n x n zero matrix.
pub fn zeros(n: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(n, n)
}

/// n x n identity.
pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Build a square matrix from rows of (re, im) pairs. Test convenience.
pub fn from_rows(rows: &[Vec<(f64, f64)>]) -> Result<ComplexMatrix> {
    let n = rows.len();
    for r in rows {
        if r.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} columns per row, found {}",
                r.len()
            )));
        }
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        Complex64::new(rows[i][j].0, rows[i][j].1)
    }))
}

/// Kronecker product. Delegates to nalgebra; kept as a named entry point so
/// call sites read like the tensor-product formulas they implement.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Conjugate transpose.
pub fn dagger(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

/// Matrix trace.
pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.trace()
}

/// Largest entrywise modulus of the difference a - b.
pub fn max_entry_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_entry_diff on unequal shapes");
    let mut worst = 0.0f64;
    for (x, y) in a.iter().zip(b.iter()) {
        worst = worst.max((x - y).norm());
    }
    worst
}

/// Deviation of m from its own conjugate transpose.
pub fn hermiticity_deviation(m: &ComplexMatrix) -> f64 {
    max_entry_diff(m, &m.adjoint())
}

/// Real part of tr(op * rho).
///
/// `rho` is expected to be a density matrix (unit trace, Hermitian); that is
/// a caller contract, not re-checked here. Dimensions are checked.
pub fn expectation(op: &ComplexMatrix, rho: &ComplexMatrix) -> Result<f64> {
    if op.shape() != rho.shape() || op.nrows() != op.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "expectation of {}x{} operator against {}x{} state",
            op.nrows(),
            op.ncols(),
            rho.nrows(),
            rho.ncols()
        )));
    }
    // tr(op * rho) without forming the full product.
    let n = op.nrows();
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            tr += op[(i, k)] * rho[(k, i)];
        }
    }
    Ok(tr.re)
}

/// Validate that `rho` is a plausible density matrix of the given dimension:
/// square with the right size, Hermitian within `tol::HERMITICITY`, and of
/// unit trace. Positivity is not checked here (it is a channel contract
/// verified separately through the eigenvalue routine).
pub fn check_density_matrix(rho: &ComplexMatrix, dim: usize) -> Result<()> {
    if rho.nrows() != dim || rho.ncols() != dim {
        return Err(Error::InvalidState(format!(
            "expected a {dim}x{dim} density matrix, got {}x{}",
            rho.nrows(),
            rho.ncols()
        )));
    }
    let herm = hermiticity_deviation(rho);
    if herm > tol::HERMITICITY {
        return Err(Error::InvalidState(format!(
            "density matrix is not Hermitian (deviation {herm:.3e})"
        )));
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > 1e-8 || trace.im.abs() > 1e-10 {
        return Err(Error::InvalidState(format!(
            "density matrix trace is {trace}, expected 1"
        )));
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// The Hermitian n x n problem X + iY is embedded as the real symmetric
/// 2n x 2n matrix [[X, -Y], [Y, X]], whose spectrum is that of the original
/// matrix with every eigenvalue doubled; the doubled spectrum is sorted and
/// every second value taken. Rejects inputs whose Hermiticity deviation
/// exceeds `tol::HERMITICITY`.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalues of non-square {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let dev = hermiticity_deviation(m);
    if dev > tol::HERMITICITY {
        return Err(Error::NotHermitian(dev));
    }
    let mut emb = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            // Use the Hermitian average so the embedding is exactly symmetric.
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            emb[(i, j)] = z.re;
            emb[(i + n, j + n)] = z.re;
            emb[(i, j + n)] = -z.im;
            emb[(i + n, j)] = z.im;
        }
    }
    let mut doubled: Vec<f64> = emb.symmetric_eigen().eigenvalues.iter().copied().collect();
    doubled.sort_by(f64::total_cmp);
    Ok(doubled.into_iter().step_by(2).collect())
}

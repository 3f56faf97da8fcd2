//! Small dense linear-algebra helpers shared across modules.

use nalgebra::{Complex, DMatrix, DVector};

pub type C64 = Complex<f64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Eigendecomposition of a real symmetric matrix with eigenvalues ascending.
/// Returns (eigenvalues, eigenvectors-as-columns).
pub fn sym_eigen_sorted(m: &RMatrix) -> (Vec<f64>, RMatrix) {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = RMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Eigendecomposition of a complex Hermitian matrix, eigenvalues ascending.
pub fn herm_eigen_sorted(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Eigenvalues of a complex Hermitian matrix, ascending.
pub fn herm_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let eig = m.clone().symmetric_eigen();
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Square root of a positive semidefinite Hermitian matrix. Small negative
/// eigenvalues (numerical noise) are clamped to zero.
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let (values, vectors) = herm_eigen_sorted(m);
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, n);
    for k in 0..n {
        let root = values[k].max(0.0).sqrt();
        if root > 0.0 {
            let v = vectors.column(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[i] * v[j].conj() * C64::new(root, 0.0);
                }
            }
        }
    }
    out
}

/// Promote a real matrix to complex.
pub fn to_complex(m: &RMatrix) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| C64::new(m[(i, j)], 0.0))
}

/// Largest absolute entry.
pub fn max_abs_c(m: &CMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_r(m: &RMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Hermiticity deviation max |m - m^H|.
pub fn hermiticity_error(m: &CMatrix) -> f64 {
    let mut err = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            err = err.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    err
}

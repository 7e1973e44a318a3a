//! Dense complex linear algebra used across the crate.
//!
//! Storage and arithmetic come from `nalgebra`; the Hermitian eigensolver is a
//! cyclic Jacobi iteration implemented here so that every frame bound is produced
//! by the same, fully inspectable routine.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Relative off-diagonal threshold at which Jacobi sweeps stop.
pub const JACOBI_REL_TOL: f64 = 1e-12;
/// Maximum number of full Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `exp(2πi · num/den)` with the fraction reduced modulo 1 before the
/// trigonometric evaluation. Quarter turns are exact.
pub fn root_of_unity(num: i64, den: u64) -> C64 {
    assert!(den > 0, "root_of_unity: zero denominator");
    let den_i = den as i128;
    let r = (num as i128).rem_euclid(den_i);
    if (4 * r) % den_i == 0 {
        return match 4 * r / den_i {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    let angle = std::f64::consts::TAU * (r as f64) / (den as f64);
    C64::from_polar(1.0, angle)
}

/// Eigen-decomposition `A = V diag(values) V*` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose `j`-th column is the eigenvector for `values[j]`.
    pub vectors: CMatrix,
    /// Number of sweeps performed.
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `V diag(f(λ)) V*`.
    pub fn apply_fn(&self, mut f: impl FnMut(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let s = f(lambda);
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        &scaled * self.vectors.adjoint()
    }

    /// Orthogonal projection onto the span of the eigenvectors selected by `keep`.
    pub fn projection(&self, mut keep: impl FnMut(f64) -> bool) -> CMatrix {
        self.apply_fn(|l| if keep(l) { 1.0 } else { 0.0 })
    }

    pub fn vector(&self, j: usize) -> CVector {
        self.vectors.column(j).into_owned()
    }
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver for a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies the
/// real plane rotation that annihilates it. Sweeps stop once the off-diagonal
/// Frobenius norm drops below `JACOBI_REL_TOL · ‖A‖_F`.
pub fn hermitian_eigen(matrix: &CMatrix) -> Result<HermitianEigen> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: matrix.ncols(),
        });
    }
    if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("eigensolver input"));
    }
    // Work on the Hermitian part so tiny asymmetries from accumulation do not leak in.
    let mut a = (matrix + matrix.adjoint()).scale(0.5);
    let mut v = CMatrix::identity(n, n);
    let threshold = JACOBI_REL_TOL * a.norm();

    let mut sweeps = 0;
    let mut residual = off_diagonal_norm(&a);
    while residual > threshold {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                // J = D·R with D = diag(1, e^{-iφ}) on (p, q) and R the real rotation.
                let phase = (apq / mag).conj();
                let j_pp = C64::new(cs, 0.0);
                let j_pq = C64::new(sn, 0.0);
                let j_qp = phase * (-sn);
                let j_qq = phase * cs;

                // A <- A J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * j_pp + akq * j_qp;
                    a[(k, q)] = akp * j_pq + akq * j_qq;
                }
                // A <- J* A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
                    a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                // V <- V J
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * j_pp + vkq * j_qp;
                    v[(k, q)] = vkp * j_pq + vkq * j_qq;
                }
            }
        }
        residual = off_diagonal_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen {
        values,
        vectors,
        sweeps,
    })
}

/// `⟨u, v⟩ = Σ u_i conj(v_i)`, linear in the first argument.
pub fn inner(u: &CVector, v: &CVector) -> C64 {
    u.iter().zip(v.iter()).map(|(a, b)| a * b.conj()).sum()
}

/// Frobenius norm of `a - b`.
pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

/// Block-diagonal matrix with the given square blocks.
pub fn block_diagonal(blocks: &[&CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        let k = b.nrows();
        out.view_mut((offset, offset), (k, k)).copy_from(*b);
        offset += k;
    }
    out
}

pub fn basis_vector(dim: usize, index: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[index] = C64::new(1.0, 0.0);
    v
}

/// Vector with independent standard complex Gaussian entries.
pub fn random_gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    CVector::from_fn(dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Uniformly distributed unit vector in `ℂ^dim`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    loop {
        let v = random_gaussian_vector(rng, dim);
        let n = v.norm();
        if n > 1e-12 {
            return v.unscale(n);
        }
    }
}

/// Haar-random unitary via modified Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let mut cols: Vec<CVector> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v = random_gaussian_vector(rng, dim);
        for u in &cols {
            let proj = inner(&v, u);
            v -= u * proj;
        }
        let n = v.norm();
        if n > 1e-8 {
            cols.push(v.unscale(n));
        }
    }
    CMatrix::from_columns(&cols)
}

//! Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian
//! matrices.
//!
//! Jacobi is quadratic-per-sweep but unconditionally reliable on Hermitian
//! input, which is all this crate needs: the Hermitian adjacency matrices
//! and the Hermitized class-algebra combinations are at desk scale.

use num_complex::Complex64;

use crate::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for i in 0..self.n {
            if self.get(i, i).im.abs() > tol {
                return false;
            }
            for j in (i + 1)..self.n {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }
}

impl std::fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMatrix {}x{}", self.n, self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                let z = self.get(i, j);
                write!(f, " {:.3}{:+.3}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Eigen-decomposition of a Hermitian matrix: `a = V · diag(values) · V*`,
/// eigenvalues ascending, eigenvectors the columns of `vectors`.
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

const MAX_SWEEPS: usize = 60;

/// Cyclic Jacobi with complex plane rotations.
pub fn hermitian_eigen(input: &CMatrix) -> Result<HermitianEigen> {
    let n = input.size();
    debug_assert!(input.is_hermitian(1e-9 * (1.0 + input.max_abs())));
    let mut a = input.clone();
    let mut v = CMatrix::identity(n);
    if n <= 1 {
        return Ok(HermitianEigen {
            values: (0..n).map(|i| a.get(i, i).re).collect(),
            vectors: v,
        });
    }

    let norm: f64 = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let stop = 1e-14 * norm.max(f64::MIN_POSITIVE);

    for sweep in 0..MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += a.get(p, q).norm_sqr();
                }
            }
            (2.0 * s).sqrt()
        };
        if off <= stop {
            let mut values: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
            sort_eigenpairs(&mut values, &mut v);
            return Ok(HermitianEigen { values, vectors: v });
        }
        let _ = sweep;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    Err(Error::ConvergenceFailure(MAX_SWEEPS))
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let m = apq.norm();
    if m == 0.0 {
        return;
    }
    let u = apq / m; // unit phase of the off-diagonal entry
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * m);
    // small-magnitude root of t² − 2τt − 1 = 0
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.size();
    let su = s * u;
    let su_conj = s * u.conj();
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a.get(r, p);
        let arq = a.get(r, q);
        let new_rp = c * arp + su_conj * arq;
        let new_rq = -su * arp + c * arq;
        a.set(r, p, new_rp);
        a.set(p, r, new_rp.conj());
        a.set(r, q, new_rq);
        a.set(q, r, new_rq.conj());
    }
    let new_pp = app * c * c + 2.0 * m * s * c + aqq * s * s;
    let new_qq = app * s * s - 2.0 * m * s * c + aqq * c * c;
    a.set(p, p, Complex64::new(new_pp, 0.0));
    a.set(q, q, Complex64::new(new_qq, 0.0));
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));

    for r in 0..n {
        let vrp = v.get(r, p);
        let vrq = v.get(r, q);
        v.set(r, p, c * vrp + su_conj * vrq);
        v.set(r, q, -su * vrp + c * vrq);
    }
}

fn sort_eigenpairs(values: &mut [f64], vectors: &mut CMatrix) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let old_values = values.to_vec();
    let old_vectors = vectors.clone();
    for (new_col, &old_col) in order.iter().enumerate() {
        values[new_col] = old_values[old_col];
        for r in 0..n {
            vectors.set(r, new_col, old_vectors.get(r, old_col));
        }
    }
}

/// Largest `‖A·v − λ·v‖₂` over all eigenpairs.
pub fn max_residual(a: &CMatrix, eig: &HermitianEigen) -> f64 {
    let n = a.size();
    let mut worst = 0.0f64;
    for (col, &lambda) in eig.values.iter().enumerate() {
        let v = eig.vectors.column(col);
        let mut err = 0.0;
        for i in 0..n {
            let mut av = Complex64::new(0.0, 0.0);
            for j in 0..n {
                av += a.get(i, j) * v[j];
            }
            err += (av - lambda * v[i]).norm_sqr();
        }
        worst = worst.max(err.sqrt());
    }
    worst
}

//! Small shared helpers for dense complex linear algebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// exp(2πi k / n) without accumulating phase error for rational angles.
pub fn unit_phase(k: i64, n: u64) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * (k.rem_euclid(n as i64) as f64) / (n as f64);
    Complex64::new(angle.cos(), angle.sin())
}

/// Entrywise max-abs norm.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// ‖U†U − 𝟙‖_∞.
pub fn unitarity_defect(u: &CMat) -> f64 {
    let g = u.adjoint() * u;
    max_abs(&(g - eye(u.nrows())))
}

pub fn frobenius_norm_sq(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues (ascending)
/// and the matching unitary of column eigenvectors.
pub fn hermitian_eigen(h: &CMat) -> (Vec<f64>, CMat) {
    let se = h.clone().symmetric_eigen();
    let mut idx: Vec<usize> = (0..se.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let vals: Vec<f64> = idx.iter().map(|&i| se.eigenvalues[i]).collect();
    let n = h.nrows();
    let mut vecs = CMat::zeros(n, n);
    for (col, &i) in idx.iter().enumerate() {
        vecs.set_column(col, &se.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// exp(A) for skew-Hermitian A, via the Hermitian eigendecomposition of iA.
pub fn exp_skew_hermitian(a: &CMat) -> CMat {
    let h = a.map(|z| I * z); // Hermitian
    let (vals, vecs) = hermitian_eigen(&h);
    let n = a.nrows();
    let diag = CMat::from_fn(n, n, |r, c| {
        if r == c {
            let t = -vals[r];
            Complex64::new(t.cos(), t.sin())
        } else {
            ZERO
        }
    });
    &vecs * diag * vecs.adjoint()
}

/// Matrix with independent standard-normal real and imaginary parts.
pub fn random_complex_matrix<R: Rng>(n: usize, rng: &mut R) -> CMat {
    CMat::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-ish random unitary: exponential of a random skew-Hermitian matrix
/// with entries scaled by 1/√d.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMat {
    let g = random_complex_matrix(n, rng) / Complex64::new((n as f64).sqrt(), 0.0);
    let skew = (&g - g.adjoint()) * Complex64::new(0.5, 0.0);
    exp_skew_hermitian(&skew)
}

/// Random normalized state vector.
pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> CVec {
    let v = CVec::from_fn(n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}

/// Multiply by the phase making the first entry with modulus above `tol`
/// real and positive. Used to compare matrices up to a global phase and to
/// fix gauge freedom in extracted eigenvectors.
pub fn fix_global_phase(m: &CMat, tol: f64) -> CMat {
    for z in m.iter() {
        if z.norm() > tol {
            let phase = z / z.norm();
            return m.map(|w| w * phase.conj());
        }
    }
    m.clone()
}

pub fn fix_vector_phase(v: &CVec, tol: f64) -> CVec {
    for z in v.iter() {
        if z.norm() > tol {
            let phase = z / z.norm();
            return v.map(|w| w * phase.conj());
        }
    }
    v.clone()
}

/// max-abs distance between a and e^{iφ}·b, minimized over the phase φ.
pub fn distance_up_to_phase(a: &CMat, b: &CMat) -> f64 {
    let fa = fix_global_phase(a, 1e-9);
    let fb = fix_global_phase(b, 1e-9);
    max_abs(&(fa - fb))
}

/// Compensated (Kahan) accumulator; pair sums use a fixed index order so
/// reported potentials reproduce bit-for-bit.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// A ⊗ B.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Partial trace over the second factor of C^da ⊗ C^db.
pub fn partial_trace_second(m: &CMat, da: usize, db: usize) -> CMat {
    debug_assert_eq!(m.nrows(), da * db);
    CMat::from_fn(da, da, |i, ip| {
        let mut s = ZERO;
        for j in 0..db {
            s += m[(i * db + j, ip * db + j)];
        }
        s
    })
}

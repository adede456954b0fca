//! The embedding of U(d) into the symplectic orthogonal group SpO(2d) of
//! passive linear-optics operations, pushforward of designs, and averages
//! of covariance-matrix functionals (energy fluctuations).
//!
//! With U = X + iY, the embedding is S(U) = [[X, Y], [−Y, X]], a group
//! homomorphism into SpO(2d) = Sp(2d, ℝ) ∩ O(2d). The block-diagonalizing
//! conjugation Ω S(U) Ω⁻¹ = U ⊕ Ū uses Ω = [[𝟙, −i𝟙], [𝟙, i𝟙]]/√2;
//! quadratures are ordered (x_1..x_d, p_1..p_d).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::designs::{self, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, KahanSum};

pub type RMat = DMatrix<f64>;

/// S(U) = [[X, Y], [−Y, X]] for U = X + iY.
pub fn embed_unitary(u: &CMat) -> Result<RMat> {
    let d = u.nrows();
    if linalg::unitarity_defect(u) > 1e-9 {
        return Err(Error::NotUnitary {
            index: 0,
            defect: linalg::unitarity_defect(u),
        });
    }
    let mut s = RMat::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            let z = u[(i, j)];
            s[(i, j)] = z.re;
            s[(i, j + d)] = z.im;
            s[(i + d, j)] = -z.im;
            s[(i + d, j + d)] = z.re;
        }
    }
    Ok(s)
}

/// Ω = [[𝟙, −i𝟙], [𝟙, i𝟙]]/√2, the unitary with Ω S(U) Ω† = U ⊕ Ū.
pub fn omega(d: usize) -> CMat {
    let r = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let mi = Complex64::new(0.0, -1.0 / 2f64.sqrt());
    let pi = Complex64::new(0.0, 1.0 / 2f64.sqrt());
    CMat::from_fn(2 * d, 2 * d, |i, j| {
        if i < d {
            if j == i {
                r
            } else if j == i + d {
                mi
            } else {
                linalg::ZERO
            }
        } else if j == i - d {
            r
        } else if j == i {
            pi
        } else {
            linalg::ZERO
        }
    })
}

/// U ⊕ Ū on C^{2d}.
pub fn direct_sum_with_conjugate(u: &CMat) -> CMat {
    let d = u.nrows();
    CMat::from_fn(2 * d, 2 * d, |i, j| {
        if i < d && j < d {
            u[(i, j)]
        } else if i >= d && j >= d {
            u[(i - d, j - d)].conj()
        } else {
            linalg::ZERO
        }
    })
}

/// Membership defect in SpO(2d): max of ‖SᵀS − 𝟙‖∞ and ‖S J Sᵀ − J‖∞.
pub fn spo_defect(s: &RMat) -> f64 {
    let n = s.nrows();
    let d = n / 2;
    let eye = RMat::identity(n, n);
    let mut j = RMat::zeros(n, n);
    for i in 0..d {
        j[(i, i + d)] = 1.0;
        j[(i + d, i)] = -1.0;
    }
    let orth = (s.transpose() * s - &eye)
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max);
    let symp = (s * &j * s.transpose() - &j)
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max);
    orth.max(symp)
}

/// Push a verified order-t group design forward to SpO(2d); every image
/// matrix is membership-checked. The conjugate ensemble is implicit in the
/// U ⊕ Ū block structure. `tol` is the verification tolerance on the
/// potential gap.
pub fn pushforward_design(ensemble: &UnitaryEnsemble, t: usize, tol: f64) -> Result<Vec<RMat>> {
    let report = designs::is_design(ensemble, t, tol)?;
    if !report.verdict {
        return Err(Error::NotVerified { t, gap: report.gap });
    }
    let mut out = Vec::with_capacity(ensemble.len());
    for u in &ensemble.matrices {
        let s = embed_unitary(u)?;
        if spo_defect(&s) > 1e-10 {
            return Err(Error::NotSymplectic);
        }
        out.push(s);
    }
    Ok(out)
}

/// First-mode energy functional f(U) = ⟨1|(U ⊕ Ū) Ω γ Ω† (U ⊕ Ū)†|1⟩,
/// where ⟨1| selects the first complexified coordinate.
fn first_mode_energy(u: &CMat, conjugated_gamma: &CMat) -> f64 {
    let big = direct_sum_with_conjugate(u);
    let m = &big * conjugated_gamma * big.adjoint();
    m[(0, 0)].re
}

/// Expected energy fluctuation ΔE = avg f² − (avg f)² over a verified
/// 2-design; independent of which verified design is used.
pub fn energy_fluctuation(ensemble: &UnitaryEnsemble, gamma: &RMat, tol: f64) -> Result<f64> {
    let d = ensemble.dimension;
    if gamma.nrows() != 2 * d || gamma.ncols() != 2 * d {
        return Err(Error::DimensionMismatch {
            expected: 2 * d,
            got: gamma.nrows(),
        });
    }
    if (gamma - gamma.transpose())
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max)
        > 1e-12
    {
        return Err(Error::NotSymplectic);
    }
    let report = designs::is_design(ensemble, 2, tol)?;
    if !report.verdict {
        return Err(Error::NotVerified {
            t: 2,
            gap: report.gap,
        });
    }
    let om = omega(d);
    let gamma_c = CMat::from_fn(2 * d, 2 * d, |i, j| Complex64::new(gamma[(i, j)], 0.0));
    let conjugated = &om * gamma_c * om.adjoint();
    let mut first = KahanSum::default();
    let mut second = KahanSum::default();
    for u in &ensemble.matrices {
        let f = first_mode_energy(u, &conjugated);
        first.add(f);
        second.add(f * f);
    }
    let k = ensemble.len() as f64;
    let mean = first.value() / k;
    Ok(second.value() / k - mean * mean)
}

/// First moment avg_k f(U_k), the order-1 average of the same functional.
pub fn mean_first_mode_energy(ensemble: &UnitaryEnsemble, gamma: &RMat) -> Result<f64> {
    let d = ensemble.dimension;
    if gamma.nrows() != 2 * d {
        return Err(Error::DimensionMismatch {
            expected: 2 * d,
            got: gamma.nrows(),
        });
    }
    let om = omega(d);
    let gamma_c = CMat::from_fn(2 * d, 2 * d, |i, j| Complex64::new(gamma[(i, j)], 0.0));
    let conjugated = &om * gamma_c * om.adjoint();
    let mut acc = KahanSum::default();
    for u in &ensemble.matrices {
        acc.add(first_mode_energy(u, &conjugated));
    }
    Ok(acc.value() / ensemble.len() as f64)
}

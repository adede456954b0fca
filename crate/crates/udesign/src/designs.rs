//! Core design analytics: frame potentials of any order, design
//! verification, Choi matrices and twirl channels, spherical-design
//! comparison, cardinality bounds, and group-character criteria.
//!
//! A set D = {U_k} of K unitaries on C^d is a unitary 2-design exactly when
//! its frame potential P(D) = Σ_{k,k'} |tr(U_k†U_k')|⁴ / K² equals 2, the
//! global minimum. The order-t potential uses the exponent 2t; its minimum
//! over t-designs is t! for d ≥ t and, in general, the sum of squared
//! symmetric-group irrep dimensions over partitions of t into at most d
//! parts.
//!
//! Haar averages are never computed by quadrature here: "equals the Haar
//! average" is always operationalized as agreement between independently
//! verified designs, or against the projector formula for twirling
//! channels.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, KahanSum};

/// A finite, uniformly weighted set of d×d unitaries: the candidate design.
#[derive(Debug, Clone)]
pub struct UnitaryEnsemble {
    pub dimension: usize,
    pub matrices: Vec<CMat>,
    pub name: String,
    /// Set when the ensemble is known to be closed under multiplication up
    /// to global phases; enables the single-sum group potential.
    pub closed_up_to_phase: bool,
}

pub const UNITARITY_TOL: f64 = 1e-10;

impl UnitaryEnsemble {
    /// Validating constructor: every matrix must be d×d and unitary within
    /// 1e-10 in the entrywise norm of U†U − 𝟙.
    pub fn new(name: &str, dimension: usize, matrices: Vec<CMat>) -> Result<UnitaryEnsemble> {
        if matrices.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        for (index, u) in matrices.iter().enumerate() {
            if u.nrows() != dimension || u.ncols() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: u.nrows(),
                });
            }
            let defect = linalg::unitarity_defect(u);
            if defect > UNITARITY_TOL {
                return Err(Error::NotUnitary { index, defect });
            }
        }
        Ok(UnitaryEnsemble {
            dimension,
            matrices,
            name: name.to_string(),
            closed_up_to_phase: false,
        })
    }

    pub fn with_closure_flag(mut self) -> UnitaryEnsemble {
        self.closed_up_to_phase = true;
        self
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

fn trace_inner(a: &CMat, b: &CMat) -> Complex64 {
    // tr(a† b) as a flat inner product.
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Frame potential P_t(D) = Σ_{k,k'} |tr(U_k† U_k')|^{2t} / K².
///
/// The double sum runs in a fixed index order with compensated summation
/// (rows in parallel, deterministic sequential reduction), so the result is
/// reproducible bit-for-bit regardless of thread count.
pub fn frame_potential(ensemble: &UnitaryEnsemble, t: usize) -> Result<f64> {
    if ensemble.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let k = ensemble.len();
    let rows: Vec<f64> = (0..k)
        .into_par_iter()
        .map(|i| {
            let mut acc = KahanSum::default();
            for j in 0..k {
                let z = trace_inner(&ensemble.matrices[i], &ensemble.matrices[j]);
                acc.add(z.norm_sqr().powi(t as i32));
            }
            acc.value()
        })
        .collect();
    let mut total = KahanSum::default();
    for r in rows {
        total.add(r);
    }
    Ok(total.value() / (k * k) as f64)
}

/// Single-sum group potential Σ_k |tr U_k|^{2t} / K, valid for ensembles
/// closed under multiplication up to a global phase.
pub fn frame_potential_group(ensemble: &UnitaryEnsemble, t: usize) -> Result<f64> {
    if !ensemble.closed_up_to_phase {
        return Err(Error::NotClosedUpToPhase);
    }
    Ok(potential_from_traces(
        ensemble.matrices.iter().map(|u| u.trace()),
        ensemble.len(),
        t,
    ))
}

/// Group potential from streamed traces.
pub fn potential_from_traces(traces: impl Iterator<Item = Complex64>, k: usize, t: usize) -> f64 {
    let mut acc = KahanSum::default();
    for z in traces {
        acc.add(z.norm_sqr().powi(t as i32));
    }
    acc.value() / k as f64
}

/// Partitions of t into at most `max_parts` parts, each part listed in
/// non-increasing order.
pub fn partitions(t: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(
        remaining: usize,
        max_part: usize,
        slots: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = remaining.min(max_part);
        for part in (1..=hi).rev() {
            cur.push(part);
            rec(remaining - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, t, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the S_t irrep labeled by a partition, by the hook-length
/// formula, in exact integer arithmetic.
pub fn hook_length_dimension(partition: &[usize]) -> u128 {
    let t: usize = partition.iter().sum();
    let rows = partition.len();
    let mut hooks: Vec<u128> = Vec::new();
    for i in 0..rows {
        for j in 0..partition[i] {
            let arm = partition[i] - j - 1;
            let leg = (i + 1..rows).filter(|&r| partition[r] > j).count();
            hooks.push((arm + leg + 1) as u128);
        }
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for f in 1..=t as u128 {
        num *= f;
    }
    for h in hooks {
        den *= h;
    }
    num / den
}

/// Minimal frame potential of an order-t design in dimension d: t! when
/// d ≥ t, and Σ_λ (dim λ)² over partitions λ of t into ≤ d parts otherwise.
pub fn target_potential(t: usize, d: usize) -> f64 {
    let total: u128 = partitions(t, d.min(t))
        .iter()
        .map(|lam| {
            let dim = hook_length_dimension(lam);
            dim * dim
        })
        .sum();
    total as f64
}

/// Verification verdict for one potential evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialReport {
    pub t: usize,
    pub value: f64,
    pub target: f64,
    pub gap: f64,
    pub verdict: bool,
    pub tolerance: f64,
    /// Set when value < target − tol, which is impossible for genuine
    /// unitaries and signals a numerical fault upstream.
    pub numerical_fault: bool,
}

pub const DESIGN_TOL: f64 = 1e-9;

/// Is D an order-t design? True iff P_t(D) ≤ target + tol.
pub fn is_design(ensemble: &UnitaryEnsemble, t: usize, tol: f64) -> Result<PotentialReport> {
    let value = if ensemble.closed_up_to_phase {
        frame_potential_group(ensemble, t)?
    } else {
        frame_potential(ensemble, t)?
    };
    let target = target_potential(t, ensemble.dimension);
    let gap = value - target;
    Ok(PotentialReport {
        t,
        value,
        target,
        gap,
        verdict: gap <= tol,
        tolerance: tol,
        numerical_fault: gap < -tol,
    })
}

/// Flip operator and the symmetric/antisymmetric projectors of C^d ⊗ C^d.
#[derive(Debug, Clone)]
pub struct SymmetrySplit {
    pub d: usize,
    pub flip: CMat,
    pub p_sym: CMat,
    pub p_anti: CMat,
    pub dim_sym: usize,
    pub dim_anti: usize,
}

impl SymmetrySplit {
    pub fn new(d: usize) -> SymmetrySplit {
        let dd = d * d;
        let mut flip = CMat::zeros(dd, dd);
        for i in 0..d {
            for j in 0..d {
                flip[(j * d + i, i * d + j)] = linalg::ONE;
            }
        }
        let id = linalg::eye(dd);
        let half = Complex64::new(0.5, 0.0);
        let p_sym = (&id + &flip) * half;
        let p_anti = (&id - &flip) * half;
        SymmetrySplit {
            d,
            flip,
            p_sym,
            p_anti,
            dim_sym: d * (d + 1) / 2,
            dim_anti: d * (d - 1) / 2,
        }
    }
}

/// v_U = vec(U)/√d: the normalized maximally entangled vector with
/// components v^{ij} = U^i_j / √d.
pub fn vec_of_unitary(u: &CMat) -> CVec {
    let d = u.nrows();
    let scale = Complex64::new((d as f64).sqrt(), 0.0);
    CVec::from_fn(d * d, |k, _| u[(k / d, k % d)] / scale)
}

/// Inverse of `vec_of_unitary`: √d · reshape(v). Unitary iff v was
/// maximally entangled.
pub fn matrix_of_vec(v: &CVec, d: usize) -> CMat {
    let scale = Complex64::new((d as f64).sqrt(), 0.0);
    CMat::from_fn(d, d, |i, j| v[i * d + j] * scale)
}

#[derive(Debug, Clone, Serialize)]
pub struct SphericalReport {
    pub value: f64,
    pub minimum: f64,
    pub gap: f64,
}

/// Spherical frame potential Σ_{k,k'} |⟨ψ_k, ψ_k'⟩|⁴ / K², against the
/// global minimum 2/(D(D+1)) for unit vectors in C^D.
pub fn spherical_potential(vectors: &[CVec]) -> Result<SphericalReport> {
    if vectors.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let dim = vectors[0].len();
    for v in vectors {
        if (v.norm() - 1.0).abs() > 1e-8 {
            return Err(Error::NotUnitary {
                index: 0,
                defect: (v.norm() - 1.0).abs(),
            });
        }
    }
    let k = vectors.len();
    let mut acc = KahanSum::default();
    for a in vectors {
        for b in vectors {
            acc.add(a.dotc(b).norm_sqr().powi(2));
        }
    }
    let value = acc.value() / (k * k) as f64;
    let minimum = 2.0 / (dim as f64 * (dim as f64 + 1.0));
    Ok(SphericalReport {
        value,
        minimum,
        gap: value - minimum,
    })
}

/// State twirl T_D(ρ) = (1/K) Σ_k (U_k ⊗ U_k) ρ (U_k ⊗ U_k)†.
pub fn twirl_with_ensemble(ensemble: &UnitaryEnsemble, rho: &CMat) -> Result<CMat> {
    let dd = ensemble.dimension * ensemble.dimension;
    if rho.nrows() != dd || rho.ncols() != dd {
        return Err(Error::DimensionMismatch {
            expected: dd,
            got: rho.nrows(),
        });
    }
    let mut out = CMat::zeros(dd, dd);
    for u in &ensemble.matrices {
        let uu = linalg::kron(u, u);
        out += &uu * rho * uu.adjoint();
    }
    Ok(out / Complex64::new(ensemble.len() as f64, 0.0))
}

/// Channel twirl (1/K) Σ_k U_k† Λ(U_k ρ U_k†) U_k for a channel given as a
/// callable on density operators.
pub fn twirl_channel<F>(ensemble: &UnitaryEnsemble, apply: F, rho: &CMat) -> Result<CMat>
where
    F: Fn(&CMat) -> CMat,
{
    let d = ensemble.dimension;
    if rho.nrows() != d || rho.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: rho.nrows(),
        });
    }
    let mut out = CMat::zeros(d, d);
    for u in &ensemble.matrices {
        let inner = apply(&(u * rho * u.adjoint()));
        if inner.nrows() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: inner.nrows(),
            });
        }
        out += u.adjoint() * inner * u;
    }
    Ok(out / Complex64::new(ensemble.len() as f64, 0.0))
}

/// Channel application ρ ↦ Λ(ρ) reconstructed from a Choi matrix:
/// Λ(|i⟩⟨j|) = ⟨i|₁ C |j⟩₁.
pub fn channel_from_choi(choi: &ChoiMatrix) -> impl Fn(&CMat) -> CMat + '_ {
    let d = choi.input_dim;
    move |rho: &CMat| {
        let mut out = CMat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                if rho[(i, j)].norm() == 0.0 {
                    continue;
                }
                for a in 0..d {
                    for b in 0..d {
                        out[(a, b)] += rho[(i, j)] * choi.matrix[(i * d + a, j * d + b)];
                    }
                }
            }
        }
        out
    }
}

/// Choi matrix C_Λ = Σ_{ij} |i⟩⟨j| ⊗ Λ(|i⟩⟨j|), on C^D ⊗ C^D.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    pub input_dim: usize,
    pub matrix: CMat,
}

/// Dimension cap for Choi-based operations (matrices of size d⁴).
pub const CHOI_DIM_CAP: usize = 4;

fn check_choi_cap(d: usize) -> Result<()> {
    if d > CHOI_DIM_CAP {
        return Err(Error::DimensionCap {
            cap: CHOI_DIM_CAP,
            got: d,
        });
    }
    Ok(())
}

/// Choi matrix of the twirl channel T_D, assembled from the rank-one Choi
/// matrices of the unitary conjugations ρ ↦ (U⊗U)ρ(U⊗U)†.
pub fn choi_of_twirl(ensemble: &UnitaryEnsemble) -> Result<ChoiMatrix> {
    let d = ensemble.dimension;
    check_choi_cap(d)?;
    let big = d * d; // channel input dimension D = d²
    let mut c = CMat::zeros(big * big, big * big);
    for u in &ensemble.matrices {
        let w = linalg::kron(u, u);
        // (𝟙 ⊗ W)|Ψ⟩ has components ψ_{(i,j)} = W_{j,i}.
        let psi = CVec::from_fn(big * big, |k, _| w[(k % big, k / big)]);
        c += &psi * psi.adjoint();
    }
    Ok(ChoiMatrix {
        input_dim: big,
        matrix: c / Complex64::new(ensemble.len() as f64, 0.0),
    })
}

/// Choi matrix of the Haar UU-twirl: C_UU = P_S ⊗ P_S' + P_A ⊗ P_A'.
pub fn choi_uu(d: usize) -> Result<ChoiMatrix> {
    check_choi_cap(d)?;
    let split = SymmetrySplit::new(d);
    let s_norm = Complex64::new(1.0 / split.dim_sym as f64, 0.0);
    let a_norm = Complex64::new(1.0 / split.dim_anti as f64, 0.0);
    let mut c = linalg::kron(&split.p_sym, &(&split.p_sym * s_norm));
    if split.dim_anti > 0 {
        c += linalg::kron(&split.p_anti, &(&split.p_anti * a_norm));
    }
    Ok(ChoiMatrix {
        input_dim: d * d,
        matrix: c,
    })
}

/// ‖C_UU − C_D‖₂², which equals P₂(D) − 2.
pub fn choi_gap(ensemble: &UnitaryEnsemble) -> Result<f64> {
    let cuu = choi_uu(ensemble.dimension)?;
    let cd = choi_of_twirl(ensemble)?;
    Ok(linalg::frobenius_norm_sq(&(cuu.matrix - cd.matrix)))
}

/// D_pro distance between T_D and T_UU: (1/D_ch)·tr|C_UU − C_D| with
/// D_ch = d², the twirl channel's input dimension.
pub fn dpro_distance(ensemble: &UnitaryEnsemble) -> Result<f64> {
    let cuu = choi_uu(ensemble.dimension)?;
    let cd = choi_of_twirl(ensemble)?;
    let delta = cuu.matrix - cd.matrix;
    let (vals, _) = linalg::hermitian_eigen(&delta);
    let trace_norm: f64 = vals.iter().map(|v| v.abs()).sum();
    Ok(trace_norm / (ensemble.dimension * ensemble.dimension) as f64)
}

/// Minimum cardinality of a 2-design in dimension d: d⁴ − 2d² + 2.
pub fn lower_bound(d: u64) -> u64 {
    d.pow(4) - 2 * d.pow(2) + 2
}

/// The Clifford bound d⁴ − d², conjectured minimal 2-design cardinality.
pub fn clifford_bound(d: u64) -> u64 {
    d.pow(4) - d.pow(2)
}

#[derive(Debug, Clone, Serialize)]
pub struct CardinalityReport {
    pub d: u64,
    pub k: u64,
    /// K must be a multiple of d, d(d+1)/2, and d(d−1)/2.
    pub divisors: Vec<u64>,
    pub pass: bool,
    /// Smallest K ≥ the order bound satisfying the divisibility
    /// constraints.
    pub divisibility_min: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Group-design divisibility constraints on the cardinality K.
pub fn cardinality_constraints(d: u64, k: u64) -> CardinalityReport {
    let divisors: Vec<u64> = [d, d * (d + 1) / 2, d * (d - 1) / 2]
        .into_iter()
        .filter(|&x| x > 0)
        .collect();
    let step = divisors.iter().copied().fold(1, lcm);
    let bound = lower_bound(d);
    let divisibility_min = bound.div_ceil(step) * step;
    CardinalityReport {
        d,
        k,
        divisors: divisors.clone(),
        pass: divisors.iter().all(|&x| k % x == 0),
        divisibility_min,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterReport {
    pub order: usize,
    pub t: usize,
    /// ‖ζ^t‖² = Σ_g |tr U_g|^{2t} / |G|.
    pub potential: f64,
    /// Norms of χ_S(g) = (ζ(g)² + ζ(g²))/2 and χ_A(g) = (ζ(g)² − ζ(g²))/2;
    /// both equal 1 exactly when the symmetric and antisymmetric characters
    /// are irreducible.
    pub chi_sym_norm: f64,
    pub chi_anti_norm: f64,
    /// Potentials of matrix groups are integers; flags |P − round(P)| ≤ 1e-8.
    pub integer_check: bool,
}

/// Character-theoretic report over a closed (not merely up-to-phase) matrix
/// group: χ(g²) is evaluated on the actual element g·g.
pub fn character_report(group: &[CMat], t: usize) -> Result<CharacterReport> {
    use crate::symplectic::complex_key;
    use std::collections::HashMap;
    if group.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let mut index: HashMap<Vec<(i64, i64)>, usize> = HashMap::new();
    for (i, g) in group.iter().enumerate() {
        index.insert(complex_key(g, false), i);
    }
    let traces: Vec<Complex64> = group.iter().map(|g| g.trace()).collect();
    let squares: Vec<usize> = group
        .iter()
        .map(|g| {
            index
                .get(&complex_key(&(g * g), false))
                .copied()
                .ok_or(Error::NotClosedUpToPhase)
        })
        .collect::<Result<Vec<_>>>()?;
    let n = group.len() as f64;
    let potential = potential_from_traces(traces.iter().copied(), group.len(), t);
    let half = Complex64::new(0.5, 0.0);
    let mut sym = KahanSum::default();
    let mut anti = KahanSum::default();
    for (i, z) in traces.iter().enumerate() {
        let zsq = traces[squares[i]];
        let chi_s = (z * z + zsq) * half;
        let chi_a = (z * z - zsq) * half;
        sym.add(chi_s.norm_sqr());
        anti.add(chi_a.norm_sqr());
    }
    Ok(CharacterReport {
        order: group.len(),
        t,
        potential,
        chi_sym_norm: sym.value() / n,
        chi_anti_norm: anti.value() / n,
        integer_check: (potential - potential.round()).abs() <= 1e-8,
    })
}

/// Twirl over a complete orthogonal projector set (multiplicity-free case):
/// T(ρ) = Σ_i tr(P_i' ρ) P_i with P_i' = P_i / tr P_i.
pub fn twirl_by_projectors(projectors: &[CMat], rho: &CMat) -> Result<CMat> {
    if projectors.is_empty() {
        return Err(Error::BadProjectorSet);
    }
    let dim = projectors[0].nrows();
    let mut sum = CMat::zeros(dim, dim);
    for (i, p) in projectors.iter().enumerate() {
        if p.nrows() != dim || linalg::max_abs(&(p * p - p)) > 1e-9 {
            return Err(Error::BadProjectorSet);
        }
        for q in projectors.iter().skip(i + 1) {
            if linalg::max_abs(&(p * q)) > 1e-9 {
                return Err(Error::BadProjectorSet);
            }
        }
        sum += p;
    }
    if linalg::max_abs(&(sum - linalg::eye(dim))) > 1e-9 {
        return Err(Error::BadProjectorSet);
    }
    if rho.nrows() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: rho.nrows(),
        });
    }
    let mut out = CMat::zeros(dim, dim);
    for p in projectors {
        let weight = (p * rho).trace() / p.trace();
        out += p * weight;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfield::Field;
    use crate::linalg::{max_abs, random_complex_matrix, random_unitary};
    use crate::symplectic::{sl2, JacobiDesign};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn single_identity(d: usize) -> UnitaryEnsemble {
        UnitaryEnsemble::new("id", d, vec![linalg::eye(d)]).unwrap()
    }

    fn paulis() -> UnitaryEnsemble {
        let z = linalg::ZERO;
        let o = linalg::ONE;
        let i = linalg::I;
        let mats = vec![
            CMat::from_row_slice(2, 2, &[o, z, z, o]),
            CMat::from_row_slice(2, 2, &[z, o, o, z]),
            CMat::from_row_slice(2, 2, &[z, -i, i, z]),
            CMat::from_row_slice(2, 2, &[o, z, z, -o]),
        ];
        UnitaryEnsemble::new("paulis", 2, mats).unwrap()
    }

    fn qubit_clifford24() -> UnitaryEnsemble {
        let f2 = Field::new(2, 1).unwrap();
        let design = JacobiDesign::new(&f2, 1, sl2(&f2)).unwrap();
        UnitaryEnsemble::new("jacobi-2-1", 2, design.materialize())
            .unwrap()
            .with_closure_flag()
    }

    fn random_ensemble(d: usize, k: usize, rng: &mut ChaCha8Rng) -> UnitaryEnsemble {
        let mats = (0..k).map(|_| random_unitary(d, rng)).collect();
        UnitaryEnsemble::new("random", d, mats).unwrap()
    }

    #[test]
    fn potential_of_single_identity() {
        let e = single_identity(2);
        assert_eq!(frame_potential(&e, 2).unwrap(), 16.0);
        assert_eq!(frame_potential(&e, 1).unwrap(), 4.0);
    }

    #[test]
    fn potential_of_pauli_set() {
        let e = paulis();
        assert!((frame_potential(&e, 2).unwrap() - 4.0).abs() < 1e-12);
        let closed = e.with_closure_flag();
        assert!((frame_potential_group(&closed, 2).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn group_formula_requires_flag() {
        let e = paulis();
        assert!(matches!(
            frame_potential_group(&e, 2),
            Err(Error::NotClosedUpToPhase)
        ));
    }

    #[test]
    fn group_formula_matches_pair_sum_on_clifford() {
        let e = qubit_clifford24();
        let full = frame_potential(&e, 2).unwrap();
        let single = frame_potential_group(&e, 2).unwrap();
        assert!((full - single).abs() < 1e-10);
        assert!((full - 2.0).abs() < 1e-10);
    }

    #[test]
    fn target_potential_values() {
        for d in 2..6 {
            assert_eq!(target_potential(2, d), 2.0);
            assert_eq!(target_potential(1, d), 1.0);
        }
        assert_eq!(target_potential(3, 3), 6.0);
        assert_eq!(target_potential(4, 4), 24.0);
        assert_eq!(target_potential(3, 2), 5.0);
        assert_eq!(target_potential(4, 2), 14.0);
        assert_eq!(target_potential(5, 2), 42.0);
        assert_eq!(target_potential(6, 2), 132.0);
    }

    /// The printed two-row dimension formula (with the denominator read as
    /// (n−i+1)!) must agree with the hook-length computation.
    #[test]
    fn two_row_closed_form_matches_hooks() {
        fn factorial(n: usize) -> f64 {
            (1..=n).map(|x| x as f64).product::<f64>().max(1.0)
        }
        for n in 1..=10usize {
            let closed: f64 = (0..=n / 2)
                .map(|i| {
                    let v = factorial(n) * (n as f64 - 2.0 * i as f64 + 1.0)
                        / (factorial(i) * factorial(n - i + 1));
                    v * v
                })
                .sum();
            assert!(
                (closed - target_potential(n, 2)).abs() < 1e-6,
                "mismatch at t={n}: {closed} vs {}",
                target_potential(n, 2)
            );
        }
    }

    #[test]
    fn is_design_verdicts() {
        let e = qubit_clifford24();
        let r2 = is_design(&e, 2, DESIGN_TOL).unwrap();
        assert!(r2.verdict && !r2.numerical_fault);
        // The single-qubit Clifford group is even a 3-design, but not a
        // 4-design.
        let r3 = is_design(&e, 3, DESIGN_TOL).unwrap();
        assert!(r3.verdict);
        let r4 = is_design(&e, 4, DESIGN_TOL).unwrap();
        assert!(!r4.verdict && r4.value > 14.0);
        // The bare Pauli set is a 1-design but no 2-design.
        let p = paulis();
        assert!(is_design(&p, 1, DESIGN_TOL).unwrap().verdict);
        let rp = is_design(&p, 2, DESIGN_TOL).unwrap();
        assert!(!rp.verdict && rp.value > 2.0);
    }

    #[test]
    fn symmetry_split_invariants() {
        for d in [2usize, 3, 4] {
            let s = SymmetrySplit::new(d);
            assert!(max_abs(&(&s.flip * &s.flip - linalg::eye(d * d))) < 1e-14);
            assert!(max_abs(&(&s.p_sym + &s.p_anti - linalg::eye(d * d))) < 1e-14);
            assert!(max_abs(&(&s.p_sym * &s.p_anti)) < 1e-14);
            assert!((s.p_sym.trace().re - s.dim_sym as f64).abs() < 1e-10);
            assert!((s.p_anti.trace().re - s.dim_anti as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn vec_of_identity_is_bell_state() {
        let v = vec_of_unitary(&linalg::eye(2));
        let r = 1.0 / 2f64.sqrt();
        assert!((v[0].re - r).abs() < 1e-15 && (v[3].re - r).abs() < 1e-15);
        assert!(v[1].norm() < 1e-15 && v[2].norm() < 1e-15);
    }

    #[test]
    fn vec_overlap_identity_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let d = rng.gen_range(2..5);
            let u = random_unitary(d, &mut rng);
            let v = random_unitary(d, &mut rng);
            let lhs = vec_of_unitary(&u).dotc(&vec_of_unitary(&v)).norm();
            let rhs = trace_inner(&u, &v).norm() / d as f64;
            assert!((lhs - rhs).abs() < 1e-12);
            // Both reduced states of v_U are maximally mixed.
            let vu = vec_of_unitary(&u);
            let rho = &vu * vu.adjoint();
            let r1 = linalg::partial_trace_second(&rho, d, d);
            assert!(max_abs(&(r1 - linalg::eye(d) / Complex64::new(d as f64, 0.0))) < 1e-10);
        }
    }

    #[test]
    fn spherical_potential_reference_cases() {
        let single = vec![CVec::from_element(1, linalg::ONE)];
        assert!((spherical_potential(&single).unwrap().value - 1.0).abs() < 1e-15);
        // An orthonormal basis of C^D gives 1/D.
        for d in [2usize, 3, 5] {
            let basis: Vec<CVec> = (0..d)
                .map(|i| CVec::from_fn(d, |r, _| if r == i { linalg::ONE } else { linalg::ZERO }))
                .collect();
            assert!((spherical_potential(&basis).unwrap().value - 1.0 / d as f64).abs() < 1e-15);
        }
        let bad = vec![CVec::from_element(2, linalg::ONE)];
        assert!(spherical_potential(&bad).is_err());
    }

    #[test]
    fn vec_potential_consistency_on_a_design() {
        // The spherical pair sum of the vectorized design equals P(D)/d⁴,
        // sitting exactly at the maximally entangled minimum 2/d⁴.
        let e = qubit_clifford24();
        let vecs: Vec<CVec> = e.matrices.iter().map(vec_of_unitary).collect();
        let sph = spherical_potential(&vecs).unwrap();
        let p = frame_potential(&e, 2).unwrap();
        let d4 = (e.dimension as f64).powi(4);
        assert!((sph.value - p / d4).abs() < 1e-12);
        assert!((sph.value - 2.0 / d4).abs() < 1e-10);
    }

    #[test]
    fn twirl_matches_projector_formula_on_design() {
        let e = qubit_clifford24();
        let split = SymmetrySplit::new(2);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let m = random_complex_matrix(4, &mut rng);
            let rho = &m * m.adjoint();
            let rho = &rho / rho.trace();
            let out = twirl_with_ensemble(&e, &rho).unwrap();
            let expect =
                twirl_by_projectors(&[split.p_sym.clone(), split.p_anti.clone()], &rho).unwrap();
            assert!(max_abs(&(&out - &expect)) < 1e-9);
            // Idempotence.
            let again = twirl_with_ensemble(&e, &out).unwrap();
            assert!(max_abs(&(again - out)) < 1e-9);
        }
        // Unital.
        let id_out = twirl_with_ensemble(&e, &linalg::eye(4)).unwrap();
        assert!(max_abs(&(id_out - linalg::eye(4))) < 1e-10);
    }

    #[test]
    fn channel_twirl_depolarizes() {
        let e = qubit_clifford24();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let v = random_unitary(2, &mut rng);
        let lambda = |rho: &CMat| &v * rho * v.adjoint();
        // Identity channel twirls to the identity map.
        let m = random_complex_matrix(2, &mut rng);
        let rho = &m * m.adjoint();
        let rho = &rho / rho.trace();
        let idout = twirl_channel(&e, |r: &CMat| r.clone(), &rho).unwrap();
        assert!(max_abs(&(&idout - &rho)) < 1e-12);
        // Random unitary channel: output fits a·ρ + (1−a)·tr(ρ)·𝟙/d.
        let out = twirl_channel(&e, lambda, &rho).unwrap();
        let id2 = linalg::eye(2) * Complex64::new(0.5, 0.0);
        let dev_in = &rho - &id2;
        let dev_out = &out - &id2;
        let a = trace_inner(&dev_in, &dev_out) / trace_inner(&dev_in, &dev_in);
        let fit = &dev_in * a + id2;
        assert!(max_abs(&(&out - &fit)) < 1e-9, "not depolarizing-shaped");
        assert!(a.im.abs() < 1e-9);
        // The twirled channel is the same no matter which verified
        // 2-design computes it.
        let other = crate::catalog::builtin_qubit12().ensemble().unwrap();
        let out2 = twirl_channel(&other, |r: &CMat| &v * r * v.adjoint(), &rho).unwrap();
        assert!(max_abs(&(&out - &out2)) < 1e-9);
    }

    #[test]
    fn choi_of_single_identity_is_rank_one() {
        let e = single_identity(2);
        let c = choi_of_twirl(&e).unwrap();
        assert_eq!(c.input_dim, 4);
        assert!((c.matrix.trace().re - 4.0).abs() < 1e-10);
        let (vals, _) = linalg::hermitian_eigen(&c.matrix);
        let nonzero = vals.iter().filter(|v| v.abs() > 1e-9).count();
        assert_eq!(nonzero, 1);
    }

    #[test]
    fn choi_roundtrip_recovers_twirl() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let e = random_ensemble(2, 3, &mut rng);
        let c = choi_of_twirl(&e).unwrap();
        assert!((c.matrix.trace().re - 4.0).abs() < 1e-9);
        let lam = channel_from_choi(&c);
        let m = random_complex_matrix(4, &mut rng);
        let rho = &m * m.adjoint();
        let out1 = lam(&rho);
        let out2 = twirl_with_ensemble(&e, &rho).unwrap();
        assert!(max_abs(&(out1 - out2)) < 1e-10);
    }

    #[test]
    fn choi_uu_norms() {
        for d in [2usize, 3, 4] {
            let c = choi_uu(d).unwrap();
            let norm2 = linalg::frobenius_norm_sq(&c.matrix);
            assert!((norm2 - 2.0).abs() < 1e-10, "‖C_UU‖₂² ≠ 2 at d={d}");
            assert!((c.matrix.trace().re - (d * d) as f64).abs() < 1e-9);
        }
        assert!(choi_uu(9).is_err());
    }

    #[test]
    fn choi_gap_identity_random_ensembles() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for trial in 0..30 {
            let d = if trial % 2 == 0 { 2 } else { 3 };
            let k = rng.gen_range(1..=8);
            let e = random_ensemble(d, k, &mut rng);
            let gap = choi_gap(&e).unwrap();
            let p = frame_potential(&e, 2).unwrap();
            assert!(
                (gap - (p - 2.0)).abs() < 1e-9,
                "identity violated: gap={gap}, P−2={}",
                p - 2.0
            );
        }
    }

    #[test]
    fn choi_gap_known_values() {
        assert!((choi_gap(&single_identity(2)).unwrap() - 14.0).abs() < 1e-9);
        let e = qubit_clifford24();
        assert!(choi_gap(&e).unwrap().abs() < 1e-9);
        assert!(dpro_distance(&e).unwrap().abs() < 1e-9);
    }

    #[test]
    fn dpro_cauchy_schwarz_bound() {
        // tr|Δ| ≤ √(d⁴·‖Δ‖₂²), so D_pro ≤ √(choi_gap).
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..10 {
            let e = random_ensemble(2, 4, &mut rng);
            let dpro = dpro_distance(&e).unwrap();
            let gap = choi_gap(&e).unwrap();
            assert!(dpro <= gap.sqrt() + 1e-9);
        }
    }

    #[test]
    fn bounds_and_cardinality() {
        assert_eq!(lower_bound(2), 10);
        assert_eq!(clifford_bound(2), 12);
        assert_eq!(clifford_bound(9), 6480);
        let r = cardinality_constraints(2, 12);
        assert!(r.pass);
        assert_eq!(r.divisibility_min, 12);
        assert!(!cardinality_constraints(2, 10).pass);
    }

    #[test]
    fn character_report_pauli_group() {
        // The 16-element Pauli group with phases {±1, ±i}.
        let base = paulis().matrices;
        let mut group = Vec::new();
        for k in 0..4 {
            let phase = linalg::I.powu(k);
            for m in &base {
                group.push(m * phase);
            }
        }
        let rep = character_report(&group, 2).unwrap();
        assert_eq!(rep.order, 16);
        assert!((rep.potential - 4.0).abs() < 1e-10);
        assert!(rep.integer_check);
        let rep1 = character_report(&group, 1).unwrap();
        assert!((rep1.potential - 1.0).abs() < 1e-10);
    }

    #[test]
    fn supergroups_have_lower_potential() {
        // Explicit subgroup/supergroup pairs: the Pauli classes sit inside
        // the Clifford classes, and adding elements can only help.
        let paulis = paulis().with_closure_flag();
        let clifford = qubit_clifford24();
        let p_sub = frame_potential_group(&paulis, 2).unwrap();
        let p_super = frame_potential_group(&clifford, 2).unwrap();
        assert!(p_super <= p_sub + 1e-12, "{p_super} > {p_sub}");
        for t in 1..=4 {
            let a = frame_potential_group(&clifford, t).unwrap();
            let b = frame_potential_group(&paulis, t).unwrap();
            assert!(a <= b + 1e-12, "t={t}: supergroup {a} > subgroup {b}");
        }
    }

    #[test]
    fn character_report_rejects_unclosed() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let set = vec![linalg::eye(2), random_unitary(2, &mut rng)];
        assert!(character_report(&set, 2).is_err());
    }

    #[test]
    fn projector_twirl_validation() {
        let split = SymmetrySplit::new(2);
        let rho = linalg::eye(4);
        // Incomplete set.
        assert!(twirl_by_projectors(&[split.p_sym.clone()], &rho).is_err());
        // Non-projector.
        let bad = &split.p_sym * Complex64::new(0.5, 0.0);
        assert!(twirl_by_projectors(&[bad, split.p_anti.clone()], &rho).is_err());
        // Whole-space projector: T(ρ) = tr(ρ)·𝟙/D.
        let out = twirl_by_projectors(&[linalg::eye(4)], &rho).unwrap();
        assert!(max_abs(&(out - linalg::eye(4))) < 1e-12);
    }

    #[test]
    fn averages_agree_across_designs() {
        // Two distinct verified 2-designs give equal averages of random
        // degree-(2,2) monomials in matrix entries.
        let e1 = qubit_clifford24();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let v = random_unitary(2, &mut rng);
        let shifted: Vec<CMat> = e1.matrices.iter().map(|u| &v * u).collect();
        let e2 = UnitaryEnsemble::new("shifted", 2, shifted).unwrap();
        assert!(is_design(&e2, 2, DESIGN_TOL).unwrap().verdict);
        for _ in 0..50 {
            let idx = |rng: &mut ChaCha8Rng| (rng.gen_range(0..2), rng.gen_range(0..2));
            let (a1, a2) = (idx(&mut rng), idx(&mut rng));
            let (b1, b2) = (idx(&mut rng), idx(&mut rng));
            let avg = |mats: &[CMat]| -> Complex64 {
                mats.iter()
                    .map(|u| u[a1] * u[a2] * u[b1].conj() * u[b2].conj())
                    .sum::<Complex64>()
                    / Complex64::new(mats.len() as f64, 0.0)
            };
            let diff = (avg(&e1.matrices) - avg(&e2.matrices)).norm();
            assert!(diff < 1e-9, "monomial averages disagree by {diff}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        /// P is invariant under element reordering and per-element global
        /// phases.
        #[test]
        fn prop_potential_phase_and_permutation_invariance(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = random_ensemble(2, 5, &mut rng);
            let p0 = frame_potential(&e, 2).unwrap();
            let mut mats = e.matrices.clone();
            mats.reverse();
            for (i, m) in mats.iter_mut().enumerate() {
                let theta = (seed as f64 * 0.37 + i as f64).sin();
                *m *= Complex64::new(theta.cos(), theta.sin());
            }
            let e2 = UnitaryEnsemble::new("permuted", 2, mats).unwrap();
            let p1 = frame_potential(&e2, 2).unwrap();
            prop_assert!((p0 - p1).abs() < 1e-12);
        }

        /// Left multiplication by a fixed unitary leaves P unchanged.
        #[test]
        fn prop_potential_left_invariance(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = random_ensemble(3, 4, &mut rng);
            let v = random_unitary(3, &mut rng);
            let mats: Vec<CMat> = e.matrices.iter().map(|u| &v * u).collect();
            let e2 = UnitaryEnsemble::new("left", 3, mats).unwrap();
            let p0 = frame_potential(&e, 2).unwrap();
            let p1 = frame_potential(&e2, 2).unwrap();
            prop_assert!((p0 - p1).abs() < 1e-10);
        }

        /// Potentials never fall below the design target.
        #[test]
        fn prop_potential_lower_bounded(seed in 0u64..1000, t in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = random_ensemble(2, 4, &mut rng);
            let p = frame_potential(&e, t).unwrap();
            prop_assert!(p >= target_potential(t, 2) - 1e-9);
        }
    }
}

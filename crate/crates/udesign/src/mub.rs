//! Stabilizer states, the standard family of mutually unbiased bases in
//! prime-power dimension, entanglement classification of MUB vectors over
//! a fixed bipartition C^d ⊗ C^d, extraction of asymptotic 2-designs, and
//! random-entanglement averages.
//!
//! The q+1 bases of C^q come from the isotropic lines of the phase space
//! F_q²: the lines M_a = {λ(a,1)} for a ∈ F_q plus M_∞ = {λ(1,0)}, with
//! stabilizer projectors ρ_{M,ζ_b} = Σ_m ζ_b(m) w(m)/|M| and characters
//! ζ_b(λ v_a) = χ(bλ). Basis vectors are fixed deterministically: the unit
//! eigenvector of each projector with its first nonzero amplitude made real
//! positive.

use num_complex::Complex64;
use serde::Serialize;

use crate::designs::{self, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::gfield::{Extension, Felt, Field};
use crate::linalg::{self, CMat, CVec, KahanSum};
use crate::weyl::{factoring_iso, weyl_op, PhasePoint, PhaseSpace};

/// An isotropic subspace M ⊂ V together with a character ζ: M → U(1).
#[derive(Debug, Clone)]
pub struct StabilizerSpace {
    pub space: PhaseSpace,
    pub points: Vec<PhasePoint>,
    pub character: Vec<Complex64>,
}

impl StabilizerSpace {
    /// Validating constructor: M must be closed under addition, isotropic
    /// under the symplectic form, and ζ multiplicative.
    pub fn new(
        space: PhaseSpace,
        points: Vec<PhasePoint>,
        character: Vec<Complex64>,
    ) -> Result<StabilizerSpace> {
        if points.len() != character.len() || points.is_empty() {
            return Err(Error::BadCharacter);
        }
        let index_of = |pt: &PhasePoint| -> Option<usize> { points.iter().position(|m| m == pt) };
        for (i, m1) in points.iter().enumerate() {
            for (j, m2) in points.iter().enumerate() {
                let form = space.symplectic_form(m1, m2)?;
                if !space.field.is_zero(&form) {
                    return Err(Error::NotIsotropic);
                }
                let sum = space.add(m1, m2);
                match index_of(&sum) {
                    None => return Err(Error::NotIsotropic),
                    Some(k) => {
                        if (character[i] * character[j] - character[k]).norm() > 1e-12 {
                            return Err(Error::BadCharacter);
                        }
                    }
                }
            }
        }
        Ok(StabilizerSpace {
            space,
            points,
            character,
        })
    }

    /// The line {λ·v} with character ζ(λv) = χ(bλ).
    pub fn line(space: PhaseSpace, direction: &PhasePoint, b: &Felt) -> Result<StabilizerSpace> {
        let field = space.field.clone();
        let mut points = Vec::with_capacity(field.order() as usize);
        let mut character = Vec::with_capacity(field.order() as usize);
        for lambda in field.elements() {
            points.push(space.scale(&lambda, direction));
            character.push(field.additive_character(&field.mul(b, &lambda)));
        }
        StabilizerSpace::new(space, points, character)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// ρ_{M,ζ} = Σ_m ζ(m) w(m) / |M|; trace d^n/|M|, idempotent, and rank one
/// when |M| = d^n.
pub fn stabilizer_state(stab: &StabilizerSpace) -> Result<CMat> {
    let dim = stab.space.dim();
    let mut rho = CMat::zeros(dim, dim);
    for (m, zeta) in stab.points.iter().zip(&stab.character) {
        let w = weyl_op(&stab.space, m);
        let mat = w.op.to_matrix();
        rho += mat * *zeta;
    }
    rho /= Complex64::new(stab.len() as f64, 0.0);
    if linalg::max_abs(&(&rho * &rho - &rho)) > 1e-10 {
        return Err(Error::BadCharacter);
    }
    Ok(rho)
}

/// The stabilizer vector for a maximal isotropic M (|M| = d^n): the unit
/// eigenvector of ρ_{M,ζ}, phase-gauged.
pub fn stabilizer_vector(stab: &StabilizerSpace) -> Result<CVec> {
    if stab.len() != stab.space.dim() {
        return Err(Error::NotIsotropic);
    }
    let rho = stabilizer_state(stab)?;
    let (vals, vecs) = linalg::hermitian_eigen(&rho);
    let top = vals.len() - 1;
    if (vals[top] - 1.0).abs() > 1e-9 {
        return Err(Error::BadCharacter);
    }
    Ok(linalg::fix_vector_phase(
        &vecs.column(top).into_owned(),
        1e-8,
    ))
}

/// Label of one MUB: the line slope a ∈ F_q, or the line at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MubLabel {
    Finite(Felt),
    Infinity,
}

#[derive(Debug, Clone)]
pub struct MubBasis {
    pub label: MubLabel,
    pub vectors: Vec<CVec>,
}

/// A maximal family of q+1 mutually unbiased bases of C^q.
#[derive(Debug, Clone)]
pub struct MubFamily {
    pub field: Field,
    pub bases: Vec<MubBasis>,
}

/// Size cap for MUB construction.
pub const MUB_CAP: u64 = 64;

/// Build the standard maximal MUB family in prime-power dimension q ≤ cap.
/// Both family invariants (within-basis orthonormality and cross-basis
/// unbiasedness at 1e-10) are asserted at build time.
pub fn mub_family(field: &Field) -> Result<MubFamily> {
    mub_family_with_cap(field, MUB_CAP)
}

pub fn mub_family_with_cap(field: &Field, cap: u64) -> Result<MubFamily> {
    let q = field.order();
    if q > cap {
        return Err(Error::FieldSizeCap(q as u128, cap as u128));
    }
    let space = PhaseSpace::new(field, 1);
    let mut bases = Vec::with_capacity(q as usize + 1);
    let mut directions: Vec<(MubLabel, PhasePoint)> = field
        .elements()
        .map(|a| {
            (
                MubLabel::Finite(a.clone()),
                PhasePoint {
                    p: vec![a],
                    q: vec![field.one()],
                },
            )
        })
        .collect();
    directions.push((
        MubLabel::Infinity,
        PhasePoint {
            p: vec![field.one()],
            q: vec![field.zero()],
        },
    ));
    for (label, dir) in directions {
        let mut vectors = Vec::with_capacity(q as usize);
        for b in field.elements() {
            let stab = StabilizerSpace::line(space.clone(), &dir, &b)?;
            vectors.push(stabilizer_vector(&stab)?);
        }
        bases.push(MubBasis { label, vectors });
    }
    let family = MubFamily {
        field: field.clone(),
        bases,
    };
    family.assert_unbiased(1e-10)?;
    Ok(family)
}

impl MubFamily {
    pub fn q(&self) -> usize {
        self.field.order() as usize
    }

    /// Verify |⟨B_b^{(a)}, B_{b'}^{(a')}⟩|² = δ_{bb'} within a basis and
    /// 1/q across bases.
    pub fn assert_unbiased(&self, tol: f64) -> Result<()> {
        let q = self.q() as f64;
        for (ai, a) in self.bases.iter().enumerate() {
            for (bi, b) in self.bases.iter().enumerate() {
                for (vi, v) in a.vectors.iter().enumerate() {
                    for (wi, w) in b.vectors.iter().enumerate() {
                        let ov = v.dotc(w).norm_sqr();
                        let expect = if ai == bi {
                            if vi == wi {
                                1.0
                            } else {
                                0.0
                            }
                        } else {
                            1.0 / q
                        };
                        if (ov - expect).abs() > tol {
                            return Err(Error::BadCharacter);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn all_vectors(&self) -> impl Iterator<Item = &CVec> {
        self.bases.iter().flat_map(|b| b.vectors.iter())
    }
}

/// Entanglement class of one MUB under a fixed bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EntanglementClass {
    MaximallyEntangled,
    Product,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntanglementCounts {
    pub maximally_entangled: usize,
    pub product: usize,
    pub classes: Vec<EntanglementClass>,
}

/// Reshape a vector of C^{d²} (extension-field basis order) into the d×d
/// coefficient matrix of the bipartition C^d ⊗ C^d fixed by the factoring
/// isomorphism of GF(d²)/GF(d).
fn bipartition_matrix(tower: &Extension, v: &CVec) -> CMat {
    let d = tower.base.order() as usize;
    let iso = factoring_iso(tower);
    let mut m = CMat::zeros(d, d);
    for (src, &dst) in iso.iter().enumerate() {
        m[(dst / d, dst % d)] = v[src];
    }
    m
}

const ENTANGLEMENT_TOL: f64 = 1e-9;

/// Classify every basis of a q = d² family as maximally entangled or
/// product. A basis whose vectors fall in neither class is an error: the
/// reduction argument admits no third kind.
pub fn classify_entanglement(family: &MubFamily, tower: &Extension) -> Result<EntanglementCounts> {
    if *tower.ext != family.field || tower.r != 2 {
        return Err(Error::NotExtension);
    }
    let d = tower.base.order() as usize;
    let mixed = linalg::eye(d) / Complex64::new(d as f64, 0.0);
    let mut classes = Vec::with_capacity(family.bases.len());
    for (bi, basis) in family.bases.iter().enumerate() {
        let mut ent = 0usize;
        let mut prod = 0usize;
        for v in &basis.vectors {
            let m = bipartition_matrix(tower, v);
            let reduced = &m * m.adjoint();
            let ent_dev = linalg::frobenius_norm_sq(&(&reduced - &mixed)).sqrt();
            let purity = linalg::frobenius_norm_sq(&(&reduced * &reduced)).sqrt();
            if ent_dev <= ENTANGLEMENT_TOL {
                ent += 1;
            } else if (purity - 1.0).abs() <= ENTANGLEMENT_TOL {
                prod += 1;
            }
        }
        let q = family.q();
        if ent == q {
            classes.push(EntanglementClass::MaximallyEntangled);
        } else if prod == q {
            classes.push(EntanglementClass::Product);
        } else {
            return Err(Error::MixedBasis(bi));
        }
    }
    Ok(EntanglementCounts {
        maximally_entangled: classes
            .iter()
            .filter(|c| **c == EntanglementClass::MaximallyEntangled)
            .count(),
        product: classes
            .iter()
            .filter(|c| **c == EntanglementClass::Product)
            .count(),
        classes,
    })
}

/// The asymptotic 2-design in prime-power dimension d: the inverse of the
/// vec map applied to every vector of every maximally entangled basis of
/// the q = d² MUB family; K = d²(d² − d) unitaries with
/// P₂ = (2d⁴ − d³ − d²)/(d⁴ − d³) → 2.
pub fn asymptotic_design(base: &Field) -> Result<UnitaryEnsemble> {
    let d = base.order() as usize;
    let tower = Extension::new(base, 2)?;
    let family = mub_family(&tower.ext)?;
    let counts = classify_entanglement(&family, &tower)?;
    let mut matrices = Vec::new();
    for (basis, class) in family.bases.iter().zip(&counts.classes) {
        if *class != EntanglementClass::MaximallyEntangled {
            continue;
        }
        for v in &basis.vectors {
            let u = bipartition_matrix(&tower, v) * Complex64::new((d as f64).sqrt(), 0.0);
            let defect = linalg::unitarity_defect(&u);
            if defect > 1e-9 {
                return Err(Error::NotUnitary {
                    index: matrices.len(),
                    defect,
                });
            }
            matrices.push(u);
        }
    }
    UnitaryEnsemble::new(&format!("asymptotic-{d}"), d, matrices)
}

/// Closed form of the asymptotic-design potential at order 2.
pub fn asymptotic_potential_formula(d: usize) -> f64 {
    let d = d as f64;
    (2.0 * d.powi(4) - d.powi(3) - d.powi(2)) / (d.powi(4) - d.powi(3))
}

#[derive(Debug, Clone, Serialize)]
pub struct PurityReport {
    pub d: usize,
    /// ((d²−d)·d^{-1} + (d+1)·1)/(d²+1), counting bases by class.
    pub by_counting: f64,
    /// Direct average of ‖tr₂ ψψ†‖₂² over all (d²+1)·d² MUB vectors.
    pub by_average: f64,
    /// 2d/(d²+1).
    pub closed_form: f64,
}

/// Average reduced purity over the complete q = d² MUB family, by class
/// counting and by direct numerical averaging.
pub fn average_purity_mub(base: &Field) -> Result<PurityReport> {
    let d = base.order() as usize;
    let tower = Extension::new(base, 2)?;
    let family = mub_family(&tower.ext)?;
    classify_entanglement(&family, &tower)?;
    let df = d as f64;
    let by_counting = ((df * df - df) / df + (df + 1.0)) / (df * df + 1.0);
    let mut acc = KahanSum::default();
    let mut count = 0usize;
    for v in family.all_vectors() {
        let m = bipartition_matrix(&tower, v);
        let reduced = &m * m.adjoint();
        acc.add(linalg::frobenius_norm_sq(&reduced));
        count += 1;
    }
    let by_average = acc.value() / count as f64;
    Ok(PurityReport {
        d,
        by_counting,
        by_average,
        closed_form: 2.0 * df / (df * df + 1.0),
    })
}

/// Average reduced purity (1/K) Σ_k ‖tr₂(U_k ψψ† U_k†)‖₂² over a verified
/// 2-design on C^{d²}. Refuses unverified ensembles to keep the
/// Haar-equality contract; the result is ψ-independent and equals
/// 2d/(d²+1).
pub fn page_average(design: &UnitaryEnsemble, d: usize, psi: &CVec, tol: f64) -> Result<f64> {
    if design.dimension != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            got: design.dimension,
        });
    }
    if psi.len() != d * d || (psi.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            got: psi.len(),
        });
    }
    let report = designs::is_design(design, 2, tol)?;
    if !report.verdict {
        return Err(Error::NotVerified {
            t: 2,
            gap: report.gap,
        });
    }
    let mut acc = KahanSum::default();
    for u in &design.matrices {
        let v = u * psi;
        let m = CMat::from_fn(d, d, |i, j| v[i * d + j]);
        let reduced = &m * m.adjoint();
        acc.add(linalg::frobenius_norm_sq(&reduced));
    }
    Ok(acc.value() / design.len() as f64)
}

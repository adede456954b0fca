//! Discrete phase space V = F_d^n × F_d^n, shift/boost operators, Weyl
//! (generalized Pauli) operators, commutation phases, and the tensor
//! factoring of Weyl operators along a field extension.
//!
//! Weyl operators are generalized permutation matrices; they are kept in
//! that form so that traces against dense matrices cost O(d^n), which is
//! what makes the large-design verification loops cheap.
//!
//! Phase conventions. For odd characteristic, w(p,q) = χ(−2⁻¹pq)·ẑ(p)x̂(q).
//! For characteristic 2 the inverse of 2 does not exist; we use
//! w(p,q) = i^{Q(p,q)}·ẑ(p)x̂(q) where Q is the Z₄-valued quadratic
//! refinement of the trace form on the line through (p,q). On F_2 this is
//! the familiar i^{pq} and reproduces {𝟙, X, Y, Z} exactly; on any GF(2^m)
//! it makes every Weyl operator an involution and represents each isotropic
//! line exactly (no cocycle phases), which is what the stabilizer and MUB
//! constructions need.

use num_complex::Complex64;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gfield::{Extension, Felt, Field};
use crate::linalg::{self, CMat};

/// The phase space V = F_d^n × F_d^n for n particles with d levels each.
#[derive(Debug, Clone)]
pub struct PhaseSpace {
    pub field: Arc<Field>,
    pub n: usize,
}

/// A point (p, q) ∈ V. Components are length-n vectors over F_d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    pub p: Vec<Felt>,
    pub q: Vec<Felt>,
}

impl PhaseSpace {
    pub fn new(field: &Field, n: usize) -> PhaseSpace {
        assert!(n >= 1);
        PhaseSpace {
            field: Arc::new(field.clone()),
            n,
        }
    }

    /// Hilbert-space dimension d^n.
    pub fn dim(&self) -> usize {
        (self.field.order() as usize).pow(self.n as u32)
    }

    /// Number of phase-space points d^{2n}.
    pub fn point_count(&self) -> usize {
        self.dim() * self.dim()
    }

    pub fn zero_point(&self) -> PhasePoint {
        PhasePoint {
            p: vec![self.field.zero(); self.n],
            q: vec![self.field.zero(); self.n],
        }
    }

    pub fn is_zero(&self, a: &PhasePoint) -> bool {
        a.p.iter().all(|f| self.field.is_zero(f)) && a.q.iter().all(|f| self.field.is_zero(f))
    }

    pub fn add(&self, a: &PhasePoint, b: &PhasePoint) -> PhasePoint {
        PhasePoint {
            p: a.p
                .iter()
                .zip(&b.p)
                .map(|(x, y)| self.field.add(x, y))
                .collect(),
            q: a.q
                .iter()
                .zip(&b.q)
                .map(|(x, y)| self.field.add(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &PhasePoint) -> PhasePoint {
        PhasePoint {
            p: a.p.iter().map(|x| self.field.neg(x)).collect(),
            q: a.q.iter().map(|x| self.field.neg(x)).collect(),
        }
    }

    pub fn scale(&self, lambda: &Felt, a: &PhasePoint) -> PhasePoint {
        PhasePoint {
            p: a.p.iter().map(|x| self.field.mul(lambda, x)).collect(),
            q: a.q.iter().map(|x| self.field.mul(lambda, x)).collect(),
        }
    }

    /// Canonical index of a point; coordinates ordered (p_1..p_n, q_1..q_n),
    /// first coordinate most significant.
    pub fn point_index(&self, a: &PhasePoint) -> usize {
        let d = self.field.order() as usize;
        let mut idx = 0usize;
        for f in a.p.iter().chain(a.q.iter()) {
            idx = idx * d + self.field.index(f);
        }
        idx
    }

    pub fn point_from_index(&self, mut idx: usize) -> PhasePoint {
        let d = self.field.order() as usize;
        let mut coords = vec![self.field.zero(); 2 * self.n];
        for c in coords.iter_mut().rev() {
            *c = self.field.from_index(idx % d);
            idx /= d;
        }
        let q = coords.split_off(self.n);
        PhasePoint { p: coords, q }
    }

    pub fn points(&self) -> impl Iterator<Item = PhasePoint> + '_ {
        (0..self.point_count()).map(|i| self.point_from_index(i))
    }

    /// The 2n coordinate unit points, p-block first.
    pub fn basis_points(&self) -> Vec<PhasePoint> {
        let mut out = Vec::with_capacity(2 * self.n);
        for k in 0..2 * self.n {
            let mut pt = self.zero_point();
            if k < self.n {
                pt.p[k] = self.field.one();
            } else {
                pt.q[k - self.n] = self.field.one();
            }
            out.push(pt);
        }
        out
    }

    /// Symplectic inner product [a, b] = p·q′ − q·p′ ∈ F_d.
    pub fn symplectic_form(&self, a: &PhasePoint, b: &PhasePoint) -> Result<Felt> {
        if a.p.len() != self.n || b.p.len() != self.n {
            return Err(Error::MismatchedSpaces);
        }
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.n {
            let t1 = f.mul(&a.p[i], &b.q[i]);
            let t2 = f.mul(&a.q[i], &b.p[i]);
            acc = f.add(&acc, &f.sub(&t1, &t2));
        }
        Ok(acc)
    }

    /// χ([a, b]): the commutation phase with w(a)w(b) = χ([a,b])·w(b)w(a).
    pub fn commutation_phase(&self, a: &PhasePoint, b: &PhasePoint) -> Result<Complex64> {
        let s = self.symplectic_form(a, b)?;
        Ok(self.field.additive_character(&s))
    }
}

/// A generalized permutation matrix: W|x⟩ = phases[x] · |targets[x]⟩.
#[derive(Debug, Clone)]
pub struct GenPerm {
    pub dim: usize,
    pub targets: Vec<usize>,
    pub phases: Vec<Complex64>,
}

impl GenPerm {
    pub fn identity(dim: usize) -> GenPerm {
        GenPerm {
            dim,
            targets: (0..dim).collect(),
            phases: vec![linalg::ONE; dim],
        }
    }

    pub fn to_matrix(&self) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for x in 0..self.dim {
            m[(self.targets[x], x)] = self.phases[x];
        }
        m
    }

    /// self · other (matrix product order).
    pub fn mul(&self, other: &GenPerm) -> GenPerm {
        let mut targets = vec![0usize; self.dim];
        let mut phases = vec![linalg::ZERO; self.dim];
        for x in 0..self.dim {
            let mid = other.targets[x];
            targets[x] = self.targets[mid];
            phases[x] = other.phases[x] * self.phases[mid];
        }
        GenPerm {
            dim: self.dim,
            targets,
            phases,
        }
    }

    pub fn adjoint(&self) -> GenPerm {
        let mut targets = vec![0usize; self.dim];
        let mut phases = vec![linalg::ZERO; self.dim];
        for x in 0..self.dim {
            let y = self.targets[x];
            targets[y] = x;
            phases[y] = self.phases[x].conj();
        }
        GenPerm {
            dim: self.dim,
            targets,
            phases,
        }
    }

    pub fn scale(&self, z: Complex64) -> GenPerm {
        GenPerm {
            dim: self.dim,
            targets: self.targets.clone(),
            phases: self.phases.iter().map(|&c| c * z).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim)
            .filter(|&x| self.targets[x] == x)
            .map(|x| self.phases[x])
            .sum()
    }

    /// tr(self · M) in O(dim) entry lookups.
    pub fn trace_times(&self, m: &CMat) -> Complex64 {
        (0..self.dim)
            .map(|x| self.phases[x] * m[(x, self.targets[x])])
            .sum()
    }

    /// self · M · self† for a dense M.
    pub fn conjugate_dense(&self, m: &CMat) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for x in 0..self.dim {
            for y in 0..self.dim {
                out[(self.targets[x], self.targets[y])] =
                    self.phases[x] * m[(x, y)] * self.phases[y].conj();
            }
        }
        out
    }

    /// self · M for a dense M (row permutation with phases).
    pub fn mul_dense(&self, m: &CMat) -> CMat {
        let mut out = CMat::zeros(self.dim, m.ncols());
        for x in 0..self.dim {
            for j in 0..m.ncols() {
                out[(self.targets[x], j)] = self.phases[x] * m[(x, j)];
            }
        }
        out
    }

    /// M · self for a dense M (column permutation with phases).
    pub fn dense_mul(&self, m: &CMat) -> CMat {
        let mut out = CMat::zeros(m.nrows(), self.dim);
        for y in 0..self.dim {
            for i in 0..m.nrows() {
                out[(i, y)] = m[(i, self.targets[y])] * self.phases[y];
            }
        }
        out
    }

    pub fn tensor(&self, other: &GenPerm) -> GenPerm {
        let dim = self.dim * other.dim;
        let mut targets = vec![0usize; dim];
        let mut phases = vec![linalg::ZERO; dim];
        for x1 in 0..self.dim {
            for x2 in 0..other.dim {
                let x = x1 * other.dim + x2;
                targets[x] = self.targets[x1] * other.dim + other.targets[x2];
                phases[x] = self.phases[x1] * other.phases[x2];
            }
        }
        GenPerm {
            dim,
            targets,
            phases,
        }
    }
}

/// A Weyl operator: its phase-space label and the unitary it names.
#[derive(Debug, Clone)]
pub struct WeylOperator {
    pub label: PhasePoint,
    pub op: GenPerm,
}

impl WeylOperator {
    pub fn matrix(&self) -> CMat {
        self.op.to_matrix()
    }
}

/// Shift operator x̂(q)|x⟩ = |x + q⟩ on C^d, d = |F|.
pub fn shift_op(field: &Field, q: &Felt) -> GenPerm {
    let d = field.order() as usize;
    let targets = (0..d)
        .map(|x| field.index(&field.add(&field.from_index(x), q)))
        .collect();
    GenPerm {
        dim: d,
        targets,
        phases: vec![linalg::ONE; d],
    }
}

/// Boost operator ẑ(p)|x⟩ = χ(p x)|x⟩ on C^d.
pub fn boost_op(field: &Field, p: &Felt) -> GenPerm {
    let d = field.order() as usize;
    let phases = (0..d)
        .map(|x| field.additive_character(&field.mul(p, &field.from_index(x))))
        .collect();
    GenPerm {
        dim: d,
        targets: (0..d).collect(),
        phases,
    }
}

/// The scalar phase multiplying ẑ(p)x̂(q) in the single-particle Weyl
/// operator.
fn weyl_phase(field: &Field, p: &Felt, q: &Felt) -> Complex64 {
    if field.p != 2 {
        // χ(−2⁻¹ p q)
        let half = field.inv(&field.from_int(2));
        let arg = field.neg(&field.mul(&half, &field.mul(p, q)));
        field.additive_character(&arg)
    } else {
        char2_phase(field, p, q)
    }
}

/// i^{Q(p,q)} for characteristic 2: Q is the Z₄-valued quadratic refinement
/// of λ ↦ Tr(aλ²) on the line through (p,q) = (aq, q), built on the
/// polynomial F_2-basis {x^j}. Satisfies
/// Q(λ+λ′) = Q(λ) + Q(λ′) + 2·Tr(aλλ′) mod 4,
/// which is exactly the condition for w to represent each line without
/// cocycle phases.
fn char2_phase(field: &Field, p: &Felt, q: &Felt) -> Complex64 {
    if field.is_zero(q) {
        return linalg::ONE;
    }
    let a = field.mul(p, &field.inv(q));
    let mut quad: u64 = 0;
    let m = field.m;
    // λ = q with F_2-coordinates c_j; basis vectors are x^j.
    let coords = &q.0;
    let mut basis = Vec::with_capacity(m);
    for j in 0..m {
        basis.push(field.pow(&field.gen_x(), j as u128));
    }
    for j in 0..m {
        if coords[j] == 1 {
            let fj2 = field.mul(&basis[j], &basis[j]);
            quad += field.abs_trace(&field.mul(&a, &fj2));
            for k in (j + 1)..m {
                if coords[k] == 1 {
                    let cross = field.mul(&basis[j], &basis[k]);
                    quad += 2 * field.abs_trace(&field.mul(&a, &cross));
                }
            }
        }
    }
    match quad % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Single-particle Weyl operator w_d(p, q) on C^d.
pub fn weyl_single(field: &Field, p: &Felt, q: &Felt) -> GenPerm {
    let phase = weyl_phase(field, p, q);
    let d = field.order() as usize;
    let mut targets = vec![0usize; d];
    let mut phases = vec![linalg::ZERO; d];
    for x in 0..d {
        let xe = field.from_index(x);
        let shifted = field.add(&xe, q);
        targets[x] = field.index(&shifted);
        phases[x] = phase * field.additive_character(&field.mul(p, &shifted));
    }
    GenPerm {
        dim: d,
        targets,
        phases,
    }
}

/// Weyl operator w_{d,n}(a) for a ∈ V: the tensor product of the
/// single-particle factors.
pub fn weyl_op(space: &PhaseSpace, a: &PhasePoint) -> WeylOperator {
    let mut op = weyl_single(&space.field, &a.p[0], &a.q[0]);
    for i in 1..space.n {
        op = op.tensor(&weyl_single(&space.field, &a.p[i], &a.q[i]));
    }
    WeylOperator {
        label: a.clone(),
        op,
    }
}

/// All d^{2n} Weyl operators, indexed by `PhaseSpace::point_index`.
pub fn weyl_table(space: &PhaseSpace) -> Vec<WeylOperator> {
    space.points().map(|a| weyl_op(space, &a)).collect()
}

/// The cocycle phase c(a,b) defined by w(a)·w(b) = c(a,b)·w(a+b).
pub fn weyl_cocycle(space: &PhaseSpace, a: &PhasePoint, b: &PhasePoint) -> Complex64 {
    let wa = weyl_op(space, a).op;
    let wb = weyl_op(space, b).op;
    let prod = wa.mul(&wb);
    let wsum = weyl_op(space, &space.add(a, b)).op;
    let ratio = prod.phases[0] / wsum.phases[0];
    debug_assert!(
        (0..prod.dim).all(|x| {
            prod.targets[x] == wsum.targets[x]
                && (prod.phases[x] - ratio * wsum.phases[x]).norm() < 1e-10
        }),
        "w(a)w(b) is not proportional to w(a+b)"
    );
    ratio
}

/// Tensor factoring of a single-particle Weyl operator over an extension
/// field: the labels (p_i, q^i) with
/// w_{d^n}(p, q) = w_d(p_1, q^1) ⊗ … ⊗ w_d(p_n, q^n),
/// where p_i are the dual-basis coordinates of p and q^i the basis
/// coordinates of q. Exact for odd characteristic; for characteristic 2 the
/// identity holds up to a fourth root of unity.
pub fn factor_weyl(tower: &Extension, p: &Felt, q: &Felt) -> Vec<(Felt, Felt)> {
    let pi = tower.coords_dual(p);
    let qi = tower.coords(q);
    pi.into_iter().zip(qi).collect()
}

/// The basis permutation realizing C^{d^n} ≅ (C^d)^{⊗n}:
/// |f⟩ ↦ |f^1⟩ ⊗ … ⊗ |f^n⟩ in basis coordinates. Entry k is the tensor
/// index of extension-field basis state k.
pub fn factoring_iso(tower: &Extension) -> Vec<usize> {
    let f = &tower.ext;
    let b = &tower.base;
    let d = b.order() as usize;
    (0..f.order() as usize)
        .map(|idx| {
            let coords = tower.coords(&f.from_index(idx));
            coords.iter().fold(0usize, |acc, c| acc * d + b.index(c))
        })
        .collect()
}

/// The permutation as a unitary matrix mapping C^{d^n} to the tensor basis.
pub fn factoring_iso_matrix(tower: &Extension) -> CMat {
    let iso = factoring_iso(tower);
    let dim = iso.len();
    let mut m = CMat::zeros(dim, dim);
    for (src, &dst) in iso.iter().enumerate() {
        m[(dst, src)] = linalg::ONE;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{distance_up_to_phase, max_abs, unit_phase, unitarity_defect};
    use std::collections::HashMap;

    fn f(p: u64, m: usize) -> Field {
        Field::new(p, m).unwrap()
    }

    fn pauli() -> [CMat; 4] {
        let z = linalg::ZERO;
        let o = linalg::ONE;
        let i = linalg::I;
        [
            CMat::from_row_slice(2, 2, &[o, z, z, o]),
            CMat::from_row_slice(2, 2, &[z, o, o, z]),
            CMat::from_row_slice(2, 2, &[z, -i, i, z]),
            CMat::from_row_slice(2, 2, &[o, z, z, -o]),
        ]
    }

    #[test]
    fn symplectic_form_values() {
        let space = PhaseSpace::new(&f(3, 1), 1);
        for a in space.points() {
            assert!(space.field.is_zero(&space.symplectic_form(&a, &a).unwrap()));
        }
        let a = PhasePoint {
            p: vec![space.field.one()],
            q: vec![space.field.zero()],
        };
        let b = PhasePoint {
            p: vec![space.field.zero()],
            q: vec![space.field.one()],
        };
        assert_eq!(space.symplectic_form(&a, &b).unwrap(), space.field.one());
        // Antisymmetry and bilinearity over all triples of F_3².
        for x in space.points() {
            for y in space.points() {
                let xy = space.symplectic_form(&x, &y).unwrap();
                let yx = space.symplectic_form(&y, &x).unwrap();
                assert_eq!(xy, space.field.neg(&yx));
                for z in space.points() {
                    let lhs = space.symplectic_form(&space.add(&x, &y), &z).unwrap();
                    let rhs = space.field.add(
                        &space.symplectic_form(&x, &z).unwrap(),
                        &space.symplectic_form(&y, &z).unwrap(),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn shift_and_boost_small_cases() {
        let f2 = f(2, 1);
        let id = shift_op(&f2, &f2.zero()).to_matrix();
        assert!(max_abs(&(id - linalg::eye(2))) < 1e-15);
        let x = shift_op(&f2, &f2.one()).to_matrix();
        assert!(max_abs(&(x - &pauli()[1])) < 1e-15);

        let f3 = f(3, 1);
        let z = boost_op(&f3, &f3.one()).to_matrix();
        let mut expect = CMat::zeros(3, 3);
        expect[(0, 0)] = linalg::ONE;
        expect[(1, 1)] = unit_phase(1, 3);
        expect[(2, 2)] = unit_phase(2, 3);
        assert!(max_abs(&(z - expect)) < 1e-14);
    }

    #[test]
    fn qubit_weyls_are_the_pauli_matrices() {
        let space = PhaseSpace::new(&f(2, 1), 1);
        let [id, x, y, z] = pauli();
        let get = |pp: u64, qq: u64| {
            let a = PhasePoint {
                p: vec![space.field.from_int(pp)],
                q: vec![space.field.from_int(qq)],
            };
            weyl_op(&space, &a).matrix()
        };
        assert!(max_abs(&(get(0, 0) - id)) < 1e-15);
        assert!(max_abs(&(get(0, 1) - x)) < 1e-15);
        assert!(max_abs(&(get(1, 0) - z)) < 1e-15);
        // w(1,1) = i·ZX = −Y; the Pauli set is reproduced up to phase.
        assert!(distance_up_to_phase(&get(1, 1), &y) < 1e-15);
    }

    #[test]
    fn weyl_zero_is_identity_and_all_unitary() {
        for field in [f(2, 1), f(3, 1), f(2, 2), f(5, 1), f(3, 2)] {
            let space = PhaseSpace::new(&field, 1);
            let w0 = weyl_op(&space, &space.zero_point()).matrix();
            assert!(max_abs(&(w0 - linalg::eye(space.dim()))) < 1e-14);
            for a in space.points() {
                assert!(unitarity_defect(&weyl_op(&space, &a).matrix()) < 1e-12);
            }
        }
    }

    #[test]
    fn traces_are_delta_at_zero() {
        for (field, n) in [(f(3, 1), 1), (f(2, 2), 1), (f(2, 1), 2), (f(3, 2), 1)] {
            let space = PhaseSpace::new(&field, n);
            for a in space.points() {
                let t = weyl_op(&space, &a).op.trace();
                if space.is_zero(&a) {
                    assert!((t.re - space.dim() as f64).abs() < 1e-10 && t.im.abs() < 1e-10);
                } else {
                    assert!(t.norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn pairwise_orthogonality() {
        // tr(w(a)† w(b)) = d^n δ_ab, exhaustively for all spaces of
        // dimension ≤ 81.
        for (field, n) in [
            (f(2, 1), 1),
            (f(2, 1), 2),
            (f(3, 1), 1),
            (f(2, 2), 1),
            (f(3, 1), 2),
            (f(3, 2), 1),
            (f(2, 3), 1),
            (f(3, 3), 1),
            (f(5, 1), 1),
        ] {
            let space = PhaseSpace::new(&field, n);
            let table = weyl_table(&space);
            for (i, wa) in table.iter().enumerate() {
                let wad = wa.op.adjoint();
                for (j, wb) in table.iter().enumerate() {
                    let t = wad.mul(&wb.op).trace();
                    let expect = if i == j { space.dim() as f64 } else { 0.0 };
                    assert!(
                        (t.re - expect).abs() < 1e-10 && t.im.abs() < 1e-10,
                        "orthogonality failed at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn commutation_phases_match_matrices() {
        for (field, n) in [
            (f(2, 1), 1),
            (f(3, 1), 1),
            (f(2, 2), 1),
            (f(2, 1), 2),
            (f(3, 2), 1),
        ] {
            let space = PhaseSpace::new(&field, n);
            for a in space.points() {
                let wa = weyl_op(&space, &a).op;
                for b in space.points() {
                    let wb = weyl_op(&space, &b).op;
                    let chi = space.commutation_phase(&a, &b).unwrap();
                    let lhs = wa.mul(&wb).to_matrix();
                    let rhs = wb.mul(&wa).to_matrix() * chi;
                    assert!(max_abs(&(lhs - rhs)) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn qutrit_commutation_phase_value() {
        let space = PhaseSpace::new(&f(3, 1), 1);
        let a = PhasePoint {
            p: vec![space.field.one()],
            q: vec![space.field.zero()],
        };
        let b = PhasePoint {
            p: vec![space.field.zero()],
            q: vec![space.field.one()],
        };
        let got = space.commutation_phase(&a, &b).unwrap();
        assert!((got - unit_phase(1, 3)).norm() < 1e-14);
        // d=2: X and Z anticommute.
        let space2 = PhaseSpace::new(&f(2, 1), 1);
        let a2 = PhasePoint {
            p: vec![space2.field.one()],
            q: vec![space2.field.zero()],
        };
        let b2 = PhasePoint {
            p: vec![space2.field.zero()],
            q: vec![space2.field.one()],
        };
        let got2 = space2.commutation_phase(&a2, &b2).unwrap();
        assert!((got2 + 1.0).norm() < 1e-14);
    }

    #[test]
    fn products_are_proportional_to_sums() {
        for (field, n) in [
            (f(2, 1), 1),
            (f(3, 1), 1),
            (f(2, 2), 1),
            (f(3, 3), 1),
            (f(3, 1), 2),
        ] {
            let space = PhaseSpace::new(&field, n);
            if space.dim() > 27 {
                continue;
            }
            let table = weyl_table(&space);
            let pts: Vec<PhasePoint> = space.points().collect();
            for (i, a) in pts.iter().enumerate() {
                for (j, b) in pts.iter().enumerate() {
                    let prod = table[i].op.mul(&table[j].op);
                    let sum_idx = space.point_index(&space.add(a, b));
                    let wsum = &table[sum_idx].op;
                    let c = prod.phases[0] / wsum.phases[0];
                    assert!((c.norm() - 1.0).abs() < 1e-12);
                    for x in 0..prod.dim {
                        assert_eq!(prod.targets[x], wsum.targets[x]);
                        assert!((prod.phases[x] - c * wsum.phases[x]).norm() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn char2_weyls_are_involutions() {
        for field in [f(2, 1), f(2, 2), f(2, 3)] {
            let space = PhaseSpace::new(&field, 1);
            for a in space.points() {
                let w = weyl_op(&space, &a).op;
                let sq = w.mul(&w).to_matrix();
                assert!(max_abs(&(sq - linalg::eye(space.dim()))) < 1e-12);
            }
        }
    }

    #[test]
    fn tensor_factoring_gf9_over_gf3_is_exact() {
        let base = f(3, 1);
        let tower = Extension::new(&base, 2).unwrap();
        let space9 = PhaseSpace::new(&tower.ext, 1);
        let space3 = PhaseSpace::new(&base, 1);
        let iso = factoring_iso_matrix(&tower);
        for p in tower.ext.elements() {
            for q in tower.ext.elements() {
                let big = weyl_op(
                    &space9,
                    &PhasePoint {
                        p: vec![p.clone()],
                        q: vec![q.clone()],
                    },
                )
                .matrix();
                let factors = factor_weyl(&tower, &p, &q);
                let mut tensor = weyl_single(&space3.field, &factors[0].0, &factors[0].1);
                tensor = tensor.tensor(&weyl_single(&space3.field, &factors[1].0, &factors[1].1));
                let lhs = &iso * big * iso.adjoint();
                assert!(max_abs(&(lhs - tensor.to_matrix())) < 1e-12);
            }
        }
    }

    #[test]
    fn tensor_factoring_gf4_over_gf2_up_to_phase() {
        let base = f(2, 1);
        let tower = Extension::new(&base, 2).unwrap();
        let space4 = PhaseSpace::new(&tower.ext, 1);
        let iso = factoring_iso_matrix(&tower);
        for p in tower.ext.elements() {
            for q in tower.ext.elements() {
                let big = weyl_op(
                    &space4,
                    &PhasePoint {
                        p: vec![p.clone()],
                        q: vec![q.clone()],
                    },
                )
                .matrix();
                let factors = factor_weyl(&tower, &p, &q);
                let mut tensor = weyl_single(&base, &factors[0].0, &factors[0].1);
                tensor = tensor.tensor(&weyl_single(&base, &factors[1].0, &factors[1].1));
                let lhs = &iso * big * iso.adjoint();
                let rhs = tensor.to_matrix();
                assert!(distance_up_to_phase(&lhs, &rhs) < 1e-12);
                // The mismatch phase is a fourth root of unity.
                let ratio = lhs[(tensor.targets[0], 0)] / rhs[(tensor.targets[0], 0)];
                assert!((ratio.powi(4) - 1.0).norm() < 1e-10);
            }
        }
    }

    /// Projective dedup key for a generalized permutation matrix: the
    /// permutation plus phases normalized by the first column's phase.
    fn genperm_phase_key(op: &GenPerm) -> (Vec<usize>, Vec<(i64, i64)>) {
        let gauge = op.phases[0].conj() / op.phases[0].norm();
        let phases = op
            .phases
            .iter()
            .map(|z| {
                let w = z * gauge;
                ((w.re * 1e8).round() as i64, (w.im * 1e8).round() as i64)
            })
            .collect();
        (op.targets.clone(), phases)
    }

    /// Relabel a genperm through a basis permutation: P·W·P†.
    fn permute_genperm(op: &GenPerm, iso: &[usize]) -> GenPerm {
        let dim = op.dim;
        let mut targets = vec![0usize; dim];
        let mut phases = vec![linalg::ZERO; dim];
        for x in 0..dim {
            targets[iso[x]] = iso[op.targets[x]];
            phases[iso[x]] = op.phases[x];
        }
        GenPerm {
            dim,
            targets,
            phases,
        }
    }

    #[test]
    fn weyl_sets_coincide_across_factorizations() {
        // W_{p^m, n} = W_{p^{m'}, n'} up to phases whenever mn = m'n',
        // for every prime power p^s ≤ 81 with a nontrivial factorization.
        for (p, m, n) in [
            (2u64, 1usize, 2usize),
            (2, 1, 3),
            (2, 2, 2),
            (2, 1, 4),
            (2, 1, 5),
            (2, 2, 3),
            (2, 1, 6),
            (3, 1, 2),
            (3, 1, 3),
            (3, 1, 4),
            (3, 2, 2),
            (5, 1, 2),
            (7, 1, 2),
        ] {
            let base = f(p, m);
            let tower = Extension::new(&base, n).unwrap();
            let space_big = PhaseSpace::new(&tower.ext, 1);
            let space_multi = PhaseSpace::new(&base, n);
            let iso = factoring_iso(&tower);
            let mut set_big: HashMap<(Vec<usize>, Vec<(i64, i64)>), usize> = HashMap::new();
            for a in space_big.points() {
                let op = permute_genperm(&weyl_op(&space_big, &a).op, &iso);
                *set_big.entry(genperm_phase_key(&op)).or_insert(0) += 1;
            }
            let mut matched = 0usize;
            for a in space_multi.points() {
                let op = weyl_op(&space_multi, &a).op;
                assert!(
                    set_big.contains_key(&genperm_phase_key(&op)),
                    "p={p}, m={m}, n={n}: multi-particle Weyl missing"
                );
                matched += 1;
            }
            assert_eq!(matched, space_big.point_count());
            assert_eq!(set_big.len(), space_big.point_count());
        }
    }

    #[test]
    fn genperm_algebra_matches_dense() {
        let field = f(3, 1);
        let space = PhaseSpace::new(&field, 1);
        let a = space.point_from_index(5);
        let b = space.point_from_index(7);
        let wa = weyl_op(&space, &a).op;
        let wb = weyl_op(&space, &b).op;
        let dense = wa.to_matrix() * wb.to_matrix();
        assert!(max_abs(&(wa.mul(&wb).to_matrix() - &dense)) < 1e-13);
        assert!(max_abs(&(wa.adjoint().to_matrix() - wa.to_matrix().adjoint())) < 1e-13);
        let m = crate::linalg::random_complex_matrix(3, &mut rand::thread_rng());
        let t1 = wa.trace_times(&m);
        let t2 = (wa.to_matrix() * &m).trace();
        assert!((t1 - t2).norm() < 1e-12);
        let c1 = wa.conjugate_dense(&m);
        let c2 = wa.to_matrix() * &m * wa.to_matrix().adjoint();
        assert!(max_abs(&(c1 - c2)) < 1e-12);
    }
}

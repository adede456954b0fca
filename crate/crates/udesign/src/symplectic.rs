//! Symplectic matrices over F_d, breadth-first group closure, transitivity
//! tests, metaplectic representation synthesis, and assembly of
//! Jacobi/Clifford designs and twirl channels.
//!
//! The standard symplectic form matrix J pairs the coordinates
//! (p_1..p_n, q_1..q_n): [a, b] = aᵀ J b = p·q′ − q·p′.
//!
//! Metaplectic unitaries μ(S) are synthesized by phase-corrected averaging
//! over the Weyl group: the plain average Σ_a w(Sa)·X₀·w(a)†/|V| projects
//! onto the intertwiner line whenever the Weyl cocycle is S-invariant
//! (always true in odd characteristic); in characteristic 2 it is not, and
//! each term is weighted by a phase ε̄(a) built from the cocycle ratio
//! c(Sa,Sb)/c(a,b) so that the corrected rep a ↦ ε(a)w(Sa) has the same
//! cocycle as w itself. μ(S) is only defined up to a global phase, which no
//! downstream quantity depends on.

use num_complex::Complex64;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gfield::{Felt, Field};
use crate::linalg::{self, CMat, KahanSum};
use crate::weyl::{weyl_op, PhasePoint, PhaseSpace, WeylOperator};

/// A square matrix over a finite field, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    pub field: Arc<Field>,
    pub size: usize,
    pub entries: Vec<Felt>,
}

impl FieldMatrix {
    pub fn from_rows(field: &Field, rows: &[&[u64]]) -> FieldMatrix {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for r in rows {
            assert_eq!(r.len(), size);
            for &v in r.iter() {
                entries.push(field.from_int(v));
            }
        }
        FieldMatrix {
            field: Arc::new(field.clone()),
            size,
            entries,
        }
    }

    pub fn identity(field: &Field, size: usize) -> FieldMatrix {
        let mut entries = vec![field.zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = field.one();
        }
        FieldMatrix {
            field: Arc::new(field.clone()),
            size,
            entries,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Felt {
        &self.entries[i * self.size + j]
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        let f = &self.field;
        let n = self.size;
        let mut entries = vec![f.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(a, other.get(k, j));
                    entries[i * n + j] = f.add(&entries[i * n + j], &t);
                }
            }
        }
        FieldMatrix {
            field: self.field.clone(),
            size: n,
            entries,
        }
    }

    /// Dedup key: canonical element indices.
    pub fn key(&self) -> Vec<u64> {
        self.entries
            .iter()
            .map(|e| self.field.index(e) as u64)
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        let f = &self.field;
        let n = self.size;
        let mut a: Vec<Vec<Felt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !f.is_zero(&a[r][col])) {
                Some(r) => r,
                None => return false,
            };
            a.swap(col, pivot);
            let pinv = f.inv(&a[col][col]);
            for j in 0..n {
                a[col][j] = f.mul(&a[col][j], &pinv);
            }
            for r in (col + 1)..n {
                if !f.is_zero(&a[r][col]) {
                    let factor = a[r][col].clone();
                    for j in 0..n {
                        let t = f.mul(&factor, &a[col][j]);
                        a[r][j] = f.sub(&a[r][j], &t);
                    }
                }
            }
        }
        true
    }

    /// S J Sᵀ = J for the standard form pairing (p-block, q-block).
    pub fn is_symplectic(&self) -> bool {
        let f = &self.field;
        let size = self.size;
        if size % 2 != 0 {
            return false;
        }
        let n = size / 2;
        let j_at = |r: usize, c: usize| -> Felt {
            if c == r + n {
                f.one()
            } else if r == c + n {
                f.neg(&f.one())
            } else {
                f.zero()
            }
        };
        // (S J Sᵀ)_{rc} = Σ_{k,l} S_{rk} J_{kl} S_{cl}
        for r in 0..size {
            for c in 0..size {
                let mut acc = f.zero();
                for k in 0..size {
                    if f.is_zero(self.get(r, k)) {
                        continue;
                    }
                    // J has a single nonzero per row k.
                    let (l, v) = if k < n {
                        (k + n, f.one())
                    } else {
                        (k - n, f.neg(&f.one()))
                    };
                    let t = f.mul(self.get(r, k), &f.mul(&v, self.get(c, l)));
                    acc = f.add(&acc, &t);
                }
                if acc != j_at(r, c) {
                    return false;
                }
            }
        }
        true
    }

    /// Apply to a phase-space point, coordinates stacked (p, q).
    pub fn apply_point(&self, space: &PhaseSpace, a: &PhasePoint) -> PhasePoint {
        let f = &self.field;
        let n = space.n;
        debug_assert_eq!(self.size, 2 * n);
        let coord = |k: usize| -> &Felt {
            if k < n {
                &a.p[k]
            } else {
                &a.q[k - n]
            }
        };
        let mut out = vec![f.zero(); 2 * n];
        for (i, o) in out.iter_mut().enumerate() {
            for k in 0..2 * n {
                let t = f.mul(self.get(i, k), coord(k));
                *o = f.add(o, &t);
            }
        }
        let q = out.split_off(n);
        PhasePoint { p: out, q }
    }

    /// Conjugate by the coordinate permutation `perm` (new[i][j] =
    /// old[perm[i]][perm[j]]).
    pub fn permute_coords(&self, perm: &[usize]) -> FieldMatrix {
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(perm[i], perm[j]).clone());
            }
        }
        FieldMatrix {
            field: self.field.clone(),
            size: n,
            entries,
        }
    }
}

/// A finite matrix group materialized from generators.
#[derive(Debug, Clone)]
pub struct GroupClosure<T> {
    pub elements: Vec<T>,
    pub generators: Vec<T>,
    pub cap: usize,
}

impl<T> GroupClosure<T> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub const CLOSURE_CAP: usize = 1_000_000;

/// Breadth-first closure of invertible matrices over a finite field under
/// multiplication; deterministic element order.
pub fn group_closure_field(
    generators: &[FieldMatrix],
    cap: usize,
) -> Result<GroupClosure<FieldMatrix>> {
    for (i, g) in generators.iter().enumerate() {
        if !g.is_invertible() {
            return Err(Error::NonInvertibleGenerator(i));
        }
    }
    let field = generators[0].field.clone();
    let size = generators[0].size;
    let id = FieldMatrix::identity(&field, size);
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut elements = vec![id.clone()];
    seen.insert(id.key(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for g in generators {
            let prod = elements[idx].mul(g);
            if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(prod.key()) {
                if elements.len() >= cap {
                    return Err(Error::ClosureCap(cap));
                }
                slot.insert(elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
            }
        }
    }
    Ok(GroupClosure {
        elements,
        generators: generators.to_vec(),
        cap,
    })
}

/// Dedup key for complex matrices: entries rounded to 8 decimals, after an
/// optional canonical phase fix (first entry of modulus > 1e-6 made real
/// positive) when comparing up to a global phase.
pub fn complex_key(m: &CMat, quotient_phase: bool) -> Vec<(i64, i64)> {
    let fixed = if quotient_phase {
        linalg::fix_global_phase(m, 1e-6)
    } else {
        m.clone()
    };
    fixed
        .iter()
        .map(|z| ((z.re * 1e8).round() as i64, (z.im * 1e8).round() as i64))
        .collect()
}

/// Breadth-first closure of complex matrices, deduplicated by rounded
/// canonical form; set `quotient_phase` to identify elements differing by a
/// global phase.
pub fn group_closure_complex(
    generators: &[CMat],
    cap: usize,
    quotient_phase: bool,
) -> Result<GroupClosure<CMat>> {
    for (i, g) in generators.iter().enumerate() {
        let det = g.clone().lu().determinant();
        if det.norm() < 1e-9 {
            return Err(Error::NonInvertibleGenerator(i));
        }
    }
    let n = generators[0].nrows();
    let id = linalg::eye(n);
    let mut seen: HashMap<Vec<(i64, i64)>, usize> = HashMap::new();
    let mut elements = vec![id.clone()];
    seen.insert(complex_key(&id, quotient_phase), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for g in generators {
            let prod = &elements[idx] * g;
            let key = complex_key(&prod, quotient_phase);
            if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
                if elements.len() >= cap {
                    return Err(Error::ClosureCap(cap));
                }
                slot.insert(elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
            }
        }
    }
    Ok(GroupClosure {
        elements,
        generators: generators.to_vec(),
        cap,
    })
}

/// Orbit decomposition of V∖{0} under the matrix action; transitive iff a
/// single orbit of size |V| − 1.
pub fn is_transitive_on_nonzero(group: &[FieldMatrix], space: &PhaseSpace) -> (bool, Vec<usize>) {
    let total = space.point_count();
    let mut seen = vec![false; total];
    seen[0] = true; // skip the origin
    let mut orbit_sizes = Vec::new();
    for start in 1..total {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let pt = space.point_from_index(orbit[head]);
            head += 1;
            for g in group {
                let img = space.point_index(&g.apply_point(space, &pt));
                if !seen[img] {
                    seen[img] = true;
                    orbit.push(img);
                }
            }
        }
        orbit_sizes.push(orbit.len());
    }
    (
        orbit_sizes.len() == 1 && orbit_sizes[0] == total - 1,
        orbit_sizes,
    )
}

/// |Sp(p, n)| = p^{n²} · Π_{i=0}^{n−1} (p^{2(n−i)} − 1) for prime p.
pub fn symplectic_order(p: u64, n: u32) -> u128 {
    let p = p as u128;
    let mut order = p.pow(n * n);
    for i in 0..n {
        order *= p.pow(2 * (n - i)) - 1;
    }
    order
}

/// |Sp(q, 1)| = q(q² − 1), valid for any prime power q.
pub fn sp1_order(q: u64) -> u128 {
    let q = q as u128;
    q * (q * q - 1)
}

/// All of SL(2, q) = Sp(q, 1) by direct enumeration; q(q²−1) elements.
pub fn sl2(field: &Field) -> Vec<FieldMatrix> {
    let q = field.order() as usize;
    let mut out = Vec::with_capacity(q * (q * q - 1));
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let (fa, fb) = (field.from_index(a), field.from_index(b));
                    let (fc, fd) = (field.from_index(c), field.from_index(d));
                    let det = field.sub(&field.mul(&fa, &fd), &field.mul(&fb, &fc));
                    if det == field.one() {
                        out.push(FieldMatrix {
                            field: Arc::new(field.clone()),
                            size: 2,
                            entries: vec![fa, fb, fc, fd],
                        });
                    }
                }
            }
        }
    }
    out
}

/// All of Sp(2n, F_p) by enumeration; feasible only for p^{4n²} small
/// (used for Sp(4, F_2), 65 536 candidates).
pub fn symplectic_group_enumerated(field: &Field, n: usize) -> Result<Vec<FieldMatrix>> {
    let q = field.order() as usize;
    let size = 2 * n;
    let cells = size * size;
    let total = (q as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
    if total > 1 << 20 {
        return Err(Error::ClosureCap(1 << 20));
    }
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut entries = Vec::with_capacity(cells);
        for _ in 0..cells {
            entries.push(field.from_index((c % q as u128) as usize));
            c /= q as u128;
        }
        let m = FieldMatrix {
            field: Arc::new(field.clone()),
            size,
            entries,
        };
        if m.is_symplectic() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Cached Weyl-operator table for a phase space, with O(1) cocycle lookups.
pub struct WeylFrame {
    pub space: PhaseSpace,
    pub ops: Vec<WeylOperator>,
    points: Vec<PhasePoint>,
}

impl WeylFrame {
    pub fn new(space: PhaseSpace) -> WeylFrame {
        let points: Vec<PhasePoint> = space.points().collect();
        let ops = points.iter().map(|a| weyl_op(&space, a)).collect();
        WeylFrame { space, ops, points }
    }

    pub fn point(&self, idx: usize) -> &PhasePoint {
        &self.points[idx]
    }

    pub fn add_index(&self, i: usize, j: usize) -> usize {
        self.space
            .point_index(&self.space.add(&self.points[i], &self.points[j]))
    }

    /// Cocycle phase c(a_i, a_j) with w(a_i)w(a_j) = c·w(a_i + a_j),
    /// evaluated from the cached operators at a single basis index.
    pub fn cocycle(&self, i: usize, j: usize) -> Complex64 {
        let wi = &self.ops[i].op;
        let wj = &self.ops[j].op;
        let wk = &self.ops[self.add_index(i, j)].op;
        let prod_phase0 = wj.phases[0] * wi.phases[wj.targets[0]];
        prod_phase0 / wk.phases[0]
    }
}

/// A metaplectic unitary: μ(S) w(a) μ(S)† = w(Sa) up to a phase.
pub struct Metaplectic {
    pub s: FieldMatrix,
    pub matrix: CMat,
}

const METAPLECTIC_RETRIES: usize = 16;

/// Synthesize μ(S) by phase-corrected Weyl averaging (see module docs).
pub fn metaplectic(frame: &WeylFrame, s: &FieldMatrix) -> Result<Metaplectic> {
    let space = &frame.space;
    let vcount = space.point_count();
    let dim = space.dim();

    // Image indices under S.
    let s_of: Vec<usize> = (0..vcount)
        .map(|i| space.point_index(&s.apply_point(space, frame.point(i))))
        .collect();
    let mut hit = vec![false; vcount];
    s_of.iter().for_each(|&i| hit[i] = true);
    if hit.iter().any(|&h| !h) {
        return Err(Error::NotSymplectic);
    }

    let delta = |i: usize, j: usize| -> Complex64 {
        frame.cocycle(s_of[i], s_of[j]) * frame.cocycle(i, j).conj()
    };

    // ε(a): path extension over the base-p digits of the point index,
    // ε = 1 on the digit basis. ε satisfies ε(a)ε(b)δ(a,b) = ε(a+b).
    let p = space.field.p as usize;
    let mut eps = vec![linalg::ONE; vcount];
    let mut digit_pos = Vec::new();
    {
        let mut t = 1usize;
        while t < vcount {
            digit_pos.push(t);
            t *= p;
        }
    }
    for idx in 1..vcount {
        let t = digit_pos
            .iter()
            .rposition(|&pw| idx / pw % p != 0)
            .expect("nonzero index has a nonzero digit");
        let pw = digit_pos[t];
        let c = idx / pw % p;
        let single = c * pw;
        if idx == single {
            if c > 1 {
                let prev = (c - 1) * pw;
                eps[idx] = eps[prev] * eps[pw] * delta(prev, pw);
            }
        } else {
            let prev = idx - single;
            eps[idx] = eps[prev] * eps[single] * delta(prev, single);
        }
    }
    // Global consistency; failure means S is not symplectic for this form.
    for i in 0..vcount {
        for j in 0..vcount {
            let lhs = eps[i] * eps[j] * delta(i, j);
            if (lhs - eps[frame.add_index(i, j)]).norm() > 1e-9 {
                return Err(Error::NotSymplectic);
            }
        }
    }

    // Seed derived from S so builds are reproducible.
    let seed = s.key().iter().fold(0x9e3779b97f4a7c15u64, |acc, &k| {
        acc.wrapping_mul(0x100000001b3).wrapping_add(k)
    });

    for attempt in 0..METAPLECTIC_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let x0 = linalg::random_complex_matrix(dim, &mut rng);
        let mut x = CMat::zeros(dim, dim);
        for i in 0..vcount {
            let term = frame.ops[s_of[i]].op.mul_dense(&x0);
            let term = frame.ops[i].op.adjoint().dense_mul(&term);
            x += term * eps[i].conj();
        }
        x /= Complex64::new(vcount as f64, 0.0);
        let gram = &x * x.adjoint();
        let c = gram.trace().re / dim as f64;
        if c < 1e-6 {
            continue;
        }
        if linalg::max_abs(&(gram / Complex64::new(c, 0.0) - linalg::eye(dim))) > 1e-8 {
            continue;
        }
        let mu = x / Complex64::new(c.sqrt(), 0.0);
        // Conjugation residual on a basis of V, up to the per-point phase.
        for e in space.basis_points() {
            let ei = space.point_index(&e);
            let lhs = frame.ops[ei].op.dense_mul(&mu); // μ·w(e)
            let rhs = frame.ops[s_of[ei]].op.mul_dense(&mu); // w(Se)·μ
            if linalg::distance_up_to_phase(&lhs, &rhs) > 1e-9 {
                return Err(Error::NotSymplectic);
            }
        }
        return Ok(Metaplectic {
            s: s.clone(),
            matrix: mu,
        });
    }
    Err(Error::MetaplecticDegenerate(METAPLECTIC_RETRIES))
}

/// The Jacobi design {w(v)·μ(S) | v ∈ V, S ∈ G} of K = d^{2n}·|G|
/// unitaries, held in streaming form: only the |G| metaplectic matrices are
/// materialized, never all K elements.
pub struct JacobiDesign {
    pub frame: WeylFrame,
    pub group: Vec<FieldMatrix>,
    pub mus: Vec<CMat>,
    pub transitive: bool,
    pub orbit_sizes: Vec<usize>,
}

impl JacobiDesign {
    /// Build from a closed symplectic subgroup. A non-transitive G produces
    /// the ensemble anyway (verification will then fail); the flag records
    /// the orbit check.
    pub fn new(field: &Field, n: usize, group: Vec<FieldMatrix>) -> Result<JacobiDesign> {
        let space = PhaseSpace::new(field, n);
        let (transitive, orbit_sizes) = is_transitive_on_nonzero(&group, &space);
        let frame = WeylFrame::new(space);
        let mus = group
            .iter()
            .map(|s| metaplectic(&frame, s).map(|m| m.matrix))
            .collect::<Result<Vec<_>>>()?;
        Ok(JacobiDesign {
            frame,
            group,
            mus,
            transitive,
            orbit_sizes,
        })
    }

    pub fn len(&self) -> usize {
        self.frame.space.point_count() * self.group.len()
    }

    pub fn is_empty(&self) -> bool {
        self.group.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.frame.space.dim()
    }

    /// Traces of all K elements, streamed in O(dim) per element.
    pub fn traces(&self) -> Vec<Complex64> {
        let vcount = self.frame.space.point_count();
        let mut out = Vec::with_capacity(self.len());
        for mu in &self.mus {
            for v in 0..vcount {
                out.push(self.frame.ops[v].op.trace_times(mu));
            }
        }
        out
    }

    /// Group-formula frame potential Σ_k |tr U_k|^{2t} / K. Valid because
    /// the design is closed under multiplication up to global phases.
    pub fn frame_potential(&self, t: usize) -> f64 {
        let mut acc = KahanSum::default();
        for tr in self.traces() {
            acc.add(tr.norm_sqr().powi(t as i32));
        }
        acc.value() / self.len() as f64
    }

    /// Visit every unitary w(v)·μ(S) in a fixed order.
    pub fn for_each_unitary<F: FnMut(CMat)>(&self, mut f: F) {
        let vcount = self.frame.space.point_count();
        for mu in &self.mus {
            for v in 0..vcount {
                f(self.frame.ops[v].op.mul_dense(mu));
            }
        }
    }

    pub fn materialize(&self) -> Vec<CMat> {
        let mut out = Vec::with_capacity(self.len());
        self.for_each_unitary(|u| out.push(u));
        out
    }
}

/// Weyl twirl channel: T_W(ρ) = d^{−2n} Σ_a (w(a)⊗w(a)) ρ (w(a)⊗w(a))†.
/// Only the "Weyl-diagonal" components ρ_{b,−b} w(b)⊗w(−b) survive.
pub fn weyl_twirl(frame: &WeylFrame, rho: &CMat) -> Result<CMat> {
    let dim = frame.space.dim();
    let expect = dim * dim;
    if rho.nrows() != expect || rho.ncols() != expect {
        return Err(Error::DimensionMismatch {
            expected: expect,
            got: rho.nrows(),
        });
    }
    let mut out = CMat::zeros(expect, expect);
    for w in &frame.ops {
        let ww = w.op.tensor(&w.op);
        out += ww.conjugate_dense(rho);
    }
    Ok(out / Complex64::new(frame.space.point_count() as f64, 0.0))
}

/// Clifford twirl channel for a transitive symplectic subgroup G:
/// T(ρ) = α·𝟙 + β̃·Σ_{b≠0} w(b)⊗w(−b) with α = ρ_{0,0} and
/// β̃ = Σ_{b≠0} ρ_{b,−b} / (|V|−1), the Weyl-basis coefficients of ρ.
pub fn clifford_twirl(frame: &WeylFrame, rho: &CMat, group: &[FieldMatrix]) -> Result<CMat> {
    let space = &frame.space;
    let (transitive, _) = is_transitive_on_nonzero(group, space);
    if !transitive {
        return Err(Error::NotTransitive);
    }
    let dim = space.dim();
    let expect = dim * dim;
    if rho.nrows() != expect || rho.ncols() != expect {
        return Err(Error::DimensionMismatch {
            expected: expect,
            got: rho.nrows(),
        });
    }
    let vcount = space.point_count();
    // ρ_{b,−b} = tr[(w(b)⊗w(−b))† ρ] / dim².
    let coeff = |b: usize| -> Complex64 {
        let nb = space.point_index(&space.neg(frame.point(b)));
        let wb = frame.ops[b].op.tensor(&frame.ops[nb].op);
        wb.adjoint().trace_times(rho) / Complex64::new(expect as f64, 0.0)
    };
    let alpha = coeff(0);
    let mut beta = linalg::ZERO;
    for b in 1..vcount {
        beta += coeff(b);
    }
    beta /= Complex64::new((vcount - 1) as f64, 0.0);
    let mut out = linalg::eye(expect) * alpha;
    for b in 1..vcount {
        let nb = space.point_index(&space.neg(frame.point(b)));
        let wb = frame.ops[b].op.tensor(&frame.ops[nb].op);
        out += wb.to_matrix() * beta;
    }
    Ok(out)
}

/// The six generators of the order-160 subgroup of Sp(4, F_3), exactly as
/// tabulated; their coordinate convention pairs (1,4) and (2,3).
pub fn table2_generators_printed() -> Vec<FieldMatrix> {
    let f3 = Field::new(3, 1).unwrap();
    let rows: [[[u64; 4]; 4]; 6] = [
        [[2, 2, 2, 0], [1, 2, 2, 0], [1, 2, 0, 2], [0, 0, 1, 1]],
        [[0, 2, 1, 0], [0, 0, 0, 2], [1, 0, 0, 2], [0, 2, 0, 0]],
        [[0, 2, 0, 0], [2, 0, 0, 0], [2, 0, 0, 2], [0, 1, 2, 0]],
        [[0, 1, 1, 0], [1, 0, 0, 2], [0, 0, 0, 1], [0, 0, 1, 0]],
        [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]],
        [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]],
    ];
    rows.iter()
        .map(|m| {
            let r: Vec<&[u64]> = m.iter().map(|row| row.as_slice()).collect();
            FieldMatrix::from_rows(&f3, &r)
        })
        .collect()
}

/// The same generators conjugated to the standard (p_1, p_2, q_1, q_2)
/// coordinate order, in which S J Sᵀ = J for the block form J.
pub fn table2_generators() -> Vec<FieldMatrix> {
    // Printed coordinates are (p_1, p_2, q_2, q_1): swap the last two.
    let perm = [0usize, 1, 3, 2];
    table2_generators_printed()
        .into_iter()
        .map(|m| m.permute_coords(&perm))
        .collect()
}

//! Exact arithmetic in finite fields GF(p^m), extensions GF(p^{mr})/GF(p^m),
//! relative traces, dual bases, and additive characters.
//!
//! Elements are dense coefficient vectors over GF(p) in the polynomial
//! representation; all fields are desk-scale (order capped at 2^20 by
//! default), so table-free arithmetic keeps everything auditable. The
//! modulus of GF(p^m) is the lexicographically smallest monic irreducible
//! polynomial of degree m, which makes serialized elements portable.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::unit_phase;

/// Default cap on the field order p^m.
pub const FIELD_SIZE_CAP: u128 = 1 << 20;

/// A finite field GF(p^m): characteristic, degree, and the monic modulus
/// polynomial (coefficient list c_0..c_m, c_m = 1) used for reduction.
///
/// `Field` doubles as the serializable spec `{p, m, modulus}` used in
/// design files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Field {
    pub p: u64,
    pub m: usize,
    pub modulus: Vec<u64>,
}

/// Element of GF(p^m) as a length-m coefficient vector over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Felt(pub Vec<u64>);

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over GF(p) on little-endian coefficient vectors,
/// used only for modulus selection.
fn poly_mul_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while a.len() > db {
        let da = a.len() - 1;
        let coef = (a[da] * lead_inv) % p;
        if coef != 0 {
            for k in 0..=db {
                let idx = da - db + k;
                a[idx] = (a[idx] + p - (coef * b[k]) % p) % p;
            }
        }
        a.pop();
        while a.len() > db && *a.last().unwrap() == 0 {
            a.pop();
        }
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime and small; Fermat is fine.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Irreducibility over GF(p) by trial division against all monic divisors
/// of degree ≤ deg/2.
fn poly_is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    let mut divisor = vec![0u64; 2];
    for d in 1..=deg / 2 {
        divisor.resize(d + 1, 0);
        // Enumerate all monic degree-d polynomials.
        let count = (p as u128).pow(d as u32);
        for code in 0..count {
            let mut c = code;
            for k in 0..d {
                divisor[k] = (c % p as u128) as u64;
                c /= p as u128;
            }
            divisor[d] = 1;
            let rem = poly_rem(poly.to_vec(), &divisor, p);
            if rem.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Build GF(p^m) with the lexicographically smallest monic irreducible
    /// modulus (smallest when the coefficient vector c_0..c_{m-1} is read as
    /// a base-p integer).
    pub fn new(p: u64, m: usize) -> Result<Field> {
        Self::with_cap(p, m, FIELD_SIZE_CAP)
    }

    pub fn with_cap(p: u64, m: usize, cap: u128) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidDegree);
        }
        let order = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if order > cap || order < 2 {
            return Err(Error::FieldSizeCap(order, cap));
        }
        if m == 1 {
            // Prime field; modulus x - 0 is never used for reduction.
            return Ok(Field {
                p,
                m,
                modulus: vec![0, 1],
            });
        }
        let count = (p as u128).pow(m as u32);
        let mut modulus = vec![0u64; m + 1];
        for code in 0..count {
            let mut c = code;
            for k in 0..m {
                modulus[k] = (c % p as u128) as u64;
                c /= p as u128;
            }
            modulus[m] = 1;
            if poly_is_irreducible(&modulus, p) {
                return Ok(Field {
                    p,
                    m,
                    modulus: modulus.clone(),
                });
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over GF(p)")
    }

    pub fn order(&self) -> u64 {
        (self.p as u128).pow(self.m as u32) as u64
    }

    pub fn zero(&self) -> Felt {
        Felt(vec![0; self.m])
    }

    pub fn one(&self) -> Felt {
        let mut c = vec![0; self.m];
        c[0] = 1;
        Felt(c)
    }

    /// The image of the small integer k under Z → GF(p^m).
    pub fn from_int(&self, k: u64) -> Felt {
        let mut c = vec![0; self.m];
        c[0] = k % self.p;
        Felt(c)
    }

    /// Canonical index of an element: Σ c_i p^i. Fixes the basis order of
    /// the Hilbert space C^{p^m} spanned by {|a⟩ : a ∈ GF(p^m)}.
    pub fn index(&self, f: &Felt) -> usize {
        let mut idx = 0usize;
        for &c in f.0.iter().rev() {
            idx = idx * self.p as usize + c as usize;
        }
        idx
    }

    pub fn from_index(&self, mut idx: usize) -> Felt {
        let mut c = vec![0u64; self.m];
        for ck in c.iter_mut() {
            *ck = (idx % self.p as usize) as u64;
            idx /= self.p as usize;
        }
        Felt(c)
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.order() as usize).map(|i| self.from_index(i))
    }

    pub fn is_zero(&self, f: &Felt) -> bool {
        f.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Felt, b: &Felt) -> Felt {
        Felt(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &Felt) -> Felt {
        Felt(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn sub(&self, a: &Felt, b: &Felt) -> Felt {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Felt, b: &Felt) -> Felt {
        if self.m == 1 {
            return Felt(vec![(a.0[0] * b.0[0]) % self.p]);
        }
        let prod = poly_mul_mod_p(&a.0, &b.0, self.p);
        let mut rem = poly_rem(prod, &self.modulus, self.p);
        rem.resize(self.m, 0);
        Felt(rem)
    }

    pub fn scalar_mul(&self, k: u64, a: &Felt) -> Felt {
        Felt(a.0.iter().map(|&x| (x * (k % self.p)) % self.p).collect())
    }

    pub fn pow(&self, a: &Felt, mut e: u128) -> Felt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^{q-2}; panics on zero.
    pub fn inv(&self, a: &Felt) -> Felt {
        assert!(!self.is_zero(a), "zero has no inverse");
        self.pow(a, self.order() as u128 - 2)
    }

    /// Frobenius x ↦ x^p iterated k times.
    pub fn frobenius(&self, a: &Felt, k: usize) -> Felt {
        self.pow(a, (self.p as u128).pow(k as u32))
    }

    /// Absolute trace Tr_{GF(p^m)/GF(p)} as an integer in 0..p.
    pub fn abs_trace(&self, a: &Felt) -> u64 {
        let mut s = self.zero();
        let mut x = a.clone();
        for _ in 0..self.m {
            s = self.add(&s, &x);
            x = self.pow(&x, self.p as u128);
        }
        debug_assert!(s.0[1..].iter().all(|&c| c == 0), "trace must be scalar");
        s.0[0]
    }

    /// Additive character χ(f) = exp(i·2π/p · Tr_{F/F_p}(f)).
    pub fn additive_character(&self, a: &Felt) -> Complex64 {
        unit_phase(self.abs_trace(a) as i64, self.p)
    }

    /// Element from its coefficient list (length must be m).
    pub fn elt(&self, coeffs: &[u64]) -> Felt {
        assert_eq!(coeffs.len(), self.m);
        Felt(coeffs.iter().map(|&c| c % self.p).collect())
    }

    /// The polynomial generator x of GF(p^m).
    pub fn gen_x(&self) -> Felt {
        if self.m == 1 {
            return self.one();
        }
        let mut c = vec![0; self.m];
        c[1] = 1;
        Felt(c)
    }
}

/// An explicit extension tower F = GF(d^r) over B = GF(d), d = p^m, with a
/// chosen basis {b_i}, its dual {b^i} (Tr(b^i b_j) = δ_ij), and the
/// embedding B ↪ F.
///
/// The default basis is the polynomial basis {1, x, …, x^{r-1}} of F.
#[derive(Debug, Clone)]
pub struct Extension {
    pub base: Arc<Field>,
    pub ext: Arc<Field>,
    pub r: usize,
    /// Image of the base generator under the embedding B ↪ F.
    pub embed_root: Felt,
    pub basis: Vec<Felt>,
    pub dual: Vec<Felt>,
    restrict_map: HashMap<Felt, Felt>,
}

impl Extension {
    /// Extension with the default polynomial basis.
    pub fn new(base: &Field, r: usize) -> Result<Extension> {
        let ext = Field::new(base.p, base.m * r)?;
        let basis: Vec<Felt> = (0..r).map(|i| ext.pow(&ext.gen_x(), i as u128)).collect();
        Self::with_basis(base, ext, basis)
    }

    /// Extension with a caller-provided basis of F over B; computes the dual
    /// basis by inverting the trace Gram matrix over B.
    pub fn with_basis(base: &Field, ext: Field, basis: Vec<Felt>) -> Result<Extension> {
        if ext.p != base.p || ext.m % base.m != 0 {
            return Err(Error::NotExtension);
        }
        let r = ext.m / base.m;
        if basis.len() != r {
            return Err(Error::SingularGram);
        }
        let embed_root = find_embedding_root(base, &ext)?;
        let mut tower = Extension {
            base: Arc::new(base.clone()),
            ext: Arc::new(ext),
            r,
            embed_root,
            basis,
            dual: Vec::new(),
            restrict_map: HashMap::new(),
        };
        for b in tower.base.elements() {
            let im = tower.embed(&b);
            tower.restrict_map.insert(im, b);
        }
        tower.dual = tower.compute_dual()?;
        Ok(tower)
    }

    /// Embedding B ↪ F through the chosen root of B's modulus.
    pub fn embed(&self, b: &Felt) -> Felt {
        let mut acc = self.ext.zero();
        let mut xp = self.ext.one();
        for &c in &b.0 {
            let term = self.ext.scalar_mul(c, &xp);
            acc = self.ext.add(&acc, &term);
            xp = self.ext.mul(&xp, &self.embed_root);
        }
        acc
    }

    /// Inverse of `embed`; None when f lies outside the embedded base field.
    pub fn restrict(&self, f: &Felt) -> Option<Felt> {
        self.restrict_map.get(f).cloned()
    }

    /// Relative trace Tr_{F/B}(f) = Σ_{k<r} f^{d^k}, returned in B.
    pub fn trace_rel(&self, f: &Felt) -> Felt {
        let d = self.base.order() as u128;
        let mut s = self.ext.zero();
        let mut x = f.clone();
        for _ in 0..self.r {
            s = self.ext.add(&s, &x);
            x = self.ext.pow(&x, d);
        }
        self.restrict(&s)
            .expect("relative trace must land in the base field")
    }

    fn compute_dual(&self) -> Result<Vec<Felt>> {
        let b = &*self.base;
        let r = self.r;
        // Gram matrix G_ij = Tr(b_i b_j) over B; dual rows are G^{-1}.
        let mut g: Vec<Vec<Felt>> = Vec::with_capacity(r);
        for i in 0..r {
            let mut row = Vec::with_capacity(r);
            for j in 0..r {
                let prod = self.ext.mul(&self.basis[i], &self.basis[j]);
                row.push(self.trace_rel(&prod));
            }
            g.push(row);
        }
        let inv = invert_over_field(b, g).ok_or(Error::SingularGram)?;
        let dual = (0..r)
            .map(|i| {
                let mut acc = self.ext.zero();
                for j in 0..r {
                    let c = self.embed(&inv[i][j]);
                    acc = self.ext.add(&acc, &self.ext.mul(&c, &self.basis[j]));
                }
                acc
            })
            .collect();
        Ok(dual)
    }

    /// Coordinates f^i with f = Σ_i f^i b_i, via f^i = Tr(f b^i).
    pub fn coords(&self, f: &Felt) -> Vec<Felt> {
        self.dual
            .iter()
            .map(|bi| self.trace_rel(&self.ext.mul(f, bi)))
            .collect()
    }

    /// Dual coordinates f_i with f = Σ_i f_i b^i, via f_i = Tr(f b_i).
    pub fn coords_dual(&self, f: &Felt) -> Vec<Felt> {
        self.basis
            .iter()
            .map(|bi| self.trace_rel(&self.ext.mul(f, bi)))
            .collect()
    }

    /// Rebuild f from basis coordinates.
    pub fn expand(&self, coords: &[Felt]) -> Felt {
        let mut acc = self.ext.zero();
        for (c, b) in coords.iter().zip(&self.basis) {
            acc = self.ext.add(&acc, &self.ext.mul(&self.embed(c), b));
        }
        acc
    }

    /// Rebuild f from dual coordinates.
    pub fn expand_dual(&self, coords: &[Felt]) -> Felt {
        let mut acc = self.ext.zero();
        for (c, b) in coords.iter().zip(&self.dual) {
            acc = self.ext.add(&acc, &self.ext.mul(&self.embed(c), b));
        }
        acc
    }
}

fn find_embedding_root(base: &Field, ext: &Field) -> Result<Felt> {
    if base.m == 1 {
        return Ok(ext.one());
    }
    if ext.order() > FIELD_SIZE_CAP as u64 {
        return Err(Error::FieldSizeCap(ext.order() as u128, FIELD_SIZE_CAP));
    }
    // Smallest root (in canonical index order) of the base modulus in F.
    for cand in ext.elements() {
        let mut acc = ext.zero();
        let mut xp = ext.one();
        for &c in &base.modulus {
            acc = ext.add(&acc, &ext.scalar_mul(c, &xp));
            xp = ext.mul(&xp, &cand);
        }
        if ext.is_zero(&acc) {
            return Ok(cand);
        }
    }
    Err(Error::NotExtension)
}

/// Gaussian elimination over an abstract finite field.
fn invert_over_field(f: &Field, mut a: Vec<Vec<Felt>>) -> Option<Vec<Vec<Felt>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Felt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { f.one() } else { f.zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !f.is_zero(&a[r][col]))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = f.inv(&a[col][col]);
        for j in 0..n {
            a[col][j] = f.mul(&a[col][j], &pinv);
            inv[col][j] = f.mul(&inv[col][j], &pinv);
        }
        for r in 0..n {
            if r != col && !f.is_zero(&a[r][col]) {
                let factor = a[r][col].clone();
                for j in 0..n {
                    let t = f.mul(&factor, &a[col][j]);
                    a[r][j] = f.sub(&a[r][j], &t);
                    let t = f.mul(&factor, &inv[col][j]);
                    inv[r][j] = f.sub(&inv[r][j], &t);
                }
            }
        }
    }
    Some(inv)
}

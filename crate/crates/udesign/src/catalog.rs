//! Built-in designs, unitarization of finite matrix representations, and
//! design-file serialization.
//!
//! Three builtins ship with the crate:
//!
//! * `qubit12` — the 12-element qubit 2-design: the four Pauli matrices
//!   plus the eight order-3 rotations about the cube diagonals
//!   (±1,±1,±1)/√3;
//! * `chau9` — the 12 960-element dimension-9 2-design built from the
//!   order-160 symplectic subgroup acting transitively on F_3⁴∖{0};
//! * `fivedesign` — the 60-element qubit 5-design obtained by unitarizing
//!   an order-120 irreducible representation of SL(2, F_5) and quotienting
//!   its center {±𝟙}.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::designs::{self, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::gfield::Field;
use crate::linalg::{self, CMat};
use crate::symplectic::{
    self, complex_key, group_closure_field, is_transitive_on_nonzero, JacobiDesign, CLOSURE_CAP,
};
use crate::weyl::PhaseSpace;

/// A verified design order claim.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Claim {
    pub t: usize,
    pub verdict: bool,
}

/// A serializable catalog entry: the design matrices plus claimed orders.
#[derive(Debug, Clone)]
pub struct DesignRecord {
    pub name: String,
    pub dimension: usize,
    pub matrices: Vec<CMat>,
    pub provenance: String,
    pub claims: Vec<Claim>,
}

impl DesignRecord {
    pub fn k(&self) -> usize {
        self.matrices.len()
    }

    pub fn ensemble(&self) -> Result<UnitaryEnsemble> {
        UnitaryEnsemble::new(&self.name, self.dimension, self.matrices.clone())
    }
}

/// On-disk schema: entries as [re, im] double pairs, matrices flattened
/// row-major.
#[derive(Serialize, Deserialize)]
struct RecordFile {
    name: String,
    d: usize,
    k: usize,
    matrices: Vec<Vec<[f64; 2]>>,
    provenance: String,
    claims: Vec<Claim>,
}

/// Write a design record as JSON; lossless for f64 entries.
pub fn save_ensemble(record: &DesignRecord, path: &Path) -> Result<()> {
    let file = RecordFile {
        name: record.name.clone(),
        d: record.dimension,
        k: record.matrices.len(),
        matrices: record
            .matrices
            .iter()
            .map(|m| {
                let d = record.dimension;
                (0..d * d)
                    .map(|idx| {
                        let z = m[(idx / d, idx % d)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect(),
        provenance: record.provenance.clone(),
        claims: record.claims.clone(),
    };
    let json = serde_json::to_string_pretty(&file)?;
    std::fs::write(path, json)?;
    Ok(())
}

/// Load and re-validate a design record; unitarity failures name the
/// offending matrix index.
pub fn load_ensemble(path: &Path) -> Result<DesignRecord> {
    let text = std::fs::read_to_string(path)?;
    let file: RecordFile = serde_json::from_str(&text)?;
    if file.matrices.len() != file.k {
        return Err(Error::MalformedFile(format!(
            "k = {} but {} matrices present",
            file.k,
            file.matrices.len()
        )));
    }
    let d = file.d;
    let mut matrices = Vec::with_capacity(file.k);
    for (index, flat) in file.matrices.iter().enumerate() {
        if flat.len() != d * d {
            return Err(Error::MalformedFile(format!(
                "matrix {index} has {} entries, expected {}",
                flat.len(),
                d * d
            )));
        }
        let m = CMat::from_fn(d, d, |i, j| {
            let [re, im] = flat[i * d + j];
            Complex64::new(re, im)
        });
        let defect = linalg::unitarity_defect(&m);
        if defect > designs::UNITARITY_TOL {
            return Err(Error::NotUnitary { index, defect });
        }
        matrices.push(m);
    }
    Ok(DesignRecord {
        name: file.name,
        dimension: d,
        matrices,
        provenance: file.provenance,
        claims: file.claims,
    })
}

fn pauli_matrices() -> [CMat; 4] {
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

/// The 12-element qubit 2-design: {𝟙, σx, σy, σz} together with the eight
/// rotations by 2π/3 about the axes (±1,±1,±1)/√3, realized as
/// U = cos(π/3)𝟙 − i·sin(π/3)·n̂·σ = (𝟙 − i(±σx ± σy ± σz))/2.
pub fn builtin_qubit12() -> DesignRecord {
    let [id, sx, sy, sz] = pauli_matrices();
    let mut matrices = vec![id.clone(), sx.clone(), sy.clone(), sz.clone()];
    let half = Complex64::new(0.5, 0.0);
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            for s3 in [1.0, -1.0] {
                let axis = &sx * Complex64::new(s1, 0.0)
                    + &sy * Complex64::new(s2, 0.0)
                    + &sz * Complex64::new(s3, 0.0);
                matrices.push((&id - axis * linalg::I) * half);
            }
        }
    }
    DesignRecord {
        name: "qubit12".to_string(),
        dimension: 2,
        matrices,
        provenance: "Pauli matrices plus the eight order-3 rotations about the cube \
                     diagonals; minimal qubit 2-design (K = d^4 - d^2 = 12)"
            .to_string(),
        claims: vec![
            Claim {
                t: 1,
                verdict: true,
            },
            Claim {
                t: 2,
                verdict: true,
            },
            Claim {
                t: 3,
                verdict: false,
            },
        ],
    }
}

/// The dimension-9 Clifford 2-design pipeline: closes the six built-in
/// generators to the order-160 subgroup of Sp(4, F_3), verifies
/// transitivity on the 80 nonzero phase-space points, and assembles the
/// 12 960-element Jacobi design in streaming form.
pub struct Chau9 {
    pub closure_order: usize,
    pub orbit_sizes: Vec<usize>,
    pub design: JacobiDesign,
}

pub fn builtin_chau9() -> Result<Chau9> {
    let f3 = Field::new(3, 1).unwrap();
    let closure = group_closure_field(&symplectic::table2_generators(), CLOSURE_CAP)?;
    if closure.order() != 160 {
        return Err(Error::MalformedFile(format!(
            "built-in subgroup closed to order {}, expected 160",
            closure.order()
        )));
    }
    let space = PhaseSpace::new(&f3, 2);
    let (transitive, orbit_sizes) = is_transitive_on_nonzero(&closure.elements, &space);
    if !transitive {
        return Err(Error::NotTransitive);
    }
    let design = JacobiDesign::new(&f3, 2, closure.elements)?;
    Ok(Chau9 {
        closure_order: 160,
        orbit_sizes,
        design,
    })
}

impl Chau9 {
    pub fn cardinality(&self) -> usize {
        self.design.len()
    }

    /// Materialized record; ~12 960 matrices of size 9×9.
    pub fn record(&self) -> DesignRecord {
        DesignRecord {
            name: "chau9".to_string(),
            dimension: 9,
            matrices: self.design.materialize(),
            provenance: "Jacobi design w(v)·mu(S) over F_3^4 from the order-160 \
                         symplectic subgroup acting transitively on the nonzero \
                         phase-space points; K = 2(d^4 - d^2) = 12960"
                .to_string(),
            claims: vec![
                Claim {
                    t: 1,
                    verdict: true,
                },
                Claim {
                    t: 2,
                    verdict: true,
                },
            ],
        }
    }
}

/// Generators of the order-120 matrix group over ω = exp(2πi/15), encoded
/// as integer polynomials in ω and evaluated on load. The (1,1) entry of
/// the third generator is read as −ω−ω²−ω⁴−ω⁸−2(ω¹¹+ω¹⁴): the group then
/// closes at order 120 with a real character, which the tabulated
/// alternative sign does not.
pub fn fivedesign_generators() -> Vec<CMat> {
    type Poly = &'static [(i64, i64)];
    const M1: [Poly; 4] = [&[(-1, 0)], &[], &[], &[(-1, 0)]];
    const M2: [Poly; 4] = [
        &[(-1, 11), (-1, 14)],
        &[(-1, 11), (-1, 14)],
        &[(1, 10)],
        &[(-1, 1), (-1, 4)],
    ];
    const M3: [Poly; 4] = [
        &[(-1, 1), (-1, 2), (-1, 4), (-1, 8), (-2, 11), (-2, 14)],
        &[(1, 6), (1, 9)],
        &[(1, 11), (1, 14)],
        &[(-1, 5)],
    ];
    [M1, M2, M3]
        .iter()
        .map(|entries| {
            CMat::from_fn(2, 2, |i, j| {
                entries[i * 2 + j]
                    .iter()
                    .map(|&(c, p)| linalg::unit_phase(p, 15) * Complex64::new(c as f64, 0.0))
                    .sum()
            })
        })
        .collect()
}

/// Similarity-transform a finite (closed) matrix group to an equivalent
/// unitary one: with Q = (1/|G|) Σ_g U_g† U_g, the set {Q^{1/2} U Q^{-1/2}}
/// is unitary and affords the same characters.
pub fn unitarize_representation(group: &[CMat]) -> Result<Vec<CMat>> {
    if group.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let d = group[0].nrows();
    let mut q = CMat::zeros(d, d);
    for g in group {
        q += g.adjoint() * g;
    }
    q /= Complex64::new(group.len() as f64, 0.0);
    let (vals, vecs) = linalg::hermitian_eigen(&q);
    if vals.iter().any(|&v| v < 1e-12) {
        return Err(Error::MalformedFile(
            "singular averaging operator; the input set is not a closed group".to_string(),
        ));
    }
    let diag = |f: &dyn Fn(f64) -> f64| {
        CMat::from_fn(d, d, |r, c| {
            if r == c {
                Complex64::new(f(vals[r]), 0.0)
            } else {
                linalg::ZERO
            }
        })
    };
    let q_half = &vecs * diag(&|v| v.sqrt()) * vecs.adjoint();
    let q_inv_half = &vecs * diag(&|v| 1.0 / v.sqrt()) * vecs.adjoint();
    Ok(group.iter().map(|g| &q_half * g * &q_inv_half).collect())
}

/// The qubit 5-design: order-120 closure of the built-in generators,
/// unitarization, and the 60-element transversal of the center {±𝟙}.
pub struct FiveDesign {
    pub group120: Vec<CMat>,
    pub unitary120: Vec<CMat>,
    pub transversal60: Vec<CMat>,
}

pub fn builtin_5design() -> Result<FiveDesign> {
    let closure = symplectic::group_closure_complex(&fivedesign_generators(), 10_000, false)?;
    if closure.order() != 120 {
        return Err(Error::MalformedFile(format!(
            "5-design generators closed to order {}, expected 120",
            closure.order()
        )));
    }
    let unitary120 = unitarize_representation(&closure.elements)?;
    let mut transversal60 = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for u in &unitary120 {
        if seen.insert(complex_key(u, true)) {
            transversal60.push(u.clone());
        }
    }
    if transversal60.len() != 60 {
        return Err(Error::MalformedFile(format!(
            "center quotient produced {} classes, expected 60",
            transversal60.len()
        )));
    }
    Ok(FiveDesign {
        group120: closure.elements,
        unitary120,
        transversal60,
    })
}

impl FiveDesign {
    pub fn record(&self) -> DesignRecord {
        DesignRecord {
            name: "fivedesign".to_string(),
            dimension: 2,
            matrices: self.transversal60.clone(),
            provenance: "unitarized order-120 irreducible representation of SL(2, F_5), \
                         one representative per {±1} phase class; qubit 5-design with 60 \
                         elements (sixth-power norm 133, read as the squared character \
                         norm, vs 132 for the full unitary group)"
                .to_string(),
            claims: (1..=5).map(|t| Claim { t, verdict: true }).collect(),
        }
    }

    /// Group-formula potential over the unitarized group (traces are
    /// similarity-invariant, so the transversal gives the same value).
    pub fn potential(&self, t: usize) -> f64 {
        designs::potential_from_traces(
            self.unitary120.iter().map(|u| u.trace()),
            self.unitary120.len(),
            t,
        )
    }
}

/// Names resolvable without files in the CLI.
pub const BUILTIN_NAMES: [&str; 3] = ["qubit12", "chau9", "fivedesign"];

/// Materialize a built-in design record by name.
pub fn builtin_record(name: &str) -> Result<DesignRecord> {
    match name {
        "qubit12" => Ok(builtin_qubit12()),
        "chau9" => Ok(builtin_chau9()?.record()),
        "fivedesign" => Ok(builtin_5design()?.record()),
        other => Err(Error::Usage(format!(
            "unknown builtin '{other}'; available: {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

/// Resolve a design argument: a builtin name or a path to a design file.
pub fn resolve_design(arg: &str) -> Result<DesignRecord> {
    if BUILTIN_NAMES.contains(&arg) {
        builtin_record(arg)
    } else {
        load_ensemble(Path::new(arg))
    }
}

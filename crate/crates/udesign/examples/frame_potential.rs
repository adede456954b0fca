//! Frame potentials and design verification.
//!
//! The frame potential P_t(D) = Σ_{k,k'} |tr(U_k† U_k')|^{2t} / K² is
//! bounded below by t! (for d ≥ t), with equality exactly on t-designs.
//! This example evaluates it on a few ensembles and runs the verification
//! verdict.
//!
//! Run with: cargo run --release --example frame_potential

use udesign::catalog::builtin_qubit12;
use udesign::designs::{frame_potential, is_design, target_potential, UnitaryEnsemble};
use udesign::linalg::{eye, random_unitary};
use udesign::CMat;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    // A single unitary is as far from a 2-design as possible: P = d⁴.
    let lone = UnitaryEnsemble::new("identity", 2, vec![eye(2)]).unwrap();
    println!(
        "single identity:   P_2 = {:>10.6}  (target {})",
        frame_potential(&lone, 2).unwrap(),
        target_potential(2, 2)
    );

    // Random unitaries do better, but never reach the bound.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mats: Vec<CMat> = (0..12).map(|_| random_unitary(2, &mut rng)).collect();
    let random = UnitaryEnsemble::new("random-12", 2, mats).unwrap();
    println!(
        "12 random:         P_2 = {:>10.6}",
        frame_potential(&random, 2).unwrap()
    );

    // The 12-element builtin sits exactly at the minimum.
    let design = builtin_qubit12().ensemble().unwrap();
    for t in 1..=3 {
        let report = is_design(&design, t, 1e-9).unwrap();
        println!(
            "qubit12:           P_{t} = {:>10.6}  (target {:>3}) design: {}",
            report.value, report.target, report.verdict
        );
    }
}

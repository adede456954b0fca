//! Twirling channels and the Choi-matrix picture.
//!
//! Averaging (U⊗U)ρ(U⊗U)† over a 2-design projects ρ onto the symmetric
//! and antisymmetric sectors — the same channel the Haar average defines.
//! The distance of an arbitrary ensemble from that channel is measured by
//! its Choi matrix: ‖C_UU − C_D‖₂² = P₂(D) − 2.
//!
//! Run with: cargo run --release --example twirling

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use udesign::catalog::builtin_qubit12;
use udesign::designs::{
    choi_gap, frame_potential, twirl_by_projectors, twirl_with_ensemble, SymmetrySplit,
    UnitaryEnsemble,
};
use udesign::linalg::{max_abs, random_complex_matrix, random_unitary};

fn main() {
    let ens = builtin_qubit12().ensemble().unwrap();
    let split = SymmetrySplit::new(2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    // Twirl a random state with the design and with the projector formula.
    let m = random_complex_matrix(4, &mut rng);
    let rho = &m * m.adjoint();
    let rho = &rho / rho.trace();
    let averaged = twirl_with_ensemble(&ens, &rho).unwrap();
    let projected =
        twirl_by_projectors(&[split.p_sym.clone(), split.p_anti.clone()], &rho).unwrap();
    println!(
        "‖design twirl − projector twirl‖∞ = {:.3e}",
        max_abs(&(&averaged - &projected))
    );
    println!(
        "sym/antisym weights: {:.6} / {:.6} (dims {} and {})",
        (&split.p_sym * &rho).trace().re,
        (&split.p_anti * &rho).trace().re,
        split.dim_sym,
        split.dim_anti
    );

    // Choi gap equals the potential surplus, for any ensemble.
    let mats: Vec<_> = (0..5).map(|_| random_unitary(2, &mut rng)).collect();
    let random = UnitaryEnsemble::new("random-5", 2, mats).unwrap();
    let gap = choi_gap(&random).unwrap();
    let p2 = frame_potential(&random, 2).unwrap();
    println!(
        "random ensemble: ‖C_UU − C_D‖₂² = {gap:.9}, P₂ − 2 = {:.9}",
        p2 - 2.0
    );

    let design_gap = choi_gap(&ens).unwrap();
    println!("qubit12:         ‖C_UU − C_D‖₂² = {design_gap:.3e}");
}

//! Passive linear optics: pushing unitary designs into SpO(2d) and
//! averaging covariance-matrix functionals.
//!
//! A unitary U = X + iY embeds as the real matrix S(U) = [[X, Y], [−Y, X]],
//! landing in SpO(2d) = Sp(2d, ℝ) ∩ O(2d) — exactly the passive
//! (energy-preserving) transformations. Second-moment averages over random
//! passive interactions are degree-2 Haar integrals, so any verified
//! 2-design evaluates them exactly.
//!
//! Run with: cargo run --release --example linear_optics

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use udesign::catalog::builtin_qubit12;
use udesign::designs::{UnitaryEnsemble, DESIGN_TOL};
use udesign::gfield::Field;
use udesign::linopt::{energy_fluctuation, pushforward_design, spo_defect, RMat};
use udesign::symplectic::{sl2, JacobiDesign};

fn main() {
    let qubit12 = builtin_qubit12().ensemble().unwrap();
    let images = pushforward_design(&qubit12, 2, DESIGN_TOL).unwrap();
    let worst = images.iter().map(spo_defect).fold(0.0, f64::max);
    println!(
        "embedded {} unitaries into SpO(4); worst membership defect {worst:.2e}",
        images.len()
    );

    // Energy fluctuations of the first mode under random passive
    // interactions: identical from any verified 2-design.
    let f2 = Field::new(2, 1).unwrap();
    let clifford = JacobiDesign::new(&f2, 1, sl2(&f2)).unwrap();
    let clifford = UnitaryEnsemble::new("clifford-24", 2, clifford.materialize()).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    println!("\n     ΔE (qubit12)      ΔE (clifford-24)   difference");
    for _ in 0..4 {
        let m = RMat::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0));
        let gamma = (&m + m.transpose()) * 0.5;
        let d1 = energy_fluctuation(&qubit12, &gamma, DESIGN_TOL).unwrap();
        let d2 = energy_fluctuation(&clifford, &gamma, DESIGN_TOL).unwrap();
        println!("  {d1:>16.12}  {d2:>16.12}   {:.2e}", (d1 - d2).abs());
    }
    let vacuum = RMat::identity(4, 4);
    println!(
        "\nfully symmetric γ = 𝟙: ΔE = {:.2e} (no fluctuations)",
        energy_fluctuation(&qubit12, &vacuum, DESIGN_TOL).unwrap()
    );
}

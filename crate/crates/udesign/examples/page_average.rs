//! Typical entanglement of bipartite pure states, by two exact routes.
//!
//! The Haar-average purity of a reduced state on C^d ⊗ C^d is a degree-2
//! moment, so a verified 2-design computes it exactly: 2d/(d²+1). The MUB
//! family gives the same number by pure counting — its vectors are either
//! product (purity 1) or maximally entangled (purity 1/d).
//!
//! Run with: cargo run --release --example page_average

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use udesign::designs::{UnitaryEnsemble, DESIGN_TOL};
use udesign::gfield::Field;
use udesign::linalg::random_state;
use udesign::mub::{average_purity_mub, page_average};
use udesign::symplectic::{sl2, JacobiDesign};

fn main() {
    for (p, m) in [(2u64, 1usize), (3, 1)] {
        let base = Field::new(p, m).unwrap();
        let report = average_purity_mub(&base).unwrap();
        println!(
            "d = {}: counting {:.12}, direct average {:.12}, closed form {:.12}",
            report.d, report.by_counting, report.by_average, report.closed_form
        );
    }

    // Same number from twirling an arbitrary state with a dimension-4
    // 2-design (the 960-element Jacobi design over GF(4)).
    let f4 = Field::new(2, 2).unwrap();
    let jac = JacobiDesign::new(&f4, 1, sl2(&f4)).unwrap();
    let design = UnitaryEnsemble::new("jacobi-4-1", 4, jac.materialize())
        .unwrap()
        .with_closure_flag();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    println!("\npage averages over jacobi-4-1 (K = {}):", design.len());
    for trial in 0..3 {
        let psi = random_state(4, &mut rng);
        let value = page_average(&design, 2, &psi, DESIGN_TOL).unwrap();
        println!("  random state {trial}: {value:.12}");
    }
    println!("state-independent and equal to 2·2/(2²+1) = 0.8");
}

//! Weyl (generalized Pauli) operators and their tensor factoring.
//!
//! Run with: cargo run --release --example weyl_operators

use udesign::gfield::{Extension, Field};
use udesign::weyl::{factor_weyl, weyl_op, PhasePoint, PhaseSpace};

fn main() {
    // The qubit Weyl operators are the Pauli matrices.
    let f2 = Field::new(2, 1).unwrap();
    let space = PhaseSpace::new(&f2, 1);
    for (pp, qq, name) in [(0u64, 0u64, "1"), (0, 1, "X"), (1, 1, "±Y"), (1, 0, "Z")] {
        let a = PhasePoint {
            p: vec![f2.from_int(pp)],
            q: vec![f2.from_int(qq)],
        };
        println!("w({pp},{qq}) = {name}:");
        let m = weyl_op(&space, &a).matrix();
        for i in 0..2 {
            println!(
                "   [{:>5.2} {:>+5.2}i, {:>5.2} {:>+5.2}i]",
                m[(i, 0)].re,
                m[(i, 0)].im,
                m[(i, 1)].re,
                m[(i, 1)].im
            );
        }
    }

    // Commutation phases are the additive characters of the symplectic form.
    let f3 = Field::new(3, 1).unwrap();
    let space3 = PhaseSpace::new(&f3, 1);
    let a = PhasePoint {
        p: vec![f3.one()],
        q: vec![f3.zero()],
    };
    let b = PhasePoint {
        p: vec![f3.zero()],
        q: vec![f3.one()],
    };
    let chi = space3.commutation_phase(&a, &b).unwrap();
    println!("\nqutrit: w(1,0) w(0,1) = χ([a,b]) w(0,1) w(1,0) with χ = {chi:.4}");

    // Factoring: a GF(9) Weyl operator splits into two GF(3) factors, with
    // dual-basis coordinates for p and basis coordinates for q.
    let tower = Extension::new(&f3, 2).unwrap();
    let p = tower.ext.gen_x();
    let q = tower.ext.one();
    let factors = factor_weyl(&tower, &p, &q);
    println!("\nw_9(x, 1) factors into:");
    for (i, (pi, qi)) in factors.iter().enumerate() {
        println!("   particle {i}: w_3({:?}, {:?})", pi.0, qi.0);
    }
    println!("(tensor identity checked exhaustively in the test suite)");
}

//! Clifford-type designs from phase space: Weyl operators w(v) times
//! metaplectic unitaries μ(S) over a symplectic subgroup.
//!
//! Two constructions are shown. The full qutrit group Sp(3,1) = SL(2, F_3)
//! gives a 216-element 2-design on C³. The built-in order-160 subgroup of
//! Sp(4, F_3) acts transitively on the 80 nonzero points of F_3⁴ and gives
//! a 12 960-element 2-design on C⁹ — far below the 4 199 040 elements the
//! full two-qutrit construction would need.
//!
//! Run with: cargo run --release --example clifford_designs

use std::time::Instant;
use udesign::catalog::builtin_chau9;
use udesign::gfield::Field;
use udesign::symplectic::{sl2, symplectic_order, JacobiDesign};

fn main() {
    let f3 = Field::new(3, 1).unwrap();
    let qutrit = JacobiDesign::new(&f3, 1, sl2(&f3)).unwrap();
    println!(
        "qutrit: |Sp(3,1)| = {}, K = {}, P_2 = {:.12}",
        symplectic_order(3, 1),
        qutrit.len(),
        qutrit.frame_potential(2)
    );

    let start = Instant::now();
    let chau = builtin_chau9().unwrap();
    println!(
        "d = 9:  subgroup order {}, orbit sizes {:?}, K = {}",
        chau.closure_order,
        chau.orbit_sizes,
        chau.cardinality()
    );
    println!(
        "        P_2 = {:.12}  (streamed group formula, {:?})",
        chau.design.frame_potential(2),
        start.elapsed()
    );
    println!(
        "        full Sp(3,2) construction would have {} elements",
        81 * symplectic_order(3, 2)
    );
}

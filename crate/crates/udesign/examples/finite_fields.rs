//! Finite-field arithmetic underneath the phase-space constructions:
//! extension towers, relative traces, dual bases, additive characters.
//!
//! Run with: cargo run --release --example finite_fields

use udesign::gfield::{Extension, Field};

fn main() {
    let f3 = Field::new(3, 1).unwrap();
    let f9 = Field::new(3, 2).unwrap();
    println!("GF(9) modulus coefficients (c0..c2): {:?}", f9.modulus);

    // The tower GF(9)/GF(3) with the polynomial basis {1, x}.
    let tower = Extension::new(&f3, 2).unwrap();
    println!("basis:      {:?}", tower.basis);
    println!("dual basis: {:?}", tower.dual);

    // Tr(b^i · b_j) = δ_ij.
    for i in 0..2 {
        for j in 0..2 {
            let prod = tower.ext.mul(&tower.dual[i], &tower.basis[j]);
            print!("Tr(b^{i} b_{j}) = {:?}  ", tower.trace_rel(&prod).0);
        }
        println!();
    }

    // Coordinates through the dual pairing reproduce every element.
    let mut roundtrips = 0;
    for f in tower.ext.elements() {
        assert_eq!(tower.expand(&tower.coords(&f)), f);
        roundtrips += 1;
    }
    println!("coordinate roundtrip on all {roundtrips} elements of GF(9)");

    // Additive characters: χ(f) = exp(2πi/p · Tr(f)), and nontrivial
    // character sums vanish.
    let chi_one = f9.additive_character(&f9.one());
    println!("χ(1) over GF(9) = {:.6} + {:.6}i", chi_one.re, chi_one.im);
    let total: num_complex::Complex64 = f9.elements().map(|f| f9.additive_character(&f)).sum();
    println!("Σ_f χ(f) = {:.2e} (vanishes)", total.norm());
}

//! Mutually unbiased bases from stabilizer states, and their entanglement
//! structure over a fixed bipartition.
//!
//! Run with: cargo run --release --example mub_family

use udesign::gfield::{Extension, Field};
use udesign::mub::{classify_entanglement, mub_family, EntanglementClass, MubLabel};

fn main() {
    // q + 1 bases in every prime-power dimension q.
    for (p, m) in [(2u64, 1usize), (3, 1), (2, 2), (5, 1)] {
        let field = Field::new(p, m).unwrap();
        let family = mub_family(&field).unwrap();
        println!(
            "q = {:>2}: {} mutually unbiased bases (cross overlap 1/q = {:.4})",
            field.order(),
            family.bases.len(),
            1.0 / field.order() as f64
        );
    }

    // For q = d², each basis is either maximally entangled or product with
    // respect to the bipartition C^d ⊗ C^d: d² − d entangled, d + 1 product.
    println!();
    for (p, d) in [(2u64, 2usize), (3, 3)] {
        let base = Field::new(p, if d == 4 { 2 } else { 1 }).unwrap();
        let tower = Extension::new(&base, 2).unwrap();
        let family = mub_family(&tower.ext).unwrap();
        let counts = classify_entanglement(&family, &tower).unwrap();
        println!(
            "q = {:>2} = {d}²: {} maximally entangled bases, {} product bases",
            family.q(),
            counts.maximally_entangled,
            counts.product
        );
        for (basis, class) in family.bases.iter().zip(&counts.classes) {
            let tag = match class {
                EntanglementClass::MaximallyEntangled => "entangled",
                EntanglementClass::Product => "product  ",
            };
            let label = match &basis.label {
                MubLabel::Finite(a) => format!("a = {:?}", a.0),
                MubLabel::Infinity => "infinity ".to_string(),
            };
            println!("    line {label:<12} {tag}");
        }
    }
}

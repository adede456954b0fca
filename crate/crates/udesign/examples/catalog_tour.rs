//! The built-in design catalog and the design-file format.
//!
//! Run with: cargo run --release --example catalog_tour

use udesign::catalog::{builtin_5design, builtin_qubit12, load_ensemble, save_ensemble};
use udesign::designs::{frame_potential, is_design};

fn main() {
    // The 12-element qubit design: Paulis + cube-diagonal rotations.
    let rec = builtin_qubit12();
    println!("{}: d = {}, K = {}", rec.name, rec.dimension, rec.k());
    println!("  provenance: {}", rec.provenance);
    for claim in &rec.claims {
        println!("  claimed order {}: {}", claim.t, claim.verdict);
    }

    // Save, reload, and re-verify: the roundtrip is lossless and the
    // loader re-validates unitarity entry by entry.
    let path = std::env::temp_dir().join("qubit12.json");
    save_ensemble(&rec, &path).unwrap();
    let back = load_ensemble(&path).unwrap();
    let ens = back.ensemble().unwrap();
    println!(
        "  reloaded from {}: P_2 = {:.12}",
        path.display(),
        frame_potential(&ens, 2).unwrap()
    );

    // The 60-element qubit 5-design from an order-120 representation.
    let fd = builtin_5design().unwrap();
    let rec5 = fd.record();
    println!("\n{}: d = {}, K = {}", rec5.name, rec5.dimension, rec5.k());
    for t in 1..=6 {
        println!("  P_{t} = {:>12.8}", fd.potential(t));
    }
    let ens5 = rec5.ensemble().unwrap();
    for t in [5usize, 6] {
        let report = is_design(&ens5, t, 1e-6).unwrap();
        println!("  order {t}: design = {}", report.verdict);
    }
}

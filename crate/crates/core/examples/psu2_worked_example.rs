//! The PSU(2)_5 fusion ring (p = 7): fusion matrices, the S-matrix in
//! quantum-integer notation and the eigenvalues of F_{X_2}.

use fusionquiver::fusion::FusionRing;
use fusionquiver::modular::{smatrix, verlinde_check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = 7;
    let ring = FusionRing::psu2(p)?;
    for x in 0..ring.rank() {
        println!("F_{}:", ring.labels()[x]);
        for row in ring.fusion_matrix(x)?.entries {
            println!("  {row:?}");
        }
    }

    let md = smatrix(p)?;
    println!("S (unnormalized):");
    for row in &md.s {
        let cells: Vec<String> = row.iter().map(|v| v.notation()).collect();
        println!("  {}", cells.join("  "));
    }
    let dims: Vec<String> = md.dims.iter().map(|d| format!("{} ≈ {:.4}", d.notation(), d.to_f64())).collect();
    println!("quantum dimensions: {}", dims.join(", "));

    let x2 = ring.label_index("X_2").expect("psu2 label");
    for j in 0..md.rank() {
        let chi = md.character(x2, j);
        println!("eigenvalue of F_X_2 on column {j}: {chi} ≈ {:.6}", chi.to_f64());
    }
    println!("S diagonalizes every fusion matrix: {}", verlinde_check(&ring, &md)?);
    Ok(())
}

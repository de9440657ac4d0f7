//! Compares the classifier with the spectral and conjugation oracles on every
//! 3x3 quiver with at most one arrow per pair of vertices, over PSU(2)_5.

use fusionquiver::classify::{
    classify, conjugation_oracle, permutations, spectral_oracle_with, Labeling, SpectralProjector,
    DEFAULT_ORACLE_STEPS,
};
use fusionquiver::fusion::FusionRing;
use fusionquiver::quiver::Quiver;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = FusionRing::psu2(7)?;
    let projector = SpectralProjector::new(&ring)?;
    let x2 = ring.label_index("X_2").expect("psu2 label");
    let (mut accepted, mut disagreements) = (0, 0);
    for code in 0u32..512 {
        let adj: Vec<Vec<u32>> = (0..3).map(|r| (0..3).map(|c| code >> (3 * r + c) & 1).collect()).collect();
        let q = Quiver::from_matrix(adj.clone())?;
        let by_classify = !classify(&q, &ring).is_empty();
        let (mut spectral, mut conjugation) = (false, false);
        for psi in permutations(3) {
            let lab = Labeling::single(psi);
            spectral |= spectral_oracle_with(&projector, &q, &lab)?.passed;
            let report = conjugation_oracle(&q, &ring, x2, &lab, DEFAULT_ORACLE_STEPS)?;
            conjugation |= report.survived && report.certified;
        }
        accepted += by_classify as u32;
        if by_classify != spectral || by_classify != conjugation {
            disagreements += 1;
            println!("disagreement on {adj:?}: classify {by_classify}, spectral {spectral}, conjugation {conjugation}");
        } else if by_classify {
            println!("action on {adj:?}");
        }
    }
    println!("{accepted} of 512 admit an action, {disagreements} disagreement(s)");
    Ok(())
}

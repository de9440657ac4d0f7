//! Checks the conjugation-spectrum propositions for every prime 5 <= p <= 31
//! and verifies the eigenvectors of conjugation by F_{X_2} exactly.

use std::time::Instant;

use fusionquiver::cyclo::primes_up_to;
use fusionquiver::fusion::FusionRing;
use fusionquiver::modular::{check_propositions, conj_eigensystem, smatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pmax = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(31);
    println!("{:>4} {:>5} {:>8} {:>9} {:>6} {:>6} {:>9}", "p", "rank", "no -1", "distinct", "mixed", "±d", "λ=1 mult");
    for p in primes_up_to(pmax).into_iter().filter(|&p| p >= 5).map(u64::from) {
        let start = Instant::now();
        let flags = check_propositions(p)?;
        let ring = FusionRing::psu2(p)?;
        let es = conj_eigensystem(&smatrix(p)?, 1, false)?;
        assert!(es.verify(&ring)?, "eigenpairs fail at p = {p}");
        println!(
            "{p:>4} {:>5} {:>8} {:>9} {:>6} {:>6} {:>9}   {:.2?}",
            ring.rank(),
            flags.no_minus_one,
            flags.distinct_magnitudes,
            flags.mixed_signs,
            flags.pm_d_once,
            es.unit_eigenvalue_count(),
            start.elapsed()
        );
    }
    Ok(())
}

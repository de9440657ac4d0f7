//! Counts decompositions of Q̃ over a dual basis: unique, none, or infinitely many.

use fusionquiver::classify::{count_decompositions, DualBasis};
use fusionquiver::fusion::FusionRing;
use fusionquiver::quiver::{load_quiver, tilde, Quiver};

fn show(name: &str, q: &Quiver, basis: &DualBasis, groups: usize) -> Result<(), Box<dyn std::error::Error>> {
    let t = tilde(q)?;
    let report = count_decompositions(&t, basis, groups)?;
    println!("{name}: Q̃ = {:?}", t.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    println!("  count {} (only 0, 1 or ∞ possible: {})", report.count, report.dichotomy_applies);
    for b in &report.blocks {
        if let Some(c) = &b.coefficients {
            let c: Vec<String> = c.iter().map(|e| e.to_string()).collect();
            println!("  block {}→{}: {}", b.source, b.target, c.join(", "));
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fib = FusionRing::psu2(5)?;
    let fib_quiver = Quiver::from_matrix(vec![vec![0, 1], vec![1, 1]])?;
    show("Fib on Fib", &fib_quiver, &DualBasis::regular(&fib), 1)?;
    show("Vec(Z2) on Vec", &Quiver::from_matrix(vec![vec![1]])?, &DualBasis::fiber(&[1, 1])?, 1)?;
    show("single edge", &Quiver::from_matrix(vec![vec![0, 0], vec![1, 0]])?, &DualBasis::regular(&fib), 1)?;
    let pair = load_quiver(include_str!("data/fib_pair.json"))?;
    show("two Fib groups", &pair, &DualBasis::regular(&fib), 2)?;
    Ok(())
}

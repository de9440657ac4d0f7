//! Classifies based PSU(2)_{p-2} actions on a quiver read from JSON.
//!
//! cargo run --example classify_quiver -- [QUIVER.json] [p]

use fusionquiver::classify::{check_witness, classify, relabeling_classes};
use fusionquiver::fusion::FusionRing;
use fusionquiver::quiver::load_quiver;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let (json, p) = match (args.next(), args.next()) {
        (Some(path), p) => (std::fs::read_to_string(path)?, p.map(|s| s.parse()).transpose()?.unwrap_or(5)),
        (None, _) => (include_str!("data/fib_pair.json").to_string(), 5),
    };
    let q = load_quiver(&json)?;
    let ring = FusionRing::psu2(p)?;
    let witnesses = classify(&q, &ring);
    println!("{} vertices, {} based action(s) of PSU(2)_{}", q.vertex_count(), witnesses.len(), p - 2);
    for w in &witnesses {
        assert!(check_witness(&q, &ring, w)?);
        println!("{}", serde_json::to_string(&w.to_document(&q, &ring))?);
    }
    let classes = relabeling_classes(&witnesses);
    println!("{} class(es) up to block-preserving relabeling", classes.len());
    Ok(())
}

//! Path basis of the triangle quiver and the automorphism γ ↦ -γ - βα.

use std::sync::Arc;

use fusionquiver::quiver::{check_automorphism, enumerate_paths, load_quiver, parse_map_document};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = Arc::new(load_quiver(include_str!("data/triangle.json"))?);
    for (len, paths) in enumerate_paths(&q, 3).iter().enumerate().filter(|(_, p)| !p.is_empty()) {
        let names: Vec<String> = paths.iter().map(|p| p.display(&q)).collect();
        println!("length {len}: {}", names.join(", "));
    }

    let phi = parse_map_document(&q, include_str!("data/triangle_map.json"))?;
    for (arrow, image) in q.arrows().iter().zip(&phi.arrows) {
        println!("φ({}) = {image}", arrow.name);
    }
    let report = check_automorphism(&q, &phi, Some(2))?;
    println!(
        "dimension {}, multiplicative {}, invertible {}, order {:?}",
        report.dimension, report.multiplicative, report.invertible, report.order
    );
    Ok(())
}

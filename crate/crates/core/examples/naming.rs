//! Letter names: one canonical spelling per object.

use euclid_kernel::naming::{canonicalize, contract, sides_of, vertex_of, NameKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for raw in ["BA", "AB"] {
        println!(
            "segment {raw:<5} -> {}",
            canonicalize(NameKind::Segment, raw)?
        );
    }
    // rotations and reflections of a polygon name the same polygon
    for raw in ["DABC", "CBAD", "BCDA"] {
        println!(
            "polygon {raw:<5} -> {}",
            canonicalize(NameKind::Polygon, raw)?
        );
    }
    println!(
        "angle   CBA   -> {} (vertex {})",
        canonicalize(NameKind::Angle, "CBA")?,
        vertex_of("CBA")?
    );

    let sides: Vec<String> = sides_of("ABC")?.iter().map(|s| s.to_string()).collect();
    println!("sides of ABC: {}", sides.join(", "));

    match contract("AB", "BD") {
        Some(s) => println!("AB, BD contract to {s}"),
        None => println!("AB, BD do not contract"),
    }
    println!("AB, DB contract: {:?}", contract("AB", "DB"));

    if let Err(e) = canonicalize(NameKind::Polygon, "ABA") {
        println!("ABA: {e}");
    }
    Ok(())
}

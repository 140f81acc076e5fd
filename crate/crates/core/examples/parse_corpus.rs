//! Parse a theory file, list its items and show how errors are reported.
//!
//! ```text
//! cargo run --example parse_corpus [file.euclid]
//! ```

use euclid_kernel::lang::ast::Item;
use euclid_kernel::lang::{parse, print_theory};

fn main() {
    let source = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")),
        None => euclid_kernel::BOOK1.to_string(),
    };
    let theory = match parse(&source) {
        Ok(t) => t,
        Err(diags) => {
            for d in diags {
                eprintln!("{d}");
            }
            std::process::exit(2);
        }
    };
    println!("theory {:?}", theory.name);
    for item in &theory.items {
        match item {
            Item::Primitive(p) => println!("  primitive {}: {}", p.number, p.enunciation.prose),
            Item::Proposition(p) => println!(
                "  {} {}: {} construction step(s), {} proof step(s)",
                p.kind.keyword(),
                p.number,
                p.construction.len(),
                p.proof.len()
            ),
        }
    }

    // A proof placed before its construction.
    let broken = source.replacen("construction {", "proof {\n  }\n  construction {", 1);
    if let Err(diags) = parse(&broken) {
        println!("\nwith an early proof block:");
        for d in diags.iter().take(3) {
            println!("  {d}");
        }
    }

    let printed = print_theory(&theory);
    println!(
        "\npretty-printed form re-parses to the same tree: {}",
        parse(&printed).as_ref() == Ok(&theory)
    );
}

//! Check the bundled corpus (or a file) and print each report with its
//! traces.
//!
//! ```text
//! cargo run --example check_book1 [file.euclid]
//! ```

use euclid_kernel::checker::check_theory;
use euclid_kernel::lang::parse;

fn main() {
    let source = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")),
        None => euclid_kernel::BOOK1.to_string(),
    };
    let theory = parse(&source).unwrap_or_else(|diags| {
        for d in &diags {
            eprintln!("{d}");
        }
        std::process::exit(2)
    });
    let report = check_theory(&theory);
    print!("{}", report.render_text(true));
    for r in &report.reports {
        let rules: Vec<&str> = r.deduction_trace.iter().map(|n| n.rule.as_str()).collect();
        println!("{} rules: {}", r.number, rules.join(" "));
    }
}

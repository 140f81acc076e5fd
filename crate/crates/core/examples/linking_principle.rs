//! Corrupt the corpus in a few ways and show what the checker reports.

use euclid_kernel::checker::check_theory;
use euclid_kernel::lang::parse;
use euclid_kernel::BOOK1;

fn main() {
    let cases = [
        ("meet step deleted", "    let C = meet(c1, c2)\n", ""),
        (
            "circles without a common radius",
            "    let c2 = circle(B, BA)\n",
            "    let D = extend(AB, B)\n    let c2 = circle(B, BD)\n",
        ),
        (
            "isosceles hypothesis dropped",
            "  isosceles ABC apex A\n  let D",
            "  given triangle ABC\n  let D",
        ),
        (
            "forward citation",
            "let D = by 1.1(AB)",
            "let D = by 1.3(AB)",
        ),
        ("theorem closed with qed-do", "  qed-show \"", "  qed-do \""),
    ];
    for (name, from, to) in cases {
        println!("== {name}");
        let source = BOOK1.replacen(from, to, 1);
        match parse(&source) {
            Err(diags) => {
                for d in diags {
                    println!("  parse error {d}");
                }
            }
            Ok(theory) => {
                let report = check_theory(&theory);
                for r in report.reports.iter().filter(|r| !r.is_verified()) {
                    for d in &r.diagnostics {
                        println!("  {} {d}", r.number);
                    }
                }
                println!("  {}", report.summary());
            }
        }
    }
}

//! Repeatable patterns: the built-in optimal ones, witnesses assembled from
//! them, and a scan for every repeatable pattern inside a small window.
//!
//!     cargo run --release --example patterns

use redmax::patterns::{search_patterns, PatternFamily, RepeatablePattern};

fn main() -> redmax::Result<()> {
    for k in 1..=3 {
        let fam = PatternFamily::builtin(k)?;
        let p = &fam.pattern;
        println!(
            "k={k}: {} shift {}  density {}  repeatable {}",
            p.base,
            p.d,
            p.density(),
            p.is_repeatable()?
        );
        for n in [k + 5, 2 * k + 9] {
            let w = fam.assemble_witness(n)?;
            println!("  n={n:>2}: {} steps  {w}", w.steps());
        }
    }

    let bad = RepeatablePattern::parse("12-13-23", 1)?;
    println!(
        "\n12-13-23 with shift 1 repeatable: {}",
        bad.is_repeatable()?
    );

    let found = search_patterns(2, 7)?;
    let best = found.iter().map(|p| p.density()).max();
    println!(
        "{} repeatable k=2 patterns inside [1,7], best density {best:?}",
        found.len()
    );
    Ok(())
}

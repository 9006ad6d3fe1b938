//! Asymptotic densities c_k from the piece graph, with the optimal cycle and
//! the repeatable pattern read off it.
//!
//!     cargo run --release --example ck -- 5

use redmax::caps::Caps;
use redmax::gwd::compute_ck;

fn main() -> redmax::Result<()> {
    let top: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    // the default cap keeps k <= 3 exact; raise it since we ask explicitly
    let caps = Caps {
        tk_k: top,
        ..Caps::from_env()?
    };
    for k in 1..=top {
        let t = std::time::Instant::now();
        let r = compute_ck(k, &caps)?;
        let value = r
            .value
            .map_or(format!("in [{}, {}]", r.lower, r.upper), |v| v.to_string());
        println!(
            "c_{k} = {value}  ({} states, {} moves, {:.2?})",
            r.nodes,
            r.edges,
            t.elapsed()
        );
        if let Some(p) = &r.pattern {
            println!(
                "  cycle   {}",
                p.cycle
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!("  pattern {} (shift {})", p.pattern.base, p.pattern.d);
        }
    }
    Ok(())
}

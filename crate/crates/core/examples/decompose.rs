//! Weight bookkeeping for k = 3: unit weights against their limits, and the
//! interval decomposition that absorbs every overweight unit.
//!
//!     cargo run --release --example decompose -- 14

use redmax::arcdiag::{audit_k3_path, wtlim, ArcDiagram};
use redmax::patterns::PatternFamily;

fn main() -> redmax::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    let path = PatternFamily::builtin(3)?.assemble_witness(n)?;
    let d = ArcDiagram::from_path(&path)?;
    println!("{path}  ({} steps)", path.steps());
    println!("unit  weight  limit");
    for (i, w) in d.unit_weights().iter().enumerate() {
        let u = i as u32 + 1;
        println!("{u:>2}-{:<2} {w:>6}  {}", u + 1, wtlim(n, u, u + 1)?);
    }
    let dec = audit_k3_path(&path)?;
    if dec.intervals.is_empty() {
        println!("every unit is within its limit");
    }
    for p in &dec.intervals {
        println!(
            "[{}, {}] case {}: weight {} <= {}",
            p.lo,
            p.hi,
            p.case,
            d.weight_int(p.lo, p.hi)?,
            wtlim(n, p.lo, p.hi)?
        );
    }
    Ok(())
}

//! The weak-order dynamic program in its three modes: the most and the
//! fewest copies of `s_k`, and the most copies of `s_k` or `s_{n-k}` together.
//!
//!     cargo run --release --example weak_order -- 8

use redmax::caps::Caps;
use redmax::search::{max_multiplicity_weak_order_dp, DpMode};

fn main() -> redmax::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let caps = Caps::from_env()?;
    println!(" k  max  min  max-pair");
    for k in 1..n {
        let v = |mode| max_multiplicity_weak_order_dp(k, n, mode, &caps).map(|r| r.value);
        println!(
            "{k:>2}  {:>3}  {:>3}  {:>8}",
            v(DpMode::Max)?,
            v(DpMode::Min)?,
            v(DpMode::MaxPair)?
        );
    }
    Ok(())
}

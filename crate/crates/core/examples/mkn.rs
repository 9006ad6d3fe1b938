//! M(k,n) by pruned path search, with the witness path and the bounds it
//! must respect.
//!
//!     cargo run --release --example mkn -- 4 12

use redmax::search::{max_multiplicity_path_dfs, BoundReport, DfsOptions, Witness};

fn main() -> redmax::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let k = args.next().flatten().unwrap_or(3);
    let top = args.next().flatten().unwrap_or(9);
    let opts = DfsOptions {
        jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        ..DfsOptions::default()
    };
    println!(" n  M(k,n)  series  sqrt   witness");
    for n in k + 1..=top {
        let t = std::time::Instant::now();
        let r = max_multiplicity_path_dfs(k, n, &opts)?;
        let b = BoundReport::new(k, n, r.value)?;
        let w = match &r.witness {
            Some(Witness::Path(p)) => p.to_string(),
            Some(Witness::Word(w)) => format!("{w:?}"),
            None => "-".into(),
        };
        println!(
            "{n:>2}  {:>6}  {:>6}  {:>5.1}  {w}  ({:.1?})",
            r.value,
            b.series_bound.to_string(),
            b.sqrt_bound,
            t.elapsed()
        );
    }
    Ok(())
}

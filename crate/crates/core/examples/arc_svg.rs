//! Arc diagrams of optimal paths written as SVG, plain and bicolored.
//!
//!     cargo run --example arc_svg -- /tmp/arcs

use std::path::PathBuf;

use redmax::arcdiag::{build_bicolored, render_svg, ArcDiagram};
use redmax::patterns::PatternFamily;

fn main() -> redmax::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "arcs".into()));
    std::fs::create_dir_all(&dir)?;
    for (k, n) in [(2, 8), (3, 12)] {
        let path = PatternFamily::builtin(k)?.assemble_witness(n)?;
        let plain = dir.join(format!("k{k}_n{n}.svg"));
        std::fs::write(&plain, render_svg(&ArcDiagram::from_path(&path)?))?;
        println!("{}  {path}", plain.display());
        if k == 3 {
            let two = dir.join(format!("k{k}_n{n}_bicolored.svg"));
            std::fs::write(&two, render_svg(&build_bicolored(&path)?))?;
            println!("{}", two.display());
        }
    }
    Ok(())
}

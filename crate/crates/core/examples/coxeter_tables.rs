//! Least multiplicity of every generator in reduced words of `w_0`, for each
//! crystallographic type, with the lengths of the quotient iterates.
//!
//!     cargo run --release --example coxeter_tables

use redmax::coxeter::{CoxeterSystem, CoxeterType};

fn main() -> redmax::Result<()> {
    let types = ["A5", "B4", "B6", "D5", "D6", "E6", "E7", "E8", "F4", "G2"];
    for t in types {
        let ty: CoxeterType = t.parse()?;
        let sys = CoxeterSystem::new(ty)?;
        let v = sys.min_multiplicities()?;
        println!("{t:<3} {:>3} roots  {v:?}", sys.positive_roots.len());
    }
    let e8 = CoxeterSystem::new(CoxeterType::E8)?;
    println!(
        "\nE8, s_3: iterate lengths {:?}",
        e8.min_multiplicity_trace(3)?
    );
    Ok(())
}

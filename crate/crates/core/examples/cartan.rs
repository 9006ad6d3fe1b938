//! Restricted Cartan matrices: the explicit ones for B_n and F_4 checked
//! exactly, then the feasibility search on G_2 and H_4.
//!
//!     cargo run --release --example cartan

use redmax::coxeter::{cartan_feasibility, explicit_cartan, verify_cartan, CoxeterType};

fn main() -> redmax::Result<()> {
    for (ty, v) in [
        (CoxeterType::B(5), vec![5, 5, 4, 3, 2]),
        (CoxeterType::F4, vec![3, 6, 6, 3]),
    ] {
        let (ok, av) = verify_cartan(ty, &explicit_cartan(ty)?, &v)?;
        let av: Vec<String> = av.iter().map(|x| x.to_string()).collect();
        println!("{ty} v={v:?}: Av = ({}) nonnegative {ok}", av.join(", "));
    }
    for (ty, v) in [
        (CoxeterType::G2, vec![3, 3]),
        (CoxeterType::H4, vec![5, 10, 15, 15]),
        (CoxeterType::D(6), vec![2, 3, 4, 5, 3, 3]),
    ] {
        let r = cartan_feasibility(ty, &v)?;
        println!(
            "\n{ty} v={v:?}: worst-row violation {:.6}",
            r.min_max_violation
        );
        match &r.witness {
            Some(w) => {
                for row in &w.entries {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    println!("  [{}]", cells.join(", "));
                }
            }
            None => println!("  no exact witness"),
        }
    }
    Ok(())
}

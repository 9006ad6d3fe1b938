//! Generalized wiring diagrams: rewrite a wiring diagram into a simple one,
//! read off its state sequence, and sample the monotone path at level k.
//!
//!     cargo run --example simplify

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use redmax::gwd::{decode_states, from_word, gwd_to_path, random_reduced, simplify};

fn main() -> redmax::Result<()> {
    // an ordinary reduced word of S_6 seen as a diagram with k = 2
    let d = from_word(2, &[2, 1, 2, 3, 2, 4, 3, 2, 1, 2, 5, 4, 3, 2]);
    println!("input   {}", serde_json::to_string(&d)?);
    println!("simple? {}", d.is_simple()?);
    let s = simplify(&d)?;
    println!("output  {}", serde_json::to_string(&s)?);
    println!(
        "level-2 crossings {} -> {}",
        d.level_k_count(),
        s.level_k_count()
    );
    for st in s.states()? {
        println!("  {st:?}");
    }
    println!("path {}", gwd_to_path(&s)?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r = random_reduced(3, 30, 7, 0.25, &mut rng);
    let s = simplify(&r)?;
    let replay = decode_states(&s.states()?, 3)? == s.events;
    println!(
        "\nrandom k=3: {} events, {} falls -> {} events, {} falls; replay exact: {replay}",
        r.events.len(),
        r.falls(),
        s.events.len(),
        s.falls()
    );
    Ok(())
}

//! Reduced words and monotone weakly separated paths: read the path off a
//! word, rebuild a word from the path, and complete it to `w_0`.
//!
//!     cargo run --example word_path

use redmax::path::{path_to_word, word_to_path, MonotonePath};
use redmax::word::{complete_to_w0, is_reduced, Word};

fn main() -> redmax::Result<()> {
    // a reduced prefix, completed greedily
    let w = Word::new(5, vec![2, 1, 3, 2])?;
    let w0 = complete_to_w0(&w)?;
    println!("word   {:?}", w0.letters);
    println!("count of s_2: {}", w0.count(2));
    let p = word_to_path(&w0, 2)?;
    println!("path   {p}");

    let q = MonotonePath::parse_compact(6, "12-13-23-34-35-45-56")?;
    let back = path_to_word(&q)?;
    println!("\n{q} -> {:?}", back.letters);
    println!(
        "reduced: {}, roundtrip: {}",
        is_reduced(&back)?,
        word_to_path(&back, 2)? == q
    );
    Ok(())
}

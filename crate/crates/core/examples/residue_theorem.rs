//! Residues of a random log form on the line sum to zero, and so does the
//! class of the boundary of a random 1-chain.

use polaris::chains::{boundary, hp0_class};
use polaris::residue::{p1_residue_sum, residue_all};
use polaris::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> polaris::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1));
    let w = sample::line_form(&mut rng, 4, true)?;
    println!("form {}", w.render());
    for piece in residue_all(&w)? {
        println!("  {}", piece.render());
    }
    println!("sum  {}", p1_residue_sum(&w)?.render().0);

    let c = sample::line_chain(&mut rng)?;
    let d = boundary(&c)?;
    println!("chain    {}", c.render());
    println!("boundary {}", d.render());
    println!("class    {}", hp0_class(&d)?.render().0);
    Ok(())
}

// Trace a word on a long point and find where the modified prefix is narrowest.

use vword::lab::narrow_trace;
use vword::{Bitstring, GeneratingSet, Word};

pub fn run_example() -> vword::Result<()> {
    let h = GeneratingSet::higman();
    let w = Word::parse("g1 g2 g3 g4 g2");
    let np = narrow_trace(&h, &w, &Bitstring::zeros(2 * w.len()))?;
    for (i, (p, z)) in np.trace.points.iter().zip(&np.zs).enumerate() {
        let mark = if i == np.k { "  <- narrowest" } else { "" };
        println!("x{i} = {p:<12} z{i} = {z:?}{mark}");
    }
    println!("untouched suffix s = {:?}, min |z_k| = {}", np.s, np.narrow_len());
    assert!(np.narrow_len() <= h.maxlen());
    Ok(())
}

fn main() -> vword::Result<()> {
    run_example()
}

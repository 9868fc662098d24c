// Decide a few words over Higman's generators and show the witness for the
// non-trivial ones.

use vword::{Decider, GeneratingSet, Word};

pub fn run_example() -> vword::Result<()> {
    let h = GeneratingSet::higman();
    let decider = Decider::new(&h)?;
    for text in ["g1 g1", "g1", "g2 g3 g3 g2", "g1 g2 g1 g2", ""] {
        let w = Word::parse(text);
        match decider.cowp_decide(&w)? {
            None => println!("{:<14} trivial", format!("[{text}]")),
            Some(wit) => println!(
                "{:<14} non-trivial: rotation {} moves z·0^ω with z = {}",
                format!("[{text}]"),
                wit.rotation_index,
                wit.z
            ),
        }
        assert_eq!(decider.wp_decide(&w)?, vword::wp_oracle(&h, &w)?);
    }
    Ok(())
}

fn main() -> vword::Result<()> {
    run_example()
}

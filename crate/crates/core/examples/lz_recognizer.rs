// Build the push-down recognizer for one point, trace a run, and export it.

use vword::{build_lz, lz_direct, Bitstring, GeneratingSet, Word, ENDMARKER};

pub fn run_example() -> vword::Result<()> {
    let h = GeneratingSet::higman();
    let z: Bitstring = "0".parse()?;
    let m = build_lz(&z, &h)?;
    println!("{} states, {} transitions", m.dpda().num_states(), m.dpda().transitions().len());
    assert!(m.dpda().validate_determinism().is_empty());

    let w = Word::parse("g2");
    let mut input: Vec<String> = w.reversed().letters().to_vec();
    input.push(ENDMARKER.to_string());
    let run = m.dpda().run(&input)?;
    for c in &run.trace {
        println!("  {:<3} {:<6} consumed {}", c.state, c.stack, c.consumed);
    }
    println!("accepted: {}", run.accepted);
    assert_eq!(run.accepted, lz_direct(&z, &h, &w)?);

    let dot = m.dpda().to_dot();
    println!("dot export: {} lines", dot.lines().count());
    Ok(())
}

fn main() -> vword::Result<()> {
    run_example()
}

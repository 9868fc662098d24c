// Load a generating set from JSON and decide words over it.

use vword::{wp_oracle, Decider, GeneratingSet, Word};

const GENS: &str = r#"{
  "generators": {
    "a": [["0", "1"], ["1", "0"]],
    "b": [["0", "00"], ["10", "01"], ["11", "1"]],
    "B": [["00", "0"], ["01", "10"], ["1", "11"]]
  }
}"#;

pub fn run_example() -> vword::Result<()> {
    let gamma = GeneratingSet::from_json(GENS)?;
    println!("{} generators, maxlen {}", gamma.len(), gamma.maxlen());
    let decider = Decider::new(&gamma)?;
    for text in ["b B", "B b a a", "b b B", "a b a B"] {
        let w = Word::parse(text);
        let trivial = decider.wp_decide(&w)?;
        println!("{text:<10} {}", if trivial { "trivial" } else { "non-trivial" });
        assert_eq!(trivial, wp_oracle(&gamma, &w)?);
    }
    assert!(GeneratingSet::from_json(r#"{"generators": {"x": [["0", "1"]]}}"#).is_err());
    Ok(())
}

fn main() -> vword::Result<()> {
    run_example()
}

// Build, compose, invert and reduce prefix-code tables.

use vword::{Bitstring, TableElement};

pub fn run_example() -> vword::Result<()> {
    let b = |s: &str| s.parse::<Bitstring>();
    let swap = TableElement::parse_table(&[(b("0")?, b("1")?), (b("1")?, b("0")?)])?;
    let shift = TableElement::parse_table(&[(b("00")?, b("00")?), (b("01")?, b("1")?), (b("1")?, b("01")?)])?;

    // `f.compose(g)` applies g first
    let t = shift.compose(&swap);
    println!("shift ∘ swap = {t}");
    for x in Bitstring::all_of_len(3) {
        assert_eq!(t.apply(&x), shift.apply(&swap.apply(&x).unwrap()));
    }
    println!("inverse      = {}", t.invert());
    assert!(t.compose(&t.invert()).is_identity());

    // an over-split table reduces back to the identity
    let split: Vec<_> = Bitstring::all_of_len(2).map(|x| (x.clone(), x)).collect();
    let r = TableElement::reduce(split);
    println!("reduced      = {r}");
    assert_eq!(r, TableElement::identity());

    match TableElement::parse_table(&[(b("0")?, b("1")?), (b("01")?, b("0")?)]) {
        Err(e) => println!("rejected     : {e}"),
        Ok(_) => unreachable!("not a prefix code"),
    }
    Ok(())
}

fn main() -> vword::Result<()> {
    run_example()
}

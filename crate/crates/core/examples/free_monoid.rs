// The trivial words form a free monoid; list a basis and factor a product.

use vword::lab::{all_free_factorizations, check_bifix, factor_wp, free_generators};
use vword::{GeneratingSet, Word};

pub fn run_example() -> vword::Result<()> {
    let h = GeneratingSet::higman();
    let gens = free_generators(&h, 4);
    println!("{} free generators of length ≤ 4:", gens.len());
    for g in &gens {
        println!("  {g}");
    }
    assert!(check_bifix(&h, 4));

    let w = gens[0].concat(&gens[gens.len() - 1]).concat(&gens[0]);
    let factors = factor_wp(&h, &w)?;
    println!("{w} = {}", factors.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join(" · "));
    assert_eq!(all_free_factorizations(&h, &w)?, vec![factors]);
    assert!(factor_wp(&h, &Word::parse("g1")).is_err());
    Ok(())
}

fn main() -> vword::Result<()> {
    run_example()
}

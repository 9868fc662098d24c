// Time the decider on worst-case trivial words and fit the log-log slope.

use vword::bench::{run_bench, WordFamily};
use vword::{Decider, GeneratingSet};

pub fn run_example() -> vword::Result<()> {
    let h = GeneratingSet::higman();
    let d = Decider::new(&h)?;
    let report = run_bench(&d, &[64, 128, 256, 512], 1, 7, WordFamily::Identity)?;
    print!("{}", report.to_text());
    if let Some(slope) = report.slope_mean {
        println!("expect a slope near 2 on an optimized build");
        assert!(slope.is_finite());
    }
    Ok(())
}

fn main() -> vword::Result<()> {
    run_example()
}

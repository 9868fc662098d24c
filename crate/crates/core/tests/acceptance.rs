//! Exit criteria. Run with `cargo test -p vword --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vword::bench::{run_bench, WordFamily};
use vword::lab::{all_words, check_bifix, factor_wp, free_generators, narrow_trace, random_word};
use vword::{
    build_lz, in_lz, lz_direct, rotate, Bitstring, Decider, Error, GeneratingSet, Word, wp_oracle,
};

struct Outcome {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn higman_words_up_to(n: usize) -> Vec<Word> {
    let h = GeneratingSet::higman();
    let names: Vec<&str> = h.names().collect();
    all_words(&names, n)
}

fn is_nondeterminism(e: &Error) -> bool {
    matches!(e, Error::NondeterminismDetected { .. })
}

/// Decider vs oracle, exhaustive to length 6 and 1000 random words of length ≤ 40.
fn criterion_1(dynamic_nondet: &mut usize) -> Outcome {
    let h = GeneratingSet::higman();
    let d = Decider::new(&h).unwrap();
    let exhaustive: Vec<Word> = higman_words_up_to(6).into_iter().filter(|w| !w.is_empty()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let random: Vec<Word> = (0..1000).map(|_| {
        let len = rng.gen_range(0..=40);
        random_word(&h, len, &mut rng)
    }).collect();

    let mut disagreements = 0;
    let mut trivial = 0;
    for w in exhaustive.iter().chain(&random) {
        match d.wp_decide(w) {
            Ok(v) => {
                trivial += usize::from(v);
                if v != wp_oracle(&h, w).unwrap() {
                    disagreements += 1;
                }
            }
            Err(e) => {
                *dynamic_nondet += usize::from(is_nondeterminism(&e));
                disagreements += 1;
            }
        }
    }
    Outcome {
        id: 1,
        name: "decider agrees with oracle",
        passed: exhaustive.len() == 5460 && disagreements == 0,
        detail: format!(
            "{} exhaustive + {} random words, {trivial} trivial, {disagreements} disagreements",
            exhaustive.len(),
            random.len()
        ),
    }
}

/// Recognizer vs direct computation for z ∈ {0,1}² and 1 ≤ |w| ≤ 6.
fn criterion_2(dynamic_nondet: &mut usize) -> Outcome {
    let h = GeneratingSet::higman();
    let words: Vec<Word> = higman_words_up_to(6).into_iter().filter(|w| !w.is_empty()).collect();
    let mut disagreements = 0;
    let mut members = 0;
    for z in Bitstring::all_of_len(2) {
        for w in &words {
            match in_lz(&z, &h, w) {
                Ok(v) => {
                    members += usize::from(v);
                    if v != lz_direct(&z, &h, w).unwrap() {
                        disagreements += 1;
                    }
                }
                Err(e) => {
                    *dynamic_nondet += usize::from(is_nondeterminism(&e));
                    disagreements += 1;
                }
            }
        }
    }
    Outcome {
        id: 2,
        name: "recognizer agrees with direct computation",
        passed: disagreements == 0,
        detail: format!("{} (z, w) pairs, {members} members, {disagreements} disagreements", 4 * words.len()),
    }
}

fn criterion_3(dynamic_nondet: usize) -> Outcome {
    let h = GeneratingSet::higman();
    let mut conflicts = 0;
    let mut machines = 0;
    for z in Bitstring::all_up_to(3).filter(|z| !z.is_empty()) {
        conflicts += build_lz(&z, &h).unwrap().dpda().validate_determinism().len();
        machines += 1;
    }
    Outcome {
        id: 3,
        name: "determinism certification",
        passed: machines == 14 && conflicts == 0 && dynamic_nondet == 0,
        detail: format!("{machines} machines, {conflicts} static conflicts, {dynamic_nondet} dynamic"),
    }
}

fn criterion_4() -> Outcome {
    let h = GeneratingSet::higman();
    let sweep = Decider::new(&h).unwrap().z_values().count();
    let states = build_lz(&Bitstring::zeros(2), &h).unwrap().dpda().num_states();
    Outcome {
        id: 4,
        name: "structural constants",
        passed: h.maxlen() == 2 && sweep == 4 && states == 3,
        detail: format!("maxlen = {}, z-sweep = {sweep}, states = {states}", h.maxlen()),
    }
}

fn criterion_5() -> Outcome {
    let h = GeneratingSet::higman();
    let d = Decider::new(&h).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    let mut violations = 0;
    let mut checked = 0;
    for _ in 0..500 {
        let len = rng.gen_range(0..=30);
        let w = random_word(&h, len, &mut rng);
        let base = d.wp_decide(&w).unwrap();
        for j in 0..=w.len() {
            checked += 1;
            if d.wp_decide(&rotate(&w, j).unwrap()).unwrap() != base {
                violations += 1;
            }
        }
        checked += 1;
        if d.wp_decide(&w.reversed()).unwrap() != base {
            violations += 1;
        }
    }
    Outcome {
        id: 5,
        name: "cyclic and reversal closure",
        passed: violations == 0,
        detail: format!("500 words, {checked} comparisons, {violations} violations"),
    }
}

fn criterion_6() -> Outcome {
    let h = GeneratingSet::higman();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    let mut violations = 0;
    let mut worst = 0;
    for _ in 0..500 {
        let len = rng.gen_range(0..=8);
        let w = random_word(&h, len, &mut rng);
        let np = narrow_trace(&h, &w, &Bitstring::zeros(2 * len)).unwrap();
        worst = worst.max(np.narrow_len());
        if np.narrow_len() > 2 {
            violations += 1;
        }
    }
    Outcome {
        id: 6,
        name: "narrow point",
        passed: violations == 0,
        detail: format!("500 traces, max min_k |z_k| = {worst}, {violations} violations"),
    }
}

fn criterion_7() -> Outcome {
    let h = GeneratingSet::higman();
    let gens = free_generators(&h, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(0xC7);
    let mut violations = 0;
    // products of free generators are the whole word problem
    let sample_wp = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(0..=3);
        (0..k).fold(Word::empty(), |acc, _| acc.concat(&gens[rng.gen_range(0..gens.len())]))
    };
    for _ in 0..300 {
        let u = sample_wp(&mut rng);
        let v = sample_wp(&mut rng);
        let lhs = factor_wp(&h, &u.concat(&v)).unwrap();
        let mut rhs = factor_wp(&h, &u).unwrap();
        rhs.extend(factor_wp(&h, &v).unwrap());
        if lhs != rhs {
            violations += 1;
        }
    }
    let bifix = check_bifix(&h, 4);
    Outcome {
        id: 7,
        name: "free submonoid with bifix basis",
        passed: violations == 0 && bifix,
        detail: format!("300 factorization identities, {violations} violations, bifix(4) = {bifix}"),
    }
}

fn criterion_8() -> Outcome {
    let h = GeneratingSet::higman();
    let d = Decider::new(&h).unwrap();
    let lengths = [128, 256, 512, 1024, 2048, 4096];
    let random = run_bench(&d, &lengths, 30, 0xC8, WordFamily::Random).unwrap();
    let worst = run_bench(&d, &lengths, 1, 0xC8, WordFamily::Identity).unwrap();
    let slope = random.slope_mean.unwrap();
    let worst_slope = worst.slope_mean.unwrap();
    Outcome {
        id: 8,
        name: "quadratic scaling",
        passed: slope <= 2.3 && worst_slope <= 2.3,
        detail: format!("slope {slope:.3} on random words, {worst_slope:.3} on identity words (bound 2.3)"),
    }
}

#[test]
fn acceptance_criteria() {
    let mut dynamic_nondet = 0;
    let mut outcomes = vec![criterion_1(&mut dynamic_nondet), criterion_2(&mut dynamic_nondet)];
    outcomes.push(criterion_3(dynamic_nondet));
    outcomes.push(criterion_4());
    outcomes.push(criterion_5());
    outcomes.push(criterion_6());
    outcomes.push(criterion_7());
    outcomes.push(criterion_8());

    for o in &outcomes {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("[{verdict}] criterion {}: {} ({})", o.id, o.name, o.detail);
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

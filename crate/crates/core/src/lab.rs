//! Desk-scale checks of the language-theoretic facts the decider rests on:
//! word problems are free submonoids generated by bifix codes, cyclic closure
//! commutes with reversal and union, and every computation of V on a long
//! enough point passes through a narrow point.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::Bitstring;
use crate::decider::{rotate, Decider};
use crate::error::{Error, Result};
use crate::genset::{element_of_indices, GeneratingSet, Word};
use crate::lz::{lz_direct_indices, LzCache};
use crate::pda::RunOptions;
use crate::table::TableElement;

/// The points `x_0 ↦ x_1 ↦ … ↦ x_n` visited by a word, one letter at a time.
#[derive(Clone, Debug, Serialize)]
pub struct ComputationTrace {
    /// Letter applied and length of the domain codeword it matched.
    pub steps: Vec<(String, usize)>,
    pub x0: Bitstring,
    pub points: Vec<Bitstring>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NarrowPoint {
    pub trace: ComputationTrace,
    /// Longest suffix of `x0` no step touches.
    pub s: Bitstring,
    /// `zs[i]` is `points[i]` with `s` removed.
    pub zs: Vec<Bitstring>,
    /// Index of the shortest `zs[i]` (first on ties).
    pub k: usize,
}

impl NarrowPoint {
    pub fn narrow_len(&self) -> usize {
        self.zs[self.k].len()
    }
}

/// Traces `w` on `x0` and locates the narrowest modified prefix.
pub fn narrow_trace(gamma: &GeneratingSet, w: &Word, x0: &Bitstring) -> Result<NarrowPoint> {
    let idx = gamma.resolve(w)?;
    let mut points = vec![x0.clone()];
    let mut steps = Vec::with_capacity(idx.len());
    let mut untouched = x0.len();
    for (step, &i) in idx.iter().rev().enumerate() {
        let x = points.last().expect("non-empty");
        let name = gamma.name_of(i);
        let (y, depth) = gamma.by_index(i).apply_with_depth(x).ok_or_else(|| Error::UndefinedStep {
            step,
            generator: name.to_string(),
            point: format!("{x:?}"),
        })?;
        untouched = untouched.min(x.len() - depth);
        steps.push((name.to_string(), depth));
        points.push(y);
    }

    let s = x0.slice(x0.len() - untouched..x0.len());
    let zs: Vec<Bitstring> = points
        .iter()
        .map(|p| {
            let cut = p.len() - untouched;
            debug_assert_eq!(p.slice(cut..p.len()), s);
            p.slice(0..cut)
        })
        .collect();
    let k = (0..zs.len()).min_by_key(|&i| zs[i].len()).expect("non-empty");
    Ok(NarrowPoint { trace: ComputationTrace { steps, x0: x0.clone(), points }, s, zs, k })
}

/// Words of length ≤ `n` over Γ, shortlex, paired with the element they represent.
fn words_with_elements(gamma: &GeneratingSet, n: usize, stop_at_identity: bool) -> Vec<(Vec<usize>, TableElement)> {
    let mut all = vec![(Vec::new(), TableElement::identity())];
    let mut level = all.clone();
    for _ in 0..n {
        let mut next = Vec::new();
        for (w, e) in &level {
            if stop_at_identity && !w.is_empty() && e.is_identity() {
                continue;
            }
            for i in 0..gamma.len() {
                let mut w2 = w.clone();
                w2.push(i);
                // appending on the right: the new letter acts first
                next.push((w2, e.compose(gamma.by_index(i))));
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn to_word(gamma: &GeneratingSet, idx: &[usize]) -> Word {
    Word::new(idx.iter().map(|&i| gamma.name_of(i)))
}

/// All words of length ≤ `n` representing the identity, shortlex.
pub fn enumerate_wp(gamma: &GeneratingSet, n: usize) -> Vec<Word> {
    words_with_elements(gamma, n, false)
        .into_iter()
        .filter(|(_, e)| e.is_identity())
        .map(|(w, _)| to_word(gamma, &w))
        .collect()
}

/// Non-empty identity words of length ≤ `n` with no proper non-empty identity prefix.
pub fn free_generators(gamma: &GeneratingSet, n: usize) -> Vec<Word> {
    words_with_elements(gamma, n, true)
        .into_iter()
        .filter(|(w, e)| !w.is_empty() && e.is_identity())
        .map(|(w, _)| to_word(gamma, &w))
        .collect()
}

/// Splits an identity word by repeatedly cutting its shortest non-empty identity prefix.
pub fn factor_wp(gamma: &GeneratingSet, w: &Word) -> Result<Vec<Word>> {
    let idx = gamma.resolve(w)?;
    let mut factors = Vec::new();
    let mut start = 0;
    let mut acc = TableElement::identity();
    for (pos, &i) in idx.iter().enumerate() {
        acc = acc.compose(gamma.by_index(i));
        if acc.is_identity() {
            factors.push(to_word(gamma, &idx[start..=pos]));
            start = pos + 1;
            acc = TableElement::identity();
        }
    }
    if start != idx.len() {
        return Err(Error::NotInWp);
    }
    Ok(factors)
}

/// Every factorization of `w` into free generators, found by exhaustive search.
pub fn all_free_factorizations(gamma: &GeneratingSet, w: &Word) -> Result<Vec<Vec<Word>>> {
    let idx = gamma.resolve(w)?;
    let n = idx.len();
    // minimal[j] lists every i > j with idx[j..i] a free generator
    let minimal: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            let mut ends = Vec::new();
            for i in j + 1..=n {
                let seg = &idx[j..i];
                let proper_prefix_trivial = (j + 1..i).any(|p| element_of_indices(gamma, &idx[j..p]).is_identity());
                if !proper_prefix_trivial && element_of_indices(gamma, seg).is_identity() {
                    ends.push(i);
                }
            }
            ends
        })
        .collect();

    fn walk(j: usize, n: usize, minimal: &[Vec<usize>], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if j == n {
            out.push(cur.clone());
            return;
        }
        for &i in &minimal[j] {
            cur.push((j, i));
            walk(i, n, minimal, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    walk(0, n, &minimal, &mut Vec::new(), &mut raw);
    Ok(raw
        .into_iter()
        .map(|f| f.into_iter().map(|(a, b)| to_word(gamma, &idx[a..b])).collect())
        .collect())
}

/// True iff no free generator of length ≤ `n` is a proper prefix or suffix of another.
pub fn check_bifix(gamma: &GeneratingSet, n: usize) -> bool {
    let gens = free_generators(gamma, n);
    gens.iter().all(|a| {
        gens.iter().all(|b| a == b || !(a.is_prefix_of(b) || a.is_suffix_of(b)))
    })
}

/// All rotations of `w`.
pub fn cyc_set(w: &Word) -> BTreeSet<Word> {
    if w.is_empty() {
        return BTreeSet::from([Word::empty()]);
    }
    (0..w.len()).map(|j| rotate(w, j).expect("in range")).collect()
}

pub fn cyc_of_language(lang: &BTreeSet<Word>) -> BTreeSet<Word> {
    lang.iter().flat_map(cyc_set).collect()
}

/// `cyc(w^rev) = (cyc(w))^rev` for every sampled word.
pub fn rev_cyc_commute_check(sample: &[Word]) -> bool {
    sample.iter().all(|w| {
        let lhs = cyc_set(&w.reversed());
        let rhs: BTreeSet<Word> = cyc_set(w).iter().map(Word::reversed).collect();
        lhs == rhs
    })
}

/// `cyc(L1 ∪ L2) = cyc(L1) ∪ cyc(L2)`.
pub fn cyc_union_check(l1: &BTreeSet<Word>, l2: &BTreeSet<Word>) -> bool {
    let union: BTreeSet<Word> = l1.union(l2).cloned().collect();
    let lhs = cyc_of_language(&union);
    let rhs: BTreeSet<Word> = cyc_of_language(l1).union(&cyc_of_language(l2)).cloned().collect();
    lhs == rhs
}

/// Within a finite universe closed under rotation, a rotation-closed `lang` has a rotation-closed complement.
pub fn complement_closure_check(universe: &BTreeSet<Word>, lang: &BTreeSet<Word>) -> bool {
    let closed = |l: &BTreeSet<Word>| l.iter().all(|w| cyc_set(w).is_subset(l));
    if !closed(lang) {
        return true;
    }
    let complement: BTreeSet<Word> = universe.difference(lang).cloned().collect();
    closed(&complement)
}

/// Every word of length ≤ `n` over `alphabet`, shortlex.
pub fn all_words(alphabet: &[&str], n: usize) -> Vec<Word> {
    let mut all = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..n {
        level = level
            .iter()
            .flat_map(|w| alphabet.iter().map(move |a| w.concat(&Word::new([*a]))))
            .collect();
        all.extend(level.iter().cloned());
    }
    all
}

/// Uniformly random word of exactly `len` letters.
pub fn random_word(gamma: &GeneratingSet, len: usize, rng: &mut impl Rng) -> Word {
    let names: Vec<&str> = gamma.names().collect();
    Word::new((0..len).map(|_| *names.choose(rng).expect("non-empty generating set")))
}

/// A random identity word `u·u⁻¹`, spelled with inverse letters when Γ is closed under inverses
/// by name; over involutions this is `u·u^rev`.
pub fn random_identity_word(gamma: &GeneratingSet, half: usize, rng: &mut impl Rng) -> Option<Word> {
    let u = random_word(gamma, half, rng);
    let inverse_name = |name: &str| {
        let inv = gamma.get(name)?.invert();
        gamma.iter().find(|(_, e)| **e == inv).map(|(n, _)| n.to_string())
    };
    let inv: Option<Vec<String>> = u.reversed().letters().iter().map(|l| inverse_name(l)).collect();
    Some(u.concat(&Word::new(inv?)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub suite: String,
    pub rows: Vec<CheckRow>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), rows: Vec::new() }
    }

    pub fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.rows.push(CheckRow { name: name.to_string(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn merge(&mut self, other: Report) {
        self.rows.extend(other.rows);
    }

    pub fn to_text(&self) -> String {
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        for r in &self.rows {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {verdict}  {:width$}  {}", r.name, r.detail);
        }
        let failed = self.rows.iter().filter(|r| !r.passed).count();
        let _ = writeln!(out, "{} checks, {} failed", self.rows.len(), failed);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({
            "suite": self.suite,
            "passed": self.passed(),
            "rows": self.rows,
        }))
        .expect("serializable")
    }
}

/// Narrow point, free-monoid, and cyc/rev checks.
pub fn lemma_suite(gamma: &GeneratingSet, seed: u64) -> Result<Report> {
    let mut report = Report::new("lemmas");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut worst = 0;
    let mut violations = 0;
    for _ in 0..500 {
        let len = rng.gen_range(0..=8);
        let w = random_word(gamma, len, &mut rng);
        let x0 = Bitstring::zeros(len * gamma.maxlen());
        let np = narrow_trace(gamma, &w, &x0)?;
        worst = worst.max(np.narrow_len());
        if np.narrow_len() > gamma.maxlen() {
            violations += 1;
        }
    }
    report.record(
        "narrow-point",
        violations == 0,
        format!("500 traces, max narrow |z_k| = {worst}, bound {}", gamma.maxlen()),
    );

    let gens = free_generators(gamma, 4);
    report.record("bifix", check_bifix(gamma, 4), format!("{} free generators of length ≤ 4", gens.len()));

    let short: Vec<Word> = gens.iter().filter(|g| g.len() <= 2).cloned().collect();
    let mut fact_ok = true;
    for u in &short {
        for v in &short {
            let uv = u.concat(v);
            let expect: Vec<Word> = factor_wp(gamma, u)?.into_iter().chain(factor_wp(gamma, v)?).collect();
            let all = all_free_factorizations(gamma, &uv)?;
            fact_ok &= factor_wp(gamma, &uv)? == expect && all == vec![expect];
        }
    }
    report.record(
        "unique-factorization",
        fact_ok,
        format!("{} products of free generators, greedy = exhaustive", short.len() * short.len()),
    );

    let sample = all_words(&["a", "b"], 5);
    report.record("cyc-rev-commute", rev_cyc_commute_check(&sample), format!("{} words over {{a,b}}", sample.len()));

    let universe: BTreeSet<Word> = sample.iter().cloned().collect();
    let mut union_ok = true;
    let mut compl_ok = true;
    for _ in 0..50 {
        let pick = |rng: &mut ChaCha8Rng| -> BTreeSet<Word> {
            sample.iter().filter(|_| rng.gen_bool(0.2)).cloned().collect()
        };
        let l1 = pick(&mut rng);
        let l2 = pick(&mut rng);
        union_ok &= cyc_union_check(&l1, &l2);
        compl_ok &= complement_closure_check(&universe, &cyc_of_language(&l1));
    }
    report.record("cyc-union", union_ok, "50 random language pairs");
    report.record("cyc-complement", compl_ok, "50 rotation-closed languages");
    Ok(report)
}

/// Exhaustive decider/oracle and recognizer/direct agreement up to `max_len`.
pub fn oracle_agreement_suite(gamma: &GeneratingSet, max_len: usize) -> Result<Report> {
    let mut report = Report::new("oracle-agreement");
    let decider = Decider::new(gamma)?;
    let words = words_with_elements(gamma, max_len, false);
    let mut disagree = 0;
    let mut lz_disagree = 0;
    let machines = decider
        .z_values()
        .map(|z| LzCache::global().get_or_build(z, gamma))
        .collect::<Result<Vec<_>>>()?;
    for (idx, e) in &words {
        if decider.cowp_decide_indices(idx)?.is_none() != e.is_identity() {
            disagree += 1;
        }
        for m in &machines {
            if m.contains_indices(idx, RunOptions::default())? != lz_direct_indices(m.z(), gamma, idx) {
                lz_disagree += 1;
            }
        }
    }
    report.record("decider-vs-oracle", disagree == 0, format!("{} words, {disagree} disagreements", words.len()));
    report.record(
        "recognizer-vs-direct",
        lz_disagree == 0,
        format!("{} (word, z) pairs, {lz_disagree} disagreements", words.len() * machines.len()),
    );
    Ok(report)
}

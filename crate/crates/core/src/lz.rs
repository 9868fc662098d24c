//! Push-down recognizers for the languages `L_z = {w : w(z·0^ω) ≠ z·0^ω}`.
//!
//! The machine for `z` reads a word reversed (so the first-acting letter comes
//! first) followed by the endmarker. While reading letters the stack holds a
//! finite prefix of the current image of `z·0^ω`; each letter rewrites a
//! domain codeword on top of the stack by its image codeword, padding the
//! stack with zeros when it is shorter than every matching codeword. On the
//! endmarker the machine compares the stack against `z` up to trailing zeros.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bits::Bitstring;
use crate::error::{Error, Result};
use crate::genset::{neq_z0omega, neq_z0omega_canonical, apply_padded, GeneratingSet, Word, ENDMARKER};
use crate::pda::{Dpda, DpdaDef, RunOptions, Transition};

pub const START: &str = "q0";
pub const POPPING: &str = "q1";
pub const ACCEPT: &str = "qa";
pub const BOTTOM: char = '⊥';

#[derive(Debug)]
pub struct LzMachine {
    z: Bitstring,
    gamma: GeneratingSet,
    dpda: Dpda,
    endmarker: u32,
}

fn bit_char(b: u8) -> char {
    if b == 0 {
        '0'
    } else {
        '1'
    }
}

impl LzMachine {
    pub fn z(&self) -> &Bitstring {
        &self.z
    }

    pub fn gamma(&self) -> &GeneratingSet {
        &self.gamma
    }

    pub fn dpda(&self) -> &Dpda {
        &self.dpda
    }

    /// Membership of `w` in `L_z`; `ε` is never a member.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        let idx = self.gamma.resolve(w)?;
        self.contains_indices(&idx, RunOptions::default())
    }

    /// Same, for a word already resolved to generator indices (leftmost letter first).
    pub fn contains_indices(&self, idx: &[usize], opts: RunOptions) -> Result<bool> {
        if idx.is_empty() {
            return Ok(false);
        }
        self.accepts_reversed(idx.iter().rev().map(|&i| i as u32), opts)
    }

    /// Runs the machine on `input` (generator indices in reading order) followed by the endmarker.
    pub fn accepts_reversed(&self, input: impl Iterator<Item = u32>, opts: RunOptions) -> Result<bool> {
        self.dpda.accepts_indices(input.chain(std::iter::once(self.endmarker)), opts)
    }
}

/// Builds the recognizer for `L_z^rev` followed by the endmarker.
pub fn build_lz(z: &Bitstring, gamma: &GeneratingSet) -> Result<LzMachine> {
    if z.is_empty() {
        return Err(Error::InvalidZ);
    }
    let mut ts = Vec::new();
    let zs = z.to_string();
    let b = BOTTOM.to_string();

    for (name, g) in gamma.iter() {
        let label = Some(name);
        for (dom, im) in g.entries() {
            // simulation of the action on a long enough stack
            if dom.is_empty() {
                for sym in ['0', '1', BOTTOM] {
                    let s = format!("{im}{sym}");
                    ts.push(Transition::new(START, &sym.to_string(), label, START, &s));
                }
            } else {
                ts.push(Transition::new(START, &dom.to_string(), label, START, &im.to_string()));
            }
            // short stacks x⊥ with x·0^m a domain codeword, m ≥ 1
            for n in 0..dom.len() {
                if dom.bits()[n..].iter().all(|&bit| bit == 0) {
                    let x = dom.slice(0..n);
                    ts.push(Transition::new(START, &format!("{x}{b}"), label, START, &format!("{im}{b}")));
                }
            }
        }
    }

    let end = Some(ENDMARKER);
    for s in Bitstring::all_up_to(z.len()) {
        if *z != s.with_zeros(z.len() - s.len()) {
            let read = format!("{s}{b}");
            ts.push(Transition::new(START, &read, end, ACCEPT, &read));
        }
    }
    for s in Bitstring::all_of_len(z.len()).filter(|s| s != z) {
        for a in [0, 1] {
            let a = bit_char(a).to_string();
            ts.push(Transition::new(START, &format!("{s}{a}"), end, ACCEPT, &a));
        }
    }
    for a in ['0', '1'] {
        ts.push(Transition::new(START, &format!("{zs}{a}"), end, POPPING, &a.to_string()));
    }
    ts.push(Transition::new(POPPING, "0", None, POPPING, ""));
    ts.push(Transition::new(POPPING, "1", None, ACCEPT, ""));

    let mut input_alphabet: Vec<String> = gamma.names().map(String::from).collect();
    input_alphabet.push(ENDMARKER.to_string());
    let def = DpdaDef {
        states: vec![START.into(), POPPING.into(), ACCEPT.into()],
        input_alphabet,
        stack_alphabet: vec!['0', '1', BOTTOM],
        bottom: BOTTOM,
        transitions: ts,
        start_state: START.into(),
        start_stack: format!("{zs}{b}"),
        accept: vec![ACCEPT.into()],
    };
    let dpda = Dpda::new(def)?;
    let endmarker = dpda.input_index(ENDMARKER).expect("endmarker in alphabet");
    Ok(LzMachine { z: z.clone(), gamma: gamma.clone(), dpda, endmarker })
}

/// Machines keyed by `(z, generating-set fingerprint)`.
#[derive(Default)]
pub struct LzCache {
    machines: Mutex<HashMap<(Bitstring, u64), Arc<LzMachine>>>,
}

impl LzCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_build(&self, z: &Bitstring, gamma: &GeneratingSet) -> Result<Arc<LzMachine>> {
        let key = (z.clone(), gamma.fingerprint());
        if let Some(m) = self.machines.lock().expect("cache lock").get(&key) {
            if m.gamma == *gamma {
                return Ok(Arc::clone(m));
            }
        }
        let m = Arc::new(build_lz(z, gamma)?);
        self.machines.lock().expect("cache lock").insert(key, Arc::clone(&m));
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.machines.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The process-wide cache used by [`in_lz`].
    pub fn global() -> &'static LzCache {
        static CACHE: OnceLock<LzCache> = OnceLock::new();
        CACHE.get_or_init(LzCache::new)
    }
}

/// Membership in `L_z` decided by the push-down recognizer.
pub fn in_lz(z: &Bitstring, gamma: &GeneratingSet, w: &Word) -> Result<bool> {
    let idx = gamma.resolve(w)?;
    if idx.is_empty() {
        return Ok(false);
    }
    LzCache::global().get_or_build(z, gamma)?.contains_indices(&idx, RunOptions::default())
}

/// Membership in `L_z` by direct computation of `w(z·0^k)`.
pub fn lz_direct(z: &Bitstring, gamma: &GeneratingSet, w: &Word) -> Result<bool> {
    let idx = gamma.resolve(w)?;
    Ok(lz_direct_indices(z, gamma, &idx))
}

pub(crate) fn lz_direct_indices(z: &Bitstring, gamma: &GeneratingSet, idx: &[usize]) -> bool {
    if idx.is_empty() {
        return false;
    }
    let mut x = z.with_zeros(idx.len() * gamma.maxlen());
    for &i in idx.iter().rev() {
        x = apply_padded(gamma.by_index(i), &x);
    }
    let by_cases = neq_z0omega(&x, z);
    assert_eq!(by_cases, neq_z0omega_canonical(&x, z), "trailing-zero tests disagree on {x:?} vs {z:?}");
    by_cases
}

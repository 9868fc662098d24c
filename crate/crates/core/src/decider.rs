//! Quadratic-time word problem: a word is non-trivial iff some cyclic rotation
//! of it moves some point `z·0^ω` with `|z| = maxlen(Γ)`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::bits::Bitstring;
use crate::error::{Error, Result};
use crate::genset::{GeneratingSet, Word};
use crate::lz::{LzCache, LzMachine};
use crate::pda::RunOptions;

/// A rotation of the input and a point it moves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub rotation_index: usize,
    pub z: Bitstring,
}

/// Moves the first `j` letters to the end.
pub fn rotate(w: &Word, j: usize) -> Result<Word> {
    if j > w.len() {
        return Err(Error::IndexOutOfRange { index: j, len: w.len() });
    }
    Ok(w.suffix_from(j).concat(&w.prefix(j)))
}

pub struct Decider {
    gamma: GeneratingSet,
    machines: Vec<Arc<LzMachine>>,
    opts: RunOptions,
    parallel: bool,
}

impl Decider {
    pub fn new(gamma: &GeneratingSet) -> Result<Self> {
        Self::with_cache(gamma, LzCache::global())
    }

    /// Builds (or fetches) one recognizer per `z ∈ {0,1}^maxlen`, in lexicographic order.
    pub fn with_cache(gamma: &GeneratingSet, cache: &LzCache) -> Result<Self> {
        let machines = if gamma.maxlen() == 0 {
            Vec::new()
        } else {
            Bitstring::all_of_len(gamma.maxlen()).map(|z| cache.get_or_build(&z, gamma)).collect::<Result<_>>()?
        };
        Ok(Decider { gamma: gamma.clone(), machines, opts: RunOptions::default(), parallel: false })
    }

    pub fn with_options(mut self, opts: RunOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    pub fn gamma(&self) -> &GeneratingSet {
        &self.gamma
    }

    /// The points tried for every rotation.
    pub fn z_values(&self) -> impl Iterator<Item = &Bitstring> {
        self.machines.iter().map(|m| m.z())
    }

    pub fn cowp_decide(&self, w: &Word) -> Result<Option<Witness>> {
        let idx = self.gamma.resolve(w)?;
        self.cowp_decide_indices(&idx)
    }

    pub fn wp_decide(&self, w: &Word) -> Result<bool> {
        Ok(self.cowp_decide(w)?.is_none())
    }

    /// Sweeps rotations (outer) and points (inner); the first witness found is returned.
    pub fn cowp_decide_indices(&self, idx: &[usize]) -> Result<Option<Witness>> {
        if idx.is_empty() || self.machines.is_empty() {
            return Ok(None);
        }
        if self.parallel {
            return self.sweep_parallel(idx);
        }
        for j in 0..idx.len() {
            if let Some(k) = self.first_z_for_rotation(idx, j)? {
                return Ok(Some(self.witness(j, k)));
            }
        }
        Ok(None)
    }

    fn witness(&self, j: usize, k: usize) -> Witness {
        Witness { rotation_index: j, z: self.machines[k].z().clone() }
    }

    fn first_z_for_rotation(&self, idx: &[usize], j: usize) -> Result<Option<usize>> {
        for (k, m) in self.machines.iter().enumerate() {
            // reversed rotation: w[j-1], …, w[0], w[n-1], …, w[j]
            let input = idx[..j].iter().rev().chain(idx[j..].iter().rev()).map(|&i| i as u32);
            if m.accepts_reversed(input, self.opts)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    fn sweep_parallel(&self, idx: &[usize]) -> Result<Option<Witness>> {
        let n = idx.len();
        let next = AtomicUsize::new(0);
        let best = AtomicUsize::new(usize::MAX);
        let found: Mutex<Option<(usize, usize)>> = Mutex::new(None);
        let failure: Mutex<Option<Error>> = Mutex::new(None);
        let threads = std::thread::available_parallelism().map_or(1, |p| p.get()).min(n);

        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(|| loop {
                    let j = next.fetch_add(1, Ordering::Relaxed);
                    if j >= n || j > best.load(Ordering::Acquire) {
                        break;
                    }
                    match self.first_z_for_rotation(idx, j) {
                        Ok(Some(k)) => {
                            best.fetch_min(j, Ordering::AcqRel);
                            let mut f = found.lock().expect("witness lock");
                            if f.is_none_or(|(bj, _)| j < bj) {
                                *f = Some((j, k));
                            }
                        }
                        Ok(None) => {}
                        Err(e) => {
                            failure.lock().expect("error lock").get_or_insert(e);
                            best.fetch_min(0, Ordering::AcqRel);
                            break;
                        }
                    }
                });
            }
        });

        if let Some(e) = failure.into_inner().expect("error lock") {
            return Err(e);
        }
        Ok(found.into_inner().expect("witness lock").map(|(j, k)| self.witness(j, k)))
    }
}

/// One-shot form of [`Decider::cowp_decide`].
pub fn cowp_decide(gamma: &GeneratingSet, w: &Word) -> Result<Option<Witness>> {
    Decider::new(gamma)?.cowp_decide(w)
}

/// One-shot form of [`Decider::wp_decide`].
pub fn wp_decide(gamma: &GeneratingSet, w: &Word) -> Result<bool> {
    Decider::new(gamma)?.wp_decide(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bs;
    use crate::genset::wp_oracle;
    use crate::table::TableElement;

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    #[test]
    fn rotate_examples() {
        let abc = w("a b c");
        assert_eq!(rotate(&abc, 1).unwrap(), w("b c a"));
        assert_eq!(rotate(&abc, 0).unwrap(), abc);
        assert_eq!(rotate(&abc, 3).unwrap(), abc);
        assert!(matches!(rotate(&abc, 4), Err(Error::IndexOutOfRange { index: 4, len: 3 })));
    }

    #[test]
    fn decide_examples() {
        let h = GeneratingSet::higman();
        let d = Decider::new(&h).unwrap();
        let wit = d.cowp_decide(&w("g1")).unwrap().unwrap();
        assert_eq!(wit.rotation_index, 0);
        assert_eq!(wit.z, bs("00"));
        assert_eq!(d.cowp_decide(&w("g3 g3")).unwrap(), None);
        assert_eq!(d.cowp_decide(&Word::empty()).unwrap(), None);
        assert!(d.wp_decide(&w("g4 g4")).unwrap());
        assert!(!d.wp_decide(&w("g1 g2")).unwrap());
        assert!(matches!(d.wp_decide(&w("g1 x")), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn sweep_covers_all_points() {
        let h = GeneratingSet::higman();
        let d = Decider::new(&h).unwrap();
        let zs: Vec<String> = d.z_values().map(|z| z.to_string()).collect();
        assert_eq!(zs, ["00", "01", "10", "11"]);
    }

    #[test]
    fn trivial_generating_set_short_circuits() {
        let gamma = GeneratingSet::new(vec![("e".into(), TableElement::identity())]).unwrap();
        let d = Decider::new(&gamma).unwrap();
        assert_eq!(d.z_values().count(), 0);
        assert!(d.wp_decide(&w("e e e")).unwrap());
    }

    #[test]
    fn parallel_matches_sequential() {
        let h = GeneratingSet::higman();
        let seq = Decider::new(&h).unwrap();
        let par = Decider::new(&h).unwrap().parallel(true);
        for text in ["g1", "g2 g2 g1", "g1 g2 g3 g3 g2 g1", "g4 g3 g2 g1 g1 g2 g3", "g2 g2 g3 g3 g1"] {
            let word = w(text);
            assert_eq!(seq.cowp_decide(&word).unwrap(), par.cowp_decide(&word).unwrap(), "{text}");
            assert_eq!(seq.wp_decide(&word).unwrap(), wp_oracle(&h, &word).unwrap());
        }
    }
}

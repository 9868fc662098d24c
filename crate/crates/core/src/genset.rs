//! Generating sets, words over them, and the direct word-problem oracle.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bits::Bitstring;
use crate::error::{Error, Result};
use crate::table::TableElement;

/// Reserved input symbol appended after a word; never a generator name.
pub const ENDMARKER: &str = "#END#";

const HIGMAN_JSON: &str = include_str!("../data/higman.json");

/// A named finite set of elements of V.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    generators: Vec<(String, TableElement)>,
    index: HashMap<String, usize>,
    maxlen: usize,
}

/// On-disk form: `{"generators": {"<name>": [["<dom>", "<im>"], ...]}}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratingSetFile {
    pub generators: BTreeMap<String, Vec<(Bitstring, Bitstring)>>,
}

impl GeneratingSet {
    pub fn new(generators: Vec<(String, TableElement)>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidGeneratingSet("no generators".into()));
        }
        let mut index = HashMap::new();
        for (i, (name, _)) in generators.iter().enumerate() {
            validate_name(name)?;
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGeneratingSet(format!("duplicate generator name {name:?}")));
            }
        }
        let maxlen = generators.iter().map(|(_, e)| e.maxlen()).max().unwrap_or(0);
        Ok(GeneratingSet { generators, index, maxlen })
    }

    pub fn from_file_form(file: GeneratingSetFile) -> Result<Self> {
        let gens = file
            .generators
            .into_iter()
            .map(|(name, pairs)| {
                let e = TableElement::parse_table(&pairs)
                    .map_err(|e| Error::InvalidGeneratingSet(format!("generator {name:?}: {e}")))?;
                Ok((name, e))
            })
            .collect::<Result<Vec<_>>>()?;
        GeneratingSet::new(gens)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GeneratingSetFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidGeneratingSet(e.to_string()))?;
        Self::from_file_form(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_file_form(&self) -> GeneratingSetFile {
        GeneratingSetFile {
            generators: self.generators.iter().map(|(n, e)| (n.clone(), e.entries().to_vec())).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file_form()).expect("serializable")
    }

    /// The four Higman involutions g1..g4.
    pub fn higman() -> Self {
        GeneratingSet::from_json(HIGMAN_JSON).expect("bundled Higman set is valid")
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn maxlen(&self) -> usize {
        self.maxlen
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.generators.iter().map(|(n, _)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &TableElement)> {
        self.generators.iter().map(|(n, e)| (n.as_str(), e))
    }

    pub fn get(&self, name: &str) -> Option<&TableElement> {
        self.index.get(name).map(|&i| &self.generators[i].1)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn by_index(&self, i: usize) -> &TableElement {
        &self.generators[i].1
    }

    pub fn name_of(&self, i: usize) -> &str {
        &self.generators[i].0
    }

    /// Resolves letters to generator indices.
    pub fn resolve(&self, w: &Word) -> Result<Vec<usize>> {
        w.letters()
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| Error::UnknownGenerator(l.clone())))
            .collect()
    }

    /// Stable content hash, used to key machine caches.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.generators.hash(&mut h);
        h.finish()
    }
}

impl fmt::Debug for GeneratingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.generators.iter().map(|(n, e)| (n, e))).finish()
    }
}

fn validate_name(name: &str) -> Result<()> {
    let reason = if name.is_empty() {
        "empty"
    } else if name == ENDMARKER {
        "reserved endmarker"
    } else if name.chars().any(char::is_whitespace) {
        "contains whitespace"
    } else {
        return Ok(());
    };
    Err(Error::InvalidGeneratorName { name: name.to_string(), reason })
}

/// A word `a_n … a_1` over generator names; the rightmost letter acts first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(Vec<String>);

impl Word {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Self {
        Word(letters.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Whitespace-separated generator names.
    pub fn parse(text: &str) -> Self {
        Word::new(text.split_whitespace())
    }

    /// Every non-whitespace character is one generator name.
    pub fn parse_compact(text: &str) -> Self {
        Word(text.chars().filter(|c| !c.is_whitespace()).map(String::from).collect())
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "[{}]", self.0.join(","))
        }
    }
}

/// The element `w(.)`, folding composition from the right.
pub fn word_to_element(gamma: &GeneratingSet, w: &Word) -> Result<TableElement> {
    let idx = gamma.resolve(w)?;
    Ok(element_of_indices(gamma, &idx))
}

pub(crate) fn element_of_indices(gamma: &GeneratingSet, idx: &[usize]) -> TableElement {
    idx.iter().rev().fold(TableElement::identity(), |acc, &i| gamma.by_index(i).compose(&acc))
}

/// Ground truth: does `w` represent the identity of V?
pub fn wp_oracle(gamma: &GeneratingSet, w: &Word) -> Result<bool> {
    Ok(word_to_element(gamma, w)?.is_identity())
}

/// Applies `e` to the point `x·0^ω`, appending zeros while `x` is too short.
pub fn apply_padded(e: &TableElement, x: &Bitstring) -> Bitstring {
    let mut x = x.clone();
    loop {
        if let Some(y) = e.apply(&x) {
            return y;
        }
        x = x.pushed(0);
    }
}

/// Image of `z·0^ω` under `w(.)`, as a zero-stripped representative.
pub fn apply_omega_word(gamma: &GeneratingSet, w: &Word, z: &Bitstring) -> Result<Bitstring> {
    let idx = gamma.resolve(w)?;
    Ok(apply_omega_indices(gamma, &idx, z))
}

pub(crate) fn apply_omega_indices(gamma: &GeneratingSet, idx: &[usize], z: &Bitstring) -> Bitstring {
    let mut x = z.with_zeros(idx.len() * gamma.maxlen());
    for &i in idx.iter().rev() {
        x = apply_padded(gamma.by_index(i), &x);
    }
    x.strip_zeros()
}

/// Image of `z·0^ω` under a single element.
pub fn apply_omega_element(e: &TableElement, z: &Bitstring) -> Bitstring {
    apply_padded(e, &z.with_zeros(e.maxlen())).strip_zeros()
}

/// Decides `s·0^ω ≠ z·0^ω` by the three-case test on lengths and prefixes.
/// `z` must be non-empty.
pub fn neq_z0omega(s: &Bitstring, z: &Bitstring) -> bool {
    debug_assert!(!z.is_empty());
    if s.len() <= z.len() {
        *z != s.with_zeros(z.len() - s.len())
    } else {
        match s.strip_prefix(z) {
            None => true,
            Some(t) => t.contains_one(),
        }
    }
}

/// Same predicate via canonical forms.
pub fn neq_z0omega_canonical(s: &Bitstring, z: &Bitstring) -> bool {
    s.strip_zeros() != z.strip_zeros()
}

//! Elements of Thompson's group V as bijections between two maximal prefix codes.
//!
//! A [`TableElement`] is always stored reduced (no sibling pair `p0→q0`, `p1→q1`
//! survives) and sorted by domain codeword in shortlex order, so two tables
//! denote the same group element iff they are structurally equal.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::bits::Bitstring;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TableElement {
    entries: Vec<(Bitstring, Bitstring)>,
}

impl TableElement {
    pub fn identity() -> Self {
        TableElement { entries: vec![(Bitstring::empty(), Bitstring::empty())] }
    }

    /// Validates and reduces a table given as `(dom, im)` pairs.
    pub fn parse_table(pairs: &[(Bitstring, Bitstring)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyTable);
        }
        check_distinct("domain", pairs.iter().map(|(d, _)| d))?;
        check_distinct("image", pairs.iter().map(|(_, i)| i))?;
        check_maximal_prefix_code("domain", pairs.iter().map(|(d, _)| d))?;
        check_maximal_prefix_code("image", pairs.iter().map(|(_, i)| i))?;
        Ok(Self::reduce(pairs.to_vec()))
    }

    /// Merges sibling pairs until none remain. The caller guarantees every
    /// invariant except reducedness.
    pub fn reduce(entries: Vec<(Bitstring, Bitstring)>) -> Self {
        let mut map: HashMap<Bitstring, Bitstring> = entries.into_iter().collect();
        let mut work: Vec<Bitstring> = map.keys().filter(|d| d.last() == Some(0)).cloned().collect();

        while let Some(d0) = work.pop() {
            let Some(parent) = d0.parent() else { continue };
            let d1 = parent.pushed(1);
            let (Some(i0), Some(i1)) = (map.get(&d0), map.get(&d1)) else { continue };
            if i0.last() != Some(0) || i1.last() != Some(1) || i0.parent() != i1.parent() {
                continue;
            }
            let merged = i0.parent().expect("non-empty image");
            map.remove(&d0);
            map.remove(&d1);
            match parent.last() {
                Some(0) => work.push(parent.clone()),
                Some(_) => work.push(parent.parent().expect("non-empty").pushed(0)),
                None => {}
            }
            map.insert(parent, merged);
        }

        let mut entries: Vec<_> = map.into_iter().collect();
        entries.sort();
        TableElement { entries }
    }

    pub fn entries(&self) -> &[(Bitstring, Bitstring)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn domain_code(&self) -> impl Iterator<Item = &Bitstring> {
        self.entries.iter().map(|(d, _)| d)
    }

    pub fn image_code(&self) -> impl Iterator<Item = &Bitstring> {
        self.entries.iter().map(|(_, i)| i)
    }

    /// Applies the prefix replacement `p·u ↦ q·u`; `None` when `x` is a strict
    /// prefix of some domain codeword.
    pub fn apply(&self, x: &Bitstring) -> Option<Bitstring> {
        self.apply_with_depth(x).map(|(y, _)| y)
    }

    /// Like [`apply`](Self::apply), also returning the length of the matched domain codeword.
    pub fn apply_with_depth(&self, x: &Bitstring) -> Option<(Bitstring, usize)> {
        self.entries.iter().find(|(d, _)| d.is_prefix_of(x)).map(|(d, i)| {
            let mut out = i.bits().to_vec();
            out.extend_from_slice(&x.bits()[d.len()..]);
            (Bitstring::from_bits(out), d.len())
        })
    }

    /// The composite `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &TableElement) -> TableElement {
        let mut out = Vec::new();
        for (p, q) in &other.entries {
            for (r, v) in &self.entries {
                if let Some(u) = r.strip_prefix(q) {
                    out.push((p.concat(&u), v.clone()));
                } else if let Some(x) = q.strip_prefix(r) {
                    out.push((p.clone(), v.concat(&x)));
                }
            }
        }
        TableElement::reduce(out)
    }

    pub fn invert(&self) -> TableElement {
        let mut entries: Vec<_> = self.entries.iter().map(|(d, i)| (i.clone(), d.clone())).collect();
        entries.sort();
        TableElement { entries }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|(d, i)| d == i)
    }

    /// Longest codeword in either column.
    pub fn maxlen(&self) -> usize {
        self.entries.iter().map(|(d, i)| d.len().max(i.len())).max().unwrap_or(0)
    }
}

impl fmt::Debug for TableElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (d, i)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d:?}→{i:?}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for TableElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn check_distinct<'a>(side: &'static str, words: impl Iterator<Item = &'a Bitstring>) -> Result<()> {
    let mut seen = HashSet::new();
    for w in words {
        if !seen.insert(w) {
            return Err(Error::NotBijection { side, entry: format!("{w:?}") });
        }
    }
    Ok(())
}

fn check_maximal_prefix_code<'a>(side: &'static str, words: impl Iterator<Item = &'a Bitstring>) -> Result<()> {
    let mut code: Vec<&Bitstring> = words.collect();
    code.sort();
    let members: HashSet<&Bitstring> = code.iter().copied().collect();

    let mut internal: HashSet<Bitstring> = HashSet::new();
    for w in &code {
        for n in 0..w.len() {
            let prefix = w.slice(0..n);
            if members.contains(&prefix) {
                return Err(Error::NotPrefixCode { side, shorter: format!("{prefix:?}"), longer: format!("{w:?}") });
            }
            internal.insert(prefix);
        }
    }

    let mut internal: Vec<_> = internal.into_iter().collect();
    internal.sort();
    for node in &internal {
        for b in [0, 1] {
            let child = node.pushed(b);
            if !members.contains(&child) && !internal.contains(&child) {
                return Err(Error::NotMaximal { side, missing: format!("{child:?}") });
            }
        }
    }
    Ok(())
}

//! Deterministic push-down automata with generalized transitions.
//!
//! A transition `(q, r) -a-> (p, s)` fires when the stack (written top at the
//! left) starts with `r`; the matched prefix is replaced by `s`. Labels are
//! input symbols or ε. Acceptance is by final state once the whole input has
//! been read.
//!
//! Transitions are compiled into one trie per `(state, label)` keyed on stack
//! symbols from the top down, so finding the applicable transition costs at
//! most the machine's read depth.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable that overrides the ε-chain budget.
pub const EPS_BUDGET_ENV: &str = "VWORD_EPS_BUDGET";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub from: String,
    /// Stack prefix consumed, top first. Never empty.
    pub read: String,
    /// Input symbol, or `None` for ε.
    pub label: Option<String>,
    pub to: String,
    /// Replacement for `read`, top first.
    pub write: String,
}

impl Transition {
    pub fn new(from: &str, read: &str, label: Option<&str>, to: &str, write: &str) -> Self {
        Transition {
            from: from.into(),
            read: read.into(),
            label: label.map(Into::into),
            to: to.into(),
            write: write.into(),
        }
    }
}

/// Serializable description of a machine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpdaDef {
    pub states: Vec<String>,
    pub input_alphabet: Vec<String>,
    pub stack_alphabet: Vec<char>,
    pub bottom: char,
    pub transitions: Vec<Transition>,
    pub start_state: String,
    pub start_stack: String,
    pub accept: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: String,
    /// Stack contents, top at the left.
    pub stack: String,
    pub consumed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Next(Configuration),
    Stuck,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub accepted: bool,
    pub trace: Vec<Configuration>,
}

/// A pair of transitions that could both fire on some configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub eps_budget: Option<usize>,
}

impl RunOptions {
    /// Reads [`EPS_BUDGET_ENV`]; unset or unparsable means the default budget.
    pub fn from_env() -> Self {
        RunOptions { eps_budget: std::env::var(EPS_BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()) }
    }
}

const NONE: u32 = u32::MAX;

struct Node {
    children: Box<[u32]>,
    transitions: Vec<u32>,
}

struct Compiled {
    label: u32,
    read_len: usize,
    to: u32,
    /// Replacement, bottom first, ready to push.
    push: Vec<u8>,
}

/// Internal configuration: stack stored bottom first.
#[derive(Clone)]
struct Raw {
    state: u32,
    stack: Vec<u8>,
    consumed: usize,
}

pub struct Dpda {
    def: DpdaDef,
    state_ix: HashMap<String, u32>,
    input_ix: HashMap<String, u32>,
    stack_ix: HashMap<char, u8>,
    accepting: Vec<bool>,
    compiled: Vec<Compiled>,
    roots: Vec<u32>,
    nodes: Vec<Node>,
    start: Raw,
}

impl std::fmt::Debug for Dpda {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dpda")
            .field("states", &self.def.states)
            .field("transitions", &self.def.transitions.len())
            .finish()
    }
}

fn index_of<T: std::hash::Hash + Eq + Clone + std::fmt::Debug>(items: &[T], what: &str) -> Result<HashMap<T, usize>> {
    let mut map = HashMap::new();
    for (i, it) in items.iter().enumerate() {
        if map.insert(it.clone(), i).is_some() {
            return Err(Error::InvalidAutomaton(format!("duplicate {what} {it:?}")));
        }
    }
    Ok(map)
}

impl Dpda {
    pub fn new(def: DpdaDef) -> Result<Self> {
        let bad = |m: String| Error::InvalidAutomaton(m);
        if def.states.is_empty() {
            return Err(bad("no states".into()));
        }
        let state_ix: HashMap<String, u32> =
            index_of(&def.states, "state")?.into_iter().map(|(k, v)| (k, v as u32)).collect();
        let input_ix: HashMap<String, u32> =
            index_of(&def.input_alphabet, "input symbol")?.into_iter().map(|(k, v)| (k, v as u32)).collect();
        if def.stack_alphabet.len() >= u8::MAX as usize {
            return Err(bad("stack alphabet too large".into()));
        }
        let stack_ix: HashMap<char, u8> =
            index_of(&def.stack_alphabet, "stack symbol")?.into_iter().map(|(k, v)| (k, v as u8)).collect();
        let bottom = def.bottom;
        if !stack_ix.contains_key(&bottom) {
            return Err(bad(format!("bottom marker {bottom:?} not in stack alphabet")));
        }

        let state = |name: &str| state_ix.get(name).copied().ok_or_else(|| bad(format!("unknown state {name:?}")));
        let stack_word = |w: &str| -> Result<Vec<u8>> {
            w.chars()
                .map(|c| stack_ix.get(&c).copied().ok_or_else(|| bad(format!("unknown stack symbol {c:?}"))))
                .collect()
        };

        let start_stack = stack_word(&def.start_stack)?;
        let bottoms = def.start_stack.chars().filter(|&c| c == bottom).count();
        if bottoms != 1 || !def.start_stack.ends_with(bottom) {
            return Err(bad("start stack must contain exactly one bottom marker, rightmost".into()));
        }
        let start = Raw { state: state(&def.start_state)?, stack: start_stack.into_iter().rev().collect(), consumed: 0 };

        let mut accepting = vec![false; def.states.len()];
        for a in &def.accept {
            accepting[state(a)? as usize] = true;
        }

        let n_labels = def.input_alphabet.len() + 1;
        let k = def.stack_alphabet.len();
        let mut roots = vec![NONE; def.states.len() * n_labels];
        let mut nodes: Vec<Node> = Vec::new();
        let mut compiled = Vec::with_capacity(def.transitions.len());

        for (ti, t) in def.transitions.iter().enumerate() {
            if t.read.is_empty() {
                return Err(bad(format!("transition {ti} reads an empty stack prefix")));
            }
            check_bottom_discipline(ti, t, bottom)?;
            let from = state(&t.from)?;
            let to = state(&t.to)?;
            let label = match &t.label {
                None => def.input_alphabet.len() as u32,
                Some(l) => *input_ix.get(l).ok_or_else(|| bad(format!("unknown input symbol {l:?}")))?,
            };
            let read = stack_word(&t.read)?;
            let write = stack_word(&t.write)?;

            let slot = from as usize * n_labels + label as usize;
            if roots[slot] == NONE {
                roots[slot] = nodes.len() as u32;
                nodes.push(Node { children: vec![NONE; k].into(), transitions: Vec::new() });
            }
            let mut node = roots[slot];
            for &sym in &read {
                let child = nodes[node as usize].children[sym as usize];
                node = if child == NONE {
                    let id = nodes.len() as u32;
                    nodes.push(Node { children: vec![NONE; k].into(), transitions: Vec::new() });
                    nodes[node as usize].children[sym as usize] = id;
                    id
                } else {
                    child
                };
            }
            nodes[node as usize].transitions.push(ti as u32);
            compiled.push(Compiled { label, read_len: read.len(), to, push: write.into_iter().rev().collect() });
        }

        Ok(Dpda { def, state_ix, input_ix, stack_ix, accepting, compiled, roots, nodes, start })
    }

    pub fn def(&self) -> &DpdaDef {
        &self.def
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.def.transitions
    }

    pub fn num_states(&self) -> usize {
        self.def.states.len()
    }

    pub fn input_index(&self, symbol: &str) -> Option<u32> {
        self.input_ix.get(symbol).copied()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Dpda::new(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.def).expect("serializable")
    }

    /// Graphviz rendering: states as nodes, transitions as labeled edges.
    pub fn to_dot(&self) -> String {
        let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
        let mut out = String::from("digraph dpda {\n  rankdir=LR;\n  __start [shape=point];\n");
        for s in &self.def.states {
            let shape = if self.def.accept.contains(s) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  \"{}\" [shape={shape}];", esc(s));
        }
        let _ = writeln!(out, "  __start -> \"{}\" [label=\"{}\"];", esc(&self.def.start_state), esc(&self.def.start_stack));
        for t in &self.def.transitions {
            let label = t.label.as_deref().unwrap_or("ε");
            let write = if t.write.is_empty() { "ε" } else { &t.write };
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}, {} / {}\"];",
                esc(&t.from),
                esc(&t.to),
                esc(label),
                esc(&t.read),
                esc(write)
            );
        }
        out.push_str("}\n");
        out
    }

    /// Every pair of transitions from one state where one read prefix extends
    /// the other and the labels can fire together.
    pub fn validate_determinism(&self) -> Vec<Conflict> {
        let ts = &self.def.transitions;
        let mut out = Vec::new();
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                let (a, b) = (&ts[i], &ts[j]);
                if a.from != b.from {
                    continue;
                }
                let labels = a.label.is_none() || b.label.is_none() || a.label == b.label;
                let prefixes = a.read.starts_with(b.read.as_str()) || b.read.starts_with(a.read.as_str());
                if labels && prefixes {
                    out.push(Conflict { first: i, second: j });
                }
            }
        }
        out
    }

    pub fn start_configuration(&self) -> Configuration {
        self.export(&self.start)
    }

    /// One move on `next` (or ε only, when `next` is `None`).
    pub fn step(&self, c: &Configuration, next: Option<&str>) -> Result<Step> {
        let raw = self.import(c)?;
        let label = next.map(|l| self.input_ix.get(l).copied().ok_or_else(|| Error::UnknownSymbol(l.into()))).transpose()?;
        match self.find(&raw, label)? {
            None => Ok(Step::Stuck),
            Some(t) => {
                let mut raw = raw;
                let consumed_letter = self.def.transitions[t as usize].label.is_some();
                self.fire(&mut raw, t);
                if consumed_letter {
                    raw.consumed += 1;
                }
                Ok(Step::Next(self.export(&raw)))
            }
        }
    }

    pub fn run<S: AsRef<str>>(&self, input: &[S]) -> Result<RunResult> {
        self.run_with(input, RunOptions::default())
    }

    pub fn run_with<S: AsRef<str>>(&self, input: &[S], opts: RunOptions) -> Result<RunResult> {
        let ids = self.symbols(input)?;
        let mut trace = Vec::new();
        let accepted = self.drive(ids.into_iter(), opts, |raw| trace.push(self.export(raw)))?;
        Ok(RunResult { accepted, trace })
    }

    pub fn accepts<S: AsRef<str>>(&self, input: &[S]) -> Result<bool> {
        let ids = self.symbols(input)?;
        self.drive(ids.into_iter(), RunOptions::default(), |_| {})
    }

    /// Trace-free run over pre-resolved input symbol indices.
    pub fn accepts_indices(&self, input: impl Iterator<Item = u32>, opts: RunOptions) -> Result<bool> {
        self.drive(input, opts, |_| {})
    }

    fn symbols<S: AsRef<str>>(&self, input: &[S]) -> Result<Vec<u32>> {
        input
            .iter()
            .map(|s| self.input_index(s.as_ref()).ok_or_else(|| Error::UnknownSymbol(s.as_ref().into())))
            .collect()
    }

    fn drive(&self, input: impl Iterator<Item = u32>, opts: RunOptions, mut observe: impl FnMut(&Raw)) -> Result<bool> {
        let eps = self.def.input_alphabet.len() as u32;
        let mut c = self.start.clone();
        observe(&c);
        for letter in input {
            let mut chain = 0usize;
            let budget = self.budget(&c, opts);
            loop {
                let Some(t) = self.find(&c, Some(letter))? else { return Ok(false) };
                self.fire(&mut c, t);
                if self.label_of(t) == eps {
                    chain += 1;
                    if chain > budget {
                        return Err(Error::EpsilonDivergence { budget });
                    }
                    observe(&c);
                } else {
                    c.consumed += 1;
                    observe(&c);
                    break;
                }
            }
        }
        let budget = self.budget(&c, opts);
        let mut chain = 0usize;
        loop {
            if self.accepting[c.state as usize] {
                return Ok(true);
            }
            let Some(t) = self.find(&c, None)? else { return Ok(false) };
            self.fire(&mut c, t);
            chain += 1;
            if chain > budget {
                return Err(Error::EpsilonDivergence { budget });
            }
            observe(&c);
        }
    }

    fn budget(&self, c: &Raw, opts: RunOptions) -> usize {
        opts.eps_budget.unwrap_or(c.stack.len() + self.def.states.len() + 1)
    }

    fn label_of(&self, t: u32) -> u32 {
        self.compiled[t as usize].label
    }

    /// The unique transition applicable on `letter` or ε.
    fn find(&self, c: &Raw, letter: Option<u32>) -> Result<Option<u32>> {
        let n_labels = self.def.input_alphabet.len() + 1;
        let eps = (n_labels - 1) as u32;
        let mut found: Option<u32> = None;
        for label in letter.into_iter().chain(std::iter::once(eps)) {
            let mut node = self.roots[c.state as usize * n_labels + label as usize];
            let mut depth = 0;
            while node != NONE {
                for &t in &self.nodes[node as usize].transitions {
                    if let Some(first) = found {
                        return Err(Error::NondeterminismDetected { first: first as usize, second: t as usize });
                    }
                    found = Some(t);
                }
                if depth == c.stack.len() {
                    break;
                }
                let sym = c.stack[c.stack.len() - 1 - depth];
                node = self.nodes[node as usize].children[sym as usize];
                depth += 1;
            }
        }
        Ok(found)
    }

    fn fire(&self, c: &mut Raw, t: u32) {
        let ct = &self.compiled[t as usize];
        c.stack.truncate(c.stack.len() - ct.read_len);
        c.stack.extend_from_slice(&ct.push);
        c.state = ct.to;
    }

    fn export(&self, raw: &Raw) -> Configuration {
        Configuration {
            state: self.def.states[raw.state as usize].clone(),
            stack: raw.stack.iter().rev().map(|&s| self.def.stack_alphabet[s as usize]).collect(),
            consumed: raw.consumed,
        }
    }

    fn import(&self, c: &Configuration) -> Result<Raw> {
        let state = *self.state_ix.get(&c.state).ok_or_else(|| Error::InvalidAutomaton(format!("unknown state {:?}", c.state)))?;
        let stack = c
            .stack
            .chars()
            .rev()
            .map(|ch| self.stack_ix.get(&ch).copied().ok_or_else(|| Error::InvalidAutomaton(format!("unknown stack symbol {ch:?}"))))
            .collect::<Result<Vec<u8>>>()?;
        Ok(Raw { state, stack, consumed: c.consumed })
    }
}

fn check_bottom_discipline(ti: usize, t: &Transition, bottom: char) -> Result<()> {
    let count = |s: &str| s.chars().filter(|&c| c == bottom).count();
    let ok = if t.read.ends_with(bottom) {
        count(&t.read) == 1 && count(&t.write) == 1 && t.write.ends_with(bottom)
    } else {
        count(&t.read) == 0 && count(&t.write) == 0
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidAutomaton(format!("transition {ti} violates the bottom-marker discipline")))
    }
}

/// Names of states with no outgoing transitions.
pub fn terminal_states(m: &Dpda) -> Vec<String> {
    let with_out: HashSet<&str> = m.transitions().iter().map(|t| t.from.as_str()).collect();
    m.def().states.iter().filter(|s| !with_out.contains(s.as_str())).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn machine(transitions: Vec<Transition>, accept: &[&str]) -> Dpda {
        Dpda::new(DpdaDef {
            states: vec!["q".into(), "p".into(), "f".into()],
            input_alphabet: vec!["a".into(), "b".into()],
            stack_alphabet: vec!['0', '1', '⊥'],
            bottom: '⊥',
            transitions,
            start_state: "q".into(),
            start_stack: "0⊥".into(),
            accept: accept.iter().map(|s| s.to_string()).collect(),
        })
        .unwrap()
    }

    #[test]
    fn prefix_overlap_is_a_conflict() {
        let m = machine(
            vec![Transition::new("q", "0", Some("a"), "q", "1"), Transition::new("q", "01", Some("a"), "q", "")],
            &[],
        );
        assert_eq!(m.validate_determinism(), vec![Conflict { first: 0, second: 1 }]);
    }

    #[test]
    fn epsilon_against_letter_is_a_conflict() {
        let m = machine(
            vec![Transition::new("q", "0", None, "q", ""), Transition::new("q", "0", Some("a"), "q", "1")],
            &[],
        );
        assert_eq!(m.validate_determinism().len(), 1);
        let err = m.accepts(&["a"]).unwrap_err();
        assert!(matches!(err, Error::NondeterminismDetected { .. }));
    }

    #[test]
    fn different_letters_do_not_conflict() {
        let m = machine(
            vec![Transition::new("q", "0", Some("a"), "q", "1"), Transition::new("q", "0", Some("b"), "q", "")],
            &[],
        );
        assert!(m.validate_determinism().is_empty());
    }

    #[test]
    fn empty_input_accepting_start() {
        let m = machine(vec![], &["q"]);
        assert!(m.accepts::<&str>(&[]).unwrap());
        let m = machine(vec![], &["f"]);
        assert!(!m.accepts::<&str>(&[]).unwrap());
    }

    #[test]
    fn pre_input_epsilon_closure() {
        let m = machine(vec![Transition::new("q", "0", None, "f", "")], &["f"]);
        let r = m.run::<&str>(&[]).unwrap();
        assert!(r.accepted);
        assert_eq!(r.trace.last().unwrap().stack, "⊥");
        // input is never consumed, so nothing more can be accepted
        assert!(!m.accepts(&["a"]).unwrap());
    }

    #[test]
    fn epsilon_loop_hits_budget() {
        let m = machine(vec![Transition::new("q", "0", None, "q", "0")], &[]);
        assert!(matches!(m.accepts::<&str>(&[]), Err(Error::EpsilonDivergence { .. })));
        let r = m.run_with::<&str>(&[], RunOptions { eps_budget: Some(3) });
        assert!(matches!(r, Err(Error::EpsilonDivergence { budget: 3 })));
    }

    #[test]
    fn rejects_bad_definitions() {
        let mut def = machine(vec![], &[]).def().clone();
        def.start_stack = "0".into();
        assert!(Dpda::new(def.clone()).is_err());
        def.start_stack = "0⊥".into();
        def.transitions = vec![Transition::new("q", "⊥", Some("a"), "q", "0")];
        assert!(Dpda::new(def.clone()).is_err());
        def.transitions = vec![Transition::new("q", "0", Some("a"), "q", "0⊥")];
        assert!(Dpda::new(def.clone()).is_err());
        def.transitions = vec![Transition::new("q", "", Some("a"), "q", "")];
        assert!(Dpda::new(def.clone()).is_err());
        def.transitions = vec![Transition::new("q", "0", Some("zz"), "q", "")];
        assert!(Dpda::new(def).is_err());
    }

    #[test]
    fn unknown_input_symbol() {
        let m = machine(vec![], &[]);
        assert!(matches!(m.accepts(&["c"]), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn dot_lists_every_edge() {
        let m = machine(vec![Transition::new("q", "0", Some("a"), "f", "")], &["f"]);
        let dot = m.to_dot();
        assert!(dot.contains("\"f\" [shape=doublecircle]"));
        assert!(dot.contains("\"q\" -> \"f\" [label=\"a, 0 / ε\"]"));
    }
}

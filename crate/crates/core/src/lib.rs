//! Deciding the word problem of Thompson's group V in quadratic time.
//!
//! Elements of V are kept as reduced prefix-code tables ([`TableElement`]).
//! For a finite generating set Γ, a word `w` is trivial iff no cyclic rotation
//! of `w` lies in any of the languages `L_z` (`z ∈ {0,1}^maxlen(Γ)`), and the
//! reverse of each `L_z` is recognized by a small deterministic push-down
//! automaton ([`lz::build_lz`]). [`Decider`] sweeps rotations against those
//! machines; [`wp_oracle`] composes tables directly and serves as ground truth.
//!
//! ```
//! use vword::{GeneratingSet, Word, wp_decide, wp_oracle};
//!
//! let h = GeneratingSet::higman();
//! let w = Word::parse("g1 g2 g2 g1");
//! assert!(wp_decide(&h, &w).unwrap());
//! assert_eq!(wp_decide(&h, &w).unwrap(), wp_oracle(&h, &w).unwrap());
//! ```

pub mod bench;
pub mod bits;
pub mod cli;
pub mod decider;
pub mod error;
pub mod genset;
pub mod lab;
pub mod lz;
pub mod pda;
pub mod table;

pub use bits::Bitstring;
pub use decider::{cowp_decide, rotate, wp_decide, Decider, Witness};
pub use error::{Error, Result};
pub use genset::{
    apply_omega_element, apply_omega_word, neq_z0omega, word_to_element, wp_oracle, GeneratingSet, Word, ENDMARKER,
};
pub use lz::{build_lz, in_lz, lz_direct, LzCache, LzMachine};
pub use pda::{Configuration, Conflict, Dpda, DpdaDef, RunOptions, RunResult, Step, Transition};
pub use table::TableElement;

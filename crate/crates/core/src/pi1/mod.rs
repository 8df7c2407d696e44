//! Discrete fundamental groups at scale `r`: the filled threshold complex,
//! its first homology, a presentation of its fundamental group, greedy
//! triviality certificates, and explicit loop contractions.

mod certificate;
mod complex;
mod contract;
mod homology;
mod presentation;
mod snf;
mod trivialize;
pub mod words;

pub use certificate::{check_certificate, replay_trace};
pub use complex::{build_level_complex, build_scale_complex, ScaleComplex};
pub use contract::{check_r_loop, contract_loop, Contraction, HomotopyTrace, LoopMove, BRANCHING};
pub use homology::{cokernel, h1, H1Summary};
pub use presentation::{pi1_presentation, Presentation};
pub use snf::{dense_smith, invariant_factors, Column, DENSE_BUDGET};
pub use trivialize::{try_trivialize, Elimination, Trivialization, TrivialityCertificate, MAX_WORD_LEN};

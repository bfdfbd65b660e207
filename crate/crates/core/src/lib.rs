//! Exact Euler characteristics of automorphic local systems on the moduli
//! stacks `A_n` of principally polarized abelian varieties (level one).
//!
//! Results are virtual motives: integer combinations of Lefschetz classes
//! `L^k` tensored with symbolic classes of cusp forms. They specialize to
//! point counts `|A_n(F_q)|` and to Frobenius traces.
//!
//! The crate is organized bottom-up:
//!
//! * [`weyl`]: signed permutations, Kostant representatives, dot action.
//! * [`motive`]: the ring of virtual motives and its specializations.
//! * [`forms`]: elliptic cusp form data and the table of cuspidal families.
//! * [`arthur`]: Arthur parameters, signs and spin contributions.
//! * [`euler`]: intersection and compactly supported Euler characteristics.
//! * [`gl_euler`]: the trivial-character Euler characteristic of `GL_n(Z)`.

pub mod arthur;
pub mod error;
pub mod euler;
pub mod forms;
pub mod gl_euler;
pub mod motive;
pub mod weyl;

pub use error::{Error, Result};

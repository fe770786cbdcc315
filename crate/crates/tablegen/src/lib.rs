//! Table generation and golden-row verification on top of the
//! [`dirichlet`] crate.
//!
//! * [`emit`] renders any of the reference tables — character tables,
//!   `L(s, chi)` and `L'(s, chi)`, the prime L-series `S(s, chi)`, the
//!   prime zeta modulo function `P_{m,n}(s)`, residue-class Euler
//!   products `zeta_{m,n}(s)`, and the four constant families — either
//!   in the printed listings' space-aligned text layout or as
//!   newline-delimited JSON.
//! * [`goldens`] parses the embedded 50-digit reference rows, recomputes
//!   every one, and renders a deterministic pass/fail report.

pub mod emit;
pub mod goldens;

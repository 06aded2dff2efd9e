//! Ideal class groups of imaginary quadratic orders, exact integer lattices,
//! a toy CSIDH-style group action on supersingular curves over Fp, and
//! classical simulations of hidden-shift solvers, wired together so that the
//! full "recover the secret class from a public curve" pipeline can be run
//! and measured at desk scale.
//!
//! Module map:
//! - [`classgroup`]: reduced binary quadratic forms, Gauss composition,
//!   baby-step giant-step class numbers, group structure and discrete logs.
//! - [`lattice`]: exact HNF/SNF with transformations, LLL/BKZ reduction,
//!   Kannan-style enumeration and Babai's nearest plane.
//! - [`genset`]: selection of a small set of split primes whose classes
//!   generate the class group, by iterated HNF pivot inspection.
//! - [`oracle`]: short-decomposition oracle (precomputation + evaluation)
//!   and the exponent-size experiment harness.
//! - [`isogeny`]: Montgomery x-only arithmetic, Velu isogenies, the CSIDH
//!   group action and key exchange at toy parameters.
//! - [`hsp`]: hidden-shift instances over the class group and three solvers
//!   (simulated sieve, simulated poly-space solver, classical meet in the
//!   middle), plus the end-to-end attack driver.

pub mod classgroup;
pub mod genset;
pub mod hsp;
pub mod isogeny;
pub mod lattice;
pub mod oracle;

//! Exact symbolic models of Lusztig's divided-power quantum groups at roots
//! of unity, together with a verification suite that mechanically checks the
//! defining identities of the construction at concrete parameter values.
//!
//! The crate is organised bottom-up:
//! - [`laurent`]: arithmetic in `Z[v, v^-1]` and `Q(v)`, q-integers,
//!   q-factorials and Gaussian binomial coefficients;
//! - [`cyclotomic`]: the target field `B = Q[v]/(Phi_{l'})` of the
//!   specialization `v -> xi` and exact arithmetic in it;
//! - [`torus`]: the generic torus Hopf algebra over `Q(v)` in both its
//!   group-algebra and PBW-basis models, the binomial generators
//!   `[K_i; c; t]`, the polynomials `p_{n,s}` and the skew-primitive
//!   elements `h_{i,n}`;
//! - [`torus_special`]: the specialized torus at a root of unity in its
//!   group-times-polynomial normal form, and the machine verification of the
//!   splitting isomorphism;
//! - [`cartan`] and [`uq`]: simply-laced Cartan data, divided-power
//!   generators `E_i^(N)`, `F_i^(N)`, the relation set (d1)-(d5), (f1)-(f5),
//!   (h1)-(h6), and a straightening engine producing triangular normal forms;
//! - [`td`]: the triangular-decomposition datum (the actions `⇀`, `↼` and
//!   the pairing `♯`), its recursive extension to monomials, and the
//!   reconstruction of the product from the three factors;
//! - [`multi`]: the multiply-laced variant of the torus with per-vertex
//!   scaling exponents `d_i` and relations (b1)-(b5);
//! - [`expr`]: a small expression language for the CLI with a parser and a
//!   byte-stable renderer;
//! - [`report`] and [`suites`]: machine-readable check reports and the named
//!   verification suites run by the `lqg` binary and the acceptance tests.
//!
//! All arithmetic is exact (big integers and big rationals); there is no
//! floating point anywhere. Every value is immutable after construction and
//! safe to share across threads.

pub mod cartan;
pub mod cyclotomic;
pub mod error;
pub mod expr;
pub mod laurent;
pub mod multi;
pub mod report;
pub mod suites;
pub mod td;
pub mod torus;
pub mod torus_special;
pub mod uq;

pub use cyclotomic::{CycNum, CycParams};
pub use error::Error;
pub use laurent::{bar_involution, q_binomial, q_factorial, q_int, LaurentPoly, RatFunc};

//! Numerical toolkit for the quadrilateral zeta function
//!
//! ```text
//! 2Q(s,a) = ζ(s,a) + ζ(s,1-a) + Li_s(e^{2πia}) + Li_s(e^{2πi(1-a)}),   0 < a <= 1/2,
//! ```
//!
//! its real and complex zeros, and its decomposition into Dirichlet
//! L-functions at rational `a`.
//!
//! * [`sfcore`]: Γ, Bernoulli numbers, Hurwitz zeta, `Z`, `P`, `Q`, `ξ_Q`,
//!   Cauchy-circle derivatives.
//! * [`identities`]: residual checks for the functional equations and the
//!   closed forms at `a = 1/2, 1/3, 1/4, 1/6`, positivity, zero-free
//!   abscissa, Hadamard constants.
//! * [`realzeros`]: real-axis scans, the threshold `a₀`, `β_Z(a)`, and the
//!   classification of interior real zeros.
//! * [`complexzeros`]: argument-principle counting, zero census and the
//!   `N(T)` main term, critical-line scans, quadtree zero location.
//! * [`dirichlet`]: characters, Gauss sums, L-functions and the character
//!   decomposition of `Q(s, r/q)`.

pub mod complexzeros;
pub mod dirichlet;
pub mod error;
pub mod identities;
pub mod realzeros;
pub mod sfcore;

pub use error::{Error, ErrorKind, Result};
pub use sfcore::{AlphaParam, ComplexValue, EvalResult, EvalSettings, Method};

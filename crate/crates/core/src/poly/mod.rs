//! Laurent polynomials in `u = 1 + τ`, weighted moments, and sign certification on `[1, 3]`.

mod laurent;
mod moments;
mod sign;
mod sturm;

pub use laurent::{Antiderivative, JsonScalar, LaurentJson, LaurentPoly, TermJson, MIN_EXP, VAR_TAG};
pub use moments::{a_closed_form, compute_r, compute_r_rational, moment_integral, power_integral, rk_bounds, RkBounds};
pub use sign::{bracket_width, domain, interval_sign, sturm_sign, Method, SignCertificate, SignOnDomain, Verdict, MAX_DEPTH};
pub use sturm::{isolate_roots, DensePoly, SturmChain};

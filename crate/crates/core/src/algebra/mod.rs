//! The descendent algebra `Q[alpha, beta] (x) Lambda(psi_1, .., psi_2g)` and
//! the exterior algebra on `eps_1, .., eps_2g`.
//!
//! Degrees: `alpha` is (2, 2), `beta` is (4, 2) and each `psi_i` is (3, 2),
//! written as (cohomological, Chern).

mod basis;
mod element;
mod monomial;
mod parse;
mod pic;

pub use basis::{bidegrees, chern_filter_basis, monomial_basis, monomials_up_to};
pub use element::Element;
pub use monomial::{Bidegree, Genus, Monomial, Var};
pub use parse::parse_element;
pub use pic::{sigma_from_pic, PicClass};

pub(crate) use monomial::subsets;

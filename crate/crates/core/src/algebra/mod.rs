pub mod field;
pub mod matrix;
pub mod mpoly;
pub mod nf;
pub mod parser;
pub mod upoly;

pub use field::{rat, Field, Ring};
pub use matrix::{Minor, RankWitness, RingMatrix};
pub use mpoly::{MPoly, Monomial, Var};
pub use nf::{nf_invert, nf_reduce, NFElem};
pub use parser::parse_poly;
pub use upoly::{squarefree_part, upoly_gcd, QPoly, UPoly};

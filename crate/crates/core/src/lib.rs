//! Exact computation of the Aut(F_r) action on the rational homology of
//! G^r = Hom(F_r, G) for compact semisimple Lie groups G.
//!
//! * [`catalog`]: groups as degree sequences, Poincaré polynomials.
//! * [`grassmann`]: the Pontryagin ring H_*(G^r; Q) as a Grassmann algebra
//!   on bit-set monomials with exact coefficients.
//! * [`free_group`]: reduced words, automorphisms, abelianization, IA_r.
//! * [`action`]: the action by letter substitution (Path A) and through the
//!   abelianization (Path B), matrices, and the exterior-power factorization.
//! * [`verify`]: seeded checks of the kernel and image statements.
//!
//! ```
//! use aut_homology::{action::act_path_a, grassmann::{Context, HomologyClass}};
//!
//! let ctx = Context::from_degrees(&[3, 5], 3).unwrap();
//! let x = HomologyClass::parse(&ctx, "t1_1 t1_3 t2_1 t2_2").unwrap();
//! let y = act_path_a(&"R(1,3)".parse().unwrap(), &x).unwrap();
//! assert_eq!(y.to_string(), "t1_1 t1_3 t2_1 t2_2 - t1_1 t1_3 t2_2 t2_3");
//! ```

pub mod action;
pub mod catalog;
pub mod error;
pub mod free_group;
pub mod grassmann;
pub mod int;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
pub use int::Int;

//! Hilbert–Kunz functions and multiplicities of quotient rings over GF(p).
//!
//! The crate is layered bottom-up:
//!
//! * [`field`], [`monomial`], [`poly`]: prime-field arithmetic, exponent-vector
//!   monomials with lex / grevlex orders, sparse polynomials.
//! * [`groebner`], [`syzygy`], [`staircase`], [`ring`]: reduced Gröbner bases,
//!   normal forms, syzygies, staircase counting and Krull dimension.
//! * [`hk`], [`module`]: bracket powers, Hilbert–Kunz function samples for rings
//!   and finitely presented modules, and multiplicity estimates.
//! * [`constructions`]: fiber products over the residue field, amalgamated
//!   duplications and Nagata idealizations as explicit presentations.
//! * [`formulas`], [`series`]: exact closed forms, lower bounds and verdicts.
//! * [`spec`], [`job`], [`report`]: the input language, job runner and output.

pub mod constructions;
pub mod error;
pub mod field;
pub mod formulas;
pub mod groebner;
pub mod hk;
pub mod job;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod report;
pub mod ring;
pub mod series;
pub mod spec;
pub mod staircase;
pub mod syzygy;

pub use error::{HkError, Result};
pub use field::{FieldElement, PrimeField};
pub use groebner::{buchberger, ideal_equal, normal_form, GroebnerBasis};
pub use hk::{hk_estimate, hk_function, hk_module_function, EstimateMethod, HkEstimate, HkSample};
pub use module::ModulePresentation;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::Polynomial;
pub use ring::RingPresentation;
pub use spec::{parse_spec, Declarations};

/// Exact rationals used for every multiplicity, formula and bound.
pub type Rational = num_rational::BigRational;

pub mod enumeration;
pub mod error;
pub mod forms;
pub mod json;
pub mod membership;
pub mod moebius;
pub mod reduction;
pub mod ring;
pub mod surd;

pub use enumeration::{
    cross_check_cycles, enumerate_reduced, enumerate_reduced_with, EnumeratedForm,
    EnumerationOptions, EnumerationReport,
};
pub use error::{Error, NotGammaReason, Result};
pub use forms::{parse_form, validate_gamma_form, Orientation, ProjForm, ZeroPair};
pub use membership::{bd_interval_of, decide, parse_word, word_multiply, DecisionResult, Token};
pub use moebius::{generators, parse_matrix, HeckeGroup, MatrixClass, ProjMatrix};
pub use reduction::{interval_of, reduce, reduced_cycle_rotation_check, ReductionResult};
pub use ring::{make_context, ProjPoint, RingContext, RingInt, RingRat};
pub use surd::Surd;

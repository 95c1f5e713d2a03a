//! The doubled mutation quiver on maximal rigid sets, green-path detection
//! and enumeration, groupoid presentations and their vertex groups, normal
//! forms over arrangement fans, and the analogous groupoid built directly
//! from a hyperplane arrangement.

mod deligne;
mod green;
mod quiver;
mod tietze;
mod words;

pub use deligne::deligne_groupoid;
pub use green::{enter_exit, green_paths, green_presentation, is_green, normal_form, EnterExit};
pub use quiver::{build_quiver, Arrow, MutationQuiver, PathWord, Presentation, Step};
pub use tietze::{is_braid_relator, render_word, tietze_simplify, vertex_group, GroupPresentation, Letter};
pub use words::{words_equal_bounded, WordEquality};

use crate::fan::FanError;
use crate::forms::FormsError;
use crate::model::ModelError;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("word is not positive")]
    NotPositive,
    #[error("word is not a green path: {0}")]
    NotGreen(String),
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("unknown arrow: {0}")]
    UnknownArrow(String),
    #[error("steps do not compose: {0}")]
    NotComposable(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("quiver is disconnected: {0}")]
    Disconnected(String),
    #[error("normal form requires a hyperplane arrangement fan{0}")]
    NotArrangement(String),
    #[error("maximal rigid sets have inconsistent sizes: {0}")]
    InconsistentCardinalities(String),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

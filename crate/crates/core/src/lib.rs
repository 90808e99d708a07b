//! Exact engine for the Robin Hood and Little John heap rulesets.
//!
//! Games are interned in a [`GameStore`]; stops, thermographs and canonical
//! forms are memoized there. [`Engine`] adds the ruleset expansions on top.

pub mod closed_form;
pub mod dyadic;
mod error;
pub mod game;
pub mod pingala;
pub mod robinhood;
pub mod svg;
pub mod thermo;
pub mod verify;

pub use closed_form::{
    lj_stops_formula, main_mean, main_temperature, tent_prediction, threshold_search,
    ThresholdReport,
};
pub use dyadic::{Dyadic, DyadicError};
pub use error::{Error, Result};
pub use game::{GameId, GameNode, GameStore, Outcome, OutcomeClass, Player};
pub use pingala::{GoldenClass, MPSequence, Parity, Rational};
pub use robinhood::{Engine, PathStep, PathTrace, RHPosition, Ruleset};
pub use thermo::{TentClass, Thermograph, Vertex, Wall};

//! Dold-condition analysis for integer linear recurrent sequences.

pub mod decimal;
pub mod dold;
pub mod factorint;
pub mod numth;
pub mod polyring;
pub mod recurrence;

//! Reasoning and learning-protocol toolkit for ELK, the epistemic extension
//! of the description logic EL.

pub mod el;
pub mod elk;
pub mod learning;
pub mod semantics;
pub mod syntax;

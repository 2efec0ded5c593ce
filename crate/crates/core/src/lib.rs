//! Guarded recursion with a `Later` modality, infinite traversals over
//! guarded codata, and a testing harness based on evaluated bisimilarity.

pub mod data;
pub mod eval;
pub mod later;
pub mod effects;
pub mod traversals;
pub mod gen;
pub mod suite;
pub mod demo;

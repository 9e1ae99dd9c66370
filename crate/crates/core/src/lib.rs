pub mod error;
pub mod words;
pub mod presentations;
pub mod hypothesis;
pub mod mcg_catalog;
pub mod geometry;
pub mod vankampen;
pub mod filler;
pub mod cli;

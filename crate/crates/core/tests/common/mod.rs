#![allow(dead_code)]

pub mod listings;
pub mod programs;
pub mod sentences;
pub mod suite;
pub mod terms;

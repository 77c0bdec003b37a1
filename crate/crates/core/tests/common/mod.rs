#![allow(dead_code)]

pub mod lifts;
pub mod reps;

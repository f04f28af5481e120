//! Algorithm recognition over Java sources with structural search patterns.
//!
//! The pipeline runs in four stages: a pattern is written with the builder
//! DSL ([`dsl`]), compiled into a pattern tree ([`pattern`]), and matched
//! ([`matcher`]) against normalized syntax trees produced by the Java
//! front-end ([`java`], [`ast`]). [`catalog`] ships ready-made patterns and
//! [`bench`] scores detections against labeled corpora.

pub mod ast;
pub mod bench;
pub mod catalog;
pub mod dsl;
pub mod java;
pub mod matcher;
pub mod pattern;

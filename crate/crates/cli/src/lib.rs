//! Reports, parallel counting, verification suites and the command-line front end for
//! [`maxclass_core`].

pub mod cli;
pub mod parallel;
pub mod report;
pub mod verify;

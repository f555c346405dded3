#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod charsum;
pub mod codebuild;
pub mod cyclo;
pub mod error;
pub mod gfield;
pub mod oracle;
mod poly;

pub use cyclo::CyclotomicInteger;
pub use error::{Error, Result};
pub use gfield::{ExtElement, FieldContext, PrimeElement, SolutionSet};

pub mod canon;
pub mod class_xd;
pub mod complex;
pub mod connection;
pub mod curvature;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod operator;
mod par;
pub mod poly;
pub mod rational;
pub mod refine;
pub mod report;
pub mod roots;
pub mod wu;

pub use error::{Error, Result};

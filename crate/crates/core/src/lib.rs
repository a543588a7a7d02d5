//! Exact computation with valuations on rational function fields K(x) and
//! on truncated generalized power series fields k((G)).

pub mod certlab;
pub mod cli;
pub mod coeff;
pub mod hahn;
pub mod homog;
pub mod kxval;
pub mod ordgroup;
pub mod rational;

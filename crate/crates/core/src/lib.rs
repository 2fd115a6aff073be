//! Basketball shot model and a validated "ladder of abstraction" figure
//! sequence rendered to SVG.

pub mod cli;
pub mod kinematics;
pub mod ladder;
pub mod render;
pub mod scalarmin;
pub mod solver;

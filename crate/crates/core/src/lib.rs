pub mod constructions;
pub mod extensions;
pub mod game;
pub mod graph;
pub mod logic;
pub mod mc;
pub mod rational;
pub mod thresholds;

pub use graph::{Graph, GraphError};
pub use rational::{ratio, Rational};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/intro.md")]
mod book_intro {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/graphs.md")]
mod book_graphs {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/extensions.md")]
mod book_extensions {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/logic.md")]
mod book_logic {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/games.md")]
mod book_games {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/constructions.md")]
mod book_constructions {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/thresholds.md")]
mod book_thresholds {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/monte-carlo.md")]
mod book_monte_carlo {}
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

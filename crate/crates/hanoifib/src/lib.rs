//! Tower of Hanoi-Fibonacci: solvers, numeration, Gray-like codes and state graphs.
//!
//! The classical Tower of Hanoi moves one disk at a time and needs `2^n - 1`
//! moves. Replacing single-disk moves by *Fibonacci moves* (the top disk `k` of
//! one peg and the tower `1..k-1` of another peg travel together to the third
//! peg) yields a puzzle whose optimal solution takes `F_{n+2} - 1` moves. This
//! crate models the puzzle and its generalizations:
//!
//! - [`core_state`]: disks, pegs, states, rule sets, move legality/application;
//! - [`numeration`]: Fibonacci numbers and Zeckendorf expansions;
//! - [`solver`]: recursive and Zeckendorf-driven iterative optimal solvers;
//! - [`graycode`]: the Gray-like code on binary words without the factor `11`;
//! - [`state_graph`]: the full state graph, BFS, SCCs and a Sierpinski-style
//!   embedding with pseudo-edge jumps;
//! - [`verify`]: brute-force oracles and runnable check suites.

pub mod core_state;
pub mod graycode;
pub mod numeration;
pub mod solver;
pub mod state_graph;
pub mod verify;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

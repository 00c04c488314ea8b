//! Two monads on the category of finite simple graphs and their algebras.
//!
//! * [`matching`]: the pendant-edge monad `T`, whose algebras are graphs
//!   with a perfect matching.
//! * [`steiner`]: the triangle monad `S`, whose algebras are partial
//!   Steiner triple systems.
//!
//! Both are described vertex by vertex through [`monad::GraphMonad`], and
//! every law (functor, naturality, monad, algebra) is checked pointwise over
//! concrete graphs with [`category::diagram_commutes`], reporting the first
//! vertex where a diagram fails to commute.

pub mod category;
pub mod family;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod label;
pub mod matching;
pub mod monad;
pub mod steiner;

pub use category::{compose, diagram_commutes, enumerate_homs, identity, Hom, Verdict};
pub use graph::Graph;
pub use label::{Bit, VertexLabel};
pub use matching::{PerfectMatching, TAlgebra};
pub use steiner::{Psts, SAlgebra};

pub mod bounds;
pub mod engine;
pub mod io;
pub mod quiver;
pub mod symbolic;
pub mod sweep;
pub mod words;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    mod quivers {}
    #[doc = include_str!("../../../book/src/equivalence.md")]
    mod equivalence {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/symbolic.md")]
    mod symbolic {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

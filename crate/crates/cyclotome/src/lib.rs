//! Exact computations with (co)cyclic modules built from coends of ribbon
//! Hopf algebra representation categories.

pub mod linalg;
pub mod cyclic_cat;
pub mod hopf;
pub mod coend;
pub mod cyclic_modules;
pub mod homology;
pub mod tqft;
pub mod cli;

/// The guide in `book/`, compiled here so its snippets run as doc-tests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/cyclic_category.md")]
    pub mod cyclic_category {}
    #[doc = include_str!("../../../book/src/exact_linalg.md")]
    pub mod exact_linalg {}
    #[doc = include_str!("../../../book/src/hopf.md")]
    pub mod hopf {}
    #[doc = include_str!("../../../book/src/coend.md")]
    pub mod coend {}
    #[doc = include_str!("../../../book/src/cyclic_modules.md")]
    pub mod cyclic_modules {}
    #[doc = include_str!("../../../book/src/homology.md")]
    pub mod homology {}
    #[doc = include_str!("../../../book/src/tqft.md")]
    pub mod tqft {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

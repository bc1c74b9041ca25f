//! Compiles the guide's code blocks as doc-tests, one module per chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/terms.md")]
pub mod terms {}
#[doc = include_str!("../../../book/src/tableaux.md")]
pub mod tableaux {}
#[doc = include_str!("../../../book/src/basis.md")]
pub mod basis {}
#[doc = include_str!("../../../book/src/realization.md")]
pub mod realization {}
#[doc = include_str!("../../../book/src/normal-forms.md")]
pub mod normal_forms {}
#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

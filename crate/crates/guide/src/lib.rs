//! Runs the Rust listings of the book as doc-tests. One module per chapter
//! so a failure names its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/library.md")]
pub mod library {}
#[doc = include_str!("../../../book/src/problem-files.md")]
pub mod problem_files {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/reports.md")]
pub mod reports {}
#[doc = include_str!("../../../book/src/worked-examples.md")]
pub mod worked_examples {}

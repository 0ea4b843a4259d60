//! Symbolic model of a CAT(0) cube complex on which the genus-two handlebody
//! group acts: vertices are pants decompositions of non-separating meridians
//! with dual systems, named by a word in the pants tree and three twist
//! coordinates. Everything is computed from these names, never from a stored
//! complex, except where a finite ball is materialised for checking.

pub mod cli;
pub mod contact;
pub mod disk;
pub mod error;
pub mod export;
pub mod factor;
pub mod hyperplane;
pub mod model;
pub mod oracle;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};

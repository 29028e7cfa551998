pub mod homology;
pub mod index;
pub mod star;

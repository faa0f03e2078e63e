pub mod algebra;
pub mod bitset;
pub mod corpus;
pub mod document;
pub mod duality;
pub mod error;
pub mod kripke;
pub mod order;
pub mod topology;
pub mod verdict;

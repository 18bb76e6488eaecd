pub mod corpus;
pub mod par;
pub mod report;
pub mod suite;
pub mod verify;

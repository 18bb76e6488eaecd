pub mod exec;
pub mod scenario;

pub mod config;
pub mod golden;
pub mod sweep;

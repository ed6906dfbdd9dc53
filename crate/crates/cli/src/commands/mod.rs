pub mod expand;
pub mod lemniscate;
pub mod project;
pub mod tables;

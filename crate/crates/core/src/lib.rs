pub mod classify;
pub mod cli;
pub mod cyclo;
pub mod error;
pub mod fusion;
pub mod linalg;
pub mod modular;
pub mod numjson;
pub mod quiver;

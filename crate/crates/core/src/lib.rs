pub mod cli;
pub mod encode;
pub mod error;
pub mod gen;
pub mod io;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod ring;
pub mod sparsify;

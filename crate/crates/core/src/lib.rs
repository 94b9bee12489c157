pub mod error;
pub mod extensions;
pub mod numerics;
pub mod poly;
pub mod potentials;
pub mod special_functions;
pub mod susy;

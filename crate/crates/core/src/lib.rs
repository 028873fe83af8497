//! Legitimate colorings of finite projective planes and the machinery around
//! them: plane construction, coloring search, large-order probability bounds,
//! Local Lemma criteria, entropy-compression runners with lossless record
//! decoding, Dyck-word counting, generating functions and prefix codes.

pub mod bounds;
pub mod coding;
pub mod config;
pub mod dyck;
pub mod ecrun;
pub mod genfun;
pub mod legit;
pub mod lll;
pub mod plane;

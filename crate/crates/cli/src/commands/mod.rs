pub mod converge;
pub mod finite;
pub mod gallery;
pub mod moments;
pub mod selftest;
pub mod transform;

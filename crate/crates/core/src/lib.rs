pub mod acceptance;
pub mod census;
pub mod cubicperm;
pub mod gf;
pub mod polyring;
pub mod projfunc;
pub mod ring;

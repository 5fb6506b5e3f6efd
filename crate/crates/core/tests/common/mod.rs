pub mod naive;
pub mod sample;

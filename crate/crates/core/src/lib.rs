pub mod cocycle;
pub mod error;
pub mod expansion;
pub mod homology;
pub mod linsys;
pub mod mcg;
pub mod pairing;
pub mod qform;
pub mod relf;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod tensor;
pub mod word;

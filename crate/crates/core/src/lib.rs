pub mod bell;
pub mod exact;
pub mod ks;
pub mod logic;
pub mod meyer;
pub mod mkc;
pub mod quantum;
pub mod rng;
pub mod tolerance;
pub mod verify;

pub mod bounds;
pub mod certify;
pub mod check;
pub mod construct;
pub mod exact;

pub mod analyze;
pub mod construct;
pub mod enumerate;
pub mod present;
pub mod verify;

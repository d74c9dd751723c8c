pub mod algebra;
pub mod catalog;
pub mod cobar;
pub mod engine;
pub mod group;
pub mod knot;
pub mod presented;
pub mod profile;
pub mod quotient;
pub mod verify;
pub mod wirtinger;

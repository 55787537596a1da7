//! placeholder
pub struct BladeLabel;
pub struct AlcoveLocation;

//! placeholder
pub struct CanonicalElement;
pub struct GraduatedBlade;
pub struct IntPolynomial;

//! Twisted Ringel–Hall algebra over `F_q`: Laurent polynomials and Gaussian
//! binomials, exact scalars in `ℚ(√q)`, brute-force Hall numbers, products,
//! and the quantum Serre relations.

mod hall;
mod laurent;
mod scalar;

pub use hall::{
    extension_classes, hall_number, hall_polynomial, hall_product, serre_check, serre_element,
    twist_exponent, HallElement, DEFAULT_CAP,
};
pub use laurent::{gaussian, quantum_integer, LaurentPoly};
pub use scalar::QuadraticScalar;

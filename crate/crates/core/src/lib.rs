//! Exact resolution of inseparable cyclic-cover singularities `y^m = s` in
//! characteristic `p | m`.
//!
//! Layers, bottom up: [`field`] (finite fields), [`poly`] (sparse
//! polynomials and Gröbner bases), [`germ`] (hypersurface germs, blowup
//! charts, smoothness certificates), [`classify`] (critical points and the
//! normal form), [`resolve`] (the blowup pipeline and form calculus) and
//! [`cli`] (JSON formats, generators, census, parameter arithmetic).

pub mod classify;
pub mod cli;
pub mod field;
pub mod germ;
pub mod poly;
pub mod resolve;

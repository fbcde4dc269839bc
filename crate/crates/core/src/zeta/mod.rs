//! Geometric zeta functions: closed forms, poles, residues, truncated
//! series and Euler-type products.

mod closed_form;
mod dirichlet;
mod products;

pub use closed_form::{
    zeta_of, ComplexDimension, Dimension, DimensionExact, GeometricZeta, Residue, Shape,
    ZetaClosedForm, ZetaSummary, POLE_GUARD,
};
pub use dirichlet::{dirichlet_partial, dirichlet_partial_exact, residue_numeric, DirichletPartial, ExactPartial};
pub use products::{
    adelic_eval_at_one, adelic_factors, adelic_partial_product, euler_partial_product,
    euler_partial_product_exact, euler_riemann_partial, euler_riemann_partial_exact,
    harmonic_partial, harmonic_partial_exact, veneziano_amplitude, AdelicAtOne, AdelicFactor,
    AdelicFamily, AdelicPartial, FactorValue, Trend, TREND_THRESHOLD,
};

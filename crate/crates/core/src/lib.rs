pub mod error;
pub mod foundations;
pub mod polynomials;
pub mod quadrature;
pub mod plane_wave;
pub mod quadrature_weight;
pub mod t_calculus;
pub mod second_kind;
pub mod recursion_asymptotics;
pub mod sturm_liouville;
pub mod verify;
pub mod cli;

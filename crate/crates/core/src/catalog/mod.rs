//! Ready-made structures used by tests, examples and the command line.

pub mod finite;
pub mod normed;
pub mod numeric;

pub use finite::{
    as_table, cyclic, cyclic_with, direct_product, hurwitz_group, klein, max_chain, quat, quaternion_group,
    quaternion_group_identity_conj, quaternion_table, symmetric3, trivial, AbelianConj,
};
pub use normed::{
    gaussian_ball, normed, quaternion_ball, rational_ball, rational_interval, scaled_unit_gaussians,
    scaled_unit_quaternions, unit_circle, unit_part, unit_quaternions, Region, Scalar,
};
pub use numeric::{free_semigroup, naturals, NatConj, NatOp};

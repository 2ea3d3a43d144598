//! Operads given by binary quadratic presentations: multilinear
//! components, consequence spaces, Koszul duals, white products and
//! membership in T-ideals.

pub mod component;
pub mod koszul;
pub mod membership;
pub mod o3;
pub mod presentation;
pub mod white;

pub use component::{component_dim, consequences, e_basis, span_equal, Component, Consequence, EGen, MonomialIndex};
pub use koszul::{dual_op, dual_signature, koszul_dual_degree3, KoszulDual};
pub use membership::{tideal_membership, Certificate, MembershipReport};
pub use o3::{gd_relation_vectors, O3Space, RelationRow};
pub use presentation::{OpDecl, Presentation, PresentationFile};
pub use white::{white_product_degree3, WhiteGenerator, WhiteProduct};

/// `component_basis(pres, n)`: the degree-`n` component with its
/// consequence space.
pub fn component_basis(pres: &Presentation, n: usize) -> crate::error::Result<Component> {
    if !(1..=4).contains(&n) {
        return Err(crate::error::Error::UnsupportedDegree(n));
    }
    Component::build(pres, &[], n, None, false)
}

//! Membership tests, witnesses and finite-field samplers for the degeneracy loci of a
//! four-form: the Coble quartic and its Kummer singular locus in ℙ⁷, the Coble quadric and
//! its singular locus D in G(2,8), the abelian threefold in Fl(1,7;8), and the bidegree
//! (2,2) hypersurface.

mod abelian;
mod grass;
mod quartic;
mod sampler;

pub use abelian::{ac_fiber_over_kummer, ac_member, bidegree22_value, v3_bar, AcVerdict, FiberScan};
pub use grass::{
    full_two_form, quadric_gradient, quadric_value, quadric_value_in_chart, rank_stratum_g28, singular_along_d, u4_witness_g28, u6_witness_g28,
    G28Label, PluckerPencil,
};
pub use quartic::{q_form, q_form_with_volume, KummerVerdict, P7Label, QuarticEvaluator};
pub use sampler::{
    moduli_witness, sample_kummer, sample_moduli, sample_quadric, sample_quartic, KummerHit, ModuliHit, QuadricHit, QuarticHit, SampleReport, SamplerConfig,
};

/// Flag patterns used throughout, in the syntax of [`crate::exterior::WedgePattern`].
pub mod patterns {
    /// The quadric condition at `U₂ ⊂ U₄`.
    pub const QUADRIC_U4: &str = "V^3 U2 + U4^2 V^2";
    /// The refined quadric condition at `U₂ ⊂ U₄ ⊂ U₆`.
    pub const QUADRIC_U6: &str = "U2 U6^2 V + U4^2 V^2";
    /// The moduli condition at `U₂ ⊂ U₆`.
    pub const MODULI: &str = "V^3 U2 + U6^4";
    /// The abelian threefold condition at `U₁ ⊂ U₄ ⊂ U₇`.
    pub const ABELIAN: &str = "U4^3 V + U7^4 + V^3 U1";
    /// The quartic tangency condition at `U₁ ⊂ U₄ ⊂ U₇`.
    pub const QUARTIC_TANGENT: &str = "U4^2 V^2 + U7^3 U1";
}

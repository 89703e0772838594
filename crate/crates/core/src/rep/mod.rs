//! Representation-theoretic bookkeeping: Schur modules of `GL_m`, Bott–Borel–Weil on partial
//! flag varieties, bundles given by graded pieces, and the resolutions attached to the moduli
//! locus in `G(2,8)`.

mod bbw;
mod bundle;
mod resolutions;
mod schur;

pub use bbw::{bbw, Cohomology, CohomologyTable, FlagType, Weight};
pub use bundle::{koszul_euler_characteristic, koszul_tables, Bundle};
pub use resolutions::{
    betti_table, divide_out_one_minus_t, hilbert_numerator, hypercohomology_candidates, ideal_resolution, m_resolution, normal_bundle_data, normal_bundle_expected,
    pfaffian_ideal_resolution, verify_resolution_suite, AffineTerm, Check, GrassTerm, M_BETTI_TABLE,
};
pub use schur::{cauchy_wedge, conjugate, hook_content_dim, is_dominant, partitions, schur_dim, straighten, tensor, wedge_of_wedge2, weights_of, RepSum};

//! Weight-two cusp forms as q-expansions, the antiderivative `H` on the
//! upper half plane and at cusps, the unitary twisting character and the
//! period data of `Gamma_0(l)`.

mod antiderivative;
mod eta;
pub mod format;
mod group;
mod period;
mod series;

pub use antiderivative::{h_cusp, h_cusp_with_completion, h_upper, PeriodTable};
pub use eta::{eta_product_weight2, weight4_level11_square};
pub use group::{
    completion, gamma0_cosets, gamma0_generators, gamma1_cosets, CuspRational, GroupElement,
    HalfPlanePoint,
};
pub use period::{period_data, twist_character, PeriodData};
pub use series::FourierSeries;

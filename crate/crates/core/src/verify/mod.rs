//! Executable checks of the identities, closed forms, constants and
//! asymptotics. Exact checks compare big integers, rationals or formal log
//! sums and require a zero residual; the rest carry explicit tolerances.

pub mod euler;
pub mod lemma;
pub mod mangoldt;
pub mod phi;
pub mod report;
pub mod tables;
pub mod theorem1;

pub use euler::{dirichlet_partial, euler_product_check, euler_series, EulerSample, EulerSeries};
pub use lemma::{check_duality, check_rank_lemma};
pub use mangoldt::{
    asymptotic_mangoldt_report, check_asymptotic_windows, check_constant_c, check_logprod, check_pi_alpha, constant_c, ep_product,
    ep_weighted_sum, logprod_closed_form, pi_alpha, pi_alpha_bound_report, LogProdSample, PiAlphaReport,
    PiAlphaSample,
};
pub use phi::{check_phi_identity, check_phi_recursive, phi_recursive_fib};
pub use report::{AsymptoticSample, ExactValue, Outcome, Quantity, ReportBuilder, VerificationReport};
pub use tables::{check_closed_forms, check_fixed_point, check_lambda_alpha, check_t_tables};
pub use theorem1::{alpha_set, check_corollary_completely_mult, check_theorem1};

//! Random instance generation, executable checks of the simplicity
//! criteria, counterexample shrinking, and campaigns.

mod campaign;
mod checks;
mod generate;
pub mod groups;
mod shrink;

pub use campaign::{
    materialize, parse_seed_file, plan_corpus, run_campaign, run_sources, CampaignConfig, Outcome, ShrunkFailure,
    Source, Summary,
};
pub use checks::{
    check_axioms, check_commutative_a, check_estonia, check_faithfulness, check_intersections, check_minimality,
    check_oracle, check_partial_transfer, check_report, check_simplicity_a, check_simplicity_b, check_structure,
    check_theorem3, check_top_free_maxcomm, rerun_check, run_checks, CheckConfig, CheckResult, Facts, Mutation,
};
pub use generate::{
    gen_groupoid_system, gen_locally_abelian_groupoid_system, gen_partial_system, GenBounds, GenError, Generator,
    Instance, Tags,
};
pub use shrink::shrink;

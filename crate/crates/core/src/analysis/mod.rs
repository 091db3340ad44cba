//! Closed-form oracles and the numerical experiments built on them.

pub mod chain;
pub mod formulas;
pub mod level_set;
pub mod output;
pub mod soundness;
pub mod table;

pub use chain::{chain_qet_report, ChainReport};
pub use formulas::{analytic_conditional, analytic_h1_v, delta_grid, delta_sensitivity, EnergyReport};
pub use level_set::{observable_level_set, post_round_paulis, theta_level_set, ParamPair};
pub use output::{write_csv, write_csv_file};
pub use soundness::{attack_energy, soundness_sweep, AttackSample, SoundnessResult};
pub use table::{analytic_row, simulated_row, TableRow, TABLE_MODELS};

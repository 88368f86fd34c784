//! Figure reproductions and generic sweeps: JSON config in, CSV out.

pub mod config;
pub mod output;
pub mod plot;
pub mod rng;
pub mod runners;

pub use config::{DisorderConfig, Draw, EdConfig, ExperimentId, Grid, ModelConfig, SweepConfig, SweepOptions, SweepQuantity};
pub use output::{strip_timestamp, Method, Row, RunMetadata, Status, SweepResult, INF_MARKER};
pub use plot::plot_script;
pub use rng::SplitMix64;
pub use runners::{
    generate_defects, run, run_fig2, run_fig3, run_fig4, run_fig5, run_fig6, run_fig7, run_sweep, Executor,
    RunOptions,
};

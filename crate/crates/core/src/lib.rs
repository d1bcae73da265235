//! Rolling-bearing fault diagnosis with a bias-free extreme learning machine
//! whose input weights come from the chaotic logistic map.
//!
//! The pipeline: cut raw vibration records into windows ([`dataio`]), compute
//! time-domain features ([`features`]), pick a subset by forward selection
//! ([`sfs`]), then train the classifier ([`elm`]) in one least-squares solve
//! ([`linalg`]) with weights generated by [`chaos`]. [`eval`] holds the
//! experiment harness and [`synthetic`] a seeded bearing-like data source.

pub mod chaos;
pub mod cli;
pub mod dataio;
pub mod elm;
pub mod error;
pub mod eval;
pub mod features;
pub mod linalg;
pub mod sfs;
pub mod synthetic;

pub use chaos::{build_weight_matrix, logistic_sequence, ChaosConfig, WeightMatrix};
pub use dataio::{load_signal, window_signal, DatasetManifest, SplitDataset};
pub use elm::{accuracy, train, Activation, ElmConfig, TrainedModel};
pub use error::{Error, Result};
pub use features::{extract_feature, extract_matrix, FeatureId, FeatureMatrix, SignalWindow};
pub use linalg::{lstsq_min_norm, pinv, Matrix};
pub use sfs::{sfs_select, SfsConfig, SfsTrace};

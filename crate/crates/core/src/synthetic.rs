//! Seeded generator for bearing-like vibration data.
//!
//! Every class is a continuous record sampled at 12 kHz: broadband noise, a
//! weak shaft-rate tone and, for fault classes, a train of exponentially
//! decaying resonance bursts. Fault classes differ in burst period, burst
//! amplitude, timing jitter and resonance frequency, loosely following the
//! inner-race, ball and outer-race fault families of a deep-groove bearing.
//! The default table has eleven classes: one normal condition and two fault
//! sizes for each of five fault locations.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::dataio::{write_signal, DatasetManifest, ManifestEntry, DEFAULT_WINDOW_LEN};
use crate::error::{Error, Result};
use crate::features::SignalWindow;

pub const SAMPLE_RATE_HZ: f64 = 12_000.0;
pub const DEFAULT_SEED: u64 = 20_220_131;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassProfile {
    pub name: String,
    /// Mean spacing of fault bursts in samples; `None` for a healthy bearing.
    pub burst_period: Option<f64>,
    /// Peak burst amplitude.
    pub burst_amplitude: f64,
    /// Burst timing jitter as a fraction of the period.
    pub jitter: f64,
    /// Relative spread of individual burst amplitudes.
    pub amplitude_spread: f64,
    pub resonance_hz: f64,
    /// Burst decay constant in samples.
    pub decay: f64,
    /// Depth of shaft-rate amplitude modulation, 0 for none.
    pub modulation: f64,
    pub noise_std: f64,
}

impl ClassProfile {
    fn healthy(name: &str, noise_std: f64) -> Self {
        Self {
            name: name.into(),
            burst_period: None,
            burst_amplitude: 0.0,
            jitter: 0.0,
            amplitude_spread: 0.0,
            resonance_hz: 0.0,
            decay: 1.0,
            modulation: 0.0,
            noise_std,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn fault(
        name: &str,
        period: f64,
        amplitude: f64,
        jitter: f64,
        resonance_hz: f64,
        decay: f64,
        modulation: f64,
        noise_std: f64,
    ) -> Self {
        Self {
            name: name.into(),
            burst_period: Some(period),
            burst_amplitude: amplitude,
            jitter,
            amplitude_spread: 0.2,
            resonance_hz,
            decay,
            modulation,
            noise_std,
        }
    }
}

/// Eleven classes: normal, then inner race, ball, and outer race at three
/// load-zone positions, each at a small and a large fault size.
pub fn default_profiles() -> Vec<ClassProfile> {
    vec![
        ClassProfile::healthy("N", 0.065),
        ClassProfile::fault("IF007", 74.0, 0.64, 0.02, 3100.0, 18.0, 0.5, 0.08),
        ClassProfile::fault("IF021", 74.0, 1.52, 0.02, 3300.0, 14.0, 0.5, 0.10),
        ClassProfile::fault("BF007", 85.0, 0.32, 0.60, 2600.0, 10.0, 0.0, 0.08),
        ClassProfile::fault("BF021", 85.0, 0.59, 0.60, 2800.0, 10.0, 0.0, 0.09),
        ClassProfile::fault("OF3_007", 112.0, 1.23, 0.01, 3500.0, 25.0, 0.0, 0.08),
        ClassProfile::fault("OF3_021", 112.0, 2.77, 0.01, 3700.0, 25.0, 0.0, 0.10),
        ClassProfile::fault("OF6_007", 108.0, 3.08, 0.01, 3600.0, 30.0, 0.0, 0.10),
        ClassProfile::fault("OF6_021", 108.0, 1.65, 0.01, 3400.0, 30.0, 0.0, 0.09),
        ClassProfile::fault("OF12_007", 116.0, 1.05, 0.01, 3200.0, 22.0, 0.0, 0.08),
        ClassProfile::fault("OF12_021", 116.0, 2.45, 0.01, 3000.0, 22.0, 0.0, 0.09),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticConfig {
    pub profiles: Vec<ClassProfile>,
    pub windows_per_class: usize,
    pub window_len: usize,
    pub seed: u64,
    /// Multiplies every amplitude and noise level; models a change of load.
    pub amplitude_scale: f64,
    pub shaft_hz: f64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            profiles: default_profiles(),
            windows_per_class: 60,
            window_len: DEFAULT_WINDOW_LEN,
            seed: DEFAULT_SEED,
            amplitude_scale: 1.0,
            shaft_hz: 29.95,
        }
    }
}

impl SyntheticConfig {
    fn validate(&self) -> Result<()> {
        if self.profiles.is_empty() || self.windows_per_class == 0 || self.window_len < 2 {
            return Err(Error::InvalidArgument(
                "synthetic data needs at least one class, one window and two samples".into(),
            ));
        }
        if !(self.amplitude_scale > 0.0) {
            return Err(Error::InvalidArgument(
                "amplitude scale must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// One continuous record for a class, `len` samples long.
pub fn class_signal(
    profile: &ClassProfile,
    len: usize,
    scale: f64,
    shaft_hz: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    let noise = Normal::new(0.0, 1.0).expect("unit normal");
    let shaft = 2.0 * PI * shaft_hz / SAMPLE_RATE_HZ;
    let shaft_phase = rng.random_range(0.0..2.0 * PI);
    let mut x: Vec<f64> = (0..len)
        .map(|t| {
            scale
                * (profile.noise_std * noise.sample(rng)
                    + 0.02 * (shaft * t as f64 + shaft_phase).sin())
        })
        .collect();

    let Some(period) = profile.burst_period else {
        return x;
    };
    let omega = 2.0 * PI * profile.resonance_hz / SAMPLE_RATE_HZ;
    let tail = (profile.decay * 8.0).ceil() as usize;
    let mut onset = rng.random_range(0.0..period);
    while (onset as usize) < len {
        let start = onset + profile.jitter * period * rng.random_range(-0.5..0.5);
        let start = start.max(0.0);
        let modulation = 1.0 + profile.modulation * (shaft * start).cos();
        let amp = scale
            * profile.burst_amplitude
            * modulation
            * (1.0 + profile.amplitude_spread * noise.sample(rng)).max(0.1);
        let phase = rng.random_range(0.0..2.0 * PI);
        let first = start.ceil() as usize;
        for t in first..(first + tail).min(len) {
            let dt = t as f64 - start;
            x[t] += amp * (-dt / profile.decay).exp() * (omega * dt + phase).sin();
        }
        onset += period;
    }
    x
}

/// Per-class records, each `windows_per_class * window_len` samples.
pub fn generate_signals(config: &SyntheticConfig) -> Result<Vec<Vec<f64>>> {
    config.validate()?;
    let len = config.windows_per_class * config.window_len;
    Ok(config
        .profiles
        .iter()
        .enumerate()
        .map(|(c, profile)| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1000 * (c as u64 + 1)));
            class_signal(
                profile,
                len,
                config.amplitude_scale,
                config.shaft_hz,
                &mut rng,
            )
        })
        .collect())
}

/// The generated data as labelled, non-overlapping windows grouped by class.
pub fn generate_windows(config: &SyntheticConfig) -> Result<BTreeMap<usize, Vec<SignalWindow>>> {
    let signals = generate_signals(config)?;
    signals
        .into_iter()
        .enumerate()
        .map(|(c, signal)| {
            let label = c + 1;
            let windows = signal
                .chunks_exact(config.window_len)
                .map(|w| SignalWindow::labeled(w.to_vec(), label))
                .collect::<Result<Vec<_>>>()?;
            Ok((label, windows))
        })
        .collect()
}

/// Writes one signal file per class plus `manifest.json` into `dir` and
/// returns the manifest path.
pub fn write_dataset(dir: impl AsRef<Path>, config: &SyntheticConfig) -> Result<PathBuf> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let signals = generate_signals(config)?;
    let mut entries = Vec::with_capacity(signals.len());
    for (c, (signal, profile)) in signals.iter().zip(&config.profiles).enumerate() {
        let file = format!("class_{:02}_{}.txt", c + 1, profile.name);
        write_signal(dir.join(&file), signal)?;
        entries.push(ManifestEntry {
            path: file.into(),
            label: c + 1,
            class_name: profile.name.clone(),
        });
    }
    let mut manifest = DatasetManifest::new(entries);
    manifest.window_len = config.window_len;
    manifest.seed = config.seed;
    let path = dir.join("manifest.json");
    manifest.save(&path)?;
    Ok(path)
}

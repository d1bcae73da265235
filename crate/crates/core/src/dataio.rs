//! Signal files, windowing, dataset manifests and train/verify/test splits.
//!
//! A signal file is UTF-8 text with one decimal value per line (LF or CRLF).
//! A single non-numeric first line is taken as a CSV header and skipped.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::SignalWindow;

pub const DEFAULT_WINDOW_LEN: usize = 2048;
pub const DEFAULT_SPLIT: [f64; 3] = [4.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0];

/// Reads one real per line.
pub fn load_signal(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_signal(&text, path)
}

pub fn parse_signal(text: &str, path: &Path) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(_) => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: format!("non-finite value `{line}`"),
                })
            }
            Err(_) if i == 0 && !line.contains(',') => continue,
            Err(_) => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: format!("expected a number, found `{line}`"),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: "empty signal".into(),
        });
    }
    Ok(values)
}

pub fn write_signal(path: impl AsRef<Path>, signal: &[f64]) -> Result<()> {
    let path = path.as_ref();
    let mut text = String::with_capacity(signal.len() * 24);
    for v in signal {
        text.push_str(&format!("{v:?}\n"));
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Cuts windows at offsets `0, stride, 2*stride, ...`; a trailing partial
/// window is dropped.
pub fn window_signal(signal: &[f64], window_len: usize, stride: usize) -> Result<Vec<Vec<f64>>> {
    if window_len < 2 || stride == 0 {
        return Err(Error::InvalidArgument(format!(
            "window length must be >= 2 and stride >= 1, got {window_len} and {stride}"
        )));
    }
    if signal.len() < window_len {
        return Err(Error::SignalTooShort {
            len: signal.len(),
            window_len,
        });
    }
    let count = (signal.len() - window_len) / stride + 1;
    Ok((0..count)
        .map(|k| signal[k * stride..k * stride + window_len].to_vec())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub label: usize,
    #[serde(default)]
    pub class_name: String,
}

fn default_window_len() -> usize {
    DEFAULT_WINDOW_LEN
}

fn default_split() -> [f64; 3] {
    DEFAULT_SPLIT
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub entries: Vec<ManifestEntry>,
    #[serde(default = "default_window_len")]
    pub window_len: usize,
    /// Defaults to `window_len` (non-overlapping windows).
    #[serde(default)]
    pub stride: Option<usize>,
    #[serde(default = "default_split")]
    pub split: [f64; 3],
    #[serde(default)]
    pub seed: u64,
    /// Shuffle each class before splitting instead of splitting in time order.
    #[serde(default)]
    pub shuffle: bool,
    /// Keep at most this many windows per class (earliest first).
    #[serde(default)]
    pub max_windows_per_class: Option<usize>,
    /// Directory that relative entry paths resolve against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl DatasetManifest {
    pub fn new(entries: Vec<ManifestEntry>) -> Self {
        Self {
            entries,
            window_len: DEFAULT_WINDOW_LEN,
            stride: None,
            split: DEFAULT_SPLIT,
            seed: 0,
            shuffle: false,
            max_windows_per_class: None,
            base_dir: PathBuf::new(),
        }
    }

    pub fn stride(&self) -> usize {
        self.stride.unwrap_or(self.window_len)
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::InvalidManifest("no entries".into()));
        }
        if let Some(e) = self.entries.iter().find(|e| e.label == 0) {
            return Err(Error::InvalidManifest(format!(
                "{}: labels are 1-based",
                e.path.display()
            )));
        }
        if self.window_len < 2 {
            return Err(Error::InvalidManifest(
                "window_len must be at least 2".into(),
            ));
        }
        if self.stride() == 0 {
            return Err(Error::InvalidManifest("stride must be at least 1".into()));
        }
        validate_ratios(&self.split)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut m: DatasetManifest = serde_json::from_str(&text)?;
        m.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        m.validate()?;
        Ok(m)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        std::fs::write(path, s).map_err(|e| Error::io(path, e))
    }

    pub fn resolve(&self, entry: &ManifestEntry) -> PathBuf {
        if entry.path.is_absolute() {
            entry.path.clone()
        } else {
            self.base_dir.join(&entry.path)
        }
    }

    pub fn class_count(&self) -> usize {
        self.entries.iter().map(|e| e.label).max().unwrap_or(0)
    }

    /// Loads every entry and groups its windows by label, in entry order.
    pub fn load_windows(&self) -> Result<BTreeMap<usize, Vec<SignalWindow>>> {
        self.validate()?;
        let mut by_class: BTreeMap<usize, Vec<SignalWindow>> = BTreeMap::new();
        for entry in &self.entries {
            let signal = load_signal(self.resolve(entry))?;
            let windows = window_signal(&signal, self.window_len, self.stride())?;
            let bucket = by_class.entry(entry.label).or_default();
            for w in windows {
                if self
                    .max_windows_per_class
                    .is_some_and(|cap| bucket.len() >= cap)
                {
                    break;
                }
                bucket.push(SignalWindow::labeled(w, entry.label)?);
            }
        }
        Ok(by_class)
    }

    pub fn split_config(&self) -> SplitConfig {
        SplitConfig {
            ratios: self.split,
            seed: self.seed,
            shuffle: self.shuffle,
        }
    }

    pub fn load_split(&self) -> Result<SplitDataset> {
        let windows = self.load_windows()?;
        let mut ds = split(&windows, &self.split_config())?;
        ds.class_count = ds.class_count.max(self.class_count());
        Ok(ds)
    }
}

fn validate_ratios(r: &[f64; 3]) -> Result<()> {
    if r.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::InvalidManifest(format!(
            "split ratios must be positive, got {r:?}"
        )));
    }
    let sum: f64 = r.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidManifest(format!(
            "split ratios sum to {sum}, expected 1"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitConfig {
    pub ratios: [f64; 3],
    pub seed: u64,
    pub shuffle: bool,
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self {
            ratios: DEFAULT_SPLIT,
            seed: 0,
            shuffle: false,
        }
    }
}

/// Per-class `(train, verify, test)` counts: verify and test get the floor of
/// their share, train takes the remainder.
pub fn split_counts(n: usize, ratios: &[f64; 3]) -> (usize, usize, usize) {
    // slack absorbs ratios like 1/6 that are a hair below their decimal value
    let share = |r: f64| ((n as f64) * r + 1e-9).floor() as usize;
    let verify = share(ratios[1]);
    let test = share(ratios[2]);
    (n - verify - test, verify, test)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SplitDataset {
    pub train: Vec<SignalWindow>,
    pub verify: Vec<SignalWindow>,
    pub test: Vec<SignalWindow>,
    pub class_count: usize,
}

impl SplitDataset {
    pub fn labels(windows: &[SignalWindow]) -> Vec<usize> {
        windows.iter().map(|w| w.label().unwrap_or(0)).collect()
    }
}

/// Splits each class independently. Without shuffling the partition is
/// contiguous in time: earliest windows train, then verify, then test.
pub fn split(
    windows_per_class: &BTreeMap<usize, Vec<SignalWindow>>,
    config: &SplitConfig,
) -> Result<SplitDataset> {
    validate_ratios(&config.ratios)?;
    let mut out = SplitDataset::default();
    for (&label, windows) in windows_per_class {
        if windows.len() < 3 {
            return Err(Error::TooFewWindows(label));
        }
        let mut order: Vec<usize> = (0..windows.len()).collect();
        if config.shuffle {
            let mut rng = ChaCha8Rng::seed_from_u64(
                config.seed ^ (label as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            order.shuffle(&mut rng);
        }
        let (n_train, n_verify, _) = split_counts(windows.len(), &config.ratios);
        for (pos, &idx) in order.iter().enumerate() {
            let w = windows[idx].clone();
            if pos < n_train {
                out.train.push(w);
            } else if pos < n_train + n_verify {
                out.verify.push(w);
            } else {
                out.test.push(w);
            }
        }
        out.class_count = out.class_count.max(label);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_windows(counts: &[(usize, usize)]) -> BTreeMap<usize, Vec<SignalWindow>> {
        counts
            .iter()
            .map(|&(label, n)| {
                let ws = (0..n)
                    .map(|i| SignalWindow::labeled(vec![i as f64, label as f64], label).unwrap())
                    .collect();
                (label, ws)
            })
            .collect()
    }

    #[test]
    fn parse_examples() {
        let p = Path::new("mem");
        assert_eq!(parse_signal("1.0\n-2.5\n", p).unwrap(), vec![1.0, -2.5]);
        assert_eq!(parse_signal("1.0\r\n-2.5\r\n", p).unwrap(), vec![1.0, -2.5]);
        assert_eq!(parse_signal("accel\n0.5\n", p).unwrap(), vec![0.5]);
        assert!(matches!(
            parse_signal("", p),
            Err(Error::Parse { line: 0, .. })
        ));
        assert!(matches!(
            parse_signal("1\n2\nabc\n", p),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_signal("1\nNaN\n", p),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn windowing_examples() {
        let s: Vec<f64> = (0..10).map(f64::from).collect();
        let w = window_signal(&s, 4, 4).unwrap();
        assert_eq!(w, vec![vec![0.0, 1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0, 7.0]]);
        assert_eq!(window_signal(&s, 4, 2).unwrap().len(), 4);
        assert!(matches!(
            window_signal(&s, 11, 1),
            Err(Error::SignalTooShort {
                len: 10,
                window_len: 11
            })
        ));
        assert_eq!(
            window_signal(&vec![0.0; 122_880], 2048, 2048)
                .unwrap()
                .len(),
            60
        );
    }

    #[test]
    fn floor_allocation() {
        assert_eq!(split_counts(60, &DEFAULT_SPLIT), (40, 10, 10));
        assert_eq!(split_counts(6, &DEFAULT_SPLIT), (4, 1, 1));
        assert_eq!(split_counts(7, &DEFAULT_SPLIT), (5, 1, 1));
        assert_eq!(split_counts(3, &DEFAULT_SPLIT), (3, 0, 0));
    }

    #[test]
    fn contiguous_split_keeps_time_order() {
        let ds = split(&class_windows(&[(1, 6), (2, 6)]), &SplitConfig::default()).unwrap();
        assert_eq!((ds.train.len(), ds.verify.len(), ds.test.len()), (8, 2, 2));
        assert_eq!(ds.verify[0].samples()[0], 4.0);
        assert_eq!(ds.test[0].samples()[0], 5.0);
        assert_eq!(SplitDataset::labels(&ds.test), vec![1, 2]);
        assert_eq!(ds.class_count, 2);
    }

    #[test]
    fn shuffled_split_is_seeded() {
        let windows = class_windows(&[(1, 60), (2, 60)]);
        let cfg = SplitConfig {
            shuffle: true,
            seed: 9,
            ..Default::default()
        };
        let a = split(&windows, &cfg).unwrap();
        assert_eq!(a, split(&windows, &cfg).unwrap());
        let b = split(&windows, &SplitConfig { seed: 10, ..cfg }).unwrap();
        assert_ne!(a.train, b.train);
        assert_eq!(a.train.len(), 80);
    }

    #[test]
    fn too_few_windows() {
        assert!(matches!(
            split(&class_windows(&[(1, 6), (4, 2)]), &SplitConfig::default()),
            Err(Error::TooFewWindows(4))
        ));
    }

    #[test]
    fn manifest_validation() {
        let mut m = DatasetManifest::new(vec![ManifestEntry {
            path: "a.txt".into(),
            label: 1,
            class_name: "N".into(),
        }]);
        assert!(m.validate().is_ok());
        m.split = [0.5, 0.5, 0.1];
        assert!(m.validate().is_err());
        m.split = [1.0, 0.0, 0.0];
        assert!(m.validate().is_err());
        m.split = DEFAULT_SPLIT;
        m.entries[0].label = 0;
        assert!(m.validate().is_err());
        let parsed: DatasetManifest =
            serde_json::from_str(r#"{"entries":[{"path":"x","label":2}]}"#).unwrap();
        assert_eq!(parsed.window_len, 2048);
        assert_eq!(parsed.stride(), 2048);
        assert_eq!(parsed.split, DEFAULT_SPLIT);
    }
}

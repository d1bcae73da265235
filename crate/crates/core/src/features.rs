//! The fourteen time-domain vibration features and the feature matrix.
//!
//! Formulas, for a window `x` of length `n`:
//!
//! | id | name | value |
//! |----|------|-------|
//! | 1  | `mean` | `sum(x) / n` |
//! | 2  | `std_dev` | `sqrt(sum((x - mean)^2) / n)` |
//! | 3  | `variance` | `sum((x - mean)^2) / n` |
//! | 4  | `peak_to_peak` | `max(x) - min(x)` |
//! | 5  | `square_root_amplitude` | `(sum(sqrt|x|) / n)^2` |
//! | 6  | `average_amplitude` | `sum(|x|) / n` |
//! | 7  | `mean_square_amplitude` | `sqrt(sum(x^2) / n)` (RMS) |
//! | 8  | `peak_value` | `max(|x|)` |
//! | 9  | `waveform_index` | `rms / average_amplitude` |
//! | 10 | `peak_index` | `peak_value / rms` |
//! | 11 | `impulsion_index` | `peak_value / average_amplitude` |
//! | 12 | `clearance_factor` | `rms / average_amplitude` |
//! | 13 | `skewness` | `sum((|x| - mean)^3) / n / std_dev^3` |
//! | 14 | `kurtosis` | `sum((|x| - mean)^4) / n / std_dev^4` |
//!
//! Variance and standard deviation use the population convention. Skewness
//! and kurtosis centre the *rectified* samples on the signed mean.
//! [`FeatureConvention::Strict`] swaps the denominators of ids 11 and 12 for
//! the signed mean.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum FeatureId {
    Mean = 1,
    StdDev = 2,
    Variance = 3,
    PeakToPeak = 4,
    SquareRootAmplitude = 5,
    AverageAmplitude = 6,
    MeanSquareAmplitude = 7,
    PeakValue = 8,
    WaveformIndex = 9,
    PeakIndex = 10,
    ImpulsionIndex = 11,
    ClearanceFactor = 12,
    Skewness = 13,
    Kurtosis = 14,
}

impl FeatureId {
    pub const ALL: [FeatureId; 14] = [
        FeatureId::Mean,
        FeatureId::StdDev,
        FeatureId::Variance,
        FeatureId::PeakToPeak,
        FeatureId::SquareRootAmplitude,
        FeatureId::AverageAmplitude,
        FeatureId::MeanSquareAmplitude,
        FeatureId::PeakValue,
        FeatureId::WaveformIndex,
        FeatureId::PeakIndex,
        FeatureId::ImpulsionIndex,
        FeatureId::ClearanceFactor,
        FeatureId::Skewness,
        FeatureId::Kurtosis,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u64) -> Option<FeatureId> {
        (1..=14).contains(&n).then(|| Self::ALL[n as usize - 1])
    }

    pub fn name(self) -> &'static str {
        match self {
            FeatureId::Mean => "mean",
            FeatureId::StdDev => "std_dev",
            FeatureId::Variance => "variance",
            FeatureId::PeakToPeak => "peak_to_peak",
            FeatureId::SquareRootAmplitude => "square_root_amplitude",
            FeatureId::AverageAmplitude => "average_amplitude",
            FeatureId::MeanSquareAmplitude => "mean_square_amplitude",
            FeatureId::PeakValue => "peak_value",
            FeatureId::WaveformIndex => "waveform_index",
            FeatureId::PeakIndex => "peak_index",
            FeatureId::ImpulsionIndex => "impulsion_index",
            FeatureId::ClearanceFactor => "clearance_factor",
            FeatureId::Skewness => "skewness",
            FeatureId::Kurtosis => "kurtosis",
        }
    }

    /// Parses a comma-separated list of ids or names, e.g. `"7,peak_to_peak,9"`.
    pub fn parse_list(s: &str) -> Result<Vec<FeatureId>> {
        let ids = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(FeatureId::from_str)
            .collect::<Result<Vec<_>>>()?;
        check_ids(&ids)?;
        Ok(ids)
    }
}

impl fmt::Display for FeatureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{} ({})", self.number(), self.name())
    }
}

impl FromStr for FeatureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix(['F', 'f'])
            .filter(|r| r.parse::<u64>().is_ok())
            .unwrap_or(t);
        if let Ok(n) = t.parse::<u64>() {
            return FeatureId::from_number(n).ok_or_else(|| Error::UnknownFeature(s.to_string()));
        }
        FeatureId::ALL
            .into_iter()
            .find(|id| id.name() == t)
            .ok_or_else(|| Error::UnknownFeature(s.to_string()))
    }
}

impl Serialize for FeatureId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for FeatureId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(u64),
            Name(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Number(n) => FeatureId::from_number(n)
                .ok_or_else(|| serde::de::Error::custom(format!("feature id {n} outside 1..=14"))),
            Repr::Name(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Which mean sits under the impulsion index and clearance factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureConvention {
    /// Rectified mean (average amplitude).
    #[default]
    Rectified,
    /// Signed arithmetic mean, as the formulas are literally printed.
    Strict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignalWindow {
    samples: Vec<f64>,
    label: Option<usize>,
}

impl SignalWindow {
    pub fn new(samples: Vec<f64>, label: Option<usize>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a window needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("sample {i} is not finite")));
        }
        Ok(Self { samples, label })
    }

    pub fn labeled(samples: Vec<f64>, label: usize) -> Result<Self> {
        Self::new(samples, Some(label))
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn label(&self) -> Option<usize> {
        self.label
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Running sums over one window. The centred moments need the mean first, so
/// they are filled by a second pass only when a feature asks for them.
struct WindowStats<'a> {
    x: &'a [f64],
    n: f64,
    mean: f64,
    abs_mean: f64,
    rms: f64,
    sqrt_amp: f64,
    peak: f64,
    min: f64,
    max: f64,
    centred: Option<CentredMoments>,
}

struct CentredMoments {
    variance: f64,
    rectified_m3: f64,
    rectified_m4: f64,
}

impl<'a> WindowStats<'a> {
    fn new(x: &'a [f64]) -> Self {
        let n = x.len() as f64;
        let (mut sum, mut sum_abs, mut sum_sq, mut sum_sqrt) = (0.0, 0.0, 0.0, 0.0);
        let (mut min, mut max, mut peak) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
        for &v in x {
            let a = v.abs();
            sum += v;
            sum_abs += a;
            sum_sq += v * v;
            sum_sqrt += a.sqrt();
            min = min.min(v);
            max = max.max(v);
            peak = peak.max(a);
        }
        let sqrt_mean = sum_sqrt / n;
        Self {
            x,
            n,
            mean: sum / n,
            abs_mean: sum_abs / n,
            rms: (sum_sq / n).sqrt(),
            sqrt_amp: sqrt_mean * sqrt_mean,
            peak,
            min,
            max,
            centred: None,
        }
    }

    fn centred(&mut self) -> &CentredMoments {
        let (x, n, mean, constant) = (self.x, self.n, self.mean, self.min == self.max);
        self.centred.get_or_insert_with(|| {
            let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
            for &v in x {
                let d = v - mean;
                m2 += d * d;
                let r = v.abs() - mean;
                let r2 = r * r;
                m3 += r2 * r;
                m4 += r2 * r2;
            }
            CentredMoments {
                // a constant window has zero spread even if its mean rounds
                variance: if constant { 0.0 } else { m2 / n },
                rectified_m3: m3 / n,
                rectified_m4: m4 / n,
            }
        })
    }

    fn feature(&mut self, id: FeatureId, convention: FeatureConvention) -> Option<f64> {
        let signed_or_rectified = match convention {
            FeatureConvention::Rectified => self.abs_mean,
            FeatureConvention::Strict => self.mean,
        };
        let value = match id {
            FeatureId::Mean => self.mean,
            FeatureId::StdDev => self.centred().variance.sqrt(),
            FeatureId::Variance => self.centred().variance,
            FeatureId::PeakToPeak => self.max - self.min,
            FeatureId::SquareRootAmplitude => self.sqrt_amp,
            FeatureId::AverageAmplitude => self.abs_mean,
            FeatureId::MeanSquareAmplitude => self.rms,
            FeatureId::PeakValue => self.peak,
            FeatureId::WaveformIndex => ratio(self.rms, self.abs_mean)?,
            FeatureId::PeakIndex => ratio(self.peak, self.rms)?,
            FeatureId::ImpulsionIndex => ratio(self.peak, signed_or_rectified)?,
            FeatureId::ClearanceFactor => ratio(self.rms, signed_or_rectified)?,
            FeatureId::Skewness => {
                let c = self.centred();
                let sd = c.variance.sqrt();
                ratio(c.rectified_m3, sd * sd * sd)?
            }
            FeatureId::Kurtosis => {
                let c = self.centred();
                ratio(c.rectified_m4, c.variance * c.variance)?
            }
        };
        value.is_finite().then_some(value)
    }
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

/// Value of one feature on one window, using the default convention.
pub fn extract_feature(window: &SignalWindow, id: FeatureId) -> Result<f64> {
    extract_feature_with(window, id, FeatureConvention::default())
}

pub fn extract_feature_with(
    window: &SignalWindow,
    id: FeatureId,
    convention: FeatureConvention,
) -> Result<f64> {
    WindowStats::new(window.samples())
        .feature(id, convention)
        .ok_or(Error::FeatureUndefined {
            window: None,
            feature: id,
        })
}

pub(crate) fn check_ids(ids: &[FeatureId]) -> Result<()> {
    if ids.is_empty() {
        return Err(Error::InvalidArgument("feature list is empty".into()));
    }
    for (i, id) in ids.iter().enumerate() {
        if ids[..i].contains(id) {
            return Err(Error::DuplicateFeature(*id));
        }
    }
    Ok(())
}

fn check_lengths(windows: &[SignalWindow]) -> Result<()> {
    if let Some(first) = windows.first() {
        if let Some(w) = windows.iter().find(|w| w.len() != first.len()) {
            return Err(Error::DimensionMismatch(format!(
                "windows must share one length, found {} and {}",
                first.len(),
                w.len()
            )));
        }
    }
    Ok(())
}

/// N×K feature values with the ids of their columns.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    values: Matrix,
    feature_ids: Vec<FeatureId>,
}

impl FeatureMatrix {
    pub fn new(values: Matrix, feature_ids: Vec<FeatureId>) -> Result<Self> {
        if values.cols() != feature_ids.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns but {} feature ids",
                values.cols(),
                feature_ids.len()
            )));
        }
        check_ids(&feature_ids)?;
        if !values.is_finite() {
            return Err(Error::InvalidArgument(
                "feature matrix contains non-finite values".into(),
            ));
        }
        Ok(Self {
            values,
            feature_ids,
        })
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn feature_ids(&self) -> &[FeatureId] {
        &self.feature_ids
    }

    pub fn rows(&self) -> usize {
        self.values.rows()
    }

    pub fn cols(&self) -> usize {
        self.values.cols()
    }

    /// Column subset in the order given by `ids`.
    pub fn select(&self, ids: &[FeatureId]) -> Result<FeatureMatrix> {
        check_ids(ids)?;
        let columns = ids
            .iter()
            .map(|id| {
                self.feature_ids
                    .iter()
                    .position(|f| f == id)
                    .ok_or_else(|| Error::FeatureSetMismatch {
                        expected: ids.to_vec(),
                        actual: self.feature_ids.clone(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FeatureMatrix {
            values: self.values.select_columns(&columns),
            feature_ids: ids.to_vec(),
        })
    }

    /// Writes a CSV with a header of feature names and, when given, a
    /// trailing `label` column.
    pub fn write_csv<W: std::io::Write>(
        &self,
        mut out: W,
        labels: Option<&[usize]>,
    ) -> std::io::Result<()> {
        let mut header: Vec<&str> = self.feature_ids.iter().map(|f| f.name()).collect();
        if labels.is_some() {
            header.push("label");
        }
        writeln!(out, "{}", header.join(","))?;
        for (i, row) in self.values.row_iter().enumerate() {
            let mut cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            if let Some(l) = labels {
                cells.push(l[i].to_string());
            }
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

pub fn extract_matrix(windows: &[SignalWindow], ids: &[FeatureId]) -> Result<FeatureMatrix> {
    extract_matrix_with(windows, ids, FeatureConvention::default())
}

/// Extracts `ids` from every window; rows follow window order.
///
/// The first undefined cell (in row-major order) is reported with its window
/// index.
pub fn extract_matrix_with(
    windows: &[SignalWindow],
    ids: &[FeatureId],
    convention: FeatureConvention,
) -> Result<FeatureMatrix> {
    check_ids(ids)?;
    check_lengths(windows)?;
    let rows: Vec<Vec<f64>> = windows
        .par_iter()
        .enumerate()
        .map(|(w, window)| {
            let mut stats = WindowStats::new(window.samples());
            ids.iter()
                .map(|&id| {
                    stats
                        .feature(id, convention)
                        .ok_or(Error::FeatureUndefined {
                            window: Some(w),
                            feature: id,
                        })
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<_>>()?;
    let mut values = Matrix::from_rows(&rows)?;
    if rows.is_empty() {
        values = Matrix::zeros(0, ids.len());
    }
    Ok(FeatureMatrix {
        values,
        feature_ids: ids.to_vec(),
    })
}

/// All fourteen features per window, keeping going past undefined cells.
///
/// Used by feature selection, where an undefined feature disqualifies a
/// candidate instead of aborting the search.
#[derive(Debug, Clone)]
pub struct FeatureTable {
    cells: Vec<[Option<f64>; 14]>,
}

impl FeatureTable {
    pub fn extract(windows: &[SignalWindow], convention: FeatureConvention) -> Result<Self> {
        check_lengths(windows)?;
        let cells = windows
            .par_iter()
            .map(|window| {
                let mut stats = WindowStats::new(window.samples());
                FeatureId::ALL.map(|id| stats.feature(id, convention))
            })
            .collect();
        Ok(Self { cells })
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn is_defined(&self, id: FeatureId) -> bool {
        self.cells.iter().all(|row| row[id as usize - 1].is_some())
    }

    /// The matrix for `ids`, or the first undefined cell.
    pub fn matrix(&self, ids: &[FeatureId]) -> Result<FeatureMatrix> {
        check_ids(ids)?;
        let mut values = Matrix::zeros(self.cells.len(), ids.len());
        for (w, row) in self.cells.iter().enumerate() {
            for (j, &id) in ids.iter().enumerate() {
                let v = row[id as usize - 1].ok_or(Error::FeatureUndefined {
                    window: Some(w),
                    feature: id,
                })?;
                values.set(w, j, v);
            }
        }
        Ok(FeatureMatrix {
            values,
            feature_ids: ids.to_vec(),
        })
    }
}

/// Per-column z-score parameters fitted on training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationStats {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

pub fn normalize_fit(f: &FeatureMatrix) -> Result<NormalizationStats> {
    let (n, k) = f.values.shape();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cannot fit normalization on an empty matrix".into(),
        ));
    }
    let mut means = vec![0.0; k];
    for row in f.values.row_iter() {
        for (m, v) in means.iter_mut().zip(row) {
            *m += v;
        }
    }
    means.iter_mut().for_each(|m| *m /= n as f64);
    let mut stds = vec![0.0; k];
    for row in f.values.row_iter() {
        for ((s, v), m) in stds.iter_mut().zip(row).zip(&means) {
            *s += (v - m) * (v - m);
        }
    }
    for (j, s) in stds.iter_mut().enumerate() {
        let column_constant = f.values.row_iter().all(|r| r[j] == f.values.get(0, j));
        *s = if column_constant {
            0.0
        } else {
            (*s / n as f64).sqrt()
        };
    }
    Ok(NormalizationStats { means, stds })
}

/// `(value - mean) / std` per column; zero-spread columns are only shifted.
pub fn normalize_apply(f: &FeatureMatrix, stats: &NormalizationStats) -> Result<FeatureMatrix> {
    let k = f.cols();
    if stats.means.len() != k || stats.stds.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "normalization has {} columns, feature matrix has {k}",
            stats.means.len()
        )));
    }
    let mut values = f.values.clone();
    for i in 0..values.rows() {
        for (j, v) in values.row_mut(i).iter_mut().enumerate() {
            let scale = if stats.stds[j] > 0.0 {
                stats.stds[j]
            } else {
                1.0
            };
            *v = (*v - stats.means[j]) / scale;
        }
    }
    Ok(FeatureMatrix {
        values,
        feature_ids: f.feature_ids.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[f64]) -> SignalWindow {
        SignalWindow::new(xs.to_vec(), None).unwrap()
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(
            extract_feature(&w(&[1.0, 2.0, 3.0]), FeatureId::Mean).unwrap(),
            2.0
        );
        assert_eq!(
            extract_feature(&w(&[-1.0, 0.0, 3.0]), FeatureId::PeakToPeak).unwrap(),
            4.0
        );
        let rms = extract_feature(&w(&[3.0, 4.0]), FeatureId::MeanSquareAmplitude).unwrap();
        assert!((rms - 3.5355339059327378).abs() < 1e-15);
        assert_eq!(
            extract_feature(&w(&[1.0, -1.0, 1.0, -1.0]), FeatureId::SquareRootAmplitude).unwrap(),
            1.0
        );
    }

    #[test]
    fn constant_window() {
        for c in [3.0, 0.1, -7.3] {
            let win = w(&[c; 16]);
            assert_eq!(extract_feature(&win, FeatureId::StdDev).unwrap(), 0.0);
            assert_eq!(extract_feature(&win, FeatureId::Variance).unwrap(), 0.0);
            for id in [FeatureId::Skewness, FeatureId::Kurtosis] {
                assert!(matches!(
                    extract_feature(&win, id),
                    Err(Error::FeatureUndefined { feature, .. }) if feature == id
                ));
            }
        }
    }

    #[test]
    fn all_zero_window_undefined_ratios() {
        let win = w(&[0.0; 8]);
        for id in [
            FeatureId::WaveformIndex,
            FeatureId::PeakIndex,
            FeatureId::ImpulsionIndex,
            FeatureId::ClearanceFactor,
        ] {
            assert!(extract_feature(&win, id).is_err(), "{id}");
        }
        assert_eq!(extract_feature(&win, FeatureId::PeakValue).unwrap(), 0.0);
    }

    #[test]
    fn strict_convention_uses_signed_mean() {
        let win = w(&[1.0, -1.0, 2.0, -2.0]);
        assert_eq!(
            extract_feature(&win, FeatureId::ImpulsionIndex).unwrap(),
            2.0 / 1.5
        );
        assert!(
            extract_feature_with(&win, FeatureId::ImpulsionIndex, FeatureConvention::Strict)
                .is_err()
        );
        let win = w(&[1.0, 3.0, -2.0]);
        let strict =
            extract_feature_with(&win, FeatureId::ClearanceFactor, FeatureConvention::Strict)
                .unwrap();
        assert!((strict - (14.0f64 / 3.0).sqrt() / (2.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn matrix_matches_scalar_calls() {
        let windows = vec![w(&[1.0, 2.0, 4.0]), w(&[-1.0, 0.5, 3.0])];
        let ids = [FeatureId::Mean, FeatureId::Variance];
        let m = extract_matrix(&windows, &ids).unwrap();
        assert_eq!(m.values().shape(), (2, 2));
        for (i, win) in windows.iter().enumerate() {
            for (j, &id) in ids.iter().enumerate() {
                assert_eq!(m.values().get(i, j), extract_feature(win, id).unwrap());
            }
        }
    }

    #[test]
    fn matrix_errors() {
        let windows = vec![w(&[1.0, 2.0, 4.0]), w(&[1.0, 2.0])];
        assert!(matches!(
            extract_matrix(&windows, &[FeatureId::Mean]),
            Err(Error::DimensionMismatch(_))
        ));
        let windows = vec![w(&[1.0, 2.0]), w(&[5.0, 5.0])];
        assert!(matches!(
            extract_matrix(&windows, &[FeatureId::Mean, FeatureId::Mean]),
            Err(Error::DuplicateFeature(FeatureId::Mean))
        ));
        assert!(matches!(
            extract_matrix(&windows, &[FeatureId::Mean, FeatureId::Kurtosis]),
            Err(Error::FeatureUndefined {
                window: Some(1),
                feature: FeatureId::Kurtosis
            })
        ));
    }

    #[test]
    fn window_validation() {
        assert!(SignalWindow::new(vec![1.0], None).is_err());
        assert!(SignalWindow::new(vec![1.0, f64::NAN], None).is_err());
    }

    #[test]
    fn ids_parse_and_serialize() {
        assert_eq!(
            FeatureId::parse_list("7, peak_to_peak,F9,6").unwrap(),
            vec![
                FeatureId::MeanSquareAmplitude,
                FeatureId::PeakToPeak,
                FeatureId::WaveformIndex,
                FeatureId::AverageAmplitude
            ]
        );
        assert!(FeatureId::parse_list("15").is_err());
        assert!(FeatureId::parse_list("1,mean").is_err());
        assert_eq!(serde_json::to_string(&FeatureId::Kurtosis).unwrap(), "14");
        let ids: Vec<FeatureId> = serde_json::from_str(r#"[3, "skewness"]"#).unwrap();
        assert_eq!(ids, vec![FeatureId::Variance, FeatureId::Skewness]);
        assert!(serde_json::from_str::<FeatureId>("0").is_err());
    }

    #[test]
    fn normalization_examples() {
        let f = FeatureMatrix::new(
            Matrix::from_rows(&[[2.0, 5.0], [4.0, 5.0]]).unwrap(),
            vec![FeatureId::Mean, FeatureId::PeakValue],
        )
        .unwrap();
        let stats = normalize_fit(&f).unwrap();
        assert_eq!(stats.means, vec![3.0, 5.0]);
        assert_eq!(stats.stds, vec![1.0, 0.0]);
        let z = normalize_apply(&f, &stats).unwrap();
        assert_eq!(z.values().to_rows(), vec![vec![-1.0, 0.0], vec![1.0, 0.0]]);

        let narrow = f.select(&[FeatureId::Mean]).unwrap();
        assert!(matches!(
            normalize_apply(&narrow, &stats),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn constant_column_of_three() {
        let f = FeatureMatrix::new(
            Matrix::from_rows(&[[5.0], [5.0], [5.0]]).unwrap(),
            vec![FeatureId::Mean],
        )
        .unwrap();
        let z = normalize_apply(&f, &normalize_fit(&f).unwrap()).unwrap();
        assert_eq!(z.values().as_slice(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn table_marks_undefined_features() {
        let windows = vec![w(&[1.0, 2.0]), w(&[5.0, 5.0])];
        let table = FeatureTable::extract(&windows, FeatureConvention::Rectified).unwrap();
        assert!(table.is_defined(FeatureId::Mean));
        assert!(!table.is_defined(FeatureId::Skewness));
        assert_eq!(
            table.matrix(&[FeatureId::Mean, FeatureId::StdDev]).unwrap(),
            extract_matrix(&windows, &[FeatureId::Mean, FeatureId::StdDev]).unwrap()
        );
    }
}

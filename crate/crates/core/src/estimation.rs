//! Monte Carlo simulation of the full estimation protocol: sample projective
//! outcomes, estimate `λ` by maximum likelihood, and compare the empirical
//! estimator variance with the Cramér-Rao bound `1 / (N F)`.
//!
//! Randomness comes from ChaCha20. Replication `r` of an experiment seeded
//! with `seed` draws from stream `r` of the generator keyed by `seed`, so
//! results do not depend on scheduling.

use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::fisher_classical::{MeasurementAxis, OverlapTable};
use crate::fisher_quantum::optimal_angle;
use crate::spin_algebra::{Spin, SpinLength};
use crate::thermal::{ParamPoint, ThermalSpinState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Intensity,
    Orientation,
    Mixed,
}

impl FromStr for ParamKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "intensity" => Ok(Self::Intensity),
            "orientation" => Ok(Self::Orientation),
            "mixed" => Ok(Self::Mixed),
            other => Err(format!(
                "unknown parameterization `{other}` (expected intensity, orientation or mixed)"
            )),
        }
    }
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Intensity => "intensity",
            Self::Orientation => "orientation",
            Self::Mixed => "mixed",
        })
    }
}

/// Affine dependence `θ(λ) = θ₀ + a λ`, `δ(λ) = δ₀ + b λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameterization {
    pub kind: ParamKind,
    pub theta0: f64,
    pub theta_slope: f64,
    pub delta0: f64,
    pub delta_slope: f64,
}

impl Parameterization {
    pub fn new(
        kind: ParamKind,
        theta0: f64,
        theta_slope: f64,
        delta0: f64,
        delta_slope: f64,
    ) -> Result<Self> {
        for (v, name) in [
            (theta0, "theta0"),
            (theta_slope, "theta_slope"),
            (delta0, "delta0"),
            (delta_slope, "delta_slope"),
        ] {
            ensure_finite(v, name)?;
        }
        let ok = match kind {
            ParamKind::Intensity => theta_slope == 0.0 && delta_slope != 0.0,
            ParamKind::Orientation => delta_slope == 0.0 && theta_slope != 0.0,
            ParamKind::Mixed => theta_slope != 0.0 && delta_slope != 0.0,
        };
        if !ok {
            return Err(Error::InvalidConfig(format!(
                "{kind} parameterization is inconsistent with theta_slope = {theta_slope}, \
                 delta_slope = {delta_slope}"
            )));
        }
        Ok(Self {
            kind,
            theta0,
            theta_slope,
            delta0,
            delta_slope,
        })
    }

    pub fn point_at(&self, lambda: f64) -> ParamPoint {
        ParamPoint {
            theta: self.theta0 + self.theta_slope * lambda,
            delta: self.delta0 + self.delta_slope * lambda,
            theta_dot: self.theta_slope,
            delta_dot: self.delta_slope,
        }
    }
}

/// Outcome counts indexed like the outcomes `M_O = S..-S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.total() as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    pub fn as_weights(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64).collect()
    }
}

/// Draw `n` outcomes from `probabilities`.
pub fn sample_from<R: Rng + ?Sized>(probabilities: &[f64], n: u64, rng: &mut R) -> Result<Histogram> {
    let dist = WeightedIndex::new(probabilities)
        .map_err(|e| Error::InvalidConfig(format!("outcome distribution: {e}")))?;
    let mut counts = vec![0u64; probabilities.len()];
    for _ in 0..n {
        counts[dist.sample(rng)] += 1;
    }
    Ok(Histogram { counts })
}

/// Sample `n` projective measurements of the axis on the thermal state.
pub fn sample_outcomes(
    spin: &Spin,
    state: &ThermalSpinState,
    theta: f64,
    axis: &MeasurementAxis,
    n: u64,
    seed: u64,
) -> Result<Histogram> {
    if n == 0 {
        return Err(Error::InvalidConfig("number of shots must be at least 1".into()));
    }
    let probs = OverlapTable::new(spin, theta, axis).probabilities(state);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    sample_from(&probs, n, &mut rng)
}

/// Outcome model `p_{M_O}(λ)` for an axis held fixed in the lab.
///
/// The axis is specified relative to the field at `lambda_ref`; at other
/// values of `λ` the relative angle becomes `φ + θ(λ_ref) - θ(λ)`.
#[derive(Debug, Clone)]
pub struct LikelihoodModel {
    spin: Spin,
    param: Parameterization,
    axis: MeasurementAxis,
    lambda_ref: f64,
}

impl LikelihoodModel {
    pub fn new(spin: Spin, param: Parameterization, axis: MeasurementAxis, lambda_ref: f64) -> Self {
        Self {
            spin,
            param,
            axis,
            lambda_ref,
        }
    }

    pub fn spin(&self) -> &Spin {
        &self.spin
    }

    fn relative_axis(&self, lambda: f64) -> MeasurementAxis {
        let shift = self.param.theta_slope * (self.lambda_ref - lambda);
        MeasurementAxis {
            phi: self.axis.phi + shift,
            gamma: self.axis.gamma,
        }
    }

    fn parts(&self, lambda: f64) -> Result<(ParamPoint, ThermalSpinState, OverlapTable)> {
        let point = self.param.point_at(lambda);
        let state = ThermalSpinState::new(self.spin.length(), point.delta)?;
        let table = OverlapTable::new(&self.spin, point.theta, &self.relative_axis(lambda));
        Ok((point, state, table))
    }

    pub fn probabilities(&self, lambda: f64) -> Result<Vec<f64>> {
        let (_, state, table) = self.parts(lambda)?;
        Ok(table.probabilities(&state))
    }

    /// `(p, ∂λ p)`.
    pub fn probabilities_and_slopes(&self, lambda: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let (point, state, table) = self.parts(lambda)?;
        let p = table.probabilities(&state);
        let (dt, dd) = table.derivatives(&state);
        let slope = dt
            .iter()
            .zip(&dd)
            .map(|(a, b)| point.theta_dot * a + point.delta_dot * b)
            .collect();
        Ok((p, slope))
    }

    /// Classical Fisher information per shot at `λ`.
    pub fn fisher_information(&self, lambda: f64) -> Result<f64> {
        let (point, state, table) = self.parts(lambda)?;
        Ok(table.cfi(&state, &point)?.f)
    }

    pub fn log_likelihood(&self, counts: &[f64], lambda: f64) -> Result<f64> {
        let p = self.probabilities(lambda)?;
        Ok(counts
            .iter()
            .zip(&p)
            .filter(|(c, _)| **c > 0.0)
            .map(|(c, pk)| if *pk > 0.0 { c * pk.ln() } else { f64::NEG_INFINITY })
            .sum())
    }

    fn score(&self, counts: &[f64], lambda: f64) -> Result<f64> {
        let (p, slope) = self.probabilities_and_slopes(lambda)?;
        Ok(counts
            .iter()
            .zip(p.iter().zip(&slope))
            .filter(|(c, _)| **c > 0.0)
            .map(|(c, (pk, sk))| c * sk / pk)
            .sum())
    }
}

/// Points on the coarse unimodality grid.
pub const MLE_GRID: usize = 65;
/// Golden-section stops when the bracket is this fraction of the search interval.
pub const MLE_TOLERANCE: f64 = 1e-10;

/// Maximum-likelihood estimate of `λ` from outcome counts (real-valued
/// weights are accepted so that exact expected counts can be fed in).
pub fn mle_estimate(counts: &[f64], model: &LikelihoodModel, interval: (f64, f64)) -> Result<f64> {
    let (lo, hi) = interval;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "search interval [{lo}, {hi}] is empty or not finite"
        )));
    }
    let width = hi - lo;
    let grid: Vec<f64> = (0..MLE_GRID)
        .map(|i| lo + width * i as f64 / (MLE_GRID - 1) as f64)
        .collect();
    let values = grid
        .iter()
        .map(|&x| model.log_likelihood(counts, x))
        .collect::<Result<Vec<f64>>>()?;

    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let bottom = values.iter().copied().fold(f64::INFINITY, f64::min);
    if top - bottom <= 1e-12 * top.abs().max(1.0) {
        return Err(Error::FlatLikelihood);
    }

    let peaks = (0..MLE_GRID)
        .filter(|&i| {
            let rises = i == 0 || values[i] > values[i - 1];
            let holds = i == MLE_GRID - 1 || values[i] >= values[i + 1];
            rises && holds
        })
        .count();
    if peaks > 1 {
        return Err(Error::NotUnimodal(peaks));
    }

    let center = 0.5 * (lo + hi);
    let best = (0..MLE_GRID)
        .filter(|&i| values[i] == top)
        .min_by(|&a, &b| {
            (grid[a] - center)
                .abs()
                .partial_cmp(&(grid[b] - center).abs())
                .unwrap()
        })
        .expect("grid is non-empty");
    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(MLE_GRID - 1)];

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = model.log_likelihood(counts, c)?;
    let mut fd = model.log_likelihood(counts, d)?;
    while b - a > MLE_TOLERANCE * width {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = model.log_likelihood(counts, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = model.log_likelihood(counts, d)?;
        }
    }
    let golden = 0.5 * (a + b);

    // Near the optimum the log-likelihood is flat to rounding; finish on the
    // score, which crosses zero cleanly.
    let pad = 1e-6 * width;
    let (mut left, mut right) = ((golden - pad).max(lo), (golden + pad).min(hi));
    let (s_left, s_right) = (model.score(counts, left)?, model.score(counts, right)?);
    if !(s_left > 0.0 && s_right < 0.0) {
        return Ok(golden);
    }
    for _ in 0..80 {
        let mid = 0.5 * (left + right);
        if mid <= left || mid >= right {
            break;
        }
        if model.score(counts, mid)? > 0.0 {
            left = mid;
        } else {
            right = mid;
        }
    }
    Ok(0.5 * (left + right))
}

/// Measurement axis of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisChoice {
    /// `φ_opt` at the true parameter value.
    Optimal,
    /// Fixed offset from the field axis at the true parameter value.
    Fixed(f64),
}

/// Full description of one simulated experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub name: String,
    pub two_s: u32,
    pub param: Parameterization,
    pub lambda_true: f64,
    pub axis: AxisChoice,
    pub gamma: f64,
    pub shots: u64,
    pub replications: usize,
    pub seed: u64,
    pub interval: (f64, f64),
    pub band: (f64, f64),
}

/// Keys understood by [`SimConfig::parse`].
pub const CONFIG_KEYS: &[&str] = &[
    "name",
    "twoS",
    "kind",
    "theta0",
    "theta_slope",
    "delta0",
    "delta_slope",
    "lambda_true",
    "phi",
    "gamma",
    "shots",
    "replications",
    "seed",
    "interval_min",
    "interval_max",
    "band_low",
    "band_high",
];

impl SimConfig {
    /// Parse the flat `key = value` format. `#` starts a comment; blank lines
    /// are ignored. Diagnostics name the offending line and key.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(usize, &str, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::InvalidConfig(format!(
                    "line {line_no}: expected `key = value`, found `{line}`"
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            if !CONFIG_KEYS.contains(&key) {
                return Err(Error::InvalidConfig(format!(
                    "line {line_no}: unknown key `{key}`"
                )));
            }
            if entries.iter().any(|(_, k, _)| *k == key) {
                return Err(Error::InvalidConfig(format!(
                    "line {line_no}: duplicate key `{key}`"
                )));
            }
            entries.push((line_no, key, value));
        }
        let lookup = |key: &str| entries.iter().find(|(_, k, _)| *k == key).copied();
        fn parse_value<T: FromStr>(entry: (usize, &str, &str)) -> Result<T> {
            let (line_no, key, value) = entry;
            value.parse::<T>().map_err(|_| {
                Error::InvalidConfig(format!("line {line_no}: invalid value `{value}` for `{key}`"))
            })
        }
        let required = |key: &str| {
            lookup(key).ok_or_else(|| Error::InvalidConfig(format!("missing required key `{key}`")))
        };
        let float_or = |key: &str, default: f64| -> Result<f64> {
            match lookup(key) {
                Some(e) => {
                    let v: f64 = parse_value(e)?;
                    if !v.is_finite() {
                        return Err(Error::InvalidConfig(format!(
                            "line {}: `{key}` must be finite",
                            e.0
                        )));
                    }
                    Ok(v)
                }
                None => Ok(default),
            }
        };

        let two_s: u32 = parse_value(required("twoS")?)?;
        SpinLength::new(two_s).map_err(|e| Error::InvalidConfig(format!("twoS: {e}")))?;
        let kind = {
            let e = required("kind")?;
            e.2.parse::<ParamKind>()
                .map_err(|err| Error::InvalidConfig(format!("line {}: {err}", e.0)))?
        };
        let delta0: f64 = parse_value(required("delta0")?)?;
        let theta0 = float_or("theta0", 0.0)?;
        let theta_slope = float_or("theta_slope", 0.0)?;
        let delta_slope = float_or("delta_slope", 0.0)?;
        let param = Parameterization::new(kind, theta0, theta_slope, delta0, delta_slope)?;
        let lambda_true = float_or("lambda_true", 0.0)?;
        let axis = match lookup("phi") {
            None => AxisChoice::Optimal,
            Some((_, _, "opt")) => AxisChoice::Optimal,
            Some(e) => AxisChoice::Fixed(parse_value(e)?),
        };
        let gamma = float_or("gamma", 0.0)?;
        let shots: u64 = lookup("shots").map(parse_value).transpose()?.unwrap_or(10_000);
        let replications: usize = lookup("replications")
            .map(parse_value)
            .transpose()?
            .unwrap_or(500);
        let seed: u64 = lookup("seed").map(parse_value).transpose()?.unwrap_or(1);
        let interval = (
            float_or("interval_min", lambda_true - 0.25)?,
            float_or("interval_max", lambda_true + 0.25)?,
        );
        let band = (float_or("band_low", 0.85)?, float_or("band_high", 1.30)?);
        let name = lookup("name").map(|e| e.2.to_string()).unwrap_or_default();

        let config = Self {
            name,
            two_s,
            param,
            lambda_true,
            axis,
            gamma,
            shots,
            replications,
            seed,
            interval,
            band,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::InvalidConfig("`shots` must be at least 1".into()));
        }
        if self.replications < 2 {
            return Err(Error::InvalidConfig(
                "`replications` must be at least 2 to form a variance".into(),
            ));
        }
        let (lo, hi) = self.interval;
        if !(lo < self.lambda_true && self.lambda_true < hi) {
            return Err(Error::InvalidConfig(format!(
                "search interval [{lo}, {hi}] must contain lambda_true = {}",
                self.lambda_true
            )));
        }
        if !(self.band.0 < self.band.1) {
            return Err(Error::InvalidConfig("band_low must be below band_high".into()));
        }
        Ok(())
    }

    pub fn measurement_axis(&self) -> Result<MeasurementAxis> {
        let phi = match self.axis {
            AxisChoice::Optimal => optimal_angle(&self.param.point_at(self.lambda_true))?,
            AxisChoice::Fixed(phi) => phi,
        };
        MeasurementAxis::new(phi, self.gamma)
    }
}

/// Outcome of one simulated experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub name: String,
    #[serde(rename = "twoS")]
    pub two_s: u32,
    pub kind: ParamKind,
    pub phi: f64,
    pub gamma: f64,
    pub n_shots: u64,
    pub replications: usize,
    pub lambda_true: f64,
    pub lambda_hat_mean: f64,
    pub lambda_hat_var: f64,
    pub fisher_information: f64,
    pub crb: f64,
    pub ratio_var_to_crb: f64,
    pub band: (f64, f64),
    pub within_band: bool,
    pub seed: u64,
}

/// Estimates of all replications, in replication order.
pub fn replicate_estimates(config: &SimConfig) -> Result<Vec<f64>> {
    config.validate()?;
    let spin = Spin::from_two_s(config.two_s)?;
    let axis = config.measurement_axis()?;
    let model = LikelihoodModel::new(spin, config.param, axis, config.lambda_true);
    let probs = model.probabilities(config.lambda_true)?;
    (0..config.replications)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
            rng.set_stream(r as u64);
            let hist = sample_from(&probs, config.shots, &mut rng)?;
            mle_estimate(&hist.as_weights(), &model, config.interval)
        })
        .collect()
}

pub fn run_experiment(config: &SimConfig) -> Result<SimResult> {
    let estimates = replicate_estimates(config)?;
    let spin = Spin::from_two_s(config.two_s)?;
    let axis = config.measurement_axis()?;
    let model = LikelihoodModel::new(spin, config.param, axis, config.lambda_true);
    let fisher = model.fisher_information(config.lambda_true)?;

    let n = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let var = estimates.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let crb = 1.0 / (config.shots as f64 * fisher);
    let ratio = var / crb;
    Ok(SimResult {
        name: config.name.clone(),
        two_s: config.two_s,
        kind: config.param.kind,
        phi: axis.phi,
        gamma: axis.gamma,
        n_shots: config.shots,
        replications: config.replications,
        lambda_true: config.lambda_true,
        lambda_hat_mean: mean,
        lambda_hat_var: var,
        fisher_information: fisher,
        crb,
        ratio_var_to_crb: ratio,
        band: config.band,
        within_band: config.band.0 <= ratio && ratio <= config.band.1,
        seed: config.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spin_one_model(phi: f64) -> LikelihoodModel {
        let param = Parameterization::new(ParamKind::Mixed, 0.3, 1.0, 1.0, 1.0).unwrap();
        LikelihoodModel::new(
            Spin::from_two_s(2).unwrap(),
            param,
            MeasurementAxis::in_plane(phi),
            0.0,
        )
    }

    #[test]
    fn parameterization_consistency() {
        assert!(Parameterization::new(ParamKind::Intensity, 0.0, 0.0, 1.0, 1.0).is_ok());
        assert!(Parameterization::new(ParamKind::Intensity, 0.0, 0.5, 1.0, 1.0).is_err());
        assert!(Parameterization::new(ParamKind::Orientation, 0.0, 1.0, 1.0, 0.0).is_ok());
        assert!(Parameterization::new(ParamKind::Orientation, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(Parameterization::new(ParamKind::Mixed, 0.0, 1.0, 1.0, 0.0).is_err());
        let p = Parameterization::new(ParamKind::Mixed, 0.2, 2.0, 1.0, -1.0).unwrap();
        let pt = p.point_at(0.5);
        assert_eq!((pt.theta, pt.delta, pt.theta_dot, pt.delta_dot), (1.2, 0.5, 2.0, -1.0));
    }

    #[test]
    fn sampling_is_deterministic() {
        let spin = Spin::from_two_s(2).unwrap();
        let st = ThermalSpinState::new(spin.length(), 1.0).unwrap();
        let axis = MeasurementAxis::in_plane(0.4);
        let a = sample_outcomes(&spin, &st, 0.0, &axis, 5000, 7).unwrap();
        let b = sample_outcomes(&spin, &st, 0.0, &axis, 5000, 7).unwrap();
        let c = sample_outcomes(&spin, &st, 0.0, &axis, 5000, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.total(), 5000);
        assert!(sample_outcomes(&spin, &st, 0.0, &axis, 0, 7).is_err());
    }

    #[test]
    fn mle_recovers_exact_expected_counts() {
        let model = spin_one_model(0.5);
        for lambda0 in [0.0, 0.037, -0.11] {
            let counts: Vec<f64> = model
                .probabilities(lambda0)
                .unwrap()
                .iter()
                .map(|p| p * 1e4)
                .collect();
            let est = mle_estimate(&counts, &model, (-0.25, 0.25)).unwrap();
            assert!((est - lambda0).abs() < 1e-8, "{est} vs {lambda0}");
        }
    }

    #[test]
    fn flat_likelihood_is_unidentifiable() {
        let param = Parameterization::new(ParamKind::Orientation, 0.0, 1.0, 0.0, 0.0).unwrap();
        let model = LikelihoodModel::new(
            Spin::from_two_s(3).unwrap(),
            param,
            MeasurementAxis::in_plane(0.7),
            0.0,
        );
        let counts = vec![10.0, 20.0, 30.0, 40.0];
        assert_eq!(
            mle_estimate(&counts, &model, (-0.5, 0.5)),
            Err(Error::FlatLikelihood)
        );
    }

    #[test]
    fn mle_rejects_bad_interval() {
        let model = spin_one_model(0.5);
        assert!(mle_estimate(&[1.0, 1.0, 1.0], &model, (0.2, -0.2)).is_err());
    }

    #[test]
    fn fixed_axis_relative_angle_tracks_the_field() {
        let model = spin_one_model(0.5);
        let shifted = model.relative_axis(0.1);
        assert!((shifted.phi - 0.4).abs() < 1e-15);
    }

    #[test]
    fn config_parse_round_trip_and_diagnostics() {
        let text = "\
# optimal axis, spin one
name = demo
twoS = 2
kind = mixed
theta0 = 0.3
theta_slope = 1
delta0 = 1.0
delta_slope = 1   # trailing comment
phi = opt
shots = 100
replications = 10
seed = 99
";
        let cfg = SimConfig::parse(text).unwrap();
        assert_eq!(cfg.two_s, 2);
        assert_eq!(cfg.axis, AxisChoice::Optimal);
        assert_eq!(cfg.interval, (-0.25, 0.25));
        assert_eq!(cfg.seed, 99);

        let err = SimConfig::parse("twoS = 2\nkind = mixed\nbogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = SimConfig::parse("twoS = two\n").unwrap_err();
        assert!(err.to_string().contains("line 1") && err.to_string().contains("twoS"));
        let err = SimConfig::parse("twoS = 2\nkind = sideways\ndelta0 = 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        let err = SimConfig::parse("twoS = 2\nkind = mixed\n").unwrap_err();
        assert!(err.to_string().contains("delta0"));
        let err = SimConfig::parse("twoS 2\n").unwrap_err();
        assert!(err.to_string().contains("line 1"));
    }
}

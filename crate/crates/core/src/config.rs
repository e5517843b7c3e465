//! Scenario parameterization: node geometry, fading/EH/NOMA parameters,
//! unit conversions, and validation.
//!
//! All internal computation is in linear watts; dBm appears only at the
//! I/O boundary (scenario files, CLI flags, CSV columns).

use std::fmt;

/// A point in meters; z is altitude and must be ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position3D {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position3D {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }
}

impl fmt::Display for Position3D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}, {}", self.x, self.y, self.z)
    }
}

/// Euclidean distance in meters; symmetric, zero iff the points coincide.
pub fn distance(a: Position3D, b: Position3D) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// dBm → watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// watts → dBm.
pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Which set of closed-form expressions the analysis evaluates.
///
/// `PaperLiteral` evaluates the published formulas exactly as printed.
/// `Corrected` uses the forms re-derived from the SINR definitions: the
/// impairment term enters the threshold denominators with a minus sign,
/// the relay power carries the full 2/(1−ρ) time-switching factor, and the
/// saturation-branch integral binds the harvesting gain. Only the
/// corrected forms agree with event-level simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AnalysisMode {
    #[default]
    Corrected,
    PaperLiteral,
}

impl AnalysisMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AnalysisMode::Corrected => "corrected",
            AnalysisMode::PaperLiteral => "paper-literal",
        }
    }
}

impl std::str::FromStr for AnalysisMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "corrected" => Ok(AnalysisMode::Corrected),
            "paper-literal" => Ok(AnalysisMode::PaperLiteral),
            other => Err(format!("unknown mode '{other}' (corrected | paper-literal)")),
        }
    }
}

/// Which channel the relays harvest from.
///
/// The published saturation condition is written on the first-hop gain even
/// though the energy arrives from the beacon; `AliasGl` follows that reading
/// (harvest gain drawn from the first-hop distribution), `DistinctGe` gives
/// the beacon its own geometry-derived channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HarvestChannel {
    #[default]
    AliasGl,
    DistinctGe,
}

impl HarvestChannel {
    pub fn as_str(self) -> &'static str {
        match self {
            HarvestChannel::AliasGl => "alias-gl",
            HarvestChannel::DistinctGe => "distinct-ge",
        }
    }
}

impl std::str::FromStr for HarvestChannel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alias-gl" => Ok(HarvestChannel::AliasGl),
            "distinct-ge" => Ok(HarvestChannel::DistinctGe),
            other => Err(format!("unknown harvest channel '{other}' (alias-gl | distinct-ge)")),
        }
    }
}

/// Relay transmit power source for the second hop.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RelayPowerModel {
    /// Non-linear harvested power (the system under study).
    #[default]
    Harvested,
    /// Fixed transmit power in watts (the no-harvesting benchmark).
    Fixed(f64),
}

/// Full scenario parameterization.
///
/// `Default` reproduces the reference scenario: two ground devices, five
/// relays spaced 10 m apart along x, K = 0.15, m = 1.5, ρ = 0.1, η = 0.95,
/// P_th = 5 dBm, α = (0.8, 0.2), r = 0.5 bits/s/Hz, σ² = −90 dBm.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Source UAV position.
    pub chu_pos: Position3D,
    /// Relay UAV positions, one per cluster member (length = `cmu_count`).
    pub cmu_pos: Vec<Position3D>,
    /// Spacing used to regenerate relay positions when sweeping the count.
    pub cmu_offset: Position3D,
    /// Ground device positions (length = `device_count`), z = 0.
    pub device_pos: Vec<Position3D>,
    /// Power beacon position, z = 0. Only used with `HarvestChannel::DistinctGe`.
    pub pb_pos: Position3D,
    /// Number of relay UAVs (L).
    pub cmu_count: usize,
    /// Number of devices per relay (M).
    pub device_count: usize,
    /// Relay altitude used by the line-of-sight angle model, meters.
    pub altitude: f64,

    /// Path-loss exponent.
    pub beta: f64,
    /// Excess path loss: air-to-air.
    pub zeta0: f64,
    /// Excess path loss: air-to-ground, line-of-sight.
    pub zeta1: f64,
    /// Excess path loss: air-to-ground, non-line-of-sight.
    pub zeta2: f64,
    /// Line-of-sight model environment constants (degree-based angle model).
    pub xi1: f64,
    pub xi2: f64,

    /// Time-switching fraction spent harvesting, in [0, 1).
    pub rho: f64,
    /// Energy conversion efficiency, in [0, 1].
    pub eta: f64,
    /// Harvester saturation threshold, watts.
    pub p_th: f64,
    /// Source transmit power, watts.
    pub p_t: f64,
    /// Noise variance at the relays, watts.
    pub sigma2_l: f64,
    /// Noise variance at the devices, watts.
    pub sigma2_n: f64,
    /// Aggregate hardware impairment level, first hop.
    pub k_l: f64,
    /// Aggregate hardware impairment level, second hop.
    pub k_n: f64,
    /// First-hop scaling factor; multiplies signal and distortion alike.
    pub iota: f64,

    /// Nakagami shape: source→relay links.
    pub m_l: f64,
    /// Nakagami shape: relay→device links.
    pub m_n: f64,
    /// Nakagami shape: beacon→relay links.
    pub m_e: f64,

    /// Power allocation per device, strictly decreasing, summing to 1.
    pub alpha: Vec<f64>,
    /// Target rates per device, bits/s/Hz.
    pub target_rates: Vec<f64>,

    pub mode: AnalysisMode,
    pub harvest: HarvestChannel,
    pub relay_power: RelayPowerModel,
}

impl Default for SystemConfig {
    fn default() -> Self {
        let base = Position3D::new(15.0, 25.0, 30.0);
        let offset = Position3D::new(10.0, 0.0, 0.0);
        Self {
            chu_pos: Position3D::new(40.0, 20.0, 50.0),
            cmu_pos: cmu_grid(base, offset, 5),
            cmu_offset: offset,
            device_pos: vec![
                Position3D::new(65.0, 74.0, 0.0),
                Position3D::new(55.0, 70.0, 0.0),
            ],
            pb_pos: Position3D::new(0.0, 0.0, 0.0),
            cmu_count: 5,
            device_count: 2,
            altitude: 20.0,
            beta: 2.0,
            zeta0: 1.0,
            zeta1: 1.0,
            zeta2: 0.2,
            xi1: 9.6,
            xi2: 0.28,
            rho: 0.1,
            eta: 0.95,
            p_th: dbm_to_watts(5.0),
            p_t: dbm_to_watts(20.0),
            sigma2_l: dbm_to_watts(-90.0),
            sigma2_n: dbm_to_watts(-90.0),
            k_l: 0.15,
            k_n: 0.15,
            iota: 1.0,
            m_l: 1.5,
            m_n: 1.5,
            m_e: 1.5,
            alpha: vec![0.8, 0.2],
            target_rates: vec![0.5, 0.5],
            mode: AnalysisMode::Corrected,
            harvest: HarvestChannel::AliasGl,
            relay_power: RelayPowerModel::Harvested,
        }
    }
}

/// Relay positions laid out from `base` in steps of `offset`.
pub fn cmu_grid(base: Position3D, offset: Position3D, count: usize) -> Vec<Position3D> {
    (0..count)
        .map(|l| {
            Position3D::new(
                base.x + offset.x * l as f64,
                base.y + offset.y * l as f64,
                base.z + offset.z * l as f64,
            )
        })
        .collect()
}

impl SystemConfig {
    /// Regenerate relay positions for a new count, keeping the first
    /// position as the base and reusing the configured offset.
    pub fn set_cmu_count(&mut self, count: usize) {
        let base = self.cmu_pos.first().copied().unwrap_or(Position3D::new(15.0, 25.0, 30.0));
        self.cmu_pos = cmu_grid(base, self.cmu_offset, count);
        self.cmu_count = count;
    }

    /// Sets every Nakagami shape parameter at once.
    pub fn set_shape(&mut self, m: f64) {
        self.m_l = m;
        self.m_n = m;
        self.m_e = m;
    }

    /// Sets both impairment levels at once.
    pub fn set_impairment(&mut self, k: f64) {
        self.k_l = k;
        self.k_n = k;
    }

    /// Checks every structural invariant; violations are data, not errors.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let mut check = |ok: bool, msg: String| {
            if !ok {
                v.push(msg);
            }
        };

        check(self.cmu_count >= 1, "cmu count must be >= 1".into());
        check(self.device_count >= 1, "device count must be >= 1".into());
        check(
            self.cmu_pos.len() == self.cmu_count,
            format!("cmu position count {} != cmu count {}", self.cmu_pos.len(), self.cmu_count),
        );
        check(
            self.device_pos.len() == self.device_count,
            format!(
                "device position count {} != device count {}",
                self.device_pos.len(),
                self.device_count
            ),
        );
        check(
            self.alpha.len() == self.device_count,
            format!("alpha count {} != device count {}", self.alpha.len(), self.device_count),
        );
        check(
            self.target_rates.len() == self.device_count,
            format!(
                "target rate count {} != device count {}",
                self.target_rates.len(),
                self.device_count
            ),
        );

        let sum: f64 = self.alpha.iter().sum();
        check(
            (sum - 1.0).abs() <= 1e-12,
            format!("alpha sum != 1 (got {sum})"),
        );
        check(self.alpha.iter().all(|&a| a > 0.0), "every alpha must be > 0".into());
        check(
            self.alpha.windows(2).all(|w| w[0] > w[1]),
            "alpha must be strictly decreasing".into(),
        );
        check(
            self.target_rates.iter().all(|&r| r >= 0.0 && r.is_finite()),
            "target rates must be finite and >= 0".into(),
        );

        check(self.rho >= 0.0 && self.rho < 1.0, "rho must be in [0, 1) (rho must be < 1)".into());
        check(self.eta >= 0.0 && self.eta <= 1.0, "eta must be in [0, 1]".into());
        check(self.p_th > 0.0, "p_th must be > 0".into());
        check(self.p_t > 0.0, "p_t must be > 0".into());
        check(self.sigma2_l > 0.0 && self.sigma2_n > 0.0, "noise variances must be > 0".into());
        check(self.m_l > 0.0 && self.m_n > 0.0 && self.m_e > 0.0, "all m parameters must be > 0".into());
        check(self.k_l >= 0.0 && self.k_n >= 0.0, "impairment levels must be >= 0".into());
        check(self.iota > 0.0, "iota must be > 0".into());
        check(self.beta > 0.0, "beta must be > 0".into());
        check(self.altitude > 0.0, "altitude must be > 0".into());

        for (i, p) in self
            .cmu_pos
            .iter()
            .chain(std::iter::once(&self.chu_pos))
            .enumerate()
        {
            check(p.z >= 0.0, format!("airborne node {i} has negative altitude"));
        }
        for (i, p) in self.device_pos.iter().enumerate() {
            check(p.z == 0.0, format!("ground device {i} must have z = 0"));
        }
        check(self.pb_pos.z == 0.0, "power beacon must have z = 0".into());
        if let RelayPowerModel::Fixed(p) = self.relay_power {
            check(p > 0.0, "fixed relay power must be > 0".into());
        }

        ValidationReport { violations: v }
    }
}

/// Result of `SystemConfig::validate`; empty means valid.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn dbm_pins() {
        assert!((dbm_to_watts(30.0) - 1.0).abs() < 1e-15);
        assert!((dbm_to_watts(0.0) - 0.001).abs() < 1e-18);
        // 5 dBm, the reference saturation threshold
        assert!((dbm_to_watts(5.0) - 3.162_277_660_168_379_4e-3).abs() < 1e-6);
    }

    #[test]
    fn dbm_round_trip() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..10_000 {
            let w: f64 = 10f64.powf(rng.random_range(-12.0..3.0f64));
            let back = dbm_to_watts(watts_to_dbm(w));
            assert!(
                ((back - w) / w).abs() < 1e-12,
                "round trip failed: {w} -> {back}"
            );
        }
    }

    #[test]
    fn distance_pins() {
        let o = Position3D::new(0.0, 0.0, 0.0);
        assert_eq!(distance(o, o), 0.0);
        assert_eq!(distance(o, Position3D::new(3.0, 4.0, 0.0)), 5.0);
        // reference geometry: relay to the far device
        let d = distance(
            Position3D::new(15.0, 25.0, 30.0),
            Position3D::new(65.0, 74.0, 0.0),
        );
        assert!((d - 76.164_296_097_318_46).abs() < 1e-10, "got {d}");
    }

    #[test]
    fn distance_triangle_inequality() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        let mut pt = |rng: &mut rand::rngs::StdRng| {
            Position3D::new(
                rng.random_range(-100.0..100.0),
                rng.random_range(-100.0..100.0),
                rng.random_range(0.0..100.0),
            )
        };
        for _ in 0..10_000 {
            let (a, b, c) = (pt(&mut rng), pt(&mut rng), pt(&mut rng));
            assert!(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
            assert!((distance(a, b) - distance(b, a)).abs() < 1e-12);
        }
    }

    #[test]
    fn default_config_is_valid() {
        let report = SystemConfig::default().validate();
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn validation_catches_alpha_sum() {
        let mut cfg = SystemConfig::default();
        cfg.alpha = vec![0.5, 0.6];
        let report = cfg.validate();
        assert!(report.violations.iter().any(|v| v.contains("alpha sum != 1")), "{report}");
        // descending check also fires
        assert!(!report.is_valid());
    }

    #[test]
    fn validation_catches_rho_one() {
        let mut cfg = SystemConfig::default();
        cfg.rho = 1.0;
        let report = cfg.validate();
        assert!(
            report.violations.iter().any(|v| v.contains("rho must be")),
            "{report}"
        );
    }

    #[test]
    fn permuted_devices_revalidate_after_sorting() {
        // Shuffling device indices and re-sorting alpha descending keeps a
        // valid config valid.
        let mut rng = rand::rngs::StdRng::seed_from_u64(41);
        for _ in 0..100 {
            let mut cfg = SystemConfig::default();
            cfg.device_count = 4;
            cfg.alpha = vec![0.5, 0.25, 0.15, 0.1];
            cfg.target_rates = vec![0.5, 0.4, 0.3, 0.2];
            cfg.device_pos = (0..4)
                .map(|i| Position3D::new(60.0 + i as f64, 70.0, 0.0))
                .collect();
            assert!(cfg.validate().is_valid());

            let mut order: Vec<usize> = (0..4).collect();
            for i in (1..4).rev() {
                order.swap(i, rng.random_range(0..=i));
            }
            let mut joined: Vec<(f64, f64, Position3D)> = order
                .iter()
                .map(|&i| (cfg.alpha[i], cfg.target_rates[i], cfg.device_pos[i]))
                .collect();
            joined.sort_by(|a, b| b.0.total_cmp(&a.0));
            cfg.alpha = joined.iter().map(|t| t.0).collect();
            cfg.target_rates = joined.iter().map(|t| t.1).collect();
            cfg.device_pos = joined.iter().map(|t| t.2).collect();
            assert!(cfg.validate().is_valid());
        }
    }

    #[test]
    fn cmu_grid_layout() {
        let cfg = SystemConfig::default();
        assert_eq!(cfg.cmu_pos.len(), 5);
        assert_eq!(cfg.cmu_pos[0], Position3D::new(15.0, 25.0, 30.0));
        assert_eq!(cfg.cmu_pos[3], Position3D::new(45.0, 25.0, 30.0));
    }
}

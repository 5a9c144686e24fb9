//! key=value run configuration: parsing, preset overlay, and typed access.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use cpt_core::{uniform_preset, ModelParams, SolverPath};

/// A configuration error; always maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

type CResult<T> = Result<T, ConfigError>;

fn err<T>(msg: impl Into<String>) -> CResult<T> {
    Err(ConfigError(msg.into()))
}

/// Ordered key=value map with `#` comments and blank lines allowed.
#[derive(Debug, Default, Clone)]
pub struct KeyValues {
    map: BTreeMap<String, String>,
}

impl KeyValues {
    pub fn parse(text: &str, origin: &str) -> CResult<Self> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return err(format!(
                    "{origin}:{}: expected key=value, got '{line}'",
                    lineno + 1
                ));
            };
            map.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { map })
    }

    pub fn load(path: &Path) -> CResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Overlays `other` on top of `self` (later source wins).
    pub fn overlay(&mut self, other: KeyValues) {
        self.map.extend(other.map);
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn take_f64(&mut self, key: &str, default: Option<f64>) -> CResult<f64> {
        match self.take(key) {
            Some(v) => v
                .parse::<f64>()
                .map_err(|_| ConfigError(format!("key '{key}': not a number: '{v}'"))),
            None => match default {
                Some(d) => Ok(d),
                None => err(format!("missing required key '{key}'")),
            },
        }
    }

    fn take_usize(&mut self, key: &str, default: usize) -> CResult<usize> {
        match self.take(key) {
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| ConfigError(format!("key '{key}': not a count: '{v}'"))),
            None => Ok(default),
        }
    }

    fn take_f64_list(&mut self, key: &str) -> CResult<Option<Vec<f64>>> {
        match self.take(key) {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| ConfigError(format!("key '{key}': bad entry '{s}'")))
                })
                .collect::<CResult<Vec<f64>>>()
                .map(Some),
        }
    }
}

/// An inclusive linear grid.
#[derive(Debug, Clone)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        (0..self.steps)
            .map(|i| self.min + (self.max - self.min) * (i as f64) / ((self.steps - 1) as f64))
            .collect()
    }
}

fn take_grid(kv: &mut KeyValues, prefix: &str, default: Option<Grid>) -> CResult<Grid> {
    let has_any = [format!("{prefix}_min"), format!("{prefix}_max")]
        .iter()
        .any(|k| kv.map.contains_key(k));
    if !has_any {
        if let Some(d) = default {
            return Ok(d);
        }
    }
    let min = kv.take_f64(&format!("{prefix}_min"), None)?;
    let max = kv.take_f64(&format!("{prefix}_max"), Some(min))?;
    let steps = kv.take_usize(&format!("{prefix}_steps"), 1)?;
    if steps == 0 {
        return err(format!("{prefix}_steps must be >= 1"));
    }
    if steps > 1 && max <= min {
        return err(format!("{prefix} grid must be increasing"));
    }
    Ok(Grid { min, max, steps })
}

/// A fully parsed run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ModelParams,
    pub delta: Grid,
    pub delta_common: f64,
    pub p1: Grid,
    pub p2: Grid,
    pub x_grid: Vec<f64>,
    pub ratios: Vec<f64>,
    pub path: SolverPath,
}

impl RunConfig {
    /// Builds a config from merged key=values, with `path_override` (from
    /// the command line) winning over any `path` key.
    pub fn from_key_values(mut kv: KeyValues, path_override: Option<&str>) -> CResult<Self> {
        let gamma_opt = kv.take_f64("gamma_opt", Some(1.0))?;
        let gamma_exc = kv.take_f64("gamma_exc", Some(2.0))?;
        let gamma_12 = kv.take_f64("gamma_12", Some(0.0))?;
        let omega_34 = kv.take_f64("omega_34", None)?;
        let rabi_1 = kv.take_f64("rabi_1", None)?;
        let rabi_2 = kv.take_f64("rabi_2", None)?;
        let p_1 = kv.take_f64("p_1", None)?;
        let p_2 = kv.take_f64("p_2", None)?;
        let params = uniform_preset(
            gamma_exc, gamma_opt, gamma_12, omega_34, rabi_1, rabi_2, p_1, p_2,
        )
        .map_err(|e| ConfigError(e.to_string()))?;

        let delta = take_grid(
            &mut kv,
            "delta",
            Some(Grid {
                min: 0.0,
                max: 0.0,
                steps: 1,
            }),
        )?;
        let delta_common = kv.take_f64("delta_common", Some(0.0))?;
        let unit_grid = |v: f64| Grid {
            min: v,
            max: v,
            steps: 1,
        };
        let p1 = take_grid(&mut kv, "p1", Some(unit_grid(p_1)))?;
        let p2 = take_grid(&mut kv, "p2", Some(unit_grid(p_2)))?;
        let x_grid = kv
            .take_f64_list("x_grid")?
            .unwrap_or_else(|| cpt_core::DEFAULT_X_GRID.to_vec());
        let ratio_default = if rabi_2 != 0.0 {
            (rabi_1 * rabi_1) / (rabi_2 * rabi_2)
        } else {
            1.0
        };
        let ratios = kv.take_f64_list("ratios")?.unwrap_or(vec![ratio_default]);

        let path_str = match path_override {
            Some(p) => p.to_string(),
            None => kv.take("path").unwrap_or_else(|| "exact".to_string()),
        };
        // Drop a redundant config 'path' key when overridden from the CLI.
        kv.take("path");
        let path: SolverPath = path_str
            .parse()
            .map_err(|e: cpt_core::Error| ConfigError(e.to_string()))?;

        if let Some(unknown) = kv.map.keys().next() {
            return err(format!("unknown key '{unknown}'"));
        }
        Ok(Self {
            params,
            delta,
            delta_common,
            p1,
            p2,
            x_grid,
            ratios,
            path,
        })
    }

    /// Echo of all physical keys for CSV provenance headers.
    pub fn provenance(&self) -> String {
        let p = &self.params;
        format!(
            "gamma_opt={} gamma_exc={} gamma_12={} omega_34={} rabi_1={} rabi_2={} p_1={} p_2={}",
            p.gamma_opt, p.gamma_exc, p.gamma_12, p.omega_34, p.rabi_1, p.rabi_2, p.p_1, p.p_2
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config() {
        let kv = KeyValues::parse(
            "omega_34 = 10\nrabi_1 = 0.009\nrabi_2 = 0.003\np_1 = 1\np_2 = -1\n# comment\n",
            "test",
        )
        .unwrap();
        let cfg = RunConfig::from_key_values(kv, None).unwrap();
        assert_eq!(cfg.params.omega_34, 10.0);
        assert_eq!(cfg.path, SolverPath::Exact);
        assert_eq!(cfg.x_grid, cpt_core::DEFAULT_X_GRID.to_vec());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        let kv = KeyValues::parse("omega_34 = ten", "test").unwrap();
        assert!(RunConfig::from_key_values(kv, None).is_err());
        let kv = KeyValues::parse(
            "omega_34=1\nrabi_1=0.01\nrabi_2=0.01\np_1=0\np_2=0\nbogus=1",
            "test",
        )
        .unwrap();
        assert!(RunConfig::from_key_values(kv, None).is_err());
    }

    #[test]
    fn grid_points_are_inclusive() {
        let g = Grid {
            min: -1.0,
            max: 1.0,
            steps: 5,
        };
        assert_eq!(g.points(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn cli_path_overrides_config_path() {
        let kv = KeyValues::parse(
            "omega_34=1\nrabi_1=0.01\nrabi_2=0.01\np_1=0\np_2=0\npath=adiabatic",
            "test",
        )
        .unwrap();
        let cfg = RunConfig::from_key_values(kv, Some("rational")).unwrap();
        assert_eq!(cfg.path, SolverPath::Rational);
    }
}

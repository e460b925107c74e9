use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;
use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::scenarios::{F4Form, ScenarioConfig, ScenarioKind};

/// Problems with a configuration file. Every variant names the key involved.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("missing key `{0}`")]
    MissingKey(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{key}` has the wrong type: expected {expected}")]
    TypeMismatch { key: String, expected: &'static str },
    #[error("key `{key}` out of range: {reason}")]
    OutOfRange { key: String, reason: String },
    #[error("malformed config: {0}")]
    Syntax(String),
}

const SECTIONS: [(&str, &[&str]); 5] = [
    ("grid", &["x_min", "x_max", "n_points"]),
    ("packet", &["x0", "sigma", "k0", "weights"]),
    ("physics", &["mass", "g", "lambda", "omega", "epsilon", "f4_form"]),
    ("evolution", &["dt", "t_final", "snapshots"]),
    ("comparison", &["central_half_width", "window_fractions", "sweep"]),
];

fn mismatch(key: &str, expected: &'static str) -> ConfigError {
    ConfigError::TypeMismatch {
        key: key.to_string(),
        expected,
    }
}

fn range(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::OutOfRange {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn as_float(key: &str, v: &Value) -> std::result::Result<f64, ConfigError> {
    let x = match v {
        Value::Float(f) => *f,
        Value::Integer(i) => *i as f64,
        _ => return Err(mismatch(key, "a number")),
    };
    if !x.is_finite() {
        return Err(range(key, "must be finite"));
    }
    Ok(x)
}

fn as_count(key: &str, v: &Value) -> std::result::Result<usize, ConfigError> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as usize),
        Value::Integer(_) => Err(range(key, "must be non-negative")),
        _ => Err(mismatch(key, "an integer")),
    }
}

fn as_floats(key: &str, v: &Value) -> std::result::Result<Vec<f64>, ConfigError> {
    let Value::Array(items) = v else {
        return Err(mismatch(key, "an array of numbers"));
    };
    items.iter().map(|x| as_float(key, x)).collect()
}

/// Weights are either plain numbers or `[re, im]` pairs.
fn as_weights(key: &str, v: &Value) -> std::result::Result<Vec<C64>, ConfigError> {
    let Value::Array(items) = v else {
        return Err(mismatch(key, "an array of numbers or [re, im] pairs"));
    };
    items
        .iter()
        .map(|item| match item {
            Value::Array(pair) if pair.len() == 2 => {
                Ok(C64::new(as_float(key, &pair[0])?, as_float(key, &pair[1])?))
            }
            Value::Array(_) => Err(mismatch(key, "[re, im] pairs of length 2")),
            other => Ok(C64::new(as_float(key, other)?, 0.0)),
        })
        .collect()
}

fn positive(key: &str, x: f64) -> std::result::Result<f64, ConfigError> {
    if x > 0.0 {
        Ok(x)
    } else {
        Err(range(key, format!("must be positive, got {x}")))
    }
}

/// Parses a config file, applying the scenario's defaults to absent keys.
pub fn parse_config(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_str(&text, None)
}

/// Parses config text. `scenario` overrides the file's `scenario` key.
pub fn parse_config_str(text: &str, scenario: Option<ScenarioKind>) -> Result<ScenarioConfig> {
    let table: Table = text
        .parse()
        .map_err(|e: toml::de::Error| ConfigError::Syntax(e.message().to_string()))?;
    let cfg = from_table(&table, scenario)?;
    cfg.validate()?;
    Ok(cfg)
}

fn from_table(
    table: &Table,
    scenario: Option<ScenarioKind>,
) -> std::result::Result<ScenarioConfig, ConfigError> {
    for (key, value) in table {
        if key == "scenario" {
            continue;
        }
        let Some((_, allowed)) = SECTIONS.iter().find(|(s, _)| s == key) else {
            return Err(ConfigError::UnknownKey(key.clone()));
        };
        let Value::Table(section) = value else {
            return Err(mismatch(key, "a table"));
        };
        if let Some(k) = section.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(ConfigError::UnknownKey(format!("{key}.{k}")));
        }
    }

    let kind = match (scenario, table.get("scenario")) {
        (Some(kind), _) => kind,
        (None, None) => return Err(ConfigError::MissingKey("scenario".into())),
        (None, Some(Value::String(name))) => name
            .parse()
            .map_err(|reason: String| range("scenario", reason))?,
        (None, Some(_)) => return Err(mismatch("scenario", "a string")),
    };
    let mut cfg = ScenarioConfig::defaults(kind);

    let get = |section: &str, key: &str| -> Option<(String, &Value)> {
        table
            .get(section)
            .and_then(Value::as_table)
            .and_then(|t| t.get(key))
            .map(|v| (format!("{section}.{key}"), v))
    };

    if let Some((k, v)) = get("grid", "x_min") {
        cfg.grid.x_min = as_float(&k, v)?;
    }
    if let Some((k, v)) = get("grid", "x_max") {
        cfg.grid.x_max = as_float(&k, v)?;
    }
    if cfg.grid.x_max <= cfg.grid.x_min {
        return Err(range("grid.x_max", "must exceed grid.x_min"));
    }
    if let Some((k, v)) = get("grid", "n_points") {
        let n = as_count(&k, v)?;
        if !n.is_power_of_two() || n < 2 {
            return Err(range(&k, format!("must be a power of two, got {n}")));
        }
        cfg.grid.n_points = n;
    }

    if let Some((k, v)) = get("packet", "x0") {
        cfg.packet.x0 = as_float(&k, v)?;
    }
    if let Some((k, v)) = get("packet", "sigma") {
        cfg.packet.sigma = positive(&k, as_float(&k, v)?)?;
    }
    if let Some((k, v)) = get("packet", "k0") {
        cfg.packet.k0 = as_float(&k, v)?;
    }
    if let Some((k, v)) = get("packet", "weights") {
        let w = as_weights(&k, v)?;
        if w.len() != kind.components() {
            return Err(range(
                &k,
                format!("{kind} needs {} entries, got {}", kind.components(), w.len()),
            ));
        }
        if w.iter().all(|z| z.norm() == 0.0) {
            return Err(range(&k, "all weights are zero"));
        }
        cfg.packet.weights = w;
    }

    if let Some((k, v)) = get("physics", "mass") {
        let m = as_float(&k, v)?;
        if m < 0.0 {
            return Err(range(&k, format!("must be non-negative, got {m}")));
        }
        cfg.physics.mass = m;
    }
    if let Some((k, v)) = get("physics", "g") {
        cfg.physics.g = as_float(&k, v)?;
    }
    if let Some((k, v)) = get("physics", "lambda") {
        cfg.physics.lambda = as_float(&k, v)?;
    }
    if let Some((k, v)) = get("physics", "omega") {
        cfg.physics.omega = as_float(&k, v)?;
    }
    if let Some((k, v)) = get("physics", "epsilon") {
        cfg.physics.epsilon = as_float(&k, v)?;
    }
    if let Some((k, v)) = get("physics", "f4_form") {
        let Value::String(s) = v else {
            return Err(mismatch(&k, "a string"));
        };
        cfg.physics.f4_form = s.parse::<F4Form>().map_err(|reason| range(&k, reason))?;
    }

    if let Some((k, v)) = get("evolution", "dt") {
        cfg.evolution.dt = positive(&k, as_float(&k, v)?)?;
    }
    if let Some((k, v)) = get("evolution", "t_final") {
        cfg.evolution.t_final = positive(&k, as_float(&k, v)?)?;
    }
    if let Some((k, v)) = get("evolution", "snapshots") {
        let n = as_count(&k, v)?;
        if n == 0 {
            return Err(range(&k, "must be at least 1"));
        }
        cfg.evolution.snapshots = n;
    }

    let half_width = 0.5 * (cfg.grid.x_max - cfg.grid.x_min);
    if let Some((k, v)) = get("comparison", "central_half_width") {
        let w = positive(&k, as_float(&k, v)?)?;
        if w > half_width {
            return Err(range(&k, format!("exceeds the domain half-width {half_width}")));
        }
        cfg.comparison.central_half_width = w;
    }
    if let Some((k, v)) = get("comparison", "window_fractions") {
        let f = as_floats(&k, v)?;
        if f.iter().any(|x| !(*x > 0.0 && *x <= 1.0)) {
            return Err(range(&k, "fractions must lie in (0, 1]"));
        }
        cfg.comparison.window_fractions = f;
    }
    if let Some((k, v)) = get("comparison", "sweep") {
        let s = as_floats(&k, v)?;
        if s.iter().any(|x| *x <= 0.0) {
            return Err(range(&k, "entries must be positive"));
        }
        cfg.comparison.sweep = s;
    }
    Ok(cfg)
}

fn num(x: f64) -> String {
    // Debug formatting is the shortest string that parses back exactly and
    // always carries a decimal point or exponent.
    format!("{x:?}")
}

fn nums(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|x| num(*x)).collect();
    format!("[{}]", items.join(", "))
}

/// Writes a config in the file format accepted by [`parse_config_str`],
/// with every key present.
pub fn to_config_text(cfg: &ScenarioConfig) -> String {
    let mut s = String::new();
    let weights: Vec<String> = cfg
        .packet
        .weights
        .iter()
        .map(|w| format!("[{}, {}]", num(w.re), num(w.im)))
        .collect();
    let _ = writeln!(s, "scenario = \"{}\"", cfg.scenario.name());
    let _ = writeln!(s, "\n[grid]");
    let _ = writeln!(s, "x_min = {}", num(cfg.grid.x_min));
    let _ = writeln!(s, "x_max = {}", num(cfg.grid.x_max));
    let _ = writeln!(s, "n_points = {}", cfg.grid.n_points);
    let _ = writeln!(s, "\n[packet]");
    let _ = writeln!(s, "x0 = {}", num(cfg.packet.x0));
    let _ = writeln!(s, "sigma = {}", num(cfg.packet.sigma));
    let _ = writeln!(s, "k0 = {}", num(cfg.packet.k0));
    let _ = writeln!(s, "weights = [{}]", weights.join(", "));
    let _ = writeln!(s, "\n[physics]");
    let p = &cfg.physics;
    let _ = writeln!(s, "mass = {}", num(p.mass));
    let _ = writeln!(s, "g = {}", num(p.g));
    let _ = writeln!(s, "lambda = {}", num(p.lambda));
    let _ = writeln!(s, "omega = {}", num(p.omega));
    let _ = writeln!(s, "epsilon = {}", num(p.epsilon));
    let _ = writeln!(s, "f4_form = \"{}\"", p.f4_form.name());
    let _ = writeln!(s, "\n[evolution]");
    let _ = writeln!(s, "dt = {}", num(cfg.evolution.dt));
    let _ = writeln!(s, "t_final = {}", num(cfg.evolution.t_final));
    let _ = writeln!(s, "snapshots = {}", cfg.evolution.snapshots);
    let _ = writeln!(s, "\n[comparison]");
    let c = &cfg.comparison;
    let _ = writeln!(s, "central_half_width = {}", num(c.central_half_width));
    let _ = writeln!(s, "window_fractions = {}", nums(&c.window_fractions));
    let _ = writeln!(s, "sweep = {}", nums(&c.sweep));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> ConfigError {
        match parse_config_str(text, None) {
            Err(Error::Config(e)) => e,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_fig1_gets_defaults() {
        let cfg = parse_config_str("scenario = \"fig1\"\n", None).unwrap();
        assert_eq!(cfg, ScenarioConfig::defaults(ScenarioKind::Fig1));
        assert_eq!(cfg.physics.mass, 4.0);
        assert_eq!(cfg.physics.g, 2.0);
        assert_eq!(cfg.physics.lambda, 15.0);
    }

    #[test]
    fn unknown_keys_named() {
        assert_eq!(err("scenario = \"fig1\"\nfoo = 1\n"), ConfigError::UnknownKey("foo".into()));
        assert_eq!(
            err("scenario = \"fig1\"\n[grid]\nfoo = 1\n"),
            ConfigError::UnknownKey("grid.foo".into())
        );
    }

    #[test]
    fn bad_values_named() {
        assert!(matches!(
            err("scenario = \"fig1\"\n[evolution]\ndt = -1\n"),
            ConfigError::OutOfRange { key, .. } if key == "evolution.dt"
        ));
        assert!(matches!(
            err("scenario = \"fig1\"\n[evolution]\ndt = \"small\"\n"),
            ConfigError::TypeMismatch { key, .. } if key == "evolution.dt"
        ));
        assert!(matches!(
            err("scenario = \"fig1\"\n[grid]\nn_points = 1000\n"),
            ConfigError::OutOfRange { key, .. } if key == "grid.n_points"
        ));
        assert!(matches!(
            err("scenario = \"two_body\"\n[packet]\nweights = [1, 0]\n"),
            ConfigError::OutOfRange { key, .. } if key == "packet.weights"
        ));
        assert_eq!(err("[grid]\nx_min = -2\n"), ConfigError::MissingKey("scenario".into()));
        assert!(matches!(err("scenario = \"fig1\"\n[grid\n"), ConfigError::Syntax(_)));
    }

    #[test]
    fn override_replaces_scenario() {
        let cfg = parse_config_str("scenario = \"fig1\"\n", Some(ScenarioKind::TwoBody)).unwrap();
        assert_eq!(cfg.scenario, ScenarioKind::TwoBody);
        let cfg = parse_config_str("", Some(ScenarioKind::MasslessMass)).unwrap();
        assert_eq!(cfg, ScenarioConfig::defaults(ScenarioKind::MasslessMass));
    }

    #[test]
    fn complex_weights_accepted() {
        let cfg =
            parse_config_str("scenario = \"fig1\"\n[packet]\nweights = [[1, 0.5], 2]\n", None)
                .unwrap();
        assert_eq!(cfg.packet.weights, vec![C64::new(1.0, 0.5), C64::new(2.0, 0.0)]);
    }

    #[test]
    fn text_round_trips_for_every_scenario() {
        for kind in ScenarioKind::ALL {
            let mut cfg = ScenarioConfig::defaults(kind);
            cfg.packet.k0 = 0.1 + 0.2;
            cfg.physics.f4_form = F4Form::Imaginary;
            let back = parse_config_str(&to_config_text(&cfg), None).unwrap();
            assert_eq!(back, cfg);
        }
    }
}

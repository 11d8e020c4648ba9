use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, ValueEnum};
use serde::Deserialize;

use crate::experiments::SeriesExponents;
use crate::fem1d::{MassMode, MIN_ELEMENTS_PER_MODE};

/// Overrides the config file's `output_dir`; a `--output-dir` flag wins.
pub const OUTPUT_DIR_ENV: &str = "POSREG_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Lemma21,
    Lemma22,
    Lemma23,
    Series,
    Brute,
    Heat,
    Ibp,
    Weakdemo,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n_max: usize,
    /// Elements per unit of mode index.
    pub mesh_policy: usize,
    pub exponents: SeriesExponents,
    pub theta: f64,
    pub mass_mode: MassMode,
    pub tau: f64,
    pub t_final: f64,
    pub heat_elements: usize,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl RunConfig {
    pub fn with_command(command: Command) -> Self {
        Self {
            command,
            n_max: 128,
            mesh_policy: MIN_ELEMENTS_PER_MODE,
            exponents: SeriesExponents::default(),
            theta: 1.0,
            mass_mode: MassMode::Lumped,
            tau: 1e-3,
            t_final: 0.5,
            heat_elements: 64,
            output_dir: PathBuf::from("out"),
            seed: 20_240_601,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if self.n_max == 0 {
            return bad("n_max must be positive".into());
        }
        if self.mesh_policy < MIN_ELEMENTS_PER_MODE {
            return bad(format!(
                "mesh_policy must be at least {MIN_ELEMENTS_PER_MODE}, got {}",
                self.mesh_policy
            ));
        }
        let e = self.exponents;
        if [e.v, e.dual, e.plus]
            .iter()
            .any(|a| !(*a > 0.0 && a.is_finite()))
        {
            return bad("exponents must be positive".into());
        }
        if !(self.theta > 0.0 && self.theta <= 1.0) {
            return bad(format!("theta must lie in (0, 1], got {}", self.theta));
        }
        if !(self.tau > 0.0 && self.t_final > 0.0) {
            return bad("tau and t_final must be positive".into());
        }
        if self.tau > self.t_final {
            return bad("tau must not exceed t_final".into());
        }
        if self.heat_elements < 2 {
            return bad("heat_elements must be at least 2".into());
        }
        Ok(())
    }

    pub fn heat_steps(&self) -> usize {
        ((self.t_final / self.tau).round() as usize).max(1)
    }
}

#[derive(Debug)]
pub enum ConfigError {
    /// Argument syntax, `--help` and `--version`; `exit()` prints and
    /// terminates with clap's exit code.
    Clap(clap::Error),
    Invalid(String),
}

impl ConfigError {
    pub fn usage() -> String {
        Args::command().render_usage().to_string()
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Clap(e) => write!(f, "{e}"),
            ConfigError::Invalid(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Verification experiments for the positive part of parabolic functions.
#[derive(Debug, Parser)]
#[command(name = "posreg", version)]
struct Args {
    /// Experiment to run.
    #[arg(value_enum)]
    command: Option<Command>,
    /// JSON file with any of the flag names (snake_case) as keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Largest mode index.
    #[arg(long)]
    n_max: Option<usize>,
    /// Mesh elements per unit of mode index (at least 64).
    #[arg(long)]
    mesh_policy: Option<usize>,
    /// Amplitude exponents a,b,c of the V, V* and positive-part series.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    exponents: Option<Vec<f64>>,
    /// Time-scheme parameter (1 = implicit Euler, 0.5 = Crank–Nicolson).
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    #[arg(long, value_enum)]
    mass: Option<MassMode>,
    #[arg(long, allow_negative_numbers = true)]
    tau: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_final: Option<f64>,
    /// Mesh elements for the heat run.
    #[arg(long)]
    heat_elements: Option<usize>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Seed for the randomized suites.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    command: Option<Command>,
    n_max: Option<usize>,
    mesh_policy: Option<usize>,
    exponents: Option<[f64; 3]>,
    theta: Option<f64>,
    mass: Option<MassMode>,
    tau: Option<f64>,
    t_final: Option<f64>,
    heat_elements: Option<usize>,
    output_dir: Option<PathBuf>,
    seed: Option<u64>,
}

/// Flags override `env_output_dir`, which overrides the config file, which
/// overrides defaults.
pub fn parse_config<I, T>(
    argv: I,
    env_output_dir: Option<PathBuf>,
) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(ConfigError::Clap)?;
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| ConfigError::Invalid(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<FileConfig>(&text)
                .map_err(|e| ConfigError::Invalid(format!("{}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };

    let command = args
        .command
        .or(file.command)
        .ok_or_else(|| ConfigError::Invalid("missing command".into()))?;
    let mut cfg = RunConfig::with_command(command);

    macro_rules! layer {
        ($field:ident, $file:expr, $flag:expr) => {
            if let Some(v) = $file {
                cfg.$field = v;
            }
            if let Some(v) = $flag {
                cfg.$field = v;
            }
        };
    }
    layer!(n_max, file.n_max, args.n_max);
    layer!(mesh_policy, file.mesh_policy, args.mesh_policy);
    layer!(theta, file.theta, args.theta);
    layer!(mass_mode, file.mass, args.mass);
    layer!(tau, file.tau, args.tau);
    layer!(t_final, file.t_final, args.t_final);
    layer!(heat_elements, file.heat_elements, args.heat_elements);
    layer!(seed, file.seed, args.seed);

    let to_exponents = |[v, dual, plus]: [f64; 3]| SeriesExponents { v, dual, plus };
    if let Some(e) = file.exponents {
        cfg.exponents = to_exponents(e);
    }
    if let Some(e) = args.exponents {
        let arr: [f64; 3] = e
            .try_into()
            .map_err(|_| ConfigError::Invalid("--exponents takes three values".into()))?;
        cfg.exponents = to_exponents(arr);
    }

    if let Some(dir) = file.output_dir {
        cfg.output_dir = dir;
    }
    if let Some(dir) = env_output_dir {
        cfg.output_dir = dir;
    }
    if let Some(dir) = args.output_dir {
        cfg.output_dir = dir;
    }

    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, ConfigError> {
        parse_config(std::iter::once("posreg").chain(args.iter().copied()), None)
    }

    #[test]
    fn series_with_n_max() {
        let cfg = parse(&["series", "--n-max", "64"]).unwrap();
        assert_eq!(cfg.command, Command::Series);
        assert_eq!(cfg.n_max, 64);
        assert_eq!(
            RunConfig { n_max: 128, ..cfg },
            RunConfig::with_command(Command::Series)
        );
    }

    #[test]
    fn crank_nicolson_flags() {
        let cfg = parse(&["heat", "--theta", "0.5", "--mass", "consistent"]).unwrap();
        assert_eq!(cfg.theta, 0.5);
        assert_eq!(cfg.mass_mode, MassMode::Consistent);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(
            parse(&["series", "--n-max", "0"]),
            Err(ConfigError::Invalid(_))
        ));
        assert!(matches!(
            parse(&["series", "--n-max", "-3"]),
            Err(ConfigError::Clap(_))
        ));
        assert!(matches!(parse(&["nonsense"]), Err(ConfigError::Clap(_))));
        assert!(matches!(parse(&[]), Err(ConfigError::Invalid(_))));
        assert!(parse(&["heat", "--theta", "1.5"]).is_err());
        assert!(parse(&["series", "--mesh-policy", "16"]).is_err());
        assert!(parse(&["series", "--exponents", "3,3"]).is_err());
    }

    #[test]
    fn exponents_flag() {
        let cfg = parse(&["series", "--exponents", "3,3,4"]).unwrap();
        assert_eq!(cfg.exponents.plus, 4.0);
    }

    #[test]
    fn layering() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        fs::write(
            &path,
            r#"{"command": "heat", "tau": 0.01, "n_max": 16, "output_dir": "from_file"}"#,
        )
        .unwrap();
        let p = path.to_str().unwrap();

        let cfg = parse(&["--config", p]).unwrap();
        assert_eq!((cfg.command, cfg.tau, cfg.n_max), (Command::Heat, 0.01, 16));
        assert_eq!(cfg.output_dir, PathBuf::from("from_file"));

        let cfg = parse(&["ibp", "--config", p, "--n-max", "32"]).unwrap();
        assert_eq!((cfg.command, cfg.n_max), (Command::Ibp, 32));

        let env = Some(PathBuf::from("from_env"));
        let cfg = parse_config(["posreg", "--config", p], env.clone()).unwrap();
        assert_eq!(cfg.output_dir, PathBuf::from("from_env"));
        let cfg = parse_config(["posreg", "--config", p, "--output-dir", "flag"], env).unwrap();
        assert_eq!(cfg.output_dir, PathBuf::from("flag"));
    }

    #[test]
    fn unknown_file_key() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        fs::write(&path, r#"{"command": "heat", "colour": "blue"}"#).unwrap();
        let err = parse(&["--config", path.to_str().unwrap()]).unwrap_err();
        assert!(err.to_string().contains("colour"));
    }
}

//! Run configuration: a TOML file, overridden field by field by flags.

use std::path::{Path, PathBuf};

use adaptive_weno::cases::{make_case, CaseOverrides, CaseSpec, CASE_NAMES};
use adaptive_weno::{ReconConfig, RunOptions, Variant};
use serde::{Deserialize, Serialize};

use crate::BenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Ao,
    Aoa,
}

impl Scheme {
    pub fn variant(self) -> Variant {
        match self {
            Scheme::Ao => Variant::Ao,
            Scheme::Aoa => Variant::Aoa,
        }
    }

    pub fn other(self) -> Scheme {
        match self {
            Scheme::Ao => Scheme::Aoa,
            Scheme::Aoa => Scheme::Ao,
        }
    }

    pub fn name(self) -> &'static str {
        self.variant().name()
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<Variant>()? {
            Variant::Ao => Ok(Scheme::Ao),
            Variant::Aoa => Ok(Scheme::Aoa),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSection {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nx: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ny: Option<usize>,
    /// Switches to a Courant-limited step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cfl: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_final: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SchemeSection {
    pub variant: Scheme,
    pub gamma_hi: f64,
    pub gamma_lo: f64,
    pub epsilon: f64,
}

impl Default for SchemeSection {
    fn default() -> Self {
        let d = ReconConfig::default();
        SchemeSection {
            variant: Scheme::Aoa,
            gamma_hi: d.gamma_hi,
            gamma_lo: d.gamma_lo,
            epsilon: d.epsilon,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
    /// Mesh levels for `converge`, doubling from the case resolution.
    pub levels: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            workers: 0,
            levels: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: PathBuf,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshot_every: Option<f64>,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: PathBuf::from("out"),
            snapshot_every: None,
        }
    }
}

/// Everything needed to reproduce one experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub case: CaseSection,
    #[serde(default)]
    pub scheme: SchemeSection,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub output: OutputSection,
}

/// Flag values; every `Some` replaces the corresponding file value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub case: Option<String>,
    pub scheme: Option<Scheme>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub cfl: Option<f64>,
    pub t_final: Option<f64>,
    pub gamma_hi: Option<f64>,
    pub gamma_lo: Option<f64>,
    pub epsilon: Option<f64>,
    pub levels: Option<usize>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub snapshot_every: Option<f64>,
}

impl RunConfig {
    /// Defaults for `case`.
    pub fn for_case(case: &str) -> Self {
        RunConfig {
            case: CaseSection {
                name: case.to_string(),
                nx: None,
                ny: None,
                cfl: None,
                t_final: None,
            },
            scheme: SchemeSection::default(),
            run: RunSection::default(),
            output: OutputSection::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, BenchError> {
        toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            BenchError::Config(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::from_toml(&text).map_err(|e| match e {
            BenchError::Config(msg) => BenchError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Loads `path` if given, else starts from the defaults of the case
    /// named in `overrides`, then applies the overrides.
    pub fn assemble(path: Option<&Path>, overrides: &Overrides) -> Result<Self, BenchError> {
        let mut cfg = match (path, &overrides.case) {
            (Some(p), _) => Self::load(p)?,
            (None, Some(case)) => Self::for_case(case),
            (None, None) => {
                return Err(BenchError::Config("give --config or --case".into()));
            }
        };
        cfg.apply(overrides);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        fn set<T: Clone>(dst: &mut T, src: &Option<T>) {
            if let Some(v) = src {
                *dst = v.clone();
            }
        }
        fn set_opt<T: Clone>(dst: &mut Option<T>, src: &Option<T>) {
            if src.is_some() {
                dst.clone_from(src);
            }
        }
        set(&mut self.case.name, &o.case);
        set_opt(&mut self.case.nx, &o.nx);
        set_opt(&mut self.case.ny, &o.ny);
        set_opt(&mut self.case.cfl, &o.cfl);
        set_opt(&mut self.case.t_final, &o.t_final);
        set(&mut self.scheme.variant, &o.scheme);
        set(&mut self.scheme.gamma_hi, &o.gamma_hi);
        set(&mut self.scheme.gamma_lo, &o.gamma_lo);
        set(&mut self.scheme.epsilon, &o.epsilon);
        set(&mut self.run.levels, &o.levels);
        set(&mut self.run.workers, &o.workers);
        set(&mut self.output.dir, &o.out);
        set_opt(&mut self.output.snapshot_every, &o.snapshot_every);
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if !CASE_NAMES.contains(&self.case.name.as_str()) {
            return Err(BenchError::Config(format!(
                "unknown case `{}` (known: {})",
                self.case.name,
                CASE_NAMES.join(", ")
            )));
        }
        self.recon()
            .validate()
            .map_err(|e| BenchError::Config(e.to_string()))?;
        if self.run.levels == 0 {
            return Err(BenchError::Config("levels must be at least 1".into()));
        }
        if let Some(s) = self.output.snapshot_every {
            if !(s > 0.0) {
                return Err(BenchError::Config(format!("snapshot interval must be positive, got {s}")));
            }
        }
        self.case_spec().map(|_| ())
    }

    pub fn recon(&self) -> ReconConfig {
        ReconConfig {
            gamma_hi: self.scheme.gamma_hi,
            gamma_lo: self.scheme.gamma_lo,
            epsilon: self.scheme.epsilon,
            variant: self.scheme.variant.variant(),
        }
    }

    pub fn case_overrides(&self) -> CaseOverrides {
        CaseOverrides {
            nx: self.case.nx,
            ny: self.case.ny,
            cfl: self.case.cfl,
            t_final: self.case.t_final,
        }
    }

    pub fn case_spec(&self) -> Result<CaseSpec, BenchError> {
        make_case(&self.case.name, &self.case_overrides()).map_err(|e| BenchError::Config(e.to_string()))
    }

    pub fn run_options(&self) -> RunOptions {
        RunOptions {
            workers: self.run.workers,
            snapshot_every: self.output.snapshot_every,
        }
    }

    /// Same configuration with another scheme variant.
    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        let mut c = self.clone();
        c.scheme.variant = scheme;
        c
    }
}

//! Run configuration: a TOML document with exact rationals written as
//! `"p/q"` strings.
//!
//! ```toml
//! form = "trace"
//! window = [-2, 2]
//! suites = ["almost-graded", "cocycle"]
//!
//! [algebra]
//! type = "A"
//! rank = 1
//!
//! [curve]
//! P = ["1"]
//! Q = ["-1"]
//! gamma = [{ coord = "0", pvec = [1] }]
//! ```
//!
//! `schedule` is either `"default"` or a table `{ a = [...], first = m0,
//! degrees = [[n_{m0,1}, ...], ...] }` listing the Q-point degrees row by row.

use crate::error::{CliError, CliResult};
use laxalg::current::LaxAlgebra;
use laxalg::exactnum::{parse_scalar, Scalar};
use laxalg::liealg::{InvariantForm, MatrixLieAlgebra};
use laxalg::rootsys::{CartanType, GradingSpec, RootSystem};
use laxalg::surface::{DegreeSchedule, GammaPoint, MarkedCurve};
use serde::Deserialize;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    algebra: RawAlgebra,
    curve: RawCurve,
    schedule: Option<RawSchedule>,
    window: Option<[i64; 2]>,
    form: Option<String>,
    suites: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    #[serde(rename = "type")]
    ty: String,
    rank: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    #[serde(rename = "P")]
    p: Vec<String>,
    #[serde(rename = "Q")]
    q: Vec<String>,
    #[serde(default)]
    gamma: Vec<RawGamma>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGamma {
    coord: String,
    pvec: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawSchedule {
    Named(String),
    Table { a: Vec<String>, first: i64, degrees: Vec<Vec<i64>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Grading,
    AlmostGraded,
    Cocycle,
    Tyurin,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Grading, Suite::AlmostGraded, Suite::Cocycle, Suite::Tyurin];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Grading => "grading",
            Suite::AlmostGraded => "almost-graded",
            Suite::Cocycle => "cocycle",
            Suite::Tyurin => "tyurin",
        }
    }

    /// Parses one suite name; `"all"` expands to every suite.
    pub fn parse_list(text: &str) -> Option<Vec<Suite>> {
        if text == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.into_iter().find(|s| s.name() == text).map(|s| vec![s])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormChoice {
    Trace,
    Killing,
}

impl FromStr for FormChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "trace" => Ok(FormChoice::Trace),
            "killing" => Ok(FormChoice::Killing),
            other => Err(format!("expected \"trace\" or \"killing\", found {other:?}")),
        }
    }
}

#[derive(Clone, Debug)]
enum ScheduleChoice {
    Default,
    Table { slopes: Vec<Scalar>, first: i64, degrees: Vec<Vec<i64>> },
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub cartan_type: CartanType,
    /// Lie rank; type A with rank `r` is `sl(r + 1)`.
    pub rank: usize,
    pub curve: MarkedCurve,
    schedule: ScheduleChoice,
    pub window: (i64, i64),
    pub form: FormChoice,
    pub suites: Vec<Suite>,
}

fn scalar(path: &str, text: &str) -> CliResult<Scalar> {
    parse_scalar(text).ok_or_else(|| CliError::config(path, format!("expected a rational \"p/q\", found {text:?}")))
}

fn scalars(path: &str, texts: &[String]) -> CliResult<Vec<Scalar>> {
    texts.iter().enumerate().map(|(i, t)| scalar(&format!("{path}[{i}]"), t)).collect()
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Read { path: path.display().to_string(), message: e.to_string() })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::config("config", e.message()))?;

        let cartan_type = CartanType::parse(&raw.algebra.ty)
            .ok_or_else(|| CliError::config("algebra.type", format!("unknown type {:?}", raw.algebra.ty)))?;
        let rank = raw.algebra.rank;
        let size = match cartan_type {
            CartanType::A => rank + 1,
            _ => rank,
        };
        let roots = RootSystem::new(cartan_type, size).map_err(|e| CliError::config("algebra.rank", e))?;

        let p = scalars("curve.P", &raw.curve.p)?;
        let q = scalars("curve.Q", &raw.curve.q)?;
        let mut gammas = Vec::new();
        for (i, g) in raw.curve.gamma.iter().enumerate() {
            let coord = scalar(&format!("curve.gamma[{i}].coord"), &g.coord)?;
            let path = format!("curve.gamma[{i}].pvec");
            let spec = GradingSpec::new(g.pvec.clone()).map_err(|e| CliError::config(&path, e))?;
            roots.check_spec(&spec).map_err(|e| CliError::config(&path, e))?;
            gammas.push(GammaPoint { coord, spec });
        }
        let curve = MarkedCurve::new(p, q, gammas).map_err(|e| CliError::config("curve", e))?;

        let schedule = match raw.schedule {
            None => ScheduleChoice::Default,
            Some(RawSchedule::Named(s)) if s == "default" => ScheduleChoice::Default,
            Some(RawSchedule::Named(s)) => {
                return Err(CliError::config("schedule", format!("expected \"default\" or a table, found {s:?}")))
            }
            Some(RawSchedule::Table { a, first, degrees }) => {
                let slopes = scalars("schedule.a", &a)?;
                DegreeSchedule::explicit(&curve, slopes.clone(), first, degrees.clone())
                    .map_err(|e| CliError::config("schedule", e))?;
                ScheduleChoice::Table { slopes, first, degrees }
            }
        };

        let window = match raw.window {
            None => (-2, 2),
            Some([lo, hi]) if lo <= hi => (lo, hi),
            Some([lo, hi]) => return Err(CliError::config("window", format!("empty window [{lo}, {hi}]"))),
        };
        let form = match raw.form {
            None => FormChoice::Trace,
            Some(s) => s.parse().map_err(|e: String| CliError::config("form", e))?,
        };
        let suites = match raw.suites {
            None => Suite::ALL.to_vec(),
            Some(names) => {
                let mut out = Vec::new();
                for (i, n) in names.iter().enumerate() {
                    let s = Suite::parse_list(n)
                        .ok_or_else(|| CliError::config(format!("suites[{i}]"), format!("unknown suite {n:?}")))?;
                    out.extend(s);
                }
                out.sort();
                out.dedup();
                out
            }
        };
        Ok(RunConfig { cartan_type, rank, curve, schedule, window, form, suites })
    }

    /// Argument `n` of `MatrixLieAlgebra::build`.
    pub fn model_size(&self) -> usize {
        match self.cartan_type {
            CartanType::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn algebra(&self) -> CliResult<MatrixLieAlgebra> {
        Ok(MatrixLieAlgebra::build(self.cartan_type, self.model_size())?)
    }

    pub fn schedule(&self) -> CliResult<DegreeSchedule> {
        Ok(match &self.schedule {
            ScheduleChoice::Default => DegreeSchedule::default_for(&self.curve),
            ScheduleChoice::Table { slopes, first, degrees } => {
                DegreeSchedule::explicit(&self.curve, slopes.clone(), *first, degrees.clone())?
            }
        })
    }

    pub fn lax(&self) -> CliResult<LaxAlgebra> {
        Ok(LaxAlgebra::new(self.algebra()?, self.curve.clone(), self.schedule()?)?)
    }

    pub fn invariant_form(&self, alg: &MatrixLieAlgebra) -> InvariantForm {
        match self.form {
            FormChoice::Trace => InvariantForm::trace(alg),
            FormChoice::Killing => InvariantForm::killing(alg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use laxalg::exactnum::frac;

    const SL2: &str = r#"
        [algebra]
        type = "A"
        rank = 1
        [curve]
        P = ["1"]
        Q = ["-1"]
        gamma = [{ coord = "1/2", pvec = [1] }]
    "#;

    fn path_of(err: CliError) -> String {
        match err {
            CliError::Config { path, .. } => path,
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn defaults() {
        let c = RunConfig::parse(SL2).unwrap();
        assert_eq!(c.window, (-2, 2));
        assert_eq!(c.form, FormChoice::Trace);
        assert_eq!(c.suites, Suite::ALL.to_vec());
        assert_eq!(c.curve.gammas()[0].coord, frac(1, 2));
        assert_eq!(c.algebra().unwrap().dim(), 3);
        assert!(c.schedule().unwrap().is_default());
    }

    #[test]
    fn errors_name_the_field() {
        let bad_coord = SL2.replace("\"1/2\"", "\"0.5\"");
        assert_eq!(path_of(RunConfig::parse(&bad_coord).unwrap_err()), "curve.gamma[0].coord");
        let bad_pvec = SL2.replace("pvec = [1]", "pvec = [1, 0]");
        assert_eq!(path_of(RunConfig::parse(&bad_pvec).unwrap_err()), "curve.gamma[0].pvec");
        let clash = SL2.replace("\"1/2\"", "\"1\"");
        assert_eq!(path_of(RunConfig::parse(&clash).unwrap_err()), "curve");
        let form = format!("form = \"cartan\"\n{SL2}");
        assert_eq!(path_of(RunConfig::parse(&form).unwrap_err()), "form");
        let window = format!("window = [2, 1]\n{SL2}");
        assert_eq!(path_of(RunConfig::parse(&window).unwrap_err()), "window");
        assert_eq!(path_of(RunConfig::parse("[algebra]\ntype = \"A\"").unwrap_err()), "config");
    }

    #[test]
    fn explicit_schedule() {
        let text = format!("schedule = {{ a = [\"1\"], first = -1, degrees = [[-1], [0], [1]] }}\n{SL2}");
        let c = RunConfig::parse(&text).unwrap();
        let s = c.schedule().unwrap();
        assert_eq!(s.explicit_range(), Some((-1, 1)));
        let bad = format!("schedule = {{ a = [\"1\"], first = 0, degrees = [[3]] }}\n{SL2}");
        assert_eq!(path_of(RunConfig::parse(&bad).unwrap_err()), "schedule");
    }

    #[test]
    fn suite_lists() {
        let c = RunConfig::parse(&format!("suites = [\"cocycle\", \"grading\", \"cocycle\"]\n{SL2}")).unwrap();
        assert_eq!(c.suites, vec![Suite::Grading, Suite::Cocycle]);
        assert!(RunConfig::parse(&format!("suites = [\"nope\"]\n{SL2}")).is_err());
    }
}

//! Scenario runner: sweeps one parameter (α or λ) of the zero-input system,
//! solves every point, classifies analytically and empirically, and emits a
//! long-format CSV plus an overlaid SVG chart.
//!
//! Four named scenarios are built in (`case1`..`case4`); ad-hoc sweeps come
//! from a plain-text key/value file:
//!
//! ```text
//! # comment
//! name = my_sweep
//! alpha = 0.1:0.1:1.0     # scalar, comma list, or start:step:end
//! lambda = -0.2
//! b0 = 1
//! b1 = 0
//! a = 1
//! horizon = 100
//! method = auto           # auto | explicit | recursive
//! ```
//!
//! Unknown keys are errors, not warnings. Exactly one of alpha/lambda may
//! hold more than one value, and a lambda grid must not contain 1.

use crate::chart::{render_line_chart, ChartSeries};
use crate::classifier::{
    classify_zero_input, empirical_classify, EmpiricalClass, Verdict, DEFAULT_BOUNDARY_TOL,
    DEFAULT_TOL_MONO, DEFAULT_TOL_ZERO,
};
use crate::csv::write_sweep_csv;
use crate::error::{Error, Result};
use crate::mittag_leffler::DEFAULT_TOL;
use crate::solver::{solve_explicit, solve_recursive, InputSignal, Response, SystemSpec};
use rayon::prelude::*;
use std::path::{Path, PathBuf};

/// Horizon used for empirical classification when the display horizon is
/// shorter than the data-driven classifier needs.
const EMPIRICAL_HORIZON: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Explicit,
    Recursive,
}

impl MethodChoice {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "explicit" => Ok(MethodChoice::Explicit),
            "recursive" => Ok(MethodChoice::Recursive),
            other => Err(Error::InvalidArgument(format!(
                "method must be auto, explicit or recursive, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub alpha_grid: Vec<f64>,
    pub lambda_grid: Vec<f64>,
    pub b0: f64,
    pub b1: f64,
    pub a: i64,
    pub horizon: usize,
    pub method: MethodChoice,
}

impl Scenario {
    /// The four built-in sweeps (all with a = 1, zero input).
    pub fn builtin(name: &str) -> Option<Scenario> {
        let tenth = |i: i64| i as f64 / 10.0;
        match name {
            "case1" => Some(Scenario {
                name: "case1".into(),
                alpha_grid: (1..=10).map(tenth).collect(),
                lambda_grid: vec![-0.2],
                b0: 1.0,
                b1: 0.0,
                a: 1,
                horizon: 100,
                method: MethodChoice::Auto,
            }),
            "case2" => Some(Scenario {
                name: "case2".into(),
                alpha_grid: (10..=20).map(tenth).collect(),
                lambda_grid: vec![-0.2],
                b0: 1.0,
                b1: 0.0,
                a: 1,
                horizon: 100,
                method: MethodChoice::Auto,
            }),
            "case3" => Some(Scenario {
                name: "case3".into(),
                alpha_grid: (11..=20).map(tenth).collect(),
                lambda_grid: vec![-0.2],
                b0: 0.0,
                b1: 1.0,
                a: 1,
                horizon: 100,
                method: MethodChoice::Auto,
            }),
            "case4" => Some(Scenario {
                name: "case4".into(),
                alpha_grid: vec![1.5],
                lambda_grid: (1..=10).map(|i| -0.04 * i as f64).collect(),
                b0: 1.0,
                b1: 0.0,
                a: 1,
                horizon: 100,
                method: MethodChoice::Auto,
            }),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha_grid.is_empty() || self.lambda_grid.is_empty() {
            return Err(Error::InvalidArgument(
                "scenario needs at least one alpha and one lambda".into(),
            ));
        }
        if self.alpha_grid.len() > 1 && self.lambda_grid.len() > 1 {
            return Err(Error::InvalidArgument(
                "exactly one of alpha/lambda may be swept".into(),
            ));
        }
        if self.lambda_grid.contains(&1.0) {
            return Err(Error::LambdaOne);
        }
        if self.alpha_grid.iter().any(|&a| !(a > 0.0)) {
            return Err(Error::NonPositiveAlpha(
                *self.alpha_grid.iter().find(|&&a| !(a > 0.0)).unwrap(),
            ));
        }
        if self.horizon == 0 {
            return Err(Error::InvalidArgument("horizon must be at least 1".into()));
        }
        Ok(())
    }

    /// True when the sweep runs over α (otherwise it runs over λ).
    pub fn sweeps_alpha(&self) -> bool {
        self.alpha_grid.len() > 1
    }

    /// Parses the plain-text key/value format described in the module docs.
    pub fn parse(text: &str) -> Result<Scenario> {
        let mut sc = Scenario {
            name: "scenario".into(),
            alpha_grid: Vec::new(),
            lambda_grid: Vec::new(),
            b0: 1.0,
            b1: 0.0,
            a: 1,
            horizon: 100,
            method: MethodChoice::Auto,
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if stripped.is_empty() {
                continue;
            }
            let Some((key, value)) = stripped.split_once('=') else {
                return Err(Error::ScenarioParse {
                    line,
                    msg: format!("expected `key = value`, got `{stripped}`"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            let scalar = |v: &str| -> Result<f64> {
                v.parse::<f64>().map_err(|_| Error::ScenarioParse {
                    line,
                    msg: format!("`{v}` is not a number"),
                })
            };
            match key {
                "name" => sc.name = value.to_string(),
                "alpha" => sc.alpha_grid = parse_grid(value, line)?,
                "lambda" => sc.lambda_grid = parse_grid(value, line)?,
                "b0" => sc.b0 = scalar(value)?,
                "b1" => sc.b1 = scalar(value)?,
                "a" => {
                    sc.a = value.parse::<i64>().map_err(|_| Error::ScenarioParse {
                        line,
                        msg: format!("`{value}` is not an integer"),
                    })?
                }
                "horizon" => {
                    sc.horizon = value.parse::<usize>().map_err(|_| Error::ScenarioParse {
                        line,
                        msg: format!("`{value}` is not a positive integer"),
                    })?
                }
                "method" => {
                    sc.method = MethodChoice::parse(value).map_err(|e| Error::ScenarioParse {
                        line,
                        msg: e.to_string(),
                    })?
                }
                other => {
                    return Err(Error::ScenarioParse {
                        line,
                        msg: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        if sc.alpha_grid.is_empty() {
            return Err(Error::ScenarioParse { line: 0, msg: "missing key `alpha`".into() });
        }
        if sc.lambda_grid.is_empty() {
            return Err(Error::ScenarioParse { line: 0, msg: "missing key `lambda`".into() });
        }
        sc.validate()?;
        Ok(sc)
    }
}

/// `x` | `x,y,z` | `start:step:end` (end inclusive up to rounding slack).
fn parse_grid(value: &str, line: usize) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::ScenarioParse { line, msg };
    if value.contains(':') {
        let parts: Vec<&str> = value.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!("range must be start:step:end, got `{value}`")));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(format!("range has a non-numeric part: `{value}`")))?;
        let (start, step, end) = (nums[0], nums[1], nums[2]);
        if step == 0.0 || !step.is_finite() {
            return Err(bad("range step must be nonzero".into()));
        }
        if (end - start) / step < 0.0 {
            return Err(bad("range step points away from end".into()));
        }
        let count = ((end - start) / step + 0.5).floor() as usize + 1;
        if count > 10_000 {
            return Err(bad(format!("range would produce {count} points")));
        }
        Ok((0..count).map(|i| start + step * i as f64).collect())
    } else {
        value
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| bad(format!("`{}` is not a number", p.trim())))
            })
            .collect()
    }
}

/// One solved sweep point with both verdicts.
#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub sweep_value: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub verdict: Verdict,
    pub empirical: EmpiricalClass,
    pub method: String,
}

#[derive(Debug, Clone)]
pub struct ScenarioOutput {
    pub csv_path: PathBuf,
    pub svg_path: PathBuf,
    pub summary: Vec<SweepSummary>,
}

fn pick_method(choice: MethodChoice, alpha: f64, lambda: f64) -> MethodChoice {
    match choice {
        MethodChoice::Auto => {
            let near_integer = (alpha - alpha.round()).abs() <= 1e-12;
            if lambda.abs() >= 0.95 || near_integer {
                MethodChoice::Recursive
            } else {
                MethodChoice::Explicit
            }
        }
        other => other,
    }
}

fn initial_conditions(alpha: f64, b0: f64, b1: f64) -> Result<Vec<f64>> {
    let n = alpha.ceil() as usize;
    if n < 2 && b1 != 0.0 {
        return Err(Error::InvalidArgument(format!(
            "b1 = {b1} given but order {alpha} takes a single initial condition"
        )));
    }
    let mut b = vec![0.0; n];
    b[0] = b0;
    if n >= 2 {
        b[1] = b1;
    }
    Ok(b)
}

struct SweepPoint {
    sweep_value: f64,
    response: Response,
    summary: SweepSummary,
}

fn solve_point(sc: &Scenario, alpha: f64, lambda: f64, sweep_value: f64) -> Result<SweepPoint> {
    let b = initial_conditions(alpha, sc.b0, sc.b1)?;
    let spec = SystemSpec::new(alpha, lambda, sc.a, b.clone())?;
    let method = pick_method(sc.method, alpha, lambda);
    let response = match method {
        MethodChoice::Explicit => solve_explicit(&spec, &InputSignal::Zero, sc.horizon, DEFAULT_TOL)?,
        _ => solve_recursive(&spec, &InputSignal::Zero, sc.horizon)?,
    };
    let verdict = classify_zero_input(alpha, lambda, &b, DEFAULT_BOUNDARY_TOL)?.verdict;
    let empirical = if sc.horizon >= EMPIRICAL_HORIZON {
        empirical_classify(&response, DEFAULT_TOL_ZERO, DEFAULT_TOL_MONO)?
    } else {
        // short display horizons get a dedicated long solve for the verdict
        let long = solve_recursive(&spec, &InputSignal::Zero, EMPIRICAL_HORIZON)?;
        empirical_classify(&long, DEFAULT_TOL_ZERO, DEFAULT_TOL_MONO)?
    };
    Ok(SweepPoint {
        sweep_value,
        response,
        summary: SweepSummary {
            sweep_value,
            alpha,
            lambda,
            verdict,
            empirical,
            method: match method {
                MethodChoice::Explicit => "explicit".into(),
                _ => "recursive".into(),
            },
        },
    })
}

/// Solves every sweep point (worker pool, output ordered by sweep index) and
/// writes `<name>.csv` and `<name>.svg` into `out_dir`.
pub fn run_scenario(sc: &Scenario, out_dir: &Path) -> Result<ScenarioOutput> {
    sc.validate()?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::Io {
        path: out_dir.display().to_string(),
        msg: e.to_string(),
    })?;

    let sweep_alpha = sc.sweeps_alpha();
    let points: Vec<(f64, f64, f64)> = if sweep_alpha {
        let lambda = sc.lambda_grid[0];
        sc.alpha_grid.iter().map(|&a| (a, lambda, a)).collect()
    } else {
        let alpha = sc.alpha_grid[0];
        sc.lambda_grid.iter().map(|&l| (alpha, l, l)).collect()
    };

    let solved: Vec<SweepPoint> = points
        .par_iter()
        .map(|&(alpha, lambda, sweep)| solve_point(sc, alpha, lambda, sweep))
        .collect::<Result<_>>()?;

    let csv_path = out_dir.join(format!("{}.csv", sc.name));
    let curves: Vec<(f64, &Response)> =
        solved.iter().map(|p| (p.sweep_value, &p.response)).collect();
    write_sweep_csv(&csv_path, &curves)?;

    let param_name = if sweep_alpha { "alpha" } else { "lambda" };
    let series: Vec<ChartSeries> = solved
        .iter()
        .map(|p| ChartSeries {
            label: format!("{param_name} = {}", p.sweep_value),
            points: p
                .response
                .values()
                .iter()
                .enumerate()
                .map(|(i, &y)| ((p.response.origin() + 1 + i as i64) as f64, y))
                .collect(),
        })
        .collect();
    let title = format!("{}: zero-input response", sc.name);
    let svg = render_line_chart(&title, "k", "y(k)", &series);
    let svg_path = out_dir.join(format!("{}.svg", sc.name));
    std::fs::write(&svg_path, svg).map_err(|e| Error::Io {
        path: svg_path.display().to_string(),
        msg: e.to_string(),
    })?;

    Ok(ScenarioOutput {
        csv_path,
        svg_path,
        summary: solved.into_iter().map(|p| p.summary).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_exist_and_validate() {
        for name in ["case1", "case2", "case3", "case4"] {
            let sc = Scenario::builtin(name).unwrap();
            sc.validate().unwrap();
        }
        assert!(Scenario::builtin("case9").is_none());
        assert_eq!(Scenario::builtin("case1").unwrap().alpha_grid.len(), 10);
        assert_eq!(Scenario::builtin("case4").unwrap().lambda_grid.len(), 10);
    }

    #[test]
    fn parse_round_trip() {
        let text = "\
# demo sweep
name = demo
alpha = 0.2:0.2:0.6
lambda = -0.3
b0 = 1
horizon = 40
method = recursive
";
        let sc = Scenario::parse(text).unwrap();
        assert_eq!(sc.name, "demo");
        assert_eq!(sc.alpha_grid.len(), 3);
        assert!((sc.alpha_grid[2] - 0.6).abs() < 1e-12);
        assert_eq!(sc.method, MethodChoice::Recursive);
    }

    #[test]
    fn unknown_key_is_an_error() {
        let err = Scenario::parse("alpha = 0.5\nlambda = -0.2\nfoo = 1\n").unwrap_err();
        assert!(matches!(err, Error::ScenarioParse { line: 3, .. }), "{err}");
    }

    #[test]
    fn double_sweep_rejected() {
        let err = Scenario::parse("alpha = 0.5,0.6\nlambda = -0.2,-0.3\n").unwrap_err();
        assert!(err.to_string().contains("exactly one"));
    }

    #[test]
    fn lambda_one_in_grid_rejected() {
        let err = Scenario::parse("alpha = 0.5\nlambda = 0.5,1.0\n").unwrap_err();
        assert!(matches!(err, Error::LambdaOne));
    }

    #[test]
    fn comma_grid_and_comments() {
        let sc = Scenario::parse("alpha = 0.5 # half\nlambda = -0.1, -0.2 ,-0.3\n").unwrap();
        assert_eq!(sc.lambda_grid, vec![-0.1, -0.2, -0.3]);
    }

    #[test]
    fn run_emits_files_and_summary() {
        let dir = tempfile::tempdir().unwrap();
        let mut sc = Scenario::builtin("case4").unwrap();
        sc.horizon = 60;
        let out = run_scenario(&sc, dir.path()).unwrap();
        assert!(out.csv_path.exists());
        assert!(out.svg_path.exists());
        assert_eq!(out.summary.len(), 10);
        for s in &out.summary {
            assert_eq!(s.verdict, Verdict::ConvergentPossibleOvershoot);
        }
    }

    #[test]
    fn run_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let mut sc = Scenario::builtin("case1").unwrap();
        sc.horizon = 30;
        let a_dir = dir.path().join("a");
        let b_dir = dir.path().join("b");
        let a = run_scenario(&sc, &a_dir).unwrap();
        let b = run_scenario(&sc, &b_dir).unwrap();
        let bytes_a = std::fs::read(a.csv_path).unwrap();
        let bytes_b = std::fs::read(b.csv_path).unwrap();
        assert_eq!(bytes_a, bytes_b);
        let svg_a = std::fs::read(a.svg_path).unwrap();
        let svg_b = std::fs::read(b.svg_path).unwrap();
        assert_eq!(svg_a, svg_b);
    }
}

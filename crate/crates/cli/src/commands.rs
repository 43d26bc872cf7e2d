//! The five subcommands, each producing a `Report`.

use crate::cache::BasisCache;
use crate::config::{RunConfig, Suite};
use crate::error::{CliError, CliResult};
use crate::report::{Check, Report, Status};
use laxalg::cocycle::{
    check_gamma_holomorphy, coboundary_identity, eta, gamma_probe, locality_bounds, rho, verify_cocycle,
    verify_cocycle_identity, ConnectionForm,
};
use laxalg::current::{DegreeBasis, LaxAlgebra};
use laxalg::exactnum::format_scalar;
use laxalg::grading::GradedStructure;
use laxalg::liealg::{InvariantForm, MatrixLieAlgebra};
use laxalg::rootsys::CartanType;
use laxalg::tyurin::{c_level_one_values, classical_checks, g2_report, Verdict};
use num_traits::Zero;
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Grade,
    Basis,
    Verify,
    Cocycle,
    TyurinCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Grade => "grade",
            Command::Basis => "basis",
            Command::Verify => "verify",
            Command::Cocycle => "cocycle",
            Command::TyurinCheck => "tyurin-check",
        }
    }
}

/// Parsed command line.
#[derive(Clone, Debug)]
pub struct Invocation {
    pub command: Command,
    pub config: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    /// `m` or `(m, n)`.
    pub degree: Option<(i64, Option<i64>)>,
    pub suite: Option<String>,
    pub case: Option<String>,
}

/// Parses `m` or `m,n`.
pub fn parse_degree(text: &str) -> Result<(i64, Option<i64>), String> {
    let int = |s: &str| s.trim().parse::<i64>().map_err(|_| format!("expected an integer, found {s:?}"));
    match text.split_once(',') {
        Some((a, b)) => Ok((int(a)?, Some(int(b)?))),
        None => Ok((int(text)?, None)),
    }
}

/// A configured algebra with its optional disk cache.
struct Session {
    config: RunConfig,
    lax: LaxAlgebra,
    cache: Option<BasisCache>,
}

impl Session {
    fn open(inv: &Invocation) -> CliResult<Self> {
        let config = load_config(inv)?;
        let lax = config.lax()?;
        Ok(Session { config, lax, cache: inv.cache_dir.clone().map(BasisCache::new) })
    }

    fn prime(&self, degrees: impl IntoIterator<Item = i64>) -> CliResult<()> {
        for m in degrees {
            match &self.cache {
                Some(c) => {
                    c.prime(&self.lax, m)?;
                }
                None => {
                    self.lax.degree_subspace(m)?;
                }
            }
        }
        Ok(())
    }

    fn form(&self) -> InvariantForm {
        self.config.invariant_form(self.lax.algebra())
    }
}

fn load_config(inv: &Invocation) -> CliResult<RunConfig> {
    let path = inv.config.as_ref().ok_or_else(|| CliError::config("--config", "a configuration file is required"))?;
    RunConfig::load(path)
}

pub fn run(inv: &Invocation) -> CliResult<Report> {
    let mut report = Report::new(inv.command.name());
    match inv.command {
        Command::Grade => {
            let config = load_config(inv)?;
            grading_suite(&mut report, &config, &config.algebra()?);
        }
        Command::Basis => {
            let s = Session::open(inv)?;
            let degrees = match inv.degree {
                None => s.config.window,
                Some((m, None)) => (m, m),
                Some((lo, Some(hi))) if lo <= hi => (lo, hi),
                Some(_) => return Err(CliError::config("--degree", "expected m or m,n with m <= n")),
            };
            basis_listing(&mut report, &s, degrees)?;
        }
        Command::Verify => {
            let suites = match &inv.suite {
                Some(name) => Suite::parse_list(name)
                    .ok_or_else(|| CliError::config("--suite", format!("unknown suite {name:?}")))?,
                None => load_config(inv)?.suites,
            };
            let needs_curve = suites.iter().any(|s| *s != Suite::Tyurin);
            let session = if needs_curve { Some(Session::open(inv)?) } else { None };
            for suite in suites {
                match (suite, &session) {
                    (Suite::Grading, Some(s)) => grading_suite(&mut report, &s.config, s.lax.algebra()),
                    (Suite::AlmostGraded, Some(s)) => almost_graded_suite(&mut report, s)?,
                    (Suite::Cocycle, Some(s)) => cocycle_suite(&mut report, s)?,
                    (Suite::Tyurin, _) => tyurin_suite(&mut report, inv.case.as_deref())?,
                    _ => unreachable!("session exists whenever a curve suite runs"),
                }
            }
        }
        Command::Cocycle => {
            let s = Session::open(inv)?;
            let (m, n) = match inv.degree {
                Some((m, Some(n))) => (m, n),
                _ => return Err(CliError::config("--degree", "the cocycle table needs --degree m,n")),
            };
            cocycle_table(&mut report, &s, m, n)?;
        }
        Command::TyurinCheck => tyurin_suite(&mut report, inv.case.as_deref())?,
    }
    Ok(report)
}

fn grading_suite(report: &mut Report, config: &RunConfig, alg: &MatrixLieAlgebra) {
    const SUITE: &str = "grading";
    let form = config.invariant_form(alg);
    let gammas = config.curve.gammas();
    if gammas.is_empty() {
        report.push(SUITE, "grading points", Check::info(json!("none")));
    }
    for (s, g) in gammas.iter().enumerate() {
        let label = format!("gamma{}", s + 1);
        let gr = match GradedStructure::new(alg, &g.spec) {
            Ok(gr) => gr,
            Err(e) => {
                let w = json!({ "gamma": s + 1, "error": e.to_string() });
                report.push(SUITE, format!("{label} grading"), Check::compare(json!("built"), json!("failed"), w));
                continue;
            }
        };
        report.push(
            SUITE,
            format!("{label} vector"),
            Check::info(json!({ "coord": format_scalar(&g.coord), "pvec": g.spec.values() })),
        );
        report.push(SUITE, format!("{label} depth"), Check::info(json!(gr.depth())));
        let dims: Vec<Value> = gr.dims().into_iter().map(|(p, d)| json!([p, d])).collect();
        report.push(SUITE, format!("{label} level dims"), Check::info(Value::Array(dims)));
        let c = gr.codim_report();
        let codims: Vec<Value> = c.codims.iter().map(|(p, d)| json!([p, d])).collect();
        report.push(
            SUITE,
            format!("{label} codimension"),
            Check::compare(json!(c.total), json!(c.expected), json!({ "gamma": s + 1, "codims": codims })),
        );
        let violations: Vec<Value> = gr.verify(alg, &form).violations.into_iter().map(Value::String).collect();
        report.push(
            SUITE,
            format!("{label} invariants"),
            Check::absent(json!({ "violations": violations.len() }), json!({ "violations": 0 }), violations),
        );
    }
}

fn dimension_check(lax: &LaxAlgebra, b: &DegreeBasis) -> Check {
    let witness = json!({
        "m": b.m,
        "dim": b.dim(),
        "ambient_dim": b.ambient_dim,
        "constraint_rank": b.constraint_rank,
        "constraint_count": b.constraint_count,
    });
    Check::compare(json!(b.dim()), json!(lax.expected_dim()), witness)
}

fn basis_listing(report: &mut Report, s: &Session, (lo, hi): (i64, i64)) -> CliResult<()> {
    const SUITE: &str = "basis";
    s.prime(lo..=hi)?;
    for m in lo..=hi {
        let b = s.lax.degree_subspace(m)?;
        report.push(SUITE, format!("L_{m} dimension"), dimension_check(&s.lax, &b));
        report.push(
            SUITE,
            format!("L_{m} conditions"),
            Check::info(json!({
                "generic": b.is_generic(),
                "rank": b.constraint_rank,
                "count": b.constraint_count,
            })),
        );
        let rows: Vec<Value> = b
            .elements
            .iter()
            .map(|e| Value::Array(e.to_ratfuns().iter().map(|f| Value::String(f.to_string())).collect()))
            .collect();
        report.push(SUITE, format!("L_{m} basis"), Check::info(Value::Array(rows)));
    }
    Ok(())
}

fn almost_graded_suite(report: &mut Report, s: &Session) -> CliResult<()> {
    const SUITE: &str = "almost-graded";
    let (lo, hi) = s.config.window;
    // one degree of slack on each side so off-degree brackets show their support
    let slack = 1;
    s.prime(2 * lo - slack..=2 * hi + slack)?;
    for m in lo..=hi {
        report.push(SUITE, format!("dim L_{m}"), dimension_check(&s.lax, &*s.lax.degree_subspace(m)?));
    }
    let rep = s.lax.verify_almost_graded(lo, hi, slack)?;
    let pair = |f: &laxalg::current::PairCheck| json!({ "m": f.m, "n": f.n, "a": f.a, "b": f.b });
    let off: Vec<Value> = rep
        .failures
        .iter()
        .filter(|f| !matches!(&f.support, Ok(r) if r.iter().all(|&x| x == f.m + f.n)))
        .map(|f| {
            let mut w = pair(f);
            w["support"] = match &f.support {
                Ok(r) => json!(r),
                Err(e) => json!(e),
            };
            w
        })
        .collect();
    let outside: Vec<Value> = rep
        .failures
        .iter()
        .filter_map(|f| f.closure.violation.as_ref().map(|v| (f, v)))
        .map(|(f, v)| {
            let mut w = pair(f);
            w["violation"] = json!(v);
            w
        })
        .collect();
    report.push(
        SUITE,
        "strict grading",
        Check::absent(
            json!({ "pairs": rep.pairs_checked, "off_degree": off.len(), "R": rep.lower_spread, "S": rep.upper_spread }),
            json!({ "off_degree": 0, "R": 0, "S": 0 }),
            off,
        ),
    );
    report.push(
        SUITE,
        "closure",
        Check::absent(
            json!({ "pairs": rep.pairs_checked, "outside": outside.len() }),
            json!({ "outside": 0 }),
            outside,
        ),
    );
    report.push(
        SUITE,
        "direct sum over window",
        Check::info(json!({ "direct_sum": rep.direct_sum(), "dependent_coordinates": rep.dependent_coordinates })),
    );
    Ok(())
}

fn quad(v: &[(i64, i64, usize, usize)]) -> Vec<Value> {
    v.iter().map(|&(m, n, a, b)| json!({ "m": m, "n": n, "a": a, "b": b })).collect()
}

fn cocycle_suite(report: &mut Report, s: &Session) -> CliResult<()> {
    const SUITE: &str = "cocycle";
    let (lo, hi) = s.config.window;
    let identity_degrees = [0, 1];
    s.prime((lo..=hi).chain(identity_degrees))?;
    let (lax, alg, form) = (&s.lax, s.lax.algebra(), s.form());
    let omega = ConnectionForm::build(lax)?;
    let rep = verify_cocycle(lax, &form, &omega, lo, hi)?;
    let pairs = rep.pairs_checked;
    report.push(
        SUITE,
        "gamma holomorphy",
        Check::absent(
            json!({ "pairs": pairs, "poles": rep.gamma_poles.len() }),
            json!({ "poles": 0 }),
            quad(&rep.gamma_poles),
        ),
    );
    report.push(
        SUITE,
        "antisymmetry",
        Check::absent(
            json!({ "pairs": pairs, "failures": rep.antisymmetry_failures.len() }),
            json!({ "failures": 0 }),
            quad(&rep.antisymmetry_failures),
        ),
    );
    report.push(
        SUITE,
        "residue balance",
        Check::absent(
            json!({ "pairs": pairs, "failures": rep.residue_failures.len() }),
            json!({ "failures": 0 }),
            quad(&rep.residue_failures),
        ),
    );
    let nonzero = rep.observed.map(|(a, b)| json!([a, b])).unwrap_or(Value::Null);
    report.push(
        SUITE,
        "locality",
        Check::absent(
            json!({ "bounds": [rep.bounds.0, rep.bounds.1], "nonzero_range": nonzero, "outside": rep.locality_failures.len() }),
            json!({ "outside": 0 }),
            quad(&rep.locality_failures),
        ),
    );

    let id = verify_cocycle_identity(lax, &form, &omega, &identity_degrees)?;
    let w: Vec<Value> =
        id.failures.iter().map(|&(i, j, k)| json!({ "degrees": identity_degrees, "indices": [i, j, k] })).collect();
    report.push(
        SUITE,
        "cocycle identity",
        Check::absent(json!({ "triples": id.triples, "failures": w.len() }), json!({ "failures": 0 }), w),
    );

    let mut checked = 0;
    let mut cob = Vec::new();
    for m in lo.max(-1)..=hi.min(1) {
        for n in lo.max(-1)..=hi.min(1) {
            let (bm, bn) = (lax.degree_subspace(m)?, lax.degree_subspace(n)?);
            for (a, x) in bm.elements.iter().enumerate() {
                for (b, y) in bn.elements.iter().enumerate() {
                    checked += 1;
                    if !coboundary_identity(alg, &form, &omega, x, y)? {
                        cob.push(json!({ "m": m, "n": n, "a": a, "b": b }));
                    }
                }
            }
        }
    }
    report.push(
        SUITE,
        "coboundary identity",
        Check::absent(json!({ "pairs": checked, "failures": cob.len() }), json!({ "failures": 0 }), cob),
    );

    let control = match gamma_probe(lax, &form) {
        Some((x, y)) => {
            let regular = |w: &ConnectionForm| -> CliResult<bool> {
                Ok(check_gamma_holomorphy(lax, &rho(alg, &form, w, &x, &y)?).iter().all(|&ok| ok))
            };
            let observed = json!({ "pole_without_omega": !regular(&ConnectionForm::zero(lax))?, "regular_with_omega": regular(&omega)? });
            let witness = json!({ "pair": "X/(z - gamma1), Y (z - gamma1)/(z - Q1)" });
            Check::compare(observed, json!({ "pole_without_omega": true, "regular_with_omega": true }), witness)
        }
        None => Check::info(json!("no grading point of positive depth")),
    };
    report.push(SUITE, "omega = 0 control", control);
    Ok(())
}

fn cocycle_table(report: &mut Report, s: &Session, m: i64, n: i64) -> CliResult<()> {
    const SUITE: &str = "cocycle";
    s.prime([m, n])?;
    let (lax, form) = (&s.lax, s.form());
    let omega = ConnectionForm::build(lax)?;
    let (bm, bn) = (lax.degree_subspace(m)?, lax.degree_subspace(n)?);
    let mut values = Vec::new();
    let mut unbalanced = Vec::new();
    for (a, x) in bm.elements.iter().enumerate() {
        let mut row = Vec::new();
        for (b, y) in bn.elements.iter().enumerate() {
            let e = eta(lax, &form, &omega, x, y)?;
            if !e.q_side_agrees() {
                unbalanced.push(json!({ "m": m, "n": n, "a": a, "b": b }));
            }
            row.push(e.value);
        }
        values.push(row);
    }
    let rows: Vec<Value> =
        values.iter().map(|r| Value::Array(r.iter().map(|v| Value::String(format_scalar(v))).collect())).collect();
    report.push(SUITE, format!("eta on L_{m} x L_{n}"), Check::info(Value::Array(rows)));

    let bounds = locality_bounds(lax, &omega);
    let inside = bounds.0 <= m + n && m + n <= bounds.1;
    let nonzero: Vec<Value> = values
        .iter()
        .enumerate()
        .flat_map(|(a, r)| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(b, _)| (a, b)))
        .map(|(a, b)| json!({ "m": m, "n": n, "a": a, "b": b }))
        .collect();
    let locality = if inside {
        Check::info(json!({ "m+n": m + n, "bounds": [bounds.0, bounds.1], "nonzero": nonzero.len() }))
    } else {
        Check::absent(
            json!({ "m+n": m + n, "bounds": [bounds.0, bounds.1], "nonzero": nonzero.len() }),
            json!({ "nonzero": 0 }),
            nonzero,
        )
    };
    report.push(SUITE, "locality", locality);

    if m == n {
        let mut bad = Vec::new();
        for (a, row) in values.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if *v != -values[b][a].clone() {
                    bad.push(json!({ "m": m, "n": n, "a": a, "b": b }));
                }
            }
        }
        report.push(
            SUITE,
            "antisymmetry",
            Check::absent(json!({ "failures": bad.len() }), json!({ "failures": 0 }), bad),
        );
    }
    report.push(
        SUITE,
        "residue balance",
        Check::absent(json!({ "failures": unbalanced.len() }), json!({ "failures": 0 }), unbalanced),
    );
    Ok(())
}

/// `(type, n)` pairs of the classical battery; for A, `n` is the matrix size.
const TYURIN_CASES: [(CartanType, usize); 7] = [
    (CartanType::A, 3),
    (CartanType::A, 4),
    (CartanType::D, 4),
    (CartanType::C, 2),
    (CartanType::C, 3),
    (CartanType::B, 2),
    (CartanType::B, 3),
];

/// Verdict each classical family is known to give; `equal` unless noted.
fn expected_verdict(name: &str) -> Verdict {
    match name {
        // alpha beta^T sigma + ... with beta unrestricted reaches g_-2 as well
        "C first g_-1 literal" => Verdict::SubspaceProper,
        "B last g_-1 without sigma" => Verdict::NotInAlgebra,
        _ => Verdict::Equal,
    }
}

fn case_key(name: &str) -> String {
    name.replace(' ', "_")
}

fn tyurin_suite(report: &mut Report, case: Option<&str>) -> CliResult<()> {
    const SUITE: &str = "tyurin";
    let selected = |name: &str| case.is_none_or(|c| case_key(name).starts_with(c));
    let mut any = false;
    for (ty, n) in TYURIN_CASES {
        let label = MatrixLieAlgebra::build(ty, n)?.label().to_string();
        for c in classical_checks(ty, n)? {
            let name = format!("{} {label}", c.name);
            if !selected(&name) {
                continue;
            }
            any = true;
            let expected = expected_verdict(&c.name);
            let witness = json!({ "algebra": label, "family": c.name, "family_dim": c.family_dim, "subspace_dim": c.subspace_dim });
            report.push(
                SUITE,
                name,
                Check {
                    status: Status::from_bool(c.verdict == expected),
                    observed: json!(format!("{} {}/{}", c.verdict, c.family_dim, c.subspace_dim)),
                    expected: json!(expected.to_string()),
                    witnesses: if c.verdict == expected { Vec::new() } else { vec![witness] },
                },
            );
        }
        if ty == CartanType::C {
            let name = format!("C identity alpha^T sigma L_1 alpha = 0 {label}");
            if selected(&name) {
                any = true;
                let values = c_level_one_values(n)?;
                let bad: Vec<Value> = values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| json!({ "algebra": label, "element": i, "value": format_scalar(v) }))
                    .collect();
                report.push(
                    SUITE,
                    name,
                    Check::absent(
                        json!({ "elements": values.len(), "nonzero": bad.len() }),
                        json!({ "nonzero": 0 }),
                        bad,
                    ),
                );
            }
        }
    }
    if selected("G2") {
        any = true;
        let g2 = g2_report()?;
        let dims = |v: &[(i64, usize)]| v.iter().map(|x| x.1).collect::<Vec<_>>();
        let observed = json!([dims(&g2.depth_two), dims(&g2.depth_three)]);
        report.push(
            SUITE,
            "G2 level dims",
            Check::compare(
                observed.clone(),
                json!([[1, 4, 4, 4, 1], [2, 1, 2, 4, 2, 1, 2]]),
                json!({ "dims": observed }),
            ),
        );
        let relations: Vec<Vec<String>> = g2.relations.iter().map(|r| r.iter().map(format_scalar).collect()).collect();
        report.push(
            SUITE,
            "G2 depth-two family",
            Check::info(json!({
                "parameters": g2.family_parameters,
                "rank": g2.family_rank,
                "dim_g_-1": g2.level_minus_one_dim,
                "relations": relations,
                "in_model": g2.family_in_model,
                "top_family_in_model": g2.top_family_in_model,
            })),
        );
    }
    if !any {
        return Err(CliError::config("--case", format!("no Tyurin check matches {:?}", case.unwrap_or(""))));
    }
    Ok(())
}

use std::path::PathBuf;

use covent::correlation::{alt_cov, cov, report};
use covent::entangle::{
    apply_channel, bell_mixture_scan, bell_rotation_scan, covariance_entanglement, lgm_channel,
    max_cov_over_pure_states, pure_family_scan, Measure, OperatorFamily, OptimizationRecord, OptimizerConfig,
    ScanTable,
};
use covent::invariants::{chi_invariants, generating_series, singlet_count};
use covent::majorana::{
    dispersion, max_dispersion_catalog, mean_spin, roots, state_to_polynomial, ConstellationRecord, MajoranaPolynomial,
    Spin, SpinState,
};
use covent::states::{named_mixtures, named_state, BellKind, DensityMatrixRecord, NAMED_STATE_LABELS};
use covent::{Bipartition, DensityMatrix, C64};
use serde::Serialize;

use crate::args::{
    ChannelCommand, Cli, Command, MajoranaCommand, MeasureArg, OperatorsArg, ScanCommand, SpinStateArgs, StateArgs,
};
use crate::output::{num, nums, Artifact};
use crate::CliError;

const MAX_POINTS: usize = 10_001;
const MAX_ROTATION_POINTS: usize = 1001;
const MAX_DIM: usize = 16;
const MAX_TWICE_J: u32 = 64;
const MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub enum StateSource {
    Named(String),
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajoranaOp {
    StateToPoly,
    Roots,
    Dispersion,
}

/// A fully validated request. Construction checks every parameter, so
/// `execute` only fails on I/O, malformed input files or numerics.
#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Table41,
    Counterexample,
    BellRotationScan {
        points: usize,
        family: OperatorFamily,
    },
    PureFamilyScan {
        points: usize,
        family: OperatorFamily,
        y: f64,
    },
    BellMixtureScan {
        points: usize,
        family: OperatorFamily,
        b1: BellKind,
        b2: BellKind,
    },
    Optimize {
        state: Option<StateSource>,
        dims: Option<Bipartition>,
        family: OperatorFamily,
        measure: Measure,
        cfg: OptimizerConfig,
    },
    ChannelApply {
        state: StateSource,
        renormalize: bool,
    },
    Majorana {
        op: MajoranaOp,
        spin: Spin,
        values: Vec<C64>,
    },
    MajoranaCatalog {
        spin: Spin,
    },
    Invariants {
        state: StateSource,
    },
    Singlets {
        terms: usize,
        d1: usize,
        d2: usize,
    },
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn family(arg: OperatorsArg) -> OperatorFamily {
    match arg {
        OperatorsArg::EqualWeight => OperatorFamily::EqualWeight,
        OperatorsArg::Pair => OperatorFamily::Pair,
        OperatorsArg::Sigma3 => OperatorFamily::Sigma3,
    }
}

fn points(n: usize, max: usize) -> Result<usize, CliError> {
    if !(2..=max).contains(&n) {
        return Err(invalid(format!("--points must be between 2 and {max}, got {n}")));
    }
    Ok(n)
}

fn state_source(s: &StateArgs) -> Result<Option<StateSource>, CliError> {
    match (&s.rho, &s.named) {
        (Some(p), None) => Ok(Some(StateSource::File(p.clone()))),
        (None, Some(label)) if NAMED_STATE_LABELS.contains(&label.as_str()) => {
            Ok(Some(StateSource::Named(label.clone())))
        }
        (None, Some(label)) => {
            Err(invalid(format!("unknown state '{label}'; known: {}", NAMED_STATE_LABELS.join(", "))))
        }
        (None, None) => Ok(None),
        (Some(_), Some(_)) => Err(invalid("--rho and --named are exclusive")),
    }
}

fn required_state(s: &StateArgs) -> Result<StateSource, CliError> {
    state_source(s)?.ok_or_else(|| invalid("a state is required: pass --rho <file.json> or --named <label>"))
}

fn dims(v: &[usize]) -> Result<Bipartition, CliError> {
    let (d1, d2) = (v[0], v[1]);
    if !(2..=MAX_DIM).contains(&d1) || !(2..=MAX_DIM).contains(&d2) {
        return Err(invalid(format!("--dims entries must be between 2 and {MAX_DIM}, got {d1} {d2}")));
    }
    Ok(Bipartition::new(d1, d2)?)
}

fn check_family(f: OperatorFamily, bip: Bipartition) -> Result<(), CliError> {
    f.pair(bip).map(|_| ()).map_err(CliError::from)
}

fn bell_kind(s: &str) -> Result<BellKind, CliError> {
    BellKind::parse(s).ok_or_else(|| invalid(format!("unknown Bell state '{s}'; use phi+, phi-, psi+ or psi-")))
}

/// `"3/2"`, `"1.5"` and `"2"` are all accepted.
pub fn parse_spin(s: &str) -> Result<Spin, CliError> {
    let bad = || invalid(format!("--j must be a nonnegative integer or half-integer, got '{s}'"));
    let spin = match s.split_once('/') {
        Some((n, "2")) => Spin::from_twice(n.trim().parse().map_err(|_| bad())?),
        Some(_) => return Err(bad()),
        None => Spin::from_f64(s.trim().parse().map_err(|_| bad())?).map_err(|_| bad())?,
    };
    if spin.twice_j() > MAX_TWICE_J {
        return Err(invalid(format!("--j above {} is not supported", MAX_TWICE_J / 2)));
    }
    Ok(spin)
}

fn parse_list(flag: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            let x: f64 = t.trim().parse().map_err(|_| invalid(format!("{flag}: '{}' is not a number", t.trim())))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(invalid(format!("{flag}: non-finite entry")))
            }
        })
        .collect()
}

fn spin_values(a: &SpinStateArgs) -> Result<(Spin, Vec<C64>), CliError> {
    let spin = parse_spin(&a.j)?;
    let re = parse_list("--re", &a.re)?;
    let im = match &a.im {
        Some(s) => parse_list("--im", s)?,
        None => vec![0.0; re.len()],
    };
    if re.len() != spin.dim() || im.len() != spin.dim() {
        return Err(invalid(format!(
            "j = {spin} needs {} entries, got {} real and {} imaginary",
            spin.dim(),
            re.len(),
            im.len()
        )));
    }
    let values: Vec<C64> = re.into_iter().zip(im).map(|(r, i)| C64::new(r, i)).collect();
    if values.iter().all(|z| z.norm() == 0.0) {
        return Err(invalid("all entries are zero"));
    }
    Ok((spin, values))
}

impl Scenario {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        Ok(match &cli.command {
            Command::Table41 => Self::Table41,
            Command::Counterexample => Self::Counterexample,
            Command::Scan { kind } => match kind {
                ScanCommand::BellRotation { points: n, operators } => {
                    let family = family(*operators);
                    check_family(family, Bipartition::qubits())?;
                    Self::BellRotationScan { points: points(*n, MAX_ROTATION_POINTS)?, family }
                }
                ScanCommand::PureFamily { points: n, operators, y } => {
                    let family = family(*operators);
                    check_family(family, Bipartition::qubits())?;
                    if !y.is_finite() {
                        return Err(invalid("--y must be finite"));
                    }
                    Self::PureFamilyScan { points: points(*n, MAX_POINTS)?, family, y: *y }
                }
                ScanCommand::BellMixture { points: n, operators, b1, b2 } => {
                    let family = family(*operators);
                    check_family(family, Bipartition::qubits())?;
                    Self::BellMixtureScan {
                        points: points(*n, MAX_POINTS)?,
                        family,
                        b1: bell_kind(b1)?,
                        b2: bell_kind(b2)?,
                    }
                }
            },
            Command::Optimize(o) => {
                let state = state_source(&o.state)?;
                let bip = o.dims.as_deref().map(dims).transpose()?;
                let family = family(o.operators);
                match (&state, bip) {
                    (Some(_), Some(_)) => return Err(invalid("pass either a state or --dims, not both")),
                    (None, None) => return Err(invalid("optimize needs --rho, --named or --dims")),
                    (None, Some(b)) => check_family(family, b)?,
                    (Some(_), None) => {}
                }
                if o.restarts == 0 || o.restarts > 100_000 {
                    return Err(invalid(format!("--restarts must be between 1 and 100000, got {}", o.restarts)));
                }
                if !(o.tol.is_finite() && o.tol > 0.0) {
                    return Err(invalid(format!("--tol must be positive and finite, got {}", o.tol)));
                }
                if o.max_iters == 0 {
                    return Err(invalid("--max-iters must be positive"));
                }
                let measure = match o.measure {
                    MeasureArg::Cov => Measure::Cov,
                    MeasureArg::Altcov => Measure::AltCov,
                };
                let cfg = OptimizerConfig { restarts: o.restarts, seed: o.seed, tol: o.tol, max_iters: o.max_iters };
                Self::Optimize { state, dims: bip, family, measure, cfg }
            }
            Command::Channel { action: ChannelCommand::Apply { state, channel, renormalize } } => {
                if channel != "lgm" {
                    return Err(invalid(format!("unknown channel '{channel}'; only 'lgm' is built in")));
                }
                Self::ChannelApply { state: required_state(state)?, renormalize: *renormalize }
            }
            Command::Majorana { action } => match action {
                MajoranaCommand::State2poly(a) => {
                    let (spin, values) = spin_values(a)?;
                    Self::Majorana { op: MajoranaOp::StateToPoly, spin, values }
                }
                MajoranaCommand::Roots(a) => {
                    let (spin, values) = spin_values(a)?;
                    Self::Majorana { op: MajoranaOp::Roots, spin, values }
                }
                MajoranaCommand::Dispersion(a) => {
                    let (spin, values) = spin_values(a)?;
                    Self::Majorana { op: MajoranaOp::Dispersion, spin, values }
                }
                MajoranaCommand::Catalog { j } => {
                    let spin = parse_spin(j)?;
                    if !(2..=5).contains(&spin.twice_j()) {
                        return Err(invalid(format!("the catalog covers j = 1, 3/2, 2, 5/2; got {spin}")));
                    }
                    Self::MajoranaCatalog { spin }
                }
            },
            Command::Invariants(s) => Self::Invariants { state: required_state(s)? },
            Command::Singlets(s) => {
                let (d1, d2) = (s.dims[0], s.dims[1]);
                if s.terms == 0 || s.terms > MAX_TERMS {
                    return Err(invalid(format!("--terms must be between 1 and {MAX_TERMS}")));
                }
                if !(1..=MAX_DIM).contains(&d1) || !(1..=MAX_DIM).contains(&d2) {
                    return Err(invalid(format!("--dims entries must be between 1 and {MAX_DIM}")));
                }
                Self::Singlets { terms: s.terms, d1, d2 }
            }
        })
    }
}

fn load_state(src: &StateSource) -> Result<DensityMatrix, CliError> {
    match src {
        StateSource::Named(label) => named_state(label).ok_or_else(|| invalid(format!("unknown state '{label}'"))),
        StateSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let rec: DensityMatrixRecord =
                serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            DensityMatrix::from_record(&rec).map_err(|e| invalid(format!("{}: {e}", path.display())))
        }
    }
}

fn scan_artifact(t: &ScanTable) -> Result<Artifact, CliError> {
    let header: Vec<&str> = t.columns.iter().map(String::as_str).collect();
    Ok(Artifact::new(t)?.with_table(&header, t.rows.iter().map(|r| nums(r)).collect()))
}

#[derive(Serialize)]
struct TableRow {
    state: &'static str,
    description: &'static str,
    cov: f64,
    cov_sq: f64,
    alt_cov: f64,
    alt_cov_sq: f64,
}

#[derive(Serialize)]
struct CounterexampleOut {
    state: &'static str,
    description: &'static str,
    operators: &'static str,
    cov: f64,
    alt_cov: f64,
    var_a: f64,
    var_b: f64,
    alt_var_a: f64,
    alt_var_b: f64,
}

#[derive(Serialize)]
struct OptimizeOut {
    measure: Measure,
    operators: &'static str,
    dims: [usize; 2],
    config: OptimizerConfig,
    #[serde(flatten)]
    result: OptimizationRecord,
}

#[derive(Serialize)]
struct PolyOut {
    j: f64,
    coeffs: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct DispersionOut {
    j: f64,
    dispersion: f64,
    mean_spin: [f64; 3],
}

#[derive(Serialize)]
struct CatalogOut {
    label: &'static str,
    coeffs: Vec<[f64; 2]>,
    dispersion: f64,
    constellation: ConstellationRecord,
}

#[derive(Serialize)]
struct SingletOut {
    dims: [usize; 2],
    counts: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<Vec<i64>>,
}

fn pairs(zs: &[C64]) -> Vec<[f64; 2]> {
    zs.iter().map(|z| [z.re, z.im]).collect()
}

fn point_rows(points: &[[f64; 3]]) -> Vec<Vec<String>> {
    points.iter().map(|p| nums(p)).collect()
}

fn overflow() -> CliError {
    CliError::Numerical("count exceeds 64 bits".into())
}

pub fn execute(sc: &Scenario) -> Result<Artifact, CliError> {
    let sigma3 = || OperatorFamily::Sigma3.pair(Bipartition::qubits());
    match sc {
        Scenario::Table41 => {
            let (a, b) = sigma3()?;
            let rows: Vec<TableRow> = named_mixtures()
                .into_iter()
                .filter(|n| ["rho1", "rho2", "rho3", "rho4"].contains(&n.label))
                .map(|n| {
                    let c = cov(&n.rho, a.embedded(), b.embedded())?.norm();
                    let alt = alt_cov(&n.rho, a.embedded(), b.embedded())?.norm();
                    Ok(TableRow {
                        state: n.label,
                        description: n.description,
                        cov: c,
                        cov_sq: c * c,
                        alt_cov: alt,
                        alt_cov_sq: alt * alt,
                    })
                })
                .collect::<Result<_, covent::Error>>()?;
            let csv = rows
                .iter()
                .map(|r| {
                    let mut v = vec![r.state.to_string()];
                    v.extend(nums(&[r.cov, r.cov_sq, r.alt_cov, r.alt_cov_sq]));
                    v
                })
                .collect();
            Ok(Artifact::new(&rows)?.with_table(&["state", "cov", "cov_sq", "alt_cov", "alt_cov_sq"], csv))
        }
        Scenario::Counterexample => {
            let (a, b) = sigma3()?;
            let entry = named_mixtures().into_iter().find(|n| n.label == "counterexample").expect("built-in state");
            let r = report(&entry.rho, a.embedded(), b.embedded())?;
            let out = CounterexampleOut {
                state: entry.label,
                description: entry.description,
                operators: "sigma3",
                cov: r.cov.norm(),
                alt_cov: r.alt_cov.norm(),
                var_a: r.var_a,
                var_b: r.var_b,
                alt_var_a: r.alt_var_a,
                alt_var_b: r.alt_var_b,
            };
            let row = nums(&[out.cov, out.alt_cov, out.var_a, out.var_b, out.alt_var_a, out.alt_var_b]);
            Ok(Artifact::new(&out)?
                .with_table(&["cov", "alt_cov", "var_a", "var_b", "alt_var_a", "alt_var_b"], vec![row]))
        }
        Scenario::BellRotationScan { points, family } => scan_artifact(&bell_rotation_scan(*points, *family)?),
        Scenario::PureFamilyScan { points, family, y } => scan_artifact(&pure_family_scan(*points, *y, *family)?),
        Scenario::BellMixtureScan { points, family, b1, b2 } => {
            scan_artifact(&bell_mixture_scan(*b1, *b2, *points, *family)?)
        }
        Scenario::Optimize { state, dims, family, measure, cfg } => {
            let (result, bip) = match (state, dims) {
                (Some(src), _) => {
                    let rho = load_state(src)?;
                    let bip = rho.require_bipartition()?;
                    let (a, b) = family.pair(bip)?;
                    (covariance_entanglement(&rho, &a, &b, *measure, cfg)?, bip)
                }
                (None, Some(bip)) => {
                    let (a, b) = family.pair(*bip)?;
                    (max_cov_over_pure_states(*bip, &a, &b, cfg)?, *bip)
                }
                (None, None) => return Err(invalid("optimize needs a state or --dims")),
            };
            let (d1, d2) = bip.as_tuple();
            let out = OptimizeOut {
                measure: *measure,
                operators: family.label(),
                dims: [d1, d2],
                config: *cfg,
                result: result.record(),
            };
            let mut art = Artifact::new(&out)?.with_table(
                &["restart", "value"],
                result.history.iter().enumerate().map(|(i, v)| vec![i.to_string(), num(*v)]).collect(),
            );
            if !result.converged {
                art.failure = Some(format!(
                    "best restart did not converge within {} iterations (value {})",
                    cfg.max_iters, result.max_value
                ));
            }
            Ok(art)
        }
        Scenario::ChannelApply { state, renormalize } => {
            let rho = load_state(state)?;
            let out = apply_channel(&rho, &lgm_channel(), *renormalize)?;
            Artifact::new(&out.to_record())
        }
        Scenario::Majorana { op, spin, values } => match op {
            MajoranaOp::StateToPoly => {
                let s = SpinState::normalized(*spin, values.clone())?;
                let p = state_to_polynomial(&s);
                let coeffs = pairs(p.coeffs());
                let rows = coeffs.iter().enumerate().map(|(k, c)| vec![k.to_string(), num(c[0]), num(c[1])]).collect();
                Ok(Artifact::new(&PolyOut { j: spin.j(), coeffs })?.with_table(&["power", "re", "im"], rows))
            }
            MajoranaOp::Roots => {
                let con = roots(&MajoranaPolynomial::new(*spin, values.clone())?)?;
                Ok(Artifact::new(&con.record())?.with_table(&["x", "y", "z"], point_rows(&con.points)))
            }
            MajoranaOp::Dispersion => {
                let s = SpinState::normalized(*spin, values.clone())?;
                let out = DispersionOut { j: spin.j(), dispersion: dispersion(&s), mean_spin: mean_spin(&s) };
                let mut row = nums(&[out.j, out.dispersion]);
                row.extend(nums(&out.mean_spin));
                Ok(Artifact::new(&out)?.with_table(&["j", "dispersion", "mean_x", "mean_y", "mean_z"], vec![row]))
            }
        },
        Scenario::MajoranaCatalog { spin } => {
            let entries = max_dispersion_catalog(*spin)?;
            let mut rows = Vec::new();
            let out: Vec<CatalogOut> = entries
                .iter()
                .map(|e| {
                    for p in &e.constellation.points {
                        let mut r = vec![e.label.to_string(), num(e.dispersion)];
                        r.extend(nums(p));
                        rows.push(r);
                    }
                    CatalogOut {
                        label: e.label,
                        coeffs: pairs(e.polynomial.coeffs()),
                        dispersion: e.dispersion,
                        constellation: e.constellation.record(),
                    }
                })
                .collect();
            Ok(Artifact::new(&out)?.with_table(&["label", "dispersion", "x", "y", "z"], rows))
        }
        Scenario::Invariants { state } => {
            let inv = chi_invariants(&load_state(state)?)?;
            let mut row = nums(&[inv.chi1, inv.chi2, inv.purity]);
            row.push(inv.eps.map(num).unwrap_or_default());
            Ok(Artifact::new(&inv)?.with_table(&["chi1", "chi2", "purity", "eps"], vec![row]))
        }
        Scenario::Singlets { terms, d1, d2 } => {
            let counts = (0..*terms)
                .map(|n| singlet_count(n, *d1, *d2).map_err(CliError::from)?.try_into().map_err(|_| overflow()))
                .collect::<Result<Vec<u64>, CliError>>()?;
            let series = if (*d1, *d2) == (2, 2) {
                let s = generating_series(*terms)?;
                Some(s.into_iter().map(|c| c.try_into().map_err(|_| overflow())).collect::<Result<Vec<i64>, _>>()?)
            } else {
                None
            };
            let rows = counts
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    let mut r = vec![n.to_string(), c.to_string()];
                    if let Some(s) = &series {
                        r.push(s[n].to_string());
                    }
                    r
                })
                .collect();
            let header: &[&str] = if series.is_some() { &["order", "count", "series"] } else { &["order", "count"] };
            Ok(Artifact::new(&SingletOut { dims: [*d1, *d2], counts, series })?.with_table(header, rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spins_parse_in_both_notations() {
        assert_eq!(parse_spin("3/2").unwrap(), Spin::from_twice(3));
        assert_eq!(parse_spin("1.5").unwrap(), Spin::from_twice(3));
        assert_eq!(parse_spin("2").unwrap(), Spin::from_twice(4));
        assert!(parse_spin("1/3").is_err());
        assert!(parse_spin("0.3").is_err());
        assert!(parse_spin("-1").is_err());
    }

    #[test]
    fn lists_reject_garbage() {
        assert_eq!(parse_list("--re", "1, -0.5,2e-3").unwrap(), vec![1.0, -0.5, 0.002]);
        assert!(parse_list("--re", "1,,2").is_err());
        assert!(parse_list("--re", "inf").is_err());
    }
}

use std::path::PathBuf;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::frobenius::AffineVariety;
use crate::poly::{Ring, SparsePolynomial};
use crate::projective::ProjectiveVariety;
use crate::twisted::Superpotential;

pub const DEFAULT_DEGREE_CAP: u32 = 64;
pub const DEFAULT_SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Assert,
    Exploratory,
}

#[derive(Clone, Debug)]
pub enum ExperimentKind {
    Cartier(AffineVariety),
    Obstruction(AffineVariety),
    WeylIdentities { n: usize, samples: usize, seed: u64 },
    Bk(Superpotential),
    LSupport(Superpotential),
    ProjectiveDegeneration { variety: ProjectiveVariety, truncation: Option<u32>, window: u32 },
}

impl ExperimentKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ExperimentKind::Cartier(_) => "cartier",
            ExperimentKind::Obstruction(_) => "obstruction",
            ExperimentKind::WeylIdentities { .. } => "weyl_identities",
            ExperimentKind::Bk(_) => "bk",
            ExperimentKind::LSupport(_) => "L_support",
            ExperimentKind::ProjectiveDegeneration { .. } => "projective_degeneration",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Experiment {
    pub id: String,
    pub kind: ExperimentKind,
    pub mode: Mode,
    pub degree_cap: u32,
    /// Canonical echo of every parameter, defaults filled in.
    pub params: Value,
}

#[derive(Clone, Debug)]
pub struct ExperimentPlan {
    pub prime: Prime,
    pub experiments: Vec<Experiment>,
    pub output: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub jobs: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlan {
    prime: u32,
    #[serde(default)]
    experiments: Vec<RawExperiment>,
    output: Option<PathBuf>,
    cache: Option<PathBuf>,
    jobs: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExperiment {
    kind: String,
    id: Option<String>,
    mode: Option<Mode>,
    prime: Option<u32>,
    n: Option<usize>,
    f: Option<String>,
    hypersurface: Option<String>,
    degree_cap: Option<u32>,
    samples: Option<usize>,
    seed: Option<u64>,
    projective: Option<RawProjective>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProjective {
    #[serde(rename = "G")]
    g: Option<String>,
    space: Option<usize>,
    prime: Option<u32>,
    truncation: Option<u32>,
    window: Option<u32>,
}

/// Parses and validates a YAML plan. Syntax errors carry the line and
/// column; semantic errors name the offending experiment.
pub fn parse_plan(text: &str) -> Result<ExperimentPlan> {
    let raw: RawPlan = serde_yaml::from_str(text).map_err(|e| {
        let (line, column) = e.location().map_or((0, 0), |l| (l.line(), l.column()));
        Error::Parse { line, column, message: e.to_string() }
    })?;
    let prime = Prime::new(raw.prime)?;
    if raw.jobs == Some(0) {
        return Err(Error::Plan("jobs must be at least 1".into()));
    }
    let mut experiments = Vec::with_capacity(raw.experiments.len());
    for (i, e) in raw.experiments.into_iter().enumerate() {
        let label = format!("experiments[{i}] ({})", e.id.as_deref().unwrap_or(&e.kind));
        let exp = validate(prime, i, e).map_err(|err| match err {
            Error::Plan(m) => Error::Plan(format!("{label}: {m}")),
            other => Error::Plan(format!("{label}: {other}")),
        })?;
        experiments.push(exp);
    }
    let mut seen = std::collections::BTreeSet::new();
    for e in &experiments {
        if !seen.insert(e.id.clone()) {
            return Err(Error::Plan(format!("duplicate experiment id {}", e.id)));
        }
    }
    Ok(ExperimentPlan { prime, experiments, output: raw.output, cache: raw.cache, jobs: raw.jobs })
}

fn allow(e: &RawExperiment, keys: &[&str]) -> Result<()> {
    let present = [
        ("n", e.n.is_some()),
        ("f", e.f.is_some()),
        ("hypersurface", e.hypersurface.is_some()),
        ("degree_cap", e.degree_cap.is_some()),
        ("samples", e.samples.is_some()),
        ("seed", e.seed.is_some()),
        ("projective", e.projective.is_some()),
    ];
    match present.iter().find(|(k, set)| *set && !keys.contains(k)) {
        Some((k, _)) => Err(Error::Plan(format!("key `{k}` does not apply to kind {}", e.kind))),
        None => Ok(()),
    }
}

fn required<T: Copy>(v: Option<T>, key: &str) -> Result<T> {
    v.ok_or_else(|| Error::Plan(format!("missing key `{key}`")))
}

fn poly(ring: Ring, text: &str, key: &str) -> Result<SparsePolynomial> {
    ring.parse(text).map_err(|e| Error::Plan(format!("in `{key}`: {e}")))
}

fn check_prime(session: Prime, given: Option<u32>) -> Result<()> {
    match given {
        Some(q) if q != session.get() => {
            Prime::new(q)?;
            Err(Error::Plan(format!("prime {q} differs from the session prime {}", session.get())))
        }
        _ => Ok(()),
    }
}

fn validate(prime: Prime, index: usize, e: RawExperiment) -> Result<Experiment> {
    check_prime(prime, e.prime)?;
    let mode = e.mode.unwrap_or(Mode::Assert);
    let degree_cap = e.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
    let p = prime.get();
    let (kind, params) = match e.kind.as_str() {
        "cartier" | "obstruction" => {
            allow(&e, &["n", "hypersurface", "degree_cap"])?;
            let n = required(e.n, "n")?;
            if n == 0 || n > 3 {
                return Err(Error::Plan(format!("n = {n} outside 1..=3")));
            }
            let ring = Ring::x(prime, n);
            let x = match &e.hypersurface {
                None => AffineVariety::affine_space(prime, n),
                Some(g) => AffineVariety::hypersurface(poly(ring, g, "hypersurface")?)?,
            };
            let params = json!({
                "prime": p, "n": n, "degree_cap": degree_cap,
                "hypersurface": x.equation().map(ToString::to_string),
            });
            let kind = if e.kind == "cartier" { ExperimentKind::Cartier(x) } else { ExperimentKind::Obstruction(x) };
            (kind, params)
        }
        "weyl_identities" => {
            allow(&e, &["n", "samples", "seed"])?;
            let n = required(e.n, "n")?;
            if n == 0 || n > 3 {
                return Err(Error::Plan(format!("n = {n} outside 1..=3")));
            }
            let samples = e.samples.unwrap_or(DEFAULT_SAMPLES);
            let seed = e.seed.unwrap_or(0);
            (ExperimentKind::WeylIdentities { n, samples, seed }, json!({"prime": p, "n": n, "samples": samples, "seed": seed}))
        }
        "bk" | "L_support" => {
            allow(&e, &["n", "f", "degree_cap"])?;
            let n = required(e.n, "n")?;
            if n == 0 || n > 3 {
                return Err(Error::Plan(format!("n = {n} outside 1..=3")));
            }
            let f = poly(Ring::x(prime, n), e.f.as_deref().ok_or_else(|| Error::Plan("missing key `f`".into()))?, "f")?;
            let params = json!({"prime": p, "n": n, "f": f.to_string(), "degree_cap": degree_cap});
            let sp = Superpotential::new(f);
            (if e.kind == "bk" { ExperimentKind::Bk(sp) } else { ExperimentKind::LSupport(sp) }, params)
        }
        "projective_degeneration" => {
            allow(&e, &["projective"])?;
            let pr = e.projective.as_ref().ok_or_else(|| Error::Plan("missing key `projective`".into()))?;
            check_prime(prime, pr.prime)?;
            let variety = match (&pr.g, pr.space) {
                (Some(g), None) => ProjectiveVariety::plane_curve(poly(Ring::x(prime, 3), g, "projective.G")?)?,
                (None, Some(n)) => ProjectiveVariety::projective_space(prime, n)?,
                _ => return Err(Error::Plan("`projective` needs exactly one of `G` and `space`".into())),
            };
            if mode == Mode::Assert && p as usize <= variety.dimension() {
                return Err(Error::Plan(format!(
                    "p = {p} does not exceed dim X = {}; use mode: exploratory",
                    variety.dimension()
                )));
            }
            let window = pr.window.unwrap_or(crate::projective::DEFAULT_WINDOW);
            if window == 0 {
                return Err(Error::Plan("window must be at least 1".into()));
            }
            let target = match &variety {
                ProjectiveVariety::Curve(c) => json!({"G": c.equation().to_string()}),
                ProjectiveVariety::Space { n, .. } => json!({"space": n}),
            };
            let params = json!({"prime": p, "projective": target, "truncation": pr.truncation, "window": window});
            (ExperimentKind::ProjectiveDegeneration { variety, truncation: pr.truncation, window }, params)
        }
        other => return Err(Error::Plan(format!("unknown kind `{other}`"))),
    };
    let id = e.id.unwrap_or_else(|| format!("{}-{}", kind.tag(), index + 1));
    Ok(Experiment { id, kind, mode, degree_cap, params })
}

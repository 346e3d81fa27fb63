//! Command-line driver: job configuration, input resolution and the run loop.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::catalog::{preset_system, CaseId};
use crate::error::{Error, Result};
use crate::grading::{Monomial, Weight};
use crate::normalizer::{
    compute_gnf_with, compute_gphnf, verify_conjugacy, ConjugacyReport, HamiltonianSystem, MinimalSets,
    PairChoice, PairPolicy, Transformation, UserSets, YSet,
};
use crate::parse::parse_document;
use crate::render;
use crate::resonance::{reduced_resonant_basis, resonant_basis, ResonantBasis, ResonantSetChoice, SetOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Resonance,
    Gphnf,
    Gnf,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    ZeroFirst,
    ZeroSecond,
}

impl From<PolicyArg> for PairPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::ZeroFirst => PairPolicy::ZeroFirst,
            PolicyArg::ZeroSecond => PairPolicy::ZeroSecond,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    HighFirst,
    LowFirst,
}

impl From<OrderArg> for SetOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::HighFirst => SetOrder::HighFirst,
            OrderArg::LowFirst => SetOrder::LowFirst,
        }
    }
}

/// What to compute and how to print it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub mode: Mode,
    pub policy: PairChoice,
    pub sets: UserSets,
    pub format: Format,
    pub verify: bool,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            mode: Mode::Gnf,
            policy: PairChoice::default(),
            sets: UserSets::default(),
            format: Format::Text,
            verify: false,
        }
    }
}

/// Bases and chosen sets in one generalized degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceDegree {
    pub gdeg: u32,
    pub resonant: ResonantBasis,
    pub resonant_set: ResonantSetChoice,
    /// Absent below `delta`.
    pub reduced: Option<(ResonantBasis, ResonantSetChoice)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Resonance(Vec<ResonanceDegree>),
    Normal {
        mode: Mode,
        system: HamiltonianSystem,
        transformation: Transformation,
        yset: Option<YSet>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub input: HamiltonianSystem,
    pub outcome: Outcome,
    pub verification: Option<ConjugacyReport>,
}

/// Runs the configured computation.
pub fn run(cfg: &JobConfig, sys: &HamiltonianSystem) -> Result<Report> {
    let h = sys.hamiltonian();
    let delta = sys.weight().delta();
    let outcome = match cfg.mode {
        Mode::Resonance => {
            if cfg.verify {
                return Err(Error::InvalidConfig(
                    "verification needs a transformation; use mode gphnf or gnf".into(),
                ));
            }
            let mut out = Vec::new();
            for k in 0..=sys.truncation() {
                let resonant = resonant_basis(h, k)?;
                let resonant_set = cfg.sets.choice_for(&resonant)?;
                let reduced = if k >= delta {
                    let b = reduced_resonant_basis(h, k)?;
                    let c = cfg.sets.choice_for(&b)?;
                    Some((b, c))
                } else {
                    None
                };
                out.push(ResonanceDegree {
                    gdeg: k,
                    resonant,
                    resonant_set,
                    reduced,
                });
            }
            Outcome::Resonance(out)
        }
        Mode::Gphnf => {
            let (system, transformation) = compute_gphnf(sys, &cfg.sets)?;
            Outcome::Normal {
                mode: Mode::Gphnf,
                system,
                transformation,
                yset: None,
            }
        }
        Mode::Gnf => {
            let r = compute_gnf_with(sys, &cfg.sets, &cfg.policy)?;
            Outcome::Normal {
                mode: Mode::Gnf,
                system: r.system,
                transformation: r.transformation,
                yset: Some(r.yset),
            }
        }
    };
    let verification = match (&outcome, cfg.verify) {
        (
            Outcome::Normal {
                system,
                transformation,
                ..
            },
            true,
        ) => Some(verify_conjugacy(sys, transformation, system)?),
        _ => None,
    };
    Ok(Report {
        input: sys.clone(),
        outcome,
        verification,
    })
}

/// Renders a report in the configured format.
pub fn render_report(cfg: &JobConfig, report: &Report) -> String {
    match cfg.format {
        Format::Text => render::text(report),
        Format::Records => render::records(report),
    }
}

/// Command-line arguments.
#[derive(Debug, Parser)]
#[command(name = "hamnf", version, about = "Exact normal forms of planar vector fields with a quasi-homogeneous Hamiltonian part")]
pub struct Args {
    /// Weight of the grading (two coprime positive integers).
    #[arg(long, num_args = 2, value_names = ["G1", "G2"])]
    pub weight: Option<Vec<u32>>,
    /// Expected chi; checked against the hamiltonian.
    #[arg(long)]
    pub chi: Option<u32>,
    /// Highest generalized degree kept in the field.
    #[arg(long = "truncate", value_name = "N")]
    pub truncation: Option<u32>,
    #[arg(long, value_enum, default_value = "gnf")]
    pub mode: Mode,
    /// Which member of an either/or pair is eliminated.
    #[arg(long, value_enum, default_value = "zero-first")]
    pub policy: PolicyArg,
    /// Per-exponent policy override, `P1,P2=zero-first|zero-second`; repeatable.
    #[arg(long = "pair", value_name = "P1,P2=POLICY")]
    pub pairs: Vec<String>,
    /// Scan order used when choosing minimal monomial sets.
    #[arg(long, value_enum, default_value = "high-first")]
    pub set_order: OrderArg,
    /// Resonant set for one degree, `K=P1.P2,P1.P2,...`; repeatable.
    #[arg(long = "resonant-set", value_name = "K=MONOMIALS")]
    pub resonant_sets: Vec<String>,
    /// Reduced resonant set for one degree, same syntax; repeatable.
    #[arg(long = "reduced-set", value_name = "K=MONOMIALS")]
    pub reduced_sets: Vec<String>,
    /// Built-in system: takens:M, lm:L,M, diag:M or binom:L,M[,SIGN].
    #[arg(long, conflicts_with = "input")]
    pub preset: Option<String>,
    /// Seed for the preset perturbation.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Append the conjugacy check.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// System document to read.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write the output here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

/// Truncation used for presets when `--truncate` is absent.
pub const DEFAULT_PRESET_TRUNCATION: u32 = 8;

fn parse_pair_override(s: &str) -> Result<(Monomial, PairPolicy)> {
    let bad = || Error::InvalidConfig(format!("bad pair override '{s}', expected P1,P2=zero-first|zero-second"));
    let (mon, pol) = s.split_once('=').ok_or_else(bad)?;
    let (a, b) = mon.split_once(',').ok_or_else(bad)?;
    let p = Monomial::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    let policy = match pol.trim() {
        "zero-first" => PairPolicy::ZeroFirst,
        "zero-second" => PairPolicy::ZeroSecond,
        _ => return Err(bad()),
    };
    Ok((p, policy))
}

fn parse_set_arg(s: &str) -> Result<(u32, Vec<Monomial>)> {
    let bad = || Error::InvalidConfig(format!("bad set '{s}', expected K=P1.P2,P1.P2,..."));
    let (k, list) = s.split_once('=').ok_or_else(bad)?;
    let k = k.trim().parse().map_err(|_| bad())?;
    let mut mons = Vec::new();
    for item in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = item.split_once('.').ok_or_else(bad)?;
        mons.push(Monomial::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
    }
    Ok((k, mons))
}

fn parse_sets(args: &[String]) -> Result<BTreeMap<u32, Vec<Monomial>>> {
    args.iter().map(|s| parse_set_arg(s)).collect()
}

impl Args {
    pub fn job_config(&self) -> Result<JobConfig> {
        let mut policy = PairChoice::from(PairPolicy::from(self.policy));
        for s in &self.pairs {
            let (p, pol) = parse_pair_override(s)?;
            policy.overrides.insert(p, pol);
        }
        Ok(JobConfig {
            mode: self.mode,
            policy,
            sets: UserSets {
                resonant: parse_sets(&self.resonant_sets)?,
                reduced: parse_sets(&self.reduced_sets)?,
                fallback: MinimalSets::new(self.set_order.into()),
            },
            format: self.format,
            verify: self.verify,
        })
    }

    fn weight_pair(&self) -> Option<(u32, u32)> {
        self.weight.as_ref().map(|w| (w[0], w[1]))
    }

    /// Builds the input system from a preset or a document, reconciling it
    /// with the header flags.
    pub fn system(&self) -> Result<HamiltonianSystem> {
        if let Some(p) = &self.preset {
            let case: CaseId = p.parse()?;
            let sys = preset_system(case, self.truncation.unwrap_or(DEFAULT_PRESET_TRUNCATION), self.seed)?;
            if let Some((g1, g2)) = self.weight_pair() {
                if Weight::new(g1, g2)? != sys.weight() {
                    return Err(Error::InvalidConfig(format!(
                        "--weight {g1} {g2} disagrees with preset weight {}",
                        sys.weight()
                    )));
                }
            }
            if let Some(chi) = self.chi {
                if chi != sys.chi() {
                    return Err(Error::HamiltonianNotQuasiHomogeneous(format!(
                        "preset has chi = {}, --chi gives {chi}",
                        sys.chi()
                    )));
                }
            }
            return Ok(sys);
        }
        let path = self
            .input
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("give either --preset or --input".into()))?;
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut doc = parse_document(&text)?;
        merge(&mut doc.weight, self.weight_pair(), "weight")?;
        merge(&mut doc.chi, self.chi, "chi")?;
        merge(&mut doc.truncation, self.truncation, "truncation")?;
        doc.into_system()
    }
}

fn merge<T: PartialEq + Copy + std::fmt::Debug>(doc: &mut Option<T>, flag: Option<T>, what: &str) -> Result<()> {
    match (*doc, flag) {
        (Some(a), Some(b)) if a != b => Err(Error::InvalidConfig(format!(
            "{what} from the document ({a:?}) disagrees with the command line ({b:?})"
        ))),
        (None, Some(b)) => {
            *doc = Some(b);
            Ok(())
        }
        _ => Ok(()),
    }
}

/// Full command: returns the process exit code.
pub fn execute(args: &Args) -> i32 {
    match try_execute(args) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn try_execute(args: &Args) -> Result<()> {
    let cfg = args.job_config()?;
    let sys = args.system()?;
    let out = render_report(&cfg, &run(&cfg, &sys)?);
    match &args.output {
        Some(p) => fs::write(p, out).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

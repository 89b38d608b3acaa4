use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use ltsrb::cochain::Cochain;
use ltsrb::cohomology::{coboundary_t, cochain_map_p, cohomology_group};
use ltsrb::deform::{self, InfinitesimalDeformation};
use ltsrb::io;
use ltsrb::random::{survey, DEFAULT_SEED};
use ltsrb::rbo::{diagonal_sign_automorphisms, RboHomomorphism};
use ltsrb::{fixtures, Error, LinearMap, RelativeRbo, Report, Scalar, SubspaceBasis};

/// Exact computations with Lie triple systems and relative Rota-Baxter
/// operators. Every command prints JSON on standard output.
///
/// Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
#[derive(Parser)]
#[command(name = "ltsrb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lie triple systems
    #[command(subcommand)]
    Lts(LtsCmd),
    /// Representations and actions
    #[command(subcommand)]
    Rep(RepCmd),
    /// Semidirect products
    #[command(subcommand)]
    Sd(SdCmd),
    /// Relative Rota-Baxter operators
    #[command(subcommand)]
    Rbo(RboCmd),
    /// Cochains and cohomology of an operator
    #[command(subcommand)]
    Coh(CohCmd),
    /// Infinitesimal deformations of an operator
    #[command(subcommand)]
    Def(DefCmd),
    /// The bundled examples
    #[command(subcommand)]
    Fixtures(FixturesCmd),
    /// Random-map survey: operator identity, graph and Nijenhuis lift agree
    Props {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum LtsCmd {
    /// Check the axioms
    Verify { file: PathBuf },
    /// Basis of the center
    Center { file: PathBuf },
    /// Basis of the span of all brackets
    Derived { file: PathBuf },
    /// Whether the span of the vectors in `--basis` is closed under the bracket
    Subsystem {
        file: PathBuf,
        /// JSON array of coordinate vectors
        #[arg(long)]
        basis: PathBuf,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Check the representation identities
    Verify { file: PathBuf },
    /// Check an action file: both systems, the representation and the action conditions
    Action { file: PathBuf },
    /// The adjoint action of an algebra file on itself
    Adjoint { file: PathBuf },
}

#[derive(Subcommand)]
enum SdCmd {
    /// Semidirect product of an action, as an algebra file
    Build {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar, default_value = "1")]
        weight: Scalar,
    },
}

#[derive(Args)]
struct RboArgs {
    file: PathBuf,
    /// Replaces the weight stored in the file
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    weight: Option<Scalar>,
}

impl RboArgs {
    fn load(&self) -> Result<RelativeRbo, Error> {
        let r = io::load_rbo(&self.file)?;
        Ok(match &self.weight {
            Some(w) => r.with_weight(w.clone()),
            None => r,
        })
    }
}

#[derive(Args)]
struct HomArgs {
    /// Target operator; defaults to the source
    #[arg(long)]
    to: Option<PathBuf>,
    /// Matrix file for the map on 𝔏
    #[arg(long)]
    psi_l: Option<PathBuf>,
    /// Matrix file for the map on 𝔏′
    #[arg(long)]
    psi_lprime: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RboCmd {
    /// Check the operator identity
    Check {
        #[command(flatten)]
        rbo: RboArgs,
        /// Check the constant and weight parts separately
        #[arg(long)]
        all_weights: bool,
    },
    /// Basis of the graph and whether it is a subsystem of the semidirect product
    Graph {
        #[command(flatten)]
        rbo: RboArgs,
    },
    /// The descendent system, as an algebra file
    Descendent {
        #[command(flatten)]
        rbo: RboArgs,
    },
    /// The lift to the semidirect product and its Nijenhuis check
    Nijenhuis {
        #[command(flatten)]
        rbo: RboArgs,
    },
    /// Check a homomorphism of operators, or list the diagonal ±1 automorphisms
    Hom {
        #[command(flatten)]
        rbo: RboArgs,
        #[command(flatten)]
        hom: HomArgs,
    },
}

#[derive(Args)]
struct DegreeArgs {
    /// Allow degrees above 3
    #[arg(long)]
    max_degree_override: bool,
}

impl DegreeArgs {
    fn allow(&self, degree: i32) -> Result<(), Error> {
        if degree > 3 && !self.max_degree_override {
            return Err(Error::UnsupportedDegree(degree));
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum CohCmd {
    /// Dimensions of cocycles, coboundaries and cohomology
    Group {
        #[command(flatten)]
        rbo: RboArgs,
        #[arg(long, default_value_t = 1)]
        degree: i32,
        #[command(flatten)]
        cap: DegreeArgs,
    },
    /// Whether a cochain is a cocycle, and its class
    Cocycle {
        #[command(flatten)]
        rbo: RboArgs,
        #[arg(long)]
        cochain: PathBuf,
        #[command(flatten)]
        cap: DegreeArgs,
    },
    /// The coboundary of a cochain
    Coboundary {
        #[command(flatten)]
        rbo: RboArgs,
        #[arg(long)]
        cochain: PathBuf,
        #[command(flatten)]
        cap: DegreeArgs,
    },
    /// Image of a cochain under the map induced by a homomorphism
    Map {
        #[command(flatten)]
        rbo: RboArgs,
        #[command(flatten)]
        hom: HomArgs,
        #[arg(long)]
        cochain: PathBuf,
    },
}

#[derive(Args)]
struct DirectionArgs {
    #[command(flatten)]
    rbo: RboArgs,
    /// Matrix file, or a degree-1 cochain file
    #[arg(long)]
    direction: PathBuf,
}

impl DirectionArgs {
    fn load(&self) -> Result<InfinitesimalDeformation, Error> {
        let base = self.rbo.load()?;
        let g = load_direction(&self.direction, &base)?;
        InfinitesimalDeformation::new(base, g)
    }
}

#[derive(Subcommand)]
enum DefCmd {
    /// Check the order t, t² and t³ equations
    Check {
        #[command(flatten)]
        def: DirectionArgs,
    },
    /// Full deformation report
    Class {
        #[command(flatten)]
        def: DirectionArgs,
        #[arg(long)]
        strict: bool,
    },
    /// Check or find an equivalence with a second deformation
    Equiv {
        #[command(flatten)]
        def: DirectionArgs,
        /// Direction of the second deformation
        #[arg(long)]
        other: PathBuf,
        /// Degree -1 cochain file; without it a witness is searched for
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
    },
    /// Find an equivalence with the zero deformation
    Trivial {
        #[command(flatten)]
        def: DirectionArgs,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Names and descriptions
    List,
    /// Print one fixture file
    Show { name: String },
    /// Write all fixture files into a directory
    Write { dir: PathBuf },
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.parse::<Scalar>().map_err(|e| e.to_string())
}

/// What a command produced: a JSON value and whether the thing it checked holds.
struct Outcome {
    value: Value,
    ok: bool,
}

fn out<T: Serialize>(v: &T, ok: bool) -> Result<Outcome, Error> {
    Ok(Outcome {
        value: serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))?,
        ok,
    })
}

fn report(r: &Report) -> Result<Outcome, Error> {
    out(r, r.is_empty())
}

fn subspace(s: &SubspaceBasis) -> Value {
    json!({ "dim": s.dim(), "basis": s.vectors() })
}

fn matrix_value(m: &LinearMap) -> Value {
    json!(m.matrix().to_rows())
}

fn load_direction(path: &Path, base: &RelativeRbo) -> Result<LinearMap, Error> {
    let v = io::read_json(path)?;
    if v.is_array() {
        return io::load_linear_map(path, base.dim(), base.source_dim());
    }
    let f = io::cochain_from_value(&v)?;
    if f.degree() != 1 {
        return Err(Error::UnsupportedDegree(f.degree()));
    }
    f.to_linear_map()
}

fn load_cochain_for(path: &Path, rbo: &RelativeRbo) -> Result<Cochain, Error> {
    let f = io::load_cochain(path)?;
    let (s, t) = (rbo.source_dim(), rbo.dim());
    if f.degree() == -1 {
        if f.target_dim() != t {
            return Err(Error::DimensionMismatch(format!(
                "wedge cochain over dimension {} but the operator has {t}",
                f.target_dim()
            )));
        }
        return Cochain::wedge(s, t, f.into_coeffs());
    }
    if (f.source_dim(), f.target_dim()) != (s, t) {
        return Err(Error::DimensionMismatch(format!(
            "cochain maps {}-dimensional arguments to dimension {}, expected {s} and {t}",
            f.source_dim(),
            f.target_dim()
        )));
    }
    Ok(f)
}

fn load_hom(from: &RelativeRbo, h: &HomArgs) -> Result<RboHomomorphism, Error> {
    let to = match &h.to {
        Some(p) => io::load_rbo(p)?.with_weight(from.weight().clone()),
        None => from.clone(),
    };
    let psi_l = match &h.psi_l {
        Some(p) => io::load_linear_map(p, from.dim(), from.dim())?,
        None => LinearMap::identity(from.dim()),
    };
    let psi_lprime = match &h.psi_lprime {
        Some(p) => io::load_linear_map(p, from.source_dim(), from.source_dim())?,
        None => LinearMap::identity(from.source_dim()),
    };
    RboHomomorphism::new(from.clone(), to, psi_l, psi_lprime)
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Lts(c) => match c {
            LtsCmd::Verify { file } => report(&io::load_algebra(&file)?.verify()),
            LtsCmd::Center { file } => out(&subspace(&io::load_algebra(&file)?.center()), true),
            LtsCmd::Derived { file } => {
                out(&subspace(&io::load_algebra(&file)?.derived_algebra()), true)
            }
            LtsCmd::Subsystem { file, basis } => {
                let l = io::load_algebra(&file)?;
                let vs: Vec<Vec<Scalar>> = serde_json::from_value(io::read_json(&basis)?)
                    .map_err(|e| Error::Parse(e.to_string()))?;
                let s = SubspaceBasis::span(l.dim(), vs)?;
                let sub = l.is_subsystem(&s)?;
                let abelian = l.is_abelian_subsystem(&s)?;
                out(&json!({ "subsystem": sub, "abelian": abelian }), sub)
            }
        },
        Command::Rep(c) => match c {
            RepCmd::Verify { file } => report(&io::load_representation(&file)?.verify()),
            RepCmd::Action { file } => report(&io::load_action(&file)?.verify_all()),
            RepCmd::Adjoint { file } => {
                let a = ltsrb::Action::adjoint(&io::load_algebra(&file)?);
                out(&io::action_to_value(&a)?, true)
            }
        },
        Command::Sd(SdCmd::Build { file, weight }) => {
            let sd = io::load_action(&file)?.semidirect_product(&weight)?;
            out(&io::algebra_to_value(&sd)?, true)
        }
        Command::Rbo(c) => match c {
            RboCmd::Check { rbo, all_weights } => {
                let r = rbo.load()?;
                report(&if all_weights {
                    r.check_all_weights()
                } else {
                    r.check()
                })
            }
            RboCmd::Graph { rbo } => {
                let r = rbo.load()?;
                let sub = r.graph_is_subsystem();
                let mut v = subspace(&r.graph());
                v["subsystem"] = json!(sub);
                out(&v, sub)
            }
            RboCmd::Descendent { rbo } => {
                out(&io::algebra_to_value(&rbo.load()?.descendent_lts()?)?, true)
            }
            RboCmd::Nijenhuis { rbo } => {
                let r = rbo.load()?;
                let lift = r.nijenhuis_lift();
                let rep = ltsrb::rbo::nijenhuis_check(
                    &r.action().semidirect_product(r.weight())?,
                    &lift,
                )?;
                out(
                    &json!({ "lift": matrix_value(&lift), "violations": rep.violations }),
                    rep.is_empty(),
                )
            }
            RboCmd::Hom { rbo, hom } => {
                let r = rbo.load()?;
                if hom.to.is_none() && hom.psi_l.is_none() && hom.psi_lprime.is_none() {
                    let found: Vec<Value> = diagonal_sign_automorphisms(&r)
                        .iter()
                        .map(|h| json!({ "psi_l": matrix_value(&h.psi_l), "psi_lprime": matrix_value(&h.psi_lprime) }))
                        .collect();
                    return out(&json!({ "automorphisms": found }), true);
                }
                report(&load_hom(&r, &hom)?.check())
            }
        },
        Command::Coh(c) => match c {
            CohCmd::Group { rbo, degree, cap } => {
                cap.allow(degree)?;
                let outcome = cohomology_group(&rbo.load()?, degree)?;
                if let Some(f) = &outcome.finding {
                    eprintln!("finding: {f}");
                }
                out(&outcome.cohomology.result(), true)
            }
            CohCmd::Cocycle { rbo, cochain, cap } => {
                let r = rbo.load()?;
                let f = load_cochain_for(&cochain, &r)?;
                cap.allow(f.degree())?;
                let outcome = cohomology_group(&r, f.degree())?;
                let class = match outcome.cohomology.class_of(&f) {
                    Ok(c) => Some(c),
                    Err(Error::NotVerified(_)) => None,
                    Err(e) => return Err(e),
                };
                out(
                    &json!({ "degree": f.degree(), "cocycle": class.is_some(), "class": class }),
                    class.is_some(),
                )
            }
            CohCmd::Coboundary { rbo, cochain, cap } => {
                let r = rbo.load()?;
                let f = load_cochain_for(&cochain, &r)?;
                cap.allow(f.degree() + 2)?;
                let sign = if f.degree() >= 1 {
                    cohomology_group(&r, f.degree().min(3))?.cohomology.sign
                } else {
                    Default::default()
                };
                out(&io::cochain_to_value(&coboundary_t(&r, &f, sign)?), true)
            }
            CohCmd::Map { rbo, hom, cochain } => {
                let r = rbo.load()?;
                let f = load_cochain_for(&cochain, &r)?;
                out(
                    &io::cochain_to_value(&cochain_map_p(&load_hom(&r, &hom)?, &f)?),
                    true,
                )
            }
        },
        Command::Def(c) => match c {
            DefCmd::Check { def } => report(&def.load()?.check()),
            DefCmd::Class { def, strict } => out(&deform::summarize(&def.load()?, strict)?, true),
            DefCmd::Equiv {
                def,
                other,
                witness,
                strict,
            } => {
                let d1 = def.load()?;
                let d2 = InfinitesimalDeformation::new(
                    d1.base().clone(),
                    load_direction(&other, d1.base())?,
                )?;
                match witness {
                    Some(w) => {
                        let w = load_cochain_for(&w, d1.base())?;
                        if w.degree() != -1 {
                            return Err(Error::UnsupportedDegree(w.degree()));
                        }
                        report(&deform::check_equivalence(&d1, &d2, &w, strict)?)
                    }
                    None => {
                        let w = deform::find_equivalence_witness(&d1, &d2, strict)?;
                        let ok = w.is_some();
                        out(&json!({ "witness": w.map(Cochain::into_coeffs) }), ok)
                    }
                }
            }
            DefCmd::Trivial { def, strict } => {
                let w = deform::is_trivial_deformation(&def.load()?, strict)?;
                let ok = w.is_some();
                out(&json!({ "witness": w.map(Cochain::into_coeffs) }), ok)
            }
        },
        Command::Fixtures(c) => match c {
            FixturesCmd::List => {
                let list: Vec<Value> = fixtures::list()
                    .iter()
                    .map(|f| json!({ "name": f.name, "kind": f.kind, "note": f.note }))
                    .collect();
                out(&list, true)
            }
            FixturesCmd::Show { name } => {
                let v = fixtures::value(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown fixture \"{name}\"")))?;
                out(&v, true)
            }
            FixturesCmd::Write { dir } => {
                let mut written = Vec::new();
                for f in fixtures::list() {
                    let path = dir.join(format!("{}.json", f.name));
                    let text = io::to_pretty(&fixtures::value(f.name).expect("listed"));
                    std::fs::write(&path, text)
                        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    written.push(path.display().to_string());
                }
                out(&json!({ "written": written }), true)
            }
        },
        Command::Props { seed, samples } => {
            let mut results = serde_json::Map::new();
            let mut ok = true;
            for (name, base) in [
                ("rbo3_P", fixtures::rbo3_p(Scalar::zero())),
                ("rbo4_P", fixtures::rbo4_p(Scalar::zero())),
            ] {
                let mut by_weight = serde_json::Map::new();
                for w in [Scalar::zero(), Scalar::one()] {
                    let s = survey(&base.with_weight(w.clone()), seed, samples)?;
                    ok &= s.disagreements == 0 && s.descendent_failures == 0;
                    by_weight.insert(
                        w.to_string(),
                        serde_json::to_value(&s).expect("serializable"),
                    );
                }
                results.insert(name.to_string(), Value::Object(by_weight));
            }
            out(&json!({ "seed": seed, "results": results }), ok)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotVerified(_) | Error::Hypothesis(_) | Error::NotContained | Error::Singular => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(o) => {
            print!("{}", io::to_pretty(&o.value));
            ExitCode::from(if o.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

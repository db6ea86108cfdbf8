//! `coxquot`: every stage of the torus-quotient pipeline from the shell.
//!
//! Exit status is 0 on success, 1 when the computation itself fails, and 2
//! for usage errors and unreadable input.

mod io;

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxquot::exactla::IntMat;
use coxquot::fan::{sufficiency_check, Fan, SufficiencyOptions};
use coxquot::gb::{saturate_with, trop_member, Convention, Ideal, SaturationMethod, TermOrder};
use coxquot::git::{self, Grading};
use coxquot::m0n::{self, M0nData};
use coxquot::num::BigInt;
use coxquot::poly::{Poly, Ring};
use coxquot::quotient::{
    closure_ideal, default_names, quotient_equations, torus_quotient_ideal, ActionConvention, TorusAction,
};

pub struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Failure {
        Failure { code: 2, msg: msg.into() }
    }

    pub fn domain(msg: impl Into<String>) -> Failure {
        Failure { code: 1, msg: msg.into() }
    }
}

trait OrDomain<T> {
    fn domain(self) -> Result<T, Failure>;
}

impl<T, E: Display> OrDomain<T> for Result<T, E> {
    fn domain(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::domain(e.to_string()))
    }
}

#[derive(Parser)]
#[command(name = "coxquot", version, about = "Exact equations for torus quotients in Cox rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for per-point checks.
    #[arg(long, global = true, env = "M0N_THREADS", default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Gröbner basis.
    Gb {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Saturation by a monomial, by default the product of all variables.
    Saturate {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        by: Option<String>,
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Ideal membership of one polynomial.
    Member {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Whether a weight vector lies in the tropical variety.
    Trop {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value = "min")]
        convention: String,
    },
    /// Equations of the quotient torus from a torus-invariant ideal.
    Quotient(QuotientArgs),
    /// Closure of a subvariety of the torus in the toric variety of a ray matrix.
    Closure {
        #[arg(long)]
        ideal: PathBuf,
        /// Ray matrix `R`.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        names: Option<String>,
    },
    /// Homogenize and saturate in the Cox ring.
    Equations {
        #[arg(long)]
        ideal: Option<PathBuf>,
        /// JSON bundle with `A`, `D`, `R` and optionally `V`.
        #[arg(long)]
        setup: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        names: Option<String>,
    },
    #[command(subcommand)]
    Fan(FanCmd),
    #[command(subcommand)]
    Git(GitCmd),
    #[command(subcommand)]
    M0n(M0nCmd),
}

#[derive(Args)]
struct QuotientArgs {
    #[arg(long)]
    ideal: Option<PathBuf>,
    /// Action matrix `A`.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Gale dual `D`; computed when omitted.
    #[arg(long)]
    gale: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    names: Option<String>,
    /// Require the first row of `A` to be all ones.
    #[arg(long)]
    projective: bool,
    /// Also print the monomial images of the quotient coordinates.
    #[arg(long)]
    show_map: bool,
}

#[derive(Args)]
struct FanSource {
    #[arg(long)]
    fan: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum FanCmd {
    Validate(FanSource),
    Smooth(FanSource),
    /// Sample-based comparison of the fan's support with a tropical variety.
    Sufficiency {
        #[command(flatten)]
        src: FanSource,
        #[arg(long)]
        ideal: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, env = "M0N_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "min")]
        convention: String,
    },
}

#[derive(Subcommand)]
enum GitCmd {
    /// Membership of a degree in the cone of the fan's GIT chamber.
    Nef {
        #[command(flatten)]
        src: FanSource,
        /// Grading matrix `G`.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        strict: bool,
    },
    /// Monomials of one degree.
    Monomials {
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        ell: u32,
    },
    /// Projective embedding given by one degree.
    Present {
        #[arg(long)]
        ideal: Option<PathBuf>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        /// Largest degree of binomial relations.
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Degree padding for a variation of GIT.
    Vgit {
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        c: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealKind {
    /// Plücker relations.
    Plucker,
    /// Quotient of the Plücker ideal by the torus.
    Torus,
    /// Linear equations in the quotient torus.
    Linear,
}

#[derive(Subcommand)]
enum M0nCmd {
    /// All matrices and the fan.
    Build {
        #[arg(long)]
        n: usize,
    },
    Ideal {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "plucker")]
        kind: IdealKind,
    },
    /// Equations in the Cox ring.
    Equations {
        #[arg(long)]
        n: usize,
    },
    /// Structural checks on the construction.
    Check {
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let json = cli.json;
    match &cli.cmd {
        Cmd::Gb { ideal, order } => {
            let i = io::ideal(ideal)?;
            let order: TermOrder = order.parse().map_err(|e| Failure::usage(format!("{e}")))?;
            let gb = i.groebner(&order).domain()?;
            let out = Ideal::new(i.ring(), gb.elements().to_vec()).domain()?;
            Ok(show_ideal(&out, json))
        }
        Cmd::Saturate { ideal, by, method } => {
            let i = io::ideal(ideal)?;
            let method: SaturationMethod = method.parse().map_err(|e| Failure::usage(format!("{e}")))?;
            let ring = i.ring().polynomial();
            let m = match by {
                Some(s) => Poly::parse(&ring, s).map_err(|e| Failure::usage(e.to_string()))?,
                None => all_vars(&ring),
            };
            let i = Ideal::new(&ring, i.gens().to_vec()).domain()?;
            let sat = saturate_with(&i, &m, method).domain()?;
            let gb = sat.grevlex_basis().domain()?.elements().to_vec();
            Ok(show_ideal(&Ideal::new(&ring, gb).domain()?, json))
        }
        Cmd::Member { ideal, poly } => {
            let i = io::ideal(ideal)?;
            let f = Poly::parse(i.ring(), poly).map_err(|e| Failure::usage(e.to_string()))?;
            Ok(show_bool("member", i.contains(&f).domain()?, json))
        }
        Cmd::Trop { ideal, weight, convention } => {
            let i = io::ideal(ideal)?;
            let w = io::rat_vec(weight)?;
            let conv = parse_convention(convention)?;
            Ok(show_bool("in_trop", trop_member(&i, &w, conv).domain()?, json))
        }
        Cmd::Quotient(args) => quotient(args, json),
        Cmd::Closure { ideal, matrix, names } => {
            let j = io::ideal(ideal)?;
            let r = io::matrix(matrix)?;
            let names = io::names(names, "y", r.cols())?;
            Ok(show_ideal(&closure_ideal(&j, &r, &names).domain()?, json))
        }
        Cmd::Equations { ideal, setup, preset, names } => {
            let data = preset.as_deref().map(io::preset).transpose()?;
            let (setup, default_y) = match (setup, &data) {
                (Some(p), _) => {
                    let s = io::setup(p)?;
                    let n = s.v.cols();
                    (s, default_names("y", n))
                }
                (None, Some(d)) => (d.setup().domain()?, d.cox_names()),
                (None, None) => return Err(Failure::usage("equations needs --setup or --preset")),
            };
            let i = match (ideal, &data) {
                (Some(p), _) => io::ideal(p)?,
                (None, Some(d)) => m0n::plucker_ideal(d.n).domain()?,
                (None, None) => return Err(Failure::usage("equations needs --ideal")),
            };
            let y = match names {
                Some(_) => io::names(names, "y", setup.v.cols())?,
                None => default_y,
            };
            Ok(show_ideal(&quotient_equations(&i, &setup, &y).domain()?, json))
        }
        Cmd::Fan(cmd) => fan_cmd(cmd, json, cli.threads),
        Cmd::Git(cmd) => git_cmd(cmd, json),
        Cmd::M0n(cmd) => m0n_cmd(cmd, json),
    }
}

fn parse_convention(s: &str) -> Result<Convention, Failure> {
    s.parse().map_err(|e| Failure::usage(format!("{e}")))
}

fn all_vars(ring: &Ring) -> Poly {
    Poly::monomial(ring, coxquot::num::BigRational::from_integer(1.into()), vec![1; ring.arity()])
        .expect("nonnegative exponents")
}

fn show_ideal(i: &Ideal, json: bool) -> String {
    if json {
        return pretty(&i.to_json());
    }
    i.gens().iter().map(|g| format!("{g}\n")).collect()
}

fn show_bool(key: &str, b: bool, json: bool) -> String {
    if json {
        return pretty(&json!({ key: b }));
    }
    b.to_string()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn quotient(args: &QuotientArgs, json: bool) -> Result<String, Failure> {
    let data = args.preset.as_deref().map(io::preset).transpose()?;
    let conv = if args.projective { ActionConvention::Projective } else { ActionConvention::AffineTorus };
    let a = match (&args.matrix, &data) {
        (Some(p), _) => io::matrix(p)?,
        (None, Some(d)) => d.an.clone(),
        (None, None) => return Err(Failure::usage("quotient needs --matrix or --preset")),
    };
    let action = TorusAction::new(a, conv).domain()?;
    let d = match (&args.gale, &data) {
        (Some(p), _) => io::matrix(p)?,
        (None, Some(d)) if args.matrix.is_none() => d.d.clone(),
        _ => coxquot::exactla::gale_dual(action.matrix()).domain()?,
    };
    let i = match (&args.ideal, &data) {
        (Some(p), _) => io::ideal(p)?,
        (None, Some(d)) => m0n::plucker_ideal(d.n).domain()?,
        (None, None) => return Err(Failure::usage("quotient needs --ideal")),
    };
    let z = match (&args.names, &data) {
        (None, Some(dd)) if args.matrix.is_none() => dd.z_names(),
        _ => io::names(&args.names, "z", d.rows())?,
    };
    let q = simplified(&torus_quotient_ideal(&i, &action, &d, &z).domain()?)?;
    let images = phi_images(i.ring(), &d, &z)?;
    if json {
        let mut v = q.to_json();
        if args.show_map {
            v["phi"] = json!(images.iter().map(|(z, p)| json!({ "z": z, "image": p })).collect::<Vec<_>>());
        }
        return Ok(pretty(&v));
    }
    let mut out = show_ideal(&q, false);
    if args.show_map {
        for (z, p) in images {
            out.push_str(&format!("phi({z}) = {p}\n"));
        }
    }
    Ok(out)
}

/// Same Laurent ideal, generated by the reduced basis of its polynomial part.
fn simplified(q: &Ideal) -> Result<Ideal, Failure> {
    let part = q.polynomial_part().domain()?;
    let gens = part
        .grevlex_basis()
        .domain()?
        .elements()
        .iter()
        .map(|g| g.in_ring(q.ring()))
        .collect::<Result<Vec<_>, _>>()
        .domain()?;
    Ideal::new(q.ring(), gens).domain()
}

/// `φ(z_i) = x^{D_i}` as Laurent monomials.
fn phi_images(ring: &Ring, d: &IntMat, z: &[String]) -> Result<Vec<(String, String)>, Failure> {
    let laurent = ring.laurent();
    (0..d.rows())
        .map(|i| {
            let e: Vec<i32> = d.row_i64(i).iter().map(|&x| x as i32).collect();
            let p = Poly::monomial(&laurent, coxquot::num::BigRational::from_integer(1.into()), e).domain()?;
            Ok((z[i].clone(), p.to_string()))
        })
        .collect()
}

fn load_fan(src: &FanSource) -> Result<(Fan, Option<M0nData>), Failure> {
    let data = src.preset.as_deref().map(io::preset).transpose()?;
    match (&src.fan, &data) {
        (Some(p), _) => Ok((io::fan(p)?, data)),
        (None, Some(d)) => Ok((d.delta.clone(), data)),
        (None, None) => Err(Failure::usage("needs --fan or --preset")),
    }
}

fn fan_cmd(cmd: &FanCmd, json: bool, threads: usize) -> Result<String, Failure> {
    match cmd {
        FanCmd::Validate(src) => {
            let (f, _) = load_fan(src)?;
            let rep = f.validate();
            Ok(if json { pretty(&serde_json::to_value(&rep).expect("serializable")) } else { rep.to_string() })
        }
        FanCmd::Smooth(src) => {
            let (f, _) = load_fan(src)?;
            Ok(show_bool("smooth", f.is_smooth().domain()?, json))
        }
        FanCmd::Sufficiency { src, ideal, samples, seed, convention } => {
            let (f, data) = load_fan(src)?;
            let i = match (ideal, &data) {
                (Some(p), _) => io::ideal(p)?,
                (None, Some(d)) => {
                    let p = m0n::plucker_ideal(d.n).domain()?;
                    torus_quotient_ideal(&p, &d.action(), &d.d, &d.z_names()).domain()?
                }
                (None, None) => return Err(Failure::usage("sufficiency needs --ideal")),
            };
            let opts = SufficiencyOptions {
                samples: *samples,
                seed: *seed,
                convention: parse_convention(convention)?,
                threads,
            };
            let rep = sufficiency_check(&f, &i, &opts).domain()?;
            Ok(if json { pretty(&serde_json::to_value(&rep).expect("serializable")) } else { rep.to_string() })
        }
    }
}

/// Grading from `--matrix` (variables `x1..`) or from a preset's Cox ring.
fn load_grading(matrix: &Option<PathBuf>, data: &Option<M0nData>) -> Result<Grading, Failure> {
    match (matrix, data) {
        (Some(p), _) => {
            let g = io::matrix(p)?;
            let ring = io::ring(default_names("x", g.cols()))?;
            Grading::new(g, &ring).map_err(|e| Failure::usage(e.to_string()))
        }
        (None, Some(d)) => Grading::new(d.g.clone(), &d.cox_ring()).domain(),
        (None, None) => Err(Failure::usage("needs --matrix or --preset")),
    }
}

fn git_cmd(cmd: &GitCmd, json: bool) -> Result<String, Failure> {
    match cmd {
        GitCmd::Nef { src, matrix, alpha, strict } => {
            let (f, data) = load_fan(src)?;
            let g = load_grading(matrix, &data)?;
            let a = io::rat_vec(alpha)?;
            Ok(show_bool("in_cone", git::in_g_cone(&f, &g, &a, *strict).domain()?, json))
        }
        GitCmd::Monomials { matrix, preset, alpha, ell } => {
            let data = preset.as_deref().map(io::preset).transpose()?;
            let g = load_grading(matrix, &data)?;
            let a = git::scale(&io::int_vec(alpha)?, *ell);
            let ms = git::graded_monomials(&g, &a).domain()?;
            let names: Vec<String> = ms.iter().map(|u| monomial(g.ring(), u)).collect();
            if json {
                return Ok(pretty(&json!({ "alpha": strings(&a), "monomials": names })));
            }
            Ok(names.iter().map(|s| format!("{s}\n")).collect())
        }
        GitCmd::Present { ideal, matrix, preset, alpha, ell, bound } => {
            let data = preset.as_deref().map(io::preset).transpose()?;
            let g = load_grading(matrix, &data)?;
            let i = match (ideal, &data) {
                (Some(p), _) => {
                    let i = io::ideal(p)?;
                    Ideal::new(
                        g.ring(),
                        i.gens()
                            .iter()
                            .map(|f| f.embed_by_name(g.ring()))
                            .collect::<Result<_, _>>()
                            .map_err(|e| Failure::usage(e.to_string()))?,
                    )
                    .domain()?
                }
                (None, Some(d)) => m0n::equations_for(d).domain()?,
                (None, None) => Ideal::new(g.ring(), vec![]).domain()?,
            };
            let a = git::scale(&io::int_vec(alpha)?, *ell);
            let p = git::proj_presentation(&i, &g, &a, *bound).domain()?;
            let failures = git::degree_one_failures(&g, &a).domain()?;
            if json {
                let mut v = p.to_json();
                v["degree_one_failures"] = json!(failures.iter().map(|u| monomial(g.ring(), u)).collect::<Vec<_>>());
                return Ok(pretty(&v));
            }
            let mut out = format!("{} coordinates\n", p.coordinates.len());
            for (k, c) in p.coordinates.iter().enumerate() {
                out.push_str(&format!("z{k} = {c}\n"));
            }
            out.push_str(&format!("{} linear relations\n", p.linear.len()));
            p.linear.iter().for_each(|l| out.push_str(&format!("{l}\n")));
            out.push_str(&format!("{} binomial relations\n", p.binomial.len()));
            p.binomial.iter().for_each(|b| out.push_str(&format!("{b}\n")));
            if !failures.is_empty() {
                out.push_str(&format!("degree 2α has {} monomials not generated in degree α\n", failures.len()));
            }
            Ok(out)
        }
        GitCmd::Vgit { matrix, c, preset, beta } => {
            let data = preset.as_deref().map(io::preset).transpose()?;
            let (a, cm) = match (matrix, c, &data) {
                (Some(a), Some(c), _) => (io::matrix(a)?, io::matrix(c)?),
                (None, None, Some(d)) => (d.an.clone(), d.c.clone()),
                _ => return Err(Failure::usage("vgit needs --matrix and --c, or --preset")),
            };
            let alpha = git::vgit_alpha(&io::int_vec(beta)?, &a, &cm).domain()?;
            if json {
                return Ok(pretty(&json!({ "alpha": strings(&alpha) })));
            }
            Ok(strings(&alpha).join(","))
        }
    }
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn monomial(ring: &Ring, u: &[u32]) -> String {
    Poly::monomial(ring, coxquot::num::BigRational::from_integer(1.into()), u.iter().map(|&e| e as i32).collect())
        .expect("nonnegative exponents")
        .to_string()
}

fn m0n_cmd(cmd: &M0nCmd, json: bool) -> Result<String, Failure> {
    match cmd {
        M0nCmd::Build { n } => {
            let d = m0n::build(*n).domain()?;
            if json {
                return Ok(pretty(&d.to_json()));
            }
            let mut out = format!(
                "n = {}\nsplits: {}\nnon-edge splits: {}\nrays: {} in dimension {}\nmaximal cones: {}\n",
                d.n,
                d.index_set.len(),
                d.b(),
                d.delta.num_rays(),
                d.delta.dim(),
                d.delta.cones().len()
            );
            out.push_str(&format!("cox variables: {}\n", d.cox_names().join(" ")));
            out.push_str(&format!("torus coordinates: {}\n", d.z_names().join(" ")));
            out.push_str(&format!("D =\n{}", d.d.to_text()));
            out.push_str(&format!("G =\n{}", d.g.to_text()));
            Ok(out)
        }
        M0nCmd::Ideal { n, kind } => {
            let i = match kind {
                IdealKind::Plucker => m0n::plucker_ideal(*n).domain()?,
                IdealKind::Linear => m0n::linear_torus_ideal(*n).domain()?,
                IdealKind::Torus => {
                    let d = m0n::build(*n).domain()?;
                    let p = m0n::plucker_ideal(*n).domain()?;
                    torus_quotient_ideal(&p, &d.action(), &d.d, &d.z_names()).domain()?
                }
            };
            Ok(show_ideal(&i, json))
        }
        M0nCmd::Equations { n } => Ok(show_ideal(&m0n::m0n_equations(*n).domain()?, json)),
        M0nCmd::Check { n } => {
            let d = m0n::build(*n).domain()?;
            let mut checks: Vec<(&str, bool)> = vec![("matrix identities", true)];
            if *n >= 5 {
                checks.push(("Keel relations span ker G", m0n::pic_kernel_check(*n).domain()?));
            }
            checks.push(("fan is smooth", d.delta.is_smooth().domain()?));
            if *n <= 6 {
                checks.push(("fan is valid", d.delta.validate().ok()));
            }
            let ok = checks.iter().all(|c| c.1);
            let out = if json {
                pretty(
                    &json!({ "n": n, "ok": ok, "checks": checks.iter().map(|(k, v)| json!({ "check": k, "pass": v })).collect::<Vec<_>>() }),
                )
            } else {
                checks.iter().map(|(k, v)| format!("{}: {k}\n", if *v { "pass" } else { "FAIL" })).collect()
            };
            if ok {
                Ok(out)
            } else {
                Err(Failure::domain(out))
            }
        }
    }
}

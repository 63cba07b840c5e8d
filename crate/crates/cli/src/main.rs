use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use dynatomic_core::dynatomic::{dynatomic, phi_all, DEFAULT_MAX_TERMS};
use dynatomic_core::families::{lead_coeff_in_x, lead_coeff_in_y, specialization_check, FamilyKind, FamilyMap};
use dynatomic_core::fixtures::{self, Fixture};
use dynatomic_core::form::QForm;
use dynatomic_core::htuned::TunedContext;
use dynatomic_core::powermaps::{reducibility_verdict, verify_factorization, PowerKind};
use dynatomic_core::ratmap::{MapSyntax, Pgl2, RationalMap};
use dynatomic_core::Error;

/// Exact dynatomic polynomials of rational maps on the projective line.
#[derive(Parser)]
#[command(name = "dynatomic", version)]
struct Cli {
    /// Emit JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Abort when a single iterate holds more than this many terms.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: usize,
    /// Only run fixtures whose id contains this string (verify-paper).
    #[arg(long, global = true)]
    filter: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Φ_N or Φ*_N of a map.
    Dynatomic(DynArgs),
    /// h-tuned polynomials Ψ, Ψ*, Ψ̃* for an automorphism of prime order.
    Htuned(TunedArgs),
    /// Cyclotomic factorization of Φ*_N for z^d or 1/z^d.
    Power(PowerArgs),
    /// Φ*_N over a parameterized family.
    Family(FamilyArgs),
    /// Fixed-point multiplier invariants of a quadratic map.
    Sigma(SigmaArgs),
    /// Recompute every stored reference polynomial.
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct DynArgs {
    /// "F, G" in x, y or a rational function of z.
    #[arg(long, allow_hyphen_values = true)]
    map: String,
    #[arg(long = "N", value_name = "N")]
    n: u32,
    /// Φ*_N instead of Φ_N.
    #[arg(long)]
    star: bool,
}

#[derive(Args)]
struct TunedArgs {
    #[arg(long, allow_hyphen_values = true)]
    map: String,
    /// Linear forms "αx+βy, γx+δy".
    #[arg(long, allow_hyphen_values = true)]
    aut: String,
    #[arg(long = "N", value_name = "N")]
    n: u32,
}

#[derive(Args)]
struct PowerArgs {
    #[arg(long)]
    d: u32,
    #[arg(long = "N", value_name = "N")]
    n: u32,
    /// 1/z^d instead of z^d.
    #[arg(long)]
    reciprocal: bool,
}

#[derive(Args)]
struct FamilyArgs {
    /// milnor_ab, milnor_aa or quadratic_poly.
    #[arg(long)]
    family: String,
    #[arg(long = "N", value_name = "N")]
    n: u32,
    /// Parameter value, e.g. `b=0`; repeatable.
    #[arg(long = "bind", value_name = "VAR=VALUE")]
    bind: Vec<String>,
}

#[derive(Args)]
struct SigmaArgs {
    #[arg(long, allow_hyphen_values = true)]
    map: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Read fixtures from this directory instead of the bundled set.
    #[arg(long)]
    fixtures_dir: Option<PathBuf>,
}

enum Failure {
    Lib(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Mismatch(_) => 1,
        Error::DegenerateMap => 3,
        Error::NotAnAutomorphism | Error::NonPrimeOrder(_) => 4,
        Error::OutOfFormulaRange(_) | Error::ResourceLimit { .. } => 5,
        _ => 2,
    }
}

struct Ctx {
    json: bool,
    max_terms: usize,
    filter: Option<String>,
}

impl Ctx {
    fn emit(&self, text: String, value: Value) {
        if self.json {
            println!("{value}");
        } else {
            println!("{text}");
        }
    }
}

fn render(p: &QForm, syntax: MapSyntax) -> String {
    match syntax {
        MapSyntax::Affine => p.dehomogenize().to_string_in("z"),
        MapSyntax::Pair => p.to_mpoly().to_string(),
    }
}

fn cmd_dynatomic(ctx: &Ctx, a: &DynArgs) -> Result<(), Failure> {
    let (map, syntax) = RationalMap::parse(&a.map)?;
    if a.star {
        let r = dynatomic(&map, a.n, ctx.max_terms)?;
        ctx.emit(render(&r.phi_star_n, syntax), r.to_json(&map));
    } else {
        if a.n == 0 {
            return Err(Error::InvalidArgument("N must be positive".into()).into());
        }
        let phi = phi_all(map.f(), map.g(), a.n, ctx.max_terms)?.pop().unwrap();
        let v = json!({"map": map.to_string(), "N": a.n, "phi": phi.to_mpoly().to_json(), "degree": phi.degree()});
        ctx.emit(render(&phi, syntax), v);
    }
    Ok(())
}

fn parse_aut(s: &str) -> Result<Pgl2, Error> {
    Pgl2::parse(s).map_err(|e| match e {
        Error::Parse(_) | Error::UnknownVariable(_) => e,
        other => Error::NonPrimeOrder(format!("`{s}` is not an invertible matrix: {other}")),
    })
}

fn cmd_htuned(ctx: &Ctx, a: &TunedArgs) -> Result<(), Failure> {
    let (map, syntax) = RationalMap::parse(&a.map)?;
    let h = parse_aut(&a.aut)?;
    let tc = TunedContext::new(&map, &h)?.with_max_terms(ctx.max_terms);
    let r = tc.psi_tilde(a.n)?;
    let divides = match tc.divides_phi_star(a.n) {
        Ok(_) => true,
        Err(Error::NonDivisible(_)) => false,
        Err(e) => return Err(e.into()),
    };
    let gap = tc.degree_gap(a.n)?;
    let pn = tc.p() * a.n;
    let deltas: Vec<String> = r.deltas.iter().filter(|(_, k)| *k > 0).map(|(f, k)| format!("({})^{k}", render(f, syntax))).collect();
    let text = [
        format!("Psi_{pn} = {}", render(&r.psi, syntax)),
        format!("Psi*_{pn} = {}", render(&r.psi_star, syntax)),
        format!("Psi~*_{pn} = {}", render(&r.psi_tilde, syntax)),
        format!("removed = {}", if deltas.is_empty() { "none".into() } else { deltas.join(" ") }),
        format!("divides Phi*_{pn}: {divides}"),
        format!("degree gap: {gap}"),
    ]
    .join("\n");
    ctx.emit(text, r.to_json(tc.p(), divides, gap));
    Ok(())
}

fn cmd_power(ctx: &Ctx, a: &PowerArgs) -> Result<(), Failure> {
    let kind = if a.reciprocal { PowerKind::Reciprocal } else { PowerKind::Power };
    let v = verify_factorization(a.d, a.n, kind)?;
    let verdict = reducibility_verdict(a.d, a.n, kind)?;
    let idx: Vec<String> = v.indices.iter().map(u64::to_string).collect();
    let text = format!(
        "indices: [{}]\nunit: {}\nverified: {}\nverdict: {verdict}",
        idx.join(", "),
        v.unit,
        v.verified
    );
    ctx.emit(text, v.to_json());
    Ok(())
}

fn parse_binding(s: &str) -> Result<(String, BigRational), Error> {
    let (k, v) = s.split_once('=').ok_or_else(|| Error::Parse(format!("expected VAR=VALUE, got `{s}`")))?;
    let val = v.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{v}`")))?;
    Ok((k.trim().to_string(), val))
}

fn cmd_family(ctx: &Ctx, a: &FamilyArgs) -> Result<(), Failure> {
    let kind: FamilyKind = a.family.parse()?;
    let fam = FamilyMap::new(kind);
    let owned = a.bind.iter().map(|s| parse_binding(s)).collect::<Result<Vec<_>, _>>()?;
    let binds: Vec<(&str, BigRational)> = owned.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    let target = if binds.is_empty() { fam.clone() } else { fam.specialize(&binds)? };
    let p = target.phi_star(a.n, ctx.max_terms)?;
    let mut text = vec![format!("map: {target}"), format!("Phi*_{} = {p}", a.n)];
    let mut v = json!({"family": kind.name(), "map": target.to_string(), "N": a.n, "phi_star": p.to_json()});
    if !binds.is_empty() {
        let ok = specialization_check(&fam, &binds, a.n)?;
        text.push(format!("specialization commutes: {ok}"));
        v["specialization_check"] = json!(ok);
    } else if a.n > 1 && kind == FamilyKind::MilnorAb {
        let nu = p.homogeneous_degree_in(&["x", "y"]).unwrap_or(0);
        let (lx, ly) = (lead_coeff_in_x(&p, nu)?, lead_coeff_in_y(&p, nu)?);
        text.push(format!("x-lead: {lx}\ny-lead: {ly}"));
        v["lead_x"] = lx.to_json();
        v["lead_y"] = ly.to_json();
    }
    ctx.emit(text.join("\n"), v);
    Ok(())
}

fn cmd_sigma(ctx: &Ctx, a: &SigmaArgs) -> Result<(), Failure> {
    let (map, _) = RationalMap::parse(&a.map)?;
    let s = map.sigma_invariants()?;
    let text = format!("sigma1 = {}\nsigma2 = {}\nsigma3 = {}", s.s1, s.s2, s.s3);
    ctx.emit(text, json!({"map": map.to_string(), "sigma1": s.s1.to_string(), "sigma2": s.s2.to_string(), "sigma3": s.s3.to_string()}));
    Ok(())
}

fn cmd_verify(ctx: &Ctx, a: &VerifyArgs) -> Result<(), Failure> {
    let all: Vec<Fixture> = match &a.fixtures_dir {
        Some(d) => fixtures::load_dir(d)?,
        None => fixtures::builtin(),
    };
    let chosen = fixtures::select(&all, ctx.filter.as_deref());
    if chosen.is_empty() {
        return Err(Error::InvalidArgument("no fixture matches the filter".into()).into());
    }
    let mut report = Vec::new();
    let mut first_failure = None;
    for f in chosen {
        let out = f.run(ctx.max_terms)?;
        if !ctx.json {
            println!("{} {:<24} {}", if out.passed { "PASS" } else { "FAIL" }, f.id, f.source);
            if let Some(e) = &f.erratum {
                println!("     note: {e}");
            }
        }
        report.push(json!({"id": f.id, "source": f.source, "passed": out.passed, "erratum": f.erratum}));
        if !out.passed && first_failure.is_none() {
            let mut diff = format!("{}:\n  expected: {}\n  got:      {}", f.id, out.expected, out.got);
            if let Some(d) = &out.difference {
                diff.push_str(&format!("\n  got - expected: {d}"));
            }
            first_failure = Some(diff);
        }
    }
    let passed = report.iter().filter(|r| r["passed"] == json!(true)).count();
    if ctx.json {
        println!("{}", json!({"passed": passed, "total": report.len(), "fixtures": report}));
    } else {
        println!("{passed}/{} fixtures pass", report.len());
    }
    match first_failure {
        Some(d) => Err(Failure::Verify(d)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { json: cli.json, max_terms: cli.max_terms, filter: cli.filter.clone() };
    let res = match &cli.cmd {
        Cmd::Dynatomic(a) => cmd_dynatomic(&ctx, a),
        Cmd::Htuned(a) => cmd_htuned(&ctx, a),
        Cmd::Power(a) => cmd_power(&ctx, a),
        Cmd::Family(a) => cmd_family(&ctx, a),
        Cmd::Sigma(a) => cmd_sigma(&ctx, a),
        Cmd::VerifyPaper(a) => cmd_verify(&ctx, a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(diff)) => {
            eprintln!("verification failed\n{diff}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("{e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use affquiver::canon::{enumerate_delta, stratum_dim, weight_dim_oracle};
use affquiver::exactfield::{Field, Matrix};
use affquiver::functors::{
    classify, coxeter_minus_pow, coxeter_plus_pow, injective_rep, projective_rep, reflection_minus,
    reflection_plus, ModuleClass,
};
use affquiver::hallalg::{hall_number, hall_polynomial, hall_product, serre_element, HallElement};
use affquiver::quiver::{
    admissible_sink_sequence, cartan_matrix, classify_graph, defect, minimal_imaginary_root, Quiver,
};
use affquiver::rep::{field_from_json, indecompose, is_isomorphic, Representation};
use affquiver::tubes::{cyclic_indec, cyclic_t_lambda, find_tubes, hall_apply, CyclicRep};
use affquiver::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod cache;

const DEFAULT_SEED: u64 = 0xAFF1E;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "affquiver", version, about = "Representations of affine quivers and their canonical basis data")]
struct Cli {
    /// Prime `p` or `Q`.
    #[arg(long, global = true, default_value = "17")]
    field: String,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Directory for cached inventories.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Bound on enumerated subspaces and cocycles.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    cap: u128,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Affine type, Cartan matrix, δ, sink sequence and defects.
    Info { quiver: PathBuf },
    /// Krull–Schmidt decomposition with the class of each summand.
    Classify { quiver: PathBuf, rep: PathBuf },
    /// BGP reflection at a sink (or at a source with --minus).
    Reflect {
        quiver: PathBuf,
        rep: PathBuf,
        vertex: String,
        #[arg(long)]
        minus: bool,
    },
    /// Coxeter functor Φ⁺ (or Φ⁻ with --minus), applied --power times.
    Coxeter {
        quiver: PathBuf,
        rep: PathBuf,
        #[arg(long)]
        minus: bool,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Non-homogeneous tubes with their periods and simples.
    Tubes { quiver: PathBuf },
    /// Hall functor image of a cyclic-quiver representation in a tube.
    HallApply {
        quiver: PathBuf,
        #[arg(long, default_value_t = 0)]
        tube: usize,
        /// Indecomposable `s_{z,l}` given as `z,l`.
        #[arg(long, conflicts_with_all = ["t_lambda", "cyclic"])]
        segment: Option<String>,
        /// `t_λ` for the given scalar.
        #[arg(long, conflicts_with = "cyclic")]
        t_lambda: Option<String>,
        /// Representation of the cyclic quiver, as JSON.
        #[arg(long)]
        cyclic: Option<PathBuf>,
    },
    /// The set Δ_ν as JSON lines.
    Basis {
        quiver: PathBuf,
        nu: String,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        strata: bool,
    },
    /// Quantum Serre relation between two vertices over F_q.
    Serre {
        quiver: PathBuf,
        i: String,
        j: String,
        q: u64,
    },
    /// Hall number g^total_{top,sub}, or the product u_top ∘ u_sub without TOTAL.
    HallNum {
        quiver: PathBuf,
        top: PathBuf,
        sub: PathBuf,
        total: Option<PathBuf>,
        /// Fit g as a polynomial in q over several primes.
        #[arg(long, requires = "total")]
        interpolate: bool,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    OracleMismatch { delta: usize, oracle: u128 },
    SerreFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Lib(e) => match e {
                Error::Usage(_) => "usage",
                Error::Parse(_) => "parse",
                Error::UnknownVertex(_) => "unknown-vertex",
                Error::NotAffine(_) => "not-affine",
                Error::NoAdmissibleOrder => "no-admissible-order",
                Error::NotSink(_) => "not-sink",
                Error::NotSource(_) => "not-source",
                Error::NeedsLargerField(_) => "needs-larger-field",
                Error::CombinatorialExplosion { .. } => "combinatorial-explosion",
                Error::DegreeBoundExceeded(_) => "degree-bound-exceeded",
                Error::Internal(_) => "internal",
            },
            Failure::Io(_) => "io",
            Failure::OracleMismatch { .. } => "oracle-mismatch",
            Failure::SerreFailed => "serre-failed",
        }
    }

    fn exit(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse(_) | Error::Usage(_) | Error::UnknownVertex(_)) => 2,
            Failure::Io(_) => 2,
            Failure::Lib(Error::NeedsLargerField(_)) => 3,
            Failure::Lib(Error::CombinatorialExplosion { .. }) => 4,
            Failure::OracleMismatch { .. } => 5,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(Error::NeedsLargerField(m)) => {
                format!("field too small for this computation: {m}; retry with a larger --field p")
            }
            Failure::Lib(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
            Failure::OracleMismatch { delta, oracle } => {
                format!("|Δ| = {delta} but the oracle gives {oracle}")
            }
            Failure::SerreFailed => "Serre relation does not vanish".into(),
        }
    }
}

type Out = Result<String, Failure>;

struct Ctx {
    field: Field,
    seed: u64,
    cache: Option<PathBuf>,
    json: bool,
    cap: u128,
}

fn parse_field(s: &str) -> Result<Field, Error> {
    if s == "Q" || s == "q" {
        return Ok(Field::Rational);
    }
    let p: u64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("--field expects a prime or Q, got `{s}`")))?;
    Field::prime(p).map_err(|e| match e {
        Error::Usage(m) => Error::Parse(m),
        other => other,
    })
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Lib(Error::Parse(format!("{}: {e}", path.display()))))
}

fn read_quiver(path: &PathBuf) -> Result<Arc<Quiver>, Failure> {
    Ok(Arc::new(Quiver::from_json(&read_json(path)?)?))
}

/// Reads a representation of `q`, over its own field or over `over` when given.
fn read_rep(q: &Arc<Quiver>, path: &PathBuf, over: Option<Field>) -> Result<Representation, Failure> {
    let v = read_json(path)?;
    if let Some(qv) = v.get("quiver") {
        if Quiver::from_json(qv)? != **q {
            return Err(Error::Usage(format!("{} is a representation of another quiver", path.display())).into());
        }
    }
    let f = match (over, v.get("field")) {
        (Some(f), _) => f,
        (None, Some(fv)) => field_from_json(fv)?,
        (None, None) => return Err(Error::Parse(format!("{}: missing `field`", path.display())).into()),
    };
    Ok(Representation::from_json_on(q.clone(), f, &v)?)
}

fn matrix_rows(m: &Matrix) -> String {
    m.to_json().to_string()
}

fn rep_table(m: &Representation) -> String {
    let q = m.quiver();
    let mut s = format!("dims {}\n", m.dim_vector());
    for (k, a) in q.arrows().iter().enumerate() {
        s.push_str(&format!(
            "{} ({}→{}): {}\n",
            a.id,
            q.vertex_name(a.tail),
            q.vertex_name(a.head),
            matrix_rows(m.map(k))
        ));
    }
    s
}

fn rep_out(ctx: &Ctx, m: &Representation) -> String {
    if ctx.json {
        format!("{}\n", m.to_json())
    } else {
        format!("quiver {}\n{}", m.quiver(), rep_table(m))
    }
}

fn cmd_info(ctx: &Ctx, path: &PathBuf) -> Out {
    let q = read_quiver(path)?;
    let class = classify_graph(&q)?;
    let delta = minimal_imaginary_root(&q)?;
    let cartan = cartan_matrix(&q);
    let sinks: Option<Vec<String>> = match admissible_sink_sequence(&q) {
        Ok(seq) => Some(seq.iter().map(|&i| q.vertex_name(i).to_string()).collect()),
        Err(Error::NoAdmissibleOrder) => None,
        Err(e) => return Err(e.into()),
    };
    let mut defects = BTreeMap::new();
    let mut defect_rows = Vec::new();
    if sinks.is_some() {
        for i in 0..q.vertex_count() {
            let d = defect(&q, &q.simple_root(i))?;
            defects.insert(q.vertex_name(i).to_string(), d);
            defect_rows.push(format!("  {}: {d}", q.vertex_name(i)));
        }
    }
    if ctx.json {
        let v = json!({
            "family": class.family.to_string(),
            "vertices": q.vertices(),
            "cartan": cartan,
            "delta": delta.0,
            "sink_sequence": sinks,
            "simple_defects": defects,
        });
        return Ok(format!("{v}\n"));
    }
    let cartan_rows: Vec<String> = cartan
        .iter()
        .map(|r| format!("  {}", r.iter().map(|x| format!("{x:>3}")).collect::<String>()))
        .collect();
    let mut s = format!(
        "quiver {q}\nfamily {}\nδ={delta}\ncartan matrix\n{}\n",
        class.family,
        cartan_rows.join("\n"),
    );
    match sinks {
        Some(seq) => s.push_str(&format!("sink sequence {}\nsimple defects\n{}\n", seq.join(", "), defect_rows.join("\n"))),
        None => s.push_str("no admissible order\n"),
    }
    Ok(s)
}

fn standard_tag(m: &Representation, seed: u64) -> Result<(bool, bool), Failure> {
    let q = m.quiver_arc();
    let mut proj = false;
    let mut inj = false;
    for r in 0..q.vertex_count() {
        proj |= is_isomorphic(&projective_rep(q, r, m.field())?, m, seed)?;
        inj |= is_isomorphic(&injective_rep(q, r, m.field())?, m, seed)?;
    }
    Ok((proj, inj))
}

fn class_code(c: &ModuleClass) -> &'static str {
    match c {
        ModuleClass::Preprojective => "preprojective",
        ModuleClass::Preinjective => "preinjective",
        ModuleClass::RegularInhomogeneous { .. } => "regular-inhomogeneous",
        ModuleClass::RegularHomogeneous => "regular-homogeneous",
    }
}

fn cmd_classify(ctx: &Ctx, qpath: &PathBuf, rpath: &PathBuf) -> Out {
    let q = read_quiver(qpath)?;
    classify_graph(&q)?;
    let m = read_rep(&q, rpath, None)?;
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for (summand, mult) in indecompose(&m, ctx.seed)? {
        let c = classify(&summand, ctx.seed)?;
        let (proj, inj) = standard_tag(&summand, ctx.seed)?;
        let tag = match (proj, inj) {
            (true, true) => " (projective, injective)",
            (true, false) => " (projective)",
            (false, true) => " (injective)",
            _ => "",
        };
        lines.push(format!(
            "{mult} × {}: {}{tag}, defect {}",
            summand.dim_vector(),
            c.class,
            c.defect
        ));
        rows.push(json!({
            "dims": summand.dim_vector().0,
            "multiplicity": mult,
            "class": class_code(&c.class),
            "period": c.class.period(),
            "defect": c.defect,
            "projective": proj,
            "injective": inj,
        }));
    }
    if ctx.json {
        Ok(format!("{}\n", json!({ "summands": rows })))
    } else {
        Ok(lines.iter().map(|l| format!("{l}\n")).collect())
    }
}

fn cmd_reflect(ctx: &Ctx, qpath: &PathBuf, rpath: &PathBuf, vertex: &str, minus: bool) -> Out {
    let q = read_quiver(qpath)?;
    let m = read_rep(&q, rpath, None)?;
    let i = q.vertex_index(vertex)?;
    let r = if minus { reflection_minus(i, &m)? } else { reflection_plus(i, &m)? };
    Ok(rep_out(ctx, &r))
}

fn cmd_coxeter(ctx: &Ctx, qpath: &PathBuf, rpath: &PathBuf, minus: bool, power: usize) -> Out {
    let q = read_quiver(qpath)?;
    let m = read_rep(&q, rpath, None)?;
    let r = if minus { coxeter_minus_pow(&m, power)? } else { coxeter_plus_pow(&m, power)? };
    Ok(rep_out(ctx, &r))
}

fn cmd_tubes(ctx: &Ctx, qpath: &PathBuf) -> Out {
    let q = read_quiver(qpath)?;
    let tubes = find_tubes(&q, ctx.field, ctx.seed)?;
    if ctx.json {
        let v = json!({"tubes": tubes.iter().map(|t| t.to_json()).collect::<Vec<_>>()});
        return Ok(format!("{v}\n"));
    }
    let periods: Vec<String> = tubes.iter().map(|t| t.period().to_string()).collect();
    let mut s = match tubes.len() {
        1 => format!("1 tube, period {}\n", periods[0]),
        0 => "0 tubes\n".to_string(),
        n => format!("{n} tubes, periods [{}]\n", periods.join(",")),
    };
    for (k, t) in tubes.iter().enumerate() {
        let dims: Vec<String> = t.simples().iter().map(|r| r.dim_vector().to_string()).collect();
        s.push_str(&format!("tube {k}: period {}, simples {}\n", t.period(), dims.join(" ")));
    }
    Ok(s)
}

fn cmd_hall_apply(
    ctx: &Ctx,
    qpath: &PathBuf,
    tube: usize,
    segment: &Option<String>,
    t_lambda: &Option<String>,
    cyclic: &Option<PathBuf>,
) -> Out {
    let q = read_quiver(qpath)?;
    let tubes = find_tubes(&q, ctx.field, ctx.seed)?;
    let t = tubes
        .get(tube)
        .ok_or_else(|| Error::Usage(format!("tube {tube} does not exist ({} found)", tubes.len())))?;
    let p = t.period();
    let m = match (segment, t_lambda, cyclic) {
        (Some(s), _, _) => {
            let parts: Vec<usize> = s
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Error::Parse(format!("--segment expects z,l, got `{s}`")))?;
            match parts[..] {
                [z, l] => cyclic_indec(p, z, l, ctx.field)?,
                _ => return Err(Error::Parse(format!("--segment expects z,l, got `{s}`")).into()),
            }
        }
        (None, Some(x), _) => {
            let lambda = ctx.field.parse_entry(&Value::String(x.clone())).or_else(|_| {
                x.parse::<i64>()
                    .map(|n| ctx.field.from_i64(n))
                    .map_err(|_| Error::Parse(format!("--t-lambda expects a scalar, got `{x}`")))
            })?;
            cyclic_t_lambda(p, &lambda, ctx.field)?
        }
        (None, None, Some(path)) => {
            let cq = Arc::new(Quiver::cyclic(p)?);
            CyclicRep::from_rep(read_rep(&cq, path, Some(ctx.field))?)?
        }
        (None, None, None) => {
            return Err(Error::Usage("give one of --segment, --t-lambda, --cyclic".into()).into())
        }
    };
    Ok(rep_out(ctx, &hall_apply(t, &m)?))
}

fn cmd_basis(ctx: &Ctx, qpath: &PathBuf, nu: &str, oracle: bool, strata: bool) -> Out {
    let q = read_quiver(qpath)?;
    classify_graph(&q)?;
    let nu = q.parse_dim(nu)?;
    let inv = cache::inventory(ctx.cache.as_deref(), &q, ctx.field, &nu, ctx.seed)?;
    let params = enumerate_delta(&nu, &inv)?;
    let mut lines = Vec::with_capacity(params.len());
    for p in &params {
        let d = if strata { Some(stratum_dim(p, &inv)?) } else { None };
        lines.push(p.to_json(d));
    }
    let oracle_value = if oracle { Some(weight_dim_oracle(&q, &nu)?) } else { None };
    let pass = oracle_value.map(|o| o == params.len() as u128);
    let s = if ctx.json {
        let mut v = json!({"nu": nu.0, "count": params.len(), "elements": lines});
        if let Some(o) = oracle_value {
            v["oracle"] = json!({"value": o, "pass": pass});
        }
        format!("{v}\n")
    } else {
        let mut s: String = lines.iter().map(|l| format!("{l}\n")).collect();
        let noun = if params.len() == 1 { "element" } else { "elements" };
        s.push_str(&format!("{} {noun}\n", params.len()));
        if let Some(o) = oracle_value {
            s.push_str(&format!("oracle {o} {}\n", if pass == Some(true) { "PASS" } else { "FAIL" }));
        }
        s
    };
    if let (Some(false), Some(o)) = (pass, oracle_value) {
        print!("{s}");
        return Err(Failure::OracleMismatch {
            delta: params.len(),
            oracle: o,
        });
    }
    Ok(s)
}

fn element_out(ctx: &Ctx, e: &HallElement) -> String {
    if ctx.json {
        return format!("{}\n", e.to_json());
    }
    if e.is_zero() {
        return "0\n".into();
    }
    e.terms()
        .iter()
        .map(|(m, c)| format!("({c}) · u[{}]\n{}", m.dim_vector(), rep_table(m)))
        .collect()
}

fn cmd_serre(ctx: &Ctx, qpath: &PathBuf, i: &str, j: &str, prime: u64) -> Out {
    let q = read_quiver(qpath)?;
    let (iv, jv) = (q.vertex_index(i)?, q.vertex_index(j)?);
    let e = serre_element(&q, iv, jv, prime, ctx.cap, ctx.seed)?;
    let pass = e.is_zero();
    let s = if ctx.json {
        format!("{}\n", json!({"i": i, "j": j, "q": prime, "pass": pass, "element": e.to_json()}))
    } else if pass {
        format!("serre {i} {j} q={prime}: PASS\n")
    } else {
        format!("serre {i} {j} q={prime}: FAIL\n{}", element_out(ctx, &e))
    };
    if !pass {
        print!("{s}");
        return Err(Failure::SerreFailed);
    }
    Ok(s)
}

fn cmd_hall_num(
    ctx: &Ctx,
    qpath: &PathBuf,
    top: &PathBuf,
    sub: &PathBuf,
    total: &Option<PathBuf>,
    interpolate: bool,
) -> Out {
    let q = read_quiver(qpath)?;
    let t = read_rep(&q, top, None)?;
    let w = read_rep(&q, sub, None)?;
    let Some(total) = total else {
        let prod = hall_product(&HallElement::basis(&t)?, &HallElement::basis(&w)?, ctx.cap, ctx.seed)?;
        return Ok(element_out(ctx, &prod));
    };
    let m = read_rep(&q, total, None)?;
    if interpolate {
        let build = |f: Field| -> affquiver::Result<(Representation, Representation, Representation)> {
            let load = |p: &PathBuf| -> affquiver::Result<Representation> {
                let v: Value = serde_json::from_str(
                    &fs::read_to_string(p).map_err(|e| Error::Parse(e.to_string()))?,
                )
                .map_err(|e| Error::Parse(e.to_string()))?;
                Representation::from_json_on(q.clone(), f, &v)
            };
            Ok((load(top)?, load(sub)?, load(total)?))
        };
        let coeffs = hall_polynomial(&build, ctx.cap, ctx.seed)?;
        let strs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        if ctx.json {
            return Ok(format!("{}\n", json!({ "coefficients": strs })));
        }
        let terms: Vec<String> = strs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.as_str() != "0")
            .map(|(k, c)| match k {
                0 => c.clone(),
                1 => format!("{c}·q"),
                _ => format!("{c}·q^{k}"),
            })
            .collect();
        let poly = if terms.is_empty() { "0".into() } else { terms.join(" + ") };
        return Ok(format!("g(q) = {poly}\n"));
    }
    let g = hall_number(&t, &w, &m, ctx.cap, ctx.seed)?;
    if ctx.json {
        Ok(format!("{}\n", json!({ "hall_number": g })))
    } else {
        Ok(format!("{g}\n"))
    }
}

fn run(cli: &Cli) -> Out {
    let ctx = Ctx {
        field: parse_field(&cli.field)?,
        seed: cli.seed,
        cache: cli.cache.clone(),
        json: cli.format == Format::Json,
        cap: cli.cap,
    };
    match &cli.cmd {
        Cmd::Info { quiver } => cmd_info(&ctx, quiver),
        Cmd::Classify { quiver, rep } => cmd_classify(&ctx, quiver, rep),
        Cmd::Reflect { quiver, rep, vertex, minus } => cmd_reflect(&ctx, quiver, rep, vertex, *minus),
        Cmd::Coxeter { quiver, rep, minus, power } => cmd_coxeter(&ctx, quiver, rep, *minus, *power),
        Cmd::Tubes { quiver } => cmd_tubes(&ctx, quiver),
        Cmd::HallApply { quiver, tube, segment, t_lambda, cyclic } => {
            cmd_hall_apply(&ctx, quiver, *tube, segment, t_lambda, cyclic)
        }
        Cmd::Basis { quiver, nu, oracle, strata } => cmd_basis(&ctx, quiver, nu, *oracle, *strata),
        Cmd::Serre { quiver, i, j, q } => cmd_serre(&ctx, quiver, i, j, *q),
        Cmd::HallNum { quiver, top, sub, total, interpolate } => {
            cmd_hall_num(&ctx, quiver, top, sub, total, *interpolate)
        }
    }
}

fn wants_json(args: &[String]) -> bool {
    args.windows(2).any(|w| w[0] == "--format" && w[1] == "json") || args.iter().any(|a| a == "--format=json")
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            if wants_json(&args) {
                println!("{}", json!({"error": "parse", "message": e.to_string().trim()}));
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if cli.format == Format::Json {
                println!("{}", json!({"error": f.code(), "message": f.message()}));
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.exit())
        }
    }
}

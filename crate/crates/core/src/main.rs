use clap::{Parser, Subcommand, ValueEnum};
use cohchow::arithmetic::{
    dega, div_hat, eisenstein_multiplier, hecke_height, modular_selfintersection, render, rohrlich_jensen, threefold_selfintersection,
    SymbolicReal,
};
use cohchow::complex::{simple_of_map, Complex};
use cohchow::deligne::DeligneComplex;
use cohchow::error::Error;
use cohchow::green::{star_kernel_simple, star_partition_formula, Cover, GreenObject, Partition};
use cohchow::json::{shipped_algebra, vec_to_strings, ComplexDoc, CoverDoc, DolbeaultDoc, FiberDoc, GreenDoc, IteratedDoc, MapDoc};
use cohchow::linalg::{fmt_q, parse_q};
use cohchow::random::{random_vec, rng};
use cohchow::verify::{green_instance, green_models, run, Suite, DEFAULT_SEED};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "cohchow", version, about = "Exact relative cohomology, Deligne complexes, Green object products and arithmetic heights")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Seed for randomized suites and samples; echoed in every output.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Instances per verification suite.
    #[arg(long, global = true, default_value_t = 100)]
    count: usize,
    /// Significant digits for numeric rendering.
    #[arg(long, global = true, env = "COHCHOW_PRECISION", default_value_t = 30)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StarMode {
    KernelSimple,
    Partition,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StarVariant {
    Random,
    AMap,
    SameSupport,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology of a complex, chain map (its simple complex), iterated complex, or the Deligne
    /// complex of a Dolbeault algebra.
    Cohomology {
        /// A JSON file; omit when using --algebra.
        path: Option<PathBuf>,
        /// A shipped algebra instead of a file: torus:G, jet:E or nilpotent:SEED:G:CLOSED.
        #[arg(long, conflicts_with = "path")]
        algebra: Option<String>,
        /// Deligne weight, required for algebras.
        #[arg(long)]
        weight: Option<i32>,
        /// Report only this degree.
        #[arg(long)]
        degree: Option<i32>,
    },
    /// Product of two Green objects on a finite cover.
    Star {
        cover: PathBuf,
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long, value_enum, default_value_t = StarMode::Both)]
        mode: StarMode,
    },
    /// Run randomized verification suites: signs, relative, truncated, deligne, green or all.
    Verify { suite: String },
    /// Closed-form arithmetic intersection numbers and heights.
    Height {
        #[command(subcommand)]
        kind: Height,
    },
    /// Write example inputs.
    Sample {
        #[command(subcommand)]
        kind: Sample,
    },
}

#[derive(Subcommand)]
enum Height {
    /// Arithmetic self-intersection of the weight-k modular bundle.
    #[command(name = "self")]
    SelfIntersection { k: i64 },
    /// Top self-intersection of L(k, l) on the product of two modular curves.
    Threefold { k: i64, l: i64 },
    /// Height of the Hecke correspondence T_N with respect to L(k, k).
    Hecke { n: i64, k: i64 },
    /// The Rohrlich–Jensen sum over the Hecke representatives of level N.
    Rohrlich { n: i64 },
    /// Multiplier of the generating series in degree N, or a table with --to.
    Eisenstein {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<i64>,
    },
    /// Arithmetic degree of the principal divisor of a rational number.
    Dega {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Subcommand)]
enum Sample {
    /// A chain map document: the identity of [Q → Q].
    Map,
    /// A shipped Dolbeault algebra as an inline document.
    Algebra { name: String },
    /// A cover and two Green objects, written as cover.json, g1.json and g2.json.
    Star {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = StarVariant::Random)]
        variant: StarVariant,
    },
}

/// Input problems exit with 2, failed laws or verdicts with 1.
enum Failure {
    Input(Error),
    Law(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant { .. } => Failure::Law(e),
            _ => Failure::Input(e),
        }
    }
}

fn input(e: Error) -> Failure {
    Failure::Input(e)
}

struct Report {
    json: Value,
    human: String,
    ok: bool,
}

type Out = std::result::Result<Report, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input(Error::input(format!("{}: {e}", path.display()))))?;
    serde_json::from_str(&text)
        .map_err(|e| input(Error::input(format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()))))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, v: Value) -> std::result::Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| input(Error::input(format!("{}: {e}", path.display()))))
}

fn cohomology_report(c: &Complex, only: Option<i32>) -> (Vec<Value>, String) {
    let mut rows = Vec::new();
    let mut human = String::new();
    let degrees: Vec<i32> = if c.is_zero() { vec![] } else { (c.lo()..=c.hi()).collect() };
    for n in degrees.into_iter().filter(|n| only.is_none_or(|d| d == *n)) {
        let h = c.cohomology(n);
        let reps: Vec<Vec<String>> = (0..h.dim()).map(|i| vec_to_strings(&h.representative(i))).collect();
        let _ = writeln!(human, "H^{n}: dim {} (chain dim {})", h.dim(), c.dim(n));
        for r in &reps {
            let _ = writeln!(human, "  [{}]", r.join(", "));
        }
        rows.push(json!({ "degree": n, "chain_dim": c.dim(n), "dim": h.dim(), "representatives": reps }));
    }
    if rows.is_empty() {
        human.push_str("all cohomology vanishes: the complex is zero\n");
    }
    (rows, human)
}

fn cmd_cohomology(path: Option<&Path>, algebra: Option<&str>, weight: Option<i32>, degree: Option<i32>) -> Out {
    let (kind, c) = match (path, algebra) {
        (_, Some(name)) => ("algebra", AlgebraInput::Shipped(name.to_string())),
        (Some(p), None) => {
            let v: Value = read_json(p)?;
            if v.get("basis").is_some() {
                ("algebra", AlgebraInput::Inline(parse(p, v)?))
            } else if v.get("arity").is_some() {
                let d: IteratedDoc = parse(p, v)?;
                ("iterated", AlgebraInput::Complex(d.to_iterated().map_err(input)?.simple()))
            } else if v.get("maps").is_some() {
                let d: MapDoc = parse(p, v)?;
                ("map", AlgebraInput::Complex(simple_of_map(&d.to_map().map_err(input)?)))
            } else {
                let d: ComplexDoc = parse(p, v)?;
                ("complex", AlgebraInput::Complex(d.to_complex().map_err(input)?))
            }
        }
        (None, None) => return Err(input(Error::input("give a file or --algebra"))),
    };
    let complex = match c {
        AlgebraInput::Complex(c) => c,
        alg => {
            let a = match alg {
                AlgebraInput::Shipped(name) => shipped_algebra(&name),
                AlgebraInput::Inline(doc) => doc.to_algebra(),
                AlgebraInput::Complex(_) => unreachable!(),
            }
            .map_err(input)?;
            let p = weight.ok_or_else(|| input(Error::input("--weight is required for a Dolbeault algebra")))?;
            if p < 0 {
                return Err(input(Error::input("--weight must be nonnegative")));
            }
            DeligneComplex::new(Arc::new(a.space), p)?.complex().clone()
        }
    };
    let (rows, body) = cohomology_report(&complex, degree);
    let head = match (kind, weight) {
        ("algebra", Some(p)) => format!("Deligne complex of weight {p}\n"),
        ("map", _) => "simple complex of the chain map\n".to_string(),
        ("iterated", _) => "simple complex of the iterated complex\n".to_string(),
        _ => "complex\n".to_string(),
    };
    let mut json = json!({ "input": kind, "cohomology": rows });
    if let (Some(p), "algebra") = (weight, kind) {
        json["weight"] = json!(p);
    }
    Ok(Report { json, human: head + &body, ok: true })
}

enum AlgebraInput {
    Shipped(String),
    Inline(Box<DolbeaultDoc>),
    Complex(Complex),
}

fn cmd_star(cover: &Path, g1: &Path, g2: &Path, mode: StarMode) -> Out {
    let doc: CoverDoc = read_json(cover)?;
    let loaded = doc.load().map_err(input)?;
    let (d1, d2): (GreenDoc, GreenDoc) = (read_json(g1)?, read_json(g2)?);
    let (g1, g2) = (d1.to_green(&loaded.model).map_err(input)?, d2.to_green(&loaded.model).map_err(input)?);
    if g1.support != loaded.cover.y || g2.support != loaded.cover.z {
        return Err(input(Error::input("the cover's y and z must be the supports of the first and second Green object")));
    }
    let mut json = json!({ "weights": [g1.weight, g2.weight] });
    let support: Vec<usize> = g1.support.intersection(&g2.support).copied().collect();
    let mut human = format!("weights {} and {}, result supported on {support:?}\n", g1.weight, g2.weight);
    let ks = match mode {
        StarMode::Partition => None,
        _ => Some(star_kernel_simple(&loaded.model, &g1, &g2, &loaded.splitting)?),
    };
    let pf = match mode {
        StarMode::KernelSimple => None,
        _ => Some(star_partition_formula(&loaded.model, &g1, &g2, &loaded.partition)?),
    };
    for (name, g) in [("kernel_simple", &ks), ("partition", &pf)] {
        if let Some(g) = g {
            json[name] = serde_json::to_value(GreenDoc::from_green(g)).expect("serializable");
            let _ =
                writeln!(human, "{name}: a = [{}], b = [{}]", vec_to_strings(&g.class.a).join(", "), vec_to_strings(&g.class.b).join(", "));
        }
    }
    let mut ok = true;
    if let (Some(k), Some(p)) = (&ks, &pf) {
        ok = k.group(&loaded.model)?.same_class(&k.class, &p.class);
        json["equal_as_classes"] = json!(ok);
        let _ = writeln!(human, "verdict: {}", if ok { "equal as classes" } else { "NOT equal as classes" });
    }
    Ok(Report { json, human, ok })
}

fn cmd_verify(name: &str, seed: u64, count: usize) -> Out {
    let suites = if name == "all" { Suite::ALL.to_vec() } else { vec![name.parse::<Suite>().map_err(input)?] };
    let mut reports = Vec::new();
    let mut human = String::new();
    let mut ok = true;
    for s in suites {
        let r = run(s, seed, count);
        ok &= r.passed();
        let _ = writeln!(human, "{s}: {} ({} instances, {} checks)", if r.passed() { "pass" } else { "FAIL" }, r.count, r.checks);
        for f in &r.failures {
            let _ = writeln!(human, "  instance {} (seed {}, shrunk to size {}): {}", f.instance, f.seed, f.size, f.error);
        }
        reports.push(serde_json::to_value(&r).expect("serializable"));
    }
    Ok(Report { json: json!({ "suites": reports, "passed": ok }), human, ok })
}

fn exact_and_numeric(label: &str, x: &SymbolicReal, digits: usize) -> Out {
    let numeric = render(x, digits).map_err(input)?;
    Ok(Report {
        json: json!({ "quantity": label, "exact": x.to_string(), "terms": x.to_json(), "numeric": numeric, "digits": digits }),
        human: format!("{label} = {x}\n  ≈ {numeric}\n"),
        ok: true,
    })
}

fn cmd_height(kind: &Height, digits: usize) -> Out {
    match *kind {
        Height::SelfIntersection { k } => {
            exact_and_numeric(&format!("self-intersection, k = {k}"), &modular_selfintersection(k).map_err(input)?, digits)
        }
        Height::Threefold { k, l } => exact_and_numeric(
            &format!("threefold self-intersection, k = {k}, l = {l}"),
            &threefold_selfintersection(k, l).map_err(input)?,
            digits,
        ),
        Height::Hecke { n, k } => {
            exact_and_numeric(&format!("Hecke height, N = {n}, k = {k}"), &hecke_height(n, k).map_err(input)?, digits)
        }
        Height::Rohrlich { n } => exact_and_numeric(&format!("Rohrlich-Jensen sum, N = {n}"), &rohrlich_jensen(n).map_err(input)?, digits),
        Height::Eisenstein { n, to } => {
            let to = to.unwrap_or(n);
            if to < n || to - n > 100_000 {
                return Err(input(Error::input("need N ≤ --to with at most 100000 rows")));
            }
            let mut rows = Vec::new();
            let mut human = String::new();
            for m in n..=to {
                let c = eisenstein_multiplier(m);
                let _ = writeln!(human, "N = {m}: {c}");
                rows.push(json!({ "n": m, "exact": c.to_string(), "terms": c.to_json() }));
            }
            Ok(Report { json: json!({ "quantity": "generating series multiplier", "table": rows }), human, ok: true })
        }
        Height::Dega { ref x } => {
            let q = parse_q(x).ok_or_else(|| input(Error::input(format!("not a rational `{x}`"))))?;
            let d = div_hat(&q).map_err(input)?;
            let deg = dega(&d);
            let finite: serde_json::Map<String, Value> = d.finite.iter().map(|(p, v)| (p.to_string(), json!(v))).collect();
            Ok(Report {
                json: json!({ "quantity": "arithmetic degree", "x": fmt_q(&q), "finite": finite, "green": d.green.to_string(), "exact": deg.to_string() }),
                human: format!("div^({}) = {:?} with Green part {}\ndeg^ = {deg}\n", fmt_q(&q), d.finite, d.green),
                ok: true,
            })
        }
    }
}

fn write_json(path: &Path, v: &impl serde::Serialize) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    std::fs::write(path, text).map_err(|e| input(Error::input(format!("{}: {e}", path.display()))))
}

const FIBER_NAMES: [&str; 4] = ["jet:0", "jet:0", "torus:2", "nilpotent:11:2:1"];

fn cmd_sample(kind: &Sample, seed: u64) -> Out {
    match kind {
        Sample::Map => {
            let c = ComplexDoc {
                degrees: [0, 1],
                dims: [("0".into(), 1), ("1".into(), 1)].into(),
                diff: [("0".into(), vec![vec!["1".into()]])].into(),
            };
            let doc = MapDoc {
                source: c.clone(),
                target: c,
                maps: [("0".into(), vec![vec!["1".into()]]), ("1".into(), vec![vec!["1".into()]])].into(),
            };
            let v = serde_json::to_value(&doc).expect("serializable");
            Ok(Report { human: serde_json::to_string_pretty(&v).expect("json") + "\n", json: v, ok: true })
        }
        Sample::Algebra { name } => {
            let v = serde_json::to_value(DolbeaultDoc::from_algebra(&shipped_algebra(name).map_err(input)?)).expect("serializable");
            Ok(Report { human: serde_json::to_string_pretty(&v).expect("json") + "\n", json: v, ok: true })
        }
        Sample::Star { out, variant } => {
            let inst = green_instance(seed)?;
            let models = green_models();
            let idx = models.iter().position(|m| std::ptr::eq(m, inst.model)).expect("shipped model");
            let model = inst.model;
            let mut r = rng(seed ^ 0x5eed);
            let (g1, g2) = match variant {
                StarVariant::Random => (inst.g1, inst.g2),
                StarVariant::SameSupport => {
                    let g2 = GreenObject::random(model, inst.g1.support.clone(), inst.g2.weight, &mut r)?;
                    (inst.g1, g2)
                }
                StarVariant::AMap => {
                    let group = model.green_group(&inst.g2.support, inst.g2.weight)?;
                    let n = group.degree();
                    let x = random_vec(&mut r, group.pair().source().dim(n - 1));
                    let class = group.a_map(&x);
                    let designated = group.cl(&class);
                    let g2 = GreenObject::new(model, inst.g2.support.clone(), inst.g2.weight, class, designated)?;
                    (inst.g1, g2)
                }
            };
            let cover = Cover::new(model.points(), g1.support.clone(), g2.support.clone())?;
            let partition = Partition::random(&cover, &mut r);
            std::fs::create_dir_all(out).map_err(|e| input(Error::input(format!("{}: {e}", out.display()))))?;
            let doc = CoverDoc::new(FiberDoc::Shipped(FIBER_NAMES[idx].into()), &partition, &cover, None);
            write_json(&out.join("cover.json"), &doc)?;
            write_json(&out.join("g1.json"), &GreenDoc::from_green(&g1))?;
            write_json(&out.join("g2.json"), &GreenDoc::from_green(&g2))?;
            Ok(Report {
                json: json!({ "written": ["cover.json", "g1.json", "g2.json"], "fiber": FIBER_NAMES[idx], "weights": [g1.weight, g2.weight] }),
                human: format!(
                    "wrote cover.json, g1.json, g2.json to {} (fiber {}, weights {} and {})\n",
                    out.display(),
                    FIBER_NAMES[idx],
                    g1.weight,
                    g2.weight
                ),
                ok: true,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Cohomology { path, algebra, weight, degree } => cmd_cohomology(path.as_deref(), algebra.as_deref(), *weight, *degree),
        Command::Star { cover, g1, g2, mode } => cmd_star(cover, g1, g2, *mode),
        Command::Verify { suite } => cmd_verify(suite, cli.seed, cli.count),
        Command::Height { kind } => cmd_height(kind, cli.precision),
        Command::Sample { kind } => cmd_sample(kind, cli.seed),
    };
    match result {
        Ok(mut r) => {
            match cli.format {
                Format::Json => {
                    r.json["seed"] = json!(cli.seed);
                    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&r.json).expect("json"));
                }
                Format::Human => {
                    let _ = write!(std::io::stdout(), "seed {}\n{}", cli.seed, r.human);
                }
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let (code, kind, e) = match f {
                Failure::Input(e) => (2, "input", e),
                Failure::Law(e) => (1, "invariant", e),
            };
            match cli.format {
                Format::Json => eprintln!("{}", json!({ "error": e.to_string(), "kind": kind, "seed": cli.seed })),
                Format::Human => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}

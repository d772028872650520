//! Command-line surface over the cubecode library.
//!
//! Every subcommand is a pure function of its arguments and input files:
//! identical invocations produce byte-identical output. Exit codes: 0 on
//! success, 1 on a domain error (bad input data, imperfect preconditions,
//! exceeded budgets, census/formula mismatch), 2 on a usage error.

use std::collections::BTreeSet;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use cubecode::json::{parse_code_input, CodeInput};
use cubecode::num_bigint::BigUint;
use cubecode::{
    admissible_structures, associated_permutation, cartesian_code, cartesian_product,
    cartesian_product_linear, count_all_2d, count_isomorphism_classes_maximal, cyclic_family,
    enumerate_2d, enumerate_ordered_maximal, existence, horizontal_code, is_maximal, lc_code,
    linear_construction, nonlinear_construction, oracle_all_perfect, ordering_permutation,
    perfect_generator_matrix, section, t_inverse, vertical_code, Code, LinearCode, Params,
    Perfection,
};

#[derive(Parser)]
#[command(
    name = "cubecode",
    version,
    about = "Perfect codes in the maximum metric on the q-ary torus Z_q^n",
    propagate_version = true
)]
struct Cli {
    /// Output format: pretty JSON, JSON lines, or a plain-text summary.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Accepted for reproducibility plumbing; every current subcommand is
    /// fully deterministic, so the value is unused.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Cell budget for exhaustive searches and code expansion.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_cells: u64,

    /// Matrix budget for the ordered-code enumeration.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_matrices: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Jsonl,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check perfection and report the invariants of a code
    Verify(VerifyArgs),
    /// Build a code by one of the known constructions
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Enumerate codes or equivalence classes for a parameter set
    Enumerate(EnumerateArgs),
    /// Full structural report for a single linear code
    Classify(InputArg),
    /// Closed-form counts and existence tests
    Count {
        #[command(subcommand)]
        what: CountCmd,
    },
    /// Exhaustively search a torus for every perfect code
    Census(ParamArgs),
    /// Draw a two-dimensional code as a character grid
    Render(RenderArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Code JSON ({"q","n","words"} or {"q","gen"}); "-" reads stdin.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Args)]
struct InputArg {
    /// Code JSON ({"q","n","words"} or {"q","gen"}); "-" reads stdin.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(short, long)]
    n: usize,
    #[arg(short, long)]
    e: i64,
    #[arg(short, long)]
    q: i64,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Enumerate every ordered code (maximal regime only).
    #[arg(long)]
    ordered: bool,
    /// Synonym of --ordered: the regime where the enumeration is complete.
    #[arg(long)]
    maximal: bool,
    /// Report the plane family with its isometry and isomorphism classes.
    #[arg(long)]
    classes: bool,
    /// Exhaustive search, cross-checked against the closed-form count.
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// The scaled lattice (2e+1)Z^n
    Cartesian(ParamArgs),
    /// The plane family member with parameter k
    Lc {
        #[arg(short, long)]
        e: i64,
        #[arg(short, long)]
        q: i64,
        #[arg(short, long, allow_negative_numbers = true)]
        k: i64,
    },
    /// The single-generator code of an n-cyclic pair
    Cyclic(ParamArgs),
    /// Plane code from a diagonal offset and one height per period
    Horizontal {
        #[arg(short, long)]
        e: i64,
        #[arg(short, long)]
        q: i64,
        #[arg(short, long)]
        a: i64,
        /// Comma-separated heights, one per period (t values).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        heights: Vec<i64>,
    },
    /// Transpose of horizontal: offsets run down the second axis
    Vertical {
        #[arg(short, long)]
        e: i64,
        #[arg(short, long)]
        q: i64,
        #[arg(short, long)]
        a: i64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        heights: Vec<i64>,
    },
    /// Cartesian product of two codes over the same alphabet
    Product {
        /// Code JSON files; "-" reads one of them from stdin.
        first: String,
        second: String,
    },
    /// One-dimension-up extension of a linear code by a t-th part x
    LinearExtension {
        #[arg(default_value = "-")]
        input: String,
        #[arg(short, long)]
        e: i64,
        /// Comma-separated coordinates of x; t*x must lie in the code.
        #[arg(short, long, value_delimiter = ',', allow_negative_numbers = true)]
        x: Vec<i64>,
    },
    /// One-dimension-up extension by a height for every codeword
    Nonlinear {
        #[arg(default_value = "-")]
        input: String,
        /// Comma-separated heights, one per codeword in sorted word order.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        heights: Vec<i64>,
    },
    /// Project a code onto the axes not listed
    Section {
        #[arg(default_value = "-")]
        input: String,
        /// Comma-separated 1-based axes to drop.
        #[arg(long, value_delimiter = ',')]
        axes: Vec<usize>,
    },
    /// Representatives of the t-th parts of a linear code
    TInverse {
        #[arg(default_value = "-")]
        input: String,
        #[arg(short, long)]
        e: i64,
    },
}

#[derive(Subcommand)]
enum CountCmd {
    /// Number of distinct perfect plane codes for (e, q)
    All2d {
        #[arg(short, long)]
        e: i64,
        #[arg(short, long)]
        q: i64,
    },
    /// Isomorphism classes of ordered codes in the maximal regime
    Maximal {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        e: i64,
    },
    /// What the alphabet size alone decides about existence
    Existence {
        #[arg(short, long)]
        q: i64,
    },
    /// Achievable group structures for a parameter set
    Admissible(ParamArgs),
}

#[derive(Args)]
struct RenderArgs {
    /// Code JSON ({"q","n","words"} or {"q","gen"}); "-" reads stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Mark the interiors of the packing balls with 'o'.
    #[arg(long)]
    balls: bool,
}

/// A finished command: the JSON payload, optional per-line items for
/// jsonl output of lists, and a plain-text summary.
struct Outcome {
    payload: Value,
    items: Option<Vec<Value>>,
    text: String,
    warnings: Vec<String>,
}

impl Outcome {
    fn single(payload: Value, text: String) -> Outcome {
        Outcome { payload, items: None, text, warnings: Vec::new() }
    }
}

type CmdResult = Result<Outcome, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            match cli.format {
                Format::Json => {
                    let doc = json!({
                        "status": "ok",
                        "warnings": out.warnings,
                        "payload": out.payload,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Jsonl => {
                    println!("{}", json!({ "status": "ok", "warnings": out.warnings }));
                    match out.items {
                        Some(items) => {
                            for item in items {
                                println!("{item}");
                            }
                        }
                        None => println!("{}", out.payload),
                    }
                }
                Format::Text => println!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            if cli.format != Format::Text {
                println!("{}", json!({ "status": "error", "error": msg }));
            }
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.cmd {
        Cmd::Verify(a) => cmd_verify(cli, a),
        Cmd::Construct { what } => cmd_construct(cli, what),
        Cmd::Enumerate(a) => cmd_enumerate(cli, a),
        Cmd::Classify(a) => cmd_classify(cli, a),
        Cmd::Count { what } => cmd_count(what),
        Cmd::Census(a) => cmd_census(cli, a),
        Cmd::Render(a) => cmd_render(cli, a),
    }
}

fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn read_input(path: &str) -> Result<CodeInput, String> {
    let src = read_source(path)?;
    parse_code_input(&src).map_err(|e| e.to_string())
}

fn read_code(path: &str, max_cells: u64) -> Result<Code, String> {
    read_input(path)?.into_code(max_cells as u128).map_err(|e| e.to_string())
}

fn lib<T>(r: cubecode::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn code_value<T: serde::Serialize>(c: &T) -> Value {
    serde_json::to_value(c).unwrap()
}

fn perm_string(perm: &[usize]) -> String {
    let parts: Vec<String> = perm.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(" "))
}

/// Shared verification fields: perfection outcome plus type data when the
/// packing radius is defined.
fn perfection_fields(doc: &mut Map<String, Value>, perf: &Perfection) {
    doc.insert("perfect".into(), json!(perf.perfect));
    doc.insert("e".into(), json!(perf.e));
    doc.insert("cardinality".into(), json!(perf.cardinality));
    doc.insert("min_distance".into(), json!(perf.min_distance));
    if let Some(f) = &perf.failure {
        doc.insert("failure".into(), json!(f));
    }
}

fn cmd_verify(_cli: &Cli, a: &VerifyArgs) -> CmdResult {
    let mut doc = Map::new();
    let mut warnings = Vec::new();
    let mut tail = Vec::new();

    // Word lists keep the explicit Code; generator input and linear word
    // sets also get the LinearCode view for structure and permutations.
    let (words, linear): (Option<Code>, Option<LinearCode>) = match read_input(&a.input)? {
        CodeInput::Generators(gj) => (None, Some(lib(gj.try_into())?)),
        CodeInput::Words(cj) => {
            let c: Code = lib(cj.clone().try_into())?;
            let l = if c.is_linear_set() {
                Some(lib(LinearCode::from_generators(cj.q, &cj.words))?)
            } else {
                None
            };
            (Some(c), l)
        }
    };
    let (q, perf) = match (&words, &linear) {
        (Some(c), _) => (c.q(), lib(c.is_perfect())?),
        (None, Some(l)) => (l.q(), lib(l.is_perfect())?),
        (None, None) => unreachable!(),
    };
    let n = words.as_ref().map(Code::dim).or(linear.as_ref().map(LinearCode::dim)).unwrap();
    doc.insert("q".into(), json!(q));
    doc.insert("n".into(), json!(n));
    doc.insert("linear".into(), json!(linear.is_some()));
    perfection_fields(&mut doc, &perf);
    let head = format!(
        "{} of {} words over Z_{q}: {}",
        if linear.is_some() { "linear code" } else { "code" },
        perf.cardinality,
        if perf.perfect {
            format!("perfect with e = {}", perf.e.unwrap())
        } else {
            format!("not perfect ({})", perf.failure.as_deref().unwrap_or("see report"))
        }
    );

    if let Some(e) = perf.e {
        let types: Vec<usize> = match (&words, &linear) {
            (Some(c), _) => lib(c.types(e))?.into_iter().collect(),
            (None, Some(l)) => lib(l.types(e))?.into_iter().collect(),
            (None, None) => unreachable!(),
        };
        doc.insert("standard".into(), json!(!types.is_empty()));
        doc.insert("types".into(), json!(types));
        tail.push(format!("invariant axes {types:?}"));
    }
    if let Some(l) = &linear {
        let st = lib(l.group_structure())?;
        doc.insert("structure".into(), json!(st.to_string()));
        doc.insert("chain".into(), json!(st.chain()));
        tail.push(format!("structure {st}"));
        if perf.perfect {
            let p = lib(Params::new(l.dim(), perf.e.unwrap(), l.q()))?;
            match associated_permutation(&p, l) {
                Ok(rec) => {
                    doc.insert("permutation".into(), json!(rec.perm));
                    tail.push(format!("permutation {}", perm_string(&rec.perm)));
                    if let Ok(theta) = ordering_permutation(&p, l) {
                        doc.insert("ordering".into(), json!(theta.permutation()));
                    }
                }
                Err(e) => warnings.push(format!("associated permutation undefined: {e}")),
            }
        }
    }

    let text = if tail.is_empty() { head } else { format!("{head}; {}", tail.join(", ")) };
    Ok(Outcome { payload: Value::Object(doc), items: None, text, warnings })
}

fn cmd_construct(cli: &Cli, what: &ConstructCmd) -> CmdResult {
    let linear_out = |l: &LinearCode, label: String| -> Outcome {
        Outcome::single(
            code_value(l),
            format!("{label}: linear code over Z_{} in dimension {}", l.q(), l.dim()),
        )
    };
    match what {
        ConstructCmd::Cartesian(p) => {
            let params = lib(Params::new(p.n, p.e, p.q))?;
            let l = lib(cartesian_code(&params))?;
            Ok(linear_out(&l, format!("cartesian ({}, {}, {})", p.n, p.e, p.q)))
        }
        ConstructCmd::Lc { e, q, k } => {
            let l = lib(lc_code(*e, *q, *k))?;
            Ok(linear_out(&l, format!("plane family member k = {k}")))
        }
        ConstructCmd::Cyclic(p) => {
            let params = lib(Params::new(p.n, p.e, p.q))?;
            let l = lib(cyclic_family(&params))?;
            Ok(linear_out(&l, format!("cyclic ({}, {}, {})", p.n, p.e, p.q)))
        }
        ConstructCmd::Horizontal { e, q, a, heights } => {
            let p = lib(Params::new(2, *e, *q))?;
            let c = lib(horizontal_code(*a, heights, &p))?;
            Ok(Outcome::single(
                code_value(&c),
                format!("horizontal plane code with {} words", c.words().len()),
            ))
        }
        ConstructCmd::Vertical { e, q, a, heights } => {
            let p = lib(Params::new(2, *e, *q))?;
            let c = lib(vertical_code(*a, heights, &p))?;
            Ok(Outcome::single(
                code_value(&c),
                format!("vertical plane code with {} words", c.words().len()),
            ))
        }
        ConstructCmd::Product { first, second } => {
            let a = read_input(first)?;
            let b = read_input(second)?;
            if let (CodeInput::Generators(ga), CodeInput::Generators(gb)) = (&a, &b) {
                let la: LinearCode = lib(ga.clone().try_into())?;
                let lb: LinearCode = lib(gb.clone().try_into())?;
                let l = lib(cartesian_product_linear(&la, &lb))?;
                return Ok(linear_out(&l, "cartesian product".into()));
            }
            let ca = lib(a.into_code(cli.max_cells as u128))?;
            let cb = lib(b.into_code(cli.max_cells as u128))?;
            let c = lib(cartesian_product(&ca, &cb))?;
            Ok(Outcome::single(
                code_value(&c),
                format!("cartesian product with {} words in dimension {}", c.words().len(), c.dim()),
            ))
        }
        ConstructCmd::LinearExtension { input, e, x } => {
            let l: LinearCode = match read_input(input)? {
                CodeInput::Generators(gj) => lib(gj.try_into())?,
                CodeInput::Words(_) => {
                    return Err("linear extension needs a generator-matrix input".into())
                }
            };
            let p = lib(Params::new(l.dim(), *e, l.q()))?;
            let ext = lib(linear_construction(&p, &l, x))?;
            Ok(linear_out(&ext, "linear extension".into()))
        }
        ConstructCmd::Nonlinear { input, heights } => {
            let c = read_code(input, cli.max_cells)?;
            let ext = lib(nonlinear_construction(&c, heights))?;
            Ok(Outcome::single(
                code_value(&ext),
                format!("height extension with {} words in dimension {}", ext.words().len(), ext.dim()),
            ))
        }
        ConstructCmd::Section { input, axes } => {
            let c = read_code(input, cli.max_cells)?;
            let dropped: BTreeSet<usize> = axes.iter().copied().collect();
            let s = lib(section(&c, &dropped))?;
            Ok(Outcome::single(
                json!({ "code": code_value(&s.code), "kept_axes": s.kept_axes }),
                format!(
                    "section keeping axes {:?}: {} words in dimension {}",
                    s.kept_axes,
                    s.code.words().len(),
                    s.code.dim()
                ),
            ))
        }
        ConstructCmd::TInverse { input, e } => {
            let l: LinearCode = match read_input(input)? {
                CodeInput::Generators(gj) => lib(gj.try_into())?,
                CodeInput::Words(_) => {
                    return Err("t-th parts need a generator-matrix input".into())
                }
            };
            let p = lib(Params::new(l.dim(), *e, l.q()))?;
            let t = lib(p.t())?;
            let parts = lib(t_inverse(&l, t, cli.max_cells as u128))?;
            Ok(Outcome::single(
                code_value(&parts),
                format!("{} representatives of the t-th parts (t = {t})", parts.words().len()),
            ))
        }
    }
}

fn census_outcome(p: &Params, max_cells: u64) -> CmdResult {
    let codes = lib(oracle_all_perfect(p, max_cells as u128))?;
    let mut warnings = Vec::new();
    let mut formula = None;
    if p.n == 2 {
        let f = lib(count_all_2d(p.e, p.q))?;
        if BigUint::from(codes.len()) != f {
            return Err(format!(
                "census found {} codes but the closed form predicts {f}",
                codes.len()
            ));
        }
        formula = Some(f.to_string());
    } else {
        warnings.push("no closed-form cross-check for n != 2; census count is unchecked".into());
    }
    let items: Vec<Value> = codes.iter().map(code_value).collect();
    let text = match &formula {
        Some(f) => format!("{} perfect codes (closed form agrees: {f})", codes.len()),
        None => format!("{} perfect codes", codes.len()),
    };
    Ok(Outcome {
        payload: json!({
            "n": p.n, "e": p.e, "q": p.q,
            "count": codes.len(),
            "formula": formula,
            "codes": items.clone(),
        }),
        items: Some(items),
        text,
        warnings,
    })
}

fn cmd_census(cli: &Cli, a: &ParamArgs) -> CmdResult {
    let p = lib(Params::new(a.n, a.e, a.q))?;
    census_outcome(&p, cli.max_cells)
}

fn cmd_enumerate(cli: &Cli, a: &EnumerateArgs) -> CmdResult {
    let p = lib(Params::new(a.params.n, a.params.e, a.params.q))?;
    if a.ordered || a.maximal {
        let rep = lib(enumerate_ordered_maximal(&p, cli.max_matrices as u128))?;
        let items: Vec<Value> = rep.classes.iter().map(code_value).collect();
        let text = format!(
            "{} ordered codes in {} classes ({}){}",
            rep.total,
            rep.classes.len(),
            rep.classes
                .iter()
                .map(|c| format!("{} of structure {}", c.members.len(), c.structure))
                .collect::<Vec<_>>()
                .join(", "),
            if rep.verified { "; every member re-verified by expansion" } else { "" }
        );
        return Ok(Outcome {
            payload: code_value(&rep),
            items: Some(items),
            text,
            warnings: Vec::new(),
        });
    }
    if a.classes {
        if p.n != 2 {
            return Err("--classes reports the plane family; pass -n 2".into());
        }
        let rep = lib(enumerate_2d(p.e, p.q))?;
        let items: Vec<Value> = rep.codes.iter().map(code_value).collect();
        let text = format!(
            "d1 = {}: {} codes, {} isometry classes, {} isomorphism classes",
            rep.d1,
            rep.codes.len(),
            rep.isometry_classes.len(),
            rep.isomorphism_classes.len()
        );
        return Ok(Outcome {
            payload: code_value(&rep),
            items: Some(items),
            text,
            warnings: Vec::new(),
        });
    }
    if a.oracle {
        return census_outcome(&p, cli.max_cells);
    }
    Err("pass one of --ordered/--maximal, --classes, or --oracle".into())
}

fn cmd_classify(cli: &Cli, a: &InputArg) -> CmdResult {
    let _ = cli;
    let l: LinearCode = match read_input(&a.input)? {
        CodeInput::Generators(gj) => lib(gj.try_into())?,
        CodeInput::Words(cj) => {
            let c: Code = lib(cj.clone().try_into())?;
            if !c.is_linear_set() {
                return Err(
                    "classification needs a linear code; the word set is not closed under addition"
                        .into(),
                );
            }
            lib(LinearCode::from_generators(cj.q, &cj.words))?
        }
    };
    let mut doc = Map::new();
    let mut warnings = Vec::new();
    doc.insert("q".into(), json!(l.q()));
    doc.insert("n".into(), json!(l.dim()));
    let st = lib(l.group_structure())?;
    doc.insert("structure".into(), json!(st.to_string()));
    doc.insert("chain".into(), json!(st.chain()));
    doc.insert("gen".into(), json!(lib(l.gen().to_i64_rows())?));
    let perf = lib(l.is_perfect())?;
    perfection_fields(&mut doc, &perf);
    let mut text = format!(
        "linear code over Z_{} in dimension {}, structure {}",
        l.q(),
        l.dim(),
        st
    );
    if perf.perfect {
        let e = perf.e.unwrap();
        let p = lib(Params::new(l.dim(), e, l.q()))?;
        doc.insert("maximal_params".into(), json!(lib(is_maximal(&p))?));
        let rec = lib(associated_permutation(&p, &l))?;
        doc.insert("permutation".into(), json!(rec.perm));
        let ordered = rec.perm.iter().copied().eq((1..=l.dim()).rev());
        doc.insert("ordered".into(), json!(ordered));
        let theta = lib(ordering_permutation(&p, &l))?;
        doc.insert("ordering".into(), json!(theta.permutation()));
        text = format!(
            "{text}; perfect with e = {e}, permutation {}, ordering {}",
            perm_string(&rec.perm),
            perm_string(&theta.permutation())
        );
        if ordered {
            let m = lib(perfect_generator_matrix(&p, &l))?;
            doc.insert("reduced_matrix".into(), json!(lib(m.to_i64_rows())?));
        }
    } else {
        warnings.push("code is not perfect; permutation data omitted".into());
        text = format!(
            "{text}; not perfect ({})",
            perf.failure.as_deref().unwrap_or("see report")
        );
    }
    Ok(Outcome { payload: Value::Object(doc), items: None, text, warnings })
}

fn cmd_count(what: &CountCmd) -> CmdResult {
    match what {
        CountCmd::All2d { e, q } => {
            let count = lib(count_all_2d(*e, *q))?;
            Ok(Outcome::single(
                json!({ "e": e, "q": q, "count": count.to_string() }),
                format!("{count} perfect plane codes for e = {e}, q = {q}"),
            ))
        }
        CountCmd::Maximal { n, e } => {
            let count = lib(count_isomorphism_classes_maximal(*n, *e))?;
            Ok(Outcome::single(
                json!({ "n": n, "e": e, "classes": count.to_string() }),
                format!("{count} isomorphism classes of ordered codes for n = {n}, e = {e}"),
            ))
        }
        CountCmd::Existence { q } => {
            let rep = lib(existence(*q))?;
            let text = format!(
                "q = {q}: nontrivial {}, non-cartesian plane {}, cyclic plane {}",
                rep.nontrivial, rep.noncartesian_2d, rep.cyclic_2d
            );
            Ok(Outcome::single(code_value(&rep), text))
        }
        CountCmd::Admissible(p) => {
            let params = lib(Params::new(p.n, p.e, p.q))?;
            let rep = lib(admissible_structures(&params))?;
            let names: Vec<String> = rep.structures.iter().map(|s| s.to_string()).collect();
            let chains: Vec<&[i64]> = rep.structures.iter().map(|s| s.chain()).collect();
            let text = format!(
                "{} structures{}: {}",
                names.len(),
                if rep.complete { "" } else { " (lower bound only)" },
                names.join(", ")
            );
            Ok(Outcome::single(
                json!({
                    "n": p.n, "e": p.e, "q": p.q,
                    "complete": rep.complete,
                    "structures": names,
                    "chains": chains,
                }),
                text,
            ))
        }
    }
}

fn cmd_render(cli: &Cli, a: &RenderArgs) -> CmdResult {
    let c = read_code(&a.input, cli.max_cells)?;
    if c.dim() != 2 {
        return Err(format!("render draws plane codes only; this one is {}-dimensional", c.dim()));
    }
    if c.q() > 60 {
        return Err(format!("torus too large to draw (q = {} > 60)", c.q()));
    }
    let q = c.q();
    let size = q as usize;
    let mut grid = vec![vec![b'.'; size]; size];
    let mut radius = None;
    if a.balls {
        let perf = lib(c.is_perfect())?;
        let e = perf
            .e
            .ok_or_else(|| "packing radius undefined; cannot draw balls".to_string())?;
        radius = Some(e);
        for w in c.words() {
            for dx in -e..=e {
                for dy in -e..=e {
                    let x = (w.coords()[0] + dx).rem_euclid(q) as usize;
                    let y = (w.coords()[1] + dy).rem_euclid(q) as usize;
                    grid[y][x] = b'o';
                }
            }
        }
    }
    for w in c.words() {
        grid[w.coords()[1] as usize][w.coords()[0] as usize] = b'C';
    }
    // origin at the lower left: highest row first
    let rows: Vec<String> =
        (0..size).rev().map(|y| String::from_utf8(grid[y].clone()).unwrap()).collect();
    let text = rows.join("\n");
    Ok(Outcome::single(
        json!({ "q": q, "e": radius, "grid": rows }),
        text,
    ))
}

//! Command line frontend. Every subcommand reads a model file (or builds a
//! generated one), computes with exact arithmetic, and prints JSON to stdout
//! (`--text` switches to a human-readable rendering). Exit codes: 0 success,
//! 1 a check ran and produced witnesses, 2 usage or schema errors. Output is
//! a deterministic function of the arguments and the model file; the
//! environment variable GGK_SEED is reserved and unused.

use clap::{Args, Parser, Subcommand};
use greenfan_core::exact::{primitive, Int};
use greenfan_core::fan::{ray_reduction, recognize_arrangement, ChamberDecomposition};
use greenfan_core::forms::{
    check_antisymmetry, check_congruence, check_forms, check_invariance, Report,
};
use greenfan_core::groupoid::{
    build_quiver, green_paths, green_presentation, normal_form, tietze_simplify, vertex_group,
    words_equal_bounded, GroupPresentation, PathWord, WordEquality,
};
use greenfan_core::model::{generate_dihedral, generate_sigma_swap, load_model, FanModel};
use greenfan_core::polygon::build_fan_model;
use greenfan_core::render::render_svg;
use num::ToPrimitive;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "greenfan",
    version,
    about = "Exact fans, green paths, and groupoid presentations of rigid-object models",
    long_about = "Exact fans, green paths, and groupoid presentations of rigid-object models.\n\
        All output is deterministic: rerunning a command on the same model file\n\
        reproduces it byte for byte. The environment variable GGK_SEED is reserved\n\
        for future use and currently ignored."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a built-in example model as JSON
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Chamber-decomposition checks and surgery
    Fan {
        #[command(subcommand)]
        action: FanAction,
    },
    /// Minimal galleries or green paths between two chambers
    Paths(PathsArgs),
    /// Presentations and word problems of the green groupoid
    Groupoid {
        #[command(subcommand)]
        action: GroupoidAction,
    },
    /// Bilinear-form checks
    Check {
        #[command(subcommand)]
        which: CheckKind,
    },
    /// Draw a 2-D model as an SVG figure
    Render(RenderArgs),
}

#[derive(Args)]
struct ModelOpt {
    /// Model JSON file
    #[arg(short = 'm', long = "model")]
    model: PathBuf,
    /// Human-readable text instead of JSON
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct OutOpt {
    /// Output file; stdout when omitted
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Polygon-diagonal model of rank n
    #[command(name = "a_n")]
    AN {
        /// Rank of the model (polygon with n + 3 vertices)
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Fan of m lines through the origin with rational slopes
    Dihedral {
        /// Number of lines, at least 1
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Two-object rank-one model with endomorphism parameter c
    #[command(name = "sigma_swap")]
    SigmaSwap {
        /// Self-extension count, at least 1
        #[arg(long)]
        c: u64,
        #[command(flatten)]
        out: OutOpt,
    },
}

#[derive(Subcommand)]
enum FanAction {
    /// Check that the chambers tile without overlap
    Verify(ModelOpt),
    /// Decide whether the fan is a hyperplane arrangement
    Recognize(ModelOpt),
    /// Project the decomposition along an extremal ray
    Reduce {
        #[command(flatten)]
        model: ModelOpt,
        /// Indecomposable label naming the ray
        #[arg(long)]
        ray: String,
        #[command(flatten)]
        out: OutOpt,
    },
}

#[derive(Args)]
struct PathsArgs {
    #[command(flatten)]
    model: ModelOpt,
    /// Source chamber label
    #[arg(long)]
    from: String,
    /// Target chamber label
    #[arg(long)]
    to: String,
    /// Green paths with respect to the source instead of minimal galleries
    #[arg(long)]
    green: bool,
}

#[derive(Subcommand)]
enum GroupoidAction {
    /// Generators and relations of the green groupoid
    Presentation(ModelOpt),
    /// Vertex group at a chamber, raw and simplified
    VertexGroup {
        #[command(flatten)]
        model: ModelOpt,
        /// Chamber label
        #[arg(long)]
        at: String,
    },
    /// Canonical factorization of a word into green segments
    NormalForm {
        #[command(flatten)]
        model: ModelOpt,
        /// Word as steps "A>B" (forward) or "A<B" (backward), space or comma separated
        #[arg(long)]
        word: String,
    },
    /// Bounded search deciding whether two words agree in the groupoid
    WordEq {
        #[command(flatten)]
        model: ModelOpt,
        /// First word
        #[arg(long)]
        w1: String,
        /// Second word
        #[arg(long)]
        w2: String,
        /// Maximum intermediate word length to explore
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum CheckKind {
    /// Cartan matrices: positive definite symmetrization, constant determinant
    Forms(ModelOpt),
    /// The pairing of transported index vectors does not depend on the reference
    Invariance(ModelOpt),
    /// The label permutation negates index vectors
    Antisymmetry(ModelOpt),
    /// Cartan forms at two references are congruent by the basis change
    Congruence {
        #[command(flatten)]
        model: ModelOpt,
        /// First reference label; all pairs when omitted
        #[arg(long)]
        from: Option<String>,
        /// Second reference label; all pairs when omitted
        #[arg(long)]
        to: Option<String>,
    },
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    model: ModelOpt,
    #[command(flatten)]
    out: OutOpt,
}

fn ints_json(v: &[Int]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| {
                x.to_i64()
                    .map(Value::from)
                    .unwrap_or_else(|| Value::from(x.to_string()))
            })
            .collect(),
    )
}

fn decomposition_json(decomposition: &ChamberDecomposition) -> Value {
    json!({
        "dim": decomposition.ambient_dim(),
        "chambers": decomposition
            .chambers()
            .iter()
            .map(|(label, cone)| {
                json!({
                    "label": label,
                    "rays": cone.generators().iter().map(|r| ints_json(r)).collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn report_text(report: &Report) -> String {
    let mut out = format!(
        "check: {}\nmodel: {}\nstatus: {}\n",
        report.check,
        report.model,
        if report.passed { "pass" } else { "fail" }
    );
    for w in &report.witnesses {
        out.push_str(&format!("witness: {w}\n"));
    }
    out
}

fn emit_report(report: &Report, text: bool) -> u8 {
    if text {
        print!("{}", report_text(report));
    } else {
        print_json(&report.to_json());
    }
    u8::from(!report.passed)
}

/// Writes `content` to `path`, or prints it when no path is given. The
/// content is always fully computed before the file is opened, so failures
/// never leave partial output behind.
fn deliver(out: &Option<PathBuf>, content: &str, text: bool) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))?;
            if text {
                println!("wrote {}", path.display());
            } else {
                print_json(&json!({ "written": path.display().to_string() }));
            }
            Ok(())
        }
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<FanModel, String> {
    load_model(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn group_json(p: &GroupPresentation) -> Value {
    let mut v = p.to_json();
    v["abelianization"] = Value::Array(
        p.abelianization()
            .iter()
            .map(|d| {
                d.to_i64()
                    .map(Value::from)
                    .unwrap_or_else(|| Value::from(d.to_string()))
            })
            .collect(),
    );
    v
}

fn run_generate(kind: GenerateKind) -> Result<u8, String> {
    let (model, out) = match kind {
        GenerateKind::AN { n, out } => (build_fan_model(n).map_err(|e| e.to_string())?, out),
        GenerateKind::Dihedral { m, out } => {
            (generate_dihedral(m).map_err(|e| e.to_string())?, out)
        }
        GenerateKind::SigmaSwap { c, out } => {
            (generate_sigma_swap(c).map_err(|e| e.to_string())?, out)
        }
    };
    // Generated models must pass their own verifier before being written.
    let decomposition = model.decomposition().map_err(|e| e.to_string())?;
    let verification = decomposition.verify();
    if !verification.ok() {
        return Err(format!(
            "generated model fails verification: {}",
            verification.violations.join("; ")
        ));
    }
    let text = model.to_canonical_string().map_err(|e| e.to_string())?;
    deliver(&out.out, &text, false)?;
    Ok(0)
}

fn run_fan(action: FanAction) -> Result<u8, String> {
    match action {
        FanAction::Verify(opt) => {
            let model = load(&opt.model)?;
            let decomposition = model.decomposition().map_err(|e| e.to_string())?;
            let verification = decomposition.verify();
            let report = Report {
                check: "fan-verify".to_string(),
                model: model.reference.clone(),
                passed: verification.ok(),
                witnesses: verification.violations.clone(),
            };
            Ok(emit_report(&report, opt.text))
        }
        FanAction::Recognize(opt) => {
            let model = load(&opt.model)?;
            let decomposition = model.decomposition().map_err(|e| e.to_string())?;
            let recognition = recognize_arrangement(&decomposition).map_err(|e| e.to_string())?;
            let witnesses: Vec<String> = recognition.witness.clone().into_iter().collect();
            if opt.text {
                println!(
                    "arrangement: {}",
                    if recognition.is_arrangement { "yes" } else { "no" }
                );
                if let Some(arr) = &recognition.arrangement {
                    for h in &arr.hyperplanes {
                        println!("hyperplane normal: {}", ints_json(h));
                    }
                }
                for w in &witnesses {
                    println!("witness: {w}");
                }
            } else {
                print_json(&json!({
                    "check": "fan-recognize",
                    "model": model.reference,
                    "status": if recognition.is_arrangement { "pass" } else { "fail" },
                    "hyperplanes": recognition
                        .arrangement
                        .as_ref()
                        .map(|arr| arr.hyperplanes.iter().map(|h| ints_json(h)).collect::<Vec<_>>()),
                    "witnesses": witnesses,
                }));
            }
            Ok(u8::from(!recognition.is_arrangement))
        }
        FanAction::Reduce { model, ray, out } => {
            let m = load(&model.model)?;
            let decomposition = m.decomposition().map_err(|e| e.to_string())?;
            let index = m
                .index_of(&ray)
                .ok_or_else(|| format!("unknown indecomposable label: {ray}"))?;
            let direction = primitive(index).map_err(|e| e.to_string())?;
            let reduced = ray_reduction(&decomposition, &direction).map_err(|e| e.to_string())?;
            let value = decomposition_json(&reduced);
            let content = format!(
                "{}\n",
                serde_json::to_string_pretty(&value).expect("serializable")
            );
            deliver(&out.out, &content, model.text)?;
            Ok(0)
        }
    }
}

fn run_paths(args: PathsArgs) -> Result<u8, String> {
    let model = load(&args.model.model)?;
    let chains: Vec<Vec<String>> = if args.green {
        green_paths(&model, &args.from, &args.to)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|w| w.vertex_sequence())
            .collect()
    } else {
        let decomposition = model.decomposition().map_err(|e| e.to_string())?;
        decomposition
            .minimal_galleries(&args.from, &args.to)
            .map_err(|e| e.to_string())?
    };
    if args.model.text {
        for c in &chains {
            println!("{}", c.join(" -> "));
        }
    } else {
        print_json(&json!({
            "from": args.from,
            "to": args.to,
            "green": args.green,
            "paths": chains,
        }));
    }
    Ok(0)
}

fn run_groupoid(action: GroupoidAction) -> Result<u8, String> {
    match action {
        GroupoidAction::Presentation(opt) => {
            let model = load(&opt.model)?;
            let p = green_presentation(&model).map_err(|e| e.to_string())?;
            if opt.text {
                print!("{}", p.to_text());
            } else {
                print_json(&p.to_json());
            }
            Ok(0)
        }
        GroupoidAction::VertexGroup { model, at } => {
            let m = load(&model.model)?;
            let p = green_presentation(&m).map_err(|e| e.to_string())?;
            let raw = vertex_group(&p, &at).map_err(|e| e.to_string())?;
            let simplified = tietze_simplify(&raw);
            if model.text {
                println!("vertex group at {at}");
                print!("{}", raw.to_text());
                println!("simplified:");
                print!("{}", simplified.to_text());
            } else {
                print_json(&json!({
                    "at": at,
                    "group": group_json(&raw),
                    "simplified": group_json(&simplified),
                }));
            }
            Ok(0)
        }
        GroupoidAction::NormalForm { model, word } => {
            let m = load(&model.model)?;
            let quiver = build_quiver(&m).map_err(|e| e.to_string())?;
            let w = PathWord::parse(&quiver, &word).map_err(|e| e.to_string())?;
            let segments = normal_form(&m, &w).map_err(|e| e.to_string())?;
            if model.text {
                if segments.is_empty() {
                    println!("(empty word)");
                }
                for s in &segments {
                    println!("{}", s.render());
                }
            } else {
                print_json(&json!({
                    "word": w.render(),
                    "segments": segments.iter().map(|s| s.render()).collect::<Vec<_>>(),
                    "vertices": segments
                        .iter()
                        .map(|s| s.vertex_sequence())
                        .collect::<Vec<_>>(),
                }));
            }
            Ok(0)
        }
        GroupoidAction::WordEq {
            model,
            w1,
            w2,
            depth,
        } => {
            let m = load(&model.model)?;
            let quiver = build_quiver(&m).map_err(|e| e.to_string())?;
            let p = green_presentation(&m).map_err(|e| e.to_string())?;
            let a = PathWord::parse(&quiver, &w1).map_err(|e| e.to_string())?;
            let b = PathWord::parse(&quiver, &w2).map_err(|e| e.to_string())?;
            let outcome = words_equal_bounded(&p, &a, &b, depth).map_err(|e| e.to_string())?;
            let verdict = match outcome {
                WordEquality::Equal => "equal",
                WordEquality::DistinctUpToDepth => "distinct-up-to-depth",
            };
            if model.text {
                println!("{verdict}");
            } else {
                print_json(&json!({
                    "w1": a.render(),
                    "w2": b.render(),
                    "depth": depth,
                    "result": verdict,
                }));
            }
            Ok(0)
        }
    }
}

fn run_check(which: CheckKind) -> Result<u8, String> {
    match which {
        CheckKind::Forms(opt) => {
            let model = load(&opt.model)?;
            let report = check_forms(&model).map_err(|e| e.to_string())?;
            Ok(emit_report(&report, opt.text))
        }
        CheckKind::Invariance(opt) => {
            let model = load(&opt.model)?;
            let report = check_invariance(&model).map_err(|e| e.to_string())?;
            Ok(emit_report(&report, opt.text))
        }
        CheckKind::Antisymmetry(opt) => {
            let model = load(&opt.model)?;
            let report = check_antisymmetry(&model).map_err(|e| e.to_string())?;
            Ok(emit_report(&report, opt.text))
        }
        CheckKind::Congruence { model, from, to } => {
            let m = load(&model.model)?;
            let pairs: Vec<(String, String)> = match (from, to) {
                (Some(a), Some(b)) => vec![(a, b)],
                (None, None) => {
                    let labels: Vec<String> =
                        m.maximal_rigid.iter().map(|r| r.label.clone()).collect();
                    let mut out = Vec::new();
                    for i in 0..labels.len() {
                        for j in (i + 1)..labels.len() {
                            out.push((labels[i].clone(), labels[j].clone()));
                        }
                    }
                    out
                }
                _ => return Err("--from and --to must be given together".to_string()),
            };
            let mut witnesses = Vec::new();
            for (a, b) in &pairs {
                let report = check_congruence(&m, a, b).map_err(|e| e.to_string())?;
                for w in report.witnesses {
                    witnesses.push(format!("pair ({a}, {b}): {w}"));
                }
            }
            let report = Report {
                check: "congruence".to_string(),
                model: m.reference.clone(),
                passed: witnesses.is_empty(),
                witnesses,
            };
            Ok(emit_report(&report, model.text))
        }
    }
}

fn run_render(args: RenderArgs) -> Result<u8, String> {
    let model = load(&args.model.model)?;
    let svg = render_svg(&model).map_err(|e| e.to_string())?;
    deliver(&args.out.out, &svg, args.model.text)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Generate { kind } => run_generate(kind),
        Command::Fan { action } => run_fan(action),
        Command::Paths(args) => run_paths(args),
        Command::Groupoid { action } => run_groupoid(action),
        Command::Check { which } => run_check(which),
        Command::Render(args) => run_render(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

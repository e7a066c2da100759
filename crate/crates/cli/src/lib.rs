//! `isg analyze`: criteria, direct verdicts and consistency checks for one
//! instance or a seeded random corpus.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use isg_core::criteria::{locally_contracting_search, SearchOutcome};
use isg_core::frontend::corpus::generate_corpus;
use isg_core::frontend::fixtures::Fixture;
use isg_core::frontend::parse::{parse_spec, print_spec, SemigroupSpec};
use isg_core::frontend::report::{emit_dot, emit_report, ErrorDocument, ReportDocument};
use isg_core::harness::{check_instance_with, HarnessConfig, HarnessSummary};
use isg_core::{build_germ_groupoid, standard_action, Error, InverseSemigroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_THEOREM_VIOLATION: i32 = 3;

#[derive(Parser)]
#[command(name = "isg", version, about = "Tight groupoids of finite inverse semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an `.isg` file, a named fixture, or a random corpus.
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["file", "fixture", "corpus"])))]
struct AnalyzeArgs {
    /// `.isg` input file
    file: Option<PathBuf>,
    /// Named fixture: I2, B2, Z2z, E4, In(n), Bn(n), Z<n>z, or a sum A+B
    #[arg(long)]
    fixture: Option<String>,
    /// Number of random instances to generate and check
    #[arg(long)]
    corpus: Option<usize>,
    /// Seed for the corpus generator
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the groupoid of germs as DOT here
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Check::All)]
    check: Check,
    /// Bound on |F| in the bounded contraction search (default 4, or ISG_MAX_F)
    #[arg(long = "max-F", value_name = "K")]
    max_f: Option<usize>,
    /// Include wall-clock timings in JSON output
    #[arg(long)]
    timing: bool,
    /// Directory for reproducer files written on theorem violations
    #[arg(long, default_value = ".")]
    reproducer_dir: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Hausdorff,
    Esspr,
    Minimal,
    Loccontr,
    All,
}

struct Outcome {
    name: String,
    spec: SemigroupSpec,
    result: Result<(HarnessSummary, ReportDocument), Error>,
}

fn analyze(name: &str, spec: SemigroupSpec, s: &InverseSemigroup, config: HarnessConfig, timing: bool) -> Outcome {
    let start = Instant::now();
    let result = check_instance_with(s, config).map(|summary| {
        let mut doc = ReportDocument::new(name, s, &summary.report);
        if timing {
            doc.timing_ms = Some(start.elapsed().as_millis() as u64);
        }
        (summary, doc)
    });
    Outcome { name: name.to_string(), spec, result }
}

fn write_file(path: &Path, contents: &str, err: &mut dyn Write) -> bool {
    match fs::write(path, contents) {
        Ok(()) => true,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            false
        }
    }
}

fn write_reproducer(dir: &Path, o: &Outcome, detail: &str, err: &mut dyn Write) {
    let path = dir.join(format!("{}.isg", o.name.replace(|c: char| !c.is_ascii_alphanumeric() && c != '_', "_")));
    let mut text = String::new();
    for line in detail.lines() {
        text.push_str(&format!("# {line}\n"));
    }
    text.push_str(&print_spec(&o.spec));
    if write_file(&path, &text, err) {
        let _ = writeln!(err, "reproducer written to {}", path.display());
    }
}

/// Exit code for a finished analysis; reports violations on `err`.
fn violation_code(o: &Outcome, dir: &Path, err: &mut dyn Write) -> Option<i32> {
    match &o.result {
        Err(e @ Error::TheoremViolation { .. }) => {
            let _ = writeln!(err, "{}: {e}", o.name);
            write_reproducer(dir, o, &e.to_string(), err);
            Some(EXIT_THEOREM_VIOLATION)
        }
        Err(e) => {
            let _ = writeln!(err, "{}: error: {e}", o.name);
            Some(EXIT_ERROR)
        }
        Ok((summary, _)) if !summary.all_passed() => {
            let detail: Vec<String> = summary
                .failures()
                .map(|c| format!("check {} failed: {}", c.name, c.detail.as_deref().unwrap_or("")))
                .collect();
            for line in &detail {
                let _ = writeln!(err, "{}: {line}", o.name);
            }
            write_reproducer(dir, o, &detail.join("\n"), err);
            Some(EXIT_THEOREM_VIOLATION)
        }
        Ok(_) => None,
    }
}

fn verdict_line(out: &mut dyn Write, property: &str, criterion: bool, direct: bool, witness: Option<String>) {
    let _ = write!(out, "{property}: {criterion} (criterion {criterion}, direct {direct})");
    match witness {
        Some(w) => {
            let _ = writeln!(out, " witness {w}");
        }
        None => {
            let _ = writeln!(out);
        }
    }
}

fn print_single(out: &mut dyn Write, s: &InverseSemigroup, summary: &HarnessSummary, check: Check, max_f: usize) {
    let r = &summary.report;
    let l = |i: usize| s.label(i).to_string();
    let _ = writeln!(
        out,
        "instance: order {}, idempotents {}, spectrum {}, arrows {}, units {}",
        s.len(),
        s.idempotents().len(),
        r.spectrum_size,
        r.arrows,
        r.units
    );
    if matches!(check, Check::Hausdorff | Check::All) {
        verdict_line(out, "hausdorff", r.hausdorff.criterion, r.hausdorff.direct, None);
    }
    if matches!(check, Check::Esspr | Check::All) {
        let w = r.top_free_witness.witness.map(|w| format!("(s={}, e={})", l(w.s), l(w.e)));
        let p = r.essentially_principal;
        verdict_line(out, "essentially_principal", p.criterion, p.direct, w);
    }
    if matches!(check, Check::Minimal | Check::All) {
        let w = r.minimal_witness.failure.map(|(e, f)| format!("(e={}, f={})", l(e), l(f)));
        verdict_line(out, "minimal", r.minimal.criterion, r.minimal.direct, w);
    }
    if matches!(check, Check::Loccontr | Check::All) {
        let w = r.locally_contracting_witness.failure.map(|e| format!("(e={})", l(e)));
        let p = r.locally_contracting;
        verdict_line(out, "locally_contracting", p.criterion, p.direct, w);
        let search = match locally_contracting_search(s, max_f) {
            SearchOutcome::Holds => "holds",
            SearchOutcome::Fails => "fails",
            SearchOutcome::SearchCapExceeded => "search cap exceeded",
        };
        let _ = writeln!(out, "bounded search (|F| <= {max_f}): {search}");
    }
    if check == Check::All {
        let f = &r.cstar_flags;
        let _ = writeln!(out, "flags: a={} b={} c={} d={}", f.a, f.b, f.c, f.d);
        for c in &f.conclusions {
            let _ = writeln!(out, "  {c}");
        }
    }
    let passed = summary.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "consistency: {passed}/{} checks pass", summary.checks.len());
}

fn load_single(args: &AnalyzeArgs) -> Result<(String, SemigroupSpec, InverseSemigroup), Error> {
    if let Some(name) = &args.fixture {
        let fixture: Fixture = name.parse()?;
        let s = fixture.build()?;
        let label = fixture.to_string();
        return Ok((label.clone(), SemigroupSpec::from_semigroup(&label, &s), s));
    }
    let path = args.file.as_ref().expect("clap requires an input");
    let text = fs::read_to_string(path)
        .map_err(|e| Error::PreconditionViolated(format!("cannot read {}: {e}", path.display())))?;
    let spec = parse_spec(&text)?;
    let s = spec.build()?;
    Ok((spec.name.clone(), spec, s))
}

fn run_analyze(args: AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut config = HarnessConfig::from_env();
    if let Some(k) = args.max_f {
        config.max_f = k;
    }

    if let Some(count) = args.corpus {
        let instances = generate_corpus(args.seed, count);
        let outcomes: Vec<Outcome> = instances
            .par_iter()
            .map(|inst| analyze(&inst.spec.name, inst.spec.clone(), &inst.semigroup, config, args.timing))
            .collect();
        let mut code = EXIT_OK;
        let mut docs = Vec::new();
        for (inst, o) in instances.iter().zip(&outcomes) {
            if let Some(c) = violation_code(o, &args.reproducer_dir, err) {
                code = code.max(c);
                continue;
            }
            let (summary, doc) = o.result.as_ref().expect("no violation");
            let _ = writeln!(
                out,
                "{}: order {}, idempotents {}, spectrum {}, arrows {}: {}/{} checks pass",
                o.name,
                inst.semigroup.len(),
                inst.semigroup.idempotents().len(),
                doc.instance.spectrum_size,
                doc.instance.arrows,
                summary.checks.len(),
                summary.checks.len()
            );
            docs.push(doc.clone());
        }
        let passed = docs.len();
        let _ = writeln!(out, "{passed}/{count} equivalence checks pass");
        if let Some(path) = &args.json {
            if !write_file(path, &emit_report(&docs), err) {
                code = code.max(EXIT_ERROR);
            }
        }
        return code;
    }

    let (name, spec, s) = match load_single(&args) {
        Ok(loaded) => loaded,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let outcome = analyze(&name, spec, &s, config, args.timing);
    if let (Err(e), Some(path)) = (&outcome.result, &args.json) {
        write_file(path, &emit_report(&ErrorDocument::new(&name, e)), err);
    }
    if let Some(code) = violation_code(&outcome, &args.reproducer_dir, err) {
        return code;
    }
    let (summary, doc) = outcome.result.as_ref().expect("no violation");
    let _ = writeln!(out, "{name}");
    print_single(out, &s, summary, args.check, config.max_f);

    let mut code = EXIT_OK;
    if let Some(path) = &args.json {
        if !write_file(path, &emit_report(doc), err) {
            code = EXIT_ERROR;
        }
    }
    if let Some(path) = &args.dot {
        let dot = s
            .tight_spectrum()
            .and_then(|spectrum| {
                let theta = standard_action(&s, &spectrum)?;
                let g = build_germ_groupoid(&theta)?;
                Ok(emit_dot(&g))
            });
        match dot {
            Ok(text) => {
                if !write_file(path, &text, err) {
                    code = EXIT_ERROR;
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                code = EXIT_ERROR;
            }
        }
    }
    code
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    match cli.command {
        Command::Analyze(args) => run_analyze(args, out, err),
    }
}

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use heisrep_core::fixtures;
use heisrep_core::lawrence::{
    burau, gassner, specialize_at_one, standard_disk_diagrams, substitution_check, BurauVariant, LaurentMatrix,
    Region, SubstitutionMap,
};
use heisrep_core::laurent::var_names;
use heisrep_core::linearize::{
    annihilator_certificate_for, iota_names, iota_r, iota_r_specialized_generators, suprataut_heis, tautological,
};
use heisrep_core::pairing::{augmentation_check, kernel_search, pair_1pt, pair_npt, Diagram, SearchBounds, SearchHit};
use heisrep_core::rep_one::{
    infinite_order_witness, kernel_certificate, ring_matrix_json, twist_word_matrix, CurveCatalog, TwistWord,
};
use heisrep_core::suite;
use heisrep_core::words::{eval_heisenberg, DiskLocalSystem, SurfaceBraidWord};
use heisrep_core::{HeisError, HeisRing, HeisenbergElement, Matrix, QuotientSpec, Result};

#[derive(Parser)]
#[command(name = "heisrep", version, about = "Heisenberg-twisted homological representations, exactly")]
struct Cli {
    /// Work in H_g / <σ^R>.
    #[arg(long, global = true, value_name = "R", conflicts_with = "finite")]
    mod_sigma: Option<u64>,
    /// Work in the finite quotient H_g / <a_i^R, b_i^R, σ^R>.
    #[arg(long, global = true, value_name = "R")]
    finite: Option<u64>,
    /// Surface genus; inferred from the input when omitted.
    #[arg(long, global = true, value_name = "G")]
    genus: Option<usize>,
    /// Number of configuration points.
    #[arg(long, global = true, value_name = "N")]
    n: Option<usize>,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Arithmetic in the Heisenberg group.
    Heis {
        #[command(subcommand)]
        op: HeisOp,
    },
    /// Twisted intersection pairing of a diagram file.
    Pair {
        #[arg(long)]
        file: String,
        /// Also report the augmentation against the signed count.
        #[arg(long)]
        augment: bool,
    },
    /// Twist actions on the first twisted homology.
    Rep {
        #[command(subcommand)]
        op: RepOp,
    },
    /// Linear models of the Heisenberg group and its group ring.
    Linearize {
        #[command(subcommand)]
        op: LinOp,
    },
    /// Burau (or Gassner) matrix of a braid word.
    Burau {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        word: String,
        #[arg(long)]
        reduced: bool,
        /// Gassner matrix instead; the braid must be pure.
        #[arg(long)]
        gassner: bool,
        /// Specialize all variables to 1.
        #[arg(long)]
        at_one: bool,
    },
    /// Lawrence representations inside the Heisenberg ones.
    Bridge {
        #[command(subcommand)]
        op: BridgeOp,
    },
    /// Run the verification battery.
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Run only these check ids.
        #[arg(long)]
        check: Vec<u8>,
    },
    /// Exhaustive bounded search for diagrams with vanishing pairing.
    Search {
        #[arg(long, default_value_t = 2)]
        max_k: usize,
        #[arg(long, default_value_t = 2)]
        exponent_bound: i64,
        #[arg(long, default_value_t = 0)]
        winding_bound: i64,
        /// Configuration sizes for n-point diagrams, comma separated.
        #[arg(long, value_delimiter = ',')]
        n_values: Vec<usize>,
        #[arg(long, default_value_t = 50_000_000)]
        limit: u128,
    },
    /// List the bundled fixtures, or print one.
    Fixtures { name: Option<String> },
}

#[derive(Subcommand)]
enum HeisOp {
    Mul { x: String, y: String },
    Inv { x: String },
    Pow {
        x: String,
        #[arg(allow_hyphen_values = true)]
        e: i64,
    },
    Comm { x: String, y: String },
    /// Reduce into the quotient given by --mod-sigma or --finite.
    Reduce { x: String },
    /// Evaluate a surface braid word (on --n strands) in H_g.
    Eval { word: String },
}

#[derive(Subcommand)]
enum RepOp {
    /// Matrix of a twist word such as "Talpha Tbeta^-1".
    Act {
        #[arg(long)]
        catalog: String,
        #[arg(long)]
        word: String,
    },
    /// Whether a twist word acts as the identity.
    Kernel {
        #[arg(long)]
        catalog: String,
        #[arg(long)]
        word: String,
    },
    /// Coefficients of [α] under powers of the twist, in the Magnus reduction.
    Witness {
        #[arg(long)]
        catalog: String,
        #[arg(long)]
        curve: String,
        /// One-based basis vector.
        #[arg(long)]
        basis: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum LinOp {
    /// Tautological matrix of an element of H_g.
    Taut { x: String },
    /// Supra-tautological matrix of an element of H_g.
    Supra { x: String },
    /// The operator of a group-ring element on the H_{g,r} module.
    Iota {
        x: String,
        #[arg(long)]
        r: usize,
    },
    /// Annihilator certificate for the specialized image of σ.
    Certificate {
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum BridgeOp {
    /// Check the substitution identifying a Lawrence local system.
    Check {
        #[arg(long)]
        region: String,
    },
}

/// What a command produced: text, JSON, and whether its checks passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }
}

fn quotient(cli: &Cli) -> Result<QuotientSpec> {
    match (cli.mod_sigma, cli.finite) {
        (Some(r), _) => QuotientSpec::mod_sigma(r),
        (_, Some(r)) => QuotientSpec::finite(r),
        _ => Ok(QuotientSpec::Full),
    }
}

fn element(cli: &Cli, text: &str) -> Result<HeisenbergElement> {
    let x = match cli.genus {
        Some(g) => HeisenbergElement::parse_with_genus(text, g)?,
        None => text.parse()?,
    };
    x.reduce(quotient(cli)?)
}

/// Two elements in a common genus: the larger of the inferred ones.
fn element_pair(cli: &Cli, a: &str, b: &str) -> Result<(HeisenbergElement, HeisenbergElement)> {
    if cli.genus.is_some() {
        return Ok((element(cli, a)?, element(cli, b)?));
    }
    let g = a.parse::<HeisenbergElement>()?.genus().max(b.parse::<HeisenbergElement>()?.genus());
    let q = quotient(cli)?;
    Ok((HeisenbergElement::parse_with_genus(a, g)?.reduce(q)?, HeisenbergElement::parse_with_genus(b, g)?.reduce(q)?))
}

/// Reads a JSON file, falling back to a bundled fixture of that name.
fn load_json(path: &str) -> Result<Value> {
    let text = if Path::new(path).exists() {
        std::fs::read_to_string(PathBuf::from(path)).map_err(|e| HeisError::Invalid(format!("{path}: {e}")))?
    } else if let Some(t) = fixtures::text(path) {
        t.to_string()
    } else {
        return Err(HeisError::Invalid(format!("{path}: no such file or bundled fixture")));
    };
    serde_json::from_str(&text).map_err(|e| HeisError::Parse { pos: e.column(), msg: format!("{path}: {e}") })
}

fn show_elem(x: &HeisenbergElement) -> Output {
    Output::ok(x.to_string(), json!({"element": x.to_string(), "normal_form": x.to_json()}))
}

fn ring_matrix_text(m: &Matrix<HeisRing>) -> String {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t")).collect::<Vec<_>>().join("\n")
}

fn laurent_matrix(m: &LaurentMatrix, names: &[String]) -> (String, Value) {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.render(names)).collect()).collect();
    let text = rows.iter().map(|r| r.join("\t")).collect::<Vec<_>>().join("\n");
    (text, json!(rows))
}

fn int_matrix_rows<T: ToString>(rows: Vec<Vec<T>>) -> (String, Value) {
    let rows: Vec<Vec<String>> = rows.into_iter().map(|r| r.into_iter().map(|x| x.to_string()).collect()).collect();
    let text = rows.iter().map(|r| r.join("\t")).collect::<Vec<_>>().join("\n");
    (text, json!(rows))
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Heis { op } => heis(cli, op),
        Cmd::Pair { file, augment } => pair(cli, file, *augment),
        Cmd::Rep { op } => rep(cli, op),
        Cmd::Linearize { op } => linearize(cli, op),
        Cmd::Burau { k, word, reduced, gassner: gas, at_one } => {
            let b = heisrep_core::words::BraidWord::parse(word, *k)?;
            let (m, names) = if *gas {
                (gassner(&b)?, var_names("t", *k))
            } else {
                let v = if *reduced { BurauVariant::Reduced } else { BurauVariant::Unreduced };
                (burau(&b, v)?, vec!["t".to_string()])
            };
            let (text, j) = if *at_one { int_matrix_rows(specialize_at_one(&m).to_rows()) } else { laurent_matrix(&m, &names) };
            Ok(Output::ok(text, json!({"word": b.to_string(), "matrix": j})))
        }
        Cmd::Bridge { op: BridgeOp::Check { region } } => {
            let region = Region::parse(region)?;
            let g = cli.genus.unwrap_or(2);
            let points = cli.n.unwrap_or(2);
            let holes = region.holes(g);
            let l = DiskLocalSystem::new(holes);
            let sub = SubstitutionMap::standard(region, g)?;
            let diagrams = standard_disk_diagrams(holes, points)?;
            let rep = substitution_check(&l, &sub, region, g, points, &diagrams)?;
            let mut text = format!(
                "region {} (genus {g}, {points} points): {} generators, {} diagrams: {}",
                region.label(),
                rep.generators_checked,
                rep.diagrams_checked,
                if rep.passed() { "pass" } else { "FAIL" }
            );
            for f in &rep.failures {
                text.push_str(&format!("\n  {f}"));
            }
            Ok(Output {
                text,
                json: json!({"region": region.label(), "genus": g, "points": points, "passed": rep.passed(), "failures": rep.failures}),
                ok: rep.passed(),
            })
        }
        Cmd::Verify { suite: name, check } => {
            if name != "paper" {
                return Err(HeisError::Invalid(format!("unknown suite {name:?} (expected \"paper\")")));
            }
            let report = if check.is_empty() {
                suite::run_suite()
            } else {
                suite::SuiteReport { checks: check.iter().map(|&id| suite::run_check(id)).collect::<Result<_>>()? }
            };
            let text = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "[{}] {:>2} {} ({:.2}s)",
                        if c.passed { "pass" } else { "FAIL" },
                        c.id,
                        c.anchor,
                        c.elapsed.as_secs_f64()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output { text, json: report.to_json(), ok: report.passed() })
        }
        Cmd::Search { max_k, exponent_bound, winding_bound, n_values, limit } => {
            let bounds = SearchBounds {
                max_k: *max_k,
                exponent_bound: *exponent_bound,
                winding_bound: *winding_bound,
                n_values: n_values.clone(),
                limit: *limit,
            };
            let q = quotient(cli)?;
            let rep = kernel_search(&bounds, q)?;
            let hits: Vec<Value> = rep
                .hits
                .iter()
                .map(|h| match h {
                    SearchHit::OnePoint(pts) => json!({"type": "one_point", "points": pts}),
                    SearchHit::NPoint { diagram, n } => {
                        json!({"type": "n_point", "n_j": diagram.n_j(), "A": diagram.a(), "n": n})
                    }
                })
                .collect();
            let mut text = format!("examined {} candidates in {q}; {} hits", rep.examined, hits.len());
            for h in &hits {
                text.push_str(&format!("\n  {h}"));
            }
            Ok(Output::ok(text, json!({"quotient": q.to_string(), "examined": rep.examined.to_string(), "hits": hits})))
        }
        Cmd::Fixtures { name: None } => {
            let names: Vec<&str> = fixtures::FIXTURES.iter().map(|(n, _)| *n).collect();
            Ok(Output::ok(names.join("\n"), json!(names)))
        }
        Cmd::Fixtures { name: Some(n) } => {
            let v = fixtures::json(n)?;
            Ok(Output::ok(serde_json::to_string_pretty(&v).unwrap_or_default(), v))
        }
    }
}

fn heis(cli: &Cli, op: &HeisOp) -> Result<Output> {
    match op {
        HeisOp::Mul { x, y } => {
            let (x, y) = element_pair(cli, x, y)?;
            Ok(show_elem(&x.multiply(&y)?))
        }
        HeisOp::Inv { x } => Ok(show_elem(&element(cli, x)?.inverse())),
        HeisOp::Pow { x, e } => Ok(show_elem(&element(cli, x)?.pow(*e))),
        HeisOp::Comm { x, y } => {
            let (x, y) = element_pair(cli, x, y)?;
            Ok(show_elem(&x.commutator(&y)?))
        }
        HeisOp::Reduce { x } => {
            if quotient(cli)? == QuotientSpec::Full {
                return Err(HeisError::Invalid("reduce needs --mod-sigma R or --finite R".into()));
            }
            Ok(show_elem(&element(cli, x)?))
        }
        HeisOp::Eval { word } => {
            let n = cli.n.unwrap_or(1);
            let g = match cli.genus {
                Some(g) => g,
                None => word.parse::<HeisenbergElement>().map(|x| x.genus()).unwrap_or(1),
            };
            let w = SurfaceBraidWord::parse(word, g, n)?;
            Ok(show_elem(&eval_heisenberg(&w, quotient(cli)?)))
        }
    }
}

fn pair(cli: &Cli, file: &str, augment: bool) -> Result<Output> {
    let q = quotient(cli)?;
    match Diagram::from_json(&load_json(file)?)? {
        Diagram::OnePoint(d) => {
            let v = pair_1pt(&d, q)?;
            let mut j = json!({"type": "one_point", "genus": d.genus(), "quotient": q.to_string(), "pairing": v.to_string()});
            let mut text = v.to_string();
            let mut ok = true;
            if augment {
                let (eps, count) = augmentation_check(&d)?;
                ok = eps == count.into();
                j["augmentation"] = json!(eps.to_string());
                j["signed_count"] = json!(count);
                text.push_str(&format!("\naugmentation {eps}, signed count {count}"));
            }
            Ok(Output { text, json: j, ok })
        }
        Diagram::NPoint { diagram, n } => {
            let n = cli.n.or(n).ok_or_else(|| HeisError::Missing("configuration size: pass --n or set \"n\"".into()))?;
            let v = pair_npt(&diagram, n, q)?;
            Ok(Output::ok(
                v.to_string(),
                json!({"type": "n_point", "genus": diagram.genus(), "n": n, "quotient": q.to_string(), "pairing": v.to_string()}),
            ))
        }
    }
}

/// A catalog and the quotient to act in: the command line wins over the file.
fn catalog(cli: &Cli, path: &str) -> Result<(CurveCatalog, QuotientSpec)> {
    let cat = CurveCatalog::from_json(&load_json(path)?)?;
    let q = match quotient(cli)? {
        QuotientSpec::Full => cat.quotient.unwrap_or(QuotientSpec::Full),
        q => q,
    };
    Ok((cat, q))
}

fn rep(cli: &Cli, op: &RepOp) -> Result<Output> {
    match op {
        RepOp::Act { catalog: path, word } => {
            let (cat, q) = catalog(cli, path)?;
            let w = TwistWord::parse(word)?;
            let m = twist_word_matrix(&w, &cat, q)?;
            Ok(Output::ok(ring_matrix_text(&m), json!({"word": w.to_string(), "quotient": q.to_string(), "matrix": ring_matrix_json(&m)})))
        }
        RepOp::Kernel { catalog: path, word } => {
            let (cat, q) = catalog(cli, path)?;
            let w = TwistWord::parse(word)?;
            let rep = kernel_certificate(&w, &cat, q)?;
            let text = format!(
                "{w} in {q}: {}",
                if rep.is_identity_on_basis { "identity on all basis vectors" } else { "not the identity" }
            );
            Ok(Output {
                text,
                json: json!({"word": w.to_string(), "quotient": q.to_string(), "identity": rep.is_identity_on_basis, "matrix": ring_matrix_json(&rep.matrix)}),
                ok: rep.is_identity_on_basis,
            })
        }
        RepOp::Witness { catalog: path, curve, basis, n_max } => {
            let (cat, _) = catalog(cli, path)?;
            let alpha = cat.get(curve)?;
            let dim = 2 * cat.genus;
            if *basis == 0 || *basis > dim {
                return Err(HeisError::Index(format!("basis vector {basis} outside 1..={dim}")));
            }
            let q = QuotientSpec::ModSigma(1);
            let v: Vec<HeisRing> =
                (0..dim).map(|j| if j + 1 == *basis { HeisRing::one_in(cat.genus, q) } else { HeisRing::zero() }).collect();
            let lams = infinite_order_witness(alpha, &v, *n_max)?;
            let strs: Vec<String> = lams.iter().map(|x| x.to_string()).collect();
            let text = strs.iter().enumerate().map(|(i, s)| format!("n={}: {s}", i + 1)).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(text, json!({"curve": curve, "basis": basis, "coefficients": strs})))
        }
    }
}

fn linearize(cli: &Cli, op: &LinOp) -> Result<Output> {
    match op {
        LinOp::Taut { x } => {
            let (text, j) = int_matrix_rows(tautological(&element(cli, x)?)?.to_rows());
            Ok(Output::ok(text, json!({"matrix": j})))
        }
        LinOp::Supra { x } => {
            let (text, j) = int_matrix_rows(suprataut_heis(&element(cli, x)?)?.to_rows());
            Ok(Output::ok(text, json!({"matrix": j})))
        }
        LinOp::Iota { x, r } => {
            let q = QuotientSpec::mod_sigma(*r as u64)?;
            let g = match cli.genus {
                Some(g) => g,
                None => infer_ring_genus(x),
            };
            let elt = HeisRing::parse_with_genus(x, g)?.reduce(q)?;
            let m = iota_r(&elt, g, *r)?;
            let names = iota_names(g);
            let entries: Vec<Value> =
                m.nonzeros().map(|((i, j), p)| json!({"row": i, "col": j, "entry": p.render(&names)})).collect();
            let text = format!(
                "dimension {}, {} nonzero entries\n{}",
                m.dimension(),
                entries.len(),
                entries
                    .iter()
                    .map(|e| format!("({}, {}) {}", e["row"], e["col"], e["entry"].as_str().unwrap_or_default()))
                    .collect::<Vec<_>>()
                    .join("\n")
            );
            Ok(Output::ok(text, json!({"dimension": m.dimension(), "entries": entries})))
        }
        LinOp::Certificate { r } => {
            let g = cli.genus.unwrap_or(1);
            let (a, b, s) = iota_r_specialized_generators(g, *r)?;
            let c = annihilator_certificate_for(&a, &b, &s)?;
            Ok(Output::ok(
                format!("(σ^{{2·{}}} - 1)^{} annihilates; factors {:?}", c.n, c.k, c.factors),
                json!({"N": c.n, "k": c.k, "max_multiplicity": c.max_multiplicity, "factors": c.factors}),
            ))
        }
    }
}

fn infer_ring_genus(text: &str) -> usize {
    let mut g = 1;
    let mut digits = String::new();
    let mut after_gen = false;
    for c in text.chars().chain(std::iter::once(' ')) {
        if after_gen && c.is_ascii_digit() {
            digits.push(c);
            continue;
        }
        if let Ok(i) = digits.parse::<usize>() {
            g = g.max(i);
        }
        digits.clear();
        after_gen = matches!(c, 'a' | 'b' | 'A' | 'B');
    }
    g
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json { serde_json::to_string_pretty(&out.json).unwrap_or_default() } else { out.text };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the computation ran but the answer is
//! negative (no action, a failed check), 2 on usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{
    self, check_witness, classify as run_classify, conjugation_oracle, count_decompositions,
    relabeling_classes, ActionWitness, DualBasis, Labeling, LabelingDocument, OracleReport,
    WitnessDocument,
};
use crate::cyclo::{primes_up_to, CycloReal};
use crate::error::{Error, Result};
use crate::fusion::{load_ring, FusionRing};
use crate::modular::{check_propositions, conj_eigensystem, smatrix};
use crate::quiver::{
    check_automorphism, enumerate_paths, load_quiver, parse_map_document, scc, tilde, ExtNat, Quiver,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "fusionquiver", version, about = "Fusion rings, PSU(2) modular data and based actions on quivers")]
struct Cli {
    /// Use the PSU(2)_{p-2} fusion ring for the prime p.
    #[arg(long, global = true, value_name = "P", conflicts_with = "ring")]
    psu2: Option<u64>,
    /// Load a fusion ring from a JSON file.
    #[arg(long, global = true, value_name = "FILE")]
    ring: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the fusion matrices of every simple.
    FusionTable,
    /// Print the unnormalized S-matrix and quantum dimensions.
    Smatrix,
    /// Eigenpairs of F_X and of conjugation by F_X.
    Eigen {
        #[arg(long)]
        object: String,
    },
    /// Check the spectral propositions for every prime in range.
    VerifyProps {
        #[arg(long, default_value_t = 31)]
        pmax: u64,
        #[arg(long, default_value_t = 5)]
        pmin: u64,
    },
    /// Path counts of the generated quiver.
    Tilde { quiver: PathBuf },
    /// List paths up to a length.
    Paths {
        quiver: PathBuf,
        #[arg(long)]
        maxlen: usize,
    },
    /// Check that generator images define a path-algebra automorphism.
    Automorphism {
        quiver: PathBuf,
        mapfile: PathBuf,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Does any based action exist? With --witness, check that witness.
    Check {
        quiver: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// List every based action.
    Classify { quiver: PathBuf },
    /// Iterate conjugation by the block-diagonal F_X.
    Oracle {
        quiver: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long, default_value_t = classify::DEFAULT_ORACLE_STEPS)]
        steps: u32,
        /// Labeling (or witness) to use; otherwise every labeling is tried.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Count decompositions of the generated quiver over the dual basis.
    Count { quiver: PathBuf },
}

/// Render with 6 significant digits, trailing zeros trimmed.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn rendered(v: &CycloReal) -> Value {
    let approx: f64 = sig6(v.to_f64()).parse().expect("sig6 renders a float");
    json!({ "exact": v, "notation": v.notation(), "approx": approx })
}

fn text_table(header: Option<&[String]>, rows: &[(String, Vec<String>)]) -> String {
    let cols = rows.first().map_or(0, |r| r.1.len());
    let mut widths = vec![0; cols];
    let label_w = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    for (_, cells) in rows {
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.chars().count());
        }
    }
    if let Some(h) = header {
        for (w, c) in widths.iter_mut().zip(h) {
            *w = (*w).max(c.chars().count());
        }
    }
    let pad = |s: &str, w: usize| format!("{}{s}", " ".repeat(w - s.chars().count()));
    let mut out = String::new();
    if let Some(h) = header {
        let cells: Vec<String> = h.iter().zip(&widths).map(|(c, &w)| pad(c, w)).collect();
        let _ = writeln!(out, "{}  {}", " ".repeat(label_w), cells.join("  "));
    }
    for (label, cells) in rows {
        let cells: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| pad(c, w)).collect();
        let _ = writeln!(out, "{}  {}", pad(label, label_w), cells.join("  "));
    }
    out
}

struct Context {
    psu2: Option<u64>,
    ring_path: Option<PathBuf>,
}

struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

impl Outcome {
    fn new(text: String, json: Value, positive: bool) -> Self {
        Outcome { text, json, code: if positive { EXIT_OK } else { EXIT_NEGATIVE } }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

impl Context {
    fn ring(&self) -> Result<FusionRing> {
        match (self.psu2, &self.ring_path) {
            (Some(p), None) => FusionRing::psu2(p),
            (None, Some(path)) => load_ring(&read(path)?),
            (None, None) => Err(Error::InvalidArgument("choose a ring with --psu2 P or --ring FILE".into())),
            (Some(_), Some(_)) => Err(Error::InvalidArgument("give only one of --psu2 and --ring".into())),
        }
    }

    fn prime(&self) -> Result<u64> {
        let ring = self.ring()?;
        ring.psu2_prime().map(u64::from).ok_or(Error::NotPsu2)
    }
}

fn load_quiver_file(path: &Path) -> Result<Quiver> {
    load_quiver(&read(path)?)
}

fn fusion_table(ctx: &Context) -> Result<Outcome> {
    let ring = ctx.ring()?;
    let labels = ring.labels().to_vec();
    let mut text = String::new();
    let mut mats = Vec::new();
    for fm in ring.fusion_matrices() {
        let name = &labels[fm.object];
        let _ = writeln!(text, "F_{name}:");
        let rows: Vec<(String, Vec<String>)> = fm
            .entries
            .iter()
            .enumerate()
            .map(|(m, row)| (labels[m].clone(), row.iter().map(u32::to_string).collect()))
            .collect();
        text.push_str(&text_table(Some(&labels), &rows));
        mats.push(json!({ "object": name, "entries": fm.entries }));
    }
    let json = json!({
        "labels": labels,
        "unit": ring.unit(),
        "dual": ring.dual(),
        "N": ring.tensor(),
        "fusion_matrices": mats,
    });
    Ok(Outcome::new(text, json, true))
}

fn smatrix_cmd(ctx: &Context) -> Result<Outcome> {
    let p = ctx.prime()?;
    let md = smatrix(p)?;
    let labels = FusionRing::psu2(p)?.labels().to_vec();
    let exact_rows: Vec<(String, Vec<String>)> = md
        .s
        .iter()
        .enumerate()
        .map(|(j, row)| (labels[j].clone(), row.iter().map(CycloReal::notation).collect()))
        .collect();
    let approx_rows: Vec<(String, Vec<String>)> = md
        .s
        .iter()
        .enumerate()
        .map(|(j, row)| (labels[j].clone(), row.iter().map(|v| sig6(v.to_f64())).collect()))
        .collect();
    let mut text = format!("S-matrix, p = {p}:\n");
    text.push_str(&text_table(Some(&labels), &exact_rows));
    text.push_str("≈\n");
    text.push_str(&text_table(Some(&labels), &approx_rows));
    text.push_str("dimensions:\n");
    for (label, d) in labels.iter().zip(&md.dims) {
        let _ = writeln!(text, "  d({label}) = {} ≈ {}", d.notation(), sig6(d.to_f64()));
    }
    let json = json!({
        "p": p,
        "labels": labels,
        "S": md.s.iter().map(|row| row.iter().map(rendered).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "dims": md.dims.iter().map(rendered).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(text, json, true))
}

fn eigen(ctx: &Context, object: &str) -> Result<Outcome> {
    let ring = ctx.ring()?;
    let p = ring.psu2_prime().ok_or(Error::NotPsu2)?;
    let x = ring.resolve_simple(object)?;
    let md = smatrix(p as u64)?;
    let es = conj_eigensystem(&md, x, false)?;
    let verified = es.verify(&ring)?;
    let labels = ring.labels();
    let mut text = format!("eigenvalues of F_{} (columns of S):\n", labels[x]);
    for (j, pair) in es.single.iter().enumerate() {
        let _ = writeln!(text, "  column {j}: {} ≈ {}", pair.eigenvalue, sig6(pair.eigenvalue.to_f64()));
    }
    let _ = writeln!(text, "eigenvalues of T_{}(M) = F⁻¹ M F:", labels[x]);
    for k in &es.kron {
        let _ = writeln!(text, "  ({}, {}): {}", k.i, k.j, sig6(k.eigenvalue.to_f64()));
    }
    let unit_count = es.unit_eigenvalue_count();
    let _ = writeln!(text, "eigenvalue 1 multiplicity: {unit_count}");
    let _ = writeln!(text, "residuals exactly zero: {verified}");
    let json = json!({
        "object": labels[x],
        "single": es.single.iter().enumerate().map(|(j, e)| json!({"column": j, "eigenvalue": rendered(&e.eigenvalue)})).collect::<Vec<_>>(),
        "kron": es.kron.iter().map(|k| json!({"i": k.i, "j": k.j, "eigenvalue": rendered(&k.eigenvalue)})).collect::<Vec<_>>(),
        "unit_eigenvalue_count": unit_count,
        "verified": verified,
    });
    Ok(Outcome::new(text, json, verified))
}

fn verify_props(pmin: u64, pmax: u64) -> Result<Outcome> {
    let primes: Vec<u64> = primes_up_to(pmax).into_iter().map(u64::from).filter(|&p| p >= pmin.max(5)).collect();
    if primes.is_empty() {
        return Err(Error::InvalidArgument(format!("no primes in [{}, {pmax}]", pmin.max(5))));
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for p in primes {
        let f = check_propositions(p)?;
        all &= f.all();
        let _ = writeln!(
            text,
            "p = {p:>3}: no -1 eigenvalue {}, distinct magnitudes {}, mixed signs {}, ±d once {}",
            f.no_minus_one, f.distinct_magnitudes, f.mixed_signs, f.pm_d_once
        );
        rows.push(json!({"p": p, "no_minus_one": f.no_minus_one, "distinct_magnitudes": f.distinct_magnitudes,
            "mixed_signs": f.mixed_signs, "pm_d_once": f.pm_d_once, "all": f.all()}));
    }
    Ok(Outcome::new(text, json!({ "primes": rows, "all": all }), all))
}

fn ext_text(e: ExtNat) -> String {
    e.to_string()
}

fn tilde_cmd(path: &Path) -> Result<Outcome> {
    let q = load_quiver_file(path)?;
    let t = tilde(&q)?;
    let cond = scc(&q);
    let names = q.vertices().to_vec();
    let rows: Vec<(String, Vec<String>)> = t
        .entries
        .iter()
        .enumerate()
        .map(|(w, row)| (names[w].clone(), row.iter().map(|&e| ext_text(e)).collect()))
        .collect();
    let mut text = String::from("paths v -> w (row w, column v):\n");
    text.push_str(&text_table(Some(&names), &rows));
    let comps: Vec<Vec<String>> =
        cond.components.iter().map(|c| c.iter().map(|&v| names[v].clone()).collect()).collect();
    let _ = writeln!(text, "strongly connected components (topological order):");
    for (c, cyclic) in comps.iter().zip(&cond.cyclic) {
        let _ = writeln!(text, "  {{{}}}{}", c.join(", "), if *cyclic { " cyclic" } else { "" });
    }
    let json = json!({ "vertices": names, "tilde": t.entries, "components": comps, "cyclic": cond.cyclic });
    Ok(Outcome::new(text, json, true))
}

fn paths_cmd(path: &Path, maxlen: usize) -> Result<Outcome> {
    let q = load_quiver_file(path)?;
    let levels = enumerate_paths(&q, maxlen);
    let mut text = String::new();
    let mut rows = Vec::new();
    for (l, level) in levels.iter().enumerate() {
        let names: Vec<String> = level.iter().map(|p| p.display(&q)).collect();
        let _ = writeln!(text, "length {l} ({}): {}", names.len(), names.join(", "));
        rows.push(json!({ "length": l, "count": names.len(), "paths": names }));
    }
    let total: usize = levels.iter().map(Vec::len).sum();
    let _ = writeln!(text, "total: {total}");
    Ok(Outcome::new(text, json!({ "lengths": rows, "total": total }), true))
}

fn automorphism_cmd(quiver: &Path, mapfile: &Path, order: Option<u32>) -> Result<Outcome> {
    let q = Arc::new(load_quiver_file(quiver)?);
    let images = parse_map_document(&q, &read(mapfile)?)?;
    let report = check_automorphism(&q, &images, order)?;
    let mut text = String::new();
    for (a, image) in q.arrows().iter().zip(&images.arrows) {
        let _ = writeln!(text, "φ({}) = {image}", a.name);
    }
    let _ = writeln!(text, "basis dimension: {}", report.dimension);
    let _ = writeln!(text, "multiplicative on basis: {}", report.multiplicative);
    let _ = writeln!(text, "unit preserved: {}", report.unit_preserved);
    let _ = writeln!(text, "invertible: {}", report.invertible);
    let _ = writeln!(text, "automorphism: {}", report.automorphism);
    match report.order {
        Some(k) => {
            let _ = writeln!(text, "order: {k}");
        }
        None => {
            let _ = writeln!(text, "order: not found");
        }
    }
    if let Some(m) = report.order_matches {
        let _ = writeln!(text, "order matches --order: {m}");
    }
    for f in &report.failures {
        let _ = writeln!(text, "  {f}");
    }
    let passed = report.passed();
    Ok(Outcome::new(text, serde_json::to_value(&report)?, passed))
}

fn witness_text(w: &ActionWitness, q: &Quiver, ring: &FusionRing) -> String {
    let mut text = String::new();
    for (k, (group, psi)) in w.labeling.partition.iter().zip(&w.labeling.bijections).enumerate() {
        let pairs: Vec<String> = group
            .iter()
            .zip(psi)
            .map(|(&v, &x)| format!("{}->{}", q.vertices()[v], ring.labels()[x]))
            .collect();
        let _ = writeln!(text, "  group {k}: {}", pairs.join(", "));
    }
    for (i, row) in w.z.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let terms: Vec<String> = z
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(x, &m)| if m == 1 { ring.labels()[x].clone() } else { format!("{m}{}", ring.labels()[x]) })
                .collect();
            let z = if terms.is_empty() { "0".into() } else { terms.join(" + ") };
            let _ = writeln!(text, "  Z[{i},{j}] = {z}");
        }
    }
    text
}

fn check_cmd(ctx: &Context, quiver: &Path, witness: Option<&Path>) -> Result<Outcome> {
    let ring = ctx.ring()?;
    let q = load_quiver_file(quiver)?;
    match witness {
        Some(path) => {
            let doc: WitnessDocument = serde_json::from_str(&read(path)?)
                .map_err(|e| Error::MalformedWitness(e.to_string()))?;
            let w = ActionWitness::from_document(&doc, &q, &ring)?;
            let valid = check_witness(&q, &ring, &w)?;
            let text = format!("witness valid: {valid}\n");
            Ok(Outcome::new(text, json!({ "valid": valid }), valid))
        }
        None => {
            let ws = run_classify(&q, &ring);
            let exists = !ws.is_empty();
            let mut text = format!("based action exists: {exists}\n");
            let first = ws.first().map(|w| {
                text.push_str("first witness:\n");
                text.push_str(&witness_text(w, &q, &ring));
                w.to_document(&q, &ring)
            });
            Ok(Outcome::new(text, json!({ "exists": exists, "witness": first }), exists))
        }
    }
}

fn classify_cmd(ctx: &Context, quiver: &Path) -> Result<Outcome> {
    let ring = ctx.ring()?;
    let q = load_quiver_file(quiver)?;
    let ws = run_classify(&q, &ring);
    let classes = relabeling_classes(&ws);
    let mut text = format!("{} witness(es)\n", ws.len());
    for (idx, w) in ws.iter().enumerate() {
        let _ = writeln!(text, "witness {idx}:");
        text.push_str(&witness_text(w, &q, &ring));
    }
    let shared: Vec<&Vec<usize>> = classes.iter().filter(|c| c.len() > 1).collect();
    if !shared.is_empty() {
        let _ = writeln!(text, "witnesses differing only by a block-fixing relabeling:");
        for c in &shared {
            let _ = writeln!(text, "  {c:?}");
        }
    }
    let json = json!({
        "ring": ring.labels(),
        "vertices": q.vertices(),
        "witnesses": ws.iter().map(|w| w.to_document(&q, &ring)).collect::<Vec<_>>(),
        "relabeling_classes": classes,
    });
    Ok(Outcome::new(text, json, !ws.is_empty()))
}

fn all_labelings(n: usize, r: usize) -> Vec<Labeling> {
    let perms = classify::permutations(r);
    let mut out = Vec::new();
    for partition in classify::partitions(n, r) {
        let g = partition.len();
        let mut idx = vec![0usize; g];
        loop {
            out.push(Labeling { partition: partition.clone(), bijections: idx.iter().map(|&i| perms[i].clone()).collect() });
            let Some(k) = (0..g).rev().find(|&k| idx[k] + 1 < perms.len()) else { break };
            idx[k] += 1;
            idx[k + 1..].iter_mut().for_each(|i| *i = 0);
        }
    }
    out
}

fn oracle_text(report: &OracleReport) -> String {
    let mut s = format!(
        "survived {} of {} steps{}",
        if report.survived { "all" } else { "not all" },
        report.steps_checked,
        if report.fixed_point { " (fixed point)" } else { "" }
    );
    if let Some(v) = &report.first_violation {
        let _ = write!(s, "; step {} entry ({}, {}) = {}", v.step, v.row, v.col, v.value);
    }
    if !report.certified {
        s.push_str("; not certified");
    }
    s
}

fn oracle_cmd(ctx: &Context, quiver: &Path, object: &str, steps: u32, witness: Option<&Path>) -> Result<Outcome> {
    let ring = ctx.ring()?;
    let q = load_quiver_file(quiver)?;
    let x = ring.resolve_simple(object)?;
    let labelings = match witness {
        Some(path) => {
            let doc: LabelingDocument = serde_json::from_str(&read(path)?)
                .map_err(|e| Error::MalformedWitness(e.to_string()))?;
            vec![Labeling::from_document(&doc, &q, &ring)?.0]
        }
        None => {
            if q.vertex_count() % ring.rank() != 0 {
                return Err(Error::InvalidArgument(format!(
                    "{} vertices do not split into groups of {}",
                    q.vertex_count(),
                    ring.rank()
                )));
            }
            all_labelings(q.vertex_count(), ring.rank())
        }
    };
    let mut text = String::new();
    let mut results = Vec::new();
    let mut any = false;
    for lab in &labelings {
        let report = conjugation_oracle(&q, &ring, x, lab, steps)?;
        any |= report.survived;
        let doc = lab.to_document(&q, &ring);
        let pairs: Vec<String> = doc
            .bijections
            .iter()
            .map(|m| m.iter().map(|(v, l)| format!("{v}->{l}")).collect::<Vec<_>>().join(" "))
            .collect();
        let _ = writeln!(text, "[{}] {}", pairs.join(" | "), oracle_text(&report));
        results.push(json!({ "labeling": doc, "report": report }));
    }
    let json = json!({ "object": ring.labels()[x], "steps": steps, "survived": any, "results": results });
    Ok(Outcome::new(text, json, any))
}

fn count_cmd(ctx: &Context, quiver: &Path) -> Result<Outcome> {
    let ring = ctx.ring()?;
    let q = load_quiver_file(quiver)?;
    let r = ring.rank();
    if q.vertex_count() % r != 0 {
        return Err(Error::DimensionMismatch(format!(
            "{} vertices do not split into blocks of {r}",
            q.vertex_count()
        )));
    }
    let t = tilde(&q)?;
    let basis = DualBasis::regular(&ring);
    let report = count_decompositions(&t, &basis, q.vertex_count() / r)?;
    let mut text = format!("decompositions: {}\n", report.count);
    if !report.dichotomy_applies {
        text.push_str("(advisory: Q̃ has finite nonzero entries, so the 1-or-∞ dichotomy is not claimed)\n");
    }
    for b in &report.blocks {
        let coeffs = b.coefficients.as_ref().map(|c| {
            c.iter()
                .zip(ring.labels())
                .map(|(n, l)| format!("{l}: {n}"))
                .collect::<Vec<_>>()
                .join(", ")
        });
        let _ = writeln!(
            text,
            "  block {} -> {}: {}{}",
            b.source,
            b.target,
            b.count,
            coeffs.map(|c| format!(" ({c})")).unwrap_or_default()
        );
    }
    let positive = report.count != classify::DecompCount::Zero;
    let mut json = serde_json::to_value(&report)?;
    json["labels"] = json!(ring.labels());
    Ok(Outcome::new(text, json, positive))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let ctx = Context { psu2: cli.psu2, ring_path: cli.ring.clone() };
    match &cli.command {
        Command::FusionTable => fusion_table(&ctx),
        Command::Smatrix => smatrix_cmd(&ctx),
        Command::Eigen { object } => eigen(&ctx, object),
        Command::VerifyProps { pmax, pmin } => verify_props(*pmin, *pmax),
        Command::Tilde { quiver } => tilde_cmd(quiver),
        Command::Paths { quiver, maxlen } => paths_cmd(quiver, *maxlen),
        Command::Automorphism { quiver, mapfile, order } => automorphism_cmd(quiver, mapfile, *order),
        Command::Check { quiver, witness } => check_cmd(&ctx, quiver, witness.as_deref()),
        Command::Classify { quiver } => classify_cmd(&ctx, quiver),
        Command::Oracle { quiver, object, steps, witness } => {
            oracle_cmd(&ctx, quiver, object, *steps, witness.as_deref())
        }
        Command::Count { quiver } => count_cmd(&ctx, quiver),
    }
}

#[derive(Serialize)]
struct ErrorDocument {
    error: String,
}

/// Run with the given arguments (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let body = match cli.format {
                Format::Text => outcome.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&outcome.json).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            let _ = out.write_all(body.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = match cli.format {
                Format::Text => writeln!(err, "error: {e}"),
                Format::Json => writeln!(
                    err,
                    "{}",
                    serde_json::to_string(&ErrorDocument { error: e.to_string() }).expect("serializes")
                ),
            };
            EXIT_INPUT
        }
    }
}

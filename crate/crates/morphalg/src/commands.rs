use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use morphalg_core::grading::{
    self, graded_nilpotence_scan, CertifyOptions, ScanReport, WeightVector,
};
use morphalg_core::interleave::{
    graded_nilpotent_base, interleave_pipeline, primed_alphabet, DifferenceOrder, InterleaveSpec,
    PipelineConfig,
};
use morphalg_core::monalg::{freeness_check, AlgebraView, FreenessReport, MonalgError};
use morphalg_core::rowen::{
    build_generators, correspondence_scan, growth_profile, n_u_witness, nilpotency_index,
    thue_morse_stream, GradedElement, ThueMorse, A, B,
};
use morphalg_core::words::{analyze_morphism, Alphabet, Letter, PrefixStream};

use crate::literal::parse_polynomial;
use crate::report::Report;
use crate::spec::{parse_weights, read_spec, MorphismSpec};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "morphalg",
    version,
    about = "Morphic words and their monomial algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Incidence matrix, determinant, primitivity and prolongable letters.
    Analyze(AnalyzeArgs),
    /// Run the graded-nilpotence certifier.
    Certify(CertifyArgs),
    /// Longest arithmetic progressions in the weight-sum set.
    Scan(ScanArgs),
    /// Print a prefix of the fixed point or of its interleaved word.
    Word(WordArgs),
    /// Check that generators span a free subalgebra up to a pattern length.
    Free(FreeArgs),
    /// Certified base word, interleaving, AP scans and freeness in one run.
    Theorem32(PipelineArgs),
    /// Thue-Morse operator checks at finite truncation.
    Rowen(RowenArgs),
    /// Cumulative factor counts and the quadratic growth test.
    Growth(GrowthArgs),
}

#[derive(Debug, Clone, Args)]
pub struct MorphismArgs {
    /// Morphism spec file.
    #[arg(long)]
    pub spec: PathBuf,
    /// Start letter of the fixed point; defaults to the first letter.
    #[arg(long)]
    pub start: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: MorphismArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub input: MorphismArgs,
    /// Letter weights, comma-separated; overrides the spec file.
    #[arg(long)]
    pub weights: Option<String>,
    /// Decomposition word `u` with `w = u·b·w'`.
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long, default_value_t = 32)]
    pub jmax: usize,
    /// Letters searched for the automatic decomposition.
    #[arg(long, default_value_t = 100_000)]
    pub horizon: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub input: MorphismArgs,
    #[arg(long)]
    pub weights: Option<String>,
    /// Largest difference D scanned.
    #[arg(long, default_value_t = 8)]
    pub dmax: u64,
    /// Scan at horizon/2 and horizon.
    #[arg(long, default_value_t = 100_000)]
    pub horizon: usize,
    /// Explicit increasing horizons, comma-separated.
    #[arg(long)]
    pub horizons: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct WordArgs {
    #[command(flatten)]
    pub input: MorphismArgs,
    #[arg(long)]
    pub length: usize,
    /// Interleave with a difference sequence: `canonical` or `constant:K`.
    #[arg(long)]
    pub interleave: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FreeArgs {
    /// `factors`, `interleaved`, `cubes` or `free`.
    #[arg(long, default_value = "factors")]
    pub view: String,
    /// Spec file for the `factors` and `interleaved` views.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub start: Option<String>,
    /// Letters for the `cubes` and `free` views, one character each.
    #[arg(long)]
    pub alphabet: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    pub horizon: usize,
    /// Generator literal, e.g. `x+y`; repeat for each generator.
    #[arg(long = "gen", required = true)]
    pub generators: Vec<String>,
    /// Longest pattern tested.
    #[arg(long = "Lfree", default_value_t = 4)]
    pub l_free: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PipelineArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub horizon: usize,
    #[arg(long = "Lfree", default_value_t = 5)]
    pub l_free: usize,
    #[arg(long, default_value_t = 6)]
    pub dmax: u64,
    /// `canonical` or `constant:K`.
    #[arg(long, default_value = "canonical")]
    pub order: String,
}

#[derive(Debug, Clone, Args)]
pub struct RowenArgs {
    /// Truncation dimension.
    #[arg(long = "N", default_value_t = 4096)]
    pub n: usize,
    #[arg(long, default_value_t = 64)]
    pub margin: usize,
    /// Longest word checked against the factor set.
    #[arg(long, default_value_t = 12)]
    pub maxlen: usize,
    /// Thue-Morse prefix length for the factor set.
    #[arg(long, default_value_t = 100_000)]
    pub horizon: usize,
    /// Steps u = 1..=umax for the alternation witnesses.
    #[arg(long, default_value_t = 4)]
    pub umax: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GrowthArgs {
    /// Spec file; the Thue-Morse word when omitted.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub start: Option<String>,
    /// Use the periodic word `period^∞` over `--alphabet` instead.
    #[arg(long)]
    pub period: Option<String>,
    #[arg(long, default_value = "xy")]
    pub alphabet: String,
    /// Sample lengths, comma-separated.
    #[arg(long, default_value = "64,128,256,512")]
    pub n: String,
    #[arg(long, default_value_t = 100_000)]
    pub horizon: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn report(report: &Report, positive: bool) -> Self {
        Outcome {
            output: report.to_string(),
            code: if positive {
                EXIT_POSITIVE
            } else {
                EXIT_NEGATIVE
            },
        }
    }

    /// A domain error recorded in the report.
    fn failed(mut report: Report, error: impl std::fmt::Display) -> Self {
        report.field("verdict", "ERROR").field("error", error);
        Outcome::report(&report, false)
    }
}

/// Runs one command. `Err` means a usage error.
pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Analyze(a) => analyze(a),
        Command::Certify(a) => certify(a),
        Command::Scan(a) => scan(a),
        Command::Word(a) => word(a),
        Command::Free(a) => free(a),
        Command::Theorem32(a) => pipeline(a),
        Command::Rowen(a) => rowen(a),
        Command::Growth(a) => growth(a),
    }
}

fn start_letter(alphabet: &Alphabet, start: Option<&str>) -> Result<Letter> {
    match start {
        None => Ok(0),
        Some(s) => alphabet
            .letter(s)
            .ok_or_else(|| anyhow!("unknown start letter `{s}`")),
    }
}

fn load(input: &MorphismArgs) -> Result<(MorphismSpec, Letter)> {
    let spec = read_spec(&input.spec)?;
    let start = start_letter(spec.morphism.alphabet(), input.start.as_deref())?;
    Ok((spec, start))
}

fn resolve_weights(spec: &MorphismSpec, flag: Option<&str>) -> Result<WeightVector> {
    let weights = match flag {
        Some(csv) => parse_weights([csv])?,
        None => spec
            .weights
            .clone()
            .ok_or_else(|| anyhow!("no weights in spec; pass --weights"))?,
    };
    let d = spec.morphism.alphabet().len();
    if weights.len() != d {
        bail!("{} weights for {} letters", weights.len(), d);
    }
    Ok(weights)
}

fn header(command: &str, spec: &MorphismSpec, start: Letter) -> Report {
    let mut r = Report::new();
    let alphabet = spec.morphism.alphabet();
    r.field("command", command)
        .field("morphism", spec.morphism.describe())
        .field("start", alphabet.symbol(start));
    r
}

fn symbols(alphabet: &Alphabet, letters: &[Letter]) -> Vec<String> {
    letters
        .iter()
        .map(|&l| alphabet.symbol(l).to_string())
        .collect()
}

fn matrix_rows(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn analyze(args: &AnalyzeArgs) -> Result<Outcome> {
    let (spec, start) = load(&args.input)?;
    let mut r = header("analyze", &spec, start);
    let m = &spec.morphism;
    let rep = analyze_morphism(m);
    r.list("letters", m.alphabet().symbols())
        .field("incidence", matrix_rows(&rep.incidence.to_rows()))
        .field("det", rep.determinant)
        .field("primitive", rep.primitive)
        .list("prolongable", symbols(m.alphabet(), &rep.prolongable))
        .list("mortal", symbols(m.alphabet(), &rep.mortal));
    Ok(Outcome::report(&r, true))
}

fn certify(args: &CertifyArgs) -> Result<Outcome> {
    let (spec, start) = load(&args.input)?;
    let weights = resolve_weights(&spec, args.weights.as_deref())?;
    let alphabet = spec.morphism.alphabet();
    let decomposition = match &args.u {
        Some(u) => Some(alphabet.parse_word(u).map_err(|e| anyhow!("--u: {e}"))?),
        None => None,
    };
    let mut r = header("certify", &spec, start);
    r.list("weights", weights.as_slice())
        .field("jmax", args.jmax)
        .field("u_override", args.u.as_deref().unwrap_or("none"));
    let options = CertifyOptions {
        j_max: args.jmax,
        decomposition,
        horizon: args.horizon,
    };
    let cert = match grading::certify(&spec.morphism, start, &weights, &options) {
        Ok(c) => c,
        Err(e) => return Ok(Outcome::failed(r, e)),
    };
    r.field("verdict", cert.verdict.tag())
        .field(
            "reason",
            cert.reason().map_or("none".to_string(), |x| x.to_string()),
        )
        .field("det", cert.determinant)
        .field("primitive", cert.primitive)
        .field("u", alphabet.render(&cert.u))
        .field("u_source", cert.u_source.tag())
        .list("gcd_sequence", &cert.gcd.values)
        .list("running_gcd", &cert.gcd.running_gcd);
    Ok(Outcome::report(&r, cert.is_certified()))
}

fn scan_rows(r: &mut Report, scan: &ScanReport, prefix: &str) {
    for row in &scan.rows {
        r.list(format!("{prefix}ap_D{}", row.difference), &row.lengths);
    }
    r.list(format!("{prefix}flagged"), scan.flagged());
}

fn scan(args: &ScanArgs) -> Result<Outcome> {
    let (spec, start) = load(&args.input)?;
    let weights = resolve_weights(&spec, args.weights.as_deref())?;
    let horizons: Vec<usize> = match &args.horizons {
        Some(csv) => csv
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| anyhow!("bad horizon `{s}`")))
            .collect::<Result<_>>()?,
        None => vec![args.horizon / 2, args.horizon],
    };
    let mut r = header("scan", &spec, start);
    r.list("weights", weights.as_slice())
        .field("dmax", args.dmax)
        .list("horizons", &horizons);
    let mut stream = match PrefixStream::morphic(spec.morphism.clone(), start) {
        Ok(s) => s,
        Err(e) => return Ok(Outcome::failed(r, e)),
    };
    let report = match graded_nilpotence_scan(&mut stream, &weights, args.dmax, &horizons) {
        Ok(s) => s,
        Err(e) => return Ok(Outcome::failed(r, e)),
    };
    scan_rows(&mut r, &report, "");
    Ok(Outcome::report(&r, !report.any_flagged()))
}

fn parse_order(text: &str) -> Result<DifferenceOrder> {
    if text == "canonical" {
        return Ok(DifferenceOrder::Canonical);
    }
    match text.strip_prefix("constant:").map(str::parse::<u64>) {
        Some(Ok(k)) if k >= 1 => Ok(DifferenceOrder::Constant(k)),
        _ => bail!("order must be `canonical` or `constant:K` with K ≥ 1"),
    }
}

fn word(args: &WordArgs) -> Result<Outcome> {
    let (spec, start) = load(&args.input)?;
    let order = args.interleave.as_deref().map(parse_order).transpose()?;
    let base = match PrefixStream::morphic(spec.morphism.clone(), start) {
        Ok(s) => s,
        Err(e) => return Ok(Outcome::failed(header("word", &spec, start), e)),
    };
    let mut stream = match order {
        Some(order) => InterleaveSpec::new(base, order).into_stream(),
        None => base,
    };
    let alphabet = stream.alphabet().clone();
    match stream.prefix(args.length) {
        Ok(w) => Ok(Outcome {
            output: format!("{}\n", alphabet.render(w)),
            code: EXIT_POSITIVE,
        }),
        Err(e) => Ok(Outcome::failed(header("word", &spec, start), e)),
    }
}

fn freeness_fields(r: &mut Report, f: &FreenessReport) {
    r.field("patterns", f.patterns_tested)
        .field("rank", f.rank)
        .field(
            "verdict",
            if f.independent() {
                "independent"
            } else {
                "dependent"
            },
        )
        .field("horizon_qualified", f.horizon_qualified);
    if let Some(dep) = &f.dependency {
        let relation = dep
            .relation()
            .map(|(p, c)| {
                let pattern: String = p.iter().map(|&s| format!("g{}", s + 1)).collect();
                format!("{c}*{}", if pattern.is_empty() { "1" } else { &pattern })
            })
            .collect::<Vec<_>>()
            .join(" + ");
        r.field("relation", relation);
    }
}

fn free(args: &FreeArgs) -> Result<Outcome> {
    let need_spec = || -> Result<(MorphismSpec, Letter)> {
        let path = args
            .spec
            .clone()
            .ok_or_else(|| anyhow!("--view {} needs --spec", args.view))?;
        load(&MorphismArgs {
            spec: path,
            start: args.start.clone(),
        })
    };
    let need_alphabet = || -> Result<Alphabet> {
        let letters = args
            .alphabet
            .as_deref()
            .ok_or_else(|| anyhow!("--view {} needs --alphabet", args.view))?;
        Alphabet::from_chars(letters).map_err(|e| anyhow!("{e}"))
    };
    let mut r = Report::new();
    r.field("command", "free").field("view", &args.view);
    let built: std::result::Result<AlgebraView, MonalgError> = match args.view.as_str() {
        "factors" => {
            let (spec, start) = need_spec()?;
            r.field("morphism", spec.morphism.describe())
                .field("horizon", args.horizon);
            PrefixStream::morphic(spec.morphism.clone(), start)
                .map_err(MonalgError::from)
                .and_then(|mut s| AlgebraView::factors_of(&mut s, args.horizon))
        }
        "interleaved" => {
            let (spec, start) = need_spec()?;
            r.field("morphism", spec.morphism.describe())
                .field("order", DifferenceOrder::Canonical.tag())
                .field("horizon", args.horizon);
            PrefixStream::morphic(spec.morphism.clone(), start)
                .map_err(MonalgError::from)
                .and_then(|base| {
                    let mut s = InterleaveSpec::new(base, DifferenceOrder::Canonical).into_stream();
                    AlgebraView::factors_of(&mut s, args.horizon)
                })
        }
        "cubes" => Ok(AlgebraView::cube_free(need_alphabet()?)),
        "free" => Ok(AlgebraView::free(need_alphabet()?)),
        other => bail!("unknown view `{other}`"),
    };
    let view = match built {
        Ok(v) => v,
        Err(e) => return Ok(Outcome::failed(r, e)),
    };
    let gens = args
        .generators
        .iter()
        .map(|g| parse_polynomial(g, view.alphabet()))
        .collect::<Result<Vec<_>>>()?;
    r.list("letters", view.alphabet().symbols())
        .list("generators", gens.iter().map(|g| g.render(view.alphabet())))
        .field("Lfree", args.l_free);
    match freeness_check(&view, &gens, args.l_free) {
        Ok(f) => {
            freeness_fields(&mut r, &f);
            Ok(Outcome::report(&r, f.independent()))
        }
        Err(e) => Ok(Outcome::failed(r, e)),
    }
}

fn pipeline(args: &PipelineArgs) -> Result<Outcome> {
    let config = PipelineConfig {
        horizon: args.horizon,
        max_pattern_len: args.l_free,
        max_difference: args.dmax,
        order: parse_order(&args.order)?,
    };
    let (morphism, start) = graded_nilpotent_base();
    let mut r = Report::new();
    r.field("command", "theorem32")
        .field("morphism", morphism.describe())
        .field("start", morphism.alphabet().symbol(start))
        .field("order", config.order.tag())
        .field("horizon", config.horizon)
        .field("Lfree", config.max_pattern_len)
        .field("dmax", config.max_difference);
    let report = match interleave_pipeline(&config) {
        Ok(p) => p,
        Err(e) => return Ok(Outcome::failed(r, e)),
    };
    let cert = &report.certificate;
    r.field("certificate", cert.verdict.tag())
        .field("u", morphism.alphabet().render(&cert.u))
        .list("gcd_sequence", &cert.gcd.values)
        .field("projection_is_base", report.projection_is_base)
        .field("weight_sums_equal", report.weight_sums_equal)
        .list("scan_horizons", &report.interleaved_scan.horizons);
    scan_rows(&mut r, &report.interleaved_scan, "tilde_");
    scan_rows(&mut r, &report.projected_scan, "base_");
    let primed = primed_alphabet(morphism.alphabet());
    r.list(
        "generators",
        report.freeness.generators.iter().map(|g| g.render(&primed)),
    );
    freeness_fields(&mut r, &report.freeness);
    r.field("passed", report.passed());
    Ok(Outcome::report(&r, report.passed()))
}

fn rowen(args: &RowenArgs) -> Result<Outcome> {
    let n = args.n;
    if n < 2 {
        bail!("--N must be at least 2");
    }
    let mut r = Report::new();
    r.field("command", "rowen")
        .field("N", n)
        .field("margin", args.margin)
        .field("maxlen", args.maxlen)
        .field("horizon", args.horizon);

    let corr = match correspondence_scan(args.maxlen, n, args.margin, args.horizon) {
        Ok(c) => c,
        Err(e) => return Ok(Outcome::failed(r, e)),
    };
    let ab = morphalg_core::rowen::generator_alphabet();
    r.field("words_checked", corr.words_checked)
        .field("agreements", corr.agreements)
        .list("mismatches", corr.mismatches.iter().map(|w| ab.render(w)));
    let mut ok = corr.mismatches.is_empty();

    for (name, c) in [("a", A), ("b", B)] {
        match nilpotency_index(&GradedElement::one(), c, n, args.margin) {
            Ok(idx) => {
                ok &= idx.stable();
                r.field(format!("nil_index_{name}"), idx.index)
                    .field(format!("nil_index_{name}_2N"), idx.index_at_2n);
            }
            Err(e) => {
                ok = false;
                r.field(format!("nil_index_{name}"), format!("error: {e}"));
            }
        }
    }

    let (a, b) = build_generators(n);
    let shift = a.checked_add(&b).map_err(|e| anyhow!("{e}"))?;
    let below = shift.checked_pow(n - 1).map_err(|e| anyhow!("{e}"))?;
    let at = below.checked_mul(&shift).map_err(|e| anyhow!("{e}"))?;
    r.field("shift_power_N_minus_1_nonzero", !below.is_zero())
        .field("shift_power_N_zero", at.is_zero());
    ok &= !below.is_zero() && at.is_zero();

    let witnesses: Vec<String> = (1..=args.umax)
        .map(|u| match n_u_witness(&ThueMorse, u, 1..=10_000, 1 << 16) {
            Ok(w) => w.to_string(),
            Err(_) => {
                ok = false;
                "none".to_string()
            }
        })
        .collect();
    r.list("n_u", witnesses).field("passed", ok);
    Ok(Outcome::report(&r, ok))
}

fn growth(args: &GrowthArgs) -> Result<Outcome> {
    let ns: Vec<usize> = args
        .n
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| anyhow!("bad length `{s}`")))
        .collect::<Result<_>>()?;
    let mut r = Report::new();
    r.field("command", "growth");
    let mut stream = match (&args.spec, &args.period) {
        (Some(_), Some(_)) => bail!("--spec and --period are exclusive"),
        (Some(path), None) => {
            let (spec, start) = load(&MorphismArgs {
                spec: path.clone(),
                start: args.start.clone(),
            })?;
            r.field(
                "word",
                format!(
                    "fixed point of {} at {}",
                    spec.morphism.describe(),
                    spec.morphism.alphabet().symbol(start)
                ),
            );
            match PrefixStream::morphic(spec.morphism, start) {
                Ok(s) => s,
                Err(e) => return Ok(Outcome::failed(r, e)),
            }
        }
        (None, Some(period)) => {
            let alphabet = Alphabet::from_chars(&args.alphabet).map_err(|e| anyhow!("{e}"))?;
            let word = alphabet
                .parse_word(period)
                .map_err(|e| anyhow!("--period: {e}"))?;
            r.field("word", format!("({period})^inf"));
            match PrefixStream::periodic(alphabet, word) {
                Ok(s) => s,
                Err(e) => return Ok(Outcome::failed(r, e)),
            }
        }
        (None, None) => {
            r.field("word", "thue-morse");
            thue_morse_stream()
        }
    };
    r.field("horizon", args.horizon).list("n", &ns);
    let profile = match growth_profile(&mut stream, &ns, args.horizon) {
        Ok(p) => p,
        Err(e) => return Ok(Outcome::failed(r, e)),
    };
    r.list("cumulative_counts", &profile.counts)
        .field("c0", format!("{:.4}", profile.c0))
        .field("c1", format!("{:.4}", profile.c1))
        .list(
            "ratios",
            profile.ratios.iter().map(|(n, x)| format!("{n}:{x:.4}")),
        )
        .field("lower_bound_holds", profile.lower_bound_holds())
        .field("upper_bound_holds", profile.upper_bound_holds())
        .field("quadratic", profile.quadratic());
    Ok(Outcome::report(&r, profile.quadratic()))
}

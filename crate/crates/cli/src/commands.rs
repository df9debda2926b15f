use std::ffi::OsString;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use wordperm_core::doubling::{DoublingContext, Restriction};
use wordperm_core::enumerate::enumerate_perms_with;
use wordperm_core::lab::{verify_suite, SuiteConfig, SuiteName, SuiteRow, Verdict};
use wordperm_core::perm::{complementary_pair_type, extract_subperm_with};
use wordperm_core::word::{class_table, factor_set, letters_to_string, recurrence_window};
use wordperm_core::{InfiniteWord, WordSpec};

use crate::config::{self, ConfigError, Settings};
use crate::parse::{parse_spec, SpecError};
use crate::report::{self, JsonRow};

#[derive(Debug, Parser)]
#[command(
    name = "wordperm",
    version,
    about = "Factor and permutation complexity of infinite binary words"
)]
pub struct Cli {
    /// Config file; defaults to ./wordperm.toml when present.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Start positions scanned by enumerations.
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// Largest prefix that may be materialized.
    #[arg(long, global = true)]
    hard_cap: Option<usize>,
    /// Most letters inspected when comparing two shifts.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Format {
    /// Emit CSV.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print letters of a word.
    Word {
        spec: String,
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long, default_value_t = 64)]
        len: usize,
        #[arg(long)]
        json: bool,
    },
    /// Factor complexity over a range of lengths.
    Rho {
        spec: String,
        /// Lengths, e.g. `3..20` (inclusive) or `7`.
        #[arg(short = 'n', long = "lengths", value_parser = parse_range)]
        lengths: RangeInclusive<usize>,
        #[command(flatten)]
        format: Format,
    },
    /// Permutation complexity over a range of lengths.
    Tau {
        spec: String,
        #[arg(short = 'n', long = "lengths", value_parser = parse_range)]
        lengths: RangeInclusive<usize>,
        /// Also count subpermutations by start parity.
        #[arg(long)]
        split: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Print one subpermutation.
    Perm {
        spec: String,
        #[arg(long, required_unless_present = "range")]
        at: Option<usize>,
        #[arg(long, requires = "at")]
        len: Option<usize>,
        /// Inclusive positions `a..b`.
        #[arg(long, value_parser = parse_range, conflicts_with_all = ["at", "len"])]
        range: Option<RangeInclusive<usize>>,
        #[arg(long)]
        json: bool,
    },
    /// Forward image of the window of length `--len` at `--at`.
    Delta {
        spec: String,
        #[arg(long)]
        at: usize,
        /// Window length n; the input has length n + k.
        #[arg(long)]
        len: usize,
        /// Skip the comparison with direct extraction.
        #[arg(long)]
        no_cross_check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run bounds, class words and recurrence window.
    Classes {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Distinct subpermutations with the same form, and their pair types.
    Pairs {
        spec: String,
        #[arg(short = 'n', long = "lengths", value_parser = parse_range)]
        lengths: RangeInclusive<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        spec: String,
        #[arg(short = 'n', long = "lengths", value_parser = parse_range)]
        lengths: Option<RangeInclusive<usize>>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[command(flatten)]
        format: Format,
    },
}

/// `a..b` and `a..=b` are inclusive; a single number is a one-element range.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a non-negative integer"))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok(a..=b)
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("invalid word spec `{text}`: {source}")]
    Spec { text: String, source: SpecError },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{source} (word {word}, {params})")]
    Engine {
        source: wordperm_core::Error,
        word: String,
        params: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Engine { .. } | CliError::Csv(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `dir` is where `wordperm.toml` is looked up.
pub fn run<I, T>(args: I, dir: &Path) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli, dir) {
        Ok((code, stdout)) => Output {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Output {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

struct Ctx {
    settings: Settings,
}

impl Ctx {
    fn spec(&self, text: &str) -> Result<WordSpec, CliError> {
        parse_spec(text).map_err(|source| CliError::Spec {
            text: text.to_string(),
            source,
        })
    }

    fn word(&self, spec: &WordSpec) -> Result<InfiniteWord, wordperm_core::Error> {
        InfiniteWord::with_hard_cap(spec.clone(), self.settings.hard_cap)
    }

    fn doubling(&self, spec: &WordSpec) -> Result<DoublingContext, wordperm_core::Error> {
        let mut ctx = DoublingContext::with_hard_cap(
            spec.clone(),
            self.settings.horizon,
            self.settings.hard_cap,
        )?;
        ctx.set_policy(self.settings.policy);
        Ok(ctx)
    }
}

fn engine(spec: &WordSpec, params: String) -> impl FnOnce(wordperm_core::Error) -> CliError {
    let word = spec.to_string();
    move |source| CliError::Engine {
        source,
        word,
        params,
    }
}

fn range_text(r: &RangeInclusive<usize>) -> String {
    format!("{}..{}", r.start(), r.end())
}

fn execute(cli: Cli, dir: &Path) -> Result<(u8, String), CliError> {
    let file = config::load(cli.config.as_deref(), dir)?;
    let mut settings = Settings::default().apply(&file);
    if let Some(h) = cli.horizon {
        settings.horizon = h;
    }
    if let Some(c) = cli.hard_cap {
        settings.hard_cap = c;
    }
    if let Some(c) = cli.cap {
        settings.policy.absolute_cap = c;
    }
    if settings.horizon == 0 {
        return Err(CliError::Usage("horizon must be positive".into()));
    }
    let ctx = Ctx { settings };
    let h = settings.horizon;

    match cli.command {
        Command::Word {
            spec,
            from,
            len,
            json,
        } => {
            let spec = ctx.spec(&spec)?;
            let params = format!("from {from}, len {len}");
            let mut w = ctx.word(&spec).map_err(engine(&spec, params.clone()))?;
            let letters = if len == 0 {
                String::new()
            } else {
                letters_to_string(
                    w.factor(from, from + len - 1)
                        .map_err(engine(&spec, params))?,
                )
            };
            if json {
                #[derive(Serialize)]
                struct Body {
                    word: String,
                    from: usize,
                    len: usize,
                    letters: String,
                }
                let body = Body {
                    word: spec.to_string(),
                    from,
                    len,
                    letters,
                };
                return Ok((EXIT_OK, report::json("word", &body)));
            }
            Ok((EXIT_OK, letters + "\n"))
        }

        Command::Rho {
            spec,
            lengths,
            format,
        } => {
            let spec = ctx.spec(&spec)?;
            let params = format!("n = {}, horizon {h}", range_text(&lengths));
            let mut w = ctx.word(&spec).map_err(engine(&spec, params.clone()))?;
            let mut rows = Vec::new();
            for n in lengths.clone() {
                let f = factor_set(&mut w, n, h).map_err(engine(&spec, params.clone()))?;
                rows.push(SuiteRow {
                    rho: Some(f.count()),
                    converged: f.converged(),
                    ..SuiteRow::blank(n)
                });
            }
            let table = |rows: &[SuiteRow]| {
                let cells: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| vec![r.n.to_string(), report::opt(r.rho), r.converged.to_string()])
                    .collect();
                report::table(&["n", "rho", "converged"], &cells)
            };
            render_rows("rho", &spec, h, None, &rows, &[], &format, table)
        }

        Command::Tau {
            spec,
            lengths,
            split,
            format,
        } => {
            let spec = ctx.spec(&spec)?;
            let params = format!("n = {}, horizon {h}", range_text(&lengths));
            if *lengths.start() == 0 {
                return Err(CliError::Usage("lengths start at 1".into()));
            }
            let mut w = ctx.word(&spec).map_err(engine(&spec, params.clone()))?;
            let reports = enumerate_perms_with(&mut w, lengths, h, &settings.policy)
                .map_err(engine(&spec, params))?;
            let rows: Vec<SuiteRow> = reports
                .iter()
                .map(|r| SuiteRow {
                    tau: Some(r.tau()),
                    tau_even: split.then(|| r.even_count()),
                    tau_odd: split.then(|| r.odd_count()),
                    converged: r.converged(),
                    detail: format!("last new at {}", r.last_new),
                    ..SuiteRow::blank(r.n)
                })
                .collect();
            let table = |rows: &[SuiteRow]| {
                let mut headers = vec!["n", "tau"];
                if split {
                    headers.extend(["even", "odd"]);
                }
                headers.push("converged");
                let cells: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        let mut c = vec![r.n.to_string(), report::opt(r.tau)];
                        if split {
                            c.extend([report::opt(r.tau_even), report::opt(r.tau_odd)]);
                        }
                        c.push(r.converged.to_string());
                        c
                    })
                    .collect();
                report::table(&headers, &cells)
            };
            render_rows("tau", &spec, h, None, &rows, &[], &format, table)
        }

        Command::Perm {
            spec,
            at,
            len,
            range,
            json,
        } => {
            let spec = ctx.spec(&spec)?;
            let (a, n) = match (range, at, len) {
                (Some(r), _, _) => (*r.start(), r.end() - r.start() + 1),
                (None, Some(a), Some(n)) => (a, n),
                _ => return Err(CliError::Usage("give --at and --len, or --range".into())),
            };
            let params = format!("at {a}, len {n}");
            let mut w = ctx.word(&spec).map_err(engine(&spec, params.clone()))?;
            let p = extract_subperm_with(&mut w, a, n, &settings.policy)
                .map_err(engine(&spec, params))?;
            if json {
                #[derive(Serialize)]
                struct Body {
                    word: String,
                    at: usize,
                    len: usize,
                    perm: String,
                    form: String,
                }
                let form = if n >= 2 {
                    letters_to_string(&p.form().expect("length checked"))
                } else {
                    String::new()
                };
                let body = Body {
                    word: spec.to_string(),
                    at: a,
                    len: n,
                    perm: p.to_string(),
                    form,
                };
                return Ok((EXIT_OK, report::json("perm", &body)));
            }
            Ok((EXIT_OK, format!("{p}\n")))
        }

        Command::Delta {
            spec,
            at,
            len,
            no_cross_check,
            json,
        } => {
            let spec = ctx.spec(&spec)?;
            let params = format!("at {at}, window {len}, horizon {h}");
            let err = |s: &WordSpec| engine(s, params.clone());
            let mut dc = ctx.doubling(&spec).map_err(err(&spec))?;
            dc.set_cross_check(!no_cross_check);
            let r = dc.delta(at, len).map_err(err(&spec))?;
            let mut restricted = Vec::new();
            for kind in [Restriction::Left, Restriction::Right, Restriction::Middle] {
                let img = if len >= 2 || kind != Restriction::Middle {
                    Some(
                        dc.restricted(at, len, kind)
                            .map_err(err(&spec))?
                            .to_string(),
                    )
                } else {
                    None
                };
                restricted.push((kind.name(), img));
            }
            let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            if json {
                #[derive(Serialize)]
                struct Body {
                    word: String,
                    at: usize,
                    window: usize,
                    k: usize,
                    input: String,
                    window_factor: String,
                    classes: Vec<usize>,
                    gamma_sizes: Vec<usize>,
                    sums: Vec<usize>,
                    image: String,
                    delta_l: Option<String>,
                    delta_r: Option<String>,
                    delta_m: Option<String>,
                    cross_check: bool,
                }
                let body = Body {
                    word: spec.to_string(),
                    at,
                    window: len,
                    k: r.k,
                    input: r.input.to_string(),
                    window_factor: letters_to_string(&r.window_factor),
                    classes: r.classes.clone(),
                    gamma_sizes: r.profile.sizes(),
                    sums: r.profile.sums.clone(),
                    image: r.image.to_string(),
                    delta_l: restricted[0].1.clone(),
                    delta_r: restricted[1].1.clone(),
                    delta_m: restricted[2].1.clone(),
                    cross_check: r.cross_checked,
                };
                return Ok((EXIT_OK, report::json("delta", &body)));
            }
            let mut lines = vec![
                ("input".to_string(), r.input.to_string()),
                ("factor".into(), letters_to_string(&r.window_factor)),
                ("classes".into(), join(&r.classes)),
                ("gamma".into(), join(&r.profile.sizes())),
                ("S".into(), join(&r.profile.sums)),
                ("image".into(), r.image.to_string()),
            ];
            for (name, img) in restricted {
                lines.push((name.to_string(), img.unwrap_or_else(|| "-".into())));
            }
            lines.push((
                "cross-check".into(),
                if r.cross_checked { "ok" } else { "skipped" }.into(),
            ));
            let out: String = lines
                .iter()
                .map(|(k, v)| format!("{k:<12} {v}\n"))
                .collect();
            Ok((EXIT_OK, out))
        }

        Command::Classes { spec, json } => {
            let spec = ctx.spec(&spec)?;
            let params = format!("horizon {h}");
            let mut w = ctx.word(&spec).map_err(engine(&spec, params.clone()))?;
            let t = class_table(&mut w, h).map_err(engine(&spec, params.clone()))?;
            let rw = recurrence_window(&mut w, t.k(), h).map_err(engine(&spec, params))?;
            let words: Vec<String> = t.classes.iter().map(|c| letters_to_string(c)).collect();
            if json {
                #[derive(Serialize)]
                struct Body {
                    word: String,
                    k0: usize,
                    k1: usize,
                    k: usize,
                    classes: Vec<String>,
                    recurrence_window: usize,
                    converged: bool,
                }
                let body = Body {
                    word: spec.to_string(),
                    k0: t.k0(),
                    k1: t.k1(),
                    k: t.k(),
                    classes: words,
                    recurrence_window: rw.window,
                    converged: t.converged && rw.converged,
                };
                return Ok((EXIT_OK, report::json("classes", &body)));
            }
            let mut out = format!(
                "k0 = {}, k1 = {}, k = {}\nrecurrence window for length {}: {}{}\n",
                t.k0(),
                t.k1(),
                t.k(),
                t.k(),
                rw.window,
                if t.converged && rw.converged {
                    ""
                } else {
                    " (not converged)"
                }
            );
            let cells: Vec<Vec<String>> = words
                .iter()
                .enumerate()
                .map(|(j, w)| vec![j.to_string(), w.clone()])
                .collect();
            out.push_str(&report::table(&["class", "word"], &cells));
            Ok((EXIT_OK, out))
        }

        Command::Pairs {
            spec,
            lengths,
            json,
        } => {
            let spec = ctx.spec(&spec)?;
            let params = format!("n = {}, horizon {h}", range_text(&lengths));
            if *lengths.start() < 2 {
                return Err(CliError::Usage("pair lengths start at 2".into()));
            }
            let mut w = ctx.word(&spec).map_err(engine(&spec, params.clone()))?;
            let reports = enumerate_perms_with(&mut w, lengths, h, &settings.policy)
                .map_err(engine(&spec, params.clone()))?;
            #[derive(Serialize)]
            struct Pair {
                n: usize,
                p: String,
                q: String,
                #[serde(rename = "type")]
                kind: Option<usize>,
            }
            let mut pairs = Vec::new();
            for r in &reports {
                let perms: Vec<_> = r.perms.keys().collect();
                for (i, p) in perms.iter().enumerate() {
                    for q in &perms[i + 1..] {
                        if p.same_form(q) {
                            let kind = complementary_pair_type(p, q)
                                .map_err(engine(&spec, params.clone()))?;
                            pairs.push(Pair {
                                n: r.n,
                                p: p.to_string(),
                                q: q.to_string(),
                                kind,
                            });
                        }
                    }
                }
            }
            if json {
                #[derive(Serialize)]
                struct Body {
                    word: String,
                    horizon: usize,
                    pairs: Vec<Pair>,
                }
                let body = Body {
                    word: spec.to_string(),
                    horizon: h,
                    pairs,
                };
                return Ok((EXIT_OK, report::json("pairs", &body)));
            }
            let cells: Vec<Vec<String>> = pairs
                .iter()
                .map(|p| {
                    vec![
                        p.n.to_string(),
                        report::opt(p.kind),
                        p.p.clone(),
                        p.q.clone(),
                    ]
                })
                .collect();
            Ok((EXIT_OK, report::table(&["n", "type", "p", "q"], &cells)))
        }

        Command::Verify {
            suite,
            spec,
            lengths,
            samples,
            seed,
            format,
        } => {
            let name: SuiteName = suite.parse().map_err(|_| {
                let known: Vec<&str> = SuiteName::ALL.iter().map(|s| s.name()).collect();
                CliError::Usage(format!(
                    "unknown suite `{suite}` (known: {})",
                    known.join(", ")
                ))
            })?;
            let spec = ctx.spec(&spec)?;
            let lengths = lengths.unwrap_or_else(|| default_lengths(name));
            let params = format!("suite {name}, n = {}, horizon {h}", range_text(&lengths));
            let cfg = SuiteConfig {
                lengths,
                horizon: h,
                samples,
                seed,
                policy: settings.policy,
                hard_cap: settings.hard_cap,
            };
            let rep = verify_suite(name, &spec, &cfg).map_err(engine(&spec, params))?;
            let outcome = rep.outcome();
            let code = if outcome == Verdict::Pass {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            let table = |rows: &[SuiteRow]| {
                let cells: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.n.to_string(),
                            report::opt(r.tau),
                            report::opt(r.rho),
                            report::opt(r.formula),
                            r.verdict.to_string(),
                            r.detail.clone(),
                        ]
                    })
                    .collect();
                let mut out =
                    report::table(&["n", "tau", "rho", "formula", "verdict", "detail"], &cells);
                for r in rows {
                    for c in &r.counterexamples {
                        out.push_str(&format!("counterexample n = {}: {c}\n", r.n));
                    }
                }
                out
            };
            let (_, mut out) = render_rows(
                "verify",
                &spec,
                h,
                Some((name, outcome)),
                &rep.rows,
                &rep.notes,
                &format,
                table,
            )?;
            if !format.csv && !format.json {
                out.push_str(&format!("{name}: {outcome}\n"));
            }
            Ok((code, out))
        }
    }
}

fn default_lengths(name: SuiteName) -> RangeInclusive<usize> {
    match name {
        SuiteName::TmRho => 3..=64,
        SuiteName::TmTau | SuiteName::TmPairs => 6..=40,
        SuiteName::DoubledTm | SuiteName::TmInjectivity => 9..=24,
        SuiteName::DoubledSturmian => 2..=64,
        _ => 2..=24,
    }
}

#[allow(clippy::too_many_arguments)]
fn render_rows(
    command: &str,
    spec: &WordSpec,
    horizon: usize,
    suite: Option<(SuiteName, Verdict)>,
    rows: &[SuiteRow],
    notes: &[String],
    format: &Format,
    table: impl Fn(&[SuiteRow]) -> String,
) -> Result<(u8, String), CliError> {
    let word = spec.to_string();
    if format.csv {
        return Ok((EXIT_OK, report::csv(&word, horizon, rows)?));
    }
    if format.json {
        #[derive(Serialize)]
        struct Body<'a> {
            word: &'a str,
            horizon: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            suite: Option<&'static str>,
            #[serde(skip_serializing_if = "Option::is_none")]
            outcome: Option<&'static str>,
            rows: Vec<JsonRow>,
            notes: &'a [String],
        }
        let body = Body {
            word: &word,
            horizon,
            suite: suite.map(|(s, _)| s.name()),
            outcome: suite.map(|(_, v)| v.as_str()),
            rows: rows.iter().map(JsonRow::from).collect(),
            notes,
        };
        return Ok((EXIT_OK, report::json(command, &body)));
    }
    let mut out = table(rows);
    for n in notes {
        out.push_str(&format!("note: {n}\n"));
    }
    Ok((EXIT_OK, out))
}

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use tate_core::complexes::{format_coarse, BettiTable, FreeEComplex};
use tate_core::input::{table_doc, window_doc, InputDoc, Source};
use tate_core::multigraded::{Multidegree, Ring, RingSpec};
use tate_core::resolutions::ExtendOptions;
use tate_core::smodule::SComplex;
use tate_core::tate::{
    apply_u, beilinson_window, cohomology_table_bw, corner, corner_from_bw, detect_bundle, detect_bundle_table, detect_split,
    pushforward_strand, tate_window_complex, CohomologyTable, WindowOptions,
};
use tate_core::TateError;

#[derive(Parser)]
#[command(name = "tate", version, about = "Tate resolutions on products of projective spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Global,
}

#[derive(Args)]
struct Global {
    /// Dimensions of the factors, e.g. `1,1`.  Without an input file the
    /// structure sheaf on this product is used.
    #[arg(long, global = true, value_parser = parse_dims)]
    ring: Option<Dims>,
    /// Lower corner of the degree box, e.g. `-3,-3`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_degree)]
    lo: Option<Multidegree>,
    /// Upper corner of the degree box.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_degree)]
    hi: Option<Multidegree>,
    /// Number of positions to compute past the starting one.
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// Largest dimension of a single degree slice.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Worker threads for the linear algebra.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cohomology table on a box.
    Table {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = From::Module)]
        from: From,
    },
    /// Window of the Tate resolution on a box.
    Window { input: Option<PathBuf> },
    /// Corner complex at a degree.
    Corner {
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_degree)]
        at: Multidegree,
    },
    /// Beilinson monad `U` of the Beilinson window.
    Beilinson { input: Option<PathBuf> },
    /// Strand through a degree, as the resolution of a direct image.
    Strand {
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_degree)]
        at: Multidegree,
        /// Factors kept by the direct image, 0-based, e.g. `1`.
        #[arg(long, value_parser = parse_dims)]
        j: Dims,
    },
    /// Decide whether a vector bundle is a sum of line bundles.
    Split { input: Option<PathBuf> },
    /// Vector-bundle test along the line `a + s b`.
    CheckBundle {
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_degree)]
        a: Option<Multidegree>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_degree)]
        b: Option<Multidegree>,
        #[arg(long, allow_hyphen_values = true)]
        t0: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        t1: Option<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum From {
    /// From the module, via its window.
    Module,
    /// From the Beilinson window alone.
    Window,
}

fn parse_ints(s: &str) -> std::result::Result<Vec<i64>, String> {
    s.trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
        .collect()
}

fn parse_degree(s: &str) -> std::result::Result<Multidegree, String> {
    parse_ints(s).map(Multidegree)
}

/// Comma-separated list of nonnegative integers.
#[derive(Clone, Debug)]
struct Dims(Vec<usize>);

fn parse_dims(s: &str) -> std::result::Result<Dims, String> {
    parse_ints(s)?
        .into_iter()
        .map(|x| usize::try_from(x).map_err(|_| format!("{x} is negative")))
        .collect::<std::result::Result<_, _>>()
        .map(Dims)
}

/// Exit status for an error: 2 for unreadable or invalid input, 3 when a
/// box or budget is too small, 1 otherwise.
fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(t) = cause.downcast_ref::<TateError>() {
            return match t {
                TateError::BoxOverflow(_) | TateError::BudgetExceeded { .. } | TateError::WindowTooSmall(_) => 3,
                TateError::BadInput(_) | TateError::LengthMismatch { .. } | TateError::InvalidRing(_) => 2,
                _ => 1,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

struct Ctx {
    opts: Global,
}

impl Ctx {
    fn extend(&self) -> ExtendOptions {
        let mut o = ExtendOptions::default();
        if let Some(b) = self.opts.budget {
            o.budget = b;
        }
        o
    }

    fn window_opts(&self) -> WindowOptions {
        WindowOptions { extend: self.extend(), c: None }
    }

    fn load(&self, path: &Option<PathBuf>) -> Result<Source> {
        let ring =
            self.opts.ring.as_ref().map(|n| RingSpec::new(n.0.clone(), tate_core::multigraded::DEFAULT_PRIME)).transpose()?;
        let Some(path) = path else {
            let ring = ring.ok_or_else(|| TateError::BadInput("give an input file or --ring".into()))?;
            return Ok(Source::Sheaf(SComplex::single(tate_core::catalog::structure_sheaf(&ring), 0)));
        };
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        };
        let src = InputDoc::parse(&text)?.resolve()?;
        if let Some(r) = ring {
            if r.n != src.ring().n {
                return Err(
                    TateError::BadInput(format!("--ring {:?} does not match the input ring {:?}", r.n, src.ring().n)).into()
                );
            }
        }
        Ok(src)
    }

    /// `--lo`/`--hi`, each defaulting to the given corner.
    fn box_or(&self, spec: &RingSpec, lo: Multidegree, hi: Multidegree) -> Result<(Multidegree, Multidegree)> {
        let lo = self.opts.lo.clone().unwrap_or(lo);
        let hi = self.opts.hi.clone().unwrap_or(hi);
        spec.check(&lo)?;
        spec.check(&hi)?;
        if !lo.le(&hi) {
            bail!(TateError::BadInput(format!("empty box [{lo}, {hi}]")));
        }
        Ok((lo, hi))
    }

    fn default_box(&self, spec: &RingSpec) -> Result<(Multidegree, Multidegree)> {
        let r = &spec.n_deg() + &Multidegree::splat(spec.t(), 2);
        self.box_or(spec, -&r, r)
    }

    fn window(&self, mc: &SComplex, lo: &Multidegree, hi: &Multidegree) -> Result<FreeEComplex> {
        Ok(tate_window_complex(mc, lo, hi, &self.window_opts())?.complex)
    }

    /// The Beilinson window of a sheaf or of a given complex.
    fn bw(&self, src: &Source) -> Result<FreeEComplex> {
        match src {
            Source::Sheaf(mc) => {
                let spec = &mc.ring;
                Ok(beilinson_window(&self.window(mc, &-&spec.n_deg(), &spec.zero())?))
            }
            Source::Window(w) => Ok(beilinson_window(w)),
            Source::Table(..) => bail!(TateError::BadInput("a cohomology table has no Beilinson window".into())),
        }
    }

    /// Table on `[lo, hi]` from the Beilinson window.
    fn table_from_bw(&self, spec: &RingSpec, bw: &FreeEComplex, lo: &Multidegree, hi: &Multidegree) -> Result<CohomologyTable> {
        let ring = Ring::new(spec.clone())?;
        let a = lo.meet(&-&spec.top_deg());
        let b = hi.join(&spec.ones());
        Ok(cohomology_table_bw(&ring, bw, &a, &b, &self.extend())?.restrict(lo, hi))
    }

    fn table(&self, src: &Source, from: From) -> Result<(CohomologyTable, Multidegree, Multidegree)> {
        let spec = src.ring().clone();
        let (lo, hi) = self.default_box(&spec)?;
        let t = match (src, from) {
            (Source::Table(_, t), _) => t.restrict(&lo, &hi),
            (Source::Sheaf(mc), From::Module) => CohomologyTable::from_window(&self.window(mc, &lo, &hi)?, &lo, &hi),
            _ => self.table_from_bw(&spec, &self.bw(src)?, &lo, &hi)?,
        };
        Ok((t, lo, hi))
    }
}

fn coarse_json(c: &BTreeMap<(i64, i64), usize>) -> Value {
    Value::Array(c.iter().map(|(&(row, col), &m)| json!({"row": row, "col": col, "count": m})).collect())
}

fn print_table(t: &CohomologyTable) -> Result<()> {
    if t.entries.is_empty() {
        println!("(empty)");
    } else if t.bounds().map(|(lo, _)| lo.len()) == Some(2) {
        print!("{}", t.format_matrix()?);
    } else {
        print!("{}", t.format_list());
    }
    Ok(())
}

fn print_betti(title: &str, betti: &BettiTable, shift: i64) {
    println!("{title}");
    print!("{}", format_coarse(&betti.coarse(shift)));
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.opts.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| anyhow!("thread pool: {e}"))?;
    }
    let ctx = Ctx { opts: cli.opts };
    let json = ctx.opts.json;
    match cli.cmd {
        Cmd::Table { input, from } => {
            let src = ctx.load(&input)?;
            let (t, _, _) = ctx.table(&src, from)?;
            if json {
                println!("{}", table_doc(src.ring(), &t));
            } else {
                print_table(&t)?;
            }
        }
        Cmd::Window { input } => {
            let src = ctx.load(&input)?;
            let Source::Sheaf(mc) = &src else {
                bail!(TateError::BadInput("window needs a module or complex input".into()));
            };
            let (lo, hi) = ctx.default_box(&mc.ring)?;
            let w = ctx.window(mc, &lo, &hi)?;
            if json {
                println!("{}", window_doc(&w)?);
            } else {
                print_betti(&format!("window on [{lo}, {hi}], rows d-|a|, columns d"), &w.betti(), 0);
            }
        }
        Cmd::Corner { input, at } => {
            let src = ctx.load(&input)?;
            let spec = src.ring().clone();
            spec.check(&at)?;
            let ring = Ring::new(spec.clone())?;
            let t = spec.t() as i64;
            let (complex, shift) = match &src {
                Source::Sheaf(mc) => {
                    // positions k0..=k1 of the corner, and a box holding every
                    // summand that can occur there
                    let steps = ctx.opts.steps.unwrap_or(4) as i64;
                    let (k0, k1) = (at.total() - steps, at.total() + steps - 1);
                    let nn = spec.n_total();
                    let hi = Multidegree(at.0.iter().map(|&c| k1 - at.total() + c).collect());
                    let lo = Multidegree(
                        (0..spec.t()).map(|i| k0 - t + 1 - nn - (at.total() - at[i]) + (spec.t() as i64 - 1)).collect(),
                    );
                    let (lo, hi) = ctx.box_or(&spec, lo, hi)?;
                    let w = ctx.window(mc, &lo, &hi)?;
                    let k = corner(&ring, &w, &at)?;
                    (k.select(|d, _| (k0..=k1).contains(&d)), -(t - 1))
                }
                Source::Window(_) => {
                    let bw = ctx.bw(&src)?;
                    (corner_from_bw(&ring, &bw, &at, ctx.opts.steps.unwrap_or(2), &ctx.extend())?.complex, -(t - 1))
                }
                Source::Table(..) => bail!(TateError::BadInput("corner needs a module, complex or window input".into())),
            };
            if json {
                println!("{}", json!({"at": at, "shift": shift, "betti": coarse_json(&complex.betti().coarse(shift))}));
            } else {
                print_betti(&format!("corner complex at {at}, rows d-|a|, columns d{shift:+}"), &complex.betti(), shift);
            }
        }
        Cmd::Beilinson { input } => {
            let src = ctx.load(&input)?;
            let u = apply_u(&ctx.bw(&src)?);
            if json {
                let terms: Vec<Value> = u
                    .terms()
                    .iter()
                    .map(|(d, v)| json!({"d": d, "summands": v.iter().map(|(a, m)| json!({"a": a, "mult": m, "label": u.label(a, true)})).collect::<Vec<_>>()}))
                    .collect();
                println!("{}", json!({"monad": u.format(true), "terms": terms}));
            } else {
                println!("{}", u.format(true));
            }
        }
        Cmd::Strand { input, at, j } => {
            let src = ctx.load(&input)?;
            let spec = src.ring().clone();
            let w = match &src {
                Source::Sheaf(mc) => {
                    let (lo, hi) = ctx.default_box(&spec)?;
                    ctx.window(mc, &lo, &hi)?
                }
                Source::Window(w) => w.clone(),
                Source::Table(..) => bail!(TateError::BadInput("strand needs a module, complex or window input".into())),
            };
            let j = j.0;
            let s = pushforward_strand(&w, &j, &at)?;
            if json {
                println!("{}", window_doc(&s)?);
            } else {
                print_betti(&format!("strand through {at} over the factors {j:?}, rows d-|a|, columns d"), &s.betti(), 0);
            }
        }
        Cmd::Split { input } => {
            let src = ctx.load(&input)?;
            let (t, _, _) = ctx.table(&src, From::Module)?;
            let out = detect_split(src.ring(), &t)?;
            if json {
                println!("{}", serde_json::to_string(&out)?);
            } else {
                match out {
                    tate_core::tate::SplitOutcome::Split { summands } => {
                        let parts: Vec<String> =
                            summands.iter().map(|(c, m)| if *m == 1 { format!("O{c}") } else { format!("O{c}^{m}") }).collect();
                        println!("split: {}", parts.join(" ⊕ "));
                    }
                    tate_core::tate::SplitOutcome::NotSplit { reason } => println!("not split: {reason}"),
                    tate_core::tate::SplitOutcome::Inconclusive { reason } => println!("inconclusive: {reason}"),
                }
            }
        }
        Cmd::CheckBundle { input, a, b, t0, t1 } => {
            let src = ctx.load(&input)?;
            let spec = src.ring().clone();
            let nn = spec.n_total();
            let a = a.unwrap_or_else(|| spec.zero());
            let b = b.unwrap_or_else(|| spec.ones());
            let (t0, t1) = (t0.unwrap_or(-3 * nn), t1.unwrap_or(3 * nn));
            let ring = Ring::new(spec.clone())?;
            let ok = match &src {
                Source::Table(_, t) => detect_bundle_table(&spec, t, &a, &b, t0, t1)?,
                _ => detect_bundle(&ring, &ctx.bw(&src)?, &a, &b, t0, t1, &ctx.extend())?,
            };
            if json {
                println!("{}", json!({"vector_bundle": ok, "a": a, "b": b, "t0": t0, "t1": t1}));
            } else {
                println!("{}", if ok { "vector bundle: yes" } else { "vector bundle: test failed" });
            }
        }
    }
    Ok(())
}

//! Command-line front end: argument types (also the serializable run configuration) and
//! the dispatch for the four subcommands.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::arcs::ArcDissection;
use crate::census::{filter_a_upsilon, verify_obstruction_family, Census, SumsetMethod};
use crate::config::{memory_budget, Emitter, Provenance};
use crate::cubes::sieve_cube_sums;
use crate::error::{Error, Result};
use crate::expsum::{truncated_singular_series, CompleteSums};
use crate::genfn::{alpha_sweep, write_sweep_tsv};
use crate::local::{
    hensel_certificate, m33_set, paper_sets_a_b, sigma_p, two_adic_profile, EXPECTED_SET_A, EXPECTED_SET_A_PLUS_B,
};
use crate::main_term::{main_term_comparison, zero_frequency_check, MainTermConfig};
use crate::oscillatory::{decay_envelope, osc_integral_v, OscKind, OscMethod};
use crate::params::{derive_params, Params};
use crate::rn::{dft_rn_all, exact_rn, exact_rn_all, DEFAULT_RN_BUDGET};
use crate::singular_integral::{singular_integral_j, JOptions, Sampler};
use crate::smooth::{enumerate_smooth, estimate_c_eta};
use crate::w2::{check_majorant, summatory_w2_squared, w2};
use crate::weights::{build_weight_table, write_sieve_binary, write_sieve_csv, Role, WeightTable};

#[derive(Debug, Parser)]
#[command(name = "cubesq", version, about = "Circle-method laboratory for sums of four squares of sums of three cubes")]
pub struct Cli {
    /// Read the run configuration from a JSON file instead of the command line.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for output files; without it text and JSON go to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print the run configuration as JSON and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

/// The hashed part of a run: everything that can change an output.
#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "snake_case")]
pub enum Command {
    /// Cube-sum sieves, smooth sets, weight tables.
    Enumerate(EnumerateArgs),
    /// Exponential sums, singular series, local densities, w2.
    Local(LocalArgs),
    /// Generating sums, arcs, oscillatory integrals, R(n), J(n), main term.
    Arcs(ArcsArgs),
    /// Exceptional-set census.
    Census(CensusArgs),
}

/// Size parameters shared by several subcommands.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ScaleArgs {
    /// Target size N (P = floor(N^{1/6})).
    #[arg(long = "N")]
    pub n_target: Option<u128>,
    /// Scale P directly (N = P^6); ignored when --N is given.
    #[arg(long = "P")]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    /// Smoothness bound override.
    #[arg(long = "R")]
    pub r: Option<u64>,
    /// Multiplier scale override (H = P^3 / M^3).
    #[arg(long = "M")]
    pub m: Option<f64>,
    /// Explicit multiplier primes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
    /// Treat an empty multiplier window as W = 0 instead of failing.
    #[arg(long)]
    pub allow_empty_primes: bool,
}

impl ScaleArgs {
    fn params(&self, default_p: u64) -> Result<Params> {
        let n = match (self.n_target, self.p) {
            (Some(n), _) => n,
            (None, Some(p)) => (p as u128).pow(6),
            (None, None) => (default_p as u128).pow(6),
        };
        let params = derive_params(n, self.eta, self.r)?;
        match self.m {
            Some(m) => params.with_m(m),
            None => Ok(params),
        }
    }

    fn primes(&self, params: &Params) -> Result<Vec<u64>> {
        let primes = if self.primes.is_empty() { params.prime_window() } else { self.primes.clone() };
        if primes.is_empty() && !self.allow_empty_primes {
            return Err(Error::DegeneratePrimeRange { lo: params.m / 2.0, hi: params.m });
        }
        Ok(primes)
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct EnumerateArgs {
    /// Sums of three positive cubes up to X.
    #[arg(long)]
    pub csums: Option<u64>,
    /// Keep ordered representation counts as multiplicities.
    #[arg(long)]
    pub counts: bool,
    /// R-smooth numbers up to Y (with --bound R).
    #[arg(long)]
    pub smooth: Option<u64>,
    #[arg(long)]
    pub bound: Option<u64>,
    /// Weight table of role a or b at the given scale.
    #[arg(long, value_parser = ["a", "b"])]
    pub weights: Option<String>,
    /// Report |A(P, R)| / P at the given scale.
    #[arg(long)]
    pub c_eta: bool,
    /// Write tables in the WCL1 binary layout (needs --out).
    #[arg(long)]
    pub binary: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub scale: ScaleArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct LocalArgs {
    /// Recompute the residue sets A, B, A+B and M_{3,3}(27) and compare.
    #[arg(long)]
    pub verify_paper_sets: bool,
    /// Table of S(q, a) for all q <= Q and all a.
    #[arg(long)]
    pub sums: Option<u64>,
    /// Truncated singular series at n (with --Q).
    #[arg(long, allow_hyphen_values = true)]
    pub series: Option<i128>,
    #[arg(long = "Q", default_value_t = 64)]
    pub q_max: u64,
    /// Euler factor sigma(p) (with --n, --hmax, --tol).
    #[arg(long)]
    pub sigma_p: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i128>,
    #[arg(long, default_value_t = 3)]
    pub hmax: u32,
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Emit sigma(p) as CSV rows instead of JSON.
    #[arg(long)]
    pub csv: bool,
    /// w2 table or majorant check up to this q.
    #[arg(long)]
    pub w2_max: Option<u64>,
    #[arg(long)]
    pub check_majorant: bool,
    /// Hensel certificate for prime p (with --n).
    #[arg(long)]
    pub hensel: Option<u64>,
    /// 2-adic profile of n (with --h).
    #[arg(long)]
    pub two_adic: Option<u128>,
    #[arg(long)]
    pub h: Option<u32>,
    /// The set M_{3,3}(p^h) (with --h).
    #[arg(long)]
    pub m33: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ArcsArgs {
    /// Classify alpha (with --X and --n).
    #[arg(long)]
    pub classify: Option<f64>,
    #[arg(long = "X")]
    pub x: Option<f64>,
    /// Integer scaling the arc widths.
    #[arg(long, default_value_t = 1e6)]
    pub n: f64,
    /// Also report the majorant value at the classified alpha, with this epsilon.
    #[arg(long)]
    pub upsilon: Option<f64>,
    /// Check v(0) = P^3/2 by both quadrature routes.
    #[arg(long)]
    pub v_at_zero: bool,
    /// Exact R(n) by convolution, windowed sum and DFT.
    #[arg(long)]
    pub rn_exact: bool,
    /// Use the single-configuration toy tables.
    #[arg(long)]
    pub toy: bool,
    /// R(n) at this n for the scale's own tables.
    #[arg(long)]
    pub rn: Option<u64>,
    /// Sweep of h, W and the arc class over alpha.
    #[arg(long)]
    pub sweep: bool,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    /// Decay table of v(beta), or of v_p(beta) with --vp p.
    #[arg(long)]
    pub decay: bool,
    #[arg(long)]
    pub vp: Option<u64>,
    /// Largest `n |beta|` in the decay table; 25 log-spaced points from 0.01.
    #[arg(long, default_value_t = 10.0)]
    pub decay_max: f64,
    /// Singular integral J at this n.
    #[arg(long)]
    pub j: Option<f64>,
    #[arg(long, default_value_t = 1 << 22)]
    pub samples: u64,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.01)]
    pub rel_target: f64,
    /// Use the restricted lower-bound sampler for J.
    #[arg(long)]
    pub restricted: bool,
    /// R(n) against S(n; Q) J(n) over a window (desk setting P = 16 unless --P is given).
    #[arg(long)]
    pub main_term: bool,
    #[arg(long, default_value_t = 1 << 15)]
    pub width: u64,
    #[arg(long = "Q", default_value_t = 32)]
    pub q_max: u64,
    /// h(0) against V(0, 1, 0).
    #[arg(long)]
    pub zero_frequency: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub scale: ScaleArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CensusArgs {
    /// Decide every n <= N.
    #[arg(long = "N")]
    pub n_max: Option<u64>,
    /// Emit witnesses `n,c1,c2,c3,c4` for representable n <= min(N, --witness-max).
    #[arg(long)]
    pub witnesses: bool,
    #[arg(long, default_value_t = 10_000)]
    pub witness_max: u64,
    /// Emit the exceptional values one per line (capped at 1e5).
    #[arg(long)]
    pub e_list: bool,
    #[arg(long, value_parser = ["auto", "pairing", "transform", "scan"], default_value = "auto")]
    pub method: String,
    /// Verify the 2-adic obstruction family up to --jmax.
    #[arg(long)]
    pub family: bool,
    #[arg(long, default_value_t = 3)]
    pub jmax: u32,
    /// Count n <= N with 2^gamma(n) >= (ln N)^upsilon.
    #[arg(long)]
    pub upsilon: Option<f64>,
}

/// Parse, run, and map errors to exit codes.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli, std::io::stdout().lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            crate::config::exit_code(&e)
        }
    }
}

pub fn run<W: Write>(cli: Cli, stdout: W) -> Result<()> {
    let command = match (&cli.config, cli.command) {
        (Some(path), None) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        (None, Some(c)) => c,
        (Some(_), Some(_)) => return Err(Error::Contract("give either --config or a subcommand".into())),
        (None, None) => return Err(Error::Contract("no subcommand given (see --help)".into())),
    };
    if let Some(k) = cli.threads {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
    let mut em = Emitter::new(Provenance::new(&command)?, cli.out, stdout)?;
    if cli.dump_config {
        let mut body = serde_json::to_string_pretty(&command)?;
        body.push('\n');
        em.stdout.write_all(body.as_bytes())?;
        return Ok(());
    }
    match &command {
        Command::Enumerate(a) => cmd_enumerate(a, &mut em),
        Command::Local(a) => cmd_local(a, &mut em),
        Command::Arcs(a) => cmd_arcs(a, &mut em),
        Command::Census(a) => cmd_census(a, &mut em),
    }
}

fn nothing_to_do(sub: &str) -> Error {
    Error::Contract(format!("{sub}: no action flag given (see `cubesq {sub} --help`)"))
}

fn table_bytes(t: &WeightTable, binary: bool) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    if binary {
        t.write_binary(&mut buf)?;
    } else {
        t.write_csv(&mut buf)?;
    }
    Ok(buf)
}

pub fn cmd_enumerate<W: Write>(a: &EnumerateArgs, em: &mut Emitter<W>) -> Result<()> {
    let budget = memory_budget()?;
    let mut acted = false;
    if let Some(x) = a.csums {
        let sieve = sieve_cube_sums(x, a.counts, budget)?;
        let mut buf = Vec::new();
        if a.binary {
            write_sieve_binary(&sieve, &mut buf)?;
            em.binary("csums.bin", &buf)?;
        } else {
            write_sieve_csv(&sieve, &mut buf)?;
            em.text("csums.csv", &String::from_utf8_lossy(&buf))?;
        }
        acted = true;
    }
    if let Some(y) = a.smooth {
        let bound = a.bound.ok_or_else(|| Error::Contract("--smooth needs --bound".into()))?;
        let set = enumerate_smooth(y, bound);
        let body: String = std::iter::once("value".to_string()).chain(set.members.iter().map(u64::to_string)).map(|l| l + "\n").collect();
        em.text("smooth.csv", &body)?;
        acted = true;
    }
    if let Some(role) = &a.weights {
        let params = a.scale.params(8)?;
        let role = if role == "a" { Role::A } else { Role::B };
        let table = build_weight_table(&params, role);
        let name = format!("weights_{}", role.tag() as char);
        let buf = table_bytes(&table, a.binary)?;
        if a.binary {
            em.binary(&format!("{name}.bin"), &buf)?;
        } else {
            em.text(&format!("{name}.csv"), &String::from_utf8_lossy(&buf))?;
        }
        acted = true;
    }
    if a.c_eta {
        let params = a.scale.params(8)?;
        let c = estimate_c_eta(params.p, params.r);
        em.json("c_eta.json", &serde_json::json!({ "P": params.p, "R": params.r, "c_eta": c, "params": params }))?;
        acted = true;
    }
    if !acted {
        return Err(nothing_to_do("enumerate"));
    }
    Ok(())
}

pub fn cmd_local<W: Write>(a: &LocalArgs, em: &mut Emitter<W>) -> Result<()> {
    let budget = crate::local::DEFAULT_LOCAL_BUDGET;
    let mut acted = false;
    if a.verify_paper_sets {
        let sets = paper_sets_a_b()?;
        em.json(
            "residue_sets.json",
            &serde_json::json!({
                "A": sets.a, "B": sets.b, "A_plus_B": sets.a_plus_b, "M33_27": sets.m33_27,
                "expected_A": EXPECTED_SET_A, "expected_A_plus_B": EXPECTED_SET_A_PLUS_B, "match": true,
            }),
        )?;
        acted = true;
    }
    if let Some(q_max) = a.sums {
        let mut body = String::from("q,a,re,im\n");
        for q in 1..=q_max {
            let sums = CompleteSums::new(q)?;
            for r in 0..q {
                let s = sums.sum(r as i64);
                body.push_str(&format!("{q},{r},{:e},{:e}\n", s.re, s.im));
            }
        }
        em.text("sums.csv", &body)?;
        acted = true;
    }
    if let Some(n) = a.series {
        em.json("series.json", &truncated_singular_series(n, a.q_max)?)?;
        acted = true;
    }
    if let Some(p) = a.sigma_p {
        let n = a.n.ok_or_else(|| Error::Contract("--sigma-p needs --n".into()))?;
        let est = sigma_p(p, n, a.hmax, a.tol, budget)?;
        if a.csv {
            let mut body = String::from("p,h,value,delta,converged\n");
            for (i, v) in est.values.iter().enumerate() {
                let delta = if i == 0 { f64::NAN } else { est.deltas[i - 1] };
                body.push_str(&format!("{p},{},{v:e},{delta:e},{}\n", i + 1, est.converged));
            }
            em.text("sigma_p.csv", &body)?;
        } else {
            em.json("sigma_p.json", &est)?;
        }
        acted = true;
    }
    if let Some(q_max) = a.w2_max {
        if a.check_majorant {
            let report = check_majorant(q_max);
            let decades: Vec<u64> = std::iter::successors(Some(10u64), |d| d.checked_mul(10)).take_while(|&d| d <= q_max).collect();
            let sums = summatory_w2_squared(&decades);
            em.json("majorant.json", &serde_json::json!({ "report": report, "summatory_w2_squared": sums }))?;
            if !report.violations.is_empty() || !report.equality_matches_rule {
                return Err(Error::Verification(format!(
                    "w2 majorant: {} violations, equality rule holds: {}",
                    report.violations.len(),
                    report.equality_matches_rule
                )));
            }
        } else {
            let mut body = String::from("q,w2\n");
            for q in 1..=q_max {
                body.push_str(&format!("{q},{:e}\n", w2(q)));
            }
            em.text("w2.csv", &body)?;
        }
        acted = true;
    }
    if let Some(p) = a.hensel {
        let n = a.n.ok_or_else(|| Error::Contract("--hensel needs --n".into()))?;
        em.json("hensel.json", &hensel_certificate(p, n)?)?;
        acted = true;
    }
    if let Some(n) = a.two_adic {
        let h = a.h.ok_or_else(|| Error::Contract("--two-adic needs --h".into()))?;
        em.json("two_adic.json", &two_adic_profile(n, h, budget)?)?;
        acted = true;
    }
    if let Some(p) = a.m33 {
        let h = a.h.ok_or_else(|| Error::Contract("--m33 needs --h".into()))?;
        em.json("m33.json", &serde_json::json!({ "p": p, "h": h, "residues": m33_set(p, h, budget)? }))?;
        acted = true;
    }
    if !acted {
        return Err(nothing_to_do("local"));
    }
    Ok(())
}

fn toy_tables() -> (WeightTable, WeightTable, Vec<u64>) {
    (WeightTable::from_pairs(Role::A, [(3, 1)]), WeightTable::from_pairs(Role::B, [(3, 1)]), vec![2])
}

pub fn cmd_arcs<W: Write>(a: &ArcsArgs, em: &mut Emitter<W>) -> Result<()> {
    let mut acted = false;
    if let Some(alpha) = a.classify {
        let x = a.x.ok_or_else(|| Error::Contract("--classify needs --X".into()))?;
        if !(x >= 1.0 && a.n >= 1.0) {
            return Err(Error::Contract("need --X >= 1 and --n >= 1".into()));
        }
        let d = ArcDissection::new(x, a.n);
        let class = d.classify(alpha);
        let upsilon = a.upsilon.map(|eps| d.upsilon(alpha, eps));
        em.json("classify.json", &serde_json::json!({ "alpha": alpha, "X": x, "n": a.n, "arc": class, "upsilon": upsilon }))?;
        acted = true;
    }
    if a.v_at_zero {
        let params = a.scale.params(8)?;
        let vol = (params.p as f64).powi(3) / 2.0;
        let mut rows = Vec::new();
        for method in [OscMethod::Kernel1d, OscMethod::Cubature3d] {
            let v = osc_integral_v(0.0, &params, method, 1e-9 * vol)?;
            rows.push(serde_json::json!({ "method": method, "re": v.re, "im": v.im, "rel_error": (v.re - vol).abs() / vol }));
            if (v.re - vol).abs() > 1e-6 * vol {
                em.json("v_at_zero.json", &serde_json::json!({ "P": params.p, "expected": vol, "methods": rows }))?;
                return Err(Error::Verification(format!("v(0) = {} differs from P^3/2 = {vol}", v.re)));
            }
        }
        em.json("v_at_zero.json", &serde_json::json!({ "P": params.p, "expected": vol, "methods": rows }))?;
        acted = true;
    }
    if a.rn_exact {
        let (ta, tb, primes) = if a.toy {
            toy_tables()
        } else {
            let params = a.scale.params(4)?;
            let primes = a.scale.primes(&params)?;
            (build_weight_table(&params, Role::A), build_weight_table(&params, Role::B), primes)
        };
        let conv = exact_rn_all(&ta, &tb, &primes, DEFAULT_RN_BUDGET)?;
        let dft = dft_rn_all(&ta, &tb, &primes, DEFAULT_RN_BUDGET)?;
        if conv != dft {
            return Err(Error::Verification("convolution and DFT counts differ".into()));
        }
        let mut body = String::from("n,R\n");
        for (n, r) in conv.iter().enumerate().filter(|(_, &r)| r > 0) {
            body.push_str(&format!("{n},{r}\n"));
        }
        em.text("rn.csv", &body)?;
        acted = true;
    }
    if let Some(n) = a.rn {
        let params = a.scale.params(8)?;
        let primes = a.scale.primes(&params)?;
        let r = exact_rn(n, &build_weight_table(&params, Role::A), &build_weight_table(&params, Role::B), &primes, DEFAULT_RN_BUDGET)?;
        em.json("rn.json", &serde_json::json!({ "n": n, "R": r, "P": params.p, "primes": primes }))?;
        acted = true;
    }
    if a.sweep {
        let params = a.scale.params(8)?;
        let primes = a.scale.primes(&params)?;
        let ta = build_weight_table(&params, Role::A);
        let tb = build_weight_table(&params, Role::B);
        let d = ArcDissection::wide(&params, a.n);
        let alphas: Vec<f64> = (0..a.count).map(|i| i as f64 / a.count as f64).collect();
        let rows = alpha_sweep(&alphas, &d, &ta, &tb, &primes);
        let mut buf = Vec::new();
        write_sweep_tsv(&rows, &mut buf)?;
        em.text("sweep.tsv", &String::from_utf8_lossy(&buf))?;
        acted = true;
    }
    if a.decay {
        let params = a.scale.params(8)?;
        let kind = match a.vp {
            Some(p) => OscKind::Vp { p },
            None => OscKind::V,
        };
        let n = params.p6();
        if !(a.decay_max > 0.01 && a.decay_max.is_finite()) {
            return Err(Error::Contract(format!("--decay-max {} must exceed 0.01", a.decay_max)));
        }
        let span = (a.decay_max / 0.01).log10();
        let betas: Vec<f64> = (0..25).map(|i| 0.01 * 10f64.powf(span * i as f64 / 24.0) / n).collect();
        let vol = crate::oscillatory::OscRegion::of(&params, kind).volume();
        let report = decay_envelope(&params, kind, n, &betas, OscMethod::Kernel1d, 1e-6 * vol)?;
        let mut buf = Vec::new();
        report.write_tsv(&mut buf)?;
        em.text("decay.tsv", &String::from_utf8_lossy(&buf))?;
        acted = true;
    }
    if let Some(n) = a.j {
        let params = a.scale.params(8)?;
        let primes = a.scale.primes(&params)?;
        let opts = JOptions {
            seed: a.seed,
            budget: a.samples,
            rel_target: a.rel_target,
            sampler: if a.restricted { Sampler::Restricted } else { Sampler::Full },
        };
        em.json("j.json", &singular_integral_j(n, &params, &primes, &opts)?)?;
        acted = true;
    }
    if a.main_term {
        let mut cfg = MainTermConfig::desk_p16()?;
        if a.scale.p.is_some() || a.scale.n_target.is_some() {
            cfg.params = a.scale.params(16)?;
            cfg.primes = a.scale.primes(&cfg.params)?;
        } else if !a.scale.primes.is_empty() {
            cfg.primes = a.scale.primes.clone();
        }
        cfg.width = a.width;
        cfg.q_max = a.q_max;
        cfg.j_options.seed = a.seed;
        cfg.j_options.budget = a.samples.max(1000);
        em.json("main_term.json", &main_term_comparison(&cfg)?)?;
        acted = true;
    }
    if a.zero_frequency {
        let params = a.scale.params(10_000)?;
        em.json("zero_frequency.json", &zero_frequency_check(&params)?)?;
        acted = true;
    }
    if !acted {
        return Err(nothing_to_do("arcs"));
    }
    Ok(())
}

pub fn cmd_census<W: Write>(a: &CensusArgs, em: &mut Emitter<W>) -> Result<()> {
    let budget = memory_budget()?;
    let mut acted = false;
    let method = match a.method.as_str() {
        "pairing" => SumsetMethod::Pairing,
        "transform" => SumsetMethod::Transform,
        "scan" => SumsetMethod::Scan,
        _ => SumsetMethod::Auto,
    };
    let census = match a.n_max {
        Some(n) => Some(Census::new(n, method, budget)?),
        None => None,
    };
    if let Some(c) = &census {
        let summary = c.summary()?;
        em.json("census.json", &summary)?;
        if a.e_list {
            let body: String = summary.e_list.iter().map(|n| format!("{n}\n")).collect();
            em.text("e_list.txt", &body)?;
        }
        if a.witnesses {
            let mut body = String::from("n,c1,c2,c3,c4\n");
            for n in 1..=c.limit.min(a.witness_max) {
                if let Some(w) = c.witness(n) {
                    body.push_str(&format!("{n},{},{},{},{}\n", w[0], w[1], w[2], w[3]));
                }
            }
            em.text("witnesses.csv", &body)?;
        }
        acted = true;
    }
    if a.family {
        let report = verify_obstruction_family(a.jmax, census.as_ref())?;
        em.json("family.json", &report)?;
        if !report.all_obstructed {
            return Err(Error::Verification("2-adic family check failed".into()));
        }
        acted = true;
    }
    if let Some(u) = a.upsilon {
        let n = a.n_max.ok_or_else(|| Error::Contract("--upsilon needs --N".into()))?;
        em.json("upsilon.json", &filter_a_upsilon(n, u)?)?;
        acted = true;
    }
    if !acted {
        return Err(nothing_to_do("census"));
    }
    Ok(())
}

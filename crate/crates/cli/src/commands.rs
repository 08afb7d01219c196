use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use grainforge::analysis::{convolution_bias, empirical_bias, epsilon_bounds, exact_model_bias, index_sets, window_bounds};
use grainforge::boolfn::AnfPoly;
use grainforge::engine::{bits_to_bin, bits_to_hex, hex_to_bits, keystream, validate_params, GrainParams};
use grainforge::funlib::{custom_bundle, lookup, REGISTRY};
use grainforge::instances::{get_instance, instance_source, parse_config, render_config, render_vectors, INSTANCE_NAMES};
use grainforge::tapgen::{generate_taps, TapRequest};

use crate::report::{render_bias, render_empirical, render_eps, render_props, PropsOptions};

#[derive(Parser, Debug)]
#[command(name = "grainforge", version, about = "Grain-family stream ciphers and their analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print keystream bits after initialization.
    Keystream(KeystreamArgs),
    /// Report properties of a Boolean function.
    Props(PropsArgs),
    /// Check the design conditions of an instance.
    Validate(ValidateArgs),
    /// Generate tap lists from a seed.
    Tapgen(TapgenArgs),
    /// Index sets and bias of a linear approximation.
    Analyze(AnalyzeArgs),
    /// List the registered instances or print one as a config file.
    Instances(InstancesArgs),
    /// Print or write the golden keystream vectors.
    Vectors(VectorsArgs),
}

#[derive(Args, Debug)]
pub struct CipherSel {
    /// Registered instance name.
    #[arg(long, conflicts_with = "instance_file", required_unless_present = "instance_file")]
    cipher: Option<String>,
    /// Instance in config-file form.
    #[arg(long)]
    instance_file: Option<PathBuf>,
}

impl CipherSel {
    fn load(&self) -> Result<GrainParams> {
        match (&self.cipher, &self.instance_file) {
            (Some(name), _) => Ok(get_instance(name)?),
            (None, Some(path)) => load_file(path),
            (None, None) => bail!("either --cipher or --instance-file is required"),
        }
    }
}

fn load_file(path: &Path) -> Result<GrainParams> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec = parse_config(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(GrainParams::new(spec)?)
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BitFormat {
    Hex,
    Bin,
}

#[derive(Args, Debug)]
pub struct KeystreamArgs {
    #[command(flatten)]
    sel: CipherSel,
    /// Key as hex, bit i in byte i/8 at position i mod 8.
    #[arg(long)]
    key: String,
    #[arg(long)]
    iv: String,
    #[arg(long)]
    nbits: u128,
    #[arg(long, value_enum, default_value = "hex")]
    format: BitFormat,
    /// Permit output beyond the instance's keystream limit.
    #[arg(long)]
    allow_over_limit: bool,
}

#[derive(Args, Debug)]
pub struct PropsArgs {
    /// Registry name or family:k.
    #[arg(long, required_unless_present = "anf")]
    function: Option<String>,
    /// Inline ANF such as `x1*x2 + x3`; needs --n.
    #[arg(long, requires = "n", conflicts_with = "function")]
    anf: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Highest annihilator degree to try.
    #[arg(long)]
    ai_max_deg: Option<u32>,
    #[arg(long)]
    no_ai: bool,
    /// Print the full ANF.
    #[arg(long)]
    show_anf: bool,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[command(flatten)]
    sel: CipherSel,
    /// Treat every condition as hard, also for legacy instances.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug)]
pub struct TapgenArgs {
    /// Take sizes from a registered instance; explicit flags override.
    #[arg(long)]
    like: Option<String>,
    #[arg(long)]
    kappa1: Option<usize>,
    #[arg(long)]
    kappa2: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    n0: Option<usize>,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    p0: Option<usize>,
    #[arg(long)]
    p1: Option<usize>,
    #[arg(long)]
    q0: Option<usize>,
    #[arg(long)]
    q1: Option<usize>,
    /// LFSR taps, comma separated.
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum BiasMode {
    Exact,
    Conv,
    Empirical,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Instance name or config file path.
    #[arg(long)]
    instance: String,
    /// Output offsets, comma separated.
    #[arg(long = "T", value_delimiter = ',', required_unless_present = "eps")]
    t: Option<Vec<usize>>,
    /// Mask over λ_0..λ_{r-1} in keystream hex layout; zero when omitted.
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<BiasMode>,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the ε bounds for this many combined outputs instead.
    #[arg(long, conflicts_with = "t")]
    eps: Option<u32>,
}

#[derive(Args, Debug)]
pub struct InstancesArgs {
    /// Print this instance in config-file form.
    #[arg(long)]
    show: Option<String>,
}

#[derive(Args, Debug)]
pub struct VectorsArgs {
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    cipher: Option<String>,
    #[arg(long)]
    all: bool,
    /// Write one file per instance here instead of printing.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Keystream(a) => cmd_keystream(a),
        Command::Props(a) => cmd_props(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Tapgen(a) => cmd_tapgen(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Instances(a) => cmd_instances(a),
        Command::Vectors(a) => cmd_vectors(a),
    }
}

fn cmd_keystream(a: KeystreamArgs) -> Result<Outcome> {
    let p = a.sel.load()?;
    let key = hex_to_bits(&a.key, p.kappa).context("--key")?;
    let iv = hex_to_bits(&a.iv, p.v).context("--iv")?;
    let z = keystream(&p, &key, &iv, a.nbits, a.allow_over_limit)?;
    let text = match a.format {
        BitFormat::Hex => bits_to_hex(&z),
        BitFormat::Bin => bits_to_bin(&z),
    };
    Ok(Outcome::ok(text + "\n"))
}

fn cmd_props(a: PropsArgs) -> Result<Outcome> {
    let bundle = match (&a.function, &a.anf) {
        (Some(name), _) => lookup(name).with_context(|| format!("known functions: {}", REGISTRY.join(", ")))?,
        (None, Some(text)) => {
            let n = a.n.expect("clap enforces --n");
            custom_bundle("custom", AnfPoly::parse(n, text)?)
        }
        (None, None) => bail!("either --function or --anf is required"),
    };
    let opts = PropsOptions { ai_max_deg: a.ai_max_deg, no_ai: a.no_ai, show_anf: a.show_anf };
    Ok(Outcome::ok(render_props(&bundle, &opts)))
}

fn cmd_validate(a: ValidateArgs) -> Result<Outcome> {
    let p = a.sel.load()?;
    let strict = a.strict || !p.legacy;
    let report = validate_params(&p, strict);
    let code = if report.ok() { 0 } else { 2 };
    Ok(Outcome { stdout: format!("{report}\n"), code })
}

fn cmd_tapgen(a: TapgenArgs) -> Result<Outcome> {
    let base = a.like.as_deref().map(get_instance).transpose()?;
    let pick = |explicit: Option<usize>, from: fn(&GrainParams) -> usize, what: &str| -> Result<usize> {
        explicit.or_else(|| base.as_ref().map(from)).with_context(|| format!("--{what} is required without --like"))
    };
    let req = TapRequest {
        kappa1: pick(a.kappa1, |p| p.kappa1, "kappa1")?,
        kappa2: pick(a.kappa2, |p| p.kappa2, "kappa2")?,
        delta: pick(a.delta, |p| p.delta, "delta")?,
        n0: pick(a.n0, |p| p.s0.len(), "n0")?,
        n1: pick(a.n1, |p| p.s1.len(), "n1")?,
        p0: pick(a.p0, |p| p.p0.len(), "p0")?,
        p1: pick(a.p1, |p| p.p1.len(), "p1")?,
        q0: pick(a.q0, |p| p.q0.len(), "q0")?,
        q1: pick(a.q1, |p| p.q1.len(), "q1")?,
        a: match (a.a, &base) {
            (Some(v), _) => v,
            (None, Some(p)) => p.a.clone(),
            (None, None) => bail!("--a is required without --like"),
        },
        seed: a.seed,
    };
    let lists = generate_taps(&req)?;
    Ok(Outcome::ok(format!("seed: {}\n{}", a.seed, lists.to_config())))
}

fn load_instance_or_file(s: &str) -> Result<GrainParams> {
    match get_instance(s) {
        Ok(p) => Ok(p),
        Err(e) if Path::new(s).is_file() => load_file(Path::new(s)).context(e.to_string()),
        Err(e) => Err(e.into()),
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<Outcome> {
    let p = load_instance_or_file(&a.instance)?;
    let header = format!("instance: {}\n", p.name);
    if let Some(t) = a.eps {
        return Ok(Outcome::ok(header + &render_eps(&epsilon_bounds(&p, t)?)));
    }
    let t = a.t.expect("clap enforces --T or --eps");
    let (r, _) = window_bounds(&p, &t)?;
    let gamma = match &a.gamma {
        Some(h) => hex_to_bits(h, r).with_context(|| format!("--gamma must fit r = {r} bits"))?,
        None => vec![false; r],
    };
    let sets = index_sets(&p, &t, &gamma)?;
    let body = match a.mode {
        None => render_bias(&sets, "sets", None),
        Some(BiasMode::Empirical) => render_empirical(&sets, &empirical_bias(&p, &t, &gamma, a.samples, a.seed)?, a.seed),
        Some(_) if !sets.necessary_condition() => render_bias(&sets, mode_name(a.mode), None),
        Some(BiasMode::Exact) => render_bias(&sets, "exact", Some(exact_model_bias(&p, &t, &gamma)?)),
        Some(BiasMode::Conv) => render_bias(&sets, "conv", Some(convolution_bias(&p, &t, &gamma)?)),
    };
    Ok(Outcome::ok(header + &body))
}

fn mode_name(m: Option<BiasMode>) -> &'static str {
    match m {
        None => "sets",
        Some(BiasMode::Exact) => "exact",
        Some(BiasMode::Conv) => "conv",
        Some(BiasMode::Empirical) => "empirical",
    }
}

fn cmd_instances(a: InstancesArgs) -> Result<Outcome> {
    if let Some(name) = a.show {
        let p = get_instance(&name)?;
        return Ok(Outcome::ok(render_config(p.spec())));
    }
    let mut out = String::new();
    for name in INSTANCE_NAMES {
        let p = get_instance(name)?;
        out += &format!(
            "{}: kappa={} v={} kappa1={} kappa2={} g={} h={} init={} source={}\n",
            name,
            p.kappa,
            p.v,
            p.kappa1,
            p.kappa2,
            p.g.name,
            p.h.name,
            p.init,
            instance_source(name).unwrap_or("-")
        );
    }
    Ok(Outcome::ok(out))
}

fn cmd_vectors(a: VectorsArgs) -> Result<Outcome> {
    let names: Vec<String> = match a.cipher {
        Some(n) => vec![n],
        None => INSTANCE_NAMES.iter().map(|s| s.to_string()).collect(),
    };
    let mut stdout = String::new();
    for name in names {
        let p = get_instance(&name)?;
        let text = render_vectors(&p)?;
        match &a.out {
            Some(dir) => {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                let path = dir.join(format!("{}.txt", canonical_name(&p).unwrap_or(&name)));
                fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
                stdout += &format!("wrote: {}\n", path.display());
            }
            None => stdout += &text,
        }
    }
    Ok(Outcome::ok(stdout))
}

fn canonical_name(p: &GrainParams) -> Option<&'static str> {
    INSTANCE_NAMES.iter().copied().find(|&n| get_instance(n).is_ok_and(|q| q.name == p.name))
}

//! `hopf-setfam`: batch front end for antipodes, coproducts, support
//! systems and chain-gang characters.

mod input;
mod render;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hopf_setfam::chaingang::{cg_antipode, cg_coproduct, exorcism_to_series, series_to_char};
use hopf_setfam::io::{
    cg_sum_to_json, cg_tensor_to_json, character_to_json, complex_to_json, family_to_json, family_to_text,
    parse_cg_sum, parse_character, parse_series, series_to_json,
};
use hopf_setfam::poset::{
    antipode_loi_with, antipode_ordinal_sum_with, enumerate_fracturings, is_acyclic, is_good, support_system,
};
use hopf_setfam::simp::{antipode_simp_with, antipode_skeleton_with, support_system_simp, InflationRecord};
use hopf_setfam::sf::{classify_family, takeuchi_antipode_with};
use hopf_setfam::{Error, Fracturing, Options, SubsetMask};
use serde_json::{json, Value};

use input::Inputs;

#[derive(Parser)]
#[command(name = "hopf-setfam", version, about = "Antipodes and friends for grounded set families")]
struct Cli {
    /// Input file, or `-` for stdin. Repeat for verbs taking two inputs.
    #[arg(long, global = true, value_name = "PATH|-")]
    input: Vec<String>,
    /// Inline payload, used instead of --input.
    #[arg(long, global = true, value_name = "TEXT")]
    data: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also run the brute-force Takeuchi path and report EQUAL/DIFF.
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, default_value_t = hopf_setfam::options::DEFAULT_MAX_GROUND)]
    max_ground: usize,
    /// Truncation degree for characters and power series.
    #[arg(long, global = true, default_value_t = 10)]
    truncation: usize,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Verb {
    /// Takeuchi antipode of a set family.
    Antipode,
    /// Cancellation-free antipode of the lattice of order ideals of a poset.
    AntipodeLoi,
    /// Grouped antipode of a simplicial complex.
    AntipodeSimp,
    /// Closed-form antipode of the skeleton sk(m, n).
    AntipodeSkeleton { m: usize, n: usize },
    /// Antipode of J(lo ⊕ hi) from two posets on disjoint labels.
    AntipodeOrdsum,
    /// Join of two families.
    Product,
    /// Restriction and contraction at a subset.
    Coproduct {
        #[arg(long, value_name = "LABELS")]
        subset: String,
    },
    Restrict {
        #[arg(long, value_name = "LABELS")]
        subset: String,
    },
    Contract {
        #[arg(long, value_name = "LABELS")]
        subset: String,
    },
    /// Fracturings of a poset with their conflict-digraph status.
    Fracturings {
        /// Only good fracturings.
        #[arg(long)]
        good: bool,
    },
    /// Support system of a fracturing (poset input) or of an inflation
    /// (two complexes).
    Support {
        #[arg(long, value_name = "blocks=1,2|3")]
        fracturing: Option<String>,
    },
    /// Which standard classes a family belongs to.
    Classify,
    CgAntipode,
    CgCoproduct,
    CgConvolve,
    CgInvert,
    /// Character to power series (exorcism group), or a series back to a
    /// character.
    CgSeries,
    /// Compare the closed-form antipode with the Takeuchi oracle.
    Verify {
        #[arg(value_enum)]
        target: verify::Target,
        /// Skeleton dimension and size for `antipode-skeleton`.
        sizes: Vec<usize>,
        /// Generate the instance from `HOPF_SETFAM_SEED`.
        #[arg(long)]
        random: bool,
        /// Number of elements for random instances.
        #[arg(long, default_value_t = 5)]
        size: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Lib(e) if e.is_parse_error() => 2,
            CliError::Lib(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

pub struct Output {
    pub json: Value,
    pub text: String,
    /// A verification that found a difference; exits with status 1.
    pub failed: bool,
}

impl Output {
    pub fn new(json: Value, text: String) -> Self {
        Output { json, text, failed: false }
    }
}

fn parse_subset(family_ground: &hopf_setfam::GroundSet, text: &str) -> Result<SubsetMask, CliError> {
    let t = text.trim().trim_start_matches('{').trim_end_matches('}');
    let labels: Vec<&str> = t.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    family_ground
        .mask_of(labels)
        .map_err(|e| CliError::Lib(Error::Parse { line: 1, message: format!("--subset: {e}") }))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let opts = Options::default()
        .with_threads(cli.threads.max(1))
        .with_max_ground(cli.max_ground);
    let inputs = Inputs::load(&cli.input, &cli.data)?;
    if cli.oracle {
        if let Some(target) = verify::Target::for_verb(&cli.verb) {
            return verify::run(target, &inputs, &[], false, 0, &opts);
        }
    }
    match &cli.verb {
        Verb::Antipode => {
            let f = input::family(inputs.one("antipode")?)?;
            Ok(render::sum(&takeuchi_antipode_with(&f, &opts)?, false))
        }
        Verb::AntipodeLoi => {
            let p = input::poset(inputs.one("antipode-loi")?)?;
            Ok(render::sum(&antipode_loi_with(&p, &opts)?, false))
        }
        Verb::AntipodeSimp => {
            let x = input::complex(inputs.one("antipode-simp")?)?;
            Ok(render::sum(&antipode_simp_with(&x, &opts)?, true))
        }
        Verb::AntipodeSkeleton { m, n } => {
            inputs.exactly(0, "antipode-skeleton")?;
            Ok(render::sum(&antipode_skeleton_with(*m, *n, &opts)?, true))
        }
        Verb::AntipodeOrdsum => {
            let texts = inputs.exactly(2, "antipode-ordsum")?;
            let lo = input::poset(&texts[0])?;
            let hi = input::poset(&texts[1])?;
            Ok(render::sum(&antipode_ordinal_sum_with(&lo, &hi, &opts)?, false))
        }
        Verb::Product => {
            let texts = inputs.exactly(2, "product")?;
            let joined = input::family(&texts[0])?.join(&input::family(&texts[1])?)?;
            Ok(Output::new(family_to_json(&joined), family_to_text(&joined)))
        }
        Verb::Coproduct { subset } | Verb::Restrict { subset } | Verb::Contract { subset } => {
            let f = input::family(inputs.one("coproduct")?)?;
            let s = parse_subset(f.ground(), subset)?;
            let (r, c) = f.coproduct(s)?;
            Ok(match &cli.verb {
                Verb::Restrict { .. } => Output::new(family_to_json(&r), family_to_text(&r)),
                Verb::Contract { .. } => Output::new(family_to_json(&c), family_to_text(&c)),
                _ => Output::new(json!({ "restriction": family_to_json(&r), "contraction": family_to_json(&c) }), format!("restriction\n{}contraction\n{}", family_to_text(&r), family_to_text(&c))),
            })
        }
        Verb::Fracturings { good } => {
            let p = input::poset(inputs.one("fracturings")?)?;
            opts_check(&opts, p.len())?;
            let rows: Vec<(Fracturing, bool, bool)> = enumerate_fracturings(&p, false)
                .into_iter()
                .map(|q| {
                    let g = is_good(&p, &q);
                    let a = is_acyclic(&p, &q);
                    (q, g, a)
                })
                .filter(|(_, g, _)| !good || *g)
                .collect();
            Ok(render::fracturings(&p, &rows))
        }
        Verb::Support { fracturing } => support(&inputs, fracturing.as_deref(), &opts),
        Verb::Classify => {
            let f = input::family(inputs.one("classify")?)?;
            let c = classify_family(&f);
            let mut json = serde_json::to_value(c).expect("plain struct");
            json.as_object_mut()
                .expect("object")
                .insert("classes".into(), json!(c.names()));
            Ok(Output::new(json, format!("{c}\n")))
        }
        Verb::CgAntipode => {
            let x = parse_cg_sum(inputs.one("cg-antipode")?)?;
            let s = cg_antipode(&x);
            Ok(Output::new(cg_sum_to_json(&s), format!("{s}\n")))
        }
        Verb::CgCoproduct => {
            let x = parse_cg_sum(inputs.one("cg-coproduct")?)?;
            let d = cg_coproduct(&x);
            Ok(Output::new(cg_tensor_to_json(&d), format!("{d}\n")))
        }
        Verb::CgConvolve => {
            let texts = inputs.exactly(2, "cg-convolve")?;
            let a = parse_character(&texts[0], cli.truncation)?;
            let b = parse_character(&texts[1], cli.truncation)?;
            Ok(render::character(&a.convolve(&b)?))
        }
        Verb::CgInvert => {
            let z = parse_character(inputs.one("cg-invert")?, cli.truncation)?;
            Ok(render::character(&z.inverse()))
        }
        Verb::CgSeries => {
            let text = inputs.one("cg-series")?;
            if text.trim_start().starts_with('{') {
                let f = exorcism_to_series(&parse_character(text, cli.truncation)?)?;
                let shown: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
                Ok(Output::new(series_to_json(&f), format!("{}\n", shown.join(" "))))
            } else {
                let z = series_to_char(&parse_series(text)?);
                Ok(Output::new(character_to_json(&z), render::character(&z).text))
            }
        }
        Verb::Verify {
            target,
            sizes,
            random,
            size,
        } => verify::run(*target, &inputs, sizes, *random, *size, &opts),
    }
}

fn opts_check(opts: &Options, n: usize) -> Result<(), CliError> {
    if n > opts.max_ground {
        return Err(Error::GroundTooLarge {
            size: n,
            cap: opts.max_ground,
        }
        .into());
    }
    Ok(())
}

fn support(inputs: &Inputs, fracturing: Option<&str>, opts: &Options) -> Result<Output, CliError> {
    if inputs.len() == 1 && input::looks_like_poset(inputs.one("support")?) {
        let p = input::poset(inputs.one("support")?)?;
        opts_check(opts, p.len())?;
        let spec = fracturing.ok_or_else(|| CliError::Usage("support on a poset needs --fracturing".into()))?;
        let q = Fracturing::parse(&p, spec)?;
        let mut comps: Vec<String> = support_system(&p, &q).iter().map(|c| c.show(p.ground())).collect();
        comps.sort();
        return Ok(Output::new(json!({
                "fracturing": q.show(&p),
                "good": is_good(&p, &q),
                "compositions": comps,
            }), comps.iter().map(|c| format!("{c}\n")).collect()));
    }
    if fracturing.is_some() {
        return Err(CliError::Usage("--fracturing applies to poset input".into()));
    }
    let texts = inputs.exactly(2, "support")?;
    let x = input::complex(&texts[0])?;
    let y = input::complex(&texts[1])?;
    opts_check(opts, x.ground().len())?;
    let supp = support_system_simp(&x, &y)?;
    let shown: Vec<String> = supp.iter().map(|p| p.show(x.ground())).collect();
    let fundamental = if supp.is_empty() {
        None
    } else {
        Some(InflationRecord::new(&x, &y)?.fundamental.show(x.ground()))
    };
    let mut text: String = shown.iter().map(|c| format!("{c}\n")).collect();
    if let Some(f) = &fundamental {
        text.push_str(&format!("fundamental: {f}\n"));
    }
    let json = json!({
        "source": complex_to_json(&x),
        "target": complex_to_json(&y),
        "partitions": shown,
        "fundamental": fundamental,
    });
    Ok(Output::new(json, text))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Text => print!("{}", out.text),
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

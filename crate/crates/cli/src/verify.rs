use clap::ValueEnum;
use hopf_setfam::io::{complex_to_json, family_to_json, poset_to_json};
use hopf_setfam::poset::{antipode_loi_with, antipode_ordinal_sum_with};
use hopf_setfam::sf::{takeuchi_antipode_by_enumeration, takeuchi_antipode_with};
use hopf_setfam::simp::{antipode_simp_with, antipode_skeleton_with, skeleton, SimplicialComplex};
use hopf_setfam::{Error, FormalSum, GroundSet, Options, Poset};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::input::{self, Inputs};
use crate::{CliError, Output, Verb};

pub const SEED_VAR: &str = "HOPF_SETFAM_SEED";

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Antipode,
    AntipodeLoi,
    AntipodeSimp,
    AntipodeSkeleton,
    AntipodeOrdsum,
}

impl Target {
    pub fn for_verb(verb: &Verb) -> Option<Target> {
        match verb {
            Verb::Antipode => Some(Target::Antipode),
            Verb::AntipodeLoi => Some(Target::AntipodeLoi),
            Verb::AntipodeSimp => Some(Target::AntipodeSimp),
            Verb::AntipodeSkeleton { .. } => Some(Target::AntipodeSkeleton),
            Verb::AntipodeOrdsum => Some(Target::AntipodeOrdsum),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        self.to_possible_value().expect("no skipped variants").get_name().to_owned().leak()
    }
}

fn seed() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_VAR} must be an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn cap(opts: &Options, n: usize) -> Result<(), CliError> {
    if n > opts.max_ground {
        return Err(Error::GroundTooLarge {
            size: n,
            cap: opts.max_ground,
        }
        .into());
    }
    Ok(())
}

fn random_poset(n: usize, labels_from: usize, rng: &mut StdRng) -> Result<Poset, CliError> {
    let p = Poset::random(n, 0.35, rng);
    let ground = GroundSet::new(labels_from..labels_from + n)?;
    let covers: Vec<(usize, usize)> = p
        .cover_pairs()
        .into_iter()
        .map(|(a, b)| (a + labels_from, b + labels_from))
        .collect();
    Ok(Poset::new(ground, covers)?)
}

fn random_complex(n: usize, rng: &mut StdRng) -> Result<SimplicialComplex, CliError> {
    let k = rng.gen_range(1..=4);
    let faces: Vec<u64> = (0..k).map(|_| rng.gen_range(0..1u64 << n)).collect();
    Ok(SimplicialComplex::from_masks(GroundSet::range(n), faces)?)
}

/// Closed form and oracle for one instance, plus the instance as JSON.
fn both_paths(
    target: Target,
    inputs: &Inputs,
    sizes: &[usize],
    random: bool,
    size: usize,
    opts: &Options,
) -> Result<(Value, FormalSum, FormalSum), CliError> {
    let mut rng = StdRng::seed_from_u64(seed()?);
    if random {
        cap(opts, size)?;
    }
    match target {
        Target::Antipode => {
            let f = input::family(inputs.one("verify antipode")?)?;
            cap(opts, f.ground().len())?;
            let closed = takeuchi_antipode_with(&f, opts)?;
            Ok((family_to_json(&f), closed, takeuchi_antipode_by_enumeration(&f)?))
        }
        Target::AntipodeLoi => {
            let p = if random {
                random_poset(size, 1, &mut rng)?
            } else {
                input::poset(inputs.one("verify antipode-loi")?)?
            };
            let closed = antipode_loi_with(&p, opts)?;
            let oracle = takeuchi_antipode_with(&p.order_ideals(), opts)?;
            Ok((poset_to_json(&p), closed, oracle))
        }
        Target::AntipodeSimp => {
            let x = if random {
                random_complex(size, &mut rng)?
            } else {
                input::complex(inputs.one("verify antipode-simp")?)?
            };
            let closed = antipode_simp_with(&x, opts)?;
            let oracle = takeuchi_antipode_with(&x.to_family(), opts)?;
            Ok((complex_to_json(&x), closed, oracle))
        }
        Target::AntipodeSkeleton => {
            let (m, n) = match sizes {
                [m, n] => (*m, *n),
                [] if random => (rng.gen_range(1..=size.max(1)), size),
                _ => return Err(CliError::Usage("verify antipode-skeleton takes M N".into())),
            };
            cap(opts, n)?;
            let closed = antipode_skeleton_with(m, n, opts)?;
            let oracle = takeuchi_antipode_with(&skeleton(m, GroundSet::range(n))?.to_family(), opts)?;
            Ok((json!({ "m": m, "n": n }), closed, oracle))
        }
        Target::AntipodeOrdsum => {
            let (lo, hi) = if random {
                let a = rng.gen_range(0..=size);
                (random_poset(a, 1, &mut rng)?, random_poset(size - a, a + 1, &mut rng)?)
            } else {
                let texts = inputs.exactly(2, "verify antipode-ordsum")?;
                (input::poset(&texts[0])?, input::poset(&texts[1])?)
            };
            let closed = antipode_ordinal_sum_with(&lo, &hi, opts)?;
            let oracle = takeuchi_antipode_with(&lo.ordinal_sum(&hi)?.order_ideals(), opts)?;
            Ok((json!({ "lo": poset_to_json(&lo), "hi": poset_to_json(&hi) }), closed, oracle))
        }
    }
}

pub fn run(
    target: Target,
    inputs: &Inputs,
    sizes: &[usize],
    random: bool,
    size: usize,
    opts: &Options,
) -> Result<Output, CliError> {
    if !sizes.is_empty() && target != Target::AntipodeSkeleton {
        return Err(CliError::Usage("only antipode-skeleton takes sizes".into()));
    }
    let (instance, closed, oracle) = both_paths(target, inputs, sizes, random, size, opts)?;
    let diff = closed.first_difference(&oracle);
    let (json, text) = match &diff {
        None => (
            json!({
                "target": target.name(),
                "instance": instance,
                "result": "EQUAL",
                "terms": closed.len(),
            }),
            format!("EQUAL ({} terms)\n", closed.len()),
        ),
        Some((family, a, b)) => (
            json!({
                "target": target.name(),
                "instance": instance,
                "result": "DIFF",
                "first_difference": {
                    "family": family_to_json(family),
                    "closed_form": a.to_string(),
                    "oracle": b.to_string(),
                },
            }),
            format!("DIFF at {family}: closed form {a}, oracle {b}\n"),
        ),
    };
    let mut out = Output::new(json, text);
    out.failed = diff.is_some();
    Ok(out)
}

use std::fs;
use std::io::Read;

use hopf_setfam::io::{parse_complex, parse_family, parse_poset};
use hopf_setfam::simp::SimplicialComplex;
use hopf_setfam::{GroundedSetFamily, Poset};

use crate::CliError;

/// Payloads from `--input` (paths, `-` for stdin) or inline `--data`.
pub struct Inputs {
    payloads: Vec<String>,
}

impl Inputs {
    pub fn load(paths: &[String], data: &[String]) -> Result<Self, CliError> {
        if !paths.is_empty() && !data.is_empty() {
            return Err(CliError::Usage("use either --input or --data, not both".into()));
        }
        let mut payloads = Vec::new();
        let mut stdin_used = false;
        for p in paths {
            if p == "-" {
                if stdin_used {
                    return Err(CliError::Usage("stdin can be read only once".into()));
                }
                stdin_used = true;
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
                payloads.push(s);
            } else {
                let s = fs::read_to_string(p).map_err(|e| CliError::Input(format!("{p}: {e}")))?;
                payloads.push(s);
            }
        }
        payloads.extend(data.iter().cloned());
        Ok(Inputs { payloads })
    }

    pub fn exactly(&self, n: usize, verb: &str) -> Result<&[String], CliError> {
        if self.payloads.len() != n {
            let what = if n == 1 { "one input".to_string() } else { format!("{n} inputs") };
            return Err(CliError::Usage(format!(
                "`{verb}` takes {what}, got {}",
                self.payloads.len()
            )));
        }
        Ok(&self.payloads)
    }

    pub fn one(&self, verb: &str) -> Result<&str, CliError> {
        Ok(&self.exactly(1, verb)?[0])
    }

    pub fn len(&self) -> usize {
        self.payloads.len()
    }
}

pub fn family(text: &str) -> Result<GroundedSetFamily, CliError> {
    Ok(parse_family(text)?)
}

pub fn poset(text: &str) -> Result<Poset, CliError> {
    Ok(parse_poset(text)?)
}

pub fn complex(text: &str) -> Result<SimplicialComplex, CliError> {
    Ok(parse_complex(text)?)
}

/// Whether a payload is written in the poset format.
pub fn looks_like_poset(text: &str) -> bool {
    let t = text.trim_start();
    if t.starts_with('{') {
        t.contains("\"elements\"")
    } else {
        t.lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .is_some_and(|l| l.starts_with("elements"))
    }
}

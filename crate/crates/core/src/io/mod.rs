//! Text and JSON formats for families, posets, complexes and formal sums.
//!
//! Every reader accepts either format and picks JSON when the first
//! non-blank character is `{` or `[`. Labels in JSON may be strings or
//! non-negative integers; writers emit integers for labels that are plain
//! decimal numbers.

mod cg;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::sf::ground::{bits, GroundSet, Label, SubsetMask};
use crate::sf::{FormalSum, GroundedSetFamily};
use crate::simp::SimplicialComplex;

pub use cg::{
    cg_sum_to_json, cg_tensor_to_json, character_to_json, parse_cg_sum, parse_character, parse_series,
    series_to_json,
};

#[derive(Deserialize)]
#[serde(untagged)]
enum RawLabel {
    Int(u64),
    Str(String),
}

impl From<RawLabel> for Label {
    fn from(r: RawLabel) -> Label {
        match r {
            RawLabel::Int(n) => Label::from(n),
            RawLabel::Str(s) => Label::from(s),
        }
    }
}

pub(crate) fn label_value(l: &Label) -> Value {
    match l.as_str().parse::<u64>() {
        Ok(n) if n.to_string() == l.as_str() => json!(n),
        _ => json!(l.as_str()),
    }
}

fn labels_value(ground: &GroundSet, mask: SubsetMask) -> Value {
    Value::Array(bits(mask).map(|i| label_value(ground.label(i))).collect())
}

pub(crate) fn is_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{') | Some('['))
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.to_string())
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn header<'a>(line: Option<(usize, &'a str)>, key: &str) -> Result<(usize, &'a str)> {
    let (no, text) = line.ok_or_else(|| Error::parse(1, format!("missing `{key}:` line")))?;
    let rest = text
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .ok_or_else(|| Error::parse(no, format!("expected `{key}: ...`")))?;
    Ok((no, rest))
}

fn split_labels(text: &str) -> Vec<Label> {
    let text = text.trim().trim_start_matches('{').trim_end_matches('}');
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Label::from)
        .collect()
}

fn ground_of(labels: Vec<Label>, line: usize) -> Result<GroundSet> {
    GroundSet::new(labels).map_err(|e| match e {
        Error::DuplicateLabel(_) => Error::parse(line, e.to_string()),
        other => other,
    })
}

fn at_line(no: usize, e: Error) -> Error {
    match e {
        Error::UnknownLabel(l) => Error::parse(no, format!("unknown label `{l}`")),
        other => other,
    }
}

// ---- set families ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    ground: Vec<RawLabel>,
    members: Vec<Vec<RawLabel>>,
}

pub fn parse_family(text: &str) -> Result<GroundedSetFamily> {
    if is_json(text) {
        let raw: FamilyJson = serde_json::from_str(text).map_err(json_error)?;
        let ground = ground_of(raw.ground.into_iter().map(Label::from).collect(), 1)?;
        let members: Vec<Vec<Label>> = raw
            .members
            .into_iter()
            .map(|m| m.into_iter().map(Label::from).collect())
            .collect();
        return GroundedSetFamily::new(ground, members, false);
    }
    let mut lines = content_lines(text);
    let (no, rest) = header(lines.next(), "ground")?;
    let ground = ground_of(split_labels(rest), no)?;
    let mut masks = Vec::new();
    for (no, line) in lines {
        let labels = split_labels(line);
        let mask = ground.mask_of(labels.iter()).map_err(|e| at_line(no, e))?;
        masks.push(mask);
    }
    GroundedSetFamily::from_masks(ground, masks, false)
}

pub fn family_to_json(f: &GroundedSetFamily) -> Value {
    let ground = f.ground();
    json!({
        "ground": labels_value(ground, ground.full_mask()),
        "members": f.members().iter().map(|&m| labels_value(ground, m)).collect::<Vec<_>>(),
    })
}

fn show_member(ground: &GroundSet, m: SubsetMask) -> String {
    if m == 0 {
        "{}".to_string()
    } else {
        ground.labels_of(m).iter().map(Label::as_str).collect::<Vec<_>>().join(",")
    }
}

pub fn family_to_text(f: &GroundedSetFamily) -> String {
    let ground = f.ground();
    let mut out = format!("ground: {}\n", show_member_plain(ground, ground.full_mask()));
    for &m in f.members() {
        out.push_str(&show_member(ground, m));
        out.push('\n');
    }
    out
}

fn show_member_plain(ground: &GroundSet, m: SubsetMask) -> String {
    ground.labels_of(m).iter().map(Label::as_str).collect::<Vec<_>>().join(",")
}

// ---- posets ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetJson {
    elements: Vec<RawLabel>,
    #[serde(default)]
    covers: Vec<(RawLabel, RawLabel)>,
}

/// Relations may be given as `a<b`, chained as `a<b<c`, or as a
/// comma-separated list on one line.
pub fn parse_poset(text: &str) -> Result<Poset> {
    if is_json(text) {
        let raw: PosetJson = serde_json::from_str(text).map_err(json_error)?;
        let ground = ground_of(raw.elements.into_iter().map(Label::from).collect(), 1)?;
        let covers: Vec<(Label, Label)> = raw.covers.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        return Poset::new(ground, covers);
    }
    let mut lines = content_lines(text);
    let (no, rest) = header(lines.next(), "elements")?;
    let ground = ground_of(split_labels(rest), no)?;
    let mut relations = Vec::new();
    for (no, line) in lines {
        for rel in line.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let chain: Vec<Label> = rel.split('<').map(|s| Label::from(s.trim())).collect();
            if chain.len() < 2 || chain.iter().any(|l| l.as_str().is_empty()) {
                return Err(Error::parse(no, format!("expected `a<b`, found `{rel}`")));
            }
            for pair in chain.windows(2) {
                for l in pair {
                    if !ground.contains(l) {
                        return Err(Error::parse(no, format!("unknown label `{l}`")));
                    }
                }
                relations.push((pair[0].clone(), pair[1].clone()));
            }
        }
    }
    Poset::new(ground, relations)
}

pub fn poset_to_json(p: &Poset) -> Value {
    let ground = p.ground();
    json!({
        "elements": labels_value(ground, ground.full_mask()),
        "covers": p.covers().iter().map(|(a, b)| json!([label_value(a), label_value(b)])).collect::<Vec<_>>(),
    })
}

pub fn poset_to_text(p: &Poset) -> String {
    let ground = p.ground();
    let mut out = format!("elements: {}\n", show_member_plain(ground, ground.full_mask()));
    for (a, b) in p.covers() {
        out.push_str(&format!("{a}<{b}\n"));
    }
    out
}

// ---- simplicial complexes ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    ground: Vec<RawLabel>,
    facets: Vec<Vec<RawLabel>>,
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    if is_json(text) {
        let raw: ComplexJson = serde_json::from_str(text).map_err(json_error)?;
        let ground = ground_of(raw.ground.into_iter().map(Label::from).collect(), 1)?;
        let facets: Vec<Vec<Label>> = raw
            .facets
            .into_iter()
            .map(|m| m.into_iter().map(Label::from).collect())
            .collect();
        return SimplicialComplex::new(ground, facets);
    }
    let mut lines = content_lines(text);
    let (no, rest) = header(lines.next(), "ground")?;
    let ground = ground_of(split_labels(rest), no)?;
    let mut faces = Vec::new();
    for (no, line) in lines {
        let labels = split_labels(line);
        let mask = ground.mask_of(labels.iter()).map_err(|_| {
            Error::FaceOutsideGround(format!("{{{}}} (line {no})", line.trim_matches(|c| c == '{' || c == '}')))
        })?;
        faces.push(mask);
    }
    SimplicialComplex::from_masks(ground, faces)
}

pub fn complex_to_json(x: &SimplicialComplex) -> Value {
    let ground = x.ground();
    json!({
        "ground": labels_value(ground, ground.full_mask()),
        "facets": x.facets().iter().map(|&m| labels_value(ground, m)).collect::<Vec<_>>(),
    })
}

pub fn complex_to_text(x: &SimplicialComplex) -> String {
    let ground = x.ground();
    let mut out = format!("ground: {}\n", show_member_plain(ground, ground.full_mask()));
    for &m in x.facets() {
        out.push_str(&show_member(ground, m));
        out.push('\n');
    }
    out
}

// ---- formal sums ----

/// Terms in canonical order: ground set, then member label lists, then
/// coefficient.
fn sorted_terms(sum: &FormalSum) -> Vec<(&GroundedSetFamily, &BigInt)> {
    let mut terms: Vec<_> = sum.iter().collect();
    terms.sort_by(|(fa, ca), (fb, cb)| {
        fa.ground()
            .cmp(fb.ground())
            .then_with(|| fa.member_labels().cmp(&fb.member_labels()))
            .then_with(|| ca.cmp(cb))
    });
    terms
}

pub fn formal_sum_to_json(sum: &FormalSum) -> Value {
    Value::Array(
        sorted_terms(sum)
            .into_iter()
            .map(|(f, c)| {
                let mut v = family_to_json(f);
                v.as_object_mut()
                    .expect("object")
                    .insert("coeff".into(), json!(c.to_string()));
                v
            })
            .collect(),
    )
}

/// Reads the JSON term list. An empty list needs the ground set from
/// elsewhere, so it is given as `ground`.
pub fn parse_formal_sum(text: &str, ground: &GroundSet) -> Result<FormalSum> {
    let raw: Vec<Value> = serde_json::from_str(text).map_err(json_error)?;
    let mut out = FormalSum::zero(ground.clone());
    for (i, term) in raw.into_iter().enumerate() {
        let coeff: BigInt = term
            .get("coeff")
            .and_then(Value::as_str)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(i + 1, "term needs a decimal `coeff` string"))?;
        let mut obj = term;
        obj.as_object_mut()
            .ok_or_else(|| Error::parse(i + 1, "term must be an object"))?
            .remove("coeff");
        let family = parse_family(&obj.to_string())?;
        out.add_term(family, coeff)?;
    }
    Ok(out)
}

/// Display rendering, one term per line:
/// `  +4 · {} {1} ... [phantoms: 5]`. Lattices of order ideals are shown
/// as `J(covers)`.
pub fn formal_sum_to_text(sum: &FormalSum) -> String {
    let terms = sorted_terms(sum);
    if terms.is_empty() {
        return "0\n".to_string();
    }
    let coeffs: Vec<String> = terms
        .iter()
        .map(|(_, c)| if c.sign() == num_bigint::Sign::Minus { c.to_string() } else { format!("+{c}") })
        .collect();
    let width = coeffs.iter().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for ((f, _), c) in terms.iter().zip(coeffs) {
        out.push_str(&format!("{c:>width$} · {}", describe_family(f)));
        let phantoms = f.phantoms();
        if phantoms != 0 {
            out.push_str(&format!(" [phantoms: {}]", show_member_plain(f.ground(), phantoms)));
        }
        out.push('\n');
    }
    out
}

fn describe_family(f: &GroundedSetFamily) -> String {
    if let Ok((poset, _)) = Poset::from_order_ideals(f) {
        let covers: Vec<String> = poset.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
        let isolated: Vec<String> = bits(poset.full_mask())
            .filter(|&i| poset.below(i) == 0 && poset.above(i) == 0)
            .map(|i| poset.ground().label(i).to_string())
            .collect();
        let mut parts = covers;
        parts.extend(isolated);
        return format!("J({})", parts.join(" "));
    }
    let members: Vec<String> = f.members().iter().map(|&m| f.ground().show(m)).collect();
    format!("{{{}}}", members.join(" "))
}

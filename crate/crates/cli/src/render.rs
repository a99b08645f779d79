use hopf_setfam::chaingang::Character;
use hopf_setfam::io::{formal_sum_to_json, formal_sum_to_text};
use hopf_setfam::simp::SimplicialComplex;
use hopf_setfam::{FormalSum, Fracturing, Poset};
use serde_json::{json, Value};

use crate::Output;

/// A formal sum; sums of complexes render facets in text mode.
pub fn sum(s: &FormalSum, complexes: bool) -> Output {
    let text = if complexes { complex_sum_text(s) } else { formal_sum_to_text(s) };
    Output::new(formal_sum_to_json(s), text)
}

fn complex_sum_text(s: &FormalSum) -> String {
    let mut rows: Vec<(String, String)> = s
        .iter()
        .map(|(f, c)| {
            let shown = match SimplicialComplex::from_family(f) {
                Ok(x) => {
                    let g = x.ground();
                    let facets: Vec<String> = x
                        .facet_labels()
                        .iter()
                        .map(|f| {
                            let compact = f.iter().all(|l| l.as_str().len() == 1);
                            let names: Vec<&str> = f.iter().map(|l| l.as_str()).collect();
                            names.join(if compact { "" } else { "," })
                        })
                        .collect();
                    let phantoms = x.phantoms();
                    if phantoms == 0 {
                        format!("<{}>", facets.join(", "))
                    } else {
                        format!("<{}> [phantoms: {}]", facets.join(", "), g.show(phantoms))
                    }
                }
                Err(_) => f.to_string(),
            };
            let coeff = c.to_string();
            let coeff = if coeff.starts_with('-') { coeff } else { format!("+{coeff}") };
            (coeff, shown)
        })
        .collect();
    if rows.is_empty() {
        return "0\n".into();
    }
    rows.sort_by(|a, b| a.1.cmp(&b.1));
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    rows.iter().map(|(c, x)| format!("{c:>width$} · {x}\n")).collect()
}

pub fn fracturings(p: &Poset, rows: &[(Fracturing, bool, bool)]) -> Output {
    let json: Vec<Value> = rows
        .iter()
        .map(|(q, good, acyclic)| {
            json!({
                "blocks": q.show(p),
                "components": q.components(),
                "good": good,
                "acyclic": acyclic,
                "sign": q.sign(p),
            })
        })
        .collect();
    let shown: Vec<String> = rows
        .iter()
        .map(|(q, _, _)| if q.blocks().is_empty() { "{}".to_string() } else { q.show(p) })
        .collect();
    let width = shown.iter().map(String::len).max().unwrap_or(0).max(6);
    let mut text = format!("{:<width$}  good   acyclic  sign\n", "blocks");
    for ((q, good, acyclic), s) in rows.iter().zip(&shown) {
        let sign = q.sign(p);
        text.push_str(&format!("{s:<width$}  {good:<5}  {acyclic:<7}  {sign:+}\n"));
    }
    Output::new(Value::Array(json), text)
}

pub fn character(z: &Character) -> Output {
    let t: Vec<String> = z.chain_values().iter().map(|c| c.to_string()).collect();
    let text = format!("a = {}\nt = {}\n", z.phantom_value(), t.join(" "));
    Output::new(hopf_setfam::io::character_to_json(z), text)
}

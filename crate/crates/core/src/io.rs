//! JSON interchange formats and plain-text tables.
//!
//! Complex: `{ "name": str, "facets": [[label, ...], ...] }` with string
//! labels; output facets are sorted lexicographically by vertex list.
//! Filtration: `{ "complex": <complex>, "skeleta": { "<i>": [[label,...],...] } }`
//! where omitted indices inherit the previous skeleton. Perversities:
//! `"zero" | "top" | "lower-middle" | "upper-middle" | {"<stratum-id>": int}`.

use crate::action::SimplicialAction;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::filtration::{derive_strata, Filtration, Stratification, ValidationReport};
use crate::ih::HomologyResult;
use crate::perversity::Perversity;
use crate::simplex::Simplex;
use crate::verify::TheoremReport;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

fn facet_lists(complex: &SimplicialComplex, facets: &[Simplex]) -> Vec<Vec<String>> {
    let mut lists: Vec<Vec<String>> = facets
        .iter()
        .map(|f| {
            let mut labels: Vec<String> = f
                .vertices()
                .iter()
                .map(|v| complex.label(*v).render())
                .collect();
            labels.sort();
            labels
        })
        .collect();
    lists.sort();
    lists
}

pub fn complex_to_json(complex: &SimplicialComplex, name: &str) -> Value {
    json!({
        "name": name,
        "facets": facet_lists(complex, complex.facets()),
    })
}

pub fn complex_from_json(v: &Value) -> Result<(String, SimplicialComplex)> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("complex must be an object".into()))?;
    let name = obj
        .get("name")
        .and_then(|n| n.as_str())
        .unwrap_or("unnamed")
        .to_string();
    let facets_json = obj
        .get("facets")
        .and_then(|f| f.as_array())
        .ok_or_else(|| Error::Parse("complex needs a \"facets\" array".into()))?;
    let mut facets = Vec::with_capacity(facets_json.len());
    for f in facets_json {
        let arr = f
            .as_array()
            .ok_or_else(|| Error::Parse("facet must be an array of labels".into()))?;
        let labels: Vec<String> = arr
            .iter()
            .map(|l| {
                l.as_str()
                    .map(|s| s.to_string())
                    .ok_or_else(|| Error::Parse("labels must be strings".into()))
            })
            .collect::<Result<_>>()?;
        facets.push(labels);
    }
    Ok((name, SimplicialComplex::build(&facets)?))
}

pub fn stratified_to_json(s: &Stratification, name: &str) -> Value {
    let complex = s.complex();
    let mut skeleta = Map::new();
    for i in 0..s.n() {
        let facets = s.filtration().skeleton_facets(i);
        if facets.is_empty() {
            continue;
        }
        let previous = if i == 0 {
            Vec::new()
        } else {
            s.filtration().skeleton_facets(i - 1)
        };
        if facets != previous {
            skeleta.insert(i.to_string(), json!(facet_lists(complex, &facets)));
        }
    }
    json!({
        "complex": complex_to_json(complex, name),
        "skeleta": Value::Object(skeleta),
    })
}

pub fn stratified_from_json(v: &Value) -> Result<(String, Stratification)> {
    // accept either a bare complex or a complex plus skeleta
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected an object".into()))?;
    let (name, complex) = if obj.contains_key("complex") {
        complex_from_json(&obj["complex"])?
    } else {
        complex_from_json(v)?
    };
    let mut skeleta: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    if let Some(sk) = obj.get("skeleta") {
        let sk = sk
            .as_object()
            .ok_or_else(|| Error::Parse("\"skeleta\" must be an object".into()))?;
        for (key, lists) in sk {
            let i: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("bad skeleton index {key:?}")))?;
            let arrays = lists
                .as_array()
                .ok_or_else(|| Error::Parse("skeleton must be an array".into()))?;
            let mut gens = Vec::new();
            for a in arrays {
                let labels: Vec<String> = a
                    .as_array()
                    .ok_or_else(|| Error::Parse("skeleton entry must be an array".into()))?
                    .iter()
                    .map(|l| {
                        l.as_str()
                            .map(|s| s.to_string())
                            .ok_or_else(|| Error::Parse("labels must be strings".into()))
                    })
                    .collect::<Result<_>>()?;
                let vertices: Vec<u32> = labels
                    .iter()
                    .map(|l| {
                        complex
                            .vertex_by_label(l)
                            .ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}")))
                    })
                    .collect::<Result<_>>()?;
                gens.push(Simplex::new(vertices)?);
            }
            skeleta.insert(i, gens);
        }
    }
    let filtration = Filtration::from_skeleta(complex, &skeleta)?;
    Ok((name, derive_strata(filtration)))
}

/// Parses a perversity spec: one of the named perversities or an
/// explicit `{stratum-id: value}` map.
pub fn perversity_from_spec(spec: &str, s: &Stratification) -> Result<(String, Perversity)> {
    match spec {
        "zero" => return Ok(("zero".into(), Perversity::zero(s))),
        "top" => return Ok(("top".into(), Perversity::top(s))),
        "lower-middle" => return Ok(("lower-middle".into(), Perversity::lower_middle(s))),
        "upper-middle" => return Ok(("upper-middle".into(), Perversity::upper_middle(s))),
        _ => {}
    }
    let v: Value = serde_json::from_str(spec)
        .map_err(|e| Error::Parse(format!("perversity spec: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("perversity must be a name or an object".into()))?;
    let mut values = Vec::new();
    for (key, val) in obj {
        let idx = s
            .stratum_by_id(key)
            .ok_or_else(|| Error::Parse(format!("unknown stratum id {key:?}")))?;
        let value = val
            .as_i64()
            .ok_or_else(|| Error::Parse("perversity values must be integers".into()))?;
        values.push((idx, value));
    }
    let p = Perversity::from_values(s, &values)?;
    Ok((spec.to_string(), p))
}

pub fn homology_to_json(perversity: &str, h: &HomologyResult) -> Value {
    json!({
        "perversity": perversity,
        "degrees": h.degrees.iter().enumerate().map(|(i, d)| {
            json!({
                "i": i,
                "betti": d.betti,
                "torsion": d.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
    })
}

pub fn homology_table(h: &HomologyResult) -> String {
    let mut out = String::from("degree  betti  torsion\n");
    for (i, d) in h.degrees.iter().enumerate() {
        let torsion = if d.torsion.is_empty() {
            "-".to_string()
        } else {
            d.torsion
                .iter()
                .map(|t| format!("Z/{t}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&format!("{i:>6}  {:>5}  {torsion}\n", d.betti));
    }
    out
}

pub fn validation_to_json(name: &str, s: &Stratification, report: &ValidationReport) -> Value {
    json!({
        "fixture": name,
        "formal_dimension": s.n(),
        "depth": s.depth(),
        "strata": s.strata().iter().enumerate().map(|(i, st)| {
            json!({
                "id": s.stratum_id(i),
                "level": st.level,
                "codim": s.codim(i),
                "simplices": st.simplices.len(),
                "singular": s.is_singular(i),
            })
        }).collect::<Vec<_>>(),
        "axioms": report.checks.iter().map(|c| {
            json!({
                "axiom": c.axiom,
                "pass": c.pass,
                "witnesses": c.witnesses,
            })
        }).collect::<Vec<_>>(),
        "pass": report.all_pass(),
    })
}

pub fn validation_table(name: &str, s: &Stratification, report: &ValidationReport) -> String {
    let mut out = format!(
        "{name}: dimension {}, depth {}, {} strata ({} singular)\n",
        s.n(),
        s.depth(),
        s.strata().len(),
        s.singular_strata().count()
    );
    out.push_str("axiom         verdict  witnesses\n");
    for c in &report.checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        let witness = if c.witnesses.is_empty() {
            String::new()
        } else {
            c.witnesses.join("; ")
        };
        out.push_str(&format!("{:<13} {verdict:<8} {witness}\n", c.axiom));
    }
    out
}

pub fn report_to_json(r: &TheoremReport, timings: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("theorem".into(), json!(r.theorem));
    obj.insert("fixture".into(), json!(r.fixture));
    obj.insert("perversity".into(), json!(r.perversity));
    obj.insert("pass".into(), json!(r.pass));
    obj.insert(
        "rows".into(),
        json!(r
            .rows
            .iter()
            .map(|row| json!({
                "label": row.label,
                "expected": row.expected,
                "computed": row.computed,
                "ok": row.ok,
            }))
            .collect::<Vec<_>>()),
    );
    if !r.notes.is_empty() {
        obj.insert("notes".into(), json!(r.notes));
    }
    if timings {
        obj.insert("runtime_ms".into(), json!(r.runtime.as_millis() as u64));
    }
    Value::Object(obj)
}

pub fn report_table(reports: &[TheoremReport], verbose: bool, timings: bool) -> String {
    let mut out = String::new();
    for r in reports {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        let time = if timings {
            format!("  ({} ms)", r.runtime.as_millis())
        } else {
            String::new()
        };
        out.push_str(&format!(
            "[{verdict}] {} / {} / {}{time}\n",
            r.theorem, r.fixture, r.perversity
        ));
        if verbose || !r.pass {
            for row in &r.rows {
                let mark = if row.ok { "ok  " } else { "FAIL" };
                out.push_str(&format!(
                    "    {mark} {}: expected {}, computed {}\n",
                    row.label, row.expected, row.computed
                ));
            }
            for note in &r.notes {
                out.push_str(&format!("    note: {note}\n"));
            }
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    out.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
    out
}

/// Action JSON: `{ "complex": <complex> | {"fixture": name}, "generators":
/// [ { "<label>": "<label>", ... }, ... ] }`.
pub fn action_from_json(v: &Value) -> Result<SimplicialAction> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("action must be an object".into()))?;
    let complex_field = obj
        .get("complex")
        .ok_or_else(|| Error::Parse("action needs a \"complex\"".into()))?;
    let strat = if let Some(f) = complex_field.get("fixture").and_then(|f| f.as_str()) {
        crate::fixtures::fixture(f)?
    } else {
        stratified_from_json(complex_field)?.1
    };
    let generators_json = obj
        .get("generators")
        .and_then(|g| g.as_array())
        .ok_or_else(|| Error::Parse("action needs a \"generators\" array".into()))?;
    let mut maps = Vec::new();
    for g in generators_json {
        let gobj = g
            .as_object()
            .ok_or_else(|| Error::Parse("generator must be a label map".into()))?;
        let mut m = BTreeMap::new();
        for (from, to) in gobj {
            let to = to
                .as_str()
                .ok_or_else(|| Error::Parse("generator values must be labels".into()))?;
            m.insert(from.clone(), to.to_string());
        }
        maps.push(m);
    }
    SimplicialAction::from_label_maps(strat, &maps)
}

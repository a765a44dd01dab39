//! Command implementations behind the `hereditary` binary. Each command turns
//! input text into a [`Outcome`]: a JSON report, a human-readable table and an
//! exit code (0 success or hereditary, 1 not hereditary or a failed
//! assertion, 2 invalid input).

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::base_rings::MaximalIdeal;
use crate::graded::{GradedOrder, HereditaryVerdict, Scope, SylowCheck};
use crate::groups::{Perm, Subgroup};
use crate::io::{parse_graded, parse_json, parse_order, GradedSpec, InputError, OrderSpec};
use crate::oracle::{oracle_check, relevant_places, OracleReport};
use crate::pic::picent_global;
use crate::semiprime::{main_hereditary_verdict, orbit_decompose};

pub const SCHEMA_VERSION: u32 = 1;

pub const OUTER_FIXTURE: &str = include_str!("../fixtures/outer.json");
pub const OUTER_DELTA_FIXTURE: &str = include_str!("../fixtures/outer_delta.json");
pub const NONBASIC_FIXTURE: &str = include_str!("../fixtures/nonbasic.json");
pub const SEMIPRIME_FIXTURE: &str = include_str!("../fixtures/semiprime.json");

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub input_sha256: String,
    pub status: String,
    pub result: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: RunReport,
    pub text: Vec<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn new(command: &str, input: &str, exit_code: i32, result: Value, text: Vec<String>) -> Self {
        let status = match exit_code {
            EXIT_OK => "ok",
            EXIT_NEGATIVE => "negative",
            _ => "invalid-input",
        };
        Outcome {
            report: RunReport {
                schema_version: SCHEMA_VERSION,
                command: command.to_string(),
                input_sha256: hex::encode(Sha256::digest(input.as_bytes())),
                status: status.to_string(),
                result,
            },
            text,
            exit_code,
        }
    }

    fn invalid(command: &str, input: &str, err: impl std::fmt::Display, path: Option<&str>) -> Self {
        let mut result = json!({ "error": err.to_string() });
        if let Some(p) = path {
            result["path"] = json!(p);
        }
        Outcome::new(command, input, EXIT_INVALID, result, vec![format!("error: {err}")])
    }

    fn from_input_error(command: &str, input: &str, e: &InputError) -> Self {
        match e {
            InputError::Schema { path, .. } => Outcome::invalid(command, input, e, Some(path)),
            InputError::Json(_) => Outcome::invalid(command, input, e, None),
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("reports serialize")
    }

    /// The table followed by the JSON report, or the JSON alone.
    pub fn render(&self, json_only: bool) -> String {
        if json_only {
            return self.json();
        }
        let mut out = self.text.join("\n");
        out.push_str("\n\n");
        out.push_str(&self.json());
        out
    }
}

fn subgroup_json(h: &Subgroup) -> Value {
    json!({ "order": h.order(), "gens": h.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>() })
}

fn perms(v: &[Perm]) -> Vec<String> {
    v.iter().map(|g| g.to_string()).collect()
}

fn check_json(c: &SylowCheck) -> Value {
    let mut v = json!({
        "p": c.p,
        "place": c.place.to_string(),
        "sylow": subgroup_json(&c.sylow),
        "inner": perms(&c.inner),
    });
    if let Some(w) = &c.inner_witness {
        v["inner_witness"] = json!(w.to_string());
    }
    if let Some(o) = c.orbit {
        v["orbit"] = json!(o);
    }
    v
}

fn verdict_json(v: &HereditaryVerdict) -> Value {
    json!({
        "hereditary": v.hereditary,
        "delta_hereditary": v.delta_hereditary,
        "delta_failing": v.delta_failing.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "breakdown": v.breakdown.iter().map(check_json).collect::<Vec<_>>(),
    })
}

fn breakdown_table(v: &HereditaryVerdict) -> Vec<String> {
    let mut out = vec![format!("{:<8} {:<3} {:<10} {:<6} {}", "place", "p", "|Sylow|", "|Inn|", "inner witness")];
    for c in &v.breakdown {
        let w = c.inner_witness.as_ref().map_or("-".to_string(), |w| w.to_string());
        out.push(format!("{:<8} {:<3} {:<10} {:<6} {}", c.place.to_string(), c.p, c.sylow.order(), c.inner.len(), w));
    }
    out
}

/// `check`: the hereditary verdict with its Sylow breakdown.
pub fn cmd_check(input: &str) -> Outcome {
    let l = match parse_json(input).and_then(|v| parse_graded(&v)) {
        Ok(l) => l,
        Err(e) => return Outcome::from_input_error("check", input, &e),
    };
    let verdict = match main_hereditary_verdict(&l) {
        Ok(v) => v,
        Err(e) => return Outcome::invalid("check", input, e, None),
    };
    let mut result = verdict_json(&verdict);
    result["warnings"] = json!(l.warnings());
    let mut text = vec![
        format!("group order {}, {} block(s) in Delta, scope {}", l.group().order(), l.delta().len(), l.scope()),
        format!("Delta hereditary: {}", verdict.delta_hereditary),
    ];
    if !l.is_prime() {
        let dec = match orbit_decompose(&l) {
            Ok(d) => d,
            Err(e) => return Outcome::invalid("check", input, e, None),
        };
        let orbits: Vec<Value> = dec
            .orbits
            .iter()
            .enumerate()
            .map(|(i, o)| {
                let checks: Vec<&SylowCheck> = verdict.breakdown.iter().filter(|c| c.orbit == Some(i)).collect();
                let witness = checks.iter().find_map(|c| c.inner_witness.as_ref()).map(|w| w.to_string());
                text.push(format!(
                    "orbit {i}: representative {}, members {:?}, stabilizer of order {}",
                    o.representative,
                    o.members,
                    o.stabilizer.order()
                ));
                json!({
                    "rep": o.representative,
                    "members": o.members,
                    "stabilizer": subgroup_json(&o.stabilizer),
                    "verdictDetail": { "outer": witness.is_none(), "inner_witness": witness },
                })
            })
            .collect();
        result["orbits"] = json!(orbits);
    }
    text.extend(breakdown_table(&verdict));
    for w in l.warnings() {
        text.push(format!("warning: {w}"));
    }
    text.push(format!("hereditary: {}", verdict.hereditary));
    let code = if verdict.hereditary { EXIT_OK } else { EXIT_NEGATIVE };
    Outcome::new("check", input, code, result, text)
}

/// `picent`: the central Picard group of a hereditary tiled order.
pub fn cmd_picent(input: &str) -> Outcome {
    let parsed = match parse_json(input).and_then(|v| parse_order(&v)) {
        Ok(p) => p,
        Err(e) => return Outcome::from_input_error("picent", input, &e),
    };
    let group = match picent_global(&parsed.order) {
        Ok(g) => g,
        Err(e) => return Outcome::invalid("picent", input, e, None),
    };
    let factors: Vec<Value> =
        group.components.iter().map(|(m, c)| json!({ "place": m.to_string(), "modulus": c.t })).collect();
    let result = json!({
        "picent": group.to_string(),
        "trivial": group.is_trivial(),
        "order": group.order(),
        "factors": factors,
    });
    Outcome::new("picent", input, EXIT_OK, result, vec![format!("Picent = {group}")])
}

fn contexts_of(l: &GradedOrder) -> Vec<Scope> {
    let mut out = Vec::new();
    if *l.scope() == Scope::Global {
        out.push(Scope::Global);
    }
    out.extend(relevant_places(l).into_iter().map(Scope::Local));
    out
}

/// `classify`: which grades are inner in each context, and whether every
/// component is free of rank one over `Δ`.
pub fn cmd_classify(input: &str) -> Outcome {
    let l = match parse_json(input).and_then(|v| parse_graded(&v)) {
        Ok(l) => l,
        Err(e) => return Outcome::from_input_error("classify", input, &e),
    };
    let cp = match l.is_crossed_product() {
        Ok(c) => c,
        Err(e) => return Outcome::invalid("classify", input, e, None),
    };
    let whole = l.group().whole();
    let mut text = vec![format!("crossed product: {}", cp.is_crossed_product)];
    let contexts: Vec<Value> = contexts_of(&l)
        .iter()
        .map(|ctx| {
            let inner = l.inner_elements(&whole, ctx);
            text.push(format!("{:<8} |Inn| = {} of {}", ctx.to_string(), inner.len(), whole.order()));
            json!({
                "context": ctx.to_string(),
                "inner": perms(&inner),
                "outer": inner.len() == 1,
                "fully_inner": inner.len() == whole.order(),
            })
        })
        .collect();
    let per_element: Vec<Value> =
        cp.per_element.iter().map(|(g, free)| json!({ "g": g.to_string(), "free_rank_one": free })).collect();
    let result = json!({
        "kind": l.kind().as_str(),
        "group_order": l.group().order(),
        "crossed_product": cp.is_crossed_product,
        "per_element": per_element,
        "contexts": contexts,
        "warnings": l.warnings(),
    });
    Outcome::new("classify", input, EXIT_OK, result, text)
}

fn report_json(r: &OracleReport) -> Value {
    json!({
        "place": r.place,
        "rank": r.rank,
        "radical_dim": r.radical_dim,
        "oracle": r.oracle_hereditary,
        "engine": r.criterion_hereditary,
        "agree": r.agree,
    })
}

/// `oracle-check`: compares the flattened radical computation with the
/// engine, at `place` or at every relevant place.
pub fn cmd_oracle_check(input: &str, place: Option<&str>) -> Outcome {
    let l = match parse_json(input).and_then(|v| parse_graded(&v)) {
        Ok(l) => l,
        Err(e) => return Outcome::from_input_error("oracle-check", input, &e),
    };
    let places = match place {
        Some(s) => match MaximalIdeal::parse(l.ring(), s) {
            Ok(m) => vec![m],
            Err(e) => return Outcome::invalid("oracle-check", input, e, Some("--place")),
        },
        None => relevant_places(&l),
    };
    let mut reports = Vec::new();
    let mut text = vec![format!("{:<8} {:<5} {:<7} {:<7} {}", "place", "rank", "oracle", "engine", "agree")];
    for m in &places {
        match oracle_check(&l, m) {
            Ok(r) => {
                text.push(format!(
                    "{:<8} {:<5} {:<7} {:<7} {}",
                    r.place, r.rank, r.oracle_hereditary, r.criterion_hereditary, r.agree
                ));
                reports.push(r);
            }
            Err(e) => return Outcome::invalid("oracle-check", input, e, None),
        }
    }
    let agree = reports.iter().all(|r| r.agree);
    let result = match reports.as_slice() {
        [one] if place.is_some() => report_json(one),
        _ => json!({ "agree": agree, "places": reports.iter().map(report_json).collect::<Vec<_>>() }),
    };
    Outcome::new("oracle-check", input, if agree { EXIT_OK } else { EXIT_NEGATIVE }, result, text)
}

struct Assertions {
    items: Vec<(String, bool)>,
}

impl Assertions {
    fn check(&mut self, name: &str, ok: bool) {
        self.items.push((name.to_string(), ok));
    }

    fn finish(self, command: &str, input: &str, facts: Value) -> Outcome {
        let all = self.items.iter().all(|(_, ok)| *ok);
        let text = self.items.iter().map(|(n, ok)| format!("{} {n}", if *ok { "PASS" } else { "FAIL" })).collect();
        let assertions: Vec<Value> = self.items.iter().map(|(n, ok)| json!({ "name": n, "pass": ok })).collect();
        let result = json!({ "assertions": assertions, "all_pass": all, "facts": facts });
        Outcome::new(command, input, if all { EXIT_OK } else { EXIT_NEGATIVE }, result, text)
    }
}

/// `example`: builds one of the shipped examples and checks its stated facts.
pub fn cmd_example(name: &str, d: Option<usize>) -> Outcome {
    let input = format!("{name} {}", d.map_or(String::new(), |d| d.to_string()));
    let run = match name {
        "outer" => example_outer(),
        "nonbasic" => example_nonbasic(),
        "semiprime" => match d.unwrap_or(3) {
            d @ 3..=7 => example_semiprime(d),
            other => Err(format!("--d must be between 3 and 7, got {other}")),
        },
        other => Err(format!("unknown example {other:?}; expected nonbasic, outer or semiprime")),
    };
    match run {
        Ok((a, facts)) => a.finish("example", &input, facts),
        Err(e) => Outcome::invalid("example", &input, e, None),
    }
}

fn load_graded(text: &str) -> Result<GradedOrder, String> {
    parse_json(text).and_then(|v| parse_graded(&v)).map_err(|e| e.to_string())
}

fn example_outer() -> Result<(Assertions, Value), String> {
    let mut a = Assertions { items: Vec::new() };
    let delta = parse_json(OUTER_DELTA_FIXTURE).and_then(|v| parse_order(&v)).map_err(|e| e.to_string())?;
    let picent = picent_global(&delta.order).map_err(|e| e.to_string())?;
    a.check("Picent(Delta) = Z/5 + Z/5 at (1+2i) and (1-2i)", picent.to_string() == "Z/5 at (1+2i) ⊕ Z/5 at (1-2i)");
    let l = load_graded(OUTER_FIXTURE)?;
    let whole = l.group().whole();
    let global = l.inner_elements(&whole, &Scope::Global);
    a.check("X is outer globally: Inn(C_5) = 1", global.len() == 1);
    let places = relevant_places(&l);
    let p = places.iter().find(|m| m.display_generator().to_string() == "1+2i").cloned().ok_or("no place (1+2i)")?;
    let at_p = l.inner_elements(&whole, &Scope::Local(p.clone()));
    a.check("X is inner at (1+2i): Inn(C_5) = C_5", at_p.len() == 5);
    let v = main_hereditary_verdict(&l).map_err(|e| e.to_string())?;
    let witness = v.breakdown.iter().find(|c| c.inner_witness.is_some());
    a.check("Lambda is not hereditary", !v.hereditary);
    a.check("the witness lies over 5", witness.is_some_and(|c| c.p == 5));
    let mut oracle = Vec::new();
    for m in &places {
        let r = oracle_check(&l, m).map_err(|e| e.to_string())?;
        a.check(&format!("oracle agrees at {m} (rank {})", r.rank), r.agree);
        oracle.push(report_json(&r));
    }
    let facts = json!({
        "picent": picent.to_string(),
        "inner_global": perms(&global),
        "inner_at_p": perms(&at_p),
        "verdict": verdict_json(&v),
        "oracle": oracle,
    });
    Ok((a, facts))
}

fn example_nonbasic() -> Result<(Assertions, Value), String> {
    let mut a = Assertions { items: Vec::new() };
    let l = load_graded(NONBASIC_FIXTURE)?;
    a.check(
        "Lambda = Delta + rad is strongly graded by Z/2",
        l.strong_grading_witness().is_none() && l.group().order() == 2,
    );
    let cp = l.is_crossed_product().map_err(|e| e.to_string())?;
    a.check("Lambda is not a crossed product", !cp.is_crossed_product);
    let m = l.delta()[0].support().into_iter().next().ok_or("Delta has no place")?;
    let (corner, idx) = l.basic_corner_at(&m).map_err(|e| e.to_string())?;
    let corner_cp = corner.is_crossed_product().map_err(|e| e.to_string())?;
    a.check("the basic corner eLe is a crossed product", corner_cp.is_crossed_product);
    let r = oracle_check(&l, &m).map_err(|e| e.to_string())?;
    a.check("oracle agrees with the engine", r.agree);
    let facts = json!({
        "per_element": cp.per_element.iter().map(|(g, f)| json!({ "g": g.to_string(), "free_rank_one": f })).collect::<Vec<_>>(),
        "corner_indices": idx,
        "oracle": report_json(&r),
    });
    Ok((a, facts))
}

/// The semiprime fixture with `d` copies of its block and `S_d` acting.
pub fn semiprime_fixture(d: usize) -> Result<GradedSpec, String> {
    let v = parse_json(SEMIPRIME_FIXTURE).map_err(|e| e.to_string())?;
    let mut spec: GradedSpec = serde_json::from_value(v).map_err(|e| e.to_string())?;
    let block: OrderSpec = serde_json::from_value(spec.delta["components"][0].clone()).map_err(|e| e.to_string())?;
    spec.delta = json!({ "components": vec![block; d] });
    spec.group = Some(crate::io::GroupSpec { symmetric: Some(d), ..Default::default() });
    Ok(spec)
}

fn example_semiprime(d: usize) -> Result<(Assertions, Value), String> {
    let mut a = Assertions { items: Vec::new() };
    let l = crate::io::build_graded(&semiprime_fixture(d)?).map_err(|e| e.to_string())?;
    let dec = orbit_decompose(&l).map_err(|e| e.to_string())?;
    let fact = |k: usize| (1..=k).product::<usize>();
    a.check("one orbit on the central idempotents", dec.orbits.len() == 1);
    let o = &dec.orbits[0];
    a.check(&format!("stabilizer has order {}! (S_{})", d - 1, d - 1), o.stabilizer.order() == fact(d - 1));
    let c = &o.corner;
    let is_group_ring = c.components().iter().all(|x| x.fixes_blocks() && x.blocks()[0] == *c.delta()[0].ideals())
        && (0..c.group().order()).all(|g| (0..c.group().order()).all(|h| c.multiplier(g, h).is_one()));
    a.check(&format!("corner is the group ring Delta S_{}", d - 1), is_group_ring);
    let m = l.delta()[0].support().into_iter().next().ok_or("Delta has no place")?;
    let ctx = Scope::Local(m.clone());
    let p = c.group().sylow_subgroup(2).map_err(|e| e.to_string())?;
    let inn_corner = c.inner_elements(&p, &ctx);
    let inn_full = l.inner_elements(&p, &ctx);
    a.check("Inn on the corner is the whole 2-Sylow P", inn_corner.len() == p.order());
    a.check("Inn on the full order is trivial", inn_full.len() == 1);
    let v = main_hereditary_verdict(&l).map_err(|e| e.to_string())?;
    a.check("Lambda is not hereditary at residue characteristic 2", !v.hereditary);
    let mut facts = json!({
        "sylow": subgroup_json(&p),
        "inner_corner": perms(&inn_corner),
        "inner_full": perms(&inn_full),
        "verdict": verdict_json(&v),
    });
    if let Ok(r) = oracle_check(&l, &m) {
        a.check(&format!("oracle agrees with the engine (rank {})", r.rank), r.agree);
        facts["oracle"] = report_json(&r);
    }
    Ok((a, facts))
}

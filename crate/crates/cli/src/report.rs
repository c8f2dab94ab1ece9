//! Command results as JSON with a fixed field order, plus a text rendering.
//!
//! Wall-clock time never enters a report, so output is byte-stable across
//! runs and worker counts. Timing goes to standard error instead.

use serde_json::{json, Map, Value};
use spectra::{
    Counterexample, Property, PropertySummary, SearchOutcome, SpectralMap, Verdict, WitnessSearchSpec,
};

use crate::document::InstanceDocument;

/// Properties listed in a report, in order. `UNITARY` is reported apart.
pub const REPORTED_PROPERTIES: [Property; 9] = [
    Property::Lo,
    Property::Inc,
    Property::Gu,
    Property::Gd,
    Property::Sgb,
    Property::Gb,
    Property::Sclo,
    Property::Ggd,
    Property::ChainMorphism,
];

/// Bounds of an exhaustive run; the worker count is deliberately absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSection {
    pub max_s: usize,
    pub max_r: usize,
    pub allow_top: bool,
    pub family: &'static str,
    pub waive_hypotheses: bool,
}

#[derive(Clone, Debug)]
pub struct SearchSection {
    pub spec: WitnessSearchSpec,
    pub outcome: SearchOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumSection {
    pub ring: String,
    pub primes: Vec<String>,
    pub order: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: &'static str,
    pub seed: u64,
    pub instance: Option<InstanceDocument>,
    pub sweep: Option<SweepSection>,
    pub properties: Option<PropertySummary>,
    pub layers: Vec<(usize, bool)>,
    pub verdicts: Vec<Verdict>,
    /// Conjectural statements; a failure here is reported but is not a
    /// violation for the exit code.
    pub exploratory: Vec<Verdict>,
    pub ring_lemmas: Vec<Verdict>,
    pub search: Option<SearchSection>,
    pub spectrum: Option<SpectrumSection>,
}

impl Report {
    pub fn new(command: &'static str, seed: u64) -> Self {
        Report {
            command,
            seed,
            ..Report::default()
        }
    }

    /// Fills `properties` and `layers` from one map. Layers run up to
    /// `max(3, height of s)`.
    pub fn with_check(mut self, m: &SpectralMap) -> Self {
        self.properties = Some(m.summary());
        let top = m.s().height().max(3);
        self.layers = (1..=top).map(|n| (n, m.check_layer(n))).collect();
        self
    }

    pub fn violated(&self) -> bool {
        self.verdicts.iter().chain(&self.ring_lemmas).any(|v| !v.holds)
    }

    pub fn witness_found(&self) -> bool {
        self.search.as_ref().is_some_and(|s| s.outcome.witness.is_some())
    }

    /// 0 when everything holds or the search came back empty, 1 on a
    /// violation or a witness.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.violated() || self.witness_found())
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("seed".into(), json!(self.seed));
        if let Some(doc) = &self.instance {
            out.insert("instance".into(), doc.to_json());
        }
        if let Some(s) = &self.sweep {
            out.insert(
                "sweep".into(),
                json!({
                    "max_s": s.max_s,
                    "max_r": s.max_r,
                    "allow_top": s.allow_top,
                    "family": s.family,
                    "waive_hypotheses": s.waive_hypotheses,
                }),
            );
        }
        if let Some(p) = &self.properties {
            out.insert("properties".into(), properties_json(p));
            out.insert("unitary".into(), json!(p.unitary));
        }
        if !self.layers.is_empty() {
            let layers: Map<String, Value> = self.layers.iter().map(|&(n, ok)| (n.to_string(), json!(ok))).collect();
            out.insert("layers".into(), Value::Object(layers));
        }
        for (key, list) in [
            ("verdicts", &self.verdicts),
            ("exploratory", &self.exploratory),
            ("ring_lemmas", &self.ring_lemmas),
        ] {
            if !list.is_empty() {
                out.insert(key.into(), Value::Array(list.iter().map(verdict_json).collect()));
            }
        }
        if let Some(s) = &self.search {
            out.insert("search".into(), search_json(s));
        }
        if let Some(s) = &self.spectrum {
            let order: Vec<Value> = s.order.iter().map(|(a, b)| json!([a, b])).collect();
            out.insert(
                "spectrum".into(),
                json!({ "ring": s.ring, "primes": s.primes, "order": order }),
            );
        }
        out.insert("exit_code".into(), json!(self.exit_code()));
        Value::Object(out)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        let name = self.instance.as_ref().and_then(|d| d.name.clone());
        line(match name {
            Some(n) => format!("{} {n}", self.command),
            None => self.command.to_string(),
        });
        if let Some(h) = self.instance.as_ref().and_then(|d| d.ring.as_ref()) {
            line(format!("ring: {h}"));
        }
        if let Some(s) = &self.sweep {
            line(format!(
                "sweep: |s| <= {}, |r| <= {}, top {}, {} posets{}",
                s.max_s,
                s.max_r,
                if s.allow_top { "allowed" } else { "excluded" },
                s.family,
                if s.waive_hypotheses { ", hypotheses waived" } else { "" }
            ));
        }
        if let Some(p) = &self.properties {
            let flags: Vec<String> = REPORTED_PROPERTIES
                .iter()
                .map(|&q| format!("{q}={}", p.get(q)))
                .collect();
            line(format!("properties: {}", flags.join(" ")));
            line(format!("unitary: {}", p.unitary));
        }
        if !self.layers.is_empty() {
            let layers: Vec<String> = self.layers.iter().map(|(n, ok)| format!("{n}={ok}")).collect();
            line(format!("layers: {}", layers.join(" ")));
        }
        for v in self.verdicts.iter().chain(&self.ring_lemmas) {
            verdict_text(v, "", &mut line);
        }
        for v in &self.exploratory {
            verdict_text(v, " (exploratory)", &mut line);
        }
        if let Some(s) = &self.search {
            let required: Vec<String> = s.spec.required.iter().map(|f| f.to_string()).collect();
            line(format!(
                "search: {} with [{}], |s| <= {}, |r| <= {}",
                s.spec.goal,
                required.join(", "),
                s.spec.max_s,
                s.spec.max_r
            ));
            match &s.outcome.witness {
                Some(w) => {
                    line(format!("witness: {}", map_text(w)));
                    line(format!("replays: {}", s.spec.accepts(w)));
                }
                None => line("witness: none within bounds".into()),
            }
        }
        if let Some(s) = &self.spectrum {
            line(format!("spec {}: {}", s.ring, s.primes.join(", ")));
            for (a, b) in &s.order {
                line(format!("  {a} < {b}"));
            }
        }
        out
    }
}

fn properties_json(p: &PropertySummary) -> Value {
    let map: Map<String, Value> = REPORTED_PROPERTIES
        .iter()
        .map(|&q| (q.as_str().to_string(), json!(p.get(q))))
        .collect();
    Value::Object(map)
}

/// The counterexample's instance, named after the statement it violates.
pub fn counterexample_document(statement: &str, cx: &Counterexample) -> InstanceDocument {
    InstanceDocument::from_map(cx.map.clone()).named(format!("{statement} counterexample"))
}

fn verdict_json(v: &Verdict) -> Value {
    let mut out = Map::new();
    out.insert("statement".into(), json!(v.statement.as_str()));
    out.insert("holds".into(), json!(v.holds));
    out.insert("instances_checked".into(), json!(v.instances_checked));
    out.insert("premises_met".into(), json!(v.premises_met));
    if let Some(note) = &v.note {
        out.insert("note".into(), json!(note));
    }
    if let Some(cx) = &v.counterexample {
        out.insert(
            "counterexample".into(),
            json!({
                "detail": cx.detail,
                "hypotheses_waived": cx.hypotheses_waived,
                "instance": counterexample_document(v.statement.as_str(), cx).to_json(),
            }),
        );
    }
    Value::Object(out)
}

fn search_json(s: &SearchSection) -> Value {
    let required: Vec<String> = s.spec.required.iter().map(|f| f.to_string()).collect();
    let mut out = Map::new();
    out.insert("goal".into(), json!(s.spec.goal.to_string()));
    out.insert("required".into(), json!(required));
    out.insert("max_s".into(), json!(s.spec.max_s));
    out.insert("max_r".into(), json!(s.spec.max_r));
    out.insert("family".into(), json!(family_name(s.spec.family)));
    out.insert("found".into(), json!(s.outcome.witness.is_some()));
    if let Some(w) = &s.outcome.witness {
        out.insert(
            "witness".into(),
            InstanceDocument::from_map(w.clone()).named("witness").to_json(),
        );
        out.insert("properties".into(), properties_json(&w.summary()));
        out.insert("unitary".into(), json!(w.is_unitary()));
        out.insert("replays".into(), json!(s.spec.accepts(w)));
    }
    if let Some(first) = &s.outcome.found {
        out.insert(
            "first_hit".into(),
            InstanceDocument::from_map(first.clone()).named("first hit").to_json(),
        );
    }
    Value::Object(out)
}

pub fn family_name(f: spectra::PosetFamily) -> &'static str {
    match f {
        spectra::PosetFamily::Labeled => "labeled",
        spectra::PosetFamily::Natural => "natural",
    }
}

fn verdict_text(v: &Verdict, suffix: &str, line: &mut impl FnMut(String)) {
    let status = if v.holds { "holds" } else { "VIOLATED" };
    let mut s = format!(
        "{} {status}{suffix}: {} instances, {} with premises met",
        v.statement, v.instances_checked, v.premises_met
    );
    if let Some(note) = &v.note {
        s.push_str(&format!(" ({note})"));
    }
    line(s);
    if let Some(cx) = &v.counterexample {
        line(format!("  counterexample: {}", map_text(&cx.map)));
        line(format!("  detail: {}", cx.detail));
    }
}

/// One-line rendering: both posets by covering pairs and the assignment.
pub fn map_text(m: &SpectralMap) -> String {
    let poset = |p: &spectra::Poset| {
        let covers: Vec<String> = spectra::covering_pairs(p)
            .into_iter()
            .map(|(a, b)| format!("{}<{}", p.label(a), p.label(b)))
            .collect();
        format!("{{{}}} [{}]", p.labels().join(","), covers.join(","))
    };
    let assignment: Vec<String> = (0..m.r().len())
        .map(|q| format!("{}->{}", m.r().label(q), m.target_label(q)))
        .collect();
    format!("s={} r={} map {}", poset(m.s()), poset(m.r()), assignment.join(","))
}

use std::fmt::Write;

use charstack::Poly;
use serde::Serialize;

use crate::Format;

#[derive(Serialize, Debug)]
pub struct InvariantsRecord {
    pub dimension: usize,
    pub components: String,
    pub euler: String,
}

#[derive(Serialize, Debug)]
pub struct OracleRecord {
    pub kind: String,
    pub n: u32,
    pub q: u64,
    pub order: String,
    pub classes: usize,
    pub hom_count: String,
    pub groupoid_count: String,
}

#[derive(Serialize, Debug)]
pub struct VerifyRecord {
    pub oracle: String,
    pub polynomial: String,
    pub agree: bool,
}

/// Everything a command produced. Big integers and rationals are strings.
#[derive(Serialize, Debug)]
pub struct Record {
    pub command: Vec<String>,
    pub polynomial: Option<Poly>,
    pub polynomial_text: Option<String>,
    pub polynomial_latex: Option<String>,
    pub eval_q: Option<i64>,
    pub value: Option<String>,
    pub invariants: Option<InvariantsRecord>,
    pub zeta: Option<f64>,
    pub oracle: Option<OracleRecord>,
    pub verify: Option<VerifyRecord>,
    pub modulus: Option<String>,
    pub timing_ms: f64,
}

impl Record {
    pub fn new(command: Vec<String>) -> Self {
        Record {
            command,
            polynomial: None,
            polynomial_text: None,
            polynomial_latex: None,
            eval_q: None,
            value: None,
            invariants: None,
            zeta: None,
            oracle: None,
            verify: None,
            modulus: None,
            timing_ms: 0.0,
        }
    }

    pub fn set_polynomial(&mut self, p: Poly) {
        self.polynomial_text = Some(p.to_string());
        self.polynomial_latex = Some(p.to_latex());
        self.polynomial = Some(p);
    }
}

pub fn render(r: &Record, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("record serializes") + "\n",
        Format::Text => render_lines(r, false),
        Format::Latex => render_lines(r, true),
    }
}

fn render_lines(r: &Record, latex: bool) -> String {
    let mut out = String::new();
    // in LaTeX mode the polynomial is the only uncommented line
    let tag = if latex { "% " } else { "" };
    if latex {
        if let Some(p) = &r.polynomial_latex {
            let _ = writeln!(out, "{p}");
        }
    } else if let Some(p) = &r.polynomial_text {
        let _ = writeln!(out, "polynomial: {p}");
    }
    if let (Some(q), Some(v)) = (r.eval_q, &r.value) {
        let _ = writeln!(out, "{tag}value at q = {q}: {v}");
    }
    if let Some(inv) = &r.invariants {
        let _ = writeln!(out, "{tag}dimension: {}", inv.dimension);
        let _ = writeln!(out, "{tag}components: {}", inv.components);
        let _ = writeln!(out, "{tag}euler: {}", inv.euler);
    }
    if let Some(z) = r.zeta {
        let _ = writeln!(out, "{tag}zeta: {z}");
    }
    if let Some(o) = &r.oracle {
        let _ = writeln!(out, "{tag}group: {}{}(F_{})", o.kind.to_uppercase(), o.n, o.q);
        let _ = writeln!(out, "{tag}order: {}", o.order);
        let _ = writeln!(out, "{tag}classes: {}", o.classes);
        let _ = writeln!(out, "{tag}hom_count: {}", o.hom_count);
        let _ = writeln!(out, "{tag}groupoid_count: {}", o.groupoid_count);
    }
    if let Some(v) = &r.verify {
        let _ = writeln!(out, "{tag}oracle: {}", v.oracle);
        let _ = writeln!(out, "{tag}polynomial value: {}", v.polynomial);
        let _ = writeln!(out, "{tag}agree: {}", v.agree);
    }
    if let Some(m) = &r.modulus {
        let _ = writeln!(out, "{tag}modulus: {m}");
    }
    out
}

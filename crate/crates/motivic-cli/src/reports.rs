//! JSON report types for every subcommand, plus their plain-text
//! renderings. Field order is fixed by the struct definitions and all
//! maps are ordered, so identical requests produce byte-identical
//! output.

use motivic::arith::format_rational;
use motivic::brauer::BrauerClass;
use motivic::motive::{AlgebraClass, NCAtom, NCMotiveExpr};
use motivic::qform::HypothesisReport;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: &str = "1";

/// A place/value pair in canonical order (the real place first, then
/// primes ascending).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaceSign {
    pub place: String,
    pub value: i32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BrauerClassJson {
    pub inv: BTreeMap<String, String>,
}

impl BrauerClassJson {
    pub fn from_class(class: &BrauerClass) -> Self {
        let inv = class
            .invariants()
            .map(|(place, value)| (place.to_string(), format_rational(value)))
            .collect();
        BrauerClassJson { inv }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypothesesJson {
    pub even_dimension: bool,
    pub trivial_discriminant: bool,
    pub trivial_clifford: bool,
    pub anisotropic: bool,
    pub all: bool,
}

impl From<HypothesisReport> for HypothesesJson {
    fn from(h: HypothesisReport) -> Self {
        HypothesesJson {
            even_dimension: h.even_dimension,
            trivial_discriminant: h.trivial_discriminant,
            trivial_clifford: h.trivial_clifford,
            anisotropic: h.anisotropic,
            all: h.all,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QFormReport {
    pub schema_version: String,
    pub kind: String,
    pub diagonal: Vec<String>,
    pub dimension: usize,
    pub determinant: String,
    pub signed_determinant: String,
    pub trivial_discriminant: bool,
    pub hasse_invariants: Vec<PlaceSign>,
    pub clifford_invariant: BrauerClassJson,
    pub clifford_trivial: bool,
    pub anisotropic: bool,
    pub isotropy_witness: Option<Vec<String>>,
    pub in_i3: bool,
    pub hypotheses: HypothesesJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl QFormReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("form <{}>\n", self.diagonal.join(",")));
        out.push_str(&format!("  dimension            {}\n", self.dimension));
        out.push_str(&format!("  determinant          {}\n", self.determinant));
        out.push_str(&format!("  signed determinant   {}\n", self.signed_determinant));
        out.push_str(&format!("  trivial discriminant {}\n", self.trivial_discriminant));
        let hasse: Vec<String> = self
            .hasse_invariants
            .iter()
            .map(|ps| format!("{}:{:+}", ps.place, ps.value))
            .collect();
        out.push_str(&format!("  hasse invariants     {}\n", hasse.join(" ")));
        let cliff: Vec<String> = self
            .clifford_invariant
            .inv
            .iter()
            .map(|(p, v)| format!("{p}:{v}"))
            .collect();
        out.push_str(&format!(
            "  clifford invariant   {}\n",
            if cliff.is_empty() {
                "trivial".to_string()
            } else {
                cliff.join(" ")
            }
        ));
        out.push_str(&format!("  anisotropic          {}\n", self.anisotropic));
        if let Some(w) = &self.isotropy_witness {
            out.push_str(&format!("  isotropy witness     ({})\n", w.join(", ")));
        }
        out.push_str(&format!("  in I^3 (Witt class)  {}\n", self.in_i3));
        out.push_str(&format!(
            "  hypothesis flags     even={} disc={} clifford={} anisotropic={} all={}\n",
            self.hypotheses.even_dimension,
            self.hypotheses.trivial_discriminant,
            self.hypotheses.trivial_clifford,
            self.hypotheses.anisotropic,
            self.hypotheses.all
        ));
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NCMotiveJson {
    pub unit: usize,
    pub algebras: Vec<AlgebraAtomJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub opaque: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraAtomJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inv: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abstract_order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u32>,
    pub power: u32,
}

impl NCMotiveJson {
    pub fn from_expr(expr: &NCMotiveExpr) -> Self {
        let mut unit = 0usize;
        let mut algebras = Vec::new();
        let mut opaque = Vec::new();
        for atom in expr.terms() {
            match atom {
                NCAtom::Unit => unit += 1,
                NCAtom::Algebra { class, power } => {
                    let atom_json = match class {
                        AlgebraClass::Concrete(c) => AlgebraAtomJson {
                            inv: Some(BrauerClassJson::from_class(c).inv),
                            abstract_order: None,
                            exponent: None,
                            power: *power,
                        },
                        AlgebraClass::Abstract { order, exponent } => AlgebraAtomJson {
                            inv: None,
                            abstract_order: Some(*order),
                            exponent: Some(*exponent),
                            power: *power,
                        },
                    };
                    algebras.push(atom_json);
                }
                NCAtom::Opaque(label) => opaque.push(label.clone()),
            }
        }
        NCMotiveJson {
            unit,
            algebras,
            opaque,
        }
    }

    pub fn text(&self) -> String {
        let mut parts = Vec::new();
        for _ in 0..self.unit {
            parts.push("1".to_string());
        }
        for a in &self.algebras {
            if a.power == 1 {
                parts.push("U(A)".to_string());
            } else {
                parts.push(format!("U(A^{})", a.power));
            }
        }
        for label in &self.opaque {
            parts.push(format!("U({label})"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadricMotiveReport {
    pub schema_version: String,
    pub kind: String,
    pub diagonal: Vec<String>,
    pub quadric_dimension: usize,
    pub hypotheses: HypothesesJson,
    pub nc_motive: NCMotiveJson,
    pub unit_type: Option<usize>,
    pub decomposable: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl QuadricMotiveReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "quadric of <{}> (dimension {})\n  U(perf) = {}\n",
            self.diagonal.join(","),
            self.quadric_dimension,
            self.nc_motive.text()
        );
        match self.unit_type {
            Some(m) => out.push_str(&format!("  unit type: 1^{m}\n")),
            None => out.push_str("  unit type: no\n"),
        }
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeveriBrauerReport {
    pub schema_version: String,
    pub kind: String,
    pub degree: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<BrauerClassJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abstract_order: Option<u32>,
    pub class_order: u64,
    pub division_declared: bool,
    pub nc_motive: NCMotiveJson,
    pub unit_type: Option<usize>,
    pub decomposable: bool,
    pub chow_indecomposable_by_citation: bool,
}

impl SeveriBrauerReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "Severi-Brauer variety of degree {}\n  U(perf) = {}\n",
            self.degree,
            self.nc_motive.text()
        );
        out.push_str(&format!("  class order: {}\n", self.class_order));
        match self.unit_type {
            Some(m) => out.push_str(&format!("  unit type: 1^{m}\n")),
            None => out.push_str("  unit type: no\n"),
        }
        out.push_str(&format!("  decomposable: {}\n", self.decomposable));
        if self.chow_indecomposable_by_citation {
            out.push_str(
                "  note: Chow motive indecomposable (division algebra of prime-power degree; by citation, not computed)\n",
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub schema_version: String,
    pub kind: String,
    pub m: usize,
    pub d: u64,
    pub seed: u64,
    pub trials: u64,
    pub ring: String,
    pub passes: u64,
    pub failures: u64,
}

impl ReconstructionReport {
    pub fn text(&self) -> String {
        format!(
            "reconstruction: m={} d={} ring={} seed={} trials={}: {} passed, {} failed\n",
            self.m, self.d, self.ring, self.seed, self.trials, self.passes, self.failures
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialRow {
    pub m: u32,
    pub polynomial: String,
    pub terms: Vec<TermJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lcm_denominator: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: String,
    pub coefficient: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialTable {
    pub schema_version: String,
    pub kind: String,
    pub max_degree: u32,
    pub rows: Vec<PolynomialRow>,
}

impl PolynomialTable {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            match (&row.t_m, &row.lcm_denominator) {
                (Some(tm), Some(lcm)) => out.push_str(&format!(
                    "m={:<2} T_m={:<10} lcm={:<10} {}\n",
                    row.m, tm, lcm, row.polynomial
                )),
                _ => out.push_str(&format!("m={:<2} {}\n", row.m, row.polynomial)),
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvertibilityReport {
    pub schema_version: String,
    pub kind: String,
    pub ring: String,
    pub scalar: String,
    pub invertible: bool,
}

impl InvertibilityReport {
    pub fn text(&self) -> String {
        format!(
            "{} is {}invertible in {}\n",
            self.scalar,
            if self.invertible { "" } else { "not " },
            self.ring
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EulerReport {
    pub schema_version: String,
    pub kind: String,
    pub scheme: String,
    pub bundle: String,
    pub euler_characteristic: String,
}

impl EulerReport {
    pub fn text(&self) -> String {
        format!(
            "chi({}, {}) = {}\n",
            self.scheme, self.bundle, self.euler_characteristic
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChIsoReportJson {
    pub schema_version: String,
    pub kind: String,
    pub scheme: String,
    pub ring: String,
    pub is_isomorphism: bool,
    pub determinant: String,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending_entry: Option<OffendingEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OffendingEntryJson {
    pub monomial: Vec<u32>,
    pub bundle: Vec<u32>,
    pub value: String,
}

impl ChIsoReportJson {
    pub fn text(&self) -> String {
        let mut out = format!(
            "Chern character on {} over {}: {}\n  determinant {}\n",
            self.scheme,
            self.ring,
            if self.is_isomorphism {
                "isomorphism"
            } else {
                "NOT an isomorphism"
            },
            self.determinant
        );
        if let Some(entry) = &self.offending_entry {
            out.push_str(&format!(
                "  witness: entry (h^{:?}, O{:?}) = {} lies outside the ring\n",
                entry.monomial, entry.bundle, entry.value
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToddReport {
    pub schema_version: String,
    pub kind: String,
    pub scheme: String,
    pub ring: String,
    pub todd: String,
    pub coefficients: Vec<ChowTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChowTermJson {
    pub degree: Vec<u32>,
    pub value: String,
}

impl ToddReport {
    pub fn text(&self) -> String {
        format!("Td({}) over {} = {}\n", self.scheme, self.ring, self.todd)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelftestReportJson {
    pub schema_version: String,
    pub kind: String,
    pub seed: u64,
    pub trials: u64,
    pub reconstruction_passes: u64,
    pub reconstruction_failures: u64,
    pub orbit_law_passes: u64,
    pub orbit_law_failures: u64,
    pub all_passed: bool,
}

impl SelftestReportJson {
    pub fn text(&self) -> String {
        format!(
            "selftest seed={} trials={}: reconstruction {}/{}, orbit laws {}/{} -> {}\n",
            self.seed,
            self.trials,
            self.reconstruction_passes,
            self.trials,
            self.orbit_law_passes,
            self.trials,
            if self.all_passed { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema_version: String,
    pub kind: String,
    pub error: ErrorBody,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorBody {
    pub class: String,
    pub message: String,
}

impl ErrorReport {
    pub fn new(class: &str, message: String) -> Self {
        ErrorReport {
            schema_version: SCHEMA_VERSION.to_string(),
            kind: "error".to_string(),
            error: ErrorBody {
                class: class.to_string(),
                message,
            },
        }
    }
}

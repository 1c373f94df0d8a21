//! Analysis-report emission: a human-readable summary on stdout and an
//! optional machine-readable JSON artifact. Exact rationals appear in
//! JSON as `p/q` strings.

use std::path::PathBuf;

use revkin_core::groebner::Budget;
use revkin_core::mechanism::bennett::{self, BennettParameters};
use revkin_core::mechanism::bricard;
use revkin_core::mechanism::{analyze, AnalysisReport, InitialConfiguration, MechanismSpec};
use revkin_core::poly::MonomialOrder;
use serde::Serialize;

use crate::{CliError, CliResult};

#[derive(Serialize)]
struct LiftEntry {
    variable: String,
    numerator: String,
    denominator: String,
}

#[derive(Serialize)]
struct RegularityJson {
    dimension: i64,
    codim: usize,
    is_regular: bool,
}

#[derive(Serialize)]
struct ReportJson {
    mechanism: String,
    /// Exact rational parameters as `p/q` strings.
    parameters: Vec<(String, String)>,
    dimension: i64,
    zero_dimensional: bool,
    essential: Vec<String>,
    /// Reduced basis over the essential variables (degrevlex rendering).
    reduced: Vec<String>,
    lift: Vec<LiftEntry>,
    regularity: RegularityJson,
    notes: Vec<String>,
}

fn to_json(
    mechanism: &str,
    parameters: Vec<(String, String)>,
    report: &AnalysisReport,
) -> ReportJson {
    let order = MonomialOrder::DegRevLex;
    ReportJson {
        mechanism: mechanism.to_string(),
        parameters,
        dimension: report.dimension,
        zero_dimensional: report.zero_dimensional,
        essential: report.essential.clone(),
        reduced: report.reduced.elements().iter().map(|g| g.render(&order)).collect(),
        lift: report
            .lift
            .iter()
            .map(|(name, num, den)| LiftEntry {
                variable: name.clone(),
                numerator: num.render(&order),
                denominator: den.render(&order),
            })
            .collect(),
        regularity: RegularityJson {
            dimension: report.regularity.dimension,
            codim: report.regularity.codim,
            is_regular: report.regularity.is_regular,
        },
        notes: report.notes.clone(),
    }
}

fn print_summary(json: &ReportJson) {
    println!("mechanism: {}", json.mechanism);
    for (name, value) in &json.parameters {
        println!("  {name} = {value}");
    }
    println!("dimension: {}", json.dimension);
    println!("essential variables: {}", json.essential.join(", "));
    println!(
        "regular: {} (codimension {})",
        json.regularity.is_regular, json.regularity.codim
    );
    println!("reduced basis over the essential variables:");
    for g in &json.reduced {
        println!("  {g}");
    }
    println!("closed-form lift:");
    for e in &json.lift {
        if e.denominator == "1" {
            println!("  {} = {}", e.variable, e.numerator);
        } else {
            println!("  {} = ({}) / ({})", e.variable, e.numerator, e.denominator);
        }
    }
    for note in &json.notes {
        println!("note: {note}");
    }
}

fn emit(json: &ReportJson, output: &Option<PathBuf>) -> CliResult {
    print_summary(json);
    if let Some(path) = output {
        let text = serde_json::to_string_pretty(json)
            .map_err(|e| CliError::Input(e.to_string()))?;
        std::fs::write(path, text)?;
        println!("report written to {}", path.display());
    }
    Ok(())
}

pub fn run_bricard(output: &Option<PathBuf>, budget: &Budget) -> CliResult {
    let (spec, init) = bricard::preset();
    let report = analyze(&spec, &init, budget)?;
    let json = to_json("bricard", Vec::new(), &report);
    emit(&json, output)
}

pub fn run_bennett(m: &BennettParameters, output: &Option<PathBuf>, budget: &Budget) -> CliResult {
    let geometry = bennett::geometry(m)?;
    let (spec, init) = bennett::preset(m)?;
    let report = analyze(&spec, &init, budget)?;
    let parameters = vec![
        ("m0".to_string(), m.m0.to_string()),
        ("m1".to_string(), m.m1.to_string()),
        ("m2".to_string(), m.m2.to_string()),
        ("r".to_string(), geometry.r.to_string()),
        ("q5".to_string(), m.q5().to_string()),
    ];
    let json = to_json("bennett", parameters, &report);
    emit(&json, output)
}

pub fn run_spec(
    spec: &MechanismSpec,
    init: &InitialConfiguration,
    output: &Option<PathBuf>,
    budget: &Budget,
) -> CliResult {
    let report = analyze(spec, init, budget)?;
    let json = to_json("custom", Vec::new(), &report);
    emit(&json, output)
}

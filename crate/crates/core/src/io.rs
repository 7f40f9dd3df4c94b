//! JSON interchange formats.
//!
//! All serialization is canonical: map keys are lexicographic (BTreeMap),
//! arrays follow declared alphabet/state order, and sequences are emitted in
//! canonical form, so identical values always produce identical bytes.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::{LinearSystem, Rational, RationalMatrix};
use crate::nerode::{DiagramViolation, EquivalenceOutcome, QuotientMapReport};
use crate::signal::{Alphabet, Sequence};
use crate::system::{FiniteWindowSystem, MachineParts, MealyMachine, System};

/// `{"default": "<symbol>", "start": <int>, "values": ["<symbol>", ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceJson {
    pub default: String,
    pub start: i64,
    pub values: Vec<String>,
}

pub fn sequence_to_json(u: &Sequence) -> SequenceJson {
    SequenceJson {
        default: u.alphabet().label(u.alphabet().default_sym()).to_string(),
        start: u.start(),
        values: u.values().iter().map(|&v| u.alphabet().label(v).to_string()).collect(),
    }
}

/// Interprets a sequence file against a known alphabet; the file's default
/// symbol must agree with the alphabet's.
pub fn sequence_from_json(json: &SequenceJson, alphabet: &Alphabet) -> Result<Sequence> {
    let declared = alphabet.id_of_checked(&json.default)?;
    if declared != alphabet.default_sym() {
        return Err(Error::AlphabetMismatch(format!(
            "sequence default {:?} differs from the alphabet default {:?}",
            json.default,
            alphabet.label(alphabet.default_sym())
        )));
    }
    let labels: Vec<&str> = json.values.iter().map(String::as_str).collect();
    Sequence::from_labels(alphabet, json.start, &labels)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MachineJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub default_input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_output_check: Option<String>,
    pub states: Vec<String>,
    pub rest_state: String,
    pub transitions: BTreeMap<String, BTreeMap<String, String>>,
    pub emissions: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub default_input: String,
    pub window: usize,
    /// Keys are window words written as comma-separated symbol labels.
    pub table: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearJson {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<String>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<String>>,
}

/// A parsed system file: either a finite system or an exact-rational linear
/// system.
#[derive(Debug, Clone)]
pub enum SystemFile {
    System(System),
    Linear(LinearSystem),
}

/// Parses one of the three system schemas, dispatching on `"type"`.
/// Machine-invariant failures report every violation at once.
pub fn parse_system_json(text: &str) -> Result<SystemFile> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    let kind = value
        .get("type")
        .and_then(|t| t.as_str())
        .ok_or_else(|| Error::Parse("missing \"type\" field".into()))?;
    match kind {
        "mealy" => {
            let json: MachineJson = serde_json::from_value(value)
                .map_err(|e| Error::Parse(format!("bad mealy schema: {e}")))?;
            let parts = MachineParts {
                inputs: json.inputs,
                outputs: json.outputs,
                default_input: json.default_input,
                default_output_check: json.default_output_check,
                states: json.states,
                rest_state: json.rest_state,
                transitions: json.transitions,
                emissions: json.emissions,
            };
            Ok(SystemFile::System(System::Mealy(MealyMachine::from_parts(&parts)?)))
        }
        "window" => {
            let json: WindowJson = serde_json::from_value(value)
                .map_err(|e| Error::Parse(format!("bad window schema: {e}")))?;
            let input = Alphabet::new(json.inputs.clone(), &json.default_input)?;
            let table = json
                .table
                .iter()
                .map(|(word, y)| {
                    (word.split(',').map(str::to_string).collect::<Vec<_>>(), y.clone())
                })
                .collect();
            let w = FiniteWindowSystem::new(input, json.outputs, json.window, &table)?;
            Ok(SystemFile::System(System::Window(w)))
        }
        "linear" => {
            let json: LinearJson = serde_json::from_value(value)
                .map_err(|e| Error::Parse(format!("bad linear schema: {e}")))?;
            let sys = LinearSystem::new(
                matrix_from_strings(&json.a)?,
                matrix_from_strings(&json.b)?,
                matrix_from_strings(&json.c)?,
                matrix_from_strings(&json.d)?,
            )?;
            Ok(SystemFile::Linear(sys))
        }
        other => Err(Error::Parse(format!("unknown system type {other:?}"))),
    }
}

pub fn machine_to_json(m: &MealyMachine) -> MachineJson {
    let parts = m.to_parts();
    MachineJson {
        kind: "mealy".into(),
        inputs: parts.inputs,
        outputs: parts.outputs,
        default_input: parts.default_input,
        default_output_check: None,
        states: parts.states,
        rest_state: parts.rest_state,
        transitions: parts.transitions,
        emissions: parts.emissions,
    }
}

pub fn window_to_json(w: &FiniteWindowSystem) -> WindowJson {
    WindowJson {
        kind: "window".into(),
        inputs: w.input_alphabet().symbols().to_vec(),
        outputs: w.output_alphabet().symbols().to_vec(),
        default_input: w
            .input_alphabet()
            .label(w.input_alphabet().default_sym())
            .to_string(),
        window: w.window(),
        table: w.to_table_map(),
    }
}

pub fn linear_to_json(sys: &LinearSystem) -> LinearJson {
    LinearJson {
        kind: "linear".into(),
        a: matrix_to_strings(&sys.a),
        b: matrix_to_strings(&sys.b),
        c: matrix_to_strings(&sys.c),
        d: matrix_to_strings(&sys.d),
    }
}

pub fn matrix_to_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

pub fn matrix_from_strings(rows: &[Vec<String>]) -> Result<RationalMatrix> {
    let parsed = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    Rational::from_str(s)
                        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(parsed)
}

/// Markov list JSON: an array of matrices in the same string format as the
/// linear schema, `M_0` first.
pub fn markov_to_json(markov: &[RationalMatrix]) -> Vec<Vec<Vec<String>>> {
    markov.iter().map(matrix_to_strings).collect()
}

pub fn markov_from_json(json: &[Vec<Vec<String>>]) -> Result<Vec<RationalMatrix>> {
    json.iter().map(|m| matrix_from_strings(m)).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramViolationJson {
    pub input: String,
    pub state: String,
}

/// `{"map": {...}, "surjective": bool, "f_violations": [...],
/// "g_violations": [...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuotientMapReportJson {
    pub map: BTreeMap<String, String>,
    pub surjective: bool,
    pub f_violations: Vec<DiagramViolationJson>,
    pub g_violations: Vec<DiagramViolationJson>,
}

pub fn report_to_json(report: &QuotientMapReport) -> QuotientMapReportJson {
    let conv = |vs: &[DiagramViolation]| {
        vs.iter()
            .map(|v| DiagramViolationJson { input: v.input.clone(), state: v.state.clone() })
            .collect()
    };
    QuotientMapReportJson {
        map: report.map.clone(),
        surjective: report.surjective,
        f_violations: conv(&report.f_violations),
        g_violations: conv(&report.g_violations),
    }
}

/// `{"word": ["<sym>", ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CounterexampleJson {
    pub word: Vec<String>,
}

pub fn counterexample_to_json(
    outcome: &EquivalenceOutcome,
    alphabet: &Alphabet,
) -> Option<CounterexampleJson> {
    outcome.counterexample.as_ref().map(|w| CounterexampleJson {
        word: w.iter().map(|&a| alphabet.label(a).to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DELAY1: &str = r#"{
        "type": "mealy",
        "inputs": ["0", "1"],
        "outputs": ["0", "1"],
        "default_input": "0",
        "states": ["z", "o"],
        "rest_state": "z",
        "transitions": {"z": {"0": "z", "1": "o"}, "o": {"0": "z", "1": "o"}},
        "emissions": {"z": {"0": "0", "1": "0"}, "o": {"0": "1", "1": "1"}}
    }"#;

    #[test]
    fn parse_delay_machine() {
        let SystemFile::System(System::Mealy(m)) = parse_system_json(DELAY1).unwrap() else {
            panic!("expected a mealy machine");
        };
        assert_eq!(m.state_count(), 2);
    }

    #[test]
    fn machine_roundtrip_is_identity_on_canonical_files() {
        let SystemFile::System(System::Mealy(m)) = parse_system_json(DELAY1).unwrap() else {
            panic!();
        };
        let text = serde_json::to_string_pretty(&machine_to_json(&m)).unwrap();
        let SystemFile::System(System::Mealy(m2)) = parse_system_json(&text).unwrap() else {
            panic!();
        };
        let text2 = serde_json::to_string_pretty(&machine_to_json(&m2)).unwrap();
        assert_eq!(text, text2);
    }

    #[test]
    fn bad_rest_state_is_named() {
        let bad = DELAY1.replace("\"rest_state\": \"z\"", "\"rest_state\": \"nope\"");
        match parse_system_json(&bad) {
            Err(Error::InvalidMachine(vs)) => {
                assert!(vs.iter().any(|v| v.to_string().contains("nope")));
            }
            other => panic!("expected invalid machine, got {other:?}"),
        }
    }

    #[test]
    fn window_missing_entry_names_the_word() {
        let text = r#"{
            "type": "window",
            "inputs": ["0", "1"],
            "outputs": ["0", "1"],
            "default_input": "0",
            "window": 2,
            "table": {"0,0": "0", "0,1": "1", "1,0": "0"}
        }"#;
        let err = parse_system_json(text).unwrap_err();
        assert!(err.to_string().contains("1") && err.to_string().contains("window word"));
    }

    #[test]
    fn linear_roundtrip() {
        let text = r#"{
            "type": "linear",
            "A": [["1/2"]],
            "B": [["1"]],
            "C": [["1"]],
            "D": [["0"]]
        }"#;
        let SystemFile::Linear(sys) = parse_system_json(text).unwrap() else {
            panic!();
        };
        assert_eq!(sys.state_dim(), 1);
        let json = linear_to_json(&sys);
        assert_eq!(json.a, vec![vec!["1/2".to_string()]]);
    }

    #[test]
    fn sequence_roundtrip() {
        let a = Alphabet::numeric(2).unwrap();
        let u = Sequence::from_labels(&a, -2, &["1", "0", "1"]).unwrap();
        let json = sequence_to_json(&u);
        let back = sequence_from_json(&json, &a).unwrap();
        assert_eq!(u, back);
    }
}

//! Concrete, decidable classes of causal time-invariant systems: finite
//! Mealy machines, finite-window table systems, and finite-field reductions
//! of linear systems, with a uniform evaluation oracle.
//!
//! Every system anchors its bi-infinite semantics at a rest state that is
//! fixed under the default input symbol, so evaluation of a finite-support
//! input is independent of how far before the support the state iteration
//! begins.

use std::collections::BTreeMap;

use crate::error::{Error, Result, Violation};
use crate::signal::{Alphabet, Sequence, SymId};

/// Index of a state within its machine's state list.
pub type StateId = usize;

/// A finite state-space realization: total transition and emission maps over
/// a finite state set, with a designated rest state fixed under the default
/// input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyMachine {
    input: Alphabet,
    output: Alphabet,
    states: Vec<String>,
    rest: StateId,
    /// `delta[state][input symbol]` — next state.
    delta: Vec<Vec<StateId>>,
    /// `lambda[state][input symbol]` — emitted output symbol.
    lambda: Vec<Vec<SymId>>,
}

/// Raw machine description before validation, mirroring the JSON schema.
///
/// Maps here may be partial or refer to unknown states; [`validate_parts`]
/// reports every violation at once.
#[derive(Debug, Clone, Default)]
pub struct MachineParts {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub default_input: String,
    pub default_output_check: Option<String>,
    pub states: Vec<String>,
    pub rest_state: String,
    pub transitions: BTreeMap<String, BTreeMap<String, String>>,
    pub emissions: BTreeMap<String, BTreeMap<String, String>>,
}

/// Checks every [`MealyMachine`] invariant on a raw description, returning
/// all violations. An empty list means [`MealyMachine::from_parts`] will
/// succeed.
pub fn validate_parts(parts: &MachineParts) -> Vec<Violation> {
    let mut out = Vec::new();

    check_alphabet(&parts.inputs, Some(&parts.default_input), "input", &mut out);
    check_alphabet(&parts.outputs, None, "output", &mut out);

    for (i, s) in parts.states.iter().enumerate() {
        if parts.states[..i].contains(s) {
            out.push(Violation::DuplicateState { state: s.clone() });
        }
    }
    if parts.states.is_empty() {
        out.push(Violation::BadAlphabet { which: "state".into(), detail: "no states".into() });
    }
    let rest_known = parts.states.contains(&parts.rest_state);
    if !rest_known {
        out.push(Violation::RestStateUnknown { rest_state: parts.rest_state.clone() });
    }

    for (map, is_transition) in [(&parts.transitions, true), (&parts.emissions, false)] {
        for state in map.keys() {
            if !parts.states.contains(state) {
                out.push(Violation::UnknownState { state: state.clone() });
            }
        }
        for state in &parts.states {
            let row = map.get(state);
            for input in &parts.inputs {
                match row.and_then(|r| r.get(input)) {
                    None => out.push(if is_transition {
                        Violation::MissingTransition { state: state.clone(), input: input.clone() }
                    } else {
                        Violation::MissingEmission { state: state.clone(), input: input.clone() }
                    }),
                    Some(target) if is_transition => {
                        if !parts.states.contains(target) {
                            out.push(Violation::UnknownTargetState {
                                state: state.clone(),
                                input: input.clone(),
                                target: target.clone(),
                            });
                        }
                    }
                    Some(output) => {
                        if !parts.outputs.contains(output) {
                            out.push(Violation::UnknownOutputSymbol {
                                state: state.clone(),
                                input: input.clone(),
                                output: output.clone(),
                            });
                        }
                    }
                }
            }
            if let Some(row) = row {
                for input in row.keys() {
                    if !parts.inputs.contains(input) {
                        out.push(Violation::UnknownInputSymbol {
                            state: state.clone(),
                            input: input.clone(),
                        });
                    }
                }
            }
        }
    }

    if rest_known {
        if let Some(target) =
            parts.transitions.get(&parts.rest_state).and_then(|r| r.get(&parts.default_input))
        {
            if *target != parts.rest_state {
                out.push(Violation::RestStateNotFixed {
                    rest_state: parts.rest_state.clone(),
                    target: target.clone(),
                });
            }
        }
        if let Some(declared) = &parts.default_output_check {
            if let Some(derived) =
                parts.emissions.get(&parts.rest_state).and_then(|r| r.get(&parts.default_input))
            {
                if declared != derived {
                    out.push(Violation::DefaultOutputMismatch {
                        declared: declared.clone(),
                        derived: derived.clone(),
                    });
                }
            }
        }
    }

    out
}

fn check_alphabet(
    symbols: &[String],
    default: Option<&String>,
    which: &str,
    out: &mut Vec<Violation>,
) {
    if symbols.is_empty() {
        out.push(Violation::BadAlphabet { which: which.into(), detail: "empty".into() });
    }
    for (i, s) in symbols.iter().enumerate() {
        if symbols[..i].contains(s) {
            out.push(Violation::BadAlphabet {
                which: which.into(),
                detail: format!("duplicate symbol {s:?}"),
            });
        }
    }
    if let Some(d) = default {
        if !symbols.contains(d) {
            out.push(Violation::BadAlphabet {
                which: which.into(),
                detail: format!("default {d:?} not in alphabet"),
            });
        }
    }
}

impl MealyMachine {
    /// Builds a machine from a raw description, rejecting it with the full
    /// violation list if any invariant fails.
    pub fn from_parts(parts: &MachineParts) -> Result<Self> {
        let violations = validate_parts(parts);
        if !violations.is_empty() {
            return Err(Error::InvalidMachine(violations));
        }
        let input = Alphabet::new(parts.inputs.clone(), &parts.default_input)?;
        let rest = parts.states.iter().position(|s| *s == parts.rest_state).unwrap();
        let out_index = |label: &str| parts.outputs.iter().position(|s| s == label).unwrap();
        let delta: Vec<Vec<StateId>> = parts
            .states
            .iter()
            .map(|s| {
                parts.inputs
                    .iter()
                    .map(|a| {
                        let t = &parts.transitions[s][a];
                        parts.states.iter().position(|x| x == t).unwrap()
                    })
                    .collect()
            })
            .collect();
        let lambda: Vec<Vec<SymId>> = parts
            .states
            .iter()
            .map(|s| parts.inputs.iter().map(|a| out_index(&parts.emissions[s][a])).collect())
            .collect();
        // output default is emission(o, rest), derived, never stored
        let derived_default = lambda[rest][input.default_sym()];
        let output = Alphabet::new(parts.outputs.clone(), &parts.outputs[derived_default])?;
        Ok(MealyMachine { input, output, states: parts.states.clone(), rest, delta, lambda })
    }

    /// Programmatic constructor over already-indexed tables.
    ///
    /// `delta[s][a]` and `lambda[s][a]` must be total and in range; the rest
    /// state must be fixed under the default input.
    pub fn new(
        input: Alphabet,
        outputs: Vec<String>,
        states: Vec<String>,
        rest: StateId,
        delta: Vec<Vec<StateId>>,
        lambda: Vec<Vec<SymId>>,
    ) -> Result<Self> {
        let n_states = states.len();
        let mut violations = Vec::new();
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                violations.push(Violation::DuplicateState { state: s.clone() });
            }
        }
        if rest >= n_states {
            violations.push(Violation::RestStateUnknown { rest_state: format!("#{rest}") });
        }
        if delta.len() != n_states || lambda.len() != n_states {
            violations.push(Violation::BadAlphabet {
                which: "state".into(),
                detail: "transition/emission tables do not cover the state list".into(),
            });
            return Err(Error::InvalidMachine(violations));
        }
        for (si, (drow, lrow)) in delta.iter().zip(&lambda).enumerate() {
            if drow.len() != input.len() || lrow.len() != input.len() {
                violations.push(Violation::MissingTransition {
                    state: states[si].clone(),
                    input: "<row incomplete>".into(),
                });
                continue;
            }
            for (ai, &t) in drow.iter().enumerate() {
                if t >= n_states {
                    violations.push(Violation::UnknownTargetState {
                        state: states[si].clone(),
                        input: input.label(ai).to_string(),
                        target: format!("#{t}"),
                    });
                }
            }
            for (ai, &y) in lrow.iter().enumerate() {
                if y >= outputs.len() {
                    violations.push(Violation::UnknownOutputSymbol {
                        state: states[si].clone(),
                        input: input.label(ai).to_string(),
                        output: format!("#{y}"),
                    });
                }
            }
        }
        if rest < n_states
            && delta
                .get(rest)
                .and_then(|r| r.get(input.default_sym()))
                .is_some_and(|&t| t != rest)
        {
            violations.push(Violation::RestStateNotFixed {
                rest_state: states[rest].clone(),
                target: states[delta[rest][input.default_sym()]].clone(),
            });
        }
        if !violations.is_empty() {
            return Err(Error::InvalidMachine(violations));
        }
        let derived_default = lambda[rest][input.default_sym()];
        let output = Alphabet::new(outputs.clone(), &outputs[derived_default])?;
        Ok(MealyMachine { input, output, states, rest, delta, lambda })
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn rest_state(&self) -> StateId {
        self.rest
    }

    pub fn step(&self, input: SymId, state: StateId) -> StateId {
        self.delta[state][input]
    }

    pub fn emit(&self, input: SymId, state: StateId) -> SymId {
        self.lambda[state][input]
    }

    /// Re-checks the invariants on an already-built machine.
    pub fn validate(&self) -> Vec<Violation> {
        validate_parts(&self.to_parts())
    }

    pub fn to_parts(&self) -> MachineParts {
        MachineParts {
            inputs: self.input.symbols().to_vec(),
            outputs: self.output.symbols().to_vec(),
            default_input: self.input.label(self.input.default_sym()).to_string(),
            default_output_check: None,
            states: self.states.clone(),
            rest_state: self.states[self.rest].clone(),
            transitions: self
                .states
                .iter()
                .enumerate()
                .map(|(si, s)| {
                    (
                        s.clone(),
                        self.input
                            .symbols()
                            .iter()
                            .enumerate()
                            .map(|(ai, a)| (a.clone(), self.states[self.delta[si][ai]].clone()))
                            .collect(),
                    )
                })
                .collect(),
            emissions: self
                .states
                .iter()
                .enumerate()
                .map(|(si, s)| {
                    (
                        s.clone(),
                        self.input
                            .symbols()
                            .iter()
                            .enumerate()
                            .map(|(ai, a)| {
                                (a.clone(), self.output.label(self.lambda[si][ai]).to_string())
                            })
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    /// Runs the state equations over `[from, to]` and returns the output
    /// restricted to that window.
    pub fn evaluate(&self, u: &Sequence, from: i64, to: i64) -> Result<Sequence> {
        if *u.alphabet() != self.input {
            return Err(Error::AlphabetMismatch("input sequence is over a different alphabet".into()));
        }
        if from > to {
            return Err(Error::InvalidWindow(from, to));
        }
        // the state is rest everywhere before the input's support
        let k0 = match u.support() {
            Some((s, _)) => s.min(from),
            None => from,
        };
        let mut x = self.rest;
        let mut out = Vec::with_capacity((to - from + 1) as usize);
        for k in k0..=to {
            let a = u.get(k);
            if k >= from {
                out.push(self.emit(a, x));
            }
            x = self.step(a, x);
        }
        Sequence::from_window(&self.output, from, out)
    }
}

/// A causal time-invariant system given by a fixed-length input window and a
/// total lookup table: `y(n) = table(u(n-m+1), ..., u(n))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteWindowSystem {
    input: Alphabet,
    output: Alphabet,
    window: usize,
    /// Indexed by the window word in mixed radix, oldest symbol most
    /// significant.
    table: Vec<SymId>,
}

impl FiniteWindowSystem {
    pub fn new(
        input: Alphabet,
        outputs: Vec<String>,
        window: usize,
        table: &BTreeMap<Vec<String>, String>,
    ) -> Result<Self> {
        if window == 0 {
            return Err(Error::Parse("window length must be at least 1".into()));
        }
        let size = input.len().checked_pow(window as u32).ok_or_else(|| {
            Error::Capacity(format!("|U|^{window} overflows"))
        })?;
        let out_alpha_probe = Alphabet::new(outputs.clone(), &outputs[0])?;
        let mut entries: Vec<Option<SymId>> = vec![None; size];
        for (word, y) in table {
            if word.len() != window {
                return Err(Error::Parse(format!(
                    "table word {word:?} has length {} but window is {window}",
                    word.len()
                )));
            }
            let mut idx = 0usize;
            for sym in word {
                idx = idx * input.len() + input.id_of_checked(sym)?;
            }
            entries[idx] = Some(out_alpha_probe.id_of_checked(y)?);
        }
        let mut table_vec = Vec::with_capacity(size);
        for (idx, e) in entries.iter().enumerate() {
            match e {
                Some(y) => table_vec.push(*y),
                None => {
                    return Err(Error::InvalidMachine(vec![Violation::MissingEmission {
                        state: format!("window word {:?}", word_of_index(&input, window, idx)),
                        input: "<table>".into(),
                    }]))
                }
            }
        }
        // output default is table(o, ..., o), derived
        let mut o_idx = 0usize;
        for _ in 0..window {
            o_idx = o_idx * input.len() + input.default_sym();
        }
        let output = Alphabet::new(outputs.clone(), &outputs[table_vec[o_idx]])?;
        Ok(FiniteWindowSystem { input, output, window, table: table_vec })
    }

    /// Builds the table from a closure over window words (ids, oldest first).
    pub fn from_fn(
        input: Alphabet,
        outputs: Vec<String>,
        window: usize,
        f: impl Fn(&[SymId]) -> SymId,
    ) -> Result<Self> {
        if window == 0 {
            return Err(Error::Parse("window length must be at least 1".into()));
        }
        let size = input
            .len()
            .checked_pow(window as u32)
            .ok_or_else(|| Error::Capacity(format!("|U|^{window} overflows")))?;
        let mut table = Vec::with_capacity(size);
        for idx in 0..size {
            let word = ids_of_index(input.len(), window, idx);
            let y = f(&word);
            if y >= outputs.len() {
                return Err(Error::UnknownSymbol(format!("#{y}")));
            }
            table.push(y);
        }
        let mut o_idx = 0usize;
        for _ in 0..window {
            o_idx = o_idx * input.len() + input.default_sym();
        }
        let output = Alphabet::new(outputs.clone(), &outputs[table[o_idx]])?;
        Ok(FiniteWindowSystem { input, output, window, table })
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn lookup(&self, word: &[SymId]) -> SymId {
        debug_assert_eq!(word.len(), self.window);
        let mut idx = 0usize;
        for &s in word {
            idx = idx * self.input.len() + s;
        }
        self.table[idx]
    }

    /// The table keyed by comma-joined window words, for serialization.
    pub fn to_table_map(&self) -> BTreeMap<String, String> {
        (0..self.table.len())
            .map(|idx| {
                (
                    word_of_index(&self.input, self.window, idx).join(","),
                    self.output.label(self.table[idx]).to_string(),
                )
            })
            .collect()
    }

    /// Direct table evaluation, independent of any machine conversion.
    pub fn evaluate(&self, u: &Sequence, from: i64, to: i64) -> Result<Sequence> {
        if *u.alphabet() != self.input {
            return Err(Error::AlphabetMismatch("input sequence is over a different alphabet".into()));
        }
        if from > to {
            return Err(Error::InvalidWindow(from, to));
        }
        let m = self.window as i64;
        let mut out = Vec::with_capacity((to - from + 1) as usize);
        for n in from..=to {
            let word: Vec<SymId> = (n - m + 1..=n).map(|k| u.get(k)).collect();
            out.push(self.lookup(&word));
        }
        Sequence::from_window(&self.output, from, out)
    }

    /// Unrolls the window into a Mealy machine whose states are the
    /// length-(m-1) input histories.
    pub fn to_mealy(&self) -> Result<MealyMachine> {
        let k = self.input.len();
        let h = self.window - 1;
        let n_states = k.pow(h as u32);
        if n_states > (1 << 16) {
            return Err(Error::Capacity(format!("|U|^{h} = {n_states} states exceed 2^16")));
        }
        let states: Vec<String> = (0..n_states)
            .map(|idx| history_label(&self.input, h, idx))
            .collect();
        let mut rest = 0usize;
        for _ in 0..h {
            rest = rest * k + self.input.default_sym();
        }
        let mut delta = Vec::with_capacity(n_states);
        let mut lambda = Vec::with_capacity(n_states);
        for idx in 0..n_states {
            let hist = ids_of_index(k, h, idx);
            let mut drow = Vec::with_capacity(k);
            let mut lrow = Vec::with_capacity(k);
            for a in 0..k {
                // next history drops the oldest symbol and appends a
                let mut next = 0usize;
                for &s in hist.iter().skip(if h == 0 { 0 } else { 1 }).chain(std::iter::once(&a)) {
                    next = next * k + s;
                }
                let next = if h == 0 { 0 } else { next };
                drow.push(next);
                let mut word = hist.clone();
                word.push(a);
                lrow.push(self.lookup(&word));
            }
            delta.push(drow);
            lambda.push(lrow);
        }
        MealyMachine::new(
            self.input.clone(),
            self.output.symbols().to_vec(),
            states,
            rest,
            delta,
            lambda,
        )
    }
}

fn ids_of_index(radix: usize, len: usize, mut idx: usize) -> Vec<SymId> {
    let mut word = vec![0; len];
    for i in (0..len).rev() {
        word[i] = idx % radix;
        idx /= radix;
    }
    word
}

fn word_of_index(alphabet: &Alphabet, len: usize, idx: usize) -> Vec<String> {
    ids_of_index(alphabet.len(), len, idx)
        .into_iter()
        .map(|s| alphabet.label(s).to_string())
        .collect()
}

fn history_label(alphabet: &Alphabet, len: usize, idx: usize) -> String {
    format!("h[{}]", word_of_index(alphabet, len, idx).join(","))
}

/// A SISO linear system over the prime field Z_p, the finite bridge between
/// exact linear realization and the Nerode engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearModP {
    p: u64,
    dim: usize,
    a: Vec<Vec<u64>>,
    b: Vec<u64>,
    c: Vec<u64>,
    d: u64,
    input: Alphabet,
    output: Alphabet,
}

impl LinearModP {
    pub fn new(a: Vec<Vec<i64>>, b: Vec<i64>, c: Vec<i64>, d: i64, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        let dim = a.len();
        if a.iter().any(|row| row.len() != dim) || b.len() != dim || c.len() != dim {
            return Err(Error::InvalidMatrix(
                "A must be n x n and B, C must have length n".into(),
            ));
        }
        let m = |v: i64| v.rem_euclid(p as i64) as u64;
        let a = a.into_iter().map(|row| row.into_iter().map(m).collect()).collect();
        let b = b.into_iter().map(m).collect();
        let c = c.into_iter().map(m).collect();
        let d = m(d);
        let input = Alphabet::numeric(p as usize)?;
        // output default is C*0 + D*0 = 0
        let output = Alphabet::numeric(p as usize)?;
        Ok(LinearModP { p, dim, a, b, c, d, input, output })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> (&Vec<Vec<u64>>, &[u64], &[u64], u64) {
        (&self.a, &self.b, &self.c, self.d)
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    fn step_vec(&self, x: &[u64], u: u64) -> Vec<u64> {
        (0..self.dim)
            .map(|i| {
                let mut acc = self.b[i] * u;
                acc += self.a[i].iter().zip(x).map(|(a, v)| a * v).sum::<u64>();
                acc % self.p
            })
            .collect()
    }

    fn emit_vec(&self, x: &[u64], u: u64) -> u64 {
        let mut acc = self.d * u;
        acc += self.c.iter().zip(x).map(|(c, v)| c * v).sum::<u64>();
        acc % self.p
    }

    /// Direct state-vector iteration, independent of the machine conversion.
    pub fn evaluate(&self, u: &Sequence, from: i64, to: i64) -> Result<Sequence> {
        if *u.alphabet() != self.input {
            return Err(Error::AlphabetMismatch("input sequence is over a different alphabet".into()));
        }
        if from > to {
            return Err(Error::InvalidWindow(from, to));
        }
        let k0 = match u.support() {
            Some((s, _)) => s.min(from),
            None => from,
        };
        let mut x = vec![0u64; self.dim];
        let mut out = Vec::new();
        for k in k0..=to {
            let a = u.get(k) as u64;
            if k >= from {
                out.push(self.emit_vec(&x, a) as SymId);
            }
            x = self.step_vec(&x, a);
        }
        Sequence::from_window(&self.output, from, out)
    }

    /// Enumerates all p^n state vectors into an explicit Mealy machine.
    ///
    /// Guard: p^n <= 2^16.
    pub fn to_mealy(&self) -> Result<MealyMachine> {
        let n_states = (self.p as usize)
            .checked_pow(self.dim as u32)
            .filter(|&n| n <= 1 << 16)
            .ok_or_else(|| {
                Error::Capacity(format!("p^n = {}^{} exceeds 2^16 states", self.p, self.dim))
            })?;
        let p = self.p as usize;
        let vec_of = |idx: usize| -> Vec<u64> {
            ids_of_index(p, self.dim, idx).into_iter().map(|d| d as u64).collect()
        };
        let idx_of = |x: &[u64]| -> usize {
            x.iter().fold(0usize, |acc, &d| acc * p + d as usize)
        };
        let states: Vec<String> = (0..n_states)
            .map(|idx| {
                format!(
                    "[{}]",
                    vec_of(idx).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        let mut delta = Vec::with_capacity(n_states);
        let mut lambda = Vec::with_capacity(n_states);
        for idx in 0..n_states {
            let x = vec_of(idx);
            let drow = (0..p).map(|a| idx_of(&self.step_vec(&x, a as u64))).collect();
            let lrow = (0..p).map(|a| self.emit_vec(&x, a as u64) as SymId).collect();
            delta.push(drow);
            lambda.push(lrow);
        }
        MealyMachine::new(
            self.input.clone(),
            self.output.symbols().to_vec(),
            states,
            0, // zero vector, fixed under input 0
            delta,
            lambda,
        )
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A causal, time-invariant system of one of the supported decidable
/// classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum System {
    Mealy(MealyMachine),
    Window(FiniteWindowSystem),
    LinearModP(LinearModP),
}

impl System {
    pub fn input_alphabet(&self) -> &Alphabet {
        match self {
            System::Mealy(m) => m.input_alphabet(),
            System::Window(w) => w.input_alphabet(),
            System::LinearModP(l) => l.input_alphabet(),
        }
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        match self {
            System::Mealy(m) => m.output_alphabet(),
            System::Window(w) => w.output_alphabet(),
            System::LinearModP(l) => l.output_alphabet(),
        }
    }

    /// Evaluates `T u` restricted to `[from, to]`.
    ///
    /// Window and linear systems are evaluated directly from their own
    /// semantics, not through the machine conversion.
    pub fn evaluate(&self, u: &Sequence, from: i64, to: i64) -> Result<Sequence> {
        match self {
            System::Mealy(m) => m.evaluate(u, from, to),
            System::Window(w) => w.evaluate(u, from, to),
            System::LinearModP(l) => l.evaluate(u, from, to),
        }
    }

    /// Converts to an explicit Mealy machine.
    pub fn to_mealy(&self) -> Result<MealyMachine> {
        match self {
            System::Mealy(m) => Ok(m.clone()),
            System::Window(w) => w.to_mealy(),
            System::LinearModP(l) => l.to_mealy(),
        }
    }
}

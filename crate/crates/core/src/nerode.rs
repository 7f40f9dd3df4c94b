//! Nerode equivalence and minimal quotient realizations.
//!
//! Two states of a machine are merged exactly when no input continuation
//! distinguishes their future I/O; the classes of that relation, with the
//! induced transition and emission maps, form the minimal realization. The
//! module also computes the controllable subset (states reachable at time 0
//! along some bi-infinite trajectory) and the surjection from any
//! realization's controllable subset onto the quotient states, together with
//! per-pair evidence that the surjection commutes with the dynamics and the
//! output map.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::signal::{Sequence, SymId};
use crate::system::{MealyMachine, StateId, System};

/// Which states of the source machine the quotient is built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// States reachable from the rest state under some finite-support input.
    RestReachable,
    /// The controllable subset: states with a bi-infinite backward extension.
    Controllable,
}

/// Behavioral-equivalence classes over a subset of a machine's states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// State -> class id, total on the covered states; class ids contiguous
    /// from 0.
    pub class_of: BTreeMap<StateId, usize>,
    /// Class id -> member states, each sorted ascending.
    pub classes: Vec<Vec<StateId>>,
}

impl Partition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// The quotient machine together with the projection from the source
/// states it was built over.
#[derive(Debug, Clone)]
pub struct NerodeRealization {
    machine: MealyMachine,
    projection: BTreeMap<StateId, StateId>,
    mode: Mode,
}

/// States reachable from the rest state, in BFS order with inputs taken in
/// alphabet order. The order defines the canonical state numbering.
pub fn reachable_states(m: &MealyMachine) -> Vec<StateId> {
    let mut seen = vec![false; m.state_count()];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen[m.rest_state()] = true;
    queue.push_back(m.rest_state());
    while let Some(s) = queue.pop_front() {
        order.push(s);
        for a in 0..m.input_alphabet().len() {
            let t = m.step(a, s);
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    order
}

/// The controllable subset X_c: states admitting a bi-infinite trajectory
/// with `x(0)` equal to that state.
///
/// In a finite machine such a backward extension exists exactly when the
/// state is forward-reachable from some state lying on a directed cycle of
/// the all-inputs transition relation.
pub fn controllable_subset(m: &MealyMachine) -> BTreeSet<StateId> {
    let n = m.state_count();
    let k = m.input_alphabet().len();
    // cycle states: s reachable from s in at least one step
    let mut on_cycle = Vec::new();
    for s in 0..n {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for a in 0..k {
            let t = m.step(a, s);
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(x) = queue.pop_front() {
            if x == s {
                break;
            }
            for a in 0..k {
                let t = m.step(a, x);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        if seen[s] {
            on_cycle.push(s);
        }
    }
    // forward closure of the cycle states
    let mut in_xc = vec![false; n];
    let mut queue: VecDeque<StateId> = VecDeque::new();
    for s in on_cycle {
        in_xc[s] = true;
        queue.push_back(s);
    }
    while let Some(s) = queue.pop_front() {
        for a in 0..k {
            let t = m.step(a, s);
            if !in_xc[t] {
                in_xc[t] = true;
                queue.push_back(t);
            }
        }
    }
    (0..n).filter(|&s| in_xc[s]).collect()
}

/// Moore-style iterated refinement over `over`, which must be closed under
/// transitions. Initial blocks group states by their emission row; blocks
/// are then split by transition-target blocks until stable.
pub fn partition_refine(m: &MealyMachine, over: &BTreeSet<StateId>) -> Partition {
    let k = m.input_alphabet().len();
    let states: Vec<StateId> = over.iter().copied().collect();

    let mut class_of: HashMap<StateId, usize> = HashMap::new();
    {
        let mut by_row: HashMap<Vec<SymId>, usize> = HashMap::new();
        for &s in &states {
            let row: Vec<SymId> = (0..k).map(|a| m.emit(a, s)).collect();
            let next = by_row.len();
            let id = *by_row.entry(row).or_insert(next);
            class_of.insert(s, id);
        }
    }

    loop {
        let mut by_sig: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next: HashMap<StateId, usize> = HashMap::new();
        for &s in &states {
            let sig = (
                class_of[&s],
                (0..k).map(|a| class_of[&m.step(a, s)]).collect::<Vec<_>>(),
            );
            let fresh = by_sig.len();
            let id = *by_sig.entry(sig).or_insert(fresh);
            next.insert(s, id);
        }
        let stable = by_sig.len() == class_count(&class_of);
        class_of = next;
        if stable {
            break;
        }
    }

    // renumber classes contiguously in order of smallest member
    let mut members: BTreeMap<usize, Vec<StateId>> = BTreeMap::new();
    for &s in &states {
        members.entry(class_of[&s]).or_default().push(s);
    }
    let mut classes: Vec<Vec<StateId>> = members.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&s| (s, i)))
        .collect();
    Partition { class_of, classes }
}

fn class_count(class_of: &HashMap<StateId, usize>) -> usize {
    class_of.values().collect::<BTreeSet<_>>().len()
}

/// Builds the Nerode realization of a system: convert to a machine, restrict
/// to the requested state domain, quotient by behavioral equivalence.
///
/// Quotient states are labeled `q0, q1, ...` numbered by BFS from the
/// quotient rest state with inputs in alphabet order; classes not reachable
/// from rest (possible in controllable mode) follow in order of their
/// smallest source state.
pub fn minimize(sys: &System, mode: Mode) -> Result<NerodeRealization> {
    let m = sys.to_mealy()?;
    let domain: BTreeSet<StateId> = match mode {
        Mode::RestReachable => reachable_states(&m).into_iter().collect(),
        Mode::Controllable => controllable_subset(&m),
    };
    let part = partition_refine(&m, &domain);
    let k = m.input_alphabet().len();
    let rest_class = part.class_of[&m.rest_state()];

    // quotient transition on class representatives (well-defined after
    // refinement)
    let qstep = |a: usize, c: usize| -> usize { part.class_of[&m.step(a, part.classes[c][0])] };

    // canonical numbering: BFS from the rest class, then leftovers
    let n_classes = part.class_count();
    let mut number: Vec<Option<usize>> = vec![None; n_classes];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    number[rest_class] = Some(0);
    order.push(rest_class);
    queue.push_back(rest_class);
    while let Some(c) = queue.pop_front() {
        for a in 0..k {
            let t = qstep(a, c);
            if number[t].is_none() {
                number[t] = Some(order.len());
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    for (c, slot) in number.iter_mut().enumerate() {
        if slot.is_none() {
            *slot = Some(order.len());
            order.push(c);
        }
    }

    let states: Vec<String> = (0..n_classes).map(|i| format!("q{i}")).collect();
    let mut delta = vec![Vec::new(); n_classes];
    let mut lambda = vec![Vec::new(); n_classes];
    for (qi, &c) in order.iter().enumerate() {
        let rep = part.classes[c][0];
        delta[qi] = (0..k).map(|a| number[qstep(a, c)].unwrap()).collect();
        lambda[qi] = (0..k).map(|a| m.emit(a, rep)).collect();
    }
    let machine = MealyMachine::new(
        m.input_alphabet().clone(),
        m.output_alphabet().symbols().to_vec(),
        states,
        0,
        delta,
        lambda,
    )?;
    let projection = domain
        .iter()
        .map(|&s| (s, number[part.class_of[&s]].unwrap()))
        .collect();
    Ok(NerodeRealization { machine, projection, mode })
}

impl NerodeRealization {
    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Source state -> quotient state, over the domain the quotient was
    /// built from.
    pub fn projection(&self) -> &BTreeMap<StateId, StateId> {
        &self.projection
    }

    /// The quotient state reached after consuming `u(k)` for all `k < n`,
    /// starting from rest before the input's support. This is the
    /// equivalence class of `u` at time `n` under the dynamics-consistent
    /// convention: the class depends on the input strictly before `n`.
    pub fn state_at(&self, u: &Sequence, n: i64) -> Result<StateId> {
        if *u.alphabet() != *self.machine.input_alphabet() {
            return Err(Error::AlphabetMismatch(
                "input sequence is over a different alphabet".into(),
            ));
        }
        let mut x = self.machine.rest_state();
        if let Some((s, _)) = u.support() {
            let mut k = s;
            while k < n {
                x = self.machine.step(u.get(k), x);
                k += 1;
            }
        }
        Ok(x)
    }

    /// Whether `u1` and `u2` are Nerode equivalent at time 0: by
    /// observability of the quotient this is exactly equality of the states
    /// they reach.
    pub fn nerode_equivalent(&self, u1: &Sequence, u2: &Sequence) -> Result<bool> {
        Ok(self.state_at(u1, 0)? == self.state_at(u2, 0)?)
    }
}

/// Result of a machine equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceOutcome {
    pub equivalent: bool,
    /// Shortest input word (fed from rest at time 0) on which the outputs
    /// differ at some position before its end; `None` when equivalent.
    pub counterexample: Option<Vec<SymId>>,
}

/// Product-machine bisimulation check from the paired rest states, with a
/// shortest distinguishing word on failure.
pub fn machine_equivalence(m1: &MealyMachine, m2: &MealyMachine) -> Result<EquivalenceOutcome> {
    if m1.input_alphabet() != m2.input_alphabet() {
        return Err(Error::AlphabetMismatch("machines have different input alphabets".into()));
    }
    let k = m1.input_alphabet().len();
    let start = (m1.rest_state(), m2.rest_state());
    let mut parent: HashMap<(StateId, StateId), ((StateId, StateId), SymId)> = HashMap::new();
    let mut seen: BTreeSet<(StateId, StateId)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some((s1, s2)) = queue.pop_front() {
        for a in 0..k {
            let y1 = m1.output_alphabet().label(m1.emit(a, s1));
            let y2 = m2.output_alphabet().label(m2.emit(a, s2));
            if y1 != y2 {
                // reconstruct the path, then append the splitting symbol
                let mut word = vec![a];
                let mut cur = (s1, s2);
                while cur != start {
                    let (prev, sym) = parent[&cur];
                    word.push(sym);
                    cur = prev;
                }
                word.reverse();
                return Ok(EquivalenceOutcome { equivalent: false, counterexample: Some(word) });
            }
            let next = (m1.step(a, s1), m2.step(a, s2));
            if seen.insert(next) {
                parent.insert(next, ((s1, s2), a));
                queue.push_back(next);
            }
        }
    }
    Ok(EquivalenceOutcome { equivalent: true, counterexample: None })
}

/// A single broken square of the commutative diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramViolation {
    pub input: String,
    pub state: String,
}

/// The computed surjection from a realization's controllable subset onto the
/// quotient states, with per-pair commutativity evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMapReport {
    /// Controllable source state label -> quotient state label.
    pub map: BTreeMap<String, String>,
    pub surjective: bool,
    /// Pairs (b, a) with quotient-step(b, map(a)) != map(step(b, a)).
    pub f_violations: Vec<DiagramViolation>,
    /// Pairs (b, a) with quotient-emit(b, map(a)) != emit(b, a).
    pub g_violations: Vec<DiagramViolation>,
}

impl QuotientMapReport {
    pub fn holds(&self) -> bool {
        self.surjective && self.f_violations.is_empty() && self.g_violations.is_empty()
    }
}

/// Constructs the map from `given`'s controllable subset onto the states of
/// `minimal` by joint partition refinement over the disjoint union of the
/// two machines, then checks both squares of the diagram for every pair.
///
/// Precondition: the machines are behaviorally equivalent; the error carries
/// the shortest counterexample otherwise.
pub fn quotient_map(
    given: &MealyMachine,
    minimal: &NerodeRealization,
) -> Result<QuotientMapReport> {
    let qm = minimal.machine();
    let outcome = machine_equivalence(given, qm)?;
    if !outcome.equivalent {
        let word = outcome
            .counterexample
            .unwrap_or_default()
            .into_iter()
            .map(|a| given.input_alphabet().label(a).to_string())
            .collect();
        return Err(Error::NotEquivalent(word));
    }

    let xc = controllable_subset(given);
    let n1 = given.state_count();

    // joint refinement over xc(given) + all quotient states; emissions are
    // compared by label since the output alphabets may differ in order
    let k = given.input_alphabet().len();
    let union_emit = |s: usize, a: usize| -> String {
        if s < n1 {
            given.output_alphabet().label(given.emit(a, s)).to_string()
        } else {
            qm.output_alphabet().label(qm.emit(a, s - n1)).to_string()
        }
    };
    let union_step = |s: usize, a: usize| -> usize {
        if s < n1 {
            given.step(a, s)
        } else {
            n1 + qm.step(a, s - n1)
        }
    };
    let over: Vec<usize> =
        xc.iter().copied().chain((0..qm.state_count()).map(|q| n1 + q)).collect();

    let mut class_of: HashMap<usize, usize> = HashMap::new();
    {
        let mut by_row: HashMap<Vec<String>, usize> = HashMap::new();
        for &s in &over {
            let row: Vec<String> = (0..k).map(|a| union_emit(s, a)).collect();
            let fresh = by_row.len();
            class_of.insert(s, *by_row.entry(row).or_insert(fresh));
        }
    }
    loop {
        let mut by_sig: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next: HashMap<usize, usize> = HashMap::new();
        for &s in &over {
            let sig = (
                class_of[&s],
                (0..k).map(|a| class_of[&union_step(s, a)]).collect::<Vec<_>>(),
            );
            let fresh = by_sig.len();
            next.insert(s, *by_sig.entry(sig).or_insert(fresh));
        }
        let stable = by_sig.len() == class_of.values().collect::<BTreeSet<_>>().len();
        class_of = next;
        if stable {
            break;
        }
    }

    // each controllable state maps to the unique quotient state in its class
    let mut partner: HashMap<usize, StateId> = HashMap::new();
    for q in 0..qm.state_count() {
        partner.insert(class_of[&(n1 + q)], q);
    }
    let mut map_ids: BTreeMap<StateId, StateId> = BTreeMap::new();
    for &a in &xc {
        match partner.get(&class_of[&a]) {
            Some(&q) => {
                map_ids.insert(a, q);
            }
            None => return Err(Error::UnmatchedState(given.states()[a].clone())),
        }
    }

    let mut f_violations = Vec::new();
    let mut g_violations = Vec::new();
    for (&a, &qa) in &map_ids {
        for b in 0..k {
            let input = given.input_alphabet().label(b).to_string();
            let state = given.states()[a].clone();
            // X_c is forward-closed, so step(b, a) is in the map
            let mapped_step = map_ids[&given.step(b, a)];
            if qm.step(b, qa) != mapped_step {
                f_violations.push(DiagramViolation { input: input.clone(), state: state.clone() });
            }
            let y_given = given.output_alphabet().label(given.emit(b, a));
            let y_quot = qm.output_alphabet().label(qm.emit(b, qa));
            if y_given != y_quot {
                g_violations.push(DiagramViolation { input, state });
            }
        }
    }

    let hit: BTreeSet<StateId> = map_ids.values().copied().collect();
    let surjective = hit.len() == qm.state_count();

    let map = map_ids
        .into_iter()
        .map(|(a, q)| (given.states()[a].clone(), qm.states()[q].clone()))
        .collect();
    Ok(QuotientMapReport { map, surjective, f_violations, g_violations })
}

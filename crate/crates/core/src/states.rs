//! Two-valued measures on a logic: exhaustive enumeration, classification,
//! partition-logic extraction, and convex mixing.
//!
//! A two-valued measure assigns 0/1 to every atom so that each context
//! carries exactly one 1 (per-context additivity). All arithmetic in this
//! module is exact.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::logic::Logic;

/// 0/1 assignment per atom, exactly one 1 per context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwoValuedMeasure {
    /// Indexed by the logic's atom order.
    pub values: Vec<bool>,
}

impl TwoValuedMeasure {
    pub fn value(&self, atom_id: usize) -> bool {
        self.values[atom_id]
    }

    /// Exactly one atom valued 1 in every context.
    pub fn is_admissible(&self, logic: &Logic) -> bool {
        logic.contexts().iter().all(|c| {
            c.atoms.iter().filter(|&&a| self.values[a]).count() == 1
        })
    }

    pub fn render(&self) -> String {
        self.values.iter().map(|&v| if v { '1' } else { '0' }).collect()
    }
}

/// The complete, lexicographically sorted set of two-valued measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSet {
    pub atom_names: Vec<String>,
    pub measures: Vec<TwoValuedMeasure>,
}

impl StateSet {
    pub fn len(&self) -> usize {
        self.measures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measures.is_empty()
    }

    /// One '0'/'1' line per measure, atoms in logic order, sorted.
    pub fn render_lines(&self) -> Vec<String> {
        self.measures.iter().map(|m| m.render()).collect()
    }

    /// Measures as rational vectors (the polytope vertices).
    pub fn vertices(&self) -> Vec<Vec<BigRational>> {
        self.measures
            .iter()
            .map(|m| {
                m.values
                    .iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v as u8)))
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateError {
    /// Premise atom never takes value 1; the implication is vacuous.
    VacuousPremise { atom: String },
    /// Some atom is never valued 1, so its partition cell would be empty.
    NonUnital { atom: String },
    NoStates,
    WeightCount { expected: usize, got: usize },
    NegativeWeight { index: usize },
    WeightSum,
    ValueOutOfRange { atom: String },
    MissingAtom { atom: String },
}

impl fmt::Display for StateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateError::VacuousPremise { atom } => {
                write!(f, "premise {atom} never takes value 1 (vacuous implication)")
            }
            StateError::NonUnital { atom } => {
                write!(f, "state set is not unital: atom {atom} is never valued 1")
            }
            StateError::NoStates => write!(f, "state set is empty"),
            StateError::WeightCount { expected, got } => {
                write!(f, "expected {expected} weights, got {got}")
            }
            StateError::NegativeWeight { index } => write!(f, "weight {} is negative", index + 1),
            StateError::WeightSum => write!(f, "weights do not sum to 1"),
            StateError::ValueOutOfRange { atom } => {
                write!(f, "value for atom {atom} is outside [0, 1]")
            }
            StateError::MissingAtom { atom } => write!(f, "no value for atom {atom}"),
        }
    }
}

impl core::error::Error for StateError {}

struct Enumerator<'a> {
    logic: &'a Logic,
    atom_contexts: Vec<Vec<usize>>,
    value: Vec<i8>, // -1 unassigned
    has_one: Vec<bool>,
    unassigned: Vec<usize>,
    out: BTreeSet<Vec<bool>>,
}

impl Enumerator<'_> {
    fn assign(&mut self, atom: usize, v: bool, trail: &mut Vec<usize>) -> bool {
        if self.value[atom] >= 0 {
            return self.value[atom] == v as i8;
        }
        self.value[atom] = v as i8;
        trail.push(atom);
        for &c in &self.atom_contexts[atom] {
            self.unassigned[c] -= 1;
            if v {
                if self.has_one[c] {
                    return false;
                }
                self.has_one[c] = true;
            } else if !self.has_one[c] && self.unassigned[c] == 0 {
                return false;
            }
        }
        if v {
            // All other atoms of the covered contexts are forced to 0.
            let ctxs = self.atom_contexts[atom].clone();
            for c in ctxs {
                let peers = self.logic.contexts()[c].atoms.clone();
                for b in peers {
                    if b != atom && !self.assign(b, false, trail) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, trail: &mut Vec<usize>, mark: usize) {
        while trail.len() > mark {
            let atom = trail.pop().unwrap();
            let was_one = self.value[atom] == 1;
            self.value[atom] = -1;
            for &c in &self.atom_contexts[atom] {
                self.unassigned[c] += 1;
                if was_one {
                    self.has_one[c] = false;
                }
            }
        }
    }

    fn solve(&mut self, trail: &mut Vec<usize>) {
        // Fail-first: branch on the open context with the fewest choices.
        let mut best: Option<(usize, usize)> = None;
        for (c, ctx) in self.logic.contexts().iter().enumerate() {
            if self.has_one[c] {
                continue;
            }
            let free = ctx.atoms.iter().filter(|&&a| self.value[a] < 0).count();
            if best.map_or(true, |(bf, _)| free < bf) {
                best = Some((free, c));
            }
        }
        let Some((_, c)) = best else {
            // Every context carries a 1; the assignment is total.
            let measure: Vec<bool> = self.value.iter().map(|&v| v == 1).collect();
            self.out.insert(measure);
            return;
        };
        let candidates: Vec<usize> = self.logic.contexts()[c]
            .atoms
            .iter()
            .copied()
            .filter(|&a| self.value[a] < 0)
            .collect();
        for a in candidates {
            let mark = trail.len();
            if self.assign(a, true, trail) {
                self.solve(trail);
            }
            self.undo(trail, mark);
        }
    }
}

/// The complete set of admissible two-valued measures, in lexicographic
/// order of the atom-value vector. An empty result is a valid outcome.
pub fn enumerate(logic: &Logic) -> StateSet {
    let n = logic.atom_count();
    let atom_contexts: Vec<Vec<usize>> = (0..n).map(|a| logic.contexts_of(a)).collect();
    let mut e = Enumerator {
        logic,
        atom_contexts,
        value: vec![-1; n],
        has_one: vec![false; logic.context_count()],
        unassigned: logic.contexts().iter().map(|c| c.atoms.len()).collect(),
        out: BTreeSet::new(),
    };
    let mut trail = Vec::new();
    e.solve(&mut trail);
    let measures = e.out.into_iter().map(|values| TwoValuedMeasure { values }).collect();
    StateSet { atom_names: logic.atoms().to_vec(), measures }
}

/// Structural flags of a state set, with first witnesses for failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub has_states: bool,
    /// Every atom is valued 1 by some measure.
    pub unital: bool,
    pub non_unital_witness: Option<String>,
    /// Every atom pair is distinguished by some measure.
    pub separating: bool,
    pub non_separating_witness: Option<(String, String)>,
}

pub fn classify(logic: &Logic, states: &StateSet) -> Classification {
    let n = logic.atom_count();
    let mut non_unital = None;
    for a in 0..n {
        if !states.measures.iter().any(|m| m.values[a]) {
            non_unital = Some(logic.atom_name(a).to_string());
            break;
        }
    }
    let mut non_separating = None;
    'outer: for a in 0..n {
        for b in a + 1..n {
            if !states.measures.iter().any(|m| m.values[a] != m.values[b]) {
                non_separating =
                    Some((logic.atom_name(a).to_string(), logic.atom_name(b).to_string()));
                break 'outer;
            }
        }
    }
    Classification {
        has_states: !states.is_empty(),
        unital: non_unital.is_none(),
        non_unital_witness: non_unital,
        separating: non_separating.is_none(),
        non_separating_witness: non_separating,
    }
}

/// True iff every measure with v(premise)=1 has v(consequent)=0. A premise
/// that is never 1 is an error, not a vacuous truth.
pub fn implication_check(
    states: &StateSet,
    premise: usize,
    consequent: usize,
) -> Result<bool, StateError> {
    if states.is_empty() {
        return Err(StateError::NoStates);
    }
    let with_premise: Vec<&TwoValuedMeasure> =
        states.measures.iter().filter(|m| m.values[premise]).collect();
    if with_premise.is_empty() {
        return Err(StateError::VacuousPremise { atom: states.atom_names[premise].clone() });
    }
    Ok(with_premise.iter().all(|m| !m.values[consequent]))
}

/// Per context, the list of measure-index sets (1-based), one per atom.
/// Within each context the sets partition {1..m}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionLogic {
    pub measure_count: usize,
    /// One entry per context: (context name, per-atom (atom name, index set)).
    pub contexts: Vec<(String, Vec<(String, Vec<usize>)>)>,
}

impl PartitionLogic {
    /// `{{1,2,3},{7,8},{4,5,6}}` style rendering for one context.
    pub fn render_context(&self, idx: usize) -> String {
        let cells: Vec<String> = self.contexts[idx]
            .1
            .iter()
            .map(|(_, set)| {
                let items: Vec<String> = set.iter().map(|i| i.to_string()).collect();
                let mut s = String::from("{");
                s.push_str(&items.join(","));
                s.push('}');
                s
            })
            .collect();
        let mut out = String::from("{");
        out.push_str(&cells.join(","));
        out.push('}');
        out
    }
}

/// Extract the partition logic: atom -> set of indices of measures valuing
/// it 1. Requires a unital state set, otherwise some cell is empty.
pub fn partition_logic(logic: &Logic, states: &StateSet) -> Result<PartitionLogic, StateError> {
    if states.is_empty() {
        return Err(StateError::NoStates);
    }
    let m = states.len();
    let index_set = |a: usize| -> Vec<usize> {
        (0..m).filter(|&k| states.measures[k].values[a]).map(|k| k + 1).collect()
    };
    for a in 0..logic.atom_count() {
        if index_set(a).is_empty() {
            return Err(StateError::NonUnital { atom: logic.atom_name(a).to_string() });
        }
    }
    let mut contexts = Vec::new();
    for c in logic.contexts() {
        let cells: Vec<(String, Vec<usize>)> = c
            .atoms
            .iter()
            .map(|&a| (logic.atom_name(a).to_string(), index_set(a)))
            .collect();
        // Admissibility makes the cells a partition of {1..m}; check it
        // anyway, a violation here is an internal invariant failure.
        let mut seen = BTreeSet::new();
        for (_, cell) in &cells {
            for &k in cell {
                assert!(seen.insert(k), "partition cells overlap in context {}", c.name);
            }
        }
        assert_eq!(seen.len(), m, "partition cells do not cover 1..{m} in context {}", c.name);
        contexts.push((c.name.clone(), cells));
    }
    Ok(PartitionLogic { measure_count: m, contexts })
}

/// For each atom, the sorted list of measure indices in its mixture
/// expression (the same sets as the partition logic, one table).
pub fn symbolic_mix(states: &StateSet) -> Vec<(String, Vec<usize>)> {
    let m = states.len();
    states
        .atom_names
        .iter()
        .enumerate()
        .map(|(a, name)| {
            let set: Vec<usize> =
                (0..m).filter(|&k| states.measures[k].values[a]).map(|k| k + 1).collect();
            (name.clone(), set)
        })
        .collect()
}

/// Exact-rational probability per atom, in logic atom order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityAssignment {
    pub atom_names: Vec<String>,
    pub values: Vec<BigRational>,
}

impl ProbabilityAssignment {
    /// Build from (atom, value) pairs; every logic atom must be covered and
    /// every value must lie in [0, 1].
    pub fn from_pairs(
        logic: &Logic,
        pairs: &[(String, BigRational)],
    ) -> Result<Self, StateError> {
        let mut values = vec![None; logic.atom_count()];
        for (name, v) in pairs {
            let id = logic
                .atom_id(name)
                .map_err(|_| StateError::MissingAtom { atom: name.clone() })?;
            if v.is_negative() || v > &BigRational::one() {
                return Err(StateError::ValueOutOfRange { atom: name.clone() });
            }
            values[id] = Some(v.clone());
        }
        let mut out = Vec::with_capacity(values.len());
        for (i, v) in values.into_iter().enumerate() {
            match v {
                Some(v) => out.push(v),
                None => {
                    return Err(StateError::MissingAtom { atom: logic.atom_name(i).to_string() })
                }
            }
        }
        Ok(ProbabilityAssignment { atom_names: logic.atoms().to_vec(), values: out })
    }

    pub fn value(&self, atom_id: usize) -> &BigRational {
        &self.values[atom_id]
    }

    /// Exact frame-function check: all values in [0,1] and every context
    /// sums to exactly 1.
    pub fn is_frame_function(&self, logic: &Logic) -> bool {
        let in_range = self
            .values
            .iter()
            .all(|v| !v.is_negative() && v <= &BigRational::one());
        in_range
            && logic.contexts().iter().all(|c| {
                let sum: BigRational =
                    c.atoms.iter().map(|&a| self.values[a].clone()).sum();
                sum.is_one()
            })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.values.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// Convex combination f = Σ λ_k v_k of the measures.
pub fn mix(states: &StateSet, weights: &[BigRational]) -> Result<ProbabilityAssignment, StateError> {
    if weights.len() != states.len() {
        return Err(StateError::WeightCount { expected: states.len(), got: weights.len() });
    }
    if let Some(i) = weights.iter().position(|w| w.is_negative()) {
        return Err(StateError::NegativeWeight { index: i });
    }
    let sum: BigRational = weights.iter().cloned().sum();
    if !sum.is_one() {
        return Err(StateError::WeightSum);
    }
    let n = states.atom_names.len();
    let mut values = vec![BigRational::zero(); n];
    for (k, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        for a in 0..n {
            if states.measures[k].values[a] {
                values[a] += w;
            }
        }
    }
    Ok(ProbabilityAssignment { atom_names: states.atom_names.clone(), values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{horizontal_pasting, parse_logic};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn single_context_has_one_measure_per_atom() {
        let l = parse_logic("context C1: a b c").unwrap();
        let s = enumerate(&l);
        assert_eq!(s.len(), 3);
        assert_eq!(s.render_lines(), vec!["001", "010", "100"]);
    }

    #[test]
    fn disjoint_contexts_multiply() {
        // Independent oracle: brute force over all 2^4 assignments.
        let l = horizontal_pasting(2, 2);
        let brute = brute_force(&l);
        assert_eq!(brute.len(), 4);
        assert_eq!(enumerate(&l).render_lines(), brute);
    }

    #[test]
    fn triangle_of_two_atom_contexts_has_no_states() {
        let l = parse_logic("context C1: a b\ncontext C2: b c\ncontext C3: c a").unwrap();
        assert!(enumerate(&l).is_empty());
    }

    #[test]
    fn implication_within_context() {
        let l = parse_logic("context C1: a b c").unwrap();
        let s = enumerate(&l);
        assert_eq!(implication_check(&s, 0, 1), Ok(true));
    }

    #[test]
    fn vacuous_premise_is_an_error() {
        // Square of two-atom contexts: opposite corners never separate and
        // every atom does take value 1 somewhere, so build a non-unital case
        // from a sub-logic instead: single context, ask about an atom that is
        // 1 only in one measure; filter it out manually.
        let l = parse_logic("context C1: a b").unwrap();
        let mut s = enumerate(&l);
        s.measures.retain(|m| !m.values[0]);
        assert_eq!(
            implication_check(&s, 0, 1),
            Err(StateError::VacuousPremise { atom: "a".into() })
        );
    }

    #[test]
    fn classify_square() {
        let l = parse_logic(
            "context B: bl br\ncontext R: br tr\ncontext T: tl tr\ncontext L: bl tl",
        )
        .unwrap();
        let s = enumerate(&l);
        assert_eq!(s.len(), 2);
        let c = classify(&l, &s);
        assert!(c.has_states);
        assert!(c.unital);
        assert!(!c.separating);
        // Opposite corners cannot be separated.
        assert_eq!(c.non_separating_witness, Some(("bl".into(), "tr".into())));
    }

    #[test]
    fn partition_of_single_two_atom_context() {
        let l = parse_logic("context C1: a b").unwrap();
        let s = enumerate(&l);
        let p = partition_logic(&l, &s).unwrap();
        assert_eq!(p.render_context(0), "{{2},{1}}");
    }

    #[test]
    fn partition_requires_unital() {
        let l = parse_logic(
            "context B: bl b br\ncontext R: br r tr\ncontext T: tl t tr\ncontext L: bl lm tl",
        )
        .unwrap();
        let s = enumerate(&l);
        // 7 measures; all atoms hit. Drop every measure valuing `b` to force
        // a non-unital set.
        let mut s2 = s.clone();
        let b = l.atom_id("b").unwrap();
        s2.measures.retain(|m| !m.values[b]);
        assert_eq!(
            partition_logic(&l, &s2),
            Err(StateError::NonUnital { atom: "b".into() })
        );
    }

    #[test]
    fn mix_degenerate_indicator_recovers_measure() {
        let l = parse_logic("context C1: a b c").unwrap();
        let s = enumerate(&l);
        let mut w = vec![rat(0, 1); 3];
        w[1] = rat(1, 1);
        let f = mix(&s, &w).unwrap();
        let expected: Vec<BigRational> =
            s.measures[1].values.iter().map(|&v| rat(v as i64, 1)).collect();
        assert_eq!(f.values, expected);
        assert!(f.is_frame_function(&l));
    }

    #[test]
    fn mix_rejects_bad_weights() {
        let l = parse_logic("context C1: a b").unwrap();
        let s = enumerate(&l);
        assert_eq!(
            mix(&s, &[rat(1, 2)]),
            Err(StateError::WeightCount { expected: 2, got: 1 })
        );
        assert_eq!(
            mix(&s, &[rat(-1, 2), rat(3, 2)]),
            Err(StateError::NegativeWeight { index: 0 })
        );
        assert_eq!(mix(&s, &[rat(1, 2), rat(1, 4)]), Err(StateError::WeightSum));
    }

    #[test]
    fn symbolic_mix_singletons_on_single_context() {
        let l = parse_logic("context C1: a b").unwrap();
        let s = enumerate(&l);
        let table = symbolic_mix(&s);
        assert_eq!(table, vec![("a".into(), vec![2]), ("b".into(), vec![1])]);
    }

    /// Exhaustive oracle, independent of the backtracking search.
    pub fn brute_force(logic: &Logic) -> Vec<String> {
        let n = logic.atom_count();
        assert!(n <= 20);
        let mut out = Vec::new();
        for mask in 0u32..1 << n {
            let values: Vec<bool> = (0..n).map(|a| mask >> a & 1 == 1).collect();
            let m = TwoValuedMeasure { values };
            if m.is_admissible(logic) {
                out.push(m.render());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumerate_matches_brute_force_on_small_logics() {
        for text in [
            "context C1: a b c",
            "context C1: a b c\ncontext C2: c d e",
            "context C1: a b\ncontext C2: b c\ncontext C3: c a",
            "context B: bl b br\ncontext R: br r tr\ncontext T: tl t tr\ncontext L: bl lm tl",
        ] {
            let l = parse_logic(text).unwrap();
            assert_eq!(enumerate(&l).render_lines(), brute_force(&l), "logic: {text}");
        }
    }
}

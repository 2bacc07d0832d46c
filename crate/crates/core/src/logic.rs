//! Orthogonality diagrams: named atoms pasted together along shared atoms
//! into measurement contexts.
//!
//! A [`Logic`] is nothing more than an ordered list of atoms and an ordered
//! list of contexts (atom subsets of size >= 2). Two atoms are orthogonal iff
//! they share a context; no lattice machinery is built on top of this.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A single context: a named, ordered subset of the logic's atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub name: String,
    /// Indices into [`Logic::atoms`], in declaration order.
    pub atoms: Vec<usize>,
}

/// An orthogonality diagram: atoms plus contexts.
///
/// Atom order is first-appearance order, context order is input order, so
/// every downstream computation is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Logic {
    atoms: Vec<String>,
    contexts: Vec<Context>,
    index: BTreeMap<String, usize>,
}

/// Construction / parse errors, with 1-based line numbers where applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogicError {
    DuplicateAtomInContext { line: usize, context: String, atom: String },
    DuplicateContext { line: usize, context: String },
    ContextTooSmall { line: usize, context: String, size: usize },
    BadAtomName { line: usize, token: String },
    UnknownSyntax { line: usize, content: String },
    UnknownAtom { atom: String },
    EmptyLogic,
}

impl fmt::Display for LogicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicError::DuplicateAtomInContext { line, context, atom } => {
                write!(f, "line {line}: context {context} lists atom {atom} twice")
            }
            LogicError::DuplicateContext { line, context } => {
                write!(f, "line {line}: context {context} repeats an earlier atom set")
            }
            LogicError::ContextTooSmall { line, context, size } => {
                write!(f, "line {line}: context {context} has {size} atom(s), need >= 2")
            }
            LogicError::BadAtomName { line, token } => {
                write!(f, "line {line}: bad atom name {token:?}")
            }
            LogicError::UnknownSyntax { line, content } => {
                write!(f, "line {line}: unknown syntax: {content}")
            }
            LogicError::UnknownAtom { atom } => write!(f, "unknown atom {atom}"),
            LogicError::EmptyLogic => write!(f, "logic has no contexts"),
        }
    }
}

impl core::error::Error for LogicError {}

impl Logic {
    /// Build a logic from (context name, atom names) pairs. Atoms are
    /// registered in first-appearance order.
    pub fn new<S: AsRef<str>>(contexts: &[(S, Vec<S>)]) -> Result<Self, LogicError> {
        let mut logic = Logic { atoms: Vec::new(), contexts: Vec::new(), index: BTreeMap::new() };
        for (i, (name, atoms)) in contexts.iter().enumerate() {
            let atoms: Vec<&str> = atoms.iter().map(|a| a.as_ref()).collect();
            logic.push_context(i + 1, name.as_ref(), &atoms)?;
        }
        if logic.contexts.is_empty() {
            return Err(LogicError::EmptyLogic);
        }
        Ok(logic)
    }

    fn push_context(&mut self, line: usize, name: &str, atoms: &[&str]) -> Result<(), LogicError> {
        if atoms.len() < 2 {
            return Err(LogicError::ContextTooSmall {
                line,
                context: name.to_string(),
                size: atoms.len(),
            });
        }
        let mut ids = Vec::with_capacity(atoms.len());
        for atom in atoms {
            if !is_valid_atom_name(atom) {
                return Err(LogicError::BadAtomName { line, token: atom.to_string() });
            }
            let id = *self.index.entry(atom.to_string()).or_insert_with(|| {
                self.atoms.push(atom.to_string());
                self.atoms.len() - 1
            });
            if ids.contains(&id) {
                return Err(LogicError::DuplicateAtomInContext {
                    line,
                    context: name.to_string(),
                    atom: atom.to_string(),
                });
            }
            ids.push(id);
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        for prev in &self.contexts {
            let mut prev_sorted = prev.atoms.clone();
            prev_sorted.sort_unstable();
            if prev_sorted == sorted {
                return Err(LogicError::DuplicateContext { line, context: name.to_string() });
            }
        }
        self.contexts.push(Context { name: name.to_string(), atoms: ids });
        Ok(())
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_name(&self, id: usize) -> &str {
        &self.atoms[id]
    }

    pub fn atom_id(&self, name: &str) -> Result<usize, LogicError> {
        self.index.get(name).copied().ok_or_else(|| LogicError::UnknownAtom { atom: name.to_string() })
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn context_count(&self) -> usize {
        self.contexts.len()
    }

    /// Contexts containing the given atom, in context order.
    pub fn contexts_of(&self, atom_id: usize) -> Vec<usize> {
        self.contexts
            .iter()
            .enumerate()
            .filter(|(_, c)| c.atoms.contains(&atom_id))
            .map(|(i, _)| i)
            .collect()
    }

    /// Two atoms are orthogonal iff some context contains both.
    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        a != b && self.contexts.iter().any(|c| c.atoms.contains(&a) && c.atoms.contains(&b))
    }

    /// Canonical text form; `parse` of the output reproduces the logic.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for c in &self.contexts {
            out.push_str("context ");
            out.push_str(&c.name);
            out.push(':');
            for &a in &c.atoms {
                out.push(' ');
                out.push_str(&self.atoms[a]);
            }
            out.push('\n');
        }
        out
    }
}

fn is_valid_atom_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse the line-oriented logic format: `#` comments, blank lines, and
/// `context <NAME>: <atom> <atom> ...` definitions.
pub fn parse_logic(text: &str) -> Result<Logic, LogicError> {
    let mut logic = Logic { atoms: Vec::new(), contexts: Vec::new(), index: BTreeMap::new() };
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let rest = content.strip_prefix("context ").ok_or_else(|| LogicError::UnknownSyntax {
            line,
            content: content.to_string(),
        })?;
        let (name, atoms) = rest.split_once(':').ok_or_else(|| LogicError::UnknownSyntax {
            line,
            content: content.to_string(),
        })?;
        let name = name.trim();
        if name.is_empty() || !is_valid_atom_name(name) {
            return Err(LogicError::UnknownSyntax { line, content: content.to_string() });
        }
        let atoms: Vec<&str> = atoms.split_whitespace().collect();
        logic.push_context(line, name, &atoms)?;
    }
    if logic.contexts.is_empty() {
        return Err(LogicError::EmptyLogic);
    }
    Ok(logic)
}

/// `n` pairwise-disjoint contexts of `arity` atoms each (MO_n for arity 2).
/// Atoms are named `a1, a2, ...` across contexts `C1..Cn`.
pub fn horizontal_pasting(n: usize, arity: usize) -> Logic {
    assert!(n >= 1, "need at least one context");
    assert!(arity >= 2, "contexts need at least two atoms");
    let mut contexts = Vec::with_capacity(n);
    let mut atom = 0usize;
    for c in 0..n {
        let names: Vec<String> = (0..arity)
            .map(|_| {
                atom += 1;
                format!("a{atom}")
            })
            .collect();
        contexts.push((format!("C{}", c + 1), names));
    }
    Logic::new(&contexts).expect("disjoint fresh contexts are always valid")
}

/// A loop of order n: a cyclic sequence of n distinct contexts in which
/// consecutive contexts share exactly one atom, the n linking atoms are
/// pairwise distinct, and non-consecutive contexts are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopReport {
    pub order: usize,
    /// Context indices along the cycle, starting from the smallest.
    pub contexts: Vec<usize>,
    /// `linking_atoms[i]` is shared by `contexts[i]` and `contexts[i+1]`
    /// (cyclically).
    pub linking_atoms: Vec<usize>,
}

impl LoopReport {
    pub fn describe(&self, logic: &Logic) -> String {
        let ctx: Vec<&str> = self.contexts.iter().map(|&c| logic.contexts()[c].name.as_str()).collect();
        let links: Vec<&str> = self.linking_atoms.iter().map(|&a| logic.atom_name(a)).collect();
        format!("order {}: {} (links {})", self.order, ctx.join(" "), links.join(" "))
    }
}

/// All loops of order 3..=max_order, deduplicated up to rotation and
/// reflection, sorted by (order, context sequence).
pub fn detect_loops(logic: &Logic, max_order: usize) -> Vec<LoopReport> {
    assert!(max_order >= 3, "loops have order >= 3");
    let n = logic.context_count();
    // link[i][j] = the shared atom when |C_i ∩ C_j| is exactly 1.
    let mut link = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let ci = &logic.contexts()[i].atoms;
            let cj = &logic.contexts()[j].atoms;
            let shared: Vec<usize> = ci.iter().copied().filter(|a| cj.contains(a)).collect();
            if shared.len() == 1 {
                link[i][j] = Some(shared[0]);
                link[j][i] = Some(shared[0]);
            }
        }
    }
    let disjoint = |i: usize, j: usize| {
        logic.contexts()[i].atoms.iter().all(|a| !logic.contexts()[j].atoms.contains(a))
    };

    // Depth-first search over paths canonicalized so that the cycle starts
    // at its smallest context index and path[1] < path[last] (reflections).
    struct Search<'a> {
        link: &'a [Vec<Option<usize>>],
        disjoint: &'a dyn Fn(usize, usize) -> bool,
        max_order: usize,
        n: usize,
        found: Vec<LoopReport>,
    }
    impl Search<'_> {
        fn extend(&mut self, path: &mut Vec<usize>, links: &mut Vec<usize>) {
            let last = *path.last().unwrap();
            let first = path[0];
            if path.len() >= 3 {
                if let Some(closing) = self.link[last][first] {
                    let non_consecutive_ok =
                        path[2..path.len() - 1].iter().all(|&q| (self.disjoint)(first, q));
                    if path[1] < last && !links.contains(&closing) && non_consecutive_ok {
                        let mut all_links = links.clone();
                        all_links.push(closing);
                        self.found.push(LoopReport {
                            order: path.len(),
                            contexts: path.clone(),
                            linking_atoms: all_links,
                        });
                    }
                }
            }
            if path.len() == self.max_order {
                return;
            }
            for next in first + 1..self.n {
                if path.contains(&next) {
                    continue;
                }
                let Some(shared) = self.link[last][next] else { continue };
                if links.contains(&shared) {
                    continue;
                }
                // Everything except the immediate predecessor and the first
                // context (which may later become the closing neighbour)
                // must be disjoint from the candidate.
                if !path[1..path.len() - 1].iter().all(|&p| (self.disjoint)(p, next)) {
                    continue;
                }
                path.push(next);
                links.push(shared);
                self.extend(path, links);
                path.pop();
                links.pop();
            }
        }
    }

    let mut search = Search { link: &link, disjoint: &disjoint, max_order, n, found: Vec::new() };
    for start in 0..n {
        let mut path = vec![start];
        let mut links = Vec::new();
        search.extend(&mut path, &mut links);
    }
    let mut found = search.found;
    found.sort_by(|a, b| (a.order, &a.contexts).cmp(&(b.order, &b.contexts)));
    found
}

/// Histogram of context sizes plus a mixed-arity flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextProfile {
    pub histogram: BTreeMap<usize, usize>,
    pub mixed_arity: bool,
}

pub fn context_profile(logic: &Logic) -> ContextProfile {
    let mut histogram = BTreeMap::new();
    for c in logic.contexts() {
        *histogram.entry(c.atoms.len()).or_insert(0) += 1;
    }
    ContextProfile { mixed_arity: histogram.len() >= 2, histogram }
}

/// The three-box oracle check: every classical state of three two-valued
/// boxes contains at least one pair of equal boxes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeckerReport {
    /// All 2^3 box states as strings over {e, f}, with the 1-based index
    /// pairs of equal boxes for each.
    pub states: Vec<(String, Vec<(usize, usize)>)>,
    /// States grouped by number of filled boxes (0..=3).
    pub classes: Vec<Vec<String>>,
    /// True iff every state has at least one equal pair.
    pub every_state_has_pair: bool,
}

pub fn specker_oracle_check() -> SpeckerReport {
    let mut states = Vec::new();
    let mut classes = vec![Vec::new(); 4];
    let mut every = true;
    for bits in 0..8u8 {
        let boxes: Vec<bool> = (0..3).map(|i| bits >> (2 - i) & 1 == 1).collect();
        let name: String = boxes.iter().map(|&b| if b { 'f' } else { 'e' }).collect();
        let mut pairs = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                if boxes[i] == boxes[j] {
                    pairs.push((i + 1, j + 1));
                }
            }
        }
        every &= !pairs.is_empty();
        classes[boxes.iter().filter(|&&b| b).count()].push(name.clone());
        states.push((name, pairs));
    }
    states.sort();
    SpeckerReport { states, classes, every_state_has_pair: every }
}

const DOT_STYLES: [&str; 10] = [
    "solid", "dashed", "dotted", "bold", "solid", "dashed", "dotted", "bold", "solid", "dashed",
];
const DOT_COLORS: [&str; 10] = [
    "black", "blue", "red", "green", "magenta", "cyan", "orange", "brown", "gray", "violet",
];

/// Graphviz text: one node per atom, one distinctly styled path per context.
pub fn to_dot(logic: &Logic) -> String {
    let mut out = String::from("graph logic {\n  node [shape=circle];\n");
    for a in logic.atoms() {
        out.push_str("  ");
        out.push_str(a);
        out.push_str(";\n");
    }
    for (i, c) in logic.contexts().iter().enumerate() {
        let names: Vec<&str> = c.atoms.iter().map(|&a| logic.atom_name(a)).collect();
        out.push_str(&format!(
            "  {} [color={}, style={}]; // context {}\n",
            names.join(" -- "),
            DOT_COLORS[i % DOT_COLORS.len()],
            DOT_STYLES[i % DOT_STYLES.len()],
            c.name
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_context() {
        let l = parse_logic("context C1: a b c").unwrap();
        assert_eq!(l.atoms(), &["a", "b", "c"]);
        assert_eq!(l.context_count(), 1);
    }

    #[test]
    fn parse_rejects_duplicate_atom() {
        let err = parse_logic("context C1: a a b").unwrap_err();
        assert_eq!(
            err,
            LogicError::DuplicateAtomInContext {
                line: 1,
                context: "C1".into(),
                atom: "a".into()
            }
        );
    }

    #[test]
    fn parse_rejects_duplicate_context() {
        let err = parse_logic("context C1: a b\ncontext C2: b a").unwrap_err();
        assert!(matches!(err, LogicError::DuplicateContext { line: 2, .. }));
    }

    #[test]
    fn parse_rejects_small_context() {
        let err = parse_logic("# comment\ncontext C1: a").unwrap_err();
        assert!(matches!(err, LogicError::ContextTooSmall { line: 2, size: 1, .. }));
    }

    #[test]
    fn parse_rejects_garbage() {
        let err = parse_logic("kontext C1: a b").unwrap_err();
        assert!(matches!(err, LogicError::UnknownSyntax { line: 1, .. }));
    }

    #[test]
    fn serialize_round_trips() {
        let text = "context C1: a b c\ncontext C2: c d e\n";
        let l = parse_logic(text).unwrap();
        assert_eq!(l.serialize(), text);
        assert_eq!(parse_logic(&l.serialize()).unwrap(), l);
    }

    #[test]
    fn horizontal_pasting_shape() {
        let mo3 = horizontal_pasting(3, 2);
        assert_eq!(mo3.atom_count(), 6);
        assert_eq!(mo3.context_count(), 3);
        let single = horizontal_pasting(1, 3);
        assert_eq!(single.atom_count(), 3);
        assert_eq!(single.context_count(), 1);
    }

    #[test]
    fn profile_counts_arities() {
        let l = parse_logic("context C1: a b c\ncontext C2: c d\n").unwrap();
        let p = context_profile(&l);
        assert_eq!(p.histogram.get(&3), Some(&1));
        assert_eq!(p.histogram.get(&2), Some(&1));
        assert!(p.mixed_arity);
    }

    #[test]
    fn triangle_has_one_loop_of_order_three() {
        let l = parse_logic("context C1: a b\ncontext C2: b c\ncontext C3: c a\n").unwrap();
        let loops = detect_loops(&l, 5);
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].order, 3);
        assert_eq!(loops[0].contexts, vec![0, 1, 2]);
    }

    #[test]
    fn square_has_one_loop_of_order_four() {
        let l = parse_logic(
            "context B: bl br\ncontext R: br tr\ncontext T: tl tr\ncontext L: bl tl\n",
        )
        .unwrap();
        let loops = detect_loops(&l, 6);
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].order, 4);
    }

    #[test]
    fn specker_classes() {
        let r = specker_oracle_check();
        assert!(r.every_state_has_pair);
        let mut sizes: Vec<usize> = r.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 3, 3]);
        let efe = r.states.iter().find(|(s, _)| s == "efe").unwrap();
        assert_eq!(efe.1, vec![(1, 3)]);
        let eee = r.states.iter().find(|(s, _)| s == "eee").unwrap();
        assert_eq!(eee.1, vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn dot_output_structure() {
        let l = parse_logic("context C1: a b c").unwrap();
        let dot = to_dot(&l);
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert_eq!(dot.lines().filter(|l| l.ends_with(';')).count(), 4); // node decl + 3 atoms
    }
}

//! Finite frames: validation from order data and element-level algebra.
//!
//! A frame is stored as dense integer indices with every relation
//! precomputed into `n × n` tables, so meets, joins and Heyting implication
//! are O(1) lookups. Arbitrary joins and meets fold the binary tables.
//!
//! Validation checks the frame law pairwise: a finite bounded lattice in
//! which `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` holds for all triples satisfies
//! `a ∧ ⋁B = ⋁{a ∧ b : b ∈ B}` for every finite `B` by induction on `|B|`
//! (the empty case is `a ∧ 0 = 0`). [`Frame::check_frame_law_exhaustive`]
//! keeps the literal subset check around as an oracle.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Bound, Error, Result};
use crate::set::{ElemSet, MAX_ELEMENTS};

/// Element index into a [`Frame`].
pub type Elem = usize;

/// Size limits for table construction and for subset enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    /// Largest frame for which tables are built.
    pub table: usize,
    /// Largest frame for which operations enumerate subsets of elements.
    pub subsets: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            table: 24,
            subsets: 16,
        }
    }
}

impl Guards {
    pub fn with_subsets(subsets: usize) -> Self {
        Guards {
            subsets,
            ..Guards::default()
        }
    }
}

/// Order data as read from JSON: `{"elements": [names], "leq": [[i,j],...]}`.
///
/// `leq` may list any generating set of pairs; reflexive and transitive
/// closure is taken during validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFrame {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

impl RawFrame {
    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        RawFrame {
            elements: (0..n).map(|k| k.to_string()).collect(),
            leq: (1..n).map(|k| [k - 1, k]).collect(),
        }
    }

    /// The three-element chain with labels `0 < m < 1`.
    pub fn chain3() -> Self {
        RawFrame {
            elements: vec!["0".into(), "m".into(), "1".into()],
            leq: vec![[0, 1], [1, 2]],
        }
    }

    /// Powerset of a `k`-element set, element index = bitmask.
    pub fn powerset(k: usize) -> Self {
        let n = 1usize << k;
        let elements = (0..n)
            .map(|m| {
                let names: Vec<String> = (0..k)
                    .filter(|b| m >> b & 1 == 1)
                    .map(|b| ((b'a' + b as u8) as char).to_string())
                    .collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        let mut leq = Vec::new();
        for m in 0..n {
            for b in 0..k {
                if m >> b & 1 == 0 {
                    leq.push([m, m | 1 << b]);
                }
            }
        }
        RawFrame { elements, leq }
    }

    /// The four-element Boolean algebra `{0, a, b, 1}`.
    pub fn boolean4() -> Self {
        RawFrame {
            elements: vec!["0".into(), "a".into(), "b".into(), "1".into()],
            leq: vec![[0, 1], [0, 2], [1, 3], [2, 3]],
        }
    }

    /// The diamond `M3`: a non-distributive lattice.
    pub fn diamond() -> Self {
        RawFrame {
            elements: ["0", "x", "y", "z", "1"].map(String::from).to_vec(),
            leq: vec![[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]],
        }
    }

    /// The pentagon `N5`: a non-distributive lattice.
    pub fn pentagon() -> Self {
        RawFrame {
            elements: ["0", "a", "b", "c", "1"].map(String::from).to_vec(),
            leq: vec![[0, 1], [1, 2], [2, 4], [0, 3], [3, 4]],
        }
    }
}

/// A validated finite frame.
#[derive(Debug, Clone)]
pub struct Frame {
    n: usize,
    labels: Vec<String>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    imp: Vec<Elem>,
    /// `imp_into[s] = {x → s : x ∈ L}`.
    imp_into: Vec<ElemSet>,
    bottom: Elem,
    top: Elem,
    guards: Guards,
    pub(crate) sublocales: OnceLock<Arc<[ElemSet]>>,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.up == other.up
    }
}

impl Eq for Frame {}

impl Frame {
    pub fn validate(raw: &RawFrame) -> Result<Frame> {
        Frame::validate_with(raw, Guards::default())
    }

    pub fn validate_with(raw: &RawFrame, guards: Guards) -> Result<Frame> {
        let n = raw.elements.len();
        check_size(n, guards)?;
        let mut up = vec![ElemSet::EMPTY; n];
        for (a, row) in up.iter_mut().enumerate() {
            row.insert(a);
        }
        for &[a, b] in &raw.leq {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, len: n });
                }
            }
            up[a].insert(b);
        }
        Frame::build(raw.elements.clone(), up, guards)
    }

    /// Builds a frame from an order predicate. The predicate is closed
    /// reflexively and transitively before validation.
    pub fn from_order<F>(labels: Vec<String>, guards: Guards, leq: F) -> Result<Frame>
    where
        F: Fn(Elem, Elem) -> bool,
    {
        let n = labels.len();
        check_size(n, guards)?;
        let up = (0..n)
            .map(|a| (0..n).filter(|&b| a == b || leq(a, b)).collect())
            .collect();
        Frame::build(labels, up, guards)
    }

    fn build(labels: Vec<String>, mut up: Vec<ElemSet>, guards: Guards) -> Result<Frame> {
        let n = labels.len();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row = row.union(row_k);
                }
            }
        }
        for a in 0..n {
            for b in up[a].without(a) {
                if up[b].contains(a) {
                    return Err(Error::NotAntisymmetric {
                        a: a.min(b),
                        b: a.max(b),
                    });
                }
            }
        }
        let mut down = vec![ElemSet::EMPTY; n];
        for (a, ups) in up.iter().enumerate() {
            for b in *ups {
                down[b].insert(a);
            }
        }

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = down[a].intersection(down[b]);
                let g = lower
                    .iter()
                    .find(|&g| lower.is_subset(down[g]))
                    .ok_or(Error::NotALattice {
                        a,
                        b,
                        bound: Bound::Meet,
                    })?;
                let upper = up[a].intersection(up[b]);
                let l = upper
                    .iter()
                    .find(|&l| upper.is_subset(up[l]))
                    .ok_or(Error::NotALattice {
                        a,
                        b,
                        bound: Bound::Join,
                    })?;
                meet[a * n + b] = g;
                meet[b * n + a] = g;
                join[a * n + b] = l;
                join[b * n + a] = l;
            }
        }
        let all = ElemSet::full(n);
        let bottom = (0..n).find(|&b| up[b] == all).ok_or(Error::NotALattice {
            a: 0,
            b: 0,
            bound: Bound::Meet,
        })?;
        let top = (0..n).find(|&t| down[t] == all).ok_or(Error::NotALattice {
            a: 0,
            b: 0,
            bound: Bound::Join,
        })?;

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = meet[a * n + join[b * n + c]];
                    let rhs = join[meet[a * n + b] * n + meet[a * n + c]];
                    if lhs != rhs {
                        return Err(Error::NotDistributive { a, b, c });
                    }
                }
            }
        }

        let mut imp = vec![0; n * n];
        let mut imp_into = vec![ElemSet::EMPTY; n];
        for a in 0..n {
            for b in 0..n {
                let r = (0..n)
                    .filter(|&x| down[b].contains(meet[x * n + a]))
                    .fold(bottom, |acc, x| join[acc * n + x]);
                imp[a * n + b] = r;
                imp_into[b].insert(r);
            }
        }

        Ok(Frame {
            n,
            labels,
            up,
            down,
            meet,
            join,
            imp,
            imp_into,
            bottom,
            top,
            guards,
            sublocales: OnceLock::new(),
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn guards(&self) -> Guards {
        self.guards
    }

    /// Every element.
    #[inline]
    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    /// `↑a`
    #[inline]
    pub fn up(&self, a: Elem) -> ElemSet {
        self.up[a]
    }

    /// `↓a`
    #[inline]
    pub fn down(&self, a: Elem) -> ElemSet {
        self.down[a]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b]
    }

    /// `⋀S`, with `⋀∅ = 1`.
    pub fn meet_all(&self, s: ElemSet) -> Elem {
        s.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// `⋁S`, with `⋁∅ = 0`.
    pub fn join_all(&self, s: ElemSet) -> Elem {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Heyting implication `a → b`, the largest `x` with `x ∧ a ≤ b`.
    #[inline]
    pub fn heyting(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a * self.n + b]
    }

    /// `{x → s : x ∈ L}`.
    #[inline]
    pub(crate) fn implications_into(&self, s: Elem) -> ElemSet {
        self.imp_into[s]
    }

    /// `a* = a → 0`.
    #[inline]
    pub fn pseudocomplement(&self, a: Elem) -> Elem {
        self.heyting(a, self.bottom)
    }

    pub fn is_dense_element(&self, a: Elem) -> bool {
        self.pseudocomplement(a) == self.bottom
    }

    pub fn is_complemented_element(&self, a: Elem) -> bool {
        self.join(a, self.pseudocomplement(a)) == self.top
    }

    /// The complement of `a` when it exists. In a distributive lattice it is
    /// unique and equal to `a*`.
    pub fn complement(&self, a: Elem) -> Option<Elem> {
        self.is_complemented_element(a)
            .then(|| self.pseudocomplement(a))
    }

    /// Elements with a complement; a Boolean sublattice.
    pub fn complemented_elements(&self) -> ElemSet {
        (0..self.n)
            .filter(|&a| self.is_complemented_element(a))
            .collect()
    }

    /// Compactness by the literal quantifier: whenever `x ≤ ⋁A`, some finite
    /// `F ⊆ A` has `x ≤ ⋁F`. Every `A` is scanned; for each, an irredundant
    /// `F` is found by greedy deletion. Always true on finite frames.
    pub fn is_compact_element(&self, x: Elem) -> Result<bool> {
        self.guard_subsets("compactness scan")?;
        for family in self.all().subsets() {
            if !self.leq(x, self.join_all(family)) {
                continue;
            }
            if self.finite_subcover(x, family).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// An irredundant `F ⊆ family` with `x ≤ ⋁F`, if `x ≤ ⋁family`.
    pub fn finite_subcover(&self, x: Elem, family: ElemSet) -> Option<ElemSet> {
        if !self.leq(x, self.join_all(family)) {
            return None;
        }
        let mut f = family;
        for y in family {
            let smaller = f.without(y);
            if self.leq(x, self.join_all(smaller)) {
                f = smaller;
            }
        }
        Some(f)
    }

    /// Prime element: `a ≠ 1` and `b ∧ c ≤ a` implies `b ≤ a` or `c ≤ a`.
    pub fn is_point(&self, a: Elem) -> bool {
        self.point_violation(a).is_none() && a != self.top
    }

    fn point_violation(&self, a: Elem) -> Option<(Elem, Elem)> {
        for b in 0..self.n {
            if self.leq(b, a) {
                continue;
            }
            for c in b..self.n {
                if !self.leq(c, a) && self.leq(self.meet(b, c), a) {
                    return Some((b, c));
                }
            }
        }
        None
    }

    pub fn points(&self) -> ElemSet {
        (0..self.n).filter(|&a| self.is_point(a)).collect()
    }

    /// `x ≺ a` iff `x* ∨ a = 1`.
    pub fn rather_below(&self, x: Elem, a: Elem) -> bool {
        self.join(self.pseudocomplement(x), a) == self.top
    }

    /// `a = ⋁{x : x ≺ a}` for every `a`.
    pub fn is_regular(&self) -> bool {
        self.regularity_violation().is_none()
    }

    pub fn regularity_violation(&self) -> Option<Elem> {
        (0..self.n).find(|&a| {
            let below: ElemSet = (0..self.n).filter(|&x| self.rather_below(x, a)).collect();
            self.join_all(below) != a
        })
    }

    /// Every element is complemented.
    pub fn is_boolean(&self) -> bool {
        (0..self.n).all(|a| self.is_complemented_element(a))
    }

    /// Literal frame law over every subset `B`: `a ∧ ⋁B = ⋁{a ∧ b}`.
    pub fn check_frame_law_exhaustive(&self) -> Result<()> {
        self.guard_subsets("exhaustive frame-law check")?;
        for a in 0..self.n {
            for family in self.all().subsets() {
                let lhs = self.meet(a, self.join_all(family));
                let rhs = family
                    .iter()
                    .fold(self.bottom, |acc, b| self.join(acc, self.meet(a, b)));
                if lhs != rhs {
                    return Err(Error::FrameLawFails {
                        a,
                        family: family.to_vec(),
                    });
                }
            }
        }
        Ok(())
    }

    pub(crate) fn guard_subsets(&self, what: &'static str) -> Result<()> {
        self.guard_subsets_of(self.n, what)
    }

    /// Fails when enumerating the subsets of `count` items would pass the
    /// subset guard.
    pub(crate) fn guard_subsets_of(&self, count: usize, what: &'static str) -> Result<()> {
        if count > self.guards.subsets {
            return Err(Error::SizeGuardExceeded {
                what,
                count,
                guard: self.guards.subsets,
            });
        }
        Ok(())
    }

    /// Why `set` fails to be a subframe, if it does.
    pub fn subframe_violation(&self, set: ElemSet) -> Option<String> {
        if !set.is_subset(self.all()) {
            return Some("contains indices outside the frame".into());
        }
        if !set.contains(self.bottom) {
            return Some("missing bottom".into());
        }
        if !set.contains(self.top) {
            return Some("missing top".into());
        }
        for a in set {
            for b in set {
                if !set.contains(self.meet(a, b)) {
                    return Some(format!("not closed under meet of {a} and {b}"));
                }
                if !set.contains(self.join(a, b)) {
                    return Some(format!("not closed under join of {a} and {b}"));
                }
            }
        }
        None
    }

    pub fn is_subframe(&self, set: ElemSet) -> bool {
        self.subframe_violation(set).is_none()
    }

    /// Smallest subframe containing `set`.
    pub fn subframe_generated_by(&self, set: ElemSet) -> ElemSet {
        let mut cur = set.with(self.bottom).with(self.top);
        loop {
            let mut next = cur;
            for a in cur {
                for b in cur {
                    next.insert(self.meet(a, b));
                    next.insert(self.join(a, b));
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Order data listing only covering pairs.
    pub fn to_raw(&self) -> RawFrame {
        let mut leq = Vec::new();
        for a in 0..self.n {
            for b in self.up[a].without(a) {
                let between = self.up[a]
                    .intersection(self.down[b])
                    .without(a)
                    .without(b);
                if between.is_empty() {
                    leq.push([a, b]);
                }
            }
        }
        RawFrame {
            elements: self.labels.clone(),
            leq,
        }
    }

    /// Evaluates one element predicate together with a re-checkable witness.
    pub fn element_report(&self, subject: Elem, property: ElementProperty) -> Result<ElementPredicateReport> {
        let (verdict, witness) = match property {
            ElementProperty::Dense => {
                let p = self.pseudocomplement(subject);
                (p == self.bottom, vec![p])
            }
            ElementProperty::Complemented => {
                let p = self.pseudocomplement(subject);
                (self.join(subject, p) == self.top, vec![p])
            }
            ElementProperty::Compact => {
                let v = self.is_compact_element(subject)?;
                let cover = self.finite_subcover(subject, self.all()).unwrap_or_default();
                (v, cover.to_vec())
            }
            ElementProperty::Point => match self.point_violation(subject) {
                Some((b, c)) => (false, vec![b, c]),
                None => (subject != self.top, vec![]),
            },
            ElementProperty::RatherBelow { below } => {
                (self.rather_below(below, subject), vec![self.pseudocomplement(below)])
            }
        };
        Ok(ElementPredicateReport {
            subject,
            property,
            verdict,
            witness,
        })
    }
}

fn check_size(n: usize, guards: Guards) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let limit = guards.table.min(MAX_ELEMENTS);
    if n > limit {
        return Err(Error::SizeGuardExceeded {
            what: "frame tables",
            count: n,
            guard: limit,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "tag")]
pub enum ElementProperty {
    Dense,
    Complemented,
    Compact,
    Point,
    /// `below ≺ subject`
    RatherBelow { below: Elem },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementPredicateReport {
    pub subject: Elem,
    pub property: ElementProperty,
    pub verdict: bool,
    pub witness: Vec<Elem>,
}

impl ElementPredicateReport {
    /// Re-derives the verdict from the witness alone.
    pub fn recheck(&self, f: &Frame) -> bool {
        let a = self.subject;
        match (self.property, self.witness.as_slice()) {
            (ElementProperty::Dense, &[p]) => {
                f.meet(a, p) == f.bottom() && (p == f.bottom()) == self.verdict
            }
            (ElementProperty::Complemented, &[p]) => {
                f.meet(a, p) == f.bottom() && (f.join(a, p) == f.top()) == self.verdict
            }
            (ElementProperty::Compact, cover) => {
                let cover: ElemSet = cover.iter().copied().collect();
                self.verdict && f.leq(a, f.join_all(cover))
            }
            (ElementProperty::Point, &[b, c]) => {
                !self.verdict && f.leq(f.meet(b, c), a) && !f.leq(b, a) && !f.leq(c, a)
            }
            (ElementProperty::Point, &[]) => self.verdict == (a != f.top()) && f.point_violation(a).is_none(),
            (ElementProperty::RatherBelow { below }, &[p]) => {
                p == f.pseudocomplement(below) && (f.join(p, a) == f.top()) == self.verdict
            }
            _ => false,
        }
    }
}

//! Bilocales `(L, L₁, L₂)` and the side-indexed calculus on their
//! sublocales.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frame::{Elem, Frame, Guards, RawFrame};
use crate::set::ElemSet;
use crate::sublocale::Sublocale;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::First, Side::Second];

    #[inline]
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Side::First => 1,
            Side::Second => 2,
        }
    }

    pub fn from_index(k: u8) -> Option<Side> {
        match k {
            1 => Some(Side::First),
            2 => Some(Side::Second),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// An ordered pair `(i, j)` of distinct sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    pub i: Side,
}

impl Orientation {
    pub const ONE_TWO: Orientation = Orientation { i: Side::First };
    pub const TWO_ONE: Orientation = Orientation { i: Side::Second };
    pub const BOTH: [Orientation; 2] = [Orientation::ONE_TWO, Orientation::TWO_ONE];

    pub fn new(i: Side) -> Self {
        Orientation { i }
    }

    #[inline]
    pub fn j(self) -> Side {
        self.i.other()
    }

    /// `(j, i)`
    pub fn reversed(self) -> Orientation {
        Orientation { i: self.j() }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.i, self.j())
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
            .collect();
        match cleaned.as_str() {
            "1,2" => Ok(Orientation::ONE_TWO),
            "2,1" => Ok(Orientation::TWO_ONE),
            _ => Err(Error::Invalid(format!(
                "orientation must be 1,2 or 2,1, got {s:?}"
            ))),
        }
    }
}

impl Serialize for Orientation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Orientation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// JSON form: `{"frame": <frame>, "first": [indices], "second": [indices]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBilocale {
    pub frame: RawFrame,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bilocale {
    total: Frame,
    first: ElemSet,
    second: ElemSet,
}

impl Bilocale {
    pub fn new(total: Frame, first: ElemSet, second: ElemSet) -> Result<Bilocale> {
        for (side, part) in [(Side::First, first), (Side::Second, second)] {
            if let Some(reason) = total.subframe_violation(part) {
                return Err(Error::NotASubframe { side, reason });
            }
        }
        let b = Bilocale {
            total,
            first,
            second,
        };
        if let Some(a) = b.covering_violation() {
            return Err(Error::CoveringFails(a));
        }
        Ok(b)
    }

    pub fn from_raw(raw: &RawBilocale) -> Result<Bilocale> {
        Bilocale::from_raw_with(raw, Guards::default())
    }

    pub fn from_raw_with(raw: &RawBilocale, guards: Guards) -> Result<Bilocale> {
        let total = Frame::validate_with(&raw.frame, guards)?;
        let n = total.len();
        let to_set = |xs: &[usize]| -> Result<ElemSet> {
            match xs.iter().find(|&&x| x >= n) {
                Some(&index) => Err(Error::IndexOutOfRange { index, len: n }),
                None => Ok(xs.iter().copied().collect()),
            }
        };
        Bilocale::new(total, to_set(&raw.first)?, to_set(&raw.second)?)
    }

    pub fn to_raw(&self) -> RawBilocale {
        RawBilocale {
            frame: self.total.to_raw(),
            first: self.first.to_vec(),
            second: self.second.to_vec(),
        }
    }

    /// `(L, L, L)`
    pub fn symmetric(total: Frame) -> Bilocale {
        let all = total.all();
        Bilocale {
            total,
            first: all,
            second: all,
        }
    }

    fn covering_violation(&self) -> Option<Elem> {
        let f = &self.total;
        (0..f.len()).find(|&a| {
            let mut acc = f.bottom();
            for a1 in self.first {
                for a2 in self.second {
                    let m = f.meet(a1, a2);
                    if f.leq(m, a) {
                        acc = f.join(acc, m);
                    }
                }
            }
            acc != a
        })
    }

    #[inline]
    pub fn frame(&self) -> &Frame {
        &self.total
    }

    #[inline]
    pub fn side(&self, i: Side) -> ElemSet {
        match i {
            Side::First => self.first,
            Side::Second => self.second,
        }
    }

    fn nonzero(&self, i: Side) -> ElemSet {
        self.side(i).without(self.total.bottom())
    }

    pub fn is_symmetric(&self) -> bool {
        self.first == self.total.all() && self.second == self.total.all()
    }

    /// `c• = ⋁{x ∈ L_j : x ∧ c = 0}` for `c ∈ L_i`.
    pub fn bullet(&self, i: Side, c: Elem) -> Result<Elem> {
        if !self.side(i).contains(c) {
            return Err(Error::NotInSide { side: i, element: c });
        }
        Ok(self.bullet_of(i, c))
    }

    pub(crate) fn bullet_of(&self, i: Side, c: Elem) -> Elem {
        let f = &self.total;
        let disjoint: ElemSet = self
            .side(i.other())
            .iter()
            .filter(|&x| f.meet(x, c) == f.bottom())
            .collect();
        f.join_all(disjoint)
    }

    /// `Int_i(S) = 𝔬(⋁{a ∈ L_i : 𝔬(a) ⊆ S})`.
    pub fn interior(&self, i: Side, s: Sublocale) -> Sublocale {
        let f = &self.total;
        let inside: ElemSet = self
            .side(i)
            .iter()
            .filter(|&a| f.open(a).is_subset(s))
            .collect();
        f.open(f.join_all(inside))
    }

    /// `cl_i(S) = 𝔠(⋁{a ∈ L_i : S ⊆ 𝔠(a)})`.
    pub fn side_closure(&self, i: Side, s: Sublocale) -> Sublocale {
        let f = &self.total;
        let above: ElemSet = self
            .side(i)
            .iter()
            .filter(|&a| s.is_subset(f.closed(a)))
            .collect();
        f.closed(f.join_all(above))
    }

    /// `cl_i(S) = L`. The open-meeting characterisation is evaluated as well
    /// and must agree.
    pub fn is_side_dense(&self, i: Side, s: Sublocale) -> bool {
        let by_closure = self.side_closure(i, s) == self.total.whole();
        let void = self.total.void();
        let by_opens = self
            .nonzero(i)
            .iter()
            .all(|x| self.total.open(x).meet(s) != void);
        assert_eq!(
            by_closure, by_opens,
            "the two characterisations of {i}-density disagree on {s:?}"
        );
        by_closure
    }

    /// `Int_j(cl_i(S)) = O`.
    pub fn is_nowhere_dense(&self, o: Orientation, s: Sublocale) -> bool {
        self.interior(o.j(), self.side_closure(o.i, s)) == self.total.void()
    }

    /// `L ∖ cl_i(S)` is `j`-dense; needs the enumerated sublocale lattice.
    pub fn is_nowhere_dense_via_supplement(&self, o: Orientation, s: Sublocale) -> Result<bool> {
        let sup = self.total.supplement(self.side_closure(o.i, s))?;
        Ok(self.is_side_dense(o.j(), sup))
    }

    /// Meets every non-void `i`-Gδ-sublocale.
    pub fn is_gdelta_dense(&self, i: Side, s: Sublocale) -> bool {
        let void = self.total.void();
        self.total
            .gdelta_closure_family(self.side(i))
            .into_iter()
            .filter(|&g| g != void)
            .all(|g| g.meet(s) != void)
    }

    /// For an element `a`: `a ∧ b ≠ 0` for every nonzero `b ∈ L_k`, i.e.
    /// `𝔬(a)` is `k`-dense.
    pub fn is_element_dense_for(&self, k: Side, a: Elem) -> bool {
        let f = &self.total;
        self.nonzero(k).iter().all(|b| f.meet(a, b) != f.bottom())
    }

    /// `i`-open sublocales `𝔬(x)`, `x ∈ L_i`, as their inducing elements.
    pub fn open_elements(&self, i: Side) -> ElemSet {
        self.side(i)
    }

    pub fn subbilocale(&self, s: Sublocale) -> Result<Subbilocale> {
        Subbilocale::new(self, s)
    }

    /// Every finite frame is compact, so this is `true`; the top element is
    /// still run through the compactness scan when within the subset guard.
    pub fn is_compact(&self) -> bool {
        let f = &self.total;
        f.is_compact_element(f.top()).unwrap_or(true)
    }

    /// `a ≺_i x`: some `c ∈ L_j` has `a ∧ c = 0` and `c ∨ x = 1`.
    pub fn rather_below_in(&self, i: Side, a: Elem, x: Elem) -> bool {
        let f = &self.total;
        self.side(i.other())
            .iter()
            .any(|c| f.meet(a, c) == f.bottom() && f.join(c, x) == f.top())
    }

    pub fn is_regular(&self) -> bool {
        let f = &self.total;
        Side::BOTH.iter().all(|&i| {
            self.side(i).iter().all(|x| {
                let below: ElemSet = self
                    .side(i)
                    .iter()
                    .filter(|&a| self.rather_below_in(i, a, x))
                    .collect();
                f.join_all(below) == x
            })
        })
    }

    /// Prefit as literally quantified: each `x ∈ L_i` has some `y ∈ L_i`
    /// with `y• ∨ x = 1`. `y = 0` always qualifies, so this holds on every
    /// bilocale; see [`Bilocale::is_prefit_nonzero`].
    pub fn is_prefit(&self) -> bool {
        let f = &self.total;
        Side::BOTH.iter().all(|&i| {
            self.side(i).iter().all(|x| {
                self.side(i)
                    .iter()
                    .any(|y| f.join(self.bullet_of(i, y), x) == f.top())
            })
        })
    }

    /// Prefit with both `x` and `y` required nonzero.
    pub fn is_prefit_nonzero(&self) -> bool {
        let f = &self.total;
        Side::BOTH.iter().all(|&i| {
            self.nonzero(i).iter().all(|x| {
                self.nonzero(i)
                    .iter()
                    .any(|y| f.join(self.bullet_of(i, y), x) == f.top())
            })
        })
    }

    /// A nonzero `x ∈ L` with no nonzero `y ∈ L_i` such that `y• ∨ x = 1`.
    pub fn i_prefit_violation(&self, i: Side) -> Option<Elem> {
        let f = &self.total;
        let bullets: Vec<Elem> = self.nonzero(i).iter().map(|y| self.bullet_of(i, y)).collect();
        (0..f.len())
            .filter(|&x| x != f.bottom())
            .find(|&x| !bullets.iter().any(|&b| f.join(b, x) == f.top()))
    }

    pub fn is_i_prefit(&self, i: Side) -> bool {
        self.i_prefit_violation(i).is_none()
    }

    /// Every nonzero `x ∈ L` has nonzero `a ∈ L₁`, `b ∈ L₂` with
    /// `a• ∨ x = 1 = b• ∨ x`.
    pub fn is_strongly_prefit(&self) -> bool {
        let f = &self.total;
        (0..f.len()).filter(|&x| x != f.bottom()).all(|x| {
            let reach = |i: Side| {
                self.nonzero(i)
                    .iter()
                    .any(|y| f.join(self.bullet_of(i, y), x) == f.top())
            };
            reach(Side::First) && reach(Side::Second)
        })
    }

    /// Each `x ∈ L_i` has a complement in `L_j`.
    pub fn is_boolean(&self) -> bool {
        let f = &self.total;
        Side::BOTH.iter().all(|&i| {
            self.side(i).iter().all(|x| {
                self.side(i.other())
                    .iter()
                    .any(|c| f.meet(x, c) == f.bottom() && f.join(x, c) == f.top())
            })
        })
    }

    /// Every `i`-dense sublocale is `j`-open.
    pub fn is_submaximal(&self, o: Orientation) -> Result<bool> {
        let f = &self.total;
        let j_opens: Vec<Sublocale> = self.side(o.j()).iter().map(|x| f.open(x)).collect();
        for s in f.sublocales()?.iter() {
            if self.is_side_dense(o.i, s) && !j_opens.contains(&s) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A sublocale `S` together with the sides `ν_S[L₁]`, `ν_S[L₂]`.
///
/// The carrier is re-indexed into a standalone [`Bilocale`] so every
/// side-indexed operation applies with `i_S` semantics; `localize` and
/// `globalize` translate between the two indexings.
#[derive(Debug, Clone)]
pub struct Subbilocale {
    carrier: Sublocale,
    first: ElemSet,
    second: ElemSet,
    local: Bilocale,
    to_parent: Vec<Elem>,
}

impl Subbilocale {
    fn new(parent: &Bilocale, carrier: Sublocale) -> Result<Subbilocale> {
        let f = parent.frame();
        if !f.is_sublocale(carrier.members()) {
            return Err(Error::NotASublocale(carrier.members().to_vec()));
        }
        let image = |i: Side| -> ElemSet { parent.side(i).iter().map(|a| f.nu(carrier, a)).collect() };
        let (first, second) = (image(Side::First), image(Side::Second));
        let to_parent = carrier.members().to_vec();
        let labels = to_parent.iter().map(|&a| f.label(a).to_string()).collect();
        let local_frame = Frame::from_order(labels, f.guards(), |x, y| f.leq(to_parent[x], to_parent[y]))?;
        let localize = |s: ElemSet| -> ElemSet {
            s.iter()
                .map(|a| to_parent.binary_search(&a).expect("side image lies in the carrier"))
                .collect()
        };
        let local = Bilocale::new(local_frame, localize(first), localize(second))?;
        let sub = Subbilocale {
            carrier,
            first,
            second,
            local,
            to_parent,
        };
        debug_assert!(sub.sides_consistent(parent));
        Ok(sub)
    }

    pub fn carrier(&self) -> Sublocale {
        self.carrier
    }

    /// `ν_S[L_i]` in parent indices.
    pub fn side(&self, i: Side) -> ElemSet {
        match i {
            Side::First => self.first,
            Side::Second => self.second,
        }
    }

    /// The subbilocale as a bilocale in its own right.
    pub fn bilocale(&self) -> &Bilocale {
        &self.local
    }

    /// Recomputes `ν_S[L_i]` and compares with the stored sides.
    pub fn sides_consistent(&self, parent: &Bilocale) -> bool {
        let f = parent.frame();
        Side::BOTH.iter().all(|&i| {
            let recomputed: ElemSet = parent.side(i).iter().map(|a| f.nu(self.carrier, a)).collect();
            recomputed == self.side(i) && self.globalize(self.local.side(i)) == recomputed
        })
    }

    pub fn local_elem(&self, a: Elem) -> Option<Elem> {
        self.to_parent.binary_search(&a).ok()
    }

    pub fn parent_elem(&self, x: Elem) -> Elem {
        self.to_parent[x]
    }

    /// Parent-indexed set to local indices; `None` unless inside the carrier.
    pub fn localize(&self, s: ElemSet) -> Option<ElemSet> {
        s.iter().map(|a| self.local_elem(a)).collect::<Option<Vec<_>>>().map(|v| v.into_iter().collect())
    }

    pub fn globalize(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.to_parent[x]).collect()
    }

    /// A parent sublocale contained in the carrier, as a sublocale of `S`.
    pub fn localize_sublocale(&self, s: Sublocale) -> Option<Sublocale> {
        let local = self.localize(s.members())?;
        debug_assert!(self.local.frame().is_sublocale(local));
        Some(Sublocale::unchecked(local))
    }

    pub fn globalize_sublocale(&self, s: Sublocale) -> Sublocale {
        Sublocale::unchecked(self.globalize(s.members()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::RawFrame;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    fn frame(raw: RawFrame) -> Frame {
        Frame::validate(&raw).unwrap()
    }

    #[test]
    fn orientation_parsing() {
        assert_eq!("1,2".parse::<Orientation>().unwrap(), Orientation::ONE_TWO);
        assert_eq!("(2, 1)".parse::<Orientation>().unwrap(), Orientation::TWO_ONE);
        assert!("1,1".parse::<Orientation>().is_err());
        assert_eq!(Orientation::ONE_TWO.to_string(), "1,2");
        assert_eq!(Orientation::ONE_TWO.reversed(), Orientation::TWO_ONE);
        assert_eq!(serde_json::to_string(&Orientation::TWO_ONE).unwrap(), "\"2,1\"");
    }

    #[test]
    fn symmetric_is_valid() {
        for raw in [RawFrame::chain3(), RawFrame::powerset(2), RawFrame::chain(5)] {
            let f = frame(raw);
            let all = f.all();
            Bilocale::new(f, all, all).unwrap();
        }
    }

    #[test]
    fn trivial_sides_fail_covering() {
        let f = frame(RawFrame::boolean4());
        let err = Bilocale::new(f, set(&[0, 3]), set(&[0, 3])).unwrap_err();
        assert_eq!(err, Error::CoveringFails(1));
    }

    #[test]
    fn non_subframe_side_is_rejected() {
        let f = frame(RawFrame::boolean4());
        let all = f.all();
        let err = Bilocale::new(f, set(&[0, 1]), all).unwrap_err();
        assert!(matches!(err, Error::NotASubframe { side: Side::First, .. }));
    }

    #[test]
    fn bullet_extremes_and_symmetric_case() {
        let f = frame(RawFrame::powerset(2));
        let b = Bilocale::symmetric(f.clone());
        for c in 0..f.len() {
            assert_eq!(b.bullet(Side::First, c).unwrap(), f.pseudocomplement(c));
        }
        assert_eq!(b.bullet(Side::First, f.bottom()).unwrap(), f.top());
        let trivial = Bilocale::new(f.clone(), f.all(), set(&[0, 3])).unwrap();
        assert_eq!(trivial.bullet(Side::First, 1).unwrap(), f.bottom());
        assert!(matches!(
            trivial.bullet(Side::Second, 1),
            Err(Error::NotInSide { .. })
        ));
    }

    #[test]
    fn interior_closure_extremes() {
        let f = frame(RawFrame::chain3());
        let b = Bilocale::symmetric(f.clone());
        for i in Side::BOTH {
            assert_eq!(b.interior(i, f.whole()), f.whole());
            assert_eq!(b.side_closure(i, f.void()), f.void());
            assert!(b.is_side_dense(i, f.whole()));
            assert!(!b.is_side_dense(i, f.void()));
            assert!(b.is_gdelta_dense(i, f.whole()));
            assert!(!b.is_gdelta_dense(i, f.void()));
        }
        assert!(b.is_nowhere_dense(Orientation::ONE_TWO, f.void()));
        assert!(!b.is_nowhere_dense(Orientation::ONE_TWO, f.whole()));
    }

    #[test]
    fn subbilocale_of_whole_is_itself() {
        let f = frame(RawFrame::chain3());
        let b = Bilocale::symmetric(f.clone());
        let s = b.subbilocale(f.whole()).unwrap();
        assert_eq!(s.bilocale(), &b);
        assert!(s.sides_consistent(&b));
    }

    #[test]
    fn subbilocale_of_upper_part_of_chain3() {
        let f = frame(RawFrame::chain3());
        let b = Bilocale::symmetric(f.clone());
        let s = b.subbilocale(f.sublocale(set(&[1, 2])).unwrap()).unwrap();
        // ν(0) = m, ν(m) = m, ν(1) = 1.
        assert_eq!(s.side(Side::First), set(&[1, 2]));
        assert_eq!(s.bilocale().frame().len(), 2);
        assert!(s.sides_consistent(&b));
    }

    #[test]
    fn strongly_prefit_implies_both() {
        let f = frame(RawFrame::powerset(2));
        let b = Bilocale::symmetric(f);
        assert!(b.is_strongly_prefit());
        assert!(b.is_i_prefit(Side::First) && b.is_i_prefit(Side::Second));
        assert!(b.is_prefit() && b.is_prefit_nonzero());
        assert!(b.is_boolean());
        assert!(b.is_regular());
    }

    #[test]
    fn chain3_symmetric_is_not_prefit() {
        let f = frame(RawFrame::chain3());
        let b = Bilocale::symmetric(f);
        // m needs y* ∨ m = 1 with y nonzero; y* = 0 for y ∈ {m, 1}.
        assert_eq!(b.i_prefit_violation(Side::First), Some(1));
        assert!(b.is_prefit());
        assert!(!b.is_prefit_nonzero());
        assert!(!b.is_boolean());
        assert!(!b.is_regular());
    }
}

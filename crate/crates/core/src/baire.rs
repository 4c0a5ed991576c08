//! `(i,j)`-Baireness, `(i,j)`-category, π-bases and pseudocompleteness.
//!
//! Every "countably many" in the definitions ranges over a finite set of
//! candidates here, so each universally quantified family collapses to the
//! single worst family: intersect (or join) everything eligible. Supersets
//! of `i`-dense sublocales are `i`-dense, hence the worst family decides
//! every subfamily at once.

use serde::Serialize;

use crate::bilocale::{Bilocale, Orientation, Side, Subbilocale};
use crate::error::Result;
use crate::frame::Elem;
use crate::set::ElemSet;
use crate::sublocale::Sublocale;

/// Outcome of an `(i,j)`-Baire check, absolute or relative to a carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaireVerdict {
    pub orientation: Orientation,
    pub verdict: bool,
    /// Every `x ∈ L_j` with `𝔬(x)` `i`-dense.
    pub family: Vec<Elem>,
    /// `⋂ 𝔬(x)` over the family, met with the carrier when relative.
    pub intersection: Sublocale,
    /// For a `false` verdict: a nonzero `u ∈ L_i` (parent index of the
    /// `i_S`-side element when relative) whose open misses the intersection.
    pub missed: Option<Elem>,
    pub carrier: Option<Sublocale>,
}

impl BaireVerdict {
    /// Re-derives the verdict from the definitions.
    pub fn recheck(&self, b: &Bilocale) -> bool {
        let f = b.frame();
        let o = self.orientation;
        let expected: Vec<Elem> = b
            .side(o.j())
            .iter()
            .filter(|&x| b.is_side_dense(o.i, f.open(x)))
            .collect();
        if expected != self.family {
            return false;
        }
        let mut inter = f.whole();
        for &x in &self.family {
            inter = inter.meet(f.open(x));
        }
        match self.carrier {
            None => {
                if inter != self.intersection || self.verdict != b.is_side_dense(o.i, inter) {
                    return false;
                }
                match self.missed {
                    None => self.verdict,
                    Some(u) => {
                        !self.verdict
                            && u != f.bottom()
                            && b.side(o.i).contains(u)
                            && f.open(u).meet(inter) == f.void()
                    }
                }
            }
            Some(carrier) => {
                let Ok(sub) = b.subbilocale(carrier) else {
                    return false;
                };
                if carrier.meet(inter) != self.intersection {
                    return false;
                }
                let local = sub.bilocale();
                let Some(localized) = sub.localize_sublocale(self.intersection) else {
                    return false;
                };
                if self.verdict != local.is_side_dense(o.i, localized) {
                    return false;
                }
                match self.missed {
                    None => self.verdict,
                    Some(u) => {
                        let lf = local.frame();
                        !self.verdict
                            && sub.local_elem(u).is_some_and(|lu| {
                                lu != lf.bottom()
                                    && local.side(o.i).contains(lu)
                                    && lf.open(lu).meet(localized) == lf.void()
                            })
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CategoryKind {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CategoryVerdict {
    pub subject: Sublocale,
    pub orientation: Orientation,
    pub kind: CategoryKind,
    /// Elements `a` with `𝔠(a)` `(i,j)`-nowhere dense; for first category
    /// their closed sublocales cover the subject.
    pub cover: Vec<Elem>,
    /// Join of every closed `(i,j)`-nowhere dense sublocale.
    pub envelope: Sublocale,
}

impl CategoryVerdict {
    pub fn recheck(&self, b: &Bilocale) -> bool {
        let f = b.frame();
        let o = self.orientation;
        if self.cover.iter().any(|&a| !b.is_nowhere_dense(o, f.closed(a))) {
            return false;
        }
        let parts: Vec<Sublocale> = self.cover.iter().map(|&a| f.closed(a)).collect();
        let joined = f.sublocale_join(&parts);
        match self.kind {
            CategoryKind::First => self.subject.is_subset(joined),
            CategoryKind::Second => {
                joined == self.envelope
                    && self.cover == b.closed_nowhere_dense(o)
                    && !self.subject.is_subset(joined)
            }
        }
    }

    pub fn is_first(&self) -> bool {
        self.kind == CategoryKind::First
    }
}

/// Pseudocompleteness search strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PseudoMode {
    /// The constant sequence of the maximal π-base.
    #[default]
    Canonical,
    /// Every constant sequence of π-bases, under the subset guard.
    Exhaustive,
}

impl Bilocale {
    /// Elements `x ∈ L_j` whose open sublocale is `i`-dense.
    pub fn dense_open_family(&self, o: Orientation) -> Vec<Elem> {
        let f = self.frame();
        self.side(o.j())
            .iter()
            .filter(|&x| self.is_side_dense(o.i, f.open(x)))
            .collect()
    }

    fn family_intersection(&self, family: &[Elem]) -> Sublocale {
        let f = self.frame();
        let inter = family.iter().fold(f.whole(), |acc, &x| acc.meet(f.open(x)));
        debug_assert_eq!(
            inter,
            f.open(f.meet_all(family.iter().copied().collect())),
            "opens meet as their elements do"
        );
        inter
    }

    pub fn is_ij_baire(&self, o: Orientation) -> BaireVerdict {
        let f = self.frame();
        let family = self.dense_open_family(o);
        let intersection = self.family_intersection(&family);
        let verdict = self.is_side_dense(o.i, intersection);
        let missed = if verdict {
            None
        } else {
            self.side(o.i)
                .iter()
                .find(|&u| u != f.bottom() && f.open(u).meet(intersection) == f.void())
        };
        BaireVerdict {
            orientation: o,
            verdict,
            family,
            intersection,
            missed,
            carrier: None,
        }
    }

    /// `S ∩ ⋂{𝔬(x) : x ∈ L_j, 𝔬(x) i-dense}` is `i_S`-dense.
    pub fn is_relatively_ij_baire(&self, sub: &Subbilocale, o: Orientation) -> BaireVerdict {
        let family = self.dense_open_family(o);
        let carrier = sub.carrier();
        let intersection = carrier.meet(self.family_intersection(&family));
        let local = sub.bilocale();
        let lf = local.frame();
        let localized = sub
            .localize_sublocale(intersection)
            .expect("meet with the carrier lies in the carrier");
        let verdict = local.is_side_dense(o.i, localized);
        let missed = if verdict {
            None
        } else {
            local
                .side(o.i)
                .iter()
                .find(|&u| u != lf.bottom() && lf.open(u).meet(localized) == lf.void())
                .map(|u| sub.parent_elem(u))
        };
        BaireVerdict {
            orientation: o,
            verdict,
            family,
            intersection,
            missed,
            carrier: Some(carrier),
        }
    }

    /// Every `a ∈ L` with `𝔠(a)` `(i,j)`-nowhere dense, ascending.
    pub fn closed_nowhere_dense(&self, o: Orientation) -> Vec<Elem> {
        let f = self.frame();
        (0..f.len())
            .filter(|&a| self.is_nowhere_dense(o, f.closed(a)))
            .collect()
    }

    /// The largest `(i,j)`-first-category sublocale: the join of every
    /// closed `(i,j)`-nowhere dense sublocale.
    pub fn first_category_envelope(&self, o: Orientation) -> Sublocale {
        let f = self.frame();
        let cover = self.closed_nowhere_dense(o);
        let parts: Vec<Sublocale> = cover.iter().map(|&a| f.closed(a)).collect();
        let joined = f.sublocale_join(&parts);
        debug_assert_eq!(joined, f.closed(f.meet_all(cover.iter().copied().collect())));
        joined
    }

    /// Nowhere density is stable under closure, so closed covers suffice.
    pub fn category(&self, o: Orientation, s: Sublocale) -> CategoryVerdict {
        let cover = self.closed_nowhere_dense(o);
        let envelope = self.first_category_envelope(o);
        let kind = if s.is_subset(envelope) {
            CategoryKind::First
        } else {
            CategoryKind::Second
        };
        CategoryVerdict {
            subject: s,
            orientation: o,
            kind,
            cover,
            envelope,
        }
    }

    pub fn is_first_category(&self, o: Orientation, s: Sublocale) -> bool {
        s.is_subset(self.first_category_envelope(o))
    }

    /// Every member is a nonzero element of `L_i` and every non-void
    /// `i`-open sublocale contains the open of some member.
    pub fn is_pi_base(&self, i: Side, members: ElemSet) -> bool {
        let f = self.frame();
        let nonzero = self.side(i).without(f.bottom());
        members.is_subset(nonzero)
            && nonzero
                .iter()
                .all(|u| members.iter().any(|m| f.open(m).is_subset(f.open(u))))
    }

    /// `cl_j(𝔬(y)) ⊆ 𝔬(x)`.
    fn chain_step(&self, o: Orientation, y: Elem, x: Elem) -> bool {
        let f = self.frame();
        self.side_closure(o.j(), f.open(y)).is_subset(f.open(x))
    }

    /// Chain condition for the constant sequence `(C, C, …)`.
    ///
    /// A chain needs `𝔬(x_{n+1}) ⊆ 𝔬(x_n)`, so in a finite frame it is
    /// eventually constant at some `x` with `cl_j(𝔬(x)) ⊆ 𝔬(x)`. The DFS
    /// walks every strictly descending prefix and checks the intersection
    /// at each possible terminal element.
    pub fn pi_base_chain_condition(&self, o: Orientation, base: ElemSet) -> bool {
        let f = self.frame();
        let mut stack: Vec<(Elem, Sublocale)> =
            base.iter().map(|x| (x, f.open(x))).collect();
        while let Some((x, inter)) = stack.pop() {
            if self.chain_step(o, x, x) && inter == f.void() {
                return false;
            }
            for y in base {
                if y != x && self.chain_step(o, y, x) {
                    stack.push((y, inter.meet(f.open(y))));
                }
            }
        }
        true
    }

    pub fn is_i_pseudocomplete(&self, o: Orientation, mode: PseudoMode) -> Result<bool> {
        if !self.is_i_prefit(o.i) {
            return Ok(false);
        }
        let f = self.frame();
        let maximal = self.side(o.i).without(f.bottom());
        debug_assert!(self.is_pi_base(o.i, maximal));
        match mode {
            PseudoMode::Canonical => Ok(self.pi_base_chain_condition(o, maximal)),
            PseudoMode::Exhaustive => {
                f.guard_subsets_of(maximal.len(), "pi-base enumeration")?;
                Ok(maximal
                    .subsets()
                    .filter(|&c| self.is_pi_base(o.i, c))
                    .any(|c| self.pi_base_chain_condition(o, c)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{Frame, RawFrame};

    fn sym(raw: RawFrame) -> Bilocale {
        Bilocale::symmetric(Frame::validate(&raw).unwrap())
    }

    #[test]
    fn symmetric_chain3_is_baire_both_ways() {
        let b = sym(RawFrame::chain3());
        for o in Orientation::BOTH {
            let v = b.is_ij_baire(o);
            assert!(v.verdict);
            assert!(v.recheck(&b));
        }
    }

    #[test]
    fn discrete_over_indiscrete() {
        // X = {a, b}: frame P({a,b}), τ₁ everything, τ₂ = {∅, X}.
        let f = Frame::validate(&RawFrame::powerset(2)).unwrap();
        let all = f.all();
        let b = Bilocale::new(f, all, [0, 3].into_iter().collect()).unwrap();
        let v = b.is_ij_baire(Orientation::ONE_TWO);
        assert!(v.verdict);
        assert_eq!(v.family, vec![3]);
        assert!(v.recheck(&b));
    }

    #[test]
    fn void_is_first_category() {
        let b = sym(RawFrame::powerset(2));
        let f = b.frame();
        for o in Orientation::BOTH {
            let c = b.category(o, f.void());
            assert!(c.is_first());
            assert!(c.recheck(&b));
            let whole = b.category(o, f.whole());
            assert_eq!(whole.kind, CategoryKind::Second);
            assert!(whole.recheck(&b));
        }
    }

    #[test]
    fn maximal_pi_base_and_pseudocompleteness() {
        let b = sym(RawFrame::powerset(2));
        let f = b.frame();
        let maximal = f.all().without(f.bottom());
        assert!(b.is_pi_base(Side::First, maximal));
        assert!(!b.is_pi_base(Side::First, ElemSet::singleton(3)));
        for mode in [PseudoMode::Canonical, PseudoMode::Exhaustive] {
            assert!(b.is_i_pseudocomplete(Orientation::ONE_TWO, mode).unwrap());
        }
        let chain = sym(RawFrame::chain3());
        assert!(!chain
            .is_i_pseudocomplete(Orientation::ONE_TWO, PseudoMode::Canonical)
            .unwrap());
    }

    #[test]
    fn relative_to_whole_matches_plain() {
        let b = sym(RawFrame::chain(4));
        let whole = b.subbilocale(b.frame().whole()).unwrap();
        for o in Orientation::BOTH {
            let rel = b.is_relatively_ij_baire(&whole, o);
            assert_eq!(rel.verdict, b.is_ij_baire(o).verdict);
            assert!(rel.recheck(&b));
        }
    }
}

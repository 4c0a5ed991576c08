//! Topobilocales `(L, τ₁, τ₂)`: two subframes of complemented elements,
//! with closure and interior computed element-wise.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bilocale::{Orientation, Side};
use crate::error::{Error, Result};
use crate::frame::{Elem, Frame, Guards, RawFrame};
use crate::replay::PropositionReport;
use crate::set::ElemSet;

/// JSON form: `{"frame": <frame>, "tau1": [indices], "tau2": [indices]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTopoBilocale {
    pub frame: RawFrame,
    pub tau1: Vec<usize>,
    pub tau2: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopoBilocale {
    total: Frame,
    tau: [ElemSet; 2],
    /// `τ_i′`, the complements of `τ_i`-members.
    primed: [ElemSet; 2],
}

fn slot(i: Side) -> usize {
    i.index() as usize - 1
}

impl TopoBilocale {
    pub fn new(total: Frame, tau1: ElemSet, tau2: ElemSet) -> Result<TopoBilocale> {
        let mut primed = [ElemSet::EMPTY; 2];
        for (k, (side, t)) in [(Side::First, tau1), (Side::Second, tau2)].into_iter().enumerate() {
            if let Some(reason) = total.subframe_violation(t) {
                return Err(Error::NotASubframe { side, reason });
            }
            for a in t {
                let c = total.complement(a).ok_or(Error::NotComplemented(a))?;
                primed[k].insert(c);
            }
        }
        Ok(TopoBilocale {
            total,
            tau: [tau1, tau2],
            primed,
        })
    }

    pub fn from_raw(raw: &RawTopoBilocale) -> Result<TopoBilocale> {
        Self::from_raw_with(raw, Guards::default())
    }

    pub fn from_raw_with(raw: &RawTopoBilocale, guards: Guards) -> Result<TopoBilocale> {
        let total = Frame::validate_with(&raw.frame, guards)?;
        let n = total.len();
        let to_set = |xs: &[usize]| -> Result<ElemSet> {
            match xs.iter().find(|&&x| x >= n) {
                Some(&index) => Err(Error::IndexOutOfRange { index, len: n }),
                None => Ok(xs.iter().copied().collect()),
            }
        };
        TopoBilocale::new(total, to_set(&raw.tau1)?, to_set(&raw.tau2)?)
    }

    pub fn to_raw(&self) -> RawTopoBilocale {
        RawTopoBilocale {
            frame: self.total.to_raw(),
            tau1: self.tau[0].to_vec(),
            tau2: self.tau[1].to_vec(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.total
    }

    pub fn tau(&self, i: Side) -> ElemSet {
        self.tau[slot(i)]
    }

    pub fn tau_primed(&self, i: Side) -> ElemSet {
        self.primed[slot(i)]
    }

    /// `⋀{b ∈ τ_i′ : a ≤ b}`.
    pub fn tau_closure(&self, i: Side, a: Elem) -> Elem {
        let f = &self.total;
        f.meet_all(self.primed[slot(i)].intersection(f.up(a)))
    }

    /// `⋁{b ∈ τ_i : b ≤ a}`.
    pub fn tau_interior(&self, i: Side, a: Elem) -> Elem {
        let f = &self.total;
        f.join_all(self.tau[slot(i)].intersection(f.down(a)))
    }

    pub fn is_tau_dense(&self, i: Side, a: Elem) -> bool {
        self.tau_closure(i, a) == self.total.top()
    }

    /// `int_j(cl_i(a)) = 0`.
    pub fn is_tau_nowhere_dense(&self, o: Orientation, a: Elem) -> bool {
        self.tau_interior(o.j(), self.tau_closure(o.i, a)) == self.total.bottom()
    }

    /// Nowhere density against "`(cl_i a)′` is `τ_j`-dense", for every `a`
    /// whose closure is complemented. Returns the first disagreement.
    pub fn nowhere_dense_cross_check(&self, o: Orientation) -> Option<Elem> {
        let f = &self.total;
        (0..f.len()).find(|&a| {
            f.complement(self.tau_closure(o.i, a))
                .is_some_and(|c| self.is_tau_nowhere_dense(o, a) != self.is_tau_dense(o.j(), c))
        })
    }

    pub fn tau_dense_family(&self, o: Orientation) -> Vec<Elem> {
        self.tau(o.j()).iter().filter(|&x| self.is_tau_dense(o.i, x)).collect()
    }

    pub fn is_tau_ij_baire(&self, o: Orientation) -> TauBaireVerdict {
        let f = &self.total;
        let family = self.tau_dense_family(o);
        let meet = f.meet_all(family.iter().copied().collect());
        TauBaireVerdict {
            orientation: o,
            verdict: self.is_tau_dense(o.i, meet),
            family,
            meet,
        }
    }

    /// Join of every `(τ_i,τ_j)`-nowhere dense element.
    pub fn first_category_bound(&self, o: Orientation) -> Elem {
        let f = &self.total;
        f.join_all((0..f.len()).filter(|&a| self.is_tau_nowhere_dense(o, a)).collect())
    }

    pub fn is_tau_first_category(&self, o: Orientation, a: Elem) -> bool {
        self.total.leq(a, self.first_category_bound(o))
    }

    /// The eight closure/interior identities over both sides; returns the
    /// numbers of the items that fail somewhere.
    pub fn identity_failures(&self) -> Vec<u8> {
        let f = &self.total;
        let n = f.len();
        let (bot, top) = (f.bottom(), f.top());
        let mut failed = [false; 8];
        for i in Side::BOTH {
            let cl = |a| self.tau_closure(i, a);
            let int = |a| self.tau_interior(i, a);
            failed[0] |= cl(bot) != bot || int(bot) != bot;
            failed[1] |= cl(top) != top || int(top) != top;
            for a in 0..n {
                failed[2] |= !f.leq(a, cl(a));
                failed[4] |= !f.leq(int(a), a);
                for b in 0..n {
                    if f.leq(a, b) {
                        failed[3] |= !f.leq(cl(a), cl(b));
                        failed[5] |= !f.leq(int(a), int(b));
                    }
                }
                if let Some(ac) = f.complement(a) {
                    failed[6] |= f.complement(cl(a)) != Some(int(ac));
                    failed[7] |= f.complement(int(a)) != Some(cl(ac));
                }
            }
        }
        (1..=8).filter(|&k| failed[k as usize - 1]).collect()
    }

    pub fn closure_interior_identities(&self, instance: &str) -> PropositionReport {
        let failures = self.identity_failures();
        PropositionReport::new("tau-closure-interior-identities", instance, None, Default::default(), failures.is_empty())
            .with("failed_items", json!(failures))
    }

    /// Four-way characterisation of `(τ_i,τ_j)`-Baireness. It carries no
    /// gate; statement (4) ranges over complemented first-category elements.
    pub fn final_equivalence_replay(&self, o: Orientation, instance: &str) -> PropositionReport {
        let f = &self.total;
        let rev = o.reversed();
        let bound = self.first_category_bound(rev);
        let first: Vec<Elem> = (0..f.len()).filter(|&a| f.leq(a, bound)).collect();
        let s1 = self.is_tau_ij_baire(o).verdict;
        let s2 = self
            .tau(o.i)
            .iter()
            .filter(|&x| x != f.bottom())
            .all(|x| !self.is_tau_first_category(rev, x));
        let s3 = first.iter().all(|&a| self.tau_interior(o.i, a) == f.bottom());
        let s4 = first
            .iter()
            .filter_map(|&a| f.complement(a))
            .all(|c| self.is_tau_dense(o.i, c));
        let statements = [s1, s2, s3, s4];
        PropositionReport::new(
            "tau-baire-equivalence",
            instance,
            Some(o),
            Default::default(),
            statements.windows(2).all(|w| w[0] == w[1]),
        )
        .with("statements", json!(statements))
    }

    pub fn nowhere_dense_replay(&self, o: Orientation, instance: &str) -> PropositionReport {
        let failure = self.nowhere_dense_cross_check(o);
        PropositionReport::new("tau-nowhere-dense-complement", instance, Some(o), Default::default(), failure.is_none())
            .with("counterexample", json!(failure))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauBaireVerdict {
    pub orientation: Orientation,
    pub verdict: bool,
    /// `τ_i`-dense members of `τ_j`.
    pub family: Vec<Elem>,
    pub meet: Elem,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::replay::Status;

    fn frame(raw: RawFrame) -> Frame {
        Frame::validate(&raw).unwrap()
    }

    #[test]
    fn boolean_full() {
        let f = frame(RawFrame::powerset(2));
        let all = f.all();
        let t = TopoBilocale::new(f.clone(), all, all).unwrap();
        for a in 0..f.len() {
            assert_eq!(t.tau_closure(Side::First, a), a);
            assert_eq!(t.tau_interior(Side::Second, a), a);
        }
        assert!(t.identity_failures().is_empty());
        for o in Orientation::BOTH {
            let v = t.is_tau_ij_baire(o);
            assert!(v.verdict);
            assert_eq!(v.family, vec![f.top()]);
            assert_eq!(t.final_equivalence_replay(o, "b").status, Status::Confirmed);
        }
    }

    #[test]
    fn chain3_middle_is_not_complemented() {
        let f = frame(RawFrame::chain3());
        let err = TopoBilocale::new(f, [0, 1, 2].into_iter().collect(), [0, 2].into_iter().collect()).unwrap_err();
        assert_eq!(err, Error::NotComplemented(1));
    }

    #[test]
    fn trivial_topologies() {
        let f = frame(RawFrame::chain3());
        let t = TopoBilocale::new(f.clone(), [0, 2].into_iter().collect(), [0, 2].into_iter().collect()).unwrap();
        assert_eq!(t.tau_closure(Side::First, 1), 2);
        assert_eq!(t.tau_interior(Side::First, 1), 0);
        assert!(t.identity_failures().is_empty());
        assert!(t.is_tau_nowhere_dense(Orientation::ONE_TWO, 0));
        assert!(t.is_tau_first_category(Orientation::ONE_TWO, 0));
        for o in Orientation::BOTH {
            assert_eq!(t.final_equivalence_replay(o, "t").status, Status::Confirmed);
            assert!(t.nowhere_dense_cross_check(o).is_none());
        }
    }
}

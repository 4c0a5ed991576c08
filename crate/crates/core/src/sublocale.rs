//! Sublocales of a finite frame and the operations on the coframe `𝒮(L)`.
//!
//! "Countable" meets and joins are realised as arbitrary finite families:
//! a countable family of subsets of a finite set has finitely many distinct
//! members, so every countable construction reduces to a finite one.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Elem, Frame};
use crate::par::Execution;
use crate::set::ElemSet;

/// A subset of a frame closed under all meets and under `x → (-)`.
///
/// Carries no reference to its frame; every operation takes the frame
/// explicitly. Serializes as the sorted array of member indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sublocale(ElemSet);

impl Sublocale {
    pub(crate) const fn unchecked(members: ElemSet) -> Self {
        Sublocale(members)
    }

    #[inline]
    pub fn members(self) -> ElemSet {
        self.0
    }

    #[inline]
    pub fn contains(self, a: Elem) -> bool {
        self.0.contains(a)
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn is_subset(self, other: Sublocale) -> bool {
        self.0.is_subset(other.0)
    }

    /// Intersection; the meet in `𝒮(L)`.
    #[inline]
    pub fn meet(self, other: Sublocale) -> Sublocale {
        Sublocale(self.0.intersection(other.0))
    }
}

impl std::fmt::Debug for Sublocale {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S{:?}", self.0)
    }
}

/// Every sublocale of a frame, sorted by member bitmask.
#[derive(Debug, Clone)]
pub struct SublocaleLattice {
    all: Arc<[ElemSet]>,
}

impl SublocaleLattice {
    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Sublocale> + '_ {
        self.all.iter().map(|&s| Sublocale(s))
    }

    pub fn to_vec(&self) -> Vec<Sublocale> {
        self.iter().collect()
    }

    pub fn contains(&self, s: Sublocale) -> bool {
        self.all.binary_search(&s.0).is_ok()
    }
}

/// An intersection of open sublocales over a generator set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GDeltaFamily {
    pub generators: ElemSet,
    pub realized: Sublocale,
}

impl Frame {
    /// `O = {1}`, the least sublocale.
    #[inline]
    pub fn void(&self) -> Sublocale {
        Sublocale(ElemSet::singleton(self.top()))
    }

    #[inline]
    pub fn whole(&self) -> Sublocale {
        Sublocale(self.all())
    }

    /// `𝔠(a) = ↑a`.
    pub fn closed(&self, a: Elem) -> Sublocale {
        Sublocale(self.up(a))
    }

    /// `𝔬(a) = {a → x : x ∈ L}`.
    pub fn open(&self, a: Elem) -> Sublocale {
        Sublocale((0..self.len()).map(|x| self.heyting(a, x)).collect())
    }

    pub fn is_sublocale(&self, set: ElemSet) -> bool {
        if !set.is_subset(self.all()) || !set.contains(self.top()) {
            return false;
        }
        for s in set {
            if !self.implications_into(s).is_subset(set) {
                return false;
            }
        }
        for a in set {
            for b in set {
                if b > a && !set.contains(self.meet(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn sublocale(&self, set: ElemSet) -> Result<Sublocale> {
        if self.is_sublocale(set) {
            Ok(Sublocale(set))
        } else {
            Err(Error::NotASublocale(set.to_vec()))
        }
    }

    /// All meets of subsets of `set`, including the empty meet.
    pub fn meet_closure(&self, set: ElemSet) -> ElemSet {
        let mut acc = ElemSet::singleton(self.top());
        for x in set {
            let mut next = acc;
            for c in acc {
                next.insert(self.meet(x, c));
            }
            acc = next;
        }
        acc
    }

    /// Brute force over every subset containing the top, without memoizing.
    pub fn enumerate_sublocales_with(&self, exec: Execution) -> Result<Vec<Sublocale>> {
        self.guard_subsets("sublocale enumeration")?;
        let top = self.top();
        let others: Vec<Elem> = (0..self.len()).filter(|&x| x != top).collect();
        let spread = |k: u64| -> ElemSet {
            let mut s = ElemSet::singleton(top);
            for (bit, &x) in others.iter().enumerate() {
                if k >> bit & 1 == 1 {
                    s.insert(x);
                }
            }
            s
        };
        let hits = exec.filter_range(1u64 << others.len(), |k| self.is_sublocale(spread(k)));
        let mut out: Vec<Sublocale> = hits.into_iter().map(|k| Sublocale(spread(k))).collect();
        out.sort();
        Ok(out)
    }

    /// `𝒮(L)`, computed once per frame and shared afterwards.
    pub fn sublocales(&self) -> Result<SublocaleLattice> {
        if let Some(all) = self.sublocales.get() {
            return Ok(SublocaleLattice { all: all.clone() });
        }
        let found = self.enumerate_sublocales_with(Execution::Parallel)?;
        let all: Arc<[ElemSet]> = found.iter().map(|s| s.0).collect();
        let all = self.sublocales.get_or_init(|| all).clone();
        Ok(SublocaleLattice { all })
    }

    /// Intersection of every closed sublocale containing `s`.
    pub fn closure(&self, s: Sublocale) -> Sublocale {
        let mut acc = self.all();
        for a in 0..self.len() {
            if s.0.is_subset(self.up(a)) {
                acc = acc.intersection(self.up(a));
            }
        }
        Sublocale(acc)
    }

    pub fn is_dense_sublocale(&self, s: Sublocale) -> bool {
        self.closure(s) == self.whole()
    }

    /// Smallest sublocale containing every part: the meet closure of the
    /// union.
    pub fn sublocale_join(&self, parts: &[Sublocale]) -> Sublocale {
        let union = parts.iter().fold(ElemSet::EMPTY, |acc, p| acc.union(p.0));
        let joined = self.meet_closure(union);
        debug_assert!(self.is_sublocale(joined));
        Sublocale(joined)
    }

    pub fn join2(&self, a: Sublocale, b: Sublocale) -> Sublocale {
        self.sublocale_join(&[a, b])
    }

    /// `L ∖ S`: the join of all sublocales disjoint from `S`.
    pub fn supplement(&self, s: Sublocale) -> Result<Sublocale> {
        let lattice = self.sublocales()?;
        let void = self.void().0;
        let union = lattice
            .iter()
            .filter(|t| t.0.intersection(s.0) == void)
            .fold(ElemSet::EMPTY, |acc, t| acc.union(t.0));
        Ok(Sublocale(self.meet_closure(union)))
    }

    /// `S ∨ (L ∖ S) = L`; the supplement is then the complement.
    pub fn is_complemented_sublocale(&self, s: Sublocale) -> Result<bool> {
        let sup = self.supplement(s)?;
        Ok(self.join2(s, sup) == self.whole())
    }

    /// `𝔅L = {x → 0 : x ∈ L}`.
    pub fn booleanization(&self) -> Sublocale {
        Sublocale(self.implications_into(self.bottom()))
    }

    /// `ν_S(a)`: the least member of `S` above `a`.
    pub fn nu(&self, s: Sublocale, a: Elem) -> Elem {
        self.meet_all(s.0.intersection(self.up(a)))
    }

    /// `S ∩ 𝔬(a)`, the open sublocale of `S` induced by `ν_S(a)`.
    pub fn open_in(&self, s: Sublocale, a: Elem) -> Sublocale {
        s.meet(self.open(a))
    }

    /// `S ∩ 𝔠(a)`.
    pub fn closed_in(&self, s: Sublocale, a: Elem) -> Sublocale {
        s.meet(self.closed(a))
    }

    pub fn gdelta(&self, generators: ElemSet) -> GDeltaFamily {
        let realized = generators
            .iter()
            .fold(self.whole(), |acc, x| acc.meet(self.open(x)));
        GDeltaFamily {
            generators,
            realized,
        }
    }

    /// Closure of `{𝔬(x) : x ∈ opens}` under binary intersection: exactly
    /// the realizable Gδ-sublocales over `opens`. Sorted and deduplicated.
    pub fn gdelta_closure_family(&self, opens: ElemSet) -> Vec<Sublocale> {
        let mut family: Vec<Sublocale> = opens.iter().map(|x| self.open(x)).collect();
        family.sort();
        family.dedup();
        let mut frontier = family.clone();
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for &a in &frontier {
                for &b in &family {
                    let c = a.meet(b);
                    if family.binary_search(&c).is_err() && !fresh.contains(&c) {
                        fresh.push(c);
                    }
                }
            }
            family.extend(fresh.iter().copied());
            family.sort();
            family.dedup();
            frontier = fresh;
        }
        family
    }

    /// Whether every Gδ-sublocale generated from `opens` is complemented.
    pub fn gdeltas_complemented(&self, opens: ElemSet) -> Result<bool> {
        for g in self.gdelta_closure_family(opens) {
            if !self.is_complemented_sublocale(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

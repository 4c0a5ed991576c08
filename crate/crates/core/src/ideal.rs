//! The ideal bilocale `(𝔍L, (𝔍L)₁, (𝔍L)₂)`.
//!
//! Ideals are materialised as explicit downsets and ordered by inclusion.
//! On finite frames every ideal is principal, so `x ↦ ↓x` is an order
//! isomorphism `L ≅ 𝔍L`; this is checked rather than assumed.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use crate::bilocale::{Bilocale, Orientation, Side};
use crate::error::Result;
use crate::frame::{Elem, Frame};
use crate::replay::PropositionReport;
use crate::set::ElemSet;

/// A downset containing bottom and closed under binary joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Ideal(ElemSet);

impl Ideal {
    pub fn members(self) -> ElemSet {
        self.0
    }
}

impl Frame {
    pub fn is_ideal(&self, set: ElemSet) -> bool {
        set.contains(self.bottom())
            && set.iter().all(|a| self.down(a).is_subset(set))
            && set.iter().all(|a| set.iter().all(|b| set.contains(self.join(a, b))))
    }

    /// Downset of the finite joins of `set`.
    pub fn ideal_generated_by(&self, set: ElemSet) -> Ideal {
        let mut joins = set.with(self.bottom());
        loop {
            let mut next = joins;
            for a in joins {
                for b in joins {
                    next.insert(self.join(a, b));
                }
            }
            if next == joins {
                break;
            }
            joins = next;
        }
        let down = joins.iter().fold(ElemSet::EMPTY, |acc, a| acc.union(self.down(a)));
        debug_assert!(self.is_ideal(down));
        Ideal(down)
    }

    pub fn principal(&self, x: Elem) -> Ideal {
        Ideal(self.down(x))
    }

    /// Every ideal, found by closing `{0}` under "add one element and take
    /// the generated ideal". Sorted by size, then members.
    pub fn ideals(&self) -> Vec<Ideal> {
        let start = self.ideal_generated_by(ElemSet::EMPTY);
        let mut seen: BTreeSet<Ideal> = [start].into();
        let mut frontier = vec![start];
        while let Some(j) = frontier.pop() {
            for a in self.all().difference(j.0) {
                let k = self.ideal_generated_by(j.0.with(a));
                if seen.insert(k) {
                    frontier.push(k);
                }
            }
        }
        let mut out: Vec<Ideal> = seen.into_iter().collect();
        out.sort_by_key(|j| (j.0.len(), j.0));
        out
    }
}

#[derive(Debug, Clone)]
pub struct IdealBilocale {
    bilocale: Bilocale,
    ideals: Vec<Ideal>,
}

impl IdealBilocale {
    pub fn new(b: &Bilocale) -> Result<IdealBilocale> {
        let f = b.frame();
        let ideals = f.ideals();
        let labels = ideals
            .iter()
            .map(|j| {
                let names: Vec<&str> = j.0.iter().map(|a| f.label(a)).collect();
                format!("[{}]", names.join(","))
            })
            .collect();
        let total = Frame::from_order(labels, f.guards(), |x, y| ideals[x].0.is_subset(ideals[y].0))?;
        let side = |i: Side| -> ElemSet {
            (0..ideals.len())
                .filter(|&k| f.ideal_generated_by(ideals[k].0.intersection(b.side(i))) == ideals[k])
                .collect()
        };
        let bilocale = Bilocale::new(total, side(Side::First), side(Side::Second))?;
        Ok(IdealBilocale { bilocale, ideals })
    }

    pub fn bilocale(&self) -> &Bilocale {
        &self.bilocale
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    /// Index of `↓x` among the ideals.
    pub fn down_index(&self, parent: &Frame, x: Elem) -> Option<usize> {
        let target = parent.principal(x);
        self.ideals.iter().position(|&j| j == target)
    }

    /// Every ideal is principal and `↓` is an order isomorphism carrying
    /// `L_i` onto `(𝔍L)_i`.
    pub fn verify_isomorphism(&self, parent: &Bilocale) -> bool {
        let f = parent.frame();
        let Some(down): Option<Vec<usize>> = (0..f.len()).map(|x| self.down_index(f, x)).collect() else {
            return false;
        };
        let g = self.bilocale.frame();
        let bijective = self.ideals.len() == f.len() && down.iter().copied().collect::<ElemSet>() == g.all();
        let order = (0..f.len()).all(|x| (0..f.len()).all(|y| f.leq(x, y) == g.leq(down[x], down[y])));
        let sides = Side::BOTH
            .iter()
            .all(|&i| parent.side(i).iter().map(|x| down[x]).collect::<ElemSet>() == self.bilocale.side(i));
        let principal = self
            .ideals
            .iter()
            .all(|j| f.principal(f.join_all(j.0)) == *j);
        bijective && order && sides && principal
    }
}

pub fn ideal_bilocale(b: &Bilocale) -> Result<IdealBilocale> {
    IdealBilocale::new(b)
}

/// `(i,j)`-Baireness of a Noetherian bilocale and of its ideal bilocale
/// agree.
pub fn noetherian_transfer_check(b: &Bilocale, o: Orientation, instance: &str) -> Result<PropositionReport> {
    let f = b.frame();
    let mut noetherian = true;
    for a in 0..f.len() {
        noetherian &= f.is_compact_element(a)?;
    }
    let ideal = ideal_bilocale(b)?;
    let plain = b.is_ij_baire(o).verdict;
    let lifted = ideal.bilocale().is_ij_baire(o).verdict;
    Ok(PropositionReport::new(
        "noetherian-ideal-transfer",
        instance,
        Some(o),
        [("noetherian".to_string(), noetherian)].into(),
        plain == lifted,
    )
    .with("baire", json!(plain))
    .with("ideal_baire", json!(lifted))
    .with("isomorphism", json!(ideal.verify_isomorphism(b))))
}

/// `x ∈ L_i` is `j`-dense iff `↓x` is `(𝔍L)_j`-dense in `𝔍L`, both sides.
pub fn ideal_density_transfer(b: &Bilocale, instance: &str) -> Result<PropositionReport> {
    let f = b.frame();
    let ideal = ideal_bilocale(b)?;
    let mut failure = None;
    for i in Side::BOTH {
        for x in b.side(i) {
            let down = ideal.down_index(f, x).expect("principal ideals exist");
            let lifted = ideal.bilocale().is_element_dense_for(i.other(), down);
            if b.is_element_dense_for(i.other(), x) != lifted && failure.is_none() {
                failure = Some((i.index(), x));
            }
        }
    }
    Ok(PropositionReport::new(
        "ideal-density-transfer",
        instance,
        None,
        Default::default(),
        failure.is_none(),
    )
    .with("counterexample", json!(failure)))
}

//! Finite bitopological spaces `(X, τ₁, τ₂)` and their bilocales
//! `(τ₁ ∨ τ₂, τ₁, τ₂)`.
//!
//! Subsets of `X` are bitmasks over the point list. The join topology is
//! canonicalised by (cardinality, mask), and frame element `k` of the
//! induced bilocale is the `k`-th open of that list.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bilocale::{Bilocale, Orientation, Side};
use crate::error::{Error, Result};
use crate::frame::{Elem, Frame, Guards};
use crate::replay::PropositionReport;
use crate::set::ElemSet;
use crate::sublocale::Sublocale;

/// Largest point set accepted; subsets of `X` are enumerated in places.
pub const MAX_POINTS: usize = 16;

/// JSON form: `{"points": [..], "tau1": [[..], ..], "tau2": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBispace {
    pub points: Vec<String>,
    pub tau1: Vec<Vec<String>>,
    pub tau2: Vec<Vec<String>>,
}

type Mask = u64;

#[derive(Debug, Clone)]
pub struct Bispace {
    points: Vec<String>,
    tau: [Vec<Mask>; 2],
    join: Vec<Mask>,
    bilocale: Bilocale,
}

fn canonical(family: impl IntoIterator<Item = Mask>) -> Vec<Mask> {
    let mut v: Vec<Mask> = family.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    v.sort_by_key(|&m| (m.count_ones(), m));
    v
}

/// Closure under binary unions and intersections, plus `∅` and `X`.
pub fn saturate(family: impl IntoIterator<Item = Mask>, full: Mask) -> Vec<Mask> {
    let mut set: BTreeSet<Mask> = family.into_iter().collect();
    set.insert(0);
    set.insert(full);
    loop {
        let items: Vec<Mask> = set.iter().copied().collect();
        let before = set.len();
        for (k, &a) in items.iter().enumerate() {
            for &b in &items[k + 1..] {
                set.insert(a | b);
                set.insert(a & b);
            }
        }
        if set.len() == before {
            return canonical(set);
        }
    }
}

fn topology_violation(family: &[Mask], full: Mask) -> Option<String> {
    let set: BTreeSet<Mask> = family.iter().copied().collect();
    if !set.contains(&0) {
        return Some("missing the empty set".into());
    }
    if !set.contains(&full) {
        return Some("missing the whole space".into());
    }
    for &a in family {
        for &b in family {
            if !set.contains(&(a | b)) {
                return Some(format!("not closed under union ({a:#b} ∪ {b:#b})"));
            }
            if !set.contains(&(a & b)) {
                return Some(format!("not closed under intersection ({a:#b} ∩ {b:#b})"));
            }
        }
    }
    None
}

impl Bispace {
    pub fn from_raw(raw: &RawBispace) -> Result<Bispace> {
        Self::from_raw_with(raw, Guards::default())
    }

    pub fn from_raw_with(raw: &RawBispace, guards: Guards) -> Result<Bispace> {
        let n = raw.points.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > MAX_POINTS {
            return Err(Error::SizeGuardExceeded {
                what: "bispace points",
                count: n,
                guard: MAX_POINTS,
            });
        }
        let mut seen = BTreeSet::new();
        for p in &raw.points {
            if !seen.insert(p) {
                return Err(Error::DuplicateLabel(p.clone()));
            }
        }
        let mask_of = |set: &[String]| -> Result<Mask> {
            set.iter().try_fold(0, |acc, name| {
                raw.points
                    .iter()
                    .position(|p| p == name)
                    .map(|k| acc | 1 << k)
                    .ok_or_else(|| Error::UnknownPoint(name.clone()))
            })
        };
        let family = |sets: &[Vec<String>]| -> Result<Vec<Mask>> { sets.iter().map(|s| mask_of(s)).collect() };
        Self::new(raw.points.clone(), family(&raw.tau1)?, family(&raw.tau2)?, guards)
    }

    pub fn new(points: Vec<String>, tau1: Vec<Mask>, tau2: Vec<Mask>, guards: Guards) -> Result<Bispace> {
        let full: Mask = if points.len() == 64 { !0 } else { (1 << points.len()) - 1 };
        let mut tau = [canonical(tau1), canonical(tau2)];
        for (k, t) in tau.iter_mut().enumerate() {
            if let Some(reason) = topology_violation(t, full) {
                return Err(Error::NotATopology { side: k as u8 + 1, reason });
            }
        }
        let join = saturate(tau[0].iter().chain(&tau[1]).copied(), full);
        let labels = join
            .iter()
            .map(|&m| {
                let names: Vec<&str> = (0..points.len()).filter(|k| m >> k & 1 == 1).map(|k| points[k].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        let frame = Frame::from_order(labels, guards, |a, b| join[a] & !join[b] == 0)?;
        let index = |t: &[Mask]| -> ElemSet { t.iter().map(|m| join.binary_search_by_key(&(m.count_ones(), *m), |&x| (x.count_ones(), x)).expect("τ_i ⊆ τ₁ ∨ τ₂")).collect() };
        let bilocale = Bilocale::new(frame, index(&tau[0]), index(&tau[1]))?;
        Ok(Bispace {
            points,
            tau,
            join,
            bilocale,
        })
    }

    pub fn to_raw(&self) -> RawBispace {
        let names = |m: Mask| -> Vec<String> {
            (0..self.points.len()).filter(|k| m >> k & 1 == 1).map(|k| self.points[k].clone()).collect()
        };
        RawBispace {
            points: self.points.clone(),
            tau1: self.tau[0].iter().map(|&m| names(m)).collect(),
            tau2: self.tau[1].iter().map(|&m| names(m)).collect(),
        }
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn full(&self) -> Mask {
        self.join[self.join.len() - 1]
    }

    pub fn tau(&self, i: Side) -> &[Mask] {
        &self.tau[i.index() as usize - 1]
    }

    /// `τ₁ ∨ τ₂`, canonically ordered.
    pub fn join_topology(&self) -> &[Mask] {
        &self.join
    }

    pub fn bilocale(&self) -> &Bilocale {
        &self.bilocale
    }

    /// Frame element of an open set of the join topology.
    pub fn element_of(&self, open: Mask) -> Option<Elem> {
        self.join.iter().position(|&m| m == open)
    }

    pub fn open_of(&self, e: Elem) -> Mask {
        self.join[e]
    }

    /// Largest open of the join topology inside `set`.
    pub fn interior(&self, set: Mask) -> Mask {
        self.join.iter().filter(|&&m| m & !set == 0).fold(0, |acc, &m| acc | m)
    }

    /// Closure in the join topology.
    pub fn closure(&self, set: Mask) -> Mask {
        self.full() & !self.interior(self.full() & !set)
    }

    /// `Ã = {int((X ∖ A) ∪ G) : G ∈ τ₁ ∨ τ₂}`.
    pub fn induced_sublocale(&self, a: Mask) -> Result<Sublocale> {
        let complement = self.full() & !a;
        let members: ElemSet = self
            .join
            .iter()
            .map(|&g| self.element_of(self.interior(complement | g)).expect("interiors are open"))
            .collect();
        self.bilocale.frame().sublocale(members)
    }

    /// `x̃ = X ∖ cl{x}`, a point of the frame.
    pub fn point_element(&self, x: usize) -> Elem {
        let open = self.full() & !self.closure(1 << x);
        self.element_of(open).expect("complements of closed sets are open")
    }

    /// `Ỹ` equals the join of the two-element sublocales `{ỹ, 1}`, `y ∈ Y`.
    pub fn induced_join_identity(&self, y: Mask) -> Result<bool> {
        let f = self.bilocale.frame();
        let parts: Vec<Sublocale> = (0..self.points.len())
            .filter(|k| y >> k & 1 == 1)
            .map(|k| f.sublocale(ElemSet::singleton(self.point_element(k)).with(f.top())))
            .collect::<Result<_>>()?;
        Ok(f.sublocale_join(&parts) == self.induced_sublocale(y)?)
    }

    /// Each point `x` has an open `U ∋ x` with `U ∖ {x}` open (join topology).
    pub fn is_td(&self) -> bool {
        (0..self.points.len()).all(|x| {
            let bit = 1 << x;
            self.join
                .iter()
                .any(|&u| u & bit != 0 && self.element_of(u & !bit).is_some())
        })
    }

    /// The bispace is sup-T_D when its join topology is T_D.
    pub fn is_sup_td(&self) -> bool {
        self.is_td()
    }

    /// `A` meets every nonempty `τ_i`-open set.
    pub fn is_tau_dense(&self, i: Side, a: Mask) -> bool {
        self.tau(i).iter().all(|&u| u == 0 || u & a != 0)
    }

    /// Intersection of every `τ_i`-dense `τ_j`-open set is `τ_i`-dense.
    pub fn is_almost_ij_baire(&self, o: Orientation) -> AlmostBaireVerdict {
        let family: Vec<Mask> = self
            .tau(o.j())
            .iter()
            .copied()
            .filter(|&u| self.is_tau_dense(o.i, u))
            .collect();
        let intersection = family.iter().fold(self.full(), |acc, &u| acc & u);
        let verdict = self.is_tau_dense(o.i, intersection);
        let missed = (!verdict)
            .then(|| self.tau(o.i).iter().copied().find(|&u| u != 0 && u & intersection == 0))
            .flatten();
        AlmostBaireVerdict {
            orientation: o,
            verdict,
            family: family.iter().map(|&m| self.names(m)).collect(),
            intersection: self.names(intersection),
            missed: missed.map(|m| self.names(m)),
        }
    }

    pub fn names(&self, m: Mask) -> Vec<String> {
        (0..self.points.len())
            .filter(|k| m >> k & 1 == 1)
            .map(|k| self.points[k].clone())
            .collect()
    }

    /// Almost `(i,j)`-Baire iff the induced bilocale is `(i,j)`-Baire,
    /// gated on sup-T_D and complemented Gδ-sublocales of `τ₁ ∨ τ₂`.
    pub fn equivalence_replay(&self, o: Orientation, instance: &str) -> Result<PropositionReport> {
        let f = self.bilocale.frame();
        let td = self.is_sup_td();
        let gdelta = f.gdeltas_complemented(f.all())?;
        let almost = self.is_almost_ij_baire(o).verdict;
        let baire = self.bilocale.is_ij_baire(o).verdict;
        Ok(PropositionReport::new(
            "bispace-baire-equivalence",
            instance,
            Some(o),
            [("sup-td".to_string(), td), ("gdelta-complemented".to_string(), gdelta)].into(),
            almost == baire,
        )
        .with("almost_baire", json!(almost))
        .with("baire", json!(baire)))
    }

    /// Under sup-T_D: `A` is `τ_i`-dense iff `Ã` is `i`-dense, every `A ⊆ X`.
    pub fn density_lemma_replay(&self, instance: &str) -> Result<PropositionReport> {
        let mut failure = None;
        for a in 0..=self.full() {
            let induced = self.induced_sublocale(a)?;
            for i in Side::BOTH {
                if self.is_tau_dense(i, a) != self.bilocale.is_side_dense(i, induced) && failure.is_none() {
                    failure = Some((i.index(), self.names(a)));
                }
            }
        }
        Ok(PropositionReport::new(
            "bispace-density-lemma",
            instance,
            None,
            [("sup-td".to_string(), self.is_sup_td())].into(),
            failure.is_none(),
        )
        .with("counterexample", json!(failure)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlmostBaireVerdict {
    pub orientation: Orientation,
    pub verdict: bool,
    pub family: Vec<Vec<String>>,
    pub intersection: Vec<String>,
    pub missed: Option<Vec<String>>,
}

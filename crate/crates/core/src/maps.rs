//! Biframe maps `h: (M, M₁, M₂) → (L, L₁, L₂)`, their right adjoints, and
//! the Baire transfer statements built on them.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bilocale::{Bilocale, Orientation, RawBilocale, Side};
use crate::error::{Error, Result};
use crate::frame::{Elem, Guards};
use crate::replay::PropositionReport;
use crate::sublocale::Sublocale;

/// JSON form: `{"source": <bilocale>, "target": <bilocale>, "mapping": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBiframeMap {
    pub source: RawBilocale,
    pub target: RawBilocale,
    pub mapping: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiframeMap {
    source: Bilocale,
    target: Bilocale,
    mapping: Vec<Elem>,
}

/// Why `mapping` is not a frame homomorphism `source → target`, if it is not.
fn hom_violation(source: &Bilocale, target: &Bilocale, h: &[Elem]) -> Option<String> {
    let (m, l) = (source.frame(), target.frame());
    if h[m.bottom()] != l.bottom() {
        return Some("bottom is not preserved".into());
    }
    if h[m.top()] != l.top() {
        return Some("top is not preserved".into());
    }
    for a in 0..m.len() {
        for b in a + 1..m.len() {
            if h[m.meet(a, b)] != l.meet(h[a], h[b]) {
                return Some(format!("meet of {a} and {b} is not preserved"));
            }
            if h[m.join(a, b)] != l.join(h[a], h[b]) {
                return Some(format!("join of {a} and {b} is not preserved"));
            }
        }
    }
    None
}

impl BiframeMap {
    pub fn new(source: Bilocale, target: Bilocale, mapping: Vec<Elem>) -> Result<BiframeMap> {
        let (m, l) = (source.frame(), target.frame());
        if mapping.len() != m.len() {
            return Err(Error::NotAFrameHom(format!(
                "mapping has {} entries for {} source elements",
                mapping.len(),
                m.len()
            )));
        }
        if let Some(&index) = mapping.iter().find(|&&t| t >= l.len()) {
            return Err(Error::IndexOutOfRange { index, len: l.len() });
        }
        if let Some(reason) = hom_violation(&source, &target, &mapping) {
            return Err(Error::NotAFrameHom(reason));
        }
        for side in Side::BOTH {
            if let Some(element) = source.side(side).iter().find(|&a| !target.side(side).contains(mapping[a])) {
                return Err(Error::SideViolation { side, element });
            }
        }
        Ok(BiframeMap {
            source,
            target,
            mapping,
        })
    }

    pub fn from_raw(raw: &RawBiframeMap) -> Result<BiframeMap> {
        Self::from_raw_with(raw, Guards::default())
    }

    pub fn from_raw_with(raw: &RawBiframeMap, guards: Guards) -> Result<BiframeMap> {
        let source = Bilocale::from_raw_with(&raw.source, guards)?;
        let target = Bilocale::from_raw_with(&raw.target, guards)?;
        BiframeMap::new(source, target, raw.mapping.clone())
    }

    pub fn to_raw(&self) -> RawBiframeMap {
        RawBiframeMap {
            source: self.source.to_raw(),
            target: self.target.to_raw(),
            mapping: self.mapping.clone(),
        }
    }

    pub fn identity(b: &Bilocale) -> BiframeMap {
        BiframeMap {
            source: b.clone(),
            target: b.clone(),
            mapping: (0..b.frame().len()).collect(),
        }
    }

    /// `ν_S : L → S` onto the subbilocale on `S`. Dense exactly when `S` is.
    pub fn onto_subbilocale(b: &Bilocale, s: Sublocale) -> Result<BiframeMap> {
        let sub = b.subbilocale(s)?;
        let f = b.frame();
        let mapping = (0..f.len())
            .map(|a| sub.local_elem(f.nu(s, a)).expect("ν_S lands in S"))
            .collect();
        BiframeMap::new(b.clone(), sub.bilocale().clone(), mapping)
    }

    pub fn source(&self) -> &Bilocale {
        &self.source
    }

    pub fn target(&self) -> &Bilocale {
        &self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.mapping[a]
    }

    pub fn mapping(&self) -> &[Elem] {
        &self.mapping
    }

    /// `h(x) = 0` implies `x = 0`.
    pub fn is_dense(&self) -> bool {
        let (m, l) = (self.source.frame(), self.target.frame());
        (0..m.len()).all(|x| self.mapping[x] != l.bottom() || x == m.bottom())
    }

    /// `h[M_i] = L_i` for both sides.
    pub fn is_onto(&self) -> bool {
        Side::BOTH.iter().all(|&i| {
            let image: crate::set::ElemSet = self.source.side(i).iter().map(|a| self.mapping[a]).collect();
            image == self.target.side(i)
        })
    }

    pub fn is_compactification(&self) -> bool {
        self.is_dense() && self.is_onto() && self.source.is_compact() && self.source.is_regular()
    }

    /// `h_*(b) = ⋁{a ∈ M : h(a) ≤ b}`.
    pub fn right_adjoint(&self) -> Vec<Elem> {
        let (m, l) = (self.source.frame(), self.target.frame());
        (0..l.len())
            .map(|b| {
                let below: crate::set::ElemSet = (0..m.len()).filter(|&a| l.leq(self.mapping[a], b)).collect();
                m.join_all(below)
            })
            .collect()
    }

    /// `h(a) ≤ b ⟺ a ≤ h_*(b)` for every pair.
    pub fn adjunction_holds(&self) -> bool {
        let (m, l) = (self.source.frame(), self.target.frame());
        let star = self.right_adjoint();
        (0..m.len()).all(|a| (0..l.len()).all(|b| l.leq(self.mapping[a], b) == m.leq(a, star[b])))
    }

    /// `h_*[L]` as a sublocale of `M`.
    pub fn image_sublocale(&self) -> Result<Sublocale> {
        let image = self.right_adjoint().into_iter().collect();
        self.source.frame().sublocale(image).map_err(|_| Error::ImageNotSublocale)
    }

    /// Dense onto maps: for `x ∈ L_j` that is `i`-dense, `h_*(x) ∧ a ≠ 0`
    /// for every nonzero `a ∈ M_i`.
    ///
    /// The outcome with `x` drawn from `L_i` and `j`-density instead is
    /// recorded under `literal_holds`; it already fails for identity maps
    /// whenever `L_i` has disjoint nonzero members.
    pub fn adjoint_meet_lemma(&self, o: Orientation, instance: &str) -> PropositionReport {
        let m = self.source.frame();
        let star = self.right_adjoint();
        let holds_for = |from: Side, density: Side| {
            self.target
                .side(from)
                .iter()
                .filter(|&x| self.target.is_element_dense_for(density, x))
                .all(|x| {
                    self.source
                        .side(o.i)
                        .iter()
                        .filter(|&a| a != m.bottom())
                        .all(|a| m.meet(star[x], a) != m.bottom())
                })
        };
        PropositionReport::new(
            "adjoint-meet-lemma",
            instance,
            Some(o),
            [("dense".to_string(), self.is_dense()), ("onto".to_string(), self.is_onto())].into(),
            holds_for(o.j(), o.i),
        )
        .with("literal_holds", json!(holds_for(o.i, o.j())))
    }

    /// Baire transfers along a dense onto map from a Baire source whose
    /// right-adjoint image is `i`-Gδ-dense; the compactification variant
    /// swaps Baire source for an `i`-prefit compactification.
    pub fn baire_transfer_check(&self, o: Orientation, instance: &str) -> Result<Vec<PropositionReport>> {
        let image = self.image_sublocale()?;
        let gdelta_dense = self.source.is_gdelta_dense(o.i, image);
        let dense_onto = self.is_dense() && self.is_onto();
        let target_baire = self.target.is_ij_baire(o).verdict;
        let transfer = PropositionReport::new(
            "dense-onto-transfer",
            instance,
            Some(o),
            [
                ("dense-onto".to_string(), dense_onto),
                ("source-baire".to_string(), self.source.is_ij_baire(o).verdict),
                ("image-gdelta-dense".to_string(), gdelta_dense),
            ]
            .into(),
            target_baire,
        )
        .with("image", json!(image.members().to_vec()));
        let compactification = PropositionReport::new(
            "prefit-compactification-transfer",
            instance,
            Some(o),
            [
                ("compactification".to_string(), self.is_compactification()),
                ("source-i-prefit".to_string(), self.source.is_i_prefit(o.i)),
                ("image-gdelta-dense".to_string(), gdelta_dense),
            ]
            .into(),
            target_baire,
        );
        Ok(vec![transfer, compactification])
    }
}

/// Every biframe map between two small bilocales, in lexicographic order of
/// the mapping vectors.
pub fn enumerate_biframe_maps(source: &Bilocale, target: &Bilocale, max_elements: usize) -> Result<Vec<BiframeMap>> {
    let (m, l) = (source.frame(), target.frame());
    for n in [m.len(), l.len()] {
        if n > max_elements {
            return Err(Error::SizeGuardExceeded {
                what: "biframe map enumeration",
                count: n,
                guard: max_elements,
            });
        }
    }
    let mut out = Vec::new();
    let mut h = vec![usize::MAX; m.len()];
    extend(source, target, 0, &mut h, &mut out);
    Ok(out)
}

fn extend(source: &Bilocale, target: &Bilocale, a: usize, h: &mut Vec<Elem>, out: &mut Vec<BiframeMap>) {
    let (m, l) = (source.frame(), target.frame());
    if a == m.len() {
        if let Ok(map) = BiframeMap::new(source.clone(), target.clone(), h.clone()) {
            out.push(map);
        }
        return;
    }
    for t in 0..l.len() {
        h[a] = t;
        if consistent(source, target, h, a) {
            extend(source, target, a + 1, h, out);
        }
    }
    h[a] = usize::MAX;
}

/// Partial-assignment pruning: constraints whose operands are all assigned.
fn consistent(source: &Bilocale, target: &Bilocale, h: &[Elem], a: usize) -> bool {
    let (m, l) = (source.frame(), target.frame());
    let set = |x: usize| h[x] != usize::MAX;
    if (a == m.bottom() && h[a] != l.bottom()) || (a == m.top() && h[a] != l.top()) {
        return false;
    }
    for side in Side::BOTH {
        if source.side(side).contains(a) && !target.side(side).contains(h[a]) {
            return false;
        }
    }
    (0..m.len()).filter(|&b| set(b)).all(|b| {
        let (mt, jn) = (m.meet(a, b), m.join(a, b));
        (!set(mt) || h[mt] == l.meet(h[a], h[b])) && (!set(jn) || h[jn] == l.join(h[a], h[b]))
            && (!m.leq(b, a) || l.leq(h[b], h[a]))
            && (!m.leq(a, b) || l.leq(h[a], h[b]))
    })
}

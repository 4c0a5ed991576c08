//! Independent oracles. They use only order, meet, join and implication
//! from the frame tables and re-derive everything else by brute force.

#![allow(dead_code)]

use bilocale_core::{Bilocale, ElemSet, Frame, Orientation, Side};

/// Every subset of `L` closed under meets (with the top as the empty
/// meet) and under `x → −`, by scanning all `2^n` subsets.
pub fn powerset_sublocales(f: &Frame) -> Vec<u64> {
    let n = f.len();
    assert!(n <= 16, "oracle scans 2^n subsets");
    let mut out = Vec::new();
    for bits in 0u64..(1 << n) {
        let has = |a: usize| bits >> a & 1 == 1;
        if !has(f.top()) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&a| has(a)).collect();
        let meets = members.iter().all(|&a| members.iter().all(|&b| has(f.meet(a, b))));
        let implications = members.iter().all(|&s| (0..n).all(|x| has(f.heyting(x, s))));
        if meets && implications {
            out.push(bits);
        }
    }
    out
}

/// `𝔬(a) = {a → x : x ∈ L}`.
pub fn open_set(f: &Frame, a: usize) -> u64 {
    (0..f.len()).fold(0, |acc, x| acc | 1 << f.heyting(a, x))
}

/// `S` is `i`-dense iff it meets `𝔬(b)` beyond the top for every nonzero
/// `b ∈ L_i`.
pub fn side_dense(b: &Bilocale, i: Side, s: u64) -> bool {
    let f = b.frame();
    let top = 1u64 << f.top();
    b.side(i)
        .iter()
        .filter(|&x| x != f.bottom())
        .all(|x| s & open_set(f, x) & !top != 0)
}

/// `i`-dense `j`-open sublocales as bitsets.
pub fn dense_opens(b: &Bilocale, o: Orientation) -> Vec<u64> {
    b.side(o.j())
        .iter()
        .map(|x| open_set(b.frame(), x))
        .filter(|&s| side_dense(b, o.i, s))
        .collect()
}

/// Baireness by intersecting every subfamily of the `i`-dense `j`-opens.
pub fn baire_all_subfamilies(b: &Bilocale, o: Orientation) -> bool {
    let family = dense_opens(b, o);
    let whole = ElemSet::full(b.frame().len()).bits();
    (0u64..(1 << family.len())).all(|pick| {
        let meet = family
            .iter()
            .enumerate()
            .filter(|(k, _)| pick >> k & 1 == 1)
            .fold(whole, |acc, (_, &s)| acc & s);
        side_dense(b, o.i, meet)
    })
}

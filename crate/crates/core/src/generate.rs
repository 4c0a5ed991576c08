//! Seeded random instances. Every generator is a pure function of the RNG
//! state, so a fixed seed reproduces the same corpus on every platform.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::bilocale::Bilocale;
use crate::bispace::{saturate, Bispace};
use crate::error::Error;
use crate::frame::{Frame, Guards};
use crate::set::ElemSet;
use crate::topo::TopoBilocale;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounds for random instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    /// Points of the underlying poset; the frame is its downset lattice.
    pub max_points: usize,
    /// Probability (percent) of each comparability edge.
    pub edge_percent: u32,
    pub guards: Guards,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_points: 4,
            edge_percent: 35,
            guards: Guards::default(),
        }
    }
}

/// Downsets of a random poset on `1..=max_points` points, ordered by
/// inclusion. Labels are the downsets in point notation.
pub fn random_frame<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Frame {
    let k = rng.gen_range(1..=cfg.max_points.max(1));
    // below[q] has bit p set when p < q; edges only go upward in index order.
    let mut below = vec![0u64; k];
    for (q, bq) in below.iter_mut().enumerate() {
        for p in 0..q {
            if rng.gen_ratio(cfg.edge_percent.min(100), 100) {
                *bq |= 1 << p;
            }
        }
    }
    for q in 0..k {
        for p in 0..q {
            if below[q] >> p & 1 == 1 {
                below[q] |= below[p];
            }
        }
    }
    let mut downsets: Vec<u64> = (0..1u64 << k)
        .filter(|&d| (0..k).all(|q| d >> q & 1 == 0 || below[q] & !d == 0))
        .collect();
    downsets.sort_by_key(|&d| (d.count_ones(), d));
    let labels = downsets
        .iter()
        .map(|&d| {
            let pts: Vec<String> = (0..k).filter(|q| d >> q & 1 == 1).map(|q| format!("p{q}")).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect();
    Frame::from_order(labels, cfg.guards, |a, b| downsets[a] & !downsets[b] == 0)
        .expect("downset lattices are frames")
}

/// The subframe generated by a random subset of `pool`.
pub fn random_subframe<R: Rng>(rng: &mut R, f: &Frame, pool: ElemSet) -> ElemSet {
    let percent = rng.gen_range(10..=70);
    let gens: ElemSet = pool.iter().filter(|_| rng.gen_ratio(percent, 100)).collect();
    f.subframe_generated_by(gens)
}

/// A random bilocale over a random frame. Side pairs failing the covering
/// condition are redrawn a few times before falling back to `L₂ = L`.
pub fn random_bilocale<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Bilocale {
    let f = random_frame(rng, cfg);
    random_bilocale_over(rng, f)
}

pub fn random_bilocale_over<R: Rng>(rng: &mut R, f: Frame) -> Bilocale {
    let all = f.all();
    for _ in 0..8 {
        let first = random_subframe(rng, &f, all);
        let second = random_subframe(rng, &f, all);
        if let Ok(b) = Bilocale::new(f.clone(), first, second) {
            return b;
        }
    }
    let mut sides = [random_subframe(rng, &f, all), all];
    sides.shuffle(rng);
    Bilocale::new(f, sides[0], sides[1]).expect("a side equal to L always covers")
}

/// Two subframes of the complemented elements of a random frame.
pub fn random_topobilocale<R: Rng>(rng: &mut R, cfg: &GenConfig) -> TopoBilocale {
    let f = random_frame(rng, cfg);
    let center = f.complemented_elements();
    let t1 = random_subframe(rng, &f, center);
    let t2 = random_subframe(rng, &f, center);
    TopoBilocale::new(f, t1, t2).expect("the complemented elements form a subframe")
}

/// A bispace on 2 to `max_points` points; each topology is saturated from a
/// random subbasis of up to three sets. Draws whose join topology exceeds
/// the subset guard are discarded, so every sample supports the
/// sublocale-enumerating checks.
pub fn random_bispace<R: Rng>(rng: &mut R, max_points: usize, guards: Guards) -> Bispace {
    loop {
        let n = rng.gen_range(2..=max_points.max(2));
        let full: u64 = (1 << n) - 1;
        let mut topology = || {
            let k = rng.gen_range(0..=3);
            let subbasis: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=full)).collect();
            saturate(subbasis, full)
        };
        let (t1, t2) = (topology(), topology());
        let points = (0..n).map(|k| ((b'a' + k as u8) as char).to_string()).collect();
        match Bispace::new(points, t1, t2, guards) {
            Ok(bs) if bs.join_topology().len() <= guards.subsets => return bs,
            Ok(_) | Err(Error::SizeGuardExceeded { .. }) => continue,
            Err(e) => unreachable!("saturated families are topologies: {e}"),
        }
    }
}

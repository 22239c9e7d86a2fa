//! Instance generators for the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use upq_core::arrangements::enumerate_admissible;
use upq_core::{GoodParityParameter, HalfInt, ParamVector, Permutation, Segment};

pub fn seg(b: i64, e: i64) -> Segment {
    Segment::new(HalfInt::from_int(b), HalfInt::from_int(e)).unwrap()
}

pub fn params(segs: &[(i64, i64)]) -> GoodParityParameter {
    GoodParityParameter::new(segs.iter().map(|&(b, e)| seg(b, e)).collect(), false).unwrap()
}

/// Ends descending, beginnings ascending: always admissible.
pub fn sorted(mut segs: Vec<Segment>) -> GoodParityParameter {
    segs.sort_by(|p, q| q.e.cmp(&p.e).then(p.b.cmp(&q.b)));
    GoodParityParameter::new(segs, false).unwrap()
}

/// Segments with doubled beginning in `lo2..=hi2` (step 2) and length `1..=max_m`.
pub fn segment_pool(lo2: i64, hi2: i64, max_m: i64) -> Vec<Segment> {
    let mut out = Vec::new();
    for b2 in (lo2..=hi2).step_by(2) {
        let b = HalfInt::from_doubled(b2);
        for m in 1..=max_m {
            out.push(Segment::new(b, b - (m - 1)).unwrap());
        }
    }
    out
}

/// Every multiset of at most `max_r` pool segments, in sorted order.
pub fn all_parameters(pool: &[Segment], max_r: usize) -> Vec<GoodParityParameter> {
    fn rec(
        pool: &[Segment],
        start: usize,
        left: usize,
        cur: &mut Vec<Segment>,
        out: &mut Vec<GoodParityParameter>,
    ) {
        if !cur.is_empty() {
            out.push(sorted(cur.clone()));
        }
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, 0, max_r, &mut Vec::new(), &mut out);
    out
}

/// Every vector with `0 ≤ v_i ≤ bound_i`.
pub fn grid(bounds: &[i64], lo: i64, pad: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &m in bounds {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=m + pad).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn box_vectors(psi: &GoodParityParameter) -> Vec<Vec<i64>> {
    grid(&psi.lengths(), 0, 0)
}

/// Random parameter with `r` segments, beginnings in `-2..=7`, lengths `1..=5`.
pub fn random_parameter(rng: &mut impl Rng, r: usize) -> GoodParityParameter {
    let half = rng.gen_bool(0.5);
    let segs = (0..r)
        .map(|_| {
            let b2 = 2 * rng.gen_range(-2..=7) + i64::from(half);
            let m = rng.gen_range(1..=5);
            let b = HalfInt::from_doubled(b2);
            Segment::new(b, b - (m - 1)).unwrap()
        })
        .collect();
    sorted(segs)
}

/// A random vector in the box at `sigma`.
pub fn random_in_box(
    rng: &mut impl Rng,
    psi: &GoodParityParameter,
    sigma: &Permutation,
) -> ParamVector {
    let entries = (0..psi.r())
        .map(|h| rng.gen_range(0..=psi.m(sigma.apply(h))))
        .collect();
    ParamVector::new(entries, sigma.clone()).unwrap()
}

pub fn random_arrangement(rng: &mut impl Rng, psi: &GoodParityParameter) -> Permutation {
    enumerate_admissible(psi)
        .unwrap()
        .choose(rng)
        .unwrap()
        .clone()
}

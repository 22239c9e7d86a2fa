//! Instance generators shared by unit tests.

use proptest::prelude::*;

use crate::halfint::HalfInt;
use crate::segment::{GoodParityParameter, Segment};
use crate::transition::ParamVector;

pub fn seg(b: i64, e: i64) -> Segment {
    Segment::new(HalfInt::from_int(b), HalfInt::from_int(e)).unwrap()
}

/// A parameter in the given order, without the parity check.
pub fn psi(segs: &[(i64, i64)]) -> GoodParityParameter {
    GoodParityParameter::new(segs.iter().map(|&(b, e)| seg(b, e)).collect(), false).unwrap()
}

pub fn at_ref(v: &[i64]) -> ParamVector {
    ParamVector::at_reference(v.to_vec())
}

pub fn fixture_a() -> GoodParityParameter {
    psi(&[(7, 5), (7, 3), (6, 1)])
}

pub fn fixture_b() -> GoodParityParameter {
    psi(&[(7, 5), (6, 2), (6, 1)])
}

/// Ends descending, beginnings ascending: always admissible, and appropriate.
pub fn sorted(mut segs: Vec<Segment>) -> GoodParityParameter {
    segs.sort_by(|p, q| q.e.cmp(&p.e).then(p.b.cmp(&q.b)));
    GoodParityParameter::new(segs, false).unwrap()
}

/// Segments with doubled beginning in `lo2..=hi2` (step 2) and length `1..=max_m`.
pub fn segment_pool(lo2: i64, hi2: i64, max_m: i64) -> Vec<Segment> {
    let mut out = Vec::new();
    for b2 in (lo2..=hi2).step_by(2) {
        for m in 1..=max_m {
            let b = HalfInt::from_doubled(b2);
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

/// Every vector with `0 ≤ p_i ≤ m_i`.
pub fn box_vectors(psi: &GoodParityParameter) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for m in psi.lengths() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// A random parameter of at most `max_r` segments with a vector in its box.
pub fn arb_in_box(max_r: usize) -> impl Strategy<Value = (GoodParityParameter, Vec<i64>)> {
    let integral = segment_pool(-2, 12, 4);
    let half = segment_pool(-1, 11, 4);
    prop_oneof![Just(integral), Just(half)]
        .prop_flat_map(move |pool| {
            proptest::collection::vec(proptest::sample::select(pool), 1..=max_r)
        })
        .prop_map(sorted)
        .prop_flat_map(|p| {
            let entries: Vec<_> = p.lengths().into_iter().map(|m| 0..=m).collect();
            (Just(p), entries)
        })
}

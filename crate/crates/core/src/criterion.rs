//! The linear non-vanishing criterion.
//!
//! `A_q(λ)` for the parameter `p` is non-zero exactly when, at every admissible
//! arrangement σ, the transported vector `p^σ` satisfies
//!
//! * **B**: `0 ≤ p^σ_h ≤ m_{σ(h)}` at every position, and
//! * **C**: `min{p_h, q_{h+1}} + min{q_h, p_{h+1}} ≥ #(ν_{σ(h)} ∩ ν_{σ(h+1)})`
//!   at every pair of adjacent positions.
//!
//! [`nonvanishing`] checks all of this literally. [`nonvanishing_simplified`]
//! checks B once and C once per pair of neighbouring segments, which is
//! equivalent and needs no enumeration of arrangements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangements::{
    adjacent_arrangement, enumerate_admissible_bounded, require_admissible, Permutation,
    DEFAULT_MAX_R,
};
use crate::error::{Error, Result};
use crate::segment::{intersection_size, GoodParityParameter, Relation};
use crate::transition::{phi, ParamVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    B,
    C,
}

/// A violated inequality, with enough data to re-check it by hand.
///
/// For B: `indices = [i]`, `values = [p, m_i]` and the failure is
/// `!(0 <= lhs <= rhs)`. For C: `indices = [i, j]`,
/// `values = [p_i, q_j, q_i, p_j]`, `lhs` is the sum of minima and `rhs` the
/// intersection size, and the failure is `lhs < rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub kind: Condition,
    pub indices: Vec<usize>,
    pub sigma: Permutation,
    pub values: Vec<i64>,
    pub lhs: i64,
    pub rhs: i64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        match self.kind {
            Condition::B => write!(
                f,
                "B({}) fails at σ = {}: p = {} not in [0, {}]",
                idx.join(","),
                self.sigma,
                self.lhs,
                self.rhs
            ),
            Condition::C => write!(
                f,
                "C({}) fails at σ = {}: min{{{}, {}}} + min{{{}, {}}} = {} < {}",
                idx.join(","),
                self.sigma,
                self.values[0],
                self.values[1],
                self.values[2],
                self.values[3],
                self.lhs,
                self.rhs
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Verdict {
    pub nonzero: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn nonzero() -> Self {
        Verdict {
            nonzero: true,
            witness: None,
        }
    }

    pub fn zero(witness: Witness) -> Self {
        Verdict {
            nonzero: false,
            witness: Some(witness),
        }
    }
}

fn b_witness(psi: &GoodParityParameter, pv: &ParamVector, h: usize) -> Option<Witness> {
    let i = pv.sigma.apply(h);
    let (p, m) = (pv.entries[h], psi.m(i));
    if (0..=m).contains(&p) {
        return None;
    }
    Some(Witness {
        kind: Condition::B,
        indices: vec![i],
        sigma: pv.sigma.clone(),
        values: vec![p, m],
        lhs: p,
        rhs: m,
    })
}

/// Condition C at positions `h, h+1`; `None` when it holds.
fn c_witness(psi: &GoodParityParameter, pv: &ParamVector, h: usize) -> Option<Witness> {
    let (i, j) = (pv.sigma.apply(h), pv.sigma.apply(h + 1));
    let (pi, pj) = (pv.entries[h], pv.entries[h + 1]);
    let (qi, qj) = (psi.m(i) - pi, psi.m(j) - pj);
    let lhs = pi.min(qj) + qi.min(pj);
    let rhs = intersection_size(psi.segment(i), psi.segment(j));
    if lhs >= rhs {
        return None;
    }
    Some(Witness {
        kind: Condition::C,
        indices: vec![i, j],
        sigma: pv.sigma.clone(),
        values: vec![pi, qj, qi, pj],
        lhs,
        rhs,
    })
}

/// `B^σ(i)`: the entry of segment `i` lies in `[0, m_i]`.
pub fn cond_b(psi: &GoodParityParameter, pv: &ParamVector, i: usize) -> bool {
    let h = pv.sigma.inverse().apply(i);
    b_witness(psi, pv, h).is_none()
}

/// `C^σ(i,j)` for segments `i`, `j` in adjacent positions (in either order).
pub fn cond_c(psi: &GoodParityParameter, pv: &ParamVector, i: usize, j: usize) -> Result<bool> {
    psi.relation(i, j)?;
    let inv = pv.sigma.inverse();
    let (hi, hj) = (inv.apply(i), inv.apply(j));
    if hi.abs_diff(hj) != 1 {
        return Err(Error::InvalidPair(i, j));
    }
    Ok(c_witness(psi, pv, hi.min(hj)).is_none())
}

/// Condition C at positions `h, h+1` as an interval for `p_h + p_{h+1}`.
/// Agrees with [`cond_c`] whenever both entries lie in their boxes.
pub fn cond_c_interval(psi: &GoodParityParameter, pv: &ParamVector, h: usize) -> bool {
    let (x, y) = (pv.sigma.apply(h), pv.sigma.apply(h + 1));
    let (mx, my) = (psi.m(x), psi.m(y));
    let sum = pv.entries[h] + pv.entries[h + 1];
    match psi.rel(x, y) {
        Relation::Precedes | Relation::PrecededBy => {
            // bounds (m_h + m_{h+1} ∓ |a_h - a_{h+1}|)/2, compared doubled
            let da = (psi.segment(x).a() - psi.segment(y).a()).abs();
            mx + my - da <= 2 * sum && 2 * sum <= mx + my + da
        }
        Relation::Contains => my <= sum && sum <= mx,
        Relation::Contained => mx <= sum && sum <= my,
    }
}

/// The full criterion over every admissible arrangement, with the default
/// bound on `r`.
pub fn nonvanishing(psi: &GoodParityParameter, p: &ParamVector) -> Result<Verdict> {
    nonvanishing_bounded(psi, p, DEFAULT_MAX_R)
}

/// The full criterion. The witness is the first failure when arrangements are
/// visited in lexicographic order, checking B at every position and then C at
/// every adjacent pair.
pub fn nonvanishing_bounded(
    psi: &GoodParityParameter,
    p: &ParamVector,
    max_r: usize,
) -> Result<Verdict> {
    psi.check_size(p.entries.len())?;
    require_admissible(psi, &p.sigma)?;
    let all = enumerate_admissible_bounded(psi, max_r).map_err(|e| match e {
        Error::ResourceLimit { what, bound, r, .. } => Error::ResourceLimit {
            what,
            bound,
            r,
            hint: "; use the simplified engine instead",
        },
        other => other,
    })?;
    for sigma in &all {
        let pv = phi(psi, p, sigma)?;
        let r = psi.r();
        if let Some(w) = (0..r).find_map(|h| b_witness(psi, &pv, h)) {
            return Ok(Verdict::zero(w));
        }
        if let Some(w) = (0..r.saturating_sub(1)).find_map(|h| c_witness(psi, &pv, h)) {
            return Ok(Verdict::zero(w));
        }
    }
    Ok(Verdict::nonzero())
}

/// B on the given arrangement, then C once for each pair of neighbouring
/// segments at one arrangement placing them side by side.
pub fn nonvanishing_simplified(psi: &GoodParityParameter, p: &ParamVector) -> Result<Verdict> {
    psi.check_size(p.entries.len())?;
    require_admissible(psi, &p.sigma)?;
    let r = psi.r();
    if let Some(w) = (0..r).find_map(|h| b_witness(psi, p, h)) {
        return Ok(Verdict::zero(w));
    }
    for i in 0..r {
        for j in i + 1..r {
            if !psi.neighbors(i, j)? {
                continue;
            }
            let sigma = adjacent_arrangement(psi, i, j)?.ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "neighbours {} and {} admit no adjacent arrangement",
                    i + 1,
                    j + 1
                ))
            })?;
            let pv = phi(psi, p, &sigma)?;
            let h = sigma.inverse().apply(i).min(sigma.inverse().apply(j));
            if let Some(w) = c_witness(psi, &pv, h) {
                return Ok(Verdict::zero(w));
            }
        }
    }
    Ok(Verdict::nonzero())
}

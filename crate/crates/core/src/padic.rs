//! Extended multi-segments on the p-adic side, and the comparison with real
//! parameters.
//!
//! A vector `p^σ` becomes `(l, η, σ)` with `l_i = min{p, q}` and
//! `η_i = (-1)^{m_{σ(1)} + ... + m_{σ(h)} + 1} sgn(p - q)` at the position `h`
//! of segment `i`. When `n` is odd, the sign condition cuts this down to the
//! quasi-split form and the map becomes two-to-one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangements::{
    enumerate_admissible_bounded, require_admissible, transposition_path, Permutation,
    DEFAULT_MAX_R,
};
use crate::error::{Error, Result};
use crate::segment::{GoodParityParameter, Relation};
use crate::sign::Sign;
use crate::transition::ParamVector;

/// `(l_i, η_i)` per segment index, with the order `σ` they are read in.
///
/// Pairs with `2 l_i = m_i` are stored with `η_i = +`; `l_i < 0` stands for
/// the zero representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtendedMultiSegment {
    pub l: Vec<i64>,
    pub eta: Vec<Sign>,
    pub sigma: Permutation,
}

impl ExtendedMultiSegment {
    /// Canonicalizes `η` where `2 l_i = m_i`.
    pub fn new(
        psi: &GoodParityParameter,
        l: Vec<i64>,
        eta: Vec<Sign>,
        sigma: Permutation,
    ) -> Result<Self> {
        psi.check_size(l.len())?;
        psi.check_size(eta.len())?;
        psi.check_size(sigma.len())?;
        for (i, &li) in l.iter().enumerate() {
            if 2 * li > psi.m(i) {
                return Err(Error::ExtendedOutOfRange {
                    index: i,
                    l: li,
                    m: psi.m(i),
                });
            }
        }
        let mut ems = ExtendedMultiSegment { l, eta, sigma };
        ems.canonicalize(psi);
        Ok(ems)
    }

    fn canonicalize(&mut self, psi: &GoodParityParameter) {
        for i in 0..self.l.len() {
            if 2 * self.l[i] == psi.m(i) {
                self.eta[i] = Sign::Plus;
            }
        }
    }

    /// Every `η_i` negated.
    pub fn flipped(&self, psi: &GoodParityParameter) -> Self {
        let mut out = self.clone();
        out.eta.iter_mut().for_each(|e| *e = -*e);
        out.canonicalize(psi);
        out
    }
}

/// `(-1)^{m_{σ(1)} + ... + m_{σ(h)} + 1}`.
fn position_sign(psi: &GoodParityParameter, sigma: &Permutation, h: usize) -> Sign {
    let partial: i64 = (0..=h).map(|g| psi.m(sigma.apply(g))).sum();
    Sign::power_of_minus_one(partial + 1)
}

pub fn to_extended(psi: &GoodParityParameter, pv: &ParamVector) -> Result<ExtendedMultiSegment> {
    psi.check_size(pv.entries.len())?;
    let r = psi.r();
    let mut l = vec![0; r];
    let mut eta = vec![Sign::Plus; r];
    for h in 0..r {
        let i = pv.sigma.apply(h);
        let (p, q) = (pv.entries[h], pv.q(psi, h));
        l[i] = p.min(q);
        eta[i] = position_sign(psi, &pv.sigma, h) * Sign::of(p - q);
    }
    let mut ems = ExtendedMultiSegment {
        l,
        eta,
        sigma: pv.sigma.clone(),
    };
    ems.canonicalize(psi);
    Ok(ems)
}

/// The inverse of [`to_extended`].
pub fn from_extended(psi: &GoodParityParameter, ems: &ExtendedMultiSegment) -> Result<ParamVector> {
    psi.check_size(ems.l.len())?;
    let entries = (0..psi.r())
        .map(|h| {
            let i = ems.sigma.apply(h);
            let larger_p = ems.eta[i] * position_sign(psi, &ems.sigma, h) == Sign::Plus;
            if larger_p {
                psi.m(i) - ems.l[i]
            } else {
                ems.l[i]
            }
        })
        .collect();
    ParamVector::new(entries, ems.sigma.clone())
}

/// `Π (-1)^{⌊m_i/2⌋ + l_i} η_i^{m_i}`.
pub fn sign_of(psi: &GoodParityParameter, ems: &ExtendedMultiSegment) -> Result<Sign> {
    psi.check_size(ems.l.len())?;
    let mut s = Sign::Plus;
    for i in 0..psi.r() {
        let (l, m) = (ems.l[i], psi.m(i));
        if l < 0 {
            return Err(Error::UndefinedSign { index: i, l });
        }
        s = s * Sign::power_of_minus_one(m / 2 + l) * ems.eta[i].pow(m);
    }
    Ok(s)
}

/// The map onto the p-adic parameters: for odd `n`, multiply every `η_i` by
/// [`sign_of`]; for even `n`, nothing.
pub fn project_ef(
    psi: &GoodParityParameter,
    ems: &ExtendedMultiSegment,
) -> Result<ExtendedMultiSegment> {
    if psi.n() % 2 == 0 {
        return Ok(ems.clone());
    }
    match sign_of(psi, ems)? {
        Sign::Plus => Ok(ems.clone()),
        Sign::Minus => Ok(ems.flipped(psi)),
    }
}

/// The swap across positions `h, h+1` when the earlier segment `i` contains
/// the later segment `j`.
fn transition_outer(
    psi: &GoodParityParameter,
    ems: &ExtendedMultiSegment,
    h: usize,
) -> ExtendedMultiSegment {
    let (i, j) = (ems.sigma.apply(h), ems.sigma.apply(h + 1));
    let (mi, mj) = (psi.m(i), psi.m(j));
    let (li, lj) = (ems.l[i], ems.l[j]);
    let (ei, ej) = (ems.eta[i], ems.eta[j]);
    let mut out = ems.clone();
    out.sigma = ems.sigma.swapped(h);
    out.eta[j] = Sign::power_of_minus_one(1 + mi) * ej;
    if ei == Sign::power_of_minus_one(1 + mj) * ej && mi - 2 * li < 2 * (mj - 2 * lj) {
        out.l[i] = mi - li - mj + 2 * lj;
        out.eta[i] = Sign::power_of_minus_one(1 + mj) * ei;
    } else {
        let s = (Sign::power_of_minus_one(1 + mj) * ei * ej).to_i64();
        out.l[i] = li + s * (mj - 2 * lj);
        out.eta[i] = Sign::power_of_minus_one(mj) * ei;
    }
    out.canonicalize(psi);
    out
}

/// The transition across positions `h, h+1` (0-based) of `ems.sigma`.
///
/// The closed form covers the earlier segment containing the later one; the
/// other containment case is its inverse, found among the few values of
/// `l_i` the closed form can move between.
pub fn padic_transition(
    psi: &GoodParityParameter,
    ems: &ExtendedMultiSegment,
    h: usize,
) -> Result<ExtendedMultiSegment> {
    psi.check_size(ems.l.len())?;
    if h + 1 >= psi.r() {
        return Err(Error::InvalidSwap { position: h });
    }
    let (i, j) = (ems.sigma.apply(h), ems.sigma.apply(h + 1));
    match psi.rel(i, j) {
        Relation::Contains => Ok(transition_outer(psi, ems, h)),
        Relation::Contained => {
            // after the swap, j comes first and contains i
            let (mi, mj) = (psi.m(i), psi.m(j));
            let (li, lj) = (ems.l[i], ems.l[j]);
            let eta_i = Sign::power_of_minus_one(1 + mj) * ems.eta[i];
            let d = mi - 2 * li;
            let mut found = None;
            for lj0 in [mj - lj - mi + 2 * li, lj - d, lj + d] {
                if 2 * lj0 > mj {
                    continue;
                }
                for ej0 in [Sign::Plus, Sign::Minus] {
                    let mut cand = ems.clone();
                    cand.sigma = ems.sigma.swapped(h);
                    cand.l[j] = lj0;
                    cand.eta[j] = ej0;
                    cand.eta[i] = eta_i;
                    cand.canonicalize(psi);
                    if transition_outer(psi, &cand, h) == *ems
                        && found.as_ref().is_none_or(|f| f == &cand)
                    {
                        found = Some(cand);
                    }
                }
            }
            found.ok_or_else(|| {
                Error::InvariantViolation(format!("no preimage for the swap at position {}", h + 1))
            })
        }
        Relation::Precedes | Relation::PrecededBy => Err(Error::InvalidSwap { position: h }),
    }
}

/// Applies [`padic_transition`] along [`transposition_path`] to reach `tau`.
pub fn padic_transport(
    psi: &GoodParityParameter,
    ems: &ExtendedMultiSegment,
    tau: &Permutation,
) -> Result<ExtendedMultiSegment> {
    require_admissible(psi, tau)?;
    let mut cur = ems.clone();
    for h in transposition_path(psi, &ems.sigma, tau)? {
        cur = padic_transition(psi, &cur, h)?;
    }
    Ok(cur)
}

/// The necessary condition on segments `i`, `j` in adjacent positions of
/// `ems.sigma`, with `i` the earlier one. Each relation splits on whether
/// `η_i = (-1)^{1+m_j} η_j`.
pub fn padic_cond_c(
    psi: &GoodParityParameter,
    ems: &ExtendedMultiSegment,
    i: usize,
    j: usize,
) -> Result<bool> {
    psi.relation(i, j)?;
    let inv = ems.sigma.inverse();
    let (hi, hj) = (inv.apply(i), inv.apply(j));
    if hi.abs_diff(hj) != 1 {
        return Err(Error::InvalidPair(i, j));
    }
    let (i, j) = if hi < hj { (i, j) } else { (j, i) };
    let (mi, mj) = (psi.m(i), psi.m(j));
    let (li, lj) = (ems.l[i], ems.l[j]);
    let aligned = ems.eta[i] == Sign::power_of_minus_one(1 + mj) * ems.eta[j];
    let ok = match psi.rel(i, j) {
        Relation::Precedes => {
            let (ai, aj) = (psi.segment(i).a(), psi.segment(j).a());
            if aligned {
                aj - ai - mj + mi <= 2 * (li - lj) && 2 * (li - lj) <= ai - aj + mi - mj
            } else {
                2 * (li + lj) >= aj - ai + mj + mi
            }
        }
        Relation::Contains => {
            if aligned {
                0 <= li - lj && li - lj <= mi - mj
            } else {
                li + lj >= mj
            }
        }
        Relation::Contained => {
            if aligned {
                0 <= lj - li && lj - li <= mj - mi
            } else {
                li + lj >= mi
            }
        }
        Relation::PrecededBy => {
            return Err(Error::InvariantViolation(format!(
                "segment {} precedes the earlier segment {}",
                j + 1,
                i + 1
            )))
        }
    };
    Ok(ok)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum PadicWitness {
    /// `l_i < 0` at the order `sigma`.
    NegativeL {
        index: usize,
        l: i64,
        sigma: Permutation,
    },
    /// The necessary condition fails for adjacent `i`, `j` at `sigma`.
    Adjacent {
        indices: [usize; 2],
        l: [i64; 2],
        eta: [Sign; 2],
        sigma: Permutation,
    },
}

impl fmt::Display for PadicWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicWitness::NegativeL { index, l, sigma } => {
                write!(f, "l_{} = {l} < 0 at σ = {sigma}", index + 1)
            }
            PadicWitness::Adjacent {
                indices,
                l,
                eta,
                sigma,
            } => write!(
                f,
                "C({},{}) fails at σ = {sigma}: (l, η) = ({}, {}), ({}, {})",
                indices[0] + 1,
                indices[1] + 1,
                l[0],
                eta[0],
                l[1],
                eta[1]
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicVerdict {
    pub nonzero: bool,
    pub witness: Option<PadicWitness>,
}

/// The p-adic criterion: at every admissible order, every `l_i ≥ 0` and every
/// adjacent pair meets [`padic_cond_c`]. Needs every segment end `≥ 0`.
pub fn padic_nonvanishing(
    psi: &GoodParityParameter,
    ems: &ExtendedMultiSegment,
) -> Result<PadicVerdict> {
    psi.check_size(ems.l.len())?;
    require_padic_domain(psi)?;
    require_admissible(psi, &ems.sigma)?;
    for sigma in enumerate_admissible_bounded(psi, DEFAULT_MAX_R)? {
        let cur = padic_transport(psi, ems, &sigma)?;
        let zero = |w| {
            Ok(PadicVerdict {
                nonzero: false,
                witness: Some(w),
            })
        };
        for h in 0..psi.r() {
            let i = sigma.apply(h);
            if cur.l[i] < 0 {
                return zero(PadicWitness::NegativeL {
                    index: i,
                    l: cur.l[i],
                    sigma,
                });
            }
        }
        for h in 0..psi.r().saturating_sub(1) {
            let (i, j) = (sigma.apply(h), sigma.apply(h + 1));
            if !padic_cond_c(psi, &cur, i, j)? {
                return zero(PadicWitness::Adjacent {
                    indices: [i, j],
                    l: [cur.l[i], cur.l[j]],
                    eta: [cur.eta[i], cur.eta[j]],
                    sigma,
                });
            }
        }
    }
    Ok(PadicVerdict {
        nonzero: true,
        witness: None,
    })
}

/// Every segment end `e(ν_i) ≥ 0`.
pub fn require_padic_domain(psi: &GoodParityParameter) -> Result<()> {
    match psi.segments().iter().position(|s| s.e.doubled() < 0) {
        Some(index) => Err(Error::OutOfDomain {
            index,
            e: psi.segment(index).e,
        }),
        None => Ok(()),
    }
}

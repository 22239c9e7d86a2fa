//! Parameters `p^σ` on admissible arrangements and the transition maps between them.
//!
//! Entry `h` of a [`ParamVector`] belongs to segment `σ(h)`; its complement is
//! `q_h = m_{σ(h)} - p_h`. Swapping two adjacent segments in containment
//! rewrites the two entries affinely and leaves the rest alone.

use serde::{Deserialize, Serialize};

use crate::arrangements::{require_admissible, transposition_path, Permutation};
use crate::error::{Error, Result};
use crate::segment::{GoodParityParameter, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamVector {
    pub entries: Vec<i64>,
    pub sigma: Permutation,
}

impl ParamVector {
    pub fn new(entries: Vec<i64>, sigma: Permutation) -> Result<Self> {
        if entries.len() != sigma.len() {
            return Err(Error::SizeMismatch {
                expected: sigma.len(),
                got: entries.len(),
            });
        }
        Ok(ParamVector { entries, sigma })
    }

    /// A vector on the reference order.
    pub fn at_reference(entries: Vec<i64>) -> Self {
        let r = entries.len();
        ParamVector {
            entries,
            sigma: Permutation::identity(r),
        }
    }

    /// The real-form rank `Σ p_h`.
    pub fn rank(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// `q_h = m_{σ(h)} - p_h`.
    pub fn q(&self, psi: &GoodParityParameter, h: usize) -> i64 {
        psi.m(self.sigma.apply(h)) - self.entries[h]
    }

    /// The entry belonging to segment `i`.
    pub fn entry_of(&self, i: usize) -> i64 {
        self.entries[self.sigma.inverse().apply(i)]
    }

    pub fn in_box(&self, psi: &GoodParityParameter) -> bool {
        (0..self.entries.len()).all(|h| (0..=psi.m(self.sigma.apply(h))).contains(&self.entries[h]))
    }
}

/// The transition across positions `h, h+1`.
pub fn phi_adjacent(psi: &GoodParityParameter, pv: &ParamVector, h: usize) -> Result<ParamVector> {
    psi.check_size(pv.entries.len())?;
    if h + 1 >= pv.entries.len() {
        return Err(Error::InvalidSwap { position: h });
    }
    let (x, y) = (pv.sigma.apply(h), pv.sigma.apply(h + 1));
    let (p1, p2) = (pv.entries[h], pv.entries[h + 1]);
    let (new1, new2) = match psi.rel(x, y) {
        Relation::Contains => {
            let q2 = psi.m(y) - p2;
            (q2, p1 + p2 - q2)
        }
        Relation::Contained => {
            let q1 = psi.m(x) - p1;
            (p1 + p2 - q1, q1)
        }
        Relation::Precedes | Relation::PrecededBy => {
            return Err(Error::InvalidSwap { position: h })
        }
    };
    let mut entries = pv.entries.clone();
    entries[h] = new1;
    entries[h + 1] = new2;
    Ok(ParamVector {
        entries,
        sigma: pv.sigma.swapped(h),
    })
}

/// Applies [`phi_adjacent`] along a list of positions.
pub fn phi_along(
    psi: &GoodParityParameter,
    pv: &ParamVector,
    path: &[usize],
) -> Result<ParamVector> {
    let mut cur = pv.clone();
    for &h in path {
        cur = phi_adjacent(psi, &cur, h)?;
    }
    Ok(cur)
}

/// Transports `pv` to the arrangement `τ` along [`transposition_path`].
pub fn phi(psi: &GoodParityParameter, pv: &ParamVector, tau: &Permutation) -> Result<ParamVector> {
    psi.check_size(pv.entries.len())?;
    require_admissible(psi, tau)?;
    let path = transposition_path(psi, &pv.sigma, tau)?;
    phi_along(psi, pv, &path)
}

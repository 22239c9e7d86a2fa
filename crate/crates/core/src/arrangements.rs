//! Admissible arrangements, adjacency sets and transposition paths.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::segment::{GoodParityParameter, Relation, Segment};

/// Default cap on `r` for anything that enumerates all admissible permutations.
pub const DEFAULT_MAX_R: usize = 8;

/// A permutation σ of `0..r`, stored as its image list `σ(0), ..., σ(r-1)`.
///
/// Composition follows functions: `(σ∘τ)(h) = σ(τ(h))`. Composing with the
/// adjacent transposition `s_h` on the right swaps the images at `h` and `h+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Permutation {
            images: (0..r).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &x in &images {
            if x >= r || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{r}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// From a 1-based image list such as `[2, 1, 3]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!(
                "{images:?}: images are 1-based"
            )));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
            .map_err(|_| Error::InvalidPermutation(format!("{images:?} is not a permutation")))
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    /// All permutations of `0..r` in lexicographic order of image lists.
    pub fn all(r: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(r);
        let mut used = vec![false; r];
        fn rec(r: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == r {
                out.push(Permutation {
                    images: cur.clone(),
                });
                return;
            }
            for x in 0..r {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(r, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        rec(r, &mut cur, &mut used, &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, h: usize) -> usize {
        self.images[h]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (h, &x) in self.images.iter().enumerate() {
            inv[x] = h;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&h| self.images[h]).collect(),
        }
    }

    /// `self ∘ s_h`.
    pub fn swapped(&self, h: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(h, h + 1);
        Permutation { images }
    }

    /// Number of inversions, i.e. the Coxeter length.
    pub fn inversions(&self) -> usize {
        let v = &self.images;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(h, &x)| h == x)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl fmt::Display for Permutation {
    /// 1-based, e.g. `(2,1,3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// No segment is preceded by a later one.
pub fn is_admissible_arrangement(segments: &[Segment]) -> bool {
    (0..segments.len()).all(|k| (0..k).all(|h| !segments[k].precedes(&segments[h])))
}

pub fn is_admissible(psi: &GoodParityParameter, sigma: &Permutation) -> Result<bool> {
    psi.check_size(sigma.len())?;
    let arranged: Vec<Segment> = sigma.images().iter().map(|&i| *psi.segment(i)).collect();
    Ok(is_admissible_arrangement(&arranged))
}

pub(crate) fn require_admissible(psi: &GoodParityParameter, sigma: &Permutation) -> Result<()> {
    if !is_admissible(psi, sigma)? {
        return Err(Error::InadmissiblePermutation(sigma.to_string()));
    }
    Ok(())
}

fn check_bound(psi: &GoodParityParameter, max_r: usize, what: &'static str) -> Result<()> {
    if psi.r() > max_r {
        return Err(Error::ResourceLimit {
            what,
            bound: max_r,
            r: psi.r(),
            hint: "; raise the bound with --max-r",
        });
    }
    Ok(())
}

/// Σ_r in lexicographic order, with the default bound on `r`.
pub fn enumerate_admissible(psi: &GoodParityParameter) -> Result<Vec<Permutation>> {
    enumerate_admissible_bounded(psi, DEFAULT_MAX_R)
}

/// Σ_r in lexicographic order. Depth-first: a segment may be placed next only
/// if no segment still waiting precedes it, so every partial list extends.
pub fn enumerate_admissible_bounded(
    psi: &GoodParityParameter,
    max_r: usize,
) -> Result<Vec<Permutation>> {
    check_bound(psi, max_r, "enumeration of admissible permutations")?;
    let r = psi.r();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    let mut used = vec![false; r];
    fn rec(
        psi: &GoodParityParameter,
        cur: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Permutation>,
    ) {
        let r = psi.r();
        if cur.len() == r {
            out.push(Permutation {
                images: cur.clone(),
            });
            return;
        }
        for x in 0..r {
            if used[x] {
                continue;
            }
            let blocked =
                (0..r).any(|y| !used[y] && y != x && psi.segment(y).precedes(psi.segment(x)));
            if blocked {
                continue;
            }
            used[x] = true;
            cur.push(x);
            rec(psi, cur, used, out);
            cur.pop();
            used[x] = false;
        }
    }
    rec(psi, &mut cur, &mut used, &mut out);
    Ok(out)
}

/// Σ_r(i,j): admissible permutations placing `i` and `j` in adjacent positions.
pub fn sigma_pairs(psi: &GoodParityParameter, i: usize, j: usize) -> Result<Vec<Permutation>> {
    sigma_pairs_bounded(psi, i, j, DEFAULT_MAX_R)
}

pub fn sigma_pairs_bounded(
    psi: &GoodParityParameter,
    i: usize,
    j: usize,
    max_r: usize,
) -> Result<Vec<Permutation>> {
    psi.relation(i, j)?;
    Ok(enumerate_admissible_bounded(psi, max_r)?
        .into_iter()
        .filter(|s| {
            let inv = s.inverse();
            inv.apply(i).abs_diff(inv.apply(j)) == 1
        })
        .collect())
}

/// Some segment lies strictly between `ν_i` and `ν_j` in precedence, which is
/// exactly when Σ_r(i,j) is empty.
pub fn precedence_between(psi: &GoodParityParameter, i: usize, j: usize) -> bool {
    let (si, sj) = (psi.segment(i), psi.segment(j));
    (0..psi.r()).filter(|&k| k != i && k != j).any(|k| {
        let sk = psi.segment(k);
        (si.precedes(sk) && sk.precedes(sj)) || (sj.precedes(sk) && sk.precedes(si))
    })
}

/// One member of Σ_r(i,j), built without enumerating Σ_r: topologically sort
/// the precedence order with `i`, `j` glued into a single node, taking the
/// smallest available index first. `None` when Σ_r(i,j) is empty.
pub fn adjacent_arrangement(
    psi: &GoodParityParameter,
    i: usize,
    j: usize,
) -> Result<Option<Permutation>> {
    psi.relation(i, j)?;
    let r = psi.r();
    let seg = |x: usize| psi.segment(x);
    let node_precedes = |x: usize, y: usize| -> bool {
        let xs: &[usize] = if x == i {
            &[i, j]
        } else {
            std::slice::from_ref(&x)
        };
        let ys: &[usize] = if y == i {
            &[i, j]
        } else {
            std::slice::from_ref(&y)
        };
        xs.iter()
            .any(|&a| ys.iter().any(|&b| seg(a).precedes(seg(b))))
    };
    let nodes: Vec<usize> = (0..r).filter(|&x| x != j).collect();
    let mut placed = vec![false; r];
    let mut images = Vec::with_capacity(r);
    for _ in 0..nodes.len() {
        let next = nodes.iter().copied().find(|&x| {
            !placed[x]
                && nodes
                    .iter()
                    .all(|&y| y == x || placed[y] || !node_precedes(y, x))
        });
        let Some(x) = next else {
            return Ok(None);
        };
        placed[x] = true;
        if x == i {
            if seg(j).precedes(seg(i)) {
                images.extend([j, i]);
            } else {
                images.extend([i, j]);
            }
        } else {
            images.push(x);
        }
    }
    let sigma = Permutation::from_images(images)?;
    debug_assert!(is_admissible(psi, &sigma)?);
    Ok(Some(sigma))
}

/// Adjacent transpositions `s_{h_1}, ..., s_{h_l}` (given by their left
/// positions) with `σ∘s_{h_1}∘…∘s_{h_l} = τ`, every partial composite
/// admissible and `l` equal to the length of `σ⁻¹τ`.
///
/// Writing `ρ = σ⁻¹τ`, repeatedly swap at the largest `h` with `ρ(h) > h`
/// until `ρ` is the identity; the swaps, read backwards, form the path.
pub fn transposition_path(
    psi: &GoodParityParameter,
    sigma: &Permutation,
    tau: &Permutation,
) -> Result<Vec<usize>> {
    require_admissible(psi, sigma)?;
    require_admissible(psi, tau)?;
    let mut rho = sigma.inverse().compose(tau);
    let mut swaps = Vec::with_capacity(rho.inversions());
    while let Some(h) = (0..rho.len()).rev().find(|&h| rho.apply(h) > h) {
        rho = rho.swapped(h);
        swaps.push(h);
    }
    swaps.reverse();
    Ok(swaps)
}

/// The arrangement used by the tableau engine: ends descending, then
/// beginnings ascending. Equal segments go later index first, so that each
/// position is contained in (never contains) a later equal copy.
pub fn appropriate_arrangement(psi: &GoodParityParameter) -> Permutation {
    let mut idx: Vec<usize> = (0..psi.r()).collect();
    idx.sort_by(|&x, &y| {
        let (sx, sy) = (psi.segment(x), psi.segment(y));
        sy.e.cmp(&sx.e).then(sx.b.cmp(&sy.b)).then(y.cmp(&x))
    });
    Permutation { images: idx }
}

/// Whether every earlier position precedes or is contained in every later one.
pub fn is_appropriate(psi: &GoodParityParameter, sigma: &Permutation) -> bool {
    let v = sigma.images();
    (0..v.len()).all(|h| {
        (h + 1..v.len()).all(|k| {
            matches!(
                psi.rel(v[h], v[k]),
                Relation::Precedes | Relation::Contained
            )
        })
    })
}

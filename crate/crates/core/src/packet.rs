//! Whole packets: every parameter of a given rank, the non-zero ones with
//! their invariants, and the union over all ranks.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangements::DEFAULT_MAX_R;
use crate::criterion::{nonvanishing_bounded, nonvanishing_simplified};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::padic::{project_ef, require_padic_domain, to_extended, ExtendedMultiSegment};
use crate::segment::GoodParityParameter;
use crate::tableau::{trapa_reduce, Antitableau, Reduction, Row};
use crate::transition::ParamVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketEntry {
    pub p: ParamVector,
    /// `(p_i, q_i)` per segment.
    pub levi: Vec<(i64, i64)>,
    pub lambda: Vec<HalfInt>,
    pub antitableau: Antitableau,
    pub rows: Vec<Row>,
    /// The p-adic parameter, when every segment end is `≥ 0`.
    pub padic_image: Option<ExtendedMultiSegment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packet {
    pub p_rank: i64,
    /// Number of parameters examined.
    pub scanned: usize,
    pub entries: Vec<PacketEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketOptions {
    /// Also run the full criterion and the tableau reduction on every
    /// parameter and fail on any disagreement.
    pub verify: bool,
    pub max_r: usize,
}

impl Default for PacketOptions {
    fn default() -> Self {
        PacketOptions {
            verify: false,
            max_r: DEFAULT_MAX_R,
        }
    }
}

/// All `p` with `0 ≤ p_i ≤ m_i` and `Σ p_i = p_rank`, in lexicographic order.
pub fn enumerate_params(psi: &GoodParityParameter, p_rank: i64) -> Result<Vec<ParamVector>> {
    let n = psi.n();
    if !(0..=n).contains(&p_rank) {
        return Err(Error::RankOutOfRange { rank: p_rank, n });
    }
    let m = psi.lengths();
    // capacity left after position h
    let mut tail = vec![0; m.len() + 1];
    for h in (0..m.len()).rev() {
        tail[h] = tail[h + 1] + m[h];
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m.len());
    fn rec(m: &[i64], tail: &[i64], left: i64, cur: &mut Vec<i64>, out: &mut Vec<ParamVector>) {
        let h = cur.len();
        if h == m.len() {
            out.push(ParamVector::at_reference(cur.clone()));
            return;
        }
        let lo = (left - tail[h + 1]).max(0);
        for x in lo..=m[h].min(left) {
            cur.push(x);
            rec(m, tail, left - x, cur, out);
            cur.pop();
        }
    }
    rec(&m, &tail, p_rank, &mut cur, &mut out);
    Ok(out)
}

fn entry_for(
    psi: &GoodParityParameter,
    p: &ParamVector,
    opts: PacketOptions,
) -> Result<Option<PacketEntry>> {
    let verdict = nonvanishing_simplified(psi, p)?;
    let reduction = if verdict.nonzero || opts.verify {
        Some(trapa_reduce(psi, p)?)
    } else {
        None
    };
    if opts.verify {
        let full = nonvanishing_bounded(psi, p, opts.max_r)?;
        let tab = reduction.as_ref().is_some_and(Reduction::is_nonzero);
        if full.nonzero != verdict.nonzero || tab != verdict.nonzero {
            return Err(Error::InvariantViolation(format!(
                "engines disagree at p = {:?}: full {}, simplified {}, tableau {}",
                p.entries, full.nonzero, verdict.nonzero, tab
            )));
        }
    }
    if !verdict.nonzero {
        return Ok(None);
    }
    let Some(Reduction::NonZero {
        antitableau, rows, ..
    }) = reduction
    else {
        return Err(Error::InvariantViolation(format!(
            "the tableau reduction of p = {:?} is zero but the criterion is not",
            p.entries
        )));
    };
    let padic_image = match require_padic_domain(psi) {
        Ok(()) => Some(project_ef(psi, &to_extended(psi, p)?)?),
        Err(_) => None,
    };
    Ok(Some(PacketEntry {
        levi: (0..psi.r())
            .map(|i| (p.entry_of(i), psi.m(i) - p.entry_of(i)))
            .collect(),
        lambda: psi.lambda_values(),
        p: p.clone(),
        antitableau,
        rows,
        padic_image,
    }))
}

/// The non-zero parameters of rank `p_rank` with their invariants, in
/// enumeration order.
pub fn compute_packet(
    psi: &GoodParityParameter,
    p_rank: i64,
    opts: PacketOptions,
) -> Result<Packet> {
    let params = enumerate_params(psi, p_rank)?;
    let found: Vec<Option<PacketEntry>> = params
        .par_iter()
        .map(|p| entry_for(psi, p, opts))
        .collect::<Result<_>>()?;
    Ok(Packet {
        p_rank,
        scanned: params.len(),
        entries: found.into_iter().flatten().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub multiplicity_free: bool,
    /// Pairs of entry indices with the same antitableau and signed rows.
    pub collisions: Vec<(usize, usize)>,
}

pub fn multiplicity_report(entries: &[PacketEntry]) -> MultiplicityReport {
    let mut first: HashMap<(&Antitableau, &[Row]), usize> = HashMap::new();
    let mut collisions = Vec::new();
    for (idx, e) in entries.iter().enumerate() {
        match first.get(&(&e.antitableau, &e.rows[..])) {
            Some(&earlier) => collisions.push((earlier, idx)),
            None => {
                first.insert((&e.antitableau, &e.rows), idx);
            }
        }
    }
    MultiplicityReport {
        multiplicity_free: collisions.is_empty(),
        collisions,
    }
}

/// How the p-adic images of the whole union distribute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberAudit {
    pub n_odd: bool,
    /// Expected preimages per image: 2 for odd `n`, 1 for even.
    pub expected_fiber: usize,
    pub images: usize,
    pub preimages: usize,
    /// Fibers of the wrong size, or pairs other than `p` and `m - p`.
    pub bad_fibers: Vec<Vec<Vec<i64>>>,
}

impl FiberAudit {
    pub fn ok(&self) -> bool {
        self.bad_fibers.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArthurVoganReport {
    pub n: i64,
    pub packets: Vec<Packet>,
    pub total: usize,
    /// Present when every segment end is `≥ 0`.
    pub fiber_audit: Option<FiberAudit>,
}

/// Packets of every rank `0..=n`, and the fiber audit of the p-adic images.
pub fn arthur_vogan(psi: &GoodParityParameter, opts: PacketOptions) -> Result<ArthurVoganReport> {
    let n = psi.n();
    let packets = (0..=n)
        .map(|rank| compute_packet(psi, rank, opts))
        .collect::<Result<Vec<_>>>()?;
    let total = packets.iter().map(|p| p.entries.len()).sum();
    let fiber_audit = require_padic_domain(psi)
        .is_ok()
        .then(|| audit_fibers(psi, &packets));
    Ok(ArthurVoganReport {
        n,
        packets,
        total,
        fiber_audit,
    })
}

/// A p-adic image keyed by `l` and the η signs as integers.
type ImageKey = (Vec<i64>, Vec<i64>);

fn audit_fibers(psi: &GoodParityParameter, packets: &[Packet]) -> FiberAudit {
    let mut fibers: BTreeMap<ImageKey, Vec<Vec<i64>>> = BTreeMap::new();
    for entry in packets.iter().flat_map(|p| &p.entries) {
        if let Some(img) = &entry.padic_image {
            let key = (img.l.clone(), img.eta.iter().map(|s| s.to_i64()).collect());
            fibers.entry(key).or_default().push(entry.p.entries.clone());
        }
    }
    let n_odd = psi.n() % 2 == 1;
    let expected_fiber = if n_odd { 2 } else { 1 };
    let m = psi.lengths();
    let bad_fibers: Vec<_> = fibers
        .values()
        .filter(|pre| {
            if pre.len() != expected_fiber {
                return true;
            }
            n_odd
                && pre[1]
                    .iter()
                    .zip(&pre[0])
                    .zip(&m)
                    .any(|((b, a), mi)| *b != mi - a)
        })
        .cloned()
        .collect();
    FiberAudit {
        n_odd,
        expected_fiber,
        images: fibers.len(),
        preimages: fibers.values().map(Vec::len).sum(),
        bad_fibers,
    }
}

//! Signed tableaux, ν-fillings and Trapa's reduction to a ν-antitableau.
//!
//! Building from `p^σ` adds one skew column per segment: column `k` puts `p_k`
//! pluses at the ends of minus-ending rows and `q_k` minuses at the ends of
//! plus-ending rows, longest rows first, and opens new rows with the rest.
//! Component `i` of column `k` is the set of boxes landing in rows that had
//! length `k - i`; component `k` is the new rows. The type of the column is
//! `L_{k,i}`, the number of boxes in components `1..=i`.
//!
//! Filling column `k` with `ν_k` from the top gives the fill type
//! `ν_{k;i} = b(ν_k) + 1 - L_{k,i}`. Trapa's operation rewrites two adjacent
//! columns in closed form on these types, or detects that the filling is
//! equivalent to zero.

use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use crate::arrangements::{appropriate_arrangement, enumerate_admissible_bounded, DEFAULT_MAX_R};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::segment::{intersection_size, GoodParityParameter, Segment};
use crate::sign::Sign;
use crate::transition::{phi, ParamVector};

/// `L_{k,0..=k}` with `L_{k,0} = 0`, read as constant outside `0..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewColumnType {
    l: Vec<i64>,
}

impl SkewColumnType {
    pub fn new(l: Vec<i64>) -> Result<Self> {
        let ok = l.len() >= 2 && l[0] == 0 && l.windows(2).all(|w| w[0] <= w[1]);
        if !ok {
            return Err(Error::InvariantViolation(format!(
                "{l:?} is not a column type"
            )));
        }
        Ok(SkewColumnType { l })
    }

    /// Number of components.
    pub fn k(&self) -> usize {
        self.l.len() - 1
    }

    pub fn at(&self, i: i64) -> i64 {
        self.l[i.clamp(0, self.k() as i64) as usize]
    }

    /// Column length `m_k = L_{k,k}`.
    pub fn m(&self) -> i64 {
        self.l[self.k()]
    }

    pub fn values(&self) -> &[i64] {
        &self.l
    }
}

/// `L^+_{k,i}` and `L^-_{k,i}`: the pluses and minuses among the first `i` components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedColumnType {
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
}

/// `ν_{k;0..=k}`, read as constant outside `0..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NuFillType {
    values: Vec<HalfInt>,
}

impl NuFillType {
    pub fn from_type(top: HalfInt, skew: &SkewColumnType) -> Self {
        NuFillType {
            values: skew.values().iter().map(|&l| top - l).collect(),
        }
    }

    /// From `ν_{k;0..=k}` directly; the differences to the top must form a column type.
    pub fn from_values(values: Vec<HalfInt>) -> Result<Self> {
        let fill = NuFillType { values };
        let diffs: Option<Vec<i64>> = fill
            .values
            .iter()
            .map(|&v| (fill.top() - v).to_integer())
            .collect();
        match diffs {
            Some(l) => SkewColumnType::new(l).map(|_| fill),
            None => Err(Error::InvariantViolation(format!(
                "{:?} mixes integrality",
                fill.values
            ))),
        }
    }

    pub fn k(&self) -> usize {
        self.values.len() - 1
    }

    /// `ν_{k;0} = b(ν_k) + 1`.
    pub fn top(&self) -> HalfInt {
        self.values[0]
    }

    pub fn at(&self, i: i64) -> HalfInt {
        self.values[i.clamp(0, self.k() as i64) as usize]
    }

    pub fn values(&self) -> &[HalfInt] {
        &self.values
    }

    /// The segment filling the column: `[ν_{k;0} - 1, ν_{k;k}]`.
    pub fn segment(&self) -> Segment {
        Segment {
            b: self.top() - 1,
            e: self.values[self.k()],
        }
    }

    pub fn skew_type(&self) -> SkewColumnType {
        SkewColumnType {
            l: self
                .values
                .iter()
                .map(|&v| (self.top() - v).doubled() / 2)
                .collect(),
        }
    }
}

/// A row of the signed tableau. Signs alternate along a row, so the length
/// and the last sign determine it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Row {
    pub length: usize,
    pub sign: Sign,
}

/// Rows sorted longest first, minus-ending before plus-ending.
pub fn canonical_rows(mut rows: Vec<Row>) -> Vec<Row> {
    rows.sort_by_key(|r| (Reverse(r.length), r.sign));
    rows
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuiltColumn {
    pub skew: SkewColumnType,
    pub signed: SignedColumnType,
    pub fill: NuFillType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauState {
    pub columns: Vec<BuiltColumn>,
    /// Canonical order.
    pub rows: Vec<Row>,
}

impl TableauState {
    pub fn fill_types(&self) -> Vec<NuFillType> {
        self.columns.iter().map(|c| c.fill.clone()).collect()
    }
}

/// Builds the signed tableau and the fill types of `p^σ`, one column per position.
pub fn build_tableau(psi: &GoodParityParameter, pv: &ParamVector) -> Result<TableauState> {
    psi.check_size(pv.entries.len())?;
    let r = psi.r();
    // ending[len] = (plus-ending, minus-ending) rows of that length
    let mut plus = vec![0i64; r + 2];
    let mut minus = vec![0i64; r + 2];
    let mut columns = Vec::with_capacity(r);
    for k in 1..=r {
        let seg = psi.segment(pv.sigma.apply(k - 1));
        let (m, p) = (seg.len(), pv.entries[k - 1]);
        if !(0..=m).contains(&p) {
            return Err(Error::ZeroParameter {
                position: k - 1,
                value: p,
                m,
            });
        }
        let q = m - p;
        let mut lp = vec![0i64; k + 1];
        let mut lm = vec![0i64; k + 1];
        let (mut plus_seen, mut minus_seen) = (0, 0);
        for i in 1..k {
            plus_seen += plus[k - i];
            minus_seen += minus[k - i];
            lp[i] = minus_seen.min(p);
            lm[i] = plus_seen.min(q);
        }
        lp[k] = p;
        lm[k] = q;
        let (old_plus, old_minus) = (plus.clone(), minus.clone());
        for i in 1..k {
            let len = k - i;
            let (a, b) = (lp[i] - lp[i - 1], lm[i] - lm[i - 1]);
            debug_assert!(a <= old_minus[len] && b <= old_plus[len]);
            minus[len] -= a;
            plus[len + 1] += a;
            plus[len] -= b;
            minus[len + 1] += b;
        }
        plus[1] += lp[k] - lp[k - 1];
        minus[1] += lm[k] - lm[k - 1];
        let l: Vec<i64> = lp.iter().zip(&lm).map(|(a, b)| a + b).collect();
        let skew = SkewColumnType::new(l)?;
        let fill = NuFillType::from_type(seg.b + 1, &skew);
        columns.push(BuiltColumn {
            skew,
            signed: SignedColumnType {
                plus: lp,
                minus: lm,
            },
            fill,
        });
    }
    let mut rows = Vec::new();
    for len in 1..=r {
        for (count, sign) in [(plus[len], Sign::Plus), (minus[len], Sign::Minus)] {
            rows.extend((0..count).map(|_| Row { length: len, sign }));
        }
    }
    Ok(TableauState {
        columns,
        rows: canonical_rows(rows),
    })
}

/// Overlap of two adjacent columns: `min{L_{k+1,i} - L_{k,i} + m_k | i ≤ k}`.
pub fn overlap_of(left: &SkewColumnType, right: &SkewColumnType) -> i64 {
    let mk = left.m();
    (1..=left.k() as i64)
        .map(|i| right.at(i) - left.at(i) + mk)
        .fold(mk, i64::min)
        .max(0)
}

/// Overlap of columns `h` and `h+1` (0-based) of a built state.
pub fn overlap(state: &TableauState, h: usize) -> i64 {
    overlap_of(&state.columns[h].skew, &state.columns[h + 1].skew)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpOutcome {
    Zero { overlap: i64, sing: i64 },
    Unchanged,
    Changed(NuFillType, NuFillType),
}

/// Trapa's operation on two adjacent columns with `k` and `k+1` components.
pub fn trapa_op(left: &NuFillType, right: &NuFillType) -> Result<OpOutcome> {
    let k = left.k();
    if right.k() != k + 1 {
        return Err(Error::InvalidAdjacency(format!(
            "columns with {} and {} components are not adjacent",
            k,
            right.k()
        )));
    }
    let (sl, sr) = (left.segment(), right.segment());
    if sr.precedes(&sl) {
        return Err(Error::InvalidAdjacency(format!("{sr} precedes {sl}")));
    }
    let ov = overlap_of(&left.skew_type(), &right.skew_type());
    let sing = intersection_size(&sl, &sr);
    if ov < sing {
        return Ok(OpOutcome::Zero { overlap: ov, sing });
    }
    if sl.precedes(&sr) {
        return Ok(OpOutcome::Unchanged);
    }
    let kk = k as i64;
    let d = |j: i64| left.at(j) - right.at(j);
    let min_d = |lo: i64, hi: i64| (lo..=hi).map(d).min().expect("non-empty range");
    // Δ_i: over j < i when the left segment contains the right, over j ≥ i otherwise
    let outer = sl.contains_segment(&sr);
    let delta = |i: i64| {
        if outer {
            min_d(0, (i - 1).max(0))
        } else {
            min_d(i.max(0), kk + 1)
        }
    };
    let neg = |x: HalfInt| x.min(HalfInt::ZERO);
    let new_right: Vec<HalfInt> = (0..=kk + 1).map(|i| right.at(i) + neg(delta(i))).collect();
    let new_left: Vec<HalfInt> = (0..=kk).map(|i| left.at(i) - neg(delta(i + 1))).collect();
    let new_left = NuFillType::from_values(new_left)?;
    let new_right = NuFillType::from_values(new_right)?;

    let expected_left = Segment {
        b: sl.b.max(sr.b),
        e: sl.e.max(sr.e),
    };
    let expected_right = Segment {
        b: sl.b.min(sr.b),
        e: sl.e.min(sr.e),
    };
    if new_left.segment() != expected_left || new_right.segment() != expected_right {
        return Err(Error::InvariantViolation(format!(
            "operation on {sl}, {sr} produced {}, {}",
            new_left.segment(),
            new_right.segment()
        )));
    }
    let (l_old, r_old) = (left.skew_type(), right.skew_type());
    let (l_new, r_new) = (new_left.skew_type(), new_right.skew_type());
    for i in 0..=kk + 1 {
        let before = r_old.at(i) + if i >= 1 { l_old.at(i - 1) } else { 0 };
        let after = r_new.at(i) + if i >= 1 { l_new.at(i - 1) } else { 0 };
        if before != after {
            return Err(Error::InvariantViolation(format!(
                "operation on {sl}, {sr} changed the merged shape at component {i}"
            )));
        }
    }
    if &new_left == left && &new_right == right {
        return Ok(OpOutcome::Unchanged);
    }
    Ok(OpOutcome::Changed(new_left, new_right))
}

/// `ν_{k;i} ≥ ν_{k+1;i}` for all `k`, `i`: the filling is a ν-antitableau.
pub fn validate_antitableau(columns: &[NuFillType]) -> bool {
    columns.windows(2).all(|w| {
        let k = w[1].k() as i64;
        (0..=k).all(|i| w[0].at(i) >= w[1].at(i))
    })
}

/// Why a reduction ended in zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "cause", rename_all = "snake_case")]
pub enum ZeroCause {
    /// An entry lies outside `[0, m]` at the arrangement used.
    OutsideBox { position: usize, value: i64, m: i64 },
    /// Columns at `position`, `position + 1` have overlap below their singularity.
    Overlap {
        position: usize,
        overlap: i64,
        sing: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    Zero(ZeroCause),
    Columns(Vec<NuFillType>),
}

/// The order in which operations are applied.
pub enum Schedule<'a> {
    /// Insert columns left to right, bubbling each new column leftwards
    /// until an operation changes nothing, then settle any remaining pairs.
    Insertion,
    /// Start from all columns and let the callback pick, among the positions
    /// whose pair is not yet in weakly decreasing order, the next one to rewrite.
    Custom(&'a mut dyn FnMut(&[usize]) -> usize),
}

enum Step {
    Zero(ZeroCause),
    Unchanged,
    Changed,
}

fn apply_at(cols: &mut [NuFillType], h: usize) -> Result<Step> {
    match trapa_op(&cols[h], &cols[h + 1])? {
        OpOutcome::Zero { overlap, sing } => Ok(Step::Zero(ZeroCause::Overlap {
            position: h,
            overlap,
            sing,
        })),
        OpOutcome::Unchanged => Ok(Step::Unchanged),
        OpOutcome::Changed(l, r) => {
            cols[h] = l;
            cols[h + 1] = r;
            Ok(Step::Changed)
        }
    }
}

fn unsorted_positions(cols: &[NuFillType]) -> Vec<usize> {
    (0..cols.len().saturating_sub(1))
        .filter(|&h| cols[h].top() < cols[h + 1].top())
        .collect()
}

/// Reduces fill types of an appropriately arranged quasitableau.
///
/// Ends weakly decrease in such an arrangement and operations never move
/// ends, so every intermediate arrangement stays admissible. Operations that
/// change anything put the two beginnings in decreasing order, so the loop
/// ends; a last pass checks every adjacent pair for zero.
pub fn reduce_columns(columns: &[NuFillType], schedule: Schedule<'_>) -> Result<Reduced> {
    let mut cols = columns.to_vec();
    let mut chooser = match schedule {
        Schedule::Insertion => {
            for k in 1..cols.len() {
                for h in (0..k).rev() {
                    match apply_at(&mut cols, h)? {
                        Step::Zero(c) => return Ok(Reduced::Zero(c)),
                        Step::Unchanged => break,
                        Step::Changed => {}
                    }
                }
            }
            None
        }
        Schedule::Custom(f) => Some(f),
    };
    loop {
        let candidates = unsorted_positions(&cols);
        if candidates.is_empty() {
            break;
        }
        let h = match chooser.as_mut() {
            Some(f) => candidates[f(&candidates) % candidates.len()],
            None => candidates[0],
        };
        match apply_at(&mut cols, h)? {
            Step::Zero(c) => return Ok(Reduced::Zero(c)),
            Step::Changed => {}
            Step::Unchanged => {
                return Err(Error::InvariantViolation(format!(
                    "operation at unsorted position {} changed nothing",
                    h + 1
                )))
            }
        }
    }
    for h in 0..cols.len().saturating_sub(1) {
        match apply_at(&mut cols, h)? {
            Step::Zero(c) => return Ok(Reduced::Zero(c)),
            Step::Unchanged => {}
            Step::Changed => {
                return Err(Error::InvariantViolation(format!(
                    "sorted pair at position {} was rewritten",
                    h + 1
                )))
            }
        }
    }
    if !validate_antitableau(&cols) {
        return Err(Error::InvariantViolation(
            "reduced filling is not a ν-antitableau".into(),
        ));
    }
    Ok(Reduced::Columns(cols))
}

/// A filled Young diagram, row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Antitableau {
    pub rows: Vec<Vec<HalfInt>>,
}

impl Antitableau {
    /// Rows weakly decrease, columns strictly decrease, row lengths weakly decrease.
    pub fn is_valid(&self) -> bool {
        let rows_ok = self
            .rows
            .iter()
            .all(|row| !row.is_empty() && row.windows(2).all(|w| w[0] >= w[1]));
        let shape_ok = self.rows.windows(2).all(|w| w[0].len() >= w[1].len());
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| below < above));
        rows_ok && shape_ok && cols_ok
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }
}

/// Reads the filled diagram off the fill types. Diagram column `c` stacks,
/// for `k = c, c+1, ...`, component `k + 1 - c` of skew column `k`, whose
/// entries run from `ν_{k;i-1} - 1` down to `ν_{k;i}`.
pub fn antitableau_from_columns(cols: &[NuFillType]) -> Result<Antitableau> {
    let r = cols.len();
    let mut grid: Vec<Vec<HalfInt>> = Vec::new();
    for c in 1..=r {
        let mut column = Vec::new();
        for k in c..=r {
            let i = (k + 1 - c) as i64;
            let fill = &cols[k - 1];
            let mut x = fill.at(i - 1) - 1;
            while x >= fill.at(i) {
                column.push(x);
                x = x - 1;
            }
        }
        if column.is_empty() {
            break;
        }
        grid.push(column);
    }
    if grid.windows(2).any(|w| w[0].len() < w[1].len()) {
        return Err(Error::InvariantViolation(
            "diagram columns are not a Young shape".into(),
        ));
    }
    let height = grid.first().map_or(0, Vec::len);
    let rows = (0..height)
        .map(|t| {
            grid.iter()
                .filter(|col| col.len() > t)
                .map(|col| col[t])
                .collect()
        })
        .collect();
    let tableau = Antitableau { rows };
    if !tableau.is_valid() {
        return Err(Error::InvariantViolation(
            "reconstructed filling is not a ν-antitableau".into(),
        ));
    }
    Ok(tableau)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Zero(ZeroCause),
    NonZero {
        antitableau: Antitableau,
        rows: Vec<Row>,
        columns: Vec<NuFillType>,
    },
}

impl Reduction {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, Reduction::NonZero { .. })
    }
}

fn first_outside_box(psi: &GoodParityParameter, pv: &ParamVector) -> Option<ZeroCause> {
    (0..pv.entries.len()).find_map(|h| {
        let (value, m) = (pv.entries[h], psi.m(pv.sigma.apply(h)));
        (!(0..=m).contains(&value)).then_some(ZeroCause::OutsideBox {
            position: h,
            value,
            m,
        })
    })
}

/// The tableau decision: move `p` to the appropriate arrangement, build the
/// quasitableau and reduce it with the given schedule.
pub fn trapa_reduce_with(
    psi: &GoodParityParameter,
    p: &ParamVector,
    schedule: Schedule<'_>,
) -> Result<Reduction> {
    psi.check_size(p.entries.len())?;
    if let Some(cause) = first_outside_box(psi, p) {
        return Ok(Reduction::Zero(cause));
    }
    let tau = appropriate_arrangement(psi);
    let pt = phi(psi, p, &tau)?;
    if let Some(cause) = first_outside_box(psi, &pt) {
        return Ok(Reduction::Zero(cause));
    }
    let state = build_tableau(psi, &pt)?;
    match reduce_columns(&state.fill_types(), schedule)? {
        Reduced::Zero(cause) => Ok(Reduction::Zero(cause)),
        Reduced::Columns(columns) => Ok(Reduction::NonZero {
            antitableau: antitableau_from_columns(&columns)?,
            rows: state.rows,
            columns,
        }),
    }
}

pub fn trapa_reduce(psi: &GoodParityParameter, p: &ParamVector) -> Result<Reduction> {
    trapa_reduce_with(psi, p, Schedule::Insertion)
}

/// Pointwise minimum over all admissible arrangements σ of the last fill type
/// built from `p^σ`.
pub fn last_column_type(psi: &GoodParityParameter, p: &ParamVector) -> Result<NuFillType> {
    if !trapa_reduce(psi, p)?.is_nonzero() {
        return Err(Error::UndefinedInvariant("the last column type"));
    }
    let r = psi.r();
    let mut best: Option<Vec<HalfInt>> = None;
    for sigma in enumerate_admissible_bounded(psi, DEFAULT_MAX_R)? {
        let state = build_tableau(psi, &phi(psi, p, &sigma)?)?;
        let last = &state.columns[r - 1].fill;
        best = Some(match best {
            None => last.values().to_vec(),
            Some(b) => b
                .iter()
                .zip(last.values())
                .map(|(x, y)| (*x).min(*y))
                .collect(),
        });
    }
    NuFillType::from_values(best.expect("the appropriate arrangement is admissible"))
}

/// Whether inserting a column filled by `ν_r` into an antitableau prefix
/// `μ_1, ..., μ_{r-1}` keeps the filling non-zero, via the two families of
/// upper bounds on `ν_{r;i}`: with `t = r - h - 1`,
///
/// * `ν_{r;i} ≤ Σ_{s=1}^{t} (μ_{r-s; j_{s-1}} - μ_{r-s; j_s}) + μ_{h; j_t}`
///   for every chain `i = j_0 > ... > j_t`, and
/// * `ν_{r;i} - ν_{r;0} ≤ Σ_{s=1}^{t'} (μ_{r-s; j_{s-1}} - μ_{r-s; j_s})`
///   for every chain `i = j_0 > ... > j_{t'} = 0` with `1 ≤ t' ≤ t`.
///
/// The first `h` prefix segments must precede `ν_r` and the others must lie
/// inside it. With `h = 0` the first family is empty.
pub fn upper_bound_check(prefix: &[NuFillType], new: &NuFillType, h: usize) -> Result<bool> {
    let r = prefix.len() + 1;
    let bad = |msg: String| Err(Error::InvalidPrefix(msg));
    if new.k() != r {
        return bad(format!(
            "new column has {} components, expected {r}",
            new.k()
        ));
    }
    if h > prefix.len() {
        return bad(format!(
            "split {h} exceeds the prefix length {}",
            prefix.len()
        ));
    }
    let nu = new.segment();
    for (idx, mu) in prefix.iter().enumerate() {
        if mu.k() != idx + 1 {
            return bad(format!("column {} has {} components", idx + 1, mu.k()));
        }
        let s = mu.segment();
        let ok = if idx < h {
            s.precedes(&nu)
        } else {
            nu.contains_segment(&s)
        };
        if !ok {
            return bad(format!(
                "segment {s} at {} is on the wrong side of {nu}",
                idx + 1
            ));
        }
    }
    if !validate_antitableau(prefix) {
        return bad("prefix is not a ν-antitableau".into());
    }
    // mu(k, j) for 1-based k
    let mu = |k: usize, j: i64| prefix[k - 1].at(j);
    let t = (r - h - 1) as i64;
    for i in 0..=r as i64 {
        // best[j] = least partial sum over chains from i reaching j after s steps
        // chains below 0 gain nothing, and chains to 0 may skip
        let lo = (i - t).min(0);
        let width = (i - lo + 1) as usize;
        let mut best: Vec<Option<HalfInt>> = vec![None; width];
        best[(i - lo) as usize] = Some(HalfInt::ZERO);
        let mut to_zero: Option<HalfInt> = None;
        for s in 1..=t {
            let col = r - s as usize;
            let mut next: Vec<Option<HalfInt>> = vec![None; width];
            for jp in lo..=i {
                let Some(acc) = best[(jp - lo) as usize] else {
                    continue;
                };
                for j in lo..jp {
                    let cand = acc + mu(col, jp) - mu(col, j);
                    let slot = &mut next[(j - lo) as usize];
                    *slot = Some(slot.map_or(cand, |x| x.min(cand)));
                }
            }
            best = next;
            if i > 0 {
                if let Some(v) = best[(-lo) as usize] {
                    to_zero = Some(to_zero.map_or(v, |x| x.min(v)));
                }
            }
        }
        if h >= 1 {
            let bound_a = (lo..=i)
                .filter_map(|j| best[(j - lo) as usize].map(|acc| acc + mu(h, j)))
                .min();
            if let Some(b) = bound_a {
                if new.at(i) > b {
                    return Ok(false);
                }
            }
        }
        if let Some(b) = to_zero {
            if new.at(i) - new.at(0) > b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::enumerate_admissible;
    use crate::criterion::{cond_c, nonvanishing, nonvanishing_simplified};
    use crate::testutil::*;
    use crate::transition::phi_adjacent;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn h(x: i64) -> HalfInt {
        HalfInt::from_int(x)
    }

    fn fill(values: &[i64]) -> NuFillType {
        NuFillType::from_values(values.iter().map(|&x| h(x)).collect()).unwrap()
    }

    fn rows_of(pairs: &[(usize, Sign)]) -> Vec<Row> {
        canonical_rows(
            pairs
                .iter()
                .map(|&(length, sign)| Row { length, sign })
                .collect(),
        )
    }

    fn int_rows(t: &Antitableau) -> Vec<Vec<i64>> {
        t.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer().unwrap()).collect())
            .collect()
    }

    #[test]
    fn build_fixture_a() {
        let state = build_tableau(&fixture_a(), &at_ref(&[2, 2, 2])).unwrap();
        let c = &state.columns;
        assert_eq!(c[0].skew.values(), &[0, 3]);
        assert_eq!(c[1].skew.values(), &[0, 3, 5]);
        assert_eq!(c[1].signed.plus, vec![0, 1, 2]);
        assert_eq!(c[1].signed.minus, vec![0, 2, 3]);
        assert_eq!(c[2].skew.values(), &[0, 3, 4, 6]);
        assert_eq!(c[2].fill, fill(&[7, 4, 3, 1]));
        use Sign::*;
        let expected = rows_of(&[
            (3, Plus),
            (3, Plus),
            (3, Minus),
            (2, Minus),
            (1, Minus),
            (1, Minus),
            (1, Minus),
        ]);
        assert_eq!(state.rows, expected);
    }

    #[test]
    fn build_single_column() {
        let state = build_tableau(&psi(&[(4, 1)]), &at_ref(&[1])).unwrap();
        assert_eq!(state.columns[0].skew.values(), &[0, 4]);
        use Sign::*;
        assert_eq!(
            state.rows,
            rows_of(&[(1, Plus), (1, Minus), (1, Minus), (1, Minus)])
        );
        assert!(matches!(
            build_tableau(&psi(&[(4, 1)]), &at_ref(&[5])),
            Err(Error::ZeroParameter {
                position: 0,
                value: 5,
                m: 4
            })
        ));
    }

    #[test]
    fn overlap_examples() {
        let state = build_tableau(&fixture_a(), &at_ref(&[2, 2, 2])).unwrap();
        assert_eq!(overlap(&state, 0), 3);
        assert_eq!(overlap(&state, 1), 4);
        // all pluses then all minuses: the second column sits beside the first
        let state = build_tableau(&psi(&[(5, 2), (4, 3)]), &at_ref(&[4, 0])).unwrap();
        assert_eq!(overlap(&state, 0), 2);
    }

    #[test]
    fn trapa_op_examples() {
        let state = build_tableau(&fixture_b(), &at_ref(&[2, 2, 2])).unwrap();
        let cols = state.fill_types();
        assert_eq!(
            trapa_op(&cols[1], &cols[2]).unwrap(),
            OpOutcome::Zero {
                overlap: 4,
                sing: 5
            }
        );

        // [3,2] ⊃ [3,3]
        let left = NuFillType::from_type(h(4), &SkewColumnType::new(vec![0, 2]).unwrap());
        let right = NuFillType::from_type(h(4), &SkewColumnType::new(vec![0, 1, 1]).unwrap());
        let OpOutcome::Changed(l, r) = trapa_op(&left, &right).unwrap() else {
            panic!("expected a rewrite")
        };
        assert_eq!(l.segment(), seg(3, 3));
        assert_eq!(r.segment(), seg(3, 2));
        assert_eq!(l.skew_type().values(), &[0, 1]);
        assert_eq!(r.skew_type().values(), &[0, 1, 2]);
        let t = antitableau_from_columns(&[l, r]).unwrap();
        assert_eq!(int_rows(&t), vec![vec![3, 3], vec![2]]);

        // Δ = 0: an antitableau pair in containment is left alone
        let left = fill(&[4, 2]);
        let right = fill(&[4, 2, 2]);
        assert_eq!(trapa_op(&left, &right).unwrap(), OpOutcome::Unchanged);

        assert!(matches!(
            trapa_op(&left, &fill(&[4, 2])),
            Err(Error::InvalidAdjacency(_))
        ));
        // the right column's segment [9,7] precedes [3,2]
        assert!(matches!(
            trapa_op(&left, &fill(&[10, 9, 7])),
            Err(Error::InvalidAdjacency(_))
        ));
    }

    /// Of all fillings of shape (2,1) by the entries 3, 3, 2, only rows
    /// (3,3),(2) is a ν-antitableau.
    #[test]
    fn worked_example_brute_force() {
        let entries = [3, 3, 2];
        let mut found = Vec::new();
        for perm in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            let (a, b, c) = (entries[perm[0]], entries[perm[1]], entries[perm[2]]);
            if a >= b && c < a && !found.contains(&(a, b, c)) {
                found.push((a, b, c));
            }
        }
        assert_eq!(found, vec![(3, 3, 2)]);
    }

    #[test]
    fn reduce_examples() {
        let Reduction::NonZero {
            antitableau, rows, ..
        } = trapa_reduce(&fixture_a(), &at_ref(&[2, 2, 2])).unwrap()
        else {
            panic!("fixture A is non-zero")
        };
        let expected = vec![
            vec![7, 7, 6],
            vec![6, 6, 5],
            vec![5, 5, 4],
            vec![4, 3],
            vec![3],
            vec![2],
            vec![1],
        ];
        assert_eq!(int_rows(&antitableau), expected);
        assert_eq!(rows.len(), 7);

        assert_eq!(
            trapa_reduce(&fixture_b(), &at_ref(&[2, 2, 2])).unwrap(),
            Reduction::Zero(ZeroCause::Overlap {
                position: 1,
                overlap: 4,
                sing: 5
            })
        );

        let Reduction::NonZero { antitableau, .. } =
            trapa_reduce(&psi(&[(4, 1)]), &at_ref(&[2])).unwrap()
        else {
            panic!()
        };
        assert_eq!(
            int_rows(&antitableau),
            vec![vec![4], vec![3], vec![2], vec![1]]
        );

        assert_eq!(
            trapa_reduce(&psi(&[(4, 1)]), &at_ref(&[-1])).unwrap(),
            Reduction::Zero(ZeroCause::OutsideBox {
                position: 0,
                value: -1,
                m: 4
            })
        );
    }

    #[test]
    fn validate_examples() {
        let a = build_tableau(&fixture_a(), &at_ref(&[2, 2, 2])).unwrap();
        assert!(validate_antitableau(&a.fill_types()));
        let b = build_tableau(&fixture_b(), &at_ref(&[2, 2, 2])).unwrap();
        assert!(!validate_antitableau(&b.fill_types()));
        assert!(validate_antitableau(&[fill(&[3, 1])]));
    }

    #[test]
    fn last_column_examples() {
        let a = fixture_a();
        let p = at_ref(&[2, 2, 2]);
        let Reduction::NonZero { columns, .. } = trapa_reduce(&a, &p).unwrap() else {
            panic!()
        };
        assert_eq!(last_column_type(&a, &p).unwrap(), columns[2]);
        assert_eq!(enumerate_admissible(&a).unwrap().len(), 2);

        let single = psi(&[(4, 1)]);
        let built = build_tableau(&single, &at_ref(&[3])).unwrap();
        assert_eq!(
            last_column_type(&single, &at_ref(&[3])).unwrap(),
            built.columns[0].fill
        );

        assert!(matches!(
            last_column_type(&fixture_b(), &at_ref(&[2, 2, 2])),
            Err(Error::UndefinedInvariant(_))
        ));
    }

    #[test]
    fn two_column_last_type_is_the_minimum_of_both_orders() {
        let two = psi(&[(5, 3), (6, 1)]);
        for v in box_vectors(&two) {
            let p = at_ref(&v);
            let Reduction::NonZero { columns, .. } = trapa_reduce(&two, &p).unwrap() else {
                continue;
            };
            let swapped = phi_adjacent(&two, &p, 0).unwrap();
            let x = build_tableau(&two, &p).unwrap().columns[1].fill.clone();
            let y = build_tableau(&two, &swapped).unwrap().columns[1]
                .fill
                .clone();
            let min: Vec<_> = x
                .values()
                .iter()
                .zip(y.values())
                .map(|(a, b)| (*a).min(*b))
                .collect();
            assert_eq!(columns[1].values(), &min[..], "p = {v:?}");
        }
    }

    /// The bounds by brute force over all strictly decreasing chains.
    fn upper_bound_brute(prefix: &[NuFillType], new: &NuFillType, h: usize) -> bool {
        let r = prefix.len() + 1;
        let t = r - h - 1;
        let mu = |k: usize, j: i64| prefix[k - 1].at(j);
        fn chains(start: i64, len: usize, lo: i64) -> Vec<Vec<i64>> {
            if len == 0 {
                return vec![vec![start]];
            }
            let mut out = Vec::new();
            for next in lo..start {
                for mut tail in chains(next, len - 1, lo) {
                    tail.insert(0, start);
                    out.push(tail);
                }
            }
            out
        }
        let sum = |c: &[i64]| {
            (1..c.len()).fold(HalfInt::ZERO, |acc, s| {
                acc + mu(r - s, c[s - 1]) - mu(r - s, c[s])
            })
        };
        for i in 0..=r as i64 {
            if h >= 1 {
                for c in chains(i, t, i - t as i64 - 1) {
                    if new.at(i) > sum(&c) + mu(h, c[t]) {
                        return false;
                    }
                }
            }
            for len in 1..=t {
                for c in chains(i, len, 0) {
                    if c[len] == 0 && new.at(i) - new.at(0) > sum(&c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn upper_bound_examples() {
        // h = r - 1: only ν_{r;i} ≤ μ_{h;i}
        let prefix = [fill(&[8, 5])];
        assert!(upper_bound_check(&prefix, &fill(&[6, 4, 3]), 1).unwrap());
        assert!(!upper_bound_check(&prefix, &fill(&[6, 6, 3]), 1).unwrap());

        for (p, expected) in [(fixture_a(), true), (fixture_b(), false)] {
            let state = build_tableau(&p, &at_ref(&[2, 2, 2])).unwrap();
            let cols = state.fill_types();
            let Reduced::Columns(prefix) = reduce_columns(&cols[..2], Schedule::Insertion).unwrap()
            else {
                panic!()
            };
            let h = split_of(&prefix, &cols[2]).unwrap();
            assert_eq!(upper_bound_check(&prefix, &cols[2], h).unwrap(), expected);
            assert_eq!(upper_bound_brute(&prefix, &cols[2], h), expected);
        }
        assert!(matches!(
            upper_bound_check(&[fill(&[8, 5])], &fill(&[6, 4]), 1),
            Err(Error::InvalidPrefix(_))
        ));
    }

    /// The number of leading prefix segments preceding the new one, if the rest lie inside it.
    fn split_of(prefix: &[NuFillType], new: &NuFillType) -> Option<usize> {
        let nu = new.segment();
        let h = prefix
            .iter()
            .take_while(|c| c.segment().precedes(&nu))
            .count();
        prefix[h..]
            .iter()
            .all(|c| nu.contains_segment(&c.segment()))
            .then_some(h)
    }

    fn sweep(max_r: usize) -> Vec<GoodParityParameter> {
        let mut all = all_parameters(&segment_pool(0, 10, 3), max_r);
        all.extend(all_parameters(&segment_pool(1, 9, 3), max_r));
        all
    }

    #[test]
    fn overlap_matches_the_entries() {
        for p in sweep(2) {
            for v in box_vectors(&p) {
                let pv = at_ref(&v);
                let state = build_tableau(&p, &pv).unwrap();
                for k in 0..p.r() - 1 {
                    let (pk, qk) = (v[k], pv.q(&p, k));
                    let (pn, qn) = (v[k + 1], pv.q(&p, k + 1));
                    assert_eq!(overlap(&state, k), pk.min(qn) + qk.min(pn), "{p:?} {v:?}");
                }
            }
        }
    }

    #[test]
    fn oracle_equivalence_small() {
        for p in sweep(3) {
            for v in box_vectors(&p) {
                let pv = at_ref(&v);
                let full = nonvanishing(&p, &pv).unwrap().nonzero;
                let tab = trapa_reduce(&p, &pv).unwrap().is_nonzero();
                assert_eq!(full, tab, "{p:?} {v:?}");
            }
        }
    }

    /// Every in-box vector on every containment swap `k, k+1` where C holds,
    /// so that both sides are in their boxes.
    fn swap_pairs(max_r: usize) -> Vec<(GoodParityParameter, ParamVector, usize)> {
        let mut out = Vec::new();
        for p in sweep(max_r) {
            for sigma in enumerate_admissible(&p).unwrap() {
                for v in box_vectors(&p.rearranged(&sigma).unwrap()) {
                    let pv = ParamVector::new(v, sigma.clone()).unwrap();
                    for k in 0..p.r().saturating_sub(1) {
                        if let Ok(sw) = phi_adjacent(&p, &pv, k) {
                            let (x, y) = (pv.sigma.apply(k), pv.sigma.apply(k + 1));
                            if sw.in_box(&p) && cond_c(&p, &pv, x, y).unwrap() {
                                out.push((p.clone(), pv.clone(), k));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn swapped_builds_agree() {
        for (p, pv, k) in swap_pairs(3) {
            let sw = phi_adjacent(&p, &pv, k).unwrap();
            let x = build_tableau(&p, &pv).unwrap();
            let y = build_tableau(&p, &sw).unwrap();
            assert_eq!(x.rows, y.rows);
            let (xl, xr) = (&x.columns[k].skew, &x.columns[k + 1].skew);
            let (yl, yr) = (&y.columns[k].skew, &y.columns[k + 1].skew);
            for i in 0..=k as i64 + 2 {
                assert_eq!(
                    xr.at(i) + xl.at(i - 1),
                    yr.at(i) + yl.at(i - 1),
                    "{p:?} {pv:?} {k}"
                );
            }
            for c in [&x.columns, &y.columns] {
                for col in c.iter() {
                    for i in 0..=col.skew.k() {
                        assert_eq!(
                            col.signed.plus[i] + col.signed.minus[i],
                            col.skew.values()[i]
                        );
                    }
                }
            }
            let xo = trapa_op(&x.columns[k].fill, &x.columns[k + 1].fill).unwrap();
            let yo = trapa_op(&y.columns[k].fill, &y.columns[k + 1].fill).unwrap();
            let norm = |o: OpOutcome, l: &NuFillType, r: &NuFillType| match o {
                OpOutcome::Zero { .. } => None,
                OpOutcome::Unchanged => Some((l.clone(), r.clone())),
                OpOutcome::Changed(a, b) => Some((a, b)),
            };
            assert_eq!(
                norm(xo, &x.columns[k].fill, &x.columns[k + 1].fill),
                norm(yo, &y.columns[k].fill, &y.columns[k + 1].fill),
                "{p:?} {pv:?} {k}"
            );
        }
    }

    #[test]
    fn swap_type_identities() {
        for (p, pv, k) in swap_pairs(3) {
            let sw = phi_adjacent(&p, &pv, k).unwrap();
            let (mk, mk1) = (p.m(pv.sigma.apply(k)), p.m(pv.sigma.apply(k + 1)));
            // normalise so the shorter segment comes first
            let (a, b) = if mk <= mk1 { (&pv, &sw) } else { (&sw, &pv) };
            let x = build_tableau(&p, a).unwrap();
            let y = build_tableau(&p, b).unwrap();
            let (l, r) = (&x.columns[k].fill, &x.columns[k + 1].fill);
            let kk = k as i64 + 1;
            let d = |j: i64| l.at(j) - r.at(j);
            for i in 0..=kk {
                let tail = (i..=kk).map(d).min().unwrap();
                assert_eq!(
                    y.columns[k + 1].fill.at(i),
                    r.at(i) + tail,
                    "{p:?} {pv:?} {k}"
                );
                if i < kk {
                    let tail = (i + 1..=kk).map(d).min().unwrap();
                    assert_eq!(y.columns[k].fill.at(i), l.at(i) - tail);
                }
            }
            if let OpOutcome::Changed(nl, nr) = trapa_op(l, r).unwrap() {
                for i in 0..=kk {
                    assert_eq!(nr.at(i), r.at(i).min(y.columns[k + 1].fill.at(i)));
                    assert_eq!(nl.at(i), l.at(i).max(y.columns[k].fill.at(i)));
                }
            }
        }
    }

    #[test]
    fn last_column_agrees_with_reduction() {
        for p in sweep(3) {
            for v in box_vectors(&p) {
                let pv = at_ref(&v);
                if let Reduction::NonZero { columns, .. } = trapa_reduce(&p, &pv).unwrap() {
                    assert_eq!(
                        last_column_type(&p, &pv).unwrap(),
                        columns[p.r() - 1],
                        "{p:?} {v:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn upper_bounds_decide_the_last_insertion() {
        let mut checked = 0;
        for p in sweep(3) {
            let tau = appropriate_arrangement(&p);
            for v in box_vectors(&p) {
                let pt = phi(&p, &at_ref(&v), &tau).unwrap();
                if !pt.in_box(&p) {
                    continue;
                }
                let cols = build_tableau(&p, &pt).unwrap().fill_types();
                let r = cols.len();
                if r < 2 {
                    continue;
                }
                let Reduced::Columns(prefix) =
                    reduce_columns(&cols[..r - 1], Schedule::Insertion).unwrap()
                else {
                    continue;
                };
                let Some(h) = split_of(&prefix, &cols[r - 1]) else {
                    continue;
                };
                let fast = upper_bound_check(&prefix, &cols[r - 1], h).unwrap();
                assert_eq!(fast, upper_bound_brute(&prefix, &cols[r - 1], h));
                let mut all = prefix.clone();
                all.push(cols[r - 1].clone());
                let nonzero = matches!(
                    reduce_columns(&all, Schedule::Insertion).unwrap(),
                    Reduced::Columns(_)
                );
                assert_eq!(fast, nonzero, "{p:?} {v:?}");
                checked += 1;
            }
        }
        assert!(checked > 1000);
    }

    fn reduce_randomly(p: &GoodParityParameter, v: &[i64], rng: &mut StdRng) -> Reduction {
        let mut pick = |c: &[usize]| rng.gen_range(0..c.len());
        trapa_reduce_with(p, &at_ref(v), Schedule::Custom(&mut pick)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn oracle_equivalence_random((p, v) in arb_in_box(4)) {
            let pv = at_ref(&v);
            let tab = trapa_reduce(&p, &pv).unwrap();
            prop_assert_eq!(nonvanishing(&p, &pv).unwrap().nonzero, tab.is_nonzero());
            prop_assert_eq!(nonvanishing_simplified(&p, &pv).unwrap().nonzero, tab.is_nonzero());
            if let Reduction::NonZero { antitableau, rows, .. } = tab {
                let boxes: usize = antitableau.rows.iter().map(Vec::len).sum();
                prop_assert_eq!(boxes as i64, p.n());
                let plus: i64 = rows.iter().map(|r| match r.sign {
                    Sign::Plus => (r.length as i64 + 1) / 2,
                    Sign::Minus => r.length as i64 / 2,
                }).sum();
                prop_assert_eq!(plus, v.iter().sum::<i64>());
            }
        }

        #[test]
        fn schedules_are_confluent((p, v) in arb_in_box(4), seed in any::<u64>()) {
            let base = trapa_reduce(&p, &at_ref(&v)).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..3 {
                let other = reduce_randomly(&p, &v, &mut rng);
                prop_assert_eq!(base.is_nonzero(), other.is_nonzero());
                if let (Reduction::NonZero { antitableau: x, .. }, Reduction::NonZero { antitableau: y, .. }) = (&base, &other) {
                    prop_assert_eq!(x, y);
                }
            }
        }
    }
}

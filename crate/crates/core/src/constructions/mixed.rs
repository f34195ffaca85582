//! Exact mixed equilibria of bimatrix games by support enumeration.
//!
//! For each pair of equal-size supports the indifference system of each agent
//! is solved for the opponent's mixture. Systems are eliminated fraction-free
//! over checked `i128`; on overflow the pair is redone over big rationals.
//! Rank-deficient systems are resolved to a basic solution (free unknowns set
//! to zero) and the result is flagged degenerate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::CardinalBimatrix;
use crate::error::{invalid, Result};
use crate::exec;

/// Largest action count accepted per agent.
pub const MAX_ACTIONS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedEquilibrium {
    pub row: Vec<BigRational>,
    pub col: Vec<BigRational>,
    pub row_value: BigRational,
    pub col_value: BigRational,
    /// Found from a rank-deficient indifference system; may be one vertex of
    /// a continuum of equilibria.
    pub degenerate: bool,
}

impl MixedEquilibrium {
    pub fn row_support(&self) -> Vec<usize> {
        support(&self.row)
    }

    pub fn col_support(&self) -> Vec<usize> {
        support(&self.col)
    }
}

fn support(p: &[BigRational]) -> Vec<usize> {
    (0..p.len()).filter(|&i| !p[i].is_zero()).collect()
}

fn strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

impl Serialize for MixedEquilibrium {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MixedEquilibrium", 5)?;
        st.serialize_field("row", &strings(&self.row))?;
        st.serialize_field("col", &strings(&self.col))?;
        st.serialize_field("row_value", &self.row_value.to_string())?;
        st.serialize_field("col_value", &self.col_value.to_string())?;
        st.serialize_field("degenerate", &self.degenerate)?;
        st.end()
    }
}

impl fmt::Display for MixedEquilibrium {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row [{}] col [{}]",
            strings(&self.row).join(" "),
            strings(&self.col).join(" ")
        )
    }
}

/// Arithmetic that may refuse (overflow, inexact division).
trait Exact: Clone {
    fn from_i64(v: i64) -> Self;
    fn eq_zero(&self) -> bool;
    fn lt_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn cmp_le(&self, o: &Self) -> bool;
    fn to_rational(&self) -> BigRational;
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn eq_zero(&self) -> bool {
        *self == 0
    }
    fn lt_zero(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (self.checked_rem(*o)? == 0).then(|| self / o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn cmp_le(&self, o: &Self) -> bool {
        self <= o
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

impl Exact for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn eq_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn lt_zero(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn cmp_le(&self, o: &Self) -> bool {
        self <= o
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// `None` means an arithmetic refusal; `Some(None)` an inconsistent system.
type Solved<T> = Option<Option<(Vec<T>, T, bool)>>;

/// Solves `a · z = b` for the augmented matrix `a` (last column `b`) by
/// fraction-free elimination. Returns numerators, a common positive
/// denominator, and whether the system was rank deficient.
fn solve<T: Exact>(mut a: Vec<Vec<T>>, unknowns: usize) -> Solved<T> {
    let rows = a.len();
    let mut prev = T::from_i64(1);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].eq_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..=unknowns {
                let v = a[r][c].mul(&a[i][j])?.sub(&a[i][c].mul(&a[r][j])?)?.div(&prev)?;
                a[i][j] = v;
            }
            a[i][c] = T::from_i64(0);
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    if (r..rows).any(|i| !a[i][unknowns].eq_zero()) {
        return Some(None);
    }
    let mut den = prev;
    let mut num = vec![T::from_i64(0); unknowns];
    for (row, &c) in pivots.iter().enumerate().rev() {
        let mut acc = den.mul(&a[row][unknowns])?;
        for &c2 in &pivots[row + 1..] {
            acc = acc.sub(&a[row][c2].mul(&num[c2])?)?;
        }
        num[c] = acc.div(&a[row][c])?;
    }
    if den.lt_zero() {
        den = den.neg()?;
        for x in &mut num {
            *x = x.neg()?;
        }
    }
    Some(Some((num, den, r < unknowns)))
}

/// The opponent mixture over `opp` that makes the owner indifferent across
/// `own`, provided it is a probability vector and no owner action outside
/// `own` does strictly better. Returns the full mixture, the owner's value,
/// and the degeneracy flag.
fn side<T: Exact, P: Fn(usize, usize) -> i64>(
    payoff: &P,
    own: &[usize],
    opp: &[usize],
    own_count: usize,
    opp_count: usize,
) -> Option<Option<(Vec<BigRational>, BigRational, bool)>> {
    let s = opp.len();
    let mut a: Vec<Vec<T>> = own
        .iter()
        .map(|&x| {
            let mut row: Vec<T> = opp.iter().map(|&y| T::from_i64(payoff(x, y))).collect();
            row.push(T::from_i64(-1));
            row.push(T::from_i64(0));
            row
        })
        .collect();
    let mut total = vec![T::from_i64(1); s];
    total.push(T::from_i64(0));
    total.push(T::from_i64(1));
    a.push(total);
    let Some((num, den, degenerate)) = solve(a, s + 1)? else {
        return Some(None);
    };
    if num[..s].iter().any(Exact::lt_zero) || den.eq_zero() {
        return Some(None);
    }
    let value = &num[s];
    for x in (0..own_count).filter(|x| !own.contains(x)) {
        let mut u = T::from_i64(0);
        for (j, &y) in opp.iter().enumerate() {
            u = u.add(&T::from_i64(payoff(x, y)).mul(&num[j])?)?;
        }
        if !u.cmp_le(value) {
            return Some(None);
        }
    }
    let den = den.to_rational();
    let mut mix = vec![BigRational::zero(); opp_count];
    for (j, &y) in opp.iter().enumerate() {
        mix[y] = num[j].to_rational() / &den;
    }
    Some(Some((mix, value.to_rational() / den, degenerate)))
}

fn side_exact<P: Fn(usize, usize) -> i64>(
    payoff: &P,
    own: &[usize],
    opp: &[usize],
    own_count: usize,
    opp_count: usize,
) -> Option<(Vec<BigRational>, BigRational, bool)> {
    match side::<i128, P>(payoff, own, opp, own_count, opp_count) {
        Some(r) => r,
        None => side::<BigRational, P>(payoff, own, opp, own_count, opp_count).expect("rational arithmetic is total"),
    }
}

fn members(mask: u32, count: usize) -> Vec<usize> {
    (0..count).filter(|&i| mask >> i & 1 == 1).collect()
}

/// All equilibria found by equal-size support enumeration, in order of
/// support size, then row support, then column support. Duplicates are
/// merged; the degeneracy flag is set if any occurrence was degenerate.
pub fn mixed_equilibria(game: &CardinalBimatrix, workers: usize) -> Result<Vec<MixedEquilibrium>> {
    let (m1, m2) = game.shape();
    if m1 > MAX_ACTIONS || m2 > MAX_ACTIONS {
        return Err(invalid(format!(
            "support enumeration is limited to {MAX_ACTIONS} actions per agent, got {m1}x{m2}"
        )));
    }
    let by_size = |count: usize| {
        let mut masks: Vec<u32> = (1u32..1 << count).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        masks
    };
    let rows = by_size(m1);
    let cols: Vec<u32> = by_size(m2)
        .into_iter()
        .filter(|m| m.count_ones() as usize <= m1)
        .collect();
    let rows: Vec<u32> = rows.into_iter().filter(|m| m.count_ones() as usize <= m2).collect();
    let a = |x: usize, y: usize| game.payoff1[x][y];
    let b = |x: usize, y: usize| game.payoff2[y][x];
    let found = exec::map_indexed(
        workers,
        rows.len() as u64,
        || (),
        |_, idx| {
            let rmask = rows[idx as usize];
            let support_r = members(rmask, m1);
            let mut out = Vec::new();
            for &cmask in cols.iter().filter(|c| c.count_ones() == rmask.count_ones()) {
                let support_c = members(cmask, m2);
                let Some((col, row_value, deg_c)) = side_exact(&a, &support_r, &support_c, m1, m2) else {
                    continue;
                };
                let Some((row, col_value, deg_r)) = side_exact(&b, &support_c, &support_r, m2, m1) else {
                    continue;
                };
                out.push(MixedEquilibrium {
                    row,
                    col,
                    row_value,
                    col_value,
                    degenerate: deg_c || deg_r,
                });
            }
            out
        },
    );
    let mut unique: Vec<MixedEquilibrium> = Vec::new();
    for eq in found.into_iter().flatten() {
        match unique.iter_mut().find(|u| u.row == eq.row && u.col == eq.col) {
            Some(u) => u.degenerate |= eq.degenerate,
            None => unique.push(eq),
        }
    }
    Ok(unique)
}

/// Checks with exact arithmetic that both strategies are probability vectors,
/// that every supported action earns the stated value, and that no action
/// earns more.
pub fn verify_mixed_equilibrium(game: &CardinalBimatrix, eq: &MixedEquilibrium) -> bool {
    let (m1, m2) = game.shape();
    let prob = |p: &[BigRational], len: usize| {
        p.len() == len && p.iter().all(|x| !x.is_negative()) && p.iter().sum::<BigRational>() == BigRational::one()
    };
    if !prob(&eq.row, m1) || !prob(&eq.col, m2) {
        return false;
    }
    let big = |v: i64| BigRational::from_integer(BigInt::from(v));
    let row_u: Vec<BigRational> = (0..m1)
        .map(|x| (0..m2).map(|y| big(game.payoff1[x][y]) * &eq.col[y]).sum())
        .collect();
    let col_u: Vec<BigRational> = (0..m2)
        .map(|y| (0..m1).map(|x| big(game.payoff2[x][y]) * &eq.row[x]).sum())
        .collect();
    let best = |u: &[BigRational], p: &[BigRational], value: &BigRational| {
        u.iter().all(|v| v <= value) && (0..u.len()).filter(|&i| !p[i].is_zero()).all(|i| &u[i] == value)
    };
    best(&row_u, &eq.row, &eq.row_value) && best(&col_u, &eq.col, &eq.col_value)
}

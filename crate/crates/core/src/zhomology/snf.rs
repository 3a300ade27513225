use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `A = U · D · V` with unimodular `U`, `V`.
///
/// The inverses are tracked alongside so that coordinates can be changed in
/// both directions without a separate inversion.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The full diagonal matrix `D`.
    pub fn d(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

/// Computes the Smith normal form, pivoting on the entry of least absolute
/// value to keep coefficients small.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    // left · A · right = D, so U = left⁻¹ and V = right⁻¹
    let mut left = IntMatrix::identity(m);
    let mut left_inv = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let mut right_inv = IntMatrix::identity(n);
    let mut diagonal = Vec::new();

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_entry(&d, t, t) else { break };
        move_pivot(&mut d, &mut left, &mut left_inv, &mut right, &mut right_inv, t, pi, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !d.get(i, t).is_zero() {
                    let q = -d.get(i, t).div_floor(d.get(t, t));
                    row_add(&mut d, &mut left, &mut left_inv, i, t, &q);
                    dirty |= !d.get(i, t).is_zero();
                }
            }
            for j in t + 1..n {
                if !d.get(t, j).is_zero() {
                    let q = -d.get(t, j).div_floor(d.get(t, t));
                    col_add(&mut d, &mut right, &mut right_inv, j, t, &q);
                    dirty |= !d.get(t, j).is_zero();
                }
            }
            if dirty {
                let (pi, pj) = min_in_cross(&d, t);
                move_pivot(&mut d, &mut left, &mut left_inv, &mut right, &mut right_inv, t, pi, pj);
                continue;
            }
            // the pivot must divide everything left in the block
            let p = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => row_add(&mut d, &mut left, &mut left_inv, t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            left.negate_row(t);
            left_inv.negate_col(t);
        }
        diagonal.push(d.get(t, t).clone());
    }
    SmithForm { diagonal, u: left_inv, u_inv: left, v: right_inv, v_inv: right, rows: m, cols: n }
}

fn min_entry(d: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in r0..d.rows() {
        for j in c0..d.cols() {
            let a = d.get(i, j);
            if !a.is_zero() && best.as_ref().map_or(true, |b| a.abs() < b.2) {
                best = Some((i, j, a.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, d.get(t, t).abs());
    for i in t + 1..d.rows() {
        let a = d.get(i, t);
        if !a.is_zero() && (best.2.is_zero() || a.abs() < best.2) {
            best = (i, t, a.abs());
        }
    }
    for j in t + 1..d.cols() {
        let a = d.get(t, j);
        if !a.is_zero() && (best.2.is_zero() || a.abs() < best.2) {
            best = (t, j, a.abs());
        }
    }
    (best.0, best.1)
}

#[allow(clippy::too_many_arguments)]
fn move_pivot(
    d: &mut IntMatrix,
    left: &mut IntMatrix,
    left_inv: &mut IntMatrix,
    right: &mut IntMatrix,
    right_inv: &mut IntMatrix,
    t: usize,
    pi: usize,
    pj: usize,
) {
    if pi != t {
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        left_inv.swap_cols(t, pi);
    }
    if pj != t {
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);
        right_inv.swap_rows(t, pj);
    }
}

/// `row[dst] += c · row[src]` on `d`, recorded in the left factors.
fn row_add(d: &mut IntMatrix, left: &mut IntMatrix, left_inv: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    d.add_row(dst, src, c);
    left.add_row(dst, src, c);
    left_inv.add_col(src, dst, &-c);
}

/// `col[dst] += c · col[src]` on `d`, recorded in the right factors.
fn col_add(d: &mut IntMatrix, right: &mut IntMatrix, right_inv: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    d.add_col(dst, src, c);
    right.add_col(dst, src, c);
    right_inv.add_row(src, dst, &-c);
}

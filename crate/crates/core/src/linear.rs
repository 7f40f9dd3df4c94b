//! Exact-rational Ho-Kalman realization from Markov parameters.
//!
//! All arithmetic is over arbitrary-precision rationals, so Hankel ranks are
//! exact and no tolerance enters anywhere: rank factorization is done by
//! Gaussian elimination, and the state matrix is recovered by inverting the
//! rank-sized pivot submatrix rather than by least squares.

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, kept reduced with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A dense matrix of rationals, row-major. Zero-dimensional matrices are
/// allowed; they arise as the factors of a rank-0 Hankel matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::from(BigInt::from(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        Ok(RationalMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: Vec<Vec<i64>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| Rational::from(BigInt::from(v))).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidMatrix(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(l, j);
                    *out.get_mut(i, j) += add;
                }
            }
        }
        Ok(out)
    }

    /// Rows `idx` of `self`, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (ni, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                *out.get_mut(ni, j) = self.get(i, j).clone();
            }
        }
        out
    }

    /// Columns `idx` of `self`, in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (nj, &j) in idx.iter().enumerate() {
                *out.get_mut(i, nj) = self.get(i, j).clone();
            }
        }
        out
    }

    /// The submatrix of block `(bi, bj)` for `p x m` blocks.
    pub fn block(&self, bi: usize, bj: usize, p: usize, m: usize) -> Self {
        let mut out = Self::zeros(p, m);
        for i in 0..p {
            for j in 0..m {
                *out.get_mut(i, j) = self.get(bi * p + i, bj * m + j).clone();
            }
        }
        out
    }

    /// Reduced row-echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols {
                    let a = m.get(pr, j).clone();
                    let b = m.get(row, j).clone();
                    *m.get_mut(pr, j) = b;
                    *m.get_mut(row, j) = a;
                }
            }
            let inv = m.get(row, col).clone();
            for j in 0..m.cols {
                let v = m.get(row, j).clone() / inv.clone();
                *m.get_mut(row, j) = v;
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in 0..m.cols {
                        let v = m.get(r, j).clone() - factor.clone() * m.get(row, j).clone();
                        *m.get_mut(r, j) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Indices of a maximal linearly independent row set, found greedily.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis = RationalMatrix::zeros(0, self.cols);
        let mut idx = Vec::new();
        for i in 0..self.rows {
            let mut candidate = basis.clone();
            candidate.rows += 1;
            candidate
                .entries
                .extend((0..self.cols).map(|j| self.get(i, j).clone()));
            if candidate.rank() > basis.rank() {
                basis = candidate;
                idx.push(i);
            }
        }
        idx
    }

    /// Exact inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        // augment with the identity and reduce
        let mut aug = RationalMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.get_mut(i, j) = self.get(i, j).clone();
            }
            *aug.get_mut(i, n + i) = Rational::from(BigInt::from(1));
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.get_mut(i, j) = red.get(i, n + j).clone();
            }
        }
        Some(inv)
    }
}

/// Exact rank factorization `H = O * R` with `O` of full column rank and `R`
/// of full row rank; the rank is the row-echelon pivot count.
///
/// `O` is the pivot columns of `H`, `R` the nonzero rows of its reduced row
/// echelon form.
pub fn rank_factor(h: &RationalMatrix) -> (RationalMatrix, RationalMatrix, usize) {
    let (rref, pivots) = h.rref();
    let rank = pivots.len();
    let o = h.select_cols(&pivots);
    let r = rref.select_rows(&(0..rank).collect::<Vec<_>>());
    (o, r, rank)
}

/// An exact-rational state-space realization `(A, B, C, D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
    pub c: RationalMatrix,
    pub d: RationalMatrix,
}

impl LinearSystem {
    pub fn new(
        a: RationalMatrix,
        b: RationalMatrix,
        c: RationalMatrix,
        d: RationalMatrix,
    ) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::InvalidMatrix("A must be square".into()));
        }
        if b.rows() != n || c.cols() != n || d.rows() != c.rows() || d.cols() != b.cols() {
            return Err(Error::InvalidMatrix(
                "B, C, D dimensions inconsistent with A".into(),
            ));
        }
        Ok(LinearSystem { a, b, c, d })
    }

    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn input_dim(&self) -> usize {
        self.b.cols()
    }

    pub fn output_dim(&self) -> usize {
        self.c.rows()
    }

    /// Impulse-response coefficients `[M_0, ..., M_{count-1}]` with
    /// `M_0 = D` and `M_k = C A^{k-1} B`.
    pub fn markov_parameters(&self, count: usize) -> Vec<RationalMatrix> {
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return out;
        }
        out.push(self.d.clone());
        // carry A^{k-1} B forward
        let mut akb = self.b.clone();
        for _ in 1..count {
            out.push(self.c.mul(&akb).expect("dims validated"));
            akb = self.a.mul(&akb).expect("dims validated");
        }
        out
    }

    /// `[B, AB, ..., A^{n-1}B]`, the reachability matrix.
    pub fn reachability_matrix(&self) -> RationalMatrix {
        let n = self.state_dim();
        let m = self.input_dim();
        let mut out = RationalMatrix::zeros(n, n * m);
        let mut akb = self.b.clone();
        for k in 0..n {
            for i in 0..n {
                for j in 0..m {
                    *out.get_mut(i, k * m + j) = akb.get(i, j).clone();
                }
            }
            akb = self.a.mul(&akb).expect("dims validated");
        }
        out
    }

    /// `[C; CA; ...; CA^{n-1}]`, the observability matrix.
    pub fn observability_matrix(&self) -> RationalMatrix {
        let n = self.state_dim();
        let p = self.output_dim();
        let mut out = RationalMatrix::zeros(n * p, n);
        let mut ca = self.c.clone();
        for k in 0..n {
            for i in 0..p {
                for j in 0..n {
                    *out.get_mut(k * p + i, j) = ca.get(i, j).clone();
                }
            }
            ca = ca.mul(&self.a).expect("dims validated");
        }
        out
    }
}

/// A block-Hankel matrix assembled from Markov parameters: block `(i, j)` is
/// `M_{i+j+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelMatrix {
    pub block_rows: usize,
    pub block_cols: usize,
    /// `M_1 .. M_{r+c}`, each `p x m`.
    pub markov: Vec<RationalMatrix>,
    pub assembled: RationalMatrix,
}

fn check_markov_dims(markov: &[RationalMatrix]) -> Result<(usize, usize)> {
    let first = markov
        .first()
        .ok_or_else(|| Error::InsufficientMarkov("empty Markov parameter list".into()))?;
    let (p, m) = (first.rows(), first.cols());
    if markov.iter().any(|mk| mk.rows() != p || mk.cols() != m) {
        return Err(Error::InvalidMatrix("Markov parameters have mixed dimensions".into()));
    }
    Ok((p, m))
}

/// Assembles the `r x c` block-Hankel matrix from `markov`, which lists
/// `M_0` first; entries `M_1 .. M_{r+c}` are used.
pub fn block_hankel(markov: &[RationalMatrix], r: usize, c: usize) -> Result<HankelMatrix> {
    let (p, m) = check_markov_dims(markov)?;
    if r == 0 || c == 0 {
        return Err(Error::InvalidMatrix("block dimensions must be positive".into()));
    }
    if markov.len() < r + c + 1 {
        return Err(Error::InsufficientMarkov(format!(
            "need M_1..M_{} (list of {} including M_0) but got {}",
            r + c,
            r + c + 1,
            markov.len()
        )));
    }
    let mut assembled = RationalMatrix::zeros(r * p, c * m);
    for bi in 0..r {
        for bj in 0..c {
            let mk = &markov[bi + bj + 1];
            for i in 0..p {
                for j in 0..m {
                    *assembled.get_mut(bi * p + i, bj * m + j) = mk.get(i, j).clone();
                }
            }
        }
    }
    Ok(HankelMatrix {
        block_rows: r,
        block_cols: c,
        markov: markov[1..=r + c].to_vec(),
        assembled,
    })
}

/// The shifted Hankel matrix: block `(i, j)` is `M_{i+j+2}`.
fn shifted_hankel(markov: &[RationalMatrix], r: usize, c: usize) -> Result<RationalMatrix> {
    let (p, m) = check_markov_dims(markov)?;
    if markov.len() < r + c + 2 {
        return Err(Error::InsufficientMarkov(format!(
            "shifted Hankel needs M_2..M_{} but got {} parameters",
            r + c + 1,
            markov.len()
        )));
    }
    let mut out = RationalMatrix::zeros(r * p, c * m);
    for bi in 0..r {
        for bj in 0..c {
            let mk = &markov[bi + bj + 2];
            for i in 0..p {
                for j in 0..m {
                    *out.get_mut(bi * p + i, bj * m + j) = mk.get(i, j).clone();
                }
            }
        }
    }
    Ok(out)
}

fn saturated_rank(markov: &[RationalMatrix], r: usize, c: usize) -> Result<usize> {
    let h = block_hankel(markov, r, c)?;
    let h_next = block_hankel(markov, r + 1, c + 1)?;
    let rank = h.assembled.rank();
    let rank_next = h_next.assembled.rank();
    if rank != rank_next {
        return Err(Error::OrderUndetermined { r, c, rank, rank_next });
    }
    Ok(rank)
}

/// The minimal linear state dimension: the saturated block-Hankel rank.
pub fn mcmillan_degree(markov: &[RationalMatrix], r: usize, c: usize) -> Result<usize> {
    saturated_rank(markov, r, c)
}

/// Ho-Kalman realization: factor the Hankel matrix exactly, read `C` and `B`
/// off the factors, and solve `O A R = H_shifted` through the pivot
/// submatrix.
///
/// `p` and `m` are the output and input dimensions; the rank must have
/// saturated at `(r, c)`, which is checked against `(r+1, c+1)`.
pub fn ho_kalman(
    markov: &[RationalMatrix],
    r: usize,
    c: usize,
    p: usize,
    m: usize,
) -> Result<LinearSystem> {
    let (mp, mm) = check_markov_dims(markov)?;
    if (mp, mm) != (p, m) {
        return Err(Error::InvalidMatrix(format!(
            "Markov parameters are {mp}x{mm} but p = {p}, m = {m} was requested"
        )));
    }
    let rank = saturated_rank(markov, r, c)?;
    let h = block_hankel(markov, r, c)?;
    let (o, rr, _) = rank_factor(&h.assembled);
    let hup = shifted_hankel(markov, r, c)?;

    let d = markov[0].clone();
    if rank == 0 {
        return LinearSystem::new(
            RationalMatrix::zeros(0, 0),
            RationalMatrix::zeros(0, m),
            RationalMatrix::zeros(p, 0),
            d,
        );
    }

    // R is in reduced row echelon form, so its pivot columns carry the
    // identity and (R restricted to them)^{-1} = I.
    let (_, r_pivots) = rr.rref();
    let o_rows = o.independent_rows();
    let o_sub = o.select_rows(&o_rows);
    let o_sub_inv = o_sub.inverse().expect("pivot submatrix of a full-column-rank factor");
    let a = o_sub_inv.mul(&hup.select_rows(&o_rows).select_cols(&r_pivots))?;

    let c_mat = o.select_rows(&(0..p).collect::<Vec<_>>());
    let b_mat = rr.select_cols(&(0..m).collect::<Vec<_>>());
    LinearSystem::new(a, b_mat, c_mat, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(v: Rational) -> RationalMatrix {
        RationalMatrix::from_rows(vec![vec![v]]).unwrap()
    }

    fn scalar_markov(vals: &[Rational]) -> Vec<RationalMatrix> {
        vals.iter().map(|v| scalar(v.clone())).collect()
    }

    fn half_pole() -> LinearSystem {
        // x(n+1) = x(n)/2 + u(n), y = x
        LinearSystem::new(
            scalar(rat(1, 2)),
            scalar(rat(1, 1)),
            scalar(rat(1, 1)),
            scalar(rat(0, 1)),
        )
        .unwrap()
    }

    #[test]
    fn markov_of_static_gain() {
        let sys = LinearSystem::new(
            RationalMatrix::zeros(0, 0),
            RationalMatrix::zeros(0, 1),
            RationalMatrix::zeros(1, 0),
            scalar(rat(7, 3)),
        )
        .unwrap();
        let mk = sys.markov_parameters(4);
        assert_eq!(mk[0], scalar(rat(7, 3)));
        assert!(mk[1..].iter().all(|m| m.is_zero()));
    }

    #[test]
    fn markov_of_half_pole() {
        // hand computation: C A^{k-1} B = (1/2)^{k-1}
        let mk = half_pole().markov_parameters(5);
        let expect = scalar_markov(&[rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 4), rat(1, 8)]);
        assert_eq!(mk, expect);
    }

    #[test]
    fn markov_of_unit_delay() {
        let sys = LinearSystem::new(
            scalar(rat(0, 1)),
            scalar(rat(1, 1)),
            scalar(rat(1, 1)),
            scalar(rat(0, 1)),
        )
        .unwrap();
        let mk = sys.markov_parameters(5);
        assert_eq!(mk[1], scalar(rat(1, 1)));
        assert!(mk[0].is_zero() && mk[2..].iter().all(|m| m.is_zero()));
    }

    #[test]
    fn hankel_assembly() {
        let mk = scalar_markov(&[rat(9, 1), rat(1, 1), rat(1, 2), rat(1, 4), rat(1, 8)]);
        let h = block_hankel(&mk, 2, 2).unwrap();
        let expect = RationalMatrix::from_rows(vec![
            vec![rat(1, 1), rat(1, 2)],
            vec![rat(1, 2), rat(1, 4)],
        ])
        .unwrap();
        assert_eq!(h.assembled, expect);
        let h11 = block_hankel(&mk, 1, 1).unwrap();
        assert_eq!(h11.assembled, scalar(rat(1, 1)));
        assert!(block_hankel(&mk[..2], 2, 2).is_err());
    }

    #[test]
    fn hankel_of_zero_tail_is_zero() {
        let mk = scalar_markov(&[rat(3, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert!(block_hankel(&mk, 2, 2).unwrap().assembled.is_zero());
    }

    #[test]
    fn rank_factor_cases() {
        let z = RationalMatrix::zeros(3, 2);
        let (o, r, rank) = rank_factor(&z);
        assert_eq!(rank, 0);
        assert_eq!((o.rows(), o.cols()), (3, 0));
        assert_eq!((r.rows(), r.cols()), (0, 2));

        let outer = RationalMatrix::from_i64(vec![vec![1, 2], vec![2, 4]]);
        let (o, r, rank) = rank_factor(&outer);
        assert_eq!(rank, 1);
        assert_eq!(o.mul(&r).unwrap(), outer);

        let h = block_hankel(&half_pole().markov_parameters(6), 2, 2).unwrap();
        let (o, r, rank) = rank_factor(&h.assembled);
        assert_eq!(rank, 1);
        assert_eq!(o.mul(&r).unwrap(), h.assembled);
    }

    #[test]
    fn ho_kalman_static_gain() {
        let mk = scalar_markov(&[rat(5, 2), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        let sys = ho_kalman(&mk, 1, 1, 1, 1).unwrap();
        assert_eq!(sys.state_dim(), 0);
        assert_eq!(sys.d, scalar(rat(5, 2)));
    }

    #[test]
    fn ho_kalman_unit_delay() {
        let mk = scalar_markov(&[
            rat(0, 1),
            rat(1, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
        ]);
        let sys = ho_kalman(&mk, 1, 1, 1, 1).unwrap();
        assert_eq!(sys.state_dim(), 1);
        assert_eq!(sys.markov_parameters(6), mk);
    }

    #[test]
    fn ho_kalman_collapses_nonminimal_half_pole() {
        // 3-state non-minimal realization of the 1/2-pole system
        let sys3 = LinearSystem::new(
            RationalMatrix::from_rows(vec![
                vec![rat(1, 2), rat(0, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 3), rat(0, 1)],
                vec![rat(0, 1), rat(0, 1), rat(1, 5)],
            ])
            .unwrap(),
            RationalMatrix::from_rows(vec![vec![rat(1, 1)], vec![rat(1, 1)], vec![rat(0, 1)]])
                .unwrap(),
            RationalMatrix::from_rows(vec![vec![rat(1, 1), rat(0, 1), rat(1, 1)]]).unwrap(),
            scalar(rat(0, 1)),
        )
        .unwrap();
        let mk = sys3.markov_parameters(10);
        let real = ho_kalman(&mk, 2, 2, 1, 1).unwrap();
        assert_eq!(real.state_dim(), 1);
        assert_eq!(real.markov_parameters(8), mk[..8].to_vec());
    }

    #[test]
    fn mcmillan_degree_cases() {
        let zero = scalar_markov(&vec![rat(1, 1); 8]);
        // constant-D system: all M_k = 1 for k >= 1 comes from a pole at 1
        assert_eq!(mcmillan_degree(&zero, 2, 2).unwrap(), 1);

        let delay = scalar_markov(&[
            rat(0, 1),
            rat(1, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
        ]);
        assert_eq!(mcmillan_degree(&delay, 1, 1).unwrap(), 1);

        let zeros = scalar_markov(&[rat(4, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(mcmillan_degree(&zeros, 1, 1).unwrap(), 0);

        // two-pole system diag(1/2, 1/3), B = C^T = [1, 1]
        let two = LinearSystem::new(
            RationalMatrix::from_rows(vec![
                vec![rat(1, 2), rat(0, 1)],
                vec![rat(0, 1), rat(1, 3)],
            ])
            .unwrap(),
            RationalMatrix::from_rows(vec![vec![rat(1, 1)], vec![rat(1, 1)]]).unwrap(),
            RationalMatrix::from_rows(vec![vec![rat(1, 1), rat(1, 1)]]).unwrap(),
            scalar(rat(0, 1)),
        )
        .unwrap();
        let mk = two.markov_parameters(10);
        assert_eq!(mcmillan_degree(&mk, 3, 3).unwrap(), 2);
    }

    #[test]
    fn unsaturated_rank_is_rejected() {
        // the 1-block Hankel of the two-pole system has rank 1, the 2-block
        // rank 2
        let two = LinearSystem::new(
            RationalMatrix::from_rows(vec![
                vec![rat(1, 2), rat(0, 1)],
                vec![rat(0, 1), rat(1, 3)],
            ])
            .unwrap(),
            RationalMatrix::from_rows(vec![vec![rat(1, 1)], vec![rat(1, 1)]]).unwrap(),
            RationalMatrix::from_rows(vec![vec![rat(1, 1), rat(1, 1)]]).unwrap(),
            scalar(rat(0, 1)),
        )
        .unwrap();
        let mk = two.markov_parameters(10);
        assert!(matches!(
            ho_kalman(&mk, 1, 1, 1, 1),
            Err(Error::OrderUndetermined { .. })
        ));
    }
}

//! Dense exact linear algebra over a field (`Rat` or `Gq`).
//!
//! Everything here is small (dimensions in the low hundreds at most), so the
//! kernel favors clarity: naive products, Gauss-Jordan elimination for rank
//! and kernels. Operators on tensor-product spaces are kept factored as sums
//! of Kronecker terms (`KronSum`) until final assembly.

use crate::error::{Error, Result};
use crate::num::Scalar;

#[derive(Clone, PartialEq)]
pub struct Mat<T: Scalar> {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<T>,
}

impl<T: Scalar> std::fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.nrows, self.ncols)?;
        for r in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols).map(|c| format!("{}", self.at(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Mat { nrows, ncols, data: vec![T::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r);
        }
        Mat { nrows, ncols, data }
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for r in 0..nrows {
            for c in 0..ncols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.ncols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.ncols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// True iff `self == lambda * I`.
    pub fn is_scalar(&self, lambda: &T) -> bool {
        if !self.is_square() {
            return false;
        }
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                let want = if r == c { lambda.clone() } else { T::zero() };
                if *self.at(r, c) != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Mat { nrows: self.nrows, ncols: self.ncols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Mat { nrows: self.nrows, ncols: self.ncols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| a.neg()).collect();
        Mat { nrows: self.nrows, ncols: self.ncols, data }
    }

    pub fn scale(&self, s: &T) -> Self {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Mat { nrows: self.nrows, ncols: self.ncols, data }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ncols, o.nrows, "matrix product shape");
        let mut out = Self::zeros(self.nrows, o.ncols);
        for r in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.ncols {
                    let b = o.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.ncols {
                    acc = acc.add(&self.at(r, c).mul(&v[c]));
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |r, c| self.at(c, r).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |r, c| self.at(c, r).conj())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.nrows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.nrows * o.nrows, self.ncols * o.ncols);
        for r1 in 0..self.nrows {
            for c1 in 0..self.ncols {
                let a = self.at(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..o.nrows {
                    for c2 in 0..o.ncols {
                        let b = o.at(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(r1 * o.nrows + r2, c1 * o.ncols + c2, a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.nrows + o.nrows, self.ncols + o.ncols);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                out.set(r, c, self.at(r, c).clone());
            }
        }
        for r in 0..o.nrows {
            for c in 0..o.ncols {
                out.set(self.nrows + r, self.ncols + c, o.at(r, c).clone());
            }
        }
        out
    }

    /// Row-reduce in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.ncols {
            if row == self.nrows {
                break;
            }
            let Some(p) = (row..self.nrows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            // swap rows p, row
            for c in 0..self.ncols {
                let a = self.at(p, c).clone();
                let b = self.at(row, c).clone();
                self.set(p, c, b);
                self.set(row, c, a);
            }
            let inv = self.at(row, col).inv().expect("nonzero pivot");
            for c in 0..self.ncols {
                let v = self.at(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.nrows {
                if r != row && !self.at(r, col).is_zero() {
                    let f = self.at(r, col).clone();
                    for c in 0..self.ncols {
                        let v = self.at(r, c).sub(&f.mul(self.at(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {v : Av = 0}, as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![T::zero(); self.ncols];
            v[fc] = T::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = m.at(i, fc).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve A x = b; error when inconsistent, picks the particular solution
    /// with free variables zero.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        assert_eq!(self.nrows, b.len());
        let mut aug = Mat::zeros(self.nrows, self.ncols + 1);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.ncols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.ncols) {
            return Err(Error::Invalid("inconsistent linear system".into()));
        }
        let mut x = vec![T::zero(); self.ncols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(i, self.ncols).clone();
        }
        Ok(x)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square());
        let n = self.nrows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, n + r, T::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n {
            return Err(Error::DegenerateForm("matrix is singular".into()));
        }
        Ok(Self::from_fn(n, n, |r, c| aug.at(r, n + c).clone()))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.nrows).map(|r| self.at(r, c).clone()).collect()
    }
}

/// Operator on a tensor product V ⊗ W kept as a sum Σ Aᵢ ⊗ Bᵢ.
///
/// Products then cost |terms|² small multiplications instead of one large
/// dense product; `assemble` expands to the full matrix at the end.
#[derive(Clone)]
pub struct KronSum<T: Scalar> {
    pub ldim: usize,
    pub rdim: usize,
    pub terms: Vec<(Mat<T>, Mat<T>)>,
}

impl<T: Scalar> KronSum<T> {
    pub fn zero(ldim: usize, rdim: usize) -> Self {
        KronSum { ldim, rdim, terms: Vec::new() }
    }

    pub fn identity(ldim: usize, rdim: usize) -> Self {
        KronSum { ldim, rdim, terms: vec![(Mat::identity(ldim), Mat::identity(rdim))] }
    }

    pub fn from_left(a: Mat<T>, rdim: usize) -> Self {
        let ldim = a.nrows;
        KronSum { ldim, rdim, terms: vec![(a, Mat::identity(rdim))] }
    }

    pub fn from_right(ldim: usize, b: Mat<T>) -> Self {
        let rdim = b.nrows;
        KronSum { ldim, rdim, terms: vec![(Mat::identity(ldim), b)] }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.ldim, self.rdim), (o.ldim, o.rdim));
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        KronSum { ldim: self.ldim, rdim: self.rdim, terms }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!((self.ldim, self.rdim), (o.ldim, o.rdim));
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (a1, b1) in &self.terms {
            for (a2, b2) in &o.terms {
                terms.push((a1.mul(a2), b1.mul(b2)));
            }
        }
        KronSum { ldim: self.ldim, rdim: self.rdim, terms }
    }

    pub fn scale(&self, s: &T) -> Self {
        let terms = self.terms.iter().map(|(a, b)| (a.scale(s), b.clone())).collect();
        KronSum { ldim: self.ldim, rdim: self.rdim, terms }
    }

    pub fn assemble(&self) -> Mat<T> {
        let mut out = Mat::zeros(self.ldim * self.rdim, self.ldim * self.rdim);
        for (a, b) in &self.terms {
            out = out.add(&a.kron(b));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rint, rq, Rat};

    fn m(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(rint).collect()).collect())
    }

    #[test]
    fn rank_kernel_inverse() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(a.matvec(&k[0]).iter().all(|x| x.is_zero()));

        let b = m(vec![vec![2, 1], vec![1, 1]]);
        let binv = b.inverse().unwrap();
        assert!(b.mul(&binv).is_scalar(&rint(1)));
    }

    #[test]
    fn solve_consistent() {
        let a = m(vec![vec![1, 1], vec![1, -1]]);
        let x = a.solve(&[rint(3), rint(1)]).unwrap();
        assert_eq!(x, vec![rint(2), rint(1)]);
        let sing = m(vec![vec![1, 1], vec![1, 1]]);
        assert!(sing.solve(&[rint(0), rint(1)]).is_err());
    }

    #[test]
    fn kron_factored_product_matches_dense() {
        let a = m(vec![vec![1, 2], vec![0, 1]]);
        let b = m(vec![vec![0, 1], vec![1, 0]]);
        let c = m(vec![vec![1, 0], vec![3, 1]]);
        let d = m(vec![vec![2, 0], vec![0, 5]]);
        let ks1 = KronSum { ldim: 2, rdim: 2, terms: vec![(a.clone(), b.clone())] };
        let ks2 = KronSum { ldim: 2, rdim: 2, terms: vec![(c.clone(), d.clone())] };
        let lhs = ks1.mul(&ks2).assemble();
        let rhs = a.kron(&b).mul(&c.kron(&d));
        assert_eq!(lhs.sub(&rhs).is_zero(), true);
        assert_eq!(lhs.at(0, 0), &rq(0, 1));
    }
}

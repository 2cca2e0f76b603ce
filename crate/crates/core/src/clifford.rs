//! Clifford algebra of a Euclidean space over the rationals, with the
//! convention c(X)^2 = -||X||^2, and its irreducible graded module realized
//! by creation/annihilation operators on the exterior algebra of a maximal
//! isotropic subspace. Matrix entries are Gaussian rationals.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::num::{rint, rq, Gq, Rat, Scalar};

/// Element of Cliff(R^d): finite sum of ordered monomials e_S, S a subset of
/// the generator set encoded as a bitmask.
#[derive(Clone, PartialEq)]
pub struct CliffordElement {
    pub dim: usize,
    pub terms: BTreeMap<u64, Rat>,
}

impl std::fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Sign and support of the product e_S * e_T.
pub(crate) fn mono_mul_pub(s: u64, t: u64) -> (i8, u64) {
    mono_mul(s, t)
}

fn mono_mul(s: u64, t: u64) -> (i8, u64) {
    let mut sign = 1i8;
    let mut acc = s;
    let mut rest = t;
    while rest != 0 {
        let i = rest.trailing_zeros() as u64;
        rest &= rest - 1;
        // move e_i leftwards through the generators of `acc` above i
        let above = (acc >> (i + 1)).count_ones();
        if above % 2 == 1 {
            sign = -sign;
        }
        if acc & (1 << i) != 0 {
            // contraction e_i e_i = -1
            sign = -sign;
            acc &= !(1 << i);
        } else {
            acc |= 1 << i;
        }
    }
    (sign, acc)
}

impl CliffordElement {
    pub fn zero(dim: usize) -> Self {
        CliffordElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0u64, Rat::one());
        CliffordElement { dim, terms }
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut terms = BTreeMap::new();
        terms.insert(1u64 << i, Rat::one());
        CliffordElement { dim, terms }
    }

    /// c(v) for a coordinate vector v.
    pub fn vector(dim: usize, v: &[Rat]) -> Self {
        assert_eq!(v.len(), dim);
        let mut terms = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(1u64 << i, c.clone());
            }
        }
        CliffordElement { dim, terms }
    }

    pub fn scalar(dim: usize, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0u64, c);
        }
        CliffordElement { dim, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, mono: u64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch("Clifford ambient dimensions differ".into()));
        }
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        CliffordElement {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch("Clifford ambient dimensions differ".into()));
        }
        let mut out = Self::zero(self.dim);
        for (s, a) in &self.terms {
            for (t, b) in &o.terms {
                let (sign, u) = mono_mul(*s, *t);
                let c = if sign == 1 { a * b } else { -(a * b) };
                out.insert(u, c);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.add(&o.mul(self)?.neg())
    }

    /// None when the element mixes even and odd monomials.
    pub fn grading(&self) -> Option<u8> {
        let mut g: Option<u8> = None;
        for m in self.terms.keys() {
            let p = (m.count_ones() % 2) as u8;
            match g {
                None => g = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        g.or(Some(0))
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut mono = String::new();
            for i in 0..self.dim {
                if m & (1 << i) != 0 {
                    mono.push_str(&format!("e{}", i + 1));
                }
            }
            if mono.is_empty() {
                mono = "1".into();
            }
            parts.push(format!("{}*{}", crate::num::fmt_rat(c), mono));
        }
        parts.join(" + ")
    }
}

/// The canonical morphism from a Lie algebra of isometries into the Clifford
/// algebra: alpha(Z) = -1/4 sum_a c(ad_Z X_a) c(X_a) over any orthonormal
/// basis {X_a}. `ad` is the matrix of ad_Z in the ambient coordinates.
pub fn fundamental_morphism(ad: &Mat<Rat>) -> Result<CliffordElement> {
    let d = ad.nrows;
    let std_basis: Vec<Vec<Rat>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    fundamental_morphism_with_basis(ad, &std_basis)
}

/// Same, over an arbitrary orthonormal basis given by coordinate vectors.
pub fn fundamental_morphism_with_basis(
    ad: &Mat<Rat>,
    basis: &[Vec<Rat>],
) -> Result<CliffordElement> {
    let d = ad.nrows;
    if !ad.is_square() {
        return Err(Error::DimensionMismatch("ad matrix must be square".into()));
    }
    if ad.add(&ad.transpose()).is_zero() == false {
        return Err(Error::Invalid("ad matrix is not skew-symmetric for the inner product".into()));
    }
    let mut acc = CliffordElement::zero(d);
    for b in basis {
        let img = ad.matvec(b);
        let term = CliffordElement::vector(d, &img).mul(&CliffordElement::vector(d, b))?;
        acc = acc.add(&term)?;
    }
    Ok(acc.scale(&rq(-1, 4)))
}

/// Concrete irreducible graded module of Cliff(R^ambient), ambient even,
/// realized on the exterior algebra of m = ambient/2 fermionic modes.
#[derive(Clone, Debug)]
pub struct SpinRep {
    /// Dimension of the underlying Euclidean space s (may be ambient - 1).
    pub s_dim: usize,
    /// Number of Clifford generators (s_dim, or s_dim + 1 when s_dim is odd).
    pub ambient: usize,
    /// Module dimension 2^(ambient/2).
    pub dim: usize,
    /// Generator matrices, skew-adjoint, squaring to -I.
    pub gammas: Vec<Mat<Gq>>,
    /// +1/-1 grading per basis vector (parity of the Fock occupation set).
    pub grading: Vec<i8>,
}

impl SpinRep {
    pub fn grading_matrix(&self) -> Mat<Gq> {
        Mat::from_fn(self.dim, self.dim, |r, c| {
            if r == c {
                Gq::from_rat(rint(self.grading[r] as i64))
            } else {
                Gq::zero()
            }
        })
    }

    /// Spin-module symmetry for odd s_dim: i * c(e_ambient) * grading.
    /// Skew-adjoint, squares to -I, anticommutes with the last generator and
    /// commutes with the others.
    pub fn odd_symmetry(&self) -> Option<Mat<Gq>> {
        if self.s_dim % 2 == 0 {
            return None;
        }
        let eps = self.grading_matrix();
        let m = self.gammas[self.ambient - 1].mul(&eps).scale(&Gq::i());
        Some(m)
    }

    /// Matrix of a Clifford element.
    pub fn represent(&self, x: &CliffordElement) -> Result<Mat<Gq>> {
        if x.dim > self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "element lives in Cliff(R^{}), module is over Cliff(R^{})",
                x.dim, self.ambient
            )));
        }
        let mut out = Mat::zeros(self.dim, self.dim);
        for (mono, c) in &x.terms {
            let mut m = Mat::identity(self.dim);
            for i in 0..self.ambient {
                if mono & (1 << i) != 0 {
                    m = m.mul(&self.gammas[i]);
                }
            }
            out = out.add(&m.scale(&Gq::from_rat(c.clone())));
        }
        Ok(out)
    }
}

/// Build the irreducible spin module for a d-dimensional space. For odd d the
/// module is over Cliff(R^(d+1)) with the extra generator last.
pub fn build_irreducible_spin_rep(d: usize) -> SpinRep {
    let ambient = if d % 2 == 0 { d } else { d + 1 };
    let m = ambient / 2;
    let dim = 1usize << m;
    // basis of the module: subsets T of {0..m-1}; creation A_j^* adds j with
    // the sign (-1)^{#(T below j)}.
    let sign_below = |t: usize, j: usize| -> i64 {
        let below = (t & ((1usize << j) - 1)).count_ones();
        if below % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let mut gammas = Vec::with_capacity(ambient);
    for pair in 0..m {
        // e_{2pair} = A^* - A ; e_{2pair+1} = i (A^* + A)
        let mut even = Mat::zeros(dim, dim);
        let mut odd = Mat::zeros(dim, dim);
        for t in 0..dim {
            if t & (1 << pair) == 0 {
                let u = t | (1 << pair);
                let s = sign_below(t, pair);
                // A^* |t> = s |u>
                even.set(u, t, Gq::from_rat(rint(s)));
                odd.set(u, t, Gq::new(Rat::zero(), rint(s)));
            } else {
                let u = t & !(1 << pair);
                let s = sign_below(u, pair);
                // A |t> = s |u>
                even.set(u, t, Gq::from_rat(rint(-s)));
                odd.set(u, t, Gq::new(Rat::zero(), rint(s)));
            }
        }
        gammas.push(even);
        gammas.push(odd);
    }
    let grading: Vec<i8> =
        (0..dim).map(|t| if t.count_ones() % 2 == 0 { 1 } else { -1 }).collect();
    SpinRep { s_dim: d, ambient, dim, gammas, grading }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        let e1 = CliffordElement::generator(3, 0);
        let e2 = CliffordElement::generator(3, 1);
        assert_eq!(e1.mul(&e1).unwrap(), CliffordElement::scalar(3, -Rat::one()));
        // anticommutation
        let ab = e1.mul(&e2).unwrap();
        let ba = e2.mul(&e1).unwrap();
        assert_eq!(ab, ba.neg());
        // (e1 + e2)^2 = -2
        let s = e1.add(&e2).unwrap();
        assert_eq!(s.mul(&s).unwrap(), CliffordElement::scalar(3, rint(-2)));
    }

    #[test]
    fn associativity_spot() {
        let x = CliffordElement::vector(4, &[rint(1), rint(2), rint(0), rint(-1)]);
        let y = CliffordElement::generator(4, 2);
        let z = CliffordElement::vector(4, &[rq(1, 2), rint(0), rint(3), rint(1)]);
        let lhs = x.mul(&y).unwrap().mul(&z).unwrap();
        let rhs = x.mul(&y.mul(&z).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn spin_rep_relations() {
        for d in [0usize, 1, 2, 3, 4, 5, 6] {
            let rep = build_irreducible_spin_rep(d);
            let expect_dim = 1usize << ((d + 1) / 2);
            assert_eq!(rep.dim, expect_dim, "dim for s_dim {d}");
            let id = Mat::<Gq>::identity(rep.dim);
            let eps = rep.grading_matrix();
            for (a, ga) in rep.gammas.iter().enumerate() {
                // odd-graded
                assert!(eps.mul(ga).add(&ga.mul(&eps)).is_zero(), "gamma_{a} not odd");
                // skew-adjoint
                assert!(ga.conj_transpose().add(ga).is_zero(), "gamma_{a} not skew-adjoint");
                for (b, gb) in rep.gammas.iter().enumerate() {
                    let anti = ga.anticommutator(gb);
                    let want = if a == b { id.scale(&Gq::from_rat(rint(-2))) } else { Mat::zeros(rep.dim, rep.dim) };
                    assert_eq!(anti, want, "anticommutator ({a},{b})");
                }
            }
            if d % 2 == 1 {
                let g = rep.odd_symmetry().unwrap();
                assert!(g.conj_transpose().add(&g).is_zero());
                assert!(g.mul(&g).is_scalar(&Gq::from_rat(rint(-1))));
                let last = &rep.gammas[rep.ambient - 1];
                assert!(g.anticommutator(last).is_zero(), "odd symmetry vs last generator");
                for a in 0..rep.ambient - 1 {
                    assert!(g.commutator(&rep.gammas[a]).is_zero());
                }
            }
        }
    }

    #[test]
    fn fundamental_morphism_rotation() {
        // J: e1 -> -e2, e2 -> e1 gives alpha = -1/2 e1 e2
        let j = Mat::from_rows(vec![vec![rint(0), rint(1)], vec![rint(-1), rint(0)]]);
        let a = fundamental_morphism(&j).unwrap();
        let mut want = CliffordElement::zero(2);
        want.terms.insert(0b11, rq(-1, 2));
        assert_eq!(a, want);
        // commutator identity c(ad_Z X) = [alpha(Z), c(X)] on basis vectors
        for i in 0..2 {
            let x = CliffordElement::generator(2, i);
            let adx = CliffordElement::vector(2, &j.col(i));
            assert_eq!(a.commutator(&x).unwrap(), adx);
        }
        // trivial action maps to zero
        let z = Mat::zeros(2, 2);
        assert!(fundamental_morphism(&z).unwrap().is_zero());
        // non-skew input rejected
        let bad = Mat::from_rows(vec![vec![rint(1), rint(0)], vec![rint(0), rint(0)]]);
        assert!(fundamental_morphism(&bad).is_err());
    }

    #[test]
    fn fundamental_morphism_basis_independence() {
        // 4-dim space, Z acting as a rotation in the (1,2)-plane at speed 3
        let mut ad = Mat::zeros(4, 4);
        ad.set(0, 1, rint(3));
        ad.set(1, 0, rint(-3));
        let std = fundamental_morphism(&ad).unwrap();
        // rational orthonormal basis via a 3-4-5 rotation in planes (1,3) and (2,4)
        let rot = |c: Rat, s: Rat, i: usize, j: usize| {
            let mut m = Mat::<Rat>::identity(4);
            m.set(i, i, c.clone());
            m.set(j, j, c);
            m.set(i, j, -s.clone());
            m.set(j, i, s);
            m
        };
        let q = rot(rq(3, 5), rq(4, 5), 0, 2).mul(&rot(rq(5, 13), rq(12, 13), 1, 3));
        let basis: Vec<Vec<Rat>> = (0..4).map(|c| q.col(c)).collect();
        // ad in the same ambient coordinates, basis change on the summation only
        let alt = fundamental_morphism_with_basis(&ad, &basis).unwrap();
        assert_eq!(std, alt);
    }

    #[test]
    fn represent_matches_algebra() {
        let rep = build_irreducible_spin_rep(4);
        let x = CliffordElement::vector(4, &[rint(1), rq(1, 2), rint(0), rint(2)]);
        let y = CliffordElement::vector(4, &[rint(0), rint(1), rint(-1), rint(1)]);
        let lhs = rep.represent(&x.mul(&y).unwrap()).unwrap();
        let rhs = rep.represent(&x).unwrap().mul(&rep.represent(&y).unwrap());
        assert_eq!(lhs, rhs);
    }
}

//! Finite root systems realized inside a rational weight space.
//!
//! A system may span only part of its ambient space (u(2): one root in a
//! rank-two space) or be empty (torus factors, rank-0 Levis); every algorithm
//! below tolerates both. Reflections act on the full coordinate space and fix
//! the orthogonal complement of the root span.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::num::{rint, Rat, Scalar};
use crate::weight::{Weight, WeightSpace};

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub space: WeightSpace,
    pub simple: Vec<Weight>,
    pub positive: Vec<Weight>,
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    /// Orthogonal rational matrix on coordinates.
    pub matrix: Mat<Rat>,
    /// Reduced word in simple reflections (indices into `simple`).
    pub word: Vec<usize>,
}

impl RootSystem {
    /// Empty system in a given ambient space; every weight is dominant.
    pub fn empty(space: WeightSpace) -> Self {
        RootSystem { space, simple: vec![], positive: vec![] }
    }

    /// Build from explicit simple roots: generates the full system by closing
    /// under simple reflections. Validates crystallographic pairings.
    pub fn from_simple_roots(space: WeightSpace, simple: Vec<Weight>) -> Result<Self> {
        for a in &simple {
            if space.norm_sq(a)?.is_zero() {
                return Err(Error::DegenerateForm("zero-length simple root".into()));
            }
        }
        for a in &simple {
            for b in &simple {
                let p = pairing(&space, a, b)?;
                if !p.is_integer() {
                    return Err(Error::NonFiniteCartan(format!(
                        "non-integral Cartan pairing <{a},{b}^> = {p}"
                    )));
                }
            }
        }
        let mut roots: BTreeSet<Weight> = BTreeSet::new();
        let mut queue: VecDeque<Weight> = simple.iter().cloned().collect();
        let cap = 1000usize;
        while let Some(r) = queue.pop_front() {
            if roots.contains(&r) {
                continue;
            }
            roots.insert(r.clone());
            roots.insert(r.neg());
            if roots.len() > cap {
                return Err(Error::NonFiniteCartan(
                    "reflection closure did not terminate (not finite type?)".into(),
                ));
            }
            for s in &simple {
                let refl = reflect(&space, &r, s)?;
                if !roots.contains(&refl) {
                    queue.push_back(refl);
                }
            }
        }
        // positive = nonnegative rational combination of the simples; since all
        // roots are ± such combinations, testing the sign of the first nonzero
        // simple-root coefficient suffices.
        let mut positive = Vec::new();
        for r in &roots {
            match root_sign(&space, &simple, r)? {
                1 => positive.push(r.clone()),
                -1 => {}
                _ => {
                    return Err(Error::NonFiniteCartan(format!(
                        "root {r} is not ± a combination of simple roots"
                    )))
                }
            }
        }
        positive.sort();
        Ok(RootSystem { space, simple, positive })
    }

    /// Build from a finite-type (generalized) Cartan matrix. Roots live in
    /// simple-root coordinates; the gram matrix is the symmetrized form
    /// scaled by `normalization`.
    pub fn from_cartan_matrix(tag: &str, cartan: &[Vec<i64>], normalization: &Rat) -> Result<Self> {
        let n = cartan.len();
        for row in cartan {
            if row.len() != n {
                return Err(Error::NonFiniteCartan("Cartan matrix is not square".into()));
            }
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::NonFiniteCartan(format!("diagonal entry a[{i}][{i}] != 2")));
            }
            for j in 0..n {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(Error::NonFiniteCartan(format!(
                            "positive off-diagonal entry a[{i}][{j}]"
                        )));
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(Error::NonFiniteCartan(format!(
                            "zero pattern not symmetric at ({i},{j})"
                        )));
                    }
                }
            }
        }
        // Symmetrizer: d_i a_ij = d_j a_ji with d_i > 0 rational.
        let mut d: Vec<Option<Rat>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(Rat::one());
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if i == j || cartan[i][j] == 0 {
                        continue;
                    }
                    let want = d[i].clone().unwrap() * rint(cartan[j][i]) / rint(cartan[i][j]);
                    match &d[j] {
                        None => {
                            d[j] = Some(want);
                            queue.push_back(j);
                        }
                        Some(have) => {
                            if *have != want {
                                return Err(Error::NonFiniteCartan(
                                    "Cartan matrix is not symmetrizable".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        let d: Vec<Rat> = d.into_iter().map(|x| x.unwrap()).collect();
        // (alpha_i, alpha_j) = d_j a_ij * normalization (symmetric by the above).
        let gram = Mat::from_fn(n, n, |i, j| d[j].clone() * rint(cartan[i][j]) * normalization);
        // Finite type iff the symmetrized matrix is positive definite.
        let mut minor = Mat::zeros(0, 0);
        for k in 1..=n {
            minor = Mat::from_fn(k, k, |i, j| gram.at(i, j).clone());
            let det = det_small(&minor);
            if det <= Rat::zero() {
                return Err(Error::NonFiniteCartan(format!(
                    "symmetrized form not positive definite (leading {k}x{k} minor = {det})"
                )));
            }
        }
        let _ = minor;
        let space = WeightSpace::new(tag, gram);
        let simple: Vec<Weight> = (0..n)
            .map(|i| {
                let mut c = vec![Rat::zero(); n];
                c[i] = Rat::one();
                space.weight(c)
            })
            .collect();
        Self::from_simple_roots(space, simple)
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn all_roots(&self) -> Vec<Weight> {
        let mut v = self.positive.clone();
        v.extend(self.positive.iter().map(|r| r.neg()));
        v
    }

    pub fn half_sum_positive(&self) -> Weight {
        let mut rho = self.space.zero();
        for r in &self.positive {
            rho = rho.add(r);
        }
        rho.scale(&crate::num::rq(1, 2))
    }

    pub fn reflect(&self, w: &Weight, root: &Weight) -> Result<Weight> {
        reflect(&self.space, w, root)
    }

    pub fn is_dominant(&self, w: &Weight) -> Result<bool> {
        for a in &self.simple {
            if self.space.inner(w, a)? < Rat::zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reflect into the dominant chamber; returns (dominant weight, number of
    /// simple reflections applied). The count gives det(w) = (-1)^count.
    pub fn to_dominant(&self, w: &Weight) -> Result<(Weight, usize)> {
        let mut cur = w.clone();
        let mut count = 0usize;
        'outer: loop {
            for a in &self.simple {
                if self.space.inner(&cur, a)? < Rat::zero() {
                    cur = self.reflect(&cur, a)?;
                    count += 1;
                    continue 'outer;
                }
            }
            return Ok((cur, count));
        }
    }

    /// True when some root is orthogonal to w (w lies on a wall).
    pub fn is_singular(&self, w: &Weight) -> Result<bool> {
        for a in &self.positive {
            if self.space.inner(w, a)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn simple_reflection_matrix(&self, i: usize) -> Result<Mat<Rat>> {
        self.reflection_matrix(&self.simple[i])
    }

    pub fn reflection_matrix(&self, root: &Weight) -> Result<Mat<Rat>> {
        let n = self.space.dim();
        let mut m = Mat::zeros(n, n);
        for c in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[c] = Rat::one();
            let img = self.reflect(&self.space.weight(e), root)?;
            for r in 0..n {
                m.set(r, c, img.coords[r].clone());
            }
        }
        Ok(m)
    }

    /// The full Weyl group by breadth-first closure over simple reflections.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        let n = self.space.dim();
        let id = WeylElement { matrix: Mat::identity(n), word: vec![] };
        if self.rank() == 0 {
            return Ok(vec![id]);
        }
        let gens: Vec<Mat<Rat>> = (0..self.rank())
            .map(|i| self.simple_reflection_matrix(i))
            .collect::<Result<_>>()?;
        let key = |m: &Mat<Rat>| -> Vec<Rat> {
            let mut v = Vec::with_capacity(n * n);
            for r in 0..n {
                for c in 0..n {
                    v.push(m.at(r, c).clone());
                }
            }
            v
        };
        let mut seen: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
        let mut out = vec![id];
        seen.insert(key(&out[0].matrix), 0);
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for (i, g) in gens.iter().enumerate() {
                let m = g.mul(&cur.matrix);
                let k = key(&m);
                if !seen.contains_key(&k) {
                    let mut word = vec![i];
                    word.extend(cur.word.iter().copied());
                    seen.insert(k, out.len());
                    out.push(WeylElement { matrix: m, word });
                    if out.len() > 100_000 {
                        return Err(Error::NonFiniteCartan("Weyl group did not close".into()));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// 2 (w, a) / (a, a), the Cartan pairing against the coroot of `a`.
pub fn pairing(space: &WeightSpace, w: &Weight, a: &Weight) -> Result<Rat> {
    let num = space.inner(w, a)?;
    let den = space.norm_sq(a)?;
    Ok(rint(2) * num / den)
}

pub fn reflect(space: &WeightSpace, w: &Weight, root: &Weight) -> Result<Weight> {
    let p = pairing(space, w, root)?;
    Ok(w.sub(&root.scale(&p)))
}

/// +1 / -1 when `r` is a nonneg/nonpos rational combination of the simples,
/// 0 otherwise.
fn root_sign(space: &WeightSpace, simple: &[Weight], r: &Weight) -> Result<i8> {
    let n = simple.len();
    if n == 0 {
        return Ok(0);
    }
    // Solve r = sum c_i alpha_i in the least-squares-exact sense: the roots
    // live in the simple span, so solving the Gram system is enough.
    let g = Mat::from_fn(n, n, |i, j| space.inner(&simple[i], &simple[j]).unwrap());
    let b: Vec<Rat> = (0..n).map(|i| space.inner(r, &simple[i]).unwrap()).collect();
    let c = g.solve(&b)?;
    // Verify the combination reproduces r (i.e. r is in the span).
    let mut rec = space.zero();
    for (ci, ai) in c.iter().zip(simple) {
        rec = rec.add(&ai.scale(ci));
    }
    if rec != *r {
        return Ok(0);
    }
    if c.iter().all(|x| *x >= Rat::zero()) {
        Ok(1)
    } else if c.iter().all(|x| *x <= Rat::zero()) {
        Ok(-1)
    } else {
        Ok(0)
    }
}

fn det_small(m: &Mat<Rat>) -> Rat {
    // Fraction-free enough for our sizes: straight LU with pivoting.
    let n = m.nrows;
    let mut a = m.clone();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a.at(r, col).is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            for c in 0..n {
                let x = a.at(p, c).clone();
                let y = a.at(col, c).clone();
                a.set(p, c, y);
                a.set(col, c, x);
            }
            det = -det;
        }
        let piv = a.at(col, col).clone();
        det *= piv.clone();
        for r in (col + 1)..n {
            let f = a.at(r, col).clone() / piv.clone();
            for c in col..n {
                let v = a.at(r, c).clone() - f.clone() * a.at(col, c).clone();
                a.set(r, c, v);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rq;

    #[test]
    fn a1_from_cartan() {
        let rs = RootSystem::from_cartan_matrix("a1", &[vec![2]], &Rat::one()).unwrap();
        assert_eq!(rs.positive.len(), 1);
        assert_eq!(rs.all_roots().len(), 2);
        let rho = rs.half_sum_positive();
        assert_eq!(rho, rs.simple[0].scale(&rq(1, 2)));
    }

    #[test]
    fn c2_has_eight_roots_and_weyl_order_eight() {
        let c2 = vec![vec![2, -1], vec![-2, 2]];
        let rs = RootSystem::from_cartan_matrix("c2", &c2, &Rat::one()).unwrap();
        assert_eq!(rs.positive.len(), 4);
        assert_eq!(rs.all_roots().len(), 8);
        let w = rs.weyl_group().unwrap();
        assert_eq!(w.len(), 8);
        // every Weyl matrix permutes the root set
        let roots: BTreeSet<Weight> = rs.all_roots().into_iter().collect();
        for e in &w {
            for r in &roots {
                let img = rs.space.weight(e.matrix.matvec(&r.coords));
                assert!(roots.contains(&img));
            }
            // word reconstructs matrix
            let mut m = Mat::identity(rs.space.dim());
            for &i in &e.word {
                m = m.mul(&rs.simple_reflection_matrix(i).unwrap());
            }
            // note: word was built as g * previous, so rebuild in the same order
            let mut m2 = Mat::identity(rs.space.dim());
            for &i in e.word.iter() {
                m2 = rs.simple_reflection_matrix(i).unwrap().mul(&m2);
            }
            assert!(e.matrix == m || e.matrix == m2);
        }
    }

    #[test]
    fn rank_zero_system() {
        let rs = RootSystem::empty(WeightSpace::euclidean("z", 0));
        assert!(rs.half_sum_positive().is_zero());
        assert_eq!(rs.weyl_group().unwrap().len(), 1);
    }

    #[test]
    fn rejects_non_finite_type() {
        // affine A1: symmetrizable but not positive definite
        let aff = vec![vec![2, -2], vec![-2, 2]];
        assert!(RootSystem::from_cartan_matrix("aff", &aff, &Rat::one()).is_err());
        let bad = vec![vec![2, -1], vec![0, 2]];
        assert!(RootSystem::from_cartan_matrix("bad", &bad, &Rat::one()).is_err());
    }

    #[test]
    fn reflections_orthogonal_involutive() {
        let c2 = vec![vec![2, -1], vec![-2, 2]];
        let rs = RootSystem::from_cartan_matrix("c2", &c2, &Rat::one()).unwrap();
        for i in 0..2 {
            let s = rs.simple_reflection_matrix(i).unwrap();
            assert!(s.mul(&s).is_scalar(&Rat::one()));
            // gram-orthogonality: s^T G s = G
            let g = &rs.space.gram;
            assert_eq!(s.transpose().mul(g).mul(&s), g.clone());
        }
    }

    #[test]
    fn to_dominant_counts_reflections() {
        let c2 = vec![vec![2, -1], vec![-2, 2]];
        let rs = RootSystem::from_cartan_matrix("c2", &c2, &Rat::one()).unwrap();
        let rho = rs.half_sum_positive();
        let w = rs.weyl_group().unwrap();
        for e in &w {
            let img = rs.space.weight(e.matrix.matvec(&rho.coords));
            let (dom, cnt) = rs.to_dominant(&img).unwrap();
            assert_eq!(dom, rho);
            assert_eq!(cnt % 2, e.word.len() % 2);
        }
    }
}

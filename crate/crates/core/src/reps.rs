//! Finite-dimensional representation combinatorics: weight multiplicities by
//! the Freudenthal recursion, Weyl dimensions, Casimir eigenvalues, tensor
//! product decomposition, character peeling / branching, and discrete-series
//! K-type multiplicities by the Blattner formula.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::num::{rint, rq, Rat, Scalar};
use crate::roots::RootSystem;
use crate::weight::{Weight, WeightMap};

#[derive(Clone, Debug)]
pub struct IrrepData {
    pub highest: Weight,
    pub dimension: u64,
    pub weight_multiplicities: BTreeMap<Weight, u64>,
}

/// All weights mu = highest - sum n_i alpha_i with ||mu + rho||^2 <= ||highest + rho||^2.
/// Convexity of the norm along each coordinate ray makes the cutoff sound.
fn lattice_cone_points(rs: &RootSystem, highest: &Weight) -> Result<Vec<Weight>> {
    let rho = rs.half_sum_positive();
    let bound = rs.space.norm_sq(&highest.add(&rho))?;
    let mut out = Vec::new();
    let rank = rs.rank();
    fn go(
        rs: &RootSystem,
        rho: &Weight,
        bound: &Rat,
        rank: usize,
        idx: usize,
        cur: Weight,
        out: &mut Vec<Weight>,
    ) -> Result<()> {
        if idx == rank {
            if rs.space.norm_sq(&cur.add(rho))? <= *bound {
                out.push(cur);
            }
            return Ok(());
        }
        let mut point = cur;
        let mut prev_norm: Option<Rat> = None;
        loop {
            let n = rs.space.norm_sq(&point.add(rho))?;
            let increasing = prev_norm.as_ref().map(|p| n > *p).unwrap_or(false);
            if n > *bound && increasing {
                return Ok(());
            }
            go(rs, rho, bound, rank, idx + 1, point.clone(), out)?;
            prev_norm = Some(n);
            point = point.sub(&rs.simple[idx]);
        }
    }
    go(rs, &rho, &bound, rank, 0, highest.clone(), &mut out)?;
    Ok(out)
}

/// Freudenthal recursion. Dominant weights are processed by decreasing height
/// (ties broken lexicographically); the full weight system is the union of
/// their Weyl orbits.
pub fn weight_multiplicities(rs: &RootSystem, highest: &Weight) -> Result<IrrepData> {
    if !rs.is_dominant(highest)? {
        return Err(Error::NotDominant(format!("{highest}")));
    }
    let rho = rs.half_sum_positive();
    if rs.rank() == 0 {
        let mut m = BTreeMap::new();
        m.insert(highest.clone(), 1u64);
        return Ok(IrrepData { highest: highest.clone(), dimension: 1, weight_multiplicities: m });
    }
    let points = lattice_cone_points(rs, highest)?;
    let mut dominant: Vec<Weight> = Vec::new();
    for p in points {
        if rs.is_dominant(&p)? {
            dominant.push(p);
        }
    }
    // order by increasing depth ||highest+rho||^2 - ||mu+rho||^2, i.e. highest first
    let top_norm = rs.space.norm_sq(&highest.add(&rho))?;
    dominant.sort_by(|a, b| {
        let na = rs.space.norm_sq(&a.add(&rho)).unwrap();
        let nb = rs.space.norm_sq(&b.add(&rho)).unwrap();
        nb.cmp(&na).then(a.cmp(b))
    });

    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    let get = |mult: &BTreeMap<Weight, u64>, w: &Weight, rs: &RootSystem| -> Result<u64> {
        let (dom, _) = rs.to_dominant(w)?;
        Ok(*mult.get(&dom).unwrap_or(&0))
    };
    for mu in &dominant {
        if mu == highest {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let denom = top_norm.clone() - rs.space.norm_sq(&mu.add(&rho))?;
        if denom.is_zero() {
            // same Weyl orbit as the highest weight: only the highest itself
            // is dominant there, so this cannot happen for mu != highest
            return Err(Error::Invalid(format!("degenerate Freudenthal denominator at {mu}")));
        }
        let mut acc = Rat::zero();
        for alpha in &rs.positive {
            let mut k = 1i64;
            loop {
                let shifted = mu.add(&alpha.scale(&rint(k)));
                if rs.space.norm_sq(&shifted.add(&rho))? > top_norm {
                    break;
                }
                let m = get(&mult, &shifted, rs)?;
                if m > 0 {
                    acc += rint(m as i64) * rs.space.inner(&shifted, alpha)?;
                }
                k += 1;
            }
        }
        let val = rint(2) * acc / denom;
        if !val.is_integer() || val < Rat::zero() {
            return Err(Error::Invalid(format!("non-integral multiplicity {val} at {mu}")));
        }
        let v: u64 = val
            .to_integer()
            .try_into()
            .map_err(|_| Error::Invalid("multiplicity overflow".into()))?;
        if v > 0 {
            mult.insert(mu.clone(), v);
        }
    }
    // expand Weyl orbits
    let mut full: BTreeMap<Weight, u64> = BTreeMap::new();
    for (mu, m) in &mult {
        for w in weyl_orbit(rs, mu)? {
            full.insert(w, *m);
        }
    }
    let dimension: u64 = full.values().sum();
    let wd = weyl_dimension(rs, highest)?;
    if dimension != wd {
        return Err(Error::Invalid(format!(
            "Freudenthal total {dimension} disagrees with Weyl dimension {wd} for {highest}"
        )));
    }
    Ok(IrrepData { highest: highest.clone(), dimension, weight_multiplicities: full })
}

pub fn weyl_orbit(rs: &RootSystem, w: &Weight) -> Result<Vec<Weight>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![w.clone()];
    while let Some(x) = stack.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        for a in &rs.simple {
            stack.push(rs.reflect(&x, a)?);
        }
    }
    Ok(seen.into_iter().collect())
}

pub fn weyl_dimension(rs: &RootSystem, highest: &Weight) -> Result<u64> {
    let rho = rs.half_sum_positive();
    let mut num = Rat::one();
    let mut den = Rat::one();
    let hr = highest.add(&rho);
    for a in &rs.positive {
        num *= rs.space.inner(&hr, a)?;
        den *= rs.space.inner(&rho, a)?;
    }
    let d = num / den;
    if !d.is_integer() || d <= Rat::zero() {
        return Err(Error::NotDominant(format!("{highest} gives non-positive dimension {d}")));
    }
    Ok(d.to_integer().try_into().map_err(|_| Error::Invalid("dimension overflow".into()))?)
}

/// <mu, mu + 2 rho> = ||mu + rho||^2 - ||rho||^2, the quadratic Casimir
/// eigenvalue on the irreducible with highest weight mu.
pub fn casimir_eigenvalue(rs: &RootSystem, highest: &Weight) -> Result<Rat> {
    let rho = rs.half_sum_positive();
    let two_rho = rho.scale(&rint(2));
    rs.space.inner(highest, &highest.add(&two_rho))
}

/// Klimyk's formula: decompose a tensor product into dominant highest weights.
pub fn tensor_decompose(
    rs: &RootSystem,
    a: &IrrepData,
    b: &IrrepData,
) -> Result<BTreeMap<Weight, u64>> {
    if a.highest.tag != b.highest.tag {
        return Err(Error::SpaceMismatch {
            expected: a.highest.tag.0.clone(),
            got: b.highest.tag.0.clone(),
        });
    }
    // iterate over the smaller weight system
    let (big, small) = if a.dimension >= b.dimension { (a, b) } else { (b, a) };
    let rho = rs.half_sum_positive();
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in &small.weight_multiplicities {
        let x = big.highest.add(nu).add(&rho);
        if rs.is_singular(&x)? {
            continue;
        }
        let (dom, cnt) = rs.to_dominant(&x)?;
        let sign = if cnt % 2 == 0 { 1i64 } else { -1i64 };
        *acc.entry(dom.sub(&rho)).or_insert(0) += sign * (*m as i64);
    }
    let mut out = BTreeMap::new();
    for (w, c) in acc {
        if c < 0 {
            return Err(Error::Invalid(format!("negative multiplicity {c} at {w} in tensor")));
        }
        if c > 0 {
            out.insert(w, c as u64);
        }
    }
    Ok(out)
}

/// Decompose a (virtual, nonnegative) character into irreducible constituents
/// by repeatedly peeling the maximal weight.
pub fn decompose_character(
    rs: &RootSystem,
    character: &BTreeMap<Weight, u64>,
) -> Result<BTreeMap<Weight, u64>> {
    let mut rem: BTreeMap<Weight, i64> =
        character.iter().map(|(w, m)| (w.clone(), *m as i64)).collect();
    rem.retain(|_, m| *m != 0);
    let rho = rs.half_sum_positive();
    let mut out: BTreeMap<Weight, u64> = BTreeMap::new();
    while !rem.is_empty() {
        // maximal element for <., rho>, ties lexicographically; within a
        // character every such maximum is a constituent's highest weight
        let mut best: Option<(Rat, Weight)> = None;
        for w in rem.keys() {
            let f = rs.space.inner(w, &rho)?;
            match &best {
                None => best = Some((f, w.clone())),
                Some((bf, bw)) => {
                    if f > *bf || (f == *bf && w > bw) {
                        best = Some((f, w.clone()));
                    }
                }
            }
        }
        let (_, top) = best.unwrap();
        let m = rem[&top];
        if m < 0 || !rs.is_dominant(&top)? {
            return Err(Error::Invalid(format!(
                "character is not a nonnegative sum of irreducibles (offender {top}, mult {m})"
            )));
        }
        let irrep = weight_multiplicities(rs, &top)?;
        for (w, k) in &irrep.weight_multiplicities {
            let e = rem.entry(w.clone()).or_insert(0);
            *e -= (m as i64) * (*k as i64);
            if *e == 0 {
                rem.remove(w);
            }
        }
        *out.entry(top).or_insert(0) += m as u64;
    }
    Ok(out)
}

/// Restrict an irreducible along a weight map and decompose over the target
/// system. The restricted character must be a nonnegative sum of target
/// irreducible characters, otherwise the embedding is rejected.
pub fn branch(
    rep: &IrrepData,
    map: &WeightMap,
    target: &RootSystem,
) -> Result<BTreeMap<Weight, u64>> {
    if map.to.tag != target.space.tag {
        return Err(Error::SpaceMismatch {
            expected: target.space.tag.0.clone(),
            got: map.to.tag.0.clone(),
        });
    }
    let mut restricted: BTreeMap<Weight, u64> = BTreeMap::new();
    for (w, m) in &rep.weight_multiplicities {
        let img = map.apply(w)?;
        *restricted.entry(img).or_insert(0) += m;
    }
    let out = decompose_character(target, &restricted)?;
    let total: u64 = out
        .iter()
        .map(|(w, m)| weyl_dimension(target, w).map(|d| d * m))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    if total != rep.dimension {
        return Err(Error::Invalid(format!(
            "branching loses dimension: {} vs {}",
            total, rep.dimension
        )));
    }
    Ok(out)
}

/// Partition function: number of ways to write v as a nonnegative integer
/// combination of the given vectors.
pub struct PartitionFn<'a> {
    betas: &'a [Weight],
    xi: Weight,
    rs_space: &'a crate::weight::WeightSpace,
    memo: std::cell::RefCell<BTreeMap<(Vec<Rat>, usize), u64>>,
}

impl<'a> PartitionFn<'a> {
    pub fn new(space: &'a crate::weight::WeightSpace, betas: &'a [Weight]) -> Result<Self> {
        // strictly positive functional on all betas: their own sum works for a
        // subset of a positive system; verified here
        let mut xi = space.zero();
        for b in betas {
            xi = xi.add(b);
        }
        for b in betas {
            if space.inner(&xi, b)? <= Rat::zero() {
                return Err(Error::Invalid("no separating functional for partition basis".into()));
            }
        }
        Ok(PartitionFn { betas, xi, rs_space: space, memo: Default::default() })
    }

    pub fn count(&self, v: &Weight) -> Result<u64> {
        self.count_from(v, 0)
    }

    fn count_from(&self, v: &Weight, idx: usize) -> Result<u64> {
        if v.is_zero() {
            return Ok(1);
        }
        if idx == self.betas.len() {
            return Ok(0);
        }
        if self.rs_space.inner(&self.xi, v)? < Rat::zero() {
            return Ok(0);
        }
        let key = (v.coords.clone(), idx);
        if let Some(c) = self.memo.borrow().get(&key) {
            return Ok(*c);
        }
        let beta = &self.betas[idx];
        let mut total = 0u64;
        let mut point = v.clone();
        loop {
            total += self.count_from(&point, idx + 1)?;
            point = point.sub(beta);
            if self.rs_space.inner(&self.xi, &point)? < Rat::zero() {
                break;
            }
        }
        self.memo.borrow_mut().insert(key, total);
        Ok(total)
    }
}

/// Discrete-series K-type multiplicity (Blattner formula, Hecht-Schmid):
///   m(cap_lambda) = sum_{w in W_K} det(w) Q( w(cap_lambda + rho_c) - lambda - rho_n )
/// where Q is the partition function over the lambda-positive noncompact
/// roots. `lambda` must be regular for the full root system and dominant for
/// the compact positive system.
pub fn blattner_multiplicity(
    k_rs: &RootSystem,
    g_roots: &[(Weight, bool)],
    lambda: &Weight,
    cap_lambda: &Weight,
) -> Result<u64> {
    let space = &k_rs.space;
    let mut psi_n: Vec<Weight> = Vec::new();
    for (beta, compact) in g_roots {
        let p = space.inner(lambda, beta)?;
        if p.is_zero() {
            return Err(Error::Invalid(format!(
                "Harish-Chandra parameter {lambda} is singular against root {beta}"
            )));
        }
        if !*compact && p > Rat::zero() {
            psi_n.push(beta.clone());
        }
    }
    if !k_rs.is_dominant(lambda)? {
        return Err(Error::NotDominant(format!(
            "{lambda} is not dominant for the compact positive system"
        )));
    }
    let rho_c = k_rs.half_sum_positive();
    let mut rho_n = space.zero();
    for b in &psi_n {
        rho_n = rho_n.add(b);
    }
    let rho_n = rho_n.scale(&rq(1, 2));
    let q = PartitionFn::new(space, &psi_n)?;
    let base = lambda.add(&rho_n);
    let mut total = 0i64;
    for w in k_rs.weyl_group()? {
        let img = space.weight(w.matrix.matvec(&cap_lambda.add(&rho_c).coords));
        let arg = img.sub(&base);
        let c = q.count(&arg)? as i64;
        total += if w.word.len() % 2 == 0 { c } else { -c };
    }
    if total < 0 {
        return Err(Error::Invalid(format!(
            "negative Blattner multiplicity {total} for {cap_lambda}"
        )));
    }
    Ok(total as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::num::rint;
    use crate::weight::WeightSpace;

    fn a1() -> RootSystem {
        RootSystem::from_cartan_matrix("a1", &[vec![2]], &Rat::one()).unwrap()
    }

    fn c2() -> RootSystem {
        RootSystem::from_cartan_matrix("c2", &[vec![2, -1], vec![-2, 2]], &Rat::one()).unwrap()
    }

    /// u(2) model: rank-2 euclidean space with the single root e1 - e2.
    fn u2() -> RootSystem {
        let sp = WeightSpace::euclidean("u2", 2);
        let alpha = sp.weight_i64(&[1, -1]);
        RootSystem::from_simple_roots(sp, vec![alpha]).unwrap()
    }

    #[test]
    fn trivial_rep() {
        let rs = a1();
        let zero = rs.space.zero();
        let rep = weight_multiplicities(&rs, &zero).unwrap();
        assert_eq!(rep.dimension, 1);
        assert_eq!(casimir_eigenvalue(&rs, &zero).unwrap(), Rat::zero());
    }

    #[test]
    fn sl2_string() {
        let rs = a1();
        // highest = 3 * alpha/2 -> dimension 4, weights {±3/2, ±1/2} alpha
        let hw = rs.simple[0].scale(&rq(3, 2));
        let rep = weight_multiplicities(&rs, &hw).unwrap();
        assert_eq!(rep.dimension, 4);
        assert!(rep.weight_multiplicities.values().all(|&m| m == 1));
    }

    #[test]
    fn c2_adjoint() {
        let rs = c2();
        // adjoint = highest root; for C2 the highest root is the long root
        // 2 alpha_1 + alpha_2 in simple-root coordinates
        let hw = rs.space.weight(vec![rint(2), rint(1)]);
        let rep = weight_multiplicities(&rs, &hw).unwrap();
        assert_eq!(rep.dimension, 10);
        let zero = rs.space.zero();
        assert_eq!(rep.weight_multiplicities[&zero], 2);
        // Casimir/norm identity
        let rho = rs.half_sum_positive();
        let lhs = casimir_eigenvalue(&rs, &hw).unwrap();
        let rhs = rs.space.norm_sq(&hw.add(&rho)).unwrap() - rs.space.norm_sq(&rho).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn u2_dimensions_and_tensor() {
        let rs = u2();
        let v = |a: i64, b: i64| rs.space.weight_i64(&[a, b]);
        let rep32 = weight_multiplicities(&rs, &v(3, 2)).unwrap();
        assert_eq!(rep32.dimension, 2);
        // V(1,0) ⊗ V(1,0) = V(2,0) + V(1,1)
        let f = weight_multiplicities(&rs, &v(1, 0)).unwrap();
        let t = tensor_decompose(&rs, &f, &f).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[&v(2, 0)], 1);
        assert_eq!(t[&v(1, 1)], 1);
        // dimension additivity
        let total: u64 = t.iter().map(|(w, m)| weyl_dimension(&rs, w).unwrap() * m).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn tensor_symmetric_clebsch_gordan() {
        let rs = a1();
        let v1 = rs.simple[0].scale(&rq(1, 2));
        let a = weight_multiplicities(&rs, &v1).unwrap();
        let b = weight_multiplicities(&rs, &rs.simple[0]).unwrap();
        let ab = tensor_decompose(&rs, &a, &b).unwrap();
        let ba = tensor_decompose(&rs, &b, &a).unwrap();
        assert_eq!(ab, ba);
        // V_1 ⊗ V_2 = V_3 + V_1 (spin labels: dims 2x3 = 4+2)
        assert_eq!(ab.len(), 2);
    }

    #[test]
    fn branch_u2_to_torus() {
        let rs = u2();
        let torus = RootSystem::empty(WeightSpace::euclidean("so2diag", 1));
        let map = WeightMap {
            from: rs.space.tag.clone(),
            to: torus.space.clone(),
            matrix: Mat::from_rows(vec![vec![rint(1), rint(-1)]]),
        };
        let rep = weight_multiplicities(&rs, &rs.space.weight_i64(&[2, 0])).unwrap();
        let br = branch(&rep, &map, &torus).unwrap();
        // weights 2,0,-2 each once
        assert_eq!(br.len(), 3);
        assert!(br.values().all(|&m| m == 1));
    }

    #[test]
    fn blattner_sl2_discrete_series() {
        // K = SO(2): empty compact system in a rank-1 space; g-roots ±2, noncompact.
        let sp = WeightSpace::euclidean("so2", 1);
        let k_rs = RootSystem::empty(sp.clone());
        let groots = vec![(sp.weight_i64(&[2]), false), (sp.weight_i64(&[-2]), false)];
        let lambda = sp.weight_i64(&[3]);
        // K-types of the holomorphic discrete series with parameter 3: 4, 6, 8, ...
        for j in -8..=8i64 {
            let m = blattner_multiplicity(&k_rs, &groots, &lambda, &sp.weight_i64(&[j])).unwrap();
            let expect = if j >= 4 && (j - 4) % 2 == 0 { 1 } else { 0 };
            assert_eq!(m, expect, "K-type {j}");
        }
    }

    #[test]
    fn blattner_sp4_minimal_k_type() {
        // U(2)-roots ±(e1-e2) compact; noncompact ±2e1, ±2e2, ±(e1+e2).
        let rs = u2();
        let sp = rs.space.clone();
        let mut groots = vec![
            (sp.weight_i64(&[1, -1]), true),
            (sp.weight_i64(&[-1, 1]), true),
        ];
        for v in [[2, 0], [-2, 0], [0, 2], [0, -2], [1, 1], [-1, -1]] {
            groots.push((sp.weight_i64(&v), false));
        }
        let lambda = sp.weight_i64(&[2, 1]);
        // lowest K-type of the holomorphic discrete series (2,1) is (3,3)
        assert_eq!(blattner_multiplicity(&rs, &groots, &lambda, &sp.weight_i64(&[3, 3])).unwrap(), 1);
        assert_eq!(blattner_multiplicity(&rs, &groots, &lambda, &sp.weight_i64(&[3, 2])).unwrap(), 0);
        assert_eq!(blattner_multiplicity(&rs, &groots, &lambda, &sp.weight_i64(&[2, 1])).unwrap(), 0);
        // next level: V(3,3) ⊗ p+ = V(5,3) alone (the (4,4) contributions cancel)
        assert_eq!(blattner_multiplicity(&rs, &groots, &lambda, &sp.weight_i64(&[5, 3])).unwrap(), 1);
        assert_eq!(blattner_multiplicity(&rs, &groots, &lambda, &sp.weight_i64(&[4, 4])).unwrap(), 0);
    }
}

//! Finite-dimensional K-theory bookkeeping: Bott elements, the crossed
//! product isomorphism for finite-group actions, character decomposition of
//! fibers, rank/degree summaries, and the explicit Dirac family for SL(2,R)
//! in the compact picture.

use std::collections::BTreeMap;

use crate::catalog::GroupDatum;
use crate::clifford::build_irreducible_spin_rep;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::num::{fmt_rat, rat_sqrt, rint, rq, Gq, Rat, Scalar};
use crate::spin::SpinModuleDescriptor;
use crate::tempered::{enumerate_classes, is_essential, matching_table, AssociateClass};
#[cfg(test)]
use crate::tempered::SigmaParam;

// ---------------------------------------------------------------------------
// Bott elements
// ---------------------------------------------------------------------------

/// Linear family v -> D_v of odd self-adjoint operators with D_v^2 = ||v||^2.
///
/// `module_dim` follows the dimension count 2^(d/2) for even d and
/// 2^((d-1)/2) for odd d; in the odd case that counts each graded half of
/// the underlying module (whose total dimension is 2^((d+1)/2)), since an
/// odd-graded family together with the required symmetry cannot exist on a
/// space of the smaller total dimension.
pub struct BottElement {
    pub d: usize,
    pub module_dim: u64,
    pub space_dim: usize,
    /// D_i for the i-th coordinate direction; D_v = sum v_i D_i.
    pub generators: Vec<Mat<Gq>>,
    pub grading: Vec<i8>,
    /// Odd d only: gamma with gamma* = -gamma, gamma^2 = -1, anticommuting
    /// with every D_v (Clifford multiplication by the extra generator).
    pub odd_symmetry: Option<Mat<Gq>>,
}

pub fn bott_element(d: usize) -> BottElement {
    let rep = build_irreducible_spin_rep(d);
    let generators: Vec<Mat<Gq>> = (0..d).map(|i| rep.gammas[i].scale(&Gq::i())).collect();
    let odd_symmetry =
        if d % 2 == 1 { Some(rep.gammas[rep.ambient - 1].clone()) } else { None };
    let module_dim = if d % 2 == 0 { 1u64 << (d / 2) } else { 1u64 << ((d - 1) / 2) };
    BottElement {
        d,
        module_dim,
        space_dim: rep.dim,
        generators,
        grading: rep.grading,
        odd_symmetry,
    }
}

impl BottElement {
    pub fn operator(&self, v: &[Rat]) -> Result<Mat<Gq>> {
        if v.len() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} coordinates, family is over R^{}",
                v.len(),
                self.d
            )));
        }
        let mut out = Mat::zeros(self.space_dim, self.space_dim);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.generators[i].scale(&Gq::from_rat(c.clone())));
            }
        }
        Ok(out)
    }

    /// D_v^2 = ||v||^2 I, D_v odd and self-adjoint; odd-case symmetry
    /// relations. All exact.
    pub fn check(&self, v: &[Rat]) -> Result<()> {
        let dv = self.operator(v)?;
        let norm: Rat =
            v.iter().map(|c| c * c).fold(Rat::zero(), |acc, x| acc + x);
        if !dv.mul(&dv).is_scalar(&Gq::from_rat(norm)) {
            return Err(Error::Invalid("D_v^2 != ||v||^2".into()));
        }
        if dv.conj_transpose() != dv {
            return Err(Error::Invalid("D_v is not self-adjoint".into()));
        }
        let eps = Mat::from_fn(self.space_dim, self.space_dim, |r, c| {
            if r == c { Gq::from_rat(rint(self.grading[r] as i64)) } else { Gq::zero() }
        });
        if !eps.mul(&dv).add(&dv.mul(&eps)).is_zero() {
            return Err(Error::Invalid("D_v is not odd-graded".into()));
        }
        if let Some(gamma) = &self.odd_symmetry {
            if gamma.conj_transpose() != gamma.neg() {
                return Err(Error::Invalid("gamma is not skew-adjoint".into()));
            }
            if !gamma.mul(gamma).is_scalar(&Gq::from_rat(rint(-1))) {
                return Err(Error::Invalid("gamma^2 != -1".into()));
            }
            if !gamma.anticommutator(&dv).is_zero() {
                return Err(Error::Invalid("gamma does not anticommute with D_v".into()));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Finite group algebra machinery
// ---------------------------------------------------------------------------

/// Elementary abelian 2-group of rank q; elements and characters are bitmasks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaGroup {
    pub rank: u32,
}

impl GammaGroup {
    pub fn order(&self) -> usize {
        1usize << self.rank
    }
    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        a ^ b
    }
    /// chi(g) = (-1)^(popcount(chi & g)).
    pub fn character(&self, chi: usize, g: usize) -> i64 {
        if ((chi & g).count_ones()) % 2 == 0 { 1 } else { -1 }
    }
}

/// Finite-dimensional *-algebra with structure constants, a unit, a star map
/// and a Gamma-action by linear maps (verified to be *-automorphisms).
pub struct AlgebraWithAction {
    pub name: String,
    pub gamma: GammaGroup,
    pub dim: usize,
    /// mult[i][j] = coordinates of b_i b_j.
    pub mult: Vec<Vec<Vec<Gq>>>,
    pub unit: Vec<Gq>,
    /// star[i] = coordinates of (b_i)^*; extended conjugate-linearly.
    pub star: Vec<Vec<Gq>>,
    pub action: Vec<Mat<Gq>>,
}

impl AlgebraWithAction {
    pub fn product(&self, x: &[Gq], y: &[Gq]) -> Vec<Gq> {
        let mut out = vec![Gq::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let f = x[i].mul(&y[j]);
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].add(&f.mul(c));
                    }
                }
            }
        }
        out
    }

    pub fn star_of(&self, x: &[Gq]) -> Vec<Gq> {
        let mut out = vec![Gq::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            let c = x[i].conj();
            for (k, s) in self.star[i].iter().enumerate() {
                if !s.is_zero() {
                    out[k] = out[k].add(&c.mul(s));
                }
            }
        }
        out
    }

    pub fn act(&self, g: usize, x: &[Gq]) -> Vec<Gq> {
        self.action[g].matvec(x)
    }

    /// The action is by unital *-automorphisms and a group homomorphism.
    pub fn verify_action(&self) -> Result<()> {
        let unit_ids: Vec<Vec<Gq>> = (0..self.dim)
            .map(|i| {
                let mut v = vec![Gq::zero(); self.dim];
                v[i] = Gq::one();
                v
            })
            .collect();
        for g in self.gamma.elements() {
            let a = &self.action[g];
            if a.matvec(&self.unit) != self.unit {
                return Err(Error::Invalid(format!("{}: action({g}) moves the unit", self.name)));
            }
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let lhs = self.act(g, &self.product(&unit_ids[i], &unit_ids[j]));
                    let rhs = self.product(&self.act(g, &unit_ids[i]), &self.act(g, &unit_ids[j]));
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "{}: action({g}) is not multiplicative at ({i},{j})",
                            self.name
                        )));
                    }
                }
                let lhs = self.act(g, &self.star_of(&unit_ids[i]));
                let rhs = self.star_of(&self.act(g, &unit_ids[i]));
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "{}: action({g}) does not commute with star",
                        self.name
                    )));
                }
            }
            for h in self.gamma.elements() {
                let gh = self.gamma.mul(g, h);
                if self.action[g].mul(&self.action[h]) != self.action[gh] {
                    return Err(Error::Invalid(format!(
                        "{}: action is not a homomorphism at ({g},{h})",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Report of the verified crossed-product isomorphism
/// A x| Gamma  ->  (A (x) K(l^2 Gamma))^(Gamma, lambda),
/// a |-> sum_gamma gamma(a) (x) e_gamma, gamma |-> 1 (x) rho(gamma).
#[derive(Debug)]
pub struct CrossedProductReport {
    pub algebra: String,
    pub gamma_rank: u32,
    pub crossed_dim: usize,
    pub fixed_dim: usize,
    pub multiplicative: bool,
    pub star_preserving: bool,
    pub injective: bool,
    pub onto_fixed: bool,
}

impl CrossedProductReport {
    pub fn ok(&self) -> bool {
        self.multiplicative
            && self.star_preserving
            && self.injective
            && self.onto_fixed
            && self.crossed_dim == self.fixed_dim
    }
}

pub fn verify_crossed_product_isomorphism(a: &AlgebraWithAction) -> Result<CrossedProductReport> {
    a.verify_action()?;
    let n = a.gamma.order();
    let dim_a = a.dim;
    let big = dim_a * n * n; // A (x) M_n coordinates: (i, r, c)
    let flat = |i: usize, r: usize, c: usize| -> usize { i * n * n + r * n + c };

    // lambda(g): permutation matrix |x> -> |g x>; rho(g): |x> -> |x g|.
    let perm_l = |g: usize, x: usize| -> usize { a.gamma.mul(g, x) };
    let perm_r = |g: usize, x: usize| -> usize { a.gamma.mul(x, g) };

    // Phi on the crossed-product basis (a_i (x) u_g):
    //   sum_h action_h(a_i) (x) E_{h,h} rho(g); E_{h,h} rho(g) = E_{h, hg}.
    let phi_basis: Vec<Vec<Gq>> = (0..dim_a)
        .flat_map(|i| {
            (0..n).map(move |g| (i, g)).collect::<Vec<_>>()
        })
        .map(|(i, g)| {
            let mut v = vec![Gq::zero(); big];
            let mut e = vec![Gq::zero(); dim_a];
            e[i] = Gq::one();
            for h in 0..n {
                let img = a.act(h, &e);
                let col = perm_r(g, h); // rho(g) maps |hg> to |h|: E_{h,h} rho(g) = E_{h, hg}
                for (t, c) in img.iter().enumerate() {
                    if !c.is_zero() {
                        v[flat(t, h, col)] = v[flat(t, h, col)].add(c);
                    }
                }
            }
            v
        })
        .collect();

    // crossed product multiplication on index pairs
    let cp_product = |x: &BTreeMap<(usize, usize), Gq>, y: &BTreeMap<(usize, usize), Gq>| {
        let mut out: BTreeMap<(usize, usize), Gq> = BTreeMap::new();
        for ((i, g), ci) in x {
            for ((j, h), cj) in y {
                let mut ej = vec![Gq::zero(); dim_a];
                ej[*j] = Gq::one();
                let mut ei = vec![Gq::zero(); dim_a];
                ei[*i] = Gq::one();
                let prod = a.product(&ei, &a.act(*g, &ej));
                let gh = a.gamma.mul(*g, *h);
                let f = ci.mul(cj);
                for (t, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        let e = out.entry((t, gh)).or_insert_with(Gq::zero);
                        *e = e.add(&f.mul(c));
                    }
                }
            }
        }
        out
    };
    let cp_star = |x: &BTreeMap<(usize, usize), Gq>| {
        // (a u_g)^* = u_g^* a^* = action_g^{-1}(a^*) u_{g^{-1}}; g^{-1} = g.
        let mut out: BTreeMap<(usize, usize), Gq> = BTreeMap::new();
        for ((i, g), c) in x {
            let mut e = vec![Gq::zero(); dim_a];
            e[*i] = Gq::one();
            let img = a.act(*g, &a.star_of(&e));
            for (t, v) in img.iter().enumerate() {
                if !v.is_zero() {
                    let entry = out.entry((t, *g)).or_insert_with(Gq::zero);
                    *entry = entry.add(&c.conj().mul(v));
                }
            }
        }
        out
    };
    let phi_of = |x: &BTreeMap<(usize, usize), Gq>| -> Vec<Gq> {
        let mut v = vec![Gq::zero(); big];
        for ((i, g), c) in x {
            let base = &phi_basis[i * n + g];
            for t in 0..big {
                if !base[t].is_zero() {
                    v[t] = v[t].add(&c.mul(&base[t]));
                }
            }
        }
        v
    };
    // matrix product in A (x) M_n
    let tensor_product = |x: &[Gq], y: &[Gq]| -> Vec<Gq> {
        let mut out = vec![Gq::zero(); big];
        for i in 0..dim_a {
            for r in 0..n {
                for c in 0..n {
                    let xv = &x[flat(i, r, c)];
                    if xv.is_zero() {
                        continue;
                    }
                    for j in 0..dim_a {
                        for c2 in 0..n {
                            let yv = &y[flat(j, c, c2)];
                            if yv.is_zero() {
                                continue;
                            }
                            let mut ei = vec![Gq::zero(); dim_a];
                            ei[i] = Gq::one();
                            let mut ej = vec![Gq::zero(); dim_a];
                            ej[j] = Gq::one();
                            let p = a.product(&ei, &ej);
                            let f = xv.mul(yv);
                            for (t, pc) in p.iter().enumerate() {
                                if !pc.is_zero() {
                                    out[flat(t, r, c2)] =
                                        out[flat(t, r, c2)].add(&f.mul(pc));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    };
    let tensor_star = |x: &[Gq]| -> Vec<Gq> {
        let mut out = vec![Gq::zero(); big];
        for i in 0..dim_a {
            let mut e = vec![Gq::zero(); dim_a];
            e[i] = Gq::one();
            let si = a.star_of(&e);
            for r in 0..n {
                for c in 0..n {
                    let xv = &x[flat(i, r, c)];
                    if xv.is_zero() {
                        continue;
                    }
                    for (t, sc) in si.iter().enumerate() {
                        if !sc.is_zero() {
                            out[flat(t, c, r)] = out[flat(t, c, r)].add(&xv.conj().mul(sc));
                        }
                    }
                }
            }
        }
        out
    };

    // verify multiplicativity and star on all basis pairs
    let mut multiplicative = true;
    let mut star_preserving = true;
    let basis_elems: Vec<BTreeMap<(usize, usize), Gq>> = (0..dim_a)
        .flat_map(|i| (0..n).map(move |g| (i, g)).collect::<Vec<_>>())
        .map(|(i, g)| {
            let mut m = BTreeMap::new();
            m.insert((i, g), Gq::one());
            m
        })
        .collect();
    for x in &basis_elems {
        let phix = phi_of(x);
        if tensor_star(&phix) != phi_of(&cp_star(x)) {
            star_preserving = false;
        }
        for y in &basis_elems {
            let lhs = phi_of(&cp_product(x, y));
            let rhs = tensor_product(&phix, &phi_of(y));
            if lhs != rhs {
                multiplicative = false;
            }
        }
    }

    // injectivity: rank of the images
    let img = Mat::from_fn(big, phi_basis.len(), |r, c| phi_basis[c][r].clone());
    let injective = img.rank() == phi_basis.len();

    // fixed subalgebra under the lambda-action: gamma . (a (x) T) =
    // action_gamma(a) (x) lambda(gamma) T lambda(gamma)^*
    let mut fixed_rows: Vec<Vec<Gq>> = Vec::new();
    for g in 1..n {
        // (action(g) (x) Ad lambda(g)) - id, as a big x big matrix, applied row-wise
        for i in 0..dim_a {
            for r in 0..n {
                for c in 0..n {
                    // image of basis (i, r, c)
                    let mut row = vec![Gq::zero(); big];
                    let mut e = vec![Gq::zero(); dim_a];
                    e[i] = Gq::one();
                    let img_a = a.act(g, &e);
                    let r2 = perm_l(g, r);
                    let c2 = perm_l(g, c);
                    for (t, v) in img_a.iter().enumerate() {
                        if !v.is_zero() {
                            row[flat(t, r2, c2)] = row[flat(t, r2, c2)].add(v);
                        }
                    }
                    row[flat(i, r, c)] = row[flat(i, r, c)].sub(&Gq::one());
                    fixed_rows.push(row);
                }
            }
        }
    }
    let fixed_dim = if fixed_rows.is_empty() {
        big
    } else {
        let m = Mat::from_fn(fixed_rows.len(), big, |r, c| fixed_rows[r][c].clone());
        big - m.rank()
    };
    // image lands inside the fixed algebra
    let mut onto_fixed = true;
    for v in &phi_basis {
        for g in 1..n {
            let mut moved = vec![Gq::zero(); big];
            for i in 0..dim_a {
                for r in 0..n {
                    for c in 0..n {
                        let xv = &v[flat(i, r, c)];
                        if xv.is_zero() {
                            continue;
                        }
                        let mut e = vec![Gq::zero(); dim_a];
                        e[i] = Gq::one();
                        let img_a = a.act(g, &e);
                        let r2 = perm_l(g, r);
                        let c2 = perm_l(g, c);
                        for (t, av) in img_a.iter().enumerate() {
                            if !av.is_zero() {
                                moved[flat(t, r2, c2)] = moved[flat(t, r2, c2)].add(&xv.mul(av));
                            }
                        }
                    }
                }
            }
            if moved != *v {
                onto_fixed = false;
            }
        }
    }
    Ok(CrossedProductReport {
        algebra: a.name.clone(),
        gamma_rank: a.gamma.rank,
        crossed_dim: dim_a * n,
        fixed_dim,
        multiplicative,
        star_preserving,
        injective,
        onto_fixed: onto_fixed && injective && fixed_dim == dim_a * n,
    })
}

/// Functions on a finite Gamma-set, Gamma acting by permuting points.
pub fn function_algebra(name: &str, gamma: GammaGroup, point_maps: Vec<Vec<usize>>) -> AlgebraWithAction {
    let dim = point_maps[0].len();
    let mut mult = vec![vec![vec![Gq::zero(); dim]; dim]; dim];
    for i in 0..dim {
        mult[i][i][i] = Gq::one();
    }
    let star: Vec<Vec<Gq>> = (0..dim)
        .map(|i| {
            let mut v = vec![Gq::zero(); dim];
            v[i] = Gq::one();
            v
        })
        .collect();
    let action: Vec<Mat<Gq>> = gamma
        .elements()
        .map(|g| {
            Mat::from_fn(dim, dim, |r, c| {
                // delta_c |-> delta_{g . c}
                if point_maps[g][c] == r { Gq::one() } else { Gq::zero() }
            })
        })
        .collect();
    AlgebraWithAction {
        name: name.into(),
        gamma,
        dim,
        mult,
        unit: vec![Gq::one(); dim],
        star,
        action,
    }
}

/// Full matrix algebra M_k with Gamma acting by conjugation with commuting
/// involutive unitaries.
pub fn matrix_algebra_with_conjugation(
    name: &str,
    gamma: GammaGroup,
    k: usize,
    unitaries: Vec<Mat<Gq>>,
) -> AlgebraWithAction {
    let dim = k * k;
    let idx = |r: usize, c: usize| r * k + c;
    let mut mult = vec![vec![vec![Gq::zero(); dim]; dim]; dim];
    for r in 0..k {
        for c in 0..k {
            for r2 in 0..k {
                for c2 in 0..k {
                    if c == r2 {
                        mult[idx(r, c)][idx(r2, c2)][idx(r, c2)] = Gq::one();
                    }
                }
            }
        }
    }
    let mut unit = vec![Gq::zero(); dim];
    for r in 0..k {
        unit[idx(r, r)] = Gq::one();
    }
    let star: Vec<Vec<Gq>> = (0..dim)
        .map(|i| {
            let (r, c) = (i / k, i % k);
            let mut v = vec![Gq::zero(); dim];
            v[idx(c, r)] = Gq::one();
            v
        })
        .collect();
    let action: Vec<Mat<Gq>> = gamma
        .elements()
        .map(|g| {
            let u = &unitaries[g];
            let ustar = u.conj_transpose();
            Mat::from_fn(dim, dim, |out_i, in_i| {
                // coefficient of E_{out} in u E_{in} u^*
                let (or, oc) = (out_i / k, out_i % k);
                let (ir, ic) = (in_i / k, in_i % k);
                u.at(or, ir).mul(ustar.at(ic, oc))
            })
        })
        .collect();
    AlgebraWithAction { name: name.into(), gamma, dim, mult, unit, star, action }
}

/// Model of one fiber with a finite-group action.
pub struct FiniteAlgebraModel {
    pub gamma: GammaGroup,
    pub fiber_rep: Vec<Mat<Gq>>,
}

/// Orthogonal decomposition of the fiber into character isotypics; returns
/// (character bitmask, multiplicity) for every character that occurs.
pub fn character_fibers(model: &FiniteAlgebraModel) -> Result<Vec<(usize, usize)>> {
    let n = model.fiber_rep[0].nrows;
    let order = model.gamma.order();
    // verify a representation: involutive and commuting
    for g in model.gamma.elements() {
        for h in model.gamma.elements() {
            let gh = model.gamma.mul(g, h);
            if model.fiber_rep[g].mul(&model.fiber_rep[h]) != model.fiber_rep[gh] {
                return Err(Error::Invalid("fiber_rep is not a group representation".into()));
            }
        }
    }
    let mut out = Vec::new();
    let mut total = 0usize;
    for chi in 0..order {
        // projector (1/|Gamma|) sum chi(g) rep(g)
        let mut p = Mat::zeros(n, n);
        for g in model.gamma.elements() {
            let sign = model.gamma.character(chi, g);
            let term = if sign == 1 {
                model.fiber_rep[g].clone()
            } else {
                model.fiber_rep[g].neg()
            };
            p = p.add(&term);
        }
        let p = p.scale(&Gq::from_rat(rq(1, order as i64)));
        let mult = p.rank();
        if mult > 0 {
            out.push((chi, mult));
            total += mult;
        }
    }
    if total != n {
        return Err(Error::Invalid("isotypic dimensions do not fill the fiber".into()));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// K-theory summary and index bookkeeping
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct KSummary {
    pub group: String,
    pub degree: u8,
    pub rank: u64,
    pub other_degree_rank: u64,
    /// Per essential class: (label, generator provenance).
    pub generators: Vec<(String, String)>,
}

pub fn k_summary(g: &GroupDatum, bound: &Rat) -> Result<KSummary> {
    let classes = enumerate_classes(g, bound)?;
    let mut generators = Vec::new();
    for c in classes.iter().filter(|c| is_essential(c)) {
        let fixed_dim = g.a_max_dim;
        generators.push((
            c.label(),
            format!(
                "free generator in degree {}; index of a Dirac family over the R-group-fixed \
subspace of a_P^* (dimension {fixed_dim}, R-group rank {})",
                g.dim_gk % 2,
                c.r_rank
            ),
        ));
    }
    Ok(KSummary {
        group: g.name.clone(),
        degree: (g.dim_gk % 2) as u8,
        rank: generators.len() as u64,
        other_degree_rank: 0,
        generators,
    })
}

/// The unique matched essential class carrying the index of the Dirac family
/// of S; errors when the window certified by ||S|| contains no match.
pub fn index_component(g: &GroupDatum, s: &SpinModuleDescriptor) -> Result<AssociateClass> {
    let table = matching_table(g, &s.norm_sq)?;
    let row = table
        .descriptor_rows
        .iter()
        .find(|(d, _)| d.mu == s.mu)
        .ok_or_else(|| Error::WindowTooSmall(format!("descriptor {} not enumerated", s.mu)))?;
    if row.1.len() != 1 {
        return Err(Error::WindowTooSmall(format!(
            "descriptor {} matched {} classes in the window",
            s.mu,
            row.1.len()
        )));
    }
    let label = &row.1[0];
    let classes = enumerate_classes(g, &s.norm_sq)?;
    classes
        .into_iter()
        .find(|c| &c.label() == label)
        .ok_or_else(|| Error::WindowTooSmall(format!("class {label} not re-enumerated")))
}

// ---------------------------------------------------------------------------
// The SL(2,R) Dirac family in the compact picture
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum Sl2Pair {
    /// Discrete series with parameter n != 0, matched to mu = n.
    DiscreteSeries(i64),
    /// Odd principal series, matched to mu = 0; family over a_P^*.
    OddPrincipal,
}

#[derive(Debug)]
pub enum BoundedTransform {
    /// (1 + phi^2) is a rational square: F = D / sqrt(1 + phi^2) exactly.
    Exact(Mat<Gq>),
    /// Interval certificate lo <= 1/sqrt(1 + phi^2) <= hi with |hi - lo| <= 1e-6.
    ScaledInterval { matrix: Mat<Gq>, lo: Rat, hi: Rat },
}

pub struct DiracFamilyReport {
    pub pair: Sl2Pair,
    pub phi: Rat,
    pub matrix: Mat<Gq>,
    pub squares_to_norm: bool,
    pub bounded_transform: BoundedTransform,
}

/// Explicit matrix of the Dirac operator on the invariant vectors
/// [V (x) S]^K for a matched SL(2,R) pair, in the compact picture.
///
/// The module action is tridiagonal on the K-weight basis v_j: with lowering
/// and raising operators L = X1 - iX2, R = X1 + iX2 one has
/// L v_j = a_j v_{j-2}, R v_j = b_j v_{j+2}, and the Casimir value fixes
/// a_j b_{j-2} and b_j a_{j+2}. Exact Gaussian-rational coefficient choices:
/// principal series (parameter phi): a_j = phi + i(j-1), b_j = -(phi - i(j+1));
/// discrete series (parameter n):    a_j = n + 1 - j,   b_j = n + 1 + j.
pub fn sl2_dirac_family(g: &GroupDatum, pair: &Sl2Pair, phi: &Rat) -> Result<DiracFamilyReport> {
    if g.name != "SL2R" {
        return Err(Error::Invalid(format!("the explicit Dirac family is for SL2R, not {}", g.name)));
    }
    let srep = build_irreducible_spin_rep(2);
    // S_irr basis: index 0 = weight +1, index 1 = weight -1 under alpha(Z0)
    let alpha = srep.represent(&g.lie.alpha(0)?)?;
    let wt_plus = alpha.at(0, 0).clone();
    if wt_plus != Gq::i() {
        return Err(Error::Invalid("unexpected spin weight normalization".into()));
    }
    let c1 = &srep.gammas[0];
    let c2 = &srep.gammas[1];

    match pair {
        Sl2Pair::DiscreteSeries(n) => {
            if *n == 0 {
                return Err(Error::Invalid("discrete series parameter must be nonzero".into()));
            }
            if !phi.is_zero() {
                return Err(Error::SpaceMismatch {
                    expected: "a_G^* = 0".into(),
                    got: format!("phi = {}", fmt_rat(phi)),
                });
            }
            // invariant vector: v_{n+1} (x) e_- for n > 0, v_{n-1} (x) e_+ for n < 0;
            // module coefficients a_j = n + 1 - j vanish at the lowest K-type, and
            // the complementary raising component pairs to weight != 0 and cancels.
            let (j0, s0): (i64, usize) = if *n > 0 { (n + 1, 1) } else { (n - 1, 0) };
            // lowest-weight module for n > 0 (a vanishes at j = n+1), highest-
            // weight module for n < 0 (b vanishes at j = n-1); both satisfy the
            // Casimir relations b_j a_{j+2} = n^2-(j+1)^2, a_j b_{j-2} = n^2-(j-1)^2
            let a = |j: i64| -> Gq {
                Gq::from_rat(rint(if *n > 0 { n + 1 - j } else { n + j - 1 }))
            };
            let b = |j: i64| -> Gq {
                Gq::from_rat(rint(if *n > 0 { n + 1 + j } else { n - 1 - j }))
            };
            // D(v_{j0} (x) s) components on v_{j0 -+ 2}; both must leave the
            // invariant line or vanish
            let mut diag = Gq::zero();
            for (target, coeff) in [(j0 - 2, a(j0)), (j0 + 2, b(j0))] {
                // X1 component coefficient: coeff/2 ; X2: -+ i coeff/2
                // total operator on the spin leg: (c1 -+ i c2)/2 * coeff
                let half = Gq::from_rat(rq(1, 2));
                let spin_op = if target < j0 {
                    c1.add(&c2.scale(&Gq::i())).scale(&half)
                } else {
                    c1.sub(&c2.scale(&Gq::i())).scale(&half)
                };
                let col: Vec<Gq> = (0..2).map(|r| spin_op.at(r, s0).clone().mul(&coeff)).collect();
                // invariance: K-weight of v_target (x) e_r is target + (±1 - n)
                for (r, v) in col.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let wt = target + if r == 0 { 1 } else { -1 } - n;
                    if wt == 0 {
                        diag = diag.add(v);
                    } else {
                        return Err(Error::Invalid(format!(
                            "discrete-series Dirac leaks to K-weight {wt}"
                        )));
                    }
                }
            }
            let mut matrix = Mat::zeros(1, 1);
            matrix.set(0, 0, diag);
            let squares = matrix.mul(&matrix).is_scalar(&Gq::zero()) || matrix.is_zero();
            Ok(DiracFamilyReport {
                pair: pair.clone(),
                phi: phi.clone(),
                squares_to_norm: squares && matrix.is_zero(),
                bounded_transform: BoundedTransform::Exact(matrix.clone()),
                matrix,
            })
        }
        Sl2Pair::OddPrincipal => {
            // invariants: u1 = v_{-1} (x) e_+, u2 = v_{+1} (x) e_-
            let a = |j: i64| -> Gq { Gq::new(phi.clone(), rint(j - 1)) };
            let b = |j: i64| -> Gq { Gq::new(-phi.clone(), rint(j + 1)) };
            // D(v_j (x) s) = sum over targets j -+ 2 with spin op (c1 ± i c2)/2
            let half = Gq::from_rat(rq(1, 2));
            let lower_op = c1.add(&c2.scale(&Gq::i())).scale(&half); // pairs with L
            let raise_op = c1.sub(&c2.scale(&Gq::i())).scale(&half); // pairs with R
            let basis: [(i64, usize); 2] = [(-1, 0), (1, 1)];
            let mut matrix = Mat::<Gq>::zeros(2, 2);
            for (col_idx, (j, s)) in basis.iter().enumerate() {
                for (target, coeff, op) in [
                    (j - 2, a(*j), &lower_op),
                    (j + 2, b(*j), &raise_op),
                ] {
                    for r in 0..2 {
                        let v = op.at(r, *s).clone().mul(&coeff);
                        if v.is_zero() {
                            continue;
                        }
                        let wt = target + if r == 0 { 1 } else { -1 };
                        if wt == 0 {
                            let row_idx = basis
                                .iter()
                                .position(|(jj, ss)| *jj == target && *ss == r)
                                .ok_or_else(|| {
                                    Error::Invalid("invariant bookkeeping error".into())
                                })?;
                            let cur = matrix.at(row_idx, col_idx).add(&v);
                            matrix.set(row_idx, col_idx, cur);
                        } else {
                            return Err(Error::Invalid(format!(
                                "principal-series Dirac leaks to K-weight {wt}"
                            )));
                        }
                    }
                }
            }
            let norm = phi * phi;
            let squares = matrix.mul(&matrix).is_scalar(&Gq::from_rat(norm.clone()));
            let bt = bounded_transform(&matrix, phi);
            Ok(DiracFamilyReport {
                pair: pair.clone(),
                phi: phi.clone(),
                squares_to_norm: squares,
                bounded_transform: bt,
                matrix,
            })
        }
    }
}

fn bounded_transform(d: &Mat<Gq>, phi: &Rat) -> BoundedTransform {
    let denom = Rat::one() + phi * phi;
    match rat_sqrt(&denom) {
        Some(s) => BoundedTransform::Exact(d.scale(&Gq::from_rat(Rat::one() / s))),
        None => {
            // rational interval for 1/sqrt(denom) to 1e-6
            let tol = rq(1, 1_000_000);
            let mut lo = Rat::zero();
            let mut hi = Rat::one();
            while hi.clone() - lo.clone() > tol {
                let mid = (lo.clone() + hi.clone()) / rint(2);
                if mid.clone() * mid.clone() * denom.clone() <= Rat::one() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            BoundedTransform::ScaledInterval { matrix: d.clone(), lo, hi }
        }
    }
}

/// The odd symmetry of the rank-one family on the invariant basis
/// (v_{-1} (x) e_+, v_{+1} (x) e_-): the unit-speed family matrix composed
/// with the grading. Skew-adjoint, squares to -1, odd, anticommutes with
/// every member of the family.
pub fn sl2_family_odd_symmetry(g: &GroupDatum) -> Result<Mat<Gq>> {
    let unit = sl2_dirac_family(g, &Sl2Pair::OddPrincipal, &Rat::one())?;
    let eps = Mat::from_fn(2, 2, |r, c| {
        if r != c {
            Gq::zero()
        } else if r == 0 {
            Gq::one()
        } else {
            Gq::from_rat(rint(-1))
        }
    });
    Ok(unit.matrix.mul(&eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{sl2c, sl2r, sp4r};

    #[test]
    fn bott_dimension_table_and_squares() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for d in 0..=6usize {
            let b = bott_element(d);
            let expect = if d % 2 == 0 { 1u64 << (d / 2) } else { 1u64 << ((d - 1) / 2) };
            assert_eq!(b.module_dim, expect);
            if d % 2 == 0 {
                assert_eq!(b.space_dim as u64, b.module_dim);
            } else {
                assert_eq!(b.space_dim as u64, 2 * b.module_dim);
            }
            for _ in 0..20 {
                let v: Vec<Rat> =
                    (0..d).map(|_| rq(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
                b.check(&v).unwrap();
            }
        }
    }

    #[test]
    fn rieffel_z2_swap_two_points() {
        let gamma = GammaGroup { rank: 1 };
        let a = function_algebra("C(2 points), swap", gamma, vec![vec![0, 1], vec![1, 0]]);
        let rep = verify_crossed_product_isomorphism(&a).unwrap();
        assert!(rep.ok(), "crossed product check failed: {rep:?}",);
        assert_eq!(rep.crossed_dim, 4); // C(2) x| Z2 ~ M_2
    }

    #[test]
    fn rieffel_z2_matrix_conjugation() {
        let gamma = GammaGroup { rank: 1 };
        let mut u = Mat::<Gq>::identity(2);
        u.set(1, 1, Gq::from_rat(rint(-1)));
        let a = matrix_algebra_with_conjugation(
            "M2, Ad diag(1,-1)",
            gamma,
            2,
            vec![Mat::identity(2), u],
        );
        let rep = verify_crossed_product_isomorphism(&a).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.fixed_dim, 8);
    }

    #[test]
    fn rieffel_klein_four_regular() {
        let gamma = GammaGroup { rank: 2 };
        let maps: Vec<Vec<usize>> =
            gamma.elements().map(|g| gamma.elements().map(|x| g ^ x).collect()).collect();
        let a = function_algebra("C(Gamma), regular", gamma, maps);
        let rep = verify_crossed_product_isomorphism(&a).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.crossed_dim, 16);
    }

    #[test]
    fn character_fiber_decomposition() {
        let gamma = GammaGroup { rank: 1 };
        // regular representation of Z2
        let swap = Mat::from_fn(2, 2, |r, c| if r != c { Gq::one() } else { Gq::zero() });
        let model = FiniteAlgebraModel { gamma, fiber_rep: vec![Mat::identity(2), swap] };
        let fibers = character_fibers(&model).unwrap();
        assert_eq!(fibers, vec![(0, 1), (1, 1)]);
        // trivial group: one fiber
        let triv = FiniteAlgebraModel {
            gamma: GammaGroup { rank: 0 },
            fiber_rep: vec![Mat::identity(3)],
        };
        assert_eq!(character_fibers(&triv).unwrap(), vec![(0, 3)]);
    }

    #[test]
    fn k_summary_counts_and_parity() {
        for g in [sl2r().unwrap(), sp4r().unwrap(), sl2c().unwrap()] {
            let s = k_summary(&g, &rint(30)).unwrap();
            assert_eq!(s.degree as usize, g.dim_gk % 2);
            assert_eq!(s.degree as usize % 2, g.a_max_dim % 2);
            assert_eq!(s.other_degree_rank, 0);
            let classes = enumerate_classes(&g, &rint(30)).unwrap();
            let expect = classes.iter().filter(|c| is_essential(c)).count() as u64;
            assert_eq!(s.rank, expect);
        }
    }

    #[test]
    fn index_component_follows_matching() {
        let g = sl2r().unwrap();
        let s = crate::spin::descriptor_for(&g, &g.k_space.weight_i64(&[3])).unwrap();
        let c = index_component(&g, &s).unwrap();
        assert_eq!(c.parabolic, "G");
        assert_eq!(c.sigma, SigmaParam::Lattice(vec![rint(3)]));
        let s0 = crate::spin::descriptor_for(&g, &g.k_space.weight_i64(&[0])).unwrap();
        let c0 = index_component(&g, &s0).unwrap();
        assert_eq!(c0.sigma, SigmaParam::Char("odd".into()));
    }

    #[test]
    fn sl2_family_is_linear_and_squares() {
        let g = sl2r().unwrap();
        let r1 = sl2_dirac_family(&g, &Sl2Pair::OddPrincipal, &rint(3)).unwrap();
        assert!(r1.squares_to_norm);
        // D at phi = 3 equals -3 sigma_x in this basis
        let mut want = Mat::<Gq>::zeros(2, 2);
        want.set(0, 1, Gq::from_rat(rint(-3)));
        want.set(1, 0, Gq::from_rat(rint(-3)));
        assert_eq!(r1.matrix, want);
        let r2 = sl2_dirac_family(&g, &Sl2Pair::OddPrincipal, &rint(6)).unwrap();
        assert_eq!(r2.matrix, r1.matrix.scale(&Gq::from_rat(rint(2))));
        let r0 = sl2_dirac_family(&g, &Sl2Pair::OddPrincipal, &Rat::zero()).unwrap();
        assert!(r0.matrix.is_zero());
        // odd symmetry anticommutes with the family
        let gam = sl2_family_odd_symmetry(&g).unwrap();
        assert!(gam.anticommutator(&r1.matrix).is_zero());
        assert!(gam.mul(&gam).is_scalar(&Gq::from_rat(rint(-1))));
        // discrete series: zero on the one-dimensional invariant space
        let rd = sl2_dirac_family(&g, &Sl2Pair::DiscreteSeries(4), &Rat::zero()).unwrap();
        assert!(rd.matrix.is_zero());
        let rdm = sl2_dirac_family(&g, &Sl2Pair::DiscreteSeries(-2), &Rat::zero()).unwrap();
        assert!(rdm.matrix.is_zero());
        // nonzero phi rejected for a point family
        assert!(sl2_dirac_family(&g, &Sl2Pair::DiscreteSeries(4), &rint(1)).is_err());
    }

    #[test]
    fn bounded_transform_forms() {
        let g = sl2r().unwrap();
        // phi = 3/4: 1 + 9/16 = 25/16 square -> exact
        let r = sl2_dirac_family(&g, &Sl2Pair::OddPrincipal, &rq(3, 4)).unwrap();
        match r.bounded_transform {
            BoundedTransform::Exact(f) => {
                // F^2 = phi^2/(1+phi^2) = (9/16)/(25/16) = 9/25
                assert!(f.mul(&f).is_scalar(&Gq::from_rat(rq(9, 25))));
            }
            _ => panic!("expected exact transform"),
        }
        let r = sl2_dirac_family(&g, &Sl2Pair::OddPrincipal, &rint(1)).unwrap();
        match r.bounded_transform {
            BoundedTransform::ScaledInterval { lo, hi, .. } => {
                assert!(lo.clone() * lo.clone() * rint(2) <= Rat::one());
                assert!(hi.clone() * hi.clone() * rint(2) >= Rat::one());
                assert!(hi - lo <= rq(1, 1_000_000));
            }
            _ => panic!("expected interval certificate"),
        }
    }
}

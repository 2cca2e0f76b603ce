//! Associate classes of the tempered dual, the essential/inessential split,
//! Dirac-square scalars, invariant dimensions and the matching table.
//!
//! Classes are enumerated from catalog lattice data inside an exact norm
//! window ||infch sigma||^2 <= bound. Both class and spin-descriptor
//! enumerations are complete inside the window, and matched partners share
//! the same norm, so matching statements are decided exactly in-window.

use std::collections::BTreeMap;
use std::fmt;

use crate::catalog::{FiniteChar, GroupDatum, ParabolicDatum, SigmaFamily};
use crate::error::{Error, Result};
use crate::num::{fmt_rat, rint, Rat, Scalar};
use crate::reps::blattner_multiplicity;
use crate::spin::{enumerate_spin_descriptors, spin_weights, SpinModuleDescriptor, SpinWeights};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SigmaParam {
    /// Character of a finite M, by catalog name.
    Char(String),
    /// Single integer parameter (SL2-type or torus-character families).
    Int(i64),
    /// (l, k) with l in {0,1}.
    LK(i64, i64),
    /// Harish-Chandra parameter of a discrete series of G.
    Lattice(Vec<Rat>),
}

impl fmt::Display for SigmaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaParam::Char(s) => write!(f, "{s}"),
            SigmaParam::Int(k) => write!(f, "{k}"),
            SigmaParam::LK(l, k) => write!(f, "({l},{k})"),
            SigmaParam::Lattice(v) => {
                let parts: Vec<String> = v.iter().map(fmt_rat).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct AssociateClass {
    pub group: String,
    pub parabolic: String,
    pub sigma: SigmaParam,
    /// Real infinitesimal character of sigma on the compact Cartan of M_P.
    pub infch: Weight,
    pub infch_norm_sq: Rat,
    pub w_order: u64,
    pub w_prime_order: u64,
    pub r_rank: u32,
    pub a_dim: usize,
}

impl AssociateClass {
    pub fn label(&self) -> String {
        format!("[{},{}]", self.parabolic, self.sigma)
    }
}

pub fn is_essential(c: &AssociateClass) -> bool {
    c.w_prime_order == 1
}

fn isqrt_upper(bound: &Rat) -> i64 {
    let mut hi = 0i64;
    while &(rint(hi) * rint(hi)) <= bound {
        hi += 1;
    }
    hi
}

/// One representative per associate class with ||infch||^2 <= bound,
/// deduplicated by the catalog orbit conventions (K-dominant normal form for
/// discrete series of G, j >= 0 for torus characters).
pub fn enumerate_classes(g: &GroupDatum, bound: &Rat) -> Result<Vec<AssociateClass>> {
    if *bound < Rat::zero() {
        return Err(Error::Invalid("negative norm bound".into()));
    }
    let mut out = Vec::new();
    for p in &g.parabolics {
        match &p.family {
            SigmaFamily::GroupDs => {
                for hc in group_ds_params(g, p, bound)? {
                    let norm = p.t_space.norm_sq(&hc)?;
                    out.push(AssociateClass {
                        group: g.name.clone(),
                        parabolic: p.label.clone(),
                        sigma: SigmaParam::Lattice(hc.coords.clone()),
                        infch: hc,
                        infch_norm_sq: norm,
                        w_order: 1,
                        w_prime_order: 1,
                        r_rank: 0,
                        a_dim: p.a_dim,
                    });
                }
            }
            SigmaFamily::FiniteChars { chars } => {
                for c in chars {
                    out.push(AssociateClass {
                        group: g.name.clone(),
                        parabolic: p.label.clone(),
                        sigma: SigmaParam::Char(c.name.clone()),
                        infch: p.t_space.zero(),
                        infch_norm_sq: Rat::zero(),
                        w_order: c.w_order,
                        w_prime_order: c.w_prime_order,
                        r_rank: c.r_rank,
                        a_dim: p.a_dim,
                    });
                }
            }
            SigmaFamily::Sl2PlusMinus { .. } => {
                let mut k = 1i64;
                loop {
                    let infch = p.t_space.weight(vec![rint(k)]);
                    let norm = p.t_space.norm_sq(&infch)?;
                    if norm > *bound {
                        break;
                    }
                    let essential = k % 2 == 0;
                    out.push(AssociateClass {
                        group: g.name.clone(),
                        parabolic: p.label.clone(),
                        sigma: SigmaParam::Int(k),
                        infch,
                        infch_norm_sq: norm,
                        w_order: 2,
                        w_prime_order: if essential { 1 } else { 2 },
                        r_rank: if essential { 1 } else { 0 },
                        a_dim: p.a_dim,
                    });
                    k += 1;
                }
            }
            SigmaFamily::Z2Sl2 { .. } => {
                let hi = isqrt_upper(bound);
                for l in 0..=1i64 {
                    for k in -hi..=hi {
                        if k == 0 {
                            continue;
                        }
                        let infch = p.t_space.weight(vec![rint(k)]);
                        let norm = p.t_space.norm_sq(&infch)?;
                        if norm > *bound {
                            continue;
                        }
                        let essential = l == 0;
                        out.push(AssociateClass {
                            group: g.name.clone(),
                            parabolic: p.label.clone(),
                            sigma: SigmaParam::LK(l, k),
                            infch,
                            infch_norm_sq: norm,
                            w_order: 2,
                            w_prime_order: if essential { 1 } else { 2 },
                            r_rank: if essential { 1 } else { 0 },
                            a_dim: p.a_dim,
                        });
                    }
                }
            }
            SigmaFamily::TorusChars => {
                // the Weyl reflection identifies sigma_j with sigma_{-j}
         	let mut j = 0i64;
                loop {
                    let infch = p.t_space.weight(vec![rint(j)]);
                    let norm = p.t_space.norm_sq(&infch)?;
                    if norm > *bound {
                        break;
                    }
                    let essential = j != 0;
                    out.push(AssociateClass {
                        group: g.name.clone(),
                        parabolic: p.label.clone(),
                        sigma: SigmaParam::Int(j),
                        infch,
                        infch_norm_sq: norm,
                        w_order: if essential { 1 } else { 2 },
                        w_prime_order: if essential { 1 } else { 2 },
                        r_rank: 0,
                        a_dim: p.a_dim,
                    });
                    j += 1;
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.parabolic.clone(), sort_key(&a.sigma)).cmp(&(b.parabolic.clone(), sort_key(&b.sigma)))
    });
    Ok(out)
}

fn sort_key(s: &SigmaParam) -> (u8, Vec<Rat>, String) {
    match s {
        SigmaParam::Char(name) => (0, vec![], name.clone()),
        SigmaParam::Int(k) => (1, vec![rint(*k)], String::new()),
        SigmaParam::LK(l, k) => (2, vec![rint(*l), rint(*k)], String::new()),
        SigmaParam::Lattice(v) => (3, v.clone(), String::new()),
    }
}

/// Harish-Chandra parameters of the discrete series of G inside the window:
/// K-dominant lattice points, regular against every root of g.
fn group_ds_params(g: &GroupDatum, p: &ParabolicDatum, bound: &Rat) -> Result<Vec<Weight>> {
    let r = g.k_space.dim();
    let hi = {
        let mut hi = 1i64;
        // per-axis crude bound from the diagonal of the dual gram
        let mut min_diag = g.k_space.gram.at(0, 0).clone();
        for j in 1..r {
            if g.k_space.gram.at(j, j) < &min_diag {
                min_diag = g.k_space.gram.at(j, j).clone();
            }
        }
        while &(rint(hi) * rint(hi) * min_diag.clone()) <= bound {
            hi += 1;
        }
        hi + 1
    };
    let mut out = Vec::new();
    let mut idx = vec![0i64; r];
    scan_ds(g, p, bound, hi, 0, &mut idx, &mut out)?;
    out.sort();
    Ok(out)
}

fn scan_ds(
    g: &GroupDatum,
    p: &ParabolicDatum,
    bound: &Rat,
    hi: i64,
    j: usize,
    idx: &mut Vec<i64>,
    out: &mut Vec<Weight>,
) -> Result<()> {
    let r = g.k_space.dim();
    if j == r {
        let w = g.k_space.weight(idx.iter().map(|&n| rint(n)).collect());
        if p.t_space.norm_sq(&w)? > *bound {
            return Ok(());
        }
        if !g.k_roots.is_dominant(&w)? {
            return Ok(());
        }
        // regular against all g-roots (equal-rank: roots live on t)
        for root in &g.fundamental.roots {
            let beta = g.k_space.weight(root.t_part.clone());
            if g.k_space.inner(&w, &beta)?.is_zero() {
                return Ok(());
            }
        }
        // strictly dominant normal form excludes the compact walls already
        out.push(w);
        return Ok(());
    }
    for v in -hi..=hi {
        idx[j] = v;
        scan_ds(g, p, bound, hi, j + 1, idx, out)?;
    }
    Ok(())
}

/// ||S||^2 - ||infch sigma||^2 + ||phi||^2, exactly.
pub fn dirac_square_scalar(
    g: &GroupDatum,
    c: &AssociateClass,
    phi: &Weight,
    s: &SpinModuleDescriptor,
) -> Result<Rat> {
    let p = g.parabolic(&c.parabolic)?;
    let phi_sq = p.a_space.norm_sq(phi)?;
    Ok(s.norm_sq.clone() - c.infch_norm_sq.clone() + phi_sq)
}

/// dim [Ind_P^G H_sigma (x) S]^K, by Frobenius reciprocity against the
/// K-weight data of S.
pub fn invariants_dimension(g: &GroupDatum, c: &AssociateClass, sw: &SpinWeights) -> Result<u64> {
    let p = g.parabolic(&c.parabolic)?;
    match (&p.family, &c.sigma) {
        (SigmaFamily::GroupDs, SigmaParam::Lattice(coords)) => {
            let lambda = g.k_space.weight(coords.clone());
            let groots: Vec<(Weight, bool)> = g
                .fundamental
                .roots
                .iter()
                .map(|r| (g.k_space.weight(r.t_part.clone()), r.compact))
                .collect();
            let mut total = 0u64;
            for (nu, m) in &sw.k_constituents {
                // [V (x) S]^K = multiplicity of V^* in S; V^* has highest
                // weight -w0(nu), the dominant representative of -nu
                let (dual, _) = g.k_roots.to_dominant(&nu.neg())?;
                total += m * blattner_multiplicity(&g.k_roots, &groots, &lambda, &dual)?;
            }
            Ok(total)
        }
        (SigmaFamily::FiniteChars { chars }, SigmaParam::Char(name)) => {
            let ch = chars
                .iter()
                .find(|c| &c.name == name)
                .ok_or_else(|| Error::Invalid(format!("unknown character {name}")))?;
            Ok(count_finite_char(ch, sw))
        }
        (SigmaFamily::Sl2PlusMinus { dvec }, SigmaParam::Int(k)) => {
            let mut total = 0u64;
            for (w, m) in &sw.weights {
                let mut d = Rat::zero();
                for (c, x) in dvec.iter().zip(&w.coords) {
                    d += c * x;
                }
                if !d.is_integer() {
                    continue;
                }
                let di: i64 = match d.to_integer().try_into() {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                if di >= k + 1 && (di - (k + 1)) % 2 == 0 {
                    total += m;
                }
            }
            Ok(total)
        }
        (SigmaFamily::Z2Sl2 { sl2_coord, parity_coord }, SigmaParam::LK(l, k)) => {
            let mut total = 0u64;
            for (w, m) in &sw.weights {
                if !w.is_integral() {
                    continue;
                }
                let wc: i64 = w.coords[*sl2_coord].to_integer().try_into().unwrap_or(i64::MAX);
                let wp: i64 = w.coords[*parity_coord].to_integer().try_into().unwrap_or(0);
                // contragredient discrete-series K-types: j in -sign(k){|k|+1, |k|+3, ...}
                let hit = if *k > 0 {
                    wc <= -(k + 1) && (-(wc) - (k + 1)) % 2 == 0
                } else {
                    wc >= -k + 1 && (wc - (-k + 1)) % 2 == 0
                };
                if hit && (wp - l).rem_euclid(2) == 0 {
                    total += m;
                }
            }
            Ok(total)
        }
        (SigmaFamily::TorusChars, SigmaParam::Int(j)) => {
            let mut total = 0u64;
            for (w, m) in &sw.weights {
                if w.coords[0] == rint(-*j) {
                    total += m;
                }
            }
            Ok(total)
        }
        _ => Err(Error::Invalid(format!(
            "sigma parameter {} does not belong to parabolic {}",
            c.sigma, c.parabolic
        ))),
    }
}

fn count_finite_char(ch: &FiniteChar, sw: &SpinWeights) -> u64 {
    let mut total = 0u64;
    'outer: for (w, m) in &sw.weights {
        if !w.is_integral() {
            continue;
        }
        for (c, p) in w.coords.iter().zip(&ch.parities) {
            let wi: i64 = c.to_integer().try_into().unwrap_or(0);
            if (wi - *p as i64).rem_euclid(2) != 0 {
                continue 'outer;
            }
        }
        total += m;
    }
    total
}

/// Matching criterion: nonzero invariants and ||S|| = ||infch sigma||.
pub fn is_matched(g: &GroupDatum, c: &AssociateClass, sw: &SpinWeights) -> Result<bool> {
    if sw.descriptor.norm_sq != c.infch_norm_sq {
        return Ok(false);
    }
    Ok(invariants_dimension(g, c, sw)? > 0)
}

#[derive(Debug)]
pub struct MatchingTable {
    pub bound: Rat,
    /// Per essential class: the matched descriptors (highest weights).
    pub class_rows: Vec<(AssociateClass, Vec<Weight>)>,
    /// Per descriptor: the matched essential classes.
    pub descriptor_rows: Vec<(SpinModuleDescriptor, Vec<String>)>,
    /// Inessential classes that matched some descriptor (must stay empty).
    pub inessential_matches: Vec<(String, Weight)>,
    pub unique_both_ways: bool,
}

/// Full matching table inside a norm window. Both enumerations are complete
/// for ||.||^2 <= bound, and matched partners have equal norms, so
/// uniqueness statements are exact in-window.
pub fn matching_table(g: &GroupDatum, bound: &Rat) -> Result<MatchingTable> {
    let classes = enumerate_classes(g, bound)?;
    let descriptors = enumerate_spin_descriptors(g, bound)?;
    let weights: Vec<SpinWeights> =
        descriptors.iter().map(|d| spin_weights(g, d)).collect::<Result<_>>()?;
    let mut class_rows = Vec::new();
    let mut descriptor_matches: BTreeMap<Weight, Vec<String>> = BTreeMap::new();
    let mut inessential_matches = Vec::new();
    for c in &classes {
        let mut matched = Vec::new();
        for sw in &weights {
            if is_matched(g, c, sw)? {
                matched.push(sw.descriptor.mu.clone());
                if !is_essential(c) {
                    inessential_matches.push((c.label(), sw.descriptor.mu.clone()));
                }
                descriptor_matches
                    .entry(sw.descriptor.mu.clone())
                    .or_default()
                    .push(c.label());
            }
        }
        if is_essential(c) {
            class_rows.push((c.clone(), matched));
        }
    }
    let descriptor_rows: Vec<(SpinModuleDescriptor, Vec<String>)> = descriptors
        .iter()
        .map(|d| (d.clone(), descriptor_matches.get(&d.mu).cloned().unwrap_or_default()))
        .collect();
    let unique_both_ways = class_rows.iter().all(|(_, m)| m.len() == 1)
        && descriptor_rows.iter().all(|(_, m)| m.len() == 1)
        && inessential_matches.is_empty();
    Ok(MatchingTable {
        bound: bound.clone(),
        class_rows,
        descriptor_rows,
        inessential_matches,
        unique_both_ways,
    })
}

/// All classes with nonzero invariants against S; finite, and every entry
/// satisfies ||infch sigma|| <= ||S||. The enumeration window is widened
/// beyond ||S||^2 to witness the vanishing margin.
pub fn finite_support(
    g: &GroupDatum,
    s: &SpinModuleDescriptor,
) -> Result<Vec<(AssociateClass, u64)>> {
    let margin = s.norm_sq.clone() * rint(2) + rint(10);
    let classes = enumerate_classes(g, &margin)?;
    let sw = spin_weights(g, s)?;
    let mut out = Vec::new();
    for c in classes {
        let dim = invariants_dimension(g, &c, &sw)?;
        if dim > 0 {
            if c.infch_norm_sq > s.norm_sq {
                return Err(Error::Invalid(format!(
                    "class {} has invariants but ||infch|| > ||S||",
                    c.label()
                )));
            }
            out.push((c, dim));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Tables and the lattice figure
// ---------------------------------------------------------------------------

/// TSV table of associate classes:
/// parabolic, sigma, essential, r_rank, matched_mu, norm_sq.
pub fn classes_tsv(g: &GroupDatum, bound: &Rat) -> Result<String> {
    let classes = enumerate_classes(g, bound)?;
    let table = matching_table(g, bound)?;
    let mut matched: BTreeMap<String, String> = BTreeMap::new();
    for (c, mus) in &table.class_rows {
        let text = mus.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(";");
        matched.insert(c.label(), text);
    }
    let mut s = String::from("parabolic\tsigma\tessential\tr_rank\tmatched_mu\tnorm_sq\n");
    for c in &classes {
        let m = matched.get(&c.label()).cloned().unwrap_or_else(|| "-".into());
        let m = if m.is_empty() { "-".to_string() } else { m };
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            c.parabolic,
            c.sigma,
            if is_essential(c) { "yes" } else { "no" },
            c.r_rank,
            m,
            fmt_rat(&c.infch_norm_sq)
        ));
    }
    Ok(s)
}

/// TSV of the matching bijection: mu, position (mu + rho_K), norm_sq, class.
pub fn matching_tsv(g: &GroupDatum, bound: &Rat) -> Result<String> {
    let table = matching_table(g, bound)?;
    let rho = g.rho_k();
    let mut s = String::from("mu\tmu_plus_rho_k\tnorm_sq\tmatched_class\tunique\n");
    for (d, classes) in &table.descriptor_rows {
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            d.mu,
            d.mu.add(&rho),
            fmt_rat(&d.norm_sq),
            if classes.is_empty() { "-".to_string() } else { classes.join(";") },
            classes.len() == 1
        ));
    }
    Ok(s)
}

/// ASCII lattice diagram for Sp(4,R): essential classes placed at
/// mu + rho_K = (m, n); discrete series of G render as bullets at their
/// Harish-Chandra parameters. Returns the diagram and report notes.
pub fn render_sp4r_figure(g: &GroupDatum, lo: i64, hi: i64) -> Result<(String, Vec<String>)> {
    if g.name != "Sp4R" {
        return Err(Error::Invalid(format!("the lattice figure is defined for Sp4R, not {}", g.name)));
    }
    let bound = rint(2 * hi.max(-lo) * hi.max(-lo));
    let table = matching_table(g, &bound)?;
    let rho = g.rho_k();
    // map position -> label from the matching
    let mut cells: BTreeMap<(i64, i64), String> = BTreeMap::new();
    for (c, mus) in &table.class_rows {
        if mus.len() != 1 {
            continue;
        }
        let pos = mus[0].add(&rho);
        if !pos.coords.iter().all(|x| x.is_integer()) {
            continue;
        }
        let m: i64 = pos.coords[0].to_integer().try_into().unwrap();
        let n: i64 = pos.coords[1].to_integer().try_into().unwrap();
        let label = match (&c.parabolic[..], &c.sigma) {
            ("G", _) => "*".to_string(),
            ("P1", SigmaParam::Int(k)) => format!("s_{{1,{k}}}"),
            ("P2", SigmaParam::LK(l, k)) => format!("s_{{2,{l},{k}}}"),
            (p, s) => format!("{p}:{s}"),
        };
        cells.insert((m, n), label);
    }
    let width = 11usize;
    let mut out = String::new();
    for n in (lo..=hi).rev() {
        let mut line = String::new();
        for m in lo..=hi {
            let cell = if m > n {
                cells.get(&(m, n)).cloned().unwrap_or_default()
            } else {
                String::new()
            };
            line.push_str(&format!("{:^width$}", cell, width = width));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let mut notes = Vec::new();
    notes.push(format!(
        "window m,n in [{lo},{hi}]; labels sit at mu + rho_K; bullets are discrete series of G at their Harish-Chandra parameters"
    ));
    if let Some(label) = cells.get(&(1, -1)) {
        notes.push(format!(
            "note: position (1,-1) is matched to {label} (the k = 2 discrete series of the GL(2,R) Levi); \
a sigma_2-style label sometimes quoted for this slot does not name any class of this catalog"
        ));
    }
    // unmatched or non-unique positions would violate the bijection; surface them
    if !table.unique_both_ways {
        notes.push("warning: matching is not a bijection in this window".into());
    }
    Ok((out, notes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{sl2c, sl2r, sp4r};
    use crate::num::rq;

    #[test]
    fn sl2r_classes_example() {
        let g = sl2r().unwrap();
        let classes = enumerate_classes(&g, &rint(9)).unwrap();
        // discrete series n in {-3..-1, 1..3} plus two minimal-parabolic chars
        let ds: Vec<String> =
            classes.iter().filter(|c| c.parabolic == "G").map(|c| c.sigma.to_string()).collect();
        assert_eq!(ds, vec!["(-3)", "(-2)", "(-1)", "(1)", "(2)", "(3)"]);
        let ps: Vec<(String, bool)> = classes
            .iter()
            .filter(|c| c.parabolic == "Pmin")
            .map(|c| (c.sigma.to_string(), is_essential(c)))
            .collect();
        assert_eq!(ps, vec![("even".to_string(), false), ("odd".to_string(), true)]);
    }

    #[test]
    fn sl2r_matching_is_example_bijection() {
        let g = sl2r().unwrap();
        let table = matching_table(&g, &rint(16)).unwrap();
        assert!(table.unique_both_ways, "rows: {:?}", table.class_rows);
        // discrete series n matches S_n (mu = n), odd PS matches S_0
        for (c, mus) in &table.class_rows {
            match (&c.parabolic[..], &c.sigma) {
                ("G", SigmaParam::Lattice(v)) => {
                    assert_eq!(mus[0].coords[0], v[0]);
                }
                ("Pmin", SigmaParam::Char(name)) => {
                    assert_eq!(name, "odd");
                    assert!(mus[0].is_zero());
                }
                other => panic!("unexpected essential class {other:?}"),
            }
        }
    }

    #[test]
    fn sl2c_matching_shifts_by_rho() {
        let g = sl2c().unwrap();
        let table = matching_table(&g, &rint(25)).unwrap();
        assert!(table.unique_both_ways);
        // class sigma_j (j >= 1) matches mu = j - 1, i.e. dsigma = mu + rho_K
        for (c, mus) in &table.class_rows {
            if let SigmaParam::Int(j) = c.sigma {
                assert_eq!(mus.len(), 1);
                assert_eq!(mus[0].coords[0], rint(j - 1));
            }
        }
        // spherical j = 0 is inessential and unmatched
        let classes = enumerate_classes(&g, &rint(25)).unwrap();
        let spherical = classes.iter().find(|c| c.sigma == SigmaParam::Int(0)).unwrap();
        assert!(!is_essential(spherical));
    }

    #[test]
    fn sp4r_matching_window() {
        let g = sp4r().unwrap();
        let table = matching_table(&g, &rint(20)).unwrap();
        assert!(
            table.unique_both_ways,
            "class rows: {:?}\ninessential: {:?}",
            table
                .class_rows
                .iter()
                .map(|(c, m)| (c.label(), m.len()))
                .collect::<Vec<_>>(),
            table.inessential_matches
        );
        // spot positions: sigma_{1,2} at (1,-1); sigma_{2,0,k} at (k,0)/(0,k)
        let rho = g.rho_k();
        for (c, mus) in &table.class_rows {
            let pos = mus[0].add(&rho);
            match (&c.parabolic[..], &c.sigma) {
                ("P1", SigmaParam::Int(k)) => {
                    let j = k / 2;
                    assert_eq!(pos, g.k_space.weight_i64(&[j, -j]), "sigma_1,{k}");
                }
                ("P2", SigmaParam::LK(0, k)) => {
                    if *k > 0 {
                        assert_eq!(pos, g.k_space.weight_i64(&[*k, 0]));
                    } else {
                        assert_eq!(pos, g.k_space.weight_i64(&[0, *k]));
                    }
                }
                ("G", SigmaParam::Lattice(v)) => {
                    assert_eq!(pos.coords, *v);
                }
                other => panic!("unexpected essential class {other:?}"),
            }
        }
    }

    #[test]
    fn dirac_square_scalar_values() {
        let g = sl2r().unwrap();
        let classes = enumerate_classes(&g, &rint(9)).unwrap();
        let ds2 = classes
            .iter()
            .find(|c| c.parabolic == "G" && c.sigma == SigmaParam::Lattice(vec![rint(2)]))
            .unwrap();
        let s2 = crate::spin::descriptor_for(&g, &g.k_space.weight_i64(&[2])).unwrap();
        let pg = g.parabolic("G").unwrap();
        let phi0 = pg.a_space.zero();
        assert_eq!(dirac_square_scalar(&g, ds2, &phi0, &s2).unwrap(), Rat::zero());
        // unmatched with ||infch|| < ||S||: strictly positive at phi = 0
        let s3 = crate::spin::descriptor_for(&g, &g.k_space.weight_i64(&[3])).unwrap();
        assert_eq!(dirac_square_scalar(&g, ds2, &phi0, &s3).unwrap(), rint(5));
        // odd PS with phi: scalar = ||phi||^2
        let odd = classes.iter().find(|c| c.sigma == SigmaParam::Char("odd".into())).unwrap();
        let pmin = g.parabolic("Pmin").unwrap();
        let s0 = crate::spin::descriptor_for(&g, &g.k_space.weight_i64(&[0])).unwrap();
        let phi = pmin.a_space.weight(vec![rq(3, 2)]);
        assert_eq!(dirac_square_scalar(&g, odd, &phi, &s0).unwrap(), rq(9, 4));
        // space mismatch rejected
        assert!(dirac_square_scalar(&g, ds2, &phi, &s2).is_err());
    }

    #[test]
    fn invariants_examples() {
        let g = sl2r().unwrap();
        let classes = enumerate_classes(&g, &rint(9)).unwrap();
        let s1 = crate::spin::descriptor_for(&g, &g.k_space.weight_i64(&[1])).unwrap();
        let sw1 = spin_weights(&g, &s1).unwrap();
        for c in &classes {
            let dim = invariants_dimension(&g, c, &sw1).unwrap();
            match (&c.parabolic[..], &c.sigma) {
                ("G", SigmaParam::Lattice(v)) if v[0] == rint(1) => assert_eq!(dim, 1),
                ("G", SigmaParam::Lattice(v)) if v[0] == rint(-1) => assert_eq!(dim, 0),
                ("Pmin", SigmaParam::Char(n)) if n == "even" => assert_eq!(dim, 2),
                ("Pmin", SigmaParam::Char(n)) if n == "odd" => assert_eq!(dim, 0),
                _ => {}
            }
        }
        // odd PS pairs with S_0 in dimension 2 = |R| * 2^0
        let s0 = crate::spin::descriptor_for(&g, &g.k_space.weight_i64(&[0])).unwrap();
        let sw0 = spin_weights(&g, &s0).unwrap();
        let odd = classes.iter().find(|c| c.sigma == SigmaParam::Char("odd".into())).unwrap();
        assert_eq!(invariants_dimension(&g, odd, &sw0).unwrap(), 2);
    }

    #[test]
    fn finite_support_lists_are_bounded() {
        let g = sl2r().unwrap();
        let s = crate::spin::descriptor_for(&g, &g.k_space.weight_i64(&[2])).unwrap();
        let support = finite_support(&g, &s).unwrap();
        assert!(!support.is_empty());
        for (c, dim) in &support {
            assert!(*dim > 0);
            assert!(c.infch_norm_sq <= s.norm_sq);
        }
        // contains the matched discrete series class n = 2
        assert!(support
            .iter()
            .any(|(c, _)| c.parabolic == "G" && c.sigma == SigmaParam::Lattice(vec![rint(2)])));
    }

    #[test]
    fn sp4r_figure_matches_rule() {
        let g = sp4r().unwrap();
        let (fig, notes) = render_sp4r_figure(&g, -4, 4).unwrap();
        assert!(notes.iter().any(|n| n.contains("(1,-1)")));
        // row n = 0 must contain s_{2,0,1..4}
        let lines: Vec<&str> = fig.lines().collect();
        assert_eq!(lines.len(), 9);
        let row_n0 = lines[4];
        for k in 1..=4 {
            assert!(row_n0.contains(&format!("s_{{2,0,{k}}}")), "row {row_n0}");
        }
        let row_nm1 = lines[5];
        assert!(row_nm1.contains("s_{{1,2}}") || row_nm1.contains("s_{1,2}"));
    }
}

//! Registered verification suites: every finite identity the library is
//! built around, runnable from the CLI (`verify <suite|all>`) and from the
//! acceptance tests. All checks are exact; failures carry the offending
//! values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{load_builtin, GroupDatum, BUILTIN_NAMES};
use crate::error::Result;
use crate::ktheory::{
    bott_element, function_algebra, k_summary, matrix_algebra_with_conjugation, sl2_dirac_family,
    sl2_family_odd_symmetry, verify_crossed_product_isomorphism, GammaGroup, Sl2Pair,
};
use crate::num::{fmt_rat, rint, rq, Gq, Rat, Scalar};
use crate::linalg::Mat;
use crate::pbw::{casimir, pbw_normalize_word, verify_dirac_square, PBWElement, DEFAULT_DEGREE_CAP};
use crate::reps::casimir_eigenvalue;
use crate::spin::{build_spin_module, enumerate_spin_descriptors, spin_weights};
use crate::tempered::{
    classes_tsv, dirac_square_scalar, enumerate_classes, is_essential, matching_table,
    render_sp4r_figure, SigmaParam,
};

#[derive(Debug)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug)]
pub struct Suite {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Suite {
    fn new(name: impl Into<String>) -> Self {
        Suite { name: name.into(), checks: Vec::new() }
    }
    fn push(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { label: label.into(), pass, detail: detail.into() });
    }
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
    pub fn render(&self) -> String {
        let mut s = format!("suite {}\n", self.name);
        for c in &self.checks {
            s.push_str(&format!(
                "  [{}] {}{}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.label,
                if c.detail.is_empty() { String::new() } else { format!(" — {}", c.detail) }
            ));
        }
        s
    }
}

/// Exact Dirac-square identity in U(g) (x) Cliff(s), with the sign-flipped
/// morphism as a negative control.
pub fn suite_parthasarathy(g: &GroupDatum) -> Result<Suite> {
    let mut suite = Suite::new(format!("parthasarathy {}", g.name));
    let rep = verify_dirac_square(&g.lie, &g.rho_k_sq(), &g.rho_g_sq(), false, DEFAULT_DEGREE_CAP)?;
    suite.push(
        format!("{}: D^2 = Delta(Omega_K + ||rho_K||^2) - (Omega_G + ||rho_G||^2)", g.name),
        rep.equal,
        if rep.equal {
            format!("exact equality in normal form; ||rho_K||^2 = {}, ||rho_G||^2 = {}",
                fmt_rat(&g.rho_k_sq()), fmt_rat(&g.rho_g_sq()))
        } else {
            format!("difference has {} terms: {:?}", rep.difference_terms, rep.difference)
        },
    );
    let bad = verify_dirac_square(&g.lie, &g.rho_k_sq(), &g.rho_g_sq(), true, DEFAULT_DEGREE_CAP)?;
    suite.push(
        format!("{}: sign-flipped morphism fails (negative control)", g.name),
        !bad.equal,
        format!("difference terms: {}", bad.difference_terms),
    );
    Ok(suite)
}

/// For every genuine K-irrep with ||mu + rho_K||^2 <= bound: the operator
/// Delta(Omega_K) + ||rho_K||^2 acts on S_irr (x) mod(S)* as ||S||^2 exactly,
/// and the Casimir eigenvalue matches the norm identity.
pub fn suite_casimir_norm(g: &GroupDatum, bound: &Rat) -> Result<Suite> {
    let mut suite = Suite::new(format!("casimir-norm {}", g.name));
    let omega_k = casimir(&g.lie, 0, g.lie.k_dim, DEFAULT_DEGREE_CAP)?;
    let delta = crate::pbw::diagonal(&omega_k, &g.lie, DEFAULT_DEGREE_CAP)?;
    let rho_k_sq = g.rho_k_sq();
    let descriptors = enumerate_spin_descriptors(g, bound)?;
    let mut matrix_ok = 0usize;
    let mut scalar_ok = 0usize;
    let mut first_fail = String::new();
    for d in &descriptors {
        let sm = build_spin_module(g, d)?;
        let m = sm.represent_transported(&delta)?;
        let want = d.norm_sq.clone();
        let shifted = m.add(&Mat::identity(sm.dim).scale(&Gq::from_rat(rho_k_sq.clone())));
        if shifted.is_scalar(&Gq::from_rat(want.clone())) {
            matrix_ok += 1;
        } else if first_fail.is_empty() {
            first_fail = format!("matrix identity fails at mu = {}", d.mu);
        }
        let ce = casimir_eigenvalue(&g.k_roots, &d.mu)?;
        if ce == d.norm_sq.clone() - rho_k_sq.clone() {
            scalar_ok += 1;
        } else if first_fail.is_empty() {
            first_fail = format!(
                "casimir eigenvalue {} != {} at mu = {}",
                fmt_rat(&ce),
                fmt_rat(&(d.norm_sq.clone() - rho_k_sq.clone())),
                d.mu
            );
        }
    }
    let n = descriptors.len();
    suite.push(
        format!("{}: Delta(Omega_K) + ||rho_K||^2 = ||S||^2 on S_irr (x) mod(S)*", g.name),
        matrix_ok == n,
        format!("{matrix_ok}/{n} descriptors in window {}; {first_fail}", fmt_rat(bound)),
    );
    suite.push(
        format!("{}: casimir_eigenvalue(mu) = ||mu+rho_K||^2 - ||rho_K||^2", g.name),
        scalar_ok == n,
        format!("{scalar_ok}/{n} descriptors"),
    );
    Ok(suite)
}

pub const SP4R_FIGURE_GOLDEN: &str = include_str!("data/sp4r_figure.golden");

/// Golden reproduction of the worked matching examples.
pub fn suite_matching_golden() -> Result<Suite> {
    let mut suite = Suite::new("matching-golden");

    // SL(2,R): discrete series n <-> S_n, odd principal series <-> S_0,
    // spherical inessential and unmatched.
    let g = load_builtin("SL2R")?;
    let bound = rint(100);
    let table = matching_table(&g, &bound)?;
    let mut rule_ok = table.unique_both_ways;
    for (c, mus) in &table.class_rows {
        match (&c.parabolic[..], &c.sigma) {
            ("G", SigmaParam::Lattice(v)) => {
                rule_ok &= mus.len() == 1 && mus[0].coords[0] == v[0];
            }
            ("Pmin", SigmaParam::Char(name)) => {
                rule_ok &= name == "odd" && mus.len() == 1 && mus[0].is_zero();
            }
            _ => rule_ok = false,
        }
    }
    let classes = enumerate_classes(&g, &bound)?;
    let spherical =
        classes.iter().find(|c| c.sigma == SigmaParam::Char("even".into())).expect("spherical");
    rule_ok &= !is_essential(spherical);
    suite.push(
        "SL2R: discrete series n <-> S_n, odd principal series <-> S_0, spherical excluded",
        rule_ok,
        format!("{} essential classes in window", table.class_rows.len()),
    );

    // SL(2,C): sigma_j (j >= 1) <-> mu = j - 1, i.e. dsigma = mu + rho_K.
    let g = load_builtin("SL2C")?;
    let table = matching_table(&g, &bound)?;
    let mut rule_ok = table.unique_both_ways;
    for (c, mus) in &table.class_rows {
        if let SigmaParam::Int(j) = c.sigma {
            rule_ok &= mus.len() == 1 && mus[0].coords[0] == rint(j - 1);
        } else {
            rule_ok = false;
        }
    }
    suite.push(
        "SL2C: class of sigma_j matched at dsigma = mu + rho_K",
        rule_ok,
        format!("{} essential classes in window", table.class_rows.len()),
    );

    // Sp(4,R): the lattice figure, byte-for-byte, plus the position note.
    let g = load_builtin("Sp4R")?;
    let (fig, notes) = render_sp4r_figure(&g, -4, 4)?;
    suite.push(
        "Sp4R: lattice figure matches the frozen golden window byte-for-byte",
        fig == SP4R_FIGURE_GOLDEN,
        if fig == SP4R_FIGURE_GOLDEN {
            "window m,n in [-4,4]".into()
        } else {
            format!("regenerated figure differs:\n{fig}")
        },
    );
    suite.push(
        "Sp4R: the (1,-1) labeling discrepancy is flagged in the report",
        notes.iter().any(|n| n.contains("(1,-1)")),
        notes.join(" | "),
    );
    let table = matching_table(&g, &bound)?;
    suite.push(
        "Sp4R: matching is a bijection in the window",
        table.unique_both_ways,
        format!(
            "{} essential classes, {} descriptors",
            table.class_rows.len(),
            table.descriptor_rows.len()
        ),
    );
    Ok(suite)
}

/// Dirac-square scalars on every in-window pair with random rational phi.
pub fn suite_dirac_square(g: &GroupDatum, bound: &Rat, seed: u64, phis: usize) -> Result<Suite> {
    let mut suite = Suite::new(format!("dirac-square {}", g.name));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes = enumerate_classes(g, bound)?;
    let descriptors = enumerate_spin_descriptors(g, bound)?;
    let mut pairs = 0usize;
    let mut ok = 0usize;
    let mut matched_checked = 0usize;
    let mut matched_ok = 0usize;
    let mut first_fail = String::new();
    for c in &classes {
        let p = g.parabolic(&c.parabolic)?;
        let sw_cache: Option<crate::spin::SpinWeights> = None;
        let _ = sw_cache;
        for d in &descriptors {
            pairs += 1;
            let mut pair_ok = true;
            for _ in 0..phis {
                let coords: Vec<Rat> = (0..p.a_dim)
                    .map(|_| rq(rng.gen_range(-30..=30), rng.gen_range(1..=6)))
                    .collect();
                let phi = p.a_space.weight(coords);
                let val = dirac_square_scalar(g, c, &phi, d)?;
                let want =
                    d.norm_sq.clone() - c.infch_norm_sq.clone() + p.a_space.norm_sq(&phi)?;
                if val != want {
                    pair_ok = false;
                    if first_fail.is_empty() {
                        first_fail = format!("{} vs {}: {}", c.label(), d.mu, fmt_rat(&val));
                    }
                }
                // matched pairs: the scalar collapses to ||phi||^2
                if d.norm_sq == c.infch_norm_sq {
                    let sw = spin_weights(g, d)?;
                    if crate::tempered::is_matched(g, c, &sw)? {
                        matched_checked += 1;
                        if val == p.a_space.norm_sq(&phi)? {
                            matched_ok += 1;
                        }
                    }
                }
            }
            if pair_ok {
                ok += 1;
            }
        }
    }
    suite.push(
        format!("{}: scalar = ||S||^2 - ||infch||^2 + ||phi||^2 on all pairs", g.name),
        ok == pairs,
        format!("{ok}/{pairs} pairs x {phis} random phi; {first_fail}"),
    );
    suite.push(
        format!("{}: matched pairs give exactly ||phi||^2", g.name),
        matched_checked > 0 && matched_ok == matched_checked,
        format!("{matched_ok}/{matched_checked} matched evaluations"),
    );
    Ok(suite)
}

/// Dimension formulas: invariants of matched pairs, R-group ranks, parity.
pub fn suite_dimension_formulas(g: &GroupDatum, bound: &Rat) -> Result<Suite> {
    let mut suite = Suite::new(format!("dimension-formulas {}", g.name));
    let table = matching_table(g, bound)?;
    let per_summand_expect = 1u64 << ((g.a_max_dim + 1) / 2);
    let mut pairs = 0usize;
    let mut ok = 0usize;
    let mut first_fail = String::new();
    for (c, mus) in &table.class_rows {
        for mu in mus {
            let d = crate::spin::descriptor_for(g, mu)?;
            let sw = spin_weights(g, &d)?;
            let inv = crate::tempered::invariants_dimension(g, c, &sw)?;
            pairs += 1;
            // the induced space splits into 2^r irreducible summands, each
            // contributing 2^[(a_max+1)/2]
            let r_count = 1u64 << c.r_rank;
            if inv == r_count * per_summand_expect && inv % r_count == 0 {
                ok += 1;
            } else if first_fail.is_empty() {
                first_fail = format!(
                    "{} vs {}: invariants {} != {} summands x {}",
                    c.label(),
                    mu,
                    inv,
                    r_count,
                    per_summand_expect
                );
            }
        }
    }
    suite.push(
        format!(
            "{}: matched invariants = 2^[(a_max+1)/2] per irreducible summand (a_max = {})",
            g.name, g.a_max_dim
        ),
        ok == pairs && pairs > 0,
        format!("{ok}/{pairs} matched pairs; per-summand value {per_summand_expect}; {first_fail}"),
    );
    let classes = enumerate_classes(g, bound)?;
    let mut r_ok = true;
    for c in classes.iter().filter(|c| is_essential(c)) {
        if (c.r_rank as usize) != c.a_dim - g.a_max_dim {
            r_ok = false;
        }
    }
    suite.push(
        format!("{}: essential classes have r_rank = dim a_P - dim a_max", g.name),
        r_ok,
        format!("{} essential classes", classes.iter().filter(|c| is_essential(c)).count()),
    );
    suite.push(
        format!("{}: dim a_max = {} = dim G/K = {} (mod 2)", g.name, g.a_max_dim, g.dim_gk),
        g.a_max_dim % 2 == g.dim_gk % 2,
        String::new(),
    );
    Ok(suite)
}

/// Bott elements for d = 0..6 with seeded random rational vectors.
pub fn suite_bott(seed: u64, vectors: usize) -> Result<Suite> {
    let mut suite = Suite::new("bott");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in 0..=6usize {
        let b = bott_element(d);
        let expect = if d % 2 == 0 { 1u64 << (d / 2) } else { 1u64 << ((d - 1) / 2) };
        let dim_ok = b.module_dim == expect
            && if d % 2 == 0 {
                b.space_dim as u64 == b.module_dim
            } else {
                b.space_dim as u64 == 2 * b.module_dim
            };
        let mut all_ok = true;
        let mut detail = String::new();
        for _ in 0..vectors {
            let v: Vec<Rat> =
                (0..d).map(|_| rq(rng.gen_range(-50..=50), rng.gen_range(1..=9))).collect();
            if let Err(e) = b.check(&v) {
                all_ok = false;
                if detail.is_empty() {
                    detail = e.to_string();
                }
            }
        }
        suite.push(
            format!("d = {d}: dimension 2^[d/2]-table and D_v^2 = ||v||^2 for {vectors} seeded v"),
            dim_ok && all_ok,
            detail,
        );
    }
    Ok(suite)
}

/// The crossed-product isomorphism on the built-in examples.
pub fn suite_rieffel() -> Result<Suite> {
    let mut suite = Suite::new("rieffel");
    let z2 = GammaGroup { rank: 1 };
    let klein = GammaGroup { rank: 2 };
    let regular = |gamma: GammaGroup| -> Vec<Vec<usize>> {
        gamma.elements().map(|g| gamma.elements().map(|x| g ^ x).collect()).collect()
    };
    let mut diag = Mat::<Gq>::identity(2);
    diag.set(1, 1, Gq::from_rat(rint(-1)));
    let mut sx = Mat::<Gq>::zeros(2, 2);
    sx.set(0, 1, Gq::one());
    sx.set(1, 0, Gq::one());
    let sxz = diag.mul(&sx).scale(&Gq::i());
    let cases = vec![
        function_algebra("Z2 on C(2 points) by swap", z2, regular(z2)),
        matrix_algebra_with_conjugation(
            "Z2 on M2 by Ad(diag(1,-1))",
            z2,
            2,
            vec![Mat::identity(2), diag.clone()],
        ),
        function_algebra("Z2xZ2 on C(4 points), regular", klein, regular(klein)),
        matrix_algebra_with_conjugation(
            "Z2xZ2 on M2 by Ad(diag(1,-1)), Ad(sigma_x)",
            klein,
            2,
            vec![Mat::identity(2), diag, sx, sxz],
        ),
    ];
    for a in cases {
        let rep = verify_crossed_product_isomorphism(&a)?;
        suite.push(
            format!("{}: a |-> sum gamma(a) (x) e_gamma is a *-isomorphism onto the fixed algebra", rep.algebra),
            rep.ok(),
            format!(
                "dim A x| Gamma = {}, fixed subalgebra dim = {}, multiplicative: {}, star: {}, injective: {}",
                rep.crossed_dim, rep.fixed_dim, rep.multiplicative, rep.star_preserving, rep.injective
            ),
        );
    }
    Ok(suite)
}

/// The explicit SL(2,R) Dirac family: linearity, vanishing at 0, squares.
pub fn suite_sl2_family(seed: u64, phis: usize) -> Result<Suite> {
    let mut suite = Suite::new("sl2-dirac-family");
    let g = load_builtin("SL2R")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = sl2_dirac_family(&g, &Sl2Pair::OddPrincipal, &Rat::one())?;
    let mut all_ok = true;
    let mut detail = String::new();
    for _ in 0..phis {
        let phi = rq(rng.gen_range(-40..=40), rng.gen_range(1..=8));
        let rep = sl2_dirac_family(&g, &Sl2Pair::OddPrincipal, &phi)?;
        let linear = rep.matrix == base.matrix.scale(&Gq::from_rat(phi.clone()));
        if !(rep.squares_to_norm && linear) {
            all_ok = false;
            if detail.is_empty() {
                detail = format!("failure at phi = {}", fmt_rat(&phi));
            }
        }
    }
    let zero = sl2_dirac_family(&g, &Sl2Pair::OddPrincipal, &Rat::zero())?;
    suite.push(
        format!("odd principal series family: linear in phi, D^2 = phi^2 for {phis} seeded phi"),
        all_ok && zero.matrix.is_zero(),
        detail,
    );
    let gam = sl2_family_odd_symmetry(&g)?;
    let sym_ok = gam.conj_transpose() == gam.neg()
        && gam.mul(&gam).is_scalar(&Gq::from_rat(rint(-1)))
        && gam.anticommutator(&base.matrix).is_zero();
    suite.push("odd symmetry: gamma* = -gamma, gamma^2 = -1, anticommutes with the family", sym_ok, String::new());
    let mut ds_ok = true;
    for n in [-5i64, -1, 1, 2, 7] {
        let rep = sl2_dirac_family(&g, &Sl2Pair::DiscreteSeries(n), &Rat::zero())?;
        ds_ok &= rep.matrix.is_zero();
    }
    suite.push("discrete-series members vanish on the invariant line", ds_ok, String::new());
    Ok(suite)
}

/// Rank/degree of the K-theory summary against an independent class count.
pub fn suite_ksummary(g: &GroupDatum, bound: &Rat) -> Result<Suite> {
    let mut suite = Suite::new(format!("k-summary {}", g.name));
    let summary = k_summary(g, bound)?;
    // independent count straight from the rendered classes table
    let tsv = classes_tsv(g, bound)?;
    let independent = tsv.lines().skip(1).filter(|l| l.split('\t').nth(2) == Some("yes")).count();
    suite.push(
        format!("{}: rank equals the essential-class count of the classes table", g.name),
        summary.rank == independent as u64,
        format!("rank {} vs counted {}", summary.rank, independent),
    );
    suite.push(
        format!("{}: degree = dim(G/K) mod 2 = {}", g.name, g.dim_gk % 2),
        summary.degree as usize == g.dim_gk % 2,
        String::new(),
    );
    suite.push(
        format!("{}: complementary degree has rank 0", g.name),
        summary.other_degree_rank == 0,
        String::new(),
    );
    suite.push(
        format!("{}: degree parity equals a_max parity", g.name),
        summary.degree as usize % 2 == g.a_max_dim % 2,
        String::new(),
    );
    Ok(suite)
}

/// PBW soundness: seeded confluence spot-checks and centrality of the Casimir.
pub fn suite_pbw(g: &GroupDatum, seed: u64, words: usize) -> Result<Suite> {
    let mut suite = Suite::new(format!("pbw {}", g.name));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.lie.dim;
    let mut ok = 0usize;
    for _ in 0..words {
        let len = rng.gen_range(2..=3usize);
        let word: Vec<u8> = (0..len).map(|_| rng.gen_range(0..n as u8)).collect();
        let direct = pbw_normalize_word(&word, &Rat::one(), &g.lie, DEFAULT_DEGREE_CAP)?;
        let k = len / 2;
        let left = pbw_normalize_word(&word[..k], &Rat::one(), &g.lie, DEFAULT_DEGREE_CAP)?;
        let right = pbw_normalize_word(&word[k..], &Rat::one(), &g.lie, DEFAULT_DEGREE_CAP)?;
        if direct == left.mul(&right, &g.lie, DEFAULT_DEGREE_CAP)? {
            ok += 1;
        }
    }
    suite.push(
        format!("{}: two reduction orders agree on {words} seeded words", g.name),
        ok == words,
        format!("{ok}/{words}"),
    );
    let omega = casimir(&g.lie, 0, n, DEFAULT_DEGREE_CAP)?;
    let mut central = true;
    for i in 0..n {
        let y = PBWElement::generator(i);
        if !omega.commutator(&y, &g.lie, DEFAULT_DEGREE_CAP)?.is_zero() {
            central = false;
        }
    }
    suite.push(
        format!("{}: [Omega_G, Y] normalizes to 0 for every basis Y", g.name),
        central,
        String::new(),
    );
    Ok(suite)
}

/// Everything, for every built-in group.
pub fn all_suites(seed: u64) -> Result<Vec<Suite>> {
    let bound = rint(100);
    let mut out = Vec::new();
    for name in BUILTIN_NAMES {
        let g = load_builtin(name)?;
        out.push(suite_parthasarathy(&g)?);
    }
    for name in BUILTIN_NAMES {
        let g = load_builtin(name)?;
        out.push(suite_casimir_norm(&g, &bound)?);
    }
    out.push(suite_matching_golden()?);
    for name in BUILTIN_NAMES {
        let g = load_builtin(name)?;
        out.push(suite_dirac_square(&g, &bound, seed, 20)?);
        out.push(suite_dimension_formulas(&g, &bound)?);
        out.push(suite_ksummary(&g, &bound)?);
        out.push(suite_pbw(&g, seed, 500)?);
    }
    out.push(suite_bott(seed, 100)?);
    out.push(suite_rieffel()?);
    out.push(suite_sl2_family(seed, 50)?);
    Ok(out)
}

pub fn suite_by_name(name: &str, group: Option<&str>, seed: u64) -> Result<Vec<Suite>> {
    let bound = rint(100);
    let groups: Vec<String> = match group {
        Some(g) => vec![g.to_string()],
        None => BUILTIN_NAMES.iter().map(|s| s.to_string()).collect(),
    };
    let mut out = Vec::new();
    match name {
        "parthasarathy" => {
            for g in &groups {
                out.push(suite_parthasarathy(&load_builtin(g)?)?);
            }
        }
        "casimir-norm" => {
            for g in &groups {
                out.push(suite_casimir_norm(&load_builtin(g)?, &bound)?);
            }
        }
        "matching" => out.push(suite_matching_golden()?),
        "dirac-square" => {
            for g in &groups {
                out.push(suite_dirac_square(&load_builtin(g)?, &bound, seed, 20)?);
            }
        }
        "dimensions" => {
            for g in &groups {
                out.push(suite_dimension_formulas(&load_builtin(g)?, &bound)?);
            }
        }
        "bott" => out.push(suite_bott(seed, 100)?),
        "rieffel" => out.push(suite_rieffel()?),
        "sl2-family" => out.push(suite_sl2_family(seed, 50)?),
        "k-summary" => {
            for g in &groups {
                out.push(suite_ksummary(&load_builtin(g)?, &bound)?);
            }
        }
        "pbw" => {
            for g in &groups {
                out.push(suite_pbw(&load_builtin(g)?, seed, 500)?);
            }
        }
        "all" => return all_suites(seed),
        other => {
            return Err(crate::error::Error::Invalid(format!(
                "unknown suite `{other}`; one of parthasarathy, casimir-norm, matching, \
dirac-square, dimensions, bott, rieffel, sl2-family, k-summary, pbw, all"
            )))
        }
    }
    Ok(out)
}

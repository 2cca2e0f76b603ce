//! Catalog of concrete groups: structure constants, Cartan decomposition,
//! invariant form, root data, parabolic and intertwining data.
//!
//! Built-in entries (SL(2,R), Sp(4,R), SL(2,C)) are generated from defining
//! matrix representations at load time and then pushed through the same
//! validator battery as external JSON catalogs: Jacobi, invariance and
//! definiteness of B, the Cartan-decomposition bracket pattern, root
//! eigenvector checks on the complexification, split-rank computations, and
//! the group-order constraints on the intertwining data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::num::{fmt_rat, parse_rat, rint, rq, Gq, Rat, Scalar};
use crate::pbw::LieAlgebraData;
use crate::roots::RootSystem;
use crate::weight::{Weight, WeightSpace};

/// A root of the complexified algebra on the fundamental Cartan t + a_h,
/// written as (value on the compact torus)/i together with the real value on
/// the split part.
#[derive(Clone, Debug)]
pub struct GRoot {
    pub t_part: Vec<Rat>,
    pub a_part: Vec<Rat>,
    pub compact: bool,
}

#[derive(Clone, Debug)]
pub struct FundamentalCartan {
    /// Elements of g (coordinates in the Lie basis) spanning the split part.
    pub a_basis: Vec<Vec<Rat>>,
    pub roots: Vec<GRoot>,
}

/// How to build exact irreducible K-representation matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum KIrrepModel {
    /// k is abelian (= its torus); mu gives i mu_j on the torus basis.
    Torus,
    /// k = su(2) with basis (i h, e - f, i(e + f)); mu = (m), m >= 0.
    Su2Standard,
    /// k = u(2) with basis (i e11, i e22, e12 - e21, i e12 + i e21);
    /// mu = (a, b) with a >= b, realized on Sym^(a-b) tensor det^b.
    U2Standard,
}

#[derive(Clone, Debug)]
pub struct FiniteChar {
    pub name: String,
    /// Weight parities (mod 2, per compact-torus coordinate) that pair with
    /// this character under Frobenius reciprocity.
    pub parities: Vec<u8>,
    pub w_order: u64,
    pub w_prime_order: u64,
    pub r_rank: u32,
}

/// Discrete-series family of one standard parabolic, together with the rule
/// for pairing sigma against the K-weights of a spin module.
#[derive(Clone, Debug)]
pub enum SigmaFamily {
    /// P = G (equal rank): sigma runs over the discrete series of G. The
    /// Harish-Chandra parameters are the K-dominant, fully regular points of
    /// the t-lattice; K-type multiplicities come from the Blattner formula.
    GroupDs,
    /// M finite abelian inside the compact torus.
    FiniteChars { chars: Vec<FiniteChar> },
    /// M of SL^{+-}(2,R) type: sigma_k with k >= 1; essential iff k is even.
    /// Pairing counts S-weights whose pairing with `dvec` lies in the K-type
    /// progression {k+1, k+3, ...} of the underlying SL(2,R) discrete series.
    Sl2PlusMinus { dvec: Vec<Rat> },
    /// M = Z_2 x SL(2,R): sigma_{l,k}, l in {0,1}, k != 0; essential iff l = 0.
    /// Pairing counts integral S-weights with coordinate `sl2_coord` in the
    /// contragredient K-type progression of D_k and coordinate `parity_coord`
    /// congruent to l mod 2.
    Z2Sl2 { sl2_coord: usize, parity_coord: usize },
    /// M = U(1): sigma_j; the Weyl reflection identifies j with -j, so classes
    /// are j >= 0; essential iff j != 0. Pairing counts S-weights with torus
    /// coordinate -j.
    TorusChars,
}

#[derive(Clone, Debug)]
pub struct ParabolicDatum {
    pub label: String,
    pub a_dim: usize,
    /// Split-part basis, as coordinate vectors in the Lie basis.
    pub a_basis: Vec<Vec<Rat>>,
    pub a_space: WeightSpace,
    /// Indices (into the k-part of the Lie basis) of the compact Cartan of M.
    pub t_basis: Vec<usize>,
    pub t_space: WeightSpace,
    pub family: SigmaFamily,
}

#[derive(Clone, Debug)]
pub struct GroupDatum {
    pub name: String,
    pub description: String,
    pub basis_names: Vec<String>,
    pub lie: LieAlgebraData,
    pub dim_gk: usize,
    pub a_max_dim: usize,
    /// Indices (into the k-part) of the compact-torus basis.
    pub torus: Vec<usize>,
    pub k_space: WeightSpace,
    pub k_roots: RootSystem,
    pub fundamental: FundamentalCartan,
    pub genuine_shift: Weight,
    pub k_model: KIrrepModel,
    pub parabolics: Vec<ParabolicDatum>,
}

impl GroupDatum {
    pub fn k_dim(&self) -> usize {
        self.lie.k_dim
    }
    pub fn s_dim(&self) -> usize {
        self.lie.s_dim()
    }
    pub fn rho_k(&self) -> Weight {
        self.k_roots.half_sum_positive()
    }
    pub fn rho_k_sq(&self) -> Rat {
        let rho = self.rho_k();
        self.k_space.norm_sq(&rho).expect("rho_k norm")
    }

    /// ||rho_g||^2 from the fundamental-Cartan root list (choice of positive
    /// system does not matter for the norm; lexicographic is used).
    pub fn rho_g_sq(&self) -> Rat {
        let mut sum_t = vec![Rat::zero(); self.k_space.dim()];
        let mut sum_a = vec![Rat::zero(); self.fundamental.a_basis.len()];
        for r in &self.fundamental.roots {
            if lex_positive(&r.t_part, &r.a_part) {
                for (i, c) in r.t_part.iter().enumerate() {
                    sum_t[i] += c;
                }
                for (i, c) in r.a_part.iter().enumerate() {
                    sum_a[i] += c;
                }
            }
        }
        let half = rq(1, 2);
        let rho_t = self.k_space.weight(sum_t.iter().map(|c| c * &half).collect());
        let t_norm = self.k_space.norm_sq(&rho_t).expect("rho_g t-part");
        let a_gram = self.split_dual_gram(&self.fundamental.a_basis);
        let rho_a: Vec<Rat> = sum_a.iter().map(|c| c * &half).collect();
        let a_norm = quad_form(&a_gram, &rho_a);
        t_norm + a_norm
    }

    /// Dual gram (inverse of B restricted) for a split-part basis.
    pub fn split_dual_gram(&self, a_basis: &[Vec<Rat>]) -> Mat<Rat> {
        let n = a_basis.len();
        if n == 0 {
            return Mat::zeros(0, 0);
        }
        let g = Mat::from_fn(n, n, |i, j| {
            b_value(&self.lie.b_gram, &a_basis[i], &a_basis[j])
        });
        g.inverse().expect("split part nondegenerate")
    }

    /// ad-action matrices of the compact-torus basis on the complement.
    pub fn torus_ad_on_s(&self) -> Result<Vec<Mat<Rat>>> {
        self.torus.iter().map(|&i| self.lie.ad_on_s(i)).collect()
    }

    /// dim of the simultaneous kernel in s of the compact-torus action.
    pub fn compute_a_max(&self) -> Result<usize> {
        let mats = self.torus_ad_on_s()?;
        let s = self.s_dim();
        if mats.is_empty() {
            return Ok(s);
        }
        let mut stacked = Mat::zeros(s * mats.len(), s);
        for (b, m) in mats.iter().enumerate() {
            for r in 0..s {
                for c in 0..s {
                    stacked.set(b * s + r, c, m.at(r, c).clone());
                }
            }
        }
        Ok(s - stacked.rank())
    }

    pub fn parabolic(&self, label: &str) -> Result<&ParabolicDatum> {
        self.parabolics
            .iter()
            .find(|p| p.label == label)
            .ok_or_else(|| Error::Invalid(format!("no parabolic `{label}` in {}", self.name)))
    }
}

fn lex_positive(t: &[Rat], a: &[Rat]) -> bool {
    for c in t.iter().chain(a.iter()) {
        if c > &Rat::zero() {
            return true;
        }
        if c < &Rat::zero() {
            return false;
        }
    }
    false
}

fn quad_form(g: &Mat<Rat>, v: &[Rat]) -> Rat {
    let gv = g.matvec(v);
    v.iter().zip(&gv).map(|(a, b)| a * b).fold(Rat::zero(), |acc, x| acc + x)
}

/// B(x, y) for coordinate vectors in the Lie basis.
pub fn b_value(b_gram: &Mat<Rat>, x: &[Rat], y: &[Rat]) -> Rat {
    let gy = b_gram.matvec(y);
    x.iter().zip(&gy).map(|(a, b)| a * b).fold(Rat::zero(), |acc, v| acc + v)
}

// ---------------------------------------------------------------------------
// Structure constants from defining matrices
// ---------------------------------------------------------------------------

fn flatten_real(m: &Mat<Rat>) -> Vec<Rat> {
    let mut v = Vec::with_capacity(m.nrows * m.ncols);
    for r in 0..m.nrows {
        for c in 0..m.ncols {
            v.push(m.at(r, c).clone());
        }
    }
    v
}

fn flatten_complex(m: &Mat<Gq>) -> Vec<Rat> {
    let mut v = Vec::with_capacity(2 * m.nrows * m.ncols);
    for r in 0..m.nrows {
        for c in 0..m.ncols {
            v.push(m.at(r, c).re.clone());
        }
    }
    for r in 0..m.nrows {
        for c in 0..m.ncols {
            v.push(m.at(r, c).im.clone());
        }
    }
    v
}

fn bracket_table_from(flat: &[Vec<Rat>], products: impl Fn(usize, usize) -> Vec<Rat>) -> Result<Vec<Vec<Vec<(usize, Rat)>>>> {
    let dim = flat.len();
    let rows = flat[0].len();
    let basis_mat = Mat::from_fn(rows, dim, |r, c| flat[c][r].clone());
    let mut table = vec![vec![vec![]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let rhs = products(i, j);
            let x = basis_mat
                .solve(&rhs)
                .map_err(|_| Error::Invalid(format!("bracket [{i},{j}] leaves the span")))?;
            let mut terms = Vec::new();
            for (k, c) in x.into_iter().enumerate() {
                if !c.is_zero() {
                    terms.push((k, c));
                }
            }
            table[i][j] = terms;
        }
    }
    Ok(table)
}

fn real_group_structure(basis: &[Mat<Rat>], k_dim: usize, b_scale: Rat) -> Result<LieAlgebraData> {
    let dim = basis.len();
    let flat: Vec<Vec<Rat>> = basis.iter().map(flatten_real).collect();
    let table = bracket_table_from(&flat, |i, j| {
        flatten_real(&basis[i].mul(&basis[j]).sub(&basis[j].mul(&basis[i])))
    })?;
    let b_gram = Mat::from_fn(dim, dim, |i, j| basis[i].mul(&basis[j]).trace() * &b_scale);
    Ok(LieAlgebraData { dim, k_dim, bracket: table, b_gram })
}

fn complex_group_structure(basis: &[Mat<Gq>], k_dim: usize, b_scale: Rat) -> Result<LieAlgebraData> {
    let dim = basis.len();
    let flat: Vec<Vec<Rat>> = basis.iter().map(flatten_complex).collect();
    let table = bracket_table_from(&flat, |i, j| {
        flatten_complex(&basis[i].mul(&basis[j]).sub(&basis[j].mul(&basis[i])))
    })?;
    // B = Re Tr(XY) * scale
    let b_gram = Mat::from_fn(dim, dim, |i, j| basis[i].mul(&basis[j]).trace().re * &b_scale);
    Ok(LieAlgebraData { dim, k_dim, bracket: table, b_gram })
}

// ---------------------------------------------------------------------------
// Built-in groups
// ---------------------------------------------------------------------------

fn rmat2(entries: [[i64; 2]; 2]) -> Mat<Rat> {
    Mat::from_fn(2, 2, |r, c| rint(entries[r][c]))
}

fn e4(r: usize, c: usize) -> Mat<Rat> {
    let mut m = Mat::zeros(4, 4);
    m.set(r, c, Rat::one());
    m
}

/// SL(2,R): basis (Z0, X1, X2) = (E - F, H, E + F), B = trace/2.
pub fn sl2r() -> Result<GroupDatum> {
    let z0 = rmat2([[0, 1], [-1, 0]]);
    let x1 = rmat2([[1, 0], [0, -1]]);
    let x2 = rmat2([[0, 1], [1, 0]]);
    let lie = real_group_structure(&[z0, x1, x2], 1, rq(1, 2))?;
    let k_space = WeightSpace::new("SL2R.t", Mat::identity(1));
    let k_roots = RootSystem::empty(k_space.clone());
    let fundamental = FundamentalCartan {
        a_basis: vec![],
        roots: vec![
            GRoot { t_part: vec![rint(2)], a_part: vec![], compact: false },
            GRoot { t_part: vec![rint(-2)], a_part: vec![], compact: false },
        ],
    };
    let genuine_shift = k_space.zero();
    let a_g = WeightSpace::new("SL2R.a_G", Mat::zeros(0, 0));
    let t_min = WeightSpace::new("SL2R.t_Pmin", Mat::zeros(0, 0));
    let a_min = WeightSpace::new("SL2R.a_Pmin", Mat::identity(1));
    let parabolics = vec![
        ParabolicDatum {
            label: "G".into(),
            a_dim: 0,
            a_basis: vec![],
            a_space: a_g,
            t_basis: vec![0],
            t_space: k_space.clone(),
            family: SigmaFamily::GroupDs,
        },
        ParabolicDatum {
            label: "Pmin".into(),
            a_dim: 1,
            a_basis: vec![unit_vec(3, 1)],
            a_space: a_min,
            t_basis: vec![],
            t_space: t_min,
            family: SigmaFamily::FiniteChars {
                chars: vec![
                    FiniteChar {
                        name: "even".into(),
                        parities: vec![0],
                        w_order: 2,
                        w_prime_order: 2,
                        r_rank: 0,
                    },
                    FiniteChar {
                        name: "odd".into(),
                        parities: vec![1],
                        w_order: 2,
                        w_prime_order: 1,
                        r_rank: 1,
                    },
                ],
            },
        },
    ];
    let g = GroupDatum {
        name: "SL2R".into(),
        description: "special linear group of 2x2 real matrices of determinant one".into(),
        basis_names: vec!["Z0".into(), "X1".into(), "X2".into()],
        lie,
        dim_gk: 2,
        a_max_dim: 0,
        torus: vec![0],
        k_space,
        k_roots,
        fundamental,
        genuine_shift,
        k_model: KIrrepModel::Torus,
        parabolics,
    };
    validate(&g)?;
    Ok(g)
}

fn unit_vec(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = Rat::one();
    v
}

/// Sp(4,R) preserving the form with J = [[0, I], [-I, 0]]; K = U(2).
pub fn sp4r() -> Result<GroupDatum> {
    // block helpers: X(A,B) = [[A, B], [-B, A]] in k; Y(A,B) = [[A, B], [B, -A]] in s
    let block = |a: &Mat<Rat>, b: &Mat<Rat>, c: &Mat<Rat>, d: &Mat<Rat>| -> Mat<Rat> {
        let mut m = Mat::zeros(4, 4);
        for r in 0..2 {
            for col in 0..2 {
                m.set(r, col, a.at(r, col).clone());
                m.set(r, col + 2, b.at(r, col).clone());
                m.set(r + 2, col, c.at(r, col).clone());
                m.set(r + 2, col + 2, d.at(r, col).clone());
            }
        }
        m
    };
    let z2 = Mat::<Rat>::zeros(2, 2);
    let e11 = e4(0, 0).map(|x| x.clone());
    let _ = e11;
    let m11 = rmat2([[1, 0], [0, 0]]);
    let m22 = rmat2([[0, 0], [0, 1]]);
    let m12s = rmat2([[0, 1], [1, 0]]);
    let rot = rmat2([[0, 1], [-1, 0]]);
    let xk = |a: &Mat<Rat>, b: &Mat<Rat>| block(a, b, &b.neg(), a);
    let ys = |a: &Mat<Rat>, b: &Mat<Rat>| block(a, b, b, &a.neg());

    let k1 = xk(&z2, &m11);
    let k2 = xk(&z2, &m22);
    let k3 = xk(&rot, &z2);
    let k4 = xk(&z2, &m12s);
    let s1 = ys(&m11, &z2);
    let s2 = ys(&m22, &z2);
    let s3 = ys(&z2, &m11);
    let s4 = ys(&z2, &m22);
    let half = rq(1, 2);
    let s5 = ys(&m12s, &z2).add(&ys(&z2, &m12s)).scale(&half);
    let s6 = ys(&m12s, &z2).sub(&ys(&z2, &m12s)).scale(&half);
    let basis = vec![k1, k2, k3, k4, s1, s2, s3, s4, s5, s6];
    let lie = real_group_structure(&basis, 4, rq(1, 2))?;

    let k_space = WeightSpace::new("Sp4R.t", Mat::identity(2));
    let alpha_c = k_space.weight_i64(&[1, -1]);
    let k_roots = RootSystem::from_simple_roots(k_space.clone(), vec![alpha_c])?;
    let mut roots = Vec::new();
    for (t, compact) in [
        ([1i64, -1], true),
        ([-1, 1], true),
        ([2, 0], false),
        ([-2, 0], false),
        ([0, 2], false),
        ([0, -2], false),
        ([1, 1], false),
        ([-1, -1], false),
    ] {
        roots.push(GRoot {
            t_part: vec![rint(t[0]), rint(t[1])],
            a_part: vec![],
            compact,
        });
    }
    let fundamental = FundamentalCartan { a_basis: vec![], roots };
    let genuine_shift = k_space.weight(vec![rq(1, 2), rq(1, 2)]);

    let parabolics = vec![
        ParabolicDatum {
            label: "G".into(),
            a_dim: 0,
            a_basis: vec![],
            a_space: WeightSpace::new("Sp4R.a_G", Mat::zeros(0, 0)),
            t_basis: vec![0, 1],
            t_space: k_space.clone(),
            family: SigmaFamily::GroupDs,
        },
        ParabolicDatum {
            label: "P1".into(),
            a_dim: 1,
            a_basis: vec![vec![
                Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero(),
                Rat::one(), Rat::one(), Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero(),
            ]],
            a_space: WeightSpace::new("Sp4R.a_P1", Mat::from_rows(vec![vec![rq(1, 2)]])),
            t_basis: vec![2],
            t_space: WeightSpace::new("Sp4R.t_P1", Mat::from_rows(vec![vec![rq(1, 2)]])),
            family: SigmaFamily::Sl2PlusMinus { dvec: vec![rint(1), rint(-1)] },
        },
        ParabolicDatum {
            label: "P2".into(),
            a_dim: 1,
            a_basis: vec![unit_vec(10, 4)],
            a_space: WeightSpace::new("Sp4R.a_P2", Mat::identity(1)),
            t_basis: vec![1],
            t_space: WeightSpace::new("Sp4R.t_P2", Mat::identity(1)),
            family: SigmaFamily::Z2Sl2 { sl2_coord: 1, parity_coord: 0 },
        },
        ParabolicDatum {
            label: "Pmin".into(),
            a_dim: 2,
            a_basis: vec![unit_vec(10, 4), unit_vec(10, 5)],
            a_space: WeightSpace::new("Sp4R.a_Pmin", Mat::identity(2)),
            t_basis: vec![],
            t_space: WeightSpace::new("Sp4R.t_Pmin", Mat::zeros(0, 0)),
            family: SigmaFamily::FiniteChars {
                chars: vec![
                    FiniteChar {
                        name: "sigma0".into(),
                        parities: vec![0, 0],
                        w_order: 8,
                        w_prime_order: 8,
                        r_rank: 0,
                    },
                    FiniteChar {
                        name: "sigma1".into(),
                        parities: vec![1, 0],
                        w_order: 4,
                        w_prime_order: 2,
                        r_rank: 1,
                    },
                    FiniteChar {
                        name: "sigma2".into(),
                        parities: vec![1, 1],
                        w_order: 8,
                        w_prime_order: 4,
                        r_rank: 1,
                    },
                ],
            },
        },
    ];

    let g = GroupDatum {
        name: "Sp4R".into(),
        description: "real symplectic group of rank two; maximal compact U(2)".into(),
        basis_names: vec![
            "k1".into(), "k2".into(), "k3".into(), "k4".into(),
            "s1".into(), "s2".into(), "s3".into(), "s4".into(), "s5".into(), "s6".into(),
        ],
        lie,
        dim_gk: 6,
        a_max_dim: 0,
        torus: vec![0, 1],
        k_space,
        k_roots,
        fundamental,
        genuine_shift,
        k_model: KIrrepModel::U2Standard,
        parabolics,
    };
    validate(&g)?;
    Ok(g)
}

/// SL(2,C) as a six-dimensional real group; K = SU(2).
pub fn sl2c() -> Result<GroupDatum> {
    let g1 = |re: [[i64; 2]; 2], im: [[i64; 2]; 2]| -> Mat<Gq> {
        Mat::from_fn(2, 2, |r, c| Gq::new(rint(re[r][c]), rint(im[r][c])))
    };
    let zero = [[0, 0], [0, 0]];
    let k1 = g1(zero, [[1, 0], [0, -1]]); // iH
    let k2 = g1([[0, 1], [-1, 0]], zero); // E - F
    let k3 = g1(zero, [[0, 1], [1, 0]]); // i(E + F)
    let s1 = g1([[1, 0], [0, -1]], zero); // H
    let s2 = g1([[0, 1], [1, 0]], zero); // E + F
    let s3 = g1(zero, [[0, 1], [-1, 0]]); // i(E - F)
    let basis = vec![k1, k2, k3, s1, s2, s3];
    let lie = complex_group_structure(&basis, 3, rq(1, 2))?;

    let k_space = WeightSpace::new("SL2C.t", Mat::identity(1));
    let alpha = k_space.weight_i64(&[2]);
    let k_roots = RootSystem::from_simple_roots(k_space.clone(), vec![alpha])?;
    let mut roots = Vec::new();
    for (t, a) in [(2i64, 2i64), (-2, 2), (2, -2), (-2, -2)] {
        roots.push(GRoot { t_part: vec![rint(t)], a_part: vec![rint(a)], compact: false });
    }
    let fundamental = FundamentalCartan { a_basis: vec![unit_vec(6, 3)], roots };
    let genuine_shift = k_space.zero();

    let parabolics = vec![ParabolicDatum {
        label: "Pmin".into(),
        a_dim: 1,
        a_basis: vec![unit_vec(6, 3)],
        a_space: WeightSpace::new("SL2C.a_Pmin", Mat::identity(1)),
        t_basis: vec![0],
        t_space: k_space.clone(),
        family: SigmaFamily::TorusChars,
    }];

    let g = GroupDatum {
        name: "SL2C".into(),
        description: "special linear group of 2x2 complex matrices viewed as a real group".into(),
        basis_names: vec![
            "iH".into(), "E-F".into(), "i(E+F)".into(),
            "H".into(), "E+F".into(), "i(E-F)".into(),
        ],
        lie,
        dim_gk: 3,
        a_max_dim: 1,
        torus: vec![0],
        k_space,
        k_roots,
        fundamental,
        genuine_shift,
        k_model: KIrrepModel::Su2Standard,
        parabolics,
    };
    validate(&g)?;
    Ok(g)
}

pub const BUILTIN_NAMES: [&str; 3] = ["SL2R", "Sp4R", "SL2C"];

pub fn load_builtin(name: &str) -> Result<GroupDatum> {
    match name {
        "SL2R" => sl2r(),
        "Sp4R" => sp4r(),
        "SL2C" => sl2c(),
        other => Err(Error::UnknownGroup(other.into())),
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

fn fail(identity: &str, detail: String) -> Error {
    Error::CatalogInvalid { identity: identity.into(), detail }
}

pub fn validate(g: &GroupDatum) -> Result<()> {
    let lie = &g.lie;
    let n = lie.dim;
    if lie.k_dim > n || g.basis_names.len() != n {
        return Err(fail("shape", "basis bookkeeping inconsistent".into()));
    }
    // antisymmetry and Jacobi
    let ad = |i: usize, j: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        for (t, c) in lie.bracket_of(i, j) {
            v[*t] += c;
        }
        v
    };
    for i in 0..n {
        for j in 0..n {
            let a = ad(i, j);
            let b = ad(j, i);
            for t in 0..n {
                if a[t].clone() + b[t].clone() != Rat::zero() {
                    return Err(fail(
                        "antisymmetry",
                        format!("[Y{i},Y{j}] + [Y{j},Y{i}] has component Y{t}"),
                    ));
                }
            }
        }
    }
    let bracket_vec = |x: &[Rat], y: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                for (t, c) in lie.bracket_of(i, j) {
                    out[*t] += &x[i] * &y[j] * c;
                }
            }
        }
        out
    };
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let e = |idx: usize| unit_vec(n, idx);
                let mut total = bracket_vec(&e(i), &bracket_vec(&e(j), &e(k)));
                for (t, c) in bracket_vec(&e(j), &bracket_vec(&e(k), &e(i))).iter().enumerate() {
                    total[t] += c;
                }
                for (t, c) in bracket_vec(&e(k), &bracket_vec(&e(i), &e(j))).iter().enumerate() {
                    total[t] += c;
                }
                if total.iter().any(|c| !c.is_zero()) {
                    return Err(fail("jacobi", format!("triple (Y{i},Y{j},Y{k})")));
                }
            }
        }
    }
    // Cartan decomposition bracket pattern
    let kd = lie.k_dim;
    for i in 0..n {
        for j in 0..n {
            let in_k = |x: usize| x < kd;
            let expect_k = in_k(i) == in_k(j);
            for (t, _) in lie.bracket_of(i, j) {
                if in_k(*t) != expect_k {
                    return Err(fail(
                        "cartan-decomposition",
                        format!("[Y{i},Y{j}] crosses the k/s split at Y{t}"),
                    ));
                }
            }
        }
    }
    // B symmetric, invariant, definite with the right signs
    let bg = &lie.b_gram;
    if bg.sub(&bg.transpose()).is_zero() == false {
        return Err(fail("b-symmetric", "B is not symmetric".into()));
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // B([Yi,Yj], Yk) + B(Yj, [Yi,Yk]) = 0
                let mut lhs = Rat::zero();
                for (t, c) in lie.bracket_of(i, j) {
                    lhs += c * bg.at(*t, k);
                }
                for (t, c) in lie.bracket_of(i, k) {
                    lhs += c * bg.at(j, *t);
                }
                if !lhs.is_zero() {
                    return Err(fail("b-invariance", format!("triple (Y{i},Y{j},Y{k})")));
                }
            }
        }
    }
    for a in 0..(n - kd) {
        for b in 0..(n - kd) {
            let want = if a == b { Rat::one() } else { Rat::zero() };
            if *bg.at(kd + a, kd + b) != want {
                return Err(fail(
                    "s-orthonormal",
                    format!("B(s{a},s{b}) = {}", fmt_rat(bg.at(kd + a, kd + b))),
                ));
            }
        }
    }
    // negative definiteness on k: leading minors of -B|k positive
    for m in 1..=kd {
        let sub = Mat::from_fn(m, m, |i, j| -bg.at(i, j).clone());
        if sub.inverse().is_err() {
            return Err(fail("b-negative-on-k", format!("singular {m}x{m} block")));
        }
        // positive definiteness via rational Cholesky-style check
        if !pos_def(&sub) {
            return Err(fail("b-negative-on-k", format!("-B|k leading {m}x{m} not positive")));
        }
    }
    // torus is abelian and in k
    for &i in &g.torus {
        if i >= kd {
            return Err(fail("torus", format!("index {i} not in k")));
        }
        for &j in &g.torus {
            if !lie.bracket_of(i, j).is_empty() {
                return Err(fail("torus", format!("[T{i},T{j}] != 0")));
            }
        }
    }
    if g.k_space.dim() != g.torus.len() {
        return Err(fail("torus", "k_space rank differs from torus size".into()));
    }
    // k_space gram = inverse of <.,.> = -B on the torus
    let tg = Mat::from_fn(g.torus.len(), g.torus.len(), |i, j| {
        -bg.at(g.torus[i], g.torus[j]).clone()
    });
    let want = tg.inverse().map_err(|_| fail("torus", "degenerate torus form".into()))?;
    if g.k_space.gram != want {
        return Err(fail("k-space-gram", "stored dual gram differs from -B|t inverse".into()));
    }
    // parity and split rank
    if g.dim_gk != lie.s_dim() {
        return Err(fail("dim-gk", "dim(G/K) must equal dim s".into()));
    }
    if g.a_max_dim % 2 != g.dim_gk % 2 {
        return Err(fail(
            "parity",
            format!("a_max = {} vs dim(G/K) = {}", g.a_max_dim, g.dim_gk),
        ));
    }
    let computed = g.compute_a_max()?;
    if computed != g.a_max_dim {
        return Err(fail(
            "a-max",
            format!("declared {} but torus kernel has dimension {computed}", g.a_max_dim),
        ));
    }
    validate_roots(g)?;
    validate_parabolics(g)?;
    Ok(())
}

fn pos_def(m: &Mat<Rat>) -> bool {
    // all leading principal minors positive (checked by elimination)
    let n = m.nrows;
    let mut a = m.clone();
    for col in 0..n {
        if *a.at(col, col) <= Rat::zero() {
            return false;
        }
        let piv = a.at(col, col).clone();
        for r in (col + 1)..n {
            let f = a.at(r, col).clone() / piv.clone();
            for c in col..n {
                let v = a.at(r, c).clone() - f.clone() * a.at(col, c).clone();
                a.set(r, c, v);
            }
        }
    }
    true
}

/// Root eigenvector validation on the complexified algebra: each listed root
/// must carry at least a one-dimensional simultaneous eigenspace, and the
/// eigenspaces together with the Cartan must fill the algebra.
fn validate_roots(g: &GroupDatum) -> Result<()> {
    let lie = &g.lie;
    let n = lie.dim;
    let ad_full = |v: &[Rat]| -> Mat<Rat> {
        let mut m = Mat::<Rat>::zeros(n, n);
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                for (t, c) in lie.bracket_of(i, j) {
                    let cur = m.at(*t, j).clone() + &v[i] * c;
                    m.set(*t, j, cur);
                }
            }
        }
        m
    };
    let torus_mats: Vec<Mat<Gq>> = g
        .torus
        .iter()
        .map(|&i| ad_full(&unit_vec(n, i)).map(|x| Gq::from_rat(x.clone())))
        .collect();
    let a_mats: Vec<Mat<Gq>> = g
        .fundamental
        .a_basis
        .iter()
        .map(|v| ad_full(v).map(|x| Gq::from_rat(x.clone())))
        .collect();
    let mut total = 0usize;
    for root in &g.fundamental.roots {
        // stack (ad T_j - i tau_j) and (ad A_l - alpha_l)
        let rows = (torus_mats.len() + a_mats.len()) * n;
        let mut stacked = Mat::zeros(rows, n);
        let mut row0 = 0usize;
        for (j, tm) in torus_mats.iter().enumerate() {
            let lam = Gq::new(Rat::zero(), root.t_part[j].clone());
            for r in 0..n {
                for c in 0..n {
                    let mut v = tm.at(r, c).clone();
                    if r == c {
                        v = v.sub(&lam);
                    }
                    stacked.set(row0 + r, c, v);
                }
            }
            row0 += n;
        }
        for (l, am) in a_mats.iter().enumerate() {
            let lam = Gq::from_rat(root.a_part[l].clone());
            for r in 0..n {
                for c in 0..n {
                    let mut v = am.at(r, c).clone();
                    if r == c {
                        v = v.sub(&lam);
                    }
                    stacked.set(row0 + r, c, v);
                }
            }
            row0 += n;
        }
        let dim = n - stacked.rank();
        if dim == 0 {
            return Err(fail(
                "g-root",
                format!("no eigenvector for root (t={:?}, a={:?})", root.t_part, root.a_part),
            ));
        }
        total += dim;
    }
    let cartan_dim = g.torus.len() + g.fundamental.a_basis.len();
    if total + cartan_dim != n {
        return Err(fail(
            "g-root-count",
            format!("root spaces ({total}) + Cartan ({cartan_dim}) != dim g ({n})"),
        ));
    }
    // k-roots must be among the compact g-roots (equal-rank catalogs) or at
    // least reproduce dim k via their own eigenspaces
    let mut k_total = 0usize;
    for root in g.k_roots.all_roots() {
        let rows = torus_mats.len() * lie.k_dim;
        let mut stacked = Mat::zeros(rows, lie.k_dim);
        for (j, _) in g.torus.iter().enumerate() {
            let tm = &torus_mats[j];
            let lam = Gq::new(Rat::zero(), root.coords[j].clone());
            for r in 0..lie.k_dim {
                for c in 0..lie.k_dim {
                    let mut v = tm.at(r, c).clone();
                    if r == c {
                        v = v.sub(&lam);
                    }
                    stacked.set(j * lie.k_dim + r, c, v);
                }
            }
        }
        let dim = lie.k_dim - stacked.rank();
        if dim == 0 {
            return Err(fail("k-root", format!("no eigenvector for k-root {root}")));
        }
        k_total += dim;
    }
    if k_total + g.torus.len() != lie.k_dim {
        return Err(fail(
            "k-root-count",
            format!("k root spaces ({k_total}) + torus != dim k ({})", lie.k_dim),
        ));
    }
    Ok(())
}

fn validate_parabolics(g: &GroupDatum) -> Result<()> {
    let lie = &g.lie;
    for p in &g.parabolics {
        if p.a_dim != p.a_basis.len() || p.a_dim != p.a_space.dim() {
            return Err(fail("parabolic", format!("{}: split-rank bookkeeping", p.label)));
        }
        // a_basis inside s and commuting
        for v in &p.a_basis {
            for i in 0..lie.k_dim {
                if !v[i].is_zero() {
                    return Err(fail("parabolic", format!("{}: a not inside s", p.label)));
                }
            }
        }
        if p.a_dim > 0 {
            let dual = g.split_dual_gram(&p.a_basis);
            if dual != p.a_space.gram {
                return Err(fail(
                    "parabolic",
                    format!("{}: a_space gram differs from (B|a)^-1", p.label),
                ));
            }
        }
        // t a torus inside k (not necessarily inside the chosen torus of K:
        // the compact Cartan of a Levi may sit diagonally); dual gram stored
        for &i in &p.t_basis {
            if i >= lie.k_dim {
                return Err(fail(
                    "parabolic",
                    format!("{}: t-basis index {i} is not in k", p.label),
                ));
            }
            for &j in &p.t_basis {
                if !lie.bracket_of(i, j).is_empty() {
                    return Err(fail(
                        "parabolic",
                        format!("{}: t-basis does not commute at ({i},{j})", p.label),
                    ));
                }
            }
        }
        if p.t_space.dim() != p.t_basis.len() {
            return Err(fail("parabolic", format!("{}: t-space rank", p.label)));
        }
        if !p.t_basis.is_empty() {
            let m = p.t_basis.len();
            let tg = Mat::from_fn(m, m, |i, j| {
                -lie.b_gram.at(p.t_basis[i], p.t_basis[j]).clone()
            });
            let want = tg.inverse().map_err(|_| fail("parabolic", "degenerate t form".into()))?;
            if want != p.t_space.gram {
                return Err(fail(
                    "parabolic",
                    format!("{}: t gram differs from (-B|t)^-1", p.label),
                ));
            }
        }
        // intertwining orders: |W| = |W'| * 2^r and essential <=> W' trivial;
        // essential classes must satisfy r = dim a_P - dim a_max
        let check_orders = |w: u64, wp: u64, r: u32, label: &str| -> Result<()> {
            if w != wp << r {
                return Err(fail(
                    "intertwining-orders",
                    format!("{label}: |W| = {w} != |W'| * 2^r = {}", wp << r),
                ));
            }
            if wp == 1 && (r as usize) != p.a_dim - g.a_max_dim {
                return Err(fail(
                    "r-group-rank",
                    format!("{label}: essential class with r = {r}, expected {}", p.a_dim - g.a_max_dim),
                ));
            }
            Ok(())
        };
        match &p.family {
            SigmaFamily::GroupDs => {
                if p.t_basis.len() != g.torus.len() {
                    return Err(fail("parabolic", "G-family needs the full torus".into()));
                }
                if g.a_max_dim != 0 {
                    return Err(fail(
                        "parabolic",
                        "discrete series of G require a_max = 0".into(),
                    ));
                }
                check_orders(1, 1, 0, &format!("{}: DS", p.label))?;
            }
            SigmaFamily::FiniteChars { chars } => {
                for c in chars {
                    if c.parities.len() != g.k_space.dim() {
                        return Err(fail("parabolic", format!("{}: parity arity", c.name)));
                    }
                    check_orders(c.w_order, c.w_prime_order, c.r_rank, &c.name)?;
                }
            }
            SigmaFamily::Sl2PlusMinus { dvec } => {
                if dvec.len() != g.k_space.dim() {
                    return Err(fail("parabolic", format!("{}: dvec arity", p.label)));
                }
                check_orders(2, 1, 1, &format!("{}: even k", p.label))?;
                check_orders(2, 2, 0, &format!("{}: odd k", p.label))?;
            }
            SigmaFamily::Z2Sl2 { sl2_coord, parity_coord } => {
                if *sl2_coord >= g.k_space.dim() || *parity_coord >= g.k_space.dim() {
                    return Err(fail("parabolic", format!("{}: coordinate indices", p.label)));
                }
                check_orders(2, 1, 1, &format!("{}: l=0", p.label))?;
                check_orders(2, 2, 0, &format!("{}: l=1", p.label))?;
            }
            SigmaFamily::TorusChars => {
                if p.t_basis.len() != 1 {
                    return Err(fail("parabolic", "torus character family needs rank-1 t".into()));
                }
                check_orders(1, 1, 0, &format!("{}: j != 0", p.label))?;
                check_orders(2, 2, 0, &format!("{}: j = 0", p.label))?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// JSON catalog files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SpaceFile {
    tag: String,
    gram: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GRootFile {
    t_part: Vec<String>,
    a_part: Vec<String>,
    compact: bool,
}

#[derive(Serialize, Deserialize)]
struct FiniteCharFile {
    name: String,
    parities: Vec<u8>,
    w_order: u64,
    w_prime_order: u64,
    r_rank: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum SigmaFamilyFile {
    GroupDs,
    FiniteChars { chars: Vec<FiniteCharFile> },
    Sl2PlusMinus { dvec: Vec<String> },
    Z2Sl2 { sl2_coord: usize, parity_coord: usize },
    TorusChars,
}

#[derive(Serialize, Deserialize)]
struct ParabolicFile {
    label: String,
    a_basis: Vec<Vec<String>>,
    a_space: SpaceFile,
    t_basis: Vec<usize>,
    t_space: SpaceFile,
    family: SigmaFamilyFile,
}

/// Version-tagged JSON mirror of `GroupDatum`; all numbers are "p/q" strings.
#[derive(Serialize, Deserialize)]
pub struct GroupFile {
    pub format: String,
    name: String,
    description: String,
    basis_names: Vec<String>,
    k_dim: usize,
    bracket: Vec<Vec<Vec<(usize, String)>>>,
    b_gram: Vec<Vec<String>>,
    dim_gk: usize,
    a_max_dim: usize,
    torus: Vec<usize>,
    k_space: SpaceFile,
    k_simple_roots: Vec<Vec<String>>,
    a_basis: Vec<Vec<String>>,
    g_roots: Vec<GRootFile>,
    genuine_shift: Vec<String>,
    k_model: KIrrepModel,
    parabolics: Vec<ParabolicFile>,
}

pub const CATALOG_FORMAT: &str = "tdual-catalog-v1";

fn space_to_file(s: &WeightSpace) -> SpaceFile {
    SpaceFile { tag: s.tag.0.clone(), gram: crate::weight::mat_to_strings(&s.gram) }
}

fn space_from_file(f: &SpaceFile, path: &str) -> Result<WeightSpace> {
    let gram = crate::weight::mat_from_strings(&f.gram)
        .map_err(|e| Error::Schema { path: format!("{path}.gram"), detail: e.to_string() })?;
    Ok(WeightSpace::new(f.tag.clone(), gram))
}

fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn rats_from_strings(v: &[String], path: &str) -> Result<Vec<Rat>> {
    v.iter()
        .map(|s| parse_rat(s).map_err(|e| Error::Schema { path: path.into(), detail: e.to_string() }))
        .collect()
}

pub fn to_file(g: &GroupDatum) -> GroupFile {
    GroupFile {
        format: CATALOG_FORMAT.into(),
        name: g.name.clone(),
        description: g.description.clone(),
        basis_names: g.basis_names.clone(),
        k_dim: g.lie.k_dim,
        bracket: g
            .lie
            .bracket
            .iter()
            .map(|row| {
                row.iter()
                    .map(|terms| terms.iter().map(|(t, c)| (*t, fmt_rat(c))).collect())
                    .collect()
            })
            .collect(),
        b_gram: crate::weight::mat_to_strings(&g.lie.b_gram),
        dim_gk: g.dim_gk,
        a_max_dim: g.a_max_dim,
        torus: g.torus.clone(),
        k_space: space_to_file(&g.k_space),
        k_simple_roots: g.k_roots.simple.iter().map(|w| rats_to_strings(&w.coords)).collect(),
        a_basis: g.fundamental.a_basis.iter().map(|v| rats_to_strings(v)).collect(),
        g_roots: g
            .fundamental
            .roots
            .iter()
            .map(|r| GRootFile {
                t_part: rats_to_strings(&r.t_part),
                a_part: rats_to_strings(&r.a_part),
                compact: r.compact,
            })
            .collect(),
        genuine_shift: rats_to_strings(&g.genuine_shift.coords),
        k_model: g.k_model.clone(),
        parabolics: g
            .parabolics
            .iter()
            .map(|p| ParabolicFile {
                label: p.label.clone(),
                a_basis: p.a_basis.iter().map(|v| rats_to_strings(v)).collect(),
                a_space: space_to_file(&p.a_space),
                t_basis: p.t_basis.clone(),
                t_space: space_to_file(&p.t_space),
                family: match &p.family {
                    SigmaFamily::GroupDs => SigmaFamilyFile::GroupDs,
                    SigmaFamily::FiniteChars { chars } => SigmaFamilyFile::FiniteChars {
                        chars: chars
                            .iter()
                            .map(|c| FiniteCharFile {
                                name: c.name.clone(),
                                parities: c.parities.clone(),
                                w_order: c.w_order,
                                w_prime_order: c.w_prime_order,
                                r_rank: c.r_rank,
                            })
                            .collect(),
                    },
                    SigmaFamily::Sl2PlusMinus { dvec } => {
                        SigmaFamilyFile::Sl2PlusMinus { dvec: rats_to_strings(dvec) }
                    }
                    SigmaFamily::Z2Sl2 { sl2_coord, parity_coord } => SigmaFamilyFile::Z2Sl2 {
                        sl2_coord: *sl2_coord,
                        parity_coord: *parity_coord,
                    },
                    SigmaFamily::TorusChars => SigmaFamilyFile::TorusChars,
                },
            })
            .collect(),
    }
}

pub fn from_file(f: &GroupFile) -> Result<GroupDatum> {
    if f.format != CATALOG_FORMAT {
        return Err(Error::Schema {
            path: "format".into(),
            detail: format!("expected {CATALOG_FORMAT}, found {}", f.format),
        });
    }
    let dim = f.basis_names.len();
    let mut bracket = vec![vec![vec![]; dim]; dim];
    for (i, row) in f.bracket.iter().enumerate() {
        for (j, terms) in row.iter().enumerate() {
            bracket[i][j] = terms
                .iter()
                .map(|(t, c)| {
                    parse_rat(c)
                        .map(|r| (*t, r))
                        .map_err(|e| Error::Schema {
                            path: format!("bracket[{i}][{j}]"),
                            detail: e.to_string(),
                        })
                })
                .collect::<Result<Vec<_>>>()?;
        }
    }
    let b_gram = crate::weight::mat_from_strings(&f.b_gram)
        .map_err(|e| Error::Schema { path: "b_gram".into(), detail: e.to_string() })?;
    let lie = LieAlgebraData { dim, k_dim: f.k_dim, bracket, b_gram };
    let k_space = space_from_file(&f.k_space, "k_space")?;
    let k_simple: Vec<Weight> = f
        .k_simple_roots
        .iter()
        .map(|v| Ok(k_space.weight(rats_from_strings(v, "k_simple_roots")?)))
        .collect::<Result<_>>()?;
    let k_roots = if k_simple.is_empty() {
        RootSystem::empty(k_space.clone())
    } else {
        RootSystem::from_simple_roots(k_space.clone(), k_simple)?
    };
    let fundamental = FundamentalCartan {
        a_basis: f
            .a_basis
            .iter()
            .map(|v| rats_from_strings(v, "a_basis"))
            .collect::<Result<_>>()?,
        roots: f
            .g_roots
            .iter()
            .map(|r| {
                Ok(GRoot {
                    t_part: rats_from_strings(&r.t_part, "g_roots.t_part")?,
                    a_part: rats_from_strings(&r.a_part, "g_roots.a_part")?,
                    compact: r.compact,
                })
            })
            .collect::<Result<_>>()?,
    };
    let genuine_shift = k_space.weight(rats_from_strings(&f.genuine_shift, "genuine_shift")?);
    let parabolics = f
        .parabolics
        .iter()
        .map(|p| {
            Ok(ParabolicDatum {
                label: p.label.clone(),
                a_dim: p.a_basis.len(),
                a_basis: p
                    .a_basis
                    .iter()
                    .map(|v| rats_from_strings(v, "parabolic.a_basis"))
                    .collect::<Result<_>>()?,
                a_space: space_from_file(&p.a_space, "parabolic.a_space")?,
                t_basis: p.t_basis.clone(),
                t_space: space_from_file(&p.t_space, "parabolic.t_space")?,
                family: match &p.family {
                    SigmaFamilyFile::GroupDs => SigmaFamily::GroupDs,
                    SigmaFamilyFile::FiniteChars { chars } => SigmaFamily::FiniteChars {
                        chars: chars
                            .iter()
                            .map(|c| FiniteChar {
                                name: c.name.clone(),
                                parities: c.parities.clone(),
                                w_order: c.w_order,
                                w_prime_order: c.w_prime_order,
                                r_rank: c.r_rank,
                            })
                            .collect(),
                    },
                    SigmaFamilyFile::Sl2PlusMinus { dvec } => SigmaFamily::Sl2PlusMinus {
                        dvec: rats_from_strings(dvec, "parabolic.dvec")?,
                    },
                    SigmaFamilyFile::Z2Sl2 { sl2_coord, parity_coord } => SigmaFamily::Z2Sl2 {
                        sl2_coord: *sl2_coord,
                        parity_coord: *parity_coord,
                    },
                    SigmaFamilyFile::TorusChars => SigmaFamily::TorusChars,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let g = GroupDatum {
        name: f.name.clone(),
        description: f.description.clone(),
        basis_names: f.basis_names.clone(),
        lie,
        dim_gk: f.dim_gk,
        a_max_dim: f.a_max_dim,
        torus: f.torus.clone(),
        k_space,
        k_roots,
        fundamental,
        genuine_shift,
        k_model: f.k_model.clone(),
        parabolics,
    };
    validate(&g)?;
    Ok(g)
}

/// Load one group from a JSON catalog file (single group or array of groups).
pub fn load_group_from_path(path: &std::path::Path, name: &str) -> Result<GroupDatum> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Schema { path: path.display().to_string(), detail: e.to_string() })?;
    let entries: Vec<GroupFile> = if value.is_array() {
        serde_json::from_value(value)
            .map_err(|e| Error::Schema { path: path.display().to_string(), detail: e.to_string() })?
    } else {
        vec![serde_json::from_value(value).map_err(|e| Error::Schema {
            path: path.display().to_string(),
            detail: e.to_string(),
        })?]
    };
    for f in &entries {
        if f.name == name {
            return from_file(f);
        }
    }
    Err(Error::UnknownGroup(format!("{name} (not present in {})", path.display())))
}

/// Resolve a group by name against an optional external catalog, falling back
/// to the built-ins.
pub fn resolve_group(name: &str, catalog: Option<&std::path::Path>) -> Result<GroupDatum> {
    match catalog {
        Some(p) => load_group_from_path(p, name),
        None => load_builtin(name),
    }
}

/// Per-descriptor irreducible K-representation matrices, exact.
pub fn k_irrep_matrices(g: &GroupDatum, mu: &Weight) -> Result<Vec<Mat<Gq>>> {
    if mu.tag != g.k_space.tag {
        return Err(Error::SpaceMismatch {
            expected: g.k_space.tag.0.clone(),
            got: mu.tag.0.clone(),
        });
    }
    match g.k_model {
        KIrrepModel::Torus => {
            let mats = mu
                .coords
                .iter()
                .map(|c| {
                    let mut m = Mat::zeros(1, 1);
                    m.set(0, 0, Gq::new(Rat::zero(), c.clone()));
                    m
                })
                .collect();
            Ok(mats)
        }
        KIrrepModel::Su2Standard => {
            let m = mu.coords[0].clone();
            if !m.is_integer() || m < Rat::zero() {
                return Err(Error::NotDominant(format!("su(2) highest weight {mu}")));
            }
            let n: i64 = m.to_integer().try_into().unwrap();
            let (h, e, f) = sl2_irrep_mats(n);
            // basis (iH, E - F, i(E+F))
            Ok(vec![
                h.scale(&Gq::i()),
                e.sub(&f),
                e.add(&f).scale(&Gq::i()),
            ])
        }
        KIrrepModel::U2Standard => {
            let a = mu.coords[0].clone();
            let b = mu.coords[1].clone();
            let diff = a.clone() - b.clone();
            if !diff.is_integer() || diff < Rat::zero() {
                return Err(Error::NotDominant(format!("u(2) highest weight {mu}")));
            }
            let n: i64 = diff.to_integer().try_into().unwrap();
            let (h, e, f) = sl2_irrep_mats(n);
            let dim = (n + 1) as usize;
            let central = a + b; // i(a+b) on the determinant factor
            let id = Mat::<Gq>::identity(dim);
            let half_i = Gq::new(Rat::zero(), rq(1, 2));
            // i e11 = i(H' + (a+b))/2, i e22 = i((a+b) - H')/2
            let k1 = h.add(&id.scale(&Gq::from_rat(central.clone()))).scale(&half_i);
            let k2 = id.scale(&Gq::from_rat(central)).sub(&h).scale(&half_i);
            let k3 = e.sub(&f);
            let k4 = e.add(&f).scale(&Gq::i());
            Ok(vec![k1, k2, k3, k4])
        }
    }
}

/// Standard irreducible sl2 matrices of highest weight n on v_0..v_n:
/// H v_t = (n - 2t) v_t, E v_t = t(n - t + 1) v_{t-1}, F v_t = v_{t+1}.
fn sl2_irrep_mats(n: i64) -> (Mat<Gq>, Mat<Gq>, Mat<Gq>) {
    let dim = (n + 1) as usize;
    let mut h = Mat::zeros(dim, dim);
    let mut e = Mat::zeros(dim, dim);
    let mut f = Mat::zeros(dim, dim);
    for t in 0..dim {
        let ti = t as i64;
        h.set(t, t, Gq::from_rat(rint(n - 2 * ti)));
        if t + 1 < dim {
            f.set(t + 1, t, Gq::one());
            e.set(t, t + 1, Gq::from_rat(rint((ti + 1) * (n - ti))));
        }
    }
    (h, e, f)
}

/// Verify that the model matrices represent the structure constants of k.
pub fn validate_k_model(g: &GroupDatum, mu: &Weight) -> Result<()> {
    let mats = k_irrep_matrices(g, mu)?;
    let kd = g.lie.k_dim;
    if mats.len() != kd {
        return Err(fail("k-model", "one matrix per k-basis vector required".into()));
    }
    for i in 0..kd {
        for j in 0..kd {
            let mut want = Mat::zeros(mats[0].nrows, mats[0].ncols);
            for (t, c) in g.lie.bracket_of(i, j) {
                want = want.add(&mats[*t].scale(&Gq::from_rat(c.clone())));
            }
            let got = mats[i].commutator(&mats[j]);
            if got != want {
                return Err(fail(
                    "k-model",
                    format!("[rho(k{i}), rho(k{j})] != rho([k{i},k{j}]) at mu = {mu}"),
                ));
            }
        }
    }
    // torus eigenvalue check: rho(T_j) acts on the highest weight space with
    // eigenvalue i * mu_j; verified through the trace pattern
    for (j, &ti) in g.torus.iter().enumerate() {
        let tr = mats[ti].trace();
        // trace = i * (sum of weights); compare against the weight system
        let irrep = crate::reps::weight_multiplicities(&g.k_roots, mu)?;
        let mut want = Rat::zero();
        for (w, m) in &irrep.weight_multiplicities {
            want += w.coords[j].clone() * rint(*m as i64);
        }
        if tr != Gq::new(Rat::zero(), want.clone()) {
            return Err(fail(
                "k-model",
                format!("trace of rho(T{j}) = {tr} differs from weight sum i*{}", fmt_rat(&want)),
            ));
        }
    }
    Ok(())
}

/// All dominant genuine highest weights with ||mu + rho_k||^2 <= bound.
pub fn genuine_dominant_in_ball(g: &GroupDatum, bound: &Rat) -> Result<Vec<Weight>> {
    if *bound < Rat::zero() {
        return Ok(vec![]);
    }
    let rho = g.rho_k();
    let r = g.k_space.dim();
    // coordinate box: gram is diagonal-dominant rational; use per-axis bound
    // from the diagonal after shifting by rho and the shift
    let mut out = Vec::new();
    let mut ranges: Vec<(i64, i64)> = Vec::new();
    for j in 0..r {
        let gjj = g.k_space.gram.at(j, j).clone();
        // |x_j| <= sqrt(bound / gjj) + |rho_j| + 1 crude bound
        let mut hi = 1i64;
        while rint(hi) * rint(hi) * gjj.clone() <= bound.clone() + rint(4) {
            hi += 1;
        }
        let slack = 2 + hi;
        ranges.push((-slack, slack));
    }
    let mut idx = vec![0i64; r];
    fn scan(
        g: &GroupDatum,
        ranges: &[(i64, i64)],
        j: usize,
        idx: &mut Vec<i64>,
        rho: &Weight,
        bound: &Rat,
        out: &mut Vec<Weight>,
    ) -> Result<()> {
        if j == ranges.len() {
            let coords: Vec<Rat> = idx
                .iter()
                .enumerate()
                .map(|(t, n)| rint(*n) + g.genuine_shift.coords[t].clone())
                .collect();
            let mu = g.k_space.weight(coords);
            if g.k_roots.is_dominant(&mu)? {
                let n = g.k_space.norm_sq(&mu.add(rho))?;
                if n <= *bound {
                    out.push(mu);
                }
            }
            return Ok(());
        }
        for v in ranges[j].0..=ranges[j].1 {
            idx[j] = v;
            scan(g, ranges, j + 1, idx, rho, bound, out)?;
        }
        Ok(())
    }
    scan(g, &ranges, 0, &mut idx, &rho, bound, &mut out)?;
    out.sort();
    Ok(out)
}

/// Deterministic catalog summary (used by `catalog show`).
pub fn summary(g: &GroupDatum) -> String {
    let mut s = String::new();
    s.push_str(&format!("group {}\n", g.name));
    s.push_str(&format!("  {}\n", g.description));
    s.push_str(&format!(
        "  dim g = {}, dim k = {}, dim G/K = {}, a_max = {}\n",
        g.lie.dim,
        g.lie.k_dim,
        g.dim_gk,
        g.a_max_dim
    ));
    s.push_str(&format!(
        "  compact torus rank {}, |k-roots| = {}, ||rho_K||^2 = {}, ||rho_G||^2 = {}\n",
        g.torus.len(),
        g.k_roots.all_roots().len(),
        fmt_rat(&g.rho_k_sq()),
        fmt_rat(&g.rho_g_sq())
    ));
    s.push_str(&format!("  genuine lattice shift {}\n", g.genuine_shift));
    for p in &g.parabolics {
        let fam = match &p.family {
            SigmaFamily::GroupDs => "discrete series of G".to_string(),
            SigmaFamily::FiniteChars { chars } => {
                format!("{} characters of finite M", chars.len())
            }
            SigmaFamily::Sl2PlusMinus { .. } => "discrete series of SL±(2,R)".to_string(),
            SigmaFamily::Z2Sl2 { .. } => "discrete series of Z2 x SL(2,R)".to_string(),
            SigmaFamily::TorusChars => "characters of U(1)".to_string(),
        };
        s.push_str(&format!("  parabolic {:<5} dim a_P = {}  sigma: {}\n", p.label, p.a_dim, fam));
    }
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BTreeMapPlaceHolder(pub BTreeMap<String, String>);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_NAMES {
            let g = load_builtin(name).unwrap();
            assert_eq!(g.name, name);
        }
    }

    #[test]
    fn sl2r_shape() {
        let g = sl2r().unwrap();
        assert_eq!(g.lie.dim, 3);
        assert_eq!(g.dim_gk, 2);
        assert_eq!(g.a_max_dim, 0);
        assert_eq!(g.compute_a_max().unwrap(), 0);
        assert_eq!(g.rho_k_sq(), Rat::zero());
        assert_eq!(g.rho_g_sq(), rint(1));
    }

    #[test]
    fn sp4r_shape() {
        let g = sp4r().unwrap();
        assert_eq!(g.lie.dim, 10);
        assert_eq!(g.lie.k_dim, 4);
        assert_eq!(g.dim_gk, 6);
        assert_eq!(g.a_max_dim, 0);
        assert_eq!(g.rho_k_sq(), rq(1, 2));
        assert_eq!(g.rho_g_sq(), rint(5));
        // K is U(2): k-roots = +- (e1 - e2)
        assert_eq!(g.k_roots.all_roots().len(), 2);
    }

    #[test]
    fn sl2c_shape() {
        let g = sl2c().unwrap();
        assert_eq!(g.lie.dim, 6);
        assert_eq!(g.lie.k_dim, 3);
        assert_eq!(g.dim_gk, 3);
        assert_eq!(g.a_max_dim, 1);
        assert_eq!(g.compute_a_max().unwrap(), 1);
        assert_eq!(g.rho_k_sq(), rint(1));
        assert_eq!(g.rho_g_sq(), rint(4));
    }

    #[test]
    fn a_max_additive_on_products() {
        // direct sum of the SL2R and SL2C structures: a_max = 0 + 1
        let g1 = sl2r().unwrap();
        let g2 = sl2c().unwrap();
        let (d1, k1) = (g1.lie.dim, g1.lie.k_dim);
        let (d2, k2) = (g2.lie.dim, g2.lie.k_dim);
        let dim = d1 + d2;
        // product basis order: k1-block, k2-block, s1-block, s2-block
        let map1 = |i: usize| if i < k1 { i } else { k1 + k2 + (i - k1) };
        let map2 = |i: usize| if i < k2 { k1 + i } else { k1 + k2 + (d1 - k1) + (i - k2) };
        let mut bracket = vec![vec![vec![]; dim]; dim];
        for i in 0..d1 {
            for j in 0..d1 {
                bracket[map1(i)][map1(j)] =
                    g1.lie.bracket_of(i, j).iter().map(|(t, c)| (map1(*t), c.clone())).collect();
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                bracket[map2(i)][map2(j)] =
                    g2.lie.bracket_of(i, j).iter().map(|(t, c)| (map2(*t), c.clone())).collect();
            }
        }
        let mut b = Mat::zeros(dim, dim);
        for i in 0..d1 {
            for j in 0..d1 {
                b.set(map1(i), map1(j), g1.lie.b_gram.at(i, j).clone());
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                b.set(map2(i), map2(j), g2.lie.b_gram.at(i, j).clone());
            }
        }
        let lie = LieAlgebraData { dim, k_dim: k1 + k2, bracket, b_gram: b };
        let torus: Vec<usize> = g1
            .torus
            .iter()
            .map(|&i| map1(i))
            .chain(g2.torus.iter().map(|&i| map2(i)))
            .collect();
        // kernel of the product torus action on s
        let s = lie.s_dim();
        let mats: Vec<Mat<Rat>> = torus.iter().map(|&i| lie.ad_on_s(i).unwrap()).collect();
        let mut stacked = Mat::zeros(s * mats.len(), s);
        for (bi, m) in mats.iter().enumerate() {
            for r in 0..s {
                for c in 0..s {
                    stacked.set(bi * s + r, c, m.at(r, c).clone());
                }
            }
        }
        assert_eq!(s - stacked.rank(), 0 + 1);
    }

    #[test]
    fn corrupted_bracket_is_rejected() {
        let mut g = sl2r().unwrap();
        // break Jacobi/antisymmetry: set [Z0, X1] = X1
        g.lie.bracket[0][1] = vec![(1, Rat::one())];
        let err = validate(&g).unwrap_err();
        match err {
            Error::CatalogInvalid { identity, .. } => {
                assert!(identity == "antisymmetry" || identity == "jacobi");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn json_round_trip() {
        for name in BUILTIN_NAMES {
            let g = load_builtin(name).unwrap();
            let file = to_file(&g);
            let text = serde_json::to_string_pretty(&file).unwrap();
            let parsed: GroupFile = serde_json::from_str(&text).unwrap();
            let g2 = from_file(&parsed).unwrap();
            assert_eq!(g2.name, g.name);
            assert_eq!(g2.lie.b_gram, g.lie.b_gram);
            assert_eq!(g2.parabolics.len(), g.parabolics.len());
        }
    }

    #[test]
    fn k_model_matrices_represent_brackets() {
        let g = sp4r().unwrap();
        for (a, b) in [(3i64, 1i64), (1, -3), (5, 5)] {
            let mu = g.k_space.weight(vec![rint(a) - rq(1, 2), rint(b) + rq(1, 2)]);
            if g.k_roots.is_dominant(&mu).unwrap() {
                validate_k_model(&g, &mu).unwrap();
            }
        }
        let g = sl2c().unwrap();
        for m in 0..4i64 {
            validate_k_model(&g, &g.k_space.weight_i64(&[m])).unwrap();
        }
        let g = sl2r().unwrap();
        validate_k_model(&g, &g.k_space.weight_i64(&[3])).unwrap();
    }

    #[test]
    fn descriptor_lattice_scan() {
        let g = sp4r().unwrap();
        let mus = genuine_dominant_in_ball(&g, &rint(8)).unwrap();
        // mu + rho_K = (m, n), m > n, norm m^2 + n^2 <= 8
        let rho = g.rho_k();
        for mu in &mus {
            let pos = mu.add(&rho);
            assert!(pos.coords[0] > pos.coords[1]);
            assert!(g.k_space.norm_sq(&pos).unwrap() <= rint(8));
            assert!(pos.coords.iter().all(|c| c.is_integer()));
        }
        // positions within the ball: (m,n) with m>n, m^2+n^2 <= 8
        let count = mus.len();
        let mut expect = 0;
        for m in -3i64..=3 {
            for n in -3i64..=3 {
                if m > n && m * m + n * n <= 8 {
                    expect += 1;
                }
            }
        }
        assert_eq!(count, expect);
    }
}

#[cfg(test)]
mod square_tests {
    use super::*;
    use crate::pbw::verify_dirac_square;

    #[test]
    fn dirac_square_all_builtins() {
        for name in BUILTIN_NAMES {
            let g = load_builtin(name).unwrap();
            let rep = verify_dirac_square(&g.lie, &g.rho_k_sq(), &g.rho_g_sq(), false, 6).unwrap();
            assert!(rep.equal, "{name}: difference {:?}", rep.difference);
            let bad = verify_dirac_square(&g.lie, &g.rho_k_sq(), &g.rho_g_sq(), true, 6).unwrap();
            assert!(!bad.equal, "{name}: sabotaged alpha still passes");
        }
    }
}

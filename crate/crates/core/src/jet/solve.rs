//! Solution spaces, degree bounds, characteristic points and jet determination.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{rat, ExactMatrix, GaussianRational, Monomial, MultiPoly, SparseMatrix, Var};
use crate::model::QuadricModel;

use super::direct::{assemble_system_direct, PdSystem};
use super::general::assemble_system_general;
use super::identity::{automorphism_defect, solves_basic_identity};
use super::maps::HolMapPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Direct,
    General,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Direct => "direct",
            Route::General => "general",
        })
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Route::Direct),
            "general" => Ok(Route::General),
            other => Err(Error::Usage(format!("unknown route {other:?}, expected direct or general"))),
        }
    }
}

/// Largest `w`-degree of each `z`-graded piece, over a pair or a whole basis.
/// `None` means the piece is identically zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockDegrees {
    pub f0: Option<usize>,
    pub f1: Option<usize>,
    pub f2: Option<usize>,
    pub g0: Option<usize>,
    pub g1: Option<usize>,
    pub f_max_z_degree: Option<usize>,
    pub g_max_z_degree: Option<usize>,
    pub max_weight: Option<usize>,
    pub max_total_degree: Option<usize>,
}

impl BlockDegrees {
    pub fn of_pair(pair: &HolMapPair) -> Self {
        let env = pair.env();
        let w_deg = |ps: &[MultiPoly], k: usize| {
            ps.iter()
                .filter_map(|p| p.filter(|m| m.z_degree(&env) == k).max_by(|m| m.w_degree(&env)))
                .max()
        };
        let z_deg = |ps: &[MultiPoly]| ps.iter().filter_map(|p| p.max_by(|m| m.z_degree(&env))).max();
        Self {
            f0: w_deg(&pair.f, 0),
            f1: w_deg(&pair.f, 1),
            f2: w_deg(&pair.f, 2),
            g0: w_deg(&pair.g, 0),
            g1: w_deg(&pair.g, 1),
            f_max_z_degree: z_deg(&pair.f),
            g_max_z_degree: z_deg(&pair.g),
            max_weight: pair.weight(),
            max_total_degree: pair.degree(),
        }
    }

    pub fn merge(&self, o: &Self) -> Self {
        Self {
            f0: self.f0.max(o.f0),
            f1: self.f1.max(o.f1),
            f2: self.f2.max(o.f2),
            g0: self.g0.max(o.g0),
            g1: self.g1.max(o.g1),
            f_max_z_degree: self.f_max_z_degree.max(o.f_max_z_degree),
            g_max_z_degree: self.g_max_z_degree.max(o.g_max_z_degree),
            max_weight: self.max_weight.max(o.max_weight),
            max_total_degree: self.max_total_degree.max(o.max_total_degree),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSpace {
    pub route: Route,
    pub cap: usize,
    pub dimension: usize,
    pub basis: Vec<HolMapPair>,
    pub degrees: BlockDegrees,
}

pub fn solve_jet_system(model: &QuadricModel, cap: usize, route: Route) -> SolutionSpace {
    let basis: Vec<HolMapPair> = match route {
        Route::Direct => {
            let sys = assemble_system_direct(model, cap);
            sys.matrix
                .kernel_basis()
                .into_iter()
                .map(|v| sys.unknown_vector(v).to_pair())
                .collect()
        }
        Route::General => {
            let sys = assemble_system_general(model, cap);
            sys.matrix.kernel_basis().iter().map(|v| sys.to_pair(v)).collect()
        }
    };
    let degrees = basis
        .iter()
        .fold(BlockDegrees::default(), |acc, p| acc.merge(&BlockDegrees::of_pair(p)));
    SolutionSpace {
        route,
        cap,
        dimension: basis.len(),
        basis,
        degrees,
    }
}

/// The degree estimates for nondegenerate models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBoundReport {
    pub f0_at_most_1: bool,
    pub f1_at_most_1: bool,
    pub f2_constant: bool,
    pub g0_at_most_2: bool,
    pub weight_at_most_4: bool,
    pub total_degree_at_most_2: bool,
}

impl DegreeBoundReport {
    pub fn passes(&self) -> bool {
        self.f0_at_most_1
            && self.f1_at_most_1
            && self.f2_constant
            && self.g0_at_most_2
            && self.weight_at_most_4
            && self.total_degree_at_most_2
    }

    pub fn entries(&self) -> [(&'static str, bool); 6] {
        [
            ("deg_u f0 <= 1", self.f0_at_most_1),
            ("deg_u f1 <= 1", self.f1_at_most_1),
            ("deg_u f2 = 0", self.f2_constant),
            ("deg_u g0 <= 2", self.g0_at_most_2),
            ("weight <= 4", self.weight_at_most_4),
            ("total degree <= 2", self.total_degree_at_most_2),
        ]
    }
}

pub fn degree_bounds(space: &SolutionSpace) -> DegreeBoundReport {
    let d = &space.degrees;
    let le = |x: Option<usize>, b: usize| x.is_none_or(|v| v <= b);
    DegreeBoundReport {
        f0_at_most_1: le(d.f0, 1),
        f1_at_most_1: le(d.f1, 1),
        f2_constant: le(d.f2, 0),
        g0_at_most_2: le(d.g0, 2),
        weight_at_most_4: le(d.max_weight, 4),
        total_degree_at_most_2: le(d.max_total_degree, 2),
    }
}

/// Basis elements with `f` of `z`-degree `>= 3` or `g` of `z`-degree `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    pub violations: Vec<(usize, String)>,
}

impl TruncationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn truncation_report(space: &SolutionSpace) -> TruncationReport {
    let mut violations = Vec::new();
    for (k, p) in space.basis.iter().enumerate() {
        let b = BlockDegrees::of_pair(p);
        if let Some(z) = b.f_max_z_degree.filter(|&z| z >= 3) {
            violations.push((k, format!("f has z-degree {z}")));
        }
        if let Some(z) = b.g_max_z_degree.filter(|&z| z >= 2) {
            violations.push((k, format!("g has z-degree {z}")));
        }
    }
    TruncationReport { violations }
}

/// Rows: basis elements; columns: real and imaginary parts of all
/// coefficients of total degree at most 2.
fn two_jet_matrix(space: &SolutionSpace) -> SparseMatrix {
    let mut keys: BTreeMap<(usize, Monomial, bool), usize> = BTreeMap::new();
    let mut rows = Vec::new();
    for p in &space.basis {
        let mut row = Vec::new();
        for (k, c) in p.jet(2).components().enumerate() {
            for (m, v) in c.terms() {
                for (imag, x) in [(false, &v.re), (true, &v.im)] {
                    if !x.is_zero() {
                        let next = keys.len();
                        let col = *keys.entry((k, m.clone(), imag)).or_insert(next);
                        row.push((col, x.clone()));
                    }
                }
            }
        }
        rows.push(row);
    }
    let mut m = SparseMatrix::new(keys.len());
    for r in rows {
        m.push_row(r);
    }
    m
}

/// Dimension of the subspace of solutions with vanishing 2-jet.
pub fn two_jet_kernel_dimension(space: &SolutionSpace) -> usize {
    space.dimension - two_jet_matrix(space).rank()
}

pub fn two_jet_injective(space: &SolutionSpace) -> bool {
    two_jet_kernel_dimension(space) == 0
}

/// Kernel dimension at each cap.
pub fn stabilization(model: &QuadricModel, caps: &[usize], route: Route) -> Vec<(usize, usize)> {
    caps.iter()
        .map(|&c| (c, solve_jet_system(model, c, route).dimension))
        .collect()
}

/// True iff `zeta` is a characteristic point of the operator.
pub fn char_variety_test(model: &QuadricModel, zeta: &[GaussianRational]) -> Result<bool> {
    if zeta.len() != model.d() {
        return Err(Error::DimensionMismatch {
            expected: model.d(),
            got: zeta.len(),
        });
    }
    Ok(PdSystem::build(model, false).is_characteristic(zeta))
}

/// Twenty fixed nonzero symbol vectors: unit vectors and their negatives,
/// other `{-1, 0, 1}` combinations, integer multiples of unit vectors when
/// those run out, and one Gaussian-rational point last.
pub fn nonzero_probes(d: usize) -> Vec<Vec<GaussianRational>> {
    let unit = |k: usize, s: i64| {
        let mut v = vec![GaussianRational::zero(); d];
        v[k] = GaussianRational::int(s, 0);
        v
    };
    let mut out: Vec<Vec<GaussianRational>> = Vec::new();
    out.extend((0..d).map(|k| unit(k, 1)));
    out.extend((0..d).map(|k| unit(k, -1)));
    let mut signs: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..d {
        signs = signs
            .into_iter()
            .flat_map(|p| {
                [-1i64, 0, 1].into_iter().map(move |s| {
                    let mut q = p.clone();
                    q.push(s);
                    q
                })
            })
            .collect();
    }
    for s in signs.into_iter().filter(|s| s.iter().filter(|&&x| x != 0).count() >= 2) {
        out.push(s.into_iter().map(|x| GaussianRational::int(x, 0)).collect());
    }
    let mut scale = 2;
    while out.len() < 19 {
        for k in 0..d {
            out.push(unit(k, scale));
            out.push(unit(k, -scale));
        }
        scale += 1;
    }
    out.truncate(19);
    out.push(
        (0..d)
            .map(|k| GaussianRational::new(rat(1, k as i64 + 2), rat(k as i64 + 1, 3)))
            .collect(),
    );
    out
}

/// Linear parts: `z`-coefficients of `F` (n x n) and `w`-coefficients of `G` (d x d).
fn linear_parts(pair: &HolMapPair) -> (ExactMatrix, ExactMatrix) {
    let env = pair.env();
    let coeff = |p: &MultiPoly, v: Var| p.coeff(&Monomial::var(&env, v)).cloned().unwrap_or_else(GaussianRational::zero);
    let mut a = ExactMatrix::zeros(env.n, env.n);
    for (r, p) in pair.f.iter().enumerate() {
        for c in 0..env.n {
            a.set(r, c, coeff(p, Var::Z(c)));
        }
    }
    let mut b = ExactMatrix::zeros(env.d, env.d);
    for (r, p) in pair.g.iter().enumerate() {
        for c in 0..env.d {
            b.set(r, c, coeff(p, Var::W(c)));
        }
    }
    (a, b)
}

/// Polynomial map fixing 0 with invertible linear part that maps the model into itself.
pub fn is_polynomial_automorphism(pair: &HolMapPair, model: &QuadricModel) -> bool {
    let env = pair.env();
    let fixes_origin = pair.components().all(|p| p.coeff(&Monomial::one(&env)).is_none());
    let (a, b) = linear_parts(pair);
    fixes_origin
        && a.is_invertible()
        && b.is_invertible()
        && automorphism_defect(pair, model).iter().all(|p| p.is_zero())
}

/// Whether two maps of the same kind (both polynomial automorphisms or both
/// infinitesimal solutions) that agree to second order at 0 coincide.
/// Returns `true` when the 2-jets differ.
pub fn jet_determination_check(model: &QuadricModel, pair1: &HolMapPair, pair2: &HolMapPair, cap: usize) -> Result<bool> {
    for p in [pair1, pair2] {
        if p.env() != model.env() {
            return Err(Error::EnvMismatch(format!("{:?} vs {:?}", p.env(), model.env())));
        }
        if let Some(degree) = p.degree().filter(|&deg| deg > cap) {
            return Err(Error::CapTooSmall { cap, degree });
        }
    }
    let infinitesimal = solves_basic_identity(pair1, model) && solves_basic_identity(pair2, model);
    let automorphisms = is_polynomial_automorphism(pair1, model) && is_polynomial_automorphism(pair2, model);
    if !infinitesimal && !automorphisms {
        return Err(Error::NotAutomorphism(
            "both maps must be infinitesimal solutions or both polynomial automorphisms".into(),
        ));
    }
    if pair1.jet(2) != pair2.jet(2) {
        return Ok(true);
    }
    let diff = pair1.sub(pair2);
    if infinitesimal {
        let sys = assemble_system_general(model, cap);
        let coords = sys.coordinates(&diff).expect("difference fits under the cap");
        debug_assert!(sys.matrix.annihilates(&coords));
    }
    Ok(diff.is_zero())
}

//! Nondegeneracy conditions for quadric models and their witnesses.

use num_traits::Zero;

use crate::exact::{ExactMatrix, GaussianRational, Rational};
use crate::model::{is_zero_vector, unit_vector, QuadricModel};
use crate::relations::{analyze_sesqui_surjectivity, SesquiStatus};

/// Outcome of the invertible-combination test with the grid point found.
#[derive(Clone, Debug, PartialEq)]
pub struct TumanovResult {
    pub holds: bool,
    pub witness: Option<Vec<i64>>,
}

/// Evidence that a model is degenerate. At least one field is set.
#[derive(Clone, Debug, PartialEq)]
pub struct DegeneracyWitness {
    /// Real `lambda`, not all zero, with `sum lambda_j A_j = 0`.
    pub lambda: Option<Vec<Rational>>,
    /// Nonzero `z` with `A_j z = 0` for all `j`.
    pub kernel_vector: Option<Vec<GaussianRational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub n: usize,
    pub d: usize,
    pub condition_a: bool,
    pub condition_b: bool,
    pub tumanov: TumanovResult,
    pub cone_generating: bool,
    pub finite_type_two: bool,
    pub sesqui_status: SesquiStatus,
    pub beloshapka_nondegenerate: bool,
    /// Only ever `Some(true)`, implied by condition (b); never decided on its own.
    pub holomorphically_nondegenerate: Option<bool>,
    pub witnesses: Option<DegeneracyWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub relation_degree: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { relation_degree: 3 }
    }
}

fn real(r: Rational) -> GaussianRational {
    GaussianRational::from_real(r)
}

/// `d x n^2` real coordinates: diagonal entries, then re/im of the strictly
/// upper entries.
pub fn realified_coefficients(model: &QuadricModel) -> ExactMatrix {
    let n = model.n();
    let mut m = ExactMatrix::zeros(model.d(), n * n);
    for (j, a) in model.matrices().iter().enumerate() {
        let mut col = 0;
        for k in 0..n {
            m.set(j, col, real(a.get(k, k).re.clone()));
            col += 1;
        }
        for r in 0..n {
            for c in r + 1..n {
                let e = a.get(r, c);
                m.set(j, col, real(e.re.clone()));
                m.set(j, col + 1, real(e.im.clone()));
                col += 2;
            }
        }
    }
    m
}

pub fn check_condition_a(model: &QuadricModel) -> bool {
    realified_coefficients(model).rank() == model.d()
}

/// Linear independence over `C` of the flattened matrices.
pub fn check_condition_a_complex(model: &QuadricModel) -> bool {
    let n = model.n();
    let rows: Vec<Vec<GaussianRational>> = model.matrices().iter().map(|a| a.matrix().entries().to_vec()).collect();
    let m = ExactMatrix::from_rows(rows).expect("rectangular");
    debug_assert_eq!(m.cols(), n * n);
    m.rank() == model.d()
}

fn stacked(model: &QuadricModel) -> ExactMatrix {
    let blocks: Vec<&ExactMatrix> = model.matrices().iter().map(|a| a.matrix()).collect();
    ExactMatrix::vstack(&blocks).expect("equal widths")
}

pub fn check_condition_b(model: &QuadricModel) -> bool {
    stacked(model).rank() == model.n()
}

/// Grid `{0..n}^d` ordered by total degree, then lexicographically descending.
fn tumanov_grid(n: usize, d: usize) -> Vec<Vec<i64>> {
    let side = n as i64 + 1;
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..d {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..side).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    pts.sort_by(|a, b| {
        let sa: i64 = a.iter().sum();
        let sb: i64 = b.iter().sum();
        sa.cmp(&sb).then_with(|| b.cmp(a))
    });
    pts
}

pub fn combination(model: &QuadricModel, lambda: &[GaussianRational]) -> ExactMatrix {
    let n = model.n();
    let mut acc = ExactMatrix::zeros(n, n);
    for (a, l) in model.matrices().iter().zip(lambda) {
        acc = &acc + &a.matrix().scale(l);
    }
    acc
}

/// `det(sum lambda_j A_j)` has degree at most `n` in each `lambda_j`, so it is
/// identically zero iff it vanishes on the grid `{0..n}^d`.
pub fn check_tumanov(model: &QuadricModel) -> TumanovResult {
    for pt in tumanov_grid(model.n(), model.d()) {
        if pt.iter().all(|&v| v == 0) {
            continue;
        }
        let lambda: Vec<GaussianRational> = pt.iter().map(|&v| GaussianRational::int(v, 0)).collect();
        if combination(model, &lambda).is_invertible() {
            return TumanovResult {
                holds: true,
                witness: Some(pt),
            };
        }
    }
    TumanovResult {
        holds: false,
        witness: None,
    }
}

/// `e_i`, then `e_i + e_j` and `e_i + i e_j` for `i < j`.
pub fn levi_probes(n: usize) -> Vec<Vec<GaussianRational>> {
    let mut out: Vec<Vec<GaussianRational>> = (0..n).map(|i| unit_vector(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut p = unit_vector(n, i);
            p[j] = GaussianRational::one();
            out.push(p.clone());
            p[j] = GaussianRational::i();
            out.push(p);
        }
    }
    out
}

pub fn check_cone_generating(model: &QuadricModel) -> bool {
    let rows: Vec<Vec<GaussianRational>> = levi_probes(model.n())
        .iter()
        .map(|z| model.levi(z).expect("probe length").to_complex().0)
        .collect();
    ExactMatrix::from_rows(rows).expect("rectangular").rank() == model.d()
}

pub fn check_finite_type_two(model: &QuadricModel) -> bool {
    let n = model.n();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            rows.push(model.sesqui(&unit_vector(n, i), &unit_vector(n, j)).expect("probe length").0);
        }
    }
    ExactMatrix::from_rows(rows).expect("rectangular").rank() == model.d()
}

fn lambda_witness(model: &QuadricModel) -> Option<Vec<Rational>> {
    let v = realified_coefficients(model).transpose().kernel_basis().into_iter().next()?;
    Some(v.into_iter().map(|x| x.re).collect())
}

fn kernel_witness(model: &QuadricModel) -> Option<Vec<GaussianRational>> {
    stacked(model).kernel_basis().into_iter().next()
}

impl DegeneracyWitness {
    /// Re-checks both identities exactly.
    pub fn verify(&self, model: &QuadricModel) -> bool {
        let lambda_ok = self.lambda.as_ref().is_none_or(|l| {
            let c: Vec<GaussianRational> = l.iter().cloned().map(real).collect();
            l.len() == model.d() && l.iter().any(|x| !x.is_zero()) && combination(model, &c).is_zero()
        });
        let kernel_ok = self.kernel_vector.as_ref().is_none_or(|z| {
            !is_zero_vector(z)
                && model
                    .matrices()
                    .iter()
                    .all(|a| is_zero_vector(&a.matrix().mul_vec(z).expect("length")))
        });
        (self.lambda.is_some() || self.kernel_vector.is_some()) && lambda_ok && kernel_ok
    }
}

pub fn degeneracy_witness(model: &QuadricModel) -> Option<DegeneracyWitness> {
    let lambda = lambda_witness(model);
    let kernel_vector = kernel_witness(model);
    if lambda.is_none() && kernel_vector.is_none() {
        return None;
    }
    let w = DegeneracyWitness { lambda, kernel_vector };
    assert!(w.verify(model), "degeneracy witness failed re-verification");
    Some(w)
}

pub fn classify(model: &QuadricModel, options: ClassifyOptions) -> ClassificationReport {
    let condition_a = check_condition_a(model);
    let condition_b = check_condition_b(model);
    let report = ClassificationReport {
        n: model.n(),
        d: model.d(),
        condition_a,
        condition_b,
        tumanov: check_tumanov(model),
        cone_generating: check_cone_generating(model),
        finite_type_two: check_finite_type_two(model),
        sesqui_status: analyze_sesqui_surjectivity(model, options.relation_degree),
        beloshapka_nondegenerate: condition_a && condition_b,
        holomorphically_nondegenerate: condition_b.then_some(true),
        witnesses: degeneracy_witness(model),
    };
    if let Some(problem) = report.inconsistency() {
        panic!("internal inconsistency in classification of {model:?}: {problem}");
    }
    report
}

impl ClassificationReport {
    /// First violated implication between the computed fields, if any.
    pub fn inconsistency(&self) -> Option<&'static str> {
        let (a, b) = (self.condition_a, self.condition_b);
        let checks = [
            (self.beloshapka_nondegenerate == (a && b), "beloshapka != a and b"),
            (self.cone_generating == a, "cone-generating != (a)"),
            (self.finite_type_two == a, "finite type two != (a)"),
            (!self.tumanov.holds || b, "tumanov holds but (b) fails"),
            (!(a && self.d > (self.n - 1) * (self.n - 1)) || b, "(a) and d > (n-1)^2 but not (b)"),
            (!(self.d == 1 && b) || a, "d = 1 and (b) but not (a)"),
            (self.d <= self.n * self.n || !a, "(a) holds with d > n^2"),
            (
                self.sesqui_status != SesquiStatus::Dominant || self.finite_type_two,
                "dominant but not finite type two",
            ),
            (self.witnesses.is_some() == !(a && b), "witness presence does not match degeneracy"),
        ];
        checks.iter().find(|(ok, _)| !ok).map(|(_, msg)| *msg)
    }
}

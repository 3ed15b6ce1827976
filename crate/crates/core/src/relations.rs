//! Image analysis for the sesquilinear Levi map `(z, z') -> (conj(z)^T A_k z')_k`.
//!
//! With `zb` treated as an independent variable each component is a bilinear
//! polynomial. A polynomial relation `R(t_1..t_d)` that vanishes after
//! substituting the components proves the image is not Zariski dense; a full
//! rank Jacobian at some point proves the map is dominant. Exact surjectivity
//! is not decided.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{ExactMatrix, GaussianRational, Monomial, MultiPoly, Rational, Var, VarEnv};
use crate::model::QuadricModel;

/// A nonzero homogeneous `R(t_1..t_d)` vanishing on the image.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationCertificate {
    pub degree: usize,
    /// Polynomial in the `u` block of a `(0, d)` environment, displayed as `t`.
    pub poly: MultiPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SesquiStatus {
    NotDominant(RelationCertificate),
    Dominant,
    Unknown,
}

impl SesquiStatus {
    pub fn label(&self) -> &'static str {
        match self {
            SesquiStatus::NotDominant(_) => "NotDominant",
            SesquiStatus::Dominant => "Dominant",
            SesquiStatus::Unknown => "Unknown",
        }
    }
}

/// Polynomial environment for relations among `d` values.
pub fn relation_env(d: usize) -> VarEnv {
    VarEnv::new(0, d)
}

/// `t_k` as a polynomial in [`relation_env`].
pub fn t_var(d: usize, k: usize) -> MultiPoly {
    MultiPoly::var(relation_env(d), Var::U(k))
}

impl RelationCertificate {
    pub fn d(&self) -> usize {
        self.poly.env().d
    }

    /// Substitutes the bilinear components and checks the result is zero.
    pub fn vanishes_on(&self, components: &[ExactMatrix]) -> bool {
        let n = components.first().map_or(0, ExactMatrix::rows);
        let comps = bilinear_polys(components, n);
        let env = VarEnv::new(n, 0);
        let mut total = MultiPoly::zero(env);
        for (m, c) in self.poly.terms() {
            let mut prod = MultiPoly::scalar(env, c.clone());
            for (k, &e) in m.0[..self.d()].iter().enumerate() {
                prod = &prod * &comps[k].pow(e as u32);
            }
            total.add_assign(&prod);
        }
        total.is_zero()
    }

    /// `R'` is proportional to `R` by a nonzero scalar.
    pub fn is_proportional_to(&self, other: &MultiPoly) -> bool {
        let Some((lead, c)) = self.poly.terms().next_back() else {
            return false;
        };
        let Some(oc) = other.coeff(lead) else {
            return false;
        };
        let ratio = oc * &c.inv().expect("nonzero leading coefficient");
        self.poly.scale(&ratio) == *other
    }

    /// Expresses the relation in new coordinates `t' = T t`, i.e. returns the
    /// polynomial `R''` with `R''(T t) = R(t)`. `T` must be invertible.
    pub fn in_coordinates(&self, t: &ExactMatrix) -> Option<MultiPoly> {
        let inv = t.inverse().ok()?;
        let d = self.d();
        // t_k = sum_l inv[k][l] t'_l
        let images: Vec<MultiPoly> = (0..d)
            .map(|k| {
                let mut p = MultiPoly::zero(relation_env(d));
                for l in 0..d {
                    p.add_assign(&t_var(d, l).scale(inv.get(k, l)));
                }
                p
            })
            .collect();
        let mut out = MultiPoly::zero(relation_env(d));
        for (m, c) in self.poly.terms() {
            let mut prod = MultiPoly::scalar(relation_env(d), c.clone());
            for (k, &e) in m.0[..d].iter().enumerate() {
                prod = &prod * &images[k].pow(e as u32);
            }
            out.add_assign(&prod);
        }
        Some(out)
    }
}

impl fmt::Display for RelationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.to_string().replace('u', "t"))
    }
}

/// `zb^T B_k z` for each component, in a `(n, 0)` environment.
fn bilinear_polys(components: &[ExactMatrix], n: usize) -> Vec<MultiPoly> {
    let env = VarEnv::new(n, 0);
    components
        .iter()
        .map(|b| {
            let mut p = MultiPoly::zero(env);
            for r in 0..n {
                for c in 0..n {
                    let e = b.get(r, c);
                    if e.is_zero() {
                        continue;
                    }
                    let m = &MultiPoly::var(env, Var::Zb(r)) * &MultiPoly::var(env, Var::Z(c));
                    p.add_assign(&m.scale(e));
                }
            }
            p
        })
        .collect()
}

/// Exponent vectors of degree exactly `m` in `d` variables, ascending graded-lex.
fn exponents(d: usize, m: usize) -> Vec<Vec<u16>> {
    fn rec(d: usize, m: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if prefix.len() == d - 1 {
            prefix.push(m as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=m {
            prefix.push(e as u16);
            rec(d, m - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(d, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Searches for a homogeneous relation of degree exactly `m`.
pub fn find_relation(components: &[ExactMatrix], m: usize) -> Option<RelationCertificate> {
    let d = components.len();
    let n = components.first().map_or(0, ExactMatrix::rows);
    let comps = bilinear_polys(components, n);
    let alphas = exponents(d, m);
    let images: Vec<MultiPoly> = alphas
        .iter()
        .map(|alpha| {
            let mut p = MultiPoly::one(VarEnv::new(n, 0));
            for (k, &e) in alpha.iter().enumerate() {
                if e > 0 {
                    p = &p * &comps[k].pow(e as u32);
                }
            }
            p
        })
        .collect();
    let mut monos: Vec<&Monomial> = images
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m))
        .collect();
    monos.sort();
    monos.dedup();
    let mut mat = ExactMatrix::zeros(monos.len(), alphas.len());
    for (c, p) in images.iter().enumerate() {
        for (mono, coeff) in p.terms() {
            let r = monos.binary_search(&mono).expect("collected monomial");
            mat.set(r, c, coeff.clone());
        }
    }
    let kernel = mat.kernel_basis();
    let v = kernel.into_iter().next()?;
    let env = relation_env(d);
    let mut poly = MultiPoly::zero(env);
    for (alpha, c) in alphas.iter().zip(&v) {
        let mut exps = alpha.clone();
        exps.resize(env.nvars(), 0);
        poly.add_term(Monomial(exps), c);
    }
    Some(RelationCertificate {
        degree: m,
        poly: normalize(&poly),
    })
}

/// Leading coefficient 1, then denominators cleared.
fn normalize(p: &MultiPoly) -> MultiPoly {
    let (_, lead) = p.terms().next_back().expect("nonzero relation");
    let p = p.scale(&lead.inv().expect("nonzero"));
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        l = l.lcm(c.re.denom()).lcm(c.im.denom());
    }
    p.scale(&GaussianRational::from_real(Rational::from_integer(l)))
}

/// Exact Jacobian rank of the bilinear map at a probe point `(zb, z')`.
pub fn jacobian_rank(components: &[ExactMatrix], zb: &[GaussianRational], zp: &[GaussianRational]) -> usize {
    let n = zb.len();
    let d = components.len();
    let mut jac = ExactMatrix::zeros(d, 2 * n);
    for (k, b) in components.iter().enumerate() {
        for a in 0..n {
            // d/d zb_a = sum_c B[a][c] z'_c
            let mut s = GaussianRational::zero();
            for c in 0..n {
                s += &(b.get(a, c) * &zp[c]);
            }
            jac.set(k, a, s);
            // d/d z'_a = sum_r zb_r B[r][a]
            let mut t = GaussianRational::zero();
            for r in 0..n {
                t += &(&zb[r] * b.get(r, a));
            }
            jac.set(k, n + a, t);
        }
    }
    jac.rank()
}

/// Fixed probe points, identical on every run.
pub fn probe_points(n: usize, count: usize) -> Vec<(Vec<GaussianRational>, Vec<GaussianRational>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e5f);
    (0..count)
        .map(|_| {
            let mut draw = || -> Vec<GaussianRational> {
                (0..n)
                    .map(|_| GaussianRational::int(rng.gen_range(-5..=5), rng.gen_range(-5..=5)))
                    .collect()
            };
            let zb = draw();
            let zp = draw();
            (zb, zp)
        })
        .collect()
}

/// Tri-state analysis of an arbitrary bilinear map given by its matrices.
pub fn analyze_bilinear_map(components: &[ExactMatrix], max_relation_degree: usize) -> SesquiStatus {
    assert!(max_relation_degree >= 1, "relation degree bound must be positive");
    for m in 1..=max_relation_degree {
        if let Some(cert) = find_relation(components, m) {
            return SesquiStatus::NotDominant(cert);
        }
    }
    let n = components.first().map_or(0, ExactMatrix::rows);
    let d = components.len();
    if probe_points(n, 8)
        .iter()
        .any(|(zb, zp)| jacobian_rank(components, zb, zp) == d)
    {
        SesquiStatus::Dominant
    } else {
        SesquiStatus::Unknown
    }
}

pub fn analyze_sesqui_surjectivity(model: &QuadricModel, max_relation_degree: usize) -> SesquiStatus {
    let comps: Vec<ExactMatrix> = model.matrices().iter().map(|a| a.matrix().clone()).collect();
    analyze_bilinear_map(&comps, max_relation_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn codim4_example_is_not_dominant_with_quadratic_relation() {
        let m = catalog::ber_c6_codim4();
        let SesquiStatus::NotDominant(cert) = analyze_sesqui_surjectivity(&m, 3) else {
            panic!("expected a relation");
        };
        assert_eq!(cert.degree, 2);
        assert_eq!(cert.to_string(), "4*t1*t2 - t3^2 - t4^2");
        let comps: Vec<ExactMatrix> = m.matrices().iter().map(|a| a.matrix().clone()).collect();
        assert!(cert.vanishes_on(&comps));
    }

    #[test]
    fn transformed_codim4_map_has_relation_t1t2_minus_t3t4() {
        // (zb1 z1', zb2 z2', zb1 z2', zb2 z1'): no longer Hermitian components.
        let e = |r: usize, c: usize| {
            let mut m = ExactMatrix::zeros(2, 2);
            m.set(r, c, GaussianRational::one());
            m
        };
        let comps = vec![e(0, 0), e(1, 1), e(0, 1), e(1, 0)];
        let SesquiStatus::NotDominant(cert) = analyze_bilinear_map(&comps, 2) else {
            panic!("expected a relation");
        };
        let t1t2 = &t_var(4, 0) * &t_var(4, 1);
        let t3t4 = &t_var(4, 2) * &t_var(4, 3);
        assert!(cert.is_proportional_to(&(&t1t2 - &t3t4)));
    }

    #[test]
    fn dominant_examples() {
        assert_eq!(analyze_sesqui_surjectivity(&catalog::diag_pair_c4(), 3), SesquiStatus::Dominant);
        assert_eq!(analyze_sesqui_surjectivity(&catalog::hyperquadric_c2(), 3), SesquiStatus::Dominant);
    }

    #[test]
    fn linear_dependence_is_a_degree_one_relation() {
        let SesquiStatus::NotDominant(cert) = analyze_sesqui_surjectivity(&catalog::flat_b_not_a(), 2) else {
            panic!("expected relation");
        };
        assert_eq!(cert.degree, 1);
        assert_eq!(cert.to_string(), "t2");
    }

    #[test]
    fn exponent_enumeration() {
        assert_eq!(exponents(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(exponents(4, 2).len(), 10);
        assert_eq!(exponents(1, 3), vec![vec![3]]);
    }

    #[test]
    fn change_of_target_coordinates() {
        let m = catalog::ber_c6_codim4();
        let SesquiStatus::NotDominant(cert) = analyze_sesqui_surjectivity(&m, 2) else {
            panic!()
        };
        // t3' = (t3 - i t4)/2, t4' = (t3 + i t4)/2
        let mut t = ExactMatrix::identity(4);
        t.set(2, 2, g("1/2"));
        t.set(2, 3, g("-1/2i"));
        t.set(3, 2, g("1/2"));
        t.set(3, 3, g("1/2i"));
        let moved = cert.in_coordinates(&t).unwrap();
        let expected = &(&t_var(4, 0) * &t_var(4, 1)) - &(&t_var(4, 2) * &t_var(4, 3));
        let moved_cert = RelationCertificate { degree: 2, poly: moved };
        assert!(moved_cert.is_proportional_to(&expected));
    }
}

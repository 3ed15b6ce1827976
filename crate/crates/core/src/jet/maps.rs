//! Holomorphic polynomial maps `(f, g)` in `(z, w)` and their weighted pieces.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Monomial, MultiPoly, Var, VarEnv};

/// `f`: `n` polynomials, `g`: `d` polynomials, in `z` and `w` only.
#[derive(Clone, Debug, PartialEq)]
pub struct HolMapPair {
    env: VarEnv,
    pub f: Vec<MultiPoly>,
    pub g: Vec<MultiPoly>,
}

fn is_holomorphic(p: &MultiPoly) -> bool {
    let env = p.env();
    p.terms()
        .all(|(m, _)| m.bidegree(&env).1 == 0 && m.u_degree(&env) == 0)
}

impl HolMapPair {
    pub fn new(env: VarEnv, f: Vec<MultiPoly>, g: Vec<MultiPoly>) -> Result<Self> {
        if f.len() != env.n {
            return Err(Error::DimensionMismatch {
                expected: env.n,
                got: f.len(),
            });
        }
        if g.len() != env.d {
            return Err(Error::DimensionMismatch {
                expected: env.d,
                got: g.len(),
            });
        }
        for p in f.iter().chain(&g) {
            if p.env() != env {
                return Err(Error::EnvMismatch(format!("{:?} vs {:?}", p.env(), env)));
            }
            if !is_holomorphic(p) {
                return Err(Error::InvalidModel(format!("map component {p} is not holomorphic")));
            }
        }
        Ok(Self { env, f, g })
    }

    pub fn zero(env: VarEnv) -> Self {
        Self {
            env,
            f: vec![MultiPoly::zero(env); env.n],
            g: vec![MultiPoly::zero(env); env.d],
        }
    }

    /// Zero pair with one component replaced.
    pub fn unit(env: VarEnv, component: usize, p: MultiPoly) -> Self {
        let mut out = Self::zero(env);
        *out.component_mut(component) = p;
        out
    }

    pub fn env(&self) -> VarEnv {
        self.env
    }

    /// Components in the order `f_1..f_n, g_1..g_d`.
    pub fn components(&self) -> impl Iterator<Item = &MultiPoly> {
        self.f.iter().chain(&self.g)
    }

    pub fn component_mut(&mut self, k: usize) -> &mut MultiPoly {
        let n = self.env.n;
        if k < n {
            &mut self.f[k]
        } else {
            &mut self.g[k - n]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components().all(MultiPoly::is_zero)
    }

    /// Largest total degree, `None` for the zero pair.
    pub fn degree(&self) -> Option<usize> {
        self.components().filter_map(MultiPoly::degree).max()
    }

    /// `max(weight(g), weight(f) + 1)`, the weight of the pair as a vector field.
    pub fn weight(&self) -> Option<usize> {
        let env = self.env;
        let wf = self.f.iter().filter_map(|p| p.max_by(|m| m.weight(&env))).max();
        let wg = self.g.iter().filter_map(|p| p.max_by(|m| m.weight(&env))).max();
        wf.map(|w| w + 1).max(wg)
    }

    fn zip_with(&self, o: &Self, op: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> Self {
        assert_eq!(self.env, o.env, "pair environment mismatch");
        Self {
            env: self.env,
            f: self.f.iter().zip(&o.f).map(|(a, b)| op(a, b)).collect(),
            g: self.g.iter().zip(&o.g).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self {
            env: self.env,
            f: self.f.iter().map(|p| p.scale(s)).collect(),
            g: self.g.iter().map(|p| p.scale(s)).collect(),
        }
    }

    pub fn map(&self, op: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        Self {
            env: self.env,
            f: self.f.iter().map(&op).collect(),
            g: self.g.iter().map(&op).collect(),
        }
    }

    /// Terms of total degree at most `k`.
    pub fn jet(&self, k: usize) -> Self {
        self.map(|p| p.filter(|m| m.degree() <= k))
    }

    /// Terms whose `z`-degree is exactly `k`.
    pub fn z_homogeneous_part(&self, k: usize) -> Self {
        let env = self.env;
        self.map(|p| p.filter(|m| m.z_degree(&env) == k))
    }
}

impl fmt::Display for HolMapPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (a, p) in self.f.iter().enumerate() {
            parts.push(format!("f{} = {p}", a + 1));
        }
        for (j, p) in self.g.iter().enumerate() {
            parts.push(format!("g{} = {p}", j + 1));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Holomorphic monomials `z^K w^J` of total degree at most `max_degree`,
/// ascending in the monomial order.
pub fn holomorphic_monomials(env: VarEnv, max_degree: usize) -> Vec<Monomial> {
    let vars: Vec<usize> = (0..env.n)
        .map(|i| env.index(Var::Z(i)))
        .chain((0..env.d).map(|s| env.index(Var::W(s))))
        .collect();
    let mut out = Vec::new();
    let mut cur = Monomial::one(&env);
    fn rec(vars: &[usize], left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        let Some((&v, rest)) = vars.split_first() else {
            out.push(cur.clone());
            return;
        };
        for e in 0..=left {
            cur.0[v] = e as u16;
            rec(rest, left - e, cur, out);
        }
        cur.0[v] = 0;
    }
    rec(&vars, max_degree, &mut cur, &mut out);
    out.sort();
    out
}

/// Weighted-homogeneous piece: every monomial of `f` and `g` has weight `weight`
/// with `z` of weight one and `w` of weight two.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedComponent {
    pub weight: usize,
    pub pair: HolMapPair,
}

pub fn decompose_weighted(pair: &HolMapPair) -> Vec<WeightedComponent> {
    let env = pair.env();
    let mut by_weight: BTreeMap<usize, HolMapPair> = BTreeMap::new();
    for (k, p) in pair.components().enumerate() {
        for (m, c) in p.terms() {
            let slot = by_weight.entry(m.weight(&env)).or_insert_with(|| HolMapPair::zero(env));
            slot.component_mut(k).add_term(m.clone(), c);
        }
    }
    by_weight
        .into_iter()
        .map(|(weight, pair)| WeightedComponent { weight, pair })
        .collect()
}

/// Copies `p` into an environment with one extra real variable, the last `u`.
fn with_extra_u(p: &MultiPoly) -> MultiPoly {
    let env = p.env();
    let big = VarEnv::new(env.n, env.d + 1);
    let mut out = MultiPoly::zero(big);
    for (m, c) in p.terms() {
        let mut e = Monomial::one(&big);
        for k in 0..env.nvars() {
            e.0[big.index(env.var_at(k))] = m.0[k];
        }
        out.add_term(e, c);
    }
    out
}

impl WeightedComponent {
    /// Checks `P(t z, t^2 w) = t^q P(z, w)` with `t` a formal variable.
    pub fn satisfies_scaling(&self) -> bool {
        let env = self.pair.env();
        let big = VarEnv::new(env.n, env.d + 1);
        let t = MultiPoly::var(big, Var::U(env.d));
        let tq = t.pow(self.weight as u32);
        self.pair.components().all(|p| {
            let mut lhs = with_extra_u(p);
            for i in 0..env.n {
                let rep = &t * &MultiPoly::var(big, Var::Z(i));
                lhs = lhs.substitute(Var::Z(i), &rep).expect("same env");
            }
            for s in 0..env.d {
                let rep = &t.pow(2) * &MultiPoly::var(big, Var::W(s));
                lhs = lhs.substitute(Var::W(s), &rep).expect("same env");
            }
            lhs == &with_extra_u(p) * &tq
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> VarEnv {
        VarEnv::new(1, 1)
    }

    fn z() -> MultiPoly {
        MultiPoly::var(env(), Var::Z(0))
    }

    fn w() -> MultiPoly {
        MultiPoly::var(env(), Var::W(0))
    }

    fn pair(f: MultiPoly, g: MultiPoly) -> HolMapPair {
        HolMapPair::new(env(), vec![f], vec![g]).unwrap()
    }

    #[test]
    fn rejects_antiholomorphic_terms() {
        let zb = MultiPoly::var(env(), Var::Zb(0));
        assert!(HolMapPair::new(env(), vec![zb], vec![w()]).is_err());
        let u = MultiPoly::var(env(), Var::U(0));
        assert!(HolMapPair::new(env(), vec![z()], vec![u]).is_err());
        assert!(HolMapPair::new(env(), vec![], vec![w()]).is_err());
    }

    #[test]
    fn single_weights() {
        let c = decompose_weighted(&pair(z(), MultiPoly::zero(env())));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].weight, 1);
        let c = decompose_weighted(&pair(MultiPoly::zero(env()), w()));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].weight, 2);
    }

    #[test]
    fn mixed_monomials_share_a_weight() {
        let f = &(&z() * &w()) + &z().pow(3);
        let c = decompose_weighted(&pair(f.clone(), MultiPoly::zero(env())));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].weight, 3);
        assert_eq!(c[0].pair.f[0], f);
        assert!(c[0].satisfies_scaling());
    }

    #[test]
    fn pair_weight_and_jet() {
        let p = pair(&z() * &w(), w().pow(2));
        assert_eq!(p.weight(), Some(4));
        assert_eq!(p.degree(), Some(2));
        assert!(p.jet(1).is_zero());
        assert_eq!(holomorphic_monomials(env(), 2).len(), 6);
    }

    #[test]
    fn wrong_weight_fails_scaling() {
        let comp = WeightedComponent {
            weight: 2,
            pair: pair(z(), MultiPoly::zero(env())),
        };
        assert!(!comp.satisfies_scaling());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn decomposition_sums_back_and_scales(
                terms in prop::collection::vec((0usize..2, 0u16..3, 0u16..3, -3i64..=3, -3i64..=3), 0..8)
            ) {
                let e = VarEnv::new(2, 1);
                let mut p = HolMapPair::zero(e);
                for (k, a, b, re, im) in terms {
                    let mut m = Monomial::one(&e);
                    m.0[e.index(Var::Z(0))] = a;
                    m.0[e.index(Var::W(0))] = b;
                    let comp = if k == 0 { 0 } else { 2 };
                    p.component_mut(comp).add_term(m, &GaussianRational::int(re, im));
                }
                let parts = decompose_weighted(&p);
                let mut sum = HolMapPair::zero(e);
                for c in &parts {
                    prop_assert!(c.satisfies_scaling());
                    sum = sum.add(&c.pair);
                }
                prop_assert_eq!(sum, p);
            }
        }
    }
}

//! Brute-force system: every coefficient of `f` and `g` up to a total degree
//! is an unknown, and the tangency identity is expanded monomial by monomial.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::exact::{GaussianRational, Monomial, MultiPoly, Rational, SparseMatrix, Var, VarEnv};
use crate::model::QuadricModel;

use super::identity::levi_polys;
use super::maps::{holomorphic_monomials, HolMapPair};

/// Real unknown: component (`f_1..f_n, g_1..g_d`), monomial in `(z, w)`, and
/// whether it multiplies `1` or `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralUnknown {
    pub component: usize,
    pub monomial: Monomial,
    pub imaginary: bool,
}

#[derive(Clone, Debug)]
pub struct GeneralSystem {
    pub env: VarEnv,
    pub cap: usize,
    pub unknowns: Vec<GeneralUnknown>,
    pub matrix: SparseMatrix,
}

impl GeneralSystem {
    pub fn to_pair(&self, v: &[Rational]) -> HolMapPair {
        let mut p = HolMapPair::zero(self.env);
        for (x, u) in v.iter().zip(&self.unknowns) {
            if x.is_zero() {
                continue;
            }
            let c = if u.imaginary {
                GaussianRational::new(Rational::zero(), x.clone())
            } else {
                GaussianRational::from_real(x.clone())
            };
            p.component_mut(u.component).add_term(u.monomial.clone(), &c);
        }
        p
    }

    /// Coordinates of a pair in the unknown basis, `None` if it does not fit.
    pub fn coordinates(&self, pair: &HolMapPair) -> Option<Vec<Rational>> {
        let index: HashMap<(usize, &Monomial, bool), usize> = self
            .unknowns
            .iter()
            .enumerate()
            .map(|(k, u)| ((u.component, &u.monomial, u.imaginary), k))
            .collect();
        let mut v = vec![Rational::zero(); self.unknowns.len()];
        for (k, p) in pair.components().enumerate() {
            for (m, c) in p.terms() {
                if !c.re.is_zero() {
                    v[*index.get(&(k, m, false))?] = c.re.clone();
                }
                if !c.im.is_zero() {
                    v[*index.get(&(k, m, true))?] = c.im.clone();
                }
            }
        }
        Some(v)
    }
}

/// `prod_s (u_s + i L_s)^{J_s}` and its conjugate, cached by `J`.
struct Powers<'a> {
    env: VarEnv,
    levi: &'a [MultiPoly],
    cache: HashMap<Vec<u16>, (MultiPoly, MultiPoly)>,
}

impl Powers<'_> {
    fn get(&mut self, j: &[u16]) -> &(MultiPoly, MultiPoly) {
        if !self.cache.contains_key(j) {
            let mut p = MultiPoly::one(self.env);
            for (s, &e) in j.iter().enumerate() {
                if e > 0 {
                    let base = &MultiPoly::var(self.env, Var::U(s)) + &self.levi[s].scale(&GaussianRational::i());
                    p = &p * &base.pow(e as u32);
                }
            }
            let c = p.conj();
            self.cache.insert(j.to_vec(), (p, c));
        }
        &self.cache[j]
    }
}

/// Row key: codimension index, monomial in `(z, zb, u)`, real or imaginary part.
type RowKey = (usize, Monomial, bool);

fn push_real_part(rows: &mut BTreeMap<RowKey, Vec<(usize, Rational)>>, j: usize, col: usize, x: &MultiPoly) {
    let env = x.env();
    let half = Rational::new(1.into(), 2.into());
    // coefficient of mu in Re X is (X[mu] + conj X[swap mu]) / 2; keep one of mu, swap(mu)
    let mut acc: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
    for (m, c) in x.terms() {
        let s = m.swap_z_zb(&env);
        if m.0 <= s.0 {
            *acc.entry(m.clone()).or_insert_with(GaussianRational::zero) += c;
        }
        if s.0 <= m.0 {
            *acc.entry(s).or_insert_with(GaussianRational::zero) += &c.conj();
        }
    }
    for (m, c) in acc {
        if !c.re.is_zero() {
            rows.entry((j, m.clone(), false)).or_default().push((col, &c.re * &half));
        }
        if !c.im.is_zero() {
            rows.entry((j, m, true)).or_default().push((col, &c.im * &half));
        }
    }
}

pub fn assemble_system_general(model: &QuadricModel, total_degree_cap: usize) -> GeneralSystem {
    let (n, d) = (model.n(), model.d());
    let env = VarEnv::new(n, d);
    let levi = levi_polys(model, env);
    let monos = holomorphic_monomials(env, total_degree_cap);
    let mut unknowns = Vec::new();
    for component in 0..n + d {
        for m in &monos {
            for imaginary in [false, true] {
                unknowns.push(GeneralUnknown {
                    component,
                    monomial: m.clone(),
                    imaginary,
                });
            }
        }
    }
    // (A_j z)_a
    let az: Vec<Vec<MultiPoly>> = (0..d)
        .map(|j| {
            (0..n)
                .map(|a| {
                    let mut p = MultiPoly::zero(env);
                    for b in 0..n {
                        let e = model.matrix(j).get(a, b);
                        if !e.is_zero() {
                            p.add_assign(&MultiPoly::var(env, Var::Z(b)).scale(e));
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    let mut powers = Powers {
        env,
        levi: &levi,
        cache: HashMap::new(),
    };
    let mut rows: BTreeMap<RowKey, Vec<(usize, Rational)>> = BTreeMap::new();
    // first index of the w block
    let w0 = 2 * n + d;
    for (col, u) in unknowns.iter().enumerate() {
        let mut zk = u.monomial.clone();
        let jexp: Vec<u16> = (0..d).map(|s| u.monomial.0[w0 + s]).collect();
        for s in 0..d {
            zk.0[w0 + s] = 0;
        }
        let coeff = if u.imaginary {
            GaussianRational::i()
        } else {
            GaussianRational::one()
        };
        let (e, ec) = powers.get(&jexp).clone();
        if u.component >= n {
            let j = u.component - n;
            let x = e.mul_monomial(&zk).scale(&(&coeff * &GaussianRational::i()));
            push_real_part(&mut rows, j, col, &x);
        } else {
            let a = u.component;
            let zbk = zk.swap_z_zb(&env);
            let base = ec.mul_monomial(&zbk).scale(&coeff.conj().scale(&Rational::from_integer(2.into())));
            for (j, azj) in az.iter().enumerate() {
                if azj[a].is_zero() {
                    continue;
                }
                push_real_part(&mut rows, j, col, &(&base * &azj[a]));
            }
        }
    }
    let mut matrix = SparseMatrix::new(unknowns.len());
    for (_, entries) in rows {
        matrix.push_row(entries);
    }
    GeneralSystem {
        env,
        cap: total_degree_cap,
        unknowns,
        matrix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::jet::identity::solves_basic_identity;

    #[test]
    fn hyperquadric_kernel_contains_known_fields() {
        let m = catalog::hyperquadric_c2();
        let sys = assemble_system_general(&m, 4);
        let e = sys.env;
        let z = MultiPoly::var(e, Var::Z(0));
        let w = MultiPoly::var(e, Var::W(0));
        let zero = MultiPoly::zero(e);
        let fields = [
            HolMapPair::new(e, vec![zero.clone()], vec![MultiPoly::one(e)]).unwrap(),
            HolMapPair::new(e, vec![z.clone()], vec![w.scale(&GaussianRational::int(2, 0))]).unwrap(),
            HolMapPair::new(e, vec![z.scale(&GaussianRational::i())], vec![zero]).unwrap(),
        ];
        for p in &fields {
            let v = sys.coordinates(p).unwrap();
            assert!(sys.matrix.annihilates(&v), "{p}");
            assert_eq!(&sys.to_pair(&v), p);
        }
        let basis = sys.matrix.kernel_basis();
        assert_eq!(basis.len(), 8);
        for v in &basis {
            assert!(solves_basic_identity(&sys.to_pair(v), &m));
        }
    }

    #[test]
    fn cap_one_keeps_real_constants() {
        for m in [catalog::hyperquadric_c2(), catalog::diag_pair_c4()] {
            let sys = assemble_system_general(&m, 1);
            for j in 0..m.d() {
                let p = HolMapPair::unit(sys.env, m.n() + j, MultiPoly::one(sys.env));
                assert!(sys.matrix.annihilates(&sys.coordinates(&p).unwrap()));
            }
        }
    }

    #[test]
    fn rows_match_identity_expansion() {
        // the system applied to a random pair vanishes iff the identity does
        let m = catalog::diag_pair_c4();
        let sys = assemble_system_general(&m, 2);
        let e = sys.env;
        let w = MultiPoly::var(e, Var::W(0));
        let p = HolMapPair::unit(e, 2, w);
        let v = sys.coordinates(&p).unwrap();
        assert!(!sys.matrix.annihilates(&v));
        assert!(!solves_basic_identity(&p, &m));
    }
}

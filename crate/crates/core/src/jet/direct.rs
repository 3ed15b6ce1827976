//! Hand-coded system for the unknown functions of `u`.
//!
//! A solution of the tangency identity with `f = f0 + f1 + f2` and
//! `g = g0 + g1` (graded by `z`-degree) is described by complex functions of `u`:
//! `f0_a`, `phi_ab` (`f1_a = sum_b phi_ab z_b`), `Phi_a,ij` for `i <= j`
//! (`f2_a = sum Phi_a,ij z_i z_j`), `g0_j` and `psi_jb` (`g1_j = sum_b psi_jb z_b`).
//! With `L_t = <zb, z>_t`, `<conj x, z>_j = sum conj(x_a) A_j[a][b] z_b` and
//! `<zb, y>_j = sum zb_a A_j[a][b] y_b`, the equations are, for each `j`:
//!
//! ```text
//! E1  Im g0_j = 0
//! E2  i g1_j + 2 <conj f0, z>_j = 0
//! E3  <zb, f2>_j - 2i <conj(D f0), z>_j = 0
//! E4  <conj(D^2 f0), z>_j = 0
//! E5  2 Re <conj f1, z>_j - Re D g0_j = 0
//! E6  Im <conj(D f1), z>_j = 0
//! E7  Re D^3 g0_j = 0
//! E8  <zb, D f2>_j = 0            (optional, implied by E3 and E4)
//! ```
//!
//! where `D phi = sum_t (d phi / d u_t) L_t`. Each is an identity in `(z, zb)`
//! whose coefficients are real linear combinations of derivatives of the real
//! and imaginary parts of the unknowns.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::exact::{
    ExactMatrix, GaussianRational, LinearForm, Monomial, MultiPoly, Poly, Rational, SparseMatrix,
    Var, VarEnv,
};
use crate::model::QuadricModel;

use super::identity::levi_polys;
use super::maps::HolMapPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    F0,
    Phi,
    BigPhi,
    G0,
    Psi,
}

/// Index layout of the complex unknown functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownLayout {
    pub n: usize,
    pub d: usize,
    pairs: Vec<(usize, usize)>,
}

impl UnknownLayout {
    pub fn new(n: usize, d: usize) -> Self {
        let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        Self { n, d, pairs }
    }

    /// `n (1 + n + n(n+1)/2) + d (1 + n)`.
    pub fn q(&self) -> usize {
        self.n * (1 + self.n + self.pairs.len()) + self.d * (1 + self.n)
    }

    fn base(&self, b: Block) -> usize {
        let (n, d, p) = (self.n, self.d, self.pairs.len());
        match b {
            Block::F0 => 0,
            Block::Phi => n,
            Block::BigPhi => n + n * n,
            Block::G0 => n + n * n + n * p,
            Block::Psi => n + n * n + n * p + d,
        }
    }

    pub fn f0(&self, a: usize) -> usize {
        self.base(Block::F0) + a
    }

    pub fn phi(&self, a: usize, b: usize) -> usize {
        self.base(Block::Phi) + a * self.n + b
    }

    pub fn big_phi(&self, a: usize, i: usize, j: usize) -> usize {
        let k = self.pairs.iter().position(|&p| p == (i.min(j), i.max(j))).expect("pair");
        self.base(Block::BigPhi) + a * self.pairs.len() + k
    }

    pub fn g0(&self, j: usize) -> usize {
        self.base(Block::G0) + j
    }

    pub fn psi(&self, j: usize, b: usize) -> usize {
        self.base(Block::Psi) + j * self.n + b
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn block_of(&self, col: usize) -> Block {
        [Block::Psi, Block::G0, Block::BigPhi, Block::Phi, Block::F0]
            .into_iter()
            .find(|&b| col >= self.base(b))
            .expect("column in range")
    }

    pub fn label(&self, col: usize) -> String {
        let b = self.block_of(col);
        let k = col - self.base(b);
        match b {
            Block::F0 => format!("f0_{}", k + 1),
            Block::Phi => format!("phi_{}{}", k / self.n + 1, k % self.n + 1),
            Block::BigPhi => {
                let (i, j) = self.pairs[k % self.pairs.len()];
                format!("Phi_{}_{}{}", k / self.pairs.len() + 1, i + 1, j + 1)
            }
            Block::G0 => format!("g0_{}", k + 1),
            Block::Psi => format!("psi_{}{}", k / self.n + 1, k % self.n + 1),
        }
    }
}

/// Real unknown function `2 * col + part` differentiated `alpha` times.
pub type Atom = (usize, Vec<u16>);

type Sym = Poly<LinearForm<Atom>>;

/// Rectangular matrix whose entries are polynomials in `d` symbols standing
/// for `d/du_1 .. d/du_d`; columns are real parts then imaginary parts of the
/// unknowns (`2 * col` and `2 * col + 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct PdSystem {
    pub layout: UnknownLayout,
    /// Each row: `(real column, symbol exponent, coefficient)`.
    pub rows: Vec<Vec<(usize, Vec<u16>, Rational)>>,
    /// Equation tag (`E1`..`E8`) and codimension index for each row.
    pub tags: Vec<(u8, usize)>,
}

fn complex_unknown(env: VarEnv, col: usize) -> Sym {
    let d = env.d;
    let mut lf = LinearForm::unit((2 * col, vec![0; d]), GaussianRational::one());
    lf.add_term((2 * col + 1, vec![0; d]), &GaussianRational::i());
    Poly::constant(env, lf)
}

/// `D` on symbolic expressions: every atom gains one derivative per `L_t`.
fn delta_sym(p: &Sym, levi: &[MultiPoly]) -> Sym {
    let env = p.env();
    let mut out = Sym::zero(env);
    for (t, l) in levi.iter().enumerate() {
        if l.is_zero() {
            continue;
        }
        for (m, lf) in p.terms() {
            let shifted = lf.map_keys(|(c, a)| {
                let mut a = a.clone();
                a[t] += 1;
                (*c, a)
            });
            out.add_assign(&(&Sym::term(env, m.clone(), shifted) * l));
        }
    }
    out
}

fn delta_pow(p: &Sym, levi: &[MultiPoly], k: usize) -> Sym {
    (0..k).fold(p.clone(), |acc, _| delta_sym(&acc, levi))
}

/// `sum conj(x_a) A[a][b] y_b`.
fn pair_conj(model: &QuadricModel, j: usize, x: &[Sym], y: &[MultiPoly]) -> Sym {
    let env = y[0].env();
    let a = model.matrix(j);
    let mut out = Sym::zero(env);
    for (r, xr) in x.iter().enumerate() {
        let xc = xr.conj();
        for (c, yc) in y.iter().enumerate() {
            let e = a.get(r, c);
            if !e.is_zero() {
                out.add_assign(&(&xc * yc).scale(e));
            }
        }
    }
    out
}

/// `sum zb_a A[a][b] y_b`.
fn pair_zb(model: &QuadricModel, j: usize, y: &[Sym]) -> Sym {
    let env = y[0].env();
    let a = model.matrix(j);
    let mut out = Sym::zero(env);
    for r in 0..env.n {
        let zb = MultiPoly::var(env, Var::Zb(r));
        for (c, yc) in y.iter().enumerate() {
            let e = a.get(r, c);
            if !e.is_zero() {
                out.add_assign(&(yc * &zb).scale(e));
            }
        }
    }
    out
}

fn lf_real_rows(lf: &LinearForm<Atom>) -> [Vec<(usize, Vec<u16>, Rational)>; 2] {
    let mut re = Vec::new();
    let mut im = Vec::new();
    for ((c, a), v) in &lf.terms {
        if !v.re.is_zero() {
            re.push((*c, a.clone(), v.re.clone()));
        }
        if !v.im.is_zero() {
            im.push((*c, a.clone(), v.im.clone()));
        }
    }
    [re, im]
}

/// Scales a row so its first coefficient is one (for deduplication).
fn normalized(mut row: Vec<(usize, Vec<u16>, Rational)>) -> Vec<(usize, Vec<u16>, Rational)> {
    if let Some(first) = row.first().map(|e| e.2.clone()) {
        for e in row.iter_mut() {
            e.2 = &e.2 / &first;
        }
    }
    row
}

impl PdSystem {
    pub fn build(model: &QuadricModel, include_extra: bool) -> Self {
        let (n, d) = (model.n(), model.d());
        let env = VarEnv::new(n, d);
        let layout = UnknownLayout::new(n, d);
        let levi = levi_polys(model, env);
        let z: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(env, Var::Z(i))).collect();
        let zz = |i: usize, j: usize| &z[i] * &z[j];

        let f0: Vec<Sym> = (0..n).map(|a| complex_unknown(env, layout.f0(a))).collect();
        let f1: Vec<Sym> = (0..n)
            .map(|a| {
                let mut p = Sym::zero(env);
                for b in 0..n {
                    p.add_assign(&(&complex_unknown(env, layout.phi(a, b)) * &z[b]));
                }
                p
            })
            .collect();
        let f2: Vec<Sym> = (0..n)
            .map(|a| {
                let mut p = Sym::zero(env);
                for &(i, j) in layout.pairs() {
                    p.add_assign(&(&complex_unknown(env, layout.big_phi(a, i, j)) * &zz(i, j)));
                }
                p
            })
            .collect();
        let g0: Vec<Sym> = (0..d).map(|j| complex_unknown(env, layout.g0(j))).collect();
        let g1: Vec<Sym> = (0..d)
            .map(|j| {
                let mut p = Sym::zero(env);
                for b in 0..n {
                    p.add_assign(&(&complex_unknown(env, layout.psi(j, b)) * &z[b]));
                }
                p
            })
            .collect();

        let df0: Vec<Sym> = f0.iter().map(|p| delta_sym(p, &levi)).collect();
        let d2f0: Vec<Sym> = df0.iter().map(|p| delta_sym(p, &levi)).collect();
        let df1: Vec<Sym> = f1.iter().map(|p| delta_sym(p, &levi)).collect();
        let df2: Vec<Sym> = f2.iter().map(|p| delta_sym(p, &levi)).collect();
        let two = GaussianRational::int(2, 0);
        let i = GaussianRational::i();

        let mut seen: BTreeSet<Vec<(usize, Vec<u16>, Rational)>> = BTreeSet::new();
        let mut rows = Vec::new();
        let mut tags = Vec::new();
        for j in 0..d {
            let mut eqs: Vec<(u8, Sym)> = vec![
                (1, g0[j].imag_part()),
                (2, &g1[j].scale(&i) + &pair_conj(model, j, &f0, &z).scale(&two)),
                (
                    3,
                    &pair_zb(model, j, &f2) - &pair_conj(model, j, &df0, &z).scale(&two.mul_i()),
                ),
                (4, pair_conj(model, j, &d2f0, &z)),
                (
                    5,
                    &pair_conj(model, j, &f1, &z).real_part().scale(&two)
                        - &delta_sym(&g0[j], &levi).real_part(),
                ),
                (6, pair_conj(model, j, &df1, &z).imag_part()),
                (7, delta_pow(&g0[j], &levi, 3).real_part()),
            ];
            if include_extra {
                eqs.push((8, pair_zb(model, j, &df2)));
            }
            for (tag, eq) in eqs {
                for (_, lf) in eq.terms() {
                    for row in lf_real_rows(lf) {
                        if row.is_empty() || !seen.insert(normalized(row.clone())) {
                            continue;
                        }
                        rows.push(row);
                        tags.push((tag, j));
                    }
                }
            }
        }
        Self { layout, rows, tags }
    }

    pub fn real_columns(&self) -> usize {
        2 * self.layout.q()
    }

    /// `P(zeta)` as a constant matrix.
    pub fn eval(&self, zeta: &[GaussianRational]) -> ExactMatrix {
        assert_eq!(zeta.len(), self.layout.d, "symbol vector length");
        let mut m = ExactMatrix::zeros(self.rows.len(), self.real_columns());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, alpha, v) in row {
                let mut t = GaussianRational::from_real(v.clone());
                for (z, &e) in zeta.iter().zip(alpha) {
                    if e > 0 {
                        t = &t * &z.pow(e as u32);
                    }
                }
                let cur = m.get(r, *c).clone();
                m.set(r, *c, &cur + &t);
            }
        }
        m
    }

    pub fn constant_terms(&self) -> ExactMatrix {
        self.eval(&vec![GaussianRational::zero(); self.layout.d])
    }

    /// True iff `P(zeta)` has a nontrivial kernel.
    pub fn is_characteristic(&self, zeta: &[GaussianRational]) -> bool {
        self.eval(zeta).rank() < self.real_columns()
    }

    /// Applies the operator to the ansatz `sum_{|beta| <= cap} c_beta u^beta`
    /// for every real unknown function and equates all `u`-coefficients to zero.
    pub fn assemble(&self, cap: usize) -> DirectSystem {
        let betas = exponent_vectors(self.layout.d, cap);
        let index: BTreeMap<&Vec<u16>, usize> = betas.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let nb = betas.len();
        let mut matrix = SparseMatrix::new(self.real_columns() * nb);
        for row in &self.rows {
            for gamma in &betas {
                let entries: Vec<(usize, Rational)> = row
                    .iter()
                    .filter_map(|(c, alpha, v)| {
                        let beta: Vec<u16> = gamma.iter().zip(alpha).map(|(g, a)| g + a).collect();
                        let k = *index.get(&beta)?;
                        Some((c * nb + k, v * falling(&beta, alpha)))
                    })
                    .collect();
                matrix.push_row(entries);
            }
        }
        DirectSystem {
            layout: self.layout.clone(),
            cap,
            betas,
            matrix,
        }
    }
}

/// `prod beta_i! / (beta_i - alpha_i)!`.
fn falling(beta: &[u16], alpha: &[u16]) -> Rational {
    let mut acc: i64 = 1;
    for (&b, &a) in beta.iter().zip(alpha) {
        for k in 0..a {
            acc *= (b - k) as i64;
        }
    }
    Rational::from_integer(acc.into())
}

/// Exponent vectors in `d` variables of total degree at most `cap`, ascending
/// in graded-lex order.
pub fn exponent_vectors(d: usize, cap: usize) -> Vec<Vec<u16>> {
    let mut out: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                let used: usize = p.iter().map(|&e| e as usize).sum();
                (0..=(cap - used) as u16).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out.sort_by(|a, b| {
        let sa: u16 = a.iter().sum();
        let sb: u16 = b.iter().sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    out
}

/// The realified linear system on the polynomial ansatz.
#[derive(Clone, Debug)]
pub struct DirectSystem {
    pub layout: UnknownLayout,
    pub cap: usize,
    pub betas: Vec<Vec<u16>>,
    pub matrix: SparseMatrix,
}

impl DirectSystem {
    pub fn unknown_vector(&self, coeffs: Vec<Rational>) -> UnknownVector {
        assert_eq!(coeffs.len(), self.matrix.cols());
        UnknownVector {
            layout: self.layout.clone(),
            betas: self.betas.clone(),
            coeffs,
        }
    }
}

pub fn assemble_system_direct(model: &QuadricModel, u_degree_cap: usize) -> DirectSystem {
    PdSystem::build(model, false).assemble(u_degree_cap)
}

/// Coefficients of the ansatz: index `(2 * col + part) * betas.len() + beta`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnknownVector {
    pub layout: UnknownLayout,
    pub betas: Vec<Vec<u16>>,
    pub coeffs: Vec<Rational>,
}

impl UnknownVector {
    /// The complex function `col` as a polynomial in `w`.
    pub fn function(&self, env: VarEnv, col: usize) -> MultiPoly {
        let nb = self.betas.len();
        let mut p = MultiPoly::zero(env);
        for (k, beta) in self.betas.iter().enumerate() {
            let re = &self.coeffs[2 * col * nb + k];
            let im = &self.coeffs[(2 * col + 1) * nb + k];
            if re.is_zero() && im.is_zero() {
                continue;
            }
            let mut m = Monomial::one(&env);
            for (s, &e) in beta.iter().enumerate() {
                m.0[env.index(Var::W(s))] = e;
            }
            p.add_term(m, &GaussianRational::new(re.clone(), im.clone()));
        }
        p
    }

    pub fn to_pair(&self) -> HolMapPair {
        let l = &self.layout;
        let env = VarEnv::new(l.n, l.d);
        let z: Vec<MultiPoly> = (0..l.n).map(|i| MultiPoly::var(env, Var::Z(i))).collect();
        let f = (0..l.n)
            .map(|a| {
                let mut p = self.function(env, l.f0(a));
                for b in 0..l.n {
                    p.add_assign(&(&self.function(env, l.phi(a, b)) * &z[b]));
                }
                for &(i, j) in l.pairs() {
                    p.add_assign(&(&(&self.function(env, l.big_phi(a, i, j)) * &z[i]) * &z[j]));
                }
                p
            })
            .collect();
        let g = (0..l.d)
            .map(|j| {
                let mut p = self.function(env, l.g0(j));
                for b in 0..l.n {
                    p.add_assign(&(&self.function(env, l.psi(j, b)) * &z[b]));
                }
                p
            })
            .collect();
        HolMapPair::new(env, f, g).expect("holomorphic by construction")
    }

    /// Largest `u`-degree with a nonzero coefficient in `block`.
    pub fn block_degree(&self, block: Block) -> Option<usize> {
        let nb = self.betas.len();
        (0..self.layout.q())
            .filter(|&c| self.layout.block_of(c) == block)
            .flat_map(|c| (0..nb).map(move |k| (c, k)))
            .filter(|&(c, k)| !self.coeffs[2 * c * nb + k].is_zero() || !self.coeffs[(2 * c + 1) * nb + k].is_zero())
            .map(|(_, k)| self.betas[k].iter().map(|&e| e as usize).sum())
            .max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::jet::identity::solves_basic_identity;
    use num_traits::One;

    #[test]
    fn layout_counts() {
        assert_eq!(UnknownLayout::new(1, 1).q(), 5);
        assert_eq!(UnknownLayout::new(3, 3).q(), 42);
        let l = UnknownLayout::new(2, 2);
        assert_eq!(l.q(), 2 * (1 + 2 + 3) + 2 * 3);
        assert_eq!(l.block_of(l.psi(1, 1)), Block::Psi);
        assert_eq!(l.psi(1, 1), l.q() - 1);
        assert_eq!(l.label(l.big_phi(1, 1, 0)), "Phi_2_12");
    }

    #[test]
    fn exponent_vector_order() {
        assert_eq!(exponent_vectors(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(exponent_vectors(3, 4).len(), 35);
        assert_eq!(exponent_vectors(1, 3).len(), 4);
    }

    #[test]
    fn first_equation_kills_imaginary_constants() {
        let m = catalog::hyperquadric_c2();
        let p = PdSystem::build(&m, false);
        let l = &p.layout;
        let im_g0 = 2 * l.g0(0) + 1;
        assert!(p
            .rows
            .iter()
            .zip(&p.tags)
            .any(|(r, t)| t.0 == 1 && r == &vec![(im_g0, vec![0], Rational::one())]));
    }

    #[test]
    fn second_equation_links_psi_and_f0() {
        let m = catalog::hyperquadric_c2();
        let p = PdSystem::build(&m, false);
        let l = &p.layout;
        let (psi, f0) = (l.psi(0, 0), l.f0(0));
        let e2: Vec<_> = p.rows.iter().zip(&p.tags).filter(|(_, t)| t.0 == 2).map(|(r, _)| r).collect();
        assert!(!e2.is_empty());
        for r in e2 {
            let cols: BTreeSet<usize> = r.iter().map(|e| e.0 / 2).collect();
            assert_eq!(cols, BTreeSet::from([f0, psi]));
        }
    }

    #[test]
    fn hyperquadric_solution_space() {
        let m = catalog::hyperquadric_c2();
        let sys = assemble_system_direct(&m, 3);
        let basis = sys.matrix.kernel_basis();
        assert_eq!(basis.len(), 8);
        for v in basis {
            let pair = sys.unknown_vector(v).to_pair();
            assert!(solves_basic_identity(&pair, &m), "{pair}");
        }
    }

    #[test]
    fn scaling_field_is_in_the_kernel() {
        // (f, g) = (z, 2w): phi = 1, g0 = 2u.
        let m = catalog::hyperquadric_c2();
        let sys = assemble_system_direct(&m, 2);
        let l = &sys.layout;
        let nb = sys.betas.len();
        let mut v = vec![Rational::zero(); sys.matrix.cols()];
        v[2 * l.phi(0, 0) * nb] = Rational::one();
        v[2 * l.g0(0) * nb + 1] = Rational::from_integer(2.into());
        assert!(sys.matrix.annihilates(&v));
    }

    #[test]
    fn extra_equation_is_redundant() {
        for m in [catalog::hyperquadric_c2(), catalog::diag_pair_c4(), catalog::corner_a_not_b()] {
            let a = PdSystem::build(&m, false).assemble(3);
            let b = PdSystem::build(&m, true).assemble(3);
            assert_eq!(a.matrix.kernel_basis(), b.matrix.kernel_basis());
        }
    }

    #[test]
    fn characteristic_points() {
        let m = catalog::hyperquadric_c2();
        let p = PdSystem::build(&m, false);
        assert!(p.is_characteristic(&[GaussianRational::zero()]));
        assert!(!p.is_characteristic(&[GaussianRational::one()]));
        assert!(!p.is_characteristic(&["1/2+i".parse().unwrap()]));
        let flat = PdSystem::build(&catalog::degenerate_flat(), false);
        assert!(flat.is_characteristic(&[GaussianRational::one()]));
        assert_eq!(p.constant_terms(), p.eval(&[GaussianRational::zero()]));
    }
}

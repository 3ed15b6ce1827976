//! Sparse multivariate polynomials in `z_1..z_n, zb_1..zb_n, u_1..u_d, w_1..w_d`.
//!
//! `zb` is formally independent of `z`; formal conjugation swaps the two
//! blocks and conjugates coefficients, leaving `u` fixed. The `w` block only
//! carries holomorphic maps before the substitution `w = u + i<zb, z>`.
//!
//! Coefficients are generic so the same machinery expands polynomials whose
//! coefficients are linear forms in unknowns (see [`LinearForm`]).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Variable layout shared by every polynomial of one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarEnv {
    pub n: usize,
    pub d: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z(usize),
    Zb(usize),
    U(usize),
    W(usize),
}

impl VarEnv {
    pub fn new(n: usize, d: usize) -> Self {
        Self { n, d }
    }

    pub fn nvars(&self) -> usize {
        2 * self.n + 2 * self.d
    }

    pub fn index(&self, v: Var) -> usize {
        match v {
            Var::Z(i) => {
                assert!(i < self.n);
                i
            }
            Var::Zb(i) => {
                assert!(i < self.n);
                self.n + i
            }
            Var::U(s) => {
                assert!(s < self.d);
                2 * self.n + s
            }
            Var::W(s) => {
                assert!(s < self.d);
                2 * self.n + self.d + s
            }
        }
    }

    pub fn var_at(&self, k: usize) -> Var {
        let n = self.n;
        let d = self.d;
        if k < n {
            Var::Z(k)
        } else if k < 2 * n {
            Var::Zb(k - n)
        } else if k < 2 * n + d {
            Var::U(k - 2 * n)
        } else {
            Var::W(k - 2 * n - d)
        }
    }

    fn check(&self, other: &VarEnv) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::EnvMismatch(format!(
                "(n={}, d={}) vs (n={}, d={})",
                self.n, self.d, other.n, other.d
            )))
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(i) => write!(f, "z{}", i + 1),
            Var::Zb(i) => write!(f, "zb{}", i + 1),
            Var::U(s) => write!(f, "u{}", s + 1),
            Var::W(s) => write!(f, "w{}", s + 1),
        }
    }
}

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then lexicographic in the fixed variable order `z, zb, u, w`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(env: &VarEnv) -> Self {
        Self(vec![0; env.nvars()])
    }

    pub fn var(env: &VarEnv, v: Var) -> Self {
        let mut m = Self::one(env);
        m.0[env.index(v)] = 1;
        m
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponent(&self, env: &VarEnv, v: Var) -> u16 {
        self.0[env.index(v)]
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// Total degree in the `z` block and in the `zb` block.
    pub fn bidegree(&self, env: &VarEnv) -> (usize, usize) {
        let z = self.0[..env.n].iter().map(|&e| e as usize).sum();
        let zb = self.0[env.n..2 * env.n].iter().map(|&e| e as usize).sum();
        (z, zb)
    }

    pub fn z_degree(&self, env: &VarEnv) -> usize {
        self.bidegree(env).0
    }

    pub fn u_degree(&self, env: &VarEnv) -> usize {
        self.0[2 * env.n..2 * env.n + env.d].iter().map(|&e| e as usize).sum()
    }

    pub fn w_degree(&self, env: &VarEnv) -> usize {
        self.0[2 * env.n + env.d..].iter().map(|&e| e as usize).sum()
    }

    /// Weight with `z`, `zb` of weight one and `u`, `w` of weight two.
    pub fn weight(&self, env: &VarEnv) -> usize {
        let (a, b) = self.bidegree(env);
        a + b + 2 * (self.u_degree(env) + self.w_degree(env))
    }

    /// Swaps the `z` and `zb` exponents.
    pub fn swap_z_zb(&self, env: &VarEnv) -> Monomial {
        let mut e = self.0.clone();
        let n = env.n;
        for i in 0..n {
            e.swap(i, n + i);
        }
        Monomial(e)
    }

    pub fn fmt_with(&self, env: &VarEnv) -> String {
        let mut parts = Vec::new();
        for (k, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(env.var_at(k).to_string()),
                _ => parts.push(format!("{}^{}", env.var_at(k), e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A coefficient domain: a module over the Gaussian rationals with conjugation.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn scaled(&self, by: &GaussianRational) -> Self;
    fn conj(&self) -> Self;
    fn negated(&self) -> Self {
        self.scaled(&GaussianRational::int(-1, 0))
    }
}

impl Coefficient for GaussianRational {
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn scaled(&self, by: &GaussianRational) -> Self {
        self * by
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Sparse linear combination of (real) unknowns with Gaussian-rational weights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm<K: Ord> {
    pub terms: BTreeMap<K, GaussianRational>,
}

impl<K: Ord + Clone + fmt::Debug> LinearForm<K> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(key: K, coeff: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        Self { terms }
    }

    pub fn add_term(&mut self, key: K, coeff: &GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(GaussianRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Relabels every unknown; labels that collide are summed.
    pub fn map_keys<K2: Ord + Clone + fmt::Debug>(&self, f: impl Fn(&K) -> K2) -> LinearForm<K2> {
        let mut out = LinearForm::zero();
        for (k, v) in &self.terms {
            out.add_term(f(k), v);
        }
        out
    }
}

impl<K: Ord + Clone + fmt::Debug> Coefficient for LinearForm<K> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v);
        }
    }
    fn scaled(&self, by: &GaussianRational) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * by)).collect(),
        }
    }
    fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.conj())).collect(),
        }
    }
}

/// Polynomial with coefficients in `C`, stored without zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C> {
    env: VarEnv,
    terms: BTreeMap<Monomial, C>,
}

pub type MultiPoly = Poly<GaussianRational>;

impl<C: Coefficient> Poly<C> {
    pub fn zero(env: VarEnv) -> Self {
        Self {
            env,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(env: VarEnv, mono: Monomial, coeff: C) -> Self {
        let mut p = Self::zero(env);
        p.add_term(mono, &coeff);
        p
    }

    pub fn constant(env: VarEnv, coeff: C) -> Self {
        Self::term(env, Monomial::one(&env), coeff)
    }

    pub fn env(&self) -> VarEnv {
        self.env
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Option<&C> {
        self.terms.get(mono)
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: &C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                c.add_assign(coeff);
                if c.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly<C>) {
        assert_eq!(self.env, other.env, "polynomial environment mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn checked_add(&self, other: &Poly<C>) -> Result<Poly<C>> {
        self.env.check(&other.env)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<Poly<C>> {
        self.env.check(&other.env)?;
        Ok(self * other)
    }

    pub fn scale(&self, s: &GaussianRational) -> Poly<C> {
        if s.is_zero() {
            return Self::zero(self.env);
        }
        Poly {
            env: self.env,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scaled(s))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly<C> {
        Poly {
            env: self.env,
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    /// Formal conjugate: `z <-> zb`, conjugated coefficients, `u` fixed.
    /// The `w` block must be empty (conjugating `w` is not representable).
    pub fn conj(&self) -> Poly<C> {
        debug_assert!(
            self.terms.keys().all(|m| m.w_degree(&self.env) == 0),
            "formal conjugation of a polynomial in w"
        );
        Poly {
            env: self.env,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swap_z_zb(&self.env), c.conj()))
                .collect(),
        }
    }

    /// `(p + conj p) / 2`.
    pub fn real_part(&self) -> Poly<C> {
        let mut s = self.clone();
        s.add_assign(&self.conj());
        s.scale(&GaussianRational::from_real(super::scalar::rat(1, 2)))
    }

    /// `(p - conj p) / (2i)`.
    pub fn imag_part(&self) -> Poly<C> {
        let mut s = self.clone();
        s.add_assign(&self.conj().negated());
        s.scale(&"-1/2i".parse().expect("constant"))
    }

    pub fn negated(&self) -> Poly<C> {
        Poly {
            env: self.env,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
        }
    }

    /// Part with `z`-degree `k` and `zb`-degree `l`.
    pub fn extract_bidegree(&self, k: usize, l: usize) -> Poly<C> {
        self.filter(|m| m.bidegree(&self.env) == (k, l))
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly<C> {
        Poly {
            env: self.env,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> Poly<C> {
        let k = self.env.index(v);
        let mut out = Self::zero(self.env);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[k] -= 1;
            out.add_term(dm, &c.scaled(&GaussianRational::from(e as i64)));
        }
        out
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Maximum of `measure` over the monomials, `None` for the zero polynomial.
    pub fn max_by(&self, measure: impl Fn(&Monomial) -> usize) -> Option<usize> {
        self.terms.keys().map(measure).max()
    }

    /// Replaces `var` by `replacement` and expands.
    pub fn substitute(&self, var: Var, replacement: &MultiPoly) -> Result<Poly<C>> {
        self.env.check(&replacement.env)?;
        let k = self.env.index(var);
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one(self.env)];
        let mut out = Self::zero(self.env);
        for (m, c) in &self.terms {
            let e = m.0[k] as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty") * replacement;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[k] = 0;
            for (pm, pc) in &powers[e].terms {
                out.add_term(rest.mul(pm), &c.scaled(pc));
            }
        }
        Ok(out)
    }

    /// Relabels coefficients (e.g. projects linear forms).
    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(self.env);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }
}

impl MultiPoly {
    pub fn one(env: VarEnv) -> Self {
        Self::constant(env, GaussianRational::one())
    }

    pub fn var(env: VarEnv, v: Var) -> Self {
        Self::term(env, Monomial::var(&env, v), GaussianRational::one())
    }

    pub fn scalar(env: VarEnv, c: GaussianRational) -> Self {
        Self::constant(env, c)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.env);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point given as one value per variable (in layout order).
    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.env.nvars());
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[k].pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    pub fn real_coefficients(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (m, &c.re))
    }
}

impl fmt::Display for MultiPoly {
    /// Leading (largest) monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = m.fmt_with(&self.env);
            let (neg, body) = signed_parts(c);
            let term = match (body.as_str(), mono.as_str()) {
                (b, "1") => b.to_string(),
                ("1", m) => m.to_string(),
                (b, m) => format!("{b}*{m}"),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{term}")?;
                first = false;
            } else {
                write!(f, " {} {term}", if neg { '-' } else { '+' })?;
            }
        }
        Ok(())
    }
}

/// Splits a coefficient into a sign and a magnitude string for display.
fn signed_parts(c: &GaussianRational) -> (bool, String) {
    use num_traits::{Signed, Zero};
    if c.is_real() || c.re.is_zero() {
        let neg = if c.is_real() { c.re.is_negative() } else { c.im.is_negative() };
        let mag = if neg { -c } else { c.clone() };
        (neg, mag.to_string())
    } else {
        (false, format!("({c})"))
    }
}

impl<C: Coefficient> Add<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    /// Panics on environment mismatch; see [`Poly::checked_add`].
    fn add(self, o: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }
}

impl<C: Coefficient> Sub<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out.add_assign(&o.negated());
        out
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.negated()
    }
}

impl<C: Coefficient> Mul<&MultiPoly> for &Poly<C> {
    type Output = Poly<C>;
    /// Panics on environment mismatch; see [`Poly::checked_mul`].
    fn mul(self, o: &MultiPoly) -> Poly<C> {
        assert_eq!(self.env, o.env, "polynomial environment mismatch");
        let mut out = Poly::zero(self.env);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &c1.scaled(c2));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> VarEnv {
        VarEnv::new(1, 1)
    }

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let e = env();
        let z = MultiPoly::var(e, Var::Z(0));
        let u = MultiPoly::var(e, Var::U(0));
        let p = &(&z + &u) * &(&z - &u);
        let expected = &(&z * &z) - &(&u * &u);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "z1^2 - u1^2");
    }

    #[test]
    fn substitute_zero_kills_term() {
        let e = env();
        let p = &MultiPoly::var(e, Var::Z(0)) * &MultiPoly::var(e, Var::U(0));
        let zero = MultiPoly::zero(e);
        assert!(p.substitute(Var::U(0), &zero).unwrap().is_zero());
    }

    #[test]
    fn square_of_w_after_substitution() {
        let e = env();
        let w = MultiPoly::var(e, Var::W(0));
        let zzb = &MultiPoly::var(e, Var::Z(0)) * &MultiPoly::var(e, Var::Zb(0));
        let repl = &MultiPoly::var(e, Var::U(0)) + &zzb.scale(&GaussianRational::i());
        let expanded = w.pow(2).substitute(Var::W(0), &repl).unwrap();
        let part = expanded.extract_bidegree(1, 1);
        let expected = (&MultiPoly::var(e, Var::U(0)) * &zzb).scale(&g("2i"));
        assert_eq!(part, expected);
        assert!(expanded.extract_bidegree(2, 0).is_zero());
        assert_eq!(expanded.extract_bidegree(2, 2), (&zzb * &zzb).scale(&g("-1")));
    }

    #[test]
    fn environment_mismatch_is_reported() {
        let a = MultiPoly::one(VarEnv::new(1, 1));
        let b = MultiPoly::one(VarEnv::new(2, 1));
        assert!(matches!(a.checked_add(&b), Err(Error::EnvMismatch(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::EnvMismatch(_))));
        assert!(matches!(a.substitute(Var::U(0), &b), Err(Error::EnvMismatch(_))));
    }

    #[test]
    fn conjugation_and_parts() {
        let e = VarEnv::new(2, 1);
        let p = MultiPoly::term(
            e,
            Monomial::var(&e, Var::Z(0)).mul(&Monomial::var(&e, Var::U(0))),
            g("1+2i"),
        );
        let c = p.conj();
        assert_eq!(c.coeff(&Monomial::var(&e, Var::Zb(0)).mul(&Monomial::var(&e, Var::U(0)))), Some(&g("1-2i")));
        assert_eq!(c.conj(), p);
        let re = p.real_part();
        assert_eq!(re.conj(), re);
        let im = p.imag_part();
        assert_eq!(im.conj(), im);
        // p = Re p + i Im p
        assert_eq!(&re + &im.scale(&GaussianRational::i()), p);
    }

    #[test]
    fn display_orders_leading_term_first() {
        let e = VarEnv::new(2, 1);
        let p = &(&MultiPoly::var(e, Var::Z(0)) * &MultiPoly::var(e, Var::Zb(1))).scale(&g("-3")) + &MultiPoly::scalar(e, g("i"));
        assert_eq!(p.to_string(), "-3*z1*zb2 + i");
        let q = MultiPoly::var(e, Var::U(0)).scale(&g("1-i"));
        assert_eq!(q.to_string(), "(1-i)*u1");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = MultiPoly> {
            let e = VarEnv::new(2, 1);
            prop::collection::vec((prop::collection::vec(0u16..3, e.nvars()), -3i64..=3, -2i64..=2), 0..5).prop_map(
                move |terms| {
                    let mut p = MultiPoly::zero(e);
                    for (mut exps, re, im) in terms {
                        // keep w out so conjugation stays defined
                        for x in exps.iter_mut().skip(2 * e.n + e.d) {
                            *x = 0;
                        }
                        p.add_term(Monomial(exps), &GaussianRational::int(re, im));
                    }
                    p
                },
            )
        }

        fn point() -> impl Strategy<Value = Vec<GaussianRational>> {
            prop::collection::vec((-3i64..=3, -3i64..=3), 6).prop_map(|v| v.into_iter().map(|(a, b)| GaussianRational::int(a, b)).collect())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn ring_laws(a in poly(), b in poly(), c in poly()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert!((&a - &a).is_zero());
                prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
            }
        }

        proptest! {
            #[test]
            fn substitution_commutes_with_evaluation(p in poly(), r in poly(), x in point()) {
                let s = p.substitute(Var::U(0), &r).unwrap();
                let mut y = x.clone();
                y[2 * 2] = r.eval(&x);
                prop_assert_eq!(s.eval(&x), p.eval(&y));
            }

            #[test]
            fn substitution_is_a_ring_map(a in poly(), b in poly(), r in poly()) {
                let prod = (&a * &b).substitute(Var::Z(1), &r).unwrap();
                let sep = &a.substitute(Var::Z(1), &r).unwrap() * &b.substitute(Var::Z(1), &r).unwrap();
                prop_assert_eq!(prod, sep);
            }
        }
    }
}

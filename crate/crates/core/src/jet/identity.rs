//! The tangency identity `Re(i g + 2<conj f, z>) = 0` on `v = <zb, z>`.
//!
//! Everything lives in the formal polynomial ring with `z`, `zb`, `u` independent.

use crate::exact::{GaussianRational, MultiPoly, Var, VarEnv};
use crate::model::QuadricModel;

use super::maps::HolMapPair;

/// `<zb, z>_s` for every `s`.
pub fn levi_polys(model: &QuadricModel, env: VarEnv) -> Vec<MultiPoly> {
    (0..model.d()).map(|s| model.levi_poly(env, s)).collect()
}

/// `sum_s (d phi / d u_s) <zb, z>_s`.
pub fn delta(phi: &MultiPoly, model: &QuadricModel) -> MultiPoly {
    let env = phi.env();
    let mut out = MultiPoly::zero(env);
    for (s, l) in levi_polys(model, env).iter().enumerate() {
        out.add_assign(&(&phi.derivative(Var::U(s)) * l));
    }
    out
}

pub fn extract_bidegree(p: &MultiPoly, k: usize, l: usize) -> MultiPoly {
    p.extract_bidegree(k, l)
}

/// Replaces each `w_s` by `u_s + i <zb, z>_s`.
pub fn restrict_to_model(p: &MultiPoly, levi: &[MultiPoly]) -> MultiPoly {
    let env = p.env();
    let mut out = p.clone();
    for (s, l) in levi.iter().enumerate() {
        let rep = &MultiPoly::var(env, Var::U(s)) + &l.scale(&GaussianRational::i());
        out = out.substitute(Var::W(s), &rep).expect("same env");
    }
    out
}

/// `sum_{a,b} conj(x_a) A[a][b] y_b` for vectors of polynomials.
pub fn pairing(model: &QuadricModel, j: usize, x: &[MultiPoly], y: &[MultiPoly]) -> MultiPoly {
    let env = x[0].env();
    let a = model.matrix(j);
    let xc: Vec<MultiPoly> = x.iter().map(MultiPoly::conj).collect();
    let mut out = MultiPoly::zero(env);
    for (r, xr) in xc.iter().enumerate() {
        if xr.is_zero() {
            continue;
        }
        for (c, yc) in y.iter().enumerate() {
            let e = a.get(r, c);
            if !e.is_zero() {
                out.add_assign(&(xr * yc).scale(e));
            }
        }
    }
    out
}

fn z_vector(env: VarEnv) -> Vec<MultiPoly> {
    (0..env.n).map(|i| MultiPoly::var(env, Var::Z(i))).collect()
}

/// One polynomial in `(z, zb, u)` per codimension index; the pair solves the
/// identity iff all of them vanish.
pub fn expand_basic_identity(pair: &HolMapPair, model: &QuadricModel) -> Vec<MultiPoly> {
    let env = pair.env();
    assert_eq!((env.n, env.d), (model.n(), model.d()), "pair and model dimensions differ");
    let levi = levi_polys(model, env);
    let f: Vec<MultiPoly> = pair.f.iter().map(|p| restrict_to_model(p, &levi)).collect();
    let z = z_vector(env);
    (0..model.d())
        .map(|j| {
            let g = restrict_to_model(&pair.g[j], &levi);
            let mut e = g.scale(&GaussianRational::i());
            if any_nonzero(&f) {
                e.add_assign(&pairing(model, j, &f, &z).scale(&GaussianRational::int(2, 0)));
            }
            e.real_part()
        })
        .collect()
}

fn any_nonzero(f: &[MultiPoly]) -> bool {
    f.iter().any(|p| !p.is_zero())
}

pub fn solves_basic_identity(pair: &HolMapPair, model: &QuadricModel) -> bool {
    expand_basic_identity(pair, model).iter().all(MultiPoly::is_zero)
}

/// `Im G_j(z, u + i<zb,z>) - <conj F, F>_j` for a candidate map `(F, G)` of the
/// model into itself; all zero iff the map preserves the model.
pub fn automorphism_defect(pair: &HolMapPair, model: &QuadricModel) -> Vec<MultiPoly> {
    let env = pair.env();
    let levi = levi_polys(model, env);
    let f: Vec<MultiPoly> = pair.f.iter().map(|p| restrict_to_model(p, &levi)).collect();
    (0..model.d())
        .map(|j| {
            let g = restrict_to_model(&pair.g[j], &levi);
            &g.imag_part() - &pairing(model, j, &f, &f)
        })
        .collect()
}

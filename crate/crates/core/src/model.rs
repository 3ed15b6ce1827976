//! Quadric models `Im w_j = conj(z)^T A_j z` and their Levi maps at the origin.

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational, MultiPoly, Rational, Var, VarEnv};

/// An `n x n` matrix equal to its conjugate transpose.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermitianMatrix {
    inner: ExactMatrix,
}

impl HermitianMatrix {
    /// Validates the Hermitian property. Errors name the first offending
    /// entry with 1-based indices (matrix index reported as 1).
    pub fn new(inner: ExactMatrix) -> Result<Self> {
        if !inner.is_square() {
            return Err(Error::InvalidModel(format!(
                "matrix is {}x{}, expected square",
                inner.rows(),
                inner.cols()
            )));
        }
        if let Some((r, c, reason)) = hermitian_violation(&inner) {
            return Err(Error::InvalidEntry {
                matrix: 1,
                row: r + 1,
                col: c + 1,
                reason,
            });
        }
        Ok(Self { inner })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(ExactMatrix::from_ints(rows))
    }

    pub fn size(&self) -> usize {
        self.inner.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.inner
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        self.inner.get(r, c)
    }

    /// `conj(x)^T A y`.
    pub fn form(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        let ay = self.inner.mul_vec(y).expect("vector length checked by caller");
        x.iter()
            .zip(&ay)
            .fold(GaussianRational::zero(), |acc, (a, b)| acc + a.conj() * b)
    }
}

fn hermitian_violation(m: &ExactMatrix) -> Option<(usize, usize, String)> {
    for r in 0..m.rows() {
        for c in r..m.cols() {
            let a = m.get(r, c);
            let b = m.get(c, r);
            if r == c && !a.is_real() {
                return Some((r, c, format!("diagonal entry {a} is not real")));
            }
            if *a != b.conj() {
                return Some((
                    c,
                    r,
                    format!("entry {b} is not the conjugate of entry ({}, {}) = {a}", r + 1, c + 1),
                ));
            }
        }
    }
    None
}

/// Dimensions `(n, d)` and the tuple `(A_1, ..., A_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadricModel {
    n: usize,
    matrices: Vec<HermitianMatrix>,
}

/// Values of the Levi map `z -> (conj(z)^T A_j z)_j`, a real vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviValue(pub Vec<Rational>);

/// Values of the sesquilinear Levi map `(z, z') -> (conj(z)^T A_j z')_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesquiValue(pub Vec<GaussianRational>);

impl LeviValue {
    pub fn to_complex(&self) -> SesquiValue {
        SesquiValue(self.0.iter().cloned().map(GaussianRational::from_real).collect())
    }
}

impl QuadricModel {
    pub fn new(matrices: Vec<HermitianMatrix>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::InvalidModel("codimension d must be at least 1".into()));
        };
        let n = first.size();
        if n == 0 {
            return Err(Error::InvalidModel("CR dimension n must be at least 1".into()));
        }
        for (j, a) in matrices.iter().enumerate() {
            if a.size() != n {
                return Err(Error::InvalidModel(format!(
                    "matrix {} has size {}, expected {n}",
                    j + 1,
                    a.size()
                )));
            }
        }
        Ok(Self { n, matrices })
    }

    /// Validates raw matrices, reporting the offending matrix index on failure.
    pub fn from_matrices(raw: Vec<ExactMatrix>) -> Result<Self> {
        let mut out = Vec::with_capacity(raw.len());
        for (j, m) in raw.into_iter().enumerate() {
            match HermitianMatrix::new(m) {
                Ok(h) => out.push(h),
                Err(Error::InvalidEntry { row, col, reason, .. }) => {
                    return Err(Error::InvalidEntry {
                        matrix: j + 1,
                        row,
                        col,
                        reason,
                    })
                }
                Err(e) => return Err(e),
            }
        }
        Self::new(out)
    }

    pub fn from_int_matrices(raw: &[&[&[i64]]]) -> Result<Self> {
        Self::from_matrices(raw.iter().map(|m| ExactMatrix::from_ints(m)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[HermitianMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, j: usize) -> &HermitianMatrix {
        &self.matrices[j]
    }

    pub fn env(&self) -> VarEnv {
        VarEnv::new(self.n, self.d())
    }

    fn check_len(&self, v: &[GaussianRational]) -> Result<()> {
        if v.len() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            })
        }
    }

    pub fn levi(&self, z: &[GaussianRational]) -> Result<LeviValue> {
        self.check_len(z)?;
        let vals = self
            .matrices
            .iter()
            .map(|a| {
                let v = a.form(z, z);
                debug_assert!(v.is_real(), "Hermitian form with non-real value");
                v.re
            })
            .collect();
        Ok(LeviValue(vals))
    }

    pub fn sesqui(&self, z: &[GaussianRational], zp: &[GaussianRational]) -> Result<SesquiValue> {
        self.check_len(z)?;
        self.check_len(zp)?;
        Ok(SesquiValue(self.matrices.iter().map(|a| a.form(z, zp)).collect()))
    }

    /// Checks `2 S(x, y) = (L(x+y) - L(x) - L(y)) + i (L(x) + L(y) - L(x+iy))`.
    pub fn polarization_check(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Result<bool> {
        let lx = self.levi(x)?;
        let ly = self.levi(y)?;
        let sum: Vec<GaussianRational> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let isum: Vec<GaussianRational> = x.iter().zip(y).map(|(a, b)| a + b.mul_i()).collect();
        let lsum = self.levi(&sum)?;
        let lisum = self.levi(&isum)?;
        let s = self.sesqui(x, y)?;
        Ok((0..self.d()).all(|j| {
            let re = &lsum.0[j] - &lx.0[j] - &ly.0[j];
            let im = &lx.0[j] + &ly.0[j] - &lisum.0[j];
            let two_s = s.0[j].scale(&Rational::from_integer(2.into()));
            two_s == GaussianRational::new(re, im)
        }))
    }

    /// Substitutes `z = C z`; the new matrices are `C^* A_j C`.
    pub fn change_coordinates(&self, c: &ExactMatrix) -> Result<QuadricModel> {
        if c.rows() != self.n || c.cols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: c.rows().max(c.cols()),
            });
        }
        if !c.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let cs = c.conj_transpose();
        let matrices = self
            .matrices
            .iter()
            .map(|a| HermitianMatrix::new(&(&cs * a.matrix()) * c))
            .collect::<Result<Vec<_>>>()?;
        QuadricModel::new(matrices)
    }

    /// `<zb, z>_j = sum_{a,b} zb_a (A_j)_{ab} z_b` as a polynomial in `env`.
    pub fn levi_poly(&self, env: VarEnv, j: usize) -> MultiPoly {
        let a = &self.matrices[j];
        let mut p = MultiPoly::zero(env);
        for r in 0..self.n {
            for c in 0..self.n {
                let e = a.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let m = &MultiPoly::var(env, Var::Zb(r)) * &MultiPoly::var(env, Var::Z(c));
                p.add_assign(&m.scale(e));
            }
        }
        p
    }

    /// All matrices zero.
    pub fn is_flat(&self) -> bool {
        self.matrices.iter().all(|a| a.matrix().is_zero())
    }
}

pub fn unit_vector(n: usize, k: usize) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); n];
    v[k] = GaussianRational::one();
    v
}

pub fn is_zero_vector(v: &[GaussianRational]) -> bool {
    v.iter().all(GaussianRational::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exact::{rat_int, GaussianRational as G};

    fn v(xs: &[&str]) -> Vec<G> {
        xs.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn rejects_non_hermitian_with_location() {
        let bad = vec![
            ExactMatrix::from_ints(&[&[1, 0], &[0, 1]]),
            ExactMatrix::from_ints(&[&[0, 2], &[3, 0]]),
        ];
        match QuadricModel::from_matrices(bad) {
            Err(Error::InvalidEntry { matrix, row, col, .. }) => {
                assert_eq!((matrix, row, col), (2, 2, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
        let complex_diag = ExactMatrix::from_rows(vec![v(&["i"])]).unwrap();
        assert!(matches!(
            QuadricModel::from_matrices(vec![complex_diag]),
            Err(Error::InvalidEntry { matrix: 1, row: 1, col: 1, .. })
        ));
        assert!(QuadricModel::new(vec![]).is_err());
    }

    #[test]
    fn levi_of_codim3_example() {
        let m = catalog::beloshapka_c6_codim3();
        assert_eq!(m.levi(&v(&["1", "0", "0"])).unwrap().0, vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(m.levi(&v(&["1", "1", "0"])).unwrap().0, vec![rat_int(1), rat_int(2), rat_int(0)]);
        assert_eq!(m.levi(&v(&["0", "0", "0"])).unwrap().0, vec![rat_int(0); 3]);
        assert!(matches!(m.levi(&v(&["1"])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn sesqui_of_codim4_example() {
        let m = catalog::ber_c6_codim4();
        let s = m.sesqui(&v(&["1", "0"]), &v(&["0", "1"])).unwrap();
        assert_eq!(s.0, v(&["0", "0", "1", "i"]));
        let z = v(&["1/2+i", "-3"]);
        assert_eq!(m.sesqui(&z, &z).unwrap(), m.levi(&z).unwrap().to_complex());
        assert!(m.sesqui(&v(&["0", "0"]), &z).unwrap().0.iter().all(G::is_zero));
    }

    #[test]
    fn polarization_examples() {
        let c3 = catalog::beloshapka_c6_codim3();
        assert!(c3.polarization_check(&v(&["1", "0", "0"]), &v(&["0", "1", "0"])).unwrap());
        let c4 = catalog::ber_c6_codim4();
        assert!(c4.polarization_check(&v(&["1", "i"]), &v(&["0", "1"])).unwrap());
    }

    #[test]
    fn change_coordinates_examples() {
        let m = catalog::beloshapka_c6_codim3();
        assert_eq!(m.change_coordinates(&ExactMatrix::identity(3)).unwrap(), m);
        let c = ExactMatrix::diagonal(&v(&["2", "1", "1"]));
        let scaled = m.change_coordinates(&c).unwrap();
        for j in 0..3 {
            assert_eq!(*scaled.matrix(j).get(0, 0), m.matrix(j).get(0, 0).scale(&rat_int(4)));
        }
        assert_eq!(
            m.change_coordinates(&ExactMatrix::zeros(3, 3)),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn kernel_alignment_zeroes_first_row_and_column() {
        // Common kernel vector v = (0, 0, 1) of the corner construction.
        let m = catalog::corner_a_not_b();
        let c = ExactMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let aligned = m.change_coordinates(&c).unwrap();
        for a in aligned.matrices() {
            for k in 0..3 {
                assert!(a.get(0, k).is_zero() && a.get(k, 0).is_zero());
            }
        }
    }

    mod props {
        use super::*;
        use crate::random::random_model;
        use proptest::prelude::*;

        fn vector(n: usize) -> impl Strategy<Value = Vec<G>> {
            prop::collection::vec((-3i64..=3, -3i64..=3), n).prop_map(|xs| xs.into_iter().map(|(a, b)| G::int(a, b)).collect())
        }

        fn invertible(n: usize) -> impl Strategy<Value = ExactMatrix> {
            prop::collection::vec((-2i64..=2, -2i64..=2), n * n)
                .prop_map(move |xs| ExactMatrix::from_entries(n, n, xs.into_iter().map(|(a, b)| G::int(a, b)).collect()).unwrap())
                .prop_filter("invertible", |c| c.is_invertible())
        }

        fn setup() -> impl Strategy<Value = (QuadricModel, ExactMatrix, Vec<G>, Vec<G>)> {
            (1usize..=3, 1usize..=3, any::<u64>()).prop_flat_map(|(n, d, seed)| {
                (Just(random_model(n, d, 2, seed)), invertible(n), vector(n), vector(n))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]
            #[test]
            fn levi_invariants((m, c, z, zp) in setup()) {
                let lz = m.levi(&z).unwrap();
                prop_assert_eq!(m.sesqui(&z, &z).unwrap(), lz.to_complex());
                let a = m.sesqui(&z, &zp).unwrap();
                let b = m.sesqui(&zp, &z).unwrap();
                for (x, y) in a.0.iter().zip(&b.0) {
                    prop_assert_eq!(x, &y.conj());
                }
                prop_assert!(m.polarization_check(&z, &zp).unwrap());
                let moved = m.change_coordinates(&c).unwrap();
                let cz = c.mul_vec(&z).unwrap();
                prop_assert_eq!(moved.levi(&z).unwrap(), m.levi(&cz).unwrap());
            }

            #[test]
            fn sesqui_is_conjugate_linear_then_linear((m, _c, z, zp) in setup(), s in (-3i64..=3, -3i64..=3)) {
                let s = G::int(s.0, s.1);
                let sz: Vec<G> = z.iter().map(|x| x * &s).collect();
                let szp: Vec<G> = zp.iter().map(|x| x * &s).collect();
                let base = m.sesqui(&z, &zp).unwrap();
                let left = m.sesqui(&sz, &zp).unwrap();
                let right = m.sesqui(&z, &szp).unwrap();
                for j in 0..m.d() {
                    prop_assert_eq!(&left.0[j], &(&base.0[j] * &s.conj()));
                    prop_assert_eq!(&right.0[j], &(&base.0[j] * &s));
                }
            }
        }
    }
}

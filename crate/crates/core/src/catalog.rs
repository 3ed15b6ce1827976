//! Built-in catalog of worked examples.

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational};
use crate::nondegeneracy::ClassificationReport;
use crate::model::{HermitianMatrix, QuadricModel};

fn model(raw: &[&[&[i64]]]) -> QuadricModel {
    QuadricModel::from_int_matrices(raw).expect("catalog model is Hermitian")
}

/// `Im w = |z|^2`, the sphere-like hyperquadric in `C^2`.
pub fn hyperquadric_c2() -> QuadricModel {
    model(&[&[&[1]]])
}

/// `Im w_1 = |z_1|^2, Im w_2 = 2 Re(z_1 zb_2), Im w_3 = 2 Re(z_1 zb_3)` in `C^6`.
pub fn beloshapka_c6_codim3() -> QuadricModel {
    model(&[
        &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]],
        &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]],
        &[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]],
    ])
}

/// `Im w_1 = |z_1|^2, Im w_2 = |z_2|^2, Im w_3 = 2 Re(z_1 zb_2), Im w_4 = 2 Im(z_1 zb_2)`.
pub fn ber_c6_codim4() -> QuadricModel {
    let i = GaussianRational::i();
    let a4 = ExactMatrix::from_rows(vec![
        vec![GaussianRational::zero(), i.clone()],
        vec![-i, GaussianRational::zero()],
    ])
    .expect("2x2");
    let mut ms: Vec<HermitianMatrix> = [
        &[&[1, 0][..], &[0, 0][..]][..],
        &[&[0, 0], &[0, 1]],
        &[&[0, 1], &[1, 0]],
    ]
    .iter()
    .map(|m| HermitianMatrix::from_ints(m).expect("Hermitian"))
    .collect();
    ms.push(HermitianMatrix::new(a4).expect("Hermitian"));
    QuadricModel::new(ms).expect("valid")
}

/// `diag(1, 0), diag(0, 1)`: product of two hyperquadrics.
pub fn diag_pair_c4() -> QuadricModel {
    model(&[&[&[1, 0], &[0, 0]], &[&[0, 0], &[0, 1]]])
}

/// Independent `2x2` blocks embedded in the top-left corner of `3x3` matrices:
/// linearly independent, with common kernel vector `e_3`.
pub fn corner_a_not_b() -> QuadricModel {
    model(&[
        &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]],
        &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]],
    ])
}

/// `A_1` invertible, `A_2 = 0`: trivial common kernel, dependent tuple.
pub fn flat_b_not_a() -> QuadricModel {
    model(&[&[&[1]], &[&[0]]])
}

/// The real hyperplane `Im w = 0` in `C^2`.
pub fn degenerate_flat() -> QuadricModel {
    model(&[&[&[0]]])
}

/// Fields of a classification report that a catalog model must reproduce.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpectedReport {
    pub condition_a: Option<bool>,
    pub condition_b: Option<bool>,
    pub tumanov: Option<bool>,
    /// Label of the sesquilinear-image verdict (`Dominant`, `NotDominant`, `Unknown`).
    pub sesqui: Option<&'static str>,
}

impl ExpectedReport {
    /// Names of the fields that disagree with `report`.
    pub fn mismatches(&self, report: &ClassificationReport) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut check = |name, want: Option<bool>, got: bool| {
            if want.is_some_and(|w| w != got) {
                out.push(name);
            }
        };
        check("condition_a", self.condition_a, report.condition_a);
        check("condition_b", self.condition_b, report.condition_b);
        check("tumanov", self.tumanov, report.tumanov.holds);
        if self.sesqui.is_some_and(|s| s != report.sesqui_status.label()) {
            out.push("sesqui_status");
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub model: QuadricModel,
    pub provenance: &'static str,
    pub expected: ExpectedReport,
}

fn expect(a: bool, b: bool, tumanov: Option<bool>, sesqui: Option<&'static str>) -> ExpectedReport {
    ExpectedReport {
        condition_a: Some(a),
        condition_b: Some(b),
        tumanov,
        sesqui,
    }
}

pub const NAMES: [&str; 7] = [
    "hyperquadric-c2",
    "beloshapka-c6-codim3",
    "ber-c6-codim4",
    "diag-pair-c4",
    "corner-a-not-b",
    "flat-b-not-a",
    "degenerate-flat",
];

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    let (model, provenance, expected) = match name {
        "hyperquadric-c2" => (
            hyperquadric_c2(),
            "Im w = |z|^2, the Heisenberg hyperquadric in C^2",
            expect(true, true, Some(true), Some("Dominant")),
        ),
        "beloshapka-c6-codim3" => (
            beloshapka_c6_codim3(),
            "codimension 3 in C^6: nondegenerate, yet no linear combination of A_1, A_2, A_3 is invertible",
            expect(true, true, Some(false), None),
        ),
        "ber-c6-codim4" => (
            ber_c6_codim4(),
            "codimension 4 in C^6: nondegenerate, sesquilinear image lies on a quadric cone",
            expect(true, true, Some(true), Some("NotDominant")),
        ),
        "diag-pair-c4" => (
            diag_pair_c4(),
            "diag(1,0), diag(0,1): product of two hyperquadrics, Levi image is the closed positive quadrant",
            expect(true, true, Some(true), Some("Dominant")),
        ),
        "corner-a-not-b" => (
            corner_a_not_b(),
            "independent blocks in the top-left corner: condition (a) without (b)",
            expect(true, false, Some(false), None),
        ),
        "flat-b-not-a" => (
            flat_b_not_a(),
            "A_1 invertible, A_2 = 0: condition (b) without (a)",
            expect(false, true, Some(true), None),
        ),
        "degenerate-flat" => (
            degenerate_flat(),
            "Im w = 0: Levi-flat, infinite-dimensional symmetry algebra",
            expect(false, false, Some(false), None),
        ),
        _ => return None,
    };
    Some(CatalogEntry {
        name: NAMES.iter().find(|&&n| n == name).expect("listed"),
        model,
        provenance,
        expected,
    })
}

pub fn entries() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| lookup(n).expect("listed")).collect()
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    lookup(name).ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nondegeneracy::{classify, ClassifyOptions};

    #[test]
    fn every_entry_reproduces_its_expected_report() {
        for e in entries() {
            let r = classify(&e.model, ClassifyOptions::default());
            assert_eq!(e.expected.mismatches(&r), Vec::<&str>::new(), "{}", e.name);
        }
    }

    #[test]
    fn unknown_names_fail() {
        assert!(matches!(get("nosuch"), Err(Error::UnknownCatalogEntry(_))));
        assert_eq!(get("diag-pair-c4").unwrap().model, diag_pair_c4());
    }
}

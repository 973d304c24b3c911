//! JSON documents for algebras, derivations and summands.
//!
//! A scalar of GF(p^k) is written as its index Σ c_i p^i, where c_i are the
//! coefficients of its residue modulo the field's defining polynomial.

use crate::deriv::{is_derivation, Derivation};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, FiniteField, Scalar};
use crate::liealg::LieAlg;
use crate::linalg::{Mat, Poly, Vector};
use crate::pcyclic::PCyclicSummand;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub field: FieldSpec,
    pub dim: usize,
    /// [i, j, coefficients of [e_i, e_j]] for i < j with a non-zero bracket.
    pub sc: Vec<(usize, usize, Vec<u64>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationDoc {
    pub algebra_hash: String,
    /// Row-major.
    pub matrix: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDoc {
    pub generator: Vec<u64>,
    /// Coefficients low-to-high.
    pub minpoly: Vec<u64>,
    pub eigenvalue: Option<u64>,
    pub r: usize,
}

fn indices(v: &[Scalar]) -> Vec<u64> {
    v.iter().map(|s| s.index()).collect()
}

fn scalars(f: &FiniteField, v: &[u64]) -> Result<Vector> {
    v.iter().map(|&i| f.element(i)).collect()
}

pub fn algebra_doc(l: &LieAlg) -> AlgebraDoc {
    let mut sc: Vec<(usize, usize, Vec<u64>)> = l
        .structure_constants()
        .iter()
        .filter(|(_, _, v)| v.iter().any(|c| !c.is_zero()))
        .map(|(i, j, v)| (*i, *j, indices(v)))
        .collect();
    sc.sort();
    AlgebraDoc {
        field: l.field().spec(),
        dim: l.dim(),
        sc,
        labels: l.labels().map(<[String]>::to_vec),
    }
}

pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<LieAlg> {
    let f = FiniteField::from_spec(&doc.field)?;
    let mut sc = Vec::with_capacity(doc.sc.len());
    for (i, j, v) in &doc.sc {
        if v.len() != doc.dim {
            return Err(Error::Format(format!("bracket [e{i}, e{j}] has {} coefficients", v.len())));
        }
        sc.push((*i, *j, scalars(&f, v)?));
    }
    let l = LieAlg::new(&f, doc.dim, sc)?;
    Ok(match &doc.labels {
        Some(ls) if ls.len() == doc.dim => l.with_labels(ls),
        Some(_) => return Err(Error::Format("one label per basis element".into())),
        None => l,
    })
}

/// Compact JSON of the canonical document.
pub fn canonical_json(l: &LieAlg) -> String {
    serde_json::to_string(&algebra_doc(l)).expect("documents serialize")
}

/// Hex SHA-256 of the canonical JSON.
pub fn algebra_hash(l: &LieAlg) -> String {
    hex::encode(Sha256::digest(canonical_json(l).as_bytes()))
}

pub fn algebra_to_json(l: &LieAlg) -> String {
    serde_json::to_string_pretty(&algebra_doc(l)).expect("documents serialize")
}

pub fn algebra_from_json(s: &str) -> Result<LieAlg> {
    let doc: AlgebraDoc = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
    algebra_from_doc(&doc)
}

pub fn derivation_doc(l: &LieAlg, d: &Derivation) -> DerivationDoc {
    let m = d.matrix();
    DerivationDoc {
        algebra_hash: algebra_hash(l),
        matrix: (0..m.rows()).map(|r| indices(m.row(r))).collect(),
    }
}

pub fn derivation_to_json(l: &LieAlg, d: &Derivation) -> String {
    serde_json::to_string_pretty(&derivation_doc(l, d)).expect("documents serialize")
}

/// Rejects documents written for a different algebra and maps that are
/// not derivations.
pub fn derivation_from_json(l: &LieAlg, s: &str) -> Result<Derivation> {
    let doc: DerivationDoc = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
    let found = algebra_hash(l);
    if doc.algebra_hash != found {
        return Err(Error::HashMismatch {
            expected: doc.algebra_hash,
            found,
        });
    }
    let f = l.field();
    let rows: Vec<Vector> = doc.matrix.iter().map(|r| scalars(f, r)).collect::<Result<_>>()?;
    if rows.len() != l.dim() || rows.iter().any(|r| r.len() != l.dim()) {
        return Err(Error::Format(format!("matrix must be {0}x{0}", l.dim())));
    }
    let m = Mat::from_rows(f, &rows)?;
    if !is_derivation(l, &m) {
        return Err(Error::Hypothesis("stored map is not a derivation".into()));
    }
    Ok(Derivation::unchecked(m))
}

pub fn summand_doc(s: &PCyclicSummand) -> SummandDoc {
    SummandDoc {
        generator: indices(&s.generator),
        minpoly: indices(s.minpoly.coeffs()),
        eigenvalue: s.eigenvalue.map(Scalar::index),
        r: s.r,
    }
}

pub fn summand_from_doc(f: &FiniteField, doc: &SummandDoc) -> Result<PCyclicSummand> {
    Ok(PCyclicSummand {
        generator: scalars(f, &doc.generator)?,
        r: doc.r,
        minpoly: Poly::new(f, scalars(f, &doc.minpoly)?),
        eigenvalue: doc.eigenvalue.map(|i| f.element(i)).transpose()?,
    })
}

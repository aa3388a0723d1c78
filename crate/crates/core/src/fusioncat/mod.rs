//! Skeletal pivotal fusion categories: fusion ring, F-symbols, pivotal
//! coefficients, and the quantities derived from them.

mod dims;
mod gauge;
mod object;
mod pivotal;
mod spec_io;
mod validate;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactnum::{Cyc, ExactError};
use crate::matrix::Matrix;

pub use dims::{
    fp_dimension, fp_dimension_simple, global_dimension, is_pseudo_unitary, normed_square,
};
pub use gauge::{gauge_transform, random_gauge, reverse_category, transport_pivotal, Gauge};
pub use object::{ObjectExpr, ParsedExpr};
pub use pivotal::{canonical_pivotal, enumerate_pivotal_structures, PivotalCandidate};
pub use spec_io::{FEntryJson, SpecFile};
pub use validate::{
    double_dual_table, validate, validate_spec, CheckGroup, ValidationReport, DUALITY,
    F_INVERTIBILITY, PENTAGON, PIVOTAL_DUAL_INVERSE, PIVOTAL_MONOIDALITY, RING_AXIOMS,
    UNIT_NORMALIZATION,
};

/// Index of a simple object in label order.
pub type Label = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("category has no simple objects")]
    Empty,
    #[error("dual map is not an involution fixing the unit")]
    BadDual,
    #[error("fusion multiplicity N[{a},{b}->{c}] = {n} not supported (multiplicity-free only)")]
    NotMultiplicityFree {
        a: String,
        b: String,
        c: String,
        n: u32,
    },
    #[error("F-entry ({0}) is not admissible")]
    InadmissibleF(String),
    #[error("duplicate F-entry ({0})")]
    DuplicateF(String),
    #[error("F-matrix for ({0}) is singular")]
    SingularF(String),
    #[error("value conductor {value} does not divide category conductor {category}")]
    ConductorMismatch { value: u32, category: u32 },
    #[error("pivotal data missing")]
    MissingPivotal,
    #[error("pivotal coefficient for `{0}` missing or zero")]
    BadPivotal(String),
    #[error("zero object")]
    ZeroObject,
    #[error("bad object expression: {0}")]
    BadExpr(String),
    #[error("gauge: {0}")]
    Gauge(String),
    #[error("spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Grothendieck ring data: labels, unit, duals and multiplicities `N_{ab}^c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: Label,
    dual: Vec<Label>,
    mult: Vec<u32>,
}

impl FusionRing {
    pub fn new(
        labels: Vec<String>,
        unit: Label,
        dual: Vec<Label>,
        entries: impl IntoIterator<Item = (Label, Label, Label, u32)>,
    ) -> Result<FusionRing, FusionError> {
        let r = labels.len();
        if r == 0 {
            return Err(FusionError::Empty);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(FusionError::DuplicateLabel(l.clone()));
            }
        }
        if unit >= r || dual.len() != r || dual.iter().any(|&d| d >= r) {
            return Err(FusionError::BadDual);
        }
        if dual[unit] != unit || (0..r).any(|a| dual[dual[a]] != a) {
            return Err(FusionError::BadDual);
        }
        let mut mult = vec![0; r * r * r];
        for (a, b, c, n) in entries {
            mult[(a * r + b) * r + c] = n;
        }
        Ok(FusionRing {
            labels,
            unit,
            dual,
            mult,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn name(&self, a: Label) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, name: &str) -> Option<Label> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn unit(&self) -> Label {
        self.unit
    }

    pub fn dual(&self, a: Label) -> Label {
        self.dual[a]
    }

    pub fn n(&self, a: Label, b: Label, c: Label) -> u32 {
        let r = self.rank();
        self.mult[(a * r + b) * r + c]
    }

    pub fn admissible(&self, a: Label, b: Label, c: Label) -> bool {
        self.n(a, b, c) > 0
    }

    /// Channels `c` with `N_{ab}^c > 0`, in label order.
    pub fn fuse(&self, a: Label, b: Label) -> Vec<Label> {
        (0..self.rank())
            .filter(|&c| self.admissible(a, b, c))
            .collect()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.mult.iter().all(|&n| n <= 1)
    }

    /// Left multiplication matrix of `a`: entry `[c][b] = N_{ab}^c`.
    pub fn fusion_matrix(&self, a: Label) -> Vec<Vec<u32>> {
        let r = self.rank();
        (0..r)
            .map(|c| (0..r).map(|b| self.n(a, b, c)).collect())
            .collect()
    }

    /// Ring-axiom violations, empty when the ring is well formed.
    pub fn axiom_failures(&self) -> Vec<String> {
        let r = self.rank();
        let u = self.unit;
        let nm = |a: Label| self.labels[a].as_str();
        let mut out = Vec::new();
        for a in 0..r {
            for b in 0..r {
                let d = u32::from(a == b);
                if self.n(u, a, b) != d || self.n(a, u, b) != d {
                    out.push(format!("unit fusion fails at ({}, {})", nm(a), nm(b)));
                }
                let e = u32::from(b == self.dual[a]);
                if self.n(a, b, u) != e {
                    out.push(format!(
                        "N[{},{}->unit] inconsistent with duals",
                        nm(a),
                        nm(b)
                    ));
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let lhs: u32 = (0..r).map(|e| self.n(a, b, e) * self.n(e, c, d)).sum();
                        let rhs: u32 = (0..r).map(|f| self.n(b, c, f) * self.n(a, f, d)).sum();
                        if lhs != rhs {
                            out.push(format!(
                                "associativity fails at ({}, {}, {}; {})",
                                nm(a),
                                nm(b),
                                nm(c),
                                nm(d)
                            ));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Sparse F-symbol table; admissible entries not stored read as 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FSymbolSet {
    entries: BTreeMap<[Label; 6], Cyc>,
}

impl FSymbolSet {
    pub fn new() -> FSymbolSet {
        FSymbolSet::default()
    }

    pub fn set(&mut self, key: [Label; 6], value: Cyc) {
        self.entries.insert(key, value);
    }

    /// Raw lookup, `None` for unspecified entries.
    pub fn stored(&self, key: &[Label; 6]) -> Option<&Cyc> {
        self.entries.get(key)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[Label; 6], &Cyc)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Scalars `t(a)` by which the pivotal structure acts on simples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotalData {
    pub t: Vec<Cyc>,
}

/// Row/column channel lists and matrix of one `F^{abc}_d`.
#[derive(Debug, Clone)]
pub struct FMatrix {
    pub es: Vec<Label>,
    pub fs: Vec<Label>,
    pub m: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    pub name: String,
    pub conductor: u32,
    pub ring: FusionRing,
    pub f: FSymbolSet,
    pub pivotal: Option<PivotalData>,
}

impl Category {
    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn label(&self, name: &str) -> Result<Label, FusionError> {
        self.ring
            .index_of(name)
            .ok_or_else(|| FusionError::UnknownLabel(name.to_string()))
    }

    /// `[F^{abc}_d]_{e,f}`, with unspecified admissible entries equal to 1
    /// and inadmissible ones 0.
    pub fn f_value(&self, a: Label, b: Label, c: Label, d: Label, e: Label, f: Label) -> Cyc {
        let r = &self.ring;
        if !(r.admissible(a, b, e)
            && r.admissible(e, c, d)
            && r.admissible(b, c, f)
            && r.admissible(a, f, d))
        {
            return Cyc::zero();
        }
        self.f
            .stored(&[a, b, c, d, e, f])
            .cloned()
            .unwrap_or_else(Cyc::one)
    }

    pub fn f_matrix(&self, a: Label, b: Label, c: Label, d: Label) -> FMatrix {
        let r = &self.ring;
        let n = r.rank();
        let es: Vec<Label> = (0..n)
            .filter(|&e| r.admissible(a, b, e) && r.admissible(e, c, d))
            .collect();
        let fs: Vec<Label> = (0..n)
            .filter(|&f| r.admissible(b, c, f) && r.admissible(a, f, d))
            .collect();
        let rows = es
            .iter()
            .map(|&e| fs.iter().map(|&f| self.f_value(a, b, c, d, e, f)).collect())
            .collect::<Vec<Vec<Cyc>>>();
        let m = if es.is_empty() {
            Matrix::zeros(0, fs.len())
        } else {
            Matrix::from_dense(rows)
        };
        FMatrix { es, fs, m }
    }

    pub fn pivotal(&self) -> Result<&PivotalData, FusionError> {
        self.pivotal.as_ref().ok_or(FusionError::MissingPivotal)
    }

    pub fn with_pivotal(&self, p: PivotalData) -> Category {
        Category {
            pivotal: Some(p),
            ..self.clone()
        }
    }

    /// Human-readable form of a label tuple.
    pub fn names(&self, ls: &[Label]) -> String {
        ls.iter()
            .map(|&l| self.ring.name(l))
            .collect::<Vec<_>>()
            .join(",")
    }
}

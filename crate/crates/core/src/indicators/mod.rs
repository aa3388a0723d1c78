//! The rotation operator `E_V^(n)` on `Hom(1, V^{⊗n})`, higher
//! Frobenius-Schur indicators, Frobenius-Schur endomorphism scalars and
//! executable forms of the theorems relating them.

mod fs;
mod report;

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::exactnum::{Cyc, ExactError};
use crate::fusioncat::{Category, FusionError, Label, ObjectExpr};
use crate::homcalc::{Calc, HomError, LinMap, Side, Word};
use crate::matrix::Matrix;

pub use report::{check_fs_theorems, IndicatorCell, IndicatorReport, TheoremReport};

/// Largest `dim Hom(1, V^{⊗n})` handled unless configured otherwise.
pub const DEFAULT_DIMENSION_GUARD: usize = 4096;

const WORD_GUARD: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndicatorError {
    #[error("split position {k} out of range for a word of length {len}")]
    BadSplit { k: usize, len: usize },
    #[error("n must be positive")]
    ZeroN,
    #[error("inadmissible Frobenius-Schur index (n={n}, l={l}, r={r})")]
    BadFsIndex { n: usize, l: usize, r: usize },
    #[error("hom-space dimension {dim} exceeds the guard {guard}")]
    Guard { dim: u128, guard: usize },
    #[error("Frobenius-Schur endomorphism of a simple object is not scalar")]
    NotScalar,
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A linear map `Hom(1, source) -> Hom(1, target)` between right-nested
/// words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMap {
    pub source: Vec<Label>,
    pub target: Vec<Label>,
    pub matrix: Matrix,
}

/// One orbit of words under rotation, with the product of the blocks
/// around it.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub rep: usize,
    pub period: usize,
    pub cycle: Matrix,
}

/// `E_V^(n)` as a permutation of word blocks.
#[derive(Debug, Clone)]
pub struct RotationOperator {
    pub object: ObjectExpr,
    pub n: usize,
    pub summands: Vec<Label>,
    /// Words over summand indices with nonzero hom dimension.
    pub words: Vec<Vec<usize>>,
    pub offsets: Vec<usize>,
    /// `blocks[i]` maps word `i` to its left rotation `targets[i]`.
    pub blocks: Vec<HomMap>,
    pub targets: Vec<usize>,
    pub orbits: Vec<Orbit>,
    pub total_dimension: usize,
}

impl RotationOperator {
    /// The full matrix on `⊕_w Hom(1, w)`.
    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.total_dimension, self.total_dimension);
        for (i, b) in self.blocks.iter().enumerate() {
            m.place(self.offsets[self.targets[i]], self.offsets[i], &b.matrix);
        }
        m
    }

    /// `Tr(E^r)`, summed over rotation orbits.
    pub fn trace_power(&self, r: i64) -> Result<Cyc, ExactError> {
        let rr = r.rem_euclid(self.n as i64) as usize;
        if rr == 0 {
            return Ok(Cyc::from_int(self.total_dimension as i64));
        }
        let mut acc = Cyc::zero();
        for o in &self.orbits {
            if rr.is_multiple_of(o.period) {
                let tr = o.cycle.pow((rr / o.period) as u32).trace();
                acc = acc + Cyc::from_int(o.period as i64) * tr;
            }
        }
        Ok(acc)
    }

    /// `(E^(n))^n = id`, checked orbit by orbit.
    pub fn power_is_identity(&self) -> bool {
        self.orbits
            .iter()
            .all(|o| o.cycle.pow((self.n / o.period) as u32).is_identity())
    }

    pub fn render(&self, names: &[String]) -> String {
        let word = |w: &[usize]| {
            w.iter()
                .map(|&j| names[self.summands[j]].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = format!(
            "rotation operator, n = {}, dimension {}\n",
            self.n, self.total_dimension
        );
        for (i, b) in self.blocks.iter().enumerate() {
            out.push_str(&format!(
                "({}) -> ({}) {:?}\n",
                word(&self.words[i]),
                word(&self.words[self.targets[i]]),
                b.matrix
            ));
        }
        out
    }
}

/// Indicator computations on one pivotal category.
pub struct Indicators<'c> {
    calc: Calc<'c>,
    guard: usize,
    bends: RefCell<HashMap<(Vec<Label>, usize), Arc<Matrix>>>,
}

impl<'c> Indicators<'c> {
    pub fn new(cat: &'c Category) -> Result<Indicators<'c>, IndicatorError> {
        cat.pivotal()?;
        Ok(Indicators {
            calc: Calc::new(cat),
            guard: DEFAULT_DIMENSION_GUARD,
            bends: RefCell::new(HashMap::new()),
        })
    }

    pub fn with_guard(mut self, guard: usize) -> Indicators<'c> {
        self.guard = guard;
        self
    }

    pub fn calc(&self) -> &Calc<'c> {
        &self.calc
    }

    pub fn category(&self) -> &Category {
        self.calc.category()
    }

    /// `E_{V,W}` for `V = x_1…x_k`, `W = x_{k+1}…x_n`: bend `V` over the top
    /// and apply `j^{-1}` on it.
    pub fn e_map(&self, letters: &[Label], k: usize) -> Result<HomMap, IndicatorError> {
        if k == 0 || k >= letters.len() {
            return Err(IndicatorError::BadSplit {
                k,
                len: letters.len(),
            });
        }
        self.hom_map(letters, k)
    }

    fn hom_map(&self, letters: &[Label], k: usize) -> Result<HomMap, IndicatorError> {
        let mut target = letters[k..].to_vec();
        target.extend_from_slice(&letters[..k]);
        Ok(HomMap {
            source: letters.to_vec(),
            target,
            matrix: (*self.bend(letters, k)?).clone(),
        })
    }

    /// The bend with `1 ≤ k ≤ len`; `k = len` is `E_{V,I}`.
    fn bend(&self, letters: &[Label], k: usize) -> Result<Arc<Matrix>, IndicatorError> {
        let key = (letters.to_vec(), k);
        if let Some(m) = self.bends.borrow().get(&key) {
            return Ok(m.clone());
        }
        let calc = &self.calc;
        let x = Word::right_nested(letters);
        let d = calc.dim(&x, calc.unit());
        let m = if d == 0 {
            Matrix::zeros(0, 0)
        } else {
            let v = Word::right_nested(&letters[..k]);
            let vd = calc.dual_word(&v);
            let mut s = calc.unit_state();
            s = calc.insert_at(s, 0, &calc.db_word(&vd), calc.db_vec(&vd));
            s = calc.insert_at(s, k, &x, Arc::new(Matrix::identity(d)));
            s = calc.ev_at(s, 0, &v)?;
            let tinv = calc.pivotal_scalar(&letters[..k])?.inv()?;
            s.mat.scale(&tinv)
        };
        let m = Arc::new(m);
        self.bends.borrow_mut().insert(key, m.clone());
        Ok(m)
    }

    /// `dim Hom(1, V^{⊗n})` from the fusion rules, saturating.
    pub fn hom_dimension_power(&self, v: &ObjectExpr, n: usize) -> u128 {
        let ring = &self.category().ring;
        let r = ring.rank();
        let mut x = vec![0u128; r];
        x[ring.unit()] = 1;
        for _ in 0..n {
            let mut y = vec![0u128; r];
            for (b, &xb) in x.iter().enumerate() {
                if xb == 0 {
                    continue;
                }
                for &(s, mult) in v.terms() {
                    for c in ring.fuse(b, s) {
                        let add = xb.saturating_mul(u128::from(mult) * u128::from(ring.n(b, s, c)));
                        y[c] = y[c].saturating_add(add);
                    }
                }
            }
            x = y;
        }
        x[ring.unit()]
    }

    fn check_guard(&self, v: &ObjectExpr, n: usize) -> Result<(), IndicatorError> {
        let dim = self.hom_dimension_power(v, n);
        if dim > self.guard as u128 {
            return Err(IndicatorError::Guard {
                dim,
                guard: self.guard,
            });
        }
        let words = (v.summands().len() as u128).saturating_pow(n as u32);
        if words > WORD_GUARD {
            return Err(IndicatorError::Guard {
                dim: words,
                guard: WORD_GUARD as usize,
            });
        }
        Ok(())
    }

    pub fn rotation_operator(
        &self,
        v: &ObjectExpr,
        n: usize,
    ) -> Result<RotationOperator, IndicatorError> {
        if v.is_zero() {
            return Err(FusionError::ZeroObject.into());
        }
        if n == 0 {
            return Err(IndicatorError::ZeroN);
        }
        self.check_guard(v, n)?;
        let summands = v.summands();
        let m = summands.len();
        let mut words = Vec::new();
        let mut dims = Vec::new();
        let mut cur = vec![0usize; n];
        loop {
            let labels: Vec<Label> = cur.iter().map(|&j| summands[j]).collect();
            let d = self.calc.hom_dimension(&labels);
            if d > 0 {
                words.push(cur.clone());
                dims.push(d);
            }
            let mut i = n;
            while i > 0 && cur[i - 1] == m - 1 {
                cur[i - 1] = 0;
                i -= 1;
            }
            if i == 0 {
                break;
            }
            cur[i - 1] += 1;
        }
        let index: HashMap<Vec<usize>, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut offsets = Vec::with_capacity(words.len());
        let mut total = 0;
        for d in &dims {
            offsets.push(total);
            total += d;
        }
        let mut blocks = Vec::with_capacity(words.len());
        let mut targets = Vec::with_capacity(words.len());
        for w in &words {
            let labels: Vec<Label> = w.iter().map(|&j| summands[j]).collect();
            let mut rot = w.clone();
            rot.rotate_left(1);
            let t = *index.get(&rot).ok_or(HomError::LetterMismatch)?;
            blocks.push(self.hom_map(&labels, 1)?);
            targets.push(t);
        }
        let mut seen = vec![false; words.len()];
        let mut orbits = Vec::new();
        for i in 0..words.len() {
            if seen[i] {
                continue;
            }
            let mut cycle = Matrix::identity(dims[i]);
            let mut j = i;
            let mut period = 0;
            loop {
                seen[j] = true;
                cycle = blocks[j].matrix.mul(&cycle);
                j = targets[j];
                period += 1;
                if j == i {
                    break;
                }
            }
            orbits.push(Orbit {
                rep: i,
                period,
                cycle,
            });
        }
        Ok(RotationOperator {
            object: v.clone(),
            n,
            summands,
            words,
            offsets,
            blocks,
            targets,
            orbits,
            total_dimension: total,
        })
    }

    /// `ν_{n,r}(V) = Tr((E_V^(n))^r)`.
    pub fn indicator(&self, v: &ObjectExpr, n: usize, r: i64) -> Result<Cyc, IndicatorError> {
        Ok(self.rotation_operator(v, n)?.trace_power(r)?)
    }

    /// `(E_V^(n))^n = id`, together with `E_{V,WU} E_{U,VW} = E_{UV,W}` on
    /// every orbit representative.
    pub fn check_power_identity(&self, v: &ObjectExpr, n: usize) -> Result<bool, IndicatorError> {
        let rot = self.rotation_operator(v, n)?;
        if !rot.power_is_identity() {
            return Ok(false);
        }
        for o in &rot.orbits {
            let labels: Vec<Label> = rot.words[o.rep].iter().map(|&j| rot.summands[j]).collect();
            if !self.check_e_monoidal_at(&labels, 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `E_{V,WU} ∘ E_{U,VW} = E_{UV,W}` with `|U| = k` and every `|V| ≥ 1`;
    /// `|UV| = n` compares against the identity.
    pub fn check_e_monoidal_at(&self, letters: &[Label], k: usize) -> Result<bool, IndicatorError> {
        let n = letters.len();
        if k == 0 || k > n {
            return Err(IndicatorError::BadSplit { k, len: n });
        }
        let first = self.bend(letters, k)?;
        let mut rotated = letters[k..].to_vec();
        rotated.extend_from_slice(&letters[..k]);
        for m in 1..=(n - k) {
            let lhs = self.bend(&rotated, m)?.mul(&first);
            let ok = if k + m == n {
                lhs.is_identity() || lhs.rows() == 0
            } else {
                lhs == *self.bend(letters, k + m)?
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every split of a word.
    pub fn check_e_monoidal(&self, letters: &[Label]) -> Result<bool, IndicatorError> {
        for k in 1..letters.len() {
            if !self.check_e_monoidal_at(letters, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn ptr(&self, m: &LinMap, side: Side) -> Result<Cyc, IndicatorError> {
        Ok(self.calc.ptr(m, side)?)
    }

    pub fn ptr_id(&self, a: Label, side: Side) -> Result<Cyc, IndicatorError> {
        self.ptr(&self.calc.identity(&Word::Leaf(a)), side)
    }

    /// `ptr_l(id_a) = ptr_r(id_a)` for every simple `a`.
    pub fn is_spherical(&self) -> Result<bool, IndicatorError> {
        for a in 0..self.calc.rank() {
            if self.ptr_id(a, Side::L)? != self.ptr_id(a, Side::R)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `E_{V,W}` with `V` the first `k` letters.
pub fn e_map(cat: &Category, letters: &[Label], k: usize) -> Result<HomMap, IndicatorError> {
    Indicators::new(cat)?.e_map(letters, k)
}

pub fn rotation_operator(
    cat: &Category,
    v: &ObjectExpr,
    n: usize,
) -> Result<RotationOperator, IndicatorError> {
    Indicators::new(cat)?.rotation_operator(v, n)
}

pub fn indicator(cat: &Category, v: &ObjectExpr, n: usize, r: i64) -> Result<Cyc, IndicatorError> {
    Indicators::new(cat)?.indicator(v, n, r)
}

pub fn check_power_identity(
    cat: &Category,
    v: &ObjectExpr,
    n: usize,
) -> Result<bool, IndicatorError> {
    Indicators::new(cat)?.check_power_identity(v, n)
}

pub fn ptr(cat: &Category, m: &LinMap, side: Side) -> Result<Cyc, IndicatorError> {
    Indicators::new(cat)?.ptr(m, side)
}

pub fn is_spherical(cat: &Category) -> Result<bool, IndicatorError> {
    Indicators::new(cat)?.is_spherical()
}

pub fn fs_scalar(
    cat: &Category,
    a: Label,
    n: usize,
    l: usize,
    r: usize,
) -> Result<Cyc, IndicatorError> {
    Indicators::new(cat)?.fs_scalar(a, n, l, r)
}

/// Whether `v` lies in `Q(ζ_n)`: fixed by every automorphism of
/// `Q(ζ_M)`, `M = lcm(conductor, n)`, that fixes `ζ_n`.
pub fn in_cyclotomic_subfield(v: &Cyc, n: u32) -> bool {
    let m = v.conductor().lcm(&n);
    (1..m)
        .filter(|k| k % n == 1 % n && k.gcd(&m) == 1)
        .all(|k| v.galois(i64::from(k)) == *v)
}

//! Fusion-tree bases of hom-spaces and exact matrices of structural
//! morphisms (associators, evaluation and coevaluation, pivotal structure,
//! duals of morphisms, partial traces).
//!
//! A morphism `f: X -> Y` between words is stored as one matrix per simple
//! channel `c`, acting by post-composition `Hom(c, X) -> Hom(c, Y)`. Most
//! computations propagate a [`State`] (a set of vectors in `Hom(c, W)`)
//! through a list of local [`Op`]s, so large words never need their full
//! structural matrices built.

mod word;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactnum::{Cyc, ExactError};
use crate::fusioncat::{Category, FusionError, Label};
use crate::matrix::{Matrix, MatrixBuilder};

pub use word::{FusionTree, Side, TensorWord, Word};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("split position {k} out of range for word of length {len}")]
    BadSplit { k: usize, len: usize },
    #[error("channel ({0}) is not admissible")]
    Inadmissible(String),
    #[error("morphism is not an endomorphism")]
    NotEndomorphism,
    #[error("words do not have the same letters")]
    LetterMismatch,
    #[error("evaluation for `{0}` is undefined (singular F-entry)")]
    NoEvaluation(String),
    #[error("F-matrix ({0}) is singular")]
    SingularF(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Basis layout of the formal product `L ⊗ R` at every channel.
#[derive(Debug)]
pub struct Layout {
    pub dims: Vec<usize>,
    /// Per channel: `(c1, c2, offset)` in basis order.
    pub pairs: Vec<Vec<(Label, Label, usize)>>,
    offsets: Vec<Vec<usize>>,
    rank: usize,
}

impl Layout {
    pub fn offset(&self, c: Label, c1: Label, c2: Label) -> Option<usize> {
        let o = self.offsets[c][c1 * self.rank + c2];
        (o != NONE).then_some(o)
    }
}

#[derive(Debug)]
struct FMove {
    es: Vec<Label>,
    fs: Vec<Label>,
    epos: Vec<usize>,
    fpos: Vec<usize>,
    m: Matrix,
    minv: Option<Matrix>,
}

/// A morphism between words, one block per channel.
#[derive(Clone, PartialEq, Eq)]
pub struct LinMap {
    pub source: Word,
    pub target: Word,
    pub blocks: Vec<Matrix>,
}

impl LinMap {
    pub fn compose(&self, inner: &LinMap) -> LinMap {
        assert_eq!(self.source, inner.target, "composing incompatible maps");
        LinMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&inner.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        assert!(self.source == other.source && self.target == other.target);
        LinMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Cyc) -> LinMap {
        LinMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.blocks.iter().all(|b| b.is_identity())
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// `Some(λ)` when every block is `λ·id` for one common λ.
    pub fn as_scalar(&self) -> Option<Cyc> {
        let mut lam: Option<Cyc> = None;
        for b in &self.blocks {
            if b.rows() == 0 {
                continue;
            }
            let s = b.as_scalar()?;
            match &lam {
                None => lam = Some(s),
                Some(l) if *l == s => {}
                Some(_) => return None,
            }
        }
        Some(lam.unwrap_or_else(Cyc::zero))
    }

    /// The block on `Hom(c, −)`.
    pub fn block(&self, c: Label) -> &Matrix {
        &self.blocks[c]
    }

    /// Text rendering: one matrix of Cyc encodings per nonempty channel.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = format!("{:?} -> {:?}\n", self.source, self.target);
        for (c, b) in self.blocks.iter().enumerate() {
            if b.rows() == 0 && b.cols() == 0 {
                continue;
            }
            out.push_str(&format!(
                "channel {} ({}x{}):\n",
                names[c],
                b.rows(),
                b.cols()
            ));
            for row in b.to_dense() {
                let cells: Vec<String> = row
                    .iter()
                    .map(|x| serde_json::to_string(&x.to_json()).unwrap_or_default())
                    .collect();
                out.push_str(&format!("  [{}]\n", cells.join(", ")));
            }
        }
        out
    }
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinMap {:?} -> {:?}", self.source, self.target)?;
        for (c, b) in self.blocks.iter().enumerate() {
            if b.rows() > 0 || b.cols() > 0 {
                writeln!(f, "[{c}] {b:?}")?;
            }
        }
        Ok(())
    }
}

/// Vectors of `Hom(channel, word)`, one per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    pub word: Word,
    pub channel: Label,
    pub mat: Matrix,
}

/// A local rewrite of a [`State`] at the subword addressed by `path`.
#[derive(Clone, Debug)]
pub enum Op {
    /// `(A⊗B)⊗C -> A⊗(B⊗C)`, or the inverse.
    Assoc {
        path: Vec<Side>,
        inverse: bool,
    },
    /// Post-compose with a morphism whose source is the subword.
    Apply {
        path: Vec<Side>,
        map: Arc<LinMap>,
    },
    /// Tensor a vector of `Hom(1, word)` onto the subword from `side`.
    /// Each state column is paired with each vector column.
    Insert {
        path: Vec<Side>,
        side: Side,
        word: Word,
        vec: Arc<Matrix>,
    },
    Scale(Cyc),
}

impl Op {
    fn prefixed(self, prefix: &[Side]) -> Op {
        let join = |p: Vec<Side>| {
            let mut q = prefix.to_vec();
            q.extend(p);
            q
        };
        match self {
            Op::Assoc { path, inverse } => Op::Assoc {
                path: join(path),
                inverse,
            },
            Op::Apply { path, map } => Op::Apply {
                path: join(path),
                map,
            },
            Op::Insert {
                path,
                side,
                word,
                vec,
            } => Op::Insert {
                path: join(path),
                side,
                word,
                vec,
            },
            s @ Op::Scale(_) => s,
        }
    }
}

fn with(prefix: &[Side], tail: &[Side]) -> Vec<Side> {
    let mut p = prefix.to_vec();
    p.extend_from_slice(tail);
    p
}

fn rights(k: usize) -> Vec<Side> {
    vec![Side::R; k]
}

enum RootOp<'a> {
    Assoc(bool),
    Apply(&'a LinMap),
    Insert(Side, &'a Word, &'a Matrix),
}

/// Computation context for one category; caches layouts and duality data.
pub struct Calc<'c> {
    cat: &'c Category,
    rank: usize,
    unit: Label,
    fm: Vec<Option<FMove>>,
    ev: Vec<Option<Cyc>>,
    t: Option<Vec<Cyc>>,
    dims: RefCell<HashMap<Word, Arc<Vec<usize>>>>,
    layouts: RefCell<HashMap<(Word, Word), Arc<Layout>>>,
    dbs: RefCell<HashMap<Word, Arc<Matrix>>>,
}

impl<'c> Calc<'c> {
    pub fn new(cat: &'c Category) -> Calc<'c> {
        let ring = &cat.ring;
        let rank = ring.rank();
        let mut fm = Vec::with_capacity(rank.pow(4));
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    for d in 0..rank {
                        let f = cat.f_matrix(a, b, c, d);
                        if f.es.is_empty() && f.fs.is_empty() {
                            fm.push(None);
                            continue;
                        }
                        let mut epos = vec![NONE; rank];
                        let mut fpos = vec![NONE; rank];
                        for (i, &e) in f.es.iter().enumerate() {
                            epos[e] = i;
                        }
                        for (i, &x) in f.fs.iter().enumerate() {
                            fpos[x] = i;
                        }
                        let minv = if f.m.is_square() {
                            f.m.inverse().ok()
                        } else {
                            None
                        };
                        fm.push(Some(FMove {
                            es: f.es,
                            fs: f.fs,
                            epos,
                            fpos,
                            m: f.m,
                            minv,
                        }));
                    }
                }
            }
        }
        let unit = ring.unit();
        let ev = (0..rank)
            .map(|a| {
                let ad = ring.dual(a);
                cat.f_value(a, ad, a, a, unit, unit).inv().ok()
            })
            .collect();
        let t = cat.pivotal.as_ref().map(|p| p.t.clone());
        Calc {
            cat,
            rank,
            unit,
            fm,
            ev,
            t,
            dims: RefCell::new(HashMap::new()),
            layouts: RefCell::new(HashMap::new()),
            dbs: RefCell::new(HashMap::new()),
        }
    }

    /// Same category with the pivotal coefficients replaced.
    pub fn set_pivotal(&mut self, t: Option<Vec<Cyc>>) {
        self.t = t;
    }

    pub fn category(&self) -> &Category {
        self.cat
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> Label {
        self.unit
    }

    fn fmove(&self, a: Label, b: Label, c: Label, d: Label) -> &FMove {
        let r = self.rank;
        self.fm[((a * r + b) * r + c) * r + d]
            .as_ref()
            .expect("F-move requested for inadmissible channel")
    }

    pub fn ev_coefficient(&self, a: Label) -> Result<Cyc, HomError> {
        self.ev[a]
            .clone()
            .ok_or_else(|| HomError::NoEvaluation(self.cat.ring.name(a).to_string()))
    }

    pub fn t(&self, a: Label) -> Result<Cyc, HomError> {
        Ok(self.t.as_ref().ok_or(FusionError::MissingPivotal)?[a].clone())
    }

    /// `Π t(x_i)` over the letters of a word.
    pub fn pivotal_scalar(&self, letters: &[Label]) -> Result<Cyc, HomError> {
        let mut acc = Cyc::one();
        for &x in letters {
            acc = acc * self.t(x)?;
        }
        Ok(acc)
    }

    // ---- bases ------------------------------------------------------------

    pub fn dims(&self, w: &Word) -> Arc<Vec<usize>> {
        if let Some(d) = self.dims.borrow().get(w) {
            return d.clone();
        }
        let d = match w {
            Word::Empty => Arc::new(
                (0..self.rank)
                    .map(|c| usize::from(c == self.unit))
                    .collect(),
            ),
            Word::Leaf(a) => Arc::new((0..self.rank).map(|c| usize::from(c == *a)).collect()),
            Word::Node(l, r) => Arc::new(self.layout(l, r).dims.clone()),
        };
        self.dims.borrow_mut().insert(w.clone(), d.clone());
        d
    }

    pub fn dim(&self, w: &Word, c: Label) -> usize {
        self.dims(w)[c]
    }

    pub fn layout(&self, l: &Word, r: &Word) -> Arc<Layout> {
        let key = (l.clone(), r.clone());
        if let Some(x) = self.layouts.borrow().get(&key) {
            return x.clone();
        }
        let dl = self.dims(l);
        let dr = self.dims(r);
        let ring = &self.cat.ring;
        let n = self.rank;
        let mut dims = vec![0; n];
        let mut pairs = vec![Vec::new(); n];
        let mut offsets = vec![vec![NONE; n * n]; n];
        for c in 0..n {
            let mut off = 0;
            for c1 in 0..n {
                if dl[c1] == 0 {
                    continue;
                }
                for p in 0..n {
                    let c2 = ring.dual(p);
                    if dr[c2] == 0 || !ring.admissible(c1, c2, c) {
                        continue;
                    }
                    pairs[c].push((c1, c2, off));
                    offsets[c][c1 * n + c2] = off;
                    off += dl[c1] * dr[c2];
                }
            }
            dims[c] = off;
        }
        let lay = Arc::new(Layout {
            dims,
            pairs,
            offsets,
            rank: n,
        });
        self.layouts.borrow_mut().insert(key, lay.clone());
        lay
    }

    pub fn hom_dimension(&self, letters: &[Label]) -> usize {
        self.dim(&Word::right_nested(letters), self.unit)
    }

    /// Basis of `Hom(1, x_1 ⊗ (… ⊗ x_n))` in index order, which is
    /// lexicographic in the fusion path.
    pub fn hom_basis(&self, letters: &[Label]) -> Vec<FusionTree> {
        let ring = &self.cat.ring;
        let w = Word::right_nested(letters);
        let mut internal = Vec::new();
        self.enumerate_channels(&w, self.unit, &mut Vec::new(), &mut internal);
        internal
            .into_iter()
            .map(|rs| {
                let mut path = vec![self.unit];
                path.extend(rs.iter().map(|&r| ring.dual(r)));
                path.push(self.unit);
                FusionTree {
                    word: letters.to_vec(),
                    path,
                }
            })
            .collect()
    }

    fn enumerate_channels(
        &self,
        w: &Word,
        c: Label,
        acc: &mut Vec<Label>,
        out: &mut Vec<Vec<Label>>,
    ) {
        match w {
            Word::Empty => {
                if c == self.unit {
                    out.push(acc.clone());
                }
            }
            Word::Leaf(a) => {
                if *a == c {
                    out.push(acc.clone());
                }
            }
            Word::Node(l, r) => {
                for &(c1, c2, _) in &self.layout(l, r).pairs[c] {
                    debug_assert!(matches!(**l, Word::Leaf(x) if x == c1));
                    let _ = c1;
                    acc.push(c2);
                    self.enumerate_channels(r, c2, acc, out);
                    acc.pop();
                }
            }
        }
    }

    // ---- state propagation -----------------------------------------------

    pub fn identity_state(&self, w: &Word, c: Label) -> State {
        State {
            word: w.clone(),
            channel: c,
            mat: Matrix::identity(self.dim(w, c)),
        }
    }

    /// The state `1 ∈ Hom(1, I)`.
    pub fn unit_state(&self) -> State {
        State {
            word: Word::Empty,
            channel: self.unit,
            mat: Matrix::identity(1),
        }
    }

    pub fn run(&self, mut s: State, ops: &[Op]) -> State {
        for op in ops {
            s = self.step(s, op);
        }
        s
    }

    pub fn step(&self, s: State, op: &Op) -> State {
        let (path, root) = match op {
            Op::Scale(x) => {
                return State {
                    mat: s.mat.scale(x),
                    ..s
                }
            }
            Op::Assoc { path, inverse } => (path, RootOp::Assoc(*inverse)),
            Op::Apply { path, map } => (path, RootOp::Apply(map)),
            Op::Insert {
                path,
                side,
                word,
                vec,
            } => (path, RootOp::Insert(*side, word, vec)),
        };
        let word = self.target_rec(&s.word, path, &root);
        let mat = self.apply_rec(&s.word, s.channel, &s.mat, path, &root);
        State {
            word,
            channel: s.channel,
            mat,
        }
    }

    fn root_target(&self, w: &Word, op: &RootOp) -> Word {
        match op {
            RootOp::Assoc(false) => {
                let (ab, c) = w.children().expect("associator on a non-product");
                let (a, b) = ab.children().expect("associator needs (A⊗B)⊗C");
                Word::tensor(a.clone(), Word::tensor(b.clone(), c.clone()))
            }
            RootOp::Assoc(true) => {
                let (a, bc) = w.children().expect("associator on a non-product");
                let (b, c) = bc.children().expect("inverse associator needs A⊗(B⊗C)");
                Word::tensor(Word::tensor(a.clone(), b.clone()), c.clone())
            }
            RootOp::Apply(f) => {
                assert_eq!(&f.source, w, "morphism source does not match subword");
                f.target.clone()
            }
            RootOp::Insert(Side::L, x, _) => Word::tensor((*x).clone(), w.clone()),
            RootOp::Insert(Side::R, x, _) => Word::tensor(w.clone(), (*x).clone()),
        }
    }

    fn target_rec(&self, w: &Word, path: &[Side], op: &RootOp) -> Word {
        match path.split_first() {
            None => self.root_target(w, op),
            Some((side, rest)) => {
                let (l, r) = w.children().expect("path leaves the word");
                match side {
                    Side::L => Word::tensor(self.target_rec(l, rest, op), r.clone()),
                    Side::R => Word::tensor(l.clone(), self.target_rec(r, rest, op)),
                }
            }
        }
    }

    fn apply_rec(&self, w: &Word, c0: Label, mat: &Matrix, path: &[Side], op: &RootOp) -> Matrix {
        let Some((side, rest)) = path.split_first() else {
            return self.apply_root(w, c0, mat, op);
        };
        let (l, r) = w.children().expect("path leaves the word");
        let m = mat.cols();
        let mu = match op {
            RootOp::Insert(_, _, v) => v.cols(),
            _ => 1,
        };
        let lay = self.layout(l, r);
        let dl = self.dims(l);
        let dr = self.dims(r);
        match side {
            Side::L => {
                let l2 = self.target_rec(l, rest, op);
                let lay2 = self.layout(&l2, r);
                let dl2 = self.dims(&l2);
                let mut out = MatrixBuilder::new(lay2.dims[c0], m * mu);
                for &(c1, c2, off) in &lay.pairs[c0] {
                    let (a, b) = (dl[c1], dr[c2]);
                    let mut sub = MatrixBuilder::new(a, b * m);
                    let mut any = false;
                    for row in off..off + a * b {
                        for (j, v) in mat.row(row) {
                            sub.add((row - off) / b, ((row - off) % b) * m + j, v);
                            any = true;
                        }
                    }
                    if !any || dl2[c1] == 0 {
                        continue;
                    }
                    let res = self.apply_rec(l, c1, &sub.build(), rest, op);
                    let off2 = lay2.offset(c0, c1, c2).expect("layout mismatch");
                    for i in 0..dl2[c1] {
                        for (col, v) in res.row(i) {
                            let (js, u) = (col / mu, col % mu);
                            out.add(off2 + i * b + js / m, (js % m) * mu + u, v);
                        }
                    }
                }
                out.build()
            }
            Side::R => {
                let r2 = self.target_rec(r, rest, op);
                let lay2 = self.layout(l, &r2);
                let dr2 = self.dims(&r2);
                let mut out = MatrixBuilder::new(lay2.dims[c0], m * mu);
                for &(c1, c2, off) in &lay.pairs[c0] {
                    let (a, b) = (dl[c1], dr[c2]);
                    let mut sub = MatrixBuilder::new(b, a * m);
                    let mut any = false;
                    for row in off..off + a * b {
                        for (j, v) in mat.row(row) {
                            sub.add((row - off) % b, ((row - off) / b) * m + j, v);
                            any = true;
                        }
                    }
                    let b2 = dr2[c2];
                    if !any || b2 == 0 {
                        continue;
                    }
                    let res = self.apply_rec(r, c2, &sub.build(), rest, op);
                    let off2 = lay2.offset(c0, c1, c2).expect("layout mismatch");
                    for i in 0..b2 {
                        for (col, v) in res.row(i) {
                            let (js, u) = (col / mu, col % mu);
                            out.add(off2 + (js / m) * b2 + i, (js % m) * mu + u, v);
                        }
                    }
                }
                out.build()
            }
        }
    }

    fn apply_root(&self, w: &Word, c0: Label, mat: &Matrix, op: &RootOp) -> Matrix {
        match op {
            RootOp::Apply(f) => {
                assert_eq!(&f.source, w, "morphism source does not match subword");
                f.blocks[c0].mul(mat)
            }
            RootOp::Assoc(false) => self.assoc_fwd_root(w, c0, mat),
            RootOp::Assoc(true) => self.assoc_inv_root(w, c0, mat),
            RootOp::Insert(side, x, v) => {
                let m = mat.cols();
                let mu = v.cols();
                let dx = self.dim(x, self.unit);
                let ds = self.dim(w, c0);
                let (lay, off) = match side {
                    Side::L => {
                        let lay = self.layout(x, w);
                        let off = lay.offset(c0, self.unit, c0);
                        (lay, off)
                    }
                    Side::R => {
                        let lay = self.layout(w, x);
                        let off = lay.offset(c0, c0, self.unit);
                        (lay, off)
                    }
                };
                let mut out = MatrixBuilder::new(lay.dims[c0], m * mu);
                if let Some(off) = off {
                    for is in 0..ds {
                        for (j, sv) in mat.row(is) {
                            for ix in 0..dx {
                                for (u, xv) in v.row(ix) {
                                    let row = match side {
                                        Side::L => off + ix * ds + is,
                                        Side::R => off + is * dx + ix,
                                    };
                                    out.add(row, j * mu + u, &(sv * xv));
                                }
                            }
                        }
                    }
                }
                out.build()
            }
        }
    }

    fn assoc_fwd_root(&self, w: &Word, c0: Label, mat: &Matrix) -> Matrix {
        let (ab, c) = w.children().expect("associator on a non-product");
        let (a, b) = ab.children().expect("associator needs (A⊗B)⊗C");
        let bc = Word::tensor(b.clone(), c.clone());
        let top = self.layout(ab, c);
        let lab = self.layout(a, b);
        let ntop = self.layout(a, &bc);
        let lbc = self.layout(b, c);
        let (da, db, dc, dbc) = (self.dims(a), self.dims(b), self.dims(c), self.dims(&bc));
        let mut out = MatrixBuilder::new(ntop.dims[c0], mat.cols());
        for &(e, c3, off) in &top.pairs[c0] {
            let d3 = dc[c3];
            for &(c1, c2, offab) in &lab.pairs[e] {
                let fm = self.fmove(c1, c2, c3, c0);
                let ei = fm.epos[e];
                let (d1, d2) = (da[c1], db[c2]);
                for (fi, val) in fm.m.row(ei) {
                    let f = fm.fs[*fi];
                    let (Some(off1), Some(off2)) = (ntop.offset(c0, c1, f), lbc.offset(f, c2, c3))
                    else {
                        continue;
                    };
                    for i1 in 0..d1 {
                        for i2 in 0..d2 {
                            for i3 in 0..d3 {
                                let src = off + (offab + i1 * d2 + i2) * d3 + i3;
                                let tgt = off1 + i1 * dbc[f] + off2 + i2 * d3 + i3;
                                for (j, v) in mat.row(src) {
                                    out.add(tgt, *j, &(val * v));
                                }
                            }
                        }
                    }
                }
            }
        }
        out.build()
    }

    fn assoc_inv_root(&self, w: &Word, c0: Label, mat: &Matrix) -> Matrix {
        let (a, bc) = w.children().expect("associator on a non-product");
        let (b, c) = bc.children().expect("inverse associator needs A⊗(B⊗C)");
        let ab = Word::tensor(a.clone(), b.clone());
        let top = self.layout(a, bc);
        let lbc = self.layout(b, c);
        let ntop = self.layout(&ab, c);
        let lab = self.layout(a, b);
        let (da, db, dc, dbc) = (self.dims(a), self.dims(b), self.dims(c), self.dims(bc));
        let mut out = MatrixBuilder::new(ntop.dims[c0], mat.cols());
        for &(c1, f, off) in &top.pairs[c0] {
            for &(c2, c3, offbc) in &lbc.pairs[f] {
                let fm = self.fmove(c1, c2, c3, c0);
                let minv = fm.minv.as_ref().unwrap_or_else(|| {
                    panic!("{}", HomError::SingularF(self.cat.names(&[c1, c2, c3, c0])))
                });
                let (d1, d2, d3) = (da[c1], db[c2], dc[c3]);
                for (ei, val) in minv.row(fm.fpos[f]) {
                    let e = fm.es[*ei];
                    let (Some(off1), Some(off2)) = (ntop.offset(c0, e, c3), lab.offset(e, c1, c2))
                    else {
                        continue;
                    };
                    for i1 in 0..d1 {
                        for i2 in 0..d2 {
                            for i3 in 0..d3 {
                                let src = off + i1 * dbc[f] + offbc + i2 * d3 + i3;
                                let tgt = off1 + (off2 + i1 * d2 + i2) * d3 + i3;
                                for (j, v) in mat.row(src) {
                                    out.add(tgt, *j, &(val * v));
                                }
                            }
                        }
                    }
                }
            }
        }
        out.build()
    }

    /// The morphism obtained by running `ops` on every channel of `source`.
    pub fn linmap_from_ops(&self, source: &Word, ops: &[Op]) -> LinMap {
        let mut target = None;
        let mut blocks = Vec::with_capacity(self.rank);
        for c in 0..self.rank {
            let s = self.run(self.identity_state(source, c), ops);
            target.get_or_insert_with(|| s.word.clone());
            blocks.push(s.mat);
        }
        LinMap {
            source: source.clone(),
            target: target.unwrap_or(Word::Empty),
            blocks,
        }
    }

    pub fn identity(&self, w: &Word) -> LinMap {
        let d = self.dims(w);
        LinMap {
            source: w.clone(),
            target: w.clone(),
            blocks: d.iter().map(|&n| Matrix::identity(n)).collect(),
        }
    }

    pub fn scalar_map(&self, w: &Word, s: &Cyc) -> LinMap {
        self.identity(w).scale(s)
    }

    /// A morphism `I -> w` from a column of `Hom(1, w)`.
    pub fn vector_map(&self, w: &Word, v: Matrix) -> LinMap {
        let d = self.dims(w);
        let blocks = (0..self.rank)
            .map(|c| {
                if c == self.unit {
                    v.clone()
                } else {
                    Matrix::zeros(d[c], 0)
                }
            })
            .collect();
        LinMap {
            source: Word::Empty,
            target: w.clone(),
            blocks,
        }
    }

    /// A morphism `w -> I` from a row over `Hom(1, w)`.
    pub fn covector_map(&self, w: &Word, v: Matrix) -> LinMap {
        let d = self.dims(w);
        let blocks = (0..self.rank)
            .map(|c| {
                if c == self.unit {
                    v.clone()
                } else {
                    Matrix::zeros(0, d[c])
                }
            })
            .collect();
        LinMap {
            source: w.clone(),
            target: Word::Empty,
            blocks,
        }
    }

    pub fn tensor(&self, f: &LinMap, g: &LinMap) -> LinMap {
        let src = self.layout(&f.source, &g.source);
        let tgt = self.layout(&f.target, &g.target);
        let mut blocks = Vec::with_capacity(self.rank);
        for c in 0..self.rank {
            let mut b = MatrixBuilder::new(tgt.dims[c], src.dims[c]);
            for &(c1, c2, soff) in &src.pairs[c] {
                let Some(toff) = tgt.offset(c, c1, c2) else {
                    continue;
                };
                let (fb, gb) = (&f.blocks[c1], &g.blocks[c2]);
                let (gr, gc) = (gb.rows(), gb.cols());
                for i1 in 0..fb.rows() {
                    for (j1, x) in fb.row(i1) {
                        for i2 in 0..gr {
                            for (j2, y) in gb.row(i2) {
                                b.add(toff + i1 * gr + i2, soff + j1 * gc + j2, &(x * y));
                            }
                        }
                    }
                }
            }
            blocks.push(b.build());
        }
        LinMap {
            source: Word::tensor(f.source.clone(), g.source.clone()),
            target: Word::tensor(f.target.clone(), g.target.clone()),
            blocks,
        }
    }

    // ---- associators and rebracketing ------------------------------------

    pub fn assoc(&self, a: &Word, b: &Word, c: &Word) -> LinMap {
        let w = Word::tensor(Word::tensor(a.clone(), b.clone()), c.clone());
        if a.is_empty() || b.is_empty() || c.is_empty() {
            return self.identity(&w);
        }
        self.linmap_from_ops(
            &w,
            &[Op::Assoc {
                path: vec![],
                inverse: false,
            }],
        )
    }

    pub fn assoc_inv(&self, a: &Word, b: &Word, c: &Word) -> LinMap {
        let w = Word::tensor(a.clone(), Word::tensor(b.clone(), c.clone()));
        if a.is_empty() || b.is_empty() || c.is_empty() {
            return self.identity(&w);
        }
        self.linmap_from_ops(
            &w,
            &[Op::Assoc {
                path: vec![],
                inverse: true,
            }],
        )
    }

    /// Associator moves taking `w` (at `prefix`) to its right-nested form.
    pub fn to_canonical_ops(&self, w: &Word, prefix: &[Side]) -> Vec<Op> {
        let mut ops = Vec::new();
        self.canon_rec(w, prefix.to_vec(), &mut ops);
        ops
    }

    fn canon_rec(&self, w: &Word, p: Vec<Side>, ops: &mut Vec<Op>) {
        if let Word::Node(l, r) = w {
            self.canon_rec(l, with(&p, &[Side::L]), ops);
            self.canon_rec(r, with(&p, &[Side::R]), ops);
            let mut left = l.canonical();
            let mut p = p;
            while let Word::Node(_, rest) = left {
                ops.push(Op::Assoc {
                    path: p.clone(),
                    inverse: false,
                });
                left = (*rest).clone();
                p.push(Side::R);
            }
        }
    }

    /// Associator moves from `from` to `to` (same letters) at `prefix`.
    pub fn rebracket_ops(&self, from: &Word, to: &Word, prefix: &[Side]) -> Vec<Op> {
        debug_assert_eq!(from.letters(), to.letters());
        let mut ops = self.to_canonical_ops(from, prefix);
        let back = self.to_canonical_ops(to, prefix);
        ops.extend(back.into_iter().rev().map(|op| match op {
            Op::Assoc { path, inverse } => Op::Assoc {
                path,
                inverse: !inverse,
            },
            other => other,
        }));
        ops
    }

    pub fn rebracket(&self, from: &Word, to: &Word) -> Result<LinMap, HomError> {
        if from.letters() != to.letters() {
            return Err(HomError::LetterMismatch);
        }
        Ok(self.linmap_from_ops(from, &self.rebracket_ops(from, to, &[])))
    }

    /// The coherence isomorphism between two bracketings, on `Hom(1, −)`.
    pub fn assoc_matrix(&self, from: &Word, to: &Word) -> Result<Matrix, HomError> {
        if from.letters() != to.letters() {
            return Err(HomError::LetterMismatch);
        }
        let s = self.run(
            self.identity_state(from, self.unit),
            &self.rebracket_ops(from, to, &[]),
        );
        Ok(s.mat)
    }

    // ---- duality ---------------------------------------------------------

    pub fn dual_word(&self, w: &Word) -> Word {
        w.dual(&self.cat.ring)
    }

    /// `ev_a: a∨ ⊗ a -> I`.
    pub fn ev_leaf(&self, a: Label) -> Result<LinMap, HomError> {
        let src = Word::tensor(Word::Leaf(self.cat.ring.dual(a)), Word::Leaf(a));
        let e = self.ev_coefficient(a)?;
        Ok(self.covector_map(&src, Matrix::from_dense(vec![vec![e]])))
    }

    /// Ops evaluating the subword `Node(x∨, x)` at `p` down to the unit.
    pub fn ev_ops(&self, x: &Word, p: &[Side]) -> Result<Vec<Op>, HomError> {
        let mut ops = Vec::new();
        self.ev_rec(x, p, &mut ops)?;
        Ok(ops)
    }

    fn ev_rec(&self, x: &Word, p: &[Side], ops: &mut Vec<Op>) -> Result<(), HomError> {
        match x {
            Word::Empty => {}
            Word::Leaf(a) => ops.push(Op::Apply {
                path: p.to_vec(),
                map: Arc::new(self.ev_leaf(*a)?),
            }),
            Word::Node(l, r) => {
                ops.push(Op::Assoc {
                    path: p.to_vec(),
                    inverse: false,
                });
                ops.push(Op::Assoc {
                    path: with(p, &[Side::R]),
                    inverse: true,
                });
                self.ev_rec(l, &with(p, &[Side::R, Side::L]), ops)?;
                self.ev_rec(r, p, ops)?;
            }
        }
        Ok(())
    }

    pub fn ev(&self, x: &Word) -> Result<LinMap, HomError> {
        let src = Word::tensor(self.dual_word(x), x.clone());
        Ok(self.linmap_from_ops(&src, &self.ev_ops(x, &[])?))
    }

    /// `db_x` as a column of `Hom(1, x ⊗ x∨)`.
    pub fn db_vec(&self, x: &Word) -> Arc<Matrix> {
        if let Some(v) = self.dbs.borrow().get(x) {
            return v.clone();
        }
        let v = match x {
            Word::Empty | Word::Leaf(_) => Arc::new(Matrix::identity(1)),
            Word::Node(l, r) => {
                let ld = self.dual_word(l);
                let rd = self.dual_word(r);
                let ops = [
                    Op::Insert {
                        path: vec![],
                        side: Side::L,
                        word: Word::tensor((**l).clone(), ld),
                        vec: self.db_vec(l),
                    },
                    Op::Insert {
                        path: vec![Side::R],
                        side: Side::L,
                        word: Word::tensor((**r).clone(), rd),
                        vec: self.db_vec(r),
                    },
                    Op::Assoc {
                        path: vec![Side::R],
                        inverse: false,
                    },
                    Op::Assoc {
                        path: vec![],
                        inverse: true,
                    },
                ];
                Arc::new(self.run(self.unit_state(), &ops).mat)
            }
        };
        self.dbs.borrow_mut().insert(x.clone(), v.clone());
        v
    }

    pub fn db_word(&self, x: &Word) -> Word {
        Word::tensor(x.clone(), self.dual_word(x))
    }

    pub fn db(&self, x: &Word) -> LinMap {
        let w = self.db_word(x);
        self.vector_map(&w, (*self.db_vec(x)).clone())
    }

    /// Insert `db_x` next to the subword at `p`.
    pub fn db_op(&self, x: &Word, p: &[Side], side: Side) -> Op {
        Op::Insert {
            path: p.to_vec(),
            side,
            word: self.db_word(x),
            vec: self.db_vec(x),
        }
    }

    /// `f∨: Y∨ -> X∨` for `f: X -> Y`.
    pub fn dual_morphism(&self, f: &LinMap) -> Result<LinMap, HomError> {
        let (x, y) = (&f.source, &f.target);
        let yd = self.dual_word(y);
        let map = Arc::new(f.clone());
        let ops: Vec<Op> = match (x.is_empty(), y.is_empty()) {
            (true, true) => vec![Op::Scale(f.blocks[self.unit].get(0, 0))],
            (true, false) => {
                let mut ops = vec![Op::Insert {
                    path: vec![],
                    side: Side::R,
                    word: y.clone(),
                    vec: Arc::new(f.blocks[self.unit].clone()),
                }];
                ops.extend(self.ev_ops(y, &[])?);
                ops
            }
            (false, true) => vec![
                self.db_op(x, &[], Side::R),
                Op::Apply {
                    path: vec![Side::L],
                    map,
                },
            ],
            (false, false) => {
                let mut ops = vec![
                    self.db_op(x, &[], Side::R),
                    Op::Apply {
                        path: vec![Side::R, Side::L],
                        map,
                    },
                    Op::Assoc {
                        path: vec![],
                        inverse: true,
                    },
                ];
                ops.extend(self.ev_ops(y, &[Side::L])?);
                ops
            }
        };
        Ok(self.linmap_from_ops(&yd, &ops))
    }

    /// The structural morphism `ψ: c -> a ⊗ b` spanning `Hom(c, a ⊗ b)`.
    pub fn vertex(&self, a: Label, b: Label, c: Label) -> Result<LinMap, HomError> {
        if !self.cat.ring.admissible(a, b, c) {
            return Err(HomError::Inadmissible(self.cat.names(&[a, b, c])));
        }
        let src = Word::Leaf(c);
        let tgt = Word::tensor(Word::Leaf(a), Word::Leaf(b));
        let dt = self.dims(&tgt);
        let blocks = (0..self.rank)
            .map(|d| {
                if d == c {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(dt[d], 0)
                }
            })
            .collect();
        Ok(LinMap {
            source: src,
            target: tgt,
            blocks,
        })
    }

    /// `δ(a,b,c)` with `t(a)·t(b)·δ(a,b,c) = t(c)` expressing naturality of
    /// the pivotal structure on `Hom(c, a ⊗ b)`: the double dual of the
    /// fusion vertex is `δ^{-1}` times the vertex.
    pub fn double_dual_coefficient(&self, a: Label, b: Label, c: Label) -> Result<Cyc, HomError> {
        let psi = self.vertex(a, b, c)?;
        let dd = self.dual_morphism(&self.dual_morphism(&psi)?)?;
        debug_assert_eq!(dd.source, psi.source);
        let x = dd.blocks[c].get(0, 0);
        Ok(x.inv()?)
    }

    /// `j` on a word: the product of the component scalars.
    pub fn pivotal_matrix(&self, w: &Word) -> Result<LinMap, HomError> {
        Ok(self.scalar_map(w, &self.pivotal_scalar(&w.letters())?))
    }

    // ---- positional helpers on right-nested words -------------------------

    /// Insert a vector of `Hom(1, x)` before letter `pos` of a right-nested
    /// state; the result is right-nested again.
    pub fn insert_at(&self, s: State, pos: usize, x: &Word, v: Arc<Matrix>) -> State {
        let ops = self.insert_at_ops(&s.word, pos, x, v);
        self.run(s, &ops)
    }

    pub fn insert_at_ops(&self, w: &Word, pos: usize, x: &Word, v: Arc<Matrix>) -> Vec<Op> {
        let letters = w.letters();
        let n = letters.len();
        assert!(pos <= n);
        if x.is_empty() {
            return vec![Op::Scale(v.get(0, 0))];
        }
        if n == 0 {
            let mut ops = vec![Op::Insert {
                path: vec![],
                side: Side::L,
                word: x.clone(),
                vec: v,
            }];
            ops.extend(self.to_canonical_ops(x, &[]));
            return ops;
        }
        let (p, side, shaped) = if pos < n {
            let s = Word::right_nested(&letters[pos..]);
            (rights(pos), Side::L, Word::tensor(x.clone(), s))
        } else {
            let s = Word::Leaf(letters[n - 1]);
            (rights(n - 1), Side::R, Word::tensor(s, x.clone()))
        };
        let mut ops = vec![Op::Insert {
            path: p.clone(),
            side,
            word: x.clone(),
            vec: v,
        }];
        ops.extend(self.to_canonical_ops(&shaped, &p));
        ops
    }

    /// Rebracket letters `pos..pos+shape.len()` of a right-nested state into
    /// `shape`, run `inner` (paths relative to that subword, which must end
    /// as `result`), and restore right-nesting.
    pub fn on_range(
        &self,
        s: State,
        pos: usize,
        shape: &Word,
        inner: Vec<Op>,
        result: &Word,
    ) -> State {
        let ops = self.on_range_ops(&s.word, pos, shape, inner, result);
        self.run(s, &ops)
    }

    pub fn on_range_ops(
        &self,
        w: &Word,
        pos: usize,
        shape: &Word,
        inner: Vec<Op>,
        result: &Word,
    ) -> Vec<Op> {
        let letters = w.letters();
        let len = shape.len();
        assert!(len > 0 && pos + len <= letters.len());
        debug_assert_eq!(&letters[pos..pos + len], &shape.letters()[..]);
        let rest = Word::right_nested(&letters[pos + len..]);
        let suffix = Word::right_nested(&letters[pos..]);
        let p = rights(pos);
        let (shaped, inner_prefix) = if rest.is_empty() {
            (shape.clone(), p.clone())
        } else {
            (
                Word::tensor(shape.clone(), rest.clone()),
                with(&p, &[Side::L]),
            )
        };
        let mut ops = self.rebracket_ops(&suffix, &shaped, &p);
        ops.extend(inner.into_iter().map(|op| op.prefixed(&inner_prefix)));
        let after = Word::tensor(result.clone(), rest);
        ops.extend(self.to_canonical_ops(&after, &p));
        ops
    }

    /// Apply `f` (source and target right-nested) to letters
    /// `pos..pos+len(f.source)` of a right-nested state.
    pub fn apply_at(&self, s: State, pos: usize, f: Arc<LinMap>) -> State {
        let shape = f.source.clone();
        let result = f.target.clone();
        if shape.is_empty() {
            return self.insert_at(s, pos, &result, Arc::new(f.blocks[self.unit].clone()));
        }
        self.on_range(
            s,
            pos,
            &shape,
            vec![Op::Apply {
                path: vec![],
                map: f,
            }],
            &result,
        )
    }

    /// Evaluate letters `pos..pos+2|x|`, which must read `x∨ x`.
    pub fn ev_at(&self, s: State, pos: usize, x: &Word) -> Result<State, HomError> {
        if x.is_empty() {
            return Ok(s);
        }
        let shape = Word::tensor(self.dual_word(x), x.clone());
        let inner = self.ev_ops(x, &[])?;
        Ok(self.on_range(s, pos, &shape, inner, &Word::Empty))
    }

    // ---- traces ------------------------------------------------------------

    /// Close the `k` leftmost or rightmost strands of an endomorphism into a
    /// loop (left closure uses `j^{-1}`, right closure uses `j`).
    pub fn close_loop(&self, m: &LinMap, side: Side, k: usize) -> Result<LinMap, HomError> {
        if !m.is_endomorphism() {
            return Err(HomError::NotEndomorphism);
        }
        let letters = m.source.letters();
        let n = letters.len();
        if k == 0 || k > n {
            return Err(HomError::BadSplit { k, len: n });
        }
        let x = m.source.clone();
        let map = Arc::new(m.clone());
        let (u, ops) = match side {
            Side::R => {
                let u = Word::right_nested(&letters[..n - k]);
                let w = Word::right_nested(&letters[n - k..]);
                let wd = self.dual_word(&w);
                let dbw = Word::tensor(w.clone(), wd.clone());
                let spread = Word::tensor(u.clone(), dbw.clone());
                let closed = Word::tensor(x.clone(), wd.clone());
                let mut ops = vec![self.db_op(&w, &[], Side::R)];
                ops.extend(self.rebracket_ops(&spread, &closed, &[]));
                ops.push(Op::Apply {
                    path: vec![Side::L],
                    map,
                });
                ops.push(Op::Scale(self.pivotal_scalar(&letters[n - k..])?));
                ops.extend(self.rebracket_ops(&closed, &spread, &[]));
                let evp = if u.is_empty() { vec![] } else { vec![Side::R] };
                ops.extend(self.ev_ops(&wd, &evp)?);
                (u, ops)
            }
            Side::L => {
                let w = Word::right_nested(&letters[..k]);
                let u = Word::right_nested(&letters[k..]);
                let wd = self.dual_word(&w);
                let dbw = Word::tensor(wd.clone(), w.clone());
                let spread = Word::tensor(dbw, u.clone());
                let closed = Word::tensor(wd.clone(), x.clone());
                let mut ops = vec![self.db_op(&wd, &[], Side::L)];
                ops.push(Op::Scale(self.pivotal_scalar(&letters[..k])?.inv()?));
                ops.extend(self.rebracket_ops(&spread, &closed, &[]));
                ops.push(Op::Apply {
                    path: vec![Side::R],
                    map,
                });
                ops.extend(self.rebracket_ops(&closed, &spread, &[]));
                let evp = if u.is_empty() { vec![] } else { vec![Side::L] };
                ops.extend(self.ev_ops(&w, &evp)?);
                (u, ops)
            }
        };
        Ok(self.linmap_from_ops(&u, &ops))
    }

    /// Full left or right pivotal trace of an endomorphism.
    pub fn ptr(&self, m: &LinMap, side: Side) -> Result<Cyc, HomError> {
        if m.source.is_empty() {
            if !m.is_endomorphism() {
                return Err(HomError::NotEndomorphism);
            }
            return Ok(m.blocks[self.unit].get(0, 0));
        }
        let n = m.source.len();
        let closed = self.close_loop(m, side, n)?;
        Ok(closed.blocks[self.unit].get(0, 0))
    }
}

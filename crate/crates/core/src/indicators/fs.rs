//! Scalars of the generalized Frobenius-Schur endomorphisms `FS^{(n,l,r)}`.
//!
//! With `k = l + r + 1`, the strands of `V^{⊗n}` entering the projection
//! `π` are read as `X B V R` (`|X| = n − k`, `|B| = l`, `|R| = r`) and
//! those leaving `ι` as `B V R X`; `B` and `X` are closed off to the left,
//! `R` to the right.

use std::sync::Arc;

use num_integer::Integer;

use super::{IndicatorError, Indicators};
use crate::exactnum::Cyc;
use crate::fusioncat::{Label, ObjectExpr};
use crate::homcalc::{State, Word};
use crate::matrix::Matrix;

impl Indicators<'_> {
    fn fs_check(&self, n: usize, l: usize, r: usize) -> Result<usize, IndicatorError> {
        let k = l + r + 1;
        if n == 0 || k > n {
            return Err(IndicatorError::BadFsIndex { n, l, r });
        }
        Ok(k)
    }

    /// The scalar `λ` with `FS^{(n,l,r)}_a = λ·id_a`.
    pub fn fs_scalar(&self, a: Label, n: usize, l: usize, r: usize) -> Result<Cyc, IndicatorError> {
        self.fs_scalar_in_basis(a, n, l, r, None)
    }

    /// As [`Self::fs_scalar`], with the dual bases `q_i = G e_i` and
    /// `p_i = e_i^T G^{-1}` of `Hom(1, a^{⊗n})` for an invertible `G`.
    pub fn fs_scalar_in_basis(
        &self,
        a: Label,
        n: usize,
        l: usize,
        r: usize,
        g: Option<&Matrix>,
    ) -> Result<Cyc, IndicatorError> {
        self.fs_check(n, l, r)?;
        let word = vec![a; n];
        let m = self.fs_word(&word, n, l, r, g)?;
        if m.rows() == 0 {
            return Ok(Cyc::zero());
        }
        m.as_scalar().ok_or(IndicatorError::NotScalar)
    }

    /// `FS^{(n,l,r)}_V` as a matrix over the summands of `V` (rows: output
    /// summand, columns: input summand).
    pub fn fs_matrix(
        &self,
        v: &ObjectExpr,
        n: usize,
        l: usize,
        r: usize,
    ) -> Result<Matrix, IndicatorError> {
        let k = self.fs_check(n, l, r)?;
        if v.is_zero() {
            return Err(crate::fusioncat::FusionError::ZeroObject.into());
        }
        let summands = v.summands();
        let m = summands.len();
        let mut out = Matrix::zeros(m, m);
        let words = (m as u128).saturating_pow(n as u32);
        if words > super::WORD_GUARD {
            return Err(IndicatorError::Guard {
                dim: words,
                guard: super::WORD_GUARD as usize,
            });
        }
        let mut cur = vec![0usize; n];
        loop {
            // The strands joined by the cups and caps must carry the same summand.
            let xs = n - k;
            let linked = cur[..l] == cur[xs..xs + l]
                && cur[k..] == cur[..xs]
                && cur[l + 1..k] == cur[xs + l + 1..];
            if linked {
                let labels: Vec<Label> = cur.iter().map(|&j| summands[j]).collect();
                let (jin, jout) = (cur[xs + l], cur[l]);
                if labels[xs + l] == labels[l] {
                    let w = self.fs_word(&labels, n, l, r, None)?;
                    if w.rows() > 0 {
                        let mut single = Matrix::zeros(m, m);
                        single.place(jout, jin, &w);
                        out = out.add(&single);
                    }
                }
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
        Ok(out)
    }

    /// The contribution of one word `w` of the trivial component: a map
    /// `Hom(w_in, w_out)` in channel `w_in`, as a `1×1` (or empty) matrix.
    fn fs_word(
        &self,
        w: &[Label],
        n: usize,
        l: usize,
        r: usize,
        g: Option<&Matrix>,
    ) -> Result<Matrix, IndicatorError> {
        let k = l + r + 1;
        let xs = n - k;
        let calc = &self.calc;
        let x_in = w[xs + l];
        let x_out = w[l];
        let xw = Word::right_nested(&w[..xs]);
        let bw = Word::right_nested(&w[xs..xs + l]);
        let rw = Word::right_nested(&w[xs + l + 1..]);
        let ww = Word::right_nested(w);
        let d = calc.dim(&ww, calc.unit());
        if d == 0 || x_in != x_out {
            return Ok(Matrix::zeros(usize::from(x_in == x_out), 1));
        }
        let (q, p) = match g {
            Some(g) => (g.clone(), g.inverse()?),
            None => (Matrix::identity(d), Matrix::identity(d)),
        };
        let mut s = calc.identity_state(&Word::Leaf(x_in), x_in);
        if l > 0 {
            let bd = calc.dual_word(&bw);
            let tb = calc.pivotal_scalar(&w[xs..xs + l])?.inv()?;
            s = calc.insert_at(
                s,
                0,
                &calc.db_word(&bd),
                Arc::new(calc.db_vec(&bd).scale(&tb)),
            );
        }
        if xs > 0 {
            let xd = calc.dual_word(&xw);
            s = calc.insert_at(s, l, &calc.db_word(&xd), calc.db_vec(&xd));
        }
        if r > 0 {
            let end = s.word.len();
            s = calc.insert_at(s, end, &calc.db_word(&rw), calc.db_vec(&rw));
        }
        let mut acc: Option<State> = None;
        for i in 0..d {
            let row = Matrix::from_dense(vec![(0..d).map(|j| p.get(i, j)).collect()]);
            let col = Matrix::from_dense((0..d).map(|j| vec![q.get(j, i)]).collect());
            let t = calc.apply_at(s.clone(), l + xs, Arc::new(calc.covector_map(&ww, row)));
            let t = calc.insert_at(t, l, &ww, Arc::new(col));
            acc = Some(match acc {
                None => t,
                Some(a) => State {
                    mat: a.mat.add(&t.mat),
                    ..a
                },
            });
        }
        let mut s = acc.expect("d > 0");
        if l > 0 {
            s = calc.ev_at(s, 0, &bw)?;
        }
        if xs > 0 {
            s = calc.ev_at(s, 1 + r, &calc.dual_word(&xw))?;
        }
        if r > 0 {
            let tr = calc.pivotal_scalar(&w[xs + l + 1..])?;
            s = calc.ev_at(s, 1, &calc.dual_word(&rw))?;
            s.mat = s.mat.scale(&tr);
        }
        debug_assert_eq!(s.word, Word::Leaf(x_out));
        Ok(s.mat)
    }

    /// Whether `n` and `l + r + 1` are coprime, the case in which
    /// `FS^{(n,l,r)}` is natural.
    pub fn fs_is_natural_index(n: usize, l: usize, r: usize) -> bool {
        n.gcd(&(l + r + 1)) == 1
    }
}

//! Character tables and explicit matrix representations of small groups.

use num_integer::Integer;

use super::OracleError;
use crate::exactnum::Cyc;
use crate::matrix::{Matrix, MatrixBuilder};

/// Character table with power maps; `power[m % exponent][class]` is the
/// class of `g^m` for `g` in `class`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub name: String,
    pub order: u32,
    pub class_sizes: Vec<u32>,
    pub characters: Vec<Vec<Cyc>>,
    pub exponent: u32,
    pub power: Vec<Vec<usize>>,
}

fn ints(v: &[i64]) -> Vec<Cyc> {
    v.iter().map(|&x| Cyc::from_int(x)).collect()
}

impl CharacterTable {
    pub fn cyclic(n: u32) -> CharacterTable {
        CharacterTable {
            name: format!("Z/{n}"),
            order: n,
            class_sizes: vec![1; n as usize],
            characters: (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| Cyc::root_of_unity(n, i64::from(j * k)))
                        .collect()
                })
                .collect(),
            exponent: n,
            power: (0..n)
                .map(|m| (0..n).map(|k| ((m * k) % n) as usize).collect())
                .collect(),
        }
    }

    /// Classes: identity, transpositions, 3-cycles.
    pub fn s3() -> CharacterTable {
        CharacterTable {
            name: "S3".into(),
            order: 6,
            class_sizes: vec![1, 3, 2],
            characters: vec![ints(&[1, 1, 1]), ints(&[1, -1, 1]), ints(&[2, 0, -1])],
            exponent: 6,
            power: (0..6)
                .map(|m| {
                    vec![
                        0,
                        if m % 2 == 1 { 1 } else { 0 },
                        if m % 3 != 0 { 2 } else { 0 },
                    ]
                })
                .collect(),
        }
    }

    fn order8(name: &str, order4: &[usize]) -> CharacterTable {
        CharacterTable {
            name: name.into(),
            order: 8,
            class_sizes: vec![1, 1, 2, 2, 2],
            characters: vec![
                ints(&[1, 1, 1, 1, 1]),
                ints(&[1, 1, 1, -1, -1]),
                ints(&[1, 1, -1, 1, -1]),
                ints(&[1, 1, -1, -1, 1]),
                ints(&[2, -2, 0, 0, 0]),
            ],
            exponent: 4,
            power: (0..4)
                .map(|m| {
                    (0..5)
                        .map(|c| match (c, m % 2 == 1) {
                            (0, _) => 0,
                            (_, true) => c,
                            (1, false) => 0,
                            _ if order4.contains(&c) && m == 2 => 1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Classes: `e, r², {r, r³}, {s, r²s}, {rs, r³s}`.
    pub fn d4() -> CharacterTable {
        CharacterTable::order8("D4", &[2])
    }

    /// Classes: `1, −1, {±i}, {±j}, {±k}`.
    pub fn q8() -> CharacterTable {
        CharacterTable::order8("Q8", &[2, 3, 4])
    }

    pub fn class_of_power(&self, class: usize, m: u32) -> usize {
        self.power[(m % self.exponent) as usize][class]
    }
}

/// `(1/|G|) Σ_g χ(g^{n/d})^d` with `d = gcd(n, r mod n)` (`d = n` for
/// `r ≡ 0`): the trace of the `r`-th power of the cyclic shift on
/// invariants of `V^{⊗n}`.
pub fn char_indicator(
    table: &CharacterTable,
    character: usize,
    n: u32,
    r: i64,
) -> Result<Cyc, OracleError> {
    if n == 0 {
        return Err(OracleError::Precondition("n must be positive".into()));
    }
    let chi = table
        .characters
        .get(character)
        .ok_or_else(|| OracleError::Precondition(format!("no character {character}")))?;
    let rr = r.rem_euclid(i64::from(n)) as u32;
    let d = if rr == 0 { n } else { n.gcd(&rr) };
    let mut acc = Cyc::zero();
    for (c, &size) in table.class_sizes.iter().enumerate() {
        let v = chi[table.class_of_power(c, n / d)].pow(i64::from(d))?;
        acc = acc + Cyc::from_int(i64::from(size)) * v;
    }
    Ok(acc * Cyc::from_frac(1, i64::from(table.order)))
}

/// A group given by explicit invertible matrices.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub label: String,
    pub degree: usize,
    /// Generator images, in the order of the abstract generators.
    pub gens: Vec<Matrix>,
    pub elements: Vec<Matrix>,
}

impl MatrixRep {
    /// Closure of the generators under multiplication.
    pub fn generate(label: &str, gens: &[Matrix]) -> Result<MatrixRep, OracleError> {
        let degree = gens
            .first()
            .map(|g| g.rows())
            .ok_or_else(|| OracleError::Precondition("no generators".into()))?;
        if gens
            .iter()
            .any(|g| g.rows() != degree || !g.is_invertible())
        {
            return Err(OracleError::Precondition(format!(
                "{label}: generators must be invertible of size {degree}"
            )));
        }
        let mut elements = vec![Matrix::identity(degree)];
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let p = elements[i].mul(g);
                if !elements.contains(&p) {
                    elements.push(p);
                    if elements.len() > 10_000 {
                        return Err(OracleError::Guard("group too large".into()));
                    }
                }
            }
            i += 1;
        }
        Ok(MatrixRep {
            label: label.into(),
            degree,
            gens: gens.to_vec(),
            elements,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn character(&self) -> Vec<Cyc> {
        self.elements.iter().map(|g| g.trace()).collect()
    }
}

fn m(rows: Vec<Vec<Cyc>>) -> Matrix {
    Matrix::from_dense(rows)
}

fn c(x: i64) -> Cyc {
    Cyc::from_int(x)
}

fn z(n: u32, k: i64) -> Cyc {
    Cyc::root_of_unity(n, k)
}

fn linear(label: &str, images: &[i64]) -> Result<MatrixRep, OracleError> {
    let gens: Vec<Matrix> = images.iter().map(|&x| m(vec![vec![c(x)]])).collect();
    let mut rep = MatrixRep::generate(label, &gens)?;
    rep.label = label.into();
    Ok(rep)
}

/// Irreducible representations of `S3`: trivial, sign, standard.
pub fn s3_irreps() -> Result<Vec<MatrixRep>, OracleError> {
    let r = m(vec![vec![z(3, 1), c(0)], vec![c(0), z(3, 2)]]);
    let s = m(vec![vec![c(0), c(1)], vec![c(1), c(0)]]);
    Ok(vec![
        linear("S3 trivial", &[1, 1])?,
        linear("S3 sign", &[1, -1])?,
        MatrixRep::generate("S3 standard", &[r, s])?,
    ])
}

/// Irreducible representations of `Q8`: four linear, one of degree 2.
pub fn q8_irreps() -> Result<Vec<MatrixRep>, OracleError> {
    let i = m(vec![vec![z(4, 1), c(0)], vec![c(0), z(4, 3)]]);
    let j = m(vec![vec![c(0), c(1)], vec![c(-1), c(0)]]);
    Ok(vec![
        linear("Q8 trivial", &[1, 1])?,
        linear("Q8 i-sign", &[1, -1])?,
        linear("Q8 j-sign", &[-1, 1])?,
        linear("Q8 k-sign", &[-1, -1])?,
        MatrixRep::generate("Q8 degree 2", &[i, j])?,
    ])
}

/// Irreducible representations of `D4`: four linear, one of degree 2.
pub fn d4_irreps() -> Result<Vec<MatrixRep>, OracleError> {
    let r = m(vec![vec![c(0), c(-1)], vec![c(1), c(0)]]);
    let s = m(vec![vec![c(1), c(0)], vec![c(0), c(-1)]]);
    Ok(vec![
        linear("D4 trivial", &[1, 1])?,
        linear("D4 r-sign", &[1, -1])?,
        linear("D4 s-sign", &[-1, 1])?,
        linear("D4 rs-sign", &[-1, -1])?,
        MatrixRep::generate("D4 degree 2", &[r, s])?,
    ])
}

/// Largest `degree^n` accepted by [`brute_force_indicator`].
pub const BRUTE_FORCE_GUARD: usize = 243;

/// `Tr(c^r · P)` on `V^{⊗n}`, with `P` the averaging projector onto
/// invariants and `c` the cyclic shift of tensor factors.
pub fn brute_force_indicator(rep: &MatrixRep, n: u32, r: i64) -> Result<Cyc, OracleError> {
    if n == 0 {
        return Err(OracleError::Precondition("n must be positive".into()));
    }
    let d = rep.degree;
    let dim = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(d));
    let dim = match dim {
        Some(x) if x <= BRUTE_FORCE_GUARD => x,
        _ => {
            return Err(OracleError::Guard(format!(
                "degree {d} to the power {n} is too large"
            )))
        }
    };
    let mut p = Matrix::zeros(dim, dim);
    for g in &rep.elements {
        let mut t = Matrix::identity(1);
        for _ in 0..n {
            t = Matrix::kron(&t, g);
        }
        p = p.add(&t);
    }
    let p = p.scale(&Cyc::from_frac(1, rep.order() as i64));
    let mut shift = MatrixBuilder::new(dim, dim);
    for idx in 0..dim {
        let mut digits = Vec::with_capacity(n as usize);
        let mut x = idx;
        for _ in 0..n {
            digits.push(x % d);
            x /= d;
        }
        digits.rotate_left(1);
        let target = digits.iter().rev().fold(0, |acc, &k| acc * d + k);
        shift.add(target, idx, &Cyc::one());
    }
    let rr = r.rem_euclid(i64::from(n)) as u32;
    let cr = shift.build().pow(rr);
    Ok(cr.mul(&p).trace())
}

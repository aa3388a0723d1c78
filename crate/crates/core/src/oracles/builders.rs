//! Constructors for the bundled category families.

use std::collections::BTreeMap;

use super::{MatrixRep, OracleError};
use crate::exactnum::{sqrt5, Cyc};
use crate::fusioncat::{validate, Category, FSymbolSet, FusionRing, Label, PivotalData};
use crate::matrix::Matrix;

fn cyclic_names(n: u32) -> Vec<String> {
    (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            k => format!("g{k}"),
        })
        .collect()
}

/// `Vec_ω(Z/N)` with `F^{abc} = ω(a,b,c)`; `omega` must be a normalized
/// 3-cocycle with values in `Q(ζ_conductor)`.
pub fn build_pointed(
    n: u32,
    omega: &dyn Fn(u32, u32, u32) -> Cyc,
    conductor: u32,
) -> Result<Category, OracleError> {
    if n == 0 {
        return Err(OracleError::Precondition(
            "group order must be positive".into(),
        ));
    }
    let add = |a: u32, b: u32| (a + b) % n;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let w = omega(a, b, c);
                if (a == 0 || b == 0 || c == 0) && !w.is_one() {
                    return Err(OracleError::Precondition(format!(
                        "ω({a},{b},{c}) is not normalized"
                    )));
                }
                if w.is_zero() {
                    return Err(OracleError::Precondition(format!("ω({a},{b},{c}) = 0")));
                }
                for d in 0..n {
                    let lhs = omega(b, c, d) * omega(a, add(b, c), d) * omega(a, b, c);
                    let rhs = omega(add(a, b), c, d) * omega(a, b, add(c, d));
                    if lhs != rhs {
                        return Err(OracleError::Precondition(format!(
                            "cocycle condition fails at ({a},{b},{c},{d})"
                        )));
                    }
                }
            }
        }
    }
    let names = cyclic_names(n);
    let mut fusion = Vec::new();
    for a in 0..n {
        for b in 0..n {
            fusion.push((a as Label, b as Label, add(a, b) as Label, 1));
        }
    }
    let dual = (0..n).map(|a| ((n - a) % n) as Label).collect();
    let ring = FusionRing::new(names, 0, dual, fusion)?;
    let mut f = FSymbolSet::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let w = omega(a, b, c);
                if !w.is_one() {
                    let key =
                        [a, b, c, add(add(a, b), c), add(a, b), add(b, c)].map(|x| x as Label);
                    f.set(key, w.lift(conductor));
                }
            }
        }
    }
    Ok(Category {
        name: format!("vec_z{n}"),
        conductor,
        ring,
        f,
        pivotal: None,
    })
}

/// The standard cocycle `ω_p(a,b,c) = ζ_{N²}^{p·a·(b+c−[b+c])}`.
pub fn pointed_cocycle(n: u32, p: u32) -> impl Fn(u32, u32, u32) -> Cyc {
    move |a, b, c| {
        let carry = b + c - (b + c) % n;
        Cyc::root_of_unity(n * n, i64::from(p * a * carry))
    }
}

/// A finite abelian group `Z/n_1 × … × Z/n_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: &[u32]) -> AbelianGroup {
        AbelianGroup {
            orders: orders.to_vec(),
        }
    }

    pub fn order(&self) -> u32 {
        self.orders.iter().product()
    }

    /// Elements in mixed-radix order, first factor fastest.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        (0..self.order())
            .map(|mut i| {
                self.orders
                    .iter()
                    .map(|&n| {
                        let k = i % n;
                        i /= n;
                        k
                    })
                    .collect()
            })
            .collect()
    }

    pub fn index(&self, x: &[u32]) -> usize {
        let mut idx = 0usize;
        let mut scale = 1usize;
        for (k, &n) in x.iter().zip(&self.orders) {
            idx += *k as usize * scale;
            scale *= n as usize;
        }
        idx
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), n)| (a + b) % n)
            .collect()
    }

    pub fn neg(&self, x: &[u32]) -> Vec<u32> {
        x.iter()
            .zip(&self.orders)
            .map(|(a, n)| (n - a) % n)
            .collect()
    }

    fn name(&self, x: &[u32]) -> String {
        if x.iter().all(|&k| k == 0) {
            return "1".to_string();
        }
        let gens: Vec<char> = if self.orders.len() == 1 {
            vec!['g']
        } else {
            ('a'..='z').collect()
        };
        x.iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                if k == 1 {
                    gens[i].to_string()
                } else {
                    format!("{}{}", gens[i], k)
                }
            })
            .collect()
    }
}

/// `TY(A, χ, τ)` on labels `A ∪ {sigma}`.
pub fn build_tambara_yamagami(
    group: &AbelianGroup,
    chi: &dyn Fn(&[u32], &[u32]) -> Cyc,
    tau: &Cyc,
    conductor: u32,
    name: &str,
) -> Result<Category, OracleError> {
    let elems = group.elements();
    let m = elems.len();
    let order = Cyc::from_int(i64::from(group.order()));
    if &(tau * tau) * &order != Cyc::one() {
        return Err(OracleError::Precondition("τ² ≠ 1/|A|".into()));
    }
    for x in &elems {
        for y in &elems {
            if chi(x, y) != chi(y, x) {
                return Err(OracleError::Precondition("χ is not symmetric".into()));
            }
            for z in &elems {
                if chi(&group.add(x, y), z) != chi(x, z) * chi(y, z) {
                    return Err(OracleError::Precondition("χ is not a bicharacter".into()));
                }
            }
        }
        if x.iter().any(|&k| k != 0) && elems.iter().all(|y| chi(x, y).is_one()) {
            return Err(OracleError::Precondition("χ is degenerate".into()));
        }
    }
    let s = m;
    let mut names: Vec<String> = elems.iter().map(|x| group.name(x)).collect();
    names.push("sigma".to_string());
    let mut fusion = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            fusion.push((i, j, group.index(&group.add(x, y)), 1));
        }
        fusion.push((i, s, s, 1));
        fusion.push((s, i, s, 1));
        fusion.push((s, s, i, 1));
    }
    let mut dual: Vec<Label> = elems.iter().map(|x| group.index(&group.neg(x))).collect();
    dual.push(s);
    let ring = FusionRing::new(names, 0, dual, fusion)?;
    let mut f = FSymbolSet::new();
    let mut put = |key: [Label; 6], v: Cyc| {
        if !v.is_one() {
            f.set(key, v.lift(conductor));
        }
    };
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let c = chi(x, y);
            put([i, s, j, s, s, s], c.clone());
            put([s, i, s, j, s, s], c.clone());
            put([s, s, s, s, i, j], tau * &c.inv()?);
        }
    }
    Ok(Category {
        name: name.to_string(),
        conductor,
        ring,
        f,
        pivotal: None,
    })
}

/// `χ(x,y) = (−1)^{x_1 y_2 + x_2 y_1}` on `Z/2 × Z/2`.
pub fn chi_z2z2(x: &[u32], y: &[u32]) -> Cyc {
    Cyc::from_int(if (x[0] * y[1] + x[1] * y[0]).is_multiple_of(2) {
        1
    } else {
        -1
    })
}

/// `χ(x,y) = (−1)^{xy}` on `Z/2`.
pub fn chi_z2(x: &[u32], y: &[u32]) -> Cyc {
    Cyc::from_int(if (x[0] * y[0]).is_multiple_of(2) {
        1
    } else {
        -1
    })
}

/// All solutions of the pentagon equations on the ring `τ⊗τ = 1 ⊕ τ`, in
/// the gauge `[F^{τττ}_τ]_{1,τ} = 1`, sorted by the numeric value of
/// `[F^{τττ}_τ]_{1,1}`.
///
/// With `z = F^{τττ}_1` and `F^{τττ}_τ = [[p, 1], [r, s]]` the equations
/// reduce to `s(z − 1) = 0`; `s = 0` makes `F^{τττ}_τ` singular, so `z = 1`,
/// `r = p`, `s = −p` and `p² + p − 1 = 0`.
pub fn solve_pentagon_rank2() -> Result<Vec<Category>, OracleError> {
    let ring = FusionRing::new(
        vec!["1".into(), "tau".into()],
        0,
        vec![0, 1],
        [
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (1, 0, 1, 1),
            (1, 1, 0, 1),
            (1, 1, 1, 1),
        ],
    )?;
    let half = Cyc::from_frac(1, 2);
    let roots = [
        &(&Cyc::from_int(-1) + &sqrt5()) * &half,
        &(&Cyc::from_int(-1) - &sqrt5()) * &half,
    ];
    let mut out = Vec::new();
    for p in roots {
        debug_assert!((&(&p * &p) + &p).is_one());
        let mut f = FSymbolSet::new();
        f.set([1, 1, 1, 1, 0, 0], p.lift(5));
        f.set([1, 1, 1, 1, 1, 0], p.lift(5));
        f.set([1, 1, 1, 1, 1, 1], (-&p).lift(5));
        let name = if p.embed().0 > 0.0 {
            "fibonacci"
        } else {
            "yang_lee"
        };
        let cat = Category {
            name: name.into(),
            conductor: 5,
            ring: ring.clone(),
            f,
            pivotal: None,
        };
        let rep = validate(&cat);
        if rep.is_valid() {
            out.push(cat);
        }
    }
    out.sort_by(|a, b| {
        let x = a.f.stored(&[1, 1, 1, 1, 0, 0]).map_or(0.0, |v| v.embed().0);
        let y = b.f.stored(&[1, 1, 1, 1, 0, 0]).map_or(0.0, |v| v.embed().0);
        y.total_cmp(&x)
    });
    Ok(out)
}

/// Attach the canonical pivotal structure, or the first enumerated one
/// when none is canonical.
pub fn attach_pivotal(cat: Category) -> Result<Category, OracleError> {
    let cands = crate::fusioncat::enumerate_pivotal_structures(&cat)?;
    let pick: Option<PivotalData> = cands
        .iter()
        .find(|c| c.canonical)
        .or_else(|| cands.first())
        .map(|c| c.data.clone());
    match pick {
        Some(p) => Ok(cat.with_pivotal(p)),
        None => Err(OracleError::Precondition(format!(
            "`{}` has no pivotal structure",
            cat.name
        ))),
    }
}

/// Intertwiners `V_c -> V_a ⊗ V_b` as row-major vectors of `(d_a d_b) × d_c`
/// matrices.
fn intertwiners(a: &MatrixRep, b: &MatrixRep, c: &MatrixRep) -> Vec<Vec<Cyc>> {
    let d = a.degree * b.degree;
    let dc = c.degree;
    let mut rows = Vec::new();
    for (ga, (gb, gc)) in a.gens.iter().zip(b.gens.iter().zip(&c.gens)) {
        let r = ga.kron(gb);
        for p in 0..d {
            for q in 0..dc {
                let mut row = vec![Cyc::zero(); d * dc];
                for (p2, v) in r.row(p) {
                    row[p2 * dc + q] += v;
                }
                for q2 in 0..dc {
                    let v = gc.get(q2, q);
                    if !v.is_zero() {
                        row[p * dc + q2] -= &v;
                    }
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_dense(rows).kernel()
}

fn reshape(v: &[Cyc], rows: usize, cols: usize) -> Matrix {
    Matrix::from_dense(v.chunks(cols).take(rows).map(|r| r.to_vec()).collect())
}

fn flatten(m: &Matrix) -> Vec<Cyc> {
    m.to_dense().into_iter().flatten().collect()
}

/// `Rep(G)` from irreducible matrix representations given on a common list
/// of generators, `irreps[0]` trivial. Fusion channels are the intertwiner
/// spaces; the F-symbols express `(ψ_{ab}^e ⊗ id) ψ_{ec}^d` in the basis
/// `(id ⊗ ψ_{bc}^f) ψ_{af}^d`.
pub fn build_rep_category(
    name: &str,
    irreps: &[MatrixRep],
    labels: &[&str],
    conductor: u32,
) -> Result<Category, OracleError> {
    let k = irreps.len();
    if k == 0 || labels.len() != k {
        return Err(OracleError::Precondition(
            "one label per irrep required".into(),
        ));
    }
    let ngens = irreps[0].gens.len();
    if irreps.iter().any(|r| r.gens.len() != ngens) {
        return Err(OracleError::Precondition(
            "irreps disagree on the generators".into(),
        ));
    }
    if irreps[0].degree != 1 || !irreps[0].gens.iter().all(|g| g.is_identity()) {
        return Err(OracleError::Precondition(
            "first irrep must be trivial".into(),
        ));
    }
    let mut psi: BTreeMap<(Label, Label, Label), Matrix> = BTreeMap::new();
    let mut fusion = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let basis = intertwiners(&irreps[a], &irreps[b], &irreps[c]);
                let dc = irreps[c].degree;
                let m = match basis.len() {
                    0 => continue,
                    1 if a == 0 || b == 0 => Matrix::identity(dc),
                    1 => reshape(&basis[0], irreps[a].degree * irreps[b].degree, dc),
                    n => {
                        return Err(OracleError::Precondition(format!(
                            "{} ⊗ {} contains {} {n} times",
                            labels[a], labels[b], labels[c]
                        )))
                    }
                };
                psi.insert((a, b, c), m);
                fusion.push((a, b, c, 1));
            }
        }
    }
    let dual = (0..k)
        .map(|a| {
            (0..k)
                .find(|&b| psi.contains_key(&(a, b, 0)))
                .ok_or_else(|| OracleError::Precondition(format!("{} has no dual", labels[a])))
        })
        .collect::<Result<Vec<Label>, _>>()?;
    let ring = FusionRing::new(
        labels.iter().map(|s| s.to_string()).collect(),
        0,
        dual,
        fusion,
    )?;
    let mut f = FSymbolSet::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let id_a = Matrix::identity(irreps[a].degree);
                let id_c = Matrix::identity(irreps[c].degree);
                for d in 0..k {
                    let fs: Vec<Label> = (0..k)
                        .filter(|&x| psi.contains_key(&(b, c, x)) && psi.contains_key(&(a, x, d)))
                        .collect();
                    let right: Vec<Vec<Cyc>> = fs
                        .iter()
                        .map(|&x| flatten(&id_a.kron(&psi[&(b, c, x)]).mul(&psi[&(a, x, d)])))
                        .collect();
                    for e in 0..k {
                        let (Some(ab), Some(ec)) = (psi.get(&(a, b, e)), psi.get(&(e, c, d)))
                        else {
                            continue;
                        };
                        let left = flatten(&ab.kron(&id_c).mul(ec));
                        let cols: Vec<Vec<Cyc>> = (0..left.len())
                            .map(|i| {
                                right
                                    .iter()
                                    .map(|r| r[i].clone())
                                    .chain([left[i].clone()])
                                    .collect()
                            })
                            .collect();
                        let ker = Matrix::from_dense(cols).kernel();
                        let v = match ker.as_slice() {
                            [v] if !v[fs.len()].is_zero() => v,
                            _ => {
                                return Err(OracleError::Precondition(format!(
                                    "no change of basis for ({},{},{},{})",
                                    labels[a], labels[b], labels[c], labels[d]
                                )))
                            }
                        };
                        let scale = -v[fs.len()].inv()?;
                        for (i, &x) in fs.iter().enumerate() {
                            let val = &v[i] * &scale;
                            if !val.is_one() {
                                f.set([a, b, c, d, e, x], val.lift(conductor));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Category {
        name: name.to_string(),
        conductor,
        ring,
        f,
        pivotal: None,
    })
}

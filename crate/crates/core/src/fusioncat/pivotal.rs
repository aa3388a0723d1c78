//! Enumeration of pivotal structures and selection of the canonical one.

use super::dims::fp_dimension_simple;
use super::validate::double_dual_table;
use super::{Category, FusionError, Label, PivotalData};
use crate::exactnum::Cyc;
use crate::homcalc::{Calc, Side, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotalCandidate {
    pub data: PivotalData,
    /// `catr(j_a) = FPdim(a)` within 1e-9 for every simple.
    pub canonical: bool,
    pub spherical: bool,
}

type Triple = (Label, Label, Label);

/// All `t` with `t(1) = 1`, `t(a*) = t(a)^{-1}` and `t(a)t(b)δ(a,b,c) = t(c)`.
///
/// Free choices range over the roots of unity of `Q(ζ_N)`; every other
/// value is forced by propagation. Results are sorted deterministically.
pub fn enumerate_pivotal_structures(cat: &Category) -> Result<Vec<PivotalCandidate>, FusionError> {
    let calc = Calc::new(cat);
    let table = double_dual_table(&calc)?;
    let n = cat.conductor;
    let mut roots: Vec<Cyc> = (0..n)
        .map(|k| Cyc::root_of_unity(n, i64::from(k)))
        .collect();
    if n % 2 == 1 {
        let neg: Vec<Cyc> = roots.iter().map(|z| -z).collect();
        roots.extend(neg);
    }
    let mut t: Vec<Option<Cyc>> = vec![None; cat.rank()];
    let mut sols = Vec::new();
    search(cat, &table, &roots, &mut t, &mut sols);

    let mut out = Vec::new();
    for s in sols {
        let data = PivotalData {
            t: s.into_iter().map(|x| x.lift(n)).collect(),
        };
        out.push(classify(cat, data)?);
    }
    out.sort_by_key(|c| sort_key(&c.data));
    out.dedup_by(|a, b| a.data == b.data);
    Ok(out)
}

fn sort_key(p: &PivotalData) -> Vec<String> {
    p.t.iter()
        .map(|x| serde_json::to_string(&x.to_json()).unwrap_or_default())
        .collect()
}

fn propagate(cat: &Category, table: &[(Triple, Cyc)], t: &mut [Option<Cyc>]) -> bool {
    let ring = &cat.ring;
    loop {
        let mut changed = false;
        for a in 0..t.len() {
            let ad = ring.dual(a);
            match (&t[a], &t[ad]) {
                (Some(x), None) => {
                    let Ok(v) = x.inv() else { return false };
                    t[ad] = Some(v);
                    changed = true;
                }
                (Some(x), Some(y)) if !(x * y).is_one() => return false,
                _ => {}
            }
        }
        for ((a, b, c), d) in table {
            let (a, b, c) = (*a, *b, *c);
            match (t[a].clone(), t[b].clone(), t[c].clone()) {
                (Some(x), Some(y), Some(z)) => {
                    if &(&x * &y) * d != z {
                        return false;
                    }
                }
                (Some(x), Some(y), None) => {
                    t[c] = Some(&(&x * &y) * d);
                    changed = true;
                }
                (Some(x), None, Some(z)) => {
                    let Ok(q) = (&x * d).inv() else { return false };
                    t[b] = Some(&z * &q);
                    changed = true;
                }
                (None, Some(y), Some(z)) => {
                    let Ok(q) = (&y * d).inv() else { return false };
                    t[a] = Some(&z * &q);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(
    cat: &Category,
    table: &[(Triple, Cyc)],
    roots: &[Cyc],
    t: &mut [Option<Cyc>],
    sols: &mut Vec<Vec<Cyc>>,
) {
    let unit = cat.ring.unit();
    if t[unit].is_none() {
        t[unit] = Some(Cyc::one());
    }
    let mut work = t.to_vec();
    if !propagate(cat, table, &mut work) {
        return;
    }
    match work.iter().position(Option::is_none) {
        None => sols.push(work.into_iter().map(|x| x.expect("assigned")).collect()),
        Some(a) => {
            for z in roots {
                let mut next = work.clone();
                next[a] = Some(z.clone());
                search(cat, table, roots, &mut next, sols);
            }
        }
    }
}

fn classify(cat: &Category, data: PivotalData) -> Result<PivotalCandidate, FusionError> {
    let with = cat.with_pivotal(data.clone());
    let calc = Calc::new(&with);
    let mut canonical = true;
    let mut spherical = true;
    for a in 0..cat.rank() {
        let id = calc.identity(&Word::Leaf(a));
        let r = calc
            .ptr(&id, Side::R)
            .map_err(|e| FusionError::Spec(e.to_string()))?;
        let l = calc
            .ptr(&id, Side::L)
            .map_err(|e| FusionError::Spec(e.to_string()))?;
        if r != l {
            spherical = false;
        }
        let (re, im) = r.embed();
        let fp = fp_dimension_simple(&cat.ring, a)?;
        if (re - fp).abs() > 1e-9 || im.abs() > 1e-9 {
            canonical = false;
        }
    }
    Ok(PivotalCandidate {
        data,
        canonical,
        spherical,
    })
}

/// The pivotal structure with `catr(j_a) = FPdim(a)`, if one exists.
pub fn canonical_pivotal(cat: &Category) -> Result<Option<PivotalData>, FusionError> {
    Ok(enumerate_pivotal_structures(cat)?
        .into_iter()
        .find(|c| c.canonical)
        .map(|c| c.data))
}

//! Gauge transformations and the reversed category.

use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Category, FSymbolSet, FusionError, FusionRing, Label, PivotalData};
use crate::exactnum::Cyc;
use crate::homcalc::{Calc, HomError, Side, Word};

/// Rescaling `u(a,b,c)` of every fusion channel `Hom(c, a ⊗ b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gauge {
    pub u: BTreeMap<(Label, Label, Label), Cyc>,
}

impl Gauge {
    pub fn identity(ring: &FusionRing) -> Gauge {
        Gauge::from_fn(ring, |_, _, _| Cyc::one())
    }

    pub fn from_fn(ring: &FusionRing, mut f: impl FnMut(Label, Label, Label) -> Cyc) -> Gauge {
        let r = ring.rank();
        let mut u = BTreeMap::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if ring.admissible(a, b, c) {
                        u.insert((a, b, c), f(a, b, c));
                    }
                }
            }
        }
        Gauge { u }
    }

    fn get(&self, a: Label, b: Label, c: Label) -> Result<&Cyc, FusionError> {
        self.u
            .get(&(a, b, c))
            .ok_or_else(|| FusionError::Gauge(format!("missing entry ({a},{b},{c})")))
    }

    /// JSON object keyed by `"a,b,c"` label names.
    pub fn to_json(&self, ring: &FusionRing) -> serde_json::Value {
        let m: serde_json::Map<String, serde_json::Value> = self
            .u
            .iter()
            .map(|(&(a, b, c), v)| {
                let key = format!("{},{},{}", ring.name(a), ring.name(b), ring.name(c));
                (
                    key,
                    serde_json::to_value(v.to_json()).expect("cyc serializes"),
                )
            })
            .collect();
        serde_json::Value::Object(m)
    }
}

/// Entries `ζ_N^k` with `k` drawn from ChaCha8 seeded by `seed`
/// (`k = next_u64() mod N`, triples in label order); entries with a unit
/// input stay 1.
pub fn random_gauge(cat: &Category, seed: u64) -> Gauge {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cat.conductor;
    let unit = cat.ring.unit();
    Gauge::from_fn(&cat.ring, |a, b, _| {
        let k = rng.next_u64() % u64::from(n);
        if a == unit || b == unit {
            Cyc::one()
        } else {
            Cyc::root_of_unity(n, k as i64)
        }
    })
}

fn hom(e: HomError) -> FusionError {
    match e {
        HomError::Fusion(f) => f,
        other => FusionError::Spec(other.to_string()),
    }
}

/// `F'^{abc}_d[e,f] = u(a,b,e) u(e,c,d) / (u(b,c,f) u(a,f,d)) · F^{abc}_d[e,f]`,
/// with the pivotal coefficients transported.
pub fn gauge_transform(cat: &Category, g: &Gauge) -> Result<Category, FusionError> {
    let ring = &cat.ring;
    let r = ring.rank();
    let unit = ring.unit();
    for (&(a, b, c), v) in &g.u {
        if !ring.admissible(a, b, c) {
            return Err(FusionError::Gauge(format!(
                "entry ({}) is not admissible",
                cat.names(&[a, b, c])
            )));
        }
        if v.is_zero() {
            return Err(FusionError::Gauge(format!(
                "zero entry ({})",
                cat.names(&[a, b, c])
            )));
        }
        if (a == unit || b == unit) && !v.is_one() {
            return Err(FusionError::Gauge(format!(
                "entry ({}) must be 1",
                cat.names(&[a, b, c])
            )));
        }
    }
    let mut f = FSymbolSet::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let fm = cat.f_matrix(a, b, c, d);
                    for &e in &fm.es {
                        for &x in &fm.fs {
                            let v = cat.f_value(a, b, c, d, e, x);
                            let num = g.get(a, b, e)? * g.get(e, c, d)?;
                            let den = g.get(b, c, x)? * g.get(a, x, d)?;
                            let w = &(&num * &v) * &den.inv()?;
                            if !w.is_one() {
                                f.set([a, b, c, d, e, x], w.lift(cat.conductor));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = Category {
        name: cat.name.clone(),
        conductor: cat.conductor,
        ring: ring.clone(),
        f,
        pivotal: None,
    };
    if cat.pivotal.is_some() {
        out.pivotal = Some(transport_pivotal(cat, &out, Side::R)?);
    }
    Ok(out)
}

/// Pivotal coefficients on `target` whose right (or, for `Side::L`, left)
/// traces of simples in `source` become the right traces in `target`.
pub fn transport_pivotal(
    source: &Category,
    target: &Category,
    side: Side,
) -> Result<PivotalData, FusionError> {
    let sc = Calc::new(source);
    let tc = Calc::new(target);
    let ring = &target.ring;
    let mut t = Vec::with_capacity(ring.rank());
    for a in 0..ring.rank() {
        let tr = sc.ptr(&sc.identity(&Word::Leaf(a)), side).map_err(hom)?;
        let e = tc.ev_coefficient(ring.dual(a)).map_err(hom)?;
        t.push((&tr * &e.inv()?).lift(target.conductor));
    }
    Ok(PivotalData { t })
}

/// The category with tensor product in the opposite order.
pub fn reverse_category(cat: &Category) -> Result<Category, FusionError> {
    let ring = &cat.ring;
    let r = ring.rank();
    let mut entries = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let n = ring.n(b, a, c);
                if n > 0 {
                    entries.push((a, b, c, n));
                }
            }
        }
    }
    let rring = FusionRing::new(
        ring.labels().to_vec(),
        ring.unit(),
        (0..r).map(|a| ring.dual(a)).collect(),
        entries,
    )?;
    let mut f = FSymbolSet::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let fm = cat.f_matrix(c, b, a, d);
                    if fm.es.is_empty() {
                        continue;
                    }
                    let inv =
                        fm.m.inverse()
                            .map_err(|_| FusionError::SingularF(cat.names(&[c, b, a, d])))?;
                    for (i, &x) in fm.fs.iter().enumerate() {
                        for (j, &e) in fm.es.iter().enumerate() {
                            let v = inv.get(i, j);
                            if !v.is_one() {
                                f.set([a, b, c, d, x, e], v.lift(cat.conductor));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = Category {
        name: format!("{}^rev", cat.name),
        conductor: cat.conductor,
        ring: rring,
        f,
        pivotal: None,
    };
    if cat.pivotal.is_some() {
        out.pivotal = Some(transport_pivotal(cat, &out, Side::L)?);
    }
    Ok(out)
}

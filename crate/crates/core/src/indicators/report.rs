//! Indicator tables and the theorem sweep.

use num_integer::Integer;
use serde_json::{json, Value};

use super::{in_cyclotomic_subfield, IndicatorError, Indicators};
use crate::exactnum::Cyc;
use crate::fusioncat::{reverse_category, Category, CheckGroup, Label, ObjectExpr};
use crate::homcalc::Side;

fn embedding(v: &Cyc) -> [f64; 2] {
    let (re, im) = v.embed();
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    [clean(re), clean(im)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorCell {
    pub n: usize,
    pub r: i64,
    pub value: Cyc,
    /// `conj(ν_{n,r}) = ν_{n,n−r}`.
    pub conjugation: bool,
    /// The value lies in `Q(ζ_n)`.
    pub in_qn: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorReport {
    pub category: String,
    pub object: String,
    pub pivotal: Vec<Cyc>,
    pub n_range: (usize, usize),
    pub r_range: (i64, i64),
    pub cells: Vec<IndicatorCell>,
    /// `(n, holds)` for `(E^(n))^n = id` together with monoidality of `E`.
    pub power_identity: Vec<(usize, bool)>,
}

impl IndicatorReport {
    pub fn compute(
        ind: &Indicators,
        v: &ObjectExpr,
        n_range: (usize, usize),
        r_range: (i64, i64),
    ) -> Result<IndicatorReport, IndicatorError> {
        let cat = ind.category();
        let mut cells = Vec::new();
        let mut power_identity = Vec::new();
        for n in n_range.0..=n_range.1 {
            let rot = ind.rotation_operator(v, n)?;
            let mut ok = rot.power_is_identity();
            for o in &rot.orbits {
                if !ok {
                    break;
                }
                let labels: Vec<Label> =
                    rot.words[o.rep].iter().map(|&j| rot.summands[j]).collect();
                ok = ind.check_e_monoidal_at(&labels, 1)?;
            }
            power_identity.push((n, ok));
            for r in r_range.0..=r_range.1 {
                let value = rot.trace_power(r)?;
                let mirror = rot.trace_power(n as i64 - r)?;
                cells.push(IndicatorCell {
                    n,
                    r,
                    conjugation: value.conj() == mirror,
                    in_qn: in_cyclotomic_subfield(&value, n as u32),
                    value,
                });
            }
        }
        Ok(IndicatorReport {
            category: cat.name.clone(),
            object: v.display(&cat.ring).to_string(),
            pivotal: cat.pivotal()?.t.clone(),
            n_range,
            r_range,
            cells,
            power_identity,
        })
    }

    pub fn all_checks_pass(&self) -> bool {
        self.power_identity.iter().all(|p| p.1)
            && self.cells.iter().all(|c| c.conjugation && c.in_qn)
    }

    pub fn to_json(&self) -> String {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                json!({
                    "n": c.n,
                    "r": c.r,
                    "value": c.value.to_json(),
                    "display": c.value.to_string(),
                    "embedding": embedding(&c.value),
                    "conjugation": c.conjugation,
                    "in_qn": c.in_qn,
                })
            })
            .collect();
        let power: serde_json::Map<String, Value> = self
            .power_identity
            .iter()
            .map(|(n, ok)| (n.to_string(), Value::Bool(*ok)))
            .collect();
        let doc = json!({
            "schema": 1,
            "category": self.category,
            "object": self.object,
            "pivotal": self.pivotal.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            "n_range": [self.n_range.0, self.n_range.1],
            "r_range": [self.r_range.0, self.r_range.1],
            "cells": cells,
            "checks": {
                "power_identity": power,
                "conjugation": self.cells.iter().all(|c| c.conjugation),
                "in_qn": self.cells.iter().all(|c| c.in_qn),
            },
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,r,value,re,im,conjugation,in_qn\n");
        for c in &self.cells {
            let [re, im] = embedding(&c.value);
            out.push_str(&format!(
                "{},{},\"{}\",{},{},{},{}\n",
                c.n, c.r, c.value, re, im, c.conjugation, c.in_qn
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} / {}\n", self.category, self.object);
        for c in &self.cells {
            let [re, im] = embedding(&c.value);
            out.push_str(&format!(
                "  nu({},{}) = {}  ~ {:.6}{:+.6}i\n",
                c.n, c.r, c.value, re, im
            ));
        }
        for (n, ok) in &self.power_identity {
            out.push_str(&format!(
                "  E^{n} = id: {}\n",
                if *ok { "yes" } else { "NO" }
            ));
        }
        let conj = self.cells.iter().all(|c| c.conjugation);
        out.push_str(&format!(
            "  conjugation symmetry: {}\n",
            if conj { "yes" } else { "NO" }
        ));
        out
    }
}

pub const POWER_IDENTITY: &str = "power identity";
pub const CONJUGATION: &str = "conjugation symmetry";
pub const TRACE_OF_IDENTITY: &str = "nu(n,0) = dim";
pub const TRACE_FORMULA: &str = "trace formula";
pub const TRACE_SHIFT: &str = "trace shift";
pub const DUAL_SYMMETRY: &str = "nu_n(V) = nu_n(V*)";
pub const FS_INDEPENDENCE: &str = "FS(n,l,r) = FS(n,l+r+1)";
pub const ADDITIVITY: &str = "additivity";
pub const NATURALITY: &str = "naturality";
pub const REVERSAL: &str = "reversal symmetry";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub category: String,
    pub n_max: usize,
    pub spherical: bool,
    pub groups: Vec<CheckGroup>,
}

impl TheoremReport {
    pub fn is_ok(&self) -> bool {
        self.groups.iter().all(|g| g.passed)
    }

    pub fn group(&self, name: &str) -> Option<&CheckGroup> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn first_failure(&self) -> Option<(&str, &str)> {
        self.groups
            .iter()
            .find_map(|g| g.failures.first().map(|f| (g.name.as_str(), f.as_str())))
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "theorem checks for {} (n <= {})\n",
            self.category, self.n_max
        );
        for g in &self.groups {
            let status = match (g.skipped, g.passed) {
                (true, _) => "skip",
                (false, true) => "pass",
                (false, false) => "FAIL",
            };
            out.push_str(&format!("  [{status}] {}", g.name));
            if let Some(n) = &g.note {
                out.push_str(&format!(" ({n})"));
            }
            out.push('\n');
            for f in g.failures.iter().take(10) {
                out.push_str(&format!("      {f}\n"));
            }
        }
        out.push_str(if self.is_ok() { "ok\n" } else { "failed\n" });
        out
    }

    pub fn to_json(&self) -> String {
        let doc = json!({
            "schema": 1,
            "category": self.category,
            "n_max": self.n_max,
            "spherical": self.spherical,
            "groups": self.groups,
            "ok": self.is_ok(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}

fn note<T>(
    out: &mut Vec<String>,
    r: Result<T, IndicatorError>,
    what: impl Fn() -> String,
) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            out.push(format!("{}: {e}", what()));
            None
        }
    }
}

/// Every theorem relating indicators, rotation operators and
/// Frobenius-Schur endomorphisms, over all simples and `n ≤ n_max`.
pub fn check_fs_theorems(cat: &Category, n_max: usize) -> Result<TheoremReport, IndicatorError> {
    let ind = Indicators::new(cat)?;
    let ring = &cat.ring;
    let rank = ring.rank();
    let name = |a: Label| ring.name(a).to_string();
    let spherical = ind.is_spherical()?;

    let mut power = Vec::new();
    let mut conj = Vec::new();
    let mut dims = Vec::new();
    // nu[a][n] = [ν_{n,0}, …, ν_{n,n−1}]
    let mut nu: Vec<Vec<Option<Vec<Cyc>>>> = vec![vec![None; n_max + 1]; rank];
    for a in 0..rank {
        let v = ObjectExpr::simple(a);
        for n in 1..=n_max {
            let what = || format!("{} n={n}", name(a));
            let Some(rot) = note(&mut power, ind.rotation_operator(&v, n), what) else {
                continue;
            };
            if !rot.power_is_identity() {
                power.push(format!("E^n != id for {} at n={n}", name(a)));
            }
            for o in &rot.orbits {
                let labels: Vec<Label> =
                    rot.words[o.rep].iter().map(|&j| rot.summands[j]).collect();
                if let Some(false) = note(&mut power, ind.check_e_monoidal_at(&labels, 1), what) {
                    power.push(format!("E not monoidal on {} at n={n}", cat.names(&labels)));
                }
            }
            let vals: Vec<Cyc> = (0..n as i64)
                .map(|r| rot.trace_power(r).expect("nonzero"))
                .collect();
            if vals[0] != Cyc::from_int(ind.calc().hom_dimension(&vec![a; n]) as i64) {
                dims.push(format!("nu({n},0)({}) != dim", name(a)));
            }
            for r in 1..n {
                if vals[r].conj() != vals[n - r] {
                    conj.push(format!(
                        "conj nu({n},{r})({}) != nu({n},{})",
                        name(a),
                        n - r
                    ));
                }
            }
            nu[a][n] = Some(vals);
        }
    }

    let mut formula = Vec::new();
    let mut shift = Vec::new();
    let mut dual = Vec::new();
    let mut indep = Vec::new();
    for a in 0..rank {
        let Some(pl) = note(&mut formula, ind.ptr_id(a, Side::L), || name(a)) else {
            continue;
        };
        let Some(pr) = note(&mut formula, ind.ptr_id(a, Side::R), || name(a)) else {
            continue;
        };
        for n in 1..=n_max {
            let Some(vals) = &nu[a][n] else { continue };
            let mut lam = std::collections::BTreeMap::new();
            for l in 0..n {
                for r in 0..n - l {
                    let what = || format!("FS({n},{l},{r})({})", name(a));
                    if let Some(x) = note(&mut formula, ind.fs_scalar(a, n, l, r), what) {
                        lam.insert((l, r), x);
                    }
                }
            }
            for k in 1..=n {
                if let Some(x) = lam.get(&(k - 1, 0)) {
                    if &pl * x != vals[k % n] {
                        formula.push(format!(
                            "nu({n},{k})({}) != ptr_l(FS({n},{}))",
                            name(a),
                            k - 1
                        ));
                    }
                }
            }
            for (&(l, r), x) in &lam {
                if r > 0 {
                    if let Some(y) = lam.get(&(l + 1, r - 1)) {
                        if &pl * x != &pr * y {
                            shift.push(format!(
                                "ptr_l FS({n},{l},{r}) != ptr_r FS({n},{},{})({})",
                                l + 1,
                                r - 1,
                                name(a)
                            ));
                        }
                    }
                }
                if spherical {
                    if let Some(y) = lam.get(&(l + r, 0)) {
                        if x != y {
                            indep.push(format!(
                                "FS({n},{l},{r}) != FS({n},{})({})",
                                l + r + 1,
                                name(a)
                            ));
                        }
                    }
                }
            }
            if spherical {
                let ad = ring.dual(a);
                if let Some(other) = &nu[ad][n] {
                    if n > 1 && vals[1] != other[1] {
                        dual.push(format!("nu_{n}({}) != nu_{n}({})", name(a), name(ad)));
                    }
                }
            }
        }
    }

    let mut additivity = Vec::new();
    let mut naturality = Vec::new();
    for a in 0..rank {
        for b in a..rank {
            let v = ObjectExpr::from_terms([(a, 1), (b, 1)]);
            for n in 1..=n_max {
                let what = || format!("{}+{} n={n}", name(a), name(b));
                let Some(rot) = note(&mut additivity, ind.rotation_operator(&v, n), what) else {
                    continue;
                };
                if !rot.power_is_identity() {
                    power.push(format!("E^n != id for {}+{} at n={n}", name(a), name(b)));
                }
                let (Some(va), Some(vb)) = (&nu[a][n], &nu[b][n]) else {
                    continue;
                };
                for r in 0..n {
                    let sum = rot.trace_power(r as i64)?;
                    if r > 0 && sum.conj() != rot.trace_power((n - r) as i64)? {
                        conj.push(format!(
                            "conj nu({n},{r})({}+{}) != nu({n},{})",
                            name(a),
                            name(b),
                            n - r
                        ));
                    }
                    if r.gcd(&n) == 1 && sum != &va[r] + &vb[r] {
                        additivity.push(format!("nu({n},{r})({}+{}) != sum", name(a), name(b)));
                    }
                }
                if a == b || n > 4 {
                    continue;
                }
                for l in 0..n {
                    for r in 0..n - l {
                        if !Indicators::fs_is_natural_index(n, l, r) {
                            continue;
                        }
                        let what = || format!("FS({n},{l},{r})({}+{})", name(a), name(b));
                        let Some(m) = note(&mut naturality, ind.fs_matrix(&v, n, l, r), what)
                        else {
                            continue;
                        };
                        let (Ok(la), Ok(lb)) =
                            (ind.fs_scalar(a, n, l, r), ind.fs_scalar(b, n, l, r))
                        else {
                            continue;
                        };
                        let diag = m.get(0, 0) == la && m.get(1, 1) == lb;
                        if !diag || !m.get(0, 1).is_zero() || !m.get(1, 0).is_zero() {
                            naturality.push(format!(
                                "FS({n},{l},{r})({}+{}) is not the direct sum",
                                name(a),
                                name(b)
                            ));
                        }
                    }
                }
            }
        }
    }

    let mut reversal = Vec::new();
    match reverse_category(cat) {
        Err(e) => reversal.push(e.to_string()),
        Ok(rev) => {
            let rind = Indicators::new(&rev)?;
            for a in 0..rank {
                for n in 1..=n_max {
                    let Some(vals) = &nu[a][n] else { continue };
                    let what = || format!("reversed {} n={n}", name(a));
                    let Some(rot) = note(
                        &mut reversal,
                        rind.rotation_operator(&ObjectExpr::simple(a), n),
                        what,
                    ) else {
                        continue;
                    };
                    for k in 0..n {
                        if rot.trace_power(k as i64)? != vals[(n - k) % n] {
                            reversal.push(format!(
                                "nu({n},{k})(rev {}) != nu({n},{})",
                                name(a),
                                n - k
                            ));
                        }
                    }
                }
            }
        }
    }

    let not_spherical = "not spherical";
    let groups = vec![
        CheckGroup::from_failures(POWER_IDENTITY, power),
        CheckGroup::from_failures(CONJUGATION, conj),
        CheckGroup::from_failures(TRACE_OF_IDENTITY, dims),
        CheckGroup::from_failures(TRACE_FORMULA, formula),
        CheckGroup::from_failures(TRACE_SHIFT, shift),
        if spherical {
            CheckGroup::from_failures(DUAL_SYMMETRY, dual)
        } else {
            CheckGroup::skipped(DUAL_SYMMETRY, not_spherical)
        },
        if spherical {
            CheckGroup::from_failures(FS_INDEPENDENCE, indep)
        } else {
            CheckGroup::skipped(FS_INDEPENDENCE, not_spherical)
        },
        CheckGroup::from_failures(ADDITIVITY, additivity),
        CheckGroup::from_failures(NATURALITY, naturality),
        CheckGroup::from_failures(REVERSAL, reversal),
    ];
    Ok(TheoremReport {
        category: cat.name.clone(),
        n_max,
        spherical,
        groups,
    })
}

//! Exact axiom checks grouped into a report.

use serde::Serialize;

use super::{Category, FusionError, Label, SpecFile};
use crate::exactnum::Cyc;
use crate::homcalc::{Calc, Op, Side, Word};

/// Outcome of one axiom group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckGroup {
    pub name: String,
    pub passed: bool,
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub failures: Vec<String>,
}

impl CheckGroup {
    pub fn from_failures(name: &str, failures: Vec<String>) -> CheckGroup {
        CheckGroup {
            name: name.to_string(),
            passed: failures.is_empty(),
            skipped: false,
            note: None,
            failures,
        }
    }

    pub fn skipped(name: &str, note: &str) -> CheckGroup {
        CheckGroup {
            name: name.to_string(),
            passed: true,
            skipped: true,
            note: Some(note.to_string()),
            failures: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub structural: Vec<String>,
    pub groups: Vec<CheckGroup>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.structural.is_empty() && self.groups.iter().all(|g| g.passed)
    }

    pub fn group(&self, name: &str) -> Option<&CheckGroup> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("category {}\n", self.name);
        for e in &self.structural {
            out.push_str(&format!("  structural error: {e}\n"));
        }
        for g in &self.groups {
            let status = if g.skipped {
                "skip"
            } else if g.passed {
                "pass"
            } else {
                "FAIL"
            };
            out.push_str(&format!("  [{status}] {}", g.name));
            if let Some(n) = &g.note {
                out.push_str(&format!(" ({n})"));
            }
            out.push('\n');
            for f in g.failures.iter().take(20) {
                out.push_str(&format!("      {f}\n"));
            }
            if g.failures.len() > 20 {
                out.push_str(&format!("      ... {} more\n", g.failures.len() - 20));
            }
        }
        out.push_str(if self.is_valid() {
            "valid\n"
        } else {
            "invalid\n"
        });
        out
    }
}

pub const RING_AXIOMS: &str = "ring axioms";
pub const F_INVERTIBILITY: &str = "F invertibility";
pub const UNIT_NORMALIZATION: &str = "unit normalization";
pub const PENTAGON: &str = "pentagon";
pub const DUALITY: &str = "duality (zig-zag)";
pub const PIVOTAL_MONOIDALITY: &str = "pivotal monoidality";
pub const PIVOTAL_DUAL_INVERSE: &str = "pivotal dual-inverse";

/// Structural checks of a file followed by the axiom checks.
pub fn validate_spec(spec: &SpecFile) -> ValidationReport {
    let structural = spec.structural_errors();
    if !structural.is_empty() {
        return ValidationReport {
            name: spec.name.clone(),
            structural,
            groups: Vec::new(),
        };
    }
    match spec.to_category() {
        Ok(cat) => validate(&cat),
        Err(e) => ValidationReport {
            name: spec.name.clone(),
            structural: vec![e.to_string()],
            groups: Vec::new(),
        },
    }
}

pub fn validate(cat: &Category) -> ValidationReport {
    let ring = &cat.ring;
    let r = ring.rank();
    let mut groups = Vec::new();
    let skip_all = |groups: &mut Vec<CheckGroup>, from: usize, why: &str| {
        let names = [
            RING_AXIOMS,
            F_INVERTIBILITY,
            UNIT_NORMALIZATION,
            PENTAGON,
            DUALITY,
            PIVOTAL_MONOIDALITY,
            PIVOTAL_DUAL_INVERSE,
        ];
        for n in &names[from..] {
            groups.push(CheckGroup::skipped(n, why));
        }
    };

    let mut ring_fail = ring.axiom_failures();
    if !ring.is_multiplicity_free() {
        ring_fail.push("fusion is not multiplicity-free".to_string());
    }
    let ring_ok = ring_fail.is_empty();
    groups.push(CheckGroup::from_failures(RING_AXIOMS, ring_fail));
    if !ring_ok {
        skip_all(&mut groups, 1, "ring axioms failed");
        return report(cat, groups);
    }

    let mut inv_fail = Vec::new();
    let mut unit_fail = Vec::new();
    let u = ring.unit();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let fm = cat.f_matrix(a, b, c, d);
                    if fm.es.is_empty() && fm.fs.is_empty() {
                        continue;
                    }
                    let tag = || cat.names(&[a, b, c, d]);
                    if !fm.m.is_square() || !fm.m.is_invertible() {
                        inv_fail.push(format!("F^({}) singular", tag()));
                    }
                    if (a == u || b == u || c == u) && !fm.m.is_identity() {
                        unit_fail.push(format!("F^({}) is not the identity", tag()));
                    }
                }
            }
        }
    }
    let inv_ok = inv_fail.is_empty();
    groups.push(CheckGroup::from_failures(F_INVERTIBILITY, inv_fail));
    groups.push(CheckGroup::from_failures(UNIT_NORMALIZATION, unit_fail));
    if !inv_ok {
        skip_all(&mut groups, 3, "F-matrices not invertible");
        return report(cat, groups);
    }

    let calc = Calc::new(cat);
    groups.push(CheckGroup::from_failures(
        PENTAGON,
        pentagon_failures(&calc),
    ));
    groups.push(CheckGroup::from_failures(DUALITY, zigzag_failures(&calc)));

    match &cat.pivotal {
        None => skip_all(&mut groups, 5, "no pivotal data"),
        Some(p) => {
            let mut mono = Vec::new();
            match double_dual_table(&calc) {
                Ok(table) => {
                    for ((a, b, c), delta) in table {
                        if &(&p.t[a] * &p.t[b]) * &delta != p.t[c] {
                            mono.push(format!("t(a)t(b)δ != t(c) at ({})", cat.names(&[a, b, c])));
                        }
                    }
                }
                Err(e) => mono.push(e.to_string()),
            }
            groups.push(CheckGroup::from_failures(PIVOTAL_MONOIDALITY, mono));
            let mut di = Vec::new();
            if !p.t[u].is_one() {
                di.push("t(unit) != 1".to_string());
            }
            for a in 0..r {
                if p.t[a].is_zero() {
                    di.push(format!("t({}) = 0", ring.name(a)));
                } else if !(&p.t[a] * &p.t[ring.dual(a)]).is_one() {
                    di.push(format!("t({0}) t({0}*) != 1", ring.name(a)));
                }
            }
            groups.push(CheckGroup::from_failures(PIVOTAL_DUAL_INVERSE, di));
        }
    }
    report(cat, groups)
}

fn report(cat: &Category, groups: Vec<CheckGroup>) -> ValidationReport {
    ValidationReport {
        name: cat.name.clone(),
        structural: Vec::new(),
        groups,
    }
}

fn fwd(path: Vec<Side>) -> Op {
    Op::Assoc {
        path,
        inverse: false,
    }
}

/// Compares the two associator routes from `((ab)c)d` to `a(b(cd))` on
/// every channel.
pub(crate) fn pentagon_failures(calc: &Calc) -> Vec<String> {
    let cat = calc.category();
    let r = cat.rank();
    let route1 = [fwd(vec![]), fwd(vec![])];
    let route2 = [fwd(vec![Side::L]), fwd(vec![]), fwd(vec![Side::R])];
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let w = Word::left_nested(&[a, b, c, d]);
                    let dims = calc.dims(&w);
                    for e in 0..r {
                        if dims[e] == 0 {
                            continue;
                        }
                        let s = calc.identity_state(&w, e);
                        let x = calc.run(s.clone(), &route1);
                        let y = calc.run(s, &route2);
                        if x.mat != y.mat {
                            out.push(format!(
                                "pentagon fails at ({})",
                                cat.names(&[a, b, c, d, e])
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn zigzag_failures(calc: &Calc) -> Vec<String> {
    let cat = calc.category();
    let ring = &cat.ring;
    let mut out = Vec::new();
    for a in 0..cat.rank() {
        let ad = ring.dual(a);
        let name = ring.name(a);
        let Ok(ev) = calc.ev_ops(&Word::Leaf(a), &[Side::R]) else {
            out.push(format!(
                "no evaluation for `{name}` (F^({0},{0}*,{0}) has zero unit entry)",
                name
            ));
            continue;
        };
        let mut ops = vec![calc.db_op(&Word::Leaf(a), &[], Side::L), fwd(vec![])];
        ops.extend(ev);
        let s = calc.run(calc.identity_state(&Word::Leaf(a), a), &ops);
        if s.word != Word::Leaf(a) || !s.mat.is_identity() {
            out.push(format!("first zig-zag fails for `{name}`"));
        }
        let mut ops = vec![
            calc.db_op(&Word::Leaf(a), &[], Side::R),
            Op::Assoc {
                path: vec![],
                inverse: true,
            },
        ];
        ops.extend(
            calc.ev_ops(&Word::Leaf(a), &[Side::L])
                .expect("checked above"),
        );
        let s = calc.run(calc.identity_state(&Word::Leaf(ad), ad), &ops);
        if s.word != Word::Leaf(ad) || !s.mat.is_identity() {
            out.push(format!("second zig-zag fails for `{name}`"));
        }
    }
    out
}

/// `δ(a,b,c)` for every admissible triple, in label order.
pub fn double_dual_table(calc: &Calc) -> Result<Vec<((Label, Label, Label), Cyc)>, FusionError> {
    let ring = &calc.category().ring;
    let r = ring.rank();
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                if ring.admissible(a, b, c) {
                    let d = calc
                        .double_dual_coefficient(a, b, c)
                        .map_err(|e| FusionError::Spec(e.to_string()))?;
                    out.push(((a, b, c), d));
                }
            }
        }
    }
    Ok(out)
}

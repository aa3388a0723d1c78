//! The JSON category file format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Category, FSymbolSet, FusionError, FusionRing, Label, PivotalData};
use crate::exactnum::{Cyc, CycJson, MAX_CONDUCTOR};

/// One stored F-symbol `[F^{abc}_d]_{e,f}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FEntryJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub e: String,
    pub f: String,
    pub value: CycJson,
}

/// A category file as read from disk, before label resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub name: String,
    pub conductor: u32,
    pub simples: Vec<String>,
    pub unit: String,
    pub dual: BTreeMap<String, String>,
    pub fusion: Vec<(String, String, String, u32)>,
    #[serde(rename = "F", default)]
    pub f: Vec<FEntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivotal: Option<BTreeMap<String, CycJson>>,
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<SpecFile, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serializes");
        s.push('\n');
        s
    }

    /// Every reference or format problem, itemized. Empty when the file can
    /// be turned into a [`Category`].
    pub fn structural_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if self.conductor == 0 || self.conductor > MAX_CONDUCTOR {
            errs.push(format!(
                "conductor {} out of range 1..={}",
                self.conductor, MAX_CONDUCTOR
            ));
        }
        if self.simples.is_empty() {
            errs.push(FusionError::Empty.to_string());
        }
        let mut seen = BTreeMap::new();
        for (i, s) in self.simples.iter().enumerate() {
            if seen.insert(s.as_str(), i).is_some() {
                errs.push(FusionError::DuplicateLabel(s.clone()).to_string());
            }
        }
        let known = |l: &str| seen.contains_key(l);
        let unknown = |l: &str, ctx: &str, errs: &mut Vec<String>| {
            if !known(l) {
                errs.push(format!(
                    "{} in {}",
                    FusionError::UnknownLabel(l.to_string()),
                    ctx
                ));
            }
        };
        unknown(&self.unit, "unit", &mut errs);
        for (a, b) in &self.dual {
            unknown(a, "dual", &mut errs);
            unknown(b, "dual", &mut errs);
        }
        for s in &self.simples {
            if !self.dual.contains_key(s) {
                errs.push(format!("dual of `{s}` missing"));
            }
        }
        if errs.is_empty() {
            let d = |x: &str| self.dual[x].as_str();
            if d(&self.unit) != self.unit || self.simples.iter().any(|a| d(d(a)) != a) {
                errs.push(FusionError::BadDual.to_string());
            }
        }
        let mut fusion_seen = std::collections::BTreeSet::new();
        for (a, b, c, n) in &self.fusion {
            let ctx = format!("fusion entry [{a},{b},{c},{n}]");
            unknown(a, &ctx, &mut errs);
            unknown(b, &ctx, &mut errs);
            unknown(c, &ctx, &mut errs);
            if *n == 0 {
                errs.push(format!("{ctx}: multiplicity must be positive"));
            } else if *n > 1 {
                errs.push(
                    FusionError::NotMultiplicityFree {
                        a: a.clone(),
                        b: b.clone(),
                        c: c.clone(),
                        n: *n,
                    }
                    .to_string(),
                );
            }
            if !fusion_seen.insert((a.clone(), b.clone(), c.clone())) {
                errs.push(format!("duplicate {ctx}"));
            }
        }
        let adm = |a: &str, b: &str, c: &str| {
            fusion_seen.contains(&(a.to_string(), b.to_string(), c.to_string()))
        };
        let mut f_seen = BTreeMap::new();
        for x in &self.f {
            let key = [&x.a, &x.b, &x.c, &x.d, &x.e, &x.f];
            let tag = key.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(",");
            let before = errs.len();
            for l in key {
                unknown(l, &format!("F-entry ({tag})"), &mut errs);
            }
            if errs.len() == before
                && !(adm(&x.a, &x.b, &x.e)
                    && adm(&x.e, &x.c, &x.d)
                    && adm(&x.b, &x.c, &x.f)
                    && adm(&x.a, &x.f, &x.d))
            {
                errs.push(FusionError::InadmissibleF(tag.clone()).to_string());
            }
            if f_seen.insert(tag.clone(), ()).is_some() {
                errs.push(FusionError::DuplicateF(tag.clone()).to_string());
            }
            if let Err(e) = self.value(&x.value) {
                errs.push(format!("F-entry ({tag}): {e}"));
            }
        }
        if let Some(p) = &self.pivotal {
            for (l, v) in p {
                unknown(l, "pivotal", &mut errs);
                match self.value(v) {
                    Ok(x) if x.is_zero() => {
                        errs.push(FusionError::BadPivotal(l.clone()).to_string())
                    }
                    Ok(_) => {}
                    Err(e) => errs.push(format!("pivotal `{l}`: {e}")),
                }
            }
            for s in &self.simples {
                if !p.contains_key(s) {
                    errs.push(FusionError::BadPivotal(s.clone()).to_string());
                }
            }
        }
        errs
    }

    fn value(&self, v: &CycJson) -> Result<Cyc, FusionError> {
        if v.n == 0 || self.conductor == 0 || !self.conductor.is_multiple_of(v.n) {
            return Err(FusionError::ConductorMismatch {
                value: v.n,
                category: self.conductor,
            });
        }
        Ok(Cyc::from_json(v)?.lift(self.conductor))
    }

    pub fn to_category(&self) -> Result<Category, FusionError> {
        if let Some(e) = self.structural_errors().into_iter().next() {
            return Err(FusionError::Spec(e));
        }
        let idx: BTreeMap<&str, Label> = self
            .simples
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let dual = self
            .simples
            .iter()
            .map(|s| idx[self.dual[s].as_str()])
            .collect();
        let ring = FusionRing::new(
            self.simples.clone(),
            idx[self.unit.as_str()],
            dual,
            self.fusion
                .iter()
                .map(|(a, b, c, n)| (idx[a.as_str()], idx[b.as_str()], idx[c.as_str()], *n)),
        )?;
        let mut f = FSymbolSet::new();
        for x in &self.f {
            let key = [&x.a, &x.b, &x.c, &x.d, &x.e, &x.f].map(|s| idx[s.as_str()]);
            f.set(key, self.value(&x.value)?);
        }
        let pivotal = match &self.pivotal {
            None => None,
            Some(p) => Some(PivotalData {
                t: self
                    .simples
                    .iter()
                    .map(|s| self.value(&p[s]))
                    .collect::<Result<_, _>>()?,
            }),
        };
        Ok(Category {
            name: self.name.clone(),
            conductor: self.conductor,
            ring,
            f,
            pivotal,
        })
    }

    /// File form of a category. Stored F-entries equal to 1 are dropped.
    pub fn from_category(cat: &Category) -> SpecFile {
        let ring = &cat.ring;
        let nm = |a: Label| ring.name(a).to_string();
        let r = ring.rank();
        let mut fusion = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let n = ring.n(a, b, c);
                    if n > 0 {
                        fusion.push((nm(a), nm(b), nm(c), n));
                    }
                }
            }
        }
        let enc = |x: &Cyc| x.lift(cat.conductor).to_json();
        let f = cat
            .f
            .entries()
            .filter(|(_, v)| !v.is_one())
            .map(|(k, v)| FEntryJson {
                a: nm(k[0]),
                b: nm(k[1]),
                c: nm(k[2]),
                d: nm(k[3]),
                e: nm(k[4]),
                f: nm(k[5]),
                value: enc(v),
            })
            .collect();
        SpecFile {
            name: cat.name.clone(),
            conductor: cat.conductor,
            simples: ring.labels().to_vec(),
            unit: nm(ring.unit()),
            dual: (0..r).map(|a| (nm(a), nm(ring.dual(a)))).collect(),
            fusion,
            f,
            pivotal: cat
                .pivotal
                .as_ref()
                .map(|p| (0..r).map(|a| (nm(a), enc(&p.t[a]))).collect()),
        }
    }
}

impl Category {
    pub fn from_json(text: &str) -> Result<Category, FusionError> {
        SpecFile::from_json(text)
            .map_err(|e| FusionError::Spec(e.to_string()))?
            .to_category()
    }

    pub fn to_json(&self) -> String {
        SpecFile::from_category(self).to_json()
    }
}

//! Formal direct sums of simple objects, and their text syntax
//! `k*label + label + …`.

use std::fmt;

use super::{FusionError, FusionRing, Label};

/// Unresolved terms `(multiplicity, label name)` in source order.
pub type ParsedExpr = Vec<(u32, String)>;

/// A direct sum `⊕ k_i a_i`, terms sorted by label with zero terms dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectExpr {
    terms: Vec<(Label, u32)>,
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

impl ObjectExpr {
    pub fn simple(a: Label) -> ObjectExpr {
        ObjectExpr {
            terms: vec![(a, 1)],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Label, u32)>) -> ObjectExpr {
        let mut acc: Vec<(Label, u32)> = Vec::new();
        for (a, k) in terms {
            match acc.iter_mut().find(|(b, _)| *b == a) {
                Some((_, m)) => *m += k,
                None => acc.push((a, k)),
            }
        }
        acc.retain(|&(_, k)| k > 0);
        acc.sort_unstable();
        ObjectExpr { terms: acc }
    }

    pub fn sum(&self, other: &ObjectExpr) -> ObjectExpr {
        ObjectExpr::from_terms(self.terms.iter().chain(&other.terms).copied())
    }

    /// Parse without resolving labels.
    pub fn parse_raw(s: &str) -> Result<ParsedExpr, FusionError> {
        let bad = |m: &str| FusionError::BadExpr(format!("{m} in `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty expression"));
        }
        let mut out = Vec::new();
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (k, label) = match term.split_once('*') {
                Some((k, l)) => {
                    if k.is_empty() || !k.chars().all(|c| c.is_ascii_digit()) {
                        return Err(bad("bad multiplicity"));
                    }
                    let k: u32 = k.parse().map_err(|_| bad("multiplicity too large"))?;
                    (k, l)
                }
                None => (1, term),
            };
            if label.is_empty() || !label.chars().all(is_label_char) {
                return Err(bad("bad label"));
            }
            out.push((k, label.to_string()));
        }
        Ok(out)
    }

    pub fn resolve(parsed: &ParsedExpr, ring: &FusionRing) -> Result<ObjectExpr, FusionError> {
        let mut terms = Vec::with_capacity(parsed.len());
        for (k, l) in parsed {
            let a = ring
                .index_of(l)
                .ok_or_else(|| FusionError::UnknownLabel(l.clone()))?;
            terms.push((a, *k));
        }
        Ok(ObjectExpr::from_terms(terms))
    }

    pub fn parse(s: &str, ring: &FusionRing) -> Result<ObjectExpr, FusionError> {
        ObjectExpr::resolve(&ObjectExpr::parse_raw(s)?, ring)
    }

    pub fn terms(&self) -> &[(Label, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, a: Label) -> u32 {
        self.terms.iter().find(|(b, _)| *b == a).map_or(0, |t| t.1)
    }

    /// Summands with multiplicity, e.g. `2*a + b` gives `[a, a, b]`.
    pub fn summands(&self) -> Vec<Label> {
        self.terms
            .iter()
            .flat_map(|&(a, k)| std::iter::repeat_n(a, k as usize))
            .collect()
    }

    pub fn display<'a>(&'a self, ring: &'a FusionRing) -> impl fmt::Display + 'a {
        Shown { e: self, ring }
    }
}

struct Shown<'a> {
    e: &'a ObjectExpr,
    ring: &'a FusionRing,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        for (i, &(a, k)) in self.e.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if k != 1 {
                write!(f, "{k}*")?;
            }
            write!(f, "{}", self.ring.name(a))?;
        }
        Ok(())
    }
}

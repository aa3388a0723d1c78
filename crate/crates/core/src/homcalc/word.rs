use std::fmt;
use std::sync::Arc;

use crate::fusioncat::{FusionRing, Label};

/// A parenthesized tensor product of simple labels. The unit object is
/// strict: `Empty` never appears as a child of `Node`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Empty,
    Leaf(Label),
    Node(Arc<Word>, Arc<Word>),
}

pub type TensorWord = Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

impl Word {
    pub fn leaf(a: Label) -> Word {
        Word::Leaf(a)
    }

    /// Tensor product, absorbing the unit.
    pub fn tensor(l: Word, r: Word) -> Word {
        match (l, r) {
            (Word::Empty, r) => r,
            (l, Word::Empty) => l,
            (l, r) => Word::Node(Arc::new(l), Arc::new(r)),
        }
    }

    /// `x_1 ⊗ (x_2 ⊗ (… ⊗ x_n))`.
    pub fn right_nested(letters: &[Label]) -> Word {
        letters
            .iter()
            .rev()
            .fold(Word::Empty, |acc, &a| Word::tensor(Word::Leaf(a), acc))
    }

    /// `((x_1 ⊗ x_2) ⊗ …) ⊗ x_n`.
    pub fn left_nested(letters: &[Label]) -> Word {
        letters
            .iter()
            .fold(Word::Empty, |acc, &a| Word::tensor(acc, Word::Leaf(a)))
    }

    pub fn letters(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Label>) {
        match self {
            Word::Empty => {}
            Word::Leaf(a) => out.push(*a),
            Word::Node(l, r) => {
                l.collect(out);
                r.collect(out);
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Word::Empty => 0,
            Word::Leaf(_) => 1,
            Word::Node(l, r) => l.len() + r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Word::Empty)
    }

    pub fn is_right_nested(&self) -> bool {
        match self {
            Word::Empty | Word::Leaf(_) => true,
            Word::Node(l, r) => matches!(**l, Word::Leaf(_)) && r.is_right_nested(),
        }
    }

    pub fn canonical(&self) -> Word {
        Word::right_nested(&self.letters())
    }

    pub fn children(&self) -> Option<(&Word, &Word)> {
        match self {
            Word::Node(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn at(&self, path: &[Side]) -> Option<&Word> {
        match path.split_first() {
            None => Some(self),
            Some((s, rest)) => {
                let (l, r) = self.children()?;
                match s {
                    Side::L => l.at(rest),
                    Side::R => r.at(rest),
                }
            }
        }
    }

    /// Dual word: reversed letters, dual labels, mirrored bracketing.
    pub fn dual(&self, ring: &FusionRing) -> Word {
        match self {
            Word::Empty => Word::Empty,
            Word::Leaf(a) => Word::Leaf(ring.dual(*a)),
            Word::Node(l, r) => Word::tensor(r.dual(ring), l.dual(ring)),
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Empty => write!(f, "I"),
            Word::Leaf(a) => write!(f, "{a}"),
            Word::Node(l, r) => write!(f, "({l:?} {r:?})"),
        }
    }
}

/// A basis element of `Hom(1, x_1 ⊗ (… ⊗ x_n))`: the labels `p_0 = 1, …,
/// p_n = 1` with `p_{i-1} ⊗ x_i ∋ p_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FusionTree {
    pub word: Vec<Label>,
    pub path: Vec<Label>,
}

//! Families of category relabelings used by the discrete and
//! scale-sensitive shattering notions.

use crate::error::{Error, Result};

/// Value a relabeling assigns to a category: positive pole, negative pole,
/// or the null element that matches nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiValue {
    Plus,
    Minus,
    Star,
}

impl PsiValue {
    fn as_char(self) -> char {
        match self {
            PsiValue::Plus => '+',
            PsiValue::Minus => '-',
            PsiValue::Star => '*',
        }
    }
}

/// One mapping from the Q categories into {+1, -1, *}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiMapping {
    values: Vec<PsiValue>,
}

impl PsiMapping {
    /// Requires at least one non-star value; a mapping of stars only can
    /// never shatter anything.
    pub fn new(values: Vec<PsiValue>) -> Result<Self> {
        if values.is_empty() || values.iter().all(|v| *v == PsiValue::Star) {
            return Err(Error::NotionMismatch(
                "psi mapping must assign +1 or -1 to at least one category".into(),
            ));
        }
        Ok(PsiMapping { values })
    }

    pub fn q(&self) -> usize {
        self.values.len()
    }

    /// Value for a category index; out-of-range indices (including the
    /// rejection code) match nothing.
    pub fn apply(&self, category: usize) -> PsiValue {
        self.values.get(category).copied().unwrap_or(PsiValue::Star)
    }

    pub fn values(&self) -> &[PsiValue] {
        &self.values
    }

    /// Parses a string over `+`, `-`, `*`, one character per category.
    pub fn parse(s: &str) -> Result<Self> {
        let values = s
            .chars()
            .map(|c| match c {
                '+' => Ok(PsiValue::Plus),
                '-' => Ok(PsiValue::Minus),
                '*' => Ok(PsiValue::Star),
                other => Err(Error::NotionMismatch(format!(
                    "invalid psi mapping character `{other}`"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        PsiMapping::new(values)
    }
}

impl std::fmt::Display for PsiMapping {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for v in &self.values {
            write!(f, "{}", v.as_char())?;
        }
        Ok(())
    }
}

/// A family of relabelings, all over the same category count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiFamily {
    mappings: Vec<PsiMapping>,
    q: usize,
}

impl PsiFamily {
    pub fn new(mappings: Vec<PsiMapping>) -> Result<Self> {
        let q = match mappings.first() {
            Some(m) => m.q(),
            None => {
                return Err(Error::NotionMismatch("empty psi family".into()));
            }
        };
        if mappings.iter().any(|m| m.q() != q) {
            return Err(Error::NotionMismatch(
                "psi family mappings must all cover the same category count".into(),
            ));
        }
        Ok(PsiFamily { mappings, q })
    }

    /// The canonical pair family: for every ordered pair (k, l) of distinct
    /// categories, the mapping sending k to +1, l to -1 and the rest to *.
    /// Enumeration order is k-major, so indices are deterministic.
    pub fn natarajan(q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotionMismatch(format!(
                "pair family needs at least 2 categories, got {q}"
            )));
        }
        let mut mappings = Vec::with_capacity(q * (q - 1));
        for k in 0..q {
            for l in 0..q {
                if k == l {
                    continue;
                }
                let mut values = vec![PsiValue::Star; q];
                values[k] = PsiValue::Plus;
                values[l] = PsiValue::Minus;
                mappings.push(PsiMapping { values });
            }
        }
        Ok(PsiFamily { mappings, q })
    }

    /// Category pair (plus index, minus index) of the `idx`-th mapping of
    /// the pair family built by [`PsiFamily::natarajan`].
    pub fn natarajan_pair(q: usize, idx: usize) -> (usize, usize) {
        let k = idx / (q - 1);
        let rest = idx % (q - 1);
        let l = if rest < k { rest } else { rest + 1 };
        (k, l)
    }

    /// Index of the ordered pair (k, l) in the pair family.
    pub fn natarajan_index(q: usize, k: usize, l: usize) -> usize {
        k * (q - 1) + if l < k { l } else { l - 1 }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.mappings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mappings.is_empty()
    }

    pub fn mapping(&self, idx: usize) -> &PsiMapping {
        &self.mappings[idx]
    }

    pub fn mappings(&self) -> &[PsiMapping] {
        &self.mappings
    }
}

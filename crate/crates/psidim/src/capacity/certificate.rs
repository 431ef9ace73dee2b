//! Witness objects proving a shattering claim, re-checkable without any
//! of the search machinery, and their versioned text format.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::capacity::psi::{PsiFamily, PsiMapping};
use crate::capacity::shatter::ShatterNotion;
use crate::error::{Error, Result};

/// Per-point assignment data of a certificate: nothing for fat-shattering,
/// a family index for psi notions, an ordered category pair for the
/// Natarajan notions.
#[derive(Debug, Clone, PartialEq)]
pub enum CertAssignment {
    None,
    PsiIndices(Vec<usize>),
    IndexPairs(Vec<(usize, usize)>),
}

/// A shattering witness: the point subset (row indices into the class it
/// was produced from), per-point assignments, per-point offsets for the
/// scale-sensitive notions, and one realizing function per dichotomy.
///
/// Dichotomies are encoded as bit masks over subset positions: bit `t` set
/// means position `t` takes the +1 branch. `realizers[mask]` is the index
/// of a function realizing that dichotomy.
#[derive(Debug, Clone, PartialEq)]
pub struct ShatteringCertificate {
    pub notion: ShatterNotion,
    pub subset: Vec<usize>,
    pub assignment: CertAssignment,
    pub witnesses: Option<Vec<f64>>,
    pub realizers: Vec<usize>,
}

impl ShatteringCertificate {
    /// Restriction of this certificate to a subset of its points, given as
    /// sorted positions into `subset`. Dropped positions are pinned to the
    /// +1 branch when looking up realizers; any fixed choice works because
    /// the full certificate satisfies every dichotomy.
    pub fn restrict(&self, keep: &[usize]) -> Result<ShatteringCertificate> {
        let n = self.subset.len();
        for &p in keep {
            if p >= n {
                return Err(Error::IndexOutOfRange {
                    what: "certificate position",
                    index: p,
                    len: n,
                });
            }
        }
        let dropped_mask: usize = (0..n)
            .filter(|t| !keep.contains(t))
            .map(|t| 1usize << t)
            .sum();
        let k = keep.len();
        let mut realizers = Vec::with_capacity(1 << k);
        for small in 0..(1usize << k) {
            let mut full = dropped_mask;
            for (j, &p) in keep.iter().enumerate() {
                if small >> j & 1 == 1 {
                    full |= 1 << p;
                }
            }
            realizers.push(self.realizers[full]);
        }
        let assignment = match &self.assignment {
            CertAssignment::None => CertAssignment::None,
            CertAssignment::PsiIndices(a) => {
                CertAssignment::PsiIndices(keep.iter().map(|&p| a[p]).collect())
            }
            CertAssignment::IndexPairs(a) => {
                CertAssignment::IndexPairs(keep.iter().map(|&p| a[p]).collect())
            }
        };
        Ok(ShatteringCertificate {
            notion: self.notion.clone(),
            subset: keep.iter().map(|&p| self.subset[p]).collect(),
            assignment,
            witnesses: self
                .witnesses
                .as_ref()
                .map(|b| keep.iter().map(|&p| b[p]).collect()),
            realizers,
        })
    }

    /// Writes the versioned text format. Floats round-trip exactly.
    pub fn write_to<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "psidim-cert v1")?;
        match &self.notion {
            ShatterNotion::Fat { gamma } => {
                writeln!(w, "notion fat")?;
                writeln!(w, "gamma {gamma}")?;
            }
            ShatterNotion::PsiDiscrete { family } => {
                writeln!(w, "notion psi-discrete")?;
                write_family(w, family)?;
            }
            ShatterNotion::NatarajanDiscrete { q } => {
                writeln!(w, "notion natarajan-discrete")?;
                writeln!(w, "q {q}")?;
            }
            ShatterNotion::GammaPsi { gamma, family } => {
                writeln!(w, "notion gamma-psi")?;
                writeln!(w, "gamma {gamma}")?;
                write_family(w, family)?;
            }
            ShatterNotion::GammaNatarajan { gamma } => {
                writeln!(w, "notion gamma-natarajan")?;
                writeln!(w, "gamma {gamma}")?;
            }
        }
        writeln!(w, "subset {}", join(self.subset.iter()))?;
        match &self.assignment {
            CertAssignment::None => writeln!(w, "assignment none")?,
            CertAssignment::PsiIndices(a) => writeln!(w, "assignment psi {}", join(a.iter()))?,
            CertAssignment::IndexPairs(a) => {
                let toks: Vec<String> =
                    a.iter().map(|(k, l)| format!("{k},{l}")).collect();
                writeln!(w, "assignment pairs {}", toks.join(" "))?
            }
        }
        if let Some(b) = &self.witnesses {
            writeln!(w, "witnesses {}", join(b.iter()))?;
        }
        writeln!(w, "realizers {}", join(self.realizers.iter()))?;
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = Vec::new();
        for (idx, line) in r.lines().enumerate() {
            let line = line?;
            if !line.trim().is_empty() {
                lines.push((idx + 1, line));
            }
        }
        let mut cursor = 0usize;
        let mut take = |expect: &str| -> Result<(usize, String)> {
            let Some((lineno, line)) = lines.get(cursor) else {
                return Err(Error::Parse {
                    line: lines.last().map(|(n, _)| *n).unwrap_or(0),
                    msg: format!("unexpected end of file, expected `{expect}`"),
                });
            };
            cursor += 1;
            Ok((*lineno, line.clone()))
        };

        let (lineno, header) = take("psidim-cert v1")?;
        if header.trim() != "psidim-cert v1" {
            return Err(Error::Parse {
                line: lineno,
                msg: "expected header `psidim-cert v1`".into(),
            });
        }
        let (lineno, notion_line) = take("notion")?;
        let notion_name = field(&notion_line, "notion", lineno)?;
        let notion = match notion_name.as_str() {
            "fat" => ShatterNotion::Fat {
                gamma: parse_gamma(&mut take)?,
            },
            "psi-discrete" => ShatterNotion::PsiDiscrete {
                family: parse_family(&mut take)?,
            },
            "natarajan-discrete" => {
                let (lineno, line) = take("q")?;
                let q: usize = field(&line, "q", lineno)?.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: "invalid q".into(),
                })?;
                ShatterNotion::NatarajanDiscrete { q }
            }
            "gamma-psi" => {
                let gamma = parse_gamma(&mut take)?;
                ShatterNotion::GammaPsi {
                    gamma,
                    family: parse_family(&mut take)?,
                }
            }
            "gamma-natarajan" => ShatterNotion::GammaNatarajan {
                gamma: parse_gamma(&mut take)?,
            },
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown notion `{other}`"),
                })
            }
        };

        let (lineno, subset_line) = take("subset")?;
        let subset = parse_usizes(&subset_line, "subset", lineno)?;

        let (lineno, assign_line) = take("assignment")?;
        let rest = field(&assign_line, "assignment", lineno)?;
        let mut toks = rest.split_whitespace();
        let kind = toks.next().unwrap_or("");
        let assignment = match kind {
            "none" => CertAssignment::None,
            "psi" => CertAssignment::PsiIndices(
                toks.map(|t| {
                    t.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("invalid psi index `{t}`"),
                    })
                })
                .collect::<Result<_>>()?,
            ),
            "pairs" => CertAssignment::IndexPairs(
                toks.map(|t| {
                    let (k, l) = t.split_once(',').ok_or_else(|| Error::Parse {
                        line: lineno,
                        msg: format!("invalid pair `{t}`"),
                    })?;
                    Ok((
                        k.parse().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("invalid pair `{t}`"),
                        })?,
                        l.parse().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("invalid pair `{t}`"),
                        })?,
                    ))
                })
                .collect::<Result<_>>()?,
            ),
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown assignment kind `{other}`"),
                })
            }
        };

        let scale_sensitive = matches!(
            notion,
            ShatterNotion::Fat { .. }
                | ShatterNotion::GammaPsi { .. }
                | ShatterNotion::GammaNatarajan { .. }
        );
        let witnesses = if scale_sensitive {
            let (lineno, line) = take("witnesses")?;
            Some(parse_floats(&line, "witnesses", lineno)?)
        } else {
            None
        };

        let (lineno, realizer_line) = take("realizers")?;
        let realizers = parse_usizes(&realizer_line, "realizers", lineno)?;

        Ok(ShatteringCertificate {
            notion,
            subset,
            assignment,
            witnesses,
            realizers,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut file)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = std::io::BufReader::new(std::fs::File::open(path)?);
        Self::read_from(file)
    }
}

fn write_family<W: Write>(w: &mut W, family: &PsiFamily) -> std::io::Result<()> {
    writeln!(w, "family {}", family.len())?;
    for m in family.mappings() {
        writeln!(w, "{m}")?;
    }
    Ok(())
}

fn parse_gamma(take: &mut impl FnMut(&str) -> Result<(usize, String)>) -> Result<f64> {
    let (lineno, line) = take("gamma")?;
    field(&line, "gamma", lineno)?
        .parse()
        .map_err(|_| Error::Parse {
            line: lineno,
            msg: "invalid gamma".into(),
        })
}

fn parse_family(take: &mut impl FnMut(&str) -> Result<(usize, String)>) -> Result<PsiFamily> {
    let (lineno, line) = take("family")?;
    let count: usize = field(&line, "family", lineno)?
        .parse()
        .map_err(|_| Error::Parse {
            line: lineno,
            msg: "invalid family count".into(),
        })?;
    let mut mappings = Vec::with_capacity(count);
    for _ in 0..count {
        let (lineno, line) = take("psi mapping")?;
        mappings.push(PsiMapping::parse(line.trim()).map_err(|e| Error::Parse {
            line: lineno,
            msg: e.to_string(),
        })?);
    }
    PsiFamily::new(mappings)
}

fn field(line: &str, key: &str, lineno: usize) -> Result<String> {
    let trimmed = line.trim();
    match trimmed.strip_prefix(key) {
        Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => {
            Ok(rest.trim().to_string())
        }
        _ => Err(Error::Parse {
            line: lineno,
            msg: format!("expected `{key} ...`, got `{trimmed}`"),
        }),
    }
}

fn parse_usizes(line: &str, key: &str, lineno: usize) -> Result<Vec<usize>> {
    field(line, key, lineno)?
        .split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("invalid index `{t}`"),
            })
        })
        .collect()
}

fn parse_floats(line: &str, key: &str, lineno: usize) -> Result<Vec<f64>> {
    field(line, key, lineno)?
        .split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("invalid value `{t}`"),
            })
        })
        .collect()
}

fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

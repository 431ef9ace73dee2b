//! Finite restrictions of function classes: the evaluation tensor every
//! combinatorial capacity measure operates on.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::margin::{ScoreVector, MIN_CATEGORIES};

/// Code stored by [`FiniteFunctionClass::categorize`] for score vectors the
/// classification rule rejects (tied maximum). It matches no category, so a
/// rejected output can never satisfy a shattering condition.
pub const REJECTED_CODE: f64 = -1.0;

/// Pointwise margin transform applied to a whole class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MarginTransform {
    Delta,
    DeltaStar,
    DeltaGamma(f64),
    DeltaStarGamma(f64),
}

/// Evaluations of F functions on n points, each evaluation a vector of Q
/// real outputs. Stored row-major in (point, function, output) order.
///
/// Q = 1 is permitted here (real-valued classes, as fat-shattering needs);
/// the margin transforms require Q >= 3.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFunctionClass {
    n_points: usize,
    n_functions: usize,
    n_outputs: usize,
    values: Vec<f64>,
    /// Original domain index of each row; restriction keeps these so that
    /// witnesses can name points of the unrestricted domain.
    point_ids: Vec<usize>,
}

impl FiniteFunctionClass {
    pub fn new(
        n_points: usize,
        n_functions: usize,
        n_outputs: usize,
        values: Vec<f64>,
    ) -> Result<Self> {
        if n_points == 0 || n_functions == 0 || n_outputs == 0 {
            return Err(Error::DimensionMismatch(format!(
                "class tensor needs n >= 1, F >= 1, Q >= 1 (got n={n_points}, F={n_functions}, Q={n_outputs})"
            )));
        }
        let expected = n_points * n_functions * n_outputs;
        if values.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "class tensor expects {expected} values, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "class tensor",
            });
        }
        Ok(FiniteFunctionClass {
            n_points,
            n_functions,
            n_outputs,
            values,
            point_ids: (0..n_points).collect(),
        })
    }

    /// Builds a class from per-function score rows: `rows[f][i]` is the
    /// output vector of function `f` at point `i`.
    pub fn from_function_rows(rows: &[Vec<Vec<f64>>]) -> Result<Self> {
        let n_functions = rows.len();
        let n_points = rows.first().map(|r| r.len()).unwrap_or(0);
        let n_outputs = rows
            .first()
            .and_then(|r| r.first())
            .map(|v| v.len())
            .unwrap_or(0);
        if n_functions == 0 || n_points == 0 || n_outputs == 0 {
            return Err(Error::DimensionMismatch(
                "from_function_rows needs at least one function, point and output".into(),
            ));
        }
        let mut values = vec![0.0; n_points * n_functions * n_outputs];
        for (f, row) in rows.iter().enumerate() {
            if row.len() != n_points {
                return Err(Error::DimensionMismatch(format!(
                    "function {f} evaluated on {} points, expected {n_points}",
                    row.len()
                )));
            }
            for (i, out) in row.iter().enumerate() {
                if out.len() != n_outputs {
                    return Err(Error::DimensionMismatch(format!(
                        "function {f} point {i} has {} outputs, expected {n_outputs}",
                        out.len()
                    )));
                }
                let base = (i * n_functions + f) * n_outputs;
                values[base..base + n_outputs].copy_from_slice(out);
            }
        }
        Self::new(n_points, n_functions, n_outputs, values)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_functions(&self) -> usize {
        self.n_functions
    }

    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    pub fn point_ids(&self) -> &[usize] {
        &self.point_ids
    }

    #[inline]
    pub fn value(&self, point: usize, function: usize, output: usize) -> f64 {
        debug_assert!(point < self.n_points && function < self.n_functions);
        self.values[(point * self.n_functions + function) * self.n_outputs + output]
    }

    /// Output vector of one function at one point.
    #[inline]
    pub fn scores(&self, point: usize, function: usize) -> &[f64] {
        let base = (point * self.n_functions + function) * self.n_outputs;
        &self.values[base..base + self.n_outputs]
    }

    /// Sup-over-points, sup-over-outputs distance between two functions.
    pub fn pseudo_metric(&self, f: usize, g: usize) -> Result<f64> {
        for idx in [f, g] {
            if idx >= self.n_functions {
                return Err(Error::IndexOutOfRange {
                    what: "function",
                    index: idx,
                    len: self.n_functions,
                });
            }
        }
        let mut d = 0.0f64;
        for i in 0..self.n_points {
            let a = self.scores(i, f);
            let b = self.scores(i, g);
            for k in 0..self.n_outputs {
                d = d.max((a[k] - b[k]).abs());
            }
        }
        Ok(d)
    }

    /// Largest pairwise pseudo-distance.
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for f in 0..self.n_functions {
            for g in (f + 1)..self.n_functions {
                d = d.max(self.pseudo_metric(f, g).expect("indices in range"));
            }
        }
        d
    }

    /// Restriction to a subset of point rows (given as row indices into
    /// this class). Original point ids are carried along.
    pub fn restrict_points(&self, rows: &[usize]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::DimensionMismatch(
                "restriction needs at least one point".into(),
            ));
        }
        let mut values = Vec::with_capacity(rows.len() * self.n_functions * self.n_outputs);
        let mut point_ids = Vec::with_capacity(rows.len());
        for &r in rows {
            if r >= self.n_points {
                return Err(Error::IndexOutOfRange {
                    what: "point",
                    index: r,
                    len: self.n_points,
                });
            }
            let base = r * self.n_functions * self.n_outputs;
            values.extend_from_slice(&self.values[base..base + self.n_functions * self.n_outputs]);
            point_ids.push(self.point_ids[r]);
        }
        Ok(FiniteFunctionClass {
            n_points: rows.len(),
            n_functions: self.n_functions,
            n_outputs: self.n_outputs,
            values,
            point_ids,
        })
    }

    /// Pairs of identical functions (zero pseudo-distance). Duplicates are
    /// permitted everywhere; this flags them for callers that care.
    pub fn duplicate_function_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for f in 0..self.n_functions {
            for g in (f + 1)..self.n_functions {
                if self.pseudo_metric(f, g).expect("indices in range") == 0.0 {
                    pairs.push((f, g));
                }
            }
        }
        pairs
    }

    /// Applies a margin operator to every (point, function) score vector.
    /// Requires Q >= 3.
    pub fn apply_margin_transform(&self, transform: MarginTransform) -> Result<Self> {
        if self.n_outputs < MIN_CATEGORIES {
            return Err(Error::TooFewCategories(self.n_outputs));
        }
        let mut values = Vec::with_capacity(self.values.len());
        for i in 0..self.n_points {
            for f in 0..self.n_functions {
                let sv = ScoreVector::new(self.scores(i, f).to_vec())?;
                let out = match transform {
                    MarginTransform::Delta => sv.delta(),
                    MarginTransform::DeltaStar => sv.delta_star(),
                    MarginTransform::DeltaGamma(gamma) => sv.delta().pi_gamma(gamma)?,
                    MarginTransform::DeltaStarGamma(gamma) => sv.delta_star().pi_gamma(gamma)?,
                };
                values.extend_from_slice(out.values());
            }
        }
        Ok(FiniteFunctionClass {
            n_points: self.n_points,
            n_functions: self.n_functions,
            n_outputs: self.n_outputs,
            values,
            point_ids: self.point_ids.clone(),
        })
    }

    /// Collapses a Q >= 3 class to a Q = 1 class of category codes via the
    /// classification rule: category index as a real, or [`REJECTED_CODE`]
    /// for tied maxima. This is the input shape the discrete shattering
    /// notions expect.
    pub fn categorize(&self) -> Result<Self> {
        if self.n_outputs < MIN_CATEGORIES {
            return Err(Error::TooFewCategories(self.n_outputs));
        }
        let mut values = Vec::with_capacity(self.n_points * self.n_functions);
        for i in 0..self.n_points {
            for f in 0..self.n_functions {
                let sv = ScoreVector::new(self.scores(i, f).to_vec())?;
                values.push(match sv.classify() {
                    Some(k) => k as f64,
                    None => REJECTED_CODE,
                });
            }
        }
        Ok(FiniteFunctionClass {
            n_points: self.n_points,
            n_functions: self.n_functions,
            n_outputs: 1,
            values,
            point_ids: self.point_ids.clone(),
        })
    }

    /// Writes the tensor in the versioned text format: a header line, a
    /// shape line `n F Q`, then one line of Q outputs per (point, function)
    /// pair, point-major. Floats round-trip exactly.
    pub fn write_to<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "psidim-class v1")?;
        writeln!(w, "{} {} {}", self.n_points, self.n_functions, self.n_outputs)?;
        for i in 0..self.n_points {
            for f in 0..self.n_functions {
                let row: Vec<String> = self.scores(i, f).iter().map(|v| format!("{v}")).collect();
                writeln!(w, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines().enumerate();
        let header = next_line(&mut lines)?;
        if header.1.trim() != "psidim-class v1" {
            return Err(Error::Parse {
                line: header.0 + 1,
                msg: "expected header `psidim-class v1`".into(),
            });
        }
        let (shape_idx, shape) = next_line(&mut lines)?;
        let dims: Vec<usize> = shape
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: shape_idx + 1,
                    msg: format!("invalid shape token `{t}`"),
                })
            })
            .collect::<Result<_>>()?;
        let [n, f, q] = dims[..] else {
            return Err(Error::Parse {
                line: shape_idx + 1,
                msg: "shape line must be `n F Q`".into(),
            });
        };
        let mut values = Vec::with_capacity(n * f * q);
        for _ in 0..n * f {
            let (idx, line) = next_line(&mut lines)?;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>().map_err(|_| Error::Parse {
                        line: idx + 1,
                        msg: format!("invalid value `{t}`"),
                    })
                })
                .collect::<Result<_>>()?;
            if row.len() != q {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected {q} outputs, got {}", row.len()),
                });
            }
            values.extend_from_slice(&row);
        }
        Self::new(n, f, q, values)
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

fn next_line<I: Iterator<Item = (usize, std::io::Result<String>)>>(
    lines: &mut I,
) -> Result<(usize, String)> {
    loop {
        match lines.next() {
            Some((idx, Ok(line))) => {
                if !line.trim().is_empty() {
                    return Ok((idx, line));
                }
            }
            Some((_, Err(e))) => return Err(e.into()),
            None => {
                return Err(Error::Parse {
                    line: 0,
                    msg: "unexpected end of file".into(),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_function_class() -> FiniteFunctionClass {
        // Two points, two functions, Q = 3.
        // f0: (1,0,0) and (0,2,0); f1: zero everywhere.
        FiniteFunctionClass::from_function_rows(&[
            vec![vec![1.0, 0.0, 0.0], vec![0.0, 2.0, 0.0]],
            vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0]],
        ])
        .unwrap()
    }

    #[test]
    fn pseudo_metric_hand_values() {
        let class = two_function_class();
        assert_eq!(class.pseudo_metric(0, 1).unwrap(), 2.0);
        assert_eq!(class.pseudo_metric(0, 0).unwrap(), 0.0);

        let single = FiniteFunctionClass::from_function_rows(&[
            vec![vec![0.5, 0.0, 0.0]],
            vec![vec![0.0, 0.0, 0.4]],
        ])
        .unwrap();
        assert_eq!(single.pseudo_metric(0, 1).unwrap(), 0.5);

        assert!(class.pseudo_metric(0, 5).is_err());
    }

    #[test]
    fn margin_transform_hand_values() {
        let class =
            FiniteFunctionClass::from_function_rows(&[vec![vec![3.0, 1.0, 0.0]]]).unwrap();
        let delta = class.apply_margin_transform(MarginTransform::Delta).unwrap();
        assert_eq!(delta.scores(0, 0), &[1.0, -1.0, -1.5]);

        let dsg = class
            .apply_margin_transform(MarginTransform::DeltaStarGamma(0.5))
            .unwrap();
        assert_eq!(dsg.scores(0, 0), &[0.5, -0.5, -0.5]);

        let tie =
            FiniteFunctionClass::from_function_rows(&[vec![vec![0.25, 0.25, 0.25]]]).unwrap();
        for t in [
            MarginTransform::Delta,
            MarginTransform::DeltaStar,
            MarginTransform::DeltaGamma(1.0),
            MarginTransform::DeltaStarGamma(1.0),
        ] {
            assert_eq!(tie.apply_margin_transform(t).unwrap().scores(0, 0), &[0.0; 3]);
        }

        let q1 = FiniteFunctionClass::new(1, 1, 1, vec![0.0]).unwrap();
        assert!(q1.apply_margin_transform(MarginTransform::Delta).is_err());
    }

    #[test]
    fn categorize_marks_ties_rejected() {
        let class = FiniteFunctionClass::from_function_rows(&[
            vec![vec![3.0, 1.0, 0.0]],
            vec![vec![2.0, 2.0, 0.0]],
            vec![vec![0.0, 0.0, 4.0]],
        ])
        .unwrap();
        let codes = class.categorize().unwrap();
        assert_eq!(codes.n_outputs(), 1);
        assert_eq!(codes.scores(0, 0), &[0.0]);
        assert_eq!(codes.scores(0, 1), &[REJECTED_CODE]);
        assert_eq!(codes.scores(0, 2), &[2.0]);
    }

    #[test]
    fn restriction_keeps_point_ids() {
        let class = two_function_class();
        let restricted = class.restrict_points(&[1]).unwrap();
        assert_eq!(restricted.n_points(), 1);
        assert_eq!(restricted.point_ids(), &[1]);
        assert_eq!(restricted.scores(0, 0), &[0.0, 2.0, 0.0]);
        assert!(class.restrict_points(&[7]).is_err());
    }

    #[test]
    fn duplicates_flagged() {
        let class = FiniteFunctionClass::from_function_rows(&[
            vec![vec![1.0]],
            vec![vec![1.0]],
            vec![vec![2.0]],
        ])
        .unwrap();
        assert_eq!(class.duplicate_function_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn tensor_roundtrip_is_exact() {
        let class = FiniteFunctionClass::new(
            2,
            2,
            3,
            vec![
                0.1, -0.2, 0.3, 1.0 / 3.0, -7.25, 1e-300, 2.5, 0.0, -0.0, 42.0, 9.75, -3.5,
            ],
        )
        .unwrap();
        let mut buf = Vec::new();
        class.write_to(&mut buf).unwrap();
        let back = FiniteFunctionClass::read_from(std::io::Cursor::new(buf)).unwrap();
        assert_eq!(back.n_points(), 2);
        for (a, b) in back.values.iter().zip(&class.values) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn tensor_parse_errors_carry_line_numbers() {
        let bad_header = "nope\n1 1 1\n0\n";
        match FiniteFunctionClass::read_from(std::io::Cursor::new(bad_header)) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_value = "psidim-class v1\n1 1 1\nabc\n";
        match FiniteFunctionClass::read_from(std::io::Cursor::new(bad_value)) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_nonfinite_and_empty() {
        assert!(FiniteFunctionClass::new(1, 1, 1, vec![f64::NAN]).is_err());
        assert!(FiniteFunctionClass::new(0, 1, 1, vec![]).is_err());
        assert!(FiniteFunctionClass::new(1, 2, 1, vec![0.0]).is_err());
    }
}

//! Mercer kernels and Gram matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exec;

/// Kernel choice. Gram matrices of all three kinds are symmetric and
/// positive semi-definite up to 1e-8 on any finite point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    Linear,
    /// `(x . y + offset)^degree`, degree >= 1, offset >= 0.
    Polynomial { degree: u32, offset: f64 },
    /// `exp(-|x - y|^2 / (2 bandwidth^2))`, bandwidth > 0.
    Gaussian { bandwidth: f64 },
}

impl KernelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelSpec::Linear => Ok(()),
            KernelSpec::Polynomial { degree, offset } => {
                if degree < 1 {
                    return Err(Error::InvalidParameter {
                        name: "degree",
                        requirement: ">= 1",
                        value: degree as f64,
                    });
                }
                if !(offset >= 0.0) || !offset.is_finite() {
                    return Err(Error::InvalidParameter {
                        name: "offset",
                        requirement: ">= 0",
                        value: offset,
                    });
                }
                Ok(())
            }
            KernelSpec::Gaussian { bandwidth } => {
                if !(bandwidth > 0.0) || !bandwidth.is_finite() {
                    return Err(Error::non_positive("bandwidth", bandwidth));
                }
                Ok(())
            }
        }
    }

    /// Kernel value for two equal-length feature vectors.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), y.len());
        match *self {
            KernelSpec::Linear => dot(x, y),
            KernelSpec::Polynomial { degree, offset } => (dot(x, y) + offset).powi(degree as i32),
            KernelSpec::Gaussian { bandwidth } => {
                let d2: f64 = x
                    .iter()
                    .zip(y)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                (-d2 / (2.0 * bandwidth * bandwidth)).exp()
            }
        }
    }

    /// Parses the CLI syntax: `linear`, `poly:<degree>:<offset>`,
    /// `gaussian:<bandwidth>`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Parse {
            line: 0,
            msg: format!(
                "invalid kernel `{s}` (expected `linear`, `poly:<degree>:<offset>` or `gaussian:<bandwidth>`)"
            ),
        };
        let spec = match parts.as_slice() {
            ["linear"] => KernelSpec::Linear,
            ["poly", degree, offset] => KernelSpec::Polynomial {
                degree: degree.parse().map_err(|_| bad())?,
                offset: offset.parse().map_err(|_| bad())?,
            },
            ["gaussian", bandwidth] => KernelSpec::Gaussian {
                bandwidth: bandwidth.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl std::fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelSpec::Linear => write!(f, "linear"),
            KernelSpec::Polynomial { degree, offset } => write!(f, "poly:{degree}:{offset}"),
            KernelSpec::Gaussian { bandwidth } => write!(f, "gaussian:{bandwidth}"),
        }
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn check_points(points: &[Vec<f64>]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::EmptySample);
    };
    let dim = first.len();
    for (i, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "point {i} has {} features, expected {dim}",
                p.len()
            )));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { context: "feature vector" });
        }
    }
    Ok(dim)
}

/// Gram matrix `K[i][j] = kernel(x_i, x_j)`. Symmetric by construction;
/// rows are computed independently so the result does not depend on the
/// evaluation order.
pub fn gram(kernel: KernelSpec, points: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    kernel.validate()?;
    check_points(points)?;
    let m = points.len();
    let rows: Vec<usize> = (0..m).collect();
    let entries: Vec<Vec<f64>> = exec::map_collect(cfg!(feature = "parallel"), &rows, |&i| {
        (i..m).map(|j| kernel.eval(&points[i], &points[j])).collect()
    });
    let mut k = DMatrix::zeros(m, m);
    for i in 0..m {
        for (off, &v) in entries[i].iter().enumerate() {
            let j = i + off;
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    Ok(k)
}

/// Empirical radius of the data in feature space:
/// `max_i sqrt(kernel(x_i, x_i))`.
pub fn lambda_phi(points: &[Vec<f64>], kernel: KernelSpec) -> Result<f64> {
    kernel.validate()?;
    check_points(points)?;
    Ok(points
        .iter()
        .map(|p| kernel.eval(p, p).max(0.0).sqrt())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_hand_values() {
        let pts = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let k = gram(KernelSpec::Linear, &pts).unwrap();
        assert_eq!(k[(0, 0)], 1.0);
        assert_eq!(k[(0, 1)], 0.0);
        assert_eq!(k[(1, 1)], 1.0);

        let g = gram(KernelSpec::Gaussian { bandwidth: 0.7 }, &pts).unwrap();
        assert_eq!(g[(0, 0)], 1.0);
        assert_eq!(g[(1, 1)], 1.0);
        assert!(g[(0, 1)] < 1.0 && g[(0, 1)] > 0.0);

        let p = KernelSpec::Polynomial { degree: 2, offset: 1.0 };
        assert_eq!(p.eval(&[1.0, 0.0], &[1.0, 0.0]), 4.0);
    }

    #[test]
    fn lambda_phi_hand_values() {
        let pts = vec![vec![1.0, 0.0], vec![0.0, 2.0]];
        assert_eq!(lambda_phi(&pts, KernelSpec::Gaussian { bandwidth: 1.0 }).unwrap(), 1.0);
        assert_eq!(lambda_phi(&pts, KernelSpec::Linear).unwrap(), 2.0);
        assert_eq!(
            lambda_phi(&pts, KernelSpec::Polynomial { degree: 2, offset: 0.0 }).unwrap(),
            4.0
        );
    }

    #[test]
    fn kernel_parse_roundtrip() {
        for s in ["linear", "poly:3:0.5", "gaussian:1.5"] {
            let k = KernelSpec::parse(s).unwrap();
            assert_eq!(KernelSpec::parse(&k.to_string()).unwrap(), k);
        }
        assert!(KernelSpec::parse("poly:0:1").is_err());
        assert!(KernelSpec::parse("gaussian:0").is_err());
        assert!(KernelSpec::parse("rbf").is_err());
    }

    #[test]
    fn gram_rejects_bad_input() {
        assert!(gram(KernelSpec::Linear, &[]).is_err());
        assert!(gram(KernelSpec::Linear, &[vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(gram(KernelSpec::Linear, &[vec![f64::NAN]]).is_err());
    }
}

//! Independent certificate replay.
//!
//! This verifier shares no code with the search: it walks every dichotomy
//! of a certificate and re-checks the definitional inequalities directly
//! against the class values. `certify` in the CLI and the soundness checks
//! in the acceptance suite both run through here.

use crate::capacity::certificate::{CertAssignment, ShatteringCertificate};
use crate::capacity::class::FiniteFunctionClass;
use crate::capacity::psi::{PsiFamily, PsiValue};
use crate::capacity::shatter::{code_of, ShatterNotion};
use crate::error::{Error, Result};

fn fail(msg: String) -> Error {
    Error::CertificateInvalid(msg)
}

/// Re-checks a shattering certificate against raw class values. Returns
/// `Ok(())` iff the certificate is structurally sound and every dichotomy
/// is realized per the definition of its notion.
pub fn verify_certificate(
    class: &FiniteFunctionClass,
    cert: &ShatteringCertificate,
) -> Result<()> {
    let n = cert.subset.len();
    if n >= 32 {
        return Err(fail(format!("subset of {n} points is too large to replay")));
    }

    // Structural checks.
    let mut seen = std::collections::HashSet::new();
    for &p in &cert.subset {
        if p >= class.n_points() {
            return Err(fail(format!(
                "subset point {p} out of range (class has {} points)",
                class.n_points()
            )));
        }
        if !seen.insert(p) {
            return Err(fail(format!("subset lists point {p} twice")));
        }
    }
    if cert.realizers.len() != 1 << n {
        return Err(fail(format!(
            "expected {} realizers for {n} points, got {}",
            1usize << n,
            cert.realizers.len()
        )));
    }
    for &f in &cert.realizers {
        if f >= class.n_functions() {
            return Err(fail(format!(
                "realizer function {f} out of range (class has {} functions)",
                class.n_functions()
            )));
        }
    }
    match &cert.witnesses {
        Some(b) if !cert.notion.is_scale_sensitive() => {
            if !b.is_empty() {
                return Err(fail("discrete notion carries witness offsets".into()));
            }
        }
        Some(b) => {
            if b.len() != n {
                return Err(fail(format!(
                    "expected {n} witness offsets, got {}",
                    b.len()
                )));
            }
            if b.iter().any(|v| !v.is_finite()) {
                return Err(fail("non-finite witness offset".into()));
            }
        }
        None => {
            if cert.notion.is_scale_sensitive() {
                return Err(fail("scale-sensitive notion without witness offsets".into()));
            }
        }
    }

    // Per-notion structural fit, then the definitional replay.
    match &cert.notion {
        ShatterNotion::Fat { gamma } => {
            check_gamma(*gamma)?;
            if class.n_outputs() != 1 {
                return Err(fail("fat-shattering certificate over a class with Q != 1".into()));
            }
            if cert.assignment != CertAssignment::None {
                return Err(fail("fat-shattering certificate carries assignments".into()));
            }
            let b = cert.witnesses.as_ref().expect("checked above");
            replay(cert, |mask, t, f| {
                let v = class.value(cert.subset[t], f, 0);
                let ok = if mask >> t & 1 == 1 {
                    v - b[t] >= *gamma
                } else {
                    b[t] - v >= *gamma
                };
                ok.then_some(()).ok_or_else(|| {
                    fail(format!(
                        "dichotomy {mask:#b}: function {f} misses the fat condition at position {t} (value {v}, offset {}, gamma {gamma})",
                        b[t]
                    ))
                })
            })
        }
        ShatterNotion::PsiDiscrete { family } => {
            let indices = psi_indices(cert, family.len(), n)?;
            replay(cert, |mask, t, f| {
                let code = code_of(class.value(cert.subset[t], f, 0), family.q());
                let want = if mask >> t & 1 == 1 {
                    PsiValue::Plus
                } else {
                    PsiValue::Minus
                };
                let got = code
                    .map(|c| family.mapping(indices[t]).apply(c))
                    .unwrap_or(PsiValue::Star);
                (got == want).then_some(()).ok_or_else(|| {
                    fail(format!(
                        "dichotomy {mask:#b}: psi mapping {} of function {f} does not take the required pole at position {t}",
                        indices[t]
                    ))
                })
            })
        }
        ShatterNotion::NatarajanDiscrete { q } => {
            let pairs = index_pairs(cert, *q, n)?;
            replay(cert, |mask, t, f| {
                let code = code_of(class.value(cert.subset[t], f, 0), *q);
                let want = if mask >> t & 1 == 1 {
                    pairs[t].0
                } else {
                    pairs[t].1
                };
                (code == Some(want)).then_some(()).ok_or_else(|| {
                    fail(format!(
                        "dichotomy {mask:#b}: function {f} outputs {code:?} instead of category {want} at position {t}"
                    ))
                })
            })
        }
        ShatterNotion::GammaPsi { gamma, family } => {
            check_gamma(*gamma)?;
            if family.q() != class.n_outputs() {
                return Err(fail(format!(
                    "psi family covers {} categories but class has Q = {}",
                    family.q(),
                    class.n_outputs()
                )));
            }
            let indices = psi_indices(cert, family.len(), n)?;
            let b = cert.witnesses.as_ref().expect("checked above");
            replay(cert, |mask, t, f| {
                let psi = family.mapping(indices[t]);
                let point = cert.subset[t];
                let ok = if mask >> t & 1 == 1 {
                    (0..class.n_outputs()).any(|k| {
                        psi.apply(k) == PsiValue::Plus && class.value(point, f, k) - b[t] >= *gamma
                    })
                } else {
                    (0..class.n_outputs()).any(|l| {
                        psi.apply(l) == PsiValue::Minus && class.value(point, f, l) + b[t] >= *gamma
                    })
                };
                ok.then_some(()).ok_or_else(|| {
                    fail(format!(
                        "dichotomy {mask:#b}: function {f} misses the gamma-psi condition at position {t}"
                    ))
                })
            })
        }
        ShatterNotion::GammaNatarajan { gamma } => {
            check_gamma(*gamma)?;
            let pairs = index_pairs(cert, class.n_outputs(), n)?;
            let b = cert.witnesses.as_ref().expect("checked above");
            replay(cert, |mask, t, f| {
                let point = cert.subset[t];
                let ok = if mask >> t & 1 == 1 {
                    class.value(point, f, pairs[t].0) - b[t] >= *gamma
                } else {
                    class.value(point, f, pairs[t].1) + b[t] >= *gamma
                };
                ok.then_some(()).ok_or_else(|| {
                    fail(format!(
                        "dichotomy {mask:#b}: function {f} misses the gamma-Natarajan condition at position {t} (pair {:?}, offset {}, gamma {gamma})",
                        pairs[t], b[t]
                    ))
                })
            })
        }
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(fail(format!("gamma must be positive and finite, got {gamma}")));
    }
    Ok(())
}

fn psi_indices<'c>(
    cert: &'c ShatteringCertificate,
    family_len: usize,
    n: usize,
) -> Result<&'c [usize]> {
    let CertAssignment::PsiIndices(indices) = &cert.assignment else {
        return Err(fail("psi notion requires psi-index assignments".into()));
    };
    if indices.len() != n {
        return Err(fail(format!(
            "expected {n} psi assignments, got {}",
            indices.len()
        )));
    }
    if let Some(&bad) = indices.iter().find(|&&a| a >= family_len) {
        return Err(fail(format!(
            "psi assignment {bad} out of range (family has {family_len} mappings)"
        )));
    }
    Ok(indices)
}

fn index_pairs<'c>(
    cert: &'c ShatteringCertificate,
    q: usize,
    n: usize,
) -> Result<&'c [(usize, usize)]> {
    let CertAssignment::IndexPairs(pairs) = &cert.assignment else {
        return Err(fail("Natarajan notion requires index-pair assignments".into()));
    };
    if pairs.len() != n {
        return Err(fail(format!("expected {n} index pairs, got {}", pairs.len())));
    }
    for &(k, l) in pairs {
        if k == l {
            return Err(fail(format!("index pair ({k}, {l}) is not distinct")));
        }
        if k >= q || l >= q {
            return Err(fail(format!(
                "index pair ({k}, {l}) out of range for {q} categories"
            )));
        }
    }
    Ok(pairs)
}

/// Runs `check(mask, position, realizer)` for every dichotomy and every
/// subset position.
fn replay(
    cert: &ShatteringCertificate,
    check: impl Fn(usize, usize, usize) -> Result<()>,
) -> Result<()> {
    let n = cert.subset.len();
    for mask in 0..(1usize << n) {
        let f = cert.realizers[mask];
        for t in 0..n {
            check(mask, t, f)?;
        }
    }
    Ok(())
}

/// Convenience used by `PsiFamily`-free callsites; re-exported for tests.
#[allow(dead_code)]
pub(crate) fn natarajan_family(q: usize) -> Result<PsiFamily> {
    PsiFamily::natarajan(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tampered_certificates() {
        let class = FiniteFunctionClass::new(1, 4, 1, vec![-1.0, -0.5, 0.5, 1.0]).unwrap();
        let good = ShatteringCertificate {
            notion: ShatterNotion::Fat { gamma: 0.75 },
            subset: vec![0],
            assignment: CertAssignment::None,
            witnesses: Some(vec![0.0]),
            realizers: vec![0, 3],
        };
        verify_certificate(&class, &good).unwrap();

        // Wrong realizer: function 1 (-0.5) fails the -1 side at gamma .75.
        let mut bad = good.clone();
        bad.realizers = vec![1, 3];
        assert!(verify_certificate(&class, &bad).is_err());

        // Witness shifted out of range.
        let mut bad = good.clone();
        bad.witnesses = Some(vec![0.5]);
        assert!(verify_certificate(&class, &bad).is_err());

        // Structural breakage: wrong realizer count.
        let mut bad = good.clone();
        bad.realizers = vec![0];
        assert!(verify_certificate(&class, &bad).is_err());

        // Out-of-range subset point.
        let mut bad = good;
        bad.subset = vec![3];
        assert!(verify_certificate(&class, &bad).is_err());
    }

    #[test]
    fn rejects_mismatched_assignment_kinds() {
        let class = FiniteFunctionClass::new(1, 2, 1, vec![0.0, 1.0]).unwrap();
        let cert = ShatteringCertificate {
            notion: ShatterNotion::NatarajanDiscrete { q: 2 },
            subset: vec![0],
            assignment: CertAssignment::PsiIndices(vec![0]),
            witnesses: None,
            realizers: vec![1, 0],
        };
        assert!(verify_certificate(&class, &cert).is_err());

        let degenerate_pair = ShatteringCertificate {
            notion: ShatterNotion::NatarajanDiscrete { q: 2 },
            subset: vec![0],
            assignment: CertAssignment::IndexPairs(vec![(1, 1)]),
            witnesses: None,
            realizers: vec![1, 0],
        };
        assert!(verify_certificate(&class, &degenerate_pair).is_err());
    }
}

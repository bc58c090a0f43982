//! Gaussian quadrature rules for the weights used throughout the crate.
//!
//! Nodes and weights come from the symmetric-tridiagonal (recurrence
//! coefficient) eigenvalue method: the Jacobi matrix of the orthogonal
//! polynomial family is diagonalized with an implicit-shift QL iteration
//! that accumulates only the first row of the eigenvector matrix, which is
//! all the weights need.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Relative tolerance for the adaptive doubling stop criterion.
pub const DOUBLING_REL_TOL: f64 = 1e-10;
/// Default starting order for the phi integral of the translation operator.
pub const PHI_ORDER_DEFAULT: usize = 64;
/// Hard cap for the adaptively doubled phi order.
pub const PHI_ORDER_CAP: usize = 512;

/// Identifies the weight function and interval a rule was built for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// Weight 1 on [-1, 1].
    Legendre,
    /// Weight (1-x)^a (1+x)^b on [-1, 1].
    Jacobi { a: f64, b: f64 },
    /// Affine image of a [-1, 1] rule on (0, pi).
    ShiftedToPhi,
}

/// An immutable quadrature rule: strictly increasing interior nodes with
/// strictly positive weights.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kind: RuleKind,
    /// cos of each node, precomputed for rules on (0, pi) where the
    /// translation kernel consumes cos(phi) rather than phi itself.
    cos_nodes: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// cos(node) for each node; only populated for phi rules.
    pub fn cos_nodes(&self) -> &[f64] {
        &self.cos_nodes
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Gauss-Legendre rule on [-1, 1], exact for polynomials of degree
/// 2*order - 1.
pub fn gauss_legendre(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::InvalidOrder);
    }
    Ok(cached_jacobi(order, 0.0, 0.0)?.as_ref().clone())
}

/// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1, 1].
pub fn gauss_jacobi(order: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::InvalidOrder);
    }
    if !(a.is_finite() && a > -1.0) || !(b.is_finite() && b > -1.0) {
        return Err(Error::InvalidParameter(format!(
            "Jacobi exponents must be finite and > -1 (got a = {a}, b = {b})"
        )));
    }
    Ok(cached_jacobi(order, a, b)?.as_ref().clone())
}

/// Maps a rule on [-1, 1] onto (0, pi) for the phi integral.
pub fn shift_to_phi(rule: &QuadratureRule) -> QuadratureRule {
    let nodes: Vec<f64> = rule
        .nodes
        .iter()
        .map(|&x| 0.5 * std::f64::consts::PI * (x + 1.0))
        .collect();
    let weights = rule
        .weights
        .iter()
        .map(|&w| 0.5 * std::f64::consts::PI * w)
        .collect();
    let cos_nodes = nodes.iter().map(|&p| p.cos()).collect();
    QuadratureRule {
        nodes,
        weights,
        kind: RuleKind::ShiftedToPhi,
        cos_nodes,
    }
}

/// Applies the rule to an evaluator; errors on non-finite samples.
pub fn integrate<F: Fn(f64) -> f64>(rule: &QuadratureRule, g: F) -> Result<f64> {
    let mut acc = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = g(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample {
                x,
                context: "quadrature",
            });
        }
        acc += w * v;
    }
    Ok(acc)
}

/// Shared phi rule on (0, pi), cached per order.
pub(crate) fn cached_phi(order: usize) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&order) {
        return Ok(rule.clone());
    }
    let base = cached_jacobi(order, 0.0, 0.0)?;
    let rule = Arc::new(shift_to_phi(&base));
    cache.lock().unwrap().insert(order, rule.clone());
    Ok(rule)
}

/// Shared Gauss-Jacobi rules, cached per (order, a, b).
pub(crate) fn cached_jacobi(order: usize, a: f64, b: f64) -> Result<Arc<QuadratureRule>> {
    type Key = (usize, u64, u64);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (order, a.to_bits(), b.to_bits());
    if let Some(rule) = cache.lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build_jacobi(order, a, b)?);
    cache.lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

fn build_jacobi(order: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    let n = order;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    diag[0] = (b - a) / (a + b + 2.0);
    for idx in 0..n.saturating_sub(1) {
        let k = (idx + 1) as f64;
        let denom = 2.0 * k + a + b;
        off[idx] = 2.0 / denom
            * (k * (k + a) * (k + b) * (k + a + b) / ((denom + 1.0) * (denom - 1.0))).sqrt();
        diag[idx + 1] = (b * b - a * a) / (denom * (denom + 2.0));
    }

    let mut z = vec![0.0; n];
    z[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut off, &mut z)?;

    // total mass of the weight: 2^(a+b+1) * B(a+1, b+1)
    let mu0 = if a == 0.0 && b == 0.0 {
        2.0
    } else {
        ((a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
            - ln_gamma(a + b + 2.0))
        .exp()
    };

    let mut pairs: Vec<(f64, f64)> = diag
        .iter()
        .zip(&z)
        .map(|(&x, &zi)| (x, mu0 * zi * zi))
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());

    let (mut nodes, mut weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();

    // For a symmetric weight the rule is symmetric; enforce it exactly so the
    // middle node of an odd-order rule lands on zero.
    if a == b {
        let xs = nodes.clone();
        let ws = weights.clone();
        for i in 0..n {
            nodes[i] = 0.5 * (xs[i] - xs[n - 1 - i]);
            weights[i] = 0.5 * (ws[i] + ws[n - 1 - i]);
        }
    }

    for i in 0..n {
        if !(nodes[i] > -1.0 && nodes[i] < 1.0) || !(weights[i] > 0.0) {
            return Err(Error::NonConvergence {
                context: "Jacobi matrix eigensolve",
            });
        }
        if i > 0 && nodes[i] <= nodes[i - 1] {
            return Err(Error::NonConvergence {
                context: "Jacobi matrix eigensolve",
            });
        }
    }

    let kind = if a == 0.0 && b == 0.0 {
        RuleKind::Legendre
    } else {
        RuleKind::Jacobi { a, b }
    };
    Ok(QuadratureRule {
        nodes,
        weights,
        kind,
        cos_nodes: Vec::new(),
    })
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
///
/// `diag` holds the diagonal, `off[i]` couples rows i and i+1 (the last
/// entry is workspace). On return `diag` holds the eigenvalues and `z` the
/// first component of each normalized eigenvector, provided `z` starts as
/// the first unit vector.
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if n <= 1 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::NonConvergence {
                    context: "tridiagonal QL iteration",
                });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * off[i];
                let bb = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - bb;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

/// ln Gamma(x) for x > 0 by the Lanczos approximation (g = 7, 9 terms).
pub(crate) fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // reflection keeps the series argument away from the pole
        let s = (std::f64::consts::PI * x).sin();
        return std::f64::consts::PI.ln() - s.ln() - ln_gamma(1.0 - x);
    }
    let xm1 = x - 1.0;
    let mut acc = 0.99999999999980993;
    for (i, &c) in COEFFS.iter().enumerate() {
        acc += c / (xm1 + (i + 1) as f64);
    }
    let t = xm1 + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (xm1 + 0.5) * t.ln() - t + acc.ln()
}

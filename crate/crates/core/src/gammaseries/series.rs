//! Truncated Γ-series: evaluation, operator residuals, and loop transport.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    combinations, conormal, primitive_int_vector, rat_to_f64, smith_normal_form, Int, Rat,
};
use crate::geometry::Configuration;
use crate::param::Parameter;

use super::rgamma::rgamma;
use super::{combine, exponent_at, loop_phase, require_simplex, vectors_of_degree, SeriesSpec};

/// One term `coeff · x^v` of a truncated series.
struct Term {
    /// Exponents on the columns outside `σ`.
    u: Vec<u64>,
    v: Vec<Complex64>,
    exact_v: Option<Vec<Rat>>,
    /// Coefficient as an exact multiple of the common constant.
    ratio: Option<Rat>,
    coeff: Complex64,
}

struct Expansion {
    terms: Vec<Term>,
    bound: u64,
}

/// `Γ(z + 1) / Γ(z + t + 1)` for integer `t`.
fn gamma_ratio(z: &Rat, t: &Int) -> Rat {
    let mut out = Rat::one();
    let steps = t.abs().to_u64().expect("small shift");
    for s in 0..steps {
        let s = Rat::from_integer(s.into());
        if t.is_positive() {
            out /= z + &s + Rat::one();
        } else {
            out *= z - &s;
        }
    }
    out
}

/// `1/Γ(n + 1)` for integer `n`.
fn rgamma_int(n: &Int) -> Rat {
    if n.is_negative() {
        return Rat::zero();
    }
    let n = n.to_u64().expect("small factorial");
    (1..=n).fold(Rat::one(), |acc, i| acc / Rat::from_integer(i.into()))
}

fn to_complex(v: &[Rat]) -> Vec<Complex64> {
    v.iter().map(|x| Complex64::new(rat_to_f64(x), 0.0)).collect()
}

/// All terms of `φ_σ^k` with `u ∼ k`, `u ≥ 0`, `|u| ≤ |k| + n`.
fn expand(cfg: &Configuration, spec: &SeriesSpec, n: u64) -> Result<Expansion> {
    let inv = require_simplex(cfg, &spec.sigma)?;
    let snf = smith_normal_form(&cfg.submatrix(&spec.sigma));
    let label = snf.class_label(&combine(cfg, &spec.complement, &spec.k));
    let bound = spec.k.iter().sum::<u64>() + n;
    let m = spec.complement.len();

    let base: Option<&[Rat]> = spec.v.as_rational();
    let common = base.map(|v0| {
        v0.iter()
            .filter(|x| !x.is_integer())
            .map(|x| rgamma(Complex64::new(rat_to_f64(x) + 1.0, 0.0)))
            .product::<Complex64>()
    });

    let mut terms = Vec::new();
    for t in 0..=bound {
        for u in vectors_of_degree(m, t) {
            if snf.class_label(&combine(cfg, &spec.complement, &u)) != label {
                continue;
            }
            let v = exponent_at(cfg, &inv, &spec.sigma, &spec.complement, &u, &spec.beta);
            let term = match (&v, base) {
                (Parameter::Rational(v), Some(v0)) => {
                    let mut ratio = Rat::one();
                    for (x, x0) in v.iter().zip(v0) {
                        if x0.is_integer() {
                            ratio *= rgamma_int(&x.to_integer());
                        } else {
                            ratio *= gamma_ratio(x0, &(x - x0).to_integer());
                        }
                        if ratio.is_zero() {
                            break;
                        }
                    }
                    let coeff = common.expect("exact base") * rat_to_f64(&ratio);
                    Term {
                        u,
                        v: to_complex(v),
                        exact_v: Some(v.clone()),
                        ratio: Some(ratio),
                        coeff,
                    }
                }
                _ => {
                    let vc = v.to_complex();
                    let coeff = vc.iter().map(|z| rgamma(z + 1.0)).product();
                    Term {
                        u,
                        v: vc,
                        exact_v: None,
                        ratio: None,
                        coeff,
                    }
                }
            };
            terms.push(term);
        }
    }
    Ok(Expansion { terms, bound })
}

fn check_point(cfg: &Configuration, spec: &SeriesSpec, x: &[Complex64]) -> Result<()> {
    if !spec.convergent {
        return Err(Error::DivergentSeries(spec.sigma.clone()));
    }
    if x.len() != cfg.len() {
        return Err(Error::DimensionMismatch(format!("point has {} coordinates, expected {}", x.len(), cfg.len())));
    }
    if let Some(&i) = spec.sigma.iter().find(|&&i| x[i] == Complex64::new(0.0, 0.0)) {
        return Err(Error::BranchUndefined(i));
    }
    Ok(())
}

/// Sum of the terms with `x_i^c = exp(c·logs[i])` on `σ`.
fn sum_terms(exp: &Expansion, spec: &SeriesSpec, x: &[Complex64], logs: &[Complex64]) -> Complex64 {
    exp.terms
        .iter()
        .filter(|t| t.coeff != Complex64::new(0.0, 0.0))
        .map(|t| {
            let mut log_mono = Complex64::new(0.0, 0.0);
            for (&i, l) in spec.sigma.iter().zip(logs) {
                log_mono += t.v[i] * l;
            }
            let mut mono = log_mono.exp();
            for (&j, &uj) in spec.complement.iter().zip(&t.u) {
                mono *= x[j].powu(uj as u32);
            }
            t.coeff * mono
        })
        .sum()
}

/// Partial sum of `φ_σ^k` at `x` with principal branches on `σ`.
pub fn truncated_eval(cfg: &Configuration, spec: &SeriesSpec, x: &[Complex64], n: u64) -> Result<Complex64> {
    check_point(cfg, spec, x)?;
    let exp = expand(cfg, spec, n)?;
    let logs: Vec<Complex64> = spec.sigma.iter().map(|&i| x[i].ln()).collect();
    Ok(sum_terms(&exp, spec, x, &logs))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxResidual {
    /// The lattice vector `u` of the operator `∂^{u₊} − ∂^{u₋}`.
    pub u: Vec<i64>,
    pub norm: u64,
    /// Largest coefficient among monomials of degree `≤ bound − |u|`.
    pub low_order_max: f64,
    /// Whether those coefficients vanish exactly (exact mode only).
    pub low_order_exact_zero: Option<bool>,
    pub boundary_terms: usize,
    pub min_boundary_degree: Option<u64>,
}

impl BoxResidual {
    pub fn vanishes_below_boundary(&self, bound: u64, tol: f64) -> bool {
        let low_ok = match self.low_order_exact_zero {
            Some(z) => z,
            None => self.low_order_max <= tol,
        };
        low_ok
            && self
                .min_boundary_degree
                .map_or(true, |d| d + self.norm > bound)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    /// Total degree bound on the exponents outside `σ`.
    pub bound: u64,
    pub terms: usize,
    /// `A v = β` holds exactly for every term (exact mode only).
    pub euler_exact_zero: Option<bool>,
    pub euler_max: f64,
    pub boxes: Vec<BoxResidual>,
}

impl ResidualReport {
    pub fn passes(&self, tol: f64) -> bool {
        let euler = self.euler_exact_zero.unwrap_or(self.euler_max <= tol);
        euler && self.boxes.iter().all(|b| b.vanishes_below_boundary(self.bound, tol))
    }
}

/// Generators of `ker A ∩ Z^n`: the Smith kernel basis and all circuits.
fn lattice_generators(cfg: &Configuration) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = smith_normal_form(cfg.matrix()).kernel_basis();
    let d = cfg.dim();
    for subset in combinations(cfg.len(), d + 1) {
        // kernel vectors supported on the subset: conormal of the rows of A_S
        let rows: Vec<Vec<Int>> = (0..d).map(|i| subset.iter().map(|&j| cfg.matrix().get(i, j).clone()).collect()).collect();
        let refs: Vec<&[Int]> = rows.iter().map(Vec::as_slice).collect();
        let Some(c) = conormal(&refs, d + 1, None) else { continue };
        if c.iter().any(Zero::is_zero) {
            continue;
        }
        let mut g = vec![Int::zero(); cfg.len()];
        for (&j, x) in subset.iter().zip(c) {
            g[j] = x;
        }
        out.push(g);
    }
    let mut canon: Vec<Vec<Int>> = out
        .into_iter()
        .filter_map(|g| primitive_int_vector(&g).ok())
        .map(|g| {
            let first_neg = g.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
            if first_neg {
                g.into_iter().map(|x| -x).collect()
            } else {
                g
            }
        })
        .collect();
    canon.sort();
    canon.dedup();
    canon
}

fn falling_exact(w: &[Rat], p: &[u64]) -> Rat {
    let mut out = Rat::one();
    for (x, &k) in w.iter().zip(p) {
        for s in 0..k {
            out *= x - Rat::from_integer(s.into());
        }
    }
    out
}

fn falling_complex(w: &[Complex64], p: &[u64]) -> Complex64 {
    let mut out = Complex64::new(1.0, 0.0);
    for (x, &k) in w.iter().zip(p) {
        for s in 0..k {
            out *= x - s as f64;
        }
    }
    out
}

/// Residuals of the Euler and toric operators applied to the truncation.
///
/// Euler operators act diagonally, so each term is checked for `A v = β`.
/// For each lattice generator the toric operator's output is collected by
/// monomial; monomials below the truncation boundary must cancel.
pub fn operator_residual(cfg: &Configuration, spec: &SeriesSpec, n: u64) -> Result<ResidualReport> {
    if !spec.convergent {
        return Err(Error::DivergentSeries(spec.sigma.clone()));
    }
    let exp = expand(cfg, spec, n)?;
    let d = cfg.dim();

    let mut euler_exact = spec.beta.as_rational().map(|_| true);
    let mut euler_max: f64 = 0.0;
    for t in &exp.terms {
        match (&t.exact_v, spec.beta.as_rational()) {
            (Some(v), Some(b)) => {
                let av = cfg.matrix().mul_rat_vec(v);
                if av.as_slice() != b {
                    euler_exact = Some(false);
                }
            }
            _ => {
                let bc = spec.beta.to_complex();
                for i in 0..d {
                    let s: Complex64 = (0..cfg.len())
                        .map(|j| t.v[j] * cfg.matrix().get(i, j).to_f64().unwrap_or(f64::NAN))
                        .sum();
                    euler_max = euler_max.max((s - bc[i]).norm());
                }
            }
        }
    }

    let pos = |g: &[Int], sign: bool| -> Vec<u64> {
        g.iter()
            .map(|x| {
                let y = if sign { x.clone() } else { -x.clone() };
                if y.is_positive() {
                    y.to_u64().expect("small")
                } else {
                    0
                }
            })
            .collect()
    };
    let mut boxes = Vec::new();
    for g in lattice_generators(cfg) {
        let (gp, gm) = (pos(&g, true), pos(&g, false));
        let norm: u64 = gp.iter().chain(&gm).sum();
        let key = |t: &Term, p: &[u64]| -> Vec<i64> {
            spec.complement
                .iter()
                .zip(&t.u)
                .map(|(&j, &uj)| uj as i64 - p[j] as i64)
                .collect()
        };
        let mut exact: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        let mut numeric: BTreeMap<Vec<i64>, Complex64> = BTreeMap::new();
        for t in &exp.terms {
            for (p, sgn) in [(&gp, 1.0), (&gm, -1.0)] {
                let f = key(t, p);
                match (&t.exact_v, &t.ratio) {
                    (Some(v), Some(r)) => {
                        let c = falling_exact(v, p) * r * Rat::from_integer((sgn as i64).into());
                        *exact.entry(f).or_insert_with(Rat::zero) += c;
                    }
                    _ => {
                        let c = falling_complex(&t.v, p) * t.coeff * sgn;
                        *numeric.entry(f).or_insert(Complex64::new(0.0, 0.0)) += c;
                    }
                }
            }
        }
        let low = |f: &[i64]| (f.iter().sum::<i64>()) + norm as i64 <= exp.bound as i64;
        let degree = |f: &[i64]| f.iter().sum::<i64>().max(0) as u64;
        let mut low_max: f64 = 0.0;
        let mut low_zero = spec.beta.is_exact().then_some(true);
        let mut boundary = 0usize;
        let mut min_deg: Option<u64> = None;
        if spec.beta.is_exact() {
            let common = exp
                .terms
                .first()
                .and_then(|t| t.ratio.as_ref().map(|r| (t.coeff, r.clone())))
                .map_or(1.0, |(c, r)| if r.is_zero() { 1.0 } else { c.norm() / rat_to_f64(&r).abs() });
            for (f, c) in &exact {
                if c.is_zero() {
                    continue;
                }
                if low(f) {
                    low_zero = Some(false);
                    low_max = low_max.max(rat_to_f64(c).abs() * common);
                } else {
                    boundary += 1;
                    min_deg = Some(min_deg.map_or(degree(f), |m| m.min(degree(f))));
                }
            }
        } else {
            let scale = exp.terms.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            for (f, c) in &numeric {
                if c.norm() <= 1e-12 * scale {
                    continue;
                }
                if low(f) {
                    low_max = low_max.max(c.norm() / scale);
                } else {
                    boundary += 1;
                    min_deg = Some(min_deg.map_or(degree(f), |m| m.min(degree(f))));
                }
            }
        }
        boxes.push(BoxResidual {
            u: g.iter().map(|x| x.to_i64().expect("small")).collect(),
            norm,
            low_order_max: low_max,
            low_order_exact_zero: low_zero,
            boundary_terms: boundary,
            min_boundary_degree: min_deg,
        });
    }
    Ok(ResidualReport {
        bound: exp.bound,
        terms: exp.terms.len(),
        euler_exact_zero: euler_exact,
        euler_max,
        boxes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopCheck {
    pub measured: Complex64,
    pub expected: Complex64,
    pub error: f64,
    pub start_value: Complex64,
    pub end_value: Complex64,
    /// Largest change of the partial sum between consecutive loop steps,
    /// relative to its value at the start.
    pub max_step_jump: f64,
}

/// Carries the truncated series once around `x_col = r·e^{2πiθ}`.
///
/// The other coordinates are taken from `x`; the argument of `x_col` is
/// tracked continuously through the steps.
pub fn loop_transport_check(
    cfg: &Configuration,
    spec: &SeriesSpec,
    col: usize,
    x: &[Complex64],
    radius: f64,
    steps: usize,
    n: u64,
) -> Result<LoopCheck> {
    cfg.check_column(col)?;
    let mut base = x.to_vec();
    if base.len() == cfg.len() {
        base[col] = Complex64::new(radius, 0.0);
    }
    check_point(cfg, spec, &base)?;
    if steps == 0 || radius <= 0.0 {
        return Err(Error::Input("loop needs a positive radius and at least one step".into()));
    }
    let exp = expand(cfg, spec, n)?;
    let mut logs: Vec<Complex64> = spec.sigma.iter().map(|&i| base[i].ln()).collect();
    let slot = spec.sigma.iter().position(|&i| i == col);
    let start = sum_terms(&exp, spec, &base, &logs);
    let mut prev_value = start;
    let mut max_jump: f64 = 0.0;
    let mut arg = 0.0_f64;
    let mut prev_raw = 0.0_f64;
    let mut point = base.clone();
    for s in 1..=steps {
        let theta = 2.0 * PI * s as f64 / steps as f64;
        let z = Complex64::from_polar(radius, theta);
        let raw = z.arg();
        let mut delta = raw - prev_raw;
        while delta <= -PI {
            delta += 2.0 * PI;
        }
        while delta > PI {
            delta -= 2.0 * PI;
        }
        arg += delta;
        prev_raw = raw;
        point[col] = z;
        if let Some(k) = slot {
            logs[k] = Complex64::new(radius.ln(), arg);
        }
        let value = sum_terms(&exp, spec, &point, &logs);
        max_jump = max_jump.max((value - prev_value).norm() / start.norm().max(f64::MIN_POSITIVE));
        prev_value = value;
    }
    let measured = prev_value / start;
    let expected = loop_phase(spec, col).eigenvalue();
    Ok(LoopCheck {
        measured,
        expected,
        error: (measured - expected).norm(),
        start_value: start,
        end_value: prev_value,
        max_step_jump: max_jump,
    })
}

//! Randomized and exhaustive property suites for an algebra.
//!
//! Every algebra gets the structural suite (identity, exhaustive
//! associativity, distributivity, scalar compatibility, determinant-norm
//! multiplicativity). When the table is the antiquaternion table, the
//! closed-form suite runs as well. Output is deterministic for a given seed.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element};
use crate::antiquaternion::{AntiQuaternion, DEFAULT_EPS};
use crate::builtin;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 10_000;

/// Coefficients are drawn uniformly from `[-COEFF_RANGE, COEFF_RANGE]`.
pub const COEFF_RANGE: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub trials: usize,
    pub seed: u64,
    /// Relative tolerance of the floating-point checks.
    pub eps: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            eps: DEFAULT_EPS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Reported but not a pass/fail property (e.g. commutativity).
    Info,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Info => "INFO",
        };
        write!(f, "{tag} {} {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub target: String,
    pub settings: Settings,
    pub results: Vec<PropertyResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| r.outcome == Outcome::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verify {} trials={} seed={} eps={:e}",
            self.target, self.settings.trials, self.settings.seed, self.settings.eps
        )?;
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        let failed = self.failures().count();
        let passed = self
            .results
            .iter()
            .filter(|r| r.outcome == Outcome::Pass)
            .count();
        writeln!(f, "summary: {passed} passed, {failed} failed")
    }
}

/// Largest residual over a sampled property, with the first failing inputs
/// kept for the report.
struct Tracker {
    name: &'static str,
    trials: usize,
    max_residual: f64,
    first_failure: Option<String>,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            trials: 0,
            max_residual: 0.0,
            first_failure: None,
        }
    }

    fn record(&mut self, residual: f64, tolerance: f64, inputs: impl FnOnce() -> String) {
        self.trials += 1;
        self.max_residual = self.max_residual.max(residual);
        let ratio = residual / tolerance;
        // NaN residuals count as failures
        if (ratio.is_nan() || ratio > 1.0) && self.first_failure.is_none() {
            self.first_failure = Some(inputs());
        }
    }

    fn finish(self) -> PropertyResult {
        let mut detail = format!(
            "trials={} max_residual={:e}",
            self.trials, self.max_residual
        );
        let outcome = match self.first_failure {
            Some(w) => {
                detail.push_str(&format!(" counterexample={w}"));
                Outcome::Fail
            }
            None => Outcome::Pass,
        };
        PropertyResult {
            name: self.name,
            outcome,
            detail,
        }
    }
}

fn random_coeffs(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.gen_range(-COEFF_RANGE..=COEFF_RANGE))
        .collect()
}

fn random_aq(rng: &mut ChaCha8Rng) -> AntiQuaternion {
    let c = random_coeffs(rng, 4);
    AntiQuaternion::new(c[0], c[1], c[2], c[3]).expect("finite sample")
}

/// Random nonzero element with `a1^2 + a2^2 = a3^2 + a4^2`.
pub fn random_zero_divisor(rng: &mut ChaCha8Rng) -> AntiQuaternion {
    loop {
        let a1: f64 = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        let a2: f64 = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        let r = a1.hypot(a2);
        if r == 0.0 {
            continue;
        }
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        return AntiQuaternion::new(a1, a2, r * phi.cos(), r * phi.sin()).expect("finite sample");
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn vec_str(v: &[f64]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|x| crate::antiquaternion::format_real(*x))
        .collect();
    format!("({})", parts.join(", "))
}

fn list_str(vs: &[&[f64]]) -> String {
    vs.iter().map(|v| vec_str(v)).collect::<Vec<_>>().join(" ")
}

/// Runs every applicable suite against `alg`.
pub fn run(alg: &Algebra, settings: Settings) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut results = structural_suite(alg, settings, &mut rng);
    if alg.table() == builtin::antiquaternions().table() {
        results.extend(antiquaternion_suite(settings, &mut rng));
    }
    Report {
        target: alg.name().to_string(),
        settings,
        results,
    }
}

pub fn structural_suite(alg: &Algebra, s: Settings, rng: &mut ChaCha8Rng) -> Vec<PropertyResult> {
    let table = alg.table();
    let n = alg.dim();
    let mut out = Vec::new();

    let mut identity = Tracker::new("identity_law");
    let mut e1 = vec![0.0; n];
    e1[0] = 1.0;
    for _ in 0..s.trials {
        let x = random_coeffs(rng, n);
        let l = table.mul_f64(&e1, &x);
        let r = table.mul_f64(&x, &e1);
        let res = max_abs_diff(&l, &x).max(max_abs_diff(&r, &x));
        identity.record(res, f64::MIN_POSITIVE, || vec_str(&x));
    }
    out.push(identity.finish());

    out.push(match alg.check_associativity() {
        None => PropertyResult {
            name: "associativity",
            outcome: Outcome::Pass,
            detail: format!("triples={}", n * n * n),
        },
        Some((i, j, k)) => PropertyResult {
            name: "associativity",
            outcome: Outcome::Fail,
            detail: format!("witness=(e{i}, e{j}, e{k})"),
        },
    });

    out.push(PropertyResult {
        name: "commutativity",
        outcome: Outcome::Info,
        detail: match alg.check_commutativity() {
            None => "commutative=true".into(),
            Some((i, j)) => format!("commutative=false witness=(e{i}, e{j})"),
        },
    });

    let mut distributive = Tracker::new("distributivity");
    let mut scalar = Tracker::new("scalar_compatibility");
    let mut norm = Tracker::new("norm_multiplicativity");
    let handle = Arc::new(alg.clone());
    let det = |v: &[f64]| {
        Element::new(handle.clone(), v.to_vec())
            .expect("sample has algebra dimension")
            .left_mul_matrix()
            .determinant()
    };
    for _ in 0..s.trials {
        let x = random_coeffs(rng, n);
        let y = random_coeffs(rng, n);
        let z = random_coeffs(rng, n);
        let yz: Vec<f64> = y.iter().zip(&z).map(|(a, b)| a + b).collect();
        let lhs = table.mul_f64(&x, &yz);
        let xy = table.mul_f64(&x, &y);
        let xz = table.mul_f64(&x, &z);
        let rhs: Vec<f64> = xy.iter().zip(&xz).map(|(a, b)| a + b).collect();
        distributive.record(
            max_abs_diff(&lhs, &rhs),
            s.eps * (1.0 + max_abs(&rhs)),
            || list_str(&[&x, &y, &z]),
        );

        let k1: f64 = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        let k2: f64 = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        let kx: Vec<f64> = x.iter().map(|v| k1 * v).collect();
        let ky: Vec<f64> = y.iter().map(|v| k2 * v).collect();
        let lhs = table.mul_f64(&kx, &ky);
        let rhs: Vec<f64> = xy.iter().map(|v| k1 * k2 * v).collect();
        scalar.record(
            max_abs_diff(&lhs, &rhs),
            s.eps * (1.0 + max_abs(&rhs)),
            || format!("k1={k1:e} k2={k2:e} {}", list_str(&[&x, &y])),
        );

        let (nx, ny, nxy) = (det(&x), det(&y), det(&xy));
        norm.record(
            (nxy - nx * ny).abs(),
            s.eps * (1.0 + (nx * ny).abs()),
            || list_str(&[&x, &y]),
        );
    }
    out.push(distributive.finish());
    out.push(scalar.finish());
    out.push(norm.finish());
    out
}

pub fn antiquaternion_suite(s: Settings, rng: &mut ChaCha8Rng) -> Vec<PropertyResult> {
    let table = builtin::antiquaternions().table().clone();
    let mut oracle = Tracker::new("closed_form_product_matches_table");
    let mut norm = Tracker::new("norm_closed_form");
    let mut pseudo = Tracker::new("pseudonorm_multiplicativity");
    let mut conj_prod = Tracker::new("conjugate_product_is_pseudonorm");
    let mut conj_sum = Tracker::new("conjugate_sum_is_scalar");
    let mut anti = Tracker::new("conjugate_reverses_products");
    let mut assoc = Tracker::new("associativity_random");
    let mut solve = Tracker::new("conjugate_via_solve");
    let mut ldiv = Tracker::new("left_division_residual");
    let mut rdiv = Tracker::new("right_division_residual");
    let mut zd = Tracker::new("zero_divisor_closure");

    for _ in 0..s.trials {
        let w1 = random_aq(rng);
        let w2 = random_aq(rng);
        let w3 = random_aq(rng);
        let (a, b) = (w1.to_array(), w2.to_array());
        let inputs = || list_str(&[&a, &b]);

        let fast = (w1 * w2).to_array();
        let slow = table.mul_f64(&a, &b);
        oracle.record(
            max_abs_diff(&fast, &slow),
            1e-12 * (1.0 + max_abs(&slow)),
            inputs,
        );

        let det = w1.left_mul_matrix().determinant();
        norm.record((det - w1.norm()).abs(), s.eps * (1.0 + w1.norm()), || {
            vec_str(&a)
        });

        let (p1, p2) = (w1.pseudonorm(), w2.pseudonorm());
        pseudo.record(
            ((w1 * w2).pseudonorm() - p1 * p2).abs(),
            s.eps * (1.0 + (p1 * p2).abs()),
            inputs,
        );

        let wc = (w1 * w1.conjugate()).to_array();
        conj_prod.record(
            max_abs_diff(&wc, &[p1, 0.0, 0.0, 0.0]),
            1e-12 * (1.0 + p1.abs()),
            || vec_str(&a),
        );
        let sum = (w1 + w1.conjugate()).to_array();
        conj_sum.record(max_abs(&sum[1..]), f64::MIN_POSITIVE, || vec_str(&a));

        let lhs = (w1 * w2).conjugate().to_array();
        let rhs = (w2.conjugate() * w1.conjugate()).to_array();
        anti.record(
            max_abs_diff(&lhs, &rhs),
            1e-12 * (1.0 + max_abs(&rhs)),
            inputs,
        );

        let l = ((w1 * w2) * w3).to_array();
        let r = (w1 * (w2 * w3)).to_array();
        assoc.record(max_abs_diff(&l, &r), s.eps * (1.0 + max_abs(&r)), || {
            list_str(&[&a, &b, &w3.to_array()])
        });

        if w2.is_invertible() {
            let scale = 1.0 + w1.max_abs();
            let xl = w1.div_left(w2).expect("invertible divisor");
            ldiv.record(
                max_abs_diff(&(w2 * xl).to_array(), &a),
                s.eps * scale,
                inputs,
            );
            let xr = w1.div_right(w2).expect("invertible divisor");
            rdiv.record(
                max_abs_diff(&(xr * w2).to_array(), &a),
                s.eps * scale,
                inputs,
            );
            if let Ok(c) = w2.conjugate_via_solve() {
                solve.record(
                    max_abs_diff(&c.to_array(), &w2.conjugate().to_array()),
                    s.eps * (1.0 + w2.max_abs()),
                    || vec_str(&b),
                );
            }
        }

        let z = random_zero_divisor(rng);
        let flagged = z.is_zero_divisor(s.eps).unwrap_or(false)
            && z.conjugate().is_zero_divisor(s.eps).unwrap_or(false);
        let annihilated = max_abs(&(z * z.conjugate()).to_array());
        let residual = if flagged { annihilated } else { f64::INFINITY };
        zd.record(residual, s.eps * (1.0 + z.max_abs().powi(2)), || {
            vec_str(&z.to_array())
        });
    }

    [
        oracle, norm, pseudo, conj_prod, conj_sum, anti, assoc, solve, ldiv, rdiv, zd,
    ]
    .into_iter()
    .map(Tracker::finish)
    .collect()
}

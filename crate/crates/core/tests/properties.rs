use hypercomplex::antiquaternion::{AntiQuaternion, DEFAULT_EPS};
use hypercomplex::expr;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn aq(c: [f64; 4]) -> AntiQuaternion {
    AntiQuaternion::from_array(c).unwrap()
}

fn element() -> impl Strategy<Value = AntiQuaternion> {
    proptest::array::uniform4(-10.0f64..10.0).prop_map(aq)
}

fn close(a: AntiQuaternion, b: AntiQuaternion, tol: f64) -> bool {
    a.to_array()
        .iter()
        .zip(b.to_array())
        .all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #[test]
    fn conjugate_is_involution_and_additive(w1 in element(), w2 in element()) {
        prop_assert_eq!(w1.conjugate().conjugate(), w1);
        prop_assert_eq!((w1 + w2).conjugate(), w1.conjugate() + w2.conjugate());
        let s = (w1 + w1.conjugate()).to_array();
        prop_assert_eq!(&s[1..], &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn product_with_conjugate_is_pseudonorm(w in element()) {
        let p = w.pseudonorm();
        prop_assert!(close(w * w.conjugate(), aq([p, 0.0, 0.0, 0.0]), 1e-12 * (1.0 + p.abs())));
        prop_assert!(close(w.conjugate() * w, aq([p, 0.0, 0.0, 0.0]), 1e-12 * (1.0 + p.abs())));
    }

    #[test]
    fn associative_and_distributive(w1 in element(), w2 in element(), w3 in element()) {
        let l = (w1 * w2) * w3;
        let r = w1 * (w2 * w3);
        prop_assert!(close(l, r, 1e-9 * (1.0 + r.max_abs())));
        let l = w1 * (w2 + w3);
        let r = w1 * w2 + w1 * w3;
        prop_assert!(close(l, r, 1e-9 * (1.0 + r.max_abs())));
    }

    #[test]
    fn scalars_factor_out(w1 in element(), w2 in element(), k1 in -10.0f64..10.0, k2 in -10.0f64..10.0) {
        let l = w1.scale(k1) * w2.scale(k2);
        let r = (w1 * w2).scale(k1 * k2);
        prop_assert!(close(l, r, 1e-9 * (1.0 + r.max_abs())));
    }

    #[test]
    fn inverse_is_two_sided(w in element()) {
        prop_assume!(w.is_invertible());
        let inv = w.inverse().unwrap();
        let tol = 1e-9 * (1.0 + w.max_abs() * inv.max_abs());
        prop_assert!(close(w * inv, AntiQuaternion::E1, tol));
        prop_assert!(close(inv * w, AntiQuaternion::E1, tol));
    }

    #[test]
    fn zero_divisor_iff_zero_pseudonorm(a1 in -10.0f64..10.0, a2 in -10.0f64..10.0, phi in 0.0f64..std::f64::consts::TAU) {
        let r = a1.hypot(a2);
        prop_assume!(r > 1e-6);
        let z = aq([a1, a2, r * phi.cos(), r * phi.sin()]);
        prop_assert_eq!(z.is_zero_divisor(DEFAULT_EPS), Ok(true));
        prop_assert!(!z.is_invertible());
        prop_assert!(z.inverse().is_err());
        // w * conj(w) = pseudonorm(w) e1 = 0
        prop_assert!((z * z.conjugate()).max_abs() <= 1e-12 * (1.0 + r * r));
    }

    #[test]
    fn printed_values_round_trip(c in proptest::array::uniform4(proptest::num::f64::NORMAL | proptest::num::f64::ZERO | proptest::num::f64::SUBNORMAL)) {
        let w = aq(c);
        let back = expr::evaluate(&w.to_string()).unwrap();
        prop_assert_eq!(back.to_array().map(f64::to_bits), c.map(f64::to_bits));
    }
}

/// Test-side expression tree: rendered to source and also evaluated by
/// composing antiquaternion operations directly.
enum Tree {
    Lit([f64; 4]),
    Basis(usize),
    Scalar(f64),
    Neg(Box<Tree>),
    Conj(Box<Tree>),
    Add(Box<Tree>, Box<Tree>),
    Sub(Box<Tree>, Box<Tree>),
    Mul(Box<Tree>, Box<Tree>),
    Func(&'static str, Box<Tree>),
}

fn gen_tree(rng: &mut ChaCha8Rng, depth: usize) -> Tree {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return match rng.gen_range(0..3) {
            0 => Tree::Lit(std::array::from_fn(|_| rng.gen_range(-2.0..2.0))),
            1 => Tree::Basis(rng.gen_range(1..=4)),
            _ => Tree::Scalar(rng.gen_range(0.0..3.0)),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(gen_tree(rng, depth - 1));
    match rng.gen_range(0..8) {
        0 => Tree::Neg(sub(rng)),
        1 => Tree::Conj(sub(rng)),
        2 => Tree::Add(sub(rng), sub(rng)),
        3 => Tree::Sub(sub(rng), sub(rng)),
        4 | 5 => Tree::Mul(sub(rng), sub(rng)),
        6 => Tree::Func("conj", sub(rng)),
        _ => {
            let f = if rng.gen_bool(0.5) { "pnorm" } else { "norm" };
            Tree::Func(f, sub(rng))
        }
    }
}

fn render(t: &Tree) -> String {
    match t {
        Tree::Lit(c) => format!("({}, {}, {}, {})", c[0], c[1], c[2], c[3]),
        Tree::Basis(k) => format!("e{k}"),
        Tree::Scalar(v) => format!("{v}"),
        Tree::Neg(x) => format!("-{}", render(x)),
        Tree::Conj(x) => format!("~{}", render(x)),
        Tree::Add(a, b) => format!("({} + {})", render(a), render(b)),
        Tree::Sub(a, b) => format!("({} - {})", render(a), render(b)),
        Tree::Mul(a, b) => format!("({} * {})", render(a), render(b)),
        Tree::Func(f, x) => format!("{f}({})", render(x)),
    }
}

fn direct(t: &Tree) -> AntiQuaternion {
    // non-finite scalars stay non-finite so overflow is visible to the caller
    let scalar = |v: f64| AntiQuaternion::scalar(v).unwrap_or(AntiQuaternion::E1.scale(v));
    match t {
        Tree::Lit(c) => aq(*c),
        Tree::Basis(k) => AntiQuaternion::basis(*k).unwrap(),
        Tree::Scalar(v) => aq([*v, 0.0, 0.0, 0.0]),
        Tree::Neg(x) => -direct(x),
        Tree::Conj(x) => direct(x).conjugate(),
        Tree::Add(a, b) => direct(a) + direct(b),
        Tree::Sub(a, b) => direct(a) - direct(b),
        Tree::Mul(a, b) => direct(a) * direct(b),
        Tree::Func("conj", x) => direct(x).conjugate(),
        Tree::Func("pnorm", x) => scalar(direct(x).pseudonorm()),
        Tree::Func("norm", x) => scalar(direct(x).norm()),
        Tree::Func(f, _) => unreachable!("{f}"),
    }
}

fn finite_everywhere(t: &Tree) -> bool {
    let here = direct(t).is_finite();
    here && match t {
        Tree::Lit(_) | Tree::Basis(_) | Tree::Scalar(_) => true,
        Tree::Neg(x) | Tree::Conj(x) | Tree::Func(_, x) => finite_everywhere(x),
        Tree::Add(a, b) | Tree::Sub(a, b) | Tree::Mul(a, b) => {
            finite_everywhere(a) && finite_everywhere(b)
        }
    }
}

#[test]
fn evaluator_matches_direct_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for _ in 0..1000 {
        let t = gen_tree(&mut rng, 5);
        let src = render(&t);
        let got = expr::evaluate(&src);
        if finite_everywhere(&t) {
            let want = direct(&t);
            let got = got.unwrap_or_else(|e| panic!("{src}: {e}"));
            assert_eq!(
                got.to_array().map(f64::to_bits),
                want.to_array().map(f64::to_bits),
                "{src}"
            );
            checked += 1;
        } else {
            assert!(got.is_err(), "{src} should overflow");
        }
    }
    assert!(checked > 900, "only {checked} finite cases");
}

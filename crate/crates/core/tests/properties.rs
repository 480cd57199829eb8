use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use polygrowth::growth::{self, log_alpha_at_depth, GrowthOptions};
use polygrowth::orbit::{self, Budget};
use polygrowth::{parse_poly, Ball, Dyadic, Precision, Rational, RationalPoly};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec(arb_rational(), 1..=max_deg + 1).prop_map(RationalPoly::new)
}

fn prec(bits: u64) -> Precision {
    Precision::new(bits).unwrap()
}

proptest! {
    #[test]
    fn print_parse_round_trip(p in arb_poly(5)) {
        let text = p.to_string();
        prop_assert_eq!(parse_poly(&text).unwrap(), p);
    }

    #[test]
    fn normalization_identity(p in arb_poly(5), x in arb_rational()) {
        prop_assume!(p.degree().unwrap_or(0) >= 2 && p.leading().unwrap().is_positive());
        let n = p.derive_normalization().unwrap();
        let d = n.degree;
        // P(x) = c_d (x + s)^d + R(x) with deg R <= d - 2
        let xs = &x + &n.shift;
        let rhs = &n.leading * num_traits::pow(xs, d) + n.remainder.eval(&x);
        prop_assert_eq!(p.eval(&x), rhs);
        prop_assert!(n.remainder.degree().is_none_or(|r| r + 2 <= d));
        prop_assert_eq!(n.b.clone(), -n.shift.clone());
    }

    #[test]
    fn integer_valued_matches_brute_force(p in arb_poly(4)) {
        let brute = (-30i64..=30).all(|k| p.eval(&Rational::from_integer(k.into())).is_integer());
        prop_assert_eq!(p.is_integer_valued(), brute);
    }

    #[test]
    fn eval_ball_contains_exact(p in arb_poly(4), x in arb_rational()) {
        let b = Ball::from_rational(&x, prec(64));
        let v = p.eval_ball(&b, prec(64));
        prop_assert!(v.contains_rational(&p.eval(&x)));
    }

    #[test]
    fn ball_arithmetic_contains_rational_results(
        a in arb_rational(), b in arb_rational(), bits in 8u64..120
    ) {
        let p = prec(bits);
        let ba = Ball::from_rational(&a, p);
        let bb = Ball::from_rational(&b, p);
        prop_assert!(ba.add(&bb, p).contains_rational(&(&a + &b)));
        prop_assert!(ba.sub(&bb, p).contains_rational(&(&a - &b)));
        prop_assert!(ba.mul(&bb, p).contains_rational(&(&a * &b)));
        if !b.is_zero() && !bb.contains_zero() {
            prop_assert!(ba.div(&bb, p).unwrap().contains_rational(&(&a / &b)));
        }
    }

    #[test]
    fn root_then_power_contains_input(n in 1i64..10_000, k in 2u32..6) {
        let p = prec(80);
        let r = Ball::from_int(n).root(k, p).unwrap();
        prop_assert!(r.pow(k as u64, p).contains_rational(&Rational::from_integer(n.into())));
    }

    #[test]
    fn exp_log_inverse(n in 1i64..1_000_000, d in 1i64..1000) {
        let p = prec(100);
        let x = Ball::from_rational(&q(n, d), p);
        let back = x.log(p).unwrap().exp(p).unwrap();
        prop_assert!(back.contains_rational(&q(n, d)));
    }

    #[test]
    fn dyadic_round_error_is_exact(m in any::<i64>(), e in -80i64..80, bits in 1u64..64) {
        let x = Dyadic::new(BigInt::from(m), e);
        let (r, err) = x.round(bits);
        prop_assert!(r.bits() <= bits);
        prop_assert_eq!((&x - &r).abs(), err);
    }
}

#[test]
fn orbit_invariants_hold_on_examples() {
    for (p, x0) in [("x^2+1", 0), ("x^2-x+1", 2), ("x^2-2", 3), ("x^3-x", 2), ("x^2-x", 2)] {
        let rec = orbit::analyze(&parse_poly(p).unwrap(), &Rational::from_integer(x0.into()), &Budget::default()).unwrap();
        assert!(rec.check_invariants(), "{p}");
    }
}

#[test]
fn deeper_enclosures_nest_in_shallower_ones() {
    for (p, x0) in [("x^2+1", 0), ("x^2-x+1", 2), ("2*x^2-3", 2), ("x^3+x+1", 1)] {
        let poly = parse_poly(p).unwrap();
        let rec = orbit::analyze(&poly, &Rational::from_integer(x0.into()), &Budget::default()).unwrap();
        let norm = poly.derive_normalization().unwrap();
        let m = rec.escape_index().unwrap();
        let rec = rec.extended(m + 9, 1_000_000).unwrap();
        let pr = prec(256);
        for depth in m..m + 3 {
            let (shallow, _) = log_alpha_at_depth(&norm, &rec, depth, pr).unwrap();
            let (deep, _) = log_alpha_at_depth(&norm, &rec, depth + 5, pr).unwrap();
            assert!(shallow.contains_dyadic(deep.mid()), "{p} depth {depth}");
        }
    }
}

#[test]
fn tightening_the_target_shrinks_the_radius() {
    let poly = parse_poly("x^2+1").unwrap();
    let x0 = Rational::zero();
    let (_, coarse) = growth::growth_constant(&poly, &x0, &GrowthOptions::with_target_bits(40)).unwrap();
    let (_, fine) = growth::growth_constant(&poly, &x0, &GrowthOptions::with_target_bits(160)).unwrap();
    assert!(fine.alpha.rad() < coarse.alpha.rad());
    assert!(coarse.alpha.contains_ball(&fine.alpha) || coarse.alpha.intersects(&fine.alpha));
    assert!(fine.target_met);
}

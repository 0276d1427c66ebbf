//! Values expanded independently with a computer algebra system.

use num_rational::BigRational;

use origami_core::kchar::{PointAssignment, Var};
use origami_core::series::{z_closed, z_localized, z_rank1_product, zhat_closed, zhat_localized, EvalContext};
use origami_core::vertex::{contribution, FixedPoint, Ranks};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn qs(s: &str) -> BigRational {
    s.parse().unwrap()
}

fn point(vals: &[(Var, i64, i64)]) -> PointAssignment {
    vals.iter()
        .fold(PointAssignment::new(), |p, &(v, n, d)| p.with_ratio(v, n, d))
}

#[test]
fn single_contributions() {
    let p = point(&[(Var::T1, 2, 1), (Var::T2, 3, 1), (Var::W(1, 1), 5, 1), (Var::W(2, 1), 7, 1)]);
    let r11 = Ranks::new(1, 1).unwrap();
    let cases = [(vec![1, 0], q(20, 1)), (vec![0, 1], q(-15, 2)), (vec![2, 1], q(-3915525, 608))];
    for (parts, want) in cases {
        let bn = FixedPoint::new(r11, parts).unwrap();
        assert_eq!(contribution(&bn).unwrap().eval_point(&p).unwrap(), want, "{bn}");
    }

    let p = p.with_ratio(Var::W(1, 2), 11, 1);
    let bn = FixedPoint::new(Ranks::new(2, 1).unwrap(), vec![1, 2, 1]).unwrap();
    assert_eq!(
        contribution(&bn).unwrap().eval_point(&p).unwrap(),
        qs("-89848954625/6930432")
    );
}

#[test]
fn series_coefficients() {
    let p = point(&[(Var::T1, 2, 1), (Var::T2, 3, 1), (Var::W(1, 1), 5, 1), (Var::W(2, 1), 7, 1)]);
    let ctx = EvalContext::new(p, 0, 3);
    let want: Vec<BigRational> = ["1", "25/2", "4975/48", "6370225/8736"].map(qs).to_vec();
    let r11 = Ranks::new(1, 1).unwrap();
    assert_eq!(z_localized(r11, &ctx).unwrap().coeffs(), &want[..]);
    assert_eq!(z_closed(r11, &ctx).unwrap().coeffs(), &want[..]);

    let rank1: Vec<BigRational> = ["1", "5/2", "85/16", "4505/416"].map(qs).to_vec();
    assert_eq!(z_rank1_product(&ctx).unwrap().coeffs(), &rank1[..]);

    let p = point(&[
        (Var::T1, 2, 3),
        (Var::T2, 5, 7),
        (Var::W(1, 1), 13, 1),
        (Var::W(1, 2), 17, 1),
        (Var::W(2, 1), 19, 1),
    ]);
    let ctx = EvalContext::new(p, 0, 3);
    let want: Vec<BigRational> = [
        "1",
        "473/126",
        "7928899/952560",
        "3543756190337/248566721760",
    ]
    .map(qs)
    .to_vec();
    let r21 = Ranks::new(2, 1).unwrap();
    assert_eq!(z_localized(r21, &ctx).unwrap().coeffs(), &want[..]);
    assert_eq!(z_closed(r21, &ctx).unwrap().coeffs(), &want[..]);
}

#[test]
fn twisted_coefficients() {
    let p = point(&[(Var::U1, 2, 1), (Var::U2, 3, 1), (Var::W(1, 1), 5, 1), (Var::W(2, 1), 7, 1)]);
    let ctx = EvalContext::new(p, 0, 2);
    let want: Vec<BigRational> = ["1", "1225/144", "2305597/41472"].map(qs).to_vec();
    let r11 = Ranks::new(1, 1).unwrap();
    assert_eq!(zhat_localized(r11, &ctx).unwrap().coeffs(), &want[..]);
    assert_eq!(zhat_closed(r11, &ctx).unwrap().coeffs(), &want[..]);
}

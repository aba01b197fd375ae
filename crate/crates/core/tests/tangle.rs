use nsqft::cyclo::CycloNum;
use nsqft::hopf::{stabilization_params, SqrtChoice, StabilizationParams};
use nsqft::rep::{Category, Morphism};
use nsqft::tangle::*;
use nsqft::Error;
use std::sync::OnceLock;

struct Env {
    cat: Category,
    coupons: CouponRegistry,
    params: StabilizationParams,
}

fn env() -> &'static Env {
    static E: OnceLock<Env> = OnceLock::new();
    E.get_or_init(|| {
        let cat = Category::qsl2(3).unwrap();
        let coupons = CouponRegistry::standard(&cat).unwrap();
        let params = stabilization_params(&cat.hopf, SqrtChoice::Positive).unwrap();
        Env { cat, coupons, params }
    })
}

fn ev() -> Evaluator<'static> {
    let e = env();
    Evaluator::new(&e.cat, &e.coupons)
}

fn rt(text: &str) -> Morphism {
    ev().evaluate_rt(&parse_tangle(text).unwrap()).unwrap()
}

fn bichrome_scalar(text: &str) -> CycloNum {
    ev().evaluate_bichrome(&parse_tangle(text).unwrap()).unwrap().scalar()
}

fn t_h() -> CycloNum {
    let e = env();
    e.cat.modified_trace(&e.cat.h_endomorphism().unwrap()).unwrap()
}

#[test]
fn identity_program() {
    let m = rt("bottom P1^\nslice id\n");
    assert!(m.matrix.is_identity());
    assert_eq!(m.source.name(), "P1");
}

#[test]
fn loop_is_quantum_dimension() {
    let e = env();
    let m = rt("bottom\nslice coev(P1)\nslice ev'\n");
    let p = e.cat.p1().unwrap();
    assert_eq!(m.scalar(), p.act(&e.cat.hopf.pivotal_g).trace());
    assert!(m.scalar().is_zero());
    // the other orientation
    assert!(rt("bottom\nslice coev'(P1)\nslice ev\n").scalar().is_zero());
    // the regular module has zero quantum dimension too, trivial has one
    assert_eq!(rt("bottom\nslice coev(triv)\nslice ev'\n").scalar(), e.cat.ctx().one());
}

#[test]
fn crossing_then_inverse_is_identity() {
    assert!(rt("bottom P1^ P1^\nslice x+\nslice x-\n").matrix.is_identity());
    assert!(rt("bottom P1v P1^\nslice x-\nslice x+\n").matrix.is_identity());
}

#[test]
fn kinks_agree_with_twist_pieces() {
    let e = env();
    let p = e.cat.p1().unwrap();
    let theta = e.cat.twist(p).matrix;
    let theta_inv = e.cat.twist_inv(p).matrix;
    // right curl with a positive crossing
    let right = rt("bottom P1^\nslice id, coev(P1)\nslice x+, id\nslice id, ev'\n");
    assert_eq!(right.matrix, theta);
    // left curl with a positive crossing
    let left = rt("bottom P1^\nslice coev'(P1), id\nslice id, x+\nslice ev, id\n");
    assert_eq!(left.matrix, theta);
    let neg = rt("bottom P1^\nslice id, coev(P1)\nslice x-, id\nslice id, ev'\n");
    assert_eq!(neg.matrix, theta_inv);
    assert_eq!(rt("bottom P1^\nslice tw+\n").matrix, theta);
    // downward strand
    let down = rt("bottom P1v\nslice id, coev'(P1)\nslice x+, id\nslice id, ev\n");
    assert_eq!(down.matrix, rt("bottom P1v\nslice tw+\n").matrix);
}

#[test]
fn snakes_are_identity() {
    assert!(rt("bottom P1^\nslice coev(P1), id\nslice id, ev\n").matrix.is_identity());
    assert!(rt("bottom P1^\nslice id, coev'(P1)\nslice ev', id\n").matrix.is_identity());
    assert!(rt("bottom P1v\nslice coev'(P1), id\nslice id, ev'\n").matrix.is_identity());
}

#[test]
fn id_slices_change_nothing() {
    let a = rt("bottom P1^ P1^\nslice x+\nslice tw-, id\n");
    let b = rt("bottom P1^ P1^\nslice id, id\nslice x+\nslice id, id\nslice tw-, id\nslice id, id\n");
    assert_eq!(a.matrix, b.matrix);
}

#[test]
fn double_braiding_with_regular() {
    let e = env();
    let m = nsqft::hopf::m_matrix(&e.cat.hopf);
    let p = e.cat.p1().unwrap();
    let got = rt("bottom H^ P1^\nslice x+\nslice x+\n");
    let mut want = nsqft::cyclo::ExactMatrix::zeros(e.cat.ctx(), 27 * 6, 27 * 6);
    for (a, b, c) in e.cat.hopf.split2(&m) {
        want = want.add(&e.cat.regular.action(a).kron(p.action(b)).scale(c));
    }
    assert_eq!(got.matrix, want);
}

#[test]
fn red_unknots_give_stabilization_coefficients() {
    let e = env();
    let minus = bichrome_scalar("bottom red:Hv red:H^\nslice id, tw-\nslice ev\n");
    let plus = bichrome_scalar("bottom red:Hv red:H^\nslice id, tw+\nslice ev\n");
    assert_eq!(minus, e.params.delta_minus);
    assert_eq!(plus, e.params.delta_plus);
    assert!(bichrome_scalar("bottom red:Hv red:H^\nslice ev\n").is_zero());
    // a +1 kink drawn with a crossing instead of a twist piece
    let kink = "bottom red:Xv red:X^\nslice id, id, coev(red:X)\nslice id, x+, id\nslice id, id, ev'\nslice ev\n";
    assert_eq!(bichrome_scalar(kink), e.params.delta_plus);
    let ast = parse_tangle(kink).unwrap();
    let w = check(&ast, &e.coupons).unwrap();
    assert_eq!(red_link(&ast, &w).unwrap().framings, vec![1]);
}

#[test]
fn bichrome_rejects_uncut_red() {
    let ast = parse_tangle("bottom\nslice coev(red:H)\nslice ev'\n").unwrap();
    assert!(matches!(ev().evaluate_bichrome(&ast), Err(Error::Inadmissible(_))));
    let ast = parse_tangle("bottom P1^ red:Hv red:H^\nslice id, ev\n").unwrap();
    assert!(matches!(ev().evaluate_bichrome(&ast), Err(Error::Inadmissible(_))));
}

#[test]
fn red_into_blue_coupon_rejected() {
    let ast = parse_tangle("bottom red:Hv red:P1^\nslice id, coupon(h)\nslice ev\n").unwrap();
    assert!(matches!(check(&ast, &env().coupons), Err(Error::Type { .. })));
}

#[test]
fn coend_coupon_accepts_red() {
    // i_H on (λ⊗1) is λ as an element of coad; close it with the counit of coad
    let e = env();
    let mut reg = e.coupons.clone();
    let counit = Morphism::new(
        e.cat.coadjoint.clone(),
        e.cat.trivial.clone(),
        nsqft::cyclo::ExactMatrix::row_vector(e.cat.ctx(), 27, &e.cat.hopf.unit),
    );
    reg.insert("epsL", counit).unwrap();
    let eval = Evaluator::new(&e.cat, &reg);
    let ast = parse_tangle("bottom red:Hv red:H^\nslice coupon(iH)\nslice coupon(epsL)\n").unwrap();
    assert_eq!(eval.evaluate_bichrome(&ast).unwrap().scalar(), e.cat.hopf.lambda_of(&e.cat.hopf.one_elem()));
}

const UNKNOT_H: &str = "bottom\nslice coev(P1)\nslice coupon(h), id\nslice ev'\n";

#[test]
fn renormalized_unknot_with_h() {
    let ev = ev();
    let ast = parse_tangle(UNKNOT_H).unwrap();
    let a = ev.renorm_eval(&ast, CutPoint { level: 1, pos: 0 }).unwrap();
    let b = ev.renorm_eval(&ast, CutPoint { level: 2, pos: 0 }).unwrap();
    let c = ev.renorm_eval(&ast, CutPoint { level: 1, pos: 1 }).unwrap();
    assert_eq!(a, t_h());
    assert!(!a.is_zero());
    assert_eq!(a, b);
    assert_eq!(a, c);
    let plain = parse_tangle("bottom\nslice coev(P1)\nslice ev'\n").unwrap();
    let e = env();
    let t_id = e.cat.modified_trace(&e.cat.identity(e.cat.p1().unwrap())).unwrap();
    assert_eq!(ev.renorm_eval(&plain, CutPoint { level: 1, pos: 0 }).unwrap(), t_id);
}

#[test]
fn tip_crossing_sign_does_not_matter() {
    let e = env();
    let ev = ev();
    let p = e.cat.p1().unwrap();
    for text in ["bottom\nslice coev(P1)\nslice ev'\n", HOPF_LINK] {
        let ast = parse_tangle(text).unwrap();
        let cut = CutPoint { level: 1, pos: 0 };
        let a = ev.evaluate_bichrome(&ev.cut_open_with(&ast, cut, Sign::Plus).unwrap()).unwrap().retype(p, p);
        let b = ev.evaluate_bichrome(&ev.cut_open_with(&ast, cut, Sign::Minus).unwrap()).unwrap().retype(p, p);
        assert_eq!(a.matrix, b.matrix);
    }
}

#[test]
fn cut_requires_projective_blue_label() {
    let ev = ev();
    let ast = parse_tangle("bottom\nslice coev(triv)\nslice ev'\n").unwrap();
    assert!(matches!(ev.renorm_eval(&ast, CutPoint { level: 1, pos: 0 }), Err(Error::NotProjective(_))));
    assert!(ev.renorm_eval(&parse_tangle(UNKNOT_H).unwrap(), CutPoint { level: 0, pos: 0 }).is_err());
}

/// Two P1 unknots forming a Hopf link, one carrying h and a twist.
const HOPF_LINK: &str = "bottom\n\
    slice coev(P1), coev(P1)\n\
    slice id, x+, id\n\
    slice id, x+, id\n\
    slice coupon(h), tw+, id, id\n\
    slice ev', ev'\n";

#[test]
fn cut_point_independence_on_a_link() {
    let ev = ev();
    let ast = parse_tangle(HOPF_LINK).unwrap();
    let mut values = Vec::new();
    for (level, pos) in [(1, 0), (1, 3), (2, 1), (3, 2), (4, 0), (4, 1), (4, 3)] {
        values.push(ev.renorm_eval(&ast, CutPoint { level, pos }).unwrap());
    }
    assert!(values.windows(2).all(|w| w[0] == w[1]), "{values:?}");
}

#[test]
fn cut_point_independence_without_h() {
    let ev = ev();
    let text = HOPF_LINK.replace("coupon(h), tw+", "tw-, tw+");
    let ast = parse_tangle(&text).unwrap();
    let a = ev.renorm_eval(&ast, CutPoint { level: 1, pos: 0 }).unwrap();
    for (level, pos) in [(1, 1), (1, 2), (2, 0), (3, 1), (4, 3)] {
        assert_eq!(ev.renorm_eval(&ast, CutPoint { level, pos }).unwrap(), a, "cut at {level} {pos}");
    }
}

#[test]
fn cut_point_independence_with_surgery() {
    // P1 unknot with h, encircled by a 0-framed red meridian
    let text = "bottom red:Hv red:H^\n\
        slice id, id, coev(P1)\n\
        slice id, x+, id\n\
        slice id, x+, id\n\
        slice id, id, coupon(h), id\n\
        slice ev, ev'\n";
    let ev = ev();
    let ast = parse_tangle(text).unwrap();
    let a = ev.renorm_eval(&ast, CutPoint { level: 1, pos: 2 }).unwrap();
    let b = ev.renorm_eval(&ast, CutPoint { level: 4, pos: 2 }).unwrap();
    let c = ev.renorm_eval(&ast, CutPoint { level: 2, pos: 1 }).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
}

fn surgery(text: &str) -> CycloNum {
    let e = env();
    let ev = ev();
    let p = parse_surgery(text, &ev).unwrap();
    surgery_invariant(&p, &e.params, &ev).unwrap()
}

#[test]
fn kirby_stabilization_leaves_invariant_unchanged() {
    let e = env();
    let bare = surgery("bottom\nslice coev(P1)\nslice coupon(h), id\nslice ev'\ncut 1 0\n");
    assert_eq!(bare, &e.params.script_d.inv().unwrap() * &t_h());
    let plus = surgery(
        "bottom red:Hv red:H^\nslice id, tw+\nslice ev\nslice coev(P1)\nslice coupon(h), id\nslice ev'\nframing 1 1\ncut 3 0\n",
    );
    assert_eq!(plus, bare);
    let minus = surgery(
        "bottom red:Hv red:H^\nslice id, tw-\nslice ev, coev(P1)\nslice coupon(h), id\nslice ev'\nframing 1 -1\n",
    );
    assert_eq!(minus, bare);
}

#[test]
fn surgery_file_validation() {
    let ev = ev();
    let base = "bottom red:Hv red:H^\nslice id, tw+\nslice ev, coev(P1)\nslice coupon(h), id\nslice ev'\n";
    assert!(matches!(parse_surgery(&format!("{base}framing 1 2\n"), &ev), Err(Error::Parse { .. })));
    assert!(matches!(parse_surgery(base, &ev), Err(Error::Invalid(_))));
    assert!(parse_surgery(&format!("{base}framing 1 1\nlinking\n1\nend\n"), &ev).is_ok());
    assert!(matches!(parse_surgery(&format!("{base}framing 1 1\nlinking\n2\nend\n"), &ev), Err(Error::Parse { .. })));
    assert!(matches!(parse_surgery(&format!("{base}framing 1 1\nlinking\n1\n"), &ev), Err(Error::Parse { .. })));
    let no_projective = "bottom red:Hv red:H^\nslice id, tw+\nslice ev\nframing 1 1\n";
    let p = parse_surgery(no_projective, &ev).unwrap();
    assert!(matches!(surgery_invariant(&p, &env().params, &ev), Err(Error::Inadmissible(_))));
}

#[test]
fn width_cap_is_enforced() {
    let e = env();
    let ev = Evaluator::new(&e.cat, &e.coupons).with_cap(100);
    let ast = parse_tangle("bottom H^ P1^\nslice x+\n").unwrap();
    match ev.evaluate_rt(&ast) {
        Err(Error::WidthCap { slice, width, cap }) => assert_eq!((slice, width, cap), (0, 162, 100)),
        other => panic!("{other:?}"),
    }
}

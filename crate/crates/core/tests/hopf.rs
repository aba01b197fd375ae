use nsqft::cyclo::{canonicalize, CycloNum, FieldCtx, SparseVec};
use nsqft::hopf::*;
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

fn h3() -> &'static HopfData {
    static H: OnceLock<HopfData> = OnceLock::new();
    H.get_or_init(|| small_qsl2(3).unwrap())
}

fn h5() -> &'static HopfData {
    static H: OnceLock<HopfData> = OnceLock::new();
    H.get_or_init(|| small_qsl2(5).unwrap())
}

/// i^{±(r-1)/2} r^{3/2} q^{(r±3)/2}, written out with field primitives only.
fn delta_oracle(ctx: &'static FieldCtx, plus: bool) -> CycloNum {
    let r = ctx.r() as i64;
    let half = (r - 1) / 2;
    let r32 = &ctx.int(r) * &ctx.sqrt_r();
    let (ip, qp) = if plus { (-half, (r - 3) / 2) } else { (half, (r + 3) / 2) };
    &(&ctx.i_pow(ip) * &r32) * &ctx.q_pow(qp)
}

#[test]
fn drinfeld_element_has_unit_counit() {
    let h = h3();
    assert_eq!(h.counit_of(&drinfeld_element(h)), h.ctx.one());
}

#[test]
fn monodromy_counit_identities() {
    let h = h3();
    let m = m_matrix(h);
    let mut both = h.ctx.zero();
    let mut left: Vec<(usize, CycloNum)> = Vec::new();
    for (a, b, c) in h.split2(&m) {
        let e = h.counit_of(&h.basis(a));
        both += &(&(&e * &h.counit_of(&h.basis(b))) * c);
        left.push((b, &e * c));
    }
    assert_eq!(both, h.ctx.one());
    assert_eq!(canonicalize(left), h.one_elem());
}

#[test]
fn stabilization_coefficients_match_closed_forms() {
    for r in [3u32, 5, 7] {
        let h = small_qsl2(r).unwrap();
        let p = stabilization_params(&h, SqrtChoice::Positive).unwrap();
        let ctx = h.ctx;
        assert_eq!(p.delta_minus, delta_oracle(ctx, false), "r={r}");
        assert_eq!(p.delta_plus, delta_oracle(ctx, true), "r={r}");
        assert_eq!(p.zeta, ctx.int((r * r * r) as i64));
        assert_eq!(&p.script_d * &p.script_d, p.zeta);
        assert_eq!(p.delta_plus, &p.script_d * &p.small_delta);
        assert_eq!(&p.delta_minus * &p.small_delta, p.script_d);
        let half = (r as i64 - 1) / 2;
        assert_eq!(p.small_delta, &ctx.i_pow(-half) * &ctx.q_pow((r as i64 - 3) / 2));
    }
}

#[test]
fn axioms_and_pivotal_at_five() {
    let h = h5();
    let report = verify_hopf_axioms(h, AxiomMode::Auto);
    assert!(report.all_passed(), "{report}");
    assert!(pivotal_consistency(h));
    assert!(integral_checks(h).iter().all(|c| c.passed));
}

#[test]
fn closed_form_inverse_at_five() {
    let h = h5();
    let p = stabilization_params(h, SqrtChoice::Positive).unwrap();
    let d = drinfeld_map(h);
    let inv = drinfeld_map_inv(h).unwrap();
    assert!(d.mul(&inv).is_identity());
    assert_eq!(drinfeld_map_inv_closed_form(h, &p.zeta).unwrap(), inv);
}

#[test]
fn integral_of_cointegral_nonzero() {
    let h = h3();
    assert!(!h.lambda_of(&h.cointegral).is_zero());
    assert!(h.lambda_of(&h.one_elem()).is_zero());
}

#[test]
fn dump_and_load_preserve_everything() {
    let h = h3();
    let text = dump_hopf(h);
    let back = load_hopf(&text).unwrap();
    assert_eq!(back.mult, h.mult);
    assert_eq!(back.r_matrix, h.r_matrix);
    assert_eq!(back.cointegral, h.cointegral);
    assert!(verify_hopf_axioms(&back, AxiomMode::GeneratorReduced).all_passed());
}

fn cat3() -> &'static nsqft::rep::Category {
    static C: OnceLock<nsqft::rep::Category> = OnceLock::new();
    C.get_or_init(|| nsqft::rep::Category::new(h3().clone()))
}

fn element(h: &HopfData, terms: &[(usize, i64, i64)]) -> SparseVec {
    canonicalize(terms.iter().map(|&(x, a, k)| (x % h.dim, &h.ctx.int(a) * &h.ctx.zeta_pow(k))).collect())
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    prop::collection::vec((0usize..27, -3i64..=3, 0i64..12), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetrised_trace_identity(x in terms(), y in terms()) {
        let h = h3();
        let (x, y) = (element(h, &x), element(h, &y));
        let s2y = h.antipode_of(&h.antipode_of(&y));
        prop_assert_eq!(h.lambda_of(&h.mul(&x, &y)), h.lambda_of(&h.mul(&s2y, &x)));
    }

    #[test]
    fn antipode_inverse_roundtrip(x in terms()) {
        let h = h3();
        let x = element(h, &x);
        prop_assert_eq!(h.antipode_of(&h.antipode_inv_of(&x)), x.clone());
        prop_assert_eq!(h.antipode_inv_of(&h.antipode_of(&x)), x);
    }

    #[test]
    fn ribbon_element_is_central(x in terms()) {
        let h = h3();
        let x = element(h, &x);
        prop_assert_eq!(h.mul(&x, &h.ribbon_v), h.mul(&h.ribbon_v, &x));
    }

    #[test]
    fn drinfeld_map_equivariant(x in 0usize..27, f in terms()) {
        let h = h3();
        let cat = cat3();
        let d = drinfeld_map(h);
        let f = element(h, &f);
        let lhs = d.apply(&cat.coadjoint.act_on(&h.basis(x), &f));
        let rhs = cat.adjoint.act_on(&h.basis(x), &d.apply(&f));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn hopf_data_is_shareable() {
    let h = Arc::new(small_qsl2(3).unwrap());
    let hs: Vec<_> = (0..4).map(|_| h.clone()).collect();
    std::thread::scope(|s| {
        for hh in &hs {
            s.spawn(move || assert!(pivotal_consistency(hh)));
        }
    });
}

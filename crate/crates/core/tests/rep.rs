use nsqft::cyclo::{CycloNum, ExactMatrix};
use nsqft::hopf::drinfeld_map;
use nsqft::rep::{Category, DualityKind, Module, Morphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn cat() -> &'static Category {
    static C: OnceLock<Category> = OnceLock::new();
    C.get_or_init(|| Category::qsl2(3).unwrap())
}

fn rand_scalar(c: &Category, rng: &mut ChaCha8Rng) -> CycloNum {
    let ctx = c.ctx();
    let k = rng.gen_range(0..12);
    &ctx.int(rng.gen_range(-3..=3)) + &ctx.zeta_pow(k).scale_int(rng.gen_range(1..=2))
}

fn rand_combination(c: &Category, basis: &[Morphism], rng: &mut ChaCha8Rng) -> Morphism {
    let mut acc = Morphism::zero(&basis[0].source, &basis[0].target);
    for b in basis {
        acc = acc.add(&b.scale(&rand_scalar(c, rng)));
    }
    acc
}

fn rand_element(c: &Category, rng: &mut ChaCha8Rng) -> Vec<(usize, CycloNum)> {
    let mut v: Vec<(usize, CycloNum)> = (0..4).map(|_| (rng.gen_range(0..c.hopf.dim), rand_scalar(c, rng))).collect();
    v.sort_by_key(|e| e.0);
    v.dedup_by_key(|e| e.0);
    v
}

fn tensor_id(c: &Category, f: &Morphism, v: &Module) -> Morphism {
    f.tensor(&c.identity(v))
}

fn id_tensor(c: &Category, v: &Module, f: &Morphism) -> Morphism {
    c.identity(v).tensor(f)
}

#[test]
fn tensor_with_trivial_is_identity_on_indices() {
    let c = cat();
    let p = c.p1().unwrap();
    let tp = c.tensor(&c.trivial, p);
    for &x in &c.hopf.generators {
        assert_eq!(tp.action(x), p.action(x));
    }
    assert_eq!(c.tensor(&c.regular, &c.regular).dim(), 729);
}

#[test]
fn double_dual_is_pivotal_conjugation() {
    let c = cat();
    let p = c.p1().unwrap();
    let dd = c.dual(&c.dual(p));
    let g = p.act(&c.hopf.pivotal_g);
    let gi = nsqft::cyclo::inverse(&g).unwrap();
    for x in 0..c.hopf.dim {
        assert_eq!(*dd.action(x), g.mul(p.action(x)).mul(&gi));
    }
}

#[test]
fn braiding_inverse_and_trivial_twist() {
    let c = cat();
    let p = c.p1().unwrap();
    for (v, w) in [(p, p), (p, &c.trivial), (&c.regular, p)] {
        let b = c.braiding(v, w);
        assert!(b.is_intertwiner());
        assert!(b.compose(&c.braiding_inv(v, w)).unwrap().matrix.is_identity());
    }
    assert!(c.twist(&c.trivial).matrix.is_identity());
    assert!(c.twist(p).is_intertwiner());
}

#[test]
fn snake_identities() {
    let c = cat();
    let p = c.p1().unwrap();
    let pd = c.dual(p);
    let ev_l = c.duality(p, DualityKind::EvL);
    let coev_l = c.duality(p, DualityKind::CoevL);
    let ev_r = c.duality(p, DualityKind::EvR);
    let coev_r = c.duality(p, DualityKind::CoevR);
    for m in [&ev_l, &coev_l, &ev_r, &coev_r] {
        assert!(m.is_intertwiner(), "{m:?}");
    }
    let zig = id_tensor(c, p, &ev_l).matrix.mul(&tensor_id(c, &coev_l, p).matrix);
    assert!(zig.is_identity());
    let zag = tensor_id(c, &ev_l, &pd).matrix.mul(&id_tensor(c, &pd, &coev_l).matrix);
    assert!(zag.is_identity());
    let zig = tensor_id(c, &ev_r, p).matrix.mul(&id_tensor(c, p, &coev_r).matrix);
    assert!(zig.is_identity());
    let zag = id_tensor(c, &pd, &ev_r).matrix.mul(&tensor_id(c, &coev_r, &pd).matrix);
    assert!(zag.is_identity());
}

#[test]
fn quantum_dimension_of_p1_vanishes() {
    let c = cat();
    let p = c.p1().unwrap();
    let d = c.duality(p, DualityKind::EvR).compose(&c.duality(p, DualityKind::CoevL)).unwrap();
    assert!(d.scalar().is_zero());
    assert_eq!(d.scalar(), p.act(&c.hopf.pivotal_g).trace());
}

#[test]
fn hexagon_and_twist_naturality() {
    let c = cat();
    let p = c.p1().unwrap().clone();
    let t = c.trivial.clone();
    let mods = [t, p];
    for u in &mods {
        for v in &mods {
            for w in &mods {
                let vw = c.tensor(v, w);
                let lhs = c.braiding(u, &vw);
                let rhs = id_tensor(c, v, &c.braiding(u, w)).compose(&tensor_id(c, &c.braiding(u, v), w)).unwrap();
                assert_eq!(lhs.matrix, rhs.matrix, "{} {} {}", u.name(), v.name(), w.name());
            }
            let uv = c.tensor(u, v);
            let lhs = c.twist(&uv);
            let rhs = c.braiding(v, u).matrix.mul(&c.braiding(u, v).matrix).mul(&c.twist(u).tensor(&c.twist(v)).matrix);
            assert_eq!(lhs.matrix, rhs);
        }
    }
}

#[test]
fn double_braiding_with_regular_is_monodromy_action() {
    let c = cat();
    let p = c.p1().unwrap();
    let m = nsqft::hopf::m_matrix(&c.hopf);
    let double = c.braiding(p, &c.regular).matrix.mul(&c.braiding(&c.regular, p).matrix);
    // M acts on H⊗P1 with M' on H and M'' on P1
    let mut expect = ExactMatrix::zeros(c.ctx(), 27 * 6, 27 * 6);
    for (a, b, k) in c.hopf.split2(&m) {
        expect = expect.add(&c.regular.action(a).kron(p.action(b)).scale(k));
    }
    assert_eq!(double, expect);
}

#[test]
fn drinfeld_map_intertwines_coad_and_ad() {
    let c = cat();
    let d = drinfeld_map(&c.hopf);
    for x in 0..c.hopf.dim {
        assert_eq!(d.mul(c.coadjoint.action(x)), c.adjoint.action(x).mul(&d));
    }
}

#[test]
fn structure_maps_are_intertwiners() {
    let c = cat();
    let p = c.p1().unwrap();
    for v in [p, &c.trivial] {
        assert!(c.i_map(v).is_intertwiner());
        assert!(c.j_map(v).is_intertwiner());
    }
    assert!(c.unit_map().is_intertwiner());
}

#[test]
fn trace_cyclicity_on_random_intertwiners() {
    let c = cat();
    let p = c.p1().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let into = c.hom_space(p, &c.regular);
    let out = c.hom_space(&c.regular, p);
    for _ in 0..5 {
        let f = rand_combination(c, &into, &mut rng);
        let g = rand_combination(c, &out, &mut rng);
        let a = c.modified_trace(&g.compose(&f).unwrap()).unwrap();
        let b = c.modified_trace(&f.compose(&g).unwrap()).unwrap();
        assert_eq!(a, b);
    }
    let ends = c.hom_space(p, p);
    for _ in 0..5 {
        let f = rand_combination(c, &ends, &mut rng);
        let g = rand_combination(c, &ends, &mut rng);
        assert_eq!(
            c.modified_trace(&g.compose(&f).unwrap()).unwrap(),
            c.modified_trace(&f.compose(&g).unwrap()).unwrap()
        );
    }
}

/// Right multiplication by y is an endomorphism of the regular module.
fn right_mult(c: &Category, y: &[(usize, CycloNum)]) -> Morphism {
    Morphism::new(c.regular.clone(), c.regular.clone(), c.hopf.right_mult_matrix(y))
}

#[test]
fn partial_trace_property() {
    let c = cat();
    let hh = c.tensor(&c.regular, &c.regular);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let double = c.braiding(&c.regular, &c.regular).compose(&c.braiding(&c.regular, &c.regular)).unwrap();
    let twist = c.twist(&c.regular).tensor(&c.identity(&c.regular));
    for _ in 0..5 {
        let a = right_mult(c, &rand_element(c, &mut rng));
        let b = right_mult(c, &rand_element(c, &mut rng));
        let f = a.tensor(&b).compose(&double).unwrap().compose(&twist).unwrap();
        let f = f.add(&right_mult(c, &rand_element(c, &mut rng)).tensor(&c.identity(&c.regular)));
        assert!(f.is_intertwiner());
        assert_eq!(f.source, hh);
        let ptr = c.partial_trace(&f, &c.regular, &c.regular).unwrap();
        assert!(ptr.is_intertwiner());
        assert_eq!(c.modified_trace(&f).unwrap(), c.modified_trace(&ptr).unwrap());
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wittloc::engine::bott_residue;
use wittloc::engine::builders::{build_grassmannian_problem, build_projective_problem};
use wittloc::euler::{euler_rep, GroupKind, Irrep, NIrrep, RepSum, SL2nIrrep};
use wittloc::field::{FieldDescriptor, FieldElement};
use wittloc::parse::{parse_form, parse_ring};
use wittloc::quad_ext::QuadExtContext;
use wittloc::rings::{CohRing, PresentationId};
use wittloc::verify::{coefficient_sample, law_rings, random_element};
use wittloc::witt::QuadraticForm;
use wittloc::WittClass;

fn fields() -> Vec<FieldDescriptor> {
    vec![
        FieldDescriptor::Rationals,
        FieldDescriptor::Reals,
        FieldDescriptor::finite(3).unwrap(),
        FieldDescriptor::finite(5).unwrap(),
        FieldDescriptor::finite(11).unwrap(),
    ]
}

fn entries() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![-40i64..=-1, 1i64..=40], 0..=4)
}

/// Drops entries that vanish in the field.
fn form(field: &FieldDescriptor, xs: &[i64]) -> QuadraticForm {
    let kept: Vec<i64> = xs.iter().copied().filter(|&c| !field.is_zero(&field.from_i64(c))).collect();
    QuadraticForm::from_integers(field.clone(), &kept).unwrap()
}

fn print_rings() -> Vec<CohRing> {
    let q = FieldDescriptor::Rationals;
    let mut rings = law_rings().unwrap();
    rings.push(CohRing::bsl2n(1, &q).unwrap());
    rings.push(CohRing::new(PresentationId::Bnn(3), q.clone()).unwrap());
    rings.push(CohRing::twisted(&QuadExtContext::new(q, FieldElement::integer(3)).unwrap()).unwrap());
    rings
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonicalization_is_a_congruence(f in entries(), g in entries(), k in 0usize..5) {
        let field = &fields()[k];
        let (f, g) = (form(field, &f), form(field, &g));
        let (cf, cg) = (WittClass::from_form(&f).unwrap(), WittClass::from_form(&g).unwrap());
        prop_assert_eq!(WittClass::from_form(&f.orthogonal_sum(&g).unwrap()).unwrap(), cf.add(&cg).unwrap());
        prop_assert_eq!(WittClass::from_form(&f.tensor(&g).unwrap()).unwrap(), cf.mul(&cg).unwrap());
    }

    #[test]
    fn hyperbolic_planes_vanish(f in entries(), c in 1i64..50, k in 0usize..5) {
        let field = &fields()[k];
        prop_assume!(!field.is_zero(&field.from_i64(c)));
        let f = form(field, &f);
        let h = QuadraticForm::from_integers(field.clone(), &[c, -c]).unwrap();
        prop_assert_eq!(
            WittClass::from_form(&f.orthogonal_sum(&h).unwrap()).unwrap(),
            WittClass::from_form(&f).unwrap()
        );
    }

    #[test]
    fn witt_printing_round_trips(f in entries(), k in 0usize..5) {
        let field = &fields()[k];
        let class = WittClass::from_form(&form(field, &f)).unwrap();
        prop_assert_eq!(parse_form(&class.to_string(), field).unwrap(), class);
    }

    #[test]
    fn ring_printing_round_trips(seed in any::<u64>(), k in 0usize..9) {
        let ring = &print_rings()[k];
        let coeffs = coefficient_sample(ring.field()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(ring, &coeffs, &mut rng).unwrap();
        let printed = x.to_string();
        prop_assert_eq!(parse_ring(&printed, ring).unwrap(), x, "{}", printed);
    }

    #[test]
    fn transfer_projection_formula(b in entries(), x in prop::collection::vec(1i64..30, 0..=3), k in 0usize..3) {
        let (field, a) = [
            (FieldDescriptor::Rationals, 2),
            (FieldDescriptor::finite(7).unwrap(), 3),
            (FieldDescriptor::finite(5).unwrap(), 2),
        ][k].clone();
        let ctx = QuadExtContext::new(field.clone(), FieldElement::integer(a)).unwrap();
        let b = WittClass::from_form(&form(&field, &b)).unwrap();
        // Elements u + v sqrt(a) of the extension, v = 1.
        let ext = ctx.ext();
        let xs: Vec<FieldElement> = x
            .iter()
            .map(|&u| FieldElement::pair(field.from_i64(u), field.one()))
            .filter(|e| !ext.is_zero(e))
            .collect();
        let x = WittClass::from_form(&QuadraticForm::new(ext.clone(), xs).unwrap()).unwrap();
        let lhs = ctx.transfer(&ctx.base_change(&b).unwrap().mul(&x).unwrap()).unwrap();
        let rhs = b.mul(&ctx.transfer(&x).unwrap()).unwrap();
        prop_assert!(lhs.witt_eq(&rhs).unwrap());
        prop_assert!(ctx.in_ia(&ctx.transfer(&x).unwrap()).unwrap());
        prop_assert!(ctx.scaled_transfer(&ctx.base_change(&b).unwrap()).unwrap().is_zero().unwrap());
    }

    #[test]
    fn ring_laws(seed in any::<u64>(), k in 0usize..6) {
        let ring = &law_rings().unwrap()[k];
        let coeffs = coefficient_sample(ring.field()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(ring, &coeffs, &mut rng).unwrap();
        let b = random_element(ring, &coeffs, &mut rng).unwrap();
        let c = random_element(ring, &coeffs, &mut rng).unwrap();
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn euler_is_multiplicative(ms in prop::collection::vec((1u32..6, 1usize..=3), 1..4), split in 0usize..4) {
        let n = 3;
        let irreps: Vec<(Irrep, u32)> = ms
            .iter()
            .map(|&(m, i)| (Irrep::SL2n(SL2nIrrep::sym(m, i, n).unwrap()), 1))
            .collect();
        let cut = split.min(irreps.len());
        let kind = GroupKind::SL2n(n);
        let q = FieldDescriptor::Rationals;
        let whole = euler_rep(&RepSum::new(kind, irreps.clone()).unwrap(), &q).unwrap();
        let left = euler_rep(&RepSum::new(kind, irreps[..cut].to_vec()).unwrap(), &q).unwrap();
        let right = euler_rep(&RepSum::new(kind, irreps[cut..].to_vec()).unwrap(), &q).unwrap();
        let product = left.value.unwrap().mul(&right.value.unwrap()).unwrap();
        prop_assert_eq!(whole.value.unwrap(), product);
    }

    #[test]
    fn n_euler_squares_multiply(ms in prop::collection::vec(1i64..7, 1..4)) {
        let q = FieldDescriptor::Rationals;
        let irreps: Vec<(Irrep, u32)> = ms.iter().map(|&m| (Irrep::N(NIrrep::rho(m).unwrap()), 1)).collect();
        let whole = euler_rep(&RepSum::new(GroupKind::N, irreps.clone()).unwrap(), &q).unwrap();
        let mut square = CohRing::bn(&q).unwrap().one();
        for (irrep, _) in &irreps {
            let single = euler_rep(&RepSum::new(GroupKind::N, vec![(irrep.clone(), 1)]).unwrap(), &q).unwrap();
            square = square.mul(&single.known_square).unwrap();
        }
        prop_assert_eq!(whole.known_square, square);
    }

    #[test]
    fn component_order_is_irrelevant(seed in any::<u64>(), k in 0usize..4) {
        use rand::seq::SliceRandom;
        let q = FieldDescriptor::Rationals;
        let (m, ambient, n) = [(2, 6, 3), (3, 7, 3), (2, 5, 2), (4, 8, 4)][k];
        let p = build_grassmannian_problem(m, ambient, n, &q).unwrap();
        let mut shuffled = p.clone();
        shuffled.components.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(bott_residue(&p).unwrap().cleared, bott_residue(&shuffled).unwrap().cleared);
    }
}

#[test]
fn empty_fixed_loci_give_zero() {
    for field in fields() {
        for n in 1..=4 {
            let problems = [
                build_projective_problem(2 * n - 1, n, &field).unwrap(),
                build_grassmannian_problem(3, 2 * n.max(2), n.max(2), &field).unwrap(),
            ];
            for p in problems {
                if !WittClass::has_decidable_equality(&field) {
                    continue;
                }
                assert!(p.components.is_empty());
                let r = bott_residue(&p).unwrap();
                assert!(r.degree_zero.unwrap().is_canonical_zero());
            }
        }
    }
}

fn grammar_noise() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(vec![
            "<", ">", "(", ")", "+", "-", "*", "^", ",", "/", "@", "1", "2", "3", "0", "64", "99999999999",
            "x", "e", "y", "e1", "e2", "x1", "eT", "sqrt", "rho", "rho0", "rho0-", "Sym", "F", " ", "Q", "Fp:", ":",
        ]),
        0..24,
    )
    .prop_map(|parts| parts.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parsers_never_panic(text in grammar_noise(), k in 0usize..9) {
        let _ = wittloc::parse::parse_field_tag(&text);
        let field = &fields()[k % 5];
        if let Ok(c) = parse_form(&text, field) {
            prop_assert_eq!(parse_form(&c.to_string(), field).unwrap(), c);
        }
        let ring = &print_rings()[k];
        if let Ok(x) = parse_ring(&text, ring) {
            prop_assert_eq!(parse_ring(&x.to_string(), ring).unwrap(), x);
        }
        for group in [GroupKind::SL2n(3), GroupKind::N] {
            if let Ok(rep) = wittloc::parse::parse_rep(&text, group) {
                prop_assert_eq!(wittloc::parse::parse_rep(&rep.to_string(), group).unwrap(), rep);
            }
        }
        let _ = wittloc::engine::problem::parse_problem(&text);
    }
}

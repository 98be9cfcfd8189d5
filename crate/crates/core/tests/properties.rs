use std::path::Path;

use proptest::prelude::*;
use rand::Rng;

use tangentad::model_aux::fincat::{Arrow, Bounds, FiniteCategory};
use tangentad::model_aux::smooth::{close, dual_eval, hyper_eval, random_smooth_map, SmoothMap};
use tangentad::model_poly::{lift_solve, random_poly_map, PolyMap, PolyModel};
use tangentad::pie_limits::{check_product, product, vf_via_pie};
use tangentad::poly::{q_to_f64, Poly, Q};
use tangentad::restriction::{check_restriction_laws, random_rational_map, Domain, RationalMap};
use tangentad::suites;
use tangentad::tangent_core::{check_lax_tangent_morphism, hom_tangent, Samples, TangentModel};
use tangentad::tangent_monads::{commuting_pair_check, writer_monad};
use tangentad::vector_fields::bracket;
use tangentad::weil::{generator, WeilMorphism, WeilObject};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn corpus() -> Vec<(String, FiniteCategory)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/categories");
    let mut paths: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let c = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (p.file_stem().unwrap().to_string_lossy().into_owned(), c)
        })
        .collect()
}

fn weil_pairs() -> Vec<(WeilMorphism, WeilMorphism)> {
    let mut gens: Vec<WeilMorphism> = ["p", "z", "s", "l", "c"].iter().map(|n| generator(n).unwrap()).collect();
    gens.push(WeilMorphism::identity(&WeilObject::w()));
    gens.push(WeilMorphism::identity(&WeilObject::w_power(2)));
    let mut out = Vec::new();
    for g in &gens {
        for f in &gens {
            if f.target() == g.source() {
                out.push((g.clone(), f.clone()));
            }
        }
    }
    out
}

/// A table over `objects` objects whose identity rows and columns are
/// forced and whose other composites are drawn at random with the right
/// endpoints.
type Table = (usize, Vec<Arrow>, Vec<Vec<Option<usize>>>, Vec<usize>);

fn random_table(seed: u64) -> Table {
    let mut r = suites::rng(seed);
    let objects = r.gen_range(1..=2);
    let mut arrows: Vec<Arrow> = (0..objects).map(|o| Arrow { src: o, dst: o }).collect();
    for _ in 0..r.gen_range(1..=3) {
        arrows.push(Arrow { src: r.gen_range(0..objects), dst: r.gen_range(0..objects) });
    }
    let k = arrows.len();
    let mut table = vec![vec![None; k]; k];
    for i in 0..k {
        for j in 0..k {
            if arrows[i].src != arrows[j].dst {
                continue;
            }
            table[i][j] = Some(if i < objects {
                j
            } else if j < objects {
                i
            } else {
                let want = Arrow { src: arrows[j].src, dst: arrows[i].dst };
                let options: Vec<usize> = (0..k).filter(|&c| arrows[c] == want).collect();
                options[r.gen_range(0..options.len())]
            });
        }
    }
    (objects, arrows, table, (0..objects).collect())
}

fn associative(table: &[Vec<Option<usize>>]) -> bool {
    let k = table.len();
    for h in 0..k {
        for g in 0..k {
            for f in 0..k {
                if let (Some(hg), Some(gf)) = (table[h][g], table[g][f]) {
                    if table[hg][f] != table[h][gf] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn chain_rule(seed in any::<u64>()) {
        let mut r = suites::rng(seed);
        let (a, b, c) = (r.gen_range(1..=3), r.gen_range(1..=3), r.gen_range(1..=3));
        let f = random_poly_map(&mut r, a, b, 2);
        let g = random_poly_map(&mut r, b, c, 2);
        let lhs = PolyMap::compose(&g, &f).unwrap().tangent_map();
        let rhs = PolyMap::compose(&g.tangent_map(), &f.tangent_map()).unwrap();
        prop_assert_eq!(lhs.difference(&rhs), None);
    }

    #[test]
    fn lift_solve_inverts_lift(seed in any::<u64>()) {
        let mut r = suites::rng(seed);
        let (k, m) = (r.gen_range(1..=3), r.gen_range(1..=2));
        let g = random_poly_map(&mut r, k, 2 * m, 3);
        let lg = PolyMap::compose(&PolyModel::new().l(&m), &g).unwrap();
        prop_assert_eq!(lift_solve(m, &lg).unwrap().difference(&g), None);
    }

    #[test]
    fn dual_numbers_match_exact_tangents(seed in any::<u64>()) {
        let mut r = suites::rng(seed);
        let (a, b) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let f = random_poly_map(&mut r, a, b, 3);
        let x: Vec<Q> = (0..2 * a).map(|_| Q::new(r.gen_range(-16..=16).into(), 8.into())).collect();
        let exact: Vec<f64> = f.tangent_map().eval(&x).iter().map(q_to_f64).collect();
        let xf: Vec<f64> = x.iter().map(q_to_f64).collect();
        let (val, der) = dual_eval(&SmoothMap::from_poly(&f), &xf[..a], &xf[a..]).unwrap();
        for (d, e) in val.iter().chain(&der).zip(&exact) {
            prop_assert!(close(*d, *e, 1e-9), "dual {} versus exact {}", d, e);
        }
    }

    #[test]
    fn nested_duals_are_flip_symmetric(seed in any::<u64>()) {
        let mut r = suites::rng(seed);
        let m = r.gen_range(1..=2);
        let f = random_smooth_map(&mut r, m, 2, 3);
        let mut pt = || (0..m).map(|_| r.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
        let (x, a, b, q) = (pt(), pt(), pt(), pt());
        let (Ok(lhs), Ok(rhs)) = (hyper_eval(&f, &x, &a, &b, &q), hyper_eval(&f, &x, &b, &a, &q)) else {
            // Outside the domain of a division or logarithm.
            return Ok(());
        };
        for (slot_l, slot_r) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            for (u, v) in lhs[slot_l].iter().zip(&rhs[slot_r]) {
                prop_assert!(close(*u, *v, 1e-9) || (u.is_nan() && v.is_nan()), "{} versus {}", u, v);
            }
        }
    }

    #[test]
    fn categories_are_accepted_exactly_when_associative(seed in any::<u64>()) {
        let (objects, arrows, table, ids) = random_table(seed);
        let assoc = associative(&table);
        let built = FiniteCategory::new(objects, arrows, table, ids);
        prop_assert_eq!(built.is_ok(), assoc, "{:?}", built.err());
    }

    #[test]
    fn bracket_matches_the_classical_formula(seed in any::<u64>()) {
        let mut r = suites::rng(seed);
        let dim = r.gen_range(1..=2);
        let u = suites::random_field(&mut r, dim, 2);
        let v = suites::random_field(&mut r, dim, 2);
        let b = bracket(&PolyModel::new(), &u, &v).unwrap();
        prop_assert!(b.validate(&PolyModel::new()).is_ok());
        prop_assert_eq!(
            suites::principal(&b),
            suites::classical_bracket(&suites::principal(&u), &suites::principal(&v))
        );
    }

    #[test]
    fn commuting_check_agrees_with_the_commutator(seed in any::<u64>()) {
        let mut r = suites::rng(seed);
        let dim = r.gen_range(1..=2);
        let (u, v) = if r.gen_bool(0.5) {
            let fam = suites::commuting_family(&mut r, dim);
            (fam[0].clone(), fam[fam.len() - 1].clone())
        } else {
            (suites::random_field(&mut r, dim, 1), suites::random_field(&mut r, dim, 1))
        };
        let commutator = suites::classical_bracket(&suites::principal(&u), &suites::principal(&v));
        let zero = commutator.iter().all(Poly::is_zero);
        prop_assert_eq!(commuting_pair_check(&PolyModel::new(), &u, &v).is_ok(), zero);
    }

    #[test]
    fn domains_are_canonical(seed in any::<u64>()) {
        let mut r = suites::rng(seed);
        let n = r.gen_range(1..=2);
        let conds: Vec<Poly> = (0..r.gen_range(1..=3))
            .map(|_| loop {
                let p = tangentad::model_poly::random_poly(&mut r, n, 2, 2);
                if !p.is_zero() {
                    break p;
                }
            })
            .collect();
        let d = Domain::from_conditions(n, conds.clone()).unwrap();
        let mut rev = conds.clone();
        rev.reverse();
        prop_assert_eq!(&Domain::from_conditions(n, rev).unwrap(), &d);
        let mut again = d.clone();
        for c in &conds {
            again.insert(c.clone()).unwrap();
        }
        prop_assert_eq!(&again, &d);
        let cs = d.conditions();
        for (i, a) in cs.iter().enumerate() {
            prop_assert!(!a.is_constant());
            prop_assert_eq!(&a.squarefree_part().normalized(), &a.normalized());
            for b in &cs[i + 1..] {
                prop_assert!(a.gcd(b).is_constant(), "{} and {} share a factor", a, b);
            }
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn restriction_laws(seed in any::<u64>()) {
        let mut r = suites::rng(seed);
        let (a, b, c) = (r.gen_range(1..=2), r.gen_range(1..=2), r.gen_range(1..=2));
        let f = random_rational_map(&mut r, a, b, 2);
        let g = random_rational_map(&mut r, a, b, 2);
        let h = random_rational_map(&mut r, b, c, 2);
        // h ∘ f with an empty domain is an error, not a map.
        prop_assume!(RationalMap::compose(&h, &f).is_ok());
        let rep = check_restriction_laws(&[(f, g, h)]);
        prop_assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn weil_generators_are_rig_homs_and_tensor_interchanges(i in 0usize..64, j in 0usize..64) {
        let pairs = weil_pairs();
        let (g, f) = &pairs[i % pairs.len()];
        let (g2, f2) = &pairs[j % pairs.len()];
        let gf = WeilMorphism::compose(g, f).unwrap();
        let gf2 = WeilMorphism::compose(g2, f2).unwrap();
        let lhs = WeilMorphism::tensor(&gf, &gf2).unwrap();
        prop_assert!(lhs.check_rig_hom().is_ok());
        let rhs = WeilMorphism::compose(
            &WeilMorphism::tensor(g, g2).unwrap(),
            &WeilMorphism::tensor(f, f2).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(lhs.difference(&rhs), None);
    }

    #[test]
    fn hom_tangent_preserves_lax_morphisms(seed in any::<u64>(), k in 1usize..=2) {
        let writer = writer_monad(PolyModel::new(), k, None);
        let samples = suites::poly_samples(&mut suites::rng(seed), 3);
        let samples = Samples::new(vec![1, 2], samples.morphisms);
        prop_assert!(check_lax_tangent_morphism(&writer.carrier, &samples).all_pass());
        let rep = check_lax_tangent_morphism(&hom_tangent(&writer.carrier), &samples);
        prop_assert!(rep.all_pass(), "{:?}", rep.failures());
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn corpus_products_are_universal(i in 0usize..100, j in 0usize..100) {
        let small: Vec<_> = corpus().into_iter().filter(|(_, c)| c.num_objects() <= 2).collect();
        let (c, d) = (&small[i % small.len()].1, &small[j % small.len()].1);
        let bounds = Bounds::default();
        let prod = product(c, d, &bounds).unwrap();
        let rep = check_product(c, d, &prod, &bounds).unwrap();
        prop_assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn corpus_vector_fields_are_an_equifier(i in 0usize..100) {
        let cats = corpus();
        let (name, c) = &cats[i % cats.len()];
        let pv = vf_via_pie(c, &Bounds::default()).unwrap();
        prop_assert!(pv.report.all_pass(), "{}: {:?}", name, pv.report.failures());
        prop_assert_eq!(pv.equifier.objects.len(), pv.direct_objects.len());
    }
}

#[test]
fn composite_with_empty_domain_is_an_error() {
    // h(y) = 1/y after the constant map f(x) = 0.
    let f = RationalMap::new(1, vec![(Poly::zero(1), Poly::one(1))], []).unwrap();
    let h = RationalMap::new(1, vec![(Poly::one(1), Poly::var(1, 0))], []).unwrap();
    assert!(matches!(RationalMap::compose(&h, &f), Err(tangentad::error::Error::Domain(_))));
}

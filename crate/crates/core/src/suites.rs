//! Seeded sample generators and the check suites driven by the CLI and the
//! acceptance run. Every suite returns a report sorted by diagram id.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model_aux::fincat::{Bounds, FiniteCategory, TrivialModel};
use crate::model_aux::smooth::{close, dual_eval, finite_difference, random_smooth_map, SmoothMap, SmoothModel};
use crate::model_poly::{random_poly, random_poly_map, PolyMap, PolyModel, PolyMutation};
use crate::pie_limits::vf_via_pie;
use crate::poly::{q, q_to_f64, Poly, Q};
use crate::report::Report;
use crate::restriction::{check_restriction_laws, extended_vf, random_rational_map, RationalMap, RationalModel};
use crate::tangent_core::{check_tangent_axioms, compose_lax, LaxTangentMorphism, Samples, TangentModel};
use crate::tangent_monads::{check_tangent_monad, check_vf_monad, commuting_pair, lift_to_vf, writer_monad, WriterMutation};
use crate::vector_fields::{
    bracket, bracket_preimage, check_structure_theorems, forgetful, hom_vf_negate, hom_vf_tangent, side_condition,
    universal_field, universality_probe, zero_hom_field, FRelated, FieldTriple, HomVectorField, VFMorphism,
    VectorField, VfModel,
};
use crate::weil::{probe_fundamental_pullbacks, verify_relations};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn weil_suite(height_bound: u64) -> Report {
    let mut rep = verify_relations();
    rep.extend(probe_fundamental_pullbacks(height_bound));
    rep.sorted()
}

/// Objects `ℚ¹..ℚ³` and `n` random maps with dimensions and degrees at most 3.
pub fn poly_samples<R: Rng>(rng: &mut R, n: usize) -> Samples<PolyModel> {
    let maps = (0..n)
        .map(|_| {
            let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let deg = rng.gen_range(1..=3);
            random_poly_map(rng, a, b, deg)
        })
        .collect();
    Samples::new(vec![1, 2, 3], maps)
}

pub fn poly_suite(seed: u64, n: usize, mutation: Option<PolyMutation>) -> Result<Report> {
    let model = match mutation {
        None => PolyModel::new(),
        Some(m) => PolyModel::mutated(m),
    };
    Ok(check_tangent_axioms(&model, &poly_samples(&mut rng(seed), n))?.sorted())
}

pub fn smooth_suite(seed: u64, n: usize, tolerance: f64) -> Result<Report> {
    let model = SmoothModel { tolerance, seed, ..SmoothModel::default() };
    let mut r = rng(seed);
    let maps = (0..n)
        .map(|_| {
            let (a, b) = (r.gen_range(1..=2), r.gen_range(1..=2));
            random_smooth_map(&mut r, a, b, 3)
        })
        .collect();
    Ok(check_tangent_axioms(&model, &Samples::new(vec![1, 2], maps))?.sorted())
}

/// `(x, v̂(x))` with `v̂` random of degree at most `max_degree`.
pub fn random_field<R: Rng>(rng: &mut R, dim: usize, max_degree: u32) -> VectorField<PolyModel> {
    let principal = (0..dim).map(|_| random_poly(rng, dim, max_degree, 3)).collect();
    field(dim, principal)
}

pub fn field(dim: usize, principal: Vec<Poly>) -> VectorField<PolyModel> {
    let mut comps: Vec<Poly> = (0..dim).map(|i| Poly::var(dim, i)).collect();
    comps.extend(principal);
    VectorField::unchecked(dim, PolyMap::new(dim, comps).expect("field components"))
}

/// The principal part of a polynomial field.
pub fn principal(v: &VectorField<PolyModel>) -> Vec<Poly> {
    v.section.components()[v.base..].to_vec()
}

/// `Jv̂ · û − Jû · v̂`.
pub fn classical_bracket(u: &[Poly], v: &[Poly]) -> Vec<Poly> {
    let n = u.len();
    (0..n)
        .map(|i| {
            let mut acc = Poly::zero(n);
            for j in 0..n {
                acc = &acc + &(&v[i].derivative(j) * &u[j]);
                acc = &acc - &(&u[i].derivative(j) * &v[j]);
            }
            acc
        })
        .collect()
}

pub fn bracket_suite(seed: u64, n: usize) -> Report {
    let model = PolyModel::new();
    let mut r = rng(seed);
    let mut rep = Report::new();
    for i in 0..n {
        let dim = r.gen_range(1..=3);
        let deg = r.gen_range(1..=3);
        let (u, v) = (random_field(&mut r, dim, deg), random_field(&mut r, dim, deg));
        let sid = format!("pair#{i}");
        let side = bracket_preimage(&model, &u, &v)
            .map_err(|e| e.to_string())
            .and_then(|h| side_condition(&model, &dim, &h));
        rep.record("bracket/side-condition", sid.clone(), side);
        let want = classical_bracket(&principal(&u), &principal(&v));
        let got = bracket(&model, &u, &v).map_err(|e| e.to_string()).and_then(|b| {
            let p = principal(&b);
            match p.iter().zip(&want).position(|(a, b)| a != b) {
                None => Ok(()),
                Some(k) => Err(format!("component {k}: {} versus classical {}", p[k], want[k])),
            }
        });
        rep.record("bracket/classical", sid, got);
    }
    rep.sorted()
}

pub fn random_triples(seed: u64, n: usize) -> Vec<FieldTriple<PolyModel>> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let dim = r.gen_range(1..=3);
            FieldTriple {
                x: random_field(&mut r, dim, 2),
                y: random_field(&mut r, dim, 2),
                w: random_field(&mut r, dim, 2),
            }
        })
        .collect()
}

pub fn lie_suite(seed: u64, n: usize) -> Report {
    check_structure_theorems(&PolyModel::new(), &random_triples(seed, n), &[]).sorted()
}

pub type Matrix = Vec<Vec<i64>>;

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect()
}

/// `L U` with unit diagonals, and its integer inverse `U⁻¹ L⁻¹`.
fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> (Matrix, Matrix) {
    let mut l = identity_matrix(n);
    let mut u = identity_matrix(n);
    for i in 0..n {
        for j in 0..i {
            l[i][j] = rng.gen_range(-2..=2);
            u[j][i] = rng.gen_range(-2..=2);
        }
    }
    (mat_mul(&l, &u), mat_mul(&unit_triangular_inverse(&u), &unit_triangular_inverse(&l)))
}

/// Inverse of a unit triangular matrix by forward substitution on columns.
#[allow(clippy::needless_range_loop)]
fn unit_triangular_inverse(t: &Matrix) -> Matrix {
    let n = t.len();
    let lower = (0..n).all(|i| (i + 1..n).all(|j| t[i][j] == 0));
    let mut inv = identity_matrix(n);
    let order: Vec<usize> = if lower { (0..n).collect() } else { (0..n).rev().collect() };
    for col in 0..n {
        for &i in &order {
            let mut s = i64::from(i == col);
            for k in 0..n {
                if k != i && t[i][k] != 0 {
                    s -= t[i][k] * inv[k][col];
                }
            }
            inv[i][col] = s;
        }
    }
    inv
}

pub fn linear_map(a: &Matrix) -> PolyMap {
    let n = a.len();
    let comps = a
        .iter()
        .map(|row| row.iter().enumerate().fold(Poly::zero(n), |acc, (j, &c)| &acc + &Poly::var(n, j).scale(&q(c))))
        .collect();
    PolyMap::new(n, comps).expect("square matrix")
}

/// `x ↦ (x, A x)`.
pub fn linear_field(a: &Matrix) -> VectorField<PolyModel> {
    field(a.len(), linear_map(a).components().to_vec())
}

/// `F` with `v_i = A_i x` on the source and `u_i = F A_i F⁻¹ y` on the target.
pub fn f_related_examples(seed: u64, n: usize) -> Vec<FRelated<PolyModel>> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let dim = r.gen_range(1..=3);
            let (f, finv) = random_unimodular(&mut r, dim);
            let (a1, a2) = (random_matrix(&mut r, dim), random_matrix(&mut r, dim));
            let conj = |a: &Matrix| mat_mul(&mat_mul(&f, a), &finv);
            FRelated {
                map: linear_map(&f),
                v1: linear_field(&a1),
                v2: linear_field(&a2),
                u1: linear_field(&conj(&a1)),
                u2: linear_field(&conj(&a2)),
            }
        })
        .collect()
}

pub fn f_related_suite(seed: u64, n: usize) -> Report {
    check_structure_theorems(&PolyModel::new(), &[], &f_related_examples(seed, n)).sorted()
}

/// Fields `p(A) x` for a few polynomials `p`, which pairwise commute.
pub fn commuting_family<R: Rng>(rng: &mut R, dim: usize) -> Vec<VectorField<PolyModel>> {
    let a = random_matrix(rng, dim);
    let a2 = mat_mul(&a, &a);
    let id = identity_matrix(dim);
    let comb = |x: i64, y: i64, z: i64| -> Matrix {
        (0..dim).map(|i| (0..dim).map(|j| x * id[i][j] + y * a[i][j] + z * a2[i][j]).collect()).collect()
    };
    vec![linear_field(&a), linear_field(&comb(1, -1, 0)), linear_field(&comb(0, 2, -1))]
}

/// A pair with `A B ≠ B A`.
pub fn non_commuting_pair<R: Rng>(rng: &mut R, dim: usize) -> (VectorField<PolyModel>, VectorField<PolyModel>) {
    loop {
        let (a, b) = (random_matrix(rng, dim), random_matrix(rng, dim));
        if mat_mul(&a, &b) != mat_mul(&b, &a) {
            return (linear_field(&a), linear_field(&b));
        }
    }
}

pub fn vf_monad_suite(seed: u64, n: usize) -> Report {
    let model = PolyModel::new();
    let mut r = rng(seed);
    let families: Vec<_> = (0..n)
        .map(|_| {
            let dim = r.gen_range(1..=3);
            commuting_family(&mut r, dim)
        })
        .collect();
    let mut rep = check_vf_monad(&model, &families);
    for i in 0..n {
        let dim = r.gen_range(2..=3);
        let (u, v) = non_commuting_pair(&mut r, dim);
        let outcome = match commuting_pair(&model, &u, &v) {
            Ok(_) => Err("non-commuting pair was accepted".to_string()),
            Err(Error::Precondition(w)) if !w.is_empty() => Ok(()),
            Err(e) => Err(format!("rejected without a witness: {e}")),
        };
        rep.record("vf-monad/non-commuting-rejected", format!("pair#{i}"), outcome);
    }
    rep.sorted()
}

/// Random fields with dimension and degree at most 2, plus maps between
/// conjugate linear fields.
pub fn vf_samples(seed: u64, n: usize) -> Samples<VfModel<PolyModel>> {
    let mut r = rng(seed);
    let model = PolyModel::new();
    let objects = (0..n)
        .map(|_| {
            let dim = r.gen_range(1..=2);
            random_field(&mut r, dim, 2)
        })
        .collect();
    let morphisms = f_related_examples(seed ^ 0xf00d, 3)
        .into_iter()
        .map(|e| VFMorphism::new(&model, e.v1, e.u1, e.map).expect("conjugate fields are related"))
        .collect();
    Samples::new(objects, morphisms)
}

pub fn monad_suite(seed: u64, n: usize, mutation: Option<WriterMutation>) -> Report {
    let model = PolyModel::new();
    let writer = writer_monad(model, 1, mutation);
    let mut r = rng(seed);
    let maps = (0..4)
        .map(|_| {
            let (a, b) = (r.gen_range(1..=2), r.gen_range(1..=2));
            random_poly_map(&mut r, a, b, 2)
        })
        .collect();
    let mut rep = check_tangent_monad(&writer, &Samples::new(vec![1, 2], maps)).scoped("writer");
    rep.extend(check_tangent_monad(&lift_to_vf(&writer), &vf_samples(seed, n)).scoped("writer-vf"));
    rep.sorted()
}

/// `α_{UA} ∘ S(v̂_A)` on `(S, α) ∘ U`.
pub fn pushed_forward<S: TangentModel, X: TangentModel>(
    u: &HomVectorField<S, X>,
    f: &LaxTangentMorphism<X, X>,
) -> HomVectorField<S, X> {
    let (u2, f2) = (u.clone(), f.clone());
    HomVectorField::new(format!("{}_*{}", f.name, u.name), compose_lax(f, &u.base), move |a| {
        let ga = u2.base.obj(a)?;
        f2.target.compose(&f2.alpha(&ga)?, &f2.mor(&u2.at(a)?)?)
    })
}

/// The probe families on `VF(X)` for a model `X`: universal, zero,
/// tangent-lifted, negated, and, when a lax endomorphism is given,
/// pushed forward along it.
pub fn probe_families<X: TangentModel>(
    vf: &VfModel<X>,
    sample: &X::Obj,
    push: Option<&LaxTangentMorphism<X, X>>,
) -> Vec<HomVectorField<VfModel<X>, X>> {
    let v = universal_field(vf);
    let mut out = vec![
        v.clone(),
        zero_hom_field(&forgetful(vf)),
        hom_vf_tangent(&v),
        hom_vf_tangent(&zero_hom_field(&forgetful(vf))),
    ];
    if vf.base.n(sample).is_some() {
        out.push(hom_vf_negate(&v));
    }
    if let Some(f) = push {
        let p = pushed_forward(&v, f);
        out.push(hom_vf_tangent(&p));
        out.push(p);
    }
    out
}

fn run_probes<X: TangentModel>(
    rep: &mut Report,
    scope: &str,
    families: &[HomVectorField<VfModel<X>, X>],
    samples: &Samples<VfModel<X>>,
) {
    for u in families {
        match universality_probe(u, samples) {
            Ok(r) => rep.extend(r.scoped(&format!("{scope}/{}", u.name))),
            Err(e) => rep.record("universal/probe-valid", format!("{scope}/{}", u.name), Err(e.to_string())),
        }
    }
}

/// Universality on polynomial fields (with the writer monad's carrier for
/// pushforwards) and exhaustively on the fields of small finite categories.
pub fn universality_suite(seed: u64, n: usize) -> Report {
    let mut rep = Report::new();
    let vf = VfModel::new(PolyModel::new());
    let writer = writer_monad(PolyModel::new(), 1, None);
    run_probes(&mut rep, "poly", &probe_families(&vf, &1, Some(&writer.carrier)), &vf_samples(seed, n));
    for (name, c) in [("arrow", FiniteCategory::arrow()), ("walking-iso", FiniteCategory::walking_iso())] {
        let base = TrivialModel::new(c.clone());
        let vf = VfModel::new(base.clone());
        let fields: Vec<_> = (0..c.num_objects()).map(|o| VectorField::unchecked(o, c.id(o))).collect();
        let maps = (0..c.num_morphisms())
            .map(|h| VFMorphism::unchecked(fields[c.src(h)].clone(), fields[c.dst(h)].clone(), h))
            .collect();
        run_probes(&mut rep, name, &probe_families(&vf, &0, None), &Samples::new(fields, maps));
    }
    rep.sorted()
}

/// `vf_via_pie` on each named category.
pub fn pie_suite(cats: &[(String, FiniteCategory)], bounds: &Bounds) -> Result<Report> {
    let mut rep = Report::new();
    for (name, c) in cats {
        rep.extend(vf_via_pie(c, bounds)?.report.scoped(name));
    }
    Ok(rep.sorted())
}

/// Triples `f, g : A ⇀ B`, `h : B ⇀ C` with `h ∘ f` defined somewhere;
/// composites with an empty domain are errors, outside the laws' scope.
pub fn rational_triples(seed: u64, n: usize) -> Vec<(RationalMap, RationalMap, RationalMap)> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (a, b, c) = (r.gen_range(1..=2), r.gen_range(1..=2), r.gen_range(1..=2));
        let f = random_rational_map(&mut r, a, b, 2);
        let g = random_rational_map(&mut r, a, b, 2);
        let h = random_rational_map(&mut r, b, c, 2);
        if RationalMap::compose(&h, &f).is_ok() {
            out.push((f, g, h));
        }
    }
    out
}

/// Restriction laws on random rational maps, and which sections the
/// extended construction admits.
pub fn restriction_suite(seed: u64, n: usize) -> Report {
    let mut rep = check_restriction_laws(&rational_triples(seed, n));
    let ext = extended_vf(&RationalModel);
    let mut r = rng(seed ^ 0x5151);
    let mut fields = Vec::new();
    for _ in 0..4 {
        let f = random_field(&mut r, 1, 2);
        fields.push((1, RationalMap::from_poly(&f.section)));
    }
    for _ in 0..2 {
        let f = random_field(&mut r, 2, 2);
        fields.push((2, RationalMap::from_poly(&f.section)));
    }
    rep.extend(ext.check(&fields));
    // Sections with a non-unit denominator have no factorization.
    let x = Poly::var(1, 0);
    let negatives = [
        (Poly::one(1), x.clone()),
        (x.clone(), &(&x * &x) + &Poly::one(1)),
        (Poly::one(1), &x - &Poly::one(1)),
    ];
    for (i, (num, den)) in negatives.into_iter().enumerate() {
        let v = RationalMap::new(1, vec![(x.clone(), Poly::one(1)), (num, den)], []).expect("rational field");
        let outcome = match ext.field(1, v) {
            Ok(_) => Err("non-total section was admitted".into()),
            Err(Error::Domain(w)) if w.contains("denominator") => Ok(()),
            Err(e) => Err(format!("rejected for the wrong reason: {e}")),
        };
        rep.record("extended/reject-non-total", format!("negative#{i}"), outcome);
    }
    rep.sorted()
}

/// Dual-number evaluation against exact polynomial tangents, and central
/// finite differences against dual numbers.
pub fn cross_model_suite(seed: u64, maps: usize, points: usize, tolerance: f64, fd_tolerance: f64) -> Report {
    let mut r = rng(seed);
    let mut rep = Report::new();
    for i in 0..maps {
        let (a, b) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let f = random_poly_map(&mut r, a, b, 3);
        let tf = f.tangent_map();
        let s = SmoothMap::from_poly(&f);
        let sid = format!("map#{i}");
        let mut dual_ok = Ok(());
        let mut fd_ok = Ok(());
        for k in 0..points {
            let x: Vec<Q> = (0..a).map(|_| Q::new(r.gen_range(-12..=12).into(), 8.into())).collect();
            let v: Vec<Q> = (0..a).map(|_| Q::new(r.gen_range(-12..=12).into(), 8.into())).collect();
            let xf: Vec<f64> = x.iter().map(q_to_f64).collect();
            let vf: Vec<f64> = v.iter().map(q_to_f64).collect();
            let exact: Vec<f64> = tf.eval(&[x, v].concat()).iter().map(q_to_f64).collect();
            let (val, der) = match dual_eval(&s, &xf, &vf) {
                Ok(d) => d,
                Err(e) => {
                    dual_ok = Err(format!("point {k}: {e}"));
                    break;
                }
            };
            let dual: Vec<f64> = [val, der.clone()].concat();
            if let Some(j) = (0..dual.len()).find(|&j| !close(dual[j], exact[j], tolerance)) {
                dual_ok = Err(format!("point {k} coordinate {j}: dual {} versus exact {}", dual[j], exact[j]));
            }
            match finite_difference(&s, &xf, &vf, 1e-6) {
                Ok(fd) => {
                    if let Some(j) = (0..fd.len()).find(|&j| !close(fd[j], der[j], fd_tolerance)) {
                        fd_ok = Err(format!("point {k} coordinate {j}: difference quotient {} versus dual {}", fd[j], der[j]));
                    }
                }
                Err(e) => fd_ok = Err(format!("point {k}: {e}")),
            }
        }
        rep.record("cross/dual-vs-poly", sid.clone(), dual_ok);
        rep.record("cross/fd-vs-dual", sid, fd_ok);
    }
    rep.sorted()
}

/// A structural corruption and the report it produces.
pub struct MutationOutcome {
    pub name: &'static str,
    pub failed: Vec<String>,
}

/// Runs every shipped corruption expected to break a law.
pub fn mutation_suite(seed: u64) -> Result<Vec<MutationOutcome>> {
    let mut out = Vec::new();
    for m in PolyMutation::ALL {
        let rep = poly_suite(seed, 6, Some(m))?;
        out.push(MutationOutcome { name: m.name(), failed: rep.failed_diagrams() });
    }
    for m in [WriterMutation::DropMonoidSlot, WriterMutation::DoubleTangent] {
        let writer = writer_monad(PolyModel::new(), 1, Some(m));
        let rep = check_tangent_monad(&writer, &Samples::new(vec![1, 2], vec![]));
        out.push(MutationOutcome { name: m.name(), failed: rep.failed_diagrams() });
    }
    Ok(out)
}

/// Suites runnable by name, with their default sample counts (`0` where a
/// suite draws no random samples).
pub const NAMED: [(&str, usize); 12] = [
    ("weil", 0),
    ("poly", 50),
    ("smooth", 16),
    ("bracket", 20),
    ("lie", 20),
    ("f-related", 10),
    ("vf-monad", 10),
    ("monad", 10),
    ("universality", 6),
    ("pie", 0),
    ("restriction", 30),
    ("cross", 20),
];

pub fn default_samples(name: &str) -> Option<usize> {
    NAMED.iter().find(|(n, _)| *n == name).map(|(_, k)| *k)
}

/// Small categories for the `pie` suite: terminal, arrow, parallel pair,
/// idempotent, walking isomorphism.
pub fn small_categories() -> Vec<(String, FiniteCategory)> {
    vec![
        ("terminal".into(), FiniteCategory::terminal()),
        ("arrow".into(), FiniteCategory::arrow()),
        ("parallel-pair".into(), FiniteCategory::parallel_pair()),
        ("idempotent".into(), FiniteCategory::idempotent()),
        ("walking-iso".into(), FiniteCategory::walking_iso()),
    ]
}

fn parse_mutation<M: Copy>(name: &str, all: &[M], label: fn(M) -> &'static str) -> Result<M> {
    all.iter().copied().find(|m| label(*m) == name).ok_or_else(|| {
        let known: Vec<_> = all.iter().map(|m| label(*m)).collect();
        Error::Parse(format!("unknown mutation `{name}`; known: {}", known.join(", ")))
    })
}

pub fn parse_poly_mutation(name: &str) -> Result<PolyMutation> {
    parse_mutation(name, &PolyMutation::ALL, PolyMutation::name)
}

pub fn parse_writer_mutation(name: &str) -> Result<WriterMutation> {
    parse_mutation(name, &WriterMutation::ALL, WriterMutation::name)
}

/// Runs the suite called `name`. Mutations apply to `poly` and `monad` only;
/// `pie` runs on the small categories within `bounds`.
pub fn run_named(
    name: &str,
    seed: u64,
    samples: Option<usize>,
    tolerance: f64,
    bounds: &Bounds,
    mutation: Option<&str>,
) -> Result<Report> {
    let n = samples.or_else(|| default_samples(name)).ok_or_else(|| {
        let known: Vec<_> = NAMED.iter().map(|(n, _)| *n).collect();
        Error::Parse(format!("unknown suite `{name}`; known: {}", known.join(", ")))
    })?;
    if mutation.is_some() && !matches!(name, "poly" | "monad") {
        return Err(Error::Parse(format!("suite {name} takes no mutation")));
    }
    Ok(match name {
        "weil" => weil_suite(3),
        "poly" => poly_suite(seed, n, mutation.map(parse_poly_mutation).transpose()?)?,
        "smooth" => smooth_suite(seed, n, tolerance)?,
        "bracket" => bracket_suite(seed, n),
        "lie" => lie_suite(seed, n),
        "f-related" => f_related_suite(seed, n),
        "vf-monad" => vf_monad_suite(seed, n),
        "monad" => monad_suite(seed, n, mutation.map(parse_writer_mutation).transpose()?),
        "universality" => universality_suite(seed, n),
        "pie" => {
            let cats: Vec<_> = small_categories().into_iter().filter(|(_, c)| bounds.check(c, "").is_ok()).collect();
            pie_suite(&cats, bounds)?
        }
        "restriction" => restriction_suite(seed, n),
        "cross" => cross_model_suite(seed, n, 32, tolerance, 1e-7),
        _ => unreachable!("name checked against NAMED"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_inverse() {
        let mut r = rng(1);
        for n in 1..=3 {
            let (f, finv) = random_unimodular(&mut r, n);
            assert_eq!(mat_mul(&f, &finv), identity_matrix(n));
        }
    }

    #[test]
    fn commutator_of_linear_fields() {
        let model = PolyModel::new();
        let a: Matrix = vec![vec![0, 1], vec![0, 0]];
        let b: Matrix = vec![vec![0, 0], vec![1, 0]];
        let br = bracket(&model, &linear_field(&a), &linear_field(&b)).unwrap();
        let want = mat_mul(&b, &a).iter().zip(mat_mul(&a, &b)).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect();
        assert_eq!(principal(&br), principal(&linear_field(&want)));
    }
}

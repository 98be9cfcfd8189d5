use super::{compose_all, same, Samples, TangentModel, Verdict};
use crate::error::Result;
use crate::report::Report;

/// Checks every tangent-structure axiom on the samples.
///
/// Structural diagrams are checked at every sample object (including the
/// domains and codomains of sample morphisms); naturality and functoriality
/// at every sample morphism and composable pair.
pub fn check_tangent_axioms<M: TangentModel>(model: &M, samples: &Samples<M>) -> Result<Report> {
    let mut rep = Report::new();
    let objects = samples.all_objects(model);
    for o in &objects {
        model.check_object(o)?;
    }
    for (i, o) in objects.iter().enumerate() {
        let sid = format!("obj#{i}");
        for (id, v) in object_diagrams(model, o) {
            rep.record(id, sid.clone(), v);
        }
    }
    for (i, f) in samples.morphisms.iter().enumerate() {
        let sid = format!("mor#{i}");
        for (id, v) in naturality_diagrams(model, f) {
            rep.record(id, sid.clone(), v);
        }
    }
    for (i, j) in samples.composable_pairs(model) {
        let (f, g) = (&samples.morphisms[i], &samples.morphisms[j]);
        let lhs = model.compose(g, f).map(|gf| model.tangent_mor(&gf));
        let rhs = model.compose(&model.tangent_mor(g), &model.tangent_mor(f));
        rep.record("tangent/functor-compose", format!("mor#{j}∘mor#{i}"), same(model, lhs, rhs));
    }
    Ok(rep)
}

fn object_diagrams<M: TangentModel>(model: &M, m: &M::Obj) -> Vec<(&'static str, Verdict)> {
    let mut out = Vec::new();
    let tm = model.tangent_obj(m);
    let ttm = model.tangent_obj(&tm);
    let (p, z, s, l, c) = (model.p(m), model.z(m), model.s(m), model.l(m), model.c(m));
    let pi = |n, k| model.proj(m, n, k);
    let t = |f: &M::Mor| model.tangent_mor(f);
    let comp = |fs: &[&M::Mor]| compose_all(model, fs);

    out.push((
        "tangent/functor-identity",
        same(model, Ok(t(&model.identity(m))), Ok(model.identity(&tm))),
    ));

    // (p, z, s) is an additive bundle.
    out.push(("tangent/p-section", same(model, comp(&[&p, &z]), Ok(model.identity(m)))));
    out.push(("tangent/sum-over-base", same(model, comp(&[&p, &s]), comp(&[&p, &pi(2, 1)]))));
    out.push(("tangent/sum-over-base", same(model, comp(&[&p, &s]), comp(&[&p, &pi(2, 2)]))));
    let assoc = || -> Result<(M::Mor, M::Mor)> {
        let s12 = comp(&[&s, &model.tuple(m, 0, &[pi(3, 1), pi(3, 2)])?])?;
        let lhs = comp(&[&s, &model.tuple(m, 0, &[s12, pi(3, 3)])?])?;
        let s23 = comp(&[&s, &model.tuple(m, 0, &[pi(3, 2), pi(3, 3)])?])?;
        let rhs = comp(&[&s, &model.tuple(m, 0, &[pi(3, 1), s23])?])?;
        Ok((lhs, rhs))
    };
    out.push(("tangent/sum-assoc", pair_verdict(model, assoc())));
    out.push((
        "tangent/sum-unit",
        same(
            model,
            comp(&[&z, &p]).and_then(|zp| model.tuple(m, 0, &[zp, model.identity(&tm)])).and_then(|u| comp(&[&s, &u])),
            Ok(model.identity(&tm)),
        ),
    ));
    out.push((
        "tangent/sum-comm",
        same(model, model.tuple(m, 0, &[pi(2, 2), pi(2, 1)]).and_then(|u| comp(&[&s, &u])), Ok(s.clone())),
    ));

    // (z, l) is a morphism of additive bundles from p to T p.
    out.push(("tangent/lift-over-zero", same(model, comp(&[&t(&p), &l]), comp(&[&z, &p]))));
    out.push(("tangent/lift-zero", same(model, comp(&[&l, &z]), comp(&[&t(&z), &z]))));
    let lift_add = || -> Result<(M::Mor, M::Mor)> {
        let lhs = comp(&[&l, &s])?;
        let pair = model.tuple(m, 1, &[comp(&[&l, &pi(2, 1)])?, comp(&[&l, &pi(2, 2)])?])?;
        let rhs = comp(&[&t(&s), &pair])?;
        Ok((lhs, rhs))
    };
    out.push(("tangent/lift-additive", pair_verdict(model, lift_add())));

    // (id, c) is a morphism of additive bundles from T p to p_T.
    let p_t = model.p(&tm);
    let z_t = model.z(&tm);
    out.push(("tangent/flip-over-id", same(model, comp(&[&p_t, &c]), Ok(t(&p)))));
    out.push(("tangent/flip-zero", same(model, comp(&[&c, &t(&z)]), Ok(z_t.clone()))));
    let flip_add = || -> Result<(M::Mor, M::Mor)> {
        let lhs = comp(&[&c, &t(&s)])?;
        let pair = model.tuple(
            &tm,
            0,
            &[comp(&[&c, &t(&pi(2, 1))])?, comp(&[&c, &t(&pi(2, 2))])?],
        )?;
        let rhs = comp(&[&model.s(&tm), &pair])?;
        Ok((lhs, rhs))
    };
    out.push(("tangent/flip-additive", pair_verdict(model, flip_add())));

    let l_t = model.l(&tm);
    let c_t = model.c(&tm);
    out.push(("tangent/lift-coassoc", same(model, comp(&[&t(&l), &l]), comp(&[&l_t, &l]))));
    out.push(("tangent/c-lift", same(model, comp(&[&c, &l]), Ok(l.clone()))));
    out.push((
        "tangent/lc-exchange",
        same(model, comp(&[&c_t, &t(&c), &l_t]), comp(&[&t(&l), &c])),
    ));
    out.push(("tangent/c-involution", same(model, comp(&[&c, &c]), Ok(model.identity(&ttm)))));
    out.push((
        "tangent/c-braid",
        same(model, comp(&[&t(&c), &c_t, &t(&c)]), comp(&[&c_t, &t(&c), &c_t])),
    ));

    // Universality of the vertical lift.
    let lift_map = || -> Result<M::Mor> {
        let pair = model.tuple(m, 1, &[comp(&[&z_t, &pi(2, 1)])?, comp(&[&l, &pi(2, 2)])?])?;
        comp(&[&t(&s), &pair])
    };
    out.push((
        "tangent/lift-universal-square",
        same(model, lift_map().and_then(|g| comp(&[&t(&p), &g])), comp(&[&z, &p, &pi(2, 1)])),
    ));
    let refactor = || -> Result<M::Mor> {
        let g = lift_map()?;
        let braces = model.lift_extract(m, &g)?;
        model.tuple(m, 0, &[comp(&[&p_t, &g])?, braces])
    };
    out.push((
        "tangent/lift-universal-factor",
        same(model, refactor(), Ok(model.identity(&model.pullback_obj(m, 2)))),
    ));

    if let Some(n) = model.n(m) {
        out.push((
            "tangent/negative",
            same(
                model,
                model.tuple(m, 0, &[n, model.identity(&tm)]).and_then(|u| comp(&[&s, &u])),
                comp(&[&z, &p]),
            ),
        ));
    }
    out
}

fn naturality_diagrams<M: TangentModel>(model: &M, f: &M::Mor) -> Vec<(&'static str, Verdict)> {
    let mut out = Vec::new();
    let (a, b) = (model.dom(f), model.cod(f));
    let tf = model.tangent_mor(f);
    let ttf = model.tangent_mor(&tf);
    let comp = |fs: &[&M::Mor]| compose_all(model, fs);
    out.push(("tangent/p-natural", same(model, comp(&[f, &model.p(&a)]), comp(&[&model.p(&b), &tf]))));
    out.push(("tangent/z-natural", same(model, comp(&[&tf, &model.z(&a)]), comp(&[&model.z(&b), f]))));
    let t2f = || -> Result<M::Mor> {
        let f1 = comp(&[&tf, &model.proj(&a, 2, 1)])?;
        let f2 = comp(&[&tf, &model.proj(&a, 2, 2)])?;
        model.tuple(&b, 0, &[f1, f2])
    };
    out.push((
        "tangent/s-natural",
        same(
            model,
            t2f().and_then(|g| comp(&[&model.s(&b), &g])),
            comp(&[&tf, &model.s(&a)]),
        ),
    ));
    out.push(("tangent/l-natural", same(model, comp(&[&ttf, &model.l(&a)]), comp(&[&model.l(&b), &tf]))));
    out.push(("tangent/c-natural", same(model, comp(&[&ttf, &model.c(&a)]), comp(&[&model.c(&b), &ttf]))));
    if let (Some(na), Some(nb)) = (model.n(&a), model.n(&b)) {
        out.push(("tangent/n-natural", same(model, comp(&[&tf, &na]), comp(&[&nb, &tf]))));
    }
    out
}

fn pair_verdict<M: TangentModel>(model: &M, pair: Result<(M::Mor, M::Mor)>) -> Verdict {
    match pair {
        Ok((a, b)) => same(model, Ok(a), Ok(b)),
        Err(e) => Err(format!("construction failed: {e}")),
    }
}

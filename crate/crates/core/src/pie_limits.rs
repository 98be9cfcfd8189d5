//! Products, inserters, equifiers and strict pullbacks of finite categories,
//! with exhaustive universal-property checks, and vector fields rebuilt as
//! an equifier of an inserter.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model_aux::fincat::{enumerate_functors, enumerate_nat_trans, Arrow, Bounds, FiniteCategory, Functor, NatTrans, TrivialModel};
use crate::report::Report;
use crate::tangent_core::{check_lax_tangent_morphism, check_tangent_axioms, LaxTangentMorphism, MorphismKind, Samples, TangentModel};
use crate::vector_fields::{VFMorphism, VectorField, VfModel};

/// Builds a category from explicit morphism data and a composition rule on
/// indices; identities must be listed among the morphisms.
fn assemble(
    objects: usize,
    morphisms: Vec<Arrow>,
    identities: Vec<usize>,
    comp: impl Fn(usize, usize) -> Option<usize>,
) -> Result<FiniteCategory> {
    let k = morphisms.len();
    let mut compose = vec![vec![None; k]; k];
    for i in 0..k {
        for j in 0..k {
            if morphisms[i].src == morphisms[j].dst {
                compose[i][j] = comp(i, j);
            }
        }
    }
    FiniteCategory::new(objects, morphisms, compose, identities)
}

fn functor_label(f: &Functor) -> String {
    format!("obj {:?} mor {:?}", f.obj, f.mor)
}

/// A 2-product with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub cat: FiniteCategory,
    pub left: Functor,
    pub right: Functor,
}

pub fn product(c: &FiniteCategory, d: &FiniteCategory, bounds: &Bounds) -> Result<Product> {
    bounds.check(c, "left factor")?;
    bounds.check(d, "right factor")?;
    let (no, nm) = (d.num_objects(), d.num_morphisms());
    let mut morphisms = Vec::new();
    for f in 0..c.num_morphisms() {
        for g in 0..nm {
            let (a, b) = (c.arrow_of(f), d.arrow_of(g));
            morphisms.push(Arrow { src: a.src * no + b.src, dst: a.dst * no + b.dst });
        }
    }
    let identities = (0..c.num_objects())
        .flat_map(|x| (0..no).map(move |y| (x, y)))
        .map(|(x, y)| c.id(x) * nm + d.id(y))
        .collect();
    let cat = assemble(c.num_objects() * no, morphisms, identities, |i, j| {
        let (f1, g1) = (i / nm, i % nm);
        let (f2, g2) = (j / nm, j % nm);
        Some(c.comp(f1, f2)? * nm + d.comp(g1, g2)?)
    })?;
    let left = Functor {
        obj: (0..cat.num_objects()).map(|o| o / no).collect(),
        mor: (0..cat.num_morphisms()).map(|m| m / nm).collect(),
    };
    let right = Functor {
        obj: (0..cat.num_objects()).map(|o| o % no).collect(),
        mor: (0..cat.num_morphisms()).map(|m| m % nm).collect(),
    };
    left.validate(&cat, c)?;
    right.validate(&cat, d)?;
    Ok(Product { cat, left, right })
}

/// Inserter of `F, G : C → D`: objects `(M, τ : FM → GM)`.
#[derive(Debug, Clone)]
pub struct Inserter {
    pub cat: FiniteCategory,
    /// `(M, τ)` per object.
    pub objects: Vec<(usize, usize)>,
    /// The underlying `C`-morphism of each morphism.
    pub morphisms: Vec<usize>,
    pub v: Functor,
    pub theta: NatTrans,
}

pub fn inserter(c: &FiniteCategory, d: &FiniteCategory, f: &Functor, g: &Functor, bounds: &Bounds) -> Result<Inserter> {
    bounds.check(c, "inserter domain")?;
    bounds.check(d, "inserter codomain")?;
    f.validate(c, d)?;
    g.validate(c, d)?;
    let mut objects = Vec::new();
    for m in 0..c.num_objects() {
        for tau in d.hom(f.obj[m], g.obj[m]) {
            objects.push((m, tau));
        }
    }
    let mut morphisms = Vec::new();
    let mut arrows = Vec::new();
    for (i, &(m, tau)) in objects.iter().enumerate() {
        for (j, &(n, sigma)) in objects.iter().enumerate() {
            for h in c.hom(m, n) {
                // σ ∘ F h = G h ∘ τ
                if d.comp(sigma, f.mor[h]) == d.comp(g.mor[h], tau) {
                    morphisms.push(h);
                    arrows.push(Arrow { src: i, dst: j });
                }
            }
        }
    }
    let index: BTreeMap<(usize, usize, usize), usize> =
        arrows.iter().zip(&morphisms).enumerate().map(|(k, (a, &h))| ((a.src, a.dst, h), k)).collect();
    let identities = (0..objects.len())
        .map(|i| index[&(i, i, c.id(objects[i].0))])
        .collect();
    let cat = assemble(objects.len(), arrows.clone(), identities, |x, y| {
        let h = c.comp(morphisms[x], morphisms[y])?;
        index.get(&(arrows[y].src, arrows[x].dst, h)).copied()
    })?;
    let v = Functor { obj: objects.iter().map(|o| o.0).collect(), mor: morphisms.clone() };
    v.validate(&cat, c)?;
    let theta = NatTrans { components: objects.iter().map(|o| o.1).collect() };
    theta.validate(&cat, d, &f.after(&v), &g.after(&v))?;
    Ok(Inserter { cat, objects, morphisms, v, theta })
}

/// Full subcategory of `C` where `φ` and `ψ : F ⇒ G` agree.
#[derive(Debug, Clone)]
pub struct Equifier {
    pub cat: FiniteCategory,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
    pub w: Functor,
}

pub fn equifier(c: &FiniteCategory, d: &FiniteCategory, phi: &NatTrans, psi: &NatTrans, bounds: &Bounds) -> Result<Equifier> {
    bounds.check(c, "equifier domain")?;
    bounds.check(d, "equifier codomain")?;
    let keep: Vec<usize> = (0..c.num_objects()).filter(|&m| phi.components[m] == psi.components[m]).collect();
    full_subcategory(c, &keep).map(|(cat, morphisms, w)| Equifier { cat, objects: keep, morphisms, w })
}

fn full_subcategory(c: &FiniteCategory, keep: &[usize]) -> Result<(FiniteCategory, Vec<usize>, Functor)> {
    let pos = |o: usize| keep.iter().position(|&x| x == o);
    let morphisms: Vec<usize> = (0..c.num_morphisms())
        .filter(|&h| pos(c.src(h)).is_some() && pos(c.dst(h)).is_some())
        .collect();
    let arrows = morphisms
        .iter()
        .map(|&h| Arrow { src: pos(c.src(h)).unwrap(), dst: pos(c.dst(h)).unwrap() })
        .collect();
    let identities = keep.iter().map(|&o| morphisms.iter().position(|&h| h == c.id(o)).unwrap()).collect();
    let cat = assemble(keep.len(), arrows, identities, |x, y| {
        let h = c.comp(morphisms[x], morphisms[y])?;
        morphisms.iter().position(|&k| k == h)
    })?;
    let w = Functor { obj: keep.to_vec(), mor: morphisms.clone() };
    w.validate(&cat, c)?;
    Ok((cat, morphisms, w))
}

/// `C ×_E D` for `F : C → E`, `G : D → E`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub cat: FiniteCategory,
    pub left: Functor,
    pub right: Functor,
}

pub fn strict_pullback(
    c: &FiniteCategory,
    d: &FiniteCategory,
    e: &FiniteCategory,
    f: &Functor,
    g: &Functor,
    bounds: &Bounds,
) -> Result<Pullback> {
    for (cat, what) in [(c, "left leg domain"), (d, "right leg domain"), (e, "common codomain")] {
        bounds.check(cat, what)?;
    }
    f.validate(c, e)?;
    g.validate(d, e)?;
    let objects: Vec<(usize, usize)> = (0..c.num_objects())
        .flat_map(|x| (0..d.num_objects()).map(move |y| (x, y)))
        .filter(|&(x, y)| f.obj[x] == g.obj[y])
        .collect();
    let pairs: Vec<(usize, usize)> = (0..c.num_morphisms())
        .flat_map(|h| (0..d.num_morphisms()).map(move |k| (h, k)))
        .filter(|&(h, k)| f.mor[h] == g.mor[k])
        .collect();
    let opos = |o: (usize, usize)| objects.iter().position(|&x| x == o).unwrap();
    let arrows = pairs
        .iter()
        .map(|&(h, k)| Arrow { src: opos((c.src(h), d.src(k))), dst: opos((c.dst(h), d.dst(k))) })
        .collect();
    let identities = objects
        .iter()
        .map(|&(x, y)| pairs.iter().position(|&p| p == (c.id(x), d.id(y))).unwrap())
        .collect();
    let cat = assemble(objects.len(), arrows, identities, |i, j| {
        let p = (c.comp(pairs[i].0, pairs[j].0)?, d.comp(pairs[i].1, pairs[j].1)?);
        pairs.iter().position(|&q| q == p)
    })?;
    let left = Functor { obj: objects.iter().map(|o| o.0).collect(), mor: pairs.iter().map(|p| p.0).collect() };
    let right = Functor { obj: objects.iter().map(|o| o.1).collect(), mor: pairs.iter().map(|p| p.1).collect() };
    left.validate(&cat, c)?;
    right.validate(&cat, d)?;
    Ok(Pullback { cat, left, right })
}

/// Constructed categories are not subject to the input bound.
fn all_functors(p: &FiniteCategory, x: &FiniteCategory) -> Vec<Functor> {
    enumerate_functors(p, x, &Bounds::unbounded()).expect("unbounded enumeration")
}

/// Probe categories within the bound.
fn probes(bounds: &Bounds) -> Vec<(&'static str, FiniteCategory)> {
    FiniteCategory::probes()
        .into_iter()
        .filter(|(_, p)| bounds.check_probe(p).is_ok())
        .collect()
}

/// Counts factorizations per key and reports any key (from `expected`) not
/// hit exactly once, and any factorization landing outside `expected`.
fn tally<K: Ord + std::fmt::Debug>(
    rep: &mut Report,
    diagram: &str,
    probe: &str,
    factorizations: Vec<(K, Functor)>,
    expected: Vec<K>,
) {
    let mut hits: BTreeMap<K, Vec<Functor>> = BTreeMap::new();
    for (k, f) in factorizations {
        hits.entry(k).or_default().push(f);
    }
    let mut outcome = Ok(());
    let mut seen = 0;
    for k in expected {
        match hits.get(&k).map(Vec::as_slice) {
            Some([_]) => seen += 1,
            Some(many) => {
                outcome = Err(format!(
                    "{k:?} factors {} ways: {} and {}",
                    many.len(),
                    functor_label(&many[0]),
                    functor_label(&many[1])
                ));
                break;
            }
            None => {
                outcome = Err(format!("{k:?} has no factorization"));
                break;
            }
        }
    }
    if outcome.is_ok() && seen != hits.len() {
        outcome = Err(format!("{} factorizations land outside the cone set", hits.len() - seen));
    }
    rep.record(diagram, probe, outcome);
}

pub fn check_product(c: &FiniteCategory, d: &FiniteCategory, prod: &Product, bounds: &Bounds) -> Result<Report> {
    let mut rep = Report::new();
    for (name, p) in probes(bounds) {
        let ks = all_functors(&p, &prod.cat)
            .into_iter()
            .map(|k| ((prod.left.after(&k), prod.right.after(&k)), k))
            .collect();
        let mut expected = Vec::new();
        for h1 in all_functors(&p, c) {
            for h2 in all_functors(&p, d) {
                expected.push((h1.clone(), h2));
            }
        }
        tally(&mut rep, "pie/product-universal", name, ks, expected);
    }
    Ok(rep)
}

pub fn check_inserter(
    c: &FiniteCategory,
    d: &FiniteCategory,
    f: &Functor,
    g: &Functor,
    ins: &Inserter,
    bounds: &Bounds,
) -> Result<Report> {
    let mut rep = Report::new();
    for (name, p) in probes(bounds) {
        let ks = all_functors(&p, &ins.cat)
            .into_iter()
            .map(|k| ((ins.v.after(&k), ins.theta.whisker_right(&k)), k))
            .collect();
        let mut expected = Vec::new();
        for h in all_functors(&p, c) {
            let (fh, gh) = (f.after(&h), g.after(&h));
            for tau in enumerate_nat_trans(&p, d, &fh, &gh, &Bounds::unbounded())? {
                expected.push((h.clone(), tau));
            }
        }
        tally(&mut rep, "pie/inserter-universal", name, ks, expected);
    }
    Ok(rep)
}

pub fn check_equifier(
    c: &FiniteCategory,
    phi: &NatTrans,
    psi: &NatTrans,
    eq: &Equifier,
    bounds: &Bounds,
) -> Result<Report> {
    let mut rep = Report::new();
    rep.record(
        "pie/equifier-agrees",
        "W",
        if phi.whisker_right(&eq.w) == psi.whisker_right(&eq.w) { Ok(()) } else { Err("φW ≠ ψW".into()) },
    );
    for (name, p) in probes(bounds) {
        let ks = all_functors(&p, &eq.cat).into_iter().map(|k| (eq.w.after(&k), k)).collect();
        let expected = all_functors(&p, c)
            .into_iter()
            .filter(|h| phi.whisker_right(h) == psi.whisker_right(h))
            .collect();
        tally(&mut rep, "pie/equifier-universal", name, ks, expected);
    }
    Ok(rep)
}

pub fn check_pullback(
    c: &FiniteCategory,
    d: &FiniteCategory,
    f: &Functor,
    g: &Functor,
    pb: &Pullback,
    bounds: &Bounds,
) -> Result<Report> {
    let mut rep = Report::new();
    for (name, p) in probes(bounds) {
        let ks = all_functors(&p, &pb.cat)
            .into_iter()
            .map(|k| ((pb.left.after(&k), pb.right.after(&k)), k))
            .collect();
        let mut expected = Vec::new();
        for h1 in all_functors(&p, c) {
            for h2 in all_functors(&p, d) {
                if f.after(&h1) == g.after(&h2) {
                    expected.push((h1.clone(), h2));
                }
            }
        }
        tally(&mut rep, "pie/pullback-universal", name, ks, expected);
    }
    Ok(rep)
}

/// A functor between trivially structured categories as a strict tangent
/// morphism.
pub fn strict_functor(src: &TrivialModel, dst: &TrivialModel, f: &Functor) -> LaxTangentMorphism<TrivialModel, TrivialModel> {
    let (f1, f2) = (f.clone(), f.clone());
    let d = dst.clone();
    let f3 = f.clone();
    LaxTangentMorphism::new(
        "F",
        MorphismKind::Strict,
        src.clone(),
        dst.clone(),
        move |o: &usize| Ok(f1.obj[*o]),
        move |m: &usize| Ok(f2.mor[*m]),
        move |o: &usize| Ok(d.cat.id(f3.obj[*o])),
    )
}

fn exhaustive(model: &TrivialModel) -> Samples<TrivialModel> {
    Samples::new((0..model.cat.num_objects()).collect(), (0..model.cat.num_morphisms()).collect())
}

/// Outcome of rebuilding vector fields as an equifier of an inserter.
#[derive(Debug, Clone)]
pub struct PieVf {
    pub inserter: Inserter,
    pub equifier: Equifier,
    /// Direct vector fields `(M, v)` with `p ∘ v = id`.
    pub direct_objects: Vec<(usize, usize)>,
    pub report: Report,
}

/// Builds `inserter(id, T)`, equifies `V p ∘ θ̂` with `id_V`, and matches the
/// result against vector fields computed directly, checking the comparison
/// is an isomorphism and a strict tangent morphism both ways.
pub fn vf_via_pie(c: &FiniteCategory, bounds: &Bounds) -> Result<PieVf> {
    bounds.check(c, "base category")?;
    let model = TrivialModel::new(c.clone());
    let mut rep = Report::new();

    rep.extend(check_tangent_axioms(&model, &exhaustive(&model))?.scoped("base"));

    // T = id on a trivial structure.
    let id = Functor::identity(c);
    let t = Functor {
        obj: (0..c.num_objects()).map(|o| model.tangent_obj(&o)).collect(),
        mor: (0..c.num_morphisms()).map(|m| model.tangent_mor(&m)).collect(),
    };
    let ins = inserter(c, c, &id, &t, bounds)?;
    rep.extend(check_inserter(c, c, &id, &t, &ins, bounds)?);

    // V p ∘ θ̂ and id_V, both V ⇒ V.
    let vp_theta = NatTrans {
        components: ins
            .objects
            .iter()
            .map(|&(m, tau)| model.compose(&model.p(&m), &tau))
            .collect::<Result<_>>()?,
    };
    let id_v = NatTrans::identity(&ins.v, c);
    vp_theta.validate(&ins.cat, c, &ins.v, &ins.v)?;
    let eq = equifier(&ins.cat, c, &vp_theta, &id_v, &Bounds::unbounded())?;
    rep.extend(check_equifier(&ins.cat, &vp_theta, &id_v, &eq, bounds)?);

    // Lifted trivial structures on the constructed carriers.
    let ins_model = TrivialModel::new(ins.cat.clone());
    rep.extend(check_tangent_axioms(&ins_model, &exhaustive(&ins_model))?.scoped("inserter"));
    let eq_model = TrivialModel::new(eq.cat.clone());
    rep.extend(check_tangent_axioms(&eq_model, &exhaustive(&eq_model))?.scoped("equifier"));

    // Direct vector fields and their morphisms.
    let vf = VfModel::new(model.clone());
    let mut direct: Vec<VectorField<TrivialModel>> = Vec::new();
    for m in 0..c.num_objects() {
        for v in c.hom(m, model.tangent_obj(&m)) {
            if let Ok(x) = VectorField::new(&model, m, v) {
                direct.push(x);
            }
        }
    }
    let mut direct_mors: Vec<VFMorphism<TrivialModel>> = Vec::new();
    for a in &direct {
        for b in &direct {
            for h in c.hom(a.base, b.base) {
                if let Ok(f) = VFMorphism::new(&model, a.clone(), b.clone(), h) {
                    direct_mors.push(f);
                }
            }
        }
    }

    // Φ : E → VF, (M, τ) ↦ (M, τ), h ↦ h.
    let eq_objects: Vec<(usize, usize)> = eq.objects.iter().map(|&i| ins.objects[i]).collect();
    let eq_maps: Vec<usize> = eq.morphisms.iter().map(|&k| ins.morphisms[k]).collect();
    let phi_obj: Vec<Option<usize>> = eq_objects
        .iter()
        .map(|&(m, tau)| direct.iter().position(|x| x.base == m && x.section == tau))
        .collect();
    let bijective_objects = phi_obj.iter().all(Option::is_some) && eq_objects.len() == direct.len();
    rep.record(
        "pie/vf-iso-objects",
        "Φ",
        if bijective_objects {
            Ok(())
        } else {
            Err(format!("equifier objects {eq_objects:?} versus direct fields {direct:?}"))
        },
    );
    let phi_mor: Vec<Option<usize>> = (0..eq.cat.num_morphisms())
        .map(|k| {
            let (s, d) = (eq.cat.src(k), eq.cat.dst(k));
            direct_mors.iter().position(|f| {
                Some(position_of(&direct, &f.source)) == phi_obj[s]
                    && Some(position_of(&direct, &f.target)) == phi_obj[d]
                    && f.map == eq_maps[k]
            })
        })
        .collect();
    let bijective_mors = phi_mor.iter().all(Option::is_some) && phi_mor.len() == direct_mors.len() && {
        let mut seen: Vec<usize> = phi_mor.iter().flatten().copied().collect();
        seen.sort();
        seen.dedup();
        seen.len() == direct_mors.len()
    };
    rep.record(
        "pie/vf-iso-morphisms",
        "Φ",
        if bijective_mors {
            Ok(())
        } else {
            Err(format!("{} equifier morphisms versus {} direct maps of fields", phi_mor.len(), direct_mors.len()))
        },
    );

    if bijective_objects && bijective_mors {
        let (po, pm) = (phi_obj.iter().map(|o| o.unwrap()).collect::<Vec<_>>(), phi_mor.iter().map(|o| o.unwrap()).collect::<Vec<_>>());
        // Φ as a strict tangent morphism E → VF(C).
        let (d1, d2, d3) = (direct.clone(), direct_mors.clone(), direct.clone());
        let (po1, pm1, po2) = (po.clone(), pm.clone(), po.clone());
        let vf1 = vf.clone();
        let phi = LaxTangentMorphism::new(
            "Φ",
            MorphismKind::Strict,
            eq_model.clone(),
            vf.clone(),
            move |o: &usize| Ok(d1[po1[*o]].clone()),
            move |k: &usize| Ok(d2[pm1[*k]].clone()),
            move |o: &usize| Ok(vf1.identity(&vf1.tangent_obj(&d3[po2[*o]]))),
        );
        rep.extend(check_lax_tangent_morphism(&phi, &exhaustive(&eq_model)).scoped("Φ"));

        // Ψ : VF(C) → E, the inverse.
        let inv_o: Vec<usize> = (0..direct.len()).map(|j| po.iter().position(|&x| x == j).unwrap()).collect();
        let inv_m: Vec<usize> = (0..direct_mors.len()).map(|j| pm.iter().position(|&x| x == j).unwrap()).collect();
        let (dd1, dd2) = (direct.clone(), direct.clone());
        let dm = direct_mors.clone();
        let (io1, io2, im) = (inv_o.clone(), inv_o.clone(), inv_m.clone());
        let em = eq_model.clone();
        let psi = LaxTangentMorphism::new(
            "Ψ",
            MorphismKind::Strict,
            vf.clone(),
            eq_model.clone(),
            move |a: &VectorField<TrivialModel>| {
                let j = find_field(&dd1, a)?;
                Ok(io1[j])
            },
            move |f: &VFMorphism<TrivialModel>| {
                let j = dm
                    .iter()
                    .position(|g| g.map == f.map && g.source.section == f.source.section && g.target.section == f.target.section)
                    .ok_or_else(|| Error::Invalid(format!("{f:?} is not a direct map of fields")))?;
                Ok(im[j])
            },
            move |a: &VectorField<TrivialModel>| {
                let j = find_field(&dd2, a)?;
                Ok(em.cat.id(io2[j]))
            },
        );
        let vf_samples = Samples::new(direct.clone(), direct_mors.clone());
        rep.extend(check_lax_tangent_morphism(&psi, &vf_samples).scoped("Ψ"));

        let round_obj = (0..eq.cat.num_objects()).all(|o| inv_o[po[o]] == o) && (0..direct.len()).all(|j| po[inv_o[j]] == j);
        let round_mor = (0..eq.cat.num_morphisms()).all(|k| inv_m[pm[k]] == k) && (0..direct_mors.len()).all(|j| pm[inv_m[j]] == j);
        rep.record(
            "pie/vf-iso-round-trip",
            "Ψ∘Φ, Φ∘Ψ",
            if round_obj && round_mor { Ok(()) } else { Err("comparison maps are not mutually inverse".into()) },
        );
        // Φ preserves composition exactly: a functor, hence an isomorphism of categories.
        let functorial = eq.cat.composable().into_iter().all(|(g, f)| {
            let gf = eq.cat.comp(g, f).unwrap();
            direct_mors[pm[gf]].map == c.comp(direct_mors[pm[g]].map, direct_mors[pm[f]].map).unwrap()
        });
        rep.record(
            "pie/vf-iso-functor",
            "Φ",
            if functorial { Ok(()) } else { Err("Φ does not preserve composition".into()) },
        );
    }

    let direct_objects = direct.iter().map(|x| (x.base, x.section)).collect();
    Ok(PieVf { inserter: ins, equifier: eq, direct_objects, report: rep })
}

fn position_of(fields: &[VectorField<TrivialModel>], a: &VectorField<TrivialModel>) -> usize {
    fields
        .iter()
        .position(|x| x.base == a.base && x.section == a.section)
        .unwrap_or(usize::MAX)
}

fn find_field(fields: &[VectorField<TrivialModel>], a: &VectorField<TrivialModel>) -> Result<usize> {
    match position_of(fields, a) {
        usize::MAX => Err(Error::Invalid(format!("{a:?} is not a direct vector field"))),
        j => Ok(j),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_product() {
        let b = Bounds::default();
        let p = product(&FiniteCategory::discrete(2), &FiniteCategory::discrete(3), &b).unwrap();
        assert!(p.cat.isomorphic(&FiniteCategory::discrete(6)));
        let t = product(&FiniteCategory::chain(3), &FiniteCategory::terminal(), &b).unwrap();
        assert!(t.cat.isomorphic(&FiniteCategory::chain(3)));
        assert!(check_product(&FiniteCategory::arrow(), &FiniteCategory::discrete(2), &product(&FiniteCategory::arrow(), &FiniteCategory::discrete(2), &b).unwrap(), &b).unwrap().all_pass());
    }

    #[test]
    fn endomorphism_inserter() {
        let c = FiniteCategory::idempotent();
        let id = Functor::identity(&c);
        let ins = inserter(&c, &c, &id, &id, &Bounds::default()).unwrap();
        assert_eq!(ins.objects, vec![(0, 0), (0, 1)]);
        assert!(check_inserter(&c, &c, &id, &id, &ins, &Bounds::default()).unwrap().all_pass());
    }

    #[test]
    fn idempotent_vf_discards_e() {
        let out = vf_via_pie(&FiniteCategory::idempotent(), &Bounds::default()).unwrap();
        assert_eq!(out.inserter.cat.num_objects(), 2);
        assert_eq!(out.equifier.objects.len(), 1);
        assert_eq!(out.direct_objects, vec![(0, 0)]);
        assert!(out.report.all_pass(), "{:?}", out.report.failures());
    }

    #[test]
    fn product_projections_are_strict() {
        let b = Bounds::default();
        let (c, d) = (FiniteCategory::arrow(), FiniteCategory::idempotent());
        let p = product(&c, &d, &b).unwrap();
        let pm = TrivialModel::new(p.cat.clone());
        assert!(check_tangent_axioms(&pm, &exhaustive(&pm)).unwrap().all_pass());
        for (leg, tgt) in [(&p.left, &c), (&p.right, &d)] {
            let f = strict_functor(&pm, &TrivialModel::new(tgt.clone()), leg);
            assert!(check_lax_tangent_morphism(&f, &exhaustive(&pm)).all_pass());
        }
    }

    #[test]
    fn equifier_cases() {
        let b = Bounds::default();
        let c = FiniteCategory::discrete(3);
        let id = Functor::identity(&c);
        let phi = NatTrans::identity(&id, &c);
        let same = equifier(&c, &c, &phi, &phi, &b).unwrap();
        assert_eq!(same.objects, vec![0, 1, 2]);
        assert!(check_equifier(&c, &phi, &phi, &same, &b).unwrap().all_pass());

        // Two transformations id ⇒ id on a one-object monoid that never agree.
        let m = FiniteCategory::idempotent();
        let mid = Functor::identity(&m);
        let (one, e) = (NatTrans { components: vec![0] }, NatTrans { components: vec![1] });
        e.validate(&m, &m, &mid, &mid).unwrap();
        let none = equifier(&m, &m, &one, &e, &b).unwrap();
        assert_eq!(none.cat.num_objects(), 0);
        assert!(check_equifier(&m, &one, &e, &none, &b).unwrap().all_pass());

        // Mixed: into the product with the idempotent, agreeing only where the
        // second coordinate is hit by the identity.
        let x = product(&c, &m, &b).unwrap().cat;
        let xid = Functor::identity(&x);
        let phi = NatTrans::identity(&xid, &x);
        let psi = NatTrans {
            components: (0..3).map(|o| if o == 1 { x.id(o) } else { o * 2 + 1 }).collect(),
        };
        psi.validate(&x, &x, &xid, &xid).unwrap();
        let mixed = equifier(&x, &x, &phi, &psi, &b).unwrap();
        assert_eq!(mixed.objects, vec![1]);
        assert!(check_equifier(&x, &phi, &psi, &mixed, &b).unwrap().all_pass());
    }

    #[test]
    fn pullback_cases() {
        let b = Bounds::default();
        let (c, d, t) = (FiniteCategory::arrow(), FiniteCategory::discrete(2), FiniteCategory::terminal());
        let (f, g) = (Functor::constant(&c, &t, 0), Functor::constant(&d, &t, 0));
        let pb = strict_pullback(&c, &d, &t, &f, &g, &b).unwrap();
        assert!(pb.cat.isomorphic(&product(&c, &d, &b).unwrap().cat));
        assert!(check_pullback(&c, &d, &f, &g, &pb, &b).unwrap().all_pass());

        // The inclusion of the first object of an arrow, pulled back along itself.
        let one = FiniteCategory::terminal();
        let inc = Functor::new(&one, &c, vec![0], vec![0]).unwrap();
        let diag = strict_pullback(&one, &one, &c, &inc, &inc, &b).unwrap();
        assert!(diag.cat.isomorphic(&one));
        assert!(check_pullback(&one, &one, &inc, &inc, &diag, &b).unwrap().all_pass());
    }

    #[test]
    fn uniqueness_failure_names_both() {
        let mut rep = Report::new();
        let f = Functor::identity(&FiniteCategory::terminal());
        tally(&mut rep, "pie/x", "terminal", vec![(0, f.clone()), (0, f)], vec![0]);
        assert!(rep.failures()[0].witness.as_deref().unwrap().contains("2 ways"));
    }

    #[test]
    fn small_vf_via_pie() {
        for c in [FiniteCategory::terminal(), FiniteCategory::arrow(), FiniteCategory::walking_iso()] {
            let out = vf_via_pie(&c, &Bounds::default()).unwrap();
            assert!(out.report.all_pass(), "{:?}", out.report.failures());
            assert!(out.equifier.cat.isomorphic(&c));
        }
    }
}

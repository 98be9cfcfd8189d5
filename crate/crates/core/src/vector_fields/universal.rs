//! Vector fields in hom-tangent categories, the universal vector field, and
//! the constructions `Λ` and `Γ` relating them to morphisms into `VF`.

use std::sync::Arc;

use super::{VFMorphism, VectorField, VfModel};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::tangent_core::{
    check_lax_tangent_morphism, compose_all, hom_tangent, same, LaxTangentMorphism, MorphismKind, Samples,
    TangentModel, Verdict,
};

type FieldFn<S, X> = Arc<dyn Fn(&<S as TangentModel>::Obj) -> Result<<X as TangentModel>::Mor> + Send + Sync>;

/// A vector field on `(G, β)` in the hom-tangent category: components
/// `u_A : GA → T GA`.
pub struct HomVectorField<S: TangentModel, X: TangentModel> {
    pub name: String,
    pub base: LaxTangentMorphism<S, X>,
    field: FieldFn<S, X>,
}

impl<S: TangentModel, X: TangentModel> Clone for HomVectorField<S, X> {
    fn clone(&self) -> Self {
        HomVectorField { name: self.name.clone(), base: self.base.clone(), field: self.field.clone() }
    }
}

impl<S: TangentModel, X: TangentModel> HomVectorField<S, X> {
    pub fn new(
        name: impl Into<String>,
        base: LaxTangentMorphism<S, X>,
        field: impl Fn(&S::Obj) -> Result<X::Mor> + Send + Sync + 'static,
    ) -> Self {
        HomVectorField { name: name.into(), base, field: Arc::new(field) }
    }

    pub fn at(&self, a: &S::Obj) -> Result<X::Mor> {
        (self.field)(a)
    }
}

/// The forgetful strict morphism `U : VF(X) → X`.
pub fn forgetful<X: TangentModel>(vf: &VfModel<X>) -> LaxTangentMorphism<VfModel<X>, X> {
    let x = vf.base.clone();
    LaxTangentMorphism::new(
        "U",
        MorphismKind::Strict,
        vf.clone(),
        vf.base.clone(),
        |a: &VectorField<X>| Ok(a.base.clone()),
        |f: &VFMorphism<X>| Ok(f.map.clone()),
        move |a: &VectorField<X>| Ok(x.identity(&x.tangent_obj(&a.base))),
    )
}

/// `v̂` on `U`, with component `v` at `(M, v)`.
pub fn universal_field<X: TangentModel>(vf: &VfModel<X>) -> HomVectorField<VfModel<X>, X> {
    HomVectorField::new("universal", forgetful(vf), |a: &VectorField<X>| Ok(a.section.clone()))
}

/// The zero field `z_{GA}` on any `(G, β)`.
pub fn zero_hom_field<S: TangentModel, X: TangentModel>(base: &LaxTangentMorphism<S, X>) -> HomVectorField<S, X> {
    let g = base.clone();
    HomVectorField::new("zero", base.clone(), move |a| Ok(g.target.z(&g.obj(a)?)))
}

/// The image under the hom-tangent `T^VF`: `c_{GA} ∘ T u_A` on `T̄(G, β)`.
pub fn hom_vf_tangent<S: TangentModel, X: TangentModel>(u: &HomVectorField<S, X>) -> HomVectorField<S, X> {
    let u2 = u.clone();
    HomVectorField::new(format!("T({})", u.name), hom_tangent(&u.base), move |a| {
        let x = &u2.base.target;
        let ga = u2.base.obj(a)?;
        x.compose(&x.c(&ga), &x.tangent_mor(&u2.at(a)?))
    })
}

/// `n_{GA} ∘ u_A`.
pub fn hom_vf_negate<S: TangentModel, X: TangentModel>(u: &HomVectorField<S, X>) -> HomVectorField<S, X> {
    let u2 = u.clone();
    HomVectorField::new(format!("-{}", u.name), u.base.clone(), move |a| {
        let x = &u2.base.target;
        let ga = u2.base.obj(a)?;
        let n = x.n(&ga).ok_or_else(|| Error::Unsupported("model has no negatives".into()))?;
        x.compose(&n, &u2.at(a)?)
    })
}

/// Section law, naturality, and `T u_A ∘ β_A = c ∘ T β_A ∘ u_{TA}`.
pub fn validate_hom_field<S: TangentModel, X: TangentModel>(
    u: &HomVectorField<S, X>,
    samples: &Samples<S>,
) -> Report {
    let mut rep = Report::new();
    let g = &u.base;
    let (s, x) = (&g.source, &g.target);
    for (i, a) in samples.all_objects(s).iter().enumerate() {
        let sid = format!("obj#{i}");
        let section = (|| -> Result<Verdict> {
            let ga = g.obj(a)?;
            Ok(VectorField::<X>::unchecked(ga, u.at(a)?).validate(x))
        })();
        rep.record("hom-field/section", sid.clone(), flatten(section));
        let beta = (|| -> Result<Verdict> {
            let ga = g.obj(a)?;
            let ta = s.tangent_obj(a);
            let beta = g.alpha(a)?;
            let lhs = x.compose(&x.tangent_mor(&u.at(a)?), &beta);
            let rhs = compose_all(x, &[&x.c(&ga), &x.tangent_mor(&beta), &u.at(&ta)?]);
            Ok(same(x, lhs, rhs))
        })();
        rep.record("hom-field/beta-compat", sid, flatten(beta));
    }
    for (i, h) in samples.morphisms.iter().enumerate() {
        let nat = (|| -> Result<Verdict> {
            let gh = g.mor(h)?;
            let lhs = x.compose(&u.at(&s.cod(h))?, &gh);
            let rhs = x.compose(&x.tangent_mor(&gh), &u.at(&s.dom(h))?);
            Ok(same(x, lhs, rhs))
        })();
        rep.record("hom-field/natural", format!("mor#{i}"), flatten(nat));
    }
    rep
}

fn flatten(v: Result<Verdict>) -> Verdict {
    v.unwrap_or_else(|e| Err(format!("construction failed: {e}")))
}

/// `Λ[G, β; u]`: `A ↦ (GA, u_A)` with law `β` read as maps of vector fields.
pub fn lambda<S: TangentModel, X: TangentModel>(u: &HomVectorField<S, X>) -> LaxTangentMorphism<S, VfModel<X>> {
    let vf = VfModel::new(u.base.target.clone());
    let (u1, u2, u3) = (u.clone(), u.clone(), u.clone());
    let obj = move |a: &S::Obj| -> Result<VectorField<X>> { Ok(VectorField::unchecked(u1.base.obj(a)?, u1.at(a)?)) };
    let obj2 = obj.clone();
    let obj3 = obj.clone();
    let vf2 = vf.clone();
    LaxTangentMorphism::new(
        format!("Λ[{}]", u.name),
        u.base.kind,
        u.base.source.clone(),
        vf,
        obj,
        move |h: &S::Mor| {
            let s = &u2.base.source;
            Ok(VFMorphism::unchecked(obj2(&s.dom(h))?, obj2(&s.cod(h))?, u2.base.mor(h)?))
        },
        move |a: &S::Obj| {
            let s = &u3.base.source;
            let src = obj3(&s.tangent_obj(a))?;
            let tgt = vf2.tangent_obj(&obj3(a)?);
            Ok(VFMorphism::unchecked(src, tgt, u3.base.alpha(a)?))
        },
    )
}

/// `Γ(H) = (U ∘ H; v̂ H)`.
pub fn gamma<S: TangentModel, X: TangentModel>(h: &LaxTangentMorphism<S, VfModel<X>>) -> HomVectorField<S, X> {
    let (h1, h2, h3, h4) = (h.clone(), h.clone(), h.clone(), h.clone());
    let base = LaxTangentMorphism::new(
        format!("U∘{}", h.name),
        h.kind,
        h.source.clone(),
        h.target.base.clone(),
        move |a: &S::Obj| Ok(h1.obj(a)?.base),
        move |f: &S::Mor| Ok(h2.mor(f)?.map),
        move |a: &S::Obj| Ok(h3.alpha(a)?.map),
    );
    HomVectorField::new(format!("Γ[{}]", h.name), base, move |a| Ok(h4.obj(a)?.section))
}

/// Compares two hom vector fields componentwise on the samples.
fn compare_fields<S: TangentModel, X: TangentModel>(
    a: &HomVectorField<S, X>,
    b: &HomVectorField<S, X>,
    samples: &Samples<S>,
) -> Verdict {
    let s = &a.base.source;
    let x = &a.base.target;
    for (i, o) in samples.all_objects(s).iter().enumerate() {
        let r = (|| -> Result<Verdict> {
            let (ga, gb) = (a.base.obj(o)?, b.base.obj(o)?);
            if !x.obj_eq(&ga, &gb) {
                return Ok(Err(format!("objects differ: {ga:?} versus {gb:?}")));
            }
            let laws = same(x, a.base.alpha(o), b.base.alpha(o)).map_err(|w| format!("laws differ: {w}"));
            let fields = same(x, a.at(o), b.at(o)).map_err(|w| format!("fields differ: {w}"));
            Ok(laws.and(fields))
        })();
        flatten(r).map_err(|w| format!("obj#{i}: {w}"))?;
    }
    for (i, f) in samples.morphisms.iter().enumerate() {
        same(x, a.base.mor(f), b.base.mor(f)).map_err(|w| format!("mor#{i}: {w}"))?;
    }
    Ok(())
}

/// Compares two morphisms into `VF` on the samples.
fn compare_into_vf<S: TangentModel, X: TangentModel>(
    a: &LaxTangentMorphism<S, VfModel<X>>,
    b: &LaxTangentMorphism<S, VfModel<X>>,
    samples: &Samples<S>,
) -> Verdict {
    let s = &a.source;
    let vf = &a.target;
    for (i, o) in samples.all_objects(s).iter().enumerate() {
        let r = (|| -> Result<Verdict> {
            let (fa, fb) = (a.obj(o)?, b.obj(o)?);
            if let Err(w) = fa.same_as(&vf.base, &fb) {
                return Ok(Err(format!("objects differ: {w}")));
            }
            Ok(same(vf, a.alpha(o), b.alpha(o)).map_err(|w| format!("laws differ: {w}")))
        })();
        flatten(r).map_err(|w| format!("obj#{i}: {w}"))?;
    }
    for (i, f) in samples.morphisms.iter().enumerate() {
        same(vf, a.mor(f), b.mor(f)).map_err(|w| format!("mor#{i}: {w}"))?;
    }
    Ok(())
}

/// `Λ ∘ Γ = id` at a morphism `H` into `VF`.
pub fn check_lambda_gamma<S: TangentModel, X: TangentModel>(
    h: &LaxTangentMorphism<S, VfModel<X>>,
    samples: &Samples<S>,
) -> Verdict {
    compare_into_vf(&lambda(&gamma(h)), h, samples)
}

/// Runs the universality checks for one probe family: validity of the
/// family, `Λ` as a lax tangent morphism into `VF`, both round trips, and
/// strictness `Λ(T^VF u) = T̄(Λ u)`.
pub fn universality_probe<S: TangentModel, X: TangentModel>(
    u: &HomVectorField<S, X>,
    samples: &Samples<S>,
) -> Result<Report> {
    let valid = validate_hom_field(u, samples);
    if let Some(bad) = valid.failures().first() {
        return Err(Error::Precondition(format!(
            "probe {} is not a vector field of the hom-tangent category: {} fails at {}: {}",
            u.name,
            bad.diagram_id,
            bad.sample_id,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    let mut rep = valid;
    let lam = lambda(u);
    let vf = &lam.target;
    for (i, a) in samples.all_objects(&u.base.source).iter().enumerate() {
        let sid = format!("obj#{i}");
        let obj = lam.obj(a).map_err(|e| e.to_string()).and_then(|o| o.validate(&vf.base));
        rep.record("universal/lambda-object", sid.clone(), obj);
        let law = lam.alpha(a).map_err(|e| e.to_string()).and_then(|f| f.validate(&vf.base));
        rep.record("universal/lambda-law", sid, law);
    }
    for (i, f) in samples.morphisms.iter().enumerate() {
        let m = lam.mor(f).map_err(|e| e.to_string()).and_then(|g| g.validate(&vf.base));
        rep.record("universal/lambda-morphism", format!("mor#{i}"), m);
    }
    rep.extend(check_lax_tangent_morphism(&lam, samples).scoped("lambda"));
    rep.record("universal/gamma-lambda", u.name.clone(), compare_fields(&gamma(&lam), u, samples));
    rep.record("universal/lambda-gamma", u.name.clone(), check_lambda_gamma(&lam, samples));
    rep.record(
        "universal/lambda-strict",
        u.name.clone(),
        compare_into_vf(&lambda(&hom_vf_tangent(u)), &hom_tangent(&lam), samples),
    );
    Ok(rep)
}

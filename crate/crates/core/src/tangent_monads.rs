//! Tangent monads, their lift to vector fields, and the monad structure of
//! vector fields themselves on commuting pairs.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model_poly::{PolyMap, PolyModel};
use crate::poly::Poly;
use crate::report::Report;
use crate::tangent_core::{
    check_lax_tangent_morphism, check_two_morphism, compose_lax, identity_morphism, same, LaxTangentMorphism,
    MorphismKind, Samples, TangentModel, TangentTwoMorphism, Verdict,
};
use crate::vector_fields::{sum_vf, vf_pushforward, zero_vf, VFMorphism, VectorField, VfModel};

type Component<M> = Arc<dyn Fn(&<M as TangentModel>::Obj) -> Result<<M as TangentModel>::Mor> + Send + Sync>;

/// A monad `(S, η, μ)` whose functor carries a lax distributive law `α`.
pub struct TangentMonad<M: TangentModel> {
    pub name: String,
    pub carrier: LaxTangentMorphism<M, M>,
    unit: Component<M>,
    mult: Component<M>,
}

impl<M: TangentModel> Clone for TangentMonad<M> {
    fn clone(&self) -> Self {
        TangentMonad {
            name: self.name.clone(),
            carrier: self.carrier.clone(),
            unit: self.unit.clone(),
            mult: self.mult.clone(),
        }
    }
}

impl<M: TangentModel> TangentMonad<M> {
    pub fn new(
        name: impl Into<String>,
        carrier: LaxTangentMorphism<M, M>,
        unit: impl Fn(&M::Obj) -> Result<M::Mor> + Send + Sync + 'static,
        mult: impl Fn(&M::Obj) -> Result<M::Mor> + Send + Sync + 'static,
    ) -> Self {
        TangentMonad { name: name.into(), carrier, unit: Arc::new(unit), mult: Arc::new(mult) }
    }

    /// `η_M : M → SM`.
    pub fn unit(&self, m: &M::Obj) -> Result<M::Mor> {
        (self.unit)(m)
    }

    /// `μ_M : S²M → SM`.
    pub fn mult(&self, m: &M::Obj) -> Result<M::Mor> {
        (self.mult)(m)
    }

    /// `η : id ⇒ (S, α)` as a tangent 2-morphism.
    pub fn unit_two_morphism(&self) -> TangentTwoMorphism<M, M> {
        let me = self.clone();
        TangentTwoMorphism::new(identity_morphism(&self.carrier.source), self.carrier.clone(), move |m| me.unit(m))
    }

    /// `μ : (S, α) ∘ (S, α) ⇒ (S, α)` as a tangent 2-morphism.
    pub fn mult_two_morphism(&self) -> TangentTwoMorphism<M, M> {
        let me = self.clone();
        TangentTwoMorphism::new(compose_lax(&self.carrier, &self.carrier), self.carrier.clone(), move |m| {
            me.mult(m)
        })
    }
}

pub fn identity_monad<M: TangentModel>(model: &M) -> TangentMonad<M> {
    let (a, b) = (model.clone(), model.clone());
    TangentMonad::new("identity", identity_morphism(model), move |m| Ok(a.identity(m)), move |m| Ok(b.identity(m)))
}

/// The carrier's lax-morphism conditions, the monad laws, naturality of
/// `η` and `μ`, and their compatibility squares with `α`.
pub fn check_tangent_monad<M: TangentModel>(tm: &TangentMonad<M>, samples: &Samples<M>) -> Report {
    let mut rep = check_lax_tangent_morphism(&tm.carrier, samples).scoped("carrier");
    let model = &tm.carrier.source;
    let s = &tm.carrier;
    for (i, m) in samples.all_objects(model).iter().enumerate() {
        let sid = format!("obj#{i}");
        let laws = (|| -> Result<[Verdict; 3]> {
            let sm = s.obj(m)?;
            let mu = tm.mult(m)?;
            let left = same(model, model.compose(&mu, &tm.unit(&sm)?), Ok(model.identity(&sm)));
            let right = same(model, model.compose(&mu, &s.mor(&tm.unit(m)?)?), Ok(model.identity(&sm)));
            let assoc = same(model, model.compose(&mu, &tm.mult(&sm)?), model.compose(&mu, &s.mor(&tm.mult(m)?)?));
            Ok([left, right, assoc])
        })();
        let [left, right, assoc] = laws.unwrap_or_else(|e| {
            let w = format!("construction failed: {e}");
            [Err(w.clone()), Err(w.clone()), Err(w)]
        });
        rep.record("monad/left-unit", sid.clone(), left);
        rep.record("monad/right-unit", sid.clone(), right);
        rep.record("monad/assoc", sid, assoc);
    }
    rep.extend(check_two_morphism(&tm.unit_two_morphism(), samples).scoped("unit"));
    rep.extend(check_two_morphism(&tm.mult_two_morphism(), samples).scoped("mult"));
    rep
}

/// The monad on vector fields: `(M, v) ↦ (SM, α ∘ Sv)`, with `η` and `μ`
/// checked as maps of vector fields whenever a component is requested.
pub fn lift_to_vf<M: TangentModel>(tm: &TangentMonad<M>) -> TangentMonad<VfModel<M>> {
    let vf = VfModel::new(tm.carrier.source.clone());
    let s = tm.carrier.clone();
    let (s1, s2, s3) = (s.clone(), s.clone(), s.clone());
    let vf2 = vf.clone();
    let carrier = LaxTangentMorphism::new(
        format!("VF({})", s.name),
        s.kind,
        vf.clone(),
        vf.clone(),
        move |a: &VectorField<M>| vf_pushforward(&s1, a),
        move |f: &VFMorphism<M>| {
            Ok(VFMorphism::unchecked(vf_pushforward(&s2, &f.source)?, vf_pushforward(&s2, &f.target)?, s2.mor(&f.map)?))
        },
        move |a: &VectorField<M>| {
            let src = vf_pushforward(&s3, &vf2.tangent_obj(a))?;
            let tgt = vf2.tangent_obj(&vf_pushforward(&s3, a)?);
            checked(&s3.source, VFMorphism::unchecked(src, tgt, s3.alpha(&a.base)?), "α")
        },
    );
    let (t1, t2) = (tm.clone(), tm.clone());
    let (c1, c2) = (s.clone(), s.clone());
    TangentMonad::new(
        format!("VF({})", tm.name),
        carrier,
        move |a: &VectorField<M>| {
            let tgt = vf_pushforward(&c1, a)?;
            checked(&c1.source, VFMorphism::unchecked(a.clone(), tgt, t1.unit(&a.base)?), "η")
        },
        move |a: &VectorField<M>| {
            let sa = vf_pushforward(&c2, a)?;
            let ssa = vf_pushforward(&c2, &sa)?;
            checked(&c2.source, VFMorphism::unchecked(ssa, sa, t2.mult(&a.base)?), "μ")
        },
    )
}

fn checked<M: TangentModel>(model: &M, f: VFMorphism<M>, what: &str) -> Result<VFMorphism<M>> {
    f.validate(model)
        .map_err(|w| Error::Invalid(format!("{what} is not a map of vector fields: {w}")))?;
    Ok(f)
}

/// Corruptions of the writer monad's distributive law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WriterMutation {
    /// `α(x, v, a) = (x, 0, v, 0)`: the monoid coordinate is dropped.
    DropMonoidSlot,
    /// `α(x, v, a) = (x, a, 0, 0)`: the tangent coordinate is dropped. This
    /// is `z ∘ S p`, itself a lawful distributive law.
    DropTangentSlot,
    /// `α(x, v, a) = (x, a, 2v, 0)`.
    DoubleTangent,
}

impl WriterMutation {
    pub const ALL: [WriterMutation; 3] =
        [WriterMutation::DropMonoidSlot, WriterMutation::DropTangentSlot, WriterMutation::DoubleTangent];

    pub fn name(self) -> &'static str {
        match self {
            WriterMutation::DropMonoidSlot => "alpha-drop-monoid-slot",
            WriterMutation::DropTangentSlot => "alpha-drop-tangent-slot",
            WriterMutation::DoubleTangent => "alpha-double-tangent",
        }
    }

    pub fn parse(name: &str) -> Option<WriterMutation> {
        WriterMutation::ALL.into_iter().find(|m| m.name() == name)
    }
}

/// `S(ℚ^m) = ℚ^{m+k}` with `η(x) = (x, 0)`, `μ(x, a, b) = (x, a + b)` and
/// `α(x, v, a) = (x, a, v, 0)`.
pub fn writer_monad(model: PolyModel, k: usize, mutation: Option<WriterMutation>) -> TangentMonad<PolyModel> {
    let carrier = LaxTangentMorphism::new(
        match mutation {
            None => format!("writer{k}"),
            Some(m) => format!("writer{k}[{}]", m.name()),
        },
        MorphismKind::Lax,
        model,
        model,
        move |m: &usize| Ok(m + k),
        move |f: &PolyMap| Ok(PolyMap::product(f, &PolyMap::identity(k))),
        move |m: &usize| {
            let m = *m;
            // Source coordinates (x, v, a) with offsets 0, m, 2m.
            let x = |i| Some(i);
            let v = |i| Some(m + i);
            let a = |i| Some(2 * m + i);
            let mut picks = Vec::with_capacity(2 * (m + k));
            picks.extend((0..m).map(x));
            match mutation {
                Some(WriterMutation::DropMonoidSlot) => picks.extend((0..k).map(|_| None)),
                _ => picks.extend((0..k).map(a)),
            }
            match mutation {
                Some(WriterMutation::DropTangentSlot) => picks.extend((0..m).map(|_| None)),
                _ => picks.extend((0..m).map(v)),
            }
            picks.extend((0..k).map(|_| None));
            let mut alpha = PolyMap::coordinate(2 * m + k, &picks);
            if mutation == Some(WriterMutation::DoubleTangent) {
                let mut comps = alpha.components().to_vec();
                for c in comps.iter_mut().skip(m + k).take(m) {
                    *c = c.scale(&crate::poly::q(2));
                }
                alpha = PolyMap::new(2 * m + k, comps)?;
            }
            Ok(alpha)
        },
    );
    TangentMonad::new(
        carrier.name.clone(),
        carrier,
        move |m: &usize| {
            let picks: Vec<Option<usize>> = (0..*m).map(Some).chain((0..k).map(|_| None)).collect();
            Ok(PolyMap::coordinate(*m, &picks))
        },
        move |m: &usize| {
            let m = *m;
            let n = m + 2 * k;
            let mut comps: Vec<Poly> = (0..m).map(|i| Poly::var(n, i)).collect();
            comps.extend((0..k).map(|j| &Poly::var(n, m + j) + &Poly::var(n, m + k + j)));
            PolyMap::new(n, comps)
        },
    )
}

/// `Tv ∘ u = c ∘ Tu ∘ v`: `v` is a map of vector fields `(M, u) → T^VF(M, u)`.
pub fn commuting_pair_check<X: TangentModel>(model: &X, u: &VectorField<X>, v: &VectorField<X>) -> Verdict {
    if !model.obj_eq(&u.base, &v.base) {
        return Err(format!("fields live over {:?} and {:?}", u.base, v.base));
    }
    let vf = VfModel::new(model.clone());
    VFMorphism::unchecked(u.clone(), vf.tangent_obj(u), v.section.clone()).validate(model)
}

/// The pair as an object of `VF(VF(X))`.
pub fn commuting_pair<X: TangentModel>(
    model: &X,
    u: &VectorField<X>,
    v: &VectorField<X>,
) -> Result<VectorField<VfModel<X>>> {
    commuting_pair_check(model, u, v).map_err(|w| Error::Precondition(format!("fields do not commute: {w}")))?;
    let vf = VfModel::new(model.clone());
    Ok(VectorField::unchecked(u.clone(), VFMorphism::unchecked(u.clone(), vf.tangent_obj(u), v.section.clone())))
}

/// Unit of the vector-field monad: `M ↦ (M, z)`.
pub fn vf_unit<X: TangentModel>(model: &X, m: &X::Obj) -> VectorField<X> {
    zero_vf(model, m)
}

/// Multiplication of the vector-field monad: `((M, u), v) ↦ (M, u + v)`.
pub fn vf_mult<X: TangentModel>(model: &X, pair: &VectorField<VfModel<X>>) -> Result<VectorField<X>> {
    let vf = VfModel::new(model.clone());
    pair.validate(&vf)
        .map_err(|w| Error::Precondition(format!("not a commuting pair: {w}")))?;
    let u = &pair.base;
    let v = VectorField::unchecked(u.base.clone(), pair.section.map.clone());
    sum_vf(model, u, &v)
}

/// Unit and associativity of the vector-field monad on families of pairwise
/// commuting fields over one base.
pub fn check_vf_monad<X: TangentModel>(model: &X, families: &[Vec<VectorField<X>>]) -> Report {
    let mut rep = Report::new();
    let vf = VfModel::new(model.clone());
    let vf2 = VfModel::new(vf.clone());
    for (fi, fam) in families.iter().enumerate() {
        for (i, u) in fam.iter().enumerate() {
            let sid = format!("family#{fi}/field#{i}");
            // μ ∘ η_VF: ((M, u), z^VF) ↦ (M, u).
            let left = VectorField::unchecked(u.clone(), vf.z(u));
            rep.record("vf-monad/left-unit", sid.clone(), eq(model, vf_mult(model, &left), u));
            // μ ∘ VF(η): ((M, z), u) ↦ (M, u).
            let zero = vf_unit(model, &u.base);
            let right = VectorField::unchecked(zero.clone(), VFMorphism::unchecked(zero.clone(), vf.tangent_obj(&zero), u.section.clone()));
            rep.record("vf-monad/right-unit", sid.clone(), eq(model, vf_mult(model, &right), u));
            for (j, v) in fam.iter().enumerate() {
                rep.record(
                    "vf-monad/commuting",
                    format!("family#{fi}/pair#{i},{j}"),
                    commuting_pair_check(model, u, v),
                );
            }
        }
        for (i, u) in fam.iter().enumerate() {
            for (j, v) in fam.iter().enumerate() {
                for (k, w) in fam.iter().enumerate() {
                    let sid = format!("family#{fi}/triple#{i},{j},{k}");
                    let verdict = (|| -> Result<Verdict> {
                        let uv = commuting_pair(model, u, v)?;
                        // w as a field on (M, u) in VF, then on ((M, u), v) in VF².
                        let uw = commuting_pair(model, u, w)?;
                        let w_on_uv = VFMorphism::unchecked(uv.clone(), vf2.tangent_obj(&uv), uw.section.clone());
                        let triple = VectorField::unchecked(uv.clone(), w_on_uv);
                        // μ ∘ μ_VF
                        let inner = vf_mult(&vf, &triple)?;
                        let a = vf_mult(model, &inner)?;
                        // μ ∘ VF(μ)
                        let u_plus_v = vf_mult(model, &uv)?;
                        let b = vf_mult(model, &commuting_pair(model, &u_plus_v, w)?)?;
                        Ok(a.same_as(model, &b))
                    })();
                    rep.record(
                        "vf-monad/assoc",
                        sid,
                        verdict.unwrap_or_else(|e| Err(format!("construction failed: {e}"))),
                    );
                }
            }
        }
    }
    rep
}

fn eq<X: TangentModel>(model: &X, a: Result<VectorField<X>>, b: &VectorField<X>) -> Verdict {
    a.map_err(|e| format!("construction failed: {e}"))?.same_as(model, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples() -> Samples<PolyModel> {
        let x = Poly::var(1, 0);
        let sq = PolyMap::new(1, vec![&x * &x]).unwrap();
        Samples::new(vec![1, 2], vec![sq])
    }

    #[test]
    fn writer_passes() {
        let rep = check_tangent_monad(&writer_monad(PolyModel::new(), 1, None), &samples());
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn identity_monad_passes() {
        let rep = check_tangent_monad(&identity_monad(&PolyModel::new()), &samples());
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn writer_mutations() {
        let run = |m| check_tangent_monad(&writer_monad(PolyModel::new(), 1, Some(m)), &samples());
        let drop_a = run(WriterMutation::DropMonoidSlot);
        assert!(drop_a.failed("morphism/z-compat"));
        assert!(drop_a.failed("morphism/p-compat"));
        assert!(run(WriterMutation::DoubleTangent).failed("morphism/l-compat"));
        let drop_v = run(WriterMutation::DropTangentSlot);
        assert!(!drop_v.failed("morphism/l-compat"), "{:?}", drop_v.failures());
    }

    #[test]
    fn writer_lift_on_identity_field() {
        let model = PolyModel::new();
        let x = Poly::var(1, 0);
        let v = VectorField::new(&model, 1, PolyMap::new(1, vec![x.clone(), x]).unwrap()).unwrap();
        let lifted = lift_to_vf(&writer_monad(model, 1, None));
        let sv = lifted.carrier.obj(&v).unwrap();
        let (y, a) = (Poly::var(2, 0), Poly::var(2, 1));
        let want = PolyMap::new(2, vec![y.clone(), a, y, Poly::zero(2)]).unwrap();
        assert_eq!(sv.section, want);
        lifted.unit(&v).unwrap();
        lifted.mult(&v).unwrap();
    }
}

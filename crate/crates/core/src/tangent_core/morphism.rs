use std::fmt;
use std::sync::Arc;

use super::{compose_all, same, Samples, TangentModel, Verdict};
use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    Lax,
    /// The distributive law is invertible.
    Strong,
    /// The distributive law is the identity.
    Strict,
}

type ObjFn<S, X> = Arc<dyn Fn(&<S as TangentModel>::Obj) -> Result<<X as TangentModel>::Obj> + Send + Sync>;
type MorFn<S, X> = Arc<dyn Fn(&<S as TangentModel>::Mor) -> Result<<X as TangentModel>::Mor> + Send + Sync>;
type LawFn<S, X> = Arc<dyn Fn(&<S as TangentModel>::Obj) -> Result<<X as TangentModel>::Mor> + Send + Sync>;

/// A functor `F` with a lax distributive law `α_M : F(TM) → T'(FM)`.
pub struct LaxTangentMorphism<S: TangentModel, X: TangentModel> {
    pub name: String,
    pub kind: MorphismKind,
    pub source: S,
    pub target: X,
    map_obj: ObjFn<S, X>,
    map_mor: MorFn<S, X>,
    law: LawFn<S, X>,
}

impl<S: TangentModel, X: TangentModel> Clone for LaxTangentMorphism<S, X> {
    fn clone(&self) -> Self {
        LaxTangentMorphism {
            name: self.name.clone(),
            kind: self.kind,
            source: self.source.clone(),
            target: self.target.clone(),
            map_obj: self.map_obj.clone(),
            map_mor: self.map_mor.clone(),
            law: self.law.clone(),
        }
    }
}

impl<S: TangentModel, X: TangentModel> fmt::Debug for LaxTangentMorphism<S, X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaxTangentMorphism({}, {:?}: {} → {})", self.name, self.kind, self.source.name(), self.target.name())
    }
}

impl<S: TangentModel, X: TangentModel> LaxTangentMorphism<S, X> {
    pub fn new(
        name: impl Into<String>,
        kind: MorphismKind,
        source: S,
        target: X,
        map_obj: impl Fn(&S::Obj) -> Result<X::Obj> + Send + Sync + 'static,
        map_mor: impl Fn(&S::Mor) -> Result<X::Mor> + Send + Sync + 'static,
        law: impl Fn(&S::Obj) -> Result<X::Mor> + Send + Sync + 'static,
    ) -> Self {
        LaxTangentMorphism {
            name: name.into(),
            kind,
            source,
            target,
            map_obj: Arc::new(map_obj),
            map_mor: Arc::new(map_mor),
            law: Arc::new(law),
        }
    }

    pub fn obj(&self, m: &S::Obj) -> Result<X::Obj> {
        (self.map_obj)(m)
    }

    pub fn mor(&self, f: &S::Mor) -> Result<X::Mor> {
        (self.map_mor)(f)
    }

    /// `α_M : F(TM) → T'(FM)`.
    pub fn alpha(&self, m: &S::Obj) -> Result<X::Mor> {
        (self.law)(m)
    }
}

/// The identity tangent morphism, strict.
pub fn identity_morphism<M: TangentModel>(model: &M) -> LaxTangentMorphism<M, M> {
    let m2 = model.clone();
    LaxTangentMorphism::new(
        "id",
        MorphismKind::Strict,
        model.clone(),
        model.clone(),
        |m| Ok(m.clone()),
        |f| Ok(f.clone()),
        move |m| Ok(m2.identity(&m2.tangent_obj(m))),
    )
}

/// `(T, c)` as a strong endomorphism.
pub fn tangent_endo<M: TangentModel>(model: &M) -> LaxTangentMorphism<M, M> {
    let (a, b, c) = (model.clone(), model.clone(), model.clone());
    LaxTangentMorphism::new(
        "(T,c)",
        MorphismKind::Strong,
        model.clone(),
        model.clone(),
        move |m| Ok(a.tangent_obj(m)),
        move |f| Ok(b.tangent_mor(f)),
        move |m| Ok(c.c(m)),
    )
}

/// `(G, β) ∘ (F, α)` with law `β_{FM} ∘ G(α_M)`.
pub fn compose_lax<S, X, Y>(
    g: &LaxTangentMorphism<X, Y>,
    f: &LaxTangentMorphism<S, X>,
) -> LaxTangentMorphism<S, Y>
where
    S: TangentModel,
    X: TangentModel,
    Y: TangentModel,
{
    let kind = match (f.kind, g.kind) {
        (MorphismKind::Strict, MorphismKind::Strict) => MorphismKind::Strict,
        (MorphismKind::Lax, _) | (_, MorphismKind::Lax) => MorphismKind::Lax,
        _ => MorphismKind::Strong,
    };
    let (f1, g1) = (f.clone(), g.clone());
    let (f2, g2) = (f.clone(), g.clone());
    let (f3, g3) = (f.clone(), g.clone());
    LaxTangentMorphism::new(
        format!("{}∘{}", g.name, f.name),
        kind,
        f.source.clone(),
        g.target.clone(),
        move |m| g1.obj(&f1.obj(m)?),
        move |h| g2.mor(&f2.mor(h)?),
        move |m| {
            let ga = g3.mor(&f3.alpha(m)?)?;
            let beta = g3.alpha(&f3.obj(m)?)?;
            g3.target.compose(&beta, &ga)
        },
    )
}

/// The hom-tangent bundle `T̄(F, α) = (T, c) ∘ (F, α)`.
pub fn hom_tangent<S: TangentModel, X: TangentModel>(
    f: &LaxTangentMorphism<S, X>,
) -> LaxTangentMorphism<S, X> {
    compose_lax(&tangent_endo(&f.target), f)
}

/// Component at `M` of a structural transformation of the hom-tangent
/// structure, i.e. the target's structure map postcomposed at `FM`.
pub fn hom_structure<S: TangentModel, X: TangentModel>(
    f: &LaxTangentMorphism<S, X>,
    name: &str,
    m: &S::Obj,
) -> Result<X::Mor> {
    let fm = f.obj(m)?;
    let x = &f.target;
    match name {
        "p" => Ok(x.p(&fm)),
        "z" => Ok(x.z(&fm)),
        "s" => Ok(x.s(&fm)),
        "l" => Ok(x.l(&fm)),
        "c" => Ok(x.c(&fm)),
        "n" => x.n(&fm).ok_or_else(|| Error::Unsupported("model has no negatives".into())),
        other => Err(Error::Precondition(format!("unknown structure map {other:?}"))),
    }
}

/// A tangent 2-morphism `φ : (F, α) ⇒ (G, β)`.
pub struct TangentTwoMorphism<S: TangentModel, X: TangentModel> {
    pub source: LaxTangentMorphism<S, X>,
    pub target: LaxTangentMorphism<S, X>,
    component: LawFn<S, X>,
}

impl<S: TangentModel, X: TangentModel> Clone for TangentTwoMorphism<S, X> {
    fn clone(&self) -> Self {
        TangentTwoMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            component: self.component.clone(),
        }
    }
}

impl<S: TangentModel, X: TangentModel> TangentTwoMorphism<S, X> {
    pub fn new(
        source: LaxTangentMorphism<S, X>,
        target: LaxTangentMorphism<S, X>,
        component: impl Fn(&S::Obj) -> Result<X::Mor> + Send + Sync + 'static,
    ) -> Self {
        TangentTwoMorphism {
            source,
            target,
            component: Arc::new(component),
        }
    }

    pub fn at(&self, m: &S::Obj) -> Result<X::Mor> {
        (self.component)(m)
    }
}

/// `p̄ : T̄(F, α) ⇒ (F, α)`, postcomposition with `p`.
pub fn p_bar<S: TangentModel, X: TangentModel>(f: &LaxTangentMorphism<S, X>) -> TangentTwoMorphism<S, X> {
    let f2 = f.clone();
    TangentTwoMorphism::new(hom_tangent(f), f.clone(), move |m| hom_structure(&f2, "p", m))
}

/// `z̄ : (F, α) ⇒ T̄(F, α)`, postcomposition with `z`.
pub fn z_bar<S: TangentModel, X: TangentModel>(f: &LaxTangentMorphism<S, X>) -> TangentTwoMorphism<S, X> {
    let f2 = f.clone();
    TangentTwoMorphism::new(f.clone(), hom_tangent(f), move |m| hom_structure(&f2, "z", m))
}

/// Checks the lax tangent morphism conditions on the samples: functoriality,
/// naturality of `α`, and compatibility with `p, z, s, l, c`.
pub fn check_lax_tangent_morphism<S: TangentModel, X: TangentModel>(
    f: &LaxTangentMorphism<S, X>,
    samples: &Samples<S>,
) -> Report {
    let mut rep = Report::new();
    let src = &f.source;
    let x = &f.target;
    for (i, m) in samples.all_objects(src).iter().enumerate() {
        let sid = format!("obj#{i}");
        for (id, v) in law_diagrams(f, m) {
            rep.record(id, sid.clone(), v);
        }
    }
    for (i, h) in samples.morphisms.iter().enumerate() {
        let sid = format!("mor#{i}");
        let v = (|| -> Result<(X::Mor, X::Mor)> {
            let (a, b) = (src.dom(h), src.cod(h));
            let lhs = x.compose(&f.alpha(&b)?, &f.mor(&src.tangent_mor(h))?)?;
            let rhs = x.compose(&x.tangent_mor(&f.mor(h)?), &f.alpha(&a)?)?;
            Ok((lhs, rhs))
        })();
        rep.record("morphism/alpha-natural", sid, pair(x, v));
    }
    for (i, j) in samples.composable_pairs(src) {
        let (h, k) = (&samples.morphisms[i], &samples.morphisms[j]);
        let v = (|| -> Result<(X::Mor, X::Mor)> {
            let lhs = f.mor(&src.compose(k, h)?)?;
            let rhs = x.compose(&f.mor(k)?, &f.mor(h)?)?;
            Ok((lhs, rhs))
        })();
        rep.record("morphism/functor-compose", format!("mor#{j}∘mor#{i}"), pair(x, v));
    }
    rep
}

fn law_diagrams<S: TangentModel, X: TangentModel>(
    f: &LaxTangentMorphism<S, X>,
    m: &S::Obj,
) -> Vec<(&'static str, Verdict)> {
    let src = &f.source;
    let x = &f.target;
    let mut out = Vec::new();
    let built = (|| -> Result<_> {
        let fm = f.obj(m)?;
        let tm = src.tangent_obj(m);
        let alpha = f.alpha(m)?;
        let alpha_t = f.alpha(&tm)?;
        let t_alpha = x.tangent_mor(&alpha);
        Ok((fm, tm, alpha, alpha_t, t_alpha))
    })();
    let (fm, _tm, alpha, alpha_t, t_alpha) = match built {
        Ok(v) => v,
        Err(e) => {
            out.push(("morphism/law", Err(format!("cannot build distributive law: {e}"))));
            return out;
        }
    };
    let comp = |fs: &[&X::Mor]| compose_all(x, fs);
    out.push((
        "morphism/functor-identity",
        same(x, f.mor(&src.identity(m)), Ok(x.identity(&fm))),
    ));
    out.push((
        "morphism/p-compat",
        same(x, comp(&[&x.p(&fm), &alpha]), f.mor(&src.p(m))),
    ));
    out.push((
        "morphism/z-compat",
        same(x, f.mor(&src.z(m)).and_then(|fz| comp(&[&alpha, &fz])), Ok(x.z(&fm))),
    ));
    let s_compat = || -> Result<(X::Mor, X::Mor)> {
        let a1 = comp(&[&alpha, &f.mor(&src.proj(m, 2, 1))?])?;
        let a2 = comp(&[&alpha, &f.mor(&src.proj(m, 2, 2))?])?;
        let lhs = comp(&[&x.s(&fm), &x.tuple(&fm, 0, &[a1, a2])?])?;
        let rhs = comp(&[&alpha, &f.mor(&src.s(m))?])?;
        Ok((lhs, rhs))
    };
    out.push(("morphism/s-compat", pair(x, s_compat())));
    out.push((
        "morphism/l-compat",
        same(
            x,
            comp(&[&x.l(&fm), &alpha]),
            f.mor(&src.l(m)).and_then(|fl| comp(&[&t_alpha, &alpha_t, &fl])),
        ),
    ));
    out.push((
        "morphism/c-compat",
        same(
            x,
            f.mor(&src.c(m)).and_then(|fc| comp(&[&t_alpha, &alpha_t, &fc])),
            comp(&[&x.c(&fm), &t_alpha, &alpha_t]),
        ),
    ));
    if f.kind == MorphismKind::Strict {
        out.push((
            "morphism/strict",
            same(x, Ok(alpha.clone()), Ok(x.identity(&x.tangent_obj(&fm)))),
        ));
    }
    out
}

/// Checks naturality of `φ` and the square `T'φ_M ∘ α_M = β_M ∘ φ_{TM}`.
pub fn check_two_morphism<S: TangentModel, X: TangentModel>(
    phi: &TangentTwoMorphism<S, X>,
    samples: &Samples<S>,
) -> Report {
    let mut rep = Report::new();
    let src = &phi.source.source;
    let x = &phi.source.target;
    for (i, m) in samples.all_objects(src).iter().enumerate() {
        let v = (|| -> Result<(X::Mor, X::Mor)> {
            let tm = src.tangent_obj(m);
            let lhs = x.compose(&x.tangent_mor(&phi.at(m)?), &phi.source.alpha(m)?)?;
            let rhs = x.compose(&phi.target.alpha(m)?, &phi.at(&tm)?)?;
            Ok((lhs, rhs))
        })();
        rep.record("two-morphism/law-square", format!("obj#{i}"), pair(x, v));
    }
    for (i, h) in samples.morphisms.iter().enumerate() {
        let v = (|| -> Result<(X::Mor, X::Mor)> {
            let (a, b) = (src.dom(h), src.cod(h));
            let lhs = x.compose(&phi.at(&b)?, &phi.source.mor(h)?)?;
            let rhs = x.compose(&phi.target.mor(h)?, &phi.at(&a)?)?;
            Ok((lhs, rhs))
        })();
        rep.record("two-morphism/natural", format!("mor#{i}"), pair(x, v));
    }
    rep
}

fn pair<X: TangentModel>(x: &X, v: Result<(X::Mor, X::Mor)>) -> Verdict {
    match v {
        Ok((a, b)) => same(x, Ok(a), Ok(b)),
        Err(e) => Err(format!("construction failed: {e}")),
    }
}

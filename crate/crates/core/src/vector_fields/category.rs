//! `VF(X, T)` as a tangent model in its own right.

use super::{vf_tangent, VFMorphism, VectorField};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::tangent_core::{compose_all, Samples, TangentModel, Verdict};

/// Vector fields of `base` with `T^VF(M, v) = (TM, c ∘ Tv)` and structure
/// maps inherited from the base.
#[derive(Debug, Clone, Default)]
pub struct VfModel<X: TangentModel> {
    pub base: X,
}

impl<X: TangentModel> VfModel<X> {
    pub fn new(base: X) -> Self {
        VfModel { base }
    }

    fn lift(&self, source: VectorField<X>, target: VectorField<X>, map: X::Mor) -> VFMorphism<X> {
        VFMorphism::unchecked(source, target, map)
    }

    fn t(&self, a: &VectorField<X>) -> VectorField<X> {
        vf_tangent(&self.base, a).expect("tangent of a well-formed field")
    }

    /// The field on `T_n M` induced by `c ∘ Tv` on each factor.
    pub fn pullback_field(&self, a: &VectorField<X>, n: usize) -> Result<VectorField<X>> {
        let x = &self.base;
        let m = &a.base;
        let ctv = x.compose(&x.c(m), &x.tangent_mor(&a.section))?;
        let legs = (1..=n)
            .map(|k| x.compose(&ctv, &x.proj(m, n, k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField::unchecked(x.pullback_obj(m, n), x.tuple(m, 1, &legs)?))
    }
}

impl<X: TangentModel> TangentModel for VfModel<X> {
    type Obj = VectorField<X>;
    type Mor = VFMorphism<X>;

    fn name(&self) -> String {
        format!("VF({})", self.base.name())
    }

    fn obj_eq(&self, a: &VectorField<X>, b: &VectorField<X>) -> bool {
        a.same_as(&self.base, b).is_ok()
    }

    fn check_object(&self, a: &VectorField<X>) -> Result<()> {
        a.validate(&self.base).map_err(Error::Invalid)
    }

    fn check_morphism(&self, f: &VFMorphism<X>) -> Verdict {
        f.validate(&self.base)
    }

    fn dom(&self, f: &VFMorphism<X>) -> VectorField<X> {
        f.source.clone()
    }

    fn cod(&self, f: &VFMorphism<X>) -> VectorField<X> {
        f.target.clone()
    }

    fn identity(&self, a: &VectorField<X>) -> VFMorphism<X> {
        self.lift(a.clone(), a.clone(), self.base.identity(&a.base))
    }

    fn compose(&self, g: &VFMorphism<X>, f: &VFMorphism<X>) -> Result<VFMorphism<X>> {
        f.target
            .same_as(&self.base, &g.source)
            .map_err(|w| Error::Mismatch(format!("fields do not match at the junction: {w}")))?;
        Ok(self.lift(f.source.clone(), g.target.clone(), self.base.compose(&g.map, &f.map)?))
    }

    fn equals(&self, f: &VFMorphism<X>, g: &VFMorphism<X>) -> Verdict {
        self.base.equals(&f.map, &g.map)
    }

    fn tangent_obj(&self, a: &VectorField<X>) -> VectorField<X> {
        self.t(a)
    }

    fn tangent_mor(&self, f: &VFMorphism<X>) -> VFMorphism<X> {
        self.lift(self.t(&f.source), self.t(&f.target), self.base.tangent_mor(&f.map))
    }

    fn p(&self, a: &VectorField<X>) -> VFMorphism<X> {
        self.lift(self.t(a), a.clone(), self.base.p(&a.base))
    }

    fn z(&self, a: &VectorField<X>) -> VFMorphism<X> {
        self.lift(a.clone(), self.t(a), self.base.z(&a.base))
    }

    fn s(&self, a: &VectorField<X>) -> VFMorphism<X> {
        self.lift(self.pullback_obj(a, 2), self.t(a), self.base.s(&a.base))
    }

    fn l(&self, a: &VectorField<X>) -> VFMorphism<X> {
        let ta = self.t(a);
        let tta = self.t(&ta);
        self.lift(ta, tta, self.base.l(&a.base))
    }

    fn c(&self, a: &VectorField<X>) -> VFMorphism<X> {
        let tta = self.t(&self.t(a));
        self.lift(tta.clone(), tta, self.base.c(&a.base))
    }

    fn n(&self, a: &VectorField<X>) -> Option<VFMorphism<X>> {
        let ta = self.t(a);
        self.base.n(&a.base).map(|n| self.lift(ta.clone(), ta, n))
    }

    fn pullback_obj(&self, a: &VectorField<X>, n: usize) -> VectorField<X> {
        self.pullback_field(a, n).expect("pullback field of a well-formed field")
    }

    fn proj(&self, a: &VectorField<X>, n: usize, k: usize) -> VFMorphism<X> {
        self.lift(self.pullback_obj(a, n), self.t(a), self.base.proj(&a.base, n, k))
    }

    fn tuple(&self, a: &VectorField<X>, depth: usize, maps: &[VFMorphism<X>]) -> Result<VFMorphism<X>> {
        let first = maps.first().ok_or_else(|| Error::Precondition("empty tuple".into()))?;
        let under: Vec<X::Mor> = maps.iter().map(|f| f.map.clone()).collect();
        let map = self.base.tuple(&a.base, depth, &under)?;
        let mut target = self.pullback_field(a, maps.len())?;
        for _ in 0..depth {
            target = self.t(&target);
        }
        Ok(self.lift(first.source.clone(), target, map))
    }

    fn lift_extract(&self, a: &VectorField<X>, h: &VFMorphism<X>) -> Result<VFMorphism<X>> {
        let map = self.base.lift_extract(&a.base, &h.map)?;
        Ok(self.lift(h.source.clone(), self.t(a), map))
    }
}

/// Checks that every structure map of `VF` is a genuine morphism of vector
/// fields, i.e. the squares `u ∘ f = Tf ∘ v` commute, on the samples.
pub fn check_vf_structure<X: TangentModel>(model: &VfModel<X>, samples: &Samples<VfModel<X>>) -> Report {
    let mut rep = Report::new();
    let x = &model.base;
    for (i, a) in samples.all_objects(model).iter().enumerate() {
        let sid = format!("obj#{i}");
        rep.record("vf-structure/object", sid.clone(), a.validate(x));
        rep.record("vf-structure/tangent-object", sid.clone(), model.t(a).validate(x));
        rep.record(
            "vf-structure/pullback-object",
            sid.clone(),
            model.pullback_field(a, 2).map_err(|e| e.to_string()).and_then(|f| f.validate(x)),
        );
        let mut maps = vec![
            ("vf-structure/p", model.p(a)),
            ("vf-structure/z", model.z(a)),
            ("vf-structure/s", model.s(a)),
            ("vf-structure/l", model.l(a)),
            ("vf-structure/c", model.c(a)),
            ("vf-structure/proj", model.proj(a, 2, 1)),
            ("vf-structure/proj", model.proj(a, 2, 2)),
        ];
        if let Some(n) = model.n(a) {
            maps.push(("vf-structure/n", n));
        }
        for (id, f) in maps {
            rep.record(id, sid.clone(), f.validate(x));
        }
        // {l ∘ g} for g = identity of T^VF: the extraction of a VF map is one.
        let ta = model.t(a);
        let ext = compose_all(model, &[&model.l(a), &model.identity(&ta)])
            .and_then(|h| model.lift_extract(a, &h))
            .map_err(|e| e.to_string())
            .and_then(|f| f.validate(x));
        rep.record("vf-structure/lift-extract", sid, ext);
    }
    for (i, f) in samples.morphisms.iter().enumerate() {
        let sid = format!("mor#{i}");
        rep.record("vf-structure/morphism", sid.clone(), f.validate(x));
        rep.record("vf-structure/tangent-morphism", sid, model.tangent_mor(f).validate(x));
    }
    rep
}

//! Vector fields over any tangent model: zero, sum, negation, the Lie
//! bracket, the tangent category they form, and universality probes.

mod category;
mod theorems;
mod universal;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tangent_core::{compose_all, same, LaxTangentMorphism, TangentModel, Verdict};

pub use category::{check_vf_structure, VfModel};
pub use theorems::{check_structure_theorems, FRelated, FieldTriple};
pub use universal::{
    check_lambda_gamma, forgetful, gamma, hom_vf_negate, hom_vf_tangent, lambda, universal_field,
    universality_probe, validate_hom_field, zero_hom_field, HomVectorField,
};

/// A section `v : M → TM` of the projection.
#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "X::Obj: Serialize, X::Mor: Serialize"))]
#[serde(bound(deserialize = "X::Obj: Deserialize<'de>, X::Mor: Deserialize<'de>"))]
pub struct VectorField<X: TangentModel> {
    pub base: X::Obj,
    pub section: X::Mor,
}

impl<X: TangentModel> Clone for VectorField<X> {
    fn clone(&self) -> Self {
        VectorField { base: self.base.clone(), section: self.section.clone() }
    }
}

impl<X: TangentModel> fmt::Debug for VectorField<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({:?}, {:?})", self.base, self.section)
    }
}

impl<X: TangentModel> VectorField<X> {
    /// Checks the endpoints and `p ∘ v = id`.
    pub fn new(model: &X, base: X::Obj, section: X::Mor) -> Result<Self> {
        let vf = VectorField { base, section };
        vf.validate(model).map_err(Error::Invalid)?;
        Ok(vf)
    }

    pub fn unchecked(base: X::Obj, section: X::Mor) -> Self {
        VectorField { base, section }
    }

    pub fn validate(&self, model: &X) -> Verdict {
        let (d, c) = (model.dom(&self.section), model.cod(&self.section));
        if !model.obj_eq(&d, &self.base) || !model.obj_eq(&c, &model.tangent_obj(&self.base)) {
            return Err(format!("section {:?} is not a map M → TM over {:?}", self.section, self.base));
        }
        model.check_morphism(&self.section)?;
        same(model, model.compose(&model.p(&self.base), &self.section), Ok(model.identity(&self.base)))
            .map_err(|w| format!("p ∘ v ≠ id: {w}"))
    }

    pub fn same_as(&self, model: &X, other: &VectorField<X>) -> Verdict {
        if !model.obj_eq(&self.base, &other.base) {
            return Err(format!("bases differ: {:?} versus {:?}", self.base, other.base));
        }
        model.equals(&self.section, &other.section)
    }
}

/// A map `f : M → N` with `u ∘ f = Tf ∘ v`.
pub struct VFMorphism<X: TangentModel> {
    pub source: VectorField<X>,
    pub target: VectorField<X>,
    pub map: X::Mor,
}

impl<X: TangentModel> Clone for VFMorphism<X> {
    fn clone(&self) -> Self {
        VFMorphism { source: self.source.clone(), target: self.target.clone(), map: self.map.clone() }
    }
}

impl<X: TangentModel> fmt::Debug for VFMorphism<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VFMorphism({:?}: {:?} → {:?})", self.map, self.source, self.target)
    }
}

impl<X: TangentModel> VFMorphism<X> {
    pub fn new(model: &X, source: VectorField<X>, target: VectorField<X>, map: X::Mor) -> Result<Self> {
        let f = VFMorphism { source, target, map };
        f.validate(model).map_err(Error::Invalid)?;
        Ok(f)
    }

    pub fn unchecked(source: VectorField<X>, target: VectorField<X>, map: X::Mor) -> Self {
        VFMorphism { source, target, map }
    }

    /// The defining square `u ∘ f = Tf ∘ v`.
    pub fn validate(&self, model: &X) -> Verdict {
        let (d, c) = (model.dom(&self.map), model.cod(&self.map));
        if !model.obj_eq(&d, &self.source.base) || !model.obj_eq(&c, &self.target.base) {
            return Err(format!("{:?} does not run {:?} → {:?}", self.map, self.source.base, self.target.base));
        }
        model.check_morphism(&self.map)?;
        same(
            model,
            model.compose(&self.target.section, &self.map),
            model.compose(&model.tangent_mor(&self.map), &self.source.section),
        )
        .map_err(|w| format!("u ∘ f ≠ Tf ∘ v: {w}"))
    }
}

pub fn zero_vf<X: TangentModel>(model: &X, m: &X::Obj) -> VectorField<X> {
    VectorField::unchecked(m.clone(), model.z(m))
}

fn same_base<X: TangentModel>(model: &X, x: &VectorField<X>, y: &VectorField<X>) -> Result<()> {
    if !model.obj_eq(&x.base, &y.base) {
        return Err(Error::Mismatch(format!("fields live over {:?} and {:?}", x.base, y.base)));
    }
    Ok(())
}

/// `s ∘ ⟨u, v⟩`.
pub fn sum_vf<X: TangentModel>(model: &X, x: &VectorField<X>, y: &VectorField<X>) -> Result<VectorField<X>> {
    same_base(model, x, y)?;
    let m = &x.base;
    let pair = model.tuple(m, 0, &[x.section.clone(), y.section.clone()])?;
    Ok(VectorField::unchecked(m.clone(), model.compose(&model.s(m), &pair)?))
}

/// `n ∘ v`.
pub fn neg_vf<X: TangentModel>(model: &X, x: &VectorField<X>) -> Result<VectorField<X>> {
    let n = model
        .n(&x.base)
        .ok_or_else(|| Error::Unsupported(format!("{} has no negatives", model.name())))?;
    Ok(VectorField::unchecked(x.base.clone(), model.compose(&n, &x.section)?))
}

/// `(TM, c ∘ Tv)`.
pub fn vf_tangent<X: TangentModel>(model: &X, x: &VectorField<X>) -> Result<VectorField<X>> {
    let section = model.compose(&model.c(&x.base), &model.tangent_mor(&x.section))?;
    Ok(VectorField::unchecked(model.tangent_obj(&x.base), section))
}

pub fn vf_tangent_mor<X: TangentModel>(model: &X, f: &VFMorphism<X>) -> Result<VFMorphism<X>> {
    Ok(VFMorphism::unchecked(
        vf_tangent(model, &f.source)?,
        vf_tangent(model, &f.target)?,
        model.tangent_mor(&f.map),
    ))
}

/// `f − g = s_{TM} ∘ ⟨f, n_{TM} ∘ g⟩` for `f, g : X → T²M` agreeing under `p_T`.
pub fn subtract_t2<X: TangentModel>(model: &X, m: &X::Obj, f: &X::Mor, g: &X::Mor) -> Result<X::Mor> {
    let tm = model.tangent_obj(m);
    let n = model
        .n(&tm)
        .ok_or_else(|| Error::Unsupported(format!("{} has no negatives", model.name())))?;
    let ng = model.compose(&n, g)?;
    let pair = model.tuple(&tm, 0, &[f.clone(), ng])?;
    model.compose(&model.s(&tm), &pair)
}

/// `T p ∘ h = z ∘ p ∘ p_T ∘ h`.
pub fn side_condition<X: TangentModel>(model: &X, m: &X::Obj, h: &X::Mor) -> Verdict {
    let tm = model.tangent_obj(m);
    same(
        model,
        model.compose(&model.tangent_mor(&model.p(m)), h),
        compose_all(model, &[&model.z(m), &model.p(m), &model.p(&tm), h]),
    )
}

/// The `h` whose extraction is the bracket: `Tv ∘ u − c ∘ Tu ∘ v`.
pub fn bracket_preimage<X: TangentModel>(model: &X, x: &VectorField<X>, y: &VectorField<X>) -> Result<X::Mor> {
    same_base(model, x, y)?;
    let m = &x.base;
    let (u, v) = (&x.section, &y.section);
    let f = model.compose(&model.tangent_mor(v), u)?;
    let g = compose_all(model, &[&model.c(m), &model.tangent_mor(u), v])?;
    subtract_t2(model, m, &f, &g)
}

/// `[u, v] = {Tv ∘ u − c ∘ Tu ∘ v}`.
pub fn bracket<X: TangentModel>(model: &X, x: &VectorField<X>, y: &VectorField<X>) -> Result<VectorField<X>> {
    let h = bracket_preimage(model, x, y)?;
    side_condition(model, &x.base, &h)
        .map_err(|w| Error::Precondition(format!("bracket side condition fails: {w}")))?;
    let section = model.lift_extract(&x.base, &h)?;
    Ok(VectorField::unchecked(x.base.clone(), section))
}

/// `(FM, α_M ∘ Fv)`.
pub fn vf_pushforward<S: TangentModel, X: TangentModel>(
    f: &LaxTangentMorphism<S, X>,
    x: &VectorField<S>,
) -> Result<VectorField<X>> {
    let section = f.target.compose(&f.alpha(&x.base)?, &f.mor(&x.section)?)?;
    Ok(VectorField::unchecked(f.obj(&x.base)?, section))
}

pub fn vf_pushforward_mor<S: TangentModel, X: TangentModel>(
    f: &LaxTangentMorphism<S, X>,
    h: &VFMorphism<S>,
) -> Result<VFMorphism<X>> {
    Ok(VFMorphism::unchecked(
        vf_pushforward(f, &h.source)?,
        vf_pushforward(f, &h.target)?,
        f.mor(&h.map)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_poly::{PolyMap, PolyModel};
    use crate::poly::{q, Poly};

    fn field1(principal: Poly) -> VectorField<PolyModel> {
        let x = Poly::var(1, 0);
        VectorField::new(&PolyModel::new(), 1, PolyMap::new(1, vec![x, principal]).unwrap()).unwrap()
    }

    #[test]
    fn bracket_one_x() {
        let model = PolyModel::new();
        let u = field1(Poly::one(1));
        let v = field1(Poly::var(1, 0));
        let b = bracket(&model, &u, &v).unwrap();
        assert_eq!(b.section, PolyMap::new(1, vec![Poly::var(1, 0), Poly::one(1)]).unwrap());
    }

    #[test]
    fn sum_of_x_and_square() {
        let model = PolyModel::new();
        let x = Poly::var(1, 0);
        let s = sum_vf(&model, &field1(x.clone()), &field1(&x * &x)).unwrap();
        assert_eq!(s.section.components()[1], &x + &(&x * &x));
    }

    #[test]
    fn constant_field_tangent() {
        let model = PolyModel::new();
        let t = vf_tangent(&model, &field1(Poly::constant(1, q(5)))).unwrap();
        let (x, a) = (Poly::var(2, 0), Poly::var(2, 1));
        let want = PolyMap::new(2, vec![x, a, Poly::constant(2, q(5)), Poly::zero(2)]).unwrap();
        assert_eq!(t.section, want);
    }

    #[test]
    fn section_law_enforced() {
        let model = PolyModel::new();
        let bad = PolyMap::new(1, vec![Poly::one(1), Poly::one(1)]).unwrap();
        assert!(VectorField::new(&model, 1, bad).is_err());
    }
}

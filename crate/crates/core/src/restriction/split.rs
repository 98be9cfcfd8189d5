//! Formal splitting of restriction idempotents, vector fields on the split
//! model, and the extension back to the rational model.

use std::fmt;

use super::{Domain, RationalMap, RationalModel};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::tangent_core::{same, TangentModel, Verdict};
use crate::vector_fields::{bracket, neg_vf, sum_vf, zero_vf, VFMorphism, VectorField, VfModel};

/// `(ℚ^dim, e)` for a restriction idempotent `e`.
#[derive(Clone, PartialEq, Eq)]
pub struct SplitObject {
    pub dim: usize,
    pub e: Domain,
}

impl SplitObject {
    pub fn new(dim: usize, e: Domain) -> Result<Self> {
        if e.nvars() != dim {
            return Err(Error::Invalid(format!("idempotent over {} variables on ℚ^{dim}", e.nvars())));
        }
        Ok(SplitObject { dim, e })
    }

    /// `η A = (A, id)`.
    pub fn total(dim: usize) -> Self {
        SplitObject { dim, e: Domain::total(dim) }
    }
}

impl fmt::Debug for SplitObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_total() {
            write!(f, "ℚ^{}", self.dim)
        } else {
            write!(f, "(ℚ^{}, {:?})", self.dim, self.e)
        }
    }
}

/// A rational map `f : (A, e) → (B, e′)` with `e′ ∘ f = f = f ∘ e`.
#[derive(Clone, PartialEq, Eq)]
pub struct SplitMap {
    pub source: SplitObject,
    pub target: SplitObject,
    pub map: RationalMap,
}

impl fmt::Debug for SplitMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {:?} → {:?}", self.map, self.source, self.target)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SplitModel {
    pub base: RationalModel,
}

/// `e` read in the first `dim` of `nvars` coordinates.
fn lift(e: &Domain, nvars: usize) -> Domain {
    let map: Vec<usize> = (0..e.nvars()).collect();
    e.rename(nvars, &map)
}

impl SplitModel {
    pub fn new() -> Self {
        SplitModel { base: RationalModel }
    }

    pub fn eta(&self, dim: usize) -> SplitObject {
        SplitObject::total(dim)
    }

    pub fn eta_mor(&self, f: &RationalMap) -> SplitMap {
        SplitMap { source: self.eta(f.source_dim()), target: self.eta(f.target_dim()), map: f.clone() }
    }

    pub fn morphism(&self, source: SplitObject, target: SplitObject, map: RationalMap) -> Result<SplitMap> {
        let f = SplitMap { source, target, map };
        self.check_morphism(&f).map_err(Error::Invalid)?;
        Ok(f)
    }

    fn over(&self, a: &SplitObject, depth_obj: usize) -> SplitObject {
        SplitObject { dim: depth_obj, e: lift(&a.e, depth_obj) }
    }

    /// A total structure map restricted to the source object's idempotent.
    fn structural(&self, source: SplitObject, target: SplitObject, total: RationalMap) -> SplitMap {
        let map = total.restrict(&source.e).expect("restricting a total map");
        SplitMap { source, target, map }
    }
}

impl TangentModel for SplitModel {
    type Obj = SplitObject;
    type Mor = SplitMap;

    fn name(&self) -> String {
        "split(rational)".into()
    }

    fn obj_eq(&self, a: &SplitObject, b: &SplitObject) -> bool {
        a == b
    }

    fn check_object(&self, a: &SplitObject) -> Result<()> {
        SplitObject::new(a.dim, a.e.clone()).map(|_| ())
    }

    fn check_morphism(&self, f: &SplitMap) -> Verdict {
        let m = &f.map;
        if m.source_dim() != f.source.dim || m.target_dim() != f.target.dim {
            return Err(format!("{m:?} does not run ℚ^{} → ℚ^{}", f.source.dim, f.target.dim));
        }
        let e = RationalMap::restricted_identity(&f.source.e);
        let e2 = RationalMap::restricted_identity(&f.target.e);
        same(&self.base, RationalMap::compose(m, &e), Ok(m.clone())).map_err(|w| format!("f ∘ e ≠ f: {w}"))?;
        same(&self.base, RationalMap::compose(&e2, m), Ok(m.clone())).map_err(|w| format!("e′ ∘ f ≠ f: {w}"))
    }

    fn dom(&self, f: &SplitMap) -> SplitObject {
        f.source.clone()
    }

    fn cod(&self, f: &SplitMap) -> SplitObject {
        f.target.clone()
    }

    fn identity(&self, a: &SplitObject) -> SplitMap {
        SplitMap { source: a.clone(), target: a.clone(), map: RationalMap::restricted_identity(&a.e) }
    }

    fn compose(&self, g: &SplitMap, f: &SplitMap) -> Result<SplitMap> {
        if f.target != g.source {
            return Err(Error::Mismatch(format!("{:?} does not meet {:?}", f.target, g.source)));
        }
        Ok(SplitMap { source: f.source.clone(), target: g.target.clone(), map: RationalMap::compose(&g.map, &f.map)? })
    }

    fn equals(&self, f: &SplitMap, g: &SplitMap) -> Verdict {
        if f.source != g.source || f.target != g.target {
            return Err(format!("{f:?} and {g:?} have different endpoints"));
        }
        self.base.equals(&f.map, &g.map)
    }

    fn tangent_obj(&self, a: &SplitObject) -> SplitObject {
        self.over(a, 2 * a.dim)
    }

    fn tangent_mor(&self, f: &SplitMap) -> SplitMap {
        SplitMap { source: self.tangent_obj(&f.source), target: self.tangent_obj(&f.target), map: f.map.tangent_map() }
    }

    fn p(&self, a: &SplitObject) -> SplitMap {
        self.structural(self.tangent_obj(a), a.clone(), self.base.p(&a.dim))
    }

    fn z(&self, a: &SplitObject) -> SplitMap {
        self.structural(a.clone(), self.tangent_obj(a), self.base.z(&a.dim))
    }

    fn s(&self, a: &SplitObject) -> SplitMap {
        self.structural(self.pullback_obj(a, 2), self.tangent_obj(a), self.base.s(&a.dim))
    }

    fn l(&self, a: &SplitObject) -> SplitMap {
        let ta = self.tangent_obj(a);
        self.structural(ta.clone(), self.tangent_obj(&ta), self.base.l(&a.dim))
    }

    fn c(&self, a: &SplitObject) -> SplitMap {
        let tta = self.tangent_obj(&self.tangent_obj(a));
        self.structural(tta.clone(), tta, self.base.c(&a.dim))
    }

    fn n(&self, a: &SplitObject) -> Option<SplitMap> {
        let ta = self.tangent_obj(a);
        self.base.n(&a.dim).map(|n| self.structural(ta.clone(), ta, n))
    }

    fn pullback_obj(&self, a: &SplitObject, n: usize) -> SplitObject {
        self.over(a, (n + 1) * a.dim)
    }

    fn proj(&self, a: &SplitObject, n: usize, k: usize) -> SplitMap {
        self.structural(self.pullback_obj(a, n), self.tangent_obj(a), self.base.proj(&a.dim, n, k))
    }

    fn tuple(&self, a: &SplitObject, depth: usize, maps: &[SplitMap]) -> Result<SplitMap> {
        let first = maps.first().ok_or_else(|| Error::Precondition("empty tuple".into()))?;
        let under: Vec<RationalMap> = maps.iter().map(|f| f.map.clone()).collect();
        let map = self.base.tuple(&a.dim, depth, &under)?;
        let mut target = self.pullback_obj(a, maps.len());
        for _ in 0..depth {
            target = self.tangent_obj(&target);
        }
        Ok(SplitMap { source: first.source.clone(), target, map })
    }

    fn lift_extract(&self, a: &SplitObject, h: &SplitMap) -> Result<SplitMap> {
        let map = self.base.lift_extract(&a.dim, &h.map)?;
        Ok(SplitMap { source: h.source.clone(), target: self.tangent_obj(a), map })
    }

    fn restriction(&self, f: &SplitMap) -> Option<SplitMap> {
        Some(SplitMap { source: f.source.clone(), target: f.source.clone(), map: f.map.restriction() })
    }
}

/// Splits a restriction idempotent `e` on `a` as `e = s ∘ r` with
/// `r ∘ s = id`, through `(A, ē)`. Returns the object, `s`, and `r`.
pub fn split_idempotent(model: &SplitModel, a: &SplitObject, e: &SplitMap) -> Result<(SplitObject, SplitMap, SplitMap)> {
    if e.source != *a || e.target != *a {
        return Err(Error::Mismatch(format!("{e:?} is not an endomorphism of {a:?}")));
    }
    model.check_morphism(e).map_err(Error::Invalid)?;
    let bar = e.map.restriction();
    model
        .base
        .equals(&e.map, &bar)
        .map_err(|w| Error::Precondition(format!("not a restriction idempotent: {w}")))?;
    let b = SplitObject::new(a.dim, e.map.domain().clone())?;
    let s = model.morphism(b.clone(), a.clone(), bar.clone())?;
    let r = model.morphism(a.clone(), b.clone(), bar)?;
    same(model, model.compose(&r, &s), Ok(model.identity(&b))).map_err(|w| Error::Invalid(format!("r ∘ s ≠ id: {w}")))?;
    same(model, model.compose(&s, &r), Ok(e.clone())).map_err(|w| Error::Invalid(format!("s ∘ r ≠ e: {w}")))?;
    Ok((b, s, r))
}

/// Vector fields of the split model.
pub fn split_vf(model: &SplitModel) -> VfModel<SplitModel> {
    VfModel::new(*model)
}

/// A total section `v` on `a`: `v̄ = id` and `p ∘ v = id`.
pub fn split_field(model: &SplitModel, a: &SplitObject, v: RationalMap) -> Result<VectorField<SplitModel>> {
    if v.domain() != &a.e {
        return Err(Error::Domain(format!(
            "section is not total on {a:?}: its restriction idempotent is {:?}",
            v.domain()
        )));
    }
    let section = model.morphism(a.clone(), model.tangent_obj(a), v)?;
    VectorField::new(model, a.clone(), section)
}

/// Both conditions on a map of split fields, reported separately: the square
/// `u ∘ f = Tf ∘ v` and `v ∘ f̄ = T f̄ ∘ v`.
pub fn split_vf_conditions(model: &SplitModel, f: &VFMorphism<SplitModel>) -> Report {
    let mut rep = Report::new();
    rep.record("split-vf/square", format!("{:?}", f.map), f.validate(model));
    let fbar = model.restriction(&f.map).expect("split maps have restrictions");
    let v = &f.source.section;
    rep.record(
        "split-vf/idempotent-commutes",
        format!("{:?}", f.map),
        same(model, model.compose(v, &fbar), model.compose(&model.tangent_mor(&fbar), v)),
    );
    rep
}

pub fn split_vf_morphism(
    model: &SplitModel,
    source: VectorField<SplitModel>,
    target: VectorField<SplitModel>,
    map: RationalMap,
) -> Result<VFMorphism<SplitModel>> {
    let m = model.morphism(source.base.clone(), target.base.clone(), map)?;
    let f = VFMorphism::unchecked(source, target, m);
    let rep = split_vf_conditions(model, &f);
    match rep.failures().first() {
        None => Ok(f),
        Some(r) => Err(Error::Invalid(format!(
            "{}: {}",
            r.diagram_id,
            r.witness.clone().unwrap_or_default()
        ))),
    }
}

/// Vector fields of the rational model, obtained from those of its splitting
/// by keeping the fields that are total in the rational model.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExtendedVf {
    pub split: SplitModel,
}

pub fn extended_vf(_model: &RationalModel) -> ExtendedVf {
    ExtendedVf { split: SplitModel::new() }
}

impl ExtendedVf {
    pub fn vf(&self) -> VfModel<SplitModel> {
        split_vf(&self.split)
    }

    /// `(ℚ^m, v)` with `v` total in the rational model.
    pub fn field(&self, m: usize, v: RationalMap) -> Result<VectorField<SplitModel>> {
        if let Some(w) = v.non_unit_witness() {
            return Err(Error::Domain(format!("vector field is not total: {w}")));
        }
        split_field(&self.split, &self.split.eta(m), v)
    }

    /// The unique factorization of a cone `(M, w)` with `U w = η M` through
    /// the extended construction.
    pub fn probe(&self, m: usize, w: &VectorField<SplitModel>) -> Result<VectorField<SplitModel>> {
        if w.base != self.split.eta(m) {
            return Err(Error::Mismatch(format!("cone does not commute: U w = {:?} but η M = ℚ^{m}", w.base)));
        }
        let k = self.field(m, w.section.map.clone())?;
        k.same_as(&self.split, w)
            .map_err(|e| Error::Invalid(format!("factorization does not reproduce the cone: {e}")))?;
        Ok(k)
    }

    /// The same for a morphism cone `(f, φ)` with `U φ = η f`.
    pub fn probe_morphism(&self, f: &RationalMap, phi: &VFMorphism<SplitModel>) -> Result<VFMorphism<SplitModel>> {
        let src = self.probe(f.source_dim(), &phi.source)?;
        let tgt = self.probe(f.target_dim(), &phi.target)?;
        if self.split.equals(&phi.map, &self.split.eta_mor(f)).is_err() {
            return Err(Error::Mismatch(format!("cone does not commute: U φ = {:?} but η f = {f:?}", phi.map)));
        }
        split_vf_morphism(&self.split, src, tgt, f.clone())
    }

    /// The pullback square, factorization through it, and closure of the
    /// extended fields under the vector-field operations.
    pub fn check(&self, fields: &[(usize, RationalMap)]) -> Report {
        let mut rep = Report::new();
        let sm = &self.split;
        let mut built = Vec::new();
        for (i, (m, v)) in fields.iter().enumerate() {
            let sid = format!("field#{i}");
            match self.field(*m, v.clone()) {
                Ok(k) => {
                    rep.record(
                        "extended/square",
                        sid.clone(),
                        if k.base == sm.eta(*m) { Ok(()) } else { Err(format!("U K = {:?}, η M = ℚ^{m}", k.base)) },
                    );
                    rep.record("extended/factor", sid, self.probe(*m, &k).map(|_| ()).map_err(|e| e.to_string()));
                    built.push(k);
                }
                Err(e) => rep.record("extended/field", sid, Err(e.to_string())),
            }
        }
        let total = |r: Result<VectorField<SplitModel>>| -> Verdict {
            let f = r.map_err(|e| e.to_string())?;
            if f.base.e.is_total() && f.section.map.non_unit_witness().is_none() {
                f.validate(sm)
            } else {
                Err(format!("{:?} is not total", f.section))
            }
        };
        for (i, a) in built.iter().enumerate() {
            let sid = format!("field#{i}");
            rep.record("extended/closure-zero", sid.clone(), total(Ok(zero_vf(sm, &a.base))));
            rep.record("extended/closure-neg", sid.clone(), total(neg_vf(sm, a)));
            for (j, b) in built.iter().enumerate().skip(i + 1) {
                if a.base != b.base {
                    continue;
                }
                let pid = format!("field#{i},field#{j}");
                rep.record("extended/closure-sum", pid.clone(), total(sum_vf(sm, a, b)));
                rep.record("extended/closure-bracket", pid, total(bracket(sm, a, b)));
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::tangent_core::{check_tangent_axioms, Samples};

    fn field_map(principal: (Poly, Poly)) -> RationalMap {
        RationalMap::new(1, vec![(Poly::var(1, 0), Poly::one(1)), principal], []).unwrap()
    }

    #[test]
    fn polynomial_field_admitted_reciprocal_rejected() {
        let ext = extended_vf(&RationalModel);
        assert!(ext.field(1, field_map((Poly::var(1, 0), Poly::one(1)))).is_ok());
        let err = ext.field(1, field_map((Poly::one(1), Poly::var(1, 0)))).unwrap_err();
        assert!(matches!(err, Error::Domain(ref w) if w.contains("denominator x")), "{err}");
    }

    #[test]
    fn reciprocal_is_a_field_where_x_is_invertible() {
        let sm = SplitModel::new();
        let x = Poly::var(1, 0);
        let a = SplitObject::new(1, Domain::from_conditions(1, [x.clone()]).unwrap()).unwrap();
        let v = field_map((Poly::one(1), x.clone()));
        let f = split_field(&sm, &a, v.clone()).unwrap();
        // On η(ℚ) the same section is not total.
        assert!(matches!(split_field(&sm, &sm.eta(1), v), Err(Error::Domain(_))));
        // The cone through the extension has no factorization.
        let ext = extended_vf(&RationalModel);
        assert!(ext.probe(1, &f).is_err());
    }

    #[test]
    fn restricted_identity_between_zero_fields() {
        let sm = SplitModel::new();
        let a = sm.eta(1);
        let z = zero_vf(&sm, &a);
        let e = Domain::from_conditions(1, [Poly::var(1, 0)]).unwrap();
        let f = split_vf_morphism(&sm, z.clone(), z, RationalMap::restricted_identity(&e)).unwrap();
        assert!(split_vf_conditions(&sm, &f).all_pass());
    }

    #[test]
    fn idempotent_splits() {
        let sm = SplitModel::new();
        let a = sm.eta(1);
        let e = Domain::from_conditions(1, [Poly::var(1, 0)]).unwrap();
        let em = sm.morphism(a.clone(), a.clone(), RationalMap::restricted_identity(&e)).unwrap();
        let (b, _, _) = split_idempotent(&sm, &a, &em).unwrap();
        assert_eq!(b.e, e);
        assert_eq!(sm.tangent_obj(&b).e.conditions(), &[Poly::var(2, 0)]);
    }

    #[test]
    fn split_tangent_axioms() {
        let sm = SplitModel::new();
        let x = Poly::var(1, 0);
        let a = SplitObject::new(1, Domain::from_conditions(1, [x.clone()]).unwrap()).unwrap();
        let inv = RationalMap::new(1, vec![(Poly::one(1), x)], []).unwrap();
        let f = sm.morphism(a.clone(), a.clone(), inv).unwrap();
        let rep = check_tangent_axioms(&sm, &Samples::new(vec![a, sm.eta(2)], vec![f])).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }
}

//! Algebraic structure of vector fields, checked on samples.

use super::{bracket, bracket_preimage, neg_vf, side_condition, sum_vf, vf_tangent, zero_vf, VFMorphism, VectorField};
use crate::error::Result;
use crate::report::Report;
use crate::tangent_core::{TangentModel, Verdict};

/// Three fields on one base.
pub struct FieldTriple<X: TangentModel> {
    pub x: VectorField<X>,
    pub y: VectorField<X>,
    pub w: VectorField<X>,
}

impl<X: TangentModel> Clone for FieldTriple<X> {
    fn clone(&self) -> Self {
        FieldTriple { x: self.x.clone(), y: self.y.clone(), w: self.w.clone() }
    }
}

/// `f : M → N` with fields `v₁, v₂` on `M` and `u₁, u₂` on `N`, where `f`
/// relates `v_i` to `u_i`.
pub struct FRelated<X: TangentModel> {
    pub map: X::Mor,
    pub v1: VectorField<X>,
    pub v2: VectorField<X>,
    pub u1: VectorField<X>,
    pub u2: VectorField<X>,
}

impl<X: TangentModel> Clone for FRelated<X> {
    fn clone(&self) -> Self {
        FRelated {
            map: self.map.clone(),
            v1: self.v1.clone(),
            v2: self.v2.clone(),
            u1: self.u1.clone(),
            u2: self.u2.clone(),
        }
    }
}

fn eq<X: TangentModel>(model: &X, a: Result<VectorField<X>>, b: Result<VectorField<X>>) -> Verdict {
    let a = a.map_err(|e| format!("left side: {e}"))?;
    let b = b.map_err(|e| format!("right side: {e}"))?;
    a.same_as(model, &b)
}

/// Commutative monoid, abelian group, and Lie algebra laws, compatibility of
/// `T^VF` with each operation, and preservation of relatedness by the bracket.
pub fn check_structure_theorems<X: TangentModel>(
    model: &X,
    triples: &[FieldTriple<X>],
    related: &[FRelated<X>],
) -> Report {
    let mut rep = Report::new();
    let has_neg = triples.first().map(|t| model.n(&t.x.base).is_some()).unwrap_or(false);
    for (i, t) in triples.iter().enumerate() {
        let sid = format!("triple#{i}");
        let (x, y, w) = (&t.x, &t.y, &t.w);
        let m = &x.base;
        let zero = zero_vf(model, m);
        let add = |a: &VectorField<X>, b: &VectorField<X>| sum_vf(model, a, b);
        let br = |a: &VectorField<X>, b: &VectorField<X>| bracket(model, a, b);

        rep.record("vf/sum-unit", sid.clone(), eq(model, add(&zero, x), Ok(x.clone())));
        rep.record(
            "vf/sum-assoc",
            sid.clone(),
            eq(model, add(&add(x, y).unwrap_or(zero.clone()), w), add(x, &add(y, w).unwrap_or(zero.clone()))),
        );
        rep.record("vf/sum-comm", sid.clone(), eq(model, add(x, y), add(y, x)));
        rep.record(
            "vf/sum-valid",
            sid.clone(),
            add(x, y).map_err(|e| e.to_string()).and_then(|s| s.validate(model)),
        );
        rep.record(
            "vf/tangent-zero",
            sid.clone(),
            eq(model, vf_tangent(model, &zero), Ok(zero_vf(model, &model.tangent_obj(m)))),
        );
        rep.record(
            "vf/tangent-sum",
            sid.clone(),
            eq(
                model,
                add(x, y).and_then(|s| vf_tangent(model, &s)),
                vf_tangent(model, x).and_then(|a| add(&a, &vf_tangent(model, y)?)),
            ),
        );
        if !has_neg {
            continue;
        }
        rep.record(
            "vf/neg-inverse",
            sid.clone(),
            eq(model, neg_vf(model, x).and_then(|n| add(x, &n)), Ok(zero.clone())),
        );
        rep.record(
            "vf/tangent-neg",
            sid.clone(),
            eq(
                model,
                neg_vf(model, x).and_then(|n| vf_tangent(model, &n)),
                vf_tangent(model, x).and_then(|a| neg_vf(model, &a)),
            ),
        );
        rep.record(
            "vf/bracket-side-condition",
            sid.clone(),
            bracket_preimage(model, x, y)
                .map_err(|e| e.to_string())
                .and_then(|h| side_condition(model, m, &h)),
        );
        rep.record(
            "vf/bracket-valid",
            sid.clone(),
            br(x, y).map_err(|e| e.to_string()).and_then(|b| b.validate(model)),
        );
        rep.record(
            "vf/bracket-left-additive",
            sid.clone(),
            eq(
                model,
                add(x, y).and_then(|s| br(&s, w)),
                br(x, w).and_then(|a| add(&a, &br(y, w)?)),
            ),
        );
        rep.record("vf/bracket-zero", sid.clone(), eq(model, br(&zero, x), Ok(zero.clone())));
        rep.record(
            "vf/bracket-antisymmetry",
            sid.clone(),
            eq(model, br(x, y).and_then(|a| add(&a, &br(y, x)?)), Ok(zero.clone())),
        );
        let jacobi = (|| -> Result<VectorField<X>> {
            let a = br(&br(x, y)?, w)?;
            let b = br(&br(w, x)?, y)?;
            let c = br(&br(y, w)?, x)?;
            add(&add(&a, &b)?, &c)
        })();
        rep.record("vf/jacobi", sid.clone(), eq(model, jacobi, Ok(zero.clone())));
        rep.record(
            "vf/tangent-bracket",
            sid,
            eq(
                model,
                br(x, y).and_then(|b| vf_tangent(model, &b)),
                vf_tangent(model, x).and_then(|a| br(&a, &vf_tangent(model, y)?)),
            ),
        );
    }
    for (i, r) in related.iter().enumerate() {
        let sid = format!("related#{i}");
        let premise = VFMorphism::unchecked(r.v1.clone(), r.u1.clone(), r.map.clone())
            .validate(model)
            .and_then(|_| VFMorphism::unchecked(r.v2.clone(), r.u2.clone(), r.map.clone()).validate(model));
        rep.record("vf/f-related-premise", sid.clone(), premise);
        let concl = (|| -> Result<Verdict> {
            let src = bracket(model, &r.v1, &r.v2)?;
            let tgt = bracket(model, &r.u1, &r.u2)?;
            Ok(VFMorphism::unchecked(src, tgt, r.map.clone()).validate(model))
        })();
        rep.record(
            "vf/f-related",
            sid,
            concl.unwrap_or_else(|e| Err(format!("construction failed: {e}"))),
        );
    }
    rep
}

//! The tangent-structure interface every model implements, the axiom
//! checker, and lax tangent morphisms with their 2-morphisms.

mod axioms;
mod morphism;

use std::fmt::Debug;

use crate::error::Result;

pub use axioms::check_tangent_axioms;
pub use morphism::{
    check_lax_tangent_morphism, check_two_morphism, compose_lax, hom_structure, hom_tangent,
    identity_morphism, p_bar, tangent_endo, z_bar, LaxTangentMorphism, MorphismKind,
    TangentTwoMorphism,
};

/// Outcome of an equality test: `Err` carries a human-readable witness.
pub type Verdict = std::result::Result<(), String>;

/// A category with a tangent structure, presented concretely.
///
/// `T_n M` is the `n`-fold pullback of `p` along itself with projections
/// `proj(m, n, k)` for `k` in `1..=n`. `tuple(m, depth, maps)` pairs maps
/// `X → T^depth(T M)` that agree after `T^depth p` into `X → T^depth(T_n M)`.
pub trait TangentModel: Clone + Send + Sync + 'static {
    type Obj: Clone + Debug + Send + Sync + 'static;
    type Mor: Clone + Debug + Send + Sync + 'static;

    fn name(&self) -> String;
    fn obj_eq(&self, a: &Self::Obj, b: &Self::Obj) -> bool;

    /// Rejects objects outside the model's domain.
    fn check_object(&self, _m: &Self::Obj) -> Result<()> {
        Ok(())
    }

    /// Rejects morphism values that are not morphisms of the model; for
    /// models whose morphisms carry their own well-formedness condition.
    fn check_morphism(&self, _f: &Self::Mor) -> Verdict {
        Ok(())
    }

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, m: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn equals(&self, f: &Self::Mor, g: &Self::Mor) -> Verdict;

    fn tangent_obj(&self, m: &Self::Obj) -> Self::Obj;
    fn tangent_mor(&self, f: &Self::Mor) -> Self::Mor;

    /// `p : TM → M`.
    fn p(&self, m: &Self::Obj) -> Self::Mor;
    /// `z : M → TM`.
    fn z(&self, m: &Self::Obj) -> Self::Mor;
    /// `s : T₂M → TM`.
    fn s(&self, m: &Self::Obj) -> Self::Mor;
    /// `l : TM → T²M`.
    fn l(&self, m: &Self::Obj) -> Self::Mor;
    /// `c : T²M → T²M`.
    fn c(&self, m: &Self::Obj) -> Self::Mor;
    /// `n : TM → TM`, when the structure has negatives.
    fn n(&self, m: &Self::Obj) -> Option<Self::Mor>;

    fn pullback_obj(&self, m: &Self::Obj, n: usize) -> Self::Obj;
    fn proj(&self, m: &Self::Obj, n: usize, k: usize) -> Self::Mor;
    fn tuple(&self, m: &Self::Obj, depth: usize, maps: &[Self::Mor]) -> Result<Self::Mor>;

    /// `{h} : X → TM` for `h : X → T²M` with `T p ∘ h = z ∘ p ∘ p_T ∘ h`,
    /// the unique map with `h = T s ∘ (z_T × l) ∘ ⟨p_T ∘ h, {h}⟩`.
    fn lift_extract(&self, m: &Self::Obj, h: &Self::Mor) -> Result<Self::Mor>;

    /// The restriction idempotent `f̄`, for restriction categories.
    fn restriction(&self, _f: &Self::Mor) -> Option<Self::Mor> {
        None
    }
}

/// `maps[0] ∘ maps[1] ∘ … ∘ maps[last]`.
pub fn compose_all<M: TangentModel>(model: &M, maps: &[&M::Mor]) -> Result<M::Mor> {
    let mut acc = (*maps.last().expect("nonempty composite")).clone();
    for g in maps.iter().rev().skip(1) {
        acc = model.compose(g, &acc)?;
    }
    Ok(acc)
}

pub fn tangent_pow_obj<M: TangentModel>(model: &M, m: &M::Obj, d: usize) -> M::Obj {
    let mut o = m.clone();
    for _ in 0..d {
        o = model.tangent_obj(&o);
    }
    o
}

pub fn tangent_pow_mor<M: TangentModel>(model: &M, f: &M::Mor, d: usize) -> M::Mor {
    let mut o = f.clone();
    for _ in 0..d {
        o = model.tangent_mor(&o);
    }
    o
}

/// Compares two fallible composites, folding construction errors into the witness.
pub fn same<M: TangentModel>(model: &M, lhs: Result<M::Mor>, rhs: Result<M::Mor>) -> Verdict {
    let lhs = lhs.map_err(|e| format!("left side: {e}"))?;
    let rhs = rhs.map_err(|e| format!("right side: {e}"))?;
    let (dl, dr) = (model.dom(&lhs), model.dom(&rhs));
    if !model.obj_eq(&dl, &dr) {
        return Err(format!("domains differ: {dl:?} versus {dr:?}"));
    }
    let (cl, cr) = (model.cod(&lhs), model.cod(&rhs));
    if !model.obj_eq(&cl, &cr) {
        return Err(format!("codomains differ: {cl:?} versus {cr:?}"));
    }
    model.equals(&lhs, &rhs)
}

/// Objects and morphisms to check a model on.
#[derive(Debug, Clone)]
pub struct Samples<M: TangentModel> {
    pub objects: Vec<M::Obj>,
    pub morphisms: Vec<M::Mor>,
}

impl<M: TangentModel> Samples<M> {
    pub fn new(objects: Vec<M::Obj>, morphisms: Vec<M::Mor>) -> Self {
        Samples { objects, morphisms }
    }

    /// Objects plus the domains and codomains of the morphisms, deduplicated.
    pub fn all_objects(&self, model: &M) -> Vec<M::Obj> {
        let mut out: Vec<M::Obj> = Vec::new();
        let candidates = self
            .objects
            .iter()
            .cloned()
            .chain(self.morphisms.iter().flat_map(|f| [model.dom(f), model.cod(f)]));
        for o in candidates {
            if !out.iter().any(|x| model.obj_eq(x, &o)) {
                out.push(o);
            }
        }
        out
    }

    /// Composable pairs `(f, g)` with `cod f = dom g`.
    pub fn composable_pairs(&self, model: &M) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, f) in self.morphisms.iter().enumerate() {
            for (j, g) in self.morphisms.iter().enumerate() {
                if model.obj_eq(&model.cod(f), &model.dom(g)) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

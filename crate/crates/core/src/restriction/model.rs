//! The tangent restriction category of rational maps.

use rand::Rng;

use super::{random_nonzero, Domain, RationalMap};
use crate::error::{Error, Result};
use crate::model_poly::{random_poly, PolyMap, PolyModel};
use crate::poly::Poly;
use crate::report::Report;
use crate::tangent_core::{TangentModel, Verdict};

/// Objects `ℚ^m`; morphisms partial rational maps. Structure maps are the
/// total polynomial ones.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalModel;

impl RationalModel {
    pub fn new() -> Self {
        RationalModel
    }

    fn total(f: PolyMap) -> RationalMap {
        RationalMap::from_poly(&f)
    }
}

fn poly() -> PolyModel {
    PolyModel::new()
}

impl TangentModel for RationalModel {
    type Obj = usize;
    type Mor = RationalMap;

    fn name(&self) -> String {
        "rational".into()
    }

    fn obj_eq(&self, a: &usize, b: &usize) -> bool {
        a == b
    }

    fn dom(&self, f: &RationalMap) -> usize {
        f.source_dim()
    }

    fn cod(&self, f: &RationalMap) -> usize {
        f.target_dim()
    }

    fn identity(&self, m: &usize) -> RationalMap {
        RationalMap::identity(*m)
    }

    fn compose(&self, g: &RationalMap, f: &RationalMap) -> Result<RationalMap> {
        RationalMap::compose(g, f)
    }

    fn equals(&self, f: &RationalMap, g: &RationalMap) -> Verdict {
        match f.difference(g) {
            None => Ok(()),
            Some(w) => Err(w),
        }
    }

    fn tangent_obj(&self, m: &usize) -> usize {
        2 * m
    }

    fn tangent_mor(&self, f: &RationalMap) -> RationalMap {
        f.tangent_map()
    }

    fn p(&self, m: &usize) -> RationalMap {
        Self::total(poly().p(m))
    }

    fn z(&self, m: &usize) -> RationalMap {
        Self::total(poly().z(m))
    }

    fn s(&self, m: &usize) -> RationalMap {
        Self::total(poly().s(m))
    }

    fn l(&self, m: &usize) -> RationalMap {
        Self::total(poly().l(m))
    }

    fn c(&self, m: &usize) -> RationalMap {
        Self::total(poly().c(m))
    }

    fn n(&self, m: &usize) -> Option<RationalMap> {
        poly().n(m).map(Self::total)
    }

    fn pullback_obj(&self, m: &usize, n: usize) -> usize {
        (n + 1) * m
    }

    fn proj(&self, m: &usize, n: usize, k: usize) -> RationalMap {
        Self::total(poly().proj(m, n, k))
    }

    /// Blockwise as for polynomials; defined where every leg is.
    fn tuple(&self, m: &usize, depth: usize, maps: &[RationalMap]) -> Result<RationalMap> {
        let m = *m;
        let first = maps.first().ok_or_else(|| Error::Precondition("empty tuple".into()))?;
        let nb = 1usize << depth;
        let src = first.source_dim();
        let mut domain = Domain::total(src);
        for f in maps {
            if f.target_dim() != nb * 2 * m || f.source_dim() != src {
                return Err(Error::Mismatch(format!(
                    "tupled map {f:?} is not a map into T^{depth}(T ℚ^{m}) from ℚ^{src}"
                )));
            }
            domain = domain.union(f.domain())?;
        }
        let mut fractions = Vec::with_capacity(nb * (maps.len() + 1) * m);
        for b in 0..nb {
            let base = first.block(b * 2 * m, m);
            for (k, f) in maps.iter().enumerate().skip(1) {
                if !f.block(b * 2 * m, m).same_values(&base) {
                    return Err(Error::Precondition(format!(
                        "maps 1 and {} disagree over the base in block {b}",
                        k + 1
                    )));
                }
            }
            push_block(&mut fractions, &base);
            for f in maps {
                push_block(&mut fractions, &f.block(b * 2 * m + m, m));
            }
        }
        RationalMap::new(src, fractions, domain.conditions().iter().cloned())
    }

    fn lift_extract(&self, m: &usize, h: &RationalMap) -> Result<RationalMap> {
        let m = *m;
        if h.target_dim() != 4 * m {
            return Err(Error::Mismatch(format!("{h:?} is not a map into T²ℚ^{m}")));
        }
        for j in 0..m {
            let c = &h.numerators()[2 * m + j];
            if !c.is_zero() {
                return Err(Error::Precondition(format!(
                    "side condition T p ∘ h = z ∘ p ∘ p_T ∘ h fails: ε₂ block coordinate {j} is {c}"
                )));
            }
        }
        let mut fractions = Vec::new();
        push_block(&mut fractions, &h.block(0, m));
        push_block(&mut fractions, &h.block(3 * m, m));
        RationalMap::new(h.source_dim(), fractions, h.domain().conditions().iter().cloned())
    }

    fn restriction(&self, f: &RationalMap) -> Option<RationalMap> {
        Some(f.restriction())
    }
}

fn push_block(out: &mut Vec<(Poly, Poly)>, f: &RationalMap) {
    out.extend(f.numerators().iter().cloned().zip(f.denominators().iter().cloned()));
}

/// Components with numerators and (half the time) denominators of degree at
/// most `max_degree`; occasionally an extra domain condition.
pub fn random_rational_map<R: Rng>(rng: &mut R, m: usize, n: usize, max_degree: u32) -> RationalMap {
    loop {
        let fractions = (0..n)
            .map(|_| {
                let num = random_poly(rng, m, max_degree, 3);
                let den = if rng.gen_bool(0.5) { Poly::one(m) } else { random_nonzero(rng, m, max_degree) };
                (num, den)
            })
            .collect();
        let extra: Vec<Poly> = if rng.gen_bool(0.25) { vec![random_nonzero(rng, m, 1)] } else { vec![] };
        if let Ok(f) = RationalMap::new(m, fractions, extra) {
            return f;
        }
    }
}

fn law(rep: &mut Report, id: &str, sample: &str, lhs: Result<RationalMap>, rhs: Result<RationalMap>) {
    let outcome = match (lhs, rhs) {
        (Ok(a), Ok(b)) => a.difference(&b).map_or(Ok(()), Err),
        (Err(e), _) => Err(format!("left side: {e}")),
        (_, Err(e)) => Err(format!("right side: {e}")),
    };
    rep.record(id, sample, outcome);
}

/// R1–R4 and compatibility of `T` with restriction, for maps `f, g : A ⇀ B`
/// and `h : B ⇀ C` per sample.
pub fn check_restriction_laws(samples: &[(RationalMap, RationalMap, RationalMap)]) -> Report {
    let mut rep = Report::new();
    let c = RationalMap::compose;
    for (i, (f, g, h)) in samples.iter().enumerate() {
        let sid = format!("sample#{i}");
        let (fb, gb) = (f.restriction(), g.restriction());
        law(&mut rep, "restriction/R1", &sid, c(f, &fb), Ok(f.clone()));
        law(&mut rep, "restriction/R2", &sid, c(&fb, &gb), c(&gb, &fb));
        law(
            &mut rep,
            "restriction/R3",
            &sid,
            c(g, &fb).map(|x| x.restriction()),
            c(&gb, &fb),
        );
        law(
            &mut rep,
            "restriction/R4",
            &sid,
            c(&h.restriction(), f),
            c(h, f).and_then(|hf| c(f, &hf.restriction())),
        );
        law(
            &mut rep,
            "restriction/tangent-idempotent",
            &sid,
            Ok(fb.tangent_map()),
            Ok(f.tangent_map().restriction()),
        );
        law(
            &mut rep,
            "restriction/tangent-functor",
            &sid,
            c(h, f).map(|hf| hf.tangent_map()),
            c(&h.tangent_map(), &f.tangent_map()),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangent_core::{check_tangent_axioms, Samples};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn triples(seed: u64, n: usize) -> Vec<(RationalMap, RationalMap, RationalMap)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let (a, b, c) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2));
                (
                    random_rational_map(&mut rng, a, b, 2),
                    random_rational_map(&mut rng, a, b, 2),
                    random_rational_map(&mut rng, b, c, 2),
                )
            })
            .collect()
    }

    #[test]
    fn restriction_laws_hold() {
        let rep = check_restriction_laws(&triples(7, 8));
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn tangent_axioms_on_rational_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let maps = (0..4).map(|_| random_rational_map(&mut rng, 1, 1, 2)).collect();
        let rep = check_tangent_axioms(&RationalModel, &Samples::new(vec![1, 2], maps)).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }
}

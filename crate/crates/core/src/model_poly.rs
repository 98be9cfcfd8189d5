//! Polynomial maps `ℚ^m → ℚ^n` as a tangent category.
//!
//! `TM = ℚ^{2m}` with coordinates `(x, v)`. `T²M` has coordinates
//! `(x, a, b, q)` encoding `x + ε₁a + ε₂b + ε₁ε₂q`, where `ε₁` is the inner
//! direction: `T(TM)` is the point `(x, a)` of `TM` with tangent `(b, q)`.
//! In general `T^d(Y)` is `2^d` blocks of the coordinates of `Y`, block
//! index bit `j` recording the direction `ε_{j+1}`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{q, Poly, TermJson, Q};
use crate::tangent_core::{TangentModel, Verdict};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMap {
    source_dim: usize,
    target_dim: usize,
    components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(source_dim: usize, components: Vec<Poly>) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            if c.nvars() != source_dim {
                return Err(Error::Invalid(format!(
                    "component {i} has {} variables, expected {source_dim}",
                    c.nvars()
                )));
            }
        }
        Ok(PolyMap {
            source_dim,
            target_dim: components.len(),
            components,
        })
    }

    pub fn identity(m: usize) -> Self {
        PolyMap::coordinate(m, &(0..m).map(Some).collect::<Vec<_>>())
    }

    /// The linear map whose `i`-th output is variable `picks[i]`, or zero.
    pub fn coordinate(m: usize, picks: &[Option<usize>]) -> Self {
        let components = picks
            .iter()
            .map(|p| match p {
                Some(i) => Poly::var(m, *i),
                None => Poly::zero(m),
            })
            .collect();
        PolyMap::new(m, components).expect("coordinate map")
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Poly::total_degree).max().unwrap_or(0)
    }

    /// `g ∘ f`.
    pub fn compose(g: &PolyMap, f: &PolyMap) -> Result<PolyMap> {
        if f.target_dim != g.source_dim {
            return Err(Error::Mismatch(format!(
                "cannot compose ℚ^{} → ℚ^{} after ℚ^{} → ℚ^{}",
                g.source_dim, g.target_dim, f.source_dim, f.target_dim
            )));
        }
        let components = g
            .components
            .iter()
            .map(|c| c.substitute(&f.components, f.source_dim))
            .collect();
        PolyMap::new(f.source_dim, components)
    }

    /// `(x, v) ↦ (f(x), Jf(x)·v)`.
    pub fn tangent_map(&self) -> PolyMap {
        let m = self.source_dim;
        let lifted: Vec<Poly> = self.components.iter().map(|c| c.embed(2 * m, 0)).collect();
        let mut comps = lifted.clone();
        for c in &lifted {
            let mut d = Poly::zero(2 * m);
            for j in 0..m {
                let dj = c.derivative(j);
                if !dj.is_zero() {
                    d = &d + &(&dj * &Poly::var(2 * m, m + j));
                }
            }
            comps.push(d);
        }
        PolyMap::new(2 * m, comps).expect("tangent map")
    }

    /// `⟨f, g⟩` for maps with a common source.
    pub fn pair(f: &PolyMap, g: &PolyMap) -> Result<PolyMap> {
        if f.source_dim != g.source_dim {
            return Err(Error::Mismatch("paired maps must share a source".into()));
        }
        let mut comps = f.components.clone();
        comps.extend(g.components.iter().cloned());
        PolyMap::new(f.source_dim, comps)
    }

    /// `f × g` on `ℚ^{m+m'}`.
    pub fn product(f: &PolyMap, g: &PolyMap) -> PolyMap {
        let m = f.source_dim + g.source_dim;
        let mut comps: Vec<Poly> = f.components.iter().map(|c| c.embed(m, 0)).collect();
        comps.extend(g.components.iter().map(|c| c.embed(m, f.source_dim)));
        PolyMap::new(m, comps).expect("product map")
    }

    pub fn eval(&self, point: &[Q]) -> Vec<Q> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }

    /// Components `start..start+len` as a map.
    pub fn block(&self, start: usize, len: usize) -> PolyMap {
        PolyMap::new(self.source_dim, self.components[start..start + len].to_vec()).expect("block")
    }

    pub fn difference(&self, other: &PolyMap) -> Option<String> {
        if self.source_dim != other.source_dim || self.target_dim != other.target_dim {
            return Some(format!(
                "ℚ^{} → ℚ^{} versus ℚ^{} → ℚ^{}",
                self.source_dim, self.target_dim, other.source_dim, other.target_dim
            ));
        }
        for (i, (a, b)) in self.components.iter().zip(&other.components).enumerate() {
            if a != b {
                return Some(format!("component {i}: {a} versus {b} (difference {})", a - b));
            }
        }
        None
    }

    pub fn to_json(&self) -> PolyMapJson {
        PolyMapJson {
            source_dim: self.source_dim,
            target_dim: self.target_dim,
            components: self.components.iter().map(Poly::to_terms_json).collect(),
        }
    }

    pub fn from_json(j: &PolyMapJson) -> Result<PolyMap> {
        if j.components.len() != j.target_dim {
            return Err(Error::Parse(format!(
                "target_dim {} but {} components",
                j.target_dim,
                j.components.len()
            )));
        }
        let comps = j
            .components
            .iter()
            .map(|c| Poly::from_terms_json(j.source_dim, c))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(j.source_dim, comps).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMap[{}→{}]{}", self.source_dim, self.target_dim, self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMapJson {
    pub source_dim: usize,
    pub target_dim: usize,
    pub components: Vec<Vec<TermJson>>,
}

impl Serialize for PolyMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyMapJson::deserialize(d)?;
        PolyMap::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Deliberate corruptions of the structure maps, used to show the checker
/// catches them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyMutation {
    /// `c ↦ id`.
    CIdentity,
    /// `l ↦ z_T`.
    LZeroSection,
    /// `s(x, v, w) ↦ (x, v)`.
    SDropSecond,
    /// `n ↦ id`.
    NIdentity,
    /// `z(x) ↦ (x, x)`.
    ZDiagonal,
}

impl PolyMutation {
    pub const ALL: [PolyMutation; 5] = [
        PolyMutation::CIdentity,
        PolyMutation::LZeroSection,
        PolyMutation::SDropSecond,
        PolyMutation::NIdentity,
        PolyMutation::ZDiagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolyMutation::CIdentity => "c-identity",
            PolyMutation::LZeroSection => "l-zero-section",
            PolyMutation::SDropSecond => "s-drop-second",
            PolyMutation::NIdentity => "n-identity",
            PolyMutation::ZDiagonal => "z-diagonal",
        }
    }

    pub fn parse(name: &str) -> Option<PolyMutation> {
        PolyMutation::ALL.into_iter().find(|m| m.name() == name)
    }
}

/// The exact polynomial model; objects are dimensions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PolyModel {
    pub mutation: Option<PolyMutation>,
}

impl PolyModel {
    pub fn new() -> Self {
        PolyModel { mutation: None }
    }

    pub fn mutated(m: PolyMutation) -> Self {
        PolyModel { mutation: Some(m) }
    }

    /// `T²`-level maps read off block coordinates: `picks[i] = (block, j)`
    /// selects coordinate `j` of block `block` of an `m`-dimensional object.
    fn blocks(m: usize, nblocks_in: usize, picks: &[Option<(usize, usize)>]) -> PolyMap {
        let sel: Vec<Option<usize>> = picks.iter().map(|p| p.map(|(b, j)| b * m + j)).collect();
        PolyMap::coordinate(nblocks_in * m, &sel)
    }

    fn block_map(m: usize, nblocks_in: usize, out_blocks: &[Option<usize>]) -> PolyMap {
        let mut picks = Vec::new();
        for ob in out_blocks {
            for j in 0..m {
                picks.push(ob.map(|b| (b, j)));
            }
        }
        Self::blocks(m, nblocks_in, &picks)
    }
}

impl TangentModel for PolyModel {
    type Obj = usize;
    type Mor = PolyMap;

    fn name(&self) -> String {
        match self.mutation {
            None => "poly".into(),
            Some(m) => format!("poly[{}]", m.name()),
        }
    }

    fn obj_eq(&self, a: &usize, b: &usize) -> bool {
        a == b
    }

    fn dom(&self, f: &PolyMap) -> usize {
        f.source_dim
    }

    fn cod(&self, f: &PolyMap) -> usize {
        f.target_dim
    }

    fn identity(&self, m: &usize) -> PolyMap {
        PolyMap::identity(*m)
    }

    fn compose(&self, g: &PolyMap, f: &PolyMap) -> Result<PolyMap> {
        PolyMap::compose(g, f)
    }

    fn equals(&self, f: &PolyMap, g: &PolyMap) -> Verdict {
        match f.difference(g) {
            None => Ok(()),
            Some(w) => Err(w),
        }
    }

    fn tangent_obj(&self, m: &usize) -> usize {
        2 * m
    }

    fn tangent_mor(&self, f: &PolyMap) -> PolyMap {
        f.tangent_map()
    }

    fn p(&self, m: &usize) -> PolyMap {
        Self::block_map(*m, 2, &[Some(0)])
    }

    fn z(&self, m: &usize) -> PolyMap {
        match self.mutation {
            Some(PolyMutation::ZDiagonal) => Self::block_map(*m, 1, &[Some(0), Some(0)]),
            _ => Self::block_map(*m, 1, &[Some(0), None]),
        }
    }

    fn s(&self, m: &usize) -> PolyMap {
        let m = *m;
        let mut comps: Vec<Poly> = (0..m).map(|j| Poly::var(3 * m, j)).collect();
        for j in 0..m {
            let v = Poly::var(3 * m, m + j);
            comps.push(match self.mutation {
                Some(PolyMutation::SDropSecond) => v,
                _ => &v + &Poly::var(3 * m, 2 * m + j),
            });
        }
        PolyMap::new(3 * m, comps).expect("sum map")
    }

    fn l(&self, m: &usize) -> PolyMap {
        match self.mutation {
            Some(PolyMutation::LZeroSection) => Self::block_map(*m, 2, &[Some(0), Some(1), None, None]),
            _ => Self::block_map(*m, 2, &[Some(0), None, None, Some(1)]),
        }
    }

    fn c(&self, m: &usize) -> PolyMap {
        match self.mutation {
            Some(PolyMutation::CIdentity) => PolyMap::identity(4 * m),
            _ => Self::block_map(*m, 4, &[Some(0), Some(2), Some(1), Some(3)]),
        }
    }

    fn n(&self, m: &usize) -> Option<PolyMap> {
        let m = *m;
        let mut comps: Vec<Poly> = (0..m).map(|j| Poly::var(2 * m, j)).collect();
        for j in 0..m {
            let v = Poly::var(2 * m, m + j);
            comps.push(match self.mutation {
                Some(PolyMutation::NIdentity) => v,
                _ => -&v,
            });
        }
        Some(PolyMap::new(2 * m, comps).expect("negation map"))
    }

    fn pullback_obj(&self, m: &usize, n: usize) -> usize {
        (n + 1) * m
    }

    fn proj(&self, m: &usize, n: usize, k: usize) -> PolyMap {
        assert!(k >= 1 && k <= n, "projection {k} of T_{n}");
        Self::block_map(*m, n + 1, &[Some(0), Some(k)])
    }

    fn tuple(&self, m: &usize, depth: usize, maps: &[PolyMap]) -> Result<PolyMap> {
        let m = *m;
        let first = maps.first().ok_or_else(|| Error::Precondition("empty tuple".into()))?;
        let nb = 1usize << depth;
        for f in maps {
            if f.target_dim != nb * 2 * m || f.source_dim != first.source_dim {
                return Err(Error::Mismatch(format!(
                    "tupled map {f:?} is not a map into T^{depth}(T ℚ^{m}) from ℚ^{}",
                    first.source_dim
                )));
            }
        }
        let mut comps = Vec::with_capacity(nb * (maps.len() + 1) * m);
        for b in 0..nb {
            let base = &first.components[b * 2 * m..b * 2 * m + m];
            for (k, f) in maps.iter().enumerate().skip(1) {
                let other = &f.components[b * 2 * m..b * 2 * m + m];
                if other != base {
                    return Err(Error::Precondition(format!(
                        "maps 1 and {} disagree over the base in block {b}: {} versus {}",
                        k + 1,
                        base.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "),
                        other.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
                    )));
                }
            }
            comps.extend(base.iter().cloned());
            for f in maps {
                comps.extend(f.components[b * 2 * m + m..(b + 1) * 2 * m].iter().cloned());
            }
        }
        PolyMap::new(first.source_dim, comps)
    }

    fn lift_extract(&self, m: &usize, h: &PolyMap) -> Result<PolyMap> {
        lift_solve(*m, h)
    }
}

/// `{h}` for `h : ℚ^k → T²ℚ^m` with vanishing `ε₂` block: `(x, q)`.
pub fn lift_solve(m: usize, h: &PolyMap) -> Result<PolyMap> {
    if h.target_dim != 4 * m {
        return Err(Error::Mismatch(format!("{h:?} is not a map into T²ℚ^{m}")));
    }
    for (j, c) in h.components[2 * m..3 * m].iter().enumerate() {
        if !c.is_zero() {
            return Err(Error::Precondition(format!(
                "side condition T p ∘ h = z ∘ p ∘ p_T ∘ h fails: ε₂ block coordinate {j} is {c}"
            )));
        }
    }
    let mut comps = h.components[..m].to_vec();
    comps.extend(h.components[3 * m..].iter().cloned());
    PolyMap::new(h.source_dim, comps)
}

/// A random polynomial with coefficients in `{−3..3}/{1..3}`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, max_terms: usize) -> Poly {
    let nterms = rng.gen_range(1..=max_terms.max(1));
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let deg = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; nvars];
        if nvars > 0 {
            for _ in 0..deg {
                e[rng.gen_range(0..nvars)] += 1;
            }
        }
        let num = rng.gen_range(-3i64..=3);
        let den = rng.gen_range(1i64..=3);
        terms.push((e, q(num) / q(den)));
    }
    Poly::from_terms(nvars, terms).expect("consistent variable count")
}

pub fn random_poly_map<R: Rng>(rng: &mut R, m: usize, n: usize, max_degree: u32) -> PolyMap {
    let comps = (0..n).map(|_| random_poly(rng, m, max_degree, 4)).collect();
    PolyMap::new(m, comps).expect("random map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangent_core::{check_tangent_axioms, Samples};

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn tangent_of_square() {
        let f = PolyMap::new(1, vec![&x(1, 0) * &x(1, 0)]).unwrap();
        let tf = f.tangent_map();
        let expect = PolyMap::new(2, vec![&x(2, 0) * &x(2, 0), (&x(2, 0) * &x(2, 1)).scale(&q(2))]).unwrap();
        assert_eq!(tf, expect);
    }

    #[test]
    fn tangent_of_product() {
        let f = PolyMap::new(2, vec![&x(2, 0) * &x(2, 1)]).unwrap();
        let tf = f.tangent_map();
        let (xx, y, u, v) = (x(4, 0), x(4, 1), x(4, 2), x(4, 3));
        let expect = PolyMap::new(4, vec![&xx * &y, &(&y * &u) + &(&xx * &v)]).unwrap();
        assert_eq!(tf, expect);
        assert_eq!(PolyMap::identity(3).tangent_map(), PolyMap::identity(6));
    }

    #[test]
    fn axioms_on_square() {
        let f = PolyMap::new(1, vec![&x(1, 0) * &x(1, 0)]).unwrap();
        let rep = check_tangent_axioms(&PolyModel::new(), &Samples::new(vec![1, 2], vec![f])).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn c_identity_breaks_exchange() {
        let f = PolyMap::new(1, vec![&x(1, 0) * &x(1, 0)]).unwrap();
        let model = PolyModel::mutated(PolyMutation::CIdentity);
        let rep = check_tangent_axioms(&model, &Samples::new(vec![1], vec![f])).unwrap();
        assert!(rep.failed("tangent/lc-exchange"));
    }

    #[test]
    fn lift_solve_cases() {
        let g = PolyMap::new(1, vec![x(1, 0), &x(1, 0) * &x(1, 0)]).unwrap();
        let model = PolyModel::new();
        let h = PolyMap::compose(&model.l(&1), &g).unwrap();
        assert_eq!(lift_solve(1, &h).unwrap(), g);
        let bad = PolyMap::new(1, vec![x(1, 0), Poly::zero(1), x(1, 0), Poly::zero(1)]).unwrap();
        let err = lift_solve(1, &bad).unwrap_err();
        assert!(err.to_string().contains("x0"));
    }

    #[test]
    fn json_round_trip() {
        let f = PolyMap::new(2, vec![&x(2, 0).scale(&(q(2) / q(3))) * &x(2, 1), Poly::one(2)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: PolyMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}

//! Finite categories, functors and natural transformations between them,
//! exhaustive enumeration, and the trivial tangent structure.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tangent_core::{TangentModel, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
}

/// A category with finitely many objects and morphisms; `compose[i][j]` is
/// the index of `m_i ∘ m_j` when `src(m_i) = dst(m_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FiniteCategoryJson", into = "FiniteCategoryJson")]
pub struct FiniteCategory {
    objects: usize,
    morphisms: Vec<Arrow>,
    compose: Vec<Vec<Option<usize>>>,
    identities: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FiniteCategoryJson {
    objects: usize,
    morphisms: Vec<Arrow>,
    compose: Vec<Vec<Option<usize>>>,
    identities: Vec<usize>,
}

impl TryFrom<FiniteCategoryJson> for FiniteCategory {
    type Error = Error;
    fn try_from(j: FiniteCategoryJson) -> Result<Self> {
        FiniteCategory::new(j.objects, j.morphisms, j.compose, j.identities)
    }
}

impl From<FiniteCategory> for FiniteCategoryJson {
    fn from(c: FiniteCategory) -> Self {
        FiniteCategoryJson {
            objects: c.objects,
            morphisms: c.morphisms,
            compose: c.compose,
            identities: c.identities,
        }
    }
}

impl FiniteCategory {
    pub fn new(
        objects: usize,
        morphisms: Vec<Arrow>,
        compose: Vec<Vec<Option<usize>>>,
        identities: Vec<usize>,
    ) -> Result<Self> {
        let k = morphisms.len();
        let bad = |msg: String| Err(Error::Invalid(msg));
        if identities.len() != objects {
            return bad(format!("{} identities for {objects} objects", identities.len()));
        }
        for (i, a) in morphisms.iter().enumerate() {
            if a.src >= objects || a.dst >= objects {
                return bad(format!("morphism {i} has endpoint outside {objects} objects"));
            }
        }
        if compose.len() != k || compose.iter().any(|r| r.len() != k) {
            return bad(format!("composition table must be {k}×{k}"));
        }
        for i in 0..k {
            for j in 0..k {
                let composable = morphisms[i].src == morphisms[j].dst;
                match compose[i][j] {
                    Some(c) if !composable => {
                        return bad(format!("m{i} ∘ m{j} = m{c} given, but they are not composable"))
                    }
                    None if composable => return bad(format!("m{i} ∘ m{j} missing")),
                    Some(c) if c >= k => return bad(format!("m{i} ∘ m{j} = m{c} out of range")),
                    Some(c) => {
                        let want = Arrow { src: morphisms[j].src, dst: morphisms[i].dst };
                        if morphisms[c] != want {
                            return bad(format!("m{i} ∘ m{j} = m{c} has the wrong endpoints"));
                        }
                    }
                    None => {}
                }
            }
        }
        for (o, &e) in identities.iter().enumerate() {
            if e >= k || morphisms[e] != (Arrow { src: o, dst: o }) {
                return bad(format!("identity of object {o} is not an endomorphism of it"));
            }
            for j in 0..k {
                if morphisms[j].dst == o && compose[e][j] != Some(j) {
                    return bad(format!("id{o} ∘ m{j} ≠ m{j}"));
                }
                if morphisms[j].src == o && compose[j][e] != Some(j) {
                    return bad(format!("m{j} ∘ id{o} ≠ m{j}"));
                }
            }
        }
        for h in 0..k {
            for g in 0..k {
                let Some(hg) = compose[h][g] else { continue };
                for f in 0..k {
                    let Some(gf) = compose[g][f] else { continue };
                    if compose[hg][f] != compose[h][gf] {
                        return bad(format!("(m{h} ∘ m{g}) ∘ m{f} ≠ m{h} ∘ (m{g} ∘ m{f})"));
                    }
                }
            }
        }
        Ok(FiniteCategory { objects, morphisms, compose, identities })
    }

    /// Builds the table from a partial composition function on the listed
    /// non-identity arrows; identities are added in front.
    pub fn generate(
        objects: usize,
        arrows: &[Arrow],
        comp: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let mut morphisms: Vec<Arrow> = (0..objects).map(|o| Arrow { src: o, dst: o }).collect();
        morphisms.extend_from_slice(arrows);
        let k = morphisms.len();
        let mut compose = vec![vec![None; k]; k];
        for i in 0..k {
            for j in 0..k {
                if morphisms[i].src != morphisms[j].dst {
                    continue;
                }
                compose[i][j] = if i < objects {
                    Some(j)
                } else if j < objects {
                    Some(i)
                } else {
                    comp(i - objects, j - objects).map(|c| c + objects)
                };
            }
        }
        FiniteCategory::new(objects, morphisms, compose, (0..objects).collect())
    }

    pub fn terminal() -> Self {
        FiniteCategory::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        FiniteCategory::generate(n, &[], |_, _| None).expect("discrete category")
    }

    /// `0 → 1`.
    pub fn arrow() -> Self {
        FiniteCategory::chain(2)
    }

    /// The poset `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                arrows.push(Arrow { src: a, dst: b });
            }
        }
        let idx = |a: usize, b: usize| arrows.iter().position(|x| *x == Arrow { src: a, dst: b });
        FiniteCategory::generate(n, &arrows, |i, j| {
            let (g, f) = (arrows[i], arrows[j]);
            idx(f.src, g.dst)
        })
        .expect("chain category")
    }

    /// Two parallel arrows `0 ⇉ 1`.
    pub fn parallel_pair() -> Self {
        let arrows = [Arrow { src: 0, dst: 1 }, Arrow { src: 0, dst: 1 }];
        FiniteCategory::generate(2, &arrows, |_, _| None).expect("parallel pair")
    }

    /// One object with a non-identity idempotent `e`.
    pub fn idempotent() -> Self {
        FiniteCategory::generate(1, &[Arrow { src: 0, dst: 0 }], |_, _| Some(0)).expect("idempotent monoid")
    }

    /// Two objects joined by an isomorphism.
    pub fn walking_iso() -> Self {
        let arrows = [Arrow { src: 0, dst: 1 }, Arrow { src: 1, dst: 0 }];
        FiniteCategory::new(
            2,
            vec![
                Arrow { src: 0, dst: 0 },
                Arrow { src: 1, dst: 1 },
                arrows[0],
                arrows[1],
            ],
            vec![
                vec![Some(0), None, None, Some(3)],
                vec![None, Some(1), Some(2), None],
                vec![Some(2), None, None, Some(1)],
                vec![None, Some(3), Some(0), None],
            ],
            vec![0, 1],
        )
        .expect("walking isomorphism")
    }

    /// The categories universal properties are probed against.
    pub fn probes() -> Vec<(&'static str, FiniteCategory)> {
        vec![
            ("terminal", FiniteCategory::terminal()),
            ("discrete2", FiniteCategory::discrete(2)),
            ("arrow", FiniteCategory::arrow()),
            ("parallel-pair", FiniteCategory::parallel_pair()),
            ("chain3", FiniteCategory::chain(3)),
            ("idempotent", FiniteCategory::idempotent()),
        ]
    }

    pub fn num_objects(&self) -> usize {
        self.objects
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn arrow_of(&self, f: usize) -> Arrow {
        self.morphisms[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.morphisms[f].dst
    }

    pub fn id(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `g ∘ f`, or `None` when not composable.
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f] == Arrow { src: a, dst: b })
            .collect()
    }

    pub fn is_iso(&self, f: usize) -> bool {
        let a = self.morphisms[f];
        self.hom(a.dst, a.src).into_iter().any(|g| {
            self.compose[g][f] == Some(self.identities[a.src]) && self.compose[f][g] == Some(self.identities[a.dst])
        })
    }

    /// Composable pairs `(g, f)` with `g ∘ f` defined.
    pub fn composable(&self) -> Vec<(usize, usize)> {
        let k = self.morphisms.len();
        (0..k)
            .flat_map(|g| (0..k).map(move |f| (g, f)))
            .filter(|&(g, f)| self.compose[g][f].is_some())
            .collect()
    }

    /// Whether the two categories are equal up to relabelling; exhaustive,
    /// so only for small categories.
    pub fn isomorphic(&self, other: &FiniteCategory) -> bool {
        if self.objects != other.objects || self.morphisms.len() != other.morphisms.len() {
            return false;
        }
        let b = Bounds { objects: usize::MAX, morphisms: usize::MAX, probe: usize::MAX };
        let Ok(fs) = enumerate_functors(self, other, &b) else { return false };
        fs.iter().any(|f| f.is_bijective(self, other))
    }
}

/// Size limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub objects: usize,
    pub morphisms: usize,
    pub probe: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { objects: 5, morphisms: 12, probe: 3 }
    }
}

impl Bounds {
    /// No limit; for categories built internally from bounded inputs.
    pub fn unbounded() -> Bounds {
        Bounds { objects: usize::MAX, morphisms: usize::MAX, probe: usize::MAX }
    }

    /// Parses `objects=5,morphisms=12,probe=3`; missing keys keep defaults.
    pub fn parse(s: &str) -> Result<Bounds> {
        let mut b = Bounds::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bound `{part}` is not key=value")))?;
            let v: usize = v.trim().parse().map_err(|_| Error::Parse(format!("bound `{part}` is not a number")))?;
            match k.trim() {
                "objects" => b.objects = v,
                "morphisms" => b.morphisms = v,
                "probe" => b.probe = v,
                other => return Err(Error::Parse(format!("unknown bound `{other}`"))),
            }
        }
        Ok(b)
    }

    /// Defaults overridden by `TANGENTAD_BOUNDS` when set.
    pub fn from_env() -> Result<Bounds> {
        match std::env::var("TANGENTAD_BOUNDS") {
            Ok(s) => Bounds::parse(&s),
            Err(_) => Ok(Bounds::default()),
        }
    }

    pub fn check(&self, c: &FiniteCategory, what: &str) -> Result<()> {
        if c.num_objects() > self.objects || c.num_morphisms() > self.morphisms {
            return Err(Error::Bound(format!(
                "{what} has {} objects and {} morphisms, over the bound of {} and {}; raise it with --bound or TANGENTAD_BOUNDS",
                c.num_objects(),
                c.num_morphisms(),
                self.objects,
                self.morphisms
            )));
        }
        Ok(())
    }

    pub fn check_probe(&self, c: &FiniteCategory) -> Result<()> {
        if c.num_objects() > self.probe || c.num_morphisms() > self.morphisms {
            return Err(Error::Bound(format!(
                "probe category has {} objects, over the bound of {}; raise it with --bound or TANGENTAD_BOUNDS",
                c.num_objects(),
                self.probe
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Functor {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl Functor {
    pub fn new(src: &FiniteCategory, dst: &FiniteCategory, obj: Vec<usize>, mor: Vec<usize>) -> Result<Functor> {
        let f = Functor { obj, mor };
        f.validate(src, dst)?;
        Ok(f)
    }

    pub fn identity(c: &FiniteCategory) -> Functor {
        Functor { obj: (0..c.num_objects()).collect(), mor: (0..c.num_morphisms()).collect() }
    }

    /// Constant functor at object `o`.
    pub fn constant(src: &FiniteCategory, dst: &FiniteCategory, o: usize) -> Functor {
        Functor { obj: vec![o; src.num_objects()], mor: vec![dst.id(o); src.num_morphisms()] }
    }

    pub fn validate(&self, src: &FiniteCategory, dst: &FiniteCategory) -> Result<()> {
        if self.obj.len() != src.num_objects() || self.mor.len() != src.num_morphisms() {
            return Err(Error::Invalid("functor maps have the wrong length".into()));
        }
        for (f, &ff) in self.mor.iter().enumerate() {
            let a = src.arrow_of(f);
            if ff >= dst.num_morphisms() || dst.arrow_of(ff) != (Arrow { src: self.obj[a.src], dst: self.obj[a.dst] }) {
                return Err(Error::Invalid(format!("F(m{f}) has the wrong endpoints")));
            }
        }
        for o in 0..src.num_objects() {
            if self.mor[src.id(o)] != dst.id(self.obj[o]) {
                return Err(Error::Invalid(format!("F does not preserve the identity of {o}")));
            }
        }
        for (g, f) in src.composable() {
            let gf = src.comp(g, f).expect("composable");
            if dst.comp(self.mor[g], self.mor[f]) != Some(self.mor[gf]) {
                return Err(Error::Invalid(format!("F(m{g} ∘ m{f}) ≠ F(m{g}) ∘ F(m{f})")));
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Functor) -> Functor {
        Functor {
            obj: other.obj.iter().map(|&o| self.obj[o]).collect(),
            mor: other.mor.iter().map(|&f| self.mor[f]).collect(),
        }
    }

    pub fn is_bijective(&self, src: &FiniteCategory, dst: &FiniteCategory) -> bool {
        let mut seen_o = vec![false; dst.num_objects()];
        let mut seen_m = vec![false; dst.num_morphisms()];
        self.obj.iter().all(|&o| !std::mem::replace(&mut seen_o[o], true))
            && self.mor.iter().all(|&m| !std::mem::replace(&mut seen_m[m], true))
            && src.num_objects() == dst.num_objects()
            && src.num_morphisms() == dst.num_morphisms()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NatTrans {
    pub components: Vec<usize>,
}

impl NatTrans {
    pub fn new(
        src: &FiniteCategory,
        dst: &FiniteCategory,
        f: &Functor,
        g: &Functor,
        components: Vec<usize>,
    ) -> Result<NatTrans> {
        let t = NatTrans { components };
        t.validate(src, dst, f, g)?;
        Ok(t)
    }

    pub fn identity(f: &Functor, dst: &FiniteCategory) -> NatTrans {
        NatTrans { components: f.obj.iter().map(|&o| dst.id(o)).collect() }
    }

    pub fn validate(&self, src: &FiniteCategory, dst: &FiniteCategory, f: &Functor, g: &Functor) -> Result<()> {
        if self.components.len() != src.num_objects() {
            return Err(Error::Invalid("natural transformation has the wrong number of components".into()));
        }
        for (a, &t) in self.components.iter().enumerate() {
            if t >= dst.num_morphisms() || dst.arrow_of(t) != (Arrow { src: f.obj[a], dst: g.obj[a] }) {
                return Err(Error::Invalid(format!("component at {a} has the wrong endpoints")));
            }
        }
        for h in 0..src.num_morphisms() {
            let a = src.arrow_of(h);
            let lhs = dst.comp(g.mor[h], self.components[a.src]);
            let rhs = dst.comp(self.components[a.dst], f.mor[h]);
            if lhs != rhs {
                return Err(Error::Invalid(format!("naturality fails at m{h}")));
            }
        }
        Ok(())
    }

    /// Whiskering `H θ`.
    pub fn whisker_left(&self, h: &Functor) -> NatTrans {
        NatTrans { components: self.components.iter().map(|&t| h.mor[t]).collect() }
    }

    /// Whiskering `θ K`.
    pub fn whisker_right(&self, k: &Functor) -> NatTrans {
        NatTrans { components: k.obj.iter().map(|&o| self.components[o]).collect() }
    }
}

/// All functors `src → dst`, without duplicates, in lexicographic order.
pub fn enumerate_functors(src: &FiniteCategory, dst: &FiniteCategory, bounds: &Bounds) -> Result<Vec<Functor>> {
    bounds.check_probe(src)?;
    bounds.check(dst, "target category")?;
    let n = src.num_objects();
    let k = src.num_morphisms();
    let mut out = Vec::new();
    let mut obj = vec![0usize; n];
    let mut mor = vec![usize::MAX; k];

    fn assign_objects(
        i: usize,
        src: &FiniteCategory,
        dst: &FiniteCategory,
        obj: &mut Vec<usize>,
        mor: &mut Vec<usize>,
        out: &mut Vec<Functor>,
    ) {
        if i == obj.len() {
            assign_morphisms(0, src, dst, obj, mor, out);
            return;
        }
        for o in 0..dst.num_objects() {
            obj[i] = o;
            assign_objects(i + 1, src, dst, obj, mor, out);
        }
    }

    fn consistent(f: usize, src: &FiniteCategory, dst: &FiniteCategory, mor: &[usize]) -> bool {
        // Every composite relation among assigned morphisms up to f.
        for (g, h) in src.composable() {
            let gh = src.comp(g, h).expect("composable");
            if g > f || h > f || gh > f {
                continue;
            }
            if g != f && h != f && gh != f {
                continue;
            }
            if dst.comp(mor[g], mor[h]) != Some(mor[gh]) {
                return false;
            }
        }
        true
    }

    fn assign_morphisms(
        f: usize,
        src: &FiniteCategory,
        dst: &FiniteCategory,
        obj: &mut Vec<usize>,
        mor: &mut Vec<usize>,
        out: &mut Vec<Functor>,
    ) {
        if f == mor.len() {
            out.push(Functor { obj: obj.clone(), mor: mor.clone() });
            return;
        }
        let a = src.arrow_of(f);
        let choices = if src.is_identity(f) {
            vec![dst.id(obj[a.src])]
        } else {
            dst.hom(obj[a.src], obj[a.dst])
        };
        for c in choices {
            mor[f] = c;
            if consistent(f, src, dst, mor) {
                assign_morphisms(f + 1, src, dst, obj, mor, out);
            }
        }
        mor[f] = usize::MAX;
    }

    assign_objects(0, src, dst, &mut obj, &mut mor, &mut out);
    Ok(out)
}

/// All natural transformations `F ⇒ G` between functors `src → dst`.
pub fn enumerate_nat_trans(
    src: &FiniteCategory,
    dst: &FiniteCategory,
    f: &Functor,
    g: &Functor,
    bounds: &Bounds,
) -> Result<Vec<NatTrans>> {
    bounds.check_probe(src)?;
    bounds.check(dst, "target category")?;
    let choices: Vec<Vec<usize>> = (0..src.num_objects()).map(|a| dst.hom(f.obj[a], g.obj[a])).collect();
    let mut out = Vec::new();
    let mut comps = vec![0usize; src.num_objects()];
    fn go(
        i: usize,
        choices: &[Vec<usize>],
        comps: &mut Vec<usize>,
        out: &mut Vec<NatTrans>,
        check: &dyn Fn(&[usize]) -> bool,
    ) {
        if i == comps.len() {
            if check(comps) {
                out.push(NatTrans { components: comps.clone() });
            }
            return;
        }
        for &c in &choices[i] {
            comps[i] = c;
            go(i + 1, choices, comps, out, check);
        }
    }
    let check = |c: &[usize]| {
        NatTrans { components: c.to_vec() }.validate(src, dst, f, g).is_ok()
    };
    go(0, &choices, &mut comps, &mut out, &check);
    Ok(out)
}

/// `T = id` with every structure map an identity.
#[derive(Debug, Clone)]
pub struct TrivialModel {
    pub cat: Arc<FiniteCategory>,
}

impl TrivialModel {
    pub fn new(cat: FiniteCategory) -> Self {
        TrivialModel { cat: Arc::new(cat) }
    }
}

impl TangentModel for TrivialModel {
    type Obj = usize;
    type Mor = usize;

    fn name(&self) -> String {
        format!("trivial[{} objects, {} morphisms]", self.cat.num_objects(), self.cat.num_morphisms())
    }

    fn obj_eq(&self, a: &usize, b: &usize) -> bool {
        a == b
    }

    fn check_object(&self, m: &usize) -> Result<()> {
        if *m >= self.cat.num_objects() {
            return Err(Error::Invalid(format!("object {m} outside the category")));
        }
        Ok(())
    }

    fn dom(&self, f: &usize) -> usize {
        self.cat.src(*f)
    }

    fn cod(&self, f: &usize) -> usize {
        self.cat.dst(*f)
    }

    fn identity(&self, m: &usize) -> usize {
        self.cat.id(*m)
    }

    fn compose(&self, g: &usize, f: &usize) -> Result<usize> {
        self.cat
            .comp(*g, *f)
            .ok_or_else(|| Error::Mismatch(format!("m{g} ∘ m{f} is not composable")))
    }

    fn equals(&self, f: &usize, g: &usize) -> Verdict {
        if f == g {
            Ok(())
        } else {
            Err(format!("m{f} ≠ m{g}"))
        }
    }

    fn tangent_obj(&self, m: &usize) -> usize {
        *m
    }

    fn tangent_mor(&self, f: &usize) -> usize {
        *f
    }

    fn p(&self, m: &usize) -> usize {
        self.cat.id(*m)
    }

    fn z(&self, m: &usize) -> usize {
        self.cat.id(*m)
    }

    fn s(&self, m: &usize) -> usize {
        self.cat.id(*m)
    }

    fn l(&self, m: &usize) -> usize {
        self.cat.id(*m)
    }

    fn c(&self, m: &usize) -> usize {
        self.cat.id(*m)
    }

    fn n(&self, m: &usize) -> Option<usize> {
        Some(self.cat.id(*m))
    }

    fn pullback_obj(&self, m: &usize, _n: usize) -> usize {
        *m
    }

    fn proj(&self, m: &usize, _n: usize, _k: usize) -> usize {
        self.cat.id(*m)
    }

    fn tuple(&self, _m: &usize, _depth: usize, maps: &[usize]) -> Result<usize> {
        let first = *maps.first().ok_or_else(|| Error::Precondition("empty tuple".into()))?;
        if let Some(other) = maps.iter().find(|&&f| f != first) {
            return Err(Error::Precondition(format!("m{first} and m{other} disagree over the base")));
        }
        Ok(first)
    }

    fn lift_extract(&self, _m: &usize, h: &usize) -> Result<usize> {
        Ok(*h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangent_core::{check_tangent_axioms, Samples};

    #[test]
    fn probes_are_valid() {
        for (name, c) in FiniteCategory::probes() {
            assert!(c.num_objects() <= 3, "{name}");
        }
        assert_eq!(FiniteCategory::chain(3).num_morphisms(), 6);
        assert_eq!(FiniteCategory::walking_iso().num_morphisms(), 4);
        assert!(FiniteCategory::walking_iso().is_iso(2));
    }

    #[test]
    fn non_associative_rejected() {
        let ms = vec![Arrow { src: 0, dst: 0 }; 3];
        let table = vec![
            vec![Some(0), Some(1), Some(2)],
            vec![Some(1), Some(2), Some(1)],
            vec![Some(2), Some(2), Some(2)],
        ];
        // (a∘a)∘a = b∘a = b, a∘(a∘a) = a∘b = a.
        assert!(FiniteCategory::new(1, ms, table, vec![0]).is_err());
    }

    #[test]
    fn functors_from_terminal_are_objects() {
        let c = FiniteCategory::chain(3);
        let fs = enumerate_functors(&FiniteCategory::terminal(), &c, &Bounds::default()).unwrap();
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn bound_exceeded() {
        let c = FiniteCategory::discrete(6);
        let err = enumerate_functors(&FiniteCategory::terminal(), &c, &Bounds::default()).unwrap_err();
        assert!(matches!(err, Error::Bound(_)));
    }

    #[test]
    fn bounds_parse() {
        let b = Bounds::parse("objects=7, probe=2").unwrap();
        assert_eq!(b, Bounds { objects: 7, morphisms: 12, probe: 2 });
        assert!(Bounds::parse("colour=3").is_err());
    }

    #[test]
    fn trivial_model_axioms() {
        let c = FiniteCategory::arrow();
        let model = TrivialModel::new(c.clone());
        let s = Samples::new((0..c.num_objects()).collect(), (0..c.num_morphisms()).collect());
        let rep = check_tangent_axioms(&model, &s).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn json_round_trip() {
        let c = FiniteCategory::idempotent();
        let s = serde_json::to_string(&c).unwrap();
        let back: FiniteCategory = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<FiniteCategory>(r#"{"objects":1,"morphisms":[],"compose":[],"identities":[0]}"#).is_err());
    }
}

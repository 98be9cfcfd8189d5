//! Tensor words of the rigs `W_n = ℕ[x₁…x_n]/(x_i x_j)` and the rig
//! homomorphisms between them generated by `p, z, s, l, c`.
//!
//! A basis element of a word `W_{n₁} ⊗ … ⊗ W_{n_k}` is a tuple with one entry
//! per factor: `0` for the unit, `j` for the generator `x_j` of that factor.
//! Tuples are ordered lexicographically, which fixes the serialized order.
//!
//! Under a tangent structure the word `A ⊗ B` is sent to the composite
//! endofunctor `L(A) ∘ L(B)`, so `W ⊗ p` plays the role of `T p` and
//! `p ⊗ W` the role of `p_T`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeilObject {
    widths: Vec<usize>,
}

impl WeilObject {
    pub fn new(widths: Vec<usize>) -> Self {
        WeilObject { widths }
    }

    /// The monoidal unit `ℕ`.
    pub fn unit() -> Self {
        WeilObject::new(vec![])
    }

    /// `W = W₁`.
    pub fn w() -> Self {
        WeilObject::new(vec![1])
    }

    /// `W^{⊗n}`.
    pub fn w_power(n: usize) -> Self {
        WeilObject::new(vec![1; n])
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn tensor(&self, other: &WeilObject) -> WeilObject {
        let mut w = self.widths.clone();
        w.extend_from_slice(&other.widths);
        WeilObject::new(w)
    }

    pub fn basis_size(&self) -> usize {
        self.widths.iter().map(|w| w + 1).product()
    }

    pub fn basis(&self) -> Vec<Vec<usize>> {
        (0..self.basis_size()).map(|i| self.tuple_of(i)).collect()
    }

    pub fn index_of(&self, t: &[usize]) -> usize {
        debug_assert_eq!(t.len(), self.widths.len());
        let mut idx = 0;
        for (entry, w) in t.iter().zip(&self.widths) {
            idx = idx * (w + 1) + entry;
        }
        idx
    }

    pub fn tuple_of(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.widths.len()];
        for i in (0..self.widths.len()).rev() {
            let r = self.widths[i] + 1;
            t[i] = idx % r;
            idx /= r;
        }
        t
    }
}

impl fmt::Display for WeilObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.widths.is_empty() {
            return write!(f, "N");
        }
        let parts: Vec<String> = self
            .widths
            .iter()
            .map(|&w| if w == 1 { "W".to_string() } else { format!("W{w}") })
            .collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

/// A rig element: natural-number coefficients on the basis of its parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeilElement {
    parent: WeilObject,
    coeffs: Vec<u64>,
}

impl WeilElement {
    pub fn zero(parent: &WeilObject) -> Self {
        WeilElement {
            parent: parent.clone(),
            coeffs: vec![0; parent.basis_size()],
        }
    }

    pub fn one(parent: &WeilObject) -> Self {
        Self::basis(parent, &vec![0; parent.widths.len()], 1)
    }

    pub fn basis(parent: &WeilObject, t: &[usize], c: u64) -> Self {
        let mut e = Self::zero(parent);
        e.coeffs[parent.index_of(t)] = c;
        e
    }

    /// The generator `x_gen` (1-based) of factor `factor`.
    pub fn generator(parent: &WeilObject, factor: usize, gen: usize) -> Self {
        let mut t = vec![0; parent.widths.len()];
        t[factor] = gen;
        Self::basis(parent, &t, 1)
    }

    pub fn from_terms(parent: &WeilObject, terms: &[(Vec<usize>, u64)]) -> Result<Self> {
        let mut e = Self::zero(parent);
        for (t, c) in terms {
            if t.len() != parent.widths.len() || t.iter().zip(&parent.widths).any(|(a, w)| a > w) {
                return Err(Error::Invalid(format!("basis tuple {t:?} not in {parent}")));
            }
            e.coeffs[parent.index_of(t)] += c;
        }
        Ok(e)
    }

    pub fn parent(&self) -> &WeilObject {
        &self.parent
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, t: &[usize]) -> u64 {
        self.coeffs[self.parent.index_of(t)]
    }

    pub fn terms(&self) -> Vec<(Vec<usize>, u64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.parent.tuple_of(i), c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &WeilElement) -> Result<WeilElement> {
        self.same_parent(other)?;
        Ok(WeilElement {
            parent: self.parent.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn mul(&self, other: &WeilElement) -> Result<WeilElement> {
        self.same_parent(other)?;
        let mut out = WeilElement::zero(&self.parent);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let ti = self.parent.tuple_of(i);
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let tj = self.parent.tuple_of(j);
                if let Some(t) = product_tuple(&ti, &tj) {
                    out.coeffs[self.parent.index_of(&t)] += a * b;
                }
            }
        }
        Ok(out)
    }

    fn same_parent(&self, other: &WeilElement) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::Mismatch(format!(
                "elements of {} and {}",
                self.parent, other.parent
            )));
        }
        Ok(())
    }
}

fn product_tuple(a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let mut t = Vec::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(b) {
        if x != 0 && y != 0 {
            return None;
        }
        t.push(x.max(y));
    }
    Some(t)
}

impl fmt::Display for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(t, c)| {
                let mono: Vec<String> = t
                    .iter()
                    .enumerate()
                    .filter(|(_, &j)| j != 0)
                    .map(|(i, &j)| {
                        if self.parent.widths[i] == 1 {
                            format!("e{}", i + 1)
                        } else {
                            format!("x{}.{}", i + 1, j)
                        }
                    })
                    .collect();
                match (mono.is_empty(), *c) {
                    (true, c) => c.to_string(),
                    (false, 1) => mono.join("*"),
                    (false, c) => format!("{c}*{}", mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A rig homomorphism, given by the images of the source generators.
#[derive(Debug, Clone)]
pub struct WeilMorphism {
    source: WeilObject,
    target: WeilObject,
    images: Vec<Vec<WeilElement>>,
    basis_images: Vec<Vec<u64>>,
}

impl PartialEq for WeilMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.basis_images == other.basis_images
    }
}

impl WeilMorphism {
    /// Builds a morphism, rejecting images that violate nilpotency.
    pub fn new(source: WeilObject, target: WeilObject, images: Vec<Vec<WeilElement>>) -> Result<Self> {
        if images.len() != source.widths.len() {
            return Err(Error::Invalid(format!(
                "{} factor image lists for source {}",
                images.len(),
                source
            )));
        }
        for (i, (imgs, &w)) in images.iter().zip(&source.widths).enumerate() {
            if imgs.len() != w {
                return Err(Error::Invalid(format!(
                    "factor {} of {} has {} generators but {} images",
                    i, source, w, imgs.len()
                )));
            }
            for e in imgs {
                if e.parent != target {
                    return Err(Error::Mismatch(format!("image in {} for target {}", e.parent, target)));
                }
            }
            for a in 0..w {
                for b in a..w {
                    let prod = imgs[a].mul(&imgs[b])?;
                    if !prod.is_zero() {
                        return Err(Error::Invalid(format!(
                            "images of x{} and x{} in factor {} multiply to {} ≠ 0",
                            a + 1,
                            b + 1,
                            i + 1,
                            prod
                        )));
                    }
                }
            }
        }
        let mut basis_images = Vec::with_capacity(source.basis_size());
        for t in source.basis() {
            let mut acc = WeilElement::one(&target);
            for (i, &j) in t.iter().enumerate() {
                if j != 0 {
                    acc = acc.mul(&images[i][j - 1])?;
                }
            }
            basis_images.push(acc.coeffs);
        }
        Ok(WeilMorphism {
            source,
            target,
            images,
            basis_images,
        })
    }

    pub fn source(&self) -> &WeilObject {
        &self.source
    }

    pub fn target(&self) -> &WeilObject {
        &self.target
    }

    pub fn images(&self) -> &[Vec<WeilElement>] {
        &self.images
    }

    /// Image of each source basis element, as target coefficient vectors.
    pub fn basis_matrix(&self) -> &[Vec<u64>] {
        &self.basis_images
    }

    pub fn identity(obj: &WeilObject) -> Self {
        let images = obj
            .widths
            .iter()
            .enumerate()
            .map(|(i, &w)| (1..=w).map(|j| WeilElement::generator(obj, i, j)).collect())
            .collect();
        WeilMorphism::new(obj.clone(), obj.clone(), images).expect("identity is a rig map")
    }

    pub fn apply(&self, e: &WeilElement) -> Result<WeilElement> {
        if e.parent != self.source {
            return Err(Error::Mismatch(format!(
                "applying a map out of {} to an element of {}",
                self.source, e.parent
            )));
        }
        let mut out = WeilElement::zero(&self.target);
        for (i, &c) in e.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &v) in out.coeffs.iter_mut().zip(&self.basis_images[i]) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    /// `g ∘ f`.
    pub fn compose(g: &WeilMorphism, f: &WeilMorphism) -> Result<WeilMorphism> {
        if f.target != g.source {
            return Err(Error::Mismatch(format!(
                "cannot compose {} → {} after {} → {}",
                g.source, g.target, f.source, f.target
            )));
        }
        let images = f
            .images
            .iter()
            .map(|imgs| imgs.iter().map(|e| g.apply(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        WeilMorphism::new(f.source.clone(), g.target.clone(), images)
    }

    /// Composite of a chain written in application order reversed: `chain[0] ∘ chain[1] ∘ …`.
    pub fn chain(maps: &[&WeilMorphism]) -> Result<WeilMorphism> {
        let mut acc = (*maps.last().expect("nonempty chain")).clone();
        for g in maps.iter().rev().skip(1) {
            acc = WeilMorphism::compose(g, &acc)?;
        }
        Ok(acc)
    }

    pub fn tensor(f: &WeilMorphism, g: &WeilMorphism) -> Result<WeilMorphism> {
        let source = f.source.tensor(&g.source);
        let target = f.target.tensor(&g.target);
        let kf = f.target.widths.len();
        let kg = g.target.widths.len();
        let embed = |e: &WeilElement, left: bool| -> WeilElement {
            let mut out = WeilElement::zero(&target);
            for (t, c) in e.terms() {
                let mut full = vec![0; kf + kg];
                if left {
                    full[..kf].copy_from_slice(&t);
                } else {
                    full[kf..].copy_from_slice(&t);
                }
                out.coeffs[target.index_of(&full)] += c;
            }
            out
        };
        let mut images: Vec<Vec<WeilElement>> = f
            .images
            .iter()
            .map(|imgs| imgs.iter().map(|e| embed(e, true)).collect())
            .collect();
        images.extend(g.images.iter().map(|imgs| imgs.iter().map(|e| embed(e, false)).collect()));
        WeilMorphism::new(source, target, images)
    }

    /// Tensor product of a list, left to right.
    pub fn tensor_all(maps: &[&WeilMorphism]) -> Result<WeilMorphism> {
        let mut acc = WeilMorphism::identity(&WeilObject::unit());
        for m in maps {
            acc = WeilMorphism::tensor(&acc, m)?;
        }
        Ok(acc)
    }

    /// Pairs maps `f_k : A → X` whose factor `idx` is `W` into `A → X'` where
    /// factor `idx` becomes `W_n`; the parts free of that factor must agree.
    pub fn tuple_into(idx: usize, maps: &[WeilMorphism]) -> Result<WeilMorphism> {
        let first = maps.first().ok_or_else(|| Error::Precondition("empty tuple".into()))?;
        let n = maps.len();
        let tw = first.target.clone();
        if tw.widths.get(idx) != Some(&1) {
            return Err(Error::Precondition(format!("factor {idx} of {tw} is not W")));
        }
        for m in maps {
            if m.source != first.source || m.target != tw {
                return Err(Error::Mismatch("tupled maps must share source and target".into()));
            }
        }
        let mut rw = tw.widths.clone();
        rw[idx] = n;
        let result = WeilObject::new(rw);
        let mut images = Vec::new();
        for (fi, &w) in first.source.widths.iter().enumerate() {
            let mut factor_imgs = Vec::new();
            for gj in 0..w {
                let mut base: Option<Vec<(Vec<usize>, u64)>> = None;
                let mut out = WeilElement::zero(&result);
                for (k, m) in maps.iter().enumerate() {
                    let e = &m.images[fi][gj];
                    let mut this_base = Vec::new();
                    for (t, c) in e.terms() {
                        if t[idx] == 0 {
                            this_base.push((t, c));
                        } else {
                            let mut t2 = t.clone();
                            t2[idx] = k + 1;
                            out.coeffs[result.index_of(&t2)] += c;
                        }
                    }
                    match &base {
                        None => base = Some(this_base),
                        Some(b) if *b != this_base => {
                            return Err(Error::Precondition(format!(
                                "tupled maps disagree over the base on generator x{} of factor {}",
                                gj + 1,
                                fi + 1
                            )))
                        }
                        _ => {}
                    }
                }
                for (t, c) in base.unwrap_or_default() {
                    out.coeffs[result.index_of(&t)] += c;
                }
                factor_imgs.push(out);
            }
            images.push(factor_imgs);
        }
        WeilMorphism::new(first.source.clone(), result, images)
    }

    /// Checks additivity and multiplicativity on every pair of basis elements.
    pub fn check_rig_hom(&self) -> std::result::Result<(), String> {
        let basis = self.source.basis();
        let one = WeilElement::one(&self.source);
        if self.apply(&one).map_err(|e| e.to_string())? != WeilElement::one(&self.target) {
            return Err("unit not preserved".into());
        }
        for a in &basis {
            let ea = WeilElement::basis(&self.source, a, 1);
            let fa = self.apply(&ea).map_err(|e| e.to_string())?;
            for b in &basis {
                let eb = WeilElement::basis(&self.source, b, 1);
                let fb = self.apply(&eb).map_err(|e| e.to_string())?;
                let sum = self.apply(&ea.add(&eb).unwrap()).unwrap();
                if sum != fa.add(&fb).unwrap() {
                    return Err(format!("f({a:?} + {b:?}) ≠ f({a:?}) + f({b:?})"));
                }
                let prod = self.apply(&ea.mul(&eb).unwrap()).unwrap();
                let fprod = fa.mul(&fb).unwrap();
                if prod != fprod {
                    return Err(format!("f({a:?}·{b:?}) = {prod} but f({a:?})·f({b:?}) = {fprod}"));
                }
            }
        }
        Ok(())
    }

    /// First basis element on which two parallel maps differ.
    pub fn difference(&self, other: &WeilMorphism) -> Option<String> {
        if self.source != other.source || self.target != other.target {
            return Some(format!(
                "{} → {} versus {} → {}",
                self.source, self.target, other.source, other.target
            ));
        }
        for (i, (a, b)) in self.basis_images.iter().zip(&other.basis_images).enumerate() {
            if a != b {
                let t = self.source.tuple_of(i);
                let ea = WeilElement { parent: self.target.clone(), coeffs: a.clone() };
                let eb = WeilElement { parent: self.target.clone(), coeffs: b.clone() };
                return Some(format!("on basis {t:?}: {ea} versus {eb}"));
            }
        }
        None
    }
}

/// The named generators `p, z, s, l, c`.
pub fn generator(name: &str) -> Result<WeilMorphism> {
    let w = WeilObject::w();
    let ww = WeilObject::w_power(2);
    match name {
        "p" => WeilMorphism::new(w.clone(), WeilObject::unit(), vec![vec![WeilElement::zero(&WeilObject::unit())]]),
        "z" => WeilMorphism::new(WeilObject::unit(), w, vec![]),
        "s" => {
            let w2 = WeilObject::new(vec![2]);
            let eps = WeilElement::generator(&w, 0, 1);
            WeilMorphism::new(w2, w, vec![vec![eps.clone(), eps]])
        }
        "l" => WeilMorphism::new(w, ww.clone(), vec![vec![WeilElement::basis(&ww, &[1, 1], 1)]]),
        "c" => WeilMorphism::new(
            ww.clone(),
            ww.clone(),
            vec![
                vec![WeilElement::basis(&ww, &[0, 1], 1)],
                vec![WeilElement::basis(&ww, &[1, 0], 1)],
            ],
        ),
        other => Err(Error::Precondition(format!(
            "unknown generator {other:?}; expected one of p, z, s, l, c"
        ))),
    }
}

/// Projection `π_k : W_n → W` (1-based `k`).
pub fn projection(n: usize, k: usize) -> Result<WeilMorphism> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("projection {k} of W{n}")));
    }
    let w = WeilObject::w();
    let imgs = (1..=n)
        .map(|j| {
            if j == k {
                WeilElement::generator(&w, 0, 1)
            } else {
                WeilElement::zero(&w)
            }
        })
        .collect();
    WeilMorphism::new(WeilObject::new(vec![n]), w, vec![imgs])
}

fn id(obj: &WeilObject) -> WeilMorphism {
    WeilMorphism::identity(obj)
}

fn eq_check(lhs: Result<WeilMorphism>, rhs: Result<WeilMorphism>) -> std::result::Result<(), String> {
    let lhs = lhs.map_err(|e| format!("left side: {e}"))?;
    let rhs = rhs.map_err(|e| format!("right side: {e}"))?;
    match lhs.difference(&rhs) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// Checks every relation of the presentation, exactly on basis elements.
pub fn verify_relations() -> Report {
    let mut rep = Report::new();
    let gens: Vec<(&str, WeilMorphism)> = ["p", "z", "s", "l", "c"]
        .iter()
        .map(|n| (*n, generator(n).expect("known generator")))
        .collect();
    for (name, g) in &gens {
        rep.record("weil/rig-hom", *name, g.check_rig_hom());
    }
    let [p, z, s, l, c] = [0, 1, 2, 3, 4].map(|i| gens[i].1.clone());
    let w = WeilObject::w();
    let idw = id(&w);
    let pi = |n, k| projection(n, k).expect("valid projection");
    let t = |f: &WeilMorphism, g: &WeilMorphism| WeilMorphism::tensor(f, g);
    let comp = WeilMorphism::chain;

    rep.record(
        "weil/p-section",
        "N",
        eq_check(WeilMorphism::compose(&p, &z), Ok(id(&WeilObject::unit()))),
    );
    for k in 1..=2 {
        rep.record(
            "weil/sum-over-base",
            format!("pi{k}"),
            eq_check(comp(&[&p, &s]), comp(&[&p, &pi(2, k)])),
        );
    }
    let assoc = || -> Result<(WeilMorphism, WeilMorphism)> {
        let s12 = WeilMorphism::compose(&s, &WeilMorphism::tuple_into(0, &[pi(3, 1), pi(3, 2)])?)?;
        let left = WeilMorphism::compose(&s, &WeilMorphism::tuple_into(0, &[s12, pi(3, 3)])?)?;
        let s23 = WeilMorphism::compose(&s, &WeilMorphism::tuple_into(0, &[pi(3, 2), pi(3, 3)])?)?;
        let right = WeilMorphism::compose(&s, &WeilMorphism::tuple_into(0, &[pi(3, 1), s23])?)?;
        Ok((left, right))
    };
    rep.record(
        "weil/sum-assoc",
        "W3",
        match assoc() {
            Ok((a, b)) => eq_check(Ok(a), Ok(b)),
            Err(e) => Err(e.to_string()),
        },
    );
    rep.record(
        "weil/sum-unit",
        "W",
        eq_check(
            WeilMorphism::tuple_into(0, &[comp(&[&z, &p]).unwrap(), idw.clone()])
                .and_then(|u| WeilMorphism::compose(&s, &u)),
            Ok(idw.clone()),
        ),
    );
    rep.record(
        "weil/sum-comm",
        "W2",
        eq_check(
            WeilMorphism::tuple_into(0, &[pi(2, 2), pi(2, 1)]).and_then(|u| WeilMorphism::compose(&s, &u)),
            Ok(s.clone()),
        ),
    );

    // (z, l) is a morphism of additive bundles from p to W ⊗ p.
    rep.record(
        "weil/lift-over-zero",
        "W",
        eq_check(
            t(&idw, &p).and_then(|wp| WeilMorphism::compose(&wp, &l)),
            comp(&[&z, &p]),
        ),
    );
    rep.record(
        "weil/lift-zero",
        "N",
        eq_check(
            WeilMorphism::compose(&l, &z),
            t(&idw, &z).and_then(|wz| WeilMorphism::compose(&wz, &z)),
        ),
    );
    let lift_additive = || -> Result<(WeilMorphism, WeilMorphism)> {
        let lhs = WeilMorphism::compose(&l, &s)?;
        let pair = WeilMorphism::tuple_into(
            1,
            &[WeilMorphism::compose(&l, &pi(2, 1))?, WeilMorphism::compose(&l, &pi(2, 2))?],
        )?;
        let rhs = WeilMorphism::compose(&t(&idw, &s)?, &pair)?;
        Ok((lhs, rhs))
    };
    rep.record(
        "weil/lift-additive",
        "W2",
        match lift_additive() {
            Ok((a, b)) => eq_check(Ok(a), Ok(b)),
            Err(e) => Err(e.to_string()),
        },
    );

    // (id, c) is a morphism of additive bundles from W ⊗ p to p ⊗ W.
    rep.record(
        "weil/flip-over-id",
        "W⊗W",
        eq_check(
            t(&p, &idw).and_then(|pw| WeilMorphism::compose(&pw, &c)),
            t(&idw, &p),
        ),
    );
    rep.record(
        "weil/flip-zero",
        "W",
        eq_check(
            t(&idw, &z).and_then(|wz| WeilMorphism::compose(&c, &wz)),
            t(&z, &idw),
        ),
    );
    let flip_additive = || -> Result<(WeilMorphism, WeilMorphism)> {
        let lhs = WeilMorphism::compose(&c, &t(&idw, &s)?)?;
        let pair = WeilMorphism::tuple_into(
            0,
            &[
                WeilMorphism::compose(&c, &t(&idw, &pi(2, 1))?)?,
                WeilMorphism::compose(&c, &t(&idw, &pi(2, 2))?)?,
            ],
        )?;
        let rhs = WeilMorphism::compose(&t(&s, &idw)?, &pair)?;
        Ok((lhs, rhs))
    };
    rep.record(
        "weil/flip-additive",
        "W⊗W2",
        match flip_additive() {
            Ok((a, b)) => eq_check(Ok(a), Ok(b)),
            Err(e) => Err(e.to_string()),
        },
    );

    rep.record(
        "weil/lift-coassoc",
        "W",
        eq_check(
            t(&idw, &l).and_then(|wl| WeilMorphism::compose(&wl, &l)),
            t(&l, &idw).and_then(|lw| WeilMorphism::compose(&lw, &l)),
        ),
    );
    rep.record("weil/flip-lift", "W", eq_check(WeilMorphism::compose(&c, &l), Ok(l.clone())));
    rep.record(
        "weil/lift-flip-exchange",
        "W⊗W",
        eq_check(
            (|| comp(&[&t(&c, &idw)?, &t(&idw, &c)?, &t(&l, &idw)?]))(),
            t(&idw, &l).and_then(|wl| WeilMorphism::compose(&wl, &c)),
        ),
    );
    rep.record(
        "weil/flip-involution",
        "W⊗W",
        eq_check(WeilMorphism::compose(&c, &c), Ok(id(&WeilObject::w_power(2)))),
    );
    rep.record(
        "weil/flip-braid",
        "W⊗W⊗W",
        eq_check(
            (|| comp(&[&t(&idw, &c)?, &t(&c, &idw)?, &t(&idw, &c)?]))(),
            (|| comp(&[&t(&c, &idw)?, &t(&idw, &c)?, &t(&c, &idw)?]))(),
        ),
    );
    rep
}

/// Outcome of a bounded universal-property probe on one square.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProbeStats {
    pub cones: u64,
    pub factored: u64,
}

/// Counts solutions `x ∈ {0..bound}^cols` of `legs[k]·x = targets[k]`, stopping at 2.
struct ConeSolver {
    ncols: usize,
    // Per column: (row, coefficient) pairs across all legs.
    cols: Vec<Vec<(usize, u64)>>,
    // Rows whose last touching column is this one.
    closes: Vec<Vec<usize>>,
    untouched_cols: bool,
    unreachable_rows: Vec<usize>,
    // Per column: a row it closes, with its coefficient there.
    pivot: Vec<Option<(usize, u64)>>,
    all_forced: bool,
    nrows: usize,
}

impl ConeSolver {
    fn new(legs: &[&WeilMorphism]) -> Self {
        let ncols = legs[0].source.basis_size();
        let mut nrows = 0;
        let mut cols = vec![Vec::new(); ncols];
        for leg in legs {
            let m = leg.target.basis_size();
            for (c, img) in leg.basis_images.iter().enumerate() {
                for (r, &v) in img.iter().enumerate() {
                    if v != 0 {
                        cols[c].push((nrows + r, v));
                    }
                }
            }
            nrows += m;
        }
        let mut last = vec![None; nrows];
        for (c, col) in cols.iter().enumerate() {
            for &(r, _) in col {
                last[r] = Some(c);
            }
        }
        let mut closes = vec![Vec::new(); ncols];
        for (r, l) in last.iter().enumerate() {
            if let Some(c) = l {
                closes[*c].push(r);
            }
        }
        let untouched_cols = cols.iter().any(|c| c.is_empty());
        let unreachable_rows = (0..nrows).filter(|&r| last[r].is_none()).collect();
        let pivot: Vec<Option<(usize, u64)>> = (0..ncols)
            .map(|c| {
                closes[c]
                    .first()
                    .map(|&r| (r, cols[c].iter().find(|&&(rr, _)| rr == r).unwrap().1))
            })
            .collect();
        let all_forced = pivot.iter().all(|p: &Option<(usize, u64)>| p.is_some());
        ConeSolver {
            pivot,
            all_forced,
            ncols,
            cols,
            closes,
            untouched_cols,
            unreachable_rows,
            nrows,
        }
    }

    /// Returns the number of solutions, capped at 2. `scratch` holds the
    /// remaining row sums and the current assignment between calls.
    #[allow(clippy::needless_range_loop)]
    fn solve(&self, target: &[u64], bound: u64, scratch: &mut (Vec<u64>, Vec<u64>)) -> usize {
        debug_assert_eq!(target.len(), self.nrows);
        if self.unreachable_rows.iter().any(|&r| target[r] != 0) {
            return 0;
        }
        let (rem, x) = scratch;
        rem.clear();
        rem.extend_from_slice(target);
        x.clear();
        x.resize(self.ncols, 0);
        if self.all_forced {
            // Every column closes a row, so the search tree is a single path.
            for c in 0..self.ncols {
                let (r, k) = self.pivot[c].unwrap();
                if rem[r] % k != 0 || rem[r] / k > bound {
                    return 0;
                }
                let v = rem[r] / k;
                for &(rr, kk) in &self.cols[c] {
                    if rem[rr] < v * kk {
                        return 0;
                    }
                    rem[rr] -= v * kk;
                }
                if self.closes[c].iter().any(|&rr| rem[rr] != 0) {
                    return 0;
                }
                x[c] = v;
            }
            return 1;
        }
        let mut count = 0;
        self.search(0, bound, rem, x, &mut count);
        if self.untouched_cols && count > 0 && bound > 0 {
            count = 2;
        }
        count
    }

    fn search(
        &self,
        c: usize,
        bound: u64,
        rem: &mut [u64],
        x: &mut [u64],
        count: &mut usize,
    ) {
        if *count >= 2 {
            return;
        }
        if c == self.ncols {
            // Every reachable row was closed on the way down.
            *count += 1;
            return;
        }
        // A row closed by this column forces its value.
        let forced = self.pivot[c].map(|(r, k)| if rem[r].is_multiple_of(k) { Some(rem[r] / k) } else { None });
        let (lo, hi) = match forced {
            Some(Some(v)) if v <= bound => (v, v),
            Some(_) => return,
            None => (0, bound),
        };
        for v in lo..=hi {
            if self.cols[c].iter().any(|&(r, k)| rem[r] < v * k) {
                break;
            }
            for &(r, k) in &self.cols[c] {
                rem[r] -= v * k;
            }
            if self.closes[c].iter().all(|&r| rem[r] == 0) {
                x[c] = v;
                self.search(c + 1, bound, rem, x, count);
            }
            for &(r, k) in &self.cols[c] {
                rem[r] += v * k;
            }
            if *count >= 2 {
                return;
            }
        }
        x[c] = 0;
    }
}

/// All coefficient vectors of length `len` with entries in `0..=bound`.
fn bounded_vectors(len: usize, bound: u64) -> impl Iterator<Item = Vec<u64>> {
    let radix = bound + 1;
    let total = radix.checked_pow(len as u32).expect("probe size fits in u64");
    (0..total).map(move |mut i| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = i % radix;
            i /= radix;
        }
        v
    })
}

/// Probes a wide pullback square: `legs[k] : P → A_k`, `outs[k] : A_k → B`.
/// Every bounded cone must factor uniquely through `P`.
fn probe_square(
    legs: &[&WeilMorphism],
    outs: &[&WeilMorphism],
    bound: u64,
) -> std::result::Result<ProbeStats, String> {
    for k in 0..legs.len() {
        let a = WeilMorphism::compose(outs[k], legs[k]).map_err(|e| e.to_string())?;
        let b = WeilMorphism::compose(outs[0], legs[0]).map_err(|e| e.to_string())?;
        if let Some(w) = a.difference(&b) {
            return Err(format!("square does not commute at leg {}: {w}", k + 1));
        }
    }
    let solver = ConeSolver::new(legs);
    // Bucket the elements of each corner by their image in the base.
    let mut buckets: Vec<HashMap<Vec<u64>, Vec<Vec<u64>>>> = Vec::new();
    for k in 0..legs.len() {
        let a_obj = &legs[k].target;
        let mut map: HashMap<Vec<u64>, Vec<Vec<u64>>> = HashMap::new();
        for v in bounded_vectors(a_obj.basis_size(), bound) {
            let e = WeilElement { parent: a_obj.clone(), coeffs: v.clone() };
            let img = outs[k].apply(&e).map_err(|e| e.to_string())?.coeffs;
            map.entry(img).or_default().push(v);
        }
        buckets.push(map);
    }
    let mut stats = ProbeStats::default();
    let mut keys: Vec<&Vec<u64>> = buckets[0].keys().collect();
    keys.sort();
    let mut target = Vec::new();
    let mut scratch = (Vec::new(), Vec::new());
    for key in keys {
        let groups: Vec<&Vec<Vec<u64>>> = match buckets.iter().map(|b| b.get(key)).collect::<Option<Vec<_>>>() {
            Some(g) => g,
            None => continue,
        };
        let mut idx = vec![0usize; groups.len()];
        'cones: loop {
            target.clear();
            for (g, &i) in groups.iter().zip(&idx) {
                target.extend_from_slice(&g[i]);
            }
            stats.cones += 1;
            match solver.solve(&target, bound, &mut scratch) {
                1 => stats.factored += 1,
                0 => return Err(format!("cone {target:?} has no factorization with coefficients ≤ {bound}")),
                _ => return Err(format!("cone {target:?} factors in more than one way")),
            }
            // Advance the mixed-radix counter over the bucket product.
            let mut pos = groups.len();
            loop {
                if pos == 0 {
                    break 'cones;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < groups[pos].len() {
                    continue 'cones;
                }
                idx[pos] = 0;
            }
        }
    }
    Ok(stats)
}

/// The `n`-fold pullback square `W^{⊗n} ⊗ W_n` over `W^{⊗n}`.
pub fn pullback_power_square(n: usize) -> Result<(Vec<WeilMorphism>, Vec<WeilMorphism>)> {
    let wn = WeilMorphism::identity(&WeilObject::w_power(n));
    let p = generator("p")?;
    let mut legs = Vec::new();
    let mut outs = Vec::new();
    for k in 1..=n {
        legs.push(WeilMorphism::tensor(&wn, &projection(n, k)?)?);
        outs.push(WeilMorphism::tensor(&wn, &p)?);
    }
    Ok((legs, outs))
}

/// The vertical-lift square: `W₂ → W ⊗ W` over `W ← ℕ`.
pub fn vertical_lift_square() -> Result<(Vec<WeilMorphism>, Vec<WeilMorphism>)> {
    let w = WeilObject::w();
    let idw = WeilMorphism::identity(&w);
    let [p, z, s, l] = ["p", "z", "s", "l"].map(|n| generator(n).expect("known"));
    let pair = WeilMorphism::tuple_into(
        1,
        &[
            WeilMorphism::compose(&l, &projection(2, 1)?)?,
            WeilMorphism::compose(&WeilMorphism::tensor(&z, &idw)?, &projection(2, 2)?)?,
        ],
    )?;
    let top = WeilMorphism::compose(&WeilMorphism::tensor(&idw, &s)?, &pair)?;
    let left = WeilMorphism::compose(&p, &projection(2, 1)?)?;
    let right = WeilMorphism::tensor(&idw, &p)?;
    Ok((vec![top, left], vec![right, z]))
}

/// Checks both fundamental squares commute and probes their universal
/// property over all cones with coefficients at most `height_bound`.
pub fn probe_fundamental_pullbacks(height_bound: u64) -> Report {
    let mut rep = Report::new();
    for n in 1..=2 {
        let sample = format!("n={n},bound={height_bound}");
        let outcome = pullback_power_square(n)
            .map_err(|e| e.to_string())
            .and_then(|(legs, outs)| {
                let legs: Vec<&WeilMorphism> = legs.iter().collect();
                let outs: Vec<&WeilMorphism> = outs.iter().collect();
                probe_square(&legs, &outs, height_bound)
            });
        rep.record("weil/pullback-power", sample, outcome.map(|_| ()));
    }
    let outcome = vertical_lift_square()
        .map_err(|e| e.to_string())
        .and_then(|(legs, outs)| {
            let legs: Vec<&WeilMorphism> = legs.iter().collect();
            let outs: Vec<&WeilMorphism> = outs.iter().collect();
            probe_square(&legs, &outs, height_bound)
        });
    rep.record("weil/vertical-lift-pullback", format!("bound={height_bound}"), outcome.map(|_| ()));
    rep
}

/// Probe statistics for one square, exposed for diagnostics.
pub fn probe_stats(square: &str, n: usize, height_bound: u64) -> Result<ProbeStats> {
    let (legs, outs) = match square {
        "power" => pullback_power_square(n)?,
        "lift" => vertical_lift_square()?,
        other => return Err(Error::Precondition(format!("unknown square {other:?}"))),
    };
    let legs: Vec<&WeilMorphism> = legs.iter().collect();
    let outs: Vec<&WeilMorphism> = outs.iter().collect();
    probe_square(&legs, &outs, height_bound).map_err(Error::Invalid)
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    object: WeilObject,
    terms: Vec<(Vec<usize>, u64)>,
}

#[derive(Serialize, Deserialize)]
struct MorphismJson {
    source: WeilObject,
    target: WeilObject,
    images: Vec<Vec<TermsJson>>,
}

type TermsJson = Vec<(Vec<usize>, u64)>;

impl Serialize for WeilElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson { object: self.parent.clone(), terms: self.terms() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeilElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ElementJson::deserialize(d)?;
        WeilElement::from_terms(&j.object, &j.terms).map_err(serde::de::Error::custom)
    }
}

impl Serialize for WeilMorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MorphismJson {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self
                .images
                .iter()
                .map(|f| f.iter().map(|e| e.terms()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeilMorphism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MorphismJson::deserialize(d)?;
        let images = j
            .images
            .iter()
            .map(|f| {
                f.iter()
                    .map(|t| WeilElement::from_terms(&j.target, t))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        WeilMorphism::new(j.source, j.target, images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objects_and_bases() {
        assert_eq!(WeilObject::unit().basis(), vec![Vec::<usize>::new()]);
        assert_eq!(WeilObject::w().basis(), vec![vec![0], vec![1]]);
        assert_eq!(
            WeilObject::w_power(2).basis(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(WeilObject::new(vec![2, 1]).basis_size(), 6);
    }

    #[test]
    fn generator_images() {
        let w = WeilObject::w();
        let p = generator("p").unwrap();
        let x = WeilElement::from_terms(&w, &[(vec![0], 1), (vec![1], 2)]).unwrap();
        assert_eq!(p.apply(&x).unwrap(), WeilElement::one(&WeilObject::unit()));
        let l = generator("l").unwrap();
        let eps = WeilElement::generator(&w, 0, 1);
        assert_eq!(l.apply(&eps).unwrap(), WeilElement::basis(&WeilObject::w_power(2), &[1, 1], 1));
        let s = generator("s").unwrap();
        let w2 = WeilObject::new(vec![2]);
        for j in 1..=2 {
            assert_eq!(s.apply(&WeilElement::generator(&w2, 0, j)).unwrap(), eps);
        }
        assert!(generator("q").is_err());
    }

    #[test]
    fn nilpotency_is_enforced() {
        let w = WeilObject::w();
        let bad = WeilMorphism::new(w.clone(), w.clone(), vec![vec![WeilElement::one(&w)]]);
        assert!(bad.is_err());
    }

    #[test]
    fn relations_hold() {
        let rep = verify_relations();
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn small_pullback_probes() {
        assert!(probe_fundamental_pullbacks(0).all_pass());
        let rep = probe_fundamental_pullbacks(1);
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn json_round_trip() {
        let c = generator("c").unwrap();
        let j = serde_json::to_string(&c).unwrap();
        let back: WeilMorphism = serde_json::from_str(&j).unwrap();
        assert_eq!(back, c);
    }
}

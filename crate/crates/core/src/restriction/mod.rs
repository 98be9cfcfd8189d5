//! Rational maps over ℚ as a tangent restriction category, its idempotent
//! splitting, and vector fields over both.

mod model;
mod split;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model_poly::{random_poly, PolyMap, PolyMapJson};
use crate::poly::{Poly, TermJson};

pub use model::{check_restriction_laws, random_rational_map, RationalModel};
pub use split::{
    extended_vf, split_field, split_idempotent, split_vf, split_vf_conditions, split_vf_morphism, ExtendedVf,
    SplitMap, SplitModel, SplitObject,
};

/// Where a map is defined: the conjunction of `c ≠ 0` over a pairwise coprime
/// set of squarefree, normalized, nonconstant polynomials.
#[derive(Clone)]
pub struct Domain {
    nvars: usize,
    conditions: Vec<Poly>,
}

impl Domain {
    pub fn total(nvars: usize) -> Self {
        Domain { nvars, conditions: Vec::new() }
    }

    /// `c ≠ 0` for each listed `c`. A zero condition leaves nothing defined.
    pub fn from_conditions(nvars: usize, conds: impl IntoIterator<Item = Poly>) -> Result<Self> {
        let mut d = Domain::total(nvars);
        for c in conds {
            d.insert(c)?;
        }
        Ok(d)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conditions(&self) -> &[Poly] {
        &self.conditions
    }

    pub fn is_total(&self) -> bool {
        self.conditions.is_empty()
    }

    /// Refines the coprime basis by the squarefree part of `c`.
    pub fn insert(&mut self, c: Poly) -> Result<()> {
        assert_eq!(c.nvars(), self.nvars, "condition over the wrong number of variables");
        if c.is_zero() {
            return Err(Error::Domain("condition is identically zero, so the domain is empty".into()));
        }
        let mut h = c.squarefree_part();
        let mut next = Vec::with_capacity(self.conditions.len() + 1);
        for f in std::mem::take(&mut self.conditions) {
            if h.is_constant() {
                next.push(f);
                continue;
            }
            let g = f.gcd(&h);
            if g.is_constant() {
                next.push(f);
                continue;
            }
            let rest = f.div_exact(&g).expect("gcd divides").normalized();
            h = h.div_exact(&g).expect("gcd divides").normalized();
            next.push(g);
            if !rest.is_constant() {
                next.push(rest);
            }
        }
        if !h.is_constant() {
            next.push(h);
        }
        next.sort_by(|a, b| a.terms().cmp(b.terms()));
        self.conditions = next;
        Ok(())
    }

    pub fn union(&self, other: &Domain) -> Result<Domain> {
        let mut d = self.clone();
        for c in &other.conditions {
            d.insert(c.clone())?;
        }
        Ok(d)
    }

    /// The canonical key: the normalized product of the conditions.
    pub fn key(&self) -> Poly {
        self.conditions
            .iter()
            .fold(Poly::one(self.nvars), |acc, c| &acc * c)
            .normalized()
    }

    /// Whether every condition of `other` is implied here.
    pub fn contains(&self, other: &Domain) -> bool {
        other.key().is_constant() || self.key().div_exact(&other.key()).is_some()
    }

    /// Re-expresses the conditions in `nvars` variables with variable `i`
    /// sent to `map[i]`.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> Domain {
        Domain { nvars, conditions: self.conditions.iter().map(|c| c.rename(nvars, map)).collect() }
            .recanonical()
    }

    fn recanonical(mut self) -> Domain {
        self.conditions.sort_by(|a, b| a.terms().cmp(b.terms()));
        self
    }
}

impl PartialEq for Domain {
    fn eq(&self, other: &Domain) -> bool {
        self.nvars == other.nvars && self.key() == other.key()
    }
}

impl Eq for Domain {}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.conditions.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", cs.join(", "))
    }
}

/// A partial map `ℚ^m ⇀ ℚ^n` with reduced fractional components; the domain
/// always contains every denominator factor.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMap {
    source_dim: usize,
    numerators: Vec<Poly>,
    denominators: Vec<Poly>,
    domain: Domain,
}

/// Reduces `n / d` and normalizes `d` (coprime integer coefficients,
/// positive leading coefficient).
fn reduce(n: &Poly, d: &Poly) -> Result<(Poly, Poly)> {
    if d.is_zero() {
        return Err(Error::Domain("denominator is identically zero".into()));
    }
    let g = n.gcd(d);
    let (n, d) = if g.is_constant() {
        (n.clone(), d.clone())
    } else {
        (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
    };
    let dn = d.normalized();
    // d = λ · dn, so n / d = (n / λ) / dn.
    let (e, c) = d.leading().expect("nonzero");
    let lam = c / dn.terms()[e].clone();
    let n = n.scale(&(num_traits::one::<crate::poly::Q>() / lam));
    Ok((n, dn))
}

impl RationalMap {
    /// Components `num_i / den_i`, defined where every denominator and every
    /// extra condition is nonzero.
    pub fn new(source_dim: usize, fractions: Vec<(Poly, Poly)>, extra: impl IntoIterator<Item = Poly>) -> Result<Self> {
        let mut numerators = Vec::with_capacity(fractions.len());
        let mut denominators = Vec::with_capacity(fractions.len());
        let mut domain = Domain::total(source_dim);
        for (i, (n, d)) in fractions.iter().enumerate() {
            if n.nvars() != source_dim || d.nvars() != source_dim {
                return Err(Error::Mismatch(format!("component {i} is not over {source_dim} variables")));
            }
            let (n, d) = reduce(n, d)?;
            if !d.is_constant() {
                domain.insert(d.clone())?;
            }
            numerators.push(n);
            denominators.push(d);
        }
        for c in extra {
            if c.nvars() != source_dim {
                return Err(Error::Mismatch(format!("condition {c} is not over {source_dim} variables")));
            }
            domain.insert(c)?;
        }
        Ok(RationalMap { source_dim, numerators, denominators, domain })
    }

    pub fn from_poly(f: &PolyMap) -> Self {
        let m = f.source_dim();
        RationalMap {
            source_dim: m,
            numerators: f.components().to_vec(),
            denominators: vec![Poly::one(m); f.target_dim()],
            domain: Domain::total(m),
        }
    }

    pub fn identity(m: usize) -> Self {
        RationalMap::from_poly(&PolyMap::identity(m))
    }

    /// `id` restricted to `domain`: the restriction idempotent.
    pub fn restricted_identity(domain: &Domain) -> Self {
        let mut f = RationalMap::identity(domain.nvars());
        f.domain = domain.clone();
        f
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.numerators.len()
    }

    pub fn numerators(&self) -> &[Poly] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[Poly] {
        &self.denominators
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn is_total(&self) -> bool {
        self.domain.is_total()
    }

    /// A denominator or condition that is not a unit, if any.
    pub fn non_unit_witness(&self) -> Option<String> {
        if let Some((i, d)) = self.denominators.iter().enumerate().find(|(_, d)| !d.is_constant()) {
            return Some(format!("component {i} has non-unit denominator {d}"));
        }
        self.domain.conditions.first().map(|c| format!("restricted to {c} ≠ 0"))
    }

    pub fn polynomial_part(&self) -> Option<PolyMap> {
        if !self.is_total() {
            return None;
        }
        PolyMap::new(self.source_dim, self.numerators.clone()).ok()
    }

    /// `f̄`.
    pub fn restriction(&self) -> RationalMap {
        RationalMap::restricted_identity(&self.domain)
    }

    /// This map restricted further to `extra`.
    pub fn restrict(&self, extra: &Domain) -> Result<RationalMap> {
        let mut f = self.clone();
        f.domain = self.domain.union(extra)?;
        Ok(f)
    }

    fn common_denominator(&self) -> Poly {
        let mut l = Poly::one(self.source_dim);
        for d in &self.denominators {
            let g = l.gcd(d);
            l = (&l * &d.div_exact(&g).expect("gcd divides")).normalized();
        }
        l
    }

    /// `p ∘ self = P / L^k` with `L` the common denominator and `k = deg p`.
    fn homogenize(&self, p: &Poly, l: &Poly) -> (Poly, u32) {
        let k = p.total_degree();
        let m = self.source_dim;
        let scaled: Vec<Poly> = self
            .numerators
            .iter()
            .zip(&self.denominators)
            .map(|(n, d)| n * &l.div_exact(d).expect("common denominator"))
            .collect();
        let lpow: Vec<Poly> = (0..=k).map(|j| l.pow(j)).collect();
        let mut out = Poly::zero(m);
        for (e, c) in p.terms() {
            let deg: u32 = e.iter().sum();
            let mut t = &Poly::constant(m, c.clone()) * &lpow[(k - deg) as usize];
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = &t * &scaled[i].pow(ei);
                }
            }
            out = &out + &t;
        }
        (out, k)
    }

    /// `g ∘ f` in the restriction category: defined where `f` is and `g` is at `f`.
    pub fn compose(g: &RationalMap, f: &RationalMap) -> Result<RationalMap> {
        if g.source_dim != f.target_dim() {
            return Err(Error::Mismatch(format!(
                "cannot compose a map from ℚ^{} after a map into ℚ^{}",
                g.source_dim,
                f.target_dim()
            )));
        }
        let m = f.source_dim;
        let l = f.common_denominator();
        let lsq = l.squarefree_part();
        let mut domain = f.domain.clone();
        for c in &g.domain.conditions {
            let (cn, _) = f.homogenize(c, &l);
            if cn.is_zero() {
                return Err(Error::Domain(format!("condition {c} ≠ 0 never holds along the inner map")));
            }
            // Factors shared with L already hold on f's domain.
            let mut cn = cn.squarefree_part();
            let shared = cn.gcd(&lsq);
            if !shared.is_constant() {
                cn = cn.div_exact(&shared).expect("gcd divides");
            }
            if !cn.is_constant() {
                domain.insert(cn)?;
            }
        }
        let mut numerators = Vec::new();
        let mut denominators = Vec::new();
        for (n, d) in g.numerators.iter().zip(&g.denominators) {
            let (pn, kn) = f.homogenize(n, &l);
            let (pd, kd) = f.homogenize(d, &l);
            if pd.is_zero() {
                return Err(Error::Domain(format!("denominator {d} vanishes identically along the inner map")));
            }
            let (num, den) = if kd >= kn {
                (&pn * &l.pow(kd - kn), pd)
            } else {
                (pn, &pd * &l.pow(kn - kd))
            };
            let (num, den) = reduce(&num, &den)?;
            if !den.is_constant() {
                domain.insert(den.clone())?;
            }
            numerators.push(num);
            denominators.push(den);
        }
        debug_assert_eq!(domain.nvars, m);
        Ok(RationalMap { source_dim: m, numerators, denominators, domain })
    }

    /// `Tf(x, v) = (f(x), Σ_j ∂_j f(x) v_j)` by the quotient rule; the domain
    /// is `f`'s, read in the base coordinates.
    pub fn tangent_map(&self) -> RationalMap {
        let m = self.source_dim;
        let base: Vec<usize> = (0..m).collect();
        let up = |p: &Poly| p.rename(2 * m, &base);
        let mut numerators: Vec<Poly> = self.numerators.iter().map(up).collect();
        let mut denominators: Vec<Poly> = self.denominators.iter().map(up).collect();
        for (n, d) in self.numerators.iter().zip(&self.denominators) {
            let mut num = Poly::zero(2 * m);
            for j in 0..m {
                let dj = &(&n.derivative(j) * d) - &(n * &d.derivative(j));
                num = &num + &(&up(&dj) * &Poly::var(2 * m, m + j));
            }
            let den = up(&(d * d));
            let (num, den) = reduce(&num, &den).expect("square of a nonzero denominator");
            numerators.push(num);
            denominators.push(den);
        }
        RationalMap { source_dim: 2 * m, numerators, denominators, domain: self.domain.rename(2 * m, &base) }
    }

    /// Components `start..start + len`, with the same domain.
    pub fn block(&self, start: usize, len: usize) -> RationalMap {
        RationalMap {
            source_dim: self.source_dim,
            numerators: self.numerators[start..start + len].to_vec(),
            denominators: self.denominators[start..start + len].to_vec(),
            domain: self.domain.clone(),
        }
    }

    /// Whether the components agree as rational functions, ignoring domains.
    pub fn same_values(&self, other: &RationalMap) -> bool {
        self.source_dim == other.source_dim && self.numerators == other.numerators && self.denominators == other.denominators
    }

    /// `None` when equal as partial maps, otherwise a witness.
    pub fn difference(&self, other: &RationalMap) -> Option<String> {
        if self.source_dim != other.source_dim || self.target_dim() != other.target_dim() {
            return Some(format!(
                "ℚ^{} → ℚ^{} versus ℚ^{} → ℚ^{}",
                self.source_dim,
                self.target_dim(),
                other.source_dim,
                other.target_dim()
            ));
        }
        for i in 0..self.target_dim() {
            if self.numerators[i] != other.numerators[i] || self.denominators[i] != other.denominators[i] {
                return Some(format!(
                    "component {i}: ({}) / ({}) versus ({}) / ({})",
                    self.numerators[i], self.denominators[i], other.numerators[i], other.denominators[i]
                ));
            }
        }
        if self.domain != other.domain {
            return Some(format!("domains differ: {:?} versus {:?}", self.domain, other.domain));
        }
        None
    }

    pub fn to_json(&self) -> RationalMapJson {
        let numerators = PolyMap::new(self.source_dim, self.numerators.clone()).expect("shape").to_json();
        RationalMapJson {
            numerators,
            denominators: self.denominators.iter().map(Poly::to_terms_json).collect(),
            idempotents: self.domain.conditions.iter().map(Poly::to_terms_json).collect(),
        }
    }

    pub fn from_json(j: &RationalMapJson) -> Result<Self> {
        let nums = PolyMap::from_json(&j.numerators)?;
        let m = nums.source_dim();
        if j.denominators.len() != nums.target_dim() {
            return Err(Error::Parse(format!(
                "{} denominators for {} components",
                j.denominators.len(),
                nums.target_dim()
            )));
        }
        let dens = j
            .denominators
            .iter()
            .map(|t| Poly::from_terms_json(m, t))
            .collect::<Result<Vec<_>>>()?;
        let conds = j
            .idempotents
            .iter()
            .map(|t| Poly::from_terms_json(m, t))
            .collect::<Result<Vec<_>>>()?;
        RationalMap::new(m, nums.components().iter().cloned().zip(dens).collect(), conds)
    }
}

/// A numerator map, one denominator per component, and the domain conditions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RationalMapJson {
    pub numerators: PolyMapJson,
    pub denominators: Vec<Vec<TermJson>>,
    pub idempotents: Vec<Vec<TermJson>>,
}

impl Serialize for RationalMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RationalMapJson::deserialize(d)?;
        RationalMap::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self
            .numerators
            .iter()
            .zip(&self.denominators)
            .map(|(n, d)| if d.is_one_poly() { n.to_string() } else { format!("({n}) / ({d})") })
            .collect();
        write!(f, "ℚ^{} ⇀ ℚ^{}: ({})", self.source_dim, self.target_dim(), cs.join(", "))?;
        if !self.is_total() {
            write!(f, " on {:?}", self.domain)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

trait IsOne {
    fn is_one_poly(&self) -> bool;
}

impl IsOne for Poly {
    fn is_one_poly(&self) -> bool {
        *self == Poly::one(self.nvars())
    }
}

/// A random nonzero polynomial.
pub(crate) fn random_nonzero<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32) -> Poly {
    loop {
        let p = random_poly(rng, nvars, max_degree, 3);
        if !p.is_zero() {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn x1() -> Poly {
        Poly::var(1, 0)
    }

    #[test]
    fn reciprocal_squared() {
        let inv = RationalMap::new(1, vec![(Poly::one(1), x1())], []).unwrap();
        let twice = RationalMap::compose(&inv, &inv).unwrap();
        assert_eq!(twice.numerators(), &[x1()]);
        assert_eq!(twice.denominators(), &[Poly::one(1)]);
        assert_eq!(twice.domain().conditions(), &[x1()]);
        assert!(twice.difference(&RationalMap::identity(1)).is_some());
    }

    #[test]
    fn reciprocal_tangent() {
        let inv = RationalMap::new(1, vec![(Poly::one(1), x1())], []).unwrap();
        let t = inv.tangent_map();
        let (x, v) = (Poly::var(2, 0), Poly::var(2, 1));
        assert_eq!(t.numerators()[1], -&v);
        assert_eq!(t.denominators()[1], &x * &x);
        assert_eq!(t.domain().conditions(), &[x]);
    }

    #[test]
    fn normalization() {
        let x = x1();
        let f = RationalMap::new(1, vec![(x.scale(&q(2)), (&x * &x).scale(&q(-4)))], []).unwrap();
        assert_eq!(f.numerators()[0], Poly::constant(1, crate::poly::qr(-1, 2)));
        assert_eq!(f.denominators()[0], x);
    }

    #[test]
    fn coprime_basis() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let d = Domain::from_conditions(2, [&x * &y, &x * &x]).unwrap();
        assert_eq!(d.conditions().len(), 2);
        assert_eq!(d, Domain::from_conditions(2, [x.clone(), y.clone()]).unwrap());
        assert!(Domain::from_conditions(2, [Poly::zero(2)]).is_err());
    }

    #[test]
    fn empty_domain_rejected() {
        let inv = RationalMap::new(1, vec![(Poly::one(1), x1())], []).unwrap();
        let zero = RationalMap::new(1, vec![(Poly::zero(1), Poly::one(1))], []).unwrap();
        assert!(matches!(RationalMap::compose(&inv, &zero), Err(Error::Domain(_))));
    }

    #[test]
    fn json_round_trip() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let f = RationalMap::new(2, vec![(x.clone(), &y + &Poly::one(2)), (y.clone(), Poly::one(2))], [x]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("denominators"));
        let g: RationalMap = serde_json::from_str(&s).unwrap();
        assert!(f.difference(&g).is_none());
    }
}

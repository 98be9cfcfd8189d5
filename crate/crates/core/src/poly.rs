//! Exact multivariate polynomials over ℚ.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so the
//! representation is a normal form: equality of values is equality of
//! polynomials. The map order is lexicographic with `x0 > x1 > …`, which is
//! also the monomial order used for division.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Q::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Q) -> Self {
        let nvars = exps.len();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds a polynomial from raw terms, summing duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Result<Self> {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Invalid(format!(
                    "exponent vector of length {} in a polynomial of {} variables",
                    e.len(),
                    nvars
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Largest variable index that occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.involves(v))
    }

    /// Leading term in lexicographic order.
    pub fn leading(&self) -> Option<(&Vec<u32>, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * Q::from_integer(BigInt::from(e[var])));
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = q_to_f64(c);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= x.powi(k as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-embeds into `nvars` variables, variable `i` becoming `map[i]`.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Shifts into a larger variable space: variable `i` becomes `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Poly {
        let map: Vec<usize> = (0..self.nvars).map(|i| offset + i).collect();
        self.rename(nvars, &map)
    }

    /// Substitutes `args[i]` for variable `i`. All arguments share a variable count.
    pub fn substitute(&self, args: &[Poly], nvars: usize) -> Poly {
        assert_eq!(args.len(), self.nvars);
        for a in args {
            assert_eq!(a.nvars, nvars, "substitution arguments must share a variable count");
        }
        // Fast path: every argument is zero or a scaled single variable.
        let mut simple: Vec<Option<(usize, Q)>> = Vec::with_capacity(args.len());
        let mut all_simple = true;
        for a in args {
            if a.is_zero() {
                simple.push(None);
            } else if a.terms.len() == 1 {
                let (e, c) = a.terms.iter().next().unwrap();
                let deg: u32 = e.iter().sum();
                if deg == 1 {
                    let v = e.iter().position(|&k| k == 1).unwrap();
                    simple.push(Some((v, c.clone())));
                } else {
                    all_simple = false;
                    break;
                }
            } else {
                all_simple = false;
                break;
            }
        }
        if all_simple {
            let mut out = Poly::zero(nvars);
            'terms: for (e, c) in &self.terms {
                let mut e2 = vec![0; nvars];
                let mut coef = c.clone();
                for (i, &k) in e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    match &simple[i] {
                        None => continue 'terms,
                        Some((v, s)) => {
                            e2[*v] += k;
                            if !s.is_one() {
                                coef *= num_traits::pow(s.clone(), k as usize);
                            }
                        }
                    }
                }
                out.add_term(e2, coef);
            }
            return out;
        }
        let mut powers: Vec<Vec<Poly>> = args.iter().map(|a| vec![Poly::one(a.nvars), a.clone()]).collect();
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &args[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k];
                if t.is_zero() {
                    break;
                }
            }
            for (e2, c2) in t.terms {
                out.add_term(e2, c2);
            }
        }
        out
    }

    /// Coefficients in `var`, indexed by degree; entries no longer involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, d.nvars);
        let (ld_e, ld_c) = d.leading()?;
        let (ld_e, ld_c) = (ld_e.clone(), ld_c.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((e, c)) = rem.leading() {
            if e.iter().zip(&ld_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(&ld_e).map(|(a, b)| a - b).collect();
            let qc = c / &ld_c;
            let t = Poly::monomial(qe, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// The rational multiple with coprime integer coefficients and positive
    /// leading coefficient. Zero stays zero.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = (c * Q::from_integer(lcm.clone())).to_integer();
            g = g.gcd(&n);
        }
        let mut factor = Q::new(lcm, g);
        if self.leading().unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Greatest common divisor, normalized as in [`Poly::normalized`].
    pub fn gcd(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        gcd_rec(self, other).normalized()
    }

    /// Product of the distinct irreducible factors, normalized.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return if self.is_zero() {
                self.clone()
            } else {
                Poly::one(self.nvars)
            };
        }
        let mut g = self.clone();
        for v in 0..self.nvars {
            if g.is_constant() {
                break;
            }
            let d = self.derivative(v);
            if !d.is_zero() {
                g = gcd_rec(&g, &d);
            }
        }
        self.div_exact(&g.normalized())
            .expect("gcd divides its argument")
            .normalized()
    }

    pub fn to_terms_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(e, c)| TermJson(RationalJson::from(c), RationalJson::from(&Q::one()), e.clone()))
            .map(|t| t.normalize())
            .collect()
    }

    pub fn from_terms_json(nvars: usize, terms: &[TermJson]) -> Result<Poly> {
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let num = t.0.to_q()?;
            let den = t.1.to_q()?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator in coefficient".into()));
            }
            out.push((t.2.clone(), num / den));
        }
        Poly::from_terms(nvars, out)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

fn content_in(p: &Poly, var: usize) -> Poly {
    let mut g = Poly::zero(p.nvars);
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.normalized() } else { gcd_rec(&g, &c).normalized() };
        if g.is_constant() {
            return Poly::one(p.nvars);
        }
    }
    g
}

fn primitive_in(p: &Poly, var: usize) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").normalized()
}

/// Pseudo-remainder of `a` by `b` as polynomials in `var`.
fn prem(a: &Poly, b: &Poly, var: usize) -> Poly {
    let db = b.degree_in(var);
    let bc = b.coefficients_in(var);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    let n = a.nvars;
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coefficients_in(var)[dr as usize].clone();
        let mut shift = vec![0u32; n];
        shift[var] = dr - db;
        let xk = Poly::monomial(shift, Q::one());
        r = &(&lb * &r) - &(&(&lr * &xk) * b);
    }
    r
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars);
    }
    let var = a.max_var().max(b.max_var()).unwrap();
    if !a.involves(var) {
        return gcd_rec(a, &content_in(b, var));
    }
    if !b.involves(var) {
        return gcd_rec(&content_in(a, var), b);
    }
    let g_content = gcd_rec(&content_in(a, var), &content_in(b, var));
    let mut f = primitive_in(a, var);
    let mut g = primitive_in(b, var);
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        if !g.involves(var) {
            // A nonzero remainder free of `var` means the primitive parts are coprime.
            f = Poly::one(a.nvars);
            break;
        }
        let r = prem(&f, &g, var);
        f = g;
        g = primitive_in(&r, var);
    }
    let f = primitive_in(&f, var);
    (&f * &g_content).normalized()
}

impl<'a> Add for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch in addition");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch in subtraction");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch in product");
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

/// An integer in JSON: a number when it fits in `i64`, otherwise a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Text(String),
}

impl RationalJson {
    fn from_int(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => RationalJson::Int(v),
            None => RationalJson::Text(n.to_string()),
        }
    }

    pub fn to_q(&self) -> Result<Q> {
        match self {
            RationalJson::Int(v) => Ok(q(*v)),
            RationalJson::Text(s) => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad integer {n:?}")))?;
                    let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad integer {d:?}")))?;
                    if d.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(Q::new(n, d))
                } else {
                    let n: BigInt = s.trim().parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
                    Ok(Q::from_integer(n))
                }
            }
        }
    }
}

impl From<&Q> for RationalJson {
    fn from(x: &Q) -> Self {
        if x.is_integer() {
            RationalJson::from_int(x.numer())
        } else {
            RationalJson::Text(format!("{}/{}", x.numer(), x.denom()))
        }
    }
}

/// `[num, den, [e₁, …, e_m]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson(pub RationalJson, pub RationalJson, pub Vec<u32>);

impl TermJson {
    fn normalize(self) -> Self {
        let c = self.0.to_q().expect("serialized from a rational");
        TermJson(
            RationalJson::from_int(c.numer()),
            RationalJson::from_int(c.denom()),
            self.2,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn arithmetic_and_display() {
        let p = &(&x(2, 0) * &x(2, 1)) + &Poly::constant(2, qr(-1, 2));
        assert_eq!(p.to_string(), "x0*x1 - 1/2");
        assert_eq!(p.derivative(0), x(2, 1));
        assert_eq!(p.eval(&[q(2), q(3)]), qr(11, 2));
    }

    #[test]
    fn substitution_general_and_fast_paths() {
        let p = &x(1, 0) * &x(1, 0);
        let s = p.substitute(&[&x(2, 0) + &x(2, 1)], 2);
        let expect = &(&(&x(2, 0) * &x(2, 0)) + &(&x(2, 0) * &x(2, 1)).scale(&q(2))) + &(&x(2, 1) * &x(2, 1));
        assert_eq!(s, expect);
        let r = p.substitute(&[x(3, 2).scale(&q(-2))], 3);
        assert_eq!(r, (&x(3, 2) * &x(3, 2)).scale(&q(4)));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let f = &(&a * &a) * &b;
        let g = &a * &x(2, 0);
        assert_eq!(f.gcd(&g), a.normalized());
        assert_eq!(f.squarefree_part(), (&a * &b).normalized());
        assert_eq!(a.gcd(&b), Poly::one(2));
    }

    #[test]
    fn exact_division() {
        let a = &x(2, 0) + &x(2, 1);
        let f = &(&a * &a) * &x(2, 1);
        assert_eq!(f.div_exact(&a).unwrap(), &a * &x(2, 1));
        assert!(f.div_exact(&x(2, 0)).is_none());
    }

    #[test]
    fn json_terms_round_trip() {
        let p = &x(2, 0).scale(&qr(3, 7)) - &Poly::constant(2, q(5));
        let j = p.to_terms_json();
        assert_eq!(Poly::from_terms_json(2, &j).unwrap(), p);
    }
}

//! Smooth maps `ℝ^m → ℝ^n` as expression DAGs, with `T` realised both
//! symbolically (a forward-mode transform of the DAG) and operationally
//! (dual and hyper-dual evaluation).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model_poly::PolyMap;
use crate::poly::q_to_f64;
use crate::tangent_core::{TangentModel, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Node {
    Input { index: usize },
    Const { value: f64 },
    Add { lhs: usize, rhs: usize },
    Sub { lhs: usize, rhs: usize },
    Mul { lhs: usize, rhs: usize },
    Div { lhs: usize, rhs: usize },
    Neg { arg: usize },
    Sin { arg: usize },
    Cos { arg: usize },
    Exp { arg: usize },
    Log { arg: usize },
}

impl Node {
    fn children(&self) -> Vec<usize> {
        match *self {
            Node::Input { .. } | Node::Const { .. } => vec![],
            Node::Add { lhs, rhs }
            | Node::Sub { lhs, rhs }
            | Node::Mul { lhs, rhs }
            | Node::Div { lhs, rhs } => vec![lhs, rhs],
            Node::Neg { arg }
            | Node::Sin { arg }
            | Node::Cos { arg }
            | Node::Exp { arg }
            | Node::Log { arg } => vec![arg],
        }
    }

    fn remap(&self, f: impl Fn(usize) -> usize) -> Node {
        match *self {
            Node::Input { index } => Node::Input { index },
            Node::Const { value } => Node::Const { value },
            Node::Add { lhs, rhs } => Node::Add { lhs: f(lhs), rhs: f(rhs) },
            Node::Sub { lhs, rhs } => Node::Sub { lhs: f(lhs), rhs: f(rhs) },
            Node::Mul { lhs, rhs } => Node::Mul { lhs: f(lhs), rhs: f(rhs) },
            Node::Div { lhs, rhs } => Node::Div { lhs: f(lhs), rhs: f(rhs) },
            Node::Neg { arg } => Node::Neg { arg: f(arg) },
            Node::Sin { arg } => Node::Sin { arg: f(arg) },
            Node::Cos { arg } => Node::Cos { arg: f(arg) },
            Node::Exp { arg } => Node::Exp { arg: f(arg) },
            Node::Log { arg } => Node::Log { arg: f(arg) },
        }
    }
}

/// Scalars the DAG can be evaluated over.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;
    fn re(&self) -> f64;
    /// Applies a scalar function given its value and first two derivatives at `re`.
    fn lift(self, g: f64, d1: f64, d2: f64) -> Self;
}

impl Scalar for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn re(&self) -> f64 {
        *self
    }
    fn lift(self, g: f64, _: f64, _: f64) -> Self {
        g
    }
}

/// `re + ε·du` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub re: f64,
    pub du: f64,
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { re: self.re + o.re, du: self.du + o.du }
    }
}
impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { re: self.re - o.re, du: self.du - o.du }
    }
}
impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { re: self.re * o.re, du: self.re * o.du + self.du * o.re }
    }
}
impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { re: -self.re, du: -self.du }
    }
}
impl Scalar for Dual {
    fn constant(c: f64) -> Self {
        Dual { re: c, du: 0.0 }
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn lift(self, g: f64, d1: f64, _: f64) -> Self {
        Dual { re: g, du: d1 * self.du }
    }
}

/// `re + ε₁e1 + ε₂e2 + ε₁ε₂e12`: a dual number of dual numbers, flattened so
/// that the flip is a literal swap of `e1` and `e2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyper {
    pub re: f64,
    pub e1: f64,
    pub e2: f64,
    pub e12: f64,
}

impl Hyper {
    pub fn flip(self) -> Hyper {
        Hyper { re: self.re, e1: self.e2, e2: self.e1, e12: self.e12 }
    }
}

impl Add for Hyper {
    type Output = Hyper;
    fn add(self, o: Hyper) -> Hyper {
        Hyper { re: self.re + o.re, e1: self.e1 + o.e1, e2: self.e2 + o.e2, e12: self.e12 + o.e12 }
    }
}
impl Sub for Hyper {
    type Output = Hyper;
    fn sub(self, o: Hyper) -> Hyper {
        Hyper { re: self.re - o.re, e1: self.e1 - o.e1, e2: self.e2 - o.e2, e12: self.e12 - o.e12 }
    }
}
impl Mul for Hyper {
    type Output = Hyper;
    fn mul(self, o: Hyper) -> Hyper {
        Hyper {
            re: self.re * o.re,
            e1: self.re * o.e1 + self.e1 * o.re,
            e2: self.re * o.e2 + self.e2 * o.re,
            e12: self.re * o.e12 + self.e1 * o.e2 + self.e2 * o.e1 + self.e12 * o.re,
        }
    }
}
impl Neg for Hyper {
    type Output = Hyper;
    fn neg(self) -> Hyper {
        Hyper { re: -self.re, e1: -self.e1, e2: -self.e2, e12: -self.e12 }
    }
}
impl Scalar for Hyper {
    fn constant(c: f64) -> Self {
        Hyper { re: c, e1: 0.0, e2: 0.0, e12: 0.0 }
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn lift(self, g: f64, d1: f64, d2: f64) -> Self {
        Hyper {
            re: g,
            e1: d1 * self.e1,
            e2: d1 * self.e2,
            e12: d1 * self.e12 + d2 * self.e1 * self.e2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SmoothMapJson", into = "SmoothMapJson")]
pub struct SmoothMap {
    source_dim: usize,
    nodes: Vec<Node>,
    outputs: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SmoothMapJson {
    source_dim: usize,
    nodes: Vec<Node>,
    outputs: Vec<usize>,
}

impl TryFrom<SmoothMapJson> for SmoothMap {
    type Error = Error;
    fn try_from(j: SmoothMapJson) -> Result<Self> {
        SmoothMap::new(j.source_dim, j.nodes, j.outputs)
    }
}

impl From<SmoothMap> for SmoothMapJson {
    fn from(f: SmoothMap) -> Self {
        SmoothMapJson { source_dim: f.source_dim, nodes: f.nodes, outputs: f.outputs }
    }
}

impl SmoothMap {
    pub fn new(source_dim: usize, nodes: Vec<Node>, outputs: Vec<usize>) -> Result<Self> {
        for (i, n) in nodes.iter().enumerate() {
            if let Node::Input { index } = n {
                if *index >= source_dim {
                    return Err(Error::Invalid(format!("node {i} reads input {index} of {source_dim}")));
                }
            }
            if let Some(c) = n.children().into_iter().find(|&c| c >= i) {
                return Err(Error::Invalid(format!("node {i} refers forward to node {c}")));
            }
        }
        if let Some(o) = outputs.iter().find(|&&o| o >= nodes.len()) {
            return Err(Error::Invalid(format!("output refers to missing node {o}")));
        }
        Ok(SmoothMap { source_dim, nodes, outputs })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.outputs.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Linear coordinate map; `None` outputs zero.
    pub fn coordinate(m: usize, picks: &[Option<usize>]) -> SmoothMap {
        let mut b = Builder::new(m);
        let outs: Vec<usize> = picks
            .iter()
            .map(|p| match p {
                Some(i) => b.input(*i),
                None => b.constant(0.0),
            })
            .collect();
        b.finish(outs)
    }

    pub fn identity(m: usize) -> SmoothMap {
        SmoothMap::coordinate(m, &(0..m).map(Some).collect::<Vec<_>>())
    }

    pub fn from_poly(f: &PolyMap) -> SmoothMap {
        let m = f.source_dim();
        let mut b = Builder::new(m);
        let mut outs = Vec::new();
        for c in f.components() {
            let mut acc = b.constant(0.0);
            for (exps, coeff) in c.terms() {
                let mut t = b.constant(q_to_f64(coeff));
                for (i, &e) in exps.iter().enumerate() {
                    let xi = b.input(i);
                    for _ in 0..e {
                        t = b.mul(t, xi);
                    }
                }
                acc = b.add(acc, t);
            }
            outs.push(acc);
        }
        b.finish(outs)
    }

    pub fn eval_generic<N: Scalar>(&self, inputs: &[N]) -> Result<Vec<N>> {
        if inputs.len() != self.source_dim {
            return Err(Error::Mismatch(format!(
                "{} inputs for a map from ℝ^{}",
                inputs.len(),
                self.source_dim
            )));
        }
        let mut vals: Vec<N> = Vec::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            let v = match *n {
                Node::Input { index } => inputs[index],
                Node::Const { value } => N::constant(value),
                Node::Add { lhs, rhs } => vals[lhs] + vals[rhs],
                Node::Sub { lhs, rhs } => vals[lhs] - vals[rhs],
                Node::Mul { lhs, rhs } => vals[lhs] * vals[rhs],
                Node::Div { lhs, rhs } => {
                    let d = vals[rhs].re();
                    if d == 0.0 || !d.is_finite() {
                        return Err(Error::Domain(format!("node {i}: division by {d}")));
                    }
                    vals[lhs] * vals[rhs].lift(1.0 / d, -1.0 / (d * d), 2.0 / (d * d * d))
                }
                Node::Neg { arg } => -vals[arg],
                Node::Sin { arg } => {
                    let x = vals[arg].re();
                    vals[arg].lift(x.sin(), x.cos(), -x.sin())
                }
                Node::Cos { arg } => {
                    let x = vals[arg].re();
                    vals[arg].lift(x.cos(), -x.sin(), -x.cos())
                }
                Node::Exp { arg } => {
                    let e = vals[arg].re().exp();
                    vals[arg].lift(e, e, e)
                }
                Node::Log { arg } => {
                    let x = vals[arg].re();
                    if x.is_nan() || x <= 0.0 {
                        return Err(Error::Domain(format!("node {i}: log of {x}")));
                    }
                    vals[arg].lift(x.ln(), 1.0 / x, -1.0 / (x * x))
                }
            };
            vals.push(v);
        }
        Ok(self.outputs.iter().map(|&o| vals[o]).collect())
    }

    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.eval_generic(point)
    }

    /// `g ∘ f`.
    pub fn compose(g: &SmoothMap, f: &SmoothMap) -> Result<SmoothMap> {
        if f.target_dim() != g.source_dim {
            return Err(Error::Mismatch(format!(
                "cannot compose ℝ^{} → ℝ^{} after ℝ^{} → ℝ^{}",
                g.source_dim,
                g.target_dim(),
                f.source_dim,
                f.target_dim()
            )));
        }
        let mut nodes = f.nodes.clone();
        let mut remap = Vec::with_capacity(g.nodes.len());
        for n in &g.nodes {
            if let Node::Input { index } = n {
                remap.push(f.outputs[*index]);
            } else {
                nodes.push(n.remap(|c| remap[c]));
                remap.push(nodes.len() - 1);
            }
        }
        let outputs = g.outputs.iter().map(|&o| remap[o]).collect();
        SmoothMap::new(f.source_dim, nodes, outputs)
    }

    /// Outputs of all maps side by side; the maps must share a source.
    pub fn concat(maps: &[&SmoothMap]) -> Result<SmoothMap> {
        let m = maps.first().map(|f| f.source_dim).unwrap_or(0);
        let mut nodes = Vec::new();
        let mut outputs = Vec::new();
        for f in maps {
            if f.source_dim != m {
                return Err(Error::Mismatch("concatenated maps must share a source".into()));
            }
            let off = nodes.len();
            nodes.extend(f.nodes.iter().map(|n| n.remap(|c| c + off)));
            outputs.extend(f.outputs.iter().map(|o| o + off));
        }
        SmoothMap::new(m, nodes, outputs)
    }

    /// The outputs listed in `idx`, in that order.
    pub fn select(&self, idx: &[usize]) -> SmoothMap {
        SmoothMap {
            source_dim: self.source_dim,
            nodes: self.nodes.clone(),
            outputs: idx.iter().map(|&i| self.outputs[i]).collect(),
        }
    }

    /// Symbolic forward-mode transform: `(x, v) ↦ (f(x), Df(x)·v)`.
    pub fn tangent_map(&self) -> SmoothMap {
        let m = self.source_dim;
        let mut b = Builder { source_dim: 2 * m, nodes: self.nodes.clone() };
        let mut d: Vec<Option<usize>> = Vec::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            let di = match *n {
                Node::Input { index } => Some(b.input(m + index)),
                Node::Const { .. } => None,
                Node::Add { lhs, rhs } => b.opt_add(d[lhs], d[rhs]),
                Node::Sub { lhs, rhs } => {
                    let nr = d[rhs].map(|r| b.neg(r));
                    b.opt_add(d[lhs], nr)
                }
                Node::Mul { lhs, rhs } => {
                    let a = d[lhs].map(|dl| b.mul(dl, rhs));
                    let c = d[rhs].map(|dr| b.mul(lhs, dr));
                    b.opt_add(a, c)
                }
                Node::Div { lhs, rhs } => {
                    // (dl - (l/r)·dr) / r, reusing node i = l/r.
                    let t = d[rhs].map(|dr| {
                        let p = b.mul(i, dr);
                        b.neg(p)
                    });
                    b.opt_add(d[lhs], t).map(|num| b.div(num, rhs))
                }
                Node::Neg { arg } => d[arg].map(|da| b.neg(da)),
                Node::Sin { arg } => d[arg].map(|da| {
                    let c = b.push(Node::Cos { arg });
                    b.mul(c, da)
                }),
                Node::Cos { arg } => d[arg].map(|da| {
                    let s = b.push(Node::Sin { arg });
                    let ns = b.neg(s);
                    b.mul(ns, da)
                }),
                Node::Exp { arg } => d[arg].map(|da| b.mul(i, da)),
                Node::Log { arg } => d[arg].map(|da| b.div(da, arg)),
            };
            d.push(di);
        }
        let mut outs = self.outputs.clone();
        for &o in &self.outputs {
            let v = match d[o] {
                Some(x) => x,
                None => b.constant(0.0),
            };
            outs.push(v);
        }
        b.finish(outs)
    }

    fn render(&self, i: usize, out: &mut String) {
        use std::fmt::Write;
        let bin = |out: &mut String, l, op: &str, r| {
            out.push('(');
            self.render(l, out);
            let _ = write!(out, " {op} ");
            self.render(r, out);
            out.push(')');
        };
        let un = |out: &mut String, name: &str, a| {
            let _ = write!(out, "{name}(");
            self.render(a, out);
            out.push(')');
        };
        match self.nodes[i] {
            Node::Input { index } => {
                let _ = write!(out, "x{index}");
            }
            Node::Const { value } => {
                let _ = write!(out, "{value}");
            }
            Node::Add { lhs, rhs } => bin(out, lhs, "+", rhs),
            Node::Sub { lhs, rhs } => bin(out, lhs, "-", rhs),
            Node::Mul { lhs, rhs } => bin(out, lhs, "*", rhs),
            Node::Div { lhs, rhs } => bin(out, lhs, "/", rhs),
            Node::Neg { arg } => un(out, "-", arg),
            Node::Sin { arg } => un(out, "sin", arg),
            Node::Cos { arg } => un(out, "cos", arg),
            Node::Exp { arg } => un(out, "exp", arg),
            Node::Log { arg } => un(out, "log", arg),
        }
    }
}

impl fmt::Display for SmoothMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .outputs
            .iter()
            .map(|&o| {
                let mut s = String::new();
                self.render(o, &mut s);
                s
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Incremental DAG construction.
#[derive(Debug, Clone)]
pub struct Builder {
    source_dim: usize,
    nodes: Vec<Node>,
}

impl Builder {
    pub fn new(source_dim: usize) -> Self {
        Builder { source_dim, nodes: Vec::new() }
    }

    pub fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    pub fn input(&mut self, index: usize) -> usize {
        self.push(Node::Input { index })
    }
    pub fn constant(&mut self, value: f64) -> usize {
        self.push(Node::Const { value })
    }
    pub fn add(&mut self, lhs: usize, rhs: usize) -> usize {
        self.push(Node::Add { lhs, rhs })
    }
    pub fn sub(&mut self, lhs: usize, rhs: usize) -> usize {
        self.push(Node::Sub { lhs, rhs })
    }
    pub fn mul(&mut self, lhs: usize, rhs: usize) -> usize {
        self.push(Node::Mul { lhs, rhs })
    }
    pub fn div(&mut self, lhs: usize, rhs: usize) -> usize {
        self.push(Node::Div { lhs, rhs })
    }
    pub fn neg(&mut self, arg: usize) -> usize {
        self.push(Node::Neg { arg })
    }
    pub fn sin(&mut self, arg: usize) -> usize {
        self.push(Node::Sin { arg })
    }
    pub fn cos(&mut self, arg: usize) -> usize {
        self.push(Node::Cos { arg })
    }
    pub fn exp(&mut self, arg: usize) -> usize {
        self.push(Node::Exp { arg })
    }
    pub fn log(&mut self, arg: usize) -> usize {
        self.push(Node::Log { arg })
    }

    fn opt_add(&mut self, a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (Some(a), Some(b)) => Some(self.add(a, b)),
            (a, None) => a,
            (None, b) => b,
        }
    }

    pub fn finish(self, outputs: Vec<usize>) -> SmoothMap {
        SmoothMap::new(self.source_dim, self.nodes, outputs).expect("builder keeps the DAG ordered")
    }
}

/// `(f(x), Df(x)·v)` by dual-number evaluation.
pub fn dual_eval(f: &SmoothMap, point: &[f64], tangent: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if tangent.len() != point.len() {
        return Err(Error::Mismatch("point and tangent differ in dimension".into()));
    }
    let ins: Vec<Dual> = point.iter().zip(tangent).map(|(&re, &du)| Dual { re, du }).collect();
    let out = f.eval_generic(&ins)?;
    Ok((out.iter().map(|d| d.re).collect(), out.iter().map(|d| d.du).collect()))
}

/// The four `T²` components `(value, ε₁, ε₂, ε₁ε₂)` of `f` at
/// `x + ε₁a + ε₂b + ε₁ε₂q`.
pub fn hyper_eval(f: &SmoothMap, x: &[f64], a: &[f64], b: &[f64], q: &[f64]) -> Result<[Vec<f64>; 4]> {
    let m = x.len();
    if a.len() != m || b.len() != m || q.len() != m {
        return Err(Error::Mismatch("T² coordinates differ in dimension".into()));
    }
    let ins: Vec<Hyper> = (0..m).map(|i| Hyper { re: x[i], e1: a[i], e2: b[i], e12: q[i] }).collect();
    let out = f.eval_generic(&ins)?;
    Ok([
        out.iter().map(|h| h.re).collect(),
        out.iter().map(|h| h.e1).collect(),
        out.iter().map(|h| h.e2).collect(),
        out.iter().map(|h| h.e12).collect(),
    ])
}

/// Central finite difference `(f(x + hv) − f(x − hv)) / 2h`.
pub fn finite_difference(f: &SmoothMap, point: &[f64], tangent: &[f64], h: f64) -> Result<Vec<f64>> {
    let fwd: Vec<f64> = point.iter().zip(tangent).map(|(x, v)| x + h * v).collect();
    let bwd: Vec<f64> = point.iter().zip(tangent).map(|(x, v)| x - h * v).collect();
    let a = f.eval(&fwd)?;
    let b = f.eval(&bwd)?;
    Ok(a.iter().zip(&b).map(|(a, b)| (a - b) / (2.0 * h)).collect())
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// Floating model: equality is agreement at seeded sample points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothModel {
    pub samples: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for SmoothModel {
    fn default() -> Self {
        SmoothModel { samples: 32, tolerance: 1e-9, seed: 0x5eed }
    }
}

impl SmoothModel {
    pub fn sample_points(&self, dim: usize) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (dim as u64).wrapping_mul(0x9e37_79b9));
        (0..self.samples)
            .map(|_| (0..dim).map(|_| rng.gen_range(-1.5..1.5)).collect())
            .collect()
    }

    fn block_map(m: usize, nblocks_in: usize, out_blocks: &[Option<usize>]) -> SmoothMap {
        let mut picks = Vec::new();
        for ob in out_blocks {
            for j in 0..m {
                picks.push(ob.map(|b| b * m + j));
            }
        }
        SmoothMap::coordinate(nblocks_in * m, &picks)
    }
}

impl TangentModel for SmoothModel {
    type Obj = usize;
    type Mor = SmoothMap;

    fn name(&self) -> String {
        "smooth".into()
    }

    fn obj_eq(&self, a: &usize, b: &usize) -> bool {
        a == b
    }

    fn dom(&self, f: &SmoothMap) -> usize {
        f.source_dim
    }

    fn cod(&self, f: &SmoothMap) -> usize {
        f.target_dim()
    }

    fn identity(&self, m: &usize) -> SmoothMap {
        SmoothMap::identity(*m)
    }

    fn compose(&self, g: &SmoothMap, f: &SmoothMap) -> Result<SmoothMap> {
        SmoothMap::compose(g, f)
    }

    fn equals(&self, f: &SmoothMap, g: &SmoothMap) -> Verdict {
        if f.source_dim != g.source_dim || f.target_dim() != g.target_dim() {
            return Err(format!(
                "ℝ^{} → ℝ^{} versus ℝ^{} → ℝ^{}",
                f.source_dim,
                f.target_dim(),
                g.source_dim,
                g.target_dim()
            ));
        }
        let mut compared = 0;
        for pt in self.sample_points(f.source_dim) {
            match (f.eval(&pt), g.eval(&pt)) {
                (Ok(a), Ok(b)) => {
                    compared += 1;
                    for (i, (x, y)) in a.iter().zip(&b).enumerate() {
                        if !close(*x, *y, self.tolerance) {
                            return Err(format!("component {i} at {pt:?}: {x} versus {y}"));
                        }
                    }
                }
                (Err(_), Err(_)) => {}
                (Err(e), Ok(_)) | (Ok(_), Err(e)) => {
                    return Err(format!("only one side defined at {pt:?}: {e}"));
                }
            }
        }
        if compared == 0 {
            return Err("no sample point lies in both domains".into());
        }
        Ok(())
    }

    fn tangent_obj(&self, m: &usize) -> usize {
        2 * m
    }

    fn tangent_mor(&self, f: &SmoothMap) -> SmoothMap {
        f.tangent_map()
    }

    fn p(&self, m: &usize) -> SmoothMap {
        Self::block_map(*m, 2, &[Some(0)])
    }

    fn z(&self, m: &usize) -> SmoothMap {
        Self::block_map(*m, 1, &[Some(0), None])
    }

    fn s(&self, m: &usize) -> SmoothMap {
        let m = *m;
        let mut b = Builder::new(3 * m);
        let mut outs: Vec<usize> = (0..m).map(|j| b.input(j)).collect();
        for j in 0..m {
            let v = b.input(m + j);
            let w = b.input(2 * m + j);
            outs.push(b.add(v, w));
        }
        b.finish(outs)
    }

    fn l(&self, m: &usize) -> SmoothMap {
        Self::block_map(*m, 2, &[Some(0), None, None, Some(1)])
    }

    fn c(&self, m: &usize) -> SmoothMap {
        Self::block_map(*m, 4, &[Some(0), Some(2), Some(1), Some(3)])
    }

    fn n(&self, m: &usize) -> Option<SmoothMap> {
        let m = *m;
        let mut b = Builder::new(2 * m);
        let mut outs: Vec<usize> = (0..m).map(|j| b.input(j)).collect();
        for j in 0..m {
            let v = b.input(m + j);
            outs.push(b.neg(v));
        }
        Some(b.finish(outs))
    }

    fn pullback_obj(&self, m: &usize, n: usize) -> usize {
        (n + 1) * m
    }

    fn proj(&self, m: &usize, n: usize, k: usize) -> SmoothMap {
        assert!(k >= 1 && k <= n, "projection {k} of T_{n}");
        Self::block_map(*m, n + 1, &[Some(0), Some(k)])
    }

    fn tuple(&self, m: &usize, depth: usize, maps: &[SmoothMap]) -> Result<SmoothMap> {
        let m = *m;
        let first = maps.first().ok_or_else(|| Error::Precondition("empty tuple".into()))?;
        let nb = 1usize << depth;
        for f in maps {
            if f.target_dim() != nb * 2 * m || f.source_dim != first.source_dim {
                return Err(Error::Mismatch(format!("tupled map is not a map into T^{depth}(T ℝ^{m})")));
            }
        }
        let refs: Vec<&SmoothMap> = maps.iter().collect();
        let all = SmoothMap::concat(&refs)?;
        let w = nb * 2 * m;
        let mut idx = Vec::new();
        for b in 0..nb {
            let base: Vec<usize> = (b * 2 * m..b * 2 * m + m).collect();
            for k in 1..maps.len() {
                let other: Vec<usize> = base.iter().map(|i| k * w + i).collect();
                self.equals(&all.select(&base), &all.select(&other)).map_err(|e| {
                    Error::Precondition(format!("maps 1 and {} disagree over the base in block {b}: {e}", k + 1))
                })?;
            }
            idx.extend(base);
            for k in 0..maps.len() {
                idx.extend((b * 2 * m + m..(b + 1) * 2 * m).map(|i| k * w + i));
            }
        }
        Ok(all.select(&idx))
    }

    fn lift_extract(&self, m: &usize, h: &SmoothMap) -> Result<SmoothMap> {
        let m = *m;
        if h.target_dim() != 4 * m {
            return Err(Error::Mismatch(format!("not a map into T²ℝ^{m}")));
        }
        let eps2: Vec<usize> = (2 * m..3 * m).collect();
        let zero = SmoothMap::coordinate(h.source_dim, &vec![None; m]);
        self.equals(&h.select(&eps2), &zero).map_err(|w| {
            Error::Precondition(format!("side condition T p ∘ h = z ∘ p ∘ p_T ∘ h fails: ε₂ block {w}"))
        })?;
        let idx: Vec<usize> = (0..m).chain(3 * m..4 * m).collect();
        Ok(h.select(&idx))
    }
}

/// A random expression map with bounded depth whose values stay moderate on
/// the sampling box (no `log`, divisions only by `1 + y²`).
pub fn random_smooth_map<R: Rng>(rng: &mut R, m: usize, n: usize, depth: u32) -> SmoothMap {
    fn gen<R: Rng>(rng: &mut R, b: &mut Builder, m: usize, depth: u32) -> usize {
        if depth == 0 || rng.gen_bool(0.25) {
            return if m > 0 && rng.gen_bool(0.75) {
                let i = rng.gen_range(0..m);
                b.input(i)
            } else {
                let c = rng.gen_range(-3i32..=3) as f64 / rng.gen_range(1i32..=3) as f64;
                b.constant(c)
            };
        }
        match rng.gen_range(0..7) {
            0 => {
                let (x, y) = (gen(rng, b, m, depth - 1), gen(rng, b, m, depth - 1));
                b.add(x, y)
            }
            1 => {
                let (x, y) = (gen(rng, b, m, depth - 1), gen(rng, b, m, depth - 1));
                b.sub(x, y)
            }
            2 => {
                let (x, y) = (gen(rng, b, m, depth - 1), gen(rng, b, m, depth - 1));
                b.mul(x, y)
            }
            3 => {
                let x = gen(rng, b, m, depth - 1);
                b.sin(x)
            }
            4 => {
                let x = gen(rng, b, m, depth - 1);
                b.cos(x)
            }
            5 => {
                let x = gen(rng, b, m, depth - 1);
                let s = b.sin(x);
                b.exp(s)
            }
            _ => {
                let (x, y) = (gen(rng, b, m, depth - 1), gen(rng, b, m, depth - 1));
                let one = b.constant(1.0);
                let yy = b.mul(y, y);
                let den = b.add(one, yy);
                b.div(x, den)
            }
        }
    }
    let mut b = Builder::new(m);
    let outs = (0..n).map(|_| gen(rng, &mut b, m, depth)).collect();
    b.finish(outs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sin_map() -> SmoothMap {
        let mut b = Builder::new(1);
        let x = b.input(0);
        let s = b.sin(x);
        b.finish(vec![s])
    }

    #[test]
    fn sin_at_zero() {
        let (v, d) = dual_eval(&sin_map(), &[0.0], &[1.0]).unwrap();
        assert_eq!(v, vec![0.0]);
        assert_eq!(d, vec![1.0]);
    }

    #[test]
    fn log_domain_error() {
        let mut b = Builder::new(1);
        let x = b.input(0);
        let l = b.log(x);
        let f = b.finish(vec![l]);
        assert!(matches!(dual_eval(&f, &[-1.0], &[1.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn forward_references_rejected() {
        let bad = SmoothMap::new(1, vec![Node::Sin { arg: 1 }, Node::Input { index: 0 }], vec![0]);
        assert!(bad.is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = sin_map().tangent_map();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"op\":\"sin\""));
        let back: SmoothMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn symbolic_tangent_matches_dual() {
        let f = sin_map();
        let tf = f.tangent_map();
        let (v, d) = dual_eval(&f, &[0.7], &[2.0]).unwrap();
        assert_eq!(tf.eval(&[0.7, 2.0]).unwrap(), vec![v[0], d[0]]);
    }

    #[test]
    fn axioms_on_random_maps() {
        use crate::tangent_core::{check_tangent_axioms, Samples};
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let maps: Vec<SmoothMap> = (0..3).map(|_| random_smooth_map(&mut rng, 2, 2, 3)).collect();
        let rep = check_tangent_axioms(&SmoothModel::default(), &Samples::new(vec![1, 2], maps)).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }
}

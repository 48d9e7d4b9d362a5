//! Polynomial rings, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Term order on monomials of one ring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.iter().cmp(b.exps.iter()),
            MonomialOrder::DegRevLex => a.degree.cmp(&b.degree).then_with(|| revlex(a, b)),
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }
}

pub(crate) fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// How free-module terms are compared: position first, or monomial first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleOrderKind {
    #[default]
    PositionOverTerm,
    TermOverPosition,
}

/// Guards against runaway Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of S-pairs and generators processed by one Buchberger run.
    pub pair_budget: usize,
    /// Maximum (shifted) degree of an S-pair.
    pub degree_cap: Option<i64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { pair_budget: 2_000_000, degree_cap: None }
    }
}

#[derive(Debug)]
struct RingData {
    names: Vec<String>,
    field: FieldSpec,
    order: MonomialOrder,
    weights: Vec<u32>,
    module_order: ModuleOrderKind,
    limits: Limits,
}

/// A graded polynomial ring `k[X1,...,Xn]` with a fixed term order.
///
/// Cloning is cheap; all clones share one description.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl Ring {
    /// Standard-graded ring with degree-reverse-lex order.
    pub fn new<S: AsRef<str>>(names: &[S], field: FieldSpec) -> Result<Ring> {
        let w = vec![1; names.len()];
        Ring::with_options(names, field, MonomialOrder::DegRevLex, &w)
    }

    pub fn with_options<S: AsRef<str>>(
        names: &[S],
        field: FieldSpec,
        order: MonomialOrder,
        weights: &[u32],
    ) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidInput("a ring needs at least one variable".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidInput(format!("bad variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate variable `{n}`")));
            }
        }
        if weights.len() != names.len() || weights.contains(&0) {
            return Err(Error::InvalidInput("one positive weight per variable is required".into()));
        }
        Ok(Ring(Arc::new(RingData {
            names,
            field,
            order,
            weights: weights.to_vec(),
            module_order: ModuleOrderKind::default(),
            limits: Limits::default(),
        })))
    }

    /// Same ring with different resource limits.
    pub fn with_limits(&self, limits: Limits) -> Ring {
        self.rebuild(|d| d.limits = limits)
    }

    /// Same ring with a different free-module order.
    pub fn with_module_order(&self, kind: ModuleOrderKind) -> Ring {
        self.rebuild(|d| d.module_order = kind)
    }

    fn rebuild(&self, f: impl FnOnce(&mut RingData)) -> Ring {
        let mut d = RingData {
            names: self.0.names.clone(),
            field: self.0.field,
            order: self.0.order,
            weights: self.0.weights.clone(),
            module_order: self.0.module_order,
            limits: self.0.limits,
        };
        f(&mut d);
        Ring(Arc::new(d))
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn field(&self) -> FieldSpec {
        self.0.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn module_order(&self) -> ModuleOrderKind {
        self.0.module_order
    }

    pub fn limits(&self) -> Limits {
        self.0.limits
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial { exps: SmallVec::from_elem(0, self.nvars()), degree: 0 }
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut m = self.one_monomial();
        m.exps[i] = 1;
        m.degree = self.0.weights[i];
        m
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        assert_eq!(exps.len(), self.nvars(), "exponent vector length");
        let degree = exps.iter().zip(&self.0.weights).map(|(e, w)| e * w).sum();
        Monomial { exps: SmallVec::from_slice(exps), degree }
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.0.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.0.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub(crate) fn same(&self, other: &Ring) -> bool {
        self == other
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.names == other.0.names
                && self.0.field == other.0.field
                && self.0.order == other.0.order
                && self.0.weights == other.0.weights)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.0.field, self.0.names.join(","))
    }
}

/// A monomial with its weighted degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u32; 6]>,
    degree: u32,
}

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: SmallVec<[u32; 6]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().zip(weights).map(|(e, w)| e * w).sum();
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: SmallVec<[u32; 6]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        let degree = exps.iter().zip(weights).map(|(e, w)| e * w).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables occurring in the monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial { exps: self.exps.iter().map(|e| e * k).collect(), degree: self.degree * k }
    }
}

//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::ring::{Monomial, Ring};

/// A polynomial as a strictly descending list of terms with nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic; fails when the operands live in different rings.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    if !a.ring.same(&b.ring) {
        return Err(Error::RingMismatch(format!("{:?} vs {:?}", a.ring, b.ring)));
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    })
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Polynomial {
        Polynomial::monomial(ring, ring.one_monomial(), c)
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Ring, i: usize) -> Polynomial {
        Polynomial::monomial(ring, ring.var_monomial(i), ring.field().one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Scalar) -> Polynomial {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|(_, c)| c.is_zero()) {
                out.pop();
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Parses a polynomial in the textual grammar of the crate.
    pub fn parse(ring: &Ring, s: &str) -> Result<Polynomial> {
        crate::parse::parse_polynomial(ring, s)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// `(true, Some(d))` when every term has weighted degree `d`; the zero
    /// polynomial is homogeneous without a degree.
    pub fn is_homogeneous(&self) -> (bool, Option<u32>) {
        let Some((m, _)) = self.terms.first() else {
            return (true, None);
        };
        let d = m.degree();
        (self.terms.iter().all(|(m, _)| m.degree() == d), Some(d))
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.is_homogeneous() {
            (true, d) => d,
            _ => None,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert!(self.ring.same(&other.ring), "ring mismatch");
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { c.neg() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        self.terms[i].1.sub(&other.terms[j].1)
                    } else {
                        self.terms[i].1.add(&other.terms[j].1)
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert!(self.ring.same(&other.ring), "ring mismatch");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.push((a.mul(b), ca.mul(cb)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// True when the polynomial lies in the ideal generated by the variables.
    pub fn in_irrelevant_ideal(&self) -> bool {
        self.terms.iter().all(|(m, _)| !m.is_one())
    }

    /// True when the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = self.ring.fmt_monomial(m);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use proptest::prelude::*;

    fn qxy() -> Ring {
        Ring::new(&["X", "Y"], FieldSpec::Rational).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = qxy();
        let prod = poly_arith(&p(&r, "X+Y"), &p(&r, "X-Y"), ArithOp::Mul).unwrap();
        assert_eq!(prod, p(&r, "X^2-Y^2"));
        assert!(p(&r, "X").mul(&Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn characteristic_two() {
        let r = Ring::new(&["X"], FieldSpec::prime(2).unwrap()).unwrap();
        assert_eq!(p(&r, "(X+1)*(X+1)"), p(&r, "X^2+1"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = qxy();
        let s = Ring::new(&["X", "Z"], FieldSpec::Rational).unwrap();
        assert!(matches!(
            poly_arith(&p(&r, "X"), &p(&s, "Z"), ArithOp::Add),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn homogeneity() {
        let r = qxy();
        assert_eq!(p(&r, "X^2 + X*Y").is_homogeneous(), (true, Some(2)));
        assert!(!p(&r, "X + 1").is_homogeneous().0);
        assert_eq!(p(&r, "Y^2").is_homogeneous(), (true, Some(2)));
    }

    #[test]
    fn display_round_trip() {
        let r = qxy();
        for s in ["-3*X^2*Y + 1/2*Y^3", "X - Y", "0", "-1"] {
            let f = p(&r, s);
            assert_eq!(p(&r, &f.to_string()), f);
        }
        assert_eq!(p(&r, "-3*X^2*Y + 1/2*Y^3").to_string(), "-3*X^2*Y + 1/2*Y^3");
    }

    fn arb_hom(deg: u32) -> impl Strategy<Value = Vec<(u32, i64)>> {
        proptest::collection::vec((0..=deg, -3i64..4), 1..4)
    }

    fn build(r: &Ring, deg: u32, t: &[(u32, i64)]) -> Polynomial {
        Polynomial::from_terms(
            r,
            t.iter().map(|&(a, c)| (r.monomial(&[a, deg - a]), r.field().from_i64(c))).collect(),
        )
    }

    proptest! {
        #[test]
        fn multiplication_commutative_associative(a in arb_hom(2), b in arb_hom(1), c in arb_hom(3)) {
            let r = qxy();
            let (a, b, c) = (build(&r, 2, &a), build(&r, 1, &b), build(&r, 3, &c));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&b)), a.mul(&b).add(&a.mul(&b)));
        }
    }
}

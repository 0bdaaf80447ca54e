//! The algebra generated by `x1..xm` and `d1..dm` over the rationals, with
//! `di*xi = xi*di + 1` and all other pairs commuting.
//!
//! Elements are kept in normal order (all `x` factors left of all `d`
//! factors), stored as a sorted map from exponent pairs to nonzero
//! coefficients. Products re-normalize eagerly through
//! `d^b x^c = sum_k C(b,k) C(c,k) k! x^(c-k) d^(b-k)` applied per axis.
//!
//! Grading: `deg xi = 1`, `deg di = -1`. The Euler element `sum xi*di` has
//! degree 0; the Fourier swap sends `xi -> di`, `di -> -xi` and is an
//! automorphism (it preserves the defining relations).

mod action;
mod parse;

pub use action::{action_matrix, apply, ActionOverflow, MonomialWindow};
pub use parse::{parse_element, WeylParseError};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rat::{binomial, factorial, format_rat, Rat};

/// Exponent pair: `x` exponents then `d` exponents, each of length `m`.
pub type Monomial = (Vec<u32>, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedDegree {
    Homogeneous(i64),
    Inhomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeylError {
    ArityMismatch { left: usize, right: usize },
    InvalidIndex { index: usize, m: usize },
    InvalidArity,
}

impl core::fmt::Display for WeylError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            WeylError::ArityMismatch { left, right } => {
                write!(f, "elements live in different algebras: m={left} vs m={right}")
            }
            WeylError::InvalidIndex { index, m } => {
                write!(f, "generator index {index} out of range for m={m}")
            }
            WeylError::InvalidArity => write!(f, "number of variables must be at least 1"),
        }
    }
}

/// A normally ordered element. The zero element has an empty term map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    m: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl WeylElement {
    pub fn zero(m: usize) -> Self {
        WeylElement {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(m: usize, value: Rat) -> Self {
        let mut e = Self::zero(m);
        if !value.is_zero() {
            e.terms.insert((vec![0; m], vec![0; m]), value);
        }
        e
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, Rat::one())
    }

    /// The generator `x(index)`, 1-based index.
    pub fn xgen(m: usize, index: usize) -> Result<Self, WeylError> {
        if index == 0 || index > m {
            return Err(WeylError::InvalidIndex { index, m });
        }
        let mut alpha = vec![0u32; m];
        alpha[index - 1] = 1;
        let mut e = Self::zero(m);
        e.terms.insert((alpha, vec![0; m]), Rat::one());
        Ok(e)
    }

    /// The generator `d(index)`, 1-based index.
    pub fn dgen(m: usize, index: usize) -> Result<Self, WeylError> {
        if index == 0 || index > m {
            return Err(WeylError::InvalidIndex { index, m });
        }
        let mut beta = vec![0u32; m];
        beta[index - 1] = 1;
        let mut e = Self::zero(m);
        e.terms.insert((vec![0; m], beta), Rat::one());
        Ok(e)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, key: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check_arity(rhs)?;
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> WeylElement {
        WeylElement {
            m: self.m,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &WeylElement) -> Result<WeylElement, WeylError> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &Rat) -> WeylElement {
        if s.is_zero() {
            return Self::zero(self.m);
        }
        WeylElement {
            m: self.m,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    fn check_arity(&self, rhs: &WeylElement) -> Result<(), WeylError> {
        if self.m != rhs.m {
            return Err(WeylError::ArityMismatch {
                left: self.m,
                right: rhs.m,
            });
        }
        Ok(())
    }

    /// Product with eager re-normalization.
    pub fn multiply(&self, rhs: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check_arity(rhs)?;
        let m = self.m;
        let mut out = WeylElement::zero(m);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                // x^a1 d^b1 x^a2 d^b2: commute d^b1 past x^a2 axis by axis.
                // Accumulate (k-vector choices, coefficient) products.
                let mut partial: Vec<(Vec<u32>, Rat)> = vec![(Vec::with_capacity(m), c1 * c2)];
                for i in 0..m {
                    let b = b1[i];
                    let c = a2[i];
                    let kmax = b.min(c);
                    let mut next = Vec::with_capacity(partial.len() * (kmax as usize + 1));
                    for (ks, coeff) in &partial {
                        for k in 0..=kmax {
                            let f = binomial(b, k) * binomial(c, k) * factorial(k);
                            let mut ks2 = ks.clone();
                            ks2.push(k);
                            next.push((ks2, coeff * Rat::from_integer(f)));
                        }
                    }
                    partial = next;
                }
                for (ks, coeff) in partial {
                    let alpha: Vec<u32> = (0..m).map(|i| a1[i] + a2[i] - ks[i]).collect();
                    let beta: Vec<u32> = (0..m).map(|i| b1[i] + b2[i] - ks[i]).collect();
                    out.add_term((alpha, beta), coeff);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<WeylElement, WeylError> {
        let mut acc = WeylElement::one(self.m);
        for _ in 0..n {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Degree with `deg x = 1`, `deg d = -1`. The zero element reports
    /// `Homogeneous(0)` (it is homogeneous of every degree).
    pub fn degree(&self) -> GradedDegree {
        let mut it = self.terms.keys().map(|(a, b)| {
            a.iter().map(|&v| v as i64).sum::<i64>() - b.iter().map(|&v| v as i64).sum::<i64>()
        });
        match it.next() {
            None => GradedDegree::Homogeneous(0),
            Some(d0) => {
                if it.all(|d| d == d0) {
                    GradedDegree::Homogeneous(d0)
                } else {
                    GradedDegree::Inhomogeneous
                }
            }
        }
    }

    /// Image under the algebra map `xi -> di`, `di -> -xi`.
    pub fn fourier(&self) -> WeylElement {
        self.map_generators(|m, i| Self::dgen(m, i + 1).unwrap(), |m, i| {
            Self::xgen(m, i + 1).unwrap().neg()
        })
    }

    /// Image under the inverse map `xi -> -di`, `di -> xi`.
    pub fn fourier_inverse(&self) -> WeylElement {
        self.map_generators(
            |m, i| Self::dgen(m, i + 1).unwrap().neg(),
            |m, i| Self::xgen(m, i + 1).unwrap(),
        )
    }

    /// Applies an algebra map given by images of the generators. Each normal
    /// monomial is the corresponding product of generators, so its image is
    /// the product of the images taken in the same order.
    fn map_generators(
        &self,
        x_img: impl Fn(usize, usize) -> WeylElement,
        d_img: impl Fn(usize, usize) -> WeylElement,
    ) -> WeylElement {
        let m = self.m;
        let mut out = WeylElement::zero(m);
        for ((alpha, beta), coeff) in &self.terms {
            let mut acc = WeylElement::scalar(m, coeff.clone());
            for i in 0..m {
                if alpha[i] > 0 {
                    acc = acc.multiply(&x_img(m, i).pow(alpha[i]).unwrap()).unwrap();
                }
            }
            for i in 0..m {
                if beta[i] > 0 {
                    acc = acc.multiply(&d_img(m, i).pow(beta[i]).unwrap()).unwrap();
                }
            }
            out = out.add(&acc).unwrap();
        }
        out
    }

    /// Canonical text form: terms in descending monomial order, factors as
    /// `x1^2*d3`, coefficients in `p/q` form with `1*` elided.
    pub fn render(&self) -> String {
        use core::fmt::Write as _;
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (idx, (key, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = crate::rat::is_negative(coeff);
            let abs = if neg { -coeff } else { coeff.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else if neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let factors = render_factors(key);
            if factors.is_empty() {
                let _ = write!(s, "{}", format_rat(&abs));
            } else if abs.is_one() {
                s.push_str(&factors);
            } else {
                let _ = write!(s, "{}*{}", format_rat(&abs), factors);
            }
        }
        s
    }
}

fn render_factors(key: &Monomial) -> String {
    use core::fmt::Write as _;
    let (alpha, beta) = key;
    let mut s = String::new();
    let push = |name: char, i: usize, e: u32, s: &mut String| {
        if e == 0 {
            return;
        }
        if !s.is_empty() {
            s.push('*');
        }
        let _ = write!(s, "{}{}", name, i + 1);
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
    };
    for (i, &e) in alpha.iter().enumerate() {
        push('x', i, e, &mut s);
    }
    for (i, &e) in beta.iter().enumerate() {
        push('d', i, e, &mut s);
    }
    s
}

/// The Euler element `x1*d1 + ... + xm*dm`. Requires `m >= 1`.
pub fn euler(m: usize) -> Result<WeylElement, WeylError> {
    if m == 0 {
        return Err(WeylError::InvalidArity);
    }
    let mut e = WeylElement::zero(m);
    for i in 0..m {
        let mut alpha = vec![0u32; m];
        let mut beta = vec![0u32; m];
        alpha[i] = 1;
        beta[i] = 1;
        e.add_term((alpha, beta), Rat::one());
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn x(m: usize, i: usize) -> WeylElement {
        WeylElement::xgen(m, i).unwrap()
    }
    fn d(m: usize, i: usize) -> WeylElement {
        WeylElement::dgen(m, i).unwrap()
    }

    #[test]
    fn defining_relation() {
        // d1 * x1 = x1*d1 + 1
        let got = d(1, 1).multiply(&x(1, 1)).unwrap();
        let expect = x(1, 1)
            .multiply(&d(1, 1))
            .unwrap()
            .add(&WeylElement::one(1))
            .unwrap();
        assert_eq!(got, expect);
        // mixed pairs commute
        let a = d(2, 1).multiply(&x(2, 2)).unwrap();
        let b = x(2, 2).multiply(&d(2, 1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn second_order_normal_form() {
        // d1^2 * x1 = x1*d1^2 + 2*d1
        let lhs = d(1, 1).pow(2).unwrap().multiply(&x(1, 1)).unwrap();
        let rhs = x(1, 1)
            .multiply(&d(1, 1).pow(2).unwrap())
            .unwrap()
            .add(&d(1, 1).scale(&rat_int(2)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_element_and_fourier() {
        let m = 3;
        let e = euler(m).unwrap();
        assert_eq!(e.degree(), GradedDegree::Homogeneous(0));
        // fourier(euler) = -euler - m
        let f = e.fourier();
        let expect = e
            .neg()
            .add(&WeylElement::scalar(m, rat_int(-(m as i64))))
            .unwrap();
        assert_eq!(f, expect);
        assert!(euler(0).is_err());
    }

    #[test]
    fn fourier_inverse_round_trip() {
        let m = 2;
        let e = x(m, 1)
            .multiply(&d(m, 2))
            .unwrap()
            .add(&d(m, 1).pow(2).unwrap())
            .unwrap()
            .add(&WeylElement::scalar(m, crate::rat::rat(3, 2)))
            .unwrap();
        assert_eq!(e.fourier().fourier_inverse(), e);
        assert_eq!(e.fourier_inverse().fourier(), e);
    }

    #[test]
    fn fourier_is_multiplicative() {
        let m = 2;
        let a = d(m, 1).multiply(&x(m, 1)).unwrap();
        let b = x(m, 2).pow(2).unwrap();
        let ab = a.multiply(&b).unwrap();
        assert_eq!(
            ab.fourier(),
            a.fourier().multiply(&b.fourier()).unwrap()
        );
    }

    #[test]
    fn degree_reporting() {
        assert_eq!(x(2, 1).degree(), GradedDegree::Homogeneous(1));
        assert_eq!(d(2, 2).degree(), GradedDegree::Homogeneous(-1));
        let mixed = x(2, 1).add(&d(2, 1)).unwrap();
        assert_eq!(mixed.degree(), GradedDegree::Inhomogeneous);
        assert_eq!(WeylElement::zero(2).degree(), GradedDegree::Homogeneous(0));
    }

    #[test]
    fn render_canonical_forms() {
        let e = d(1, 1).multiply(&x(1, 1)).unwrap();
        assert_eq!(e.render(), "x1*d1 + 1");
        assert_eq!(x(1, 1).multiply(&x(1, 1)).unwrap().render(), "x1^2");
        assert_eq!(WeylElement::zero(1).render(), "0");
        let neg = x(2, 2).scale(&rat_int(-1)).add(&d(2, 1).scale(&crate::rat::rat(1, 2))).unwrap();
        assert_eq!(neg.render(), "-x2 + 1/2*d1");
    }

    #[test]
    fn arity_mismatch_rejected() {
        assert!(x(1, 1).multiply(&x(2, 1)).is_err());
        assert!(WeylElement::xgen(2, 3).is_err());
        assert!(WeylElement::dgen(2, 0).is_err());
    }
}

//! Action of normally ordered elements on a finite window of monomials.
//!
//! The context is a list of exponent vectors `v` in `Z^m`, standing for the
//! monomials `X^v` of a localization. Generators act by the power rule:
//! `xi . X^v = X^(v+ei)` and `di . X^v = v_i X^(v-ei)`. A term
//! `x^a d^b` therefore acts in closed form, with coefficient the product of
//! falling factorials `v_i (v_i - 1) ... (v_i - b_i + 1)` and target
//! `v - b + a`; no intermediate monomial is materialized, so applying a
//! product agrees with applying the factors in sequence whenever neither
//! escapes the window.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rat::{falling_factorial, Rat};

use super::WeylElement;

/// Ordered basis of monomial exponent vectors with O(log n) lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialWindow {
    m: usize,
    members: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
}

impl MonomialWindow {
    /// Builds a window from distinct exponent vectors, keeping their order.
    pub fn new(m: usize, members: Vec<Vec<i64>>) -> Self {
        let mut index = BTreeMap::new();
        for (i, v) in members.iter().enumerate() {
            assert_eq!(v.len(), m, "exponent vector arity mismatch");
            let prev = index.insert(v.clone(), i);
            assert!(prev.is_none(), "duplicate window member");
        }
        MonomialWindow { m, members, index }
    }

    /// All integer vectors in the box `[-b, b]^m`, in ascending lex order.
    pub fn cube(m: usize, b: i64) -> Self {
        let mut members = Vec::new();
        let mut cur = alloc::vec![-b; m];
        loop {
            members.push(cur.clone());
            let mut i = m;
            loop {
                if i == 0 {
                    return Self::new(m, members);
                }
                i -= 1;
                if cur[i] < b {
                    cur[i] += 1;
                    for v in cur.iter_mut().skip(i + 1) {
                        *v = -b;
                    }
                    break;
                }
            }
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, i: usize) -> &[i64] {
        &self.members[i]
    }

    pub fn position(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionOverflow {
    /// First multidegree outside the window that received a nonzero
    /// coefficient.
    pub multidegree: Vec<i64>,
}

impl core::fmt::Display for ActionOverflow {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "action leaves the window at multidegree {:?}", self.multidegree)
    }
}

/// Applies `elem` to the vector `coeffs` written in the window basis.
///
/// Errors if any nonzero output coefficient lands outside the window. A zero
/// coefficient (for instance `di` acting on a monomial with `v_i = 0`) never
/// overflows, regardless of where the formal target would lie.
pub fn apply(
    elem: &WeylElement,
    window: &MonomialWindow,
    coeffs: &[Rat],
) -> Result<Vec<Rat>, ActionOverflow> {
    assert_eq!(elem.m(), window.m(), "element and window arity differ");
    assert_eq!(coeffs.len(), window.len(), "coefficient vector length");
    let m = window.m();
    let mut out = alloc::vec![Rat::zero(); window.len()];
    for ((alpha, beta), c) in elem.terms() {
        for (pos, coeff) in coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let v = window.member(pos);
            let mut ff = BigInt::one();
            for i in 0..m {
                if beta[i] > 0 {
                    ff *= falling_factorial(v[i], beta[i]);
                    if ff.is_zero() {
                        break;
                    }
                }
            }
            if ff.is_zero() {
                continue;
            }
            let target: Vec<i64> = (0..m)
                .map(|i| v[i] - beta[i] as i64 + alpha[i] as i64)
                .collect();
            match window.position(&target) {
                Some(t) => {
                    out[t] += coeff * c * Rat::from_integer(ff);
                }
                None => {
                    return Err(ActionOverflow {
                        multidegree: target,
                    })
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of `elem` on the window basis (columns indexed by window members),
/// when the action stays inside the window.
pub fn action_matrix(
    elem: &WeylElement,
    window: &MonomialWindow,
) -> Result<crate::linalg::RatMatrix, ActionOverflow> {
    let n = window.len();
    let mut mat = crate::linalg::RatMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = alloc::vec![Rat::zero(); n];
        e[j] = Rat::one();
        let col = apply(elem, window, &e)?;
        for (i, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                mat.set(i, j, v);
            }
        }
    }
    Ok(mat)
}

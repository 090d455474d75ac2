//! Sparse multivariate polynomials.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector under the plain
//! structural order, which makes equality, addition and multiplication
//! independent of any monomial order. Leading-term queries take the
//! ring's order as an argument instead; at the sizes this crate works
//! with, scanning for the maximum is cheaper than keeping several
//! order-specific representations around.

use std::collections::BTreeMap;

use super::scalar::{is_display_negative, FieldKind, Scalar};

/// Exponent vector; the length is the ambient arity.
pub type Expo = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Expo, Scalar>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Polynomial {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    pub fn one(arity: usize, kind: FieldKind) -> Polynomial {
        Polynomial::constant(arity, Scalar::one(kind))
    }

    pub fn variable(arity: usize, index: usize, kind: FieldKind) -> Polynomial {
        assert!(index < arity, "variable index out of range");
        let mut e = vec![0; arity];
        e[index] = 1;
        Polynomial::monomial(arity, e, Scalar::one(kind))
    }

    pub fn monomial(arity: usize, expo: Expo, c: Scalar) -> Polynomial {
        assert_eq!(expo.len(), arity);
        let mut p = Polynomial::zero(arity);
        if !c.is_zero() {
            p.terms.insert(expo, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, expo: &[u32]) -> Option<&Scalar> {
        self.terms.get(expo)
    }

    /// The constant term if the polynomial is constant (possibly zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => None, // zero: caller decides which field's zero to use
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.iter().all(|&x| x == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u64).sum())
            .max()
    }

    pub fn add_term(&mut self, expo: Expo, c: Scalar) {
        assert_eq!(expo.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in self.terms.iter() {
            out.terms.insert(e.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        let mut out = Polynomial::zero(self.arity);
        for (e, k) in self.terms.iter() {
            out.terms.insert(e.clone(), k.mul(c));
        }
        out
    }

    pub fn mul_monomial(&self, expo: &[u32], c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        let mut out = Polynomial::zero(self.arity);
        for (e, k) in self.terms.iter() {
            let sum: Expo = e.iter().zip(expo).map(|(a, b)| a + b).collect();
            out.terms.insert(sum, k.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in self.terms.iter() {
            for (f, d) in other.terms.iter() {
                let sum: Expo = e.iter().zip(f).map(|(a, b)| a + b).collect();
                out.add_term(sum, c.mul(d));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let kind = self
            .terms
            .values()
            .next()
            .map(|c| c.kind())
            .unwrap_or(FieldKind::Q);
        let mut out = Polynomial::one(self.arity, kind);
        if n == 0 {
            return out;
        }
        if self.is_zero() {
            return Polynomial::zero(self.arity);
        }
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`. All images must share
    /// one arity, which becomes the arity of the result.
    pub fn substitute(&self, images: &[Polynomial], kind: FieldKind) -> Polynomial {
        assert_eq!(images.len(), self.arity, "one image per variable required");
        let out_arity = images.first().map(|p| p.arity).unwrap_or(0);
        let mut out = Polynomial::zero(out_arity);
        for (e, c) in self.terms.iter() {
            let mut term = Polynomial::constant(out_arity, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&images[i].pow(exp));
                }
            }
            out = out.add(&term);
        }
        // Normalize the zero polynomial's field representation.
        let _ = kind;
        out
    }

    /// Reinterprets the polynomial in a ring with `new_arity` variables,
    /// sending variable `i` to variable `var_map[i]`.
    pub fn embed(&self, new_arity: usize, var_map: &[usize]) -> Polynomial {
        assert_eq!(var_map.len(), self.arity);
        let mut out = Polynomial::zero(new_arity);
        for (e, c) in self.terms.iter() {
            let mut ne = vec![0u32; new_arity];
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    assert!(var_map[i] < new_arity);
                    ne[var_map[i]] += exp;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        assert!(index < self.arity);
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in self.terms.iter() {
            let exp = e[index];
            if exp == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[index] -= 1;
            let kind = c.kind();
            out.add_term(ne, c.mul(&Scalar::from_i64(kind, exp as i64)));
        }
        out
    }

    /// The coefficient field of the polynomial, when it has any terms.
    pub fn kind(&self) -> Option<FieldKind> {
        self.terms.values().next().map(|c| c.kind())
    }

    /// Renders the polynomial with the given variable names, terms
    /// ordered by `cmp` descending. Deterministic for fixed inputs.
    pub fn display_with(
        &self,
        vars: &[String],
        cmp: impl Fn(&[u32], &[u32]) -> std::cmp::Ordering,
    ) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut order: Vec<&Expo> = self.terms.keys().collect();
        order.sort_by(|a, b| cmp(b, a));
        let mut out = String::new();
        for (i, e) in order.iter().enumerate() {
            let c = &self.terms[*e];
            let neg = is_display_negative(c);
            let mag = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_string(e, vars);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

fn monomial_string(e: &[u32], vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &exp) in e.iter().enumerate() {
        if exp == 1 {
            parts.push(vars[i].clone());
        } else if exp > 1 {
            parts.push(format!("{}^{}", vars[i], exp));
        }
    }
    parts.join("*")
}

/// Exponent-wise divisibility of monomials.
pub fn monomial_divides(d: &[u32], m: &[u32]) -> bool {
    d.iter().zip(m).all(|(a, b)| a <= b)
}

/// Exponent-wise quotient; caller guarantees divisibility.
pub fn monomial_quotient(m: &[u32], d: &[u32]) -> Expo {
    m.iter().zip(d).map(|(a, b)| a - b).collect()
}

/// Exponent-wise least common multiple.
pub fn monomial_lcm(a: &[u32], b: &[u32]) -> Expo {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

//! Monomial orders on exponent vectors.
//!
//! Rings that present an algebra over a base compare the fiber block
//! of an exponent vector first and the base block second, so the fiber
//! variables dominate. That is exactly what makes normal forms of
//! fiber-finite quotients read off as base-linear combinations of
//! standard fiber monomials.

use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
}

impl MonomialOrder {
    /// Compares two exponent vectors of equal length under `self`.
    ///
    /// Variables earlier in the vector are heavier: in `Lex`, `x > y`
    /// when `x` is listed before `y`.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::Lex => {
                for (ea, eb) in a.iter().zip(b) {
                    match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::DegRevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    other => return other,
                }
                // Same degree: the monomial with the smaller exponent in
                // the last position where they differ is the larger one.
                for (ea, eb) in a.iter().zip(b).rev() {
                    match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Block comparison: the slice from `split` onward (fiber block) is
    /// compared first, ties decided on the leading `split` entries.
    pub fn cmp_blocked(&self, split: usize, a: &[u32], b: &[u32]) -> Ordering {
        match self.cmp(&a[split..], &b[split..]) {
            Ordering::Equal => self.cmp(&a[..split], &b[..split]),
            other => other,
        }
    }
}

/// A monomial order together with the base/fiber split of the ambient
/// variable list. `split == 0` is the classical, unblocked case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermOrder {
    pub order: MonomialOrder,
    pub split: usize,
}

impl TermOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        if self.split == 0 {
            self.order.cmp(a, b)
        } else {
            self.order.cmp_blocked(self.split, a, b)
        }
    }
}

impl std::fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_prefers_earlier_variables() {
        let o = MonomialOrder::Lex;
        // x vs y^2 in k[x, y]: x wins.
        assert_eq!(o.cmp(&[1, 0], &[0, 2]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1], &[1, 2]), Ordering::Less);
    }

    #[test]
    fn degrevlex_degree_first_then_reverse() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&[0, 2], &[1, 0]), Ordering::Greater); // degree wins
        // x*z vs y^2 in k[x,y,z]: equal degree, last differing slot is z
        // where x*z has 1 > 0, so x*z is smaller.
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        // x vs y: last differing slot is y; x has the smaller entry, so x > y.
        assert_eq!(o.cmp(&[1, 0], &[0, 1]), Ordering::Greater);
    }

    #[test]
    fn blocked_comparison_dominates_on_fiber() {
        let o = MonomialOrder::DegRevLex;
        // Variables (a | x): a^5 < x even though a^5 has higher degree.
        assert_eq!(o.cmp_blocked(1, &[5, 0], &[0, 1]), Ordering::Less);
        assert_eq!(o.cmp_blocked(1, &[2, 1], &[1, 1]), Ordering::Greater);
    }
}

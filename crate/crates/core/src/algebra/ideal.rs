//! Ideals in (quotient) polynomial rings: membership, colon ideals,
//! regular-sequence certification, monomial bases, and unit inversion.
//!
//! Everything here works over a `Ring` that may itself be a quotient;
//! the ring's defining relations are folded into every Groebner basis,
//! so "ideal" always means "ideal of the quotient ring", represented by
//! its preimage in the ambient polynomial ring.

use super::groebner::groebner_basis;
use super::module::{
    module_groebner_over, module_normal_form, module_standard_monomials, syzygies, ModuleElt,
};
use super::poly::{monomial_divides, Expo, Polynomial};
use super::ring::Ring;
use crate::error::{AlgebraError, Result};

/// An ideal of a (possibly quotient) ring, carrying the reduced
/// Groebner basis of its ambient preimage. Reduced bases are unique
/// for a fixed order, so two ideals are equal iff their `gb` agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: &[Polynomial]) -> Ideal {
        let gens: Vec<Polynomial> = gens.iter().map(|g| ring.nf(g)).collect();
        let mut all: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        all.extend(ring.relation_basis().iter().cloned());
        let gb = groebner_basis(&all, &ring.term_order());
        Ideal {
            ring: ring.clone(),
            gens,
            gb,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Groebner basis of the ambient preimage (ring relations
    /// included).
    pub fn gb(&self) -> &[Polynomial] {
        &self.gb
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        super::groebner::normal_form(p, &self.gb, &self.ring.term_order())
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gb.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    /// Standard monomials of `ring / self` over the ground field, in
    /// ascending term order; `None` when infinite dimensional.
    pub fn monomial_basis(&self) -> Option<Vec<Expo>> {
        standard_monomials_from_gb(&self.ring, &self.gb)
    }

    pub fn k_dim(&self) -> Option<usize> {
        self.monomial_basis().map(|b| b.len())
    }
}

/// Generators of the colon ideal `(I : f) = { a : a*f in I }`, with
/// `I` generated by `gens` in the given (possibly quotient) ring.
pub fn colon_ideal(ring: &Ring, gens: &[Polynomial], f: &Polynomial) -> Vec<Polynomial> {
    let mut rows = Vec::with_capacity(gens.len() + 1);
    rows.push(ModuleElt::from_comps(vec![ring.nf(f)]));
    for g in gens {
        rows.push(ModuleElt::from_comps(vec![ring.nf(g)]));
    }
    let syz = syzygies(ring, &rows);
    let mut out = Vec::new();
    for s in syz {
        let a = ring.nf(s.comp(0));
        if !a.is_zero() && !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

/// Certifies that `ts` is a regular sequence on the ring: each `ts[i]`
/// must be a non zero divisor modulo the ideal of its predecessors.
/// On failure reports the offending index together with a witness
/// element that multiplies `ts[i]` into the smaller ideal without
/// lying in it.
pub fn check_regular_sequence(ring: &Ring, ts: &[Polynomial]) -> Result<()> {
    for i in 0..ts.len() {
        let prior = &ts[..i];
        let ideal = Ideal::new(ring, prior);
        for c in colon_ideal(ring, prior, &ts[i]) {
            if !ideal.contains(&c) {
                return Err(AlgebraError::NotRegular {
                    index: i,
                    witness: ring.display(&c),
                });
            }
        }
    }
    Ok(())
}

/// Standard monomials of a quotient, given a Groebner basis that
/// already folds in the ring relations.
fn standard_monomials_from_gb(ring: &Ring, gb: &[Polynomial]) -> Option<Vec<Expo>> {
    let rows: Vec<ModuleElt> = gb
        .iter()
        .map(|g| ModuleElt::from_comps(vec![g.clone()]))
        .collect();
    let std = module_standard_monomials(ring, &rows, 1)?;
    Some(std.into_iter().map(|(_, e)| e).collect())
}

/// A free-module basis of `R / (extra)` over the base ring of `R`,
/// realized by monomials in the fiber variables.
///
/// `R` is presented as an algebra over its base with the fiber block
/// dominant in the term order. The quotient is free over the base with
/// the standard fiber monomials as basis precisely when every leading
/// monomial of the defining Groebner basis involves only base
/// variables (and then comes from the base's own relations) or only
/// fiber variables. Finiteness additionally requires a pure power of
/// each fiber variable among the leading monomials.
#[derive(Debug, Clone)]
pub struct RelativeBasis {
    ring: Ring,
    gb: Vec<Polynomial>,
    monomials: Vec<Expo>,
}

impl RelativeBasis {
    pub fn new(ring: &Ring, extra: &[Polynomial]) -> Result<RelativeBasis> {
        let split = ring.base_arity();
        let arity = ring.arity();
        let ord = ring.term_order();
        let gb = if extra.is_empty() {
            ring.relation_basis().to_vec()
        } else {
            let mut all: Vec<Polynomial> = extra.iter().map(|g| ring.nf(g)).collect();
            all.retain(|g| !g.is_zero());
            all.extend(ring.relation_basis().iter().cloned());
            groebner_basis(&all, &ord)
        };

        let base = ring.base_or_field();
        let mut fiber_lms: Vec<Expo> = Vec::new();
        for g in &gb {
            let (lm, _) = super::groebner::leading_term(g, &ord);
            let base_support = lm[..split].iter().any(|&e| e > 0);
            let fiber_support = lm[split..].iter().any(|&e| e > 0);
            if base_support && fiber_support {
                return Err(AlgebraError::MixedLeadingTerm {
                    term: ring.display(&Polynomial::monomial(
                        arity,
                        lm.clone(),
                        crate::algebra::scalar::Scalar::one(ring.field()),
                    )),
                });
            }
            if fiber_support {
                fiber_lms.push(lm[split..].to_vec());
            } else if !base_support {
                // Constant leading term: the quotient is the zero ring.
                fiber_lms.push(vec![0; arity - split]);
            } else {
                // Base-only leading monomial: legitimate only when the
                // element is induced from the base's own relations.
                let restricted = restrict_base_poly(g, split);
                match restricted {
                    Some(p) if base.is_zero_class(&p) => {}
                    _ => {
                        return Err(AlgebraError::Other(format!(
                            "relation `{}` constrains the base beyond its own \
                             presentation; the quotient is not free over the base",
                            ring.display(g)
                        )));
                    }
                }
            }
        }

        // Finiteness: a pure power of every fiber variable.
        let fiber_arity = arity - split;
        let mut bounds = vec![None; fiber_arity];
        let mut zero_ring = false;
        for lm in &fiber_lms {
            if lm.iter().all(|&e| e == 0) {
                zero_ring = true;
                break;
            }
            let nz: Vec<usize> = (0..fiber_arity).filter(|&v| lm[v] > 0).collect();
            if nz.len() == 1 {
                let v = nz[0];
                let b: &mut Option<u32> = &mut bounds[v];
                *b = Some(b.map_or(lm[v], |old: u32| old.min(lm[v])));
            }
        }
        let monomials = if zero_ring {
            Vec::new()
        } else {
            for (v, b) in bounds.iter().enumerate() {
                if b.is_none() {
                    return Err(AlgebraError::NotFiniteOverBase {
                        var: ring.vars()[split + v].clone(),
                    });
                }
            }
            let bounds: Vec<u32> = bounds.into_iter().map(|b| b.unwrap()).collect();
            let mut out: Vec<Expo> = Vec::new();
            let mut stack = vec![Vec::<u32>::new()];
            while let Some(prefix) = stack.pop() {
                if prefix.len() == fiber_arity {
                    if !fiber_lms.iter().any(|lm| monomial_divides(lm, &prefix)) {
                        let mut full = vec![0u32; split];
                        full.extend_from_slice(&prefix);
                        out.push(full);
                    }
                    continue;
                }
                let v = prefix.len();
                for e in (0..bounds[v]).rev() {
                    let mut next = prefix.clone();
                    next.push(e);
                    stack.push(next);
                }
            }
            out.sort_by(|a, b| ord.cmp(a, b));
            out
        };

        Ok(RelativeBasis {
            ring: ring.clone(),
            gb,
            monomials,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Basis monomials as full-arity exponent vectors (base part zero),
    /// ascending in the ring's term order.
    pub fn monomials(&self) -> &[Expo] {
        &self.monomials
    }

    pub fn monomial_polys(&self) -> Vec<Polynomial> {
        self.monomials
            .iter()
            .map(|e| {
                Polynomial::monomial(
                    self.ring.arity(),
                    e.clone(),
                    crate::algebra::scalar::Scalar::one(self.ring.field()),
                )
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of_one(&self) -> Option<usize> {
        self.monomials.iter().position(|e| e.iter().all(|&x| x == 0))
    }

    /// Normal form modulo the defining ideal of the quotient.
    pub fn nf(&self, p: &Polynomial) -> Polynomial {
        super::groebner::normal_form(p, &self.gb, &self.ring.term_order())
    }

    /// Coordinates of `p` in the basis, as elements of the base ring.
    pub fn coefficients(&self, p: &Polynomial) -> Vec<Polynomial> {
        let split = self.ring.base_arity();
        let base = self.ring.base_or_field();
        let nf = self.nf(p);
        let mut coords = vec![Polynomial::zero(split); self.monomials.len()];
        for (expo, c) in nf.terms() {
            let fiber_part: Expo = {
                let mut f = vec![0u32; split];
                f.extend_from_slice(&expo[split..]);
                f
            };
            let idx = self
                .monomials
                .iter()
                .position(|m| *m == fiber_part)
                .expect("normal-form term outside the fiber basis");
            let base_expo: Expo = expo[..split].to_vec();
            coords[idx] = coords[idx].add(&Polynomial::monomial(split, base_expo, c.clone()));
        }
        coords.into_iter().map(|p| base.nf(&p)).collect()
    }

    /// Rebuilds an element from base-ring coordinates.
    pub fn from_coefficients(&self, coords: &[Polynomial]) -> Polynomial {
        assert_eq!(coords.len(), self.monomials.len());
        let split = self.ring.base_arity();
        let arity = self.ring.arity();
        let var_map: Vec<usize> = (0..split).collect();
        let mut acc = Polynomial::zero(arity);
        for (c, m) in coords.iter().zip(&self.monomials) {
            let lifted = c.embed(arity, &var_map);
            let mono = Polynomial::monomial(
                arity,
                m.clone(),
                crate::algebra::scalar::Scalar::one(self.ring.field()),
            );
            acc = acc.add(&lifted.mul(&mono));
        }
        self.nf(&acc)
    }
}

/// Restricts a polynomial supported on the base block to base arity;
/// `None` if it touches fiber variables.
fn restrict_base_poly(p: &Polynomial, split: usize) -> Option<Polynomial> {
    let mut out = Polynomial::zero(split);
    for (expo, c) in p.terms() {
        if expo[split..].iter().any(|&e| e > 0) {
            return None;
        }
        out = out.add(&Polynomial::monomial(split, expo[..split].to_vec(), c.clone()));
    }
    Some(out)
}

/// Is `d` a unit of the ring?
pub fn is_unit(ring: &Ring, d: &Polynomial) -> bool {
    let d = ring.nf(d);
    if d.is_zero() {
        return false;
    }
    if d.is_constant() {
        return true;
    }
    if !ring.has_relations() {
        return false;
    }
    Ideal::new(ring, &[d]).is_unit_ideal()
}

/// Multiplicative inverse of a unit, computed from a membership
/// certificate for `1` in the ideal `(d) +` relations.
pub fn invert_unit(ring: &Ring, d: &Polynomial) -> Result<Polynomial> {
    let d = ring.nf(d);
    if d.is_zero() {
        return Err(AlgebraError::NotAUnit("0".to_string()));
    }
    if let Some(c) = d.as_constant() {
        let inv = c
            .inv()
            .map_err(|_| AlgebraError::NotAUnit(ring.display(&d)))?;
        return Ok(ring.constant(inv));
    }
    if !ring.has_relations() {
        return Err(AlgebraError::NotAUnit(ring.display(&d)));
    }
    // Track the cofactor of d with a tag component: reducing (1 | 0)
    // against the row (d | 1) and the folded relations drives the
    // first component to zero exactly when d is a unit, and leaves
    // minus the inverse in the tag.
    let row = ModuleElt::from_comps(vec![d.clone(), ring.one()]);
    let gb = module_groebner_over(ring, &[row], 2);
    let target = ModuleElt::from_comps(vec![ring.one(), ring.zero()]);
    let rem = module_normal_form(&target, &gb, &ring.term_order());
    if !rem.comp(0).is_zero() {
        return Err(AlgebraError::NotAUnit(ring.display(&d)));
    }
    let inv = ring.nf(&rem.comp(1).neg());
    debug_assert!(ring.classes_equal(&inv.mul(&d), &ring.one()));
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::order::MonomialOrder;
    use crate::algebra::ring::RingPresentation;
    use crate::algebra::scalar::FieldKind;

    fn qxy() -> Ring {
        RingPresentation::polynomial(
            FieldKind::Q,
            vec!["x".into(), "y".into()],
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    #[test]
    fn colon_of_product_ideal_by_sum() {
        // (xy) : (x + y) = (xy): x+y is regular modulo (xy)? No:
        // (x+y)*xy = x^2 y + x y^2 in (xy); colon contains xy itself.
        // Hand check: a(x+y) in (xy) iff a in (xy).
        let r = qxy();
        let xy = r.parse("x*y").unwrap();
        let f = r.parse("x + y").unwrap();
        let colon = colon_ideal(&r, &[xy.clone()], &f);
        let lhs = Ideal::new(&r, &colon);
        let rhs = Ideal::new(&r, &[xy]);
        assert_eq!(lhs.gb(), rhs.gb());
    }

    #[test]
    fn regular_sequence_accepts_and_rejects() {
        let r = qxy();
        let x = r.parse("x").unwrap();
        let y = r.parse("y").unwrap();
        let xy = r.parse("x*y").unwrap();
        assert!(check_regular_sequence(&r, &[x.clone(), y.clone()]).is_ok());
        // (x*y, x+y) is regular: the colon test above shows x+y is a
        // non zero divisor modulo (x*y).
        let sum = r.parse("x + y").unwrap();
        assert!(check_regular_sequence(&r, &[xy.clone(), sum]).is_ok());
        // (x, x*y) is not regular: x*y is already zero modulo (x), so
        // even 1 multiplies it into the prior ideal.
        let err = check_regular_sequence(&r, &[x.clone(), xy]).unwrap_err();
        match err {
            AlgebraError::NotRegular { index, witness } => {
                assert_eq!(index, 1);
                assert_eq!(witness, "1");
            }
            other => panic!("unexpected error {other}"),
        }
        // (x^2, x) fails with the informative witness x: x*x lies in
        // (x^2) while x does not.
        let x2 = r.parse("x^2").unwrap();
        let err = check_regular_sequence(&r, &[x2, x]).unwrap_err();
        match err {
            AlgebraError::NotRegular { index, witness } => {
                assert_eq!(index, 1);
                assert_eq!(witness, "x");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn monomial_basis_of_twisted_pair_quotient_has_four_elements() {
        let r = qxy();
        let i = Ideal::new(
            &r,
            &[r.parse("x^2 - y").unwrap(), r.parse("y^2 - x").unwrap()],
        );
        let basis = i.monomial_basis().unwrap();
        // {1, x, y, xy}: four affine intersection points counted with
        // multiplicity (Bezout 2*2).
        assert_eq!(basis.len(), 4);
        assert!(basis.contains(&vec![0, 0]));
        assert!(basis.contains(&vec![1, 0]));
        assert!(basis.contains(&vec![0, 1]));
        assert!(basis.contains(&vec![1, 1]));
    }

    #[test]
    fn relative_basis_over_parameter_line() {
        // R = Q[a][x] / (x^2 - a): free of rank 2 over Q[a].
        let base = RingPresentation::polynomial(
            FieldKind::Q,
            vec!["a".into()],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let r = RingPresentation::algebra_over_parsed(&base, &["x"], &["x^2 - a"]).unwrap();
        let basis = RelativeBasis::new(&r, &[]).unwrap();
        assert_eq!(basis.dim(), 2);
        assert_eq!(basis.monomials(), &[vec![0, 0], vec![0, 1]]);
        // x^3 = a*x: coefficients (0, a).
        let coords = basis.coefficients(&r.parse("x^3").unwrap());
        assert_eq!(base.display(&coords[0]), "0");
        assert_eq!(base.display(&coords[1]), "a");
        let back = basis.from_coefficients(&coords);
        assert!(r.classes_equal(&back, &r.parse("x^3").unwrap()));
    }

    #[test]
    fn relative_basis_detects_infinite_and_mixed() {
        let base = RingPresentation::polynomial(
            FieldKind::Q,
            vec!["a".into()],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        // Free polynomial fiber: not finite over the base.
        let r = RingPresentation::algebra_over(&base, vec!["x".into()], vec![]).unwrap();
        match RelativeBasis::new(&r, &[]) {
            Err(AlgebraError::NotFiniteOverBase { var }) => assert_eq!(var, "x"),
            other => panic!("unexpected {other:?}"),
        }
        // Mixed leading term a*x (fiber block dominant makes lm(ax - 1)
        // contain x, and the element is neither pure base nor fiber).
        let r2 = RingPresentation::algebra_over_parsed(&base, &["x"], &["a*x - 1"]).unwrap();
        match RelativeBasis::new(&r2, &[]) {
            Err(AlgebraError::MixedLeadingTerm { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invert_unit_in_artinian_quotient() {
        // Q[s]/(s^2): 1 + s is a unit with inverse 1 - s.
        let r = RingPresentation::quotient_parsed(
            FieldKind::Q,
            &["s"],
            MonomialOrder::DegRevLex,
            &["s^2"],
        )
        .unwrap();
        let u = r.parse("1 + s").unwrap();
        let inv = invert_unit(&r, &u).unwrap();
        assert_eq!(r.display(&inv), "-s + 1");
        assert!(r.classes_equal(&inv.mul(&u), &r.one()));
        // s is not a unit.
        assert!(!is_unit(&r, &r.parse("s").unwrap()));
        assert!(matches!(
            invert_unit(&r, &r.parse("s").unwrap()),
            Err(AlgebraError::NotAUnit(_))
        ));
    }
}

//! Finitely presented rings and ring maps.
//!
//! A presentation is `k[vars] / (relations)` over an exact field `k`,
//! optionally structured as an algebra over a base presentation: the
//! base variables come first in the variable list and the term order
//! weighs the fiber block above the base block. Reduced Groebner bases
//! of the relation ideal are computed once, at construction, and every
//! value in this crate is immutable afterwards, so sharing a ring
//! across threads is safe.

use std::fmt;
use std::sync::Arc;

use super::groebner::{groebner_basis, leading_term, normal_form};
use super::order::{MonomialOrder, TermOrder};
use super::parse::{parse_polynomial, PolyParseError};
use super::poly::{Expo, Polynomial};
use super::scalar::{FieldKind, Scalar};
use crate::error::{AlgebraError, Result};

pub type Ring = Arc<RingPresentation>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    field: FieldKind,
    vars: Vec<String>,
    base_arity: usize,
    base: Option<Ring>,
    order: MonomialOrder,
    /// Relations introduced at this presentation level.
    own_relations: Vec<Polynomial>,
    /// Base relations (embedded) followed by the ones above.
    all_relations: Vec<Polynomial>,
    /// Reduced Groebner basis of `all_relations`.
    gb: Vec<Polynomial>,
}

impl RingPresentation {
    /// The field itself, viewed as a ring with no variables.
    pub fn field_ring(field: FieldKind) -> Ring {
        Arc::new(RingPresentation {
            field,
            vars: Vec::new(),
            base_arity: 0,
            base: None,
            order: MonomialOrder::DegRevLex,
            own_relations: Vec::new(),
            all_relations: Vec::new(),
            gb: Vec::new(),
        })
    }

    pub fn polynomial(field: FieldKind, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        RingPresentation::quotient(field, vars, order, Vec::new())
    }

    pub fn quotient(
        field: FieldKind,
        vars: Vec<String>,
        order: MonomialOrder,
        relations: Vec<Polynomial>,
    ) -> Result<Ring> {
        check_var_names(&vars)?;
        for r in &relations {
            if r.arity() != vars.len() {
                return Err(AlgebraError::ArityMismatch {
                    expected: vars.len(),
                    got: r.arity(),
                });
            }
        }
        let ord = TermOrder { order, split: 0 };
        let gb = groebner_basis(&relations, &ord);
        Ok(Arc::new(RingPresentation {
            field,
            vars,
            base_arity: 0,
            base: None,
            order,
            own_relations: relations.clone(),
            all_relations: relations,
            gb,
        }))
    }

    /// Like [`RingPresentation::quotient`] but with relations given as
    /// source text in the listed variables.
    pub fn quotient_parsed(
        field: FieldKind,
        vars: &[&str],
        order: MonomialOrder,
        relations: &[&str],
    ) -> Result<Ring> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut rels = Vec::with_capacity(relations.len());
        for text in relations {
            let p = parse_polynomial(text, &names, field)
                .map_err(|e| AlgebraError::Other(format!("relation `{text}`: {e}")))?;
            rels.push(p);
        }
        RingPresentation::quotient(field, names, order, rels)
    }

    /// Like [`RingPresentation::algebra_over`] but with relations given
    /// as source text in the full (base then fiber) variable list.
    pub fn algebra_over_parsed(
        base: &Ring,
        fiber_vars: &[&str],
        fiber_relations: &[&str],
    ) -> Result<Ring> {
        let mut names = base.vars.clone();
        names.extend(fiber_vars.iter().map(|s| s.to_string()));
        let mut rels = Vec::with_capacity(fiber_relations.len());
        for text in fiber_relations {
            let p = parse_polynomial(text, &names, base.field)
                .map_err(|e| AlgebraError::Other(format!("relation `{text}`: {e}")))?;
            rels.push(p);
        }
        RingPresentation::algebra_over(
            base,
            fiber_vars.iter().map(|s| s.to_string()).collect(),
            rels,
        )
    }

    /// Presents an algebra over `base`: the result is
    /// `k[base vars, fiber vars] / (base relations, fiber relations)`,
    /// with the fiber block dominating in the term order.
    ///
    /// `fiber_relations` are polynomials in the full variable list.
    pub fn algebra_over(
        base: &Ring,
        fiber_vars: Vec<String>,
        fiber_relations: Vec<Polynomial>,
    ) -> Result<Ring> {
        let mut vars = base.vars.clone();
        for v in &fiber_vars {
            if vars.contains(v) {
                return Err(AlgebraError::RingMismatch(format!(
                    "fiber variable `{v}` collides with a base variable"
                )));
            }
            vars.push(v.clone());
        }
        check_var_names(&vars)?;
        let arity = vars.len();
        let base_arity = base.vars.len();
        let embed_map: Vec<usize> = (0..base_arity).collect();
        let mut all_relations: Vec<Polynomial> = base
            .all_relations
            .iter()
            .map(|r| r.embed(arity, &embed_map))
            .collect();
        for r in &fiber_relations {
            if r.arity() != arity {
                return Err(AlgebraError::ArityMismatch {
                    expected: arity,
                    got: r.arity(),
                });
            }
            all_relations.push(r.clone());
        }
        let ord = TermOrder {
            order: base.order,
            split: base_arity,
        };
        let gb = groebner_basis(&all_relations, &ord);
        Ok(Arc::new(RingPresentation {
            field: base.field,
            vars,
            base_arity,
            base: Some(base.clone()),
            order: base.order,
            own_relations: fiber_relations,
            all_relations,
            gb,
        }))
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn base_arity(&self) -> usize {
        self.base_arity
    }

    pub fn fiber_arity(&self) -> usize {
        self.vars.len() - self.base_arity
    }

    pub fn fiber_vars(&self) -> &[String] {
        &self.vars[self.base_arity..]
    }

    pub fn base(&self) -> Option<&Ring> {
        self.base.as_ref()
    }

    /// The base presentation, defaulting to the bare field.
    pub fn base_or_field(&self) -> Ring {
        self.base
            .clone()
            .unwrap_or_else(|| RingPresentation::field_ring(self.field))
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn term_order(&self) -> TermOrder {
        TermOrder {
            order: self.order,
            split: self.base_arity,
        }
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.all_relations
    }

    pub fn own_relations(&self) -> &[Polynomial] {
        &self.own_relations
    }

    /// Reduced Groebner basis of the relation ideal.
    pub fn relation_basis(&self) -> &[Polynomial] {
        &self.gb
    }

    pub fn is_trivial_quotient(&self) -> bool {
        self.gb
            .iter()
            .any(|p| p.as_constant().map(|c| !c.is_zero()).unwrap_or(false))
    }

    pub fn has_relations(&self) -> bool {
        !self.all_relations.is_empty()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.arity())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.arity(), self.field)
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::constant(self.arity(), c)
    }

    pub fn constant_i64(&self, n: i64) -> Polynomial {
        self.constant(Scalar::from_i64(self.field, n))
    }

    pub fn var(&self, index: usize) -> Polynomial {
        Polynomial::variable(self.arity(), index, self.field)
    }

    pub fn var_named(&self, name: &str) -> Option<Polynomial> {
        self.vars.iter().position(|v| v == name).map(|i| self.var(i))
    }

    /// Canonical representative of `p` modulo the relation ideal.
    pub fn nf(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.arity(), self.arity(), "polynomial from another ring");
        if self.gb.is_empty() {
            return p.clone();
        }
        normal_form(p, &self.gb, &self.term_order())
    }

    pub fn is_zero_class(&self, p: &Polynomial) -> bool {
        self.nf(p).is_zero()
    }

    pub fn classes_equal(&self, p: &Polynomial, q: &Polynomial) -> bool {
        self.is_zero_class(&p.sub(q))
    }

    pub fn parse(&self, text: &str) -> std::result::Result<Polynomial, PolyParseError> {
        parse_polynomial(text, &self.vars, self.field)
    }

    pub fn display(&self, p: &Polynomial) -> String {
        let ord = self.term_order();
        p.display_with(&self.vars, |a, b| ord.cmp(a, b))
    }

    pub fn leading_monomial(&self, p: &Polynomial) -> Expo {
        leading_term(p, &self.term_order()).0.clone()
    }

    /// Embeds a polynomial of the base ring into this ring.
    pub fn embed_base(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.arity(), self.base_arity, "not a base-ring polynomial");
        let map: Vec<usize> = (0..self.base_arity).collect();
        p.embed(self.arity(), &map)
    }

    /// Restricts a polynomial supported on base variables back to the
    /// base ring's arity. Panics if fiber variables occur.
    pub fn restrict_to_base(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.base_arity);
        for (e, c) in p.terms() {
            assert!(
                e[self.base_arity..].iter().all(|&x| x == 0),
                "polynomial is not supported on the base block"
            );
            out.add_term(e[..self.base_arity].to_vec(), c.clone());
        }
        out
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))?;
        if self.has_relations() {
            let rels: Vec<String> = self.all_relations.iter().map(|r| self.display(r)).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

fn check_var_names(vars: &[String]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        if v.is_empty()
            || !v
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
            || v.chars().next().unwrap().is_ascii_digit()
        {
            return Err(AlgebraError::RingMismatch(format!(
                "invalid variable name `{v}`"
            )));
        }
        if vars[..i].contains(v) {
            return Err(AlgebraError::RingMismatch(format!(
                "duplicate variable `{v}`"
            )));
        }
    }
    Ok(())
}

/// A ring homomorphism given on generators.
///
/// Construction checks that every relation of the source maps to zero
/// in the target, so a constructed value really is a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(source: Ring, target: Ring, images: Vec<Polynomial>) -> Result<RingMap> {
        if source.field() != target.field() {
            return Err(AlgebraError::FieldMismatch(
                source.field().to_string(),
                target.field().to_string(),
            ));
        }
        if images.len() != source.arity() {
            return Err(AlgebraError::ArityMismatch {
                expected: source.arity(),
                got: images.len(),
            });
        }
        for im in &images {
            if im.arity() != target.arity() {
                return Err(AlgebraError::ArityMismatch {
                    expected: target.arity(),
                    got: im.arity(),
                });
            }
        }
        let map = RingMap {
            source,
            target,
            images,
        };
        for rel in map.source.relations() {
            let image = map.apply_raw(rel);
            if !map.target.is_zero_class(&image) {
                return Err(AlgebraError::RelationNotPreserved {
                    relation: map.source.display(rel),
                });
            }
        }
        Ok(map)
    }

    pub fn identity(ring: &Ring) -> RingMap {
        let images = (0..ring.arity()).map(|i| ring.var(i)).collect();
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    fn apply_raw(&self, p: &Polynomial) -> Polynomial {
        if self.source.arity() == 0 {
            // Constants carry no variables to substitute; reinterpret
            // them in the target arity directly.
            return p.embed(self.target.arity(), &[]);
        }
        p.substitute(&self.images, self.target.field())
    }

    /// Image of `p`, reduced to its canonical representative.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(
            p.arity(),
            self.source.arity(),
            "polynomial from another ring"
        );
        self.target.nf(&self.apply_raw(p))
    }

    /// `other` after `self` (i.e. `other . self`), when composable.
    pub fn then(&self, other: &RingMap) -> Result<RingMap> {
        if self.target != other.source {
            return Err(AlgebraError::RingMismatch(
                "composition: target of the first map differs from source of the second".into(),
            ));
        }
        let images = self.images.iter().map(|p| other.apply(p)).collect();
        RingMap::new(self.source.clone(), other.target.clone(), images)
    }
}

/// Extends a base-ring map `g : A -> A'` to an algebra `R` presented
/// over `A`, producing `R' = R (x)_A A'` and the induced map `R -> R'`.
///
/// The fiber variables and relations are transported verbatim, with the
/// base variables replaced by their images under `g`.
pub fn base_change_ring(ring: &Ring, g: &RingMap) -> Result<(Ring, RingMap)> {
    let base = ring.base_or_field();
    if g.source() != &base {
        return Err(AlgebraError::RingMismatch(
            "base-change map does not start at the ring's base".into(),
        ));
    }
    let new_base = g.target().clone();
    let fiber: Vec<String> = ring.fiber_vars().to_vec();
    // Substitution from the old full ring into the new full ring.
    let new_base_arity = new_base.arity();
    let new_arity = new_base_arity + fiber.len();
    let mut images: Vec<Polynomial> = Vec::with_capacity(ring.arity());
    let embed_map: Vec<usize> = (0..new_base_arity).collect();
    for i in 0..ring.base_arity() {
        images.push(g.images()[i].embed(new_arity, &embed_map));
    }
    for j in 0..fiber.len() {
        images.push(Polynomial::variable(
            new_arity,
            new_base_arity + j,
            ring.field(),
        ));
    }
    let transported: Vec<Polynomial> = ring
        .own_relations()
        .iter()
        .map(|r| r.substitute(&images, ring.field()))
        .collect();
    let new_ring = RingPresentation::algebra_over(&new_base, fiber, transported)?;
    let induced = RingMap::new(ring.clone(), new_ring.clone(), images)?;
    Ok((new_ring, induced))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring(vars: &[&str], rels: &[&str]) -> Ring {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let tmp = RingPresentation::polynomial(FieldKind::Q, names, MonomialOrder::DegRevLex)
            .unwrap();
        let relations: Vec<Polynomial> = rels.iter().map(|t| tmp.parse(t).unwrap()).collect();
        RingPresentation::quotient(
            FieldKind::Q,
            tmp.vars().to_vec(),
            MonomialOrder::DegRevLex,
            relations,
        )
        .unwrap()
    }

    #[test]
    fn quotient_normal_forms_are_canonical() {
        let r = qring(&["x"], &["x^2 - 2"]);
        let p = r.parse("x^3").unwrap();
        assert_eq!(r.display(&r.nf(&p)), "2*x");
        assert!(r.classes_equal(&r.parse("x^2").unwrap(), &r.parse("2").unwrap()));
    }

    #[test]
    fn algebra_over_base_orders_fiber_first() {
        let a = qring(&["a"], &[]);
        let rel_ring =
            RingPresentation::algebra_over(&a, vec!["x".into()], vec![]).unwrap();
        let rel = rel_ring.parse("x^2 - a").unwrap();
        let r = RingPresentation::algebra_over(&a, vec!["x".into()], vec![rel]).unwrap();
        // Leading monomial of x^2 - a must be x^2, not a.
        let g = r.relation_basis();
        assert_eq!(g.len(), 1);
        assert_eq!(r.leading_monomial(&g[0]), vec![0, 2]);
        // NF(x^3) = a*x.
        let p = r.parse("x^3").unwrap();
        assert_eq!(r.display(&r.nf(&p)), "a*x");
    }

    #[test]
    fn ring_map_rejects_broken_relations() {
        let src = qring(&["x"], &["x^2 - 2"]);
        let dst = qring(&["y"], &[]);
        // x -> y does not satisfy y^2 = 2.
        let err = RingMap::new(src.clone(), dst.clone(), vec![dst.parse("y").unwrap()]);
        assert!(matches!(
            err,
            Err(AlgebraError::RelationNotPreserved { .. })
        ));
    }

    #[test]
    fn base_change_specializes_parameters() {
        // R = Q[a][x]/(x^2 - a), g : Q[a] -> Q, a -> 0.
        let a = qring(&["a"], &[]);
        let pre = RingPresentation::algebra_over(&a, vec!["x".into()], vec![]).unwrap();
        let rel = pre.parse("x^2 - a").unwrap();
        let r = RingPresentation::algebra_over(&a, vec!["x".into()], vec![rel]).unwrap();
        let q = RingPresentation::field_ring(FieldKind::Q);
        let g = RingMap::new(a, q, vec![Polynomial::zero(0)]).unwrap();
        let (r2, induced) = base_change_ring(&r, &g).unwrap();
        assert_eq!(r2.vars(), &["x".to_string()]);
        assert_eq!(r2.display(&r2.relation_basis()[0]), "x^2");
        let im = induced.apply(&r.parse("x^2 + a").unwrap());
        assert!(im.is_zero());
    }

    #[test]
    fn composition_matches_pointwise_application() {
        let a = qring(&["a"], &[]);
        let b = qring(&["s"], &["s^2"]);
        let c = RingPresentation::field_ring(FieldKind::Q);
        let g = RingMap::new(a.clone(), b.clone(), vec![b.parse("s").unwrap()]).unwrap();
        let h = RingMap::new(b, c.clone(), vec![Polynomial::zero(0)]).unwrap();
        let gh = g.then(&h).unwrap();
        let p = a.parse("a^2 + 3").unwrap();
        assert_eq!(gh.apply(&p), h.apply(&g.apply(&p)));
    }
}

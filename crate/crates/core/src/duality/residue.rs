//! Residue symbols through the diagonal construction, the residue
//! pairing, truncated local duality, and residue base change.
//!
//! Setting: `R = A[x_1..x_r]` polynomial over the base, a sequence `t`
//! with exponents `α` such that `B = R/t^αR` is finite free over `A`.
//! In the doubled ring `P = A[x, x']` each powered element satisfies
//! `h(x) − h(x') = Σ_j c_j·(x_j − x'_j)` with difference-quotient
//! entries obtained by telescoping one variable at a time. The
//! determinant `Δ = det(c)`, reduced modulo `(t^α(x), t^α(x'))` and
//! expanded over the product basis, yields the invertible matrix `D`
//! with `Δ ≡ Σ D_{uv}·b_u(x)·b_v(x')`. The functional `τ` solving
//! `D^T·τ = [1]` is the residue: `res[g·dx; t^α] = τ(g)`. This
//! normalizes `res[dx; (x_1,…,x_r)] = 1`, and independent consistency
//! comes from the trace formula `res[g·J·dx; t^α] = Tr(g)` with `J`
//! the Jacobian determinant of the powered sequence.

use crate::algebra::ideal::{check_regular_sequence, invert_unit, is_unit};
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::{Ring, RingMap, RingPresentation};
use crate::algebra::scalar::Scalar;
use crate::duality::finite_algebra::{matrix_witness, FiniteFlatAlgebra};
use crate::error::{AlgebraError, Result};
use crate::local_cohomology::fractions::{lc_base_change, FractionContext};
use crate::report::{CheckOutcome, Witness};

/// All data needed to evaluate residues at one truncation level.
#[derive(Debug, Clone)]
pub struct ResidueData {
    ring: Ring,
    t: Vec<Polynomial>,
    alpha: Vec<u32>,
    algebra: FiniteFlatAlgebra,
    /// Residue functional: coordinates over the base in the algebra
    /// basis; `res(g) = Σ τ_w·[g]_w`.
    tau: Vec<Polynomial>,
    /// The expansion matrix of the diagonal determinant.
    expansion: PolyMatrix,
}

/// Quotient of `p − p|_{a→b}` by `(v_a − v_b)`: for each term
/// `m·v_a^k` the contribution is `m·Σ_{u+w=k−1} v_a^u·v_b^w`.
fn telescope_quotient(p: &Polynomial, a: usize, b: usize) -> Polynomial {
    let arity = p.arity();
    let mut out = Polynomial::zero(arity);
    for (e, c) in p.terms() {
        let k = e[a];
        if k == 0 {
            continue;
        }
        debug_assert_eq!(e[b], 0, "term already involves the doubled variable");
        for u in 0..k {
            let mut ne = e.clone();
            ne[a] = u;
            ne[b] = k - 1 - u;
            out.add_term(ne, c.clone());
        }
    }
    out
}

impl ResidueData {
    pub fn new(ring: &Ring, t: &[Polynomial], alpha: &[u32]) -> Result<ResidueData> {
        if !ring.own_relations().is_empty() {
            return Err(AlgebraError::UnsupportedRing(
                "residue symbols require a polynomial algebra over the base".to_string(),
            ));
        }
        assert_eq!(t.len(), alpha.len(), "one exponent per sequence entry");
        let r = ring.fiber_arity();
        if t.len() != r {
            return Err(AlgebraError::Other(format!(
                "sequence length {} does not match the fiber dimension {r}",
                t.len()
            )));
        }
        let t: Vec<Polynomial> = t.iter().map(|p| ring.nf(p)).collect();
        let powered: Vec<Polynomial> = t
            .iter()
            .zip(alpha)
            .map(|(p, &a)| ring.nf(&p.pow(a)))
            .collect();
        check_regular_sequence(ring, &powered)?;
        let algebra = FiniteFlatAlgebra::new(ring, &powered)?;

        // Doubled ring A[x, x']: primed copies of the fiber variables.
        let base = ring.base_or_field();
        let m = ring.base_arity();
        let mut fiber: Vec<String> = ring.fiber_vars().to_vec();
        let primed: Vec<String> = ring
            .fiber_vars()
            .iter()
            .map(|v| {
                let mut name = format!("{v}'");
                while fiber.contains(&name) {
                    name.push('\'');
                }
                name
            })
            .collect();
        fiber.extend(primed);
        let doubled = RingPresentation::algebra_over(&base, fiber, vec![])?;
        let big = doubled.arity();
        // Variable maps: x-copy keeps indices, x'-copy shifts by r.
        let map_x: Vec<usize> = (0..m + r).collect();
        let mut map_xp: Vec<usize> = (0..m).collect();
        map_xp.extend(m + r..m + 2 * r);

        // Difference quotients by telescoping one variable at a time.
        let mut c = PolyMatrix::zeros(&doubled, r, r);
        for (i, h) in powered.iter().enumerate() {
            // g_j = h with fiber variables < j primed; the step from
            // g_j to g_{j+1} replaces x_j by x'_j.
            let mut stage_map = map_x.clone();
            for j in 0..r {
                let g_j = h.embed(big, &stage_map);
                c.set(i, j, telescope_quotient(&g_j, m + j, m + r + j));
                stage_map[m + j] = m + r + j;
            }
            // Telescope identity: Σ_j c_{ij}(x_j − x'_j) = h(x) − h(x').
            debug_assert!({
                let mut acc = doubled.zero();
                for j in 0..r {
                    let diff = doubled.var(m + j).sub(&doubled.var(m + r + j));
                    acc = acc.add(&c.entry(i, j).mul(&diff));
                }
                acc == h.embed(big, &map_x).sub(&h.embed(big, &map_xp))
            });
        }
        let delta = c.det();

        // Product algebra B ⊗_A B and the expansion of Δ.
        let powered_both: Vec<Polynomial> = powered
            .iter()
            .map(|h| h.embed(big, &map_x))
            .chain(powered.iter().map(|h| h.embed(big, &map_xp)))
            .collect();
        let product_algebra = FiniteFlatAlgebra::new(&doubled, &powered_both)?;
        let n = algebra.dim();
        if product_algebra.dim() != n * n {
            return Err(AlgebraError::Other(format!(
                "product basis has size {}, expected {}",
                product_algebra.dim(),
                n * n
            )));
        }
        // Index each product monomial by its (x-part, x'-part).
        let single: Vec<&[u32]> = algebra
            .basis()
            .monomials()
            .iter()
            .map(|e| &e[m..m + r])
            .collect();
        let locate = |part: &[u32]| -> usize {
            single
                .iter()
                .position(|s| *s == part)
                .expect("product monomial factors through the single basis")
        };
        let coords = product_algebra.coordinates(&product_algebra.nf(&delta));
        let mut expansion = PolyMatrix::zeros(&base, n, n);
        for (idx, mono) in product_algebra.basis().monomials().iter().enumerate() {
            let u = locate(&mono[m..m + r]);
            let v = locate(&mono[m + r..m + 2 * r]);
            expansion.set(u, v, coords[idx].clone());
        }

        // τ solves D^T·τ = e_1 over the base via the adjugate.
        let dt = expansion.transpose();
        let det = dt.det();
        if !is_unit(&base, &det) {
            return Err(AlgebraError::SingularMatrix {
                det: base.display(&det),
            });
        }
        let det_inv = invert_unit(&base, &det)?;
        let adj = dt.adjugate();
        let one = algebra.index_of_one();
        let tau: Vec<Polynomial> = (0..n)
            .map(|w| base.nf(&adj.entry(w, one).mul(&det_inv)))
            .collect();
        Ok(ResidueData {
            ring: ring.clone(),
            t,
            alpha: alpha.to_vec(),
            algebra,
            tau,
            expansion,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn t(&self) -> &[Polynomial] {
        &self.t
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn algebra(&self) -> &FiniteFlatAlgebra {
        &self.algebra
    }

    pub fn base(&self) -> Ring {
        self.ring.base_or_field()
    }

    /// The expansion matrix `D` of the diagonal determinant.
    pub fn expansion(&self) -> &PolyMatrix {
        &self.expansion
    }

    /// `res[g·dx_1∧…∧dx_r; t^α]` as a base-ring element.
    pub fn residue(&self, g: &Polynomial) -> Polynomial {
        let base = self.base();
        let coords = self.algebra.coordinates(&self.algebra.nf(g));
        let mut acc = base.zero();
        for (tw, cw) in self.tau.iter().zip(&coords) {
            acc = acc.add(&tw.mul(cw));
        }
        base.nf(&acc)
    }

    /// Jacobian determinant of the powered sequence with respect to
    /// the fiber variables.
    pub fn jacobian(&self) -> Polynomial {
        let m = self.ring.base_arity();
        let r = self.ring.fiber_arity();
        let powered: Vec<Polynomial> = self
            .t
            .iter()
            .zip(&self.alpha)
            .map(|(p, &a)| self.ring.nf(&p.pow(a)))
            .collect();
        let jac = PolyMatrix::from_fn(&self.ring, r, r, |i, j| powered[i].derivative(m + j));
        self.ring.nf(&jac.det())
    }

    /// Independent consistency oracle: `res[g·J·dx; t^α] = Tr(g)`.
    pub fn trace_consistency(&self, g: &Polynomial) -> CheckOutcome {
        let base = self.base();
        let lhs = self.residue(&g.mul(&self.jacobian()));
        let rhs = self.algebra.trace(g);
        let witness = Witness::map(vec![
            ("residue_side", Witness::text(base.display(&lhs))),
            ("trace_side", Witness::text(base.display(&rhs))),
        ]);
        if lhs == rhs {
            CheckOutcome::pass(witness, "trace formula agrees")
        } else {
            CheckOutcome::fail(witness, "trace formula disagrees")
        }
    }

    /// Spanning set used for residue identities: the basis monomials
    /// and their translates by `x_1 + 1`.
    pub fn spanning_set(&self) -> Vec<Polynomial> {
        let mut out = self.algebra.basis_polys();
        let m = self.ring.base_arity();
        let shift = self.ring.var(m).add(&self.ring.one());
        let translated: Vec<Polynomial> = out.iter().map(|b| b.mul(&shift)).collect();
        out.extend(translated);
        out
    }

    /// Pairing matrix of `B × (ω/t^αω ⊗ N_α) → A`:
    /// `(b_i, b_j·dx ⊗ 1/(t^α)) ↦ res[b_i·b_j·dx; t^α]`. The top-row
    /// comparison sign `(−1)^r` enters both legs of the composite
    /// integral and cancels, so entries are plain residues.
    pub fn pairing_matrix(&self) -> PolyMatrix {
        let base = self.base();
        let polys = self.algebra.basis_polys();
        PolyMatrix::from_fn(&base, polys.len(), polys.len(), |i, j| {
            self.residue(&polys[i].mul(&polys[j]))
        })
    }

    /// Perfect-pairing verification: the pairing matrix must be
    /// unimodular over the base.
    pub fn pairing_unimodular(&self) -> CheckOutcome {
        let base = self.base();
        let p = self.pairing_matrix();
        let det = p.det();
        let unit = is_unit(&base, &det);
        let witness = Witness::map(vec![
            ("pairing_matrix", matrix_witness(&base, &p)),
            ("det", Witness::text(base.display(&det))),
        ]);
        if unit {
            CheckOutcome::pass(witness, "residue pairing is unimodular")
        } else {
            CheckOutcome::fail(witness, "residue pairing is singular")
        }
    }

    /// Truncated local duality: the map `ω/t^αω → Hom_A(N_α, A)`
    /// induced by the residue pairing, verified bijective (its matrix
    /// in the monomial basis and the dual generator-multiples basis is
    /// the pairing matrix).
    pub fn local_duality_truncated(&self) -> CheckOutcome {
        let base = self.base();
        let p = self.pairing_matrix();
        let det = p.det();
        let unit = is_unit(&base, &det);
        let witness = Witness::map(vec![
            ("duality_matrix", matrix_witness(&base, &p)),
            ("dim", Witness::text(format!("{}", self.algebra.dim()))),
            ("det", Witness::text(base.display(&det))),
        ]);
        if unit {
            CheckOutcome::pass(witness, "truncated local duality is bijective")
        } else {
            CheckOutcome::fail(witness, "duality map is not bijective")
        }
    }

    /// Compatibility of residues with the inductive system: raising
    /// the level to `α + extra` and multiplying numerators by
    /// `t^{extra}` leaves every spanning residue unchanged.
    pub fn transition_consistency(&self, extra: &[u32]) -> Result<CheckOutcome> {
        assert_eq!(extra.len(), self.alpha.len());
        let higher: Vec<u32> = self.alpha.iter().zip(extra).map(|(&a, &b)| a + b).collect();
        let finer = ResidueData::new(&self.ring, &self.t, &higher)?;
        let mut shift = self.ring.one();
        for (p, &b) in self.t.iter().zip(extra) {
            shift = shift.mul(&p.pow(b));
        }
        let base = self.base();
        let mut pass = true;
        let mut rows = Vec::new();
        for b in self.spanning_set() {
            let low = self.residue(&b);
            let high = finer.residue(&b.mul(&shift));
            if low != high {
                pass = false;
            }
            rows.push(vec![base.display(&low), base.display(&high)]);
        }
        let witness = Witness::map(vec![("values_low_high", Witness::Matrix(rows))]);
        if pass {
            Ok(CheckOutcome::pass(
                witness,
                "residues are constant along transitions",
            ))
        } else {
            Ok(CheckOutcome::fail(witness, "transition changed a residue"))
        }
    }
}

/// Residue base change: pushes the scenario along `g: A → A'` and
/// checks `g(res[b·dx; t^α]) = res'[g(b)·dx; t'^α]` on the spanning
/// set, routing one leg through the truncation model of top local
/// cohomology (the fraction `[b; α]` is base-changed by the module
/// machinery and the result's numerator is evaluated).
pub fn residue_base_change(rd: &ResidueData, g: &RingMap) -> Result<(ResidueData, CheckOutcome)> {
    let (ring2, induced) = crate::algebra::ring::base_change_ring(rd.ring(), g)?;
    let t2: Vec<Polynomial> = rd.t().iter().map(|p| induced.apply(p)).collect();
    let rd2 = ResidueData::new(&ring2, &t2, rd.alpha())?;
    let base2 = rd2.base();
    let ctx = FractionContext::new(
        rd.ring(),
        rd.t()
            .iter()
            .zip(rd.alpha())
            .map(|(p, &a)| p.pow(a))
            .collect(),
        1,
    )?;
    let ones: Vec<u32> = vec![1; rd.alpha().len()];
    let mut pass = true;
    let mut rows = Vec::new();
    for b in rd.spanning_set() {
        let lhs = g.apply(&rd.residue(&b));
        let rhs = rd2.residue(&induced.apply(&b));
        // The same identity routed through the fraction machinery.
        let frac = ctx.fraction_poly(&b, &ones);
        let moved = lc_base_change(&ctx, &frac, g)?;
        let via_fraction = rd2.residue(moved.image.numerator().comp(0));
        if lhs != rhs || lhs != via_fraction {
            pass = false;
        }
        rows.push(vec![
            base2.display(&lhs),
            base2.display(&rhs),
            base2.display(&via_fraction),
        ]);
    }
    let witness = Witness::map(vec![(
        "g_res__res_after__via_fraction",
        Witness::Matrix(rows),
    )]);
    let outcome = if pass {
        CheckOutcome::pass(witness, "residues commute with base change")
    } else {
        CheckOutcome::fail(witness, "residue base change failed")
    };
    Ok((rd2, outcome))
}

/// Scales a base element into the field when possible (used by tests).
pub fn residue_as_scalar(rd: &ResidueData, g: &Polynomial) -> Option<Scalar> {
    rd.residue(g).as_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::order::MonomialOrder;
    use crate::algebra::scalar::FieldKind;

    fn q() -> Ring {
        RingPresentation::polynomial(FieldKind::Q, vec![], MonomialOrder::DegRevLex).unwrap()
    }

    fn line() -> Ring {
        RingPresentation::algebra_over_parsed(&q(), &["x"], &[]).unwrap()
    }

    #[test]
    fn residue_powers_of_one_variable() {
        // res[x^k dx; (x^n)] = 1 exactly when k = n−1, for n ≤ 4.
        let r = line();
        let x = r.parse("x").unwrap();
        for n in 1..=4u32 {
            let rd = ResidueData::new(&r, &[x.clone()], &[n]).unwrap();
            for k in 0..n + 2 {
                let val = rd.residue(&x.pow(k));
                let expect = if k == n - 1 { "1" } else { "0" };
                assert_eq!(rd.base().display(&val), expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn residue_evaluates_at_linear_center() {
        // Over A = Q[a], t = (x − a): res[g dx] = g(a).
        let a = RingPresentation::polynomial(
            FieldKind::Q,
            vec!["a".into()],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let r = RingPresentation::algebra_over_parsed(&a, &["x"], &[]).unwrap();
        let rd = ResidueData::new(&r, &[r.parse("x - a").unwrap()], &[1]).unwrap();
        assert_eq!(rd.base().display(&rd.residue(&r.parse("1").unwrap())), "1");
        assert_eq!(rd.base().display(&rd.residue(&r.parse("x").unwrap())), "a");
        assert_eq!(
            rd.base().display(&rd.residue(&r.parse("x^2 + 1").unwrap())),
            "a^2 + 1"
        );
    }

    #[test]
    fn residue_normalization_on_the_plane() {
        let r = RingPresentation::algebra_over_parsed(&q(), &["x", "y"], &[]).unwrap();
        let rd = ResidueData::new(
            &r,
            &[r.parse("x").unwrap(), r.parse("y").unwrap()],
            &[1, 1],
        )
        .unwrap();
        assert_eq!(rd.base().display(&rd.residue(&r.parse("1").unwrap())), "1");
        assert_eq!(rd.base().display(&rd.residue(&r.parse("x").unwrap())), "0");
    }

    #[test]
    fn antidiagonal_pairing_for_a_double_point() {
        // R = Q[x], t^α = (x²): pairing of {1, x} is [[0,1],[1,0]].
        let r = line();
        let rd = ResidueData::new(&r, &[r.parse("x").unwrap()], &[2]).unwrap();
        let p = rd.pairing_matrix();
        let b = rd.base();
        let shown: Vec<Vec<String>> = (0..2)
            .map(|i| (0..2).map(|j| b.display(p.entry(i, j))).collect())
            .collect();
        assert_eq!(shown, vec![vec!["0", "1"], vec!["1", "0"]]);
        assert!(rd.pairing_unimodular().passed);
        assert!(rd.local_duality_truncated().passed);
        // 1×1 case: [1].
        let rd1 = ResidueData::new(&r, &[r.parse("x").unwrap()], &[1]).unwrap();
        assert_eq!(rd1.base().display(rd1.pairing_matrix().entry(0, 0)), "1");
    }

    #[test]
    fn trace_formula_consistency() {
        // Single variable, n = 3: J = 3x², spanning set checks.
        let r = line();
        let rd = ResidueData::new(&r, &[r.parse("x").unwrap()], &[3]).unwrap();
        for g in rd.spanning_set() {
            assert!(rd.trace_consistency(&g).passed);
        }
        // Mixed non-monomial sequence over the plane.
        let plane = RingPresentation::algebra_over_parsed(&q(), &["x", "y"], &[]).unwrap();
        let rd2 = ResidueData::new(
            &plane,
            &[plane.parse("x + y").unwrap(), plane.parse("x*y").unwrap()],
            &[1, 1],
        )
        .unwrap();
        for g in rd2.spanning_set() {
            assert!(rd2.trace_consistency(&g).passed);
        }
        assert!(rd2.pairing_unimodular().passed);
    }

    #[test]
    fn residues_stable_under_transitions() {
        let r = line();
        let rd = ResidueData::new(&r, &[r.parse("x").unwrap()], &[2]).unwrap();
        assert!(rd.transition_consistency(&[1]).unwrap().passed);
        let plane = RingPresentation::algebra_over_parsed(&q(), &["x", "y"], &[]).unwrap();
        let rd2 = ResidueData::new(
            &plane,
            &[plane.parse("x").unwrap(), plane.parse("y").unwrap()],
            &[1, 2],
        )
        .unwrap();
        assert!(rd2.transition_consistency(&[2, 1]).unwrap().passed);
    }

    #[test]
    fn base_change_of_residues_specializes() {
        // A = Q[a], t = (x² − a), g: a ↦ 0 — res[x dx] = 1 both sides.
        let a = RingPresentation::polynomial(
            FieldKind::Q,
            vec!["a".into()],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let r = RingPresentation::algebra_over_parsed(&a, &["x"], &[]).unwrap();
        let rd = ResidueData::new(&r, &[r.parse("x^2 - a").unwrap()], &[1]).unwrap();
        assert_eq!(rd.base().display(&rd.residue(&r.parse("x").unwrap())), "1");
        let g = RingMap::new(a.clone(), q(), vec![q().zero()]).unwrap();
        let (rd2, outcome) = residue_base_change(&rd, &g).unwrap();
        assert!(outcome.passed);
        assert_eq!(
            rd2.base().display(&rd2.residue(&rd2.ring().parse("x").unwrap())),
            "1"
        );
        // Nilpotent extension of the base.
        let nil = RingPresentation::quotient_parsed(
            FieldKind::Q,
            &["s"],
            MonomialOrder::DegRevLex,
            &["s^2"],
        )
        .unwrap();
        let line_q = line();
        let rdq = ResidueData::new(&line_q, &[line_q.parse("x").unwrap()], &[2]).unwrap();
        let g2 = RingMap::new(q(), nil, vec![]).unwrap();
        let (_, outcome2) = residue_base_change(&rdq, &g2).unwrap();
        assert!(outcome2.passed);
    }
}

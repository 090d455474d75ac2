//! Koszul complexes at a truncation level.
//!
//! For a sequence `f = (f_1, ..., f_r)` the resolution complex `C` has
//! the rank-`binom(r,k)` term in degree `−k`, with basis indexed by the
//! `k`-element subsets of `{1..r}` in lexicographic order, and
//! differential `e_S ↦ Σ_{i∈S} (−1)^{#{j∈S : j<i}} f_i e_{S∖i}`. When
//! `f` is regular this resolves `R/(f)` in degree zero. The cohomology
//! complex `K = Hom(C, R)` then sits in degrees `0..r`.

use crate::algebra::ideal::{check_regular_sequence, Ideal};
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::module::{
    module_groebner_over, module_standard_monomials, ModuleElt,
};
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::Ring;
use crate::complexes::{hom_complex, tensor_complex, Complex};
use crate::error::Result;
use crate::report::{CheckOutcome, Witness};

/// `k`-element subsets of `{0, ..., r−1}` in lexicographic order.
pub fn subsets_lex(r: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, r: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..r {
            current.push(i);
            rec(i + 1, r, k, current, out);
            current.pop();
        }
    }
    rec(0, r, k, &mut current, &mut out);
    out
}

/// Sign `(−1)^{#{j∈S : j<i}}` picked up when `f_i` is pulled out of
/// the wedge basis vector `e_S` (here `i ∈ S`).
pub fn removal_sign(s: &[usize], i: usize) -> i64 {
    let count = s.iter().filter(|&&j| j < i).count();
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The resolution-side Koszul complex of `fs`, supported in degrees
/// `−r..0`.
pub fn koszul_complex(ring: &Ring, fs: &[Polynomial]) -> Result<Complex> {
    let r = fs.len();
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for k in (0..=r).rev() {
        ranks.push(binomial(r, k));
    }
    for k in (1..=r).rev() {
        // d: degree −k → −k+1.
        let sources = subsets_lex(r, k);
        let targets = subsets_lex(r, k - 1);
        let mut d = PolyMatrix::zeros(ring, targets.len(), sources.len());
        for (col, s) in sources.iter().enumerate() {
            for &i in s {
                let mut t: Vec<usize> = s.iter().cloned().filter(|&j| j != i).collect();
                t.sort_unstable();
                let row = targets.iter().position(|u| *u == t).expect("subset");
                let coeff = fs[i].scale(&crate::algebra::scalar::Scalar::from_i64(
                    ring.field(),
                    removal_sign(s, i),
                ));
                d.set(row, col, coeff);
            }
        }
        diffs.push(d);
    }
    Complex::new(ring, -(r as i64), ranks, diffs)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A regular sequence raised to a truncation level, together with its
/// resolution complex `C` (degrees `−r..0`) and cohomology complex
/// `K = Hom(C, R)` (degrees `0..r`).
#[derive(Debug, Clone)]
pub struct KoszulData {
    ring: Ring,
    t: Vec<Polynomial>,
    alpha: Vec<u32>,
    t_alpha: Vec<Polynomial>,
    resolution: Complex,
    koszul: Complex,
}

impl KoszulData {
    /// Certifies regularity of `t^α` and builds both complexes.
    pub fn new(ring: &Ring, t: Vec<Polynomial>, alpha: Vec<u32>) -> Result<KoszulData> {
        assert_eq!(t.len(), alpha.len(), "one exponent per sequence entry");
        let t: Vec<Polynomial> = t.iter().map(|p| ring.nf(p)).collect();
        let t_alpha: Vec<Polynomial> = t
            .iter()
            .zip(&alpha)
            .map(|(p, &a)| ring.nf(&p.pow(a)))
            .collect();
        check_regular_sequence(ring, &t_alpha)?;
        let resolution = koszul_complex(ring, &t_alpha)?;
        let unit = Complex::concentrated(ring, 0, 1);
        let koszul = hom_complex(&resolution, &unit)?;
        Ok(KoszulData {
            ring: ring.clone(),
            t,
            alpha,
            t_alpha,
            resolution,
            koszul,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn r(&self) -> usize {
        self.t.len()
    }

    pub fn t(&self) -> &[Polynomial] {
        &self.t
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    /// The powered sequence `t_i^{α_i}`.
    pub fn t_alpha(&self) -> &[Polynomial] {
        &self.t_alpha
    }

    pub fn resolution(&self) -> &Complex {
        &self.resolution
    }

    pub fn koszul(&self) -> &Complex {
        &self.koszul
    }

    /// The quotient ideal `(t^α)` + ring relations.
    pub fn truncation_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, &self.t_alpha)
    }

    /// Verifies that `C` resolves `R/(t^α)`: vanishing cohomology in
    /// negative degrees and degree-zero cohomology presented by
    /// exactly the truncation ideal.
    pub fn resolution_check(&self) -> CheckOutcome {
        let r = self.r() as i64;
        let mut notes = Vec::new();
        let mut pass = true;
        for n in -r..0 {
            let h = self.resolution.cohomology(n);
            if !h.is_zero() {
                pass = false;
                notes.push((
                    format!("H^{n}"),
                    Witness::text("nonzero in negative degree"),
                ));
            }
        }
        // H^0 = coker(C^{−1} → R) must be R/(t^α): the image submodule
        // of the rank-one free module must equal the truncation ideal.
        let im_cols = self.resolution.diff_at(-1).columns();
        let im_gb = module_groebner_over(&self.ring, &im_cols, 1);
        let ideal_gb: Vec<ModuleElt> = self
            .truncation_ideal()
            .gb()
            .iter()
            .map(|g| ModuleElt::from_comps(vec![g.clone()]))
            .collect();
        if im_gb != ideal_gb {
            pass = false;
            notes.push((
                "H^0".to_string(),
                Witness::text("degree-zero cohomology is not R/(t^alpha)"),
            ));
        }
        let witness = Witness::Map(
            std::iter::once((
                "H^0".to_string(),
                Witness::text(format!(
                    "R/({})",
                    self.t_alpha
                        .iter()
                        .map(|p| self.ring.display(p))
                        .collect::<Vec<_>>()
                        .join(", ")
                )),
            ))
            .chain(notes)
            .collect(),
        );
        if pass {
            CheckOutcome::pass(witness, "resolution verified")
        } else {
            CheckOutcome::fail(witness, "resolution check failed")
        }
    }

    /// Verifies regular-sequence acyclicity of `K ⊗ M` for `M = R^k`:
    /// cohomology vanishes below the top degree, and in the top degree
    /// the coboundaries span exactly `t^α · M`; reports the dimension
    /// of `M/t^αM` over the field when finite.
    pub fn acyclicity_with_coefficients(&self, rank: usize) -> Result<CheckOutcome> {
        let m0 = Complex::concentrated(&self.ring, 0, rank);
        let km = tensor_complex(&self.koszul, &m0)?;
        let r = self.r() as i64;
        let mut pass = true;
        let mut entries = Vec::new();
        for n in 0..r {
            let h = km.cohomology(n);
            let ok = h.is_zero();
            pass &= ok;
            entries.push((
                format!("H^{n}"),
                Witness::text(if ok { "0" } else { "nonzero" }),
            ));
        }
        // Top degree: im(d^{r−1}) == t^α M as submodules of R^rank.
        let im_cols = km.diff_at(r - 1).columns();
        let im_gb = module_groebner_over(&self.ring, &im_cols, rank.max(1));
        let mut expected = Vec::new();
        for j in 0..rank {
            for p in &self.t_alpha {
                expected.push(ModuleElt::unit(rank, self.ring.arity(), j, p.clone()));
            }
        }
        let expected_gb = module_groebner_over(&self.ring, &expected, rank.max(1));
        let top_ok = im_gb == expected_gb;
        pass &= top_ok;
        entries.push((
            format!("H^{r}"),
            Witness::text(if top_ok {
                "M/t^alpha M".to_string()
            } else {
                "top coboundaries differ from t^alpha M".to_string()
            }),
        ));
        if let Some(basis) = module_standard_monomials(&self.ring, &expected_gb, rank.max(1)) {
            entries.push((
                "dim_k".to_string(),
                Witness::text(format!("{}", basis.len())),
            ));
        }
        let witness = Witness::Map(entries);
        Ok(if pass {
            CheckOutcome::pass(witness, "Koszul acyclicity verified")
        } else {
            CheckOutcome::fail(witness, "Koszul acyclicity failed")
        })
    }
}

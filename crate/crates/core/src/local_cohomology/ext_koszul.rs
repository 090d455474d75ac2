//! Ext modules against the truncation quotient computed through the
//! Koszul resolution, and the explicit top-degree identification with
//! the truncated module of inverse denominators.
//!
//! With `C•` the Koszul resolution of `B = R/t^αR` and `M = R^k` free,
//! `Ext^i(B, M) = H^i(Hom(C•, M))`. For a regular sequence the complex
//! is exact below the top degree, and in degree `r` the image of the
//! last differential is exactly `t^α·M`, so `Ext^r(B, M) ≅ M/t^αM`.
//! Pairing the coset of `m` with the distinguished inverse denominator
//! `1/(t^α)` realizes the isomorphism `(M/t^αM) ⊗ N_α → Ext^r(B, M)`
//! with identity coordinates on coset representatives.

use crate::algebra::ideal::Ideal;
use crate::algebra::module::{module_groebner_over, ModuleElt};
use crate::complexes::{Cohomology, Complex};
use crate::error::Result;
use crate::local_cohomology::fractions::NormalElt;
use crate::local_cohomology::koszul::KoszulData;
use crate::report::{CheckOutcome, Witness};

/// Hom of the Koszul resolution into a free module, with its
/// cohomology available degree by degree.
#[derive(Debug, Clone)]
pub struct ExtData {
    kd: KoszulData,
    rank: usize,
    hom: Complex,
}

impl ExtData {
    pub fn new(kd: &KoszulData, rank: usize) -> Result<ExtData> {
        let target = Complex::concentrated(kd.ring(), 0, rank);
        let hom = crate::complexes::hom_complex(kd.resolution(), &target)?;
        Ok(ExtData {
            kd: kd.clone(),
            rank,
            hom,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn hom_complex(&self) -> &Complex {
        &self.hom
    }

    /// `Ext^i(R/t^αR, R^rank)` as cohomology of the Hom complex.
    pub fn ext(&self, i: i64) -> Cohomology {
        self.hom.cohomology(i)
    }

    /// Regular sequences kill every Ext below the top degree.
    pub fn vanishing_below_top(&self) -> CheckOutcome {
        let r = self.kd.r() as i64;
        let mut entries = Vec::new();
        let mut pass = true;
        for i in 0..r {
            let zero = self.ext(i).is_zero();
            pass &= zero;
            entries.push((format!("ext_{i}_zero"), Witness::text(format!("{zero}"))));
        }
        if pass {
            CheckOutcome::pass(Witness::Map(entries), "Ext vanishes below the top degree")
        } else {
            CheckOutcome::fail(Witness::Map(entries), "unexpected lower Ext")
        }
    }

    /// The submodule `t^α·M ⊆ M` as reduced module generators.
    fn truncation_submodule(&self) -> Vec<ModuleElt> {
        let ring = self.kd.ring();
        let mut gens = Vec::new();
        for f in self.kd.t_alpha() {
            for j in 0..self.rank {
                gens.push(ModuleElt::unit(self.rank, ring.arity(), j, f.clone()));
            }
        }
        module_groebner_over(ring, &gens, self.rank)
    }

    /// Certifies the top-degree identification: the image of the last
    /// differential of the Hom complex equals `t^α·M` as a submodule,
    /// so cosets of `M/t^αM` are literally Ext classes. The witness
    /// records the matching reduced bases and, when the truncation is
    /// finite over the ground field, its dimension.
    pub fn top_iso(&self) -> CheckOutcome {
        let ring = self.kd.ring();
        let r = self.kd.r() as i64;
        let image_cols = self.hom.diff_at(r - 1).columns();
        let image = module_groebner_over(ring, &image_cols, self.rank.max(1));
        let expected = self.truncation_submodule();
        let pass = image == expected && self.hom.rank_at(r) == self.rank;
        let mut entries: Vec<(String, Witness)> = vec![(
            "image_equals_truncation_submodule".to_string(),
            Witness::text(format!("{}", image == expected)),
        )];
        let dim = self.ext(r).k_dim();
        if let Some(d) = dim {
            entries.push(("ext_top_dim".to_string(), Witness::text(format!("{d}"))));
        }
        if pass {
            CheckOutcome::pass(
                Witness::Map(entries),
                "top Ext is the truncation quotient with identity coordinates",
            )
        } else {
            CheckOutcome::fail(Witness::Map(entries), "top-degree identification failed")
        }
    }

    /// The isomorphism `(M/t^αM) ⊗ N_α → Ext^r` on an element: the
    /// coset of `m` tensored with `coeff/(t^α)` goes to the Ext class
    /// represented by `coeff·m` in the top term of the Hom complex,
    /// reduced modulo `t^αM`.
    pub fn top_class(&self, m: &ModuleElt, n: &NormalElt) -> ModuleElt {
        assert_eq!(m.ncomp(), self.rank, "coefficient rank mismatch");
        assert_eq!(
            n.alpha,
            self.kd.alpha(),
            "inverse denominator level must match the truncation"
        );
        let ideal = Ideal::new(self.kd.ring(), self.kd.t_alpha());
        m.scale_poly(&n.coeff).map_comps(|p| ideal.normal_form(p))
    }

    /// Whether two top-degree representatives give the same Ext class.
    pub fn top_classes_equal(&self, a: &ModuleElt, b: &ModuleElt) -> bool {
        let ideal = Ideal::new(self.kd.ring(), self.kd.t_alpha());
        a.sub(b).comps().iter().all(|p| ideal.contains(p))
    }
}

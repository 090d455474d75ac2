//! Bounded cochain complexes of finite free modules.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * differentials raise degree by one and square to zero (checked at
//!   construction);
//! * `Hom(A,B)^n = ⊕_p Hom(A^p, B^{p+n})` with differential
//!   `d f = d_B ∘ f − (−1)^n f ∘ d_A`;
//! * `(A⊗B)^n = ⊕_p A^p ⊗ B^{n−p}` with differential
//!   `d(a⊗b) = d_A a ⊗ b + (−1)^p a ⊗ d_B b`;
//! * `A[i]^n = A^{n+i}` with differential `(−1)^i d_A`;
//! * direct-sum blocks are ordered by ascending `p`; `Hom(A^p, B^q)`
//!   is flattened target-major (`E_{uv} ↦ u·rank(A^p) + v`) and
//!   `A^p ⊗ B^q` first-factor-major (`e_i⊗e_j ↦ i·rank(B^q) + j`).
//!
//! The interchange isomorphism `A[i] ⊗ B[j] → (A ⊗ B)[i+j]` is
//! `(−1)^{pj} · id` on the block whose first factor sits in shifted
//! degree `p`; with the conventions above this really is a chain map,
//! which `shift_and_theta` certifies at construction.

use crate::algebra::ideal::is_unit;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::module::{
    module_contains, module_groebner_over, syzygies, ModuleElt,
};
use crate::algebra::ring::Ring;
use crate::error::{AlgebraError, Result};

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A bounded complex of finite free modules with explicit support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<PolyMatrix>,
}

impl Complex {
    /// Builds a complex from ranks in consecutive degrees starting at
    /// `lo` and the differentials between them; rejects shapes that do
    /// not line up and differentials that do not square to zero.
    pub fn new(ring: &Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<PolyMatrix>) -> Result<Complex> {
        if ranks.is_empty() {
            if !diffs.is_empty() {
                return Err(AlgebraError::Other(
                    "differentials supplied for an empty complex".to_string(),
                ));
            }
            return Ok(Complex {
                ring: ring.clone(),
                lo,
                ranks,
                diffs,
            });
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(AlgebraError::Other(format!(
                "expected {} differentials for {} terms, got {}",
                ranks.len() - 1,
                ranks.len(),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(AlgebraError::RingMismatch("operands live in different rings".to_string()));
            }
            if d.nrows() != ranks[k + 1] || d.ncols() != ranks[k] {
                return Err(AlgebraError::Other(format!(
                    "differential out of degree {} has shape {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.nrows(),
                    d.ncols(),
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k + 1].mul(&diffs[k]).is_zero() {
                return Err(AlgebraError::Other(format!(
                    "differential does not square to zero out of degree {}",
                    lo + k as i64
                )));
            }
        }
        Ok(Complex {
            ring: ring.clone(),
            lo,
            ranks,
            diffs,
        })
    }

    pub fn zero(ring: &Ring) -> Complex {
        Complex {
            ring: ring.clone(),
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// A single free module placed in one degree.
    pub fn concentrated(ring: &Ring, degree: i64, rank: usize) -> Complex {
        Complex {
            ring: ring.clone(),
            lo: degree,
            ranks: vec![rank],
            diffs: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Lowest degree carrying a term (meaningless for empty support).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree carrying a term; `lo − 1` for empty support.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank_at(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    /// Differential out of degree `n`, materialized as a matrix of
    /// shape `rank(n+1) x rank(n)` (zero outside the stored range).
    pub fn diff_at(&self, n: i64) -> PolyMatrix {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            PolyMatrix::zeros(&self.ring, self.rank_at(n + 1), self.rank_at(n))
        }
    }

    /// Shifted complex `C[i]` with `C[i]^n = C^{n+i}` and differential
    /// `(−1)^i d`.
    pub fn shift(&self, i: i64) -> Complex {
        Complex {
            ring: self.ring.clone(),
            lo: self.lo - i,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.scale_i64(sign(i))).collect(),
        }
    }

    /// Same terms with every differential negated.
    pub fn negate_diffs(&self) -> Complex {
        Complex {
            ring: self.ring.clone(),
            lo: self.lo,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.scale_i64(-1)).collect(),
        }
    }

    /// Presentation of `H^n = ker(d^n)/im(d^{n−1})`.
    pub fn cohomology(&self, n: i64) -> Cohomology {
        let rank = self.rank_at(n);
        let dn = self.diff_at(n);
        let dprev = self.diff_at(n - 1);
        let gens = if dn.nrows() == 0 {
            // Everything is a cycle.
            (0..rank)
                .map(|i| ModuleElt::unit(rank, self.ring.arity(), i, self.ring.one()))
                .collect()
        } else {
            syzygies(&self.ring, &dn.columns())
        };
        let im_cols = dprev.columns();
        let im_gb = module_groebner_over(&self.ring, &im_cols, rank.max(1));
        // Relations among the kernel generators modulo the image:
        // coefficient vectors c with sum c_i gens_i in im(d^{n−1}).
        let mut rows = gens.clone();
        rows.extend(im_cols.iter().cloned());
        let relations = if gens.is_empty() {
            Vec::new()
        } else {
            syzygies(&self.ring, &rows)
                .into_iter()
                .map(|s| s.slice(0..gens.len()))
                .filter(|s| !s.is_zero())
                .collect()
        };
        Cohomology {
            ring: self.ring.clone(),
            ambient_rank: rank,
            dn,
            gens,
            relations,
            im_gb,
        }
    }
}

/// A finitely presented cohomology module `ker(d^n)/im(d^{n−1})`:
/// cycle generators inside the degree-`n` free module, together with
/// the complete relation matrix among them.
#[derive(Debug, Clone)]
pub struct Cohomology {
    ring: Ring,
    ambient_rank: usize,
    dn: PolyMatrix,
    gens: Vec<ModuleElt>,
    relations: Vec<ModuleElt>,
    im_gb: Vec<ModuleElt>,
}

impl Cohomology {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Kernel generators (classes generating the cohomology).
    pub fn gens(&self) -> &[ModuleElt] {
        &self.gens
    }

    /// Coefficient vectors presenting the module on `gens`.
    pub fn relations(&self) -> &[ModuleElt] {
        &self.relations
    }

    pub fn is_cycle(&self, z: &ModuleElt) -> bool {
        self.dn.apply(z).is_zero()
    }

    /// Is the class of the cycle `z` zero, i.e. is `z` a boundary?
    pub fn class_is_zero(&self, z: &ModuleElt) -> bool {
        module_contains(&self.ring, &self.im_gb, z)
    }

    pub fn classes_equal(&self, a: &ModuleElt, b: &ModuleElt) -> bool {
        self.class_is_zero(&a.sub(b))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| self.class_is_zero(g))
    }

    /// Dimension over the ground field, `None` when infinite.
    pub fn k_dim(&self) -> Option<usize> {
        if self.gens.is_empty() {
            return Some(0);
        }
        crate::algebra::module::module_k_dim(&self.ring, &self.relations, self.gens.len())
    }
}

/// Block layout of one degree of a Hom or tensor complex: for each
/// first-factor degree `p`, the block size and its offset in the
/// direct sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub p: i64,
    pub rows: usize,
    pub cols: usize,
    pub offset: usize,
}

/// Blocks of `Hom(A,B)^n`: for each degree `p` of `A`, the pairs
/// `(rank B^{p+n}, rank A^p)` with ascending-`p` offsets.
pub fn hom_blocks(a: &Complex, b: &Complex, n: i64) -> Vec<Block> {
    let mut out = Vec::new();
    let mut offset = 0;
    if a.is_empty() || b.is_empty() {
        return out;
    }
    for p in a.lo()..=a.hi() {
        let rows = b.rank_at(p + n);
        let cols = a.rank_at(p);
        out.push(Block {
            p,
            rows,
            cols,
            offset,
        });
        offset += rows * cols;
    }
    out
}

/// Blocks of `(A⊗B)^n`: for each degree `p` of `A`, the pair
/// `(rank A^p, rank B^{n−p})` with ascending-`p` offsets.
pub fn tensor_blocks(a: &Complex, b: &Complex, n: i64) -> Vec<Block> {
    let mut out = Vec::new();
    let mut offset = 0;
    if a.is_empty() || b.is_empty() {
        return out;
    }
    for p in a.lo()..=a.hi() {
        let rows = a.rank_at(p);
        let cols = b.rank_at(n - p);
        out.push(Block {
            p,
            rows,
            cols,
            offset,
        });
        offset += rows * cols;
    }
    out
}

fn degree_rank(blocks: &[Block]) -> usize {
    blocks.iter().map(|b| b.rows * b.cols).sum()
}

/// The complex `Hom(A, B)` with differential
/// `d^n f = d_B ∘ f − (−1)^n f ∘ d_A`.
pub fn hom_complex(a: &Complex, b: &Complex) -> Result<Complex> {
    if a.ring() != b.ring() {
        return Err(AlgebraError::RingMismatch("operands live in different rings".to_string()));
    }
    let ring = a.ring();
    if a.is_empty() || b.is_empty() {
        return Ok(Complex::zero(ring));
    }
    let lo = b.lo() - a.hi();
    let hi = b.hi() - a.lo();
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        ranks.push(degree_rank(&hom_blocks(a, b, n)));
    }
    for n in lo..hi {
        let src = hom_blocks(a, b, n);
        let tgt = hom_blocks(a, b, n + 1);
        let mut d = PolyMatrix::zeros(ring, degree_rank(&tgt), degree_rank(&src));
        for t in &tgt {
            if t.rows * t.cols == 0 {
                continue;
            }
            // Postcomposition with d_B: source block at the same p.
            if let Some(s) = src.iter().find(|s| s.p == t.p) {
                if s.rows * s.cols > 0 {
                    let db = b.diff_at(t.p + n);
                    let block = db.kron(&PolyMatrix::identity(ring, s.cols));
                    d.insert_block(t.offset, s.offset, &block);
                }
            }
            // Precomposition with d_A: source block at p + 1, with
            // the sign −(−1)^n.
            if let Some(s) = src.iter().find(|s| s.p == t.p + 1) {
                if s.rows * s.cols > 0 {
                    let da = a.diff_at(t.p);
                    let block = PolyMatrix::identity(ring, t.rows)
                        .kron(&da.transpose())
                        .scale_i64(-sign(n));
                    d.insert_block(t.offset, s.offset, &block);
                }
            }
        }
        diffs.push(d);
    }
    Complex::new(ring, lo, ranks, diffs)
}

/// The complex `A ⊗ B` with differential
/// `d(a⊗b) = d_A a ⊗ b + (−1)^p a ⊗ d_B b` on `A^p ⊗ B^q`.
pub fn tensor_complex(a: &Complex, b: &Complex) -> Result<Complex> {
    if a.ring() != b.ring() {
        return Err(AlgebraError::RingMismatch("operands live in different rings".to_string()));
    }
    let ring = a.ring();
    if a.is_empty() || b.is_empty() {
        return Ok(Complex::zero(ring));
    }
    let lo = a.lo() + b.lo();
    let hi = a.hi() + b.hi();
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        ranks.push(degree_rank(&tensor_blocks(a, b, n)));
    }
    for n in lo..hi {
        let src = tensor_blocks(a, b, n);
        let tgt = tensor_blocks(a, b, n + 1);
        let mut d = PolyMatrix::zeros(ring, degree_rank(&tgt), degree_rank(&src));
        for t in &tgt {
            if t.rows * t.cols == 0 {
                continue;
            }
            // d_A ⊗ 1: source block at p − 1.
            if let Some(s) = src.iter().find(|s| s.p == t.p - 1) {
                if s.rows * s.cols > 0 {
                    let da = a.diff_at(t.p - 1);
                    let block = da.kron(&PolyMatrix::identity(ring, s.cols));
                    d.insert_block(t.offset, s.offset, &block);
                }
            }
            // (−1)^p 1 ⊗ d_B: source block at the same p.
            if let Some(s) = src.iter().find(|s| s.p == t.p) {
                if s.rows * s.cols > 0 {
                    let db = b.diff_at(n - t.p);
                    let block = PolyMatrix::identity(ring, s.rows)
                        .kron(&db)
                        .scale_i64(sign(t.p));
                    d.insert_block(t.offset, s.offset, &block);
                }
            }
        }
        diffs.push(d);
    }
    Complex::new(ring, lo, ranks, diffs)
}

/// A degreewise map of complexes commuting with the differentials
/// (checked at construction).
#[derive(Debug, Clone)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    lo: i64,
    maps: Vec<PolyMatrix>,
}

impl ChainMap {
    /// `maps[k]` is the component in degree `lo + k`, of shape
    /// `target.rank(n) x source.rank(n)`; components outside the given
    /// range are zero.
    pub fn new(source: &Complex, target: &Complex, lo: i64, maps: Vec<PolyMatrix>) -> Result<ChainMap> {
        if source.ring() != target.ring() {
            return Err(AlgebraError::RingMismatch("operands live in different rings".to_string()));
        }
        for (k, m) in maps.iter().enumerate() {
            let n = lo + k as i64;
            if m.nrows() != target.rank_at(n) || m.ncols() != source.rank_at(n) {
                return Err(AlgebraError::Other(format!(
                    "chain-map component in degree {n} has shape {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    target.rank_at(n),
                    source.rank_at(n)
                )));
            }
        }
        let cm = ChainMap {
            source: source.clone(),
            target: target.clone(),
            lo,
            maps,
        };
        // Commuting squares over the union of supports.
        let check_lo = source.lo().min(target.lo()).min(cm.lo) - 1;
        let check_hi = source.hi().max(target.hi()).max(cm.lo + cm.maps.len() as i64) + 1;
        for n in check_lo..=check_hi {
            let lhs = cm.target.diff_at(n).mul(&cm.map_at(n));
            let rhs = cm.map_at(n + 1).mul(&cm.source.diff_at(n));
            if lhs.sub(&rhs).is_zero() {
                continue;
            }
            return Err(AlgebraError::Other(format!(
                "square at degree {n} does not commute"
            )));
        }
        Ok(cm)
    }

    pub fn identity(c: &Complex) -> ChainMap {
        let maps = (c.lo()..=c.hi())
            .map(|n| PolyMatrix::identity(c.ring(), c.rank_at(n)))
            .collect();
        ChainMap::new(c, c, c.lo(), maps).expect("identity is a chain map")
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn map_at(&self, n: i64) -> PolyMatrix {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.maps.len() {
            self.maps[idx as usize].clone()
        } else {
            PolyMatrix::zeros(
                self.source.ring(),
                self.target.rank_at(n),
                self.source.rank_at(n),
            )
        }
    }

    pub fn compose(&self, then: &ChainMap) -> Result<ChainMap> {
        if then.source != self.target {
            return Err(AlgebraError::Other(
                "chain maps not composable".to_string(),
            ));
        }
        let lo = self.source.lo().min(then.target.lo());
        let hi = self.source.hi().max(then.target.hi());
        let maps = (lo..=hi)
            .map(|n| then.map_at(n).mul(&self.map_at(n)))
            .collect();
        ChainMap::new(&self.source, &then.target, lo, maps)
    }

    /// Degreewise invertibility: every component is square with unit
    /// determinant.
    pub fn is_isomorphism(&self) -> bool {
        let ring = self.source.ring();
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        for n in lo..=hi {
            let m = self.map_at(n);
            if m.nrows() != m.ncols() {
                return false;
            }
            if m.nrows() == 0 {
                continue;
            }
            if !is_unit(ring, &m.det()) {
                return false;
            }
        }
        true
    }
}

/// The interchange isomorphism `A[i] ⊗ B[j] → (A ⊗ B)[i+j]` acting as
/// `(−1)^{pj} · id` on the block whose first factor has shifted degree
/// `p`; construction re-verifies that it is a chain map.
pub fn shift_and_theta(a: &Complex, b: &Complex, i: i64, j: i64) -> Result<ChainMap> {
    let source = tensor_complex(&a.shift(i), &b.shift(j))?;
    let target = tensor_complex(a, b)?.shift(i + j);
    if source.is_empty() {
        return ChainMap::new(&source, &target, 0, Vec::new());
    }
    let ring = a.ring();
    let ai = a.shift(i);
    let bj = b.shift(j);
    let mut maps = Vec::new();
    for n in source.lo()..=source.hi() {
        let src = tensor_blocks(&ai, &bj, n);
        // Target degree n of (A⊗B)[i+j] is degree n+i+j of A⊗B.
        let tgt = tensor_blocks(a, b, n + i + j);
        let mut m = PolyMatrix::zeros(ring, degree_rank(&tgt), degree_rank(&src));
        for s in &src {
            if s.rows * s.cols == 0 {
                continue;
            }
            let t = tgt
                .iter()
                .find(|t| t.p == s.p + i)
                .expect("matching target block");
            assert_eq!((t.rows, t.cols), (s.rows, s.cols));
            let block =
                PolyMatrix::identity(ring, s.rows * s.cols).scale_i64(sign(s.p * j));
            m.insert_block(t.offset, s.offset, &block);
        }
        maps.push(m);
    }
    ChainMap::new(&source, &target, source.lo(), maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::order::MonomialOrder;
    use crate::algebra::ring::RingPresentation;
    use crate::algebra::scalar::FieldKind;

    fn qx() -> Ring {
        RingPresentation::polynomial(FieldKind::Q, vec!["x".into()], MonomialOrder::DegRevLex)
            .unwrap()
    }

    /// The two-term complex [R →(·f) R] in degrees 0, 1.
    fn two_term(ring: &Ring, f: &str) -> Complex {
        let m = PolyMatrix::from_rows(ring, vec![vec![ring.parse(f).unwrap()]]);
        Complex::new(ring, 0, vec![1, 1], vec![m]).unwrap()
    }

    #[test]
    fn hom_into_ring_dualizes_two_term_complex() {
        let r = qx();
        let a = two_term(&r, "x");
        let b = Complex::concentrated(&r, 0, 1);
        let h = hom_complex(&a, &b).unwrap();
        assert_eq!((h.lo(), h.hi()), (-1, 0));
        // d^{−1} = +multiplication by x: the sign −(−1)^{−1} is +1.
        assert_eq!(r.display(h.diff_at(-1).entry(0, 0)), "x");
    }

    #[test]
    fn double_dual_negates_differentials() {
        let r = qx();
        let a = two_term(&r, "x");
        let dd = hom_complex(&hom_complex(&a, &Complex::concentrated(&r, 0, 1)).unwrap(),
                             &Complex::concentrated(&r, 0, 1)).unwrap();
        assert_eq!((dd.lo(), dd.hi()), (0, 1));
        assert_eq!(r.display(dd.diff_at(0).entry(0, 0)), "-x");
    }

    #[test]
    fn sign_flipped_dual_dualizes_back_on_the_nose() {
        let r = qx();
        let a = two_term(&r, "x");
        let unit = Complex::concentrated(&r, 0, 1);
        let q = hom_complex(&a, &unit).unwrap().negate_diffs();
        let back = hom_complex(&q, &unit).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn tensor_with_module_matches_hom_into_module() {
        // M[0] ⊗ Hom(P,R) = Hom(P, M[0]) with no auxiliary signs, as
        // literal matrix equality.
        let r = qx();
        let p = two_term(&r, "x");
        let unit = Complex::concentrated(&r, 0, 1);
        let m0 = Complex::concentrated(&r, 0, 2);
        let lhs = tensor_complex(&m0, &hom_complex(&p, &unit).unwrap()).unwrap();
        let rhs = hom_complex(&p, &m0).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_is_chain_iso_with_expected_signs() {
        let r = qx();
        let a = two_term(&r, "x");
        let b = two_term(&r, "x^2");
        let theta = shift_and_theta(&a, &b, 1, 1).unwrap();
        assert!(theta.is_isomorphism());
        // Component where the first factor has shifted degree p = 0 is
        // +1, p = −1 gives (−1)^{−1·1} = −1.
        // Source degree −2: only block p = −1 (A[1] lives in −1..0).
        let m = theta.map_at(-2);
        assert_eq!(r.display(m.entry(0, 0)), "-1");
        // j = 0: all signs +1.
        let theta0 = shift_and_theta(&a, &b, 2, 0).unwrap();
        for n in theta0.source().lo()..=theta0.source().hi() {
            let m = theta0.map_at(n);
            for i in 0..m.nrows() {
                assert!(!r.display(m.entry(i, i)).starts_with('-'));
            }
        }
    }

    #[test]
    fn cohomology_of_multiplication_map() {
        let r = qx();
        let a = two_term(&r, "x");
        // H^0 = 0 (x is injective), H^1 = R/(x), one dimensional.
        let h0 = a.cohomology(0);
        assert!(h0.is_zero());
        let h1 = a.cohomology(1);
        assert!(!h1.is_zero());
        assert_eq!(h1.k_dim(), Some(1));
    }

    #[test]
    fn koszul_style_tensor_squares_to_zero_and_computes() {
        let r2 = RingPresentation::polynomial(
            FieldKind::Q,
            vec!["x".into(), "y".into()],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let kx = two_term(&r2, "x");
        let ky = two_term(&r2, "y");
        let k = tensor_complex(&kx, &ky).unwrap();
        assert_eq!((k.lo(), k.hi()), (0, 2));
        // Regular sequence: H^0 = H^1 = 0, H^2 = R/(x,y).
        assert!(k.cohomology(0).is_zero());
        assert!(k.cohomology(1).is_zero());
        let h2 = k.cohomology(2);
        assert_eq!(h2.k_dim(), Some(1));
    }
}

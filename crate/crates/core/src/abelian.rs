//! Finitely generated abelian groups given by generators and relations, and
//! homomorphisms between them.
//!
//! A group on `n` generators is `Zⁿ / (row span of relations)`. Elements are
//! coordinate vectors over the generators. The Smith form of the relation
//! matrix is computed once at construction and gives canonical coordinates:
//! for `U·R·V = D`, the element `x` has canonical coordinates `x·V` reduced
//! modulo the diagonal, with unit factors dropped.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{outer, unit_vec, vec_mul, vec_sub, zero_vec, IntMatrix};
use crate::snf::{left_kernel, row_basis, smith, solve_left, solve_left_with};

#[derive(Debug)]
struct Normal {
    /// Non-unit invariant factors followed by zeros for the free part.
    factors: Vec<BigInt>,
    /// `ngens × factors.len()`: generator coordinates to canonical coordinates.
    to_canon: IntMatrix,
    /// `factors.len() × ngens`: canonical generators as generator coordinates.
    from_canon: IntMatrix,
}

#[derive(Clone)]
pub struct FgAbGroup {
    ngens: usize,
    relations: IntMatrix,
    normal: Arc<Normal>,
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup{:?}", self.normal.factors)
    }
}

impl FgAbGroup {
    /// The group on `ngens` generators with the given relation rows.
    pub fn new(ngens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.cols(), ngens, "relation width must equal generator count");
        let s = smith(&relations);
        let mut factors = Vec::new();
        let mut keep = Vec::new();
        for i in 0..ngens {
            let d = if i < s.diag.len() { s.diag[i].clone() } else { BigInt::zero() };
            if !d.is_one() {
                factors.push(d);
                keep.push(i);
            }
        }
        let to_canon = s.v.select_cols(&keep);
        let from_canon = s.v_inv.select_rows(&keep);
        FgAbGroup { ngens, relations, normal: Arc::new(Normal { factors, to_canon, from_canon }) }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(0, rank))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/d₁ ⊕ … ⊕ Z/d_r` (a zero entry gives a copy of `Z`).
    pub fn from_factors(factors: &[BigInt]) -> Self {
        let n = factors.len();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, d) in factors.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        Self::new(n, rel)
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_factors(&[BigInt::from(order)])
    }

    #[inline]
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Invariant factors `d₁ | d₂ | …`, unit factors omitted, zeros last.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.normal.factors
    }

    pub fn free_rank(&self) -> usize {
        self.normal.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.normal.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.is_finite() {
            Some(self.normal.factors.iter().product())
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.normal.factors == other.normal.factors
    }

    /// Canonical coordinates of `x`, reduced into `[0, dᵢ)` on torsion factors.
    pub fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ngens, "element length must equal generator count");
        let mut y = vec_mul(x, &self.normal.to_canon);
        for (yi, d) in y.iter_mut().zip(&self.normal.factors) {
            if !d.is_zero() {
                *yi = yi.mod_floor(d);
            }
        }
        y
    }

    /// The element with the given canonical coordinates.
    pub fn from_canonical(&self, y: &[BigInt]) -> Vec<BigInt> {
        vec_mul(y, &self.normal.from_canon)
    }

    /// Representative of `x` in reduced form (canonical coordinates pushed back).
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.from_canonical(&self.canonical(x))
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.canonical(x).iter().all(Zero::is_zero)
    }

    pub fn eq_elem(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.is_zero(&vec_sub(x, y))
    }

    pub fn zero(&self) -> Vec<BigInt> {
        zero_vec(self.ngens)
    }

    pub fn gen(&self, i: usize) -> Vec<BigInt> {
        unit_vec(self.ngens, i)
    }

    /// Additive order of `x`; `None` if infinite.
    pub fn elem_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let y = self.canonical(x);
        let mut acc = BigInt::one();
        for (yi, d) in y.iter().zip(&self.normal.factors) {
            if d.is_zero() {
                if !yi.is_zero() {
                    return None;
                }
            } else {
                let o = d / yi.gcd(d);
                acc = acc.lcm(&o);
            }
        }
        Some(acc)
    }

    /// All elements of a finite group, in canonical-coordinate lexicographic
    /// order. `None` for infinite groups.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.normal.factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut t = BigInt::zero();
                while &t < d {
                    let mut v: Vec<BigInt> = prefix.clone();
                    v.push(t.clone());
                    next.push(v);
                    t += 1;
                }
            }
            out = next;
        }
        Some(out.iter().map(|y| self.from_canonical(y)).collect())
    }

    /// A deterministic spread of elements: everything when the group has at
    /// most `limit` elements, otherwise zero, the generators, their negatives
    /// and some small combinations.
    pub fn sample_elements(&self, limit: usize) -> Vec<Vec<BigInt>> {
        if let Some(ord) = self.order() {
            if ord <= BigInt::from(limit) {
                return self.elements().expect("finite");
            }
        }
        let n = self.ngens;
        let mut out = vec![self.zero()];
        for i in 0..n {
            out.push(self.gen(i));
            out.push(crate::matrix::vec_scale(&self.gen(i), &BigInt::from(-1)));
        }
        for i in 0..n {
            let mut v = self.gen(i);
            v[(i + 1) % n.max(1)] += 2;
            v[(i * 7 + 3) % n.max(1)] -= 1;
            out.push(v);
        }
        let mut all = self.zero();
        for (i, x) in all.iter_mut().enumerate() {
            *x = BigInt::from((i as i64 % 5) - 2);
        }
        out.push(all);
        out.truncate(limit.max(1));
        out
    }

    /// The canonical presentation `⊕ Z/dᵢ` together with mutually inverse
    /// isomorphisms `self → canonical` and `canonical → self`.
    pub fn canonical_form(&self) -> (FgAbGroup, AbHom, AbHom) {
        let c = Self::from_factors(&self.normal.factors);
        let to = AbHom::new_unchecked(self.clone(), c.clone(), self.normal.to_canon.clone());
        let from = AbHom::new_unchecked(c.clone(), self.clone(), self.normal.from_canon.clone());
        (c, to, from)
    }

    pub fn direct_sum(groups: &[FgAbGroup]) -> FgAbGroup {
        let n: usize = groups.iter().map(|g| g.ngens).sum();
        let mut rel = IntMatrix::zeros(0, n);
        let mut off = 0;
        for g in groups {
            for i in 0..g.relations.rows() {
                let mut r = zero_vec(n);
                r[off..off + g.ngens].clone_from_slice(g.relations.row(i));
                rel.push_row(r);
            }
            off += g.ngens;
        }
        FgAbGroup::new(n, rel)
    }

    /// Subgroup generated by the given elements (rows), with its inclusion.
    /// The returned group has one generator per vector of a lattice basis.
    pub fn subgroup(&self, gens: &IntMatrix) -> (FgAbGroup, AbHom) {
        let lattice = gens.vstack(&self.relations);
        let basis = row_basis(&lattice);
        let s = smith(&basis);
        let rel_rows = (0..self.relations.rows())
            .map(|i| {
                solve_left_with(&s, basis.rows(), self.relations.row(i))
                    .expect("relation lies in the generated lattice")
            })
            .collect();
        let sub = FgAbGroup::new(basis.rows(), IntMatrix::from_rows(basis.rows(), rel_rows));
        let inc = AbHom::new_unchecked(sub.clone(), self.clone(), basis);
        (sub, inc)
    }

    /// `self / ⟨gens⟩` with its projection.
    pub fn quotient(&self, gens: &IntMatrix) -> (FgAbGroup, AbHom) {
        let q = FgAbGroup::new(self.ngens, self.relations.vstack(gens));
        let proj = AbHom::new_unchecked(self.clone(), q.clone(), IntMatrix::identity(self.ngens));
        (q, proj)
    }

    /// Tensor product. Generator `i * b.ngens() + j` is `eᵢ ⊗ fⱼ`; use
    /// [`tensor_elem`] for the bilinear pairing.
    pub fn tensor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
        let (na, nb) = (a.ngens, b.ngens);
        let mut rel = IntMatrix::zeros(0, na * nb);
        for r in 0..a.relations.rows() {
            for j in 0..nb {
                rel.push_row(outer(a.relations.row(r), &unit_vec(nb, j)));
            }
        }
        for i in 0..na {
            for s in 0..b.relations.rows() {
                rel.push_row(outer(&unit_vec(na, i), b.relations.row(s)));
            }
        }
        FgAbGroup::new(na * nb, rel)
    }

    /// Quotient by the subgroup generated by `x - φ(x)` for each endomorphism
    /// `φ` in the family (coinvariants).
    pub fn quotient_by_endomorphism_family(&self, family: &[AbHom]) -> Result<(FgAbGroup, AbHom)> {
        let mut rows = IntMatrix::zeros(0, self.ngens);
        for phi in family {
            if phi.source.ngens != self.ngens || phi.target.ngens != self.ngens {
                return Err(Error::DimensionMismatch("endomorphism family on a different group".into()));
            }
            rows = rows.vstack(&IntMatrix::identity(self.ngens).sub(&phi.matrix));
        }
        Ok(self.quotient(&rows))
    }
}

/// The pairing `x ⊗ y` in [`FgAbGroup::tensor`] coordinates.
pub fn tensor_elem(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    outer(x, y)
}

/// A homomorphism, stored as the matrix whose row `i` is the image of source
/// generator `i`.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    /// Builds a homomorphism, checking that every source relation maps to zero.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != source.ngens || matrix.cols() != target.ngens {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.ngens,
                target.ngens
            )));
        }
        for i in 0..source.relations.rows() {
            let img = vec_mul(source.relations.row(i), &matrix);
            if !target.is_zero(&img) {
                return Err(Error::IllDefinedHom(format!("relation {i} does not map to zero")));
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    /// For maps that are well defined by construction.
    pub(crate) fn new_unchecked(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), source.ngens);
        debug_assert_eq!(matrix.cols(), target.ngens);
        AbHom { source, target, matrix }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.ngens))
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), IntMatrix::zeros(source.ngens, target.ngens))
    }

    pub fn scalar(g: &FgAbGroup, c: &BigInt) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::scalar(g.ngens, c))
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        vec_mul(x, &self.matrix)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom) -> AbHom {
        assert_eq!(self.target.ngens, other.source.ngens, "composition dimension mismatch");
        AbHom::new_unchecked(self.source.clone(), other.target.clone(), self.matrix.mul(&other.matrix))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AbHom) -> AbHom {
        other.then(self)
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        AbHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &AbHom) -> AbHom {
        AbHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, c: &BigInt) -> AbHom {
        AbHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    pub fn pow(&self, e: u64) -> AbHom {
        AbHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.pow(e))
    }

    /// Equality as maps (generator images agree in the target).
    pub fn equals(&self, other: &AbHom) -> bool {
        self.matrix.rows() == other.matrix.rows()
            && self.matrix.cols() == other.matrix.cols()
            && (0..self.matrix.rows()).all(|i| self.target.eq_elem(self.matrix.row(i), other.matrix.row(i)))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.rows()).all(|i| self.target.is_zero(self.matrix.row(i)))
    }

    pub fn cokernel(&self) -> (FgAbGroup, AbHom) {
        self.target.quotient(&self.matrix)
    }

    pub fn kernel(&self) -> (FgAbGroup, AbHom) {
        let stacked = self.matrix.vstack(&self.target.relations);
        let k = left_kernel(&stacked);
        let xs = k.select_cols(&(0..self.source.ngens).collect::<Vec<_>>());
        self.source.subgroup(&xs)
    }

    pub fn image(&self) -> (FgAbGroup, AbHom) {
        self.target.subgroup(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `x` with `self(x) = y`, if `y` is in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let stacked = self.matrix.vstack(&self.target.relations);
        solve_left(&stacked, y).map(|mut z| {
            z.truncate(self.source.ngens);
            z
        })
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<AbHom> {
        if !self.is_isomorphism() {
            return Err(Error::NotApplicable("map is not an isomorphism".into()));
        }
        let stacked = self.matrix.vstack(&self.target.relations);
        let s = smith(&stacked);
        let rows = (0..self.target.ngens)
            .map(|j| {
                let mut z = solve_left_with(&s, stacked.rows(), &unit_vec(self.target.ngens, j))
                    .expect("surjective map has preimages");
                z.truncate(self.source.ngens);
                z
            })
            .collect();
        AbHom::new(self.target.clone(), self.source.clone(), IntMatrix::from_rows(self.source.ngens, rows))
    }

    /// Given `self: X → B` with image inside the image of the injection
    /// `inj: A → B`, the unique `g: X → A` with `inj ∘ g = self`.
    pub fn factor_through(&self, inj: &AbHom) -> Result<AbHom> {
        let stacked = inj.matrix.vstack(&inj.target.relations);
        let s = smith(&stacked);
        let mut rows = Vec::with_capacity(self.source.ngens);
        for i in 0..self.source.ngens {
            let mut z = solve_left_with(&s, stacked.rows(), self.matrix.row(i))
                .ok_or_else(|| Error::NoSolution(format!("generator {i} does not lift")))?;
            z.truncate(inj.source.ngens);
            rows.push(z);
        }
        AbHom::new(self.source.clone(), inj.source.clone(), IntMatrix::from_rows(inj.source.ngens, rows))
    }

    /// Given a surjection `proj: X → Q` with `self` vanishing on its kernel,
    /// the induced map `Q → target`.
    pub fn descend(&self, proj: &AbHom) -> Result<AbHom> {
        let sec = proj.section()?;
        let m = sec.mul(&self.matrix);
        AbHom::new(proj.target.clone(), self.target.clone(), m)
    }

    /// A set-theoretic section of a surjection on generators (matrix only).
    fn section(&self) -> Result<IntMatrix> {
        let stacked = self.matrix.vstack(&self.target.relations);
        let s = smith(&stacked);
        let rows = (0..self.target.ngens)
            .map(|j| {
                solve_left_with(&s, stacked.rows(), &unit_vec(self.target.ngens, j))
                    .map(|mut z| {
                        z.truncate(self.source.ngens);
                        z
                    })
                    .ok_or_else(|| Error::NoSolution("map is not surjective".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_rows(self.source.ngens, rows))
    }

    /// The matrix of this map in canonical coordinates of source and target,
    /// entries reduced modulo the target factors.
    pub fn canonical_matrix(&self) -> IntMatrix {
        let (_, _, from) = self.source.canonical_form();
        let rows = (0..from.matrix.rows())
            .map(|i| self.target.canonical(&self.apply(from.matrix.row(i))))
            .collect();
        IntMatrix::from_rows(self.target.invariant_factors().len(), rows)
    }

    /// Block-diagonal map between direct sums.
    pub fn direct_sum(maps: &[AbHom]) -> AbHom {
        let src = FgAbGroup::direct_sum(&maps.iter().map(|m| m.source.clone()).collect::<Vec<_>>());
        let tgt = FgAbGroup::direct_sum(&maps.iter().map(|m| m.target.clone()).collect::<Vec<_>>());
        let mut mat = IntMatrix::zeros(src.ngens, tgt.ngens);
        let (mut r0, mut c0) = (0, 0);
        for m in maps {
            for i in 0..m.matrix.rows() {
                for j in 0..m.matrix.cols() {
                    mat[(r0 + i, c0 + j)] = m.matrix[(i, j)].clone();
                }
            }
            r0 += m.matrix.rows();
            c0 += m.matrix.cols();
        }
        AbHom::new_unchecked(src, tgt, mat)
    }
}

/// Sign-normalised copy of a vector (first nonzero entry positive); handy for
/// comparing lattice generators.
pub fn normalise_sign(v: &[BigInt]) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.iter().map(|y| -y).collect(),
        _ => v.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_vec;

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn invariant_factors_of_sum() {
        let g = FgAbGroup::from_factors(&[z(2), z(3)]);
        assert_eq!(g.invariant_factors(), &[z(6)]);
        assert_eq!(g.order(), Some(z(6)));
        assert_eq!(g.elements().unwrap().len(), 6);
    }

    #[test]
    fn cokernel_of_inclusion() {
        let z2 = FgAbGroup::free(2);
        let h = AbHom::new(FgAbGroup::free(1), z2, IntMatrix::from_i64(2, &[&[2, 0]])).unwrap();
        let (c, _) = h.cokernel();
        assert_eq!(c.invariant_factors(), &[z(2), z(0)]);
    }

    #[test]
    fn ill_defined_rejected() {
        let r = AbHom::new(FgAbGroup::cyclic(2), FgAbGroup::cyclic(3), IntMatrix::from_i64(1, &[&[1]]));
        assert!(matches!(r, Err(Error::IllDefinedHom(_))));
    }

    #[test]
    fn kernel_inclusion_composes_to_zero() {
        let h = AbHom::new(FgAbGroup::cyclic(12), FgAbGroup::cyclic(4), IntMatrix::from_i64(1, &[&[1]])).unwrap();
        let (k, inc) = h.kernel();
        assert_eq!(k.invariant_factors(), &[z(3)]);
        assert!(inc.then(&h).is_zero());
        let (img, _) = h.image();
        assert_eq!(img.invariant_factors(), &[z(4)]);
    }

    #[test]
    fn tensor_examples() {
        let t = FgAbGroup::tensor(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(3));
        assert!(t.is_trivial());
        let t = FgAbGroup::tensor(&FgAbGroup::cyclic(9), &FgAbGroup::cyclic(3));
        assert_eq!(t.invariant_factors(), &[z(3)]);
    }

    #[test]
    fn inverse_and_factoring() {
        let g = FgAbGroup::cyclic(5);
        let h = AbHom::new(g.clone(), g.clone(), IntMatrix::from_i64(1, &[&[2]])).unwrap();
        let inv = h.inverse().unwrap();
        assert!(h.then(&inv).equals(&AbHom::identity(&g)));
        let inj = AbHom::new(FgAbGroup::cyclic(3), FgAbGroup::cyclic(9), IntMatrix::from_i64(1, &[&[3]])).unwrap();
        let f = AbHom::new(FgAbGroup::free(1), FgAbGroup::cyclic(9), IntMatrix::from_i64(1, &[&[6]])).unwrap();
        let g2 = f.factor_through(&inj).unwrap();
        assert!(g2.then(&inj).equals(&f));
        assert_eq!(g2.target.canonical(&g2.apply(&int_vec(&[1]))), int_vec(&[2]));
    }

    #[test]
    fn coinvariants_of_sign() {
        let g = FgAbGroup::free(1);
        let neg = AbHom::scalar(&g, &z(-1));
        let (q, _) = g.quotient_by_endomorphism_family(&[neg]).unwrap();
        assert_eq!(q.invariant_factors(), &[z(2)]);
    }
}

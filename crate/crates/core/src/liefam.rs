//! SO(2)-graded families of Lie algebras over ℂ[x] or ℂ[x, x⁻¹].
//!
//! A family is a free module with a basis, an integer weight per basis
//! vector (the torus `k(z)` acts on a weight-`w` vector by `z^w`), a bracket
//! table, and a designated weight-0 basis vector `H` which is the image of
//! `e₁₁ − e₂₂` under the embedding of Lie(SO(2)).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{GaussianRational, LaurentPoly, Matrix};
use crate::error::{Axiom, Error, Result};

/// Coordinate ring of the base curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    /// ℂ[x]
    Affine,
    /// ℂ[x, x⁻¹]
    Punctured,
}

impl Base {
    pub fn as_str(self) -> &'static str {
        match self {
            Base::Affine => "affine",
            Base::Punctured => "punctured",
        }
    }
}

/// A validated graded family. Construction checks antisymmetry, weight
/// additivity, compatibility with `H`, and the Jacobi identity, so every
/// value of this type satisfies them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFamily {
    base: Base,
    basis: Vec<String>,
    weights: Vec<i64>,
    h_index: usize,
    /// `[e_i, e_j]` for `i < j`; zero brackets are not stored.
    brackets: BTreeMap<(usize, usize), Vec<LaurentPoly>>,
}

/// One raw bracket table entry: `[e_i, e_j] = coords`.
/// Largest weight and largest power of `x` accepted in a bracket table.
pub const MAX_EXPONENT: i64 = 1 << 16;

pub type BracketEntry = ((usize, usize), Vec<LaurentPoly>);

impl GradedFamily {
    pub fn new(
        base: Base,
        basis: Vec<String>,
        weights: Vec<i64>,
        h_index: usize,
        entries: Vec<BracketEntry>,
    ) -> Result<Self> {
        let rank = basis.len();
        if rank == 0 {
            return Err(Error::Malformed("rank must be positive".into()));
        }
        if weights.len() != rank {
            return Err(Error::Malformed(format!(
                "{} weights for rank {rank}",
                weights.len()
            )));
        }
        if h_index >= rank {
            return Err(Error::Malformed(format!("h_index {h_index} out of range")));
        }
        if let Some(w) = weights.iter().find(|w| w.unsigned_abs() > MAX_EXPONENT as u64) {
            return Err(Error::Malformed(format!("weight {w} outside ±{MAX_EXPONENT}")));
        }

        let mut brackets: BTreeMap<(usize, usize), Vec<LaurentPoly>> = BTreeMap::new();
        for ((i, j), coords) in entries {
            if i >= rank || j >= rank {
                return Err(Error::Malformed(format!("bracket key {i},{j} out of range")));
            }
            if coords.len() != rank {
                return Err(Error::Malformed(format!(
                    "bracket {i},{j} has {} coordinates, expected {rank}",
                    coords.len()
                )));
            }
            let out_of_range = |c: &LaurentPoly| {
                [c.min_exponent(), c.max_exponent()]
                    .into_iter()
                    .flatten()
                    .any(|e| e.unsigned_abs() > MAX_EXPONENT as u64)
            };
            if coords.iter().any(out_of_range) {
                return Err(Error::Malformed(format!(
                    "bracket {i},{j} has exponents outside ±{MAX_EXPONENT}"
                )));
            }
            if base == Base::Affine && !coords.iter().all(LaurentPoly::is_polynomial) {
                return Err(Error::Malformed(format!(
                    "bracket {i},{j} has negative powers of x over the affine line"
                )));
            }
            if i == j {
                if coords.iter().all(Zero::is_zero) {
                    continue;
                }
                return Err(Error::Validation {
                    axiom: Axiom::Antisymmetry,
                    witness: vec![i, i],
                });
            }
            let (key, coords) = if i < j {
                ((i, j), coords)
            } else {
                ((j, i), coords.into_iter().map(|c| -c).collect())
            };
            if let Some(prev) = brackets.get(&key) {
                if *prev != coords {
                    return Err(Error::Validation {
                        axiom: Axiom::Antisymmetry,
                        witness: vec![key.0, key.1],
                    });
                }
            }
            brackets.insert(key, coords);
        }
        brackets.retain(|_, v| !v.iter().all(Zero::is_zero));

        let family = Self {
            base,
            basis,
            weights,
            h_index,
            brackets,
        };
        family.validate()?;
        Ok(family)
    }

    /// Basis names default to `e0, e1, ...`.
    pub fn with_default_names(
        base: Base,
        weights: Vec<i64>,
        h_index: usize,
        entries: Vec<BracketEntry>,
    ) -> Result<Self> {
        let basis = (0..weights.len()).map(|i| format!("e{i}")).collect();
        Self::new(base, basis, weights, h_index, entries)
    }

    fn validate(&self) -> Result<()> {
        let rank = self.rank();
        for (&(i, j), coords) in &self.brackets {
            let target = self.weights[i] + self.weights[j];
            if let Some(p) = (0..rank).find(|&p| !coords[p].is_zero() && self.weights[p] != target) {
                return Err(Error::Validation {
                    axiom: Axiom::WeightAdditivity,
                    witness: vec![i, j, p],
                });
            }
        }

        let h = self.h_index;
        if self.weights[h] != 0 {
            return Err(Error::Validation {
                axiom: Axiom::HCompatibility,
                witness: vec![h, h],
            });
        }
        for i in (0..rank).filter(|&i| i != h) {
            let mut expected = vec![LaurentPoly::zero(); rank];
            expected[i] = LaurentPoly::from(self.weights[i]);
            if self.bracket_basis(h, i) != expected {
                return Err(Error::Validation {
                    axiom: Axiom::HCompatibility,
                    witness: vec![h, i],
                });
            }
        }

        for i in 0..rank {
            for j in i + 1..rank {
                for k in j + 1..rank {
                    if !self.jacobiator(i, j, k).iter().all(Zero::is_zero) {
                        return Err(Error::Validation {
                            axiom: Axiom::Jacobi,
                            witness: vec![i, j, k],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<LaurentPoly> {
        let unit = |a: usize| self.unit_coords(a);
        let term = |a: usize, b: usize, c: usize| {
            self.bracket_coords(&unit(a), &self.bracket_basis(b, c))
        };
        let (t1, t2, t3) = (term(i, j, k), term(j, k, i), term(k, i, j));
        (0..self.rank())
            .map(|p| &(&t1[p] + &t2[p]) + &t3[p])
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn h_index(&self) -> usize {
        self.h_index
    }

    /// Nonzero stored entries `[e_i, e_j]`, `i < j`, in index order.
    pub fn bracket_table(&self) -> &BTreeMap<(usize, usize), Vec<LaurentPoly>> {
        &self.brackets
    }

    pub fn unit_coords(&self, i: usize) -> Vec<LaurentPoly> {
        let mut v = vec![LaurentPoly::zero(); self.rank()];
        v[i] = LaurentPoly::one();
        v
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<LaurentPoly> {
        let zero = || vec![LaurentPoly::zero(); self.rank()];
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => zero(),
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_else(zero),
            std::cmp::Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|c| -c).collect())
                .unwrap_or_else(zero),
        }
    }

    /// Bilinear extension of the bracket table to coordinate vectors.
    pub fn bracket_coords(&self, u: &[LaurentPoly], v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); self.rank()];
        for (&(i, j), table) in &self.brackets {
            // u_i v_j [e_i, e_j] + u_j v_i [e_j, e_i]
            let coeff = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
            if coeff.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(table) {
                if !t.is_zero() {
                    *o = &*o + &(&coeff * t);
                }
            }
        }
        out
    }

    /// Base change to ℂ[x, x⁻¹].
    pub fn localize(&self) -> Result<Self> {
        if self.base == Base::Punctured {
            return Err(Error::AlreadyPunctured);
        }
        Ok(Self {
            base: Base::Punctured,
            ..self.clone()
        })
    }

    /// Specialization at `x = t`.
    pub fn fiber_at(&self, t: &GaussianRational) -> Result<FiberLieAlgebra> {
        if self.base == Base::Punctured && t.is_zero() {
            return Err(Error::PuncturedAtZero);
        }
        let rank = self.rank();
        let mut constants = vec![vec![vec![GaussianRational::zero(); rank]; rank]; rank];
        for (&(i, j), coords) in &self.brackets {
            for (p, c) in coords.iter().enumerate() {
                let v = c.eval_at(t)?;
                constants[j][i][p] = -&v;
                constants[i][j][p] = v;
            }
        }
        Ok(FiberLieAlgebra { constants })
    }

    /// Pulls the structure constants back along `x ↦ mu(x)`.
    pub fn pullback(&self, mu: &crate::arith::Poly) -> Result<Self> {
        if self.base != Base::Affine {
            return Err(Error::Malformed("pullback requires an affine family".into()));
        }
        let brackets = self
            .brackets
            .iter()
            .map(|(&key, coords)| {
                let pulled = coords
                    .iter()
                    .map(|c| {
                        let p = c.to_poly().expect("affine coordinates are polynomials");
                        LaurentPoly::from(p.compose(mu))
                    })
                    .collect();
                (key, pulled)
            })
            .collect();
        Self::new(
            self.base,
            self.basis.clone(),
            self.weights.clone(),
            self.h_index,
            brackets,
        )
    }

    /// Re-presents the family in a new basis. Row `r` of `rows` gives the
    /// `r`-th new basis vector in old coordinates. The change must be
    /// invertible over the base ring, each new vector must be
    /// weight-homogeneous, and `H` itself must appear among the new vectors.
    pub fn change_basis(&self, rows: &[Vec<LaurentPoly>], names: Vec<String>) -> Result<Self> {
        let rank = self.rank();
        if rows.len() != rank || rows.iter().any(|r| r.len() != rank) || names.len() != rank {
            return Err(Error::Malformed("base change must be square of full rank".into()));
        }
        let det = ring_determinant(rows);
        let det_inv = match self.base {
            Base::Affine => match det.as_monomial() {
                Some((c, 0)) => LaurentPoly::constant(c.inv()?),
                _ => return Err(Error::NotAUnit(det.to_string())),
            },
            Base::Punctured => det.inv()?,
        };
        let mut weights = Vec::with_capacity(rank);
        for (r, row) in rows.iter().enumerate() {
            let mut support = (0..rank).filter(|&i| !row[i].is_zero()).map(|i| self.weights[i]);
            let w = support.next().ok_or(Error::NotAUnit(format!("row {r}")))?;
            if support.any(|v| v != w) {
                return Err(Error::Malformed(format!("new basis vector {r} is not homogeneous")));
            }
            weights.push(w);
        }
        let h_unit = self.unit_coords(self.h_index);
        let h_index = rows
            .iter()
            .position(|r| *r == h_unit)
            .ok_or_else(|| Error::Malformed("base change does not keep H".into()))?;

        // old coordinates v = w · M  ⇒  w = v · adj(M) / det
        let adj = ring_adjugate(rows);
        let to_new = |v: &[LaurentPoly]| -> Vec<LaurentPoly> {
            (0..rank)
                .map(|c| {
                    let s = (0..rank).fold(LaurentPoly::zero(), |acc, i| &acc + &(&v[i] * &adj[i][c]));
                    &s * &det_inv
                })
                .collect()
        };
        let mut entries = Vec::new();
        for a in 0..rank {
            for b in a + 1..rank {
                let old = self.bracket_coords(&rows[a], &rows[b]);
                entries.push(((a, b), to_new(&old)));
            }
        }
        if self.base == Base::Affine
            && entries
                .iter()
                .any(|(_, v)| !v.iter().all(LaurentPoly::is_polynomial))
        {
            return Err(Error::NotAUnit(det.to_string()));
        }
        Self::new(self.base, names, weights, h_index, entries)
    }
}

fn minor(rows: &[Vec<LaurentPoly>], skip_row: usize, skip_col: usize) -> Vec<Vec<LaurentPoly>> {
    rows.iter()
        .enumerate()
        .filter(|&(r, _)| r != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(c, _)| c != skip_col)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// Laplace expansion; fine for the small ranks in play.
pub(crate) fn ring_determinant(rows: &[Vec<LaurentPoly>]) -> LaurentPoly {
    match rows.len() {
        0 => LaurentPoly::one(),
        1 => rows[0][0].clone(),
        n => (0..n).fold(LaurentPoly::zero(), |acc, c| {
            if rows[0][c].is_zero() {
                return acc;
            }
            let term = &rows[0][c] * &ring_determinant(&minor(rows, 0, c));
            if c % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            }
        }),
    }
}

fn ring_adjugate(rows: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let n = rows.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = ring_determinant(&minor(rows, j, i));
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .collect()
        })
        .collect()
}

/// A global section of a family: a coordinate vector over its basis.
#[derive(Clone, Debug)]
pub struct FamilyElement {
    family: Arc<GradedFamily>,
    coords: Vec<LaurentPoly>,
}

pub(crate) fn same_family(a: &Arc<GradedFamily>, b: &Arc<GradedFamily>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for FamilyElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_family(&self.family, &other.family)
    }
}

impl Eq for FamilyElement {}

impl FamilyElement {
    pub fn new(family: &Arc<GradedFamily>, coords: Vec<LaurentPoly>) -> Result<Self> {
        if coords.len() != family.rank() {
            return Err(Error::Malformed(format!(
                "element has {} coordinates, family rank is {}",
                coords.len(),
                family.rank()
            )));
        }
        if family.base() == Base::Affine && !coords.iter().all(LaurentPoly::is_polynomial) {
            return Err(Error::Malformed("negative powers of x over the affine line".into()));
        }
        Ok(Self {
            family: Arc::clone(family),
            coords,
        })
    }

    pub fn basis(family: &Arc<GradedFamily>, i: usize) -> Self {
        Self {
            family: Arc::clone(family),
            coords: family.unit_coords(i),
        }
    }

    pub fn zero(family: &Arc<GradedFamily>) -> Self {
        Self {
            family: Arc::clone(family),
            coords: vec![LaurentPoly::zero(); family.rank()],
        }
    }

    pub fn family(&self) -> &Arc<GradedFamily> {
        &self.family
    }

    pub fn coords(&self) -> &[LaurentPoly] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &LaurentPoly {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_family(&self.family, &other.family) {
            Ok(())
        } else {
            Err(Error::FamilyMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            family: Arc::clone(&self.family),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            family: Arc::clone(&self.family),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    /// Multiplication by a base-ring element.
    pub fn scale(&self, f: &LaurentPoly) -> Result<Self> {
        if self.family.base() == Base::Affine && !f.is_polynomial() {
            return Err(Error::Malformed("negative powers of x over the affine line".into()));
        }
        Ok(Self {
            family: Arc::clone(&self.family),
            coords: self.coords.iter().map(|c| c * f).collect(),
        })
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            family: Arc::clone(&self.family),
            coords: self.family.bracket_coords(&self.coords, &other.coords),
        })
    }

    /// Action of `k(z)`: the weight-`w` coordinate is multiplied by `z^w`.
    pub fn so2_act(&self, g: &GroupElement) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(self.family.weights())
            .map(|(c, &w)| c.scale(&g.z.pow(w).expect("z is nonzero")))
            .collect();
        Self {
            family: Arc::clone(&self.family),
            coords,
        }
    }

    /// The same coordinates viewed in `target`, which must be the
    /// localization of this element's family.
    pub fn localize(&self, target: &Arc<GradedFamily>) -> Result<Self> {
        let expected = self.family.localize()?;
        if expected != **target {
            return Err(Error::FamilyMismatch);
        }
        Ok(Self {
            family: Arc::clone(target),
            coords: self.coords.clone(),
        })
    }

    /// Evaluation at `x = t`, as a vector in the fiber.
    pub fn eval_at(&self, t: &GaussianRational) -> Result<Vec<GaussianRational>> {
        self.coords.iter().map(|c| c.eval_at(t)).collect()
    }
}

/// `k(z) ∈ SO(2, ℂ)` with `z ∈ ℚ(i)^×`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    z: GaussianRational,
}

impl GroupElement {
    pub fn new(z: GaussianRational) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { z })
    }

    pub fn z(&self) -> &GaussianRational {
        &self.z
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { z: &self.z * &other.z }
    }

    pub fn inverse(&self) -> Self {
        Self {
            z: self.z.inv().expect("z is nonzero"),
        }
    }
}

/// A finite-dimensional Lie algebra over ℚ(i) given by structure constants:
/// `[e_i, e_j] = Σ_p constants[i][j][p] e_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberLieAlgebra {
    constants: Vec<Vec<Vec<GaussianRational>>>,
}

/// Invariants that separate the special fiber from generic ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberInvariants {
    pub killing_det: GaussianRational,
    pub killing_rank: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
}

impl FiberLieAlgebra {
    pub fn from_constants(constants: Vec<Vec<Vec<GaussianRational>>>) -> Self {
        Self { constants }
    }

    pub fn rank(&self) -> usize {
        self.constants.len()
    }

    pub fn constants(&self) -> &[Vec<Vec<GaussianRational>>] {
        &self.constants
    }

    pub fn bracket(&self, u: &[GaussianRational], v: &[GaussianRational]) -> Vec<GaussianRational> {
        let n = self.rank();
        let mut out = vec![GaussianRational::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                for (o, s) in out.iter_mut().zip(&self.constants[i][j]) {
                    *o += &(&c * s);
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i)`; column `j` holds `[e_i, e_j]`.
    pub fn ad_matrix(&self, i: usize) -> Matrix {
        let n = self.rank();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for p in 0..n {
                m.set(p, j, self.constants[i][j][p].clone());
            }
        }
        m
    }

    /// `K(e_i, e_j) = tr(ad e_i ∘ ad e_j)`.
    pub fn killing_matrix(&self) -> Matrix {
        let n = self.rank();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_matrix(i)).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut tr = GaussianRational::zero();
                for a in 0..n {
                    for b in 0..n {
                        tr += &(ads[i].get(a, b) * ads[j].get(b, a));
                    }
                }
                k.set(i, j, tr);
            }
        }
        k
    }

    pub fn invariants(&self) -> FiberInvariants {
        let n = self.rank();
        let killing = self.killing_matrix();

        let derived_rows: Vec<Vec<GaussianRational>> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.constants[i][j].clone())
            .collect();
        let derived_dim = if derived_rows.is_empty() {
            0
        } else {
            Matrix::from_rows(derived_rows).rank()
        };

        // v is central iff [v, e_i] = 0 for all i; stack the maps v ↦ [v, e_i]
        let mut joint = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for p in 0..n {
                    joint.set(i * n + p, j, self.constants[j][i][p].clone());
                }
            }
        }
        FiberInvariants {
            killing_det: killing.determinant(),
            killing_rank: killing.rank(),
            derived_dim,
            center_dim: n - joint.rank(),
        }
    }
}

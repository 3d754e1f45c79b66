//! Morphisms of pairs `g(m) → g(n)` and of their localizations.
//!
//! Every nonzero morphism is `ψ^{c,k,s}_{m,n}`:
//!
//! - `s = +1`: `H ↦ H`, `X ↦ c xᵏ X`, `Y ↦ c⁻¹ x^{m-n-k} Y`
//! - `s = -1`: `H ↦ -H`, `X ↦ c xᵏ Y`, `Y ↦ c⁻¹ x^{m-n-k} X`
//!
//! with `0 ≤ k ≤ m - n` over ℂ[x] and `k ∈ ℤ` over ℂ[x, x⁻¹]. The torus part
//! is `k(z) ↦ k(z)^s`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{GaussianRational, LaurentPoly, Poly};
use crate::catalog::{self, H, X, Y};
use crate::error::{Error, Result};
use crate::liefam::{same_family, FamilyElement, GradedFamily, GroupElement, MAX_EXPONENT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidMorphism(format!("sign must be ±1, got {v}"))),
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// `ψ^{c,k,s}_{m,n}`, possibly between localizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMorphism {
    m: u32,
    n: u32,
    c: GaussianRational,
    k: i64,
    s: Sign,
    localized: bool,
}

impl PairMorphism {
    pub fn new(m: u32, n: u32, c: GaussianRational, k: i64, s: Sign, localized: bool) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidMorphism("c must be nonzero".into()));
        }
        if k.unsigned_abs() > MAX_EXPONENT as u64 {
            return Err(Error::InvalidMorphism(format!("k = {k} outside ±{MAX_EXPONENT}")));
        }
        if !localized {
            if m < n {
                return Err(Error::InvalidMorphism(format!("Hom({m}, {n}) is zero")));
            }
            if k < 0 || k > (m - n) as i64 {
                return Err(Error::InvalidMorphism(format!(
                    "k = {k} outside 0..={} for Hom({m}, {n})",
                    m - n
                )));
            }
        }
        Ok(Self { m, n, c, k, s, localized })
    }

    pub fn identity(m: u32, localized: bool) -> Self {
        Self::new(m, m, GaussianRational::one(), 0, Sign::Plus, localized).expect("identity is valid")
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c(&self) -> &GaussianRational {
        &self.c
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn s(&self) -> Sign {
        self.s
    }

    pub fn localized(&self) -> bool {
        self.localized
    }

    /// The induced morphism between localizations.
    pub fn localize(&self) -> Self {
        Self {
            localized: true,
            ..self.clone()
        }
    }

    pub fn source_family(&self) -> GradedFamily {
        family(self.m, self.localized)
    }

    pub fn target_family(&self) -> GradedFamily {
        family(self.n, self.localized)
    }

    /// `c xᵏ`, the factor carried by the image of X.
    pub fn x_factor(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.c.clone(), self.k)
    }

    /// `c⁻¹ x^{m-n-k}`, the factor carried by the image of Y.
    pub fn y_factor(&self) -> LaurentPoly {
        let e = self.m as i64 - self.n as i64 - self.k;
        LaurentPoly::monomial(self.c.inv().expect("c is nonzero"), e)
    }

    /// Images of the source basis `(Y, H, X)` in target coordinates.
    pub fn basis_images(&self) -> Vec<Vec<LaurentPoly>> {
        let z = LaurentPoly::zero;
        let (x_img, y_img, h_img) = match self.s {
            Sign::Plus => (
                vec![z(), z(), self.x_factor()],
                vec![self.y_factor(), z(), z()],
                vec![z(), LaurentPoly::one(), z()],
            ),
            Sign::Minus => (
                vec![self.x_factor(), z(), z()],
                vec![z(), z(), self.y_factor()],
                vec![z(), LaurentPoly::from(-1), z()],
            ),
        };
        let mut out = vec![Vec::new(); 3];
        out[Y] = y_img;
        out[H] = h_img;
        out[X] = x_img;
        out
    }

    pub fn apply(&self, v: &FamilyElement) -> Result<FamilyElement> {
        let source = self.source_family();
        if **v.family() != source {
            return Err(Error::FamilyMismatch);
        }
        if !self.localized {
            let e = self.m as i64 - self.n as i64 - self.k;
            if self.k < 0 || e < 0 {
                return Err(Error::NegativeExponent(self.k.min(e)));
            }
        }
        let target = Arc::new(self.target_family());
        let coords = apply_images(&self.basis_images(), v.coords());
        FamilyElement::new(&target, coords)
    }

    pub fn to_linear_map(&self) -> LinearMap {
        LinearMap {
            source: Arc::new(self.source_family()),
            target: Arc::new(self.target_family()),
            images: self.basis_images(),
            group_sign: self.s,
        }
    }
}

impl fmt::Display for PairMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "psi^({},{},{:+})_({},{}){}",
            self.c,
            self.k,
            self.s.value(),
            self.m,
            self.n,
            if self.localized { "*" } else { "" }
        )
    }
}

fn family(n: u32, localized: bool) -> GradedFamily {
    if localized {
        catalog::make_g_localized(n)
    } else {
        catalog::make_g(n)
    }
}

fn apply_images(images: &[Vec<LaurentPoly>], v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let rank = images.first().map_or(0, Vec::len);
    let mut out = vec![LaurentPoly::zero(); rank];
    for (vi, img) in v.iter().zip(images) {
        if vi.is_zero() {
            continue;
        }
        for (o, a) in out.iter_mut().zip(img) {
            if !a.is_zero() {
                *o = &*o + &(vi * a);
            }
        }
    }
    out
}

/// An element of `Hom(m, n)`: either zero or a parametric generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Morphism {
    Zero { m: u32, n: u32, localized: bool },
    Pair(PairMorphism),
}

impl Morphism {
    pub fn source(&self) -> u32 {
        match self {
            Morphism::Zero { m, .. } => *m,
            Morphism::Pair(p) => p.m,
        }
    }

    pub fn target(&self) -> u32 {
        match self {
            Morphism::Zero { n, .. } => *n,
            Morphism::Pair(p) => p.n,
        }
    }

    pub fn localized(&self) -> bool {
        match self {
            Morphism::Zero { localized, .. } => *localized,
            Morphism::Pair(p) => p.localized,
        }
    }

    pub fn apply(&self, v: &FamilyElement) -> Result<FamilyElement> {
        match self {
            Morphism::Pair(p) => p.apply(v),
            Morphism::Zero { m, n, localized } => {
                if **v.family() != family(*m, *localized) {
                    return Err(Error::FamilyMismatch);
                }
                Ok(FamilyElement::zero(&Arc::new(family(*n, *localized))))
            }
        }
    }
}

impl From<PairMorphism> for Morphism {
    fn from(p: PairMorphism) -> Self {
        Morphism::Pair(p)
    }
}

/// Admissible exponents `k` for nonzero generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KRange {
    Bounded { min: i64, max: i64 },
    AllIntegers,
}

impl KRange {
    pub fn contains(&self, k: i64) -> bool {
        match *self {
            KRange::Bounded { min, max } => (min..=max).contains(&k),
            KRange::AllIntegers => true,
        }
    }
}

/// Shape of `Hom(m, n)`: zero, or generators `(c, k, s)` with `c ∈ ℚ(i)^×`,
/// `s = ±1` and `k` in the given range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomSpace {
    Zero,
    Generators { k_range: KRange, signs: [Sign; 2] },
}

pub fn hom_space(m: u32, n: u32, localized: bool) -> HomSpace {
    let signs = [Sign::Plus, Sign::Minus];
    if localized {
        HomSpace::Generators {
            k_range: KRange::AllIntegers,
            signs,
        }
    } else if m < n {
        HomSpace::Zero
    } else {
        HomSpace::Generators {
            k_range: KRange::Bounded {
                min: 0,
                max: (m - n) as i64,
            },
            signs,
        }
    }
}

impl HomSpace {
    pub fn is_zero(&self) -> bool {
        matches!(self, HomSpace::Zero)
    }

    /// Generators for each sign, each admissible `k` (clipped to
    /// `k_window` when unbounded) and each `c` in `cs`.
    pub fn generators(
        &self,
        m: u32,
        n: u32,
        localized: bool,
        cs: &[GaussianRational],
        k_window: std::ops::RangeInclusive<i64>,
    ) -> Vec<PairMorphism> {
        let HomSpace::Generators { k_range, signs } = self else {
            return Vec::new();
        };
        let ks: Vec<i64> = match *k_range {
            KRange::Bounded { min, max } => (min..=max).collect(),
            KRange::AllIntegers => k_window.collect(),
        };
        let mut out = Vec::new();
        for &s in signs {
            for &k in &ks {
                for c in cs {
                    out.push(PairMorphism::new(m, n, c.clone(), k, s, localized).expect("in range"));
                }
            }
        }
        out
    }
}

/// A base-ring-linear map given by the images of the source basis, together
/// with the sign of the accompanying torus map `k ↦ k^s`.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub source: Arc<GradedFamily>,
    pub target: Arc<GradedFamily>,
    /// `images[i]` is the image of source basis vector `i` in target coordinates.
    pub images: Vec<Vec<LaurentPoly>>,
    pub group_sign: Sign,
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        same_family(&self.source, &other.source)
            && same_family(&self.target, &other.target)
            && self.images == other.images
            && self.group_sign == other.group_sign
    }
}

impl LinearMap {
    pub fn apply(&self, v: &FamilyElement) -> Result<FamilyElement> {
        if !same_family(v.family(), &self.source) {
            return Err(Error::FamilyMismatch);
        }
        FamilyElement::new(&self.target, apply_images(&self.images, v.coords()))
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().flatten().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub bracket: bool,
    pub equivariance: bool,
    pub embedding: bool,
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.bracket && self.equivariance && self.embedding
    }
}

/// Torus elements used to test twisted equivariance. Distinct integer
/// weights give distinct characters already at `z = 2`; `z = i` adds a
/// non-real point.
fn probe_group_elements() -> Vec<GroupElement> {
    [GaussianRational::from(2), GaussianRational::i()]
        .into_iter()
        .map(|z| GroupElement::new(z).expect("nonzero"))
        .collect()
}

/// Checks the pair-morphism axioms on basis elements: the map respects
/// brackets, intertwines `k(z)` with `k(z)^s`, and sends `H` to `s·H`.
pub fn verify_linear_map(map: &LinearMap) -> VerificationReport {
    let mut report = VerificationReport {
        bracket: true,
        equivariance: true,
        embedding: true,
        violations: Vec::new(),
    };
    let src = &map.source;
    let tgt = &map.target;
    let rank = src.rank();
    if map.images.len() != rank || map.images.iter().any(|v| v.len() != tgt.rank()) {
        report.bracket = false;
        report.violations.push("image shape does not match the families".into());
        return report;
    }
    let basis_img = |i: usize| FamilyElement::new(tgt, map.images[i].clone());
    let img: Vec<FamilyElement> = match (0..rank).map(basis_img).collect::<Result<_>>() {
        Ok(v) => v,
        Err(e) => {
            report.bracket = false;
            report.violations.push(format!("images are not sections of the target: {e}"));
            return report;
        }
    };

    for i in 0..rank {
        for j in i + 1..rank {
            let lhs = apply_images(&map.images, &src.bracket_basis(i, j));
            let rhs = tgt.bracket_coords(img[i].coords(), img[j].coords());
            if lhs != rhs {
                report.bracket = false;
                report.violations.push(format!(
                    "bracket: image of [{0}, {1}] differs from [image {0}, image {1}]",
                    src.basis_names()[i],
                    src.basis_names()[j]
                ));
            }
        }
    }

    for g in probe_group_elements() {
        let twisted = match map.group_sign {
            Sign::Plus => g.clone(),
            Sign::Minus => g.inverse(),
        };
        for i in 0..rank {
            let e = FamilyElement::basis(src, i);
            let lhs = apply_images(&map.images, e.so2_act(&g).coords());
            let rhs = img[i].so2_act(&twisted);
            if lhs != rhs.coords() {
                report.equivariance = false;
                report.violations.push(format!(
                    "equivariance: fails on {} at z = {}",
                    src.basis_names()[i],
                    g.z()
                ));
            }
        }
    }

    let mut expected_h = tgt.unit_coords(tgt.h_index());
    if map.group_sign == Sign::Minus {
        expected_h = expected_h.iter().map(|c| -c).collect();
    }
    if map.images[src.h_index()] != expected_h {
        report.embedding = false;
        report
            .violations
            .push(format!("embedding: H does not map to {}H", map.group_sign.value()));
    }
    report
}

pub fn verify_morphism(phi: &PairMorphism) -> VerificationReport {
    verify_linear_map(&phi.to_linear_map())
}

/// Recognizes a raw linear map `g(m) → g(n)` as the zero map or one of the
/// parametric generators; `None` if it is neither.
pub fn fit_generator(map: &LinearMap, m: u32, n: u32, localized: bool) -> Option<Morphism> {
    if *map.source != family(m, localized) || *map.target != family(n, localized) {
        return None;
    }
    if map.is_zero() {
        return Some(Morphism::Zero { m, n, localized });
    }
    let slot = match map.group_sign {
        Sign::Plus => X,
        Sign::Minus => Y,
    };
    let (c, k) = map.images[X][slot].as_monomial()?;
    let candidate = PairMorphism::new(m, n, c, k, map.group_sign, localized).ok()?;
    (candidate.basis_images() == map.images).then_some(Morphism::Pair(candidate))
}

/// Diagrammatic composition: `phi : g(m) → g(n)` first, then `psi : g(n) → g(p)`.
///
/// When `phi` has sign `-1` it exchanges the X and Y lines, so `psi`'s
/// parameters act on the swapped line: the result is
/// `(c₁/c₂, k₁ + (n - p) - k₂, -s₂)`. For `s₁ = +1` it is `(c₁c₂, k₁ + k₂, s₂)`.
pub fn compose(phi: &Morphism, psi: &Morphism) -> Result<Morphism> {
    if phi.target() != psi.source() {
        return Err(Error::ChainMismatch(format!(
            "target g({}) of the first map is not the source g({}) of the second",
            phi.target(),
            psi.source()
        )));
    }
    if phi.localized() != psi.localized() {
        return Err(Error::ChainMismatch("localized flags differ".into()));
    }
    let (m, p, localized) = (phi.source(), psi.target(), phi.localized());
    let (Morphism::Pair(a), Morphism::Pair(b)) = (phi, psi) else {
        return Ok(Morphism::Zero { m, n: p, localized });
    };
    let (c, k) = match a.s {
        Sign::Plus => (&a.c * &b.c, a.k + b.k),
        Sign::Minus => (
            a.c.checked_div(&b.c)?,
            a.k + (b.m as i64 - b.n as i64) - b.k,
        ),
    };
    Ok(Morphism::Pair(PairMorphism::new(m, p, c, k, a.s.times(b.s), localized)?))
}

/// `μ*f`: structure constants precomposed with `x ↦ μ(x)`.
pub fn pullback(f: &GradedFamily, mu: &Poly) -> Result<GradedFamily> {
    f.pullback(mu)
}

/// The embedding `g(n) → g(0)`: `X ↦ X`, `Y ↦ xⁿ Y`, `H ↦ H`.
pub fn embed_in_constant(n: u32) -> PairMorphism {
    PairMorphism::new(n, 0, GaussianRational::one(), 0, Sign::Plus, false).expect("valid parameters")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(m: u32, n: u32, c: i64, k: i64, s: i64) -> PairMorphism {
        PairMorphism::new(m, n, c.into(), k, Sign::from_value(s).unwrap(), false).unwrap()
    }

    fn basis(n: u32) -> (Arc<GradedFamily>, FamilyElement, FamilyElement, FamilyElement) {
        let g = Arc::new(catalog::make_g(n));
        let e = |i| FamilyElement::basis(&g, i);
        (g.clone(), e(Y), e(H), e(X))
    }

    #[test]
    fn hom_space_shapes() {
        assert_eq!(
            hom_space(3, 1, false),
            HomSpace::Generators {
                k_range: KRange::Bounded { min: 0, max: 2 },
                signs: [Sign::Plus, Sign::Minus]
            }
        );
        assert!(hom_space(1, 3, false).is_zero());
        let HomSpace::Generators { k_range, .. } = hom_space(0, 0, true) else {
            panic!("localized hom is nonzero");
        };
        assert!(k_range.contains(-4));
    }

    #[test]
    fn apply_generator() {
        let phi = pm(3, 1, 2, 1, 1);
        let (_, y3, h3, x3) = basis(3);
        let (_, y1, h1, x1) = basis(1);
        let x = LaurentPoly::x_pow(1);
        assert_eq!(phi.apply(&x3).unwrap(), x1.scale(&x.scale(&2.into())).unwrap());
        assert_eq!(
            phi.apply(&y3).unwrap(),
            y1.scale(&x.scale(&GaussianRational::ratio(1, 2))).unwrap()
        );
        assert_eq!(phi.apply(&h3).unwrap(), h1);
        let lhs = phi.apply(&x3.bracket(&y3).unwrap()).unwrap();
        let rhs = phi.apply(&x3).unwrap().bracket(&phi.apply(&y3).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, h1.scale(&LaurentPoly::x_pow(3)).unwrap());
    }

    #[test]
    fn identity_and_weyl_flip() {
        let (_, y, h, x) = basis(2);
        let id = PairMorphism::identity(2, false);
        for e in [&y, &h, &x] {
            assert_eq!(id.apply(e).unwrap(), *e);
        }
        let flip = pm(2, 2, 1, 0, -1);
        assert_eq!(flip.apply(&x).unwrap(), y);
        assert_eq!(flip.apply(&y).unwrap(), x);
        assert_eq!(flip.apply(&h).unwrap(), h.scale(&(-1).into()).unwrap());
        assert!(verify_morphism(&flip).ok());
    }

    #[test]
    fn apply_rejects_wrong_source() {
        let (_, y2, _, _) = basis(2);
        assert_eq!(pm(3, 1, 1, 0, 1).apply(&y2).unwrap_err(), Error::FamilyMismatch);
        let loc = pm(3, 1, 1, 0, 1).localize();
        let (_, y3, _, _) = basis(3);
        assert_eq!(loc.apply(&y3).unwrap_err(), Error::FamilyMismatch);
    }

    #[test]
    fn invalid_parameters() {
        assert!(PairMorphism::new(1, 3, 1.into(), 0, Sign::Plus, false).is_err());
        assert!(PairMorphism::new(3, 1, 1.into(), 3, Sign::Plus, false).is_err());
        assert!(PairMorphism::new(3, 1, 0.into(), 0, Sign::Plus, false).is_err());
        assert!(PairMorphism::new(1, 3, 1.into(), -7, Sign::Minus, true).is_ok());
    }

    #[test]
    fn naive_map_between_different_families_fails() {
        let map = LinearMap {
            source: Arc::new(catalog::make_g(2)),
            target: Arc::new(catalog::make_g(1)),
            images: (0..3).map(|i| catalog::make_g(1).unit_coords(i)).collect(),
            group_sign: Sign::Plus,
        };
        let report = verify_linear_map(&map);
        assert!(!report.bracket);
        assert!(report.equivariance && report.embedding);
        assert_eq!(fit_generator(&map, 2, 1, false), None);
    }

    #[test]
    fn wrong_group_sign_breaks_equivariance() {
        let mut map = pm(2, 1, 1, 0, -1).to_linear_map();
        map.group_sign = Sign::Plus;
        let r = verify_linear_map(&map);
        assert!(!r.equivariance && !r.embedding && r.bracket);
    }

    #[test]
    fn composition_law() {
        let a = Morphism::from(pm(5, 3, 2, 1, 1));
        let b = Morphism::from(pm(3, 1, 3, 0, -1));
        assert_eq!(compose(&a, &b).unwrap(), Morphism::from(pm(5, 1, 6, 1, -1)));
        let id = Morphism::from(PairMorphism::identity(3, false));
        assert_eq!(compose(&a, &id).unwrap(), a);
        let f1 = Morphism::from(pm(4, 2, 1, 0, -1));
        let f2 = Morphism::from(pm(2, 1, 1, 1, -1));
        let Morphism::Pair(r) = compose(&f1, &f2).unwrap() else { panic!() };
        assert_eq!(r.s(), Sign::Plus);
        assert!(compose(&b, &a).is_err());
        let zero = Morphism::Zero { m: 3, n: 1, localized: false };
        assert_eq!(compose(&a, &zero).unwrap(), Morphism::Zero { m: 5, n: 1, localized: false });
    }

    #[test]
    fn minus_first_composition_is_extensional() {
        // psi^(2,0,-1)_{3,1} then psi^(3,1,+1)_{1,0}
        let a = pm(3, 1, 2, 0, -1);
        let b = pm(1, 0, 3, 1, 1);
        let Morphism::Pair(ab) = compose(&a.clone().into(), &b.clone().into()).unwrap() else {
            panic!()
        };
        assert_eq!((ab.c().clone(), ab.k(), ab.s()), (GaussianRational::ratio(2, 3), 0, Sign::Minus));
        let (_, y, h, x) = basis(3);
        for e in [y, h, x] {
            assert_eq!(ab.apply(&e).unwrap(), b.apply(&a.apply(&e).unwrap()).unwrap());
        }
    }

    #[test]
    fn embedding_into_constant_family() {
        assert_eq!(embed_in_constant(0), PairMorphism::identity(0, false));
        let phi = embed_in_constant(2);
        let l = catalog::make_l(2);
        let (_, y, h, x) = basis(2);
        let imgs: Vec<_> = [y, h, x].iter().map(|e| phi.apply(e).unwrap()).collect();
        assert_eq!(imgs, l.embedding);
        for n in 0..=10 {
            assert!(verify_morphism(&embed_in_constant(n)).ok());
        }
    }

    #[test]
    fn pullbacks() {
        let g0 = catalog::make_g(0);
        assert_eq!(pullback(&g0, &Poly::from_ints(&[3, 1, 4])).unwrap(), g0);
        let g1 = catalog::make_g(1);
        let g6 = pullback(&pullback(&g1, &Poly::x_pow(2)).unwrap(), &Poly::x_pow(3)).unwrap();
        assert_eq!(g6, catalog::make_g(6));
        assert!(pullback(&catalog::make_g_localized(1), &Poly::x_pow(2)).is_err());
    }
}

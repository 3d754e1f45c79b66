//! Normal forms of rank-3 extensions of the constant family.
//!
//! A graded family with weights `{-2, 0, 2}` and designated `H` is an
//! extension of the constant (𝔰𝔩₂, SO(2)) family over ℂ^× exactly when the
//! H-coordinate of `[X, Y]` is a monomial `c xⁿ`. Rescaling `Y` by `1/c`
//! then gives the canonical family `g(n)`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{GaussianRational, LaurentPoly};
use crate::catalog;
use crate::error::{Error, NotExtensionReason, Result};
use crate::liefam::{Base, FamilyElement, GradedFamily};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub n: u32,
    /// Coefficient `c` in `[X, Y] = c xⁿ H`.
    pub scale_c: GaussianRational,
    /// Rows are the canonical `Y, H, X` in the input basis.
    pub canonical_change: Vec<Vec<LaurentPoly>>,
    /// Input basis indices of the weight -2, 0, 2 vectors.
    pub y_index: usize,
    pub h_index: usize,
    pub x_index: usize,
    /// The weight-0 element acting on the X and Y lines by their weights,
    /// solved for from the bracket table.
    pub recovered_h: Vec<LaurentPoly>,
}

impl ClassificationResult {
    pub fn label(&self) -> String {
        catalog::label(self.n)
    }

    /// The input family rewritten in the canonical basis; equals `make_g(n)`.
    pub fn canonical_family(&self, f: &GradedFamily) -> Result<GradedFamily> {
        f.change_basis(
            &self.canonical_change,
            vec!["Y".into(), "H".into(), "X".into()],
        )
    }
}

fn not_extension(reason: NotExtensionReason) -> Error {
    Error::NotExtension(reason)
}

/// Decides whether `f` is an extension of the constant family and returns
/// its invariant `n` together with the normalizing base change.
pub fn classify_extension(f: &GradedFamily) -> Result<ClassificationResult> {
    if f.base() != Base::Affine {
        return Err(not_extension(NotExtensionReason::NotAffine));
    }
    let weights = f.weights();
    let mut sorted = weights.to_vec();
    sorted.sort_unstable();
    if sorted != [-2, 0, 2] {
        return Err(not_extension(NotExtensionReason::WrongWeights(weights.to_vec())));
    }
    let idx = |w: i64| weights.iter().position(|&v| v == w).unwrap();
    let (y, h, x) = (idx(-2), f.h_index(), idx(2));

    let xy = f.bracket_basis(x, y)[h].clone();
    if xy.is_zero() {
        return Err(not_extension(NotExtensionReason::DegenerateBracket));
    }
    let Some((c, n)) = xy.as_monomial() else {
        return Err(not_extension(NotExtensionReason::NonMonomial {
            coefficient: xy.to_string(),
        }));
    };
    let n = u32::try_from(n).expect("affine coefficients have no negative powers");

    let mut canonical_change = vec![vec![LaurentPoly::zero(); 3]; 3];
    canonical_change[catalog::Y][y] = LaurentPoly::constant(c.inv()?);
    canonical_change[catalog::H][h] = LaurentPoly::one();
    canonical_change[catalog::X][x] = LaurentPoly::one();

    Ok(ClassificationResult {
        n,
        scale_c: c,
        canonical_change,
        y_index: y,
        h_index: h,
        x_index: x,
        recovered_h: recover_h(f, y, h, x)?,
    })
}

/// The unique `a·e_h` with `[a e_h, e_x] = 2 e_x` and `[a e_h, e_y] = -2 e_y`.
fn recover_h(f: &GradedFamily, y: usize, h: usize, x: usize) -> Result<Vec<LaurentPoly>> {
    let on_x = f.bracket_basis(h, x)[x].clone();
    let on_y = f.bracket_basis(h, y)[y].clone();
    // a · on_x = 2 and a · on_y = -2 with a a base-ring element
    let a = &LaurentPoly::from(2) * &on_x.inv()?;
    if &a * &on_y != LaurentPoly::from(-2) {
        return Err(Error::NotCanonical("no weight-0 element acts by the weights".into()));
    }
    let mut v = vec![LaurentPoly::zero(); 3];
    v[h] = a;
    Ok(v)
}

/// A basis `(Y, H, X)` of a family satisfying the `g(n)` relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub y: FamilyElement,
    pub h: FamilyElement,
    pub x: FamilyElement,
}

impl CanonicalBasis {
    /// The basis of `f` given by a classification.
    pub fn from_classification(f: &Arc<GradedFamily>, r: &ClassificationResult) -> Result<Self> {
        let row = |i: usize| FamilyElement::new(f, r.canonical_change[i].clone());
        Ok(Self {
            y: row(catalog::Y)?,
            h: row(catalog::H)?,
            x: row(catalog::X)?,
        })
    }

    fn check(&self, f: &Arc<GradedFamily>, n: u32) -> Result<()> {
        let fail = |what: &str| Err(Error::NotCanonical(what.into()));
        for e in [&self.y, &self.h, &self.x] {
            if !crate::liefam::same_family(e.family(), f) {
                return Err(Error::FamilyMismatch);
            }
        }
        if self.h != FamilyElement::basis(f, f.h_index()) {
            return fail("H is not the designated element");
        }
        if self.h.bracket(&self.x)? != self.x.scale(&2.into())? {
            return fail("[H, X] != 2X");
        }
        if self.h.bracket(&self.y)? != self.y.scale(&(-2).into())? {
            return fail("[H, Y] != -2Y");
        }
        if self.x.bracket(&self.y)? != self.h.scale(&LaurentPoly::x_pow(n as i64))? {
            return fail("[X, Y] != x^n H");
        }
        Ok(())
    }
}

/// For two canonical bases of the same family, the `λ` with
/// `X₂ = λX₁`, `Y₂ = λ⁻¹Y₁`, `H₂ = H₁`. It is the square `z²` of the torus
/// element conjugating one basis into the other.
pub fn canonical_uniqueness_witness(
    b1: &CanonicalBasis,
    b2: &CanonicalBasis,
    f: &Arc<GradedFamily>,
) -> Result<GaussianRational> {
    let n = classify_extension(f)?.n;
    b1.check(f, n)?;
    b2.check(f, n)?;
    if b1.h != b2.h {
        return Err(Error::NoWitness("H differs".into()));
    }
    let p = (0..3)
        .find(|&p| !b1.x.coord(p).is_zero())
        .ok_or_else(|| Error::NoWitness("X vanishes".into()))?;
    let ratio = b2.x.coord(p) * &b1.x.coord(p).inv().map_err(|_| Error::NoWitness("X is not a unit multiple".into()))?;
    let lambda = match ratio.as_monomial() {
        Some((c, 0)) => c,
        _ => return Err(Error::NoWitness(format!("X ratio {ratio} is not a constant"))),
    };
    let lam = LaurentPoly::constant(lambda.clone());
    if b2.x != b1.x.scale(&lam)? {
        return Err(Error::NoWitness("X₂ is not a multiple of X₁".into()));
    }
    if b2.y != b1.y.scale(&lam.inv()?)? {
        return Err(Error::NoWitness("Y₂ != λ⁻¹ Y₁".into()));
    }
    Ok(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSummary {
    pub n: u32,
    pub label: String,
}

/// One class per `n = 0..=max`, each obtained by classifying `make_g(n)`.
pub fn enumerate_classes(max: u32) -> Vec<ClassSummary> {
    (0..=max)
        .map(|n| {
            let r = classify_extension(&catalog::make_g(n)).expect("g(n) is an extension");
            ClassSummary {
                n: r.n,
                label: r.label(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;
    use crate::liefam::GroupElement;

    fn family_with_xy(xy: Poly) -> GradedFamily {
        let z = LaurentPoly::zero;
        GradedFamily::new(
            Base::Affine,
            vec!["Y".into(), "H".into(), "X".into()],
            vec![-2, 0, 2],
            1,
            vec![
                ((0, 1), vec![LaurentPoly::from(2), z(), z()]),
                ((1, 2), vec![z(), z(), LaurentPoly::from(2)]),
                ((2, 0), vec![z(), LaurentPoly::from(xy), z()]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn catalog_classifies_to_its_index() {
        for n in 0..=12 {
            let r = classify_extension(&catalog::make_g(n)).unwrap();
            assert_eq!(r.n, n);
            assert_eq!(r.scale_c, GaussianRational::one());
            let g = catalog::make_g(n);
            let identity: Vec<_> = (0..3).map(|i| g.unit_coords(i)).collect();
            assert_eq!(r.canonical_change, identity);
        }
    }

    #[test]
    fn rescaled_basis() {
        // X' = 3X, Y' = 5Y in g(2): [X', Y'] = 15 x^2 H
        let f = family_with_xy(Poly::monomial(15.into(), 2));
        let r = classify_extension(&f).unwrap();
        assert_eq!((r.n, r.scale_c.clone()), (2, GaussianRational::from(15)));
        assert_eq!(r.canonical_change[0][0], LaurentPoly::constant(GaussianRational::ratio(1, 15)));
        assert_eq!(r.canonical_family(&f).unwrap(), catalog::make_g(2));
    }

    #[test]
    fn rejections() {
        let err = classify_extension(&family_with_xy(Poly::from_ints(&[-1, 1]))).unwrap_err();
        assert!(matches!(err, Error::NotExtension(NotExtensionReason::NonMonomial { .. })));
        let err = classify_extension(&family_with_xy(Poly::zero())).unwrap_err();
        assert_eq!(err, Error::NotExtension(NotExtensionReason::DegenerateBracket));
        let punctured = catalog::make_g_localized(1);
        assert_eq!(
            classify_extension(&punctured).unwrap_err(),
            Error::NotExtension(NotExtensionReason::NotAffine)
        );
    }

    #[test]
    fn wrong_weights() {
        let z = LaurentPoly::zero;
        let f = GradedFamily::with_default_names(
            Base::Affine,
            vec![-4, 0, 4],
            1,
            vec![
                ((0, 1), vec![LaurentPoly::from(4), z(), z()]),
                ((1, 2), vec![z(), z(), LaurentPoly::from(4)]),
                ((2, 0), vec![z(), LaurentPoly::one(), z()]),
            ],
        )
        .unwrap();
        assert_eq!(
            classify_extension(&f).unwrap_err(),
            Error::NotExtension(NotExtensionReason::WrongWeights(vec![-4, 0, 4]))
        );
    }

    #[test]
    fn uniqueness_witness() {
        let f = Arc::new(catalog::make_g(3));
        let r = classify_extension(&f).unwrap();
        let b1 = CanonicalBasis::from_classification(&f, &r).unwrap();
        assert_eq!(canonical_uniqueness_witness(&b1, &b1, &f).unwrap(), GaussianRational::one());

        let g = GroupElement::new(2.into()).unwrap();
        let b2 = CanonicalBasis {
            y: b1.y.so2_act(&g),
            h: b1.h.so2_act(&g),
            x: b1.x.so2_act(&g),
        };
        assert_eq!(canonical_uniqueness_witness(&b1, &b2, &f).unwrap(), 4.into());

        let minus = LaurentPoly::from(-1);
        let b3 = CanonicalBasis {
            y: b1.y.scale(&minus).unwrap(),
            h: b1.h.clone(),
            x: b1.x.scale(&minus).unwrap(),
        };
        assert_eq!(canonical_uniqueness_witness(&b1, &b3, &f).unwrap(), (-1).into());

        let bad = CanonicalBasis {
            y: b1.y.clone(),
            h: b1.h.clone(),
            x: b1.x.scale(&2.into()).unwrap(),
        };
        assert!(matches!(
            canonical_uniqueness_witness(&b1, &bad, &f),
            Err(Error::NotCanonical(_))
        ));
    }

    #[test]
    fn enumerate() {
        let labels: Vec<_> = enumerate_classes(2).into_iter().map(|c| (c.n, c.label)).collect();
        assert_eq!(
            labels,
            vec![
                (0, "constant".to_string()),
                (1, "contraction".to_string()),
                (2, "deformation".to_string())
            ]
        );
        assert_eq!(enumerate_classes(0).len(), 1);
    }
}

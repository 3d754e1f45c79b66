//! The named families: `g(n)` with `[H,X] = 2X`, `[H,Y] = -2Y`,
//! `[X,Y] = xⁿ H`, and the realizations `l(n)` and `s(2k)` of `g(n)` and
//! `g(2k)` as subfamilies of the constant family `g(0)`.
//!
//! All constructors use the basis order `(Y, H, X)` with weights `(-2, 0, 2)`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::LaurentPoly;
use crate::error::{Error, Result};
use crate::liefam::{Base, FamilyElement, GradedFamily};

pub const Y: usize = 0;
pub const H: usize = 1;
pub const X: usize = 2;

pub const WEIGHTS: [i64; 3] = [-2, 0, 2];

fn basis_names() -> Vec<String> {
    vec!["Y".into(), "H".into(), "X".into()]
}

fn coords(y: LaurentPoly, h: LaurentPoly, x: LaurentPoly) -> Vec<LaurentPoly> {
    vec![y, h, x]
}

/// `g(n)` over ℂ[x].
pub fn make_g(n: u32) -> GradedFamily {
    let z = LaurentPoly::zero;
    let entries = vec![
        ((Y, H), coords(LaurentPoly::from(2), z(), z())),
        ((Y, X), coords(z(), -LaurentPoly::x_pow(n as i64), z())),
        ((H, X), coords(z(), z(), LaurentPoly::from(2))),
    ];
    GradedFamily::new(Base::Affine, basis_names(), WEIGHTS.to_vec(), H, entries)
        .expect("g(n) satisfies the pair axioms")
}

/// `g(n)` over ℂ[x, x⁻¹].
pub fn make_g_localized(n: u32) -> GradedFamily {
    make_g(n).localize().expect("make_g is affine")
}

/// Descriptive name used in reports.
pub fn label(n: u32) -> String {
    match n {
        0 => "constant".into(),
        1 => "contraction".into(),
        2 => "deformation".into(),
        _ => format!("g({n})"),
    }
}

/// A subfamily of `g(0)` spanned over ℂ[x] by the images of an abstract
/// family's basis.
#[derive(Clone, Debug)]
pub struct Realization {
    /// Structure constants read off from the embedded basis.
    pub family: GradedFamily,
    pub ambient: Arc<GradedFamily>,
    /// Images of the abstract basis `(Y, H, X)` inside `ambient`.
    pub embedding: Vec<FamilyElement>,
}

impl Realization {
    /// Builds the subfamily spanned by `images`, each of which must be a
    /// monomial multiple of a distinct ambient basis vector.
    pub fn from_diagonal_images(ambient: Arc<GradedFamily>, images: Vec<FamilyElement>) -> Result<Self> {
        let rank = ambient.rank();
        if images.len() != rank {
            return Err(Error::Malformed("need one image per ambient basis vector".into()));
        }
        // slot[p] = (abstract index, monomial scale) living on ambient coordinate p
        let mut slot: Vec<Option<(usize, LaurentPoly)>> = vec![None; rank];
        for (i, img) in images.iter().enumerate() {
            let support: Vec<usize> = (0..rank).filter(|&p| !img.coord(p).is_zero()).collect();
            let [p] = support[..] else {
                return Err(Error::Malformed(format!("image {i} is not supported on one basis vector")));
            };
            if img.coord(p).as_monomial().is_none() {
                return Err(Error::Malformed(format!("image {i} is not a monomial multiple")));
            }
            if slot[p].is_some() {
                return Err(Error::Malformed(format!("two images on basis vector {p}")));
            }
            slot[p] = Some((i, img.coord(p).clone()));
        }
        let mut entries = Vec::new();
        for a in 0..rank {
            for b in a + 1..rank {
                let v = images[a].bracket(&images[b])?;
                let mut out = vec![LaurentPoly::zero(); rank];
                for p in 0..rank {
                    if v.coord(p).is_zero() {
                        continue;
                    }
                    let (idx, scale) = slot[p].clone().expect("every ambient slot is filled");
                    let (c, k) = scale.as_monomial().expect("checked above");
                    let q = v.coord(p).shift(-k).scale(&c.inv()?);
                    if !q.is_polynomial() {
                        return Err(Error::Malformed("images do not span a subalgebra".into()));
                    }
                    out[idx] = q;
                }
                entries.push(((a, b), out));
            }
        }
        let weights = (0..rank)
            .map(|i| {
                let p = slot.iter().position(|s| s.as_ref().is_some_and(|(j, _)| *j == i)).unwrap();
                ambient.weights()[p]
            })
            .collect();
        let h_index = slot[ambient.h_index()].as_ref().map(|(i, _)| *i).unwrap();
        let family = GradedFamily::new(
            Base::Affine,
            ambient.basis_names().to_vec(),
            weights,
            h_index,
            entries,
        )?;
        Ok(Self {
            family,
            ambient,
            embedding: images,
        })
    }
}

fn embedded(ambient: &Arc<GradedFamily>, y: LaurentPoly, h: LaurentPoly, x: LaurentPoly) -> Vec<FamilyElement> {
    let z = LaurentPoly::zero;
    vec![
        FamilyElement::new(ambient, coords(y, z(), z())).expect("valid"),
        FamilyElement::new(ambient, coords(z(), h, z())).expect("valid"),
        FamilyElement::new(ambient, coords(z(), z(), x)).expect("valid"),
    ]
}

/// `l(n) ⊂ g(0)` with basis `{xⁿ ⊗ Y, 1 ⊗ H, 1 ⊗ X}`, isomorphic to `g(n)`.
pub fn make_l(n: u32) -> Realization {
    let ambient = Arc::new(make_g(0));
    let images = embedded(&ambient, LaurentPoly::x_pow(n as i64), LaurentPoly::one(), LaurentPoly::one());
    Realization::from_diagonal_images(ambient, images).expect("l(n) is a subfamily")
}

/// `s(2k) ⊂ g(0)` with basis `{xᵏ ⊗ Y, 1 ⊗ H, xᵏ ⊗ X}`, isomorphic to `g(2k)`.
pub fn make_s(k: u32) -> Realization {
    let ambient = Arc::new(make_g(0));
    let xk = LaurentPoly::x_pow(k as i64);
    let images = embedded(&ambient, xk.clone(), LaurentPoly::one(), xk);
    Realization::from_diagonal_images(ambient, images).expect("s(2k) is a subfamily")
}

fn check_constant_family(f: &FamilyElement) -> Result<()> {
    if **f.family() != make_g(0) {
        return Err(Error::FamilyMismatch);
    }
    Ok(())
}

fn divisible(c: &LaurentPoly, n: u32) -> bool {
    c.to_poly().is_some_and(|p| p.divisible_by_power(n as usize))
}

/// Membership in `l(n)`: the Y-coordinate is divisible by `xⁿ`.
pub fn member_l(f: &FamilyElement, n: u32) -> Result<bool> {
    check_constant_family(f)?;
    Ok(divisible(f.coord(Y), n))
}

/// Membership in `s(2k)`: the X- and Y-coordinates are divisible by `xᵏ`.
pub fn member_s(f: &FamilyElement, k: u32) -> Result<bool> {
    check_constant_family(f)?;
    Ok(divisible(f.coord(Y), k) && divisible(f.coord(X), k))
}

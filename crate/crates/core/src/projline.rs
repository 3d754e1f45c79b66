//! Extensions over ℙ¹, stored as gluing data.
//!
//! Chart 1 carries `g(m)`, chart 2 carries `g(n)`, and the two are identified
//! over ℂ^× by the localized morphism `ψ^{1,k,+1}`. The gluing is diagonal in
//! the weight basis: `Y ↦ x^{m-n-k} Y`, `H ↦ H`, `X ↦ xᵏ X`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{GaussianRational, LaurentPoly, Matrix};
use crate::catalog::{self, H, X, Y};
use crate::error::{Error, Result};
use crate::liefam::{FamilyElement, GradedFamily};
use crate::morphisms::{compose, verify_morphism, Morphism, PairMorphism, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Extension {
    m: u32,
    n: u32,
    k: i64,
}

impl P1Extension {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// The localized gluing `g(m)|ℂ^× → g(n)|ℂ^×`.
    pub fn gluing(&self) -> PairMorphism {
        PairMorphism::new(self.m, self.n, GaussianRational::one(), self.k, Sign::Plus, true)
            .expect("localized morphisms accept any k")
    }

    /// Exponents of the gluing on the `(Y, H, X)` lines.
    pub fn exponents(&self) -> Gluing {
        Gluing {
            exponents: [self.m as i64 - self.n as i64 - self.k, 0, self.k],
        }
    }
}

impl fmt::Display for P1Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g({}), g({}), k = {})", self.m, self.n, self.k)
    }
}

/// Builds the extension glued by `ψ^{1,k,+1}`, checking the gluing morphism.
pub fn make_p1(m: u32, n: u32, k: i64) -> P1Extension {
    let e = P1Extension { m, n, k };
    debug_assert!(verify_morphism(&e.gluing()).ok());
    e
}

/// How a raw gluing `ψ^{c,k,s}` was brought to normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub extension: P1Extension,
    pub original: PairMorphism,
    /// Automorphism of the chart-1 family applied before the raw gluing.
    pub chart_automorphism: PairMorphism,
}

/// Normalizes an arbitrary localized gluing `ψ^{c,k,s}: g(m) → g(n)` to
/// `c = 1`, `s = +1` by precomposing with an automorphism of `g(m)`.
///
/// For `s = -1` the automorphism exchanges the X and Y lines, so the
/// normalized exponent is `m - n - k` rather than `k`.
pub fn normalize_gluing(m: u32, n: u32, c: GaussianRational, k: i64, s: Sign) -> Result<Normalization> {
    let original = PairMorphism::new(m, n, c.clone(), k, s, true)?;
    let aut_c = match s {
        Sign::Plus => c.inv()?,
        Sign::Minus => c,
    };
    let chart_automorphism = PairMorphism::new(m, m, aut_c, 0, s, true)?;
    let Morphism::Pair(glued) = compose(
        &Morphism::Pair(chart_automorphism.clone()),
        &Morphism::Pair(original.clone()),
    )?
    else {
        unreachable!("both factors are nonzero");
    };
    debug_assert!(glued.c().is_one() && glued.s() == Sign::Plus);
    Ok(Normalization {
        extension: make_p1(m, n, glued.k()),
        original,
        chart_automorphism,
    })
}

/// Isomorphism of normalized extensions, with identity group part.
pub fn p1_isomorphic(e1: &P1Extension, e2: &P1Extension) -> bool {
    e1 == e2
}

/// Isomorphism allowing chart automorphisms that act on the group by
/// inversion. Both charts must then exchange their X and Y lines, which
/// identifies `(m, n, k)` with `(m, n, m - n - k)`.
pub fn p1_isomorphic_twisted(e1: &P1Extension, e2: &P1Extension) -> bool {
    e1.m == e2.m && e1.n == e2.n && (e1.k == e2.k || e1.k == e1.m as i64 - e1.n as i64 - e2.k)
}

/// Line-bundle degrees on the weight-0, +2 and −2 summands.
pub fn splitting_type(e: &P1Extension) -> [i64; 3] {
    [0, -e.k, e.k + e.n as i64 - e.m as i64]
}

/// A weight-diagonal gluing of two rank-3 charts: the line of weight
/// `(-2, 0, 2)[i]` in chart 1 maps to `x^{exponents[i]}` times the same line
/// in chart 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub exponents: [i64; 3],
}

impl Gluing {
    /// The same bundle described from the other chart. With `y = 1/x`, the
    /// inverse gluing `x^{-e} = y^{e}` keeps every exponent.
    pub fn swap_charts(&self) -> Self {
        *self
    }

    /// Sections of a line glued by `x^e`: polynomials `f` with `f(x)·x^e`
    /// a polynomial in `1/x`, so `deg f ≤ -e`.
    pub fn section_dimension(&self) -> usize {
        self.exponents.iter().map(|&e| (1 - e).max(0) as usize).sum()
    }

    /// Degrees of the line summands in `(Y, H, X)` order.
    pub fn degrees(&self) -> [i64; 3] {
        self.exponents.map(|e| -e)
    }
}

/// A global section: matching elements of the two chart families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPair {
    pub chart1: FamilyElement,
    pub chart2: FamilyElement,
}

#[derive(Clone, Debug)]
pub struct GlobalSections {
    pub extension: P1Extension,
    pub max_degree: usize,
    pub dimension: usize,
    pub basis: Vec<ChartPair>,
}

/// Bound that always contains every section.
pub fn default_max_degree(e: &P1Extension) -> usize {
    e.k.unsigned_abs() as usize + e.m as usize + e.n as usize + 2
}

fn minimum_bound(e: &P1Extension) -> usize {
    e.k.unsigned_abs() as usize + e.m as usize + e.n as usize
}

/// Solves for pairs `(s₁, s₂)` with polynomial coordinates of degree at most
/// `bound` such that `gluing(s₁)` with `x ↦ 1/x` equals `s₂`.
fn solve_sections(e: &P1Extension, bound: usize) -> (Vec<Vec<GaussianRational>>, Arc<GradedFamily>, Arc<GradedFamily>) {
    let width = bound + 1;
    let g1 = Arc::new(catalog::make_g(e.m));
    let g2 = Arc::new(catalog::make_g(e.n));
    let g1_loc = Arc::new(catalog::make_g_localized(e.m));
    let gluing = e.gluing();
    // unknowns: chart-1 coefficients (i, j) then chart-2 coefficients (i, j)
    let mut rows: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, GaussianRational)> = Vec::new();
    let row_of = |key: (usize, i64), rows: &mut BTreeMap<(usize, i64), usize>| {
        let next = rows.len();
        *rows.entry(key).or_insert(next)
    };
    for i in 0..3 {
        for j in 0..width {
            let mut coords = vec![LaurentPoly::zero(); 3];
            coords[i] = LaurentPoly::x_pow(j as i64);
            let v = FamilyElement::new(&g1_loc, coords).expect("valid coordinates");
            let image = gluing.apply(&v).expect("gluing applies to its source");
            for (p, c) in image.coords().iter().enumerate() {
                for (exp, a) in c.substitute_inverse().terms() {
                    let r = row_of((p, exp), &mut rows);
                    entries.push((r, i * width + j, a.clone()));
                }
            }
            let r = row_of((i, j as i64), &mut rows);
            entries.push((r, 3 * width + i * width + j, -GaussianRational::one()));
        }
    }
    let mut system = Matrix::zeros(rows.len(), 6 * width);
    for (r, c, a) in entries {
        let sum = system.get(r, c) + &a;
        system.set(r, c, sum);
    }
    (system.nullspace(), g1, g2)
}

fn coords_from(v: &[GaussianRational], width: usize) -> Vec<LaurentPoly> {
    (0..3)
        .map(|i| LaurentPoly::new(0, v[i * width..(i + 1) * width].to_vec()))
        .collect()
}

/// Global sections by direct chart matching. The default bound is
/// `|k| + m + n + 2`; bounds below `|k| + m + n`, or bounds at which the
/// dimension still grows, are rejected.
pub fn global_sections(e: &P1Extension, max_degree: Option<usize>) -> Result<GlobalSections> {
    let bound = max_degree.unwrap_or_else(|| default_max_degree(e));
    if bound < minimum_bound(e) {
        return Err(Error::DegreeBoundTooSmall {
            bound,
            reason: format!("need at least |k| + m + n = {}", minimum_bound(e)),
        });
    }
    let (null, g1, g2) = solve_sections(e, bound);
    let (bigger, _, _) = solve_sections(e, bound + 1);
    if bigger.len() != null.len() {
        return Err(Error::DegreeBoundTooSmall {
            bound,
            reason: format!("dimension changes from {} to {} at the next bound", null.len(), bigger.len()),
        });
    }
    let width = bound + 1;
    let basis = null
        .iter()
        .map(|v| ChartPair {
            chart1: FamilyElement::new(&g1, coords_from(&v[..3 * width], width)).expect("polynomial coordinates"),
            chart2: FamilyElement::new(&g2, coords_from(&v[3 * width..], width)).expect("polynomial coordinates"),
        })
        .collect();
    Ok(GlobalSections {
        extension: *e,
        max_degree: bound,
        dimension: null.len(),
        basis,
    })
}

/// `dim H⁰(O(d)) = max(d + 1, 0)` summed over the splitting type.
pub fn expected_section_dimension(e: &P1Extension) -> usize {
    splitting_type(e).iter().map(|&d| (d + 1).max(0) as usize).sum()
}

/// The weight-0 section `(H, H)`, present on every extension.
pub fn h_section(e: &P1Extension) -> ChartPair {
    ChartPair {
        chart1: FamilyElement::basis(&Arc::new(catalog::make_g(e.m)), H),
        chart2: FamilyElement::basis(&Arc::new(catalog::make_g(e.n)), H),
    }
}

/// Indices of the weight lines, in `(Y, H, X)` order.
pub const LINES: [usize; 3] = [Y, H, X];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(global_sections(&make_p1(0, 0, 0), None).unwrap().dimension, 3);
        assert_eq!(global_sections(&make_p1(2, 0, 1), None).unwrap().dimension, 1);
        assert_eq!(global_sections(&make_p1(0, 0, -2), None).unwrap().dimension, 4);
        assert_eq!(splitting_type(&make_p1(2, 0, 1)), [0, -1, -1]);
        assert_eq!(splitting_type(&make_p1(0, 0, -2)), [0, 2, -2]);
    }

    #[test]
    fn gluing_images() {
        let g = make_p1(2, 0, 1).gluing();
        let images = g.basis_images();
        assert_eq!(images[X][X], LaurentPoly::x_pow(1));
        assert_eq!(images[Y][Y], LaurentPoly::x_pow(1));
        assert_eq!(images[H][H], LaurentPoly::one());
    }

    #[test]
    fn sections_match_under_gluing() {
        let e = make_p1(1, 2, -2);
        let s = global_sections(&e, None).unwrap();
        let g1_loc = Arc::new(catalog::make_g_localized(1));
        for pair in &s.basis {
            let v = pair.chart1.localize(&g1_loc).unwrap();
            let image = e.gluing().apply(&v).unwrap();
            let substituted: Vec<LaurentPoly> = image.coords().iter().map(|c| c.substitute_inverse()).collect();
            assert_eq!(substituted, pair.chart2.coords());
        }
        assert!(s.basis.iter().any(|p| p == &h_section(&e)) || s.dimension >= 1);
    }

    #[test]
    fn bound_checks() {
        let e = make_p1(1, 1, 3);
        assert!(matches!(
            global_sections(&e, Some(2)),
            Err(Error::DegreeBoundTooSmall { bound: 2, .. })
        ));
        assert!(global_sections(&e, Some(5)).is_ok());
    }

    #[test]
    fn normalization() {
        let plus = normalize_gluing(3, 1, GaussianRational::ratio(5, 2), 4, Sign::Plus).unwrap();
        assert_eq!(plus.extension, make_p1(3, 1, 4));
        let minus = normalize_gluing(3, 1, GaussianRational::ratio(5, 2), 4, Sign::Minus).unwrap();
        assert_eq!(minus.extension, make_p1(3, 1, 3 - 1 - 4));
    }

    #[test]
    fn twisted_isomorphism_exchanges_lines() {
        let a = make_p1(3, 1, 0);
        let b = make_p1(3, 1, 2);
        assert!(!p1_isomorphic(&a, &b));
        assert!(p1_isomorphic_twisted(&a, &b));
        let mut sa = splitting_type(&a);
        let mut sb = splitting_type(&b);
        sa.sort();
        sb.sort();
        assert_eq!(sa, sb);
    }
}

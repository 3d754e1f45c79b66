//! The universal enveloping algebra `U(g(n))` over ℂ[x] in PBW normal form.
//!
//! Elements are ℂ[x]-combinations of ordered monomials `Y^a H^b X^c`. Products
//! are normal-ordered with
//!
//! ```text
//! X·Y → Y·X + xⁿ·H      X·H → H·X − 2X      H·Y → Y·H − 2Y
//! ```
//!
//! applied in closed form: `H·Y^a = Y^a·(H − 2a)`,
//! `X·Y^a = Y^a·X + xⁿ·(a·Y^{a-1}·H − a(a−1)·Y^{a-1})` and
//! `X·H^b = (H − 2)^b·X`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{GaussianRational, Matrix, Poly};
use crate::error::{Error, Result};

/// Exponents `(a, b, c)` of `Y^a H^b X^c`.
pub type Monomial = (u32, u32, u32);

/// A generator of `U(g(n))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Y,
    H,
    X,
}

#[derive(Clone, PartialEq, Eq)]
pub struct PbwElement {
    n: u32,
    /// Only nonzero coefficients are stored.
    terms: BTreeMap<Monomial, Poly>,
}

impl PbwElement {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::monomial(n, (0, 0, 0), Poly::one())
    }

    pub fn monomial(n: u32, mono: Monomial, coeff: Poly) -> Self {
        let mut e = Self::zero(n);
        e.add_term(mono, coeff);
        e
    }

    pub fn generator(n: u32, g: Generator) -> Self {
        let mono = match g {
            Generator::Y => (1, 0, 0),
            Generator::H => (0, 1, 0),
            Generator::X => (0, 0, 1),
        };
        Self::monomial(n, mono, Poly::one())
    }

    pub fn y(n: u32) -> Self {
        Self::generator(n, Generator::Y)
    }

    pub fn h(n: u32) -> Self {
        Self::generator(n, Generator::H)
    }

    pub fn x(n: u32) -> Self {
        Self::generator(n, Generator::X)
    }

    /// Index of the family `g(n)` this element lives over.
    pub fn family_index(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Poly> {
        &self.terms
    }

    pub fn coeff(&self, mono: Monomial) -> Poly {
        self.terms.get(&mono).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// PBW filtration degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b, c)| a + b + c).max()
    }

    /// The coefficient of the empty monomial: how the element acts on the
    /// trivial module.
    pub fn augmentation(&self) -> Poly {
        self.coeff((0, 0, 0))
    }

    /// Top-degree part.
    pub fn symbol(&self) -> Self {
        let Some(d) = self.degree() else {
            return self.clone();
        };
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b, c), _)| a + b + c == d)
                .map(|(m, p)| (*m, p.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, mono: Monomial, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mono) {
            Some(prev) => &prev + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(mono, sum);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::FamilyMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(*m, p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Poly::constant((-1).into())))
    }

    pub fn scale(&self, p: &Poly) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, c * p);
        }
        out
    }

    /// `g · self` for a single generator.
    fn left_mul_generator(&self, g: Generator) -> Self {
        let mut out = Self::zero(self.n);
        for (&(a, b, c), coeff) in &self.terms {
            for (mono, factor) in generator_times_monomial(self.n, g, (a, b, c)) {
                out.add_term(mono, coeff * &factor);
            }
        }
        out
    }

    pub fn pbw_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n);
        for (&(a, b, c), p) in &self.terms {
            // Y^a H^b X^c · other, built from the right
            let mut acc = other.clone();
            for _ in 0..c {
                acc = acc.left_mul_generator(Generator::X);
            }
            for _ in 0..b {
                acc = acc.left_mul_generator(Generator::H);
            }
            for _ in 0..a {
                acc = acc.left_mul_generator(Generator::Y);
            }
            for (m, q) in acc.terms {
                out.add_term(m, p * &q);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.pbw_mul(other)?.sub(&other.pbw_mul(self)?)
    }
}

fn int(v: i64) -> Poly {
    Poly::constant(v.into())
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `g · Y^a H^b X^c` in normal form.
fn generator_times_monomial(n: u32, g: Generator, (a, b, c): Monomial) -> Vec<(Monomial, Poly)> {
    match g {
        Generator::Y => vec![((a + 1, b, c), Poly::one())],
        Generator::H => vec![((a, b + 1, c), Poly::one()), ((a, b, c), int(-2 * a as i64))],
        Generator::X => {
            let mut out = Vec::new();
            // Y^a (H - 2)^b X^{c+1}
            for j in 0..=b {
                let coeff = binomial(b, j) * (-2i64).pow(b - j);
                out.push(((a, j, c + 1), int(coeff)));
            }
            if a > 0 {
                let xn = Poly::x_pow(n as usize);
                out.push(((a - 1, b + 1, c), xn.scale(&(a as i64).into())));
                let k = -(a as i64) * (a as i64 - 1);
                if k != 0 {
                    out.push(((a - 1, b, c), xn.scale(&k.into())));
                }
            }
            out
        }
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(a, b, c), p) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut word = String::new();
            for (sym, e) in [("Y", a), ("H", b), ("X", c)] {
                match e {
                    0 => {}
                    1 => word.push_str(sym),
                    _ => word.push_str(&format!("{sym}^{e}")),
                }
            }
            if word.is_empty() {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p}){word}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U(g({})): {self}", self.n)
    }
}

/// `Ωₙ = (xⁿ/8)·H² + (1/4)·(XY + YX)`, normal-ordered.
pub fn casimir(n: u32) -> PbwElement {
    let (y, h, x) = (PbwElement::y(n), PbwElement::h(n), PbwElement::x(n));
    let hh = h.pbw_mul(&h).expect("same algebra");
    let xy = x.pbw_mul(&y).expect("same algebra");
    let yx = y.pbw_mul(&x).expect("same algebra");
    let quarter = Poly::constant(GaussianRational::ratio(1, 4));
    let xn_eighth = Poly::monomial(GaussianRational::ratio(1, 8), n as usize);
    hh.scale(&xn_eighth)
        .add(&xy.add(&yx).expect("same algebra").scale(&quarter))
        .expect("same algebra")
}

/// All PBW monomials of total degree at most `d`, in a fixed order.
pub fn monomials_up_to(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for total in 0..=d {
        for a in 0..=total {
            for b in 0..=total - a {
                out.push((a, b, total - a - b));
            }
        }
    }
    out
}

/// Central elements of `U(g(n))` among ℂ-combinations of `x^j · m` with
/// `m` a PBW monomial of degree ≤ `pbw_degree` and `j ≤ coeff_degree`.
#[derive(Clone, Debug)]
pub struct CenterProbe {
    pub n: u32,
    pub pbw_degree: u32,
    pub coeff_degree: u32,
    /// Echelon basis of the solution space.
    pub basis: Vec<PbwElement>,
}

impl CenterProbe {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, e: &PbwElement) -> Option<Vec<GaussianRational>> {
        element_coords(e, &monomials_up_to(self.pbw_degree), self.coeff_degree)
    }

    /// Whether `e` lies in the ℚ(i)-span of the solution basis.
    pub fn contains(&self, e: &PbwElement) -> bool {
        if e.n != self.n {
            return false;
        }
        let Some(v) = self.coords(e) else {
            return false;
        };
        let mut rows: Vec<Vec<GaussianRational>> =
            self.basis.iter().map(|b| self.coords(b).expect("basis is in range")).collect();
        let before = if rows.is_empty() { 0 } else { Matrix::from_rows(rows.clone()).rank() };
        rows.push(v);
        Matrix::from_rows(rows).rank() == before
    }
}

fn element_coords(e: &PbwElement, monos: &[Monomial], coeff_degree: u32) -> Option<Vec<GaussianRational>> {
    let width = coeff_degree as usize + 1;
    let mut v = vec![GaussianRational::zero(); monos.len() * width];
    for (m, p) in &e.terms {
        let slot = monos.iter().position(|x| x == m)?;
        if p.degree()? > coeff_degree as usize {
            return None;
        }
        for (j, c) in p.coeffs().iter().enumerate() {
            v[slot * width + j] = c.clone();
        }
    }
    Some(v)
}

fn solve_center(n: u32, pbw_degree: u32, coeff_degree: u32, monos: &[Monomial]) -> Vec<PbwElement> {
    let width = coeff_degree as usize + 1;
    let gens = [PbwElement::y(n), PbwElement::h(n), PbwElement::x(n)];
    // column (mono, j) ↦ its commutators with Y, H, X, keyed by (generator, mono', power)
    let mut row_index: BTreeMap<(usize, Monomial, usize), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, GaussianRational)>> = Vec::new();
    for &mono in monos {
        let base = PbwElement::monomial(n, mono, Poly::one());
        let comms: Vec<PbwElement> = gens
            .iter()
            .map(|g| base.commutator(g).expect("same algebra"))
            .collect();
        for j in 0..width {
            let mut col = Vec::new();
            for (gi, comm) in comms.iter().enumerate() {
                for (m, p) in &comm.terms {
                    for (e, c) in p.coeffs().iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let next = row_index.len();
                        let r = *row_index.entry((gi, *m, e + j)).or_insert(next);
                        col.push((r, c.clone()));
                    }
                }
            }
            columns.push(col);
        }
    }
    let mut system = Matrix::zeros(row_index.len(), columns.len());
    for (ci, col) in columns.iter().enumerate() {
        for (r, c) in col {
            system.set(*r, ci, c.clone());
        }
    }
    let _ = pbw_degree;
    system
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut e = PbwElement::zero(n);
            for (si, &mono) in monos.iter().enumerate() {
                let p = Poly::new(v[si * width..(si + 1) * width].to_vec());
                e.add_term(mono, p);
            }
            e
        })
        .collect()
}

/// Bounded slice of the center: solves `[Z, H] = [Z, X] = [Z, Y] = 0` over
/// all PBW monomials of degree ≤ `pbw_degree` with coefficients of degree
/// ≤ `coeff_degree`.
pub fn center_probe(n: u32, pbw_degree: u32, coeff_degree: u32) -> CenterProbe {
    let monos = monomials_up_to(pbw_degree);
    CenterProbe {
        n,
        pbw_degree,
        coeff_degree,
        basis: solve_center(n, pbw_degree, coeff_degree, &monos),
    }
}

/// Central elements of PBW degree ≤ 2 acting by zero on the trivial module,
/// with coefficients of degree ≤ `coeff_degree`.
pub fn casimir_subfamily_probe(n: u32, coeff_degree: u32) -> CenterProbe {
    let monos: Vec<Monomial> = monomials_up_to(2).into_iter().filter(|&m| m != (0, 0, 0)).collect();
    CenterProbe {
        n,
        pbw_degree: 2,
        coeff_degree,
        basis: solve_center(n, 2, coeff_degree, &monos),
    }
}

use std::fs;
use std::path::Path;
use std::sync::Arc;

use hcfam::arith::{GaussianRational, Poly};
use hcfam::catalog::{self, make_g, make_l, make_s};
use hcfam::classify::classify_extension;
use hcfam::envalg::{casimir, center_probe};
use hcfam::liefam::{Base, FamilyElement, GradedFamily, MAX_EXPONENT};
use hcfam::morphisms::{compose, hom_space, HomSpace, KRange, Morphism, PairMorphism};
use hcfam::projline::{global_sections, make_p1, splitting_type};
use hcfam::wire;
use serde_json::{json, Map, Value};

use crate::{Command, Failure, Kind, P1Args, P1Command, P1SectionArgs};

type Outcome = Result<Value, Failure>;

fn input_error(kind: &str, message: String) -> Failure {
    Failure::Input(json!({ "error": kind, "message": message }))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error("IoError", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error("ParseError", format!("{}: invalid JSON: {e}", path.display())))
}

/// Reads a family file. Realization reports from `catalog l|s` are accepted
/// too; their `"family"` entry is used.
fn load_family(path: &Path) -> Result<GradedFamily, Failure> {
    let v = read_json(path)?;
    let family = match v.get("family") {
        Some(inner) if v.get("embedding").is_some() => inner,
        _ => &v,
    };
    Ok(wire::family_from_json(family)?)
}

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Catalog { kind, n } => catalog_report(*kind, *n),
        Command::Validate { file } => {
            let f = load_family(file)?;
            Ok(json!({ "valid": true, "rank": f.rank(), "base": f.base().as_str() }))
        }
        Command::Classify { file } => {
            let f = load_family(file)?;
            Ok(wire::classification_to_json(&classify_extension(&f)?))
        }
        Command::Fiber { file, t } => fiber_report(&load_family(file)?, t),
        Command::Hom { m, n, localized, k_window } => Ok(hom_report(*m, *n, *localized, *k_window)),
        Command::Compose { first, second, localized } => {
            let a = wire::morphism_from_tuple(first, *localized)?;
            let b = wire::morphism_from_tuple(second, *localized)?;
            Ok(morphism_report(&compose(&a.into(), &b.into())?))
        }
        Command::Apply { morphism, element, localized } => apply_report(morphism, element, *localized),
        Command::Pullback { file, mu } => {
            let f = load_family(file)?;
            let mu = parse_mu(mu)?;
            let top = f
                .bracket_table()
                .values()
                .flatten()
                .filter_map(|c| c.max_exponent())
                .max()
                .unwrap_or(0);
            if top.saturating_mul(mu.degree().unwrap_or(0) as i64) > MAX_EXPONENT {
                return Err(input_error("ParseError", format!("pullback degree exceeds {MAX_EXPONENT}")));
            }
            Ok(wire::family_to_json(&f.pullback(&mu)?))
        }
        Command::Casimir { n, probe_pbw, probe_coeff } => Ok(casimir_report(*n, *probe_pbw, *probe_coeff)),
        Command::P1 { command: P1Command::Classify(args) } | Command::P1Classify(args) => p1_classify(args),
        Command::P1 { command: P1Command::Sections(args) } | Command::P1Sections(args) => p1_sections(args),
    }
}

fn catalog_report(kind: Kind, n: u32) -> Outcome {
    let realization = match kind {
        Kind::G => return Ok(wire::family_to_json(&make_g(n))),
        Kind::L => make_l(n),
        Kind::S => make_s(n),
    };
    let embedding: Vec<Value> = realization
        .embedding
        .iter()
        .map(|e| wire::coords_to_json(e.coords(), Base::Affine))
        .collect();
    Ok(json!({
        "family": wire::family_to_json(&realization.family),
        "ambient": wire::family_to_json(&realization.ambient),
        "embedding": embedding,
    }))
}

fn fiber_report(f: &GradedFamily, t: &str) -> Outcome {
    let t: GaussianRational = t.parse()?;
    let fiber = f.fiber_at(&t)?;
    let inv = fiber.invariants();
    let mut brackets = Map::new();
    let rank = fiber.rank();
    let zero = GaussianRational::from(0);
    for i in 0..rank {
        for j in i + 1..rank {
            let v = &fiber.constants()[i][j];
            if v.iter().any(|c| *c != zero) {
                brackets.insert(format!("{i},{j}"), Value::Array(v.iter().map(wire::scalar_to_json).collect()));
            }
        }
    }
    Ok(json!({
        "t": t.to_string(),
        "brackets": brackets,
        "killing_det": inv.killing_det.to_string(),
        "killing_rank": inv.killing_rank,
        "derived_dim": inv.derived_dim,
        "center_dim": inv.center_dim,
    }))
}

fn hom_report(m: u32, n: u32, localized: bool, k_window: u32) -> Value {
    let hom = hom_space(m, n, localized);
    let HomSpace::Generators { k_range, signs } = &hom else {
        return json!({ "zero": true });
    };
    let w = k_window as i64;
    let generators: Vec<Value> = hom
        .generators(m, n, localized, &[GaussianRational::from(1)], -w..=w)
        .iter()
        .map(wire::morphism_to_json)
        .collect();
    let k_range = match k_range {
        KRange::Bounded { min, max } => json!({ "min": min, "max": max }),
        KRange::AllIntegers => json!("all"),
    };
    json!({
        "zero": false,
        "m": m,
        "n": n,
        "localized": localized,
        "k_range": k_range,
        "signs": signs.iter().map(|s| s.value()).collect::<Vec<_>>(),
        "generators": generators,
    })
}

fn morphism_report(m: &Morphism) -> Value {
    match m {
        Morphism::Pair(p) => wire::morphism_to_json(p),
        Morphism::Zero { m, n, localized } => json!({ "zero": true, "m": m, "n": n, "localized": localized }),
    }
}

fn parse_morphism(text: &str, localized: bool) -> Result<PairMorphism, Failure> {
    let path = Path::new(text);
    if path.is_file() {
        Ok(wire::morphism_from_json(&read_json(path)?)?)
    } else {
        Ok(wire::morphism_from_tuple(text, localized)?)
    }
}

fn apply_report(morphism: &str, element: &Path, localized: bool) -> Outcome {
    let phi = parse_morphism(morphism, localized)?;
    let base = if phi.localized() { Base::Punctured } else { Base::Affine };
    let coords = wire::element_from_json(&read_json(element)?, base)?;
    let source = Arc::new(phi.source_family());
    let v = FamilyElement::new(&source, coords)?;
    let image = phi.apply(&v)?;
    Ok(wire::element_to_json(image.coords(), base))
}

/// `"x^k"`, `"x"`, a scalar, or a JSON array of scalars.
fn parse_mu(text: &str) -> Result<Poly, Failure> {
    let t = text.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| input_error("ParseError", format!("--mu: {e}")))?;
        let p = wire::poly_from_json(&v)?;
        if p.degree().unwrap_or(0) as i64 > MAX_EXPONENT {
            return Err(input_error("ParseError", "--mu degree too large".into()));
        }
        return Ok(p);
    }
    if let Some(rest) = t.strip_prefix('x') {
        let k = match rest.strip_prefix('^') {
            None if rest.is_empty() => 1,
            Some(e) => e
                .parse::<i64>()
                .ok()
                .filter(|k| (0..=MAX_EXPONENT).contains(k))
                .ok_or_else(|| input_error("ParseError", format!("--mu: bad exponent in \"{text}\"")))?,
            None => return Err(input_error("ParseError", format!("--mu: cannot read \"{text}\""))),
        };
        return Ok(Poly::x_pow(k as usize));
    }
    Ok(Poly::constant(t.parse()?))
}

fn casimir_report(n: u32, probe_pbw: Option<u32>, probe_coeff: Option<u32>) -> Value {
    let om = casimir(n);
    let terms: Vec<Value> = om
        .terms()
        .iter()
        .map(|(&(a, b, c), p)| json!({ "monomial": [a, b, c], "coeff": wire::poly_to_json(p) }))
        .collect();
    let mut report = json!({
        "n": n,
        "label": catalog::label(n),
        "normal_form": terms,
        "display": om.to_string(),
    });
    if probe_pbw.is_some() || probe_coeff.is_some() {
        let d = probe_pbw.unwrap_or(2);
        let coeff = probe_coeff.unwrap_or(6);
        let dims: Vec<usize> = (0..=d).map(|j| center_probe(n, j, coeff).dimension()).collect();
        report["probe"] = json!({ "pbw_degree": d, "coeff_degree": coeff, "dimensions": dims });
    }
    report
}

fn p1_classify(args: &P1Args) -> Outcome {
    let e = make_p1(args.m, args.n, args.k);
    let sections = global_sections(&e, None)?;
    Ok(json!({ "splitting": splitting_type(&e), "h0_dim": sections.dimension }))
}

fn p1_sections(args: &P1SectionArgs) -> Outcome {
    let t = &args.triple;
    let e = make_p1(t.m, t.n, t.k);
    let s = global_sections(&e, args.max_degree.map(|d| d as usize))?;
    let basis: Vec<Value> = s
        .basis
        .iter()
        .map(|pair| {
            json!({
                "chart1": wire::element_to_json(pair.chart1.coords(), Base::Affine),
                "chart2": wire::element_to_json(pair.chart2.coords(), Base::Affine),
            })
        })
        .collect();
    Ok(json!({
        "m": t.m,
        "n": t.n,
        "k": t.k,
        "splitting": splitting_type(&e),
        "max_degree": s.max_degree,
        "dimension": s.dimension,
        "basis": basis,
    }))
}

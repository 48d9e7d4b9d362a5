//! Problem files: a ring, a module, a sequence and grid settings in TOML.
//!
//! ```toml
//! title = "m^2 in k[X,Y]"
//! sequence = ["X", "Y^2"]
//!
//! [ring]
//! field = "QQ"            # or "GF(32003)"
//! vars = ["X", "Y"]
//! order = "degrevlex"     # or "lex"
//! weights = [1, 1]        # optional, defaults to all ones
//!
//! [module]
//! kind = "ideal_as_module"
//! generators = ["X^2", "X*Y", "Y^2"]
//!
//! [grid]
//! n_max = 2
//! ```
//!
//! Module kinds:
//!
//! * `quotient_ring` with `ideal = [...]` presents `R / I`;
//! * `ideal_as_module` with `generators = [...]` presents the ideal itself,
//!   on one basis vector per generator;
//! * `cokernel` with `shifts = [...]` and `relations = [[...], ...]`
//!   presents `F / <relations>`, one polynomial per component.
//!
//! An optional `[filtration]` table lists a candidate chain of submodules
//! `M_0 ⊂ M_1 ⊂ ... ⊂ M_t = M` through `layers = [[...], ...]`. Each layer
//! is a list of elements of `M`, written as polynomials when the cover has
//! rank one and as `"[f1, f2, ...]"` otherwise.

use std::fmt::Write as _;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::{FreeModule, Submodule, Vector};
use crate::module::{FPModule, check_sequence};
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, Ring};

pub const DEFAULT_N_MAX: u32 = 2;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    title: Option<String>,
    #[serde(default)]
    sequence: Vec<Spanned<String>>,
    ring: RawRing,
    module: RawModule,
    grid: Option<RawGrid>,
    filtration: Option<RawFiltration>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    field: Spanned<String>,
    vars: Spanned<Vec<String>>,
    order: Option<Spanned<String>>,
    weights: Option<Spanned<Vec<u32>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    kind: Spanned<String>,
    ideal: Option<Vec<Spanned<String>>>,
    generators: Option<Vec<Spanned<String>>>,
    shifts: Option<Vec<i64>>,
    relations: Option<Vec<Vec<Spanned<String>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    n_max: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFiltration {
    layers: Vec<Vec<Spanned<String>>>,
}

/// How the module of a problem is presented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    QuotientRing { ideal: Vec<Polynomial> },
    IdealAsModule { generators: Vec<Polynomial> },
    Cokernel { shifts: Vec<i64>, relations: Vec<Vec<Polynomial>> },
}

impl ModuleSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ModuleSpec::QuotientRing { .. } => "quotient_ring",
            ModuleSpec::IdealAsModule { .. } => "ideal_as_module",
            ModuleSpec::Cokernel { .. } => "cokernel",
        }
    }
}

/// A validated problem file.
#[derive(Clone, Debug)]
pub struct Problem {
    pub title: Option<String>,
    pub ring: Ring,
    pub spec: ModuleSpec,
    pub module: FPModule,
    pub sequence: Vec<Polynomial>,
    pub n_max: u32,
    /// Candidate filtration layers as elements of the cover.
    pub layers: Option<Vec<Vec<Vector>>>,
}

/// Converts a byte offset into a 1-based line and column.
fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn error_at(src: &str, span: Range<usize>, message: String) -> Error {
    let (line, column) = position(src, span.start);
    Error::Parse { line, column, message }
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    /// Parses a polynomial string, moving error columns into file
    /// coordinates. The span includes the opening quote.
    fn poly(&self, ring: &Ring, s: &Spanned<String>) -> Result<Polynomial> {
        Polynomial::parse(ring, s.get_ref()).map_err(|e| match e {
            Error::Parse { column, message, .. } => {
                error_at(self.src, s.span().start + column..s.span().end, message)
            }
            other => other,
        })
    }

    fn polys(&self, ring: &Ring, v: &[Spanned<String>]) -> Result<Vec<Polynomial>> {
        v.iter().map(|s| self.poly(ring, s)).collect()
    }

    /// An element of the cover: a polynomial, or `[f1, ..., fr]`.
    fn element(&self, space: &FreeModule, s: &Spanned<String>) -> Result<Vector> {
        let text = s.get_ref().trim();
        let comps = match text.strip_prefix('[') {
            Some(rest) => {
                let inner = rest.strip_suffix(']').ok_or_else(|| {
                    error_at(self.src, s.span(), "unterminated vector, expected `]`".into())
                })?;
                let ring = space.ring();
                inner
                    .split(',')
                    .map(|c| {
                        Polynomial::parse(ring, c).map_err(|e| match e {
                            Error::Parse { message, .. } => error_at(self.src, s.span(), message),
                            other => other,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            None => vec![self.poly(space.ring(), s)?],
        };
        if comps.len() != space.rank() {
            return Err(error_at(
                self.src,
                s.span(),
                format!("expected {} components, found {}", space.rank(), comps.len()),
            ));
        }
        Vector::from_components(space, &comps)
    }
}

fn parse_field(src: &str, s: &Spanned<String>) -> Result<FieldSpec> {
    let t = s.get_ref().trim();
    if matches!(t, "QQ" | "Q" | "rational") {
        return Ok(FieldSpec::Rational);
    }
    let p = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|n| n.trim().parse::<u64>().ok())
        .ok_or_else(|| error_at(src, s.span(), format!("unknown field `{t}`, expected QQ or GF(p)")))?;
    FieldSpec::prime(p).map_err(|e| error_at(src, s.span(), e.to_string()))
}

fn parse_order(src: &str, s: Option<&Spanned<String>>) -> Result<MonomialOrder> {
    match s {
        None => Ok(MonomialOrder::DegRevLex),
        Some(s) => match s.get_ref().as_str() {
            "degrevlex" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(error_at(src, s.span(), format!("unknown order `{other}`, expected degrevlex or lex"))),
        },
    }
}

fn missing(src: &str, kind: &Spanned<String>, key: &str) -> Error {
    error_at(src, kind.span(), format!("module kind `{}` needs `{key}`", kind.get_ref()))
}

/// Parses and validates problem-file text.
pub fn parse_problem_str(src: &str) -> Result<Problem> {
    let raw: RawProblem = toml::from_str(src).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        error_at(src, span, e.message().to_string())
    })?;
    let cx = Ctx { src };
    let field = parse_field(src, &raw.ring.field)?;
    let order = parse_order(src, raw.ring.order.as_ref())?;
    let vars = raw.ring.vars.get_ref();
    let weights = match &raw.ring.weights {
        Some(w) => w.get_ref().clone(),
        None => vec![1; vars.len()],
    };
    let ring = Ring::with_options(vars, field, order, &weights).map_err(|e| {
        let span = raw.ring.weights.as_ref().filter(|w| w.get_ref().len() != vars.len()).map_or(raw.ring.vars.span(), |w| w.span());
        error_at(src, span, e.to_string())
    })?;

    let m = &raw.module;
    let (spec, module) = match m.kind.get_ref().as_str() {
        "quotient_ring" => {
            let ideal = cx.polys(&ring, m.ideal.as_ref().ok_or_else(|| missing(src, &m.kind, "ideal"))?)?;
            let module = FPModule::quotient_ring(&ring, &ideal)?;
            (ModuleSpec::QuotientRing { ideal }, module)
        }
        "ideal_as_module" => {
            let gens = cx.polys(&ring, m.generators.as_ref().ok_or_else(|| missing(src, &m.kind, "generators"))?)?;
            if gens.is_empty() {
                return Err(missing(src, &m.kind, "at least one generator"));
            }
            let module = FPModule::ideal_as_module(&ring, &gens)?;
            (ModuleSpec::IdealAsModule { generators: gens }, module)
        }
        "cokernel" => {
            let shifts = m.shifts.clone().ok_or_else(|| missing(src, &m.kind, "shifts"))?;
            let space = FreeModule::new(&ring, shifts.clone());
            let mut relations = Vec::new();
            let mut vectors = Vec::new();
            for row in m.relations.as_deref().unwrap_or_default() {
                let comps = cx.polys(&ring, row)?;
                if comps.len() != shifts.len() {
                    let span = row.first().map_or(m.kind.span(), |s| s.span());
                    return Err(error_at(src, span, format!("relation has {} components, expected {}", comps.len(), shifts.len())));
                }
                vectors.push(Vector::from_components(&space, &comps)?);
                relations.push(comps);
            }
            let module = FPModule::new(&space, vectors)?;
            (ModuleSpec::Cokernel { shifts, relations }, module)
        }
        other => {
            return Err(error_at(
                src,
                m.kind.span(),
                format!("unknown module kind `{other}`, expected quotient_ring, ideal_as_module or cokernel"),
            ))
        }
    };

    let sequence = cx.polys(&ring, &raw.sequence)?;
    check_sequence(&ring, &sequence)?;
    let layers = match &raw.filtration {
        None => None,
        Some(f) => Some(
            f.layers
                .iter()
                .map(|layer| layer.iter().map(|s| cx.element(module.space(), s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    for v in layers.iter().flatten().flatten() {
        if !v.is_homogeneous(module.space()) {
            return Err(Error::Inhomogeneous(v.display(module.space())));
        }
    }
    Ok(Problem {
        title: raw.title,
        ring,
        spec,
        module,
        sequence,
        n_max: raw.grid.map_or(DEFAULT_N_MAX, |g| g.n_max),
        layers,
    })
}

/// Reads and parses a problem file.
pub fn parse_problem(path: &std::path::Path) -> Result<Problem> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    parse_problem_str(&src)
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn list(items: impl IntoIterator<Item = String>) -> String {
    format!("[{}]", items.into_iter().collect::<Vec<_>>().join(", "))
}

fn poly_list(ps: &[Polynomial]) -> String {
    list(ps.iter().map(|p| quoted(&p.to_string())))
}

impl Problem {
    /// The sequence, or a precondition error for commands that need one.
    pub fn require_sequence(&self) -> Result<&[Polynomial]> {
        if self.sequence.is_empty() {
            return Err(Error::Precondition("the problem file has an empty `sequence`".into()));
        }
        Ok(&self.sequence)
    }

    /// The candidate filtration as preimages in the cover.
    pub fn filtration_chain(&self) -> Option<Vec<Submodule>> {
        self.layers.as_ref().map(|ls| ls.iter().map(|l| self.module.submodule(l)).collect())
    }

    /// Canonical text of the problem. Parsing the output and rendering
    /// again gives the same text.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.title {
            writeln!(out, "title = {}", quoted(t)).unwrap();
        }
        writeln!(out, "sequence = {}", poly_list(&self.sequence)).unwrap();
        writeln!(out, "\n[ring]").unwrap();
        let field = match self.ring.field() {
            FieldSpec::Rational => "QQ".to_string(),
            FieldSpec::Prime(p) => format!("GF({p})"),
        };
        writeln!(out, "field = {}", quoted(&field)).unwrap();
        writeln!(out, "vars = {}", list(self.ring.names().iter().map(|n| quoted(n)))).unwrap();
        let order = match self.ring.order() {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
        };
        writeln!(out, "order = {}", quoted(order)).unwrap();
        writeln!(out, "weights = {}", list(self.ring.weights().iter().map(u32::to_string))).unwrap();
        writeln!(out, "\n[module]").unwrap();
        writeln!(out, "kind = {}", quoted(self.spec.kind())).unwrap();
        match &self.spec {
            ModuleSpec::QuotientRing { ideal } => writeln!(out, "ideal = {}", poly_list(ideal)).unwrap(),
            ModuleSpec::IdealAsModule { generators } => writeln!(out, "generators = {}", poly_list(generators)).unwrap(),
            ModuleSpec::Cokernel { shifts, relations } => {
                writeln!(out, "shifts = {}", list(shifts.iter().map(i64::to_string))).unwrap();
                writeln!(out, "relations = {}", list(relations.iter().map(|r| poly_list(r)))).unwrap();
            }
        }
        writeln!(out, "\n[grid]\nn_max = {}", self.n_max).unwrap();
        if let Some(layers) = &self.layers {
            let space = self.module.space();
            let element = |v: &Vector| {
                let comps = v.components(space);
                if comps.len() == 1 {
                    quoted(&comps[0].to_string())
                } else {
                    quoted(&list(comps.iter().map(Polynomial::to_string)))
                }
            };
            writeln!(out, "\n[filtration]").unwrap();
            writeln!(out, "layers = {}", list(layers.iter().map(|l| list(l.iter().map(element))))).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = r#"
sequence = ["X", "Y^2"]

[ring]
field = "QQ"
vars = ["X", "Y"]

[module]
kind = "ideal_as_module"
generators = ["X^2", "X*Y", "Y^2"]
"#;

    #[test]
    fn parses_and_renders_canonically() {
        let p = parse_problem_str(SQUARE).unwrap();
        assert_eq!(p.spec.kind(), "ideal_as_module");
        assert_eq!(p.sequence.len(), 2);
        assert_eq!(p.n_max, DEFAULT_N_MAX);
        let once = p.render();
        assert_eq!(parse_problem_str(&once).unwrap().render(), once);
    }

    #[test]
    fn malformed_exponent_points_into_the_file() {
        let src = SQUARE.replace("\"Y^2\"]\n\n[ring]", "\"Y^\"]\n\n[ring]");
        match parse_problem_str(&src) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 21)),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn toml_errors_carry_positions() {
        let src = "sequence = [\"X\"\n[ring]\n";
        assert!(matches!(parse_problem_str(src), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn inhomogeneous_input_is_named() {
        let src = SQUARE.replace("\"X*Y\"", "\"X*Y + X\"");
        assert!(matches!(parse_problem_str(&src), Err(Error::Inhomogeneous(s)) if s.contains('X')));
    }

    #[test]
    fn cokernel_with_filtration() {
        let src = r#"
sequence = ["x"]

[ring]
field = "GF(101)"
vars = ["x", "y"]

[module]
kind = "cokernel"
shifts = [0, 1]
relations = [["y", "0"], ["0", "x"]]

[filtration]
layers = [["[0, 1]"], ["[1, 0]", "[0, 1]"]]
"#;
        let p = parse_problem_str(src).unwrap();
        assert_eq!(p.layers.as_ref().unwrap()[1].len(), 2);
        let once = p.render();
        assert_eq!(parse_problem_str(&once).unwrap().render(), once);
    }
}

//! Family description files.
//!
//! ```toml
//! variables = ["x", "y"]
//! parameter = "t"
//! f = "x^4 + y^4 + t*x^2*y^2"
//! b_order = 8
//! order = "grevlex"
//! samples = ["0", "1", "3"]
//! checks = ["g_equals_e", "estim:1", "mu_probe"]
//! ```
//!
//! Only `variables` and `f` are required.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use toml::Spanned;

use super::parser::{parse_polynomial, position, ParseError};
use crate::algebra::{parse_rational, MPoly, MonomialOrder, OrderKind, Rational};
use crate::brieskorn::DEFAULT_B_ORDER;

/// A check requested by a family file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckSpec {
    /// `df/dt ∈ J`, cross-checked against the saturated lattice.
    GEqualsE,
    /// `m^k df/dt ⊂ m^(k+1) J` and stability of `M^k`.
    Estim(u32),
    MuProbe,
    QuasiHomogeneous,
    /// The `f = P + tQ` lemma with `P = f(0)`, `Q = df/dt`.
    Lemma(u32),
    /// Relations for `x^p + y^q + z^r + t xyz`.
    Relations(u32, u32, u32),
    /// The rank-one extension by `b^-1 [x^2y^2]` for `x^4 + y^4 + t x^2y^2`.
    Extension,
}

impl CheckSpec {
    pub fn defaults() -> Vec<CheckSpec> {
        vec![
            CheckSpec::GEqualsE,
            CheckSpec::Estim(0),
            CheckSpec::Estim(1),
            CheckSpec::MuProbe,
            CheckSpec::QuasiHomogeneous,
        ]
    }
}

impl fmt::Display for CheckSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckSpec::GEqualsE => write!(f, "g_equals_e"),
            CheckSpec::Estim(k) => write!(f, "estim:{k}"),
            CheckSpec::MuProbe => write!(f, "mu_probe"),
            CheckSpec::QuasiHomogeneous => write!(f, "quasihomogeneous"),
            CheckSpec::Lemma(k) => write!(f, "lemma:{k}"),
            CheckSpec::Relations(p, q, r) => write!(f, "relations:{p},{q},{r}"),
            CheckSpec::Extension => write!(f, "extension"),
        }
    }
}

impl FromStr for CheckSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("unknown check '{s}'");
        let int = |v: &str| v.trim().parse::<u32>().map_err(|_| bad());
        match s.split_once(':') {
            None => match s {
                "g_equals_e" => Ok(CheckSpec::GEqualsE),
                "mu_probe" => Ok(CheckSpec::MuProbe),
                "quasihomogeneous" => Ok(CheckSpec::QuasiHomogeneous),
                "extension" => Ok(CheckSpec::Extension),
                _ => Err(bad()),
            },
            Some(("estim", k)) => Ok(CheckSpec::Estim(int(k)?)),
            Some(("lemma", k)) => Ok(CheckSpec::Lemma(int(k)?)),
            Some(("relations", v)) => {
                let parts: Vec<&str> = v.split(',').collect();
                if parts.len() != 3 {
                    return Err(bad());
                }
                Ok(CheckSpec::Relations(int(parts[0])?, int(parts[1])?, int(parts[2])?))
            }
            Some(_) => Err(bad()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{0}")]
    Syntax(ParseError),
    #[error("line {line}, column {column}: unknown identifier '{name}'")]
    UnknownIdentifier { name: String, line: usize, column: usize },
    #[error("parameter '{0}' is also listed as a variable")]
    ParameterClash(String),
    #[error("line {line}, column {column}: {message}")]
    Invalid {
        message: String,
        line: usize,
        column: usize,
    },
}

/// A validated family description.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub variables: Vec<String>,
    pub parameter: String,
    pub f: String,
    pub b_order: usize,
    pub order: OrderKind,
    pub samples: Vec<Rational>,
    pub checks: Vec<CheckSpec>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Sample {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    variables: Spanned<Vec<Spanned<String>>>,
    parameter: Option<Spanned<String>>,
    f: Spanned<String>,
    b_order: Option<Spanned<i64>>,
    order: Option<Spanned<String>>,
    samples: Option<Vec<Spanned<Sample>>>,
    checks: Option<Vec<Spanned<String>>>,
}

#[derive(Serialize)]
struct Out<'a> {
    variables: &'a [String],
    parameter: &'a str,
    f: &'a str,
    b_order: usize,
    order: &'a str,
    samples: Vec<String>,
    checks: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn render_rational(q: &Rational) -> String {
    q.to_string()
}

impl FamilySpec {
    /// Spec with default options.
    pub fn new(variables: &[&str], f: &str) -> Self {
        FamilySpec {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            parameter: "t".into(),
            f: f.into(),
            b_order: DEFAULT_B_ORDER,
            order: OrderKind::GRevLex,
            samples: Vec::new(),
            checks: CheckSpec::defaults(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn monomial_order(&self) -> MonomialOrder {
        MonomialOrder::new(self.order, self.nvars())
    }

    pub fn polynomial(&self) -> Result<MPoly, ParseError> {
        parse_polynomial(&self.f, &self.variables, &self.parameter)
    }

    /// Check the invariants of a spec built or modified in code.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let invalid = |message: String| FamilyError::Invalid {
            message,
            line: 1,
            column: 1,
        };
        if self.variables.is_empty() {
            return Err(invalid("at least one variable is required".into()));
        }
        for (i, v) in self.variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(invalid(format!("'{v}' is not an identifier")));
            }
            if self.variables[..i].contains(v) {
                return Err(invalid(format!("variable '{v}' is listed twice")));
            }
        }
        if !is_identifier(&self.parameter) {
            return Err(invalid(format!("'{}' is not an identifier", self.parameter)));
        }
        if self.variables.contains(&self.parameter) {
            return Err(FamilyError::ParameterClash(self.parameter.clone()));
        }
        if self.b_order < 2 {
            return Err(invalid(format!("b_order must be at least 2, got {}", self.b_order)));
        }
        self.polynomial().map_err(poly_error)?;
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        let out = Out {
            variables: &self.variables,
            parameter: &self.parameter,
            f: &self.f,
            b_order: self.b_order,
            order: self.order.name(),
            samples: self.samples.iter().map(render_rational).collect(),
            checks: self.checks.iter().map(CheckSpec::to_string).collect(),
        };
        toml::to_string(&out).expect("plain data serializes")
    }
}

fn poly_error(e: ParseError) -> FamilyError {
    match e.message.strip_prefix("unknown identifier '") {
        Some(rest) => FamilyError::UnknownIdentifier {
            name: rest.trim_end_matches('\'').to_string(),
            line: e.line,
            column: e.column,
        },
        None => FamilyError::Syntax(e),
    }
}

/// Offset of the first character of a string value's contents.
fn string_start(text: &str, span: std::ops::Range<usize>) -> usize {
    let raw = &text[span.clone()];
    let mut skip = if raw.starts_with("\"\"\"") || raw.starts_with("'''") {
        3
    } else {
        1
    };
    if skip == 3 {
        if raw[3..].starts_with("\r\n") {
            skip += 2;
        } else if raw[3..].starts_with('\n') {
            skip += 1;
        }
    }
    span.start + skip.min(raw.len())
}

/// Parse and validate a family document.
pub fn parse_family(bytes: &[u8]) -> Result<FamilySpec, FamilyError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let (line, column) = position(&String::from_utf8_lossy(bytes), e.valid_up_to());
        FamilyError::Invalid {
            message: "input is not valid UTF-8".into(),
            line,
            column,
        }
    })?;
    let raw: Raw = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
        FamilyError::Syntax(ParseError {
            message: e.message().trim().to_string(),
            line,
            column,
        })
    })?;
    let at = |span: std::ops::Range<usize>, message: String| {
        let (line, column) = position(text, span.start);
        FamilyError::Invalid { message, line, column }
    };

    let vspan = raw.variables.span();
    let variables: Vec<String> = raw
        .variables
        .into_inner()
        .into_iter()
        .map(Spanned::into_inner)
        .collect();
    let parameter = raw.parameter.map_or_else(|| "t".to_string(), Spanned::into_inner);
    let b_order = match raw.b_order {
        None => DEFAULT_B_ORDER,
        Some(b) => {
            let span = b.span();
            usize::try_from(*b.get_ref())
                .ok()
                .filter(|&v| v >= 2)
                .ok_or_else(|| at(span, format!("b_order must be at least 2, got {}", b.get_ref())))?
        }
    };
    let order = match raw.order {
        None => OrderKind::GRevLex,
        Some(o) => OrderKind::parse(o.get_ref()).ok_or_else(|| {
            at(
                o.span(),
                format!("unknown order '{}' (expected grevlex or grlex)", o.get_ref()),
            )
        })?,
    };
    let mut samples = Vec::new();
    for s in raw.samples.unwrap_or_default() {
        let span = s.span();
        let v = match s.into_inner() {
            Sample::Int(i) => Rational::from_integer(i.into()),
            Sample::Text(t) => parse_rational(&t).ok_or_else(|| at(span, format!("'{t}' is not a rational number")))?,
        };
        samples.push(v);
    }
    let checks = match raw.checks {
        None => CheckSpec::defaults(),
        Some(cs) => cs
            .into_iter()
            .map(|c| c.get_ref().parse().map_err(|m| at(c.span(), m)))
            .collect::<Result<_, _>>()?,
    };

    let spec = FamilySpec {
        variables,
        parameter,
        f: raw.f.get_ref().clone(),
        b_order,
        order,
        samples,
        checks,
    };
    if let Err(e) = spec.validate() {
        // place the error inside the document
        return Err(match e {
            FamilyError::Invalid { message, .. } => at(vspan, message),
            FamilyError::Syntax(pe) => FamilyError::Syntax(relocate(text, &raw.f, pe)),
            FamilyError::UnknownIdentifier { name, line, column } => {
                let pe = relocate(
                    text,
                    &raw.f,
                    ParseError {
                        message: String::new(),
                        line,
                        column,
                    },
                );
                FamilyError::UnknownIdentifier {
                    name,
                    line: pe.line,
                    column: pe.column,
                }
            }
            other => other,
        });
    }
    Ok(spec)
}

/// Map a position inside the `f` string onto the document.
fn relocate(text: &str, f: &Spanned<String>, mut e: ParseError) -> ParseError {
    let (line, column) = position(text, string_start(text, f.span()));
    if e.line == 1 {
        e.column += column - 1;
    }
    e.line += line - 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX2: &str = r#"
variables = ["x", "y"]
f = "x^4 + y^4 + t*x^2*y^2"
samples = [0, 1, "3", "-1/2"]
checks = ["estim:1", "relations:3,4,5", "mu_probe"]
"#;

    #[test]
    fn parses_with_defaults() {
        let s = parse_family(EX2.as_bytes()).unwrap();
        assert_eq!(s.nvars(), 2);
        assert_eq!(s.parameter, "t");
        assert_eq!(s.b_order, DEFAULT_B_ORDER);
        assert_eq!(s.order, OrderKind::GRevLex);
        assert_eq!(s.samples.len(), 4);
        assert_eq!(s.checks[1], CheckSpec::Relations(3, 4, 5));
        assert_eq!(s.polynomial().unwrap().len(), 3);
    }

    #[test]
    fn round_trip() {
        let s = parse_family(EX2.as_bytes()).unwrap();
        let again = parse_family(s.to_toml().as_bytes()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn polynomial_error_located_in_document() {
        let doc = "variables = [\"x\", \"y\"]\nf = \"x^2 + + y\"\n";
        match parse_family(doc.as_bytes()).unwrap_err() {
            FamilyError::Syntax(e) => assert_eq!((e.line, e.column), (2, 12)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_identifier_located() {
        let doc = "variables = [\"x\", \"y\"]\nf = \"x^2 + s\"\n";
        match parse_family(doc.as_bytes()).unwrap_err() {
            FamilyError::UnknownIdentifier { name, line, column } => {
                assert_eq!(name, "s");
                assert_eq!((line, column), (2, 12));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn clash_and_schema_errors() {
        let doc = "variables = [\"x\", \"t\"]\nparameter = \"t\"\nf = \"x^2\"\n";
        assert_eq!(
            parse_family(doc.as_bytes()).unwrap_err(),
            FamilyError::ParameterClash("t".into())
        );
        let doc = "variables = [\"x\"]\nf = \"x^2\"\ncolour = 3\n";
        assert!(matches!(parse_family(doc.as_bytes()), Err(FamilyError::Syntax(_))));
        let doc = "variables = [\"x\"]\nf = \"x^2\"\nb_order = 1\n";
        assert!(matches!(
            parse_family(doc.as_bytes()),
            Err(FamilyError::Invalid { line: 3, .. })
        ));
        let doc = "variables = [\"x\"]\nf = \"x^2\"\nchecks = [\"bogus\"]\n";
        assert!(parse_family(doc.as_bytes()).is_err());
    }
}

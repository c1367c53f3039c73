//! Parametric design spaces: typed parameters with bounds, symbolic
//! constraints, validation, and deterministic sampling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpaceError {
    #[error("parameter {0:?} declared twice")]
    DuplicateParameter(String),
    #[error("bounds must satisfy lower <= upper, got [{0}, {1}]")]
    EmptyInterval(f64, f64),
    #[error("integer parameter {0:?} has non-integral bounds [{1}, {2}]")]
    NonIntegralBounds(String, f64, f64),
    #[error("constraint references unknown parameter {0:?}")]
    UnknownParameter(String),
    #[error("divisor must be a positive integer, got {0}")]
    BadDivisor(i64),
    #[error("assignment is missing parameter {0:?}")]
    MissingParameter(String),
    #[error("expression error: {0}")]
    Expr(#[from] ExprError),
    #[error("rejection sampling acceptance rate below 1e-3 after {0} draws; space looks infeasible")]
    Infeasible(u64),
}

#[derive(Debug, Error, PartialEq)]
pub enum ExprError {
    #[error("unexpected character {0:?} at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("unexpected token {0:?}")]
    UnexpectedToken(String),
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
}

/// Arithmetic over numeric literals and parameter names.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        let mut p = ExprParser {
            src: src.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(ExprError::UnexpectedToken(
                String::from_utf8_lossy(&p.src[p.pos..]).into_owned(),
            ));
        }
        Ok(e)
    }

    pub fn eval(&self, lookup: &impl Fn(&str) -> Option<f64>) -> Result<f64, ExprError> {
        Ok(match self {
            Expr::Number(v) => *v,
            Expr::Var(name) => {
                lookup(name).ok_or_else(|| ExprError::UnknownIdentifier(name.clone()))?
            }
            Expr::Neg(e) => -e.eval(lookup)?,
            Expr::Add(a, b) => a.eval(lookup)? + b.eval(lookup)?,
            Expr::Sub(a, b) => a.eval(lookup)? - b.eval(lookup)?,
            Expr::Mul(a, b) => a.eval(lookup)? * b.eval(lookup)?,
            Expr::Div(a, b) => a.eval(lookup)? / b.eval(lookup)?,
        })
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Number(_) => {}
            Expr::Var(name) => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Expr::Neg(e) => e.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(v) => write!(f, "{v}"),
            Expr::Var(n) => write!(f, "{n}"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
        }
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            None => Err(ExprError::UnexpectedEnd),
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ExprError::UnexpectedToken(")".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_digit() || *c == b'.' || *c == b'e' || *c == b'E')
                {
                    self.pos += 1;
                    // exponent sign
                    if matches!(self.src.get(self.pos - 1), Some(b'e') | Some(b'E'))
                        && matches!(self.src.get(self.pos), Some(b'+') | Some(b'-'))
                    {
                        self.pos += 1;
                    }
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                text.parse::<f64>()
                    .map(Expr::Number)
                    .map_err(|_| ExprError::UnexpectedToken(text.into()))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Var(
                    std::str::from_utf8(&self.src[start..self.pos])
                        .unwrap()
                        .to_owned(),
                ))
            }
            Some(c) => Err(ExprError::UnexpectedChar(c as char, self.pos)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Real,
    Integer,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parameter {
    pub name: String,
    pub kind: ParamKind,
    pub lower: f64,
    pub upper: f64,
}

impl Parameter {
    pub fn real(name: &str, lower: f64, upper: f64) -> Self {
        Parameter {
            name: name.into(),
            kind: ParamKind::Real,
            lower,
            upper,
        }
    }

    pub fn integer(name: &str, lower: i64, upper: i64) -> Self {
        Parameter {
            name: name.into(),
            kind: ParamKind::Integer,
            lower: lower as f64,
            upper: upper as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompareOp {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl fmt::Display for CompareOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompareOp::Lt => "<",
            CompareOp::Le => "<=",
            CompareOp::Eq => "=",
            CompareOp::Ge => ">=",
            CompareOp::Gt => ">",
        })
    }
}

/// Equality comparisons hold within this absolute tolerance.
pub const EQ_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    Compare { lhs: Expr, op: CompareOp, rhs: Expr },
    DivisibleBy { param: String, k: u64 },
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Compare { lhs, op, rhs } => write!(f, "{lhs} {op} {rhs}"),
            Constraint::DivisibleBy { param, k } => write!(f, "{param} % {k} = 0"),
        }
    }
}

impl Constraint {
    pub fn compare(lhs: &str, op: CompareOp, rhs: &str) -> Result<Self, ExprError> {
        Ok(Constraint::Compare {
            lhs: Expr::parse(lhs)?,
            op,
            rhs: Expr::parse(rhs)?,
        })
    }

    pub fn divisible_by(param: &str, k: u64) -> Self {
        Constraint::DivisibleBy {
            param: param.into(),
            k,
        }
    }

    /// `(holds, residual)`; residual is the violated amount (0 when satisfied).
    fn check(&self, lookup: &impl Fn(&str) -> Option<f64>) -> Result<(bool, f64), ExprError> {
        match self {
            Constraint::Compare { lhs, op, rhs } => {
                let l = lhs.eval(lookup)?;
                let r = rhs.eval(lookup)?;
                let d = l - r;
                let (ok, residual) = match op {
                    CompareOp::Lt => (d < 0.0, d.max(0.0)),
                    CompareOp::Le => (d <= 0.0, d.max(0.0)),
                    CompareOp::Eq => (d.abs() <= EQ_TOL, d.abs()),
                    CompareOp::Ge => (d >= 0.0, (-d).max(0.0)),
                    CompareOp::Gt => (d > 0.0, (-d).max(0.0)),
                };
                Ok((ok, residual))
            }
            Constraint::DivisibleBy { param, k } => {
                let v = lookup(param).ok_or_else(|| ExprError::UnknownIdentifier(param.clone()))?;
                let kf = *k as f64;
                let residual = (v / kf - (v / kf).round()).abs() * kf;
                Ok((residual <= EQ_TOL, residual))
            }
        }
    }
}

/// One parameter-name → value map. Complete over the space's parameters when
/// validated.
pub type Assignment = BTreeMap<String, f64>;

pub fn assignment(pairs: &[(&str, f64)]) -> Assignment {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// A named violation plus the residual amount.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub constraint: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignSpace {
    parameters: Vec<Parameter>,
    constraints: Vec<Constraint>,
}

impl DesignSpace {
    pub fn new(
        parameters: Vec<Parameter>,
        constraints: Vec<Constraint>,
    ) -> Result<Self, SpaceError> {
        let mut seen = std::collections::BTreeSet::new();
        for p in &parameters {
            if !seen.insert(p.name.clone()) {
                return Err(SpaceError::DuplicateParameter(p.name.clone()));
            }
            if !(p.lower <= p.upper) {
                return Err(SpaceError::EmptyInterval(p.lower, p.upper));
            }
            if p.kind == ParamKind::Integer && (p.lower.fract() != 0.0 || p.upper.fract() != 0.0) {
                return Err(SpaceError::NonIntegralBounds(
                    p.name.clone(),
                    p.lower,
                    p.upper,
                ));
            }
        }
        for c in &constraints {
            let names = match c {
                Constraint::Compare { lhs, rhs, .. } => {
                    let mut v = lhs.variables();
                    v.extend(rhs.variables());
                    v
                }
                Constraint::DivisibleBy { param, k } => {
                    if *k == 0 {
                        return Err(SpaceError::BadDivisor(0));
                    }
                    vec![param.clone()]
                }
            };
            for n in names {
                if !seen.contains(&n) {
                    return Err(SpaceError::UnknownParameter(n));
                }
            }
        }
        Ok(DesignSpace {
            parameters,
            constraints,
        })
    }

    pub fn parameters(&self) -> &[Parameter] {
        &self.parameters
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn dims(&self) -> usize {
        self.parameters.len()
    }

    /// Empty list iff all bounds and constraints hold.
    pub fn validate(&self, asg: &Assignment) -> Result<Vec<Violation>, SpaceError> {
        for p in &self.parameters {
            if !asg.contains_key(&p.name) {
                return Err(SpaceError::MissingParameter(p.name.clone()));
            }
        }
        let mut out = Vec::new();
        for p in &self.parameters {
            let v = asg[&p.name];
            if v < p.lower || v > p.upper {
                let residual = (p.lower - v).max(v - p.upper).max(0.0);
                out.push(Violation {
                    constraint: format!("{} in [{}, {}]", p.name, p.lower, p.upper),
                    residual,
                });
            }
            if p.kind == ParamKind::Integer {
                let residual = (v - v.round()).abs();
                if residual > EQ_TOL {
                    out.push(Violation {
                        constraint: format!("{} integral", p.name),
                        residual,
                    });
                }
            }
        }
        let lookup = |name: &str| asg.get(name).copied();
        for c in &self.constraints {
            let (ok, residual) = c.check(&lookup)?;
            if !ok {
                out.push(Violation {
                    constraint: c.to_string(),
                    residual,
                });
            }
        }
        Ok(out)
    }

    /// Cartesian lattice including both bounds, row-major over the parameter
    /// order (last parameter varies fastest), constraint-violating points
    /// removed. `divisions[i]` is the number of points along parameter `i`.
    pub fn sample_grid(&self, divisions: &[usize]) -> Result<Vec<Assignment>, SpaceError> {
        assert_eq!(
            divisions.len(),
            self.parameters.len(),
            "one division count per parameter"
        );
        assert!(divisions.iter().all(|&d| d >= 1), "divisions must be >= 1");
        let axes: Vec<Vec<f64>> = self
            .parameters
            .iter()
            .zip(divisions)
            .map(|(p, &d)| {
                (0..d)
                    .map(|i| {
                        let v = if d == 1 {
                            p.lower
                        } else {
                            p.lower + (p.upper - p.lower) * (i as f64) / ((d - 1) as f64)
                        };
                        match p.kind {
                            ParamKind::Real => v,
                            ParamKind::Integer => v.round(),
                        }
                    })
                    .collect()
            })
            .collect();
        let total: usize = divisions.iter().product();
        let mut out = Vec::new();
        for flat in 0..total {
            let mut idx = flat;
            let mut asg = Assignment::new();
            for (p, axis) in self.parameters.iter().zip(&axes).rev() {
                let d = axis.len();
                asg.insert(p.name.clone(), axis[idx % d]);
                idx /= d;
            }
            if self.validate(&asg)?.is_empty() {
                out.push(asg);
            }
        }
        Ok(out)
    }

    /// `n` constraint-satisfying samples via seeded uniform rejection.
    /// Pure function of `(self, n, seed)`.
    pub fn sample_random(&self, n: usize, seed: u64) -> Result<Vec<Assignment>, SpaceError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        let mut draws: u64 = 0;
        while out.len() < n {
            draws += 1;
            if draws >= 1_000_000 && (out.len() as f64) < draws as f64 * 1e-3 {
                return Err(SpaceError::Infeasible(draws));
            }
            let mut asg = Assignment::new();
            for p in &self.parameters {
                let v = match p.kind {
                    ParamKind::Real => rng.random_range(p.lower..=p.upper),
                    ParamKind::Integer => rng.random_range(p.lower as i64..=p.upper as i64) as f64,
                };
                asg.insert(p.name.clone(), v);
            }
            if self.validate(&asg)?.is_empty() {
                out.push(asg);
            }
        }
        Ok(out)
    }

    /// Clamp every value into its bounds; integers round to the nearest
    /// in-range integer.
    pub fn clip(&self, asg: &Assignment) -> Result<Assignment, SpaceError> {
        let mut out = Assignment::new();
        for p in &self.parameters {
            let v = *asg
                .get(&p.name)
                .ok_or_else(|| SpaceError::MissingParameter(p.name.clone()))?;
            let v = v.clamp(p.lower, p.upper);
            let v = match p.kind {
                ParamKind::Real => v,
                ParamKind::Integer => v.round().clamp(p.lower, p.upper),
            };
            out.insert(p.name.clone(), v);
        }
        Ok(out)
    }

    /// Values in declared parameter order.
    pub fn to_vec(&self, asg: &Assignment) -> Vec<f64> {
        self.parameters.iter().map(|p| asg[&p.name]).collect()
    }

    pub fn from_vec(&self, values: &[f64]) -> Assignment {
        assert_eq!(values.len(), self.parameters.len());
        self.parameters
            .iter()
            .zip(values)
            .map(|(p, &v)| (p.name.clone(), v))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ParameterFile {
    name: String,
    kind: ParamKind,
    lower: f64,
    upper: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum ConstraintFile {
    Compare {
        lhs: String,
        op: CompareOp,
        rhs: String,
    },
    DivisibleBy {
        param: String,
        k: u64,
    },
}

#[derive(Serialize, Deserialize)]
struct DesignSpaceFile {
    parameters: Vec<ParameterFile>,
    constraints: Vec<ConstraintFile>,
}

impl DesignSpace {
    pub fn from_json(text: &str) -> Result<Self, String> {
        let file: DesignSpaceFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let parameters = file
            .parameters
            .into_iter()
            .map(|p| Parameter {
                name: p.name,
                kind: p.kind,
                lower: p.lower,
                upper: p.upper,
            })
            .collect();
        let constraints = file
            .constraints
            .into_iter()
            .map(|c| match c {
                ConstraintFile::Compare { lhs, op, rhs } => Ok(Constraint::Compare {
                    lhs: Expr::parse(&lhs).map_err(|e| e.to_string())?,
                    op,
                    rhs: Expr::parse(&rhs).map_err(|e| e.to_string())?,
                }),
                ConstraintFile::DivisibleBy { param, k } => Ok(Constraint::DivisibleBy { param, k }),
            })
            .collect::<Result<Vec<_>, String>>()?;
        DesignSpace::new(parameters, constraints).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        let file = DesignSpaceFile {
            parameters: self
                .parameters
                .iter()
                .map(|p| ParameterFile {
                    name: p.name.clone(),
                    kind: p.kind,
                    lower: p.lower,
                    upper: p.upper,
                })
                .collect(),
            constraints: self
                .constraints
                .iter()
                .map(|c| match c {
                    Constraint::Compare { lhs, op, rhs } => ConstraintFile::Compare {
                        lhs: lhs.to_string(),
                        op: *op,
                        rhs: rhs.to_string(),
                    },
                    Constraint::DivisibleBy { param, k } => ConstraintFile::DivisibleBy {
                        param: param.clone(),
                        k: *k,
                    },
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("schema serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lego_space() -> DesignSpace {
        DesignSpace::new(
            vec![
                Parameter::integer("brick_length", 3, 60),
                Parameter::integer("brick_width", 3, 60),
                Parameter::integer("brick_height", 1, 60),
            ],
            vec![
                Constraint::divisible_by("brick_length", 3),
                Constraint::divisible_by("brick_width", 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn expr_parser_basics() {
        let e = Expr::parse("2 * (a + b) - c / 4").unwrap();
        let lookup = |n: &str| match n {
            "a" => Some(1.0),
            "b" => Some(2.0),
            "c" => Some(8.0),
            _ => None,
        };
        assert_eq!(e.eval(&lookup).unwrap(), 4.0);
        assert_eq!(Expr::parse("-x").unwrap().eval(&|_| Some(3.0)).unwrap(), -3.0);
        assert!(Expr::parse("2 +").is_err());
        assert!(Expr::parse("foo $ bar").is_err());
        assert!(matches!(
            Expr::parse("q").unwrap().eval(&|_| None),
            Err(ExprError::UnknownIdentifier(_))
        ));
    }

    #[test]
    fn lego_defaults_validate() {
        let space = lego_space();
        let ok = assignment(&[
            ("brick_length", 30.0),
            ("brick_width", 6.0),
            ("brick_height", 1.0),
        ]);
        assert!(space.validate(&ok).unwrap().is_empty());

        let bad = assignment(&[
            ("brick_length", 31.0),
            ("brick_width", 6.0),
            ("brick_height", 1.0),
        ]);
        let violations = space.validate(&bad).unwrap();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].constraint, "brick_length % 3 = 0");
        assert!(violations[0].residual > 0.9);
    }

    #[test]
    fn car_bounds_constraints() {
        let space = DesignSpace::new(
            vec![
                Parameter::real("length", 1.0, 10.0),
                Parameter::real("width", 0.5, 5.0),
                Parameter::real("height", 0.5, 4.0),
            ],
            vec![
                Constraint::compare("width", CompareOp::Lt, "length").unwrap(),
                Constraint::compare("width", CompareOp::Gt, "height").unwrap(),
            ],
        )
        .unwrap();
        let ok = assignment(&[("length", 4.0), ("width", 2.0), ("height", 1.5)]);
        assert!(space.validate(&ok).unwrap().is_empty());
        let bad = assignment(&[("length", 1.5), ("width", 2.0), ("height", 1.5)]);
        assert_eq!(space.validate(&bad).unwrap().len(), 1);
    }

    #[test]
    fn missing_parameter_is_an_error() {
        let space = lego_space();
        let incomplete = assignment(&[("brick_length", 30.0)]);
        assert!(matches!(
            space.validate(&incomplete),
            Err(SpaceError::MissingParameter(_))
        ));
    }

    #[test]
    fn grid_includes_bounds() {
        let space = DesignSpace::new(vec![Parameter::real("x", 0.0, 1.0)], vec![]).unwrap();
        let pts = space.sample_grid(&[3]).unwrap();
        let xs: Vec<f64> = pts.iter().map(|a| a["x"]).collect();
        assert_eq!(xs, vec![0.0, 0.5, 1.0]);

        let space2 = DesignSpace::new(
            vec![
                Parameter::real("x", 0.0, 1.0),
                Parameter::real("y", 0.0, 1.0),
            ],
            vec![],
        )
        .unwrap();
        let pts = space2.sample_grid(&[2, 2]).unwrap();
        assert_eq!(pts.len(), 4);
        // last parameter varies fastest
        assert_eq!((pts[0]["x"], pts[0]["y"]), (0.0, 0.0));
        assert_eq!((pts[1]["x"], pts[1]["y"]), (0.0, 1.0));
        assert_eq!((pts[2]["x"], pts[2]["y"]), (1.0, 0.0));
    }

    #[test]
    fn grid_filters_constraints() {
        let space = DesignSpace::new(
            vec![Parameter::integer("brick_length", 3, 60)],
            vec![Constraint::divisible_by("brick_length", 3)],
        )
        .unwrap();
        let pts = space.sample_grid(&[20]).unwrap();
        let got: Vec<f64> = pts.iter().map(|a| a["brick_length"]).collect();
        let expected: Vec<f64> = (1..=20).map(|k| (3 * k) as f64).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn random_sampling_is_seeded_and_valid() {
        let space = lego_space();
        assert!(space.sample_random(0, 7).unwrap().is_empty());
        let a = space.sample_random(25, 42).unwrap();
        let b = space.sample_random(25, 42).unwrap();
        assert_eq!(a, b);
        let c = space.sample_random(25, 43).unwrap();
        assert_ne!(a, c);
        for asg in &a {
            assert!(space.validate(asg).unwrap().is_empty());
        }
    }

    #[test]
    fn clip_clamps_and_rounds() {
        let space = DesignSpace::new(
            vec![Parameter::real("x", 0.0, 1.0), Parameter::integer("n", 1, 5)],
            vec![],
        )
        .unwrap();
        let asg = assignment(&[("x", -0.5), ("n", 2.6)]);
        let clipped = space.clip(&asg).unwrap();
        assert_eq!(clipped["x"], 0.0);
        assert_eq!(clipped["n"], 3.0);
        let inside = assignment(&[("x", 0.25), ("n", 4.0)]);
        assert_eq!(space.clip(&inside).unwrap(), inside);
        // bound violations never survive a clip
        for (x, n) in [(-3.0, 99.0), (2.0, -2.0), (0.7, 3.2)] {
            let clipped = space.clip(&assignment(&[("x", x), ("n", n)])).unwrap();
            let violations = space.validate(&clipped).unwrap();
            assert!(violations.is_empty(), "{violations:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let space = lego_space();
        let text = space.to_json();
        let back = DesignSpace::from_json(&text).unwrap();
        assert_eq!(space, back);
        let sample = r#"{
            "parameters": [
                {"name": "w", "kind": "real", "lower": 0.5, "upper": 2.0}
            ],
            "constraints": [
                {"type": "compare", "lhs": "w * 2", "op": "<=", "rhs": "3"}
            ]
        }"#;
        let s = DesignSpace::from_json(sample).unwrap();
        assert!(s.validate(&assignment(&[("w", 1.0)])).unwrap().is_empty());
        assert_eq!(s.validate(&assignment(&[("w", 1.9)])).unwrap().len(), 1);
    }
}

//! Coordinate expression parser and cycle file loader.
//!
//! Expressions use the parameter t, named parameters, integer literals, the
//! imaginary unit i, and the operators + − * / ^. Cycle files are JSON:
//!
//! ```json
//! {
//!   "n": 3, "p": 2,
//!   "components": [ { "multiplicity": "1", "coords": ["t", "1 - a/t", "1 - t"] } ],
//!   "parameters": { "a": { "re": 0.5, "im": 0.0 } }
//! }
//! ```
//!
//! Parameters with string-valued parts ("1/2") are exact Gaussian rationals;
//! numeric parts switch the whole cycle to floating point.

use std::collections::BTreeMap;

use num::{BigInt, Num, One, Zero};
use serde_json::Value;

use super::poly::{CycleError, CycleScalar, RationalFunction};
use super::{ComponentData, CycleComponent, ParamCycle};
use crate::coefficients::{GaussianRational, Rational, C64};

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Int(BigInt),
    Ident(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>, CycleError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' | '−' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    return Err(CycleError::Parse(
                        "decimal literals are not allowed; use rational parameters".into(),
                    ));
                }
                let text: String = chars[start..i].iter().collect();
                let n = BigInt::from_str_radix(&text, 10)
                    .map_err(|e| CycleError::Parse(e.to_string()))?;
                tokens.push(Token::Int(n));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(CycleError::Parse(format!("unexpected character '{}'", other)));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: &Token) -> Result<(), CycleError> {
        match self.bump() {
            Some(found) if &found == t => Ok(()),
            other => Err(CycleError::Parse(format!("expected {:?}, found {:?}", t, other))),
        }
    }

    fn expr(&mut self) -> Result<Ast, CycleError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, CycleError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    self.bump();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, CycleError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, CycleError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let negative = if matches!(self.peek(), Some(Token::Minus)) {
                self.bump();
                true
            } else {
                false
            };
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e: i64 = n
                        .try_into()
                        .map_err(|_| CycleError::Parse("exponent out of range".into()))?;
                    Ok(Ast::Pow(Box::new(base), if negative { -e } else { e }))
                }
                other => Err(CycleError::Parse(format!(
                    "exponent must be an integer literal, found {:?}",
                    other
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast, CycleError> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(Ast::Int(n)),
            Some(Token::Ident(name)) => Ok(Ast::Ident(name)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(&Token::RParen)?;
                Ok(inner)
            }
            other => Err(CycleError::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Ast, CycleError> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let ast = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(CycleError::Parse(format!(
            "trailing tokens after expression: {:?}",
            &p.tokens[p.pos..]
        )));
    }
    Ok(ast)
}

/// Evaluate an expression to a rational function of t over K.
pub fn eval_ast<K: CycleScalar>(
    ast: &Ast,
    params: &BTreeMap<String, K>,
) -> Result<RationalFunction<K>, CycleError> {
    match ast {
        Ast::Int(n) => Ok(RationalFunction::constant(K::from_gaussian(
            &GaussianRational::from_rational(Rational::from_integer(n.clone())),
        ))),
        Ast::Ident(name) if name == "t" => Ok(RationalFunction::t()),
        Ast::Ident(name) if name == "i" => {
            Ok(RationalFunction::constant(K::from_gaussian(&GaussianRational::i())))
        }
        Ast::Ident(name) => params
            .get(name)
            .map(|v| RationalFunction::constant(v.clone()))
            .ok_or_else(|| CycleError::Parse(format!("unknown parameter '{}'", name))),
        Ast::Neg(inner) => Ok(eval_ast(inner, params)?.neg()),
        Ast::Add(a, b) => eval_ast(a, params)?.add(&eval_ast(b, params)?),
        Ast::Sub(a, b) => eval_ast(a, params)?.sub(&eval_ast(b, params)?),
        Ast::Mul(a, b) => eval_ast(a, params)?.mul(&eval_ast(b, params)?),
        Ast::Div(a, b) => eval_ast(a, params)?.div(&eval_ast(b, params)?),
        Ast::Pow(a, e) => eval_ast(a, params)?.pow(*e),
    }
}

/// A cycle loaded from a file: exact when every parameter is exact.
#[derive(Clone, Debug)]
pub enum LoadedCycle {
    Exact(ParamCycle<GaussianRational>),
    Numeric(ParamCycle<C64>),
}

impl LoadedCycle {
    pub fn to_numeric(&self) -> ParamCycle<C64> {
        match self {
            LoadedCycle::Exact(z) => z.to_numeric(),
            LoadedCycle::Numeric(z) => z.clone(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            LoadedCycle::Exact(z) => z.n,
            LoadedCycle::Numeric(z) => z.n,
        }
    }

    pub fn p(&self) -> usize {
        match self {
            LoadedCycle::Exact(z) => z.p,
            LoadedCycle::Numeric(z) => z.p,
        }
    }
}

#[derive(Clone, Debug)]
enum ParamValue {
    Exact(GaussianRational),
    Numeric(C64),
}

fn parse_rational_str(s: &str) -> Result<Rational, CycleError> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str_radix(num.trim(), 10)
            .map_err(|e| CycleError::Parse(format!("bad rational '{}': {}", s, e)))?;
        let d = BigInt::from_str_radix(den.trim(), 10)
            .map_err(|e| CycleError::Parse(format!("bad rational '{}': {}", s, e)))?;
        if d.is_zero() {
            return Err(CycleError::Parse(format!("zero denominator in '{}'", s)));
        }
        Ok(Rational::new(n, d))
    } else {
        let n = BigInt::from_str_radix(s, 10)
            .map_err(|e| CycleError::Parse(format!("bad integer '{}': {}", s, e)))?;
        Ok(Rational::from_integer(n))
    }
}

fn parse_param_part(v: &Value) -> Result<ParamValue, CycleError> {
    match v {
        Value::Number(x) => {
            if let Some(i) = x.as_i64() {
                Ok(ParamValue::Exact(GaussianRational::from_int(i)))
            } else {
                Ok(ParamValue::Numeric(C64::new(x.as_f64().unwrap(), 0.0)))
            }
        }
        Value::String(s) => Ok(ParamValue::Exact(GaussianRational::from_rational(
            parse_rational_str(s)?,
        ))),
        other => Err(CycleError::Parse(format!("bad parameter part {}", other))),
    }
}

fn parse_param(v: &Value) -> Result<ParamValue, CycleError> {
    match v {
        Value::Object(map) => {
            let re = map
                .get("re")
                .map(parse_param_part)
                .transpose()?
                .unwrap_or(ParamValue::Exact(GaussianRational::zero()));
            let im = map
                .get("im")
                .map(parse_param_part)
                .transpose()?
                .unwrap_or(ParamValue::Exact(GaussianRational::zero()));
            match (re, im) {
                (ParamValue::Exact(r), ParamValue::Exact(i)) => {
                    Ok(ParamValue::Exact(GaussianRational::new(r.re, i.re)))
                }
                (r, i) => {
                    let rv = match r {
                        ParamValue::Exact(g) => g.to_c64().re,
                        ParamValue::Numeric(z) => z.re,
                    };
                    let iv = match i {
                        ParamValue::Exact(g) => g.to_c64().re,
                        ParamValue::Numeric(z) => z.re,
                    };
                    Ok(ParamValue::Numeric(C64::new(rv, iv)))
                }
            }
        }
        other => parse_param_part(other),
    }
}

fn parse_multiplicity(v: &Value) -> Result<Rational, CycleError> {
    match v {
        Value::Number(x) => x
            .as_i64()
            .map(|i| Rational::from_integer(BigInt::from(i)))
            .ok_or_else(|| CycleError::Parse("multiplicity must be integer or rational string".into())),
        Value::String(s) => parse_rational_str(s),
        other => Err(CycleError::Parse(format!("bad multiplicity {}", other))),
    }
}

fn build_cycle<K: CycleScalar>(
    n: usize,
    p: usize,
    raw_components: &[Value],
    params: &BTreeMap<String, K>,
) -> Result<ParamCycle<K>, CycleError> {
    let mut components = Vec::new();
    for comp in raw_components {
        let obj = comp
            .as_object()
            .ok_or_else(|| CycleError::Parse("component must be an object".into()))?;
        let multiplicity = obj
            .get("multiplicity")
            .map(parse_multiplicity)
            .transpose()?
            .unwrap_or_else(Rational::one);
        let data = if let Some(coords) = obj.get("coords") {
            let arr = coords
                .as_array()
                .ok_or_else(|| CycleError::Parse("coords must be an array".into()))?;
            let mut fns = Vec::new();
            for c in arr {
                let src = c
                    .as_str()
                    .ok_or_else(|| CycleError::Parse("coordinate must be a string".into()))?;
                fns.push(eval_ast(&parse_expr(src)?, params)?);
            }
            ComponentData::Curve(fns)
        } else if let Some(point) = obj.get("point") {
            let arr = point
                .as_array()
                .ok_or_else(|| CycleError::Parse("point must be an array".into()))?;
            let mut values = Vec::new();
            for c in arr {
                let src = c
                    .as_str()
                    .ok_or_else(|| CycleError::Parse("point entry must be a string".into()))?;
                let rf = eval_ast(&parse_expr(src)?, params)?;
                let v = rf.constant_value().ok_or_else(|| {
                    CycleError::Parse("point coordinates must not involve t".into())
                })?;
                values.push(v);
            }
            ComponentData::Point(values)
        } else {
            return Err(CycleError::Parse(
                "component needs either 'coords' or 'point'".into(),
            ));
        };
        components.push(CycleComponent { multiplicity, data });
    }
    ParamCycle::new(n, p, components)
}

pub fn parse_cycle_json(text: &str) -> Result<LoadedCycle, CycleError> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| CycleError::Parse(format!("invalid JSON: {}", e)))?;
    let obj = root
        .as_object()
        .ok_or_else(|| CycleError::Parse("cycle file must be a JSON object".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| CycleError::Parse("missing integer field 'n'".into()))? as usize;
    let p = obj
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| CycleError::Parse("missing integer field 'p'".into()))? as usize;
    let raw_components = obj
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| CycleError::Parse("missing array field 'components'".into()))?
        .clone();

    let mut raw_params: BTreeMap<String, ParamValue> = BTreeMap::new();
    if let Some(params) = obj.get("parameters") {
        let map = params
            .as_object()
            .ok_or_else(|| CycleError::Parse("'parameters' must be an object".into()))?;
        for (name, v) in map {
            if name == "t" || name == "i" {
                return Err(CycleError::Parse(format!("'{}' is reserved", name)));
            }
            raw_params.insert(name.clone(), parse_param(v)?);
        }
    }

    let all_exact = raw_params
        .values()
        .all(|v| matches!(v, ParamValue::Exact(_)));
    if all_exact {
        let params: BTreeMap<String, GaussianRational> = raw_params
            .into_iter()
            .map(|(k, v)| match v {
                ParamValue::Exact(g) => (k, g),
                ParamValue::Numeric(_) => unreachable!(),
            })
            .collect();
        Ok(LoadedCycle::Exact(build_cycle(n, p, &raw_components, &params)?))
    } else {
        let params: BTreeMap<String, C64> = raw_params
            .into_iter()
            .map(|(k, v)| match v {
                ParamValue::Exact(g) => (k, g.to_c64()),
                ParamValue::Numeric(z) => (k, z),
            })
            .collect();
        Ok(LoadedCycle::Numeric(build_cycle(n, p, &raw_components, &params)?))
    }
}

pub fn load_cycle_file(path: &std::path::Path) -> Result<LoadedCycle, CycleError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CycleError::Parse(format!("cannot read {}: {}", path.display(), e)))?;
    parse_cycle_json(&text)
}

/// JSON rendering of a cycle; reparses to the same internal value.
pub fn cycle_to_json<K: CycleScalar>(z: &ParamCycle<K>) -> Value {
    let components: Vec<Value> = z
        .components
        .iter()
        .map(|c| {
            let mult = Value::String(rational_string(&c.multiplicity));
            match &c.data {
                ComponentData::Curve(coords) => serde_json::json!({
                    "multiplicity": mult,
                    "coords": coords.iter().map(|r| r.render()).collect::<Vec<_>>(),
                }),
                ComponentData::Point(values) => serde_json::json!({
                    "multiplicity": mult,
                    "point": values.iter().map(|v| v.render()).collect::<Vec<_>>(),
                }),
            }
        })
        .collect();
    serde_json::json!({ "n": z.n, "p": z.p, "components": components })
}

/// JSON rendering of a point cycle.
pub fn point_cycle_to_json<K: CycleScalar>(z: &super::PointCycle<K>) -> Value {
    let points: Vec<Value> = z
        .points
        .iter()
        .map(|(m, vs)| {
            serde_json::json!({
                "multiplicity": rational_string(m),
                "values": vs.iter().map(|v| v.render()).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({ "n": z.n, "points": points })
}

pub fn rational_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow_cycles::{totaro_c, FaceValue};
    use crate::coefficients::rat;

    #[test]
    fn parse_spec_example_file() {
        let text = r#"{
            "n": 3, "p": 2,
            "components": [ { "multiplicity": "1", "coords": ["t", "1 - a/t", "1 - t"] } ],
            "parameters": { "a": { "re": 0.5, "im": 0.0 } }
        }"#;
        let cycle = parse_cycle_json(text).unwrap();
        // 0.5 is not an integer JSON number, so this file is numeric
        match cycle {
            LoadedCycle::Numeric(z) => {
                assert_eq!((z.n, z.p), (3, 2));
                let expect = totaro_c(&GaussianRational::from_rational(rat(1, 2)))
                    .unwrap()
                    .to_numeric();
                assert_eq!(z, expect);
            }
            _ => panic!("expected numeric cycle"),
        }
    }

    #[test]
    fn parse_exact_file() {
        let text = r#"{
            "n": 3, "p": 2,
            "components": [ { "multiplicity": "1", "coords": ["t", "1 - a/t", "1 - t"] } ],
            "parameters": { "a": { "re": "1/2", "im": "0" } }
        }"#;
        match parse_cycle_json(text).unwrap() {
            LoadedCycle::Exact(z) => {
                let expect = totaro_c(&GaussianRational::from_rational(rat(1, 2))).unwrap();
                assert_eq!(z, expect);
            }
            _ => panic!("expected exact cycle"),
        }
    }

    #[test]
    fn parse_point_component_and_i() {
        let text = r#"{
            "n": 1, "p": 1,
            "components": [ { "multiplicity": 1, "point": ["1 + i"] } ]
        }"#;
        match parse_cycle_json(text).unwrap() {
            LoadedCycle::Exact(z) => {
                assert_eq!((z.n, z.p), (1, 1));
            }
            _ => panic!("expected exact cycle"),
        }
    }

    #[test]
    fn parser_operator_precedence() {
        let params: BTreeMap<String, GaussianRational> = BTreeMap::new();
        let rf = eval_ast(&parse_expr("1 - 2*t^2 + t/2").unwrap(), &params).unwrap();
        // at t = 2: 1 − 8 + 1 = −6
        match rf.eval(&GaussianRational::from_int(2)) {
            crate::chow_cycles::ProjValue::Finite(v) => {
                assert_eq!(v, GaussianRational::from_int(-6))
            }
            _ => panic!(),
        }
    }

    #[test]
    fn parser_rejects_garbage() {
        assert!(parse_expr("1 +").is_err());
        assert!(parse_expr("t ** 2").is_err());
        assert!(parse_expr("0.5 * t").is_err());
        assert!(parse_expr("t ^ x").is_err());
        let params: BTreeMap<String, GaussianRational> = BTreeMap::new();
        assert!(eval_ast(&parse_expr("1/b").unwrap(), &params).is_err());
    }

    #[test]
    fn cycle_json_round_trip_exact() {
        let a = GaussianRational::new(rat(3, 10), rat(1, 5));
        let z = totaro_c(&a).unwrap();
        let rendered = cycle_to_json(&z).to_string();
        match parse_cycle_json(&rendered).unwrap() {
            LoadedCycle::Exact(back) => assert_eq!(back, z),
            _ => panic!("expected exact"),
        }
    }

    #[test]
    fn cycle_json_round_trip_numeric() {
        let a = C64::new(0.3, 0.2);
        let z = totaro_c(&a).unwrap();
        let rendered = cycle_to_json(&z).to_string();
        // numeric values render as exact dyadic rationals, so the reparse is
        // bit-identical
        match parse_cycle_json(&rendered).unwrap() {
            LoadedCycle::Exact(back) => assert_eq!(back.to_numeric(), z),
            LoadedCycle::Numeric(back) => assert_eq!(back, z),
        }
    }

    #[test]
    fn loaded_faces_match_constructor() {
        let text = r#"{
            "n": 3, "p": 2,
            "components": [ { "multiplicity": "1", "coords": ["t", "1 - a/t", "1 - t"] } ],
            "parameters": { "a": "1/2" }
        }"#;
        match parse_cycle_json(text).unwrap() {
            LoadedCycle::Exact(z) => {
                let f = z.face(1, FaceValue::Zero).unwrap();
                assert_eq!(f.points.len(), 1);
            }
            _ => panic!(),
        }
    }
}

//! The tag expression language: paths, literals, arithmetic, comparison,
//! logic, the conditional operator and a few builtins, callable either as
//! functions (`join(actions, ", ")`) or as filters (`actions | join: ", "`).

use serde_json::{Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// `.`: the innermost scope value.
    Current,
    Name(String),
    Member(Box<Expr>, String),
    Index(Box<Expr>, Box<Expr>),
    Literal(Value),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Conditional(Box<Expr>, Box<Expr>, Box<Expr>),
    Call(Builtin, Vec<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Not,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Upper,
    Lower,
    Length,
    Join,
    Default,
}

impl Builtin {
    fn from_name(name: &str) -> Option<(Builtin, usize)> {
        Some(match name {
            "upper" => (Builtin::Upper, 1),
            "lower" => (Builtin::Lower, 1),
            "length" => (Builtin::Length, 1),
            "join" => (Builtin::Join, 2),
            "default" => (Builtin::Default, 2),
            _ => return None,
        })
    }
}

/// Error with a character offset into the expression text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Str(String),
    Ident(String),
    Op(&'static str),
}

const OPS: &[&str] = &[
    "==", "!=", "<=", ">=", "&&", "||", "<", ">", "+", "-", "*", "/", "%", "!", "?", ":", ".", ",",
    "(", ")", "[", "]", "|",
];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                if chars[i] == '.' && !chars.get(i + 1).is_some_and(char::is_ascii_digit) {
                    break;
                }
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse::<f64>().map_err(|_| ExprError {
                offset: start,
                message: format!("invalid number '{text}'"),
            })?;
            out.push((start, Tok::Num(n)));
        } else if c == '"' || c == '\'' {
            let start = i;
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => {
                        return Err(ExprError {
                            offset: start,
                            message: "unterminated string".into(),
                        })
                    }
                    Some(&q) if q == c => break,
                    Some('\\') if i + 1 < chars.len() => {
                        s.push(chars[i + 1]);
                        i += 2;
                        continue;
                    }
                    Some(&ch) => s.push(ch),
                }
                i += 1;
            }
            i += 1;
            out.push((start, Tok::Str(s)));
        } else if c.is_alphabetic() || c == '_' || c == '@' || c == '$' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            let op = OPS.iter().find(|op| rest.starts_with(**op)).ok_or(ExprError {
                offset: i,
                message: format!("unexpected character '{c}'"),
            })?;
            out.push((i, Tok::Op(op)));
            i += op.chars().count();
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, op: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Op(o)) if *o == op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: &str) -> Result<(), ExprError> {
        if self.eat(op) {
            Ok(())
        } else {
            self.err(format!("expected '{op}'"))
        }
    }

    /// `expr | name: arg ...`, desugared to `name(expr, arg, ...)`.
    fn filtered(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.conditional()?;
        while self.eat("|") {
            let start = self.offset();
            let Some(Tok::Ident(name)) = self.peek().cloned() else {
                return self.err("expected a filter name after '|'");
            };
            self.pos += 1;
            let mut args = vec![e];
            while self.eat(":") {
                args.push(self.binary(0)?);
            }
            e = builtin_call(&name, args, start)?;
        }
        Ok(e)
    }

    fn conditional(&mut self) -> Result<Expr, ExprError> {
        let cond = self.binary(0)?;
        if self.eat("?") {
            let a = self.conditional()?;
            self.expect(":")?;
            let b = self.conditional()?;
            return Ok(Expr::Conditional(Box::new(cond), Box::new(a), Box::new(b)));
        }
        Ok(cond)
    }

    fn binary(&mut self, level: usize) -> Result<Expr, ExprError> {
        const LEVELS: &[&[(&str, BinaryOp)]] = &[
            &[("||", BinaryOp::Or)],
            &[("&&", BinaryOp::And)],
            &[("==", BinaryOp::Eq), ("!=", BinaryOp::Ne)],
            &[("<=", BinaryOp::Le), (">=", BinaryOp::Ge), ("<", BinaryOp::Lt), (">", BinaryOp::Gt)],
            &[("+", BinaryOp::Add), ("-", BinaryOp::Sub)],
            &[("*", BinaryOp::Mul), ("/", BinaryOp::Div), ("%", BinaryOp::Rem)],
        ];
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        'outer: loop {
            for (sym, op) in LEVELS[level] {
                if self.eat(sym) {
                    let rhs = self.binary(level + 1)?;
                    lhs = Expr::Binary(*op, Box::new(lhs), Box::new(rhs));
                    continue 'outer;
                }
            }
            return Ok(lhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat("!") {
            return Ok(Expr::Unary(UnaryOp::Not, Box::new(self.unary()?)));
        }
        if self.eat("-") {
            return Ok(Expr::Unary(UnaryOp::Neg, Box::new(self.unary()?)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.primary()?;
        loop {
            if self.eat(".") {
                match self.peek().cloned() {
                    Some(Tok::Ident(name)) => {
                        self.pos += 1;
                        e = Expr::Member(Box::new(e), name);
                    }
                    _ => return self.err("expected a field name after '.'"),
                }
            } else if self.eat("[") {
                let i = self.conditional()?;
                self.expect("]")?;
                e = Expr::Index(Box::new(e), Box::new(i));
            } else {
                return Ok(e);
            }
        }
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of expression");
        };
        let start = self.offset();
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Expr::Literal(number(n))),
            Tok::Str(s) => Ok(Expr::Literal(Value::String(s))),
            Tok::Ident(name) => match name.as_str() {
                "true" => Ok(Expr::Literal(Value::Bool(true))),
                "false" => Ok(Expr::Literal(Value::Bool(false))),
                "null" => Ok(Expr::Literal(Value::Null)),
                _ if matches!(self.peek(), Some(Tok::Op("("))) => {
                    self.pos += 1;
                    let mut args = Vec::new();
                    if !self.eat(")") {
                        loop {
                            args.push(self.conditional()?);
                            if self.eat(")") {
                                break;
                            }
                            self.expect(",")?;
                        }
                    }
                    builtin_call(&name, args, start)
                }
                _ => Ok(Expr::Name(name)),
            },
            Tok::Op("(") => {
                let e = self.filtered()?;
                self.expect(")")?;
                Ok(e)
            }
            Tok::Op(".") => Ok(Expr::Current),
            Tok::Op(op) => Err(ExprError {
                offset: start,
                message: format!("unexpected '{op}'"),
            }),
        }
    }
}

fn builtin_call(name: &str, args: Vec<Expr>, offset: usize) -> Result<Expr, ExprError> {
    let Some((builtin, arity)) = Builtin::from_name(name) else {
        return Err(ExprError {
            offset,
            message: format!("unknown function '{name}'"),
        });
    };
    if args.len() != arity {
        return Err(ExprError {
            offset,
            message: format!("{name}() takes {arity} argument(s), got {}", args.len()),
        });
    }
    Ok(Expr::Call(builtin, args))
}

pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        len: src.chars().count(),
    };
    let e = p.filtered()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected input after expression");
    }
    Ok(e)
}

fn number(n: f64) -> Value {
    if n.fract() == 0.0 && n.abs() < 9.0e15 {
        Value::Number(Number::from(n as i64))
    } else {
        Number::from_f64(n).map_or(Value::Null, Value::Number)
    }
}

/// Scopes searched innermost first.
pub trait Scope {
    fn lookup(&self, name: &str) -> Value;
    fn current(&self) -> Value;
}

pub fn truthy(v: &Value) -> bool {
    match v {
        Value::Null => false,
        Value::Bool(b) => *b,
        Value::Number(n) => n.as_f64().is_some_and(|f| f != 0.0),
        Value::String(s) => !s.is_empty(),
        Value::Array(a) => !a.is_empty(),
        Value::Object(_) => true,
    }
}

/// Text form of a value: numbers without trailing zeros, arrays joined with
/// ", ", null as the empty string.
pub fn stringify(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match n.as_f64() {
            Some(f) if f.fract() == 0.0 && f.abs() < 9.0e15 => (f as i64).to_string(),
            Some(f) => f.to_string(),
            None => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(stringify).collect::<Vec<_>>().join(", "),
        Value::Object(_) => v.to_string(),
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

/// Evaluation error: a type mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError(pub String);

fn num(v: &Value, op: &str) -> Result<f64, TypeError> {
    v.as_f64()
        .ok_or_else(|| TypeError(format!("'{op}' needs numbers, got {}", type_name(v))))
}

fn equal(a: &Value, b: &Value) -> bool {
    match (a.as_f64(), b.as_f64()) {
        (Some(x), Some(y)) => x == y,
        _ => a == b,
    }
}

pub fn eval(e: &Expr, scope: &dyn Scope) -> Result<Value, TypeError> {
    Ok(match e {
        Expr::Current => scope.current(),
        Expr::Name(n) => scope.lookup(n),
        Expr::Literal(v) => v.clone(),
        Expr::Member(base, field) => match eval(base, scope)? {
            Value::Object(mut m) => m.remove(field).unwrap_or(Value::Null),
            Value::Array(a) if field == "length" => number(a.len() as f64),
            _ => Value::Null,
        },
        Expr::Index(base, index) => {
            let base = eval(base, scope)?;
            match (base, eval(index, scope)?) {
                (Value::Array(mut a), Value::Number(n)) => match n.as_f64() {
                    Some(f) if f >= 0.0 && f.fract() == 0.0 && (f as usize) < a.len() => {
                        a.swap_remove(f as usize)
                    }
                    _ => Value::Null,
                },
                (Value::Object(mut m), Value::String(k)) => m.remove(&k).unwrap_or(Value::Null),
                (Value::Null, _) => Value::Null,
                (b, i) => {
                    return Err(TypeError(format!(
                        "cannot index {} with {}",
                        type_name(&b),
                        type_name(&i)
                    )))
                }
            }
        }
        Expr::Unary(UnaryOp::Not, x) => Value::Bool(!truthy(&eval(x, scope)?)),
        Expr::Unary(UnaryOp::Neg, x) => number(-num(&eval(x, scope)?, "-")?),
        Expr::Binary(BinaryOp::And, a, b) => {
            Value::Bool(truthy(&eval(a, scope)?) && truthy(&eval(b, scope)?))
        }
        Expr::Binary(BinaryOp::Or, a, b) => {
            Value::Bool(truthy(&eval(a, scope)?) || truthy(&eval(b, scope)?))
        }
        Expr::Binary(op, a, b) => {
            let (a, b) = (eval(a, scope)?, eval(b, scope)?);
            binary(*op, &a, &b)?
        }
        Expr::Conditional(c, x, y) => {
            if truthy(&eval(c, scope)?) {
                eval(x, scope)?
            } else {
                eval(y, scope)?
            }
        }
        Expr::Call(f, args) => {
            let args: Vec<Value> = args.iter().map(|a| eval(a, scope)).collect::<Result<_, _>>()?;
            call(*f, args)?
        }
    })
}

fn binary(op: BinaryOp, a: &Value, b: &Value) -> Result<Value, TypeError> {
    use BinaryOp::*;
    let sym = match op {
        Add => "+",
        Sub => "-",
        Mul => "*",
        Div => "/",
        Rem => "%",
        Lt => "<",
        Le => "<=",
        Gt => ">",
        Ge => ">=",
        Eq | Ne | And | Or => "",
    };
    Ok(match op {
        Eq => Value::Bool(equal(a, b)),
        Ne => Value::Bool(!equal(a, b)),
        Lt | Le | Gt | Ge => {
            let ord = match (a, b) {
                (Value::String(x), Value::String(y)) => x.cmp(y),
                _ => num(a, sym)?
                    .partial_cmp(&num(b, sym)?)
                    .ok_or_else(|| TypeError("cannot compare NaN".into()))?,
            };
            Value::Bool(match op {
                Lt => ord.is_lt(),
                Le => ord.is_le(),
                Gt => ord.is_gt(),
                _ => ord.is_ge(),
            })
        }
        Add | Sub | Mul | Div | Rem => {
            let (x, y) = (num(a, sym)?, num(b, sym)?);
            if matches!(op, Div | Rem) && y == 0.0 {
                return Err(TypeError(format!("division by zero in '{sym}'")));
            }
            number(match op {
                Add => x + y,
                Sub => x - y,
                Mul => x * y,
                Div => x / y,
                _ => x % y,
            })
        }
        And | Or => unreachable!("short-circuited"),
    })
}

fn call(f: Builtin, mut args: Vec<Value>) -> Result<Value, TypeError> {
    let arg = args.remove(0);
    Ok(match f {
        Builtin::Upper | Builtin::Lower => match arg {
            Value::String(s) if f == Builtin::Upper => Value::String(s.to_uppercase()),
            Value::String(s) => Value::String(s.to_lowercase()),
            Value::Null => Value::Null,
            other => {
                return Err(TypeError(format!(
                    "{}() needs a string, got {}",
                    if f == Builtin::Upper { "upper" } else { "lower" },
                    type_name(&other)
                )))
            }
        },
        Builtin::Length => number(match &arg {
            Value::Null => 0,
            Value::String(s) => s.chars().count(),
            Value::Array(a) => a.len(),
            Value::Object(m) => m.len(),
            other => return Err(TypeError(format!("length() of {}", type_name(other)))),
        } as f64),
        Builtin::Join => {
            let sep = stringify(&args[0]);
            match arg {
                Value::Array(a) => {
                    Value::String(a.iter().map(stringify).collect::<Vec<_>>().join(&sep))
                }
                Value::Null => Value::String(String::new()),
                other => Value::String(stringify(&other)),
            }
        }
        Builtin::Default => {
            if arg.is_null() {
                args.remove(0)
            } else {
                arg
            }
        }
    })
}

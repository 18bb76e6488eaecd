//! Scenario files: a line-oriented list of declarations and checks.
//!
//! ```text
//! field Q
//! ring R = poly[x] / (x^2)
//! module k over R = coker [[x]]
//! map f : k -> R = [[x]]
//! check tn f 1
//! ```

use std::collections::HashMap;
use std::fmt;

use stablehom_lab::corpus::RingSpec;
use stablehom::{Field, Matrix, Module, Morphism, Poly, PresentedModule, QuotientRing, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    /// `field Q` (`None`) or `field F <p>`.
    Field(Option<u32>),
    Ring { name: String, vars: Vec<String>, ideal: Vec<String> },
    Module { name: String, ring: String, rows: Vec<Vec<String>>, degrees: Option<Vec<i32>> },
    Map { name: String, source: String, target: String, rows: Vec<Vec<String>> },
    Check { command: String, args: Vec<String> },
}

/// A parsed scenario. Line numbers are kept for messages only and do not
/// take part in equality.
#[derive(Clone, Debug, Default)]
pub struct Scenario {
    pub items: Vec<Decl>,
    pub lines: Vec<usize>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

impl Eq for Scenario {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ScenarioError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ScenarioError> {
    Err(ScenarioError { line, message: message.into() })
}

/// Everything a scenario declares, built and checked.
#[derive(Clone, Default)]
pub struct Env {
    pub rings: HashMap<String, Ring>,
    /// Declaration order of rings, for commands that walk all of them.
    pub ring_order: Vec<String>,
    pub modules: HashMap<String, Module>,
    pub maps: HashMap<String, Morphism>,
    pub specs: HashMap<String, RingSpec>,
}

impl Env {
    pub fn is_declared(&self, name: &str) -> bool {
        self.rings.contains_key(name) || self.modules.contains_key(name) || self.maps.contains_key(name)
    }
}

/// Commands understood by `check`, with their argument shapes.
pub const COMMANDS: &[(&str, &str)] = &[
    ("resolve", "M [L]"),
    ("ext", "M i"),
    ("grade", "M"),
    ("torsionfree", "M n"),
    ("tn", "f n"),
    ("rbm", "f"),
    ("stisolem", "f"),
    ("psi", "M n"),
    ("probe-gorenstein", "R"),
    ("verify", "<theorem> R"),
];

fn ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_alphabetic() || ch == '_')
        && s.chars().all(|ch| ch.is_alphanumeric() || ch == '_' || ch == '\'')
}

fn strip(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// `[[a, b], [c, d]]` into rows of entry strings.
fn parse_rows(s: &str, line: usize) -> Result<Vec<Vec<String>>, ScenarioError> {
    let s = strip(s);
    let inner = match s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        Some(i) => i,
        None => return err(line, format!("expected a bracketed matrix, got `{s}`")),
    };
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let Some(r) = rest.strip_prefix('[') else { return err(line, format!("expected `[` in `{s}`")) };
        let Some(end) = r.find(']') else { return err(line, format!("unclosed row in `{s}`")) };
        let row = &r[..end];
        rows.push(if row.is_empty() { Vec::new() } else { row.split(',').map(String::from).collect() });
        rest = &r[end + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            rest = r;
        } else if !rest.is_empty() {
            return err(line, format!("unexpected `{rest}` in matrix"));
        }
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return err(line, "rows of different lengths");
    }
    if rows.iter().flatten().any(|e| e.is_empty()) {
        return err(line, "empty matrix entry");
    }
    Ok(rows)
}

fn parse_list(s: &str, line: usize) -> Result<Vec<String>, ScenarioError> {
    let s = strip(s);
    let open = s.chars().next();
    let close = match open {
        Some('[') => ']',
        Some('(') => ')',
        _ => return err(line, format!("expected a bracketed list, got `{s}`")),
    };
    match s[1..].strip_suffix(close) {
        Some("") => Ok(Vec::new()),
        Some(inner) => Ok(inner.split(',').map(String::from).collect()),
        None => err(line, format!("unclosed list `{s}`")),
    }
}

fn parse_line(text: &str, line: usize) -> Result<Decl, ScenarioError> {
    let words: Vec<&str> = text.split_whitespace().collect();
    match words[0] {
        "field" => match words[1..] {
            ["Q"] => Ok(Decl::Field(None)),
            ["F", p] => match p.parse() {
                Ok(p) => Ok(Decl::Field(Some(p))),
                Err(_) => err(line, format!("bad characteristic `{p}`")),
            },
            _ => err(line, "expected `field Q` or `field F <p>`"),
        },
        "ring" => {
            let Some((lhs, rhs)) = text["ring".len()..].split_once('=') else { return err(line, "expected `=`") };
            let name = lhs.trim();
            if !ident(name) {
                return err(line, format!("bad ring name `{name}`"));
            }
            let rhs = strip(rhs);
            let Some(body) = rhs.strip_prefix("poly") else { return err(line, "expected `poly[...]`") };
            let Some(close) = body.find(']') else { return err(line, "unclosed variable list") };
            let vars = parse_list(&body[..=close], line)?;
            if vars.is_empty() || !vars.iter().all(|v| ident(v)) {
                return err(line, "bad variable list");
            }
            let ideal = match body[close + 1..].strip_prefix('/') {
                Some(q) => parse_list(q, line)?,
                None if body[close + 1..].is_empty() => Vec::new(),
                None => return err(line, format!("unexpected `{}`", &body[close + 1..])),
            };
            Ok(Decl::Ring { name: name.into(), vars, ideal })
        }
        "module" => {
            let Some((lhs, rhs)) = text["module".len()..].split_once('=') else { return err(line, "expected `=`") };
            let lw: Vec<&str> = lhs.split_whitespace().collect();
            let [name, "over", ring] = lw[..] else { return err(line, "expected `module <name> over <ring> = ...`") };
            if !ident(name) {
                return err(line, format!("bad module name `{name}`"));
            }
            let rhs = rhs.trim();
            let Some(body) = rhs.strip_prefix("coker") else { return err(line, "expected `coker [...]`") };
            let (mat, degrees) = match body.find("degrees") {
                Some(i) => {
                    let ds = parse_list(&body[i + "degrees".len()..], line)?;
                    let ds: Result<Vec<i32>, _> = ds.iter().map(|d| d.parse::<i32>()).collect();
                    match ds {
                        Ok(ds) => (&body[..i], Some(ds)),
                        Err(_) => return err(line, "degrees must be integers"),
                    }
                }
                None => (body, None),
            };
            let rows = parse_rows(mat, line)?;
            Ok(Decl::Module { name: name.into(), ring: ring.into(), rows, degrees })
        }
        "map" => {
            let Some((lhs, rhs)) = text["map".len()..].split_once('=') else { return err(line, "expected `=`") };
            let lhs = lhs.replace("->", " -> ").replace(':', " : ");
            let lw: Vec<&str> = lhs.split_whitespace().collect();
            let [name, ":", source, "->", target] = lw[..] else { return err(line, "expected `map <f> : <M> -> <N> = [...]`") };
            if !ident(name) {
                return err(line, format!("bad map name `{name}`"));
            }
            let rows = parse_rows(rhs, line)?;
            Ok(Decl::Map { name: name.into(), source: source.into(), target: target.into(), rows })
        }
        "check" => {
            if words.len() < 2 {
                return err(line, "expected `check <command> <args>`");
            }
            Ok(Decl::Check { command: words[1].into(), args: words[2..].iter().map(|s| s.to_string()).collect() })
        }
        other => err(line, format!("unknown keyword `{other}`")),
    }
}

/// Parses and checks a scenario: identifiers declared before use, homogeneous
/// matrices, well-defined maps and ideals inside the square of the maximal ideal.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut sc = Scenario::default();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        sc.items.push(parse_line(body, i + 1)?);
        sc.lines.push(i + 1);
    }
    build_env(&sc)?;
    Ok(sc)
}

fn matrix(ring: &Ring, rows: &[Vec<String>], ncols: usize, line: usize) -> Result<Matrix, ScenarioError> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::with_capacity(row.len());
        for e in row {
            match ring.parse_poly(e) {
                Ok(p) => r.push(p),
                Err(e) => return err(line, e.to_string()),
            }
        }
        out.push(r);
    }
    if out.is_empty() {
        return Ok(Matrix::zero(0, ncols));
    }
    Ok(Matrix::from_rows(&out, ncols))
}

fn lookup<'a, T>(map: &'a HashMap<String, T>, name: &str, what: &str, line: usize) -> Result<&'a T, ScenarioError> {
    match map.get(name) {
        Some(v) => Ok(v),
        None => err(line, format!("{what} `{name}` is not declared before use")),
    }
}

pub fn build_env(sc: &Scenario) -> Result<Env, ScenarioError> {
    let mut env = Env::default();
    let mut field: Option<Field> = None;
    for (item, &line) in sc.items.iter().zip(&sc.lines) {
        let fresh = |env: &Env, name: &str| -> Result<(), ScenarioError> {
            if env.is_declared(name) {
                return err(line, format!("`{name}` is declared twice"));
            }
            Ok(())
        };
        match item {
            Decl::Field(p) => {
                field = Some(match p {
                    None => Field::rationals(),
                    Some(p) => Field::prime(*p).or_else(|e| err(line, e.to_string()))?,
                })
            }
            Decl::Ring { name, vars, ideal } => {
                fresh(&env, name)?;
                let Some(f) = field else { return err(line, "no field declared") };
                let vs: Vec<&str> = vars.iter().map(String::as_str).collect();
                let is: Vec<&str> = ideal.iter().map(String::as_str).collect();
                let ring = QuotientRing::parse(f, &vs, &is).or_else(|e| err(line, e.to_string()))?;
                env.rings.insert(name.clone(), ring);
                env.specs.insert(name.clone(), RingSpec { field: f, vars: vars.clone(), ideal: ideal.clone() });
                env.ring_order.push(name.clone());
            }
            Decl::Module { name, ring, rows, degrees } => {
                fresh(&env, name)?;
                let r = lookup(&env.rings, ring, "ring", line)?.clone();
                let ncols = rows.first().map_or(0, |r| r.len());
                let m = matrix(&r, rows, ncols, line)?;
                let gens = degrees.clone().unwrap_or_else(|| vec![0; rows.len()]);
                if gens.len() != rows.len() {
                    return err(line, format!("{} degrees for {} generators", gens.len(), rows.len()));
                }
                let module = PresentedModule::new(&r, gens, m).or_else(|e| err(line, e.to_string()))?;
                env.modules.insert(name.clone(), module);
            }
            Decl::Map { name, source, target, rows } => {
                fresh(&env, name)?;
                let s = lookup(&env.modules, source, "module", line)?.clone();
                let t = lookup(&env.modules, target, "module", line)?.clone();
                if !std::sync::Arc::ptr_eq(s.ring(), t.ring()) {
                    return err(line, "source and target live over different rings");
                }
                let m = matrix(s.ring(), rows, s.rank(), line)?;
                let f = Morphism::new(&s, &t, m).or_else(|e| err(line, e.to_string()))?;
                env.maps.insert(name.clone(), f);
            }
            Decl::Check { command, args } => {
                let Some((_, shape)) = COMMANDS.iter().find(|(c, _)| c == command) else {
                    return err(line, format!("unknown command `{command}`"));
                };
                let shape: Vec<&str> = shape.split_whitespace().collect();
                let required = shape.iter().filter(|s| !s.starts_with('[')).count();
                if args.len() < required || args.len() > shape.len() {
                    return err(line, format!("`{command}` takes {}", shape.join(" ")));
                }
                for (a, s) in args.iter().zip(&shape) {
                    let kind = s.trim_matches(|c| c == '[' || c == ']');
                    let ok = match kind {
                        "M" => env.modules.contains_key(a),
                        "f" => env.maps.contains_key(a),
                        "R" => env.rings.contains_key(a),
                        "<theorem>" => true,
                        _ => a.parse::<usize>().is_ok(),
                    };
                    if !ok {
                        return if ident(a) && !env.is_declared(a) {
                            err(line, format!("`{a}` is not declared before use"))
                        } else {
                            err(line, format!("bad argument `{a}` for `{command}` (expected {kind})"))
                        };
                    }
                }
            }
        }
    }
    Ok(env)
}

fn rows_text(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", inner.join(", "))
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Field(None) => write!(f, "field Q"),
            Decl::Field(Some(p)) => write!(f, "field F {p}"),
            Decl::Ring { name, vars, ideal } => {
                write!(f, "ring {name} = poly[{}]", vars.join(", "))?;
                if !ideal.is_empty() {
                    write!(f, " / ({})", ideal.join(", "))?;
                }
                Ok(())
            }
            Decl::Module { name, ring, rows, degrees } => {
                write!(f, "module {name} over {ring} = coker {}", rows_text(rows))?;
                if let Some(d) = degrees {
                    let d: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                    write!(f, " degrees [{}]", d.join(", "))?;
                }
                Ok(())
            }
            Decl::Map { name, source, target, rows } => {
                write!(f, "map {name} : {source} -> {target} = {}", rows_text(rows))
            }
            Decl::Check { command, args } => {
                write!(f, "check {command}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}

/// Renders a polynomial in the variable names of its ring.
pub fn poly_text(ring: &Ring, p: &Poly) -> String {
    p.fmt_with(ring.names())
}

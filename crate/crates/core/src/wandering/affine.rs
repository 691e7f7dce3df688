//! Integer intervals, affine index maps, and their text forms.

use std::collections::BTreeMap;

use super::{EdgeRule, Result, State, StateClass, WanderingError};

/// A possibly unbounded integer interval.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Interval {
    pub const ALL: Interval = Interval { lo: None, hi: None };

    pub fn at_least(lo: i64) -> Self {
        Self { lo: Some(lo), hi: None }
    }

    pub fn between(lo: i64, hi: i64) -> Self {
        Self {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo.is_none_or(|lo| v >= lo) && self.hi.is_none_or(|hi| v <= hi)
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = match (self.lo, other.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Interval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(a), Some(b)) if a > b)
    }

    /// Values `p` with `coef * p + offset` inside `self`.
    pub fn preimage(&self, coef: i64, offset: i64) -> Interval {
        let lo = self.lo.map(|l| l - offset);
        let hi = self.hi.map(|h| h - offset);
        if coef > 0 {
            Interval {
                lo: lo.map(|l| div_ceil(l, coef)),
                hi: hi.map(|h| div_floor(h, coef)),
            }
        } else {
            Interval {
                lo: hi.map(|h| div_ceil(h, coef)),
                hi: lo.map(|l| div_floor(l, coef)),
            }
        }
    }
}

pub(crate) fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub(crate) fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

/// One index coordinate `coef * p + offset`, or the constant `offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineCoord {
    pub coef: i64,
    pub param: Option<usize>,
    pub offset: i64,
}

impl AffineCoord {
    pub fn constant(k: i64) -> Self {
        Self {
            coef: 0,
            param: None,
            offset: k,
        }
    }

    pub fn param(param: usize, coef: i64, offset: i64) -> Self {
        Self {
            coef,
            param: Some(param),
            offset,
        }
    }

    pub fn eval(&self, p: &[i64]) -> i64 {
        match self.param {
            Some(j) => self.coef * p[j] + self.offset,
            None => self.offset,
        }
    }

    pub fn render(&self, params: &[String]) -> String {
        match self.param {
            None => self.offset.to_string(),
            Some(j) => {
                let mut terms = BTreeMap::new();
                terms.insert(params[j].clone(), self.coef);
                render_linear(&terms, self.offset)
            }
        }
    }
}

/// An affine function `Σ coeffs[i] * x_i + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl AffineForm {
    pub fn new(coeffs: Vec<i64>, constant: i64) -> Self {
        Self { coeffs, constant }
    }

    pub fn eval(&self, x: &[i64]) -> i64 {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<i64>() + self.constant
    }

    pub fn render(&self, vars: &[String]) -> String {
        let terms = vars.iter().cloned().zip(self.coeffs.iter().copied()).collect();
        render_linear(&terms, self.constant)
    }
}

fn render_linear(terms: &BTreeMap<String, i64>, constant: i64) -> String {
    let mut out = String::new();
    for (v, &c) in terms.iter().filter(|(_, &c)| c != 0) {
        let mag = c.unsigned_abs();
        let body = if mag == 1 { v.clone() } else { format!("{mag}*{v}") };
        match (out.is_empty(), c < 0) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    match (out.is_empty(), constant) {
        (true, k) => out = k.to_string(),
        (false, 0) => {}
        (false, k) if k > 0 => out.push_str(&format!(" + {k}")),
        (false, k) => out.push_str(&format!(" - {}", k.unsigned_abs())),
    }
    out
}

/// `N >= 0, N <= 5` for each bounded coordinate.
pub(crate) fn render_box(names: &[String], intervals: &[Interval]) -> String {
    let mut parts = Vec::new();
    for (n, b) in names.iter().zip(intervals) {
        match (b.lo, b.hi) {
            (Some(l), Some(h)) if l == h => parts.push(format!("{n} == {l}")),
            (lo, hi) => {
                if let Some(l) = lo {
                    parts.push(format!("{n} >= {l}"));
                }
                if let Some(h) = hi {
                    parts.push(format!("{n} <= {h}"));
                }
            }
        }
    }
    parts.join(", ")
}

fn perr(msg: impl Into<String>) -> WanderingError {
    WanderingError::Parse(msg.into())
}

#[derive(Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| perr(format!("number too large: {s}")))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            out.push(match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                _ => return Err(perr(format!("unexpected `{c}` in `{text}`"))),
            });
            i += 1;
        }
    }
    Ok(out)
}

/// Parses `3*N + 1`, `2a - b + 4`, `-N`, `7` into variable coefficients and
/// a constant.
pub(crate) fn parse_linear(text: &str) -> Result<(BTreeMap<String, i64>, i64)> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(perr("empty expression"));
    }
    let mut terms: BTreeMap<String, i64> = BTreeMap::new();
    let mut constant = 0i64;
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut sign = 1i64;
        match toks[i] {
            Tok::Plus if !first => i += 1,
            Tok::Minus => {
                sign = -1;
                i += 1;
            }
            _ if first => {}
            _ => return Err(perr(format!("expected + or - in `{text}`"))),
        }
        first = false;
        let (coef, var) = match toks.get(i) {
            Some(Tok::Num(k)) => {
                i += 1;
                if toks.get(i) == Some(&Tok::Star) {
                    i += 1;
                }
                match toks.get(i) {
                    Some(Tok::Ident(v)) => {
                        i += 1;
                        (*k, Some(v.clone()))
                    }
                    _ => (*k, None),
                }
            }
            Some(Tok::Ident(v)) => {
                i += 1;
                (1, Some(v.clone()))
            }
            _ => return Err(perr(format!("expected a term in `{text}`"))),
        };
        match var {
            Some(v) => *terms.entry(v).or_insert(0) += sign * coef,
            None => constant += sign * coef,
        }
    }
    terms.retain(|_, c| *c != 0);
    Ok((terms, constant))
}

/// Parses `N >= 0`, `I <= 2`, `J == 1`, `K > 0`, `K < 4`.
pub(crate) fn parse_condition(text: &str) -> Result<(String, Interval)> {
    for op in [">=", "<=", "==", ">", "<"] {
        if let Some((l, r)) = text.split_once(op) {
            let var = l.trim();
            if var.is_empty() || !var.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(perr(format!("bad condition `{text}`")));
            }
            let (terms, k) = parse_linear(r)?;
            if !terms.is_empty() {
                return Err(perr(format!("condition bound must be a constant: `{text}`")));
            }
            let iv = match op {
                ">=" => Interval { lo: Some(k), hi: None },
                "<=" => Interval { lo: None, hi: Some(k) },
                "==" => Interval::between(k, k),
                ">" => Interval { lo: Some(k + 1), hi: None },
                _ => Interval { lo: None, hi: Some(k - 1) },
            };
            return Ok((var.to_string(), iv));
        }
    }
    Err(perr(format!("bad condition `{text}`")))
}

fn split_when(text: &str) -> (&str, Option<&str>) {
    match text.split_once(" when ") {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (text.trim(), None),
    }
}

fn apply_conditions(conds: Option<&str>, names: &[String]) -> Result<Vec<Interval>> {
    let mut out = vec![Interval::ALL; names.len()];
    if let Some(c) = conds {
        for part in c.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (var, iv) = parse_condition(part)?;
            let j = names
                .iter()
                .position(|n| *n == var)
                .ok_or_else(|| perr(format!("unknown variable `{var}` in `{part}`")))?;
            out[j] = out[j].intersect(&iv);
        }
    }
    Ok(out)
}

/// `Name(a, b)` into the name and its argument strings.
fn split_call(text: &str) -> Result<(String, Vec<String>)> {
    let text = text.trim();
    let (name, rest) = text
        .split_once('(')
        .ok_or_else(|| perr(format!("expected Name(...) in `{text}`")))?;
    let args = rest
        .strip_suffix(')')
        .ok_or_else(|| perr(format!("missing `)` in `{text}`")))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(perr(format!("bad class name in `{text}`")));
    }
    let args = if args.trim().is_empty() {
        Vec::new()
    } else {
        args.split(',').map(|s| s.trim().to_string()).collect()
    };
    Ok((name.to_string(), args))
}

/// `Q(N) when N >= 0`.
pub(crate) fn parse_class(text: &str) -> Result<StateClass> {
    let (head, conds) = split_when(text);
    let (name, vars) = split_call(head)?;
    for v in &vars {
        if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(perr(format!("bad index variable `{v}`")));
        }
    }
    let domain = apply_conditions(conds, &vars)?;
    Ok(StateClass { name, vars, domain })
}

/// `Q(3)` against known classes.
pub(crate) fn parse_state(text: &str, classes: &[StateClass]) -> Result<State> {
    let (name, args) = split_call(text)?;
    let class = classes
        .iter()
        .position(|c| c.name == name)
        .ok_or(WanderingError::UnknownClass(name))?;
    let index = args
        .iter()
        .map(|a| match parse_linear(a)? {
            (t, k) if t.is_empty() => Ok(k),
            _ => Err(perr(format!("state index must be a constant: `{a}`"))),
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(State::new(class, index))
}

/// `Q(3*N + 1) -> Q(N) when N >= 0`.
pub(crate) fn parse_rule(text: &str, classes: &[StateClass]) -> Result<EdgeRule> {
    let (head, conds) = split_when(text);
    let (src, dst) = head
        .split_once("->")
        .ok_or_else(|| perr(format!("expected `->` in `{text}`")))?;
    let mut params: Vec<String> = Vec::new();
    let mut side = |s: &str| -> Result<(usize, Vec<AffineCoord>)> {
        let (name, args) = split_call(s)?;
        let class = classes
            .iter()
            .position(|c| c.name == name)
            .ok_or(WanderingError::UnknownClass(name))?;
        let mut coords = Vec::new();
        for a in &args {
            let (terms, k) = parse_linear(a)?;
            coords.push(match terms.len() {
                0 => AffineCoord::constant(k),
                1 => {
                    let (v, c) = terms.into_iter().next().expect("one term");
                    let j = match params.iter().position(|p| *p == v) {
                        Some(j) => j,
                        None => {
                            params.push(v);
                            params.len() - 1
                        }
                    };
                    AffineCoord::param(j, c, k)
                }
                _ => {
                    return Err(WanderingError::BadRule {
                        rule: text.to_string(),
                        reason: format!("index `{a}` uses more than one parameter"),
                    })
                }
            });
        }
        Ok((class, coords))
    };
    let (source, source_index) = side(src)?;
    let (target, target_index) = side(dst)?;
    let guard = apply_conditions(conds, &params)?;
    Ok(EdgeRule {
        source,
        target,
        params,
        source_index,
        target_index,
        guard,
    })
}

/// `Q: N` or `P: A - B` into a class and a form over its index variables.
pub(crate) fn parse_rank_entry(text: &str, classes: &[StateClass]) -> Result<(usize, AffineForm)> {
    let (name, expr) = text
        .split_once(':')
        .ok_or_else(|| perr(format!("expected `Class: expr` in `{text}`")))?;
    let name = name.trim();
    let class = classes
        .iter()
        .position(|c| c.name == name)
        .ok_or_else(|| WanderingError::UnknownClass(name.to_string()))?;
    let (terms, k) = parse_linear(expr)?;
    let vars = &classes[class].vars;
    let mut coeffs = vec![0; vars.len()];
    for (v, c) in terms {
        let j = vars
            .iter()
            .position(|x| *x == v)
            .ok_or_else(|| perr(format!("unknown variable `{v}` in rank `{text}`")))?;
        coeffs[j] = c;
    }
    Ok((class, AffineForm::new(coeffs, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_round_trip() {
        for (text, canon) in [
            ("3*N + 1", "3*N + 1"),
            ("3N+1", "3*N + 1"),
            ("-N", "-N"),
            ("a - b", "a - b"),
            ("2*a + 2*b - 7", "2*a + 2*b - 7"),
            ("5", "5"),
            ("-5", "-5"),
            ("N - N + 2", "2"),
        ] {
            let (t, k) = parse_linear(text).unwrap();
            assert_eq!(render_linear(&t, k), canon, "{text}");
        }
        assert!(parse_linear("3 +").is_err());
        assert!(parse_linear("N N").is_err());
        assert!(parse_linear("").is_err());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(div_floor(-7, 3), -3);
        assert_eq!(div_floor(7, 3), 2);
        assert_eq!(div_floor(7, -3), -3);
        assert_eq!(div_ceil(-7, 3), -2);
        assert_eq!(div_ceil(7, 3), 3);
    }

    #[test]
    fn preimages() {
        let iv = Interval::between(0, 10);
        assert_eq!(iv.preimage(3, 1), Interval::between(0, 3));
        assert_eq!(iv.preimage(-2, 0), Interval::between(-5, 0));
        assert_eq!(Interval::at_least(0).preimage(3, 2), Interval::at_least(-0));
        for p in -20..20 {
            for (c, o) in [(3, 1), (-2, 5), (1, -4)] {
                assert_eq!(iv.preimage(c, o).contains(p), iv.contains(c * p + o));
            }
        }
    }

    #[test]
    fn conditions() {
        assert_eq!(parse_condition("N >= 0").unwrap(), ("N".into(), Interval::at_least(0)));
        assert_eq!(parse_condition("I < 3").unwrap().1, Interval { lo: None, hi: Some(2) });
        assert_eq!(parse_condition("J == -1").unwrap().1, Interval::between(-1, -1));
        assert!(parse_condition("2 >= N").is_err());
    }
}

//! Text form of laws.
//!
//! ```text
//! law      := base ("|" modifier)*
//! base     := family ":" key "=" value ("," key "=" value)*
//!           | "mix:q=" weight ("," weight)* ("," "(" law ")")+
//! modifier := "std" | "affine:a=" value ",b=" value
//! ```
//!
//! A mixture with `k` components lists `k - 1` weights; the last component
//! takes the remaining mass.

use std::fmt;

use thiserror::Error;

use super::{ContinuousFamily, DiscreteKind, Law};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{token}`: {reason}")]
pub struct ParseError {
    /// The offending piece of the input.
    pub token: String,
    pub reason: String,
}

fn fail<T>(token: &str, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        token: token.to_string(),
        reason: reason.into(),
    })
}

pub fn parse_law(input: &str) -> Result<Law, ParseError> {
    let input = input.trim();
    let pieces = split_top_level(input, '|')?;
    let mut law = parse_base(pieces[0].trim())?;
    for modifier in &pieces[1..] {
        law = apply_modifier(law, modifier.trim())?;
    }
    Ok(law)
}

/// Splits on `sep` outside parentheses.
fn split_top_level(input: &str, sep: char) -> Result<Vec<&str>, ParseError> {
    let mut depth = 0usize;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in input.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = match depth.checked_sub(1) {
                    Some(d) => d,
                    None => return fail(&input[..=i], "unbalanced `)`"),
                }
            }
            c if c == sep && depth == 0 => {
                out.push(&input[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return fail(input, "unbalanced `(`");
    }
    out.push(&input[start..]);
    Ok(out)
}

struct Params<'a> {
    token: &'a str,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn parse(token: &'a str, body: &'a str) -> Result<Self, ParseError> {
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for item in body.split(',') {
            let Some((k, v)) = item.split_once('=') else {
                return fail(item, "expected key=value");
            };
            let (k, v) = (k.trim(), v.trim());
            if pairs.iter().any(|(seen, _)| *seen == k) {
                return fail(item, format!("duplicate key `{k}`"));
            }
            pairs.push((k, v));
        }
        Ok(Params { token, pairs })
    }

    /// Checks that exactly `keys` are present.
    fn expect(&self, keys: &[&str]) -> Result<(), ParseError> {
        for (k, _) in &self.pairs {
            if !keys.contains(k) {
                return fail(k, format!("unknown key; expected {}", keys.join(", ")));
            }
        }
        for k in keys {
            if !self.pairs.iter().any(|(seen, _)| seen == k) {
                return fail(self.token, format!("missing key `{k}`"));
            }
        }
        Ok(())
    }

    fn raw(&self, key: &str) -> &'a str {
        self.pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .unwrap_or("")
    }

    fn real(&self, key: &str) -> Result<f64, ParseError> {
        let raw = self.raw(key);
        match raw.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => fail(raw, format!("`{key}` must be a finite number")),
        }
    }

    fn count(&self, key: &str) -> Result<u64, ParseError> {
        let raw = self.raw(key);
        raw.parse::<u64>()
            .or_else(|_| fail(raw, format!("`{key}` must be a nonnegative integer")))
    }
}

fn parse_base(token: &str) -> Result<Law, ParseError> {
    let Some((family, body)) = token.split_once(':') else {
        return fail(token, "expected family:key=value,...");
    };
    let family = family.trim();
    if family == "mix" {
        return parse_mixture(token, body);
    }
    let params = Params::parse(token, body)?;
    let built = match family {
        "gaussian" | "uniform" | "exponential" | "laplace" | "cauchy" => {
            params.expect(&["a"])?;
            let a = params.real("a")?;
            match family {
                "gaussian" => Law::gaussian(a),
                "uniform" => Law::uniform(a),
                "exponential" => Law::exponential(a),
                "laplace" => Law::laplace(a),
                _ => Law::cauchy(a),
            }
        }
        "gamma" | "student" => {
            params.expect(&["lam", "a"])?;
            let (lam, a) = (params.real("lam")?, params.real("a")?);
            if family == "gamma" {
                Law::gamma(lam, a)
            } else {
                Law::student(lam, a)
            }
        }
        "binomial" => {
            params.expect(&["n", "p"])?;
            Law::binomial(params.count("n")?, params.real("p")?)
        }
        "poisson" => {
            params.expect(&["lam"])?;
            Law::poisson(params.real("lam")?)
        }
        "duniform" => {
            params.expect(&["n", "a"])?;
            Law::discrete_uniform(params.count("n")?, params.real("a")?)
        }
        other => return fail(other, "unknown family"),
    };
    built.or_else(|e| fail(token, e.to_string()))
}

fn parse_mixture(token: &str, body: &str) -> Result<Law, ParseError> {
    let items = split_top_level(body, ',')?;
    let mut weights = Vec::new();
    let mut laws = Vec::new();
    for (i, item) in items.iter().map(|s| s.trim()).enumerate() {
        if let Some(inner) = item.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            laws.push(parse_law(inner)?);
            continue;
        }
        if !laws.is_empty() {
            return fail(item, "weights must come before components");
        }
        let raw = if i == 0 {
            match item.strip_prefix("q=") {
                Some(v) => v.trim(),
                None => return fail(item, "mixture starts with q=weight"),
            }
        } else {
            item
        };
        match raw.parse::<f64>() {
            Ok(w) if w > 0.0 && w < 1.0 => weights.push(w),
            _ => return fail(raw, "mixture weight must lie in (0, 1)"),
        }
    }
    if weights.is_empty() || laws.len() != weights.len() + 1 {
        return fail(
            token,
            format!(
                "{} weights need {} components, found {}",
                weights.len(),
                weights.len() + 1,
                laws.len()
            ),
        );
    }
    let last = 1.0 - weights.iter().sum::<f64>();
    weights.push(last);
    Law::mixture(weights.into_iter().zip(laws).collect()).or_else(|e| fail(token, e.to_string()))
}

fn apply_modifier(law: Law, token: &str) -> Result<Law, ParseError> {
    if token == "std" {
        return law.standardized().or_else(|e| fail(token, e.to_string()));
    }
    let Some(body) = token.strip_prefix("affine:") else {
        return fail(token, "unknown modifier; expected std or affine:a=..,b=..");
    };
    let params = Params::parse(token, body)?;
    params.expect(&["a", "b"])?;
    law.affine(params.real("a")?, params.real("b")?)
        .or_else(|e| fail(token, e.to_string()))
}

impl fmt::Display for ContinuousFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ContinuousFamily::Gamma { shape, scale } => write!(f, "gamma:lam={shape},a={scale}"),
            ContinuousFamily::Student { dof, scale } => write!(f, "student:lam={dof},a={scale}"),
            other => write!(f, "{}:a={}", other.name(), other.scale()),
        }
    }
}

/// Writes the law in the grammar accepted by [`parse_law`]. Explicit atom
/// lists have no text form and print as a bracketed list.
impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Continuous(family) => write!(f, "{family}"),
            Law::Discrete(d) => match d.kind() {
                DiscreteKind::Binomial { trials, prob } => {
                    write!(f, "binomial:n={trials},p={prob}")
                }
                DiscreteKind::Poisson { rate, .. } => write!(f, "poisson:lam={rate}"),
                DiscreteKind::DiscreteUniform { points, width } => {
                    write!(f, "duniform:n={points},a={width}")
                }
                DiscreteKind::Explicit => {
                    let atoms: Vec<String> = d
                        .support()
                        .iter()
                        .zip(d.masses())
                        .map(|(x, p)| format!("{x}:{p}"))
                        .collect();
                    write!(f, "[{}]", atoms.join(" "))
                }
            },
            Law::Affine(a) => write!(f, "{}|affine:a={},b={}", a.base(), a.scale(), a.shift()),
            Law::Mixture(m) => {
                let parts = m.components();
                write!(f, "mix:q=")?;
                for (i, (w, _)) in parts[..parts.len() - 1].iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{w}")?;
                }
                for (_, law) in parts {
                    write!(f, ",({law})")?;
                }
                Ok(())
            }
        }
    }
}

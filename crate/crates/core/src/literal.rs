//! Text literals for Γ elements, Novikov series and QH elements.
//!
//! The grammar is the rendering grammar, so every rendered value parses
//! back to itself:
//!
//! ```text
//! gamma   := "<" [int ("," int)*] ">"
//! series  := ("0" | gamma (" + " gamma)*) [" @E=" energy]
//! element := ("0" | term (" + " term)*) [" @E=" energy]
//! term    := class ["(x)"] [gamma]        (a missing gamma means <0,...,0>)
//! ```

use std::sync::Arc;

use crate::gamma::{GammaElement, GammaGroup};
use crate::novikov::NovikovSeries;
use crate::num::Energy;
use crate::quantum::{QhElement, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{input}`: {message}")]
pub struct LiteralError {
    pub input: String,
    pub message: String,
}

fn fail<T>(input: &str, message: impl Into<String>) -> Result<T, LiteralError> {
    Err(LiteralError {
        input: input.to_string(),
        message: message.into(),
    })
}

/// Splits off a trailing `@E=...`.
fn split_cutoff(input: &str) -> Result<(&str, Energy), LiteralError> {
    match input.split_once('@') {
        None => Ok((input.trim(), Energy::Infinite)),
        Some((body, tail)) => {
            let Some(value) = tail.trim().strip_prefix("E=") else {
                return fail(input, "expected `@E=<energy>`");
            };
            match value.trim().parse::<Energy>() {
                Ok(e) => Ok((body.trim(), e)),
                Err(_) => fail(input, format!("bad energy `{}`", value.trim())),
            }
        }
    }
}

fn parse_coords(input: &str, text: &str) -> Result<Vec<i64>, LiteralError> {
    let inner = text.trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .or_else(|_| fail(input, format!("bad coordinate `{}`", c.trim())))
        })
        .collect()
}

/// Parses `<1,-1>`; the brackets may be omitted.
pub fn parse_gamma(group: &GammaGroup, input: &str) -> Result<GammaElement, LiteralError> {
    let t = input.trim();
    let inner = match t.strip_prefix('<') {
        Some(rest) => match rest.strip_suffix('>') {
            Some(inner) => inner,
            None => return fail(input, "missing `>`"),
        },
        None => t,
    };
    let coords = parse_coords(input, inner)?;
    group.element(coords).or_else(|e| fail(input, e.to_string()))
}

pub fn parse_series(group: &Arc<GammaGroup>, input: &str) -> Result<NovikovSeries, LiteralError> {
    let (body, cutoff) = split_cutoff(input)?;
    let mut gammas = Vec::new();
    if body != "0" {
        for piece in body.split('+') {
            gammas.push(parse_gamma(group, piece)?);
        }
    }
    check_below(input, group, gammas.iter(), &cutoff)?;
    Ok(NovikovSeries::from_gammas(group.clone(), gammas, cutoff))
}

fn check_below<'a>(
    input: &str,
    group: &GammaGroup,
    gammas: impl Iterator<Item = &'a GammaElement>,
    cutoff: &Energy,
) -> Result<(), LiteralError> {
    for g in gammas {
        if !cutoff.admits(&group.omega(g)) {
            return fail(input, format!("term {g} lies above the cutoff {cutoff}"));
        }
    }
    Ok(())
}

pub fn parse_element(spec: &RingSpec, input: &str) -> Result<QhElement, LiteralError> {
    let group = spec.gamma();
    let (body, cutoff) = split_cutoff(input)?;
    let mut terms = Vec::new();
    if body.is_empty() {
        return fail(input, "empty element");
    }
    if body != "0" {
        for piece in body.split('+') {
            let piece = piece.trim();
            let (name, gamma) = match piece.find('<') {
                Some(i) => (&piece[..i], parse_gamma(group, &piece[i..])?),
                None => (piece, group.zero()),
            };
            let name = name.strip_suffix("(x)").unwrap_or(name).trim();
            let Some(class) = spec.basis().index_of(name) else {
                return fail(input, format!("unknown class `{name}`"));
            };
            terms.push((class, gamma));
        }
    }
    check_below(input, group, terms.iter().map(|(_, g)| g), &cutoff)?;
    Ok(QhElement::from_terms(group.clone(), terms, cutoff))
}

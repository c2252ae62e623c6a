use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{content_lines, tokens};
use crate::error::{Error, Result};
use crate::model::{Constraint, CspInstance, Mode, Relation};
use crate::poly::{Monomial, MultilinearPoly};
use crate::ring::{RingSpec, Scalar};

struct Header {
    ring: RingSpec,
    n: usize,
    d: usize,
    mode: Mode,
}

fn parse_header(ln: usize, line: &str) -> Result<Header> {
    let t = tokens(line);
    let usage = || Error::parse(ln, 1, "expected `pcsp <Q | Zmod m> <n> <d> <root|nonroot|mixed>`");
    if t.first().map(|x| x.1) != Some("pcsp") {
        return Err(usage());
    }
    let (ring, rest) = match t.get(1).map(|x| x.1) {
        Some("Q") => (RingSpec::rationals(), &t[2..]),
        Some("Zmod") => {
            let &(col, m) = t.get(2).ok_or_else(usage)?;
            let m: u64 = m
                .parse()
                .map_err(|_| Error::parse(ln, col, format!("`{m}` is not a modulus")))?;
            let ring = RingSpec::integers_mod(m).map_err(|e| Error::parse(ln, col, e.to_string()))?;
            (ring, &t[3..])
        }
        _ => return Err(usage()),
    };
    if rest.len() != 3 {
        return Err(usage());
    }
    let count = |(col, tok): (usize, &str)| -> Result<usize> {
        tok.parse()
            .map_err(|_| Error::parse(ln, col, format!("`{tok}` is not a count")))
    };
    let mode = match rest[2].1 {
        "root" => Mode::AllRoot,
        "nonroot" => Mode::AllNonRoot,
        "mixed" => Mode::Mixed,
        other => return Err(Error::parse(ln, rest[2].0, format!("unknown mode `{other}`"))),
    };
    Ok(Header {
        ring,
        n: count(rest[0])?,
        d: count(rest[1])?,
        mode,
    })
}

fn parse_coefficient(ring: &RingSpec, ln: usize, col: usize, tok: &str) -> Result<Scalar> {
    let bad = || Error::parse(ln, col, format!("`{tok}` is not a coefficient"));
    match tok.split_once('/') {
        None => Ok(ring.from_bigint(&tok.parse::<BigInt>().map_err(|_| bad())?)),
        Some((num, den)) => {
            if ring.modulus().is_some() {
                return Err(Error::parse(ln, col, "fractions are only allowed over Q"));
            }
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::parse(ln, col, "zero denominator"));
            }
            Ok(Scalar::Rational(BigRational::new(num, den)))
        }
    }
}

fn parse_monomial(h: &Header, ln: usize, col: usize, tok: &str) -> Result<Monomial> {
    let mut vars = BTreeSet::new();
    for part in tok.split('*') {
        let idx = part
            .strip_prefix('v')
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| Error::parse(ln, col, format!("`{part}` is not a variable")))?;
        if idx == 0 || idx > h.n {
            return Err(Error::parse(ln, col, format!("variable v{idx} out of range 1..={}", h.n)));
        }
        if !vars.insert(idx - 1) {
            return Err(Error::parse(ln, col, format!("variable v{idx} repeated in a monomial")));
        }
    }
    Ok(Monomial::from_vars(vars))
}

fn parse_constraint(h: &Header, ln: usize, line: &str) -> Result<Constraint> {
    let lead = line.len() - line.trim_start().len();
    let trimmed = &line[lead..];
    let (tag, body, offset) = if let Some(rest) = trimmed.strip_prefix("!=") {
        (Some(Relation::NonRootNe0), rest, lead + 2)
    } else if let Some(rest) = trimmed.strip_prefix('=') {
        (Some(Relation::RootEq0), rest, lead + 1)
    } else {
        (None, trimmed, lead)
    };
    let relation = match (h.mode, tag) {
        (Mode::Mixed, None) => return Err(Error::parse(ln, 1, "mixed instances need `=` or `!=` on every line")),
        (Mode::Mixed, Some(r)) => r,
        (Mode::AllRoot, None | Some(Relation::RootEq0)) => Relation::RootEq0,
        (Mode::AllNonRoot, None | Some(Relation::NonRootNe0)) => Relation::NonRootNe0,
        (mode, Some(_)) => return Err(Error::parse(ln, 1, format!("relation tag contradicts the {mode} header"))),
    };
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut start = offset;
    let segments: Vec<&str> = body.split('+').collect();
    let lone_term = segments.len() == 1;
    for seg in segments {
        let toks: Vec<(usize, &str)> = tokens(seg).into_iter().map(|(c, t)| (c + start, t)).collect();
        let seg_col = start + 1;
        start += seg.len() + 1;
        let (coef, mono) = match toks.as_slice() {
            [] => return Err(Error::parse(ln, seg_col, "empty term")),
            [c] => (c, None),
            [c, m] => (c, Some(m)),
            [_, _, extra, ..] => return Err(Error::parse(ln, extra.0, format!("unexpected `{}`", extra.1))),
        };
        let value = parse_coefficient(&h.ring, ln, coef.0, coef.1)?;
        let monomial = match mono {
            Some(&(col, tok)) => parse_monomial(h, ln, col, tok)?,
            None => Monomial::one(),
        };
        if h.ring.is_zero(&value) {
            if lone_term && mono.is_none() {
                break;
            }
            return Err(Error::parse(ln, coef.0, "zero coefficient"));
        }
        if monomial.degree() > h.d {
            return Err(Error::parse(
                ln,
                coef.0,
                format!("term of degree {} above the bound {}", monomial.degree(), h.d),
            ));
        }
        if terms.iter().any(|(m, _)| *m == monomial) {
            return Err(Error::parse(ln, coef.0, "monomial repeated in a constraint"));
        }
        terms.push((monomial, value));
    }
    let poly = MultilinearPoly::from_terms(h.ring.clone(), h.n, terms)?;
    Ok(Constraint { poly, relation })
}

/// Parses a `.pcsp` file. The first non-comment line is the header.
pub fn parse_pcsp(text: &str) -> Result<CspInstance> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return Err(Error::parse(1, 1, "missing `pcsp` header"));
    };
    let h = parse_header(hl, header)?;
    let constraints = lines
        .map(|(ln, line)| parse_constraint(&h, ln, line))
        .collect::<Result<Vec<_>>>()?;
    CspInstance::new(h.ring, h.n, h.d, constraints, h.mode)
}

fn write_poly(out: &mut String, p: &MultilinearPoly) {
    if p.is_zero() {
        out.push('0');
        return;
    }
    for (i, (m, c)) in p.terms().iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        out.push_str(&c.to_string());
        if !m.is_constant() {
            out.push(' ');
            let vars: Vec<String> = m.vars().iter().map(|v| format!("v{}", v + 1)).collect();
            out.push_str(&vars.join("*"));
        }
    }
}

/// Canonical text: graded-lex term order, lowest variable first in each monomial.
pub fn serialize_pcsp(inst: &CspInstance) -> String {
    let mut out = format!(
        "pcsp {} {} {} {}\n",
        inst.ring(),
        inst.n_vars(),
        inst.degree_bound(),
        inst.mode()
    );
    for c in inst.constraints() {
        if inst.mode() == Mode::Mixed {
            out.push_str(match c.relation {
                Relation::RootEq0 => "= ",
                Relation::NonRootNe0 => "!= ",
            });
        }
        write_poly(&mut out, &c.poly);
        out.push('\n');
    }
    out
}

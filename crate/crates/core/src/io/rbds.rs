use super::{content_lines, tokens};
use crate::error::{Error, Result};
use crate::gen::RbdsInstance;

pub fn parse_rbds(text: &str) -> Result<RbdsInstance> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return Err(Error::parse(1, 1, "missing `rbds` header"));
    };
    let h = tokens(header);
    if h.len() != 4 || h[0].1 != "rbds" {
        return Err(Error::parse(hl, 1, "expected `rbds <mR> <mB> <k>`"));
    }
    let num = |(col, tok): (usize, &str)| -> Result<usize> {
        tok.parse()
            .map_err(|_| Error::parse(hl, col, format!("`{tok}` is not a count")))
    };
    let (m_r, m_b, k) = (num(h[1])?, num(h[2])?, num(h[3])?);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (ln, line) in lines {
        let t = tokens(line);
        if t.len() != 3 || t[0].1 != "e" {
            return Err(Error::parse(ln, t[0].0, "expected `e r<i> b<j>`"));
        }
        let r = vertex(ln, t[1], 'r', m_r)?;
        let b = vertex(ln, t[2], 'b', m_b)?;
        if edges.contains(&(r, b)) {
            return Err(Error::parse(ln, t[0].0, format!("duplicate edge r{} b{}", r + 1, b + 1)));
        }
        edges.push((r, b));
    }
    if k > m_r {
        return Err(Error::parse(hl, h[3].0, format!("budget {k} exceeds the {m_r} red vertices")));
    }
    RbdsInstance::new(m_r, m_b, k, edges)
}

fn vertex(ln: usize, (col, tok): (usize, &str), side: char, count: usize) -> Result<usize> {
    let idx = tok
        .strip_prefix(side)
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| Error::parse(ln, col, format!("expected `{side}<index>`, found `{tok}`")))?;
    if idx == 0 || idx > count {
        return Err(Error::parse(ln, col, format!("`{tok}` out of range 1..={count}")));
    }
    Ok(idx - 1)
}

pub fn serialize_rbds(inst: &RbdsInstance) -> String {
    let mut out = format!("rbds {} {} {}\n", inst.m_r(), inst.m_b(), inst.k());
    for &(r, b) in inst.edges() {
        out.push_str(&format!("e r{} b{}\n", r + 1, b + 1));
    }
    out
}

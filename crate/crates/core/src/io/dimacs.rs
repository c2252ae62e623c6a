use super::{content_lines, tokens};
use crate::encode::{CnfFormula, Literal};
use crate::error::{Error, Result};

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 1;
    for (ln, line) in content_lines(text) {
        last_line = ln;
        let toks = tokens(line);
        if toks[0].1 == "p" {
            if header.is_some() {
                return Err(Error::parse(ln, toks[0].0, "second problem line"));
            }
            if toks.len() != 4 || toks[1].1 != "cnf" {
                return Err(Error::parse(ln, toks[0].0, "expected `p cnf <vars> <clauses>`"));
            }
            let n = parse_count(ln, toks[2])?;
            let m = parse_count(ln, toks[3])?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(Error::parse(ln, toks[0].0, "clause before the problem line"));
        };
        for (col, tok) in toks {
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::parse(ln, col, format!("`{tok}` is not a literal")))?;
            if v == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if v.unsigned_abs() as usize > n {
                return Err(Error::parse(ln, col, format!("literal {v} out of range for {n} variables")));
            }
            let lit = Literal::from_dimacs(v)?;
            if current.iter().any(|l| l.var == lit.var) {
                return Err(Error::parse(ln, col, format!("variable {} repeated in a clause", lit.var + 1)));
            }
            current.push(lit);
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::parse(1, 1, "missing `p cnf` line"));
    };
    if !current.is_empty() {
        return Err(Error::parse(last_line, 1, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(Error::parse(
            last_line,
            1,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(n, clauses)
}

fn parse_count(ln: usize, (col, tok): (usize, &str)) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(ln, col, format!("`{tok}` is not a count")))
}

pub fn serialize_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.n_vars(), f.clauses().len());
    for c in f.clauses() {
        for l in c {
            out.push_str(&l.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

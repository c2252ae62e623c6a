//! Text formats: `.pcsp` polynomial constraint files, DIMACS CNF, and `.rbds`
//! red-blue graphs. Line and column numbers in errors are 1-based.

mod dimacs;
mod pcsp;
mod rbds;

pub use dimacs::{parse_dimacs, serialize_dimacs};
pub use pcsp::{parse_pcsp, serialize_pcsp};
pub use rbds::{parse_rbds, serialize_rbds};

/// Yields `(line_number, line)` for lines that are neither blank nor comments.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !(t == "c" || t.starts_with("c ") || t.starts_with("c\t"))
    })
}

/// Whitespace-separated tokens with their 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

//! Text formats for Cayley tables and strong semilattices of groups.
//!
//! A Cayley file holds optional `#` comment lines, then the order `n`, then
//! `n` rows of `n` space-separated indices. A strong-semilattice file starts
//! with the keyword `strong-semilattice` and continues with directives:
//!
//! ```text
//! strong-semilattice
//! idempotents 2
//! order 0<1
//! group 0 C1
//! group 1 c2.tbl
//! link 1 0 : 0 0
//! ```
//!
//! Group files named in `group` lines are resolved relative to a base directory.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::group::{make_cyclic, FiniteGroup};
use crate::semigroup::{make_strong_semilattice, FiniteSemigroup, LinkMap, Semigroup, Semilattice};

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_index(line: usize, token: &str, bound: usize) -> Result<usize> {
    let v: usize = token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found {token:?}")))?;
    if v >= bound {
        return Err(Error::parse(line, format!("entry {v} is out of range 0..{bound}")));
    }
    Ok(v)
}

/// Reads the raw table; returns `(n, row-major table, line of the header)`.
pub fn parse_cayley(text: &str) -> Result<(usize, Vec<usize>, usize)> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::parse(header_line, format!("expected the order, found {header:?}")))?;
    if n == 0 {
        return Err(Error::parse(header_line, "order must be positive"));
    }
    let mut table = Vec::with_capacity(n * n);
    let mut last = header_line;
    for row in 0..n {
        let (line, content) = lines
            .next()
            .ok_or_else(|| Error::parse(last + 1, format!("missing row {row}: expected {n} rows")))?;
        last = line;
        let entries: Vec<&str> = content.split_whitespace().collect();
        if entries.len() != n {
            return Err(Error::parse(line, format!("row {row} has {} entries, expected {n}", entries.len())));
        }
        for token in entries {
            table.push(parse_index(line, token, n)?);
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, "trailing content after the table"));
    }
    Ok((n, table, header_line))
}

fn axiom_error(line: usize, err: Error) -> Error {
    match err {
        Error::InvalidArgument(message) => Error::Parse { line, message },
        other => other,
    }
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let (n, table, line) = parse_cayley(text)?;
    FiniteGroup::from_table(n, table).map_err(|e| axiom_error(line, e))
}

pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup> {
    let (n, table, line) = parse_cayley(text)?;
    FiniteSemigroup::from_table(n, table).map_err(|e| axiom_error(line, e))
}

pub fn serialize_table<S: Semigroup + ?Sized>(s: &S, name: Option<&str>) -> String {
    let n = s.order();
    let mut out = String::new();
    if let Some(name) = name {
        writeln!(out, "# {name}").expect("string write");
    }
    writeln!(out, "{n}").expect("string write");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| s.mul(a, b).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).expect("string write");
    }
    out
}

pub fn serialize_group(g: &FiniteGroup) -> String {
    serialize_table(g, g.name())
}

pub fn serialize_semigroup(s: &FiniteSemigroup) -> String {
    serialize_table(s, s.name())
}

pub const STRONG_SEMILATTICE_KEYWORD: &str = "strong-semilattice";

pub fn is_strong_semilattice_text(text: &str) -> bool {
    content_lines(text).next().is_some_and(|(_, l)| l == STRONG_SEMILATTICE_KEYWORD)
}

/// `C<n>` or a Cayley file relative to `base`.
fn resolve_group(line: usize, spec: &str, base: Option<&Path>) -> Result<FiniteGroup> {
    if let Some(n) = spec.strip_prefix('C').and_then(|d| d.parse::<usize>().ok()) {
        return make_cyclic(n).map_err(|e| axiom_error(line, e));
    }
    let path = base.map_or_else(|| Path::new(spec).to_path_buf(), |b| b.join(spec));
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::parse(line, format!("cannot read group file {}: {e}", path.display())))?;
    parse_group(&text).map_err(|e| Error::parse(line, format!("in {}: {e}", path.display())))
}

pub fn parse_strong_semilattice(text: &str, base: Option<&Path>) -> Result<FiniteSemigroup> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, l)) if l == STRONG_SEMILATTICE_KEYWORD => {}
        Some((line, _)) => return Err(Error::parse(line, format!("expected {STRONG_SEMILATTICE_KEYWORD:?}"))),
        None => return Err(Error::parse(1, "empty input")),
    }
    let mut k: Option<usize> = None;
    let mut relations = Vec::new();
    let mut groups: Vec<Option<FiniteGroup>> = Vec::new();
    let mut links = LinkMap::new();
    let mut last_line = 1;
    for (line, content) in lines {
        last_line = line;
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        let count = || k.ok_or_else(|| Error::parse(line, "`idempotents` must come first"));
        match keyword {
            "idempotents" => {
                let n: usize = rest
                    .parse()
                    .map_err(|_| Error::parse(line, format!("expected a count, found {rest:?}")))?;
                if n == 0 {
                    return Err(Error::parse(line, "need at least one idempotent"));
                }
                k = Some(n);
                groups = vec![None; n];
            }
            "order" => {
                let n = count()?;
                for pair in rest.split_whitespace() {
                    let (a, b) = pair
                        .split_once('<')
                        .ok_or_else(|| Error::parse(line, format!("expected a<b, found {pair:?}")))?;
                    relations.push((parse_index(line, a, n)?, parse_index(line, b, n)?));
                }
            }
            "group" => {
                let n = count()?;
                let (idx, spec) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| Error::parse(line, "expected `group <index> <C<n>|file>`"))?;
                let idx = parse_index(line, idx, n)?;
                groups[idx] = Some(resolve_group(line, spec.trim(), base)?);
            }
            "link" => {
                let n = count()?;
                let (head, map) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line, "expected `link <upper> <lower> : <images>`"))?;
                let ends: Vec<&str> = head.split_whitespace().collect();
                let [upper, lower] = ends[..] else {
                    return Err(Error::parse(line, "expected `link <upper> <lower> : <images>`"));
                };
                let (upper, lower) = (parse_index(line, upper, n)?, parse_index(line, lower, n)?);
                let images = map
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| Error::parse(line, format!("bad image {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                links.insert((upper, lower), images);
            }
            other => return Err(Error::parse(line, format!("unknown directive {other:?}"))),
        }
    }
    let n = k.ok_or_else(|| Error::parse(last_line, "missing `idempotents`"))?;
    let e = Semilattice::from_order(n, &relations).map_err(|e| axiom_error(last_line, e))?;
    let groups = groups
        .into_iter()
        .enumerate()
        .map(|(i, g)| g.ok_or_else(|| Error::parse(last_line, format!("missing `group {i}`"))))
        .collect::<Result<Vec<_>>>()?;
    make_strong_semilattice(&e, &groups, &links).map_err(|e| axiom_error(last_line, e))
}

/// Either format, chosen by the first content line.
pub fn parse_semigroup_any(text: &str, base: Option<&Path>) -> Result<FiniteSemigroup> {
    if is_strong_semilattice_text(text) {
        parse_strong_semilattice(text, base)
    } else {
        parse_semigroup(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{small_group_corpus, make_cyclic};
    use crate::semigroup::{is_isomorphic, make_group_with_zero};

    #[test]
    fn parses_c2() {
        let g = parse_group("2\n0 1\n1 0").unwrap();
        assert_eq!(g.table(), make_cyclic(2).unwrap().table());
    }

    #[test]
    fn reports_missing_inverse() {
        let err = parse_group("# comment\n3\n0 1 2\n1 0 2\n2 2 2\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: not a group: no inverse for element 2");
    }

    #[test]
    fn round_trips_the_corpus() {
        for g in small_group_corpus(8) {
            let back = parse_group(&serialize_group(&g)).unwrap();
            assert_eq!(back.table(), g.table());
            assert_eq!(back.identity(), g.identity());
        }
    }

    #[test]
    fn malformed_tables_name_the_line() {
        let cases = [
            ("", 1),
            ("x\n", 1),
            ("2\n0 1\n", 3),
            ("2\n0 1\n1\n", 3),
            ("2\n0 1\n1 2\n", 3),
            ("2\n0 1\n1 0\n0 0\n", 4),
            ("# c\n\n2\n0 0\n0 1\n1 1\n", 6),
        ];
        for (text, line) in cases {
            match parse_semigroup(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        // left zero table rows [0,0],[1,1] is associative
        assert!(parse_semigroup("2\n0 0\n1 1\n").is_ok());
        let err = parse_semigroup("2\n1 0\n0 0\n").unwrap_err();
        assert!(err.to_string().contains("not associative"), "{err}");
    }

    #[test]
    fn strong_semilattice_block() {
        let text = "# C2 with a zero\nstrong-semilattice\nidempotents 2\norder 0<1\ngroup 0 C1\ngroup 1 C2\nlink 1 0 : 0 0\n";
        assert!(is_strong_semilattice_text(text));
        let s = parse_semigroup_any(text, None).unwrap();
        assert!(is_isomorphic(&s, &make_group_with_zero(&make_cyclic(2).unwrap())).unwrap());

        let dir = tempdir();
        std::fs::write(dir.join("c3.tbl"), serialize_group(&make_cyclic(3).unwrap())).unwrap();
        let text = "strong-semilattice\nidempotents 1\ngroup 0 c3.tbl\n";
        let s = parse_strong_semilattice(text, Some(&dir)).unwrap();
        assert_eq!(s.order(), 3);

        let bad = "strong-semilattice\nidempotents 2\norder 0<1\ngroup 0 C2\ngroup 1 C2\n";
        let err = parse_strong_semilattice(bad, None).unwrap_err();
        assert!(err.to_string().contains("missing link"), "{err}");
        let err = parse_strong_semilattice("strong-semilattice\ngroup 0 C2\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    fn tempdir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!("hypersemi-format-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }
}

//! The `msd 1` diagram text format.
//!
//! ```text
//! msd 1
//! darts 12
//! alpha 0 1
//! rot 0 2 5 7
//! family 1
//! curve name=l 4 6
//! end
//! meta kind fixture
//! ```
//!
//! `alpha` lines pair the two darts of an edge and `rot` lines list a vertex's darts
//! counterclockwise; faces are the orbits of `rot . alpha`. A `family` block lists its
//! curves as closed dart walks, each optionally named. Blank lines and `#` comments are
//! ignored when reading.
//!
//! Written files are canonical: darts renumbered breadth-first from the start giving the
//! smallest code (ties broken by the resulting text), `alpha` and `rot` lines by least
//! dart, curves rotated to their least dart and sorted by it, metadata by key.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::MultisectionDiagram;
use crate::surface::{canonical_numberings, CombinatorialMap, Curve, Dart};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("unknown format version `{0}`")]
    VersionUnknown(String),
    #[error("line {line}: {msg}")]
    MalformedLine { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    ValidationFailed { line: usize, msg: String },
}

impl FormatError {
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::VersionUnknown(_) => Some(1),
            FormatError::MalformedLine { line, .. } | FormatError::ValidationFailed { line, .. } => Some(*line),
        }
    }
}

fn malformed(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::MalformedLine { line, msg: msg.into() }
}

fn invalid(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::ValidationFailed { line, msg: msg.into() }
}

/// Canonical text of `d`.
pub fn serialize(d: &MultisectionDiagram) -> String {
    serialize_numbered(d).0
}

/// Canonical text of `d` and the dart renumbering `old -> new` it uses.
pub fn serialize_numbered(d: &MultisectionDiagram) -> (String, Vec<usize>) {
    let labels = d.dart_labels();
    canonical_numberings(&d.map, &labels)
        .into_iter()
        .map(|num| (write_numbered(d, &num), num))
        .min()
        .expect("a map has a canonical numbering")
}

fn write_numbered(d: &MultisectionDiagram, num: &[usize]) -> String {
    let m = &d.map;
    let n = m.num_darts();
    let mut inv = vec![0; n];
    for (old, &new) in num.iter().enumerate() {
        inv[new] = old;
    }
    let alpha = |x: Dart| num[m.alpha(inv[x])];
    let rot = |x: Dart| num[m.rot(inv[x])];

    let mut out = String::new();
    let _ = writeln!(out, "msd 1\ndarts {n}");
    for x in (0..n).filter(|&x| x < alpha(x)) {
        let _ = writeln!(out, "alpha {x} {}", alpha(x));
    }
    let mut seen = vec![false; n];
    for x in 0..n {
        if seen[x] {
            continue;
        }
        out.push_str("rot");
        let mut y = x;
        while !seen[y] {
            seen[y] = true;
            let _ = write!(out, " {y}");
            y = rot(y);
        }
        out.push('\n');
    }
    for (f, cs) in d.families.iter().enumerate() {
        let _ = writeln!(out, "family {}", f + 1);
        let mut curves: Vec<(Vec<Dart>, &str)> = cs
            .iter()
            .zip(&d.labels[f])
            .map(|(c, l)| {
                let mut ds: Vec<Dart> = c.darts.iter().map(|&x| num[x]).collect();
                if let Some(k) = ds.iter().enumerate().min_by_key(|p| p.1).map(|p| p.0) {
                    ds.rotate_left(k);
                }
                (ds, l.as_str())
            })
            .collect();
        curves.sort();
        for (ds, l) in curves {
            out.push_str("curve");
            if !l.is_empty() {
                let _ = write!(out, " name={l}");
            }
            for x in ds {
                let _ = write!(out, " {x}");
            }
            out.push('\n');
        }
        out.push_str("end\n");
    }
    for (k, v) in &d.meta {
        let _ = writeln!(out, "meta {k} {v}");
    }
    out
}

fn num(line: usize, w: &str) -> Result<usize, FormatError> {
    w.parse().map_err(|_| malformed(line, format!("expected a number, found `{w}`")))
}

/// Read a diagram. Checks that the map is a connected surface and that every curve is a
/// closed simple walk on it, but not that the families are cut systems.
pub fn parse(text: &str) -> Result<MultisectionDiagram, FormatError> {
    parse_located(text).map(|(d, _)| d)
}

/// As [`parse`], also returning the line of each curve.
fn parse_located(text: &str) -> Result<(MultisectionDiagram, Vec<Vec<usize>>), FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, head) = lines.next().ok_or_else(|| malformed(1, "empty input"))?;
    match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["msd", "1"] => {}
        ["msd", v] => return Err(FormatError::VersionUnknown(v.to_string())),
        _ => return Err(malformed(ln, "expected `msd 1`")),
    }
    let (darts_line, n) = match lines.next() {
        Some((l, s)) => match s.split_whitespace().collect::<Vec<_>>()[..] {
            ["darts", v] => (l, num(l, v)?),
            _ => return Err(malformed(l, "expected `darts <count>`")),
        },
        None => return Err(malformed(ln + 1, "missing `darts` line")),
    };
    if n == 0 {
        return Err(invalid(darts_line, "a map needs darts"));
    }
    let mut alpha: Vec<Option<Dart>> = vec![None; n];
    let mut rot: Vec<Option<Dart>> = vec![None; n];
    let mut families: Vec<Vec<Curve>> = Vec::new();
    let mut labels: Vec<Vec<String>> = Vec::new();
    let mut where_: Vec<Vec<usize>> = Vec::new();
    let mut meta = BTreeMap::new();
    let mut open: Option<usize> = None;
    let mut last = darts_line;
    let dart = |l: usize, w: &str| -> Result<Dart, FormatError> {
        let x = num(l, w)?;
        if x >= n {
            return Err(invalid(l, format!("dart {x} out of range")));
        }
        Ok(x)
    };

    for (l, s) in lines {
        last = l;
        let mut words = s.split_whitespace();
        let key = words.next().unwrap();
        match (key, open) {
            ("curve", Some(_)) => {
                let mut name = String::new();
                let mut ds = Vec::new();
                for w in words {
                    match w.strip_prefix("name=") {
                        Some(v) if ds.is_empty() && name.is_empty() => name = v.to_string(),
                        _ => ds.push(dart(l, w)?),
                    }
                }
                if ds.is_empty() {
                    return Err(malformed(l, "curve without darts"));
                }
                families.last_mut().unwrap().push(Curve::new(ds));
                labels.last_mut().unwrap().push(name);
                where_.last_mut().unwrap().push(l);
            }
            ("end", Some(_)) => open = None,
            (_, Some(h)) => return Err(malformed(l, format!("expected `curve` or `end` in family block opened on line {h}"))),
            ("family", None) => {
                let i = words.next().map(|w| num(l, w)).transpose()?;
                if i != Some(families.len() + 1) || words.next().is_some() {
                    return Err(malformed(l, format!("expected `family {}`", families.len() + 1)));
                }
                families.push(Vec::new());
                labels.push(Vec::new());
                where_.push(Vec::new());
                open = Some(l);
            }
            ("alpha", None) => {
                let ws: Vec<&str> = words.collect();
                let [a, b] = ws[..] else { return Err(malformed(l, "expected `alpha <dart> <dart>`")) };
                let (a, b) = (dart(l, a)?, dart(l, b)?);
                if a == b || alpha[a].is_some() || alpha[b].is_some() {
                    return Err(invalid(l, format!("darts {a} and {b} cannot be paired")));
                }
                alpha[a] = Some(b);
                alpha[b] = Some(a);
            }
            ("rot", None) => {
                let cycle: Vec<Dart> = words.map(|w| dart(l, w)).collect::<Result<_, _>>()?;
                if cycle.is_empty() {
                    return Err(malformed(l, "empty rotation"));
                }
                for (i, &x) in cycle.iter().enumerate() {
                    if rot[x].is_some() {
                        return Err(invalid(l, format!("dart {x} is in two rotations")));
                    }
                    rot[x] = Some(cycle[(i + 1) % cycle.len()]);
                }
            }
            ("meta", None) => {
                let k = words.next().ok_or_else(|| malformed(l, "expected `meta <key> <value>`"))?;
                meta.insert(k.to_string(), words.collect::<Vec<_>>().join(" "));
            }
            _ => return Err(malformed(l, format!("unexpected `{key}`"))),
        }
    }
    if let Some(h) = open {
        return Err(malformed(last + 1, format!("family block opened on line {h} is not closed")));
    }
    let alpha: Vec<Dart> = alpha
        .into_iter()
        .enumerate()
        .map(|(x, a)| a.ok_or_else(|| invalid(darts_line, format!("dart {x} has no alpha partner"))))
        .collect::<Result<_, _>>()?;
    let rot: Vec<Dart> = rot
        .into_iter()
        .enumerate()
        .map(|(x, r)| r.ok_or_else(|| invalid(darts_line, format!("dart {x} is in no rotation"))))
        .collect::<Result<_, _>>()?;
    let map = CombinatorialMap::new(alpha, rot).map_err(|e| invalid(darts_line, e.to_string()))?;
    for (cs, ls) in families.iter().zip(&where_) {
        for (c, &l) in cs.iter().zip(ls) {
            c.check(&map).map_err(|e| invalid(l, e.to_string()))?;
        }
    }
    Ok((MultisectionDiagram { map, families, labels, meta }, where_))
}

/// As [`parse`], and also require a valid multisection diagram. A failure points at
/// the first curve of the first failing family.
pub fn parse_valid(text: &str) -> Result<MultisectionDiagram, FormatError> {
    let (d, where_) = parse_located(text)?;
    let report = d.validate();
    if let Some(msg) = report.failures().into_iter().next() {
        let line = report.first_failing_family().and_then(|f| where_[f].first().copied()).unwrap_or(2);
        return Err(invalid(line, msg));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::gen1_sphere_diagram;
    use crate::fixtures::{cp2, s2s2};

    #[test]
    fn round_trip() {
        for d in [gen1_sphere_diagram(4, 2).unwrap(), cp2(), s2s2()] {
            let t = serialize(&d);
            let e = parse(&t).unwrap();
            assert!(e.isomorphic(&d, false));
            assert_eq!(e.labels.concat().len(), d.labels.concat().len());
            assert_eq!(serialize(&e), t);
        }
    }

    #[test]
    fn errors_carry_lines() {
        let t = serialize(&cp2());
        assert_eq!(parse(&t.replacen("msd 1", "msd 7", 1)).unwrap_err(), FormatError::VersionUnknown("7".into()));
        let cut = t.lines().take_while(|l| *l != "end").collect::<Vec<_>>().join("\n");
        let err = parse(&cut).unwrap_err();
        assert!(matches!(err, FormatError::MalformedLine { .. }), "{err}");
        assert_eq!(err.line(), Some(cut.lines().count() + 1));
        let bad = t.replacen("alpha 0 1", "alpha 0 0", 1);
        assert!(matches!(parse(&bad), Err(FormatError::ValidationFailed { line: 3, .. })));
    }
}

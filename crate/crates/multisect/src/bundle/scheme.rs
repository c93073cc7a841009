//! Circular tables assigning pieces to (fiber piece, time interval) cells for bundles
//! over the circle.
//!
//! The table is stored as drawn: `N + 1` columns where drawn column 0 is the part of the
//! wrap column after the gluing and drawn column `N` the part before it. Real column `l`
//! is drawn column `l` for `l < N`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Permutation of rows, `sigma[k]` the image of row `k` (0-based).
pub type Perm = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    /// Number of pieces; there are `n - 1` rows.
    pub n: usize,
    pub sigma: Perm,
    /// `table[k][c]`: piece (1-based) in row `k`, drawn column `c`.
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("cycles do not partition {0} rows")]
    InvalidPartition(usize),
    #[error("bad permutation `{0}`")]
    BadPermutation(String),
    #[error("line {0}: {1}")]
    Parse(usize, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeFailure {
    /// Drawn column whose labels repeat or include an out-of-range piece.
    ColumnNotDistinct(usize),
    /// Row whose label before the wrap differs from the label of its image after it.
    WrapMismatch(usize),
    PieceNeverMissing(usize),
    ConstantRow(usize),
    PieceDisconnected(usize),
    /// Real columns `l` and `l + 1` (circularly) miss the same piece.
    AdjacentSpans(usize),
    /// Panel between drawn columns `p` and `p + 1` changes the row of piece `j`.
    PanelRowChange { panel: usize, piece: usize },
}

/// Cycles of a permutation, each starting at its least element, ordered by that element.
pub fn cycles(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for s in 0..sigma.len() {
        if seen[s] {
            continue;
        }
        let mut c = vec![s];
        seen[s] = true;
        let mut x = sigma[s];
        while x != s {
            seen[x] = true;
            c.push(x);
            x = sigma[x];
        }
        out.push(c);
    }
    out
}

/// Number of columns: cycles (fixed points included) plus the sum of their lengths.
pub fn scheme_n(sigma: &[usize]) -> usize {
    cycles(sigma).len() + sigma.len()
}

/// The scheme of a single cycle through rows `1 -> 2 -> ... -> m` with `m + 1` pieces.
pub fn scheme_single_cycle(m: usize) -> Scheme {
    scheme_stack(&[(0..m).collect()]).expect("one cycle partitions its rows")
}

/// Stack one block per cycle (given 0-based, in cycle order), the cycle with the largest
/// least row leftmost. Neighboring blocks share one drawn column.
pub fn scheme_stack(cycle_list: &[Vec<usize>]) -> Result<Scheme, SchemeError> {
    let rows: usize = cycle_list.iter().map(Vec::len).sum();
    let mut sigma = vec![usize::MAX; rows];
    for c in cycle_list {
        for (i, &r) in c.iter().enumerate() {
            if r >= rows || sigma[r] != usize::MAX {
                return Err(SchemeError::InvalidPartition(rows));
            }
            sigma[r] = c[(i + 1) % c.len()];
        }
    }
    if rows == 0 {
        return Err(SchemeError::InvalidPartition(0));
    }
    let n = rows + 1;
    let mut blocks: Vec<Vec<usize>> = cycle_list
        .iter()
        .map(|c| {
            let start = c.iter().enumerate().min_by_key(|&(_, &r)| r).unwrap().0;
            (0..c.len()).map(|i| c[(start + i) % c.len()]).collect()
        })
        .collect();
    blocks.sort_by_key(|b| std::cmp::Reverse(b[0]));
    let width = blocks.iter().map(|b| b.len() + 2).sum::<usize>() + 1 - blocks.len();
    let mut table = vec![Vec::new(); rows];
    let mut offset = 0;
    for b in &blocks {
        let m = b.len();
        for (k, &r) in b.iter().enumerate() {
            let own = r + 1;
            let prev = b[(k + m - 1) % m] + 1;
            table[r] = (0..width)
                .map(|c| {
                    // position inside this block's m + 2 drawn columns
                    let x = c as isize - offset as isize;
                    if k == 0 {
                        match x {
                            _ if x < 1 => prev,
                            _ if x <= m as isize => n,
                            _ => own,
                        }
                    } else if x < (m + 1 - k) as isize {
                        prev
                    } else {
                        own
                    }
                })
                .collect();
        }
        offset += m + 1;
    }
    Ok(Scheme { n, sigma, table })
}

/// The stacked scheme of `sigma`.
pub fn scheme_for(sigma: &[usize]) -> Result<Scheme, SchemeError> {
    scheme_stack(&cycles(sigma))
}

impl Scheme {
    pub fn rows(&self) -> usize {
        self.table.len()
    }

    /// Number of real columns.
    pub fn columns(&self) -> usize {
        self.table.first().map_or(0, |r| r.len() - 1)
    }

    /// The piece absent from drawn column `c`.
    pub fn missing(&self, c: usize) -> usize {
        let present: BTreeSet<usize> = self.table.iter().map(|r| r[c]).collect();
        (1..=self.n).find(|j| !present.contains(j)).unwrap_or(0)
    }

    /// Missing piece of each real column.
    pub fn missing_sequence(&self) -> Vec<usize> {
        (0..self.columns()).map(|c| self.missing(c)).collect()
    }

    /// Row carrying piece `j` in drawn column `c`.
    pub fn row_of(&self, j: usize, c: usize) -> Option<usize> {
        self.table.iter().position(|r| r[c] == j)
    }

    pub fn validate(&self) -> Vec<SchemeFailure> {
        let mut out = Vec::new();
        let (rows, cols) = (self.rows(), self.columns());
        for c in 0..=cols {
            let labels: BTreeSet<usize> = self.table.iter().map(|r| r[c]).collect();
            if labels.len() != rows || labels.iter().any(|&j| j == 0 || j > self.n) {
                out.push(SchemeFailure::ColumnNotDistinct(c));
            }
        }
        for k in 0..rows {
            if self.table[k][cols] != self.table[self.sigma[k]][0] {
                out.push(SchemeFailure::WrapMismatch(k));
            }
        }
        let missing = self.missing_sequence();
        for j in 1..=self.n {
            if !missing.contains(&j) {
                out.push(SchemeFailure::PieceNeverMissing(j));
            }
        }
        for k in 0..rows {
            if self.table[k].iter().all(|&j| j == self.table[k][0]) {
                out.push(SchemeFailure::ConstantRow(k));
            }
        }
        for j in 1..=self.n {
            if !self.piece_connected(j) {
                out.push(SchemeFailure::PieceDisconnected(j));
            }
        }
        for l in 0..cols {
            if missing[l] == missing[(l + 1) % cols] {
                out.push(SchemeFailure::AdjacentSpans(l));
            }
        }
        for p in 0..cols {
            for j in 1..=self.n {
                if self.missing(p) == j || self.missing(p + 1) == j {
                    continue;
                }
                if self.row_of(j, p) != self.row_of(j, p + 1) {
                    out.push(SchemeFailure::PanelRowChange { panel: p, piece: j });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Cells of `j` joined along rows (through the wrap by `sigma`) and through the
    /// tubes of its span columns.
    fn piece_connected(&self, j: usize) -> bool {
        let (rows, cols) = (self.rows(), self.columns());
        // nodes: cells k * cols + l, then tubes rows * cols + l
        let cell = |k: usize, l: usize| k * cols + l;
        let tube = |l: usize| rows * cols + l;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); rows * cols + cols];
        let mut nodes = Vec::new();
        let link = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
            adj[a].push(b);
            adj[b].push(a);
        };
        for k in 0..rows {
            for l in 0..cols {
                if self.table[k][l] != j {
                    continue;
                }
                nodes.push(cell(k, l));
                if l + 1 < cols && self.table[k][l + 1] == j {
                    link(cell(k, l), cell(k, l + 1), &mut adj);
                }
                if l + 1 == cols && self.table[k][cols] == j {
                    link(cell(k, l), cell(self.sigma[k], 0), &mut adj);
                }
            }
        }
        for l in 0..cols {
            if self.missing(l) != j {
                continue;
            }
            nodes.push(tube(l));
            for nb in [(l + cols - 1) % cols, (l + 1) % cols] {
                for k in 0..rows {
                    if self.table[k][nb] == j {
                        link(tube(l), cell(k, nb), &mut adj);
                    }
                }
            }
        }
        let Some(&start) = nodes.first() else { return false };
        let mut seen = vec![false; adj.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        nodes.iter().all(|&x| seen[x])
    }

    /// Parse the text format written by `Display`.
    pub fn parse(text: &str) -> Result<Self, SchemeError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or(SchemeError::Parse(1, "empty input".into()))?;
        let perr = |i: usize, m: &str| SchemeError::Parse(i + 1, m.to_string());
        let mut words = header.split_whitespace();
        if words.next() != Some("scheme") {
            return Err(perr(hl, "expected `scheme` header"));
        }
        let (mut n, mut big_n, mut sigma_text) = (None, None, None);
        for w in words {
            match w.split_once('=') {
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                Some(("N", v)) => big_n = v.parse::<usize>().ok(),
                Some(("sigma", v)) => sigma_text = Some(v.to_string()),
                _ => return Err(perr(hl, &format!("unknown field `{w}`"))),
            }
        }
        let (n, big_n, sigma_text) = match (n, big_n, sigma_text) {
            (Some(a), Some(b), Some(c)) if a >= 2 => (a, b, c),
            _ => return Err(perr(hl, "header needs n, N and sigma")),
        };
        let sigma = parse_perm(&sigma_text, n - 1).map_err(|e| perr(hl, &e.to_string()))?;
        let mut table = vec![Vec::new(); n - 1];
        let mut filled = vec![false; n - 1];
        for (i, line) in lines {
            let mut words = line.split_whitespace();
            let row = words
                .next()
                .and_then(|w| w.strip_prefix('X'))
                .and_then(|w| w.parse::<usize>().ok())
                .filter(|&r| r >= 1 && r < n)
                .ok_or_else(|| perr(i, "expected row `X<k>`"))?
                - 1;
            if filled[row] {
                return Err(perr(i, "row listed twice"));
            }
            let mut cells = Vec::new();
            for w in words {
                let (label, range) = w.split_once('@').ok_or_else(|| perr(i, &format!("bad cell `{w}`")))?;
                let label: usize = label.parse().map_err(|_| perr(i, &format!("bad label in `{w}`")))?;
                let col = |s: &str| if s == "*" { Some(big_n) } else { s.parse::<usize>().ok() };
                let (a, b) = match range.split_once('-') {
                    Some((a, b)) => (col(a), col(b)),
                    None => (col(range), col(range)),
                };
                let (Some(a), Some(b)) = (a, b) else { return Err(perr(i, &format!("bad range in `{w}`"))) };
                if a != cells.len() || b < a || b > big_n {
                    return Err(perr(i, &format!("range `{range}` does not continue the row")));
                }
                cells.extend(std::iter::repeat(label).take(b - a + 1));
            }
            if cells.len() != big_n + 1 {
                return Err(perr(i, "row does not reach the wrap column"));
            }
            table[row] = cells;
            filled[row] = true;
        }
        if let Some(r) = filled.iter().position(|&f| !f) {
            return Err(SchemeError::Parse(text.lines().count(), format!("row X{} missing", r + 1)));
        }
        Ok(Scheme { n, sigma, table })
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.columns();
        writeln!(f, "scheme n={} N={} sigma={}", self.n, cols, format_perm(&self.sigma))?;
        let name = |c: usize| if c == cols { "*".to_string() } else { c.to_string() };
        for (k, row) in self.table.iter().enumerate() {
            write!(f, "X{}", k + 1)?;
            let mut a = 0;
            while a <= cols {
                let mut b = a;
                while b < cols && row[b + 1] == row[a] {
                    b += 1;
                }
                if a == b {
                    write!(f, " {}@{}", row[a], name(a))?;
                } else {
                    write!(f, " {}@{}-{}", row[a], name(a), name(b))?;
                }
                a = b + 1;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Cycle notation with 1-based entries: `id`, `(1,2)(3,4,5)`, or `(12)(345)` when every
/// entry is a single digit.
pub fn parse_perm(text: &str, len: usize) -> Result<Perm, SchemeError> {
    let bad = || SchemeError::BadPermutation(text.to_string());
    let mut sigma: Perm = (0..len).collect();
    if text == "id" || text.is_empty() {
        return Ok(sigma);
    }
    let mut moved = vec![false; len];
    let mut rest = text;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let inner = &body[..close];
        rest = &body[close + 1..];
        let entries: Vec<usize> = if inner.contains(',') || inner.contains(' ') {
            inner.split([',', ' ']).filter(|s| !s.is_empty()).map(|s| s.parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        } else {
            inner.chars().map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_, _>>()?
        };
        for (i, &e) in entries.iter().enumerate() {
            if e == 0 || e > len || moved[e - 1] {
                return Err(bad());
            }
            moved[e - 1] = true;
            sigma[e - 1] = entries[(i + 1) % entries.len()] - 1;
        }
    }
    Ok(sigma)
}

/// Inverse of [`parse_perm`], omitting fixed points.
pub fn format_perm(sigma: &[usize]) -> String {
    let cs: Vec<String> = cycles(sigma)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| format!("({})", c.iter().map(|r| (r + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    if cs.is_empty() { "id".into() } else { cs.concat() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, len: usize) -> Perm {
        parse_perm(s, len).unwrap()
    }

    #[test]
    fn column_counts() {
        assert_eq!(scheme_n(&perm("(123)", 3)), 4);
        assert_eq!(scheme_n(&perm("(23)", 3)), 5);
        assert_eq!(scheme_n(&perm("id", 3)), 6);
        assert_eq!(scheme_n(&perm("(12)(345)", 5)), 7);
        assert_eq!(scheme_n(&perm("(12)(34)(56)", 6)), 9);
    }

    #[test]
    fn three_cycle_table() {
        let s = scheme_for(&perm("(123)", 3)).unwrap();
        assert_eq!(s.table, vec![vec![3, 4, 4, 4, 1], vec![1, 1, 1, 2, 2], vec![2, 2, 3, 3, 3]]);
        assert_eq!(s.missing_sequence(), vec![4, 3, 2, 1]);
        assert!(s.is_valid(), "{:?}", s.validate());
    }

    #[test]
    fn identity_missing_sequence() {
        let s = scheme_for(&perm("id", 3)).unwrap();
        assert_eq!(s.missing_sequence(), vec![4, 3, 4, 2, 4, 1]);
        assert!(s.is_valid());
    }

    #[test]
    fn text_round_trip() {
        let s = scheme_for(&perm("(12)(345)", 5)).unwrap();
        let t = s.to_string();
        assert_eq!(Scheme::parse(&t).unwrap(), s);
        assert!(t.starts_with("scheme n=6 N=7 sigma=(1,2)(3,4,5)\n"));
    }

    #[test]
    fn tampering_breaks_a_column() {
        let mut s = scheme_for(&perm("(23)", 3)).unwrap();
        s.table[0][2] = s.table[1][2];
        assert!(s.validate().contains(&SchemeFailure::ColumnNotDistinct(2)));
    }

    #[test]
    fn bad_partition() {
        assert_eq!(scheme_stack(&[vec![0, 1], vec![1]]).unwrap_err(), SchemeError::InvalidPartition(3));
    }
}

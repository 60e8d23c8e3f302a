//! Line-oriented text formats for circuits, Pfaffian circuits and graphs.
//!
//! In every format `#` starts a comment and blank lines are ignored.
//!
//! Circuit:
//! ```text
//! stack
//! gate 2 2 1 2 / 1 2    # rows, cols, row labels / column labels
//! 1 2                   # one line per row
//! 3 4
//! wiring 1: 1->1, 2->2  # from stack 1 outputs to stack 2 inputs (cyclically)
//! ```
//! A missing `wiring k` line pairs the sorted outputs of stack `k` with the
//! sorted inputs of the next stack.
//!
//! Pfaffian circuit: `pfgate state|costate n <n edge ids>` followed by `n`
//! rows of the skew matrix; edge ids run from 1.
//!
//! Graph: `n m` then `m` lines `u v`, vertices numbered from 1.

use std::fmt::Write as _;

use crate::algebra::{Label, LabeledMatrix, Scalar};
use crate::circuit::{Circuit, Stack, Wiring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pfaffian::{GateKind, PfGate, PfaffianCircuit, SkewMatrix};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, reason: reason.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

fn parse_row<S: Scalar>(text: &str, line: usize, expected: usize) -> Result<Vec<S>> {
    let row = text
        .split_whitespace()
        .map(|t| S::parse_scalar(t).map_err(|e| parse_err(line, e)))
        .collect::<Result<Vec<S>>>()?;
    if row.len() != expected {
        return Err(parse_err(line, format!("expected {expected} entries, found {}", row.len())));
    }
    Ok(row)
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.items.get(self.pos).copied();
        self.pos += 1;
        item
    }

    fn matrix_rows<S: Scalar>(&mut self, header_line: usize, rows: usize, cols: usize) -> Result<Vec<S>> {
        let mut data = Vec::with_capacity(rows * cols);
        if cols == 0 {
            return Ok(data);
        }
        for r in 0..rows {
            let (ln, text) = self
                .next()
                .ok_or_else(|| parse_err(header_line, format!("missing matrix row {}", r + 1)))?;
            data.extend(parse_row::<S>(text, ln, cols)?);
        }
        Ok(data)
    }
}

fn parse_gate<S: Scalar>(lines: &mut Lines<'_>, ln: usize, rest: &str) -> Result<LabeledMatrix<S>> {
    let (head, cols_part) = rest
        .split_once('/')
        .ok_or_else(|| parse_err(ln, "gate line needs `/` between row and column labels"))?;
    let mut head = head.split_whitespace();
    let r: usize = parse_num(head.next().ok_or_else(|| parse_err(ln, "missing row count"))?, ln, "row count")?;
    let c: usize = parse_num(head.next().ok_or_else(|| parse_err(ln, "missing column count"))?, ln, "column count")?;
    let rows = head.map(|t| parse_num::<Label>(t, ln, "label")).collect::<Result<Vec<_>>>()?;
    let cols = cols_part.split_whitespace().map(|t| parse_num::<Label>(t, ln, "label")).collect::<Result<Vec<_>>>()?;
    if rows.len() != r || cols.len() != c {
        return Err(parse_err(ln, format!("gate declares {r}x{c} but lists {} row and {} column labels", rows.len(), cols.len())));
    }
    let data = lines.matrix_rows(ln, r, c)?;
    LabeledMatrix::new(rows, cols, data).map_err(|e| parse_err(ln, e.to_string()))
}

fn parse_wiring(ln: usize, rest: &str) -> Result<(usize, Wiring)> {
    let (k, pairs) = rest.split_once(':').ok_or_else(|| parse_err(ln, "wiring line needs `:`"))?;
    let k: usize = parse_num(k.trim(), ln, "wiring index")?;
    if k == 0 {
        return Err(parse_err(ln, "wiring indices start at 1"));
    }
    let mut out = Vec::new();
    for pair in pairs.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = pair.split_once("->").ok_or_else(|| parse_err(ln, format!("expected `a->b`, found `{pair}`")))?;
        out.push((parse_num(a.trim(), ln, "label")?, parse_num(b.trim(), ln, "label")?));
    }
    Ok((k, Wiring::new(out)))
}

/// Parses and validates a circuit.
pub fn parse_circuit<S: Scalar>(text: &str) -> Result<Circuit<S>> {
    let mut lines = Lines { items: content_lines(text), pos: 0 };
    let mut stacks: Vec<Vec<LabeledMatrix<S>>> = Vec::new();
    let mut wirings: Vec<(usize, usize, Wiring)> = Vec::new();
    while let Some((ln, line)) = lines.next() {
        let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match word {
            "stack" => stacks.push(Vec::new()),
            "gate" => {
                let g = parse_gate(&mut lines, ln, rest)?;
                stacks.last_mut().ok_or_else(|| parse_err(ln, "gate before any `stack`"))?.push(g);
            }
            "wiring" => {
                let (k, w) = parse_wiring(ln, rest)?;
                if wirings.iter().any(|(_, j, _)| *j == k) {
                    return Err(parse_err(ln, format!("wiring {k} given twice")));
                }
                wirings.push((ln, k, w));
            }
            other => return Err(parse_err(ln, format!("unknown keyword `{other}`"))),
        }
    }
    let m = stacks.len();
    let mut slots: Vec<Option<Wiring>> = vec![None; m];
    for (ln, k, w) in wirings {
        if k > m {
            return Err(parse_err(ln, format!("wiring {k} but only {m} stacks")));
        }
        slots[k - 1] = Some(w);
    }
    Circuit::with_default_wirings(stacks.into_iter().map(Stack::new).collect(), slots)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_rows<S: Scalar>(out: &mut String, data: &[S], cols: usize) {
    if cols == 0 {
        return;
    }
    for row in data.chunks(cols) {
        let _ = writeln!(out, "{}", join(row.iter().map(S::render)));
    }
}

/// Canonical text for a circuit, with every wiring written out.
pub fn write_circuit<S: Scalar>(c: &Circuit<S>) -> String {
    let mut out = String::new();
    for (k, stack) in c.stacks().iter().enumerate() {
        out.push_str("stack\n");
        for g in &stack.gates {
            let mut head = vec![g.nrows().to_string(), g.ncols().to_string()];
            head.extend(g.rows().iter().map(|l| l.to_string()));
            head.push("/".into());
            head.extend(g.cols().iter().map(|l| l.to_string()));
            let _ = writeln!(out, "gate {}", head.join(" "));
            write_rows(&mut out, g.data(), g.ncols());
        }
        let pairs: Vec<String> = c.wirings()[k].pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        let line = format!("wiring {}: {}", k + 1, pairs.join(", "));
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}

/// Parses and validates a Pfaffian circuit; the edge count is the largest id.
pub fn parse_pfaffian<S: Scalar>(text: &str) -> Result<PfaffianCircuit<S>> {
    let mut lines = Lines { items: content_lines(text), pos: 0 };
    let mut gates = Vec::new();
    while let Some((ln, line)) = lines.next() {
        let mut toks = line.split_whitespace();
        if toks.next() != Some("pfgate") {
            return Err(parse_err(ln, "expected `pfgate`"));
        }
        let kind = match toks.next() {
            Some("state") => GateKind::State,
            Some("costate") => GateKind::Costate,
            other => return Err(parse_err(ln, format!("expected `state` or `costate`, found {other:?}"))),
        };
        let n: usize = parse_num(toks.next().ok_or_else(|| parse_err(ln, "missing size"))?, ln, "size")?;
        let edges = toks.map(|t| parse_num::<usize>(t, ln, "edge id")).collect::<Result<Vec<_>>>()?;
        if edges.len() != n {
            return Err(parse_err(ln, format!("gate of size {n} lists {} edges", edges.len())));
        }
        let data = lines.matrix_rows(ln, n, n)?;
        let matrix = SkewMatrix::new((0..n as Label).collect(), data)?;
        gates.push(PfGate::new(kind, matrix, edges)?);
    }
    let edge_count = gates.iter().flat_map(|g| g.edges.iter().copied()).max().unwrap_or(0);
    PfaffianCircuit::new(gates, edge_count)
}

pub fn write_pfaffian<S: Scalar>(pc: &PfaffianCircuit<S>) -> String {
    let mut out = String::new();
    for g in pc.gates() {
        let _ = write!(out, "pfgate {} {}", g.kind.name(), g.edges.len());
        for e in &g.edges {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
        write_rows(&mut out, g.matrix.data(), g.matrix.dim());
    }
    out
}

/// Parses a graph; vertices in the file are numbered from 1.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let lines = content_lines(text);
    let (&(ln, header), rest) = lines.split_first().ok_or_else(|| parse_err(1, "empty graph file"))?;
    let mut h = header.split_whitespace();
    let n: usize = parse_num(h.next().unwrap_or(""), ln, "vertex count")?;
    let m: usize = parse_num(h.next().ok_or_else(|| parse_err(ln, "missing edge count"))?, ln, "edge count")?;
    if h.next().is_some() {
        return Err(parse_err(ln, "header has extra fields"));
    }
    if rest.len() != m {
        return Err(parse_err(ln, format!("header promises {m} edges, found {}", rest.len())));
    }
    let mut edges = Vec::with_capacity(m);
    for &(ln, line) in rest {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = toks[..] else {
            return Err(parse_err(ln, "edge line needs two vertices"));
        };
        let u: usize = parse_num(u, ln, "vertex")?;
        let v: usize = parse_num(v, ln, "vertex")?;
        if u == 0 || v == 0 || u > n || v > n {
            return Err(parse_err(ln, format!("vertex out of range 1..={n}")));
        }
        if u == v {
            return Err(parse_err(ln, "self-loops are not allowed"));
        }
        edges.push((u - 1, v - 1));
    }
    Graph::new(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edges().len());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Complex, Rational};
    use crate::circuit::evaluate;

    const SINGLE: &str = "stack\ngate 2 2 1 2 / 1 2\n1 2\n3 4\n";

    #[test]
    fn circuit_round_trip() {
        let c: Circuit<Rational> = parse_circuit(SINGLE).unwrap();
        assert_eq!(evaluate(&c).unwrap(), int(4));
        let text = write_circuit(&c);
        assert_eq!(text, "stack\ngate 2 2 1 2 / 1 2\n1 2\n3 4\nwiring 1: 1->1, 2->2\n");
        assert_eq!(parse_circuit::<Rational>(&text).unwrap(), c);
    }

    #[test]
    fn empty_label_lists() {
        let text = "stack\ngate 0 1 / 1\nstack\ngate 1 0 1 /\n";
        let c: Circuit<Rational> = parse_circuit(text).unwrap();
        assert_eq!(evaluate(&c).unwrap(), int(1));
        assert_eq!(parse_circuit::<Rational>(&write_circuit(&c)).unwrap(), c);
    }

    #[test]
    fn complex_entries() {
        let text = "stack\ngate 1 1 1 / 1\n0.5+1i\n";
        let c: Circuit<Complex> = parse_circuit(text).unwrap();
        assert_eq!(evaluate(&c).unwrap().render(), "1.5+1i");
    }

    #[test]
    fn errors_carry_lines() {
        let bad = "stack\ngate 2 2 1 2 / 1 2\n1 2\n3 x\n";
        assert!(matches!(parse_circuit::<Rational>(bad), Err(Error::Parse { line: 4, .. })));
        let short = "stack\ngate 2 2 1 2 / 1 2\n1 2\n";
        assert!(matches!(parse_circuit::<Rational>(short), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_circuit::<Rational>("gate 1 1 1 / 1\n1\n"), Err(Error::Parse { line: 1, .. })));
        let dangling = "stack\ngate 1 1 1 / 1\n1\nwiring 1:\n";
        assert!(matches!(parse_circuit::<Rational>(dangling), Err(Error::DanglingWire { .. })));
    }

    #[test]
    fn pfaffian_files() {
        let text = "pfgate state 2 1 2\n0 1\n-1 0\npfgate costate 2 1 2\n0 1\n-1 0\n";
        let pc: PfaffianCircuit<Rational> = parse_pfaffian(text).unwrap();
        assert_eq!(pc.edge_count(), 2);
        assert_eq!(write_pfaffian(&pc), text);
        let bad = "pfgate state 2 1 2\n1 1\n-1 0\npfgate costate 2 1 2\n0 1\n-1 0\n";
        assert!(matches!(parse_pfaffian::<Rational>(bad), Err(Error::NotSkew { .. })));
    }

    #[test]
    fn graph_files() {
        let g = parse_graph("3 3\n1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert!(matches!(parse_graph("2 1\n1 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("2 2\n1 2\n"), Err(Error::Parse { line: 1, .. })));
    }
}

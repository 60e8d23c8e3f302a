use std::fmt::Write as _;
use std::path::Path;

use detcircuit::circuit::evaluate;
use detcircuit::compiler::compile;
use detcircuit::format::{parse_circuit, parse_graph, parse_pfaffian, write_pfaffian};
use detcircuit::graph::{count_rooted_forests, count_spanning_trees, forest_polynomial};
use detcircuit::oracle::{contract_circuit_capped, enumerate_multicycles_capped, DEFAULT_CAP};
use detcircuit::pfaffian::{eval_pfaffian_circuit, eval_pfaffian_oracle_capped};
use detcircuit::{Complex, Graph, Label, Rational, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Cli, Field, Verb};

pub const CAP_VAR: &str = "DETCIRCUIT_ORACLE_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Invalid { path: String, source: detcircuit::Error },
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub const USAGE: u8 = 1;

    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => Self::USAGE,
            CliError::Invalid { .. } => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn oracle_cap() -> Result<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{CAP_VAR} must be a count, got `{v}`"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Which of the three formats a file holds, judged by its first keyword.
#[derive(Debug, PartialEq, Eq)]
enum Format {
    Circuit,
    Pfaffian,
    Graph,
}

fn sniff(text: &str) -> Format {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next());
    match first {
        Some("stack") | None => Format::Circuit,
        Some("pfgate") => Format::Pfaffian,
        Some(_) => Format::Graph,
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    match cli.field {
        Field::Rational => run_in::<Rational>(cli),
        Field::Complex => run_in::<Complex>(cli),
    }
}

fn run_in<S: Scalar>(cli: &Cli) -> Result<()> {
    let input = match &cli.verb {
        Verb::Eval { input }
        | Verb::Oracle { input }
        | Verb::Check { input }
        | Verb::Multicycles { input }
        | Verb::Compile { input }
        | Verb::Pfeval { input }
        | Verb::Forests { input }
        | Verb::Trees { input }
        | Verb::Poly { input } => input,
    };
    let path = input.display().to_string();
    let text = read(input)?;
    let invalid = |source| CliError::Invalid { path: path.clone(), source };
    let out = cli.output.as_deref();

    match &cli.verb {
        Verb::Eval { .. } => {
            let c = parse_circuit::<S>(&text).map_err(invalid)?;
            emit(&line(&evaluate(&c).map_err(invalid)?), out)
        }
        Verb::Oracle { .. } => {
            let c = parse_circuit::<S>(&text).map_err(invalid)?;
            emit(&line(&contract_circuit_capped(&c, oracle_cap()?).map_err(invalid)?), out)
        }
        Verb::Multicycles { .. } => {
            let c = parse_circuit::<S>(&text).map_err(invalid)?;
            let report = enumerate_multicycles_capped(&c, oracle_cap()?).map_err(invalid)?;
            let mut s = String::new();
            for e in &report.entries {
                let subsets: Vec<String> = e.subsets.iter().map(|l| subset(l)).collect();
                let _ = writeln!(s, "{} : {}", subsets.join(" | "), e.weight.render());
            }
            let _ = writeln!(s, "total: {}", report.total.render());
            emit(&s, out)
        }
        Verb::Compile { .. } => {
            let c = parse_circuit::<S>(&text).map_err(invalid)?;
            let compiled = compile(&c).map_err(invalid)?;
            let ratio = format!("size_ratio: {}", compiled.size_ratio.render());
            let body = write_pfaffian(&compiled.target);
            match out {
                Some(_) => {
                    emit(&body, out)?;
                    println!("{ratio}");
                }
                None => {
                    print!("{body}");
                    eprintln!("{ratio}");
                }
            }
            Ok(())
        }
        Verb::Pfeval { .. } => {
            let pc = parse_pfaffian::<S>(&text).map_err(invalid)?;
            emit(&line(&eval_pfaffian_circuit(&pc)), out)
        }
        Verb::Check { .. } => emit(&check::<S>(&text, &path)?, out),
        Verb::Forests { .. } => emit(&format!("{}\n", count_rooted_forests(&graph(&text, cli.seed).map_err(invalid)?)), out),
        Verb::Trees { .. } => emit(&format!("{}\n", count_spanning_trees(&graph(&text, cli.seed).map_err(invalid)?)), out),
        Verb::Poly { .. } => {
            let coeffs = forest_polynomial(&graph(&text, cli.seed).map_err(invalid)?);
            let words: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
            emit(&format!("{}\n", words.join(" ")), out)
        }
    }
}

fn line<S: Scalar>(v: &S) -> String {
    format!("{}\n", v.render())
}

fn subset(labels: &[Label]) -> String {
    if labels.is_empty() {
        "-".into()
    } else {
        labels.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

fn graph(text: &str, seed: Option<u64>) -> detcircuit::Result<Graph> {
    let g = parse_graph(text)?;
    Ok(match seed {
        Some(s) => g.reoriented(&mut ChaCha8Rng::seed_from_u64(s)),
        None => g,
    })
}

/// Runs every applicable evaluator on the file and reports agreement.
fn check<S: Scalar>(text: &str, path: &str) -> Result<String> {
    let invalid = |source| CliError::Invalid { path: path.to_string(), source };
    let cap = oracle_cap()?;
    let values: Vec<(&str, String, bool)> = match sniff(text) {
        Format::Circuit => {
            let c = parse_circuit::<S>(text).map_err(invalid)?;
            let fast = evaluate(&c).map_err(invalid)?;
            let slow = contract_circuit_capped(&c, cap).map_err(invalid)?;
            let cycles = enumerate_multicycles_capped(&c, cap).map_err(invalid)?.total;
            let compiled = eval_pfaffian_circuit(&compile(&c).map_err(invalid)?.target);
            vec![
                ("fast", fast.render(), true),
                ("contraction", slow.render(), fast.approx_eq(&slow)),
                ("multicycles", cycles.render(), fast.approx_eq(&cycles)),
                ("compiled", compiled.render(), fast.approx_eq(&compiled)),
            ]
        }
        Format::Pfaffian => {
            let pc = parse_pfaffian::<S>(text).map_err(invalid)?;
            let fast = eval_pfaffian_circuit(&pc);
            let slow = eval_pfaffian_oracle_capped(&pc, cap).map_err(invalid)?;
            // Off a planar layout the fast formula need not agree; that is not a failure.
            let required = pc.has_planar_ordering();
            vec![("fast", fast.render(), true), ("contraction", slow.render(), !required || fast.approx_eq(&slow))]
        }
        Format::Graph => {
            let g = parse_graph(text).map_err(invalid)?;
            let count = count_rooted_forests(&g);
            let poly = forest_polynomial(&g).into_iter().reduce(|a, b| a + b).map(|t| t.to_string()).unwrap_or_default();
            let via_circuit = evaluate(&detcircuit::graph::graph_to_circuit(&g)).map_err(invalid)?;
            let enumerated = detcircuit::graph::enumerate_forests(&g).map_err(invalid)?.len().to_string();
            let count_text = count.to_string();
            vec![
                ("forests", count_text.clone(), true),
                ("polynomial", poly.clone(), poly == count_text),
                ("circuit", via_circuit.render(), via_circuit.render() == count_text),
                ("enumeration", enumerated.clone(), enumerated == count_text),
            ]
        }
    };
    let report = values.iter().map(|(name, v, _)| format!("{name} {v}")).collect::<Vec<_>>().join(", ");
    if values.iter().all(|(_, _, ok)| *ok) {
        Ok(format!("ok: {report}\n"))
    } else {
        Err(CliError::Mismatch(format!("mismatch: {report}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sniffs_formats() {
        assert_eq!(sniff("# c\nstack\n"), Format::Circuit);
        assert_eq!(sniff(""), Format::Circuit);
        assert_eq!(sniff("pfgate state 2 1 2\n"), Format::Pfaffian);
        assert_eq!(sniff("3 3\n1 2\n"), Format::Graph);
    }

    #[test]
    fn exit_code_mapping() {
        assert_eq!(CliError::Usage(String::new()).code(), 1);
        let source = detcircuit::Error::NotSquare { rows: 1, cols: 2 };
        assert_eq!(CliError::Invalid { path: String::new(), source }.code(), 2);
        assert_eq!(CliError::Mismatch(String::new()).code(), 3);
    }
}

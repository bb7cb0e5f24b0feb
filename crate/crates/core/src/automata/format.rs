//! File formats for single automata: a line-oriented text format, its JSON
//! equivalent, and Graphviz DOT output. States are 1-based in all of them.
//!
//! ```text
//! states: 4
//! alphabet: a1 a2 b
//! start: 1
//! finals: 4
//! a1: (1,2,3,4)
//! a2: (1)
//! b: (1->2)
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automata::dfa::Dfa;
use crate::automata::nfa::{Label, Nfa};
use crate::automata::transform::{parse_transform, render_map};
use crate::error::{Error, Result};

const HEADER_KEYS: [&str; 4] = ["states", "alphabet", "start", "finals"];

/// Parses the text automaton format.
pub fn parse_text(text: &str) -> Result<Dfa> {
    let mut header: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut symbol_lines: Vec<(usize, &str, &str)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(Error::Format {
                line: line_no,
                msg: "expected `key: value`".into(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if HEADER_KEYS.contains(&key) {
            if header.insert(key, (line_no, value)).is_some() {
                return Err(Error::Format {
                    line: line_no,
                    msg: format!("duplicate `{key}` line"),
                });
            }
        } else {
            symbol_lines.push((line_no, key, value));
        }
    }

    let field = |key: &str| {
        header.get(key).copied().ok_or_else(|| Error::Format {
            line: 0,
            msg: format!("missing `{key}` line"),
        })
    };
    let number = |line: usize, s: &str| -> Result<usize> {
        s.parse::<usize>().map_err(|_| Error::Format {
            line,
            msg: format!("expected a number, found {s:?}"),
        })
    };

    let (line, v) = field("states")?;
    let n = number(line, v)?;
    if n == 0 {
        return Err(Error::Format { line, msg: "an automaton needs at least one state".into() });
    }
    let one_based = |line: usize, s: &str| -> Result<usize> {
        let q = number(line, s)?;
        if q == 0 || q > n {
            return Err(Error::Format {
                line,
                msg: format!("state {q} outside 1..={n}"),
            });
        }
        Ok(q - 1)
    };

    let (_, v) = field("alphabet")?;
    let alphabet: Vec<String> = v.split_whitespace().map(str::to_string).collect();
    if let Some(s) = alphabet.iter().find(|s| HEADER_KEYS.contains(&s.as_str())) {
        return Err(Error::Malformed(format!("symbol name `{s}` clashes with a header key")));
    }
    let (line, v) = field("start")?;
    let start = one_based(line, v)?;
    let (line, v) = field("finals")?;
    let finals = v
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| one_based(line, s))
        .collect::<Result<Vec<_>>>()?;

    let mut maps: Vec<Option<Vec<usize>>> = vec![None; alphabet.len()];
    for (line, sym, tf) in symbol_lines {
        let Some(a) = alphabet.iter().position(|s| s == sym) else {
            return Err(Error::Format {
                line,
                msg: format!("symbol `{sym}` is not in the alphabet"),
            });
        };
        if maps[a].is_some() {
            return Err(Error::Format {
                line,
                msg: format!("second transformation for `{sym}`"),
            });
        }
        let tf = parse_transform(tf, n).map_err(|e| Error::Format {
            line,
            msg: e.to_string(),
        })?;
        maps[a] = Some(tf.to_map());
    }
    let maps = maps
        .into_iter()
        .zip(&alphabet)
        .map(|(m, sym)| {
            m.ok_or_else(|| Error::Format {
                line: 0,
                msg: format!("no transformation for `{sym}`"),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    if maps.is_empty() {
        Dfa::new(alphabet, n, Vec::new(), start, finals)
    } else {
        Dfa::from_maps(alphabet, &maps, start, finals)
    }
}

/// Renders the text format. Parsing the result gives back an equal DFA.
pub fn to_text(dfa: &Dfa) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", dfa.state_count());
    let _ = writeln!(out, "alphabet: {}", dfa.alphabet().join(" "));
    let _ = writeln!(out, "start: {}", dfa.start() + 1);
    let finals: Vec<String> = dfa.finals().iter().map(|q| (q + 1).to_string()).collect();
    let _ = writeln!(out, "finals: {}", finals.join(" "));
    for (a, sym) in dfa.alphabet().iter().enumerate() {
        let _ = writeln!(out, "{sym}: {}", render_map(&dfa.symbol_map(a)));
    }
    out
}

/// JSON mirror of the text format; `transitions` maps each symbol to its
/// transformation in the same notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonJson {
    pub states: usize,
    pub alphabet: Vec<String>,
    pub start: usize,
    pub finals: Vec<usize>,
    pub transitions: BTreeMap<String, String>,
}

impl From<&Dfa> for AutomatonJson {
    fn from(dfa: &Dfa) -> Self {
        AutomatonJson {
            states: dfa.state_count(),
            alphabet: dfa.alphabet().to_vec(),
            start: dfa.start() + 1,
            finals: dfa.finals().iter().map(|q| q + 1).collect(),
            transitions: dfa
                .alphabet()
                .iter()
                .enumerate()
                .map(|(a, s)| (s.clone(), render_map(&dfa.symbol_map(a))))
                .collect(),
        }
    }
}

impl AutomatonJson {
    /// Converts through the text format so both front ends share validation.
    pub fn to_dfa(&self) -> Result<Dfa> {
        for sym in self.transitions.keys() {
            if !self.alphabet.contains(sym) {
                return Err(Error::Format {
                    line: 0,
                    msg: format!("symbol `{sym}` is not in the alphabet"),
                });
            }
        }
        if self
            .alphabet
            .iter()
            .any(|s| s.is_empty() || s.contains('#') || s.contains(char::is_whitespace))
        {
            return Err(Error::Malformed("invalid symbol name".into()));
        }
        let mut text = format!(
            "states: {}\nalphabet: {}\nstart: {}\nfinals: {}\n",
            self.states,
            self.alphabet.join(" "),
            self.start,
            self.finals.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")
        );
        for sym in &self.alphabet {
            if let Some(tf) = self.transitions.get(sym) {
                if tf.contains('\n') || tf.contains('#') {
                    return Err(Error::Malformed(format!("transformation for `{sym}` spans lines")));
                }
                let _ = writeln!(text, "{sym}: {tf}");
            }
        }
        parse_text(&text)
    }
}

pub fn parse_json(text: &str) -> Result<Dfa> {
    let parsed: AutomatonJson = serde_json::from_str(text).map_err(|e| Error::Format {
        line: e.line(),
        msg: e.to_string(),
    })?;
    parsed.to_dfa()
}

pub fn to_json(dfa: &Dfa) -> String {
    serde_json::to_string_pretty(&AutomatonJson::from(dfa)).expect("plain data serializes")
}

/// Reads either format, choosing JSON when the input starts with `{`.
pub fn parse_any(text: &str) -> Result<Dfa> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering; parallel edges are merged into one labelled edge.
pub fn to_dot(dfa: &Dfa, name: &str) -> String {
    let mut edges: BTreeMap<(usize, usize), Vec<&str>> = BTreeMap::new();
    for q in 0..dfa.state_count() {
        for (a, sym) in dfa.alphabet().iter().enumerate() {
            edges.entry((q, dfa.next(q, a))).or_default().push(sym);
        }
    }
    let finals = dfa.finals();
    render_dot(name, dfa.state_count(), &[dfa.start()], &finals, &edges)
}

pub fn nfa_to_dot(nfa: &Nfa, name: &str) -> String {
    let mut edges: BTreeMap<(usize, usize), Vec<&str>> = BTreeMap::new();
    for t in nfa.transitions() {
        let label = match t.label {
            Label::Epsilon => "ε",
            Label::Symbol(a) => nfa.alphabet()[a].as_str(),
        };
        edges.entry((t.from, t.to)).or_default().push(label);
    }
    render_dot(name, nfa.state_count(), nfa.initials(), nfa.finals(), &edges)
}

fn render_dot(
    name: &str,
    states: usize,
    initials: &[usize],
    finals: &[usize],
    edges: &BTreeMap<(usize, usize), Vec<&str>>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(name));
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=circle];");
    for q in 0..states {
        let shape = if finals.contains(&q) { " shape=doublecircle" } else { "" };
        let _ = writeln!(out, "  q{q} [label=\"{}\"{shape}];", q + 1);
    }
    for (i, &q) in initials.iter().enumerate() {
        let _ = writeln!(out, "  init{i} [shape=point];");
        let _ = writeln!(out, "  init{i} -> q{q};");
    }
    for ((p, q), labels) in edges {
        let _ = writeln!(out, "  q{p} -> q{q} [label=\"{}\"];", dot_escape(&labels.join(",")));
    }
    out.push_str("}\n");
    out
}

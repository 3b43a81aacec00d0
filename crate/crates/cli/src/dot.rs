//! A DOT subset for DAGs, Hasse diagrams and chain graphs: node and edge
//! statements (`a -> b -> c`, `a -- b`), with attribute lists and graph
//! attributes accepted and ignored. Arrows point from cause to effect.

use finspace::graphs::{ChainGraph, Dag, HasseDiagram};

use crate::error::CliError;

/// Vertices in order of first appearance, and the edges between them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DotGraph {
    pub vertices: Vec<String>,
    pub directed: Vec<(String, String)>,
    pub undirected: Vec<(String, String)>,
}

impl DotGraph {
    fn touch(&mut self, v: &str) {
        if !self.vertices.iter().any(|u| u == v) {
            self.vertices.push(v.to_owned());
        }
    }

    pub fn to_dag(&self, origin: &str) -> Result<Dag, CliError> {
        if let Some((a, b)) = self.undirected.first() {
            return Err(CliError::parse(origin, format!("undirected edge `{a} -- {b}` in a DAG")));
        }
        Ok(Dag::new(&self.vertices, &self.directed)?)
    }

    pub fn to_chain_graph(&self) -> Result<ChainGraph, CliError> {
        Ok(ChainGraph::new(&self.vertices, &self.directed, &self.undirected)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Arrow,
    Line,
    Open,
    Close,
    OpenAttr,
    CloseAttr,
    Semi,
    Comma,
    Eq,
}

fn lex(text: &str, origin: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut line = 1;
    let mut i = 0;
    let err = |line: usize, m: String| CliError::parse(format!("{origin}:{line}"), m);
    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            '#' if out.last().is_none_or(|t: &(Tok, usize)| t.1 < line) => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                let start = line;
                i += 2;
                loop {
                    match chars.get(i) {
                        None => return Err(err(start, "unterminated comment".to_owned())),
                        Some('*') if chars.get(i + 1) == Some(&'/') => {
                            i += 2;
                            break;
                        }
                        Some(ch) => {
                            if *ch == '\n' {
                                line += 1;
                            }
                            i += 1;
                        }
                    }
                }
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((Tok::Arrow, line));
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                out.push((Tok::Line, line));
                i += 2;
            }
            '{' | '}' | '[' | ']' | ';' | ',' | '=' => {
                let t = match c {
                    '{' => Tok::Open,
                    '}' => Tok::Close,
                    '[' => Tok::OpenAttr,
                    ']' => Tok::CloseAttr,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    _ => Tok::Eq,
                };
                out.push((t, line));
                i += 1;
            }
            '"' => {
                let start = line;
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(err(start, "unterminated string".to_owned())),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') if chars.get(i + 1) == Some(&'"') => {
                            s.push('"');
                            i += 2;
                        }
                        Some('\\') if chars.get(i + 1) == Some(&'\\') => {
                            s.push('\\');
                            i += 2;
                        }
                        Some(ch) => {
                            if *ch == '\n' {
                                line += 1;
                            }
                            s.push(*ch);
                            i += 1;
                        }
                    }
                }
                out.push((Tok::Id(s), start));
            }
            c if is_bare(c) => {
                let start = i;
                while i < chars.len() && is_bare(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Id(chars[start..i].iter().collect()), line));
            }
            c => return Err(err(line, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

fn is_bare(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.'
}

pub fn parse_dot(text: &str, origin: &str) -> Result<DotGraph, CliError> {
    let toks = lex(text, origin)?;
    let mut pos = 0;
    let last_line = toks.last().map_or(1, |t| t.1);
    let at = |pos: usize| format!("{origin}:{}", toks.get(pos).map_or(last_line, |t| t.1));
    let keyword = |pos: usize, k: &str| matches!(toks.get(pos), Some((Tok::Id(s), _)) if s.eq_ignore_ascii_case(k));

    if keyword(pos, "strict") {
        pos += 1;
    }
    let directed = if keyword(pos, "digraph") {
        true
    } else if keyword(pos, "graph") {
        false
    } else {
        return Err(CliError::parse(at(pos), "expected `digraph` or `graph`"));
    };
    pos += 1;
    if matches!(toks.get(pos), Some((Tok::Id(_), _))) {
        pos += 1;
    }
    if toks.get(pos).map(|t| &t.0) != Some(&Tok::Open) {
        return Err(CliError::parse(at(pos), "expected `{`"));
    }
    pos += 1;

    let mut g = DotGraph::default();
    loop {
        match toks.get(pos).map(|t| &t.0) {
            None => return Err(CliError::parse(at(pos), "missing `}`")),
            Some(Tok::Close) => {
                pos += 1;
                break;
            }
            Some(Tok::Semi) => pos += 1,
            Some(Tok::OpenAttr) => pos = skip_attrs(&toks, pos, &at)?,
            Some(Tok::Id(_)) if keyword(pos, "subgraph") => {
                return Err(CliError::parse(at(pos), "subgraphs are not supported"));
            }
            Some(Tok::Id(_))
                if (keyword(pos, "node") || keyword(pos, "edge") || keyword(pos, "graph"))
                    && toks.get(pos + 1).map(|t| &t.0) == Some(&Tok::OpenAttr) =>
            {
                pos = skip_attrs(&toks, pos + 1, &at)?;
            }
            Some(Tok::Id(first)) => {
                if toks.get(pos + 1).map(|t| &t.0) == Some(&Tok::Eq) {
                    // Graph attribute `key = value`.
                    if !matches!(toks.get(pos + 2), Some((Tok::Id(_), _))) {
                        return Err(CliError::parse(at(pos + 2), "expected a value after `=`"));
                    }
                    pos += 3;
                    continue;
                }
                let mut prev = first.clone();
                g.touch(&prev);
                pos += 1;
                while let Some(op) = toks.get(pos).map(|t| t.0.clone()).filter(|t| *t == Tok::Arrow || *t == Tok::Line) {
                    if op == Tok::Arrow && !directed {
                        return Err(CliError::parse(at(pos), "`->` in an undirected graph"));
                    }
                    let Some((Tok::Id(next), _)) = toks.get(pos + 1) else {
                        return Err(CliError::parse(at(pos + 1), "expected a node after the edge operator"));
                    };
                    g.touch(next);
                    let e = (prev.clone(), next.clone());
                    if op == Tok::Arrow {
                        g.directed.push(e);
                    } else {
                        g.undirected.push(e);
                    }
                    prev = next.clone();
                    pos += 2;
                }
                if toks.get(pos).map(|t| &t.0) == Some(&Tok::OpenAttr) {
                    pos = skip_attrs(&toks, pos, &at)?;
                }
            }
            Some(_) => return Err(CliError::parse(at(pos), "unexpected token")),
        }
    }
    if pos < toks.len() {
        return Err(CliError::parse(at(pos), "content after the closing `}`"));
    }
    Ok(g)
}

fn skip_attrs(toks: &[(Tok, usize)], mut pos: usize, at: &dyn Fn(usize) -> String) -> Result<usize, CliError> {
    let start = pos;
    pos += 1;
    loop {
        match toks.get(pos).map(|t| &t.0) {
            None => return Err(CliError::parse(at(start), "unterminated attribute list")),
            Some(Tok::CloseAttr) => return Ok(pos + 1),
            Some(Tok::Id(_) | Tok::Eq | Tok::Comma | Tok::Semi) => pos += 1,
            Some(_) => return Err(CliError::parse(at(pos), "unexpected token in attribute list")),
        }
    }
}

fn quote(id: &str) -> String {
    let plain = id.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    let keyword = ["node", "edge", "graph", "digraph", "subgraph", "strict"]
        .iter()
        .any(|k| id.eq_ignore_ascii_case(k));
    if plain && !keyword {
        id.to_owned()
    } else {
        format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Canonical DOT: vertices sorted, then edges sorted by endpoint labels.
pub fn write_dot(vertices: &[String], directed: &[(&str, &str)], undirected: &[(&str, &str)]) -> String {
    let mut vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    vs.sort();
    let mut d = directed.to_vec();
    d.sort();
    let mut u: Vec<(&str, &str)> = undirected.iter().map(|&(a, b)| if a <= b { (a, b) } else { (b, a) }).collect();
    u.sort();
    let mut s = String::from("digraph {\n");
    for v in vs {
        s += &format!("  {};\n", quote(v));
    }
    for (a, b) in d {
        s += &format!("  {} -> {};\n", quote(a), quote(b));
    }
    for (a, b) in u {
        s += &format!("  {} -- {};\n", quote(a), quote(b));
    }
    s += "}\n";
    s
}

pub fn dag_to_dot(dag: &Dag) -> String {
    write_dot(dag.vertices(), &dag.edge_labels(), &[])
}

/// Cover edges drawn cause to effect.
pub fn hasse_to_dot(h: &HasseDiagram) -> String {
    write_dot(h.vertices(), &h.edge_labels(), &[])
}

pub fn chain_graph_to_dot(cg: &ChainGraph) -> String {
    let v = cg.vertices();
    let d: Vec<(&str, &str)> = cg.directed().iter().map(|&(a, b)| (v[a].as_str(), v[b].as_str())).collect();
    let u: Vec<(&str, &str)> = cg.undirected().iter().map(|&(a, b)| (v[a].as_str(), v[b].as_str())).collect();
    write_dot(v, &d, &u)
}

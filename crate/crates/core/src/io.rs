//! Text formats: DIMACS-style graphs, forest parent lists, and PACE-style
//! tree decompositions. Vertices are 1-based in all files and mapped to the
//! crate's 0-based ids here.

use crate::error::{Error, Result};
use crate::forest::{EliminationForest, TreeDecomposition};
use crate::graph::Graph;

/// Parse a graph:
///
/// ```text
/// c comment lines are ignored
/// p sp <n> <m> <d|u>
/// a <u> <v> <w>       (m lines, 1-based endpoints, integer weight)
/// ```
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0usize;
    let mut seen_m = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if graph.is_some() {
                    return Err(Error::input(lineno, "duplicate problem line"));
                }
                if fields.len() != 5 || fields[1] != "sp" {
                    return Err(Error::input(lineno, "expected `p sp <n> <m> <d|u>`"));
                }
                let n: usize = parse_field(fields[2], lineno, "vertex count")?;
                declared_m = parse_field(fields[3], lineno, "edge count")?;
                let directed = match fields[4] {
                    "d" => true,
                    "u" => false,
                    other => {
                        return Err(Error::input(
                            lineno,
                            format!("direction flag must be `d` or `u`, got `{other}`"),
                        ))
                    }
                };
                graph = Some(if directed {
                    Graph::directed(n, &[])?
                } else {
                    Graph::undirected(n, &[])?
                });
            }
            "a" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| Error::input(lineno, "edge before problem line"))?;
                if fields.len() != 4 {
                    return Err(Error::input(lineno, "expected `a <u> <v> <w>`"));
                }
                let u: usize = parse_field(fields[1], lineno, "endpoint")?;
                let v: usize = parse_field(fields[2], lineno, "endpoint")?;
                let w: i64 = parse_field(fields[3], lineno, "weight")?;
                if u == 0 || v == 0 {
                    return Err(Error::input(lineno, "vertex ids are 1-based"));
                }
                g.push_edge(u - 1, v - 1, w, Some(lineno))?;
                seen_m += 1;
            }
            other => {
                return Err(Error::input(
                    lineno,
                    format!("unrecognized line type `{other}`"),
                ));
            }
        }
    }
    let mut g = graph.ok_or_else(|| Error::input(None, "missing problem line"))?;
    if seen_m != declared_m {
        return Err(Error::input(
            None,
            format!("header declares {declared_m} edges but {seen_m} were given"),
        ));
    }
    g.sort_adjacency();
    Ok(g)
}

/// Inverse of [`parse_graph`], preserving edge order.
pub fn print_graph(g: &Graph) -> String {
    let mut out = format!(
        "p sp {} {} {}\n",
        g.n(),
        g.m(),
        if g.is_directed() { "d" } else { "u" }
    );
    for e in g.edges() {
        out.push_str(&format!("a {} {} {}\n", e.u + 1, e.v + 1, e.w));
    }
    out
}

/// Parse a forest as n lines `<vertex> <parent>` with 1-based ids and
/// parent 0 meaning "root". Every vertex must appear exactly once.
pub fn parse_forest(text: &str, n: usize) -> Result<EliminationForest> {
    let mut parent: Vec<Option<Option<usize>>> = vec![None; n];
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::input(lineno, "expected `<vertex> <parent>`"));
        }
        let v: usize = parse_field(fields[0], lineno, "vertex")?;
        let p: usize = parse_field(fields[1], lineno, "parent")?;
        if v == 0 || v > n {
            return Err(Error::input(lineno, format!("vertex {v} out of range 1..={n}")));
        }
        if p > n {
            return Err(Error::input(lineno, format!("parent {p} out of range 0..={n}")));
        }
        if parent[v - 1].is_some() {
            return Err(Error::input(lineno, format!("vertex {v} listed twice")));
        }
        parent[v - 1] = Some(if p == 0 { None } else { Some(p - 1) });
    }
    let parent: Vec<Option<usize>> = parent
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| Error::input(None, format!("vertex {} missing", v + 1))))
        .collect::<Result<_>>()?;
    EliminationForest::from_parents(parent)
}

pub fn print_forest(f: &EliminationForest) -> String {
    let mut out = String::new();
    for v in 0..f.n() {
        let p = f.parent(v).map_or(0, |p| p + 1);
        out.push_str(&format!("{} {}\n", v + 1, p));
    }
    out
}

/// Parse a PACE-style tree decomposition:
///
/// ```text
/// s td <#bags> <width+1> <n>
/// b <i> <v...>            (bag i, 1-based)
/// <x> <y>                 (bag-tree edges)
/// ```
///
/// Returns the decomposition and the declared vertex count.
pub fn parse_tree_decomposition(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut tree: Vec<(usize, usize)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "s" => {
                if header.is_some() {
                    return Err(Error::input(lineno, "duplicate header"));
                }
                if fields.len() != 5 || fields[1] != "td" {
                    return Err(Error::input(lineno, "expected `s td <#bags> <width+1> <n>`"));
                }
                let nb: usize = parse_field(fields[2], lineno, "bag count")?;
                let w: usize = parse_field(fields[3], lineno, "width")?;
                let n: usize = parse_field(fields[4], lineno, "vertex count")?;
                header = Some((nb, w, n));
                bags = vec![None; nb];
            }
            "b" => {
                let (nb, _, n) =
                    header.ok_or_else(|| Error::input(lineno, "bag before header"))?;
                if fields.len() < 2 {
                    return Err(Error::input(lineno, "expected `b <i> <v...>`"));
                }
                let i: usize = parse_field(fields[1], lineno, "bag index")?;
                if i == 0 || i > nb {
                    return Err(Error::input(lineno, format!("bag index {i} out of range")));
                }
                if bags[i - 1].is_some() {
                    return Err(Error::input(lineno, format!("bag {i} listed twice")));
                }
                let mut bag = Vec::new();
                for f in &fields[2..] {
                    let v: usize = parse_field(f, lineno, "bag vertex")?;
                    if v == 0 || v > n {
                        return Err(Error::input(lineno, format!("vertex {v} out of range")));
                    }
                    bag.push(v - 1);
                }
                bags[i - 1] = Some(bag);
            }
            _ => {
                let (nb, _, _) =
                    header.ok_or_else(|| Error::input(lineno, "edge before header"))?;
                if fields.len() != 2 {
                    return Err(Error::input(lineno, "expected `<x> <y>` bag-tree edge"));
                }
                let x: usize = parse_field(fields[0], lineno, "bag index")?;
                let y: usize = parse_field(fields[1], lineno, "bag index")?;
                if x == 0 || x > nb || y == 0 || y > nb {
                    return Err(Error::input(lineno, "bag-tree edge out of range"));
                }
                tree.push((x - 1, y - 1));
            }
        }
    }
    let (_, _, n) = header.ok_or_else(|| Error::input(None, "missing `s td` header"))?;
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::input(None, format!("bag {} missing", i + 1))))
        .collect::<Result<_>>()?;
    Ok((TreeDecomposition { bags, tree }, n))
}

fn parse_field<T: std::str::FromStr>(s: &str, lineno: usize, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::input(lineno, format!("cannot parse {what} from `{s}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_directed_graph() {
        let g = parse_graph("p sp 2 1 d\na 1 2 -3\n").unwrap();
        assert!(g.is_directed());
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge(0).w, -3);
    }

    #[test]
    fn parse_undirected_triangle() {
        let g = parse_graph("p sp 3 3 u\na 1 2 1\na 2 3 1\na 1 3 1\n").unwrap();
        assert!(!g.is_directed());
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_graph("p sp 2 1 d\na 1 1 0\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse_graph("p sp 2 2 d\na 1 2 0\n").is_err()); // count mismatch
        assert!(parse_graph("p sp 2 2 d\na 1 2 0\na 1 2 5\n").is_err()); // duplicate
    }

    #[test]
    fn forest_round_trip_and_errors() {
        let f = parse_forest("1 0\n2 1\n3 2\n", 3).unwrap();
        assert_eq!(f.depth(), 3);
        assert!(parse_forest("1 2\n2 1\n", 2).is_err()); // cycle
        let all_roots = parse_forest("1 0\n2 0\n3 0\n", 3).unwrap();
        assert_eq!(all_roots.depth(), 1);
        assert!(parse_forest("1 0\n1 0\n", 2).is_err()); // duplicate vertex
    }

    #[test]
    fn decomposition_parses() {
        let text = "s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n";
        let (td, n) = parse_tree_decomposition(text).unwrap();
        assert_eq!(n, 4);
        assert_eq!(td.bags.len(), 3);
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn graph_print_parse_round_trip() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let n = rng.gen_range(0..10);
            let directed = rng.gen_bool(0.5);
            let g = crate::gen::random_graph(n, 0.4, -9..=9, directed, &mut rng);
            let back = parse_graph(&print_graph(&g)).unwrap();
            assert_eq!(g, back);
        }
    }
}

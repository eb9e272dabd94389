//! Graphs, colorings and list assignments.
//!
//! Vertices are `0..n` and the vertex order used for tie-breaking anywhere
//! in the crate is ascending index. Colors are 0-based.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Static simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    max_degree: usize,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            max_degree: 0,
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if adjacency[u].contains(&v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Graph {
            adjacency,
            max_degree,
            edge_count: edges.len(),
        })
    }

    /// Parses the edge-list format: first significant line is `n`, then one
    /// `u v` pair per line. Blank lines and lines starting with `#` are
    /// skipped. Errors name the offending (1-based) line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line: first,
            message: format!("expected vertex count, found {header:?}"),
        })?;
        let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut edges = Vec::new();
        for (line, text) in lines {
            let fail = |message: String| Error::Parse { line, message };
            let fields: Vec<&str> = text.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(fail(format!("expected \"u v\", found {text:?}")));
            }
            let u: usize = fields[0]
                .parse()
                .map_err(|_| fail(format!("bad vertex {:?}", fields[0])))?;
            let v: usize = fields[1]
                .parse()
                .map_err(|_| fail(format!("bad vertex {:?}", fields[1])))?;
            if u >= n || v >= n {
                return Err(fail(format!("vertex {} out of range (n = {n})", u.max(v))));
            }
            if u == v {
                return Err(fail(format!("self-loop at vertex {u}")));
            }
            if !adjacency[u].insert(v) {
                return Err(fail(format!("duplicate edge {}-{}", u.min(v), u.max(v))));
            }
            adjacency[v].insert(u);
            edges.push((u.min(v), u.max(v)));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

/// A (not necessarily proper) assignment of colors `0..k` to vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, k: usize) -> Result<Self> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::InvalidColor { vertex, color });
        }
        Ok(Coloring { colors, k })
    }

    /// Parses whitespace-separated color indices.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut colors = Vec::new();
        for (i, line) in text.lines().enumerate() {
            for tok in line.split_whitespace() {
                let c = tok.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("bad color {tok:?}"),
                })?;
                colors.push(c);
            }
        }
        Coloring::new(colors, k)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.colors.iter().map(usize::to_string).collect();
        parts.join(" ")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, u: usize) -> usize {
        self.colors[u]
    }

    pub fn set(&mut self, u: usize, c: usize) {
        debug_assert!(c < self.k);
        self.colors[u] = c;
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colors
    }

    pub fn hamming(&self, other: &Coloring) -> usize {
        self.colors
            .iter()
            .zip(&other.colors)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Counts of each color, indexed by color.
    pub fn histogram(&self) -> Vec<usize> {
        let mut counts = vec![0; self.k];
        for &c in &self.colors {
            counts[c] += 1;
        }
        counts
    }

    /// Relabels colors in order of first appearance. Two colorings are
    /// related by a permutation of the palette iff their relabelings agree.
    pub fn canonical_relabel(&self) -> Coloring {
        let mut map = vec![usize::MAX; self.k];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Coloring { colors, k: self.k }
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// True iff no edge of `graph` is monochromatic under `coloring`.
pub fn is_proper(graph: &Graph, coloring: &Coloring) -> Result<bool> {
    check_size(graph, coloring)?;
    Ok(graph
        .edges()
        .all(|(u, v)| coloring.get(u) != coloring.get(v)))
}

pub(crate) fn check_size(graph: &Graph, coloring: &Coloring) -> Result<()> {
    if coloring.len() != graph.n() {
        return Err(Error::SizeMismatch {
            expected: graph.n(),
            found: coloring.len(),
        });
    }
    Ok(())
}

/// Per-vertex sorted color lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<usize>>,
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<usize>>) -> Result<Self> {
        for (u, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidLists(format!("repeated color in list of vertex {u}")));
            }
            if list.is_empty() {
                return Err(Error::InvalidLists(format!("empty list at vertex {u}")));
            }
        }
        Ok(ListAssignment { lists })
    }

    /// Every vertex gets the full palette `0..k`.
    pub fn uniform(n: usize, k: usize) -> Self {
        ListAssignment {
            lists: vec![(0..k).collect(); n],
        }
    }

    /// Line `i` holds the space-separated colors of vertex `i`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lists = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let list = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: format!("bad color {tok:?}"),
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            lists.push(list);
        }
        ListAssignment::new(lists)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for list in &self.lists {
            let parts: Vec<String> = list.iter().map(usize::to_string).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, u: usize) -> &[usize] {
        &self.lists[u]
    }

    pub fn contains(&self, u: usize, c: usize) -> bool {
        self.lists[u].binary_search(&c).is_ok()
    }

    /// The common list size, if every list has the same length.
    pub fn k(&self) -> Option<usize> {
        let first = self.lists.first()?.len();
        self.lists.iter().all(|l| l.len() == first).then_some(first)
    }

    /// One more than the largest color in any list.
    pub fn universe(&self) -> usize {
        self.lists
            .iter()
            .filter_map(|l| l.last())
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Removes `color` from the list of `u`.
    pub fn without(&self, u: usize, color: usize) -> Result<Self> {
        let mut lists = self.lists.clone();
        lists[u].retain(|&c| c != color);
        ListAssignment::new(lists)
    }

    pub fn is_list_coloring(&self, coloring: &Coloring) -> bool {
        coloring.len() == self.n()
            && (0..self.n()).all(|u| self.contains(u, coloring.get(u)))
    }
}

/// The set of colors each vertex may take: the full palette `0..k`, or a
/// list assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Palette {
    Uniform(usize),
    Lists(ListAssignment),
}

impl Palette {
    /// Size of the color universe (`k`, or one past the largest listed color).
    pub fn universe(&self) -> usize {
        match self {
            Palette::Uniform(k) => *k,
            Palette::Lists(l) => l.universe(),
        }
    }

    pub fn allows(&self, u: usize, c: usize) -> bool {
        match self {
            Palette::Uniform(k) => c < *k,
            Palette::Lists(l) => l.contains(u, c),
        }
    }

    pub fn choices(&self, u: usize) -> Vec<usize> {
        match self {
            Palette::Uniform(k) => (0..*k).collect(),
            Palette::Lists(l) => l.list(u).to_vec(),
        }
    }

    pub fn choice_count(&self, u: usize) -> usize {
        match self {
            Palette::Uniform(k) => *k,
            Palette::Lists(l) => l.list(u).len(),
        }
    }
}

/// Colors vertices in index order with the smallest allowed color unused by
/// earlier neighbours, falling back to the first allowed color.
pub fn greedy_coloring(graph: &Graph, palette: &Palette) -> Coloring {
    let mut colors: Vec<usize> = Vec::with_capacity(graph.n());
    for u in 0..graph.n() {
        let choices = palette.choices(u);
        let free = choices
            .iter()
            .copied()
            .find(|&c| graph.neighbors(u).iter().all(|&w| w >= u || colors[w] != c));
        colors.push(free.or_else(|| choices.first().copied()).unwrap_or(0));
    }
    Coloring::new(colors, palette.universe().max(1)).expect("colors drawn from the palette")
}

/// All proper colorings in lexicographic order, by backtracking. Stops and
/// returns `None` once more than `cap` have been found.
pub fn proper_colorings(graph: &Graph, palette: &Palette, cap: usize) -> Option<Vec<Coloring>> {
    let n = graph.n();
    let k = palette.universe();
    let choices: Vec<Vec<usize>> = (0..n).map(|u| palette.choices(u)).collect();
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    let mut idx = vec![0usize; n];
    if n == 0 {
        return Some(vec![Coloring { colors: vec![], k }]);
    }
    let mut depth = 0usize;
    loop {
        if idx[depth] == choices[depth].len() {
            if depth == 0 {
                break;
            }
            idx[depth] = 0;
            depth -= 1;
            idx[depth] += 1;
            continue;
        }
        let c = choices[depth][idx[depth]];
        let clash = graph
            .neighbors(depth)
            .iter()
            .any(|&w| w < depth && current[w] == c);
        if clash {
            idx[depth] += 1;
            continue;
        }
        current[depth] = c;
        if depth + 1 == n {
            out.push(Coloring {
                colors: current.clone(),
                k,
            });
            if out.len() > cap {
                return None;
            }
            idx[depth] += 1;
        } else {
            depth += 1;
        }
    }
    Some(out)
}

//! Kempe components of (possibly improper) colorings.
//!
//! `S_σ(u, c)` is the set of vertices reachable from `u` along paths whose
//! colors alternate between `σ(u)` and `c`. Adjacent vertices of the same
//! color are never linked inside a two-colored component, so the definition
//! stays meaningful for improper colorings. When `c = σ(u)` the component is
//! the monochromatic connected class of `u` and flipping it is the identity.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph, ListAssignment};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KempeComponent {
    /// Color of the anchor vertex.
    pub c1: usize,
    pub c2: usize,
    /// Sorted vertex set.
    pub vertices: Vec<usize>,
    /// The `(u, c)` pair that generated the component.
    pub anchor: (usize, usize),
}

/// Identity of a component inside `K_σ`: unordered color pair plus vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentKey {
    pub low: usize,
    pub high: usize,
    pub vertices: Vec<usize>,
}

impl KempeComponent {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_monochromatic(&self) -> bool {
        self.c1 == self.c2
    }

    pub fn contains(&self, u: usize) -> bool {
        self.vertices.binary_search(&u).is_ok()
    }

    pub fn key(&self) -> ComponentKey {
        ComponentKey {
            low: self.c1.min(self.c2),
            high: self.c1.max(self.c2),
            vertices: self.vertices.clone(),
        }
    }
}

/// Breadth-first alternating search. With a cap, exploration stops as soon
/// as `cap` vertices are found and `None` is returned.
fn explore(graph: &Graph, colors: &[usize], u: usize, c: usize, cap: Option<usize>) -> Option<Vec<usize>> {
    let c1 = colors[u];
    let step_to = |x: usize| if colors[x] == c1 { c } else { c1 };
    let mut found = vec![u];
    if cap == Some(1) {
        return None;
    }
    let mut seen = if cap.is_none() { vec![false; graph.n()] } else { Vec::new() };
    if !seen.is_empty() {
        seen[u] = true;
    }
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let want = step_to(x);
        for &w in graph.neighbors(x) {
            if colors[w] != want {
                continue;
            }
            let fresh = if seen.is_empty() {
                !found.contains(&w)
            } else {
                !std::mem::replace(&mut seen[w], true)
            };
            if fresh {
                found.push(w);
                if cap.is_some_and(|cap| found.len() >= cap) {
                    return None;
                }
                queue.push_back(w);
            }
        }
    }
    found.sort_unstable();
    Some(found)
}

/// `S_σ(u, c)` with `c1 = σ(u)` and `c2 = c`.
pub fn component(graph: &Graph, sigma: &Coloring, u: usize, c: usize) -> KempeComponent {
    let vertices = explore(graph, sigma.as_slice(), u, c, None).expect("uncapped search");
    KempeComponent {
        c1: sigma.get(u),
        c2: c,
        vertices,
        anchor: (u, c),
    }
}

/// Like [`component`], but gives up (returning `None`) once the component
/// reaches `cap` vertices.
pub fn component_capped(
    graph: &Graph,
    sigma: &Coloring,
    u: usize,
    c: usize,
    cap: usize,
) -> Option<KempeComponent> {
    explore(graph, sigma.as_slice(), u, c, Some(cap)).map(|vertices| KempeComponent {
        c1: sigma.get(u),
        c2: c,
        vertices,
        anchor: (u, c),
    })
}

/// Swaps the two component colors on its vertex set.
pub fn flip(sigma: &Coloring, comp: &KempeComponent) -> Result<Coloring> {
    let mut out = sigma.clone();
    flip_in_place(&mut out, comp)?;
    Ok(out)
}

pub fn flip_in_place(sigma: &mut Coloring, comp: &KempeComponent) -> Result<()> {
    if let Some(&stale) = comp
        .vertices
        .iter()
        .find(|&&w| sigma.get(w) != comp.c1 && sigma.get(w) != comp.c2)
    {
        return Err(Error::StaleComponent(stale));
    }
    if comp.is_monochromatic() {
        return Ok(());
    }
    for &w in &comp.vertices {
        let new = if sigma.get(w) == comp.c1 { comp.c2 } else { comp.c1 };
        sigma.set(w, new);
    }
    Ok(())
}

/// True iff both component colors are in the list of every component vertex.
pub fn is_flippable(lists: &ListAssignment, comp: &KempeComponent) -> bool {
    comp.vertices
        .iter()
        .all(|&u| lists.contains(u, comp.c1) && lists.contains(u, comp.c2))
}

#[derive(Clone, Debug)]
pub struct MultisetEntry {
    pub component: KempeComponent,
    /// Every `(u, c)` with `S_σ(u, c)` equal to this component.
    pub generators: Vec<(usize, usize)>,
}

/// `K_σ`: each distinct component once, together with its generating pairs.
#[derive(Clone, Debug, Default)]
pub struct ComponentMultiset {
    entries: Vec<MultisetEntry>,
    index: HashMap<ComponentKey, usize>,
}

impl ComponentMultiset {
    pub fn entries(&self) -> &[MultisetEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, key: &ComponentKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Total number of generating pairs; `kn` for a full palette.
    pub fn generator_count(&self) -> usize {
        self.entries.iter().map(|e| e.generators.len()).sum()
    }

    fn push(&mut self, component: KempeComponent, generators: Vec<(usize, usize)>) {
        self.index.insert(component.key(), self.entries.len());
        self.entries.push(MultisetEntry {
            component,
            generators,
        });
    }
}

/// Partitions the vertices colored `c1` or `c2` into alternating classes.
fn classes(graph: &Graph, colors: &[usize], c1: usize, c2: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut seen = vec![false; graph.n()];
    for u in 0..graph.n() {
        if seen[u] || (colors[u] != c1 && colors[u] != c2) {
            continue;
        }
        let other = if colors[u] == c1 { c2 } else { c1 };
        let vertices = explore(graph, colors, u, other, None).expect("uncapped search");
        for &w in &vertices {
            seen[w] = true;
        }
        out.push(vertices);
    }
    out
}

fn collect(
    graph: &Graph,
    sigma: &Coloring,
    universe: usize,
    allowed: impl Fn(usize, usize) -> bool,
) -> ComponentMultiset {
    let colors = sigma.as_slice();
    let mut multiset = ComponentMultiset::default();
    for low in 0..universe {
        for high in low..universe {
            for vertices in classes(graph, colors, low, high) {
                let other = |w: usize| if colors[w] == low { high } else { low };
                let generators: Vec<_> = vertices
                    .iter()
                    .map(|&w| (w, other(w)))
                    .filter(|&(w, c)| allowed(w, c))
                    .collect();
                let Some(&anchor) = generators.first() else {
                    continue;
                };
                let component = KempeComponent {
                    c1: colors[anchor.0],
                    c2: anchor.1,
                    vertices,
                    anchor,
                };
                multiset.push(component, generators);
            }
        }
    }
    multiset
}

/// `K_σ` over the palette `0..k`.
pub fn enumerate_components(graph: &Graph, sigma: &Coloring, k: usize) -> ComponentMultiset {
    collect(graph, sigma, k.max(sigma.k()), |_, c| c < k)
}

/// `K^L_σ`: components generated by some `(u, c)` with `c ∈ L(u)`.
pub fn enumerate_components_list(
    graph: &Graph,
    sigma: &Coloring,
    lists: &ListAssignment,
) -> ComponentMultiset {
    collect(graph, sigma, lists.universe().max(sigma.k()), |u, c| lists.contains(u, c))
}

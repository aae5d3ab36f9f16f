//! Immutable r-uniform hypergraphs on the vertex set `0..n`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dense 0-based vertex id.
pub type Vertex = u32;

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    members: Vec<Vertex>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set from arbitrary ids, sorting and deduplicating.
    pub fn from_iter_unsorted<I: IntoIterator<Item = Vertex>>(ids: I) -> Self {
        let mut members: Vec<Vertex> = ids.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    /// Wraps an already sorted, duplicate-free vector.
    pub(crate) fn from_sorted(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { members }
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter_unsorted(self.iter().chain(other.iter()))
    }

    /// `{0..n} \ self`.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet::from_sorted((0..n as Vertex).filter(|v| !self.contains(*v)).collect())
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.members
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::from_iter_unsorted(iter)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        VertexSet::from_iter_unsorted(v)
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(v: [Vertex; N]) -> Self {
        VertexSet::from_iter_unsorted(v)
    }
}

/// Text form is `{0,1,2}`; the empty set is `{}`.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for VertexSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::input(format!("vertex set must look like {{0,1,2}}: {s:?}")))?;
        inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<Vertex>()
                    .map_err(|_| Error::input(format!("bad vertex id {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(VertexSet::from)
    }
}

/// An r-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored sorted (each edge ascending, the edge list
/// lexicographic) and deduplicated. Per-vertex incidence lists are built at
/// construction. When `block_size` is set the instance is r-partite with
/// contiguous blocks `[i*s, (i+1)*s)` for `i in 0..r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    /// Flat edge storage, `r` ids per edge.
    flat: Vec<Vertex>,
    incidence: Vec<Vec<u32>>,
    block_size: Option<usize>,
}

impl Hypergraph {
    /// Builds an r-graph from an edge list. Each edge is sorted; duplicates
    /// are merged.
    pub fn new<E, I>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        E: AsRef<[Vertex]>,
        I: IntoIterator<Item = E>,
    {
        Self::build(n, r, edges, None)
    }

    /// Builds an r-partite r-graph with `r` contiguous blocks of
    /// `block_size` vertices; every edge must meet each block exactly once.
    pub fn new_partite<E, I>(block_size: usize, r: usize, edges: I) -> Result<Self>
    where
        E: AsRef<[Vertex]>,
        I: IntoIterator<Item = E>,
    {
        Self::build(block_size * r, r, edges, Some(block_size))
    }

    fn build<E, I>(n: usize, r: usize, edges: I, block_size: Option<usize>) -> Result<Self>
    where
        E: AsRef<[Vertex]>,
        I: IntoIterator<Item = E>,
    {
        if r == 0 {
            return Err(Error::input("uniformity r must be at least 1"));
        }
        if n > Vertex::MAX as usize {
            return Err(Error::input("too many vertices"));
        }
        if let Some(s) = block_size {
            if s == 0 {
                return Err(Error::input("partite block size must be positive"));
            }
        }
        let mut set: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            if e.len() != r {
                return Err(Error::input(format!(
                    "edge {e:?} has {} vertices, expected {r}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                return Err(Error::input(format!("vertex {v} out of range 0..{n}")));
            }
            if let Some(s) = block_size {
                // sorted + contiguous blocks: the i-th vertex must lie in block i
                for (i, &v) in e.iter().enumerate() {
                    if v as usize / s != i {
                        return Err(Error::input(format!(
                            "edge {e:?} does not meet every block exactly once"
                        )));
                    }
                }
            }
            set.insert(e);
        }
        let mut flat = Vec::with_capacity(set.len() * r);
        let mut incidence = vec![Vec::new(); n];
        for (idx, e) in set.into_iter().enumerate() {
            for &v in &e {
                incidence[v as usize].push(idx as u32);
            }
            flat.extend(e);
        }
        Ok(Self {
            n,
            r,
            flat,
            incidence,
            block_size,
        })
    }

    /// The hypergraph with no edges.
    pub fn empty(n: usize, r: usize) -> Self {
        Self::new(n, r, std::iter::empty::<[Vertex; 0]>()).expect("empty hypergraph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn num_edges(&self) -> usize {
        self.flat.len().checked_div(self.r).unwrap_or(0)
    }

    pub fn edge(&self, idx: usize) -> &[Vertex] {
        &self.flat[idx * self.r..(idx + 1) * self.r]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.flat.chunks_exact(self.r)
    }

    /// Indices of the edges containing `v`, ascending.
    pub fn incident_edge_indices(&self, v: Vertex) -> &[u32] {
        &self.incidence[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v as usize].len()
    }

    pub fn block_size(&self) -> Option<usize> {
        self.block_size
    }

    pub fn is_partite(&self) -> bool {
        self.block_size.is_some()
    }

    /// Block index of `v` on a partite instance.
    pub fn block_of(&self, v: Vertex) -> Option<usize> {
        self.block_size.map(|s| v as usize / s)
    }

    /// The `r` blocks of a partite instance.
    pub fn blocks(&self) -> Option<Vec<VertexSet>> {
        self.block_size.map(|s| {
            (0..self.r)
                .map(|i| VertexSet::from_sorted(((i * s) as Vertex..((i + 1) * s) as Vertex).collect()))
                .collect()
        })
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::from_sorted((0..self.n as Vertex).collect())
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(Error::input(format!("vertex {v} out of range 0..{}", self.n)))
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.as_slice().last() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// Edges containing `v`, in lexicographic order.
    pub fn incident_edges(&self, v: Vertex) -> Result<Vec<&[Vertex]>> {
        self.check_vertex(v)?;
        Ok(self.incidence[v as usize]
            .iter()
            .map(|&i| self.edge(i as usize))
            .collect())
    }

    /// True iff no edge lies inside `s`.
    pub fn is_independent(&self, s: &VertexSet) -> Result<bool> {
        self.check_set(s)?;
        let mut inside = vec![false; self.n];
        for v in s.iter() {
            inside[v as usize] = true;
        }
        // Only edges incident to some member can lie inside s.
        Ok(!s.iter().any(|v| {
            self.incidence[v as usize]
                .iter()
                .any(|&e| self.edge(e as usize).iter().all(|&u| inside[u as usize]))
        }))
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        VertexSet::from_sorted(
            (0..self.n as Vertex)
                .filter(|&v| self.incidence[v as usize].is_empty())
                .collect(),
        )
    }

    /// Number of edges that meet `x` and are disjoint from `avoiding`.
    pub fn edges_meeting(&self, x: &VertexSet, avoiding: &VertexSet) -> Result<usize> {
        self.check_set(x)?;
        self.check_set(avoiding)?;
        if !x.is_disjoint(avoiding) {
            return Err(Error::input("edges_meeting: sets must be disjoint"));
        }
        let mut in_x = vec![false; self.n];
        let mut in_y = vec![false; self.n];
        for v in x.iter() {
            in_x[v as usize] = true;
        }
        for v in avoiding.iter() {
            in_y[v as usize] = true;
        }
        Ok(self
            .edges()
            .filter(|e| {
                e.iter().any(|&u| in_x[u as usize]) && !e.iter().any(|&u| in_y[u as usize])
            })
            .count())
    }

    /// Serialises to the line-oriented text format.
    ///
    /// ```text
    /// # optional comments
    /// 3 6            (or "3 6 partite 2")
    /// 0 1 2
    /// 3 4 5
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = match self.block_size {
            Some(s) => format!("{} {} partite {}\n", self.r, self.n, s),
            None => format!("{} {}\n", self.r, self.n),
        };
        for e in self.edges() {
            push_edge_line(&mut out, e);
        }
        out
    }

    /// Parses the text format written by [`Hypergraph::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let (header, edges) = parse_text(text)?;
        match header.block_size {
            Some(s) => {
                if s * header.r != header.n {
                    return Err(Error::Parse {
                        line: header.line,
                        msg: format!(
                            "partite block size {s} times r={} does not equal n={}",
                            header.r, header.n
                        ),
                    });
                }
                Self::new_partite(s, header.r, edges)
            }
            None => Self::new(header.n, header.r, edges),
        }
    }
}

pub(crate) fn push_edge_line(out: &mut String, e: &[Vertex]) {
    use std::fmt::Write;
    for (i, v) in e.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}

pub(crate) struct TextHeader {
    pub r: usize,
    pub n: usize,
    pub block_size: Option<usize>,
    pub line: usize,
}

/// Parses the header and the edge lines in file order, without sorting.
pub(crate) fn parse_text(text: &str) -> Result<(TextHeader, Vec<Vec<Vertex>>)> {
    let mut header: Option<TextHeader> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = lineno + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: String| Error::Parse { line: lineno, msg };
        match &header {
            None => {
                if toks.len() != 2 && toks.len() != 4 {
                    return Err(bad("header must be \"r n\" or \"r n partite s\"".into()));
                }
                let r = toks[0]
                    .parse()
                    .map_err(|_| bad(format!("bad r {:?}", toks[0])))?;
                let n = toks[1]
                    .parse()
                    .map_err(|_| bad(format!("bad n {:?}", toks[1])))?;
                let block_size = if toks.len() == 4 {
                    if toks[2] != "partite" {
                        return Err(bad(format!("expected \"partite\", got {:?}", toks[2])));
                    }
                    Some(
                        toks[3]
                            .parse()
                            .map_err(|_| bad(format!("bad block size {:?}", toks[3])))?,
                    )
                } else {
                    None
                };
                header = Some(TextHeader {
                    r,
                    n,
                    block_size,
                    line: lineno,
                });
            }
            Some(h) => {
                if toks.len() != h.r {
                    return Err(bad(format!("edge has {} ids, expected {}", toks.len(), h.r)));
                }
                let e = toks
                    .iter()
                    .map(|t| t.parse::<Vertex>().map_err(|_| bad(format!("bad vertex id {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                edges.push(e);
            }
        }
    }
    let header = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header line".into(),
    })?;
    Ok((header, edges))
}

/// Small named instances used throughout tests and examples.
pub mod named {
    use super::{Hypergraph, Vertex};

    /// Complete graph K_n.
    pub fn complete_graph(n: usize) -> Hypergraph {
        complete_uniform(n, 2)
    }

    /// The complete r-graph on n vertices.
    pub fn complete_uniform(n: usize, r: usize) -> Hypergraph {
        let mut edges = Vec::new();
        let mut comb: Vec<Vertex> = (0..r as Vertex).collect();
        if r <= n {
            loop {
                edges.push(comb.clone());
                // next combination in lexicographic order
                let mut i = r;
                loop {
                    if i == 0 {
                        return Hypergraph::new(n, r, edges).expect("valid");
                    }
                    i -= 1;
                    if (comb[i] as usize) < n - r + i {
                        break;
                    }
                }
                comb[i] += 1;
                for j in i + 1..r {
                    comb[j] = comb[j - 1] + 1;
                }
            }
        }
        Hypergraph::new(n, r, edges).expect("valid")
    }

    /// Path 0-1-2-...-(n-1).
    pub fn path(n: usize) -> Hypergraph {
        Hypergraph::new(n, 2, (1..n as Vertex).map(|v| [v - 1, v])).expect("valid")
    }

    /// The Fano plane: 7 points, 7 lines of 3 points.
    pub fn fano() -> Hypergraph {
        Hypergraph::new(
            7,
            3,
            [
                [0, 1, 2],
                [0, 3, 4],
                [0, 5, 6],
                [1, 3, 5],
                [1, 4, 6],
                [2, 3, 6],
                [2, 4, 5],
            ],
        )
        .expect("valid")
    }

    /// Complete bipartite K_{s,s} with blocks `0..s` and `s..2s`.
    pub fn complete_bipartite(s: usize) -> Hypergraph {
        complete_partite(s, 2)
    }

    /// Complete r-partite r-graph with `s` vertices per block.
    pub fn complete_partite(s: usize, r: usize) -> Hypergraph {
        let total = s.pow(r as u32);
        let edges = (0..total).map(|mut idx| {
            let mut e = Vec::with_capacity(r);
            for b in 0..r {
                e.push((b * s + idx % s) as Vertex);
                idx /= s;
            }
            e
        });
        Hypergraph::new_partite(s, r, edges).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn single_edge() -> Hypergraph {
        Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap()
    }

    #[test]
    fn incident_edges_examples() {
        let h = single_edge();
        assert_eq!(h.incident_edges(1).unwrap(), vec![&[0, 1, 2][..]]);
        assert!(Hypergraph::empty(4, 3).incident_edges(2).unwrap().is_empty());
        let fano = fano();
        for v in 0..7 {
            assert_eq!(fano.incident_edges(v).unwrap().len(), 3);
        }
        assert!(matches!(h.incident_edges(3), Err(Error::Input(_))));
    }

    #[test]
    fn incident_edges_are_lexicographic() {
        let h = complete_uniform(6, 3);
        let inc = h.incident_edges(2).unwrap();
        assert!(inc.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(inc.len(), 10);
    }

    #[test]
    fn independence_examples() {
        let h = single_edge();
        assert!(h.is_independent(&[0, 1].into()).unwrap());
        assert!(!h.is_independent(&[0, 1, 2].into()).unwrap());
        // {0,1,3,6} is independent in this labelling of the Fano plane
        let fano = fano();
        let s: VertexSet = [0, 1, 3, 6].into();
        assert!(fano.is_independent(&s).unwrap());
        assert!(fano
            .edges()
            .all(|e| !e.iter().all(|v| s.contains(*v))));
    }

    #[test]
    fn isolated_examples() {
        let h = Hypergraph::new(4, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(h.isolated_vertices(), [3].into());
        assert_eq!(
            Hypergraph::empty(5, 3).isolated_vertices(),
            [0, 1, 2, 3, 4].into()
        );
    }

    #[test]
    fn edges_meeting_examples() {
        let h = single_edge();
        assert_eq!(h.edges_meeting(&[0].into(), &[1].into()).unwrap(), 0);
        assert_eq!(h.edges_meeting(&[0].into(), &VertexSet::new()).unwrap(), 1);
        let k3 = complete_graph(3);
        assert_eq!(k3.edges_meeting(&[0].into(), &[1].into()).unwrap(), 1);
        assert!(matches!(
            k3.edges_meeting(&[0].into(), &[0].into()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn duplicates_are_merged_and_sorted() {
        let h = Hypergraph::new(4, 2, [[1, 0], [0, 1], [3, 2], [0, 1]]).unwrap();
        assert_eq!(h.num_edges(), 2);
        assert_eq!(h.edge(0), &[0, 1]);
        assert_eq!(h.edge(1), &[2, 3]);
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(Hypergraph::new(3, 3, [[0, 1]]).is_err());
        assert!(Hypergraph::new(3, 2, [[1, 1]]).is_err());
        assert!(Hypergraph::new(3, 2, [[0, 3]]).is_err());
        assert!(Hypergraph::new_partite(2, 2, [[0, 1]]).is_err());
        assert!(Hypergraph::new_partite(2, 2, [[0, 2]]).is_ok());
    }

    #[test]
    fn partite_edges_meet_each_block_once() {
        let h = complete_partite(3, 3);
        assert_eq!(h.num_edges(), 27);
        for e in h.edges() {
            let blocks: Vec<_> = e.iter().map(|&v| h.block_of(v).unwrap()).collect();
            assert_eq!(blocks, vec![0, 1, 2]);
        }
    }

    #[test]
    fn text_round_trip_with_comments() {
        let text = "# a comment\n3 6 partite 2\n0 2 4\n\n# another\n1 3 5\n";
        let h = Hypergraph::from_text(text).unwrap();
        assert_eq!(h.num_edges(), 2);
        assert_eq!(h.block_size(), Some(2));
        assert_eq!(Hypergraph::from_text(&h.to_text()).unwrap(), h);
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        match Hypergraph::from_text("2 3\n0 1\n0 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Hypergraph::from_text("# nothing\n").is_err());
        assert!(Hypergraph::from_text("2 5 partite 2\n").is_err());
    }

    #[test]
    fn vertex_set_text() {
        let s: VertexSet = "{3, 1,2}".parse().unwrap();
        assert_eq!(s.to_string(), "{1,2,3}");
        assert_eq!("{}".parse::<VertexSet>().unwrap(), VertexSet::new());
        assert!("1,2".parse::<VertexSet>().is_err());
    }

    #[test]
    fn named_instances() {
        assert_eq!(complete_uniform(7, 3).num_edges(), 35);
        assert_eq!(complete_graph(4).num_edges(), 6);
        assert_eq!(path(3).num_edges(), 2);
        assert_eq!(complete_bipartite(2).num_edges(), 4);
    }
}

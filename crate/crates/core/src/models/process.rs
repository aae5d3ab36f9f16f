//! The random r-graph process: edges arrive uniformly without replacement
//! until no vertex is isolated.
//!
//! Every accepted edge carries a mark in (0, 1). Marks are the increasing
//! order statistics of one uniform per potential edge, generated lazily by
//! exponential spacings, so keeping the edges with mark at most `p` gives
//! the binomial random hypergraph at edge probability `p`.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{binomial, stream_rng};
use crate::error::{Error, Result};
use crate::expansion::combinations;
use crate::hypergraph::{parse_text, push_edge_line, Hypergraph, Vertex, VertexSet};
use crate::sidecar::{self, Metadata};

/// When to stop the process.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StopRule {
    /// At the stopping time `T`.
    AtT,
    /// After exactly `t` edges.
    AtStep(usize),
    /// Once `T` is reached and every edge with mark at most this value is in.
    ThroughMark(f64),
}

/// Edges of one run in arrival order.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessTrace {
    pub n: usize,
    pub r: usize,
    pub seed: u64,
    pub edges: Vec<Vec<Vertex>>,
    /// First step with no isolated vertex, if reached.
    pub stopping_time: Option<usize>,
    /// Mark of each edge, increasing.
    pub marks: Option<Vec<f64>>,
    /// Every potential edge with a mark at most this is in `edges`.
    pub mark_horizon: Option<f64>,
}

/// Runs the process from the empty hypergraph on `n` vertices.
pub fn run_process(n: usize, r: usize, seed: u64, stop: StopRule) -> Result<ProcessTrace> {
    if r == 0 || n < r || n > u32::MAX as usize {
        return Err(Error::input(format!("process needs 1 <= r <= n, got n={n} r={r}")));
    }
    let total = binomial(n, r);
    if let StopRule::AtStep(t) = stop {
        if t as u128 > total {
            return Err(Error::input(format!("step {t} exceeds the {total} possible edges")));
        }
    }
    if let StopRule::ThroughMark(x) = stop {
        if x.is_nan() {
            return Err(Error::input("mark bound is NaN"));
        }
    }
    let mut rng = stream_rng(seed, 0);
    let mut draw = EdgeDraw::new(n, r, total);
    let mut degree = vec![0u32; n];
    let mut isolated = n;
    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    let mut marks: Vec<f64> = Vec::new();
    let mut stopping_time = None;
    let mut spacing_sum = 0.0f64;
    let mut horizon = None;

    loop {
        let t = edges.len();
        if t as u128 == total {
            horizon = Some(1.0);
            break;
        }
        match stop {
            StopRule::AtT if stopping_time.is_some() => break,
            StopRule::AtStep(s) if t == s => break,
            _ => {}
        }
        // next order statistic of `total` uniforms
        let e: f64 = -(1.0 - rng.random::<f64>()).ln();
        spacing_sum += e / (total - t as u128) as f64;
        let mark = -(-spacing_sum).exp_m1();
        if let StopRule::ThroughMark(x) = stop {
            if stopping_time.is_some() && mark > x {
                horizon = Some(x);
                break;
            }
        }
        let edge = draw.next(&mut rng);
        for &v in &edge {
            if degree[v as usize] == 0 {
                isolated -= 1;
            }
            degree[v as usize] += 1;
        }
        edges.push(edge);
        marks.push(mark);
        if isolated == 0 && stopping_time.is_none() {
            stopping_time = Some(t + 1);
        }
    }
    let mark_horizon = horizon.or_else(|| marks.last().copied());
    Ok(ProcessTrace {
        n,
        r,
        seed,
        edges,
        stopping_time,
        marks: Some(marks),
        mark_horizon,
    })
}

/// Uniform draws of unseen r-subsets: rejection while the process is
/// sparse, an explicit shuffled list of what remains once it is dense.
struct EdgeDraw {
    n: usize,
    r: usize,
    total: u128,
    seen: HashSet<Vec<Vertex>>,
    remaining: Option<Vec<Vec<Vertex>>>,
}

impl EdgeDraw {
    fn new(n: usize, r: usize, total: u128) -> Self {
        EdgeDraw {
            n,
            r,
            total,
            seen: HashSet::new(),
            remaining: None,
        }
    }

    fn next(&mut self, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
        if self.remaining.is_none() && 2 * self.seen.len() as u128 >= self.total {
            let all: Vec<Vertex> = (0..self.n as Vertex).collect();
            let mut rest: Vec<Vec<Vertex>> = combinations(&all, self.r)
                .into_iter()
                .filter(|e| !self.seen.contains(e))
                .collect();
            rest.shuffle(rng);
            self.remaining = Some(rest);
        }
        if let Some(rest) = &mut self.remaining {
            return rest.pop().expect("caller stops when every edge is used");
        }
        loop {
            let mut e: Vec<Vertex> = index::sample(rng, self.n, self.r)
                .into_iter()
                .map(|i| i as Vertex)
                .collect();
            e.sort_unstable();
            if self.seen.insert(e.clone()) {
                return e;
            }
        }
    }
}

impl ProcessTrace {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The hypergraph of the first `t` edges.
    pub fn prefix(&self, t: usize) -> Result<Hypergraph> {
        if t > self.edges.len() {
            return Err(Error::input(format!(
                "trace has {} edges, asked for {t}",
                self.edges.len()
            )));
        }
        Hypergraph::new(self.n, self.r, self.edges[..t].iter().cloned())
    }

    /// The hypergraph at the stopping time.
    pub fn at_stopping_time(&self) -> Result<Hypergraph> {
        let t = self
            .stopping_time
            .ok_or_else(|| Error::input("trace ends before the stopping time"))?;
        self.prefix(t)
    }

    /// Edges in arrival order, under an `r n` header.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.r, self.n);
        for e in &self.edges {
            push_edge_line(&mut out, e);
        }
        out
    }

    /// `key=value` lines: seed, stopping time and marks.
    pub fn metadata(&self) -> String {
        let mut pairs = vec![
            ("kind", "process".to_string()),
            ("n", self.n.to_string()),
            ("r", self.r.to_string()),
            ("seed", self.seed.to_string()),
            ("steps", self.edges.len().to_string()),
        ];
        if let Some(t) = self.stopping_time {
            pairs.push(("T", t.to_string()));
        }
        if let Some(h) = self.mark_horizon {
            pairs.push(("mark_horizon", h.to_string()));
        }
        if let Some(m) = &self.marks {
            let list: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            pairs.push(("marks", list.join(",")));
        }
        sidecar::render(&pairs)
    }

    /// Reads a trace written by [`ProcessTrace::to_text`], with its metadata
    /// when available. The stopping time is recomputed from the edges.
    pub fn from_text(edges_text: &str, metadata: Option<&str>) -> Result<Self> {
        let (header, edges) = parse_text(edges_text)?;
        if header.block_size.is_some() {
            return Err(Error::input("a process trace is not partite"));
        }
        // validates ids and distinctness
        let h = Hypergraph::new(header.n, header.r, edges.iter().cloned())?;
        if h.num_edges() != edges.len() {
            return Err(Error::input("trace repeats an edge"));
        }
        let mut trace = ProcessTrace {
            n: header.n,
            r: header.r,
            seed: 0,
            edges: edges
                .into_iter()
                .map(|mut e| {
                    e.sort_unstable();
                    e
                })
                .collect(),
            stopping_time: None,
            marks: None,
            mark_horizon: None,
        };
        trace.stopping_time = trace.first_cover_step();
        if let Some(text) = metadata {
            let meta = Metadata::parse(text)?;
            trace.seed = meta.get("seed")?;
            if let Some(raw) = meta.get_str("marks") {
                let marks = if raw.is_empty() {
                    Vec::new()
                } else {
                    raw.split(',')
                        .map(|s| s.trim().parse::<f64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::input("bad mark value"))?
                };
                if marks.len() != trace.edges.len() || marks.windows(2).any(|w| w[0] > w[1]) {
                    return Err(Error::input("marks must be increasing, one per edge"));
                }
                trace.marks = Some(marks);
            }
            if meta.get_str("mark_horizon").is_some() {
                trace.mark_horizon = Some(meta.get("mark_horizon")?);
            }
        }
        Ok(trace)
    }

    fn first_cover_step(&self) -> Option<usize> {
        let mut covered = vec![false; self.n];
        let mut left = self.n;
        for (t, e) in self.edges.iter().enumerate() {
            for &v in e {
                if !std::mem::replace(&mut covered[v as usize], true) {
                    left -= 1;
                }
            }
            if left == 0 {
                return Some(t + 1);
            }
        }
        None
    }
}

/// Edge-probability window `(sigma, beta)` around the covering threshold:
/// `(ln n -+ g) / C(n-1, r-1)`.
pub fn threshold_window(n: usize, r: usize, g: f64) -> (f64, f64) {
    let d = binomial(n - 1, r - 1) as f64;
    let ln_n = (n as f64).ln();
    ((ln_n - g) / d, (ln_n + g) / d)
}

/// Low-degree structure of the coupled process around its stopping time.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdDiagnostics {
    /// Degree cutoff `epsilon * ln n`.
    pub c_threshold: f64,
    pub sigma: f64,
    pub beta: f64,
    /// Vertices of degree at most the cutoff at edge probability `sigma`.
    pub w_sigma: VertexSet,
    /// `w_sigma` together with every vertex sharing a `beta`-edge with it.
    pub neighborhood: VertexSet,
    /// Mark of the edge that ends isolation.
    pub lambda_stop: f64,
    /// Whether `sigma <= lambda_stop <= beta`.
    pub in_window: bool,
}

/// Diagnostics for a marked trace. The trace must reach its stopping time
/// and, unless `beta >= 1`, contain every edge with mark up to `beta`
/// (run with [`StopRule::ThroughMark`]).
pub fn threshold_diagnostics(trace: &ProcessTrace, epsilon: f64, g: f64) -> Result<ThresholdDiagnostics> {
    let marks = trace
        .marks
        .as_ref()
        .ok_or_else(|| Error::input("trace has no marks"))?;
    let t = trace
        .stopping_time
        .ok_or_else(|| Error::input("trace ends before the stopping time"))?;
    if !(epsilon > 0.0 && epsilon.is_finite() && g.is_finite()) {
        return Err(Error::input("epsilon must be positive and g finite"));
    }
    let n = trace.n;
    let (sigma, beta) = threshold_window(n, trace.r, g);
    let horizon = trace.mark_horizon.unwrap_or(marks[t - 1]);
    if sigma > horizon || (beta < 1.0 && beta > horizon) {
        return Err(Error::input(format!(
            "trace covers marks up to {horizon}; rerun through mark {beta}"
        )));
    }
    let c = epsilon * (n as f64).ln();

    let mut deg = vec![0usize; n];
    for (e, &m) in trace.edges.iter().zip(marks) {
        if m > sigma {
            break;
        }
        for &v in e {
            deg[v as usize] += 1;
        }
    }
    let low: Vec<Vertex> = (0..n as Vertex).filter(|&v| deg[v as usize] as f64 <= c).collect();
    let mut in_n = vec![false; n];
    for &v in &low {
        in_n[v as usize] = true;
    }
    if beta >= 1.0 {
        // every potential edge is present
        if !low.is_empty() && trace.r >= 2 {
            in_n.iter_mut().for_each(|x| *x = true);
        }
    } else {
        let mut in_w = vec![false; n];
        for &v in &low {
            in_w[v as usize] = true;
        }
        for (e, &m) in trace.edges.iter().zip(marks) {
            if m > beta {
                break;
            }
            if e.iter().any(|&v| in_w[v as usize]) {
                for &v in e {
                    in_n[v as usize] = true;
                }
            }
        }
    }
    let lambda_stop = marks[t - 1];
    Ok(ThresholdDiagnostics {
        c_threshold: c,
        sigma,
        beta,
        w_sigma: VertexSet::from_iter_unsorted(low),
        neighborhood: VertexSet::from_iter_unsorted((0..n as Vertex).filter(|&v| in_n[v as usize])),
        lambda_stop,
        in_window: sigma <= lambda_stop && lambda_stop <= beta,
    })
}

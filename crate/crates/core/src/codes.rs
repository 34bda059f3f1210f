//! Classical and CSS codes, their Tanner graphs and parameters.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2la::BitMatrix;

/// A cell of the Tanner graph: a Z-check, a qubit or an X-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Z(usize),
    Q(usize),
    X(usize),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Z(i) => write!(f, "z{i}"),
            Cell::Q(i) => write!(f, "q{i}"),
            Cell::X(i) => write!(f, "x{i}"),
        }
    }
}

impl FromStr for Cell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownCell(s.to_string());
        let (kind, idx) = s.split_at_checked(1).ok_or_else(bad)?;
        let i: usize = idx.parse().map_err(|_| bad())?;
        match kind {
            "z" | "Z" => Ok(Cell::Z(i)),
            "q" | "Q" => Ok(Cell::Q(i)),
            "x" | "X" => Ok(Cell::X(i)),
            _ => Err(bad()),
        }
    }
}

/// Names for the Z-checks, qubits and X-checks, in matrix order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labels {
    pub z: Vec<String>,
    pub q: Vec<String>,
    pub x: Vec<String>,
}

impl Labels {
    pub fn standard(m_z: usize, n: usize, m_x: usize) -> Self {
        Labels {
            z: (0..m_z).map(|i| format!("z{i}")).collect(),
            q: (0..n).map(|i| format!("q{i}")).collect(),
            x: (0..m_x).map(|i| format!("x{i}")).collect(),
        }
    }
}

/// A classical linear code given by its parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCode {
    h: BitMatrix,
}

impl ClassicalCode {
    pub fn new(h: BitMatrix) -> Result<Self> {
        if h.cols() == 0 {
            return Err(Error::InvalidFamily("a classical code needs at least one bit".into()));
        }
        Ok(ClassicalCode { h })
    }

    /// Cyclic repetition code: check i touches bits i and i+1 mod `len`.
    pub fn repetition_cycle(len: usize) -> Self {
        assert!(len >= 2);
        let supports: Vec<Vec<usize>> = (0..len).map(|i| vec![i, (i + 1) % len]).collect();
        ClassicalCode {
            h: BitMatrix::from_supports(len, len, &supports),
        }
    }

    pub fn h(&self) -> &BitMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn m(&self) -> usize {
        self.h.rows()
    }

    pub fn rank(&self) -> usize {
        self.h.rank()
    }

    pub fn k(&self) -> usize {
        self.n() - self.rank()
    }

    /// The transposed code, whose parity-check matrix is `h^T`.
    pub fn transpose_code(&self) -> ClassicalCode {
        ClassicalCode {
            h: self.h.transpose(),
        }
    }
}

/// A CSS code `(H_X, H_Z)` with `H_X · H_Z^T = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    hx: BitMatrix,
    hz: BitMatrix,
    labels: Labels,
}

impl CssCode {
    pub fn new(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        let labels = Labels::standard(hz.rows(), hx.cols(), hx.rows());
        Self::with_labels(hx, hz, labels)
    }

    pub fn with_labels(hx: BitMatrix, hz: BitMatrix, labels: Labels) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::DimensionMismatch {
                op: "new_css",
                left: hx.shape(),
                right: hz.shape(),
            });
        }
        if labels.z.len() != hz.rows() || labels.q.len() != hx.cols() || labels.x.len() != hx.rows()
        {
            return Err(Error::parse("labels", "label counts do not match the matrices"));
        }
        if let Some((x, z)) = first_overlap_violation(&hx, &hz) {
            return Err(Error::Orthogonality { x, z });
        }
        Ok(CssCode { hx, hz, labels })
    }

    /// Classical code read as a CSS code with no Z-checks.
    pub fn from_classical(c: &ClassicalCode) -> Self {
        CssCode::new(c.h().clone(), BitMatrix::zeros(0, c.n())).expect("no Z-checks")
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn m_x(&self) -> usize {
        self.hx.rows()
    }

    pub fn m_z(&self) -> usize {
        self.hz.rows()
    }

    pub fn k(&self) -> usize {
        self.n() - self.hx.rank() - self.hz.rank()
    }

    /// The dual code: X and Z roles exchanged.
    pub fn dual(&self) -> CssCode {
        CssCode {
            hx: self.hz.clone(),
            hz: self.hx.clone(),
            labels: Labels {
                z: self.labels.x.clone(),
                q: self.labels.q.clone(),
                x: self.labels.z.clone(),
            },
        }
    }

    pub fn params(&self) -> CodeParams {
        let max = |v: Vec<usize>| v.into_iter().max().unwrap_or(0);
        CodeParams {
            n: self.n(),
            k: self.k(),
            m_x: self.m_x(),
            m_z: self.m_z(),
            w_x: max(self.hx.row_weights()),
            w_z: max(self.hz.row_weights()),
            q_x: max(self.hx.col_weights()),
            q_z: max(self.hz.col_weights()),
            d_x: None,
            d_z: None,
        }
    }

    pub fn tanner_graph(&self) -> TannerGraph {
        TannerGraph::from_matrices(&self.hx, &self.hz).expect("validated code")
    }

    pub fn induced_subgraph(&self, check: Cell) -> Result<InducedSubgraph> {
        self.tanner_graph().induced_subgraph(check)
    }

    /// Finds relabelings of qubits, X-checks and Z-checks carrying `self` onto `other`.
    pub fn isomorphism_to(&self, other: &CssCode) -> Option<CodeIsomorphism> {
        isomorphism(self, other)
    }
}

/// First `(x, z)` pair in row-major order with odd overlap.
fn first_overlap_violation(hx: &BitMatrix, hz: &BitMatrix) -> Option<(usize, usize)> {
    let prod = hx.mul(&hz.transpose()).ok()?;
    let first = prod.entries().next();
    first
}

/// A distance value, either exact or an upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    pub value: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub m_x: usize,
    pub m_z: usize,
    pub w_x: usize,
    pub w_z: usize,
    pub q_x: usize,
    pub q_z: usize,
    pub d_x: Option<Distance>,
    pub d_z: Option<Distance>,
}

impl CodeParams {
    /// `max(w_X, w_Z, q_X, q_Z)`.
    pub fn max_weight(&self) -> usize {
        self.w_x.max(self.w_z).max(self.q_x).max(self.q_z)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.d_x, self.d_z) {
            (Some(dx), Some(dz)) => write!(f, "[[{},{},({},{})]]", self.n, self.k, dx.value, dz.value),
            _ => write!(f, "[[{},{}]]", self.n, self.k),
        }
    }
}

/// Bipartite Tanner graph. Vertex ids run over Z-checks, then qubits, then X-checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    pub m_z: usize,
    pub n: usize,
    pub m_x: usize,
    /// `(z, q)` pairs.
    pub e_qz: Vec<(usize, usize)>,
    /// `(x, q)` pairs.
    pub e_qx: Vec<(usize, usize)>,
}

impl TannerGraph {
    /// Builds the graph from raw matrices without checking orthogonality.
    pub fn from_matrices(hx: &BitMatrix, hz: &BitMatrix) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::DimensionMismatch {
                op: "tanner_graph",
                left: hx.shape(),
                right: hz.shape(),
            });
        }
        Ok(TannerGraph {
            m_z: hz.rows(),
            n: hx.cols(),
            m_x: hx.rows(),
            e_qz: hz.entries().collect(),
            e_qx: hx.entries().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.m_z + self.n + self.m_x
    }

    pub fn edge_count(&self) -> usize {
        self.e_qz.len() + self.e_qx.len()
    }

    pub fn vertex_id(&self, c: Cell) -> usize {
        match c {
            Cell::Z(i) => i,
            Cell::Q(i) => self.m_z + i,
            Cell::X(i) => self.m_z + self.n + i,
        }
    }

    pub fn cell(&self, v: usize) -> Cell {
        if v < self.m_z {
            Cell::Z(v)
        } else if v < self.m_z + self.n {
            Cell::Q(v - self.m_z)
        } else {
            Cell::X(v - self.m_z - self.n)
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(z, q) in &self.e_qz {
            let (a, b) = (self.vertex_id(Cell::Z(z)), self.vertex_id(Cell::Q(q)));
            adj[a].push(b);
            adj[b].push(a);
        }
        for &(x, q) in &self.e_qx {
            let (a, b) = (self.vertex_id(Cell::X(x)), self.vertex_id(Cell::Q(q)));
            adj[a].push(b);
            adj[b].push(a);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components(&self.adjacency())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn to_matrices(&self) -> (BitMatrix, BitMatrix) {
        let mut hx = BitMatrix::zeros(self.m_x, self.n);
        let mut hz = BitMatrix::zeros(self.m_z, self.n);
        for &(x, q) in &self.e_qx {
            hx.set(x, q, true);
        }
        for &(z, q) in &self.e_qz {
            hz.set(z, q, true);
        }
        (hx, hz)
    }

    /// The subgraph induced by a check: its qubits, the opposite-type checks
    /// sharing at least one of them, and the edges between those.
    pub fn induced_subgraph(&self, check: Cell) -> Result<InducedSubgraph> {
        let (own, other) = match check {
            Cell::Z(z) if z < self.m_z => (&self.e_qz, &self.e_qx),
            Cell::X(x) if x < self.m_x => (&self.e_qx, &self.e_qz),
            _ => return Err(Error::UnknownCell(check.to_string())),
        };
        let idx = match check {
            Cell::Z(i) | Cell::X(i) => i,
            Cell::Q(_) => unreachable!(),
        };
        let mut in_supp = vec![false; self.n];
        let mut qubits = Vec::new();
        for &(c, q) in own {
            if c == idx {
                in_supp[q] = true;
                qubits.push(q);
            }
        }
        qubits.sort_unstable();
        let mut edges: Vec<(usize, usize)> =
            other.iter().copied().filter(|&(_, q)| in_supp[q]).collect();
        edges.sort_unstable();
        let mut checks: Vec<usize> = edges.iter().map(|e| e.0).collect();
        checks.dedup();
        let odd_checks = checks
            .iter()
            .copied()
            .filter(|&c| edges.iter().filter(|e| e.0 == c).count() % 2 == 1)
            .collect();
        Ok(InducedSubgraph {
            center: check,
            qubits,
            checks,
            edges,
            odd_checks,
        })
    }
}

/// Connected components of an adjacency list, each sorted, ordered by smallest vertex.
pub(crate) fn components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Subgraph induced by a check, with the parity report of its opposite-type checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub center: Cell,
    pub qubits: Vec<usize>,
    /// Opposite-type checks touching the support.
    pub checks: Vec<usize>,
    /// `(check, qubit)` pairs.
    pub edges: Vec<(usize, usize)>,
    pub odd_checks: Vec<usize>,
}

impl InducedSubgraph {
    pub fn is_even(&self) -> bool {
        self.odd_checks.is_empty()
    }

    /// Connected components as lists of cells, qubits first within each.
    pub fn components(&self) -> Vec<Vec<Cell>> {
        let nq = self.qubits.len();
        let qpos = |q: usize| self.qubits.binary_search(&q).expect("qubit in support");
        let cpos = |c: usize| nq + self.checks.binary_search(&c).expect("check listed");
        let mut adj = vec![Vec::new(); nq + self.checks.len()];
        for &(c, q) in &self.edges {
            adj[qpos(q)].push(cpos(c));
            adj[cpos(c)].push(qpos(q));
        }
        let check_cell = |c: usize| match self.center {
            Cell::Z(_) => Cell::X(c),
            _ => Cell::Z(c),
        };
        components(&adj)
            .into_iter()
            .map(|comp| {
                comp.into_iter()
                    .map(|v| {
                        if v < nq {
                            Cell::Q(self.qubits[v])
                        } else {
                            check_cell(self.checks[v - nq])
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Relabeling witness: `qubits[i]` is the image of qubit `i`, and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeIsomorphism {
    pub qubits: Vec<usize>,
    pub x_checks: Vec<usize>,
    pub z_checks: Vec<usize>,
}

impl CodeIsomorphism {
    /// Checks that the relabeling maps every check of `a` onto a check of `b`.
    pub fn verify(&self, a: &CssCode, b: &CssCode) -> bool {
        let maps = |ha: &BitMatrix, hb: &BitMatrix, rows: &[usize]| {
            ha.shape() == hb.shape()
                && ha.entries().all(|(r, c)| hb.get(rows[r], self.qubits[c]))
                && ha.count_ones() == hb.count_ones()
        };
        maps(a.hx(), b.hx(), &self.x_checks) && maps(a.hz(), b.hz(), &self.z_checks)
    }
}

fn isomorphism(a: &CssCode, b: &CssCode) -> Option<CodeIsomorphism> {
    if a.n() != b.n() || a.m_x() != b.m_x() || a.m_z() != b.m_z() {
        return None;
    }
    let (ga, gb) = (a.tanner_graph(), b.tanner_graph());
    let (adj_a, adj_b) = (ga.adjacency(), gb.adjacency());
    let nv = adj_a.len();
    let kind = |g: &TannerGraph, v: usize| match g.cell(v) {
        Cell::Z(_) => 0u8,
        Cell::Q(_) => 1,
        Cell::X(_) => 2,
    };
    // BFS order keeps every vertex after one of its neighbours
    let mut order = Vec::with_capacity(nv);
    for comp in components(&adj_a) {
        let mut seen = vec![false; nv];
        let mut queue = VecDeque::from([comp[0]]);
        seen[comp[0]] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &adj_a[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    let mut image = vec![usize::MAX; nv];
    let mut used = vec![false; nv];

    fn search(
        depth: usize,
        order: &[usize],
        adj_a: &[Vec<usize>],
        adj_b: &[Vec<usize>],
        compatible: &dyn Fn(usize, usize) -> bool,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        let anchor = adj_a[v].iter().copied().find(|&u| image[u] != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            Some(u) => adj_b[image[u]].clone(),
            None => (0..adj_b.len()).collect(),
        };
        for w in candidates {
            if used[w] || !compatible(v, w) {
                continue;
            }
            let consistent = adj_a[v]
                .iter()
                .filter(|&&u| image[u] != usize::MAX)
                .all(|&u| adj_b[w].binary_search(&image[u]).is_ok())
                && adj_b[w]
                    .iter()
                    .filter(|&&y| used[y])
                    .count()
                    == adj_a[v].iter().filter(|&&u| image[u] != usize::MAX).count();
            if !consistent {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if search(depth + 1, order, adj_a, adj_b, compatible, image, used) {
                return true;
            }
            image[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    let compatible =
        |v: usize, w: usize| kind(&ga, v) == kind(&gb, w) && adj_a[v].len() == adj_b[w].len();
    if !search(0, &order, &adj_a, &adj_b, &compatible, &mut image, &mut used) {
        return None;
    }
    let pick = |cell: fn(usize) -> Cell, count: usize| -> Vec<usize> {
        (0..count)
            .map(|i| match gb.cell(image[ga.vertex_id(cell(i))]) {
                Cell::Z(j) | Cell::Q(j) | Cell::X(j) => j,
            })
            .collect()
    };
    let iso = CodeIsomorphism {
        qubits: pick(Cell::Q, a.n()),
        x_checks: pick(Cell::X, a.m_x()),
        z_checks: pick(Cell::Z, a.m_z()),
    };
    debug_assert!(iso.verify(a, b));
    Some(iso)
}

/// Standard small codes used in tests and examples.
pub mod catalog {
    use super::*;

    pub fn hamming_7_4() -> BitMatrix {
        BitMatrix::parse(&["1010101", "0110011", "0001111"])
    }

    pub fn steane() -> CssCode {
        CssCode::new(hamming_7_4(), hamming_7_4()).expect("Steane code is CSS")
    }

    pub fn shor() -> CssCode {
        let hx = BitMatrix::parse(&["111111000", "000111111"]);
        let hz = BitMatrix::parse(&[
            "110000000",
            "011000000",
            "000110000",
            "000011000",
            "000000110",
            "000000011",
        ]);
        CssCode::new(hx, hz).expect("Shor code is CSS")
    }
}

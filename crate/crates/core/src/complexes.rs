//! The Tanner cone-complex of a CSS code and a presentation of its fundamental group.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::codes::{self, Cell, CssCode};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    QZ,
    QX,
    XZ,
}

/// An undirected edge stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

/// An oriented edge; `forward` means `u → v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    pub fn reversed(self) -> Dart {
        Dart {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// Vertices are numbered Z-checks, then qubits, then X-checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeComplex {
    m_z: usize,
    n: usize,
    m_x: usize,
    edges: Vec<Edge>,
    index: HashMap<(usize, usize), usize>,
    faces: Vec<Vec<Dart>>,
}

impl ConeComplex {
    /// Tanner graph plus one XZ edge per overlapping pair and one triangle per shared qubit.
    pub fn build(code: &CssCode) -> Self {
        let (m_z, n, m_x) = (code.m_z(), code.n(), code.m_x());
        let mut k = ConeComplex {
            m_z,
            n,
            m_x,
            edges: Vec::new(),
            index: HashMap::new(),
            faces: Vec::new(),
        };
        for (z, q) in code.hz().entries() {
            k.push_edge(z, m_z + q, EdgeKind::QZ);
        }
        for (x, q) in code.hx().entries() {
            k.push_edge(m_z + q, m_z + n + x, EdgeKind::QX);
        }
        let hz_rows = code.hz().row_vecs();
        for x in 0..m_x {
            let rx = code.hx().row(x);
            for (z, rz) in hz_rows.iter().enumerate() {
                let shared: Vec<usize> = rx
                    .ones()
                    .filter(|&q| rz.get(q))
                    .collect();
                if shared.is_empty() {
                    continue;
                }
                let (xv, zv) = (k.vertex_id(Cell::X(x)), k.vertex_id(Cell::Z(z)));
                k.push_edge(zv, xv, EdgeKind::XZ);
                for q in shared {
                    let qv = k.vertex_id(Cell::Q(q));
                    let face = k.walk(&[xv, qv, zv, xv]).expect("triangle edges exist");
                    k.faces.push(face);
                }
            }
        }
        k
    }

    fn push_edge(&mut self, a: usize, b: usize, kind: EdgeKind) {
        let (u, v) = (a.min(b), a.max(b));
        let id = self.edges.len();
        self.index.entry((u, v)).or_insert_with(|| {
            self.edges.push(Edge { u, v, kind });
            id
        });
    }

    pub fn m_z(&self) -> usize {
        self.m_z
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_x(&self) -> usize {
        self.m_x
    }

    pub fn vertex_count(&self) -> usize {
        self.m_z + self.n + self.m_x
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
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

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a.min(b), a.max(b))).copied()
    }

    /// The dart `a → b`, if the edge exists.
    pub fn dart(&self, a: usize, b: usize) -> Option<Dart> {
        self.edge_id(a, b).map(|edge| Dart { edge, forward: a < b })
    }

    pub fn tail(&self, d: Dart) -> usize {
        let e = self.edges[d.edge];
        if d.forward {
            e.u
        } else {
            e.v
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail(d.reversed())
    }

    /// Darts along a vertex walk.
    pub fn walk(&self, vertices: &[usize]) -> Result<Vec<Dart>> {
        vertices
            .windows(2)
            .map(|w| {
                self.dart(w[0], w[1])
                    .ok_or_else(|| Error::UnknownCell(format!("edge {}-{}", self.cell(w[0]), self.cell(w[1]))))
            })
            .collect()
    }

    /// Vertices visited by a face boundary, starting at its first tail.
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&d| self.tail(d)).collect()
    }

    /// Appends a face along a closed vertex walk.
    pub fn add_face(&mut self, closed_walk: &[usize]) -> Result<usize> {
        if closed_walk.len() < 2 || closed_walk.first() != closed_walk.last() {
            return Err(Error::parse("face", "boundary walk is not closed"));
        }
        let face = self.walk(closed_walk)?;
        self.faces.push(face);
        Ok(self.faces.len() - 1)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        codes::components(&self.adjacency())
    }

    /// BFS tree from the lowest qubit vertex (vertex 0 if there are no qubits).
    pub fn spanning_tree(&self) -> Result<SpanningTree> {
        let root = if self.n > 0 { self.m_z } else { 0 };
        self.spanning_tree_from(root)
    }

    pub fn spanning_tree_from(&self, root: usize) -> Result<SpanningTree> {
        let nv = self.vertex_count();
        let adj = self.adjacency();
        let mut parent: Vec<Option<Dart>> = vec![None; nv];
        let mut seen = vec![false; nv];
        let mut in_tree = vec![false; self.edges.len()];
        let mut order = Vec::with_capacity(nv);
        if nv > 0 {
            seen[root] = true;
            order.push(root);
        }
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    let d = self.dart(u, v).expect("adjacent");
                    parent[v] = Some(d);
                    in_tree[d.edge] = true;
                    order.push(v);
                }
            }
            i += 1;
        }
        if order.len() != nv {
            return Err(Error::Disconnected {
                components: self.components(),
            });
        }
        Ok(SpanningTree {
            root,
            parent,
            in_tree,
            order,
        })
    }

    /// Presentation of the fundamental group in the identity-on-tree gauge.
    pub fn presentation(&self, tree: &SpanningTree) -> Presentation {
        let mut edge_generator = vec![None; self.edges.len()];
        let mut generator_edges = Vec::new();
        for (e, &t) in tree.in_tree.iter().enumerate() {
            if !t {
                edge_generator[e] = Some(generator_edges.len());
                generator_edges.push(e);
            }
        }
        let relators: Vec<Word> = self
            .faces
            .iter()
            .map(|face| {
                face.iter()
                    .filter_map(|d| {
                        edge_generator[d.edge].map(|gen| Letter {
                            gen,
                            inverse: !d.forward,
                        })
                    })
                    .collect()
            })
            .collect();
        let g = generator_edges.len();
        Presentation {
            generator_edges,
            edge_generator,
            surviving: (0..g).collect(),
            original_relators: relators.clone(),
            relators,
            substitution: (0..g).map(|gen| vec![Letter { gen, inverse: false }]).collect(),
            complete: true,
        }
    }

    /// JSON-friendly dump for inspection.
    pub fn dump(&self) -> ComplexDump {
        ComplexDump {
            vertices: (0..self.vertex_count()).map(|v| self.cell(v).to_string()).collect(),
            edges: self.edges.clone(),
            faces: (0..self.faces.len()).map(|f| self.face_vertices(f)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDump {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    /// Closed vertex walks, first vertex not repeated.
    pub faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    /// Dart from the parent into each vertex; `None` at the root.
    pub parent: Vec<Option<Dart>>,
    pub in_tree: Vec<bool>,
    /// BFS order.
    pub order: Vec<usize>,
}

impl SpanningTree {
    pub fn edge_count(&self) -> usize {
        self.in_tree.iter().filter(|&&t| t).count()
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

pub type Word = Vec<Letter>;

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// Free reduction.
pub fn reduce_word(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by trimming cancelling ends.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let w = reduce_word(w);
    let (mut i, mut j) = (0, w.len());
    while j - i >= 2 && w[i] == w[j - 1].inv() {
        i += 1;
        j -= 1;
    }
    w[i..j].to_vec()
}

/// Generators and relators; all words use original generator ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    /// Edge carrying each original generator.
    pub generator_edges: Vec<usize>,
    pub edge_generator: Vec<Option<usize>>,
    /// Original generators not yet eliminated, ascending.
    pub surviving: Vec<usize>,
    pub relators: Vec<Word>,
    pub original_relators: Vec<Word>,
    /// Each original generator as a word in surviving generators.
    pub substitution: Vec<Word>,
    /// False when simplification stopped on its budget.
    pub complete: bool,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.surviving.len()
    }

    pub fn original_generator_count(&self) -> usize {
        self.generator_edges.len()
    }

    /// Tietze moves: drop trivial relators, eliminate generators that occur once in a relator,
    /// cyclically reduce. At most `budget` eliminations.
    pub fn simplify(&self, budget: usize) -> Presentation {
        let mut p = self.clone();
        let mut steps = 0;
        p.complete = true;
        loop {
            let mut rels: Vec<Word> = p
                .relators
                .iter()
                .map(|r| cyclic_reduce(r))
                .filter(|r| !r.is_empty())
                .collect();
            rels.sort();
            rels.dedup();
            p.relators = rels;
            let Some((ri, pos)) = p.pick_elimination() else {
                break;
            };
            if steps == budget {
                p.complete = false;
                break;
            }
            steps += 1;
            let rel = p.relators.swap_remove(ri);
            // rotate so the eliminated letter comes first: l · rest = 1
            let rotated: Word = rel[pos..].iter().chain(&rel[..pos]).copied().collect();
            let l = rotated[0];
            let rest = &rotated[1..];
            let value = if l.inverse { rest.to_vec() } else { invert_word(rest) };
            let value_inv = invert_word(&value);
            let subst = |w: &[Letter]| -> Word {
                let mut out = Vec::with_capacity(w.len());
                for &x in w {
                    if x.gen == l.gen {
                        out.extend_from_slice(if x.inverse { &value_inv } else { &value });
                    } else {
                        out.push(x);
                    }
                }
                reduce_word(&out)
            };
            p.relators = p.relators.iter().map(|r| subst(r)).collect();
            p.substitution = p.substitution.iter().map(|w| subst(w)).collect();
            p.surviving.retain(|&g| g != l.gen);
        }
        p
    }

    /// Shortest relator containing a generator exactly once; ties go to the rarer generator.
    fn pick_elimination(&self) -> Option<(usize, usize)> {
        let mut total: HashMap<usize, usize> = HashMap::new();
        for r in &self.relators {
            for l in r {
                *total.entry(l.gen).or_default() += 1;
            }
        }
        let mut best: Option<((usize, usize, usize), (usize, usize))> = None;
        for (ri, r) in self.relators.iter().enumerate() {
            let mut count: HashMap<usize, usize> = HashMap::new();
            for l in r {
                *count.entry(l.gen).or_default() += 1;
            }
            for (pos, l) in r.iter().enumerate() {
                if count[&l.gen] == 1 {
                    let key = (r.len(), total[&l.gen], l.gen);
                    if best.is_none_or(|(k, _)| key < k) {
                        best = Some((key, (ri, pos)));
                    }
                }
            }
        }
        best.map(|(_, at)| at)
    }

    /// Images of all original generators from images of the surviving ones (in `surviving` order).
    pub fn expand(&self, surviving_images: &[usize], mul: impl Fn(usize, usize) -> usize, inv: impl Fn(usize) -> usize) -> Vec<usize> {
        let mut img = vec![0usize; self.original_generator_count()];
        for (&g, &v) in self.surviving.iter().zip(surviving_images) {
            img[g] = v;
        }
        self.substitution
            .iter()
            .map(|w| evaluate(w, &img, &mul, &inv))
            .collect()
    }

    /// Exponent sums of each relator over the surviving generators.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        let pos: HashMap<usize, usize> = self.surviving.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.surviving.len()];
                for l in r {
                    row[pos[&l.gen]] += if l.inverse { -1 } else { 1 };
                }
                row
            })
            .collect()
    }
}

/// Evaluates a word given images of original generators.
pub fn evaluate(w: &[Letter], images: &[usize], mul: impl Fn(usize, usize) -> usize, inv: impl Fn(usize) -> usize) -> usize {
    w.iter().fold(0, |acc, l| {
        let x = images[l.gen];
        mul(acc, if l.inverse { inv(x) } else { x })
    })
}

/// What `fill_disconnected_cones` found and added.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillReport {
    /// Checks whose induced subgraph has more than one component, with the component count.
    pub disconnected: Vec<(String, usize)>,
    /// Indices of the appended faces.
    pub added_faces: Vec<usize>,
}

/// Adds a face for each pair of cone components joined inside the opposite Tanner graph.
pub fn fill_disconnected_cones(k: &ConeComplex, code: &CssCode) -> Result<(ConeComplex, FillReport)> {
    let tanner = code.tanner_graph();
    if !tanner.is_connected() {
        return Err(Error::Disconnected {
            components: tanner.components(),
        });
    }
    let mut out = k.clone();
    let mut report = FillReport::default();
    let checks = (0..code.m_z()).map(Cell::Z).chain((0..code.m_x()).map(Cell::X));
    for check in checks {
        let comps = code.induced_subgraph(check)?.components();
        if comps.len() < 2 {
            continue;
        }
        report.disconnected.push((check.to_string(), comps.len()));
        // paths run through qubits and checks of the opposite type
        let kind = match check {
            Cell::Z(_) => EdgeKind::QX,
            _ => EdgeKind::QZ,
        };
        let mut adj = vec![Vec::new(); k.vertex_count()];
        for e in k.edges.iter().filter(|e| e.kind == kind) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let sub_components = codes::components(&adj);
        let mut comp_of = vec![usize::MAX; k.vertex_count()];
        for (i, c) in sub_components.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut basepoints: Vec<usize> = comps
            .iter()
            .map(|c| c.iter().map(|&cell| k.vertex_id(cell)).min().expect("nonempty component"))
            .collect();
        basepoints.sort_unstable();
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for b in basepoints {
            groups.entry(comp_of[b]).or_default().push(b);
        }
        let mut keys: Vec<usize> = groups.keys().copied().collect();
        keys.sort_unstable();
        let c = k.vertex_id(check);
        for key in keys {
            for pair in groups[&key].windows(2) {
                let path = bfs_path(&adj, pair[0], pair[1]).expect("same component");
                let mut walk = vec![c];
                walk.extend(path);
                walk.push(c);
                report.added_faces.push(out.add_face(&walk)?);
            }
        }
    }
    Ok((out, report))
}

fn bfs_path(adj: &[Vec<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &v in &adj[u] {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::catalog::{shor, steane};
    use crate::codes::ClassicalCode;
    use crate::f2la::BitMatrix;
    use proptest::prelude::*;

    fn letter(gen: usize, inverse: bool) -> Letter {
        Letter { gen, inverse }
    }

    fn toy_disconnected_cone() -> CssCode {
        let hx = BitMatrix::from_supports(3, 6, &[vec![0, 1, 2], vec![2, 3], vec![3, 4, 5]]);
        let hz = BitMatrix::from_supports(1, 6, &[vec![0, 1, 4, 5]]);
        CssCode::new(hx, hz).unwrap()
    }

    #[test]
    fn build_counts() {
        let one = BitMatrix::parse(&["11"]);
        let k = ConeComplex::build(&CssCode::new(one.clone(), one).unwrap());
        assert_eq!(k.edges().iter().filter(|e| e.kind == EdgeKind::XZ).count(), 1);
        assert_eq!(k.face_count(), 2);

        let s = steane();
        let k = ConeComplex::build(&s);
        assert_eq!(k.edges().iter().filter(|e| e.kind == EdgeKind::XZ).count(), 9);
        let overlaps: usize = (0..3)
            .flat_map(|x| (0..3).map(move |z| (x, z)))
            .map(|(x, z)| s.hx().row(x).ones().filter(|&q| s.hz().get(z, q)).count())
            .sum();
        assert_eq!(k.face_count(), overlaps);
        assert_eq!(k.vertex_count(), 13);

        let c = CssCode::from_classical(&ClassicalCode::new(crate::codes::catalog::hamming_7_4()).unwrap());
        let k = ConeComplex::build(&c);
        assert_eq!(k.face_count(), 0);
        assert_eq!(k.edge_count(), 12);
    }

    #[test]
    fn faces_are_closed_triangles() {
        let k = ConeComplex::build(&steane());
        for f in k.faces() {
            assert_eq!(f.len(), 3);
            for i in 0..3 {
                assert_eq!(k.head(f[i]), k.tail(f[(i + 1) % 3]));
            }
        }
    }

    #[test]
    fn links_of_qubits_are_complete_bipartite() {
        let s = steane();
        let k = ConeComplex::build(&s);
        for q in 0..7 {
            let qv = k.vertex_id(Cell::Q(q));
            let nz = s.hz().transpose().row_weight(q);
            let nx = s.hx().transpose().row_weight(q);
            let through_q = k.faces().iter().filter(|f| f.iter().any(|&d| k.tail(d) == qv)).count();
            assert_eq!(through_q, nz * nx);
        }
    }

    #[test]
    fn spanning_trees() {
        // a lone triangle z0 q0 x0 (not a CSS cone-complex)
        let mut k = ConeComplex {
            m_z: 1,
            n: 1,
            m_x: 1,
            edges: Vec::new(),
            index: HashMap::new(),
            faces: Vec::new(),
        };
        k.push_edge(0, 1, EdgeKind::QZ);
        k.push_edge(1, 2, EdgeKind::QX);
        k.push_edge(0, 2, EdgeKind::XZ);
        k.add_face(&[2, 1, 0, 2]).unwrap();
        let t = k.spanning_tree().unwrap();
        assert_eq!(t.edge_count(), 2);
        let p = k.presentation(&t);
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators, vec![vec![letter(0, false)]]);
        assert_eq!(p.simplify(10).generator_count(), 0);

        let k = ConeComplex::build(&steane());
        let t = k.spanning_tree().unwrap();
        assert_eq!(t.edge_count(), 12);
        assert_eq!(t.root, k.vertex_id(Cell::Q(0)));
        let p = k.presentation(&t);
        assert_eq!(p.generator_count(), k.edge_count() - k.vertex_count() + 1);

        let h = crate::codes::catalog::hamming_7_4().kron(&BitMatrix::identity(2));
        let k = ConeComplex::build(&CssCode::new(h.clone(), h).unwrap());
        assert!(matches!(k.spanning_tree(), Err(Error::Disconnected { components }) if components.len() == 2));
    }

    #[test]
    fn graph_presentation_is_free() {
        let c = CssCode::from_classical(&ClassicalCode::repetition_cycle(4));
        let k = ConeComplex::build(&c);
        let p = k.presentation(&k.spanning_tree().unwrap());
        assert!(p.relators.is_empty());
        assert_eq!(p.generator_count(), 1);
    }

    #[test]
    fn word_reduction() {
        let a = letter(0, false);
        let b = letter(1, false);
        assert_eq!(reduce_word(&[a, b, b.inv(), a.inv()]), vec![]);
        assert_eq!(cyclic_reduce(&[a.inv(), b, a]), vec![b]);
        assert_eq!(invert_word(&[a, b]), vec![b.inv(), a.inv()]);
    }

    #[test]
    fn simplify_eliminates_by_substitution() {
        let (a, b, c) = (letter(0, false), letter(1, false), letter(2, false));
        let p = Presentation {
            generator_edges: vec![0, 1, 2],
            edge_generator: vec![Some(0), Some(1), Some(2)],
            surviving: vec![0, 1, 2],
            relators: vec![vec![a, b, c]],
            original_relators: vec![vec![a, b, c]],
            substitution: vec![vec![a], vec![b], vec![c]],
            complete: true,
        };
        let s = p.simplify(10);
        assert_eq!(s.surviving, vec![1, 2]);
        assert!(s.relators.is_empty());
        // a = (bc)^-1
        assert_eq!(s.substitution[0], vec![c.inv(), b.inv()]);
        let partial = p.simplify(0);
        assert!(!partial.complete);
        assert_eq!(partial.generator_count(), 3);
    }

    #[test]
    fn shor_reports_disconnected_cones() {
        let s = shor();
        let k = ConeComplex::build(&s);
        let (filled, report) = fill_disconnected_cones(&k, &s).unwrap();
        assert_eq!(report.disconnected.len(), 2);
        assert!(report.added_faces.is_empty());
        assert_eq!(filled, k);
        let p = k.presentation(&k.spanning_tree().unwrap()).simplify(1000);
        assert_eq!(p.generator_count(), 0);
    }

    #[test]
    fn connected_cones_are_unchanged() {
        let s = steane();
        let k = ConeComplex::build(&s);
        let (filled, report) = fill_disconnected_cones(&k, &s).unwrap();
        assert!(report.disconnected.is_empty());
        assert_eq!(filled, k);
    }

    #[test]
    fn toy_fill_adds_one_face() {
        let c = toy_disconnected_cone();
        let k = ConeComplex::build(&c);
        let (filled, report) = fill_disconnected_cones(&k, &c).unwrap();
        assert_eq!(report.added_faces.len(), 1);
        let f = report.added_faces[0];
        // q0 x0 q2 x1 q3 x2 q4 is six edges, plus the two cone edges
        assert_eq!(filled.faces()[f].len(), 8);
        let before = k.presentation(&k.spanning_tree().unwrap()).simplify(1000);
        let after = filled.presentation(&filled.spanning_tree().unwrap()).simplify(1000);
        assert_eq!(before.generator_count(), 1);
        assert_eq!(after.generator_count(), 0);
    }

    #[test]
    fn dump_is_json() {
        let k = ConeComplex::build(&steane());
        let text = serde_json::to_string(&k.dump()).unwrap();
        let back: ComplexDump = serde_json::from_str(&text).unwrap();
        assert_eq!(back.vertices.len(), 13);
        assert_eq!(back.faces.len(), k.face_count());
    }

    proptest! {
        #[test]
        fn simplify_preserves_euler_and_expands_consistently(seed in any::<u64>()) {
            // random orthogonal pair from a random hx and hz in ker hx
            let mut s = seed | 1;
            let mut next = || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s };
            let n = 6 + (next() % 4) as usize;
            let mut hx = BitMatrix::zeros(3, n);
            for r in 0..3 { for c in 0..n { hx.set(r, c, next() & 1 == 1); } }
            let ker = hx.kernel_basis();
            let mut hz = BitMatrix::zeros(2, n);
            for r in 0..2 {
                for b in 0..ker.rows() {
                    if next() & 1 == 1 {
                        for c in ker.row_support(b) { hz.flip(r, c); }
                    }
                }
            }
            let code = CssCode::new(hx, hz).unwrap();
            let k = ConeComplex::build(&code);
            let chi = k.euler_characteristic();
            if let Ok(t) = k.spanning_tree() {
                let p = k.presentation(&t);
                let q = p.simplify(10_000);
                prop_assert!(q.complete);
                prop_assert_eq!(k.euler_characteristic(), chi);
                // every substitution word only uses surviving generators
                for w in &q.substitution {
                    prop_assert!(w.iter().all(|l| q.surviving.contains(&l.gen)));
                }
            }
        }
    }
}

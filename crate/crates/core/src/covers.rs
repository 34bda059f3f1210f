//! Flat voltage assignments, the lifted codes they define, and small permutation covers.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{CssCode, Labels};
use crate::complexes::{ConeComplex, Dart, Presentation};
use crate::error::{Error, Result};
use crate::f2la::BitMatrix;
use crate::groups::{FiniteGroup, AUTOMORPHISM_CAP};

/// Group elements on edges, stored for the canonical orientation `u → v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VoltageAssignment {
    pub edge_values: Vec<usize>,
    /// Images of the surviving generators the assignment was built from; empty if imported.
    pub generator_images: Vec<usize>,
}

/// One line of the JSON voltage dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoltageEntry {
    pub edge: [usize; 2],
    pub value: usize,
}

impl VoltageAssignment {
    pub fn trivial(k: &ConeComplex) -> Self {
        VoltageAssignment {
            edge_values: vec![0; k.edge_count()],
            generator_images: Vec::new(),
        }
    }

    /// Identity on tree edges; non-tree edges get the expanded generator images.
    pub fn from_generator_images(k: &ConeComplex, p: &Presentation, g: &FiniteGroup, images: &[usize]) -> Self {
        let all = p.expand(images, |a, b| g.mul(a, b), |a| g.inv(a));
        let mut edge_values = vec![0; k.edge_count()];
        for (gen, &e) in p.generator_edges.iter().enumerate() {
            edge_values[e] = all[gen];
        }
        VoltageAssignment {
            edge_values,
            generator_images: images.to_vec(),
        }
    }

    pub fn from_edge_values(edge_values: Vec<usize>) -> Self {
        VoltageAssignment {
            edge_values,
            generator_images: Vec::new(),
        }
    }

    #[inline]
    pub fn w(&self, g: &FiniteGroup, d: Dart) -> usize {
        let v = self.edge_values[d.edge];
        if d.forward {
            v
        } else {
            g.inv(v)
        }
    }

    /// Voltage on the oriented edge `a → b`.
    pub fn between(&self, k: &ConeComplex, g: &FiniteGroup, a: usize, b: usize) -> Option<usize> {
        k.dart(a, b).map(|d| self.w(g, d))
    }

    pub fn check_flat(&self, k: &ConeComplex, g: &FiniteGroup) -> Result<()> {
        if self.edge_values.len() != k.edge_count() {
            return Err(Error::LengthMismatch {
                expected: k.edge_count(),
                found: self.edge_values.len(),
            });
        }
        if self.edge_values.iter().any(|&v| v >= g.order()) {
            return Err(Error::InvalidGroup("voltage value outside the group".into()));
        }
        for (f, face) in k.faces().iter().enumerate() {
            let prod = face.iter().fold(0, |acc, &d| g.mul(acc, self.w(g, d)));
            if prod != 0 {
                return Err(Error::NotFlat { face: f });
            }
        }
        Ok(())
    }

    /// The subgroup of loop values at the tree root, in any gauge.
    pub fn image(&self, k: &ConeComplex, g: &FiniteGroup) -> Result<Vec<usize>> {
        let tree = k.spanning_tree()?;
        // potential[v] = product along the tree path root → v
        let mut potential = vec![0; k.vertex_count()];
        for &v in &tree.order[1..] {
            let d = tree.parent[v].expect("non-root vertex has a parent");
            potential[v] = g.mul(potential[k.tail(d)], self.w(g, d));
        }
        let loops: Vec<usize> = k
            .edges()
            .iter()
            .enumerate()
            .filter(|&(e, _)| !tree.in_tree[e])
            .map(|(e, edge)| g.mul(g.mul(potential[edge.u], self.edge_values[e]), g.inv(potential[edge.v])))
            .collect();
        Ok(g.generated_subgroup(&loops))
    }

    pub fn dump(&self, k: &ConeComplex) -> Vec<VoltageEntry> {
        k.edges()
            .iter()
            .zip(&self.edge_values)
            .map(|(e, &value)| VoltageEntry { edge: [e.u, e.v], value })
            .collect()
    }

    /// Unlisted edges get the identity. `[v, u]` entries are read as the inverse on `u → v`.
    pub fn import(k: &ConeComplex, g: &FiniteGroup, entries: &[VoltageEntry]) -> Result<Self> {
        let mut edge_values = vec![0; k.edge_count()];
        for entry in entries {
            let [a, b] = entry.edge;
            if entry.value >= g.order() {
                return Err(Error::parse("voltage", format!("element {} not in {}", entry.value, g.name())));
            }
            let d = k
                .dart(a, b)
                .ok_or_else(|| Error::parse("voltage", format!("no edge {a}-{b}")))?;
            edge_values[d.edge] = if d.forward { entry.value } else { g.inv(entry.value) };
        }
        Ok(VoltageAssignment::from_edge_values(edge_values))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    /// Linear solve for abelian groups, search otherwise.
    #[default]
    Auto,
    Search,
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct HomOptions {
    pub surjective_only: bool,
    pub dedupe: bool,
    pub node_budget: u64,
    /// Refuse presentations with more surviving generators than this.
    pub max_generators: usize,
    pub automorphism_cap: usize,
    pub method: SolveMethod,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions {
            surjective_only: false,
            dedupe: false,
            node_budget: 50_000_000,
            max_generators: 64,
            automorphism_cap: AUTOMORPHISM_CAP,
            method: SolveMethod::Auto,
        }
    }
}

impl HomOptions {
    pub fn surjective_deduped() -> Self {
        HomOptions {
            surjective_only: true,
            dedupe: true,
            ..Self::default()
        }
    }
}

/// All flat assignments, as generator-image tuples sorted lexicographically.
pub fn solve_homs(p: &Presentation, g: &FiniteGroup, opts: &HomOptions) -> Result<Vec<Vec<usize>>> {
    if p.generator_count() > opts.max_generators {
        return Err(Error::Unsimplifiable {
            generators: p.generator_count(),
            limit: opts.max_generators,
        });
    }
    let linear = match opts.method {
        SolveMethod::Auto => g.is_abelian(),
        SolveMethod::Linear => {
            if !g.is_abelian() {
                return Err(Error::InvalidGroup(format!("{} is not abelian", g.name())));
            }
            true
        }
        SolveMethod::Search => false,
    };
    if linear {
        abelian_homs(p, g, opts.node_budget)
    } else {
        search_homs(p, g, opts.node_budget)
    }
}

/// `|Hom(π1(K), Γ)|`.
pub fn hom_count(p: &Presentation, g: &FiniteGroup, opts: &HomOptions) -> Result<u64> {
    if g.is_abelian() && opts.method != SolveMethod::Search {
        let (diag, _) = smith_diagonal(p)?;
        let mut count: u64 = 1;
        for d in diag {
            let torsion = (0..g.order()).filter(|&x| g.pow(x, d as i64) == 0).count() as u64;
            count = count.checked_mul(torsion).ok_or(Error::Overflow("hom count"))?;
        }
        return Ok(count);
    }
    Ok(solve_homs(p, g, opts)?.len() as u64)
}

/// Filters, dedupes and materializes flat assignments.
pub fn enumerate_flat_homs(
    k: &ConeComplex,
    p: &Presentation,
    g: &FiniteGroup,
    opts: &HomOptions,
) -> Result<Vec<VoltageAssignment>> {
    let mut sols = solve_homs(p, g, opts)?;
    if opts.surjective_only {
        sols.retain(|s| g.generates(s));
    }
    if opts.dedupe {
        let auts = g.automorphisms(opts.automorphism_cap)?;
        sols.retain(|s| {
            auts.iter().all(|phi| {
                let img: Vec<usize> = s.iter().map(|&x| phi[x]).collect();
                img >= *s
            })
        });
    }
    Ok(sols
        .iter()
        .map(|s| VoltageAssignment::from_generator_images(k, p, g, s))
        .collect())
}

/// Relators over surviving-generator positions.
fn positional_relators(p: &Presentation) -> Vec<Vec<(usize, bool)>> {
    let pos: std::collections::HashMap<usize, usize> =
        p.surviving.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut rels: Vec<Vec<(usize, bool)>> = p
        .relators
        .iter()
        .map(|r| r.iter().map(|l| (pos[&l.gen], l.inverse)).collect())
        .collect();
    rels.sort_by_key(|r| r.len());
    rels
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    g: &'a FiniteGroup,
    rels: &'a [Vec<(usize, bool)>],
    occ: &'a [Vec<usize>],
    branch_order: &'a [usize],
    nodes: &'a AtomicU64,
    aborted: &'a AtomicBool,
    budget: u64,
    val: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Search<'_> {
    #[inline]
    fn letter(&self, (v, inv): (usize, bool)) -> usize {
        let x = self.val[v];
        if inv {
            self.g.inv(x)
        } else {
            x
        }
    }

    /// Forces single unknowns; returns the variables set and whether all relators still hold.
    fn propagate(&mut self, mut stack: Vec<usize>) -> (Vec<usize>, bool) {
        let mut trail = Vec::new();
        while let Some(ri) = stack.pop() {
            let rel = &self.rels[ri];
            let mut unknown = None;
            let mut count = 0;
            for (i, &(v, _)) in rel.iter().enumerate() {
                if self.val[v] == UNSET {
                    count += 1;
                    unknown = Some(i);
                }
            }
            match count {
                0 => {
                    let prod = rel.iter().fold(0, |acc, &l| self.g.mul(acc, self.letter(l)));
                    if prod != 0 {
                        return (trail, false);
                    }
                }
                1 => {
                    let i = unknown.expect("one unknown");
                    let pre = rel[..i].iter().fold(0, |acc, &l| self.g.mul(acc, self.letter(l)));
                    let post = rel[i + 1..].iter().fold(0, |acc, &l| self.g.mul(acc, self.letter(l)));
                    // pre · t · post = 1
                    let t = self.g.mul(self.g.inv(pre), self.g.inv(post));
                    let (v, inv) = rel[i];
                    self.val[v] = if inv { self.g.inv(t) } else { t };
                    trail.push(v);
                    stack.extend_from_slice(&self.occ[v]);
                }
                _ => {}
            }
        }
        (trail, true)
    }

    fn next_branch(&self) -> Option<usize> {
        self.branch_order.iter().copied().find(|&v| self.val[v] == UNSET)
    }

    fn try_value(&mut self, v: usize, t: usize) {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return;
        }
        self.val[v] = t;
        let (trail, ok) = self.propagate(self.occ[v].clone());
        if ok {
            self.run();
        }
        for u in trail {
            self.val[u] = UNSET;
        }
        self.val[v] = UNSET;
    }

    fn run(&mut self) {
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        match self.next_branch() {
            None => self.out.push(self.val.clone()),
            Some(v) => {
                for t in 0..self.g.order() {
                    self.try_value(v, t);
                }
            }
        }
    }
}

fn search_homs(p: &Presentation, g: &FiniteGroup, budget: u64) -> Result<Vec<Vec<usize>>> {
    let s = p.generator_count();
    let rels = positional_relators(p);
    let mut occ = vec![Vec::new(); s];
    for (ri, r) in rels.iter().enumerate() {
        for &(v, _) in r {
            if occ[v].last() != Some(&ri) {
                occ[v].push(ri);
            }
        }
    }
    let mut branch_order: Vec<usize> = (0..s).collect();
    branch_order.sort_by_key(|&v| (std::cmp::Reverse(occ[v].len()), v));
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let mut root = Search {
        g,
        rels: &rels,
        occ: &occ,
        branch_order: &branch_order,
        nodes: &nodes,
        aborted: &aborted,
        budget,
        val: vec![UNSET; s],
        out: Vec::new(),
    };
    let (_, ok) = root.propagate((0..rels.len()).collect());
    let mut out = if !ok {
        Vec::new()
    } else if let Some(v) = root.next_branch() {
        let results = Mutex::new(Vec::new());
        (0..g.order()).into_par_iter().for_each(|t| {
            let mut branch = Search {
                val: root.val.clone(),
                out: Vec::new(),
                ..root
            };
            branch.try_value(v, t);
            results.lock().expect("no poisoned workers").extend(branch.out);
        });
        results.into_inner().expect("no poisoned workers")
    } else {
        vec![root.val.clone()]
    };
    out.sort_unstable();
    if aborted.load(Ordering::Relaxed) {
        return Err(Error::NodeBudget {
            budget,
            found: out.len(),
            partial: out,
        });
    }
    Ok(out)
}

/// Diagonal `d` and column transform `V` with `U·R·V = diag(d)` for the exponent matrix `R`.
/// `d` has one entry per surviving generator; zero means unconstrained.
fn smith_diagonal(p: &Presentation) -> Result<(Vec<i128>, Vec<Vec<i128>>)> {
    let s = p.generator_count();
    let mut a: Vec<Vec<i128>> = p
        .exponent_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let r = a.len();
    let mut v: Vec<Vec<i128>> = (0..s).map(|i| (0..s).map(|j| (i == j) as i128).collect()).collect();
    let ov = || Error::Overflow("Smith normal form");
    let col_axpy = |m: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| -> Result<()> {
        for row in m.iter_mut() {
            let t = q.checked_mul(row[src]).ok_or_else(ov)?;
            row[dst] = row[dst].checked_sub(t).ok_or_else(ov)?;
        }
        Ok(())
    };
    for t in 0..r.min(s) {
        loop {
            let pivot = (t..r)
                .flat_map(|i| (t..s).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..r {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in t..s {
                        let x = q.checked_mul(a[t][j]).ok_or_else(ov)?;
                        a[i][j] = a[i][j].checked_sub(x).ok_or_else(ov)?;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..s {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    col_axpy(&mut a, j, t, q)?;
                    col_axpy(&mut v, j, t, q)?;
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                break;
            }
        }
    }
    let diag = (0..s).map(|i| if i < r { a[i][i].abs() } else { 0 }).collect();
    Ok((diag, v))
}

/// Solutions of the abelianized relators: `x = V·y` with `d_i·y_i = 0`.
fn abelian_homs(p: &Presentation, g: &FiniteGroup, budget: u64) -> Result<Vec<Vec<usize>>> {
    let (diag, v) = smith_diagonal(p)?;
    let n = g.order() as i128;
    let choices: Vec<Vec<usize>> = diag
        .iter()
        .map(|&d| {
            let d = (d % n) as i64;
            (0..g.order()).filter(|&x| g.pow(x, d) == 0).collect()
        })
        .collect();
    let total = choices
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .ok_or(Error::Overflow("hom count"))?;
    let s = diag.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; s];
    for _ in 0..total.min(budget) {
        let x: Vec<usize> = (0..s)
            .map(|j| {
                (0..s).fold(0, |acc, i| {
                    let e = v[j][i].rem_euclid(n) as i64;
                    g.mul(acc, g.pow(choices[i][idx[i]], e))
                })
            })
            .collect();
        out.push(x);
        for i in 0..s {
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
    out.sort_unstable();
    if total > budget {
        return Err(Error::NodeBudget {
            budget,
            found: out.len(),
            partial: out,
        });
    }
    Ok(out)
}

/// A lifted code with its fibre bookkeeping.
#[derive(Clone, Debug)]
pub struct RegularLift {
    pub lifted: CssCode,
    pub degree: usize,
    pub voltage: VoltageAssignment,
}

impl RegularLift {
    /// Index of `(base index, element)` in the lifted matrices.
    pub fn index(&self, base: usize, element: usize) -> usize {
        base * self.degree + element
    }

    pub fn split(&self, lifted_index: usize) -> (usize, usize) {
        (lifted_index / self.degree, lifted_index % self.degree)
    }
}

fn fibre_labels(base: &Labels, d: usize) -> Labels {
    let expand = |v: &[String]| -> Vec<String> {
        v.iter()
            .flat_map(|l| (0..d).map(move |g| format!("{l}.{g}")))
            .collect()
    };
    Labels {
        z: expand(&base.z),
        q: expand(&base.q),
        x: expand(&base.x),
    }
}

/// Row `(c, γ)` has a one at column `(q, γ·w(c → q))`.
pub fn lift_code(base: &CssCode, k: &ConeComplex, v: &VoltageAssignment, g: &FiniteGroup) -> Result<RegularLift> {
    v.check_flat(k, g)?;
    let d = g.order();
    let lift = |h: &BitMatrix, vertex: &dyn Fn(usize) -> usize| -> BitMatrix {
        let mut out = BitMatrix::zeros(h.rows() * d, h.cols() * d);
        for (c, q) in h.entries() {
            let w = v
                .between(k, g, vertex(c), k.vertex_id(crate::codes::Cell::Q(q)))
                .expect("Tanner edge");
            for gamma in 0..d {
                out.set(c * d + gamma, q * d + g.mul(gamma, w), true);
            }
        }
        out
    };
    let hx = lift(base.hx(), &|x| k.vertex_id(crate::codes::Cell::X(x)));
    let hz = lift(base.hz(), &|z| k.vertex_id(crate::codes::Cell::Z(z)));
    let lifted = CssCode::with_labels(hx, hz, fibre_labels(base.labels(), d))?;
    Ok(RegularLift {
        lifted,
        degree: d,
        voltage: v.clone(),
    })
}

/// Pass/fail per lift property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub css_valid: bool,
    pub length_scaled: bool,
    pub weights_preserved: bool,
    pub k_lower_bound: bool,
    pub tanner_connected: bool,
    pub image_is_whole_group: bool,
}

impl LiftReport {
    pub fn all_pass(&self) -> bool {
        self.css_valid
            && self.length_scaled
            && self.weights_preserved
            && self.k_lower_bound
            && self.tanner_connected == self.image_is_whole_group
    }
}

pub fn verify_lift(base: &CssCode, k: &ConeComplex, lift: &RegularLift, g: &FiniteGroup) -> Result<LiftReport> {
    let l = &lift.lifted;
    let d = lift.degree;
    let css_valid = l.hx().mul(&l.hz().transpose())?.is_zero();
    let scaled = |w: Vec<usize>| -> Vec<usize> {
        let mut v: Vec<usize> = w.into_iter().flat_map(|x| std::iter::repeat_n(x, d)).collect();
        v.sort_unstable();
        v
    };
    let sorted = |mut v: Vec<usize>| {
        v.sort_unstable();
        v
    };
    let weights_preserved = sorted(l.hx().row_weights()) == scaled(base.hx().row_weights())
        && sorted(l.hz().row_weights()) == scaled(base.hz().row_weights())
        && sorted(l.hx().col_weights()) == scaled(base.hx().col_weights())
        && sorted(l.hz().col_weights()) == scaled(base.hz().col_weights());
    let bound = d as i64 * (base.n() as i64 - base.m_x() as i64 - base.m_z() as i64);
    Ok(LiftReport {
        css_valid,
        length_scaled: l.n() == d * base.n() && l.m_x() == d * base.m_x() && l.m_z() == d * base.m_z(),
        weights_preserved,
        k_lower_bound: l.k() as i64 >= bound,
        tanner_connected: l.tanner_graph().is_connected(),
        image_is_whole_group: lift.voltage.image(k, g)?.len() == g.order(),
    })
}

/// Connected degree-`d` covers: flat assignments into `S_d` with transitive image,
/// one per simultaneous-conjugacy class.
pub fn enumerate_perm_covers(
    k: &ConeComplex,
    p: &Presentation,
    d: usize,
    max_degree: usize,
    opts: &HomOptions,
) -> Result<(FiniteGroup, Vec<VoltageAssignment>)> {
    if d == 0 || d > max_degree {
        return Err(Error::InvalidGroup(format!("degree {d} outside 1..={max_degree}")));
    }
    let sd = FiniteGroup::symmetric(d);
    let search = HomOptions {
        method: SolveMethod::Search,
        ..opts.clone()
    };
    let mut sols = solve_homs(p, &sd, &search)?;
    sols.retain(|s| is_transitive(&sd, s, d));
    if opts.dedupe {
        sols.retain(|s| {
            (0..sd.order()).all(|c| {
                let conj: Vec<usize> = s.iter().map(|&x| sd.conjugate(c, x)).collect();
                conj >= *s
            })
        });
    }
    let covers = sols
        .iter()
        .map(|s| VoltageAssignment::from_generator_images(k, p, &sd, s))
        .collect();
    Ok((sd, covers))
}

fn is_transitive(sd: &FiniteGroup, images: &[usize], d: usize) -> bool {
    let mut seen = vec![false; d];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for &x in images {
            let j = sd.permutation(x).expect("permutation group")[i];
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Row `(c, i)` has a one at column `(q, μ⁻¹(i))` where `μ` is the permutation on `c → q`.
pub fn perm_lift_code(base: &CssCode, k: &ConeComplex, v: &VoltageAssignment, sd: &FiniteGroup) -> Result<CssCode> {
    v.check_flat(k, sd)?;
    let d = sd
        .perm_degree()
        .ok_or_else(|| Error::InvalidGroup("permutation lift needs a permutation group".into()))?;
    let lift = |h: &BitMatrix, vertex: &dyn Fn(usize) -> usize| -> BitMatrix {
        let mut out = BitMatrix::zeros(h.rows() * d, h.cols() * d);
        for (c, q) in h.entries() {
            let w = v
                .between(k, sd, vertex(c), k.vertex_id(crate::codes::Cell::Q(q)))
                .expect("Tanner edge");
            let mu_inv = sd.permutation(sd.inv(w)).expect("permutation group");
            for i in 0..d {
                out.set(c * d + i, q * d + mu_inv[i], true);
            }
        }
        out
    };
    let hx = lift(base.hx(), &|x| k.vertex_id(crate::codes::Cell::X(x)));
    let hz = lift(base.hz(), &|z| k.vertex_id(crate::codes::Cell::Z(z)));
    CssCode::with_labels(hx, hz, fibre_labels(base.labels(), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::catalog::steane;
    use crate::codes::ClassicalCode;
    use crate::complexes::Letter;
    use proptest::prelude::*;

    fn presentation(code: &CssCode) -> (ConeComplex, Presentation) {
        let k = ConeComplex::build(code);
        let p = k.presentation(&k.spanning_tree().unwrap()).simplify(100_000);
        (k, p)
    }

    fn cycle(len: usize) -> CssCode {
        CssCode::from_classical(&ClassicalCode::repetition_cycle(len))
    }

    fn small_groups() -> Vec<FiniteGroup> {
        vec![
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::direct(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
            FiniteGroup::symmetric(3),
            FiniteGroup::quaternion(),
        ]
    }

    #[test]
    fn trivial_group_has_one_hom() {
        let (k, p) = presentation(&cycle(4));
        let homs = enumerate_flat_homs(&k, &p, &FiniteGroup::trivial(), &HomOptions::default()).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].edge_values.iter().all(|&v| v == 0));
    }

    #[test]
    fn steane_is_simply_connected() {
        let (_, p) = presentation(&steane());
        assert_eq!(p.generator_count(), 0);
        for g in small_groups() {
            assert_eq!(hom_count(&p, &g, &HomOptions::default()).unwrap(), 1);
        }
    }

    #[test]
    fn trivial_lift_is_the_base() {
        let s = steane();
        let k = ConeComplex::build(&s);
        let g = FiniteGroup::trivial();
        let lift = lift_code(&s, &k, &VoltageAssignment::trivial(&k), &g).unwrap();
        assert_eq!(lift.lifted.hx(), s.hx());
        assert_eq!(lift.lifted.hz(), s.hz());
        let report = verify_lift(&s, &k, &lift, &g).unwrap();
        assert!(report.all_pass());
        assert_eq!(lift.lifted.k(), s.k());
    }

    #[test]
    fn double_cover_of_a_cycle() {
        let base = cycle(4);
        let (k, p) = presentation(&base);
        let z2 = FiniteGroup::cyclic(2);
        let homs = enumerate_flat_homs(&k, &p, &z2, &HomOptions::surjective_deduped()).unwrap();
        assert_eq!(homs.len(), 1);
        let lift = lift_code(&base, &k, &homs[0], &z2).unwrap();
        let l = &lift.lifted;
        assert_eq!((l.n(), l.m_x()), (8, 8));
        // the lifted Tanner graph is a single 16-cycle
        let t = l.tanner_graph();
        assert!(t.is_connected());
        assert!(t.adjacency().iter().all(|a| a.len() == 2));
        assert_eq!(
            CssCode::from_classical(&ClassicalCode::repetition_cycle(8))
                .isomorphism_to(l)
                .is_some(),
            true
        );
    }

    #[test]
    fn flatness_violation_names_face() {
        let one = BitMatrix::parse(&["11"]);
        let c = CssCode::new(one.clone(), one).unwrap();
        let k = ConeComplex::build(&c);
        let g = FiniteGroup::cyclic(2);
        let mut v = VoltageAssignment::trivial(&k);
        let xz = k.edges().iter().position(|e| e.kind == crate::complexes::EdgeKind::XZ).unwrap();
        v.edge_values[xz] = 1;
        assert!(matches!(lift_code(&c, &k, &v, &g), Err(Error::NotFlat { face: 0 })));
    }

    #[test]
    fn perm_covers_of_a_cycle() {
        let (k, p) = presentation(&cycle(3));
        let opts = HomOptions::default();
        let (_, all) = enumerate_perm_covers(&k, &p, 3, 5, &opts).unwrap();
        assert_eq!(all.len(), 2);
        let dedupe = HomOptions { dedupe: true, ..opts.clone() };
        let (s3, reps) = enumerate_perm_covers(&k, &p, 3, 5, &dedupe).unwrap();
        assert_eq!(reps.len(), 1);
        let lifted = perm_lift_code(&cycle(3), &k, &reps[0], &s3).unwrap();
        assert!(lifted.tanner_graph().is_connected());
        assert_eq!(lifted.n(), 9);
        let (_, one) = enumerate_perm_covers(&k, &p, 1, 5, &dedupe).unwrap();
        assert_eq!(one.len(), 1);
        assert!(enumerate_perm_covers(&k, &p, 6, 5, &dedupe).is_err());
    }

    #[test]
    fn degree_two_perm_covers_match_z2() {
        let base = cycle(5);
        let (k, p) = presentation(&base);
        let opts = HomOptions::surjective_deduped();
        let (s2, perms) = enumerate_perm_covers(&k, &p, 2, 5, &opts).unwrap();
        let z2 = FiniteGroup::cyclic(2);
        let regular = enumerate_flat_homs(&k, &p, &z2, &opts).unwrap();
        assert_eq!(perms, regular);
        for v in &perms {
            let a = perm_lift_code(&base, &k, v, &s2).unwrap();
            let b = lift_code(&base, &k, v, &z2).unwrap().lifted;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn node_budget_returns_partial() {
        let (_, p) = presentation(&cycle(4));
        let g = FiniteGroup::symmetric(3);
        let opts = HomOptions {
            node_budget: 2,
            method: SolveMethod::Search,
            ..HomOptions::default()
        };
        match solve_homs(&p, &g, &opts) {
            Err(Error::NodeBudget { partial, .. }) => assert!(partial.len() <= 2),
            other => panic!("unexpected {other:?}"),
        }
        let opts = HomOptions {
            max_generators: 0,
            ..HomOptions::default()
        };
        assert!(matches!(solve_homs(&p, &g, &opts), Err(Error::Unsimplifiable { .. })));
    }

    #[test]
    fn voltage_dump_round_trip() {
        let base = cycle(4);
        let (k, p) = presentation(&base);
        let g = FiniteGroup::cyclic(3);
        for v in enumerate_flat_homs(&k, &p, &g, &HomOptions::default()).unwrap() {
            let dump = v.dump(&k);
            let text = serde_json::to_string(&dump).unwrap();
            let back: Vec<VoltageEntry> = serde_json::from_str(&text).unwrap();
            let w = VoltageAssignment::import(&k, &g, &back).unwrap();
            assert_eq!(w.edge_values, v.edge_values);
        }
    }

    /// Presentation with only the given relators over `gens` generators.
    fn raw(gens: usize, relators: Vec<Vec<(usize, i32)>>) -> Presentation {
        let word = |r: &Vec<(usize, i32)>| -> Vec<Letter> {
            r.iter()
                .flat_map(|&(g, e)| {
                    std::iter::repeat_n(Letter { gen: g, inverse: e < 0 }, e.unsigned_abs() as usize)
                })
                .collect()
        };
        let rels: Vec<Vec<Letter>> = relators.iter().map(word).collect();
        Presentation {
            generator_edges: (0..gens).collect(),
            edge_generator: (0..gens).map(Some).collect(),
            surviving: (0..gens).collect(),
            original_relators: rels.clone(),
            relators: rels,
            substitution: (0..gens).map(|gen| vec![Letter { gen, inverse: false }]).collect(),
            complete: true,
        }
    }

    #[test]
    fn abelian_solver_matches_search() {
        // ⟨x, y | x^3 y^-3⟩, ⟨x, y, z | x^2 y^2, y^3 z^-3⟩, ⟨x, y | x y x^-1 y^-1⟩
        let cases = vec![
            raw(2, vec![vec![(0, 3), (1, -3)]]),
            raw(3, vec![vec![(0, 2), (1, 2)], vec![(1, 3), (2, -3)]]),
            raw(2, vec![vec![(0, 1), (1, 1), (0, -1), (1, -1)]]),
            raw(2, vec![vec![(0, 4), (1, 6)], vec![(0, 6), (1, 4)]]),
        ];
        let z3 = FiniteGroup::cyclic(3);
        let groups = [
            FiniteGroup::cyclic(6),
            FiniteGroup::direct(&z3, &z3),
            FiniteGroup::direct(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)),
            FiniteGroup::cyclic(12),
        ];
        for p in &cases {
            for g in &groups {
                let lin = HomOptions {
                    method: SolveMethod::Linear,
                    ..HomOptions::default()
                };
                let dfs = HomOptions {
                    method: SolveMethod::Search,
                    ..HomOptions::default()
                };
                let a = solve_homs(p, g, &lin).unwrap();
                let b = solve_homs(p, g, &dfs).unwrap();
                assert_eq!(a, b, "{} on {:?}", g.name(), p.relators);
                assert_eq!(hom_count(p, g, &lin).unwrap(), b.len() as u64);
            }
        }
    }

    #[test]
    fn search_matches_brute_force_on_nonabelian() {
        let p = raw(2, vec![vec![(0, 3), (1, -3)]]);
        for g in [FiniteGroup::symmetric(3), FiniteGroup::quaternion(), FiniteGroup::alternating4()] {
            let brute = (0..g.order())
                .flat_map(|x| (0..g.order()).map(move |y| (x, y)))
                .filter(|&(x, y)| g.pow(x, 3) == g.pow(y, 3))
                .count();
            assert_eq!(hom_count(&p, &g, &HomOptions::default()).unwrap(), brute as u64);
        }
    }

    #[test]
    fn dedupe_picks_orbit_minima() {
        let (k, p) = presentation(&cycle(4));
        let z5 = FiniteGroup::cyclic(5);
        let all = enumerate_flat_homs(&k, &p, &z5, &HomOptions::default()).unwrap();
        assert_eq!(all.len(), 5);
        let reps = enumerate_flat_homs(&k, &p, &z5, &HomOptions::surjective_deduped()).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].generator_images, vec![1]);
    }

    proptest! {
        #[test]
        fn lifts_of_random_homs_are_css(len in 3usize..7, gi in 0usize..7) {
            let base = cycle(len);
            let (k, p) = presentation(&base);
            let g = small_groups().swap_remove(gi);
            for v in enumerate_flat_homs(&k, &p, &g, &HomOptions::default()).unwrap() {
                let lift = lift_code(&base, &k, &v, &g).unwrap();
                let report = verify_lift(&base, &k, &lift, &g).unwrap();
                prop_assert!(report.all_pass(), "{report:?}");
            }
        }
    }
}

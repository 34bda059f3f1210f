//! Hypergraph products, balanced products over a finite group, and lifts of hypergraph products.
//!
//! Convention throughout: a classical code is the two-term complex bits → checks. The product
//! of two classical codes has Z-checks on bits×bits, qubits on bits×checks then checks×bits,
//! and X-checks on checks×checks.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::codes::{ClassicalCode, CssCode};
use crate::covers::RegularLift;
use crate::error::{Error, Result};
use crate::f2la::BitMatrix;
use crate::groups::FiniteGroup;

/// `H_X = [H1⊗I | I⊗H2]`, `H_Z = [I⊗H2^T | H1^T⊗I]`.
pub fn hpc(c1: &ClassicalCode, c2: &ClassicalCode) -> CssCode {
    let (h1, h2) = (c1.h(), c2.h());
    let (m1, n1, m2, n2) = (c1.m(), c1.n(), c2.m(), c2.n());
    let hx = h1
        .kron(&BitMatrix::identity(m2))
        .hstack(&BitMatrix::identity(m1).kron(h2))
        .expect("row counts m1·m2");
    let hz = BitMatrix::identity(n1)
        .kron(&h2.transpose())
        .hstack(&h1.transpose().kron(&BitMatrix::identity(n2)))
        .expect("row counts n1·n2");
    CssCode::new(hx, hz).expect("hypergraph products are orthogonal")
}

/// A classical code with a group element on every check → bit dart, listed in the order of
/// `h().entries()`. Lifting puts a one at `((c, γ), (b, γ·ν(c → b)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltagedCode {
    code: ClassicalCode,
    voltages: Vec<usize>,
    index: HashMap<(usize, usize), usize>,
}

impl VoltagedCode {
    pub fn new(code: ClassicalCode, voltages: Vec<usize>) -> Result<Self> {
        let index: HashMap<_, _> = code.h().entries().enumerate().map(|(i, e)| (e, i)).collect();
        if voltages.len() != index.len() {
            return Err(Error::LengthMismatch {
                expected: index.len(),
                found: voltages.len(),
            });
        }
        Ok(VoltagedCode { code, voltages, index })
    }

    pub fn trivial(code: ClassicalCode) -> Self {
        let n = code.h().count_ones();
        Self::new(code, vec![0; n]).expect("one voltage per entry")
    }

    pub fn code(&self) -> &ClassicalCode {
        &self.code
    }

    pub fn voltages(&self) -> &[usize] {
        &self.voltages
    }

    /// Voltage on the dart check → bit.
    pub fn voltage(&self, check: usize, bit: usize) -> Option<usize> {
        self.index.get(&(check, bit)).map(|&i| self.voltages[i])
    }

    fn check_group(&self, g: &FiniteGroup) -> Result<()> {
        match self.voltages.iter().find(|&&v| v >= g.order()) {
            Some(v) => Err(Error::InvalidGroup(format!("voltage {v} is not an element of {}", g.name()))),
            None => Ok(()),
        }
    }

    pub fn lift(&self, g: &FiniteGroup) -> Result<ClassicalCode> {
        self.check_group(g)?;
        let d = g.order();
        let h = self.code.h();
        let mut out = BitMatrix::zeros(h.rows() * d, h.cols() * d);
        for ((c, b), &w) in h.entries().zip(&self.voltages) {
            for gamma in 0..d {
                out.set(c * d + gamma, b * d + g.mul(gamma, w), true);
            }
        }
        ClassicalCode::new(out)
    }
}

/// A chain complex of free left Γ-modules. `∂(s, h)` contains `(t, h·u)` for each `(s, t, u)`
/// in the boundary list of the source degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaComplex {
    order: usize,
    cells: Vec<usize>,
    /// `boundary[i]` holds the terms of `∂_{i+1}: C_{i+1} → C_i`.
    boundary: Vec<Vec<(usize, usize, usize)>>,
}

impl GammaComplex {
    /// Reads the module structure back from an equivariant matrix with rows `(row cell, γ)`.
    /// `rows_are_sources` says whether the rows index the higher-degree cells.
    fn terms_from_matrix(m: &BitMatrix, g: &FiniteGroup, rows_are_sources: bool) -> Result<Vec<(usize, usize, usize)>> {
        let d = g.order();
        if m.rows() % d != 0 || m.cols() % d != 0 {
            return Err(Error::GroupMismatch);
        }
        let mut terms = Vec::new();
        for r in (0..m.rows()).step_by(d) {
            for col in m.row_support(r) {
                let (cell, w) = (col / d, col % d);
                let (row_cell, col_cell) = (r / d, cell);
                for gamma in 0..d {
                    if !m.get(row_cell * d + gamma, col_cell * d + g.mul(gamma, w)) {
                        return Err(Error::GroupMismatch);
                    }
                }
                terms.push(if rows_are_sources {
                    (row_cell, col_cell, w)
                } else {
                    (col_cell, row_cell, g.inv(w))
                });
            }
        }
        // every one must be a translate of a base-row one
        if terms.len() * d != m.count_ones() {
            return Err(Error::GroupMismatch);
        }
        Ok(terms)
    }

    /// Bits in degree 1, checks in degree 0, from an already lifted classical code.
    pub fn from_lifted_classical(lifted: &ClassicalCode, g: &FiniteGroup) -> Result<Self> {
        let d = g.order();
        let terms = Self::terms_from_matrix(lifted.h(), g, false)?;
        Ok(GammaComplex {
            order: d,
            cells: vec![lifted.m() / d, lifted.n() / d],
            boundary: vec![terms],
        })
    }

    /// Z-checks in degree 2, qubits in degree 1, X-checks in degree 0.
    pub fn from_regular_lift(lift: &RegularLift, g: &FiniteGroup) -> Result<Self> {
        let d = g.order();
        if lift.degree != d {
            return Err(Error::GroupMismatch);
        }
        let l = &lift.lifted;
        Ok(GammaComplex {
            order: d,
            cells: vec![l.m_x() / d, l.n() / d, l.m_z() / d],
            boundary: vec![
                Self::terms_from_matrix(l.hx(), g, false)?,
                Self::terms_from_matrix(l.hz(), g, true)?,
            ],
        })
    }

    pub fn top_degree(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, degree: usize) -> usize {
        self.cells.get(degree).copied().unwrap_or(0)
    }

    fn terms(&self, source_degree: usize) -> &[(usize, usize, usize)] {
        match source_degree {
            0 => &[],
            i => self.boundary.get(i - 1).map_or(&[], Vec::as_slice),
        }
    }
}

/// A basis element of a balanced product, in the gauge where the left factor's group
/// coordinate is the identity: `((c1, γ1), (c2, γ2)) ↦ (c1, c2, γ1⁻¹γ2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductIndex {
    pub left_degree: usize,
    pub left: usize,
    pub right_degree: usize,
    pub right: usize,
    pub element: usize,
}

/// The F2 chain complex `C ⊗_Γ D` with its basis labels. Within a degree the blocks are
/// ordered by decreasing left degree, and each block is element-major.
#[derive(Clone, Debug)]
pub struct BalancedComplex {
    bases: Vec<Vec<ProductIndex>>,
    positions: Vec<HashMap<ProductIndex, usize>>,
    /// `boundary[i]` is `∂_{i+1}` with rows in degree `i`.
    boundary: Vec<BitMatrix>,
}

impl BalancedComplex {
    pub fn tensor(a: &GammaComplex, b: &GammaComplex, g: &FiniteGroup) -> Result<Self> {
        let d = g.order();
        if a.order != d || b.order != d {
            return Err(Error::GroupMismatch);
        }
        let top = a.top_degree() + b.top_degree();
        let bases: Vec<Vec<ProductIndex>> = (0..=top)
            .map(|k| {
                let mut basis = Vec::new();
                for i in (0..=k.min(a.top_degree())).rev() {
                    let j = k - i;
                    if j > b.top_degree() {
                        continue;
                    }
                    for element in 0..d {
                        for left in 0..a.cells(i) {
                            for right in 0..b.cells(j) {
                                basis.push(ProductIndex {
                                    left_degree: i,
                                    left,
                                    right_degree: j,
                                    right,
                                    element,
                                });
                            }
                        }
                    }
                }
                basis
            })
            .collect();
        let positions: Vec<HashMap<ProductIndex, usize>> = bases
            .iter()
            .map(|basis| basis.iter().enumerate().map(|(i, &p)| (p, i)).collect())
            .collect();
        let boundary = (1..=top)
            .map(|k| {
                let mut m = BitMatrix::zeros(bases[k - 1].len(), bases[k].len());
                for (col, p) in bases[k].iter().enumerate() {
                    // ∂(x, e) ⊗ (y, δ): the term (t, u) becomes (t, y, u⁻¹δ)
                    for &(s, t, u) in a.terms(p.left_degree) {
                        if s == p.left {
                            let q = ProductIndex {
                                left_degree: p.left_degree - 1,
                                left: t,
                                element: g.mul(g.inv(u), p.element),
                                ..*p
                            };
                            m.flip(positions[k - 1][&q], col);
                        }
                    }
                    // (x, e) ⊗ ∂(y, δ): the term (t, u) becomes (x, t, δu)
                    for &(s, t, u) in b.terms(p.right_degree) {
                        if s == p.right {
                            let q = ProductIndex {
                                right_degree: p.right_degree - 1,
                                right: t,
                                element: g.mul(p.element, u),
                                ..*p
                            };
                            m.flip(positions[k - 1][&q], col);
                        }
                    }
                }
                m
            })
            .collect();
        Ok(BalancedComplex {
            bases,
            positions,
            boundary,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, degree: usize) -> &[ProductIndex] {
        &self.bases[degree]
    }

    pub fn position(&self, degree: usize, p: &ProductIndex) -> Option<usize> {
        self.positions.get(degree)?.get(p).copied()
    }

    /// `∂_k: D_k → D_{k−1}` (an empty matrix outside the complex).
    pub fn boundary(&self, k: usize) -> BitMatrix {
        let rows = |i: Option<usize>| i.and_then(|i| self.bases.get(i)).map_or(0, Vec::len);
        match k.checked_sub(1).and_then(|i| self.boundary.get(i)) {
            Some(m) => m.clone(),
            None => BitMatrix::zeros(rows(k.checked_sub(1)), rows(Some(k))),
        }
    }

    /// `∂_k ∘ ∂_{k+1} = 0` for every degree.
    pub fn is_complex(&self) -> bool {
        (1..self.top_degree()).all(|k| {
            self.boundary(k)
                .mul(&self.boundary(k + 1))
                .map(|m| m.is_zero())
                .unwrap_or(false)
        })
    }

    /// Qubits in degree `k`, `H_X = ∂_k`, `H_Z = ∂_{k+1}^T`.
    pub fn css_at(&self, k: usize) -> Result<CssCode> {
        if k > self.top_degree() {
            return Err(Error::InvalidFamily(format!("no degree {k} in the product")));
        }
        CssCode::new(self.boundary(k), self.boundary(k + 1).transpose())
    }
}

/// Balanced product of two lifted CSS codes, read off the middle three terms.
pub fn balanced_product(l1: &RegularLift, l2: &RegularLift, g: &FiniteGroup) -> Result<CssCode> {
    let a = GammaComplex::from_regular_lift(l1, g)?;
    let b = GammaComplex::from_regular_lift(l2, g)?;
    BalancedComplex::tensor(&a, &b, g)?.css_at(2)
}

/// Balanced product of two lifted classical codes: the lifted product code.
pub fn balanced_product_classical(lifted1: &ClassicalCode, lifted2: &ClassicalCode, g: &FiniteGroup) -> Result<CssCode> {
    Ok(lifted_product_complex(lifted1, lifted2, g)?.css_at(1)?)
}

fn lifted_product_complex(lifted1: &ClassicalCode, lifted2: &ClassicalCode, g: &FiniteGroup) -> Result<BalancedComplex> {
    let a = GammaComplex::from_lifted_classical(lifted1, g)?;
    let b = GammaComplex::from_lifted_classical(lifted2, g)?;
    BalancedComplex::tensor(&a, &b, g)
}

/// Sizes of the hypergraph product blocks.
#[derive(Clone, Copy, Debug)]
struct HpcShape {
    n1: usize,
    m1: usize,
    n2: usize,
    m2: usize,
}

impl HpcShape {
    fn of(c1: &ClassicalCode, c2: &ClassicalCode) -> Self {
        HpcShape {
            n1: c1.n(),
            m1: c1.m(),
            n2: c2.n(),
            m2: c2.m(),
        }
    }

    fn qubit_a(&self, b1: usize, c2: usize) -> usize {
        b1 * self.m2 + c2
    }

    fn qubit_b(&self, c1: usize, b2: usize) -> usize {
        self.n1 * self.m2 + c1 * self.n2 + b2
    }

    fn qubits(&self) -> usize {
        self.n1 * self.m2 + self.m1 * self.n2
    }
}

/// Quotient of the product of the two lifted Tanner graphs by the diagonal Γ-action.
///
/// Cells are `(cell1, cell2, δ)` with `δ = γ1⁻¹γ2`; the index is `hpc index · |Γ| + δ`, the
/// layout `lift_code` uses. A factor-1 edge multiplies `δ` on the left by the inverse of its
/// voltage, a factor-2 edge on the right. The Goursat identification is the identity of Γ;
/// any other is absorbed by composing the second voltage with it.
pub fn goursat_lift_hpc(t1: &VoltagedCode, t2: &VoltagedCode, g: &FiniteGroup) -> Result<CssCode> {
    t1.check_group(g)?;
    t2.check_group(g)?;
    let d = g.order();
    let s = HpcShape::of(&t1.code, &t2.code);
    let (h1, h2) = (t1.code.h(), t2.code.h());
    let mut hz = BitMatrix::zeros(s.n1 * s.n2 * d, s.qubits() * d);
    let mut hx = BitMatrix::zeros(s.m1 * s.m2 * d, s.qubits() * d);
    for b1 in 0..s.n1 {
        for b2 in 0..s.n2 {
            for delta in 0..d {
                let row = (b1 * s.n2 + b2) * d + delta;
                for (c2, b) in h2.entries().filter(|&(_, b)| b == b2) {
                    let w2 = t2.voltage(c2, b).expect("entry");
                    hz.set(row, s.qubit_a(b1, c2) * d + g.mul(delta, g.inv(w2)), true);
                }
                for (c1, b) in h1.entries().filter(|&(_, b)| b == b1) {
                    let w1 = t1.voltage(c1, b).expect("entry");
                    hz.set(row, s.qubit_b(c1, b2) * d + g.mul(w1, delta), true);
                }
            }
        }
    }
    for c1 in 0..s.m1 {
        for c2 in 0..s.m2 {
            for delta in 0..d {
                let row = (c1 * s.m2 + c2) * d + delta;
                for b1 in h1.row_support(c1) {
                    let w1 = t1.voltage(c1, b1).expect("entry");
                    hx.set(row, s.qubit_a(b1, c2) * d + g.mul(g.inv(w1), delta), true);
                }
                for b2 in h2.row_support(c2) {
                    let w2 = t2.voltage(c2, b2).expect("entry");
                    hx.set(row, s.qubit_b(c1, b2) * d + g.mul(delta, w2), true);
                }
            }
        }
    }
    CssCode::new(hx, hz)
}

/// Where the two constructions first disagree, in the Goursat layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// `'X'` or `'Z'`.
    pub matrix: char,
    pub row: usize,
    pub col: usize,
}

/// Outcome of comparing the Goursat lift with the lifted product code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpcEquivalence {
    pub equal: bool,
    /// Image in the balanced-product layout of each Goursat qubit, X-check and Z-check.
    pub qubits: Vec<usize>,
    pub x_checks: Vec<usize>,
    pub z_checks: Vec<usize>,
    pub first_mismatch: Option<Mismatch>,
}

/// Compares `goursat_lift_hpc(t1, t2)` with the balanced product of the two classical lifts
/// under the index bijection `(cell1, cell2, δ) ↦ (cell1, cell2, δ)`.
pub fn check_lpc_equivalence(t1: &VoltagedCode, t2: &VoltagedCode, g: &FiniteGroup) -> Result<LpcEquivalence> {
    let goursat = goursat_lift_hpc(t1, t2, g)?;
    let product = lifted_product_complex(&t1.lift(g)?, &t2.lift(g)?, g)?;
    let lpc = product.css_at(1)?;
    let d = g.order();
    let s = HpcShape::of(&t1.code, &t2.code);
    let at = |degree: usize, ld: usize, left: usize, rd: usize, right: usize, element: usize| {
        let p = ProductIndex {
            left_degree: ld,
            left,
            right_degree: rd,
            right,
            element,
        };
        product.position(degree, &p).expect("cell of the product")
    };
    let mut qubits = vec![0; goursat.n()];
    for delta in 0..d {
        for b1 in 0..s.n1 {
            for c2 in 0..s.m2 {
                qubits[s.qubit_a(b1, c2) * d + delta] = at(1, 1, b1, 0, c2, delta);
            }
        }
        for c1 in 0..s.m1 {
            for b2 in 0..s.n2 {
                qubits[s.qubit_b(c1, b2) * d + delta] = at(1, 0, c1, 1, b2, delta);
            }
        }
    }
    let mut z_checks = vec![0; goursat.m_z()];
    let mut x_checks = vec![0; goursat.m_x()];
    for delta in 0..d {
        for b1 in 0..s.n1 {
            for b2 in 0..s.n2 {
                z_checks[(b1 * s.n2 + b2) * d + delta] = at(2, 1, b1, 1, b2, delta);
            }
        }
        for c1 in 0..s.m1 {
            for c2 in 0..s.m2 {
                x_checks[(c1 * s.m2 + c2) * d + delta] = at(0, 0, c1, 0, c2, delta);
            }
        }
    }
    let compare = |name: char, mine: &BitMatrix, theirs: &BitMatrix, rows: &[usize]| -> Option<Mismatch> {
        if mine.shape() != theirs.shape() {
            return Some(Mismatch { matrix: name, row: 0, col: 0 });
        }
        (0..mine.rows()).find_map(|r| {
            (0..mine.cols())
                .find(|&c| mine.get(r, c) != theirs.get(rows[r], qubits[c]))
                .map(|col| Mismatch { matrix: name, row: r, col })
        })
    };
    let first_mismatch = compare('X', goursat.hx(), lpc.hx(), &x_checks)
        .or_else(|| compare('Z', goursat.hz(), lpc.hz(), &z_checks));
    Ok(LpcEquivalence {
        equal: first_mismatch.is_none(),
        qubits,
        x_checks,
        z_checks,
        first_mismatch,
    })
}

/// Flat voltages on a cycle's Tanner graph up to gauge: identity everywhere except the dart
/// from the last check to bit 0.
pub fn cycle_voltages(len: usize, g: &FiniteGroup) -> Vec<VoltagedCode> {
    let code = ClassicalCode::repetition_cycle(len);
    let entries: Vec<(usize, usize)> = code.h().entries().collect();
    let closing = entries
        .iter()
        .position(|&(c, b)| c == len - 1 && b == 0)
        .expect("cycle closes at bit 0");
    (0..g.order())
        .map(|x| {
            let mut v = vec![0; entries.len()];
            v[closing] = x;
            VoltagedCode::new(code.clone(), v).expect("one voltage per entry")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::ConeComplex;
    use crate::covers::{lift_code, VoltageAssignment};
    use crate::codes::Cell;
    use crate::distance::{distance_exact, Side};
    use proptest::prelude::*;

    fn random_h(rows: usize, cols: usize, seed: u64) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        let mut s = seed | 1;
        for r in 0..rows {
            for c in 0..cols {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                m.set(r, c, s % 2 == 1);
            }
        }
        m
    }

    #[test]
    fn toric_from_cycles() {
        let c3 = ClassicalCode::repetition_cycle(3);
        let code = hpc(&c3, &c3);
        assert_eq!((code.n(), code.k()), (18, 2));
        assert_eq!(distance_exact(&code, Side::X, 24).unwrap().value, 3);
        assert_eq!(distance_exact(&code, Side::Z, 24).unwrap().value, 3);
    }

    #[test]
    fn one_bit_factor() {
        // (bits × checks) is empty, so the product is the transposed first factor with only Z-checks
        let c = ClassicalCode::new(BitMatrix::parse(&["1100", "0111"])).unwrap();
        let bit = ClassicalCode::new(BitMatrix::zeros(0, 1)).unwrap();
        let code = hpc(&c, &bit);
        assert_eq!(code.m_x(), 0);
        assert_eq!(code.hz(), &c.h().transpose());
    }

    #[test]
    fn trivial_group_everything_agrees() {
        let c1 = ClassicalCode::repetition_cycle(3);
        let c2 = ClassicalCode::new(BitMatrix::parse(&["110", "011"])).unwrap();
        let one = FiniteGroup::trivial();
        let (t1, t2) = (VoltagedCode::trivial(c1.clone()), VoltagedCode::trivial(c2.clone()));
        let base = hpc(&c1, &c2);
        assert_eq!(goursat_lift_hpc(&t1, &t2, &one).unwrap(), base);
        assert_eq!(balanced_product_classical(&c1, &c2, &one).unwrap(), base);
        assert!(check_lpc_equivalence(&t1, &t2, &one).unwrap().equal);
    }

    #[test]
    fn goursat_is_a_lift_of_the_product() {
        // abelian case: lift_code on the product cone-complex
        let z3 = FiniteGroup::cyclic(3);
        let t1 = &cycle_voltages(3, &z3)[1];
        let t2 = &cycle_voltages(2, &z3)[2];
        let base = hpc(t1.code(), t2.code());
        let k = ConeComplex::build(&base);
        let s = HpcShape::of(t1.code(), t2.code());
        let mut values = vec![0; k.edge_count()];
        let mut set = |a: Cell, b: Cell, w: usize| {
            let d = k.dart(k.vertex_id(a), k.vertex_id(b)).expect("edge");
            values[d.edge] = if d.forward { w } else { z3.inv(w) };
        };
        // darts point bit → check; factor 1 carries ν1(b → c)⁻¹, factor 2 carries ν2(b → c)
        for (c1, b1) in t1.code().h().entries() {
            let w = t1.voltage(c1, b1).unwrap();
            for b2 in 0..s.n2 {
                set(Cell::Z(b1 * s.n2 + b2), Cell::Q(s.qubit_b(c1, b2)), w);
            }
            for c2 in 0..s.m2 {
                set(Cell::Q(s.qubit_a(b1, c2)), Cell::X(c1 * s.m2 + c2), w);
            }
        }
        for (c2, b2) in t2.code().h().entries() {
            let w = z3.inv(t2.voltage(c2, b2).unwrap());
            for b1 in 0..s.n1 {
                set(Cell::Z(b1 * s.n2 + b2), Cell::Q(s.qubit_a(b1, c2)), w);
            }
            for c1 in 0..s.m1 {
                set(Cell::Q(s.qubit_b(c1, b2)), Cell::X(c1 * s.m2 + c2), w);
            }
        }
        // XZ edges close the triangles
        for (e, edge) in k.edges().iter().enumerate() {
            if edge.kind == crate::complexes::EdgeKind::XZ {
                let (z, x) = (edge.u, edge.v);
                let q = (0..base.n())
                    .map(|q| k.vertex_id(Cell::Q(q)))
                    .find(|&q| k.dart(z, q).is_some() && k.dart(q, x).is_some())
                    .unwrap();
                let w = |a, b| {
                    let d = k.dart(a, b).unwrap();
                    if d.forward { values[d.edge] } else { z3.inv(values[d.edge]) }
                };
                values[e] = z3.mul(w(z, q), w(q, x));
            }
        }
        let v = VoltageAssignment::from_edge_values(values);
        let lifted = lift_code(&base, &k, &v, &z3).unwrap();
        let goursat = goursat_lift_hpc(t1, t2, &z3).unwrap();
        assert_eq!(lifted.lifted.hx(), goursat.hx());
        assert_eq!(lifted.lifted.hz(), goursat.hz());
    }

    #[test]
    fn sweep_cycles_small_groups() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
            for l1 in 2..=4 {
                for l2 in 2..=4 {
                    for t1 in cycle_voltages(l1, &g) {
                        for t2 in cycle_voltages(l2, &g) {
                            let r = check_lpc_equivalence(&t1, &t2, &g).unwrap();
                            assert!(r.equal, "{} {l1} {l2}: {:?}", g.name(), r.first_mismatch);
                            let code = goursat_lift_hpc(&t1, &t2, &g).unwrap();
                            assert_eq!(code.n(), g.order() * (2 * l1 * l2));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gauge_twisted_voltages_still_match() {
        let s3 = FiniteGroup::symmetric(3);
        let code = ClassicalCode::repetition_cycle(3);
        let n = code.h().count_ones();
        for seed in 0..6u64 {
            let v1: Vec<usize> = (0..n).map(|i| ((seed * 7 + i as u64 * 5) % 6) as usize).collect();
            let v2: Vec<usize> = (0..n).map(|i| ((seed * 3 + i as u64 * 11) % 6) as usize).collect();
            let t1 = VoltagedCode::new(code.clone(), v1).unwrap();
            let t2 = VoltagedCode::new(code.clone(), v2).unwrap();
            assert!(check_lpc_equivalence(&t1, &t2, &s3).unwrap().equal);
        }
    }

    #[test]
    fn bijection_is_a_permutation() {
        let z3 = FiniteGroup::cyclic(3);
        let t1 = &cycle_voltages(3, &z3)[1];
        let t2 = &cycle_voltages(4, &z3)[2];
        let r = check_lpc_equivalence(t1, t2, &z3).unwrap();
        for map in [&r.qubits, &r.x_checks, &r.z_checks] {
            let mut sorted = map.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..map.len()).collect::<Vec<_>>());
        }
        assert!(r.qubits.iter().enumerate().any(|(i, &j)| i != j));
    }

    #[test]
    fn balanced_product_of_css_lifts() {
        let z2 = FiniteGroup::cyclic(2);
        let c = ClassicalCode::repetition_cycle(2);
        let base = CssCode::from_classical(&c);
        let k = ConeComplex::build(&base);
        let lift = lift_code(&base, &k, &VoltageAssignment::trivial(&k), &z2).unwrap();
        // a 1-bit code with no checks
        let bit = CssCode::new(BitMatrix::zeros(0, 1), BitMatrix::zeros(0, 1)).unwrap();
        let kb = ConeComplex::build(&bit);
        let lb = lift_code(&bit, &kb, &VoltageAssignment::trivial(&kb), &z2).unwrap();
        let prod = balanced_product(&lift, &lb, &z2).unwrap();
        assert_eq!(prod.n(), lift.lifted.n());
        assert_eq!(prod.hx().rank(), lift.lifted.hx().rank());
        assert!(balanced_product(&lift, &lb, &FiniteGroup::cyclic(3)).is_err());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let z3 = FiniteGroup::cyclic(3);
        let steane = crate::codes::catalog::steane();
        let k = ConeComplex::build(&steane);
        let l = lift_code(&steane, &k, &VoltageAssignment::trivial(&k), &z3).unwrap();
        let a = GammaComplex::from_regular_lift(&l, &z3).unwrap();
        let t = &cycle_voltages(4, &z3)[2];
        let b = GammaComplex::from_lifted_classical(&t.lift(&z3).unwrap(), &z3).unwrap();
        let prod = BalancedComplex::tensor(&a, &b, &z3).unwrap();
        assert!(prod.is_complex());
        for deg in 1..prod.top_degree() {
            assert!(prod.css_at(deg).is_ok());
        }
    }

    #[test]
    fn non_equivariant_matrix_is_rejected() {
        let z2 = FiniteGroup::cyclic(2);
        let h = BitMatrix::parse(&["1000", "0001"]);
        let c = ClassicalCode::new(h).unwrap();
        assert!(GammaComplex::from_lifted_classical(&c, &z2).is_err());
    }

    proptest! {
        #[test]
        fn kunneth(m1 in 1usize..5, n1 in 1usize..7, m2 in 1usize..5, n2 in 1usize..7, seed in any::<u64>()) {
            let c1 = ClassicalCode::new(random_h(m1, n1, seed)).unwrap();
            let c2 = ClassicalCode::new(random_h(m2, n2, seed.rotate_left(17) ^ 0x9e37)).unwrap();
            let (r1, r2) = (c1.rank(), c2.rank());
            let code = hpc(&c1, &c2);
            prop_assert_eq!(code.k(), (n1 - r1) * (m2 - r2) + (m1 - r1) * (n2 - r2));
        }

        #[test]
        fn classical_balanced_products_are_complexes(len in 2usize..5, x in 0usize..6, y in 0usize..6) {
            let s3 = FiniteGroup::symmetric(3);
            let t1 = &cycle_voltages(len, &s3)[x];
            let t2 = &cycle_voltages(len + 1, &s3)[y];
            let c = lifted_product_complex(&t1.lift(&s3).unwrap(), &t2.lift(&s3).unwrap(), &s3).unwrap();
            prop_assert!(c.is_complex());
        }
    }
}

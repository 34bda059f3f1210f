//! Finite groups given by multiplication tables.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the order of groups closed from permutations.
pub const CLOSURE_CAP: usize = 5040;
/// Default cap on the order of groups whose automorphisms are enumerated.
pub const AUTOMORPHISM_CAP: usize = 48;

/// A finite group with identity at index 0.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
    perms: Option<Vec<Vec<usize>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a raw table. Any element may be the identity; it is moved to index 0.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidGroup("table is not square over its elements".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        // relabel by swapping e and 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u32;
            }
        }
        Self::from_raw(name.into(), n, table, None)
    }

    fn from_raw(name: String, n: usize, table: Vec<u32>, perms: Option<Vec<Vec<usize>>>) -> Result<Self> {
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let v = table[a * n + b] as usize;
                if seen[v] {
                    return Err(Error::InvalidGroup(format!("row {a} repeats element {v}")));
                }
                seen[v] = true;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] == 0)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            if table[b * n + a] != 0 {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
            inv[a] = b as u32;
        }
        let mut g = FiniteGroup {
            name,
            order: n,
            table,
            inv,
            generators: Vec::new(),
            perms,
        };
        g.check_associativity()?;
        g.generators = g.canonical_generators();
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if n <= 64 {
            Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))))
        } else {
            // deterministic sample of about 2^18 triples
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            Box::new((0..(1usize << 18)).map(move |_| {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                let v = s as usize;
                (v % n, (v / n) % n, (v / n / n) % n)
            }))
        };
        for (a, b, c) in triples {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
            }
        }
        Ok(())
    }

    /// Smallest-index greedy generating set.
    fn canonical_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for x in 1..self.order {
            if !inside[x] {
                gens.push(x);
                for y in self.generated_subgroup(&gens) {
                    inside[y] = true;
                }
            }
        }
        gens
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).renamed("1")
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        Self::from_raw(format!("Z{n}"), n, table, None).expect("cyclic group")
    }

    /// Direct product; `(g, h)` has index `g·|H| + h`.
    pub fn direct(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let g = a.mul(x / nb, y / nb);
                let h = b.mul(x % nb, y % nb);
                table[x * n + y] = (g * nb + h) as u32;
            }
        }
        let name = format!("{}x{}", a.bracketed_name(), b.bracketed_name());
        Self::from_raw(name, n, table, None).expect("direct product")
    }

    /// `Z_n ⋊ Z_m` with `(a, b)·(c, d) = (a + k^b c, b + d)`; `(a, b)` has index `a + n·b`.
    pub fn semidirect(n: usize, m: usize, k: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidGroup("semidirect factors must be nonempty".into()));
        }
        let pow = |e: usize| (0..e).fold(1 % n, |acc, _| acc * k % n);
        if gcd(k % n, n) != 1 && n > 1 || pow(m) != 1 % n {
            return Err(Error::InvalidGroup(format!(
                "action exponent {k} does not satisfy k^{m} = 1 mod {n}"
            )));
        }
        let order = n * m;
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            let (a, b) = (x % n, x / n);
            for y in 0..order {
                let (c, d) = (y % n, y / n);
                let u = (a + pow(b) * c) % n;
                let v = (b + d) % m;
                table[x * order + y] = (u + n * v) as u32;
            }
        }
        Self::from_raw(format!("Z{n}:Z{m}"), order, table, None)
    }

    /// Closure of permutations of `0..degree`; the product `a·b` applies `b` first.
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Self> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = compose(&elems[i], g);
                if !index.contains_key(&p) {
                    if elems.len() == cap {
                        return Err(Error::GroupTooLarge { order: cap + 1, cap });
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elems[a], &elems[b])] as u32;
            }
        }
        Self::from_raw(name.into(), n, table, Some(elems))
    }

    pub fn symmetric(d: usize) -> Self {
        assert!(d >= 1);
        let mut gens = Vec::new();
        if d >= 2 {
            let mut cycle: Vec<usize> = (1..d).collect();
            cycle.push(0);
            gens.push(cycle);
            let mut swap: Vec<usize> = (0..d).collect();
            swap.swap(0, 1);
            gens.push(swap);
        }
        Self::from_permutations(format!("S{d}"), d, &gens, CLOSURE_CAP).expect("symmetric group")
    }

    pub fn alternating4() -> Self {
        Self::from_permutations("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], CLOSURE_CAP).expect("A4")
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(format!("D{}", 2 * n), n, &[rot, refl], CLOSURE_CAP).expect("dihedral group")
    }

    pub fn quaternion() -> Self {
        // element s·4 + u: sign s ∈ {+,-}, unit u ∈ {1, i, j, k}
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let rows: Vec<Vec<usize>> = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (neg, u) = UNIT[a % 4][b % 4];
                        let sign = (a / 4 + b / 4 + neg as usize) % 2;
                        sign * 4 + u
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", &rows).expect("quaternion group")
    }

    /// SL(2,3) acting on the eight nonzero vectors of F_3^2.
    pub fn sl23() -> Self {
        let vecs: Vec<(usize, usize)> = (0..9).map(|i| (i / 3, i % 3)).filter(|&v| v != (0, 0)).collect();
        let act = |m: [[usize; 2]; 2]| -> Vec<usize> {
            vecs.iter()
                .map(|&(x, y)| {
                    let w = ((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3);
                    vecs.iter().position(|&v| v == w).expect("nonzero image")
                })
                .collect()
        };
        Self::from_permutations("SL(2,3)", 8, &[act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])], CLOSURE_CAP)
            .expect("SL(2,3)")
    }

    /// Looks up a catalogue name: `Zn`, `S3`, `S4`, `A4`, `D8`, `Q8`, `SL(2,3)`, `1`.
    pub fn named(name: &str) -> Result<Self> {
        let g = match name.trim() {
            "1" | "e" | "trivial" | "{e}" => Self::trivial(),
            "A4" => Self::alternating4(),
            "S3" => Self::symmetric(3),
            "S4" => Self::symmetric(4),
            "D8" => Self::dihedral(4),
            "Q8" => Self::quaternion(),
            "SL(2,3)" => Self::sl23(),
            other => {
                let n = other
                    .strip_prefix('Z')
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::InvalidGroup(format!("unknown group name {other}")))?;
                Self::cyclic(n)
            }
        };
        Ok(g)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn bracketed_name(&self) -> String {
        if self.name.contains('x') || self.name.contains(':') {
            format!("({})", self.name)
        } else {
            self.name.clone()
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `a^e`, negative exponents allowed.
    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut e = e.unsigned_abs() % self.element_order(a) as u64;
        let (mut acc, mut b) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `g·x·g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[a].as_slice())
    }

    pub fn perm_degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].len())
    }

    /// Sorted closure of `set` under multiplication.
    pub fn generated_subgroup(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &s in set {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn generates(&self, set: &[usize]) -> bool {
        self.generated_subgroup(set).len() == self.order
    }

    fn class_sizes(&self) -> Vec<usize> {
        (0..self.order)
            .map(|x| {
                let mut class: Vec<usize> = (0..self.order).map(|g| self.conjugate(g, x)).collect();
                class.sort_unstable();
                class.dedup();
                class.len()
            })
            .collect()
    }

    /// All automorphisms as element permutations, sorted, identity first.
    pub fn automorphisms(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        if self.order > cap {
            return Err(Error::AutomorphismCap { order: self.order, cap });
        }
        let n = self.order;
        let gens = &self.generators;
        // spanning tree of the Cayley graph: element = parent · gens[s]
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        let mut order = vec![0];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for (s, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = (x, s);
                    order.push(y);
                }
            }
            i += 1;
        }
        let orders: Vec<usize> = (0..n).map(|x| self.element_order(x)).collect();
        let classes = self.class_sizes();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| (1..n).filter(|&y| orders[y] == orders[g] && classes[y] == classes[g]).collect())
            .collect();

        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        let mut phi = vec![0usize; n];
        let mut stack = vec![0usize; gens.len()];
        let mut depth = 0;
        if gens.is_empty() {
            return Ok(vec![vec![0]]);
        }
        // odometer over candidate tuples
        loop {
            if stack[depth] < candidates[depth].len() {
                images[depth] = candidates[depth][stack[depth]];
                stack[depth] += 1;
                if depth + 1 < gens.len() {
                    depth += 1;
                    stack[depth] = 0;
                    continue;
                }
                if self.extend_automorphism(&images, &order, &parent, &mut phi) {
                    out.push(phi.clone());
                }
            } else if depth == 0 {
                break;
            } else {
                depth -= 1;
            }
        }
        out.sort();
        Ok(out)
    }

    fn extend_automorphism(&self, images: &[usize], order: &[usize], parent: &[(usize, usize)], phi: &mut [usize]) -> bool {
        phi[0] = 0;
        for &x in &order[1..] {
            let (p, s) = parent[x];
            phi[x] = self.mul(phi[p], images[s]);
        }
        let mut hit = vec![false; self.order];
        for &y in phi.iter() {
            if std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        (0..self.order).all(|x| {
            self.generators
                .iter()
                .zip(images)
                .all(|(&g, &img)| phi[self.mul(x, g)] == self.mul(phi[x], img))
        })
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parses cycle notation over points `1..=degree`, e.g. `(1 2 3)(4 5)` or `(1,2)`.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Vec<usize>> {
    let err = |m: &str| Error::parse(format!("cycle {s:?}"), m);
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(|| err("unbalanced parenthesis"))?;
        let body = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
        let body = &body[..body_end - 1];
        let pts: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| err("bad point")))
            .collect::<Result<_>>()?;
        if pts.iter().any(|&p| p == 0 || p > degree) {
            return Err(err("point out of range"));
        }
        let cycle: Vec<usize> = pts.iter().map(|p| p - 1).collect();
        // apply this cycle after the ones already read
        let mut c = (0..degree).collect::<Vec<_>>();
        for (i, &p) in cycle.iter().enumerate() {
            c[p] = cycle[(i + 1) % cycle.len()];
        }
        perm = compose(&c, &perm);
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(perm)
}

/// Formats a permutation in 1-based cycle notation; the identity is `()`.
pub fn format_cycles(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut x = s;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// JSON group description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Trivial,
    Cyclic { n: usize },
    Direct { factors: Vec<GroupSpec> },
    Semidirect { n: usize, m: usize, act: usize },
    Permutations { degree: usize, generators: Vec<String> },
    Named { name: String },
    Table { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Trivial => Ok(FiniteGroup::trivial()),
            GroupSpec::Cyclic { n } if *n >= 1 => Ok(FiniteGroup::cyclic(*n)),
            GroupSpec::Cyclic { .. } => Err(Error::InvalidGroup("cyclic order must be positive".into())),
            GroupSpec::Direct { factors } => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::InvalidGroup("direct product needs factors".into()))?
                    .build()?;
                it.try_fold(first, |acc, f| Ok(FiniteGroup::direct(&acc, &f.build()?)))
            }
            GroupSpec::Semidirect { n, m, act } => FiniteGroup::semidirect(*n, *m, *act),
            GroupSpec::Permutations { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|g| parse_cycles(g, *degree))
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_permutations(format!("<{}>", generators.join(",")), *degree, &gens, CLOSURE_CAP)
            }
            GroupSpec::Named { name } => FiniteGroup::named(name),
            GroupSpec::Table { table } => FiniteGroup::from_table("table", table),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn euler_phi(n: usize) -> usize {
        (1..=n).filter(|&k| gcd(k, n) == 1).count()
    }

    fn check_axioms(g: &FiniteGroup) {
        for x in 0..g.order() {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, 0), x);
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                for c in 0..g.order() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn constructors() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.order(), 3);
        let z33 = FiniteGroup::direct(&z3, &z3);
        assert_eq!(z33.order(), 9);
        assert!(z33.is_abelian());
        let g = FiniteGroup::semidirect(9, 3, 4).unwrap();
        assert_eq!(g.order(), 27);
        assert!(!g.is_abelian());
        assert!(FiniteGroup::semidirect(9, 3, 2).is_err());
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::alternating4(),
            FiniteGroup::symmetric(3),
            FiniteGroup::symmetric(4),
            FiniteGroup::dihedral(4),
            FiniteGroup::quaternion(),
            FiniteGroup::sl23(),
            FiniteGroup::semidirect(7, 3, 2).unwrap(),
            FiniteGroup::semidirect(5, 8, 2).unwrap(),
            g,
        ] {
            check_axioms(&g);
            assert!(g.generates(g.generators()));
        }
        assert_eq!(FiniteGroup::alternating4().order(), 12);
        assert_eq!(FiniteGroup::sl23().order(), 24);
        assert!(!FiniteGroup::quaternion().is_abelian());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = FiniteGroup::quaternion();
        let involutions = (1..8).filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        let d8 = FiniteGroup::dihedral(4);
        assert_eq!((1..8).filter(|&x| d8.element_order(x) == 2).count(), 5);
    }

    #[test]
    fn from_table_relabels_identity() {
        // Z2 with identity listed second
        let g = FiniteGroup::from_table("z2", &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(1, 1), 0);
        assert!(FiniteGroup::from_table("bad", &[vec![0, 0], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table("bad", &[vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]]).is_err());
    }

    #[test]
    fn closure_cap() {
        let s5: Vec<Vec<usize>> = vec![vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]];
        assert!(matches!(
            FiniteGroup::from_permutations("s5", 5, &s5, 100),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(FiniteGroup::cyclic(3).automorphisms(48).unwrap().len(), 2);
        let z2 = FiniteGroup::cyclic(2);
        let v4 = FiniteGroup::direct(&z2, &z2);
        assert_eq!(v4.automorphisms(48).unwrap().len(), brute_force_automorphisms(&v4));
        assert_eq!(v4.automorphisms(48).unwrap().len(), 6);
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(FiniteGroup::direct(&z3, &z3).automorphisms(48).unwrap().len(), 48);
        assert_eq!(FiniteGroup::symmetric(3).automorphisms(48).unwrap().len(), 6);
        assert_eq!(FiniteGroup::quaternion().automorphisms(48).unwrap().len(), 24);
        assert_eq!(FiniteGroup::alternating4().automorphisms(48).unwrap().len(), 24);
        assert!(matches!(
            FiniteGroup::cyclic(60).automorphisms(48),
            Err(Error::AutomorphismCap { .. })
        ));
        for n in 1..=12 {
            assert_eq!(FiniteGroup::cyclic(n).automorphisms(48).unwrap().len(), euler_phi(n));
        }
    }

    fn brute_force_automorphisms(g: &FiniteGroup) -> usize {
        let n = g.order();
        let mut count = 0;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 1, &mut |p| {
            if (0..n).all(|a| (0..n).all(|b| p[g.mul(a, b)] == g.mul(p[a], p[b]))) {
                count += 1;
            }
        });
        count
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn generated_subgroups() {
        assert_eq!(FiniteGroup::cyclic(4).generated_subgroup(&[2]), vec![0, 2]);
        let z3 = FiniteGroup::cyclic(3);
        let z33 = FiniteGroup::direct(&z3, &z3);
        assert_eq!(z33.generated_subgroup(&[3, 1]).len(), 9);
        let a4 = FiniteGroup::from_permutations(
            "a4",
            4,
            &[parse_cycles("(1 2)(3 4)", 4).unwrap(), parse_cycles("(1 2 3)", 4).unwrap()],
            CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(a4.order(), 12);
    }

    #[test]
    fn cycle_notation() {
        let p = parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p, vec![1, 2, 0, 4, 3]);
        assert_eq!(format_cycles(&p), "(1 2 3)(4 5)");
        assert_eq!(parse_cycles("(1,2)", 3).unwrap(), vec![1, 0, 2]);
        assert_eq!(format_cycles(&[0, 1, 2]), "()");
        assert!(parse_cycles("(1 7)", 3).is_err());
        assert!(parse_cycles("(1 2", 3).is_err());
    }

    #[test]
    fn group_spec_json() {
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"semidirect","n":9,"m":3,"act":4}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 27);
        let spec: GroupSpec = serde_json::from_str(
            r#"{"kind":"direct","factors":[{"kind":"cyclic","n":2},{"kind":"semidirect","n":7,"m":3,"act":2}]}"#,
        )
        .unwrap();
        assert_eq!(spec.build().unwrap().order(), 42);
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"permutations","degree":4,"generators":["(1 2 3)","(1 2)(3 4)"]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 12);
        assert!(serde_json::from_str::<GroupSpec>(r#"{"kind":"cyclic"}"#).is_err());
        assert!(GroupSpec::Named { name: "M11".into() }.build().is_err());
    }

    proptest! {
        #[test]
        fn direct_abelian_iff_factors(a in 0usize..6, b in 0usize..6) {
            let pool = [
                FiniteGroup::cyclic(2),
                FiniteGroup::cyclic(3),
                FiniteGroup::symmetric(3),
                FiniteGroup::quaternion(),
                FiniteGroup::cyclic(4),
                FiniteGroup::semidirect(3, 4, 2).unwrap(),
            ];
            let (x, y) = (&pool[a], &pool[b]);
            prop_assert_eq!(FiniteGroup::direct(x, y).is_abelian(), x.is_abelian() && y.is_abelian());
        }

        #[test]
        fn pow_matches_repeated_mul(n in 1usize..20, a in 0usize..20, e in -30i64..30) {
            let g = FiniteGroup::cyclic(n);
            let a = a % n;
            let expect = ((a as i64 * e).rem_euclid(n as i64)) as usize;
            prop_assert_eq!(g.pow(a, e), expect);
        }
    }
}

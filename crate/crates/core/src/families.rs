//! Square-cellulation code families EL, ER (checks on cells) and VL, VR, VJ (checks on vertices).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::codes::{CodeIsomorphism, CssCode};
use crate::error::{Error, Result};
use crate::f2la::BitMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    EL,
    VL,
    ER,
    VR,
    VJ,
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "EL" => Ok(FamilyTag::EL),
            "VL" => Ok(FamilyTag::VL),
            "ER" => Ok(FamilyTag::ER),
            "VR" => Ok(FamilyTag::VR),
            "VJ" => Ok(FamilyTag::VJ),
            _ => Err(Error::InvalidFamily(format!("unknown family tag {s}"))),
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Family parameters. `c`, `d` are used by ER and VR; `r` by EL and VL.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub tag: FamilyTag,
    pub a: usize,
    pub b: usize,
    #[serde(default = "one")]
    pub c: usize,
    #[serde(default = "one")]
    pub d: usize,
    #[serde(default = "one")]
    pub r: usize,
}

fn one() -> usize {
    1
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            FamilyTag::ER | FamilyTag::VR => write!(f, "{}({},{},{},{})", self.tag, self.a, self.b, self.c, self.d),
            FamilyTag::EL | FamilyTag::VL if self.r != 1 => write!(f, "{}({},{},{})", self.tag, self.a, self.b, self.r),
            _ => write!(f, "{}({},{})", self.tag, self.a, self.b),
        }
    }
}

/// Counts and weight maxima a family member must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub n: usize,
    pub m_x: usize,
    pub m_z: usize,
    pub w_x: usize,
    pub w_z: usize,
    pub q_x: usize,
    pub q_z: usize,
}

impl Counts {
    pub fn of(code: &CssCode) -> Counts {
        let p = code.params();
        Counts {
            n: p.n,
            m_x: p.m_x,
            m_z: p.m_z,
            w_x: p.w_x,
            w_z: p.w_z,
            q_x: p.q_x,
            q_z: p.q_z,
        }
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Circumference of the strips: `lcm(a, b)`, doubled when a boundary circle would be shorter than 2.
pub fn strip_length(a: usize, b: usize) -> usize {
    let l = a / gcd(a, b) * b;
    if l / a < 2 || l / b < 2 {
        2 * l
    } else {
        l
    }
}

impl FamilySpec {
    pub fn el(a: usize, b: usize) -> Self {
        Self::new(FamilyTag::EL, a, b)
    }

    pub fn vl(a: usize, b: usize) -> Self {
        Self::new(FamilyTag::VL, a, b)
    }

    pub fn vj(a: usize, b: usize) -> Self {
        Self::new(FamilyTag::VJ, a, b)
    }

    pub fn er(a: usize, b: usize, c: usize, d: usize) -> Self {
        FamilySpec {
            c,
            d,
            ..Self::new(FamilyTag::ER, a, b)
        }
    }

    pub fn vr(a: usize, b: usize, c: usize, d: usize) -> Self {
        FamilySpec {
            c,
            d,
            ..Self::new(FamilyTag::VR, a, b)
        }
    }

    pub fn new(tag: FamilyTag, a: usize, b: usize) -> Self {
        FamilySpec { tag, a, b, c: 1, d: 1, r: 1 }
    }

    pub fn with_rows(self, r: usize) -> Self {
        FamilySpec { r, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let FamilySpec { tag, a, b, c, d, r } = *self;
        let bad = |m: String| Err(Error::InvalidFamily(format!("{self}: {m}")));
        if a < 2 || b < 2 {
            return bad("a and b must be at least 2".into());
        }
        if c < 1 || d < 1 || r < 1 {
            return bad("c, d and r must be positive".into());
        }
        match tag {
            FamilyTag::EL | FamilyTag::VL | FamilyTag::VR if a > b => bad("requires a <= b".into()),
            // a > b is allowed when neither divides the other, as in ER(3,2,2,3)
            FamilyTag::ER if a > b && (a % b == 0 || b % a == 0) => bad("requires a <= b".into()),
            FamilyTag::ER | FamilyTag::VR | FamilyTag::VJ if r != 1 => bad("only one row is supported".into()),
            FamilyTag::EL | FamilyTag::VL | FamilyTag::VJ if (c, d) != (1, 1) => bad("c and d are not parameters".into()),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<CssCode> {
        self.validate()?;
        let FamilySpec { tag, a, b, c, d, r } = *self;
        let l = strip_length(a, b);
        match tag {
            FamilyTag::EL => {
                let mut circles = vec![l / a];
                circles.extend(std::iter::repeat_n(l, r - 1));
                circles.push(l / b);
                let strips: Vec<(usize, usize, usize)> = (0..r).map(|i| (i, i + 1, l)).collect();
                cell_code(&circles, &strips)
            }
            FamilyTag::ER => {
                let mut circles = vec![l];
                circles.extend(std::iter::repeat_n(l / a, c));
                circles.extend(std::iter::repeat_n(l / b, d));
                let strips: Vec<(usize, usize, usize)> = (1..=c + d).map(|i| (0, i, l)).collect();
                cell_code(&circles, &strips)
            }
            FamilyTag::VL | FamilyTag::VR | FamilyTag::VJ => Ok(self.vertex_layout()?.code),
        }
    }

    fn vertex_layout(&self) -> Result<VertexLayout> {
        let FamilySpec { tag, a, b, c, d, r } = *self;
        let m = 2 * strip_length(a, b);
        let layer = |k: usize, len: usize| Circle {
            len,
            check: if k % 2 == 0 { CheckType::X } else { CheckType::Z },
            parity: k % 2,
        };
        let (circles, strips) = match tag {
            FamilyTag::VL => {
                let last = 2 * r + 1;
                let mut circles = vec![layer(0, m / a)];
                circles.extend((1..last).map(|k| layer(k, m)));
                circles.push(layer(last, m / b));
                // the shorter circle is the outer end of each strip
                let mut strips: Vec<(usize, usize)> = (0..last - 1).map(|k| (k, k + 1)).collect();
                strips.push((last, last - 1));
                (circles, strips)
            }
            FamilyTag::VR => {
                let mut circles: Vec<Circle> = (0..c).map(|_| layer(0, m / a)).collect();
                circles.push(layer(1, m));
                circles.push(layer(2, m));
                circles.extend((0..d).map(|_| layer(3, m / b)));
                let (c1, c2) = (c, c + 1);
                let mut strips: Vec<(usize, usize)> = (0..c).map(|i| (i, c1)).collect();
                strips.push((c1, c2));
                strips.extend((0..d).map(|j| (c2 + 1 + j, c2)));
                (circles, strips)
            }
            FamilyTag::VJ => {
                let mut circles = vec![Circle {
                    len: 4 * b,
                    check: CheckType::Z,
                    parity: 0,
                }];
                circles.extend((0..a).map(|_| Circle {
                    len: 4,
                    check: CheckType::X,
                    parity: 1,
                }));
                let strips = (1..=a).map(|i| (i, 0)).collect();
                (circles, strips)
            }
            _ => unreachable!("cell families have no vertex layout"),
        };
        vertex_code(circles, &strips)
    }

    /// Count formulas. The ER `g = a` branch includes the central circle of length `2b`.
    pub fn expected_counts(&self) -> Counts {
        let FamilySpec { tag, a, b, c, d, r } = *self;
        let g = gcd(a, b);
        let (big, small) = (a.max(b), a.min(b));
        match tag {
            FamilyTag::EL if g != a => Counts {
                n: r * a * b / g + (r - 1) * a * b / g + a / g + b / g,
                m_x: (r - 1) * a * b / g + a / g + b / g,
                m_z: r * a * b / g,
                w_x: b + 2,
                w_z: 4,
                q_x: 2,
                q_z: b,
            },
            FamilyTag::EL => Counts {
                n: 2 + 2 * b / g + 2 * r * b + 2 * (r - 1) * b,
                m_x: 2 + 2 * b / g + 2 * (r - 1) * b,
                m_z: 2 * r * b,
                w_x: b + 2,
                w_z: 4,
                q_x: 2,
                q_z: b,
            },
            FamilyTag::VL if g != a => Counts {
                n: (a + b + 2 * r * a * b) / g,
                m_x: (b + r * a * b) / g,
                m_z: (a + r * a * b) / g,
                w_x: 2 + a,
                w_z: 2 + b,
                q_x: b,
                q_z: a,
            },
            FamilyTag::VL => Counts {
                n: 2 + 2 * b / a + 4 * r * b,
                m_x: 2 * b / a + 2 * r * b,
                m_z: 2 + 2 * r * b,
                w_x: 2 + a,
                w_z: 2 + b,
                q_x: b,
                q_z: a,
            },
            FamilyTag::ER => {
                let (n, m_x, m_z) = if g != small {
                    (
                        a * b / g + a * d / g + b * c / g + (c + d) * a * b / g,
                        a * b / g + a * d / g + b * c / g,
                        (c + d) * a * b / g,
                    )
                } else {
                    (
                        2 * b + 2 * d + 2 * b * c / g + 2 * b * (c + d),
                        2 * b + 2 * d + 2 * b * c / g,
                        2 * b * (c + d),
                    )
                };
                Counts {
                    n,
                    m_x,
                    m_z,
                    w_x: (big + 2).max(c + d + 2),
                    w_z: 4,
                    q_x: 2,
                    q_z: big.max(c + d),
                }
            }
            FamilyTag::VR => {
                let (n, m_x, m_z) = if g != a {
                    ((a * d + b * c + 2 * a * b) / g, (b * c + a * b) / g, (a * d + a * b) / g)
                } else {
                    (2 * d + 2 * b * c / a + 4 * b, 2 * b * c / a + 2 * b, 2 * d + 2 * b)
                };
                Counts {
                    n,
                    m_x,
                    m_z,
                    w_x: (a + 2).max(d + 3),
                    w_z: (b + 2).max(c + 3),
                    q_x: b.max(c + 1),
                    q_z: a.max(d + 1),
                }
            }
            FamilyTag::VJ => Counts {
                n: 2 * a + 2 * b,
                m_x: 2 * a,
                m_z: 2 * b,
                w_x: b + 2,
                w_z: a + 2,
                q_x: a,
                q_z: b,
            },
        }
    }

    /// Relabeling carrying the code onto its dual, for VL(a,a) and VR(a,a,c,c):
    /// reflect the layers and shift every circle by one position.
    pub fn self_duality_witness(&self) -> Result<Option<CodeIsomorphism>> {
        let symmetric = match self.tag {
            FamilyTag::VL => self.a == self.b,
            FamilyTag::VR => self.a == self.b && self.c == self.d,
            _ => false,
        };
        if !symmetric {
            return Ok(None);
        }
        self.validate()?;
        let layout = self.vertex_layout()?;
        let count = layout.circles.len();
        let mirror: Vec<usize> = match self.tag {
            FamilyTag::VL => (0..count).rev().collect(),
            _ => {
                // x_i ↔ y_i and C1 ↔ C2
                let c = self.c;
                (0..count)
                    .map(|i| match i {
                        i if i < c => c + 2 + i,
                        i if i == c => c + 1,
                        i if i == c + 1 => c,
                        i => i - c - 2,
                    })
                    .collect()
            }
        };
        let code = &layout.code;
        let mut iso = CodeIsomorphism {
            qubits: vec![usize::MAX; code.n()],
            x_checks: vec![usize::MAX; code.m_x()],
            z_checks: vec![usize::MAX; code.m_z()],
        };
        for (ci, roles) in layout.roles.iter().enumerate() {
            let target = &layout.roles[mirror[ci]];
            for (t, &role) in roles.iter().enumerate() {
                let image = target[(t + 1) % target.len()];
                match (role, image) {
                    (Role::Q(i), Role::Q(j)) => iso.qubits[i] = j,
                    // X-checks of the dual are the Z-checks of the code
                    (Role::X(i), Role::Z(j)) => iso.x_checks[i] = j,
                    (Role::Z(i), Role::X(j)) => iso.z_checks[i] = j,
                    _ => return Ok(None),
                }
            }
        }
        Ok(iso.verify(code, &code.dual()).then_some(iso))
    }
}

/// Cell code of a surface made of circles joined by strips of square faces.
/// Vertices are X-checks, edges are qubits (circle edges first, then rungs), faces are Z-checks.
/// A strip `(c1, c2, len)` has `len` rungs; rung `t` joins `(c1, t)` and `(c2, t)` modulo circle lengths.
fn cell_code(circles: &[usize], strips: &[(usize, usize, usize)]) -> Result<CssCode> {
    let mut first_vertex = Vec::with_capacity(circles.len());
    let mut nv = 0;
    for &len in circles {
        first_vertex.push(nv);
        nv += len;
    }
    let vertex = |c: usize, t: usize| first_vertex[c] + t % circles[c];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let circle_edge = |c: usize, t: usize| first_vertex[c] + t % circles[c];
    for (c, &len) in circles.iter().enumerate() {
        for t in 0..len {
            edges.push((vertex(c, t), vertex(c, t + 1)));
        }
    }
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for &(c1, c2, len) in strips {
        if len % circles[c1] != 0 || len % circles[c2] != 0 {
            return Err(Error::InvalidFamily("strip length must be a multiple of both circles".into()));
        }
        let first_rung = edges.len();
        for t in 0..len {
            edges.push((vertex(c1, t), vertex(c2, t)));
        }
        for t in 0..len {
            faces.push(vec![
                circle_edge(c1, t),
                circle_edge(c2, t),
                first_rung + t,
                first_rung + (t + 1) % len,
            ]);
        }
    }
    let mut hx = BitMatrix::zeros(nv, edges.len());
    for (e, &(u, v)) in edges.iter().enumerate() {
        hx.set(u, e, true);
        hx.set(v, e, true);
    }
    let hz = BitMatrix::from_supports(faces.len(), edges.len(), &faces);
    CssCode::new(hx, hz)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CheckType {
    X,
    Z,
}

/// A circle of a vertex-type layout; checks sit at positions of the given parity.
#[derive(Clone, Copy, Debug)]
struct Circle {
    len: usize,
    check: CheckType,
    parity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Q(usize),
    X(usize),
    Z(usize),
}

struct VertexLayout {
    circles: Vec<Circle>,
    roles: Vec<Vec<Role>>,
    code: CssCode,
}

/// Qubits and checks alternate on the vertices. A strip `(outer, inner)` links inner vertex `t`
/// to outer vertex `t mod len(outer)`.
fn vertex_code(circles: Vec<Circle>, strips: &[(usize, usize)]) -> Result<VertexLayout> {
    let (mut nq, mut nx, mut nz) = (0, 0, 0);
    let roles: Vec<Vec<Role>> = circles
        .iter()
        .map(|c| {
            (0..c.len)
                .map(|t| {
                    let role = match (t % 2 == c.parity, c.check) {
                        (false, _) => Role::Q(nq),
                        (true, CheckType::X) => Role::X(nx),
                        (true, CheckType::Z) => Role::Z(nz),
                    };
                    match role {
                        Role::Q(_) => nq += 1,
                        Role::X(_) => nx += 1,
                        Role::Z(_) => nz += 1,
                    }
                    role
                })
                .collect()
        })
        .collect();
    let mut hx = BitMatrix::zeros(nx, nq);
    let mut hz = BitMatrix::zeros(nz, nq);
    let mut seen = HashSet::new();
    let mut link = |a: Role, b: Role| -> Result<()> {
        let (check, q) = match (a, b) {
            (Role::Q(q), other) | (other, Role::Q(q)) if !matches!(other, Role::Q(_)) => (other, q),
            _ => return Err(Error::InvalidFamily(format!("{a:?} and {b:?} are not a check and a qubit"))),
        };
        if !seen.insert((check_key(check), q)) {
            return Err(Error::InvalidFamily(format!("repeated Tanner edge at qubit {q}")));
        }
        match check {
            Role::X(x) => hx.set(x, q, true),
            Role::Z(z) => hz.set(z, q, true),
            Role::Q(_) => unreachable!(),
        }
        Ok(())
    };
    for (ci, c) in circles.iter().enumerate() {
        for t in 0..c.len {
            link(roles[ci][t], roles[ci][(t + 1) % c.len])?;
        }
    }
    for &(outer, inner) in strips {
        let (lo, li) = (circles[outer].len, circles[inner].len);
        if li % lo != 0 {
            return Err(Error::InvalidFamily("inner circle length must be a multiple of the outer".into()));
        }
        for t in 0..li {
            link(roles[inner][t], roles[outer][t % lo])?;
        }
    }
    let code = CssCode::new(hx, hz)?;
    Ok(VertexLayout { circles, roles, code })
}

fn check_key(r: Role) -> (u8, usize) {
    match r {
        Role::X(i) => (0, i),
        Role::Z(i) => (1, i),
        Role::Q(i) => (2, i),
    }
}

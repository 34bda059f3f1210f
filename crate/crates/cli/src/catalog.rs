//! Named quotient groups and the published parameter rows.

use std::path::Path;

use conelift::{FamilySpec, FamilyTag, FiniteGroup, GroupSpec};

use crate::SchemaError;

/// Groups named in the tables, by the spelling the tables use. Names whose semidirect
/// action is not determined by the name, and non-split extensions, are absent.
pub fn table_group(name: &str) -> Option<FiniteGroup> {
    let z = FiniteGroup::cyclic;
    let semi = |n, m, k| FiniteGroup::semidirect(n, m, k).expect("valid action");
    let g = match name {
        "{e}" => FiniteGroup::trivial(),
        "A4" => FiniteGroup::alternating4(),
        "Q8" => FiniteGroup::quaternion(),
        "SL(2,3)" => FiniteGroup::sl23(),
        "GL(2,3)" => gl23(),
        "Z12" => z(12),
        "Z3xZ3" => FiniteGroup::direct(&z(3), &z(3)),
        "Z3xQ8" => FiniteGroup::direct(&z(3), &FiniteGroup::quaternion()),
        "Z3:Z4" => semi(3, 4, 2),
        "Z7:Z3" => semi(7, 3, 2),
        "Z7:Z6" => semi(7, 6, 3),
        "Z9:Z3" => semi(9, 3, 4),
        "Z2x(Z7:Z3)" => FiniteGroup::direct(&z(2), &semi(7, 3, 2)),
        _ => return None,
    };
    Some(g.renamed(name))
}

/// `GL(2,3)` acting on the eight nonzero vectors of `F_3^2`.
pub fn gl23() -> FiniteGroup {
    let vectors: Vec<[usize; 2]> = (1..9).map(|i| [i % 3, i / 3]).collect();
    let act = |m: [[usize; 2]; 2]| -> Vec<usize> {
        vectors
            .iter()
            .map(|v| {
                let w = [(m[0][0] * v[0] + m[0][1] * v[1]) % 3, (m[1][0] * v[0] + m[1][1] * v[1]) % 3];
                vectors.iter().position(|u| *u == w).expect("invertible")
            })
            .collect()
    };
    let gens = [act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]]), act([[2, 0], [0, 1]])];
    FiniteGroup::from_permutations("GL(2,3)", 8, &gens, 5040).expect("GL(2,3)")
}

/// Reads a group argument: inline JSON, a JSON file, a table name, a built-in name, or a
/// direct product `AxB` of those.
pub fn parse_group(arg: &str) -> anyhow::Result<FiniteGroup> {
    let arg = arg.trim();
    if arg.starts_with('{') {
        let spec: GroupSpec = serde_json::from_str(arg)?;
        return Ok(spec.build()?);
    }
    if arg.ends_with(".json") && Path::new(arg).is_file() {
        let spec: GroupSpec = serde_json::from_str(&std::fs::read_to_string(arg)?)?;
        return Ok(spec.build()?);
    }
    if let Some(g) = table_group(arg) {
        return Ok(g);
    }
    if let Ok(g) = FiniteGroup::named(arg) {
        return Ok(g);
    }
    let factors = split_top_level(arg, 'x');
    if factors.len() > 1 {
        let groups = factors
            .iter()
            .map(|f| parse_group(f.trim_start_matches('(').trim_end_matches(')')))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let product = groups[1..].iter().fold(groups[0].clone(), |acc, g| FiniteGroup::direct(&acc, g));
        return Ok(product.renamed(arg));
    }
    Err(SchemaError(format!("unknown group {arg:?}")).into())
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// One published row: a family member, the cover index, the quotient group, and the
/// reported `[[n, k, (d_X, d_Z)]]` (distances are upper bounds).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub family: FamilySpec,
    pub index: usize,
    pub group: &'static str,
    pub n: usize,
    pub k: usize,
    pub d_x: usize,
    pub d_z: usize,
}

type Raw = (usize, usize, usize, &'static str, usize, usize, usize, usize);

const EL_ROWS: &[Raw] = &[
    (3, 3, 1, "{e}", 10, 1, 2, 2),
    (3, 3, 12, "A4", 120, 6, 6, 6),
    (3, 3, 21, "Z7:Z3", 210, 9, 6, 6),
    (3, 3, 24, "SL(2,3)", 240, 10, 6, 6),
    (3, 4, 1, "{e}", 19, 1, 7, 3),
    (3, 4, 36, "(Z3xZ3):Z4", 684, 17, 12, 8),
    (3, 4, 48, "A4:Z4", 912, 22, 12, 8),
    (6, 6, 1, "{e}", 16, 2, 2, 2),
    (6, 6, 8, "Q8", 128, 2, 8, 8),
    (6, 6, 12, "Z3:Z4", 192, 2, 12, 10),
    (6, 6, 32, "Z4.D8", 512, 2, 16, 16),
    (6, 6, 40, "Z5:Z8", 640, 2, 20, 18),
];

const VL_ROWS: &[Raw] = &[
    (3, 3, 1, "{e}", 16, 0, 0, 0),
    (3, 3, 9, "Z3xZ3", 144, 4, 6, 6),
    (3, 3, 27, "Z9:Z3", 432, 4, 18, 18),
    (3, 4, 1, "{e}", 31, 1, 3, 7),
    (3, 4, 48, "SL(2,3).Z2", 1488, 6, 24, 24),
    (3, 4, 48, "GL(2,3)", 1488, 6, 24, 24),
    (4, 4, 1, "{e}", 20, 2, 2, 2),
    (4, 4, 32, "(Z2xZ2).(Z4xZ2)", 640, 6, 16, 16),
    (4, 4, 32, "(Z8:Z2):Z2", 640, 6, 16, 16),
    (4, 5, 1, "{e}", 49, 1, 7, 5),
    (4, 5, 20, "Z5:Z4", 980, 7, 20, 22),
    (4, 5, 40, "Z5:Z8", 1960, 7, 40, 42),
    (4, 6, 1, "{e}", 29, 2, 2, 3),
    (4, 6, 48, "(Z3xQ8):Z2", 1392, 8, 20, 24),
    (6, 6, 1, "{e}", 28, 2, 2, 2),
    (6, 6, 24, "Z3xQ8", 672, 2, 24, 26),
    (6, 7, 1, "{e}", 97, 1, 10, 7),
    (6, 7, 42, "Z7:Z6", 4074, 11, 50, 50),
];

const VJ_ROWS: &[Raw] = &[
    (3, 3, 1, "{e}", 12, 2, 2, 2),
    (3, 3, 9, "Z3xZ3", 108, 8, 6, 6),
    (3, 3, 27, "Z9:Z3", 324, 4, 18, 18),
    (4, 3, 1, "{e}", 14, 3, 2, 2),
    (4, 3, 42, "Z2x(Z7:Z3)", 588, 11, 12, 12),
];

const VR_ROWS: &[(usize, usize, usize, usize, usize, &str, usize, usize, usize, usize)] = &[
    (3, 3, 2, 2, 1, "{e}", 20, 2, 2, 2),
    (3, 3, 2, 2, 9, "Z3xZ3", 180, 10, 6, 6),
    (4, 4, 2, 2, 1, "{e}", 24, 4, 2, 2),
    (4, 4, 2, 2, 12, "Z12", 288, 6, 10, 10),
];

/// The published rows of one family, in table order. `ER` has no table.
pub fn table_rows(tag: FamilyTag) -> Vec<TableRow> {
    let plain = |raw: &[Raw]| -> Vec<TableRow> {
        raw.iter()
            .map(|&(a, b, index, group, n, k, d_x, d_z)| TableRow {
                family: FamilySpec::new(tag, a, b),
                index,
                group,
                n,
                k,
                d_x,
                d_z,
            })
            .collect()
    };
    match tag {
        FamilyTag::EL => plain(EL_ROWS),
        FamilyTag::VL => plain(VL_ROWS),
        FamilyTag::VJ => plain(VJ_ROWS),
        FamilyTag::VR => VR_ROWS
            .iter()
            .map(|&(a, b, c, d, index, group, n, k, d_x, d_z)| TableRow {
                family: FamilySpec::vr(a, b, c, d),
                index,
                group,
                n,
                k,
                d_x,
                d_z,
            })
            .collect(),
        FamilyTag::ER => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_orders_match_indices() {
        for tag in [FamilyTag::EL, FamilyTag::VL, FamilyTag::VR, FamilyTag::VJ] {
            for row in table_rows(tag) {
                if let Some(g) = table_group(row.group) {
                    assert_eq!(g.order(), row.index, "{}", row.group);
                }
            }
        }
    }

    #[test]
    fn gl23_is_not_sl23() {
        let g = gl23();
        assert_eq!(g.order(), 48);
        assert!(!g.is_abelian());
        assert_eq!((0..48).filter(|&x| g.element_order(x) == 8).count(), 12);
    }

    #[test]
    fn group_arguments() {
        assert_eq!(parse_group("Z3xZ3").unwrap().order(), 9);
        assert_eq!(parse_group("Z2xS3").unwrap().order(), 12);
        assert_eq!(parse_group(r#"{"kind":"semidirect","n":9,"m":3,"act":4}"#).unwrap().order(), 27);
        assert_eq!(parse_group("Z2x(Z7:Z3)").unwrap().order(), 42);
        assert!(parse_group("Z5:Z4").is_err());
        assert!(parse_group(r#"{"kind":"cyclic"}"#).is_err());
    }
}

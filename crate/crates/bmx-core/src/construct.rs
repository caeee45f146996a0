//! Named matroid constructions: projective and affine fixtures, graphic
//! matroids of complete graphs, and the sporadic rank-4/5 extremal examples
//! entered as verbatim 0/1 matrices.

use crate::gadgets::{graft_matroid, Graft, Multigraph};
use crate::gf2::Gf2Matrix;
use crate::matroid::BinaryMatroid;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// PG(n,2): every nonzero vector of GF(2)^(n+1), rank n+1. Needs n <= 14.
pub fn pg(n: u8) -> BinaryMatroid {
    assert!(n <= 14, "pg({n}) does not fit in 16 coordinates");
    let dim = n + 1;
    BinaryMatroid::from_columns(dim, 1..1u32.checked_shl(dim as u32).unwrap() as u16)
}

/// AG(3,2): the complement of a hyperplane in PG(3,2); 8 points, rank 4,
/// no three collinear.
pub fn ag32() -> BinaryMatroid {
    BinaryMatroid::from_columns(4, (0..16).filter(|v| v & 1 == 1))
}

/// The Fano plane.
pub fn f7() -> BinaryMatroid {
    pg(2)
}

/// Dual of the Fano plane, from the standard representation: writing
/// F7 = [I | D] with D the four non-unit columns in ascending order, the
/// dual is [D^T | I].
pub fn f7_dual() -> BinaryMatroid {
    let d = [3u16, 5, 6, 7];
    let mut cols: Vec<u16> = (0..3)
        .map(|i| {
            let mut c = 0u16;
            for (j, &v) in d.iter().enumerate() {
                c |= (v >> i & 1) << j;
            }
            c
        })
        .collect();
    cols.extend((0..4).map(|i| 1 << i));
    BinaryMatroid::from_columns(4, cols)
}

/// M(K_n), rank n-1: unit columns for the edges at one fixed vertex plus
/// all two-coordinate sums for the remaining edges.
pub fn mk(n: u8) -> BinaryMatroid {
    assert!((1..=16).contains(&n));
    let dim = n - 1;
    let mut cols: Vec<u16> = (0..dim).map(|i| 1u16 << i).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            cols.push(1 << i | 1 << j);
        }
    }
    BinaryMatroid::from_columns(dim, cols)
}

/// M(K_5) plus one extra point in the same rank, entered as its 4x11 matrix.
pub fn mk5_plus() -> BinaryMatroid {
    BinaryMatroid::from_matrix(&mk5_plus_matrix())
}

pub(crate) fn mk5_plus_matrix() -> Gf2Matrix {
    Gf2Matrix::from_rows_01(&[
        &[1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0],
        &[1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1],
        &[0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 1],
        &[0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1],
    ])
}

/// The rank-r graft construction gluing a Fano plane onto M(K_r) along a
/// line: K_r plus a vertex v adjacent to three of its vertices, with T set
/// to v and its neighbours. Size C(r,2) + 4.
pub fn gpc_f7(r: u8) -> BinaryMatroid {
    assert!((3..=15).contains(&r), "gpc_f7 needs 3 <= r <= 15");
    let mut g = Multigraph::complete(r);
    let v = r;
    g.grow_to(r + 1);
    for u in 0..3 {
        g.add_edge(v, u, &format!("y{}", u + 1));
    }
    let graft = Graft::new(g, [v, 0, 1, 2].into_iter().collect()).unwrap();
    graft_matroid(&graft).0
}

/// The three sporadic rank-5 extremal matroids, entered as verbatim 5x15
/// matrices. `k` ranges over 1..=3.
pub fn appendix5(k: u8) -> BinaryMatroid {
    BinaryMatroid::from_matrix(&appendix5_matrix(k))
}

pub(crate) fn appendix5_matrix(k: u8) -> Gf2Matrix {
    let rows: [[u8; 15]; 5] = match k {
        1 => [
            [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
            [1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 1, 0],
            [0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 0],
            [0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 0],
        ],
        2 => [
            [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
            [1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
            [1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0],
            [0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 0, 1, 0, 0],
            [0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0],
        ],
        3 => [
            [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1],
            [1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
            [1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1],
            [0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1],
            [0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 1, 1],
        ],
        _ => panic!("appendix5 index must be 1, 2 or 3"),
    };
    let refs: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
    Gf2Matrix::from_rows_01(&refs)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConstructError {
    UnknownName(String),
    MissingParam(&'static str),
    BadParam(String),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::UnknownName(n) => write!(f, "unknown construction: {n}"),
            ConstructError::MissingParam(n) => write!(f, "construction {n} needs a parameter"),
            ConstructError::BadParam(m) => write!(f, "{m}"),
        }
    }
}

/// Dispatch by name, e.g. for a command line. Parameterless names reject a
/// parameter; parameterized ones require it.
pub fn by_name(name: &str, param: Option<u32>) -> Result<BinaryMatroid, ConstructError> {
    use alloc::string::ToString;
    let bad = |m: String| Err(ConstructError::BadParam(m));
    let need = |n| param.ok_or(ConstructError::MissingParam(n));
    let none = |m: BinaryMatroid| match param {
        Some(_) => bad(format!("construction {name} takes no parameter")),
        None => Ok(m),
    };
    match name {
        "pg" => match need("pg")? {
            n @ 0..=14 => Ok(pg(n as u8)),
            n => bad(format!("pg({n}) out of range 0..=14")),
        },
        "ag32" => none(ag32()),
        "f7" => none(f7()),
        "f7dual" => none(f7_dual()),
        "mk" => match need("mk")? {
            n @ 1..=16 => Ok(mk(n as u8)),
            n => bad(format!("mk({n}) out of range 1..=16")),
        },
        "mk5plus" => none(mk5_plus()),
        "gpc_f7" => match need("gpc_f7")? {
            r @ 3..=15 => Ok(gpc_f7(r as u8)),
            r => bad(format!("gpc_f7({r}) out of range 3..=15")),
        },
        "appendix5" => match need("appendix5")? {
            k @ 1..=3 => Ok(appendix5(k as u8)),
            k => bad(format!("appendix5({k}) out of range 1..=3")),
        },
        other => Err(ConstructError::UnknownName(other.to_string())),
    }
}

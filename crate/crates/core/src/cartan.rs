//! Finite Cartan data, roots and coroots.
//!
//! Matrix convention: `a[i][j]` is the coefficient in
//! `s_i(alpha_j) = alpha_j - a[i][j] alpha_i`, so `<alpha_j, alpha_i^vee> = a[i][j]`
//! and on coroots `s_i(alpha_j^vee) = alpha_j^vee - a[j][i] alpha_i^vee`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    rank: usize,
    matrix: Vec<Vec<i64>>,
    label: Option<String>,
}

#[derive(Deserialize, Serialize)]
struct CartanJson {
    rank: usize,
    matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl CartanData {
    pub fn new(matrix: Vec<Vec<i64>>, label: Option<String>) -> Result<Self> {
        let rank = matrix.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("rank must be positive".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidCartan(format!("row {} has wrong length", i + 1)));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j && v != 2 {
                    return Err(Error::InvalidCartan(format!("diagonal entry {} is not 2", i + 1)));
                }
                if i != j && v > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "off-diagonal entry ({}, {}) is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if i != j && (v == 0) != (matrix[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({}, {}) and ({}, {}) must vanish together",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(CartanData {
            rank,
            matrix,
            label,
        })
    }

    /// Type A_r, the Weyl group being S_{r+1}.
    pub fn type_a(rank: usize) -> Self {
        let mut m = vec![vec![0; rank]; rank];
        for i in 0..rank {
            m[i][i] = 2;
            if i + 1 < rank {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        }
        CartanData {
            rank,
            matrix: m,
            label: Some(format!("A{rank}")),
        }
    }

    /// Parses labels such as `A4`, `B2`, `C3`, `D4`, `G2`, `F4`, `E6`.
    pub fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        let unknown = || Error::UnknownType(label.to_string());
        let mut chars = label.chars();
        let family = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().trim_start_matches(['_', '(']).trim_end_matches(')').parse().map_err(|_| unknown())?;
        if rank == 0 {
            return Err(unknown());
        }
        let mut data = match family {
            'A' => Self::type_a(rank),
            'B' | 'C' if rank >= 2 => {
                let mut m = Self::type_a(rank).matrix;
                // The last node is the short root in B and the long root in C.
                if family == 'B' {
                    m[rank - 1][rank - 2] = -2;
                } else {
                    m[rank - 2][rank - 1] = -2;
                }
                Self::new(m, None)?
            }
            'D' if rank >= 4 => {
                let mut m = Self::type_a(rank).matrix;
                m[rank - 1][rank - 2] = 0;
                m[rank - 2][rank - 1] = 0;
                m[rank - 1][rank - 3] = -1;
                m[rank - 3][rank - 1] = -1;
                Self::new(m, None)?
            }
            'G' if rank == 2 => Self::new(vec![vec![2, -1], vec![-3, 2]], None)?,
            'F' if rank == 4 => {
                let mut m = Self::type_a(4).matrix;
                m[2][1] = -2;
                Self::new(m, None)?
            }
            'E' if (6..=8).contains(&rank) => {
                // Bourbaki numbering: node 2 hangs off node 4.
                let edges: &[(usize, usize)] = &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
                let mut m = vec![vec![0; rank]; rank];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = 2;
                }
                for &(i, j) in edges.iter().filter(|&&(i, j)| i <= rank && j <= rank) {
                    m[i - 1][j - 1] = -1;
                    m[j - 1][i - 1] = -1;
                }
                Self::new(m, None)?
            }
            _ => return Err(unknown()),
        };
        data.label = Some(format!("{family}{rank}"));
        Ok(data)
    }

    /// Parses `{"rank": r, "matrix": [[...]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CartanJson = serde_json::from_str(text)?;
        if doc.rank != doc.matrix.len() {
            return Err(Error::InvalidCartan(format!(
                "rank {} does not match a {}-row matrix",
                doc.rank,
                doc.matrix.len()
            )));
        }
        let mut data = Self::new(doc.matrix, doc.label)?;
        if data.label.is_none() && data.is_type_a() {
            data.label = Some(format!("A{}", data.rank));
        }
        Ok(data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CartanJson {
            rank: self.rank,
            matrix: self.matrix.clone(),
            label: self.label.clone(),
        })
        .expect("Cartan data serializes")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// `a[i][j]` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i - 1][j - 1]
    }

    pub fn is_type_a(&self) -> bool {
        self.matrix == Self::type_a(self.rank).matrix
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank];
        v[i - 1] = 1;
        Root(v)
    }

    pub fn simple_coroot(&self, i: usize) -> Coroot {
        let mut v = vec![0; self.rank];
        v[i - 1] = 1;
        Coroot(v)
    }

    /// `<lambda, c>`, bilinear in both arguments.
    pub fn pairing(&self, root: &Root, coroot: &Coroot) -> i64 {
        let mut total = 0;
        for (i, &l) in root.0.iter().enumerate() {
            if l == 0 {
                continue;
            }
            for (j, &c) in coroot.0.iter().enumerate() {
                total += l * c * self.matrix[j][i];
            }
        }
        total
    }

    /// `s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i`.
    pub fn reflect_root(&self, i: usize, root: &Root) -> Root {
        let k = i - 1;
        let p: i64 = root.0.iter().zip(&self.matrix[k]).map(|(l, a)| l * a).sum();
        let mut out = root.clone();
        out.0[k] -= p;
        out
    }

    /// `s_i(mu) = mu - <alpha_i, mu> alpha_i^vee`.
    pub fn reflect_coroot(&self, i: usize, coroot: &Coroot) -> Coroot {
        let k = i - 1;
        let p: i64 = coroot.0.iter().enumerate().map(|(j, c)| c * self.matrix[j][k]).sum();
        let mut out = coroot.clone();
        out.0[k] -= p;
        out
    }
}

/// A vector in the root lattice, in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

/// A vector in the coroot lattice, in simple-coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coroot(pub Vec<i64>);

impl Root {
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

fn write_lattice(f: &mut fmt::Formatter<'_>, coords: &[i64], name: &str) -> fmt::Result {
    let mut first = true;
    for (i, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if first {
            if c < 0 {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c < 0 { " - " } else { " + " })?;
        }
        first = false;
        if c.abs() != 1 {
            write!(f, "{}*", c.abs())?;
        }
        write!(f, "{name}{}", i + 1)?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lattice(f, &self.0, "a")
    }
}

impl fmt::Display for Coroot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lattice(f, &self.0, "a^")
    }
}

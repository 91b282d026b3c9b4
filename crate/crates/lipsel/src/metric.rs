//! Finite pseudometric spaces.
//!
//! Distinct points may sit at distance zero, but distances are finite,
//! nonnegative, symmetric, vanish on the diagonal, and satisfy the triangle
//! inequality. Validation reports every violated axiom instance rather than
//! stopping at the first.

use std::fmt;

/// Relative slack for the triangle inequality: scaled by `1 + max entry`.
pub const TRIANGLE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NotSquare { rows: usize, cols: Option<usize>, ids: usize },
    NotFinite { i: usize, j: usize },
    Negative { i: usize, j: usize },
    NonzeroDiagonal { i: usize },
    Asymmetric { i: usize, j: usize },
    Triangle { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { rows, cols, ids } => match cols {
                Some(c) => write!(f, "matrix is {rows}x{c} but there are {ids} ids"),
                None => write!(f, "matrix rows have uneven lengths ({rows} rows, {ids} ids)"),
            },
            Violation::NotFinite { i, j } => write!(f, "d[{i}][{j}] is not finite"),
            Violation::Negative { i, j } => write!(f, "d[{i}][{j}] is negative"),
            Violation::NonzeroDiagonal { i } => write!(f, "d[{i}][{i}] is nonzero"),
            Violation::Asymmetric { i, j } => write!(f, "d[{i}][{j}] != d[{j}][{i}]"),
            Violation::Triangle { i, j, k } => {
                write!(f, "d[{i}][{j}] > d[{i}][{k}] + d[{k}][{j}]")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneNorm {
    Linf,
    L2,
}

#[derive(Clone, Debug)]
pub struct PseudoMetric {
    ids: Vec<String>,
    d: Vec<Vec<f64>>,
}

impl PseudoMetric {
    pub fn new(ids: Vec<String>, d: Vec<Vec<f64>>) -> Result<Self, Vec<Violation>> {
        let violations = validate(&ids, &d);
        if violations.is_empty() {
            Ok(PseudoMetric { ids, d })
        } else {
            Err(violations)
        }
    }

    /// Distance matrix induced by plane coordinates, one point per id.
    pub fn from_coords(ids: Vec<String>, coords: &[(f64, f64)], norm: PlaneNorm) -> Self {
        assert_eq!(ids.len(), coords.len(), "one coordinate pair per id");
        let n = coords.len();
        let mut d = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let dx = coords[i].0 - coords[j].0;
                let dy = coords[i].1 - coords[j].1;
                d[i][j] = match norm {
                    PlaneNorm::Linf => dx.abs().max(dy.abs()),
                    PlaneNorm::L2 => dx.hypot(dy),
                };
            }
        }
        PseudoMetric::new(ids, d).expect("induced distances satisfy the axioms")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == id)
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.d[i][j]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.d
    }

    /// Largest pairwise distance within `subset` (0 for fewer than 2 points).
    pub fn diam(&self, subset: &[usize]) -> f64 {
        let mut best = 0.0f64;
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                best = best.max(self.d[i][j]);
            }
        }
        best
    }

    /// Restriction to `subset`, keeping ids.
    pub fn restrict(&self, subset: &[usize]) -> PseudoMetric {
        let ids = subset.iter().map(|&i| self.ids[i].clone()).collect();
        let d = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.d[i][j]).collect())
            .collect();
        PseudoMetric { ids, d }
    }
}

fn validate(ids: &[String], d: &[Vec<f64>]) -> Vec<Violation> {
    let n = ids.len();
    let mut out = Vec::new();
    if d.len() != n || d.iter().any(|row| row.len() != n) {
        let cols = if d.iter().all(|r| r.len() == d[0].len()) && !d.is_empty() {
            Some(d[0].len())
        } else {
            None
        };
        out.push(Violation::NotSquare {
            rows: d.len(),
            cols,
            ids: n,
        });
        return out;
    }
    let mut max = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let v = d[i][j];
            if !v.is_finite() {
                out.push(Violation::NotFinite { i, j });
            } else {
                max = max.max(v.abs());
            }
            if v < 0.0 {
                out.push(Violation::Negative { i, j });
            }
        }
        if d[i][i] != 0.0 {
            out.push(Violation::NonzeroDiagonal { i });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if d[i][j] != d[j][i] {
                out.push(Violation::Asymmetric { i, j });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let slack = TRIANGLE_TOL * (1.0 + max);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d[i][j] > d[i][k] + d[k][j] + slack {
                    out.push(Violation::Triangle { i, j, k });
                }
            }
        }
    }
    out
}

/// Order and coordinates of a four-point space placed on the real line.
/// `phi[k]` is the coordinate of point `order[k]`; coordinates increase
/// along the order and distort distances by a factor of at most 7.
#[derive(Clone, Debug, PartialEq)]
pub struct LineEmbedding {
    pub order: [usize; 4],
    pub phi: [f64; 4],
}

impl LineEmbedding {
    pub fn coordinate_of(&self, point: usize) -> f64 {
        let k = self
            .order
            .iter()
            .position(|&p| p == point)
            .expect("point index 0..4");
        self.phi[k]
    }
}

/// Places a four-point pseudometric space on the line: the closest pair
/// (lexicographically first on ties) goes first, the walk then visits the
/// remaining point nearer to the start, then the last one, each step
/// advancing by the step's distance.
pub fn embed_four_points(m: &PseudoMetric) -> Result<LineEmbedding, String> {
    if m.len() != 4 {
        return Err(format!("expected exactly 4 points, got {}", m.len()));
    }
    let mut pair = (0, 1);
    let mut best = f64::INFINITY;
    for i in 0..4 {
        for j in i + 1..4 {
            if m.dist(i, j) < best {
                best = m.dist(i, j);
                pair = (i, j);
            }
        }
    }
    let (z1, z2) = pair;
    let rest: Vec<usize> = (0..4).filter(|&p| p != z1 && p != z2).collect();
    let (z3, z4) = if m.dist(z1, rest[0]) <= m.dist(z1, rest[1]) {
        (rest[0], rest[1])
    } else {
        (rest[1], rest[0])
    };
    let phi1 = m.dist(z1, z2);
    let phi2 = phi1 + m.dist(z2, z3);
    let phi3 = phi2 + m.dist(z3, z4);
    Ok(LineEmbedding {
        order: [z1, z2, z3, z4],
        phi: [0.0, phi1, phi2, phi3],
    })
}

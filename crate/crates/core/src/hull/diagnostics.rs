use serde::{Deserialize, Serialize};

use super::{Family, InequalitySystem, Point, Vertex};
use crate::rational::Rational;

/// Maximum number of affinely independent points among `points`.
pub fn affine_rank(points: &[Point]) -> usize {
    let mut rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut row = p.x.clone();
            row.push(p.y.clone());
            row.push(Rational::one());
            row
        })
        .collect();
    rank(&mut rows)
}

fn rank(rows: &mut [Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &lead;
            for c in col..cols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Positions of rows with zero slack at `point`.
pub fn tight_rows(sys: &InequalitySystem, point: &Point) -> Vec<usize> {
    sys.rows
        .iter()
        .enumerate()
        .filter(|(_, row)| row.slack(point).is_zero())
        .map(|(pos, _)| pos)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetDiagnostic {
    pub row: usize,
    pub family: Family,
    pub tight_vertices: usize,
    /// Affinely independent tight vertices; `n + 1` means the row is a facet.
    pub affine_rank: usize,
    pub is_facet: bool,
}

/// Per-row facet test against the given extreme points of a full-dimensional
/// polytope in `R^(n+1)`.
pub fn facet_diagnostics(sys: &InequalitySystem, vertices: &[Vertex]) -> Vec<FacetDiagnostic> {
    let dim = sys.n() + 1;
    sys.rows
        .iter()
        .enumerate()
        .map(|(pos, row)| {
            let tight: Vec<Point> = vertices
                .iter()
                .map(Vertex::point)
                .filter(|p| row.slack(p).is_zero())
                .collect();
            let affine_rank = affine_rank(&tight);
            FacetDiagnostic {
                row: pos,
                family: row.family,
                tight_vertices: tight.len(),
                affine_rank,
                is_facet: affine_rank == dim,
            }
        })
        .collect()
}

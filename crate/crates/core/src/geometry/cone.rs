//! Facets and faces of polyhedral cones spanned by integer vectors.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::exact::{combinations, conormal, dot_int, rank_of_columns, Int};

/// A facet of `pos(columns)`: its primitive inner conormal and the columns on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConeFacet {
    pub normal: Vec<Int>,
    pub columns: Vec<usize>,
}

/// Enumerates the facets of the cone spanned by `columns` in `R^dim`.
///
/// Candidate hyperplanes come from `(dim − 1)`-subsets of columns of rank
/// `dim − 1`; a candidate is kept when every column lies weakly on one side.
/// A cone that is a linear space has no facets.
pub fn cone_facets(columns: &[Vec<Int>], dim: usize) -> Vec<ConeFacet> {
    if dim == 0 {
        return Vec::new();
    }
    let mut found: Vec<ConeFacet> = Vec::new();
    for subset in combinations(columns.len(), dim - 1) {
        if found
            .iter()
            .any(|f| subset.iter().all(|s| f.columns.binary_search(s).is_ok()))
        {
            continue;
        }
        let refs: Vec<&[Int]> = subset.iter().map(|&j| columns[j].as_slice()).collect();
        if rank_of_columns(&refs) != dim - 1 {
            continue;
        }
        let Some(mut nu) = conormal(&refs, dim, None) else {
            continue;
        };
        let pairings: Vec<Int> = columns.iter().map(|c| dot_int(&nu, c)).collect();
        let has_pos = pairings.iter().any(Signed::is_positive);
        let has_neg = pairings.iter().any(Signed::is_negative);
        if has_pos && has_neg {
            continue;
        }
        if has_neg {
            nu.iter_mut().for_each(|x| *x = -x.clone());
        } else if !has_pos {
            continue;
        }
        let on: Vec<usize> = (0..columns.len()).filter(|&j| pairings[j].is_zero()).collect();
        if !found.iter().any(|f| f.normal == nu) {
            found.push(ConeFacet { normal: nu, columns: on });
        }
    }
    found.sort();
    found
}

/// All faces of the cone as sorted column-index sets, including the cone
/// itself and its minimal face (possibly empty).
pub fn cone_faces(columns: &[Vec<Int>], dim: usize) -> Vec<Vec<usize>> {
    let facets = cone_facets(columns, dim);
    let all: Vec<usize> = (0..columns.len()).collect();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    faces.insert(all);
    let mut frontier: Vec<Vec<usize>> = facets.iter().map(|f| f.columns.clone()).collect();
    while let Some(face) = frontier.pop() {
        if !faces.insert(face.clone()) {
            continue;
        }
        for f in &facets {
            let meet: Vec<usize> = face
                .iter()
                .copied()
                .filter(|j| f.columns.binary_search(j).is_ok())
                .collect();
            if !faces.contains(&meet) {
                frontier.push(meet);
            }
        }
    }
    faces.into_iter().collect()
}

/// Facets of the polytope `conv(points)` in `R^dim` via homogenization.
///
/// Each facet is returned as an inequality `⟨normal, p⟩ + offset ≥ 0` with the
/// indices of points attaining equality.
pub fn polytope_facets(points: &[Vec<Int>], dim: usize) -> Vec<(Vec<Int>, Int, Vec<usize>)> {
    let lifted: Vec<Vec<Int>> = points
        .iter()
        .map(|p| {
            let mut q = p.clone();
            q.push(Int::one());
            q
        })
        .collect();
    cone_facets(&lifted, dim + 1)
        .into_iter()
        .map(|f| {
            let offset = f.normal[dim].clone();
            let mut normal = f.normal;
            normal.truncate(dim);
            (normal, offset, f.columns)
        })
        .collect()
}

/// Vertex flags of `conv(points)`: a point is a vertex iff the facets through
/// it meet in points that all coincide with it.
pub fn vertex_flags(points: &[Vec<Int>], dim: usize) -> Vec<bool> {
    let facets = polytope_facets(points, dim);
    (0..points.len())
        .map(|i| {
            let mut meet: Vec<usize> = (0..points.len()).collect();
            for (_, _, on) in facets.iter().filter(|(_, _, on)| on.contains(&i)) {
                meet.retain(|j| on.contains(j));
            }
            meet.iter().all(|&j| points[j] == points[i])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn cols(m: &[&[i64]]) -> Vec<Vec<Int>> {
        m.iter().map(|c| c.iter().map(|&x| int(x)).collect()).collect()
    }

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn example() -> Vec<Vec<Int>> {
        cols(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1], &[1, 2, 2]])
    }

    #[test]
    fn example_cone_facets() {
        let f = cone_facets(&example(), 3);
        let normals: BTreeSet<Vec<Int>> = f.iter().map(|f| f.normal.clone()).collect();
        let expected: BTreeSet<Vec<Int>> =
            [iv(&[0, 0, 1]), iv(&[0, 1, 0]), iv(&[2, -2, 1]), iv(&[2, 1, -2])].into_iter().collect();
        assert_eq!(normals, expected);
    }

    #[test]
    fn one_dimensional_cones() {
        let f = cone_facets(&cols(&[&[1], &[2]]), 1);
        assert_eq!(f, vec![ConeFacet { normal: iv(&[1]), columns: vec![] }]);
        // the whole line has no facets
        assert!(cone_facets(&cols(&[&[1], &[-1]]), 1).is_empty());
    }

    #[test]
    fn half_plane() {
        let f = cone_facets(&cols(&[&[1, 0], &[-1, 0], &[0, 1]]), 2);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].normal, iv(&[0, 1]));
        assert_eq!(f[0].columns, vec![0, 1]);
    }

    #[test]
    fn faces_of_quadrant() {
        let faces = cone_faces(&cols(&[&[1, 0], &[0, 1]]), 2);
        assert_eq!(faces, vec![vec![], vec![0], vec![0, 1], vec![1]]);
    }

    #[test]
    fn vertices_of_segment_with_midpoint() {
        let pts = cols(&[&[1], &[2], &[0]]);
        assert_eq!(vertex_flags(&pts, 1), vec![false, true, true]);
        let sq = cols(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[2, 2]]);
        assert_eq!(vertex_flags(&sq, 2), vec![true, true, true, false, true]);
    }
}

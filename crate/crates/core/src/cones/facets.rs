use crate::numkit::{null_space, RealMatrix, RealVector};
use crate::{Error, Result};

/// Largest ambient dimension handled by [`generators_from_inequalities`].
pub const MAX_FACET_DIM: usize = 3;

/// Generators (columns) of `{x ∈ Rᵈ : aᵢ·x ≥ 0 for every row aᵢ}`.
///
/// The lineality space `ker A` contributes `± ` its basis vectors; the
/// pointed remainder lives in `(ker A)⊥` and its extreme rays are the
/// feasible directions cut out by `k − 1` of the inequalities, `k` being the
/// dimension of the remainder. Only `d ≤ 3` is supported.
pub fn generators_from_inequalities(a: &RealMatrix, d: usize) -> Result<RealMatrix> {
    if d > MAX_FACET_DIM {
        return Err(Error::InvalidInput(format!(
            "facet enumeration is limited to dimension {MAX_FACET_DIM}, got {d}"
        )));
    }
    if a.ncols() != d {
        return Err(Error::AmbientMismatch { expected: d, got: a.ncols() });
    }
    let mut gens: Vec<RealVector> = Vec::new();
    let lineality = if a.nrows() == 0 {
        RealMatrix::identity(d, d)
    } else {
        null_space(a, 1e-10)
    };
    for c in lineality.column_iter() {
        gens.push(c.into_owned());
        gens.push(-c.into_owned());
    }
    // orthonormal basis of the complement of the lineality space
    let complement = if lineality.ncols() == 0 {
        RealMatrix::identity(d, d)
    } else {
        null_space(&lineality.transpose(), 1e-10)
    };
    let k = complement.ncols();
    if k > 0 {
        let reduced = a * &complement;
        let rows: Vec<RealVector> = reduced.row_iter().map(|r| r.transpose()).collect();
        let feasible = |v: &RealVector| {
            let scale = reduced.amax().max(1.0);
            rows.iter().all(|r| r.dot(v) >= -1e-10 * scale)
        };
        let mut candidates: Vec<RealVector> = Vec::new();
        for subset in subsets(rows.len(), k - 1) {
            let m = if subset.is_empty() {
                RealMatrix::zeros(0, k)
            } else {
                RealMatrix::from_fn(subset.len(), k, |i, j| rows[subset[i]][j])
            };
            let ns = if m.nrows() == 0 { RealMatrix::identity(k, k) } else { null_space(&m, 1e-10) };
            if ns.ncols() != 1 {
                continue;
            }
            let v = ns.column(0).into_owned();
            candidates.push(v.clone());
            candidates.push(-v);
        }
        let mut rays: Vec<RealVector> = Vec::new();
        for v in candidates {
            if feasible(&v) && !rays.iter().any(|r| (r - &v).norm() < 1e-9) {
                rays.push(v);
            }
        }
        gens.extend(rays.into_iter().map(|r| &complement * r));
    }
    Ok(if gens.is_empty() {
        RealMatrix::zeros(d, 0)
    } else {
        RealMatrix::from_columns(&gens)
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in subsets(n - first - 1, k - 1) {
            for r in rest.iter_mut() {
                *r += first + 1;
            }
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::real_matrix;

    fn has_ray(g: &RealMatrix, v: &[f64]) -> bool {
        let v = RealVector::from_row_slice(v).normalize();
        g.column_iter().any(|c| (c.normalize() - &v).norm() < 1e-9)
    }

    #[test]
    fn half_line() {
        let g = generators_from_inequalities(&real_matrix(1, 1, &[2.0]), 1).unwrap();
        assert_eq!(g.ncols(), 1);
        assert!(g[(0, 0)] > 0.0);
    }

    #[test]
    fn no_inequalities_gives_the_space() {
        let g = generators_from_inequalities(&RealMatrix::zeros(0, 2), 2).unwrap();
        assert_eq!(g.ncols(), 4);
    }

    #[test]
    fn quadrant_and_halfplane() {
        let g = generators_from_inequalities(&real_matrix(2, 2, &[1.0, 0.0, 0.0, 1.0]), 2).unwrap();
        assert_eq!(g.ncols(), 2);
        assert!(has_ray(&g, &[1.0, 0.0]) && has_ray(&g, &[0.0, 1.0]));
        let g = generators_from_inequalities(&real_matrix(1, 2, &[0.0, 1.0]), 2).unwrap();
        assert!(has_ray(&g, &[1.0, 0.0]) && has_ray(&g, &[-1.0, 0.0]) && has_ray(&g, &[0.0, 1.0]));
    }

    #[test]
    fn octant_and_zero_cone() {
        let g = generators_from_inequalities(&RealMatrix::identity(3, 3), 3).unwrap();
        assert_eq!(g.ncols(), 3);
        // x ≥ 0 and −x ≥ 0
        let g = generators_from_inequalities(&real_matrix(2, 1, &[1.0, -1.0]), 1).unwrap();
        assert_eq!(g.ncols(), 0);
    }

    #[test]
    fn square_pyramid() {
        // z ≥ |x|, z ≥ |y|: four extreme rays (±1, ±1, 1)
        let a = real_matrix(4, 3, &[1.0, 0.0, 1.0, -1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, -1.0, 1.0]);
        let g = generators_from_inequalities(&a, 3).unwrap();
        assert_eq!(g.ncols(), 4);
        for s in [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [-1.0, 1.0, 1.0], [-1.0, -1.0, 1.0]] {
            assert!(has_ray(&g, &s));
        }
    }

    #[test]
    fn too_large() {
        assert!(generators_from_inequalities(&RealMatrix::identity(4, 4), 4).is_err());
    }
}

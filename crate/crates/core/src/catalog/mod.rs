//! Worked examples as ready-made bundles of algebra, grading, invariant cone
//! and implementing matrix for `τ`, with known answers for tests.
//!
//! | name | algebra | cone |
//! |------|---------|------|
//! | `sl2` | `sl₂(R)`, `h = ½diag(1,−1)` | `b ≥ 0, c ≤ 0, a² ≤ −bc` |
//! | `poincare3`, `poincare4` | `p(d) = R^{1,d−1} ⋊ so_{1,d−1}`, `h` a boost | light cone in the translations |
//! | `jacobi1` | `hcsp(R², ω)` | nonnegative polynomials of degree ≤ 2 |
//! | `solvable` | `R² ⋊_D R`, `D = diag(1,−1)` | the orthant of `D`-eigenvectors |

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cones::{invariance_check, nonneg_poly_dim, Cone, ConeSpec};
use crate::liealg::{grade_by, tau_matrix_defect, GroupElement, Grading, LieAlgebra, LieAlgebraJson};
use crate::numkit::{range_basis, real_matrix, Complex64, ComplexMatrix, RealMatrix, RealVector};
use crate::{Error, Result, Tolerance};

/// Demo names accepted by [`by_name`].
pub const DEMO_NAMES: [&str; 5] = ["sl2", "poincare3", "poincare4", "jacobi1", "solvable"];

/// Known answers attached to an entry.
#[derive(Debug, Clone, Default)]
pub struct KnownAnswers {
    /// `[dim g⁻¹, dim g⁰, dim g¹]`.
    pub dims: [usize; 3],
    /// Rays spanning (or lying in) `C₊` and `C₋`.
    pub c_plus_rays: Vec<RealVector>,
    pub c_minus_rays: Vec<RealVector>,
    /// Group elements inside and outside `S(h, C)`.
    pub members: Vec<RealMatrix>,
    pub non_members: Vec<RealMatrix>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: Arc<LieAlgebra>,
    pub h: RealVector,
    pub grading: Grading,
    pub cone: Cone,
    pub c_plus: Cone,
    pub c_minus: Cone,
    /// Basis (columns, in coordinates) of a compactly embedded Cartan
    /// subalgebra, when the entry ships one.
    pub cartan: Option<RealMatrix>,
    pub known: KnownAnswers,
}

impl CatalogEntry {
    /// Assembles and validates an entry: the grading must exist, the
    /// implementing matrix must realize `τ`, and the cone must pass a seeded
    /// invariance check.
    pub fn new(
        name: impl Into<String>,
        algebra: LieAlgebra,
        h: RealVector,
        cone: Cone,
        cartan: Option<RealMatrix>,
        known: KnownAnswers,
    ) -> Result<Self> {
        let name = name.into();
        let algebra = Arc::new(algebra);
        let tol = Tolerance::default();
        let grading = grade_by(&algebra, &h, tol)?;
        let defect = tau_matrix_defect(&grading)?;
        if defect > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "{name}: tau matrix does not implement tau (defect {defect:e})"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let report = invariance_check(&cone, &grading, 64, &mut rng)?;
        if !report.passed(Tolerance::uniform(1e-8)?) {
            return Err(Error::InvalidInput(format!("{name}: cone failed the invariance check {report:?}")));
        }
        let (c_plus, c_minus) = cone.graded_parts(&grading)?;
        Ok(CatalogEntry { name, algebra, h, grading, cone, c_plus, c_minus, cartan, known })
    }

    /// Wraps a real representation matrix as a group element.
    pub fn group_element(&self, m: &RealMatrix) -> Result<GroupElement> {
        GroupElement::from_real(&self.algebra, m)
    }

    pub fn tau_matrix(&self) -> &ComplexMatrix {
        self.algebra.tau_matrix().expect("catalog entries ship a tau matrix")
    }

    pub fn to_bundle(&self) -> CatalogBundle {
        CatalogBundle {
            name: self.name.clone(),
            algebra: self.algebra.to_json(),
            h: self.h.iter().copied().collect(),
            cone: self.cone.to_spec().expect("catalog cones have a JSON form"),
            cartan: self
                .cartan
                .as_ref()
                .map(|c| c.column_iter().map(|col| col.iter().copied().collect()).collect()),
            dims: self.known.dims,
        }
    }

    /// Rebuilds an entry from its bundle; only `dims` survives of the known
    /// answers. A bundle whose `dims` disagree with the detected grading is
    /// rejected.
    pub fn from_bundle(b: &CatalogBundle) -> Result<Self> {
        let algebra = LieAlgebra::from_json(&b.algebra)?;
        let cartan = match &b.cartan {
            Some(cols) if !cols.is_empty() => {
                let n = algebra.dim();
                if cols.iter().any(|c| c.len() != n) {
                    return Err(Error::AmbientMismatch { expected: n, got: cols[0].len() });
                }
                Some(RealMatrix::from_fn(n, cols.len(), |i, j| cols[j][i]))
            }
            _ => None,
        };
        let known = KnownAnswers { dims: b.dims, ..KnownAnswers::default() };
        let entry = CatalogEntry::new(
            b.name.clone(),
            algebra,
            RealVector::from_row_slice(&b.h),
            Cone::from_spec(&b.cone)?,
            cartan,
            known,
        )?;
        if entry.grading.dims() != b.dims {
            return Err(Error::InvalidInput(format!(
                "bundle declares dims {:?} but the grading has {:?}",
                b.dims,
                entry.grading.dims()
            )));
        }
        Ok(entry)
    }
}

/// JSON form of a catalog entry, as consumed by the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogBundle {
    pub name: String,
    pub algebra: LieAlgebraJson,
    pub h: Vec<f64>,
    pub cone: ConeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<f64>>>,
    pub dims: [usize; 3],
}

fn unit_matrix(n: usize, i: usize, j: usize) -> RealMatrix {
    let mut m = RealMatrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

fn vector(v: &[f64]) -> RealVector {
    RealVector::from_row_slice(v)
}

/// `sl₂(R)` with basis `(½diag(1,−1), E12, E21)`.
pub fn sl2_algebra() -> LieAlgebra {
    let basis = [
        real_matrix(2, 2, &[0.5, 0.0, 0.0, -0.5]),
        unit_matrix(2, 0, 1),
        unit_matrix(2, 1, 0),
    ];
    let tau = real_matrix(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    LieAlgebra::from_real_basis("sl2", &basis, Some(&tau)).expect("sl2 basis is valid")
}

/// `su(2)` with basis `(diag(i,−i), [[0,1],[−1,0]], [[0,i],[i,0]])`.
pub fn su2_algebra() -> LieAlgebra {
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let basis = vec![
        ComplexMatrix::from_row_slice(2, 2, &[i, z, z, -i]),
        ComplexMatrix::from_row_slice(2, 2, &[z, one, -one, z]),
        ComplexMatrix::from_row_slice(2, 2, &[z, i, i, z]),
    ];
    LieAlgebra::new("su2", basis, None).expect("su2 basis is valid")
}

/// `su(2) ⊕ sl₂(R)` in block-diagonal 4×4 matrices; the first three basis
/// vectors span `su(2)`, the last three `sl₂(R)`.
pub fn su2_plus_sl2_algebra() -> LieAlgebra {
    let mut basis = Vec::new();
    for b in su2_algebra().basis() {
        let mut m = ComplexMatrix::zeros(4, 4);
        m.view_mut((0, 0), (2, 2)).copy_from(b);
        basis.push(m);
    }
    for b in sl2_algebra().basis() {
        let mut m = ComplexMatrix::zeros(4, 4);
        m.view_mut((2, 2), (2, 2)).copy_from(b);
        basis.push(m);
    }
    LieAlgebra::new("su2+sl2", basis, None).expect("block basis is valid")
}

/// `heis(R², ω)` as strictly upper triangular 3×3 matrices with basis
/// `(E12, E23, E13)`; the center is spanned by the last vector.
pub fn heisenberg_algebra() -> LieAlgebra {
    let basis = [unit_matrix(3, 0, 1), unit_matrix(3, 1, 2), unit_matrix(3, 0, 2)];
    LieAlgebra::from_real_basis("heis", &basis, None).expect("heisenberg basis is valid")
}

/// The abelian algebra of diagonal `n×n` matrices.
pub fn abelian_algebra(n: usize) -> LieAlgebra {
    let basis: Vec<RealMatrix> = (0..n).map(|i| unit_matrix(n, i, i)).collect();
    LieAlgebra::from_real_basis(format!("abelian{n}"), &basis, None).expect("diagonal basis is valid")
}

/// `sl₂(R)` with the cone `b ≥ 0, c ≤ 0, a² ≤ −bc`.
pub fn build_sl2() -> CatalogEntry {
    let known = KnownAnswers {
        dims: [1, 1, 1],
        c_plus_rays: vec![vector(&[0.0, 1.0, 0.0])],
        c_minus_rays: vec![vector(&[0.0, 0.0, 1.0])],
        members: vec![
            real_matrix(2, 2, &[1.0, 1.0, 0.0, 1.0]),
            real_matrix(2, 2, &[2.0, 1.0, 1.0, 1.0]),
        ],
        non_members: vec![
            real_matrix(2, 2, &[1.0, -1.0, 0.0, 1.0]),
            real_matrix(2, 2, &[0.0, 1.0, -1.0, 0.0]),
        ],
    };
    CatalogEntry::new(
        "sl2",
        sl2_algebra(),
        vector(&[1.0, 0.0, 0.0]),
        Cone::Sl2Lorentz,
        Some(real_matrix(3, 1, &[0.0, 1.0, -1.0])),
        known,
    )
    .expect("sl2 entry is valid")
}

/// `p(d) = R^{1,d−1} ⋊ so_{1,d−1}(R)` in the affine representation
/// `[[l, v], [0, 0]]` of size `d + 1`. Basis order: the `d` translations,
/// the boosts `K₁ … K_{d−1}`, then the rotations `J_{jk}` (`j < k`).
pub fn poincare_algebra(d: usize) -> LieAlgebra {
    let n = d + 1;
    let mut basis = Vec::new();
    for i in 0..d {
        basis.push(unit_matrix(n, i, d));
    }
    for j in 1..d {
        basis.push(unit_matrix(n, 0, j) + unit_matrix(n, j, 0));
    }
    for j in 1..d {
        for k in j + 1..d {
            basis.push(unit_matrix(n, j, k) - unit_matrix(n, k, j));
        }
    }
    let mut tau = RealMatrix::identity(n, n);
    tau[(0, 0)] = -1.0;
    tau[(1, 1)] = -1.0;
    LieAlgebra::from_real_basis(format!("poincare{d}"), &basis, Some(&tau))
        .expect("poincare basis is valid")
}

/// The Poincaré algebra `p(d)` graded by the boost `K₁`, with the light
/// cone `x₀ ≥ ‖(x₁, …)‖` in the translation ideal.
///
/// # Panics
///
/// When `d` is outside `3..=6`.
pub fn build_poincare(d: usize) -> CatalogEntry {
    assert!((3..=6).contains(&d), "build_poincare expects 3 <= d <= 6, got {d}");
    let algebra = poincare_algebra(d);
    let dim = algebra.dim();
    let mut h = RealVector::zeros(dim);
    h[d] = 1.0;
    let map = RealMatrix::from_fn(d, dim, |i, j| if i == j { 1.0 } else { 0.0 });
    let cone = Cone::embedded(Cone::LightCone { d }, map).expect("projection is surjective");
    let translation = |v: &[f64]| {
        let mut m = RealMatrix::identity(d + 1, d + 1);
        for (i, x) in v.iter().enumerate() {
            m[(i, d)] = *x;
        }
        m
    };
    let mut e0 = vec![0.0; d];
    e0[0] = 1.0;
    let mut e1 = vec![0.0; d];
    e1[1] = 1.0;
    let mut plus = RealVector::zeros(dim);
    plus[0] = 1.0;
    plus[1] = 1.0;
    let mut minus = RealVector::zeros(dim);
    minus[0] = -1.0;
    minus[1] = 1.0;
    let dims = [d - 1, (d - 2) + 1 + (d - 2) * (d - 3) / 2, d - 1];
    let known = KnownAnswers {
        dims,
        c_plus_rays: vec![plus],
        c_minus_rays: vec![minus],
        members: vec![translation(&e1)],
        non_members: vec![translation(&e0)],
    };
    CatalogEntry::new(format!("poincare{d}"), algebra, h, cone, None, known)
        .expect("poincare entry is valid")
}

/// Closed-form membership in the Poincaré compression semigroup: for
/// `g = [[l, v], [0, 1]]`, the translation satisfies `v₁ ≥ |v₀|` and the
/// Lorentz part lies in `SO(1,1)↑ × SO(d−2)` (block diagonal, with an
/// orthochronous boost block and a rotation block of determinant one).
pub fn poincare_closed_form(m: &RealMatrix, d: usize, tol: f64) -> bool {
    let l = m.view((0, 0), (d, d));
    let v = m.view((0, d), (d, 1));
    for i in 0..2 {
        for j in 2..d {
            if l[(i, j)].abs() > tol || l[(j, i)].abs() > tol {
                return false;
            }
        }
    }
    let (c, s) = (l[(0, 0)], l[(0, 1)]);
    let boost_ok = c > 0.0
        && (l[(1, 1)] - c).abs() <= tol * c
        && (l[(1, 0)] - s).abs() <= tol * c
        && (c * c - s * s - 1.0).abs() <= tol * c * c;
    let r = l.view((2, 2), (d - 2, d - 2)).into_owned();
    let rotation_ok =
        (r.transpose() * &r - RealMatrix::identity(d - 2, d - 2)).amax() <= tol && r.determinant() > 0.0;
    boost_ok && rotation_ok && v[(1, 0)] >= v[(0, 0)].abs() - tol
}

/// Standard symplectic form `Ω = [[0, I], [−I, 0]]` on `R²ⁿ`.
pub fn symplectic_form(n: usize) -> RealMatrix {
    let mut o = RealMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        o[(i, n + i)] = 1.0;
        o[(n + i, i)] = -1.0;
    }
    o
}

/// Basis of `sp(2n, R)` as `[[A, B], [C, −Aᵀ]]`: first the `A = Eᵢⱼ`, then
/// symmetric `B`, then symmetric `C` (both indexed by `i ≤ j`).
pub fn sp_basis(n: usize) -> Vec<RealMatrix> {
    let m = 2 * n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut x = RealMatrix::zeros(m, m);
            x[(i, j)] = 1.0;
            x[(n + j, n + i)] = -1.0;
            out.push(x);
        }
    }
    for (row0, col0) in [(0, n), (n, 0)] {
        for i in 0..n {
            for j in i..n {
                let mut x = RealMatrix::zeros(m, m);
                x[(row0 + i, col0 + j)] = 1.0;
                x[(row0 + j, col0 + i)] = 1.0;
                out.push(x);
            }
        }
    }
    out
}

/// `hcsp(R²ⁿ, ω) = heis(R²ⁿ, ω) ⋊ (sp(2n) ⊕ R·id)` in matrices of size
/// `2n + 2`. Basis order: `Z`, the `N_v` for `v = e₁ … e₂ₙ`, the
/// [`sp_basis`], and the Euler element `D = diag(1, 0, …, 0, −1)`.
pub fn jacobi_algebra(n: usize) -> LieAlgebra {
    let m = 2 * n;
    let size = m + 2;
    let omega = symplectic_form(n);
    let mut basis = vec![unit_matrix(size, 0, size - 1)];
    for k in 0..m {
        let mut v = RealVector::zeros(m);
        v[k] = 1.0;
        let top = v.transpose() * &omega * 0.5;
        let mut x = RealMatrix::zeros(size, size);
        x.view_mut((0, 1), (1, m)).copy_from(&top);
        x.view_mut((1, size - 1), (m, 1)).copy_from(&v);
        basis.push(x);
    }
    for s in sp_basis(n) {
        let mut x = RealMatrix::zeros(size, size);
        x.view_mut((1, 1), (m, m)).copy_from(&s);
        basis.push(x);
    }
    basis.push(unit_matrix(size, 0, 0) - unit_matrix(size, size - 1, size - 1));
    let mut tau = RealMatrix::identity(size, size);
    tau[(0, 0)] = -1.0;
    for i in 0..n {
        tau[(1 + n + i, 1 + n + i)] = -1.0;
    }
    LieAlgebra::from_real_basis(format!("jacobi{n}"), &basis, Some(&tau))
        .expect("jacobi basis is valid")
}

/// Linear map from [`jacobi_algebra`] coordinates to coefficients of the
/// polynomial `φ(z, v, x)(ξ) = z + ω(v, ξ) + ½ω(xξ, ξ)` on `R²ⁿ`, in the
/// coordinates of [`Cone::NonnegPoly`]. The Euler element spans its kernel.
pub fn jacobi_polynomial_map(n: usize) -> RealMatrix {
    let m = 2 * n;
    let alg_dim = 1 + m + n * (2 * n + 1) + 1;
    let omega = symplectic_form(n);
    let pdim = nonneg_poly_dim(m);
    let mut map = RealMatrix::zeros(pdim, alg_dim);
    // coefficient vector of the polynomial with Gram blocks (c, b, Q)
    let coeffs = |c: f64, b: &RealVector, q: &RealMatrix| {
        let mut gram = RealMatrix::zeros(m + 1, m + 1);
        gram[(0, 0)] = c;
        for i in 0..m {
            gram[(0, i + 1)] = b[i] / 2.0;
            gram[(i + 1, 0)] = b[i] / 2.0;
        }
        gram.view_mut((1, 1), (m, m)).copy_from(q);
        crate::cones::poly_coeffs_from_gram(&gram)
    };
    let zero_b = RealVector::zeros(m);
    let zero_q = RealMatrix::zeros(m, m);
    map.set_column(0, &coeffs(1.0, &zero_b, &zero_q));
    for k in 0..m {
        let mut v = RealVector::zeros(m);
        v[k] = 1.0;
        // ω(v, ξ) = vᵀΩξ
        let b = omega.transpose() * v;
        map.set_column(1 + k, &coeffs(0.0, &b, &zero_q));
    }
    for (k, x) in sp_basis(n).iter().enumerate() {
        // ½ω(xξ, ξ) = ½ ξᵀ xᵀ Ω ξ, and xᵀΩ is symmetric for x ∈ sp
        let q = x.transpose() * &omega * 0.5;
        map.set_column(1 + m + k, &coeffs(0.0, &zero_b, &q));
    }
    map
}

/// The Jacobi entry: `hcsp(R²ⁿ, ω)` graded by `h = ½(id_V + τ_V)` with
/// `τ_V = diag(−Iₙ, Iₙ)`, and the cone of elements whose polynomial `φ` is
/// nonnegative on `R²ⁿ`. Then `C₊` is the cone of nonnegative polynomials of
/// degree ≤ 2 in the first `n` coordinates and `C₋` the nonpositive
/// quadratic forms in the last `n`.
///
/// # Panics
///
/// When `n` is outside `1..=3`.
pub fn build_jacobi(n: usize) -> CatalogEntry {
    assert!((1..=3).contains(&n), "build_jacobi expects 1 <= n <= 3, got {n}");
    let algebra = jacobi_algebra(n);
    let dim = algebra.dim();
    let m = 2 * n;
    let sp_offset = 1 + m;
    // X_τ has A = −I, i.e. the sum of the negated diagonal A-basis elements
    let mut h = RealVector::zeros(dim);
    for i in 0..n {
        h[sp_offset + i * n + i] = -0.5;
    }
    h[dim - 1] = 0.5;
    let cone = Cone::embedded(Cone::NonnegPoly { n: m }, jacobi_polynomial_map(n))
        .expect("polynomial map is surjective");
    let mut constant = RealVector::zeros(dim);
    constant[0] = 1.0;
    // the first diagonal B-block element has polynomial ½q₁², so this is −q₁²
    let b_offset = sp_offset + n * n;
    let mut minus_q2 = RealVector::zeros(dim);
    minus_q2[b_offset] = -2.0;
    let known = KnownAnswers {
        dims: [n * (n + 1) / 2, n + n * n + 1, 1 + n + n * (n + 1) / 2],
        c_plus_rays: vec![constant],
        c_minus_rays: vec![minus_q2],
        members: Vec::new(),
        non_members: Vec::new(),
    };
    CatalogEntry::new(format!("jacobi{n}"), algebra, h, cone, None, known)
        .expect("jacobi entry is valid")
}

/// `E ⋊_D R` with `E = Rᵐ` in matrices `[[tD, v], [0, 0]]`, graded by
/// `h = (0, 1)`, with the polyhedral cone spanned by bases of the
/// eigenspaces `E^±(D)`.
pub fn build_solvable(d: &RealMatrix) -> Result<CatalogEntry> {
    let m = d.nrows();
    if d.ncols() != m || m == 0 {
        return Err(Error::InvalidInput("D must be a nonempty square matrix".into()));
    }
    let eye = RealMatrix::identity(m, m);
    if (d * d - &eye).amax() > 1e-12 {
        return Err(Error::InvalidInput("D must be an involution".into()));
    }
    let n = m + 1;
    let mut basis: Vec<RealMatrix> = (0..m).map(|i| unit_matrix(n, i, m)).collect();
    let mut t = RealMatrix::zeros(n, n);
    t.view_mut((0, 0), (m, m)).copy_from(d);
    basis.push(t);
    let mut tau = RealMatrix::identity(n, n);
    tau[(m, m)] = -1.0;
    let algebra = LieAlgebra::from_real_basis("solvable", &basis, Some(&tau))?;
    let mut h = RealVector::zeros(m + 1);
    h[m] = 1.0;

    let plus = range_basis(&((&eye + d) * 0.5), 1e-10);
    let minus = range_basis(&((&eye - d) * 0.5), 1e-10);
    let embed = |v: nalgebra::DVectorView<f64>| {
        let mut x = RealVector::zeros(m + 1);
        x.rows_mut(0, m).copy_from(&v);
        x
    };
    let mut gens: Vec<RealVector> = plus.column_iter().map(embed).collect();
    gens.extend(minus.column_iter().map(embed));
    let cone = Cone::Polyhedral { generators: RealMatrix::from_columns(&gens) };

    let exp_gen = |v: &RealVector, s: f64| {
        let mut g = RealMatrix::identity(n, n);
        for i in 0..m {
            g[(i, m)] = s * v[i];
        }
        g
    };
    let known = KnownAnswers {
        dims: [minus.ncols(), 1, plus.ncols()],
        c_plus_rays: plus.column_iter().map(embed).collect(),
        c_minus_rays: minus.column_iter().map(|c| -embed(c)).collect(),
        members: plus.column_iter().map(|c| exp_gen(&c.into_owned(), 1.0)).collect(),
        non_members: plus.column_iter().map(|c| exp_gen(&c.into_owned(), -1.0)).collect(),
    };
    CatalogEntry::new("solvable", algebra, h, cone, None, known)
}

/// Every demo entry, in [`DEMO_NAMES`] order.
pub fn all_entries() -> Vec<CatalogEntry> {
    DEMO_NAMES.iter().map(|n| by_name(n).expect("demo names resolve")).collect()
}

/// Looks up a demo entry by name.
pub fn by_name(name: &str) -> Option<CatalogEntry> {
    match name {
        "sl2" => Some(build_sl2()),
        "poincare3" => Some(build_poincare(3)),
        "poincare4" => Some(build_poincare(4)),
        "jacobi1" => Some(build_jacobi(1)),
        "solvable" => Some(
            build_solvable(&real_matrix(2, 2, &[1.0, 0.0, 0.0, -1.0])).expect("diag(1,-1) is an involution"),
        ),
        _ => None,
    }
}

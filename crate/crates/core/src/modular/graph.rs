use crate::numkit::{Complex64, ComplexMatrix};
use crate::{Error, Result};

/// Orthogonal projection onto the graph `{(x, Sx)} ⊆ Cⁿ ⊕ Cᵐ` and the
/// deviations of its blocks from the closed forms
/// `p₁₁ = (1 + S*S)⁻¹` and `p₁₂ = (1 + S*S)⁻¹S*`.
#[derive(Debug, Clone)]
pub struct GraphProjection {
    pub p: ComplexMatrix,
    /// Largest entrywise deviation of `p₁₁`.
    pub p11_defect: f64,
    /// Largest entrywise deviation of `p₁₂`.
    pub p12_defect: f64,
    n_domain: usize,
}

impl GraphProjection {
    /// The block `p₁₁` acting on the domain `Cⁿ`.
    pub fn p11(&self) -> ComplexMatrix {
        self.p.view((0, 0), (self.n_domain, self.n_domain)).into_owned()
    }

    /// The block `p₁₂` from `Cᵐ` to `Cⁿ`.
    pub fn p12(&self) -> ComplexMatrix {
        let m = self.p.nrows() - self.n_domain;
        self.p.view((0, self.n_domain), (self.n_domain, m)).into_owned()
    }
}

/// Builds `P = QQᴴ` from a QR factorization of `[I; S]`.
pub fn graph_projection(s: &ComplexMatrix) -> Result<GraphProjection> {
    crate::numkit::ensure_finite(s, "S")?;
    let (m, n) = s.shape();
    if n == 0 {
        return Err(Error::InvalidInput("S must have at least one column".into()));
    }
    let mut g = ComplexMatrix::zeros(n + m, n);
    g.view_mut((0, 0), (n, n)).fill_with_identity();
    g.view_mut((n, 0), (m, n)).copy_from(s);
    let q = g.qr().q();
    let p = &q * q.adjoint();

    let gram = ComplexMatrix::identity(n, n) + s.adjoint() * s;
    let gram_inv = gram
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidInput("1 + S*S is singular".into()))?;
    let p11 = p.view((0, 0), (n, n));
    let p12 = p.view((0, n), (n, m));
    let dev = |a: nalgebra::DMatrixView<Complex64>, b: &ComplexMatrix| {
        a.iter().zip(b.iter()).fold(0.0_f64, |acc, (x, y)| acc.max((x - y).norm()))
    };
    let p11_defect = dev(p11, &gram_inv);
    let p12_defect = dev(p12, &(&gram_inv * s.adjoint()));
    Ok(GraphProjection { p, p11_defect, p12_defect, n_domain: n })
}

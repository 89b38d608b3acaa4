//! Representations, actions and semidirect products.

use crate::error::{ensure_len, Error, Result};
use crate::linalg::{add_scaled, unit_vector, vector_sub, zero_vector, Matrix, Vector};
use crate::lts::LieTripleSystem;
use crate::report::Report;
use crate::scalar::Scalar;

/// A bilinear map `θ : 𝔏 × 𝔏 → End(V)` stored on basis pairs.
///
/// `D(a, b) = θ(b, a) - θ(a, b)` is always recomputed from `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: LieTripleSystem,
    space_dim: usize,
    theta: Vec<Matrix>,
}

impl Representation {
    /// `theta[i * dim + j]` is the matrix of `θ(e_i, e_j)` on `V`.
    pub fn new(algebra: LieTripleSystem, space_dim: usize, theta: Vec<Matrix>) -> Result<Self> {
        let d = algebra.dim();
        ensure_len("number of theta matrices", d * d, theta.len())?;
        for (n, m) in theta.iter().enumerate() {
            if m.rows() != space_dim || m.cols() != space_dim {
                return Err(Error::DimensionMismatch(format!(
                    "theta matrix {n} is {}x{}, expected {space_dim}x{space_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation {
            algebra,
            space_dim,
            theta,
        })
    }

    pub fn zero(algebra: LieTripleSystem, space_dim: usize) -> Self {
        let d = algebra.dim();
        Representation {
            algebra,
            space_dim,
            theta: vec![Matrix::zeros(space_dim, space_dim); d * d],
        }
    }

    /// `θ(a, b)c = [c, a, b]`, so that `D(a, b)c = [a, b, c]`.
    pub fn adjoint(algebra: &LieTripleSystem) -> Self {
        let d = algebra.dim();
        let mut theta = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                theta.push(algebra.right_multiplication(&unit_vector(d, i), &unit_vector(d, j)));
            }
        }
        Representation {
            algebra: algebra.clone(),
            space_dim: d,
            theta,
        }
    }

    pub fn algebra(&self) -> &LieTripleSystem {
        &self.algebra
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn theta_basis(&self, i: usize, j: usize) -> &Matrix {
        &self.theta[i * self.algebra.dim() + j]
    }

    pub fn theta_matrices(&self) -> &[Matrix] {
        &self.theta
    }

    pub fn d_basis(&self, i: usize, j: usize) -> Matrix {
        self.theta_basis(j, i).sub(self.theta_basis(i, j))
    }

    /// `θ(x, y)` for arbitrary vectors of the acting system.
    pub fn theta(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        let m = self.space_dim;
        let mut out = Matrix::zeros(m, m);
        for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                out.add_scaled(&(xi * yj), self.theta_basis(i, j));
            }
        }
        out
    }

    pub fn d(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        self.theta(y, x).sub(&self.theta(x, y))
    }

    /// `θ(x, y) v` without materializing the matrix.
    pub fn theta_apply(&self, x: &[Scalar], y: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.space_dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let w = self.theta_basis(i, j).mul_vec(v);
                add_scaled(&mut out, &(xi * yj), &w);
            }
        }
        out
    }

    pub fn d_apply(&self, x: &[Scalar], y: &[Scalar], v: &[Scalar]) -> Vector {
        vector_sub(&self.theta_apply(y, x, v), &self.theta_apply(x, y, v))
    }

    /// The two module identities, checked as matrix identities on all basis
    /// 4-tuples `(a, b, c, d)`:
    ///
    /// * `θ(c,d)θ(a,b) - θ(b,d)θ(a,c) - θ(a,[b,c,d]) + D(b,c)θ(a,d) = 0`
    /// * `θ(c,d)D(a,b) - D(a,b)θ(c,d) + θ([a,b,c],d) + θ(c,[a,b,d]) = 0`
    pub fn verify(&self) -> Report {
        let n = self.algebra.dim();
        let e: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        let ds: Vec<Matrix> = (0..n * n).map(|k| self.d_basis(k / n, k % n)).collect();
        let dm = |i: usize, j: usize| &ds[i * n + j];
        let mut report = Report::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let first = self
                            .theta_basis(c, d)
                            .matmul(self.theta_basis(a, b))
                            .sub(&self.theta_basis(b, d).matmul(self.theta_basis(a, c)))
                            .sub(&self.theta(&e[a], self.algebra.basis_bracket(b, c, d)))
                            .add(&dm(b, c).matmul(self.theta_basis(a, d)));
                        report.check("module-1", &[a, b, c, d], first.entries().to_vec());
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let second = self
                            .theta_basis(c, d)
                            .matmul(dm(a, b))
                            .sub(&dm(a, b).matmul(self.theta_basis(c, d)))
                            .add(&self.theta(self.algebra.basis_bracket(a, b, c), &e[d]))
                            .add(&self.theta(&e[c], self.algebra.basis_bracket(a, b, d)));
                        report.check("module-2", &[a, b, c, d], second.entries().to_vec());
                    }
                }
            }
        }
        report
    }
}

/// A representation of 𝔏 on the underlying space of a second system 𝔏′.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    rep: Representation,
    target: LieTripleSystem,
}

impl Action {
    pub fn new(rep: Representation, target: LieTripleSystem) -> Result<Self> {
        ensure_len("target dimension", rep.space_dim(), target.dim())?;
        Ok(Action { rep, target })
    }

    /// The adjoint representation of `algebra` acting on itself.
    pub fn adjoint(algebra: &LieTripleSystem) -> Self {
        Action {
            rep: Representation::adjoint(algebra),
            target: algebra.clone(),
        }
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn algebra(&self) -> &LieTripleSystem {
        self.rep.algebra()
    }

    pub fn target(&self) -> &LieTripleSystem {
        &self.target
    }

    /// Action conditions only: `θ(x,y)u ∈ C(𝔏′)` and `θ(x,y)[u,v,w]′ = 0`
    /// for basis elements.
    pub fn verify_action(&self) -> Report {
        let n = self.algebra().dim();
        let m = self.target.dim();
        let center = self.target.center();
        let mut report = Report::new();
        for x in 0..n {
            for y in 0..n {
                let t = self.rep.theta_basis(x, y);
                for u in 0..m {
                    let image = t.column(u);
                    if !center.contains(&image) {
                        report.check("central", &[x, y, u], image);
                    }
                }
                for u in 0..m {
                    for v in 0..m {
                        for w in 0..m {
                            let r = t.mul_vec(self.target.basis_bracket(u, v, w));
                            report.check("annihilates-brackets", &[x, y, u, v, w], r);
                        }
                    }
                }
            }
        }
        report
    }

    /// Everything a semidirect product needs: both systems satisfy the
    /// axioms, `θ` is a representation, and the action conditions hold.
    pub fn verify_all(&self) -> Report {
        let mut report = Report::new();
        for mut v in self.algebra().verify().violations {
            v.condition = format!("acting-{}", v.condition);
            report.violations.push(v);
        }
        for mut v in self.target.verify().violations {
            v.condition = format!("target-{}", v.condition);
            report.violations.push(v);
        }
        report.extend(self.rep.verify());
        report.extend(self.verify_action());
        report
    }

    /// `[x+u, y+v, z+w]_θ = [x,y,z] + D(x,y)w + θ(y,z)u - θ(x,z)v + λ[u,v,w]′`
    /// with `x, y, z ∈ 𝔏` and `u, v, w ∈ 𝔏′` given separately.
    pub fn semidirect_bracket(
        &self,
        lambda: &Scalar,
        (x, u): (&[Scalar], &[Scalar]),
        (y, v): (&[Scalar], &[Scalar]),
        (z, w): (&[Scalar], &[Scalar]),
    ) -> (Vector, Vector) {
        let l = self.algebra().br(x, y, z);
        let mut lp = self.rep.d_apply(x, y, w);
        add_scaled(&mut lp, &Scalar::one(), &self.rep.theta_apply(y, z, u));
        add_scaled(
            &mut lp,
            &Scalar::from_int(-1),
            &self.rep.theta_apply(x, z, v),
        );
        add_scaled(&mut lp, lambda, &self.target.br(u, v, w));
        (l, lp)
    }

    /// The semidirect product 𝔏 ⋉_θ 𝔏′ with weight `lambda` on the 𝔏′ bracket.
    /// Basis order: 𝔏 first, then 𝔏′.
    pub fn semidirect_product(&self, lambda: &Scalar) -> Result<LieTripleSystem> {
        let report = self.verify_all();
        if let Some(v) = report.first() {
            return Err(Error::NotVerified(format!(
                "action fails {} at {:?}",
                v.condition, v.witness
            )));
        }
        Ok(self.semidirect_product_unchecked(lambda))
    }

    pub(crate) fn semidirect_product_unchecked(&self, lambda: &Scalar) -> LieTripleSystem {
        let n = self.algebra().dim();
        let m = self.target.dim();
        let split = |i: usize| -> (Vector, Vector) {
            let full = unit_vector(n + m, i);
            (full[..n].to_vec(), full[n..].to_vec())
        };
        let mut names = self.algebra().basis_names().to_vec();
        names.extend(self.target.basis_names().iter().map(|s| format!("{s}'")));
        LieTripleSystem::from_fn(names, |i, j, k| {
            let (x, u) = split(i);
            let (y, v) = split(j);
            let (z, w) = split(k);
            let (mut a, b) = self.semidirect_bracket(lambda, (&x, &u), (&y, &v), (&z, &w));
            a.extend(b);
            a
        })
        .expect("consistent shapes")
    }
}

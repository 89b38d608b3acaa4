//! The cohomology complex of a relative Rota-Baxter operator: the induced
//! representation, `δ_T` on `𝔏 ∧ 𝔏`, `∂_T`, cohomology dimensions and the
//! cochain map of a homomorphism.

use serde::Serialize;

use crate::cochain::{
    cochain_space_basis, constrained_coordinates, tuples, wedge_pairs, Coboundary, Cochain,
    SignConvention,
};
use crate::error::{ensure_len, Error, Result};
use crate::linalg::{
    add_scaled, quotient_dim, unit_vector, vector_sub, zero_vector, LinearMap, Matrix,
    QuotientBasis, SubspaceBasis, Vector,
};
use crate::lts::LieTripleSystem;
use crate::rbo::{RboHomomorphism, RelativeRbo};
use crate::rep::Representation;
use crate::report::Report;
use crate::scalar::Scalar;

/// `(𝔏, θ_T)` as a representation of the descendent system `(𝔏′, [·,·,·]_T)`.
#[derive(Clone, Debug)]
pub struct InducedRepresentation {
    rep: Representation,
}

impl InducedRepresentation {
    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn descendent(&self) -> &LieTripleSystem {
        self.rep.algebra()
    }
}

/// `θ_T(u,v)x = [x,Tu,Tv] - T(D(x,Tu)v - θ(x,Tv)u)`
fn theta_t(rbo: &RelativeRbo, u: usize, v: usize) -> Matrix {
    let n = rbo.dim();
    let rep = rbo.action().rep();
    let (tu, tv) = (rbo.t().image_of_basis(u), rbo.t().image_of_basis(v));
    let (eu, ev) = (
        unit_vector(rbo.source_dim(), u),
        unit_vector(rbo.source_dim(), v),
    );
    let cols: Vec<Vector> = (0..n)
        .map(|k| {
            let x = unit_vector(n, k);
            let mut inner = rep.d_apply(&x, &tu, &ev);
            add_scaled(
                &mut inner,
                &Scalar::from_int(-1),
                &rep.theta_apply(&x, &tv, &eu),
            );
            vector_sub(
                &rbo.action().algebra().br(&x, &tu, &tv),
                &rbo.t().apply(&inner),
            )
        })
        .collect();
    Matrix::from_columns(n, &cols).expect("square")
}

/// `D_T(u,v)x = [Tu,Tv,x] - T(θ(Tv,x)u - θ(Tu,x)v)`, computed directly.
pub fn d_t_direct(rbo: &RelativeRbo, u: usize, v: usize) -> Matrix {
    let n = rbo.dim();
    let rep = rbo.action().rep();
    let (tu, tv) = (rbo.t().image_of_basis(u), rbo.t().image_of_basis(v));
    let (eu, ev) = (
        unit_vector(rbo.source_dim(), u),
        unit_vector(rbo.source_dim(), v),
    );
    let cols: Vec<Vector> = (0..n)
        .map(|k| {
            let x = unit_vector(n, k);
            let mut inner = rep.theta_apply(&tv, &x, &eu);
            add_scaled(
                &mut inner,
                &Scalar::from_int(-1),
                &rep.theta_apply(&tu, &x, &ev),
            );
            vector_sub(
                &rbo.action().algebra().br(&tu, &tv, &x),
                &rbo.t().apply(&inner),
            )
        })
        .collect();
    Matrix::from_columns(n, &cols).expect("square")
}

pub(crate) fn induced_unchecked(rbo: &RelativeRbo) -> InducedRepresentation {
    let m = rbo.source_dim();
    let theta = (0..m * m).map(|k| theta_t(rbo, k / m, k % m)).collect();
    let rep = Representation::new(rbo.descendent_unchecked(), rbo.dim(), theta).expect("shapes");
    InducedRepresentation { rep }
}

pub fn induced_rep(rbo: &RelativeRbo) -> Result<InducedRepresentation> {
    rbo.ensure_rbo()?;
    Ok(induced_unchecked(rbo))
}

/// `D(𝔛) = Σ c_ij D(e_i, e_j)` on 𝔏′.
pub fn wedge_d(rbo: &RelativeRbo, x: &Cochain) -> Result<Matrix> {
    check_wedge(rbo, x)?;
    let m = rbo.source_dim();
    let mut out = Matrix::zeros(m, m);
    for (c, &(i, j)) in x.coeffs().iter().zip(&wedge_pairs(rbo.dim())) {
        if !c.is_zero() {
            out.add_scaled(c, &rbo.action().rep().d_basis(i, j));
        }
    }
    Ok(out)
}

/// `[𝔛, -] = Σ c_ij [e_i, e_j, -]` on 𝔏.
pub fn wedge_bracket(rbo: &RelativeRbo, x: &Cochain) -> Result<Matrix> {
    check_wedge(rbo, x)?;
    let n = rbo.dim();
    let l = rbo.action().algebra();
    let mut out = Matrix::zeros(n, n);
    for (c, &(i, j)) in x.coeffs().iter().zip(&wedge_pairs(n)) {
        if !c.is_zero() {
            out.add_scaled(
                c,
                &l.left_multiplication(&unit_vector(n, i), &unit_vector(n, j)),
            );
        }
    }
    Ok(out)
}

fn check_wedge(rbo: &RelativeRbo, x: &Cochain) -> Result<()> {
    if x.degree() != -1 {
        return Err(Error::UnsupportedDegree(x.degree()));
    }
    ensure_len("wedge dimension", rbo.dim(), x.target_dim())
}

/// `δ_T(𝔛)v = T D(𝔛)v - [𝔛, Tv]`, a degree-1 cochain.
pub fn delta_t(rbo: &RelativeRbo, x: &Cochain) -> Result<Cochain> {
    let d = wedge_d(rbo, x)?;
    let b = wedge_bracket(rbo, x)?;
    let t = rbo.t().matrix();
    let m = t.matmul(&d).sub(&b.matmul(t));
    Ok(Cochain::from_linear_map(&LinearMap::new(m)))
}

/// `∂_T` on cochains of degree 1 and 3, and `δ_T` in degree -1.
pub fn coboundary_t(rbo: &RelativeRbo, f: &Cochain, sign: SignConvention) -> Result<Cochain> {
    rbo.ensure_rbo()?;
    coboundary_t_unchecked(rbo, f, sign)
}

fn coboundary_t_unchecked(rbo: &RelativeRbo, f: &Cochain, sign: SignConvention) -> Result<Cochain> {
    match f.degree() {
        -1 => delta_t(rbo, f),
        1 | 3 => {
            let induced = induced_unchecked(rbo);
            Coboundary::new(induced.rep(), sign).apply(f)
        }
        other => Err(Error::UnsupportedDegree(other)),
    }
}

/// Failures of the closedness condition for a degree-1 cochain, written
/// out in terms of the original operator:
///
/// ```text
/// [f v1, T v2, T v3] + [T v1, f v2, T v3] + [T v1, T v2, f v3]
///   - T(D(f v1, T v2)v3 - θ(f v1, T v3)v2 + θ(f v2, T v3)v1)
///   - T(θ(T v2, f v3)v1 - θ(T v1, f v3)v2 - D(f v2, T v1)v3)
///   - f(θ(T v2, T v3)v1 - θ(T v1, T v3)v2 + D(T v1, T v2)v3 + λ[v1, v2, v3]′) = 0
/// ```
pub fn one_cocycle_check(rbo: &RelativeRbo, f: &Cochain) -> Result<Report> {
    if f.degree() != 1 {
        return Err(Error::UnsupportedDegree(f.degree()));
    }
    ensure_len("cochain source dimension", rbo.source_dim(), f.source_dim())?;
    ensure_len("cochain target dimension", rbo.dim(), f.target_dim())?;
    let m = rbo.source_dim();
    let l = rbo.action().algebra();
    let rep = rbo.action().rep();
    let t = rbo.t();
    let fm = f.to_linear_map()?;
    let minus = Scalar::from_int(-1);
    let one = Scalar::one();
    let mut report = Report::new();
    for v1 in 0..m {
        for v2 in 0..m {
            for v3 in 0..m {
                let e = |i| unit_vector(m, i);
                let (t1, t2, t3) = (
                    t.image_of_basis(v1),
                    t.image_of_basis(v2),
                    t.image_of_basis(v3),
                );
                let (f1, f2, f3) = (
                    fm.image_of_basis(v1),
                    fm.image_of_basis(v2),
                    fm.image_of_basis(v3),
                );
                let mut r = l.br(&f1, &t2, &t3);
                add_scaled(&mut r, &one, &l.br(&t1, &f2, &t3));
                add_scaled(&mut r, &one, &l.br(&t1, &t2, &f3));
                let mut a = rep.d_apply(&f1, &t2, &e(v3));
                add_scaled(&mut a, &minus, &rep.theta_apply(&f1, &t3, &e(v2)));
                add_scaled(&mut a, &one, &rep.theta_apply(&f2, &t3, &e(v1)));
                add_scaled(&mut r, &minus, &t.apply(&a));
                let mut b = rep.theta_apply(&t2, &f3, &e(v1));
                add_scaled(&mut b, &minus, &rep.theta_apply(&t1, &f3, &e(v2)));
                add_scaled(&mut b, &minus, &rep.d_apply(&f2, &t1, &e(v3)));
                add_scaled(&mut r, &minus, &t.apply(&b));
                let mut c = rep.theta_apply(&t2, &t3, &e(v1));
                add_scaled(&mut c, &minus, &rep.theta_apply(&t1, &t3, &e(v2)));
                add_scaled(&mut c, &one, &rep.d_apply(&t1, &t2, &e(v3)));
                add_scaled(
                    &mut c,
                    rbo.weight(),
                    rbo.action().target().basis_bracket(v1, v2, v3),
                );
                add_scaled(&mut r, &minus, &fm.apply(&c));
                report.check("one-cocycle", &[v1, v2, v3], r);
            }
        }
    }
    Ok(report)
}

/// Dimensions of `Z`, `B` and `H = Z / B` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyResult {
    pub degree: i32,
    #[serde(rename = "dim_Z")]
    pub dim_z: usize,
    #[serde(rename = "dim_B")]
    pub dim_b: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
}

/// Cocycles, coboundaries and a fixed basis of the quotient, all in
/// coordinates of the constrained cochain basis of the degree.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i32,
    pub sign: SignConvention,
    pub space: SubspaceBasis,
    pub cocycles: SubspaceBasis,
    pub coboundaries: SubspaceBasis,
    pub quotient: QuotientBasis,
}

impl Cohomology {
    pub fn result(&self) -> CohomologyResult {
        CohomologyResult {
            degree: self.degree,
            dim_z: self.cocycles.dim(),
            dim_b: self.coboundaries.dim(),
            dim_h: self.quotient.dim(),
        }
    }

    /// Coordinates of the class of a cocycle on the quotient basis.
    pub fn class_of(&self, f: &Cochain) -> Result<Vector> {
        if f.degree() != self.degree {
            return Err(Error::UnsupportedDegree(f.degree()));
        }
        let coords = constrained_coordinates(f)?;
        self.quotient
            .class_coordinates(&coords)?
            .ok_or_else(|| Error::NotVerified("cochain is not a cocycle".into()))
    }
}

fn coords_subspace(ambient: usize, vs: Vec<Vector>) -> Result<SubspaceBasis> {
    SubspaceBasis::span(ambient, vs)
}

/// `H^1_T` or `H^3_T` with the given sign convention. Fails with
/// [`Error::NotContained`] when the coboundaries are not cocycles.
pub fn cohomology(rbo: &RelativeRbo, degree: i32, sign: SignConvention) -> Result<Cohomology> {
    rbo.ensure_rbo()?;
    let (s, t) = (rbo.source_dim(), rbo.dim());
    let space = match degree {
        1 | 3 => cochain_space_basis(degree, s, t)?,
        other => return Err(Error::UnsupportedDegree(other)),
    };
    let induced = induced_unchecked(rbo);
    let d = Coboundary::new(induced.rep(), sign);
    let cocycles = d.matrix_on(degree, &space)?.kernel_basis();
    let boundaries: Vec<Vector> = if degree == 1 {
        let w = wedge_pairs(t).len();
        (0..w)
            .map(|k| {
                let x = Cochain::wedge(s, t, unit_vector(w, k))?;
                Ok(delta_t(rbo, &x)?.into_coeffs())
            })
            .collect::<Result<_>>()?
    } else {
        (0..s * t)
            .map(|k| {
                let f = Cochain::new(1, s, t, unit_vector(s * t, k))?;
                constrained_coordinates(&d.apply(&f)?)
            })
            .collect::<Result<_>>()?
    };
    let coboundaries = coords_subspace(space.dim(), boundaries)?;
    quotient_dim(&coboundaries, &cocycles)?;
    let quotient = QuotientBasis::new(&coboundaries, &cocycles)?;
    Ok(Cohomology {
        degree,
        sign,
        space,
        cocycles,
        coboundaries,
        quotient,
    })
}

/// Outcome of [`cohomology_group`]: the cohomology and, when the verbatim
/// sign did not give a complex, a note saying so.
#[derive(Clone, Debug)]
pub struct CohomologyOutcome {
    pub cohomology: Cohomology,
    pub finding: Option<String>,
}

/// Cohomology with the verbatim sign; if `∂∘∂ ≠ 0` makes the coboundaries
/// escape the cocycles, the computation is repeated with the alternative
/// sign and the discrepancy is reported in `finding`.
pub fn cohomology_group(rbo: &RelativeRbo, degree: i32) -> Result<CohomologyOutcome> {
    match cohomology(rbo, degree, SignConvention::Verbatim) {
        Ok(c) => Ok(CohomologyOutcome {
            cohomology: c,
            finding: None,
        }),
        Err(Error::NotContained) => {
            let c = cohomology(rbo, degree, SignConvention::Yamaguti)?;
            Ok(CohomologyOutcome {
                cohomology: c,
                finding: Some(format!(
                    "∂∘∂ ≠ 0 in degree {degree} with the (-1)^(i+1) sign on the D sum; \
                     used (-1)^(n+i) instead"
                )),
            })
        }
        Err(e) => Err(e),
    }
}

/// Number of basis cochains of degree 1 with `∂_T ∂_T f ≠ 0`.
pub fn square_defect(rbo: &RelativeRbo, sign: SignConvention) -> Result<usize> {
    rbo.ensure_rbo()?;
    let induced = induced_unchecked(rbo);
    let d = Coboundary::new(induced.rep(), sign);
    let n = rbo.source_dim() * rbo.dim();
    let mut bad = 0;
    for k in 0..n {
        let f = Cochain::new(1, rbo.source_dim(), rbo.dim(), unit_vector(n, k))?;
        if !d.apply(&d.apply(&f)?)?.is_zero() {
            bad += 1;
        }
    }
    Ok(bad)
}

/// `p(ω)(u_1, ..., u_k) = ψ_𝔏 ω(ψ_𝔏′⁻¹ u_1, ..., ψ_𝔏′⁻¹ u_k)` for `k ≥ 1`.
pub fn cochain_map_p(h: &RboHomomorphism, f: &Cochain) -> Result<Cochain> {
    if f.degree() < 1 {
        return Err(Error::UnsupportedDegree(f.degree()));
    }
    ensure_len(
        "cochain source dimension",
        h.from.source_dim(),
        f.source_dim(),
    )?;
    ensure_len("cochain target dimension", h.from.dim(), f.target_dim())?;
    let inv = h.psi_lprime.matrix().inverse()?;
    if let Some(v) = h.check().first() {
        return Err(Error::NotVerified(format!(
            "not a homomorphism: {} fails at {:?}",
            v.condition, v.witness
        )));
    }
    Ok(transform(f, &inv, h.psi_l.matrix()))
}

/// Applies `inv` in every argument and `out` on values.
fn transform(f: &Cochain, inv: &Matrix, out: &Matrix) -> Cochain {
    let (s, t) = (f.source_dim(), f.target_dim());
    let k = f.degree() as usize;
    let mut coeffs = f.coeffs().to_vec();
    // new(.., j_a, ..) = Σ_i inv[i][j_a] old(.., i, ..), one mode at a time
    for mode in 0..k {
        let stride = s.pow((k - 1 - mode) as u32) * t;
        let block = stride * s;
        let mut next = zero_vector(coeffs.len());
        for base in (0..coeffs.len()).step_by(block) {
            for j in 0..s {
                for i in 0..s {
                    let a = inv.get(i, j);
                    if a.is_zero() {
                        continue;
                    }
                    for r in 0..stride {
                        let v = &coeffs[base + i * stride + r];
                        if !v.is_zero() {
                            next[base + j * stride + r] += a * v;
                        }
                    }
                }
            }
        }
        coeffs = next;
    }
    let mut result = Vec::with_capacity(coeffs.len());
    for chunk in coeffs.chunks(t) {
        result.extend(out.mul_vec(chunk));
    }
    Cochain::new(f.degree(), s, t, result).expect("shape preserved")
}

/// Straightforward evaluation of `p(ω)` on every basis tuple, for
/// cross-checking [`cochain_map_p`].
pub fn cochain_map_p_naive(h: &RboHomomorphism, f: &Cochain) -> Result<Cochain> {
    let inv = h.psi_lprime.matrix().inverse()?;
    let (s, t) = (f.source_dim(), f.target_dim());
    let k = f.degree() as usize;
    let cols: Vec<Vector> = (0..s).map(|j| inv.column(j)).collect();
    let mut coeffs = Vec::new();
    for args in tuples(k, s) {
        let mut val = zero_vector(t);
        for inner in tuples(k, s) {
            let mut c = Scalar::one();
            for (a, &i) in inner.iter().enumerate() {
                c *= &cols[args[a]][i];
                if c.is_zero() {
                    break;
                }
            }
            if !c.is_zero() {
                add_scaled(&mut val, &c, f.value(&inner));
            }
        }
        coeffs.extend(h.psi_l.apply(&val));
    }
    Cochain::new(f.degree(), s, t, coeffs)
}

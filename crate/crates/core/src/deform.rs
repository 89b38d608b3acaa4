//! Infinitesimal deformations `T_t = T + t𝔗` and their equivalence.

use serde::Serialize;

use crate::cochain::{wedge_pairs, Cochain};
use crate::cohomology::{cohomology_group, delta_t, one_cocycle_check, wedge_bracket, wedge_d};
use crate::error::{ensure_len, Error, Result};
use crate::linalg::{add_scaled, unit_vector, vector_sub, LinearMap, Matrix, Vector};
use crate::rbo::RelativeRbo;
use crate::report::Report;
use crate::scalar::Scalar;

pub const ORDER_T: &str = "order-t";
pub const ORDER_T2: &str = "order-t2";
pub const ORDER_T3: &str = "order-t3";
pub const LINE_1: &str = "equivalence-line-1";
pub const LINE_2: &str = "equivalence-line-2";
pub const STRICT_THETA: &str = "equivalence-theta";
pub const STRICT_D: &str = "equivalence-d";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitesimalDeformation {
    base: RelativeRbo,
    direction: LinearMap,
}

impl InfinitesimalDeformation {
    pub fn new(base: RelativeRbo, direction: LinearMap) -> Result<Self> {
        ensure_len(
            "direction source dimension",
            base.source_dim(),
            direction.source_dim(),
        )?;
        ensure_len(
            "direction target dimension",
            base.dim(),
            direction.target_dim(),
        )?;
        Ok(InfinitesimalDeformation { base, direction })
    }

    pub fn from_cochain(base: RelativeRbo, direction: &Cochain) -> Result<Self> {
        InfinitesimalDeformation::new(base, direction.to_linear_map()?)
    }

    pub fn zero(base: RelativeRbo) -> Self {
        let direction = LinearMap::zero(base.source_dim(), base.dim());
        InfinitesimalDeformation { base, direction }
    }

    pub fn base(&self) -> &RelativeRbo {
        &self.base
    }

    pub fn direction(&self) -> &LinearMap {
        &self.direction
    }

    pub fn direction_cochain(&self) -> Cochain {
        Cochain::from_linear_map(&self.direction)
    }

    /// Failures of the coefficients of `t`, `t²` and `t³` in the defining
    /// identity for `T + t𝔗`:
    ///
    /// ```text
    /// t:  [𝔗u,Tv,Tw] + [Tu,𝔗v,Tw] + [Tu,Tv,𝔗w]
    ///       = T(θ(Tv,𝔗w)u - θ(Tu,𝔗w)v + D(𝔗u,Tv)w + θ(𝔗v,Tw)u - θ(𝔗u,Tw)v + D(Tu,𝔗v)w)
    ///       + 𝔗(D(Tu,Tv)w + θ(Tv,Tw)u - θ(Tu,Tw)v + λ[u,v,w]′)
    /// t²: [𝔗u,𝔗v,Tw] + [Tu,𝔗v,𝔗w] + [𝔗u,Tv,𝔗w]
    ///       = 𝔗(θ(𝔗v,Tw)u - θ(𝔗u,Tw)v + D(Tu,𝔗v)w + θ(Tv,𝔗w)u - θ(Tu,𝔗w)v + D(𝔗u,Tv)w)
    ///       + T(D(𝔗u,𝔗v)w + θ(𝔗v,𝔗w)u - θ(𝔗u,𝔗w)v)
    /// t³: [𝔗u,𝔗v,𝔗w] = 𝔗(D(𝔗u,𝔗v)w - θ(𝔗u,𝔗w)v + θ(𝔗v,𝔗w)u)
    /// ```
    pub fn check(&self) -> Report {
        let b = &self.base;
        let m = b.source_dim();
        let l = b.action().algebra();
        let rep = b.action().rep();
        let (t, g) = (b.t(), &self.direction);
        let one = Scalar::one();
        let minus = Scalar::from_int(-1);
        let mut report = Report::new();
        for u in 0..m {
            for v in 0..m {
                for w in 0..m {
                    let e = |i| unit_vector(m, i);
                    let (eu, ev, ew) = (e(u), e(v), e(w));
                    let (tu, tv, tw) = (
                        t.image_of_basis(u),
                        t.image_of_basis(v),
                        t.image_of_basis(w),
                    );
                    let (gu, gv, gw) = (
                        g.image_of_basis(u),
                        g.image_of_basis(v),
                        g.image_of_basis(w),
                    );

                    let mut r1 = l.br(&gu, &tv, &tw);
                    add_scaled(&mut r1, &one, &l.br(&tu, &gv, &tw));
                    add_scaled(&mut r1, &one, &l.br(&tu, &tv, &gw));
                    let mut a = rep.theta_apply(&tv, &gw, &eu);
                    add_scaled(&mut a, &minus, &rep.theta_apply(&tu, &gw, &ev));
                    add_scaled(&mut a, &one, &rep.d_apply(&gu, &tv, &ew));
                    add_scaled(&mut a, &one, &rep.theta_apply(&gv, &tw, &eu));
                    add_scaled(&mut a, &minus, &rep.theta_apply(&gu, &tw, &ev));
                    add_scaled(&mut a, &one, &rep.d_apply(&tu, &gv, &ew));
                    add_scaled(&mut r1, &minus, &t.apply(&a));
                    let mut c = rep.d_apply(&tu, &tv, &ew);
                    add_scaled(&mut c, &one, &rep.theta_apply(&tv, &tw, &eu));
                    add_scaled(&mut c, &minus, &rep.theta_apply(&tu, &tw, &ev));
                    add_scaled(
                        &mut c,
                        b.weight(),
                        b.action().target().basis_bracket(u, v, w),
                    );
                    add_scaled(&mut r1, &minus, &g.apply(&c));
                    report.check(ORDER_T, &[u, v, w], r1);

                    let mut r2 = l.br(&gu, &gv, &tw);
                    add_scaled(&mut r2, &one, &l.br(&tu, &gv, &gw));
                    add_scaled(&mut r2, &one, &l.br(&gu, &tv, &gw));
                    let mut a = rep.theta_apply(&gv, &tw, &eu);
                    add_scaled(&mut a, &minus, &rep.theta_apply(&gu, &tw, &ev));
                    add_scaled(&mut a, &one, &rep.d_apply(&tu, &gv, &ew));
                    add_scaled(&mut a, &one, &rep.theta_apply(&tv, &gw, &eu));
                    add_scaled(&mut a, &minus, &rep.theta_apply(&tu, &gw, &ev));
                    add_scaled(&mut a, &one, &rep.d_apply(&gu, &tv, &ew));
                    add_scaled(&mut r2, &minus, &g.apply(&a));
                    let mut c = rep.d_apply(&gu, &gv, &ew);
                    add_scaled(&mut c, &one, &rep.theta_apply(&gv, &gw, &eu));
                    add_scaled(&mut c, &minus, &rep.theta_apply(&gu, &gw, &ev));
                    add_scaled(&mut r2, &minus, &t.apply(&c));
                    report.check(ORDER_T2, &[u, v, w], r2);

                    let mut r3 = l.br(&gu, &gv, &gw);
                    let mut c = rep.d_apply(&gu, &gv, &ew);
                    add_scaled(&mut c, &minus, &rep.theta_apply(&gu, &gw, &ev));
                    add_scaled(&mut c, &one, &rep.theta_apply(&gv, &gw, &eu));
                    add_scaled(&mut r3, &minus, &g.apply(&c));
                    report.check(ORDER_T3, &[u, v, w], r3);
                }
            }
        }
        report
    }

    pub fn is_deformation(&self) -> bool {
        self.check().is_empty()
    }

    /// The operator `T + t𝔗` at a concrete value of `t`.
    pub fn at(&self, t: &Scalar) -> RelativeRbo {
        let m = self.base.t().matrix().clone();
        let mut sum = m;
        sum.add_scaled(t, self.direction.matrix());
        self.base.with_map(LinearMap::new(sum)).expect("same shape")
    }
}

/// Whether `𝔗` is a 1-cocycle, and if so the coordinates of its class in
/// the fixed basis of `H¹_T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleClass {
    pub is_cocycle: bool,
    pub coordinates: Option<Vector>,
}

/// Class of the direction in `H¹_T`; an error when it is not a cocycle.
pub fn deformation_cocycle_class(d: &InfinitesimalDeformation) -> Result<Vector> {
    let f = d.direction_cochain();
    if !one_cocycle_check(&d.base, &f)?.is_empty() {
        return Err(Error::NotVerified(
            "the direction is not a 1-cocycle".into(),
        ));
    }
    cohomology_group(&d.base, 1)?.cohomology.class_of(&f)
}

/// Like [`deformation_cocycle_class`] but reports non-cocycles instead of
/// failing.
pub fn cocycle_class(d: &InfinitesimalDeformation) -> Result<CocycleClass> {
    d.base.ensure_rbo()?;
    if !one_cocycle_check(&d.base, &d.direction_cochain())?.is_empty() {
        return Ok(CocycleClass {
            is_cocycle: false,
            coordinates: None,
        });
    }
    Ok(CocycleClass {
        is_cocycle: true,
        coordinates: Some(deformation_cocycle_class(d)?),
    })
}

fn same_base(d1: &InfinitesimalDeformation, d2: &InfinitesimalDeformation) -> Result<()> {
    if d1.base != d2.base {
        return Err(Error::Hypothesis(
            "deformations have different base operators".into(),
        ));
    }
    Ok(())
}

/// Residuals of the two equivalence conditions for basis `u`:
///
/// * `𝔗₁u - 𝔗₂u - (T D(𝔛)u - [𝔛, Tu])`
/// * `[𝔛, 𝔗₁u] - 𝔗₂ D(𝔛)u`
///
/// and, in strict mode, the first-order parts of the compatibility of
/// `(id + t[𝔛,-], id + tD(𝔛))` with `θ` and `D`:
///
/// * `D(𝔛)θ(x,y) - θ([𝔛,x],y) - θ(x,[𝔛,y]) - θ(x,y)D(𝔛)`
/// * the same with `D` in place of `θ`.
pub fn check_equivalence(
    d1: &InfinitesimalDeformation,
    d2: &InfinitesimalDeformation,
    w: &Cochain,
    strict: bool,
) -> Result<Report> {
    let mut report = Report::new();
    for (name, witness, r) in residuals(d1, d2, w, strict)? {
        report.check(name, &witness, r);
    }
    Ok(report)
}

type Residual = (&'static str, Vec<usize>, Vector);

/// All residual blocks in a fixed order; the solver relies on the order and
/// sizes being independent of `w`.
fn residuals(
    d1: &InfinitesimalDeformation,
    d2: &InfinitesimalDeformation,
    w: &Cochain,
    strict: bool,
) -> Result<Vec<Residual>> {
    same_base(d1, d2)?;
    let b = &d1.base;
    let dx = wedge_d(b, w)?;
    let bx = wedge_bracket(b, w)?;
    let delta = delta_t(b, w)?.to_linear_map()?;
    let (n, m) = (b.dim(), b.source_dim());
    let mut out = Vec::new();
    for u in 0..m {
        let lhs = vector_sub(
            &d1.direction.image_of_basis(u),
            &d2.direction.image_of_basis(u),
        );
        out.push((LINE_1, vec![u], vector_sub(&lhs, &delta.image_of_basis(u))));
    }
    for u in 0..m {
        let lhs = bx.mul_vec(&d1.direction.image_of_basis(u));
        let rhs = d2.direction.apply(&dx.column(u));
        out.push((LINE_2, vec![u], vector_sub(&lhs, &rhs)));
    }
    if strict {
        let rep = b.action().rep();
        let compat = |name: &'static str,
                      op: &dyn Fn(&[Scalar], &[Scalar]) -> Matrix,
                      out: &mut Vec<Residual>| {
            for x in 0..n {
                for y in 0..n {
                    let (ex, ey) = (unit_vector(n, x), unit_vector(n, y));
                    let a = op(&ex, &ey);
                    let r = dx
                        .matmul(&a)
                        .sub(&op(&bx.column(x), &ey))
                        .sub(&op(&ex, &bx.column(y)))
                        .sub(&a.matmul(&dx));
                    out.push((name, vec![x, y], r.entries().to_vec()));
                }
            }
        };
        compat(STRICT_THETA, &|x, y| rep.theta(x, y), &mut out);
        compat(STRICT_D, &|x, y| rep.d(x, y), &mut out);
    }
    Ok(out)
}

fn flat_residual(
    d1: &InfinitesimalDeformation,
    d2: &InfinitesimalDeformation,
    w: &Cochain,
    strict: bool,
) -> Result<Vector> {
    Ok(residuals(d1, d2, w, strict)?
        .into_iter()
        .flat_map(|(_, _, r)| r)
        .collect())
}

/// Solves both equivalence conditions (and the strict ones if asked) for
/// the wedge coordinates of `𝔛`. All conditions are affine in `𝔛`, so the
/// system is assembled from the residuals at `𝔛 = 0` and at the unit
/// wedges. The solution is re-checked before it is returned.
pub fn find_equivalence_witness(
    d1: &InfinitesimalDeformation,
    d2: &InfinitesimalDeformation,
    strict: bool,
) -> Result<Option<Cochain>> {
    same_base(d1, d2)?;
    let b = &d1.base;
    let (n, m) = (b.dim(), b.source_dim());
    let k = wedge_pairs(n).len();
    let base = flat_residual(
        d1,
        d2,
        &Cochain::wedge(m, n, vec![Scalar::zero(); k])?,
        strict,
    )?;
    let mut cols = Vec::with_capacity(k);
    for i in 0..k {
        let r = flat_residual(d1, d2, &Cochain::wedge(m, n, unit_vector(k, i))?, strict)?;
        cols.push(vector_sub(&r, &base));
    }
    let rhs: Vector = base.iter().map(|x| -x).collect();
    let solution = if k == 0 {
        rhs.iter().all(Scalar::is_zero).then(Vec::new)
    } else {
        Matrix::from_columns(rhs.len(), &cols)?.solve(&rhs)?
    };
    let Some(c) = solution else {
        return Ok(None);
    };
    let w = Cochain::wedge(m, n, c)?;
    if !check_equivalence(d1, d2, &w, strict)?.is_empty() {
        return Err(Error::NotVerified("solved witness fails the check".into()));
    }
    Ok(Some(w))
}

/// A witness that `d` is equivalent to the zero deformation of its base.
pub fn is_trivial_deformation(
    d: &InfinitesimalDeformation,
    strict: bool,
) -> Result<Option<Cochain>> {
    find_equivalence_witness(d, &InfinitesimalDeformation::zero(d.base.clone()), strict)
}

/// Everything known about one deformation, in the order of the report file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationSummary {
    pub order_t: bool,
    pub order_t2: bool,
    pub order_t3: bool,
    pub cocycle: bool,
    pub class: Option<Vector>,
    pub trivial_witness: Option<Vector>,
}

pub fn summarize(d: &InfinitesimalDeformation, strict: bool) -> Result<DeformationSummary> {
    let report = d.check();
    let class = cocycle_class(d)?;
    let witness = is_trivial_deformation(d, strict)?;
    Ok(DeformationSummary {
        order_t: report.count(ORDER_T) == 0,
        order_t2: report.count(ORDER_T2) == 0,
        order_t3: report.count(ORDER_T3) == 0,
        cocycle: class.is_cocycle,
        class: class.coordinates,
        trivial_witness: witness.map(Cochain::into_coeffs),
    })
}

//! Relative Rota-Baxter operators of weight λ.

use crate::error::{ensure_len, Error, Result};
use crate::linalg::{
    add_scaled, unit_vector, vector_sub, LinearMap, Matrix, SubspaceBasis, Vector,
};
use crate::lts::{HomomorphismCandidate, LieTripleSystem};
use crate::rep::Action;
use crate::report::Report;
use crate::scalar::Scalar;

pub const ROTA_BAXTER: &str = "rota-baxter";
pub const CONSTANT_PART: &str = "rota-baxter-constant-part";
pub const WEIGHT_PART: &str = "rota-baxter-weight-part";

/// `T : 𝔏′ → 𝔏` together with the action of 𝔏 on 𝔏′ and the weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeRbo {
    action: Action,
    weight: Scalar,
    t: LinearMap,
}

impl RelativeRbo {
    pub fn new(action: Action, weight: Scalar, t: LinearMap) -> Result<Self> {
        ensure_len("T source dimension", action.target().dim(), t.source_dim())?;
        ensure_len("T target dimension", action.algebra().dim(), t.target_dim())?;
        Ok(RelativeRbo { action, weight, t })
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn weight(&self) -> &Scalar {
        &self.weight
    }

    pub fn t(&self) -> &LinearMap {
        &self.t
    }

    pub fn with_weight(&self, weight: Scalar) -> Self {
        RelativeRbo {
            weight,
            ..self.clone()
        }
    }

    pub fn with_map(&self, t: LinearMap) -> Result<Self> {
        RelativeRbo::new(self.action.clone(), self.weight.clone(), t)
    }

    /// `dim 𝔏`
    pub fn dim(&self) -> usize {
        self.action.algebra().dim()
    }

    /// `dim 𝔏′`
    pub fn source_dim(&self) -> usize {
        self.action.target().dim()
    }

    /// `[Tu,Tv,Tw] - T(D(Tu,Tv)w - θ(Tu,Tw)v + θ(Tv,Tw)u)` and `T[u,v,w]′`,
    /// the two pieces of the defining identity that are constant and
    /// linear in λ.
    fn split_residual(&self, u: usize, v: usize, w: usize) -> (Vector, Vector) {
        let m = self.source_dim();
        let rep = self.action.rep();
        let (tu, tv, tw) = (
            self.t.image_of_basis(u),
            self.t.image_of_basis(v),
            self.t.image_of_basis(w),
        );
        let (eu, ev, ew) = (unit_vector(m, u), unit_vector(m, v), unit_vector(m, w));
        let lhs = self.action.algebra().br(&tu, &tv, &tw);
        let mut inner = rep.d_apply(&tu, &tv, &ew);
        add_scaled(
            &mut inner,
            &Scalar::from_int(-1),
            &rep.theta_apply(&tu, &tw, &ev),
        );
        add_scaled(&mut inner, &Scalar::one(), &rep.theta_apply(&tv, &tw, &eu));
        let constant = vector_sub(&lhs, &self.t.apply(&inner));
        let weighted = self.t.apply(self.action.target().basis_bracket(u, v, w));
        (constant, weighted)
    }

    /// Failures of
    /// `[Tu,Tv,Tw] = T(D(Tu,Tv)w - θ(Tu,Tw)v + θ(Tv,Tw)u + λ[u,v,w]′)`
    /// on basis triples, in lexicographic order.
    pub fn check(&self) -> Report {
        let m = self.source_dim();
        let mut report = Report::new();
        for u in 0..m {
            for v in 0..m {
                for w in 0..m {
                    let (mut r, weighted) = self.split_residual(u, v, w);
                    add_scaled(&mut r, &-&self.weight, &weighted);
                    report.check(ROTA_BAXTER, &[u, v, w], r);
                }
            }
        }
        report
    }

    /// Checks the identity for every weight at once: the identity is affine
    /// in λ, so the constant part and the coefficient of λ must vanish
    /// separately.
    pub fn check_all_weights(&self) -> Report {
        let m = self.source_dim();
        let mut report = Report::new();
        for u in 0..m {
            for v in 0..m {
                for w in 0..m {
                    let (constant, weighted) = self.split_residual(u, v, w);
                    report.check(CONSTANT_PART, &[u, v, w], constant);
                    report.check(WEIGHT_PART, &[u, v, w], weighted);
                }
            }
        }
        report
    }

    pub fn is_rbo(&self) -> bool {
        self.check().is_empty()
    }

    pub(crate) fn ensure_rbo(&self) -> Result<()> {
        match self.check().first() {
            None => Ok(()),
            Some(v) => Err(Error::NotVerified(format!(
                "T is not a relative Rota-Baxter operator of weight {}: fails at {:?}",
                self.weight, v.witness
            ))),
        }
    }

    /// `Gr(T) = span{T f_i ⊕ f_i}` inside 𝔏 ⊕ 𝔏′.
    pub fn graph(&self) -> SubspaceBasis {
        let vs = (0..self.source_dim())
            .map(|i| {
                let mut v = self.t.image_of_basis(i);
                v.extend(unit_vector(self.source_dim(), i));
                v
            })
            .collect();
        SubspaceBasis::new(self.dim() + self.source_dim(), vs)
            .expect("graph vectors are independent")
    }

    /// Whether the graph is closed in the semidirect product of weight λ.
    /// The action itself is not re-verified here.
    pub fn graph_is_subsystem(&self) -> bool {
        self.action
            .semidirect_product_unchecked(&self.weight)
            .is_subsystem(&self.graph())
            .expect("matching dimensions")
    }

    /// `[u,v,w]_T = D(Tu,Tv)w + θ(Tv,Tw)u - θ(Tu,Tw)v + λ[u,v,w]′`
    pub fn descendent_bracket(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Vector {
        let rep = self.action.rep();
        let (tu, tv, tw) = (self.t.apply(u), self.t.apply(v), self.t.apply(w));
        let mut out = rep.d_apply(&tu, &tv, w);
        add_scaled(&mut out, &Scalar::one(), &rep.theta_apply(&tv, &tw, u));
        add_scaled(
            &mut out,
            &Scalar::from_int(-1),
            &rep.theta_apply(&tu, &tw, v),
        );
        add_scaled(&mut out, &self.weight, &self.action.target().br(u, v, w));
        out
    }

    pub(crate) fn descendent_unchecked(&self) -> LieTripleSystem {
        let m = self.source_dim();
        LieTripleSystem::from_fn(self.action.target().basis_names().to_vec(), |i, j, k| {
            self.descendent_bracket(&unit_vector(m, i), &unit_vector(m, j), &unit_vector(m, k))
        })
        .expect("consistent shapes")
    }

    /// The descendent system `(𝔏′, [·,·,·]_T)`.
    pub fn descendent_lts(&self) -> Result<LieTripleSystem> {
        self.ensure_rbo()?;
        Ok(self.descendent_unchecked())
    }

    /// The lift `(x, u) ↦ (x + Tu, 0)` on 𝔏 ⊕ 𝔏′.
    pub fn nijenhuis_lift(&self) -> LinearMap {
        nijenhuis_lift(&self.t)
    }

    /// Whether the lift is a Nijenhuis operator on the semidirect product
    /// of weight λ.
    pub fn lift_is_nijenhuis(&self) -> bool {
        let sd = self.action.semidirect_product_unchecked(&self.weight);
        nijenhuis_check(&sd, &self.nijenhuis_lift())
            .expect("square lift")
            .is_empty()
    }
}

/// Free form of [`RelativeRbo::check`].
pub fn check_rbo(action: &Action, lambda: &Scalar, t: &LinearMap) -> Result<Report> {
    Ok(RelativeRbo::new(action.clone(), lambda.clone(), t.clone())?.check())
}

/// `T̃ = (id T; 0 0)`
pub fn nijenhuis_lift(t: &LinearMap) -> LinearMap {
    let (n, m) = (t.target_dim(), t.source_dim());
    let mut out = Matrix::zeros(n + m, n + m);
    for i in 0..n {
        out.set(i, i, Scalar::one());
        for j in 0..m {
            out.set(i, n + j, t.matrix().get(i, j).clone());
        }
    }
    LinearMap::new(out)
}

/// Failures of
/// `[Nx,Ny,Nz] = N([Nx,Ny,z] + [x,Ny,Nz] + [Nx,y,Nz])
///             - N²([Nx,y,z] + [x,Ny,z] + [x,y,Nz]) + N³[x,y,z]`
/// on basis triples.
pub fn nijenhuis_check(l: &LieTripleSystem, n: &LinearMap) -> Result<Report> {
    let d = l.dim();
    ensure_len("operator source dimension", d, n.source_dim())?;
    ensure_len("operator target dimension", d, n.target_dim())?;
    let n2 = n.compose(n);
    let n3 = n2.compose(n);
    let e: Vec<Vector> = (0..d).map(|i| unit_vector(d, i)).collect();
    let ne: Vec<Vector> = (0..d).map(|i| n.image_of_basis(i)).collect();
    let mut report = Report::new();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let lhs = l.br(&ne[x], &ne[y], &ne[z]);
                let mut one = l.br(&ne[x], &ne[y], &e[z]);
                add_scaled(&mut one, &Scalar::one(), &l.br(&e[x], &ne[y], &ne[z]));
                add_scaled(&mut one, &Scalar::one(), &l.br(&ne[x], &e[y], &ne[z]));
                let mut two = l.br(&ne[x], &e[y], &e[z]);
                add_scaled(&mut two, &Scalar::one(), &l.br(&e[x], &ne[y], &e[z]));
                add_scaled(&mut two, &Scalar::one(), &l.br(&e[x], &e[y], &ne[z]));
                let mut rhs = n.apply(&one);
                add_scaled(&mut rhs, &Scalar::from_int(-1), &n2.apply(&two));
                add_scaled(
                    &mut rhs,
                    &Scalar::one(),
                    &n3.apply(l.basis_bracket(x, y, z)),
                );
                report.check("nijenhuis", &[x, y, z], vector_sub(&lhs, &rhs));
            }
        }
    }
    Ok(report)
}

/// The projection onto `lprime` along `complement`, which is a relative
/// Rota-Baxter operator of every weight for the adjoint action whenever
/// `lprime` is an abelian subsystem meeting `𝔏¹` trivially.
pub fn projection_rbo(
    l: &LieTripleSystem,
    lprime: &SubspaceBasis,
    complement: &SubspaceBasis,
) -> Result<LinearMap> {
    let d = l.dim();
    ensure_len("subsystem ambient dimension", d, lprime.ambient_dim())?;
    ensure_len("complement ambient dimension", d, complement.ambient_dim())?;
    let action = Action::adjoint(l);
    if !action.verify_all().is_empty() {
        return Err(Error::Hypothesis(
            "the adjoint representation is not an action".into(),
        ));
    }
    if !l.is_abelian_subsystem(lprime)? {
        return Err(Error::Hypothesis("𝔏′ is not an abelian subsystem".into()));
    }
    if l.derived_algebra().intersection_dim(lprime)? != 0 {
        return Err(Error::Hypothesis("𝔏¹ ∩ 𝔏′ ≠ 0".into()));
    }
    if lprime.dim() + complement.dim() != d || lprime.sum(complement)?.dim() != d {
        return Err(Error::Hypothesis("complement ⊕ 𝔏′ ≠ 𝔏".into()));
    }
    let mut cols = lprime.vectors().to_vec();
    cols.extend(complement.vectors().iter().cloned());
    let change = Matrix::from_columns(d, &cols)?.inverse()?;
    // P = B · diag(1,..,1,0,..,0) · B⁻¹
    let mut keep = Matrix::zeros(d, d);
    for i in 0..lprime.dim() {
        keep.set(i, i, Scalar::one());
    }
    let p = Matrix::from_columns(d, &cols)?
        .matmul(&keep)
        .matmul(&change);
    let out = LinearMap::new(p);
    debug_assert!(RelativeRbo::new(action, Scalar::zero(), out.clone())
        .map(|r| r.check_all_weights().is_empty())
        .unwrap_or(false));
    Ok(out)
}

pub const INTERTWINES: &str = "intertwines-T";
pub const THETA_EQUIVARIANT: &str = "theta-equivariant";
pub const D_EQUIVARIANT: &str = "d-equivariant";
pub const HOM_L: &str = "homomorphism-L";
pub const HOM_LPRIME: &str = "homomorphism-L'";

/// A candidate homomorphism `(ψ_𝔏, ψ_𝔏′)` from `from` to `to`.
#[derive(Clone, Debug)]
pub struct RboHomomorphism {
    pub from: RelativeRbo,
    pub to: RelativeRbo,
    pub psi_l: LinearMap,
    pub psi_lprime: LinearMap,
}

impl RboHomomorphism {
    pub fn new(
        from: RelativeRbo,
        to: RelativeRbo,
        psi_l: LinearMap,
        psi_lprime: LinearMap,
    ) -> Result<Self> {
        ensure_len("target 𝔏 dimension", from.dim(), to.dim())?;
        ensure_len("target 𝔏′ dimension", from.source_dim(), to.source_dim())?;
        for (what, m, n) in [
            ("ψ_𝔏", &psi_l, from.dim()),
            ("ψ_𝔏′", &psi_lprime, from.source_dim()),
        ] {
            ensure_len(&format!("{what} source dimension"), n, m.source_dim())?;
            ensure_len(&format!("{what} target dimension"), n, m.target_dim())?;
        }
        if from.weight() != to.weight() {
            return Err(Error::Hypothesis(format!(
                "weights differ: {} and {}",
                from.weight(),
                to.weight()
            )));
        }
        Ok(RboHomomorphism {
            from,
            to,
            psi_l,
            psi_lprime,
        })
    }

    pub fn identity(rbo: &RelativeRbo) -> Self {
        RboHomomorphism {
            from: rbo.clone(),
            to: rbo.clone(),
            psi_l: LinearMap::identity(rbo.dim()),
            psi_lprime: LinearMap::identity(rbo.source_dim()),
        }
    }

    /// Checks
    /// * `ψ_𝔏 T = T′ ψ_𝔏′` (column by column),
    /// * `ψ_𝔏′ θ(x,y)u = θ(ψ_𝔏 x, ψ_𝔏 y) ψ_𝔏′ u`,
    /// * `ψ_𝔏′ D(x,y)u = D(ψ_𝔏 x, ψ_𝔏 y) ψ_𝔏′ u`,
    /// * and that `ψ_𝔏`, `ψ_𝔏′` are homomorphisms of the two systems.
    pub fn check(&self) -> Report {
        let n = self.from.dim();
        let m = self.from.source_dim();
        let mut report = Report::new();
        let lhs = self.psi_l.compose(self.from.t());
        let rhs = self.to.t().compose(&self.psi_lprime);
        let diff = lhs.matrix().sub(rhs.matrix());
        for u in 0..m {
            report.check(INTERTWINES, &[u], diff.column(u));
        }
        let rep = self.from.action().rep();
        let rep_to = self.to.action().rep();
        let px: Vec<Vector> = (0..n).map(|i| self.psi_l.image_of_basis(i)).collect();
        for x in 0..n {
            for y in 0..n {
                let theta = rep_to.theta(&px[x], &px[y]);
                let d = rep_to.d(&px[x], &px[y]);
                for u in 0..m {
                    let pu = self.psi_lprime.image_of_basis(u);
                    let a = self.psi_lprime.apply(&rep.theta_basis(x, y).column(u));
                    report.check(
                        THETA_EQUIVARIANT,
                        &[x, y, u],
                        vector_sub(&a, &theta.mul_vec(&pu)),
                    );
                    let b = self.psi_lprime.apply(&rep.d_basis(x, y).column(u));
                    report.check(D_EQUIVARIANT, &[x, y, u], vector_sub(&b, &d.mul_vec(&pu)));
                }
            }
        }
        for (name, source, target, map) in [
            (
                HOM_L,
                self.from.action().algebra(),
                self.to.action().algebra(),
                &self.psi_l,
            ),
            (
                HOM_LPRIME,
                self.from.action().target(),
                self.to.action().target(),
                &self.psi_lprime,
            ),
        ] {
            let h = HomomorphismCandidate {
                source,
                target,
                map,
            };
            for mut v in h.violations().expect("checked shapes").violations {
                v.condition = name.to_string();
                report.violations.push(v);
            }
        }
        report
    }
}

/// All pairs of diagonal ±1 maps that form a homomorphism from `rbo` to
/// itself, in lexicographic order of the sign patterns (`+` before `-`).
pub fn diagonal_sign_automorphisms(rbo: &RelativeRbo) -> Vec<RboHomomorphism> {
    let (n, m) = (rbo.dim(), rbo.source_dim());
    let diag = |bits: u32, k: usize| {
        let mut mat = Matrix::zeros(k, k);
        for i in 0..k {
            let s = if bits >> (k - 1 - i) & 1 == 1 { -1 } else { 1 };
            mat.set(i, i, Scalar::from_int(s));
        }
        LinearMap::new(mat)
    };
    let mut out = Vec::new();
    for a in 0..1u32 << n {
        for b in 0..1u32 << m {
            let h = RboHomomorphism {
                from: rbo.clone(),
                to: rbo.clone(),
                psi_l: diag(a, n),
                psi_lprime: diag(b, m),
            };
            if h.check().is_empty() {
                out.push(h);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::int_vector;

    fn weights() -> Vec<Scalar> {
        vec![
            Scalar::zero(),
            Scalar::one(),
            Scalar::from_int(-2),
            Scalar::ratio(5, 3),
        ]
    }

    #[test]
    fn projections_are_rbos_of_every_weight() {
        for w in weights() {
            assert!(fixtures::rbo3_p(w.clone()).check().is_empty());
            assert!(fixtures::rbo4_p(w).check().is_empty());
        }
        assert!(fixtures::rbo3_p(Scalar::one())
            .check_all_weights()
            .is_empty());
        assert!(fixtures::rbo4_p(Scalar::one())
            .check_all_weights()
            .is_empty());
    }

    #[test]
    fn zero_map_is_an_rbo_of_every_weight_on_lts3() {
        // T = 0 leaves only T(λ[u,v,w]′) = 0 on the right, so nothing fails
        let a = Action::adjoint(&fixtures::lts3());
        for w in weights() {
            assert!(check_rbo(&a, &w, &LinearMap::zero(3, 3))
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn non_rbo_witnesses_are_lexicographic() {
        let r = fixtures::rbo3_p(Scalar::one())
            .with_map(LinearMap::identity(3))
            .unwrap();
        let report = r.check();
        assert!(!report.is_empty());
        let ws: Vec<_> = report
            .violations
            .iter()
            .map(|v| v.witness.clone())
            .collect();
        let mut sorted = ws.clone();
        sorted.sort();
        assert_eq!(ws, sorted);
        assert!(r.descendent_lts().is_err());
    }

    #[test]
    fn projection_construction() {
        let l3 = fixtures::lts3();
        let p = projection_rbo(
            &l3,
            &SubspaceBasis::from_units(3, &[0]),
            &SubspaceBasis::from_units(3, &[1, 2]),
        )
        .unwrap();
        assert_eq!(p, fixtures::p3());
        let l4 = fixtures::lts4();
        let p = projection_rbo(
            &l4,
            &SubspaceBasis::from_units(4, &[1, 2]),
            &SubspaceBasis::from_units(4, &[0, 3]),
        )
        .unwrap();
        assert_eq!(p, fixtures::p4());
        let err = projection_rbo(
            &l3,
            &SubspaceBasis::from_units(3, &[2]),
            &SubspaceBasis::from_units(3, &[0, 1]),
        )
        .unwrap_err();
        assert_eq!(err, Error::Hypothesis("𝔏¹ ∩ 𝔏′ ≠ 0".into()));
        let err = projection_rbo(
            &l3,
            &SubspaceBasis::from_units(3, &[0]),
            &SubspaceBasis::from_units(3, &[0, 1]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
        let err = projection_rbo(
            &fixtures::so3(),
            &SubspaceBasis::from_units(3, &[0]),
            &SubspaceBasis::from_units(3, &[1, 2]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn oblique_projection() {
        // span{e1 + e3} is abelian and misses 𝔏¹ = span{e3}
        let l3 = fixtures::lts3();
        let p = projection_rbo(
            &l3,
            &SubspaceBasis::new(3, vec![int_vector(&[1, 0, 1])]).unwrap(),
            &SubspaceBasis::from_units(3, &[1, 2]),
        )
        .unwrap();
        let r = RelativeRbo::new(Action::adjoint(&l3), Scalar::one(), p.clone()).unwrap();
        assert!(r.check_all_weights().is_empty());
        assert_eq!(p.apply(&int_vector(&[1, 5, 7])), int_vector(&[1, 0, 1]));
    }

    #[test]
    fn graph_and_lift() {
        let r = fixtures::rbo3_p(Scalar::one());
        let g = r.graph();
        assert_eq!((g.ambient_dim(), g.dim()), (6, 3));
        assert!(r.graph_is_subsystem());
        let lift = r.nijenhuis_lift();
        assert_eq!(lift.compose(&lift), lift);
        assert!(r.lift_is_nijenhuis());
        let z = fixtures::rbo3_p(Scalar::zero())
            .with_map(LinearMap::zero(3, 3))
            .unwrap();
        assert!(z.graph_is_subsystem());
        let zl = z.nijenhuis_lift();
        assert_eq!(zl.compose(&zl), zl);
        assert_eq!(
            zl.apply(&int_vector(&[1, 2, 3, 4, 5, 6])),
            int_vector(&[1, 2, 3, 0, 0, 0])
        );
    }

    #[test]
    fn nijenhuis_trivial_operators() {
        for l in [fixtures::lts3(), fixtures::lts4(), fixtures::so3()] {
            let d = l.dim();
            assert!(nijenhuis_check(&l, &LinearMap::identity(d))
                .unwrap()
                .is_empty());
            assert!(nijenhuis_check(&l, &LinearMap::zero(d, d))
                .unwrap()
                .is_empty());
        }
        assert!(nijenhuis_check(&fixtures::lts3(), &LinearMap::zero(3, 4)).is_err());
    }

    #[test]
    fn descendent_examples() {
        for w in weights() {
            let r = fixtures::rbo3_p(w.clone());
            let desc = r.descendent_lts().unwrap();
            assert!(desc.verify().is_empty());
            let one = Scalar::one() + &w;
            assert_eq!(
                desc.basis_bracket(0, 1, 0),
                &vec![Scalar::zero(), Scalar::zero(), one]
            );
            assert!(crate::lts::is_homomorphism(&desc, r.action().algebra(), r.t()).unwrap());
            let z = r.with_map(LinearMap::zero(3, 3)).unwrap();
            let zd = z.descendent_lts().unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let expect: Vector = fixtures::lts3()
                            .basis_bracket(i, j, k)
                            .iter()
                            .map(|x| x * &w)
                            .collect();
                        assert_eq!(zd.basis_bracket(i, j, k), &expect);
                    }
                }
            }
        }
    }

    #[test]
    fn homomorphisms_of_rbos() {
        let r = fixtures::rbo3_p(Scalar::one());
        assert!(RboHomomorphism::identity(&r).check().is_empty());
        let other = r.with_map(LinearMap::zero(3, 3)).unwrap();
        let h = RboHomomorphism::new(
            r.clone(),
            other,
            LinearMap::identity(3),
            LinearMap::identity(3),
        )
        .unwrap();
        assert!(h.check().count(INTERTWINES) > 0);
        let found = diagonal_sign_automorphisms(&r);
        assert!(found.len() > 1);
        assert!(found.iter().all(|h| h.check().is_empty()));
        let minus = Matrix::from_ints(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(found
            .iter()
            .any(|h| h.psi_l.matrix() == &minus && h.psi_lprime.matrix() == &minus));
    }
}

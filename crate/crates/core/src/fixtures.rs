//! The two worked examples: a 3-dimensional and a 4-dimensional system,
//! each with a projection onto an abelian subsystem that is a relative
//! Rota-Baxter operator of every weight for the adjoint action.

use crate::linalg::{zero_vector, LinearMap, Matrix, Vector};
use crate::lts::{default_basis_names, LieTripleSystem};
use crate::rbo::RelativeRbo;
use crate::rep::Action;
use crate::scalar::Scalar;

/// System whose only nonzero brackets are `[e_a, e_b, e_a] = e_c` and the
/// skew partner `[e_b, e_a, e_a] = -e_c`.
fn single_bracket(dim: usize, a: usize, b: usize, c: usize) -> LieTripleSystem {
    let mut l = LieTripleSystem::abelian(dim);
    let mut v = zero_vector(dim);
    v[c] = Scalar::one();
    l.set_basis_bracket(a, b, a, v.clone()).expect("shape");
    l.set_basis_bracket(b, a, a, v.into_iter().map(|x| -x).collect())
        .expect("shape");
    l
}

/// `[e1, e2, e1] = e3`.
pub fn lts3() -> LieTripleSystem {
    single_bracket(3, 0, 1, 2)
}

/// `[e1, e2, e1] = e4`.
pub fn lts4() -> LieTripleSystem {
    single_bracket(4, 0, 1, 3)
}

/// `so(3)` as a Lie triple system, `[x, y, z] = [[x, y], z]`, which gives
/// `[e_i, e_j, e_k] = δ_ik e_j - δ_jk e_i`. Not nilpotent, so its adjoint
/// representation is not an action.
pub fn so3() -> LieTripleSystem {
    LieTripleSystem::from_fn(default_basis_names(3), |i, j, k| {
        let mut v: Vector = zero_vector(3);
        if i == k {
            v[j] += Scalar::one();
        }
        if j == k {
            v[i] -= Scalar::one();
        }
        v
    })
    .expect("shape")
}

fn projection(dim: usize, onto: &[usize]) -> LinearMap {
    let mut m = Matrix::zeros(dim, dim);
    for &i in onto {
        m.set(i, i, Scalar::one());
    }
    LinearMap::new(m)
}

/// Projection of `lts3` onto `span{e1}` along `span{e2, e3}`.
pub fn p3() -> LinearMap {
    projection(3, &[0])
}

/// Projection of `lts4` onto `span{e2, e3}` along `span{e1, e4}`.
pub fn p4() -> LinearMap {
    projection(4, &[1, 2])
}

pub fn rbo3_p(weight: Scalar) -> RelativeRbo {
    RelativeRbo::new(Action::adjoint(&lts3()), weight, p3()).expect("shapes")
}

pub fn rbo4_p(weight: Scalar) -> RelativeRbo {
    RelativeRbo::new(Action::adjoint(&lts4()), weight, p4()).expect("shapes")
}

/// A bundled example with a short note on where it comes from.
#[derive(Clone, Debug)]
pub struct FixtureInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub note: &'static str,
}

pub fn list() -> Vec<FixtureInfo> {
    vec![
        FixtureInfo {
            name: "lts3",
            kind: "algebra",
            note: "3-dimensional system with [e1,e2,e1]=e3; center span{e3}",
        },
        FixtureInfo {
            name: "lts4",
            kind: "algebra",
            note: "4-dimensional system with [e1,e2,e1]=e4; center span{e3,e4}",
        },
        FixtureInfo {
            name: "rbo3_P",
            kind: "rbo",
            note: "projection onto the abelian subsystem span{e1} of lts3, adjoint action, weight 1",
        },
        FixtureInfo {
            name: "rbo4_P",
            kind: "rbo",
            note: "projection onto the abelian subsystem span{e2,e3} of lts4, adjoint action, weight 1",
        },
    ]
}

/// The bundled example by name, as a file value.
pub fn value(name: &str) -> Option<serde_json::Value> {
    let one = Scalar::one();
    let v = match name {
        "lts3" => crate::io::algebra_to_value(&lts3()),
        "lts4" => crate::io::algebra_to_value(&lts4()),
        "rbo3_P" => crate::io::rbo_to_value(&rbo3_p(one)),
        "rbo4_P" => crate::io::rbo_to_value(&rbo4_p(one)),
        _ => return None,
    };
    Some(v.expect("fixtures are skew"))
}

//! Lie triple systems given by structure constants.
//!
//! A system of dimension `d` stores every basis bracket
//! `[e_i, e_j, e_k] = Σ_l c[i][j][k][l] e_l` explicitly; nothing is inferred
//! from symmetry at this level (the file loader does the skew completion).

use crate::error::{ensure_len, Error, Result};
use crate::linalg::{
    add_scaled, is_zero_vector, unit_vector, vector_sub, zero_vector, LinearMap, Matrix,
    SubspaceBasis, Vector,
};
use crate::report::Report;
use crate::scalar::Scalar;

pub const ALTERNATING: &str = "alternating";
pub const SKEW: &str = "skew";
pub const CYCLIC: &str = "cyclic";
pub const DERIVATION: &str = "derivation";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTripleSystem {
    dim: usize,
    basis_names: Vec<String>,
    brackets: Vec<Vector>,
}

pub fn default_basis_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl LieTripleSystem {
    /// The abelian system (zero bracket) of dimension `dim`.
    pub fn abelian(dim: usize) -> Self {
        LieTripleSystem {
            dim,
            basis_names: default_basis_names(dim),
            brackets: vec![zero_vector(dim); dim * dim * dim],
        }
    }

    /// Builds the system from a full list of basis brackets indexed by
    /// `(i * dim + j) * dim + k`.
    pub fn from_brackets(basis_names: Vec<String>, brackets: Vec<Vector>) -> Result<Self> {
        let dim = basis_names.len();
        ensure_len("number of basis brackets", dim * dim * dim, brackets.len())?;
        for (n, v) in brackets.iter().enumerate() {
            ensure_len(&format!("bracket {n} length"), dim, v.len())?;
        }
        Ok(LieTripleSystem {
            dim,
            basis_names,
            brackets,
        })
    }

    pub fn from_fn(
        basis_names: Vec<String>,
        mut f: impl FnMut(usize, usize, usize) -> Vector,
    ) -> Result<Self> {
        let dim = basis_names.len();
        let mut brackets = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    brackets.push(f(i, j, k));
                }
            }
        }
        LieTripleSystem::from_brackets(basis_names, brackets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        ensure_len("basis names", self.dim, names.len())?;
        self.basis_names = names;
        Ok(self)
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn basis_bracket(&self, i: usize, j: usize, k: usize) -> &Vector {
        &self.brackets[self.index(i, j, k)]
    }

    pub fn set_basis_bracket(&mut self, i: usize, j: usize, k: usize, value: Vector) -> Result<()> {
        ensure_len("bracket value", self.dim, value.len())?;
        let n = self.index(i, j, k);
        self.brackets[n] = value;
        Ok(())
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.basis_bracket(i, j, k)[l]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|v| is_zero_vector(v))
    }

    /// Trilinear extension of the basis brackets.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vector> {
        ensure_len("first argument", self.dim, x.len())?;
        ensure_len("second argument", self.dim, y.len())?;
        ensure_len("third argument", self.dim, z.len())?;
        Ok(self.br(x, y, z))
    }

    pub(crate) fn br(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                    let c = self.basis_bracket(i, j, k);
                    if !is_zero_vector(c) {
                        add_scaled(&mut out, &(&xy * zk), c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `z ↦ [x, y, z]`.
    pub fn left_multiplication(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|k| self.br(x, y, &unit_vector(self.dim, k)))
            .collect();
        Matrix::from_columns(self.dim, &cols).expect("square")
    }

    /// Matrix of `x ↦ [x, y, z]`.
    pub fn right_multiplication(&self, y: &[Scalar], z: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|i| self.br(&unit_vector(self.dim, i), y, z))
            .collect();
        Matrix::from_columns(self.dim, &cols).expect("square")
    }

    /// Checks the three defining identities on basis elements and reports
    /// every failure.
    ///
    /// `[a,a,b] = 0` is quadratic in `a`, so it is checked through its
    /// polarization: `c[i][i][k] = 0` and `c[i][j][k] + c[j][i][k] = 0`.
    /// The cyclic and derivation identities are multilinear, so basis
    /// triples and 5-tuples suffice.
    pub fn verify(&self) -> Report {
        let d = self.dim;
        let mut report = Report::new();
        for i in 0..d {
            for k in 0..d {
                report.check(ALTERNATING, &[i, i, k], self.basis_bracket(i, i, k).clone());
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    let mut s = self.basis_bracket(i, j, k).clone();
                    add_scaled(&mut s, &Scalar::one(), self.basis_bracket(j, i, k));
                    report.check(SKEW, &[i, j, k], s);
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut s = self.basis_bracket(i, j, k).clone();
                    add_scaled(&mut s, &Scalar::one(), self.basis_bracket(j, k, i));
                    add_scaled(&mut s, &Scalar::one(), self.basis_bracket(k, i, j));
                    report.check(CYCLIC, &[i, j, k], s);
                }
            }
        }
        let e: Vec<Vector> = (0..d).map(|i| unit_vector(d, i)).collect();
        for a in 0..d {
            for b in 0..d {
                let ad = self.left_multiplication(&e[a], &e[b]);
                for c in 0..d {
                    let abc = ad.mul_vec(&e[c]);
                    for dd in 0..d {
                        let abd = ad.mul_vec(&e[dd]);
                        for ee in 0..d {
                            let lhs = ad.mul_vec(self.basis_bracket(c, dd, ee));
                            let mut rhs = self.br(&abc, &e[dd], &e[ee]);
                            add_scaled(&mut rhs, &Scalar::one(), &self.br(&e[c], &abd, &e[ee]));
                            let abe = ad.mul_vec(&e[ee]);
                            add_scaled(&mut rhs, &Scalar::one(), &self.br(&e[c], &e[dd], &abe));
                            report.check(DERIVATION, &[a, b, c, dd, ee], vector_sub(&lhs, &rhs));
                        }
                    }
                }
            }
        }
        report
    }

    /// `𝔏¹ = [𝔏, 𝔏, 𝔏]`, the span of all basis brackets.
    pub fn derived_algebra(&self) -> SubspaceBasis {
        SubspaceBasis::span(self.dim, self.brackets.clone()).expect("consistent lengths")
    }

    /// `{x : [x, y, z] = 0 for all y, z}`.
    pub fn center(&self) -> SubspaceBasis {
        let d = self.dim;
        let mut m = Matrix::zeros(d * d * d, d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for (l, c) in self.basis_bracket(i, j, k).iter().enumerate() {
                        m.set((j * d + k) * d + l, i, c.clone());
                    }
                }
            }
        }
        m.kernel_basis()
    }

    fn check_ambient(&self, s: &SubspaceBasis) -> Result<()> {
        ensure_len("subspace ambient dimension", self.dim, s.ambient_dim())
    }

    /// Whether `s` is closed under the bracket.
    pub fn is_subsystem(&self, s: &SubspaceBasis) -> Result<bool> {
        self.check_ambient(s)?;
        let v = s.vectors();
        for x in v {
            for y in v {
                for z in v {
                    if !s.contains(&self.br(x, y, z)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Whether every bracket of elements of `s` vanishes.
    pub fn is_abelian_subsystem(&self, s: &SubspaceBasis) -> Result<bool> {
        self.check_ambient(s)?;
        let v = s.vectors();
        Ok(v.iter().all(|x| {
            v.iter()
                .all(|y| v.iter().all(|z| is_zero_vector(&self.br(x, y, z))))
        }))
    }

    /// The same system written in the basis `f_{perm[i]} = e_i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        ensure_len("permutation length", self.dim, perm.len())?;
        let mut seen = vec![false; self.dim];
        for &p in perm {
            if p >= self.dim || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Shape("not a permutation".into()));
            }
        }
        let mut out = LieTripleSystem::abelian(self.dim);
        for i in 0..self.dim {
            out.basis_names[perm[i]] = self.basis_names[i].clone();
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let src = self.basis_bracket(i, j, k);
                    let mut dst = zero_vector(self.dim);
                    for (l, c) in src.iter().enumerate() {
                        dst[perm[l]] = c.clone();
                    }
                    out.set_basis_bracket(perm[i], perm[j], perm[k], dst)?;
                }
            }
        }
        Ok(out)
    }
}

/// A linear map `source → target` together with the two systems, for
/// homomorphism checks.
#[derive(Clone, Debug)]
pub struct HomomorphismCandidate<'a> {
    pub source: &'a LieTripleSystem,
    pub target: &'a LieTripleSystem,
    pub map: &'a LinearMap,
}

impl HomomorphismCandidate<'_> {
    /// Violations of `h[x,y,z] = [hx,hy,hz]` on basis triples.
    pub fn violations(&self) -> Result<Report> {
        ensure_len(
            "map source dimension",
            self.source.dim(),
            self.map.source_dim(),
        )?;
        ensure_len(
            "map target dimension",
            self.target.dim(),
            self.map.target_dim(),
        )?;
        let d = self.source.dim();
        let images: Vec<Vector> = (0..d).map(|i| self.map.image_of_basis(i)).collect();
        let mut report = Report::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.map.apply(self.source.basis_bracket(i, j, k));
                    let rhs = self.target.br(&images[i], &images[j], &images[k]);
                    report.check("homomorphism", &[i, j, k], vector_sub(&lhs, &rhs));
                }
            }
        }
        Ok(report)
    }

    pub fn is_homomorphism(&self) -> Result<bool> {
        Ok(self.violations()?.is_empty())
    }
}

pub fn is_homomorphism(
    source: &LieTripleSystem,
    target: &LieTripleSystem,
    map: &LinearMap,
) -> Result<bool> {
    HomomorphismCandidate {
        source,
        target,
        map,
    }
    .is_homomorphism()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::int_vector;

    #[test]
    fn fixtures_verify() {
        assert!(fixtures::lts3().verify().is_empty());
        assert!(fixtures::lts4().verify().is_empty());
        assert!(LieTripleSystem::abelian(4).verify().is_empty());
    }

    #[test]
    fn diagonal_entry_reports_alternating_witness() {
        let mut l = LieTripleSystem::abelian(3);
        l.set_basis_bracket(0, 0, 1, int_vector(&[0, 0, 1]))
            .unwrap();
        let r = l.verify();
        let first = r
            .violations
            .iter()
            .find(|v| v.condition == ALTERNATING)
            .unwrap();
        assert_eq!(first.witness, vec![1, 1, 2]);
        assert_eq!(r.count(ALTERNATING), 1);
    }

    #[test]
    fn bracket_examples() {
        let l = fixtures::lts3();
        let e = |i| unit_vector(3, i);
        assert_eq!(
            l.bracket(&e(0), &e(1), &e(0)).unwrap(),
            int_vector(&[0, 0, 1])
        );
        assert_eq!(
            l.bracket(&e(0), &e(0), &e(1)).unwrap(),
            int_vector(&[0, 0, 0])
        );
        assert_eq!(
            l.bracket(&int_vector(&[2, 0, 0]), &e(1), &e(0)).unwrap(),
            int_vector(&[0, 0, 2])
        );
        assert!(l.bracket(&e(0), &e(1), &int_vector(&[1, 0])).is_err());
    }

    #[test]
    fn derived_and_center() {
        let l3 = fixtures::lts3();
        let l4 = fixtures::lts4();
        assert!(l3
            .derived_algebra()
            .same_span(&SubspaceBasis::from_units(3, &[2])));
        assert!(l4
            .derived_algebra()
            .same_span(&SubspaceBasis::from_units(4, &[3])));
        assert!(l3.center().same_span(&SubspaceBasis::from_units(3, &[2])));
        assert!(l4
            .center()
            .same_span(&SubspaceBasis::from_units(4, &[2, 3])));
        let z = LieTripleSystem::abelian(3);
        assert_eq!(z.derived_algebra().dim(), 0);
        assert_eq!(z.center().dim(), 3);
        assert!(l3.center().contains_subspace(&l3.derived_algebra()));
        assert!(l4.center().contains_subspace(&l4.derived_algebra()));
    }

    #[test]
    fn subsystems() {
        let l3 = fixtures::lts3();
        let l4 = fixtures::lts4();
        let s1 = SubspaceBasis::from_units(3, &[0]);
        assert!(l3.is_subsystem(&s1).unwrap());
        assert!(l3.is_abelian_subsystem(&s1).unwrap());
        let s23 = SubspaceBasis::from_units(4, &[1, 2]);
        assert!(l4.is_subsystem(&s23).unwrap());
        assert!(l4.is_abelian_subsystem(&s23).unwrap());
        assert!(!l3
            .is_subsystem(&SubspaceBasis::from_units(3, &[0, 1]))
            .unwrap());
        assert!(!l3.is_abelian_subsystem(&SubspaceBasis::full(3)).unwrap());
        assert!(l3.is_subsystem(&SubspaceBasis::full(4)).is_err());
    }

    #[test]
    fn homomorphisms() {
        let l3 = fixtures::lts3();
        let l4 = fixtures::lts4();
        assert!(is_homomorphism(&l3, &l3, &LinearMap::identity(3)).unwrap());
        assert!(is_homomorphism(&l3, &l4, &LinearMap::zero(3, 4)).unwrap());
        assert!(is_homomorphism(&l4, &l3, &LinearMap::zero(4, 3)).unwrap());
        // e1 ↦ 2e1 scales [e1,e2,e1] by 4 but e3 is fixed
        let m = Matrix::from_ints(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(!is_homomorphism(&l3, &l3, &LinearMap::new(m)).unwrap());
        assert!(is_homomorphism(&l3, &l4, &LinearMap::identity(3)).is_err());
    }

    #[test]
    fn permutation_invariance() {
        let l4 = fixtures::lts4();
        let perm = [2, 0, 3, 1];
        let p = l4.permuted(&perm).unwrap();
        assert!(p.verify().is_empty());
        let map = |s: &SubspaceBasis| {
            let vs = s
                .vectors()
                .iter()
                .map(|v| {
                    let mut w = zero_vector(4);
                    for (i, x) in v.iter().enumerate() {
                        w[perm[i]] = x.clone();
                    }
                    w
                })
                .collect();
            SubspaceBasis::span(4, vs).unwrap()
        };
        assert!(p.center().same_span(&map(&l4.center())));
        assert!(p.derived_algebra().same_span(&map(&l4.derived_algebra())));
        assert_eq!(p.basis_names()[2], "e1");
    }

    #[test]
    fn single_entry_perturbations_are_caught() {
        // Flip one structure constant of lts3 at a time; every flip that is
        // not compensated must produce a report.
        let base = fixtures::lts3();
        let mut caught = 0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let mut p = base.clone();
                        let mut v = p.basis_bracket(i, j, k).clone();
                        v[l] += Scalar::one();
                        p.set_basis_bracket(i, j, k, v).unwrap();
                        // a lone change to c[i][j][k] always breaks skew or
                        // alternation, since its partner c[j][i][k] is untouched
                        assert!(!p.verify().is_empty(), "flip at {:?}", (i, j, k, l));
                        caught += 1;
                    }
                }
            }
        }
        assert_eq!(caught, 81);
    }
}

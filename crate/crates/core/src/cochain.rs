//! Cochains of a Lie triple system with coefficients in a representation,
//! the constrained cochain spaces, and the coboundary.
//!
//! A cochain of degree `k ≥ 1` stores `f(e_{i1}, ..., e_{ik})_l` at
//! `((i1 * s + i2) * s + ... + ik) * t + l` where `s` is the source
//! dimension and `t` the target dimension. Degree `-1` cochains are
//! elements of `𝔏 ∧ 𝔏` in the coordinates `e_i ∧ e_j`, `i < j`.

use crate::error::{ensure_len, Error, Result};
use crate::linalg::{
    add_scaled, is_zero_vector, unit_vector, zero_vector, LinearMap, Matrix, SubspaceBasis, Vector,
};
use crate::rep::Representation;
use crate::scalar::Scalar;

/// Sign on the `D` sum of the coboundary.
///
/// `Verbatim` is `(-1)^{i+1}` as in the displayed coboundary;
/// `Yamaguti` is `(-1)^{n+i}` as used in the functoriality argument.
/// The two agree in degree 1 → 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Verbatim,
    Yamaguti,
}

impl SignConvention {
    pub fn name(self) -> &'static str {
        match self {
            SignConvention::Verbatim => "verbatim",
            SignConvention::Yamaguti => "yamaguti",
        }
    }

    fn d_sign(self, i: usize, n: usize) -> Scalar {
        let e = match self {
            SignConvention::Verbatim => i + 1,
            SignConvention::Yamaguti => n + i,
        };
        Scalar::from_int(if e % 2 == 0 { 1 } else { -1 })
    }
}

/// Pairs `(i, j)` with `i < j`, in the order used for wedge coordinates.
pub fn wedge_pairs(dim: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            out.push((i, j));
        }
    }
    out
}

pub fn wedge_dim(dim: usize) -> usize {
    dim * dim.saturating_sub(1) / 2
}

fn check_degree(degree: i32) -> Result<()> {
    if degree == -1 || (degree >= 1 && degree % 2 == 1) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(degree))
    }
}

/// Number of coefficients of a degree-`degree` cochain.
pub fn ambient_dim(degree: i32, source_dim: usize, target_dim: usize) -> Result<usize> {
    check_degree(degree)?;
    if degree == -1 {
        Ok(wedge_dim(target_dim))
    } else {
        Ok(source_dim.pow(degree as u32) * target_dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: i32,
    source_dim: usize,
    target_dim: usize,
    coeffs: Vector,
}

impl Cochain {
    pub fn new(degree: i32, source_dim: usize, target_dim: usize, coeffs: Vector) -> Result<Self> {
        ensure_len(
            "cochain coefficients",
            ambient_dim(degree, source_dim, target_dim)?,
            coeffs.len(),
        )?;
        Ok(Cochain {
            degree,
            source_dim,
            target_dim,
            coeffs,
        })
    }

    pub fn zero(degree: i32, source_dim: usize, target_dim: usize) -> Result<Self> {
        let n = ambient_dim(degree, source_dim, target_dim)?;
        Cochain::new(degree, source_dim, target_dim, zero_vector(n))
    }

    /// An element `Σ c_ij e_i ∧ e_j` of `𝔏 ∧ 𝔏`; `source_dim` is the
    /// dimension of the space the complex's cochains are defined on.
    pub fn wedge(source_dim: usize, dim: usize, coeffs: Vector) -> Result<Self> {
        Cochain::new(-1, source_dim, dim, coeffs)
    }

    pub fn wedge_basis(source_dim: usize, dim: usize, i: usize, j: usize) -> Result<Self> {
        let pairs = wedge_pairs(dim);
        let (pos, sign) = match pairs.iter().position(|&p| p == (i, j)) {
            Some(p) => (p, Scalar::one()),
            None => match pairs.iter().position(|&p| p == (j, i)) {
                Some(p) => (p, Scalar::from_int(-1)),
                None => return Err(Error::Shape(format!("no wedge e{} ∧ e{}", i + 1, j + 1))),
            },
        };
        let mut c = zero_vector(pairs.len());
        c[pos] = sign;
        Cochain::wedge(source_dim, dim, c)
    }

    /// The degree-1 cochain of a linear map `source → target`.
    pub fn from_linear_map(map: &LinearMap) -> Self {
        let (s, t) = (map.source_dim(), map.target_dim());
        let mut coeffs = Vec::with_capacity(s * t);
        for i in 0..s {
            coeffs.extend(map.image_of_basis(i));
        }
        Cochain {
            degree: 1,
            source_dim: s,
            target_dim: t,
            coeffs,
        }
    }

    pub fn to_linear_map(&self) -> Result<LinearMap> {
        if self.degree != 1 {
            return Err(Error::UnsupportedDegree(self.degree));
        }
        let cols: Vec<Vector> = (0..self.source_dim)
            .map(|i| self.value(&[i]).to_vec())
            .collect();
        Ok(LinearMap::new(Matrix::from_columns(
            self.target_dim,
            &cols,
        )?))
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vector {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }

    fn offset(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len() as i32, self.degree);
        let mut idx = 0;
        for &a in args {
            idx = idx * self.source_dim + a;
        }
        idx * self.target_dim
    }

    /// `f(e_{args[0]}, ..., e_{args[k-1]})`
    pub fn value(&self, args: &[usize]) -> &[Scalar] {
        let o = self.offset(args);
        &self.coeffs[o..o + self.target_dim]
    }

    /// `f` evaluated on basis vectors except at position `pos`, where the
    /// vector `v` is inserted.
    pub fn value_with(&self, args: &[usize], pos: usize, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.target_dim);
        let mut a = args.to_vec();
        for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            a[pos] = k;
            add_scaled(&mut out, c, self.value(&a));
        }
        out
    }

    /// Whether the skew and cyclic conditions on the last three arguments
    /// hold. Always true in degrees -1 and 1.
    pub fn satisfies_constraints(&self) -> bool {
        if self.degree < 3 {
            return true;
        }
        let m = constraint_matrix(self.degree, self.source_dim, self.target_dim);
        is_zero_vector(&m.mul_vec(&self.coeffs))
    }
}

/// All multi-indices of length `k` over `0..s` in lexicographic order.
pub(crate) fn tuples(k: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * s);
        for t in &out {
            for i in 0..s {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Rows expressing `g(x,x,z) = 0`, `g(x,y,z) + g(y,x,z) = 0` and
/// `g(x,y,z) + g(y,z,x) + g(z,x,y) = 0` for a scalar trilinear form `g`
/// on an `s`-dimensional space.
fn three_slot_constraints(s: usize) -> Matrix {
    let idx = |x: usize, y: usize, z: usize| (x * s + y) * s + z;
    let mut rows = Vec::new();
    let one = Scalar::one();
    for x in 0..s {
        for z in 0..s {
            let mut r = zero_vector(s * s * s);
            r[idx(x, x, z)] = one.clone();
            rows.push(r);
        }
    }
    for x in 0..s {
        for y in x + 1..s {
            for z in 0..s {
                let mut r = zero_vector(s * s * s);
                r[idx(x, y, z)] = one.clone();
                r[idx(y, x, z)] = one.clone();
                rows.push(r);
            }
        }
    }
    for x in 0..s {
        for y in 0..s {
            for z in 0..s {
                let mut r = zero_vector(s * s * s);
                r[idx(x, y, z)] += one.clone();
                r[idx(y, z, x)] += one.clone();
                r[idx(z, x, y)] += one.clone();
                rows.push(r);
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, s * s * s);
    }
    Matrix::from_rows(rows).expect("rectangular")
}

/// The constraints for a full cochain: the three-slot constraints applied to
/// every prefix and every target coordinate.
fn constraint_matrix(degree: i32, s: usize, t: usize) -> Matrix {
    let k3 = three_slot_constraints(s);
    let prefixes = s.pow(degree as u32 - 3);
    let cols = prefixes * s * s * s * t;
    let mut m = Matrix::zeros(k3.rows() * prefixes * t, cols);
    for p in 0..prefixes {
        for l in 0..t {
            for r in 0..k3.rows() {
                let row = (p * t + l) * k3.rows() + r;
                for (c, v) in k3.row(r).iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    m.set(row, (p * s * s * s + c) * t + l, v.clone());
                }
            }
        }
    }
    m
}

/// Basis of the trilinear forms satisfying the three-slot constraints.
pub fn three_slot_basis(s: usize) -> SubspaceBasis {
    three_slot_constraints(s).kernel_basis()
}

/// Basis of the constrained cochain space of the given degree, inside the
/// ambient coefficient space.
///
/// Degree 1 and degree -1 are unconstrained. In degree `2n+1 ≥ 3` the
/// constraints only involve the last three arguments, so the space is
/// `prefix ⊗ K ⊗ target` with `K` the three-slot kernel; basis vectors are
/// listed by prefix, then `K`-vector, then target coordinate.
pub fn cochain_space_basis(
    degree: i32,
    source_dim: usize,
    target_dim: usize,
) -> Result<SubspaceBasis> {
    if !matches!(degree, -1 | 1 | 3 | 5) {
        return Err(Error::UnsupportedDegree(degree));
    }
    let n = ambient_dim(degree, source_dim, target_dim)?;
    if degree < 3 {
        return Ok(SubspaceBasis::full(n));
    }
    let s = source_dim;
    let k = three_slot_basis(s);
    let prefixes = s.pow(degree as u32 - 3);
    let mut vectors = Vec::with_capacity(prefixes * k.dim() * target_dim);
    for p in 0..prefixes {
        for kv in k.vectors() {
            for l in 0..target_dim {
                let mut v = zero_vector(n);
                for (c, x) in kv.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    v[(p * s * s * s + c) * target_dim + l] = x.clone();
                }
                vectors.push(v);
            }
        }
    }
    SubspaceBasis::new(n, vectors)
}

/// Coefficients, in the basis of [`cochain_space_basis`], of a cochain that
/// satisfies the constraints.
pub fn constrained_coordinates(f: &Cochain) -> Result<Vector> {
    if f.degree < 3 {
        return Ok(f.coeffs.clone());
    }
    let basis = cochain_space_basis(f.degree, f.source_dim, f.target_dim)?;
    basis
        .coordinates(&f.coeffs)?
        .ok_or_else(|| Error::Shape("cochain violates the skew or cyclic constraints".into()))
}

/// The coboundary `C^{2n-1} → C^{2n+1}` of the representation `rep` of
/// `rep.algebra()`:
///
/// `δf(x_1..x_{2n+1}) = θ(x_{2n},x_{2n+1}) f(x_1..x_{2n-1})
///                    - θ(x_{2n-1},x_{2n+1}) f(x_1..x_{2n-2},x_{2n})
///                    + Σ_i s(i,n) D(x_{2i-1},x_{2i}) f(.., x̂_{2i-1}, x̂_{2i}, ..)
///                    + Σ_i Σ_{j>2i} (-1)^{i+n+1} f(.., x̂_{2i-1}, x̂_{2i}, .., [x_{2i-1},x_{2i},x_j], ..)`
pub struct Coboundary<'a> {
    rep: &'a Representation,
    sign: SignConvention,
    theta: Vec<Matrix>,
    d: Vec<Matrix>,
}

impl<'a> Coboundary<'a> {
    pub fn new(rep: &'a Representation, sign: SignConvention) -> Self {
        let s = rep.algebra().dim();
        let theta = rep.theta_matrices().to_vec();
        let d = (0..s * s).map(|k| rep.d_basis(k / s, k % s)).collect();
        Coboundary {
            rep,
            sign,
            theta,
            d,
        }
    }

    pub fn source_dim(&self) -> usize {
        self.rep.algebra().dim()
    }

    pub fn target_dim(&self) -> usize {
        self.rep.space_dim()
    }

    pub fn apply(&self, f: &Cochain) -> Result<Cochain> {
        let s = self.source_dim();
        let t = self.target_dim();
        if f.degree < 1 {
            return Err(Error::UnsupportedDegree(f.degree));
        }
        ensure_len("cochain source dimension", s, f.source_dim)?;
        ensure_len("cochain target dimension", t, f.target_dim)?;
        let n = (f.degree as usize + 1) / 2;
        let k = 2 * n + 1;
        let lts = self.rep.algebra();
        let minus = Scalar::from_int(-1);
        let insert_sign = |i: usize| {
            if (i + n + 1) % 2 == 0 {
                Scalar::one()
            } else {
                minus.clone()
            }
        };
        let mut coeffs = Vec::with_capacity(s.pow(k as u32) * t);
        for x in tuples(k, s) {
            let mut out = zero_vector(t);
            // x is 0-based here; x[k-1] is x_{2n+1}
            let th = &self.theta[x[k - 2] * s + x[k - 1]];
            add_scaled(&mut out, &Scalar::one(), &th.mul_vec(f.value(&x[..k - 2])));
            let th = &self.theta[x[k - 3] * s + x[k - 1]];
            let mut args: Vec<usize> = x[..k - 3].to_vec();
            args.push(x[k - 2]);
            add_scaled(&mut out, &minus, &th.mul_vec(f.value(&args)));
            for i in 1..=n {
                let (a, b) = (x[2 * i - 2], x[2 * i - 1]);
                let mut rest: Vec<usize> = x[..2 * i - 2].to_vec();
                rest.extend_from_slice(&x[2 * i..]);
                let dm = &self.d[a * s + b];
                if !dm.is_zero() {
                    add_scaled(
                        &mut out,
                        &self.sign.d_sign(i, n),
                        &dm.mul_vec(f.value(&rest)),
                    );
                }
                let sign = insert_sign(i);
                for j in 2 * i + 1..=k {
                    let br = lts.basis_bracket(a, b, x[j - 1]);
                    if is_zero_vector(br) {
                        continue;
                    }
                    // position of x_j once x_{2i-1}, x_{2i} are removed
                    let pos = j - 1 - 2;
                    add_scaled(&mut out, &sign, &f.value_with(&rest, pos, br));
                }
            }
            coeffs.extend(out);
        }
        Cochain::new(k as i32, s, t, coeffs)
    }

    /// Matrix of the coboundary from the span of `basis` (coordinates) to
    /// the ambient space of the next degree.
    pub fn matrix_on(&self, degree: i32, basis: &SubspaceBasis) -> Result<Matrix> {
        let (s, t) = (self.source_dim(), self.target_dim());
        let out_dim = ambient_dim(degree + 2, s, t)?;
        let cols = basis
            .vectors()
            .iter()
            .map(|v| Ok(self.apply(&Cochain::new(degree, s, t, v.clone())?)?.coeffs))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(out_dim, &cols)
    }
}

/// The coboundary of the Yamaguti complex of `rep` with the given sign
/// convention.
pub fn coboundary_yamaguti(
    rep: &Representation,
    f: &Cochain,
    sign: SignConvention,
) -> Result<Cochain> {
    Coboundary::new(rep, sign).apply(f)
}

/// Unit basis cochain of the ambient space.
pub fn unit_cochain(
    degree: i32,
    source_dim: usize,
    target_dim: usize,
    i: usize,
) -> Result<Cochain> {
    let n = ambient_dim(degree, source_dim, target_dim)?;
    Cochain::new(degree, source_dim, target_dim, unit_vector(n, i))
}

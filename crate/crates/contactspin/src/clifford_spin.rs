//! The 4×4 spin representation of the 5-dimensional Clifford algebra.
//!
//! Generators act by the fixed matrices below (anti-Hermitian, satisfying
//! `eᵢeⱼ + eⱼeᵢ = −2δᵢⱼ`); a k-form acts as the sum over its monomials of the
//! ordered matrix product with no `1/k!` factor. Under the action of the
//! fundamental 2-form `F = e₁∧e₂ + e₃∧e₄` — the matrix `diag(2i,−2i,0,0)` —
//! the spinor space splits into the half-spinor lines Σ⁺, Σ⁻ (eigenvalues
//! ±2i, first two basis vectors) and the 2-dimensional kernel Σ² (last two).
//!
//! Everything here is exact: matrices and spinors have Gaussian-rational
//! entries. Floating point appears only where ranks or eigenvalues are
//! inherently numeric, with the pinned tolerance [`KERNEL_TOLERANCE`].

use std::sync::OnceLock;

use nalgebra::{Complex, DMatrix};
use num_traits::{One, ToPrimitive, Zero};

use crate::exterior_core::Form;
use crate::{ratz, CRat, Error, Rat, Result};

/// Singular values below this threshold count as zero when deciding kernel
/// ranks after exact-to-float conversion. The matrices involved have small
/// integer or rational entries, so the gap between "really zero" and the
/// smallest nonzero singular value is many orders of magnitude wider.
pub const KERNEL_TOLERANCE: f64 = 1e-9;

fn c0() -> CRat {
    CRat::new(Rat::zero(), Rat::zero())
}

fn c1() -> CRat {
    CRat::new(Rat::one(), Rat::zero())
}

#[cfg(test)]
fn ci() -> CRat {
    CRat::new(Rat::zero(), Rat::one())
}

fn cr(re: i64) -> CRat {
    CRat::new(ratz(re), Rat::zero())
}

fn cim(im: i64) -> CRat {
    CRat::new(Rat::zero(), ratz(im))
}

/// 4×4 matrix with exact Gaussian-rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordMatrix(pub [[CRat; 4]; 4]);

impl CliffordMatrix {
    /// Zero matrix.
    pub fn zero() -> Self {
        CliffordMatrix(std::array::from_fn(|_| std::array::from_fn(|_| c0())))
    }

    /// Identity matrix.
    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..4 {
            m.0[k][k] = c1();
        }
        m
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &CliffordMatrix) -> CliffordMatrix {
        let mut out = Self::zero();
        for i in 0..4 {
            for k in 0..4 {
                if self.0[i][k].is_zero() {
                    continue;
                }
                for j in 0..4 {
                    if rhs.0[k][j].is_zero() {
                        continue;
                    }
                    out.0[i][j] = out.0[i][j].clone() + self.0[i][k].clone() * rhs.0[k][j].clone();
                }
            }
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &CliffordMatrix) -> CliffordMatrix {
        let mut out = self.clone();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = out.0[i][j].clone() + rhs.0[i][j].clone();
            }
        }
        out
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &CliffordMatrix) -> CliffordMatrix {
        let mut out = self.clone();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = out.0[i][j].clone() - rhs.0[i][j].clone();
            }
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &CRat) -> CliffordMatrix {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[i][j].clone() * s.clone();
            }
        }
        out
    }

    /// Whether every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|row| row.iter().all(|e| e.is_zero()))
    }

    /// Apply to a spinor.
    pub fn apply(&self, psi: &Spinor) -> Spinor {
        let mut out = Spinor::zero();
        for i in 0..4 {
            for j in 0..4 {
                if !self.0[i][j].is_zero() && !psi.c[j].is_zero() {
                    out.c[i] = out.c[i].clone() + self.0[i][j].clone() * psi.c[j].clone();
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn hermitian_transpose(&self) -> CliffordMatrix {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    /// Double-precision copy.
    pub fn to_f64(&self) -> DMatrix<Complex<f64>> {
        DMatrix::from_fn(4, 4, |i, j| {
            Complex::new(
                self.0[i][j].re.to_f64().expect("rational fits in f64"),
                self.0[i][j].im.to_f64().expect("rational fits in f64"),
            )
        })
    }
}

/// Spinor in the fixed 4-dimensional representation basis, with exact
/// Gaussian-rational components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spinor {
    pub c: [CRat; 4],
}

impl Spinor {
    /// The zero spinor.
    pub fn zero() -> Self {
        Spinor { c: std::array::from_fn(|_| c0()) }
    }

    /// Standard basis spinor `k = 0..=3`.
    pub fn basis(k: usize) -> Self {
        let mut s = Self::zero();
        s.c[k] = c1();
        s
    }

    /// Spinor with the given exact components.
    pub fn new(c: [CRat; 4]) -> Self {
        Spinor { c }
    }

    /// Lossless import of double-precision components (every f64 is an exact
    /// dyadic rational).
    pub fn from_f64(c: [Complex<f64>; 4]) -> Self {
        Spinor {
            c: c.map(|z| {
                CRat::new(
                    Rat::from_float(z.re).expect("finite component"),
                    Rat::from_float(z.im).expect("finite component"),
                )
            }),
        }
    }

    /// Double-precision view.
    pub fn to_f64(&self) -> [Complex<f64>; 4] {
        std::array::from_fn(|k| {
            Complex::new(
                self.c[k].re.to_f64().expect("rational fits in f64"),
                self.c[k].im.to_f64().expect("rational fits in f64"),
            )
        })
    }

    /// Whether all components vanish.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|z| z.is_zero())
    }

    /// Exact squared Hermitian norm.
    pub fn norm_sq(&self) -> Rat {
        self.c
            .iter()
            .map(|z| &z.re * &z.re + &z.im * &z.im)
            .fold(Rat::zero(), |acc, t| acc + t)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &CRat) -> Spinor {
        Spinor { c: std::array::from_fn(|k| self.c[k].clone() * s.clone()) }
    }

    /// Componentwise sum.
    pub fn add(&self, rhs: &Spinor) -> Spinor {
        Spinor { c: std::array::from_fn(|k| self.c[k].clone() + rhs.c[k].clone()) }
    }

    /// Componentwise difference.
    pub fn sub(&self, rhs: &Spinor) -> Spinor {
        Spinor { c: std::array::from_fn(|k| self.c[k].clone() - rhs.c[k].clone()) }
    }

    /// JSON representation: array of `[re, im]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let pairs: Vec<[f64; 2]> = self.to_f64().iter().map(|z| [z.re, z.im]).collect();
        serde_json::json!(pairs)
    }
}

/// The three invariant subbundles of the spinor space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubbundleTag {
    /// +2i eigenline of the fundamental-form action.
    SigmaPlus,
    /// −2i eigenline.
    SigmaMinus,
    /// 2-dimensional kernel of the fundamental-form action.
    Sigma2,
}

impl SubbundleTag {
    /// Indices of the standard basis spinors spanning the bundle.
    pub fn basis_indices(self) -> &'static [usize] {
        match self {
            SubbundleTag::SigmaPlus => &[0],
            SubbundleTag::SigmaMinus => &[1],
            SubbundleTag::Sigma2 => &[2, 3],
        }
    }

    /// Orthonormal basis of the bundle.
    pub fn basis(self) -> Vec<Spinor> {
        self.basis_indices().iter().map(|&k| Spinor::basis(k)).collect()
    }
}

/// Lie subalgebras of so(5) distinguished by the structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieAlgebra {
    /// Stabilizer of the splitting: x₁₄+x₂₃ = 0, x₁₃−x₂₄ = 0, x_{i5} = 0.
    U2,
    /// Adds the trace condition x₁₂+x₃₄ = 0.
    Su2,
    /// Multiples of F: x₁₂ = x₃₄, every other component zero.
    U1Diag,
}

/// The five generator matrices (built once, verified once).
pub fn generators() -> &'static [CliffordMatrix; 5] {
    static GEN: OnceLock<[CliffordMatrix; 5]> = OnceLock::new();
    GEN.get_or_init(|| {
        let z = || c0();
        let e1 = CliffordMatrix([
            [z(), z(), z(), cim(1)],
            [z(), z(), cim(1), z()],
            [z(), cim(1), z(), z()],
            [cim(1), z(), z(), z()],
        ]);
        let e2 = CliffordMatrix([
            [z(), z(), z(), cr(-1)],
            [z(), z(), cr(1), z()],
            [z(), cr(-1), z(), z()],
            [cr(1), z(), z(), z()],
        ]);
        let e3 = CliffordMatrix([
            [z(), z(), cim(-1), z()],
            [z(), z(), z(), cim(1)],
            [cim(-1), z(), z(), z()],
            [z(), cim(1), z(), z()],
        ]);
        let e4 = CliffordMatrix([
            [z(), z(), cr(1), z()],
            [z(), z(), z(), cr(1)],
            [cr(-1), z(), z(), z()],
            [z(), cr(-1), z(), z()],
        ]);
        let mut e5 = CliffordMatrix::zero();
        e5.0[0][0] = cim(1);
        e5.0[1][1] = cim(1);
        e5.0[2][2] = cim(-1);
        e5.0[3][3] = cim(-1);
        let gens = [e1, e2, e3, e4, e5];
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                let anti = a.mul(b).add(&b.mul(a));
                let expected =
                    if i == j { CliffordMatrix::identity().scale(&cr(-2)) } else { CliffordMatrix::zero() };
                assert!(
                    anti == expected,
                    "generator matrices must satisfy the Clifford relations at pair ({},{})",
                    i + 1,
                    j + 1
                );
            }
        }
        gens
    })
}

/// Clifford action matrix of a form over `span(e1..e5)`: for each monomial,
/// the ordered product of generator matrices times the coefficient.
pub fn action_matrix(w: &Form) -> Result<CliffordMatrix> {
    if w.uses_auxiliary() {
        return Err(Error::AuxiliaryComponent { context: "Clifford action" });
    }
    let gens = generators();
    let mut out = CliffordMatrix::zero();
    for (idx, coeff) in w.iter() {
        let mut prod = CliffordMatrix::identity();
        for i in idx.indices() {
            prod = prod.mul(&gens[(i - 1) as usize]);
        }
        out = out.add(&prod.scale(&CRat::new(coeff.clone(), Rat::zero())));
    }
    Ok(out)
}

/// Clifford action of a form on a spinor.
pub fn clifford_action(w: &Form, psi: &Spinor) -> Result<Spinor> {
    Ok(action_matrix(w)?.apply(psi))
}

/// Orthogonal projectors onto Σ⁺, Σ⁻, Σ², in that order. They sum to the
/// identity and commute with the fundamental-form action.
pub fn subbundle_projectors() -> [CliffordMatrix; 3] {
    let mut p_plus = CliffordMatrix::zero();
    p_plus.0[0][0] = c1();
    let mut p_minus = CliffordMatrix::zero();
    p_minus.0[1][1] = c1();
    let mut p_two = CliffordMatrix::zero();
    p_two.0[2][2] = c1();
    p_two.0[3][3] = c1();
    [p_plus, p_minus, p_two]
}

/// Test membership of a 2-form in one of the distinguished Lie algebras by
/// its linear coefficient conditions.
pub fn lie_algebra_membership(w: &Form, algebra: LieAlgebra) -> Result<bool> {
    if w.uses_auxiliary() {
        return Err(Error::AuxiliaryComponent { context: "Lie-algebra membership" });
    }
    if !w.is_zero() && w.pure_degree() != Some(2) {
        return Err(Error::MixedDegree);
    }
    let x = |i: u8, j: u8| w.coeff(&[i, j]);
    let in_u2 = (x(1, 4) + x(2, 3)).is_zero()
        && (x(1, 3) - x(2, 4)).is_zero()
        && (1..=4u8).all(|i| x(i, 5).is_zero());
    Ok(match algebra {
        LieAlgebra::U2 => in_u2,
        LieAlgebra::Su2 => in_u2 && (x(1, 2) + x(3, 4)).is_zero(),
        LieAlgebra::U1Diag => {
            x(1, 2) == x(3, 4)
                && [(1u8, 3u8), (1, 4), (2, 3), (2, 4)].iter().all(|&(i, j)| x(i, j).is_zero())
                && (1..=4u8).all(|i| x(i, 5).is_zero())
        }
    })
}

fn restricted_action_f64(w: &Form, bundle: SubbundleTag) -> Result<DMatrix<Complex<f64>>> {
    let m = action_matrix(w)?.to_f64();
    let idx = bundle.basis_indices();
    Ok(DMatrix::from_fn(4, idx.len(), |r, c| m[(r, idx[c])]))
}

/// Orthonormal basis of `{ψ in the bundle : w·ψ = 0}`, with rank decided by
/// singular values against [`KERNEL_TOLERANCE`].
pub fn annihilator_kernel(w: &Form, bundle: SubbundleTag) -> Result<Vec<Spinor>> {
    let idx = bundle.basis_indices();
    let restricted = restricted_action_f64(w, bundle)?;
    let svd = restricted.svd(false, true);
    let v_t = svd.v_t.expect("svd requested v_t");
    let mut basis = Vec::new();
    for (k, sigma) in svd.singular_values.iter().enumerate() {
        if *sigma <= KERNEL_TOLERANCE {
            basis.push(kernel_vector(&v_t, k, idx));
        }
    }
    // singular values only cover min(4, cols); any remaining rows of V^T are
    // exact null directions of the restriction
    for k in svd.singular_values.len()..idx.len() {
        basis.push(kernel_vector(&v_t, k, idx));
    }
    Ok(basis)
}

fn kernel_vector(v_t: &DMatrix<Complex<f64>>, row: usize, idx: &[usize]) -> Spinor {
    let mut c = [Complex::new(0.0, 0.0); 4];
    for (col, &i) in idx.iter().enumerate() {
        c[i] = v_t[(row, col)].conj();
    }
    Spinor::from_f64(c)
}

/// Exact variant of [`annihilator_kernel`]: Gaussian elimination over the
/// Gaussian rationals, no tolerance involved. The basis is exact but not
/// normalized.
#[allow(clippy::needless_range_loop)] // elimination loops index several rows at once
pub fn annihilator_kernel_exact(w: &Form, bundle: SubbundleTag) -> Result<Vec<Spinor>> {
    let m = action_matrix(w)?;
    let idx = bundle.basis_indices();
    // restricted matrix: 4 rows, one column per bundle basis vector
    let mut rows: Vec<Vec<CRat>> =
        (0..4).map(|r| idx.iter().map(|&i| m.0[r][i].clone()).collect()).collect();
    let cols = idx.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..4).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = c1() / rows[rank][col].clone();
        for c in 0..cols {
            rows[rank][c] = rows[rank][c].clone() * inv.clone();
        }
        for r in 0..4 {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..cols {
                    rows[r][c] = rows[r][c].clone() - factor.clone() * rows[rank][c].clone();
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut x = vec![c0(); cols];
        x[free] = c1();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = -rows[r][free].clone();
        }
        let mut s = Spinor::zero();
        for (col, &i) in idx.iter().enumerate() {
            s.c[i] = x[col].clone();
        }
        basis.push(s);
    }
    Ok(basis)
}

/// Subbundle annihilation conditions of a φ-invariant 2-form `dη`, decided
/// both by coefficient conditions and by the kernel computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetaConditions {
    /// `dη` acts as zero on Σ² (⇔ dη ∝ F).
    pub annihilates_sigma2: bool,
    /// `dη` acts as zero on both half-spinor lines (⇔ a = −d).
    pub annihilates_sigma_pm: bool,
}

/// Whether a 2-form has the φ-invariant shape `dη(φX, φY) = dη(X, Y)`:
/// no `eᵢ∧e₅` components, `x₁₄+x₂₃ = 0`, `x₁₃−x₂₄ = 0`.
pub fn is_phi_invariant_two_form(w: &Form) -> bool {
    !w.uses_auxiliary()
        && (w.is_zero() || w.pure_degree() == Some(2))
        && lie_algebra_membership(w, LieAlgebra::U2).unwrap_or(false)
}

/// Evaluate the annihilation conditions of `dη` on the subbundles.
pub fn deta_conditions(deta: &Form) -> Result<DetaConditions> {
    if !is_phi_invariant_two_form(deta) {
        return Err(Error::InvalidDefinition(
            "deta must be a phi-invariant 2-form over e1..e5".into(),
        ));
    }
    let a = deta.coeff(&[1, 2]);
    let d = deta.coeff(&[3, 4]);
    let b = deta.coeff(&[1, 3]);
    let c = deta.coeff(&[1, 4]);
    let by_coeff_sigma2 = a == d && b.is_zero() && c.is_zero();
    let by_coeff_pm = (a + d).is_zero();
    let m = action_matrix(deta)?;
    let acts_zero = |bundle: SubbundleTag| {
        bundle.basis().iter().all(|psi| m.apply(psi).is_zero())
    };
    let by_kernel_sigma2 = acts_zero(SubbundleTag::Sigma2);
    let by_kernel_pm = acts_zero(SubbundleTag::SigmaPlus) && acts_zero(SubbundleTag::SigmaMinus);
    assert_eq!(by_coeff_sigma2, by_kernel_sigma2, "coefficient and kernel routes must agree on Sigma2");
    assert_eq!(by_coeff_pm, by_kernel_pm, "coefficient and kernel routes must agree on Sigma+-");
    Ok(DetaConditions { annihilates_sigma2: by_coeff_sigma2, annihilates_sigma_pm: by_coeff_pm })
}

/// Lie-derivative obstruction of a spinor along the Reeb field:
/// `L_ξ ψ = −½ · dη · ψ`.
pub fn lie_derivative_obstruction(deta: &Form, psi: &Spinor) -> Result<Spinor> {
    if !deta.is_zero() && deta.pure_degree() != Some(2) {
        return Err(Error::MixedDegree);
    }
    let half = CRat::new(crate::rat(-1, 2), Rat::zero());
    Ok(action_matrix(deta)?.scale(&half).apply(psi))
}

/// The 1-form `df ∘ φ` in the adapted frame.
pub fn compose_with_phi(df: &Form) -> Form {
    // phi(e1) = -e2, phi(e2) = e1, phi(e3) = -e4, phi(e4) = e3, phi(e5) = 0
    let n = df.coframe_size();
    let mut out = Form::zero(n);
    let pairs: [(u8, u8, i64); 4] = [(1, 2, -1), (2, 1, 1), (3, 4, -1), (4, 3, 1)];
    for (slot, src, sign) in pairs {
        let c = df.coeff(&[src]);
        if !c.is_zero() {
            out = &out + &Form::monomial(n, &[slot], c * ratz(sign)).expect("slot in range");
        }
    }
    out
}

/// Verify the two dimension-five endomorphism identities
/// `2·X⌟(df∘φ)∧F · ψ = (df·X − X·df) · ψ` on Σ^± and its sign-flip on Σ²,
/// for all `X ∈ {e1..e4}`, as exact matrix identities.
pub fn verify_dim5_identities(df: &Form) -> Result<bool> {
    if !df.coeff(&[5]).is_zero() {
        return Err(Error::ReebComponent { context: "dimension-five identities" });
    }
    if !df.is_zero() && df.pure_degree() != Some(1) {
        return Err(Error::MixedDegree);
    }
    let n = df.coframe_size();
    let f = fundamental_two_form(n);
    let dfphi_f = compose_with_phi(df).wedge(&f)?;
    let m_df = action_matrix(df)?;
    for x in 1..=4u8 {
        let lhs = action_matrix(
            &dfphi_f.interior(crate::exterior_core::FrameVector::new(x))?.scaled_int(2),
        )?;
        let m_x = action_matrix(&Form::generator(n, x)?)?;
        let rhs = m_df.mul(&m_x).sub(&m_x.mul(&m_df));
        let diff_pm = lhs.sub(&rhs);
        let diff_s2 = lhs.add(&rhs);
        for psi in
            SubbundleTag::SigmaPlus.basis().iter().chain(SubbundleTag::SigmaMinus.basis().iter())
        {
            if !diff_pm.apply(psi).is_zero() {
                return Ok(false);
            }
        }
        for psi in SubbundleTag::Sigma2.basis() {
            if !diff_s2.apply(&psi).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The fundamental 2-form `F = e₁∧e₂ + e₃∧e₄` over a coframe of size `n`.
pub fn fundamental_two_form(n: u8) -> Form {
    let e12 = Form::monomial(n, &[1, 2], ratz(1)).expect("indices in range");
    let e34 = Form::monomial(n, &[3, 4], ratz(1)).expect("indices in range");
    &e12 + &e34
}

/// Eigenvalues of the compressed Clifford action of a 3-form on a subbundle,
/// sorted ascending. Real-coefficient 3-forms act Hermitian, so the
/// compression is Hermitian and the spectrum real.
pub fn torsion_spectrum(t: &Form, bundle: SubbundleTag) -> Result<Vec<f64>> {
    if !t.is_zero() && t.pure_degree() != Some(3) {
        return Err(Error::MixedDegree);
    }
    let m = action_matrix(t)?.to_f64();
    let idx = bundle.basis_indices();
    let k = idx.len();
    let compressed = DMatrix::from_fn(k, k, |r, c| m[(idx[r], idx[c])]);
    let mut eig: Vec<f64> = match k {
        1 => vec![compressed[(0, 0)].re],
        2 => {
            let tr = compressed[(0, 0)].re + compressed[(1, 1)].re;
            let det = (compressed[(0, 0)] * compressed[(1, 1)]
                - compressed[(0, 1)] * compressed[(1, 0)])
                .re;
            let disc = (tr / 2.0) * (tr / 2.0) - det;
            let root = disc.max(0.0).sqrt();
            vec![tr / 2.0 - root, tr / 2.0 + root]
        }
        _ => unreachable!("subbundles have dimension 1 or 2"),
    };
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eig)
}

/// Exact scalar action of a form on a 1-dimensional subbundle, if the bundle
/// is preserved: returns `None` when the action leaves the line.
pub fn scalar_action_on_line(w: &Form, bundle: SubbundleTag) -> Result<Option<CRat>> {
    let idx = bundle.basis_indices();
    if idx.len() != 1 {
        return Err(Error::Unsupported("scalar action only defined on the half-spinor lines"));
    }
    let m = action_matrix(w)?;
    let k = idx[0];
    for r in 0..4 {
        if r != k && !m.0[r][k].is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(m.0[k][k].clone()))
}

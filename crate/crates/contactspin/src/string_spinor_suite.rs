//! Parallel-spinor solver, dilation-equation analysis, special conformal
//! transformations, and the end-to-end verification battery for invariant
//! five-dimensional structures with torsion.
//!
//! Parallel spinors are found as joint kernels of the connection-form spin
//! lifts taken over every coframe component (including the auxiliary
//! generator), which is exact for constant spinors in an adapted frame and
//! never needs pointwise values of the auxiliary form.  The curvature
//! operators give an independent kernel computation that is reported side by
//! side; the two routes agree on every builtin model and that agreement is
//! asserted, but no claim is made beyond the invariant setting.
//!
//! When the auxiliary curvature vanishes the auxiliary form is pure gauge, so
//! the solver first substitutes it away; this is what exposes the full
//! parallel-spinor space of the degenerate (flat) models.

use crate::clifford_spin::{
    action_matrix, annihilator_kernel, clifford_action, compose_with_phi, fundamental_two_form,
    scalar_action_on_line, CliffordMatrix, Spinor, SubbundleTag,
};
use crate::coframe_models::{make_builtin, BuiltinModel, FrameChange, StructureDefinition};
use crate::connection_curvature::{
    parallel_spinor_obstruction, torsion_connection_forms, torsion_curvature,
    verify_curvature_structure,
};
use crate::contact_structures::{
    classify, codifferential, fundamental_form, killing_test, lee_form, nijenhuis, reeb_form,
    torsion_form,
};
use crate::exterior_core::{Form, HodgeMode};
use crate::{rat, ratz, CRat, Error, Rat, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Exact basis of a space of constant spinor fields inside one subbundle.
///
/// The basis vectors are pairwise orthogonal with exact rational
/// coefficients; exact normalization is generally impossible over the
/// rationals, so unit length is only guaranteed for the floating-point copies
/// returned by [`SpinorFieldBasis::orthonormal_f64`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinorFieldBasis {
    /// Subbundle the fields live in.
    pub bundle: SubbundleTag,
    /// Pairwise-orthogonal exact basis (possibly empty).
    pub basis: Vec<Spinor>,
}

impl SpinorFieldBasis {
    /// Number of independent fields.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Exact pairwise orthogonality of the stored basis.
    pub fn is_orthogonal(&self) -> bool {
        (0..self.basis.len()).all(|i| {
            (i + 1..self.basis.len()).all(|j| inner(&self.basis[i], &self.basis[j]).is_zero())
        })
    }

    /// Unit-normalized floating-point copies of the basis.
    pub fn orthonormal_f64(&self) -> Vec<[num_complex::Complex<f64>; 4]> {
        self.basis
            .iter()
            .map(|psi| {
                let c = psi.to_f64();
                let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                c.map(|z| z / norm)
            })
            .collect()
    }

    /// Whether the normalized copies form an orthonormal set within `tol`.
    pub fn is_orthonormal_f64(&self, tol: f64) -> bool {
        let v = self.orthonormal_f64();
        (0..v.len()).all(|i| {
            (0..v.len()).all(|j| {
                let g: num_complex::Complex<f64> =
                    (0..4).map(|k| v[i][k].conj() * v[j][k]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                (g.re - expected).abs() <= tol && g.im.abs() <= tol
            })
        })
    }
}

/// Hermitian inner product of two exact spinors.
fn inner(a: &Spinor, b: &Spinor) -> CRat {
    let mut acc = CRat::zero();
    for k in 0..4 {
        let conj = CRat::new(a.c[k].re.clone(), -a.c[k].im.clone());
        acc += conj * b.c[k].clone();
    }
    acc
}

/// Spin lifts of the canonical-connection forms, one Clifford matrix per
/// coframe component: `L_μ = ½ Σ_{i<j} ω̃_ij(component μ)·e_i·e_j`.
///
/// A constant spinor is parallel exactly when every lift annihilates it.
pub fn spin_lifts(def: &StructureDefinition) -> Result<Vec<CliffordMatrix>> {
    let t = torsion_form(def)?;
    let forms = torsion_connection_forms(def, &t)?;
    let half = CRat::new(rat(1, 2), Rat::zero());
    let mut lifts = Vec::with_capacity(def.n() as usize);
    for mu in 1..=def.n() {
        let mut plane = Form::zero(5);
        for i in 1..=5u8 {
            for j in (i + 1)..=5u8 {
                let c = forms.get(i, j).coeff(&[mu]);
                if !c.is_zero() {
                    plane = &plane + &Form::monomial(5, &[i, j], c)?;
                }
            }
        }
        lifts.push(action_matrix(&plane)?.scale(&half));
    }
    Ok(lifts)
}

/// Exact joint kernel of a family of matrices restricted to the given spinor
/// coordinates, returned as a pairwise-orthogonal basis.
#[allow(clippy::needless_range_loop)] // elimination loops index several rows at once
fn joint_kernel(mats: &[CliffordMatrix], coords: &[usize]) -> Vec<Spinor> {
    let cols = coords.len();
    let mut rows: Vec<Vec<CRat>> = Vec::new();
    for m in mats {
        for r in 0..4 {
            let row: Vec<CRat> = coords.iter().map(|&c| m.0[r][c].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    // reduced row echelon form over the Gaussian rationals
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = CRat::one() / rows[rank][col].clone();
        for c in 0..cols {
            rows[rank][c] = rows[rank][c].clone() * inv.clone();
        }
        for r in 0..rows.len() {
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
    let mut basis: Vec<Vec<CRat>> = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut x = vec![CRat::zero(); cols];
        x[free] = CRat::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = -rows[r][free].clone();
        }
        basis.push(x);
    }
    // exact Gram–Schmidt (orthogonal, not normalized)
    for i in 1..basis.len() {
        for j in 0..i {
            let denom: CRat = basis[j]
                .iter()
                .map(|z| CRat::new(z.re.clone(), -z.im.clone()) * z.clone())
                .fold(CRat::zero(), |a, b| a + b);
            let cross: CRat = basis[j]
                .iter()
                .zip(basis[i].iter())
                .map(|(a, b)| CRat::new(a.re.clone(), -a.im.clone()) * b.clone())
                .fold(CRat::zero(), |a, b| a + b);
            if denom.is_zero() {
                continue;
            }
            let coeff = cross / denom;
            for k in 0..cols {
                let sub = coeff.clone() * basis[j][k].clone();
                basis[i][k] = basis[i][k].clone() - sub;
            }
        }
    }
    basis
        .into_iter()
        .map(|x| {
            let mut s = Spinor::zero();
            for (col, &i) in coords.iter().enumerate() {
                s.c[i] = x[col].clone();
            }
            s
        })
        .collect()
}

/// Parallel-spinor spaces of the canonical connection, per subbundle, plus
/// the independent curvature-kernel dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelSpinorData {
    /// The definition the spin lifts were taken from (gauge-reduced when the
    /// auxiliary curvature vanishes).
    pub definition: StructureDefinition,
    /// Whether the auxiliary form was substituted away before lifting.
    pub gauge_reduced: bool,
    /// Parallel fields in the first half-spinor line.
    pub sigma_plus: SpinorFieldBasis,
    /// Parallel fields in the second half-spinor line.
    pub sigma_minus: SpinorFieldBasis,
    /// Parallel fields in the plane annihilated by the fundamental form.
    pub sigma2: SpinorFieldBasis,
    /// Dimension of the unrestricted joint kernel.
    pub total_dimension: usize,
    /// Kernel dimensions of the curvature operators, same bundle order.
    pub curvature_kernel_dims: [usize; 3],
}

impl ParallelSpinorData {
    /// Kernel dimensions `(Σ⁺, Σ⁻, Σ²)` of the spin-lift route.
    pub fn dimensions(&self) -> [usize; 3] {
        [self.sigma_plus.dimension(), self.sigma_minus.dimension(), self.sigma2.dimension()]
    }

    /// Whether the spin-lift and curvature-kernel routes found the same
    /// dimensions.
    pub fn routes_agree(&self) -> bool {
        self.dimensions() == self.curvature_kernel_dims
    }
}

/// Curvature operators `R_(x,y) = ½ Σ_{i<j} Ω̃_ij(e_x, e_y)·e_i·e_j` for all
/// frame pairs, as Clifford matrices.
fn curvature_matrices(def: &StructureDefinition) -> Result<Vec<CliffordMatrix>> {
    let curv = torsion_curvature(def)?;
    let half = CRat::new(rat(1, 2), Rat::zero());
    let mut mats = Vec::new();
    for x in 1..=5u8 {
        for y in (x + 1)..=5u8 {
            let mut plane = Form::zero(5);
            for i in 1..=5u8 {
                for j in (i + 1)..=5u8 {
                    let c = curv.two_form(i, j).coeff(&[x, y]);
                    if !c.is_zero() {
                        plane = &plane + &Form::monomial(5, &[i, j], c)?;
                    }
                }
            }
            mats.push(action_matrix(&plane)?.scale(&half));
        }
    }
    Ok(mats)
}

/// Solve for all constant parallel spinors of the canonical connection.
///
/// When the definition carries an auxiliary generator whose curvature
/// vanishes, the auxiliary form is first gauged to zero — it contributes an
/// artificial holonomy constraint otherwise.  The joint kernel of the spin
/// lifts is intersected with each subbundle exactly; curvature-operator
/// kernels are computed as an independent cross-check (every parallel spinor
/// is annihilated by the curvature, and on the builtin models the two
/// dimensions coincide).
pub fn parallel_spinors(def: &StructureDefinition) -> Result<ParallelSpinorData> {
    def.ensure_valid()?;
    let (work, gauge_reduced) = if def.has_auxiliary() && def.differential(6).is_zero() {
        (def.gauge_substitute(&Rat::zero())?, true)
    } else {
        (def.clone(), false)
    };
    let lifts = spin_lifts(&work)?;
    let make = |tag: SubbundleTag| SpinorFieldBasis {
        bundle: tag,
        basis: joint_kernel(&lifts, tag.basis_indices()),
    };
    let sigma_plus = make(SubbundleTag::SigmaPlus);
    let sigma_minus = make(SubbundleTag::SigmaMinus);
    let sigma2 = make(SubbundleTag::Sigma2);
    let total_dimension = joint_kernel(&lifts, &[0, 1, 2, 3]).len();
    let cmats = curvature_matrices(&work)?;
    let curvature_kernel_dims = [
        joint_kernel(&cmats, SubbundleTag::SigmaPlus.basis_indices()).len(),
        joint_kernel(&cmats, SubbundleTag::SigmaMinus.basis_indices()).len(),
        joint_kernel(&cmats, SubbundleTag::Sigma2.basis_indices()).len(),
    ];
    debug_assert!(
        sigma_plus
            .basis
            .iter()
            .chain(&sigma_minus.basis)
            .chain(&sigma2.basis)
            .all(|psi| cmats.iter().all(|m| m.apply(psi).is_zero())),
        "every parallel spinor must be annihilated by the curvature operators"
    );
    Ok(ParallelSpinorData {
        definition: work,
        gauge_reduced,
        sigma_plus,
        sigma_minus,
        sigma2,
        total_dimension,
        curvature_kernel_dims,
    })
}

/// Parallel spinors in a half-spinor line together with a parallel spinor in
/// the plane force vanishing curvature; returns whether the implication holds
/// for this definition.
pub fn flatness_dichotomy_holds(def: &StructureDefinition) -> Result<bool> {
    let data = parallel_spinors(def)?;
    let [p, m, s2] = data.dimensions();
    if (p > 0 || m > 0) && s2 > 0 {
        let curv = torsion_curvature(&data.definition)?;
        Ok((1..=5u8).all(|i| ((i + 1)..=5u8).all(|j| curv.two_form(i, j).is_zero())))
    } else {
        Ok(true)
    }
}

/// Data of the algebraic dilation equation `(2·dΦ − T)·ψ = 0` on constant
/// spinors: the dilation differential, the Lee form, the contact
/// differential, and the torsion 3-form built from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KillingProblem {
    /// Differential of the dilation function (constant Φ ⇔ zero).
    pub dphi: Form,
    /// Lee form (horizontal 1-form).
    pub theta: Form,
    /// Differential of the contact form (horizontal 2-form).
    pub deta: Form,
    /// Torsion `T = η∧dη − (θ∘φ)∧F` assembled from the data.
    pub torsion: Form,
}

impl KillingProblem {
    /// Assemble a problem from its three form ingredients.
    ///
    /// All forms must live over the plain 5-generator coframe; the Lee form
    /// and the contact differential must be horizontal.  The dilation
    /// differential may carry a vertical component (no solution can exist
    /// then, which the solver reports honestly).
    pub fn new(dphi: Form, theta: Form, deta: Form) -> Result<Self> {
        for (w, degree) in [(&dphi, 1), (&theta, 1), (&deta, 2)] {
            if w.coframe_size() != 5 {
                return Err(Error::CoframeMismatch { left: 5, right: w.coframe_size() });
            }
            if w.uses_auxiliary() {
                return Err(Error::AuxiliaryComponent { context: "dilation problem data" });
            }
            if !w.is_zero() && w.pure_degree() != Some(degree) {
                return Err(Error::MixedDegree);
            }
        }
        if !theta.coeff(&[5]).is_zero() {
            return Err(Error::ReebComponent { context: "Lee form" });
        }
        if (1..=4u8).any(|i| !deta.coeff(&[i, 5]).is_zero()) {
            return Err(Error::ReebComponent { context: "contact differential" });
        }
        let eta = Form::generator(5, 5)?;
        let torsion = &eta.wedge(&deta)?
            - &compose_with_phi(&theta).wedge(&fundamental_two_form(5))?;
        Ok(KillingProblem { dphi, theta, deta, torsion })
    }

    /// Build the problem data carried by a structure definition: Lee form and
    /// contact differential from the structure, dilation differential given.
    pub fn from_structure(def: &StructureDefinition, dphi: Form) -> Result<Self> {
        let theta = horizontal_part_5(&lee_form(def)?);
        let deta = horizontal_part_5(&def.exterior_derivative(&reeb_form(def))?);
        KillingProblem::new(dphi, theta, deta)
    }

    /// The operator whose Clifford kernel solves the equation: `2·dΦ − T`.
    pub fn operator_form(&self) -> Form {
        &self.dphi.scaled_int(2) - &self.torsion
    }
}

/// Restrict a form over a possibly 6-generator coframe to the 5-generator
/// coframe, dropping nothing (the inputs used here are always auxiliary-free
/// and vertical-free, asserted in debug builds).
fn horizontal_part_5(w: &Form) -> Form {
    let mut out = Form::zero(5);
    for (idx, c) in w.iter() {
        let indices = idx.indices();
        debug_assert!(
            indices.iter().all(|&i| i <= 5),
            "dilation data must not touch the auxiliary generator"
        );
        out = &out
            + &Form::monomial(5, &indices, c.clone()).expect("indices stay within the coframe");
    }
    out
}

/// Kernels and solvability conditions of the dilation equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KillingSolution {
    /// Kernel basis in the first half-spinor line.
    pub sigma_plus_kernel: Vec<Spinor>,
    /// Kernel basis in the second half-spinor line.
    pub sigma_minus_kernel: Vec<Spinor>,
    /// Kernel basis in the plane annihilated by the fundamental form.
    pub sigma2_kernel: Vec<Spinor>,
    /// `2dΦ = −θ` and `*₄dη = −dη` (half-spinor solvability).
    pub condition_pm: bool,
    /// `2dΦ = θ` and `*₄dη = dη` (plane solvability).
    pub condition_2: bool,
}

impl KillingSolution {
    /// Kernel nontriviality matches the half-spinor condition on both lines.
    pub fn equivalence_pm(&self) -> bool {
        (!self.sigma_plus_kernel.is_empty() == self.condition_pm)
            && (!self.sigma_minus_kernel.is_empty() == self.condition_pm)
    }

    /// Kernel nontriviality matches the plane condition.
    pub fn equivalence_2(&self) -> bool {
        !self.sigma2_kernel.is_empty() == self.condition_2
    }
}

/// Solve the dilation equation on each subbundle and evaluate the two
/// solvability conditions independently from the form data.
pub fn killing_equation_solve(p: &KillingProblem) -> Result<KillingSolution> {
    let op = p.operator_form();
    let sigma_plus_kernel = annihilator_kernel(&op, SubbundleTag::SigmaPlus)?;
    let sigma_minus_kernel = annihilator_kernel(&op, SubbundleTag::SigmaMinus)?;
    let sigma2_kernel = annihilator_kernel(&op, SubbundleTag::Sigma2)?;
    let star = p.deta.hodge(HodgeMode::Restricted4)?;
    let two_dphi = p.dphi.scaled_int(2);
    let condition_pm =
        (&two_dphi + &p.theta).is_zero() && (&star + &p.deta).is_zero();
    let condition_2 =
        (&two_dphi - &p.theta).is_zero() && (&star - &p.deta).is_zero();
    Ok(KillingSolution {
        sigma_plus_kernel,
        sigma_minus_kernel,
        sigma2_kernel,
        condition_pm,
        condition_2,
    })
}

/// Draw a random dilation problem with small rational coefficients.
///
/// The contact differential follows the invariant-family shape
/// `a·e₁₂ + b·(e₁₃+e₂₄) + c·(e₁₄−e₂₃) + d·e₃₄`; the Lee form and the
/// dilation differential are horizontal.  Every fifth draw (remainder 1)
/// forces the half-spinor solvability conditions, every fifth draw
/// (remainder 2) forces the plane conditions, so both positive branches of
/// the kernel/condition equivalence appear in any seeded run.
pub fn random_killing_problem<R: Rng>(rng: &mut R, trial: usize) -> KillingProblem {
    let q = |rng: &mut R| {
        Rat::new(BigInt::from(rng.gen_range(-4i64..=4)), BigInt::from(rng.gen_range(1i64..=3)))
    };
    let a = q(rng);
    let mut b = q(rng);
    let mut c = q(rng);
    let mut d = q(rng);
    let theta: Vec<Rat> = (0..4).map(|_| q(rng)).collect();
    let mut dphi: Vec<Rat> = (0..4).map(|_| q(rng)).collect();
    match trial % 5 {
        1 => {
            d = -a.clone();
            dphi = theta.iter().map(|t| -t / ratz(2)).collect();
        }
        2 => {
            b = Rat::zero();
            c = Rat::zero();
            d = a.clone();
            dphi = theta.iter().map(|t| t / ratz(2)).collect();
        }
        _ => {}
    }
    let one_form = |coeffs: &[Rat]| {
        let mut w = Form::zero(5);
        for (k, v) in coeffs.iter().enumerate() {
            if !v.is_zero() {
                w = &w
                    + &Form::monomial(5, &[(k + 1) as u8], v.clone())
                        .expect("horizontal generator index");
            }
        }
        w
    };
    let m = |i: u8, j: u8, v: &Rat| Form::monomial(5, &[i, j], v.clone()).expect("index pair");
    let deta = &(&m(1, 2, &a) + &m(3, 4, &d)) + &(&(&m(1, 3, &b) + &m(2, 4, &b)) + &(&m(1, 4, &c) - &m(2, 3, &c)));
    KillingProblem::new(one_form(&dphi), one_form(&theta), deta)
        .expect("sampled data is horizontal by construction")
}

/// Consequences of plane solvability for the dilation function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilationConsequences {
    /// `dη` is an exact rational multiple of the fundamental form.
    pub deta_proportional_f: bool,
    /// The proportionality constant, when proportional.
    pub a_value: Option<Rat>,
    /// With a closed fundamental form, the divergence identity
    /// `da + 2a·dΦ = 0` and constant `a` force `dΦ = 0`; this flag reports
    /// whether the instance realizes the forced conclusion.
    pub phi_constant_forced: bool,
    /// Residual `2a·dΦ` of the divergence identity on an invariant coframe
    /// (where `da = 0`).
    pub identity_residual: Form,
}

/// Derive the dilation-function consequences from plane-solvable data.
///
/// Requires the plane solvability conditions (`2dΦ = θ`, `*₄dη = dη`);
/// `df_is_zero` asserts that the fundamental form of the originating
/// structure is closed.
pub fn dilation_consequences(
    p: &KillingProblem,
    df_is_zero: bool,
) -> Result<DilationConsequences> {
    let star = p.deta.hodge(HodgeMode::Restricted4)?;
    let condition_2 = (&p.dphi.scaled_int(2) - &p.theta).is_zero()
        && (&star - &p.deta).is_zero();
    if !condition_2 {
        return Err(Error::Unsupported(
            "dilation consequences need the plane solvability conditions",
        ));
    }
    let f = fundamental_two_form(5);
    let a = p.deta.coeff(&[1, 2]);
    let deta_proportional_f = (&p.deta - &(&f * &a)).is_zero();
    let a_value = deta_proportional_f.then(|| a.clone());
    let identity_residual = (&p.dphi * &a).scaled_int(2);
    let phi_constant_forced = df_is_zero && p.dphi.is_zero();
    Ok(DilationConsequences { deta_proportional_f, a_value, phi_constant_forced, identity_residual })
}

/// Exact positive scale `s = e^c` of a special conformal transformation; the
/// exponent `c` itself is never evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformalFactor {
    scale: Rat,
}

impl ConformalFactor {
    /// A factor from its exact positive scale.
    pub fn new(scale: Rat) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::CoefficientRange(format!(
                "conformal scale must be positive, got {scale}"
            )));
        }
        Ok(ConformalFactor { scale })
    }

    /// The identity transformation.
    pub fn identity() -> Self {
        ConformalFactor { scale: Rat::one() }
    }

    /// The stored scale.
    pub fn scale(&self) -> &Rat {
        &self.scale
    }
}

/// Result of a special conformal transformation: the transformed structure in
/// its own frame, and the transformed invariants expressed in the original
/// frame so the two torsion routes can be compared exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialConformal {
    /// Transformed structure, written in the rescaled coframe.
    pub definition: StructureDefinition,
    /// Transformed fundamental form in the original frame (`s²·F`).
    pub fundamental: Form,
    /// Transformed Lee form in the original frame.
    pub lee: Form,
    /// Torsion of the transformed structure, pushed to the original frame.
    pub torsion_from_structure: Form,
    /// Torsion from the closed formula `T + (s²−1)·dᵠF`, original frame.
    pub torsion_from_formula: Form,
}

impl SpecialConformal {
    /// Whether the structural and closed-formula torsion routes agree.
    pub fn routes_agree(&self) -> bool {
        self.torsion_from_structure == self.torsion_from_formula
    }
}

/// `s^e` for a signed integer exponent.
fn rat_pow(s: &Rat, e: i64) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc = &acc * s;
    }
    if e < 0 {
        Rat::one() / acc
    } else {
        acc
    }
}

/// Multiply each monomial coefficient by `s^(offset + per_horizontal·k)`
/// where `k` counts the monomial's horizontal indices (≤ 4).
fn horizontal_rescale(w: &Form, s: &Rat, per_horizontal: i64, offset: i64) -> Form {
    let mut out = Form::zero(w.coframe_size());
    for (idx, c) in w.iter() {
        let indices = idx.indices();
        let k = indices.iter().filter(|&&i| i <= 4).count() as i64;
        let factor = rat_pow(s, offset + per_horizontal * k);
        out = &out
            + &Form::monomial(w.coframe_size(), &indices, c * &factor)
                .expect("same coframe and indices");
    }
    out
}

/// Apply the special conformal transformation with scale `s`: the horizontal
/// coframe is stretched by `s`, the vertical generator is fixed.
///
/// Returns the transformed structure together with the transformed
/// fundamental form, Lee form, and the torsion computed both from the
/// transformed structure and from the closed formula; callers compare the two
/// routes.  The input must have a Killing vertical field and a totally skew
/// torsion obstruction.
pub fn special_conformal(
    def: &StructureDefinition,
    factor: &ConformalFactor,
) -> Result<SpecialConformal> {
    def.ensure_valid()?;
    if !killing_test(def)? {
        return Err(Error::ReebNotKilling);
    }
    if !nijenhuis(def)?.is_totally_skew() {
        return Err(Error::NijenhuisNotSkew);
    }
    let s = factor.scale();
    let mut new_d = Vec::with_capacity(def.n() as usize);
    for g in 1..=def.n() {
        let offset = if g <= 4 { 1 } else { 0 };
        new_d.push(horizontal_rescale(def.differential(g), s, -1, offset));
    }
    let definition = StructureDefinition::new(def.n(), new_d, def.has_auxiliary(), None)?;
    let s2 = s * s;
    let fundamental = &fundamental_form(def) * &s2;
    let lee = horizontal_rescale(&lee_form(&definition)?, s, 1, 0);
    let torsion_from_structure = horizontal_rescale(&torsion_form(&definition)?, s, 1, 0);
    let f = fundamental_form(def);
    let twisted = crate::contact_structures::twisted_differential(def, &f)?;
    let torsion_from_formula = &torsion_form(def)? + &(&twisted * &(&s2 - &Rat::one()));
    Ok(SpecialConformal { definition, fundamental, lee, torsion_from_structure, torsion_from_formula })
}

/// One named check of the verification battery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteCheck {
    /// Stable identifier of the verified statement.
    pub name: &'static str,
    /// Whether the statement held exactly.
    pub pass: bool,
    /// Human-readable specifics (values, dimensions, routes).
    pub detail: String,
}

impl SuiteCheck {
    fn new(name: &'static str, pass: bool, detail: String) -> Self {
        SuiteCheck { name, pass, detail }
    }
}

/// The rows used by the exact frame change onto the product-of-spheres basis.
fn sphere_product_change() -> FrameChange {
    let r = |v: [i64; 6]| v.map(ratz).to_vec();
    FrameChange::Linear {
        rows: vec![
            r([1, 0, 0, 1, 0, 0]),
            r([0, 1, -1, 0, 0, 0]),
            r([1, 0, 0, -1, 0, 0]),
            r([0, 1, 1, 0, 0, 0]),
            r([0, 0, 0, 0, 1, 1]),
            r([0, 0, 0, 0, -1, 1]),
        ],
        scales: vec![ratz(2), ratz(2), ratz(2), ratz(2), ratz(1), ratz(1)],
        xi_index: 5,
        has_a: false,
    }
}

/// Run the full verification battery on a supported definition.
///
/// Supported inputs are the parametric family and its two named reductions
/// (`heisenberg`, `s3r2`); the product-of-spheres basis carries a different
/// adapted structure and is reachable only as the *target* of the frame
/// change verified here, so it is rejected.  Every check is exact unless its
/// detail says otherwise.
pub fn theorem_suite(def: &StructureDefinition) -> Result<Vec<SuiteCheck>> {
    let family_name = def.family().map(|f| f.name.clone());
    if !matches!(family_name.as_deref(), Some("m5" | "heisenberg" | "s3r2")) {
        return Err(Error::Unsupported(
            "the verification battery needs the parametric family or one of its gauge reductions",
        ));
    }
    def.ensure_valid()?;
    let params = def.family().and_then(|f| f.params.clone());
    let mut checks = Vec::new();

    let f = fundamental_form(def);
    let df = def.exterior_derivative(&f)?;
    let eta = reeb_form(def);
    let deta = def.exterior_derivative(&eta)?;
    let nij = nijenhuis(def)?;

    checks.push(SuiteCheck::new(
        "reeb-field-killing",
        killing_test(def)?,
        "vertical contraction of dF vanishes".into(),
    ));
    checks.push(SuiteCheck::new(
        "nijenhuis-tensor-vanishes",
        nij.is_zero(),
        "all components of N are zero".into(),
    ));
    checks.push(SuiteCheck::new(
        "fundamental-form-closed",
        df.is_zero(),
        "dF = 0".into(),
    ));

    let vol = deta.wedge(&deta)?;
    let lambda = vol.coeff(&[1, 2, 3, 4]) / ratz(2);
    let ff = f.wedge(&f)?;
    checks.push(SuiteCheck::new(
        "contact-volume-proportionality",
        (&vol - &(&ff * &lambda)).is_zero(),
        format!("deta∧deta = λ·F∧F with λ = {lambda}"),
    ));
    if let Some(p) = &params {
        checks.push(SuiteCheck::new(
            "family-scalar-match",
            p.integrability_scalar() == lambda,
            format!("λ = {} equals ad − b² − c² = {}", lambda, p.integrability_scalar()),
        ));
    }

    let t = torsion_form(def)?;
    checks.push(SuiteCheck::new(
        "torsion-is-reeb-wedge",
        t == eta.wedge(&deta)?,
        "T = η∧dη".into(),
    ));

    let (coclosed, route) = match codifferential(def, &t) {
        Ok(dt) => (dt.is_zero(), "via the codifferential"),
        Err(Error::AuxiliaryComponent { .. }) => {
            let curv = torsion_curvature(def)?;
            (curv.ricci_is_symmetric(), "via Ricci symmetry (auxiliary generator blocks the Hodge route)")
        }
        Err(e) => return Err(e),
    };
    checks.push(SuiteCheck::new("torsion-coclosed", coclosed, format!("δT = 0, {route}")));

    let spinors = parallel_spinors(def)?;
    let plane_ok = spinors.sigma2.dimension() == 2
        && spinors
            .sigma2
            .basis
            .iter()
            .all(|psi| clifford_action(&fundamental_two_form(5), psi).map(|r| r.is_zero()).unwrap_or(false));
    checks.push(SuiteCheck::new(
        "vertical-plane-parallel-spinors",
        plane_ok,
        format!(
            "plane kernel dimension {} with F·ψ = 0 on the basis",
            spinors.sigma2.dimension()
        ),
    ));

    let expected_dims = if lambda.is_zero() { [1usize, 1, 2] } else { [0usize, 0, 2] };
    let dims = spinors.dimensions();
    let flat_consistent = flatness_dichotomy_holds(def)?;
    checks.push(SuiteCheck::new(
        "flatness-dichotomy",
        dims == expected_dims && flat_consistent,
        format!("kernel dimensions {dims:?}, expected {expected_dims:?} for λ = {lambda}"),
    ));
    checks.push(SuiteCheck::new(
        "holonomy-routes-agree",
        spinors.routes_agree(),
        format!(
            "spin-lift kernels {:?} match curvature kernels {:?}",
            dims, spinors.curvature_kernel_dims
        ),
    ));

    let curv = torsion_curvature(def)?;
    let minus_lambda = -lambda.clone();
    let ricci_ok = (1..=5u8).all(|j| {
        (1..=5u8).all(|k| {
            let expected = if j == k && j <= 4 { minus_lambda.clone() } else { Rat::zero() };
            *curv.ricci(j, k) == expected
        })
    });
    checks.push(SuiteCheck::new(
        "ricci-horizontal-projection",
        ricci_ok,
        format!("Ric = {minus_lambda}·diag(1,1,1,1,0)"),
    ));

    let (four, scal) = parallel_spinor_obstruction(def)?;
    let four_expected = Form::monomial(def.n(), &[1, 2, 3, 4], &lambda * &ratz(4))?;
    let scal_expected = &lambda * &ratz(-4);
    checks.push(SuiteCheck::new(
        "obstruction-four-form",
        four == four_expected && scal == scal_expected,
        format!("dT + 2σᵀ = 4λ·e₁₂₃₄ and scalar = −4λ with λ = {lambda}"),
    ));

    let action = action_matrix(&four)?;
    let scal_id = CliffordMatrix::identity().scale(&CRat::new(scal.clone(), Rat::zero()));
    let obstruction_op = action.add(&scal_id);
    let plane_zero = SubbundleTag::Sigma2
        .basis()
        .iter()
        .all(|psi| obstruction_op.apply(psi).is_zero());
    checks.push(SuiteCheck::new(
        "obstruction-vertical-plane-action",
        plane_zero,
        "the obstruction operator annihilates the plane".into(),
    ));

    let line_value = CRat::new(&lambda * &ratz(-8), Rat::zero());
    let line_ok = [SubbundleTag::SigmaPlus, SubbundleTag::SigmaMinus]
        .into_iter()
        .all(|tag| {
            scalar_action_on_line(&four, tag)
                .ok()
                .flatten()
                .map(|v| v + CRat::new(scal.clone(), Rat::zero()) == line_value)
                .unwrap_or(false)
        });
    checks.push(SuiteCheck::new(
        "obstruction-horizontal-line-action",
        line_ok,
        format!("the operator scales both half-spinor lines by −8λ = {}", line_value.re),
    ));

    checks.push(SuiteCheck::new(
        "curvature-circle-reduction",
        verify_curvature_structure(def)?,
        "curvature is abelian with R(α) = (Ω, α)·F and dΩ = 0".into(),
    ));

    if let Some(p) = &params {
        if p.b.is_zero() && p.c.is_zero() && p.a == p.d && !p.a.is_zero() {
            let (_, gauged) = def.sasaki_gauge()?;
            let flags = classify(&gauged)?;
            checks.push(SuiteCheck::new(
                "canonical-gauge-alpha-sasakian",
                flags.normal && flags.alpha == Some(p.a.clone()),
                format!("gauged structure has dη = α·F with α = {}", p.a),
            ));
            if p.a == ratz(2) {
                let target = make_builtin(BuiltinModel::Heisenberg, None)?;
                checks.push(SuiteCheck::new(
                    "gauge-reaches-nilpotent-model",
                    gauged.same_constants(&target),
                    "gauge substitution lands on the nilpotent model constants".into(),
                ));
            }
        }
        let at = |a: i64, b: i64, c: i64, d: i64| {
            p.a == ratz(a) && p.b == ratz(b) && p.c == ratz(c) && p.d == ratz(d)
        };
        if at(0, 1, 0, 0) {
            let changed = def.change_frame(&sphere_product_change())?;
            let target = make_builtin(BuiltinModel::S3S3Basis, None)?;
            checks.push(SuiteCheck::new(
                "frame-change-reaches-sphere-product",
                changed.same_constants(&target),
                "the √2-normalized substitution lands on the product-of-spheres constants".into(),
            ));
        }
        if at(1, 0, 0, 0) {
            let gauged = def.gauge_substitute(&Rat::zero())?;
            let target = make_builtin(BuiltinModel::S3R2, None)?;
            checks.push(SuiteCheck::new(
                "gauge-reaches-rotation-cylinder",
                gauged.same_constants(&target),
                "the zero gauge lands on the rotation-cylinder constants".into(),
            ));
        }
    }

    Ok(checks)
}

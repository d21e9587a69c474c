//! Contact-geometric quantities on an invariant coframe structure.
//!
//! From a validated [`StructureDefinition`] this module computes the
//! fundamental 2-form `F = e₁∧e₂ + e₃∧e₄`, the contact form `η = e₅`, the
//! (lowered) Nijenhuis tensor, the Killing criterion `ξ⌟dF = 0`, the Lee
//! form, the φ-twisted exterior differential, the canonical torsion 3-form
//!
//! ```text
//! T = η∧dη + d^φF + N − η∧(ξ⌟N),
//! ```
//!
//! the Riemannian codifferential, and the classification flags
//! (normal / quasi-Sasakian / α-Sasakian / Sasakian / contact / Killing).
//!
//! Sign conventions (calibrated, not free): `dα(X,Y) = −α([X,Y])` for
//! invariant 1-forms, `d^φw = −dw(φ·,…,φ·)`, and the Lee form
//! `θ(X) = −½ Σᵢ dF(X, eᵢ, φeᵢ)`.

use num_traits::Zero;

use crate::coframe_models::StructureDefinition;
use crate::exterior_core::{Form, FrameVector, HodgeMode};
use crate::{rat, ratz, Error, Rat, Result};

/// Image of the frame vector `eᵢ` under φ, as `(index, sign)`; `None` for
/// the Reeb and auxiliary directions, which φ annihilates.
pub fn phi_image(i: u8) -> Option<(u8, i8)> {
    match i {
        1 => Some((2, -1)),
        2 => Some((1, 1)),
        3 => Some((4, -1)),
        4 => Some((3, 1)),
        _ => None,
    }
}

/// The fundamental 2-form `F = e₁∧e₂ + e₃∧e₄` over the definition's coframe.
pub fn fundamental_form(def: &StructureDefinition) -> Form {
    let n = def.n();
    let e12 = Form::monomial(n, &[1, 2], ratz(1)).expect("indices in range");
    let e34 = Form::monomial(n, &[3, 4], ratz(1)).expect("indices in range");
    &e12 + &e34
}

/// The contact form `η = e₅` over the definition's coframe.
pub fn reeb_form(def: &StructureDefinition) -> Form {
    Form::generator(def.n(), def.xi_index()).expect("Reeb index in range")
}

/// Lowered Nijenhuis tensor `N(X, Y, Z) = g(N(X, Y), Z)` over the adapted
/// frame indices `1..=5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NijenhuisTensor {
    c: Vec<Rat>,
}

impl NijenhuisTensor {
    fn index(i: u8, j: u8, k: u8) -> usize {
        debug_assert!((1..=5).contains(&i) && (1..=5).contains(&j) && (1..=5).contains(&k));
        ((i - 1) as usize) * 25 + ((j - 1) as usize) * 5 + ((k - 1) as usize)
    }

    /// Component `N(eᵢ, eⱼ, eₖ)`.
    pub fn get(&self, i: u8, j: u8, k: u8) -> &Rat {
        &self.c[Self::index(i, j, k)]
    }

    /// Whether every component vanishes.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rat::is_zero)
    }

    /// Whether the tensor equals its full antisymmetrization.
    pub fn is_totally_skew(&self) -> bool {
        for i in 1..=5u8 {
            for j in 1..=5u8 {
                for k in 1..=5u8 {
                    let mut alt = Rat::zero();
                    for (sign, (p, q, r)) in [
                        (1, (i, j, k)),
                        (1, (j, k, i)),
                        (1, (k, i, j)),
                        (-1, (i, k, j)),
                        (-1, (j, i, k)),
                        (-1, (k, j, i)),
                    ] {
                        alt += self.get(p, q, r) * ratz(sign);
                    }
                    if alt / ratz(6) != *self.get(i, j, k) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The tensor as a 3-form over a coframe of size `n`, when totally skew.
    pub fn as_three_form(&self, n: u8) -> Option<Form> {
        if !self.is_totally_skew() {
            return None;
        }
        let mut f = Form::zero(n);
        for i in 1..=5u8 {
            for j in (i + 1)..=5u8 {
                for k in (j + 1)..=5u8 {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        f = &f
                            + &Form::monomial(n, &[i, j, k], c.clone())
                                .expect("indices in range");
                    }
                }
            }
        }
        Some(f)
    }
}

/// Nijenhuis tensor of a validated definition:
/// `N(X,Y) = φ²[X,Y] + [φX,φY] − φ[φX,Y] − φ[X,φY] + dη(X,Y)·ξ`,
/// lowered with the frame metric (the auxiliary direction carries no metric
/// and is annihilated by φ, so it never enters).
///
/// For definitions with an auxiliary generator, the result is asserted to be
/// invariant under the gauge shift `A ↦ A + Σ cₖeₖ`.
pub fn nijenhuis(def: &StructureDefinition) -> Result<NijenhuisTensor> {
    def.ensure_valid()?;
    let d: Vec<Form> = (1..=def.n()).map(|g| def.differential(g).clone()).collect();
    let tensor = nijenhuis_core(def.n(), &d)?;
    if def.has_auxiliary() {
        let shifts = [ratz(1), ratz(-1), ratz(2), ratz(0), ratz(3)];
        let shifted = shift_auxiliary_differentials(def.n(), &d, &shifts)?;
        let tensor_shifted = nijenhuis_core(def.n(), &shifted)?;
        assert_eq!(
            tensor, tensor_shifted,
            "the Nijenhuis tensor must not depend on the auxiliary gauge"
        );
    }
    Ok(tensor)
}

/// Core computation over raw differentials (no gauge assertion).
fn nijenhuis_core(n: u8, d: &[Form]) -> Result<NijenhuisTensor> {
    // bracket coefficients: [e_i, e_j] = Σ_m c_m e_m with c_m = −de^m(e_i, e_j)
    let bracket = |i: u8, j: u8| -> Result<Vec<Rat>> {
        d.iter()
            .map(|dm| dm.evaluate(&[FrameVector::new(i), FrameVector::new(j)]).map(|c| -c))
            .collect()
    };
    let phi_apply = |v: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); n as usize];
        for (slot, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some((target, sign)) = phi_image((slot + 1) as u8) {
                out[(target - 1) as usize] += c * ratz(sign as i64);
            }
        }
        out
    };
    let signed_bracket = |si: i8, i: u8, sj: i8, j: u8| -> Result<Vec<Rat>> {
        let base = bracket(i, j)?;
        let s = ratz((si * sj) as i64);
        Ok(base.into_iter().map(|c| c * &s).collect())
    };
    let deta = &d[4];
    let mut c = vec![Rat::zero(); 125];
    for i in 1..=5u8 {
        for j in 1..=5u8 {
            if i == j {
                continue;
            }
            // φ²[X,Y]
            let t1 = phi_apply(&phi_apply(&bracket(i, j)?));
            // [φX, φY], φ[φX, Y], φ[X, φY] — vanish when φ kills a slot
            let pi = phi_image(i);
            let pj = phi_image(j);
            let t2 = match (pi, pj) {
                (Some((a, sa)), Some((b, sb))) => signed_bracket(sa, a, sb, b)?,
                _ => vec![Rat::zero(); n as usize],
            };
            let t3 = match pi {
                Some((a, sa)) => phi_apply(&signed_bracket(sa, a, 1, j)?),
                None => vec![Rat::zero(); n as usize],
            };
            let t4 = match pj {
                Some((b, sb)) => phi_apply(&signed_bracket(1, i, sb, b)?),
                None => vec![Rat::zero(); n as usize],
            };
            let mut v: Vec<Rat> = (0..n as usize)
                .map(|m| &(&t1[m] + &t2[m]) - &(&t3[m] + &t4[m]))
                .collect();
            v[4] += deta.evaluate(&[FrameVector::new(i), FrameVector::new(j)])?;
            // lower with the frame metric: only the adapted directions count
            for k in 1..=5u8 {
                c[NijenhuisTensor::index(i, j, k)] = v[(k - 1) as usize].clone();
            }
        }
    }
    Ok(NijenhuisTensor { c })
}

/// Substitute `A(old) = A(new) − Σ shifts[k]·e_{k+1}` into every differential
/// and recompute `dA(new) = dA + Σ shifts[k]·de_{k+1}` (also substituted).
fn shift_auxiliary_differentials(n: u8, d: &[Form], shifts: &[Rat; 5]) -> Result<Vec<Form>> {
    let substitute = |w: &Form| -> Result<Form> {
        let mut out = Form::zero(n);
        for (idx, coeff) in w.iter() {
            let indices = idx.indices();
            if !indices.contains(&6) {
                out = &out + &Form::monomial(n, &indices, coeff.clone())?;
                continue;
            }
            out = &out + &Form::monomial(n, &indices, coeff.clone())?;
            let prefix: Vec<u8> = indices.iter().copied().filter(|&i| i != 6).collect();
            let prefix_form = Form::monomial(n, &prefix, coeff.clone())?;
            for (k, shift) in shifts.iter().enumerate() {
                if shift.is_zero() {
                    continue;
                }
                let ek = Form::monomial(n, &[(k + 1) as u8], -shift.clone())?;
                out = &out + &prefix_form.wedge(&ek)?;
            }
        }
        Ok(out)
    };
    let mut new_d: Vec<Form> = d[..5].iter().map(&substitute).collect::<Result<_>>()?;
    let mut da = d[5].clone();
    for (k, shift) in shifts.iter().enumerate() {
        da = &da + &(&d[k] * shift);
    }
    new_d.push(substitute(&da)?);
    Ok(new_d)
}

/// Killing criterion for the Reeb field: `ξ⌟dF = 0`. Only applicable when
/// the Nijenhuis tensor is totally skew.
pub fn killing_test(def: &StructureDefinition) -> Result<bool> {
    if !nijenhuis(def)?.is_totally_skew() {
        return Err(Error::NijenhuisNotSkew);
    }
    let df = def.exterior_derivative(&fundamental_form(def))?;
    Ok(df.interior(FrameVector::new(def.xi_index()))?.is_zero())
}

/// Lee form `θ(X) = −½ Σᵢ dF(X, eᵢ, φeᵢ)`, a 1-form on the adapted frame.
pub fn lee_form(def: &StructureDefinition) -> Result<Form> {
    let df = def.exterior_derivative(&fundamental_form(def))?;
    lee_from_three_form(def.n(), &df, false)
}

/// Lee form recovered from the torsion 3-form:
/// `θ(X) = −½ Σᵢ T(φX, eᵢ, φeᵢ)`. Agrees with [`lee_form`] whenever the
/// torsion form exists.
pub fn lee_form_from_torsion(def: &StructureDefinition) -> Result<Form> {
    let t = torsion_form(def)?;
    lee_from_three_form(def.n(), &t, true)
}

/// Shared contraction: `−½ Σᵢ w(s, eᵢ, φeᵢ)` with first slot `X` (or `φX`).
fn lee_from_three_form(n: u8, w: &Form, twist_first_slot: bool) -> Result<Form> {
    let mut theta = Form::zero(n);
    for x in 1..=5u8 {
        let first = if twist_first_slot {
            match phi_image(x) {
                Some(p) => p,
                None => continue,
            }
        } else {
            (x, 1)
        };
        let mut sum = Rat::zero();
        for i in 1..=4u8 {
            let (pi, si) = phi_image(i).expect("horizontal index");
            let val = w.evaluate(&[
                FrameVector::new(first.0),
                FrameVector::new(i),
                FrameVector::new(pi),
            ])?;
            sum += val * ratz((si * first.1) as i64);
        }
        let coeff = sum * rat(-1, 2);
        if !coeff.is_zero() {
            theta = &theta + &Form::monomial(n, &[x], coeff)?;
        }
    }
    Ok(theta)
}

/// Pullback along φ: `e₁ ↦ e₂, e₂ ↦ −e₁, e₃ ↦ e₄, e₄ ↦ −e₃`, the Reeb and
/// auxiliary generators map to zero; extended multiplicatively to monomials.
pub fn phi_pullback(w: &Form) -> Form {
    let n = w.coframe_size();
    let mut out = Form::zero(n);
    'terms: for (idx, coeff) in w.iter() {
        let mut term = Form::scalar(n, coeff.clone());
        for i in idx.indices() {
            let (target, sign): (u8, i64) = match i {
                1 => (2, 1),
                2 => (1, -1),
                3 => (4, 1),
                4 => (3, -1),
                _ => continue 'terms,
            };
            let mapped = Form::monomial(n, &[target], ratz(sign)).expect("index in range");
            term = term.wedge(&mapped).expect("same coframe");
        }
        out = &out + &term;
    }
    out
}

/// φ-twisted exterior differential `d^φw = −dw(φ·, …, φ·)`.
pub fn twisted_differential(def: &StructureDefinition, w: &Form) -> Result<Form> {
    if w.uses_auxiliary() {
        return Err(Error::AuxiliaryComponent { context: "twisted differential" });
    }
    let dw = def.exterior_derivative(w)?;
    Ok(-&phi_pullback(&dw))
}

/// Canonical torsion 3-form `T = η∧dη + d^φF + N − η∧(ξ⌟N)`.
///
/// Exists exactly when the Nijenhuis tensor is totally skew and the Reeb
/// field is Killing; the result always satisfies `ξ⌟T = dη` and is free of
/// the auxiliary generator.
pub fn torsion_form(def: &StructureDefinition) -> Result<Form> {
    let nij = nijenhuis(def)?;
    let n_form = nij.as_three_form(def.n()).ok_or(Error::NijenhuisNotSkew)?;
    let f = fundamental_form(def);
    let df = def.exterior_derivative(&f)?;
    let xi = FrameVector::new(def.xi_index());
    if !df.interior(xi)?.is_zero() {
        return Err(Error::ReebNotKilling);
    }
    let eta = reeb_form(def);
    let deta = def.exterior_derivative(&eta)?;
    let t = &(&eta.wedge(&deta)? + &twisted_differential(def, &f)?)
        + &(&n_form - &eta.wedge(&n_form.interior(xi)?)?);
    if t.uses_auxiliary() {
        return Err(Error::AuxiliaryComponent { context: "torsion form" });
    }
    Ok(t)
}

/// Riemannian codifferential `δw = (−1)^k · *(d(*w))` on pure k-forms over
/// `e₁..e₅` (Hodge star of the 5-dimensional metric).
pub fn codifferential(def: &StructureDefinition, w: &Form) -> Result<Form> {
    if w.is_zero() {
        return Ok(Form::zero(w.coframe_size()));
    }
    let k = w.pure_degree().ok_or(Error::MixedDegree)?;
    let star = w.hodge(HodgeMode::Full5)?;
    let dstar = def.exterior_derivative(&star)?;
    if dstar.uses_auxiliary() {
        return Err(Error::AuxiliaryComponent { context: "codifferential" });
    }
    let double = dstar.hodge(HodgeMode::Full5)?;
    Ok(if k % 2 == 0 { double } else { -&double })
}

/// Classification flags of an almost contact metric structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationFlags {
    /// Nijenhuis tensor vanishes.
    pub normal: bool,
    /// Normal with closed fundamental form.
    pub quasi_sasakian: bool,
    /// Normal with `dη = α·F`, `α ≠ 0`.
    pub alpha_sasakian: bool,
    /// The proportionality constant when `dη = α·F` (present also for the
    /// degenerate α = 0 case).
    pub alpha: Option<Rat>,
    /// α-Sasakian with α = 2.
    pub sasakian: bool,
    /// `η ∧ dη ∧ dη ≠ 0`.
    pub contact: bool,
    /// `ξ⌟dF = 0` (the Killing criterion; equivalent to ξ Killing when the
    /// Nijenhuis tensor is totally skew).
    pub killing_xi: bool,
}

impl ClassificationFlags {
    /// Flag map for the verification-report JSON.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "normal": self.normal,
            "quasi_sasakian": self.quasi_sasakian,
            "alpha_sasakian": self.alpha_sasakian,
            "alpha": self.alpha.as_ref().map(|a| a.to_string()),
            "sasakian": self.sasakian,
            "contact": self.contact,
            "killing_xi": self.killing_xi,
        })
    }
}

/// Compute all classification flags of a validated definition.
pub fn classify(def: &StructureDefinition) -> Result<ClassificationFlags> {
    let nij = nijenhuis(def)?;
    let normal = nij.is_zero();
    let f = fundamental_form(def);
    let df = def.exterior_derivative(&f)?;
    let quasi_sasakian = normal && df.is_zero();
    let eta = reeb_form(def);
    let deta = def.exterior_derivative(&eta)?;
    let contact = !eta.wedge(&deta)?.wedge(&deta)?.is_zero();
    let alpha = if normal {
        let candidate = deta.coeff(&[1, 2]);
        (&f * &candidate == deta).then_some(candidate)
    } else {
        None
    };
    let alpha_sasakian = matches!(&alpha, Some(a) if !a.is_zero());
    let sasakian = matches!(&alpha, Some(a) if *a == ratz(2));
    let killing_xi = df.interior(FrameVector::new(def.xi_index()))?.is_zero();
    Ok(ClassificationFlags {
        normal,
        quasi_sasakian,
        alpha_sasakian,
        alpha,
        sasakian,
        contact,
        killing_xi,
    })
}

/// Aggregated contact data of a structure admitting the canonical torsion
/// connection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactData {
    /// Fundamental 2-form.
    pub fundamental: Form,
    /// Contact form `η = e₅`.
    pub eta: Form,
    /// Lowered Nijenhuis tensor.
    pub nijenhuis: NijenhuisTensor,
    /// Lee form.
    pub lee: Form,
    /// Canonical torsion 3-form.
    pub torsion: Form,
}

impl ContactData {
    /// Compute every field; fails when the torsion form does not exist.
    pub fn compute(def: &StructureDefinition) -> Result<ContactData> {
        Ok(ContactData {
            fundamental: fundamental_form(def),
            eta: reeb_form(def),
            nijenhuis: nijenhuis(def)?,
            lee: lee_form(def)?,
            torsion: torsion_form(def)?,
        })
    }
}

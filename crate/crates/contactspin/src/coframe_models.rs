//! Invariant-coframe structure definitions and model families.
//!
//! A [`StructureDefinition`] fixes a coframe `e1..e5` (optionally extended by
//! an auxiliary connection 1-form `A` as a sixth generator) together with the
//! 2-form differentials `de^μ` of every generator. The differentials encode
//! the bracket of the underlying Lie algebra through the invariant-form
//! convention `dα(X, Y) = −α([X, Y])`, and extend to all invariant forms as
//! an antiderivation. Integrability (`d∘d = 0`, the Jacobi identity) is
//! checked by [`StructureDefinition::validate`].
//!
//! Builtin models:
//!
//! * `heisenberg` — the nilpotent model with `de₅ = 2(e₁∧e₂ + e₃∧e₄)`;
//! * `m5family(a,b,c,d)` — the four-parameter six-generator family whose
//!   auxiliary curvature is pinned to `dA = (ad−b²−c²)(e₁∧e₂+e₃∧e₄)`;
//! * `s3s3_basis` — the product-of-two-3-spheres presentation reached from
//!   `m5family(0,1,0,0)` by an exact linear frame change;
//! * `s3r2` — the product of a 3-sphere factor with a flat 2-dimensional
//!   factor, reached from `m5family(1,0,0,0)` by the gauge `A := 0`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exterior_core::{Form, FormRepr, FrameVector};
use crate::{ratz, Error, Rat, Result};

/// Parameters `(a, b, c, d)` of the four-parameter model family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelParams {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl ModelParams {
    /// Parameters from exact rationals.
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        ModelParams { a, b, c, d }
    }

    /// Parameters from integers.
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        ModelParams { a: ratz(a), b: ratz(b), c: ratz(c), d: ratz(d) }
    }

    /// The scalar `ad − b² − c²` multiplying the fundamental form in the
    /// auxiliary curvature `dA`.
    pub fn integrability_scalar(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.b - &self.c * &self.c
    }

    /// Whether the auxiliary curvature vanishes (`ad − b² − c² = 0`).
    pub fn is_degenerate(&self) -> bool {
        self.integrability_scalar().is_zero()
    }
}

/// Provenance tag carried by definitions produced from a builtin family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInfo {
    /// Family name (`"heisenberg"`, `"m5"`, `"s3s3"`, `"s3r2"`).
    pub name: String,
    /// Parameters, for the parametric family.
    pub params: Option<ModelParams>,
}

/// Names of the builtin model families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinModel {
    Heisenberg,
    M5Family,
    S3S3Basis,
    S3R2,
}

impl BuiltinModel {
    /// Canonical lowercase name.
    pub fn name(self) -> &'static str {
        match self {
            BuiltinModel::Heisenberg => "heisenberg",
            BuiltinModel::M5Family => "m5family",
            BuiltinModel::S3S3Basis => "s3s3_basis",
            BuiltinModel::S3R2 => "s3r2",
        }
    }
}

impl FromStr for BuiltinModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heisenberg" => Ok(BuiltinModel::Heisenberg),
            "m5family" | "m5" => Ok(BuiltinModel::M5Family),
            "s3s3_basis" | "s3s3" => Ok(BuiltinModel::S3S3Basis),
            "s3r2" => Ok(BuiltinModel::S3R2),
            other => Err(Error::InvalidDefinition(format!("unknown builtin model `{other}`"))),
        }
    }
}

/// Immutable invariant-coframe structure: coframe size, the differential of
/// every generator, the Reeb index (always 5), and whether generator 6 is the
/// auxiliary connection form `A`.
///
/// The metric frame is always `e1..e5` (orthonormal) and the compatible
/// endomorphism is the fixed pairing `φ(e₁) = −e₂`, `φ(e₂) = e₁`,
/// `φ(e₃) = −e₄`, `φ(e₄) = e₃`, `φ(e₅) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureDefinition {
    n: u8,
    d: Vec<Form>,
    xi_index: u8,
    has_a: bool,
    family: Option<FamilyInfo>,
}

impl StructureDefinition {
    /// Build a definition from the differentials `de^1 .. de^n` (in order).
    ///
    /// Validates coframe sizes, that `n` is 5 or 6, that the auxiliary flag
    /// fits the coframe, and that `dA` carries no `A`-component. Does not
    /// check integrability; call [`StructureDefinition::validate`].
    pub fn new(n: u8, d: Vec<Form>, has_a: bool, family: Option<FamilyInfo>) -> Result<Self> {
        if n != 5 && n != 6 {
            return Err(Error::InvalidDefinition(format!("coframe size must be 5 or 6, got {n}")));
        }
        if d.len() != n as usize {
            return Err(Error::InvalidDefinition(format!(
                "expected {n} differentials, got {}",
                d.len()
            )));
        }
        if has_a && n != 6 {
            return Err(Error::InvalidDefinition(
                "auxiliary connection form requires a 6-generator coframe".into(),
            ));
        }
        for (k, form) in d.iter().enumerate() {
            if form.coframe_size() != n {
                return Err(Error::CoframeMismatch { left: n, right: form.coframe_size() });
            }
            if !form.is_zero() && form.pure_degree() != Some(2) {
                return Err(Error::InvalidDefinition(format!(
                    "differential of generator {} is not a 2-form",
                    k + 1
                )));
            }
        }
        if has_a && d[5].uses_auxiliary() {
            return Err(Error::InvalidDefinition(
                "the auxiliary curvature dA must not contain A itself".into(),
            ));
        }
        Ok(StructureDefinition { n, d, xi_index: 5, has_a, family })
    }

    /// Coframe size (5 or 6).
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Index of the Reeb covector (always 5).
    pub fn xi_index(&self) -> u8 {
        self.xi_index
    }

    /// Whether generator 6 is the auxiliary connection form.
    pub fn has_auxiliary(&self) -> bool {
        self.has_a
    }

    /// Family provenance, if the definition came from a builtin.
    pub fn family(&self) -> Option<&FamilyInfo> {
        self.family.as_ref()
    }

    /// The differential `de^generator`.
    pub fn differential(&self, generator: u8) -> &Form {
        assert!(
            generator >= 1 && generator <= self.n,
            "generator {generator} outside coframe of size {}",
            self.n
        );
        &self.d[(generator - 1) as usize]
    }

    /// Copy with one differential replaced (drops family provenance, since
    /// the constants no longer follow the family recipe).
    pub fn override_differential(&self, generator: u8, form: Form) -> Result<Self> {
        if generator < 1 || generator > self.n {
            return Err(Error::IndexOutOfRange { index: generator, n: self.n });
        }
        let mut d = self.d.clone();
        d[(generator - 1) as usize] = form;
        StructureDefinition::new(self.n, d, self.has_a, None)
    }

    /// Whether two definitions have identical structure constants (ignores
    /// family provenance).
    pub fn same_constants(&self, other: &StructureDefinition) -> bool {
        self.n == other.n
            && self.has_a == other.has_a
            && self.xi_index == other.xi_index
            && self.d == other.d
    }

    /// Extend the generator differentials to an arbitrary invariant form as
    /// an antiderivation of degree +1.
    pub fn exterior_derivative(&self, w: &Form) -> Result<Form> {
        if w.coframe_size() != self.n {
            return Err(Error::CoframeMismatch { left: self.n, right: w.coframe_size() });
        }
        let mut out = Form::zero(self.n);
        for (idx, coeff) in w.iter() {
            let indices = idx.indices();
            for (p, &i) in indices.iter().enumerate() {
                let rest: Vec<u8> = indices
                    .iter()
                    .enumerate()
                    .filter_map(|(q, &j)| (q != p).then_some(j))
                    .collect();
                let rest_form = Form::monomial(self.n, &rest, Rat::one())?;
                let sign = if p % 2 == 0 { coeff.clone() } else { -coeff.clone() };
                let piece = self.differential(i).wedge(&rest_form)?;
                out = &out + &(&piece * &sign);
            }
        }
        Ok(out)
    }

    /// Check `d²e^μ = 0` for every generator; collects all failures.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        for generator in 1..=self.n {
            let residual = self
                .exterior_derivative(self.differential(generator))
                .expect("differentials share the definition's coframe");
            if !residual.is_zero() {
                failures.push(IntegrabilityFailure { generator, residual });
            }
        }
        ValidationReport { failures }
    }

    /// Error with the first integrability failure, if any.
    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().failures.into_iter().next() {
            None => Ok(()),
            Some(f) => Err(Error::NotIntegrable {
                generator: f.generator,
                residual: f.residual.to_string(),
            }),
        }
    }

    /// Structure constant `C^m_{ij} = de^m(e_i, e_j)`.
    pub fn structure_constant(&self, m: u8, i: u8, j: u8) -> Result<Rat> {
        self.differential(m).evaluate(&[FrameVector::new(i), FrameVector::new(j)])
    }

    /// Bracket coefficients: `[e_i, e_j] = Σ_m c_m e_m` with
    /// `c_m = −de^m(e_i, e_j)` (invariant-form convention).
    pub fn bracket(&self, i: u8, j: u8) -> Result<Vec<Rat>> {
        (1..=self.n).map(|m| self.structure_constant(m, i, j).map(|c| -c)).collect()
    }

    /// Substitute the gauge `A := λ·e₅` and drop the sixth generator.
    ///
    /// Consistent exactly when `λ·de₅ = dA` (then `d² = 0` survives the
    /// substitution); otherwise fails with the offending `λ`.
    pub fn gauge_substitute(&self, lambda: &Rat) -> Result<StructureDefinition> {
        if !self.has_a {
            return Err(Error::Unsupported("gauge substitution needs an auxiliary generator"));
        }
        let required = &self.d[4] * lambda;
        if required != self.d[5] {
            return Err(Error::GaugeInconsistent { lambda: lambda.to_string() });
        }
        let d: Vec<Form> = (1..=5u8)
            .map(|g| substitute_auxiliary(self.differential(g), lambda))
            .collect::<Result<_>>()?;
        StructureDefinition::new(5, d, false, self.family.clone())
    }

    /// The canonical gauge for Sasaki-type parameters (`b = c = 0`, `a = d`):
    /// substitutes `A := a·e₅` and returns the `λ` used.
    pub fn sasaki_gauge(&self) -> Result<(Rat, StructureDefinition)> {
        let Some(FamilyInfo { params: Some(p), .. }) = &self.family else {
            return Err(Error::Unsupported("canonical gauge needs family parameters"));
        };
        if !p.b.is_zero() || !p.c.is_zero() || p.a != p.d {
            return Err(Error::GaugeInconsistent { lambda: p.a.to_string() });
        }
        let lambda = p.a.clone();
        let gauged = self.gauge_substitute(&lambda)?;
        Ok((lambda, gauged))
    }

    /// Re-express the structure constants in a new coframe.
    pub fn change_frame(&self, change: &FrameChange) -> Result<StructureDefinition> {
        match change {
            FrameChange::Rotation { cos, sin } => {
                let one = Rat::one();
                if &(cos * cos) + &(sin * sin) != one {
                    return Err(Error::InvalidDefinition(
                        "rotation needs an exact point on the unit circle (cos² + sin² = 1)"
                            .into(),
                    ));
                }
                let nn = self.n as usize;
                let mut rows = vec![vec![Rat::zero(); nn]; nn];
                for (k, row) in rows.iter_mut().enumerate() {
                    row[k] = Rat::one();
                }
                for &(p, q) in &[(0usize, 1usize), (2, 3)] {
                    rows[p][p] = cos.clone();
                    rows[p][q] = -sin.clone();
                    rows[q][p] = sin.clone();
                    rows[q][q] = cos.clone();
                }
                let scales = vec![Rat::one(); nn];
                self.apply_linear_change(&rows, &scales, self.xi_index, self.has_a)
            }
            FrameChange::Linear { rows, scales, xi_index, has_a } => {
                self.apply_linear_change(rows, scales, *xi_index, *has_a)
            }
        }
    }

    /// Shared engine: new generators `g_i = (1/√s_i)·Σ_j rows[i][j]·e_j`.
    fn apply_linear_change(
        &self,
        rows: &[Vec<Rat>],
        scales: &[Rat],
        xi_index: u8,
        has_a: bool,
    ) -> Result<StructureDefinition> {
        let nn = self.n as usize;
        if rows.len() != nn || rows.iter().any(|r| r.len() != nn) || scales.len() != nn {
            return Err(Error::InvalidDefinition(format!(
                "frame change needs an {nn}×{nn} matrix and {nn} scales"
            )));
        }
        if scales.iter().any(|s| !s.is_positive()) {
            return Err(Error::InvalidDefinition("frame-change scales must be positive".into()));
        }
        let inv = invert_rational(rows).ok_or(Error::FrameChangeSingular)?;
        // rational pushforward of each old generator: e_j ↦ Σ_k inv[j][k]·g_k
        // (the √s_k factors are tracked separately per target monomial)
        let old_to_new: Vec<Form> = (0..nn)
            .map(|j| {
                let mut f = Form::zero(self.n);
                for (k, c) in inv[j].iter().enumerate() {
                    if !c.is_zero() {
                        f = &f + &Form::monomial(self.n, &[(k + 1) as u8], c.clone())?;
                    }
                }
                Ok(f)
            })
            .collect::<Result<_>>()?;
        let mut new_d = Vec::with_capacity(nn);
        for i in 0..nn {
            // dg_i = (1/√s_i)·Σ_j rows[i][j]·de_j, pushed forward to g-monomials
            let mut rational_part = Form::zero(self.n);
            for (j, coeff) in rows[i].iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (idx, c) in self.d[j].iter() {
                    let mut term = Form::scalar(self.n, c * coeff);
                    for src in idx.indices() {
                        term = term.wedge(&old_to_new[(src - 1) as usize])?;
                    }
                    rational_part = &rational_part + &term;
                }
            }
            // attach the radical factor √(Π_t s_t / s_i) per target monomial
            let mut dg = Form::zero(self.n);
            for (idx, rho) in rational_part.iter() {
                let mut radicand = Rat::one() / &scales[i];
                for t in idx.indices() {
                    radicand *= &scales[(t - 1) as usize];
                }
                let Some(factor) = sqrt_rat(&radicand) else {
                    let t = idx.indices();
                    return Err(Error::FrameChangeIrrational {
                        i: (i + 1) as u8,
                        j: t.first().copied().unwrap_or(0),
                        k: t.get(1).copied().unwrap_or(0),
                    });
                };
                dg = &dg + &Form::monomial(self.n, &idx.indices(), rho * factor)?;
            }
            new_d.push(dg);
        }
        let _ = xi_index; // the Reeb index is pinned to 5 in every representation
        StructureDefinition::new(self.n, new_d, has_a, None)
    }

    /// JSON value in the CLI interchange format.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let mut d = BTreeMap::new();
        for g in 1..=self.n {
            d.insert(g.to_string(), FormRepr::try_from(self.differential(g))?);
        }
        let repr = DefinitionRepr {
            n: self.n,
            d,
            xi: self.xi_index,
            has_a: self.has_a,
            family: self.family.as_ref().map(FamilyRepr::from),
        };
        serde_json::to_value(&repr)
            .map_err(|e| Error::InvalidDefinition(format!("serialization failed: {e}")))
    }

    /// Parse and validate the CLI interchange format (no integrability
    /// check; that is a separate failure class).
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let repr: DefinitionRepr = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidDefinition(format!("malformed definition JSON: {e}")))?;
        if repr.xi != 5 {
            return Err(Error::InvalidDefinition(format!(
                "the Reeb index is fixed at 5, got {}",
                repr.xi
            )));
        }
        let mut d = vec![Form::zero(repr.n); repr.n as usize];
        for (key, form_repr) in &repr.d {
            let g: u8 = key.parse().map_err(|_| {
                Error::InvalidDefinition(format!("generator key `{key}` is not a number"))
            })?;
            if g < 1 || g > repr.n {
                return Err(Error::IndexOutOfRange { index: g, n: repr.n });
            }
            d[(g - 1) as usize] = Form::from_repr(form_repr, repr.n)?;
        }
        let family = repr.family.as_ref().map(FamilyInfo::try_from).transpose()?;
        StructureDefinition::new(repr.n, d, repr.has_a, family)
    }
}

/// Outcome of the integrability check: empty failure list means valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<IntegrabilityFailure>,
}

impl ValidationReport {
    /// Whether every generator satisfied `d²e^μ = 0`.
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One generator whose differential fails `d² = 0`, with the residual 3-form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrabilityFailure {
    pub generator: u8,
    pub residual: Form,
}

/// Coframe substitution passed to [`StructureDefinition::change_frame`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameChange {
    /// Simultaneous exact rotation in the (1,2) and (3,4) planes by a
    /// rational point on the unit circle.
    Rotation { cos: Rat, sin: Rat },
    /// General constant invertible substitution
    /// `g_i = (1/√scales[i])·Σ_j rows[i][j]·e_j`. Coefficients of the new
    /// structure constants must come out rational or the change fails.
    Linear { rows: Vec<Vec<Rat>>, scales: Vec<Rat>, xi_index: u8, has_a: bool },
}

/// Construct a builtin model.
pub fn make_builtin(
    model: BuiltinModel,
    params: Option<&ModelParams>,
) -> Result<StructureDefinition> {
    match model {
        BuiltinModel::Heisenberg => {
            let f2 = {
                let e12 = Form::monomial(5, &[1, 2], ratz(2))?;
                let e34 = Form::monomial(5, &[3, 4], ratz(2))?;
                &e12 + &e34
            };
            let d = vec![Form::zero(5), Form::zero(5), Form::zero(5), Form::zero(5), f2];
            StructureDefinition::new(
                5,
                d,
                false,
                Some(FamilyInfo { name: "heisenberg".into(), params: None }),
            )
        }
        BuiltinModel::M5Family => {
            let p = params.ok_or(Error::InvalidDefinition(
                "the parametric family needs parameters (a, b, c, d)".into(),
            ))?;
            let d = m5family_differentials(p)?;
            StructureDefinition::new(
                6,
                d,
                true,
                Some(FamilyInfo { name: "m5".into(), params: Some(p.clone()) }),
            )
        }
        BuiltinModel::S3S3Basis => {
            let m = |idx: &[u8], k: i64| Form::monomial(6, idx, ratz(k));
            let d = vec![
                m(&[2, 5], -1)?,
                m(&[1, 5], 1)?,
                m(&[4, 6], -1)?,
                m(&[3, 6], 1)?,
                m(&[1, 2], -2)?,
                m(&[3, 4], -2)?,
            ];
            StructureDefinition::new(
                6,
                d,
                false,
                Some(FamilyInfo { name: "s3s3".into(), params: None }),
            )
        }
        BuiltinModel::S3R2 => {
            let m = |idx: &[u8], k: i64| Form::monomial(5, idx, ratz(k));
            let d = vec![m(&[2, 5], 1)?, m(&[1, 5], -1)?, Form::zero(5), Form::zero(5), m(&[1, 2], 1)?];
            StructureDefinition::new(
                5,
                d,
                false,
                Some(FamilyInfo { name: "s3r2".into(), params: None }),
            )
        }
    }
}

/// The six differentials of the parametric family, in generator order.
fn m5family_differentials(p: &ModelParams) -> Result<Vec<Form>> {
    let m = |idx: &[u8], c: Rat| Form::monomial(6, idx, c);
    let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
    // de1 = A∧e2 + a·e25 + b·e35 + c·e45
    let d1 = &(&(&m(&[2, 6], -Rat::one())? + &m(&[2, 5], a.clone())?)
        + &m(&[3, 5], b.clone())?)
        + &m(&[4, 5], c.clone())?;
    // de2 = −A∧e1 − a·e15 + b·e45 − c·e35
    let d2 = &(&(&m(&[1, 6], Rat::one())? + &m(&[1, 5], -a.clone())?)
        + &m(&[4, 5], b.clone())?)
        + &m(&[3, 5], -c.clone())?;
    // de3 = A∧e4 − b·e15 + c·e25 + d·e45
    let d3 = &(&(&m(&[4, 6], -Rat::one())? + &m(&[1, 5], -b.clone())?)
        + &m(&[2, 5], c.clone())?)
        + &m(&[4, 5], d.clone())?;
    // de4 = −A∧e3 − c·e15 − b·e25 − d·e35
    let d4 = &(&(&m(&[3, 6], Rat::one())? + &m(&[1, 5], -c.clone())?)
        + &m(&[2, 5], -b.clone())?)
        + &m(&[3, 5], -d.clone())?;
    // de5 = a·e12 + b·(e13+e24) + c·(e14−e23) + d·e34
    let d5 = &(&(&(&(&m(&[1, 2], a.clone())? + &m(&[1, 3], b.clone())?)
        + &m(&[2, 4], b.clone())?)
        + &m(&[1, 4], c.clone())?)
        + &m(&[2, 3], -c.clone())?)
        + &m(&[3, 4], d.clone())?;
    // dA = (ad − b² − c²)·(e12 + e34)
    let lam = p.integrability_scalar();
    let d6 = &m(&[1, 2], lam.clone())? + &m(&[3, 4], lam)?;
    Ok(vec![d1, d2, d3, d4, d5, d6])
}

/// Replace the auxiliary generator by `λ·e₅` inside a form over 6 generators
/// and shrink the coframe to 5.
fn substitute_auxiliary(w: &Form, lambda: &Rat) -> Result<Form> {
    let mut out = Form::zero(5);
    for (idx, coeff) in w.iter() {
        let indices = idx.indices();
        if indices.contains(&6) {
            if indices.contains(&5) {
                continue; // e5 ∧ e5 = 0
            }
            // A is the highest index, so the prefix keeps its order and e5
            // slots in with no extra sign
            let rest: Vec<u8> = indices.iter().copied().filter(|&i| i != 6).collect();
            let mut with_e5 = rest;
            with_e5.push(5);
            out = &out + &Form::monomial(5, &with_e5, coeff * lambda)?;
        } else {
            out = &out + &Form::monomial(5, &indices, coeff.clone())?;
        }
    }
    Ok(out)
}

/// Exact inverse of a rational matrix, if it exists.
fn invert_rational(rows: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                    inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                }
            }
        }
    }
    Some(inv)
}

/// Floor integer square root (Newton iteration).
fn isqrt(v: &BigInt) -> BigInt {
    if v.is_zero() {
        return BigInt::zero();
    }
    let mut x: BigInt = BigInt::one() << v.bits().div_ceil(2);
    loop {
        let y: BigInt = (&x + v / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
fn sqrt_rat(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let num = isqrt(r.numer());
    let den = isqrt(r.denom());
    (&num * &num == *r.numer() && &den * &den == *r.denom()).then(|| Rat::new(num, den))
}

#[derive(Serialize, Deserialize)]
struct DefinitionRepr {
    n: u8,
    d: BTreeMap<String, FormRepr>,
    xi: u8,
    #[serde(rename = "has_A")]
    has_a: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<FamilyRepr>,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<String>,
}

impl From<&FamilyInfo> for FamilyRepr {
    fn from(info: &FamilyInfo) -> Self {
        FamilyRepr {
            name: info.name.clone(),
            a: info.params.as_ref().map(|p| p.a.to_string()),
            b: info.params.as_ref().map(|p| p.b.to_string()),
            c: info.params.as_ref().map(|p| p.c.to_string()),
            d: info.params.as_ref().map(|p| p.d.to_string()),
        }
    }
}

impl TryFrom<&FamilyRepr> for FamilyInfo {
    type Error = Error;

    fn try_from(repr: &FamilyRepr) -> Result<Self> {
        let params = match (&repr.a, &repr.b, &repr.c, &repr.d) {
            (None, None, None, None) => None,
            (Some(a), Some(b), Some(c), Some(d)) => Some(ModelParams {
                a: parse_rat(a)?,
                b: parse_rat(b)?,
                c: parse_rat(c)?,
                d: parse_rat(d)?,
            }),
            _ => {
                return Err(Error::InvalidDefinition(
                    "family parameters must give all of a, b, c, d or none".into(),
                ))
            }
        };
        Ok(FamilyInfo { name: repr.name.clone(), params })
    }
}

/// Parse a rational written as `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| Error::InvalidDefinition(format!("`{s}` is not a rational: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn m5(a: i64, b: i64, c: i64, d: i64) -> StructureDefinition {
        make_builtin(BuiltinModel::M5Family, Some(&ModelParams::from_ints(a, b, c, d))).unwrap()
    }

    fn fundamental(n: u8) -> Form {
        &Form::monomial(n, &[1, 2], ratz(1)).unwrap() + &Form::monomial(n, &[3, 4], ratz(1)).unwrap()
    }

    #[test]
    fn heisenberg_reeb_differential_is_twice_the_fundamental_form() {
        let h = make_builtin(BuiltinModel::Heisenberg, None).unwrap();
        assert_eq!(*h.differential(5), fundamental(5).scaled_int(2));
        for g in 1..=4 {
            assert!(h.differential(g).is_zero());
        }
    }

    #[test]
    fn family_auxiliary_curvature_carries_the_integrability_scalar() {
        let def = m5(2, 0, 0, 2);
        assert_eq!(*def.differential(6), fundamental(6).scaled_int(4));
        let degenerate = m5(0, 0, 0, 0);
        assert!(degenerate.differential(6).is_zero());
        assert!(degenerate.family().unwrap().params.as_ref().unwrap().is_degenerate());
    }

    #[test]
    fn family_requires_parameters() {
        assert!(make_builtin(BuiltinModel::M5Family, None).is_err());
    }

    #[test]
    fn all_builtins_are_integrable() {
        for def in [
            make_builtin(BuiltinModel::Heisenberg, None).unwrap(),
            m5(1, 1, 1, 1),
            m5(2, 0, 0, 2),
            m5(-2, 1, -1, 2),
            make_builtin(BuiltinModel::S3S3Basis, None).unwrap(),
            make_builtin(BuiltinModel::S3R2, None).unwrap(),
        ] {
            assert!(def.validate().is_valid(), "builtin must satisfy d² = 0");
            assert!(def.ensure_valid().is_ok());
        }
    }

    #[test]
    fn zeroed_auxiliary_curvature_breaks_integrability() {
        let def = m5(2, 0, 0, 2).override_differential(6, Form::zero(6)).unwrap();
        let report = def.validate();
        assert!(!report.is_valid());
        assert!(
            report.failures.iter().any(|f| f.generator == 1),
            "d²e1 must pick up the missing dA term"
        );
        assert!(matches!(def.ensure_valid(), Err(Error::NotIntegrable { .. })));
    }

    #[test]
    fn fundamental_form_is_closed_across_the_family() {
        for (a, b, c, d) in [(1, 2, 3, 4), (0, 0, 0, 0), (2, 0, 0, 2), (-1, 1, -2, 2)] {
            let def = m5(a, b, c, d);
            assert!(def.exterior_derivative(&fundamental(6)).unwrap().is_zero());
        }
    }

    #[test]
    fn derivative_is_an_antiderivation() {
        let def = m5(1, 2, 3, 4);
        let alpha = &Form::generator(6, 1).unwrap() + &Form::monomial(6, &[5], rat(1, 3)).unwrap();
        let beta = &Form::monomial(6, &[2, 6], ratz(2)).unwrap()
            - &Form::monomial(6, &[3, 4], ratz(1)).unwrap();
        let lhs = def.exterior_derivative(&alpha.wedge(&beta).unwrap()).unwrap();
        let da_b = def.exterior_derivative(&alpha).unwrap().wedge(&beta).unwrap();
        let a_db = alpha.wedge(&def.exterior_derivative(&beta).unwrap()).unwrap();
        assert_eq!(lhs, &da_b - &a_db, "d(α∧β) = dα∧β − α∧dβ for a 1-form α");
    }

    #[test]
    fn double_derivative_vanishes_on_sample_forms() {
        let def = m5(1, 2, 3, 4);
        for w in [
            Form::generator(6, 1).unwrap(),
            Form::monomial(6, &[2, 5], rat(7, 2)).unwrap(),
            &Form::monomial(6, &[1, 3, 6], ratz(1)).unwrap()
                + &Form::monomial(6, &[2, 4, 5], ratz(-3)).unwrap(),
        ] {
            let dd = def.exterior_derivative(&def.exterior_derivative(&w).unwrap()).unwrap();
            assert!(dd.is_zero(), "d² must vanish, got {dd}");
        }
    }

    #[test]
    fn brackets_follow_the_invariant_form_convention() {
        let h = make_builtin(BuiltinModel::Heisenberg, None).unwrap();
        let br = h.bracket(1, 2).unwrap();
        assert_eq!(br[4], ratz(-2), "[e1, e2] = -2·e5 on the nilpotent model");
        assert!(br[..4].iter().all(Rat::is_zero));
        assert_eq!(h.structure_constant(5, 1, 2).unwrap(), ratz(2));
    }

    #[test]
    fn sasaki_gauge_reduces_the_family_to_heisenberg() {
        let def = m5(2, 0, 0, 2);
        let (lambda, gauged) = def.sasaki_gauge().unwrap();
        assert_eq!(lambda, ratz(2));
        let h = make_builtin(BuiltinModel::Heisenberg, None).unwrap();
        assert!(gauged.same_constants(&h), "gauge A := 2·e5 must land on the nilpotent model");
    }

    #[test]
    fn zero_gauge_reduces_the_degenerate_point_to_s3r2() {
        let def = m5(1, 0, 0, 0);
        let gauged = def.gauge_substitute(&ratz(0)).unwrap();
        let target = make_builtin(BuiltinModel::S3R2, None).unwrap();
        assert!(gauged.same_constants(&target));
    }

    #[test]
    fn inconsistent_gauge_is_rejected() {
        let def = m5(1, 0, 0, 2);
        assert!(matches!(
            def.gauge_substitute(&ratz(1)),
            Err(Error::GaugeInconsistent { .. })
        ));
        assert!(def.sasaki_gauge().is_err(), "a ≠ d has no canonical gauge");
    }

    #[test]
    fn rotations_fix_the_rotation_invariant_models() {
        let h = make_builtin(BuiltinModel::Heisenberg, None).unwrap();
        let identity = h
            .change_frame(&FrameChange::Rotation { cos: ratz(1), sin: ratz(0) })
            .unwrap();
        assert!(identity.same_constants(&h));
        let rotated = h
            .change_frame(&FrameChange::Rotation { cos: rat(3, 5), sin: rat(4, 5) })
            .unwrap();
        assert!(rotated.same_constants(&h), "de5 = 2F is invariant under plane rotations");
    }

    #[test]
    fn rotation_requires_a_unit_circle_point() {
        let h = make_builtin(BuiltinModel::Heisenberg, None).unwrap();
        assert!(h
            .change_frame(&FrameChange::Rotation { cos: rat(1, 2), sin: rat(1, 2) })
            .is_err());
    }

    #[test]
    fn linear_change_takes_the_b_point_to_the_product_of_spheres() {
        let def = m5(0, 1, 0, 0);
        let r = |v: [i64; 6]| v.map(ratz).to_vec();
        let change = FrameChange::Linear {
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
        };
        let changed = def.change_frame(&change).unwrap();
        let target = make_builtin(BuiltinModel::S3S3Basis, None).unwrap();
        assert!(
            changed.same_constants(&target),
            "the √2-normalized substitution must land exactly on the product basis"
        );
    }

    #[test]
    fn singular_and_irrational_changes_are_rejected() {
        let h = make_builtin(BuiltinModel::Heisenberg, None).unwrap();
        let mut rows: Vec<Vec<Rat>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { ratz(1) } else { ratz(0) }).collect())
            .collect();
        rows[0] = rows[1].clone();
        let singular = FrameChange::Linear {
            rows,
            scales: vec![ratz(1); 5],
            xi_index: 5,
            has_a: false,
        };
        assert_eq!(h.change_frame(&singular), Err(Error::FrameChangeSingular));

        let mut scales = vec![ratz(1); 5];
        scales[0] = ratz(2); // g1 = e1/√2 forces a √2 coefficient in dg5
        let identity_rows: Vec<Vec<Rat>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { ratz(1) } else { ratz(0) }).collect())
            .collect();
        let stretched =
            FrameChange::Linear { rows: identity_rows, scales, xi_index: 5, has_a: false };
        assert!(matches!(
            h.change_frame(&stretched),
            Err(Error::FrameChangeIrrational { .. })
        ));
    }

    #[test]
    fn json_roundtrip_preserves_the_definition() {
        let def = m5(2, -1, 1, 2);
        let json = def.to_json().unwrap();
        assert_eq!(json["n"], 6);
        assert_eq!(json["xi"], 5);
        assert_eq!(json["has_A"], true);
        assert_eq!(json["family"]["name"], "m5");
        assert_eq!(json["family"]["a"], "2");
        let back = StructureDefinition::from_json(&json).unwrap();
        assert_eq!(back, def);
    }

    #[test]
    fn json_parsing_rejects_malformed_definitions() {
        let mut json = m5(1, 0, 0, 1).to_json().unwrap();
        json["xi"] = serde_json::json!(4);
        assert!(StructureDefinition::from_json(&json).is_err());

        let mut json = m5(1, 0, 0, 1).to_json().unwrap();
        json["family"]["a"] = serde_json::json!("not-a-number");
        assert!(StructureDefinition::from_json(&json).is_err());

        let mut json = m5(1, 0, 0, 1).to_json().unwrap();
        json["d"]["7"] = json["d"]["6"].clone();
        assert!(StructureDefinition::from_json(&json).is_err());
    }

    #[test]
    fn rational_parsing_accepts_integers_and_fractions() {
        assert_eq!(parse_rat("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("-5").unwrap(), ratz(-5));
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn perfect_square_roots_are_exact() {
        assert_eq!(sqrt_rat(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_rat(&ratz(0)), Some(ratz(0)));
        assert_eq!(sqrt_rat(&ratz(2)), None);
        assert_eq!(sqrt_rat(&ratz(-4)), None);
    }
}

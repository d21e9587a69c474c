//! Exact exterior algebra over an ordered coframe of up to six generators.
//!
//! A [`Form`] is a graded container: a finite sum of basis monomials
//! `e_{i1} ∧ … ∧ e_{ik}` with strictly increasing indices and exact rational
//! coefficients. Generators are numbered `1..=n` with `n ≤ 6`; on the
//! geometric side indices `1..=5` are the orthonormal coframe of the
//! 5-manifold and index `6`, when present, is an auxiliary connection 1-form.
//!
//! Conventions fixed here and relied on by every downstream module:
//!
//! * evaluation is the determinant convention, `(e1∧e2)(e1, e2) = 1`, with no
//!   `1/k!` factor; contracting a monomial with `e_i` carries the sign
//!   `(−1)^{#indices below i}`;
//! * `e1∧e2∧e3∧e4∧e5` is the positive volume form; the restricted dual on
//!   `span(e1..e4)` uses the orientation `e1∧e2∧e3∧e4`;
//! * basis monomials of equal degree are orthonormal for [`Form::inner`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{ratz, Error, Rat, Result};

/// Largest supported coframe (five metric generators plus one auxiliary).
pub const MAX_GENERATORS: u8 = 6;

/// Index of the auxiliary connection 1-form when a coframe has six generators.
pub const AUX_GENERATOR: u8 = 6;

/// A dual frame vector, identified by its generator index `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameVector {
    index: u8,
}

impl FrameVector {
    /// Frame vector dual to generator `index` (validated against the coframe
    /// by the operations that consume it).
    pub fn new(index: u8) -> Self {
        Self { index }
    }

    /// 1-based generator index.
    pub fn index(self) -> u8 {
        self.index
    }
}

/// Strictly increasing multi-index, stored as a bitmask over generators.
///
/// Ordering is lexicographic on the increasing index tuple (the empty tuple,
/// i.e. the scalar monomial, sorts first), which is *not* the numeric order
/// of the masks: `(1,3)` sorts before `(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex(u8);

impl MultiIndex {
    /// Empty multi-index (the scalar monomial).
    pub const SCALAR: MultiIndex = MultiIndex(0);

    /// Build from strictly increasing generator indices.
    pub fn new(indices: &[u8]) -> Result<Self> {
        let mut mask = 0u8;
        let mut prev = 0u8;
        for &i in indices {
            if i == 0 || i > MAX_GENERATORS || i <= prev {
                return Err(Error::NonIncreasingIndex(indices.to_vec()));
            }
            mask |= 1 << (i - 1);
            prev = i;
        }
        Ok(MultiIndex(mask))
    }

    fn from_mask(mask: u8) -> Self {
        MultiIndex(mask)
    }

    /// Number of generators in the monomial.
    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    /// Whether generator `i` occurs.
    pub fn contains(self, i: u8) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    /// The increasing index tuple.
    pub fn indices(self) -> Vec<u8> {
        (1..=MAX_GENERATORS).filter(|&i| self.contains(i)).collect()
    }

    /// Largest generator index occurring, or 0 for the scalar monomial.
    pub fn max_index(self) -> u8 {
        (8 - self.0.leading_zeros()) as u8
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                (false, false) => {}
            }
            match a.trailing_zeros().cmp(&b.trailing_zeros()) {
                Ordering::Equal => {
                    a &= a - 1;
                    b &= b - 1;
                }
                unequal => return unequal,
            }
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which Hodge dual to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HodgeMode {
    /// `*` on `span(e1..e5)`, orientation `e1∧…∧e5`.
    Full5,
    /// `*₄` on `span(e1..e4)`, orientation `e1∧…∧e4`.
    Restricted4,
}

/// Sign of `e_a ∧ e_b` relative to the increasing monomial on `a ∪ b`,
/// for disjoint masks.
fn wedge_sign(a: u8, b: u8) -> i8 {
    let mut sign = 1i8;
    let mut bits = b;
    while bits != 0 {
        let pos = bits.trailing_zeros();
        if (a >> (pos + 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        bits &= bits - 1;
    }
    sign
}

/// Exterior form with exact rational coefficients over a coframe of size `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    n: u8,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl Form {
    /// The zero form over a coframe of `n` generators.
    pub fn zero(n: u8) -> Self {
        assert!((1..=MAX_GENERATORS).contains(&n), "coframe size out of range");
        Form { n, terms: BTreeMap::new() }
    }

    /// A constant (degree-0) form.
    pub fn scalar(n: u8, value: Rat) -> Self {
        let mut f = Form::zero(n);
        f.insert(MultiIndex::SCALAR, value);
        f
    }

    /// The generator 1-form `e_i`.
    pub fn generator(n: u8, i: u8) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut f = Form::zero(n);
        f.insert(MultiIndex::from_mask(1 << (i - 1)), ratz(1));
        Ok(f)
    }

    /// A single monomial `coeff · e_{i1}∧…∧e_{ik}` with strictly increasing
    /// indices.
    pub fn monomial(n: u8, indices: &[u8], coeff: Rat) -> Result<Self> {
        let idx = MultiIndex::new(indices)?;
        if idx.max_index() > n {
            return Err(Error::IndexOutOfRange { index: idx.max_index(), n });
        }
        let mut f = Form::zero(n);
        f.insert(idx, coeff);
        Ok(f)
    }

    /// Coframe size this form lives over.
    pub fn coframe_size(&self) -> u8 {
        self.n
    }

    /// Whether all coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with the given strictly increasing indices.
    pub fn coeff(&self, indices: &[u8]) -> Rat {
        match MultiIndex::new(indices) {
            Ok(idx) => self.terms.get(&idx).cloned().unwrap_or_else(Rat::zero),
            Err(_) => Rat::zero(),
        }
    }

    /// Iterate monomials and coefficients in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, &Rat)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    /// Pure degree if every stored monomial has the same degree
    /// (`None` for genuinely mixed forms; the zero form reports `Some(0)`).
    pub fn pure_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        let first = match degs.next() {
            None => return Some(0),
            Some(d) => d,
        };
        degs.all(|d| d == first).then_some(first)
    }

    /// Whether any monomial involves the auxiliary generator (index 6).
    pub fn uses_auxiliary(&self) -> bool {
        self.terms.keys().any(|m| m.contains(AUX_GENERATOR))
    }

    fn insert(&mut self, idx: MultiIndex, coeff: Rat) {
        if !coeff.is_zero() {
            self.terms.insert(idx, coeff);
        }
    }

    fn accumulate(&mut self, idx: MultiIndex, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn same_coframe(&self, other: &Form) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::CoframeMismatch { left: self.n, right: other.n })
        }
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.same_coframe(other)?;
        let mut out = Form::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.0 & mb.0 != 0 {
                    continue;
                }
                let sign = wedge_sign(ma.0, mb.0);
                let mut c = ca * cb;
                if sign < 0 {
                    c = -c;
                }
                out.accumulate(MultiIndex::from_mask(ma.0 | mb.0), c);
            }
        }
        Ok(out)
    }

    /// Interior product (contraction) `v ⌟ self`.
    pub fn interior(&self, v: FrameVector) -> Result<Form> {
        let i = v.index();
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let bit = 1u8 << (i - 1);
        let below = bit - 1;
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            if m.0 & bit == 0 {
                continue;
            }
            let sign_neg = (m.0 & below).count_ones() % 2 == 1;
            let coeff = if sign_neg { -c.clone() } else { c.clone() };
            out.accumulate(MultiIndex::from_mask(m.0 & !bit), coeff);
        }
        Ok(out)
    }

    /// Evaluate a k-form on k frame vectors:
    /// `w(v1,…,vk) = vk ⌟ … ⌟ v1 ⌟ w` (determinant convention).
    pub fn evaluate(&self, vectors: &[FrameVector]) -> Result<Rat> {
        let mut f = self.clone();
        for &v in vectors {
            f = f.interior(v)?;
        }
        Ok(f.terms.get(&MultiIndex::SCALAR).cloned().unwrap_or_else(Rat::zero))
    }

    /// Hodge dual in the requested mode.
    ///
    /// `Full5` is defined for forms over `span(e1..e5)` (the auxiliary
    /// generator must not occur); `Restricted4` additionally excludes `e5`.
    pub fn hodge(&self, mode: HodgeMode) -> Result<Form> {
        let (full, label) = match mode {
            HodgeMode::Full5 => (0b11111u8, "full5"),
            HodgeMode::Restricted4 => (0b1111u8, "restricted4"),
        };
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            if m.0 & !full != 0 {
                let offending = (1..=MAX_GENERATORS)
                    .find(|&i| m.contains(i) && (1 << (i - 1)) & !full != 0)
                    .unwrap_or(AUX_GENERATOR);
                return Err(Error::HodgeDomain { mode: label, generator: offending });
            }
            let comp = full & !m.0;
            let sign = wedge_sign(m.0, comp);
            let coeff = if sign < 0 { -c.clone() } else { c.clone() };
            out.accumulate(MultiIndex::from_mask(comp), coeff);
        }
        Ok(out)
    }

    /// Inner product of two pure forms of equal degree over `span(e1..e5)`,
    /// with increasing basis monomials orthonormal.
    pub fn inner(&self, other: &Form) -> Result<Rat> {
        self.same_coframe(other)?;
        if self.uses_auxiliary() || other.uses_auxiliary() {
            return Err(Error::AuxiliaryComponent { context: "form inner product" });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Rat::zero());
        }
        match (self.pure_degree(), other.pure_degree()) {
            (Some(a), Some(b)) if a == b => {}
            _ => return Err(Error::MixedDegree),
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            if let Some(d) = other.terms.get(m) {
                acc += c * d;
            }
        }
        Ok(acc)
    }

    /// Multiply every coefficient by an integer.
    pub fn scaled_int(&self, k: i64) -> Form {
        self * &ratz(k)
    }

    /// Serialize into the `{"terms": [...]}` representation.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let repr: FormRepr = self.try_into()?;
        Ok(serde_json::to_value(repr).expect("form serialization is infallible"))
    }

    /// Rebuild a form over a coframe of size `n` from its serialized terms.
    pub fn from_repr(repr: &FormRepr, n: u8) -> Result<Form> {
        let mut f = Form::zero(n);
        for term in &repr.terms {
            let idx = MultiIndex::new(&term.idx)?;
            if idx.max_index() > n {
                return Err(Error::IndexOutOfRange { index: idx.max_index(), n });
            }
            if term.den == 0 {
                return Err(Error::InvalidDefinition("zero denominator in form term".into()));
            }
            if f.terms.contains_key(&idx) {
                return Err(Error::InvalidDefinition(format!(
                    "duplicate multi-index {:?} in form terms",
                    term.idx
                )));
            }
            f.insert(idx, Rat::new(term.num.into(), term.den.into()));
        }
        Ok(f)
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        assert_eq!(self.n, rhs.n, "ambient coframe mismatch in form addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, c.clone());
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        assert_eq!(self.n, rhs.n, "ambient coframe mismatch in form subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            out.insert(*m, -c.clone());
        }
        out
    }
}

impl Mul<&Rat> for &Form {
    type Output = Form;
    fn mul(self, rhs: &Rat) -> Form {
        let mut out = Form::zero(self.n);
        if rhs.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.insert(*m, c * rhs);
        }
        out
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let labels: Vec<String> = m
                .indices()
                .iter()
                .map(|&i| if i == AUX_GENERATOR { "A".to_string() } else { format!("e{i}") })
                .collect();
            if labels.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == ratz(1) {
                write!(f, "{}", labels.join("^"))?;
            } else {
                write!(f, "{mag}*{}", labels.join("^"))?;
            }
        }
        Ok(())
    }
}

/// One serialized monomial: strictly increasing indices and an exact
/// rational coefficient `num/den`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermRepr {
    pub idx: Vec<u8>,
    pub num: i128,
    pub den: i128,
}

/// Serialized form: `{"terms": [...]}`. The ambient coframe size is supplied
/// by the surrounding definition when rebinding.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormRepr {
    pub terms: Vec<TermRepr>,
}

impl TryFrom<&Form> for FormRepr {
    type Error = Error;
    fn try_from(f: &Form) -> Result<FormRepr> {
        let mut terms = Vec::with_capacity(f.terms.len());
        for (m, c) in &f.terms {
            let num = c.numer().to_i128().ok_or_else(|| Error::CoefficientRange(c.to_string()))?;
            let den = c.denom().to_i128().ok_or_else(|| Error::CoefficientRange(c.to_string()))?;
            terms.push(TermRepr { idx: m.indices(), num, den });
        }
        Ok(FormRepr { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn e(i: u8) -> Form {
        Form::generator(5, i).expect("generator in range")
    }

    fn v(i: u8) -> FrameVector {
        FrameVector::new(i)
    }

    fn fundamental() -> Form {
        &e(1).wedge(&e(2)).unwrap() + &e(3).wedge(&e(4)).unwrap()
    }

    #[test]
    fn wedge_of_generators_has_unit_coefficient() {
        let w = e(1).wedge(&e(2)).unwrap();
        assert_eq!(w.coeff(&[1, 2]), ratz(1));
        assert_eq!(w.pure_degree(), Some(2));
    }

    #[test]
    fn wedge_is_graded_commutative_on_generators() {
        let ab = e(1).wedge(&e(2)).unwrap();
        let ba = e(2).wedge(&e(1)).unwrap();
        assert_eq!(&ab + &ba, Form::zero(5), "1-forms anticommute");
    }

    #[test]
    fn fundamental_form_squares_to_twice_the_top_horizontal_monomial() {
        let f2 = fundamental().wedge(&fundamental()).unwrap();
        assert_eq!(f2, Form::monomial(5, &[1, 2, 3, 4], ratz(2)).unwrap());
    }

    #[test]
    fn one_form_squares_to_zero() {
        let w = &(&e(1) + &e(3).scaled_int(2)) - &e(5);
        assert!(w.wedge(&w).unwrap().is_zero());
    }

    #[test]
    fn wedge_rejects_mismatched_coframes() {
        let a = Form::generator(5, 1).unwrap();
        let b = Form::generator(6, 2).unwrap();
        assert_eq!(a.wedge(&b), Err(Error::CoframeMismatch { left: 5, right: 6 }));
    }

    #[test]
    fn evaluation_uses_the_determinant_convention() {
        let w = e(1).wedge(&e(2)).unwrap();
        assert_eq!(w.evaluate(&[v(1), v(2)]).unwrap(), ratz(1));
        assert_eq!(w.evaluate(&[v(2), v(1)]).unwrap(), ratz(-1));
    }

    #[test]
    fn interior_drops_degree_with_position_sign() {
        let w = e(1).wedge(&e(3)).unwrap();
        assert_eq!(w.interior(v(3)).unwrap(), -&e(1));
        assert_eq!(w.interior(v(1)).unwrap(), e(3));
        assert!(e(1).wedge(&e(2)).unwrap().interior(v(3)).unwrap().is_zero());
    }

    #[test]
    fn reeb_contraction_of_eta_wedge_deta_recovers_deta() {
        let eta = e(5);
        let deta = fundamental().scaled_int(2);
        let three = eta.wedge(&deta).unwrap();
        assert_eq!(three.interior(v(5)).unwrap(), deta);
    }

    #[test]
    fn full5_dual_of_e5_is_the_horizontal_volume() {
        assert_eq!(
            e(5).hodge(HodgeMode::Full5).unwrap(),
            Form::monomial(5, &[1, 2, 3, 4], ratz(1)).unwrap()
        );
    }

    #[test]
    fn full5_duals_of_mixed_three_forms_match_the_sign_table() {
        let table: [(&[u8], &[u8], i64); 6] = [
            (&[1, 2, 5], &[3, 4], 1),
            (&[1, 3, 5], &[2, 4], -1),
            (&[1, 4, 5], &[2, 3], 1),
            (&[2, 3, 5], &[1, 4], 1),
            (&[2, 4, 5], &[1, 3], -1),
            (&[3, 4, 5], &[1, 2], 1),
        ];
        for (src, dst, sign) in table {
            let w = Form::monomial(5, src, ratz(1)).unwrap();
            assert_eq!(
                w.hodge(HodgeMode::Full5).unwrap(),
                Form::monomial(5, dst, ratz(sign)).unwrap(),
                "dual of {w}"
            );
        }
    }

    #[test]
    fn full5_is_an_involution_in_every_degree() {
        for mask in 0u8..32 {
            let mut idx = Vec::new();
            for i in 1..=5u8 {
                if mask >> (i - 1) & 1 == 1 {
                    idx.push(i);
                }
            }
            let w = Form::monomial(5, &idx, rat(3, 2)).unwrap();
            let ww = w.hodge(HodgeMode::Full5).unwrap().hodge(HodgeMode::Full5).unwrap();
            assert_eq!(ww, w, "** should fix degree-{} monomials", idx.len());
        }
    }

    #[test]
    fn restricted4_on_two_forms_matches_the_self_duality_split() {
        let e12 = Form::monomial(5, &[1, 2], ratz(1)).unwrap();
        let e34 = Form::monomial(5, &[3, 4], ratz(1)).unwrap();
        assert_eq!(e12.hodge(HodgeMode::Restricted4).unwrap(), e34);
        let f = fundamental();
        assert_eq!(f.hodge(HodgeMode::Restricted4).unwrap(), f, "F is self-dual");
        let anti = &e12 - &e34;
        assert_eq!(anti.hodge(HodgeMode::Restricted4).unwrap(), -&anti, "e12 - e34 is antiself-dual");
    }

    #[test]
    fn hodge_rejects_generators_outside_its_span() {
        let w = Form::monomial(5, &[1, 5], ratz(1)).unwrap();
        assert_eq!(
            w.hodge(HodgeMode::Restricted4),
            Err(Error::HodgeDomain { mode: "restricted4", generator: 5 })
        );
        let aux = Form::monomial(6, &[1, 6], ratz(1)).unwrap();
        assert_eq!(
            aux.hodge(HodgeMode::Full5),
            Err(Error::HodgeDomain { mode: "full5", generator: 6 })
        );
    }

    #[test]
    fn inner_product_counts_orthonormal_monomials() {
        let f = fundamental();
        assert_eq!(f.inner(&f).unwrap(), ratz(2));
        let e12 = Form::monomial(5, &[1, 2], ratz(1)).unwrap();
        let e34 = Form::monomial(5, &[3, 4], ratz(1)).unwrap();
        assert_eq!(e12.inner(&e34).unwrap(), ratz(0));
        assert_eq!(e12.inner(&e12).unwrap(), ratz(1));
    }

    #[test]
    fn inner_product_rejects_mixed_degrees() {
        let mixed = &e(1) + &Form::monomial(5, &[1, 2], ratz(1)).unwrap();
        assert_eq!(mixed.inner(&mixed), Err(Error::MixedDegree));
        assert_eq!(e(1).inner(&Form::monomial(5, &[1, 2], ratz(1)).unwrap()), Err(Error::MixedDegree));
    }

    #[test]
    fn multi_index_order_is_lexicographic_not_numeric() {
        let scalar = MultiIndex::new(&[]).unwrap();
        let m13 = MultiIndex::new(&[1, 3]).unwrap();
        let m2 = MultiIndex::new(&[2]).unwrap();
        let m12 = MultiIndex::new(&[1, 2]).unwrap();
        let m123 = MultiIndex::new(&[1, 2, 3]).unwrap();
        assert!(scalar < m12);
        assert!(m12 < m123, "a tuple precedes its extensions");
        assert!(m13 < m2, "(1,3) sorts before (2) despite the larger mask");
        assert!(m12 < m13);
    }

    #[test]
    fn serialization_roundtrips_terms() {
        let w = &fundamental().scaled_int(2) - &Form::monomial(5, &[1, 2, 3], rat(7, 3)).unwrap();
        let repr: FormRepr = (&w).try_into().unwrap();
        let back = Form::from_repr(&repr, 5).unwrap();
        assert_eq!(back, w);
        let json = w.to_json().unwrap();
        assert_eq!(json["terms"][0]["idx"], serde_json::json!([1, 2]));
    }

    #[test]
    fn deserialization_validates_indices() {
        let repr = FormRepr { terms: vec![TermRepr { idx: vec![2, 1], num: 1, den: 1 }] };
        assert!(matches!(Form::from_repr(&repr, 5), Err(Error::NonIncreasingIndex(_))));
        let repr = FormRepr { terms: vec![TermRepr { idx: vec![1, 6], num: 1, den: 1 }] };
        assert!(matches!(Form::from_repr(&repr, 5), Err(Error::IndexOutOfRange { .. })));
    }
}

//! The Hitchin map, its base in canonical coordinates, and fibre structure.
//!
//! A base point is the canonical tuple of cotangent coordinates of a class
//! under the label's action restricted to the `t`-side, together with a
//! derived vector of invariant-polynomial coefficients. The base is taken to
//! be the image of the map, so every representable point comes from a class.
//!
//! Fibre structure over a base point is described by a [`FiberDescriptor`]
//! (an abelian base, projective and quotient factors), and verified on
//! finite torsion models by [`fiber_count_model`], which counts the fibre
//! two independent ways: orbit enumeration of the stabilizer of the
//! coordinate tuple, and per-factor counting read off the descriptor.

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::actions::{
    burnside_count, canonical_delta, canonical_hyperoct, canonical_sym, ActionSpec,
};
use crate::error::{Error, Result};
use crate::moduli::{descriptor, GroupLabel, HiggsClass, Level};
use crate::rational::ComplexRational;
use crate::torus::TorsionModel;

/// Size guard for the finite fibre model: domain size times stabilizer order.
pub const DEFAULT_MODEL_CAP: u64 = 50_000_000;

/// A point of the Hitchin base in canonical coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HitchinBasePoint {
    label: GroupLabel,
    t_canonical: Vec<ComplexRational>,
    coefficients: Vec<ComplexRational>,
}

impl HitchinBasePoint {
    pub fn label(&self) -> &GroupLabel {
        &self.label
    }

    /// Canonical `t`-tuple: sorted for the linear families, sign-canonical
    /// sorted for the hyperoctahedral ones, even-sign canonical for the
    /// even special orthogonal component.
    pub fn t_canonical(&self) -> &[ComplexRational] {
        &self.t_canonical
    }

    /// Invariant-polynomial coefficients: elementary symmetric functions of
    /// the eigenvalues for the linear families; elementary symmetric
    /// functions of the squared coordinates for the signed ones, with the
    /// product of coordinates appended for the even special orthogonal
    /// component (the pfaffian-type invariant separating even-sign orbits).
    pub fn coefficients(&self) -> &[ComplexRational] {
        &self.coefficients
    }
}

fn canonical_t(label: &GroupLabel, ts: &[ComplexRational]) -> Vec<ComplexRational> {
    match label {
        GroupLabel::Gl { .. }
        | GroupLabel::Sl { .. }
        | GroupLabel::Pgl { .. }
        | GroupLabel::So2 { .. } => canonical_sym(ts),
        GroupLabel::Sp { .. } | GroupLabel::O { .. } => canonical_hyperoct(ts),
        GroupLabel::So { n, w2 } => {
            if n % 2 == 0 && *w2 == 0 {
                canonical_delta(ts)
            } else {
                canonical_hyperoct(ts)
            }
        }
    }
}

fn elementary_symmetric(values: &[ComplexRational]) -> Vec<ComplexRational> {
    let mut e = vec![ComplexRational::zero(); values.len() + 1];
    e[0] = ComplexRational::one();
    for (idx, v) in values.iter().enumerate() {
        for k in (1..=idx + 1).rev() {
            e[k] = &e[k] + &v.mul(&e[k - 1]);
        }
    }
    e.remove(0);
    e
}

/// Eigenvalue multiset of the rank-`n` Higgs field behind a base point:
/// `n'` copies of `t_i / n'` for the linear families, `+-t_i` plus the block
/// zeros for the signed ones.
fn eigenvalues(label: &GroupLabel, ts: &[ComplexRational]) -> Vec<ComplexRational> {
    match label {
        GroupLabel::Gl { .. } | GroupLabel::Sl { .. } | GroupLabel::Pgl { .. } => {
            let n = label.rank();
            let h = label.linear_gcd().unwrap();
            let n_prime = (n / h) as i64;
            let scale = ComplexRational::real(1, n_prime);
            let mut out = Vec::with_capacity(n as usize);
            for t in ts {
                let lambda = t.mul(&scale);
                for _ in 0..n_prime {
                    out.push(lambda.clone());
                }
            }
            out
        }
        GroupLabel::Sp { .. } | GroupLabel::O { .. } | GroupLabel::So { .. } => {
            let zeros = label.stable_block().map(|b| b.k as usize).unwrap_or(0);
            let mut out = Vec::with_capacity(2 * ts.len() + zeros);
            for t in ts {
                out.push(t.clone());
                out.push(-t);
            }
            out.extend(std::iter::repeat_with(ComplexRational::zero).take(zeros));
            out
        }
        GroupLabel::So2 { .. } => {
            let t = &ts[0];
            vec![t.clone(), -t]
        }
    }
}

fn invariant_coefficients(label: &GroupLabel, ts: &[ComplexRational]) -> Vec<ComplexRational> {
    match label {
        GroupLabel::Gl { .. } | GroupLabel::Sl { .. } | GroupLabel::Pgl { .. } => {
            elementary_symmetric(&eigenvalues(label, ts))
        }
        GroupLabel::Sp { .. } | GroupLabel::O { .. } => {
            let squares: Vec<ComplexRational> = ts.iter().map(|t| t.mul(t)).collect();
            elementary_symmetric(&squares)
        }
        GroupLabel::So { n, w2 } => {
            let squares: Vec<ComplexRational> = ts.iter().map(|t| t.mul(t)).collect();
            let mut out = elementary_symmetric(&squares);
            if n % 2 == 0 && *w2 == 0 {
                let pfaffian = ts
                    .iter()
                    .fold(ComplexRational::one(), |acc, t| acc.mul(t));
                out.push(pfaffian);
            }
            out
        }
        GroupLabel::So2 { .. } => vec![ts[0].clone()],
    }
}

/// Builds the base point of a raw coordinate tuple: checks the length and
/// (for the special linear and projective families) the zero-trace
/// constraint, then canonicalizes.
pub fn base_point(label: &GroupLabel, ts: &[ComplexRational]) -> Result<HitchinBasePoint> {
    let desc = descriptor(label, Level::Higgs)?;
    if ts.len() != desc.copies {
        return Err(Error::LengthMismatch {
            expected: desc.copies,
            got: ts.len(),
        });
    }
    if matches!(label, GroupLabel::Sl { .. } | GroupLabel::Pgl { .. }) {
        let sum = ts
            .iter()
            .fold(ComplexRational::zero(), |acc, t| &acc + t);
        if !sum.is_zero() {
            return Err(Error::TraceConstraint {
                sum: sum.to_string(),
            });
        }
    }
    let t_canonical = canonical_t(label, ts);
    let coefficients = invariant_coefficients(label, &t_canonical);
    Ok(HitchinBasePoint {
        label: label.clone(),
        t_canonical,
        coefficients,
    })
}

/// The Hitchin map: forgets everything but the cotangent coordinates.
/// Constant on isomorphism classes by construction.
pub fn hitchin_map(c: &HiggsClass) -> HitchinBasePoint {
    base_point(c.label(), &c.t_values()).expect("class coordinates satisfy the constraints")
}

/// Full characteristic polynomial of the underlying rank-`n` Higgs field:
/// monic, coefficients listed from degree `n-1` down to `0`, where the
/// coefficient of `T^(n-k)` is `(-1)^k e_k` of the eigenvalue multiset.
pub fn char_poly(b: &HitchinBasePoint) -> Vec<ComplexRational> {
    let e = elementary_symmetric(&eigenvalues(&b.label, &b.t_canonical));
    e.into_iter()
        .enumerate()
        .map(|(i, ek)| if i % 2 == 0 { -&ek } else { ek })
        .collect()
}

/// Multiplicity structure of a base point.
///
/// For the signed families the values are identified with their negatives
/// and `m0` counts the zero coordinates; for the linear families `m0` is
/// zero and every value (including zero) forms a group. `flipped` is set
/// only for the even special orthogonal component, when the even-sign
/// canonical tuple is not the all-minima tuple, i.e. the orbit carries the
/// negative pfaffian sign.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpectralPattern {
    pub m0: usize,
    /// Distinct values with multiplicities; signed families report the
    /// non-negative representative of the `{t, -t}` pair.
    pub groups: Vec<(ComplexRational, usize)>,
    pub generic: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub flipped: bool,
}

impl SpectralPattern {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.groups.iter().map(|(_, m)| *m).collect()
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }
}

fn positive_rep(t: &ComplexRational) -> ComplexRational {
    let n = -t;
    if n > *t {
        n
    } else {
        t.clone()
    }
}

/// Groups the canonical coordinates of `b` into its spectral pattern.
pub fn spectral_pattern(b: &HitchinBasePoint) -> SpectralPattern {
    let signed = b.label.is_signed_family();
    if !signed {
        let mut groups: Vec<(ComplexRational, usize)> = Vec::new();
        for t in &b.t_canonical {
            match groups.last_mut() {
                Some((v, m)) if v == t => *m += 1,
                _ => groups.push((t.clone(), 1)),
            }
        }
        let generic = groups.iter().all(|(_, m)| *m == 1);
        return SpectralPattern {
            m0: 0,
            groups,
            generic,
            flipped: false,
        };
    }
    // Signed family: identify t with -t, split off the zeros.
    let mins: Vec<ComplexRational> = b
        .t_canonical
        .iter()
        .map(|t| {
            let n = -t;
            if n < *t {
                n
            } else {
                t.clone()
            }
        })
        .collect();
    let flipped = {
        let mut sorted = mins.clone();
        sorted.sort();
        sorted != b.t_canonical
    };
    let m0 = mins.iter().filter(|t| t.is_zero()).count();
    let mut sorted: Vec<ComplexRational> = mins.into_iter().filter(|t| !t.is_zero()).collect();
    sorted.sort();
    let mut groups: Vec<(ComplexRational, usize)> = Vec::new();
    for t in sorted {
        match groups.last_mut() {
            Some((v, m)) if *v == positive_rep(&t) => *m += 1,
            _ => groups.push((positive_rep(&t), 1)),
        }
    }
    let generic = m0 == 0 && groups.iter().all(|(_, m)| *m == 1);
    SpectralPattern {
        m0,
        groups,
        generic,
        flipped,
    }
}

/// One factor of a Hitchin fibre.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FiberFactor {
    /// Projective space `P^k`.
    #[serde(rename = "P")]
    Projective(usize),
    /// `(P^{k_1} x ... x P^{k_l}) / X[r]`.
    #[serde(rename = "P_quot")]
    ProjectiveQuotient { dims: Vec<usize>, r: u32 },
    /// `X^{m0} / Delta_{m0}`.
    #[serde(rename = "X_mod_delta")]
    DeltaQuotient(usize),
    /// The symmetric product `Sym^m X`, kept composite.
    #[serde(rename = "Sym")]
    SymCurve(usize),
}

impl FiberFactor {
    pub fn dim(&self) -> usize {
        match self {
            FiberFactor::Projective(k) => *k,
            FiberFactor::ProjectiveQuotient { dims, .. } => dims.iter().sum(),
            FiberFactor::DeltaQuotient(m0) => *m0,
            FiberFactor::SymCurve(m) => *m,
        }
    }
}

/// Structure of the Hitchin fibre over a base point: a fibration over the
/// abelian variety `X^base_copies` with the listed fibre factors.
///
/// `r` is the projective-family torsion gcd `gcd(h, m_1, ..., m_l)`;
/// `needs_review` marks the degenerate `r = h` patterns (every multiplicity
/// divisible by `h`), where the reduced translation action is trivial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberDescriptor {
    pub base_copies: usize,
    pub fiber: Vec<FiberFactor>,
    pub r: Option<u32>,
    pub needs_review: bool,
}

impl FiberDescriptor {
    fn plain(base_copies: usize, fiber: Vec<FiberFactor>) -> Self {
        FiberDescriptor {
            base_copies,
            fiber,
            r: None,
            needs_review: false,
        }
    }

    /// Total complex dimension of the fibre: base plus factors.
    pub fn total_dim(&self) -> usize {
        self.base_copies + self.fiber.iter().map(|f| f.dim()).sum::<usize>()
    }
}

#[derive(Serialize, Deserialize)]
struct FiberDescriptorRepr {
    base: (String, usize),
    fiber: Vec<FiberFactor>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    r: Option<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    needs_review: bool,
}

impl Serialize for FiberDescriptor {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        FiberDescriptorRepr {
            base: ("X".to_string(), self.base_copies),
            fiber: self.fiber.clone(),
            r: self.r,
            needs_review: self.needs_review,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FiberDescriptor {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = FiberDescriptorRepr::deserialize(de)?;
        Ok(FiberDescriptor {
            base_copies: repr.base.1,
            fiber: repr.fiber,
            r: repr.r,
            needs_review: repr.needs_review,
        })
    }
}

fn projective_factors(mults: &[usize]) -> Vec<FiberFactor> {
    mults
        .iter()
        .filter(|&&m| m >= 2)
        .map(|&m| FiberFactor::Projective(m - 1))
        .collect()
}

/// Structure of the fibre of the Hitchin map over `b`.
pub fn fiber_descriptor(label: &GroupLabel, b: &HitchinBasePoint) -> Result<FiberDescriptor> {
    if label != &b.label {
        return Err(Error::LabelMismatch {
            left: label.to_string(),
            right: b.label.to_string(),
        });
    }
    let pattern = spectral_pattern(b);
    let mults = pattern.multiplicities();
    let groups = pattern.group_count();
    let desc = descriptor(label, Level::Higgs)?;
    Ok(match label {
        GroupLabel::Gl { .. } => {
            if pattern.generic {
                FiberDescriptor::plain(desc.copies, vec![])
            } else {
                FiberDescriptor::plain(groups, projective_factors(&mults))
            }
        }
        GroupLabel::Sl { .. } => {
            if pattern.generic {
                FiberDescriptor::plain(desc.copies - 1, vec![])
            } else {
                FiberDescriptor::plain(groups - 1, projective_factors(&mults))
            }
        }
        GroupLabel::Pgl { .. } => {
            let h = label.linear_gcd().unwrap();
            let r = mults
                .iter()
                .fold(u64::from(h), |acc, &m| acc.gcd(&(m as u64)))
                as u32;
            if pattern.generic {
                FiberDescriptor {
                    base_copies: desc.copies - 1,
                    fiber: vec![],
                    r: Some(r),
                    needs_review: false,
                }
            } else {
                let fiber = if r == 1 {
                    projective_factors(&mults)
                } else {
                    vec![FiberFactor::ProjectiveQuotient {
                        dims: mults.iter().map(|&m| m - 1).collect(),
                        r,
                    }]
                };
                FiberDescriptor {
                    base_copies: groups - 1,
                    fiber,
                    r: Some(r),
                    needs_review: r == h,
                }
            }
        }
        GroupLabel::Sp { .. } | GroupLabel::O { .. } => {
            signed_descriptor(desc.copies, &pattern)
        }
        GroupLabel::So { n, w2 } => {
            if *n % 2 == 0 && *w2 == 0 {
                if pattern.generic {
                    FiberDescriptor::plain(desc.copies, vec![])
                } else {
                    let mut fiber = Vec::new();
                    if pattern.m0 > 0 {
                        fiber.push(FiberFactor::DeltaQuotient(pattern.m0));
                    }
                    fiber.extend(mults.iter().map(|&m| FiberFactor::SymCurve(m)));
                    FiberDescriptor::plain(0, fiber)
                }
            } else {
                signed_descriptor(desc.copies, &pattern)
            }
        }
        GroupLabel::So2 { .. } => FiberDescriptor::plain(1, vec![]),
    })
}

fn signed_descriptor(copies: usize, pattern: &SpectralPattern) -> FiberDescriptor {
    if pattern.generic {
        return FiberDescriptor::plain(copies, vec![]);
    }
    let mut fiber = Vec::new();
    if pattern.m0 >= 1 {
        fiber.push(FiberFactor::Projective(pattern.m0));
    }
    fiber.extend(projective_factors(&pattern.multiplicities()));
    FiberDescriptor::plain(pattern.group_count(), fiber)
}

use num_integer::Integer;

/// Counts of the fibre over `b` in the `X[N]` torsion model.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiberModelReport {
    #[serde(rename = "N")]
    pub n: u32,
    /// Orbit count of the stabilizer of the coordinate tuple acting on all
    /// admissible x-assignments.
    pub enumerated: u64,
    /// Independent count assembled from the fibre descriptor's factors.
    pub predicted: u64,
}

/// Verifies the fibre structure over `b` on the finite model `X[N]` by
/// counting two independent ways. Both numbers are returned; callers assert
/// equality.
pub fn fiber_count_model(
    label: &GroupLabel,
    b: &HitchinBasePoint,
    n: u32,
) -> Result<FiberModelReport> {
    fiber_count_model_with_cap(label, b, n, DEFAULT_MODEL_CAP)
}

/// [`fiber_count_model`] with an explicit size cap on
/// `|domain| * |stabilizer|`.
pub fn fiber_count_model_with_cap(
    label: &GroupLabel,
    b: &HitchinBasePoint,
    n: u32,
    cap: u64,
) -> Result<FiberModelReport> {
    if label != &b.label {
        return Err(Error::LabelMismatch {
            left: label.to_string(),
            right: b.label.to_string(),
        });
    }
    let enumerated = enumerated_count(label, b, n, cap)?;
    let predicted = predicted_count(label, b, n)?;
    Ok(FiberModelReport {
        n,
        enumerated,
        predicted,
    })
}

/// Orbits of the t-stabilizer on x-assignments.
///
/// The fibre over the orbit of `t_canonical` consists of those classes with a
/// representative carrying exactly this ordered tuple; two x-assignments give
/// the same class iff the stabilizer of the ordered tuple relates them.
fn enumerated_count(label: &GroupLabel, b: &HitchinBasePoint, n: u32, cap: u64) -> Result<u64> {
    let desc = descriptor(label, Level::Higgs)?;
    let m = desc.copies;
    let constrained = matches!(label, GroupLabel::Sl { .. } | GroupLabel::Pgl { .. });
    if let GroupLabel::Pgl { .. } = label {
        let h = label.linear_gcd().unwrap();
        if !n.is_multiple_of(h) {
            return Err(Error::ModelIncompatible(format!(
                "projective fibre model needs h = {h} to divide N = {n}"
            )));
        }
    }
    let model = TorsionModel::new(n)?;
    let points = model.len() as u64;
    let free_slots = if constrained { m.saturating_sub(1) } else { m };
    let domain_size = points.pow(free_slots as u32);

    // Stabilizer of the ordered canonical t-tuple inside the acting group.
    let stabilizer: Vec<_> = desc
        .action
        .elements()?
        .into_iter()
        .filter(|g| {
            g.apply_to_t(&b.t_canonical)
                .map(|image| image == b.t_canonical)
                .unwrap_or(false)
        })
        .collect();
    if domain_size.saturating_mul(stabilizer.len() as u64) > cap {
        return Err(Error::UnsupportedSize(format!(
            "fibre model: {domain_size} assignments x {} stabilizer elements exceeds cap {cap}",
            stabilizer.len()
        )));
    }

    // Precompile the stabilizer to index operations.
    struct Compiled {
        perm: Vec<usize>,
        negate: Vec<bool>,
        shift: u32,
    }
    let compiled: Vec<Compiled> = stabilizer
        .iter()
        .map(|g| {
            Ok(Compiled {
                perm: g.perm().images().to_vec(),
                negate: g.signs().signs().iter().map(|&s| s == -1).collect(),
                shift: model.from_point(g.shift())?,
            })
        })
        .collect::<Result<_>>()?;

    if m == 0 {
        return Ok(1);
    }

    // The domain is indexed by the free slots in mixed radix; for the
    // constrained families the last slot is minus the sum of the others.
    let expand = |idx: u64| -> Vec<u32> {
        let mut tuple = Vec::with_capacity(m);
        let mut rest = idx;
        for _ in 0..free_slots {
            tuple.push((rest % points) as u32);
            rest /= points;
        }
        if constrained {
            let sum = tuple.iter().fold(0u32, |acc, &p| model.add(acc, p));
            tuple.push(model.neg(sum));
        }
        tuple
    };
    let compress = |tuple: &[u32]| -> u64 {
        let mut idx = 0u64;
        for slot in (0..free_slots).rev() {
            idx = idx * points + u64::from(tuple[slot]);
        }
        idx
    };

    let mut uf: Vec<u64> = (0..domain_size).collect();
    fn find(uf: &mut [u64], mut i: u64) -> u64 {
        while uf[i as usize] != i {
            let parent = uf[i as usize];
            uf[i as usize] = uf[parent as usize];
            i = uf[i as usize];
        }
        i
    }
    let mut image = vec![0u32; m];
    for idx in 0..domain_size {
        let tuple = expand(idx);
        for g in &compiled {
            for (j, &x) in tuple.iter().enumerate() {
                let v = if g.negate[j] { model.neg(x) } else { x };
                image[g.perm[j]] = model.add(v, g.shift);
            }
            let other = compress(&image);
            let (ra, rb) = (find(&mut uf, idx), find(&mut uf, other));
            if ra != rb {
                uf[ra.max(rb) as usize] = ra.min(rb);
            }
        }
    }
    let mut count = 0u64;
    for idx in 0..domain_size {
        if find(&mut uf, idx) == idx {
            count += 1;
        }
    }
    Ok(count)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out = 1u64;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Closed-form count of `Sym^m X` over `X[N]`: multisets of size `m` drawn
/// from `N^2` points. Asserted against a Burnside computation in tests.
pub fn sym_product_count(n: u32, m: usize) -> u64 {
    binomial(u64::from(n) * u64::from(n) + m as u64 - 1, m as u64)
}

/// Independent fibre count from the descriptor's factors.
fn predicted_count(label: &GroupLabel, b: &HitchinBasePoint, n: u32) -> Result<u64> {
    let pattern = spectral_pattern(b);
    let mults = pattern.multiplicities();
    match label {
        GroupLabel::Gl { .. } => Ok(mults
            .iter()
            .map(|&m| sym_product_count(n, m))
            .product()),
        GroupLabel::Sl { .. } => {
            let model = TorsionModel::new(n)?;
            let tables: Vec<Vec<u64>> = mults
                .iter()
                .map(|&m| multiset_sum_table(&model, m, None))
                .collect();
            Ok(convolve_to_zero(&model, &tables))
        }
        GroupLabel::Pgl { .. } => {
            let h = label.linear_gcd().unwrap();
            if !n.is_multiple_of(h) {
                return Err(Error::ModelIncompatible(format!(
                    "projective fibre model needs h = {h} to divide N = {n}"
                )));
            }
            let model = TorsionModel::new(n)?;
            let mut fixed_total = 0u64;
            for omega in model.subgroup(h)? {
                let tables: Vec<Vec<u64>> = mults
                    .iter()
                    .map(|&m| multiset_sum_table(&model, m, Some(omega)))
                    .collect();
                fixed_total += convolve_to_zero(&model, &tables);
            }
            let order = u64::from(h) * u64::from(h);
            debug_assert_eq!(fixed_total % order, 0);
            Ok(fixed_total / order)
        }
        GroupLabel::Sp { .. } | GroupLabel::O { .. } => {
            let zero_part = burnside_count(&ActionSpec::Hyperoct { m: pattern.m0 }, n, None)?;
            Ok(zero_part
                * mults
                    .iter()
                    .map(|&m| sym_product_count(n, m))
                    .product::<u64>())
        }
        GroupLabel::So { n: rank, w2 } => {
            let zero_spec = if *rank % 2 == 0 && *w2 == 0 {
                ActionSpec::EvenSign { m: pattern.m0 }
            } else {
                ActionSpec::Hyperoct { m: pattern.m0 }
            };
            let zero_part = burnside_count(&zero_spec, n, None)?;
            Ok(zero_part
                * mults
                    .iter()
                    .map(|&m| sym_product_count(n, m))
                    .product::<u64>())
        }
        GroupLabel::So2 { .. } => Ok(u64::from(n) * u64::from(n)),
    }
}

/// Number of size-`m` multisets over the model with each possible sum,
/// restricted to multisets invariant under translation by `omega` when set.
fn multiset_sum_table(model: &TorsionModel, m: usize, omega: Option<u32>) -> Vec<u64> {
    let points = model.len();
    let mut table = vec![0u64; points as usize];
    for multiset in (0..points).combinations_with_replacement(m) {
        if let Some(w) = omega {
            let mut translated: Vec<u32> = multiset.iter().map(|&p| model.add(p, w)).collect();
            translated.sort_unstable();
            if translated != multiset {
                continue;
            }
        }
        let sum = multiset.iter().fold(0u32, |acc, &p| model.add(acc, p));
        table[sum as usize] += 1;
    }
    table
}

/// Number of ways to pick one entry from each table with sums adding to zero.
fn convolve_to_zero(model: &TorsionModel, tables: &[Vec<u64>]) -> u64 {
    let points = model.len() as usize;
    let mut acc = vec![0u64; points];
    acc[0] = 1;
    for table in tables {
        let mut next = vec![0u64; points];
        for (s1, &count) in acc.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for (s2, &c2) in table.iter().enumerate() {
                if c2 == 0 {
                    continue;
                }
                let s = model.add(s1 as u32, s2 as u32) as usize;
                next[s] += count * c2;
            }
        }
        acc = next;
    }
    acc[0]
}

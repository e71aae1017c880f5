//! Finite groups acting on tuples of cotangent points.
//!
//! Four group kinds act on `(T*X)^m`: the symmetric group permuting slots,
//! the hyperoctahedral group `Gamma_m = (Z_2)^m x| S_m` negating and
//! permuting, its even-sign subgroup `Delta_m`, and `S_m x X[h]` where the
//! torsion subgroup translates every slot by the same point. This module
//! provides element application, canonical forms (one per group kind),
//! stabilizer orders, orbit enumeration over finite domains, and Burnside
//! counts used as an independent counting oracle.
//!
//! Composition convention for `Gamma_m`: an element is `sigma . c` with the
//! sign vector applied before the permutation, matching the semidirect
//! relation `sigma c = (sigma . c) sigma`. Worked example on `m = 2`:
//! applying `signs (-1, +1), perm = swap` to `(p, q)` first negates slot 0
//! and then swaps, giving `(q, -p)`.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ComplexRational;
use crate::torus::{torsion_subgroup, CotangentPoint, CurvePoint, TorsionModel};

/// Cap above which stabilizers are computed by the block formula instead of
/// element enumeration.
pub const ENUMERATION_CAP: u128 = 1_000_000;

/// A permutation of `{0..m-1}`, stored as the image list `i -> images[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection of `{0..m-1}`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return Err(Error::Domain(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(i, j);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img] = i;
        }
        Permutation { images: inv }
    }

    /// `self` after `rhs`: `(self * rhs)(i) = self(rhs(i))`.
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        Permutation {
            images: rhs.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// All `m!` permutations of `{0..m-1}`.
    pub fn all(m: usize) -> Vec<Permutation> {
        (0..m)
            .permutations(m)
            .map(|images| Permutation { images })
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// A vector of signs in `{+1, -1}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignVector {
    signs: Vec<i8>,
}

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Domain(format!("signs must be +-1: {signs:?}")));
        }
        Ok(SignVector { signs })
    }

    pub fn ones(m: usize) -> Self {
        SignVector { signs: vec![1; m] }
    }

    /// Signs from the low `m` bits of `mask` (set bit = flip).
    pub fn from_mask(m: usize, mask: u32) -> Self {
        SignVector {
            signs: (0..m)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Number of `-1` entries.
    pub fn flip_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == -1).count()
    }

    pub fn is_even(&self) -> bool {
        self.flip_count().is_multiple_of(2)
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.signs)
    }
}

/// An element of `Gamma_m`: signs applied first, then the permutation.
///
/// Serializes as `{"signs": [1,-1,...], "perm": [2,0,1]}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct HyperoctahedralElement {
    pub signs: SignVector,
    pub perm: Permutation,
}

impl HyperoctahedralElement {
    pub fn new(signs: SignVector, perm: Permutation) -> Result<Self> {
        if signs.len() != perm.len() {
            return Err(Error::LengthMismatch {
                expected: perm.len(),
                got: signs.len(),
            });
        }
        Ok(HyperoctahedralElement { signs, perm })
    }

    pub fn identity(m: usize) -> Self {
        HyperoctahedralElement {
            signs: SignVector::ones(m),
            perm: Permutation::identity(m),
        }
    }

    /// Membership in `Delta_m`: an even number of `-1` signs.
    pub fn is_even(&self) -> bool {
        self.signs.is_even()
    }
}

/// The group kind acting on length-`m` tuples.
///
/// `SymAndTranslate` additionally translates every slot by a common point of
/// `X[h]` (with zero cotangent coordinate).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionSpec {
    Sym { m: usize },
    Hyperoct { m: usize },
    EvenSign { m: usize },
    SymTranslate { h: u32, m: usize },
}

impl ActionSpec {
    pub fn arity(&self) -> usize {
        match *self {
            ActionSpec::Sym { m }
            | ActionSpec::Hyperoct { m }
            | ActionSpec::EvenSign { m }
            | ActionSpec::SymTranslate { m, .. } => m,
        }
    }

    /// Group order.
    pub fn order(&self) -> u128 {
        let fact = |m: usize| (1..=m as u128).product::<u128>();
        match *self {
            ActionSpec::Sym { m } => fact(m),
            ActionSpec::Hyperoct { m } => (1u128 << m) * fact(m),
            ActionSpec::EvenSign { m } => {
                if m == 0 {
                    1
                } else {
                    (1u128 << (m - 1)) * fact(m)
                }
            }
            ActionSpec::SymTranslate { h, m } => u128::from(h) * u128::from(h) * fact(m),
        }
    }

    /// Every element of the group. Intended for the small groups that occur
    /// in stabilizer filters and Burnside sums.
    pub fn elements(&self) -> Result<Vec<ActionElement>> {
        if self.order() > ENUMERATION_CAP {
            return Err(Error::UnsupportedSize(format!(
                "group of order {} exceeds enumeration cap {ENUMERATION_CAP}",
                self.order()
            )));
        }
        let m = self.arity();
        let perms = Permutation::all(m);
        let mut out = Vec::with_capacity(self.order() as usize);
        match *self {
            ActionSpec::Sym { .. } => {
                for p in perms {
                    out.push(ActionElement::from_permutation(p));
                }
            }
            ActionSpec::Hyperoct { .. } => {
                for mask in 0..1u32 << m {
                    let signs = SignVector::from_mask(m, mask);
                    for p in &perms {
                        out.push(ActionElement::from_signed(signs.clone(), p.clone()));
                    }
                }
            }
            ActionSpec::EvenSign { .. } => {
                for mask in 0..1u32 << m {
                    if mask.count_ones() % 2 != 0 {
                        continue;
                    }
                    let signs = SignVector::from_mask(m, mask);
                    for p in &perms {
                        out.push(ActionElement::from_signed(signs.clone(), p.clone()));
                    }
                }
            }
            ActionSpec::SymTranslate { h, .. } => {
                for shift in torsion_subgroup(h)? {
                    for p in &perms {
                        out.push(ActionElement::from_perm_translation(
                            p.clone(),
                            shift.clone(),
                        ));
                    }
                }
            }
        }
        Ok(out)
    }

    /// A generating set, used by orbit enumeration.
    pub fn generators(&self) -> Result<Vec<ActionElement>> {
        let m = self.arity();
        let mut gens: Vec<ActionElement> = (1..m)
            .map(|i| ActionElement::from_permutation(Permutation::transposition(m, i - 1, i)))
            .collect();
        match *self {
            ActionSpec::Sym { .. } => {}
            ActionSpec::Hyperoct { .. } => {
                if m >= 1 {
                    gens.push(ActionElement::from_signed(
                        SignVector::from_mask(m, 1),
                        Permutation::identity(m),
                    ));
                }
            }
            ActionSpec::EvenSign { .. } => {
                if m >= 2 {
                    gens.push(ActionElement::from_signed(
                        SignVector::from_mask(m, 0b11),
                        Permutation::identity(m),
                    ));
                }
            }
            ActionSpec::SymTranslate { h, .. } => {
                let h = i64::from(h);
                gens.push(ActionElement::from_perm_translation(
                    Permutation::identity(m),
                    CurvePoint::from_fractions(1, h, 0, 1),
                ));
                gens.push(ActionElement::from_perm_translation(
                    Permutation::identity(m),
                    CurvePoint::from_fractions(0, 1, 1, h),
                ));
            }
        }
        Ok(gens)
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ActionSpec::Sym { m } => write!(f, "S_{m}"),
            ActionSpec::Hyperoct { m } => write!(f, "Gamma_{m}"),
            ActionSpec::EvenSign { m } => write!(f, "Delta_{m}"),
            ActionSpec::SymTranslate { h, m } => write!(f, "S_{m} x X[{h}]"),
        }
    }
}

/// A single group element of any supported kind, in the uniform shape
/// "signs, then permutation, then common translation".
///
/// Signs and translations never occur together in the supported groups, so
/// composition stays within this shape.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ActionElement {
    signs: SignVector,
    perm: Permutation,
    shift: CurvePoint,
}

impl ActionElement {
    pub fn identity(m: usize) -> Self {
        ActionElement {
            signs: SignVector::ones(m),
            perm: Permutation::identity(m),
            shift: CurvePoint::origin(),
        }
    }

    pub fn from_permutation(perm: Permutation) -> Self {
        let m = perm.len();
        ActionElement {
            signs: SignVector::ones(m),
            perm,
            shift: CurvePoint::origin(),
        }
    }

    pub fn from_signed(signs: SignVector, perm: Permutation) -> Self {
        debug_assert_eq!(signs.len(), perm.len());
        ActionElement {
            signs,
            perm,
            shift: CurvePoint::origin(),
        }
    }

    pub fn from_hyperoctahedral(g: HyperoctahedralElement) -> Self {
        ActionElement::from_signed(g.signs, g.perm)
    }

    /// Translation of every slot of a length-`m` tuple by `shift`.
    pub fn from_translation(m: usize, shift: CurvePoint) -> Self {
        ActionElement {
            signs: SignVector::ones(m),
            perm: Permutation::identity(m),
            shift,
        }
    }

    pub fn from_perm_translation(perm: Permutation, shift: CurvePoint) -> Self {
        let m = perm.len();
        ActionElement {
            signs: SignVector::ones(m),
            perm,
            shift,
        }
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }

    pub fn signs(&self) -> &SignVector {
        &self.signs
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn shift(&self) -> &CurvePoint {
        &self.shift
    }

    /// `self * rhs`, i.e. `rhs` applied first.
    pub fn compose(&self, rhs: &ActionElement) -> ActionElement {
        debug_assert!(
            (self.signs.flip_count() == 0 && rhs.signs.flip_count() == 0)
                || (self.shift.is_origin() && rhs.shift.is_origin()),
            "signs and translations do not mix in the supported groups"
        );
        let m = self.arity();
        let signs = SignVector::new(
            (0..m)
                .map(|i| self.signs.sign(rhs.perm.image(i)) * rhs.signs.sign(i))
                .collect(),
        )
        .expect("valid signs");
        ActionElement {
            signs,
            perm: self.perm.compose(&rhs.perm),
            shift: &self.shift + &rhs.shift,
        }
    }

    /// Applies the element: slot `i` receives `signs[j] * z[j] + shift` where
    /// `perm(j) = i`.
    pub fn apply(&self, z: &[CotangentPoint]) -> Result<Vec<CotangentPoint>> {
        if z.len() != self.arity() {
            return Err(Error::LengthMismatch {
                expected: self.arity(),
                got: z.len(),
            });
        }
        let shift = CotangentPoint::from_curve(self.shift.clone());
        let mut out = vec![CotangentPoint::origin(); z.len()];
        for (j, p) in z.iter().enumerate() {
            let flipped = if self.signs.sign(j) == -1 { -p } else { p.clone() };
            out[self.perm.image(j)] = &flipped + &shift;
        }
        Ok(out)
    }

    /// Same action restricted to the cotangent coordinates: translations act
    /// trivially, signs negate.
    pub fn apply_to_t(&self, t: &[ComplexRational]) -> Result<Vec<ComplexRational>> {
        if t.len() != self.arity() {
            return Err(Error::LengthMismatch {
                expected: self.arity(),
                got: t.len(),
            });
        }
        let mut out = vec![ComplexRational::zero(); t.len()];
        for (j, v) in t.iter().enumerate() {
            out[self.perm.image(j)] = if self.signs.sign(j) == -1 { -v } else { v.clone() };
        }
        Ok(out)
    }
}

/// Values on which sign flips act: ordered, negatable, possibly self-negative.
pub trait SignedValue: Clone + Ord {
    fn negated(&self) -> Self;

    fn is_self_negative(&self) -> bool {
        self.negated() == *self
    }
}

impl SignedValue for CotangentPoint {
    fn negated(&self) -> Self {
        -self
    }
}

impl SignedValue for ComplexRational {
    fn negated(&self) -> Self {
        -self
    }
}

/// Canonical form for the symmetric action: ascending sort.
pub fn canonical_sym<T: Ord + Clone>(z: &[T]) -> Vec<T> {
    let mut out = z.to_vec();
    out.sort();
    out
}

/// Canonical form for `Gamma_m`: replace each entry by the smaller of
/// `{z, -z}`, then sort.
pub fn canonical_hyperoct<T: SignedValue>(z: &[T]) -> Vec<T> {
    let mut out: Vec<T> = z.iter().map(|p| min_rep(p)).collect();
    out.sort();
    out
}

fn min_rep<T: SignedValue>(p: &T) -> T {
    let n = p.negated();
    if n < *p {
        n
    } else {
        p.clone()
    }
}

/// Canonical form for `Delta_m`, the even-sign subgroup.
///
/// Start from the all-minima tuple of [`canonical_hyperoct`] with `k` strict
/// flips. If `k` is even, or some coordinate is self-negative (a free flip
/// fixes the parity), the all-minima sort is already in the orbit. Otherwise
/// exactly one coordinate must stay un-flipped; the canonical form is the
/// lexicographically least sort over the choice of that coordinate.
pub fn canonical_delta<T: SignedValue>(z: &[T]) -> Vec<T> {
    let mins: Vec<T> = z.iter().map(|p| min_rep(p)).collect();
    let strict_flips = z
        .iter()
        .zip(&mins)
        .filter(|(orig, min)| *min != *orig)
        .count();
    if strict_flips % 2 == 0 || z.iter().any(|p| p.is_self_negative()) {
        let mut out = mins;
        out.sort();
        return out;
    }
    let mut best: Option<Vec<T>> = None;
    for i in 0..z.len() {
        let mut candidate = mins.clone();
        candidate[i] = {
            let n = z[i].negated();
            if n > z[i] {
                n
            } else {
                z[i].clone()
            }
        };
        candidate.sort();
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    best.expect("m >= 1 when parity is odd")
}

/// Canonical form for `S_m x X[h]`: least sorted tuple over all `h^2`
/// translates by points of `X[h]`.
pub fn canonical_translate(z: &[CotangentPoint], h: u32) -> Result<Vec<CotangentPoint>> {
    let mut best: Option<Vec<CotangentPoint>> = None;
    for omega in torsion_subgroup(h)? {
        let shift = CotangentPoint::from_curve(omega);
        let translated: Vec<CotangentPoint> = z.iter().map(|p| p + &shift).collect();
        let candidate = canonical_sym(&translated);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    Ok(best.unwrap_or_default())
}

/// Canonical form under an arbitrary supported action.
pub fn canonical_form(spec: &ActionSpec, z: &[CotangentPoint]) -> Result<Vec<CotangentPoint>> {
    if z.len() != spec.arity() {
        return Err(Error::LengthMismatch {
            expected: spec.arity(),
            got: z.len(),
        });
    }
    Ok(match *spec {
        ActionSpec::Sym { .. } => canonical_sym(z),
        ActionSpec::Hyperoct { .. } => canonical_hyperoct(z),
        ActionSpec::EvenSign { .. } => canonical_delta(z),
        ActionSpec::SymTranslate { h, .. } => canonical_translate(z, h)?,
    })
}

/// The full orbit of `z`, sorted and deduplicated.
pub fn orbit_of(spec: &ActionSpec, z: &[CotangentPoint]) -> Result<Vec<Vec<CotangentPoint>>> {
    let mut orbit = Vec::new();
    for g in spec.elements()? {
        orbit.push(g.apply(z)?);
    }
    orbit.sort();
    orbit.dedup();
    Ok(orbit)
}

/// How an orbit count was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Burnside,
    Enumeration,
}

/// Result of an orbit count or stabilizer computation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitReport {
    pub orbit_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer_order: Option<u64>,
    pub method: CountMethod,
}

/// Order of the stabilizer of `z`, by element enumeration. Errors when the
/// group order exceeds [`ENUMERATION_CAP`].
pub fn stabilizer_order_enumerated(spec: &ActionSpec, z: &[CotangentPoint]) -> Result<u64> {
    let mut count = 0u64;
    for g in spec.elements()? {
        if g.apply(z)? == z {
            count += 1;
        }
    }
    Ok(count)
}

/// Order of the stabilizer of `z` by the block-multiplicity formula.
///
/// Sym: product of `mult!` over equal-value blocks. Gamma: self-negative
/// values contribute `2^c c!`; a pair class `{v, -v}` with `a + b` entries
/// contributes `(a + b)!` (a Vandermonde identity collapses the sign
/// choices). Delta: the Gamma count, halved exactly when a self-negative
/// entry provides odd elements. Translations: the number of `omega` with
/// `z + omega` a permutation of `z`, times the Sym factor.
pub fn stabilizer_order_formula(spec: &ActionSpec, z: &[CotangentPoint]) -> Result<u64> {
    if z.len() != spec.arity() {
        return Err(Error::LengthMismatch {
            expected: spec.arity(),
            got: z.len(),
        });
    }
    let factorial = |k: u64| (1..=k).product::<u64>();
    let sym_factor = |z: &[CotangentPoint]| -> u64 {
        let mut sorted = z.to_vec();
        sorted.sort();
        sorted
            .chunk_by(|a, b| a == b)
            .map(|c| factorial(c.len() as u64))
            .product()
    };
    match *spec {
        ActionSpec::Sym { .. } => Ok(sym_factor(z)),
        ActionSpec::Hyperoct { .. } | ActionSpec::EvenSign { .. } => {
            let mut classes: HashMap<CotangentPoint, u64> = HashMap::new();
            for p in z {
                *classes.entry(min_rep(p)).or_insert(0) += 1;
            }
            let mut order: u64 = 1;
            let mut has_self_negative = false;
            for (rep, count) in &classes {
                if rep.is_self_negative() {
                    has_self_negative = true;
                    order *= (1u64 << count) * factorial(*count);
                } else {
                    order *= factorial(*count);
                }
            }
            if matches!(spec, ActionSpec::EvenSign { .. }) && has_self_negative {
                order /= 2;
            }
            Ok(order)
        }
        ActionSpec::SymTranslate { h, .. } => {
            let mut sorted = z.to_vec();
            sorted.sort();
            let mut good = 0u64;
            for omega in torsion_subgroup(h)? {
                let shift = CotangentPoint::from_curve(omega);
                let mut translated: Vec<CotangentPoint> = z.iter().map(|p| p + &shift).collect();
                translated.sort();
                if translated == sorted {
                    good += 1;
                }
            }
            Ok(good * sym_factor(z))
        }
    }
}

/// Order of the stabilizer `{g : g z = z}`. Uses enumeration while the group
/// order is at most [`ENUMERATION_CAP`], the block formula beyond that.
pub fn stabilizer_order(spec: &ActionSpec, z: &[CotangentPoint]) -> Result<u64> {
    if spec.order() <= ENUMERATION_CAP {
        stabilizer_order_enumerated(spec, z)
    } else {
        stabilizer_order_formula(spec, z)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri.max(rj)] = ri.min(rj);
        }
    }
}

/// Partitions a finite, action-closed domain into orbits.
///
/// Applies the generating set of `spec` and joins tuples by union-find.
/// The representatives returned are the minimum of each orbit, sorted, so
/// the partition is deterministic. A tuple whose image leaves the domain
/// makes the call fail, naming the escaping element.
pub fn orbit_enumerate(
    spec: &ActionSpec,
    domain: &[Vec<CotangentPoint>],
) -> Result<(OrbitReport, Vec<Vec<CotangentPoint>>)> {
    let index: HashMap<&[CotangentPoint], usize> = domain
        .iter()
        .enumerate()
        .map(|(i, z)| (z.as_slice(), i))
        .collect();
    let generators = spec.generators()?;
    let mut uf = UnionFind::new(domain.len());
    for (i, z) in domain.iter().enumerate() {
        for g in &generators {
            let image = g.apply(z)?;
            match index.get(image.as_slice()) {
                Some(&j) => uf.union(i, j),
                None => {
                    let parts = image.iter().map(|p| p.to_string()).join(", ");
                    return Err(Error::DomainNotClosed {
                        element: format!("[{parts}]"),
                    });
                }
            }
        }
    }
    let mut reps: HashMap<usize, &Vec<CotangentPoint>> = HashMap::new();
    for (i, z) in domain.iter().enumerate() {
        let root = uf.find(i);
        match reps.entry(root) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                if z < *e.get() {
                    e.insert(z);
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(z);
            }
        }
    }
    let mut representatives: Vec<Vec<CotangentPoint>> = reps.into_values().cloned().collect();
    representatives.sort();
    let report = OrbitReport {
        orbit_count: representatives.len() as u64,
        stabilizer_order: None,
        method: CountMethod::Enumeration,
    };
    Ok((report, representatives))
}

/// Burnside count of orbits on `X[N]^m`-valued tuples with the cotangent
/// coordinates frozen to `t_pattern` (all zero when absent):
/// `(1/|G|) sum_g |Fix(g)|`.
///
/// This is the crate's independent counting oracle; it must agree with
/// [`orbit_enumerate`] wherever both run.
pub fn burnside_count(
    spec: &ActionSpec,
    n: u32,
    t_pattern: Option<&[ComplexRational]>,
) -> Result<u64> {
    let m = spec.arity();
    let ts: Vec<ComplexRational> = match t_pattern {
        Some(p) => {
            if p.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    got: p.len(),
                });
            }
            p.to_vec()
        }
        None => vec![ComplexRational::zero(); m],
    };
    if let ActionSpec::SymTranslate { h, .. } = *spec {
        if !n.is_multiple_of(h) {
            return Err(Error::ModelIncompatible(format!(
                "translation level {h} does not divide the model level {n}"
            )));
        }
    }
    let model = TorsionModel::new(n)?;
    let tuples = (model.len() as u64).pow(m as u32);
    if tuples.saturating_mul(spec.order() as u64) > 200_000_000 {
        return Err(Error::UnsupportedSize(format!(
            "Burnside sum over {tuples} tuples x {} elements",
            spec.order()
        )));
    }
    // Only the stabilizer of the frozen t-tuple acts on the x-assignments;
    // the t-condition is independent of x: slot perm(j) must receive
    // signs[j] * t[j] back unchanged.
    let stabilizer: Vec<ActionElement> = spec
        .elements()?
        .into_iter()
        .filter(|g| {
            (0..m).all(|j| {
                let image = if g.signs.sign(j) == -1 {
                    -&ts[j]
                } else {
                    ts[j].clone()
                };
                image == ts[g.perm.image(j)]
            })
        })
        .collect();
    let mut total_fixed: u64 = 0;
    for g in &stabilizer {
        let shift = model.from_point(g.shift())?;
        total_fixed += count_fixed_x(&model, g, shift, m);
    }
    let order = stabilizer.len() as u64;
    debug_assert_eq!(total_fixed % order, 0, "Burnside sum must divide evenly");
    Ok(total_fixed / order)
}

fn count_fixed_x(model: &TorsionModel, g: &ActionElement, shift: u32, m: usize) -> u64 {
    let points = model.len();
    let mut tuple = vec![0u32; m];
    let mut fixed = 0u64;
    loop {
        let is_fixed = (0..m).all(|j| {
            let mut v = tuple[j];
            if g.signs.sign(j) == -1 {
                v = model.neg(v);
            }
            model.add(v, shift) == tuple[g.perm.image(j)]
        });
        if is_fixed {
            fixed += 1;
        }
        // Odometer increment over the m-fold product.
        let mut k = 0;
        loop {
            if k == m {
                return fixed;
            }
            tuple[k] += 1;
            if tuple[k] < points {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
    }
}

//! Points of the Higgs-bundle moduli spaces as canonicalized classes.
//!
//! A class is a group label together with a tuple of cotangent points held in
//! the canonical form of the label's finite group action. The label fixes the
//! tuple length, the action, the linear constraints (special linear and
//! projective labels), and the forced stable block (orthogonal and special
//! orthogonal labels). Bundle-level classes are the same data with the
//! cotangent coordinates forgotten.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::actions::{canonical_form, ActionSpec};
use crate::error::{Error, Result};
use crate::rational::ComplexRational;
use crate::torus::{CotangentPoint, CurvePoint};

/// The four 2-torsion points, in the fixed catalog order `J0..J3`.
pub fn two_torsion_catalog() -> [CurvePoint; 4] {
    [
        CurvePoint::origin(),
        CurvePoint::from_fractions(1, 2, 0, 1),
        CurvePoint::from_fractions(0, 1, 1, 2),
        CurvePoint::from_fractions(1, 2, 1, 2),
    ]
}

/// Number of components with a stable summand of rank `k`: `(1, 4, 6, 4, 1)`.
const BLOCK_COUNTS: [u8; 5] = [1, 4, 6, 4, 1];

/// The six unordered pairs of distinct 2-torsion indices, in lexicographic
/// order; component index `a` for `k = 2` picks one.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A structure group together with its topological data.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GroupLabel {
    /// General linear group of rank `n`, degree `d`.
    Gl { n: u32, d: i64 },
    /// Special linear group of rank `n` (trivial determinant, traceless).
    Sl { n: u32 },
    /// Projective linear group of rank `n`; `d` is a chosen representative of
    /// the degree class mod `n`.
    Pgl { n: u32, d: i64 },
    /// Symplectic group of rank `2m`.
    Sp { m: u32 },
    /// Orthogonal group of rank `n`, component `(k, a)`.
    O { n: u32, k: u8, a: u8 },
    /// Special orthogonal group of rank `n >= 3` with Stiefel-Whitney class.
    So { n: u32, w2: u8 },
    /// The rank-2 special orthogonal family, indexed by the degree `d` of the
    /// underlying line bundle; each component is a copy of `T*X`. This family
    /// sits outside the component tables of the larger groups.
    So2 { d: i64 },
}

impl GroupLabel {
    /// Checks the component invariants.
    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupLabel::Gl { n, .. } | GroupLabel::Sl { n } | GroupLabel::Pgl { n, .. } => {
                if n == 0 {
                    return Err(Error::InvalidComponent("rank must be >= 1".into()));
                }
            }
            GroupLabel::Sp { m } => {
                if m == 0 {
                    return Err(Error::InvalidComponent("Sp rank must be >= 2".into()));
                }
            }
            GroupLabel::O { n, k, a } => {
                if n == 0 {
                    return Err(Error::InvalidComponent("rank must be >= 1".into()));
                }
                if k > 4 || u32::from(k) > n || !(n - u32::from(k)).is_multiple_of(2) {
                    return Err(Error::InvalidComponent(format!(
                        "O({n}) has no component with k = {k}"
                    )));
                }
                if a >= BLOCK_COUNTS[k as usize] {
                    return Err(Error::InvalidComponent(format!(
                        "O({n}) component index a = {a} out of range for k = {k}"
                    )));
                }
            }
            GroupLabel::So { n, w2 } => {
                if n == 0 || n == 2 {
                    return Err(Error::InvalidComponent(
                        "SO(n) label requires n >= 3; use the SO(2) family".into(),
                    ));
                }
                if w2 > 1 {
                    return Err(Error::InvalidComponent("w2 must be 0 or 1".into()));
                }
                if n == 1 && w2 == 1 {
                    return Err(Error::InvalidComponent("SO(1) with w2 = 1 is empty".into()));
                }
            }
            GroupLabel::So2 { .. } => {}
        }
        Ok(())
    }

    /// `h = gcd(n, d)` for the linear families.
    pub fn linear_gcd(&self) -> Option<u32> {
        match *self {
            GroupLabel::Gl { n, d } | GroupLabel::Pgl { n, d } => {
                Some(i64::from(n).gcd(&d) as u32)
            }
            GroupLabel::Sl { n } => Some(n),
            _ => None,
        }
    }

    /// The forced stable block of the component, when the family has one.
    pub fn stable_block(&self) -> Option<BlockTag> {
        match *self {
            GroupLabel::O { k, a, .. } => Some(BlockTag { k, a }),
            GroupLabel::So { n, w2 } => match (n % 2, w2) {
                (1, 0) => Some(BlockTag { k: 1, a: 0 }),
                (1, 1) => Some(BlockTag { k: 3, a: 0 }),
                (0, 1) => Some(BlockTag { k: 4, a: 0 }),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            GroupLabel::Gl { .. } => "GL",
            GroupLabel::Sl { .. } => "SL",
            GroupLabel::Pgl { .. } => "PGL",
            GroupLabel::Sp { .. } => "Sp",
            GroupLabel::O { .. } => "O",
            GroupLabel::So { .. } | GroupLabel::So2 { .. } => "SO",
        }
    }

    /// Rank of the standard representation.
    pub fn rank(&self) -> u32 {
        match *self {
            GroupLabel::Gl { n, .. } | GroupLabel::Sl { n } | GroupLabel::Pgl { n, .. } => n,
            GroupLabel::Sp { m } => 2 * m,
            GroupLabel::O { n, .. } | GroupLabel::So { n, .. } => n,
            GroupLabel::So2 { .. } => 2,
        }
    }

    /// True for the families whose points carry hyperoctahedral (or even-sign)
    /// identifications: Sp, O and SO with `n >= 3`.
    pub fn is_signed_family(&self) -> bool {
        matches!(
            self,
            GroupLabel::Sp { .. } | GroupLabel::O { .. } | GroupLabel::So { .. }
        )
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupLabel::Gl { n, d } => write!(f, "GL({n}, d={d})"),
            GroupLabel::Sl { n } => write!(f, "SL({n})"),
            GroupLabel::Pgl { n, d } => write!(f, "PGL({n}, d={d})"),
            GroupLabel::Sp { m } => write!(f, "Sp({})", 2 * m),
            GroupLabel::O { n, k, a } => write!(f, "O({n}, ({k},{a}))"),
            GroupLabel::So { n, w2 } => write!(f, "SO({n}, w2={w2})"),
            GroupLabel::So2 { d } => write!(f, "SO(2, d={d})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LabelRepr {
    family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w2: Option<u8>,
}

impl Serialize for GroupLabel {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut repr = LabelRepr {
            family: self.family_name().to_string(),
            n: None,
            d: None,
            m: None,
            k: None,
            a: None,
            w2: None,
        };
        match *self {
            GroupLabel::Gl { n, d } | GroupLabel::Pgl { n, d } => {
                repr.n = Some(n);
                repr.d = Some(d);
            }
            GroupLabel::Sl { n } => repr.n = Some(n),
            GroupLabel::Sp { m } => repr.m = Some(m),
            GroupLabel::O { n, k, a } => {
                repr.n = Some(n);
                repr.k = Some(k);
                repr.a = Some(a);
            }
            GroupLabel::So { n, w2 } => {
                repr.n = Some(n);
                repr.w2 = Some(w2);
            }
            GroupLabel::So2 { d } => {
                repr.n = Some(2);
                repr.d = Some(d);
            }
        }
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GroupLabel {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = LabelRepr::deserialize(de)?;
        let need_n = || repr.n.ok_or_else(|| D::Error::custom("missing field `n`"));
        let label = match repr.family.as_str() {
            "GL" => GroupLabel::Gl {
                n: need_n()?,
                d: repr.d.unwrap_or(0),
            },
            "SL" => GroupLabel::Sl { n: need_n()? },
            "PGL" => GroupLabel::Pgl {
                n: need_n()?,
                d: repr.d.unwrap_or(0),
            },
            "Sp" => GroupLabel::Sp {
                m: repr.m.ok_or_else(|| D::Error::custom("missing field `m`"))?,
            },
            "O" => GroupLabel::O {
                n: need_n()?,
                k: repr.k.ok_or_else(|| D::Error::custom("missing field `k`"))?,
                a: repr.a.unwrap_or(0),
            },
            "SO" => {
                let n = need_n()?;
                if n == 2 {
                    GroupLabel::So2 {
                        d: repr.d.unwrap_or(0),
                    }
                } else {
                    GroupLabel::So {
                        n,
                        w2: repr.w2.unwrap_or(0),
                    }
                }
            }
            other => return Err(D::Error::custom(format!("unknown family {other:?}"))),
        };
        label.validate().map_err(|e| D::Error::custom(e.to_string()))?;
        Ok(label)
    }
}

/// The stable block of an orthogonal component: `k` 2-torsion line bundles.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct BlockTag {
    pub k: u8,
    pub a: u8,
}

impl BlockTag {
    /// The 2-torsion points underlying the block's line bundles.
    pub fn lines(&self) -> Vec<CurvePoint> {
        let j = two_torsion_catalog();
        match self.k {
            0 => vec![],
            1 => vec![j[self.a as usize].clone()],
            2 => {
                let (i0, i1) = PAIRS[self.a as usize];
                vec![j[i0].clone(), j[i1].clone()]
            }
            3 => (0..4)
                .filter(|&i| i != self.a as usize)
                .map(|i| j[i].clone())
                .collect(),
            4 => j.to_vec(),
            _ => unreachable!("validated block"),
        }
    }
}

/// Bundle vs Higgs level of a moduli description.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Bundle,
    Higgs,
}

/// How a moduli space is presented as a finite quotient.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuliDescriptor {
    /// Number of cotangent-bundle (or curve) copies `m'`.
    pub copies: usize,
    /// The finite group action identifying tuples.
    pub action: ActionSpec,
    /// Effective complex dimension: `2 m'` at Higgs level and `m'` at bundle
    /// level, minus the two (resp. one) cut out by the sum constraints of the
    /// special linear and projective families.
    pub dim: usize,
    pub level: Level,
    /// Human-readable quotient formula.
    pub presentation: String,
}

/// Quotient description of the moduli space of the given label and level.
pub fn descriptor(label: &GroupLabel, level: Level) -> Result<ModuliDescriptor> {
    label.validate()?;
    let higgs = matches!(level, Level::Higgs);
    let space = if higgs { "T*X" } else { "X" };
    let (copies, action, constrained, presentation) = match *label {
        GroupLabel::Gl { .. } => {
            let h = label.linear_gcd().unwrap() as usize;
            (
                h,
                ActionSpec::Sym { m: h },
                false,
                format!("Sym^{h} {space}"),
            )
        }
        GroupLabel::Sl { n } => {
            let n = n as usize;
            (
                n,
                ActionSpec::Sym { m: n },
                true,
                format!("({space})^{} / S_{n}", n - 1),
            )
        }
        GroupLabel::Pgl { .. } => {
            let h = label.linear_gcd().unwrap();
            (
                h as usize,
                ActionSpec::SymTranslate { h, m: h as usize },
                true,
                format!("({space})^{} / (S_{h} x X[{h}])", h - 1),
            )
        }
        GroupLabel::Sp { m } => {
            let m = m as usize;
            (
                m,
                ActionSpec::Hyperoct { m },
                false,
                format!("Sym^{m} ({space}/Z_2)"),
            )
        }
        GroupLabel::O { n, k, .. } => {
            let mk = ((n - u32::from(k)) / 2) as usize;
            (
                mk,
                ActionSpec::Hyperoct { m: mk },
                false,
                format!("Sym^{mk} ({space}/Z_2)"),
            )
        }
        GroupLabel::So { n, w2 } => {
            let m = (n / 2) as usize;
            match (n % 2, w2) {
                (0, 0) => (
                    m,
                    ActionSpec::EvenSign { m },
                    false,
                    format!("({space})^{m} / Delta_{m}"),
                ),
                (1, 0) => (
                    m,
                    ActionSpec::Hyperoct { m },
                    false,
                    format!("Sym^{m} ({space}/Z_2)"),
                ),
                (1, 1) => (
                    m - 1,
                    ActionSpec::Hyperoct { m: m - 1 },
                    false,
                    format!("Sym^{} ({space}/Z_2)", m - 1),
                ),
                (0, 1) => (
                    m - 2,
                    ActionSpec::Hyperoct { m: m - 2 },
                    false,
                    format!("Sym^{} ({space}/Z_2)", m - 2),
                ),
                _ => unreachable!("validated w2"),
            }
        }
        GroupLabel::So2 { .. } => (1, ActionSpec::Sym { m: 1 }, false, space.to_string()),
    };
    let per_copy = if higgs { 2 } else { 1 };
    let dim = per_copy * copies - if constrained { per_copy } else { 0 };
    Ok(ModuliDescriptor {
        copies,
        action,
        dim,
        level,
        presentation,
    })
}

/// A point of the Higgs moduli space: a canonical tuple plus the forced
/// stable block.
///
/// JSON shape:
/// `{"group": {...}, "block": {"k":4,"a":0}, "points": [{"x":[..],"t":[..]}, ..]}`
/// with `block` omitted when the family has none.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HiggsClass {
    label: GroupLabel,
    block: Option<BlockTag>,
    points: Vec<CotangentPoint>,
}

impl HiggsClass {
    pub fn label(&self) -> &GroupLabel {
        &self.label
    }

    pub fn block(&self) -> Option<&BlockTag> {
        self.block.as_ref()
    }

    /// The canonical tuple.
    pub fn points(&self) -> &[CotangentPoint] {
        &self.points
    }

    pub fn t_values(&self) -> Vec<ComplexRational> {
        self.points.iter().map(|p| p.t.clone()).collect()
    }
}

/// Builds the class of a raw tuple: checks length and the label's linear
/// constraints, canonicalizes under the label's action, and attaches the
/// forced stable block.
pub fn make_class(label: &GroupLabel, raw: &[CotangentPoint]) -> Result<HiggsClass> {
    let desc = descriptor(label, Level::Higgs)?;
    if raw.len() != desc.copies {
        return Err(Error::LengthMismatch {
            expected: desc.copies,
            got: raw.len(),
        });
    }
    if matches!(label, GroupLabel::Sl { .. } | GroupLabel::Pgl { .. }) {
        let sum_x = raw
            .iter()
            .fold(CurvePoint::origin(), |acc, p| &acc + &p.x);
        if !sum_x.is_origin() {
            return Err(Error::DeterminantConstraint {
                sum: sum_x.to_string(),
            });
        }
        let sum_t = raw
            .iter()
            .fold(ComplexRational::zero(), |acc, p| &acc + &p.t);
        if !sum_t.is_zero() {
            return Err(Error::TraceConstraint {
                sum: sum_t.to_string(),
            });
        }
    }
    let points = canonical_form(&desc.action, raw)?;
    Ok(HiggsClass {
        label: label.clone(),
        block: label.stable_block(),
        points,
    })
}

/// True exactly when the two classes are the same moduli point: equal
/// canonical tuples and block tags. Errors on distinct labels.
pub fn isomorphic(a: &HiggsClass, b: &HiggsClass) -> Result<bool> {
    if a.label != b.label {
        return Err(Error::LabelMismatch {
            left: a.label.to_string(),
            right: b.label.to_string(),
        });
    }
    Ok(a.block == b.block && a.points == b.points)
}

/// Whether the class is a singular point of its moduli space.
///
/// Linear families: some entry repeats. Signed families: two entries agree up
/// to negation, an entry is its own negative, or an entry meets a block line
/// (t = 0 at a 2-torsion point of the block). The rank-2 special orthogonal
/// family is a smooth `T*X`, never singular.
pub fn is_singular(c: &HiggsClass) -> bool {
    match c.label {
        GroupLabel::Gl { .. } | GroupLabel::Sl { .. } | GroupLabel::Pgl { .. } => {
            has_adjacent_repeat(&c.points)
        }
        GroupLabel::So2 { .. } => false,
        GroupLabel::Sp { .. } | GroupLabel::O { .. } | GroupLabel::So { .. } => {
            let pts = &c.points;
            for (i, p) in pts.iter().enumerate() {
                if p.is_self_negative() {
                    return true;
                }
                let neg = -p;
                for q in &pts[i + 1..] {
                    if *q == *p || *q == neg {
                        return true;
                    }
                }
            }
            let block_lines = c.block.as_ref().map(|b| b.lines()).unwrap_or_default();
            pts.iter()
                .any(|p| p.t.is_zero() && block_lines.contains(&p.x))
        }
    }
}

fn has_adjacent_repeat(points: &[CotangentPoint]) -> bool {
    // Canonical tuples are sorted, so repeats are adjacent.
    points.windows(2).any(|w| w[0] == w[1])
}

/// A point of the bundle-level moduli space: the class with every cotangent
/// coordinate forgotten.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BundleClass {
    label: GroupLabel,
    block: Option<BlockTag>,
    points: Vec<CurvePoint>,
}

impl BundleClass {
    pub fn label(&self) -> &GroupLabel {
        &self.label
    }

    pub fn block(&self) -> Option<&BlockTag> {
        self.block.as_ref()
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    /// The weight-`n'` translation action at bundle level (GL only).
    pub fn translate(&self, w: &CurvePoint) -> Result<BundleClass> {
        let GroupLabel::Gl { n, .. } = self.label else {
            return Err(Error::NotGl(self.label.to_string()));
        };
        let h = self.label.linear_gcd().unwrap();
        let weight = (n / h) as i64;
        let step = w.scalar_mul(weight);
        let lifted: Vec<CotangentPoint> = self
            .points
            .iter()
            .map(|x| CotangentPoint::from_curve(x + &step))
            .collect();
        let class = make_class(&self.label, &lifted)?;
        Ok(underlying_bundle(&class))
    }
}

/// Drops all cotangent coordinates and re-canonicalizes under the same
/// action: the projection onto the bundle-level moduli space.
pub fn underlying_bundle(c: &HiggsClass) -> BundleClass {
    let desc = descriptor(&c.label, Level::Higgs).expect("valid label");
    let lifted: Vec<CotangentPoint> = c
        .points
        .iter()
        .map(|p| CotangentPoint::from_curve(p.x.clone()))
        .collect();
    let points = canonical_form(&desc.action, &lifted)
        .expect("length preserved")
        .into_iter()
        .map(|p| p.x)
        .collect();
    BundleClass {
        label: c.label.clone(),
        block: c.block,
        points,
    }
}

/// The (determinant, trace) pair in coordinates: the componentwise sum of the
/// tuple. GL only.
pub fn det_tr(c: &HiggsClass) -> Result<CotangentPoint> {
    if !matches!(c.label, GroupLabel::Gl { .. }) {
        return Err(Error::NotGl(c.label.to_string()));
    }
    Ok(c.points
        .iter()
        .fold(CotangentPoint::origin(), |acc, p| &acc + p))
}

/// The tensor-translation action of `T*X` on a GL class: every point moves by
/// `(n' x, n' s)` where `w = (x, s)` and `n' = n / h`.
pub fn translate(c: &HiggsClass, w: &CotangentPoint) -> Result<HiggsClass> {
    let GroupLabel::Gl { n, .. } = c.label else {
        return Err(Error::NotGl(c.label.to_string()));
    };
    let h = c.label.linear_gcd().unwrap();
    let weight = (n / h) as i64;
    let step = w.scalar_mul(weight);
    let moved: Vec<CotangentPoint> = c.points.iter().map(|p| p + &step).collect();
    make_class(&c.label, &moved)
}

/// One stable summand of a semistable Higgs bundle: the stable point (with
/// `t = n' lambda`) and the size of the nilpotent block attached to it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SummandDescriptor {
    pub stable_point: CotangentPoint,
    pub jordan_size: usize,
}

/// The S-equivalence class of a semistable GL Higgs bundle assembled from
/// stable summands with nilpotent blocks: each summand contributes
/// `jordan_size` copies of its stable point.
pub fn graded_object(label: &GroupLabel, summands: &[SummandDescriptor]) -> Result<HiggsClass> {
    let GroupLabel::Gl { .. } = label else {
        return Err(Error::NotGl(label.to_string()));
    };
    let h = label.linear_gcd().unwrap() as usize;
    let total: usize = summands.iter().map(|s| s.jordan_size).sum();
    if total != h {
        return Err(Error::Domain(format!(
            "block sizes sum to {total}, expected h = {h}"
        )));
    }
    if summands.iter().any(|s| s.jordan_size == 0) {
        return Err(Error::Domain("jordan_size must be >= 1".into()));
    }
    let mut raw = Vec::with_capacity(h);
    for s in summands {
        for _ in 0..s.jordan_size {
            raw.push(s.stable_point.clone());
        }
    }
    make_class(label, &raw)
}

/// Family selector for component enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ComponentFamily {
    O,
    So,
}

/// All connected components of the orthogonal or special orthogonal moduli
/// space of rank `n`.
///
/// `O(2m+1)`: `k = 1, 3` with 4 components each. `O(2)`: `k = 0, 2` with
/// `1 + 6`. `O(2m), m > 1`: `k = 0, 2, 4` with `1 + 6 + 1`. `SO(n >= 3)`:
/// one component per Stiefel-Whitney class. The rank-2 special orthogonal
/// family is indexed by an integer degree; its `d = 0` member stands in for
/// the whole family here.
pub fn list_components(family: ComponentFamily, n: u32) -> Result<Vec<GroupLabel>> {
    if n == 0 {
        return Err(Error::InvalidComponent("rank must be >= 1".into()));
    }
    let mut out = Vec::new();
    match family {
        ComponentFamily::O => {
            let ks: &[u8] = if n % 2 == 1 { &[1, 3] } else { &[0, 2, 4] };
            for &k in ks {
                if u32::from(k) > n {
                    continue;
                }
                for a in 0..BLOCK_COUNTS[k as usize] {
                    out.push(GroupLabel::O { n, k, a });
                }
            }
        }
        ComponentFamily::So => match n {
            1 => out.push(GroupLabel::So { n: 1, w2: 0 }),
            2 => out.push(GroupLabel::So2 { d: 0 }),
            _ => {
                out.push(GroupLabel::So { n, w2: 0 });
                out.push(GroupLabel::So { n, w2: 1 });
            }
        },
    }
    for label in &out {
        label.validate()?;
    }
    Ok(out)
}

/// Reads off `(n, w2, m')` of a polystable special orthogonal decomposition
/// from the rank and the stable block.
pub fn so_invariants(n: u32, block: Option<BlockTag>) -> Result<(u32, u8, usize)> {
    match block {
        None => {
            if !n.is_multiple_of(2) {
                return Err(Error::InvalidComponent(format!(
                    "SO({n}) without a stable block requires even rank"
                )));
            }
            Ok((n, 0, (n / 2) as usize))
        }
        Some(BlockTag { k: 1, .. }) => {
            if n % 2 != 1 {
                return Err(Error::InvalidComponent(format!(
                    "SO({n}) with a rank-1 block requires odd rank"
                )));
            }
            Ok((n, 0, ((n - 1) / 2) as usize))
        }
        Some(BlockTag { k: 3, .. }) => {
            if n % 2 != 1 || n < 3 {
                return Err(Error::InvalidComponent(format!(
                    "SO({n}) with a rank-3 block requires odd rank >= 3"
                )));
            }
            Ok((n, 1, ((n - 3) / 2) as usize))
        }
        Some(BlockTag { k: 4, .. }) => {
            if !n.is_multiple_of(2) || n < 4 {
                return Err(Error::InvalidComponent(format!(
                    "SO({n}) with a rank-4 block requires even rank >= 4"
                )));
            }
            Ok((n, 1, ((n - 4) / 2) as usize))
        }
        Some(BlockTag { k, .. }) => Err(Error::InvalidComponent(format!(
            "rank-{k} blocks do not occur in special orthogonal decompositions"
        ))),
    }
}

#[derive(Serialize, Deserialize)]
struct HiggsClassRepr {
    group: GroupLabel,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    block: Option<BlockTag>,
    points: Vec<CotangentPoint>,
}

impl Serialize for HiggsClass {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        HiggsClassRepr {
            group: self.label.clone(),
            block: self.block,
            points: self.points.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for HiggsClass {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = HiggsClassRepr::deserialize(de)?;
        let class =
            make_class(&repr.group, &repr.points).map_err(|e| D::Error::custom(e.to_string()))?;
        if let Some(b) = repr.block {
            if Some(b) != class.block {
                return Err(D::Error::custom(format!(
                    "block {b:?} does not match the component's stable block {:?}",
                    class.block
                )));
            }
        }
        Ok(class)
    }
}

#[derive(Serialize, Deserialize)]
struct BundleClassRepr {
    group: GroupLabel,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    block: Option<BlockTag>,
    points: Vec<BundlePointRepr>,
}

#[derive(Serialize, Deserialize)]
struct BundlePointRepr {
    x: CurvePoint,
}

impl Serialize for BundleClass {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        BundleClassRepr {
            group: self.label.clone(),
            block: self.block,
            points: self
                .points
                .iter()
                .map(|x| BundlePointRepr { x: x.clone() })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for BundleClass {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = BundleClassRepr::deserialize(de)?;
        let lifted: Vec<CotangentPoint> = repr
            .points
            .into_iter()
            .map(|p| CotangentPoint::from_curve(p.x))
            .collect();
        let class =
            make_class(&repr.group, &lifted).map_err(|e| D::Error::custom(e.to_string()))?;
        Ok(underlying_bundle(&class))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn cot(na: i64, da: i64, nb: i64, db: i64, t: i64) -> CotangentPoint {
        CotangentPoint::new(
            CurvePoint::from_fractions(na, da, nb, db),
            ComplexRational::from_integer(t),
        )
    }

    #[test]
    fn descriptor_examples() {
        let d = descriptor(&GroupLabel::Gl { n: 4, d: 2 }, Level::Higgs).unwrap();
        assert_eq!(d.copies, 2);
        assert_eq!(d.action, ActionSpec::Sym { m: 2 });
        assert_eq!(d.dim, 4);

        let d = descriptor(&GroupLabel::Sp { m: 3 }, Level::Higgs).unwrap();
        assert_eq!(d.copies, 3);
        assert_eq!(d.action, ActionSpec::Hyperoct { m: 3 });
        assert_eq!(d.dim, 6);

        let d = descriptor(&GroupLabel::So { n: 8, w2: 1 }, Level::Higgs).unwrap();
        assert_eq!(d.copies, 2);

        let d = descriptor(&GroupLabel::So { n: 8, w2: 0 }, Level::Higgs).unwrap();
        assert_eq!(d.action, ActionSpec::EvenSign { m: 4 });

        let d = descriptor(&GroupLabel::Sl { n: 3 }, Level::Higgs).unwrap();
        assert_eq!((d.copies, d.dim), (3, 4));

        let d = descriptor(&GroupLabel::Pgl { n: 4, d: 2 }, Level::Bundle).unwrap();
        assert_eq!((d.copies, d.dim), (2, 1));
        assert_eq!(d.action, ActionSpec::SymTranslate { h: 2, m: 2 });
    }

    #[test]
    fn make_class_checks_constraints() {
        let a = cot(1, 3, 0, 1, 1);
        let b = cot(1, 5, 1, 2, 2);
        let c = CotangentPoint::new(-(&(&a.x + &b.x)), -&(&a.t + &b.t));
        let class = make_class(&GroupLabel::Sl { n: 3 }, &[a.clone(), b.clone(), c]).unwrap();
        let mut sorted = class.points().to_vec();
        sorted.sort();
        assert_eq!(class.points(), sorted.as_slice());

        let bad = make_class(
            &GroupLabel::Sl { n: 2 },
            &[cot(1, 2, 0, 1, 1), cot(1, 2, 0, 1, 2)],
        );
        assert!(matches!(bad, Err(Error::TraceConstraint { .. })));

        let bad = make_class(
            &GroupLabel::Sl { n: 2 },
            &[cot(1, 3, 0, 1, 1), cot(1, 3, 0, 1, -1)],
        );
        assert!(matches!(bad, Err(Error::DeterminantConstraint { .. })));

        let wrong_len = make_class(&GroupLabel::Sp { m: 2 }, &[cot(1, 3, 0, 1, 0)]);
        assert!(matches!(wrong_len, Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn sp_class_canonicalizes_by_sign() {
        let class = make_class(&GroupLabel::Sp { m: 1 }, &[cot(2, 3, 0, 1, 1)]).unwrap();
        assert_eq!(class.points(), &[cot(1, 3, 0, 1, -1)]);
    }

    #[test]
    fn isomorphic_is_orbit_invariance() {
        use crate::actions::ActionSpec;
        let label = GroupLabel::Sp { m: 2 };
        let raw = vec![cot(1, 3, 1, 5, 2), cot(2, 7, 0, 1, -1)];
        let class = make_class(&label, &raw).unwrap();
        for g in (ActionSpec::Hyperoct { m: 2 }).elements().unwrap() {
            let moved = make_class(&label, &g.apply(&raw).unwrap()).unwrap();
            assert!(isomorphic(&class, &moved).unwrap());
        }

        // Sp(2): z and -z give the same point.
        let z = cot(1, 5, 1, 3, 4);
        let plus = make_class(&GroupLabel::Sp { m: 1 }, std::slice::from_ref(&z)).unwrap();
        let minus = make_class(&GroupLabel::Sp { m: 1 }, &[-&z]).unwrap();
        assert!(isomorphic(&plus, &minus).unwrap());

        let other = make_class(&GroupLabel::Sp { m: 2 }, &raw).unwrap();
        assert!(matches!(
            isomorphic(&plus, &other),
            Err(Error::LabelMismatch { .. })
        ));
    }

    #[test]
    fn so_even_flips_in_pairs() {
        let label = GroupLabel::So { n: 4, w2: 0 };
        let a = cot(1, 3, 0, 1, 1);
        let b = cot(1, 5, 0, 1, 2);
        let base = make_class(&label, &[a.clone(), b.clone()]).unwrap();
        let one_flip = make_class(&label, &[-&a, b.clone()]).unwrap();
        let two_flips = make_class(&label, &[-&a, -&b]).unwrap();
        assert!(!isomorphic(&base, &one_flip).unwrap());
        assert!(isomorphic(&base, &two_flips).unwrap());
    }

    #[test]
    fn singular_examples() {
        let gl = GroupLabel::Gl { n: 2, d: 0 };
        let a = cot(1, 3, 0, 1, 1);
        let same = make_class(&gl, &[a.clone(), a.clone()]).unwrap();
        assert!(is_singular(&same));
        let different_t = make_class(&gl, &[a.clone(), cot(1, 3, 0, 1, 2)]).unwrap();
        assert!(!is_singular(&different_t));

        let sp = make_class(&GroupLabel::Sp { m: 1 }, &[cot(1, 2, 0, 1, 0)]).unwrap();
        assert!(is_singular(&sp));
        let sp_smooth = make_class(&GroupLabel::Sp { m: 1 }, &[cot(1, 3, 0, 1, 0)]).unwrap();
        assert!(!is_singular(&sp_smooth));

        // A point sitting on a block line of SO(7, w2 = 1).
        let so = GroupLabel::So { n: 7, w2: 1 };
        let on_line = make_class(&so, &[cot(1, 2, 0, 1, 0), cot(1, 7, 0, 1, 3)]).unwrap();
        assert!(is_singular(&on_line));
    }

    #[test]
    fn underlying_bundle_projects_and_commutes() {
        let gl = GroupLabel::Gl { n: 2, d: 0 };
        let class = make_class(&gl, &[cot(1, 3, 0, 1, 1), cot(1, 3, 0, 1, 2)]).unwrap();
        let bundle = underlying_bundle(&class);
        assert_eq!(bundle.points()[0], bundle.points()[1]);

        // Lifting with t = 0 and projecting again is the identity.
        let lifted: Vec<CotangentPoint> = bundle
            .points()
            .iter()
            .map(|x| CotangentPoint::from_curve(x.clone()))
            .collect();
        let relift = make_class(&gl, &lifted).unwrap();
        assert_eq!(underlying_bundle(&relift), bundle);
    }

    #[test]
    fn det_tr_and_translate_laws() {
        let gl = GroupLabel::Gl { n: 2, d: 0 };
        let a = cot(1, 3, 0, 1, 1);
        let b = cot(1, 5, 0, 1, 2);
        let class = make_class(&gl, &[a.clone(), b.clone()]).unwrap();
        let dt = det_tr(&class).unwrap();
        assert_eq!(dt.x, &a.x + &b.x);
        assert_eq!(dt.t, ComplexRational::from_integer(3));

        // Identity translation.
        assert!(isomorphic(
            &translate(&class, &CotangentPoint::origin()).unwrap(),
            &class
        )
        .unwrap());

        // Translating by w adds (n x, n s) to det_tr.
        let w = CotangentPoint::new(
            CurvePoint::from_fractions(1, 7, 2, 5),
            ComplexRational::real(1, 2),
        );
        let translated = translate(&class, &w).unwrap();
        let expected = &dt + &w.scalar_mul(2);
        assert_eq!(det_tr(&translated).unwrap(), expected);

        // Weight 1 here, so a 2-torsion translation has period 2.
        let omega = CotangentPoint::from_curve(CurvePoint::from_fractions(1, 2, 0, 1));
        let once = translate(&class, &omega).unwrap();
        let twice = translate(&once, &omega).unwrap();
        assert!(!isomorphic(&once, &class).unwrap());
        assert!(isomorphic(&twice, &class).unwrap());

        let sp = make_class(&GroupLabel::Sp { m: 1 }, std::slice::from_ref(&a)).unwrap();
        assert!(matches!(det_tr(&sp), Err(Error::NotGl(_))));
        assert!(matches!(translate(&sp, &w), Err(Error::NotGl(_))));

        // A trace-and-determinant-constrained tuple viewed in GL(2,0) sits
        // over the origin.
        let constrained = make_class(&gl, &[a.clone(), -&a]).unwrap();
        assert!(det_tr(&constrained).unwrap().is_origin());
    }

    #[test]
    fn graded_object_examples() {
        let gl2 = GroupLabel::Gl { n: 2, d: 0 };
        let z = cot(1, 3, 0, 1, 1);
        let class = graded_object(
            &gl2,
            &[SummandDescriptor {
                stable_point: z.clone(),
                jordan_size: 2,
            }],
        )
        .unwrap();
        assert_eq!(class.points(), &[z.clone(), z.clone()]);
        assert!(is_singular(&class));

        let w = cot(1, 5, 0, 1, 2);
        let two = graded_object(
            &gl2,
            &[
                SummandDescriptor {
                    stable_point: z.clone(),
                    jordan_size: 1,
                },
                SummandDescriptor {
                    stable_point: w.clone(),
                    jordan_size: 1,
                },
            ],
        )
        .unwrap();
        assert!(!is_singular(&two));

        // Order of summands does not matter.
        let swapped = graded_object(
            &gl2,
            &[
                SummandDescriptor {
                    stable_point: w.clone(),
                    jordan_size: 1,
                },
                SummandDescriptor {
                    stable_point: z.clone(),
                    jordan_size: 1,
                },
            ],
        )
        .unwrap();
        assert!(isomorphic(&two, &swapped).unwrap());

        // GL(4,2): h = 2, so two size-1 summands give a length-2 class.
        let gl42 = GroupLabel::Gl { n: 4, d: 2 };
        let c = graded_object(
            &gl42,
            &[
                SummandDescriptor {
                    stable_point: z.clone(),
                    jordan_size: 1,
                },
                SummandDescriptor {
                    stable_point: w,
                    jordan_size: 1,
                },
            ],
        )
        .unwrap();
        assert_eq!(c.points().len(), 2);

        let bad = graded_object(
            &gl2,
            &[SummandDescriptor {
                stable_point: z,
                jordan_size: 3,
            }],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn component_tables() {
        assert_eq!(list_components(ComponentFamily::O, 5).unwrap().len(), 8);
        assert_eq!(list_components(ComponentFamily::O, 6).unwrap().len(), 8);
        assert_eq!(list_components(ComponentFamily::O, 2).unwrap().len(), 7);
        assert_eq!(list_components(ComponentFamily::O, 1).unwrap().len(), 4);
        let so7 = list_components(ComponentFamily::So, 7).unwrap();
        assert_eq!(so7.len(), 2);
        let copies: Vec<usize> = so7
            .iter()
            .map(|l| descriptor(l, Level::Higgs).unwrap().copies)
            .collect();
        assert_eq!(copies, vec![3, 2]);
    }

    #[test]
    fn so_invariant_table() {
        assert_eq!(so_invariants(8, None).unwrap(), (8, 0, 4));
        assert_eq!(
            so_invariants(7, Some(BlockTag { k: 3, a: 0 })).unwrap(),
            (7, 1, 2)
        );
        assert_eq!(
            so_invariants(8, Some(BlockTag { k: 4, a: 0 })).unwrap(),
            (8, 1, 2)
        );
        assert!(so_invariants(7, None).is_err());
        assert!(so_invariants(8, Some(BlockTag { k: 1, a: 0 })).is_err());
        assert!(so_invariants(6, Some(BlockTag { k: 2, a: 0 })).is_err());
    }

    #[test]
    fn block_lines_catalog() {
        let j = two_torsion_catalog();
        assert_eq!(BlockTag { k: 1, a: 2 }.lines(), vec![j[2].clone()]);
        assert_eq!(
            BlockTag { k: 2, a: 0 }.lines(),
            vec![j[0].clone(), j[1].clone()]
        );
        assert_eq!(BlockTag { k: 3, a: 0 }.lines().len(), 3);
        assert!(!BlockTag { k: 3, a: 0 }.lines().contains(&j[0]));
        assert_eq!(BlockTag { k: 4, a: 0 }.lines().len(), 4);
    }

    #[test]
    fn class_json_round_trip() {
        let label = GroupLabel::So { n: 8, w2: 1 };
        let class = make_class(&label, &[cot(1, 3, 0, 1, 1), cot(1, 5, 0, 1, 2)]).unwrap();
        let json = serde_json::to_string(&class).unwrap();
        assert!(json.contains(r#""family":"SO""#));
        assert!(json.contains(r#""block":{"k":4,"a":0}"#));
        let back: HiggsClass = serde_json::from_str(&json).unwrap();
        assert_eq!(back, class);

        // Raw (non-canonical) points canonicalize on read.
        let raw = r#"{"group":{"family":"Sp","m":1},"points":[{"x":["2/3","0"],"t":["1","0"]}]}"#;
        let parsed: HiggsClass = serde_json::from_str(raw).unwrap();
        assert_eq!(parsed.points(), &[cot(1, 3, 0, 1, -1)]);
    }

    #[test]
    fn label_json_validation() {
        let bad = r#"{"family":"O","n":5,"k":2,"a":0}"#;
        assert!(serde_json::from_str::<GroupLabel>(bad).is_err());
        let so2 = r#"{"family":"SO","n":2,"d":3}"#;
        assert_eq!(
            serde_json::from_str::<GroupLabel>(so2).unwrap(),
            GroupLabel::So2 { d: 3 }
        );
        let sp: GroupLabel = serde_json::from_str(r#"{"family":"Sp","m":3}"#).unwrap();
        assert_eq!(sp, GroupLabel::Sp { m: 3 });
    }

    #[test]
    fn weight_n_prime_translation_sweeps_torsion_level_h() {
        // The n-torsion translations at weight n' reach exactly the h-torsion
        // translations at weight 1, so translation canonicalization may
        // enumerate X[h] directly.
        use crate::torus::torsion_subgroup;
        use std::collections::BTreeSet;
        let label = GroupLabel::Gl { n: 4, d: 2 }; // h = 2, n' = 2
        let raw = vec![cot(1, 3, 1, 5, 1), cot(2, 7, 0, 1, 2)];
        let class = make_class(&label, &raw).unwrap();
        let via_full: BTreeSet<HiggsClass> = torsion_subgroup(4)
            .unwrap()
            .into_iter()
            .map(|omega| translate(&class, &CotangentPoint::from_curve(omega)).unwrap())
            .collect();
        let via_sub: BTreeSet<HiggsClass> = torsion_subgroup(2)
            .unwrap()
            .into_iter()
            .map(|eta| {
                let shift = CotangentPoint::from_curve(eta);
                let moved: Vec<CotangentPoint> = raw.iter().map(|p| p + &shift).collect();
                make_class(&label, &moved).unwrap()
            })
            .collect();
        assert_eq!(via_full, via_sub);
    }

    #[test]
    fn so2_is_plain_cotangent_space() {
        let label = GroupLabel::So2 { d: 1 };
        let z = CotangentPoint::new(
            CurvePoint::from_fractions(1, 3, 0, 1),
            ComplexRational::new(Rational::new(1, 2), Rational::zero()),
        );
        let plus = make_class(&label, std::slice::from_ref(&z)).unwrap();
        let minus = make_class(&label, &[-&z]).unwrap();
        assert!(!isomorphic(&plus, &minus).unwrap());
        assert!(!is_singular(&plus));
    }
}

//! Representation-type classification for Hecke algebras of finite Weyl
//! group products: semisimple / finite / infinite, per factor and combined.
//!
//! All decisions reduce to integer arithmetic on fundamental degrees:
//!
//! * `q` a primitive `e`-th root of unity: the multiplicity of `Phi_e` in
//!   `P_W` is the number of degrees divisible by `e`; multiplicity 0 means
//!   semisimple, 1 finite but not semisimple (Uno's simple-root criterion),
//!   and >= 2 infinite.
//! * `q = 1`: the group algebra in characteristic `l` is semisimple iff
//!   `l` does not divide `|W|` (Maschke) and of finite type iff `l^2` does
//!   not divide `|W|` (cyclic Sylow subgroups).
//! * two-parameter type B: the Dipper-James Morita reduction when `-Q` is
//!   not a power of `q`, the Ariki-Mathas bound
//!   `n < min(e, 2 min(f, e-f) + 4)` when `-Q = q^f`.
//!
//! Every verdict carries the criterion it came from and whether that
//! criterion is a theorem for the type in question, a conjecture
//! (exceptional types at roots of unity), or derived here by combining
//! known results.

use serde::{Deserialize, Serialize};

use crate::poly::degree_count_multiplicity;
use crate::weyl::{IrreducibleType, WeylSpec};

/// Representation-type verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Semisimple,
    FiniteNotSemisimple,
    /// Finite representation type with semisimplicity left undetermined
    /// (two-parameter type B with `-Q = q^f`; the bound classifies
    /// finiteness only).
    Finite,
    Infinite,
}

impl Status {
    /// Total order of badness: semisimple < finite < infinite. The two
    /// finite flavors share a tier.
    pub fn severity(self) -> u8 {
        match self {
            Status::Semisimple => 0,
            Status::FiniteNotSemisimple | Status::Finite => 1,
            Status::Infinite => 2,
        }
    }

    pub fn is_finite_type(self) -> bool {
        self != Status::Infinite
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Semisimple => "semisimple",
            Status::FiniteNotSemisimple => "finite, not semisimple",
            Status::Finite => "finite (semisimplicity undetermined)",
            Status::Infinite => "infinite",
        };
        write!(f, "{s}")
    }
}

/// How solid the criterion behind a verdict is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    Theorem,
    /// Immediate consequence of cited theorems, assembled here.
    Derived,
    /// Exceptional types at a root of unity: proved only for large enough
    /// characteristic, conjectural in general.
    Conjectural,
}

impl BasisKind {
    fn strength(self) -> u8 {
        match self {
            BasisKind::Conjectural => 0,
            BasisKind::Derived => 1,
            BasisKind::Theorem => 2,
        }
    }

    pub fn weakest(a: BasisKind, b: BasisKind) -> BasisKind {
        if a.strength() <= b.strength() {
            a
        } else {
            b
        }
    }
}

impl std::fmt::Display for BasisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BasisKind::Theorem => "theorem",
            BasisKind::Derived => "derived",
            BasisKind::Conjectural => "conjectural",
        };
        write!(f, "{s}")
    }
}

/// Hecke-algebra parameter: the group algebra (`q = 1`) or `q` a primitive
/// `e`-th root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Parameter {
    One,
    RootOfUnity { e: u64 },
}

/// Second parameter `Q` of two-parameter type-B algebras, applied to every
/// type-B factor. `EqualQ` is the one-parameter algebra (the default).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BSecondParameter {
    EqualQ,
    One,
    /// `-Q` is not any power of `q`.
    #[serde(rename = "generic")]
    GenericQ,
    /// `-Q = q^f` with `0 <= f < e`.
    MinusPower {
        f: u64,
    },
}

/// Validation failure for classification inputs.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("characteristic must be 0 or a prime, got {0}")]
    CharacteristicNotPrime(u64),
    #[error("root-of-unity order e must be at least 2, got {0}")]
    OrderTooSmall(u64),
    #[error("characteristic {l} divides e = {e}: no primitive e-th root of unity exists")]
    CharacteristicDividesOrder { l: u64, e: u64 },
    #[error("q = 1 classification needs Weyl factors only; {factor} is not a Weyl group")]
    NonWeylFactor { factor: IrreducibleType },
    #[error("invalid exponent f = {f}: need 0 <= f < e = {e}")]
    InvalidF { f: u64, e: u64 },
    #[error("B-parameter '{0}' needs a type-B factor in the spec")]
    BParameterWithoutBFactor(&'static str),
    #[error("B-parameter variants other than Q = q or Q = 1 need a root-of-unity parameter")]
    BParameterAtQOne,
    #[error("threshold_finite supports types A, B, D only, got {0}")]
    UnsupportedThresholdType(IrreducibleType),
}

/// A full classification request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationInput {
    pub spec: WeylSpec,
    /// 0 or a prime.
    pub characteristic: u64,
    pub parameter: Parameter,
    /// `None` means the default `EqualQ`.
    pub b_second_parameter: Option<BSecondParameter>,
}

impl ClassificationInput {
    pub fn new(
        spec: WeylSpec,
        characteristic: u64,
        parameter: Parameter,
        b_second_parameter: Option<BSecondParameter>,
    ) -> Result<Self, ClassifyError> {
        if characteristic != 0 && !crate::coxeter::is_prime(characteristic) {
            return Err(ClassifyError::CharacteristicNotPrime(characteristic));
        }
        match parameter {
            Parameter::RootOfUnity { e } => {
                if e < 2 {
                    return Err(ClassifyError::OrderTooSmall(e));
                }
                if characteristic != 0 && e % characteristic == 0 {
                    return Err(ClassifyError::CharacteristicDividesOrder {
                        l: characteristic,
                        e,
                    });
                }
                if let Some(BSecondParameter::MinusPower { f }) = b_second_parameter {
                    if f >= e {
                        return Err(ClassifyError::InvalidF { f, e });
                    }
                }
            }
            Parameter::One => {
                if matches!(
                    b_second_parameter,
                    Some(BSecondParameter::GenericQ | BSecondParameter::MinusPower { .. })
                ) {
                    return Err(ClassifyError::BParameterAtQOne);
                }
            }
        }
        let has_b = spec
            .factors()
            .iter()
            .any(|t| matches!(t, IrreducibleType::B { .. }));
        if !has_b {
            match b_second_parameter {
                Some(BSecondParameter::One) => {
                    return Err(ClassifyError::BParameterWithoutBFactor("one"))
                }
                Some(BSecondParameter::GenericQ) => {
                    return Err(ClassifyError::BParameterWithoutBFactor("generic"))
                }
                Some(BSecondParameter::MinusPower { .. }) => {
                    return Err(ClassifyError::BParameterWithoutBFactor("minus-power"))
                }
                Some(BSecondParameter::EqualQ) | None => {}
            }
        }
        Ok(ClassificationInput {
            spec,
            characteristic,
            parameter,
            b_second_parameter,
        })
    }
}

/// Per-factor verdict with provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    #[serde(rename = "type")]
    pub factor: IrreducibleType,
    pub status: Status,
    /// Multiplicity of `Phi_e` in the factor's Poincaré polynomial; present
    /// only on the root-of-unity multiplicity route.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u64>,
    pub criterion: String,
    pub basis: BasisKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverallReport {
    pub status: Status,
    pub basis: BasisKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputReport {
    pub spec: String,
    pub characteristic: u64,
    pub q: Parameter,
    #[serde(rename = "B_Q", skip_serializing_if = "Option::is_none")]
    pub b_q: Option<BSecondParameter>,
}

/// The full classification result, shaped exactly like the JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub input: InputReport,
    pub factors: Vec<FactorReport>,
    pub overall: OverallReport,
}

/// One-parameter classification of an irreducible factor at a primitive
/// `e`-th root of unity, by the multiplicity of `Phi_e` in `P_W`.
///
/// The trichotomy is a theorem for the classical types and for the dihedral
/// family (hence also G2); for the exceptional types it is known only for
/// large enough characteristic, so the basis is conjectural.
pub fn classify_one_param_irreducible(t: IrreducibleType, e: u64) -> (Status, u64, BasisKind) {
    assert!(e >= 2, "root-of-unity order must be >= 2");
    let m = degree_count_multiplicity(t.degrees().as_slice(), e) as u64;
    let status = match m {
        0 => Status::Semisimple,
        1 => Status::FiniteNotSemisimple,
        _ => Status::Infinite,
    };
    let basis = match t {
        IrreducibleType::A { .. } | IrreducibleType::B { .. } | IrreducibleType::D { .. } => {
            BasisKind::Theorem
        }
        IrreducibleType::G2 | IrreducibleType::I2 { .. } => BasisKind::Theorem,
        IrreducibleType::E { .. } | IrreducibleType::F4 => BasisKind::Conjectural,
    };
    (status, m, basis)
}

/// The closed-form finiteness thresholds for the infinite families,
/// independent of the polynomial route:
/// type A on `n` symbols: `n < 2e`; `B_n` and `D_n`: `n < 2e` for odd `e`,
/// `n < e` for even `e`.
pub fn threshold_finite(t: IrreducibleType, e: u64) -> Result<bool, ClassifyError> {
    assert!(e >= 2);
    match t {
        IrreducibleType::A { rank } => Ok((rank as u64 + 1) < 2 * e),
        IrreducibleType::B { rank } | IrreducibleType::D { rank } => {
            let n = rank as u64;
            Ok(if e % 2 == 1 { n < 2 * e } else { n < e })
        }
        other => Err(ClassifyError::UnsupportedThresholdType(other)),
    }
}

/// Ariki-Mathas bound `min(e, 2 min(f, e-f) + 4)`: `H_{q,Q}(B_n)` with
/// `-Q = q^f` is of finite representation type iff `n` is below it.
pub fn ariki_mathas_bound(e: u64, f: u64) -> u64 {
    e.min(2 * f.min(e - f) + 4)
}

/// Two-parameter type-B classification.
///
/// `Q = q` and `Q = 1` first normalize: for even `e`, `-1 = q^{e/2}` makes
/// `-Q` the power `q^{e/2+1}` resp. `q^{e/2}`; for odd `e` no power of `q`
/// equals `-1`, so both cases land in the generic branch. Generic `Q` goes
/// through the Dipper-James Morita reduction to type-A tensor summands;
/// `-Q = q^f` through the Ariki-Mathas bound, which decides finiteness only
/// (except that `Q = q` is the one-parameter algebra, where the multiplicity
/// test settles semisimplicity too).
pub fn classify_two_param_b(
    n: u64,
    e: u64,
    qspec: BSecondParameter,
) -> Result<(Status, BasisKind, String), ClassifyError> {
    assert!(n >= 2, "type B needs rank >= 2");
    assert!(e >= 2);
    match qspec {
        BSecondParameter::GenericQ => Ok(classify_generic_q_b(n, e)),
        BSecondParameter::One => {
            if e % 2 == 1 {
                Ok(classify_generic_q_b(n, e))
            } else {
                classify_two_param_b(n, e, BSecondParameter::MinusPower { f: e / 2 })
            }
        }
        BSecondParameter::EqualQ => {
            // the one-parameter algebra: multiplicity trichotomy applies
            let (status, m, basis) =
                classify_one_param_irreducible(IrreducibleType::B { rank: n as usize }, e);
            let finite_by_bound = if e % 2 == 1 {
                n < 2 * e
            } else {
                n < ariki_mathas_bound(e, (e / 2 + 1) % e)
            };
            debug_assert_eq!(status.is_finite_type(), finite_by_bound);
            Ok((
                status,
                basis,
                format!("Phi_{e} multiplicity {m} in P_W (one-parameter algebra)"),
            ))
        }
        BSecondParameter::MinusPower { f } => {
            if f >= e {
                return Err(ClassifyError::InvalidF { f, e });
            }
            let bound = ariki_mathas_bound(e, f);
            let status = if n < bound {
                Status::Finite
            } else {
                Status::Infinite
            };
            Ok((
                status,
                BasisKind::Theorem,
                format!("Ariki-Mathas bound: n < min(e, 2 min(f, e-f) + 4) = {bound}"),
            ))
        }
    }
}

fn classify_generic_q_b(n: u64, e: u64) -> (Status, BasisKind, String) {
    if n >= 2 * e {
        (
            Status::Infinite,
            BasisKind::Theorem,
            format!(
                "Dipper-James reduction: n >= 2e (a type-A summand A_{} is infinite)",
                2 * e - 1
            ),
        )
    } else if n < e {
        // every Morita summand A_{m-1} (x) A_{n-m-1} has both parts semisimple
        (
            Status::Semisimple,
            BasisKind::Derived,
            "Dipper-James reduction: n < e, all type-A summands semisimple".to_string(),
        )
    } else {
        (
            Status::FiniteNotSemisimple,
            BasisKind::Derived,
            "Dipper-James reduction: e <= n < 2e".to_string(),
        )
    }
}

/// Group-algebra classification at `q = 1` in characteristic `l`.
///
/// Per factor: `l` does not divide `|W|` gives semisimple (Maschke);
/// `l^2` not dividing gives finite, not semisimple (cyclic Sylow
/// l-subgroups); otherwise infinite. `I2(m)` is rejected outside m in
/// {3, 4, 6}: for non-crystallographic dihedral groups the `l^2` criterion
/// genuinely fails (odd `l` with `l^2 | m` has cyclic Sylow subgroups).
pub fn classify_group_algebra(
    spec: &WeylSpec,
    l: u64,
) -> Result<ClassificationReport, ClassifyError> {
    let input = ClassificationInput::new(spec.clone(), l, Parameter::One, None)?;
    classify(&input)
}

fn classify_group_algebra_factor(
    t: IrreducibleType,
    l: u64,
) -> Result<FactorReport, ClassifyError> {
    if !t.is_weyl() {
        return Err(ClassifyError::NonWeylFactor { factor: t });
    }
    let order = t.order();
    let (status, criterion) = if l == 0 {
        (Status::Semisimple, "characteristic 0 (Maschke)".to_string())
    } else {
        let l_big = num_bigint::BigUint::from(l);
        let divides = (&order % &l_big) == num_bigint::BigUint::from(0u32);
        let divides_sq = (&order % (&l_big * &l_big)) == num_bigint::BigUint::from(0u32);
        if !divides {
            (
                Status::Semisimple,
                format!("{l} does not divide |W| = {order} (Maschke)"),
            )
        } else if !divides_sq {
            (
                Status::FiniteNotSemisimple,
                format!(
                    "{l} divides |W| = {order} but {l}^2 does not (cyclic Sylow {l}-subgroups)"
                ),
            )
        } else {
            (
                Status::Infinite,
                format!("{l}^2 divides |W| = {order} (non-cyclic Sylow {l}-subgroups)"),
            )
        }
    };
    Ok(FactorReport {
        factor: t,
        status,
        multiplicity: None,
        criterion,
        basis: BasisKind::Theorem,
    })
}

/// Product rule: all semisimple stays semisimple; exactly one non-semisimple
/// factor keeps its status; two or more non-semisimple factors (or any
/// infinite one) make the product infinite, because the tensor product of
/// two complexity-1 modules has complexity 2.
pub fn combine_factors(statuses: &[Status]) -> Status {
    let mut non_semisimple: Option<Status> = None;
    for &s in statuses {
        match s.severity() {
            0 => {}
            1 => {
                if non_semisimple.is_some() {
                    return Status::Infinite;
                }
                non_semisimple = Some(s);
            }
            _ => return Status::Infinite,
        }
    }
    non_semisimple.unwrap_or(Status::Semisimple)
}

/// Top-level dispatcher: routes each factor to the group-algebra rule, the
/// two-parameter type-B rules, or the one-parameter multiplicity test, and
/// combines the verdicts.
pub fn classify(input: &ClassificationInput) -> Result<ClassificationReport, ClassifyError> {
    let mut factors = Vec::with_capacity(input.spec.factors().len());
    match input.parameter {
        Parameter::One => {
            for &t in input.spec.factors() {
                factors.push(classify_group_algebra_factor(t, input.characteristic)?);
            }
        }
        Parameter::RootOfUnity { e } => {
            let bq = input.b_second_parameter.unwrap_or(BSecondParameter::EqualQ);
            for &t in input.spec.factors() {
                let is_b = matches!(t, IrreducibleType::B { .. });
                if is_b && bq != BSecondParameter::EqualQ {
                    let (status, basis, criterion) = classify_two_param_b(t.rank() as u64, e, bq)?;
                    factors.push(FactorReport {
                        factor: t,
                        status,
                        multiplicity: None,
                        criterion,
                        basis,
                    });
                } else {
                    let (status, m, basis) = classify_one_param_irreducible(t, e);
                    factors.push(FactorReport {
                        factor: t,
                        status,
                        multiplicity: Some(m),
                        criterion: format!(
                            "Phi_{e} multiplicity {m} in P_W (simple-root criterion)"
                        ),
                        basis,
                    });
                }
            }
        }
    }
    let statuses: Vec<Status> = factors.iter().map(|f| f.status).collect();
    let overall_status = combine_factors(&statuses);
    let overall_basis = factors
        .iter()
        .map(|f| f.basis)
        .fold(BasisKind::Theorem, BasisKind::weakest);
    Ok(ClassificationReport {
        input: InputReport {
            spec: input.spec.to_string(),
            characteristic: input.characteristic,
            q: input.parameter,
            b_q: input.b_second_parameter,
        },
        factors,
        overall: OverallReport {
            status: overall_status,
            basis: overall_basis,
        },
    })
}

/// Dimensions of the terms of a minimal projective resolution (a finite
/// prefix). Empty means the module is projective (trivial resolution).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionSequence(Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dimension sequences must have all values >= 1")]
pub struct ZeroDimension;

impl DimensionSequence {
    pub fn new(values: Vec<u64>) -> Result<Self, ZeroDimension> {
        if values.contains(&0) {
            return Err(ZeroDimension);
        }
        Ok(DimensionSequence(values))
    }

    pub fn constant(value: u64, len: usize) -> Result<Self, ZeroDimension> {
        Self::new(vec![value; len])
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Künneth convolution `c_t = sum_{s=0}^t a_s b_{t-s}` — the dimension
/// sequence of a tensor-product resolution, computed on the common prefix.
/// Both inputs must be nonempty.
pub fn kunneth_convolve(a: &DimensionSequence, b: &DimensionSequence) -> DimensionSequence {
    assert!(
        !a.is_empty() && !b.is_empty(),
        "kunneth_convolve needs nonempty sequences"
    );
    let len = a.len().min(b.len());
    let values = (0..len)
        .map(|t| {
            (0..=t)
                .map(|s| {
                    a.0[s]
                        .checked_mul(b.0[t - s])
                        .expect("dimension product overflow")
                })
                .try_fold(0u64, |acc, x| acc.checked_add(x))
                .expect("dimension sum overflow")
        })
        .collect();
    DimensionSequence(values)
}

/// Growth bound used by [`complexity_upper_bound`]: a sequence "looks
/// bounded" at rate `s` while `seq_t <= BOUND * seq_0 * (t+1)^(s-1)`.
pub const COMPLEXITY_GROWTH_BOUND: u64 = 8;

/// Prefix estimate of the complexity: the smallest `s >= 0` such that
/// `seq_t / (t+1)^(s-1)` stays within the growth bound over the prefix,
/// normalized by the first value. Complexity is an asymptotic notion; a
/// finite prefix can only estimate it, and short prefixes underestimate.
pub fn complexity_upper_bound(seq: &DimensionSequence) -> u32 {
    complexity_upper_bound_with(seq, COMPLEXITY_GROWTH_BOUND)
}

pub fn complexity_upper_bound_with(seq: &DimensionSequence, bound: u64) -> u32 {
    if seq.is_empty() {
        return 0; // projective: trivial resolution
    }
    let base = seq.0[0] as u128 * bound as u128;
    's: for s in 0u32.. {
        for (t, &v) in seq.0.iter().enumerate() {
            let t1 = (t + 1) as u128;
            let ok = if s == 0 {
                (v as u128).saturating_mul(t1) <= base
            } else {
                let weight = t1.checked_pow(s - 1).unwrap_or(u128::MAX);
                v as u128 <= base.saturating_mul(weight)
            };
            if !ok {
                continue 's;
            }
        }
        return s;
    }
    unreachable!("the bound check succeeds for large s")
}

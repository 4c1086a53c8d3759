//! Unit equations `a·f·a' + b·g·b' = 1` with f ∈ Γ₁, g ∈ Γ₂.
//!
//! Solutions split by whether |1 − afa'| = |afa'|. Off that hyperplane the
//! exponents are bounded through a linear form in the logarithms of the
//! generator moduli; on it (Γ commutative) through a linear form in their
//! arguments. Both bounds are emitted as certificates; the search itself is
//! exhaustive over a configurable word-length window.

mod bounds;
mod matrix;
mod oracle;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::realalg::{arg_interval, AlgebraicComplex, RInterval};
use crate::semigroup::{self, enumerate_by_length, membership, SemigroupSpec, Word};

pub use bounds::{locus_bound, reduction_bound, Comparability, LocusBound, LocusKind, ReductionBound};
pub use matrix::{matrix_counterexample, MatrixPair, RatMatrix};
pub use oracle::brute_force_oracle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitEquationInstance {
    pub a: Quaternion,
    pub a_p: Quaternion,
    pub b: Quaternion,
    pub b_p: Quaternion,
    pub gamma1: SemigroupSpec,
    pub gamma2: SemigroupSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusInstance {
    pub a: Quaternion,
    pub a_p: Quaternion,
    pub gamma: SemigroupSpec,
}

/// Search window and numeric settings shared by the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub oracle_len: usize,
    pub precision_bits: u32,
    pub element_cap: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            oracle_len: 12,
            precision_bits: 128,
            element_cap: semigroup::DEFAULT_ELEMENT_CAP,
        }
    }
}

impl SolveConfig {
    pub fn with_window(oracle_len: usize) -> Self {
        SolveConfig {
            oracle_len,
            ..Self::default()
        }
    }
}

fn nonzero(q: &Quaternion, name: &str) -> Result<()> {
    if q.is_zero() {
        Err(Error::parse(name, "unit must be nonzero"))
    } else {
        Ok(())
    }
}

impl UnitEquationInstance {
    pub fn validate(&self) -> Result<()> {
        nonzero(&self.a, "a")?;
        nonzero(&self.a_p, "a_prime")?;
        nonzero(&self.b, "b")?;
        nonzero(&self.b_p, "b_prime")?;
        semigroup::validate(&self.gamma1).map_err(|e| wrap_gamma(e, "gamma1"))?;
        semigroup::validate(&self.gamma2).map_err(|e| wrap_gamma(e, "gamma2"))?;
        Ok(())
    }

    /// a·f·a' + b·g·b'.
    pub fn lhs(&self, f: &Quaternion, g: &Quaternion) -> Quaternion {
        self.a
            .mul(f)
            .mul(&self.a_p)
            .add(&self.b.mul(g).mul(&self.b_p))
    }

    pub fn is_solution(&self, f: &Quaternion, g: &Quaternion) -> bool {
        self.lhs(f, g) == Quaternion::one()
    }

    /// The g forced by f: b⁻¹(1 − a·f·a')b'⁻¹.
    pub fn forced_g(&self, f: &Quaternion) -> Result<Quaternion> {
        let rest = Quaternion::one().sub(&self.a.mul(f).mul(&self.a_p));
        Ok(self.b.inv()?.mul(&rest).mul(&self.b_p.inv()?))
    }

    pub fn locus(&self) -> LocusInstance {
        LocusInstance {
            a: self.a.clone(),
            a_p: self.a_p.clone(),
            gamma: self.gamma1.clone(),
        }
    }
}

fn wrap_gamma(e: Error, name: &str) -> Error {
    match e {
        Error::NormNotAboveOne { index } => Error::parse(
            format!("{name}.generators[{index}]"),
            "generator norm must exceed 1",
        ),
        Error::ZeroGenerator { index } => {
            Error::parse(format!("{name}.generators[{index}]"), "generator is zero")
        }
        Error::DuplicateGenerator { first, second } => Error::parse(
            format!("{name}.generators[{second}]"),
            format!("duplicates generator {first}"),
        ),
        Error::EmptySemigroup => Error::parse(format!("{name}.generators"), "no generators"),
        other => other,
    }
}

impl LocusInstance {
    pub fn validate(&self) -> Result<()> {
        nonzero(&self.a, "a")?;
        nonzero(&self.a_p, "a_prime")?;
        let v = semigroup::validate(&self.gamma).map_err(|e| wrap_gamma(e, "gamma"))?;
        if !v.commutative {
            return Err(Error::NotCommutative);
        }
        Ok(())
    }

    /// d = a⁻¹·a'⁻¹.
    pub fn d(&self) -> Result<Quaternion> {
        Ok(self.a.inv()?.mul(&self.a_p.inv()?))
    }
}

/// Whether 2⟨d, f⟩ = N(d), i.e. f lies on the hyperplane |1 − afa'| = |afa'|.
pub fn hyperplane_test(inst: &LocusInstance, f: &Quaternion) -> Result<bool> {
    Ok(on_hyperplane(&inst.d()?, f))
}

fn on_hyperplane(d: &Quaternion, f: &Quaternion) -> bool {
    let lhs = d.dot(f);
    lhs.add(&lhs) == d.norm()
}

/// Γ inside span{1, u} ≅ ℂ.
#[derive(Clone, Debug)]
pub struct CommutativeEmbedding {
    pub u: Quaternion,
    pub images: Vec<AlgebraicComplex>,
    pub theta_intervals: Vec<RInterval>,
}

impl CommutativeEmbedding {
    pub fn image_of(&self, q: &Quaternion) -> Result<AlgebraicComplex> {
        image_in_plane(q, &self.u).ok_or(Error::NotCoplanar)
    }

    pub fn lift(&self, z: &AlgebraicComplex) -> Quaternion {
        Quaternion::real(z.re.clone()).add(&self.u.scale(&z.im))
    }
}

fn image_in_plane(q: &Quaternion, u: &Quaternion) -> Option<AlgebraicComplex> {
    let p = q.a.clone();
    let s = q.vector().dot(u);
    let back = Quaternion::real(p.clone()).add(&u.scale(&s));
    (back == *q).then(|| AlgebraicComplex::new(p, s))
}

/// Embedding of a commutative semigroup into ℂ; u = i when every generator is real.
pub fn embed_commutative(gamma: &SemigroupSpec, bits: u32) -> Result<CommutativeEmbedding> {
    if !gamma.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let u = match gamma.generators.iter().find(|g| !g.is_real()) {
        None => Quaternion::i(),
        Some(g) => {
            let v = g.vector();
            v.scale(&v.abs().inv()?)
        }
    };
    debug_assert!(u.mul(&u) == Quaternion::from_ints(-1, 0, 0, 0));
    let images = gamma
        .generators
        .iter()
        .map(|g| image_in_plane(g, &u).ok_or(Error::NotCoplanar))
        .collect::<Result<Vec<_>>>()?;
    let theta_intervals = images
        .iter()
        .map(|z| arg_interval(z, bits))
        .collect::<Result<Vec<_>>>()?;
    Ok(CommutativeEmbedding {
        u,
        images,
        theta_intervals,
    })
}

/// Certified exponent bound, or a value beyond 2^64.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeightCap {
    Finite(u64),
    Overflow(BigInt),
}

impl HeightCap {
    pub fn from_big(h: BigInt) -> Self {
        match h.to_u64() {
            Some(v) => HeightCap::Finite(v),
            None => HeightCap::Overflow(h),
        }
    }

    pub fn as_big(&self) -> BigInt {
        match self {
            HeightCap::Finite(v) => BigInt::from(*v),
            HeightCap::Overflow(h) => h.clone(),
        }
    }

    /// Whether every exponent below the cap fits in words of length ≤ window
    /// for a semigroup with `gens` generators.
    pub fn covered_by(&self, window: usize, gens: usize) -> bool {
        match self {
            HeightCap::Finite(v) => {
                (*v as u128).saturating_sub(1) * gens as u128 <= window as u128
            }
            HeightCap::Overflow(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub f_word: Word,
    pub g_word: Word,
    pub f_value: Quaternion,
    pub g_value: Quaternion,
}

impl Solution {
    fn canonical_cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.f_word
            .canonical_cmp(&o.f_word)
            .then_with(|| self.g_word.canonical_cmp(&o.g_word))
    }

    /// Largest letter count across both words.
    pub fn max_exponent(&self, t: usize, u: usize) -> u64 {
        self.f_word.max_exponent(t).max(self.g_word.max_exponent(u))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletenessStatus {
    OracleCompleteBelowCap,
    OracleWindowOnly,
}

impl CompletenessStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CompletenessStatus::OracleCompleteBelowCap => "ORACLE_COMPLETE_BELOW_CAP",
            CompletenessStatus::OracleWindowOnly => "ORACLE_WINDOW_ONLY",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub reduction: ReductionBound,
    pub locus: Option<LocusBound>,
    pub oracle_window: usize,
}

#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub solutions: Vec<Solution>,
    pub certificate: Option<Certificate>,
    pub completeness_status: CompletenessStatus,
}

#[derive(Clone, Debug)]
pub struct LocusSolutions {
    pub solutions: Vec<(Word, Quaternion)>,
    pub bound: LocusBound,
}

fn sort_solutions(mut v: Vec<Solution>) -> Vec<Solution> {
    v.sort_by(Solution::canonical_cmp);
    v.dedup_by(|a, b| a.f_value == b.f_value && a.g_value == b.g_value);
    v
}

/// Reduction-branch candidates: f off the hyperplane with g = b⁻¹(1−afa')b'⁻¹ ∈ Γ₂.
fn reduction_candidates(inst: &UnitEquationInstance, cfg: &SolveConfig) -> Result<Vec<Solution>> {
    let d = inst.locus().d()?;
    let fs = enumerate_by_length(&inst.gamma1, cfg.oracle_len, cfg.element_cap)?;
    let found: Vec<Option<Solution>> = fs
        .par_iter()
        .map(|f| -> Result<Option<Solution>> {
            if on_hyperplane(&d, &f.value) {
                return Ok(None);
            }
            let g = inst.forced_g(&f.value)?;
            if g.is_zero() {
                return Ok(None);
            }
            let word = membership(&inst.gamma2, &g, Some(cfg.oracle_len), cfg.element_cap)?;
            Ok(word.map(|g_word| Solution {
                f_word: f.shortest().clone(),
                g_word,
                f_value: f.value.clone(),
                g_value: g,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn verified(inst: &UnitEquationInstance, sols: Vec<Solution>) -> Vec<Solution> {
    sols.into_iter()
        .filter(|s| {
            let ok = inst.is_solution(&s.f_value, &s.g_value)
                && s.f_word.eval(&inst.gamma1) == s.f_value
                && s.g_word.eval(&inst.gamma2) == s.g_value;
            assert!(ok, "search produced a pair that fails exact re-verification");
            ok
        })
        .collect()
}

/// Solutions off the hyperplane within the window, with the reduction certificate.
pub fn solve_reduction(inst: &UnitEquationInstance, cfg: &SolveConfig) -> Result<SolutionSet> {
    inst.validate()?;
    let bound = reduction_bound(inst, cfg.precision_bits)?;
    let sols = verified(inst, reduction_candidates(inst, cfg)?);
    let (t, u) = (inst.gamma1.len(), inst.gamma2.len());
    let status = if bound.h_cap.covered_by(cfg.oracle_len, t.max(u)) {
        CompletenessStatus::OracleCompleteBelowCap
    } else {
        CompletenessStatus::OracleWindowOnly
    };
    Ok(SolutionSet {
        solutions: sort_solutions(sols),
        certificate: Some(Certificate {
            reduction: bound,
            locus: None,
            oracle_window: cfg.oracle_len,
        }),
        completeness_status: status,
    })
}

/// Elements of Γ on the hyperplane within the window, with the locus certificate.
pub fn solve_locus(inst: &LocusInstance, cfg: &SolveConfig) -> Result<LocusSolutions> {
    inst.validate()?;
    let bound = locus_bound(inst, cfg.precision_bits)?;
    let d = inst.d()?;
    let fs = enumerate_by_length(&inst.gamma, cfg.oracle_len, cfg.element_cap)?;
    let solutions = fs
        .into_iter()
        .filter(|f| on_hyperplane(&d, &f.value))
        .map(|f| (f.shortest().clone(), f.value))
        .collect();
    Ok(LocusSolutions { solutions, bound })
}

/// All solutions within the window for commutative Γ₁, with both certificates.
pub fn solve_main(inst: &UnitEquationInstance, cfg: &SolveConfig) -> Result<SolutionSet> {
    inst.validate()?;
    if !inst.gamma1.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let reduction = solve_reduction(inst, cfg)?;
    let locus = solve_locus(&inst.locus(), cfg)?;
    let mut sols = reduction.solutions;
    for (f_word, f) in &locus.solutions {
        let g = inst.forced_g(f)?;
        if g.is_zero() {
            continue;
        }
        if let Some(g_word) = membership(&inst.gamma2, &g, Some(cfg.oracle_len), cfg.element_cap)? {
            sols.push(Solution {
                f_word: f_word.clone(),
                g_word,
                f_value: f.clone(),
                g_value: g,
            });
        }
    }
    let certificate = reduction.certificate.expect("reduction attaches a certificate");
    let (t, u) = (inst.gamma1.len(), inst.gamma2.len());
    // g on the locus branch is only searched inside the window, so completeness
    // needs an empty locus on top of both caps being covered.
    let complete = reduction.completeness_status == CompletenessStatus::OracleCompleteBelowCap
        && locus.bound.is_empty()
        && locus.bound.cap.covered_by(cfg.oracle_len, t.max(u));
    Ok(SolutionSet {
        solutions: sort_solutions(verified(inst, sols)),
        certificate: Some(Certificate {
            reduction: certificate.reduction,
            locus: Some(locus.bound),
            oracle_window: cfg.oracle_len,
        }),
        completeness_status: if complete {
            CompletenessStatus::OracleCompleteBelowCap
        } else {
            CompletenessStatus::OracleWindowOnly
        },
    })
}

/// Exact |1 − q| = |q| test by norms, independent of the inner-product form.
pub fn equidistant_by_norms(a: &Quaternion, a_p: &Quaternion, f: &Quaternion) -> bool {
    let x = a.mul(f).mul(a_p);
    Quaternion::one().sub(&x).norm() == x.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::rat;
    use proptest::prelude::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion {
        Quaternion::from_ints(a, b, c, d)
    }

    fn cyclic(g: Quaternion) -> SemigroupSpec {
        SemigroupSpec::new(vec![g])
    }

    pub(crate) fn catalan() -> UnitEquationInstance {
        UnitEquationInstance {
            a: Quaternion::one(),
            a_p: Quaternion::one(),
            b: q(-1, 0, 0, 0),
            b_p: Quaternion::one(),
            gamma1: cyclic(q(3, 0, 0, 0)),
            gamma2: cyclic(q(2, 0, 0, 0)),
        }
    }

    fn exponents(s: &SolutionSet) -> Vec<(usize, usize)> {
        s.solutions.iter().map(|s| (s.f_word.len(), s.g_word.len())).collect()
    }

    #[test]
    fn hyperplane_examples() {
        let inst = LocusInstance {
            a: Quaternion::one(),
            a_p: Quaternion::one(),
            gamma: cyclic(q(2, 0, 0, 0)),
        };
        let f = Quaternion::from_rats(rat(1, 2), rat(5, 1), rat(0, 1), rat(0, 1));
        assert!(hyperplane_test(&inst, &f).unwrap());
        assert!(!hyperplane_test(&inst, &q(2, 0, 0, 0)).unwrap());
    }

    fn small_quat() -> impl Strategy<Value = Quaternion> {
        let r = || (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d));
        (r(), r(), r(), r()).prop_map(|(a, b, c, d)| Quaternion::from_rats(a, b, c, d))
    }

    proptest! {
        #[test]
        fn hyperplane_matches_norm_equation(a in small_quat(), ap in small_quat(), f in small_quat()) {
            prop_assume!(!a.is_zero() && !ap.is_zero());
            let inst = LocusInstance { a: a.clone(), a_p: ap.clone(), gamma: cyclic(q(2, 0, 0, 0)) };
            prop_assert_eq!(hyperplane_test(&inst, &f).unwrap(), equidistant_by_norms(&a, &ap, &f));
        }

        #[test]
        fn forced_g_solves_the_equation(f in small_quat()) {
            let inst = catalan();
            let g = inst.forced_g(&f).unwrap();
            prop_assert!(inst.is_solution(&f, &g));
        }
    }

    #[test]
    fn embedding_examples() {
        let e = embed_commutative(&SemigroupSpec::new(vec![q(2, 0, 0, 0), q(3, 0, 0, 0)]), 32).unwrap();
        assert_eq!(e.u, Quaternion::i());
        assert!(e.images.iter().all(|z| z.im.is_zero()));
        let e = embed_commutative(&cyclic(q(1, 1, 0, 0)), 32).unwrap();
        assert_eq!(e.u, Quaternion::i());
        assert_eq!(e.images[0], AlgebraicComplex::new(1.into(), 1.into()));
        let e = embed_commutative(&SemigroupSpec::new(vec![q(1, 0, 1, 0), q(3, 0, -2, 0)]), 32).unwrap();
        assert_eq!(e.u, Quaternion::j());
        assert_eq!(e.images[1], AlgebraicComplex::new(3.into(), (-2).into()));
        assert_eq!(e.u.mul(&e.u), q(-1, 0, 0, 0));
        assert!(matches!(
            embed_commutative(&SemigroupSpec::new(vec![q(1, 1, 0, 0), q(1, 0, 1, 0)]), 32),
            Err(Error::NotCommutative)
        ));
    }

    #[test]
    fn embedding_is_multiplicative() {
        let s = SemigroupSpec::new(vec![q(1, 1, 1, 0), q(2, 3, 3, 0)]);
        let e = embed_commutative(&s, 32).unwrap();
        for el in enumerate_by_length(&s, 4, 1_000_000).unwrap() {
            let z = el
                .shortest()
                .0
                .iter()
                .fold(AlgebraicComplex::from_real(1.into()), |acc, &i| acc.mul(&e.images[i]));
            assert_eq!(e.lift(&z), el.value);
            assert_eq!(e.image_of(&el.value).unwrap(), z);
        }
    }

    #[test]
    fn catalan_reduction() {
        let s = solve_reduction(&catalan(), &SolveConfig::with_window(30)).unwrap();
        assert_eq!(exponents(&s), vec![(1, 1), (2, 3)]);
        assert_eq!(s.completeness_status, CompletenessStatus::OracleWindowOnly);
    }

    #[test]
    fn positive_sums_have_no_solutions() {
        let inst = UnitEquationInstance {
            a: Quaternion::one(),
            a_p: Quaternion::one(),
            b: Quaternion::one(),
            b_p: Quaternion::one(),
            gamma1: cyclic(q(2, 0, 0, 0)),
            gamma2: cyclic(q(3, 0, 0, 0)),
        };
        assert!(solve_main(&inst, &SolveConfig::with_window(20)).unwrap().solutions.is_empty());
    }

    #[test]
    fn main_agrees_with_oracle_on_catalan() {
        let inst = catalan();
        let cfg = SolveConfig::with_window(30);
        let main = solve_main(&inst, &cfg).unwrap();
        let oracle = brute_force_oracle(&inst, 30, cfg.element_cap).unwrap();
        assert_eq!(main.solutions, oracle.solutions);
    }

    #[test]
    fn locus_examples() {
        let half = Quaternion::from_rats(rat(1, 2), rat(0, 1), rat(0, 1), rat(0, 1));
        let inst = |a: Quaternion, g: Quaternion| LocusInstance {
            a,
            a_p: Quaternion::one(),
            gamma: cyclic(g),
        };
        let cfg = SolveConfig::with_window(50);
        let two = solve_locus(&inst(Quaternion::one(), q(2, 0, 0, 0)), &cfg).unwrap();
        assert!(two.solutions.is_empty());
        assert!(two.bound.is_empty());
        let re1 = solve_locus(&inst(half, q(1, 1, 0, 0)), &cfg).unwrap();
        assert_eq!(re1.solutions.len(), 1);
        assert_eq!(re1.solutions[0].1, q(1, 1, 0, 0));
        assert!(matches!(re1.bound.cap, HeightCap::Finite(_) | HeightCap::Overflow(_)));
        let a7 = Quaternion::from_rats(rat(1, 14), rat(0, 1), rat(0, 1), rat(0, 1));
        let re7 = solve_locus(&inst(a7, q(1, 1, 0, 0)), &cfg).unwrap();
        assert!(re7.solutions.is_empty());
    }

    #[test]
    fn zero_g_is_rejected() {
        // a·f·a' = 1 for f = 2 forces g = 0
        let inst = UnitEquationInstance {
            a: Quaternion::from_rats(rat(1, 2), rat(0, 1), rat(0, 1), rat(0, 1)),
            a_p: Quaternion::one(),
            b: Quaternion::one(),
            b_p: Quaternion::one(),
            gamma1: cyclic(q(2, 0, 0, 0)),
            gamma2: cyclic(q(3, 0, 0, 0)),
        };
        let s = solve_reduction(&inst, &SolveConfig::with_window(6)).unwrap();
        assert!(s.solutions.is_empty());
    }
}

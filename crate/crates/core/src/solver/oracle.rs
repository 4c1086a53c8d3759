//! Brute-force reference solver: both semigroups enumerated, pairs joined by value.

use std::collections::HashMap;

use super::{sort_solutions, CompletenessStatus, Solution, SolutionSet, UnitEquationInstance};
use crate::error::Result;
use crate::quat::Quaternion;
use crate::semigroup::enumerate_by_length;

/// Every pair of words of length ≤ max_len with a·f·a' + b·g·b' = 1.
///
/// Γ₂ is tabulated as b·g·b' and probed with 1 − a·f·a', so no inverse is
/// ever formed and membership search is not involved.
pub fn brute_force_oracle(inst: &UnitEquationInstance, max_len: usize, cap: u64) -> Result<SolutionSet> {
    inst.validate()?;
    let fs = enumerate_by_length(&inst.gamma1, max_len, cap)?;
    let gs = enumerate_by_length(&inst.gamma2, max_len, cap)?;
    let table: HashMap<Quaternion, usize> = gs
        .iter()
        .enumerate()
        .map(|(i, g)| (inst.b.mul(&g.value).mul(&inst.b_p), i))
        .collect();
    let mut out = Vec::new();
    for f in &fs {
        let rest = Quaternion::one().sub(&inst.a.mul(&f.value).mul(&inst.a_p));
        if let Some(&i) = table.get(&rest) {
            let g = &gs[i];
            debug_assert!(inst.is_solution(&f.value, &g.value));
            out.push(Solution {
                f_word: f.shortest().clone(),
                g_word: g.shortest().clone(),
                f_value: f.value.clone(),
                g_value: g.value.clone(),
            });
        }
    }
    Ok(SolutionSet {
        solutions: sort_solutions(out),
        certificate: None,
        completeness_status: CompletenessStatus::OracleWindowOnly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::SemigroupSpec;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion {
        Quaternion::from_ints(a, b, c, d)
    }

    fn catalan() -> UnitEquationInstance {
        UnitEquationInstance {
            a: Quaternion::one(),
            a_p: Quaternion::one(),
            b: q(-1, 0, 0, 0),
            b_p: Quaternion::one(),
            gamma1: SemigroupSpec::new(vec![q(3, 0, 0, 0)]),
            gamma2: SemigroupSpec::new(vec![q(2, 0, 0, 0)]),
        }
    }

    #[test]
    fn catalan_pairs() {
        let s = brute_force_oracle(&catalan(), 30, 1_000_000).unwrap();
        let vals: Vec<_> = s.solutions.iter().map(|s| (s.f_value.clone(), s.g_value.clone())).collect();
        assert_eq!(vals, vec![(q(3, 0, 0, 0), q(2, 0, 0, 0)), (q(9, 0, 0, 0), q(8, 0, 0, 0))]);
    }

    #[test]
    fn empty_window() {
        assert!(brute_force_oracle(&catalan(), 0, 10).unwrap().solutions.is_empty());
    }

    #[test]
    fn swapping_the_roles_is_a_bijection() {
        // 3^m − 2^n = 1  ⇔  −2^n + 3^m = 1 with the semigroups exchanged
        let c = catalan();
        let swapped = UnitEquationInstance {
            a: c.b.clone(),
            a_p: c.b_p.clone(),
            b: c.a.clone(),
            b_p: c.a_p.clone(),
            gamma1: c.gamma2.clone(),
            gamma2: c.gamma1.clone(),
        };
        let x = brute_force_oracle(&c, 12, 1_000_000).unwrap();
        let y = brute_force_oracle(&swapped, 12, 1_000_000).unwrap();
        let mut xs: Vec<_> = x.solutions.iter().map(|s| (s.f_value.to_string(), s.g_value.to_string())).collect();
        let mut ys: Vec<_> = y.solutions.iter().map(|s| (s.g_value.to_string(), s.f_value.to_string())).collect();
        xs.sort();
        ys.sort();
        assert_eq!(xs, ys);
    }
}

//! The cycle lemma for sequences summing to 1 and its path form.

use std::ops::RangeInclusive;

use crate::error::{CfError, Result};
use crate::family::{distribution_table, Budget, DistributionTable, FamilySpec, Statistic};
use crate::path::Path;
use crate::stats::{self, Selector};

fn check_sum(a: &[i64]) -> Result<()> {
    let s: i64 = a.iter().sum();
    if s != 1 {
        return Err(CfError::SumNotOne(s));
    }
    Ok(())
}

/// `n * S_i = n * (a_1 + ... + a_i) - i` for `i = 0..n-1`.
pub fn scaled_partial_sums(a: &[i64]) -> Result<Vec<i64>> {
    check_sum(a)?;
    let n = a.len() as i64;
    let mut out = Vec::with_capacity(a.len());
    let mut acc = 0i64;
    for (i, &v) in a.iter().enumerate() {
        out.push(n * acc - i as i64);
        acc += v;
    }
    Ok(out)
}

/// Indices `i` in `0..n` whose prefix sum `a_1 + ... + a_i` is at most 0.
pub fn nonpositive_prefix_count(a: &[i64]) -> usize {
    let mut acc = 0i64;
    let mut count = 0;
    for &v in a {
        if acc <= 0 {
            count += 1;
        }
        acc += v;
    }
    count
}

pub fn rotate(a: &[i64], i: usize) -> Vec<i64> {
    let mut out = a[i..].to_vec();
    out.extend_from_slice(&a[..i]);
    out
}

/// The unique rotation `i` such that `rotate(a, i)` has exactly `k` nonpositive prefix sums.
///
/// The conjugate starting at `i` has as many nonpositive prefix sums as there
/// are indices `j` with `S_j <= S_i`, so `i` is where the `k`-th smallest
/// scaled sum sits.
pub fn unique_conjugate_with(a: &[i64], k: usize) -> Result<usize> {
    let sums = scaled_partial_sums(a)?;
    if k == 0 || k > a.len() {
        return Err(CfError::OutOfRange { what: "k", value: k as i64, max: a.len() as i64 });
    }
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&i| sums[i]);
    Ok(order[k - 1])
}

/// For each conjugate beginning at a special vertex, the rotation index and the
/// number of special vertices of that conjugate lying on or below the axis.
///
/// Special vertices are chosen cyclically on `p` and carried along by rotation.
pub fn special_vertex_orbit(p: &Path, sel: Selector) -> Result<Vec<(usize, usize)>> {
    if p.end_height() != 1 {
        return Err(CfError::EndHeight {
            expected: 1,
            found: p.end_height(),
            hint: "; group steps into blocks first",
        });
    }
    let m = p.step_count();
    let special = stats::select_cyclic(p, sel)?;
    let mut out = Vec::with_capacity(special.len());
    for &t in &special {
        let q = p.conjugate(t)?;
        let x = special.iter().filter(|&&v| q.height((v + m - t) % m) <= 0).count();
        out.push((t, x));
    }
    Ok(out)
}

/// Exhaustive distribution of `statistic` over the family, with `domain` as
/// the admissible values. The family passes when the table is uniform.
pub fn verify_equidistribution(
    spec: &FamilySpec,
    statistic: Statistic,
    domain: RangeInclusive<i64>,
    budget: Budget,
) -> Result<DistributionTable> {
    distribution_table(spec, statistic, Some(domain), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::{build_path, StepSet};
    use std::sync::Arc;

    #[test]
    fn scaled_sums() {
        assert_eq!(scaled_partial_sums(&[1, 1, -1]).unwrap(), vec![0, 2, 4]);
        assert_eq!(scaled_partial_sums(&[-1, 1, 1]).unwrap(), vec![0, -4, -2]);
        assert_eq!(scaled_partial_sums(&[1, 1]), Err(CfError::SumNotOne(2)));
    }

    #[test]
    fn prefix_counts() {
        assert_eq!(nonpositive_prefix_count(&[1, 1, -1]), 1);
        assert_eq!(nonpositive_prefix_count(&[1, -1, 1]), 2);
        assert_eq!(nonpositive_prefix_count(&[-1, 1, 1]), 3);
    }

    #[test]
    fn conjugate_choice() {
        let a = [1, 1, -1];
        assert_eq!(unique_conjugate_with(&a, 1).unwrap(), 0);
        assert_eq!(unique_conjugate_with(&a, 2).unwrap(), 1);
        assert_eq!(unique_conjugate_with(&a, 3).unwrap(), 2);
        assert!(unique_conjugate_with(&a, 0).is_err());
        assert!(unique_conjugate_with(&a, 4).is_err());
    }

    #[test]
    fn orbit_examples() {
        let set = Arc::new(StepSet::dyck());
        let p = build_path(&set, "UUD").unwrap();
        assert_eq!(special_vertex_orbit(&p, Selector::UpStart).unwrap(), vec![(0, 1), (1, 2)]);
        let mut xs: Vec<usize> = special_vertex_orbit(&p, Selector::AllStarts).unwrap().into_iter().map(|(_, x)| x).collect();
        xs.sort();
        assert_eq!(xs, vec![1, 2, 3]);
        let q = build_path(&set, "UD").unwrap();
        assert!(matches!(special_vertex_orbit(&q, Selector::UpStart), Err(CfError::EndHeight { found: 0, .. })));
    }

    #[test]
    fn down_start_orbit_on_p311() {
        for p in crate::family::enumerate_family(&FamilySpec::p(3, 1, 1)).unwrap() {
            let mut xs: Vec<usize> = special_vertex_orbit(&p, Selector::DownStart).unwrap().into_iter().map(|(_, x)| x).collect();
            xs.sort();
            assert_eq!(xs, vec![1, 2, 3], "{p}");
        }
    }

    #[test]
    fn equidistribution_example() {
        let t = verify_equidistribution(
            &FamilySpec::p(2, 1, 1).first("U"),
            Statistic::OnOrBelow(Selector::UpStart),
            1..=3,
            Budget::default(),
        )
        .unwrap();
        assert_eq!(t.common_count(), Some(2));
    }
}

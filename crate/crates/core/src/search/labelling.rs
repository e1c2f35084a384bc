//! Grouping a vertex set into bounded interventions that separate every pair.

use crate::error::{Error, Result};

/// Groups of at most `k` vertices of `q` such that every pair of vertices in
/// `q` is split by some group (exactly one of the two is in it).
///
/// With `k' = min(k, |q|/2)`, `a = ceil(|q| / k')` and `l = ceil(log_a n)`,
/// the `i`-th vertex gets the length-`l` label with digits
/// `d_0 = i mod a` and `d_x = (floor(i / a^x) + i) mod a` for `x >= 1`.
/// Each group collects the vertices sharing one digit value at one position;
/// empty groups are dropped. The shift keeps every group within
/// `ceil(|q| / a)` vertices, which plain base-`a` digits do not.
pub fn bounded_labelled_groups(q: &[usize], k: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    let m = q.len();
    if m < 2 || k < 2 {
        return Err(Error::InvalidInput(
            "labelled groups need at least two vertices and k >= 2".into(),
        ));
    }
    let n = n.max(m);
    // a = ceil(m / min(k, m/2)) computed without fractions.
    let a = if 2 * k <= m { m.div_ceil(k) } else { 2 };
    let mut len = 1;
    let mut reach = a;
    while reach < n {
        reach = reach.saturating_mul(a);
        len += 1;
    }
    let mut sorted = q.to_vec();
    sorted.sort_unstable();
    let mut groups = Vec::new();
    let mut scale = 1usize;
    for x in 0..len {
        let mut buckets = vec![Vec::new(); a];
        for (i, &v) in sorted.iter().enumerate() {
            let digit = if x == 0 { i % a } else { (i / scale % a + i) % a };
            buckets[digit].push(v);
        }
        groups.extend(buckets.into_iter().filter(|b| !b.is_empty()));
        scale = scale.saturating_mul(a);
    }
    Ok(groups)
}

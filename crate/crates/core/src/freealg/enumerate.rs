use super::term::Term;

/// Basis of the free non-unital commutative algebra on `items`, graded by
/// weight: `by_weight[w]` lists the items of weight `w`. Returns the
/// monomials of each weight `0..=max_weight`, each list sorted.
pub fn free_monomials(by_weight: &[Vec<Term>], max_weight: usize) -> Vec<Vec<Term>> {
    let mut items: Vec<(usize, &Term)> = Vec::new();
    for (w, ts) in by_weight.iter().enumerate().take(max_weight + 1) {
        if w == 0 {
            continue;
        }
        items.extend(ts.iter().map(|t| (w, t)));
    }
    items.sort_by(|a, b| a.1.cmp(b.1));
    let mut out = vec![Vec::new(); max_weight + 1];
    let mut stack: Vec<&Term> = Vec::new();
    fn go<'a>(
        items: &[(usize, &'a Term)],
        start: usize,
        used: usize,
        max: usize,
        stack: &mut Vec<&'a Term>,
        out: &mut Vec<Vec<Term>>,
    ) {
        if !stack.is_empty() {
            out[used].push(Term::node_sorted(stack.iter().map(|t| (*t).clone()).collect()));
        }
        for k in start..items.len() {
            let (w, t) = items[k];
            if used + w > max {
                continue;
            }
            stack.push(t);
            go(items, k, used + w, max, stack, out);
            stack.pop();
        }
    }
    go(&items, 0, 0, max_weight, &mut stack, &mut out);
    for v in &mut out {
        v.sort();
    }
    out
}

/// Number of weight-`w` monomials over items counted by weight, for each
/// `w ≤ max_weight`; saturates instead of overflowing.
pub fn free_counts(counts: &[u128], max_weight: usize) -> Vec<u128> {
    let mut out = vec![0u128; max_weight + 1];
    out[0] = 1;
    for (k, &a) in counts.iter().enumerate().take(max_weight + 1) {
        if k == 0 || a == 0 {
            continue;
        }
        // multiply by (1 - x^k)^(-a) = sum_m C(a+m-1, m) x^(km)
        let mut next = vec![0u128; max_weight + 1];
        for (w, &base) in out.iter().enumerate() {
            if base == 0 {
                continue;
            }
            let mut binom: u128 = 1;
            let mut m: u128 = 0;
            let mut pos = w;
            while pos <= max_weight {
                next[pos] = next[pos].saturating_add(base.saturating_mul(binom));
                binom = binom.saturating_mul(a + m) / (m + 1);
                m += 1;
                pos += k;
            }
        }
        out = next;
    }
    out[0] = 0;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Generator;

    #[test]
    fn counts_match_enumeration() {
        let gens: Vec<Term> = ["a", "b"].iter().map(|s| Term::Leaf(Generator::new(s, 0, 1))).collect();
        let by_weight = vec![vec![], gens, vec![Term::Leaf(Generator::new("c", 0, 2))]];
        let m = free_monomials(&by_weight, 4);
        let c = free_counts(&[0, 2, 1], 4);
        for w in 0..=4 {
            assert_eq!(m[w].len() as u128, c[w], "weight {w}");
        }
        assert_eq!(m[2].len(), 4);
    }
}

//! Bundled test objects: Eilenberg–MacLane models, free algebras on them,
//! a direct sum and mutated copies for negative tests.

use std::collections::BTreeMap;

use super::explicit::{direct_sum, ExplicitAlgebra};
use super::space::Truncation;
use crate::error::Result;
use crate::exactlin::Field;
use crate::freealg::{Element, Term};

/// Nondecreasing surjections `[m] → [n]`, as sequences of values.
pub fn surjections(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m < n {
        return out;
    }
    fn go(m: usize, n: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *seq.last().unwrap();
        if seq.len() == m + 1 {
            if last == n {
                out.push(seq.clone());
            }
            return;
        }
        let remaining = m + 1 - seq.len();
        for step in [0, 1] {
            let v = last + step;
            if v <= n && n - v < remaining {
                seq.push(v);
                go(m, n, seq, out);
                seq.pop();
            }
        }
    }
    go(m, n, &mut vec![0], &mut out);
    out
}

fn is_surjection(seq: &[usize], n: usize) -> bool {
    seq.first() == Some(&0) && seq.last() == Some(&n) && seq.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
}

/// Name of the degenerate simplex `s_{j1}⋯s_{jk} x` (j descending) for a surjection.
pub fn degenerate_symbol(seq: &[usize], base: &str) -> String {
    let mut s = String::new();
    for j in (0..seq.len().saturating_sub(1)).rev() {
        if seq[j] == seq[j + 1] {
            s.push_str(&format!("s{j}"));
        }
    }
    s.push_str(base);
    s
}

fn face_seq(seq: &[usize], i: usize, n: usize) -> Option<Vec<usize>> {
    let mut v = seq.to_vec();
    v.remove(i);
    is_surjection(&v, n).then_some(v)
}

fn degeneracy_seq(seq: &[usize], i: usize) -> Vec<usize> {
    let mut v = seq.to_vec();
    v.insert(i, seq[i]);
    v
}

/// The zero-square model `K(k, n)`: one generator in degree `n`, weight one,
/// whose level `m` has basis the surjections `[m] → [n]`.
pub fn eilenberg_maclane(field: Field, n: usize, truncation: Truncation, symbol: &str) -> Result<ExplicitAlgebra> {
    let name = format!("K({n})");
    let mut b = ExplicitAlgebra::builder(&name, field, truncation, true);
    let top = truncation.max_degree;
    for m in 0..=top {
        for seq in surjections(m, n) {
            b.generator(m, &degenerate_symbol(&seq, symbol), Some(1))?;
        }
    }
    let one = field.one();
    for m in 0..=top {
        for seq in surjections(m, n) {
            let sym = degenerate_symbol(&seq, symbol);
            if m > 0 {
                for i in 0..=m {
                    if let Some(f) = face_seq(&seq, i, n) {
                        b.face(i, m, &sym, &[(degenerate_symbol(&f, symbol), one.clone())])?;
                    }
                }
            }
            if m < top {
                for i in 0..=m {
                    let d = degeneracy_seq(&seq, i);
                    b.degeneracy(i, m, &sym, &[(degenerate_symbol(&d, symbol), one.clone())])?;
                }
            }
        }
    }
    Ok(b.build())
}

/// A generator of a free fixture: name, simplicial degree, weight.
#[derive(Clone, Copy, Debug)]
pub struct FreeGenerator<'a> {
    pub symbol: &'a str,
    pub degree: usize,
    pub weight: usize,
}

/// The levelwise free non-unital commutative algebra on a sum of
/// `K(k, degree)` models, truncated at the configured weight. Monomials are
/// named by their factors joined with `.`.
pub fn free_on(field: Field, truncation: Truncation, gens: &[FreeGenerator]) -> Result<ExplicitAlgebra> {
    let name = format!(
        "free({})",
        gens.iter().map(|g| format!("{}:{}:{}", g.symbol, g.degree, g.weight)).collect::<Vec<_>>().join(",")
    );
    let top = truncation.max_degree;
    let w_max = truncation.max_weight;
    // factor symbol -> (generator index, surjection)
    let mut items: Vec<BTreeMap<String, (usize, Vec<usize>)>> = vec![BTreeMap::new(); top + 1];
    for (m, level) in items.iter_mut().enumerate() {
        for (k, g) in gens.iter().enumerate() {
            for seq in surjections(m, g.degree) {
                level.insert(degenerate_symbol(&seq, g.symbol), (k, seq));
            }
        }
    }
    let weight_of = |m: usize, f: &str| gens[items[m][f].0].weight;
    let monomials: Vec<Vec<Vec<String>>> = (0..=top)
        .map(|m| {
            let keys: Vec<String> = items[m].keys().cloned().collect();
            let mut out = Vec::new();
            fn go(
                keys: &[String],
                start: usize,
                used: usize,
                w_max: usize,
                wt: &dyn Fn(&str) -> usize,
                cur: &mut Vec<String>,
                out: &mut Vec<Vec<String>>,
            ) {
                if !cur.is_empty() {
                    out.push(cur.clone());
                }
                for k in start..keys.len() {
                    let w = wt(&keys[k]);
                    if used + w <= w_max {
                        cur.push(keys[k].clone());
                        go(keys, k, used + w, w_max, wt, cur, out);
                        cur.pop();
                    }
                }
            }
            go(&keys, 0, 0, w_max, &|f| weight_of(m, f), &mut Vec::new(), &mut out);
            out
        })
        .collect();
    let symbol = |fs: &[String]| fs.join(".");
    let mut b = ExplicitAlgebra::builder(&name, field, truncation, true);
    for (m, ms) in monomials.iter().enumerate() {
        for fs in ms {
            let w = fs.iter().map(|f| weight_of(m, f)).sum();
            b.generator(m, &symbol(fs), Some(w))?;
        }
    }
    let one = field.one();
    let image = |m: usize, fs: &[String], op: &dyn Fn(usize, &[usize]) -> Option<Vec<usize>>| {
        let mut out = Vec::with_capacity(fs.len());
        for f in fs {
            let (k, seq) = &items[m][f];
            let s = op(*k, seq)?;
            out.push(degenerate_symbol(&s, gens[*k].symbol));
        }
        out.sort();
        Some(out)
    };
    for (m, ms) in monomials.iter().enumerate() {
        for fs in ms {
            let sym = symbol(fs);
            if m > 0 {
                for i in 0..=m {
                    if let Some(img) = image(m, fs, &|k, s| face_seq(s, i, gens[k].degree)) {
                        b.face(i, m, &sym, &[(symbol(&img), one.clone())])?;
                    }
                }
            }
            if m < top {
                for i in 0..=m {
                    if let Some(img) = image(m, fs, &|_, s| Some(degeneracy_seq(s, i))) {
                        b.degeneracy(i, m, &sym, &[(symbol(&img), one.clone())])?;
                    }
                }
            }
        }
        for (x, a) in ms.iter().enumerate() {
            for c in &ms[x..] {
                let mut fs: Vec<String> = a.iter().chain(c.iter()).cloned().collect();
                let w: usize = fs.iter().map(|f| weight_of(m, f)).sum();
                if w > w_max {
                    continue;
                }
                fs.sort();
                b.product(m, &symbol(a), &symbol(c), &[(symbol(&fs), one.clone())])?;
            }
        }
    }
    Ok(b.build())
}

/// Free algebra on one generator of degree 1 and weight 1.
pub fn free_fixture(field: Field, truncation: Truncation) -> Result<ExplicitAlgebra> {
    free_on(field, truncation, &[FreeGenerator { symbol: "x", degree: 1, weight: 1 }])
}

/// Free algebra on `x` (degree 1, weight 1) and `y` (degree 2, weight 2).
pub fn two_generator_fixture(field: Field, truncation: Truncation) -> Result<ExplicitAlgebra> {
    free_on(
        field,
        truncation,
        &[FreeGenerator { symbol: "x", degree: 1, weight: 1 }, FreeGenerator { symbol: "y", degree: 2, weight: 2 }],
    )
}

/// `K(k,1) ⊕ K(k,2)` with generators `x` and `y`.
pub fn sum_fixture(field: Field, truncation: Truncation) -> Result<ExplicitAlgebra> {
    let a = eilenberg_maclane(field, 1, truncation, "x")?;
    let b = eilenberg_maclane(field, 2, truncation, "y")?;
    direct_sum("K(1)+K(2)", &a, &b)
}

/// `K(k,2)` with the face `d_2(s0x)` in degree 3 changed from `0` to `x`.
pub fn mutated_face_fixture(field: Field, truncation: Truncation) -> Result<ExplicitAlgebra> {
    let k2 = eilenberg_maclane(field, 2, truncation, "x")?;
    let x = k2.generator(2, "x").cloned().expect("K(2) has x in degree 2");
    Ok(k2.with_face(2, 3, "s0x", Element::term(Term::Leaf(x), field)).renamed("K(2)-mutated"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts_are_binomial() {
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(1, 2).len(), 0);
    }

    #[test]
    fn symbols() {
        assert_eq!(degenerate_symbol(&[0, 0, 1], "x"), "s0x");
        assert_eq!(degenerate_symbol(&[0, 1, 1], "x"), "s1x");
        assert_eq!(degenerate_symbol(&[0, 0, 0, 1], "x"), "s1s0x");
        assert_eq!(degenerate_symbol(&[0, 1], "x"), "x");
    }
}

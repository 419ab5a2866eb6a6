use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::space::{Map, SimplicialSpace};
use crate::error::Result;
use crate::exactlin::LinearMap;

pub type HomotopyFn<'a> = dyn Fn(usize, usize, usize) -> Result<Map> + Sync + 'a;
pub type LevelMapFn<'a> = dyn Fn(usize, usize) -> Result<Map> + Sync + 'a;

/// A candidate homotopy `h_{j,q}: K_q → L_{q+1}` from `f` to `g`.
pub struct HomotopyData<'a> {
    pub source: &'a dyn SimplicialSpace,
    pub target: &'a dyn SimplicialSpace,
    /// `h(j, q, w)` for `0 ≤ j ≤ q ≤ q_max`.
    pub h: &'a HomotopyFn<'a>,
    /// `f(q, w)` and `g(q, w)`: `K_q → L_q`.
    pub f: &'a LevelMapFn<'a>,
    pub g: &'a LevelMapFn<'a>,
    pub q_max: usize,
}

pub const IDENTITY_1: &str = "(1) d_i h_j = h_{j-1} d_i (i < j)";
pub const IDENTITY_2: &str = "(2) d_{j+1} h_j = d_{j+1} h_{j+1}";
pub const IDENTITY_3: &str = "(3) d_i h_j = h_j d_{i-1} (i > j+1)";
pub const IDENTITY_4: &str = "(4) s_i h_j = h_{j+1} s_i (i <= j)";
pub const IDENTITY_5: &str = "(5) s_i h_j = h_j s_{i-1} (i > j)";
pub const BOUNDARY_F: &str = "d_0 h_0 = f";
pub const BOUNDARY_G: &str = "d_{q+1} h_q = g";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyFailure {
    pub identity: &'static str,
    pub i: Option<usize>,
    pub j: usize,
    pub q: usize,
    pub w: usize,
    pub witness: String,
}

impl fmt::Display for HomotopyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.i.map(|i| format!("i={i} ")).unwrap_or_default();
        write!(f, "{} fails at {i}j={} q={} w={}: {}", self.identity, self.j, self.q, self.w, self.witness)
    }
}

#[derive(Clone, Debug, Default)]
pub struct HomotopyReport {
    /// Number of map equalities checked.
    pub checked: usize,
    pub failures: Vec<HomotopyFailure>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: HomotopyReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    /// The families that failed, in first-seen order.
    pub fn failed_identities(&self) -> Vec<&'static str> {
        let mut v: Vec<&'static str> = Vec::new();
        for f in &self.failures {
            if !v.contains(&f.identity) {
                v.push(f.identity);
            }
        }
        v
    }
}

#[derive(Clone, Copy)]
enum Op {
    /// `d_i` out of the given degree of K or L.
    Face(usize),
    Degen(usize),
    /// `h_j` out of degree q.
    H(usize),
}

struct Check {
    identity: &'static str,
    i: Option<usize>,
    j: usize,
    q: usize,
    /// Both sides, rightmost operator first, with the space each acts on.
    lhs: Vec<(Side, Op, usize)>,
    rhs: Vec<(Side, Op, usize)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    K,
    L,
    F,
    G,
}

fn checks(q_max: usize, top_k: usize, top_l: usize) -> Vec<Check> {
    use Op::*;
    use Side::*;
    let mut out = Vec::new();
    // h_{j,q} lands in degree q+1 of L; degeneracies need one more.
    for q in 0..=q_max {
        if q + 1 > top_l || q > top_k {
            continue;
        }
        for j in 0..=q {
            for i in 0..j {
                if q >= 1 {
                    out.push(Check {
                        identity: IDENTITY_1,
                        i: Some(i),
                        j,
                        q,
                        lhs: vec![(K, H(j), q), (L, Face(i), q + 1)],
                        rhs: vec![(K, Face(i), q), (K, H(j - 1), q - 1)],
                    });
                }
            }
            if j < q {
                out.push(Check {
                    identity: IDENTITY_2,
                    i: Some(j + 1),
                    j,
                    q,
                    lhs: vec![(K, H(j), q), (L, Face(j + 1), q + 1)],
                    rhs: vec![(K, H(j + 1), q), (L, Face(j + 1), q + 1)],
                });
            }
            for i in j + 2..=q + 1 {
                if j < q {
                    out.push(Check {
                        identity: IDENTITY_3,
                        i: Some(i),
                        j,
                        q,
                        lhs: vec![(K, H(j), q), (L, Face(i), q + 1)],
                        rhs: vec![(K, Face(i - 1), q), (K, H(j), q - 1)],
                    });
                }
            }
            if q < q_max && q + 2 <= top_l && q < top_k {
                for i in 0..=j {
                    out.push(Check {
                        identity: IDENTITY_4,
                        i: Some(i),
                        j,
                        q,
                        lhs: vec![(K, H(j), q), (L, Degen(i), q + 1)],
                        rhs: vec![(K, Degen(i), q), (K, H(j + 1), q + 1)],
                    });
                }
                for i in j + 1..=q + 1 {
                    out.push(Check {
                        identity: IDENTITY_5,
                        i: Some(i),
                        j,
                        q,
                        lhs: vec![(K, H(j), q), (L, Degen(i), q + 1)],
                        rhs: vec![(K, Degen(i - 1), q), (K, H(j), q + 1)],
                    });
                }
            }
        }
        out.push(Check {
            identity: BOUNDARY_F,
            i: None,
            j: 0,
            q,
            lhs: vec![(K, H(0), q), (L, Face(0), q + 1)],
            rhs: vec![(F, Face(0), q)],
        });
        out.push(Check {
            identity: BOUNDARY_G,
            i: None,
            j: q,
            q,
            lhs: vec![(K, H(q), q), (L, Face(q + 1), q + 1)],
            rhs: vec![(G, Face(0), q)],
        });
    }
    out
}

type MapCache = HashMap<(u8, usize, usize, usize), Arc<Map>>;

/// Verifies May's identities (1)–(5) for `h`, and `d_0 h_0 = f`,
/// `d_{q+1} h_q = g`, as exact map equalities on every weight block that fits
/// in the truncations of `K`, `L` and the range `q ≤ q_max` of `h`.
pub fn check_simplicial_homotopy(data: &HomotopyData) -> HomotopyReport {
    let top_k = data.source.truncation().max_degree;
    let top_l = data.target.truncation().max_degree;
    let list = checks(data.q_max, top_k, top_l);
    let weights = data.source.weights();
    let blocks: Vec<HomotopyReport> = weights
        .par_iter()
        .map(|&w| {
            let mut cache = MapCache::new();
            let mut report = HomotopyReport::default();
            for c in &list {
                report.checked += 1;
                let l = eval(data, &mut cache, &c.lhs, w);
                let r = eval(data, &mut cache, &c.rhs, w);
                let witness = match (l, r) {
                    (Ok(l), Ok(r)) => match l.first_difference(&r) {
                        Ok(None) => continue,
                        Ok(Some(label)) => {
                            let k = l.domain().index_of(&label).unwrap();
                            format!("{label} ↦ {} versus {}", l.render_column(k), r.render_column(k))
                        }
                        Err(e) => e.to_string(),
                    },
                    (Err(e), _) | (_, Err(e)) => e.to_string(),
                };
                report.failures.push(HomotopyFailure { identity: c.identity, i: c.i, j: c.j, q: c.q, w, witness });
            }
            report
        })
        .collect();
    let mut out = HomotopyReport::default();
    for b in blocks {
        out.merge(b);
    }
    out
}

fn eval(data: &HomotopyData, cache: &mut MapCache, chain: &[(Side, Op, usize)], w: usize) -> Result<Map> {
    let mut acc: Option<Map> = None;
    for &(side, op, n) in chain {
        let m = fetch(data, cache, side, op, n, w)?;
        acc = Some(match acc {
            None => (*m).clone(),
            Some(a) => m.compose(&a)?,
        });
    }
    Ok(acc.expect("identity sides are nonempty"))
}

fn fetch(data: &HomotopyData, cache: &mut MapCache, side: Side, op: Op, n: usize, w: usize) -> Result<Arc<Map>> {
    // f and g stand alone; their `Face(0)` tag only carries the degree.
    let (tag, idx) = match (side, op) {
        (Side::F, _) => (0u8, 0),
        (Side::G, _) => (1, 0),
        (_, Op::H(j)) => (2, j),
        (Side::K, Op::Face(i)) => (3, i),
        (Side::K, Op::Degen(i)) => (4, i),
        (Side::L, Op::Face(i)) => (5, i),
        (Side::L, Op::Degen(i)) => (6, i),
    };
    if let Some(m) = cache.get(&(tag, idx, n, w)) {
        return Ok(m.clone());
    }
    let m: Arc<Map> = match tag {
        0 => Arc::new((data.f)(n, w)?),
        1 => Arc::new((data.g)(n, w)?),
        2 => Arc::new((data.h)(idx, n, w)?),
        3 => data.source.face(idx, n, w)?,
        4 => data.source.degeneracy(idx, n, w)?,
        5 => data.target.face(idx, n, w)?,
        _ => data.target.degeneracy(idx, n, w)?,
    };
    cache.insert((tag, idx, n, w), m.clone());
    Ok(m)
}

/// The zero family `K_q → L_{q+1}`.
pub fn zero_homotopy<'a>(source: &'a dyn SimplicialSpace, target: &'a dyn SimplicialSpace) -> impl Fn(usize, usize, usize) -> Result<Map> + Sync + 'a {
    move |_, q, w| Ok(LinearMap::zero(source.field(), source.basis(q, w)?, target.basis(q + 1, w)?))
}

/// The zero map `K_q → L_q`.
pub fn zero_level_map<'a>(source: &'a dyn SimplicialSpace, target: &'a dyn SimplicialSpace) -> impl Fn(usize, usize) -> Result<Map> + Sync + 'a {
    move |q, w| Ok(LinearMap::zero(source.field(), source.basis(q, w)?, target.basis(q, w)?))
}

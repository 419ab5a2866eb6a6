use std::fmt;
use std::sync::Arc;

use super::space::{Map, SimplicialAlgebra, SimplicialSpace};
use crate::error::Result;
use crate::exactlin::LinearMap;
use crate::freealg::{apply_linear, Element, Term};

/// One failed identity together with a basis element on which it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// The identity family, e.g. `d_i d_j = d_{j-1} d_i (i < j)`.
    pub family: String,
    /// The failing instance with indices filled in.
    pub instance: String,
    pub degree: usize,
    pub weight: usize,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] fails in degree {} weight {} on {}",
            self.instance, self.family, self.degree, self.weight, self.witness
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub object: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const FACE_FACE: &str = "d_i d_j = d_{j-1} d_i (i < j)";
pub const FACE_DEGEN_LOW: &str = "d_i s_j = s_{j-1} d_i (i < j)";
pub const FACE_DEGEN_ID: &str = "d_j s_j = d_{j+1} s_j = id";
pub const FACE_DEGEN_HIGH: &str = "d_i s_j = s_j d_{i-1} (i > j+1)";
pub const DEGEN_DEGEN: &str = "s_i s_j = s_{j+1} s_i (i <= j)";
pub const DEGEN_INJECTIVE: &str = "s_i injective";
pub const WELL_DEFINED: &str = "structure map defined on the block";
pub const FACE_MULT: &str = "d_i(ab) = d_i(a) d_i(b)";
pub const DEGEN_MULT: &str = "s_i(ab) = s_i(a) s_i(b)";
pub const COMMUTATIVE: &str = "ab = ba";
pub const ASSOCIATIVE: &str = "(ab)c = a(bc)";
pub const WEIGHT_ADDITIVE: &str = "|ab| = |a| + |b|";

struct Collector<'a> {
    space: &'a dyn SimplicialSpace,
    violations: Vec<Violation>,
}

impl Collector<'_> {
    fn get(&mut self, m: Result<Arc<Map>>, what: String, n: usize, w: usize) -> Option<Arc<Map>> {
        match m {
            Ok(m) => Some(m),
            Err(e) => {
                let v = Violation {
                    family: WELL_DEFINED.into(),
                    instance: what,
                    degree: n,
                    weight: w,
                    witness: e.to_string(),
                };
                if !self.violations.contains(&v) {
                    self.violations.push(v);
                }
                None
            }
        }
    }

    fn face(&mut self, i: usize, n: usize, w: usize) -> Option<Arc<Map>> {
        let m = self.space.face(i, n, w);
        self.get(m, format!("d_{i} out of degree {n}"), n, w)
    }

    fn degen(&mut self, i: usize, n: usize, w: usize) -> Option<Arc<Map>> {
        let m = self.space.degeneracy(i, n, w);
        self.get(m, format!("s_{i} out of degree {n}"), n, w)
    }

    fn compare(&mut self, family: &str, instance: String, n: usize, w: usize, lhs: Option<Map>, rhs: Option<Map>) {
        let (Some(l), Some(r)) = (lhs, rhs) else { return };
        match l.first_difference(&r) {
            Ok(None) => {}
            Ok(Some(label)) => {
                let k = l.domain().index_of(&label).unwrap();
                self.violations.push(Violation {
                    family: family.into(),
                    instance,
                    degree: n,
                    weight: w,
                    witness: format!("{label}: {} versus {}", l.render_column(k), r.render_column(k)),
                });
            }
            Err(e) => self.violations.push(Violation {
                family: family.into(),
                instance,
                degree: n,
                weight: w,
                witness: e.to_string(),
            }),
        }
    }
}

fn compose(a: &Option<Arc<Map>>, b: &Option<Arc<Map>>) -> Option<Map> {
    match (a, b) {
        (Some(a), Some(b)) => a.compose(b).ok(),
        _ => None,
    }
}

/// Checks every simplicial identity that fits in the truncation, plus
/// injectivity of degeneracies.
pub fn validate_space(space: &dyn SimplicialSpace) -> ValidationReport {
    let top = space.truncation().max_degree;
    let mut c = Collector { space, violations: Vec::new() };
    for w in space.weights() {
        for n in 0..=top {
            if let Err(e) = space.basis(n, w) {
                c.violations.push(Violation {
                    family: WELL_DEFINED.into(),
                    instance: format!("basis in degree {n}"),
                    degree: n,
                    weight: w,
                    witness: e.to_string(),
                });
            }
        }
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = compose(&c.face(i, n - 1, w), &c.face(j, n, w));
                    let rhs = compose(&c.face(j - 1, n - 1, w), &c.face(i, n, w));
                    c.compare(FACE_FACE, format!("d_{i} d_{j} = d_{} d_{i}", j - 1), n, w, lhs, rhs);
                }
            }
        }
        for n in 0..top {
            for j in 0..=n {
                let s = c.degen(j, n, w);
                for i in 0..=n + 1 {
                    let lhs = compose(&c.face(i, n + 1, w), &s);
                    if i == j || i == j + 1 {
                        let id = match c.space.basis(n, w) {
                            Ok(b) => Some(LinearMap::identity(space.field(), b)),
                            Err(_) => None,
                        };
                        c.compare(FACE_DEGEN_ID, format!("d_{i} s_{j} = id"), n, w, lhs, id);
                    } else if n >= 1 && i < j {
                        let rhs = compose(&c.degen(j - 1, n - 1, w), &c.face(i, n, w));
                        c.compare(FACE_DEGEN_LOW, format!("d_{i} s_{j} = s_{} d_{i}", j - 1), n, w, lhs, rhs);
                    } else if n >= 1 {
                        let rhs = compose(&c.degen(j, n - 1, w), &c.face(i - 1, n, w));
                        c.compare(FACE_DEGEN_HIGH, format!("d_{i} s_{j} = s_{j} d_{}", i - 1), n, w, lhs, rhs);
                    }
                }
                if let Some(s) = &s {
                    if s.rank() != s.domain().len() {
                        let witness = s
                            .kernel_basis()
                            .first()
                            .map(|v| s.domain().render(v))
                            .unwrap_or_default();
                        c.violations.push(Violation {
                            family: DEGEN_INJECTIVE.into(),
                            instance: format!("s_{j} injective"),
                            degree: n,
                            weight: w,
                            witness: format!("kernel contains {witness}"),
                        });
                    }
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = compose(&c.degen(i, n + 1, w), &c.degen(j, n, w));
                    let rhs = compose(&c.degen(j + 1, n + 1, w), &c.degen(i, n, w));
                    c.compare(DEGEN_DEGEN, format!("s_{i} s_{j} = s_{} s_{i}", j + 1), n, w, lhs, rhs);
                }
            }
        }
    }
    ValidationReport { object: space.name(), violations: c.violations }
}

/// Bilinear product of two elements of level `n`.
pub fn multiply_elements(alg: &dyn SimplicialAlgebra, n: usize, a: &Element, b: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (s, x) in a.iter() {
        for (t, y) in b.iter() {
            out.add_scaled(&(x * y), &alg.product(n, &[s.clone(), t.clone()])?);
        }
    }
    Ok(out)
}

/// `validate_space` plus multiplicativity of the structure maps,
/// commutativity, associativity and weight additivity, on all basis pairs
/// and triples within the truncation.
pub fn validate_algebra(alg: &dyn SimplicialAlgebra) -> ValidationReport {
    let mut report = validate_space(alg);
    let t = alg.truncation();
    let field = alg.field();
    let graded = alg.graded();
    let mut push = |family: &str, instance: String, n: usize, w: usize, witness: String| {
        report.violations.push(Violation { family: family.into(), instance, degree: n, weight: w, witness });
    };
    for n in 0..=t.max_degree {
        let mut basis: Vec<(usize, Term)> = Vec::new();
        for w in alg.weights() {
            if let Ok(b) = alg.basis(n, w) {
                basis.extend(b.labels().iter().map(|g| (w, g.clone())));
            }
        }
        let fits = |ws: &[usize]| !graded || ws.iter().sum::<usize>() <= t.max_weight;
        for (x, (wa, a)) in basis.iter().enumerate() {
            for (wb, b) in &basis[x..] {
                if !fits(&[*wa, *wb]) {
                    continue;
                }
                let ea = Element::term(a.clone(), field);
                let eb = Element::term(b.clone(), field);
                let (Ok(ab), Ok(ba)) = (alg.product(n, &[a.clone(), b.clone()]), alg.product(n, &[b.clone(), a.clone()]))
                else {
                    push(WELL_DEFINED, format!("product {a}·{b}"), n, wa + wb, "product failed".into());
                    continue;
                };
                if ab != ba {
                    push(COMMUTATIVE, format!("{a}·{b} = {b}·{a}"), n, wa + wb, format!("{ab} versus {ba}"));
                }
                if graded {
                    if let Some((bad, _)) = ab.iter().find(|(u, _)| {
                        alg.basis(n, wa + wb).map(|bb| bb.index_of(u).is_none()).unwrap_or(true)
                    }) {
                        push(WEIGHT_ADDITIVE, format!("|{a}·{b}| = {}", wa + wb), n, wa + wb, format!("term {bad}"));
                    }
                }
                let mut ops: Vec<(String, &str, usize, bool)> = Vec::new();
                if n > 0 {
                    ops.extend((0..=n).map(|i| (format!("d_{i}"), FACE_MULT, i, true)));
                }
                if n < t.max_degree {
                    ops.extend((0..=n).map(|i| (format!("s_{i}"), DEGEN_MULT, i, false)));
                }
                for (name, family, i, is_face) in ops {
                    let op = |u: &Term| if is_face { alg.face_term(i, n, u) } else { alg.degeneracy_term(i, n, u) };
                    let target = if is_face { n - 1 } else { n + 1 };
                    let lhs = apply_linear(&ab, &op);
                    let rhs = op(a).and_then(|fa| op(b).and_then(|fb| multiply_elements(alg, target, &fa, &fb)));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) if l == r => {}
                        (Ok(l), Ok(r)) => push(family, format!("{name}({a}·{b})"), n, wa + wb, format!("{l} versus {r}")),
                        (Err(e), _) | (_, Err(e)) => push(family, format!("{name}({a}·{b})"), n, wa + wb, e.to_string()),
                    }
                }
                for (wc, c) in &basis {
                    if !fits(&[*wa, *wb, *wc]) {
                        continue;
                    }
                    let ec = Element::term(c.clone(), field);
                    let left = multiply_elements(alg, n, &ea, &eb).and_then(|p| multiply_elements(alg, n, &p, &ec));
                    let right = multiply_elements(alg, n, &eb, &ec).and_then(|p| multiply_elements(alg, n, &ea, &p));
                    if let (Ok(l), Ok(r)) = (&left, &right) {
                        if l != r {
                            push(ASSOCIATIVE, format!("({a}·{b})·{c}"), n, wa + wb + wc, format!("{l} versus {r}"));
                        }
                    }
                }
            }
        }
    }
    report
}

/// Multiplicativity of faces and degeneracies and commutativity on random
/// linear combinations, for algebras too large to check on all pairs.
/// Deterministic in `seed`.
pub fn sample_products(alg: &dyn SimplicialAlgebra, samples: usize, seed: u64) -> ValidationReport {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let t = alg.truncation();
    let field = alg.field();
    let mut report = ValidationReport { object: alg.name(), violations: Vec::new() };
    let weights = alg.weights();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for n in 0..=t.max_degree {
        for &wa in &weights {
            for &wb in &weights {
                if wa <= wb && (!alg.graded() || wa + wb <= t.max_weight) {
                    let nonempty = |w| alg.basis(n, w).map(|b| !b.is_empty()).unwrap_or(false);
                    if nonempty(wa) && nonempty(wb) {
                        pairs.push((n, wa, wb));
                    }
                }
            }
        }
    }
    if pairs.is_empty() {
        return report;
    }
    let random_element = |rng: &mut rand_chacha::ChaCha8Rng, n: usize, w: usize| -> Result<Element> {
        let basis = alg.basis(n, w)?;
        let mut e = Element::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let g = basis.labels()[rng.gen_range(0..basis.len())].clone();
            let c = [-2i64, -1, 1, 2, 3][rng.gen_range(0..5)];
            e.add_term(g, field.from_i64(c));
        }
        Ok(e)
    };
    for k in 0..samples {
        let (n, wa, wb) = pairs[rng.gen_range(0..pairs.len())];
        let (Ok(a), Ok(b)) = (random_element(&mut rng, n, wa), random_element(&mut rng, n, wb)) else {
            continue;
        };
        let mut push = |family: &str, instance: String, witness: String| {
            report.violations.push(Violation {
                family: family.into(),
                instance: format!("sample {k}: {instance}"),
                degree: n,
                weight: wa + wb,
                witness,
            });
        };
        let (ab, ba) = match (multiply_elements(alg, n, &a, &b), multiply_elements(alg, n, &b, &a)) {
            (Ok(ab), Ok(ba)) => (ab, ba),
            (Err(e), _) | (_, Err(e)) => {
                push(WELL_DEFINED, format!("product ({a})·({b})"), e.to_string());
                continue;
            }
        };
        if ab != ba {
            push(COMMUTATIVE, format!("({a})·({b})"), format!("{ab} versus {ba}"));
        }
        let mut ops: Vec<(usize, bool)> = Vec::new();
        if n > 0 {
            ops.extend((0..=n).map(|i| (i, true)));
        }
        if n < t.max_degree {
            ops.extend((0..=n).map(|i| (i, false)));
        }
        for (i, is_face) in ops {
            let op = |u: &Term| if is_face { alg.face_term(i, n, u) } else { alg.degeneracy_term(i, n, u) };
            let target = if is_face { n - 1 } else { n + 1 };
            let (family, name) = if is_face { (FACE_MULT, format!("d_{i}")) } else { (DEGEN_MULT, format!("s_{i}")) };
            let lhs = apply_linear(&ab, &op);
            let rhs = apply_linear(&a, &op)
                .and_then(|fa| apply_linear(&b, &op).and_then(|fb| multiply_elements(alg, target, &fa, &fb)));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(l), Ok(r)) => push(family, format!("{name}(({a})·({b}))"), format!("{l} versus {r}")),
                (Err(e), _) | (_, Err(e)) => push(family, format!("{name}(({a})·({b}))"), e.to_string()),
            }
        }
    }
    report
}

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::space::{Map, SimplicialSpace};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_of_columns, Quotient, SparseVec, Subspace};

/// Kernel of the stacked faces `d_lo, …, d_q` out of degree `q`.
fn joint_kernel(space: &dyn SimplicialSpace, q: usize, w: usize, lo: usize) -> Result<Subspace> {
    let dim = space.basis(q, w)?.len();
    let field = space.field();
    if q == 0 || lo > q {
        return Ok(Subspace::full(field, dim));
    }
    let below = space.basis(q - 1, w)?.len();
    let faces = (lo..=q).map(|i| space.face(i, q, w)).collect::<Result<Vec<_>>>()?;
    let cols: Vec<SparseVec> = (0..dim)
        .map(|k| {
            let mut entries = Vec::new();
            for (s, f) in faces.iter().enumerate() {
                entries.extend(f.column(k).shifted(s * below).into_entries());
            }
            SparseVec::from_entries(entries)
        })
        .collect();
    Subspace::span(field, dim, kernel_of_columns(field, &cols))
}

/// Moore chains `N_q = ∩_{i≥1} ker d_i` of one weight block.
pub fn moore_chains(space: &dyn SimplicialSpace, q: usize, w: usize) -> Result<Subspace> {
    joint_kernel(space, q, w, 1)
}

/// `d_0` applied to the rows of `N_q`.
pub fn moore_boundary_images(space: &dyn SimplicialSpace, q: usize, w: usize, chains: &Subspace) -> Result<Vec<SparseVec>> {
    if q == 0 {
        return Ok(Vec::new());
    }
    let d0 = space.face(0, q, w)?;
    Ok(chains.rows().iter().map(|r| d0.apply(r)).collect())
}

fn require_sound(space: &dyn SimplicialSpace, q: usize) -> Result<()> {
    if !space.graded() {
        return Err(Error::Ungraded(format!(
            "{}: homotopy needs finite weight blocks; declare a weight for every generator",
            space.name()
        )));
    }
    let top = space.truncation().max_degree;
    if q + 1 > top {
        return Err(Error::Truncation(format!(
            "π_{q} of {} needs degree {} but the truncation stops at {top}",
            space.name(),
            q + 1
        )));
    }
    Ok(())
}

/// Cycles, boundaries and a chosen complement for `π_q` of one weight block.
#[derive(Clone, Debug)]
pub struct HomologyBlock {
    pub q: usize,
    pub w: usize,
    pub chains_dim: usize,
    pub cycles: Subspace,
    pub boundaries: Subspace,
    pub quotient: Quotient,
}

impl HomologyBlock {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

pub fn homology_block(space: &dyn SimplicialSpace, q: usize, w: usize) -> Result<HomologyBlock> {
    require_sound(space, q)?;
    let chains = moore_chains(space, q, w)?;
    let cycles = joint_kernel(space, q, w, 0)?;
    let upper = moore_chains(space, q + 1, w)?;
    let images = moore_boundary_images(space, q + 1, w, &upper)?;
    let boundaries = Subspace::span(space.field(), cycles.ambient_dim(), images)?;
    let quotient = Quotient::new(&cycles, &boundaries).map_err(|_| {
        Error::NonzeroComposite(format!("{}: d_0 of a Moore chain in degree {} is not a cycle", space.name(), q + 1))
    })?;
    Ok(HomologyBlock { q, w, chains_dim: chains.dim(), cycles, boundaries, quotient })
}

/// `dim π_q` of one weight block.
pub fn homotopy_dim(space: &dyn SimplicialSpace, q: usize, w: usize) -> Result<usize> {
    Ok(homology_block(space, q, w)?.dim())
}

/// Dimensions of `π_q` per weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomotopyTable {
    pub dims: BTreeMap<(usize, usize), usize>,
}

impl HomotopyTable {
    pub fn get(&self, q: usize, w: usize) -> usize {
        self.dims.get(&(q, w)).copied().unwrap_or(0)
    }

    /// `dim π_q` summed over weights.
    pub fn total(&self, q: usize) -> usize {
        self.dims.iter().filter(|((p, _), _)| *p == q).map(|(_, d)| d).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.dims.keys().map(|(q, _)| *q).collect();
        v.dedup();
        v
    }

    pub fn weights(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.dims.keys().map(|(_, w)| *w).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for HomotopyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws = self.weights();
        write!(f, "q\\w")?;
        for w in &ws {
            write!(f, " {w:>4}")?;
        }
        writeln!(f, "  total")?;
        for q in self.degrees() {
            write!(f, "{q:>3}")?;
            for w in &ws {
                write!(f, " {:>4}", self.get(q, *w))?;
            }
            writeln!(f, "  {:>5}", self.total(q))?;
        }
        Ok(())
    }
}

/// `π_q` for `q ≤ q_max` in every weight block, blocks computed in parallel.
pub fn homotopy_groups(space: &dyn SimplicialSpace, q_max: usize) -> Result<HomotopyTable> {
    require_sound(space, q_max)?;
    let keys: Vec<(usize, usize)> =
        (0..=q_max).flat_map(|q| space.weights().into_iter().map(move |w| (q, w))).collect();
    let dims = keys
        .par_iter()
        .map(|&(q, w)| homotopy_dim(space, q, w).map(|d| ((q, w), d)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(HomotopyTable { dims })
}

/// True iff `π_0` vanishes in every weight.
pub fn is_connected(space: &dyn SimplicialSpace) -> Result<bool> {
    Ok(homotopy_groups(space, 0)?.total(0) == 0)
}

/// Matrix of the map induced on `π_q` by a degree-`q` component `f`,
/// from the chosen complement of `src` to coordinates in `tgt`.
pub fn induced_map(f: &Map, src: &HomologyBlock, tgt: &HomologyBlock) -> Result<Vec<SparseVec>> {
    src.quotient
        .representatives()
        .iter()
        .map(|z| {
            let image = f.apply(z);
            tgt.quotient.coordinates(&image).ok_or_else(|| {
                Error::Containment(format!(
                    "image of the cycle {} is not a cycle in the target",
                    f.domain().render(z)
                ))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::simplicial::fixtures::{eilenberg_maclane, free_fixture, sum_fixture};
    use crate::simplicial::Truncation;

    #[test]
    fn eilenberg_maclane_has_one_class() {
        for field in [Field::Rational, Field::prime(2).unwrap()] {
            for n in 0..=3 {
                let k = eilenberg_maclane(field, n, Truncation::new(5, 2), "x").unwrap();
                let t = homotopy_groups(&k, 4).unwrap();
                for q in 0..=4 {
                    assert_eq!(t.total(q), usize::from(q == n), "K({n}) π_{q}");
                }
            }
        }
    }

    #[test]
    fn refuses_unsound_requests() {
        let k = eilenberg_maclane(Field::Rational, 1, Truncation::new(3, 1), "x").unwrap();
        assert!(matches!(homotopy_groups(&k, 3), Err(Error::Truncation(_))));
        assert!(homotopy_groups(&k, 2).is_ok());
    }

    #[test]
    fn sums_add() {
        let t = Truncation::new(4, 2);
        let s = sum_fixture(Field::Rational, t).unwrap();
        let table = homotopy_groups(&s, 3).unwrap();
        assert_eq!((table.total(0), table.total(1), table.total(2), table.total(3)), (0, 1, 1, 0));
        assert!(is_connected(&s).unwrap());
        let f = free_fixture(Field::Rational, t).unwrap();
        assert!(is_connected(&f).unwrap());
        let k0 = eilenberg_maclane(Field::Rational, 0, t, "x").unwrap();
        assert!(!is_connected(&k0).unwrap());
    }

    #[test]
    fn induced_identity_is_identity() {
        let k = eilenberg_maclane(Field::Rational, 2, Truncation::new(4, 1), "x").unwrap();
        let b = homology_block(&k, 2, 1).unwrap();
        let id = crate::exactlin::LinearMap::identity(k.field(), k.basis(2, 1).unwrap());
        let m = induced_map(&id, &b, &b).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[0].get(0).unwrap().is_one());
    }
}

use std::collections::{BTreeMap, VecDeque};

use super::module::{Module, Morphism};
use super::ops::submodule_from_bases;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// Default bound on the total dimension accepted by `enumerate_submodules`.
pub const DEFAULT_SUBMODULE_CAP: usize = 6;

/// Bound on the number of distinct submodules visited.
const MAX_SUBMODULES: usize = 100_000;

/// A family of vertex subspaces, each stored as RREF rows (vectors as rows).
type Family = Vec<Subspace>;

fn family_key(fam: &Family) -> String {
    fam.iter()
        .map(|s| s.basis_matrix().canonical_string())
        .collect::<Vec<_>>()
        .join("/")
}

/// Smallest arrow-stable family containing `fam`.
fn close(x: &Module, mut fam: Family) -> Family {
    let alg = x.algebra().clone();
    let mut queue: VecDeque<usize> = (0..fam.len()).collect();
    while let Some(v) = queue.pop_front() {
        for (k, a) in alg.arrows().iter().enumerate() {
            if a.source != v || fam[v].dim() == 0 {
                continue;
            }
            // Images of basis rows: (X_a b^T)^T = b X_a^T.
            let imgs = fam[v].basis_matrix().mul(&x.arrow(k).transpose());
            let grown = fam[a.target].sum(&Subspace::from_matrix(&imgs));
            if grown.dim() > fam[a.target].dim() {
                fam[a.target] = grown;
                queue.push_back(a.target);
            }
        }
    }
    fam
}

/// All submodules of `x` with their inclusions, ordered by total dimension
/// then a canonical form. Requires a prime field and `total_dim(x) <= cap`.
pub fn enumerate_submodules(x: &Module, cap: usize) -> Result<Vec<(Module, Morphism)>> {
    let field = x.field();
    let Some(elements) = field.elements() else {
        return Err(Error::UnsupportedField("submodule enumeration needs a prime field".into()));
    };
    if x.total_dim() > cap {
        return Err(Error::CapExceeded(format!(
            "module of total dimension {} exceeds the enumeration cap {cap}",
            x.total_dim()
        )));
    }
    let nv = x.dims().len();
    // Nonzero vectors at each vertex, normalized so the first nonzero entry is 1.
    let generators: Vec<Vec<Matrix>> = (0..nv)
        .map(|v| {
            let d = x.dim_at(v);
            let total = (elements.len() as u64).pow(d as u32);
            (1..total)
                .filter_map(|mut code| {
                    let mut entries = Vec::with_capacity(d);
                    for _ in 0..d {
                        entries.push(elements[(code % elements.len() as u64) as usize].clone());
                        code /= elements.len() as u64;
                    }
                    let first = entries.iter().find(|e| !e.is_zero())?;
                    first.is_one().then(|| Matrix::row_vector(field, &entries))
                })
                .collect()
        })
        .collect();

    let zero: Family = (0..nv).map(|v| Subspace::zero(field, x.dim_at(v))).collect();
    let mut seen: BTreeMap<String, Family> = BTreeMap::new();
    seen.insert(family_key(&zero), zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(fam) = queue.pop_front() {
        for v in 0..nv {
            for g in &generators[v] {
                if fam[v].contains(g) {
                    continue;
                }
                let mut next = fam.clone();
                next[v] = next[v].sum(&Subspace::from_matrix(g));
                let next = close(x, next);
                let key = family_key(&next);
                if !seen.contains_key(&key) {
                    if seen.len() >= MAX_SUBMODULES {
                        return Err(Error::CapExceeded(format!("more than {MAX_SUBMODULES} submodules")));
                    }
                    seen.insert(key, next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    let mut fams: Vec<(usize, String, Family)> = seen
        .into_iter()
        .map(|(k, f)| (f.iter().map(Subspace::dim).sum(), k, f))
        .collect();
    fams.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(fams
        .into_iter()
        .map(|(_, _, fam)| {
            let bases = fam.iter().map(|s| s.basis_matrix().transpose()).collect();
            submodule_from_bases(x, bases)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;

    #[test]
    fn small_examples() {
        let alg = Algebra::preprojective(2, Field::prime(5).unwrap()).unwrap();
        let zero = Module::zero(&alg);
        assert_eq!(enumerate_submodules(&zero, 6).unwrap().len(), 1);
        let s1 = Module::simple(&alg, 0);
        assert_eq!(enumerate_submodules(&s1, 6).unwrap().len(), 2);
        let p2 = Module::projective(&alg, 1);
        let subs = enumerate_submodules(&p2, 6).unwrap();
        let dims: Vec<Vec<usize>> = subs.iter().map(|(m, _)| m.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn semisimple_count_matches_grassmannians() {
        // S1 ⊕ S1 over F_3: subspaces of F_3^2 number 1 + 4 + 1.
        let alg = Algebra::preprojective(2, Field::prime(3).unwrap()).unwrap();
        let s1 = Module::simple(&alg, 0);
        let ds = crate::algebra::direct_sum(&alg, &[s1.clone(), s1]);
        assert_eq!(enumerate_submodules(&ds.module, 6).unwrap().len(), 6);
    }

    #[test]
    fn refuses_rationals_and_large_modules() {
        let alg = Algebra::preprojective(2, Field::Rational).unwrap();
        let p1 = Module::projective(&alg, 0);
        assert!(matches!(enumerate_submodules(&p1, 6), Err(Error::UnsupportedField(_))));
        let alg = Algebra::preprojective(2, Field::prime(2).unwrap()).unwrap();
        let p1 = Module::projective(&alg, 0);
        assert!(matches!(enumerate_submodules(&p1, 1), Err(Error::CapExceeded(_))));
    }
}

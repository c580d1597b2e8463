use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{direct_sum, hom_basis, Algebra, Module, Morphism};
use crate::rigid::RigidContext;

use super::random_combination;

/// Named objects plus their two-fold sums, with hom bases computed on demand.
pub struct Universe {
    objects: Vec<(String, Module)>,
    base: usize,
    homs: Vec<OnceLock<Vec<Morphism>>>,
    cofibrant: OnceLock<Vec<usize>>,
}

impl Universe {
    pub fn new(alg: &Arc<Algebra>, base: &[(String, Module)]) -> Self {
        let mut objects: Vec<(String, Module)> = base.to_vec();
        for i in 0..base.len() {
            for j in i..base.len() {
                let m = direct_sum(alg, &[base[i].1.clone(), base[j].1.clone()]).module;
                objects.push((format!("{}+{}", base[i].0, base[j].0), m));
            }
        }
        let n = objects.len();
        Universe { objects, base: base.len(), homs: (0..n * n).map(|_| OnceLock::new()).collect(), cofibrant: OnceLock::new() }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Number of objects before the sums.
    pub fn base_len(&self) -> usize {
        self.base
    }

    pub fn name(&self, i: usize) -> &str {
        &self.objects[i].0
    }

    pub fn module(&self, i: usize) -> &Module {
        &self.objects[i].1
    }

    pub fn homs(&self, i: usize, j: usize) -> &[Morphism] {
        self.homs[i * self.len() + j].get_or_init(|| hom_basis(self.module(i), self.module(j)))
    }

    /// Indices of the cofibrant objects.
    pub fn cofibrant(&self, ctx: &RigidContext) -> &[usize] {
        self.cofibrant.get_or_init(|| {
            (0..self.len()).filter(|&i| ctx.is_cofibrant(self.module(i)).unwrap_or(false)).collect()
        })
    }

    pub(crate) fn pick(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..self.len())
    }

    pub(crate) fn map(&self, i: usize, j: usize, rng: &mut ChaCha8Rng) -> Morphism {
        random_combination(self.module(i), self.module(j), self.homs(i, j), rng)
    }

    /// A random object pair and a random map between them.
    pub(crate) fn random_map(&self, rng: &mut ChaCha8Rng) -> Morphism {
        let (i, j) = (self.pick(rng), self.pick(rng));
        self.map(i, j, rng)
    }
}

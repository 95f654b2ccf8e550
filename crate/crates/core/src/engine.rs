//! Shared state for one algebra: memoized irreps, Clebsch-Gordan data and
//! dual intertwiners, optionally backed by the on-disk [`Store`].
//!
//! Readers take a shared lock; a missing entry is built without holding any
//! lock and inserted under a short write lock, keeping the first insertion
//! if two threads race.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use crate::cache::Store;
use crate::cartan::{CartanData, Weight};
use crate::coeff::DualIntertwiner;
use crate::error::Result;
use crate::tensor::{decompose, tensor_module, CGDecomposition, CGRecord, TensorModule};
use crate::uqrep::{build_module, IrrepModule, IrrepRecord};

type Memo<K, V> = RwLock<HashMap<K, Arc<V>>>;

pub struct QuantumGroup {
    cd: Arc<CartanData>,
    irreps: Memo<(Weight, Vec<usize>), IrrepModule>,
    cgs: Memo<(Weight, Weight), CGDecomposition>,
    duals: Memo<Weight, DualIntertwiner>,
    store: Option<Store>,
}

fn memo<K: Eq + Hash + Clone, V>(
    lock: &Memo<K, V>,
    key: &K,
    build: impl FnOnce() -> Result<V>,
) -> Result<Arc<V>> {
    if let Some(v) = lock.read().expect("memo lock").get(key) {
        return Ok(v.clone());
    }
    let v = Arc::new(build()?);
    let mut w = lock.write().expect("memo lock");
    Ok(w.entry(key.clone()).or_insert(v).clone())
}

impl QuantumGroup {
    pub fn new(cd: CartanData) -> Self {
        QuantumGroup {
            cd: Arc::new(cd),
            irreps: RwLock::default(),
            cgs: RwLock::default(),
            duals: RwLock::default(),
            store: None,
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(Self::new(CartanData::from_name(name)?))
    }

    pub fn with_store(mut self, store: Store) -> Self {
        self.store = Some(store);
        self
    }

    pub fn cd(&self) -> &Arc<CartanData> {
        &self.cd
    }

    pub fn rank(&self) -> usize {
        self.cd.rank
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.cd.rank).collect()
    }

    /// `W(λ)`.
    pub fn irrep(&self, lambda: &Weight) -> Result<Arc<IrrepModule>> {
        self.module(lambda, &self.all_indices())
    }

    /// Irreducible module of the Levi subalgebra with simple roots `active`.
    pub fn module(&self, lambda: &Weight, active: &[usize]) -> Result<Arc<IrrepModule>> {
        let mut act = active.to_vec();
        act.sort_unstable();
        act.dedup();
        let key = (lambda.clone(), act.clone());
        memo(&self.irreps, &key, || {
            let skey = format!(
                "{}|{}|{:?}",
                self.cd.name(),
                lambda,
                act
            );
            if let Some(store) = &self.store {
                if let Some(rec) = store.load::<IrrepRecord>("irrep", &skey)? {
                    return IrrepModule::from_record(&rec);
                }
            }
            let m = build_module(&self.cd, lambda, &act)?;
            if let Some(store) = &self.store {
                store.save("irrep", &skey, &m.to_record())?;
            }
            Ok(m)
        })
    }

    pub fn tensor(&self, lambda: &Weight, mu: &Weight) -> Result<TensorModule> {
        tensor_module(&*self.irrep(lambda)?, &*self.irrep(mu)?)
    }

    /// Clebsch-Gordan decomposition of `W(λ) ⊗ W(μ)`.
    pub fn cg(&self, lambda: &Weight, mu: &Weight) -> Result<Arc<CGDecomposition>> {
        let key = (lambda.clone(), mu.clone());
        memo(&self.cgs, &key, || {
            let skey = format!("{}|{}|{}", self.cd.name(), lambda, mu);
            if let Some(store) = &self.store {
                if let Some(rec) = store.load::<CGRecord>("cg", &skey)? {
                    return CGDecomposition::from_record(&rec);
                }
            }
            let t = self.tensor(lambda, mu)?;
            let cg = decompose(&t, &|nu: &Weight| self.irrep(nu))?;
            if let Some(store) = &self.store {
                store.save("cg", &skey, &cg.to_record())?;
            }
            Ok(cg)
        })
    }

    /// Intertwiner between `W(λ†)` and the dual of `W(λ)`.
    pub fn dual(&self, lambda: &Weight) -> Result<Arc<DualIntertwiner>> {
        memo(&self.duals, lambda, || DualIntertwiner::build(self, lambda))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cold_and_warm_store_agree() {
        let dir = tempfile::tempdir().unwrap();
        let w = |c: &[i32]| Weight(c.to_vec());
        let cold = QuantumGroup::from_name("A2")
            .unwrap()
            .with_store(Store::open(dir.path()).unwrap());
        let a = cold.irrep(&w(&[1, 1])).unwrap();
        let cg = cold.cg(&w(&[1, 0]), &w(&[0, 1])).unwrap();
        let warm = QuantumGroup::from_name("A2")
            .unwrap()
            .with_store(Store::open(dir.path()).unwrap());
        assert_eq!(*warm.irrep(&w(&[1, 1])).unwrap(), *a);
        assert_eq!(*warm.cg(&w(&[1, 0]), &w(&[0, 1])).unwrap(), *cg);
    }

    #[test]
    fn concurrent_readers() {
        let qg = Arc::new(QuantumGroup::from_name("A1").unwrap());
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let qg = qg.clone();
                std::thread::spawn(move || qg.irrep(&Weight(vec![3])).unwrap().dim())
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), 4);
        }
        let a = qg.irrep(&Weight(vec![3])).unwrap();
        let b = qg.irrep(&Weight(vec![3])).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}

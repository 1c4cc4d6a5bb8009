//! Recursive recognition through unit spheres: the class `X_d`, discrete
//! spheres, contractibility, manifolds and varieties.
//!
//! `X_{-1}` holds only the empty graph; `G` is in `X_d` when
//! `chi(G) = 1 + (-1)^d` and every unit sphere is in `X_{d-1}`.
//! Contractibility is read existentially: `G` is contractible if it is a
//! single vertex or some vertex `v` has `S(v)` and `G - v` contractible.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::canon::{memo_key, MemoKey};
use crate::complex::Vertex;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_BUDGET: u64 = 1_000_000;
pub const DEFAULT_CONTRACTIBLE_CAP: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Query {
    Xd(i64),
    Contractible,
    Sphere(i64),
    Manifold(i64),
    Variety(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWitness {
    pub verdict: bool,
    /// Vertices descending through nested unit spheres to the failure.
    pub chain: Vec<Vertex>,
    pub reason: Option<String>,
}

/// Memoizing classifier. Safe to share between threads; the cache only
/// ever stores final verdicts, so results do not depend on interleaving.
pub struct Classifier {
    memo: RwLock<HashMap<(Query, MemoKey), bool>>,
    budget: u64,
    contractible_cap: usize,
    calls: AtomicU64,
}

impl Default for Classifier {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET, DEFAULT_CONTRACTIBLE_CAP)
    }
}

fn chi(g: &Graph) -> i64 {
    g.whitney().euler_characteristic()
}

fn target_chi(d: i64) -> i64 {
    if d.rem_euclid(2) == 0 { 2 } else { 0 }
}

fn sphere(g: &Graph, v: Vertex) -> Graph {
    g.unit_sphere(v).expect("vertex of g")
}

impl Classifier {
    pub fn new(budget: u64, contractible_cap: usize) -> Self {
        Classifier {
            memo: RwLock::new(HashMap::new()),
            budget,
            contractible_cap,
            calls: AtomicU64::new(0),
        }
    }

    pub fn cache_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    fn tick(&self) -> Result<()> {
        if self.calls.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Error::BudgetExhausted { budget: self.budget });
        }
        Ok(())
    }

    fn cached(&self, q: Query, g: &Graph, eval: impl FnOnce() -> Result<bool>) -> Result<bool> {
        let key = (q, memo_key(g));
        if let Some(&v) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(v);
        }
        self.tick()?;
        let v = eval()?;
        self.memo.write().expect("memo lock").insert(key, v);
        Ok(v)
    }

    fn start(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    fn xd(&self, g: &Graph, d: i64) -> Result<bool> {
        if d < 0 {
            return Ok(g.is_empty());
        }
        self.cached(Query::Xd(d), g, || {
            if chi(g) != target_chi(d) {
                return Ok(false);
            }
            for v in g.vertices() {
                if !self.xd(&sphere(g, v), d - 1)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
    }

    pub fn in_class_xd(&self, g: &Graph, d: i64) -> Result<ClassWitness> {
        if d < -1 {
            return Err(Error::invalid(format!("dimension must be >= -1, got {d}")));
        }
        self.start();
        if self.xd(g, d)? {
            return Ok(ClassWitness { verdict: true, chain: Vec::new(), reason: None });
        }
        // Second walk: follow the first failing sphere down to the cause.
        let mut chain = Vec::new();
        let mut cur = g.clone();
        let mut dim = d;
        loop {
            if dim < 0 {
                let reason = format!("non-empty graph where dimension -1 is required ({} vertices)", cur.vertex_count());
                return Ok(ClassWitness { verdict: false, chain, reason: Some(reason) });
            }
            let c = chi(&cur);
            if c != target_chi(dim) {
                let reason = format!("chi = {c}, expected {} for dimension {dim}", target_chi(dim));
                return Ok(ClassWitness { verdict: false, chain, reason: Some(reason) });
            }
            let mut next = None;
            for v in cur.vertices() {
                let s = sphere(&cur, v);
                if !self.xd(&s, dim - 1)? {
                    next = Some((v, s));
                    break;
                }
            }
            let (v, s) = next.ok_or_else(|| Error::Inconsistent("witness walk found no failing sphere".into()))?;
            chain.push(v);
            cur = s;
            dim -= 1;
        }
    }

    fn contractible(&self, g: &Graph) -> Result<bool> {
        let n = g.vertex_count();
        if n == 0 {
            return Ok(false);
        }
        if n == 1 || g.is_complete() {
            return Ok(true);
        }
        if !g.is_connected() {
            return Ok(false);
        }
        self.cached(Query::Contractible, g, || {
            for v in g.vertices() {
                if self.contractible(&sphere(g, v))? && self.contractible(&g.without_vertex(v))? {
                    return Ok(true);
                }
            }
            Ok(false)
        })
    }

    fn check_cap(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        if n > self.contractible_cap {
            return Err(Error::CapExceeded {
                what: "contractibility vertices",
                required: n as u128,
                cap: self.contractible_cap as u128,
            });
        }
        Ok(())
    }

    pub fn is_contractible(&self, g: &Graph) -> Result<bool> {
        self.check_cap(g)?;
        self.start();
        self.contractible(g)
    }

    fn sphere_rec(&self, g: &Graph, d: i64) -> Result<bool> {
        if d < 0 {
            return Ok(g.is_empty());
        }
        if g.is_empty() {
            return Ok(false);
        }
        self.cached(Query::Sphere(d), g, || {
            for v in g.vertices() {
                if !self.sphere_rec(&sphere(g, v), d - 1)? {
                    return Ok(false);
                }
            }
            for v in g.vertices() {
                let rest = g.without_vertex(v);
                self.check_cap(&rest)?;
                if self.contractible(&rest)? {
                    return Ok(true);
                }
            }
            Ok(false)
        })
    }

    pub fn is_sphere(&self, g: &Graph, d: i64) -> Result<bool> {
        self.start();
        self.sphere_rec(g, d)
    }

    pub fn is_manifold(&self, g: &Graph, d: i64) -> Result<bool> {
        self.start();
        if d < 0 {
            return Ok(g.is_empty());
        }
        if g.is_empty() {
            return Ok(false);
        }
        self.cached(Query::Manifold(d), g, || {
            for v in g.vertices() {
                if !self.sphere_rec(&sphere(g, v), d - 1)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
    }

    fn variety(&self, g: &Graph, d: i64) -> Result<bool> {
        if d < 0 {
            return Ok(g.is_empty());
        }
        if g.is_empty() {
            return Ok(false);
        }
        self.cached(Query::Variety(d), g, || {
            for v in g.vertices() {
                if !self.variety(&sphere(g, v), d - 1)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
    }

    pub fn is_variety(&self, g: &Graph, d: i64) -> Result<bool> {
        self.start();
        self.variety(g, d)
    }
}

pub fn in_class_xd(g: &Graph, d: i64) -> Result<ClassWitness> {
    Classifier::default().in_class_xd(g, d)
}

pub fn is_contractible(g: &Graph) -> Result<bool> {
    Classifier::default().is_contractible(g)
}

pub fn is_sphere(g: &Graph, d: i64) -> Result<bool> {
    Classifier::default().is_sphere(g, d)
}

pub fn is_manifold(g: &Graph, d: i64) -> Result<bool> {
    Classifier::default().is_manifold(g, d)
}

pub fn is_variety(g: &Graph, d: i64) -> Result<bool> {
    Classifier::default().is_variety(g, d)
}

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::vectors::VectorSet;
use super::KsError;

/// Bases of a vector set as sorted index lists, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisList {
    pub num_vectors: usize,
    pub bases: Vec<Vec<usize>>,
}

impl BasisList {
    /// Normalizes each basis to sorted order and the list to lexicographic order.
    pub fn new(num_vectors: usize, bases: Vec<Vec<usize>>) -> Self {
        let mut bases: Vec<Vec<usize>> = bases
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        bases.sort();
        bases.dedup();
        BasisList { num_vectors, bases }
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// The same list with basis `k` removed.
    pub fn without(&self, k: usize) -> Self {
        let mut bases = self.bases.clone();
        bases.remove(k);
        BasisList { num_vectors: self.num_vectors, bases }
    }

    /// Vector indices appearing in at least one basis, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_vectors];
        for b in &self.bases {
            for &i in b {
                seen[i] = true;
            }
        }
        (0..self.num_vectors).filter(|&i| seen[i]).collect()
    }

    /// How many bases contain each vector.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut count = vec![0; self.num_vectors];
        for b in &self.bases {
            for &i in b {
                count[i] += 1;
            }
        }
        count
    }
}

/// All `dim`-element sets of pairwise orthogonal rays.
///
/// `tol` is ignored for rational sets.
pub fn find_bases(vs: &VectorSet, tol: f64) -> BasisList {
    let n = vs.len();
    let orth: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j && vs.orthogonal(i, j, tol)).collect()).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(vs.dim());
    extend_clique(&orth, vs.dim(), 0, &mut current, &mut out);
    BasisList { num_vectors: n, bases: out }
}

fn extend_clique(orth: &[Vec<bool>], size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for v in start..orth.len() {
        if current.iter().all(|&u| orth[u][v]) {
            current.push(v);
            extend_clique(orth, size, v + 1, current, out);
            current.pop();
        }
    }
}

/// A 0/1 assignment to vector indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Valuation {
    pub values: BTreeMap<usize, u8>,
}

impl Valuation {
    pub fn ones(&self) -> Vec<usize> {
        self.values.iter().filter(|(_, &v)| v == 1).map(|(&i, _)| i).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub colorable: bool,
    pub witness: Option<Valuation>,
    pub nodes_explored: u64,
    /// For uncolorable lists, indices into the list of a subset of bases
    /// that is uncolorable while every proper deletion of one basis is not.
    pub contradiction_core: Option<Vec<usize>>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.colorable {
            write!(f, "colorable ({} nodes)", self.nodes_explored)?;
            if let Some(w) = &self.witness {
                write!(f, "; value 1 on {:?}", w.ones())?;
            }
            Ok(())
        } else {
            write!(f, "uncolorable ({} nodes)", self.nodes_explored)?;
            if let Some(core) = &self.contradiction_core {
                write!(f, "; core bases {core:?}")?;
            }
            Ok(())
        }
    }
}

/// `true` iff every basis contains exactly one vector with value 1.
pub fn verify_valuation(v: &Valuation, bl: &BasisList) -> Result<bool, KsError> {
    for b in &bl.bases {
        let mut sum = 0u32;
        for i in b {
            match v.values.get(i) {
                Some(&x) if x <= 1 => sum += x as u32,
                Some(&x) => return Err(KsError::InvalidValue { index: *i, value: x }),
                None => return Err(KsError::PartialValuation(*i)),
            }
        }
        if sum != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Solver<'a> {
    bases: &'a [Vec<usize>],
    containing: Vec<Vec<usize>>,
    nodes: u64,
}

type Assignment = Vec<Option<bool>>;

impl Solver<'_> {
    /// Unit propagation to a fixpoint; `false` on conflict.
    fn propagate(&self, vals: &mut Assignment, mut queue: Vec<usize>) -> bool {
        while let Some(i) = queue.pop() {
            for &b in &self.containing[i] {
                let basis = &self.bases[b];
                let ones = basis.iter().filter(|&&j| vals[j] == Some(true)).count();
                if ones > 1 {
                    return false;
                }
                if ones == 1 {
                    for &j in basis {
                        if vals[j].is_none() {
                            vals[j] = Some(false);
                            queue.push(j);
                        }
                    }
                    continue;
                }
                let mut open = basis.iter().filter(|&&j| vals[j].is_none());
                match (open.next(), open.next()) {
                    (None, _) => return false,
                    (Some(&j), None) => {
                        vals[j] = Some(true);
                        queue.push(j);
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn search(&mut self, vals: &mut Assignment) -> bool {
        let next = self.bases.iter().find(|b| !b.iter().any(|&j| vals[j] == Some(true)));
        let Some(basis) = next else {
            return true;
        };
        for &j in basis {
            if vals[j].is_some() {
                continue;
            }
            self.nodes += 1;
            let mut trial = vals.clone();
            trial[j] = Some(true);
            if self.propagate(&mut trial, vec![j]) && self.search(&mut trial) {
                *vals = trial;
                return true;
            }
        }
        false
    }
}

fn solve(bl: &BasisList) -> (Option<Valuation>, u64) {
    let mut containing = vec![Vec::new(); bl.num_vectors];
    for (k, b) in bl.bases.iter().enumerate() {
        for &i in b {
            containing[i].push(k);
        }
    }
    let mut solver = Solver { bases: &bl.bases, containing, nodes: 0 };
    let mut vals: Assignment = vec![None; bl.num_vectors];
    if !solver.search(&mut vals) {
        return (None, solver.nodes);
    }
    let values = bl.support().into_iter().map(|i| (i, u8::from(vals[i] == Some(true)))).collect();
    (Some(Valuation { values }), solver.nodes)
}

/// Decides whether some 0/1 valuation puts exactly one 1 in every basis.
///
/// Bases are visited in list order; within a basis, candidates for the
/// value 1 are tried in increasing vector index.
pub fn search_valuation(bl: &BasisList) -> Verdict {
    let (witness, nodes_explored) = solve(bl);
    match witness {
        Some(w) => {
            assert!(verify_valuation(&w, bl) == Ok(true), "search produced an invalid witness");
            Verdict { colorable: true, witness: Some(w), nodes_explored, contradiction_core: None }
        }
        None => Verdict {
            colorable: false,
            witness: None,
            nodes_explored,
            contradiction_core: Some(contradiction_core(bl)),
        },
    }
}

/// Greedy deletion down to an uncolorable subset in which every basis is needed.
fn contradiction_core(bl: &BasisList) -> Vec<usize> {
    let mut keep: Vec<usize> = (0..bl.len()).collect();
    let mut k = 0;
    while k < keep.len() {
        let trial: Vec<usize> = keep.iter().copied().filter(|&b| b != keep[k]).collect();
        let sub =
            BasisList { num_vectors: bl.num_vectors, bases: trial.iter().map(|&b| bl.bases[b].clone()).collect() };
        if solve(&sub).0.is_none() {
            keep = trial;
        } else {
            k += 1;
        }
    }
    keep
}

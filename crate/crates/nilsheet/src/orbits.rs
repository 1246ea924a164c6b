//! Nilpotent orbits of 𝔰𝔩_n and 𝔰𝔬_{2r}: partitions, dimensions, weighted
//! Dynkin diagrams, Lusztig–Spaltenstein induction, rigidity and sheets.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{build_sl, build_so_even, LieAlgebra, LieElement, Realization};
use crate::linalg::Mat;
use crate::rational::{q, Q};
use crate::rootdata::Weight;

/// Seeds tried in order by the randomized constructions.
pub const SEEDS: [u64; 12] = [7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parse(s: &str) -> Option<Self> {
        let parts: Option<Vec<usize>> = s.split(',').map(|x| x.trim().parse().ok()).collect();
        Some(Partition::new(parts?))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn multiplicity(&self, d: usize) -> usize {
        self.0.iter().filter(|&&p| p == d).count()
    }

    pub fn dual(&self) -> Partition {
        dual_partition(self)
    }

    /// Each even part occurs with even multiplicity.
    pub fn is_orthogonal(&self) -> bool {
        self.0.iter().filter(|&&p| p % 2 == 0).all(|&p| self.multiplicity(p) % 2 == 0)
    }

    pub fn is_very_even(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&p| p % 2 == 0) && self.is_orthogonal()
    }

    fn partial_sums(&self, len: usize) -> Vec<usize> {
        let mut acc = 0;
        (0..len)
            .map(|i| {
                acc += self.0.get(i).copied().unwrap_or(0);
                acc
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match groups.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => groups.push((p, 1)),
            }
        }
        let s: Vec<String> =
            groups.iter().map(|&(v, m)| if m == 1 { v.to_string() } else { format!("{v}^{m}") }).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VeryEvenLabel {
    I,
    II,
}

pub fn dual_partition(p: &Partition) -> Partition {
    let m = p.0.first().copied().unwrap_or(0);
    Partition::new((1..=m).map(|k| p.0.iter().filter(|&&x| x >= k).count()).collect())
}

/// Dominance (Chevalley) order.
pub fn dominance_leq(p: &Partition, q: &Partition) -> Result<bool> {
    if p.total() != q.total() {
        return Err(Error::Invalid(format!("{p} and {q} have different totals")));
    }
    let len = p.0.len().max(q.0.len());
    let (a, b) = (p.partial_sums(len), q.partial_sums(len));
    Ok(a.iter().zip(&b).all(|(x, y)| x <= y))
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions labelling nilpotent orbits (without very-even labels).
pub fn orbit_partition_set(g: Realization) -> Vec<Partition> {
    match g {
        Realization::Sl(n) => partitions(n),
        Realization::SoEven(r) => partitions(2 * r).into_iter().filter(|p| p.is_orthogonal()).collect(),
    }
}

/// Minimal partitions strictly dominating `p` within the orbit set of `g`.
pub fn minimal_dominating(g: Realization, p: &Partition) -> Result<Vec<Partition>> {
    let all = orbit_partition_set(g);
    if !all.contains(p) {
        return Err(Error::Invalid(format!("{p} does not label an orbit of {g:?}")));
    }
    let above: Vec<&Partition> = all.iter().filter(|x| *x != p && dominance_leq(p, x).unwrap()).collect();
    Ok(above
        .iter()
        .filter(|x| !above.iter().any(|y| y != *x && dominance_leq(y, x).unwrap()))
        .map(|x| (*x).clone())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitDatum {
    pub algebra: AlgebraKey,
    pub partition: Partition,
    pub label: Option<VeryEvenLabel>,
}

/// Serializable stand-in for [`Realization`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKey {
    Sl(usize),
    SoEven(usize),
}

impl From<Realization> for AlgebraKey {
    fn from(r: Realization) -> Self {
        match r {
            Realization::Sl(n) => AlgebraKey::Sl(n),
            Realization::SoEven(r) => AlgebraKey::SoEven(r),
        }
    }
}

impl From<AlgebraKey> for Realization {
    fn from(k: AlgebraKey) -> Self {
        match k {
            AlgebraKey::Sl(n) => Realization::Sl(n),
            AlgebraKey::SoEven(r) => Realization::SoEven(r),
        }
    }
}

impl OrbitDatum {
    pub fn new(g: Realization, partition: Partition, label: Option<VeryEvenLabel>) -> Result<Self> {
        match g {
            Realization::Sl(n) => {
                if partition.total() != n || label.is_some() {
                    return Err(Error::Invalid(format!("{partition} is not an orbit of sl_{n}")));
                }
            }
            Realization::SoEven(r) => {
                if partition.total() != 2 * r || !partition.is_orthogonal() {
                    return Err(Error::Invalid(format!("{partition} is not in P1({})", 2 * r)));
                }
                if partition.is_very_even() != label.is_some() {
                    return Err(Error::Invalid(format!("label mismatch for {partition}")));
                }
            }
        }
        Ok(OrbitDatum { algebra: g.into(), partition, label })
    }

    pub fn zero(g: Realization) -> Self {
        let n = g.matrix_size();
        OrbitDatum { algebra: g.into(), partition: Partition::new(vec![1; n]), label: None }
    }

    pub fn realization(&self) -> Realization {
        self.algebra.into()
    }

    pub fn is_zero(&self) -> bool {
        self.partition.parts().iter().all(|&p| p == 1)
    }

    /// Dimension from the partition.
    pub fn dimension(&self) -> usize {
        let s: usize = self.partition.dual().parts().iter().map(|&x| x * x).sum();
        match self.realization() {
            Realization::Sl(n) => n * n - s,
            Realization::SoEven(r) => {
                let odd = self.partition.parts().iter().filter(|&&p| p % 2 == 1).count();
                2 * r * r - r - (s - odd) / 2
            }
        }
    }
}

impl fmt::Display for OrbitDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)?;
        if let Some(l) = self.label {
            write!(f, "^{l:?}")?;
        }
        Ok(())
    }
}

/// All nilpotent orbits, very-even partitions counted twice.
pub fn all_orbits(g: Realization) -> Vec<OrbitDatum> {
    let mut out = Vec::new();
    for p in orbit_partition_set(g) {
        if matches!(g, Realization::SoEven(_)) && p.is_very_even() {
            for l in [VeryEvenLabel::I, VeryEvenLabel::II] {
                out.push(OrbitDatum { algebra: g.into(), partition: p.clone(), label: Some(l) });
            }
        } else {
            out.push(OrbitDatum { algebra: g.into(), partition: p, label: None });
        }
    }
    out
}

/// Closure order: dominance of partitions, with the two orbits of a very even partition incomparable.
pub fn closure_leq(a: &OrbitDatum, b: &OrbitDatum) -> Result<bool> {
    if a.algebra != b.algebra {
        return Err(Error::Invalid("orbits of different algebras".into()));
    }
    if a.partition == b.partition {
        return Ok(a.label == b.label);
    }
    dominance_leq(&a.partition, &b.partition)
}

/// Orbits strictly contained in the closure of `o`.
pub fn orbits_below(o: &OrbitDatum) -> Result<Vec<OrbitDatum>> {
    let mut out = Vec::new();
    for x in all_orbits(o.realization()) {
        if x != *o && closure_leq(&x, o)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Values `α_i(h)` for the dominant `h` of an 𝔰𝔩₂-triple through the orbit.
pub fn weighted_dynkin_diagram(o: &OrbitDatum) -> Vec<i64> {
    let mut ev: Vec<i64> = Vec::new();
    for &d in o.partition.parts() {
        let d = d as i64;
        ev.extend((0..d).map(|k| d - 1 - 2 * k));
    }
    ev.sort_unstable_by(|a, b| b.cmp(a));
    match o.realization() {
        Realization::Sl(n) => (0..n - 1).map(|i| ev[i] - ev[i + 1]).collect(),
        Realization::SoEven(r) => {
            let mut h: Vec<i64> = ev[..r].to_vec();
            if o.label == Some(VeryEvenLabel::I) {
                h[r - 1] = -h[r - 1];
            }
            let mut lab: Vec<i64> = (0..r - 1).map(|i| h[i] - h[i + 1]).collect();
            lab.push(h[r - 2] + h[r - 1]);
            lab
        }
    }
}

/// The element `h ∈ 𝔥` with `α_i(h)` given by the weighted Dynkin diagram.
pub fn dynkin_h(g: &LieAlgebra, o: &OrbitDatum) -> LieElement {
    let labels: Vec<Q> = weighted_dynkin_diagram(o).into_iter().map(q).collect();
    g.cartan_element(&g.datum.from_fundamental(&labels))
}

/// Eigenvalue of `ad h` on each basis vector, for `h ∈ 𝔥`.
pub fn basis_degrees(g: &LieAlgebra, h: &LieElement) -> Vec<Q> {
    let nu = g.weight_of_cartan(h);
    (0..g.dim()).map(|i| g.datum.form(&g.basis_weight(i), &nu)).collect()
}

/// Basis indices spanning `𝔤(h, i)`.
pub fn grading_space(g: &LieAlgebra, h: &LieElement, i: i64) -> Vec<usize> {
    basis_degrees(g, h).iter().enumerate().filter(|(_, d)| **d == q(i)).map(|(k, _)| k).collect()
}

/// `dim [𝔤(h,0), e]`.
pub fn degree_zero_orbit_dim(g: &LieAlgebra, h: &LieElement, e: &LieElement) -> usize {
    let zero = grading_space(g, h, 0);
    let cols: Vec<Vec<Q>> = zero.iter().map(|&b| g.bracket(&LieElement::basis(b), e).to_dense(g.dim())).collect();
    crate::linalg::rank_of(&cols)
}

fn rep_cache() -> &'static Mutex<HashMap<OrbitDatum, LieElement>> {
    static C: OnceLock<Mutex<HashMap<OrbitDatum, LieElement>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// A representative of the orbit in `g`.
///
/// Type A uses sums of simple root vectors along consecutive segments; type D
/// uses a generic integer point of `𝔤(h,2)` for the Dynkin element `h`.
pub fn representative(g: &LieAlgebra, o: &OrbitDatum) -> Result<LieElement> {
    if o.realization() != g.realization() {
        return Err(Error::Invalid("orbit of a different algebra".into()));
    }
    if o.is_zero() {
        return Ok(LieElement::zero());
    }
    if let Some(x) = rep_cache().lock().unwrap().get(o) {
        return Ok(x.clone());
    }
    let x = match g.realization() {
        Realization::Sl(n) => {
            let chain: Vec<usize> = (0..n - 1).collect();
            segment_sum(&chain, o.partition.parts())
        }
        Realization::SoEven(_) => generic_even_representative(g, o)?.0,
    };
    rep_cache().lock().unwrap().insert(o.clone(), x.clone());
    Ok(x)
}

fn segment_sum(chain: &[usize], parts: &[usize]) -> LieElement {
    let mut x = LieElement::zero();
    let mut point = 0;
    for &p in parts {
        for k in point..point + p - 1 {
            x.add_term(chain[k], &q(1));
        }
        point += p;
    }
    x
}

/// Generic integral element of `𝔤(h,2)` lying in the orbit, with its seed.
pub fn generic_even_representative(g: &LieAlgebra, o: &OrbitDatum) -> Result<(LieElement, u64)> {
    let h = dynkin_h(g, o);
    let two = grading_space(g, &h, 2);
    for seed in SEEDS.iter().copied().chain(1000..1040) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut e = LieElement::zero();
        for &b in &two {
            let v: i64 = rng.random_range(1..=3) * if rng.random_bool(0.5) { 1 } else { -1 };
            e.add_term(b, &q(v));
        }
        if degree_zero_orbit_dim(g, &h, &e) != two.len() {
            continue;
        }
        let (p, l) = g.jordan_type(&e)?;
        if p == o.partition && l == o.label {
            return Ok((e, seed));
        }
    }
    Err(Error::Exhausted(format!("no representative found for {o}")))
}

/// Dimension of the orbit by exact linear algebra on a representative.
pub fn orbit_dimension(g: &LieAlgebra, o: &OrbitDatum) -> Result<usize> {
    let x = representative(g, o)?;
    Ok(g.ad_matrix(&x).rank())
}

/// Standard Levi subalgebra given by a set of simple roots (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeviDatum {
    pub simple: BTreeSet<usize>,
}

impl LeviDatum {
    pub fn new(simple: impl IntoIterator<Item = usize>) -> Self {
        LeviDatum { simple: simple.into_iter().collect() }
    }

    /// Levi of 𝔰𝔩_n with blocks of the given sizes.
    pub fn from_composition(parts: &[usize]) -> Self {
        let mut s = BTreeSet::new();
        let mut point = 0;
        for &p in parts {
            for k in point..point + p - 1 {
                s.insert(k);
            }
            point += p;
        }
        LeviDatum { simple: s }
    }

    /// All simple roots but the given ones.
    pub fn complement(rank: usize, dropped: &[usize]) -> Self {
        LeviDatum { simple: (0..rank).filter(|i| !dropped.contains(i)).collect() }
    }

    pub fn composition(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut size = 1;
        for i in 0..n - 1 {
            if self.simple.contains(&i) {
                size += 1;
            } else {
                out.push(size);
                size = 1;
            }
        }
        out.push(size);
        out
    }

    /// Center dimension.
    pub fn rank(&self, g: &LieAlgebra) -> usize {
        g.rank() - self.simple.len()
    }

    pub fn contains_root(&self, g: &LieAlgebra, root: usize) -> bool {
        g.datum.root_coeffs[root].iter().enumerate().all(|(i, &c)| c == 0 || self.simple.contains(&i))
    }

    pub fn dimension(&self, g: &LieAlgebra) -> usize {
        let n = (0..g.num_positive_roots()).filter(|&a| self.contains_root(g, a)).count();
        g.rank() + 2 * n
    }

    /// Simple factors of the derived algebra.
    pub fn factors(&self, g: &LieAlgebra) -> Vec<LeviFactor> {
        let r = g.rank();
        let adj = |i: usize, j: usize| i != j && g.datum.cartan_matrix[i][j] != 0;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &self.simple {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(x) = stack.pop() {
                for &y in &self.simple {
                    if adj(x, y) && seen.insert(y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            let is_d = matches!(g.realization(), Realization::SoEven(_))
                && r >= 3
                && [r - 3, r - 2, r - 1].iter().all(|k| comp.contains(k));
            if is_d {
                out.push(LeviFactor::D { nodes: comp.clone(), s: comp.len() });
            } else {
                let ends: Vec<usize> =
                    comp.iter().copied().filter(|&x| comp.iter().filter(|&&y| adj(x, y)).count() <= 1).collect();
                let mut chain = vec![ends[0]];
                while chain.len() < comp.len() {
                    let last = *chain.last().unwrap();
                    let nxt = comp.iter().copied().find(|&y| adj(last, y) && !chain.contains(&y)).unwrap();
                    chain.push(nxt);
                }
                out.push(LeviFactor::A { chain });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LeviFactor {
    /// Type A chain of simple roots, in path order.
    A { chain: Vec<usize> },
    /// Type D_s factor on the last `s` coordinates.
    D { nodes: Vec<usize>, s: usize },
}

/// Orbit data for one Levi factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorOrbit {
    A(Partition),
    D(OrbitDatum),
}

/// A nilpotent orbit of a Levi subalgebra: one orbit per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeviOrbit {
    pub factors: Vec<(LeviFactor, FactorOrbit)>,
}

impl LeviOrbit {
    pub fn zero(g: &LieAlgebra, levi: &LeviDatum) -> Self {
        let factors = levi
            .factors(g)
            .into_iter()
            .map(|f| {
                let o = match &f {
                    LeviFactor::A { chain } => FactorOrbit::A(Partition::new(vec![1; chain.len() + 1])),
                    LeviFactor::D { s, .. } => FactorOrbit::D(OrbitDatum::zero(Realization::SoEven(*s))),
                };
                (f, o)
            })
            .collect();
        LeviOrbit { factors }
    }

    pub fn is_zero(&self) -> bool {
        self.factors.iter().all(|(_, o)| match o {
            FactorOrbit::A(p) => p.parts().iter().all(|&x| x == 1),
            FactorOrbit::D(o) => o.is_zero(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, o)| match (f, o) {
                (LeviFactor::A { chain }, FactorOrbit::A(p)) => {
                    OrbitDatum { algebra: AlgebraKey::Sl(chain.len() + 1), partition: p.clone(), label: None }
                        .dimension()
                }
                (_, FactorOrbit::D(o)) => o.dimension(),
                _ => unreachable!("factor kind mismatch"),
            })
            .sum()
    }

    pub fn representative(&self, g: &LieAlgebra) -> Result<LieElement> {
        let mut x = LieElement::zero();
        for (f, o) in &self.factors {
            match (f, o) {
                (LeviFactor::A { chain }, FactorOrbit::A(p)) => {
                    x = x.add(&segment_sum(chain, p.parts()));
                }
                (LeviFactor::D { s, .. }, FactorOrbit::D(o)) => {
                    let r = match g.realization() {
                        Realization::SoEven(r) => r,
                        _ => unreachable!(),
                    };
                    let y = if *s == r {
                        representative(g, o)?
                    } else {
                        let sub = so_even_cached(*s);
                        let m = sub.to_matrix(&representative(&sub, o)?);
                        let off = r - s;
                        let big = Mat::from_fn(2 * r, 2 * r, |i, j| {
                            if (off..off + 2 * s).contains(&i) && (off..off + 2 * s).contains(&j) {
                                m[(i - off, j - off)].clone()
                            } else {
                                Q::zero()
                            }
                        });
                        g.read_matrix(&big).ok_or_else(|| Error::Invalid("embedding failed".into()))?
                    };
                    x = x.add(&y);
                }
                _ => unreachable!("factor kind mismatch"),
            }
        }
        Ok(x)
    }
}

fn so_even_cached(s: usize) -> LieAlgebra {
    static C: OnceLock<Mutex<HashMap<usize, LieAlgebra>>> = OnceLock::new();
    let c = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = c.lock().unwrap().get(&s) {
        return g.clone();
    }
    let g = build_so_even(s).expect("s >= 3");
    c.lock().unwrap().insert(s, g.clone());
    g
}

/// Builds the algebra of a realization.
pub fn build(r: Realization) -> Result<LieAlgebra> {
    match r {
        Realization::Sl(n) => build_sl(n),
        Realization::SoEven(s) => build_so_even(s),
    }
}

/// All orbit tuples of a Levi subalgebra.
pub fn levi_orbits(g: &LieAlgebra, levi: &LeviDatum) -> Vec<LeviOrbit> {
    let mut acc: Vec<Vec<(LeviFactor, FactorOrbit)>> = vec![Vec::new()];
    for f in levi.factors(g) {
        let choices: Vec<FactorOrbit> = match &f {
            LeviFactor::A { chain } => partitions(chain.len() + 1).into_iter().map(FactorOrbit::A).collect(),
            LeviFactor::D { s, .. } => {
                all_orbits(Realization::SoEven(*s)).into_iter().map(FactorOrbit::D).collect()
            }
        };
        let mut next = Vec::new();
        for a in &acc {
            for c in &choices {
                let mut v = a.clone();
                v.push((f.clone(), c.clone()));
                next.push(v);
            }
        }
        acc = next;
    }
    acc.into_iter().map(|factors| LeviOrbit { factors }).collect()
}

/// Result of an induction together with the seed that certified it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub orbit: OrbitDatum,
    pub seed: u64,
}

/// Lusztig–Spaltenstein induction by generic sampling in `rep + 𝔭_u`.
///
/// The sample is accepted once its orbit has dimension
/// `dim 𝔤 − dim 𝔩 + dim 𝕆_𝔩`.
pub fn induce_with_seed(g: &LieAlgebra, levi: &LeviDatum, orbit: &LeviOrbit, seeds: &[u64]) -> Result<Induced> {
    let rep = orbit.representative(g)?;
    let target = g.dim() - levi.dimension(g) + orbit.dimension();
    let nil: Vec<usize> = (0..g.num_positive_roots()).filter(|&a| !levi.contains_root(g, a)).collect();
    for &seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = rep.clone();
        for &a in &nil {
            let v: i64 = rng.random_range(1..=5) * if rng.random_bool(0.5) { 1 } else { -1 };
            x.add_term(g.e_index(a), &q(v));
        }
        let (p, label) = g.jordan_type(&x)?;
        let o = OrbitDatum { algebra: g.realization().into(), partition: p, label };
        if o.dimension() == target {
            return Ok(Induced { orbit: o, seed });
        }
    }
    Err(Error::Exhausted(format!("induction certificate not reached for {levi:?}")))
}

pub fn induce(g: &LieAlgebra, levi: &LeviDatum, orbit: &LeviOrbit) -> Result<OrbitDatum> {
    induce_with_seed(g, levi, orbit, &SEEDS).map(|i| i.orbit)
}

/// Orbits induced from the zero orbit of the given Levi.
pub fn induce_zero(g: &LieAlgebra, levi: &LeviDatum) -> Result<OrbitDatum> {
    induce(g, levi, &LeviOrbit::zero(g, levi))
}

fn properly_induced(g: &LieAlgebra) -> Result<BTreeSet<OrbitDatum>> {
    static C: OnceLock<Mutex<HashMap<Realization, BTreeSet<OrbitDatum>>>> = OnceLock::new();
    let c = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = c.lock().unwrap().get(&g.realization()) {
        return Ok(s.clone());
    }
    let mut out = BTreeSet::new();
    for drop in 0..g.rank() {
        let levi = LeviDatum::complement(g.rank(), &[drop]);
        for lo in levi_orbits(g, &levi) {
            out.insert(induce(g, &levi, &lo)?);
        }
    }
    c.lock().unwrap().insert(g.realization(), out.clone());
    Ok(out)
}

/// Not induced from any proper Levi (checked over maximal Levis and all their orbits).
pub fn is_rigid(g: &LieAlgebra, o: &OrbitDatum) -> Result<bool> {
    if o.realization() != g.realization() {
        return Err(Error::Invalid("orbit of a different algebra".into()));
    }
    Ok(!properly_induced(g)?.contains(o))
}

pub fn rigid_orbits(g: &LieAlgebra) -> Result<Vec<OrbitDatum>> {
    let ind = properly_induced(g)?;
    Ok(all_orbits(g.realization()).into_iter().filter(|o| !ind.contains(o)).collect())
}

/// Conjugacy-class key of a standard Levi: sorted block sizes, size of the
/// orthogonal block, and the I/II parity when it is an invariant.
pub fn levi_class_key(g: &LieAlgebra, levi: &LeviDatum) -> (Vec<usize>, usize, Option<u8>) {
    let r = g.rank();
    let fw = crate::rootdata::fundamental_weights(&g.datum);
    let mut z = Weight::zero(g.datum.ambient_dim);
    let mut c: i64 = 3;
    for i in 0..r {
        if !levi.simple.contains(&i) {
            c = c * 7 + 1;
            z = z.add(&fw[i].scale(&q(c)));
        }
    }
    match g.realization() {
        Realization::Sl(n) => (sorted(levi.composition(n)), 0, None),
        Realization::SoEven(_) => {
            let mut groups: BTreeMap<Q, usize> = BTreeMap::new();
            let mut zeros = 0;
            let mut negatives = 0;
            for x in &z.coords {
                if x.is_zero() {
                    zeros += 1;
                } else {
                    *groups.entry(x.clone().abs()).or_default() += 1;
                    if *x < Q::zero() {
                        negatives += 1;
                    }
                }
            }
            let mut blocks: Vec<usize> = groups.values().copied().collect();
            let mut s = zeros;
            if s == 1 {
                blocks.push(1);
                s = 0;
            }
            blocks.sort_unstable();
            let parity = if s == 0 && blocks.iter().all(|b| b % 2 == 0) { Some((negatives % 2) as u8) } else { None };
            (blocks, s, parity)
        }
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}


#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheetDatum {
    pub levi: LeviDatum,
    pub rigid_orbit: LeviOrbit,
    pub induced: OrbitDatum,
    pub rank: usize,
    pub dimension: usize,
}

/// One sheet per conjugacy class of pairs (Levi, rigid orbit of the Levi).
pub fn enumerate_sheets(g: &LieAlgebra) -> Result<Vec<SheetDatum>> {
    let r = g.rank();
    let mut classes: BTreeMap<(Vec<usize>, usize, Option<u8>), LeviDatum> = BTreeMap::new();
    for mask in 0u32..(1 << r) {
        let levi = LeviDatum::new((0..r).filter(|i| mask & (1 << i) != 0));
        classes.entry(levi_class_key(g, &levi)).or_insert(levi);
    }
    let mut out = Vec::new();
    for levi in classes.values() {
        for lo in rigid_levi_orbits(g, levi)? {
            let induced = induce(g, levi, &lo)?;
            let rank = levi.rank(g);
            out.push(SheetDatum { levi: levi.clone(), dimension: induced.dimension() + rank, rigid_orbit: lo, induced, rank });
        }
    }
    Ok(out)
}

/// Orbit tuples of a Levi whose every factor orbit is rigid.
pub fn rigid_levi_orbits(g: &LieAlgebra, levi: &LeviDatum) -> Result<Vec<LeviOrbit>> {
    let mut acc: Vec<Vec<(LeviFactor, FactorOrbit)>> = vec![Vec::new()];
    for f in levi.factors(g) {
        let choices: Vec<FactorOrbit> = match &f {
            LeviFactor::A { chain } => vec![FactorOrbit::A(Partition::new(vec![1; chain.len() + 1]))],
            LeviFactor::D { s, .. } => {
                let sub = if *s == g.rank() { g.clone() } else { so_even_cached(*s) };
                rigid_orbits(&sub)?.into_iter().map(FactorOrbit::D).collect()
            }
        };
        let mut next = Vec::new();
        for a in &acc {
            for c in &choices {
                let mut v = a.clone();
                v.push((f.clone(), c.clone()));
                next.push(v);
            }
        }
        acc = next;
    }
    Ok(acc.into_iter().map(|factors| LeviOrbit { factors }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn duals() {
        assert_eq!(p(&[2, 1, 1]).dual(), p(&[3, 1]));
        assert_eq!(p(&[5, 1]).dual(), p(&[2, 1, 1, 1, 1]));
        assert_eq!(p(&[3, 3]).dual(), p(&[2, 2, 2]));
    }

    #[test]
    fn display_groups_parts() {
        assert_eq!(p(&[3, 2, 2, 1, 1, 1]).to_string(), "(3,2^2,1^3)");
    }

    #[test]
    fn minimal_dominators() {
        let n = 6;
        let md = minimal_dominating(Realization::Sl(n), &p(&[2, 1, 1, 1, 1])).unwrap();
        assert_eq!(md, vec![p(&[2, 2, 1, 1])]);
        let md = minimal_dominating(Realization::Sl(6), &p(&[2, 2, 2])).unwrap();
        assert_eq!(md, vec![p(&[3, 2, 1])]);
        let md = minimal_dominating(Realization::SoEven(5), &p(&[2, 2, 2, 2, 1, 1])).unwrap();
        assert_eq!(md, vec![p(&[3, 2, 2, 1, 1, 1])]);
    }

    #[test]
    fn dimension_formulas() {
        let o = OrbitDatum::new(Realization::Sl(4), p(&[2, 1, 1]), None).unwrap();
        assert_eq!(o.dimension(), 6);
        let z = OrbitDatum::zero(Realization::SoEven(5));
        assert_eq!(z.dimension(), 0);
        let reg = OrbitDatum::new(Realization::SoEven(4), p(&[7, 1]), None).unwrap();
        assert_eq!(reg.dimension(), 28 - 4);
    }

    #[test]
    fn diagrams() {
        let o = OrbitDatum::new(Realization::Sl(6), p(&[2, 2, 1, 1]), None).unwrap();
        assert_eq!(weighted_dynkin_diagram(&o), vec![0, 1, 0, 1, 0]);
        let o = OrbitDatum::new(Realization::Sl(4), p(&[2, 2]), None).unwrap();
        assert_eq!(weighted_dynkin_diagram(&o), vec![0, 2, 0]);
        let o = OrbitDatum::new(Realization::SoEven(4), p(&[2, 2, 2, 2]), Some(VeryEvenLabel::II)).unwrap();
        assert_eq!(weighted_dynkin_diagram(&o), vec![0, 0, 0, 2]);
        let o = OrbitDatum::new(Realization::SoEven(4), p(&[2, 2, 2, 2]), Some(VeryEvenLabel::I)).unwrap();
        assert_eq!(weighted_dynkin_diagram(&o), vec![0, 0, 2, 0]);
    }

    #[test]
    fn linear_algebra_dimension_matches_formula() {
        for g in [build_sl(5).unwrap(), build_so_even(4).unwrap()] {
            for o in all_orbits(g.realization()) {
                assert_eq!(orbit_dimension(&g, &o).unwrap(), o.dimension(), "{o}");
            }
        }
    }

    #[test]
    fn induction_from_zero() {
        let g = build_sl(5).unwrap();
        let l1 = LeviDatum::complement(4, &[0]);
        assert_eq!(induce_zero(&g, &l1).unwrap().partition, p(&[2, 1, 1, 1]));
        let s = build_so_even(4).unwrap();
        let l_one = LeviDatum::complement(4, &[2]);
        let l_two = LeviDatum::complement(4, &[3]);
        assert_eq!(induce_zero(&s, &l_one).unwrap().label, Some(VeryEvenLabel::I));
        assert_eq!(induce_zero(&s, &l_two).unwrap().label, Some(VeryEvenLabel::II));
    }

    #[test]
    fn sl4_sheets() {
        let g = build_sl(4).unwrap();
        let sheets = enumerate_sheets(&g).unwrap();
        assert_eq!(sheets.len(), 5);
        assert_eq!(rigid_orbits(&g).unwrap(), vec![OrbitDatum::zero(Realization::Sl(4))]);
    }

    #[test]
    fn composition_roundtrip() {
        let l = LeviDatum::from_composition(&[2, 1, 3]);
        assert_eq!(l.composition(6), vec![2, 1, 3]);
    }


    #[test]
    fn so12_below_2222() {
        let g = Realization::SoEven(6);
        let o = OrbitDatum::new(g, Partition::new(vec![2, 2, 2, 2, 1, 1, 1, 1]), None).unwrap();
        let below = orbits_below(&o).unwrap();
        let nonzero: Vec<_> = below.iter().filter(|x| !x.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].partition, Partition::new(vec![2, 2, 1, 1, 1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn very_even_pair_incomparable() {
        let g = Realization::SoEven(4);
        let p = Partition::new(vec![2, 2, 2, 2]);
        let a = OrbitDatum::new(g, p.clone(), Some(VeryEvenLabel::I)).unwrap();
        let b = OrbitDatum::new(g, p, Some(VeryEvenLabel::II)).unwrap();
        assert!(!closure_leq(&a, &b).unwrap() && !closure_leq(&b, &a).unwrap());
    }
}

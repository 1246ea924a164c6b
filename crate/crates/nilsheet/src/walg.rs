//! Central charges of W-algebras, admissible levels, and the lisse test for
//! minimal W-algebras driven by a table of `k_i^♮`.

use std::path::Path;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::rational::{is_nonneg_integer, parse_q, q, qr, to_i64, Q};
use crate::rootdata::{fundamental_weights, CartanType, RootDatum, Weight};
use crate::slodowy::Sl2Triple;

/// Data of `W^k(g, f)`: the root datum, the values `α_i(h)` on simple roots, and `k`.
#[derive(Clone, Debug)]
pub struct WParams {
    pub datum: RootDatum,
    pub diagram: Vec<Q>,
    pub level: Q,
}

impl WParams {
    pub fn new(datum: RootDatum, diagram: Vec<Q>, level: Q) -> Result<Self> {
        if diagram.len() != datum.rank {
            return Err(Error::Invalid(format!("diagram of length {} for rank {}", diagram.len(), datum.rank)));
        }
        if level == q(-datum.dual_coxeter_number()) {
            return Err(Error::Invalid("critical level".into()));
        }
        Ok(WParams { datum, diagram, level })
    }

    pub fn from_triple(g: &LieAlgebra, t: &Sl2Triple, level: Q) -> Result<Self> {
        let diagram = (0..g.datum.rank).map(|i| t.degrees[g.e_index(i)].clone()).collect();
        Self::new(g.datum.clone(), diagram, level)
    }

    pub fn from_integer_diagram(datum: RootDatum, diagram: &[i64], level: Q) -> Result<Self> {
        Self::new(datum, diagram.iter().map(|&x| q(x)).collect(), level)
    }

    /// `α(h)` for each positive root.
    pub fn root_degrees(&self) -> Vec<Q> {
        self.datum
            .root_coeffs
            .iter()
            .map(|c| c.iter().zip(&self.diagram).map(|(a, d)| q(*a) * d).sum())
            .collect()
    }

    /// `dim g(h, j)`.
    pub fn grading_dim(&self, j: i64) -> usize {
        let degs = self.root_degrees();
        let jq = q(j);
        let roots = degs.iter().filter(|d| **d == jq).count() + degs.iter().filter(|d| -(*d).clone() == jq).count();
        roots + if j == 0 { self.datum.rank } else { 0 }
    }

    /// `h` transported to a weight through the normalized form.
    pub fn h_weight(&self) -> Weight {
        let fw = fundamental_weights(&self.datum);
        let mut w = Weight::zero(self.datum.ambient_dim);
        for (i, d) in self.diagram.iter().enumerate() {
            let a = &self.datum.simple_roots[i];
            let c = d * q(2) / self.datum.form(a, a);
            w = w.add(&fw[i].scale(&c));
        }
        w
    }

    pub fn terms(&self) -> CentralChargeTerms {
        let rho = self.datum.rho();
        let h = self.h_weight();
        CentralChargeTerms {
            dim0: self.grading_dim(0),
            dim1: self.grading_dim(1),
            rho_rho: self.datum.form(&rho, &rho),
            rho_h: self.datum.form(&rho, &h),
            h_h: self.datum.form(&h, &h),
            shifted_level: &self.level + q(self.datum.dual_coxeter_number()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralChargeTerms {
    pub dim0: usize,
    pub dim1: usize,
    pub rho_rho: Q,
    pub rho_h: Q,
    pub h_h: Q,
    /// `k + h∨`.
    pub shifted_level: Q,
}

impl CentralChargeTerms {
    pub fn value(&self) -> Q {
        let kh = &self.shifted_level;
        let norm = &self.rho_rho / kh - &self.rho_h + kh * &self.h_h / q(4);
        q(self.dim0 as i64) - qr(self.dim1 as i64, 2) - q(12) * norm
    }
}

/// `dim g(h,0) − ½ dim g(h,1) − 12|ρ/√(k+h∨) − √(k+h∨) h/2|²`.
///
/// ```
/// use nilsheet::rootdata::{build_root_datum, CartanType};
/// use nilsheet::walg::{central_charge, WParams};
/// use nilsheet::rational::q;
/// let d = build_root_datum(CartanType::A, 3).unwrap();
/// let p = WParams::from_integer_diagram(d, &[1, 0, 1], q(-1)).unwrap();
/// assert_eq!(central_charge(&p).unwrap(), q(1));
/// ```
pub fn central_charge(p: &WParams) -> Result<Q> {
    let t = p.terms();
    if t.shifted_level.is_zero() {
        return Err(Error::Invalid("critical level".into()));
    }
    Ok(t.value())
}

/// Denominator `q` of a principal admissible level, if `k` is one.
pub fn is_admissible(d: &RootDatum, k: &Q) -> Option<i64> {
    let shifted = k + q(d.dual_coxeter_number());
    if !shifted.is_positive() {
        return None;
    }
    let p = to_i64(&Q::from(shifted.numer().clone()))?;
    let den = to_i64(&Q::from(shifted.denom().clone()))?;
    let lacing = d.lacing_number();
    let bound = if den.gcd(&lacing) == 1 { d.dual_coxeter_number() } else { d.coxeter_number() };
    (p >= bound).then_some(den)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalLevelRow {
    pub g_type: CartanType,
    /// A rank, or `*` for every rank.
    pub rank_spec: String,
    pub component_index: usize,
    pub component_type: String,
    pub a: String,
    pub b: String,
    pub source_note: String,
}

impl NaturalLevelRow {
    pub fn matches(&self, t: CartanType, rank: usize) -> bool {
        self.g_type == t && (self.rank_spec == "*" || self.rank_spec.parse::<usize>().ok() == Some(rank))
    }

    /// `a·k + b`.
    pub fn eval(&self, k: &Q) -> Result<Q> {
        let bad = |s: &str| Error::Invalid(format!("bad rational {s:?} in natural level table"));
        let a = parse_q(&self.a).ok_or_else(|| bad(&self.a))?;
        let b = parse_q(&self.b).ok_or_else(|| bad(&self.b))?;
        Ok(a * k + b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalLevelTable {
    pub version: u32,
    pub rows: Vec<NaturalLevelRow>,
}

pub const NATURAL_LEVELS_VERSION: u32 = 1;
const SHIPPED: &str = include_str!("../data/natural_levels.json");

impl NaturalLevelTable {
    pub fn parse(json: &str) -> Result<Self> {
        let t: NaturalLevelTable =
            serde_json::from_str(json).map_err(|e| Error::Invalid(format!("natural level table: {e}")))?;
        if t.version != NATURAL_LEVELS_VERSION {
            return Err(Error::Invalid(format!("unsupported natural level table version {}", t.version)));
        }
        for r in &t.rows {
            r.eval(&Q::zero())?;
        }
        Ok(t)
    }

    pub fn shipped() -> Self {
        Self::parse(SHIPPED).expect("shipped table is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::MissingData(format!("{}: {e}", path.display())))?;
        Self::parse(&s)
    }

    pub fn rows_for(&self, t: CartanType, rank: usize) -> Vec<&NaturalLevelRow> {
        self.rows.iter().filter(|r| r.matches(t, rank)).collect()
    }

    /// `k_i^♮(k)` for each listed `i ≥ 1`.
    pub fn natural_levels(&self, d: &RootDatum, k: &Q) -> Result<Vec<(usize, Q)>> {
        self.rows_for(d.type_label, d.rank)
            .into_iter()
            .filter(|r| r.component_index >= 1)
            .map(|r| Ok((r.component_index, r.eval(k)?)))
            .collect()
    }
}

/// Whether `W_k(g, f_θ)` is lisse: every `k_i^♮`, `i ≥ 1`, is a nonnegative integer.
pub fn minimal_lisse(d: &RootDatum, k: &Q, table: &NaturalLevelTable) -> Result<bool> {
    if d.type_label == CartanType::A {
        return Err(Error::Unsupported("the lisse criterion excludes type A".into()));
    }
    let levels = table.natural_levels(d, k)?;
    if levels.is_empty() {
        return Err(Error::MissingData(format!("no natural levels for {}{}", d.type_label, d.rank)));
    }
    Ok(levels.iter().all(|(_, v)| is_nonneg_integer(v)))
}

/// `(ρ|ρ) = h∨ dim g / 12`.
pub fn strange_formula_holds(d: &RootDatum) -> bool {
    let rho = d.rho();
    d.form(&rho, &rho) == qr(d.dual_coxeter_number() * d.dimension() as i64, 12)
}

/// Weighted Dynkin diagram of `f_θ`: the highest root paired with the simple coroots.
pub fn minimal_diagram(d: &RootDatum) -> Vec<Q> {
    let th = d.highest_root();
    d.simple_roots.iter().map(|a| d.coroot_pairing(a, &th)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{build, OrbitDatum, Partition};
    use crate::rootdata::build_root_datum;
    use crate::slodowy::sl2_from_orbit;

    fn sl(n: usize) -> RootDatum {
        build_root_datum(CartanType::A, n - 1).unwrap()
    }

    #[test]
    fn heisenberg_and_virasoro() {
        for n in 4..=8 {
            let d = sl(n);
            let diag = minimal_diagram(&d);
            let p = WParams::new(d, diag, q(-1)).unwrap();
            assert_eq!(central_charge(&p).unwrap(), q(1), "n = {n}");
        }
        for m in [2usize, 3] {
            let mut diag = vec![0; 2 * m - 1];
            diag[m - 1] = 2;
            let p = WParams::from_integer_diagram(sl(2 * m), &diag, q(-(m as i64))).unwrap();
            assert_eq!(central_charge(&p).unwrap(), q(1), "m = {m}");
        }
    }

    #[test]
    fn from_triple_agrees_with_diagram() {
        let g = build(crate::liealg::Realization::Sl(4)).unwrap();
        let o = OrbitDatum::new(g.realization(), Partition::new(vec![2, 2]), None).unwrap();
        let t = sl2_from_orbit(&g, &o).unwrap();
        let p = WParams::from_triple(&g, &t, q(-2)).unwrap();
        assert_eq!(central_charge(&p).unwrap(), q(1));
    }

    #[test]
    fn terms_match_independent_sums() {
        let d = build_root_datum(CartanType::D, 5).unwrap();
        let p = WParams::from_integer_diagram(d.clone(), &[0, 1, 0, 1, 1], qr(1, 2)).unwrap();
        let t = p.terms();
        let degs = p.root_degrees();
        let sq: Q = degs.iter().map(|x| x * x).sum();
        let sum: Q = degs.iter().sum();
        assert_eq!(t.h_h, sq / q(d.dual_coxeter_number()));
        assert_eq!(t.rho_h, sum / q(2));
        assert!(strange_formula_holds(&d));
    }

    #[test]
    fn critical_level_rejected() {
        assert!(WParams::from_integer_diagram(sl(4), &[1, 0, 1], q(-4)).is_err());
    }

    #[test]
    fn admissibility() {
        let g2 = build_root_datum(CartanType::G, 2).unwrap();
        assert_eq!(is_admissible(&g2, &qr(-5, 3)), Some(3));
        assert_eq!(is_admissible(&g2, &qr(-4, 3)), Some(3));
        assert_eq!(is_admissible(&g2, &qr(-7, 3)), None);
        let d5 = build_root_datum(CartanType::D, 5).unwrap();
        assert_eq!(is_admissible(&d5, &q(0)), Some(1));
        for m in 2..=4 {
            assert_eq!(is_admissible(&sl(2 * m), &q(-(m as i64))), None);
        }
    }

    #[test]
    fn g2_lisse() {
        let g2 = build_root_datum(CartanType::G, 2).unwrap();
        let t = NaturalLevelTable::shipped();
        for (k, want) in [
            (qr(-5, 3), true),
            (qr(-4, 3), true),
            (q(-1), true),
            (q(0), true),
            (q(1), true),
            (qr(-3, 2), false),
            (q(-2), false),
        ] {
            assert_eq!(minimal_lisse(&g2, &k, &t).unwrap(), want, "k = {k}");
        }
        assert!(minimal_lisse(&sl(4), &q(0), &t).is_err());
        let d5 = build_root_datum(CartanType::D, 5).unwrap();
        assert!(matches!(minimal_lisse(&d5, &q(0), &t), Err(Error::MissingData(_))));
    }

    #[test]
    fn table_version_checked() {
        assert!(NaturalLevelTable::parse(r#"{"version": 99, "rows": []}"#).is_err());
    }
}

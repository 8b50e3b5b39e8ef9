//! Branch curves `B ∈ |O(3,3)|` on `ℙ¹×ℙ¹`, the invariants `(r, a)` of the
//! associated triple-cover K3 surface, the catalog of families `U_r`, and the
//! dimension and adjacency bookkeeping around them.
//!
//! Node counts are combinatorial: components are assumed to meet
//! transversally, so two components of bidegrees `(a,b)` and `(c,d)` meet in
//! `ad + bc` nodes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub d1: u32,
    pub d2: u32,
}

impl Bidegree {
    pub fn new(d1: u32, d2: u32) -> Result<Self> {
        if d1 == 0 && d2 == 0 {
            return Err(Error::InvalidConfig("bidegree (0,0) is not a curve".into()));
        }
        Ok(Self { d1, d2 })
    }

    /// Intersection number on the quadric: `(a,b)·(c,d) = ad + bc`.
    pub fn intersect(self, other: Bidegree) -> u64 {
        self.d1 as u64 * other.d2 as u64 + self.d2 as u64 * other.d1 as u64
    }

    /// `dim |O(d1,d2)| = (d1+1)(d2+1) − 1`.
    pub fn linear_system_dim(self) -> u64 {
        (self.d1 as u64 + 1) * (self.d2 as u64 + 1) - 1
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// One irreducible component: its bidegree and the nodes it carries itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    #[serde(flatten)]
    pub bidegree: Bidegree,
    #[serde(default)]
    pub nodes: u32,
}

impl Component {
    pub fn smooth(d1: u32, d2: u32) -> Self {
        Self { bidegree: Bidegree { d1, d2 }, nodes: 0 }
    }

    pub fn nodal(d1: u32, d2: u32, nodes: u32) -> Self {
        Self { bidegree: Bidegree { d1, d2 }, nodes }
    }

    pub fn is_smooth(&self) -> bool {
        self.nodes == 0
    }
}

/// A reduced nodal branch curve of total bidegree `(3,3)`.
///
/// JSON form: `{"components":[{"d1":1,"d2":1,"nodes":0},...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct BranchConfig {
    components: Vec<Component>,
}

#[derive(Deserialize)]
struct RawConfig {
    components: Vec<Component>,
}

impl TryFrom<RawConfig> for BranchConfig {
    type Error = Error;
    fn try_from(raw: RawConfig) -> Result<Self> {
        Self::new(raw.components)
    }
}

impl BranchConfig {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidConfig("no components".into()));
        }
        for c in &components {
            Bidegree::new(c.bidegree.d1, c.bidegree.d2)?;
        }
        let total = components.iter().fold((0u32, 0u32), |(a, b), c| (a + c.bidegree.d1, b + c.bidegree.d2));
        if total != (3, 3) {
            return Err(Error::InvalidConfig(format!(
                "total bidegree is ({},{}), expected (3,3)",
                total.0, total.1
            )));
        }
        // Lines of bidegree (1,0) or (0,1) cannot be nodal.
        for c in &components {
            if c.nodes > 0 && (c.bidegree.d1 == 0 || c.bidegree.d2 == 0) {
                return Err(Error::InvalidConfig(format!("a {} curve has no nodes", c.bidegree)));
            }
            // Arithmetic genus bounds the number of nodes of an irreducible curve.
            let genus = (c.bidegree.d1 as i64 - 1) * (c.bidegree.d2 as i64 - 1);
            if c.nodes as i64 > genus.max(0) {
                return Err(Error::InvalidConfig(format!(
                    "an irreducible {} curve has at most {} nodes",
                    c.bidegree,
                    genus.max(0)
                )));
            }
        }
        Ok(Self { components })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn total_bidegree(&self) -> Bidegree {
        let (d1, d2) = self.components.iter().fold((0, 0), |(a, b), c| (a + c.bidegree.d1, b + c.bidegree.d2));
        Bidegree { d1, d2 }
    }
}

/// Nodes of `B`: internal nodes plus pairwise transversal intersections.
pub fn node_count(cfg: &BranchConfig) -> u64 {
    let comps = cfg.components();
    let internal: u64 = comps.iter().map(|c| c.nodes as u64).sum();
    let mut crossings = 0;
    for (i, ci) in comps.iter().enumerate() {
        for cj in &comps[i + 1..] {
            crossings += ci.bidegree.intersect(cj.bidegree);
        }
    }
    internal + crossings
}

/// `(r, a)` together with the topological data `n` (nodes) and `k`
/// (components) it is computed from: `r = 2n + 2`, `a = n + 4 − 2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantPair {
    pub r: i64,
    pub a: i64,
    pub n: i64,
    pub k: i64,
}

impl InvariantPair {
    pub fn from_counts(n: i64, k: i64) -> Result<Self> {
        if n < 0 || k < 1 {
            return Err(Error::InvalidConfig(format!("need n >= 0 and k >= 1, got n={n}, k={k}")));
        }
        Ok(Self { r: 2 * n + 2, a: n + 4 - 2 * k, n, k })
    }
}

pub fn invariants(cfg: &BranchConfig) -> InvariantPair {
    let n = node_count(cfg) as i64;
    let k = cfg.components().len() as i64;
    InvariantPair::from_counts(n, k).expect("a valid config has k >= 1")
}

/// Where `(r, a)` sits relative to the region `a ≤ (r+2)/2`, `a ≤ (22−r)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    pub r: i64,
    pub a: i64,
    pub satisfies_lower_line: bool,
    pub satisfies_upper_line: bool,
    pub in_region: bool,
    /// `a = (r+2)/2` with `r ≤ 10`.
    pub on_left_extremal: bool,
    /// `a = (22−r)/2` with `r ≥ 12`.
    pub on_right_extremal: bool,
}

impl RegionReport {
    pub fn on_extremal_line(&self) -> bool {
        self.on_left_extremal || self.on_right_extremal
    }
}

pub fn classify(r: i64, a: i64) -> RegionReport {
    // Compare doubled quantities to stay in integers.
    let satisfies_lower_line = 2 * a <= r + 2;
    let satisfies_upper_line = 2 * a <= 22 - r;
    RegionReport {
        r,
        a,
        satisfies_lower_line,
        satisfies_upper_line,
        in_region: satisfies_lower_line && satisfies_upper_line,
        on_left_extremal: r <= 10 && 2 * a == r + 2,
        on_right_extremal: r >= 12 && 2 * a == 22 - r,
    }
}

/// The `a` value attached to `U_r`: `1 + r/2` for `r ≤ 10`, `11 − r/2` otherwise.
pub fn expected_a(r: i64) -> i64 {
    if r <= 10 {
        1 + r / 2
    } else {
        11 - r / 2
    }
}

pub const CATALOG_RANKS: [i64; 9] = [2, 4, 6, 8, 10, 12, 14, 16, 18];

/// Canonical branch configuration of the family `U_r`.
pub fn catalog(r: i64) -> Result<BranchConfig> {
    let comps = match r {
        2 | 4 | 6 | 8 | 10 => vec![Component::nodal(3, 3, ((r - 2) / 2) as u32)],
        12 => vec![Component::smooth(2, 1), Component::smooth(1, 2)],
        14 => vec![Component::smooth(1, 2), Component::smooth(1, 1), Component::smooth(1, 0)],
        16 => vec![
            Component::smooth(1, 1),
            Component::smooth(1, 1),
            Component::smooth(1, 0),
            Component::smooth(0, 1),
        ],
        18 => vec![
            Component::smooth(1, 1),
            Component::smooth(1, 0),
            Component::smooth(1, 0),
            Component::smooth(0, 1),
            Component::smooth(0, 1),
        ],
        _ => return Err(Error::CatalogRange(r)),
    };
    BranchConfig::new(comps)
}

/// Sum of the linear-system dimensions of the components, minus one
/// condition per internal node, minus `dim PGL₂² = 6`.
pub fn family_dimension(cfg: &BranchConfig) -> i64 {
    let systems: i64 = cfg.components().iter().map(|c| c.bidegree.linear_system_dim() as i64).sum();
    let node_conditions: i64 = cfg.components().iter().map(|c| c.nodes as i64).sum();
    systems - node_conditions - 6
}

/// `10 − r/2`
pub fn ball_dimension(r: i64) -> i64 {
    10 - r / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionCheck {
    pub r: i64,
    pub family_dim: i64,
    pub ball_dim: i64,
    pub agree: bool,
}

/// Compares `dim U_r − dim PGL₂²` with the ball dimension `10 − r/2`.
///
/// Each component contributes the dimension of its linear system; each
/// internal node imposes one condition.
pub fn moduli_dimension_check(r: i64) -> Result<DimensionCheck> {
    let cfg = catalog(r)?;
    let family_dim = family_dimension(&cfg);
    let ball_dim = ball_dimension(r);
    Ok(DimensionCheck { r, family_dim, ball_dim, agree: family_dim == ball_dim })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mechanism {
    /// An irreducible `(3,3)` curve acquires one more node.
    AddNode,
    /// One component of `U_r` breaks into two transversal pieces.
    SplitComponent,
    /// `U₁₂ ⊂ closure(U₁₀)`: after an elementary transformation at a node the
    /// curve becomes two conics, which deform to a 3-nodal quartic.
    ConicSmoothing,
}

impl Mechanism {
    pub fn tag(&self) -> &'static str {
        match self {
            Mechanism::AddNode => "add node",
            Mechanism::SplitComponent => "split component",
            Mechanism::ConicSmoothing => "smoothing two conics to a 3-nodal quartic model",
        }
    }
}

/// `U_{special}` lies in the Zariski closure of `U_{general}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationEdge {
    pub special: i64,
    pub general: i64,
    pub mechanism: Mechanism,
    pub tag: String,
    /// For splits: which component of `U_general` breaks, and into what.
    pub detail: Option<String>,
}

/// The chain `U₁₈ → U₁₆ → … → U₂`, each edge pointing from a family into
/// one whose closure contains it.
pub fn degeneration_chain() -> Vec<DegenerationEdge> {
    let mut edges = Vec::new();
    for special in (4..=18).rev().step_by(2) {
        let general = special - 2;
        let (mechanism, detail) = if special <= 10 {
            (Mechanism::AddNode, None)
        } else if special == 12 {
            (Mechanism::ConicSmoothing, None)
        } else {
            (Mechanism::SplitComponent, split_detail(general, special))
        };
        edges.push(DegenerationEdge {
            special,
            general,
            mechanism,
            tag: mechanism.tag().to_string(),
            detail,
        });
    }
    edges
}

/// Finds the component of `catalog(general)` that breaks into two components
/// of `catalog(special)`, as a multiset difference of bidegrees.
fn split_detail(general: i64, special: i64) -> Option<String> {
    let mut g: Vec<Bidegree> = catalog(general).ok()?.components().iter().map(|c| c.bidegree).collect();
    let mut s: Vec<Bidegree> = catalog(special).ok()?.components().iter().map(|c| c.bidegree).collect();
    g.sort();
    s.sort();
    let mut common = Vec::new();
    g.retain(|b| {
        if let Some(pos) = s.iter().position(|x| x == b) {
            s.remove(pos);
            common.push(*b);
            false
        } else {
            true
        }
    });
    match (g.as_slice(), s.as_slice()) {
        ([whole], [p, q]) if whole.d1 == p.d1 + q.d1 && whole.d2 == p.d2 + q.d2 => {
            Some(format!("{whole} -> {p}+{q}"))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u18_node_count() {
        let cfg = catalog(18).unwrap();
        assert_eq!(node_count(&cfg), 8);
        let inv = invariants(&cfg);
        assert_eq!((inv.r, inv.a, inv.n, inv.k), (18, 2, 8, 5));
    }

    #[test]
    fn nodal_and_smooth_sextics() {
        let cfg = BranchConfig::new(vec![Component::nodal(3, 3, 4)]).unwrap();
        assert_eq!(node_count(&cfg), 4);
        let cfg = BranchConfig::new(vec![Component::smooth(3, 3)]).unwrap();
        assert_eq!(node_count(&cfg), 0);
        assert_eq!(invariants(&cfg), InvariantPair { r: 2, a: 2, n: 0, k: 1 });
    }

    #[test]
    fn u12_invariants() {
        let inv = invariants(&catalog(12).unwrap());
        assert_eq!((inv.n, inv.r, inv.a), (5, 12, 5));
    }

    #[test]
    fn classification_examples() {
        let c = classify(18, 2);
        assert!(c.in_region && c.on_right_extremal && !c.on_left_extremal);
        let c = classify(2, 4);
        assert!(!c.in_region && !c.satisfies_lower_line);
        let inv = invariants(&catalog(10).unwrap());
        let c = classify(inv.r, inv.a);
        assert_eq!((inv.r, inv.a), (10, 6));
        assert!(c.on_left_extremal && c.in_region);
    }

    #[test]
    fn catalog_shapes() {
        let b = |r| catalog(r).unwrap().components().iter().map(|c| (c.bidegree.d1, c.bidegree.d2, c.nodes)).collect::<Vec<_>>();
        assert_eq!(b(14), vec![(1, 2, 0), (1, 1, 0), (1, 0, 0)]);
        assert_eq!(b(8), vec![(3, 3, 3)]);
        assert_eq!(b(16), vec![(1, 1, 0), (1, 1, 0), (1, 0, 0), (0, 1, 0)]);
        assert!(matches!(catalog(20), Err(Error::CatalogRange(20))));
        assert!(catalog(7).is_err());
        assert!(catalog(0).is_err());
    }

    #[test]
    fn every_catalog_entry_has_expected_invariants() {
        for r in CATALOG_RANKS {
            let inv = invariants(&catalog(r).unwrap());
            assert_eq!(inv.r, r);
            assert_eq!(inv.a, expected_a(r));
            assert!(classify(inv.r, inv.a).on_extremal_line());
        }
    }

    #[test]
    fn dimension_examples() {
        let d = moduli_dimension_check(2).unwrap();
        assert_eq!((d.family_dim, d.ball_dim, d.agree), (9, 9, true));
        let d = moduli_dimension_check(12).unwrap();
        assert_eq!((d.family_dim, d.ball_dim, d.agree), (4, 4, true));
        let d = moduli_dimension_check(10).unwrap();
        assert_eq!((d.family_dim, d.ball_dim, d.agree), (5, 5, true));
        assert!(CATALOG_RANKS.iter().all(|&r| moduli_dimension_check(r).unwrap().agree));
    }

    #[test]
    fn chain_shape_and_tags() {
        let chain = degeneration_chain();
        assert_eq!(chain.len(), 8);
        let mut nodes: Vec<i64> = chain.iter().map(|e| e.special).collect();
        nodes.push(chain.last().unwrap().general);
        assert_eq!(nodes, vec![18, 16, 14, 12, 10, 8, 6, 4, 2]);
        let e = chain.iter().find(|e| e.special == 12).unwrap();
        assert_eq!(e.tag, "smoothing two conics to a 3-nodal quartic model");
        let e = chain.iter().find(|e| e.special == 4).unwrap();
        assert_eq!(e.tag, "add node");
        let e = chain.iter().find(|e| e.special == 18).unwrap();
        assert_eq!(e.detail.as_deref(), Some("(1,1) -> (0,1)+(1,0)"));
        // Every edge raises the node count by exactly one.
        for e in &chain {
            let n_s = node_count(&catalog(e.special).unwrap());
            let n_g = node_count(&catalog(e.general).unwrap());
            assert_eq!(n_s, n_g + 1);
        }
    }

    #[test]
    fn config_validation() {
        assert!(BranchConfig::new(vec![Component::smooth(2, 3)]).is_err());
        assert!(BranchConfig::new(vec![Component::nodal(1, 0, 1), Component::smooth(2, 3)]).is_err());
        assert!(BranchConfig::new(vec![Component::nodal(3, 3, 5)]).is_err());
        assert!(BranchConfig::new(vec![Component::smooth(0, 0), Component::smooth(3, 3)]).is_err());
        let cfg = BranchConfig::from_json(r#"{"components":[{"d1":2,"d2":1,"nodes":0},{"d1":1,"d2":2}]}"#).unwrap();
        assert_eq!(invariants(&cfg).r, 12);
        assert!(BranchConfig::from_json(r#"{"components":[{"d1":2,"d2":1}]}"#).is_err());
    }
}

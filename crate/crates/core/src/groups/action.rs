use std::fmt;

use super::perm::Permutation;
use crate::error::{Error, Result};

/// Largest degree accepted by the composite constructors.
pub const MAX_COMPOSITE_DEGREE: usize = 4096;

/// Node type of an iterated wreath product level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// `Z_K`: one block rotation per node.
    Cyclic,
    /// `S_K`: adjacent block transpositions per node.
    Symmetric,
}

/// Which catalog constructor produced an action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Trivial,
    Cyclic,
    /// Rotation and reflection; `doubled` means the degree-2M action on `Z_{2M}`.
    Dihedral { doubled: bool },
    Boolean,
    DyadicWreath,
    Wreath(Vec<(usize, NodeKind)>),
    Hybrid { block: usize, blocks: usize },
    Product(Box<GroupKind>, Box<GroupKind>),
    Custom,
}

/// A named permutation action of degree `M` given by generators.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAction {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    kind: GroupKind,
}

impl GroupAction {
    fn build(name: String, degree: usize, generators: Vec<Permutation>, kind: GroupKind) -> Self {
        debug_assert!(!generators.is_empty());
        debug_assert!(generators.iter().all(|g| g.degree() == degree));
        Self {
            name,
            degree,
            generators,
            kind,
        }
    }

    /// The action generated by `perms`.
    pub fn from_generators(perms: Vec<Permutation>, name: impl Into<String>) -> Result<Self> {
        let first = perms
            .first()
            .ok_or_else(|| Error::Input("generator list is empty".into()))?;
        let degree = first.degree();
        if let Some(bad) = perms.iter().find(|p| p.degree() != degree) {
            return Err(Error::Input(format!(
                "generator degrees disagree: {degree} vs {}",
                bad.degree()
            )));
        }
        Ok(Self::build(name.into(), degree, perms, GroupKind::Custom))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// True when every generator is the identity.
    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    /// Same generators under a different label.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl fmt::Display for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {}, {} generators)", self.name, self.degree, self.generators.len())
    }
}

fn checked_degree(what: &str, degree: Option<usize>) -> Result<usize> {
    match degree {
        Some(d) if d <= MAX_COMPOSITE_DEGREE => Ok(d),
        _ => Err(Error::Size(format!(
            "{what}: degree exceeds {MAX_COMPOSITE_DEGREE}"
        ))),
    }
}

/// Trivial action on `m` points, represented by the identity generator.
pub fn make_trivial(m: usize) -> GroupAction {
    GroupAction::build(
        format!("trivial:{m}"),
        m,
        vec![Permutation::identity(m)],
        GroupKind::Trivial,
    )
}

/// `Z_M` acting on itself by translation `j ↦ j+1 mod M`.
pub fn make_cyclic(m: usize) -> Result<GroupAction> {
    if m == 0 {
        return Err(Error::Size("cyclic group needs M >= 1".into()));
    }
    let shift = Permutation::new((0..m).map(|j| (j + 1) % m).collect())?;
    Ok(GroupAction::build(
        format!("cyclic:{m}"),
        m,
        vec![shift],
        GroupKind::Cyclic,
    ))
}

/// Dihedral action on `2M` points: `τ: j ↦ j+1 mod 2M`, `σ: j ↦ 2M−1−j`.
pub fn make_dihedral(m: usize) -> Result<GroupAction> {
    if m < 2 {
        return Err(Error::Size("dihedral group needs M >= 2".into()));
    }
    let n = 2 * m;
    let tau = Permutation::new((0..n).map(|j| (j + 1) % n).collect())?;
    let sigma = Permutation::new((0..n).map(|j| n - 1 - j).collect())?;
    Ok(GroupAction::build(
        format!("dihedral:{m}"),
        n,
        vec![tau, sigma],
        GroupKind::Dihedral { doubled: true },
    ))
}

/// Dihedral action on `M` points: rotation `j ↦ j+1 mod M`, reflection `j ↦ M−1−j`.
pub fn make_dihedral_on_m(m: usize) -> Result<GroupAction> {
    if m < 2 {
        return Err(Error::Size("dihedral group needs M >= 2".into()));
    }
    let rot = Permutation::new((0..m).map(|j| (j + 1) % m).collect())?;
    let refl = Permutation::new((0..m).map(|j| m - 1 - j).collect())?;
    Ok(GroupAction::build(
        format!("dihedralM:{m}"),
        m,
        vec![rot, refl],
        GroupKind::Dihedral { doubled: false },
    ))
}

/// `Z_2^n` acting on `2^n` points by XOR with each basis vector.
pub fn make_boolean(n: usize) -> Result<GroupAction> {
    if !(1..=20).contains(&n) {
        return Err(Error::Size(format!("boolean group needs 1 <= n <= 20, got {n}")));
    }
    let m = 1usize << n;
    let gens = (0..n)
        .map(|l| Permutation::new((0..m).map(|j| j ^ (1 << l)).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupAction::build(
        format!("boolean:{n}"),
        m,
        gens,
        GroupKind::Boolean,
    ))
}

/// Swaps leaf blocks `[a, a+half)` and `[a+half, a+2·half)`.
fn block_swap(degree: usize, a: usize, half: usize) -> Permutation {
    let images = (0..degree)
        .map(|j| {
            if j >= a && j < a + half {
                j + half
            } else if j >= a + half && j < a + 2 * half {
                j - half
            } else {
                j
            }
        })
        .collect();
    Permutation::new(images).expect("block swap is a bijection")
}

/// Iterated dyadic-cyclic wreath product `W_L` on the `2^L` leaves of a complete
/// binary tree: one subtree swap per internal node, root first.
pub fn make_dyadic_wreath(levels: usize) -> Result<GroupAction> {
    if !(1..=10).contains(&levels) {
        return Err(Error::Size(format!(
            "dyadic wreath needs 1 <= L <= 10, got {levels}"
        )));
    }
    let m = 1usize << levels;
    let mut gens = Vec::with_capacity(m - 1);
    for d in 1..=levels {
        let span = 1usize << (levels - d + 1);
        for a in (0..m).step_by(span) {
            gens.push(block_swap(m, a, span / 2));
        }
    }
    Ok(GroupAction::build(
        format!("dyadic-wreath:{levels}"),
        m,
        gens,
        GroupKind::DyadicWreath,
    ))
}

/// General iterated wreath product. `branching[0]` is the level directly above
/// the leaves and the last entry is the root; leaf `x` has mixed-radix digits
/// with the first level varying fastest.
pub fn make_wreath(branching: &[(usize, NodeKind)]) -> Result<GroupAction> {
    if branching.is_empty() {
        return Err(Error::Input("wreath branching is empty".into()));
    }
    if let Some(&(k, _)) = branching.iter().find(|(k, _)| *k < 2) {
        return Err(Error::Size(format!("branching factor {k} < 2")));
    }
    let degree = checked_degree(
        "wreath",
        branching
            .iter()
            .try_fold(1usize, |acc, &(k, _)| acc.checked_mul(k)),
    )?;

    let mut gens = Vec::new();
    // Root level first.
    for level in (0..branching.len()).rev() {
        let (k, kind) = branching[level];
        let child: usize = branching[..level].iter().map(|(k, _)| k).product();
        let span = child * k;
        for a in (0..degree).step_by(span) {
            let block_map = |map: &dyn Fn(usize) -> usize| {
                let images = (0..degree)
                    .map(|x| {
                        if x < a || x >= a + span {
                            x
                        } else {
                            let b = (x - a) / child;
                            let y = (x - a) % child;
                            a + map(b) * child + y
                        }
                    })
                    .collect();
                Permutation::new(images).expect("block map is a bijection")
            };
            match kind {
                NodeKind::Cyclic => gens.push(block_map(&|b| (b + 1) % k)),
                NodeKind::Symmetric => {
                    for t in 0..k - 1 {
                        gens.push(block_map(&|b| {
                            if b == t {
                                t + 1
                            } else if b == t + 1 {
                                t
                            } else {
                                b
                            }
                        }));
                    }
                }
            }
        }
    }
    let label = branching
        .iter()
        .map(|(k, kind)| match kind {
            NodeKind::Cyclic => format!("{k}c"),
            NodeKind::Symmetric => format!("{k}s"),
        })
        .collect::<Vec<_>>()
        .join(",");
    Ok(GroupAction::build(
        format!("wreath:{label}"),
        degree,
        gens,
        GroupKind::Wreath(branching.to_vec()),
    ))
}

/// Hybrid wreath `Z_W ≀ S_K` on `K` blocks of `W` samples: a cyclic shift inside
/// block 0, the block transposition (0 1), and the block K-cycle.
pub fn make_hybrid(w: usize, k: usize) -> Result<GroupAction> {
    if w < 2 || k < 2 {
        return Err(Error::Size(format!("hybrid needs W >= 2 and K >= 2, got {w},{k}")));
    }
    let degree = checked_degree("hybrid", w.checked_mul(k))?;
    let shift = Permutation::new(
        (0..degree)
            .map(|i| if i < w { (i + 1) % w } else { i })
            .collect(),
    )?;
    let block_perm = |f: &dyn Fn(usize) -> usize| {
        Permutation::new((0..degree).map(|i| f(i / w) * w + i % w).collect())
    };
    let transposition = block_perm(&|b| match b {
        0 => 1,
        1 => 0,
        _ => b,
    })?;
    let rotation = block_perm(&|b| (b + 1) % k)?;
    Ok(GroupAction::build(
        format!("hybrid:{w},{k}"),
        degree,
        vec![shift, transposition, rotation],
        GroupKind::Hybrid { block: w, blocks: k },
    ))
}

/// Direct product acting on flattened pairs `(i, j) ↦ i·n + j`.
pub fn make_product(g: &GroupAction, h: &GroupAction) -> Result<GroupAction> {
    let (m, n) = (g.degree(), h.degree());
    let degree = checked_degree("product", m.checked_mul(n))?;
    let mut gens = Vec::with_capacity(g.generators().len() + h.generators().len());
    for p in g.generators() {
        gens.push(Permutation::new(
            (0..degree).map(|x| p.image(x / n) * n + x % n).collect(),
        )?);
    }
    for p in h.generators() {
        gens.push(Permutation::new(
            (0..degree).map(|x| (x / n) * n + p.image(x % n)).collect(),
        )?);
    }
    Ok(GroupAction::build(
        format!("product:({},{})", g.name(), h.name()),
        degree,
        gens,
        GroupKind::Product(Box::new(g.kind().clone()), Box::new(h.kind().clone())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_generators() {
        assert!(make_cyclic(1).unwrap().is_trivial());
        assert_eq!(make_cyclic(4).unwrap().generators()[0].images(), &[1, 2, 3, 0]);
        assert!(make_cyclic(0).is_err());
    }

    #[test]
    fn dihedral_reflection_formula() {
        let d = make_dihedral(2).unwrap();
        assert_eq!(d.degree(), 4);
        assert_eq!(d.generators()[1].images(), &[3, 2, 1, 0]);
        assert!(matches!(make_dihedral(1), Err(Error::Size(_))));
        let dm = make_dihedral_on_m(3).unwrap();
        assert_eq!(dm.degree(), 3);
        assert_eq!(dm.generators()[1].images(), &[2, 1, 0]);
    }

    #[test]
    fn boolean_generators() {
        let b1 = make_boolean(1).unwrap();
        assert_eq!(b1.generators().len(), 1);
        assert_eq!(b1.generators()[0].images(), &[1, 0]);
        assert_eq!(make_boolean(2).unwrap().generators()[0].images(), &[1, 0, 3, 2]);
        assert!(make_boolean(0).is_err() && make_boolean(21).is_err());
    }

    #[test]
    fn dyadic_wreath_generators() {
        let w1 = make_dyadic_wreath(1).unwrap();
        assert_eq!(w1.generators(), &[Permutation::new(vec![1, 0]).unwrap()]);
        let w2 = make_dyadic_wreath(2).unwrap();
        let imgs: Vec<&[usize]> = w2.generators().iter().map(|g| g.images()).collect();
        assert_eq!(imgs, vec![&[2, 3, 0, 1][..], &[1, 0, 2, 3], &[0, 1, 3, 2]]);
        assert_eq!(make_dyadic_wreath(5).unwrap().generators().len(), 31);
    }

    #[test]
    fn wreath_matches_dyadic_case() {
        let w = make_wreath(&[(2, NodeKind::Cyclic)]).unwrap();
        assert_eq!(w.generators(), make_dyadic_wreath(1).unwrap().generators());
        let w2 = make_wreath(&[(2, NodeKind::Cyclic), (2, NodeKind::Cyclic)]).unwrap();
        assert_eq!(w2.generators(), make_dyadic_wreath(2).unwrap().generators());
        assert!(make_wreath(&[(1, NodeKind::Cyclic)]).is_err());
        assert!(matches!(
            make_wreath(&[(64, NodeKind::Cyclic), (128, NodeKind::Symmetric)]),
            Err(Error::Size(_))
        ));
    }

    #[test]
    fn hybrid_generators() {
        let h = make_hybrid(8, 4).unwrap();
        assert_eq!(h.degree(), 32);
        assert_eq!(h.generators().len(), 3);
        assert_eq!(h.generators()[0].image(7), 0);
        assert_eq!(h.generators()[0].image(8), 8);
        assert_eq!(h.generators()[1].image(3), 11);
        assert_eq!(h.generators()[2].image(30), 6);
        assert!(make_hybrid(1, 3).is_err());
        assert!(make_hybrid(4096, 2).is_err());
    }

    #[test]
    fn product_blocks() {
        let p = make_product(&make_trivial(2), &make_cyclic(3).unwrap()).unwrap();
        assert_eq!(p.degree(), 6);
        assert_eq!(p.generators()[1].images(), &[1, 2, 0, 4, 5, 3]);
        assert!(p.generators()[0].is_identity());
    }

    #[test]
    fn from_generators_validation() {
        let t = GroupAction::from_generators(vec![Permutation::identity(3)], "t").unwrap();
        assert!(t.is_trivial());
        assert!(GroupAction::from_generators(vec![], "e").is_err());
        assert!(GroupAction::from_generators(
            vec![Permutation::identity(2), Permutation::identity(3)],
            "bad"
        )
        .is_err());
    }
}

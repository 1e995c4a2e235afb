//! Deck groups with exact arithmetic, Følner boxes, boundary layers and
//! Cheeger ratios.
//!
//! Three families are built in: free abelian groups ℤᵈ, the integer
//! Heisenberg group (amenable, nonabelian) and the free group F₂
//! (nonamenable control). Every family carries a fixed symmetric
//! generating set; word metric with respect to that set replaces the
//! Riemannian distance of the smooth picture.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::LabError;

/// Built-in deck group families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    /// ℤᵈ with the 2d directed generators ±e_i.
    FreeAbelian(usize),
    /// Integer Heisenberg group on (a, b, c) with c central and
    /// multiplication (a,b,c)·(a′,b′,c′) = (a+a′, b+b′, c+c′+a·b′).
    /// Cayley generators: a±, b± (four directed generators).
    Heisenberg3,
    /// Free group on x, y; elements are reduced words.
    FreeGroup2,
}

impl GroupFamily {
    pub fn name(&self) -> String {
        match self {
            GroupFamily::FreeAbelian(d) => format!("free_abelian {d}"),
            GroupFamily::Heisenberg3 => "heisenberg3".to_string(),
            GroupFamily::FreeGroup2 => "free_group2".to_string(),
        }
    }

    pub fn is_amenable(&self) -> bool {
        !matches!(self, GroupFamily::FreeGroup2)
    }
}

/// A deck group together with its standard generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: GroupFamily,
}

/// Free-group letters; capital variants are inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    XInv,
    Y,
    YInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::X => Letter::XInv,
            Letter::XInv => Letter::X,
            Letter::Y => Letter::YInv,
            Letter::YInv => Letter::Y,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::XInv => 'X',
            Letter::Y => 'y',
            Letter::YInv => 'Y',
        }
    }

    pub fn from_symbol(c: char) -> Option<Letter> {
        match c {
            'x' => Some(Letter::X),
            'X' => Some(Letter::XInv),
            'y' => Some(Letter::Y),
            'Y' => Some(Letter::YInv),
            _ => None,
        }
    }
}

/// A deck group element in exact coordinates.
///
/// The derived ordering (lexicographic on coordinates resp. letters) is
/// the deterministic cell order used throughout the finite sections.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    Abelian(Vec<i64>),
    Heisenberg(i64, i64, i64),
    Word(Vec<Letter>),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Abelian(v) => {
                let coords: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                write!(f, "g({})", coords.join(","))
            }
            GroupElement::Heisenberg(a, b, c) => write!(f, "g({a},{b},{c})"),
            GroupElement::Word(w) => {
                let s: String = w.iter().map(|l| l.symbol()).collect();
                write!(f, "g({s})")
            }
        }
    }
}

impl GroupSpec {
    pub fn new(family: GroupFamily) -> Self {
        GroupSpec { family }
    }

    pub fn free_abelian(d: usize) -> Self {
        GroupSpec::new(GroupFamily::FreeAbelian(d))
    }

    pub fn heisenberg() -> Self {
        GroupSpec::new(GroupFamily::Heisenberg3)
    }

    pub fn free_group2() -> Self {
        GroupSpec::new(GroupFamily::FreeGroup2)
    }

    pub fn identity(&self) -> GroupElement {
        match self.family {
            GroupFamily::FreeAbelian(d) => GroupElement::Abelian(vec![0; d]),
            GroupFamily::Heisenberg3 => GroupElement::Heisenberg(0, 0, 0),
            GroupFamily::FreeGroup2 => GroupElement::Word(Vec::new()),
        }
    }

    /// Directed generators: 2d for ℤᵈ, four (a±, b±) for Heisenberg,
    /// four (x±, y±) for F₂.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self.family {
            GroupFamily::FreeAbelian(d) => {
                let mut gens = Vec::with_capacity(2 * d);
                for i in 0..d {
                    for sign in [1i64, -1] {
                        let mut v = vec![0; d];
                        v[i] = sign;
                        gens.push(GroupElement::Abelian(v));
                    }
                }
                gens
            }
            GroupFamily::Heisenberg3 => vec![
                GroupElement::Heisenberg(1, 0, 0),
                GroupElement::Heisenberg(-1, 0, 0),
                GroupElement::Heisenberg(0, 1, 0),
                GroupElement::Heisenberg(0, -1, 0),
            ],
            GroupFamily::FreeGroup2 => vec![
                GroupElement::Word(vec![Letter::X]),
                GroupElement::Word(vec![Letter::XInv]),
                GroupElement::Word(vec![Letter::Y]),
                GroupElement::Word(vec![Letter::YInv]),
            ],
        }
    }

    fn check(&self, g: &GroupElement) -> Result<(), LabError> {
        let ok = match (self.family, g) {
            (GroupFamily::FreeAbelian(d), GroupElement::Abelian(v)) => v.len() == d,
            (GroupFamily::Heisenberg3, GroupElement::Heisenberg(..)) => true,
            (GroupFamily::FreeGroup2, GroupElement::Word(w)) => is_reduced(w),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(LabError::InvalidElement {
                family: self.family.name(),
                reason: format!("{g:?}"),
            })
        }
    }

    /// Group product. Heisenberg uses the frozen cocycle convention
    /// (a,b,c)·(a′,b′,c′) = (a+a′, b+b′, c+c′+a·b′); F₂ concatenates
    /// and reduces.
    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, LabError> {
        self.check(g)?;
        self.check(h)?;
        Ok(match (g, h) {
            (GroupElement::Abelian(u), GroupElement::Abelian(v)) => {
                GroupElement::Abelian(u.iter().zip(v).map(|(a, b)| a + b).collect())
            }
            (GroupElement::Heisenberg(a, b, c), GroupElement::Heisenberg(a2, b2, c2)) => {
                GroupElement::Heisenberg(a + a2, b + b2, c + c2 + a * b2)
            }
            (GroupElement::Word(u), GroupElement::Word(v)) => {
                let mut out = u.clone();
                for &l in v {
                    if out.last().copied() == Some(l.inverse()) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                GroupElement::Word(out)
            }
            _ => unreachable!("check() enforces matching variants"),
        })
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement, LabError> {
        self.check(g)?;
        Ok(match g {
            GroupElement::Abelian(v) => GroupElement::Abelian(v.iter().map(|c| -c).collect()),
            // (a,b,c)^{-1} = (-a, -b, -c + a*b), since (a,b,c)(-a,-b,-c+ab) = e.
            GroupElement::Heisenberg(a, b, c) => GroupElement::Heisenberg(-a, -b, -c + a * b),
            GroupElement::Word(w) => {
                GroupElement::Word(w.iter().rev().map(|l| l.inverse()).collect())
            }
        })
    }
}

pub fn is_reduced(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0] != p[1].inverse())
}

/// A finite subset of the deck group with a descriptive label.
///
/// Built-in constructors produce identity-containing, Cayley-connected
/// sets; user-supplied sets are validated.
#[derive(Debug, Clone)]
pub struct FolnerSet {
    pub spec: GroupSpec,
    elements: BTreeSet<GroupElement>,
    pub label: String,
}

impl FolnerSet {
    pub fn new(
        spec: GroupSpec,
        elements: BTreeSet<GroupElement>,
        label: String,
    ) -> Result<Self, LabError> {
        if elements.is_empty() {
            return Err(LabError::EmptyFolner);
        }
        for g in &elements {
            spec.check(g)
                .map_err(|e| LabError::InvalidFolner(e.to_string()))?;
        }
        let f = FolnerSet {
            spec,
            elements,
            label,
        };
        if !f.contains(&spec.identity()) {
            return Err(LabError::InvalidFolner(
                "set does not contain the identity".into(),
            ));
        }
        if !f.is_connected() {
            return Err(LabError::InvalidFolner(
                "set is not connected in the Cayley graph".into(),
            ));
        }
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.contains(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.elements.iter()
    }

    fn is_connected(&self) -> bool {
        let gens = self.spec.generators();
        let start = self.spec.identity();
        let mut seen: HashSet<&GroupElement> = HashSet::new();
        let mut queue = VecDeque::new();
        if let Some(e) = self.elements.get(&start) {
            seen.insert(e);
            queue.push_back(e.clone());
        } else {
            return false;
        }
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = self.spec.multiply(&g, s).expect("validated elements");
                if let Some(e) = self.elements.get(&h) {
                    if seen.insert(e) {
                        queue.push_back(h);
                    }
                }
            }
        }
        seen.len() == self.elements.len()
    }
}

/// Følner box (amenable families) or Cayley ball (F₂, negative control).
///
/// - ℤᵈ: all tuples in [0, L)ᵈ, size Lᵈ.
/// - Heisenberg: {(a,b,c) : 0 ≤ a,b < L, 0 ≤ c < L²}, size L⁴.
/// - F₂: ball of radius L in the 4-regular tree, by breadth-first
///   enumeration.
pub fn folner_box(spec: GroupSpec, side: u32) -> Result<FolnerSet, LabError> {
    if side == 0 {
        return Err(LabError::Domain("box side must be >= 1".into()));
    }
    let l = i64::from(side);
    let mut elements = BTreeSet::new();
    match spec.family {
        GroupFamily::FreeAbelian(d) => {
            let mut coords = vec![0i64; d];
            loop {
                elements.insert(GroupElement::Abelian(coords.clone()));
                let mut i = 0;
                loop {
                    if i == d {
                        return FolnerSet::new(spec, elements, format!("box L={side}"));
                    }
                    coords[i] += 1;
                    if coords[i] < l {
                        break;
                    }
                    coords[i] = 0;
                    i += 1;
                }
            }
        }
        GroupFamily::Heisenberg3 => {
            for a in 0..l {
                for b in 0..l {
                    for c in 0..l * l {
                        elements.insert(GroupElement::Heisenberg(a, b, c));
                    }
                }
            }
            FolnerSet::new(spec, elements, format!("box L={side}"))
        }
        GroupFamily::FreeGroup2 => {
            let mut frontier = vec![spec.identity()];
            elements.insert(spec.identity());
            for _ in 0..side {
                let mut next = Vec::new();
                for g in frontier {
                    for s in spec.generators() {
                        let h = spec.multiply(&g, &s)?;
                        if elements.insert(h.clone()) {
                            next.push(h);
                        }
                    }
                }
                frontier = next;
            }
            FolnerSet::new(spec, elements, format!("ball r={side}"))
        }
    }
}

/// Discrete boundary layer ∂_δ F: elements of F within word distance
/// δ−1 of a cell with a generator-translate leaving F, together with
/// exterior elements within distance δ of F.
pub fn boundary_layer(f: &FolnerSet, delta: u32) -> BTreeSet<GroupElement> {
    assert!(delta >= 1, "boundary layer depth must be >= 1");
    let spec = f.spec;
    let gens = spec.generators();
    let mut layer = BTreeSet::new();

    // Inner part: multi-source BFS inside F from the exit cells.
    let mut inner_frontier: Vec<GroupElement> = Vec::new();
    for g in f.iter() {
        if gens
            .iter()
            .any(|s| !f.contains(&spec.multiply(g, s).expect("validated")))
        {
            inner_frontier.push(g.clone());
        }
    }
    let mut seen: HashSet<GroupElement> = inner_frontier.iter().cloned().collect();
    layer.extend(inner_frontier.iter().cloned());
    for _ in 1..delta {
        let mut next = Vec::new();
        for g in &inner_frontier {
            for s in &gens {
                let h = spec.multiply(g, s).expect("validated");
                if f.contains(&h) && seen.insert(h.clone()) {
                    layer.insert(h.clone());
                    next.push(h);
                }
            }
        }
        inner_frontier = next;
    }

    // Exterior part: BFS outward from F to depth δ.
    let mut outer_frontier: Vec<GroupElement> = f.iter().cloned().collect();
    let mut outer_seen: HashSet<GroupElement> = outer_frontier.iter().cloned().collect();
    for _ in 0..delta {
        let mut next = Vec::new();
        for g in &outer_frontier {
            for s in &gens {
                let h = spec.multiply(g, s).expect("validated");
                if !f.contains(&h) && outer_seen.insert(h.clone()) {
                    layer.insert(h.clone());
                    next.push(h);
                }
            }
        }
        outer_frontier = next;
    }

    layer
}

/// Edge-boundary Cheeger ratio: |{Cayley edges with exactly one
/// endpoint in F}| / |F|.
pub fn cheeger_ratio(f: &FolnerSet) -> Result<f64, LabError> {
    if f.is_empty() {
        return Err(LabError::EmptyFolner);
    }
    let spec = f.spec;
    let gens = spec.generators();
    // Each boundary edge is seen exactly once from its unique interior
    // endpoint along the unique directed generator that exits.
    let mut boundary_edges = 0usize;
    for g in f.iter() {
        for s in &gens {
            let h = spec.multiply(g, s)?;
            if !f.contains(&h) {
                boundary_edges += 1;
            }
        }
    }
    Ok(boundary_edges as f64 / f.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_element(spec: &GroupSpec, rng: &mut StdRng) -> GroupElement {
        match spec.family {
            GroupFamily::FreeAbelian(d) => {
                GroupElement::Abelian((0..d).map(|_| rng.random_range(-6..=6)).collect())
            }
            GroupFamily::Heisenberg3 => GroupElement::Heisenberg(
                rng.random_range(-6..=6),
                rng.random_range(-6..=6),
                rng.random_range(-6..=6),
            ),
            GroupFamily::FreeGroup2 => {
                let mut w: Vec<Letter> = Vec::new();
                for _ in 0..rng.random_range(0..8) {
                    let l = match rng.random_range(0..4) {
                        0 => Letter::X,
                        1 => Letter::XInv,
                        2 => Letter::Y,
                        _ => Letter::YInv,
                    };
                    if w.last().copied() == Some(l.inverse()) {
                        w.pop();
                    } else {
                        w.push(l);
                    }
                }
                GroupElement::Word(w)
            }
        }
    }

    // Group axioms checked on random triples before anything downstream
    // relies on the multiplication table.
    #[test]
    fn group_axioms_on_random_triples() {
        let specs = [
            GroupSpec::free_abelian(2),
            GroupSpec::free_abelian(3),
            GroupSpec::heisenberg(),
            GroupSpec::free_group2(),
        ];
        let mut rng = StdRng::seed_from_u64(7);
        for spec in specs {
            for _ in 0..1000 {
                let g = random_element(&spec, &mut rng);
                let h = random_element(&spec, &mut rng);
                let k = random_element(&spec, &mut rng);
                let gh_k = spec.multiply(&spec.multiply(&g, &h).unwrap(), &k).unwrap();
                let g_hk = spec.multiply(&g, &spec.multiply(&h, &k).unwrap()).unwrap();
                assert_eq!(gh_k, g_hk, "associativity failed in {:?}", spec.family);
                let e = spec.identity();
                let ginv = spec.inverse(&g).unwrap();
                assert_eq!(spec.multiply(&g, &ginv).unwrap(), e);
                assert_eq!(spec.multiply(&ginv, &g).unwrap(), e);
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let z2 = GroupSpec::free_abelian(2);
        assert_eq!(
            z2.multiply(
                &GroupElement::Abelian(vec![1, 0]),
                &GroupElement::Abelian(vec![0, 1])
            )
            .unwrap(),
            GroupElement::Abelian(vec![1, 1])
        );

        let h = GroupSpec::heisenberg();
        assert_eq!(
            h.multiply(
                &GroupElement::Heisenberg(1, 0, 0),
                &GroupElement::Heisenberg(0, 1, 0)
            )
            .unwrap(),
            GroupElement::Heisenberg(1, 1, 1)
        );

        let f2 = GroupSpec::free_group2();
        assert_eq!(
            f2.multiply(
                &GroupElement::Word(vec![Letter::X]),
                &GroupElement::Word(vec![Letter::XInv])
            )
            .unwrap(),
            f2.identity()
        );
    }

    #[test]
    fn multiply_rejects_arity_mismatch() {
        let z2 = GroupSpec::free_abelian(2);
        let err = z2.multiply(
            &GroupElement::Abelian(vec![1, 0, 0]),
            &GroupElement::Abelian(vec![0, 1]),
        );
        assert!(matches!(err, Err(LabError::InvalidElement { .. })));
        let err = z2.multiply(
            &GroupElement::Heisenberg(0, 0, 0),
            &GroupElement::Abelian(vec![0, 1]),
        );
        assert!(matches!(err, Err(LabError::InvalidElement { .. })));
    }

    #[test]
    fn folner_box_sizes() {
        assert_eq!(folner_box(GroupSpec::free_abelian(2), 3).unwrap().len(), 9);
        // Heisenberg L=2: {0,1} x {0,1} x {0..3}.
        assert_eq!(folner_box(GroupSpec::heisenberg(), 2).unwrap().len(), 16);
        assert_eq!(folner_box(GroupSpec::heisenberg(), 3).unwrap().len(), 81);
        // F2 ball of radius 1: identity + 4 generators.
        assert_eq!(folner_box(GroupSpec::free_group2(), 1).unwrap().len(), 5);
        // |B(r)| = 2*3^r - 1 in the 4-regular tree.
        for r in 1..=5u32 {
            let expect = 2 * 3usize.pow(r) - 1;
            assert_eq!(
                folner_box(GroupSpec::free_group2(), r).unwrap().len(),
                expect
            );
        }
    }

    // Independent enumeration oracle for the Z^d boundary layer: word
    // distance computed by BFS over a padded box.
    fn zd_layer_oracle(d: usize, l: i64, delta: i64) -> BTreeSet<GroupElement> {
        let pad = delta + 1;
        let in_box = |v: &[i64]| v.iter().all(|&c| c >= 0 && c < l);
        let mut out = BTreeSet::new();
        let mut coords = vec![-pad; d];
        'outer: loop {
            let x = coords.clone();
            // distance to complement (for interior) or to box (for exterior)
            let dist_to_exit: i64 = if in_box(&x) {
                x.iter().map(|&c| (c + 1).min(l - c)).min().unwrap()
            } else {
                0
            };
            let dist_to_box: i64 = if in_box(&x) {
                0
            } else {
                x.iter()
                    .map(|&c| {
                        if c < 0 {
                            -c
                        } else if c >= l {
                            c - l + 1
                        } else {
                            0
                        }
                    })
                    .sum()
            };
            let inner = in_box(&x) && dist_to_exit <= delta;
            let outer = !in_box(&x) && dist_to_box <= delta;
            if inner || outer {
                out.insert(GroupElement::Abelian(x));
            }
            let mut i = 0;
            loop {
                if i == d {
                    break 'outer;
                }
                coords[i] += 1;
                if coords[i] < l + pad {
                    break;
                }
                coords[i] = -pad;
                i += 1;
            }
        }
        out
    }

    #[test]
    fn boundary_layer_z2_box4() {
        let f = folner_box(GroupSpec::free_abelian(2), 4).unwrap();
        let layer = boundary_layer(&f, 1);
        let oracle = zd_layer_oracle(2, 4, 1);
        assert_eq!(layer, oracle);
        // 12-element frame plus 16 exterior ring cells.
        let inner = layer.iter().filter(|g| f.contains(g)).count();
        let outer = layer.len() - inner;
        assert_eq!(inner, 12);
        assert_eq!(outer, 16);
    }

    #[test]
    fn boundary_layer_z1_box5() {
        let f = folner_box(GroupSpec::free_abelian(1), 5).unwrap();
        let layer = boundary_layer(&f, 1);
        let expect: BTreeSet<GroupElement> = [-1i64, 0, 4, 5]
            .into_iter()
            .map(|c| GroupElement::Abelian(vec![c]))
            .collect();
        assert_eq!(layer, expect);
    }

    #[test]
    fn boundary_layer_saturates() {
        let f = folner_box(GroupSpec::free_abelian(2), 3).unwrap();
        let delta = 8; // larger than the diameter + 1
        let layer = boundary_layer(&f, delta);
        for g in f.iter() {
            assert!(layer.contains(g), "interior cell missing at saturation");
        }
        let oracle = zd_layer_oracle(2, 3, i64::from(delta));
        assert_eq!(layer, oracle);
    }

    #[test]
    fn boundary_layer_monotone_in_delta() {
        for spec in [GroupSpec::free_abelian(2), GroupSpec::heisenberg()] {
            let f = folner_box(spec, 3).unwrap();
            let mut prev = boundary_layer(&f, 1);
            for delta in 2..=4 {
                let next = boundary_layer(&f, delta);
                assert!(prev.is_subset(&next));
                prev = next;
            }
        }
    }

    #[test]
    fn cheeger_ratio_boxes() {
        // L x L box in Z^2 has 4L boundary edges.
        let f = folner_box(GroupSpec::free_abelian(2), 10).unwrap();
        assert!((cheeger_ratio(&f).unwrap() - 0.4).abs() < 1e-12);
        let f = folner_box(GroupSpec::free_abelian(1), 5).unwrap();
        assert!((cheeger_ratio(&f).unwrap() - 0.4).abs() < 1e-12);
    }

    #[test]
    fn cheeger_tends_to_zero_for_amenable_families() {
        for spec in [
            GroupSpec::free_abelian(1),
            GroupSpec::free_abelian(2),
            GroupSpec::free_abelian(3),
        ] {
            let mut prev = f64::INFINITY;
            for l in [2u32, 4, 8, 16] {
                let r = cheeger_ratio(&folner_box(spec, l).unwrap()).unwrap();
                assert!(r < prev, "ratio not decreasing for {:?}", spec.family);
                prev = r;
            }
        }
        let mut prev = f64::INFINITY;
        for l in [2u32, 4, 8, 16] {
            let r = cheeger_ratio(&folner_box(GroupSpec::heisenberg(), l).unwrap()).unwrap();
            assert!(r < prev);
            prev = r;
        }
    }

    #[test]
    fn generator_counts() {
        assert_eq!(GroupSpec::free_abelian(2).generators().len(), 4);
        assert_eq!(GroupSpec::free_abelian(3).generators().len(), 6);
        assert_eq!(GroupSpec::heisenberg().generators().len(), 4);
        assert_eq!(GroupSpec::free_group2().generators().len(), 4);
    }

    #[test]
    fn cheeger_bounded_below_for_free_group() {
        // Tree expansion: ratio -> 2 from above; a nonamenability witness.
        for r in 1..=6u32 {
            let f = folner_box(GroupSpec::free_group2(), r).unwrap();
            let ratio = cheeger_ratio(&f).unwrap();
            assert!(ratio >= 2.0, "ball r={r} has ratio {ratio}");
        }
    }

    #[test]
    fn folner_set_validation() {
        let spec = GroupSpec::free_abelian(2);
        // missing identity
        let set: BTreeSet<GroupElement> = [GroupElement::Abelian(vec![1, 0])].into();
        assert!(matches!(
            FolnerSet::new(spec, set, "bad".into()),
            Err(LabError::InvalidFolner(_))
        ));
        // disconnected
        let set: BTreeSet<GroupElement> = [
            GroupElement::Abelian(vec![0, 0]),
            GroupElement::Abelian(vec![5, 5]),
        ]
        .into();
        assert!(matches!(
            FolnerSet::new(spec, set, "bad".into()),
            Err(LabError::InvalidFolner(_))
        ));
        assert!(matches!(
            FolnerSet::new(spec, BTreeSet::new(), "empty".into()),
            Err(LabError::EmptyFolner)
        ));
    }
}

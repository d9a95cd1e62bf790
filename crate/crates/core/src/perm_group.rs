//! Permutation groups given by explicit element tables, cyclic subgroups,
//! left cosets and the `(coset, power)` labeling of group elements.
//!
//! Composition convention: `a.compose(&b)` is `a ∘ b`, "apply `b`, then `a`".
//! Elements of a [`GroupTable`] are sorted lexicographically by their
//! one-line image sequence, so the identity always sits at index 0.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_DEGREE: usize = 2;
pub const MAX_DEGREE: usize = 8;

/// Groups up to this order get a materialized composition table.
const COMPOSITION_TABLE_LIMIT: usize = 720;

/// A bijection of `{0, …, n-1}` in one-line notation: `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Cycle `(c_0 c_1 … c_r)` on `n` points, 0-based.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        Self::from_cycles(n, &[points.to_vec()])
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= n {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} exceeds degree {n}",
                        p + 1
                    )));
                }
                if used[p] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} repeated in cycles",
                        p + 1
                    )));
                }
                used[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5)"`, `"(123)"` or `"()"`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "e" || text == "()" {
            return Ok(Self::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {text:?}")))?;
            let close = open.find(')').ok_or_else(|| {
                Error::InvalidPermutation(format!("unbalanced parentheses in {text:?}"))
            })?;
            let body = open[..close].trim();
            let tokens: Vec<&str> = if body.contains(|c: char| c.is_whitespace() || c == ',') {
                body.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .collect()
            } else {
                // compact form "(123)", one digit per point
                body.char_indices()
                    .map(|(i, c)| &body[i..i + c.len_utf8()])
                    .collect()
            };
            let mut cycle = Vec::with_capacity(tokens.len());
            for token in tokens {
                let p: usize = token.parse().map_err(|_| {
                    Error::InvalidPermutation(format!("bad point {token:?} in {text:?}"))
                })?;
                if p == 0 {
                    return Err(Error::InvalidPermutation(format!(
                        "points are 1-based in {text:?}"
                    )));
                }
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in composition"
        );
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths (including fixed points) in descending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let fixed = self
            .images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x)
            .count();
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.extend(std::iter::repeat_n(1, fixed));
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }

    /// Parity sign, `+1` for even permutations.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// 1-based cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite permutation group with canonically indexed elements.
#[derive(Clone, Debug)]
pub struct GroupTable {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    composition: Option<Vec<usize>>,
    inverse: Vec<usize>,
    symmetric: bool,
}

impl GroupTable {
    /// All `n!` permutations of `n` points.
    pub fn symmetric(n: usize) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::GroupSize {
                n,
                min: MIN_DEGREE,
                max: MAX_DEGREE,
            });
        }
        let mut elements = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            elements.push(Permutation {
                images: current.clone(),
            });
            if !next_permutation(&mut current) {
                break;
            }
        }
        Self::from_sorted(n, elements, true)
    }

    /// Builds the table from an explicit element list, checking closure.
    pub fn from_elements(elements: Vec<Permutation>) -> Result<Self> {
        let degree = elements
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::NotGroup("empty element list".into()))?;
        if elements.iter().any(|p| p.degree() != degree) {
            return Err(Error::NotGroup("elements have different degrees".into()));
        }
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        if !elements[0].is_identity() {
            return Err(Error::NotGroup("identity missing".into()));
        }
        let symmetric = elements.len() == (1..=degree).product::<usize>();
        let table = Self::from_sorted(degree, elements, symmetric)?;
        for a in &table.elements {
            if !table.index.contains_key(&a.inverse()) {
                return Err(Error::NotGroup(format!("inverse of {a} missing")));
            }
            for b in &table.elements {
                if !table.index.contains_key(&a.compose(b)) {
                    return Err(Error::NotGroup(format!(
                        "{a} ∘ {b} is not in the element list"
                    )));
                }
            }
        }
        Ok(table)
    }

    fn from_sorted(degree: usize, elements: Vec<Permutation>, symmetric: bool) -> Result<Self> {
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let lookup = |p: &Permutation| {
            index
                .get(p)
                .copied()
                .ok_or_else(|| Error::NotGroup(format!("{p} is not in the element list")))
        };
        let inverse = elements
            .iter()
            .map(|p| lookup(&p.inverse()))
            .collect::<Result<Vec<_>>>()?;
        let composition = if elements.len() <= COMPOSITION_TABLE_LIMIT {
            let mut table = Vec::with_capacity(elements.len() * elements.len());
            for a in &elements {
                for b in &elements {
                    table.push(lookup(&a.compose(b))?);
                }
            }
            Some(table)
        } else {
            None
        };
        Ok(Self {
            degree,
            elements,
            index,
            composition,
            inverse,
            symmetric,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// Whether this is the full symmetric group on its points.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn index_of(&self, p: &Permutation) -> Result<usize> {
        self.index
            .get(p)
            .copied()
            .ok_or_else(|| Error::NotInGroup(p.to_string()))
    }

    pub fn parse_element(&self, text: &str) -> Result<usize> {
        self.index_of(&Permutation::parse_cycles(self.degree, text)?)
    }

    /// Index of `a ∘ b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        match &self.composition {
            Some(table) => table[a * self.order() + b],
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conjugate(&self, by: usize, x: usize) -> usize {
        self.compose(self.compose(by, x), self.inverse(by))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.elements[a].order()
    }

    /// Conjugacy classes as lists of element indices, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        if self.symmetric {
            let mut by_type: HashMap<Vec<usize>, usize> = HashMap::new();
            for (i, p) in self.elements.iter().enumerate() {
                let next = by_type.len();
                let c = *by_type.entry(p.cycle_type()).or_insert(next);
                if c == classes.len() {
                    classes.push(Vec::new());
                }
                classes[c].push(i);
            }
            return classes;
        }
        for x in 0..self.order() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..self.order()).map(|h| self.conjugate(h, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &y in &members {
                class_of[y] = classes.len();
            }
            classes.push(members);
        }
        classes
    }

    /// Normalizer `{n : n H n⁻¹ = H}` of a set of element indices.
    pub fn normalizer(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut sorted = subgroup.to_vec();
        sorted.sort_unstable();
        (0..self.order())
            .filter(|&n| {
                let mut image: Vec<usize> =
                    subgroup.iter().map(|&h| self.conjugate(n, h)).collect();
                image.sort_unstable();
                image == sorted
            })
            .collect()
    }
}

/// Advances to the lexicographically next arrangement; `false` after the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `H = {e, g, g², …, g^{m-1}}` as element indices, in power order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubgroup {
    generator: usize,
    powers: Vec<usize>,
}

impl CyclicSubgroup {
    pub fn generated_by(table: &GroupTable, generator: &Permutation) -> Result<Self> {
        let g = table.index_of(generator)?;
        Ok(Self::generated_by_index(table, g))
    }

    pub fn generated_by_index(table: &GroupTable, g: usize) -> Self {
        let mut powers = vec![0];
        let mut x = g;
        while x != 0 {
            powers.push(x);
            x = table.compose(g, x);
        }
        Self {
            generator: g,
            powers,
        }
    }

    /// Validates that `elements` is a cyclic subgroup and orders it by powers of a generator.
    pub fn from_elements(table: &GroupTable, elements: &[usize]) -> Result<Self> {
        let mut set = elements.to_vec();
        set.sort_unstable();
        set.dedup();
        for &a in &set {
            for &b in &set {
                if set.binary_search(&table.compose(a, b)).is_err() {
                    return Err(Error::NotSubgroup(format!(
                        "{} ∘ {} leaves the set",
                        table.element(a),
                        table.element(b)
                    )));
                }
            }
        }
        set.iter()
            .find(|&&g| table.element_order(g) == set.len())
            .map(|&g| Self::generated_by_index(table, g))
            .ok_or_else(|| Error::NotSubgroup("subgroup is not cyclic".into()))
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn order(&self) -> usize {
        self.powers.len()
    }

    /// Index of `g^l`.
    pub fn power(&self, l: usize) -> usize {
        self.powers[l % self.powers.len()]
    }

    pub fn elements(&self) -> &[usize] {
        &self.powers
    }
}

/// Left cosets `g_α H` with the unique factorization `g̃ = g_α g^l`.
///
/// `α` runs over `0..k` (the identity coset is `α = 0`) and `l` over `0..m`.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    subgroup: CyclicSubgroup,
    representatives: Vec<usize>,
    coset_of: Vec<(usize, usize)>,
    element_at: Vec<usize>,
}

impl CosetDecomposition {
    /// Representatives are the smallest-index elements of their cosets.
    pub fn new(table: &GroupTable, subgroup: &CyclicSubgroup) -> Self {
        let m = subgroup.order();
        let mut coset_of = vec![(usize::MAX, 0); table.order()];
        let mut representatives = Vec::with_capacity(table.order() / m);
        let mut element_at = Vec::with_capacity(table.order());
        for x in 0..table.order() {
            if coset_of[x].0 != usize::MAX {
                continue;
            }
            let alpha = representatives.len();
            representatives.push(x);
            for l in 0..m {
                let y = table.compose(x, subgroup.power(l));
                coset_of[y] = (alpha, l);
                element_at.push(y);
            }
        }
        Self {
            subgroup: subgroup.clone(),
            representatives,
            coset_of,
            element_at,
        }
    }

    pub fn subgroup(&self) -> &CyclicSubgroup {
        &self.subgroup
    }

    /// Number of cosets `k = |G|/m`.
    pub fn num_cosets(&self) -> usize {
        self.representatives.len()
    }

    /// Subgroup order `m`.
    pub fn coset_size(&self) -> usize {
        self.subgroup.order()
    }

    pub fn num_pairs(&self) -> usize {
        self.element_at.len()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// `(α, l)` with `element = g_α g^l`.
    pub fn factorize(&self, element: usize) -> (usize, usize) {
        self.coset_of[element]
    }

    /// Element index of `g_α g^l`.
    pub fn element_at(&self, alpha: usize, l: usize) -> usize {
        self.element_at[alpha * self.coset_size() + l]
    }

    /// The permutation `(α, l) ↦ (α_g̃, l_g̃)` defined by `g_α g^l g̃ = g_{α_g̃} g^{l_g̃}`.
    pub fn pair_permutation(&self, table: &GroupTable, shift: usize) -> PairPermutation {
        let m = self.coset_size();
        let targets = self
            .element_at
            .iter()
            .map(|&x| {
                let (a, l) = self.coset_of[table.compose(x, shift)];
                a * m + l
            })
            .collect();
        PairPermutation {
            coset_size: m,
            targets,
        }
    }
}

/// A permutation of the `k·m` pairs `(α, l)`, stored by flat pair index `α·m + l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPermutation {
    coset_size: usize,
    targets: Vec<usize>,
}

impl PairPermutation {
    pub fn apply(&self, alpha: usize, l: usize) -> (usize, usize) {
        let t = self.targets[alpha * self.coset_size + l];
        (t / self.coset_size, t % self.coset_size)
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn coset_size(&self) -> usize {
        self.coset_size
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.targets.len()];
        self.targets
            .iter()
            .all(|&t| t < seen.len() && !std::mem::replace(&mut seen[t], true))
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Self) -> Self {
        Self {
            coset_size: self.coset_size,
            targets: first.targets.iter().map(|&t| self.targets[t]).collect(),
        }
    }

    /// Iterates `((α, l), (α_g̃, l_g̃))`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        let m = self.coset_size;
        self.targets
            .iter()
            .enumerate()
            .map(move |(s, &t)| ((s / m, s % m), (t / m, t % m)))
    }
}

impl FromStr for Permutation {
    type Err = Error;
    /// One-line notation, 0-based, e.g. `"[1, 0, 2]"` or `"1 0 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .trim_matches(|c| c == '[' || c == ']')
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad image {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> GroupTable {
        GroupTable::symmetric(3).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(s3().order(), 6);
        assert_eq!(GroupTable::symmetric(4).unwrap().order(), 24);
        assert!(s3().element(0).is_identity());
    }

    #[test]
    fn symmetric_group_size_limits() {
        assert!(matches!(
            GroupTable::symmetric(1),
            Err(Error::GroupSize { .. })
        ));
        assert!(matches!(
            GroupTable::symmetric(9),
            Err(Error::GroupSize { .. })
        ));
    }

    #[test]
    fn composition_convention() {
        let a = Permutation::parse_cycles(3, "(1 2)").unwrap();
        let b = Permutation::parse_cycles(3, "(2 3)").unwrap();
        assert_eq!(
            a.compose(&b),
            Permutation::parse_cycles(3, "(1 2 3)").unwrap()
        );
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles(5, "(1 3 5)(2 4)").unwrap();
        assert_eq!(p.to_string(), "(1 3 5)(2 4)");
        assert_eq!(Permutation::parse_cycles(5, &p.to_string()).unwrap(), p);
        assert_eq!(
            Permutation::parse_cycles(4, "(123)").unwrap().to_string(),
            "(1 2 3)"
        );
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 1)").is_err());
    }

    #[test]
    fn cyclic_subgroups() {
        let g = s3();
        let h = CyclicSubgroup::generated_by(&g, &Permutation::parse_cycles(3, "(1 2)").unwrap())
            .unwrap();
        assert_eq!(h.order(), 2);
        let e = CyclicSubgroup::generated_by(&g, &Permutation::identity(3)).unwrap();
        assert_eq!(e.elements(), &[0]);

        let s4 = GroupTable::symmetric(4).unwrap();
        let c =
            CyclicSubgroup::generated_by(&s4, &Permutation::parse_cycles(4, "(1 2 3)").unwrap())
                .unwrap();
        let names: Vec<String> = c
            .elements()
            .iter()
            .map(|&i| s4.element(i).to_string())
            .collect();
        assert_eq!(names, vec!["()", "(1 2 3)", "(1 3 2)"]);
    }

    #[test]
    fn generator_outside_group() {
        let g = s3();
        assert!(matches!(
            CyclicSubgroup::generated_by(&g, &Permutation::identity(4)),
            Err(Error::NotInGroup(_))
        ));
    }

    #[test]
    fn non_subgroup_rejected() {
        let g = s3();
        let t12 = g.parse_element("(1 2)").unwrap();
        let t13 = g.parse_element("(1 3)").unwrap();
        assert!(matches!(
            CyclicSubgroup::from_elements(&g, &[0, t12, t13]),
            Err(Error::NotSubgroup(_))
        ));
        let ok = CyclicSubgroup::from_elements(&g, &[t12, 0]).unwrap();
        assert_eq!(ok.elements(), &[0, t12]);
    }

    #[test]
    fn coset_counts_and_identity_factorization() {
        let g = s3();
        let h = CyclicSubgroup::generated_by_index(&g, g.parse_element("(1 2)").unwrap());
        let dec = CosetDecomposition::new(&g, &h);
        assert_eq!(dec.num_cosets(), 3);
        assert_eq!(dec.factorize(0), (0, 0));

        let s4 = GroupTable::symmetric(4).unwrap();
        let h4 = CyclicSubgroup::generated_by_index(&s4, s4.parse_element("(1 2 3)").unwrap());
        assert_eq!(CosetDecomposition::new(&s4, &h4).num_cosets(), 8);
    }

    #[test]
    fn factorization_round_trip() {
        let g = GroupTable::symmetric(4).unwrap();
        let h = CyclicSubgroup::generated_by_index(&g, g.parse_element("(1 2 3)").unwrap());
        let dec = CosetDecomposition::new(&g, &h);
        for a in 0..dec.num_cosets() {
            for l in 0..dec.coset_size() {
                let x = dec.element_at(a, l);
                assert_eq!(x, g.compose(dec.representatives()[a], h.power(l)));
                assert_eq!(dec.factorize(x), (a, l));
            }
        }
    }

    #[test]
    fn transposition_shift_moves_within_identity_coset() {
        let g = s3();
        let t12 = g.parse_element("(1 2)").unwrap();
        let dec = CosetDecomposition::new(&g, &CyclicSubgroup::generated_by_index(&g, t12));
        let pp = dec.pair_permutation(&g, t12);
        assert_eq!(pp.apply(0, 0), (0, 1));
        assert!(dec.pair_permutation(&g, 0).iter().all(|(s, t)| s == t));
    }

    #[test]
    fn pair_permutations_compose_like_right_multiplication() {
        let g = s3();
        let dec = CosetDecomposition::new(
            &g,
            &CyclicSubgroup::generated_by_index(&g, g.parse_element("(1 2)").unwrap()),
        );
        for a in 0..g.order() {
            for b in 0..g.order() {
                let pa = dec.pair_permutation(&g, a);
                let pb = dec.pair_permutation(&g, b);
                assert!(pa.is_bijection());
                assert_eq!(pb.after(&pa), dec.pair_permutation(&g, g.compose(a, b)));
            }
        }
    }

    #[test]
    fn conjugacy_classes_of_s4() {
        let g = GroupTable::symmetric(4).unwrap();
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn explicit_subgroup_tables() {
        // A_3 inside S_3, given explicitly
        let elems = ["()", "(1 2 3)", "(1 3 2)"]
            .iter()
            .map(|c| Permutation::parse_cycles(3, c).unwrap())
            .collect();
        let a3 = GroupTable::from_elements(elems).unwrap();
        assert_eq!(a3.order(), 3);
        assert!(!a3.is_symmetric());
        assert_eq!(a3.conjugacy_classes().len(), 3);

        let bad = ["()", "(1 2 3)"]
            .iter()
            .map(|c| Permutation::parse_cycles(3, c).unwrap())
            .collect();
        assert!(matches!(
            GroupTable::from_elements(bad),
            Err(Error::NotGroup(_))
        ));
    }

    #[test]
    fn normalizer_of_transposition_subgroup() {
        let g = s3();
        let h = CyclicSubgroup::generated_by_index(&g, g.parse_element("(1 2)").unwrap());
        assert_eq!(
            g.normalizer(h.elements()),
            h.elements().to_vec().into_iter().collect::<Vec<_>>()
        );
    }

    #[test]
    fn one_line_parsing() {
        let p: Permutation = "[1, 2, 0]".parse().unwrap();
        assert_eq!(p.to_string(), "(1 2 3)");
        assert!("[0, 0, 1]".parse::<Permutation>().is_err());
    }
}

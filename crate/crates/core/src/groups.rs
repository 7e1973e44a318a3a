//! Finite groups as validated multiplication tables, together with subgroup
//! embeddings, right-coset structures and the coset cocycle
//! `α(x, g) = r(x)·g·r(xg)^{-1}`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::{Error, Result, DEFAULT_SEED};

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX: usize = 64;
/// Number of random triples checked above [`EXHAUSTIVE_ASSOCIATIVITY_MAX`].
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 64 * 64 * 64;
/// Largest supported symmetric group degree (order 720).
pub const MAX_SYMMETRIC_DEGREE: usize = 6;
/// Orders up to this bound get exhaustive cocycle-law checks.
pub const EXHAUSTIVE_COCYCLE_MAX: usize = 24;
pub const SAMPLED_COCYCLE_TRIPLES: usize = 10_000;

/// A finite group given by its multiplication table, `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

/// External description of a group.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Table {
        #[serde(default)]
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    Semidirect {
        acting: Box<GroupSpec>,
        normal: Box<GroupSpec>,
        action: Vec<Vec<usize>>,
    },
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    build_group_seeded(spec, DEFAULT_SEED)
}

pub fn build_group_seeded(spec: &GroupSpec, seed: u64) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n),
        GroupSpec::Dihedral { n } => FiniteGroup::dihedral(*n),
        GroupSpec::Symmetric { n } => FiniteGroup::symmetric(*n),
        GroupSpec::Table { labels, table } => FiniteGroup::from_table_seeded(labels.clone(), table.clone(), seed),
        GroupSpec::Product { factors } => {
            let mut iter = factors.iter();
            let first = iter
                .next()
                .ok_or_else(|| Error::InvalidArgument("product needs at least one factor".into()))?;
            let mut acc = build_group_seeded(first, seed)?;
            for f in iter {
                acc = direct_product(&acc, &build_group_seeded(f, seed)?)?;
            }
            Ok(acc)
        }
        GroupSpec::Semidirect { acting, normal, action } => semidirect_product(
            &build_group_seeded(acting, seed)?,
            &build_group_seeded(normal, seed)?,
            action,
        ),
    }
}

fn axiom(axiom: &'static str, detail: String) -> Error {
    Error::GroupAxiom { axiom, detail }
}

impl FiniteGroup {
    /// Validates a multiplication table. Empty `labels` defaults to `"0".."n-1"`.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_table_seeded(labels, table, DEFAULT_SEED)
    }

    pub fn from_table_seeded(labels: Vec<String>, table: Vec<Vec<usize>>, seed: u64) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(axiom("nonempty", "table has no rows".into()));
        }
        let labels = if labels.is_empty() {
            (0..n).map(|i| i.to_string()).collect()
        } else if labels.len() != n {
            return Err(axiom(
                "shape",
                format!("{} labels for a table with {n} rows", labels.len()),
            ));
        } else {
            labels
        };
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(axiom(
                    "shape",
                    format!("row {i} has {} entries, expected {n}", row.len()),
                ));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(axiom("closure", format!("row {i} contains out-of-range element {bad}")));
            }
            flat.extend_from_slice(row);
        }
        Self::validated(n, flat, labels, seed)
    }

    fn validated(n: usize, table: Vec<usize>, labels: Vec<String>, seed: u64) -> Result<Self> {
        // Latin square
        let mut seen = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let v = table[i * n + j];
                if seen[v] == i {
                    return Err(axiom(
                        "latin square",
                        format!("row {i} is not a permutation: element {v} repeats at column {j}"),
                    ));
                }
                seen[v] = i;
            }
        }
        seen.fill(usize::MAX);
        for j in 0..n {
            for i in 0..n {
                let v = table[i * n + j];
                if seen[v] == j {
                    return Err(axiom(
                        "latin square",
                        format!("column {j} is not a permutation: element {v} repeats at row {i}"),
                    ));
                }
                seen[v] = j;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| axiom("identity", "no two-sided identity element".into()))?;
        let mut inverses = vec![0; n];
        for g in 0..n {
            let h = (0..n).find(|&h| table[g * n + h] == identity).expect("latin row");
            if table[h * n + g] != identity {
                return Err(axiom(
                    "inverses",
                    format!("right inverse {h} of {g} is not a left inverse"),
                ));
            }
            inverses[g] = h;
        }
        let group = Self {
            order: n,
            table,
            identity,
            inverses,
            labels,
        };
        group.check_associativity(seed)?;
        Ok(group)
    }

    fn check_associativity(&self, seed: u64) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(axiom(
                    "associativity",
                    format!("(a·b)·c ≠ a·(b·c) for (a, b, c) = ({a}, {b}, {c})"),
                ))
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_MAX {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group order must be positive".into()));
        }
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        Self::validated(n, table, (0..n).map(|i| i.to_string()).collect(), DEFAULT_SEED)
    }

    /// Dihedral group of order `2n`: rotations `r0..r{n-1}` then reflections `s0..s{n-1}`,
    /// where `s_k = s·r^k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dihedral parameter must be positive".into()));
        }
        let order = 2 * n;
        let decode = |x: usize| (x % n, x / n);
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            let (a, f) = decode(x);
            for y in 0..order {
                let (b, g) = decode(y);
                // s^f r^a · s^g r^b = s^{f+g} r^{(-1)^g a + b}
                let rot = if g == 0 { (a + b) % n } else { (n - a + b) % n };
                table.push(((f + g) % 2) * n + rot);
            }
        }
        let labels = (0..n)
            .map(|k| format!("r{k}"))
            .chain((0..n).map(|k| format!("s{k}")))
            .collect();
        Self::validated(order, table, labels, DEFAULT_SEED)
    }

    /// Symmetric group on `n ≤ 6` points, permutations in lexicographic order,
    /// composed right-to-left: `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_SYMMETRIC_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "symmetric group degree must be in 1..={MAX_SYMMETRIC_DEGREE}, got {n}"
            )));
        }
        let perms = lexicographic_permutations(n);
        let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        let mut buf = vec![0; n];
        for s in &perms {
            for t in &perms {
                for i in 0..n {
                    buf[i] = s[t[i]];
                }
                table.push(index[buf.as_slice()]);
            }
        }
        let labels = perms
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        Self::validated(order, table, labels, DEFAULT_SEED)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Sorted members of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&g| seen[g]).collect()
    }

    /// Greedy generating set: scan elements in index order, keep those not yet generated.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for g in 0..self.order {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        gens
    }
}

fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// First pair `(a, b)` with `map(a·b) ≠ map(a)·map(b)`, if any.
pub fn homomorphism_violation(source: &FiniteGroup, target: &FiniteGroup, map: &[usize]) -> Option<(usize, usize)> {
    for a in source.elements() {
        for b in source.elements() {
            if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Searches for an isomorphism `G → H` by assigning the greedy generators of `G`
/// to elements of `H` of matching order and extending multiplicatively.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let gens = g.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            h.elements().filter(|&t| h.element_order(t) == o).collect()
        })
        .collect();

    fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; g.order()];
        map[g.identity()] = h.identity();
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = g.mul(x, s);
                let img = h.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = img;
                    queue.push_back(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        let mut hit = vec![false; h.order()];
        for &m in &map {
            if m == usize::MAX || std::mem::replace(&mut hit[m], true) {
                return None;
            }
        }
        homomorphism_violation(g, h, &map).is_none().then_some(map)
    }

    fn search(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return extend(g, h, gens, images);
        }
        for &t in &candidates[images.len()] {
            images.push(t);
            if let Some(m) = search(g, h, gens, candidates, images) {
                return Some(m);
            }
            images.pop();
        }
        None
    }

    search(g, h, &gens, &candidates, &mut Vec::new())
}

/// `G × H` with element `(g, h)` at index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (ng, nh) = (g.order(), h.order());
    let n = ng * nh;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            table.push(g.mul(x / nh, y / nh) * nh + h.mul(x % nh, y % nh));
        }
    }
    let labels = (0..n)
        .map(|x| format!("({},{})", g.label(x / nh), h.label(x % nh)))
        .collect();
    let product = FiniteGroup::validated(n, table, labels, DEFAULT_SEED)?;
    let to_g: Vec<usize> = (0..n).map(|x| x / nh).collect();
    let to_h: Vec<usize> = (0..n).map(|x| x % nh).collect();
    if homomorphism_violation(&product, g, &to_g).is_some() || homomorphism_violation(&product, h, &to_h).is_some() {
        return Err(Error::Internal("product projection is not a morphism".into()));
    }
    Ok(product)
}

/// `N ⋊ G` as pairs `(g, n)` at index `g·|N| + n` with
/// `(g₁, n₁)·(g₂, n₂) = (g₁g₂, n₁·action[g₁](n₂))`.
pub fn semidirect_product(acting: &FiniteGroup, normal: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroup> {
    let (ng, nn) = (acting.order(), normal.order());
    if action.len() != ng {
        return Err(axiom(
            "action",
            format!("{} permutations given for a group of order {ng}", action.len()),
        ));
    }
    for (g, perm) in action.iter().enumerate() {
        if perm.len() != nn {
            return Err(axiom(
                "action",
                format!("action[{g}] has length {}, expected {nn}", perm.len()),
            ));
        }
        let mut hit = vec![false; nn];
        for &x in perm {
            if x >= nn || std::mem::replace(&mut hit[x], true) {
                return Err(axiom(
                    "action",
                    format!("action[{g}] is not a permutation of the normal subgroup"),
                ));
            }
        }
        if let Some((a, b)) = homomorphism_violation(normal, normal, perm) {
            return Err(axiom(
                "action automorphism",
                format!("action[{g}] is not an automorphism: fails on ({a}, {b})"),
            ));
        }
    }
    for g1 in 0..ng {
        for g2 in 0..ng {
            let composed = &action[acting.mul(g1, g2)];
            if let Some(x) = (0..nn).find(|&x| composed[x] != action[g1][action[g2][x]]) {
                return Err(axiom(
                    "action morphism",
                    format!("action[{g1}·{g2}] ≠ action[{g1}]∘action[{g2}] at element {x}"),
                ));
            }
        }
    }
    let n = ng * nn;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (g1, n1) = (x / nn, x % nn);
        for y in 0..n {
            let (g2, n2) = (y / nn, y % nn);
            table.push(acting.mul(g1, g2) * nn + normal.mul(n1, action[g1][n2]));
        }
    }
    let labels = (0..n)
        .map(|x| format!("({},{})", acting.label(x / nn), normal.label(x % nn)))
        .collect();
    let product = FiniteGroup::validated(n, table, labels, DEFAULT_SEED)?;
    let projection: Vec<usize> = (0..n).map(|x| x / nn).collect();
    if homomorphism_violation(&product, acting, &projection).is_some() {
        return Err(Error::Internal("semidirect projection is not a morphism".into()));
    }
    Ok(product)
}

/// All subgroups of `g` as sorted member lists, ordered by (size, members).
///
/// Starts from the cyclic subgroups and closes the family under joins.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut found: BTreeSet<Vec<usize>> = g.elements().map(|x| g.closure(&[x])).collect();
    loop {
        let current: Vec<Vec<usize>> = found.iter().cloned().collect();
        let mut added = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let mut gens = a.clone();
                gens.extend_from_slice(b);
                if found.insert(g.closure(&gens)) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// A subgroup `N ≤ G`, with `N` also available as a standalone group whose
/// element `i` is the `i`-th smallest parent index in `N`.
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    position: Vec<Option<usize>>,
    as_group: Arc<FiniteGroup>,
}

impl SubgroupEmbedding {
    /// Subgroup generated by `generators` (parent indices).
    pub fn generated(parent: Arc<FiniteGroup>, generators: &[usize]) -> Result<Self> {
        if let Some(&g) = generators.iter().find(|&&g| g >= parent.order()) {
            return Err(Error::InvalidSubgroup(format!(
                "generator {g} is not an element of a group of order {}",
                parent.order()
            )));
        }
        let members = parent.closure(generators);
        Self::from_members(parent, members)
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let members = parent.elements().collect();
        Self::from_members(parent, members).expect("whole group")
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        let e = parent.identity();
        Self::from_members(parent, vec![e]).expect("trivial subgroup")
    }

    pub fn from_members(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let n = parent.order();
        if let Some(&g) = members.iter().find(|&&g| g >= n) {
            return Err(Error::InvalidSubgroup(format!("{g} is not an element of the parent")));
        }
        let mut position = vec![None; n];
        for (i, &g) in members.iter().enumerate() {
            position[g] = Some(i);
        }
        if position[parent.identity()].is_none() {
            return Err(Error::InvalidSubgroup("identity is missing".into()));
        }
        let k = members.len();
        let mut table = Vec::with_capacity(k);
        for &a in &members {
            let mut row = Vec::with_capacity(k);
            for &b in &members {
                let p = position[parent.mul(a, b)].ok_or_else(|| {
                    Error::InvalidSubgroup(format!("not closed: {a}·{b} = {} is outside", parent.mul(a, b)))
                })?;
                row.push(p);
            }
            table.push(row);
        }
        let labels = members.iter().map(|&g| parent.label(g).to_string()).collect();
        let as_group = Arc::new(FiniteGroup::from_table(labels, table)?);
        Ok(Self {
            parent,
            members,
            position,
            as_group,
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn as_group(&self) -> &Arc<FiniteGroup> {
        &self.as_group
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.position[g].is_some()
    }

    /// Parent index of subgroup element `i`.
    pub fn to_parent(&self, i: usize) -> usize {
        self.members[i]
    }

    /// Subgroup index of parent element `g`, if `g ∈ N`.
    pub fn to_subgroup(&self, g: usize) -> Option<usize> {
        self.position[g]
    }
}

/// Right cosets `N·g` of a subgroup with representatives `D`.
///
/// `D[0]` is the identity; every other representative is the smallest parent
/// index in its coset, and cosets are numbered by their representative.
#[derive(Debug, Clone)]
pub struct CosetStructure {
    embedding: SubgroupEmbedding,
    representatives: Vec<usize>,
    coset_of: Vec<usize>,
}

pub fn coset_structure(embedding: &SubgroupEmbedding) -> Result<CosetStructure> {
    let g = embedding.parent();
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let starts = std::iter::once(g.identity()).chain((0..n).filter(|&x| x != g.identity()));
    for start in starts {
        if coset_of[start] != usize::MAX {
            continue;
        }
        let idx = representatives.len();
        representatives.push(start);
        for &m in embedding.members() {
            let y = g.mul(m, start);
            if coset_of[y] != usize::MAX {
                return Err(Error::Internal(format!("cosets overlap at element {y}")));
            }
            coset_of[y] = idx;
        }
    }
    let k = representatives.len();
    if k * embedding.order() != n {
        return Err(Error::Internal(format!(
            "index {k} times |N| = {} does not equal |G| = {n}",
            embedding.order()
        )));
    }
    Ok(CosetStructure {
        embedding: embedding.clone(),
        representatives,
        coset_of,
    })
}

impl CosetStructure {
    pub fn embedding(&self) -> &SubgroupEmbedding {
        &self.embedding
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        self.embedding.parent()
    }

    pub fn index(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// `r_map`: the coset number of `g`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// Right action `x·g` on coset numbers.
    pub fn act(&self, x: usize, g: usize) -> usize {
        self.coset_of[self.parent().mul(self.representatives[x], g)]
    }

    /// Members of each coset in increasing order.
    pub fn cosets(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.index()];
        for (g, &x) in self.coset_of.iter().enumerate() {
            out[x].push(g);
        }
        out
    }
}

/// A cocycle `α: G/N × G → N`, stored as subgroup indices.
#[derive(Debug, Clone)]
pub struct Cocycle {
    structure: CosetStructure,
    alpha: Vec<usize>,
    canonical: bool,
}

/// `α(x, g) = r(x)·g·r(xg)^{-1}`.
pub fn cocycle_table(structure: &CosetStructure) -> Result<Cocycle> {
    let g = structure.parent();
    let emb = structure.embedding();
    let n = g.order();
    let mut alpha = Vec::with_capacity(structure.index() * n);
    for x in 0..structure.index() {
        let rx = structure.representatives()[x];
        for h in 0..n {
            let rxh = structure.representatives()[structure.act(x, h)];
            let value = g.mul(g.mul(rx, h), g.inv(rxh));
            let idx = emb
                .to_subgroup(value)
                .ok_or_else(|| Error::Internal(format!("α({x}, {h}) = {value} lies outside the subgroup")))?;
            alpha.push(idx);
        }
    }
    Ok(Cocycle {
        structure: structure.clone(),
        alpha,
        canonical: true,
    })
}

/// Counts of violated cocycle laws.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CocycleLawReport {
    /// `α(N, n) = n` for `n ∈ N`.
    pub restriction_identity: usize,
    /// `α(x, g₁g₂) = α(x, g₁)·α(x·g₁, g₂)`.
    pub cocycle_identity: usize,
    /// `α(N, n·g) = n·α(N, g)`.
    pub left_equivariance: usize,
    pub checks: usize,
    pub exhaustive: bool,
    pub first_violation: Option<String>,
}

impl CocycleLawReport {
    pub fn violations(&self) -> usize {
        self.restriction_identity + self.cocycle_identity + self.left_equivariance
    }
}

impl Cocycle {
    /// Validates a user-supplied table (`alpha[x][g]` as subgroup indices) against the
    /// cocycle identity and bijectivity of `α(N, ·)` on `N`.
    pub fn from_table(structure: &CosetStructure, alpha: Vec<Vec<usize>>) -> Result<Self> {
        let k = structure.index();
        let n = structure.parent().order();
        let sub = structure.embedding().order();
        if alpha.len() != k || alpha.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidCocycle(format!("table must be {k} × {n}")));
        }
        if alpha.iter().flatten().any(|&a| a >= sub) {
            return Err(Error::InvalidCocycle("entry outside the subgroup".into()));
        }
        let cocycle = Self {
            structure: structure.clone(),
            alpha: alpha.concat(),
            canonical: false,
        };
        let ng = cocycle.subgroup();
        for x in 0..k {
            for g1 in 0..n {
                for g2 in 0..n {
                    let lhs = cocycle.alpha(x, cocycle.parent().mul(g1, g2));
                    let rhs = ng.mul(cocycle.alpha(x, g1), cocycle.alpha(structure.act(x, g1), g2));
                    if lhs != rhs {
                        return Err(Error::InvalidCocycle(format!(
                            "cocycle identity fails at (x, g1, g2) = ({x}, {g1}, {g2})"
                        )));
                    }
                }
            }
        }
        if !cocycle.restriction_is_bijective() {
            return Err(Error::InvalidCocycle("α(N, ·) restricted to N is not bijective".into()));
        }
        Ok(cocycle)
    }

    pub fn structure(&self) -> &CosetStructure {
        &self.structure
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        self.structure.parent()
    }

    pub fn subgroup(&self) -> &Arc<FiniteGroup> {
        self.structure.embedding().as_group()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// `α(x, g)` as a subgroup index.
    #[inline]
    pub fn alpha(&self, x: usize, g: usize) -> usize {
        self.alpha[x * self.parent().order() + g]
    }

    /// `α(x, g)` as a parent index.
    pub fn alpha_parent(&self, x: usize, g: usize) -> usize {
        self.structure.embedding().to_parent(self.alpha(x, g))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let n = self.parent().order();
        self.alpha.chunks(n).map(|r| r.to_vec()).collect()
    }

    /// Whether `n ↦ α(N, n)` permutes `N`.
    pub fn restriction_is_bijective(&self) -> bool {
        let emb = self.structure.embedding();
        let mut hit = vec![false; emb.order()];
        emb.members()
            .iter()
            .all(|&m| !std::mem::replace(&mut hit[self.alpha(0, m)], true))
    }

    /// Checks the three coset-cocycle laws. The cocycle identity is exhaustive for
    /// `|G| ≤ 24` and sampled on 10⁴ seeded triples above.
    pub fn check_laws(&self, seed: u64) -> CocycleLawReport {
        let g = self.parent();
        let ng = self.subgroup();
        let emb = self.structure.embedding();
        let k = self.structure.index();
        let n = g.order();
        let mut report = CocycleLawReport {
            exhaustive: n <= EXHAUSTIVE_COCYCLE_MAX,
            ..Default::default()
        };
        let note = |report: &mut CocycleLawReport, msg: String| {
            if report.first_violation.is_none() {
                report.first_violation = Some(msg);
            }
        };
        for (i, &m) in emb.members().iter().enumerate() {
            report.checks += 1;
            if self.alpha(0, m) != i {
                report.restriction_identity += 1;
                note(&mut report, format!("α(N, {m}) ≠ {m}"));
            }
        }
        let identity_at = |report: &mut CocycleLawReport, x: usize, g1: usize, g2: usize| {
            report.checks += 1;
            let lhs = self.alpha(x, g.mul(g1, g2));
            let rhs = ng.mul(self.alpha(x, g1), self.alpha(self.structure.act(x, g1), g2));
            if lhs != rhs {
                report.cocycle_identity += 1;
                note(report, format!("α({x}, {g1}·{g2}) ≠ α({x}, {g1})·α({x}·{g1}, {g2})"));
            }
        };
        if report.exhaustive {
            for x in 0..k {
                for g1 in 0..n {
                    for g2 in 0..n {
                        identity_at(&mut report, x, g1, g2);
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_COCYCLE_TRIPLES {
                let (x, g1, g2) = (rng.random_range(0..k), rng.random_range(0..n), rng.random_range(0..n));
                identity_at(&mut report, x, g1, g2);
            }
        }
        for (i, &m) in emb.members().iter().enumerate() {
            for h in 0..n {
                report.checks += 1;
                if self.alpha(0, g.mul(m, h)) != ng.mul(i, self.alpha(0, h)) {
                    report.left_equivariance += 1;
                    note(&mut report, format!("α(N, {m}·{h}) ≠ {m}·α(N, {h})"));
                }
            }
        }
        report
    }
}

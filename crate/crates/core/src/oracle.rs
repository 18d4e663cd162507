//! Brute-force ground truth: finite group actions, orbit partitions, the
//! isomorphism action on affine triples, Cayley-table isomorphism and
//! congruence search.
//!
//! Nothing here uses the case analysis of the structured enumerators.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::affine::{
    AffineForm, Automorphism, Element, GroupDescriptor, QuasigroupTable, Subgroup,
};
use crate::error::{Error, Result};

/// Resource limits for exhaustive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_points: usize,
    pub max_group: usize,
    /// Bound on `|group| · |points|` for fixed-point counting.
    pub max_work: usize,
    /// Largest group order accepted by [`classify_triples`].
    pub max_group_order: usize,
    /// Largest table order accepted by [`table_isomorphic`].
    pub max_table_order: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_points: 10_000_000,
            max_group: 10_000_000,
            max_work: 100_000_000,
            max_group_order: 25,
            max_table_order: 9,
        }
    }
}

fn bound(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::BoundExceeded { what, size, limit })
    } else {
        Ok(())
    }
}

type Compose<'a, G> = Box<dyn Fn(&G, &G) -> G + Sync + 'a>;
type Act<'a, G, X> = Box<dyn Fn(&G, &X) -> X + Sync + 'a>;

/// A finite group acting on a finite point set.
pub struct ActionSpec<'a, G, X> {
    group: Vec<G>,
    identity: G,
    compose: Compose<'a, G>,
    points: Vec<X>,
    act: Act<'a, G, X>,
}

impl<'a, G: Clone, X: Clone + Ord> ActionSpec<'a, G, X> {
    /// `compose(g, h)` is `g ∘ h` (`h` acts first). Points are sorted.
    pub fn new(
        group: Vec<G>,
        identity: G,
        compose: impl Fn(&G, &G) -> G + Sync + 'a,
        mut points: Vec<X>,
        act: impl Fn(&G, &X) -> X + Sync + 'a,
    ) -> Self {
        points.sort();
        points.dedup();
        ActionSpec {
            group,
            identity,
            compose: Box::new(compose),
            points,
            act: Box::new(act),
        }
    }

    pub fn group(&self) -> &[G] {
        &self.group
    }

    pub fn points(&self) -> &[X] {
        &self.points
    }

    pub fn act(&self, g: &G, x: &X) -> X {
        (self.act)(g, x)
    }

    pub fn compose(&self, g: &G, h: &G) -> G {
        (self.compose)(g, h)
    }

    pub fn identity(&self) -> &G {
        &self.identity
    }
}

impl<G: Clone, X: Clone + Ord + PartialEq> ActionSpec<'_, G, X> {
    /// Identity acts trivially everywhere; `(gh)x = g(hx)` on `samples` random triples.
    pub fn check_axioms(&self, samples: usize, seed: u64) -> bool {
        if self.group.is_empty() || self.points.is_empty() {
            return true;
        }
        if !self
            .points
            .iter()
            .all(|x| self.act(&self.identity, x) == *x)
        {
            return false;
        }
        let mut rng = StdRng::seed_from_u64(seed);
        (0..samples).all(|_| {
            let g = &self.group[rng.gen_range(0..self.group.len())];
            let h = &self.group[rng.gen_range(0..self.group.len())];
            let x = &self.points[rng.gen_range(0..self.points.len())];
            self.act(&self.compose(g, h), x) == self.act(g, &self.act(h, x))
        })
    }
}

/// Orbits of an action, each sorted, listed by their least point.
#[derive(Clone, Debug)]
pub struct OrbitPartition<X: Hash + Eq> {
    pub orbits: Vec<Vec<X>>,
    pub stabilizer_orders: Vec<usize>,
    pub group_order: usize,
    index: HashMap<X, usize>,
}

impl<X: Clone + Hash + Eq> OrbitPartition<X> {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn representatives(&self) -> Vec<X> {
        self.orbits.iter().map(|o| o[0].clone()).collect()
    }

    pub fn orbit_of(&self, x: &X) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    /// `|orbit| · |stabilizer| = |group|` for every orbit.
    pub fn satisfies_orbit_stabilizer(&self) -> bool {
        self.orbits
            .iter()
            .zip(&self.stabilizer_orders)
            .all(|(o, s)| o.len() * s == self.group_order)
    }
}

/// Exact orbit partition. The representative of each orbit is its least point.
pub fn orbits<G, X>(spec: &ActionSpec<'_, G, X>, budget: &Budget) -> Result<OrbitPartition<X>>
where
    G: Clone,
    X: Clone + Ord + Hash,
{
    bound("point set", spec.points.len(), budget.max_points)?;
    bound("acting group", spec.group.len(), budget.max_group)?;
    let members: HashSet<&X> = spec.points.iter().collect();
    let mut index: HashMap<X, usize> = HashMap::with_capacity(spec.points.len());
    let mut orbit_list = Vec::new();
    let mut stabilizer_orders = Vec::new();
    for x in &spec.points {
        if index.contains_key(x) {
            continue;
        }
        let mut stab = 0;
        let mut orbit: Vec<X> = Vec::new();
        for g in &spec.group {
            let y = spec.act(g, x);
            if y == *x {
                stab += 1;
            }
            orbit.push(y);
        }
        orbit.sort();
        orbit.dedup();
        if orbit.iter().any(|y| !members.contains(y)) {
            return Err(Error::Precondition("action leaves the point set".into()));
        }
        let id = orbit_list.len();
        for y in &orbit {
            if index.insert(y.clone(), id).is_some() {
                return Err(Error::Precondition(
                    "orbits overlap; not a group action".into(),
                ));
            }
        }
        orbit_list.push(orbit);
        stabilizer_orders.push(stab);
    }
    Ok(OrbitPartition {
        orbits: orbit_list,
        stabilizer_orders,
        group_order: spec.group.len(),
        index,
    })
}

/// Number of orbits as the average number of fixed points.
pub fn burnside_count<G, X>(spec: &ActionSpec<'_, G, X>, budget: &Budget) -> Result<usize>
where
    G: Clone,
    X: Clone + Ord,
{
    bound(
        "fixed-point tally",
        spec.group.len().saturating_mul(spec.points.len()),
        budget.max_work,
    )?;
    let total: usize = spec
        .group
        .iter()
        .map(|g| spec.points.iter().filter(|x| spec.act(g, x) == **x).count())
        .sum();
    if spec.group.is_empty() || !total.is_multiple_of(spec.group.len()) {
        return Err(Error::Precondition(
            "fixed-point total not divisible by the group order".into(),
        ));
    }
    Ok(total / spec.group.len())
}

/// Index tables for `G` and `Aut(G)`.
pub struct GroupTables {
    pub group: GroupDescriptor,
    pub automorphisms: Vec<Automorphism>,
    aut_index: HashMap<Automorphism, u32>,
    compose: Vec<u32>,
    inverse: Vec<u32>,
    square: Vec<u32>,
    apply: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
    n: usize,
}

impl GroupTables {
    pub fn new(group: GroupDescriptor) -> Self {
        let automorphisms = group.automorphisms();
        let a = automorphisms.len();
        let n = group.order();
        let aut_index: HashMap<Automorphism, u32> = automorphisms
            .iter()
            .enumerate()
            .map(|(i, x)| (*x, i as u32))
            .collect();
        let mut compose = vec![0u32; a * a];
        for (i, x) in automorphisms.iter().enumerate() {
            for (j, y) in automorphisms.iter().enumerate() {
                compose[i * a + j] = aut_index[&x.compose(y)];
            }
        }
        let inverse = automorphisms
            .iter()
            .map(|x| aut_index[&x.inverse()])
            .collect();
        let square = (0..a).map(|i| compose[i * a + i]).collect();
        let elems: Vec<Element> = group.elements().collect();
        let apply = automorphisms
            .iter()
            .flat_map(|x| elems.iter().map(move |e| x.apply(e).index() as u32))
            .collect();
        let add = elems
            .iter()
            .flat_map(|x| elems.iter().map(move |y| x.add(y).index() as u32))
            .collect();
        let neg = elems.iter().map(|x| x.neg().index() as u32).collect();
        GroupTables {
            group,
            automorphisms,
            aut_index,
            compose,
            inverse,
            square,
            apply,
            add,
            neg,
            n,
        }
    }

    pub fn aut_count(&self) -> usize {
        self.automorphisms.len()
    }

    pub fn index_of(&self, a: &Automorphism) -> Option<u32> {
        self.aut_index.get(a).copied()
    }

    #[inline]
    pub fn compose(&self, x: u32, y: u32) -> u32 {
        self.compose[x as usize * self.automorphisms.len() + y as usize]
    }

    #[inline]
    pub fn inverse(&self, x: u32) -> u32 {
        self.inverse[x as usize]
    }

    #[inline]
    pub fn square(&self, x: u32) -> u32 {
        self.square[x as usize]
    }

    #[inline]
    pub fn conjugate(&self, by: u32, x: u32) -> u32 {
        self.compose(by, self.compose(x, self.inverse(by)))
    }

    #[inline]
    pub fn apply(&self, x: u32, e: u32) -> u32 {
        self.apply[x as usize * self.n + e as usize]
    }

    #[inline]
    pub fn add(&self, e: u32, f: u32) -> u32 {
        self.add[e as usize * self.n + f as usize]
    }

    #[inline]
    pub fn neg(&self, e: u32) -> u32 {
        self.neg[e as usize]
    }
}

/// `(φ, ψ, c)` as (automorphism index, automorphism index, element index).
pub type TripleIndex = (u32, u32, u32);

/// An affine map `x ↦ α(x) + u`, as (automorphism index, element index).
pub type AffineMap = (u32, u32);

/// The action of the affine group of `G` on triples by transport of structure:
/// `(α, u) · (φ, ψ, c) = (αφα⁻¹, αψα⁻¹, α(c) + (1 − φ' − ψ')(u))`.
///
/// Two triples lie in one orbit iff their quasigroups are isomorphic.
pub fn triple_action(tables: &GroupTables) -> ActionSpec<'_, AffineMap, TripleIndex> {
    let a = tables.aut_count() as u32;
    let n = tables.group.order() as u32;
    let group: Vec<AffineMap> = (0..a).flat_map(|x| (0..n).map(move |u| (x, u))).collect();
    let mut points = Vec::new();
    for phi in 0..a {
        for psi in 0..a {
            if tables.square(phi) == tables.square(psi) {
                points.extend((0..n).map(|c| (phi, psi, c)));
            }
        }
    }
    let identity = (
        tables
            .index_of(&tables.group.identity_automorphism())
            .expect("identity"),
        0,
    );
    ActionSpec::new(
        group,
        identity,
        move |&(x, u): &AffineMap, &(y, v): &AffineMap| {
            (tables.compose(x, y), tables.add(tables.apply(x, v), u))
        },
        points,
        move |&(alpha, u): &AffineMap, &(phi, psi, c): &TripleIndex| {
            let phi2 = tables.conjugate(alpha, phi);
            let psi2 = tables.conjugate(alpha, psi);
            let shift = tables.add(
                u,
                tables.neg(tables.add(tables.apply(phi2, u), tables.apply(psi2, u))),
            );
            (phi2, psi2, tables.add(tables.apply(alpha, c), shift))
        },
    )
}

/// Isomorphism classes of paramedial quasigroups affine over one group.
pub struct TripleClassification {
    pub tables: GroupTables,
    pub partition: OrbitPartition<TripleIndex>,
}

impl TripleClassification {
    pub fn count(&self) -> usize {
        self.partition.count()
    }

    fn form(&self, (phi, psi, c): TripleIndex) -> AffineForm {
        let t = &self.tables;
        AffineForm::new(
            t.group,
            t.automorphisms[phi as usize],
            t.automorphisms[psi as usize],
            t.group.element(c as usize),
        )
        .expect("points of the triple action satisfy phi^2 = psi^2")
    }

    /// The lexicographically least triple of each class, in class order.
    pub fn representatives(&self) -> Vec<AffineForm> {
        self.partition
            .representatives()
            .into_iter()
            .map(|x| self.form(x))
            .collect()
    }

    pub fn triple_of(&self, f: &AffineForm) -> Option<TripleIndex> {
        if f.group() != self.tables.group {
            return None;
        }
        Some((
            self.tables.index_of(&f.phi())?,
            self.tables.index_of(&f.psi())?,
            f.c().index() as u32,
        ))
    }

    pub fn class_of(&self, f: &AffineForm) -> Option<usize> {
        self.partition.orbit_of(&self.triple_of(f)?)
    }

    /// All valid triples over the group.
    pub fn all_forms(&self) -> impl Iterator<Item = AffineForm> + '_ {
        self.partition
            .orbits
            .iter()
            .flatten()
            .map(|x| self.form(*x))
    }

    /// Whether `forms` contains exactly one triple from every class.
    pub fn hits_each_class_once(&self, forms: &[AffineForm]) -> bool {
        let mut hit = vec![0usize; self.count()];
        for f in forms {
            match self.class_of(f) {
                Some(id) => hit[id] += 1,
                None => return false,
            }
        }
        hit.iter().all(|&h| h == 1)
    }
}

/// Exhaustive isomorphism classification of all triples `(φ, ψ, c)` over `G`.
pub fn classify_triples(group: GroupDescriptor, budget: &Budget) -> Result<TripleClassification> {
    bound("group order", group.order(), budget.max_group_order)?;
    let tables = GroupTables::new(group);
    let partition = {
        let spec = triple_action(&tables);
        orbits(&spec, budget)?
    };
    Ok(TripleClassification { tables, partition })
}

/// Diagonal-profile invariant of an element: idempotency and class sizes under `x ~ y ⇔ x*x = y*y`.
fn element_profile(t: &QuasigroupTable) -> Vec<(bool, usize, usize)> {
    let n = t.order();
    let squares: Vec<usize> = (0..n).map(|x| t.get(x, x)).collect();
    (0..n)
        .map(|x| {
            let same = squares.iter().filter(|&&s| s == squares[x]).count();
            let roots = squares.iter().filter(|&&s| s == x).count();
            (squares[x] == x, same, roots)
        })
        .collect()
}

/// Whether a bijection `σ` with `σ(x*y) = σ(x)∘σ(y)` exists. Backtracking with
/// forced propagation and diagonal-profile pruning.
pub fn table_isomorphic(
    t1: &QuasigroupTable,
    t2: &QuasigroupTable,
    budget: &Budget,
) -> Result<bool> {
    let n = t1.order();
    bound("table order", n.max(t2.order()), budget.max_table_order)?;
    if n != t2.order() {
        return Ok(false);
    }
    let p1 = element_profile(t1);
    let p2 = element_profile(t2);
    let mut s1 = p1.clone();
    let mut s2 = p2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(false);
    }
    let mut sigma = vec![usize::MAX; n];
    let mut inv = vec![usize::MAX; n];
    Ok(iso_search(t1, t2, &p1, &p2, &mut sigma, &mut inv))
}

fn propagate(
    t1: &QuasigroupTable,
    t2: &QuasigroupTable,
    sigma: &mut [usize],
    inv: &mut [usize],
) -> bool {
    let n = t1.order();
    loop {
        let mut changed = false;
        for a in 0..n {
            if sigma[a] == usize::MAX {
                continue;
            }
            for b in 0..n {
                if sigma[b] == usize::MAX {
                    continue;
                }
                let z = t1.get(a, b);
                let w = t2.get(sigma[a], sigma[b]);
                if sigma[z] == usize::MAX {
                    if inv[w] != usize::MAX {
                        return false;
                    }
                    sigma[z] = w;
                    inv[w] = z;
                    changed = true;
                } else if sigma[z] != w {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn iso_search(
    t1: &QuasigroupTable,
    t2: &QuasigroupTable,
    p1: &[(bool, usize, usize)],
    p2: &[(bool, usize, usize)],
    sigma: &mut [usize],
    inv: &mut [usize],
) -> bool {
    let Some(x) = sigma.iter().position(|&s| s == usize::MAX) else {
        return true;
    };
    for y in 0..t2.order() {
        if inv[y] != usize::MAX || p1[x] != p2[y] {
            continue;
        }
        let mut s = sigma.to_vec();
        let mut i = inv.to_vec();
        s[x] = y;
        i[y] = x;
        if propagate(t1, t2, &mut s, &mut i) && iso_search(t1, t2, p1, p2, &mut s, &mut i) {
            sigma.copy_from_slice(&s);
            inv.copy_from_slice(&i);
            return true;
        }
    }
    false
}

/// Class labels of the congruence generated by `(a, b)`.
pub fn principal_congruence(t: &QuasigroupTable, a: usize, b: usize) -> Vec<usize> {
    let n = t.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut work = vec![(a, b)];
    while let Some((x, y)) = work.pop() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            continue;
        }
        parent[rx] = ry;
        for z in 0..n {
            work.push((t.get(x, z), t.get(y, z)));
            work.push((t.get(z, x), t.get(z, y)));
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

/// Whether the table has a congruence other than equality and the total relation.
pub fn has_proper_congruence(t: &QuasigroupTable) -> bool {
    let n = t.order();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            let mut labels = principal_congruence(t, a, b);
            labels.sort_unstable();
            labels.dedup();
            labels.len() > 1
        })
    })
}

/// Proper nontrivial subgroups of `G` whose coset partition is a congruence of
/// the materialized table. Only cyclic subgroups are enumerated, which covers
/// every proper subgroup of `Z_{p^k}` and `Z_p^2`.
pub fn congruence_subgroups(f: &AffineForm) -> Vec<Subgroup> {
    let group = f.group();
    let n = group.order();
    let table = f.materialize();
    let elems: Vec<Element> = group.elements().collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut found = Vec::new();
    for g in elems.iter().skip(1) {
        let sub = Subgroup::generated_by(*g);
        if sub.elements.len() == n || !seen.insert(sub.elements.clone()) {
            continue;
        }
        let member: HashSet<usize> = sub.elements.iter().copied().collect();
        let diff = |x: usize, y: usize| elems[x].sub(&elems[y]).index();
        let compatible = (0..n).all(|x| {
            sub.elements.iter().all(|&h| {
                let xh = elems[x].add(&elems[h]).index();
                (0..n).all(|z| {
                    member.contains(&diff(table.get(x, z), table.get(xh, z)))
                        && member.contains(&diff(table.get(z, x), table.get(z, xh)))
                })
            })
        });
        if compatible {
            found.push(sub);
        }
    }
    found.sort_by(|a, b| a.elements.cmp(&b.elements));
    found
}

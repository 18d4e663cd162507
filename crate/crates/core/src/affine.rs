//! Affine forms `x * y = φ(x) + ψ(y) + c`, their Cayley tables, and simplicity.
//!
//! Element encoding is fixed: `Z_{p^k}` maps to `0..n` by value, `Z_p^2` maps
//! `(x, y)` to `x·p + y`. Table equality and the text format depend on it.

use std::fmt;

use crate::error::{Error, Result};
use crate::modring::{gl2, unit_group, Mat2, Modulus, Residue, Unit, Vec2};

/// The abelian group an affine form lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupDescriptor {
    /// `Z_{p^k}`.
    Cyclic(Modulus),
    /// `Z_p × Z_p`; the modulus is always `(p, 1)`.
    ElemAbelian2(Modulus),
}

impl GroupDescriptor {
    pub fn cyclic(p: u64, k: u32) -> Result<Self> {
        Ok(GroupDescriptor::Cyclic(Modulus::new(p, k)?))
    }

    pub fn elem2(p: u64) -> Result<Self> {
        let m = Modulus::prime(p)?;
        if m.n() * m.n() >= crate::modring::MAX_MODULUS {
            return Err(Error::InvalidModulus {
                p,
                k: 2,
                reason: "p^2 exceeds 2^31",
            });
        }
        Ok(GroupDescriptor::ElemAbelian2(m))
    }

    pub fn p(&self) -> u64 {
        self.modulus().p()
    }

    pub fn modulus(&self) -> Modulus {
        match self {
            GroupDescriptor::Cyclic(m) | GroupDescriptor::ElemAbelian2(m) => *m,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            GroupDescriptor::Cyclic(m) => m.n() as usize,
            GroupDescriptor::ElemAbelian2(m) => (m.n() * m.n()) as usize,
        }
    }

    pub fn zero(&self) -> Element {
        self.element(0)
    }

    pub fn element(&self, index: usize) -> Element {
        match self {
            GroupDescriptor::Cyclic(m) => Element::Cyclic(m.residue(index as i64)),
            GroupDescriptor::ElemAbelian2(m) => Element::Plane(Vec2::from_index(index, *m)),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// `Aut(G)` in ascending order.
    pub fn automorphisms(&self) -> Vec<Automorphism> {
        match self {
            GroupDescriptor::Cyclic(m) => unit_group(*m)
                .into_iter()
                .map(Automorphism::Scalar)
                .collect(),
            GroupDescriptor::ElemAbelian2(m) => {
                gl2(*m).into_iter().map(Automorphism::Matrix).collect()
            }
        }
    }

    pub fn identity_automorphism(&self) -> Automorphism {
        match self {
            GroupDescriptor::Cyclic(m) => {
                Automorphism::Scalar(Unit::new(m.one()).expect("1 is a unit"))
            }
            GroupDescriptor::ElemAbelian2(m) => Automorphism::Matrix(Mat2::identity(*m)),
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (GroupDescriptor::Cyclic(m), Element::Cyclic(r)) => r.modulus() == *m,
            (GroupDescriptor::ElemAbelian2(m), Element::Plane(v)) => v.modulus() == *m,
            _ => false,
        }
    }

    pub fn acts_on(&self, a: &Automorphism) -> bool {
        match (self, a) {
            (GroupDescriptor::Cyclic(m), Automorphism::Scalar(u)) => u.modulus() == *m,
            (GroupDescriptor::ElemAbelian2(m), Automorphism::Matrix(x)) => {
                x.modulus() == *m && x.is_invertible()
            }
            _ => false,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic(m) => write!(f, "Z_{}", m.n()),
            GroupDescriptor::ElemAbelian2(m) => write!(f, "Z_{}^2", m.p()),
        }
    }
}

/// An element of `Z_{p^k}` or `Z_p^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Cyclic(Residue),
    Plane(Vec2),
}

impl Element {
    /// Position in the natural encoding of the group.
    pub fn index(&self) -> usize {
        match self {
            Element::Cyclic(r) => r.value() as usize,
            Element::Plane(v) => v.index(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.index() == 0
    }

    pub fn add(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Cyclic(a), Element::Cyclic(b)) => Element::Cyclic(*a + *b),
            (Element::Plane(a), Element::Plane(b)) => Element::Plane(*a + *b),
            _ => panic!("adding elements of different groups"),
        }
    }

    pub fn neg(&self) -> Element {
        match self {
            Element::Cyclic(a) => Element::Cyclic(-*a),
            Element::Plane(a) => Element::Plane(-*a),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Cyclic(r) => write!(f, "{r}"),
            Element::Plane(v) => write!(f, "{v}"),
        }
    }
}

/// An automorphism of `Z_{p^k}` (a unit) or of `Z_p^2` (an invertible matrix).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Automorphism {
    Scalar(Unit),
    Matrix(Mat2),
}

impl Automorphism {
    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        match (self, other) {
            (Automorphism::Scalar(a), Automorphism::Scalar(b)) => Automorphism::Scalar(*a * *b),
            (Automorphism::Matrix(a), Automorphism::Matrix(b)) => Automorphism::Matrix(*a * *b),
            _ => panic!("composing automorphisms of different groups"),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        match self {
            Automorphism::Scalar(a) => Automorphism::Scalar(a.inverse()),
            Automorphism::Matrix(a) => {
                Automorphism::Matrix(a.inv().expect("automorphisms are invertible"))
            }
        }
    }

    pub fn square(&self) -> Automorphism {
        self.compose(self)
    }

    pub fn neg(&self) -> Automorphism {
        match self {
            Automorphism::Scalar(a) => Automorphism::Scalar(-*a),
            Automorphism::Matrix(a) => Automorphism::Matrix(-*a),
        }
    }

    pub fn apply(&self, e: &Element) -> Element {
        match (self, e) {
            (Automorphism::Scalar(a), Element::Cyclic(x)) => Element::Cyclic(a.residue() * *x),
            (Automorphism::Matrix(a), Element::Plane(x)) => Element::Plane(a.apply(*x)),
            _ => panic!("applying an automorphism to an element of another group"),
        }
    }

    /// Rows of the matrix; a unit is written as the 1×1 matrix `[[u]]`.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        match self {
            Automorphism::Scalar(u) => vec![vec![u.value()]],
            Automorphism::Matrix(m) => m.rows().iter().map(|r| r.to_vec()).collect(),
        }
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Automorphism::Scalar(u) => write!(f, "{u}"),
            Automorphism::Matrix(m) => write!(f, "{m}"),
        }
    }
}

/// `(G, φ, ψ, c)` with `φ² = ψ²`, presenting `x * y = φ(x) + ψ(y) + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm {
    group: GroupDescriptor,
    phi: Automorphism,
    psi: Automorphism,
    c: Element,
}

impl AffineForm {
    pub fn new(
        group: GroupDescriptor,
        phi: Automorphism,
        psi: Automorphism,
        c: Element,
    ) -> Result<Self> {
        for (name, a) in [("phi", &phi), ("psi", &psi)] {
            if !group.acts_on(a) {
                return Err(Error::KindMismatch(format!(
                    "{name} = {a} is not an automorphism of {group}"
                )));
            }
        }
        if !group.contains(&c) {
            return Err(Error::KindMismatch(format!(
                "c = {c} is not an element of {group}"
            )));
        }
        if phi.square() != psi.square() {
            return Err(Error::NotParamedial);
        }
        Ok(AffineForm { group, phi, psi, c })
    }

    pub fn cyclic(m: Modulus, phi: u64, psi: u64, c: u64) -> Result<Self> {
        let unit = |v: u64| Unit::new(m.residue(v as i64)).map(Automorphism::Scalar);
        Self::new(
            GroupDescriptor::Cyclic(m),
            unit(phi)?,
            unit(psi)?,
            Element::Cyclic(m.residue(c as i64)),
        )
    }

    pub fn plane(phi: Mat2, psi: Mat2, c: Vec2) -> Result<Self> {
        Self::new(
            GroupDescriptor::ElemAbelian2(phi.modulus()),
            Automorphism::Matrix(phi),
            Automorphism::Matrix(psi),
            Element::Plane(c),
        )
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn phi(&self) -> Automorphism {
        self.phi
    }

    pub fn psi(&self) -> Automorphism {
        self.psi
    }

    pub fn c(&self) -> Element {
        self.c
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        self.phi.apply(x).add(&self.psi.apply(y)).add(&self.c)
    }

    /// The Cayley table in the natural element encoding.
    pub fn materialize(&self) -> QuasigroupTable {
        let elems: Vec<Element> = self.group.elements().collect();
        let n = elems.len();
        let left: Vec<Element> = elems
            .iter()
            .map(|x| self.phi.apply(x).add(&self.c))
            .collect();
        let right: Vec<Element> = elems.iter().map(|y| self.psi.apply(y)).collect();
        let mut cells = Vec::with_capacity(n * n);
        for l in &left {
            for r in &right {
                cells.push(l.add(r).index() as u32);
            }
        }
        QuasigroupTable { n, cells }
    }

    /// Subgroups `N` with `φ(N) = ψ(N) = N` and `1 < |N| < |G|`.
    pub fn invariant_proper_subgroups(&self) -> Vec<Subgroup> {
        match self.group {
            // every subgroup of a cyclic group is characteristic
            GroupDescriptor::Cyclic(m) => (1..m.k())
                .map(|i| Subgroup::generated_by(Element::Cyclic(m.residue(m.p().pow(i) as i64))))
                .collect(),
            GroupDescriptor::ElemAbelian2(m) => {
                let (Automorphism::Matrix(phi), Automorphism::Matrix(psi)) = (self.phi, self.psi)
                else {
                    unreachable!("plane forms carry matrices")
                };
                projective_line(m)
                    .filter(|v| is_eigenvector(&phi, *v) && is_eigenvector(&psi, *v))
                    .map(|v| Subgroup::generated_by(Element::Plane(v)))
                    .collect()
            }
        }
    }

    /// No proper congruences, equivalently no proper nontrivial `φ,ψ`-invariant subgroup.
    pub fn is_simple(&self) -> bool {
        self.invariant_proper_subgroups().is_empty()
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Aff({}, {}, {}, {})",
            self.group, self.phi, self.psi, self.c
        )
    }
}

/// Direction vectors `(1, t)` and `(0, 1)` of the `p + 1` lines through the origin.
pub fn projective_line(m: Modulus) -> impl Iterator<Item = Vec2> {
    (0..m.n())
        .map(move |t| Vec2::new(1, t as i64, m))
        .chain(std::iter::once(Vec2::new(0, 1, m)))
}

/// `m·v ∈ span(v)` for nonzero `v`.
pub fn is_eigenvector(m: &Mat2, v: Vec2) -> bool {
    let w = m.apply(v);
    let n = m.modulus().n();
    (v.x() * w.y() % n + n - v.y() * w.x() % n).is_multiple_of(n)
}

/// A subgroup together with one generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub generator: Element,
    /// Element indices, ascending.
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn generated_by(g: Element) -> Self {
        let mut elements = vec![0];
        let mut x = g;
        while !x.is_zero() {
            elements.push(x.index());
            x = x.add(&g);
        }
        elements.sort_unstable();
        Subgroup {
            generator: g,
            elements,
        }
    }
}

/// An `n × n` operation table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasigroupTable {
    n: usize,
    cells: Vec<u32>,
}

impl QuasigroupTable {
    pub fn new(n: usize, cells: Vec<u32>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::Precondition(format!(
                "expected {} cells, got {}",
                n * n,
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|&&v| v as usize >= n) {
            return Err(Error::Precondition(format!(
                "entry {bad} out of range for order {n}"
            )));
        }
        Ok(QuasigroupTable { n, cells })
    }

    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let cells = (0..n * n).map(|i| op(i / n, i % n) as u32).collect();
        Self::new(n, cells)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y] as usize
    }

    pub fn row(&self, x: usize) -> &[u32] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn is_latin(&self) -> bool {
        let n = self.n;
        let mut seen = vec![0usize; n];
        let mut stamp = 0;
        let mut check = |cells: &mut dyn Iterator<Item = usize>| {
            stamp += 1;
            for v in cells {
                if seen[v] == stamp {
                    return false;
                }
                seen[v] = stamp;
            }
            true
        };
        (0..n).all(|x| check(&mut (0..n).map(|y| self.get(x, y))))
            && (0..n).all(|y| check(&mut (0..n).map(|x| self.get(x, y))))
    }

    /// `(x*y)*(u*v) = (v*y)*(u*x)` for all `n^4` quadruples.
    pub fn is_paramedial(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.get(x, y);
                for v in 0..n {
                    let vy = self.get(v, y);
                    for u in 0..n {
                        if self.get(xy, self.get(u, v)) != self.get(vy, self.get(u, x)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `order n`, then `n` rows of space-separated indices.
    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\n", self.n);
        for x in 0..self.n {
            let row: Vec<String> = self.row(x).iter().map(u32::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Precondition("empty table".into()))?;
        let n: usize = header
            .strip_prefix("order ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Precondition(format!("bad header {header:?}")))?;
        let mut cells = Vec::with_capacity(n * n);
        for line in lines.by_ref().take(n) {
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Precondition(format!("bad entry {t:?}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Precondition(format!(
                    "row of length {} in table of order {n}",
                    row.len()
                )));
            }
            cells.extend(row);
        }
        Self::new(n, cells)
    }
}

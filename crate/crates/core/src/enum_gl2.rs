//! Isomorphism-class representatives of paramedial quasigroups affine over `Z_p^2`.
//!
//! For each conjugacy class representative `φ` of `GL(2,p)` we list the square
//! roots `S_φ` of `φ²`, pick orbit representatives `Y_φ` of the centralizer
//! `C(φ)` acting on `S_φ` by conjugation, and for each `ψ ∈ Y_φ` pick the
//! constants `c` as orbit representatives on `Z_p^2 / Im(1 − φ − ψ)`.
//!
//! `p = 2` degenerates (no `2^{-1}`, no pair `0 < a < b`) and is routed
//! through the exhaustive classification in [`crate::oracle`].

use std::fmt;

use crate::affine::{AffineForm, Automorphism, GroupDescriptor};
use crate::error::{Error, Result};
use crate::modring::{
    canonical_sqrt, gl2, gl2_order, image_and_cosets, is_square, Mat2, Modulus, Vec2,
};
use crate::oracle::{burnside_count, classify_triples, orbits, ActionSpec, Budget};

/// The four shapes of conjugacy class representatives in `GL(2,p)`, `p` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    /// `aI`, `a ≠ 0`.
    Scalar { a: u64 },
    /// `diag(a, b)`, `0 < a < b`.
    Diag { a: u64, b: u64 },
    /// `((a,1),(0,a))`, `a ≠ 0`.
    Jordan { a: u64 },
    /// `((0,1),(a,b))` with `x² − bx − a` irreducible.
    Irreducible { a: u64, b: u64 },
}

/// The four rows of the conjugacy class table, used for subtotals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Scalar,
    Diagonal,
    Jordan,
    Irreducible,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Scalar,
        Family::Diagonal,
        Family::Jordan,
        Family::Irreducible,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Scalar => "scalar",
            Family::Diagonal => "diagonal",
            Family::Jordan => "jordan",
            Family::Irreducible => "irreducible",
        }
    }
}

impl ClassKind {
    pub fn family(&self) -> Family {
        match self {
            ClassKind::Scalar { .. } => Family::Scalar,
            ClassKind::Diag { .. } => Family::Diagonal,
            ClassKind::Jordan { .. } => Family::Jordan,
            ClassKind::Irreducible { .. } => Family::Irreducible,
        }
    }
}

/// Family of any invertible matrix, from its eigenvalues in `Z_p`.
pub fn family_of(m: &Mat2) -> Family {
    if m.is_scalar() {
        return Family::Scalar;
    }
    let (t, d) = (m.tr(), m.det());
    let roots = m
        .modulus()
        .residues()
        .filter(|l| *l * *l - t * *l + d == m.modulus().zero())
        .count();
    match roots {
        0 => Family::Irreducible,
        1 => Family::Jordan,
        _ => Family::Diagonal,
    }
}

/// A conjugacy class of `GL(2,p)` with its normal-form representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub kind: ClassKind,
    pub representative: Mat2,
}

impl ConjClass {
    pub fn new(kind: ClassKind, m: Modulus) -> Self {
        let representative = match kind {
            ClassKind::Scalar { a } => Mat2::scalar(a, m),
            ClassKind::Diag { a, b } => Mat2::diag(a, b, m),
            ClassKind::Jordan { a } => Mat2::from_entries([a, 1, 0, a], m),
            ClassKind::Irreducible { a, b } => Mat2::from_entries([0, 1, a, b], m),
        };
        ConjClass {
            kind,
            representative,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.representative.modulus()
    }

    pub fn centralizer_order(&self) -> u64 {
        let p = self.modulus().p();
        match self.kind {
            ClassKind::Scalar { .. } => gl2_order(p),
            ClassKind::Diag { .. } => (p - 1) * (p - 1),
            ClassKind::Jordan { .. } => p * (p - 1),
            ClassKind::Irreducible { .. } => p * p - 1,
        }
    }

    /// Membership in `C(φ)` by the parametric shape of the centralizer.
    pub fn centralizer_contains(&self, x: &Mat2) -> bool {
        if x.modulus() != self.modulus() || !x.is_invertible() {
            return false;
        }
        let [e0, e1, e2, e3] = x.entries();
        let n = self.modulus().n();
        match self.kind {
            ClassKind::Scalar { .. } => true,
            ClassKind::Diag { .. } => e1 == 0 && e2 == 0,
            ClassKind::Jordan { .. } => e2 == 0 && e0 == e3,
            ClassKind::Irreducible { a, b } => e2 == a * e1 % n && e3 == (e0 + b * e1) % n,
        }
    }

    /// The elements of `C(φ)`, generated from the parametric shape.
    pub fn centralizer(&self) -> Vec<Mat2> {
        let m = self.modulus();
        let n = m.n();
        let mut out = match self.kind {
            ClassKind::Scalar { .. } => gl2(m),
            ClassKind::Diag { .. } => (1..n)
                .flat_map(|u| (1..n).map(move |v| Mat2::diag(u, v, m)))
                .collect(),
            ClassKind::Jordan { .. } => (1..n)
                .flat_map(|u| (0..n).map(move |v| Mat2::from_entries([u, v, 0, u], m)))
                .collect(),
            ClassKind::Irreducible { a, b } => (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != 0 || v != 0)
                .map(|(u, v)| Mat2::from_entries([u, v, a * v, u + b * v], m))
                .collect(),
        };
        out.sort();
        out
    }
}

fn require_odd(m: Modulus) -> Result<()> {
    if m.p() == 2 || m.k() != 1 {
        return Err(Error::Precondition(format!(
            "needs an odd prime field, got {m}"
        )));
    }
    Ok(())
}

/// Conjugacy class representatives of `GL(2,p)` for odd `p`, family by family.
pub fn conjugacy_classes(m: Modulus) -> Result<Vec<ConjClass>> {
    require_odd(m)?;
    let n = m.n();
    let mut kinds = Vec::new();
    kinds.extend((1..n).map(|a| ClassKind::Scalar { a }));
    for a in 1..n {
        kinds.extend((a + 1..n).map(|b| ClassKind::Diag { a, b }));
    }
    kinds.extend((1..n).map(|a| ClassKind::Jordan { a }));
    for a in 1..n {
        for b in 0..n {
            // x² − bx − a is irreducible iff its discriminant b² + 4a is a non-square
            if !is_square(m.residue((b * b + 4 * a) as i64)) {
                kinds.push(ClassKind::Irreducible { a, b });
            }
        }
    }
    Ok(kinds.into_iter().map(|k| ConjClass::new(k, m)).collect())
}

/// All `X` with `X² = A`, `p` odd, sorted.
///
/// For non-scalar `A`, Cayley–Hamilton forces `tr X ≠ 0` and
/// `X = ±(A + δI)/√(T + 2δ)` with `δ = ±√Δ`. For `A = cI` the roots are
/// `±√c·I` together with every trace-zero `((k,l),(m,−k))` with `k² + lm = c`.
pub fn sqrt_set(a: &Mat2) -> Vec<Mat2> {
    let m = a.modulus();
    assert!(
        m.p() != 2 && m.k() == 1,
        "sqrt_set needs an odd prime field"
    );
    let n = m.n();
    let mut roots = Vec::new();
    if a.is_scalar() {
        let c = a.entry(0, 0);
        if let Some(r) = canonical_sqrt(c) {
            roots.push(Mat2::scalar(r.value(), m));
            roots.push(Mat2::scalar((-r).value(), m));
        }
        for k in 0..n {
            for l in 0..n {
                for mm in 0..n {
                    if (k * k + l * mm) % n == c.value() {
                        roots.push(Mat2::from_entries([k, l, mm, (n - k) % n], m));
                    }
                }
            }
        }
    } else {
        let (t, det) = (a.tr(), a.det());
        if let Some(sd) = canonical_sqrt(det) {
            for delta in [sd, -sd] {
                let Some(tau) = canonical_sqrt(t + delta + delta) else {
                    continue;
                };
                let Some(tau_inv) = tau.inverse() else {
                    continue;
                };
                let base = (*a + Mat2::scalar(delta.value(), m)).scale(tau_inv.value());
                roots.push(base);
                roots.push(-base);
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// How `ψ` relates to `φ`; one label per row of the enumeration table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PsiCase {
    ScalarSame,
    ScalarNeg,
    ScalarMixed,
    DiagSame,
    DiagNeg,
    DiagFlipFirst,
    DiagFlipSecond,
    OppositeLower,
    OppositeLowerNeg,
    OppositeFamily {
        k: u64,
    },
    JordanSame,
    JordanNeg,
    IrreducibleSame,
    IrreducibleNeg,
    IrreducibleOther,
    /// `p = 2`, classified exhaustively.
    Oracle,
}

impl PsiCase {
    pub fn label(&self) -> String {
        match self {
            PsiCase::ScalarSame => "phi=aI; psi=aI".into(),
            PsiCase::ScalarNeg => "phi=aI; psi=-aI".into(),
            PsiCase::ScalarMixed => "phi=aI; psi=diag(a,-a)".into(),
            PsiCase::DiagSame => "phi=diag(a,b); psi=diag(a,b)".into(),
            PsiCase::DiagNeg => "phi=diag(a,b); psi=diag(-a,-b)".into(),
            PsiCase::DiagFlipFirst => "phi=diag(a,b); psi=diag(-a,b)".into(),
            PsiCase::DiagFlipSecond => "phi=diag(a,b); psi=diag(a,-b)".into(),
            PsiCase::OppositeLower => "phi=diag(a,-a); psi=(a,0;1,-a)".into(),
            PsiCase::OppositeLowerNeg => "phi=diag(a,-a); psi=(-a,0;1,a)".into(),
            PsiCase::OppositeFamily { k } => format!("phi=diag(a,-a); psi=(k,1;a^2-k^2,-k), k={k}"),
            PsiCase::JordanSame => "phi=(a,1;0,a); psi=phi".into(),
            PsiCase::JordanNeg => "phi=(a,1;0,a); psi=-phi".into(),
            PsiCase::IrreducibleSame => "phi=(0,1;a,b); psi=phi".into(),
            PsiCase::IrreducibleNeg => "phi=(0,1;a,b); psi=-phi".into(),
            PsiCase::IrreducibleOther => "phi=(0,1;a,0); psi=(k,l;(a-k^2)/l,-k)".into(),
            PsiCase::Oracle => "p=2 exhaustive".into(),
        }
    }
}

impl fmt::Display for PsiCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// One element of `Y_φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YEntry {
    pub psi: Mat2,
    pub case: PsiCase,
}

/// The action of `C(φ)` on `S_φ` by conjugation.
pub fn centralizer_action(class: &ConjClass) -> ActionSpec<'static, Mat2, Mat2> {
    let m = class.modulus();
    ActionSpec::new(
        class.centralizer(),
        Mat2::identity(m),
        |g: &Mat2, h: &Mat2| *g * *h,
        sqrt_set(&class.representative.square()),
        |g: &Mat2, x: &Mat2| {
            x.conjugate_by(g)
                .expect("centralizer elements are invertible")
        },
    )
}

/// Orbit representatives of `C(φ)` acting on `S_φ`.
pub fn y_phi(class: &ConjClass) -> Vec<YEntry> {
    let m = class.modulus();
    let n = m.n();
    let phi = class.representative;
    let e = |psi: Mat2, case: PsiCase| YEntry { psi, case };
    match class.kind {
        ClassKind::Scalar { a } => vec![
            e(phi, PsiCase::ScalarSame),
            e(-phi, PsiCase::ScalarNeg),
            e(Mat2::diag(a, n - a, m), PsiCase::ScalarMixed),
        ],
        ClassKind::Diag { a, b } => {
            let mut out = vec![
                e(phi, PsiCase::DiagSame),
                e(-phi, PsiCase::DiagNeg),
                e(Mat2::diag(n - a, b, m), PsiCase::DiagFlipFirst),
                e(Mat2::diag(a, n - b, m), PsiCase::DiagFlipSecond),
            ];
            if (a + b) % n == 0 {
                out.push(e(
                    Mat2::from_entries([a, 0, 1, n - a], m),
                    PsiCase::OppositeLower,
                ));
                out.push(e(
                    Mat2::from_entries([n - a, 0, 1, a], m),
                    PsiCase::OppositeLowerNeg,
                ));
                for k in 0..n {
                    let lower = (a * a % n + n - k * k % n) % n;
                    out.push(e(
                        Mat2::from_entries([k, 1, lower, (n - k) % n], m),
                        PsiCase::OppositeFamily { k },
                    ));
                }
            }
            out
        }
        ClassKind::Jordan { .. } => vec![e(phi, PsiCase::JordanSame), e(-phi, PsiCase::JordanNeg)],
        ClassKind::Irreducible { b, .. } => {
            let mut out = vec![
                e(phi, PsiCase::IrreducibleSame),
                e(-phi, PsiCase::IrreducibleNeg),
            ];
            if b == 0 {
                // no closed list; least element of each remaining orbit
                let part =
                    orbits(&centralizer_action(class), &Budget::default()).expect("S_phi is small");
                out.extend(
                    part.representatives()
                        .into_iter()
                        .filter(|psi| *psi != phi && *psi != -phi)
                        .map(|psi| e(psi, PsiCase::IrreducibleOther)),
                );
            }
            out
        }
    }
}

/// Orbit data for `C(φ)` acting on `S_φ`, `φ = ((0,1),(a,0))`, computed two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideReport {
    /// `Σ_{C ∈ C(φ)} |Fix(C)|`.
    pub fixed_point_total: usize,
    pub centralizer_order: usize,
    /// `fixed_point_total / centralizer_order`.
    pub by_fixed_points: usize,
    /// Orbit count from the explicit partition.
    pub by_partition: usize,
    /// Orbit sizes, ascending.
    pub orbit_sizes: Vec<usize>,
}

pub fn burnside_orbit_count(class: &ConjClass) -> Result<BurnsideReport> {
    let ClassKind::Irreducible { b: 0, .. } = class.kind else {
        return Err(Error::Precondition(
            "needs phi = ((0,1),(a,0)) with a a non-square".into(),
        ));
    };
    let spec = centralizer_action(class);
    let fixed_point_total: usize = spec
        .group()
        .iter()
        .map(|g| {
            spec.points()
                .iter()
                .filter(|x| spec.act(g, x) == **x)
                .count()
        })
        .sum();
    let budget = Budget::default();
    let by_fixed_points = burnside_count(&spec, &budget)?;
    let part = orbits(&spec, &budget)?;
    let mut orbit_sizes = part.sizes();
    orbit_sizes.sort_unstable();
    Ok(BurnsideReport {
        fixed_point_total,
        centralizer_order: spec.group().len(),
        by_fixed_points,
        by_partition: part.count(),
        orbit_sizes,
    })
}

/// Solutions `(k, l)` of `k² − a l² + (1 − 2a) l − a = 0` over `Z_p`, by exhaustive search.
pub fn conic_solutions(m: Modulus, a: u64) -> Result<Vec<(u64, u64)>> {
    require_odd(m)?;
    let n = m.n();
    let a = a % n;
    if is_square(m.residue(a as i64)) {
        return Err(Error::Precondition(format!("{a} is a square mod {n}")));
    }
    let coef = (1 + 2 * (n - a)) % n;
    let mut out = Vec::new();
    for k in 0..n {
        for l in 0..n {
            let v = (k * k + (n - a) * (l * l % n) + coef * l + (n - a)) % n;
            if v == 0 {
                out.push((k, l));
            }
        }
    }
    Ok(out)
}

/// Number of points on the conic; always `p + 1` for a non-square `a`.
pub fn conic_count(m: Modulus, a: u64) -> Result<usize> {
    conic_solutions(m, a).map(|s| s.len())
}

/// Representatives of the orbits of `C(φ) ∩ C(ψ)` on `Z_p^2 / Im(1 − φ − ψ)`.
///
/// Scalars lie in every centralizer and act transitively on the nonzero
/// cosets when the quotient is `Z_p`. Rank zero forces `φ = ψ = 2^{-1}I`,
/// where `GL(2,p)` is transitive on nonzero vectors.
pub fn coset_reps_for(phi: &Mat2, psi: &Mat2) -> Vec<Vec2> {
    let m = phi.modulus();
    let one_minus = Mat2::identity(m) - *phi - *psi;
    match one_minus.rank() {
        2 => vec![Vec2::zero(m)],
        1 => {
            let (_, reps) = image_and_cosets(&one_minus);
            vec![reps[0], reps[1]]
        }
        _ => vec![Vec2::zero(m), Vec2::new(1, 0, m)],
    }
}

/// One `(φ, ψ)` pair with its admissible constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl2Row {
    pub phi: Mat2,
    pub psi: Mat2,
    pub family: Family,
    pub case: PsiCase,
    pub coset_reps: Vec<Vec2>,
    pub simple: bool,
}

impl Gl2Row {
    pub fn count(&self) -> u64 {
        self.coset_reps.len() as u64
    }

    pub fn forms(&self) -> impl Iterator<Item = AffineForm> + '_ {
        self.coset_reps
            .iter()
            .map(|c| AffineForm::plane(self.phi, self.psi, *c).expect("rows satisfy phi^2 = psi^2"))
    }

    /// Whether `ψ` is the `k = 2^{-1}a^{-1} − a` member of the opposite-diagonal family
    /// or the singular member of the irreducible trace-zero orbits; i.e. whether the row
    /// carries two constants.
    pub fn has_two_constants(&self) -> bool {
        self.coset_reps.len() == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl2Classification {
    pub p: Modulus,
    pub rows: Vec<Gl2Row>,
    pub total: u64,
}

impl Gl2Classification {
    fn from_rows(p: Modulus, rows: Vec<Gl2Row>) -> Self {
        let total = rows.iter().map(Gl2Row::count).sum();
        Gl2Classification { p, rows, total }
    }

    pub fn group(&self) -> GroupDescriptor {
        GroupDescriptor::ElemAbelian2(self.p)
    }

    pub fn forms(&self) -> Vec<AffineForm> {
        self.rows.iter().flat_map(Gl2Row::forms).collect()
    }

    pub fn subtotal(&self, family: Family) -> u64 {
        self.rows
            .iter()
            .filter(|r| r.family == family)
            .map(Gl2Row::count)
            .sum()
    }
}

/// The paramedial quasigroups over `Z_p^2`, one per isomorphism class.
pub fn enumerate_gl2(m: Modulus) -> Result<Gl2Classification> {
    if m.k() != 1 {
        return Err(Error::Precondition(format!("needs a prime, got {m}")));
    }
    if m.p() == 2 {
        return Ok(enumerate_by_oracle(m));
    }
    let mut rows = Vec::new();
    for class in conjugacy_classes(m)? {
        let phi = class.representative;
        for y in y_phi(&class) {
            let coset_reps = coset_reps_for(&phi, &y.psi);
            let simple = AffineForm::plane(phi, y.psi, coset_reps[0])
                .expect("psi in S_phi")
                .is_simple();
            rows.push(Gl2Row {
                phi,
                psi: y.psi,
                family: class.kind.family(),
                case: y.case,
                coset_reps,
                simple,
            });
        }
    }
    Ok(Gl2Classification::from_rows(m, rows))
}

fn enumerate_by_oracle(m: Modulus) -> Gl2Classification {
    let cls = classify_triples(GroupDescriptor::ElemAbelian2(m), &Budget::default())
        .expect("Z_2^2 is within every budget");
    let mut rows: Vec<Gl2Row> = Vec::new();
    for f in cls.representatives() {
        let (
            Automorphism::Matrix(phi),
            Automorphism::Matrix(psi),
            crate::affine::Element::Plane(c),
        ) = (f.phi(), f.psi(), f.c())
        else {
            unreachable!("plane forms")
        };
        match rows.last_mut() {
            Some(r) if r.phi == phi && r.psi == psi => r.coset_reps.push(c),
            _ => rows.push(Gl2Row {
                phi,
                psi,
                family: family_of(&phi),
                case: PsiCase::Oracle,
                coset_reps: vec![c],
                simple: f.is_simple(),
            }),
        }
    }
    Gl2Classification::from_rows(m, rows)
}

/// Families of simple quasigroups over `Z_p^2`, `p` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleFamily {
    /// `φ = diag(a,−a)`, `ψ = (k,1;a²−k²,−k)`, `k ≠ ±a`, one constant.
    OppositeDiag,
    /// Same, `k = 2^{-1}a^{-1} − a`, two constants.
    OppositeDiagSingular,
    IrreducibleSame,
    IrreducibleNeg,
    /// `φ = (0,1;a,0)`, `ψ ≠ ±φ`, one constant.
    IrreducibleOther,
    /// Same, the orbit on the conic, two constants.
    IrreducibleOtherSingular,
}

impl SimpleFamily {
    pub const ALL: [SimpleFamily; 6] = [
        SimpleFamily::OppositeDiag,
        SimpleFamily::OppositeDiagSingular,
        SimpleFamily::IrreducibleSame,
        SimpleFamily::IrreducibleNeg,
        SimpleFamily::IrreducibleOther,
        SimpleFamily::IrreducibleOtherSingular,
    ];

    /// Number of classes in the family as a polynomial in `p`.
    pub fn expected_count(&self, p: u64) -> u64 {
        match self {
            SimpleFamily::OppositeDiag => (p * p + 5 - 4 * p) / 2,
            SimpleFamily::OppositeDiagSingular => p - 3,
            SimpleFamily::IrreducibleSame | SimpleFamily::IrreducibleNeg => (p * p - p) / 2,
            SimpleFamily::IrreducibleOther => (p - 1) * (p - 3) / 2,
            SimpleFamily::IrreducibleOtherSingular => p - 1,
        }
    }
}

/// Which simple family a row belongs to, read off its shape alone.
pub fn simple_family(row: &Gl2Row) -> Option<SimpleFamily> {
    let two = row.has_two_constants();
    match row.case {
        PsiCase::OppositeFamily { k } => {
            let a = row.phi.entries()[0];
            let n = row.phi.modulus().n();
            if k == a || k == n - a {
                None
            } else if two {
                Some(SimpleFamily::OppositeDiagSingular)
            } else {
                Some(SimpleFamily::OppositeDiag)
            }
        }
        PsiCase::IrreducibleSame => Some(SimpleFamily::IrreducibleSame),
        PsiCase::IrreducibleNeg => Some(SimpleFamily::IrreducibleNeg),
        PsiCase::IrreducibleOther if two => Some(SimpleFamily::IrreducibleOtherSingular),
        PsiCase::IrreducibleOther => Some(SimpleFamily::IrreducibleOther),
        _ => None,
    }
}

/// The rows whose quasigroups are simple.
pub fn simple_subset(cls: &Gl2Classification) -> Gl2Classification {
    Gl2Classification::from_rows(
        cls.p,
        cls.rows.iter().filter(|r| r.simple).cloned().collect(),
    )
}

/// Class counts per simple family, in [`SimpleFamily::ALL`] order.
pub fn simple_family_counts(cls: &Gl2Classification) -> Vec<(SimpleFamily, u64)> {
    SimpleFamily::ALL
        .iter()
        .map(|fam| {
            let count = cls
                .rows
                .iter()
                .filter(|r| simple_family(r) == Some(*fam))
                .map(Gl2Row::count)
                .sum();
            (*fam, count)
        })
        .collect()
}

/// Per-family subtotals as polynomials in `p`, `p` odd.
pub fn expected_subtotal(family: Family, p: u64) -> u64 {
    match family {
        Family::Scalar => 3 * p - 1,
        // (5p² − 6p − 1)/2 and (3p² − 4p + 1)/2
        Family::Diagonal => (5 * p * p - 6 * p - 1) / 2,
        Family::Jordan => 2 * p - 1,
        Family::Irreducible => (3 * p * p + 1 - 4 * p) / 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Modulus {
        Modulus::prime(p).unwrap()
    }

    #[test]
    fn class_counts() {
        for p in [3u64, 5, 7, 11] {
            let cls = conjugacy_classes(f(p)).unwrap();
            let fam = |x: Family| cls.iter().filter(|c| c.kind.family() == x).count() as u64;
            assert_eq!(fam(Family::Scalar), p - 1);
            assert_eq!(fam(Family::Diagonal), (p - 1) * (p - 2) / 2);
            assert_eq!(fam(Family::Jordan), p - 1);
            assert_eq!(fam(Family::Irreducible), (p * p - p) / 2);
            assert_eq!(cls.len() as u64, p * p - 1);
        }
        assert!(conjugacy_classes(f(2)).is_err());
    }

    #[test]
    fn p3_families() {
        let cls = conjugacy_classes(f(3)).unwrap();
        let scalars: Vec<Mat2> = cls
            .iter()
            .filter(|c| c.kind.family() == Family::Scalar)
            .map(|c| c.representative)
            .collect();
        assert_eq!(scalars, vec![Mat2::scalar(1, f(3)), Mat2::scalar(2, f(3))]);
        let irr: Vec<ClassKind> = cls
            .iter()
            .filter(|c| c.kind.family() == Family::Irreducible)
            .map(|c| c.kind)
            .collect();
        assert_eq!(
            irr,
            vec![
                ClassKind::Irreducible { a: 1, b: 1 },
                ClassKind::Irreducible { a: 1, b: 2 },
                ClassKind::Irreducible { a: 2, b: 0 }
            ]
        );
    }

    #[test]
    fn representatives_have_their_family() {
        for c in conjugacy_classes(f(7)).unwrap() {
            assert_eq!(family_of(&c.representative), c.kind.family());
            assert_eq!(c.centralizer().len() as u64, c.centralizer_order());
        }
    }

    #[test]
    fn sqrt_examples() {
        let m = f(3);
        assert_eq!(sqrt_set(&Mat2::identity(m)).len(), 14);
        let j = Mat2::new([[0, 1], [2, 0]], m);
        assert_eq!(sqrt_set(&j.square()).len(), 6);
        let m5 = f(5);
        let roots = sqrt_set(&Mat2::scalar(4, m5));
        assert!(roots.contains(&Mat2::scalar(2, m5)) && roots.contains(&Mat2::scalar(3, m5)));
        for r in &roots {
            assert_eq!(r.square(), Mat2::scalar(4, m5));
            assert!(r.is_scalar() || r.tr().is_zero());
        }
    }

    #[test]
    fn sqrt_of_non_square_scalar_is_trace_zero() {
        let m = f(5);
        for r in sqrt_set(&Mat2::scalar(2, m)) {
            assert!(r.tr().is_zero());
        }
    }

    #[test]
    fn y_phi_sizes() {
        let m = f(7);
        for c in conjugacy_classes(m).unwrap() {
            let y = y_phi(&c).len() as u64;
            let expect = match c.kind {
                ClassKind::Scalar { .. } => 3,
                ClassKind::Diag { a, b } if a + b == 7 => 6 + 7,
                ClassKind::Diag { .. } => 4,
                ClassKind::Jordan { .. } => 2,
                ClassKind::Irreducible { b: 0, .. } => 7,
                ClassKind::Irreducible { .. } => 2,
            };
            assert_eq!(y, expect, "{:?}", c.kind);
        }
    }

    #[test]
    fn burnside_p3() {
        let c = ConjClass::new(ClassKind::Irreducible { a: 2, b: 0 }, f(3));
        let r = burnside_orbit_count(&c).unwrap();
        assert_eq!(r.fixed_point_total, 24);
        assert_eq!(r.centralizer_order, 8);
        assert_eq!(r.by_fixed_points, 3);
        assert_eq!(r.by_partition, 3);
        assert_eq!(r.orbit_sizes, vec![1, 1, 4]);
        assert!(burnside_orbit_count(&ConjClass::new(ClassKind::Scalar { a: 1 }, f(3))).is_err());
    }

    #[test]
    fn conic_examples() {
        assert_eq!(
            conic_solutions(f(3), 2).unwrap(),
            vec![(1, 1), (1, 2), (2, 1), (2, 2)]
        );
        assert_eq!(conic_count(f(5), 2).unwrap(), 6);
        assert_eq!(conic_count(f(7), 3).unwrap(), 8);
        assert!(conic_count(f(7), 2).is_err());
    }

    #[test]
    fn coset_examples() {
        let m = f(3);
        let half = Mat2::scalar(2, m);
        assert_eq!(
            coset_reps_for(&half, &half),
            vec![Vec2::zero(m), Vec2::new(1, 0, m)]
        );
        let one = Mat2::scalar(1, m);
        assert_eq!(coset_reps_for(&one, &one), vec![Vec2::zero(m)]);
        // φ = (0,1;2,0), ψ on the conic: (k,l) = (1,1) gives ψ = (1,1;1,2)
        let phi = Mat2::new([[0, 1], [2, 0]], m);
        let psi = Mat2::new([[1, 1], [1, 2]], m);
        assert_eq!(phi.square(), psi.square());
        assert_eq!(coset_reps_for(&phi, &psi).len(), 2);
    }

    #[test]
    fn totals_p3() {
        let cls = enumerate_gl2(f(3)).unwrap();
        assert_eq!(cls.total, 34);
        let subs: Vec<u64> = Family::ALL.iter().map(|x| cls.subtotal(*x)).collect();
        assert_eq!(subs, vec![8, 13, 5, 8]);
        assert_eq!(simple_subset(&cls).total, 9);
    }

    #[test]
    fn subtotal_polynomials() {
        for p in [3u64, 5, 7, 11, 13] {
            let sum: u64 = Family::ALL.iter().map(|x| expected_subtotal(*x, p)).sum();
            assert_eq!(sum, 4 * p * p - 2);
            let simple: u64 = SimpleFamily::ALL.iter().map(|x| x.expected_count(p)).sum();
            assert_eq!(simple, 2 * p * p - 3 * p);
        }
    }

    #[test]
    fn p2_goes_through_the_oracle() {
        let cls = enumerate_gl2(f(2)).unwrap();
        assert_eq!(cls.total, 7);
        assert!(cls.rows.iter().all(|r| r.case == PsiCase::Oracle));
    }
}

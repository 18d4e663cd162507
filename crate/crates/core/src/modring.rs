//! Exact arithmetic in `Z_{p^k}`, its unit group, and 2×2 matrices over `Z_p`.
//!
//! Residues are always stored as least non-negative representatives. Moduli
//! are limited to `n = p^k < 2^31`, so every product of two residues fits in
//! a `u64` without overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exclusive upper bound on supported moduli `p^k`.
pub const MAX_MODULUS: u64 = 1 << 31;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The modulus `n = p^k` of a cyclic group `Z_{p^k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawModulus", into = "RawModulus")]
pub struct Modulus {
    p: u64,
    k: u32,
    n: u64,
}

#[derive(Serialize, Deserialize)]
struct RawModulus {
    p: u64,
    k: u32,
}

impl TryFrom<RawModulus> for Modulus {
    type Error = Error;
    fn try_from(raw: RawModulus) -> Result<Self> {
        Modulus::new(raw.p, raw.k)
    }
}

impl From<Modulus> for RawModulus {
    fn from(m: Modulus) -> Self {
        RawModulus { p: m.p, k: m.k }
    }
}

impl Modulus {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidModulus {
                p,
                k,
                reason: "exponent must be at least 1",
            });
        }
        if !is_prime(p) {
            return Err(Error::InvalidModulus {
                p,
                k,
                reason: "base is not prime",
            });
        }
        let mut n: u64 = 1;
        for _ in 0..k {
            n = n
                .checked_mul(p)
                .filter(|&n| n < MAX_MODULUS)
                .ok_or(Error::InvalidModulus {
                    p,
                    k,
                    reason: "p^k exceeds 2^31",
                })?;
        }
        Ok(Modulus { p, k, n })
    }

    /// The prime field modulus `(p, 1)`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The modulus `(p, 1)` of the residue field.
    pub fn field(&self) -> Modulus {
        Modulus {
            p: self.p,
            k: 1,
            n: self.p,
        }
    }

    pub fn residue(&self, value: i64) -> Residue {
        Residue::new(value, *self)
    }

    pub fn zero(&self) -> Residue {
        Residue {
            value: 0,
            modulus: *self,
        }
    }

    pub fn one(&self) -> Residue {
        Residue {
            value: 1 % self.n,
            modulus: *self,
        }
    }

    /// All residues `0..n` in ascending order.
    pub fn residues(&self) -> impl Iterator<Item = Residue> + '_ {
        (0..self.n).map(move |value| Residue {
            value,
            modulus: *self,
        })
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.k)
        }
    }
}

/// An element of `Z_{p^k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        let n = modulus.n as i64;
        Residue {
            value: value.rem_euclid(n) as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.modulus.p)
    }

    fn same_modulus(&self, other: &Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic between residues of different moduli"
        );
    }

    pub fn pow(&self, mut e: u64) -> Residue {
        let n = self.modulus.n;
        let mut base = self.value;
        let mut acc = 1 % n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % n;
            }
            base = base * base % n;
            e >>= 1;
        }
        Residue {
            value: acc,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse, if the residue is a unit.
    pub fn inverse(&self) -> Option<Residue> {
        if !self.is_unit() {
            return None;
        }
        let (mut old_r, mut r) = (self.value as i64, self.modulus.n as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Some(Residue::new(old_s, self.modulus))
    }

    /// Largest `i ≤ k` with `p^i | value`; `k` for zero.
    pub fn p_adic_valuation(&self) -> u32 {
        if self.value == 0 {
            return self.modulus.k;
        }
        let mut v = self.value;
        let mut i = 0;
        while v.is_multiple_of(self.modulus.p) {
            v /= self.modulus.p;
            i += 1;
        }
        i
    }
}

impl PartialOrd for Residue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Residue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus, self.value).cmp(&(other.modulus, other.value))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.same_modulus(&rhs);
        Residue {
            value: (self.value + rhs.value) % self.modulus.n,
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.same_modulus(&rhs);
        let n = self.modulus.n;
        Residue {
            value: (self.value + n - rhs.value) % n,
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.same_modulus(&rhs);
        Residue {
            value: self.value * rhs.value % self.modulus.n,
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        let n = self.modulus.n;
        Residue {
            value: (n - self.value) % n,
            modulus: self.modulus,
        }
    }
}

/// A unit of `Z_{p^k}`, i.e. an automorphism of the cyclic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit(Residue);

impl Unit {
    pub fn new(residue: Residue) -> Result<Self> {
        if residue.is_unit() {
            Ok(Unit(residue))
        } else {
            Err(Error::NotInvertible(format!(
                "{} mod {}",
                residue,
                residue.modulus().n()
            )))
        }
    }

    pub fn residue(&self) -> Residue {
        self.0
    }

    pub fn value(&self) -> u64 {
        self.0.value
    }

    pub fn modulus(&self) -> Modulus {
        self.0.modulus
    }

    pub fn inverse(&self) -> Unit {
        Unit(self.0.inverse().expect("units are invertible"))
    }

    pub fn square(&self) -> Unit {
        *self * *self
    }
}

impl Mul for Unit {
    type Output = Unit;
    fn mul(self, rhs: Unit) -> Unit {
        Unit(self.0 * rhs.0)
    }
}

impl Neg for Unit {
    type Output = Unit;
    fn neg(self) -> Unit {
        Unit(-self.0)
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All units of `Z_{p^k}` in ascending order; there are `p^k - p^{k-1}` of them.
pub fn unit_group(m: Modulus) -> Vec<Unit> {
    m.residues().filter(Residue::is_unit).map(Unit).collect()
}

/// Euler's criterion. Zero counts as a square.
pub fn is_square(x: Residue) -> bool {
    let m = x.modulus();
    debug_assert_eq!(m.k(), 1);
    if x.is_zero() || m.p() == 2 {
        return true;
    }
    x.pow((m.p() - 1) / 2).value() == 1
}

/// Square roots of `x` in the prime field `Z_p`, `p` odd, in ascending order.
///
/// Returns `[r, p - r]` with `r < p - r` for a nonzero square, `[0]` for zero
/// and an empty vector for a non-square. Tonelli–Shanks.
pub fn sqrt_residue(x: Residue) -> Vec<Residue> {
    let m = x.modulus();
    assert_eq!(m.k(), 1, "sqrt_residue needs a prime modulus");
    assert!(m.p() != 2, "sqrt_residue needs an odd prime");
    if x.is_zero() {
        return vec![x];
    }
    if !is_square(x) {
        return Vec::new();
    }
    let p = m.p();
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = m
        .residues()
        .skip(2)
        .find(|z| !is_square(*z))
        .expect("odd primes have non-squares");
    let mut c = z.pow(q);
    let mut t = x.pow(q);
    let mut r = x.pow(q.div_ceil(2));
    let mut big_m = s;
    while t.value() != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2.value() != 1 {
            t2 = t2 * t2;
            i += 1;
        }
        let b = c.pow(1 << (big_m - i - 1));
        big_m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    let (lo, hi) = if r.value() < (-r).value() {
        (r, -r)
    } else {
        (-r, r)
    };
    vec![lo, hi]
}

/// The smaller of the two square roots, if `x` is a square.
pub fn canonical_sqrt(x: Residue) -> Option<Residue> {
    sqrt_residue(x).first().copied()
}

/// A vector of `Z_p^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vec2 {
    x: u64,
    y: u64,
    modulus: Modulus,
}

impl Vec2 {
    pub fn new(x: i64, y: i64, modulus: Modulus) -> Self {
        let n = modulus.n() as i64;
        Vec2 {
            x: x.rem_euclid(n) as u64,
            y: y.rem_euclid(n) as u64,
            modulus,
        }
    }

    pub fn zero(modulus: Modulus) -> Self {
        Vec2 {
            x: 0,
            y: 0,
            modulus,
        }
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Index `x·p + y` of the vector in the natural encoding of `Z_p^2`.
    pub fn index(&self) -> usize {
        (self.x * self.modulus.n() + self.y) as usize
    }

    pub fn from_index(index: usize, modulus: Modulus) -> Self {
        let n = modulus.n() as usize;
        Vec2 {
            x: (index / n) as u64,
            y: (index % n) as u64,
            modulus,
        }
    }

    /// All `p^2` vectors in index order.
    pub fn all(modulus: Modulus) -> impl Iterator<Item = Vec2> {
        let n = modulus.n() as usize;
        (0..n * n).map(move |i| Vec2::from_index(i, modulus))
    }

    pub fn scale(&self, s: u64) -> Vec2 {
        let n = self.modulus.n();
        Vec2 {
            x: self.x * s % n,
            y: self.y * s % n,
            modulus: self.modulus,
        }
    }

    pub fn to_array(&self) -> [u64; 2] {
        [self.x, self.y]
    }
}

impl PartialOrd for Vec2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Vec2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus, self.x, self.y).cmp(&(other.modulus, other.x, other.y))
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        assert_eq!(self.modulus, rhs.modulus, "vectors over different moduli");
        let n = self.modulus.n();
        Vec2 {
            x: (self.x + rhs.x) % n,
            y: (self.y + rhs.y) % n,
            modulus: self.modulus,
        }
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        let n = self.modulus.n();
        Vec2 {
            x: (n - self.x) % n,
            y: (n - self.y) % n,
            modulus: self.modulus,
        }
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        self + (-rhs)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A 2×2 matrix over `Z_p`, row-major `((a,b),(c,d))`.
///
/// Ordering is lexicographic on `(a, b, c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    e: [u64; 4],
    modulus: Modulus,
}

impl Mat2 {
    pub fn new(rows: [[i64; 2]; 2], modulus: Modulus) -> Self {
        let n = modulus.n() as i64;
        let r = |v: i64| v.rem_euclid(n) as u64;
        Mat2 {
            e: [r(rows[0][0]), r(rows[0][1]), r(rows[1][0]), r(rows[1][1])],
            modulus,
        }
    }

    pub fn from_entries(e: [u64; 4], modulus: Modulus) -> Self {
        let n = modulus.n();
        Mat2 {
            e: e.map(|v| v % n),
            modulus,
        }
    }

    pub fn scalar(c: u64, modulus: Modulus) -> Self {
        Self::from_entries([c, 0, 0, c], modulus)
    }

    pub fn identity(modulus: Modulus) -> Self {
        Self::scalar(1, modulus)
    }

    pub fn zero(modulus: Modulus) -> Self {
        Self::scalar(0, modulus)
    }

    pub fn diag(a: u64, b: u64, modulus: Modulus) -> Self {
        Self::from_entries([a, 0, 0, b], modulus)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> [u64; 4] {
        self.e
    }

    pub fn rows(&self) -> [[u64; 2]; 2] {
        [[self.e[0], self.e[1]], [self.e[2], self.e[3]]]
    }

    pub fn entry(&self, row: usize, col: usize) -> Residue {
        Residue {
            value: self.e[2 * row + col],
            modulus: self.modulus,
        }
    }

    /// Position of the matrix in the lexicographic order of all `p^4` matrices.
    pub fn index(&self) -> usize {
        let n = self.modulus.n();
        self.e.iter().fold(0, |acc, &v| acc * n + v) as usize
    }

    pub fn from_index(mut index: usize, modulus: Modulus) -> Self {
        let n = modulus.n() as usize;
        let mut e = [0u64; 4];
        for slot in e.iter_mut().rev() {
            *slot = (index % n) as u64;
            index /= n;
        }
        Mat2 { e, modulus }
    }

    /// All `p^4` matrices in lexicographic order.
    pub fn all(modulus: Modulus) -> impl Iterator<Item = Mat2> {
        let n = modulus.n() as usize;
        (0..n.pow(4)).map(move |i| Mat2::from_index(i, modulus))
    }

    pub fn det(&self) -> Residue {
        let [a, b, c, d] = self.e;
        let n = self.modulus.n();
        Residue {
            value: (a * d % n + n - b * c % n) % n,
            modulus: self.modulus,
        }
    }

    pub fn tr(&self) -> Residue {
        Residue {
            value: (self.e[0] + self.e[3]) % self.modulus.n(),
            modulus: self.modulus,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    pub fn is_scalar(&self) -> bool {
        self.e[1] == 0 && self.e[2] == 0 && self.e[0] == self.e[3]
    }

    pub fn inv(&self) -> Result<Mat2> {
        let det_inv = self.det().inverse().ok_or(Error::SingularMatrix)?.value();
        let [a, b, c, d] = self.e;
        let n = self.modulus.n();
        Ok(Mat2 {
            e: [
                d * det_inv % n,
                (n - b) * det_inv % n,
                (n - c) * det_inv % n,
                a * det_inv % n,
            ],
            modulus: self.modulus,
        })
    }

    /// Dimension of the image over `Z_p`.
    pub fn rank(&self) -> u8 {
        if self.e.iter().all(|&v| v == 0) {
            0
        } else if self.det().is_zero() {
            1
        } else {
            2
        }
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        assert_eq!(
            self.modulus, v.modulus,
            "matrix and vector over different moduli"
        );
        let [a, b, c, d] = self.e;
        let n = self.modulus.n();
        Vec2 {
            x: (a * v.x + b * v.y) % n,
            y: (c * v.x + d * v.y) % n,
            modulus: self.modulus,
        }
    }

    pub fn scale(&self, s: u64) -> Mat2 {
        let n = self.modulus.n();
        Mat2 {
            e: self.e.map(|v| v * (s % n) % n),
            modulus: self.modulus,
        }
    }

    pub fn square(&self) -> Mat2 {
        *self * *self
    }

    /// `g · self · g^{-1}`.
    pub fn conjugate_by(&self, g: &Mat2) -> Result<Mat2> {
        Ok(*g * *self * g.inv()?)
    }

    fn check(&self, other: &Mat2) {
        assert_eq!(
            self.modulus, other.modulus,
            "matrices over different moduli"
        );
    }
}

impl PartialOrd for Mat2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mat2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus, self.e).cmp(&(other.modulus, other.e))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        self.check(&rhs);
        let [a, b, c, d] = self.e;
        let [e, f, g, h] = rhs.e;
        let n = self.modulus.n();
        Mat2 {
            e: [
                (a * e + b * g) % n,
                (a * f + b * h) % n,
                (c * e + d * g) % n,
                (c * f + d * h) % n,
            ],
            modulus: self.modulus,
        }
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        self.check(&rhs);
        let n = self.modulus.n();
        let mut e = self.e;
        for (x, y) in e.iter_mut().zip(rhs.e) {
            *x = (*x + y) % n;
        }
        Mat2 {
            e,
            modulus: self.modulus,
        }
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        let n = self.modulus.n();
        Mat2 {
            e: self.e.map(|v| (n - v) % n),
            modulus: self.modulus,
        }
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.e;
        write!(f, "({},{};{},{})", a, b, c, d)
    }
}

/// The invertible matrices over `Z_p` in lexicographic order.
pub fn gl2(modulus: Modulus) -> Vec<Mat2> {
    Mat2::all(modulus).filter(Mat2::is_invertible).collect()
}

/// `|GL(2,p)| = (p^2 - 1)(p^2 - p)`.
pub fn gl2_order(p: u64) -> u64 {
    (p * p - 1) * (p * p - p)
}

/// A basis of `Im M` together with coset representatives of `Z_p^2 / Im M`.
///
/// Representatives are the index-least vectors of their cosets, listed in
/// index order, so the zero vector always comes first.
pub fn image_and_cosets(m: &Mat2) -> (Vec<Vec2>, Vec<Vec2>) {
    let modulus = m.modulus();
    match m.rank() {
        2 => (
            vec![Vec2::new(1, 0, modulus), Vec2::new(0, 1, modulus)],
            vec![Vec2::zero(modulus)],
        ),
        0 => (Vec::new(), Vec2::all(modulus).collect()),
        _ => {
            let u = [
                m.apply(Vec2::new(1, 0, modulus)),
                m.apply(Vec2::new(0, 1, modulus)),
            ]
            .into_iter()
            .find(|v| !v.is_zero())
            .expect("rank one has a nonzero column");
            let mut seen = vec![false; modulus.n() as usize];
            let mut reps = Vec::new();
            for v in Vec2::all(modulus) {
                let class = coset_class(u, v);
                if !seen[class] {
                    seen[class] = true;
                    reps.push(v);
                }
            }
            (vec![u], reps)
        }
    }
}

/// Value of the functional `v ↦ det(u, v)`, whose kernel is `span(u)`.
fn coset_class(u: Vec2, v: Vec2) -> usize {
    let n = u.modulus().n();
    ((u.x * v.y % n + n - u.y * v.x % n) % n) as usize
}

/// Whether `v` lies in the image of `m`.
pub fn in_image(m: &Mat2, v: Vec2) -> bool {
    match m.rank() {
        2 => true,
        0 => v.is_zero(),
        _ => {
            let (basis, _) = image_and_cosets(m);
            coset_class(basis[0], v) == 0
        }
    }
}

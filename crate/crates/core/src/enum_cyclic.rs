//! Isomorphism-class representatives of paramedial quasigroups affine over `Z_{p^k}`.
//!
//! `Aut(Z_{p^k})` is abelian, so every pair `(φ, ψ)` with `φ² = ψ²` is its own
//! orbit and only the constants need reducing modulo `Im(1 − φ − ψ)` and the
//! scaling action of the units.

use crate::affine::{AffineForm, GroupDescriptor};
use crate::error::{Error, Result};
use crate::modring::{unit_group, Modulus, Unit};
use crate::oracle::{classify_triples, Budget};

/// One emitted representative with the case of the analysis it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicClass {
    pub form: AffineForm,
    pub case: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicClassification {
    pub modulus: Modulus,
    pub classes: Vec<CyclicClass>,
    pub count: u64,
}

impl CyclicClassification {
    pub fn forms(&self) -> Vec<AffineForm> {
        self.classes.iter().map(|c| c.form).collect()
    }
}

/// All representatives over `Z_{p^k}`, sorted by `(φ, ψ, c)`.
pub fn enumerate_cyclic(m: Modulus) -> CyclicClassification {
    let mut classes = if m.p() == 2 {
        if m.k() <= 2 {
            small_two_power(m)
        } else {
            two_power(m)
        }
    } else {
        odd_prime_power(m)
    };
    classes.sort_by_key(|a| a.form);
    let count = classes.len() as u64;
    CyclicClassification {
        modulus: m,
        classes,
        count,
    }
}

fn class(m: Modulus, phi: u64, psi: u64, c: u64, case: impl Into<String>) -> CyclicClass {
    CyclicClass {
        form: AffineForm::cyclic(m, phi, psi, c).expect("emitted pairs satisfy phi^2 = psi^2"),
        case: case.into(),
    }
}

fn odd_prime_power(m: Modulus) -> Vec<CyclicClass> {
    let (p, k, n) = (m.p(), m.k(), m.n());
    let half = m.residue(2).inverse().expect("p is odd").value();
    let mut out = Vec::new();
    for phi in unit_group(m) {
        let f = phi.value();
        out.push(class(m, f, (-phi).value(), 0, "psi=-phi"));
        // p^i = gcd(1 − 2φ, p^k)
        let i = m.residue(1 - 2 * f as i64).p_adic_valuation();
        if i == 0 {
            out.push(class(m, f, f, 0, "psi=phi, 1-2phi unit"));
            continue;
        }
        let case = if i == k {
            "psi=phi=1/2".to_string()
        } else {
            format!("psi=phi, gcd(1-2phi,n)=p^{i}")
        };
        debug_assert_eq!(f % p.pow(i), half % p.pow(i));
        out.push(class(m, f, f, 0, case.clone()));
        for j in 0..i {
            out.push(class(m, f, f, p.pow(j) % n, case.clone()));
        }
    }
    out
}

/// `k ≥ 3`: `ψ² = φ²` has exactly four solutions and `1 − φ − ψ` is always odd.
fn two_power(m: Modulus) -> Vec<CyclicClass> {
    let units = unit_group(m);
    let mut out = Vec::new();
    for phi in &units {
        let target = phi.square();
        let roots: Vec<&Unit> = units.iter().filter(|psi| psi.square() == target).collect();
        debug_assert_eq!(roots.len(), 4);
        for psi in roots {
            out.push(class(m, phi.value(), psi.value(), 0, "p=2"));
        }
    }
    out
}

/// `Z_2` and `Z_4`: classified by the exhaustive orbit computation.
fn small_two_power(m: Modulus) -> Vec<CyclicClass> {
    let cls = classify_triples(GroupDescriptor::Cyclic(m), &Budget::default())
        .expect("Z_2 and Z_4 are within every budget");
    cls.representatives()
        .into_iter()
        .map(|form| CyclicClass {
            form,
            case: "oracle".into(),
        })
        .collect()
}

/// `pq(Z_{p^k})` in closed form.
pub fn closed_form_count(m: Modulus) -> u64 {
    let (p, k) = (m.p(), m.k());
    if p == 2 {
        return match k {
            1 => 1,
            2 => 4,
            _ => 1 << (k + 1),
        };
    }
    2 * p.pow(k) - p.pow(k - 1) + (0..k.saturating_sub(1)).map(|i| p.pow(i)).sum::<u64>()
}

/// `pq(Z_p^2)` in closed form.
pub fn closed_form_count_elem2(p: u64) -> u64 {
    if p == 2 {
        7
    } else {
        4 * p * p - 2
    }
}

/// `pq(G)` for a supported group, from the closed forms.
pub fn pq_group(g: GroupDescriptor) -> u64 {
    match g {
        GroupDescriptor::Cyclic(m) => closed_form_count(m),
        GroupDescriptor::ElemAbelian2(m) => closed_form_count_elem2(m.p()),
    }
}

/// Prime factorization as ascending `(p, e)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The abelian groups of order `p^e` covered by the implemented classification.
pub fn supported_groups(p: u64, e: u32) -> Result<Vec<GroupDescriptor>> {
    match e {
        1 => Ok(vec![GroupDescriptor::cyclic(p, 1)?]),
        2 => Ok(vec![
            GroupDescriptor::cyclic(p, 2)?,
            GroupDescriptor::elem2(p)?,
        ]),
        _ => Err(Error::UnsupportedOrder {
            n: p.pow(e),
            missing: format!("abelian groups of order {p}^{e} other than Z_{}", p.pow(e)),
        }),
    }
}

/// `pq(n)`: sum over abelian groups of each prime-power part, multiplied across primes.
pub fn pq_total(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    let mut total = 1u64;
    for (p, e) in factorize(n) {
        let part: u64 = supported_groups(p, e)
            .map_err(|err| match err {
                Error::UnsupportedOrder { missing, .. } => Error::UnsupportedOrder { n, missing },
                other => other,
            })?
            .into_iter()
            .map(pq_group)
            .sum();
        total *= part;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Automorphism;

    fn m(p: u64, k: u32) -> Modulus {
        Modulus::new(p, k).unwrap()
    }

    fn triples(cls: &CyclicClassification) -> Vec<(u64, u64, u64)> {
        cls.forms()
            .iter()
            .map(|f| match (f.phi(), f.psi(), f.c()) {
                (Automorphism::Scalar(a), Automorphism::Scalar(b), c) => {
                    (a.value(), b.value(), c.index() as u64)
                }
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn order_three_forms() {
        let cls = enumerate_cyclic(m(3, 1));
        assert_eq!(
            triples(&cls),
            vec![(1, 1, 0), (1, 2, 0), (2, 1, 0), (2, 2, 0), (2, 2, 1)]
        );
        assert_eq!(cls.count, 5);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_count(m(3, 1)), 5);
        assert_eq!(closed_form_count(m(3, 2)), 16);
        assert_eq!(closed_form_count(m(5, 3)), 231);
        assert_eq!(closed_form_count(m(5, 2)), 46);
        assert_eq!(closed_form_count(m(2, 1)), 1);
        assert_eq!(closed_form_count(m(2, 2)), 4);
        assert_eq!(closed_form_count(m(2, 3)), 16);
        assert_eq!(closed_form_count(m(2, 4)), 32);
    }

    #[test]
    fn case_sum_matches_closed_form() {
        // (p^k − p^{k−1}) + (p^k − 2p^{k−1}) + Σ_{i=1}^{k−1} (p^{k−i} − p^{k−i−1})(i+1) + (k+1)
        for p in [3u64, 5, 7, 11, 13] {
            for k in 1..=4u32 {
                let pk = p.pow(k);
                let mut sum = (pk - pk / p) + (pk - 2 * pk / p) + (k as u64 + 1);
                for i in 1..k {
                    sum += (p.pow(k - i) - p.pow(k - i - 1)) * (i as u64 + 1);
                }
                assert_eq!(sum, closed_form_count(m(p, k)), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn enumeration_count_matches_closed_form() {
        for p in [3u64, 5, 7, 11] {
            for k in 1..=3 {
                let mm = m(p, k);
                assert_eq!(
                    enumerate_cyclic(mm).count,
                    closed_form_count(mm),
                    "p={p} k={k}"
                );
            }
        }
        for k in 1..=5 {
            let mm = m(2, k);
            assert_eq!(enumerate_cyclic(mm).count, closed_form_count(mm), "2^{k}");
        }
    }

    #[test]
    fn emitted_forms_are_valid_and_sorted() {
        for (p, k) in [(3, 3), (5, 2), (2, 4), (7, 1)] {
            let cls = enumerate_cyclic(m(p, k));
            let forms = cls.forms();
            assert!(forms.windows(2).all(|w| w[0] < w[1]));
            for f in &forms {
                assert_eq!(f.phi().square(), f.psi().square());
            }
            for (a, b, _) in triples(&cls) {
                assert!(a % p != 0 && b % p != 0);
            }
            if p != 2 {
                for (a, b, _) in triples(&cls) {
                    assert!(!((a + b) % p == 0 && (a as i64 - b as i64).rem_euclid(p as i64) == 0));
                }
            }
        }
    }

    #[test]
    fn multiplicativity() {
        assert_eq!(pq_total(1).unwrap(), 1);
        assert_eq!(pq_total(9).unwrap(), 50);
        assert_eq!(pq_total(12).unwrap(), 55);
        assert_eq!(pq_total(45).unwrap(), 450);
        assert_eq!(pq_total(4).unwrap(), 11);
        assert!(matches!(
            pq_total(27),
            Err(Error::UnsupportedOrder { n: 27, .. })
        ));
        assert!(matches!(
            pq_total(24),
            Err(Error::UnsupportedOrder { n: 24, .. })
        ));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }
}

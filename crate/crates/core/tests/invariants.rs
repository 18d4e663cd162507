//! Property tests over random affine forms, plus an exhaustive search of
//! paramedial latin squares at the smallest orders.

use proptest::prelude::*;
use proptest::sample::Index;

use paramedial::affine::{AffineForm, Automorphism, GroupDescriptor, QuasigroupTable};
use paramedial::enum_cyclic::{enumerate_cyclic, pq_total};
use paramedial::enum_gl2::enumerate_gl2;
use paramedial::modring::{Mat2, Modulus};
use paramedial::oracle::{classify_triples, table_isomorphic, Budget};

const GROUPS: [(bool, u64, u32); 9] = [
    (false, 2, 2),
    (false, 3, 1),
    (false, 3, 2),
    (false, 5, 1),
    (false, 2, 3),
    (true, 2, 1),
    (true, 3, 1),
    (false, 5, 2),
    (true, 5, 1),
];

fn group(i: usize) -> GroupDescriptor {
    let (plane, p, k) = GROUPS[i];
    if plane {
        GroupDescriptor::elem2(p).unwrap()
    } else {
        GroupDescriptor::cyclic(p, k).unwrap()
    }
}

/// A valid form from three index choices: `φ`, a square root `ψ` of `φ²`, and `c`.
fn form(g: GroupDescriptor, phi: Index, psi: Index, c: Index) -> AffineForm {
    let auts = g.automorphisms();
    let phi = *phi.get(&auts);
    let roots: Vec<&Automorphism> = auts.iter().filter(|a| a.square() == phi.square()).collect();
    let psi = **psi.get(&roots);
    let c = g.element(c.index(g.order()));
    AffineForm::new(g, phi, psi, c).unwrap()
}

fn any_form(max_group: usize) -> impl Strategy<Value = AffineForm> {
    (0..max_group, any::<Index>(), any::<Index>(), any::<Index>())
        .prop_map(|(g, a, b, c)| form(group(g), a, b, c))
}

/// `Aff(φ,ψ,c)` transported along `x ↦ α(x) + u`.
fn transport(f: &AffineForm, alpha: &Automorphism, u_index: usize) -> AffineForm {
    let g = f.group();
    let u = g.element(u_index);
    let inv = alpha.inverse();
    let phi = alpha.compose(&f.phi()).compose(&inv);
    let psi = alpha.compose(&f.psi()).compose(&inv);
    // c' = α(c) + u − φ'(u) − ψ'(u)
    let c = alpha
        .apply(&f.c())
        .add(&u)
        .sub(&phi.apply(&u))
        .sub(&psi.apply(&u));
    AffineForm::new(g, phi, psi, c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tables_are_latin_and_paramedial(f in any_form(GROUPS.len())) {
        let t = f.materialize();
        prop_assert!(t.is_latin());
        prop_assert!(t.is_paramedial());
        for x in f.group().elements() {
            for y in f.group().elements() {
                prop_assert_eq!(t.get(x.index(), y.index()), f.mul(&x, &y).index());
            }
        }
    }

    #[test]
    fn transported_forms_are_isomorphic(f in any_form(7), a in any::<Index>(), u in any::<Index>()) {
        let g = f.group();
        let auts = g.automorphisms();
        let alpha = *a.get(&auts);
        let u = u.index(g.order());
        let h = transport(&f, &alpha, u);
        let (t1, t2) = (f.materialize(), h.materialize());
        let sigma = |x: usize| alpha.apply(&g.element(x)).add(&g.element(u)).index();
        for x in 0..g.order() {
            for y in 0..g.order() {
                prop_assert_eq!(sigma(t1.get(x, y)), t2.get(sigma(x), sigma(y)));
            }
        }
        prop_assert!(table_isomorphic(&t1, &t2, &Budget::default()).unwrap());
        let cls = classify_triples(g, &Budget::default()).unwrap();
        prop_assert_eq!(cls.class_of(&f), cls.class_of(&h));
    }

    #[test]
    fn simple_iff_no_invariant_subgroup(f in any_form(GROUPS.len())) {
        prop_assert_eq!(f.is_simple(), f.invariant_proper_subgroups().is_empty());
        if let GroupDescriptor::Cyclic(m) = f.group() {
            prop_assert_eq!(f.is_simple(), m.k() == 1);
        }
    }

    #[test]
    fn matrix_inverse(i in 0usize..7usize.pow(4)) {
        let m = Modulus::prime(7).unwrap();
        let a = Mat2::from_index(i, m);
        match a.inv() {
            Ok(b) => {
                prop_assert_eq!(a * b, Mat2::identity(m));
                prop_assert_eq!(b * a, Mat2::identity(m));
            }
            Err(_) => prop_assert!(a.det().is_zero()),
        }
    }
}

/// Every latin square of order `n` satisfying `(x*y)*(z*w) = (w*y)*(z*x)`,
/// filled row by row and pruned after each row on the filled-in instances.
fn paramedial_latin_squares(n: usize) -> Vec<QuasigroupTable> {
    fn holds(cells: &[Option<u32>], n: usize) -> bool {
        let get = |x: usize, y: usize| cells[x * n + y].map(|v| v as usize);
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = get(x, y) else { continue };
                for z in 0..n {
                    for w in 0..n {
                        let (Some(zw), Some(wy), Some(zx)) = (get(z, w), get(w, y), get(z, x))
                        else {
                            continue;
                        };
                        if let (Some(l), Some(r)) = (get(xy, zw), get(wy, zx)) {
                            if l != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
    fn go(cells: &mut Vec<Option<u32>>, pos: usize, n: usize, out: &mut Vec<QuasigroupTable>) {
        if pos == n * n {
            if holds(cells, n) {
                let t =
                    QuasigroupTable::new(n, cells.iter().map(|c| c.unwrap()).collect()).unwrap();
                out.push(t);
            }
            return;
        }
        let (row, col) = (pos / n, pos % n);
        for v in 0..n as u32 {
            let clash = (0..col).any(|j| cells[row * n + j] == Some(v))
                || (0..row).any(|i| cells[i * n + col] == Some(v));
            if clash {
                continue;
            }
            cells[pos] = Some(v);
            if col + 1 < n || holds(cells, n) {
                go(cells, pos + 1, n, out);
            }
            cells[pos] = None;
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; n * n], 0, n, &mut out);
    out
}

#[test]
fn every_small_paramedial_quasigroup_is_affine() {
    let budget = Budget::default();
    for n in 2..=5usize {
        let mut reps: Vec<QuasigroupTable> = Vec::new();
        let p = if n == 4 { 2 } else { n as u64 };
        let k = if n == 4 { 2 } else { 1 };
        reps.extend(
            enumerate_cyclic(Modulus::new(p, k).unwrap())
                .forms()
                .iter()
                .map(AffineForm::materialize),
        );
        if n == 4 {
            reps.extend(
                enumerate_gl2(Modulus::prime(2).unwrap())
                    .unwrap()
                    .forms()
                    .iter()
                    .map(AffineForm::materialize),
            );
        }
        assert_eq!(reps.len() as u64, pq_total(n as u64).unwrap());

        let squares = paramedial_latin_squares(n);
        let mut hit = vec![0usize; reps.len()];
        for t in &squares {
            let matches: Vec<usize> = (0..reps.len())
                .filter(|&i| table_isomorphic(&reps[i], t, &budget).unwrap())
                .collect();
            assert_eq!(
                matches.len(),
                1,
                "order {n}: square matches {} affine classes",
                matches.len()
            );
            hit[matches[0]] += 1;
        }
        assert!(
            hit.iter().all(|&h| h > 0),
            "order {n}: an affine class has no square"
        );
    }
}

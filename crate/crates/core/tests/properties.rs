use std::collections::BTreeSet;

use nikishin::exactnum::descartes::isolate_squarefree;
use nikishin::exactnum::modular::mul_inverse_mod;
use nikishin::exactnum::sturm::to_int_poly;
use nikishin::exactnum::{isolate_roots, nullspace, Ends, ExtReal, Matrix, Polynomial, Rational, SquareFree};
use nikishin::measures::{inverse_as_rational, inverse_decomposition, validate_chain, AtomicMeasure, GeneratorChain, MomentSequence};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(Polynomial::new)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Polynomial<Rational>> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

/// Distinct points k/den in (lo, hi) for integers k.
fn points(lo: i64, hi: i64, den: i64, max: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set(lo * den + 1..hi * den, 1..=max)
        .prop_map(move |s: BTreeSet<i64>| s.into_iter().map(|k| q(k, den)).collect())
}

fn measure(lo: i64, hi: i64, max: usize) -> impl Strategy<Value = AtomicMeasure<Rational>> {
    points(lo, hi, 7, max).prop_flat_map(|xs| {
        let n = xs.len();
        prop::collection::vec((1i64..=9, 1i64..=4), n).prop_map(move |ws| {
            AtomicMeasure::new(xs.iter().cloned().zip(ws.into_iter().map(|(a, b)| q(a, b))).collect()).unwrap()
        })
    })
}

fn matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=4, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| Matrix::new(r, c, v.into_iter().map(|x| q(x, 1)).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(a in poly(5), b in poly(5), c in poly(4)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn division_reconstructs(a in poly(7), d in nonzero_poly(4)) {
        let (quo, rem) = a.div_rem(&d).unwrap();
        prop_assert_eq!(&(&quo * &d) + &rem, a);
        prop_assert!(rem.degree() < d.degree());
    }

    #[test]
    fn sturm_and_descartes_agree(roots in points(-4, 4, 3, 6), c in 1i64..=5, lo in -5i64..=0, hi in 1i64..=5) {
        // the quadratic factor adds a complex pair that neither method may count
        let p = &Polynomial::from_roots(&roots) * &Polynomial::new(vec![q(c, 1), q(0, 1), q(1, 1)]);
        let (lo, hi) = (q(lo, 2), q(hi, 2));
        let truth = roots.iter().filter(|r| **r > lo && **r < hi).count();
        let ip = to_int_poly(&p);
        let sf = SquareFree::new(&ip).unwrap();
        let sturm = sf.count(&ExtReal::Finite(lo.clone()), &ExtReal::Finite(hi.clone()), Ends::OPEN).unwrap();
        let desc = isolate_squarefree(&sf.poly, &lo, &hi);
        prop_assert_eq!(sturm, truth);
        prop_assert_eq!(desc.len(), truth);
        for (iv, r) in desc.iter().zip(roots.iter().filter(|r| **r > lo && **r < hi)) {
            prop_assert!(iv.lo <= *r && *r <= iv.hi);
        }
    }

    #[test]
    fn root_isolation_is_scale_invariant(roots in points(-4, 4, 5, 6), s in rational().prop_filter("nonzero", |s| *s != q(0, 1))) {
        let p = Polynomial::from_roots(&roots);
        let a = isolate_roots(&p, &q(-5, 1), &q(5, 1)).unwrap();
        let b = isolate_roots(&p.scale(&s), &q(-5, 1), &q(5, 1)).unwrap();
        prop_assert_eq!(a.len(), roots.len());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn nullspace_is_the_kernel(m in matrix(), seed in any::<u64>()) {
        let ker = nullspace(&m).unwrap();
        prop_assert_eq!(ker.len(), m.cols() - m.rank());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == q(0, 1)));
        }
        // reordering the equations leaves the canonical basis unchanged
        let mut perm: Vec<usize> = (0..m.rows()).collect();
        perm.rotate_left((seed as usize) % m.rows());
        prop_assert_eq!(nullspace(&m.permute_rows(&perm)).unwrap(), ker);
    }

    #[test]
    fn nested_transform_matches_brute_force(
        a in measure(0, 1, 4),
        b in measure(2, 3, 4),
        c in measure(4, 5, 4),
        z in (6i64..=40).prop_map(|k| q(k, 2)),
    ) {
        let sys = validate_chain(GeneratorChain::new(vec![a.clone(), b.clone(), c.clone()], 0)).unwrap();
        let mut brute = q(0, 1);
        for (x, wx) in a.atoms() {
            for (t, wt) in b.atoms() {
                for (u, wu) in c.atoms() {
                    brute += wx * wt * wu / ((&z - x) * (x - t) * (t - u));
                }
            }
        }
        prop_assert_eq!(sys.nested_transform(0, 2, &z).unwrap(), brute.clone());
        prop_assert_eq!(sys.product_measure(0, 2).unwrap().cauchy_eval(&z).unwrap(), brute);
    }

    #[test]
    fn inverse_measure_identity(s in measure(-3, 3, 6)) {
        let inv = inverse_as_rational(&s).unwrap();
        prop_assert!(inv.total().same_function(&s.cauchy_rational().recip().unwrap()));
        let n = 4;
        let c = MomentSequence::new(s.moments(n + 3)).unwrap();
        let dec = inverse_decomposition(&c, n).unwrap();
        prop_assert_eq!(inv.ell.coeff(1), dec.d_minus2.clone());
        prop_assert_eq!(inv.ell.coeff(0), dec.d_minus1.clone());
        prop_assert_eq!(inv.tau.laurent_tail(n + 1), dec.tau_moments.values().to_vec());
        let rows = dec.rows(&c);
        prop_assert_eq!(&rows[0], &q(1, 1));
        prop_assert!(rows[1..].iter().all(|r| *r == q(0, 1)));
    }

    #[test]
    fn inverse_residues_oppose_the_measure(s in measure(-3, 3, 6)) {
        let (ivs, signs) = inverse_as_rational(&s).unwrap().residue_signs().unwrap();
        prop_assert_eq!(ivs.len(), s.len() - 1);
        prop_assert!(signs.iter().all(|&v| v == -1));
        let neg = AtomicMeasure::new(s.atoms().map(|(x, w)| (x.clone(), -w.clone())).collect()).unwrap();
        let (_, signs) = inverse_as_rational(&neg).unwrap().residue_signs().unwrap();
        prop_assert!(signs.iter().all(|&v| v == 1));
    }

    #[test]
    fn modular_inverse_matches_extended_euclid(roots in points(-3, 3, 4, 6), a in poly(6), b in nonzero_poly(5)) {
        let n = Polynomial::from_roots(&roots);
        let got = mul_inverse_mod(&a, &b, &n);
        let (g, s, _) = b.ext_gcd(&n);
        let want = (g.degree() == 0).then(|| (&(&a * &s).scale(&(q(1, 1) / g.lc()))).div_rem(&n).unwrap().1);
        prop_assert_eq!(got, want);
    }
}

use frobenius_lab::frobenius::{exterior_derivative, frobenius_pushforward, FrobeniusStructure};
use frobenius_lab::groebner::{module_groebner, FreeModuleVector, ModuleOrder};
use frobenius_lab::projective::{CechDeRhamGrid, ProjectiveVariety};
use frobenius_lab::weyl::{
    apply_operator, p_curvature, psi_lemma_defect, twist_automorphism, Connection, VectorField, WeylElement,
};
use frobenius_lab::{sample, Prime, Ring, SparsePolynomial};
use proptest::prelude::*;
use rand::RngCore;

fn primes() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn ring(p: u32, n: usize) -> Ring {
    Ring::x(Prime::new(p).unwrap(), n)
}

fn polys(r: Ring, seed: u64, count: usize) -> Vec<SparsePolynomial> {
    let mut rng = sample::rng(seed);
    (0..count).map(|_| sample::polynomial(r, 3, 4, &mut rng)).collect()
}

fn weyl_element(r: Ring, seed: u64) -> WeylElement {
    let mut rng = sample::rng(seed);
    let mut out = WeylElement::zero(r);
    for _ in 0..3 {
        let f = sample::polynomial(r, 2, 2, &mut rng);
        let i = (rng.next_u32() as usize) % r.nvars();
        let e = (rng.next_u32() % 3) as u64;
        out = out.add(&WeylElement::function(&f).mul(&WeylElement::d(r, i).pow(e)));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(p in primes(), n in 1usize..=3, seed in any::<u64>()) {
        let r = ring(p, n);
        let v = polys(r, seed, 3);
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert!((a - a).is_zero());
        prop_assert_eq!(&(a + b) - b, a.clone());
    }

    #[test]
    fn leibniz_and_frobenius_derivative(p in primes(), n in 1usize..=3, seed in any::<u64>()) {
        let r = ring(p, n);
        let v = polys(r, seed, 2);
        for i in 0..n {
            prop_assert_eq!((&v[0] * &v[1]).diff(i), &(&v[0].diff(i) * &v[1]) + &(&v[0] * &v[1].diff(i)));
            prop_assert!(v[0].pow(p as u64).diff(i).is_zero());
        }
    }

    #[test]
    fn parse_round_trip(p in primes(), n in 1usize..=3, seed in any::<u64>()) {
        let r = ring(p, n);
        let f = &polys(r, seed, 1)[0];
        prop_assert_eq!(&r.parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn weyl_associativity(p in primes(), n in 1usize..=2, seed in any::<u64>()) {
        let r = ring(p, n);
        let (a, b, c) = (weyl_element(r, seed), weyl_element(r, seed ^ 1), weyl_element(r, seed ^ 2));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn weyl_action_is_a_module(p in primes(), n in 1usize..=2, seed in any::<u64>()) {
        let r = ring(p, n);
        let (a, b) = (weyl_element(r, seed), weyl_element(r, seed ^ 1));
        let g = &polys(r, seed ^ 3, 1)[0];
        let lhs = apply_operator(&a.mul(&b), g).unwrap();
        let rhs = apply_operator(&a, &apply_operator(&b, g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twist_is_multiplicative_with_inverse(p in primes(), n in 1usize..=2, seed in any::<u64>()) {
        let r = ring(p, n);
        let f = &polys(r, seed, 1)[0];
        let (a, b) = (weyl_element(r, seed ^ 5), weyl_element(r, seed ^ 6));
        let ab = twist_automorphism(f, &a.mul(&b)).unwrap();
        let prod = twist_automorphism(f, &a).unwrap().mul(&twist_automorphism(f, &b).unwrap());
        prop_assert_eq!(ab, prod);
        let back = twist_automorphism(&-f, &twist_automorphism(f, &a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn psi_lemma_for_general_fields(p in primes(), n in 1usize..=2, seed in any::<u64>()) {
        let r = ring(p, n);
        let mut rng = sample::rng(seed);
        let f = sample::polynomial(r, 3, 3, &mut rng);
        let theta = sample::vector_field(r, 2, 2, &mut rng);
        prop_assert!(psi_lemma_defect(&f, &theta).unwrap().is_zero());
    }

    #[test]
    fn p_curvature_is_linear_over_functions(p in primes(), seed in any::<u64>()) {
        let r = ring(p, 2);
        let mut rng = sample::rng(seed);
        let f = sample::polynomial(r, 3, 3, &mut rng);
        let g = sample::polynomial(r, 2, 2, &mut rng);
        let conn = Connection::twisted_line(&f);
        let psi0 = p_curvature(&conn, &VectorField::coordinate(r, 0)).unwrap();
        let scaled = VectorField::new(r, vec![g.clone(), r.zero()]).unwrap();
        let theta = p_curvature(&conn, &scaled).unwrap();
        prop_assert_eq!(theta.get(0, 0), &(&g.pow(p as u64) * psi0.get(0, 0)));
    }

    #[test]
    fn frobenius_round_trip(p in primes(), n in 1usize..=2, seed in any::<u64>()) {
        let r = ring(p, n);
        let fs = FrobeniusStructure::new(Prime::new(p).unwrap(), n);
        let f = &polys(r, seed, 1)[0];
        let v = frobenius_pushforward(f, &fs);
        prop_assert_eq!(v.len(), fs.rank());
        prop_assert_eq!(&fs.reconstruct(&v), f);
    }

    #[test]
    fn d_squared_vanishes(p in primes(), seed in any::<u64>()) {
        let n = 3;
        let r = ring(p, n);
        for q in 0..2 {
            let count = [1, 3][q];
            let form = polys(r, seed ^ q as u64, count);
            let dd = exterior_derivative(n, q + 1, &exterior_derivative(n, q, &form, r), r);
            prop_assert!(dd.iter().all(SparsePolynomial::is_zero));
        }
    }

    #[test]
    fn groebner_basis_contains_generators(p in primes(), n in 1usize..=3, seed in any::<u64>()) {
        let r = ring(p, n);
        let mut rng = sample::rng(seed);
        let gens: Vec<FreeModuleVector> = (0..3)
            .map(|_| FreeModuleVector::new(r, (0..2).map(|_| sample::polynomial(r, 3, 3, &mut rng)).collect()).unwrap())
            .collect();
        for order in [ModuleOrder::PositionOverTerm, ModuleOrder::TermOverPosition] {
            let gb = module_groebner(r, 2, &gens, order);
            for g in &gens {
                prop_assert!(gb.contains(g));
            }
            for g in gb.generators() {
                prop_assert!(gb.normal_form(&g).is_zero());
            }
            let combo = FreeModuleVector::new(
                r,
                (0..2).map(|i| &(gens[0].get(i) * gens[1].get(0)) + gens[2].get(i)).collect(),
            )
            .unwrap();
            prop_assert!(gb.contains(&combo));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn grid_squares_vanish(p in primes(), truncation in 1u32..=3) {
        let x = ProjectiveVariety::projective_space(Prime::new(p).unwrap(), 1).unwrap();
        let grid = CechDeRhamGrid::build(&x, truncation).unwrap();
        prop_assert!(grid.sanity().holds());
    }
}

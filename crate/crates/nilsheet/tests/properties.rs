use nilsheet::affine::{act, sigma, AffineVector};
use nilsheet::charvar::{
    alt_sum, apply_claim, claim_j, completeness_check, grid_points, lambda_sets, solve_on_cartan, system_a_minus_one,
    system_d, system_hat, system_zero, verify_components, ClaimJ,
};
use nilsheet::liealg::{LieElement, Realization};
use nilsheet::orbits::{
    build, dominance_leq, dual_partition, enumerate_sheets, induce, induce_with_seed, induce_zero, partitions,
    FactorOrbit, LeviDatum, LeviFactor, LeviOrbit, Partition,
};
use nilsheet::rational::{q, Q};
use nilsheet::rootdata::{build_root_datum, CartanType};
use nilsheet::symalg::{adjoint_act, PolyElement};
use nilsheet::upoly::UPoly;
use nilsheet::walg::{strange_formula_holds, WParams};
use nilsheet::weylmap::psi;
use proptest::prelude::*;

fn partition_of(n: usize) -> impl Strategy<Value = Partition> {
    let all = partitions(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn composition(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=max_n).prop_filter("size", move |c| {
        let n: usize = c.iter().sum();
        (2..=max_n).contains(&n)
    })
}

fn realization() -> impl Strategy<Value = Realization> {
    prop_oneof![(2usize..=7).prop_map(Realization::Sl), (4usize..=6).prop_map(Realization::SoEven)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_an_involution(p in (1usize..=12).prop_flat_map(partition_of)) {
        prop_assert_eq!(dual_partition(&dual_partition(&p)), p);
    }

    #[test]
    fn dominance_is_a_partial_order_reversed_by_duality(
        (a, b, c) in (1usize..=10).prop_flat_map(|n| (partition_of(n), partition_of(n), partition_of(n)))
    ) {
        prop_assert!(dominance_leq(&a, &a).unwrap());
        let ab = dominance_leq(&a, &b).unwrap();
        let ba = dominance_leq(&b, &a).unwrap();
        if ab && ba {
            prop_assert_eq!(&a, &b);
        }
        if ab && dominance_leq(&b, &c).unwrap() {
            prop_assert!(dominance_leq(&a, &c).unwrap());
        }
        prop_assert_eq!(ab, dominance_leq(&dual_partition(&b), &dual_partition(&a)).unwrap());
    }

    #[test]
    fn type_a_induction_from_zero_is_dual_of_sorted_composition(c in composition(6)) {
        let n: usize = c.iter().sum();
        let g = build(Realization::Sl(n)).unwrap();
        let o = induce_zero(&g, &LeviDatum::from_composition(&c)).unwrap();
        let mut sorted = c.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(o.partition, dual_partition(&Partition::new(sorted)));
    }

    #[test]
    fn type_a_induction_in_stages(c in composition(6), cut in 0usize..6) {
        // coarsen c by merging the blocks up to `cut`; induce in two steps
        let n: usize = c.iter().sum();
        let g = build(Realization::Sl(n)).unwrap();
        let cut = cut.min(c.len() - 1);
        let mut coarse = vec![c[..=cut].iter().sum::<usize>()];
        coarse.extend_from_slice(&c[cut + 1..]);
        let big = LeviDatum::from_composition(&coarse);
        let mut first: Vec<usize> = c[..=cut].to_vec();
        first.sort_unstable_by(|a, b| b.cmp(a));
        let inner = dual_partition(&Partition::new(first));
        let factors = big
            .factors(&g)
            .into_iter()
            .map(|f| {
                let LeviFactor::A { chain } = &f else { unreachable!() };
                let orbit = if chain.first() == Some(&0) {
                    inner.clone()
                } else {
                    Partition::new(vec![1; chain.len() + 1])
                };
                (f, FactorOrbit::A(orbit))
            })
            .collect();
        let staged = induce(&g, &big, &LeviOrbit { factors }).unwrap();
        let direct = induce_zero(&g, &LeviDatum::from_composition(&c)).unwrap();
        prop_assert_eq!(staged, direct);
    }

    #[test]
    fn induction_does_not_depend_on_the_seed(mask in 0u32..32, seed in 1u64..1000) {
        let g = build(Realization::SoEven(5)).unwrap();
        let levi = LeviDatum::new((0..5).filter(|i| mask & (1 << i) != 0));
        let a = induce_zero(&g, &levi).unwrap();
        let b = induce_with_seed(&g, &levi, &LeviOrbit::zero(&g, &levi), &[seed, seed + 1, seed + 2]).unwrap();
        prop_assert_eq!(a, b.orbit);
    }

    #[test]
    fn jacobi_and_invariance(r in realization(), i in 0usize..200, j in 0usize..200, k in 0usize..200) {
        let g = build(r).unwrap();
        let (x, y, z) = (LieElement::basis(i % g.dim()), LieElement::basis(j % g.dim()), LieElement::basis(k % g.dim()));
        let jac = g
            .bracket(&x, &g.bracket(&y, &z))
            .add(&g.bracket(&y, &g.bracket(&z, &x)))
            .add(&g.bracket(&z, &g.bracket(&x, &y)));
        prop_assert!(jac.is_zero());
        prop_assert_eq!(g.form(&g.bracket(&x, &y), &z), g.form(&x, &g.bracket(&y, &z)));
    }

    #[test]
    fn sigma_is_equivariant(a in 0usize..15, b in 0usize..15, x in 0usize..15) {
        let g = build(Realization::Sl(4)).unwrap();
        let p = PolyElement::monomial(vec![a.min(b), a.max(b)], q(1)).add(&PolyElement::monomial(vec![b, b], q(3)));
        let lhs = act(&g, x, 0, &sigma(&g, &p).unwrap());
        let rhs = sigma(&g, &adjoint_act(&g, &LieElement::basis(x), &p)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn affine_commutator(x in 0usize..15, y in 0usize..15, m in -2i64..=2, n in -2i64..=2, z in 0usize..15) {
        // [x(m), y(n)] = [x,y](m+n) + m δ_{m+n,0} (x|y) k, on z(-1)|0>
        let g = build(Realization::Sl(4)).unwrap();
        let v = act(&g, z, -1, &AffineVector::vacuum());
        let lhs = act(&g, x, m, &act(&g, y, n, &v)).sub(&act(&g, y, n, &act(&g, x, m, &v)));
        let br = g.bracket(&LieElement::basis(x), &LieElement::basis(y));
        let mut rhs = nilsheet::affine::act_elem(&g, &br, m + n, &v);
        if m + n == 0 {
            let c = g.form(&LieElement::basis(x), &LieElement::basis(y)) * q(m);
            rhs = rhs.add(&v.scale(&UPoly::var().scale(&c)));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_is_a_lie_homomorphism(n in 2usize..=6, i in 0usize..100, j in 0usize..100) {
        let g = build(Realization::Sl(n)).unwrap();
        let (x, y) = (LieElement::basis(i % g.dim()), LieElement::basis(j % g.dim()));
        let lhs = psi(&g, &g.bracket(&x, &y)).unwrap();
        prop_assert_eq!(lhs, psi(&g, &x).unwrap().commutator(&psi(&g, &y).unwrap()));
    }

    #[test]
    fn claim_j_lands_in_next_lambda(m in 2usize..=5, mask in 1u32..512) {
        let top = 2 * m - 1;
        let t: Vec<usize> = (1..=top).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        prop_assume!(!t.is_empty());
        let c = claim_j(&t, m).unwrap();
        let u = apply_claim(&t, &c);
        if c == ClaimJ::Balanced {
            prop_assert_eq!(alt_sum(&t), if t.len() % 2 == 0 { m as i64 } else { -(m as i64) });
        } else {
            prop_assert!(lambda_sets(m, u.len()).contains(&u));
        }
    }
}

#[test]
fn zero_loci_are_complete_on_a_grid() {
    let systems = vec![
        (system_a_minus_one(4), 3),
        (system_a_minus_one(5), 4),
        (system_hat(2), 3),
        (system_zero(2), 3),
        (system_d(4), 4),
    ];
    for (gens, r) in systems {
        let comps = solve_on_cartan(&gens, r).unwrap();
        assert!(verify_components(&gens, &comps));
        assert!(completeness_check(&gens, &comps, &grid_points(r, 20000)));
    }
}

#[test]
fn strange_formula() {
    let cases = [
        (CartanType::A, 1..=7),
        (CartanType::B, 2..=6),
        (CartanType::C, 2..=6),
        (CartanType::D, 4..=7),
        (CartanType::E, 6..=8),
        (CartanType::F, 4..=4),
        (CartanType::G, 2..=2),
    ];
    for (t, ranks) in cases {
        for r in ranks {
            let d = build_root_datum(t, r).unwrap();
            assert!(strange_formula_holds(&d), "{t}{r}");
        }
    }
}

#[test]
fn central_charge_terms_from_root_sums() {
    // (h|h) = Σ_α α(h)² / (2h∨) over all roots; (ρ|h) = ½ Σ_{α>0} α(h)
    for (t, r, diag) in [(CartanType::A, 4, vec![1, 0, 0, 1]), (CartanType::D, 6, vec![0, 1, 0, 0, 0, 0])] {
        let d = build_root_datum(t, r).unwrap();
        let p = WParams::from_integer_diagram(d.clone(), &diag, q(1)).unwrap();
        let terms = p.terms();
        let degs = p.root_degrees();
        let sq: Q = degs.iter().map(|x| x * x).sum();
        assert_eq!(terms.h_h, sq / q(d.dual_coxeter_number()));
        assert_eq!(terms.rho_h, degs.iter().sum::<Q>() / q(2));
        let ones = degs.iter().filter(|x| **x == q(1)).count();
        assert_eq!(terms.dim1, ones);
    }
}

#[test]
fn sheet_identities_up_to_rank_six() {
    let algebras = (2..=7).map(Realization::Sl).chain((4..=6).map(Realization::SoEven));
    for r in algebras {
        let g = build(r).unwrap();
        for s in enumerate_sheets(&g).unwrap() {
            assert_eq!(s.dimension, s.induced.dimension() + s.rank, "{r:?}");
            assert_eq!(s.induced.dimension(), g.dim() - s.levi.dimension(&g) + s.rigid_orbit.dimension(), "{r:?}");
            assert_eq!(s.rank, g.rank() - s.levi.simple.len());
        }
    }
}

use num_traits::Zero;
use ramcond_core::conductor::{artin_conductor, as_reduce, naive_artin, CharRep, Policy};
use ramcond_core::group::Subgroup;
use ramcond_core::perfection::BaseRing;
use ramcond_core::ramification::{ram_filtration, restrict_filtration, ExtSpec};
use ramcond_core::Q;

// Conductors of t^p - t = x^a / y^b for b = 1..6, worked out by hand:
// pole order after removing p-th powers, plus one.
const GRID: &[(u32, u32, [u64; 6])] =
    &[(2, 0, [2, 2, 4, 2, 6, 4]), (2, 1, [2, 2, 4, 4, 6, 6]), (3, 0, [2, 3, 2, 5, 6, 3]), (3, 1, [2, 3, 3, 5, 6, 6])];

#[test]
fn artin_schreier_grid_matches_hand_values() {
    for &(p, a, want) in GRID {
        let base = BaseRing::new(p, &["x"], "y").unwrap();
        for (b, &c) in (1..=6).zip(&want) {
            let rhs = base.element(&format!("x^{a}/y^{b}"), None).unwrap();
            let ext = ExtSpec::artin_schreier(base.ring(), rhs).unwrap();
            let chi = CharRep::abelian(ext.group(), &[1]).unwrap();
            let r = artin_conductor(&base, &ext, &chi, Policy::default()).unwrap();
            assert_eq!(r.value, c, "p={p} a={a} b={b}");
        }
    }
}

#[test]
fn reduction_over_a_perfect_base() {
    let base = BaseRing::new(3, &[], "y").unwrap();
    // y^-9 + y^-2 ~ y^-1 + y^-2
    let r = as_reduce(&base.element("y^-9 + y^-2", None).unwrap()).unwrap();
    assert_eq!(r.swan, 2);
    // y^-6 = (y^-2)^3 and y^-9 = (y^-1)^9
    assert_eq!(as_reduce(&base.element("y^-6", None).unwrap()).unwrap().swan, 2);
    assert_eq!(as_reduce(&base.element("y^-9", None).unwrap()).unwrap().swan, 1);
}

#[test]
fn regular_representation_of_artin_schreier() {
    // break m over F_p((y)): (m + 1)(p - 1)
    for (p, m) in [(2u32, 1u64), (2, 3), (3, 1), (3, 2), (5, 4)] {
        let base = BaseRing::new(p, &[], "y").unwrap();
        let ext = ExtSpec::artin_schreier(base.ring(), base.element(&format!("y^-{m}"), None).unwrap()).unwrap();
        let reg = CharRep::regular(ext.group());
        let r = artin_conductor(&base, &ext, &reg, Policy::default()).unwrap();
        assert_eq!(r.value, (m + 1) * (p as u64 - 1), "p={p} m={m}");
    }
}

#[test]
fn induced_character_over_tame_kummer_tower() {
    let base = BaseRing::new(5, &[], "y").unwrap();
    let top = ExtSpec::kummer(base.ring(), 4, base.element("y", None).unwrap(), 1).unwrap();
    let g = top.group().clone();
    let filt = ram_filtration(&top).unwrap();
    // Ind from {0, 2} of the nontrivial character is chi_1 + chi_3, each of conductor 1
    let ind = CharRep::abelian(&g, &[1]).unwrap().direct_sum(&CharRep::abelian(&g, &[3]).unwrap()).unwrap();
    assert_eq!(naive_artin(&filt, &ind).unwrap(), Q::from_integer(2));
    let h = Subgroup::generated(&g, &[2]).unwrap();
    let sub = restrict_filtration(&filt, &h).unwrap();
    let chi = CharRep::abelian(&h.as_group(&g), &[1]).unwrap();
    // t^2 = y over F_5((y)) has discriminant valuation 1, and f = 1
    assert_eq!(naive_artin(&sub, &chi).unwrap() + Q::from_integer(1), Q::from_integer(2));
    assert!(naive_artin(&sub, &CharRep::trivial(&h.as_group(&g))).unwrap().is_zero());
}

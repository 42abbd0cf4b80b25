use ramcond_core::perfection::{universal_jet, BaseRing};
use ramcond_core::series::LSeries;

fn assert_agree(a: &LSeries, b: &LSeries) {
    let d = a.sub(b);
    assert!(d.is_zero_to_precision(), "{a} vs {b}");
}

#[test]
fn coordinate_goes_to_truncated_jet() {
    let base = BaseRing::new(3, &["x"], "y").unwrap();
    let jet = universal_jet(&base, 3).unwrap();
    let img = jet.apply(&base.element("x", Some(4)).unwrap()).unwrap();
    let want = LSeries::parse(jet.target(), "xbar + u1*y + u2*y^2 + u3*y^3").unwrap();
    assert_agree(&img, &want);
    assert_eq!(img.prec(), Some(4));
}

#[test]
fn inverse_expands_as_geometric_series() {
    // 1/(a + b y + c y^2) = 1/a - (b/a^2) y + (b^2/a^3 - c/a^2) y^2 + O(y^3)
    let base = BaseRing::new(5, &["x"], "y").unwrap();
    let jet = universal_jet(&base, 2).unwrap();
    let img = jet.apply(&base.element("1/x", Some(3)).unwrap()).unwrap();
    let want = LSeries::parse(jet.target(), "1/xbar - u1/xbar^2*y + (u1^2/xbar^3 - u2/xbar^2)*y^2").unwrap();
    assert_agree(&img, &want.truncate(3));
}

#[test]
fn two_variable_basis_uses_indexed_names() {
    let base = BaseRing::parse("F_2(x1,x2)[[y]]").unwrap();
    let jet = universal_jet(&base, 1).unwrap();
    let names: Vec<&str> = jet.target_field().vars().iter().map(String::as_str).collect();
    assert!(names.contains(&"u1_1") && names.contains(&"u2_1"), "{names:?}");
}

#[test]
fn perfect_base_has_identity_jet() {
    let base = BaseRing::parse("F_5((y))").unwrap();
    let jet = universal_jet(&base, 7).unwrap();
    assert!(jet.images().is_empty());
    let f = base.element("y^-2 + 3", None).unwrap();
    assert_eq!(jet.apply(&f).unwrap(), f);
}

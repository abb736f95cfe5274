mod common;

use charstack::genus_tables::{count_polynomial_table, GenusTable};
use charstack::gln::count_polynomial_gln;
use charstack::Poly;
use common::*;

fn check(p: &Poly, latex: &str) {
    assert_eq!(squash(&p.to_latex()), squash(latex));
    assert_eq!(&latex_to_plain(latex).parse::<Poly>().unwrap(), p);
}

#[test]
fn gl2() {
    check(&count_polynomial_gln(2, 2).unwrap(), GL2_G2);
    check(&count_polynomial_gln(2, 3).unwrap(), GL2_G3);
}

#[test]
fn pgl2() {
    let t = GenusTable::builtin("pgl2").unwrap();
    check(&count_polynomial_table(&t, 2).unwrap(), PGL2_G2);
    check(&count_polynomial_table(&t, 3).unwrap(), PGL2_G3);
    check(&count_polynomial_table(&t, 4).unwrap(), PGL2_G4);
}

#[test]
fn pgl3() {
    let t = GenusTable::builtin("pgl3").unwrap();
    check(&count_polynomial_table(&t, 2).unwrap(), PGL3_G2);
    check(&count_polynomial_table(&t, 3).unwrap(), PGL3_G3);
}

#[test]
fn fixture_conversion() {
    assert_eq!(latex_to_plain("2 q^{12}-q^9+3 q-1"), "2*q^12-q^9+3*q-1");
}

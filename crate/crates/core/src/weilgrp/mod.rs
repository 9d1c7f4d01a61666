//! Finite symplectic and unitary groups by closure, and the total Weil
//! character values that are given by fixed-space dimensions.

mod catalog;
mod characters;
mod group;
mod matrix;

pub use catalog::{find_entry, load_catalog, CatalogEntry, GroupKind};
pub use characters::{
    frobenius_fixed_check, gross_consistent, gross_value, gu_total_weil, levi_embed, levi_part, sp_weil_abs_sq, torus,
    FrobeniusReport,
};
pub use group::{ClassFunction, MatGroup};
pub use matrix::{frobenius_matrix, standard_j, FFMat, Form, Over};

/// |Sp_{2n}(q)|, |GU_n(q)| or |SU_n(q)|.
pub fn order_formula(kind: GroupKind, n: u32, q: u64) -> u128 {
    let q = q as u128;
    match kind {
        GroupKind::Sp => q.pow(n * n) * (1..=n).map(|i| q.pow(2 * i) - 1).product::<u128>(),
        GroupKind::Gu | GroupKind::Su => {
            let gu = q.pow(n * (n - 1) / 2)
                * (1..=n).map(|i| if i % 2 == 0 { q.pow(i) - 1 } else { q.pow(i) + 1 }).product::<u128>();
            if kind == GroupKind::Su {
                gu / (q + 1)
            } else {
                gu
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use num_rational::BigRational;

    #[test]
    fn orders() {
        assert_eq!(order_formula(GroupKind::Sp, 1, 3), 24);
        assert_eq!(order_formula(GroupKind::Sp, 2, 3), 51840);
        assert_eq!(order_formula(GroupKind::Gu, 2, 3), 96);
        assert_eq!(order_formula(GroupKind::Gu, 3, 3), 24192);
        assert_eq!(order_formula(GroupKind::Su, 3, 3), 6048);
        assert_eq!(order_formula(GroupKind::Gu, 3, 2), 648);
    }

    #[test]
    fn small_catalog_groups() {
        let sl23 = find_entry(GroupKind::Sp, 1, 3).unwrap().build().unwrap();
        let w = sl23.class_function("|ω|²", sp_weil_abs_sq).unwrap();
        assert_eq!(w.total(), 48.into());
        let gu = find_entry(GroupKind::Gu, 2, 3).unwrap().build().unwrap();
        let z = gu.class_function("ζ", gu_total_weil).unwrap();
        assert_eq!(z.inner_product(&z).unwrap(), BigRational::from_integer(4.into()));
        assert!(gu.conjugation_invariant(gu_total_weil, 50, 7).unwrap());
        let one = ClassFunction::constant(&gu, 1);
        assert_eq!(one.inner_product(&one).unwrap(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn weil_values() {
        let k9 = make_field(3, 2).unwrap();
        assert_eq!(gu_total_weil(&FFMat::identity(&k9, 3)).unwrap(), 27);
        let k3 = make_field(3, 1).unwrap();
        assert_eq!(sp_weil_abs_sq(&FFMat::identity(&k3, 2)).unwrap(), 9);
        assert!(sp_weil_abs_sq(&FFMat::new(&k3, 2, vec![1, 0, 0, 2]).unwrap()).is_err());
    }

    #[test]
    fn gross_examples() {
        let k3 = make_field(3, 1).unwrap();
        assert_eq!(gross_value(&FFMat::identity(&k3, 2)).unwrap(), 9);
        assert_eq!(gross_value(&FFMat::scalar(&k3, 1, 2)).unwrap(), -1);
        let k5 = make_field(5, 1).unwrap();
        assert_eq!(gross_value(&FFMat::scalar(&k5, 1, 4)).unwrap(), 1);
        assert_eq!(gross_value(&FFMat::scalar(&k5, 1, 2)).unwrap(), -1);
        for h in torus(&make_field(3, 2).unwrap()) {
            assert!(gross_consistent(&h).unwrap());
        }
    }

    #[test]
    fn frobenius() {
        let r = frobenius_fixed_check(27, 3, 1).unwrap();
        assert!(r.passed && r.fixed_count == 3 && r.degrees == (2, 1));
        assert!(frobenius_fixed_check(3, 3, 2).unwrap().passed);
        assert!(frobenius_fixed_check(9, 3, 1).is_err());
    }
}

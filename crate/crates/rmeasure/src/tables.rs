//! Embedded data tables: the 45-term half-line auxiliary function, the nine
//! sector functions, and the nine certified intervals.

use crate::auxfun::{parse_aux, AuxFunction};
use std::sync::OnceLock;

pub const THEOREM2_AUX: &str = include_str!("../tables/theorem2.aux");
pub const TABLE1_TSV: &str = include_str!("../tables/table1.tsv");
pub const SECTOR_AUX: [&str; 9] = [
    include_str!("../tables/f1.aux"),
    include_str!("../tables/f2.aux"),
    include_str!("../tables/f3.aux"),
    include_str!("../tables/f4.aux"),
    include_str!("../tables/f5.aux"),
    include_str!("../tables/f6.aux"),
    include_str!("../tables/f7.aux"),
    include_str!("../tables/f8.aux"),
    include_str!("../tables/f9.aux"),
];

/// The parsed 45-term function certifying the half-line bound.
pub fn theorem2() -> &'static AuxFunction {
    static CELL: OnceLock<AuxFunction> = OnceLock::new();
    CELL.get_or_init(|| parse_aux(THEOREM2_AUX).expect("embedded theorem2.aux"))
}

/// The parsed sector function `f_i`, `i` in 1..=9.
pub fn sector_function(i: usize) -> &'static AuxFunction {
    static CELL: OnceLock<Vec<AuxFunction>> = OnceLock::new();
    assert!((1..=9).contains(&i), "sector function index {i}");
    &CELL.get_or_init(|| {
        SECTOR_AUX
            .iter()
            .map(|s| parse_aux(s).expect("embedded sector aux"))
            .collect()
    })[i - 1]
}

/// Every embedded file as `(relative path, contents)` for export.
pub fn embedded_files() -> Vec<(&'static str, &'static str)> {
    vec![
        ("tables/theorem2.aux", THEOREM2_AUX),
        ("tables/table1.tsv", TABLE1_TSV),
        ("tables/f1.aux", SECTOR_AUX[0]),
        ("tables/f2.aux", SECTOR_AUX[1]),
        ("tables/f3.aux", SECTOR_AUX[2]),
        ("tables/f4.aux", SECTOR_AUX[3]),
        ("tables/f5.aux", SECTOR_AUX[4]),
        ("tables/f6.aux", SECTOR_AUX[5]),
        ("tables/f7.aux", SECTOR_AUX[6]),
        ("tables/f8.aux", SECTOR_AUX[7]),
        ("tables/f9.aux", SECTOR_AUX[8]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxfun::WeightKind;

    #[test]
    fn theorem2_shape() {
        let f = theorem2();
        assert_eq!(f.terms.len(), 45);
        assert!(matches!(f.weight, WeightKind::PositiveReal));
        assert_eq!(f.terms[0].poly.degree(), 1);
        assert_eq!(f.terms[44].poly.degree(), 21);
    }

    #[test]
    fn sector_functions_parse() {
        let expected_terms = [14, 4, 9, 9, 10, 7, 4, 7, 3];
        for (i, &n) in expected_terms.iter().enumerate() {
            let f = sector_function(i + 1);
            assert_eq!(f.terms.len(), n, "f_{}", i + 1);
            if i == 0 {
                assert!(matches!(f.weight, WeightKind::PositiveReal));
            } else {
                assert!(matches!(f.weight, WeightKind::SectorRay { .. }));
            }
        }
    }

    #[test]
    fn all_coefficients_positive() {
        for i in 1..=9 {
            for t in &sector_function(i).terms {
                assert!(t.coeff > 0.0);
            }
        }
        for t in &theorem2().terms {
            assert!(t.coeff > 0.0);
        }
    }
}

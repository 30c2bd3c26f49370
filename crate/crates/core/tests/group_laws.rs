mod common;

use arf_core::oracle::{
    backtrack_orthogonal_group, filter_full_linear_group, homomorphism_table, GroupTable,
};
use arf_core::orthogroup::{
    canonical_umap, is_u_map, odd_vectors, transvection_closure, transvection_matrix,
};
use arf_core::{decompose, enumerate_group, BitMatrix, OrthogonalMap, QuadraticForm};
use common::{standard_forms, std_form};

fn small_forms() -> Vec<QuadraticForm> {
    standard_forms(1)
        .into_iter()
        .chain(standard_forms(2))
        .collect()
}

#[test]
fn closure_equals_filter_in_dims_2_and_4() {
    for f in small_forms() {
        let filtered = filter_full_linear_group(&f).unwrap();
        let closure = transvection_closure(&f, false).unwrap();
        if f.dim() == 4 && f.arf().unwrap() == 0 {
            assert_eq!(closure.len() * 2, filtered.order(), "{f:?}");
            assert!(closure
                .iter()
                .all(|m| filtered.elements.binary_search(m).is_ok()));
            assert_eq!(transvection_closure(&f, true).unwrap(), filtered.elements);
        } else {
            assert_eq!(closure, filtered.elements, "{f:?}");
        }
        assert_eq!(enumerate_group(&f).unwrap(), filtered.elements);
    }
}

#[test]
fn closure_equals_backtracking_in_dim_6() {
    for g in ["000000", "110000", "101101"] {
        let f = std_form(g);
        assert_eq!(
            enumerate_group(&f).unwrap(),
            backtrack_orthogonal_group(&f).unwrap().elements
        );
    }
}

#[test]
fn psi_is_a_nontrivial_homomorphism_on_small_groups() {
    for f in small_forms() {
        let table = GroupTable::new(&f, enumerate_group(&f).unwrap());
        assert!(table.is_group());
        assert!(homomorphism_table(&table), "{f:?}");
    }
}

#[test]
fn image_of_t_minus_id_is_perp_of_fixed_space() {
    for f in small_forms() {
        for m in enumerate_group(&f).unwrap() {
            let t = OrthogonalMap::new(&f, m).unwrap();
            let fixed = t.fixed_space();
            let image = t.matrix().add_identity().columns();
            for c in &image {
                assert!(fixed.iter().all(|w| !f.b(c, w)));
            }
            let perp = f.perp(&fixed);
            assert_eq!(BitMatrix::from_columns(f.dim(), &image).rank(), perp.len());
        }
    }
}

#[test]
fn fixed_space_dimension_changes_by_one_under_a_transvection() {
    for f in small_forms() {
        let odd = odd_vectors(&f);
        for m in enumerate_group(&f).unwrap() {
            let t = OrthogonalMap::new(&f, m).unwrap();
            let fixed = t.fixed_space();
            for a in &odd {
                let ta = OrthogonalMap::new(&f, transvection_matrix(&f, a)).unwrap();
                let product = t.compose(&ta).unwrap();
                let expected = if fixed.iter().all(|w| !f.b(w, a)) {
                    fixed.len() + 1
                } else {
                    fixed.len() - 1
                };
                assert_eq!(product.fixed_space().len(), expected);
            }
        }
    }
}

#[test]
fn involutive_u_maps_have_even_psi() {
    for f in standard_forms(2)
        .into_iter()
        .filter(|f| f.arf().unwrap() == 0)
    {
        let mut count = 0;
        for m in enumerate_group(&f).unwrap() {
            let t = OrthogonalMap::new(&f, m.clone()).unwrap();
            if is_u_map(&t).unwrap() && m.multiply(&m).unwrap() == BitMatrix::identity(4) {
                assert_eq!(t.psi(), 0);
                count += 1;
            }
        }
        assert!(count > 0);
        assert!(is_u_map(&canonical_umap(&f).unwrap()).unwrap());
    }
}

#[test]
fn decomposition_round_trips_on_every_small_group_element() {
    let mut forms = small_forms();
    forms.push(std_form("000000"));
    forms.push(std_form("010011"));
    for f in forms {
        for m in enumerate_group(&f).unwrap() {
            let t = OrthogonalMap::new(&f, m.clone()).unwrap();
            let d = decompose(&t).unwrap();
            assert_eq!(d.recompose(&f).unwrap(), m);
            assert_eq!(d.word.len() % 2, t.psi() as usize);
            assert!(d.word.iter().all(|c| f.g(c)));
        }
    }
}

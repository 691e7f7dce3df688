//! Named example systems, each available as builder output and as a spec.

use std::path::Path;

use crate::group::{FiniteGroup, GroupAutomorphism, Subgroup};
use crate::group_shift::{code_finite_system, validate_group_shift, CodedSystem, GroupShiftModel};
use crate::spec_file::{Item, SpecFile};
use crate::wandering::{
    cycle_plus_q3_certificate, cycle_plus_q3_graph, q3_certificate, q3_graph, q3xq3_certificate, q3xq3_graph,
    z2_system,
};

/// Every gallery entry, in listing order.
pub const GALLERY: [&str; 7] = [
    "sigma_a",
    "full_shift_s3",
    "dlim_3adic_truncation",
    "q3",
    "q3xq3",
    "z2_matrix",
    "cycle_plus_q3",
];

/// One-line descriptions, aligned with [`GALLERY`].
pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "sigma_a" => "group shift on Z4+Z2 conjugate to the full 4-shift",
        "full_shift_s3" => "full shift on the symmetric group S3",
        "dlim_3adic_truncation" => "multiplication by 2 on Z3+Z9, coded by the trivial subgroup",
        "q3" => "3-adic cosets under multiplication by 3",
        "q3xq3" => "pairs of 3-adic cosets under (x/3, 3y)",
        "z2_matrix" => "the automorphism [[2,1],[1,1]] of Z^2",
        "cycle_plus_q3" => "the 3-adic graph beside a disjoint 4-cycle",
        _ => return None,
    })
}

/// The Markov group shift on `Z4 + Z2` whose second coordinate at time
/// `i + 1` is the parity of the sum of both coordinates at time `i`.
pub fn sigma_a() -> GroupShiftModel {
    let a = FiniteGroup::abelian(&[4, 2]).expect("Z4+Z2");
    // (u, v) has index 2u + v
    let edges: Vec<(usize, usize)> = (0..8)
        .flat_map(|x| (0..8).map(move |y| (x, y)))
        .filter(|&(x, y)| y % 2 == (x / 2 + x % 2) % 2)
        .collect();
    validate_group_shift(a, edges).expect("sigma_a is a group shift")
}

/// `Z/3 + ... + Z/3^m` with multiplication by 2.
pub fn dlim_truncation(m: usize) -> (FiniteGroup, GroupAutomorphism) {
    let moduli: Vec<usize> = (1..=m as u32).map(|k| 3usize.pow(k)).collect();
    let g = FiniteGroup::abelian(&moduli).expect("small product of cyclic groups");
    let t = GroupAutomorphism::scale_abelian(&g, &moduli, 2).expect("2 is a unit mod 3^k");
    (g, t)
}

/// The truncation coded by its trivial subgroup.
pub fn dlim_coded(m: usize) -> CodedSystem {
    let (g, t) = dlim_truncation(m);
    code_finite_system(&g, &t, &Subgroup::trivial(&g)).expect("trivial subgroup codes a finite system")
}

/// The named example as a spec.
pub fn gallery_spec(name: &str) -> Option<SpecFile> {
    let mut s = SpecFile::default();
    match name {
        "sigma_a" => {
            let m = sigma_a();
            s.push("A", Item::Group(m.group().clone()));
            s.push("sigma_a", Item::GroupShift { group: "A".into(), model: m });
        }
        "full_shift_s3" => {
            let g = FiniteGroup::symmetric(3).expect("S3");
            s.push("S3", Item::Group(g.clone()));
            s.push(
                "full_shift_s3",
                Item::GroupShift {
                    group: "S3".into(),
                    model: GroupShiftModel::full(g),
                },
            );
        }
        "dlim_3adic_truncation" => {
            let (g, t) = dlim_truncation(2);
            let h = Subgroup::trivial(&g);
            let system = code_finite_system(&g, &t, &h).expect("codes");
            s.push("G", Item::Group(g.clone()));
            s.push("double", Item::Automorphism { group: "G".into(), map: t });
            s.push("H", Item::Subgroup { group: "G".into(), subgroup: h });
            s.push(
                "dlim_3adic_truncation",
                Item::CodedSystem {
                    group: "G".into(),
                    automorphism: "double".into(),
                    subgroup: "H".into(),
                    system,
                },
            );
        }
        "q3" => s.push(
            "q3",
            Item::GeneratedGraph {
                graph: q3_graph(),
                certificate: Some(q3_certificate()),
            },
        ),
        "q3xq3" => s.push(
            "q3xq3",
            Item::GeneratedGraph {
                graph: q3xq3_graph(),
                certificate: Some(q3xq3_certificate()),
            },
        ),
        "z2_matrix" => s.push("z2_matrix", Item::Matrix(z2_system())),
        "cycle_plus_q3" => s.push(
            "cycle_plus_q3",
            Item::GeneratedGraph {
                graph: cycle_plus_q3_graph(),
                certificate: Some(cycle_plus_q3_certificate()),
            },
        ),
        _ => return None,
    }
    Some(s)
}

/// Writes `<name>.spec` for every entry; returns the paths written.
pub fn write_gallery(dir: &Path) -> std::io::Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    GALLERY
        .iter()
        .map(|name| {
            let path = dir.join(format!("{name}.spec"));
            let spec = gallery_spec(name).expect("gallery names resolve");
            std::fs::write(&path, spec.render())?;
            Ok(path)
        })
        .collect()
}

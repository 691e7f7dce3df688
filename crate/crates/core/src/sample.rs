//! Fixture groups and random group shifts for tests, benches and the
//! acceptance harness.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::{subgroup_generated, FiniteGroup};
use crate::group_shift::{edge_closure, validate_group_shift, GroupShiftModel};
use crate::shift::VertexShift;

/// Named non-trivial groups of order at most 16.
pub fn fixture_groups() -> Vec<(String, FiniteGroup)> {
    let abelian = |m: &[usize]| FiniteGroup::abelian(m).expect("valid moduli");
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16] {
        out.push((format!("Z{n}"), abelian(&[n])));
    }
    for m in [&[2, 2][..], &[4, 2], &[2, 2, 2], &[3, 3], &[6, 2], &[4, 4], &[8, 2], &[4, 2, 2], &[2, 2, 2, 2]] {
        let name = m.iter().map(|k| format!("Z{k}")).collect::<Vec<_>>().join("+");
        out.push((name, abelian(m)));
    }
    out.push(("S3".into(), FiniteGroup::symmetric(3).expect("S3")));
    for n in [4, 5, 6, 8] {
        out.push((format!("D{n}"), FiniteGroup::dihedral(n).expect("dihedral")));
    }
    out.push(("Q8".into(), FiniteGroup::quaternion().expect("Q8")));
    let q8z2 = FiniteGroup::quaternion()
        .and_then(|q| q.direct_product(&abelian(&[2])))
        .expect("Q8 x Z2");
    out.push(("Q8xZ2".into(), q8z2));
    out.sort_by_key(|(_, g)| g.order());
    out
}

/// A random generating set, grown greedily until it generates `a`.
fn random_generators<R: Rng>(a: &FiniteGroup, rng: &mut R) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut order = 1;
    while order < a.order() {
        let g = rng.gen_range(0..a.order());
        let bigger = subgroup_generated(a, &[&gens[..], &[g]].concat()).order();
        if bigger > order {
            gens.push(g);
            order = bigger;
        }
    }
    gens
}

/// A random group shift on `a`.
///
/// The edge group is generated by the graph of a random automorphism `φ`
/// on a generating set (so both projections are onto), plus `(e, x)` for a
/// few random `x` (enlarging `f(e)`) and `(x, e)` for a few more (enlarging
/// `p(e)`).
pub fn random_group_shift<R: Rng>(a: &FiniteGroup, rng: &mut R) -> GroupShiftModel {
    let e = a.identity();
    let n = a.order();
    let c = rng.gen_range(0..n);
    let abelian = (0..n).all(|x| (0..n).all(|y| a.mul(x, y) == a.mul(y, x)));
    let invert = abelian && rng.gen_bool(0.5);
    let phi = |x: usize| {
        let y = a.mul(a.mul(c, x), a.inv(c));
        if invert {
            a.inv(y)
        } else {
            y
        }
    };
    let mut seeds: Vec<(usize, usize)> = random_generators(a, rng).into_iter().map(|g| (g, phi(g))).collect();
    let extra_f = rng.gen_range(0..=2);
    let extra_p = rng.gen_range(0..=2);
    let mut pool: Vec<usize> = (0..n).collect();
    pool.shuffle(rng);
    for &x in pool.iter().take(extra_f) {
        seeds.push((e, x));
    }
    pool.shuffle(rng);
    for &x in pool.iter().take(extra_p) {
        seeds.push((x, e));
    }
    validate_group_shift(a.clone(), edge_closure(a, &seeds)).expect("closure of a graph is a group shift")
}

/// A uniformly stepped random word of length `len` with `symbol` at index
/// `pos`, walking forward and backward along the graph.
pub fn random_word_through<R: Rng>(x: &VertexShift, len: usize, pos: usize, symbol: usize, rng: &mut R) -> Vec<usize> {
    let mut w = vec![symbol; len];
    for i in pos + 1..len {
        w[i] = *x.successors(w[i - 1]).choose(rng).expect("essential shift");
    }
    for i in (0..pos).rev() {
        w[i] = *x.predecessors(w[i + 1]).choose(rng).expect("essential shift");
    }
    w
}

/// A random word of length `len` (at least 1).
pub fn random_word<R: Rng>(x: &VertexShift, len: usize, rng: &mut R) -> Vec<usize> {
    let start = rng.gen_range(0..x.len());
    random_word_through(x, len, 0, start, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixtures_are_small_and_distinct() {
        let groups = fixture_groups();
        assert!(groups.iter().all(|(_, g)| (2..=16).contains(&g.order())));
        let mut names: Vec<&str> = groups.iter().map(|(n, _)| n.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), groups.len());
    }

    #[test]
    fn sampler_varies_follower_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = FiniteGroup::abelian(&[4, 2]).unwrap();
        let sizes: std::collections::BTreeSet<usize> = (0..40)
            .map(|_| random_group_shift(&a, &mut rng).follower_e().order())
            .collect();
        assert!(sizes.len() >= 3, "{sizes:?}");
    }

    #[test]
    fn random_words_are_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = FiniteGroup::abelian(&[4, 2]).unwrap();
        let m = random_group_shift(&a, &mut rng);
        for len in 1..10 {
            let w = random_word(m.shift(), len, &mut rng);
            assert_eq!(w.len(), len);
            assert!(m.shift().is_word(&w));
            let v = random_word_through(m.shift(), len, len / 2, 3, &mut rng);
            assert!(m.shift().is_word(&v) && v[len / 2] == 3);
        }
    }
}

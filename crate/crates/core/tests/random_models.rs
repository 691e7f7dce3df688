use cosetdyn::decompose::{decompose, periodic_points, verify_certificate, Limits};
use cosetdyn::group_shift::{
    bracket, check_follower_factorization, check_product_structure, GroupShiftModel,
};
use cosetdyn::sample::{fixture_groups, random_group_shift, random_word, random_word_through};
use cosetdyn::shift::{block_entropy, follower, predecessor, words};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus(seed: u64, per_group: usize, max_order: usize) -> Vec<(String, GroupShiftModel)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (name, g) in fixture_groups().into_iter().filter(|(_, g)| g.order() <= max_order) {
        for i in 0..per_group {
            out.push((format!("{name}#{i}"), random_group_shift(&g, &mut rng)));
        }
    }
    out
}

#[test]
fn certificates_verify_on_random_models() {
    for (name, m) in corpus(11, 3, 16) {
        let c = decompose(&m, Limits::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(c.emitted_product(), m.follower_e().order(), "{name}");
        let report = verify_certificate(m.shift(), &c, 6);
        assert!(report.passed(), "{name}: {:?}", report.failures);
        let entropy = block_entropy(m.shift(), 6).unwrap();
        assert_eq!(entropy.geometric_base, Some(BigUint::from(c.emitted_product())), "{name}");
    }
}

/// Conjugate shifts have the same number of points of each period; count
/// them independently on both sides.
#[test]
fn periodic_point_counts_match_the_product() {
    for (name, m) in corpus(12, 2, 8) {
        let c = decompose(&m, Limits::default()).unwrap();
        let p = c.product_shift();
        for n in 1..=5 {
            assert_eq!(periodic_points(m.shift(), n), periodic_points(&p, n), "{name} period {n}");
        }
    }
}

/// On tiny alphabets, the forward code must be a bijection between the
/// periodic points of each period of the two shifts.
#[test]
fn forward_code_is_bijective_on_periodic_points() {
    for (name, m) in corpus(13, 3, 4) {
        let c = decompose(&m, Limits::default()).unwrap();
        let product = c.product_shift();
        let w = c.forward.window();
        for n in 1..=5 {
            let cycles: Vec<Vec<usize>> = words(m.shift(), n)
                .unwrap()
                .into_iter()
                .filter(|u| m.shift().has_edge(u[n - 1], u[0]))
                .map(|u| u.0)
                .collect();
            let mut images = std::collections::BTreeSet::new();
            for u in &cycles {
                let extended: Vec<usize> = (0..n + w - 1).map(|i| u[i % n]).collect();
                let image = c.forward.apply(&extended).unwrap();
                assert!(product.is_word(&image) && product.has_edge(image[n - 1], image[0]));
                // a periodic point maps to a periodic point of the same period
                images.insert(image);
            }
            assert_eq!(images.len(), cycles.len(), "{name}: not injective at period {n}");
            assert_eq!(BigUint::from(images.len()), periodic_points(&product, n), "{name}");
        }
    }
}

#[test]
fn coset_structure_on_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (name, m) in corpus(14, 2, 16) {
        let g = m.group();
        for a in 0..g.order() {
            let f = follower(m.shift(), &[a]).unwrap();
            let p = predecessor(m.shift(), &[a]).unwrap();
            let mut coset: Vec<usize> = m.follower_e().members().iter().map(|&x| g.mul(f[0], x)).collect();
            coset.sort_unstable();
            assert_eq!(coset, f, "{name}");
            let mut coset: Vec<usize> = m.predecessor_e().members().iter().map(|&x| g.mul(p[0], x)).collect();
            coset.sort_unstable();
            assert_eq!(coset, p, "{name}");
        }
        assert!(check_product_structure(&m, 4).passed(), "{name}");
        assert!(check_follower_factorization(&m, 1).passed(), "{name}");
        for d in 1..=4 {
            let len = 2 * d + 1;
            for _ in 0..100 {
                let w1 = random_word(m.shift(), len, &mut rng);
                let w2 = random_word_through(m.shift(), len, d, w1[d], &mut rng);
                assert_eq!(bracket(&m, &w1, &w2, d).unwrap()[d..], w1[d..], "{name}");
            }
        }
        for n in 1..=6 {
            for _ in 0..100 {
                let u = random_word(m.shift(), n, &mut rng);
                let v = random_word(m.shift(), n, &mut rng);
                assert!(m.shift().is_word(&m.product_word(&u, &v)), "{name}");
            }
        }
    }
}

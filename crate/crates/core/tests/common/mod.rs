//! Fixtures and corpora shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use attneg_core::{arg, AdfNet, ArgumentId, Framework, HigherNetwork, PredFormula};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];

pub fn ids(names: &[&str]) -> Vec<ArgumentId> {
    names.iter().map(|n| arg(n)).collect()
}

pub fn set(names: &[&str]) -> BTreeSet<ArgumentId> {
    names.iter().map(|n| arg(n)).collect()
}

/// The framework on the first `n` names whose attacks are the set bits of
/// `mask`, pairs taken row-major.
pub fn framework_from_mask(n: usize, mask: u64) -> Framework {
    let names = &NAMES[..n];
    let mut atts = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if mask >> (i * n + j) & 1 == 1 {
                atts.push((names[i], names[j]));
            }
        }
    }
    Framework::from_names(names, &atts).unwrap()
}

/// Every digraph on `n` named points.
pub fn all_frameworks(n: usize) -> impl Iterator<Item = Framework> {
    (0..1u64 << (n * n)).map(move |m| framework_from_mask(n, m))
}

pub fn random_frameworks(n: usize, count: usize, seed: u64) -> Vec<Framework> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut mask = 0u64;
            for bit in 0..n * n {
                if rng.gen_bool(0.3) {
                    mask |= 1 << bit;
                }
            }
            framework_from_mask(n, mask)
        })
        .collect()
}

/// The corpus for the labelling correspondence checks: all 3-point digraphs and
/// 200 seeded 5-point ones.
pub fn thm2_corpus() -> Vec<Framework> {
    let mut v: Vec<Framework> = all_frameworks(3).collect();
    v.extend(random_frameworks(5, 200, 0x5eed));
    v
}

pub fn p(s: &str) -> PredFormula {
    attneg_core::parse_pred(s).unwrap()
}

/// Four nodes; `a` attacks `b`, `c` and the atom `cRd`; `c` attacks `d`;
/// the atom `aRb` attacks `d`.
pub fn fig4() -> HigherNetwork {
    let mut hn = HigherNetwork::new(ids(&["a", "b", "c", "d"])).unwrap();
    hn.add_attack("a", "b").unwrap();
    hn.add_attack("a", "c").unwrap();
    hn.add_attack("c", "d").unwrap();
    hn.add_attack("a", "r(c,d)").unwrap();
    hn.add_attack("r(a,b)", "d").unwrap();
    hn
}

pub fn a_attacks_phi() -> HigherNetwork {
    let mut hn = HigherNetwork::new([arg("a")]).unwrap();
    hn.add_wff("phi", p("exists X (~R(X,X))")).unwrap();
    hn.add_attack("a", "phi").unwrap();
    hn
}

pub fn a_and_ara() -> HigherNetwork {
    let mut hn = HigherNetwork::new([arg("a")]).unwrap();
    hn.add_r_unit("a", "a").unwrap();
    hn
}

pub fn fig5() -> Framework {
    Framework::from_names(&["a", "b", "x"], &[("a", "b"), ("b", "a"), ("b", "x")]).unwrap()
}

pub fn selection() -> Framework {
    Framework::from_names(
        &["a1", "a2", "a3", "a4", "a5"],
        &[
            ("a4", "a3"),
            ("a3", "a1"),
            ("a1", "a2"),
            ("a2", "a3"),
            ("a3", "a5"),
            ("a5", "a4"),
        ],
    )
    .unwrap()
}

/// One argument's condition: parent indices and full vectors.
pub type AdfChoice = (Vec<usize>, Vec<Vec<Option<bool>>>);

fn full_vector(k: usize, bits: usize) -> Vec<Option<bool>> {
    (0..k).map(|i| Some(bits >> i & 1 == 1)).collect()
}

/// Every condition over `n` points with at most two disjuncts.
pub fn adf_choices(n: usize) -> Vec<AdfChoice> {
    let mut out = Vec::new();
    for pmask in 0..1usize << n {
        let parents: Vec<usize> = (0..n).filter(|i| pmask >> i & 1 == 1).collect();
        let k = parents.len();
        let vecs = 1usize << k;
        out.push((parents.clone(), Vec::new()));
        for i in 0..vecs {
            out.push((parents.clone(), vec![full_vector(k, i)]));
            for j in i + 1..vecs {
                out.push((parents.clone(), vec![full_vector(k, i), full_vector(k, j)]));
            }
        }
    }
    out
}

pub fn build_adf(n: usize, choices: &[&AdfChoice]) -> AdfNet {
    let names = ids(&NAMES[..n]);
    let mut adf = AdfNet::new(names.clone()).unwrap();
    for (x, (parents, delta)) in names.iter().zip(choices) {
        let ps = parents.iter().map(|&i| names[i].clone()).collect();
        adf.set_condition(x, ps, delta.iter().cloned()).unwrap();
    }
    adf
}

/// Calls `visit` on every ADF over `n` points with at most two full-vector
/// disjuncts per argument.
pub fn for_each_small_adf(n: usize, mut visit: impl FnMut(AdfNet)) {
    let choices = adf_choices(n);
    let mut idx = vec![0usize; n];
    loop {
        let picked: Vec<&AdfChoice> = idx.iter().map(|&i| &choices[i]).collect();
        visit(build_adf(n, &picked));
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

pub fn random_adf(n: usize, rng: &mut ChaCha8Rng) -> AdfNet {
    let mut picked = Vec::new();
    for _ in 0..n {
        let pmask: usize = rng.gen_range(0..1 << n);
        let parents: Vec<usize> = (0..n).filter(|i| pmask >> i & 1 == 1).collect();
        let vecs = 1usize << parents.len();
        let want = rng.gen_range(0..=2usize).min(vecs);
        let mut bits = BTreeSet::new();
        while bits.len() < want {
            bits.insert(rng.gen_range(0..vecs));
        }
        let delta = bits.iter().map(|&b| full_vector(parents.len(), b)).collect();
        picked.push((parents, delta));
    }
    let refs: Vec<&AdfChoice> = picked.iter().collect();
    build_adf(n, &refs)
}

pub fn random_adfs(n: usize, count: usize, seed: u64) -> Vec<AdfNet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_adf(n, &mut rng)).collect()
}

pub fn fig12() -> AdfNet {
    let mut adf = AdfNet::new(ids(&["a", "b", "c", "x"])).unwrap();
    adf.set_dnf(&arg("x"), &attneg_core::parse_prop("a & ~b | c").unwrap())
        .unwrap();
    adf
}

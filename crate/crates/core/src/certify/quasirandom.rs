use super::expander::structured_starts;
use super::report::{CertReport, Method, PropertyCheck, Witness};
use super::sets::{self, EnumerationCap, Prefix};
use super::CheckMode;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::RngSpec;

/// Sampling used when exact mode is requested but enumeration is out of range.
const FALLBACK_TRIALS: usize = 100;

/// The four quasi-randomness properties P0–P3 of `g1` with degree scale `d`.
pub fn check_quasirandom(g1: &Graph, d: f64, beta: f64, mode: &CheckMode) -> Result<CertReport> {
    check_quasirandom_with(g1, d, beta, mode, &EnumerationCap::default())
}

pub fn check_quasirandom_with(g1: &Graph, d: f64, beta: f64, mode: &CheckMode, cap: &EnumerationCap) -> Result<CertReport> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::param(format!("beta must lie in (0, 1), got {beta}")));
    }
    if !(d > 0.0) {
        return Err(Error::param("degree scale must be positive"));
    }
    let n1 = g1.n();
    let n1f = n1 as f64;
    let mut report = CertReport::new();

    let mut p0 = PropertyCheck::new("P0", Method::Direct);
    p0.checked = n1 as u64;
    let need = d / 150.0;
    if let Some(v) = g1.min_degree_vertex().filter(|&v| (g1.degree(v) as f64) < need) {
        p0 = p0.failed(Witness::MinDegree { vertex: v, degree: g1.degree(v), required: need });
    }
    report.properties.push(p0);

    let s1 = below(n1f.powf(0.11) * n1f.ln());
    report.properties.push(sparse_sets("P1", g1, s1, d.powf(0.13), mode, cap));
    let s2 = below(12.0 * beta * n1f);
    report.properties.push(sparse_sets("P2", g1, s2, 50.0 * beta * d, mode, cap));

    report.properties.push(big_pairs(g1, beta, mode, cap));
    Ok(report)
}

/// Largest integer strictly below `x` (0 when `x ≤ 1`).
fn below(x: f64) -> usize {
    if x <= 1.0 {
        0
    } else {
        (x.ceil() as usize) - 1
    }
}

/// `ceil(n1 · ln ln n1)`, clamped at 0 where `ln ln n1 ≤ 0`.
pub fn pair_threshold(n1: usize) -> f64 {
    if n1 < 3 {
        return 0.0;
    }
    let n1f = n1 as f64;
    (n1f * n1f.ln().ln()).ceil().max(0.0)
}

fn sampling(mode: &CheckMode) -> (usize, RngSpec, bool) {
    match *mode {
        CheckMode::Exact => (FALLBACK_TRIALS, RngSpec::new(0), true),
        CheckMode::Sampled { trials, rng } => (trials, rng, false),
    }
}

/// Every `U` with `|U| ≤ max` has `e(U) ≤ factor·|U|`.
fn sparse_sets(name: &str, g: &Graph, max: usize, factor: f64, mode: &CheckMode, cap: &EnumerationCap) -> PropertyCheck {
    let max = max.min(g.n());
    if max < 2 {
        return PropertyCheck::vacuous(name, "only sets of size ≤ 1 are in range");
    }
    // C(t, 2) ≤ factor·t for every t ≤ max
    if (max as f64 - 1.0) / 2.0 <= factor {
        let mut c = PropertyCheck::new(name, Method::Direct);
        c.notes.push("bound is at least C(t, 2) for every size in range".into());
        return c;
    }
    let bound: Vec<f64> = (0..=max).map(|t| factor * t as f64).collect();
    if matches!(mode, CheckMode::Exact) && cap.allows(g.n(), max) {
        let mut c = PropertyCheck::new(name, Method::Exact);
        let (found, checked) = sets::first_dense(g, max, &bound);
        c.checked = checked;
        return match found {
            Some((set, edges)) => {
                let t = set.len();
                c.failed(Witness::DenseSet { set, edges, bound: bound[t] })
            }
            None => c,
        };
    }
    let (trials, rng, fallback) = sampling(mode);
    let mut rng = rng.rng();
    let mut c = PropertyCheck::new(name, Method::Sampled { trials });
    if fallback {
        c.notes.push(format!("sets up to size {max} exceed the enumeration cap; sampled instead"));
    }
    let n = g.n();
    let mut starts: Vec<usize> = sets::degree_order(g).into_iter().rev().take(trials.clamp(1, 16)).collect();
    starts.extend(structured_starts(g, trials, &mut rng));
    let mut checked = 0u64;
    for &s in &starts {
        let order = sets::dense_order(g, s, max);
        let mut p = Prefix::new(g);
        for &v in &order {
            p.push(v);
            checked += 1;
            if p.edges as f64 > bound[p.len] {
                let mut set = order[..p.len].to_vec();
                set.sort_unstable();
                c.checked = checked;
                return c.failed(Witness::DenseSet { set, edges: p.edges, bound: bound[p.len] });
            }
        }
    }
    for t in sets::sample_sizes(max) {
        for _ in 0..trials {
            let set = sets::random_set(n, t, &mut rng);
            checked += 1;
            let e = sets::edges_within(g, &set);
            if e as f64 > bound[t] {
                c.checked = checked;
                return c.failed(Witness::DenseSet { set, edges: e, bound: bound[t] });
            }
        }
    }
    c.checked = checked;
    c
}

/// P3: disjoint `|U| = floor(βn1)`, `|Z| = floor((1/3 − 27β)n1)` span at least
/// `ceil(n1 ln ln n1)` edges. For a fixed `U` the worst `Z` is found exactly.
fn big_pairs(g: &Graph, beta: f64, mode: &CheckMode, cap: &EnumerationCap) -> PropertyCheck {
    let n1 = g.n();
    let a = (beta * n1 as f64).floor() as usize;
    let bf = (1.0 / 3.0 - 27.0 * beta) * n1 as f64;
    let b = if bf >= 1.0 { bf.floor() as usize } else { 0 };
    if a == 0 || b == 0 || a + b > n1 {
        return PropertyCheck::vacuous("P3", format!("set sizes ({a}, {b}) leave nothing to check"));
    }
    let threshold = pair_threshold(n1);
    if threshold <= 0.0 {
        return PropertyCheck::vacuous("P3", "threshold n1 ln ln n1 is not positive");
    }
    let mut scratch = vec![0usize; n1];
    let mut worst = |u: &[usize]| -> Option<Witness> {
        let (edges, z) = min_pair(g, u, b, &mut scratch);
        ((edges as f64) < threshold).then(|| Witness::SparsePair { u: u.to_vec(), z, edges, threshold })
    };
    if matches!(mode, CheckMode::Exact) && (n1 <= cap.full_up_to_n || sets::binomial(n1, a) <= cap.max_sets / n1.max(1) as u128) {
        let mut c = PropertyCheck::new("P3", Method::Exact);
        let mut found = None;
        c.checked = sets::for_each_k_subset(n1, a, |u| {
            found = worst(u);
            found.is_some()
        });
        return match found {
            Some(w) => c.failed(w),
            None => c,
        };
    }
    let (trials, rng, fallback) = sampling(mode);
    let mut rng = rng.rng();
    let mut c = PropertyCheck::new("P3", Method::Sampled { trials });
    if fallback {
        c.notes.push("pairs of large sets cannot be enumerated; sampled instead".into());
    }
    let mut candidates: Vec<Vec<usize>> = vec![sets::degree_order(g).into_iter().take(a).collect()];
    for s in structured_starts(g, trials, &mut rng) {
        candidates.push(sets::compact_order(g, s, a));
        candidates.push(sets::ball_order(g, s, a));
    }
    candidates.retain(|u| u.len() == a);
    for _ in 0..trials {
        candidates.push(sets::random_set(n1, a, &mut rng));
    }
    for mut u in candidates {
        u.sort_unstable();
        c.checked += 1;
        if let Some(w) = worst(&u) {
            return c.failed(w);
        }
    }
    c
}

/// Minimum of `e(U, Z)` over `|Z| = b` disjoint from `U`, and a minimizer
/// (fewest edges to `U` first, ties to lower ids).
fn min_pair(g: &Graph, u: &[usize], b: usize, scratch: &mut [usize]) -> (usize, Vec<usize>) {
    scratch.iter_mut().for_each(|x| *x = 0);
    const IN_U: usize = usize::MAX;
    for &x in u {
        for &w in g.neighbors(x) {
            scratch[w as usize] += 1;
        }
    }
    for &x in u {
        scratch[x] = IN_U;
    }
    let mut outside: Vec<(usize, usize)> = (0..g.n()).filter(|&z| scratch[z] != IN_U).map(|z| (scratch[z], z)).collect();
    outside.sort_unstable();
    outside.truncate(b);
    let edges = outside.iter().map(|&(c, _)| c).sum();
    let mut z: Vec<usize> = outside.into_iter().map(|(_, z)| z).collect();
    z.sort_unstable();
    (edges, z)
}

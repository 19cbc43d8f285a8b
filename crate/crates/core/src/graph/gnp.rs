use rand::{Rng as _, RngCore};
use rand_distr::Geometric;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::RngSpec;

fn check(n: usize, p: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::param("G(n,p) needs n >= 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("p must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// Samples G(n, p).
///
/// Pairs are visited in lexicographic order `(0,1), (0,2), …, (n−2,n−1)` and
/// each consumes one 64-bit word `x` from the stream; the pair is kept iff
/// the uniform `U = (x >> 11) / 2^53` satisfies `U < p`. Because the draw for
/// a pair does not depend on `p`, two calls with the same spec and `p ≤ p′`
/// return nested graphs.
pub fn gnp_sample(n: usize, p: f64, rng: &RngSpec) -> Result<Graph> {
    check(n, p)?;
    let mut g = Graph::empty(n);
    if p == 0.0 {
        return Ok(g);
    }
    // U < p  <=>  k < p * 2^53 for the integer k = x >> 11.
    let threshold = (p * (1u64 << 53) as f64).ceil() as u64;
    let mut stream = rng.rng();
    for u in 0..n {
        for v in u + 1..n {
            if stream.next_u64() >> 11 < threshold {
                g.push_lex_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Samples G(n, p) by geometric skipping over the lexicographic pair list.
///
/// Same distribution as [`gnp_sample`] in O(n + m) draws, but it consumes the
/// stream differently, so for a given spec the two produce different graphs.
pub fn gnp_sample_skip(n: usize, p: f64, rng: &RngSpec) -> Result<Graph> {
    check(n, p)?;
    let mut g = Graph::empty(n);
    if p == 0.0 || n < 2 {
        return Ok(g);
    }
    let skips = Geometric::new(p).map_err(|e| Error::param(e.to_string()))?;
    let mut stream = rng.rng();
    let (mut u, mut v) = (0usize, 0usize);
    loop {
        let mut skip = stream.sample(skips) + 1;
        // advance `skip` pairs past the current one
        while skip > 0 {
            let left_in_row = (n - 1 - v) as u64;
            if skip <= left_in_row {
                v += skip as usize;
                skip = 0;
            } else {
                skip -= left_in_row;
                u += 1;
                if u + 1 >= n {
                    return Ok(g);
                }
                v = u;
            }
        }
        g.push_lex_edge(u, v);
    }
}

/// p = (ln n + ln ln n + c) / n, clamped to [0, 1].
pub fn threshold_p(n: usize, c: f64) -> f64 {
    let nf = n as f64;
    ((nf.ln() + nf.ln().ln() + c) / nf).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        for seed in 0..5 {
            let spec = RngSpec::new(seed);
            assert_eq!(gnp_sample(5, 0.0, &spec).unwrap().edge_count(), 0);
            assert_eq!(gnp_sample(5, 1.0, &spec).unwrap().edge_count(), 10);
            assert_eq!(gnp_sample_skip(5, 1.0, &spec).unwrap().edge_count(), 10);
            assert_eq!(gnp_sample_skip(5, 0.0, &spec).unwrap().edge_count(), 0);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let spec = RngSpec::new(0);
        assert!(gnp_sample(0, 0.5, &spec).is_err());
        assert!(gnp_sample(5, 1.5, &spec).is_err());
        assert!(gnp_sample(5, -0.1, &spec).is_err());
        assert!(gnp_sample(5, f64::NAN, &spec).is_err());
    }

    #[test]
    fn deterministic() {
        let spec = RngSpec::new(11);
        assert_eq!(gnp_sample(200, 0.05, &spec).unwrap(), gnp_sample(200, 0.05, &spec).unwrap());
        assert_eq!(
            gnp_sample_skip(200, 0.05, &spec).unwrap(),
            gnp_sample_skip(200, 0.05, &spec).unwrap()
        );
    }

    #[test]
    fn skip_sampler_matches_edge_density() {
        // 40 samples of G(300, 0.02): mean edge count 897, sd of the mean ~4.7
        let (n, p, reps) = (300, 0.02, 40);
        let mean = |f: fn(usize, f64, &RngSpec) -> Result<Graph>| {
            (0..reps).map(|s| f(n, p, &RngSpec::new(s)).unwrap().edge_count()).sum::<usize>() as f64
                / reps as f64
        };
        let expected = p * (n * (n - 1) / 2) as f64;
        assert!((mean(gnp_sample) - expected).abs() < 25.0);
        assert!((mean(gnp_sample_skip) - expected).abs() < 25.0);
    }
}

use super::profile::ExpanderProfile;
use super::report::{CertReport, Method, PropertyCheck, Witness};
use super::sets::{self, EnumerationCap, Prefix};
use super::CheckMode;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Checks `|N(U)| ≥ f(|U|)·|U|` for all `1 ≤ |U| ≤ R` (one property, "expansion").
pub fn check_expander(g: &Graph, prof: &ExpanderProfile, mode: &CheckMode) -> Result<CertReport> {
    check_expander_with(g, prof, mode, &EnumerationCap::default())
}

pub fn check_expander_with(g: &Graph, prof: &ExpanderProfile, mode: &CheckMode, cap: &EnumerationCap) -> Result<CertReport> {
    let mut report = CertReport::new();
    report.properties.push(expansion_property("expansion", g, prof, mode, cap)?);
    Ok(report)
}

pub(crate) fn expansion_property(
    name: &str,
    g: &Graph,
    prof: &ExpanderProfile,
    mode: &CheckMode,
    cap: &EnumerationCap,
) -> Result<PropertyCheck> {
    prof.validate()?;
    let r = prof.r.min(g.n());
    if r == 0 {
        return Ok(PropertyCheck::vacuous(name, "no set sizes in range"));
    }
    let required: Vec<f64> = (0..=r).map(|t| if t == 0 { 0.0 } else { prof.required(t) }).collect();
    match *mode {
        CheckMode::Exact => {
            if !cap.allows(g.n(), r) {
                return Err(Error::Enumeration { n: g.n(), sets: sets::subsets_up_to(g.n(), r) });
            }
            let mut check = PropertyCheck::new(name, Method::Exact);
            let (found, checked) = sets::first_non_expanding(g, r, &required);
            check.checked = checked;
            Ok(match found {
                Some((set, nb)) => {
                    let t = set.len();
                    check.failed(Witness::Expansion { set, neighborhood: nb, required: required[t], within: None })
                }
                None => check,
            })
        }
        CheckMode::Sampled { trials, rng } => {
            let mut rng = rng.rng();
            let mut check = PropertyCheck::new(name, Method::Sampled { trials });
            let n = g.n();
            let mut witness: Option<(Vec<usize>, usize)> = None;
            let mut checked = 0u64;
            // every singleton
            if let Some(v) = (0..n).find(|&v| (g.degree(v) as f64) < required[1]) {
                witness = Some((vec![v], g.degree(v)));
            }
            checked += n as u64;
            // prefixes of structured orders
            let starts = structured_starts(g, trials, &mut rng);
            let mut orders = vec![sets::degree_order(g)];
            for &s in &starts {
                orders.push(sets::ball_order(g, s, r));
                orders.push(sets::compact_order(g, s, r));
            }
            for order in &orders {
                if witness.is_some() {
                    break;
                }
                let mut p = Prefix::new(g);
                for &v in order.iter().take(r) {
                    p.push(v);
                    checked += 1;
                    let nb = p.neighborhood();
                    if (nb as f64) < required[p.len] {
                        let mut set = order[..p.len].to_vec();
                        set.sort_unstable();
                        witness = Some((set, nb));
                        break;
                    }
                }
            }
            // uniformly random sets
            'sizes: for t in sets::sample_sizes(r) {
                if witness.is_some() || t < 2 {
                    continue;
                }
                for _ in 0..trials {
                    let set = sets::random_set(n, t, &mut rng);
                    checked += 1;
                    let nb = sets::neighborhood_size(g, &set);
                    if (nb as f64) < required[t] {
                        witness = Some((set, nb));
                        break 'sizes;
                    }
                }
            }
            check.checked = checked;
            Ok(match witness {
                Some((set, nb)) => {
                    let t = set.len();
                    check.failed(Witness::Expansion { set, neighborhood: nb, required: required[t], within: None })
                }
                None => check,
            })
        }
    }
}

/// Lowest-degree vertices first, then random ones.
pub(crate) fn structured_starts(g: &Graph, trials: usize, rng: &mut crate::rng::Rng) -> Vec<usize> {
    let k = trials.clamp(1, 16);
    let mut starts: Vec<usize> = sets::degree_order(g).into_iter().take(k).collect();
    for _ in 0..k {
        starts.push(sets::random_vertex(g.n(), rng));
    }
    starts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::rng::RngSpec;

    fn sampled() -> CheckMode {
        CheckMode::Sampled { trials: 50, rng: RngSpec::new(5) }
    }

    #[test]
    fn complete_graph_expands() {
        let g = complete(12);
        let r = check_expander(&g, &ExpanderProfile::constant(3, 2.0), &CheckMode::Exact).unwrap();
        assert!(r.passed_exactly());
        // |U| = 4 has only 8 outside vertices
        let r = check_expander(&g, &ExpanderProfile::constant(5, 2.0), &CheckMode::Exact).unwrap();
        assert_eq!(r.get("expansion").unwrap().witness.as_ref().map(|w| match w {
            Witness::Expansion { set, .. } => set.len(),
            _ => 0,
        }), Some(5));
    }

    #[test]
    fn edgeless_fails_on_singleton() {
        let g = Graph::empty(30);
        for mode in [CheckMode::Exact, sampled()] {
            let r = check_expander(&g, &ExpanderProfile::constant(2, 1.0), &mode).unwrap();
            assert!(!r.passed());
            let w = r.get("expansion").unwrap().witness.clone().unwrap();
            assert!(matches!(&w, Witness::Expansion { set, .. } if set.len() == 1));
            r.recheck(&g).unwrap();
        }
    }

    #[test]
    fn star_fails_on_two_leaves() {
        let g = star(5);
        let r = check_expander(&g, &ExpanderProfile::constant(2, 1.0), &CheckMode::Exact).unwrap();
        let w = r.get("expansion").unwrap().witness.clone().unwrap();
        assert_eq!(w, Witness::Expansion { set: vec![1, 2], neighborhood: 1, required: 2.0, within: None });
        r.recheck(&g).unwrap();
    }

    #[test]
    fn exact_cap_enforced() {
        let g = cycle(100);
        let res = check_expander(&g, &ExpanderProfile::constant(10, 0.2), &CheckMode::Exact);
        assert!(matches!(res, Err(Error::Enumeration { .. })));
        let r = check_expander(&g, &ExpanderProfile::constant(10, 0.2), &sampled()).unwrap();
        assert_eq!(r.properties[0].verdict, super::super::Verdict::SampledPass);
    }

    #[test]
    fn vacuous_profile() {
        let r = check_expander(&Graph::empty(5), &ExpanderProfile::constant(0, 3.0), &CheckMode::Exact).unwrap();
        assert!(r.properties[0].vacuous && r.passed());
    }
}
